//! Invariant commutative spectral triples on flat tori `T^p = R^p / Z^p`.
//!
//! A finite group `G` of affine isometries acts on the torus; the algebra of
//! `G`-invariant trigonometric polynomials, the flat Dirac symbol
//! `[D, f](x) = c(df(x))` and a Hochschild orientation cycle assemble into a
//! symbol-level model of the invariant spectral triple. The toolkit computes,
//! exactly where the data is rational:
//!
//! * Clifford/gamma-matrix arithmetic and the exterior-algebra symbol map
//!   ([`clifford`]);
//! * finite isometry groups, Cartan-Dieudonne normal forms, fixed loci,
//!   singular loci and Pin lifts to the spinor representation ([`isometry`]);
//! * the invariant function algebra with exact products, pullbacks,
//!   differentials and the group-averaging projector ([`funcalg`]);
//! * Hochschild chains, the boundary operator, the point representation
//!   `pi_D`, its skewsymmetrization `Gamma'`, and orientation cycles for
//!   tori and free quotients ([`hochschild`]);
//! * flat-torus Dirac spectra, character-formula invariant counting and
//!   Weyl-law fits ([`spectral`]);
//! * a scenario-driven verifier that sweeps `|Gamma'|` over grids and rays
//!   into the singular locus and emits machine-readable reports
//!   ([`verifier`]).
//!
//! The central phenomenon: for a non-free action, `Gamma'` of any chain with
//! `G`-invariant entries vanishes on the singular locus, so no Hochschild
//! cycle over the invariant algebra can represent the grading operator;
//! for free actions an explicit cycle does.
//!
//! See the `examples/` directory for one runnable example per capability and
//! `scenarios/` for the bundled scenario files consumed by the `verify`
//! binary.

// index-based loops are the natural idiom for the small dense matrix
// arithmetic throughout this crate
#![allow(clippy::needless_range_loop)]
#![allow(clippy::manual_is_multiple_of)]

pub mod clifford;
pub mod error;
pub mod funcalg;
pub mod hochschild;
pub mod isometry;
pub mod lattice;
pub mod scalar;
pub mod spectral;
pub mod verifier;

pub use error::{Error, Result};

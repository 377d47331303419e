//! Gamma matrices, Clifford relations, the chirality operator and the
//! symbol correspondence with the exterior algebra.
//!
//! ```bash
//! cargo run -p torus-triples --example clifford_basics
//! ```

use num_complex::Complex;
use torus_triples::clifford::{
    chirality, clifford_of_covector, make_generators, multivector_norm, quantize, symbol_map,
    MultiVector,
};

fn main() -> torus_triples::Result<()> {
    for p in 1..=4 {
        let gens = make_generators(p)?;
        println!("Cl({p}): {} generators of size {}", gens.len(), gens[0].matrix().nrows());
        // spot-check one anticommutator
        if p >= 2 {
            let anti = gens[0].anticommutator(&gens[1]);
            println!("  |g1 g2 + g2 g1| = {:.2e}", anti.norm());
        }
        let gamma = chirality(p)?;
        println!(
            "  chirality: |Gamma^2 - 1| = {:.2e}",
            (&gamma * &gamma).distance(&torus_triples::clifford::CliffordElement::identity(p))
        );
    }

    // c(v)^2 = |v|^2 for a unit covector
    let c = clifford_of_covector(&[0.6, 0.8])?;
    println!("\nc(v)^2 for |v| = 1: distance from Id = {:.2e}", {
        let sq = &c * &c;
        sq.distance(&torus_triples::clifford::CliffordElement::identity(2))
    });

    // symbol of g1 g2 is the bivector e1 ^ e2
    let gens = make_generators(2)?;
    let sym = symbol_map(&(&gens[0] * &gens[1]))?;
    println!(
        "symbol(g1 g2): e1^e2 coefficient = {}, norm = {}",
        sym.coeff(0b11),
        multivector_norm(&sym)
    );

    // quantize is a right inverse of the symbol map
    let blade = MultiVector::basis_blade(2, 0b11).scale(Complex::new(0.0, -1.0));
    let back = symbol_map(&quantize(&blade)?)?;
    println!(
        "quantize/symbol roundtrip on -i e1^e2: error = {:.2e}",
        (&back - &blade).norm()
    );

    // the symbol of the chirality is the (phase-adjusted) volume blade
    let gamma_symbol = symbol_map(&chirality(2)?)?;
    println!("symbol(Gamma) on T^2: volume coefficient = {}", gamma_symbol.coeff(0b11));
    Ok(())
}

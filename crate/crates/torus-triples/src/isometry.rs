//! Finite groups of affine isometries of the flat torus `T^p = R^p / Z^p`.
//!
//! An isometry is `x -> O x + t (mod Z^p)`. For the map to be well defined
//! the linear part must preserve the integer lattice, and an integer
//! orthogonal matrix is necessarily a signed permutation; translations are
//! rational vectors mod 1. Group arithmetic therefore stays exact, and
//! fixed-point loci are solved exactly over the rationals via the integer
//! diagonalization in [`crate::lattice`]. Normal forms and reflection
//! decompositions accept arbitrary (floating) orthogonal matrices, since
//! they are statements about tangent-space maps.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, ToPrimitive, Zero};

use crate::clifford::{clifford_of_covector, CliffordElement};
use crate::error::{Error, Result};
use crate::lattice::{self, IntMatrix};
use crate::scalar::{fract_mod1, rat, rat_int, rational_to_f64, Complex64, Rational};

// ---------------------------------------------------------------------------
// Isometries
// ---------------------------------------------------------------------------

/// Affine isometry `x -> O x + t` of the flat torus, with exact entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    dim: usize,
    /// Row-major orthogonal matrix with integer entries (signed permutation).
    linear: Vec<Vec<Rational>>,
    /// Translation reduced mod 1.
    translation: Vec<Rational>,
}

impl Isometry {
    pub fn new(linear: Vec<Vec<Rational>>, translation: Vec<Rational>) -> Result<Self> {
        let dim = linear.len();
        if dim == 0 || linear.iter().any(|r| r.len() != dim) || translation.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: translation.len(),
            });
        }
        // exact O^T O = Id
        for i in 0..dim {
            for j in 0..dim {
                let mut dot = Rational::zero();
                for row in &linear {
                    dot += &row[i] * &row[j];
                }
                let expect = if i == j { Rational::one() } else { Rational::zero() };
                if dot != expect {
                    return Err(Error::NotOrthogonal(f64::NAN));
                }
            }
        }
        // lattice preservation: integer entries
        if linear.iter().flatten().any(|e| !e.is_integer()) {
            return Err(Error::LatticeNotPreserved);
        }
        let translation = translation.iter().map(fract_mod1).collect();
        Ok(Isometry {
            dim,
            linear,
            translation,
        })
    }

    pub fn identity(dim: usize) -> Self {
        let linear = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Isometry {
            dim,
            linear,
            translation: vec![Rational::zero(); dim],
        }
    }

    /// Pure translation by a rational vector.
    pub fn pure_translation(translation: Vec<Rational>) -> Result<Self> {
        let id = Self::identity(translation.len());
        Self::new(id.linear, translation)
    }

    /// Integer orthogonal linear map with zero translation.
    pub fn linear_map(rows: Vec<Vec<i64>>) -> Result<Self> {
        let dim = rows.len();
        let linear = rows
            .into_iter()
            .map(|r| r.into_iter().map(rat_int).collect())
            .collect();
        Self::new(linear, vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn translation(&self) -> &[Rational] {
        &self.translation
    }

    pub fn linear(&self) -> &[Vec<Rational>] {
        &self.linear
    }

    pub fn linear_int(&self) -> Vec<Vec<i64>> {
        self.linear
            .iter()
            .map(|r| r.iter().map(|e| e.to_integer().to_i64().unwrap()).collect())
            .collect()
    }

    pub fn linear_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| rational_to_f64(&self.linear[i][j]))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn linear_is_identity(&self) -> bool {
        self.linear == Self::identity(self.dim).linear
    }

    pub fn is_pure_translation(&self) -> bool {
        self.linear_is_identity()
    }

    /// `h(x) = O x + t` reduced mod 1.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.dim)
            .map(|i| {
                let mut acc = self.translation[i].clone();
                for (j, xj) in x.iter().enumerate() {
                    acc += &self.linear[i][j] * xj;
                }
                fract_mod1(&acc)
            })
            .collect()
    }

    pub fn apply_f64(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| {
                let mut acc = rational_to_f64(&self.translation[i]);
                for (j, xj) in x.iter().enumerate() {
                    acc += rational_to_f64(&self.linear[i][j]) * xj;
                }
                acc.rem_euclid(1.0)
            })
            .collect()
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &Isometry) -> Isometry {
        assert_eq!(self.dim, other.dim);
        let linear = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        let mut acc = Rational::zero();
                        for k in 0..self.dim {
                            acc += &self.linear[i][k] * &other.linear[k][j];
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let translation = (0..self.dim)
            .map(|i| {
                let mut acc = self.translation[i].clone();
                for k in 0..self.dim {
                    acc += &self.linear[i][k] * &other.translation[k];
                }
                fract_mod1(&acc)
            })
            .collect();
        Isometry {
            dim: self.dim,
            linear,
            translation,
        }
    }

    pub fn inverse(&self) -> Isometry {
        // O^{-1} = O^T; t' = -O^T t
        let linear: Vec<Vec<Rational>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.linear[j][i].clone()).collect())
            .collect();
        let translation = (0..self.dim)
            .map(|i| {
                let mut acc = Rational::zero();
                for k in 0..self.dim {
                    acc -= &linear[i][k] * &self.translation[k];
                }
                fract_mod1(&acc)
            })
            .collect();
        Isometry {
            dim: self.dim,
            linear,
            translation,
        }
    }

    fn key(&self) -> Vec<Rational> {
        let mut k: Vec<Rational> = self.linear.iter().flatten().cloned().collect();
        k.extend(self.translation.iter().cloned());
        k
    }
}

// ---------------------------------------------------------------------------
// Finite groups
// ---------------------------------------------------------------------------

/// A finite group of torus isometries with its multiplication table.
/// Element 0 is the identity.
#[derive(Debug, Clone)]
pub struct FiniteIsometryGroup {
    dim: usize,
    elements: Vec<Isometry>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl FiniteIsometryGroup {
    /// Closure of the generators under composition, identity included;
    /// fails once the closure exceeds `cap`.
    pub fn generate(dim: usize, generators: &[Isometry], cap: usize) -> Result<Self> {
        for g in generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: g.dim(),
                });
            }
        }
        let mut seen: BTreeMap<Vec<Rational>, Isometry> = BTreeMap::new();
        let id = Isometry::identity(dim);
        seen.insert(id.key(), id);
        let mut frontier: Vec<Isometry> = seen.values().cloned().collect();
        while let Some(el) = frontier.pop() {
            for g in generators {
                let next = g.compose(&el);
                if !seen.contains_key(&next.key()) {
                    if seen.len() + 1 > cap {
                        return Err(Error::GroupNotFiniteWithinCap(cap));
                    }
                    seen.insert(next.key(), next.clone());
                    frontier.push(next);
                }
            }
        }
        Self::from_closed_elements(dim, seen.into_values().collect())
    }

    pub fn trivial(dim: usize) -> Self {
        Self::generate(dim, &[], 1).expect("trivial group")
    }

    /// Builds the table for an already-closed element set.
    fn from_closed_elements(dim: usize, mut elements: Vec<Isometry>) -> Result<Self> {
        // identity first, the rest in canonical key order
        elements.sort_by_key(|a| a.key());
        if let Some(pos) = elements.iter().position(|e| e.is_identity()) {
            elements.rotate_left(0);
            let id = elements.remove(pos);
            elements.insert(0, id);
        }
        let index: BTreeMap<Vec<Rational>, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.key(), i))
            .collect();
        let n = elements.len();
        let mut table = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                let prod = elements[i].compose(&elements[j]);
                let Some(&k) = index.get(&prod.key()) else {
                    return Err(Error::GroupNotFiniteWithinCap(n));
                };
                table[i][j] = k;
            }
        }
        let inverses = (0..n)
            .map(|i| (0..n).find(|&j| table[i][j] == 0).expect("inverse exists"))
            .collect();
        Ok(FiniteIsometryGroup {
            dim,
            elements,
            table,
            inverses,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Isometry] {
        &self.elements
    }

    pub fn compose_indices(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// The stabilizer `G_x = { h : h x = x }`, with exact membership.
    pub fn isotropy(&self, x: &[Rational]) -> FiniteIsometryGroup {
        let x: Vec<Rational> = x.iter().map(fract_mod1).collect();
        let fixing: Vec<Isometry> = self
            .elements
            .iter()
            .filter(|h| h.apply(&x) == x)
            .cloned()
            .collect();
        Self::from_closed_elements(self.dim, fixing).expect("stabilizer is closed")
    }

    /// True when every non-identity element acts without fixed points.
    pub fn acts_freely(&self) -> bool {
        self.elements
            .iter()
            .filter(|h| !h.is_identity())
            .all(|h| fixed_locus(h).components.is_empty())
    }
}

// ---------------------------------------------------------------------------
// Normal form of an orthogonal matrix
// ---------------------------------------------------------------------------

/// Block data `O = B diag(R_{t_1}, ..., R_{t_k}, -1, ..., -1, +1, ..., +1) B^T`
/// with angles ascending in (0, pi).
#[derive(Debug, Clone)]
pub struct OrthogonalNormalForm {
    pub rotation_angles: Vec<f64>,
    pub minus_count: usize,
    pub plus_count: usize,
    pub basis: DMatrix<f64>,
}

impl OrthogonalNormalForm {
    pub fn dim(&self) -> usize {
        2 * self.rotation_angles.len() + self.minus_count + self.plus_count
    }

    pub fn block_diagonal(&self) -> DMatrix<f64> {
        let p = self.dim();
        let mut m = DMatrix::zeros(p, p);
        let mut pos = 0;
        for &theta in &self.rotation_angles {
            m[(pos, pos)] = theta.cos();
            m[(pos, pos + 1)] = -theta.sin();
            m[(pos + 1, pos)] = theta.sin();
            m[(pos + 1, pos + 1)] = theta.cos();
            pos += 2;
        }
        for _ in 0..self.minus_count {
            m[(pos, pos)] = -1.0;
            pos += 1;
        }
        for _ in 0..self.plus_count {
            m[(pos, pos)] = 1.0;
            pos += 1;
        }
        m
    }

    pub fn reconstruct(&self) -> DMatrix<f64> {
        &self.basis * self.block_diagonal() * self.basis.transpose()
    }
}

fn check_orthogonal_f64(o: &DMatrix<f64>) -> Result<()> {
    let p = o.nrows();
    if p == 0 || o.ncols() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            got: o.ncols(),
        });
    }
    let dev = (o.transpose() * o - DMatrix::<f64>::identity(p, p)).norm();
    if dev > 1e-9 {
        return Err(Error::NotOrthogonal(dev));
    }
    Ok(())
}

const ANGLE_EPS: f64 = 1e-9;

/// Rotation-block normal form via the real Schur decomposition (for a normal
/// matrix the quasi-triangular factor is block diagonal). Angle-pi blocks are
/// folded into -1 eigenvalue pairs so angles stay in the open interval.
pub fn normal_form(o: &DMatrix<f64>) -> Result<OrthogonalNormalForm> {
    check_orthogonal_f64(o)?;
    let p = o.nrows();
    let schur = nalgebra::linalg::Schur::try_new(o.clone(), 1e-14, 100_000)
        .ok_or(Error::NotOrthogonal(f64::NAN))?;
    let (q, t) = schur.unpack();

    let mut rotations: Vec<(f64, usize, usize)> = Vec::new(); // (angle, col_a, col_b)
    let mut minus_cols: Vec<usize> = Vec::new();
    let mut plus_cols: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < p {
        let two_by_two = i + 1 < p && t[(i + 1, i)].abs() > ANGLE_EPS;
        if two_by_two {
            let c = ((t[(i, i)] + t[(i + 1, i + 1)]) / 2.0).clamp(-1.0, 1.0);
            let s = (t[(i + 1, i)] - t[(i, i + 1)]) / 2.0;
            let mut theta = s.atan2(c);
            let (mut a, mut b) = (i, i + 1);
            if theta < 0.0 {
                // swapping the plane basis conjugates R_{-t} to R_t
                std::mem::swap(&mut a, &mut b);
                theta = -theta;
            }
            if theta >= std::f64::consts::PI - ANGLE_EPS {
                minus_cols.push(a);
                minus_cols.push(b);
            } else if theta <= ANGLE_EPS {
                plus_cols.push(a);
                plus_cols.push(b);
            } else {
                rotations.push((theta, a, b));
            }
            i += 2;
        } else {
            if t[(i, i)] > 0.0 {
                plus_cols.push(i);
            } else {
                minus_cols.push(i);
            }
            i += 1;
        }
    }
    rotations.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());

    let mut cols: Vec<usize> = Vec::with_capacity(p);
    for &(_, a, b) in &rotations {
        cols.push(a);
        cols.push(b);
    }
    cols.extend(&minus_cols);
    cols.extend(&plus_cols);
    let basis = DMatrix::from_fn(p, p, |r, c| q[(r, cols[c])]);

    let nf = OrthogonalNormalForm {
        rotation_angles: rotations.iter().map(|r| r.0).collect(),
        minus_count: minus_cols.len(),
        plus_count: plus_cols.len(),
        basis,
    };
    let dev = (nf.reconstruct() - o).norm();
    if dev > 1e-10 {
        return Err(Error::NotOrthogonal(dev));
    }
    Ok(nf)
}

/// Constructive Cartan-Dieudonne: unit vectors `v_1 .. v_m`, `m <= p`, with
/// `O = r_{v_1} ... r_{v_m}` (each `r_v` the reflection through `v`-perp).
/// `m` is even exactly when `det O = 1`.
pub fn reflection_factors(o: &DMatrix<f64>) -> Result<Vec<DVector<f64>>> {
    check_orthogonal_f64(o)?;
    let p = o.nrows();
    let mut m = o.clone();
    let mut factors: Vec<DVector<f64>> = Vec::new();
    for i in 0..p {
        let mut d = m.column(i).clone_owned();
        d[i] -= 1.0;
        let norm = d.norm();
        if norm > 1e-9 {
            let v = d / norm;
            // m <- r_v m ; r_v fixes e_0 .. e_{i-1} and sends m e_i to e_i
            let correction = &v * (v.transpose() * &m) * 2.0;
            m -= correction;
            factors.push(v);
        }
    }
    let dev = (&m - DMatrix::<f64>::identity(p, p)).norm();
    if dev > 1e-10 {
        return Err(Error::NotOrthogonal(dev));
    }
    // r_{v_k} ... r_{v_1} O = Id, so O = r_{v_1} ... r_{v_k}: keep build order
    Ok(factors)
}

// ---------------------------------------------------------------------------
// Fixed loci
// ---------------------------------------------------------------------------

/// One affine component of a fixed locus: `base + span(directions) mod Z^p`
/// with a rational base point and primitive integer tangent vectors.
#[derive(Debug, Clone)]
pub struct FixedComponent {
    pub base: Vec<Rational>,
    pub directions: Vec<Vec<i64>>,
}

impl FixedComponent {
    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    /// Exact rational points on the component: the base for isolated points,
    /// otherwise `count` staggered lattice-line samples per tangent vector.
    pub fn sample_points(&self, count: usize) -> Vec<Vec<Rational>> {
        if self.directions.is_empty() {
            return vec![self.base.clone()];
        }
        let strides = [1i64, 3, 5, 7];
        (0..count as i64)
            .map(|j| {
                let mut x = self.base.clone();
                for (d, dir) in self.directions.iter().enumerate() {
                    let s = rat(j * strides[d % strides.len()], count as i64);
                    for (xi, &wi) in x.iter_mut().zip(dir) {
                        *xi += &s * rat_int(wi);
                    }
                }
                x.iter().map(fract_mod1).collect()
            })
            .collect()
    }

    /// First unit vector orthogonal to the tangent space (deterministic);
    /// `None` when the component fills the torus.
    pub fn unit_normal(&self) -> Option<Vec<f64>> {
        let p = self.base.len();
        let mut ortho: Vec<DVector<f64>> = Vec::new();
        for dir in &self.directions {
            let mut v = DVector::from_iterator(p, dir.iter().map(|&x| x as f64));
            for u in &ortho {
                let proj = u.dot(&v);
                v -= u * proj;
            }
            let n = v.norm();
            if n > 1e-12 {
                ortho.push(v / n);
            }
        }
        for i in 0..p {
            let mut v = DVector::zeros(p);
            v[i] = 1.0;
            for u in &ortho {
                let proj = u.dot(&v);
                v -= u * proj;
            }
            let n = v.norm();
            if n > 1e-9 {
                let v = v / n;
                return Some(v.iter().copied().collect());
            }
        }
        None
    }

    /// Exact membership test: `x - base` lies in `span(directions) + Z^p`
    /// iff every integer covector annihilating the directions pairs
    /// integrally with it.
    pub fn contains(&self, x: &[Rational]) -> bool {
        let diff: Vec<Rational> = x
            .iter()
            .zip(&self.base)
            .map(|(a, b)| a - b)
            .collect();
        for phi in self.annihilator() {
            let mut pairing = Rational::zero();
            for (c, d) in phi.iter().zip(&diff) {
                pairing += Rational::from_integer(c.clone()) * d;
            }
            if !fract_mod1(&pairing).is_zero() {
                return false;
            }
        }
        true
    }

    /// Integer covectors annihilating the direction space.
    fn annihilator(&self) -> Vec<Vec<BigInt>> {
        let p = self.base.len();
        if self.directions.is_empty() {
            // all of Z^p
            return (0..p)
                .map(|i| {
                    (0..p)
                        .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                        .collect()
                })
                .collect();
        }
        // rows of A are the directions; kernel of A^T gives covectors phi
        // with phi . dir = 0 for every direction
        let a: IntMatrix = self
            .directions
            .iter()
            .map(|d| d.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        lattice::integer_kernel(&a)
    }

    fn same_component(&self, other: &FixedComponent) -> bool {
        if self.dimension() != other.dimension() || self.base.len() != other.base.len() {
            return false;
        }
        // equal tangent spans (rational rank test) and base on the same leaf
        let dim = self.dimension();
        if dim > 0 {
            let to_rat = |d: &Vec<i64>| -> Vec<Rational> { d.iter().map(|&x| rat_int(x)).collect() };
            let mut all: Vec<Vec<Rational>> = self.directions.iter().map(to_rat).collect();
            all.extend(other.directions.iter().map(to_rat));
            if lattice::rational_rank(&all) != dim {
                return false;
            }
        }
        self.contains(&other.base)
    }
}

/// Fixed locus of one isometry, or a union of loci.
#[derive(Debug, Clone, Default)]
pub struct FixedLocus {
    pub components: Vec<FixedComponent>,
}

impl FixedLocus {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component_dimensions(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.dimension()).collect()
    }
}

/// `Sigma_h = { x : h x = x }`, solved exactly: `(I - O) x = t (mod Z^p)`.
pub fn fixed_locus(h: &Isometry) -> FixedLocus {
    let p = h.dim();
    let oi = h.linear_int();
    let a: IntMatrix = (0..p)
        .map(|i| {
            (0..p)
                .map(|j| BigInt::from((if i == j { 1 } else { 0 }) - oi[i][j]))
                .collect()
        })
        .collect();
    let b: Vec<Rational> = h.translation().to_vec();
    match lattice::solve_mod1(&a, &b) {
        None => FixedLocus::default(),
        Some(sol) => {
            let dirs: Vec<Vec<i64>> = sol
                .directions
                .iter()
                .map(|d| d.iter().map(|x| x.to_i64().unwrap()).collect())
                .collect();
            FixedLocus {
                components: sol
                    .bases
                    .into_iter()
                    .map(|base| FixedComponent {
                        base,
                        directions: dirs.clone(),
                    })
                    .collect(),
            }
        }
    }
}

/// `Sigma_G = union over h != 1 of Sigma_h`, duplicate components merged.
pub fn singular_locus(group: &FiniteIsometryGroup) -> FixedLocus {
    let mut out: Vec<FixedComponent> = Vec::new();
    for h in group.elements().iter().filter(|h| !h.is_identity()) {
        for comp in fixed_locus(h).components {
            if !out.iter().any(|c| c.same_component(&comp)) {
                out.push(comp);
            }
        }
    }
    FixedLocus { components: out }
}

// ---------------------------------------------------------------------------
// Pin lifts
// ---------------------------------------------------------------------------

/// Spinor-space implementation of an isometry's linear part:
/// `S c(w) S^{-1} = (-1)^parity c(O w)`.
#[derive(Debug, Clone)]
pub struct PinLift {
    pub element: CliffordElement,
    /// Number of reflection factors mod 2 (0 for rotations).
    pub parity: u8,
}

/// Product of Clifford multiplications over the reflection factors of the
/// linear part; the conjugation identity is verified on all basis covectors.
pub fn pin_lift(h: &Isometry) -> Result<PinLift> {
    let p = h.dim();
    let o = h.linear_f64();
    let factors = reflection_factors(&o)?;
    let mut s = CliffordElement::identity(p);
    for v in &factors {
        let vs: Vec<f64> = v.iter().copied().collect();
        s = &s * &clifford_of_covector(&vs)?;
    }
    let parity = (factors.len() % 2) as u8;
    let twist = if parity == 0 { 1.0 } else { -1.0 };
    for k in 0..p {
        let mut e = vec![0.0; p];
        e[k] = 1.0;
        let lhs = &(&s * &clifford_of_covector(&e)?) * &s.adjoint();
        let ow: Vec<f64> = (0..p).map(|i| o[(i, k)]).collect();
        let rhs = clifford_of_covector(&ow)?.scale(Complex::new(twist, 0.0));
        if lhs.distance(&rhs) > 1e-12 {
            return Err(Error::NotOrthogonal(lhs.distance(&rhs)));
        }
    }
    Ok(PinLift { element: s, parity })
}

/// How the spinor representation of the group was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftGauge {
    /// The raw section already multiplies correctly.
    Trivial,
    /// Signs +-1 fixed the cocycle.
    SignGauged,
    /// Roots of unity fixed the cocycle (the +-1 gauge does not exist).
    PhaseGauged,
}

/// Result of lifting a finite group to the spinor space.
#[derive(Debug, Clone)]
pub enum SpinorLift {
    /// Honest representation of G itself: `S(g) S(h) = S(gh)`.
    Representation {
        matrices: Vec<CliffordElement>,
        gauge: LiftGauge,
    },
    /// No scalar gauge exists; the group acts only through the order-2|G|
    /// central extension, elements `(h, +-)` represented by `+-section[h]`.
    DoubleCover { section: Vec<CliffordElement> },
}

/// Spinor lift data for a finite group: the sign cocycle of the Pin section
/// and the best available representation.
#[derive(Debug, Clone)]
pub struct LiftTable {
    /// `cocycle[g][h]` in {+1, -1}: `S0(g) S0(h) = cocycle[g][h] S0(gh)`.
    pub cocycle: Vec<Vec<i8>>,
    pub lift: SpinorLift,
}

/// Solve `eps_g + eps_h + m(g,h) = eps_{gh} (mod 2)` by Gaussian elimination
/// over GF(2); unknown bit per group element.
fn sign_gauge(group: &FiniteIsometryGroup, m: &[Vec<u8>]) -> Option<Vec<u8>> {
    let n = group.order();
    if n > 63 {
        return None; // bitset solver capacity; larger groups go to the phase gauge
    }
    let unknown_mask: u64 = (1u64 << n) - 1;
    let lead_of = |row: u64| -> Option<usize> {
        let u = row & unknown_mask;
        if u == 0 {
            None
        } else {
            Some(63 - u.leading_zeros() as usize)
        }
    };
    let mut rows: Vec<u64> = Vec::new(); // bits 0..n unknowns, bit n = rhs
    for g in 0..n {
        for h in 0..n {
            let gh = group.compose_indices(g, h);
            let mut row = 0u64;
            row ^= 1 << g;
            row ^= 1 << h;
            row ^= 1 << gh;
            row |= (m[g][h] as u64) << n;
            // self-cancelling variables fold away automatically via xor
            rows.push(row);
        }
    }
    let mut pivots: Vec<u64> = Vec::new(); // kept in descending lead order
    for mut row in rows {
        for p in &pivots {
            let lead = lead_of(*p).expect("pivots have unknowns");
            if (row >> lead) & 1 == 1 {
                row ^= p;
            }
        }
        if row != 0 {
            match lead_of(row) {
                None => return None, // reduced to 0 = 1: inconsistent
                Some(_) => {
                    pivots.push(row);
                    pivots.sort_by_key(|r| std::cmp::Reverse(lead_of(*r).unwrap()));
                }
            }
        }
    }
    // back-substitute a particular solution (free variables = 0),
    // ascending lead so dependencies are already resolved
    let mut eps = vec![0u8; n];
    let mut sorted = pivots.clone();
    sorted.sort_by_key(|r| lead_of(*r).unwrap());
    for p in sorted {
        let lead = lead_of(p).unwrap();
        let mut val = (p >> n) & 1;
        for (j, e) in eps.iter().enumerate().take(n) {
            if j != lead && (p >> j) & 1 == 1 {
                val ^= *e as u64;
            }
        }
        eps[lead] = val as u8;
    }
    Some(eps)
}

/// Solve `x_g + x_h - x_{gh} = -m(g,h)/2 (mod 1)` over the rationals.
fn phase_gauge(group: &FiniteIsometryGroup, m: &[Vec<u8>]) -> Option<Vec<Rational>> {
    let n = group.order();
    let mut a: IntMatrix = Vec::with_capacity(n * n);
    let mut b: Vec<Rational> = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            let gh = group.compose_indices(g, h);
            let mut row = vec![BigInt::zero(); n];
            row[g] += 1;
            row[h] += 1;
            row[gh] -= 1;
            a.push(row);
            b.push(if m[g][h] == 0 { Rational::zero() } else { rat(-1, 2) });
        }
    }
    lattice::solve_mod1(&a, &b).map(|sol| sol.bases.into_iter().next().unwrap())
}

/// Chooses `S(h)` per element and repairs the sign cocycle when possible:
/// first with signs, then with rational phases; otherwise returns the honest
/// double cover.
pub fn lift_table(group: &FiniteIsometryGroup) -> Result<LiftTable> {
    let n = group.order();
    let p = group.dim();
    let spin_n = crate::clifford::spinor_dim(p) as f64;
    let section: Vec<CliffordElement> = group
        .elements()
        .iter()
        .map(|h| pin_lift(h).map(|l| l.element))
        .collect::<Result<_>>()?;

    let mut cocycle = vec![vec![0i8; n]; n];
    let mut m = vec![vec![0u8; n]; n];
    for g in 0..n {
        for h in 0..n {
            let gh = group.compose_indices(g, h);
            let t = &(&section[g] * &section[h]) * &section[gh].adjoint();
            let mu = t.trace() / Complex::new(spin_n, 0.0);
            let sign = if mu.re > 0.0 { 1i8 } else { -1 };
            let dev = t.distance(&CliffordElement::identity(p).scale(Complex::new(sign as f64, 0.0)));
            if dev > 1e-9 {
                return Err(Error::NotOrthogonal(dev));
            }
            cocycle[g][h] = sign;
            m[g][h] = if sign == 1 { 0 } else { 1 };
        }
    }

    let trivial = m.iter().flatten().all(|&x| x == 0);
    let lift = if trivial {
        SpinorLift::Representation {
            matrices: section.clone(),
            gauge: LiftGauge::Trivial,
        }
    } else if let Some(eps) = sign_gauge(group, &m) {
        let matrices = section
            .iter()
            .zip(&eps)
            .map(|(s, &e)| s.scale(Complex::new(if e == 0 { 1.0 } else { -1.0 }, 0.0)))
            .collect();
        SpinorLift::Representation {
            matrices,
            gauge: LiftGauge::SignGauged,
        }
    } else if let Some(xs) = phase_gauge(group, &m) {
        let matrices: Vec<CliffordElement> = section
            .iter()
            .zip(&xs)
            .map(|(s, x)| {
                let angle = 2.0 * std::f64::consts::PI * rational_to_f64(x);
                s.scale(Complex::from_polar(1.0, angle))
            })
            .collect();
        SpinorLift::Representation {
            matrices,
            gauge: LiftGauge::PhaseGauged,
        }
    } else {
        SpinorLift::DoubleCover {
            section: section.clone(),
        }
    };

    if let SpinorLift::Representation { matrices, .. } = &lift {
        for g in 0..n {
            for h in 0..n {
                let gh = group.compose_indices(g, h);
                let dev = (&matrices[g] * &matrices[h]).distance(&matrices[gh]);
                if dev > 1e-9 {
                    return Err(Error::NotOrthogonal(dev));
                }
            }
        }
    }

    Ok(LiftTable { cocycle, lift })
}

// ---------------------------------------------------------------------------

/// Matrix sum `sum_{j<count} R_theta^j` for a planar rotation; it vanishes
/// whenever the rotation order divides `count` (geometric series of a
/// nontrivial root of unity).
pub fn rotation_power_sum(theta: f64, count: usize) -> DMatrix<f64> {
    let r = DMatrix::from_row_slice(2, 2, &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()]);
    let mut acc = DMatrix::zeros(2, 2);
    let mut pow = DMatrix::identity(2, 2);
    for _ in 0..count {
        acc += &pow;
        pow = &pow * &r;
    }
    acc
}

pub type Complex64Matrix = DMatrix<Complex64>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn rot90() -> Isometry {
        Isometry::linear_map(vec![vec![0, -1], vec![1, 0]]).unwrap()
    }

    fn reflect_y() -> Isometry {
        Isometry::linear_map(vec![vec![1, 0], vec![0, -1]]).unwrap()
    }

    fn half_translation() -> Isometry {
        Isometry::pure_translation(vec![rat(1, 2), rat(1, 2)]).unwrap()
    }

    #[test]
    fn isometry_validation() {
        // non-orthogonal
        assert!(Isometry::linear_map(vec![vec![1, 1], vec![0, 1]]).is_err());
        // orthogonal but not lattice-preserving (3-4-5 rotation)
        let o = vec![
            vec![rat(3, 5), rat(-4, 5)],
            vec![rat(4, 5), rat(3, 5)],
        ];
        assert!(matches!(
            Isometry::new(o, vec![rat(0, 1), rat(0, 1)]),
            Err(Error::LatticeNotPreserved)
        ));
    }

    #[test]
    fn compose_and_inverse() {
        let r = rot90();
        let t = half_translation();
        let rt = r.compose(&t);
        let back = rt.inverse().compose(&rt);
        assert!(back.is_identity());
        assert_eq!(r.compose(&r.inverse()), Isometry::identity(2));
    }

    #[test]
    fn generate_trivial_group() {
        let g = FiniteIsometryGroup::generate(2, &[], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.elements()[0].is_identity());
    }

    #[test]
    fn generate_z4_rotation() {
        let g = FiniteIsometryGroup::generate(2, &[rot90()], 10).unwrap();
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn generate_translation_order_two() {
        let g = FiniteIsometryGroup::generate(2, &[half_translation()], 10).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn generate_cap_exceeded() {
        assert!(matches!(
            FiniteIsometryGroup::generate(2, &[rot90()], 3),
            Err(Error::GroupNotFiniteWithinCap(3))
        ));
    }

    #[test]
    fn table_is_associative() {
        let g = FiniteIsometryGroup::generate(2, &[rot90(), reflect_y()], 16).unwrap();
        assert_eq!(g.order(), 8); // dihedral
        let n = g.order();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = g.compose_indices(g.compose_indices(i, j), k);
                    let b = g.compose_indices(i, g.compose_indices(j, k));
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn normal_form_identity_and_rotation() {
        let id = DMatrix::<f64>::identity(3, 3);
        let nf = normal_form(&id).unwrap();
        assert!(nf.rotation_angles.is_empty());
        assert_eq!(nf.plus_count, 3);
        assert_eq!(nf.minus_count, 0);

        let r = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let nf = normal_form(&r).unwrap();
        assert_eq!(nf.rotation_angles.len(), 1);
        assert!((nf.rotation_angles[0] - std::f64::consts::FRAC_PI_2).abs() <= 1e-12);
        assert!((nf.reconstruct() - &r).norm() <= 1e-12);
    }

    #[test]
    fn normal_form_folds_pi_blocks() {
        let m = DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, -1.0]);
        let nf = normal_form(&m).unwrap();
        assert!(nf.rotation_angles.is_empty());
        assert_eq!(nf.minus_count, 2);
    }

    #[test]
    fn normal_form_rejects_non_orthogonal() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]);
        assert!(matches!(normal_form(&m), Err(Error::NotOrthogonal(_))));
    }

    #[test]
    fn random_orthogonal_roundtrips() {
        // 100 random block-built orthogonal matrices per dimension: both the
        // normal form and the reflection factorization reconstruct to 1e-12
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for p in 2..=4usize {
            for _ in 0..100 {
                // random orthogonal basis from QR of a random matrix
                let raw = DMatrix::from_fn(p, p, |_, _| rng.gen_range(-1.0..1.0f64));
                let qr = raw.qr();
                let q = qr.q();
                // random block content
                let mut blocks = DMatrix::<f64>::zeros(p, p);
                let mut pos = 0;
                while pos < p {
                    if pos + 1 < p && rng.gen_bool(0.6) {
                        let theta: f64 = rng.gen_range(0.1..(std::f64::consts::PI - 0.1));
                        blocks[(pos, pos)] = theta.cos();
                        blocks[(pos, pos + 1)] = -theta.sin();
                        blocks[(pos + 1, pos)] = theta.sin();
                        blocks[(pos + 1, pos + 1)] = theta.cos();
                        pos += 2;
                    } else {
                        blocks[(pos, pos)] = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                        pos += 1;
                    }
                }
                let o = &q * blocks * q.transpose();

                let nf = normal_form(&o).unwrap();
                assert_eq!(2 * nf.rotation_angles.len() + nf.minus_count + nf.plus_count, p);
                assert!(
                    (nf.reconstruct() - &o).norm() <= 1e-12,
                    "normal form roundtrip p={p}"
                );
                assert!(nf.rotation_angles.windows(2).all(|w| w[0] <= w[1]));

                let factors = reflection_factors(&o).unwrap();
                assert!(factors.len() <= p);
                let mut prod = DMatrix::<f64>::identity(p, p);
                for v in &factors {
                    prod *= DMatrix::<f64>::identity(p, p) - v * v.transpose() * 2.0;
                }
                assert!((prod - &o).norm() <= 1e-12, "reflection roundtrip p={p}");
            }
        }
    }

    #[test]
    fn reflection_factors_examples() {
        let id = DMatrix::<f64>::identity(2, 2);
        assert!(reflection_factors(&id).unwrap().is_empty());

        let refl = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let f = reflection_factors(&refl).unwrap();
        assert_eq!(f.len(), 1);
        assert!((f[0][0].abs() - 0.0).abs() <= 1e-12 && (f[0][1].abs() - 1.0).abs() <= 1e-12);

        let r = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let f = reflection_factors(&r).unwrap();
        assert_eq!(f.len(), 2);
        let mut prod = DMatrix::<f64>::identity(2, 2);
        for v in &f {
            let rv = DMatrix::<f64>::identity(2, 2) - v * v.transpose() * 2.0;
            prod *= rv;
        }
        assert!((prod - r).norm() <= 1e-12);
    }

    #[test]
    fn reflection_count_parity_matches_determinant() {
        for m in [
            DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]),
            DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]),
            DMatrix::from_row_slice(3, 3, &[0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0]),
        ] {
            let f = reflection_factors(&m).unwrap();
            let det = m.determinant();
            assert_eq!(f.len().is_multiple_of(2), det > 0.0);
        }
    }

    #[test]
    fn fixed_locus_rotation_points() {
        let locus = fixed_locus(&rot90());
        assert_eq!(locus.components.len(), 2);
        let mut bases: Vec<Vec<Rational>> =
            locus.components.iter().map(|c| c.base.clone()).collect();
        bases.sort();
        assert_eq!(bases[0], vec![rat(0, 1), rat(0, 1)]);
        assert_eq!(bases[1], vec![rat(1, 2), rat(1, 2)]);
        assert!(locus.components.iter().all(|c| c.dimension() == 0));
    }

    #[test]
    fn fixed_locus_reflection_circles() {
        let locus = fixed_locus(&reflect_y());
        assert_eq!(locus.components.len(), 2);
        assert!(locus.components.iter().all(|c| c.dimension() == 1));
        // every sample point is exactly fixed
        for c in &locus.components {
            for x in c.sample_points(8) {
                assert_eq!(reflect_y().apply(&x), x);
            }
        }
    }

    #[test]
    fn fixed_locus_free_translation_empty() {
        assert!(fixed_locus(&half_translation()).is_empty());
    }

    #[test]
    fn isotropy_examples() {
        let g = FiniteIsometryGroup::generate(2, &[rot90()], 10).unwrap();
        let full = g.isotropy(&[rat(0, 1), rat(0, 1)]);
        assert_eq!(full.order(), 4);
        let generic = g.isotropy(&[rat(1, 3), rat(1, 7)]);
        assert_eq!(generic.order(), 1);

        let refl = FiniteIsometryGroup::generate(2, &[reflect_y()], 10).unwrap();
        assert_eq!(refl.isotropy(&[rat(0, 1), rat(1, 4)]).order(), 1);
        assert_eq!(refl.isotropy(&[rat(1, 4), rat(0, 1)]).order(), 2);
    }

    #[test]
    fn singular_locus_z4_has_four_points() {
        let g = FiniteIsometryGroup::generate(2, &[rot90()], 10).unwrap();
        let sigma = singular_locus(&g);
        assert_eq!(sigma.components.len(), 4);
        let mut bases: Vec<Vec<Rational>> =
            sigma.components.iter().map(|c| c.base.clone()).collect();
        bases.sort();
        assert_eq!(
            bases,
            vec![
                vec![rat(0, 1), rat(0, 1)],
                vec![rat(0, 1), rat(1, 2)],
                vec![rat(1, 2), rat(0, 1)],
                vec![rat(1, 2), rat(1, 2)],
            ]
        );
    }

    #[test]
    fn singular_locus_free_and_reflection() {
        let free = FiniteIsometryGroup::generate(2, &[half_translation()], 10).unwrap();
        assert!(singular_locus(&free).is_empty());
        assert!(free.acts_freely());

        let refl = FiniteIsometryGroup::generate(2, &[reflect_y()], 10).unwrap();
        let sigma = singular_locus(&refl);
        assert_eq!(sigma.components.len(), 2);
        assert_eq!(sigma.component_dimensions(), vec![1, 1]);
        assert!(!refl.acts_freely());
    }

    #[test]
    fn singular_components_have_empty_interior() {
        // dimension < p for every non-identity fixed component
        for gens in [vec![rot90()], vec![reflect_y()], vec![rot90(), reflect_y()]] {
            let g = FiniteIsometryGroup::generate(2, &gens, 16).unwrap();
            for c in singular_locus(&g).components {
                assert!(c.dimension() < 2);
            }
        }
    }

    #[test]
    fn fixing_with_identity_linear_part_means_identity() {
        // mirrors the injectivity of G_x -> Aut(T_x): a generated group never
        // contains a nontrivial pure translation with a fixed point
        let g = FiniteIsometryGroup::generate(
            2,
            &[rot90(), half_translation()],
            32,
        )
        .unwrap();
        for h in g.elements() {
            if h.is_pure_translation() && !fixed_locus(h).is_empty() {
                assert!(h.is_identity());
            }
        }
    }

    #[test]
    fn pin_lift_examples() {
        let id = pin_lift(&Isometry::identity(2)).unwrap();
        assert_eq!(id.parity, 0);
        assert!(id.element.distance(&CliffordElement::identity(2)) <= 1e-14);

        // reflection through e2-perp lifts to gamma_2
        let lift = pin_lift(&reflect_y()).unwrap();
        assert_eq!(lift.parity, 1);
        let g = crate::clifford::make_generators(2).unwrap();
        assert!(lift.element.distance(&g[1]) <= 1e-12 || lift.element.distance(&g[1].scale(Complex::new(-1.0, 0.0))) <= 1e-12);

        // rotation by pi lifts to +-g1 g2
        let rot_pi = Isometry::linear_map(vec![vec![-1, 0], vec![0, -1]]).unwrap();
        let lift = pin_lift(&rot_pi).unwrap();
        assert_eq!(lift.parity, 0);
        let g12 = &g[0] * &g[1];
        let d1 = lift.element.distance(&g12);
        let d2 = lift.element.distance(&g12.scale(Complex::new(-1.0, 0.0)));
        assert!(d1 <= 1e-12 || d2 <= 1e-12);
    }

    #[test]
    fn lift_table_reflection_is_true_representation() {
        let g = FiniteIsometryGroup::generate(2, &[reflect_y()], 10).unwrap();
        let table = lift_table(&g).unwrap();
        assert!(matches!(
            table.lift,
            SpinorLift::Representation {
                gauge: LiftGauge::Trivial | LiftGauge::SignGauged,
                ..
            }
        ));
    }

    #[test]
    fn lift_table_z4_needs_phases() {
        let g = FiniteIsometryGroup::generate(2, &[rot90()], 10).unwrap();
        let table = lift_table(&g).unwrap();
        // the +-1 gauge cannot exist: S(r)^4 = -1 for any sign choice
        match table.lift {
            SpinorLift::Representation { gauge, .. } => {
                assert_eq!(gauge, LiftGauge::PhaseGauged);
            }
            SpinorLift::DoubleCover { .. } => panic!("phase gauge should fix Z4"),
        }
    }

    #[test]
    fn lift_table_point_symmetry_needs_phases() {
        let rot_pi = Isometry::linear_map(vec![vec![-1, 0], vec![0, -1]]).unwrap();
        let g = FiniteIsometryGroup::generate(2, &[rot_pi], 10).unwrap();
        let table = lift_table(&g).unwrap();
        assert!(matches!(
            table.lift,
            SpinorLift::Representation {
                gauge: LiftGauge::PhaseGauged,
                ..
            }
        ));
    }

    #[test]
    fn lift_table_dihedral_group() {
        // the full symmetry group of the square lattice contains both the
        // quarter turn and the axis reflections, so no scalar gauge can
        // exist (its Klein four-subgroup already has none)
        let g = FiniteIsometryGroup::generate(2, &[rot90(), reflect_y()], 16).unwrap();
        assert_eq!(g.order(), 8);
        let table = lift_table(&g).unwrap();
        assert!(matches!(table.lift, SpinorLift::DoubleCover { .. }));
    }

    #[test]
    fn lift_table_klein_four_is_double_cover() {
        // reflections in both axes: the lifts gamma_1, gamma_2 anticommute
        // while the group is abelian; no scalar gauge can fix that
        let reflect_x = Isometry::linear_map(vec![vec![-1, 0], vec![0, 1]]).unwrap();
        let g = FiniteIsometryGroup::generate(2, &[reflect_y(), reflect_x], 10).unwrap();
        assert_eq!(g.order(), 4);
        let table = lift_table(&g).unwrap();
        assert!(matches!(table.lift, SpinorLift::DoubleCover { .. }));
    }

    #[test]
    fn rotation_power_sum_vanishes_for_divisible_order() {
        let theta = std::f64::consts::PI / 2.0;
        assert!(rotation_power_sum(theta, 4).norm() <= 1e-12);
        assert!(rotation_power_sum(theta, 8).norm() <= 1e-12);
        assert!(rotation_power_sum(theta, 3).norm() > 0.5);
    }
}

//! Clifford algebra Cl(p) in a gamma-matrix representation, the exterior
//! algebra on R^p, and the symbol correspondence between them.
//!
//! Generators come from the standard recursive Pauli tensor construction,
//! so every generator matrix has entries in {0, ±1, ±i} and products of
//! generators stay exact in f64 arithmetic. The chirality for even p is
//! `Gamma = (-i)^(p/2) g_1 ... g_p`, the phase that makes it a selfadjoint
//! involution; for odd p the convention is `Gamma = 1`.
//!
//! A `MultiVector` stores blade coefficients indexed by bitmask (bit i set
//! means e_{i+1} participates). `quantize` sends the blade e_S to the ordered
//! product of generators; `symbol_map` inverts it. For odd p the matrix
//! algebra has dimension 2^(p-1) < 2^p, so `symbol_map` is the section
//! through the blades that omit e_p (the top generator acts as the chirality
//! of the even subsystem); `quantize . symbol_map` is still the identity on
//! matrices for every p.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Complex64;

pub const MAX_DIM: usize = 4;

/// Spinor space dimension 2^floor(p/2).
pub fn spinor_dim(p: usize) -> usize {
    1 << (p / 2)
}

fn check_dim(p: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&p) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(p))
    }
}

// ---------------------------------------------------------------------------
// Exterior algebra side
// ---------------------------------------------------------------------------

/// Element of the (complexified) exterior algebra on R^p, blade coefficients
/// indexed by subset bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiVector {
    dim: usize,
    coeffs: Vec<Complex64>,
}

/// Sign of the canonical reordering in the product of basis blades `a * b`
/// (Euclidean signature): (-1)^(number of index pairs i in a, j in b, i > j).
fn blade_reorder_sign(a: usize, b: usize) -> f64 {
    let mut shifted = a >> 1;
    let mut swaps = 0u32;
    while shifted != 0 {
        swaps += (shifted & b).count_ones();
        shifted >>= 1;
    }
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

impl MultiVector {
    pub fn zero(dim: usize) -> Self {
        MultiVector {
            dim,
            coeffs: vec![Complex::new(0.0, 0.0); 1 << dim],
        }
    }

    pub fn scalar(dim: usize, value: Complex64) -> Self {
        let mut m = Self::zero(dim);
        m.coeffs[0] = value;
        m
    }

    pub fn covector(components: &[Complex64]) -> Self {
        let mut m = Self::zero(components.len());
        for (i, &c) in components.iter().enumerate() {
            m.coeffs[1 << i] = c;
        }
        m
    }

    pub fn covector_real(components: &[f64]) -> Self {
        Self::covector(
            &components
                .iter()
                .map(|&x| Complex::new(x, 0.0))
                .collect::<Vec<_>>(),
        )
    }

    /// Unit blade e_S for the subset encoded by `mask`.
    pub fn basis_blade(dim: usize, mask: usize) -> Self {
        let mut m = Self::zero(dim);
        m.coeffs[mask] = Complex::new(1.0, 0.0);
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, mask: usize) -> Complex64 {
        self.coeffs[mask]
    }

    pub fn set_coeff(&mut self, mask: usize, value: Complex64) {
        self.coeffs[mask] = value;
    }

    /// Coefficient of the top blade e_1 ∧ ... ∧ e_p.
    pub fn top_coeff(&self) -> Complex64 {
        self.coeffs[(1 << self.dim) - 1]
    }

    /// Projection onto blades of grade k.
    pub fn grade(&self, k: usize) -> Self {
        let mut m = Self::zero(self.dim);
        for (mask, &c) in self.coeffs.iter().enumerate() {
            if mask.count_ones() as usize == k {
                m.coeffs[mask] = c;
            }
        }
        m
    }

    pub fn scale(&self, s: Complex64) -> Self {
        MultiVector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Geometric (Clifford) product with Euclidean metric.
    pub fn geometric(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "multivector dimension mismatch");
        let mut out = Self::zero(self.dim);
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca.norm_sqr() == 0.0 {
                continue;
            }
            for (b, &cb) in other.coeffs.iter().enumerate() {
                if cb.norm_sqr() == 0.0 {
                    continue;
                }
                let sign = blade_reorder_sign(a, b);
                out.coeffs[a ^ b] += ca * cb * sign;
            }
        }
        out
    }

    /// Exterior product: the grade-(|a|+|b|) part of the geometric product.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "multivector dimension mismatch");
        let mut out = Self::zero(self.dim);
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca.norm_sqr() == 0.0 {
                continue;
            }
            for (b, &cb) in other.coeffs.iter().enumerate() {
                if cb.norm_sqr() == 0.0 || a & b != 0 {
                    continue;
                }
                let sign = blade_reorder_sign(a, b);
                out.coeffs[a | b] += ca * cb * sign;
            }
        }
        out
    }

    /// Euclidean norm of the coefficient vector over the blade basis.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
}

impl std::ops::Add for &MultiVector {
    type Output = MultiVector;
    fn add(self, rhs: &MultiVector) -> MultiVector {
        assert_eq!(self.dim, rhs.dim);
        MultiVector {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &MultiVector {
    type Output = MultiVector;
    fn sub(self, rhs: &MultiVector) -> MultiVector {
        assert_eq!(self.dim, rhs.dim);
        MultiVector {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Blade-coefficient norm as a free function.
pub fn multivector_norm(m: &MultiVector) -> f64 {
    m.norm()
}

// ---------------------------------------------------------------------------
// Matrix (operator) side
// ---------------------------------------------------------------------------

/// Element of Cl(p) realized as a complex matrix of size 2^floor(p/2).
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordElement {
    dim: usize,
    mat: DMatrix<Complex64>,
}

impl CliffordElement {
    pub fn identity(dim: usize) -> Self {
        let n = spinor_dim(dim);
        CliffordElement {
            dim,
            mat: DMatrix::identity(n, n),
        }
    }

    pub fn zero(dim: usize) -> Self {
        let n = spinor_dim(dim);
        CliffordElement {
            dim,
            mat: DMatrix::zeros(n, n),
        }
    }

    pub fn from_matrix(dim: usize, mat: DMatrix<Complex64>) -> Result<Self> {
        let n = spinor_dim(dim);
        if mat.nrows() != n || mat.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: mat.nrows(),
            });
        }
        Ok(CliffordElement { dim, mat })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn adjoint(&self) -> Self {
        CliffordElement {
            dim: self.dim,
            mat: self.mat.adjoint(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CliffordElement {
            dim: self.dim,
            mat: self.mat.clone() * s,
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    /// Frobenius norm; the comparisons in this crate are all against 0 or
    /// between unitaries, where it is equivalent to any operator norm up to
    /// the fixed factor sqrt(dim).
    pub fn norm(&self) -> f64 {
        self.mat.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (self - other).norm()
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }
}

impl std::ops::Mul for &CliffordElement {
    type Output = CliffordElement;
    fn mul(self, rhs: &CliffordElement) -> CliffordElement {
        assert_eq!(self.dim, rhs.dim, "Clifford dimension mismatch");
        CliffordElement {
            dim: self.dim,
            mat: &self.mat * &rhs.mat,
        }
    }
}

impl std::ops::Add for &CliffordElement {
    type Output = CliffordElement;
    fn add(self, rhs: &CliffordElement) -> CliffordElement {
        assert_eq!(self.dim, rhs.dim, "Clifford dimension mismatch");
        CliffordElement {
            dim: self.dim,
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl std::ops::Sub for &CliffordElement {
    type Output = CliffordElement;
    fn sub(self, rhs: &CliffordElement) -> CliffordElement {
        assert_eq!(self.dim, rhs.dim, "Clifford dimension mismatch");
        CliffordElement {
            dim: self.dim,
            mat: &self.mat - &rhs.mat,
        }
    }
}

fn pauli(k: usize) -> DMatrix<Complex64> {
    let z = Complex::new(0.0, 0.0);
    let one = Complex::new(1.0, 0.0);
    let i = Complex::new(0.0, 1.0);
    match k {
        1 => DMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        2 => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        3 => DMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
        _ => unreachable!(),
    }
}

fn kron_chain(factors: &[DMatrix<Complex64>]) -> DMatrix<Complex64> {
    let mut out = DMatrix::identity(1, 1);
    for f in factors {
        out = out.kronecker(f);
    }
    out
}

fn even_generators(m: usize) -> Vec<DMatrix<Complex64>> {
    // p = 2m; gamma_{2j-1} = I^(j-1) (x) s1 (x) s3^(m-j), gamma_{2j} likewise with s2
    let eye = DMatrix::<Complex64>::identity(2, 2);
    let mut gens = Vec::with_capacity(2 * m);
    for j in 1..=m {
        for s in [1usize, 2] {
            let mut factors = Vec::new();
            for _ in 0..(j - 1) {
                factors.push(eye.clone());
            }
            factors.push(pauli(s));
            for _ in 0..(m - j) {
                factors.push(pauli(3));
            }
            gens.push(kron_chain(&factors));
        }
    }
    // reorder to gamma_1, gamma_2, ... (loop above already emits in order)
    gens
}

/// Gamma matrices for Cl(p), 1 <= p <= 4, satisfying
/// `g_i g_j + g_j g_i = 2 delta_ij`.
pub fn make_generators(p: usize) -> Result<Vec<CliffordElement>> {
    check_dim(p)?;
    let m = p / 2;
    let mut mats = even_generators(m);
    if p % 2 == 1 {
        // top generator = (-i)^m * product of the even ones (chirality of
        // the even subsystem); for p = 1 this is the empty product 1.
        let n = spinor_dim(p);
        let mut top = DMatrix::<Complex64>::identity(n, n);
        for g in &mats {
            top = &top * g;
        }
        let phase = Complex::new(0.0, -1.0).powu(m as u32);
        mats.push(top * phase);
    }
    Ok(mats
        .into_iter()
        .map(|mat| CliffordElement { dim: p, mat })
        .collect())
}

/// Clifford multiplication c(v) = sum_i v_i g_i for a complex covector.
pub fn clifford_of_covector_complex(v: &[Complex64]) -> Result<CliffordElement> {
    let p = v.len();
    let gens = make_generators(p)?;
    let mut out = CliffordElement::zero(p);
    for (vi, g) in v.iter().zip(&gens) {
        out = &out + &g.scale(*vi);
    }
    Ok(out)
}

/// Clifford multiplication by a real covector; c(v)^2 = |v|^2.
pub fn clifford_of_covector(v: &[f64]) -> Result<CliffordElement> {
    clifford_of_covector_complex(
        &v.iter().map(|&x| Complex::new(x, 0.0)).collect::<Vec<_>>(),
    )
}

/// The grading operator: `(-i)^(p/2) g_1 ... g_p` for even p, the identity
/// for odd p.
pub fn chirality(p: usize) -> Result<CliffordElement> {
    check_dim(p)?;
    if p % 2 == 1 {
        return Ok(CliffordElement::identity(p));
    }
    let gens = make_generators(p)?;
    let mut prod = CliffordElement::identity(p);
    for g in &gens {
        prod = &prod * g;
    }
    let phase = Complex::new(0.0, -1.0).powu((p / 2) as u32);
    Ok(prod.scale(phase))
}

/// Ordered generator product g_S for the subset encoded by `mask`.
fn gamma_blade(gens: &[CliffordElement], p: usize, mask: usize) -> CliffordElement {
    let mut out = CliffordElement::identity(p);
    for (i, g) in gens.iter().enumerate() {
        if mask & (1 << i) != 0 {
            out = &out * g;
        }
    }
    out
}

/// Quantization: blade e_S goes to the ordered product of generators g_S.
pub fn quantize(m: &MultiVector) -> Result<CliffordElement> {
    let p = m.dim();
    let gens = make_generators(p)?;
    let mut out = CliffordElement::zero(p);
    for mask in 0..(1usize << p) {
        let c = m.coeff(mask);
        if c.norm_sqr() != 0.0 {
            out = &out + &gamma_blade(&gens, p, mask).scale(c);
        }
    }
    Ok(out)
}

/// Masks whose blades form a basis of the matrix algebra: all of them for
/// even p, the ones omitting e_p for odd p.
fn section_masks(p: usize) -> impl Iterator<Item = usize> {
    let top = if p.is_multiple_of(2) { 1usize << p } else { 1usize << (p - 1) };
    0..top
}

/// Inverse of `quantize`. The g_S are Hilbert-Schmidt orthogonal, so the
/// coefficient of e_S is tr(g_S^* x) / 2^floor(p/2). For odd p the result is
/// supported on blades omitting e_p (the section; see module docs), and
/// `quantize(symbol_map(x)) == x` still holds exactly.
pub fn symbol_map(x: &CliffordElement) -> Result<MultiVector> {
    let p = x.dim();
    let gens = make_generators(p)?;
    let n = spinor_dim(p) as f64;
    let mut out = MultiVector::zero(p);
    for mask in section_masks(p) {
        let blade = gamma_blade(&gens, p, mask);
        let c = (&blade.adjoint() * x).trace() / n;
        out.set_coeff(mask, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-14;

    fn assert_clifford_relations(p: usize) {
        let gens = make_generators(p).unwrap();
        assert_eq!(gens.len(), p);
        let id = CliffordElement::identity(p);
        for i in 0..p {
            // selfadjoint and unitary
            assert!(gens[i].distance(&gens[i].adjoint()) <= TOL);
            assert!((&gens[i] * &gens[i]).distance(&id) <= TOL);
            for j in 0..p {
                let anti = gens[i].anticommutator(&gens[j]);
                let expected = if i == j {
                    id.scale(Complex::new(2.0, 0.0))
                } else {
                    CliffordElement::zero(p)
                };
                assert!(
                    anti.distance(&expected) <= TOL,
                    "relation failed for ({i},{j}) in p={p}"
                );
            }
        }
    }

    #[test]
    fn generators_satisfy_relations() {
        for p in 1..=4 {
            assert_clifford_relations(p);
        }
    }

    #[test]
    fn p1_generator_is_one() {
        let gens = make_generators(1).unwrap();
        assert!(gens[0].distance(&CliffordElement::identity(1)) <= TOL);
    }

    #[test]
    fn unsupported_dimension_rejected() {
        assert!(make_generators(0).is_err());
        assert!(make_generators(5).is_err());
    }

    #[test]
    fn covector_basis_and_zero() {
        let g = make_generators(3).unwrap();
        let c1 = clifford_of_covector(&[1.0, 0.0, 0.0]).unwrap();
        assert!(c1.distance(&g[0]) <= TOL);
        let c0 = clifford_of_covector(&[0.0, 0.0, 0.0]).unwrap();
        assert!(c0.norm() <= TOL);
    }

    #[test]
    fn covector_squares_to_norm() {
        // fixed unit covectors plus random ones in several dimensions
        let vs: Vec<Vec<f64>> = vec![
            vec![0.6, 0.8],
            vec![2.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0],
            vec![0.5, 0.5, 0.5, 0.5],
        ];
        for v in vs {
            let p = v.len();
            let c = clifford_of_covector(&v).unwrap();
            let sq = &c * &c;
            let norm2: f64 = v.iter().map(|x| x * x).sum();
            let expected = CliffordElement::identity(p).scale(Complex::new(norm2, 0.0));
            assert!(sq.distance(&expected) <= 1e-12);
        }

        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as f64) / (u32::MAX as f64) * 2.0 - 1.0
        };
        for p in 1..=4usize {
            for _ in 0..25 {
                let mut v: Vec<f64> = (0..p).map(|_| next()).collect();
                let n: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if n < 1e-3 {
                    continue;
                }
                for x in &mut v {
                    *x /= n;
                }
                let c = clifford_of_covector(&v).unwrap();
                let sq = &c * &c;
                assert!(sq.distance(&CliffordElement::identity(p)) <= 1e-12);
            }
        }
    }

    #[test]
    fn chirality_identities() {
        for p in [2usize, 4] {
            let gamma = chirality(p).unwrap();
            let id = CliffordElement::identity(p);
            assert!((&gamma * &gamma).distance(&id) <= TOL, "square p={p}");
            assert!(gamma.distance(&gamma.adjoint()) <= TOL, "selfadjoint p={p}");
            for g in make_generators(p).unwrap() {
                assert!(gamma.anticommutator(&g).norm() <= TOL, "anticommute p={p}");
            }
        }
        // odd p convention
        for p in [1usize, 3] {
            assert!(chirality(p).unwrap().distance(&CliffordElement::identity(p)) <= TOL);
        }
    }

    #[test]
    fn chirality_p2_matches_minus_i_g1_g2() {
        let g = make_generators(2).unwrap();
        let expected = (&g[0] * &g[1]).scale(Complex::new(0.0, -1.0));
        assert!(chirality(2).unwrap().distance(&expected) <= TOL);
    }

    #[test]
    fn symbol_of_generator_products() {
        // g1 g2 -> e1 ^ e2
        let g = make_generators(2).unwrap();
        let sym = symbol_map(&(&g[0] * &g[1])).unwrap();
        assert!((sym.coeff(0b11) - Complex::new(1.0, 0.0)).norm() <= TOL);
        assert!((&sym - &MultiVector::basis_blade(2, 0b11)).norm() <= TOL);

        // c(v) c(v) -> scalar |v|^2
        let v = [0.3, -0.7];
        let cv = clifford_of_covector(&v).unwrap();
        let sym = symbol_map(&(&cv * &cv)).unwrap();
        let expected = MultiVector::scalar(2, Complex::new(0.58, 0.0));
        assert!((&sym - &expected).norm() <= 1e-13);

        // c(u) c(v) for u=(1,0), v=(1,1): scalar 1 plus bivector e1^e2
        let cu = clifford_of_covector(&[1.0, 0.0]).unwrap();
        let cv = clifford_of_covector(&[1.0, 1.0]).unwrap();
        let sym = symbol_map(&(&cu * &cv)).unwrap();
        assert!((sym.coeff(0b00) - Complex::new(1.0, 0.0)).norm() <= TOL);
        assert!((sym.coeff(0b11) - Complex::new(1.0, 0.0)).norm() <= TOL);
    }

    #[test]
    fn quantize_symbol_roundtrip_all_blades() {
        for p in 1..=4 {
            let gens = make_generators(p).unwrap();
            for mask in 0..(1usize << p) {
                let x = gamma_blade(&gens, p, mask);
                let back = quantize(&symbol_map(&x).unwrap()).unwrap();
                assert!(
                    back.distance(&x) <= 1e-12,
                    "roundtrip failed p={p} mask={mask:b}"
                );
            }
        }
    }

    #[test]
    fn symbol_is_bijective_even_p() {
        // linear bijection on the full 2^p space for even p: check that the
        // symbol of each blade product is that blade
        for p in [2usize, 4] {
            let gens = make_generators(p).unwrap();
            for mask in 0..(1usize << p) {
                let sym = symbol_map(&gamma_blade(&gens, p, mask)).unwrap();
                assert!(
                    (&sym - &MultiVector::basis_blade(p, mask)).norm() <= 1e-12,
                    "p={p} mask={mask:b}"
                );
            }
        }
    }

    fn det(v: &[Vec<f64>]) -> f64 {
        let n = v.len();
        let m = DMatrix::from_fn(n, n, |i, j| v[j][i]);
        m.determinant()
    }

    #[test]
    fn top_grade_of_covector_product_is_determinant() {
        // deterministic pseudo-random covectors via a tiny LCG
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as f64) / (u32::MAX as f64) * 2.0 - 1.0
        };
        for p in 2..=4 {
            for _ in 0..25 {
                let vs: Vec<Vec<f64>> = (0..p).map(|_| (0..p).map(|_| next()).collect()).collect();
                let mut prod = MultiVector::scalar(p, Complex::new(1.0, 0.0));
                for v in &vs {
                    prod = prod.geometric(&MultiVector::covector_real(v));
                }
                let top = prod.grade(p).top_coeff();
                let d = det(&vs);
                assert!(
                    (top - Complex::new(d, 0.0)).norm() <= 1e-12,
                    "p={p}: top {top} vs det {d}"
                );
            }
        }
    }

    #[test]
    fn multivector_norm_examples() {
        assert_eq!(multivector_norm(&MultiVector::zero(2)), 0.0);
        assert_eq!(multivector_norm(&MultiVector::basis_blade(2, 0b11)), 1.0);
        let m = MultiVector::covector_real(&[3.0, 4.0]);
        assert!((multivector_norm(&m) - 5.0).abs() <= TOL);
    }

    #[test]
    fn wedge_of_repeated_covector_vanishes() {
        let v = MultiVector::covector_real(&[0.4, -1.2, 0.7]);
        assert!(v.wedge(&v).norm() <= TOL);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_multivector(dim: usize) -> impl Strategy<Value = MultiVector> {
            proptest::collection::vec(-2.0f64..2.0, 2 << dim).prop_map(move |raw| {
                let mut m = MultiVector::zero(dim);
                for mask in 0..(1usize << dim) {
                    m.set_coeff(mask, Complex::new(raw[2 * mask], raw[2 * mask + 1]));
                }
                m
            })
        }

        proptest! {
            #[test]
            fn geometric_product_is_associative(
                a in arb_multivector(3),
                b in arb_multivector(3),
                c in arb_multivector(3),
            ) {
                let lhs = a.geometric(&b).geometric(&c);
                let rhs = a.geometric(&b.geometric(&c));
                let scale = 1.0 + lhs.norm().max(rhs.norm());
                prop_assert!((&lhs - &rhs).norm() <= 1e-11 * scale);
            }

            #[test]
            fn quantization_is_an_algebra_map(
                a in arb_multivector(2),
                b in arb_multivector(2),
            ) {
                // quantize(a . b) = quantize(a) quantize(b) for the full
                // geometric product (even p: quantize is an isomorphism)
                let lhs = quantize(&a.geometric(&b)).unwrap();
                let rhs = &quantize(&a).unwrap() * &quantize(&b).unwrap();
                let scale = 1.0 + lhs.norm().max(rhs.norm());
                prop_assert!(lhs.distance(&rhs) <= 1e-12 * scale);
            }

            #[test]
            fn wedge_on_covectors_is_antisymmetric(
                u in proptest::collection::vec(-2.0f64..2.0, 3),
                v in proptest::collection::vec(-2.0f64..2.0, 3),
            ) {
                let mu = MultiVector::covector_real(&u);
                let mv = MultiVector::covector_real(&v);
                let lhs = mu.wedge(&mv);
                let rhs = mv.wedge(&mu).scale(Complex::new(-1.0, 0.0));
                prop_assert!((&lhs - &rhs).norm() <= 1e-12);
            }
        }
    }
}

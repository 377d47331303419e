//! The commutative algebra of trigonometric polynomials on `T^p` and its
//! `G`-invariant subalgebra.
//!
//! A `TrigPoly` is a finite Fourier series `f(x) = sum_k c_k e^{2 pi i k.x}`
//! with exact Gaussian-rational coefficients, so products (convolutions),
//! pullbacks along exact isometries, group averages and differentials are all
//! exact identities. Only `evaluate` drops to floating point. Differentials
//! carry the factor `2 pi` symbolically: `differential(f)` stores component
//! polynomials with coefficients `i k_j c_k`, and the `2 pi` is applied once
//! at evaluation time, so zero tests on coefficients stay exact.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::isometry::{FiniteIsometryGroup, Isometry};
use crate::scalar::{
    cmp_exact, exact_is_zero, exact_to_c64, format_exact, quarter_phase_checked, rat_int,
    Complex64, ExactScalar, Rational,
};

/// Hard cap on the max-norm of any frequency vector; products that would
/// exceed it fail with `CutoffOverflow`.
pub const HARD_FREQ_CAP: i64 = 16;
/// Default scenario cutoff K.
pub const DEFAULT_CUTOFF: i64 = 4;

pub type Frequency = Vec<i32>;

/// Finite Fourier series with exact coefficients; absent key means zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigPoly {
    dim: usize,
    coeffs: BTreeMap<Frequency, ExactScalar>,
}

impl TrigPoly {
    pub fn zero(dim: usize) -> Self {
        TrigPoly {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, value: ExactScalar) -> Self {
        let mut p = Self::zero(dim);
        if !exact_is_zero(&value) {
            p.coeffs.insert(vec![0; dim], value);
        }
        p
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, crate::scalar::exact_one())
    }

    /// The unitary exponential `e^{2 pi i k.x}`.
    pub fn exponential(dim: usize, freq: &[i32]) -> Result<Self> {
        check_freq(dim, freq)?;
        let mut p = Self::zero(dim);
        p.coeffs.insert(freq.to_vec(), crate::scalar::exact_one());
        Ok(p)
    }

    /// `cos(2 pi k.x) = (e_k + e_{-k}) / 2`.
    pub fn cosine(dim: usize, freq: &[i32]) -> Result<Self> {
        check_freq(dim, freq)?;
        let half = ExactScalar::new(crate::scalar::rat(1, 2), Rational::zero());
        let mut p = Self::zero(dim);
        let neg: Frequency = freq.iter().map(|k| -k).collect();
        p.add_term(freq.to_vec(), half.clone());
        p.add_term(neg, half);
        Ok(p)
    }

    /// `sin(2 pi k.x) = (e_k - e_{-k}) / 2i`.
    pub fn sine(dim: usize, freq: &[i32]) -> Result<Self> {
        check_freq(dim, freq)?;
        // 1/(2i) = -i/2
        let half_over_i = ExactScalar::new(Rational::zero(), crate::scalar::rat(-1, 2));
        let mut p = Self::zero(dim);
        let neg: Frequency = freq.iter().map(|k| -k).collect();
        p.add_term(freq.to_vec(), half_over_i.clone());
        p.add_term(neg, -half_over_i);
        Ok(p)
    }

    pub fn from_terms(dim: usize, terms: Vec<(Frequency, ExactScalar)>) -> Result<Self> {
        let mut p = Self::zero(dim);
        for (k, c) in terms {
            check_freq(dim, &k)?;
            p.add_term(k, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Frequency, &ExactScalar)> {
        self.coeffs.iter()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, freq: &[i32]) -> ExactScalar {
        self.coeffs
            .get(freq)
            .cloned()
            .unwrap_or_else(crate::scalar::exact_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, freq: Frequency, c: ExactScalar) {
        if exact_is_zero(&c) {
            return;
        }
        let entry = self.coeffs.entry(freq);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if exact_is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &TrigPoly) -> TrigPoly {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TrigPoly) -> TrigPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TrigPoly {
        TrigPoly {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|(k, c)| (k.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &ExactScalar) -> TrigPoly {
        if exact_is_zero(s) {
            return TrigPoly::zero(self.dim);
        }
        TrigPoly {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k.clone(), c.clone() * s.clone()))
                .collect(),
        }
    }

    /// Exact convolution of coefficient maps.
    pub fn multiply(&self, other: &TrigPoly) -> Result<TrigPoly> {
        assert_eq!(self.dim, other.dim);
        let mut out = TrigPoly::zero(self.dim);
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &other.coeffs {
                let k: Frequency = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                check_freq(self.dim, &k)?;
                out.add_term(k, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    /// `sum_k c_k e^{2 pi i k.x}` in floating point.
    pub fn evaluate(&self, x: &[f64]) -> Complex64 {
        assert_eq!(x.len(), self.dim);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.coeffs {
            let phase: f64 = k.iter().zip(x).map(|(&ki, xi)| ki as f64 * xi).sum();
            acc += exact_to_c64(c) * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase);
        }
        acc
    }

    /// `(f . h)(x) = f(O x + t)`: frequencies transported by `O^T`, each
    /// coefficient picking up the exact phase `e^{2 pi i k.t}`.
    pub fn pullback(&self, h: &Isometry) -> Result<TrigPoly> {
        if h.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: h.dim(),
            });
        }
        let o = h.linear_int();
        let t = h.translation();
        let mut out = TrigPoly::zero(self.dim);
        for (k, c) in &self.coeffs {
            // k . t
            let mut kt = Rational::zero();
            for (ki, ti) in k.iter().zip(t) {
                kt += rat_int(*ki as i64) * ti;
            }
            let phase = quarter_phase_checked(&kt)?;
            // O^T k
            let kk: Frequency = (0..self.dim)
                .map(|i| (0..self.dim).map(|j| o[j][i] as i32 * k[j]).sum())
                .collect();
            out.add_term(kk, c.clone() * phase);
        }
        Ok(out)
    }

    /// The averaging projector `f -> (1/|G|) sum_h f . h`; the result is
    /// exactly `G`-invariant.
    pub fn group_average(&self, group: &FiniteIsometryGroup) -> Result<TrigPoly> {
        let mut acc = TrigPoly::zero(self.dim);
        for h in group.elements() {
            acc = acc.add(&self.pullback(h)?);
        }
        let inv = ExactScalar::new(
            Rational::new(1.into(), (group.order() as i64).into()),
            Rational::zero(),
        );
        Ok(acc.scale(&inv))
    }

    /// `df`, with the global `2 pi` carried symbolically: component `j` has
    /// coefficients `i k_j c_k`.
    pub fn differential(&self) -> CovectorField {
        let components = (0..self.dim)
            .map(|j| {
                let mut comp = TrigPoly::zero(self.dim);
                for (k, c) in &self.coeffs {
                    let factor = ExactScalar::new(Rational::zero(), rat_int(k[j] as i64));
                    comp.add_term(k.clone(), c.clone() * factor);
                }
                comp
            })
            .collect();
        CovectorField {
            dim: self.dim,
            components,
        }
    }

    /// Exact check of `c_{-k} = conj(c_k)` for all `k`.
    pub fn is_real_valued(&self) -> bool {
        self.coeffs.iter().all(|(k, c)| {
            let neg: Frequency = k.iter().map(|x| -x).collect();
            self.coefficient(&neg) == crate::scalar::exact_conj(c)
        })
    }

    /// Exact invariance: pullback by every group element returns `self`.
    pub fn is_invariant_under(&self, group: &FiniteIsometryGroup) -> Result<bool> {
        for h in group.elements() {
            if &self.pullback(h)? != self {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn max_freq_norm(&self) -> i64 {
        self.coeffs
            .keys()
            .flat_map(|k| k.iter().map(|x| x.unsigned_abs() as i64))
            .max()
            .unwrap_or(0)
    }

    /// Canonical ordering for normalization (keys, then coefficients).
    pub(crate) fn cmp_canonical(&self, other: &TrigPoly) -> std::cmp::Ordering {
        let mut a = self.coeffs.iter();
        let mut b = other.coeffs.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return std::cmp::Ordering::Equal,
                (None, Some(_)) => return std::cmp::Ordering::Less,
                (Some(_), None) => return std::cmp::Ordering::Greater,
                (Some((ka, ca)), Some((kb, cb))) => {
                    let ord = ka.cmp(kb).then_with(|| cmp_exact(ca, cb));
                    if ord != std::cmp::Ordering::Equal {
                        return ord;
                    }
                }
            }
        }
    }

    /// Float-compiled form for grid sweeps.
    pub(crate) fn compile(&self) -> CompiledPoly {
        CompiledPoly {
            terms: self
                .coeffs
                .iter()
                .map(|(k, c)| (k.clone(), exact_to_c64(c)))
                .collect(),
        }
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})e[{}]", format_exact(c), k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))?;
        }
        Ok(())
    }
}

fn check_freq(dim: usize, freq: &[i32]) -> Result<()> {
    if freq.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: freq.len(),
        });
    }
    let max = freq.iter().map(|k| k.unsigned_abs() as i64).max().unwrap_or(0);
    if max > HARD_FREQ_CAP {
        return Err(Error::CutoffOverflow {
            got: max,
            cap: HARD_FREQ_CAP,
        });
    }
    Ok(())
}

/// Precompiled float evaluation of a trig polynomial.
#[derive(Debug, Clone)]
pub(crate) struct CompiledPoly {
    terms: Vec<(Frequency, Complex64)>,
}

impl CompiledPoly {
    pub fn evaluate(&self, x: &[f64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.terms {
            let phase: f64 = k.iter().zip(x).map(|(&ki, xi)| ki as f64 * xi).sum();
            acc += c * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase);
        }
        acc
    }
}

/// A covector field `2 pi * (components)`; the prefactor is symbolic so the
/// component polynomials stay exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CovectorField {
    dim: usize,
    components: Vec<TrigPoly>,
}

impl CovectorField {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Component polynomials without the `2 pi` prefactor.
    pub fn components(&self) -> &[TrigPoly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// Pointwise value including the `2 pi` prefactor.
    pub fn evaluate(&self, x: &[f64]) -> Vec<Complex64> {
        self.components
            .iter()
            .map(|c| c.evaluate(x) * 2.0 * std::f64::consts::PI)
            .collect()
    }
}

/// Averages of the exponential basis over `G`, deduplicated by frequency
/// orbit; spans the invariant subspace at cutoff `K` in max-norm.
pub fn invariant_basis(group: &FiniteIsometryGroup, cutoff: i64) -> Result<Vec<TrigPoly>> {
    let p = group.dim();
    if cutoff > HARD_FREQ_CAP {
        return Err(Error::CutoffOverflow {
            got: cutoff,
            cap: HARD_FREQ_CAP,
        });
    }
    let mut visited: BTreeSet<Frequency> = BTreeSet::new();
    let mut basis = Vec::new();
    for k in frequency_box(p, cutoff) {
        if visited.contains(&k) {
            continue;
        }
        // mark the whole frequency orbit
        let mut orbit = BTreeSet::new();
        orbit.insert(k.clone());
        let mut frontier = vec![k.clone()];
        while let Some(f) = frontier.pop() {
            for h in group.elements() {
                let o = h.linear_int();
                let kk: Frequency = (0..p)
                    .map(|i| (0..p).map(|j| o[j][i] as i32 * f[j]).sum())
                    .collect();
                if orbit.insert(kk.clone()) {
                    frontier.push(kk);
                }
            }
        }
        visited.extend(orbit);
        let avg = TrigPoly::exponential(p, &k)?.group_average(group)?;
        if !avg.is_zero() {
            basis.push(avg);
        }
    }
    Ok(basis)
}

/// Invariant elements at cutoff `K` with identically vanishing differential;
/// on the connected torus this is the constants.
pub fn differential_kernel(group: &FiniteIsometryGroup, cutoff: i64) -> Result<Vec<TrigPoly>> {
    Ok(invariant_basis(group, cutoff)?
        .into_iter()
        .filter(|f| f.differential().is_zero())
        .collect())
}

/// All integer vectors with `|k|_inf <= cutoff`, in lexicographic order.
pub fn frequency_box(dim: usize, cutoff: i64) -> Vec<Frequency> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        let mut next = Vec::new();
        for prefix in &out {
            for k in -(cutoff as i32)..=(cutoff as i32) {
                let mut f = prefix.clone();
                f.push(k);
                next.push(f);
            }
        }
        out = next;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{exact_int, rat};

    fn rot90() -> Isometry {
        Isometry::linear_map(vec![vec![0, -1], vec![1, 0]]).unwrap()
    }

    fn reflect_y() -> Isometry {
        Isometry::linear_map(vec![vec![1, 0], vec![0, -1]]).unwrap()
    }

    fn z4() -> FiniteIsometryGroup {
        FiniteIsometryGroup::generate(2, &[rot90()], 8).unwrap()
    }

    #[test]
    fn evaluate_constants_and_cosine() {
        let one = TrigPoly::one(2);
        let v = one.evaluate(&[0.37, 0.91]);
        assert!((v - Complex64::new(1.0, 0.0)).norm() <= 1e-15);

        let cosx = TrigPoly::cosine(1, &[1]).unwrap();
        let v = cosx.evaluate(&[0.5]);
        assert!((v - Complex64::new(-1.0, 0.0)).norm() <= 1e-13);
    }

    #[test]
    fn evaluate_matches_termwise_oracle() {
        // oracle: sum terms independently with raw cos/sin; random 10-term
        // polynomials at 10 pseudo-random points
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4242);
        for _ in 0..5 {
            let terms: Vec<(Vec<i32>, ExactScalar)> = (0..10)
                .map(|_| {
                    (
                        vec![rng.gen_range(-4..=4), rng.gen_range(-4..=4)],
                        exact_int(rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3)),
                    )
                })
                .collect();
            // keep our own copy: from_terms merges duplicate frequencies
            let poly = TrigPoly::from_terms(2, terms).unwrap();
            for _ in 0..10 {
                let x = [rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)];
                let mut oracle = Complex64::new(0.0, 0.0);
                for (k, c) in poly.terms() {
                    let ph =
                        2.0 * std::f64::consts::PI * (k[0] as f64 * x[0] + k[1] as f64 * x[1]);
                    oracle += exact_to_c64(c) * Complex64::new(ph.cos(), ph.sin());
                }
                assert!((poly.evaluate(&x) - oracle).norm() <= 1e-13);
            }
        }
    }

    #[test]
    fn real_flag_means_real_values() {
        let f = TrigPoly::cosine(2, &[1, 2]).unwrap().add(&TrigPoly::sine(2, &[3, -1]).unwrap());
        assert!(f.is_real_valued());
        for x in [[0.12, 0.7], [0.43, 0.01]] {
            assert!(f.evaluate(&x).im.abs() <= 1e-13);
        }
        let g = TrigPoly::exponential(2, &[1, 0]).unwrap();
        assert!(!g.is_real_valued());
    }

    #[test]
    fn multiply_unit_and_product_to_sum() {
        let f = TrigPoly::from_terms(1, vec![(vec![1], exact_int(2, 1)), (vec![-3], exact_int(0, 5))]).unwrap();
        assert_eq!(f.multiply(&TrigPoly::one(1)).unwrap(), f);

        // cos^2(2 pi x) = 1/2 + cos(4 pi x)/2
        let cos = TrigPoly::cosine(1, &[1]).unwrap();
        let sq = cos.multiply(&cos).unwrap();
        let expected = TrigPoly::from_terms(
            1,
            vec![
                (vec![0], ExactScalar::new(rat(1, 2), Rational::zero())),
                (vec![2], ExactScalar::new(rat(1, 4), Rational::zero())),
                (vec![-2], ExactScalar::new(rat(1, 4), Rational::zero())),
            ],
        )
        .unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn multiply_overflows_cap() {
        let f = TrigPoly::exponential(1, &[12]).unwrap();
        assert!(matches!(
            f.multiply(&f),
            Err(Error::CutoffOverflow { .. })
        ));
    }

    #[test]
    fn pullback_identity_and_rotation() {
        let f = TrigPoly::cosine(2, &[1, 0]).unwrap();
        assert_eq!(f.pullback(&Isometry::identity(2)).unwrap(), f);

        // cos(2 pi x) pulled back along (x,y) -> (-y,x) is cos(2 pi y)
        let g = f.pullback(&rot90()).unwrap();
        assert_eq!(g, TrigPoly::cosine(2, &[0, 1]).unwrap());

        // functoriality: pullback by h then h^{-1} restores f
        let f2 = TrigPoly::from_terms(
            2,
            vec![(vec![2, -1], exact_int(1, 3)), (vec![0, 1], exact_int(-2, 0))],
        )
        .unwrap();
        let round = f2.pullback(&rot90()).unwrap().pullback(&rot90().inverse()).unwrap();
        assert_eq!(round, f2);
    }

    #[test]
    fn pullback_translation_phase() {
        let t = Isometry::pure_translation(vec![rat(1, 2), rat(1, 2)]).unwrap();
        let f = TrigPoly::exponential(2, &[1, 0]).unwrap();
        let g = f.pullback(&t).unwrap();
        // e^{2 pi i (x + 1/2)} = -e^{2 pi i x}
        assert_eq!(g, f.scale(&exact_int(-1, 0)));

        // denominator 3 phases leave the Gaussian tower
        let t3 = Isometry::pure_translation(vec![rat(1, 3), rat(0, 1)]).unwrap();
        assert!(matches!(f.pullback(&t3), Err(Error::InexactPhase(_))));
    }

    #[test]
    fn group_average_examples() {
        // odd function under the reflection averages to zero
        let refl = FiniteIsometryGroup::generate(2, &[reflect_y()], 4).unwrap();
        let siny = TrigPoly::sine(2, &[0, 1]).unwrap();
        assert!(siny.group_average(&refl).unwrap().is_zero());

        // cos(2 pi x) under Z4 averages to (cos 2 pi x + cos 2 pi y)/2
        let cosx = TrigPoly::cosine(2, &[1, 0]).unwrap();
        let avg = cosx.group_average(&z4()).unwrap();
        let expected = TrigPoly::cosine(2, &[1, 0])
            .unwrap()
            .add(&TrigPoly::cosine(2, &[0, 1]).unwrap())
            .scale(&ExactScalar::new(rat(1, 2), Rational::zero()));
        assert_eq!(avg, expected);

        // projector: already invariant stays fixed, averaging is idempotent
        let again = avg.group_average(&z4()).unwrap();
        assert_eq!(again, avg);
        assert!(avg.is_invariant_under(&z4()).unwrap());
    }

    #[test]
    fn differential_examples() {
        assert!(TrigPoly::one(2).differential().is_zero());

        // d cos(2 pi x) = -2 pi sin(2 pi x) dx
        let f = TrigPoly::cosine(2, &[1, 0]).unwrap();
        let df = f.differential();
        let minus_sin = TrigPoly::sine(2, &[1, 0]).unwrap().neg();
        assert_eq!(df.components()[0], minus_sin);
        assert!(df.components()[1].is_zero());
        // pointwise including the 2 pi factor
        let x = [0.3, 0.9];
        let v = df.evaluate(&x);
        let expected = -2.0 * std::f64::consts::PI * (2.0 * std::f64::consts::PI * 0.3).sin();
        assert!((v[0] - Complex64::new(expected, 0.0)).norm() <= 1e-12);
        assert!(v[1].norm() <= 1e-15);
    }

    #[test]
    fn differential_is_equivariant() {
        // d(f.h)(x) = dh^T-transport of df at h(x): for h with linear part O,
        // (f.h)'_j(x) = sum_i (df)_i(h x) O_{ij}
        let h = rot90();
        let f = TrigPoly::from_terms(
            2,
            vec![(vec![1, 2], exact_int(1, 1)), (vec![-2, 1], exact_int(0, 3))],
        )
        .unwrap();
        let lhs = f.pullback(&h).unwrap().differential();
        let df = f.differential();
        let o = h.linear_f64();
        for x in [[0.21, 0.58], [0.9, 0.33], [0.5, 0.04]] {
            let hx = h.apply_f64(&x);
            let dfx = df.evaluate(&hx);
            let lhsx = lhs.evaluate(&x);
            for j in 0..2 {
                let mut rhs = Complex64::new(0.0, 0.0);
                for i in 0..2 {
                    rhs += dfx[i] * o[(i, j)];
                }
                assert!((lhsx[j] - rhs).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn leibniz_rule_exact() {
        let f = TrigPoly::from_terms(2, vec![(vec![1, 0], exact_int(2, -1)), (vec![1, 1], exact_int(0, 1))]).unwrap();
        let g = TrigPoly::from_terms(2, vec![(vec![0, 2], exact_int(1, 1)), (vec![-1, 0], exact_int(3, 0))]).unwrap();
        let dfg = f.multiply(&g).unwrap().differential();
        for j in 0..2 {
            let lhs = &dfg.components()[j];
            let rhs = f
                .multiply(&g.differential().components()[j])
                .unwrap()
                .add(&g.multiply(&f.differential().components()[j]).unwrap());
            assert_eq!(lhs, &rhs);
        }
    }

    #[test]
    fn invariant_differential_is_fixed_by_isotropy_rotations() {
        // at a fixed point of h, the differential of an invariant function is
        // fixed by the (co)tangent action: df(x) . O = df(x)
        let g = z4();
        let f = TrigPoly::from_terms(
            2,
            vec![(vec![1, 2], exact_int(1, 0)), (vec![2, 0], exact_int(0, 3))],
        )
        .unwrap()
        .group_average(&g)
        .unwrap();
        let df = f.differential();
        for x in [[0.0, 0.0], [0.5, 0.5]] {
            let grad = df.evaluate(&x);
            for h in g.elements() {
                let o = h.linear_f64();
                for j in 0..2 {
                    // row-vector action: (df . O)_j = sum_i df_i O_ij
                    let mut transported = Complex64::new(0.0, 0.0);
                    for i in 0..2 {
                        transported += grad[i] * o[(i, j)];
                    }
                    assert!((transported - grad[j]).norm() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn invariant_basis_trivial_group() {
        let triv = FiniteIsometryGroup::trivial(1);
        let basis = invariant_basis(&triv, 1).unwrap();
        assert_eq!(basis.len(), 3); // 1, e^{2 pi i x}, e^{-2 pi i x}
    }

    #[test]
    fn invariant_basis_reflection() {
        let refl = FiniteIsometryGroup::generate(2, &[reflect_y()], 4).unwrap();
        let basis = invariant_basis(&refl, 1).unwrap();
        let cosy_half = TrigPoly::cosine(2, &[0, 1]).unwrap();
        assert!(basis.contains(&cosy_half));
        // nothing odd in y survives
        for b in &basis {
            assert!(b.is_invariant_under(&refl).unwrap());
        }
        // frequencies (0,1) and (0,-1) collapse to a single element
        let with_y: Vec<_> = basis.iter().filter(|b| !b.coefficient(&[0, 1]).re.is_zero() || !b.coefficient(&[0, 1]).im.is_zero()).collect();
        assert_eq!(with_y.len(), 1);
    }

    #[test]
    fn invariant_basis_free_translation_parity() {
        let t = Isometry::pure_translation(vec![rat(1, 2), rat(1, 2)]).unwrap();
        let g = FiniteIsometryGroup::generate(2, &[t], 4).unwrap();
        let basis = invariant_basis(&g, 1).unwrap();
        // exactly the exponentials with k1 + k2 even survive: 5 of 9
        assert_eq!(basis.len(), 5);
        for b in &basis {
            for (k, _) in b.terms() {
                assert_eq!((k[0] + k[1]).rem_euclid(2), 0);
            }
        }
    }

    #[test]
    fn differential_kernel_is_constants() {
        for group in [
            FiniteIsometryGroup::trivial(2),
            z4(),
            FiniteIsometryGroup::generate(2, &[reflect_y()], 4).unwrap(),
        ] {
            let kernel = differential_kernel(&group, 2).unwrap();
            assert_eq!(kernel.len(), 1);
            assert_eq!(kernel[0], TrigPoly::one(2));
        }
        // cos 2 pi x has nonzero differential, so it is excluded
        let cosx = TrigPoly::cosine(2, &[1, 0]).unwrap();
        assert!(!cosx.differential().is_zero());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly(dim: usize) -> impl Strategy<Value = TrigPoly> {
            let term = (
                proptest::collection::vec(-3i32..=3, dim),
                -4i64..=4,
                -4i64..=4,
                1i64..=3,
            );
            proptest::collection::vec(term, 1..5).prop_map(move |terms| {
                TrigPoly::from_terms(
                    dim,
                    terms
                        .into_iter()
                        .map(|(k, re, im, den)| {
                            (k, ExactScalar::new(rat(re, den), rat(im, den)))
                        })
                        .collect(),
                )
                .unwrap()
            })
        }

        proptest! {
            #[test]
            fn product_evaluates_pointwise(f in arb_poly(2), g in arb_poly(2), x in proptest::collection::vec(0.0f64..1.0, 2)) {
                let fg = f.multiply(&g).unwrap();
                let lhs = fg.evaluate(&x);
                let rhs = f.evaluate(&x) * g.evaluate(&x);
                prop_assert!((lhs - rhs).norm() <= 1e-12);
            }

            #[test]
            fn averaging_is_projector(f in arb_poly(2)) {
                let g = z4();
                let avg = f.group_average(&g).unwrap();
                prop_assert_eq!(avg.group_average(&g).unwrap(), avg.clone());
                prop_assert!(avg.is_invariant_under(&g).unwrap());
            }

            #[test]
            fn pullback_respects_composition(f in arb_poly(2)) {
                let h = rot90();
                let k = reflect_y();
                let lhs = f.pullback(&h.compose(&k)).unwrap();
                let rhs = f.pullback(&h).unwrap().pullback(&k).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}

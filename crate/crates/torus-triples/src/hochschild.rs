//! Hochschild chains over the trig-polynomial algebra, the boundary
//! operator, the point representation `pi_D`, its skewsymmetrization
//! `Gamma'`, and orientation-cycle constructors.
//!
//! A degree-q chain is a sum of (q+1)-tuples `a0 (x) a1 (x) ... (x) aq` of
//! exact trig polynomials, with one global symbolic factor `(2 pi)^e` (the
//! normalization constants of orientation cycles carry negative powers of
//! `2 pi` that cancel against the differentials in `pi_D`). At a point x the
//! flat-frame identity `[D, f](x) = c(df(x))` turns the chain into the
//! Clifford element
//!
//! ```text
//! pi_D(c)(x) = sum_alpha a0(x) c(da1(x)) ... c(daq(x)),
//! ```
//!
//! and `Gamma'(x)` is its skewsymmetrization over the slot order. Since the
//! wedge product is already antisymmetric, `Gamma'` is computed directly in
//! the exterior algebra as `sum_alpha a0(x) da1(x) ^ ... ^ daq(x)`; the
//! matrix-side average over permutations is kept as an independent test
//! route.

use itertools::Itertools;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

use crate::clifford::{
    chirality, clifford_of_covector_complex, spinor_dim, CliffordElement, MultiVector,
};
use crate::error::{Error, Result};
use crate::funcalg::{CompiledPoly, Frequency, TrigPoly};
use crate::isometry::FiniteIsometryGroup;
use crate::scalar::{rat_int, Complex64, ExactScalar, Rational};

/// Formal sum of (degree+1)-tuples of trig polynomials, scaled by the
/// symbolic factor `(2 pi)^two_pi_exponent`.
#[derive(Debug, Clone, PartialEq)]
pub struct HochschildChain {
    dim: usize,
    degree: usize,
    two_pi_exponent: i32,
    terms: Vec<Vec<TrigPoly>>,
}

impl HochschildChain {
    pub fn new(
        dim: usize,
        degree: usize,
        two_pi_exponent: i32,
        terms: Vec<Vec<TrigPoly>>,
    ) -> Result<Self> {
        for t in &terms {
            if t.len() != degree + 1 {
                return Err(Error::DimensionMismatch {
                    expected: degree + 1,
                    got: t.len(),
                });
            }
            for f in t {
                if f.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: f.dim(),
                    });
                }
            }
        }
        Ok(HochschildChain {
            dim,
            degree,
            two_pi_exponent,
            terms,
        }
        .normalized())
    }

    pub fn zero(dim: usize, degree: usize) -> Self {
        HochschildChain {
            dim,
            degree,
            two_pi_exponent: 0,
            terms: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn two_pi_exponent(&self) -> i32 {
        self.two_pi_exponent
    }

    pub fn terms(&self) -> &[Vec<TrigPoly>] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Structural normal form: drop tuples containing a zero entry, merge
    /// tuples with identical slots 1..q by adding their heads.
    fn normalized(mut self) -> Self {
        self.terms.retain(|t| t.iter().all(|f| !f.is_zero()));
        self.terms.sort_by(|a, b| {
            for (fa, fb) in a[1..].iter().zip(&b[1..]) {
                let ord = fa.cmp_canonical(fb);
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
            a[0].cmp_canonical(&b[0])
        });
        let mut merged: Vec<Vec<TrigPoly>> = Vec::new();
        for term in self.terms.drain(..) {
            if let Some(last) = merged.last_mut() {
                if last[1..] == term[1..] {
                    last[0] = last[0].add(&term[0]);
                    continue;
                }
            }
            merged.push(term);
        }
        merged.retain(|t| !t[0].is_zero());
        self.terms = merged;
        self
    }

    fn scale_heads(&self, s: &ExactScalar) -> Self {
        HochschildChain {
            dim: self.dim,
            degree: self.degree,
            two_pi_exponent: self.two_pi_exponent,
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let mut t = t.clone();
                    t[0] = t[0].scale(s);
                    t
                })
                .collect(),
        }
        .normalized()
    }

    /// Exact invariance of every tensor slot under the whole group.
    pub fn entries_invariant(&self, group: &FiniteIsometryGroup) -> Result<bool> {
        for term in &self.terms {
            for f in term {
                if !f.is_invariant_under(group)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Canonical multilinear expansion over the monomial basis of the tail
    /// slots: the map from tails `(e_{k1}, ..., e_{kq})` to accumulated head
    /// polynomials. A chain is zero iff every accumulated head is zero.
    fn canonical_tails(&self) -> BTreeMap<Vec<Frequency>, TrigPoly> {
        let mut out: BTreeMap<Vec<Frequency>, TrigPoly> = BTreeMap::new();
        for term in &self.terms {
            // cartesian product over monomials of slots 1..q
            let slot_terms: Vec<Vec<(Frequency, ExactScalar)>> = term[1..]
                .iter()
                .map(|f| f.terms().map(|(k, c)| (k.clone(), c.clone())).collect())
                .collect();
            let mut stack: Vec<(usize, Vec<Frequency>, ExactScalar)> =
                vec![(0, Vec::new(), crate::scalar::exact_one())];
            while let Some((slot, tail, coeff)) = stack.pop() {
                if slot == slot_terms.len() {
                    let head = term[0].scale(&coeff);
                    out.entry(tail)
                        .and_modify(|h| *h = h.add(&head))
                        .or_insert(head);
                    continue;
                }
                for (k, c) in &slot_terms[slot] {
                    let mut tail = tail.clone();
                    tail.push(k.clone());
                    stack.push((slot + 1, tail, coeff.clone() * c.clone()));
                }
            }
        }
        out
    }

    /// Exact zero test in `A^{(x)(q+1)}` via the canonical expansion.
    pub fn is_exactly_zero(&self) -> bool {
        self.canonical_tails().values().all(|h| h.is_zero())
    }
}

/// Hochschild boundary
/// `b(a0 (x) ... (x) aq) = sum_i (-1)^i a0 (x) .. (x) a_i a_{i+1} (x) .. (x) aq
///  + (-1)^q aq a0 (x) a1 (x) ... (x) a_{q-1}`.
pub fn boundary(chain: &HochschildChain) -> Result<HochschildChain> {
    assert!(chain.degree() >= 1, "boundary needs degree >= 1");
    let q = chain.degree();
    let mut terms: Vec<Vec<TrigPoly>> = Vec::new();
    for t in chain.terms() {
        for i in 0..q {
            let mut out = Vec::with_capacity(q);
            out.extend_from_slice(&t[..i]);
            out.push(t[i].multiply(&t[i + 1])?);
            out.extend_from_slice(&t[i + 2..]);
            if i % 2 == 1 {
                out[0] = out[0].neg();
            }
            terms.push(out);
        }
        let mut wrap = Vec::with_capacity(q);
        wrap.push(t[q].multiply(&t[0])?);
        wrap.extend_from_slice(&t[1..q]);
        if q % 2 == 1 {
            wrap[0] = wrap[0].neg();
        }
        terms.push(wrap);
    }
    HochschildChain::new(chain.dim(), q - 1, chain.two_pi_exponent(), terms)
}

/// `b c = 0`, tested exactly via the canonical monomial expansion.
pub fn is_cycle(chain: &HochschildChain) -> Result<bool> {
    Ok(boundary(chain)?.is_exactly_zero())
}

// ---------------------------------------------------------------------------
// Pointwise realization
// ---------------------------------------------------------------------------

struct PreparedTerm {
    head: CompiledPoly,
    /// One differential per tensor slot, compiled componentwise (without the
    /// 2 pi prefactor).
    diffs: Vec<Vec<CompiledPoly>>,
}

/// Closed-form pointwise evaluator for a chain: `pi_D` values, wedge-form
/// skewsymmetrization, and a fast path for the `|Gamma'|` scalar field.
pub struct SymbolField {
    dim: usize,
    degree: usize,
    /// `(2 pi)^(degree + chain exponent)`: one `2 pi` per differential plus
    /// the chain's symbolic prefactor.
    scale: f64,
    terms: Vec<PreparedTerm>,
    /// Exact volume-coefficient polynomial when degree == dim:
    /// `sum_alpha a0 det[ d a^j components ]`, compiled.
    volume_poly: Option<CompiledPoly>,
}

fn perm_sign(perm: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

impl SymbolField {
    pub fn new(chain: &HochschildChain) -> Result<Self> {
        let dim = chain.dim();
        let degree = chain.degree();
        let mut terms = Vec::with_capacity(chain.term_count());
        let mut exact_diffs: Vec<Vec<Vec<TrigPoly>>> = Vec::new();
        for t in chain.terms() {
            let diffs_exact: Vec<Vec<TrigPoly>> = t[1..]
                .iter()
                .map(|f| f.differential().components().to_vec())
                .collect();
            terms.push(PreparedTerm {
                head: t[0].compile(),
                diffs: diffs_exact
                    .iter()
                    .map(|comps| comps.iter().map(|c| c.compile()).collect())
                    .collect(),
            });
            exact_diffs.push(diffs_exact);
        }

        // exact determinant polynomial for the top-degree coefficient field
        let volume_poly = if degree == dim && dim >= 1 {
            match volume_coefficient_poly(chain, &exact_diffs) {
                Ok(p) => Some(p.compile()),
                // overflowing the frequency cap just disables the fast path
                Err(Error::CutoffOverflow { .. }) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };

        Ok(SymbolField {
            dim,
            degree,
            scale: (2.0 * std::f64::consts::PI).powi(degree as i32 + chain.two_pi_exponent()),
            terms,
            volume_poly,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `pi_D(c)(x) = sum_alpha a0(x) c(da1(x)) ... c(daq(x))`.
    pub fn represent(&self, x: &[f64]) -> Result<CliffordElement> {
        let mut acc = CliffordElement::zero(self.dim);
        for term in &self.terms {
            let mut m = CliffordElement::identity(self.dim);
            for diff in &term.diffs {
                let comps: Vec<Complex64> = diff.iter().map(|c| c.evaluate(x)).collect();
                m = &m * &clifford_of_covector_complex(&comps)?;
            }
            acc = &acc + &m.scale(term.head.evaluate(x));
        }
        Ok(acc.scale(Complex64::new(self.scale, 0.0)))
    }

    /// Wedge-form skewsymmetrization: a pure degree-q multivector.
    pub fn skewsymmetrize(&self, x: &[f64]) -> MultiVector {
        let mut acc = MultiVector::zero(self.dim);
        for term in &self.terms {
            let mut w = MultiVector::scalar(self.dim, Complex64::new(1.0, 0.0));
            for diff in &term.diffs {
                let comps: Vec<Complex64> = diff.iter().map(|c| c.evaluate(x)).collect();
                w = w.wedge(&MultiVector::covector(&comps));
            }
            acc = &acc + &w.scale(term.head.evaluate(x));
        }
        acc.scale(Complex64::new(self.scale, 0.0))
    }

    /// `|Gamma'(x)|` in the blade-coefficient norm; uses the exact volume
    /// polynomial when available.
    pub fn gamma_prime_norm(&self, x: &[f64]) -> f64 {
        match &self.volume_poly {
            Some(p) => p.evaluate(x).norm() * self.scale.abs(),
            None => self.skewsymmetrize(x).norm(),
        }
    }

    /// Matrix-side skewsymmetrization `(1/q!) sum_sigma sgn(sigma) ...`, the
    /// independent route used to cross-check the wedge form.
    pub fn skewsymmetrize_matrix(&self, x: &[f64]) -> Result<CliffordElement> {
        let q = self.degree;
        let mut acc = CliffordElement::zero(self.dim);
        for term in &self.terms {
            let values: Vec<Vec<Complex64>> = term
                .diffs
                .iter()
                .map(|diff| diff.iter().map(|c| c.evaluate(x)).collect())
                .collect();
            let head = term.head.evaluate(x);
            for perm in (0..q).permutations(q) {
                let sgn = perm_sign(&perm) as f64;
                let mut m = CliffordElement::identity(self.dim);
                for &j in &perm {
                    m = &m * &clifford_of_covector_complex(&values[j])?;
                }
                acc = &acc + &m.scale(head * sgn);
            }
        }
        let factorial: f64 = (1..=q.max(1)).product::<usize>() as f64;
        Ok(acc.scale(Complex64::new(self.scale / factorial, 0.0)))
    }
}

/// `sum_alpha a0 det[(da^j)_i]`, the coefficient of the volume blade in the
/// wedge form, as an exact polynomial (without the `(2 pi)^...` scale).
fn volume_coefficient_poly(
    chain: &HochschildChain,
    diffs: &[Vec<Vec<TrigPoly>>],
) -> Result<TrigPoly> {
    let p = chain.dim();
    let mut acc = TrigPoly::zero(p);
    for (term, diff) in chain.terms().iter().zip(diffs) {
        let mut det = TrigPoly::zero(p);
        for perm in (0..p).permutations(p) {
            let mut prod = TrigPoly::one(p);
            for (j, &i) in perm.iter().enumerate() {
                prod = prod.multiply(&diff[j][i])?;
            }
            if perm_sign(&perm) < 0 {
                prod = prod.neg();
            }
            det = det.add(&prod);
        }
        acc = acc.add(&term[0].multiply(&det)?);
    }
    Ok(acc)
}

/// `pi_D(c)(x)` as a one-off evaluation.
pub fn represent_at(chain: &HochschildChain, x: &[f64]) -> Result<CliffordElement> {
    SymbolField::new(chain)?.represent(x)
}

/// `Gamma'(x)` in the exterior algebra as a one-off evaluation.
pub fn skewsymmetrize_at(chain: &HochschildChain, x: &[f64]) -> Result<MultiVector> {
    Ok(SymbolField::new(chain)?.skewsymmetrize(x))
}

/// Least-squares coefficient of `target` in `m` plus the residual norm:
/// `m = z * target + r`. Used to solve and verify cycle normalizations.
pub fn chirality_coefficient(m: &CliffordElement) -> Result<(Complex64, f64)> {
    let target = chirality(m.dim())?;
    let n = spinor_dim(m.dim()) as f64;
    let z = (&target.adjoint() * m).trace() / Complex64::new(n, 0.0);
    let residual = m.distance(&target.scale(z));
    Ok((z, residual))
}

fn solve_normalization(chain: &HochschildChain) -> Result<HochschildChain> {
    let p = chain.dim();
    let origin = vec![0.0; p];
    let field = SymbolField::new(chain)?;
    let m = field.represent(&origin)?;
    let (z, _residual) = chirality_coefficient(&m)?;
    // z is a Gaussian integer by construction; snap and invert exactly
    let zr = z.re.round();
    let zi = z.im.round();
    if (z - Complex64::new(zr, zi)).norm() > 1e-9 || (zr == 0.0 && zi == 0.0) {
        return Err(Error::Numerical(format!(
            "cycle normalization {z} is not a nonzero Gaussian integer"
        )));
    }
    let zg = crate::scalar::exact_int(zr as i64, zi as i64);
    let norm_sq = crate::scalar::exact_norm_sqr(&zg);
    let q = crate::scalar::exact_conj(&zg)
        * ExactScalar::new(Rational::one() / norm_sq, Rational::zero());
    Ok(chain.scale_heads(&q))
}

/// The orientation cycle on `T^p` built from the unitary exponentials
/// `u_j = e^{2 pi i x_j}`:
///
/// ```text
/// c = lambda sum_sigma sgn(sigma) (u_1 ... u_p)^{-1} (x) u_{sigma(1)} (x) ... (x) u_{sigma(p)}
/// ```
///
/// with `lambda` solved so that `pi_D(c) = Gamma` (even p) or `Id` (odd p)
/// at every point. The scalar part of `lambda` is exact; its `(2 pi)^{-p}`
/// rides in the chain's symbolic exponent.
pub fn standard_torus_cycle(p: usize) -> Result<HochschildChain> {
    if !(1..=crate::clifford::MAX_DIM).contains(&p) {
        return Err(Error::UnsupportedDimension(p));
    }
    let head_base = TrigPoly::exponential(p, &vec![-1i32; p])?;
    let mut terms = Vec::new();
    for perm in (0..p).permutations(p) {
        let sgn = perm_sign(&perm);
        let head = head_base.scale(&crate::scalar::exact_int(sgn, 0));
        let mut t = vec![head];
        for &j in &perm {
            let mut freq = vec![0i32; p];
            freq[j] = 1;
            t.push(TrigPoly::exponential(p, &freq)?);
        }
        terms.push(t);
    }
    let chain = HochschildChain::new(p, p, -(p as i32), terms)?;
    solve_normalization(&chain)
}

/// Invert a unimodular integer matrix exactly.
fn invert_unimodular(u: &[Vec<num_bigint::BigInt>]) -> Vec<Vec<num_bigint::BigInt>> {
    use num_traits::{One, Zero};
    let n = u.len();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        Rational::from_integer(u[i][j].clone())
                    } else if j - n == i {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !a[i][col].is_zero()).expect("unimodular");
        a.swap(col, pivot);
        let inv = a[col][col].clone();
        for j in 0..2 * n {
            a[col][j] = &a[col][j] / &inv;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..2 * n {
                    let sub = &f * &a[col][j];
                    a[i][j] -= sub;
                }
            }
        }
    }
    (0..n)
        .map(|i| {
            (n..2 * n)
                .map(|j| {
                    assert!(a[i][j].is_integer());
                    a[i][j].to_integer()
                })
                .collect()
        })
        .collect()
}

/// Basis of the sublattice `{ k in Z^p : k . t_h in Z for all h }` of
/// translation-invariant frequencies.
fn invariant_frequency_lattice(group: &FiniteIsometryGroup) -> Result<Vec<Vec<i64>>> {
    use num_bigint::BigInt;
    use num_traits::Zero;
    let p = group.dim();
    // common denominator of all translation entries
    let mut d: num_bigint::BigInt = 1.into();
    for h in group.elements() {
        for t in h.translation() {
            d = num_integer::lcm(d, t.denom().clone());
        }
    }
    let d_i64 = d.to_i64().ok_or(Error::SublatticeRankDeficient)?;
    // residues k mod d satisfying all congruences, plus d * e_i, generate L
    let mut generators: Vec<Vec<BigInt>> = Vec::new();
    for k in crate::funcalg::frequency_box(p, (d_i64 - 1).max(0)) {
        if k.iter().any(|&x| x < 0) {
            continue;
        }
        let ok = group.elements().iter().all(|h| {
            let mut kt = Rational::zero();
            for (ki, ti) in k.iter().zip(h.translation()) {
                kt += rat_int(*ki as i64) * ti;
            }
            kt.is_integer()
        });
        if ok {
            generators.push(k.iter().map(|&x| BigInt::from(x)).collect());
        }
    }
    for i in 0..p {
        let mut e = vec![BigInt::zero(); p];
        e[i] = d.clone();
        generators.push(e);
    }
    // columns of M generate L; with U M V = D, a basis is U^{-1} D's columns
    let m: Vec<Vec<BigInt>> = (0..p)
        .map(|i| generators.iter().map(|g| g[i].clone()).collect())
        .collect();
    let (u, diag, _v) = crate::lattice::integer_diagonalize(&m);
    let u_inv = invert_unimodular(&u);
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for j in 0..p.min(diag[0].len()) {
        if diag[j][j].is_zero() {
            continue;
        }
        basis.push(
            (0..p)
                .map(|i| (&u_inv[i][j] * &diag[j][j]).to_i64().unwrap())
                .collect(),
        );
    }
    if basis.len() != p {
        return Err(Error::SublatticeRankDeficient);
    }
    Ok(basis)
}

/// Orientation cycle for a free translation group: the standard construction
/// over exponential generators `w_j = e^{2 pi i b_j . x}` of the invariant
/// frequency sublattice, rescaled (by the sublattice determinant among other
/// factors) so that `pi_D = Gamma` pointwise. Entries are exactly invariant.
pub fn quotient_torus_cycle(group: &FiniteIsometryGroup) -> Result<HochschildChain> {
    let p = group.dim();
    for (i, h) in group.elements().iter().enumerate() {
        if h.is_identity() {
            continue;
        }
        if !crate::isometry::fixed_locus(h).is_empty() {
            return Err(Error::ActionNotFree(i));
        }
    }
    if group.elements().iter().any(|h| !h.is_pure_translation()) {
        return Err(Error::NotTranslationGroup);
    }
    let basis = invariant_frequency_lattice(group)?;
    let head_freq: Vec<i32> = (0..p)
        .map(|i| -basis.iter().map(|b| b[i] as i32).sum::<i32>())
        .collect();
    let head_base = TrigPoly::exponential(p, &head_freq)?;
    let mut terms = Vec::new();
    for perm in (0..p).permutations(p) {
        let sgn = perm_sign(&perm);
        let head = head_base.scale(&crate::scalar::exact_int(sgn, 0));
        let mut t = vec![head];
        for &j in &perm {
            let freq: Vec<i32> = basis[j].iter().map(|&x| x as i32).collect();
            t.push(TrigPoly::exponential(p, &freq)?);
        }
        terms.push(t);
    }
    let chain = HochschildChain::new(p, p, -(p as i32), terms)?;
    let chain = solve_normalization(&chain)?;
    // entries must be exactly invariant by construction
    debug_assert!(chain.entries_invariant(group).unwrap_or(false));
    Ok(chain)
}

/// Slot-wise group averaging; the output has exactly invariant entries but
/// need not be a cycle.
pub fn average_chain(
    chain: &HochschildChain,
    group: &FiniteIsometryGroup,
) -> Result<HochschildChain> {
    let terms = chain
        .terms()
        .iter()
        .map(|t| {
            t.iter()
                .map(|f| f.group_average(group))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    HochschildChain::new(chain.dim(), chain.degree(), chain.two_pi_exponent(), terms)
}

/// First-order condition witness: `[[D, a], b](x) = [c(da(x)), b(x) Id]`,
/// identically zero because scalars commute with matrices. Returns the
/// maximum commutator norm over the samples (exactly 0.0).
pub fn first_order_check(a: &TrigPoly, b: &TrigPoly, samples: &[Vec<f64>]) -> f64 {
    let p = a.dim();
    let mut max = 0.0f64;
    for x in samples {
        let da: Vec<Complex64> = a.differential().evaluate(x);
        let m = clifford_of_covector_complex(&da).expect("dimension ok");
        let scalar = CliffordElement::identity(p).scale(b.evaluate(x));
        let comm = m.commutator(&scalar);
        max = max.max(comm.norm());
    }
    max
}

/// Closedness proxy: the average over the `grid^p` lattice of the top-degree
/// coefficient of `c(da_1(x)) ... c(da_p(x))`. Computed exactly: the lattice
/// average of a trig polynomial is the sum of its coefficients at
/// frequencies divisible by the grid, which for an exact p-form integrand is
/// an exact zero.
pub fn closedness_integral(entries: &[TrigPoly], grid: usize) -> Result<Complex64> {
    let p = entries.len();
    assert!(p >= 1, "need at least one entry");
    for f in entries {
        if f.dim() != p {
            return Err(Error::DimensionMismatch {
                expected: p,
                got: f.dim(),
            });
        }
    }
    // top coefficient of the product of grade-1 Clifford factors equals the
    // wedge coefficient det[(da_j)_i]
    let diffs: Vec<Vec<TrigPoly>> = entries
        .iter()
        .map(|f| f.differential().components().to_vec())
        .collect();
    let mut det = TrigPoly::zero(p);
    for perm in (0..p).permutations(p) {
        let mut prod = TrigPoly::one(p);
        for (j, &i) in perm.iter().enumerate() {
            prod = prod.multiply(&diffs[j][i])?;
        }
        if perm_sign(&perm) < 0 {
            prod = prod.neg();
        }
        det = det.add(&prod);
    }
    let mut acc = crate::scalar::exact_zero();
    for (k, c) in det.terms() {
        if k.iter().all(|&ki| ki as i64 % grid as i64 == 0) {
            acc += c.clone();
        }
    }
    let scale = (2.0 * std::f64::consts::PI).powi(p as i32);
    Ok(crate::scalar::exact_to_c64(&acc) * scale)
}

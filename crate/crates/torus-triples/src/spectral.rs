//! Flat-torus Dirac spectrum, invariant-spinor counting and the Weyl-law
//! dimension probe.
//!
//! On `T^p` the Dirac eigenvalues are `+-2 pi |k|` over the frequency
//! lattice, each `k` carrying the full spinor multiplicity `2^floor(p/2)`.
//! A group element `(O, t)` maps the frequency-`k` subspace to the
//! frequency-`O k` one with the phase `e^{-2 pi i (O k) . t}` and the spinor
//! factor `S(h)`, so the dimension of the invariant subspace inside the
//! `|k| = r` eigenspace is the averaging-projector trace
//!
//! ```text
//! (1/|G|) sum_h sum_{k in shell, O_h k = k} e^{-2 pi i k . t_h} tr S(h),
//! ```
//!
//! a nonnegative integer per shell. Counting accumulates both signs of the
//! eigenvalue together (the dimension proxy only needs `|D|`).

use std::collections::BTreeMap;


use crate::clifford::spinor_dim;
use crate::error::{Error, Result};
use crate::isometry::{FiniteIsometryGroup, LiftTable, SpinorLift};
use crate::scalar::{rational_to_f64, Complex64};

/// Default cap on the number of enumerated frequencies.
pub const DEFAULT_SHELL_CAP: usize = 4_000_000;

/// One frequency `k` with its eigenvalue data.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumShell {
    pub freq: Vec<i64>,
    /// `2 pi |k|`.
    pub magnitude: f64,
    /// Total spinor multiplicity `2^floor(p/2)` carried by this frequency.
    pub multiplicity: usize,
    /// Split of the multiplicity across the +- eigenvalues (kernel for k=0).
    pub sign_split: (usize, usize),
}

/// All `k` with `2 pi |k| <= lambda`, sorted by `|k|^2` then lexicographic.
pub fn enumerate_spectrum_with_cap(
    p: usize,
    lambda: f64,
    cap: usize,
) -> Result<Vec<SpectrumShell>> {
    if !(1..=crate::clifford::MAX_DIM).contains(&p) {
        return Err(Error::UnsupportedDimension(p));
    }
    let radius = lambda / (2.0 * std::f64::consts::PI);
    let r2 = radius * radius;
    let kmax = radius.floor() as i64;
    let mult = spinor_dim(p);
    let mut shells = Vec::new();
    let mut stack: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..p {
        let mut next = Vec::new();
        for prefix in &stack {
            for k in -kmax..=kmax {
                let mut f = prefix.clone();
                f.push(k);
                next.push(f);
            }
        }
        stack = next;
        if stack.len() > cap {
            return Err(Error::SpectrumTooLarge {
                shells: stack.len(),
                cap,
            });
        }
    }
    for k in stack {
        let n2: i64 = k.iter().map(|x| x * x).sum();
        if (n2 as f64) > r2 + 1e-9 {
            continue;
        }
        let magnitude = 2.0 * std::f64::consts::PI * (n2 as f64).sqrt();
        let sign_split = if n2 == 0 {
            (0, 0) // kernel
        } else if p.is_multiple_of(2) {
            (mult / 2, mult / 2)
        } else if p == 1 {
            if k[0] > 0 {
                (1, 0)
            } else {
                (0, 1)
            }
        } else {
            // p = 3: c(k)/|k| is traceless on the 2-dim spinor space
            (1, 1)
        };
        shells.push(SpectrumShell {
            freq: k,
            magnitude,
            multiplicity: mult,
            sign_split,
        });
    }
    if shells.len() > cap {
        return Err(Error::SpectrumTooLarge {
            shells: shells.len(),
            cap,
        });
    }
    shells.sort_by(|a, b| {
        let na: i64 = a.freq.iter().map(|x| x * x).sum();
        let nb: i64 = b.freq.iter().map(|x| x * x).sum();
        na.cmp(&nb).then_with(|| a.freq.cmp(&b.freq))
    });
    Ok(shells)
}

pub fn enumerate_spectrum(p: usize, lambda: f64) -> Result<Vec<SpectrumShell>> {
    enumerate_spectrum_with_cap(p, lambda, DEFAULT_SHELL_CAP)
}

/// Eigenvalue counting at one cutoff.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CountingReport {
    pub cutoff: f64,
    /// `N(Lambda)`: all Dirac eigenvalues with `|lambda| <= Lambda`.
    pub total: usize,
    /// `N_G(Lambda)`: the invariant ones.
    pub invariant: usize,
    pub ratio: f64,
}

/// Character-formula invariant counting. For a double-cover lift the average
/// runs over the full extension, so the opposite signs cancel and the count
/// is the honest zero.
pub fn invariant_count(
    group: &FiniteIsometryGroup,
    lift: &LiftTable,
    lambda: f64,
) -> Result<CountingReport> {
    let p = group.dim();
    let shells = enumerate_spectrum(p, lambda)?;
    let total: usize = shells.iter().map(|s| s.multiplicity).sum();

    // (matrix trace, weight divisor) pairs per acting element
    let (traces, divisor): (Vec<Complex64>, usize) = match &lift.lift {
        SpinorLift::Representation { matrices, .. } => {
            (matrices.iter().map(|m| m.trace()).collect(), group.order())
        }
        SpinorLift::DoubleCover { section } => {
            let mut t: Vec<Complex64> = section.iter().map(|m| m.trace()).collect();
            let negs: Vec<Complex64> = t.iter().map(|z| -z).collect();
            t.extend(negs);
            (t, 2 * group.order())
        }
    };
    let element_of = |idx: usize| &group.elements()[idx % group.order()];

    // group shells by |k|^2: per-eigenspace traces must be near-integers
    let mut by_norm: BTreeMap<i64, Vec<&SpectrumShell>> = BTreeMap::new();
    for s in &shells {
        let n2: i64 = s.freq.iter().map(|x| x * x).sum();
        by_norm.entry(n2).or_default().push(s);
    }

    let mut invariant = 0usize;
    for (_n2, shell) in by_norm {
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, tr) in traces.iter().enumerate() {
            if tr.norm() == 0.0 {
                continue;
            }
            let h = element_of(idx);
            let o = h.linear_int();
            let t: Vec<f64> = h.translation().iter().map(rational_to_f64).collect();
            for s in shell.iter() {
                let fixed = (0..p).all(|i| {
                    (0..p)
                        .map(|j| o[i][j] * s.freq[j])
                        .sum::<i64>()
                        == s.freq[i]
                });
                if !fixed {
                    continue;
                }
                let kt: f64 = s.freq.iter().zip(&t).map(|(&k, ti)| k as f64 * ti).sum();
                let phase = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * kt);
                acc += phase * tr;
            }
        }
        acc /= divisor as f64;
        let rounded = acc.re.round();
        if acc.im.abs() > 1e-9 || (acc.re - rounded).abs() > 1e-9 || rounded < -1e-9 {
            return Err(Error::Numerical(format!(
                "projector trace {acc} is not a nonnegative integer"
            )));
        }
        invariant += rounded as usize;
    }

    Ok(CountingReport {
        cutoff: lambda,
        total,
        invariant,
        ratio: invariant as f64 / total as f64,
    })
}

/// Least-squares slope of `log N_G(Lambda)` against `log Lambda`: the
/// spectral-dimension probe.
pub fn weyl_fit(reports: &[CountingReport]) -> Result<f64> {
    if reports.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "need at least 4 cutoffs, got {}",
            reports.len()
        )));
    }
    let min = reports.iter().map(|r| r.cutoff).fold(f64::INFINITY, f64::min);
    let max = reports.iter().map(|r| r.cutoff).fold(0.0, f64::max);
    if max < 4.0 * min {
        return Err(Error::InsufficientData(format!(
            "cutoffs must span a factor of 4 (got {min} .. {max})"
        )));
    }
    if reports.iter().any(|r| r.invariant == 0) {
        return Err(Error::InsufficientData(
            "zero invariant count; no growth to fit".into(),
        ));
    }
    let xs: Vec<f64> = reports.iter().map(|r| r.cutoff.ln()).collect();
    let ys: Vec<f64> = reports.iter().map(|r| (r.invariant as f64).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::{lift_table, Isometry};
    use crate::scalar::rat;

    const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

    #[test]
    fn circle_spectrum_small_cutoff() {
        let shells = enumerate_spectrum(1, TWO_PI + 0.1).unwrap();
        assert_eq!(shells.len(), 3); // k = -1, 0, 1
        let eigs: Vec<f64> = shells
            .iter()
            .map(|s| s.magnitude * if s.freq[0] >= 0 { 1.0 } else { -1.0 })
            .collect();
        assert!(eigs.contains(&0.0));
        assert!((shells.last().unwrap().magnitude - TWO_PI).abs() <= 1e-12);
        assert!(shells.iter().all(|s| s.multiplicity == 1));
    }

    #[test]
    fn t2_spectrum_counts() {
        let shells = enumerate_spectrum(2, TWO_PI * 2f64.sqrt() + 0.1).unwrap();
        assert_eq!(shells.len(), 9); // |k|^2 <= 2
        assert!(shells.iter().all(|s| s.multiplicity == 2));
        // total matches the lattice count times spinor dimension
        let total: usize = shells.iter().map(|s| s.multiplicity).sum();
        assert_eq!(total, 18);
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            enumerate_spectrum_with_cap(2, 1000.0, 100),
            Err(Error::SpectrumTooLarge { .. })
        ));
    }

    #[test]
    fn trivial_group_counts_everything() {
        let g = FiniteIsometryGroup::trivial(2);
        let lt = lift_table(&g).unwrap();
        let report = invariant_count(&g, &lt, 20.0).unwrap();
        assert_eq!(report.total, report.invariant);
        assert!((report.ratio - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn free_translation_counts_even_frequencies() {
        let t = Isometry::pure_translation(vec![rat(1, 2), rat(1, 2)]).unwrap();
        let g = FiniteIsometryGroup::generate(2, &[t], 4).unwrap();
        let lt = lift_table(&g).unwrap();
        let report = invariant_count(&g, &lt, 20.0).unwrap();
        // oracle: direct enumeration of k1 + k2 even frequencies
        let shells = enumerate_spectrum(2, 20.0).unwrap();
        let expected: usize = shells
            .iter()
            .filter(|s| (s.freq[0] + s.freq[1]).rem_euclid(2) == 0)
            .map(|s| s.multiplicity)
            .sum();
        assert_eq!(report.invariant, expected);
    }

    #[test]
    fn reflection_ratio_is_half() {
        let refl = Isometry::linear_map(vec![vec![1, 0], vec![0, -1]]).unwrap();
        let g = FiniteIsometryGroup::generate(2, &[refl], 4).unwrap();
        let lt = lift_table(&g).unwrap();
        let report = invariant_count(&g, &lt, 50.0).unwrap();
        assert!(report.ratio >= 0.45 && report.ratio <= 0.55, "ratio {}", report.ratio);
    }

    #[test]
    fn z4_ratio_approaches_quarter() {
        let rot = Isometry::linear_map(vec![vec![0, -1], vec![1, 0]]).unwrap();
        let g = FiniteIsometryGroup::generate(2, &[rot], 8).unwrap();
        let lt = lift_table(&g).unwrap();
        let report = invariant_count(&g, &lt, 100.0).unwrap();
        assert!((report.ratio - 0.25).abs() <= 0.025, "ratio {}", report.ratio);
    }

    #[test]
    fn klein_four_double_cover_counts_zero() {
        let rx = Isometry::linear_map(vec![vec![-1, 0], vec![0, 1]]).unwrap();
        let ry = Isometry::linear_map(vec![vec![1, 0], vec![0, -1]]).unwrap();
        let g = FiniteIsometryGroup::generate(2, &[rx, ry], 8).unwrap();
        let lt = lift_table(&g).unwrap();
        assert!(matches!(lt.lift, SpinorLift::DoubleCover { .. }));
        let report = invariant_count(&g, &lt, 30.0).unwrap();
        assert_eq!(report.invariant, 0);
    }

    #[test]
    fn counts_are_monotone() {
        let refl = Isometry::linear_map(vec![vec![1, 0], vec![0, -1]]).unwrap();
        let g = FiniteIsometryGroup::generate(2, &[refl], 4).unwrap();
        let lt = lift_table(&g).unwrap();
        let mut prev = 0;
        for lam in [10.0, 20.0, 30.0, 40.0] {
            let r = invariant_count(&g, &lt, lam).unwrap();
            assert!(r.invariant >= prev);
            assert!(r.invariant <= r.total);
            prev = r.invariant;
        }
    }

    #[test]
    fn weyl_exponents() {
        // trivial group on T^2: slope about 2
        let g = FiniteIsometryGroup::trivial(2);
        let lt = lift_table(&g).unwrap();
        let reports: Vec<CountingReport> = [25.0, 50.0, 75.0, 100.0]
            .iter()
            .map(|&l| invariant_count(&g, &lt, l).unwrap())
            .collect();
        let slope = weyl_fit(&reports).unwrap();
        assert!((slope - 2.0).abs() <= 0.1, "slope {slope}");

        // circle: slope about 1
        let g1 = FiniteIsometryGroup::trivial(1);
        let lt1 = lift_table(&g1).unwrap();
        let reports: Vec<CountingReport> = [25.0, 50.0, 75.0, 100.0]
            .iter()
            .map(|&l| invariant_count(&g1, &lt1, l).unwrap())
            .collect();
        let slope = weyl_fit(&reports).unwrap();
        assert!((slope - 1.0).abs() <= 0.1, "slope {slope}");

        // Z4 quotient keeps dimension 2
        let rot = Isometry::linear_map(vec![vec![0, -1], vec![1, 0]]).unwrap();
        let gz = FiniteIsometryGroup::generate(2, &[rot], 8).unwrap();
        let ltz = lift_table(&gz).unwrap();
        let reports: Vec<CountingReport> = [25.0, 50.0, 75.0, 100.0]
            .iter()
            .map(|&l| invariant_count(&gz, &ltz, l).unwrap())
            .collect();
        let slope = weyl_fit(&reports).unwrap();
        assert!((slope - 2.0).abs() <= 0.15, "slope {slope}");
    }

    #[test]
    fn weyl_fit_preconditions() {
        let g = FiniteIsometryGroup::trivial(1);
        let lt = lift_table(&g).unwrap();
        let r = invariant_count(&g, &lt, 25.0).unwrap();
        assert!(matches!(
            weyl_fit(&[r, r, r]),
            Err(Error::InsufficientData(_))
        ));
        let reports: Vec<CountingReport> = [25.0, 30.0, 35.0, 40.0]
            .iter()
            .map(|&l| invariant_count(&g, &lt, l).unwrap())
            .collect();
        assert!(matches!(weyl_fit(&reports), Err(Error::InsufficientData(_))));
    }
}

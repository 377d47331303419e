//! The dimension probe: Dirac eigenvalue counting on the torus, invariant
//! counts through the character formula, and the Weyl-law exponent fit.
//!
//! ```bash
//! cargo run -p torus-triples --example spectral_counting
//! ```

use torus_triples::isometry::{lift_table, FiniteIsometryGroup, Isometry};
use torus_triples::scalar::rat;
use torus_triples::spectral::{enumerate_spectrum, invariant_count, weyl_fit, CountingReport};

fn report(label: &str, group: &FiniteIsometryGroup) -> torus_triples::Result<()> {
    let table = lift_table(group)?;
    let reports: Vec<CountingReport> = [25.0, 50.0, 75.0, 100.0]
        .iter()
        .map(|&l| invariant_count(group, &table, l))
        .collect::<torus_triples::Result<_>>()?;
    let exponent = weyl_fit(&reports)?;
    println!("== {label} (|G| = {}) ==", group.order());
    for r in &reports {
        println!(
            "  Lambda = {:6.1}: N = {:6}, N_G = {:6}, ratio = {:.4}",
            r.cutoff, r.total, r.invariant, r.ratio
        );
    }
    println!(
        "  fitted growth exponent: {exponent:.3} (1/|G| = {:.3})\n",
        1.0 / group.order() as f64
    );
    Ok(())
}

fn main() -> torus_triples::Result<()> {
    // raw spectrum near the bottom of the circle
    let shells = enumerate_spectrum(1, 2.0 * std::f64::consts::PI + 0.1)?;
    println!("circle spectrum below 2 pi + eps:");
    for s in &shells {
        println!("  k = {:?}, |eigenvalue| = {:.4}", s.freq, s.magnitude);
    }
    println!();

    report("T^2, trivial group", &FiniteIsometryGroup::trivial(2))?;

    let rot90 = Isometry::linear_map(vec![vec![0, -1], vec![1, 0]])?;
    report("T^2 / Z4 rotation", &FiniteIsometryGroup::generate(2, &[rot90], 16)?)?;

    let refl = Isometry::linear_map(vec![vec![1, 0], vec![0, -1]])?;
    report("T^2 / Z2 reflection", &FiniteIsometryGroup::generate(2, &[refl], 8)?)?;

    let t = Isometry::pure_translation(vec![rat(1, 2), rat(1, 2)])?;
    report("T^2 / free translation", &FiniteIsometryGroup::generate(2, &[t], 4)?)?;
    Ok(())
}

//! The central phenomenon: for a non-free action, Gamma' of every chain with
//! invariant entries dies on the singular locus, so no invariant Hochschild
//! cycle can represent the grading operator.
//!
//! Demonstrated on T^2/Z4 (isolated fixed points) and the reflection
//! orbifold T^2/Z2 (fixed circles), with a ray sweep showing the decay into
//! the locus.
//!
//! ```bash
//! cargo run -p torus-triples --example orbifold_obstruction
//! ```

use torus_triples::funcalg::{invariant_basis, TrigPoly};
use torus_triples::hochschild::{
    average_chain, standard_torus_cycle, HochschildChain, SymbolField,
};
use torus_triples::isometry::{singular_locus, FiniteIsometryGroup, Isometry};
use torus_triples::scalar::{format_rational, rational_to_f64};
use torus_triples::verifier::{ray_sweep, RayParams};

fn show_group(label: &str, group: &FiniteIsometryGroup) -> torus_triples::Result<()> {
    println!("== {label} (|G| = {}) ==", group.order());
    let sigma = singular_locus(group);
    println!(
        "singular locus: {} component(s), dimensions {:?}",
        sigma.components.len(),
        sigma.component_dimensions()
    );

    // averaged standard cycle
    let averaged = average_chain(&standard_torus_cycle(group.dim())?, group)?;
    println!(
        "averaged standard cycle: {} term(s) after normalization",
        averaged.term_count()
    );

    // a probe chain with invariant entries built from the invariant basis
    let basis: Vec<TrigPoly> = invariant_basis(group, 2)?
        .into_iter()
        .filter(|f| !f.differential().is_zero())
        .collect();
    let probe = HochschildChain::new(
        group.dim(),
        group.dim(),
        0,
        vec![{
            let mut t = vec![TrigPoly::one(group.dim())];
            t.extend(basis.iter().take(group.dim()).cloned());
            t
        }],
    )?;

    for (name, chain) in [("averaged", &averaged), ("probe", &probe)] {
        if chain.is_zero() {
            println!("  {name}: collapsed to the zero chain (fully symmetric slots)");
            continue;
        }
        let field = SymbolField::new(chain)?;
        let mut sigma_max = 0.0f64;
        for comp in &sigma.components {
            for pt in comp.sample_points(8) {
                let x: Vec<f64> = pt.iter().map(rational_to_f64).collect();
                sigma_max = sigma_max.max(field.gamma_prime_norm(&x));
            }
        }
        let mut grid_max = 0.0f64;
        for i in 0..32 {
            for j in 0..32 {
                let x = [i as f64 / 32.0, j as f64 / 32.0];
                grid_max = grid_max.max(field.gamma_prime_norm(&x[..group.dim()]));
            }
        }
        println!(
            "  {name}: max |Gamma'| on the singular locus = {sigma_max:.2e}, on the grid = {grid_max:.3}"
        );
    }

    // ray sweep into the first singular component
    if let Some(comp) = sigma.components.first() {
        let base: Vec<String> = comp.base.iter().map(format_rational).collect();
        println!("ray toward ({}):", base.join(", "));
        let table = ray_sweep(&probe, comp, RayParams { count: 8, step: 0.25, start: 0.25 })?;
        for (r, v) in table {
            println!("  r = {r:.6}   |Gamma'| = {v:.3e}");
        }
    }
    println!();
    Ok(())
}

fn main() -> torus_triples::Result<()> {
    let rot90 = Isometry::linear_map(vec![vec![0, -1], vec![1, 0]])?;
    show_group("T^2 / Z4 rotation", &FiniteIsometryGroup::generate(2, &[rot90], 16)?)?;

    let refl = Isometry::linear_map(vec![vec![1, 0], vec![0, -1]])?;
    show_group("T^2 / Z2 reflection", &FiniteIsometryGroup::generate(2, &[refl], 8)?)?;
    Ok(())
}

//! Finite isometry groups of flat tori: closure generation, orthogonal
//! normal forms, reflection factorizations, fixed loci and Pin lifts.
//!
//! ```bash
//! cargo run -p torus-triples --example isometry_groups
//! ```

use torus_triples::isometry::{
    fixed_locus, lift_table, normal_form, pin_lift, reflection_factors, singular_locus,
    FiniteIsometryGroup, Isometry, LiftGauge, SpinorLift,
};
use torus_triples::scalar::{format_rational, rat};

fn main() -> torus_triples::Result<()> {
    let rot90 = Isometry::linear_map(vec![vec![0, -1], vec![1, 0]])?;
    let z4 = FiniteIsometryGroup::generate(2, std::slice::from_ref(&rot90), 16)?;
    println!("quarter-turn closure: |G| = {}", z4.order());

    let nf = normal_form(&rot90.linear_f64())?;
    println!(
        "normal form of R(pi/2): angles {:?}, -1s: {}, +1s: {}",
        nf.rotation_angles, nf.minus_count, nf.plus_count
    );
    let factors = reflection_factors(&rot90.linear_f64())?;
    println!("Cartan-Dieudonne: R(pi/2) = product of {} reflections", factors.len());

    // fixed loci
    for (label, h) in [
        ("rotation", rot90.clone()),
        ("reflection", Isometry::linear_map(vec![vec![1, 0], vec![0, -1]])?),
        ("half translation", Isometry::pure_translation(vec![rat(1, 2), rat(1, 2)])?),
    ] {
        let locus = fixed_locus(&h);
        println!(
            "fixed locus of {label}: {} component(s), dimensions {:?}",
            locus.components.len(),
            locus.component_dimensions()
        );
        for c in &locus.components {
            let base: Vec<String> = c.base.iter().map(format_rational).collect();
            println!("  base ({})", base.join(", "));
        }
    }

    // singular locus of the full group
    let sigma = singular_locus(&z4);
    println!("singular locus of T^2/Z4: {} isolated points", sigma.components.len());

    // spinor lifts: the quarter turn admits no sign gauge but a phase gauge
    let lift = pin_lift(&rot90)?;
    println!("pin lift of R(pi/2): parity {}", lift.parity);
    let table = lift_table(&z4)?;
    match table.lift {
        SpinorLift::Representation { gauge, .. } => {
            let label = match gauge {
                LiftGauge::Trivial => "raw section multiplies correctly",
                LiftGauge::SignGauged => "signs fixed the cocycle",
                LiftGauge::PhaseGauged => "roots of unity fixed the cocycle",
            };
            println!("spinor lift of Z4: true representation ({label})");
        }
        SpinorLift::DoubleCover { .. } => {
            println!("spinor lift of Z4: only the double cover acts");
        }
    }

    // reflections in both axes force the honest double cover
    let rx = Isometry::linear_map(vec![vec![-1, 0], vec![0, 1]])?;
    let ry = Isometry::linear_map(vec![vec![1, 0], vec![0, -1]])?;
    let klein = FiniteIsometryGroup::generate(2, &[rx, ry], 8)?;
    match lift_table(&klein)?.lift {
        SpinorLift::DoubleCover { .. } => {
            println!("spinor lift of the Klein four-group: double cover (no scalar gauge exists)")
        }
        _ => println!("unexpected gauge for the Klein four-group"),
    }
    Ok(())
}

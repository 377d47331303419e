//! The invariant function algebra: exact products, pullbacks, the averaging
//! projector, invariant bases and the connectivity kernel.
//!
//! ```bash
//! cargo run -p torus-triples --example invariant_functions
//! ```

use torus_triples::funcalg::{differential_kernel, invariant_basis, TrigPoly};
use torus_triples::isometry::{FiniteIsometryGroup, Isometry};

fn main() -> torus_triples::Result<()> {
    let rot90 = Isometry::linear_map(vec![vec![0, -1], vec![1, 0]])?;
    let z4 = FiniteIsometryGroup::generate(2, std::slice::from_ref(&rot90), 16)?;

    let cosx = TrigPoly::cosine(2, &[1, 0])?;
    println!("f       = {cosx}");
    println!("f . h   = {}", cosx.pullback(&rot90)?);
    let avg = cosx.group_average(&z4)?;
    println!("average = {avg}");
    println!("average invariant under every element: {}", avg.is_invariant_under(&z4)?);
    println!("averaging is idempotent: {}", avg.group_average(&z4)? == avg);

    // exact product: cos^2 = 1/2 + cos(2.)/2
    let sq = cosx.multiply(&cosx)?;
    println!("\nf^2     = {sq}");

    // differentials carry 2 pi symbolically; evaluation applies it
    let df = avg.differential();
    let x = [0.2, 0.7];
    let grad = df.evaluate(&x);
    println!("\nd(average) at {x:?} = [{:.4}, {:.4}]", grad[0].re, grad[1].re);

    // invariant basis at small cutoff
    let basis = invariant_basis(&z4, 2)?;
    println!("\ninvariant basis of T^2/Z4 at cutoff 2: {} elements", basis.len());
    for b in basis.iter().take(4) {
        println!("  {b}");
    }

    // connectivity: only constants have vanishing differential
    let kernel = differential_kernel(&z4, 4)?;
    println!(
        "\nkernel of the differential at cutoff 4: dimension {} (the constants)",
        kernel.len()
    );
    Ok(())
}

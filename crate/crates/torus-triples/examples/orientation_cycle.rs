//! The standard orientation cycle on `T^p`: an exact Hochschild cycle whose
//! point representation is the grading operator and whose skewsymmetrization
//! is a unimodular constant times the volume form.
//!
//! ```bash
//! cargo run -p torus-triples --example orientation_cycle
//! ```

use torus_triples::clifford::chirality;
use torus_triples::hochschild::{boundary, is_cycle, standard_torus_cycle, SymbolField};
use torus_triples::scalar::format_exact;

fn main() -> torus_triples::Result<()> {
    for p in 1..=3usize {
        let cycle = standard_torus_cycle(p)?;
        println!(
            "T^{p}: cycle with {} terms, symbolic prefactor (2 pi)^{}",
            cycle.term_count(),
            cycle.two_pi_exponent()
        );
        println!(
            "  head coefficient lambda (without the 2 pi power): {}",
            format_exact(&cycle.terms()[0][0].coefficient(&vec![-1i32; p]))
        );
        println!("  is_cycle: {}", is_cycle(&cycle)?);
        println!(
            "  boundary exactly zero: {}",
            boundary(&cycle)?.is_exactly_zero()
        );

        let field = SymbolField::new(&cycle)?;
        let gamma = chirality(p)?;
        let mut max_dev = 0.0f64;
        for i in 0..50 {
            let x: Vec<f64> = (0..p).map(|j| ((i * (j + 3)) as f64 * 0.137).fract()).collect();
            max_dev = max_dev.max(field.represent(&x)?.distance(&gamma));
        }
        println!("  max |pi_D(c) - Gamma| over 50 points: {max_dev:.2e}");

        let skew = field.skewsymmetrize([0.31; 4][..p].to_vec().as_slice());
        let top = skew.coeff((1 << p) - 1);
        println!(
            "  skewsymmetrization = ({:.3} + {:.3}i) * volume form, |const| = {:.12}",
            top.re,
            top.im,
            top.norm()
        );
    }
    Ok(())
}

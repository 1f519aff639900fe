//! The pointwise bound `N_ψ(w) ≤ Re w / c0`, translation invariance of the
//! averaged counting function in `Im w`, and its submean property.
//!
//! `cargo run --release --example inequalities`

use dhl::verify::{verify_bayart_bound, verify_submean, verify_translation_invariance};
use dhl::{Complex64, Frequency, GDSeries, GeneratorSystem, Symbol};

fn main() -> dhl::Result<()> {
    let g = GeneratorSystem::new(2, &[])?;
    let c = |re: f64| Complex64::new(re, 0.0);
    let psi = Symbol::new(
        1,
        GDSeries::from_terms(&g, [
            (Frequency::one(), c(1.0)),
            (Frequency::generator(0), c(-0.5)),
            (Frequency::generator(1), c(-0.5)),
        ])?,
    )?;

    let ws: Vec<Complex64> = (1..=8).map(|k| Complex64::new(0.1 * k as f64, 0.7 * k as f64 - 3.0)).collect();
    let b = verify_bayart_bound(&psi, &ws)?;
    println!("bound: max slack {:+.3e} over {} points, passed = {}", b.max_slack, b.checks.len(), b.passed);

    let t = verify_translation_invariance(&psi, Complex64::new(0.2, 3.0), 2000, 17)?;
    println!(
        "E N(0.2 + 3i) = {:.5}, E N(0.2) = {:.5}, combined se {:.5}, passed = {}",
        t.lhs, t.rhs, t.std_error, t.passed
    );

    let s = verify_submean(&psi, Complex64::new(0.25, 0.0), 0.1, 200, 64, 5)?;
    println!(
        "submean on D(0.25, 0.1): E N(w) = {:.5}, disk mean = {:.5}, ratio = {:.3}",
        s.numerator, s.disk_mean, s.ratio
    );
    Ok(())
}

//! Both sides of the Littlewood–Paley identity, exact in the character
//! expectation and by Monte Carlo, and the `1/T` decay of its error.
//!
//! `cargo run --release --example littlewood_paley`

use dhl::verify::{littlewood_paley_decay, verify_littlewood_paley};
use dhl::{Complex64, Frequency, GDSeries, GeneratorSystem};

fn main() -> dhl::Result<()> {
    let g = GeneratorSystem::new(2, &[std::f64::consts::E])?;
    let c = |re: f64| Complex64::new(re, 0.0);
    let f = GDSeries::from_terms(&g, [
        (Frequency::one(), c(1.0)),
        (Frequency::generator(0), c(1.0)),
        (Frequency::generator(1), c(1.0)),
        (Frequency::generator(2), Complex64::new(0.5, -0.5)),
    ])?;
    for samples in [0, 1000] {
        let r = verify_littlewood_paley(&f, 1000.0, samples, 1)?;
        println!(
            "mc_samples = {samples:4}: ‖f‖² = {:.8}, rhs = {:.8} ± {:.1e}, rel_err = {:.2e}, passed = {}",
            r.lhs, r.rhs, r.std_error, r.rel_err, r.passed
        );
    }
    // The exact expectation is exact at every T, so the decay is measured on
    // a fixed character sample.
    let d = littlewood_paley_decay(&f, 100.0, 1000, 1)?;
    println!(
        "error envelope {:.3e} on [T, 2T], {:.3e} on [2T, 4T], ratio {:.3}",
        d.error_t, d.error_2t, d.ratio
    );
    Ok(())
}

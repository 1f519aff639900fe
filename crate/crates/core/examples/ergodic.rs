//! Time averages of `|f_χ(it)|²` approach `‖f‖²`, with an error that halves
//! when `T` doubles.
//!
//! `cargo run --release --example ergodic`

use dhl::polytorus::ergodic_decay;
use dhl::{ergodic_time_average, sample_character, Complex64, Frequency, GDSeries, GeneratorSystem};

fn main() -> dhl::Result<()> {
    let g = GeneratorSystem::new(3, &[])?;
    let c = |re: f64| Complex64::new(re, 0.0);
    let f = GDSeries::from_terms(&g, [
        (Frequency::one(), c(1.0)),
        (Frequency::generator(0), c(1.0)),
        (Frequency::generator(2), Complex64::new(0.0, 1.0)),
    ])?;
    let chi = sample_character(&g, 3, 0);
    println!("‖f‖² = {}", f.norm_sq());
    for t in [10.0, 100.0, 1000.0] {
        println!("T = {t:6}: average = {:.6}", ergodic_time_average(&f, &chi, t, 1 << 16)?);
    }
    let d = ergodic_decay(&f, &chi, 100.0, 1 << 14)?;
    println!("error envelope {:.3e} → {:.3e}, ratio {:.3}", d.error_t, d.error_2t, d.ratio);
    Ok(())
}

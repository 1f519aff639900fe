//! Building, multiplying and evaluating Dirichlet series over a mixed
//! generator system.
//!
//! `cargo run --release --example series_algebra`

use dhl::{Complex64, Frequency, GDSeries, GeneratorSystem};

fn main() -> dhl::Result<()> {
    // Ordinary primes 2, 3 and one Beurling generator q1 = π.
    let g = GeneratorSystem::new(2, &[std::f64::consts::PI])?;
    let one = Complex64::new(1.0, 0.0);

    let f = GDSeries::from_terms(&g, [
        (Frequency::one(), one),
        (Frequency::generator(0), Complex64::new(0.5, 0.0)),
        (Frequency::generator(2), Complex64::new(0.0, 0.25)),
    ])?;
    let h = GDSeries::from_terms(&g, [(Frequency::one(), one), (Frequency::from_pairs([(0, 1), (1, 1)]), -one)])?;

    let prod = f.multiply(&h)?;
    println!("f·h has {} terms:", prod.len());
    for (freq, a) in prod.sorted_terms() {
        println!("  {:>8}  {a:.4}", prod.frequency_label(freq));
    }

    let s = Complex64::new(0.7, 2.0);
    println!("f(s)·h(s)   = {:.12}", f.evaluate(s) * h.evaluate(s));
    println!("(f·h)(s)    = {:.12}", prod.evaluate(s));
    println!("(f·h)'(s)   = {:.12}", prod.derivative().evaluate(s));
    println!("‖f·h‖²      = {:.6}", prod.norm_sq());
    println!("‖f·h‖_ℓ¹    = {:.6}", prod.l1_norm());
    Ok(())
}

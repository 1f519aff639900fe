//! `f ∘ ψ` as a new Dirichlet series, with its truncation bound, checked
//! against direct evaluation.
//!
//! `cargo run --release --example composition`

use dhl::{compose, Complex64, ComposeOptions, Frequency, GDSeries, GeneratorSystem, Symbol};

fn main() -> dhl::Result<()> {
    let g = GeneratorSystem::new(2, &[])?;
    let c = |re: f64| Complex64::new(re, 0.0);
    let f = GDSeries::from_terms(&g, [(Frequency::generator(0), c(1.0)), (Frequency::generator(1), c(0.5))])?;
    let psi = Symbol::new(
        1,
        GDSeries::from_terms(&g, [(Frequency::one(), c(1.0)), (Frequency::generator(0), c(-0.5))])?,
    )?;

    for lambda_max in [1e3, 1e6, 1e12] {
        let comp = compose(&f, &psi, ComposeOptions { lambda_max, k_max: 40 })?;
        let s = Complex64::new(0.5, 1.0);
        let err = (comp.series.evaluate(s) - f.evaluate(psi.evaluate(s))).norm();
        println!(
            "λ_max = {lambda_max:8.0e}: {:4} terms, ‖f∘ψ‖² = {:.8}, tail ≤ {:.2e}, |error at s| = {err:.2e}",
            comp.series.len(),
            comp.series.norm_sq(),
            comp.tail_bound
        );
    }
    println!("‖f‖² = {}", f.norm_sq());
    Ok(())
}

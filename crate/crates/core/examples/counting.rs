//! Preimages of `w` in the right half-plane and the counting function
//! `N_ψ(w) = Σ Re s`, plus the windowed variant.
//!
//! `cargo run --release --example counting`

use dhl::{counting_function, counting_function_truncated, Complex64, Frequency, GDSeries, GeneratorSystem, Symbol};

fn main() -> dhl::Result<()> {
    let g = GeneratorSystem::new(1, &[])?;
    let c = |re: f64| Complex64::new(re, 0.0);
    // 1 + s - 2^{-s}
    let psi = Symbol::new(
        1,
        GDSeries::from_terms(&g, [(Frequency::one(), c(1.0)), (Frequency::generator(0), c(-1.0))])?,
    )?;

    for w in [Complex64::new(0.1, 0.0), Complex64::new(0.3, 1.5), Complex64::new(0.8, -4.0)] {
        let r = counting_function(&psi, w)?;
        println!("w = {w:.2}: N = {:.10}, bound Re w = {:.2}", r.value, w.re);
        for p in &r.preimages {
            println!("    root {:.10} (multiplicity {})", p.root, p.multiplicity);
        }
    }

    let w = Complex64::new(0.3, 0.0);
    for t in [1.0, 10.0, 100.0] {
        let r = counting_function_truncated(&psi, w, t, 0.0)?;
        println!("N(w, T = {t:>5}) = {:.10}", r.value);
    }
    Ok(())
}

//! Monte Carlo averages over random characters: vertical limits of a symbol
//! and the Haar mean of their counting functions.
//!
//! `cargo run --release --example polytorus_average`

use dhl::{
    bohr_lift, counting_function, mc_average_counting, sample_character, Complex64, Frequency, GDSeries,
    GeneratorSystem, Symbol,
};

fn main() -> dhl::Result<()> {
    let g = GeneratorSystem::new(2, &[std::f64::consts::PI])?;
    let c = |re: f64| Complex64::new(re, 0.0);
    let phi = GDSeries::from_terms(&g, [
        (Frequency::one(), c(1.0)),
        (Frequency::generator(0), c(-0.6)),
        (Frequency::generator(2), c(-0.4)),
    ])?;
    let psi = Symbol::new(1, phi)?;
    println!("Bohr lift of φ: {:?}", bohr_lift(psi.phi()).monomials);

    let w = Complex64::new(0.2, 0.5);
    for index in 0..3 {
        let chi = sample_character(&g, 42, index);
        let n = counting_function(&psi.vertical_limit(&chi)?, w)?.value;
        println!("character #{index}: N = {n:.6}");
    }
    for samples in [100, 1000, 4000] {
        let e = mc_average_counting(&psi, w, samples, 42, None)?;
        println!("{samples:5} samples: E N = {:.6} ± {:.6} (max {:.4})", e.mean, e.std_error, e.max);
    }
    Ok(())
}

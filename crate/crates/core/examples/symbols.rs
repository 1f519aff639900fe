//! Symbol construction and class validation through the boundary infimum of
//! `Re φ`.
//!
//! `cargo run --release --example symbols`

use dhl::{validate_symbol, Complex64, Frequency, GDSeries, GeneratorSystem, Grid, Symbol};

fn main() -> dhl::Result<()> {
    let g = GeneratorSystem::new(2, &[])?;
    let c = |re: f64| Complex64::new(re, 0.0);
    let phi = |terms: &[(Frequency, f64)]| GDSeries::from_terms(&g, terms.iter().map(|(f, a)| (f.clone(), c(*a))));

    let cases = [
        ("s + 1", 1, phi(&[(Frequency::one(), 1.0)])?),
        ("1 + s - 2^-s", 1, phi(&[(Frequency::one(), 1.0), (Frequency::generator(0), -1.0)])?),
        ("s + 2^-s", 1, phi(&[(Frequency::generator(0), 1.0)])?),
        ("2s + 1/2 - 2^-s", 2, phi(&[(Frequency::one(), 0.5), (Frequency::generator(0), -1.0)])?),
    ];
    for (name, c0, phi) in cases {
        let psi = Symbol::new(c0, phi)?;
        let v = validate_symbol(&psi, Grid::default_for(psi.phi()))?;
        println!(
            "{name:16} inf Re φ ≈ {:+.6} (t = {:+.3})  {:?}",
            v.range.inf_re_phi, v.range.argmin_t, v.verdict
        );
    }
    Ok(())
}

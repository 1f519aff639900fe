//! Both sides of the Stanton formula for a few symbols.
//!
//! `cargo run --release --example stanton`

use dhl::verify::verify_stanton;
use dhl::{Complex64, Frequency, GDSeries, GeneratorSystem, Symbol};

fn main() -> dhl::Result<()> {
    let g = GeneratorSystem::new(2, &[])?;
    let one = Complex64::new(1.0, 0.0);
    let two = GDSeries::monomial(&g, Frequency::generator(0), one)?;
    let f = GDSeries::constant(&g, one).add(&two)?;

    let cases = [
        ("2s", two.clone(), Symbol::new(2, GDSeries::zero(&g))?, 0),
        ("s+1", two.clone(), Symbol::new(1, GDSeries::constant(&g, one))?, 0),
        ("s+2^-s", f, Symbol::new(1, two.clone())?, 400),
    ];
    for (name, f, psi, samples) in cases {
        let start = std::time::Instant::now();
        let r = verify_stanton(&f, &psi, 10.0, samples, 7, 65536.0)?;
        println!(
            "ψ = {name:7} lhs = {:.6}  rhs = {:.6} ± {:.6}  passed = {}  ({:.2?})",
            r.lhs,
            r.rhs,
            r.std_error,
            r.passed,
            start.elapsed()
        );
    }
    Ok(())
}

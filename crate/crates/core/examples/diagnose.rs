//! Compactness diagnostics for a symbol: pointwise and averaged criterion
//! curves, the restricted-range verdict and the decay of `‖C_ψ K_σ‖²`.
//!
//! `cargo run --release --example diagnose`

use dhl::diagnostics::{compactness_curve, kernel_decay_experiment, pointwise_curve, restricted_range_verdict};
use dhl::{Complex64, Frequency, GDSeries, GeneratorSystem, Symbol};

fn main() -> dhl::Result<()> {
    let g = GeneratorSystem::new(2, &[])?;
    let c = |re: f64| Complex64::new(re, 0.0);
    let sigmas = [0.5, 0.2, 0.1, 0.05, 0.02];
    let cases = [
        ("s + 1", GDSeries::constant(&g, c(1.0))),
        ("1 + s - 2^-s", GDSeries::from_terms(&g, [(Frequency::one(), c(1.0)), (Frequency::generator(0), c(-1.0))])?),
    ];
    for (name, phi) in cases {
        let psi = Symbol::new(1, phi)?;
        let verdict = restricted_range_verdict(&psi)?;
        println!("{name}: {:?} (inf Re φ ≈ {:.2e})", verdict.verdict, verdict.range.inf_re_phi);
        let point = pointwise_curve(&psi, &sigmas)?;
        let avg = compactness_curve(&psi, &sigmas, 500, 3)?;
        for i in 0..sigmas.len() {
            println!(
                "  σ = {:<5} N(σ)/σ = {:.4}   E N(σ)/σ = {:.4} ± {:.4}",
                sigmas[i], point.values[i], avg.values[i], avg.std_errors[i]
            );
        }
        for e in kernel_decay_experiment(&psi, &[0.5, 0.25, 0.1], 0, f64::INFINITY)? {
            println!("  σ = {:<5} k_cut = {:3}  ‖C_ψ K_σ‖² = {:.6}", e.sigma, e.k_cut, e.norm_sq);
        }
    }
    Ok(())
}

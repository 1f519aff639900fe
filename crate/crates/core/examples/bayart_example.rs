//! `ψ(s) = 1 + s - 2^{-s}`: the pointwise criterion stays near `1/(1 + ln 2)`
//! while the average over the rotations `1 + s - z·2^{-s}` tends to zero.
//!
//! `cargo run --release --example bayart_example`

use dhl::diagnostics::example_bayart;

fn main() -> dhl::Result<()> {
    let r = example_bayart(&[0.1, 0.05, 0.02, 0.01], 1024)?;
    println!("h(1) = {:.2e}", r.h_at_one);
    for i in 0..r.epsilons.len() {
        println!(
            "ε = {:<5} averaged = {:.4}   pointwise = {:.4}",
            r.epsilons[i], r.averaged[i], r.pointwise[i]
        );
    }
    for a in &r.arcs {
        println!("h(z) < 2ε only for |z - 1| ≤ {:.4} (ε = {})", a.max_distance, a.epsilon);
    }
    Ok(())
}

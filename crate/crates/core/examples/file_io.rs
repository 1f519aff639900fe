//! Round trip through the JSON file formats used by the command line tool.
//!
//! `cargo run --release --example file_io`

use dhl::io::{read_json, write_json, SeriesFile, SymbolFile};
use dhl::{GeneratorSystem, Symbol};

fn main() -> dhl::Result<()> {
    let dir = std::env::temp_dir().join("dhl-example");
    std::fs::create_dir_all(&dir).map_err(|e| dhl::Error::Config(e.to_string()))?;

    let text = r#"{"c0": 1, "phi": {"terms": [
        {"exponents": {}, "re": 1.0},
        {"exponents": {"2": 1}, "re": -0.5},
        {"exponents": {"q1": 1}, "re": 0.0, "im": 0.25}
    ]}}"#;
    let file: SymbolFile = serde_json::from_str(text).map_err(|e| dhl::Error::Config(e.to_string()))?;
    let g = GeneratorSystem::new(file.phi.required_primes()?, &[std::f64::consts::PI])?;
    let psi: Symbol = file.to_symbol(&g)?;
    println!("ψ(1) = {:.6}", psi.evaluate(dhl::Complex64::new(1.0, 0.0)));

    let path = dir.join("phi.json");
    write_json(&path, &SeriesFile::from_series(psi.phi()))?;
    let back = read_json::<SeriesFile>(&path)?.to_series(&g)?;
    println!("wrote {} and read back {} terms, equal = {}", path.display(), back.len(), &back == psi.phi());
    Ok(())
}

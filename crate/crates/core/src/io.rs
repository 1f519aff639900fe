//! JSON file formats for series and symbols, and complex-number parsing.
//!
//! Series: `{"terms": [{"exponents": {"2": 1, "q1": 2}, "re": 1.0, "im": 0.0}]}`
//! where keys are ordinary primes in decimal or `q<k>` for the `k`-th
//! Beurling prime. Symbol: `{"c0": 1, "phi": <series>}`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{is_prime, GeneratorSystem};
use crate::series::{Frequency, GDSeries};
use crate::symbol::Symbol;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    #[serde(default)]
    pub exponents: BTreeMap<String, u32>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesFile {
    pub terms: Vec<TermFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolFile {
    pub c0: u32,
    pub phi: SeriesFile,
}

impl SeriesFile {
    pub fn from_series(f: &GDSeries) -> Self {
        let system = f.system();
        Self {
            terms: f
                .sorted_terms()
                .into_iter()
                .map(|(freq, c)| TermFile {
                    exponents: freq.exponents().iter().map(|&(i, e)| (system.key(i), e)).collect(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }

    pub fn to_series(&self, system: &Arc<GeneratorSystem>) -> Result<GDSeries> {
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(n, t)| {
                if !t.re.is_finite() || !t.im.is_finite() {
                    return Err(Error::Config(format!("terms[{n}]: coefficient is not finite")));
                }
                let pairs = t
                    .exponents
                    .iter()
                    .map(|(k, &e)| {
                        system
                            .parse_key(k)
                            .map(|i| (i, e))
                            .map_err(|err| match err {
                                Error::Structural(m) => Error::Structural(format!("terms[{n}].exponents: {m}")),
                                other => other,
                            })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((Frequency::from_pairs(pairs), Complex64::new(t.re, t.im)))
            })
            .collect::<Result<Vec<_>>>()?;
        GDSeries::from_terms(system, terms)
    }

    /// Number of ordinary primes needed to cover every decimal key.
    pub fn required_primes(&self) -> Result<usize> {
        let mut largest = 0u64;
        for (n, t) in self.terms.iter().enumerate() {
            for key in t.exponents.keys() {
                if key.starts_with('q') {
                    continue;
                }
                let p: u64 = key.parse().ok().filter(|&p| is_prime(p)).ok_or_else(|| {
                    Error::Structural(format!("terms[{n}].exponents: unknown generator key {key:?}"))
                })?;
                largest = largest.max(p);
            }
        }
        Ok((2..=largest).filter(|&p| is_prime(p)).count())
    }
}

impl SymbolFile {
    pub fn from_symbol(psi: &Symbol) -> Self {
        Self {
            c0: psi.c0(),
            phi: SeriesFile::from_series(psi.phi()),
        }
    }

    pub fn to_symbol(&self, system: &Arc<GeneratorSystem>) -> Result<Symbol> {
        Symbol::new(self.c0, self.phi.to_series(system)?)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(value)? + "\n")?;
    Ok(())
}

/// Parses `"a+bi"`, `"a-bi"`, `"a"`, `"bi"`, `"i"`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Config(format!("cannot parse complex number {text:?} (expected a+bi)"));
    let num = |p: &str| p.parse::<f64>().ok().filter(|v| v.is_finite());
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return num(&s).map(|re| Complex64::new(re, 0.0)).ok_or_else(bad);
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (num(&body[..k]).ok_or_else(bad)?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => num(v).ok_or_else(bad)?,
    };
    Ok(Complex64::new(re, im))
}

/// Serde adapter writing a complex number as `{"re": .., "im": ..}`.
pub mod complex {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Repr {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        Repr { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let r = Repr::deserialize(d)?;
        Ok(Complex64::new(r.re, r.im))
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|z| Repr { re: z.re, im: z.im }))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
            let v = Vec::<Repr>::deserialize(d)?;
            Ok(v.into_iter().map(|r| Complex64::new(r.re, r.im)).collect())
        }
    }
}

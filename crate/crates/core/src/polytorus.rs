//! Characters of the (finitely truncated) infinite polytorus, vertical
//! limits, the Bohr lift, Monte Carlo averages over Haar measure and
//! time averages along the Kronecker flow.
//!
//! All series and symbols have finite support, so only the generators of the
//! ambient system are ever sampled; the marginal law on those coordinates is
//! exactly the Haar law.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{counting_function, counting_function_truncated};
use crate::error::{Error, Result};
use crate::generators::GeneratorSystem;
use crate::quadrature::simpson;
use crate::series::{Frequency, GDSeries};
use crate::symbol::Symbol;

const UNIT_TOL: f64 = 1e-12;

pub const DEFAULT_ERGODIC_POINTS: usize = 1 << 15;

/// A completely multiplicative unimodular function, given by its values on
/// generators.
#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    values: BTreeMap<usize, Complex64>,
}

impl Character {
    pub fn new(values: impl IntoIterator<Item = (usize, Complex64)>) -> Result<Self> {
        let values: BTreeMap<_, _> = values.into_iter().collect();
        for (i, z) in &values {
            if (z.norm() - 1.0).abs() > UNIT_TOL {
                return Err(Error::Structural(format!(
                    "character value at generator {i} has modulus {} (must be 1)",
                    z.norm()
                )));
            }
        }
        Ok(Self { values })
    }

    pub fn from_angles(angles: impl IntoIterator<Item = (usize, f64)>) -> Self {
        Self {
            values: angles
                .into_iter()
                .map(|(i, a)| (i, Complex64::from_polar(1.0, a)))
                .collect(),
        }
    }

    /// `χ ≡ 1` on every generator of `system`.
    pub fn trivial(system: &GeneratorSystem) -> Self {
        Self::from_angles((0..system.len()).map(|i| (i, 0.0)))
    }

    pub fn get(&self, generator: usize) -> Option<Complex64> {
        self.values.get(&generator).copied()
    }

    pub fn values(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.values.iter().map(|(&i, &z)| (i, z))
    }

    /// `χ(λ) = Π χ(g)^e`.
    pub fn at(&self, freq: &Frequency) -> Result<Complex64> {
        freq.exponents().iter().try_fold(Complex64::new(1.0, 0.0), |acc, &(i, e)| {
            let z = self
                .get(i)
                .ok_or_else(|| Error::Structural(format!("character is not defined on generator {i}")))?;
            Ok(acc * z.powu(e))
        })
    }

    /// `χ^k`: each generator value raised to the `k`-th power.
    pub fn pow(&self, k: u32) -> Character {
        Self {
            values: self.values.iter().map(|(&i, z)| (i, z.powu(k))).collect(),
        }
    }

    /// Pointwise product `ρ·χ`; generators missing from `rho` are left as is.
    pub fn rotate(&self, rho: &Character) -> Character {
        Self {
            values: self
                .values
                .iter()
                .map(|(&i, &z)| (i, rho.get(i).map_or(z, |r| r * z)))
                .collect(),
        }
    }
}

impl GDSeries {
    /// `f_χ(s) = Σ a_n χ(λ_n) λ_n^{-s}`.
    pub fn vertical_limit(&self, chi: &Character) -> Result<GDSeries> {
        let terms = self
            .terms()
            .map(|(f, c)| Ok((f.clone(), c * chi.at(f)?)))
            .collect::<Result<Vec<_>>>()?;
        GDSeries::from_terms(self.system(), terms)
    }
}

/// Counter-based stream: the `index`-th draw depends only on `(seed, index)`.
pub fn character_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Haar-distributed character on every generator of `system`, keyed by
/// `(seed, index)`.
pub fn sample_character(system: &GeneratorSystem, seed: u64, index: u64) -> Character {
    let mut rng = character_rng(seed, index);
    Character::from_angles((0..system.len()).map(|i| (i, 2.0 * PI * rng.random::<f64>())))
}

/// Monomial view of a series: `B(f)(z) = Σ a_n z^{γ(λ_n)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BohrLift {
    pub monomials: Vec<(Vec<(usize, u32)>, Complex64)>,
}

impl BohrLift {
    pub fn evaluate(&self, chi: &Character) -> Result<Complex64> {
        self.monomials.iter().try_fold(Complex64::new(0.0, 0.0), |acc, (m, c)| {
            Ok(acc + c * chi.at(&Frequency::from_pairs(m.iter().copied()))?)
        })
    }
}

pub fn bohr_lift(f: &GDSeries) -> BohrLift {
    BohrLift {
        monomials: f
            .sorted_terms()
            .into_iter()
            .map(|(freq, c)| (freq.exponents().to_vec(), c))
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MCEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
    /// Largest single-sample value.
    pub max: f64,
}

impl MCEstimate {
    /// Builds the estimate from per-sample values in index order.
    pub fn from_values(values: &[f64], seed: u64) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = if values.len() > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        Self {
            mean,
            std_error: (var / n).sqrt(),
            samples: values.len(),
            seed,
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// A deterministic value (no sampling error).
    pub fn exact(value: f64, samples: usize, seed: u64) -> Self {
        Self {
            mean: value,
            std_error: 0.0,
            samples,
            seed,
            max: value,
        }
    }
}

/// Evaluates `f` at characters `0..samples` of the stream `seed` in parallel.
/// Values come back in index order, so reductions are bit-stable.
pub fn sample_values<F>(system: &GeneratorSystem, samples: usize, seed: u64, f: F) -> Result<Vec<f64>>
where
    F: Fn(&Character) -> Result<f64> + Sync,
{
    (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let chi = sample_character(system, seed, i);
            f(&chi).map_err(|e| Error::Sample {
                seed,
                index: i,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Monte Carlo estimate of `∫ N_{ψ_χ}(w) dm(χ)`, or of the windowed
/// `N_{ψ_χ}(w, T)` when `window` is given.
pub fn mc_average_counting(
    psi: &Symbol,
    w: Complex64,
    samples: usize,
    seed: u64,
    window: Option<f64>,
) -> Result<MCEstimate> {
    if samples < 2 {
        return Err(Error::Config(format!("samples must be at least 2 (got {samples})")));
    }
    if !(w.re > 0.0) {
        return Err(Error::Domain("Re w must be positive".into()));
    }
    let count = |p: &Symbol| -> Result<f64> {
        Ok(match window {
            None => counting_function(p, w)?.value,
            Some(t) => counting_function_truncated(p, w, t, 0.0)?.value,
        })
    };
    if psi.is_character_free() {
        return Ok(MCEstimate::exact(count(psi)?, samples, seed));
    }
    let values = sample_values(psi.phi().system(), samples, seed, |chi| count(&psi.vertical_limit(chi)?))?;
    Ok(MCEstimate::from_values(&values, seed))
}

/// `(1/2T) ∫_{-T}^{T} |f_{χ0}(it)|² dt` by composite Simpson.
pub fn ergodic_time_average(f: &GDSeries, chi0: &Character, t: f64, quadrature_points: usize) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Config(format!("T must be positive (got {t})")));
    }
    let g = f.vertical_limit(chi0)?.exp_sum();
    let integral = simpson(|x| g.eval(Complex64::new(0.0, x)).norm_sqr(), -t, t, quadrature_points);
    Ok(integral / (2.0 * t))
}

/// Size of the time-average error at scales `T` and `2T`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayReport {
    pub t: f64,
    /// `sup_{T' ∈ [T, 2T]} |A(T') - ‖f‖²|`.
    pub error_t: f64,
    /// Same over `[2T, 4T]`.
    pub error_2t: f64,
    /// `error_t / error_2t`; close to 2 for an `O(1/T)` error.
    pub ratio: f64,
}

impl DecayReport {
    /// Envelope of `err` over `[T, 2T]` and `[2T, 4T]`, sampled at `points`
    /// points per window.
    pub fn from_error_fn<F: Fn(f64) -> f64>(t: f64, points: usize, err: F) -> Self {
        let sup = |a: f64, b: f64| {
            (0..=points)
                .map(|i| err(a + (b - a) * i as f64 / points as f64).abs())
                .fold(0.0, f64::max)
        };
        let error_t = sup(t, 2.0 * t);
        let error_2t = sup(2.0 * t, 4.0 * t);
        Self {
            t,
            error_t,
            error_2t,
            ratio: error_t / error_2t,
        }
    }
}

/// Convergence rate of the time average towards `‖f‖²`.
///
/// The error oscillates like `sin(TΔ)/(TΔ)` for each frequency gap `Δ`, so a
/// pointwise ratio at `T` and `2T` is meaningless; the envelope over dyadic
/// windows is measured instead. A single cumulative Simpson pass over
/// `[0, 4T]` (with `quadrature_points` intervals per length `2T`) gives all
/// the window values.
pub fn ergodic_decay(f: &GDSeries, chi0: &Character, t: f64, quadrature_points: usize) -> Result<DecayReport> {
    if !(t > 0.0) {
        return Err(Error::Config(format!("T must be positive (got {t})")));
    }
    let g = f.vertical_limit(chi0)?.exp_sum();
    let target = f.norm_sq();
    let sym = |x: f64| g.eval(Complex64::new(0.0, x)).norm_sqr() + g.eval(Complex64::new(0.0, -x)).norm_sqr();
    // pairs of intervals: cumulative values are exact Simpson sums at even nodes
    let pairs = (quadrature_points.max(4) / 2).max(2);
    let h = t / pairs as f64; // 2T ↔ 2·pairs intervals
    let total_pairs = 2 * pairs;
    let mut cumulative = Vec::with_capacity(total_pairs + 1);
    cumulative.push(0.0);
    let mut acc = 0.0;
    let mut left = sym(0.0);
    for k in 0..total_pairs {
        let x0 = 2.0 * h * k as f64;
        let mid = sym(x0 + h);
        let right = sym(x0 + 2.0 * h);
        acc += h / 3.0 * (left + 4.0 * mid + right);
        cumulative.push(acc);
        left = right;
    }
    let step = 2.0 * h;
    let err = |tp: f64| {
        let k = ((tp / step).round() as usize).min(total_pairs);
        let tk = step * k as f64;
        cumulative[k] / (2.0 * tk) - target
    };
    let points = pairs.min(4096);
    Ok(DecayReport::from_error_fn(t, points, err))
}

//! Compactness experiments: criterion curves `N(σ)/σ` as `σ → 0`,
//! restricted-range verdicts, decay of composed reproducing kernels, and the
//! symbol `1 + s - z·2^{-s}` whose averaged criterion vanishes while the
//! pointwise one does not.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::compose::{compose, ComposeOptions};
use crate::counting::{count_roots_rectangle, counting_function, SearchRectangle};
use crate::error::{Error, Result};
use crate::generators::GeneratorSystem;
use crate::polytorus::mc_average_counting;
use crate::quadrature::composite_gauss;
use crate::series::{Frequency, GDSeries};
use crate::symbol::{range_infimum, Grid, RangeReport, Symbol};

/// Default restricted-range thresholds: compact above, not compact below.
pub const COMPACT_THRESHOLD: f64 = 1e-6;
pub const NOT_COMPACT_THRESHOLD: f64 = 1e-9;

/// `p^{-2σ(k_cut+1)}` is pushed below this.
pub const KERNEL_TAIL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionCurve {
    pub sigmas: Vec<f64>,
    pub values: Vec<f64>,
    /// Zero for deterministic entries.
    pub std_errors: Vec<f64>,
    /// Largest single-character value of `N/σ` (equals `values` for the
    /// pointwise curve).
    pub maxima: Vec<f64>,
}

fn check_sigmas(sigmas: &[f64]) -> Result<()> {
    if sigmas.is_empty() {
        return Err(Error::Config("sigmas must not be empty".into()));
    }
    if let Some(s) = sigmas.iter().find(|&&s| !(s > 0.0 && s <= 0.5)) {
        return Err(Error::Domain(format!("sigma must lie in (0, 1/2] (got {s})")));
    }
    if sigmas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Config("sigmas must be strictly decreasing".into()));
    }
    Ok(())
}

/// `N_ψ(σ)/σ` at each `σ`.
pub fn pointwise_curve(psi: &Symbol, sigmas: &[f64]) -> Result<CriterionCurve> {
    check_sigmas(sigmas)?;
    let values = sigmas
        .par_iter()
        .map(|&s| Ok(counting_function(psi, Complex64::new(s, 0.0))?.value / s))
        .collect::<Result<Vec<f64>>>()?;
    Ok(CriterionCurve {
        sigmas: sigmas.to_vec(),
        std_errors: vec![0.0; values.len()],
        maxima: values.clone(),
        values,
    })
}

/// Monte Carlo estimate of `∫ N_{ψ_χ}(σ)/σ dm(χ)` at each `σ`.
pub fn compactness_curve(psi: &Symbol, sigmas: &[f64], samples: usize, seed: u64) -> Result<CriterionCurve> {
    check_sigmas(sigmas)?;
    if samples < 100 {
        return Err(Error::Config(format!("samples must be at least 100 (got {samples})")));
    }
    let estimates = sigmas
        .iter()
        .map(|&s| mc_average_counting(psi, Complex64::new(s, 0.0), samples, seed, None))
        .collect::<Result<Vec<_>>>()?;
    Ok(CriterionCurve {
        sigmas: sigmas.to_vec(),
        values: estimates.iter().zip(sigmas).map(|(e, s)| e.mean / s).collect(),
        std_errors: estimates.iter().zip(sigmas).map(|(e, s)| e.std_error / s).collect(),
        maxima: estimates.iter().zip(sigmas).map(|(e, s)| e.max / s).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Compactness {
    Compact,
    NotCompact,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RangeVerdict {
    pub verdict: Compactness,
    pub range: RangeReport,
    pub compact_threshold: f64,
    pub not_compact_threshold: f64,
}

/// For polynomial `φ` and `c0 ≥ 1`, `C_ψ` is compact exactly when
/// `inf Re φ > 0`. The infimum is estimated on the boundary.
pub fn restricted_range_verdict(psi: &Symbol) -> Result<RangeVerdict> {
    restricted_range_verdict_with(psi, COMPACT_THRESHOLD, NOT_COMPACT_THRESHOLD)
}

pub fn restricted_range_verdict_with(psi: &Symbol, compact: f64, not_compact: f64) -> Result<RangeVerdict> {
    if !(not_compact <= compact) {
        return Err(Error::Config("not-compact threshold must not exceed the compact threshold".into()));
    }
    let range = range_infimum(psi, Grid::default_for(psi.phi()))?;
    let verdict = if range.inf_re_phi > compact {
        Compactness::Compact
    } else if range.inf_re_phi < not_compact {
        Compactness::NotCompact
    } else {
        Compactness::Inconclusive
    };
    Ok(RangeVerdict {
        verdict,
        range,
        compact_threshold: compact,
        not_compact_threshold: not_compact,
    })
}

/// Normalized reproducing kernel at the real point `σ` restricted to powers
/// of one ordinary prime `p`:
/// `K(s) = √(1 - p^{-2σ}) Σ_{k ≤ k_cut} p^{-kσ} p^{-ks}`.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub sigma: f64,
    pub prime: usize,
    pub k_cut: u32,
    /// `p^{-2σ(k_cut+1)}`, the squared norm lost by truncation.
    pub tail_mass: f64,
    pub series: GDSeries,
}

impl Kernel {
    pub fn new(system: &std::sync::Arc<GeneratorSystem>, prime: usize, sigma: f64) -> Result<Self> {
        system.check_index(prime)?;
        if system.is_beurling(prime) {
            return Err(Error::Config("kernel generator must be an ordinary prime".into()));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::Domain(format!("sigma must be positive (got {sigma})")));
        }
        let log_p = system.log(prime);
        let k_cut = (-KERNEL_TAIL.ln() / (2.0 * sigma * log_p)).ceil() as u32;
        let norm = (1.0 - (-2.0 * sigma * log_p).exp()).sqrt();
        let series = GDSeries::from_terms(
            system,
            (0..=k_cut).map(|k| {
                let c = norm * (-(k as f64) * sigma * log_p).exp();
                (Frequency::generator(prime).pow(k), Complex64::new(c, 0.0))
            }),
        )?;
        Ok(Self {
            sigma,
            prime,
            k_cut,
            tail_mass: (-2.0 * sigma * log_p * (k_cut + 1) as f64).exp(),
            series,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelDecayEntry {
    pub sigma: f64,
    pub k_cut: u32,
    pub kernel_tail: f64,
    /// `‖C_ψ K_{σ,p}‖²`.
    pub norm_sq: f64,
    pub composition_tail: f64,
    pub inconclusive: bool,
}

/// `‖C_ψ K_{σ,p}‖²` for each `σ`.
pub fn kernel_decay_experiment(
    psi: &Symbol,
    sigmas: &[f64],
    prime: usize,
    lambda_max: f64,
) -> Result<Vec<KernelDecayEntry>> {
    let options = ComposeOptions {
        lambda_max,
        ..ComposeOptions::default()
    };
    sigmas
        .par_iter()
        .map(|&sigma| {
            let kernel = Kernel::new(psi.phi().system(), prime, sigma)?;
            let image = compose(&kernel.series, psi, options)?;
            Ok(KernelDecayEntry {
                sigma,
                k_cut: kernel.k_cut,
                kernel_tail: kernel.tail_mass,
                norm_sq: image.series.norm_sq(),
                composition_tail: image.tail_bound,
                inconclusive: image.warning,
            })
        })
        .collect()
}

/// `1 + s - z·2^{-s}` with `z = e^{iθ}`, over the generator system of one
/// ordinary prime.
pub fn bayart_symbol(theta: f64) -> Result<Symbol> {
    let g = GeneratorSystem::new(1, &[])?;
    let phi = GDSeries::from_terms(
        &g,
        [
            (Frequency::one(), Complex64::new(1.0, 0.0)),
            (Frequency::generator(0), -Complex64::from_polar(1.0, theta)),
        ],
    )?;
    Symbol::new(1, phi)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfimumSample {
    pub theta: f64,
    /// `|z - 1|`.
    pub distance: f64,
    /// `inf_{Re s > 0} |ψ_z(s)|`.
    pub h: f64,
    pub interior_zeros: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcBound {
    pub epsilon: f64,
    /// Largest `|z - 1|` on the sampled grid with `h(z) < 2ε`.
    pub max_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BayartExampleReport {
    pub epsilons: Vec<f64>,
    /// `∫_T N_{ψ_z}(ε)/ε dz` (normalized Haar measure).
    pub averaged: Vec<f64>,
    /// `N_{ψ_1}(ε)/ε`.
    pub pointwise: Vec<f64>,
    pub h_at_one: f64,
    pub infimum_grid: Vec<InfimumSample>,
    pub arcs: Vec<ArcBound>,
    pub quad_points: usize,
}

const H_WINDOW: f64 = 4.0;
const H_GRID: usize = 8001;
const H_THETAS: usize = 129;

/// `inf |ψ_z|` over the closed right half-plane.
///
/// `|ψ_z(it)| ≥ |1 + it| - 1 > 3` once `|t| > 4`, and `|ψ_z| → ∞` as
/// `|s| → ∞`, so by the minimum modulus principle the infimum is either a
/// zero inside `[0, 3] × [-4, 4]` or the minimum over the segment
/// `{it : |t| ≤ 4}`.
pub fn bayart_infimum(theta: f64) -> Result<InfimumSample> {
    let psi = bayart_symbol(theta)?;
    let compiled = psi.compile();
    let modulus = |t: f64| compiled.eval(Complex64::new(0.0, t)).norm();
    let h = 2.0 * H_WINDOW / (H_GRID - 1) as f64;
    let values: Vec<f64> = (0..H_GRID).map(|i| modulus(-H_WINDOW + h * i as f64)).collect();
    let i = (0..H_GRID).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    let lo = -H_WINDOW + h * i.saturating_sub(1) as f64;
    let hi = (-H_WINDOW + h * (i + 1) as f64).min(H_WINDOW);
    let boundary = golden_min(modulus, lo, hi).min(values[i]);

    let rect = SearchRectangle::new(1e-9, 3.0, -H_WINDOW, H_WINDOW)?;
    let zeros = count_roots_rectangle(&psi, Complex64::new(0.0, 0.0), &rect)?;
    Ok(InfimumSample {
        theta,
        distance: (Complex64::from_polar(1.0, theta) - 1.0).norm(),
        h: if zeros > 0 { 0.0 } else { boundary },
        interior_zeros: zeros,
    })
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let (mut c, mut d) = (b - r * (b - a), a + r * (b - a));
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-14 * (1.0 + a.abs()) {
        if fc < fd {
            (b, d, fd) = (d, c, fc);
            c = b - r * (b - a);
            fc = f(c);
        } else {
            (a, c, fc) = (c, d, fd);
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    fc.min(fd).min(f(a)).min(f(b))
}

/// The full experiment for `ψ(s) = 1 + s - 2^{-s}` and its rotations.
///
/// The averaged criterion uses `N_{ψ_z̄} = N_{ψ_z}` (preimages are conjugated)
/// to integrate over `θ ∈ [0, π]`. Half of the `quad_points` Gauss nodes sit
/// on `[0, 4√ε]`, where the counting function is supported in practice.
pub fn example_bayart(epsilons: &[f64], quad_points: usize) -> Result<BayartExampleReport> {
    if epsilons.is_empty() {
        return Err(Error::Config("epsilons must not be empty".into()));
    }
    if let Some(e) = epsilons.iter().find(|&&e| !(e > 0.0 && e <= 0.25)) {
        return Err(Error::Domain(format!("epsilon must lie in (0, 1/4] (got {e})")));
    }
    if quad_points < 32 {
        return Err(Error::Config(format!("quad_points must be at least 32 (got {quad_points})")));
    }
    const ORDER: usize = 8;
    let panels = (quad_points / (2 * ORDER)).max(1);

    let averaged = epsilons
        .iter()
        .map(|&eps| {
            let knee = (4.0 * eps.sqrt()).min(PI);
            let mut nodes = composite_gauss(0.0, knee, panels, ORDER);
            if knee < PI {
                nodes.extend(composite_gauss(knee, PI, panels, ORDER));
            }
            let w = Complex64::new(eps, 0.0);
            let sum = nodes
                .par_iter()
                .map(|&(theta, weight)| Ok(weight * counting_function(&bayart_symbol(theta)?, w)?.value))
                .collect::<Result<Vec<f64>>>()?
                .iter()
                .sum::<f64>();
            Ok(sum / PI / eps)
        })
        .collect::<Result<Vec<f64>>>()?;

    let psi1 = bayart_symbol(0.0)?;
    let pointwise = epsilons
        .iter()
        .map(|&eps| Ok(counting_function(&psi1, Complex64::new(eps, 0.0))?.value / eps))
        .collect::<Result<Vec<f64>>>()?;

    let infimum_grid = (0..H_THETAS)
        .into_par_iter()
        .map(|i| {
            // Denser near θ = 0, where h vanishes.
            let u = i as f64 / (H_THETAS - 1) as f64;
            bayart_infimum(PI * u * u)
        })
        .collect::<Result<Vec<_>>>()?;
    let h_at_one = infimum_grid[0].h;
    let arcs = epsilons
        .iter()
        .map(|&epsilon| ArcBound {
            epsilon,
            max_distance: infimum_grid
                .iter()
                .filter(|s| s.h < 2.0 * epsilon)
                .map(|s| s.distance)
                .fold(0.0, f64::max),
        })
        .collect();

    Ok(BayartExampleReport {
        epsilons: epsilons.to_vec(),
        averaged,
        pointwise,
        h_at_one,
        infimum_grid,
        arcs,
        quad_points: 2 * panels * ORDER,
    })
}

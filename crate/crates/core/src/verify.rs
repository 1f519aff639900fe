//! Numerical checks of the integral identities and inequalities relating
//! norms, composition and counting functions.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::compose::{compose_formal, ComposeOptions};
use crate::counting::{counting_compiled, counting_function, counting_function_any};
use crate::error::{Error, Result};
use crate::generators::factorize;
use crate::polytorus::{mc_average_counting, sample_character, sample_values, DecayReport, MCEstimate};
use crate::quadrature::{composite_gauss, gauss_legendre};
use crate::series::{Frequency, GDSeries};
use crate::symbol::Symbol;

/// Default relative tolerance for a report to pass.
pub const DEFAULT_REL_TOL: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    /// `abs_err / (1 + max(|lhs|, |rhs|))`.
    pub rel_err: f64,
    /// Monte Carlo standard error carried by the two sides combined.
    pub std_error: f64,
    /// `abs_err ≤ 3·std_error + tolerance·(1 + max(|lhs|, |rhs|))`.
    pub passed: bool,
    /// Set when a truncation bound is too large for the comparison to mean
    /// anything.
    pub inconclusive: bool,
    pub method_notes: String,
    pub params: Value,
}

impl VerificationReport {
    fn new(name: &str, lhs: f64, rhs: f64, std_error: f64, tolerance: f64, notes: String, params: Value) -> Self {
        let abs_err = (lhs - rhs).abs();
        let scale = 1.0 + lhs.abs().max(rhs.abs());
        Self {
            name: name.to_string(),
            lhs,
            rhs,
            abs_err,
            rel_err: abs_err / scale,
            std_error,
            passed: abs_err <= 3.0 * std_error + tolerance * scale,
            inconclusive: false,
            method_notes: notes,
            params,
        }
    }
}

/// Non-constant terms as `(frequency, coefficient, ln λ)`.
fn derivative_terms(f: &GDSeries) -> Vec<(Frequency, Complex64, f64)> {
    f.non_constant()
        .terms()
        .map(|(fr, c)| (fr.clone(), *c, fr.log_value(f.system())))
        .collect()
}

/// `∫_{-T}^{T} e^{-iΔt} dt`.
fn window_integral(delta: f64, t: f64) -> f64 {
    if delta.abs() * t < 1e-8 {
        2.0 * t
    } else {
        2.0 * (t * delta).sin() / delta
    }
}

/// Character averages `E[χ(λ_m) conj χ(λ_n)]` over the sample stream, with
/// the per-sample character values kept for error estimates.
struct PairMeans {
    means: Vec<Vec<Complex64>>,
    samples: Vec<Vec<Complex64>>,
}

fn pair_means(f: &GDSeries, terms: &[(Frequency, Complex64, f64)], power: u32, samples: usize, seed: u64) -> Result<PairMeans> {
    let m = terms.len();
    if samples == 0 {
        let means = (0..m)
            .map(|i| (0..m).map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
            .collect();
        return Ok(PairMeans {
            means,
            samples: Vec::new(),
        });
    }
    let mut values = Vec::with_capacity(samples);
    for i in 0..samples as u64 {
        let chi = sample_character(f.system(), seed, i).pow(power);
        values.push(terms.iter().map(|(fr, _, _)| chi.at(fr)).collect::<Result<Vec<_>>>()?);
    }
    let mut means = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for z in &values {
        for a in 0..m {
            for b in 0..m {
                means[a][b] += z[a] * z[b].conj();
            }
        }
    }
    for row in &mut means {
        for v in row.iter_mut() {
            *v /= samples as f64;
        }
    }
    Ok(PairMeans { means, samples: values })
}

/// Hermitian form `Re Σ c_m conj(c_n) K_mn X_mn`.
fn hermitian<F: Fn(usize, usize) -> Complex64>(terms: &[(Frequency, Complex64, f64)], kernel: F) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, (_, ca, _)) in terms.iter().enumerate() {
        for (b, (_, cb, _)) in terms.iter().enumerate() {
            acc += ca * cb.conj() * kernel(a, b);
        }
    }
    acc.re
}

fn estimate(values: &[f64], seed: u64) -> (f64, f64) {
    let e = MCEstimate::from_values(values, seed);
    (e.mean, e.std_error)
}

/// `‖f‖² = |f(+∞)|² + (2/T) E_χ ∫_0^∞ ∫_{-T}^{T} |f'_χ(σ+it)|² σ dt dσ`.
///
/// Per character the double integral is a finite sum over frequency pairs:
/// `∫_0^∞ σ e^{-(L_m+L_n)σ} dσ = 1/(L_m+L_n)²` and the `t` integral is
/// `2 sin(TΔ)/Δ`. `mc_samples = 0` takes the Haar expectation exactly, which
/// keeps only the diagonal.
pub fn verify_littlewood_paley(f: &GDSeries, t: f64, mc_samples: usize, seed: u64) -> Result<VerificationReport> {
    if !(t > 0.0) {
        return Err(Error::Config(format!("T must be positive (got {t})")));
    }
    let terms = derivative_terms(f);
    let f_inf = f.constant_term().norm_sqr();
    let pm = pair_means(f, &terms, 1, mc_samples, seed)?;
    let kernel = |a: usize, b: usize| {
        let (la, lb) = (terms[a].2, terms[b].2);
        la * lb / (la + lb).powi(2) * window_integral(la - lb, t)
    };
    let rhs_at = |z: &dyn Fn(usize, usize) -> Complex64| f_inf + 2.0 / t * hermitian(&terms, |a, b| z(a, b) * kernel(a, b));
    let (rhs, se) = if pm.samples.is_empty() {
        (rhs_at(&|a, b| pm.means[a][b]), 0.0)
    } else {
        let values: Vec<f64> = pm
            .samples
            .iter()
            .map(|z| rhs_at(&|a, b| z[a] * z[b].conj()))
            .collect();
        estimate(&values, seed)
    };
    let notes = "closed-form σ and t integrals per frequency pair; character expectation by Monte Carlo \
                 (exact diagonal when mc_samples = 0)"
        .to_string();
    let params = json!({"T": t, "mc_samples": mc_samples, "seed": seed});
    Ok(VerificationReport::new(
        "littlewood-paley",
        f.norm_sq(),
        rhs,
        se,
        DEFAULT_REL_TOL,
        notes,
        params,
    ))
}

/// Envelope decay of the Littlewood–Paley error in `T`, using the same
/// character sample means at every `T'`.
pub fn littlewood_paley_decay(f: &GDSeries, t: f64, mc_samples: usize, seed: u64) -> Result<DecayReport> {
    if !(t > 0.0) {
        return Err(Error::Config(format!("T must be positive (got {t})")));
    }
    let terms = derivative_terms(f);
    let pm = pair_means(f, &terms, 1, mc_samples, seed)?;
    let f_inf = f.constant_term().norm_sqr();
    let lhs = f.norm_sq();
    let err = |tp: f64| {
        let rhs = f_inf
            + 2.0 / tp
                * hermitian(&terms, |a, b| {
                    let (la, lb) = (terms[a].2, terms[b].2);
                    pm.means[a][b] * (la * lb / (la + lb).powi(2) * window_integral(la - lb, tp))
                });
        rhs - lhs
    };
    Ok(DecayReport::from_error_fn(t, 4096, err))
}

/// Smallest `x > x0` past the peak of `env` at which `env < 1e-12 · peak`.
fn envelope_cutoff<F: Fn(f64) -> f64>(env: F, x0: f64, scale: f64) -> f64 {
    let mut peak = 0.0f64;
    let mut x = x0;
    let step = 0.05 * scale;
    loop {
        x += step;
        let v = env(x);
        peak = peak.max(v);
        if peak > 0.0 && v < 1e-12 * peak {
            return x;
        }
        if x > x0 + 1e4 * scale {
            return x;
        }
    }
}

/// Composite Gauss nodes on `[a, b]` whose panels grow geometrically from
/// `h0`, for integrands concentrated near `a`.
fn graded_nodes(a: f64, b: f64, h0: f64, growth: f64, order: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let (mut lo, mut h) = (a, h0);
    while lo < b {
        let hi = (lo + h).min(b);
        out.extend(composite_gauss(lo, hi, 1, order));
        lo = hi;
        h *= growth;
    }
    out
}

/// `‖C_ψ f‖² = |f(+∞)|² + (2/π) ∫ E_χ[|f'_{χ^{c0}}(w)|² N_{ψ_χ}(w, T)] dA(w)`.
///
/// The left side is the norm of the truncated composition. For the right
/// side two routes are used:
///
/// * `φ` constant: `N_{ψ_χ} = N_ψ` for every `χ`, and the area integral is
///   done literally by tensor Gauss quadrature over the strip
///   `Re w > Re c1`, `|Im w - Im c1| < c0 T`, with `N_ψ(w, T)` from the
///   counting engine at every node;
/// * otherwise the integrand is averaged over vertical translates first.
///   Haar measure is invariant under `χ ↦ χ·λ^{-iτ}`, which maps
///   `N_{ψ_χ}(w, T)` to a window shifted by `τ` and `f_{χ^{c0}}(w)` to
///   `f_{χ^{c0}}(w + ic0τ)`. Integrating over `Im w` then collapses the
///   window and gives, for every `T`,
///   `|f(+∞)|² + 4 c0 ∫_ℝ E_χ[|f'_{χ^{c0}}(u)|² N_{ψ_χ}(u)] du`,
///   a one-dimensional integral over real `u` per sampled character.
pub fn verify_stanton(
    f: &GDSeries,
    psi: &Symbol,
    t: f64,
    mc_samples: usize,
    seed: u64,
    lambda_max: f64,
) -> Result<VerificationReport> {
    if !(t > 0.0) {
        return Err(Error::Config(format!("T must be positive (got {t})")));
    }
    let composition = compose_formal(f, psi, ComposeOptions { lambda_max, k_max: 40 })?;
    let lhs = composition.series.norm_sq();
    let f_inf = f.constant_term().norm_sqr();
    let params = json!({
        "T": t, "mc_samples": mc_samples, "seed": seed, "lambda_max": lambda_max, "k_max": 40,
        "tail_bound": composition.tail_bound,
    });
    let terms = derivative_terms(f);
    let (rhs, se, notes) = if terms.is_empty() {
        (f_inf, 0.0, "f is constant: both sides equal |f(+∞)|²".to_string())
    } else if psi.is_character_free() {
        stanton_area(f, psi, &terms, t, mc_samples, seed)?
    } else {
        stanton_slice(f, psi, &terms, mc_samples, seed)?
    };
    let mut report = VerificationReport::new("stanton", lhs, rhs, se, 2e-2, notes, params);
    let tail = composition.tail_bound;
    if composition.warning {
        report.inconclusive = true;
        report.passed = false;
        report.method_notes += &format!("; composition tail bound {tail:.3e} exceeds 1e-6");
    }
    Ok(report)
}

fn stanton_area(
    f: &GDSeries,
    psi: &Symbol,
    terms: &[(Frequency, Complex64, f64)],
    t: f64,
    mc_samples: usize,
    seed: u64,
) -> Result<(f64, f64, String)> {
    let compiled = psi.compile();
    let c0 = compiled.c0;
    let c1 = compiled.c1;
    let f_inf = f.constant_term().norm_sqr();
    let l_min = terms.iter().map(|x| x.2).fold(f64::INFINITY, f64::min);
    let l_max = terms.iter().map(|x| x.2).fold(0.0, f64::max);
    let coeff_env = |s: f64| terms.iter().map(|(_, c, l)| c.norm() * l * (-l * s).exp()).sum::<f64>().powi(2);
    let sigma_lo = c1.re;
    let sigma_hi = envelope_cutoff(|s| coeff_env(s) * (s - sigma_lo) / c0, sigma_lo, 1.0 / l_min);
    let sigma_panels = ((sigma_hi - sigma_lo) * 2.0 * l_max).ceil().max(4.0) as usize;
    let sigma_nodes = composite_gauss(sigma_lo, sigma_hi, sigma_panels, 16);
    let (t_lo, t_hi) = (c1.im - c0 * t, c1.im + c0 * t);
    let spread = l_max - l_min;
    let t_panels = ((t_hi - t_lo) * spread / PI).ceil() as usize + 1;
    let t_nodes = composite_gauss(t_lo, t_hi, t_panels, 16);

    let m = terms.len();
    let mut integrals = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for &(s, ws) in &sigma_nodes {
        for &(y, wy) in &t_nodes {
            let w = Complex64::new(s, y);
            let n = counting_compiled(&compiled, w, Some(t), 0.0)?.value;
            if n == 0.0 {
                continue;
            }
            for a in 0..m {
                for b in 0..m {
                    let (la, lb) = (terms[a].2, terms[b].2);
                    let phase = Complex64::new(-(la + lb) * s, -(la - lb) * y).exp();
                    integrals[a][b] += phase * (ws * wy * n * la * lb);
                }
            }
        }
    }
    let pm = pair_means(f, terms, psi.c0(), mc_samples, seed)?;
    let rhs_at = |z: &dyn Fn(usize, usize) -> Complex64| {
        f_inf + 2.0 / PI * hermitian(terms, |a, b| z(a, b) * integrals[a][b])
    };
    let (rhs, se) = if pm.samples.is_empty() {
        (rhs_at(&|a, b| pm.means[a][b]), 0.0)
    } else {
        let values: Vec<f64> = pm.samples.iter().map(|z| rhs_at(&|a, b| z[a] * z[b].conj())).collect();
        estimate(&values, seed)
    };
    let notes = format!(
        "character-free symbol: tensor Gauss quadrature over Re w in [{sigma_lo:.4}, {sigma_hi:.4}] \
         ({} nodes) x Im w in [{t_lo:.4}, {t_hi:.4}] ({} nodes), N_ψ(w, T) by the counting engine at each node; \
         σ range cut where |f'|²·Re w/c0 falls below 1e-12 of its peak",
        sigma_nodes.len(),
        t_nodes.len()
    );
    Ok((rhs, se, notes))
}

fn stanton_slice(
    f: &GDSeries,
    psi: &Symbol,
    terms: &[(Frequency, Complex64, f64)],
    mc_samples: usize,
    seed: u64,
) -> Result<(f64, f64, String)> {
    if mc_samples < 2 {
        return Err(Error::Config(
            "a character-dependent symbol needs mc_samples >= 2".into(),
        ));
    }
    let compiled = psi.compile();
    let c0 = compiled.c0;
    let f_inf = f.constant_term().norm_sqr();
    let l_min = terms.iter().map(|x| x.2).fold(f64::INFINITY, f64::min);
    let coeff_env = |u: f64| terms.iter().map(|(_, c, l)| c.norm() * l * (-l * u).exp()).sum::<f64>().powi(2);
    // ψ(s) real with Re s > 0 forces u > Re c1 - n0
    let u_lo = compiled.c1.re - compiled.l1;
    let u_hi = envelope_cutoff(|u| coeff_env(u) * (u - u_lo) / c0, u_lo, 1.0 / l_min);
    let nodes = graded_nodes(u_lo, u_hi, 0.1 / l_min.max(1.0), 1.2, 8);
    let system = f.system();
    let values = sample_values(system, mc_samples, seed, |chi| {
        let psi_chi = psi.vertical_limit(chi)?.compile();
        let df = f.vertical_limit(&chi.pow(psi.c0()))?.derivative().exp_sum();
        let mut acc = 0.0;
        for &(u, wu) in &nodes {
            let u = Complex64::new(u, 0.0);
            let n = counting_function_any(&psi_chi, u, None)?.value;
            if n != 0.0 {
                acc += wu * df.eval(u).norm_sqr() * n;
            }
        }
        Ok(f_inf + 4.0 * c0 * acc)
    })?;
    let (rhs, se) = estimate(&values, seed);
    let notes = format!(
        "vertical-translate reduction: |f(+∞)|² + 4 c0 ∫ E_χ[|f'_χ^c0(u)|² N_ψχ(u)] du over real u in \
         [{u_lo:.4}, {u_hi:.4}] ({} graded Gauss nodes), Monte Carlo over χ",
        nodes.len()
    );
    Ok((rhs, se, notes))
}

/// `E_χ N_{ψ_χ}(w)` against `E_χ N_{ψ_χ}(Re w)` on the same characters.
pub fn verify_translation_invariance(psi: &Symbol, w: Complex64, samples: usize, seed: u64) -> Result<VerificationReport> {
    let a = mc_average_counting(psi, w, samples, seed, None)?;
    let b = mc_average_counting(psi, Complex64::new(w.re, 0.0), samples, seed, None)?;
    let se = a.std_error.hypot(b.std_error);
    let notes = "Monte Carlo means on a common character stream; pass if within 3 combined standard errors".to_string();
    let params = json!({"w": {"re": w.re, "im": w.im}, "samples": samples, "seed": seed});
    Ok(VerificationReport::new("tonelli", a.mean, b.mean, se, 1e-12, notes, params))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubmeanReport {
    pub w: [f64; 2],
    pub r: f64,
    /// `E N(w)` over the disk average of `E N`; 0 when both vanish.
    pub ratio: f64,
    pub numerator: f64,
    pub disk_mean: f64,
    /// Same with `N_ψ(w, 1)` over the disk average of `N_ψ(·, 2)` for the
    /// untwisted symbol.
    pub windowed_ratio: f64,
    pub degenerate: bool,
    pub samples: usize,
    pub area_points: usize,
    pub seed: u64,
}

/// Polar Gauss nodes on the disk `D(w, r)`, normalized to total weight 1.
fn disk_nodes(w: Complex64, r: f64, area_points: usize) -> Vec<(Complex64, f64)> {
    let n_r = ((area_points as f64 / 4.0).sqrt().round() as usize).max(2);
    let n_th = (area_points / n_r).max(4);
    let (x, wx) = gauss_legendre(n_r);
    let mut out = Vec::with_capacity(n_r * n_th);
    for (xi, wi) in x.iter().zip(&wx) {
        let rho = 0.5 * (xi + 1.0); // in units of r
        for k in 0..n_th {
            let th = 2.0 * PI * (k as f64 + 0.5) / n_th as f64;
            // ∫ρ dρ dθ / (π) with ρ ∈ [0, 1]
            let weight = 0.5 * wi * rho / n_th as f64 * 2.0;
            out.push((w + Complex64::from_polar(r * rho, th), weight));
        }
    }
    out
}

/// Submean ratio of the averaged counting function on `D(w, r)`.
pub fn verify_submean(
    psi: &Symbol,
    w: Complex64,
    r: f64,
    samples: usize,
    area_points: usize,
    seed: u64,
) -> Result<SubmeanReport> {
    if !(r > 0.0) || !(w.re - r > 0.0) || !(w.re + r < 0.5) {
        return Err(Error::Domain(format!(
            "disk D({w}, {r}) must lie in the strip 0 < Re z < 1/2"
        )));
    }
    let nodes = disk_nodes(w, r, area_points);
    let points: Vec<Complex64> = std::iter::once(w).chain(nodes.iter().map(|n| n.0)).collect();
    let means: Vec<f64> = if psi.is_character_free() {
        let compiled = psi.compile();
        points
            .iter()
            .map(|&z| Ok(counting_compiled(&compiled, z, None, 0.0)?.value))
            .collect::<Result<_>>()?
    } else {
        if samples < 2 {
            return Err(Error::Config(format!("samples must be at least 2 (got {samples})")));
        }
        let system = psi.phi().system();
        let mut sums = vec![0.0; points.len()];
        let per_sample: Vec<Vec<f64>> = (0..samples as u64)
            .into_par_iter()
            .map(|i| {
                let chi = sample_character(system, seed, i);
                let compiled = psi.vertical_limit(&chi)?.compile();
                points
                    .iter()
                    .map(|&z| Ok(counting_compiled(&compiled, z, None, 0.0)?.value))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| Error::Sample {
                        seed,
                        index: i,
                        source: Box::new(e),
                    })
            })
            .collect::<Result<_>>()?;
        for row in &per_sample {
            for (s, v) in sums.iter_mut().zip(row) {
                *s += v;
            }
        }
        sums.iter().map(|s| s / samples as f64).collect()
    };
    let numerator = means[0];
    let disk_mean: f64 = nodes.iter().zip(&means[1..]).map(|((_, wt), v)| wt * v).sum();
    let ratio_of = |a: f64, b: f64| if a == 0.0 && b == 0.0 { 0.0 } else { a / b };

    let compiled = psi.compile();
    let num_w = counting_compiled(&compiled, w, Some(1.0), 0.0)?.value;
    let den_w: f64 = nodes
        .iter()
        .map(|&(z, wt)| Ok(wt * counting_compiled(&compiled, z, Some(2.0), 0.0)?.value))
        .sum::<Result<f64>>()?;
    Ok(SubmeanReport {
        w: [w.re, w.im],
        r,
        ratio: ratio_of(numerator, disk_mean),
        numerator,
        disk_mean,
        windowed_ratio: ratio_of(num_w, den_w),
        degenerate: numerator == 0.0 && disk_mean == 0.0,
        samples,
        area_points: nodes.len(),
        seed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BayartCheck {
    pub w: [f64; 2],
    pub value: f64,
    pub bound: f64,
    /// `value - bound`; non-positive when the bound holds.
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BayartReport {
    pub checks: Vec<BayartCheck>,
    pub max_slack: f64,
    pub violations: Vec<[f64; 2]>,
    pub passed: bool,
}

/// `N_ψ(w) ≤ Re w / c0` at every `w`, with `1e-9` slack.
pub fn verify_bayart_bound(psi: &Symbol, ws: &[Complex64]) -> Result<BayartReport> {
    let mut checks = Vec::with_capacity(ws.len());
    for &w in ws {
        let value = counting_function(psi, w)?.value;
        let bound = w.re / psi.c0() as f64;
        checks.push(BayartCheck {
            w: [w.re, w.im],
            value,
            bound,
            slack: value - bound,
        });
    }
    let violations: Vec<_> = checks.iter().filter(|c| c.slack > 1e-9).map(|c| c.w).collect();
    Ok(BayartReport {
        max_slack: checks.iter().map(|c| c.slack).fold(f64::NEG_INFINITY, f64::max),
        passed: violations.is_empty(),
        violations,
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    /// Every frequency of `C_ψ(b^{-s} f)` is `b^{c0}` times an ordinary one.
    pub support_ok: bool,
    pub bad_frequencies: Vec<String>,
    /// `‖C_ψ(b^{-s} f)‖²`.
    pub norm_sq_b: f64,
    /// `‖C_ψ(⌊b⌋^{-s} f)‖²`.
    pub norm_sq_floor: f64,
    pub floor: u64,
    pub norm_f: f64,
    pub tail_bound: f64,
    pub tolerance: f64,
    /// `norm_sq_b ≤ norm_sq_floor + tolerance`.
    pub floor_ok: bool,
    /// `sqrt(norm_sq_b) ≤ ‖f‖ + tolerance`.
    pub contraction_ok: bool,
    pub passed: bool,
}

/// Checks the orthogonal-decomposition facts for `b = bk`, a product of
/// Beurling generators.
pub fn verify_decomposition(psi: &Symbol, f: &GDSeries, bk: &Frequency, lambda_max: f64) -> Result<DecompositionReport> {
    let system = f.system();
    if bk.is_one() {
        return Err(Error::Structural("b_k must contain at least one Beurling generator".into()));
    }
    for &(i, _) in bk.exponents() {
        if !system.is_beurling(i) {
            return Err(Error::Structural(format!(
                "b_k may only involve Beurling generators ({} is an ordinary prime)",
                system.key(i)
            )));
        }
    }
    let b = bk.value(system)?;
    let floor = b.floor() as u64;
    if floor < 2 {
        return Err(Error::Structural(format!("⌊b_k⌋ = {floor} must be at least 2")));
    }
    let floor_freq = Frequency::from_pairs(
        factorize(floor)
            .into_iter()
            .map(|(p, e)| {
                system.prime_index(p).map(|i| (i, e)).ok_or_else(|| {
                    Error::Structural(format!("prime {p} dividing ⌊b_k⌋ = {floor} is not in the generator system"))
                })
            })
            .collect::<Result<Vec<_>>>()?,
    );
    let one = Complex64::new(1.0, 0.0);
    let options = ComposeOptions { lambda_max, k_max: 40 };
    let shifted = GDSeries::monomial(system, bk.clone(), one)?.multiply(f)?;
    let image = compose_formal(&shifted, psi, options)?;
    let floor_image = compose_formal(&GDSeries::monomial(system, floor_freq, one)?.multiply(f)?, psi, options)?;

    let target = bk.pow(psi.c0());
    let bad_frequencies: Vec<String> = image
        .series
        .terms()
        .filter(|(fr, _)| {
            let beurling = Frequency::from_pairs(fr.exponents().iter().copied().filter(|&(i, _)| system.is_beurling(i)));
            beurling != target
        })
        .map(|(fr, _)| image.series.frequency_label(fr))
        .collect();
    let tail_bound = image.tail_bound + floor_image.tail_bound;
    let tolerance = 1e-6 + 2.0 * tail_bound;
    let norm_sq_b = image.series.norm_sq();
    let norm_sq_floor = floor_image.series.norm_sq();
    let norm_f = f.norm_sq().sqrt();
    let floor_ok = norm_sq_b <= norm_sq_floor + tolerance;
    let contraction_ok = norm_sq_b.sqrt() <= norm_f + tolerance;
    let support_ok = bad_frequencies.is_empty();
    Ok(DecompositionReport {
        support_ok,
        bad_frequencies,
        norm_sq_b,
        norm_sq_floor,
        floor,
        norm_f,
        tail_bound,
        tolerance,
        floor_ok,
        contraction_ok,
        passed: support_ok && floor_ok && contraction_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::GeneratorSystem;
    use std::f64::consts::LN_2;
    use std::sync::Arc;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sys() -> Arc<GeneratorSystem> {
        GeneratorSystem::new(3, &[PI]).unwrap()
    }

    fn series(g: &Arc<GeneratorSystem>, terms: &[(&[(usize, u32)], f64)]) -> GDSeries {
        GDSeries::from_terms(g, terms.iter().map(|(e, a)| (Frequency::from_pairs(e.iter().copied()), c(*a)))).unwrap()
    }

    #[test]
    fn littlewood_paley_single_frequency_is_exact() {
        let g = sys();
        let f = series(&g, &[(&[(0, 1)], 1.0)]);
        for samples in [0, 50] {
            let r = verify_littlewood_paley(&f, 1000.0, samples, 1).unwrap();
            assert!((r.rhs - 1.0).abs() < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn littlewood_paley_constant() {
        let g = sys();
        let r = verify_littlewood_paley(&GDSeries::constant(&g, c(3.0)), 5.0, 10, 1).unwrap();
        assert_eq!((r.lhs, r.rhs), (9.0, 9.0));
    }

    #[test]
    fn littlewood_paley_pair_integral_against_quadrature() {
        // brute-force 2-D quadrature of |f'(σ+it)|² σ for the trivial character
        let g = sys();
        let f = series(&g, &[(&[(0, 1)], 1.0), (&[(1, 1)], 0.5)]);
        let t = 3.0;
        let df = f.derivative().exp_sum();
        let mut brute = 0.0;
        for &(s, ws) in &composite_gauss(0.0, 40.0, 80, 16) {
            for &(y, wy) in &composite_gauss(-t, t, 16, 16) {
                brute += ws * wy * s * df.eval(Complex64::new(s, y)).norm_sqr();
            }
        }
        let terms = derivative_terms(&f);
        let closed = hermitian(&terms, |a, b| {
            let (la, lb) = (terms[a].2, terms[b].2);
            c(la * lb / (la + lb).powi(2) * window_integral(la - lb, t))
        });
        assert!((brute - closed).abs() < 1e-10, "{brute} vs {closed}");
    }

    #[test]
    fn stanton_closed_forms() {
        let g = sys();
        let f = series(&g, &[(&[(0, 1)], 1.0)]);
        let r = verify_stanton(&f, &Symbol::new(2, GDSeries::zero(&g)).unwrap(), 10.0, 0, 1, 65536.0).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-12 && (r.rhs - 1.0).abs() < 1e-6, "{r:?}");
        let psi = Symbol::new(1, GDSeries::constant(&g, c(1.0))).unwrap();
        let r = verify_stanton(&f, &psi, 10.0, 0, 1, 65536.0).unwrap();
        assert!((r.lhs - 0.25).abs() < 1e-12 && (r.rhs - 0.25).abs() < 1e-6, "{r:?}");
        let r = verify_stanton(&GDSeries::constant(&g, c(2.0)), &psi, 10.0, 0, 1, 65536.0).unwrap();
        assert_eq!((r.lhs, r.rhs), (4.0, 4.0));
    }

    #[test]
    fn stanton_generic_lhs() {
        // ‖1 + 2^{-s}·2^{-2^{-s}}‖² = 1 + Σ (ln 2)^{2k}/k!² = 1 + I0(2 ln 2)
        let g = sys();
        let f = series(&g, &[(&[], 1.0), (&[(0, 1)], 1.0)]);
        let psi = Symbol::new(1, series(&g, &[(&[(0, 1)], 1.0)])).unwrap();
        let c = compose_formal(&f, &psi, ComposeOptions::default()).unwrap();
        let mut i0 = 0.0;
        let mut term = 1.0;
        for k in 0..40 {
            if k > 0 {
                term *= (LN_2 * LN_2) / (k * k) as f64;
            }
            i0 += term;
        }
        assert!((c.series.norm_sq() - 1.0 - i0).abs() < 1e-12);
    }

    #[test]
    fn tonelli_character_free() {
        let g = sys();
        let psi = Symbol::new(2, GDSeries::zero(&g)).unwrap();
        let r = verify_translation_invariance(&psi, Complex64::new(0.4, 7.0), 10, 3).unwrap();
        assert!((r.lhs - 0.2).abs() < 1e-12 && (r.rhs - 0.2).abs() < 1e-12 && r.passed);
    }

    #[test]
    fn submean_identity_is_one() {
        let g = sys();
        let psi = Symbol::new(1, GDSeries::zero(&g)).unwrap();
        let r = verify_submean(&psi, c(0.2), 0.1, 10, 256, 1).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-10, "{r:?}");
        assert!(verify_submean(&psi, c(0.2), 0.3, 10, 256, 1).is_err());
    }

    #[test]
    fn submean_empty_is_degenerate() {
        let g = sys();
        let psi = Symbol::new(1, GDSeries::constant(&g, c(1.0))).unwrap();
        let r = verify_submean(&psi, c(0.2), 0.1, 10, 64, 1).unwrap();
        assert!(r.degenerate && r.ratio == 0.0);
    }

    #[test]
    fn bayart_saturation() {
        let g = sys();
        let psi = Symbol::new(3, GDSeries::zero(&g)).unwrap();
        let r = verify_bayart_bound(&psi, &[c(0.6)]).unwrap();
        assert!(r.passed && r.max_slack.abs() < 1e-12);
    }

    #[test]
    fn decomposition_examples() {
        let g = sys();
        let q1 = Frequency::generator(3);
        let one = GDSeries::constant(&g, c(1.0));
        let r = verify_decomposition(&Symbol::new(2, GDSeries::zero(&g)).unwrap(), &one, &q1, 65536.0).unwrap();
        assert!(r.passed && (r.norm_sq_b - 1.0).abs() < 1e-12);
        let shift = Symbol::new(1, GDSeries::constant(&g, c(1.0))).unwrap();
        let r = verify_decomposition(&shift, &one, &q1, 65536.0).unwrap();
        assert!((r.norm_sq_b - 1.0 / (PI * PI)).abs() < 1e-12 && r.passed);
        assert!(verify_decomposition(&shift, &one, &Frequency::generator(0), 65536.0).is_err());
    }

    #[test]
    fn decomposition_fails_outside_the_class() {
        // ‖b^{-ψ}‖² = Σ (ln b)^{2k}/(k!)² = I0(2 ln b) for ψ = s + 2^{-s}
        let g = sys();
        let two = Frequency::generator(0);
        let psi = Symbol::new(1, GDSeries::monomial(&g, two.clone(), c(1.0)).unwrap()).unwrap();
        let f = GDSeries::monomial(&g, two, c(1.0)).unwrap();
        let bessel = |b: f64| {
            let mut term = 1.0;
            let mut sum = 1.0;
            for k in 1..60 {
                term *= b.ln().powi(2) / (k * k) as f64;
                sum += term;
            }
            sum
        };
        let r = verify_decomposition(&psi, &f, &Frequency::generator(3), 65536.0).unwrap();
        assert!(r.support_ok);
        assert!((r.norm_sq_b - bessel(2.0 * PI)).abs() < 1e-8, "{}", r.norm_sq_b);
        assert!((r.norm_sq_floor - bessel(6.0)).abs() < 1e-8);
        assert!(!r.floor_ok && !r.contraction_ok && !r.passed);
    }
}

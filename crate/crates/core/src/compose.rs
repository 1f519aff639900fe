//! The composition operator `C_ψ f = f∘ψ` on Dirichlet polynomials.
//!
//! For a term `a·λ^{-s}` of `f`,
//!
//! ```text
//! λ^{-ψ(s)} = λ^{-c0 s} · λ^{-c1} · exp(-ln λ · φ0(s)),   φ0 = φ - c1,
//! ```
//!
//! and the exponential is expanded as `Σ_{k ≤ k_max} (-ln λ)^k φ0^k / k!`
//! inside the series algebra. Every frequency of `φ0` exceeds 1, so the
//! frequencies of `φ0^k` only grow with `k`: truncating each power at
//! `λ_max` loses nothing that a later power could bring back.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{log_cap, GDSeries};
use crate::symbol::{validate_symbol, Grid, Membership, Symbol};
use crate::Complex64;

/// Tail bound above which a composition is flagged.
pub const TAIL_WARNING: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComposeOptions {
    /// Largest frequency kept; `f64::INFINITY` keeps everything.
    pub lambda_max: f64,
    pub k_max: u32,
}

impl Default for ComposeOptions {
    fn default() -> Self {
        Self {
            lambda_max: 65536.0,
            k_max: 40,
        }
    }
}

/// A truncated `C_ψ f` with ℓ¹ bounds on what was dropped. Both bounds also
/// control the `ℋ²` norm error and the sup-norm error on `Re s ≥ 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Composition {
    #[serde(skip)]
    pub series: GDSeries,
    /// Mass of the exponential series beyond `k_max`.
    pub exp_tail: f64,
    /// Mass of the frequencies above `λ_max`.
    pub truncation_tail: f64,
    pub tail_bound: f64,
    /// `tail_bound > 1e-6`.
    pub warning: bool,
    pub options: ComposeOptions,
}

/// `C_ψ f` for a symbol that passes the class check.
pub fn compose(f: &GDSeries, psi: &Symbol, options: ComposeOptions) -> Result<Composition> {
    let verdict = validate_symbol(psi, Grid::default_for(psi.phi()))?;
    if verdict.verdict == Membership::Rejected {
        return Err(Error::Class(format!(
            "Re φ reaches {:.3e} on the boundary (at t = {:.6})",
            verdict.range.inf_re_phi, verdict.range.argmin_t
        )));
    }
    compose_formal(f, psi, options)
}

/// `C_ψ f` as a formal substitution, with no class check. The result is the
/// same series; only its interpretation as a bounded operator needs the class.
pub fn compose_formal(f: &GDSeries, psi: &Symbol, options: ComposeOptions) -> Result<Composition> {
    if !(options.lambda_max >= 1.0) {
        return Err(Error::Config(format!("lambda_max must be at least 1 (got {})", options.lambda_max)));
    }
    let system = f.system();
    if **system != **psi.phi().system() {
        return Err(Error::Structural("series and symbol use different generator systems".into()));
    }
    let cap = log_cap(options.lambda_max);
    let c0 = psi.c0();
    let c1 = psi.phi().constant_term();
    let phi0 = psi.phi().non_constant();
    let n0 = phi0.l1_norm();

    let powers = truncated_powers(&phi0, options);
    let mut out = GDSeries::zero(system);
    let mut exp_tail = 0.0;
    let mut truncation_tail = 0.0;

    for (freq, &a) in f.terms() {
        let l = freq.log_value(system);
        let scale = a * (-c1 * l).exp();
        let base = freq.pow(c0);
        let base_log = c0 as f64 * l;
        if base_log > cap {
            truncation_tail += scale.norm() * (l * n0).exp();
            continue;
        }
        let room = cap - base_log;
        let mut weight = 1.0; // (ln λ)^k / k!
        for (k, power) in powers.iter().enumerate() {
            if k > 0 {
                weight *= l / k as f64;
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let coef = scale * (sign * weight);
            let mut kept = 0.0;
            for (pf, pc, plog) in power {
                if *plog <= room {
                    out.accumulate(base.mul(pf), coef * pc);
                    kept += pc.norm();
                }
            }
            truncation_tail += coef.norm() * (n0.powi(k as i32) - kept).max(0.0);
        }
        // powers beyond the last non-empty one were truncated away entirely
        for k in powers.len()..=options.k_max as usize {
            weight *= l / k as f64;
            truncation_tail += scale.norm() * weight * n0.powi(k as i32);
        }
        exp_tail += scale.norm() * exp_series_tail(l * n0, options.k_max);
    }
    out.prune();
    let tail_bound = exp_tail + truncation_tail;
    Ok(Composition {
        series: out,
        exp_tail,
        truncation_tail,
        tail_bound,
        warning: tail_bound > TAIL_WARNING,
        options,
    })
}

type Power = Vec<(crate::series::Frequency, Complex64, f64)>;

/// `φ0^k` for `k = 0..=k_max`, each truncated at `λ_max`; stops early once a
/// power is empty.
fn truncated_powers(phi0: &GDSeries, options: ComposeOptions) -> Vec<Power> {
    let system = phi0.system();
    let flatten = |s: &GDSeries| -> Power {
        s.terms()
            .map(|(f, c)| (f.clone(), *c, f.log_value(system)))
            .collect()
    };
    let mut current = GDSeries::constant(system, Complex64::new(1.0, 0.0));
    let mut powers = vec![flatten(&current)];
    if phi0.is_zero() {
        return powers;
    }
    for _ in 0..options.k_max {
        current = current.multiply_truncated(phi0, options.lambda_max);
        if current.is_zero() {
            break;
        }
        powers.push(flatten(&current));
    }
    powers
}

/// `Σ_{k > k_max} x^k / k!` for `x ≥ 0`.
pub(crate) fn exp_series_tail(x: f64, k_max: u32) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x > 700.0 {
        return f64::INFINITY;
    }
    let mut term = 1.0;
    for k in 1..=k_max {
        term *= x / k as f64;
    }
    let mut sum = 0.0;
    let mut k = k_max as f64 + 1.0;
    loop {
        term *= x / k;
        sum += term;
        if (k > x && term <= 1e-17 * sum) || term == 0.0 || !sum.is_finite() {
            return sum;
        }
        k += 1.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::GeneratorSystem;
    use crate::series::Frequency;
    use std::f64::consts::LN_2;
    use std::sync::Arc;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sys() -> Arc<GeneratorSystem> {
        GeneratorSystem::new(2, &[std::f64::consts::PI]).unwrap()
    }

    fn two(g: &Arc<GeneratorSystem>) -> GDSeries {
        GDSeries::monomial(g, Frequency::generator(0), c(1.0)).unwrap()
    }

    #[test]
    fn monomial_substitution() {
        let g = sys();
        let psi = Symbol::new(2, GDSeries::zero(&g)).unwrap();
        let r = compose(&two(&g), &psi, ComposeOptions::default()).unwrap();
        assert_eq!(r.series, GDSeries::monomial(&g, Frequency::from_pairs([(0, 2)]), c(1.0)).unwrap());
        assert_eq!(r.tail_bound, 0.0);
    }

    #[test]
    fn constant_shift() {
        let g = sys();
        let psi = Symbol::new(1, GDSeries::constant(&g, c(1.0))).unwrap();
        let r = compose(&two(&g), &psi, ComposeOptions::default()).unwrap();
        let got = r.series.coefficient(&Frequency::generator(0));
        assert!((got - c(0.5)).norm() < 1e-15);
        assert_eq!(r.series.len(), 1);
    }

    #[test]
    fn exponential_expansion_coefficients() {
        let g = sys();
        let psi = Symbol::new(1, two(&g)).unwrap();
        let opts = ComposeOptions {
            lambda_max: 2f64.powi(20),
            k_max: 40,
        };
        let r = compose_formal(&two(&g), &psi, opts).unwrap();
        let mut fact = 1.0;
        for k in 0..20u32 {
            if k > 0 {
                fact *= k as f64;
            }
            let want = (-LN_2).powi(k as i32) / fact;
            let got = r.series.coefficient(&Frequency::from_pairs([(0, k + 1)]));
            assert!((got.re - want).abs() < 1e-15, "k = {k}");
        }
        assert_eq!(r.series.len(), 20);
        assert!(r.tail_bound < 1e-15 && !r.warning);
    }

    #[test]
    fn rejected_symbol_is_a_class_error() {
        let g = sys();
        let psi = Symbol::new(1, two(&g)).unwrap();
        assert!(matches!(compose(&two(&g), &psi, ComposeOptions::default()), Err(Error::Class(_))));
    }

    #[test]
    fn dropped_base_reports_tail() {
        let g = sys();
        let psi = Symbol::new(1, GDSeries::constant(&g, c(1.0))).unwrap();
        let f = GDSeries::monomial(&g, Frequency::from_pairs([(0, 3)]), c(1.0)).unwrap();
        let r = compose(&f, &psi, ComposeOptions { lambda_max: 4.0, k_max: 40 }).unwrap();
        assert!(r.series.is_zero());
        assert!((r.truncation_tail - 0.125).abs() < 1e-15);
        assert!(r.warning);
    }

    #[test]
    fn small_k_max_warns() {
        let g = sys();
        let phi = GDSeries::constant(&g, c(1.0)).sub(&two(&g)).unwrap();
        let psi = Symbol::new(1, phi).unwrap();
        let f = GDSeries::monomial(&g, Frequency::generator(1), c(1.0)).unwrap();
        let r = compose(&f, &psi, ComposeOptions { lambda_max: 1e6, k_max: 3 }).unwrap();
        assert!(r.exp_tail > 1e-3 && r.warning);
    }

    #[test]
    fn exp_tail_values() {
        assert_eq!(exp_series_tail(0.0, 5), 0.0);
        // e - (1 + 1 + 1/2) = 0.218281828...
        assert!((exp_series_tail(1.0, 2) - (std::f64::consts::E - 2.5)).abs() < 1e-15);
        let x: f64 = 3.0;
        let head: f64 = (0..=10).map(|k| x.powi(k) / (1..=k).map(f64::from).product::<f64>()).sum();
        assert!((exp_series_tail(x, 10) - (x.exp() - head)).abs() < 1e-12);
    }
}

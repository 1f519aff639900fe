//! Composition symbols `ψ(s) = c0·s + φ(s)` with `c0 ≥ 1` and `φ` a
//! generalized Dirichlet polynomial.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{ExpSum, GDSeries};

/// Boundary samples below this are a clear violation of `Re φ ≥ 0`.
pub const REJECT_THRESHOLD: f64 = -1e-9;

/// Relative rounding allowance below zero that still counts as `Re φ ≥ 0`.
const ROUNDOFF: f64 = 1e-12;

pub const DEFAULT_GRID_POINTS: usize = 16384;
const GRID_PERIODS: f64 = 32.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Symbol {
    c0: u32,
    phi: GDSeries,
}

impl Symbol {
    /// `c0 = 0` symbols map into `C_{1/2}` and are not handled here.
    pub fn new(c0: u32, phi: GDSeries) -> Result<Self> {
        if c0 == 0 {
            return Err(Error::UnsupportedClass(
                "c0 = 0 symbols are not supported; c0 must be at least 1".into(),
            ));
        }
        Ok(Self { c0, phi })
    }

    pub fn c0(&self) -> u32 {
        self.c0
    }

    pub fn phi(&self) -> &GDSeries {
        &self.phi
    }

    /// `true` when `φ` has no non-constant term, so every vertical limit of
    /// `ψ` is `ψ` itself.
    pub fn is_character_free(&self) -> bool {
        self.phi.is_constant()
    }

    pub fn evaluate(&self, s: Complex64) -> Complex64 {
        s * self.c0 as f64 + self.phi.evaluate(s)
    }

    pub fn compile(&self) -> CompiledSymbol {
        let c1 = self.phi.constant_term();
        let rest = self.phi.non_constant();
        CompiledSymbol {
            c0: self.c0 as f64,
            c1,
            l1: rest.l1_norm(),
            rest: rest.exp_sum(),
        }
    }

    /// Twists `φ` by `χ`; `c0` is unchanged.
    pub fn vertical_limit(&self, chi: &crate::polytorus::Character) -> Result<Symbol> {
        Ok(Symbol {
            c0: self.c0,
            phi: self.phi.vertical_limit(chi)?,
        })
    }
}

/// `ψ` flattened for fast evaluation: `c0 s + c1 + Σ a_k exp(-L_k s)`.
#[derive(Debug, Clone)]
pub struct CompiledSymbol {
    pub c0: f64,
    pub c1: Complex64,
    /// `Σ |a_k|` over the non-constant terms.
    pub l1: f64,
    pub rest: ExpSum,
}

impl CompiledSymbol {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        s * self.c0 + self.c1 + self.rest.eval(s)
    }

    pub fn eval_with_derivative(&self, s: Complex64) -> (Complex64, Complex64) {
        let (f, df) = self.rest.eval_with_derivative(s);
        (s * self.c0 + self.c1 + f, df + self.c0)
    }

    /// Largest `ln λ` among the non-constant terms.
    pub fn max_log(&self) -> f64 {
        self.rest.logs.iter().copied().fold(0.0, f64::max)
    }
}

/// Boundary sampling parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub half_width: f64,
    pub points: usize,
}

impl Grid {
    /// `32` periods of the slowest beat among the frequencies of `φ`
    /// (including frequency 1), sampled at 16384 points.
    pub fn default_for(phi: &GDSeries) -> Self {
        let mut logs: Vec<f64> = phi.exp_sum().logs;
        logs.push(0.0);
        logs.sort_by(f64::total_cmp);
        logs.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        let gap = logs
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        let gap = if gap.is_finite() { gap } else { 1.0 };
        Self {
            half_width: GRID_PERIODS * 2.0 * PI / gap,
            points: DEFAULT_GRID_POINTS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RangeReport {
    /// Estimate (an upper bound) of `inf_{Re s > 0} Re φ(s)`.
    pub inf_re_phi: f64,
    /// `t` at which the boundary minimum was observed.
    pub argmin_t: f64,
    pub grid_t: f64,
    pub grid_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Member,
    Rejected,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassVerdict {
    pub verdict: Membership,
    pub range: RangeReport,
}

/// Estimates `inf Re φ` over the closed right half-plane.
///
/// `Re φ` is a bounded harmonic function, so its infimum over `Re s ≥ 0` is
/// the infimum of its boundary values `Re φ(it)`. Those are sampled on a
/// uniform grid over `[-T, T]`; the lowest local minima are then refined by
/// golden-section search.
pub fn range_infimum(psi: &Symbol, grid: Grid) -> Result<RangeReport> {
    if grid.points < 100 {
        return Err(Error::Config(format!("grid_points must be at least 100 (got {})", grid.points)));
    }
    if !(grid.half_width > 0.0) || !grid.half_width.is_finite() {
        return Err(Error::Config(format!("grid_T must be positive and finite (got {})", grid.half_width)));
    }
    let phi = psi.phi.exp_sum();
    let re_phi = |t: f64| phi.eval(Complex64::new(0.0, t)).re;
    let (t_lo, t_hi) = (-grid.half_width, grid.half_width);
    let h = (t_hi - t_lo) / (grid.points - 1) as f64;
    let samples: Vec<f64> = (0..grid.points).map(|i| re_phi(t_lo + h * i as f64)).collect();

    let mut minima: Vec<usize> = (0..samples.len())
        .filter(|&i| {
            let left = i == 0 || samples[i] <= samples[i - 1];
            let right = i + 1 == samples.len() || samples[i] <= samples[i + 1];
            left && right
        })
        .collect();
    minima.sort_by(|&a, &b| samples[a].total_cmp(&samples[b]));
    minima.truncate(16);

    let mut best_t = t_lo;
    let mut best = f64::INFINITY;
    for i in minima {
        let a = t_lo + h * i.saturating_sub(1) as f64;
        let b = (t_lo + h * (i + 1) as f64).min(t_hi);
        let (t, v) = golden_min(re_phi, a, b);
        let (t, v) = if samples[i] < v { (t_lo + h * i as f64, samples[i]) } else { (t, v) };
        if v < best {
            best = v;
            best_t = t;
        }
    }
    Ok(RangeReport {
        inf_re_phi: best,
        argmin_t: best_t,
        grid_t: grid.half_width,
        grid_points: grid.points,
    })
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-13 * (1.0 + a.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Numerical membership test for `φ(C_0) ⊂ C_0` (or `φ ≡ iτ`).
///
/// * constant `φ`: member iff `Re φ ≥ 0`;
/// * otherwise with `m` the refined boundary minimum of `Re φ`: rejected if
///   `m < -1e-9`, member if `m` is non-negative up to rounding, inconclusive
///   in between.
pub fn validate_symbol(psi: &Symbol, grid: Grid) -> Result<ClassVerdict> {
    let range = range_infimum(psi, grid)?;
    let verdict = if psi.phi.is_constant() {
        if psi.phi.constant_term().re >= 0.0 {
            Membership::Member
        } else {
            Membership::Rejected
        }
    } else {
        let m = range.inf_re_phi;
        let roundoff = ROUNDOFF * (1.0 + psi.phi.l1_norm());
        if m < REJECT_THRESHOLD {
            Membership::Rejected
        } else if m >= -roundoff {
            Membership::Member
        } else {
            Membership::Inconclusive
        }
    };
    Ok(ClassVerdict { verdict, range })
}

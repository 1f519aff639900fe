//! Nevanlinna-type counting functions
//!
//! ```text
//! N_ψ(w) = Σ_{ψ(s) = w, Re s > 0} Re s,
//! N_ψ(w, T, σ_cut) = (π/T) Σ_{ψ(s) = w, |Im s| < T, Re s > σ_cut} Re s,
//! ```
//!
//! with roots counted with multiplicity. Roots are isolated by the argument
//! principle on an a priori rectangle and polished by Newton's method.
//!
//! Search region: with `n0 = Σ|a_n|` over the non-constant terms of `φ`,
//! `Re ψ(s) ≥ c0 σ + Re c1 - n0` and `|Im ψ(s) - c0 t - Im c1| ≤ n0` on
//! `Re s ≥ 0`, so every root of `ψ = w` there has
//! `σ ≤ (Re w - Re c1 + n0)/c0` and `|t - (Im w - Im c1)/c0| ≤ n0/c0`. This
//! does not use `φ(ℂ₀) ⊂ ℂ₀`, so it also covers symbols outside the class.

mod contour;
mod locate;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symbol::{CompiledSymbol, Symbol};

pub use contour::{winding_number, WindingFailure};
pub use locate::newton;

/// Roots with `Re s` at or below this are on the boundary, not in `ℂ₀`.
pub const SIGMA_FLOOR: f64 = 1e-9;
/// Diameter below which a box holding several roots is reported as a cluster.
pub const DEFAULT_TOL: f64 = 1e-9;

const SIGMA_PAD: f64 = 0.01;
const T_PAD: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchRectangle {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub t_min: f64,
    pub t_max: f64,
}

impl SearchRectangle {
    pub fn new(sigma_min: f64, sigma_max: f64, t_min: f64, t_max: f64) -> Result<Self> {
        let all_finite = [sigma_min, sigma_max, t_min, t_max].iter().all(|v| v.is_finite());
        if !all_finite || !(sigma_min < sigma_max) || !(t_min < t_max) {
            return Err(Error::Config(format!(
                "invalid rectangle [{sigma_min}, {sigma_max}] x [{t_min}, {t_max}]"
            )));
        }
        Ok(Self {
            sigma_min,
            sigma_max,
            t_min,
            t_max,
        })
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.sigma_min + self.sigma_max),
            0.5 * (self.t_min + self.t_max),
        )
    }

    pub fn diameter(&self) -> f64 {
        (self.sigma_max - self.sigma_min).hypot(self.t_max - self.t_min)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (self.sigma_min..=self.sigma_max).contains(&z.re) && (self.t_min..=self.t_max).contains(&z.im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Preimage {
    #[serde(with = "crate::io::complex")]
    pub root: Complex64,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountingReport {
    #[serde(with = "crate::io::complex")]
    pub w: Complex64,
    /// Counted preimages, sorted by `(Re, Im)`.
    pub preimages: Vec<Preimage>,
    pub value: f64,
    /// Rectangle actually integrated over (after any nudging); `None` when
    /// the a priori region is empty.
    pub rectangle: Option<SearchRectangle>,
    /// `max |ψ(r) - w|` over counted roots.
    pub residual_max: f64,
    /// Roots found in the rectangle but outside `Re s > max(1e-9, σ_cut)`
    /// or `|Im s| < T`.
    pub excluded: u32,
    pub window: Option<f64>,
    pub sigma_cut: f64,
}

/// Number of zeros of `ψ - w` in `rect`, with multiplicity.
pub fn count_roots_rectangle(psi: &Symbol, w: Complex64, rect: &SearchRectangle) -> Result<u32> {
    locate::count_with_nudges(&psi.compile(), w, rect).map(|(n, _)| n)
}

/// All zeros of `ψ - w` in `rect` (after any nudging), with multiplicity.
pub fn locate_preimages(psi: &Symbol, w: Complex64, rect: &SearchRectangle, tol: f64) -> Result<Vec<Preimage>> {
    let compiled = psi.compile();
    let (n, used) = locate::count_with_nudges(&compiled, w, rect)?;
    let mut roots = locate::isolate(&compiled, w, &used, n, tol)?;
    sort_preimages(&mut roots);
    Ok(roots)
}

/// `N_ψ(w)`.
pub fn counting_function(psi: &Symbol, w: Complex64) -> Result<CountingReport> {
    if !(w.re > 0.0) {
        return Err(Error::Domain("Re w must be positive".into()));
    }
    counting_compiled(&psi.compile(), w, None, 0.0)
}

/// `N_ψ(w, T, σ_cut)`, including the factor `π/T`.
pub fn counting_function_truncated(psi: &Symbol, w: Complex64, t: f64, sigma_cut: f64) -> Result<CountingReport> {
    if !(w.re > 0.0) {
        return Err(Error::Domain("Re w must be positive".into()));
    }
    check_window(t, sigma_cut)?;
    counting_compiled(&psi.compile(), w, Some(t), sigma_cut)
}

fn check_window(t: f64, sigma_cut: f64) -> Result<()> {
    if !(t > 0.0) {
        return Err(Error::Config(format!("T must be positive (got {t})")));
    }
    if !(sigma_cut >= 0.0) {
        return Err(Error::Config(format!("sigma_cut must be non-negative (got {sigma_cut})")));
    }
    Ok(())
}

/// Same sum with no restriction on `w`. Only meaningful outside `ℂ₀` for
/// symbols whose image leaves `ℂ₀`.
pub fn counting_function_any(psi: &CompiledSymbol, w: Complex64, window: Option<f64>) -> Result<CountingReport> {
    if let Some(t) = window {
        check_window(t, 0.0)?;
    }
    counting_compiled(psi, w, window, 0.0)
}

/// The a priori region holding every counted root, or `None` if it is empty.
pub fn search_rectangle(psi: &CompiledSymbol, w: Complex64, window: Option<f64>, sigma_cut: f64) -> Option<SearchRectangle> {
    let sigma_min = SIGMA_FLOOR.max(sigma_cut - SIGMA_PAD);
    let sigma_max = (w.re - psi.c1.re + psi.l1) / psi.c0 + SIGMA_PAD;
    let center = (w.im - psi.c1.im) / psi.c0;
    let half = psi.l1 / psi.c0 + T_PAD;
    let (mut t_min, mut t_max) = (center - half, center + half);
    if let Some(t) = window {
        t_min = t_min.max(-t - SIGMA_PAD);
        t_max = t_max.min(t + SIGMA_PAD);
    }
    SearchRectangle::new(sigma_min, sigma_max, t_min, t_max).ok()
}

pub(crate) fn counting_compiled(
    psi: &CompiledSymbol,
    w: Complex64,
    window: Option<f64>,
    sigma_cut: f64,
) -> Result<CountingReport> {
    let mut report = CountingReport {
        w,
        preimages: Vec::new(),
        value: 0.0,
        rectangle: None,
        residual_max: 0.0,
        excluded: 0,
        window,
        sigma_cut,
    };
    let Some(rect) = search_rectangle(psi, w, window, sigma_cut) else {
        return Ok(report);
    };
    let (n, used) = locate::count_with_nudges(psi, w, &rect)?;
    report.rectangle = Some(used);
    let roots = locate::isolate(psi, w, &used, n, DEFAULT_TOL)?;
    let floor = SIGMA_FLOOR.max(sigma_cut);
    for p in roots {
        let inside = p.root.re > floor && window.is_none_or(|t| p.root.im.abs() < t);
        if inside {
            report.preimages.push(p);
        } else {
            report.excluded += p.multiplicity;
        }
    }
    sort_preimages(&mut report.preimages);
    report.residual_max = report
        .preimages
        .iter()
        .map(|p| (psi.eval(p.root) - w).norm())
        .fold(0.0, f64::max);
    let sum: f64 = report.preimages.iter().map(|p| p.multiplicity as f64 * p.root.re).fold(0.0, |a, b| a + b);
    report.value = match window {
        None => sum,
        Some(t) => std::f64::consts::PI / t * sum,
    };
    Ok(report)
}

fn sort_preimages(roots: &mut [Preimage]) {
    roots.sort_by(|a, b| a.root.re.total_cmp(&b.root.re).then(a.root.im.total_cmp(&b.root.im)));
}

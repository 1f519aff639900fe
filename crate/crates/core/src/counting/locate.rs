//! Root isolation by recursive quadrisection and Newton polishing.

use num_complex::Complex64;
use rand::Rng;

use super::contour::{winding_number, WindingFailure};
use super::{Preimage, SearchRectangle};
use crate::error::{Error, Result};
use crate::polytorus::character_rng;
use crate::symbol::CompiledSymbol;

pub const MAX_DEPTH: u32 = 60;
const SPLIT_TRIES: u64 = 8;
const NUDGE_TRIES: u64 = 8;
const SPLIT_JITTER: f64 = 0.05;

/// Deterministic seed from the bit patterns of the inputs.
pub(crate) fn seed_of(values: &[f64]) -> u64 {
    values.iter().fold(0x9e37_79b9_7f4a_7c15u64, |h, v| {
        let mut x = h ^ v.to_bits();
        x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        x ^ (x >> 31)
    })
}

fn rect_seed(w: Complex64, r: &SearchRectangle) -> u64 {
    seed_of(&[w.re, w.im, r.sigma_min, r.sigma_max, r.t_min, r.t_max])
}

fn describe(f: WindingFailure) -> String {
    match f {
        WindingFailure::TooClose(z) => format!("|ψ - w| < 1e-7 at {z}"),
        WindingFailure::NonInteger(n) => format!("winding integral {n} is not an integer"),
    }
}

/// Winding number on `rect`, pushing its edges outward by deterministic
/// pseudo-random amounts in `[ν, 10ν]` (`ν = 1e-4 · longest side`) while a
/// root sits on the contour. Returns the count and the rectangle used.
pub fn count_with_nudges(psi: &CompiledSymbol, w: Complex64, rect: &SearchRectangle) -> Result<(u32, SearchRectangle)> {
    let mut current = *rect;
    let mut last = None;
    let nu = 1e-4 * (rect.sigma_max - rect.sigma_min).max(rect.t_max - rect.t_min);
    let mut rng = character_rng(rect_seed(w, rect), 0);
    for _ in 0..=NUDGE_TRIES {
        match winding_number(psi, w, &current) {
            Ok(n) => return Ok((n, current)),
            Err(f) => last = Some(f),
        }
        let mut step = || nu * rng.random_range(1.0..10.0);
        current = SearchRectangle {
            sigma_min: current.sigma_min - step(),
            sigma_max: current.sigma_max + step(),
            t_min: current.t_min - step(),
            t_max: current.t_max + step(),
        };
    }
    Err(match last {
        Some(f @ WindingFailure::TooClose(_)) => Error::Contour(format!(
            "{} after {NUDGE_TRIES} nudges of {rect:?}",
            describe(f)
        )),
        Some(f) => Error::Quadrature(format!("{} after {NUDGE_TRIES} nudges of {rect:?}", describe(f))),
        None => unreachable!(),
    })
}

/// Finds all roots of `ψ - w` inside `rect`, which must already be known to
/// contain `count` of them (with multiplicity).
pub fn isolate(psi: &CompiledSymbol, w: Complex64, rect: &SearchRectangle, count: u32, tol: f64) -> Result<Vec<Preimage>> {
    let mut out = Vec::new();
    isolate_into(psi, w, rect, count, tol, 0, &mut out)?;
    Ok(out)
}

fn isolate_into(
    psi: &CompiledSymbol,
    w: Complex64,
    rect: &SearchRectangle,
    count: u32,
    tol: f64,
    depth: u32,
    out: &mut Vec<Preimage>,
) -> Result<()> {
    if count == 0 {
        return Ok(());
    }
    if count == 1 {
        if let Some(root) = newton(psi, w, rect.center(), 1.0).filter(|z| rect.contains(*z)) {
            out.push(Preimage { root, multiplicity: 1 });
            return Ok(());
        }
    } else if rect.diameter() < tol {
        let root = newton(psi, w, rect.center(), count as f64)
            .filter(|z| rect.contains(*z))
            .unwrap_or_else(|| rect.center());
        out.push(Preimage {
            root,
            multiplicity: count,
        });
        return Ok(());
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Subdivision(format!(
            "depth {MAX_DEPTH} reached with {count} root(s) left in {rect:?}"
        )));
    }
    let children = split(psi, w, rect, count)?;
    for (child, n) in children {
        isolate_into(psi, w, &child, n, tol, depth + 1, out)?;
    }
    Ok(())
}

/// Quadrisection at jittered split points; retried until every child
/// integral succeeds and the child counts add up.
fn split(psi: &CompiledSymbol, w: Complex64, rect: &SearchRectangle, parent: u32) -> Result<Vec<(SearchRectangle, u32)>> {
    let seed = rect_seed(w, rect);
    let mut failure = String::new();
    'tries: for attempt in 0..SPLIT_TRIES {
        let mut rng = character_rng(seed, attempt);
        let fs = 0.5 + rng.random_range(-SPLIT_JITTER..SPLIT_JITTER);
        let ft = 0.5 + rng.random_range(-SPLIT_JITTER..SPLIT_JITTER);
        let sm = rect.sigma_min + fs * (rect.sigma_max - rect.sigma_min);
        let tm = rect.t_min + ft * (rect.t_max - rect.t_min);
        let quads = [
            (rect.sigma_min, sm, rect.t_min, tm),
            (sm, rect.sigma_max, rect.t_min, tm),
            (rect.sigma_min, sm, tm, rect.t_max),
            (sm, rect.sigma_max, tm, rect.t_max),
        ];
        let mut children = Vec::with_capacity(4);
        for (s0, s1, t0, t1) in quads {
            let child = SearchRectangle {
                sigma_min: s0,
                sigma_max: s1,
                t_min: t0,
                t_max: t1,
            };
            match winding_number(psi, w, &child) {
                Ok(n) => children.push((child, n)),
                Err(f) => {
                    failure = describe(f);
                    continue 'tries;
                }
            }
        }
        let total: u32 = children.iter().map(|c| c.1).sum();
        if total == parent {
            return Ok(children);
        }
        failure = format!("child counts sum to {total}, parent has {parent}");
    }
    Err(Error::Subdivision(format!(
        "could not split {rect:?} after {SPLIT_TRIES} tries: {failure}"
    )))
}

/// Damped (modified for multiplicity `m`) Newton iteration on `ψ - w`.
pub fn newton(psi: &CompiledSymbol, w: Complex64, start: Complex64, m: f64) -> Option<Complex64> {
    let mut s = start;
    let (g, mut dg) = psi.eval_with_derivative(s);
    let mut g = g - w;
    for _ in 0..200 {
        if g.norm() == 0.0 {
            return Some(s);
        }
        if dg.norm() == 0.0 || !dg.is_finite() {
            return None;
        }
        let step = g / dg * m;
        let mut lambda = 1.0;
        let (mut next, mut gn, mut dn);
        loop {
            next = s - step * lambda;
            let (v, d) = psi.eval_with_derivative(next);
            gn = v - w;
            dn = d;
            if gn.norm() < g.norm() || lambda < 1e-6 {
                break;
            }
            lambda *= 0.5;
        }
        let moved = (next - s).norm();
        s = next;
        g = gn;
        dg = dn;
        if moved <= 4.0 * f64::EPSILON * (1.0 + s.norm()) {
            break;
        }
    }
    (s.is_finite() && g.norm() < 1e-11 * (1.0 + w.norm())).then_some(s)
}

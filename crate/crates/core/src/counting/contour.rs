//! Winding numbers of `ψ - w` around rectangles.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::SearchRectangle;
use crate::quadrature::adaptive_gk;
use crate::symbol::CompiledSymbol;

/// Smallest `|ψ - w|` tolerated at a quadrature node.
pub const PROXIMITY: f64 = 1e-7;
/// Absolute accuracy target on the winding integral.
pub const WINDING_TOL: f64 = 1e-8;
/// Largest distance to an integer accepted for the winding number.
pub const INTEGER_TOL: f64 = 1e-6;

const MAX_DEPTH: u32 = 28;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindingFailure {
    /// `|ψ - w| < 1e-7` at some point of the contour.
    TooClose(Complex64),
    /// The integral did not settle on an integer.
    NonInteger(Complex64),
}

/// `(1/2πi) ∮ ψ'/(ψ - w)` around `rect`, counterclockwise.
pub fn winding_number(psi: &CompiledSymbol, w: Complex64, rect: &SearchRectangle) -> Result<u32, WindingFailure> {
    let SearchRectangle {
        sigma_min: s0,
        sigma_max: s1,
        t_min: t0,
        t_max: t1,
    } = *rect;
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let edges = [
        (Complex64::new(s0, t0), one, s1 - s0),
        (Complex64::new(s1, t0), i, t1 - t0),
        (Complex64::new(s1, t1), -one, s1 - s0),
        (Complex64::new(s0, t1), -i, t1 - t0),
    ];
    let perimeter = 2.0 * ((s1 - s0) + (t1 - t0));
    let rate = 1.0 + psi.max_log();
    let mut total = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for (start, dir, len) in edges {
        let integrand = |x: f64| {
            let z = start + dir * x;
            let (g, dg) = psi.eval_with_derivative(z);
            let g = g - w;
            if g.norm() < PROXIMITY {
                return Err(WindingFailure::TooClose(z));
            }
            Ok(dg / g * dir)
        };
        let panels = (len * rate * 2.0).ceil().max(1.0) as usize;
        let r = adaptive_gk(integrand, 0.0, len, panels, WINDING_TOL * len / perimeter, MAX_DEPTH)?;
        error += r.error;
        total += r.value;
    }
    let n = total / Complex64::new(0.0, 2.0 * PI);
    let k = n.re.round();
    // Panels near a close root can stall at roundoff level without meeting
    // their share; the summed estimate still has to be far below the
    // rounding tolerance.
    if error / (2.0 * PI) > 0.1 * INTEGER_TOL || (n.re - k).abs() > INTEGER_TOL || n.im.abs() > INTEGER_TOL || k < 0.0 {
        return Err(WindingFailure::NonInteger(n));
    }
    Ok(k as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::GeneratorSystem;
    use crate::series::{Frequency, GDSeries};
    use crate::symbol::Symbol;

    fn rect(s0: f64, s1: f64, t0: f64, t1: f64) -> SearchRectangle {
        SearchRectangle::new(s0, s1, t0, t1).unwrap()
    }

    #[test]
    fn identity_symbol() {
        let g = GeneratorSystem::new(1, &[]).unwrap();
        let psi = Symbol::new(1, GDSeries::zero(&g)).unwrap().compile();
        let w = Complex64::new(0.5, 0.0);
        assert_eq!(winding_number(&psi, w, &rect(0.4, 0.6, -0.1, 0.1)), Ok(1));
        assert_eq!(winding_number(&psi, w, &rect(0.6, 0.8, -0.1, 0.1)), Ok(0));
        assert!(matches!(
            winding_number(&psi, w, &rect(0.5, 0.8, -0.1, 0.1)),
            Err(WindingFailure::TooClose(_))
        ));
    }

    #[test]
    fn oscillating_symbol() {
        let g = GeneratorSystem::new(1, &[]).unwrap();
        let phi = GDSeries::from_terms(
            &g,
            [
                (Frequency::one(), Complex64::new(1.0, 0.0)),
                (Frequency::generator(0), Complex64::new(-1.0, 0.0)),
            ],
        )
        .unwrap();
        let psi = Symbol::new(1, phi).unwrap().compile();
        let w = Complex64::new(1.2, 0.0);
        assert_eq!(winding_number(&psi, w, &rect(0.7, 0.9, -0.1, 0.1)), Ok(1));
    }
}

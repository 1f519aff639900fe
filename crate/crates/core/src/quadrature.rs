//! Quadrature rules: Gauss–Legendre, adaptive Gauss–Kronrod (7/15) for
//! complex integrands, and composite Simpson.

use std::f64::consts::PI;

use num_complex::Complex64;

// Kronrod abscissae on [0, 1]; odd entries (1, 3, 5, 7) are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod panel on `[a, b]`: `(estimate, |K15 - G7|, ∫|f|)`.
pub fn gk15<E, F>(f: &mut F, a: f64, b: f64) -> Result<(Complex64, f64, f64), E>
where
    F: FnMut(f64) -> Result<Complex64, E>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    let mut abs = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let (l, r) = (f(c - dx)?, f(c + dx)?);
        let s = l + r;
        abs += (l.norm() + r.norm()) * WGK[j];
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    Ok((k * h, ((k - g) * h).norm(), abs * h.abs()))
}

/// Outcome of [`adaptive_gk`].
#[derive(Debug, Clone, Copy)]
pub struct Adaptive {
    pub value: Complex64,
    pub error: f64,
    /// `false` if some panel hit the depth limit before meeting its share of
    /// the tolerance.
    pub converged: bool,
}

/// Adaptive Gauss–Kronrod on `[a, b]` starting from `panels` equal pieces.
/// Each panel is bisected until its error estimate is below its
/// length-proportional share of `tol`, or `max_depth` is reached. A panel
/// whose error is already at roundoff level relative to `∫|f|` is accepted.
pub fn adaptive_gk<E, F>(mut f: F, a: f64, b: f64, panels: usize, tol: f64, max_depth: u32) -> Result<Adaptive, E>
where
    F: FnMut(f64) -> Result<Complex64, E>,
{
    let panels = panels.max(1);
    let len = b - a;
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut converged = true;
    let mut stack: Vec<(f64, f64, u32)> = (0..panels)
        .rev()
        .map(|i| {
            let lo = a + len * i as f64 / panels as f64;
            let hi = a + len * (i + 1) as f64 / panels as f64;
            (lo, hi, 0)
        })
        .collect();
    while let Some((lo, hi, depth)) = stack.pop() {
        let (v, e, abs) = gk15(&mut f, lo, hi)?;
        let share = (tol * (hi - lo).abs() / len.abs()).max(50.0 * f64::EPSILON * abs);
        if e <= share || depth >= max_depth {
            if e > share {
                converged = false;
            }
            value += v;
            error += e;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    Ok(Adaptive {
        value,
        error,
        converged,
    })
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, z);
        if d != 0.0 {
            dp = d;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, dp)
}

/// Composite Gauss–Legendre nodes on `[a, b]`: `panels` equal panels of
/// `order` points each, as `(node, weight)` pairs.
pub fn composite_gauss(a: f64, b: f64, panels: usize, order: usize) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    (0..panels)
        .flat_map(|p| {
            let c = a + h * (p as f64 + 0.5);
            x.iter()
                .zip(&w)
                .map(move |(&xi, &wi)| (c + 0.5 * h * xi, 0.5 * h * wi))
        })
        .collect()
}

/// Composite Simpson rule with `intervals` (rounded up to even) subintervals.
pub fn simpson<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, intervals: usize) -> f64 {
    let n = (intervals.max(2) + 1) & !1;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += weight * f(a + h * i as f64);
    }
    sum * h / 3.0
}

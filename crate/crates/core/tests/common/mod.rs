//! Independent oracles shared by the integration tests and the acceptance
//! run. Nothing here calls the counting engine.

#![allow(dead_code)]

use std::f64::consts::PI;
use std::sync::Arc;

use dhl::{Complex64, Frequency, GDSeries, GeneratorSystem, Symbol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn system() -> Arc<GeneratorSystem> {
    GeneratorSystem::new(2, &[PI]).unwrap()
}

/// `c0·s + Σ a_k n_k^{-s}` from `(n, a)` pairs over ordinary primes, `n = 1`
/// for the constant.
pub fn symbol(g: &Arc<GeneratorSystem>, c0: u32, terms: &[(u64, f64)]) -> Symbol {
    let phi = GDSeries::from_terms(
        g,
        terms.iter().map(|&(n, a)| {
            let freq = if n == 1 {
                Frequency::one()
            } else {
                Frequency::generator(g.prime_index(n).unwrap())
            };
            (freq, c(a))
        }),
    )
    .unwrap();
    Symbol::new(c0, phi).unwrap()
}

/// The symbol suite: s, 2s, s+1, s+2^-s, 1+s-2^-s, 2s+1+2^-s/2+3^-s/4.
pub fn suite(g: &Arc<GeneratorSystem>) -> Vec<(&'static str, Symbol)> {
    vec![
        ("s", symbol(g, 1, &[])),
        ("2s", symbol(g, 2, &[])),
        ("s+1", symbol(g, 1, &[(1, 1.0)])),
        ("s+2^-s", symbol(g, 1, &[(2, 1.0)])),
        ("1+s-2^-s", symbol(g, 1, &[(1, 1.0), (2, -1.0)])),
        ("2s+1+2^-s/2+3^-s/4", symbol(g, 2, &[(1, 1.0), (2, 0.5), (3, 0.25)])),
    ]
}

/// `n` points with `Re w ∈ (0, 1]`, `|Im w| ≤ 5`.
pub fn random_ws(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Complex64::new(1.0 - rng.random::<f64>(), rng.random_range(-5.0..=5.0)))
        .collect()
}

/// Plain evaluation of `ψ` and `ψ'` straight from the coefficients.
pub struct Direct {
    c0: f64,
    terms: Vec<(f64, Complex64)>,
}

impl Direct {
    pub fn new(psi: &Symbol) -> Self {
        let g = psi.phi().system();
        Self {
            c0: psi.c0() as f64,
            terms: psi.phi().terms().map(|(f, a)| (f.log_value(g), *a)).collect(),
        }
    }

    /// Same symbol with every non-constant coefficient multiplied by
    /// `e^{iθ·k}` where `k` is the exponent of the generator with index 0.
    pub fn rotated(psi: &Symbol, theta: f64) -> Self {
        let g = psi.phi().system();
        Self {
            c0: psi.c0() as f64,
            terms: psi
                .phi()
                .terms()
                .map(|(f, a)| (f.log_value(g), a * Complex64::from_polar(1.0, theta * f.exponent(0) as f64)))
                .collect(),
        }
    }

    pub fn eval(&self, s: Complex64) -> (Complex64, Complex64) {
        let mut v = s * self.c0;
        let mut d = c(self.c0);
        for &(l, a) in &self.terms {
            let e = a * (-s * l).exp();
            v += e;
            d -= e * l;
        }
        (v, d)
    }

    fn constant(&self) -> Complex64 {
        self.terms.iter().filter(|(l, _)| *l == 0.0).map(|t| t.1).sum()
    }

    fn spread(&self) -> f64 {
        self.terms.iter().filter(|(l, _)| *l != 0.0).map(|t| t.1.norm()).sum()
    }

    fn lipschitz(&self) -> f64 {
        self.c0 + self.terms.iter().map(|(l, a)| l * a.norm()).sum::<f64>()
    }
}

/// Roots of `ψ(s) = w` with `Re s > 1e-9`, by a grid scan of `|ψ - w|` over
/// the disc `|c0·s + c1 - w| ≤ Σ|a|` (the only place roots can live),
/// followed by Newton from every grid-local minimum.
pub fn grid_scan_roots(psi: &Direct, w: Complex64, step: f64) -> Vec<Complex64> {
    let centre = (w - psi.constant()) / psi.c0;
    let radius = psi.spread() / psi.c0 + 0.01;
    let (re_lo, re_hi) = (0.0, centre.re + radius);
    if re_hi <= 0.0 {
        return Vec::new();
    }
    let (im_lo, im_hi) = (centre.im - radius, centre.im + radius);
    let nx = ((re_hi - re_lo) / step).ceil() as usize + 1;
    let ny = ((im_hi - im_lo) / step).ceil() as usize + 1;
    let at = |i: usize, j: usize| Complex64::new(re_lo + step * i as f64, im_lo + step * j as f64);
    let grid: Vec<f64> = (0..nx * ny).map(|k| (psi.eval(at(k / ny, k % ny)).0 - w).norm()).collect();
    let gate = 2.0 * psi.lipschitz() * step;

    let mut roots: Vec<Complex64> = Vec::new();
    for i in 0..nx {
        for j in 0..ny {
            let v = grid[i * ny + j];
            if v > gate {
                continue;
            }
            let mut minimum = true;
            for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    let (a, b) = (i as i64 + di, j as i64 + dj);
                    if (di, dj) == (0, 0) || a < 0 || b < 0 || a >= nx as i64 || b >= ny as i64 {
                        continue;
                    }
                    if grid[a as usize * ny + b as usize] < v {
                        minimum = false;
                    }
                }
            }
            if !minimum {
                continue;
            }
            if let Some(r) = newton(psi, w, at(i, j)) {
                if r.re > 1e-9 && roots.iter().all(|q| (q - r).norm() > 1e-7) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots
}

fn newton(psi: &Direct, w: Complex64, mut s: Complex64) -> Option<Complex64> {
    for _ in 0..60 {
        let (v, d) = psi.eval(s);
        let step = (v - w) / d;
        s -= step;
        if step.norm() < 1e-15 * (1.0 + s.norm()) {
            break;
        }
    }
    let r = (psi.eval(s).0 - w).norm();
    (r < 1e-11 * (1.0 + w.norm()) && s.re.is_finite()).then_some(s)
}

/// `Σ Re s` over the oracle roots.
pub fn oracle_counting(psi: &Direct, w: Complex64, step: f64) -> f64 {
    grid_scan_roots(psi, w, step).iter().map(|r| r.re).sum()
}

/// `(1/2π) ∫ N_{ψ_θ}(w) dθ` over the rotations of the coefficient of
/// generator 0, by Gauss–Legendre on `[a, b] ⊂ [-π, π]` with `nodes`
/// points (the integrand is assumed to vanish outside `[a, b]`).
pub fn torus_average(psi: &Symbol, w: Complex64, a: f64, b: f64, nodes: usize, step: f64) -> f64 {
    let (x, wt) = gauss_legendre(nodes);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    x.iter()
        .zip(&wt)
        .map(|(&x, &wx)| wx * half * oracle_counting(&Direct::rotated(psi, mid + half * x), w, step))
        .sum::<f64>()
        / (2.0 * PI)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Root of an increasing function on `[a, b]` by bisection.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if f(m) > 0.0 {
            b = m;
        } else {
            a = m;
        }
    }
    0.5 * (a + b)
}

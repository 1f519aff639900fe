//! Generalized Dirichlet polynomials `Σ a_n λ_n^{-s}` over a generator system.
//!
//! Frequencies are stored as exact exponent vectors, so products never merge
//! two different frequencies through rounding. Floating `λ` values are only
//! formed for evaluation and ordering.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::generators::GeneratorSystem;

/// Coefficients with modulus below this are treated as exact zeros.
pub const ZERO_PRUNE: f64 = 1e-300;

/// Slack on `ln λ_max` so that `4 ≤ 4` survives rounding in `exp(2 ln 2)`.
const TRUNCATE_LOG_SLACK: f64 = 1e-12;

/// A frequency `λ = Π g_i^{e_i}`, stored as sorted `(generator index, exponent)`
/// pairs with no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Frequency(Vec<(usize, u32)>);

impl Frequency {
    /// The frequency `1` (empty exponent map).
    pub fn one() -> Self {
        Self(Vec::new())
    }

    /// A single generator to the first power.
    pub fn generator(index: usize) -> Self {
        Self(vec![(index, 1)])
    }

    /// Canonicalizes arbitrary `(index, exponent)` pairs: duplicates are
    /// summed and zero exponents dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (i, e) in pairs {
            *map.entry(i).or_insert(0u32) += e;
        }
        Self(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn exponents(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0
            .binary_search_by_key(&index, |&(i, _)| i)
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Product of frequencies: exponent vectors add.
    pub fn mul(&self, other: &Frequency) -> Frequency {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Frequency(out)
    }

    /// `λ^k`.
    pub fn pow(&self, k: u32) -> Frequency {
        if k == 0 {
            return Frequency::one();
        }
        Frequency(self.0.iter().map(|&(i, e)| (i, e * k)).collect())
    }

    pub fn check(&self, system: &GeneratorSystem) -> Result<()> {
        self.0.iter().try_for_each(|&(i, _)| system.check_index(i))
    }

    /// `ln λ`. Indices must be valid for `system`.
    pub fn log_value(&self, system: &GeneratorSystem) -> f64 {
        self.0.iter().map(|&(i, e)| e as f64 * system.log(i)).sum()
    }

    /// `λ` as a floating value.
    pub fn value(&self, system: &GeneratorSystem) -> Result<f64> {
        self.check(system)?;
        Ok(self
            .0
            .iter()
            .map(|&(i, e)| system.value(i).powi(e as i32))
            .product())
    }
}

/// A finitely supported generalized Dirichlet series.
#[derive(Clone)]
pub struct GDSeries {
    system: Arc<GeneratorSystem>,
    terms: BTreeMap<Frequency, Complex64>,
}

impl fmt::Debug for GDSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for (freq, c) in self.sorted_terms() {
            list.entry(&(self.frequency_label(freq), c));
        }
        list.finish()
    }
}

impl PartialEq for GDSeries {
    fn eq(&self, other: &Self) -> bool {
        same_system(&self.system, &other.system) && self.terms == other.terms
    }
}

fn same_system(a: &Arc<GeneratorSystem>, b: &Arc<GeneratorSystem>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn keep(c: Complex64) -> bool {
    c.norm() >= ZERO_PRUNE
}

impl GDSeries {
    pub fn zero(system: &Arc<GeneratorSystem>) -> Self {
        Self {
            system: Arc::clone(system),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(system: &Arc<GeneratorSystem>, c: Complex64) -> Self {
        Self::monomial_unchecked(system, Frequency::one(), c)
    }

    /// `c · λ^{-s}`.
    pub fn monomial(system: &Arc<GeneratorSystem>, freq: Frequency, c: Complex64) -> Result<Self> {
        freq.check(system)?;
        Ok(Self::monomial_unchecked(system, freq, c))
    }

    fn monomial_unchecked(system: &Arc<GeneratorSystem>, freq: Frequency, c: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        if keep(c) {
            terms.insert(freq, c);
        }
        Self {
            system: Arc::clone(system),
            terms,
        }
    }

    /// Builds a series from `(frequency, coefficient)` pairs; repeated
    /// frequencies are summed.
    pub fn from_terms(
        system: &Arc<GeneratorSystem>,
        terms: impl IntoIterator<Item = (Frequency, Complex64)>,
    ) -> Result<Self> {
        let mut out = Self::zero(system);
        for (freq, c) in terms {
            freq.check(system)?;
            out.accumulate(freq, c);
        }
        out.prune();
        Ok(out)
    }

    pub(crate) fn accumulate(&mut self, freq: Frequency, c: Complex64) {
        *self.terms.entry(freq).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    pub(crate) fn prune(&mut self) {
        self.terms.retain(|_, c| keep(*c));
    }

    pub(crate) fn from_map(system: &Arc<GeneratorSystem>, terms: BTreeMap<Frequency, Complex64>) -> Self {
        let mut out = Self {
            system: Arc::clone(system),
            terms,
        };
        out.prune();
        out
    }

    pub fn system(&self) -> &Arc<GeneratorSystem> {
        &self.system
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Frequency, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, freq: &Frequency) -> Complex64 {
        self.terms.get(freq).copied().unwrap_or_default()
    }

    /// The coefficient of frequency 1, i.e. `f(+∞)`.
    pub fn constant_term(&self) -> Complex64 {
        self.coefficient(&Frequency::one())
    }

    /// The series without its constant term.
    pub fn non_constant(&self) -> GDSeries {
        let mut out = self.clone();
        out.terms.remove(&Frequency::one());
        out
    }

    /// `true` if every term has frequency 1.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Frequency::is_one)
    }

    /// `Σ |a_n|`.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Terms ordered by increasing `λ`, ties broken by exponent vector.
    pub fn sorted_terms(&self) -> Vec<(&Frequency, Complex64)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(f, c)| (f.log_value(&self.system), f, *c))
            .collect();
        v.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(b.1)));
        v.into_iter().map(|(_, f, c)| (f, c)).collect()
    }

    /// Human-readable frequency label such as `2^2·q1`.
    pub fn frequency_label(&self, freq: &Frequency) -> String {
        if freq.is_one() {
            return "1".to_string();
        }
        freq.exponents()
            .iter()
            .map(|&(i, e)| {
                if e == 1 {
                    self.system.key(i)
                } else {
                    format!("{}^{e}", self.system.key(i))
                }
            })
            .collect::<Vec<_>>()
            .join("·")
    }

    fn check_same_system(&self, other: &GDSeries) -> Result<()> {
        if same_system(&self.system, &other.system) {
            Ok(())
        } else {
            Err(Error::Structural("series are defined over different generator systems".into()))
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &GDSeries) -> Result<GDSeries> {
        self.check_same_system(other)?;
        let mut out = self.clone();
        for (f, c) in &other.terms {
            out.accumulate(f.clone(), *c);
        }
        out.prune();
        Ok(out)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &GDSeries) -> Result<GDSeries> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> GDSeries {
        let terms = self.terms.iter().map(|(f, a)| (f.clone(), a * c)).collect();
        Self::from_map(&self.system, terms)
    }

    /// Dirichlet convolution: exponent vectors add.
    pub fn multiply(&self, other: &GDSeries) -> Result<GDSeries> {
        self.check_same_system(other)?;
        Ok(self.multiply_truncated(other, f64::INFINITY))
    }

    /// Product restricted to frequencies `≤ lambda_max`.
    pub(crate) fn multiply_truncated(&self, other: &GDSeries, lambda_max: f64) -> GDSeries {
        let cap = log_cap(lambda_max);
        let logs_b: Vec<_> = other
            .terms
            .iter()
            .map(|(f, c)| (f, *c, f.log_value(&self.system)))
            .collect();
        let mut out = BTreeMap::new();
        for (fa, ca) in &self.terms {
            let la = fa.log_value(&self.system);
            for &(fb, cb, lb) in &logs_b {
                if la + lb > cap {
                    continue;
                }
                *out.entry(fa.mul(fb)).or_insert(Complex64::new(0.0, 0.0)) += ca * cb;
            }
        }
        Self::from_map(&self.system, out)
    }

    /// `Σ a_n λ_n^{-s}`, computed as `Σ a_n exp(-s ln λ_n)`.
    pub fn evaluate(&self, s: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(f, c)| c * (-s * f.log_value(&self.system)).exp())
            .sum()
    }

    /// Term-wise derivative: each coefficient picks up `-ln λ_n`.
    pub fn derivative(&self) -> GDSeries {
        let terms = self
            .terms
            .iter()
            .map(|(f, c)| (f.clone(), c * -f.log_value(&self.system)))
            .collect();
        Self::from_map(&self.system, terms)
    }

    /// `‖f‖² = Σ |a_n|²`.
    pub fn norm_sq(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum()
    }

    /// Drops terms whose frequency exceeds `lambda_max`. `f64::INFINITY` keeps
    /// everything.
    pub fn truncate(&self, lambda_max: f64) -> GDSeries {
        let cap = log_cap(lambda_max);
        let terms = self
            .terms
            .iter()
            .filter(|(f, _)| f.log_value(&self.system) <= cap)
            .map(|(f, c)| (f.clone(), *c))
            .collect();
        Self::from_map(&self.system, terms)
    }

    /// Flattened `(ln λ_n, a_n)` form for repeated evaluation.
    pub fn exp_sum(&self) -> ExpSum {
        let (logs, coeffs) = self
            .terms
            .iter()
            .map(|(f, c)| (f.log_value(&self.system), *c))
            .unzip();
        ExpSum { logs, coeffs }
    }
}

pub(crate) fn log_cap(lambda_max: f64) -> f64 {
    if lambda_max.is_infinite() {
        f64::INFINITY
    } else {
        lambda_max.ln() + TRUNCATE_LOG_SLACK
    }
}

/// `Σ c_k exp(-L_k s)`: a series reduced to what evaluation needs.
#[derive(Debug, Clone, Default)]
pub struct ExpSum {
    pub logs: Vec<f64>,
    pub coeffs: Vec<Complex64>,
}

impl ExpSum {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.logs
            .iter()
            .zip(&self.coeffs)
            .map(|(&l, &c)| c * (-s * l).exp())
            .sum()
    }

    /// Value and derivative at `s`.
    pub fn eval_with_derivative(&self, s: Complex64) -> (Complex64, Complex64) {
        let mut f = Complex64::new(0.0, 0.0);
        let mut df = Complex64::new(0.0, 0.0);
        for (&l, &c) in self.logs.iter().zip(&self.coeffs) {
            let t = c * (-s * l).exp();
            f += t;
            df -= t * l;
        }
        (f, df)
    }
}

//! Generalized hypergeometric series `p+1Fp(a; b; z)`.
//!
//! Unit-argument series with parameter excess `s = sum(b) - sum(a)` have terms
//! decaying like `n^{-1-s}`, so plain partial sums converge only like `N^{-s}`.
//! [`sum_extrapolated`] runs the Levin u-transform over the partial sums, which
//! is exact for remainders of the form `omega_n * P(1/n)` and therefore well
//! suited to these algebraic tails.

use num::{BigInt, One, Signed, Zero};
use serde::Serialize;

use crate::gamma::{nonpositive_integer_near, sort_canonical};
use crate::{ComplexValue, Error, RationalValue, Result};

/// Numerator parameters this close to `0, -1, -2, ...` make the series terminate.
pub const TERMINATION_SNAP: f64 = 1e-10;
/// Tolerance for the Saalschützian and well-poised equalities.
pub const CLASSIFY_TOL: f64 = 1e-10;
/// Denominators closer than this to a nonpositive integer are rejected.
pub const DENOMINATOR_POLE_TOL: f64 = 1e-12;
/// Default number of terms available to the extrapolator.
pub const DEFAULT_BUDGET: usize = 20_000;
/// Relative spread accepted by [`sum_extrapolated`].
pub const DEFAULT_EXTRAPOLATION_TARGET: f64 = 1e-8;

const LEVIN_BETA: f64 = 1.0;
const LEVIN_MAX_ORDER: usize = 36;
const LEVIN_STARTS: [usize; 5] = [0, 5, 20, 80, 320];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Direct,
    Extrapolated,
    TerminatingExact,
    Barnes,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Extrapolated => "extrapolated",
            Method::TerminatingExact => "terminating-exact",
            Method::Barnes => "barnes",
        }
    }
}

/// A numerical value with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    #[serde(with = "crate::complex_serde")]
    pub value: ComplexValue,
    pub abs_error_estimate: f64,
    pub method: Method,
    /// Terms summed or quadrature nodes evaluated.
    pub work: u64,
}

impl EvalResult {
    pub fn scaled(self, factor: ComplexValue) -> EvalResult {
        EvalResult {
            value: self.value * factor,
            abs_error_estimate: self.abs_error_estimate * factor.norm(),
            ..self
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec {
    numerator: Vec<ComplexValue>,
    denominator: Vec<ComplexValue>,
    argument: ComplexValue,
}

impl SeriesSpec {
    pub fn new(
        numerator: Vec<ComplexValue>,
        denominator: Vec<ComplexValue>,
        argument: ComplexValue,
    ) -> Result<Self> {
        if numerator.len() != denominator.len() + 1 {
            return Err(Error::Spec(format!(
                "expected {} numerator parameters for {} denominator parameters, got {}",
                denominator.len() + 1,
                denominator.len(),
                numerator.len()
            )));
        }
        let finite = |z: &ComplexValue| z.re.is_finite() && z.im.is_finite();
        if !numerator.iter().chain(&denominator).all(finite) || !finite(&argument) {
            return Err(Error::Spec("non-finite parameter".into()));
        }
        if let Some(b) = denominator
            .iter()
            .find(|&&b| nonpositive_integer_near(b, DENOMINATOR_POLE_TOL).is_some())
        {
            return Err(Error::Spec(format!("denominator parameter {b} is a nonpositive integer")));
        }
        Ok(SeriesSpec {
            numerator,
            denominator,
            argument,
        })
    }

    /// Series at unit argument.
    pub fn unit(numerator: Vec<ComplexValue>, denominator: Vec<ComplexValue>) -> Result<Self> {
        Self::new(numerator, denominator, ComplexValue::new(1.0, 0.0))
    }

    pub fn numerator(&self) -> &[ComplexValue] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[ComplexValue] {
        &self.denominator
    }

    pub fn argument(&self) -> ComplexValue {
        self.argument
    }

    /// `sum(b) - sum(a)`.
    pub fn excess(&self) -> ComplexValue {
        self.denominator.iter().sum::<ComplexValue>() - self.numerator.iter().sum::<ComplexValue>()
    }

    /// Degree of the polynomial when a numerator parameter is `-n`.
    pub fn terminating_degree(&self) -> Option<usize> {
        self.numerator
            .iter()
            .filter_map(|&a| nonpositive_integer_near(a, TERMINATION_SNAP))
            .map(|m| (-m) as usize)
            .min()
    }

    /// Parameters sorted so that permuted inputs give bit-identical sums.
    fn canonical(&self) -> (Vec<ComplexValue>, Vec<ComplexValue>) {
        let mut num = self.numerator.clone();
        let mut den = self.denominator.clone();
        sort_canonical(&mut num);
        sort_canonical(&mut den);
        (num, den)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Classification {
    pub terminating: bool,
    pub saalschutzian: bool,
    pub well_poised: bool,
    pub very_well_poised: bool,
    pub converges_at_unit: bool,
    #[serde(with = "crate::complex_serde")]
    pub excess: ComplexValue,
}

fn close(x: ComplexValue, y: ComplexValue) -> bool {
    (x - y).norm() <= CLASSIFY_TOL
}

/// Tries to pair every remaining numerator with a distinct denominator so that
/// each pair sums to `target`.
fn perfect_pairing(nums: &[ComplexValue], dens: &[ComplexValue], target: ComplexValue) -> bool {
    fn go(nums: &[ComplexValue], dens: &[ComplexValue], used: &mut [bool], target: ComplexValue) -> bool {
        let Some((&a, rest)) = nums.split_first() else {
            return true;
        };
        for j in 0..dens.len() {
            if !used[j] && close(a + dens[j], target) {
                used[j] = true;
                if go(rest, dens, used, target) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    let mut used = vec![false; dens.len()];
    go(nums, dens, &mut used, target)
}

/// Well-poisedness in the order-free sense: some numerator `a1` and some
/// pairing of the others with the denominators satisfy `a_i + b_j = 1 + a1`.
/// Returns `(well_poised, very_well_poised)`.
fn poisedness(num: &[ComplexValue], den: &[ComplexValue]) -> (bool, bool) {
    let mut well = false;
    for (i, &a1) in num.iter().enumerate() {
        let rest: Vec<_> = num.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &z)| z).collect();
        if !perfect_pairing(&rest, den, 1.0 + a1) {
            continue;
        }
        well = true;
        let half = 1.0 + 0.5 * a1;
        if rest.iter().any(|&a2| close(a2, half)) {
            return (true, true);
        }
    }
    (well, false)
}

pub fn classify(spec: &SeriesSpec) -> Classification {
    let excess = spec.excess();
    let (well_poised, very_well_poised) = poisedness(&spec.numerator, &spec.denominator);
    Classification {
        terminating: spec.terminating_degree().is_some(),
        saalschutzian: close(excess, ComplexValue::new(1.0, 0.0)),
        well_poised,
        very_well_poised,
        converges_at_unit: excess.re > 0.0,
        excess,
    }
}

/// Streams the terms `t_0, t_1, ...` of the series.
struct Terms {
    num: Vec<ComplexValue>,
    den: Vec<ComplexValue>,
    z: ComplexValue,
    n: usize,
    current: ComplexValue,
}

impl Terms {
    fn new(spec: &SeriesSpec) -> Self {
        let (num, den) = spec.canonical();
        Terms {
            num,
            den,
            z: spec.argument,
            n: 0,
            current: ComplexValue::new(1.0, 0.0),
        }
    }
}

impl Iterator for Terms {
    type Item = ComplexValue;

    fn next(&mut self) -> Option<ComplexValue> {
        let out = self.current;
        let k = self.n as f64;
        let mut ratio = self.z / (k + 1.0);
        for a in &self.num {
            ratio *= a + k;
        }
        for b in &self.den {
            ratio /= b + k;
        }
        self.current *= ratio;
        self.n += 1;
        Some(out)
    }
}

fn finite_sum(spec: &SeriesSpec, degree: usize) -> EvalResult {
    let mut sum = ComplexValue::new(0.0, 0.0);
    let mut mag = 0.0;
    for t in Terms::new(spec).take(degree + 1) {
        sum += t;
        mag += t.norm();
    }
    EvalResult {
        value: sum,
        abs_error_estimate: 4.0 * f64::EPSILON * mag * (degree + 1) as f64,
        method: Method::TerminatingExact,
        work: degree as u64 + 1,
    }
}

fn require_convergent(spec: &SeriesSpec) -> Result<()> {
    let z = spec.argument.norm();
    if z < 1.0 || (z == 1.0 && spec.excess().re > 0.0) {
        Ok(())
    } else {
        Err(Error::Spec(format!(
            "series diverges: |z| = {z}, Re(excess) = {}",
            spec.excess().re
        )))
    }
}

/// Consecutive small terms required by the stopping rule.
const STOP_RUN: usize = 3;

/// Sums terms until three consecutive ones are below
/// `target_abs * max(1, |partial|)` while the term ratio is below one.
pub fn sum_direct(spec: &SeriesSpec, max_terms: usize, target_abs: f64) -> Result<EvalResult> {
    if let Some(n) = spec.terminating_degree() {
        return Ok(finite_sum(spec, n));
    }
    require_convergent(spec)?;
    let mut sum = ComplexValue::new(0.0, 0.0);
    let mut prev = ComplexValue::new(0.0, 0.0);
    let mut run = 0;
    for (n, t) in Terms::new(spec).take(max_terms).enumerate() {
        sum += t;
        let ratio = if n == 0 { 0.0 } else { t.norm() / prev.norm() };
        if t.norm() < target_abs * sum.norm().max(1.0) && ratio < 1.0 {
            run += 1;
        } else {
            run = 0;
        }
        if run == STOP_RUN {
            return Ok(EvalResult {
                value: sum,
                abs_error_estimate: tail_estimate(spec, n, t.norm(), ratio),
                method: Method::Direct,
                work: n as u64 + 1,
            });
        }
        prev = t;
    }
    Err(Error::NoConvergence(format!(
        "{max_terms} terms without meeting target {target_abs:e}"
    )))
}

/// Heuristic size of the discarded tail after term `n`.
fn tail_estimate(spec: &SeriesSpec, n: usize, last: f64, ratio: f64) -> f64 {
    if spec.argument.norm() < 1.0 && ratio < 1.0 {
        last * ratio / (1.0 - ratio)
    } else {
        // t_n ~ C n^{-1-s}  =>  sum_{k>n} t_k ~ t_n n / s
        last * (n as f64 + 1.0) / spec.excess().re.max(1e-3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtrapolationConfig {
    /// Maximum number of terms.
    pub budget: usize,
    /// Accepted spread relative to `max(1, |value|)`.
    pub target_rel: f64,
}

impl Default for ExtrapolationConfig {
    fn default() -> Self {
        ExtrapolationConfig {
            budget: DEFAULT_BUDGET,
            target_rel: DEFAULT_EXTRAPOLATION_TARGET,
        }
    }
}

/// Levin u-transform `T_k^{(n)}` of the partial sums `sums[n..=n+k]`.
fn levin_u(sums: &[ComplexValue], terms: &[ComplexValue], n: usize, k: usize) -> Option<ComplexValue> {
    let mut num = ComplexValue::new(0.0, 0.0);
    let mut den = ComplexValue::new(0.0, 0.0);
    let last = LEVIN_BETA + (n + k) as f64;
    let mut binom = 1.0;
    for j in 0..=k {
        let m = n + j;
        let omega = (LEVIN_BETA + m as f64) * terms[m];
        if omega.norm() == 0.0 {
            return None;
        }
        let mut w = binom * ((LEVIN_BETA + m as f64) / last).powi(k as i32 - 1);
        if j % 2 == 1 {
            w = -w;
        }
        num += w * sums[m] / omega;
        den += w / omega;
        binom = binom * (k - j) as f64 / (j + 1) as f64;
    }
    let v = num / den;
    (v.re.is_finite() && v.im.is_finite()).then_some(v)
}

/// Extrapolated value of a convergent series using at most `budget` terms.
pub fn sum_extrapolated(spec: &SeriesSpec, budget: usize) -> Result<EvalResult> {
    sum_extrapolated_with(
        spec,
        ExtrapolationConfig {
            budget,
            ..Default::default()
        },
    )
}

pub fn sum_extrapolated_with(spec: &SeriesSpec, config: ExtrapolationConfig) -> Result<EvalResult> {
    if let Some(n) = spec.terminating_degree() {
        return Ok(finite_sum(spec, n));
    }
    require_convergent(spec)?;
    if spec.argument.norm() < 1.0 {
        return sum_direct(spec, config.budget, 1e-16);
    }

    let starts: Vec<usize> = LEVIN_STARTS
        .iter()
        .copied()
        .filter(|&s| s + 3 <= config.budget)
        .collect();
    let needed = starts
        .iter()
        .map(|&s| (s + LEVIN_MAX_ORDER + 1).min(config.budget))
        .max()
        .unwrap_or(0);
    let terms: Vec<ComplexValue> = Terms::new(spec).take(needed).collect();
    let sums: Vec<ComplexValue> = terms
        .iter()
        .scan(ComplexValue::new(0.0, 0.0), |acc, &t| {
            *acc += t;
            Some(*acc)
        })
        .collect();

    // Pick the order whose estimate is most stable against its two
    // predecessors.
    let mut best: Option<(f64, ComplexValue, usize)> = None;
    for &start in &starts {
        let max_k = (needed - start - 1).min(LEVIN_MAX_ORDER);
        let seq: Vec<Option<ComplexValue>> = (0..=max_k).map(|k| levin_u(&sums, &terms, start, k)).collect();
        for k in 3..=max_k {
            let (Some(t0), Some(t1), Some(t2)) = (seq[k - 2], seq[k - 1], seq[k]) else {
                continue;
            };
            let spread = (t2 - t1).norm().max((t1 - t0).norm());
            if best.map_or(true, |(s, _, _)| spread < s) {
                best = Some((spread, t2, start + k + 1));
            }
        }
    }
    let Some((spread, value, used)) = best else {
        return Err(Error::NoConvergence("extrapolation produced no estimate".into()));
    };
    // Roundoff in the partial sums themselves.
    let floor = 16.0 * f64::EPSILON * value.norm().max(1.0);
    let err = spread.max(floor);
    if err > config.target_rel * value.norm().max(1.0) {
        return Err(Error::NoConvergence(format!(
            "extrapolation spread {err:e} above target {:e}",
            config.target_rel
        )));
    }
    Ok(EvalResult {
        value,
        abs_error_estimate: err,
        method: Method::Extrapolated,
        work: used as u64,
    })
}

/// A terminating series with exact rational parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalSeriesSpec {
    pub numerator: Vec<RationalValue>,
    pub denominator: Vec<RationalValue>,
    pub argument: RationalValue,
}

impl RationalSeriesSpec {
    pub fn unit(numerator: Vec<RationalValue>, denominator: Vec<RationalValue>) -> Self {
        RationalSeriesSpec {
            numerator,
            denominator,
            argument: RationalValue::one(),
        }
    }
}

/// Exact value of a series with a numerator parameter equal to `-n`.
pub fn sum_terminating_rational(spec: &RationalSeriesSpec, n: usize) -> Result<RationalValue> {
    if spec.numerator.len() != spec.denominator.len() + 1 {
        return Err(Error::Spec("numerator count must be denominator count + 1".into()));
    }
    let minus_n = RationalValue::from_integer(-BigInt::from(n));
    if !spec.numerator.iter().any(|a| *a == minus_n) {
        return Err(Error::Spec(format!("no numerator parameter equals -{n}")));
    }
    for b in &spec.denominator {
        if b.is_integer() && !b.is_positive() && *b > minus_n {
            return Err(Error::Spec(format!("denominator Pochhammer ({b})_{n} vanishes")));
        }
    }
    let mut term = RationalValue::one();
    let mut sum = RationalValue::one();
    for k in 0..n {
        let kq = RationalValue::from_integer(BigInt::from(k));
        for a in &spec.numerator {
            term *= a + &kq;
        }
        for b in &spec.denominator {
            term /= b + &kq;
        }
        term *= &spec.argument;
        term /= RationalValue::from_integer(BigInt::from(k + 1));
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    Ok(sum)
}

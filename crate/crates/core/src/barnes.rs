//! Barnes integrals `(1/2 pi i) ∫ prod Γ^{±1}(a_i + t) prod Γ^{±1}(b_j - t) dt`
//! along a straight vertical line that separates the two families of poles.

use std::f64::consts::PI;

use serde::Serialize;

use crate::gamma::{ln_gamma, ln_gamma_ratio};
use crate::quadrature::integrate_adaptive;
use crate::series::{EvalResult, Method};
use crate::{ComplexValue, Error, Result};

/// Sums closer than this to an integer make a pole pair collide.
pub const PAIRING_TOL: f64 = 1e-10;
/// Smallest truncation height.
pub const MIN_HEIGHT: f64 = 10.0;
const MAX_HEIGHT: f64 = 400.0;
const HEIGHT_STEP: f64 = 2.0;
pub const DEFAULT_NODE_BUDGET: u64 = 200_000;
/// Width of the initial quadrature panels along the contour.
const INITIAL_PANEL_WIDTH: f64 = 0.5;

/// Whether a gamma factor sits in the numerator (`+1`) or denominator (`-1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Power {
    Plus,
    Minus,
}

impl Power {
    fn sign(self) -> f64 {
        match self {
            Power::Plus => 1.0,
            Power::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BarnesIntegrand {
    /// Factors `Γ^{±1}(a_i + t)`.
    plus: Vec<(ComplexValue, Power)>,
    /// Factors `Γ^{±1}(b_j - t)`.
    minus: Vec<(ComplexValue, Power)>,
}

fn near_integer(z: ComplexValue, tol: f64) -> bool {
    (z.re - z.re.round()).hypot(z.im) <= tol
}

fn near_nonpositive_integer(z: ComplexValue, tol: f64) -> bool {
    z.re.round() <= 0.0 && near_integer(z, tol)
}

impl BarnesIntegrand {
    pub fn new(plus: Vec<(ComplexValue, Power)>, minus: Vec<(ComplexValue, Power)>) -> Result<Self> {
        for &(a, pa) in &plus {
            for &(b, pb) in &minus {
                if pa == Power::Plus && pb == Power::Plus && near_nonpositive_integer(a + b, PAIRING_TOL) {
                    return Err(Error::Domain(format!(
                        "offsets {a} and {b} sum to an integer; poles collide"
                    )));
                }
            }
        }
        Ok(BarnesIntegrand { plus, minus })
    }

    /// Gamma factors with numerator offsets `plus` and `minus` only.
    pub fn numerators(plus: &[ComplexValue], minus: &[ComplexValue]) -> Result<Self> {
        Self::new(
            plus.iter().map(|&a| (a, Power::Plus)).collect(),
            minus.iter().map(|&b| (b, Power::Plus)).collect(),
        )
    }

    /// Open interval of abscissas separating the pole families; either end may
    /// be infinite.
    pub fn gap(&self) -> (f64, f64) {
        let lo = self
            .plus
            .iter()
            .filter(|p| p.1 == Power::Plus)
            .map(|p| -p.0.re)
            .fold(f64::NEG_INFINITY, f64::max);
        let hi = self
            .minus
            .iter()
            .filter(|p| p.1 == Power::Plus)
            .map(|p| p.0.re)
            .fold(f64::INFINITY, f64::min);
        (lo, hi)
    }

    /// Net gamma count; the integrand decays like `e^{-count * pi |y| / 2}`.
    fn net_count(&self) -> f64 {
        self.plus.iter().chain(&self.minus).map(|p| p.1.sign()).sum()
    }

    /// Exponent `p` of the algebraic factor `|y|^p` at abscissa `c`.
    fn algebraic_exponent(&self, c: f64) -> f64 {
        let left: f64 = self.plus.iter().map(|&(a, s)| s.sign() * (a.re + c - 0.5)).sum();
        let right: f64 = self.minus.iter().map(|&(b, s)| s.sign() * (b.re - c - 0.5)).sum();
        left + right
    }

    pub fn ln_eval(&self, t: ComplexValue) -> Result<ComplexValue> {
        let mut acc = ComplexValue::new(0.0, 0.0);
        for &(a, s) in &self.plus {
            acc += s.sign() * ln_gamma(a + t)?;
        }
        for &(b, s) in &self.minus {
            acc += s.sign() * ln_gamma(b - t)?;
        }
        Ok(acc)
    }

    pub fn eval(&self, t: ComplexValue) -> Result<ComplexValue> {
        Ok(self.ln_eval(t)?.exp())
    }
}

/// Midpoint of the separating gap.
pub fn choose_contour(ig: &BarnesIntegrand) -> Result<f64> {
    let (lo, hi) = ig.gap();
    if !(lo < hi) {
        return Err(Error::Contour(format!("gap ({lo}, {hi}) is empty")));
    }
    Ok(match (lo.is_finite(), hi.is_finite()) {
        (true, true) => 0.5 * (lo + hi),
        (true, false) => lo + 0.5,
        (false, true) => hi - 0.5,
        (false, false) => 0.0,
    })
}

fn truncation_height(ig: &BarnesIntegrand, c: f64, target_abs: f64) -> Result<f64> {
    let kappa = 0.5 * PI * ig.net_count();
    let p = ig.algebraic_exponent(c);
    let mut y = MIN_HEIGHT;
    while y <= MAX_HEIGHT {
        let up = ig.eval(ComplexValue::new(c, y))?.norm();
        let down = ig.eval(ComplexValue::new(c, -y))?.norm();
        // ∫_Y^∞ y^p e^{-κ y} dy ≈ Y^p e^{-κ Y} / (κ - p/Y)
        let rate = (kappa - p.max(0.0) / y).max(0.5 * kappa);
        let tail = (up + down) / rate / (2.0 * PI);
        if tail < 0.1 * target_abs {
            return Ok(y);
        }
        y += HEIGHT_STEP;
    }
    Err(Error::QuadratureStall(format!(
        "integrand tail above {target_abs:e} at |Im t| = {MAX_HEIGHT}"
    )))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationConfig {
    pub node_budget: u64,
    /// Truncation height override; `None` solves it from the decay bound.
    pub height: Option<f64>,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        IntegrationConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            height: None,
        }
    }
}

/// `(1/2 pi i) ∫_{c - i∞}^{c + i∞} integrand(t) dt`.
pub fn integrate(ig: &BarnesIntegrand, c: f64, target_abs: f64) -> Result<EvalResult> {
    integrate_with(ig, c, target_abs, IntegrationConfig::default())
}

pub fn integrate_with(
    ig: &BarnesIntegrand,
    c: f64,
    target_abs: f64,
    config: IntegrationConfig,
) -> Result<EvalResult> {
    let (lo, hi) = ig.gap();
    if !(lo < c && c < hi) {
        return Err(Error::Contour(format!("abscissa {c} outside gap ({lo}, {hi})")));
    }
    if ig.net_count() <= 0.0 {
        return Err(Error::Contour("integrand does not decay along the contour".into()));
    }
    // On Re t = c, dt = i dy cancels the i of 1/(2 pi i).
    let target_y = 2.0 * PI * target_abs;
    let height = match config.height {
        Some(h) => h,
        None => truncation_height(ig, c, target_abs)?,
    };
    let panels = (2.0 * height / INITIAL_PANEL_WIDTH).ceil() as usize;
    let out = integrate_adaptive(
        |y| ig.eval(ComplexValue::new(c, y)),
        -height,
        height,
        panels,
        target_y,
        config.node_budget,
    )?;
    Ok(EvalResult {
        value: out.value / (2.0 * PI),
        abs_error_estimate: out.abs_error_estimate / (2.0 * PI) + 0.1 * target_abs,
        method: Method::Barnes,
        work: out.nodes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaReport {
    #[serde(with = "crate::complex_serde")]
    pub lhs: ComplexValue,
    #[serde(with = "crate::complex_serde")]
    pub rhs: ComplexValue,
    pub abs_diff: f64,
}

const LEMMA_TARGET_REL: f64 = 1e-12;

fn lemma_report(ig: &BarnesIntegrand, ln_rhs: ComplexValue) -> Result<LemmaReport> {
    let rhs = ln_rhs.exp();
    let c = choose_contour(ig)?;
    let lhs = integrate(ig, c, LEMMA_TARGET_REL * rhs.norm().max(1e-300))?.value;
    Ok(LemmaReport {
        lhs,
        rhs,
        abs_diff: (lhs - rhs).norm(),
    })
}

/// Barnes' first lemma:
/// `(1/2πi)∫ Γ(α+t)Γ(β+t)Γ(γ-t)Γ(δ-t) dt = Γ(α+γ)Γ(α+δ)Γ(β+γ)Γ(β+δ)/Γ(α+β+γ+δ)`.
pub fn barnes_first_lemma_check(
    alpha: ComplexValue,
    beta: ComplexValue,
    gamma_: ComplexValue,
    delta: ComplexValue,
) -> Result<LemmaReport> {
    for (name, s) in [
        ("alpha+gamma", alpha + gamma_),
        ("alpha+delta", alpha + delta),
        ("beta+gamma", beta + gamma_),
        ("beta+delta", beta + delta),
    ] {
        if near_integer(s, PAIRING_TOL) {
            return Err(Error::Domain(format!("{name} = {s} is an integer")));
        }
    }
    let ig = BarnesIntegrand::numerators(&[alpha, beta], &[gamma_, delta])?;
    let ln_rhs = ln_gamma_ratio(
        &[alpha + gamma_, alpha + delta, beta + gamma_, beta + delta],
        &[alpha + beta + gamma_ + delta],
    )?
    .ok_or_else(|| Error::Domain("Γ(α+β+γ+δ) has a pole".into()))?;
    lemma_report(&ig, ln_rhs)
}

/// Tolerance on `e + f - a - b - c = 1`.
pub const SECOND_LEMMA_TOL: f64 = 1e-10;

/// Barnes' second lemma:
/// `(1/2πi)∫ Γ(a+t)Γ(b+t)Γ(c+t)Γ(1-e-t)Γ(-t)/Γ(f+t) dt
///   = Γ(a)Γ(b)Γ(c)Γ(1+a-e)Γ(1+b-e)Γ(1+c-e) / (Γ(f-a)Γ(f-b)Γ(f-c))`
/// whenever `e + f - a - b - c = 1`.
pub fn barnes_second_lemma_check(
    a: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
    e: ComplexValue,
    f: ComplexValue,
) -> Result<LemmaReport> {
    let residual = e + f - a - b - c - 1.0;
    if residual.norm() > SECOND_LEMMA_TOL {
        return Err(Error::Domain(format!("e+f-a-b-c-1 = {residual}")));
    }
    let ig = BarnesIntegrand::new(
        vec![(a, Power::Plus), (b, Power::Plus), (c, Power::Plus), (f, Power::Minus)],
        vec![(1.0 - e, Power::Plus), (ComplexValue::new(0.0, 0.0), Power::Plus)],
    )?;
    let ln_rhs = ln_gamma_ratio(
        &[a, b, c, 1.0 + a - e, 1.0 + b - e, 1.0 + c - e],
        &[f - a, f - b, f - c],
    )?;
    match ln_rhs {
        Some(l) => lemma_report(&ig, l),
        None => {
            let cc = choose_contour(&ig)?;
            let lhs = integrate(&ig, cc, 1e-12)?.value;
            Ok(LemmaReport {
                lhs,
                rhs: ComplexValue::new(0.0, 0.0),
                abs_diff: lhs.norm(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> ComplexValue {
        ComplexValue::new(x, 0.0)
    }

    fn l_integrand(p: [f64; 7]) -> BarnesIntegrand {
        let [a, b, cc, d, e, f, g] = p.map(c);
        BarnesIntegrand::new(
            vec![
                (a, Power::Plus),
                (b, Power::Plus),
                (cc, Power::Plus),
                (d, Power::Plus),
                (f, Power::Minus),
                (g, Power::Minus),
            ],
            vec![(1.0 - e, Power::Plus), (c(0.0), Power::Plus)],
        )
        .unwrap()
    }

    const STANDARD: [f64; 7] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.7, 0.8];

    #[test]
    fn contour_midpoints() {
        let c0 = choose_contour(&l_integrand(STANDARD)).unwrap();
        assert!((c0 + 0.05).abs() < 1e-15);
        let ig = BarnesIntegrand::numerators(&[c(0.3), c(0.4)], &[c(0.5), c(0.6)]).unwrap();
        assert!((choose_contour(&ig).unwrap() - 0.1).abs() < 1e-15);
        let empty = BarnesIntegrand::numerators(&[c(0.5)], &[c(-0.6)]).unwrap();
        assert!(matches!(choose_contour(&empty), Err(Error::Contour(_))));
    }

    #[test]
    fn colliding_poles_rejected() {
        assert!(BarnesIntegrand::numerators(&[c(0.3)], &[c(-1.3)]).is_err());
        assert!(BarnesIntegrand::numerators(&[c(0.3)], &[c(0.7)]).is_ok());
    }

    #[test]
    fn first_lemma_real_instance() {
        let r = barnes_first_lemma_check(c(0.3), c(0.4), c(0.5), c(0.65)).unwrap();
        // mpmath: gamma(0.8)*gamma(0.95)*gamma(0.9)*gamma(1.05)/gamma(1.85)
        assert!((r.rhs - c(1.321_114_176_784_020_3)).norm() < 1e-13);
        assert!(r.abs_diff <= 1e-8, "{r:?}");
    }

    #[test]
    fn first_lemma_complex_instance() {
        let r = barnes_first_lemma_check(
            ComplexValue::new(0.3, 0.2),
            c(0.4),
            ComplexValue::new(0.5, -0.2),
            c(0.65),
        )
        .unwrap();
        let want = ComplexValue::new(1.228_176_770_945_931_2, 0.021_990_181_748_301_921);
        assert!((r.rhs - want).norm() < 1e-13);
        assert!(r.abs_diff <= 1e-8, "{r:?}");
    }

    #[test]
    fn first_lemma_integer_pairing_rejected() {
        assert!(matches!(
            barnes_first_lemma_check(c(0.5), c(0.5), c(0.5), c(0.5)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn second_lemma_instance() {
        let r = barnes_second_lemma_check(c(0.2), c(0.3), c(0.4), c(0.6), c(1.3)).unwrap();
        // mpmath closed form
        assert!((r.rhs - c(67.437_188_200_615_69)).norm() < 1e-10);
        assert!(r.abs_diff <= 1e-6, "{r:?}");
    }

    #[test]
    fn second_lemma_condition_enforced() {
        assert!(matches!(
            barnes_second_lemma_check(c(0.2), c(0.3), c(0.4), c(0.7), c(1.3)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn real_parameters_give_real_integral() {
        let ig = l_integrand(STANDARD);
        let r = integrate(&ig, -0.05, 1e-12).unwrap();
        assert!(r.value.im.abs() <= 1e-10);
    }

    #[test]
    fn contour_independence() {
        let ig = l_integrand(STANDARD);
        let r1 = integrate(&ig, -0.02, 1e-12).unwrap();
        let r2 = integrate(&ig, -0.08, 1e-12).unwrap();
        assert!((r1.value - r2.value).norm() <= r1.abs_error_estimate + r2.abs_error_estimate);
    }

    #[test]
    fn doubling_height_is_invisible() {
        let ig = l_integrand(STANDARD);
        let target = 1e-11;
        let base = integrate(&ig, -0.05, target).unwrap();
        let h = truncation_height(&ig, -0.05, target).unwrap();
        let tall = integrate_with(
            &ig,
            -0.05,
            target,
            IntegrationConfig {
                height: Some(2.0 * h),
                ..Default::default()
            },
        )
        .unwrap();
        assert!((base.value - tall.value).norm() < target / 10.0 + 1e-15);
    }

    #[test]
    fn offsets_permute_freely() {
        let ig1 = l_integrand(STANDARD);
        let ig2 = l_integrand([0.4, 0.1, 0.3, 0.2, 0.5, 0.7, 0.8]);
        let r1 = integrate(&ig1, -0.05, 1e-12).unwrap();
        let r2 = integrate(&ig2, -0.05, 1e-12).unwrap();
        assert!((r1.value - r2.value).norm() < 1e-10);
    }

    #[test]
    fn abscissa_outside_gap_rejected() {
        let ig = l_integrand(STANDARD);
        assert!(matches!(integrate(&ig, 0.2, 1e-8), Err(Error::Contour(_))));
    }
}

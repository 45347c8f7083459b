//! The L function on the hyperplane `V = {e + f + g - a - b - c - d = 1}`.
//!
//! ```text
//! L(a,b,c,d;e;f,g) =
//!     4F3(a,b,c,d; e,f,g; 1)
//!       / (sin πe Γ(e)Γ(f)Γ(g)Γ(1+a-e)Γ(1+b-e)Γ(1+c-e)Γ(1+d-e))
//!   - 4F3(1+a-e,1+b-e,1+c-e,1+d-e; 1+f-e,1+g-e,2-e; 1)
//!       / (sin πe Γ(a)Γ(b)Γ(c)Γ(d)Γ(1+f-e)Γ(1+g-e)Γ(2-e))
//! ```
//!
//! Three evaluators are provided: the defining series, the very-well-poised
//! `7F6` form (valid for `Re(f - d) > 0`), and the Barnes integral
//! `L = I / (π Γ(a)Γ(b)Γ(c)Γ(d)Γ(1+a-e)Γ(1+b-e)Γ(1+c-e)Γ(1+d-e))` with
//! `I = (1/2πi)∫ Γ(a+t)Γ(b+t)Γ(c+t)Γ(d+t)Γ(1-e-t)Γ(-t) / (Γ(f+t)Γ(g+t)) dt`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::barnes::{self, BarnesIntegrand, Power};
use crate::gamma::{ln_gamma_ratio, ln_sin_pi, nonpositive_integer_near};
use crate::series::{self, EvalResult, SeriesSpec};
use crate::{ComplexValue, Error, Result};

/// Tolerance on the hyperplane constraint.
pub const HYPERPLANE_TOL: f64 = 1e-10;
/// Default exclusion radius around integer `e`.
pub const DEFAULT_E_GAP: f64 = 1e-3;
/// Denominator parameters closer than this to `0, -1, ...` are rejected.
pub const DENOMINATOR_TOL: f64 = 1e-10;
/// Absolute accuracy requested from the Barnes evaluator.
pub const BARNES_TARGET_ABS: f64 = 1e-11;

pub const VARIABLES: [&str; 7] = ["a", "b", "c", "d", "e", "f", "g"];

/// A validated point `(a, b, c, d, e, f, g)` of `V`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParameterPoint {
    #[serde(with = "crate::complex_serde::vec")]
    coords: [ComplexValue; 7],
}

/// `e + f + g - a - b - c - d - 1`.
pub fn hyperplane_residual(x: &[ComplexValue; 7]) -> ComplexValue {
    x[4] + x[5] + x[6] - x[0] - x[1] - x[2] - x[3] - 1.0
}

/// Distance from the real number line's integers, measured in the plane.
fn dist_to_integer(z: ComplexValue) -> f64 {
    (z.re - z.re.round()).hypot(z.im)
}

impl ParameterPoint {
    pub fn new(coords: [ComplexValue; 7]) -> Result<Self> {
        Self::with_e_gap(coords, DEFAULT_E_GAP)
    }

    pub fn from_real(coords: [f64; 7]) -> Result<Self> {
        Self::new(coords.map(|x| ComplexValue::new(x, 0.0)))
    }

    pub fn with_e_gap(coords: [ComplexValue; 7], e_gap: f64) -> Result<Self> {
        if coords.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite(format!("{coords:?}")));
        }
        let r = hyperplane_residual(&coords).norm();
        if r > HYPERPLANE_TOL {
            return Err(Error::Hyperplane(r));
        }
        let p = ParameterPoint { coords };
        let e = p.e();
        if dist_to_integer(e) < e_gap {
            return Err(Error::Domain(format!(
                "e = {e} is within {e_gap:e} of an integer (sin πe vanishes)"
            )));
        }
        let (f, g) = (p.f(), p.g());
        for (name, v) in [
            ("e", e),
            ("f", f),
            ("g", g),
            ("1+f-e", 1.0 + f - e),
            ("1+g-e", 1.0 + g - e),
            ("2-e", 2.0 - e),
        ] {
            if nonpositive_integer_near(v, DENOMINATOR_TOL).is_some() {
                return Err(Error::Domain(format!("{name} = {v} is a nonpositive integer")));
            }
        }
        Ok(p)
    }

    pub fn coords(&self) -> &[ComplexValue; 7] {
        &self.coords
    }

    pub fn a(&self) -> ComplexValue {
        self.coords[0]
    }
    pub fn b(&self) -> ComplexValue {
        self.coords[1]
    }
    pub fn c(&self) -> ComplexValue {
        self.coords[2]
    }
    pub fn d(&self) -> ComplexValue {
        self.coords[3]
    }
    pub fn e(&self) -> ComplexValue {
        self.coords[4]
    }
    pub fn f(&self) -> ComplexValue {
        self.coords[5]
    }
    pub fn g(&self) -> ComplexValue {
        self.coords[6]
    }

    /// The four Barnes numerator offsets `a, b, c, d`.
    fn top(&self) -> [ComplexValue; 4] {
        [self.a(), self.b(), self.c(), self.d()]
    }

    /// Width of the vertical gap available to the Barnes contour:
    /// `min(Re a, .., Re d, Re(1+a-e), .., Re(1+d-e))`.
    pub fn contour_gap(&self) -> f64 {
        let e = self.e();
        self.top()
            .iter()
            .flat_map(|&x| [x.re, (1.0 + x - e).re])
            .fold(f64::INFINITY, f64::min)
    }
}

impl fmt::Display for ParameterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, z) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", format_complex(*z))?;
        }
        Ok(())
    }
}

/// `re` or `re+imi` with 17 significant digits.
pub fn format_complex(z: ComplexValue) -> String {
    if z.im == 0.0 {
        format!("{:.16e}", z.re)
    } else {
        format!("{:.16e}{:+.16e}i", z.re, z.im)
    }
}

/// Parses `re`, `re+imi` or `re-imi`.
pub fn parse_complex(s: &str) -> Result<ComplexValue> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid complex literal {s:?}"));
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|x| ComplexValue::new(x, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is neither leading nor part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let re: f64 = body[..split].parse().map_err(|_| bad())?;
    let im_str = &body[split..];
    let im: f64 = match im_str {
        "+" => 1.0,
        "-" => -1.0,
        _ => im_str.parse().map_err(|_| bad())?,
    };
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(ComplexValue::new(re, im))
}

/// Validates `(a, b, c, d, e, f, g)` as a point of `V`.
#[allow(clippy::too_many_arguments)]
pub fn make_point(
    a: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
    d: ComplexValue,
    e: ComplexValue,
    f: ComplexValue,
    g: ComplexValue,
) -> Result<ParameterPoint> {
    ParameterPoint::new([a, b, c, d, e, f, g])
}

/// `exp(ln_ratio - ln sin πe)`, or zero when the gamma ratio vanishes.
fn prefactor(num: &[ComplexValue], den: &[ComplexValue], sine_arg: Option<ComplexValue>) -> Result<ComplexValue> {
    let Some(mut l) = ln_gamma_ratio(num, den)? else {
        return Ok(ComplexValue::new(0.0, 0.0));
    };
    if let Some(s) = sine_arg {
        l -= ln_sin_pi(s)?;
    }
    Ok(l.exp())
}

fn sum_term(pref: ComplexValue, spec: Result<SeriesSpec>) -> Result<EvalResult> {
    if pref.norm() == 0.0 {
        return Ok(EvalResult {
            value: pref,
            abs_error_estimate: 0.0,
            method: series::Method::Extrapolated,
            work: 0,
        });
    }
    let r = series::sum_extrapolated(&spec?, series::DEFAULT_BUDGET)?;
    Ok(r.scaled(pref))
}

fn combine(first: EvalResult, second: EvalResult, sign: f64) -> EvalResult {
    let value = first.value + sign * second.value;
    let scale = first.value.norm() + second.value.norm();
    EvalResult {
        value,
        abs_error_estimate: first.abs_error_estimate + second.abs_error_estimate + 4.0 * f64::EPSILON * scale,
        method: if first.work == 0 { second.method } else { first.method },
        work: first.work + second.work,
    }
}

/// `L` from its definition as two `4F3(1)` series.
pub fn eval_l_series(p: &ParameterPoint) -> Result<EvalResult> {
    let [a, b, c, d, e, f, g] = p.coords;
    let one = ComplexValue::new(1.0, 0.0);
    let pref1 = prefactor(&[], &[e, f, g, 1.0 + a - e, 1.0 + b - e, 1.0 + c - e, 1.0 + d - e], Some(e))?;
    let pref2 = prefactor(&[], &[a, b, c, d, 1.0 + f - e, 1.0 + g - e, 2.0 - e], Some(e))?;
    let first = sum_term(pref1, SeriesSpec::unit(vec![a, b, c, d], vec![e, f, g]))?;
    let second = sum_term(
        pref2,
        SeriesSpec::unit(
            vec![one + a - e, one + b - e, one + c - e, one + d - e],
            vec![one + f - e, one + g - e, 2.0 - e],
        ),
    )?;
    Ok(combine(first, second, -1.0))
}

/// `L` from the very-well-poised `7F6(1)` form; requires `Re(f - d) > 0`.
pub fn eval_l_7f6(p: &ParameterPoint) -> Result<EvalResult> {
    let [a, b, c, d, e, f, g] = p.coords;
    if (f - d).re <= 0.0 {
        return Err(Error::Domain(format!("Re(f-d) = {} must be positive", (f - d).re)));
    }
    let x = d + g - e;
    let pi = ComplexValue::new(PI, 0.0);
    let ln_pi = pi.ln();
    let Some(ln_ratio) = ln_gamma_ratio(
        &[1.0 + x],
        &[g, 1.0 + g - e, f - d, 1.0 + a + d - e, 1.0 + b + d - e, 1.0 + c + d - e],
    )
    .map_err(|err| Error::Domain(format!("7F6 prefactor: {err}")))?
    else {
        return Ok(EvalResult {
            value: ComplexValue::new(0.0, 0.0),
            abs_error_estimate: 0.0,
            method: series::Method::Extrapolated,
            work: 0,
        });
    };
    let pref = (ln_ratio - ln_pi).exp();
    let spec = SeriesSpec::unit(
        vec![x, 1.0 + 0.5 * x, g - a, g - b, g - c, d, 1.0 + d - e],
        vec![0.5 * x, 1.0 + a + d - e, 1.0 + b + d - e, 1.0 + c + d - e, 1.0 + g - e, g],
    )
    .map_err(|err| Error::Domain(format!("7F6 parameters: {err}")))?;
    let r = series::sum_extrapolated(&spec, series::DEFAULT_BUDGET)?;
    Ok(r.scaled(pref))
}

/// The Barnes integrand of `L` at `p`.
pub fn barnes_integrand(p: &ParameterPoint) -> Result<BarnesIntegrand> {
    let [a, b, c, d, e, f, g] = p.coords;
    BarnesIntegrand::new(
        vec![
            (a, Power::Plus),
            (b, Power::Plus),
            (c, Power::Plus),
            (d, Power::Plus),
            (f, Power::Minus),
            (g, Power::Minus),
        ],
        vec![(1.0 - e, Power::Plus), (ComplexValue::new(0.0, 0.0), Power::Plus)],
    )
    .map_err(|err| Error::Contour(err.to_string()))
}

/// `L` from its Barnes-integral representation along a straight contour.
pub fn eval_l_barnes(p: &ParameterPoint) -> Result<EvalResult> {
    let [a, b, c, d, e, ..] = p.coords;
    let ig = barnes_integrand(p)?;
    let abscissa = barnes::choose_contour(&ig)?;
    let Some(ln_pref) = ln_gamma_ratio(&[], &[a, b, c, d, 1.0 + a - e, 1.0 + b - e, 1.0 + c - e, 1.0 + d - e])? else {
        return Err(Error::Contour("reciprocal gamma prefactor vanishes".into()));
    };
    let pref = (ln_pref - PI.ln()).exp();
    let target = BARNES_TARGET_ABS / pref.norm();
    let r = barnes::integrate(&ig, abscissa, target)?;
    Ok(r.scaled(pref))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalMethod {
    #[default]
    Auto,
    Series,
    #[serde(rename = "7f6")]
    SevenF6,
    Barnes,
}

impl FromStr for EvalMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(EvalMethod::Auto),
            "series" => Ok(EvalMethod::Series),
            "7f6" => Ok(EvalMethod::SevenF6),
            "barnes" => Ok(EvalMethod::Barnes),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

/// Evaluates `L` with the requested method; `Auto` tries the Barnes integral
/// first and falls back to the series.
pub fn eval_l(p: &ParameterPoint, method: EvalMethod) -> Result<EvalResult> {
    match method {
        EvalMethod::Series => eval_l_series(p),
        EvalMethod::SevenF6 => eval_l_7f6(p),
        EvalMethod::Barnes => eval_l_barnes(p),
        EvalMethod::Auto => match eval_l_barnes(p) {
            Ok(r) => Ok(r),
            Err(Error::Contour(_)) | Err(Error::QuadratureStall(_)) => eval_l_series(p),
            Err(e) => Err(e),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Method;

    // mpmath at 30 digits: all three representations agree on this value.
    const STANDARD_L: f64 = 0.151_442_597_112_016_495;

    fn standard() -> ParameterPoint {
        ParameterPoint::from_real([0.1, 0.2, 0.3, 0.4, 0.5, 0.7, 0.8]).unwrap()
    }

    #[test]
    fn make_point_validation() {
        assert!(standard().contour_gap() > 0.09);
        assert!(matches!(
            ParameterPoint::from_real([0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0]),
            Err(Error::Hyperplane(r)) if (r - 2.0).abs() < 1e-12
        ));
        let err = ParameterPoint::from_real([0.1, 0.2, 0.3, 0.4, 1.0, 0.6, 0.4]).unwrap_err();
        assert!(matches!(&err, Error::Domain(m) if m.starts_with("e =")), "{err}");
        let err = ParameterPoint::from_real([0.1, 0.2, 0.3, 0.4, 0.5, -1.0, 2.5]).unwrap_err();
        assert!(matches!(&err, Error::Domain(m) if m.starts_with("f =")), "{err}");
    }

    #[test]
    fn series_value() {
        let r = eval_l_series(&standard()).unwrap();
        assert!((r.value.re - STANDARD_L).abs() < 1e-10, "{}", r.value);
        assert_eq!(r.method, Method::Extrapolated);
    }

    #[test]
    fn seven_f6_value() {
        let r = eval_l_7f6(&standard()).unwrap();
        assert!((r.value.re - STANDARD_L).abs() < 1e-6, "{}", r.value);
    }

    #[test]
    fn barnes_value() {
        let r = eval_l_barnes(&standard()).unwrap();
        assert!((r.value.re - STANDARD_L).abs() < 1e-10, "{}", r.value);
        assert!(r.abs_error_estimate <= 1e-8);
        assert_eq!(r.method, Method::Barnes);
    }

    #[test]
    fn seven_f6_domain() {
        let p = ParameterPoint::from_real([0.1, 0.2, 0.3, 0.7, 0.8, 0.7, 0.8]).unwrap();
        assert!(matches!(eval_l_7f6(&p), Err(Error::Domain(_))));
    }

    #[test]
    fn fg_swap_through_7f6() {
        let p = ParameterPoint::from_real([0.1, 0.2, 0.3, 0.4, 0.5, 0.8, 0.7]).unwrap();
        let s = eval_l_series(&standard()).unwrap();
        let w = eval_l_7f6(&p).unwrap();
        assert!((s.value - w.value).norm() < 1e-5);
    }

    #[test]
    fn barnes_contour_error() {
        // Re a = -0.5 and Re e = 1.6: c must exceed 0.5 yet stay below -0.6
        let p = ParameterPoint::from_real([-0.5, 0.2, 0.3, 0.4, 1.6, 0.3, -0.5]).unwrap();
        assert!(matches!(eval_l_barnes(&p), Err(Error::Contour(_))));
    }

    #[test]
    fn barnes_symmetric_in_top_parameters() {
        let p = ParameterPoint::from_real([0.3, 0.4, 0.1, 0.2, 0.5, 0.7, 0.8]).unwrap();
        let r1 = eval_l_barnes(&standard()).unwrap();
        let r2 = eval_l_barnes(&p).unwrap();
        assert!((r1.value - r2.value).norm() < 1e-10);
    }

    #[test]
    fn d_equals_g_reduces_to_closed_form() {
        // L(a,b,c,g;e;f,g) = 1/(π Γ(g)Γ(1+g-e)Γ(f-a)Γ(f-b)Γ(f-c))
        let p = ParameterPoint::from_real([0.1, 0.2, 0.3, 0.8, 0.9, 0.7, 0.8]).unwrap();
        let closed = 0.043_698_459_785_722_229;
        for r in [eval_l_series(&p).unwrap(), eval_l_barnes(&p).unwrap()] {
            assert!((r.value.re - closed).abs() < 1e-6, "{}", r.value);
        }
    }

    #[test]
    fn fundamental_relation_at_standard_point() {
        let p = standard();
        let [a, b, c, d, e, f, g] = *p.coords();
        let q = ParameterPoint::new([a, b, g - c, g - d, 1.0 + a + b - f, 1.0 + a + b - e, g]).unwrap();
        let l1 = eval_l(&p, EvalMethod::Series).unwrap();
        let l2 = eval_l(&q, EvalMethod::Series).unwrap();
        assert!((l1.value - l2.value).norm() < 1e-6);
    }

    #[test]
    fn dispatch_tags() {
        let p = standard();
        assert_eq!(eval_l(&p, EvalMethod::Auto).unwrap().method, Method::Barnes);
        assert_eq!(eval_l(&p, EvalMethod::Series).unwrap().method, Method::Extrapolated);
        let no_gap = ParameterPoint::from_real([-0.5, 0.2, 0.3, 0.4, 1.6, 0.3, -0.5]).unwrap();
        assert_eq!(eval_l(&no_gap, EvalMethod::Auto).unwrap().method, Method::Extrapolated);
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.3").unwrap(), ComplexValue::new(0.3, 0.0));
        assert_eq!(parse_complex("0.3+0.2i").unwrap(), ComplexValue::new(0.3, 0.2));
        assert_eq!(parse_complex("-1e-3-2.5i").unwrap(), ComplexValue::new(-1e-3, -2.5));
        assert_eq!(parse_complex("1.5e+2+1e-1i").unwrap(), ComplexValue::new(150.0, 0.1));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+i2").is_err());
    }
}

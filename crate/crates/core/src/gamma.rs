//! Scalar kernel: complex log-gamma, reciprocal gamma, `sin(pi z)` and rising
//! factorials.
//!
//! `ln_gamma` uses the Lanczos approximation (g = 7, nine coefficients) for
//! `Re z >= 0.5`. Left of that line the upward recurrence
//! `ln Gamma(z) = ln Gamma(z + n) - sum ln(z + k)` is used, which keeps the
//! result on the branch continuous off the negative real axis and stays
//! accurate close to the poles. Very far left the reflection formula takes over.

use std::f64::consts::PI;

use crate::{ComplexValue, Error, Result};

/// Absolute distance to a nonpositive integer below which `z` counts as a pole.
pub const POLE_TOL: f64 = 1e-12;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
/// `0.5 * ln(2 pi)`
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Beyond this many recurrence steps the reflection formula is cheaper.
const MAX_RECURRENCE_SHIFT: f64 = 400.0;

/// Returns the nonpositive integer `-n` if `z` lies within `tol` of it.
pub fn nonpositive_integer_near(z: ComplexValue, tol: f64) -> Option<i64> {
    let r = z.re.round();
    if r <= 0.0 && (z.re - r).hypot(z.im) <= tol {
        Some(r as i64)
    } else {
        None
    }
}

/// Rejects NaN and infinite components.
pub fn checked(re: f64, im: f64) -> Result<ComplexValue> {
    if re.is_finite() && im.is_finite() {
        Ok(ComplexValue::new(re, im))
    } else {
        Err(Error::NonFinite(format!("({re}, {im})")))
    }
}

fn lanczos_ln_gamma(z: ComplexValue) -> ComplexValue {
    let z = z - 1.0;
    let mut acc = ComplexValue::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_2PI + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Principal branch of `ln Gamma(z)`.
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    ln_gamma(z)
}

/// Same as [`log_gamma`].
pub fn ln_gamma(z: ComplexValue) -> Result<ComplexValue> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite(z.to_string()));
    }
    if nonpositive_integer_near(z, POLE_TOL).is_some() {
        return Err(Error::Pole(z.to_string()));
    }
    if z.re >= 0.5 {
        return Ok(lanczos_ln_gamma(z));
    }
    let shift = (0.5 - z.re).ceil();
    if shift <= MAX_RECURRENCE_SHIFT {
        let n = shift as usize;
        let mut logs = ComplexValue::new(0.0, 0.0);
        for k in 0..n {
            logs += (z + k as f64).ln();
        }
        Ok(lanczos_ln_gamma(z + shift) - logs)
    } else {
        // ln Gamma(z) = ln pi - ln sin(pi z) - ln Gamma(1 - z)
        Ok(PI.ln() - ln_sin_pi(z)? - lanczos_ln_gamma(1.0 - z))
    }
}

/// `Gamma(z)`.
pub fn gamma(z: ComplexValue) -> Result<ComplexValue> {
    Ok(ln_gamma(z)?.exp())
}

/// `1 / Gamma(z)`; exactly zero at the nonpositive integers.
pub fn reciprocal_gamma(z: ComplexValue) -> ComplexValue {
    if nonpositive_integer_near(z, POLE_TOL).is_some() {
        return ComplexValue::new(0.0, 0.0);
    }
    match ln_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => ComplexValue::new(0.0, 0.0),
    }
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`.
pub fn pochhammer(a: ComplexValue, n: usize) -> ComplexValue {
    (0..n).fold(ComplexValue::new(1.0, 0.0), |acc, k| acc * (a + k as f64))
}

/// `(sin(pi x), cos(pi x))` with exact zeros at integers and half-integers.
pub fn sin_cos_pi_real(x: f64) -> (f64, f64) {
    let n = (2.0 * x).round();
    let r = x - 0.5 * n;
    let (s, c) = (PI * r).sin_cos();
    match n.rem_euclid(4.0) as u8 {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// Above this `|Im z|` the sine is assembled in log scale.
const LOG_SCALE_IM: f64 = 30.0;

/// `sin(pi z) / (e^{pi |y|} / 2)`, free of cancellation for every `y`.
fn scaled_sin_pi(z: ComplexValue) -> ComplexValue {
    let (s, c) = sin_cos_pi_real(z.re);
    let y = z.im.abs();
    let q = (-2.0 * PI * y).exp();
    let one_minus_q = -(-2.0 * PI * y).exp_m1();
    ComplexValue::new(s * (1.0 + q), z.im.signum() * c * one_minus_q)
}

/// `sin(pi z)`.
pub fn sin_pi(z: ComplexValue) -> ComplexValue {
    if z.im.abs() > LOG_SCALE_IM {
        let w = scaled_sin_pi(z);
        return w * (PI * z.im.abs() - std::f64::consts::LN_2).exp();
    }
    let (s, c) = sin_cos_pi_real(z.re);
    let y = PI * z.im;
    ComplexValue::new(s * y.cosh(), c * y.sinh())
}

/// `ln sin(pi z)` (principal log of the scaled value plus the real scale);
/// fails at the integers.
pub fn ln_sin_pi(z: ComplexValue) -> Result<ComplexValue> {
    let w = scaled_sin_pi(z);
    if w.re == 0.0 && w.im == 0.0 {
        return Err(Error::Pole(format!("sin(pi z) = 0 at z = {z}")));
    }
    Ok(w.ln() + (PI * z.im.abs() - std::f64::consts::LN_2))
}

/// Distance from `z` to the nearest integer.
pub fn dist_to_integers(z: ComplexValue) -> f64 {
    (z.re - z.re.round()).hypot(z.im)
}

/// `K(eps) = min(sin(pi eps / 2), 1 - e^{-pi eps}) / 2`, so that
/// `|sin(pi z)| >= K(eps) e^{pi |Im z|}` whenever `dist(z, Z) >= eps`.
pub fn sine_bound_constant(eps: f64) -> f64 {
    0.5 * (0.5 * PI * eps).sin().min(-(-PI * eps).exp_m1())
}

/// `Gamma(num_1) ... Gamma(num_p) / (Gamma(den_1) ... Gamma(den_q))` in log
/// space. Returns `Ok(None)` when a denominator argument sits on a pole (the
/// ratio is then exactly zero) and an error when a numerator argument does.
/// Arguments are summed in a canonical order so the result does not depend on
/// how the caller lists them.
pub fn ln_gamma_ratio(num: &[ComplexValue], den: &[ComplexValue]) -> Result<Option<ComplexValue>> {
    let mut num = num.to_vec();
    let mut den = den.to_vec();
    sort_canonical(&mut num);
    sort_canonical(&mut den);
    if den.iter().any(|&z| nonpositive_integer_near(z, POLE_TOL).is_some()) {
        return Ok(None);
    }
    let mut acc = ComplexValue::new(0.0, 0.0);
    for z in num {
        acc += ln_gamma(z)?;
    }
    for z in den {
        acc -= ln_gamma(z)?;
    }
    Ok(Some(acc))
}

/// Sorts by `(re, im)` using the IEEE total order.
pub fn sort_canonical(v: &mut [ComplexValue]) {
    v.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> ComplexValue {
        ComplexValue::new(re, 0.0)
    }

    fn rel(a: ComplexValue, b: ComplexValue) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn ln_gamma_small_integers() {
        let v = ln_gamma(c(5.0)).unwrap();
        assert!((v.re - 24f64.ln()).abs() < 1e-13);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn half_integer_gives_sqrt_pi() {
        let g = ln_gamma(c(0.5)).unwrap().exp();
        assert!(rel(g * g, c(PI)) < 1e-13);
    }

    #[test]
    fn reflection_at_point_three() {
        let v = (ln_gamma(c(0.3)).unwrap() + ln_gamma(c(0.7)).unwrap()).exp();
        assert!(rel(v, c(PI / (0.3 * PI).sin())) < 1e-13);
    }

    #[test]
    fn complex_values_match_mpmath() {
        // mpmath.loggamma at 30 digits
        let cases = [
            ((0.5, 20.0), (-30.49698800269326, 39.916729108473326)),
            ((-3.7, 2.0), (-6.7238696924940686, -10.249753986292474)),
            ((2.3, -0.7), (0.024128538181528433, -0.43588854371570559)),
            ((-0.4, -15.0), (-25.080624770306174, -24.182821018493241)),
        ];
        for ((re, im), (lre, lim)) in cases {
            let v = ln_gamma(ComplexValue::new(re, im)).unwrap();
            let want = ComplexValue::new(lre, lim);
            assert!((v - want).norm() < 1e-12 * want.norm().max(1.0), "{v} vs {want}");
        }
    }

    #[test]
    fn poles_are_rejected() {
        assert!(matches!(ln_gamma(c(0.0)), Err(Error::Pole(_))));
        assert!(matches!(ln_gamma(c(-4.0 + 1e-13)), Err(Error::Pole(_))));
        assert!(ln_gamma(c(-4.0 + 1e-9)).is_ok());
    }

    #[test]
    fn reciprocal_gamma_values() {
        assert_eq!(reciprocal_gamma(c(-3.0)), c(0.0));
        assert!(rel(reciprocal_gamma(c(1.0)), c(1.0)) < 1e-14);
        assert!(rel(reciprocal_gamma(c(0.5)), c(1.0 / PI.sqrt())) < 1e-14);
        // close to, but not on, a pole: 1/Gamma(-2 + h) ~ 2 h
        let h = 1e-8;
        assert!(rel(reciprocal_gamma(c(-2.0 + h)), c(2.0 * h)) < 1e-6);
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(c(0.7), 0), c(1.0));
        assert_eq!(pochhammer(c(3.0), 4), c(360.0));
        assert_eq!(pochhammer(c(-2.0), 5), c(0.0));
    }

    #[test]
    fn sin_pi_values() {
        assert_eq!(sin_pi(c(0.5)), c(1.0));
        assert_eq!(sin_pi(c(7.0)), c(0.0));
        assert!(ln_sin_pi(c(-3.0)).is_err());
        let z = ComplexValue::new(0.5, 3.0);
        let eps: f64 = 0.5;
        let k = 0.5 * (PI * eps / 2.0).sin().min(1.0 - (-PI * eps).exp());
        assert!(sin_pi(z).norm() >= k * (3.0 * PI).exp());
    }

    #[test]
    fn sin_pi_log_scale_agrees_with_direct() {
        let z = ComplexValue::new(0.3, 40.0);
        let direct = ComplexValue::new(
            (PI * 0.3).sin() * (PI * 40.0).cosh(),
            (PI * 0.3).cos() * (PI * 40.0).sinh(),
        );
        assert!(rel(sin_pi(z), direct) < 1e-13);
        assert!(rel(ln_sin_pi(z).unwrap().exp(), direct) < 1e-12);
    }

    #[test]
    fn ratio_drops_to_none_on_denominator_pole() {
        assert_eq!(ln_gamma_ratio(&[c(0.5)], &[c(-2.0)]).unwrap(), None);
        assert!(ln_gamma_ratio(&[c(-1.0)], &[c(0.5)]).is_err());
    }

    #[test]
    fn sine_bound_example() {
        let k = sine_bound_constant(0.5);
        assert!((k - 0.5 * (0.25 * PI).sin().min(1.0 - (-0.5 * PI).exp())).abs() < 1e-15);
        let z = ComplexValue::new(0.5, 3.0);
        assert!(sin_pi(z).norm() >= k * (3.0 * PI).exp());
        assert_eq!(dist_to_integers(ComplexValue::new(2.75, 0.0)), 0.25);
    }
}

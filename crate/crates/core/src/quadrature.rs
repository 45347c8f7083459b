//! Adaptive Gauss–Legendre panel quadrature for smooth complex-valued
//! integrands on a real interval.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::{ComplexValue, Error, Result};

/// Nodes per panel.
pub const PANEL_ORDER: usize = 16;
/// Maximum bisection depth below an initial panel.
const MAX_DEPTH: u32 = 40;
const ROUNDING_FLOOR: f64 = 50.0 * f64::EPSILON;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi's initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

fn panel_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_ORDER))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOutcome {
    pub value: ComplexValue,
    /// Sum of the accepted panel-refinement differences.
    pub abs_error_estimate: f64,
    pub nodes: u64,
}

struct Adaptive<'a, F> {
    f: &'a F,
    target_density: f64,
    nodes: u64,
    node_budget: u64,
}

impl<F> Adaptive<'_, F>
where
    F: Fn(f64) -> Result<ComplexValue>,
{
    /// Panel integral and the integral of `|f|` over the panel.
    fn panel(&mut self, a: f64, b: f64) -> Result<(ComplexValue, f64)> {
        self.nodes += PANEL_ORDER as u64;
        if self.nodes > self.node_budget {
            return Err(Error::QuadratureStall(format!(
                "node budget {} exhausted",
                self.node_budget
            )));
        }
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = ComplexValue::new(0.0, 0.0);
        let mut mag = 0.0;
        for &(x, w) in panel_rule() {
            let v = w * (self.f)(mid + half * x)?;
            acc += v;
            mag += v.norm();
        }
        Ok((acc * half, mag * half.abs()))
    }

    fn refine(&mut self, a: f64, b: f64, whole: ComplexValue, depth: u32) -> Result<(ComplexValue, f64)> {
        let m = 0.5 * (a + b);
        let (left, lmag) = self.panel(a, m)?;
        let (right, rmag) = self.panel(m, b)?;
        let split = left + right;
        let diff = (split - whole).norm();
        // Differences at the rounding level of the panel sum cannot shrink further.
        let floor = ROUNDING_FLOOR * (lmag + rmag);
        if diff <= (self.target_density * (b - a)).max(floor) {
            return Ok((split, diff));
        }
        if depth >= MAX_DEPTH {
            return Err(Error::QuadratureStall(format!("no convergence on [{a}, {b}]")));
        }
        let (l, el) = self.refine(a, m, left, depth + 1)?;
        let (r, er) = self.refine(m, b, right, depth + 1)?;
        Ok((l + r, el + er))
    }
}

/// Integrates `f` over `[lo, hi]`, starting from `initial_panels` equal panels
/// and bisecting each until the halves agree with the whole to within its share
/// of `target_abs`. Panels are reduced left to right.
pub fn integrate_adaptive<F>(
    f: F,
    lo: f64,
    hi: f64,
    initial_panels: usize,
    target_abs: f64,
    node_budget: u64,
) -> Result<QuadratureOutcome>
where
    F: Fn(f64) -> Result<ComplexValue>,
{
    let mut ad = Adaptive {
        f: &f,
        target_density: target_abs / (hi - lo),
        nodes: 0,
        node_budget,
    };
    let n = initial_panels.max(1);
    let h = (hi - lo) / n as f64;
    let mut value = ComplexValue::new(0.0, 0.0);
    let mut err = 0.0;
    for i in 0..n {
        let a = lo + h * i as f64;
        let b = if i + 1 == n { hi } else { a + h };
        let (whole, _) = ad.panel(a, b)?;
        let (v, e) = ad.refine(a, b, whole, 0)?;
        value += v;
        err += e;
    }
    Ok(QuadratureOutcome {
        value,
        abs_error_estimate: err,
        nodes: ad.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let rule = gauss_legendre(PANEL_ORDER);
        let wsum: f64 = rule.iter().map(|p| p.1).sum();
        assert!((wsum - 2.0).abs() < 1e-14);
        // x^30 integrates to 2/31
        let m: f64 = rule.iter().map(|&(x, w)| w * x.powi(30)).sum();
        assert!((m - 2.0 / 31.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_lorentzian() {
        // integral of 1/(x^2 + eps^2) over [-1, 1] = 2 atan(1/eps)/eps
        let eps: f64 = 0.01;
        let out = integrate_adaptive(
            |x| Ok(ComplexValue::new(1.0 / (x * x + eps * eps), 0.0)),
            -1.0,
            1.0,
            2,
            1e-10,
            200_000,
        )
        .unwrap();
        let want = 2.0 * (1.0 / eps).atan() / eps;
        assert!((out.value.re - want).abs() < 1e-9, "{} vs {want}", out.value.re);
    }

    #[test]
    fn budget_exhaustion_is_a_stall() {
        let r = integrate_adaptive(
            |x| Ok(ComplexValue::new(1.0 / (x * x + 1e-12), 0.0)),
            -1.0,
            1.0,
            1,
            1e-14,
            500,
        );
        assert!(matches!(r, Err(Error::QuadratureStall(_))));
    }
}

//! Integer affine forms `k + sum coeff_i * var_i` over a fixed variable list.

use std::fmt;

use crate::{Error, RationalValue, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineForm {
    pub constant: i64,
    pub coeffs: Vec<i64>,
}

impl AffineForm {
    pub fn zero(n: usize) -> Self {
        AffineForm {
            constant: 0,
            coeffs: vec![0; n],
        }
    }

    /// The form `var_i`.
    pub fn var(n: usize, i: usize) -> Self {
        let mut f = Self::zero(n);
        f.coeffs[i] = 1;
        f
    }

    pub fn new(constant: i64, coeffs: Vec<i64>) -> Self {
        AffineForm { constant, coeffs }
    }

    pub fn add(&self, other: &AffineForm) -> AffineForm {
        AffineForm {
            constant: self.constant + other.constant,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> AffineForm {
        AffineForm {
            constant: k * self.constant,
            coeffs: self.coeffs.iter().map(|c| k * c).collect(),
        }
    }

    /// Replaces every variable `var_i` by `images[i]`.
    pub fn substitute(&self, images: &[AffineForm]) -> AffineForm {
        let n = images.first().map_or(0, |f| f.coeffs.len());
        let mut out = AffineForm::new(self.constant, vec![0; n]);
        for (&c, img) in self.coeffs.iter().zip(images) {
            if c != 0 {
                out = out.add(&img.scale(c));
            }
        }
        out
    }

    pub fn eval_rational(&self, x: &[RationalValue]) -> RationalValue {
        self.coeffs
            .iter()
            .zip(x)
            .fold(RationalValue::from_integer(self.constant.into()), |acc, (&c, v)| {
                acc + v * RationalValue::from_integer(c.into())
            })
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .zip(x)
            .fold(self.constant as f64, |acc, (&c, v)| acc + c as f64 * v)
    }

    /// Renders as e.g. `1+a+b-f`: constant first, then positive terms, then
    /// negative terms, each group in variable order.
    pub fn render(&self, names: &[&str]) -> String {
        let mut out = String::new();
        if self.constant != 0 {
            out.push_str(&self.constant.to_string());
        }
        let positives = self.coeffs.iter().enumerate().filter(|(_, &c)| c > 0);
        let negatives = self.coeffs.iter().enumerate().filter(|(_, &c)| c < 0);
        for (i, &c) in positives.chain(negatives) {
            if c > 0 && !out.is_empty() {
                out.push('+');
            }
            if c < 0 {
                out.push('-');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(names[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Inverse of [`AffineForm::render`]; accepts any term order.
    pub fn parse(s: &str, names: &[&str]) -> Result<AffineForm> {
        let bad = |why: &str| Error::Parse(format!("affine form {s:?}: {why}"));
        let text: String = s.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '−' { '-' } else { c }).collect();
        if text.is_empty() {
            return Err(bad("empty"));
        }
        let mut form = AffineForm::zero(names.len());
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(bad("missing operator"));
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let magnitude: Option<i64> = if i > start {
                Some(text[start..i].parse().map_err(|_| bad("integer overflow"))?)
            } else {
                None
            };
            let vstart = i;
            while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                i += 1;
            }
            let var = &text[vstart..i];
            match (magnitude, var.is_empty()) {
                (None, true) => return Err(bad("dangling sign")),
                (Some(m), true) => form.constant += sign * m,
                (m, false) => {
                    let idx = names.iter().position(|n| *n == var).ok_or_else(|| bad("unknown variable"))?;
                    form.coeffs[idx] += sign * m.unwrap_or(1);
                }
            }
        }
        Ok(form)
    }
}

pub struct Rendered<'a>(pub &'a AffineForm, pub &'a [&'a str]);

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.render(self.1))
    }
}

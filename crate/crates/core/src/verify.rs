//! Randomized numerical checks of the invariances of `L` and of the classical
//! identities that follow from them.
//!
//! Every check compares two independently computed sides. Numerical checks pass
//! when `abs_diff <= tol`, where the stored `tol` is already scaled as described
//! on each function; the Bailey check is exact.

use std::str::FromStr;

use num::{One, ToPrimitive, Zero};
use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::affine::AffineForm;
use crate::barnes::{barnes_first_lemma_check, barnes_second_lemma_check};
use crate::gamma::ln_gamma_ratio;
use crate::group::{shared_cosets, shared_group, word_order, GroupElement, DIM};
use crate::lfunc::{eval_l, eval_l_7f6, eval_l_barnes, eval_l_series, format_complex, EvalMethod, ParameterPoint};
use crate::series::{sum_extrapolated, sum_terminating_rational, RationalSeriesSpec, SeriesSpec, DEFAULT_BUDGET};
use crate::{ComplexValue, Error, RationalValue, Result};

/// Candidate draws before the sampler gives up.
pub const MAX_REJECTIONS: usize = 100_000;
/// Largest `n` accepted by [`verify_bailey`].
pub const MAX_BAILEY_N: usize = 12;
/// Half-width of the imaginary parts drawn for complex samples.
pub const IMAG_CAP: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleConstraints {
    pub e_integer_gap: f64,
    pub contour_gap_min: f64,
    /// Smallest real excess accepted for the auxiliary `3F2(1)` series.
    pub convergence_margin: f64,
    /// Bound on `|Re x|` for every coordinate of a sampled point.
    pub magnitude_cap: f64,
    pub seed: u64,
    /// Draw imaginary parts as well.
    pub complex: bool,
}

impl Default for SampleConstraints {
    fn default() -> Self {
        SampleConstraints {
            e_integer_gap: 1e-3,
            contour_gap_min: 0.05,
            convergence_margin: 1.5,
            magnitude_cap: 2.0,
            seed: 0,
            complex: false,
        }
    }
}

impl SampleConstraints {
    pub fn with_seed(seed: u64) -> Self {
        SampleConstraints {
            seed,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.e_integer_gap > 0.0 && self.contour_gap_min > 0.0 && self.convergence_margin > 0.0) {
            return Err(Error::Domain("sampling gaps must be positive".into()));
        }
        if !(self.magnitude_cap >= 0.0) {
            return Err(Error::Domain("magnitude cap must be nonnegative".into()));
        }
        Ok(())
    }

    /// The point, if it passes every evaluator precondition and has a wide
    /// enough contour gap.
    pub fn admit(&self, coords: [ComplexValue; DIM]) -> Option<ParameterPoint> {
        let p = ParameterPoint::with_e_gap(coords, self.e_integer_gap).ok()?;
        (p.contour_gap() >= self.contour_gap_min).then_some(p)
    }
}

type RealMatrix = [[f64; DIM]; DIM];

fn real_matrix(g: &GroupElement) -> RealMatrix {
    let m = g.matrix.to_i64().expect("group entries are small");
    m.map(|row| row.map(|x| x as f64))
}

fn apply_real(m: &RealMatrix, x: &[ComplexValue; DIM]) -> [ComplexValue; DIM] {
    std::array::from_fn(|i| {
        m[i].iter()
            .zip(x)
            .filter(|(c, _)| **c != 0.0)
            .map(|(&c, &v)| v * c)
            .sum()
    })
}

/// Seeded sampler of admissible points on `V`.
pub struct Sampler {
    rng: ChaCha8Rng,
    constraints: SampleConstraints,
}

impl Sampler {
    pub fn new(constraints: SampleConstraints) -> Result<Self> {
        constraints.validate()?;
        Ok(Sampler {
            rng: ChaCha8Rng::seed_from_u64(constraints.seed),
            constraints,
        })
    }

    pub fn constraints(&self) -> &SampleConstraints {
        &self.constraints
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn draw(&mut self) -> ComplexValue {
        let cap = self.constraints.magnitude_cap;
        let re = self.rng.gen_range(-cap..=cap);
        let im = if self.constraints.complex {
            self.rng.gen_range(-IMAG_CAP..=IMAG_CAP)
        } else {
            0.0
        };
        ComplexValue::new(re, im)
    }

    /// A point `p` such that `p` and `M·p` are admissible for every `M` in
    /// `elements`. Six coordinates are drawn and `g` is solved from the
    /// hyperplane equation.
    pub fn sample_point(&mut self, elements: &[GroupElement]) -> Result<ParameterPoint> {
        let mats: Vec<RealMatrix> = elements.iter().map(real_matrix).collect();
        self.sample_point_real(&mats)
    }

    fn sample_point_real(&mut self, mats: &[RealMatrix]) -> Result<ParameterPoint> {
        let cap = self.constraints.magnitude_cap;
        for _ in 0..MAX_REJECTIONS {
            let mut x = [ComplexValue::zero(); DIM];
            for v in x.iter_mut().take(6) {
                *v = self.draw();
            }
            x[6] = 1.0 + x[0] + x[1] + x[2] + x[3] - x[4] - x[5];
            if x[6].re.abs() > cap {
                continue;
            }
            let Some(p) = self.constraints.admit(x) else {
                continue;
            };
            if mats.iter().all(|m| self.constraints.admit(apply_real(m, &x)).is_some()) {
                return Ok(p);
            }
        }
        Err(Error::SamplerExhausted(MAX_REJECTIONS))
    }
}

/// One admissible point from a fresh sampler seeded by `constraints.seed`.
pub fn sample_point(constraints: &SampleConstraints, elements: &[GroupElement]) -> Result<ParameterPoint> {
    Sampler::new(*constraints)?.sample_point(elements)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub point: Vec<String>,
    #[serde(with = "crate::complex_serde::option")]
    pub lhs: Option<ComplexValue>,
    #[serde(with = "crate::complex_serde::option")]
    pub rhs: Option<ComplexValue>,
    /// `None` when a side could not be computed.
    pub abs_diff: Option<f64>,
    pub tol: f64,
    pub pass: bool,
    /// Exact or symbolic forms of the two sides.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_text: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_text: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Check {
    pub fn compare(name: impl Into<String>, point: Vec<String>, lhs: ComplexValue, rhs: ComplexValue, tol: f64) -> Self {
        let d = (lhs - rhs).norm();
        Check {
            name: name.into(),
            point,
            lhs: Some(lhs),
            rhs: Some(rhs),
            abs_diff: Some(d),
            tol,
            pass: d <= tol,
            lhs_text: None,
            rhs_text: None,
            reason: None,
        }
    }

    pub fn failed(name: impl Into<String>, point: Vec<String>, tol: f64, reason: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            point,
            lhs: None,
            rhs: None,
            abs_diff: None,
            tol,
            pass: false,
            lhs_text: None,
            rhs_text: None,
            reason: Some(reason.into()),
        }
    }

    /// Equality of two exact or symbolic values; `tol` is zero.
    pub fn textual(name: impl Into<String>, point: Vec<String>, lhs: String, rhs: String) -> Self {
        let pass = lhs == rhs;
        Check {
            name: name.into(),
            point,
            lhs: None,
            rhs: None,
            abs_diff: pass.then_some(0.0),
            tol: 0.0,
            pass,
            lhs_text: Some(lhs),
            rhs_text: Some(rhs),
            reason: (!pass).then(|| "sides differ".to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        VerificationReport {
            summary: Summary {
                total: checks.len(),
                passed,
                failed: checks.len() - passed,
            },
            checks,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn merge(reports: impl IntoIterator<Item = VerificationReport>) -> Self {
        Self::new(reports.into_iter().flat_map(|r| r.checks).collect())
    }

    /// Largest `abs_diff / tol` over numerical checks, for diagnostics.
    pub fn worst_ratio(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.tol > 0.0)
            .map(|c| c.abs_diff.map_or(f64::INFINITY, |d| d / c.tol))
            .fold(0.0, f64::max)
    }
}

fn point_strings(p: &ParameterPoint) -> Vec<String> {
    p.coords().iter().map(|&z| format_complex(z)).collect()
}

fn strings(v: &[ComplexValue]) -> Vec<String> {
    v.iter().map(|&z| format_complex(z)).collect()
}

/// Runs `f` over `0..n` on all available cores, returning results in order.
fn par_map<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let threads = std::thread::available_parallelism().map_or(1, |t| t.get()).min(n.max(1));
    if threads <= 1 {
        return (0..n).map(f).collect();
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut out: Vec<(usize, T)> = std::thread::scope(|s| {
        let workers: Vec<_> = (0..threads)
            .map(|_| {
                s.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        if i >= n {
                            break;
                        }
                        local.push((i, f(i)));
                    }
                    local
                })
            })
            .collect();
        workers
            .into_iter()
            .flat_map(|w| w.join().expect("verification worker panicked"))
            .collect()
    });
    out.sort_by_key(|(i, _)| *i);
    out.into_iter().map(|(_, t)| t).collect()
}

/// Compares `L(p)` with `L(M·p)` for `n_points` sampled points and every `M`.
/// A pair passes when `|L(p) - L(M·p)| <= tol · (1 + |L(p)|)`. Evaluation
/// failures are recorded as failed checks.
pub fn verify_invariance(
    elements: &[GroupElement],
    n_points: usize,
    tol: f64,
    constraints: &SampleConstraints,
) -> Result<VerificationReport> {
    let mut elements: Vec<GroupElement> = elements.to_vec();
    elements.sort_by(|x, y| word_order(&x.word, &y.word));
    let mats: Vec<RealMatrix> = elements.iter().map(real_matrix).collect();
    let mut sampler = Sampler::new(*constraints)?;
    let points = (0..n_points)
        .map(|_| sampler.sample_point_real(&mats))
        .collect::<Result<Vec<_>>>()?;
    let base = par_map(points.len(), |i| eval_l(&points[i], EvalMethod::Auto));
    let n_el = elements.len();
    let checks = par_map(points.len() * n_el, |k| {
        let (i, j) = (k / n_el, k % n_el);
        let p = &points[i];
        let name = format!("invariance {}", elements[j].word_string());
        let lp = match &base[i] {
            Ok(r) => r.value,
            Err(e) => return Check::failed(name, point_strings(p), tol, format!("L(p): {e}")),
        };
        let eff = tol * (1.0 + lp.norm());
        let q = match ParameterPoint::with_e_gap(apply_real(&mats[j], p.coords()), constraints.e_integer_gap) {
            Ok(q) => q,
            Err(e) => return Check::failed(name, point_strings(p), eff, format!("M·p: {e}")),
        };
        let lq = if q == *p { base[i].clone() } else { eval_l(&q, EvalMethod::Auto) };
        match lq {
            Ok(r) => Check::compare(name, point_strings(p), lp, r.value, eff),
            Err(e) => Check::failed(name, point_strings(p), eff, format!("L(M·p): {e}")),
        }
    });
    Ok(VerificationReport::new(checks))
}

/// Which elements a relation sweep covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementSelection {
    All,
    Representatives,
    Random(usize),
}

impl FromStr for ElementSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(ElementSelection::All),
            "reps" => Ok(ElementSelection::Representatives),
            _ => {
                let k = s
                    .strip_prefix("random:")
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("element selection {s:?}: expected all, reps or random:K")))?;
                Ok(ElementSelection::Random(k))
            }
        }
    }
}

/// The six classical coset representatives, in template order.
pub fn representatives() -> Vec<GroupElement> {
    shared_cosets().iter().map(|c| c.representative.clone()).collect()
}

/// `k` distinct elements drawn with a seeded generator.
pub fn random_elements(k: usize, seed: u64) -> Result<Vec<GroupElement>> {
    let g = shared_group();
    if k > g.order() {
        return Err(Error::Domain(format!("cannot draw {k} distinct elements from {}", g.order())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = sample_indices(&mut rng, g.order(), k).into_vec();
    idx.sort_unstable();
    Ok(idx.into_iter().map(|i| g.elements()[i].clone()).collect())
}

pub fn select_elements(sel: ElementSelection, seed: u64) -> Result<Vec<GroupElement>> {
    match sel {
        ElementSelection::All => Ok(shared_group().elements().to_vec()),
        ElementSelection::Representatives => Ok(representatives()),
        ElementSelection::Random(k) => random_elements(k, seed),
    }
}

/// Pairwise agreement of the series, Barnes and (when `Re(f-d) > 0`) `7F6`
/// evaluations, each within `tol · (1 + |L|)`.
pub fn verify_representation_consistency(p: &ParameterPoint, tol: f64) -> Vec<Check> {
    let mut values: Vec<(&str, Result<ComplexValue>)> = vec![
        ("series", eval_l_series(p).map(|r| r.value)),
        ("barnes", eval_l_barnes(p).map(|r| r.value)),
    ];
    if (p.f() - p.d()).re > 0.0 {
        values.push(("7f6", eval_l_7f6(p).map(|r| r.value)));
    }
    let mut checks = Vec::new();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let name = format!("representation {} vs {}", values[i].0, values[j].0);
            checks.push(match (&values[i].1, &values[j].1) {
                (Ok(x), Ok(y)) => Check::compare(name, point_strings(p), *x, *y, tol * (1.0 + x.norm())),
                (Err(e), _) | (_, Err(e)) => Check::failed(name, point_strings(p), tol, e.to_string()),
            });
        }
    }
    checks
}

/// `3F2(b,c,d;f,g;1) / (Γ(f)Γ(g)Γ(f+g-b-c-d))`, the function both sides of
/// Thomae's relations share.
pub fn thomae_normal_form(x: [ComplexValue; 5]) -> Result<ComplexValue> {
    let [b, c, d, f, g] = x;
    let s = f + g - b - c - d;
    if s.re <= 0.0 {
        return Err(Error::Domain(format!("excess f+g-b-c-d = {s} has nonpositive real part")));
    }
    let spec = SeriesSpec::unit(vec![b, c, d], vec![f, g]).map_err(|e| Error::Domain(e.to_string()))?;
    let sum = sum_extrapolated(&spec, DEFAULT_BUDGET)?.value;
    Ok(match ln_gamma_ratio(&[], &[f, g, s])? {
        Some(l) => sum * l.exp(),
        None => ComplexValue::zero(),
    })
}

/// `(b, g-c, g-d; f+g-c-d, g)`.
pub fn two_term_image(x: [ComplexValue; 5]) -> [ComplexValue; 5] {
    let [b, c, d, f, g] = x;
    [b, g - c, g - d, f + g - c - d, g]
}

/// `(f-b, g-b, f+g-b-c-d; f+g-b-d, f+g-b-c)`.
pub fn thomae_image(x: [ComplexValue; 5]) -> [ComplexValue; 5] {
    let [b, c, d, f, g] = x;
    [f - b, g - b, f + g - b - c - d, f + g - b - d, f + g - b - c]
}

fn three_f2_check(
    name: &str,
    x: [ComplexValue; 5],
    image: [ComplexValue; 5],
    tol: f64,
) -> Check {
    let point = strings(&x);
    match (thomae_normal_form(x), thomae_normal_form(image)) {
        (Ok(l), Ok(r)) => Check::compare(name, point, l, r, tol),
        (Err(e), _) | (_, Err(e)) => Check::failed(name, point, tol, e.to_string()),
    }
}

/// The two-term `3F2(1)` relation with image `(b, g-c, g-d; f+g-c-d, g)`.
/// Requires `Re(f+g-b-c-d) > 0` and `Re(f-b) > 0`.
pub fn verify_two_term(
    b: ComplexValue,
    c: ComplexValue,
    d: ComplexValue,
    f: ComplexValue,
    g: ComplexValue,
    tol: f64,
) -> Result<Check> {
    let s = f + g - b - c - d;
    if s.re <= 0.0 {
        return Err(Error::Domain(format!("Re(f+g-b-c-d) = {} is not positive", s.re)));
    }
    if (f - b).re <= 0.0 {
        return Err(Error::Domain(format!("Re(f-b) = {} is not positive", (f - b).re)));
    }
    let x = [b, c, d, f, g];
    Ok(three_f2_check("two_term", x, two_term_image(x), tol))
}

/// Thomae's identity. Requires `Re(f+g-b-c-d) > 0` and `Re b > 0`.
pub fn verify_thomae(
    b: ComplexValue,
    c: ComplexValue,
    d: ComplexValue,
    f: ComplexValue,
    g: ComplexValue,
    tol: f64,
) -> Result<Check> {
    let s = f + g - b - c - d;
    if s.re <= 0.0 {
        return Err(Error::Domain(format!("Re(f+g-b-c-d) = {} is not positive", s.re)));
    }
    if b.re <= 0.0 {
        return Err(Error::Domain(format!("Re b = {} is not positive", b.re)));
    }
    let x = [b, c, d, f, g];
    Ok(three_f2_check("thomae", x, thomae_image(x), tol))
}

pub const THOMAE_VARIABLES: [&str; 5] = ["b", "c", "d", "f", "g"];

fn symbolic_map(rows: [[i64; 5]; 5]) -> [AffineForm; 5] {
    rows.map(|r| AffineForm::new(0, r.to_vec()))
}

/// [`two_term_image`] as affine forms in `b, c, d, f, g`.
pub fn two_term_forms() -> [AffineForm; 5] {
    symbolic_map([
        [1, 0, 0, 0, 0],
        [0, -1, 0, 0, 1],
        [0, 0, -1, 0, 1],
        [0, -1, -1, 1, 1],
        [0, 0, 0, 0, 1],
    ])
}

/// [`thomae_image`] as affine forms in `b, c, d, f, g`.
pub fn thomae_forms() -> [AffineForm; 5] {
    symbolic_map([
        [-1, 0, 0, 1, 0],
        [-1, 0, 0, 0, 1],
        [-1, -1, -1, 1, 1],
        [-1, 0, -1, 1, 1],
        [-1, -1, 0, 1, 1],
    ])
}

/// `outer ∘ inner`.
pub fn compose(outer: &[AffineForm; 5], inner: &[AffineForm; 5]) -> [AffineForm; 5] {
    std::array::from_fn(|i| outer[i].substitute(inner))
}

/// `{n1,n2,n3;d1,d2}` with each group sorted, so that lists related by
/// reordering numerators or denominators compare equal.
pub fn unordered_params(x: &[AffineForm; 5]) -> String {
    let mut nums: Vec<String> = x[..3].iter().map(|f| f.render(&THOMAE_VARIABLES)).collect();
    let mut dens: Vec<String> = x[3..].iter().map(|f| f.render(&THOMAE_VARIABLES)).collect();
    nums.sort();
    dens.sort();
    format!("{};{}", nums.join(","), dens.join(","))
}

fn ordered_params(x: &[AffineForm; 5]) -> String {
    let r: Vec<String> = x.iter().map(|f| f.render(&THOMAE_VARIABLES)).collect();
    format!("{};{}", r[..3].join(","), r[3..].join(","))
}

/// Two structural facts: the two-term substitution is an involution, and the
/// Thomae substitution applied twice is the two-term substitution up to the order
/// of numerator and denominator parameters.
pub fn symbolic_composition_checks() -> Vec<Check> {
    let id: [AffineForm; 5] = std::array::from_fn(|i| AffineForm::var(5, i));
    let u = two_term_forms();
    let t = thomae_forms();
    vec![
        Check::textual(
            "two-term substitution twice is the identity",
            vec![],
            ordered_params(&compose(&u, &u)),
            ordered_params(&id),
        ),
        Check::textual(
            "thomae twice is the two-term substitution",
            vec![],
            unordered_params(&compose(&t, &t)),
            unordered_params(&u),
        ),
    ]
}

fn rational_pochhammer(a: &RationalValue, n: usize) -> RationalValue {
    (0..n).fold(RationalValue::one(), |acc, k| acc * (a + RationalValue::from_integer(k.into())))
}

/// Bailey's terminating identity with `e = 1-n-f-g+b+c+d`, checked in exact
/// rational arithmetic.
pub fn verify_bailey(
    n: usize,
    b: &RationalValue,
    c: &RationalValue,
    d: &RationalValue,
    f: &RationalValue,
    g: &RationalValue,
) -> Result<Check> {
    if n > MAX_BAILEY_N {
        return Err(Error::Domain(format!("n = {n} above {MAX_BAILEY_N}")));
    }
    let one = RationalValue::one();
    let nn = RationalValue::from_integer(n.into());
    let e = &one - &nn - f - g + b + c + d;
    let minus_n = -nn.clone();
    let domain = |e: Error| Error::Domain(e.to_string());
    let lhs = sum_terminating_rational(
        &RationalSeriesSpec::unit(
            vec![minus_n.clone(), b.clone(), c.clone(), d.clone()],
            vec![e.clone(), f.clone(), g.clone()],
        ),
        n,
    )
    .map_err(domain)?;
    let den = rational_pochhammer(&e, n) * rational_pochhammer(f, n);
    if den.is_zero() {
        return Err(Error::Domain("(e)_n (f)_n vanishes".into()));
    }
    let factor = rational_pochhammer(&(&e - b), n) * rational_pochhammer(&(f - b), n) / den;
    let right_sum = sum_terminating_rational(
        &RationalSeriesSpec::unit(
            vec![minus_n, b.clone(), g - c, g - d],
            vec![&one - &nn + b - f, &one - &nn + b - &e, g.clone()],
        ),
        n,
    )
    .map_err(domain)?;
    let rhs = factor * right_sum;
    let point = vec![
        format!("n={n}"),
        b.to_string(),
        c.to_string(),
        d.to_string(),
        e.to_string(),
        f.to_string(),
        g.to_string(),
    ];
    let mut check = Check::textual("bailey", point, lhs.to_string(), rhs.to_string());
    let approx = |q: &RationalValue| ComplexValue::new(q.to_f64().unwrap_or(f64::NAN), 0.0);
    check.lhs = Some(approx(&lhs));
    check.rhs = Some(approx(&rhs));
    Ok(check)
}

/// Which classical suite to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalSuite {
    Thomae,
    Bailey,
    Barnes1,
    Barnes2,
    TwoTerm,
    All,
}

impl FromStr for ClassicalSuite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thomae" => Ok(ClassicalSuite::Thomae),
            "bailey" => Ok(ClassicalSuite::Bailey),
            "barnes1" => Ok(ClassicalSuite::Barnes1),
            "barnes2" => Ok(ClassicalSuite::Barnes2),
            "two-term" | "eq530" => Ok(ClassicalSuite::TwoTerm),
            "all" => Ok(ClassicalSuite::All),
            other => Err(Error::Parse(format!("unknown classical suite {other:?}"))),
        }
    }
}

/// Instance counts and tolerances of the classical suites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalConfig {
    pub instances: usize,
    pub bailey_instances: usize,
    pub bailey_max_n: usize,
    pub three_f2_tol: f64,
    pub barnes1_tol: f64,
    pub barnes2_tol: f64,
}

impl Default for ClassicalConfig {
    fn default() -> Self {
        ClassicalConfig {
            instances: 10,
            bailey_instances: 100,
            bailey_max_n: 6,
            three_f2_tol: 1e-6,
            barnes1_tol: 1e-8,
            barnes2_tol: 1e-6,
        }
    }
}

fn real(x: f64) -> ComplexValue {
    ComplexValue::new(x, 0.0)
}

/// `(b, c, d, f, g)` with `Re(f+g-b-c-d)` and `Re(f-b)` at least `margin`.
pub fn sample_two_term_params(rng: &mut impl Rng, margin: f64) -> [ComplexValue; 5] {
    let b = rng.gen_range(0.1..1.0);
    let c = rng.gen_range(0.1..1.0);
    let d = rng.gen_range(0.1..1.0);
    let f = b + margin + rng.gen_range(0.0..1.0);
    let g = (margin + b + c + d - f).max(0.1) + rng.gen_range(0.0..1.0);
    [b, c, d, f, g].map(real)
}

/// `(b, c, d, f, g)` with `Re(f+g-b-c-d)` and `Re b` at least `margin`.
pub fn sample_thomae_params(rng: &mut impl Rng, margin: f64) -> [ComplexValue; 5] {
    let b = margin + rng.gen_range(0.0..1.0);
    let c = rng.gen_range(0.1..1.0);
    let d = rng.gen_range(0.1..1.0);
    let f = rng.gen_range(0.5..2.0);
    let g = margin + b + c + d - f + rng.gen_range(0.0..1.0);
    [b, c, d, f, g].map(real)
}

fn near_integer(x: f64, tol: f64) -> bool {
    (x - x.round()).abs() < tol
}

fn sample_barnes1(rng: &mut impl Rng) -> [ComplexValue; 4] {
    loop {
        let x: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.2..0.9));
        let [a, b, c, d] = x;
        if [a + c, a + d, b + c, b + d].iter().all(|&s| !near_integer(s, 1e-3)) {
            return x.map(real);
        }
    }
}

fn sample_barnes2(rng: &mut impl Rng) -> [ComplexValue; 5] {
    let a = rng.gen_range(0.2..0.9);
    let b = rng.gen_range(0.2..0.9);
    let c = rng.gen_range(0.2..0.9);
    let e = rng.gen_range(0.1..0.9);
    [a, b, c, e, 1.0 + a + b + c - e].map(real)
}

fn small_rational(rng: &mut impl Rng) -> RationalValue {
    let q: i64 = rng.gen_range(1..=6);
    let p: i64 = rng.gen_range(-12..=12);
    RationalValue::new(p.into(), q.into())
}

/// A Bailey instance whose denominators are all admissible.
pub fn sample_bailey(rng: &mut impl Rng, max_n: usize) -> (usize, [RationalValue; 5]) {
    loop {
        let n = rng.gen_range(0..=max_n);
        let x: [RationalValue; 5] = std::array::from_fn(|_| small_rational(rng));
        let [b, c, d, f, g] = &x;
        if verify_bailey(n, b, c, d, f, g).is_ok() {
            return (n, x);
        }
    }
}

fn lemma_check(name: &str, point: Vec<String>, r: Result<crate::barnes::LemmaReport>, tol: f64) -> Check {
    match r {
        Ok(r) => Check::compare(name, point, r.lhs, r.rhs, tol),
        Err(e) => Check::failed(name, point, tol, e.to_string()),
    }
}

/// Runs the numerical `3F2` checks with absolute tolerance, the Barnes lemma
/// checks with absolute tolerance, and the exact Bailey checks.
pub fn run_classical(suite: ClassicalSuite, seed: u64, config: &ClassicalConfig) -> Result<VerificationReport> {
    use ClassicalSuite::*;
    let wants = |s: ClassicalSuite| suite == All || suite == s;
    let margin = SampleConstraints::default().convergence_margin;
    let mut checks = Vec::new();
    if wants(TwoTerm) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        for _ in 0..config.instances {
            let [b, c, d, f, g] = sample_two_term_params(&mut rng, margin);
            checks.push(verify_two_term(b, c, d, f, g, config.three_f2_tol)?);
        }
        checks.extend(symbolic_composition_checks().into_iter().take(1));
    }
    if wants(Thomae) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        for _ in 0..config.instances {
            let [b, c, d, f, g] = sample_thomae_params(&mut rng, margin);
            checks.push(verify_thomae(b, c, d, f, g, config.three_f2_tol)?);
        }
        // f = b+c, g = b+d is a fixed point; dyadic values keep it exact.
        let mut fixed = verify_thomae(real(1.5), real(0.25), real(0.5), real(1.75), real(2.0), 0.0)?;
        fixed.name = "thomae fixed point".into();
        checks.push(fixed);
        checks.extend(symbolic_composition_checks().into_iter().skip(1));
    }
    if wants(Bailey) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
        for _ in 0..config.bailey_instances {
            let (n, [b, c, d, f, g]) = sample_bailey(&mut rng, config.bailey_max_n);
            checks.push(verify_bailey(n, &b, &c, &d, &f, &g)?);
        }
    }
    if wants(Barnes1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 4);
        let inst: Vec<[ComplexValue; 4]> = (0..config.instances).map(|_| sample_barnes1(&mut rng)).collect();
        checks.extend(par_map(inst.len(), |i| {
            let [a, b, c, d] = inst[i];
            lemma_check("barnes first lemma", strings(&inst[i]), barnes_first_lemma_check(a, b, c, d), config.barnes1_tol)
        }));
    }
    if wants(Barnes2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 5);
        let inst: Vec<[ComplexValue; 5]> = (0..config.instances).map(|_| sample_barnes2(&mut rng)).collect();
        checks.extend(par_map(inst.len(), |i| {
            let [a, b, c, e, f] = inst[i];
            lemma_check(
                "barnes second lemma",
                strings(&inst[i]),
                barnes_second_lemma_check(a, b, c, e, f),
                config.barnes2_tol,
            )
        }));
    }
    Ok(VerificationReport::new(checks))
}

/// `|Re x| <= cap` for every coordinate.
pub fn within_cap(p: &ParameterPoint, cap: f64) -> bool {
    p.coords().iter().all(|z| z.re.abs() <= cap + 1e-12)
}

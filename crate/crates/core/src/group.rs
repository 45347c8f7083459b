//! The invariance group `G_L = <(12), (23), (34), (67), A>` as exact 7×7
//! integer matrices acting on `(a, b, c, d, e, f, g)`.
//!
//! A permutation `σ` is identified with the matrix sending `e_j` to `e_σ(j)`.
//! `A` encodes `(a,b,c,d;e;f,g) -> (a,b,g-c,g-d; e+g-c-d; f+g-c-d, g)`, which on
//! the hyperplane reads `(a, b, g-c, g-d; 1+a+b-f; 1+a+b-e, g)`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::lfunc::ParameterPoint;
use crate::{ComplexValue, Error, RationalValue, Result};

pub const DIM: usize = 7;
/// Linear part of the hyperplane constraint: `phi · x = e+f+g-a-b-c-d`.
pub const PHI: [i64; DIM] = [-1, -1, -1, -1, 1, 1, 1];
/// Enumeration aborts past this many elements.
pub const ENUMERATION_GUARD: usize = 100_000;

pub const A_ENTRIES: [[i64; DIM]; DIM] = [
    [1, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0],
    [0, 0, -1, 0, 0, 0, 1],
    [0, 0, 0, -1, 0, 0, 1],
    [0, 0, -1, -1, 1, 0, 1],
    [0, 0, -1, -1, 0, 1, 1],
    [0, 0, 0, 0, 0, 0, 1],
];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: [[BigInt; DIM]; DIM],
}

impl IntMatrix {
    pub fn zero() -> Self {
        IntMatrix {
            rows: std::array::from_fn(|_| std::array::from_fn(|_| BigInt::zero())),
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..DIM {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(entries: [[i64; DIM]; DIM]) -> Self {
        IntMatrix {
            rows: entries.map(|r| r.map(BigInt::from)),
        }
    }

    /// Matrix of the permutation `j -> images[j]` (0-based).
    pub fn permutation(images: [usize; DIM]) -> Self {
        let mut m = Self::zero();
        for (j, &i) in images.iter().enumerate() {
            m.rows[i][j] = BigInt::one();
        }
        m
    }

    /// Transposition of coordinates `i` and `j` (1-based, as in `(67)`).
    pub fn transposition(i: usize, j: usize) -> Self {
        let mut images: [usize; DIM] = std::array::from_fn(|k| k);
        images.swap(i - 1, j - 1);
        Self::permutation(images)
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt; DIM] {
        &self.rows[i]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = Self::zero();
        for i in 0..DIM {
            for k in 0..DIM {
                let x = &self.rows[i][k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..DIM {
                    let y = &other.rows[k][j];
                    if !y.is_zero() {
                        out.rows[i][j] += x * y;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> IntMatrix {
        (0..n).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn to_i64(&self) -> Option<[[i64; DIM]; DIM]> {
        let mut out = [[0i64; DIM]; DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                out[i][j] = self.rows[i][j].to_i64()?;
            }
        }
        Some(out)
    }

    /// For a permutation matrix, the images `j -> σ(j)`.
    pub fn as_permutation(&self) -> Option<[usize; DIM]> {
        let mut images = [usize::MAX; DIM];
        let mut row_hits = [0usize; DIM];
        for j in 0..DIM {
            for i in 0..DIM {
                let x = &self.rows[i][j];
                if x.is_one() {
                    if images[j] != usize::MAX {
                        return None;
                    }
                    images[j] = i;
                    row_hits[i] += 1;
                } else if !x.is_zero() {
                    return None;
                }
            }
            if images[j] == usize::MAX {
                return None;
            }
        }
        row_hits.iter().all(|&h| h == 1).then_some(images)
    }

    pub fn is_permutation(&self) -> bool {
        self.as_permutation().is_some()
    }

    /// `P_σ · self`: row `j` moves to row `σ(j)`.
    pub fn permute_rows(&self, sigma: &[usize; DIM]) -> IntMatrix {
        let mut out = Self::zero();
        for j in 0..DIM {
            out.rows[sigma[j]] = self.rows[j].clone();
        }
        out
    }

    /// `self · P_τ`: column `j` of the result is column `τ(j)` of `self`.
    pub fn permute_cols(&self, tau: &[usize; DIM]) -> IntMatrix {
        let mut out = Self::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                out.rows[i][j] = self.rows[i][tau[j]].clone();
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let mut m = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..DIM {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..DIM).find(|&r| !m[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..DIM {
                for j in k + 1..DIM {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[DIM - 1][DIM - 1]
    }

    pub fn min_max_entry(&self) -> (BigInt, BigInt) {
        let all = self.rows.iter().flatten();
        let min = all.clone().min().cloned().unwrap_or_default();
        let max = all.max().cloned().unwrap_or_default();
        (min, max)
    }

    pub fn apply_complex(&self, x: &[ComplexValue; DIM]) -> [ComplexValue; DIM] {
        std::array::from_fn(|i| {
            self.rows[i]
                .iter()
                .zip(x)
                .filter(|(m, _)| !m.is_zero())
                .map(|(m, &v)| v * m.to_f64().unwrap_or(f64::NAN))
                .sum()
        })
    }

    pub fn apply_rational(&self, x: &[RationalValue; DIM]) -> [RationalValue; DIM] {
        std::array::from_fn(|i| {
            self.rows[i]
                .iter()
                .zip(x)
                .fold(RationalValue::zero(), |acc, (m, v)| acc + v * RationalValue::from_integer(m.clone()))
        })
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
            write!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// `true` iff `phi · M = phi`, i.e. `M` maps the hyperplane to itself.
pub fn preserves_hyperplane(m: &IntMatrix) -> bool {
    (0..DIM).all(|j| {
        let s: BigInt = (0..DIM).map(|i| BigInt::from(PHI[i]) * m.entry(i, j)).sum();
        s == BigInt::from(PHI[j])
    })
}

/// The five generators, in tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Generator {
    S12,
    S23,
    S34,
    S67,
    A,
}

impl Generator {
    pub const ALL: [Generator; 5] = [Generator::S12, Generator::S23, Generator::S34, Generator::S67, Generator::A];

    pub fn label(self) -> &'static str {
        match self {
            Generator::S12 => "(12)",
            Generator::S23 => "(23)",
            Generator::S34 => "(34)",
            Generator::S67 => "(67)",
            Generator::A => "A",
        }
    }

    pub fn matrix(self) -> IntMatrix {
        match self {
            Generator::S12 => IntMatrix::transposition(1, 2),
            Generator::S23 => IntMatrix::transposition(2, 3),
            Generator::S34 => IntMatrix::transposition(3, 4),
            Generator::S67 => IntMatrix::transposition(6, 7),
            Generator::A => IntMatrix::from_i64(A_ENTRIES),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "(12)" | "s12" | "12" => Ok(Generator::S12),
            "(23)" | "s23" | "23" => Ok(Generator::S23),
            "(34)" | "s34" | "34" => Ok(Generator::S34),
            "(67)" | "s67" | "67" => Ok(Generator::S67),
            "A" => Ok(Generator::A),
            other => Err(Error::UnknownLabel(other.to_string())),
        }
    }
}

/// Product of the generators left to right.
pub fn word_matrix(word: &[Generator]) -> IntMatrix {
    word.iter().fold(IntMatrix::identity(), |acc, g| acc.mul(&g.matrix()))
}

/// `"I"` for the empty word, otherwise the labels concatenated, e.g. `(12)(23)A`.
pub fn word_string(word: &[Generator]) -> String {
    if word.is_empty() {
        "I".to_string()
    } else {
        word.iter().map(|g| g.label()).collect()
    }
}

/// Parses the output of [`word_string`].
pub fn parse_word(s: &str) -> Result<Vec<Generator>> {
    let s = s.trim();
    if s == "I" || s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix('A') {
            out.push(Generator::A);
            rest = r;
        } else if rest.starts_with('(') && rest.len() >= 4 {
            out.push(rest[..4].parse()?);
            rest = &rest[4..];
        } else {
            return Err(Error::UnknownLabel(rest.to_string()));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub matrix: IntMatrix,
    pub word: Vec<Generator>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement {
            matrix: IntMatrix::identity(),
            word: Vec::new(),
        }
    }

    pub fn from_word(word: Vec<Generator>) -> Self {
        GroupElement {
            matrix: word_matrix(&word),
            word,
        }
    }

    pub fn word_string(&self) -> String {
        word_string(&self.word)
    }

    /// `M · p`, validated as a point of the hyperplane.
    pub fn apply(&self, p: &ParameterPoint) -> Result<ParameterPoint> {
        ParameterPoint::new(self.matrix.apply_complex(p.coords()))
    }
}

pub fn generator(label: &str) -> Result<GroupElement> {
    let g: Generator = label.parse()?;
    Ok(GroupElement {
        matrix: g.matrix(),
        word: vec![g],
    })
}

/// Compares words by length, then lexicographically in generator order.
pub fn word_order(x: &[Generator], y: &[Generator]) -> std::cmp::Ordering {
    x.len().cmp(&y.len()).then_with(|| x.cmp(y))
}

#[derive(Debug, Clone)]
pub struct Group {
    elements: Vec<GroupElement>,
    index: HashMap<IntMatrix, usize>,
}

impl Group {
    /// Breadth-first closure of `generators` starting from the identity. Each
    /// element keeps the first word that reached it, which is the shortest and,
    /// among those, lexicographically smallest.
    pub fn generate(generators: &[Generator]) -> Result<Group> {
        let mut gens: Vec<Generator> = generators.to_vec();
        gens.sort();
        let mats: Vec<IntMatrix> = gens.iter().map(|g| g.matrix()).collect();
        let mut elements = vec![GroupElement::identity()];
        let mut index = HashMap::from([(IntMatrix::identity(), 0usize)]);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &i in &frontier {
                for (g, m) in gens.iter().zip(&mats) {
                    let prod = elements[i].matrix.mul(m);
                    if index.contains_key(&prod) {
                        continue;
                    }
                    let mut word = elements[i].word.clone();
                    word.push(*g);
                    index.insert(prod.clone(), elements.len());
                    next.push(elements.len());
                    elements.push(GroupElement { matrix: prod, word });
                    if elements.len() > ENUMERATION_GUARD {
                        return Err(Error::EnumerationOverflow(ENUMERATION_GUARD));
                    }
                }
            }
            frontier = next;
        }
        Ok(Group { elements, index })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn get(&self, m: &IntMatrix) -> Option<&GroupElement> {
        self.index.get(m).map(|&i| &self.elements[i])
    }

    pub fn index_of(&self, m: &IntMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.index.contains_key(m)
    }
}

/// `G_L` from all five generators.
pub fn generate_group() -> Result<Group> {
    Group::generate(&Generator::ALL)
}

/// Process-wide copy of `G_L`, generated on first use.
pub fn shared_group() -> &'static Group {
    static GROUP: OnceLock<Group> = OnceLock::new();
    GROUP.get_or_init(|| generate_group().expect("G_L enumeration is finite"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoxeterPair {
    pub i: &'static str,
    pub j: &'static str,
    /// Exponent prescribed by the D5 diagram.
    pub m: u32,
    /// Actual order of `a_i a_j`.
    pub order: u32,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoxeterReport {
    pub pairs: Vec<CoxeterPair>,
}

impl CoxeterReport {
    pub fn ok(&self) -> bool {
        self.pairs.iter().all(|p| p.holds)
    }
}

pub const COXETER_NODES: [&str; 5] = ["1", "2", "3", "4", "1'"];

/// `a1 = (34), a2 = (23), a3 = (34)A, a4 = (67), a1' = (12)`.
pub fn coxeter_generators() -> [IntMatrix; 5] {
    use Generator::*;
    [
        word_matrix(&[S34]),
        word_matrix(&[S23]),
        word_matrix(&[S34, A]),
        word_matrix(&[S67]),
        word_matrix(&[S12]),
    ]
}

/// D5 diagram: path 1-2-3-4 with 1' attached to 2.
pub fn coxeter_exponent(i: usize, j: usize) -> u32 {
    const EDGES: [(usize, usize); 4] = [(0, 1), (1, 2), (2, 3), (4, 1)];
    if i == j {
        1
    } else if EDGES.contains(&(i, j)) || EDGES.contains(&(j, i)) {
        3
    } else {
        2
    }
}

fn element_order(m: &IntMatrix, cap: u32) -> u32 {
    let mut p = m.clone();
    for k in 1..=cap {
        if p.is_identity() {
            return k;
        }
        p = p.mul(m);
    }
    0
}

/// Checks `(a_i a_j)^{m_ij} = 1` for all 25 ordered pairs.
pub fn verify_coxeter_presentation() -> Result<CoxeterReport> {
    let gens = coxeter_generators();
    let mut pairs = Vec::with_capacity(25);
    for i in 0..5 {
        for j in 0..5 {
            let m = coxeter_exponent(i, j);
            let prod = gens[i].mul(&gens[j]);
            let holds = prod.pow(m).is_identity();
            pairs.push(CoxeterPair {
                i: COXETER_NODES[i],
                j: COXETER_NODES[j],
                m,
                order: element_order(&prod, 12),
                holds,
            });
        }
    }
    let report = CoxeterReport { pairs };
    if let Some(p) = report.pairs.iter().find(|p| !p.holds) {
        return Err(Error::PresentationFailure(format!("a{}", p.i), format!("a{}", p.j)));
    }
    Ok(report)
}

/// All permutation matrices in the group.
pub fn permutation_subgroup(group: &Group) -> Vec<GroupElement> {
    group
        .elements()
        .iter()
        .filter(|e| e.matrix.is_permutation())
        .cloned()
        .collect()
}

/// Labels of the six double cosets `Σ α Σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TemplateId {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl TemplateId {
    pub const ALL: [TemplateId; 6] = [
        TemplateId::I,
        TemplateId::II,
        TemplateId::III,
        TemplateId::IV,
        TemplateId::V,
        TemplateId::VI,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TemplateId::I => "I",
            TemplateId::II => "II",
            TemplateId::III => "III",
            TemplateId::IV => "IV",
            TemplateId::V => "V",
            TemplateId::VI => "VI",
        }
    }

    /// Classical representative: `I, A, ((123)(67)A)^2, ((123)(67)A)^3,
    /// ((123)A)^3, ((123)(67)A)^4` with `(123) = (12)(23)`.
    pub fn representative_word(self) -> Vec<Generator> {
        use Generator::*;
        let with_67 = [S12, S23, S67, A];
        let without = [S12, S23, A];
        let rep = |base: &[Generator], n: usize| base.iter().copied().cycle().take(base.len() * n).collect();
        match self {
            TemplateId::I => Vec::new(),
            TemplateId::II => vec![A],
            TemplateId::III => rep(&with_67, 2),
            TemplateId::IV => rep(&with_67, 3),
            TemplateId::V => rep(&without, 3),
            TemplateId::VI => rep(&with_67, 4),
        }
    }

    pub fn representative_label(self) -> &'static str {
        match self {
            TemplateId::I => "I7",
            TemplateId::II => "A",
            TemplateId::III => "((123)(67)A)^2",
            TemplateId::IV => "((123)(67)A)^3",
            TemplateId::V => "((123)A)^3",
            TemplateId::VI => "((123)(67)A)^4",
        }
    }

    /// Size of the double coset, as a multiple of `|Σ| = 48`.
    pub fn expected_size(self) -> usize {
        48 * match self {
            TemplateId::I | TemplateId::VI => 1,
            TemplateId::II | TemplateId::III | TemplateId::IV => 12,
            TemplateId::V => 2,
        }
    }
}

impl FromStr for TemplateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TemplateId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown template {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCosetClass {
    /// The group element equal to the classical representative matrix.
    pub representative: GroupElement,
    pub size: usize,
    pub template: TemplateId,
    /// Indices into [`Group::elements`].
    pub members: Vec<usize>,
}

/// Partitions the group into double cosets `Σ α Σ`.
pub fn double_cosets(group: &Group, sigma: &[GroupElement]) -> Result<Vec<DoubleCosetClass>> {
    let perms: Vec<[usize; DIM]> = sigma
        .iter()
        .map(|s| {
            s.matrix
                .as_permutation()
                .ok_or_else(|| Error::Partition("Σ contains a non-permutation matrix".into()))
        })
        .collect::<Result<_>>()?;
    let mut class_of = vec![usize::MAX; group.order()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..group.order() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut seen = HashSet::new();
        let base = &group.elements()[start].matrix;
        for s in &perms {
            let left = base.permute_rows(s);
            for t in &perms {
                let m = left.permute_cols(t);
                let idx = group
                    .index_of(&m)
                    .ok_or_else(|| Error::Partition("σατ left the group".into()))?;
                if seen.insert(idx) {
                    class_of[idx] = id;
                }
            }
        }
        let mut members: Vec<usize> = seen.into_iter().collect();
        members.sort_unstable();
        orbits.push(members);
    }
    if orbits.len() != 6 {
        return Err(Error::Partition(format!("found {} double cosets, expected 6", orbits.len())));
    }
    let mut classes = Vec::with_capacity(6);
    let mut used = [false; 6];
    for template in TemplateId::ALL {
        let rep = word_matrix(&template.representative_word());
        let idx = group
            .index_of(&rep)
            .ok_or_else(|| Error::Partition(format!("{} not in the group", template.representative_label())))?;
        let cls = class_of[idx];
        if used[cls] {
            return Err(Error::Partition(format!(
                "{} shares a double coset with another representative",
                template.representative_label()
            )));
        }
        used[cls] = true;
        classes.push(DoubleCosetClass {
            representative: group.elements()[idx].clone(),
            size: orbits[cls].len(),
            template,
            members: orbits[cls].clone(),
        });
    }
    Ok(classes)
}

/// Double cosets of the shared group, computed once.
pub fn shared_cosets() -> &'static [DoubleCosetClass] {
    static COSETS: OnceLock<Vec<DoubleCosetClass>> = OnceLock::new();
    COSETS.get_or_init(|| {
        let g = shared_group();
        double_cosets(g, &permutation_subgroup(g)).expect("G_L has six double cosets")
    })
}

/// Template of every element of the shared group, indexed like its elements.
pub fn shared_templates() -> &'static [TemplateId] {
    static TEMPLATES: OnceLock<Vec<TemplateId>> = OnceLock::new();
    TEMPLATES.get_or_init(|| {
        let mut out = vec![TemplateId::I; shared_group().order()];
        for cls in shared_cosets() {
            for &m in &cls.members {
                out[m] = cls.template;
            }
        }
        out
    })
}

/// Whether every entry of `m` has absolute value at most `bound`.
pub fn entries_bounded(m: &IntMatrix, bound: i64) -> bool {
    let b = BigInt::from(bound);
    (0..DIM).all(|i| (0..DIM).all(|j| m.entry(i, j).abs() <= b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    #[test]
    fn generator_matrices() {
        let a = generator("A").unwrap();
        assert_eq!(a.matrix.to_i64().unwrap()[4], [0, 0, -1, -1, 1, 0, 1]);
        assert!(a.matrix.mul(&a.matrix).is_identity());
        let s = generator("(67)").unwrap().matrix;
        let x: [ComplexValue; DIM] = std::array::from_fn(|i| ComplexValue::new(i as f64, 0.0));
        let y = s.apply_complex(&x);
        assert_eq!((y[5].re, y[6].re), (6.0, 5.0));
        assert!(matches!(generator("(45)"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn three_cycle_matches_printed_matrix() {
        let m = word_matrix(&[S12, S23]).to_i64().unwrap();
        assert_eq!(m[0], [0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(m[1], [1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(m[2], [0, 1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn printed_a1() {
        let a1 = word_matrix(&TemplateId::III.representative_word());
        let want = [
            [0, -1, -1, -1, 0, 1, 1],
            [0, 0, -1, 0, 0, 0, 1],
            [1, 0, 0, 0, 0, 0, 0],
            [0, 0, -1, 0, 0, 1, 0],
            [0, -1, -2, -1, 1, 1, 1],
            [0, 0, -1, -1, 0, 1, 1],
            [0, -1, -1, 0, 0, 1, 1],
        ];
        assert_eq!(a1.to_i64().unwrap(), want);
        assert_eq!(*a1.entry(4, 2), BigInt::from(-2));
    }

    #[test]
    fn hyperplane_checks() {
        assert!(preserves_hyperplane(&Generator::A.matrix()));
        assert!(preserves_hyperplane(&IntMatrix::transposition(1, 4)));
        let mut scale = [[0i64; DIM]; DIM];
        for (i, row) in scale.iter_mut().enumerate() {
            row[i] = if i == 4 { 2 } else { 1 };
        }
        assert!(!preserves_hyperplane(&IntMatrix::from_i64(scale)));
    }

    #[test]
    fn determinant_of_generators() {
        assert_eq!(Generator::A.matrix().determinant(), BigInt::from(1));
        assert_eq!(IntMatrix::transposition(1, 2).determinant(), BigInt::from(-1));
        assert_eq!(IntMatrix::zero().determinant(), BigInt::zero());
    }

    #[test]
    fn word_round_trip() {
        let w = vec![S12, S23, S67, A, S34];
        assert_eq!(parse_word(&word_string(&w)).unwrap(), w);
        assert_eq!(parse_word("I").unwrap(), vec![]);
        assert!(parse_word("(12)B").is_err());
    }

    #[test]
    fn sigma_alone_has_order_48() {
        let sigma = Group::generate(&[S12, S23, S34, S67]).unwrap();
        assert_eq!(sigma.order(), 48);
    }

    #[test]
    fn coxeter_pairs() {
        let r = verify_coxeter_presentation().unwrap();
        assert!(r.ok());
        let find = |i: &str, j: &str| r.pairs.iter().find(|p| p.i == i && p.j == j).unwrap().clone();
        assert_eq!(find("2", "3").m, 3);
        assert_eq!(find("4", "1'").m, 2);
        assert_eq!(find("1", "1").m, 1);
        assert!(r.pairs.iter().all(|p| p.order == p.m));
    }
}

//! Human-readable form of every element of `G_L` as a transformation of
//! `(a, b, c, d; e; f, g)`, classified by double coset.
//!
//! A matrix row `r` sends `x` to `r · x`. On the hyperplane `phi · x = 1`, so
//! `r · x = k + (r - k phi) · x` for any `k`, which is how constants such as the
//! `1` in `1+a+b-f` appear.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::affine::AffineForm;
use crate::group::{
    shared_group, shared_templates, word_order, word_string, GroupElement, IntMatrix, TemplateId, DIM, PHI,
};
use crate::lfunc::VARIABLES;
use crate::{Error, RationalValue, Result};

/// Largest constant shift used when rendering a row.
pub const MAX_SHIFT: i64 = 2;

/// The `k` in `shifts` minimizing `|row - k phi|_1`, smallest on ties.
pub fn minimizing_shift(row: &[i64; DIM], shifts: impl IntoIterator<Item = i64>) -> i64 {
    let cost = |k: i64| -> i64 { row.iter().zip(PHI).map(|(r, p)| (r - k * p).abs()).sum() };
    shifts
        .into_iter()
        .map(|k| (cost(k), k))
        .min()
        .map(|(_, k)| k)
        .unwrap_or(0)
}

/// The affine form of `row` with constant in `0..=MAX_SHIFT`, valid on `V`.
pub fn display_form(row: &[i64; DIM]) -> AffineForm {
    let k = minimizing_shift(row, 0..=MAX_SHIFT);
    AffineForm::new(k, row.iter().zip(PHI).map(|(r, p)| r - k * p).collect())
}

/// `(0,0,-1,-1,1,0,1)` renders as `1+a+b-f`.
pub fn affine_display(row: &[i64; DIM]) -> String {
    display_form(row).render(&VARIABLES)
}

/// Strips whitespace and maps the typographic minus to `-`.
pub fn normalize_params(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '−' { '-' } else { c })
        .collect()
}

/// `x0,x1,x2,x3;x4;x5,x6`.
pub fn join_params<S: AsRef<str>>(p: &[S; DIM]) -> String {
    let p: Vec<&str> = p.iter().map(|s| s.as_ref()).collect();
    format!("{},{},{},{};{};{},{}", p[0], p[1], p[2], p[3], p[4], p[5], p[6])
}

#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub element: GroupElement,
    pub forms: [AffineForm; DIM],
    pub target_params: [String; DIM],
    pub template: TemplateId,
}

impl Relation {
    /// Target parameters as `a',b',c',d';e';f',g'`.
    pub fn params_display(&self) -> String {
        join_params(&self.target_params)
    }

    pub fn text_line(&self) -> String {
        format!("L[{}] = L[{}]", join_params(&VARIABLES), self.params_display())
    }

    pub fn eval_rational(&self, x: &[RationalValue; DIM]) -> [RationalValue; DIM] {
        std::array::from_fn(|i| self.forms[i].eval_rational(x))
    }
}

/// Relation of an element of the shared group.
pub fn relation_for(g: &GroupElement) -> Result<Relation> {
    let group = shared_group();
    let idx = group
        .index_of(&g.matrix)
        .ok_or_else(|| Error::Domain("matrix is not an element of the invariance group".into()))?;
    let rows = g
        .matrix
        .to_i64()
        .ok_or_else(|| Error::Domain("matrix entries overflow i64".into()))?;
    let forms: [AffineForm; DIM] = std::array::from_fn(|i| display_form(&rows[i]));
    let target_params = std::array::from_fn(|i| forms[i].render(&VARIABLES));
    Ok(Relation {
        element: g.clone(),
        forms,
        target_params,
        template: shared_templates()[idx],
    })
}

#[derive(Debug, Clone)]
pub struct Catalog {
    relations: Vec<Relation>,
}

impl Catalog {
    /// All relations, sorted by template, then word length, then word.
    pub fn build() -> Result<Catalog> {
        let mut relations = shared_group()
            .elements()
            .iter()
            .map(relation_for)
            .collect::<Result<Vec<_>>>()?;
        relations.sort_by(|x, y| {
            x.template
                .cmp(&y.template)
                .then_with(|| word_order(&x.element.word, &y.element.word))
        });
        Ok(Catalog { relations })
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn by_template(&self, t: TemplateId) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(move |r| r.template == t)
    }

    /// The first relation of class `t` whose target list equals `params` up to
    /// whitespace.
    pub fn find_params(&self, t: TemplateId, params: &str) -> Option<&Relation> {
        let want = normalize_params(params);
        self.by_template(t).find(|r| r.params_display() == want)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogFormat {
    Json,
    Text,
}

impl FromStr for CatalogFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(CatalogFormat::Json),
            "text" => Ok(CatalogFormat::Text),
            other => Err(Error::Parse(format!("unknown catalog format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub word: String,
    pub matrix: Vec<Vec<i64>>,
    pub template: TemplateId,
    pub params: BTreeMap<String, String>,
}

impl CatalogRecord {
    pub fn from_relation(r: &Relation) -> Result<Self> {
        let rows = r
            .element
            .matrix
            .to_i64()
            .ok_or_else(|| Error::Domain("matrix entries overflow i64".into()))?;
        Ok(CatalogRecord {
            word: word_string(&r.element.word),
            matrix: rows.iter().map(|row| row.to_vec()).collect(),
            template: r.template,
            params: VARIABLES
                .iter()
                .zip(&r.target_params)
                .map(|(v, p)| (format!("{v}'"), p.clone()))
                .collect(),
        })
    }

    pub fn int_matrix(&self) -> Result<IntMatrix> {
        if self.matrix.len() != DIM || self.matrix.iter().any(|r| r.len() != DIM) {
            return Err(Error::Parse("matrix must be 7×7".into()));
        }
        Ok(IntMatrix::from_i64(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.matrix[i][j])
        })))
    }
}

pub fn export_catalog(catalog: &Catalog, format: CatalogFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        CatalogFormat::Json => {
            let records = catalog
                .relations()
                .iter()
                .map(CatalogRecord::from_relation)
                .collect::<Result<Vec<_>>>()?;
            serde_json::to_writer_pretty(&mut *out, &records)?;
            writeln!(out)?;
        }
        CatalogFormat::Text => {
            for r in catalog.relations() {
                writeln!(out, "{}", r.text_line())?;
            }
        }
    }
    Ok(())
}

pub fn import_catalog_json(input: &mut dyn Read) -> Result<Vec<CatalogRecord>> {
    serde_json::from_reader(input).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{word_matrix, Generator};

    #[test]
    fn display_examples() {
        assert_eq!(affine_display(&[0, 0, -1, -1, 1, 0, 1]), "1+a+b-f");
        assert_eq!(affine_display(&[1, 0, 0, 0, 0, 0, 0]), "a");
        assert_eq!(affine_display(&[0, 0, -1, 0, 0, 0, 1]), "g-c");
        assert_eq!(affine_display(&[0, -1, -2, -1, 1, 1, 1]), "1+a-c");
    }

    #[test]
    fn group_rows_never_need_larger_shifts() {
        for g in shared_group().elements() {
            for row in g.matrix.to_i64().unwrap() {
                let k = minimizing_shift(&row, -6..=6);
                assert!((0..=MAX_SHIFT).contains(&k), "{row:?} wants k = {k}");
            }
        }
    }

    #[test]
    fn identity_and_a() {
        let id = relation_for(&GroupElement::identity()).unwrap();
        assert_eq!(id.params_display(), "a,b,c,d;e;f,g");
        assert_eq!(id.template, TemplateId::I);
        let a = relation_for(&GroupElement::from_word(vec![Generator::A])).unwrap();
        assert_eq!(a.params_display(), "a,b,g-c,g-d;1+a+b-f;1+a+b-e,g");
        assert_eq!(a.template, TemplateId::II);
        assert_eq!(
            a.text_line(),
            "L[a,b,c,d;e;f,g] = L[a,b,g-c,g-d;1+a+b-f;1+a+b-e,g]"
        );
    }

    #[test]
    fn representative_of_vi() {
        let g = GroupElement::from_word(TemplateId::VI.representative_word());
        let r = relation_for(&g).unwrap();
        assert_eq!(r.template, TemplateId::VI);
        assert_eq!(r.params_display(), "1+c-e,1+d-e,1+a-e,1+b-e;2-e;1+g-e,1+f-e");
    }

    #[test]
    fn outside_matrix_rejected() {
        let g = GroupElement {
            matrix: word_matrix(&[]).mul(&IntMatrix::from_i64([[2; DIM]; DIM])),
            word: vec![],
        };
        assert!(relation_for(&g).is_err());
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_params("g − a, g-b"), "g-a,g-b");
    }
}

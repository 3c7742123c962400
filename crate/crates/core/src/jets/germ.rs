use std::collections::BTreeMap;

use crate::error::{AdegError, Result};
use crate::field::PrimeField;
use crate::poly::{Exp, TruncatedPoly};

/// A bivariate polynomial germ with integer coefficients vanishing at the origin.
#[derive(Debug, Clone)]
pub struct GermSpec {
    terms: BTreeMap<Exp, i64>,
    source_text: String,
}

impl PartialEq for GermSpec {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for GermSpec {}

/// Shape of a germ as far as the closed-form catalog cares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GermPattern {
    /// c * x * y
    Node,
    /// a * y^t + b * x^s with s >= t >= 2 after swapping x and y if needed.
    Binomial { t: u32, s: u32 },
    Other,
}

impl GermSpec {
    pub fn new(terms: BTreeMap<Exp, i64>, source_text: impl Into<String>) -> Result<Self> {
        let terms: BTreeMap<Exp, i64> = terms.into_iter().filter(|(_, c)| *c != 0).collect();
        if terms.is_empty() {
            return Err(AdegError::NotAGerm("the zero polynomial".into()));
        }
        if terms.contains_key(&(0, 0)) {
            return Err(AdegError::NotAGerm("nonzero constant term".into()));
        }
        Ok(GermSpec { terms, source_text: source_text.into() })
    }

    pub fn from_terms(terms: &[(Exp, i64)]) -> Result<Self> {
        Self::new(terms.iter().copied().collect(), "")
    }

    pub fn node() -> Self {
        Self::from_terms(&[((1, 1), 1)]).expect("valid")
    }

    pub fn terms(&self) -> &BTreeMap<Exp, i64> {
        &self.terms
    }

    pub fn source_text(&self) -> &str {
        &self.source_text
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    /// The germ reduced mod p as an exact polynomial.
    pub fn to_poly(&self, field: PrimeField) -> TruncatedPoly {
        TruncatedPoly::exact(field, self.terms.iter().map(|(e, c)| (*e, field.from_i64(*c))))
    }

    pub fn pattern(&self) -> GermPattern {
        let keys: Vec<Exp> = self.terms.keys().copied().collect();
        match keys.as_slice() {
            [(1, 1)] => GermPattern::Node,
            [a, b] => {
                let (mut t, mut s) = match (a, b) {
                    ((0, t), (s, 0)) | ((s, 0), (0, t)) => (*t, *s),
                    _ => return GermPattern::Other,
                };
                if t > s {
                    std::mem::swap(&mut t, &mut s);
                }
                if t >= 2 {
                    GermPattern::Binomial { t, s }
                } else {
                    GermPattern::Other
                }
            }
            _ => GermPattern::Other,
        }
    }

    /// True when the germ is analytically a node (xy or a y^2 + b x^2).
    pub fn is_node_type(&self) -> bool {
        matches!(self.pattern(), GermPattern::Node | GermPattern::Binomial { t: 2, s: 2 })
    }
}

//! Taylor relations presenting the order-m principal parts of a germ.

use std::collections::BTreeMap;

use crate::error::{AdegError, Result};
use crate::poly::{Exp, TruncatedPoly, Var};

/// Mixed partials of an exact germ up to a given order, truncated at N.
#[derive(Debug, Clone)]
pub struct Partials {
    n: u32,
    table: BTreeMap<Exp, TruncatedPoly>,
}

impl Partials {
    /// `f` must be exact (truncation above its degree) so derivatives lose nothing.
    pub fn new(f: &TruncatedPoly, max_order: u32, n: u32) -> Self {
        let mut table = BTreeMap::new();
        let mut row = f.clone();
        for s in 0..=max_order {
            let mut cur = row.clone();
            for t in 0..=(max_order - s) {
                table.insert((s, t), cur.with_truncation(n));
                cur = cur.partial_derivative(Var::Y);
            }
            row = row.partial_derivative(Var::X);
        }
        Partials { n, table }
    }

    /// d^(s+t) f / dx^s dy^t.
    pub fn get(&self, s: u32, t: u32) -> &TruncatedPoly {
        &self.table[&(s, t)]
    }

    pub fn truncation(&self) -> u32 {
        self.n
    }
}

/// Relations r_ij, each a list of (generator a^s b^t, coefficient).
#[derive(Debug, Clone)]
pub struct RelationSet {
    pub order: usize,
    pub relations: BTreeMap<Exp, Vec<(Exp, TruncatedPoly)>>,
}

/// r_ij = sum over 1 <= d <= m-1-(i+j) and 0 <= s <= d of
/// (1/(s!(d-s)!)) d^d f/dx^s dy^(d-s) * a^(s+i) b^(d-s+j).
pub fn taylor_relations(f: &TruncatedPoly, m: usize, n: u32) -> Result<RelationSet> {
    if m < 1 {
        return Err(AdegError::Usage("order must be at least 1".into()));
    }
    let field = f.field();
    if field.modulus() < m as u64 {
        return Err(AdegError::SmallCharacteristic { p: field.modulus(), m });
    }
    let top = m.saturating_sub(1) as u32;
    let partials = Partials::new(f, top, n);
    let mut fact = vec![1u64; m + 1];
    for k in 1..=m {
        fact[k] = field.mul(fact[k - 1], k as u64);
    }
    let mut relations = BTreeMap::new();
    for w in 0..top {
        for i in 0..=w {
            let j = w - i;
            let mut rel = Vec::new();
            for d in 1..=(top - w) {
                for s in 0..=d {
                    let inv = field.inv(field.mul(fact[s as usize], fact[(d - s) as usize]))?;
                    let c = partials.get(s, d - s).scale(inv);
                    if !c.is_zero() {
                        rel.push(((s + i, d - s + j), c));
                    }
                }
            }
            relations.insert((i, j), rel);
        }
    }
    Ok(RelationSet { order: m, relations })
}

//! Jet elements: the columns of a degeneracy matrix.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AdegError, Result};
use crate::field::PrimeField;
use crate::poly::{Exp, TruncatedPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementMode {
    /// Constant coefficients alpha_ij of a^i b^j.
    AbConstant,
    /// Constant coefficients c_ij of u^i v^j, where u = x + a and v = y + b.
    UvCoeffs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Constraint {
    #[default]
    None,
    /// First element is flexed along the branch y = 0: c_i0 = 0 for i <= m - 2,
    /// keeping c_(m-1)0 free. Zeroing that one too puts every minor in (y).
    Flecnode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetElement {
    pub order: usize,
    pub mode: ElementMode,
    pub coeffs: BTreeMap<Exp, u64>,
}

impl JetElement {
    pub fn new(order: usize, mode: ElementMode, coeffs: BTreeMap<Exp, u64>) -> Result<Self> {
        if let Some((i, j)) = coeffs.keys().find(|(i, j)| (i + j) as usize >= order) {
            return Err(AdegError::Usage(format!("index ({i},{j}) outside the order-{order} triangle")));
        }
        Ok(JetElement { order, mode, coeffs })
    }

    pub fn from_pairs(order: usize, mode: ElementMode, pairs: &[(Exp, u64)]) -> Result<Self> {
        Self::new(order, mode, pairs.iter().copied().collect())
    }
}

/// Every exponent pair with i + j < m, by degree.
pub fn triangle(m: usize) -> impl Iterator<Item = Exp> {
    let m = m as u32;
    (0..m).flat_map(|d| (0..=d).map(move |j| (d - j, j)))
}

/// Uniform random elements, reproducible from `seed`.
pub fn random_jet_elements(
    m: usize,
    count: usize,
    constraint: Constraint,
    mode: ElementMode,
    field: PrimeField,
    seed: u64,
) -> Vec<JetElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = field.modulus();
    (0..count)
        .map(|k| {
            let flec = k == 0 && constraint == Constraint::Flecnode;
            let mode = if flec { ElementMode::UvCoeffs } else { mode };
            let coeffs = triangle(m)
                .map(|e| {
                    let c = rng.gen_range(0..p);
                    (e, if flec && e.1 == 0 && (e.0 as usize) + 2 <= m { 0 } else { c })
                })
                .collect();
            JetElement { order: m, mode, coeffs }
        })
        .collect()
}

/// alpha_ij = sum over (i',j') >= (i,j) of C(i',i) C(j',j) c_i'j' x^(i'-i) y^(j'-j).
pub fn uv_to_ab(elem: &JetElement, field: PrimeField, n: u32) -> Result<BTreeMap<Exp, TruncatedPoly>> {
    if elem.mode != ElementMode::UvCoeffs {
        return Err(AdegError::Usage("uv_to_ab expects an element in u,v coefficients".into()));
    }
    let mut terms: BTreeMap<Exp, Vec<(Exp, u64)>> = BTreeMap::new();
    for (&(ip, jp), &c) in &elem.coeffs {
        for i in 0..=ip {
            for j in 0..=jp {
                let b = field.mul(binom_mod(field, ip, i), binom_mod(field, jp, j));
                terms.entry((i, j)).or_default().push(((ip - i, jp - j), field.mul(b, c)));
            }
        }
    }
    Ok(terms
        .into_iter()
        .map(|(e, t)| (e, TruncatedPoly::from_terms(field, n, t)))
        .filter(|(_, p)| !p.is_zero())
        .collect())
}

pub(crate) fn binom_mod(field: PrimeField, n: u32, k: u32) -> u64 {
    field.from_i128(binom_i128(n as i128, k as i128))
}

pub(crate) fn binom_i128(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for t in 0..k {
        r = r * (n - t) / (t + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> PrimeField {
        PrimeField::default()
    }

    fn alpha(pairs: &[(Exp, u64)]) -> BTreeMap<Exp, TruncatedPoly> {
        let e = JetElement::from_pairs(4, ElementMode::UvCoeffs, pairs).unwrap();
        uv_to_ab(&e, fp(), 8).unwrap()
    }

    fn mono(e: Exp, c: u64) -> TruncatedPoly {
        TruncatedPoly::monomial(fp(), 8, e, c)
    }

    #[test]
    fn u_is_x_plus_a() {
        let a = alpha(&[((1, 0), 1)]);
        assert_eq!(a[&(0, 0)], mono((1, 0), 1));
        assert_eq!(a[&(1, 0)], mono((0, 0), 1));
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn uv_expands() {
        let a = alpha(&[((1, 1), 1)]);
        assert_eq!(a[&(0, 0)], mono((1, 1), 1));
        assert_eq!(a[&(1, 0)], mono((0, 1), 1));
        assert_eq!(a[&(0, 1)], mono((1, 0), 1));
        assert_eq!(a[&(1, 1)], mono((0, 0), 1));
    }

    #[test]
    fn u_squared() {
        let a = alpha(&[((2, 0), 1)]);
        assert_eq!(a[&(0, 0)], mono((2, 0), 1));
        assert_eq!(a[&(1, 0)], mono((1, 0), 2));
        assert_eq!(a[&(2, 0)], mono((0, 0), 1));
    }

    #[test]
    fn shapes_and_determinism() {
        let els = random_jet_elements(3, 2, Constraint::None, ElementMode::AbConstant, fp(), 1);
        assert_eq!(els.len(), 2);
        assert!(els.iter().all(|e| e.coeffs.len() == 6));
        let again = random_jet_elements(3, 2, Constraint::None, ElementMode::AbConstant, fp(), 1);
        assert_eq!(els, again);
    }

    #[test]
    fn flecnode_constraint() {
        let els = random_jet_elements(4, 3, Constraint::Flecnode, ElementMode::UvCoeffs, fp(), 7);
        for i in 0..3 {
            assert_eq!(els[0].coeffs[&(i, 0)], 0);
        }
        assert_ne!(els[0].coeffs[&(3, 0)], 0);
        assert_eq!(els[0].mode, ElementMode::UvCoeffs);
    }

    #[test]
    fn outside_triangle_rejected() {
        assert!(JetElement::from_pairs(2, ElementMode::AbConstant, &[((1, 1), 1)]).is_err());
    }
}

//! Dual-basis functionals on principal parts.
//!
//! A functional is stored as its values on generators. For the a,b
//! presentation the keys are exponents of a^i b^j. For the node basis the
//! keys are reduced u,v monomials: (j, 0) is u^j and (0, j) is v^j.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::error::{AdegError, Result};
use crate::field::PrimeField;
use crate::poly::{Exp, TruncatedPoly};

use super::elements::{binom_i128, binom_mod, uv_to_ab, ElementMode, JetElement};
use super::relations::Partials;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisFlavor {
    ExplicitSmall,
    Node,
    ZeroSpecialized,
}

#[derive(Debug, Clone)]
pub struct DualBasis {
    pub order: usize,
    pub flavor: BasisFlavor,
    pub field: PrimeField,
    pub truncation: u32,
    pub functionals: Vec<BTreeMap<Exp, TruncatedPoly>>,
}

impl DualBasis {
    pub fn value(&self, k: usize, generator: Exp) -> Option<&TruncatedPoly> {
        self.functionals[k].get(&generator)
    }

    /// Applies functional k to a linear combination of generators.
    pub fn apply_combination(&self, k: usize, combo: &[(Exp, TruncatedPoly)]) -> TruncatedPoly {
        let field = self.field();
        let mut acc = TruncatedPoly::zero(field, self.truncation);
        for (g, c) in combo {
            if let Some(v) = self.value(k, *g) {
                acc = &acc + &(c * v);
            }
        }
        acc
    }

    /// Applies functional k to a jet element.
    pub fn apply(&self, k: usize, elem: &JetElement) -> Result<TruncatedPoly> {
        if elem.order != self.order {
            return Err(AdegError::Usage(format!(
                "element of order {} against a basis of order {}",
                elem.order, self.order
            )));
        }
        let field = self.field();
        let n = self.truncation;
        let combo: Vec<(Exp, TruncatedPoly)> = match (self.flavor, elem.mode) {
            (BasisFlavor::Node, ElementMode::UvCoeffs) => elem
                .coeffs
                .iter()
                .map(|(&(i, j), &c)| {
                    let k = i.min(j);
                    let key = (i - k, j - k);
                    (key, TruncatedPoly::monomial(field, n, (k, k), c))
                })
                .collect(),
            (BasisFlavor::Node, ElementMode::AbConstant) => {
                return Err(AdegError::Usage("the node basis needs elements in u,v coefficients".into()))
            }
            (_, ElementMode::AbConstant) => elem
                .coeffs
                .iter()
                .map(|(&e, &c)| (e, TruncatedPoly::constant(field, n, c)))
                .collect(),
            (_, ElementMode::UvCoeffs) => uv_to_ab(elem, field, n)?.into_iter().collect(),
        };
        Ok(self.apply_combination(k, &combo))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
}

/// The explicit functionals theta_1..theta_m for m <= 4, valid for any germ.
pub fn dual_basis_small(f: &TruncatedPoly, m: usize, n: u32) -> Result<DualBasis> {
    if !(1..=4).contains(&m) {
        return Err(AdegError::Unsupported(format!(
            "explicit dual basis is only available for orders 1..=4, not {m}"
        )));
    }
    let field = f.field();
    let d = Partials::new(f, 3, n);
    let half = field.inv(2)?;
    let third = field.inv(3)?;
    let sixth = field.mul(half, third);
    let (fx, fy) = (d.get(1, 0), d.get(0, 1));
    let (fxx, fxy, fyy) = (d.get(2, 0), d.get(1, 1), d.get(0, 2));
    let (fxxx, fxxy, fxyy, fyyy) = (d.get(3, 0), d.get(2, 1), d.get(1, 2), d.get(0, 3));
    let fx2 = fx * fx;
    let fy2 = fy * fy;
    let fxfy = fx * fy;

    let mut functionals = Vec::with_capacity(m);
    functionals.push(BTreeMap::from([((0, 0), TruncatedPoly::one(field, n))]));
    if m >= 2 {
        functionals.push(BTreeMap::from([((1, 0), fy.clone()), ((0, 1), -fx)]));
    }
    if m >= 3 {
        let a10 = &(fxy * fy) - &(fyy * fx).scale(half);
        let a01 = (fxx * fy).scale(field.neg(half));
        functionals.push(BTreeMap::from([
            ((1, 0), a10),
            ((0, 1), a01),
            ((2, 0), fy2.clone()),
            ((1, 1), -&fxfy),
            ((0, 2), fx2.clone()),
        ]));
    }
    if m >= 4 {
        let bracket = &(&(&(fxxy * &fy2) - &(fxyy * &fxfy)) - &(&(fxy * fyy) * fx)) + &(fyyy * &fx2).scale(third);
        let a10 = &(&(fxy * fxy) * fy) + &bracket.scale(half);
        let a01 = -&(&(&(fxx * fxy) * fy).scale(half) + &(fxxx * &fy2).scale(sixth));
        let a20 = &(fxy * &fy2).scale(2) - &(fyy * &fxfy);
        let a11 = &(-&(fxy * &fxfy)) + &(&(fyy * &fx2) - &(fxx * &fy2)).scale(half);
        let a02 = fxx * &fxfy;
        functionals.push(BTreeMap::from([
            ((1, 0), a10),
            ((0, 1), a01),
            ((2, 0), a20),
            ((1, 1), a11),
            ((0, 2), a02),
            ((3, 0), fy * &fy2),
            ((2, 1), -&(&fy2 * fx)),
            ((1, 2), fy * &fx2),
            ((0, 3), -&(fx * &fx2)),
        ]));
    }
    for fun in &mut functionals {
        fun.retain(|_, v| !v.is_zero());
    }
    Ok(DualBasis { order: m, flavor: BasisFlavor::ExplicitSmall, field, truncation: n, functionals })
}

/// Node functionals e_0..e_(m-1) in u,v coordinates with uv = xy.
pub fn dual_basis_node(m: usize, field: PrimeField, n: u32) -> Result<DualBasis> {
    if m < 1 {
        return Err(AdegError::Usage("order must be at least 1".into()));
    }
    let mm = m as i128;
    let mut functionals = Vec::with_capacity(m);
    for i in 0..m {
        let ii = i as i128;
        let mut e = BTreeMap::new();
        e.insert((i as u32, 0), TruncatedPoly::monomial(field, n, (i as u32, 0), 1));
        let sign = if (m - i + 1) % 2 == 0 { 1 } else { -1 };
        let top = field.from_i128(sign * binom_i128(mm, ii));
        e.insert((m as u32, 0), TruncatedPoly::monomial(field, n, (m as u32, 0), top));
        for l in 1..=m {
            let ll = l as i128;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let num = sign * ll * (mm - ii) * binom_i128(mm, ii) * binom_i128(mm + ll - 1, ll);
            let den = mm * (ll + ii);
            let g = num.gcd(&den);
            let c = field
                .from_ratio(num / g, den / g)
                .map_err(|_| AdegError::SmallCharacteristic { p: field.modulus(), m })?;
            e.insert((0, l as u32), TruncatedPoly::monomial(field, n, (0, l as u32), c));
        }
        e.retain(|_, v| !v.is_zero());
        functionals.push(e);
    }
    Ok(DualBasis { order: m, flavor: BasisFlavor::Node, field, truncation: n, functionals })
}

/// Functional l sends a^i b^j with i + j = l - 1 to (-1)^j f_y^i f_x^j, all else to 0.
pub fn dual_basis_specialized_zero(f: &TruncatedPoly, m: usize, n: u32) -> Result<DualBasis> {
    if m < 1 {
        return Err(AdegError::Usage("order must be at least 1".into()));
    }
    let field = f.field();
    let d = Partials::new(f, 1, n);
    let (fx, fy) = (d.get(1, 0), d.get(0, 1));
    let mut fy_pow = vec![TruncatedPoly::one(field, n)];
    let mut fx_pow = vec![TruncatedPoly::one(field, n)];
    for k in 1..m {
        fy_pow.push(&fy_pow[k - 1] * fy);
        fx_pow.push(&fx_pow[k - 1] * fx);
    }
    let functionals = (0..m)
        .map(|l| {
            let mut e = BTreeMap::new();
            for j in 0..=l {
                let i = l - j;
                let v = &fy_pow[i] * &fx_pow[j];
                let v = if j % 2 == 1 { -&v } else { v };
                if !v.is_zero() {
                    e.insert((i as u32, j as u32), v);
                }
            }
            e
        })
        .collect();
    Ok(DualBasis { order: m, flavor: BasisFlavor::ZeroSpecialized, field, truncation: n, functionals })
}

/// The relations (u-x)^(m-l) (v-y)^l, rewritten on reduced node generators.
pub fn node_relations(m: usize, field: PrimeField, n: u32) -> Vec<Vec<(Exp, TruncatedPoly)>> {
    let m = m as u32;
    (0..=m)
        .map(|l| {
            let mut combo: BTreeMap<Exp, TruncatedPoly> = BTreeMap::new();
            for a in 0..=(m - l) {
                for b in 0..=l {
                    let mut c = field.mul(binom_mod(field, m - l, a), binom_mod(field, l, b));
                    if (m - l - a + l - b) % 2 == 1 {
                        c = field.neg(c);
                    }
                    let k = a.min(b);
                    let key = (a - k, b - k);
                    let coeff = TruncatedPoly::monomial(field, n, (m - l - a + k, l - b + k), c);
                    let slot = combo.entry(key).or_insert_with(|| TruncatedPoly::zero(field, n));
                    *slot = &*slot + &coeff;
                }
            }
            combo.into_iter().collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> PrimeField {
        PrimeField::default()
    }

    fn exact(terms: &[((u32, u32), i64)]) -> TruncatedPoly {
        let f = fp();
        TruncatedPoly::exact(f, terms.iter().map(|(e, c)| (*e, f.from_i64(*c))))
    }

    fn mono(e: Exp, c: i64) -> TruncatedPoly {
        TruncatedPoly::monomial(fp(), 10, e, fp().from_i64(c))
    }

    #[test]
    fn cusp_small_values() {
        let b = dual_basis_small(&exact(&[((0, 2), 1), ((3, 0), -1)]), 3, 10).unwrap();
        assert_eq!(b.value(1, (1, 0)).unwrap(), &mono((0, 1), 2));
        assert_eq!(b.value(1, (0, 1)).unwrap(), &mono((2, 0), 3));
        assert_eq!(b.value(2, (2, 0)).unwrap(), &mono((0, 2), 4));
        assert_eq!(b.value(0, (0, 0)).unwrap(), &mono((0, 0), 1));
        assert!(b.value(0, (1, 0)).is_none());
        assert!(b.value(0, (0, 1)).is_none());
    }

    #[test]
    fn node_values() {
        let b = dual_basis_node(2, fp(), 10).unwrap();
        assert_eq!(b.value(0, (0, 1)).unwrap(), &mono((0, 1), 2));
        assert_eq!(b.value(1, (0, 1)).unwrap(), &mono((0, 1), -1));
        for m in 1..6 {
            let b = dual_basis_node(m, fp(), 12).unwrap();
            for i in 0..m {
                for j in 0..m {
                    let v = b.value(i, (j as u32, 0)).cloned().unwrap_or(TruncatedPoly::zero(fp(), 12));
                    let want = if i == j { mono((j as u32, 0), 1).with_truncation(12) } else { TruncatedPoly::zero(fp(), 12) };
                    assert_eq!(v, want);
                }
            }
        }
    }

    #[test]
    fn node_first_v_value() {
        for m in 1..8usize {
            let b = dual_basis_node(m, fp(), 12).unwrap();
            for i in 0..m {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let c = sign * binom_i128(m as i128, i as i128 + 1) as i64;
                let got = b.value(i, (0, 1)).cloned().unwrap_or(TruncatedPoly::zero(fp(), 12));
                assert_eq!(got, TruncatedPoly::monomial(fp(), 12, (0, 1), fp().from_i64(c)));
            }
        }
    }

    #[test]
    fn zero_specialized_node() {
        let b = dual_basis_specialized_zero(&exact(&[((1, 1), 1)]), 3, 10).unwrap();
        assert_eq!(b.value(0, (0, 0)).unwrap(), &mono((0, 0), 1));
        assert_eq!(b.value(1, (1, 0)).unwrap(), &mono((1, 0), 1));
        assert_eq!(b.value(1, (0, 1)).unwrap(), &mono((0, 1), -1));
        assert_eq!(b.value(2, (2, 0)).unwrap(), &mono((2, 0), 1));
        assert_eq!(b.value(2, (1, 1)).unwrap(), &mono((1, 1), -1));
        assert_eq!(b.value(2, (0, 2)).unwrap(), &mono((0, 2), 1));
    }
}

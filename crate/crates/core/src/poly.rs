//! Bivariate power series over F_p truncated at total degree N.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{AdegError, Result};
use crate::field::PrimeField;

/// Exponent pair (i, j) standing for x^i y^j.
pub type Exp = (u32, u32);

/// Number of monomials of total degree < n.
#[inline]
pub fn tri_len(n: u32) -> usize {
    (n as usize) * (n as usize + 1) / 2
}

/// Position of x^i y^j when monomials are listed by degree, then by y-exponent.
#[inline]
pub fn tri_index(i: u32, j: u32) -> usize {
    let d = (i + j) as usize;
    d * (d + 1) / 2 + j as usize
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPoly {
    field: PrimeField,
    n: u32,
    coeffs: BTreeMap<Exp, u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

impl TruncatedPoly {
    pub fn zero(field: PrimeField, n: u32) -> Self {
        TruncatedPoly { field, n, coeffs: BTreeMap::new() }
    }

    pub fn constant(field: PrimeField, n: u32, c: u64) -> Self {
        Self::monomial(field, n, (0, 0), c)
    }

    pub fn one(field: PrimeField, n: u32) -> Self {
        Self::constant(field, n, 1)
    }

    pub fn monomial(field: PrimeField, n: u32, e: Exp, c: u64) -> Self {
        Self::from_terms(field, n, [(e, c)])
    }

    /// Sums the given terms, dropping everything of degree >= n and all zeros.
    pub fn from_terms(field: PrimeField, n: u32, terms: impl IntoIterator<Item = (Exp, u64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for ((i, j), c) in terms {
            if i + j >= n {
                continue;
            }
            let e = coeffs.entry((i, j)).or_insert(0u64);
            *e = field.add(*e, c % field.modulus());
        }
        coeffs.retain(|_, c| *c != 0);
        TruncatedPoly { field, n, coeffs }
    }

    pub fn from_int_terms<'a>(field: PrimeField, n: u32, terms: impl IntoIterator<Item = (&'a Exp, &'a i64)>) -> Self {
        Self::from_terms(field, n, terms.into_iter().map(|(e, c)| (*e, field.from_i64(*c))))
    }

    /// Builds a polynomial whose truncation order exceeds its degree, so it is exact.
    pub fn exact(field: PrimeField, terms: impl IntoIterator<Item = (Exp, u64)>) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        let deg = terms.iter().map(|((i, j), _)| i + j).max().unwrap_or(0);
        Self::from_terms(field, deg + 1, terms)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn truncation(&self) -> u32 {
        self.n
    }

    pub fn coeff(&self, i: u32, j: u32) -> u64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exp, u64)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, *c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Largest total degree present, if any.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|(i, j)| i + j).max()
    }

    /// Smallest total degree present (the m-adic order), if any.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().map(|(i, j)| i + j).min()
    }

    /// Same terms at truncation n. Raising n is only meaningful for exact polynomials.
    pub fn with_truncation(&self, n: u32) -> Self {
        Self::from_terms(self.field, n, self.terms())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(AdegError::Usage("operands live over different fields".into()));
        }
        if self.n != other.n {
            return Err(AdegError::Usage(format!(
                "operands have truncation orders {} and {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_terms(self.field, self.n, self.terms().chain(other.terms())))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.field;
        Ok(Self::from_terms(f, self.n, self.terms().chain(other.terms().map(|(e, c)| (e, f.neg(c))))))
    }

    /// Product with all terms of total degree >= N discarded.
    pub fn mul_truncated(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field, self.n));
        }
        let n = self.n;
        let p = self.field.modulus();
        let mut acc = vec![0u64; tri_len(n)];
        let b: Vec<_> = other.terms().collect();
        for ((i, j), c) in self.terms() {
            let room = n - (i + j);
            for &((k, l), d) in &b {
                if k + l >= room {
                    continue;
                }
                let slot = &mut acc[tri_index(i + k, j + l)];
                *slot = (*slot + c * d) % p;
            }
        }
        Ok(Self::from_dense(self.field, n, &acc))
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        Self::from_terms(f, self.n, self.terms().map(|(e, a)| (e, f.mul(a, c))))
    }

    /// Multiplies by c * x^i y^j.
    pub fn mul_monomial(&self, (i, j): Exp, c: u64) -> Self {
        let f = self.field;
        Self::from_terms(f, self.n, self.terms().map(|((a, b), v)| ((a + i, b + j), f.mul(v, c))))
    }

    /// Formal partial derivative. The degree N-1 part of the result is not
    /// determined by the truncated input; it is zero here.
    pub fn partial_derivative(&self, var: Var) -> Self {
        let f = self.field;
        let terms = self.terms().filter_map(|((i, j), c)| match var {
            Var::X if i > 0 => Some(((i - 1, j), f.mul(c, i as u64 % f.modulus()))),
            Var::Y if j > 0 => Some(((i, j - 1), f.mul(c, j as u64 % f.modulus()))),
            _ => None,
        });
        Self::from_terms(f, self.n, terms)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.field, self.n);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Inverse of a unit, by Newton iteration v <- v(2 - uv) from the constant inverse.
    pub fn invert_unit(&self) -> Result<Self> {
        let f = self.field;
        let c0 = self.coeff(0, 0);
        if c0 == 0 {
            return Err(AdegError::NotAUnit);
        }
        let mut v = Self::constant(f, self.n, f.inv(c0)?);
        let two = Self::constant(f, self.n, 2);
        let mut prec = 1;
        while prec < self.n {
            let uv = &(self * &v);
            v = &v * &(&two - uv);
            prec *= 2;
        }
        Ok(v)
    }

    /// Dense coefficient vector in `tri_index` order, of length `tri_len(n)`.
    pub fn to_dense(&self, n: u32) -> Vec<u64> {
        let mut v = vec![0u64; tri_len(n)];
        for ((i, j), c) in self.terms() {
            if i + j < n {
                v[tri_index(i, j)] = c;
            }
        }
        v
    }

    pub fn from_dense(field: PrimeField, n: u32, dense: &[u64]) -> Self {
        let mut coeffs = BTreeMap::new();
        for d in 0..n {
            for j in 0..=d {
                let c = dense[tri_index(d - j, j)];
                if c != 0 {
                    coeffs.insert((d - j, j), c);
                }
            }
        }
        TruncatedPoly { field, n, coeffs }
    }
}

impl Add for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn add(self, rhs: Self) -> TruncatedPoly {
        self.try_add(rhs).expect("mismatched operands")
    }
}

impl Sub for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn sub(self, rhs: Self) -> TruncatedPoly {
        self.try_sub(rhs).expect("mismatched operands")
    }
}

impl Mul for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn mul(self, rhs: Self) -> TruncatedPoly {
        self.mul_truncated(rhs).expect("mismatched operands")
    }
}

impl Neg for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn neg(self) -> TruncatedPoly {
        self.scale(self.field.neg(1))
    }
}

impl fmt::Display for TruncatedPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|((i, j), _)| (i + j, std::cmp::Reverse(*i)));
        for ((i, j), c) in terms {
            let s = self.field.signed(c);
            let (sign, a) = if s < 0 { ("-", -s) } else { ("+", s) };
            if first {
                if sign == "-" {
                    write!(out, "-")?;
                }
            } else {
                write!(out, " {sign} ")?;
            }
            first = false;
            let mut factors = Vec::new();
            if a != 1 || i + j == 0 {
                factors.push(a.to_string());
            }
            for (v, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(out, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> PrimeField {
        PrimeField::default()
    }

    fn poly(n: u32, terms: &[((u32, u32), i64)]) -> TruncatedPoly {
        let f = fp();
        TruncatedPoly::from_terms(f, n, terms.iter().map(|(e, c)| (*e, f.from_i64(*c))))
    }

    #[test]
    fn product_drops_high_degree() {
        let a = poly(2, &[((0, 0), 1), ((1, 0), 1)]);
        let b = poly(2, &[((0, 0), 1), ((0, 1), 1)]);
        assert_eq!(&a * &b, poly(2, &[((0, 0), 1), ((1, 0), 1), ((0, 1), 1)]));
    }

    #[test]
    fn square_of_sum() {
        let a = poly(3, &[((1, 0), 1), ((0, 1), 1)]);
        assert_eq!(&a * &a, poly(3, &[((2, 0), 1), ((1, 1), 2), ((0, 2), 1)]));
    }

    #[test]
    fn difference_of_squares() {
        let a = poly(3, &[((0, 0), 1), ((1, 0), 1), ((0, 1), 1)]);
        let b = poly(3, &[((0, 0), 1), ((1, 0), -1), ((0, 1), -1)]);
        assert_eq!(&a * &b, poly(3, &[((0, 0), 1), ((2, 0), -1), ((1, 1), -2), ((0, 2), -1)]));
    }

    #[test]
    fn partials() {
        let cusp = poly(8, &[((0, 2), 1), ((3, 0), -1)]);
        assert_eq!(cusp.partial_derivative(Var::X), poly(8, &[((2, 0), -3)]));
        let node = poly(8, &[((1, 1), 1)]);
        assert_eq!(node.partial_derivative(Var::Y), poly(8, &[((1, 0), 1)]));
        let m = poly(8, &[((2, 3), 1)]);
        assert_eq!(m.partial_derivative(Var::X), poly(8, &[((1, 3), 2)]));
    }

    #[test]
    fn inverses() {
        let u = poly(4, &[((0, 0), 1), ((1, 0), 1)]);
        assert_eq!(u.invert_unit().unwrap(), poly(4, &[((0, 0), 1), ((1, 0), -1), ((2, 0), 1), ((3, 0), -1)]));
        assert_eq!(poly(4, &[((0, 0), 2)]).invert_unit().unwrap().coeff(0, 0), 3960);
        let w = poly(2, &[((0, 0), 1), ((1, 0), 1), ((0, 1), 1)]);
        assert_eq!(w.invert_unit().unwrap(), poly(2, &[((0, 0), 1), ((1, 0), -1), ((0, 1), -1)]));
        assert_eq!(poly(4, &[((1, 0), 1)]).invert_unit(), Err(AdegError::NotAUnit));
    }

    #[test]
    fn mismatch_is_usage_error() {
        let a = poly(3, &[((1, 0), 1)]);
        let b = poly(4, &[((1, 0), 1)]);
        assert!(matches!(a.mul_truncated(&b), Err(AdegError::Usage(_))));
    }

    #[test]
    fn dense_round_trip() {
        let a = poly(6, &[((0, 0), 3), ((2, 3), 5), ((0, 5), -1)]);
        assert_eq!(TruncatedPoly::from_dense(fp(), 6, &a.to_dense(6)), a);
    }

    #[test]
    fn display() {
        let a = poly(8, &[((0, 2), 1), ((3, 0), -1), ((1, 1), 2)]);
        assert_eq!(a.to_string(), "2*x*y + y^2 - x^3");
    }
}

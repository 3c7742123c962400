//! Exact closed forms: known automatic degeneracies, bounds, Chern
//! coefficients and enumerative counts. Everything here is big-integer or
//! big-rational arithmetic; nothing is reduced modulo a prime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{AdegError, Result};
use crate::invariants::DegeneracyKind;
use crate::jets::{GermPattern, GermSpec};

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(int(n), int(d))
}

fn ri(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// C(a, b), zero when b < 0 or a < b.
pub fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 || a < b || a < 0 {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut r = BigInt::one();
    for t in 0..b {
        r = r * int(a - t) / int(t + 1);
    }
    r
}

/// Value predicted by the theorem catalog, when one applies.
pub fn known_value(germ: &GermSpec, m: usize, kind: DegeneracyKind) -> Option<BigInt> {
    let mi = m as i64;
    match (kind, m) {
        (DegeneracyKind::W1, 1) | (DegeneracyKind::W2B, 1) | (DegeneracyKind::W2A, 2) => return Some(BigInt::zero()),
        (DegeneracyKind::W2A, 0 | 1) | (_, 0) => return None,
        _ => {}
    }
    if germ.is_node_type() {
        return Some(match kind {
            DegeneracyKind::W1 => int(mi * (mi - 1)),
            DegeneracyKind::W2A => binom(mi + 1, 4),
            DegeneracyKind::W2B => binom(mi + 2, 4),
        });
    }
    let GermPattern::Binomial { t, s } = germ.pattern() else {
        return None;
    };
    let (t, s) = (t as i64, s as i64);
    match (kind, m) {
        (DegeneracyKind::W2B, 2) => return Some(int((s - 1) * (t - 1))),
        (DegeneracyKind::W1, 2) => return Some(int(s * (t - 1))),
        (DegeneracyKind::W2A, 3) => return Some(int((2 * t - 3) * (s - 1))),
        _ => {}
    }
    if t != 2 {
        return None;
    }
    match (kind, m) {
        (DegeneracyKind::W2A, _) if s == 3 => Some(binom(mi + 1, 4) * 2),
        (DegeneracyKind::W2A, 4) => Some(int(6 * (s - 1))),
        (DegeneracyKind::W1, 3) => Some(int(if s == 3 { 8 } else { 3 * s })),
        _ => None,
    }
}

/// (lower, upper) sandwich. Upper is absent for weight 1.
pub fn ad_bounds(
    mu: u64,
    delta: Option<u64>,
    m: usize,
    kind: DegeneracyKind,
) -> Result<(BigInt, Option<BigRational>)> {
    let mi = m as i64;
    let mu = BigInt::from(mu);
    match kind {
        DegeneracyKind::W2A => {
            let c = binom(mi + 1, 4);
            let upper = ri(&(&mu * &c)) * rat(3 * mi - 1, mi + 1);
            Ok((mu * c, Some(upper)))
        }
        DegeneracyKind::W2B => {
            let c = binom(mi + 2, 4);
            let upper = ri(&(&mu * &c)) * rat(3 * mi - 2, mi + 2);
            Ok((mu * c, Some(upper)))
        }
        DegeneracyKind::W1 => {
            let delta = delta.ok_or_else(|| AdegError::Unavailable("delta is needed for the weight-1 bound".into()))?;
            Ok((BigInt::from(delta) * int(mi * (mi - 1)), None))
        }
    }
}

/// Node colength with one flexed branch.
pub fn flecnode_value(m: usize) -> BigInt {
    binom(m as i64 + 1, 4) + 1
}

/// Length of the zero-specialized degeneracy scheme of the node.
pub fn zero_specialized_node_length(m: usize, kind: DegeneracyKind) -> Option<BigInt> {
    let mi = m as i64;
    let (num, den, c) = match kind {
        DegeneracyKind::W2A => (3 * mi - 1, mi + 1, binom(mi + 1, 4)),
        DegeneracyKind::W2B => (3 * mi - 2, mi + 2, binom(mi + 2, 4)),
        DegeneracyKind::W1 => return None,
    };
    to_integer(&(ri(&c) * rat(num, den)))
}

/// Binomial germ delta via 2 delta = mu + r - 1 with r = gcd(s, t).
pub fn delta_binomial(s: u64, t: u64) -> u64 {
    ((s - 1) * (t - 1) + s.gcd(&t) - 1) / 2
}

/// Intersection numbers on the total space of a one-parameter family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowDegrees {
    pub l2: BigInt,
    pub w2: BigInt,
    pub lw: BigInt,
    pub nodes: BigInt,
}

impl ChowDegrees {
    /// A general pencil of plane curves of degree d with L = O(k).
    pub fn pencil(d: i64, k: i64) -> Self {
        ChowDegrees {
            l2: int(k * k),
            lw: int(k * (2 * d - 3)),
            w2: int(3 * d * d - 12 * d + 9),
            nodes: int(3 * (d - 1) * (d - 1)),
        }
    }
}

/// Chern coefficients of the invincible parts bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernCoefficients {
    pub c1_l: BigInt,
    pub c1_w: BigInt,
    pub c2_l2: BigInt,
    pub c2_w2: BigInt,
    pub c2_lw: BigInt,
}

impl ChernCoefficients {
    /// Degree of c2 against the given intersection numbers.
    pub fn c2_degree(&self, d: &ChowDegrees) -> BigInt {
        &self.c2_l2 * &d.l2 + &self.c2_w2 * &d.w2 + &self.c2_lw * &d.lw
    }
}

pub fn chern_invincible(m: usize) -> ChernCoefficients {
    let m = m as i64;
    ChernCoefficients {
        c1_l: int(m),
        c1_w: binom(m, 2),
        c2_l2: binom(m, 2),
        c2_w2: binom(m + 1, 4) * 3 - binom(m, 3),
        c2_lw: binom(m + 1, 3) * 3 - binom(m, 2) * 2,
    }
}

/// Expected number of weight-2 inflections in a family, nodes subtracted.
pub fn weight2_inflection_class(m: usize, d: &ChowDegrees) -> BigInt {
    chern_invincible(m).c2_degree(d) - binom(m as i64 + 1, 4) * &d.nodes
}

pub fn pencil_count(d: i64, m: i64) -> Result<BigInt> {
    let inner = 12 + 2 * d * (d - 5) - 16 * m + m * d * (17 - 3 * d) + m * m * (d - 1) * (d - 4);
    let num = int(m * (m - 1)) * int(inner);
    let (q, r) = num.div_rem(&int(4));
    if !r.is_zero() {
        return Err(AdegError::InternalInconsistency(format!("pencil count for d={d}, m={m} is not an integer")));
    }
    Ok(q)
}

pub fn hyperflex_count(d: i64) -> BigInt {
    int(6 * (d - 3) * (3 * d - 2))
}

/// Septactic points of a general pencil, checked against its closed form.
pub fn septactic_count(d: i64) -> Result<BigInt> {
    let total = weight2_inflection_class(7, &ChowDegrees::pencil(d, 2));
    let expected_total = int(21 * (d - 3) * (15 * d - 11));
    if total != expected_total {
        return Err(AdegError::InternalInconsistency(format!(
            "order-7 class {total} differs from 21(d-3)(15d-11) = {expected_total}"
        )));
    }
    let count = total - hyperflex_count(d) * 2;
    let closed = int(9 * (d - 3) * (31 * d - 23));
    if count != closed {
        return Err(AdegError::InternalInconsistency(format!("septactic pipeline {count} != {closed}")));
    }
    Ok(count)
}

/// The lambda and delta_0 coefficients of a divisor class on the moduli of curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub lambda_coeff: BigRational,
    pub delta0_coeff: BigRational,
}

/// Rank of the pushforward of the n-th power of the dualizing sheaf.
pub fn pluricanonical_rank(g: i64, n: i64) -> i64 {
    if n == 1 {
        g
    } else {
        (2 * n - 1) * (g - 1)
    }
}

/// Evaluates the Chern class computation directly.
pub fn weierstrass_pipeline(g: i64, n: i64, kind: DegeneracyKind) -> Result<DivisorClass> {
    if g < 2 {
        return Err(AdegError::Usage(format!("genus {g} curves have no Weierstrass points")));
    }
    if n < 1 {
        return Err(AdegError::Usage("degree n must be at least 1".into()));
    }
    let rk = pluricanonical_rank(g, n);
    let (m, c, excess) = match kind {
        DegeneracyKind::W2A => {
            let m = rk + 1;
            (m, rat(m * (m - 1) * (m + 1) * (3 * m + 2) * n * n, 24), binom(m + 1, 4))
        }
        DegeneracyKind::W2B => {
            let m = rk - 1;
            (m, rat(m * (m + 1) * (m + 2) * (3 * m + 1) * n * n, 24), binom(m + 2, 4))
        }
        DegeneracyKind::W1 => return Err(AdegError::Usage("Weierstrass divisors are weight 2 (w2a or w2b)".into())),
    };
    let head = rat(m * (m + 1) * n, 2);
    let lambda = -&head * ri(&int((6 * n * n - 6 * n + 1) * (2 * g - 2))) + &c * ri(&int(12));
    let delta0 = &head * ri(&binom(n, 2)) - c - ri(&excess);
    Ok(DivisorClass { lambda_coeff: lambda, delta0_coeff: delta0 })
}

type Coeffs = [(i64, i64); 7];

// Coefficients of n^6, n^5, ..., n^0 for w(i, lambda) and w(i, delta_0), i = 0..4.
const W2A_LAMBDA: [Coeffs; 5] = [
    [(24, 1), (-80, 1), (78, 1), (-6, 1), (-22, 1), (6, 1), (0, 1)],
    [(-96, 1), (288, 1), (-264, 1), (46, 1), (37, 1), (-11, 1), (0, 1)],
    [(144, 1), (-384, 1), (330, 1), (-84, 1), (-27, 2), (6, 1), (0, 1)],
    [(-96, 1), (224, 1), (-180, 1), (56, 1), (-3, 1), (-1, 1), (0, 1)],
    [(24, 1), (-48, 1), (36, 1), (-12, 1), (3, 2), (0, 1), (0, 1)],
];
const W2A_DELTA0: [Coeffs; 5] = [
    [(-2, 1), (29, 3), (-53, 3), (89, 6), (-16, 3), (1, 2), (0, 1)],
    [(8, 1), (-32, 1), (289, 6), (-413, 12), (37, 3), (-7, 3), (1, 4)],
    [(-12, 1), (39, 1), (-97, 2), (125, 4), (-299, 24), (10, 3), (-11, 24)],
    [(8, 1), (-62, 3), (65, 3), (-27, 2), (73, 12), (-11, 6), (1, 4)],
    [(-2, 1), (4, 1), (-11, 3), (7, 3), (-9, 8), (1, 3), (-1, 24)],
];
const W2B_LAMBDA: [Coeffs; 5] = [
    [(24, 1), (-16, 1), (-18, 1), (14, 1), (-2, 1), (0, 1), (0, 1)],
    [(-96, 1), (96, 1), (24, 1), (-46, 1), (13, 1), (-1, 1), (0, 1)],
    [(144, 1), (-192, 1), (42, 1), (36, 1), (-35, 2), (2, 1), (0, 1)],
    [(-96, 1), (160, 1), (-84, 1), (8, 1), (5, 1), (-1, 1), (0, 1)],
    [(24, 1), (-48, 1), (36, 1), (-12, 1), (3, 2), (0, 1), (0, 1)],
];
const W2B_DELTA0: [Coeffs; 5] = [
    [(-2, 1), (13, 3), (-11, 3), (4, 3), (1, 6), (-1, 6), (0, 1)],
    [(8, 1), (-16, 1), (85, 6), (-27, 4), (1, 1), (1, 3), (-1, 12)],
    [(-12, 1), (23, 1), (-41, 2), (45, 4), (-83, 24), (1, 3), (1, 24)],
    [(8, 1), (-46, 3), (41, 3), (-49, 6), (41, 12), (-5, 6), (1, 12)],
    [(-2, 1), (4, 1), (-11, 3), (7, 3), (-9, 8), (1, 3), (-1, 24)],
];

fn eval_table(table: &[Coeffs; 5], g: i64, n: i64) -> BigRational {
    let mut total = BigRational::zero();
    for (i, row) in table.iter().enumerate() {
        let mut w = BigRational::zero();
        for (k, &(num, den)) in row.iter().enumerate() {
            w += rat(num, den) * ri(&int(n).pow(6 - k as u32));
        }
        total += w * ri(&int(g).pow(i as u32));
    }
    total
}

/// The divisor class in closed polynomial form in g (and n for n > 1).
pub fn weierstrass_closed_form(g: i64, n: i64, kind: DegeneracyKind) -> Result<DivisorClass> {
    if g < 2 {
        return Err(AdegError::Usage(format!("genus {g} curves have no Weierstrass points")));
    }
    if n < 1 {
        return Err(AdegError::Usage("degree n must be at least 1".into()));
    }
    let gi = |v: i64| ri(&int(v));
    match (kind, n) {
        (DegeneracyKind::W2A, 1) => Ok(DivisorClass {
            lambda_coeff: rat(1, 2) * gi((g + 1) * (g + 2) * (3 * g * g + 3 * g + 2)),
            delta0_coeff: rat(-1, 6) * gi(g * (g + 1) * (g + 1) * (g + 2)),
        }),
        (DegeneracyKind::W2B, 1) => Ok(DivisorClass {
            lambda_coeff: rat(1, 2) * gi(g * g * (g - 1) * (3 * g - 1)),
            delta0_coeff: rat(-1, 6) * gi(g * (g - 1) * (g - 1) * (g + 1)),
        }),
        (DegeneracyKind::W2A, _) => Ok(DivisorClass {
            lambda_coeff: eval_table(&W2A_LAMBDA, g, n),
            delta0_coeff: eval_table(&W2A_DELTA0, g, n),
        }),
        (DegeneracyKind::W2B, _) => Ok(DivisorClass {
            lambda_coeff: eval_table(&W2B_LAMBDA, g, n),
            delta0_coeff: eval_table(&W2B_DELTA0, g, n),
        }),
        (DegeneracyKind::W1, _) => Err(AdegError::Usage("Weierstrass divisors are weight 2 (w2a or w2b)".into())),
    }
}

/// Pipeline value, checked against the closed polynomial form.
pub fn weierstrass_divisor(g: i64, n: i64, kind: DegeneracyKind) -> Result<DivisorClass> {
    let pipeline = weierstrass_pipeline(g, n, kind)?;
    let closed = weierstrass_closed_form(g, n, kind)?;
    if pipeline != closed {
        return Err(AdegError::InternalInconsistency(format!(
            "Weierstrass class at g={g}, n={n}: pipeline ({}, {}) vs closed form ({}, {})",
            pipeline.lambda_coeff, pipeline.delta0_coeff, closed.lambda_coeff, closed.delta0_coeff
        )));
    }
    Ok(pipeline)
}

/// Converts an exact integral rational to BigInt.
pub fn to_integer(r: &BigRational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// Converts a non-negative BigInt to u64.
pub fn to_u64(v: &BigInt) -> Option<u64> {
    if v.is_negative() {
        None
    } else {
        v.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn germ(terms: &[((u32, u32), i64)]) -> GermSpec {
        GermSpec::from_terms(terms).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 4), int(5));
        assert_eq!(binom(3, 4), int(0));
        assert_eq!(binom(10, 0), int(1));
    }

    #[test]
    fn catalog() {
        let e8 = germ(&[((0, 3), 1), ((5, 0), -1)]);
        assert_eq!(known_value(&e8, 3, DegeneracyKind::W2A), Some(int(12)));
        let a5 = germ(&[((0, 2), 1), ((6, 0), -1)]);
        assert_eq!(known_value(&a5, 4, DegeneracyKind::W2A), Some(int(30)));
        assert_eq!(known_value(&GermSpec::node(), 7, DegeneracyKind::W1), Some(int(42)));
        let d4 = germ(&[((0, 3), 1), ((2, 1), -1)]);
        assert_eq!(known_value(&d4, 3, DegeneracyKind::W2A), None);
        assert_eq!(known_value(&d4, 2, DegeneracyKind::W2A), Some(int(0)));
    }

    #[test]
    fn bounds() {
        let (lo, hi) = ad_bounds(4, None, 4, DegeneracyKind::W2A).unwrap();
        assert_eq!((lo, hi.unwrap()), (int(20), ri(&int(44))));
        let (lo, hi) = ad_bounds(1, Some(1), 3, DegeneracyKind::W1).unwrap();
        assert_eq!((lo, hi), (int(6), None));
        assert!(ad_bounds(1, None, 3, DegeneracyKind::W1).is_err());
        for m in 1..10 {
            let (lo, hi) = ad_bounds(1, None, m, DegeneracyKind::W2A).unwrap();
            assert_eq!(ri(&lo) == hi.unwrap(), m <= 2);
        }
    }

    #[test]
    fn node_lengths() {
        assert_eq!(flecnode_value(4), int(6));
        assert_eq!(zero_specialized_node_length(4, DegeneracyKind::W2A), Some(int(11)));
        assert_eq!(zero_specialized_node_length(3, DegeneracyKind::W2A), Some(int(2)));
        assert_eq!(zero_specialized_node_length(2, DegeneracyKind::W2B), Some(int(1)));
        assert_eq!(zero_specialized_node_length(2, DegeneracyKind::W1), None);
    }

    #[test]
    fn deltas() {
        assert_eq!(delta_binomial(2, 2), 1);
        assert_eq!(delta_binomial(3, 2), 1);
        assert_eq!(delta_binomial(4, 2), 2);
    }

    #[test]
    fn chern() {
        let c = chern_invincible(1);
        assert_eq!((c.c1_l.clone(), c.c1_w.clone()), (int(1), int(0)));
        assert!(c.c2_l2.is_zero() && c.c2_w2.is_zero() && c.c2_lw.is_zero());
        let c = chern_invincible(2);
        assert_eq!((c.c1_l, c.c1_w), (int(2), int(1)));
        assert_eq!(chern_invincible(4).c2_w2, int(11));
    }

    #[test]
    fn inflection_class() {
        let d = ChowDegrees::pencil(5, 1);
        assert_eq!((d.l2.clone(), d.w2.clone(), d.lw.clone(), d.nodes.clone()), (int(1), int(24), int(7), int(48)));
        assert_eq!(weight2_inflection_class(4, &d), int(156));
        let mut more = d.clone();
        more.nodes += 1;
        assert_eq!(weight2_inflection_class(4, &d) - weight2_inflection_class(4, &more), binom(5, 4));
    }

    #[test]
    fn counts() {
        assert_eq!(pencil_count(4, 4).unwrap(), int(60));
        assert_eq!(pencil_count(3, 4).unwrap(), int(0));
        assert_eq!(pencil_count(5, 4).unwrap(), int(156));
        assert_eq!(hyperflex_count(10), int(1176));
        assert_eq!(septactic_count(3).unwrap(), int(0));
        assert_eq!(septactic_count(4).unwrap(), int(909));
        assert_eq!(septactic_count(5).unwrap(), int(2376));
    }

    #[test]
    fn weierstrass_small() {
        let a = weierstrass_divisor(2, 1, DegeneracyKind::W2A).unwrap();
        assert_eq!((a.lambda_coeff, a.delta0_coeff), (ri(&int(120)), ri(&int(-12))));
        let b = weierstrass_divisor(3, 1, DegeneracyKind::W2B).unwrap();
        assert_eq!((b.lambda_coeff, b.delta0_coeff), (ri(&int(72)), ri(&int(-8))));
        assert!(weierstrass_divisor(1, 1, DegeneracyKind::W2A).is_err());
    }
}

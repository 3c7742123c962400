//! Reference computations written independently of the library internals.
//! Shared by the core property tests and the acceptance harness.
#![allow(dead_code)]

use std::collections::BTreeMap;

use adeg_core::{PrimeField, TruncatedPoly};
use num_rational::BigRational;
use num_traits::Zero;

pub type Terms = Vec<((u32, u32), i64)>;

/// Germ, Milnor number, then AD values for (3,w2a) (4,w2a) (2,w2b) (3,w2b) (2,w1) (3,w1).
pub const CORPUS: [(&str, u64, [u64; 6]); 11] = [
    ("x*y", 1, [1, 5, 1, 5, 2, 6]),
    ("y^2-x^3", 2, [2, 10, 2, 10, 3, 8]),
    ("y^2-x^4", 3, [3, 18, 3, 15, 4, 12]),
    ("y^2-x^5", 4, [4, 24, 4, 20, 5, 15]),
    ("y^2-x^6", 5, [5, 30, 5, 25, 6, 18]),
    ("y^3-x^2*y", 4, [6, 29, 4, 24, 6, 18]),
    ("y^4-x^2*y", 5, [7, 36, 5, 29, 7, 20]),
    ("y^5-x^2*y", 6, [8, 45, 6, 34, 8, 24]),
    ("y^3-x^4", 6, [9, 44, 6, 36, 8, 22]),
    ("y^3*x-x^3", 7, [10, 53, 7, 41, 9, 26]),
    ("y^3-x^5", 8, [12, 62, 8, 48, 10, 29]),
];

pub fn binom(a: i128, b: i128) -> i128 {
    if b < 0 || a < b {
        return 0;
    }
    (0..b).fold(1, |acc, t| acc * (a - t) / (t + 1))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Monomials outside the monomial ideal; None if infinitely many.
pub fn staircase_colength(gens: &[(u32, u32)]) -> Option<u64> {
    let px = gens.iter().filter(|g| g.1 == 0).map(|g| g.0).min()?;
    let py = gens.iter().filter(|g| g.0 == 0).map(|g| g.1).min()?;
    let mut count = 0;
    for i in 0..px {
        for j in 0..py {
            if !gens.iter().any(|&(a, b)| i >= a && j >= b) {
                count += 1;
            }
        }
    }
    Some(count)
}

fn monomials(n: u32) -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    for i in 0..n {
        for j in 0..n - i {
            v.push((i, j));
        }
    }
    v
}

/// Row-reduces `rows` in place modulo p and returns the rank.
pub fn rank_mod_p(rows: &mut Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let inv = |a: u64| -> u64 {
        let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let s = inv(rows[rank][c]);
        for v in rows[rank].iter_mut() {
            *v = *v * s % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..cols {
                    let sub = f * rows[rank][k] % p;
                    rows[r][k] = (rows[r][k] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Spans every monomial multiple of every generator below degree n.
/// Returns (candidate colength, whether all degree n-1 monomials are in the span).
pub fn brute_force_colength(gens: &[Terms], n: u32, p: u64) -> (u64, bool) {
    let mons = monomials(n);
    let index: BTreeMap<(u32, u32), usize> = mons.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let mut rows = Vec::new();
    for g in gens {
        for &(a, b) in &mons {
            let mut row = vec![0u64; mons.len()];
            let mut any = false;
            for &((i, j), c) in g {
                if let Some(&k) = index.get(&(i + a, j + b)) {
                    row[k] = (row[k] + c.rem_euclid(p as i64) as u64) % p;
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    let rank = rank_mod_p(&mut rows.clone(), p);
    let mut with_top = rows;
    for (k, &(i, j)) in mons.iter().enumerate() {
        if i + j == n - 1 {
            let mut row = vec![0u64; mons.len()];
            row[k] = 1;
            with_top.push(row);
        }
    }
    let stable = rank_mod_p(&mut with_top, p) == rank;
    ((mons.len() - rank) as u64, stable)
}

/// Integer polynomial in x, y, a, b.
type Poly4 = BTreeMap<[u32; 4], i128>;

fn mul4(p: &Poly4, q: &Poly4) -> Poly4 {
    let mut out = Poly4::new();
    for (e, c) in p {
        for (f, d) in q {
            let k = [e[0] + f[0], e[1] + f[1], e[2] + f[2], e[3] + f[3]];
            *out.entry(k).or_insert(0) += c * d;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn pow4(p: &Poly4, k: u32) -> Poly4 {
    (0..k).fold(Poly4::from([([0; 4], 1)]), |acc, _| mul4(&acc, p))
}

/// Relations a^i b^j (f(x+a, y+b) - f(x, y)) with (a,b)-degree < m, by
/// substituting and expanding. Keys are (i, j) and generator exponents.
pub fn relations_by_substitution(f: &Terms, m: u32) -> Vec<BTreeMap<(u32, u32), Terms>> {
    let xa = Poly4::from([([1, 0, 0, 0], 1), ([0, 0, 1, 0], 1)]);
    let yb = Poly4::from([([0, 1, 0, 0], 1), ([0, 0, 0, 1], 1)]);
    let mut shifted = Poly4::new();
    for &((i, j), c) in f {
        for (e, d) in mul4(&pow4(&xa, i), &pow4(&yb, j)) {
            *shifted.entry(e).or_insert(0) += c as i128 * d;
        }
    }
    let mut rels = Vec::new();
    for w in 0..m.saturating_sub(1) {
        for i in 0..=w {
            let j = w - i;
            let mut rel: BTreeMap<(u32, u32), BTreeMap<(u32, u32), i128>> = BTreeMap::new();
            for (e, c) in &shifted {
                let (s, t) = (e[2], e[3]);
                if s + t == 0 || s + t + w >= m {
                    continue;
                }
                *rel.entry((s + i, t + j)).or_default().entry((e[0], e[1])).or_insert(0) += c;
            }
            rels.push(
                rel.into_iter()
                    .map(|(g, p)| (g, p.into_iter().filter(|(_, c)| *c != 0).map(|(e, c)| (e, c as i64)).collect()))
                    .collect(),
            );
        }
    }
    rels
}

/// Node relations (u-x)^(m-l) (v-y)^l with u^i v^j reduced by uv = xy.
/// Keys: (k, 0) for u^k, (0, k) for v^k.
pub fn node_relations_by_expansion(m: u32) -> Vec<BTreeMap<(u32, u32), Terms>> {
    (0..=m)
        .map(|l| {
            // exponents [x, y, u, v]
            let ux = Poly4::from([([0, 0, 1, 0], 1), ([1, 0, 0, 0], -1)]);
            let vy = Poly4::from([([0, 0, 0, 1], 1), ([0, 1, 0, 0], -1)]);
            let full = mul4(&pow4(&ux, m - l), &pow4(&vy, l));
            let mut rel: BTreeMap<(u32, u32), BTreeMap<(u32, u32), i128>> = BTreeMap::new();
            for (e, c) in full {
                let k = e[2].min(e[3]);
                *rel.entry((e[2] - k, e[3] - k)).or_default().entry((e[0] + k, e[1] + k)).or_insert(0) += c;
            }
            rel.into_iter()
                .map(|(g, p)| (g, p.into_iter().filter(|(_, c)| *c != 0).map(|(e, c)| (e, c as i64)).collect()))
                .collect()
        })
        .collect()
}

pub fn to_poly(field: PrimeField, n: u32, t: &Terms) -> TruncatedPoly {
    TruncatedPoly::from_terms(field, n, t.iter().map(|(e, c)| (*e, field.from_i64(*c))))
}

/// Determinant by permutation expansion over the field.
pub fn leibniz_det(m: &[Vec<u64>], p: u64) -> u64 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0u64;
    loop {
        let mut sign = 1i64;
        for a in 0..n {
            for b in a + 1..n {
                if perm[a] > perm[b] {
                    sign = -sign;
                }
            }
        }
        let prod = (0..n).fold(1u64, |acc, r| acc * m[r][perm[r]] % p);
        total = if sign > 0 { (total + prod) % p } else { (total + p - prod) % p };
        // next permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).expect("exists");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    total
}

/// Reference coefficient tables for n > 1, transcribed unchanged.
/// Rows are w(i, .) for i = 0..4, entries are n^6 .. n^0.
pub type Table = [[(i128, i128); 7]; 5];

pub const PRINTED_A_LAMBDA: Table = [
    [(24, 1), (-80, 1), (78, 1), (-6, 1), (-22, 1), (6, 1), (0, 1)],
    [(-96, 1), (288, 1), (-264, 1), (46, 1), (37, 1), (-11, 1), (0, 1)],
    [(144, 1), (-384, 1), (330, 1), (-84, 1), (-27, 2), (6, 1), (0, 1)],
    [(-96, 1), (224, 1), (-180, 1), (56, 1), (-3, 1), (-1, 1), (0, 1)],
    [(24, 1), (-48, 1), (36, 1), (-12, 1), (3, 2), (0, 1), (0, 1)],
];
pub const PRINTED_A_DELTA0: Table = [
    [(-2, 1), (29, 5), (-53, 3), (89, 6), (-16, 3), (1, 2), (0, 1)],
    [(8, 1), (-32, 1), (289, 6), (-413, 12), (37, 3), (-7, 3), (1, 4)],
    [(-12, 1), (39, 1), (-97, 2), (125, 4), (-299, 24), (10, 3), (-11, 24)],
    [(8, 1), (-62, 3), (65, 3), (-27, 2), (73, 12), (-11, 6), (1, 4)],
    [(-2, 1), (4, 1), (-11, 3), (7, 3), (-9, 8), (1, 3), (-1, 24)],
];
pub const PRINTED_B_LAMBDA: Table = [
    [(24, 1), (-16, 1), (-18, 1), (14, 1), (-2, 1), (0, 1), (0, 1)],
    [(-96, 1), (96, 1), (24, 1), (-46, 1), (13, 1), (-1, 1), (0, 1)],
    [(144, 1), (-192, 1), (42, 1), (36, 1), (-35, 2), (2, 1), (0, 1)],
    [(-96, 1), (160, 1), (-84, 1), (8, 1), (5, 1), (-1, 1), (0, 1)],
    [(24, 1), (-48, 1), (36, 1), (-12, 1), (3, 2), (0, 1), (0, 1)],
];
pub const PRINTED_B_DELTA0: Table = [
    [(-2, 1), (13, 3), (-11, 3), (4, 3), (-1, 6), (-1, 6), (0, 1)],
    [(8, 1), (-16, 1), (85, 6), (-27, 4), (1, 1), (1, 3), (-1, 12)],
    [(-12, 1), (23, 1), (-41, 2), (45, 4), (-83, 24), (1, 3), (1, 24)],
    [(8, 1), (-46, 3), (41, 3), (-49, 6), (41, 12), (-5, 6), (1, 12)],
    [(-2, 1), (4, 1), (-11, 3), (7, 3), (-9, 8), (1, 3), (-1, 24)],
];

pub fn printed_table(table: &Table, g: i128, n: i128) -> BigRational {
    let mut total = BigRational::zero();
    for (i, row) in table.iter().enumerate() {
        for (k, &(num, den)) in row.iter().enumerate() {
            total += BigRational::new(num.into(), den.into()) * BigRational::from_integer((n.pow(6 - k as u32) * g.pow(i as u32)).into());
        }
    }
    total
}

/// Reference (lambda, delta_0) coefficients: the degree-one closed forms for
/// n = 1, the coefficient tables otherwise.
pub fn printed_weierstrass(g: i128, n: i128, type_a: bool) -> (BigRational, BigRational) {
    let r = |num: i128, den: i128| BigRational::new(num.into(), den.into());
    match (type_a, n) {
        (true, 1) => (r((g + 1) * (g + 2) * (3 * g * g + 3 * g + 2), 2), r(-g * (g + 1) * (g + 1) * (g + 2), 6)),
        (false, 1) => (r(g * g * (g - 1) * (3 * g - 1), 2), r(-g * (g - 1) * (g - 1) * (g + 1), 6)),
        (true, _) => (printed_table(&PRINTED_A_LAMBDA, g, n), printed_table(&PRINTED_A_DELTA0, g, n)),
        (false, _) => (printed_table(&PRINTED_B_LAMBDA, g, n), printed_table(&PRINTED_B_DELTA0, g, n)),
    }
}

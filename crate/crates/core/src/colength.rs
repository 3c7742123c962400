//! Colength dim_k R/I of an ideal of k[[x,y]] via truncation at m^N.
//!
//! At truncation N the ideal image in R/m^N is the smallest subspace that
//! contains the generators and is closed under multiplication by x and y.
//! It is built by a worklist: every vector that survives reduction becomes
//! a new echelon row and its x- and y-multiples are queued. Rows are pivoted
//! at their lowest monomial in degree order.
//!
//! The truncated value is exact once every monomial of degree N-1 lies in
//! the image: then m^(N-1) is contained in I + m^N, hence in I by Nakayama.

use std::collections::VecDeque;

use crate::error::{AdegError, Result};
use crate::field::PrimeField;
use crate::poly::{tri_len, TruncatedPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColengthReport {
    pub value: u64,
    pub stable: bool,
    pub truncation_used: u32,
    pub rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColengthOptions {
    pub start_n: u32,
    pub max_n: u32,
}

impl Default for ColengthOptions {
    fn default() -> Self {
        ColengthOptions { start_n: 8, max_n: 64 }
    }
}

impl ColengthOptions {
    /// Start at max(2m, 8), the default for order-m degeneracy ideals.
    pub fn for_order(m: usize, max_n: u32) -> Self {
        ColengthOptions { start_n: (2 * m as u32).max(8).min(max_n), max_n }
    }
}

/// Colength of the ideal generated by `gens`, read as exact polynomials.
pub fn ideal_colength(gens: &[TruncatedPoly], opts: ColengthOptions) -> Result<ColengthReport> {
    if gens.is_empty() {
        return Err(AdegError::Usage("ideal needs at least one generator".into()));
    }
    let field = gens[0].field();
    if gens.iter().any(|g| g.field() != field) {
        return Err(AdegError::Usage("generators live over different fields".into()));
    }
    ideal_colength_with(|n| Ok(gens.iter().map(|g| g.with_truncation(n)).collect()), opts)
}

/// Colength where the generators are rebuilt at each truncation order.
pub fn ideal_colength_with<F>(mut build: F, opts: ColengthOptions) -> Result<ColengthReport>
where
    F: FnMut(u32) -> Result<Vec<TruncatedPoly>>,
{
    if opts.start_n == 0 || opts.start_n > opts.max_n {
        return Err(AdegError::Usage(format!(
            "bad truncation range {}..={}",
            opts.start_n, opts.max_n
        )));
    }
    let mut n = opts.start_n;
    loop {
        let gens = build(n)?;
        let report = colength_at(&gens, n)?;
        if report.stable {
            return Ok(report);
        }
        if n >= opts.max_n {
            return Err(AdegError::ColengthDiverged { max_n: opts.max_n });
        }
        n = (2 * n).min(opts.max_n);
    }
}

/// One truncation step: candidate colength and whether it is certified.
pub fn colength_at(gens: &[TruncatedPoly], n: u32) -> Result<ColengthReport> {
    let Some(first) = gens.first() else {
        return Err(AdegError::Usage("ideal needs at least one generator".into()));
    };
    let field = first.field();
    let mut ech = Echelon::new(field, n);
    let mut queue: VecDeque<Vec<u64>> = gens.iter().map(|g| g.to_dense(n)).collect();
    while let Some(v) = queue.pop_front() {
        if ech.full() {
            break;
        }
        if let Some(row) = ech.insert(v) {
            let (vx, vy) = ech.shifts(row);
            queue.extend(vx);
            queue.extend(vy);
        }
    }
    let m = tri_len(n);
    let top = tri_len(n - 1);
    let stable = (top..m).all(|c| ech.pivot[c].is_some());
    Ok(ColengthReport {
        value: (m - ech.rank) as u64,
        stable,
        truncation_used: n,
        rank: ech.rank,
    })
}

struct Echelon {
    field: PrimeField,
    n: u32,
    pivot: Vec<Option<usize>>,
    rows: Vec<Vec<u64>>,
    rank: usize,
}

impl Echelon {
    fn new(field: PrimeField, n: u32) -> Self {
        let m = tri_len(n);
        Echelon { field, n, pivot: vec![None; m], rows: Vec::new(), rank: 0 }
    }

    fn full(&self) -> bool {
        self.rank == self.pivot.len()
    }

    /// Reduces v until its leading column is free; stores it there and returns its row index.
    fn insert(&mut self, mut v: Vec<u64>) -> Option<usize> {
        let p = self.field.modulus();
        let m = v.len();
        for c in 0..m {
            if v[c] == 0 {
                continue;
            }
            match self.pivot[c] {
                Some(r) => {
                    let f = p - v[c];
                    let row = &self.rows[r];
                    for k in c..m {
                        if row[k] != 0 {
                            v[k] = (v[k] + f * row[k]) % p;
                        }
                    }
                }
                None => {
                    let inv = self.field.inv(v[c]).expect("nonzero");
                    for x in v[c..].iter_mut() {
                        *x = *x * inv % p;
                    }
                    self.rows.push(v);
                    self.pivot[c] = Some(self.rows.len() - 1);
                    self.rank += 1;
                    return Some(self.rows.len() - 1);
                }
            }
        }
        None
    }

    /// x and y multiples of a stored row, or None when they vanish mod m^N.
    fn shifts(&self, r: usize) -> (Option<Vec<u64>>, Option<Vec<u64>>) {
        let row = &self.rows[r];
        let m = row.len();
        let mut vx = vec![0u64; m];
        let mut vy = vec![0u64; m];
        let mut any = false;
        for d in 0..self.n.saturating_sub(1) as usize {
            let base = d * (d + 1) / 2;
            for j in 0..=d {
                let c = row[base + j];
                if c != 0 {
                    any = true;
                    vx[base + j + d + 1] = c;
                    vy[base + j + d + 2] = c;
                }
            }
        }
        if any {
            (Some(vx), Some(vy))
        } else {
            (None, None)
        }
    }
}

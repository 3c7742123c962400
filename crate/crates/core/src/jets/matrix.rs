//! Degeneracy matrices and their maximal minors.

use crate::error::{AdegError, Result};
use crate::poly::TruncatedPoly;

use super::basis::DualBasis;
use super::elements::JetElement;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<TruncatedPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<TruncatedPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(AdegError::Usage(format!(
                "{} entries do not fill a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &TruncatedPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols)
            .flat_map(|c| (0..self.rows).map(move |r| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        PolyMatrix { rows: self.cols, cols: self.rows, entries }
    }
}

/// Entry (i, l) is functional i applied to element l.
pub fn degeneracy_matrix(basis: &DualBasis, elems: &[JetElement]) -> Result<PolyMatrix> {
    let rows = basis.functionals.len();
    let mut entries = Vec::with_capacity(rows * elems.len());
    for i in 0..rows {
        for e in elems {
            entries.push(basis.apply(i, e)?);
        }
    }
    PolyMatrix::new(rows, elems.len(), entries)
}

/// Maximal minors of a matrix whose shape differs from square by at most one.
///
/// For an (n+1) x n matrix the k-th output deletes row k; for n x (n+1) it
/// deletes column k. Determinants come from a Laplace expansion that shares
/// sub-minors across all row subsets, so the cost is about 2^rows products.
pub fn maximal_minors(m: &PolyMatrix) -> Result<Vec<TruncatedPoly>> {
    let (r, c) = m.shape();
    if r.abs_diff(c) > 1 {
        return Err(AdegError::Usage(format!("maximal minors need |rows - cols| <= 1, got {r}x{c}")));
    }
    if r == 0 || c == 0 {
        return Err(AdegError::Usage("empty matrix".into()));
    }
    if r < c {
        return maximal_minors(&m.transpose());
    }
    if r > 24 {
        return Err(AdegError::Unsupported(format!("{r} rows is too many")));
    }
    let e0 = m.get(0, 0);
    let (field, n) = (e0.field(), e0.truncation());
    // det[s] = determinant of rows in bitmask s against the first |s| columns.
    let mut det: Vec<Option<TruncatedPoly>> = vec![None; 1 << r];
    det[0] = Some(TruncatedPoly::one(field, n));
    for size in 1..=c {
        for s in 0usize..(1 << r) {
            if s.count_ones() as usize != size {
                continue;
            }
            let col = size - 1;
            let mut acc = TruncatedPoly::zero(field, n);
            for (pos, row) in (0..r).filter(|b| s >> b & 1 == 1).enumerate() {
                let entry = m.get(row, col);
                if entry.is_zero() {
                    continue;
                }
                let sub = det[s & !(1 << row)].as_ref().expect("smaller subsets come first");
                if sub.is_zero() {
                    continue;
                }
                let term = entry * sub;
                acc = if (pos + col) % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            det[s] = Some(acc);
        }
    }
    let full = (1usize << r) - 1;
    let out = if r == c {
        vec![det[full].clone().expect("computed")]
    } else {
        (0..r).map(|k| det[full & !(1 << k)].clone().expect("computed")).collect()
    };
    Ok(out)
}

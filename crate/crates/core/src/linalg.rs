//! Exact Gaussian elimination over [`Scalar`].
//!
//! Every matrix in this crate is small (one weight space at a time), so rows
//! are dense. Elimination runs directly in the field ℚ(α); canonical scalars
//! keep intermediate degrees low.

use crate::scalar::Scalar;

/// A row space kept in reduced row echelon form, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    // Sorted by pivot. Each row has a 1 at its pivot and zeros at every
    // other row's pivot.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &[Scalar])> {
        self.rows.iter().map(|(p, r)| (*p, r.as_slice()))
    }

    /// Columns without a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut piv = vec![false; self.ncols];
        for (p, _) in &self.rows {
            piv[*p] = true;
        }
        (0..self.ncols).filter(|&c| !piv[c]).collect()
    }

    /// Subtracts the stored rows from `v` so that it vanishes on every pivot.
    pub fn reduce(&self, v: &mut [Scalar]) {
        debug_assert_eq!(v.len(), self.ncols);
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&c * r);
                }
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Adds `v` to the row space. Returns `false` if it was already there.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("pivot is nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &(&c * r);
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }
}

/// Rank of the matrix with the given rows.
pub fn rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r.clone());
        if e.is_full() {
            break;
        }
    }
    e.rank()
}

/// Solves `Σ x_k · cols[k] = target` for `x`, if a solution exists.
///
/// The columns must be linearly independent; the solution is then unique.
pub fn solve_columns(cols: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = cols.len();
    let m = target.len();
    // Augmented system, one row per coordinate: [cols | target].
    let mut e = Echelon::new(n + 1);
    for i in 0..m {
        let mut row: Vec<Scalar> = cols.iter().map(|c| c[i].clone()).collect();
        row.push(target[i].clone());
        e.insert(row);
    }
    if e.pivots().any(|p| p == n) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (p, row) in e.rows() {
        x[p] = row[n].clone();
    }
    Some(x)
}

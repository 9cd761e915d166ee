//! Exact row reduction over ℚ.
//!
//! Pivoting is deterministic: each inserted row is reduced against the
//! existing pivots and, if it survives, takes its leftmost nonzero column as
//! pivot. Rows stay fully reduced with leading ones, ordered by pivot column.

use num_traits::{One, Zero};

use crate::scalar::ExactScalar;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rref {
    ncols: usize,
    rows: Vec<Vec<ExactScalar>>,
    pivots: Vec<usize>,
}

fn is_zero_row(r: &[ExactScalar]) -> bool {
    r.iter().all(Zero::is_zero)
}

impl Rref {
    pub fn new(ncols: usize) -> Self {
        Rref { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<I>(ncols: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = Vec<ExactScalar>>,
    {
        let mut r = Rref::new(ncols);
        for row in rows {
            r.insert(row);
        }
        r
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<ExactScalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Eliminates the pivot columns from `v`. The result is zero exactly when
    /// `v` lies in the row space; otherwise it is the canonical representative
    /// of `v` modulo the row space.
    pub fn reduce(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(v.len(), self.ncols, "row length mismatch");
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row).skip(p) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[ExactScalar]) -> bool {
        is_zero_row(&self.reduce(v))
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: Vec<ExactScalar>) -> bool {
        let mut r = self.reduce(&row);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = r[p].clone();
        if !lead.is_one() {
            for x in r.iter_mut().skip(p) {
                *x /= &lead;
            }
        }
        for other in &mut self.rows {
            if other[p].is_zero() {
                continue;
            }
            let f = other[p].clone();
            for (x, y) in other.iter_mut().zip(&r).skip(p) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Basis of {x : row·x = 0 for every row}, one vector per free column,
    /// with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<ExactScalar>> {
        let mut out = Vec::new();
        let mut pivot_iter = self.pivots.iter().peekable();
        for free in 0..self.ncols {
            if pivot_iter.peek() == Some(&&free) {
                pivot_iter.next();
                continue;
            }
            let mut x = vec![ExactScalar::zero(); self.ncols];
            x[free] = ExactScalar::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[free].is_zero() {
                    x[p] = -row[free].clone();
                }
            }
            out.push(x);
        }
        out
    }

    /// Coordinates of `v` in terms of the stored rows, if it lies in the span.
    pub fn coordinates(&self, v: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }
}

/// Solves `Σ_i x_i·basis_i = target` when the basis vectors are independent.
pub fn solve_in_basis(basis: &[Vec<ExactScalar>], target: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
    let n = basis.len();
    let ncols = target.len();
    // augmented columns: [basis_i | e_i] so the identity part records the combination
    let mut rref = Rref::new(ncols + n);
    for (i, b) in basis.iter().enumerate() {
        let mut row = b.clone();
        row.extend((0..n).map(|k| if k == i { ExactScalar::one() } else { ExactScalar::zero() }));
        if !rref.insert(row) {
            return None;
        }
    }
    let mut aug = target.to_vec();
    aug.extend(std::iter::repeat_n(ExactScalar::zero(), n));
    let red = rref.reduce(&aug);
    if !is_zero_row(&red[..ncols]) {
        return None;
    }
    // target − Σ x_i b_i ≡ 0 leaves −x in the identity block
    Some(red[ncols..].iter().map(|x| -x.clone()).collect())
}

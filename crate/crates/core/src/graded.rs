//! Bigraded pieces of V_{A₁°} and exact spans / kernels inside them.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::combinatorics::partitions;
use crate::error::{Error, Result};
use crate::fock::{FockMonomial, FockVector};
use crate::linalg::Rref;
use crate::scalar::{fmt_scalar, q, ExactScalar, HalfInt};
use crate::vertex::state_field_mode;

/// All monomials of one (charge, weight), in canonical order.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    charge: i64,
    weight_quarters: i64,
    monomials: Vec<FockMonomial>,
    index: HashMap<FockMonomial, usize>,
}

impl GradedPiece {
    /// The piece of charge `charge·ϖ` and weight `weight_quarters/4`.
    pub fn new(charge: i64, weight_quarters: i64) -> Self {
        let rest = weight_quarters - charge * charge;
        let monomials: Vec<FockMonomial> = if rest >= 0 && rest % 4 == 0 {
            partitions((rest / 4) as u32)
                .into_iter()
                .map(|p| FockMonomial::new(charge, p))
                .collect()
        } else {
            Vec::new()
        };
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        GradedPiece { charge, weight_quarters, monomials, index }
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn weight_quarters(&self) -> i64 {
        self.weight_quarters
    }

    pub fn weight(&self) -> ExactScalar {
        q(self.weight_quarters, 4)
    }

    pub fn monomials(&self) -> &[FockMonomial] {
        &self.monomials
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains_vector(&self, v: &FockVector) -> bool {
        v.terms().all(|(m, _)| self.index.contains_key(m))
    }

    /// Coordinates in the monomial basis; `None` if `v` leaves the piece.
    pub fn coordinates(&self, v: &FockVector) -> Option<Vec<ExactScalar>> {
        let mut out = vec![ExactScalar::zero(); self.dim()];
        for (m, c) in v.terms() {
            out[*self.index.get(m)?] = c.clone();
        }
        Some(out)
    }

    pub fn vector(&self, coords: &[ExactScalar]) -> FockVector {
        let mut v = FockVector::zero();
        for (m, c) in self.monomials.iter().zip(coords) {
            v.add_term(m.clone(), c.clone());
        }
        v
    }

    fn mismatch(&self, index: usize) -> Error {
        Error::BidegreeMismatch {
            index,
            charge: self.charge,
            weight: fmt_scalar(&self.weight()),
        }
    }
}

pub fn enumerate_graded_monomials(charge: i64, weight: &ExactScalar) -> GradedPiece {
    match HalfInt::from_scalar(&(weight * q(2, 1))) {
        // weight·4 = 2·(weight·2)
        Some(h) => GradedPiece::new(charge, h.doubled()),
        None => GradedPiece::new(charge, -1),
    }
}

/// Every monomial of weight ≤ `max_weight_quarters/4`, in canonical order.
/// With `even_only`, only charges in A₁ (even multiples of ϖ).
pub fn monomials_up_to(max_weight_quarters: i64, even_only: bool) -> Vec<FockMonomial> {
    let mut out = Vec::new();
    let mut c: i64 = 0;
    while c * c <= max_weight_quarters {
        for charge in if c == 0 { vec![0] } else { vec![-c, c] } {
            if even_only && charge % 2 != 0 {
                continue;
            }
            let mut w = charge * charge;
            while w <= max_weight_quarters {
                out.extend(GradedPiece::new(charge, w).monomials().iter().cloned());
                w += 4;
            }
        }
        c += 1;
    }
    out.sort();
    out
}

/// A subspace of one graded piece, stored as RREF rows over its monomials.
#[derive(Clone, Debug)]
pub struct LinearSpan {
    piece: GradedPiece,
    rref: Rref,
}

impl LinearSpan {
    pub fn empty(piece: GradedPiece) -> Self {
        let n = piece.dim();
        LinearSpan { piece, rref: Rref::new(n) }
    }

    pub fn piece(&self) -> &GradedPiece {
        &self.piece
    }

    pub fn rank(&self) -> usize {
        self.rref.rank()
    }

    pub fn rows(&self) -> &[Vec<ExactScalar>] {
        self.rref.rows()
    }

    pub fn rref(&self) -> &Rref {
        &self.rref
    }

    /// The RREF rows as vectors.
    pub fn vectors(&self) -> Vec<FockVector> {
        self.rref.rows().iter().map(|r| self.piece.vector(r)).collect()
    }

    /// Adds a vector; fails if it leaves the piece.
    pub fn insert(&mut self, v: &FockVector) -> Result<bool> {
        let c = self.piece.coordinates(v).ok_or_else(|| self.piece.mismatch(0))?;
        Ok(self.rref.insert(c))
    }

    pub fn contains(&self, v: &FockVector) -> bool {
        match self.piece.coordinates(v) {
            Some(c) => self.rref.contains(&c),
            None => false,
        }
    }

    /// Canonical representative of `v` modulo the span.
    pub fn reduce(&self, v: &FockVector) -> Option<FockVector> {
        let c = self.piece.coordinates(v)?;
        Some(self.piece.vector(&self.rref.reduce(&c)))
    }
}

/// Exact RREF of the given vectors inside `piece`.
pub fn span_rank(vectors: &[FockVector], piece: &GradedPiece) -> Result<LinearSpan> {
    let mut span = LinearSpan::empty(piece.clone());
    for (i, v) in vectors.iter().enumerate() {
        let c = piece.coordinates(v).ok_or_else(|| piece.mismatch(i))?;
        span.rref.insert(c);
    }
    Ok(span)
}

/// Joint kernel of the operators `v ↦ u(m)v` restricted to `piece`.
pub fn mode_kernel(operators: &[(FockVector, HalfInt)], piece: &GradedPiece) -> Result<LinearSpan> {
    let n = piece.dim();
    let mut equations = Rref::new(n);
    for (u, m) in operators {
        // column i = image of the i-th basis monomial
        let mut rows: HashMap<FockMonomial, Vec<ExactScalar>> = HashMap::new();
        for (i, mono) in piece.monomials().iter().enumerate() {
            let image = state_field_mode(u, *m, &mono.clone().into())?;
            for (o, c) in image.terms() {
                rows.entry(o.clone()).or_insert_with(|| vec![ExactScalar::zero(); n])[i] = c.clone();
            }
        }
        let mut keys: Vec<_> = rows.keys().cloned().collect();
        keys.sort();
        for k in keys {
            equations.insert(rows.remove(&k).unwrap());
            if equations.rank() == n {
                return Ok(LinearSpan::empty(piece.clone()));
            }
        }
    }
    let kernel = Rref::from_rows(n, equations.nullspace());
    Ok(LinearSpan { piece: piece.clone(), rref: kernel })
}

/// One row of a dimension table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DimensionRecord {
    /// in units of ϖ
    pub charge: i64,
    /// `p/q`
    pub weight: String,
    pub dim: usize,
}

/// Dimensions keyed by (charge in ϖ units, 4·weight).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DimensionTable {
    pub entries: std::collections::BTreeMap<(i64, i64), usize>,
}

impl DimensionTable {
    pub fn set(&mut self, charge: i64, weight_quarters: i64, dim: usize) {
        self.entries.insert((charge, weight_quarters), dim);
    }

    pub fn get(&self, charge: i64, weight_quarters: i64) -> usize {
        self.entries.get(&(charge, weight_quarters)).copied().unwrap_or(0)
    }

    /// Sum over charges at one weight.
    pub fn total_at(&self, weight_quarters: i64) -> usize {
        self.entries
            .iter()
            .filter(|((_, w), _)| *w == weight_quarters)
            .map(|(_, d)| d)
            .sum()
    }

    /// Records in (weight, charge) order.
    pub fn records(&self) -> Vec<DimensionRecord> {
        let mut keys: Vec<_> = self.entries.keys().copied().collect();
        keys.sort_by_key(|&(c, w)| (w, c));
        keys.into_iter()
            .map(|(c, w)| DimensionRecord {
                charge: c,
                weight: fmt_scalar(&q(w, 4)),
                dim: self.entries[&(c, w)],
            })
            .collect()
    }
}

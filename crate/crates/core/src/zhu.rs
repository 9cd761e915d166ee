//! Zhu's C₂ quotient R_V = V/V(−2)V on weight-bounded slices, its product
//! [u][v] = [u(−1)v] and bracket {[u],[v]} = [u(0)v].

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::grammar::{render, Oscillator};
use crate::graded::{span_rank, GradedPiece, LinearSpan};
use crate::scalar::{fmt_scalar, q, HalfInt};
use crate::subspace::spaces::{GradedSpace, PrincipalWcirc};
use crate::vertex::state_field_mode;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZhuRow {
    pub charge: i64,
    pub weight: String,
    pub space_dim: usize,
    pub c2_dim: usize,
    pub quotient_dim: usize,
}

/// Per bidegree: dim V, dim V(−2)V and the quotient, with the spans kept
/// for reducing classes.
#[derive(Clone, Debug)]
pub struct ZhuClassTable {
    pub space: String,
    pub max_weight: i64,
    spans: BTreeMap<(i64, i64), LinearSpan>,
    rows: Vec<ZhuRow>,
}

impl ZhuClassTable {
    pub fn rows(&self) -> &[ZhuRow] {
        &self.rows
    }

    /// Quotient dimensions summed over charge at weights 0..=max_weight.
    /// Only integral weights are listed.
    pub fn quotient_by_weight(&self) -> Vec<usize> {
        let mut out = vec![0; self.max_weight as usize + 1];
        for ((_, wq), span) in &self.spans {
            if wq % 4 == 0 {
                let row = self.row(span.piece().charge(), *wq);
                out[(wq / 4) as usize] += row.map_or(0, |r| r.quotient_dim);
            }
        }
        out
    }

    fn row(&self, charge: i64, wq: i64) -> Option<&ZhuRow> {
        self.rows
            .iter()
            .find(|r| r.charge == charge && r.weight == fmt_scalar(&q(wq, 4)))
    }

    /// Reduces `v` modulo V(−2)V, component by component.
    pub fn reduce(&self, v: &FockVector) -> Result<ZhuClass> {
        let mut residual = FockVector::zero();
        for ((c, wq), part) in v.components() {
            let span = self.spans.get(&(c, wq)).ok_or_else(|| {
                Error::Invalid(format!(
                    "class at charge {c}, weight {} lies outside the computed table (max weight {})",
                    fmt_scalar(&q(wq, 4)),
                    self.max_weight
                ))
            })?;
            residual = residual + span.reduce(&part).expect("component lies in its piece");
        }
        Ok(ZhuClass { residual })
    }
}

/// A class in R_V, represented by its reduced residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZhuClass {
    pub residual: FockVector,
}

impl ZhuClass {
    pub fn is_zero(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn render(&self, osc: Oscillator) -> String {
        render(&self.residual, osc)
    }
}

fn charge_bound(max_weight: i64) -> i64 {
    // 4·weight ≥ charge²
    let mut c = 0;
    while (c + 1) * (c + 1) <= 4 * max_weight {
        c += 1;
    }
    c
}

/// Span of {u(n)v : u, v basis vectors of `space`, n allowed by `mode_ok`}
/// inside one bidegree. `mode_ok` receives 2n.
fn quotient_span(space: &dyn GradedSpace, charge: i64, wq: i64, mode_ok: &(dyn Fn(i64) -> bool + Sync)) -> Result<LinearSpan> {
    let piece = GradedPiece::new(charge, wq);
    let mut span = LinearSpan::empty(piece);
    let sources = space.bidegrees(wq, charge_bound(wq / 4) + charge.abs());
    for &(cu, wu) in &sources {
        for &(cv, wv) in &sources {
            if cu + cv != charge || wu + wv >= wq || (wu + wv - wq) % 2 != 0 {
                continue;
            }
            // wt u(n)v = wt u + wt v − n − 1
            let doubled = (wu + wv - wq) / 2 - 2;
            if !mode_ok(doubled) {
                continue;
            }
            let n = HalfInt::from_doubled(doubled);
            let vs = space.basis(cv, wv);
            for u in space.basis(cu, wu) {
                for v in &vs {
                    span.insert(&state_field_mode(&u, n, v)?)?;
                }
            }
        }
    }
    Ok(span)
}

type PieceResult = ((i64, i64), LinearSpan, ZhuRow);

fn quotient_table(
    space: &dyn GradedSpace,
    max_weight: i64,
    mode_ok: &(dyn Fn(i64) -> bool + Sync),
) -> Result<ZhuClassTable> {
    let bidegrees = space.bidegrees(4 * max_weight, charge_bound(max_weight));
    let results: Result<Vec<PieceResult>> = bidegrees
        .par_iter()
        .map(|&(c, wq)| {
            let span = quotient_span(space, c, wq, mode_ok)?;
            let space_dim = span_rank(&space.basis(c, wq), span.piece())?.rank();
            let row = ZhuRow {
                charge: c,
                weight: fmt_scalar(&q(wq, 4)),
                space_dim,
                c2_dim: span.rank(),
                quotient_dim: space_dim - span.rank(),
            };
            Ok(((c, wq), span, row))
        })
        .collect();
    let mut spans = BTreeMap::new();
    let mut rows = Vec::new();
    for (key, span, row) in results? {
        spans.insert(key, span);
        rows.push(row);
    }
    Ok(ZhuClassTable { space: space.name().to_string(), max_weight, spans, rows })
}

fn is_c2_mode(doubled: i64) -> bool {
    doubled == -4
}

/// dim of V(−2)V and of R_V on every bidegree of weight ≤ `max_weight`.
pub fn c2_dims(space: &dyn GradedSpace, max_weight: i64) -> Result<ZhuClassTable> {
    quotient_table(space, max_weight, &is_c2_mode)
}

/// The class of `v` in R_V, computing V(−2)V only on the bidegrees `v` meets.
pub fn zhu_class(v: &FockVector, space: &dyn GradedSpace) -> Result<ZhuClass> {
    let mut residual = FockVector::zero();
    for ((c, wq), part) in v.components() {
        let span = quotient_span(space, c, wq, &is_c2_mode)?;
        residual = residual + span.reduce(&part).expect("component lies in its piece");
    }
    Ok(ZhuClass { residual })
}

/// [u][v] = [u(−1)v].
pub fn zhu_product(u: &FockVector, v: &FockVector, space: &dyn GradedSpace) -> Result<ZhuClass> {
    zhu_class(&state_field_mode(u, HalfInt::int(-1), v)?, space)
}

/// {[u],[v]} = [u(0)v].
pub fn zhu_bracket(u: &FockVector, v: &FockVector, space: &dyn GradedSpace) -> Result<ZhuClass> {
    zhu_class(&state_field_mode(u, HalfInt::int(0), v)?, space)
}

/// W°/W°(≤−2)W°: quotient dimensions of the span of u(n)v, n ≤ −2.
#[derive(Clone, Debug, Serialize)]
pub struct GeneralizedC2Report {
    pub max_weight: i64,
    pub rows: Vec<ZhuRow>,
    pub total_quotient_dim: usize,
    /// largest weight carrying a nonzero quotient, as `p/q`
    pub threshold: String,
}

pub fn generalized_c2_dims_wcirc(max_weight: i64) -> Result<GeneralizedC2Report> {
    let table = quotient_table(&PrincipalWcirc, max_weight, &|doubled| doubled <= -4)?;
    let total = table.rows.iter().map(|r| r.quotient_dim).sum();
    let threshold = table
        .spans
        .keys()
        .filter(|k| table.row(k.0, k.1).is_some_and(|r| r.quotient_dim > 0))
        .map(|&(_, wq)| wq)
        .max()
        .unwrap_or(0);
    Ok(GeneralizedC2Report {
        max_weight,
        rows: table.rows,
        total_quotient_dim: total,
        threshold: fmt_scalar(&q(threshold, 4)),
    })
}

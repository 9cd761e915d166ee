//! Structure of C at bounded weight: the sl₂ picture on C^α, the
//! ∂-recurrence for Φ°(n,m), the change-of-basis matrix between
//! {∂Φ°(i,2n−1−i)} ∪ {φₙ} and {Φ°(i,2n−i)}, the nested basis 𝒞_new, strong
//! generation by {φₙ} and its minimality.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::fock::FockVector;
use crate::grammar::{render, Oscillator};
use crate::graded::{span_rank, GradedPiece};
use crate::linalg::solve_in_basis;
use crate::report::IdentityReport;
use crate::scalar::{fmt_scalar, q, qi, ExactScalar, HalfInt};
use crate::subspace::spaces::{CommutantC, GradedSpace};
use crate::subspace::vectors::{
    basis_tuples, cnew_vector, generalized_principal_vector, phi, IndexTuple,
};
use crate::vertex::{derivation, derivation_pow, state_field_mode, virasoro_mode};

/// Basis {Φ°(n₁,n₂) : n₁ ≤ n₂, n₁+n₂ = Δ−1} of C^α_Δ.
pub fn c_alpha_basis(weight: u32) -> Vec<FockVector> {
    CommutantC.basis(2, 4 * weight as i64)
}

fn c_alpha_piece(weight: u32) -> GradedPiece {
    GradedPiece::new(2, 4 * weight as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2Row {
    pub weight: u32,
    pub dim: usize,
    /// ⌊(Δ+1)/2⌋
    pub expected_dim: usize,
    /// rank of ∂ : C^α_Δ → C^α_{Δ+1}
    pub derivation_rank: usize,
    pub ker_l1: usize,
    /// rank of {∂ⁱφ_m : i + 2m + 1 = Δ}
    pub phi_descendant_rank: usize,
}

impl Sl2Row {
    pub fn passed(&self) -> bool {
        let expected_ker = if self.weight % 2 == 1 { 1 } else { 0 };
        self.dim == self.expected_dim
            && self.derivation_rank == self.dim
            && self.ker_l1 == expected_ker
            && self.phi_descendant_rank == self.dim
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Sl2Report {
    pub max_weight: u32,
    pub rows: Vec<Sl2Row>,
}

impl Sl2Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(Sl2Row::passed)
    }
}

/// On C^α for 1 ≤ Δ ≤ `max_weight`: dimensions, injectivity of ∂, ker L₁,
/// and the basis {∂ⁱφ_m}.
pub fn sl2_report(max_weight: u32) -> Result<Sl2Report> {
    let rows: Result<Vec<_>> = (1..=max_weight)
        .into_par_iter()
        .map(|w| {
            let basis = c_alpha_basis(w);
            let dim = span_rank(&basis, &c_alpha_piece(w))?.rank();

            let images: Vec<_> = basis.iter().map(derivation).collect();
            let derivation_rank = span_rank(&images, &c_alpha_piece(w + 1))?.rank();

            let lowered: Vec<_> = basis.iter().map(|b| virasoro_mode(1, b)).collect::<Result<_>>()?;
            let ker_l1 = dim - span_rank(&lowered, &c_alpha_piece(w - 1))?.rank();

            let descendants: Vec<_> = (0..=(w - 1) / 2)
                .map(|m| derivation_pow(&phi(m), w - 1 - 2 * m))
                .collect();
            let phi_descendant_rank = span_rank(&descendants, &c_alpha_piece(w))?.rank();

            Ok(Sl2Row {
                weight: w,
                dim,
                expected_dim: w.div_ceil(2) as usize,
                derivation_rank,
                ker_l1,
                phi_descendant_rank,
            })
        })
        .collect();
    Ok(Sl2Report { max_weight, rows: rows? })
}

/// ∂Φ°(n,m) = (m+3/2)Φ°(n,m+1) + (n+1)Φ°(n+1,m) for all n, m ≤ `bound`.
pub fn derivative_recurrence_check(bound: u32) -> IdentityReport {
    let mut report = IdentityReport::new("derivative-recurrence");
    let start = std::time::Instant::now();
    for n in 0..=bound {
        for m in 0..=bound {
            let lhs = derivation(&generalized_principal_vector(&IndexTuple::arbitrary(vec![n, m])));
            let mut rhs = generalized_principal_vector(&IndexTuple::arbitrary(vec![n, m + 1]))
                .scaled(&(qi(m as i64) + q(3, 2)));
            rhs.add_scaled(
                &generalized_principal_vector(&IndexTuple::arbitrary(vec![n + 1, m])),
                &qi(n as i64 + 1),
            );
            report.record(
                lhs == rhs,
                || format!("n={n}, m={m}"),
                || render(&lhs, Oscillator::Varpi),
                || render(&rhs, Oscillator::Varpi),
            );
        }
    }
    report.elapsed = start.elapsed();
    report
}

/// Coordinates of X = (∂Φ°(0,2n−1), …, ∂Φ°(n−1,n), φₙ) in the basis
/// Y = (Φ°(0,2n), …, Φ°(n,n)) of C^α_{2n+1}; column j holds X_j.
#[derive(Clone, Debug, Serialize)]
pub struct ChangeOfBasis {
    pub n: u32,
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: Vec<Vec<ExactScalar>>,
    #[serde(serialize_with = "ser_scalar")]
    pub determinant: ExactScalar,
    /// (2n+1/2)(2n−1/2)⋯(n+3/2)
    #[serde(serialize_with = "ser_scalar")]
    pub expected_determinant: ExactScalar,
    pub lower_triangular: bool,
}

fn ser_scalar<S: serde::Serializer>(x: &ExactScalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_scalar(x))
}

fn ser_matrix<S: serde::Serializer>(m: &[Vec<ExactScalar>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    m.iter()
        .map(|r| r.iter().map(fmt_scalar).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .serialize(s)
}

impl ChangeOfBasis {
    pub fn passed(&self) -> bool {
        self.lower_triangular && self.determinant == self.expected_determinant && !self.determinant.is_zero()
    }
}

pub fn change_of_basis(n: u32) -> Result<ChangeOfBasis> {
    let piece = c_alpha_piece(2 * n + 1);
    let coords = |v: &FockVector| piece.coordinates(v).expect("vector lies in C^α_{2n+1}");
    let y: Vec<_> = (0..=n)
        .map(|i| coords(&generalized_principal_vector(&IndexTuple::arbitrary(vec![i, 2 * n - i]))))
        .collect();
    let mut x: Vec<_> = (0..n)
        .map(|i| coords(&derivation(&generalized_principal_vector(&IndexTuple::arbitrary(vec![i, 2 * n - 1 - i])))))
        .collect();
    x.push(coords(&phi(n)));

    let size = (n + 1) as usize;
    let mut matrix = vec![vec![ExactScalar::zero(); size]; size];
    for (j, xj) in x.iter().enumerate() {
        let c = solve_in_basis(&y, xj).ok_or_else(|| {
            crate::Error::Invalid(format!("X_{j} is not in the span of Y at n = {n}"))
        })?;
        for (i, ci) in c.into_iter().enumerate() {
            matrix[i][j] = ci;
        }
    }
    let lower_triangular = (0..size).all(|i| (i + 1..size).all(|j| matrix[i][j].is_zero()));
    let determinant = if lower_triangular {
        (0..size).map(|i| matrix[i][i].clone()).product()
    } else {
        determinant(matrix.clone())
    };
    let expected_determinant = (0..n).map(|i| qi(2 * n as i64 - i as i64) + q(1, 2)).product();
    Ok(ChangeOfBasis { n, matrix, determinant, expected_determinant, lower_triangular })
}

fn determinant(mut m: Vec<Vec<ExactScalar>>) -> ExactScalar {
    let n = m.len();
    let mut det = ExactScalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return ExactScalar::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        let top = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot;
            for (x, y) in row[col..].iter_mut().zip(&top[col..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Lexicographic order on 𝒞 labels: compare n₁ first.
fn lex_greater(a: &IndexTuple, b: &IndexTuple) -> bool {
    a.entries() > b.entries()
}

/// 𝒞_new^{rα} at weights r² ≤ Δ ≤ `max_weight`: full rank against the label
/// count, and each vector's expansion in 𝒞 has its own label as the
/// lexicographically largest term.
pub fn verify_basis_cnew(r: u32, max_weight: u32) -> Result<IdentityReport> {
    let start = std::time::Instant::now();
    let charge = 2 * r as i64;
    let base = r * r;
    let weights: Vec<u32> = (base..=max_weight).collect();
    let parts: Result<Vec<IdentityReport>> = weights
        .par_iter()
        .map(|&w| {
            let mut report = IdentityReport::new(format!("cnew-basis r={r}"));
            let piece = GradedPiece::new(charge, 4 * w as i64);
            let labels = basis_tuples(2 * r as usize, w - base);
            let new: Vec<_> = labels.iter().map(cnew_vector).collect::<Result<_>>()?;
            let rank = span_rank(&new, &piece)?.rank();
            report.record(
                rank == labels.len(),
                || format!("rank at weight {w}"),
                || rank.to_string(),
                || labels.len().to_string(),
            );

            let old: Vec<_> = labels
                .iter()
                .map(|t| piece.coordinates(&generalized_principal_vector(t)).expect("in piece"))
                .collect();
            for (label, v) in labels.iter().zip(&new) {
                let c = piece.coordinates(v).expect("in piece");
                let expansion = solve_in_basis(&old, &c);
                let leader = expansion.as_ref().and_then(|x| {
                    labels
                        .iter()
                        .zip(x)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(l, _)| l)
                        .fold(None, |best: Option<&IndexTuple>, l| match best {
                            Some(b) if !lex_greater(l, b) => Some(b),
                            _ => Some(l),
                        })
                });
                report.record(
                    leader == Some(label),
                    || format!("leading term of Psi{label}"),
                    || leader.map_or("none".into(), |l| l.to_string()),
                    || label.to_string(),
                );
            }
            Ok(report)
        })
        .collect();
    let mut report = IdentityReport::new(format!("cnew-basis r={r}"));
    for p in parts? {
        report.merge(p);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// All ordered words φ_{m₁}(−l₁−1)⋯φ_{m_s}(−l_s−1)1 of charge sα and weight `weight`.
fn phi_words(s: u32, weight: u32) -> Result<Vec<FockVector>> {
    if s == 0 {
        return Ok(if weight == 0 { vec![FockVector::vacuum()] } else { Vec::new() });
    }
    let mut out = Vec::new();
    // the outermost factor φ_m(−l−1) contributes 2m + 1 + l
    for outer in 1..=weight {
        let inner = phi_words(s - 1, weight - outer)?;
        if inner.is_empty() {
            continue;
        }
        for m in 0..=(outer - 1) / 2 {
            let l = outer - 1 - 2 * m;
            let p = phi(m);
            for v in &inner {
                out.push(state_field_mode(&p, HalfInt::int(-(l as i64) - 1), v)?);
            }
        }
    }
    Ok(out)
}

/// Rank of the φ-words in every bidegree of C with weight ≤ `max_weight`
/// equals dim C there.
pub fn strong_generation_check(max_weight: u32) -> Result<IdentityReport> {
    let start = std::time::Instant::now();
    let bidegrees = CommutantC.bidegrees(4 * max_weight as i64, 2 * max_weight as i64);
    let parts: Result<Vec<IdentityReport>> = bidegrees
        .par_iter()
        .map(|&(c, wq)| {
            let mut report = IdentityReport::new("strong-generation");
            let piece = GradedPiece::new(c, wq);
            let words = phi_words((c / 2) as u32, (wq / 4) as u32)?;
            let rank = span_rank(&words, &piece)?.rank();
            let dim = CommutantC.dim(c, wq);
            report.record(
                rank == dim,
                || format!("charge {c}, weight {}", wq / 4),
                || rank.to_string(),
                || dim.to_string(),
            );
            Ok(report)
        })
        .collect();
    let mut report = IdentityReport::new("strong-generation");
    for p in parts? {
        report.merge(p);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Dropping φ_k loses exactly one dimension of C^α_{2k+1}, and adding it back
/// restores the full space.
pub fn minimality_check(k: u32) -> Result<IdentityReport> {
    let start = std::time::Instant::now();
    let mut report = IdentityReport::new(format!("minimality k={k}"));
    let w = 2 * k + 1;
    let piece = c_alpha_piece(w);
    let dim = span_rank(&c_alpha_basis(w), &piece)?.rank();
    let without: Vec<_> = (0..=k)
        .filter(|&m| m != k)
        .map(|m| derivation_pow(&phi(m), w - 1 - 2 * m))
        .collect();
    let rank = span_rank(&without, &piece)?.rank();
    report.record(
        rank + 1 == dim,
        || format!("span of d^i phi_m (m != {k}) in C^alpha_{w}"),
        || rank.to_string(),
        || format!("{}", dim - 1),
    );
    let mut with = without;
    with.push(phi(k));
    let full = span_rank(&with, &piece)?.rank();
    report.record(
        full == dim,
        || format!("span restored by phi_{k}"),
        || full.to_string(),
        || dim.to_string(),
    );
    report.elapsed = start.elapsed();
    Ok(report)
}

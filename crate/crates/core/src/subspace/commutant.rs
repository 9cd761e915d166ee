//! Commutants as joint kernels of non-negative generator modes, certified by
//! an explicit basis of the expected answer.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::graded::{mode_kernel, span_rank, DimensionTable, GradedPiece, LinearSpan};
use crate::scalar::{fmt_scalar, q, HalfInt};
use crate::subspace::spaces::{self, GradedSpace};
use crate::subspace::vectors::phi;
use crate::vertex::{e_alpha, e_varpi};

/// A generating set whose commutant is computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSet {
    /// {e^α}
    W,
    /// {φ₀,…,φ_top}
    C { top: u32 },
    /// {e^ϖ}
    Wcirc,
}

impl GeneratorSet {
    /// Generators sufficient at weight ≤ `max_weight`: for C the top index
    /// is ⌈(max_weight−1)/2⌉.
    pub fn for_weight(name: &str, max_weight: i64) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "w" => Ok(GeneratorSet::W),
            "c" => Ok(GeneratorSet::C { top: (max_weight.max(1) / 2) as u32 }),
            "wcirc" => Ok(GeneratorSet::Wcirc),
            _ => Err(Error::Unknown {
                kind: "generator set",
                name: name.to_string(),
                known: "W, C, Wcirc".into(),
            }),
        }
    }

    pub fn name(&self) -> String {
        match self {
            GeneratorSet::W => "W".into(),
            GeneratorSet::C { top } => format!("C(phi_0..phi_{top})"),
            GeneratorSet::Wcirc => "Wcirc".into(),
        }
    }

    pub fn generators(&self) -> Vec<FockVector> {
        match self {
            GeneratorSet::W => vec![e_alpha()],
            GeneratorSet::C { top } => (0..=*top).map(phi).collect(),
            GeneratorSet::Wcirc => vec![e_varpi()],
        }
    }

    /// The algebra the generators span, for escalation to descendants.
    pub fn generated_space(&self) -> Box<dyn GradedSpace> {
        match self {
            GeneratorSet::W => Box::new(spaces::PrincipalW),
            GeneratorSet::C { .. } => Box::new(spaces::CommutantC),
            GeneratorSet::Wcirc => Box::new(spaces::PrincipalWcirc),
        }
    }

    /// Space whose explicit basis should realize the kernel in `ambient`.
    pub fn expected_commutant(&self, ambient: &str) -> Option<Box<dyn GradedSpace>> {
        match (self, ambient) {
            (GeneratorSet::W, "VA1") => Some(Box::new(spaces::CommutantC)),
            (GeneratorSet::W, "VA1circ") => Some(Box::new(spaces::PrincipalWcirc)),
            (GeneratorSet::C { .. }, "VA1") => Some(Box::new(spaces::PrincipalW)),
            (GeneratorSet::Wcirc, "VA1") => Some(Box::new(spaces::PrincipalW)),
            _ => None,
        }
    }
}

/// Every mode u(m), m ≥ 0, of the given states that can be nonzero on `piece`.
pub fn nonnegative_modes(states: &[FockVector], piece: &GradedPiece) -> Vec<(FockVector, HalfInt)> {
    let mut ops = Vec::new();
    for s in states {
        for ((cu, wu), u) in s.components() {
            let c = piece.charge();
            let out_charge = cu + c;
            let mut d = (cu * c).rem_euclid(2);
            while wu + piece.weight_quarters() - 2 * d - 4 >= out_charge * out_charge {
                ops.push((u.clone(), HalfInt::from_doubled(d)));
                d += 2;
            }
        }
    }
    ops
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutantRow {
    pub charge: i64,
    pub weight: String,
    #[serde(skip)]
    pub weight_quarters: i64,
    pub kernel_dim: usize,
    pub explicit_dim: Option<usize>,
    pub escalated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutantTable {
    pub generators: String,
    pub ambient: String,
    pub max_weight: i64,
    pub rows: Vec<CommutantRow>,
}

impl CommutantTable {
    pub fn kernel_dims(&self) -> DimensionTable {
        let mut t = DimensionTable::default();
        for r in &self.rows {
            t.set(r.charge, r.weight_quarters, r.kernel_dim);
        }
        t
    }
}

fn sandwich_closes(kernel: &LinearSpan, explicit: &[FockVector]) -> Result<(bool, usize)> {
    let rank = span_rank(explicit, kernel.piece())?.rank();
    let inside = explicit.iter().all(|v| kernel.contains(v));
    Ok((inside && rank == kernel.rank(), rank))
}

fn piece_row(
    gens: &GeneratorSet,
    generators: &[FockVector],
    expected: Option<&dyn GradedSpace>,
    charge: i64,
    wq: i64,
    max_weight: i64,
    max_charge: i64,
) -> Result<CommutantRow> {
    let piece = GradedPiece::new(charge, wq);
    let kernel = mode_kernel(&nonnegative_modes(generators, &piece), &piece)?;
    let mut row = CommutantRow {
        charge,
        weight: fmt_scalar(&q(wq, 4)),
        weight_quarters: wq,
        kernel_dim: kernel.rank(),
        explicit_dim: None,
        escalated: false,
    };
    let Some(expected) = expected else {
        return Ok(row);
    };
    let explicit = expected.basis(charge, wq);
    let (closed, rank) = sandwich_closes(&kernel, &explicit)?;
    row.explicit_dim = Some(rank);
    if closed {
        return Ok(row);
    }

    // generator modes alone were not enough: add descendants of bounded weight
    let algebra = gens.generated_space();
    let mut states = generators.to_vec();
    for (c, w) in algebra.bidegrees(4 * max_weight, max_charge) {
        states.extend(algebra.basis(c, w));
    }
    let kernel = mode_kernel(&nonnegative_modes(&states, &piece), &piece)?;
    let (closed, rank) = sandwich_closes(&kernel, &explicit)?;
    row.kernel_dim = kernel.rank();
    row.escalated = true;
    if !closed {
        return Err(Error::SandwichMismatch {
            charge,
            weight: row.weight.clone(),
            explicit: rank,
            kernel: kernel.rank(),
        });
    }
    Ok(row)
}

/// Joint kernel dimensions of all non-negative generator modes on every
/// piece of `ambient` with weight ≤ `max_weight` and |charge| ≤ `max_charge`
/// (ϖ units). When the expected commutant is known, its explicit basis must
/// lie in each kernel with matching rank.
pub fn commutant_dimension_table(
    gens: &GeneratorSet,
    ambient: &dyn GradedSpace,
    max_weight: i64,
    max_charge: i64,
) -> Result<CommutantTable> {
    let generators = gens.generators();
    let expected = gens.expected_commutant(ambient.name());
    let bidegrees = ambient.bidegrees(4 * max_weight, max_charge);
    let rows: Result<Vec<_>> = bidegrees
        .par_iter()
        .map(|&(c, w)| piece_row(gens, &generators, expected.as_deref(), c, w, max_weight, max_charge))
        .collect();
    Ok(CommutantTable {
        generators: gens.name(),
        ambient: ambient.name().to_string(),
        max_weight,
        rows: rows?,
    })
}

/// The joint kernel of {e^α(n) : n ≥ 0} on one piece: C^{charge}_{weight}.
pub fn commutant_piece(charge: i64, weight_quarters: i64) -> Result<LinearSpan> {
    let piece = GradedPiece::new(charge, weight_quarters);
    mode_kernel(&nonnegative_modes(&[e_alpha()], &piece), &piece)
}

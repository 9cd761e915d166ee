//! The distinguished vectors: Φ (basis of W), Φ° (basis of W°), the
//! generators φₙ of C and the nested-mode vectors of 𝒞_new.

use std::fmt;

use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::scalar::{q, ExactScalar, HalfInt};
use crate::vertex::{rational_binomial, schur_creation_apply, state_field_mode, vertex_mode_apply};

/// Labels (n₁,…,n_r) of Φ and Φ°.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexTuple(Vec<u32>);

impl IndexTuple {
    /// A basis label: requires n₁ ≤ n₂ ≤ … ≤ n_r.
    pub fn basis(entries: Vec<u32>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invalid(format!("basis labels must be non-decreasing: {entries:?}")));
        }
        Ok(IndexTuple(entries))
    }

    /// Any label, e.g. Φ°(n+1, m) from the ∂-recurrence.
    pub fn arbitrary(entries: Vec<u32>) -> Self {
        IndexTuple(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

impl From<&[u32]> for IndexTuple {
    fn from(v: &[u32]) -> Self {
        IndexTuple(v.to_vec())
    }
}

/// Φ(n₁,…,n_r) = e^α(−n_r−2r+1)⋯e^α(−n₂−3)e^α(−n₁−1)1.
///
/// Weight r² + Σnᵢ, charge rα.
pub fn principal_vector(t: &IndexTuple) -> FockVector {
    let mut v = FockVector::vacuum();
    for (i, &n) in t.entries().iter().enumerate() {
        let i = i as i64 + 1;
        v = vertex_mode_apply(2, HalfInt::int(-(n as i64) - (2 * i - 1)), &v);
    }
    v
}

/// Φ°(n₁,…,n_r) = e^ϖ(−n_r−(r+1)/2)⋯e^ϖ(−n₂−3/2)e^ϖ(−n₁−1)1.
///
/// Weight r²/4 + Σnᵢ, charge rϖ.
pub fn generalized_principal_vector(t: &IndexTuple) -> FockVector {
    let mut v = FockVector::vacuum();
    for (i, &n) in t.entries().iter().enumerate() {
        let i = i as i64 + 1;
        v = vertex_mode_apply(1, HalfInt::from_doubled(-2 * n as i64 - (i + 1)), &v);
    }
    v
}

/// φₙ = Φ°(n,n) = e^ϖ(−n−3/2)e^ϖ(−n−1)1, of weight 2n+1 and charge α.
pub fn phi(n: u32) -> FockVector {
    generalized_principal_vector(&IndexTuple(vec![n, n]))
}

/// Σ_k (−1)^k C(1/2,k) S_{n+k}(ϖ)S_{n−k}(ϖ)e^α. Agrees with [`phi`];
/// without the alternating sign the sum does not.
pub fn phi_schur_sum(n: u32) -> FockVector {
    let mut out = FockVector::zero();
    let half = q(1, 2);
    for k in 0..=n {
        let inner = schur_creation_apply(n - k, 1, &FockVector::exp(2));
        let term = schur_creation_apply(n + k, 1, &inner);
        let mut c: ExactScalar = rational_binomial(&half, k);
        if k % 2 == 1 {
            c = -c;
        }
        out.add_scaled(&term, &c);
    }
    out
}

/// Φ°(n_{2r−1}, n_{2r}+r−1)(−r) ⋯ Φ°(n₃, n₄+1)(−2) Φ°(n₁,n₂)(−1) 1.
pub fn cnew_vector(t: &IndexTuple) -> Result<FockVector> {
    if !t.len().is_multiple_of(2) {
        return Err(Error::Invalid(format!("𝒞_new labels have even length, got {t}")));
    }
    let mut v = FockVector::vacuum();
    for (i, pair) in t.entries().chunks(2).enumerate() {
        let i = i as u32 + 1;
        let factor = generalized_principal_vector(&IndexTuple(vec![pair[0], pair[1] + i - 1]));
        v = state_field_mode(&factor, HalfInt::int(-(i as i64)), &v)?;
    }
    Ok(v)
}

/// Basis labels of length `len` whose entries sum to `sum`.
pub fn basis_tuples(len: usize, sum: u32) -> Vec<IndexTuple> {
    crate::combinatorics::nondecreasing_tuples(len, sum)
        .into_iter()
        .map(IndexTuple)
        .collect()
}

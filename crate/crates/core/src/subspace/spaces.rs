//! Named graded spaces with explicit bases, selected by name at runtime.

use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::graded::GradedPiece;
use crate::subspace::vectors::{basis_tuples, generalized_principal_vector, principal_vector};

/// A bigraded subspace of V_{A₁°} with an explicit basis on each piece.
///
/// Charges are in ϖ units and weights in quarters throughout.
pub trait GradedSpace: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Charges that can occur, limited to |charge| ≤ `max_charge`.
    fn charges(&self, max_charge: i64) -> Vec<i64>;

    /// Explicit basis of the (charge, weight) piece.
    fn basis(&self, charge: i64, weight_quarters: i64) -> Vec<FockVector>;

    /// Size of that basis, by counting labels.
    fn dim(&self, charge: i64, weight_quarters: i64) -> usize {
        self.basis(charge, weight_quarters).len()
    }

    /// Whether only integral weights occur.
    fn integral_weights(&self) -> bool {
        true
    }

    /// Nonempty bidegrees with weight ≤ `max_weight_quarters`, ordered by
    /// (weight, charge).
    fn bidegrees(&self, max_weight_quarters: i64, max_charge: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for c in self.charges(max_charge) {
            let mut w = c * c;
            while w <= max_weight_quarters {
                if self.dim(c, w) > 0 {
                    out.push((c, w));
                }
                w += 4;
            }
        }
        out.sort_by_key(|&(c, w)| (w, c));
        out
    }
}

/// Labels of length `len` at weight `len²/4 + N` (for Φ°) or `len² + N` (for Φ).
fn label_sum(weight_quarters: i64, base_quarters: i64) -> Option<u32> {
    let rest = weight_quarters - base_quarters;
    (rest >= 0 && rest % 4 == 0).then_some((rest / 4) as u32)
}

/// W = ⟨e^α⟩ with basis B = {Φ(n₁,…,n_r)}.
pub struct PrincipalW;

impl GradedSpace for PrincipalW {
    fn name(&self) -> &'static str {
        "W"
    }
    fn description(&self) -> &'static str {
        "principal subalgebra generated by e^alpha, basis Phi(n_1..n_r)"
    }
    fn charges(&self, max_charge: i64) -> Vec<i64> {
        (0..=max_charge).filter(|c| c % 2 == 0).collect()
    }
    fn basis(&self, charge: i64, weight_quarters: i64) -> Vec<FockVector> {
        if charge < 0 || charge % 2 != 0 {
            return Vec::new();
        }
        let r = (charge / 2) as usize;
        match label_sum(weight_quarters, charge * charge) {
            Some(n) => basis_tuples(r, n).iter().map(principal_vector).collect(),
            None => Vec::new(),
        }
    }
    fn dim(&self, charge: i64, weight_quarters: i64) -> usize {
        if charge < 0 || charge % 2 != 0 {
            return 0;
        }
        label_sum(weight_quarters, charge * charge)
            .map_or(0, |n| basis_tuples((charge / 2) as usize, n).len())
    }
}

/// W° = ⟨e^ϖ⟩ with basis B° = {Φ°(n₁,…,n_r)}.
pub struct PrincipalWcirc;

impl GradedSpace for PrincipalWcirc {
    fn name(&self) -> &'static str {
        "Wcirc"
    }
    fn description(&self) -> &'static str {
        "generalized principal subalgebra generated by e^varpi, basis Phi°(n_1..n_r)"
    }
    fn charges(&self, max_charge: i64) -> Vec<i64> {
        (0..=max_charge).collect()
    }
    fn basis(&self, charge: i64, weight_quarters: i64) -> Vec<FockVector> {
        if charge < 0 {
            return Vec::new();
        }
        match label_sum(weight_quarters, charge * charge) {
            Some(n) => basis_tuples(charge as usize, n)
                .iter()
                .map(generalized_principal_vector)
                .collect(),
            None => Vec::new(),
        }
    }
    fn dim(&self, charge: i64, weight_quarters: i64) -> usize {
        if charge < 0 {
            return 0;
        }
        label_sum(weight_quarters, charge * charge).map_or(0, |n| basis_tuples(charge as usize, n).len())
    }
    fn integral_weights(&self) -> bool {
        false
    }
}

/// C = W° ∩ V_{A₁} with basis 𝒞 = {Φ°(n₁,…,n_{2r})}.
pub struct CommutantC;

impl GradedSpace for CommutantC {
    fn name(&self) -> &'static str {
        "C"
    }
    fn description(&self) -> &'static str {
        "commutant of W in V_A1, basis Phi°(n_1..n_2r)"
    }
    fn charges(&self, max_charge: i64) -> Vec<i64> {
        (0..=max_charge).filter(|c| c % 2 == 0).collect()
    }
    fn basis(&self, charge: i64, weight_quarters: i64) -> Vec<FockVector> {
        if charge % 2 != 0 {
            return Vec::new();
        }
        PrincipalWcirc.basis(charge, weight_quarters)
    }
    fn dim(&self, charge: i64, weight_quarters: i64) -> usize {
        if charge % 2 != 0 {
            return 0;
        }
        PrincipalWcirc.dim(charge, weight_quarters)
    }
}

/// V_{A₁} = ⊕ M(1, rα), monomial basis.
pub struct LatticeVA1;

impl GradedSpace for LatticeVA1 {
    fn name(&self) -> &'static str {
        "VA1"
    }
    fn description(&self) -> &'static str {
        "A1 lattice vertex algebra, monomial basis"
    }
    fn charges(&self, max_charge: i64) -> Vec<i64> {
        (-max_charge..=max_charge).filter(|c| c % 2 == 0).collect()
    }
    fn basis(&self, charge: i64, weight_quarters: i64) -> Vec<FockVector> {
        if charge % 2 != 0 {
            return Vec::new();
        }
        monomial_basis(charge, weight_quarters)
    }
    fn dim(&self, charge: i64, weight_quarters: i64) -> usize {
        if charge % 2 != 0 {
            return 0;
        }
        GradedPiece::new(charge, weight_quarters).dim()
    }
}

/// V_{A₁°} = ⊕ M(1, rϖ), monomial basis.
pub struct LatticeVA1circ;

impl GradedSpace for LatticeVA1circ {
    fn name(&self) -> &'static str {
        "VA1circ"
    }
    fn description(&self) -> &'static str {
        "dual-lattice generalized vertex algebra, monomial basis"
    }
    fn charges(&self, max_charge: i64) -> Vec<i64> {
        (-max_charge..=max_charge).collect()
    }
    fn basis(&self, charge: i64, weight_quarters: i64) -> Vec<FockVector> {
        monomial_basis(charge, weight_quarters)
    }
    fn dim(&self, charge: i64, weight_quarters: i64) -> usize {
        GradedPiece::new(charge, weight_quarters).dim()
    }
    fn integral_weights(&self) -> bool {
        false
    }
}

fn monomial_basis(charge: i64, weight_quarters: i64) -> Vec<FockVector> {
    GradedPiece::new(charge, weight_quarters)
        .monomials()
        .iter()
        .cloned()
        .map(FockVector::from)
        .collect()
}

/// Every registered space.
pub fn registry() -> Vec<Box<dyn GradedSpace>> {
    vec![
        Box::new(PrincipalW),
        Box::new(PrincipalWcirc),
        Box::new(CommutantC),
        Box::new(LatticeVA1),
        Box::new(LatticeVA1circ),
    ]
}

pub fn lookup(name: &str) -> Result<Box<dyn GradedSpace>> {
    let all = registry();
    let known = all.iter().map(|s| s.name()).collect::<Vec<_>>().join(", ");
    all.into_iter()
        .find(|s| s.name().eq_ignore_ascii_case(name))
        .ok_or(Error::Unknown { kind: "space", name: name.to_string(), known })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_is_case_insensitive() {
        assert_eq!(lookup("va1").unwrap().name(), "VA1");
        assert!(matches!(lookup("nope"), Err(Error::Unknown { .. })));
    }

    #[test]
    fn dims_match_basis_lengths() {
        for space in registry() {
            for (c, w) in space.bidegrees(20, 4) {
                assert_eq!(space.dim(c, w), space.basis(c, w).len(), "{} {c} {w}", space.name());
            }
        }
    }

    #[test]
    fn c_at_charge_alpha_weight_three() {
        assert_eq!(CommutantC.dim(2, 12), 2);
        assert_eq!(CommutantC.dim(1, 1), 0);
        assert_eq!(PrincipalWcirc.dim(1, 1), 1);
    }
}

//! Fock monomials and sparse vectors in ⊕_r M(1, rϖ), with the Heisenberg action.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{q, qi, ExactScalar};

/// The word ϖ(−n₁)⋯ϖ(−n_s)e^{rϖ}, parts stored non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FockMonomial {
    charge: i64,
    parts: Vec<u32>,
}

impl FockMonomial {
    /// Builds a monomial from parts in any order. Zero parts are not
    /// oscillators and are rejected.
    pub fn new(charge: i64, mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "oscillator parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        FockMonomial { charge, parts }
    }

    /// e^{rϖ}.
    pub fn exp(charge: i64) -> Self {
        FockMonomial { charge, parts: Vec::new() }
    }

    pub fn vacuum() -> Self {
        Self::exp(0)
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn degree(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// 4·weight = r² + 4Σnᵢ.
    pub fn weight_quarters(&self) -> i64 {
        self.charge * self.charge + 4 * self.degree() as i64
    }

    pub fn weight(&self) -> ExactScalar {
        q(self.weight_quarters(), 4)
    }

    /// Inserts ϖ(−n).
    pub(crate) fn with_part(&self, n: u32) -> Self {
        let mut parts = self.parts.clone();
        let pos = parts.partition_point(|&p| p >= n);
        parts.insert(pos, n);
        FockMonomial { charge: self.charge, parts }
    }

    /// Removes one copy of ϖ(−n); the caller has checked it is present.
    pub(crate) fn without_part(&self, n: u32) -> Self {
        let mut parts = self.parts.clone();
        let pos = parts.iter().position(|&p| p == n).expect("part present");
        parts.remove(pos);
        FockMonomial { charge: self.charge, parts }
    }

    pub(crate) fn multiplicity(&self, n: u32) -> usize {
        self.parts.iter().filter(|&&p| p == n).count()
    }
}

/// Weight, then charge, then parts lexicographically ascending, so
/// ϖ(−1)² precedes ϖ(−2).
impl Ord for FockMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight_quarters()
            .cmp(&other.weight_quarters())
            .then(self.charge.cmp(&other.charge))
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for FockMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite linear combination of monomials. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FockVector {
    terms: BTreeMap<FockMonomial, ExactScalar>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        FockMonomial::vacuum().into()
    }

    /// e^{rϖ}.
    pub fn exp(charge: i64) -> Self {
        FockMonomial::exp(charge).into()
    }

    pub fn monomial(m: FockMonomial, c: ExactScalar) -> Self {
        let mut v = FockVector::zero();
        v.add_term(m, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockMonomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &FockMonomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn add_term(&mut self, m: FockMonomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// self += c·other
    pub fn add_scaled(&mut self, other: &FockVector, c: &ExactScalar) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &ExactScalar) -> FockVector {
        if c.is_zero() {
            return FockVector::zero();
        }
        FockVector {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// (charge, 4·weight) when every term shares one bidegree.
    pub fn bidegree(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let deg = (first.charge(), first.weight_quarters());
        it.all(|m| (m.charge(), m.weight_quarters()) == deg).then_some(deg)
    }

    /// Splits into bi-homogeneous components keyed by (charge, 4·weight).
    pub fn components(&self) -> BTreeMap<(i64, i64), FockVector> {
        let mut out: BTreeMap<(i64, i64), FockVector> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry((m.charge(), m.weight_quarters()))
                .or_default()
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Applies a linear map given on monomials.
    pub fn map_monomials<F>(&self, mut f: F) -> FockVector
    where
        F: FnMut(&FockMonomial) -> FockVector,
    {
        let mut out = FockVector::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&f(m), c);
        }
        out
    }

    pub fn try_map_monomials<F, E>(&self, mut f: F) -> Result<FockVector, E>
    where
        F: FnMut(&FockMonomial) -> Result<FockVector, E>,
    {
        let mut out = FockVector::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&f(m)?, c);
        }
        Ok(out)
    }
}

impl From<FockMonomial> for FockVector {
    fn from(m: FockMonomial) -> Self {
        FockVector::monomial(m, ExactScalar::one())
    }
}

impl Add<&FockVector> for &FockVector {
    type Output = FockVector;
    fn add(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &ExactScalar::one());
        out
    }
}

impl Sub<&FockVector> for &FockVector {
    type Output = FockVector;
    fn sub(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &-ExactScalar::one());
        out
    }
}

impl Neg for &FockVector {
    type Output = FockVector;
    fn neg(self) -> FockVector {
        self.scaled(&-ExactScalar::one())
    }
}

impl Add for FockVector {
    type Output = FockVector;
    fn add(mut self, rhs: FockVector) -> FockVector {
        self.add_scaled(&rhs, &ExactScalar::one());
        self
    }
}

impl Sub for FockVector {
    type Output = FockVector;
    fn sub(mut self, rhs: FockVector) -> FockVector {
        self.add_scaled(&rhs, &-ExactScalar::one());
        self
    }
}

impl Neg for FockVector {
    type Output = FockVector;
    fn neg(self) -> FockVector {
        -&self
    }
}

impl Mul<&FockVector> for &ExactScalar {
    type Output = FockVector;
    fn mul(self, rhs: &FockVector) -> FockVector {
        rhs.scaled(self)
    }
}

/// Sorts parts, merges like terms and drops zeros.
pub fn canonicalize<I>(raw: I) -> FockVector
where
    I: IntoIterator<Item = (FockMonomial, ExactScalar)>,
{
    let mut v = FockVector::zero();
    for (m, c) in raw {
        // FockMonomial::new already sorted the parts
        v.add_term(m, c);
    }
    v
}

/// ϖ(n) on a single monomial.
pub fn heisenberg_apply_monomial(n: i64, m: &FockMonomial) -> FockVector {
    match n.cmp(&0) {
        Ordering::Less => m.with_part((-n) as u32).into(),
        Ordering::Equal => FockVector::monomial(m.clone(), q(m.charge(), 2)),
        Ordering::Greater => {
            let k = m.multiplicity(n as u32);
            if k == 0 {
                FockVector::zero()
            } else {
                // [ϖ(n), ϖ(−n)] = n/2
                FockVector::monomial(m.without_part(n as u32), q(n * k as i64, 2))
            }
        }
    }
}

/// ϖ(n) acting on a vector.
pub fn heisenberg_apply(n: i64, v: &FockVector) -> FockVector {
    if n < 0 {
        // creation is injective on monomials, so no merging can occur
        return FockVector {
            terms: v
                .terms
                .iter()
                .map(|(m, c)| (m.with_part((-n) as u32), c.clone()))
                .collect(),
        };
    }
    v.map_monomials(|m| heisenberg_apply_monomial(n, m))
}

/// α(n) = 2ϖ(n).
pub fn alpha_apply(n: i64, v: &FockVector) -> FockVector {
    heisenberg_apply(n, v).scaled(&qi(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(charge: i64, parts: &[u32]) -> FockMonomial {
        FockMonomial::new(charge, parts.to_vec())
    }

    #[test]
    fn weights_and_charges() {
        assert_eq!(mono(2, &[]).weight(), qi(1));
        assert_eq!(mono(1, &[]).weight(), q(1, 4));
        assert_eq!(mono(1, &[2]).weight(), q(9, 4));
        assert_eq!(mono(-3, &[1, 1]).charge(), -3);
    }

    #[test]
    fn canonicalize_examples() {
        let m = mono(2, &[1]);
        assert!(canonicalize(vec![(m.clone(), q(1, 2)), (m.clone(), q(-1, 2))]).is_zero());
        let v = canonicalize(vec![(m.clone(), q(1, 3)), (m.clone(), q(1, 6))]);
        assert_eq!(v.coefficient(&m), q(1, 2));
        assert_eq!(v.len(), 1);
        let u = FockMonomial::new(0, vec![1, 3, 2]);
        assert_eq!(u.parts(), &[3, 2, 1]);
    }

    #[test]
    fn heisenberg_examples() {
        let v = heisenberg_apply(0, &FockVector::exp(3));
        assert_eq!(v, FockVector::monomial(mono(3, &[]), q(3, 2)));
        let v = heisenberg_apply(2, &mono(2, &[2]).into());
        assert_eq!(v, FockVector::exp(2));
        let v = heisenberg_apply(-1, &FockVector::exp(1));
        assert_eq!(v, mono(1, &[1]).into());
        assert!(heisenberg_apply(1, &FockVector::exp(4)).is_zero());
    }

    #[test]
    fn monomial_order() {
        let mut ms = vec![mono(2, &[1, 1]), mono(2, &[2]), mono(0, &[]), mono(-2, &[1, 1]), mono(1, &[])];
        ms.sort();
        assert_eq!(
            ms,
            vec![mono(0, &[]), mono(1, &[]), mono(-2, &[1, 1]), mono(2, &[1, 1]), mono(2, &[2])]
        );
    }
}

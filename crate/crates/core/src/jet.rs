//! Graded dimensions of jet algebras J∞(R) for weighted quotient rings
//! R = ℚ[x₁,…]/(relations), by linear algebra on the weight slices of the
//! differential ideal.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Rref;
use crate::qseries::QSeries;
use crate::scalar::{parse_scalar, qi, ExactScalar};

/// A commutative monomial: variable indices, sorted.
type Monomial = Vec<usize>;

/// Polynomial in the ring variables (no derivatives).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub terms: BTreeMap<Monomial, ExactScalar>,
}

/// Weighted variables plus relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialRingSpec {
    pub variables: Vec<(String, u32)>,
    pub relations: Vec<Polynomial>,
}

/// JSON form: {"vars": [["x1", 1], …], "rels": ["x1*x1", …]}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingSpecJson {
    pub vars: Vec<(String, u32)>,
    pub rels: Vec<String>,
}

impl DifferentialRingSpec {
    pub fn new(variables: Vec<(String, u32)>, relations: &[&str]) -> Result<Self> {
        let mut spec = DifferentialRingSpec { variables, relations: Vec::new() };
        for r in relations {
            let p = spec.parse_polynomial(r)?;
            spec.relation_weight(&p)?;
            spec.relations.push(p);
        }
        Ok(spec)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RingSpecJson =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("ring spec: {e}")))?;
        let rels: Vec<&str> = raw.rels.iter().map(String::as_str).collect();
        Self::new(raw.vars, &rels)
    }

    fn variable(&self, name: &str) -> Result<usize> {
        self.variables
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| Error::Invalid(format!("unknown variable {name:?}")))
    }

    /// Parses sums of terms `c*x1^2*x3`; `c` is an optional rational.
    pub fn parse_polynomial(&self, text: &str) -> Result<Polynomial> {
        let mut terms = BTreeMap::new();
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty polynomial".into() });
        }
        let mut chunks = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                chunks.push((start, &compact[start..i]));
                start = i;
            }
        }
        chunks.push((start, &compact[start..]));
        for (pos, chunk) in chunks {
            let (sign, body) = match chunk.strip_prefix('-') {
                Some(rest) => (-ExactScalar::one(), rest),
                None => (ExactScalar::one(), chunk.strip_prefix('+').unwrap_or(chunk)),
            };
            let mut coeff = sign;
            let mut mono = Vec::new();
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse { pos, msg: format!("empty factor in {chunk:?}") });
                }
                if let Some(c) = parse_scalar(factor) {
                    coeff *= c;
                    continue;
                }
                let (name, power) = match factor.split_once('^') {
                    Some((n, p)) => (
                        n,
                        p.parse::<usize>()
                            .map_err(|_| Error::Parse { pos, msg: format!("bad exponent in {factor:?}") })?,
                    ),
                    None => (factor, 1),
                };
                let v = self.variable(name)?;
                mono.extend(std::iter::repeat_n(v, power));
            }
            mono.sort_unstable();
            let e = terms.entry(mono).or_insert_with(ExactScalar::zero);
            *e += coeff;
        }
        terms.retain(|_, c: &mut ExactScalar| !c.is_zero());
        Ok(Polynomial { terms })
    }

    fn monomial_weight(&self, m: &[usize]) -> u32 {
        m.iter().map(|&v| self.variables[v].1).sum()
    }

    fn relation_weight(&self, p: &Polynomial) -> Result<u32> {
        let mut weights = p.terms.keys().map(|m| self.monomial_weight(m));
        let w = weights.next().ok_or_else(|| Error::Invalid("zero relation".into()))?;
        if weights.any(|x| x != w) {
            return Err(Error::Invalid("relations must be weighted-homogeneous".into()));
        }
        Ok(w)
    }
}

/// x_v^{(k)}, of weight wt(x_v) + k.
type JetVar = (usize, u32);
/// Sorted product of jet variables.
type JetMonomial = Vec<JetVar>;
type JetPoly = BTreeMap<JetMonomial, ExactScalar>;

fn jet_variables(spec: &DifferentialRingSpec, max_weight: u32) -> Vec<(JetVar, u32)> {
    let mut out = Vec::new();
    for (v, (_, w)) in spec.variables.iter().enumerate() {
        for k in 0..=max_weight.saturating_sub(*w) {
            if w + k <= max_weight {
                out.push(((v, k), w + k));
            }
        }
    }
    out
}

/// All jet monomials of exactly the given weight.
fn jet_monomials(spec: &DifferentialRingSpec, weight: u32) -> Vec<JetMonomial> {
    let vars = jet_variables(spec, weight);
    let mut out = Vec::new();
    fn go(vars: &[(JetVar, u32)], from: usize, left: u32, acc: &mut JetMonomial, out: &mut Vec<JetMonomial>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in from..vars.len() {
            let (var, w) = vars[i];
            if w <= left {
                acc.push(var);
                go(vars, i, left - w, acc, out);
                acc.pop();
            }
        }
    }
    go(&vars, 0, weight, &mut Vec::new(), &mut out);
    for m in &mut out {
        m.sort_unstable();
    }
    out.sort();
    out
}

/// ∂ on jet polynomials, by the Leibniz rule.
fn derive(p: &JetPoly) -> JetPoly {
    let mut out = JetPoly::new();
    for (m, c) in p {
        for i in 0..m.len() {
            if i > 0 && m[i] == m[i - 1] {
                continue;
            }
            let mult = m.iter().filter(|&&x| x == m[i]).count();
            let mut n = m.clone();
            n[i].1 += 1;
            n.sort_unstable();
            *out.entry(n).or_insert_with(ExactScalar::zero) += c * qi(mult as i64);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn lift(p: &Polynomial) -> JetPoly {
    p.terms
        .iter()
        .map(|(m, c)| (m.iter().map(|&v| (v, 0)).collect(), c.clone()))
        .collect()
}

/// dim of the weight-`weight` slice of J∞(R): monomials minus the rank of
/// {monomial·∂^k(relation)}.
pub fn jet_dimension(spec: &DifferentialRingSpec, weight: u32) -> Result<usize> {
    let monomials = jet_monomials(spec, weight);
    let index: BTreeMap<&JetMonomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rref = Rref::new(monomials.len());
    for rel in &spec.relations {
        let w = spec.relation_weight(rel)?;
        if w > weight {
            continue;
        }
        let mut derived = lift(rel);
        for k in 0..=(weight - w) {
            for m in jet_monomials(spec, weight - w - k) {
                let mut row = vec![ExactScalar::zero(); monomials.len()];
                for (rm, c) in &derived {
                    let mut prod = rm.clone();
                    prod.extend(m.iter().copied());
                    prod.sort_unstable();
                    row[index[&prod]] += c;
                }
                rref.insert(row);
            }
            derived = derive(&derived);
        }
    }
    Ok(monomials.len() - rref.rank())
}

/// Σ_d dim J∞(R)_d q^d up to `order`.
pub fn jet_character(spec: &DifferentialRingSpec, order: u32) -> Result<QSeries> {
    let mut s = QSeries::zero(order as i64);
    for d in 0..=order {
        s.add_term(0, d as i64, BigInt::from(jet_dimension(spec, d)?));
    }
    Ok(s)
}

/// A named ring whose presentation may depend on the weight bound.
pub trait JetRing: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn spec(&self, max_weight: u32) -> DifferentialRingSpec;
}

/// R_W = ℚ[x]/(x²), x of weight 1.
pub struct RingW;

impl JetRing for RingW {
    fn name(&self) -> &'static str {
        "RW"
    }
    fn description(&self) -> &'static str {
        "C[x]/(x^2), wt x = 1"
    }
    fn spec(&self, _max_weight: u32) -> DifferentialRingSpec {
        DifferentialRingSpec::new(vec![("x".into(), 1)], &["x*x"]).expect("valid spec")
    }
}

/// R_C = ℚ[x₁,x₂,…]/(x_ix_j), x_i of weight 2i−1, cut at the weight bound.
pub struct RingC;

impl JetRing for RingC {
    fn name(&self) -> &'static str {
        "RC"
    }
    fn description(&self) -> &'static str {
        "C[x_1, x_2, ...]/(x_i x_j), wt x_i = 2i - 1"
    }
    fn spec(&self, max_weight: u32) -> DifferentialRingSpec {
        let top = max_weight.div_ceil(2).max(1);
        let vars: Vec<(String, u32)> = (1..=top).map(|i| (format!("x{i}"), 2 * i - 1)).collect();
        let mut rels = Vec::new();
        for i in 1..=top {
            for j in i..=top {
                if (2 * i - 1) + (2 * j - 1) <= max_weight {
                    rels.push(format!("x{i}*x{j}"));
                }
            }
        }
        let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
        DifferentialRingSpec::new(vars, &rels).expect("valid spec")
    }
}

pub fn registry() -> Vec<Box<dyn JetRing>> {
    vec![Box::new(RingW), Box::new(RingC)]
}

pub fn lookup(name: &str) -> Result<Box<dyn JetRing>> {
    let all = registry();
    let known = all.iter().map(|r| r.name()).collect::<Vec<_>>().join(", ");
    all.into_iter()
        .find(|r| r.name().eq_ignore_ascii_case(name))
        .ok_or(Error::Unknown { kind: "ring", name: name.to_string(), known })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::partition_count;

    #[test]
    fn rw_and_rc_characters() {
        assert_eq!(jet_character(&RingW.spec(8), 8).unwrap().small_coefficients(), vec![1, 1, 1, 1, 2, 2, 3, 3, 4]);
        assert_eq!(jet_character(&RingC.spec(5), 5).unwrap().small_coefficients(), vec![1, 1, 1, 2, 3, 5]);
    }

    #[test]
    fn free_ring_counts_weighted_monomials() {
        let spec = DifferentialRingSpec::new(vec![("y".into(), 1)], &[]).unwrap();
        for d in 0..8 {
            assert_eq!(jet_dimension(&spec, d).unwrap() as u64, partition_count(d));
        }
        let spec = DifferentialRingSpec::new(vec![("a".into(), 1), ("b".into(), 2)], &["a*b"]).unwrap();
        assert_eq!(jet_dimension(&spec, 0).unwrap(), 1);
    }

    #[test]
    fn parsing_and_json() {
        let spec = DifferentialRingSpec::from_json(r#"{"vars": [["x1",1],["x2",3]], "rels": ["x1*x1", "2*x1^4 - 1/2*x1*x2"]}"#).unwrap();
        assert_eq!(spec.relations.len(), 2);
        assert_eq!(spec.relations[1].terms.len(), 2);
        assert!(DifferentialRingSpec::from_json(r#"{"vars": [["x",1]], "rels": ["x*y"]}"#).is_err());
        assert!(DifferentialRingSpec::from_json(r#"{"vars": [["x",1],["y",2]], "rels": ["x + y"]}"#).is_err());
        assert!(lookup("rc").is_ok());
        assert!(lookup("rq").is_err());
    }

    #[test]
    fn derivation_is_leibniz() {
        let p: JetPoly = [(vec![(0, 0), (0, 0)], qi(1))].into_iter().collect();
        let d = derive(&p);
        assert_eq!(d, [(vec![(0, 0), (0, 1)], qi(2))].into_iter().collect());
    }
}

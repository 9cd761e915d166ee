//! Vertex-operator modes on ⊕_r M(1, rϖ).
//!
//! `e^{bϖ}(z) = E⁻(z) E⁺(z) z^{bϖ(0)} e_{bϖ}` with
//! `E^∓(z) = exp(∓Σ_{n≷0} bϖ(n) z^{−n}/n)` and the trivial cocycle
//! `e_β e^λ = e^{β+λ}`. General states act through the associativity
//! formula, peeling one oscillator at a time.

use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::fock::{heisenberg_apply, heisenberg_apply_monomial, FockMonomial, FockVector};
use crate::scalar::{parity_sign, q, qi, ExactScalar, HalfInt};

/// Extra terms allowed past the output weight before a j-sum is declared
/// runaway.
const SAFETY_MARGIN: i64 = 16;

/// m(m−1)⋯(m−j+1)/j!
pub fn rational_binomial(m: &ExactScalar, j: u32) -> ExactScalar {
    let mut acc = ExactScalar::one();
    for i in 0..j {
        acc *= m - qi(i as i64);
        acc /= qi(i as i64 + 1);
    }
    acc
}

fn int_binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

type SchurTerms = Arc<Vec<(Vec<u32>, ExactScalar)>>;

static SCHUR_TABLE: Lazy<DashMap<(u32, i64), SchurTerms>> = Lazy::new(DashMap::new);

/// Terms of S_k(bϖ): Σ_{μ⊢k} Π_i (bϖ(−i))^{m_i}/(m_i!·i^{m_i}).
fn schur_terms(k: u32, b: i64) -> SchurTerms {
    if let Some(t) = SCHUR_TABLE.get(&(k, b)) {
        return t.clone();
    }
    let terms: Vec<_> = crate::combinatorics::partitions(k)
        .into_iter()
        .map(|mu| {
            let mut c = ExactScalar::one();
            let mut i = 0;
            while i < mu.len() {
                let part = mu[i];
                let mult = mu[i..].iter().take_while(|&&p| p == part).count();
                for r in 1..=mult {
                    c *= q(b, part as i64 * r as i64);
                }
                i += mult;
            }
            (mu, c)
        })
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let terms = Arc::new(terms);
    SCHUR_TABLE.insert((k, b), terms.clone());
    terms
}

/// Applies the elementary Schur polynomial S_k(bϖ) in the creation operators.
pub fn schur_creation_apply(k: u32, b: i64, v: &FockVector) -> FockVector {
    let terms = schur_terms(k, b);
    let mut out = FockVector::zero();
    for (m, c) in v.terms() {
        for (mu, s) in terms.iter() {
            let mut parts = m.parts().to_vec();
            parts.extend_from_slice(mu);
            out.add_term(FockMonomial::new(m.charge(), parts), c * s);
        }
    }
    out
}

/// e^{bϖ}(m) on one monomial.
pub fn vertex_mode_monomial(b: i64, m: HalfInt, v: &FockMonomial) -> FockVector {
    let c = v.charge();
    // 2·(bϖ, cϖ) = bc; the mode must lie in −(β,γ) + ℤ
    if (m.doubled() + b * c).rem_euclid(2) != 0 {
        return FockVector::zero();
    }
    let mut out = FockVector::zero();
    if b == 0 {
        // e^0(z) is the identity field
        if m == HalfInt::int(-1) {
            out.add_term(v.clone(), ExactScalar::one());
        }
        return out;
    }

    // distinct parts with multiplicities
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &p in v.parts() {
        match groups.last_mut() {
            Some((n, a)) if *n == p => *a += 1,
            _ => groups.push((p, 1)),
        }
    }

    // E⁺ on Π ϖ(−n)^{a_n}: removes s_n copies with factor C(a_n, s_n)(−b/2)^{s_n}
    // and lowers the z-degree by l = Σ n·s_n.
    let minus_half_b = q(-b, 2);
    let mut choice = vec![0usize; groups.len()];
    loop {
        let mut coeff = ExactScalar::one();
        let mut l: i64 = 0;
        let mut parts = Vec::new();
        for (&(n, a), &s) in groups.iter().zip(&choice) {
            coeff *= ExactScalar::from_integer(int_binomial(a as u64, s as u64));
            for _ in 0..s {
                coeff *= &minus_half_b;
            }
            l += n as i64 * s as i64;
            parts.extend(std::iter::repeat_n(n, a - s));
        }
        // z^{bc/2 − l + k} = z^{−m−1}  ⇒  2k = 2l − bc − 2m − 2
        let k2 = 2 * l - b * c - m.doubled() - 2;
        if k2 >= 0 {
            debug_assert!(k2 % 2 == 0);
            let rest = FockMonomial::new(c + b, parts);
            let created = schur_creation_apply((k2 / 2) as u32, b, &rest.into());
            out.add_scaled(&created, &coeff);
        }

        // next choice vector
        let mut idx = 0;
        loop {
            if idx == groups.len() {
                return out;
            }
            if choice[idx] < groups[idx].1 {
                choice[idx] += 1;
                break;
            }
            choice[idx] = 0;
            idx += 1;
        }
    }
}

/// e^{bϖ}(m) on a vector. Wrong-coset monomials contribute zero.
pub fn vertex_mode_apply(b: i64, m: HalfInt, v: &FockVector) -> FockVector {
    v.map_monomials(|mono| vertex_mode_monomial(b, m, mono))
}

type MemoKey = (FockMonomial, HalfInt, FockMonomial);

static MODE_MEMO: Lazy<DashMap<MemoKey, Arc<FockVector>>> = Lazy::new(DashMap::new);

/// Drops every memoized mode product.
pub fn clear_memo() {
    MODE_MEMO.clear();
}

pub fn memo_len() -> usize {
    MODE_MEMO.len()
}

/// `4·wt(u(m)v) ≥ charge²` is necessary for a nonzero product.
fn output_can_be_nonzero(u: &FockMonomial, m: HalfInt, v: &FockMonomial) -> bool {
    let out_charge = u.charge() + v.charge();
    let wq = u.weight_quarters() + v.weight_quarters() - 2 * m.doubled() - 4;
    wq >= out_charge * out_charge
}

fn mode_monomial(u: &FockMonomial, m: HalfInt, v: &FockMonomial, memo: bool) -> Result<Arc<FockVector>> {
    if (m.doubled() + u.charge() * v.charge()).rem_euclid(2) != 0 || !output_can_be_nonzero(u, m, v) {
        return Ok(Arc::new(FockVector::zero()));
    }
    if u.parts().is_empty() {
        return Ok(Arc::new(vertex_mode_monomial(u.charge(), m, v)));
    }
    let key = (u.clone(), m, v.clone());
    if memo {
        if let Some(hit) = MODE_MEMO.get(&key) {
            return Ok(hit.clone());
        }
    }
    let result = Arc::new(peel(u, m, v, memo)?);
    if memo {
        MODE_MEMO.insert(key, result.clone());
    }
    Ok(result)
}

/// (ϖ(−n)u')(k)d = Σ_j C(n+j−1, j)[ϖ(−n−j)·u'(k+j)d − (−1)ⁿ u'(k−n−j)·ϖ(j)d]
fn peel(u: &FockMonomial, m: HalfInt, v: &FockMonomial, memo: bool) -> Result<FockVector> {
    let n = u.parts()[0];
    let rest = u.without_part(n);
    let out_weight_quarters = u.weight_quarters() + v.weight_quarters() - 2 * m.doubled() - 4;
    let cap = out_weight_quarters / 4 + SAFETY_MARGIN;
    let mut out = FockVector::zero();

    let mut j: i64 = 0;
    while output_can_be_nonzero(&rest, m + j, v) {
        if j > cap {
            return Err(Error::InternalBound(format!(
                "creation sum for u = {:?}, mode {} on {:?} passed {} terms",
                u.parts(),
                m,
                v.parts(),
                cap
            )));
        }
        let inner = mode_monomial(&rest, m + j, v, memo)?;
        if !inner.is_zero() {
            let c = ExactScalar::from_integer(int_binomial(n as u64 + j as u64 - 1, j as u64));
            out.add_scaled(&heisenberg_apply(-(n as i64) - j, &inner), &c);
        }
        j += 1;
    }

    let sign = -parity_sign(n as i64);
    let top = v.parts().first().copied().unwrap_or(0) as i64;
    for j in 0..=top {
        let lowered = heisenberg_apply_monomial(j, v);
        if lowered.is_zero() {
            continue;
        }
        let c = ExactScalar::from_integer(int_binomial(n as u64 + j as u64 - 1, j as u64) * sign);
        let mode = m - (n as i64) - j;
        for (w, x) in lowered.terms() {
            let inner = mode_monomial(&rest, mode, w, memo)?;
            out.add_scaled(&inner, &(&c * x));
        }
    }
    Ok(out)
}

/// u(m)v for arbitrary states, bilinear in u and v.
pub fn state_field_mode(u: &FockVector, m: HalfInt, v: &FockVector) -> Result<FockVector> {
    mode_bilinear(u, m, v, true)
}

/// Same as [`state_field_mode`] but bypasses the shared memo table.
pub fn state_field_mode_unmemoized(u: &FockVector, m: HalfInt, v: &FockVector) -> Result<FockVector> {
    mode_bilinear(u, m, v, false)
}

fn mode_bilinear(u: &FockVector, m: HalfInt, v: &FockVector, memo: bool) -> Result<FockVector> {
    let mut out = FockVector::zero();
    for (um, uc) in u.terms() {
        for (vm, vc) in v.terms() {
            let r = mode_monomial(um, m, vm, memo)?;
            if !r.is_zero() {
                out.add_scaled(&r, &(uc * vc));
            }
        }
    }
    Ok(out)
}

/// ∂ on one monomial: ∂(ϖ(−n)u) = nϖ(−n−1)u + ϖ(−n)∂u, ∂e^{rϖ} = rϖ(−1)e^{rϖ}.
fn derivation_monomial(v: &FockMonomial) -> FockVector {
    let mut out = FockVector::zero();
    let parts = v.parts();
    let mut i = 0;
    while i < parts.len() {
        let n = parts[i];
        let k = parts[i..].iter().take_while(|&&p| p == n).count();
        let raised = v.without_part(n).with_part(n + 1);
        out.add_term(raised, qi(n as i64 * k as i64));
        i += k;
    }
    if v.charge() != 0 {
        out.add_term(v.with_part(1), qi(v.charge()));
    }
    out
}

/// The translation operator ∂a = a(−2)1.
pub fn derivation(v: &FockVector) -> FockVector {
    v.map_monomials(derivation_monomial)
}

/// ∂ⁿ v
pub fn derivation_pow(v: &FockVector, n: u32) -> FockVector {
    (0..n).fold(v.clone(), |acc, _| derivation(&acc))
}

/// ω = ¼α(−1)²1 = ϖ(−1)²1.
pub fn omega() -> FockVector {
    FockMonomial::new(0, vec![1, 1]).into()
}

/// L_n = ω(n+1).
pub fn virasoro_mode(n: i64, v: &FockVector) -> Result<FockVector> {
    state_field_mode(&omega(), HalfInt::int(n + 1), v)
}

/// e^α.
pub fn e_alpha() -> FockVector {
    FockVector::exp(2)
}

/// e^ϖ.
pub fn e_varpi() -> FockVector {
    FockVector::exp(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse;

    fn h(d: i64) -> HalfInt {
        HalfInt::from_doubled(d)
    }

    #[test]
    fn binomials() {
        assert_eq!(rational_binomial(&q(1, 2), 1), q(1, 2));
        assert_eq!(rational_binomial(&q(-3, 2), 2), q(15, 8));
        assert_eq!(rational_binomial(&qi(5), 2), qi(10));
        assert_eq!(rational_binomial(&q(7, 3), 0), qi(1));
        assert_eq!(rational_binomial(&qi(3), 5), qi(0));
    }

    #[test]
    fn schur_examples() {
        let v = FockVector::vacuum();
        assert_eq!(schur_creation_apply(0, 7, &v), v);
        assert_eq!(
            schur_creation_apply(2, 1, &v),
            parse("1/2*w(-1)^2*e[0] + 1/2*w(-2)*e[0]").unwrap()
        );
        assert_eq!(schur_creation_apply(1, 2, &v), parse("2*w(-1)*e[0]").unwrap());
    }

    #[test]
    fn vertex_mode_examples() {
        assert_eq!(vertex_mode_apply(1, h(-3), &e_varpi()), FockVector::exp(2));
        assert!(vertex_mode_apply(1, h(-1), &e_varpi()).is_zero());
        assert_eq!(
            vertex_mode_apply(2, h(0), &FockVector::exp(-2)),
            parse("2*w(-1)*e[0]").unwrap()
        );
        let v = parse("w(-1)*e[1]").unwrap();
        assert_eq!(
            vertex_mode_apply(1, h(-5), &v),
            parse("3/4*w(-1)^2*e[2] - 1/4*w(-2)*e[2]").unwrap()
        );
        // wrong coset
        assert!(vertex_mode_apply(1, h(-2), &e_varpi()).is_zero());
    }

    #[test]
    fn base_case_consistency() {
        let v = parse("w(-2)*w(-1)*e[-1] + 3*e[3]").unwrap();
        for d in -12..6 {
            assert_eq!(
                state_field_mode(&e_alpha(), h(d), &v).unwrap(),
                vertex_mode_apply(2, h(d), &v)
            );
        }
    }

    #[test]
    fn virasoro_examples() {
        assert_eq!(virasoro_mode(0, &e_varpi()).unwrap(), e_varpi().scaled(&q(1, 4)));
        assert_eq!(state_field_mode(&omega(), HalfInt::int(1), &e_alpha()).unwrap(), e_alpha());
        assert!(virasoro_mode(1, &e_alpha()).unwrap().is_zero());
        let v = parse("2*w(-2)*w(-1)*e[3] - w(-1)*e[-2]").unwrap();
        assert_eq!(virasoro_mode(-1, &v).unwrap(), derivation(&v));
    }

    #[test]
    fn derivation_examples() {
        assert!(derivation(&FockVector::vacuum()).is_zero());
        assert_eq!(derivation(&e_varpi()), parse("w(-1)*e[1]").unwrap());
        let v = parse("w(-3)*w(-1)^2*e[-1] + 1/2*w(-2)*e[4]").unwrap();
        assert_eq!(
            derivation(&v),
            state_field_mode(&v, HalfInt::int(-2), &FockVector::vacuum()).unwrap()
        );
    }

    #[test]
    fn memo_agrees_with_direct() {
        let u = parse("w(-2)*w(-1)*e[1] - 1/3*w(-1)*e[2]").unwrap();
        let v = parse("w(-1)^2*e[1] + e[-1]").unwrap();
        for d in -9..5 {
            let m = h(d);
            assert_eq!(
                state_field_mode(&u, m, &v).unwrap(),
                state_field_mode_unmemoized(&u, m, &v).unwrap()
            );
        }
    }
}

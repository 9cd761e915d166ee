//! The Borcherds identity on bi-homogeneous triples.
//!
//! Σ_j C(m,j)(b(n+j)c)(m+k−j)d
//!   = Σ_j (−1)^j C(n,j)[b(m+n−j)c(k+j)d − (−1)^{(β,γ)+n} c(n+k−j)b(m+j)d]

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{FockMonomial, FockVector};
use crate::grammar::{render, Oscillator};
use crate::graded::monomials_up_to;
use crate::report::IdentityReport;
use crate::scalar::{parity_sign, ExactScalar, HalfInt};
use crate::vertex::{rational_binomial, state_field_mode};

pub const IDENTITY: &str = "borcherds";

/// (charge, 4·weight) of a bi-homogeneous vector; zero counts as (0, 0).
fn bidegree(v: &FockVector) -> Result<(i64, i64)> {
    if v.is_zero() {
        return Ok((0, 0));
    }
    v.bidegree()
        .ok_or_else(|| Error::Invalid(format!("not bi-homogeneous: {}", render(v, Oscillator::Varpi))))
}

/// Whether u(mode)v can be nonzero for u, v of the given bidegrees.
fn live(u: (i64, i64), mode_doubled: i64, v: (i64, i64)) -> bool {
    let c = u.0 + v.0;
    u.1 + v.1 - 2 * mode_doubled - 4 >= c * c
}

thread_local! {
    static BINOMIALS: std::cell::RefCell<HashMap<(i64, u32), ExactScalar>> = std::cell::RefCell::new(HashMap::new());
}

fn signed_binomial(top: HalfInt, j: u32, alternate: bool) -> ExactScalar {
    let c = BINOMIALS.with(|cache| {
        cache
            .borrow_mut()
            .entry((top.doubled(), j))
            .or_insert_with(|| rational_binomial(&top.value(), j))
            .clone()
    });
    if alternate && j % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Evaluator for one triple. Every summand depends only on an inner mode
/// and the doubled index sum S = n+m+k, so summands are cached per triple:
/// (b(n')c)(S−n')d, b(S−k')(c(k')d) and c(S−m')(b(m')d).
struct TripleEval<'a> {
    b: &'a FockVector,
    c: &'a FockVector,
    d: &'a FockVector,
    deg: [(i64, i64); 3],
    left: HashMap<(i64, i64), FockVector>,
    right_first: HashMap<(i64, i64), FockVector>,
    right_second: HashMap<(i64, i64), FockVector>,
}

impl<'a> TripleEval<'a> {
    fn new(b: &'a FockVector, c: &'a FockVector, d: &'a FockVector) -> Result<Self> {
        Ok(TripleEval {
            b,
            c,
            d,
            deg: [bidegree(b)?, bidegree(c)?, bidegree(d)?],
            left: HashMap::new(),
            right_first: HashMap::new(),
            right_second: HashMap::new(),
        })
    }

    fn admissible(&self, n: HalfInt, m: HalfInt, k: HalfInt) -> bool {
        let [bb, bc, bd] = self.deg;
        let ok = |x: HalfInt, p: i64, q: i64| (x.doubled() + p * q).rem_euclid(2) == 0;
        ok(n, bb.0, bc.0) && ok(k, bc.0, bd.0) && ok(m, bb.0, bd.0)
    }

    fn summand(
        cache: &mut HashMap<(i64, i64), FockVector>,
        key: (i64, i64),
        f: impl FnOnce() -> Result<FockVector>,
    ) -> Result<&FockVector> {
        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(key) {
            let v = f()?;
            e.insert(v);
        }
        Ok(&cache[&key])
    }

    fn sides(&mut self, n: HalfInt, m: HalfInt, k: HalfInt) -> Result<Option<(FockVector, FockVector)>> {
        if !self.admissible(n, m, k) {
            return Ok(None);
        }
        let [bb, bc, bd] = self.deg;
        let total = n + m + k;
        let (b, c, d) = (self.b, self.c, self.d);

        let mut left = FockVector::zero();
        let mut j = 0u32;
        while live(bb, (n + j as i64).doubled(), bc) {
            let inner_mode = n + j as i64;
            let term = Self::summand(&mut self.left, (inner_mode.doubled(), total.doubled()), || {
                state_field_mode(&state_field_mode(b, inner_mode, c)?, total - inner_mode, d)
            })?;
            left.add_scaled(term, &signed_binomial(m, j, false));
            j += 1;
        }

        let mut right = FockVector::zero();
        let mut j = 0u32;
        while live(bc, (k + j as i64).doubled(), bd) {
            let inner_mode = k + j as i64;
            let term = Self::summand(&mut self.right_first, (inner_mode.doubled(), total.doubled()), || {
                state_field_mode(b, total - inner_mode, &state_field_mode(c, inner_mode, d)?)
            })?;
            right.add_scaled(term, &signed_binomial(n, j, true));
            j += 1;
        }
        let braid = parity_sign((bb.0 * bc.0 + n.doubled()) / 2);
        let mut j = 0u32;
        while live(bb, (m + j as i64).doubled(), bd) {
            let inner_mode = m + j as i64;
            let term = Self::summand(&mut self.right_second, (inner_mode.doubled(), total.doubled()), || {
                state_field_mode(c, total - inner_mode, &state_field_mode(b, inner_mode, d)?)
            })?;
            let mut coeff = signed_binomial(n, j, true);
            if braid > 0 {
                coeff = -coeff;
            }
            right.add_scaled(term, &coeff);
            j += 1;
        }
        Ok(Some((left, right)))
    }
}

/// Both sides of the identity, or `None` when a mode lies outside its coset.
pub fn borcherds_sides(
    b: &FockVector,
    c: &FockVector,
    d: &FockVector,
    n: HalfInt,
    m: HalfInt,
    k: HalfInt,
) -> Result<Option<(FockVector, FockVector)>> {
    TripleEval::new(b, c, d)?.sides(n, m, k)
}

/// One instance of the identity.
pub fn check_borcherds(
    b: &FockVector,
    c: &FockVector,
    d: &FockVector,
    n: HalfInt,
    m: HalfInt,
    k: HalfInt,
) -> Result<IdentityReport> {
    let mut report = IdentityReport::new(IDENTITY);
    record_instance(&mut report, &mut TripleEval::new(b, c, d)?, (n, m, k))?;
    Ok(report)
}

fn record_instance(
    report: &mut IdentityReport,
    eval: &mut TripleEval<'_>,
    (n, m, k): (HalfInt, HalfInt, HalfInt),
) -> Result<()> {
    let (b, c, d) = (eval.b, eval.c, eval.d);
    match eval.sides(n, m, k)? {
        None => report.skip(),
        Some((l, r)) => report.record(
            l == r,
            || {
                format!(
                    "b={}, c={}, d={}, n={n}, m={m}, k={k}",
                    render(b, Oscillator::Varpi),
                    render(c, Oscillator::Varpi),
                    render(d, Oscillator::Varpi)
                )
            },
            || render(&l, Oscillator::Varpi),
            || render(&r, Oscillator::Varpi),
        ),
    }
    Ok(())
}

/// The mode window for one triple of bidegrees.
///
/// Each of n, k, m runs up to two past the largest value for which the
/// corresponding single product b(n)c, c(k)d, b(m)d can be nonzero; the
/// output weight wt(b)+wt(c)+wt(d)−n−m−k−2 runs from two below its
/// minimum up to `max_output_quarters/4`. With `admissible_only`, modes
/// outside their cosets are left out.
pub fn mode_window(
    b: (i64, i64),
    c: (i64, i64),
    d: (i64, i64),
    max_output_quarters: i64,
    admissible_only: bool,
) -> Vec<(HalfInt, HalfInt, HalfInt)> {
    // largest doubled mode with a possibly nonzero product, plus 4 (= 2 in value)
    let top = |u: (i64, i64), v: (i64, i64)| {
        let s = u.0 + v.0;
        (u.1 + v.1 - 4 - s * s).div_euclid(2) + 4
    };
    let (n_top, k_top, m_top) = (top(b, c), top(c, d), top(b, d));
    let total = b.1 + c.1 + d.1;
    let charge = b.0 + c.0 + d.0;
    // W_out = total − 2S − 8 with S the doubled index sum
    let s_max = (total - charge * charge).div_euclid(2);
    let s_min = (total - 8 - max_output_quarters + 1).div_euclid(2);
    let parity_ok = |x: i64, p: i64, q: i64| !admissible_only || (x + p * q).rem_euclid(2) == 0;

    let mut out = Vec::new();
    for dn in (s_min - m_top - k_top)..=n_top {
        if !parity_ok(dn, b.0, c.0) {
            continue;
        }
        for dk in (s_min - dn - m_top)..=k_top {
            if !parity_ok(dk, c.0, d.0) {
                continue;
            }
            let lo = s_min - dn - dk;
            let hi = m_top.min(s_max - dn - dk);
            for dm in lo..=hi {
                if parity_ok(dm, b.0, d.0) {
                    out.push((HalfInt::from_doubled(dn), HalfInt::from_doubled(dm), HalfInt::from_doubled(dk)));
                }
            }
        }
    }
    out
}

fn triple_bidegrees(t: &[&FockMonomial; 3]) -> [(i64, i64); 3] {
    t.map(|m| (m.charge(), m.weight_quarters()))
}

/// All monomial triples with total weight ≤ `max_weight`, every admissible
/// mode triple of the window.
pub fn exhaustive(max_weight: u32) -> Result<IdentityReport> {
    let start = std::time::Instant::now();
    let bound = 4 * max_weight as i64;
    let monos = monomials_up_to(bound, false);
    let mut triples = Vec::new();
    for b in &monos {
        for c in &monos {
            if b.weight_quarters() + c.weight_quarters() > bound {
                continue;
            }
            for d in &monos {
                if b.weight_quarters() + c.weight_quarters() + d.weight_quarters() <= bound {
                    triples.push([b, c, d]);
                }
            }
        }
    }
    let parts: Result<Vec<IdentityReport>> = triples
        .par_iter()
        .map(|t| {
            let mut report = IdentityReport::new(IDENTITY);
            let [bb, bc, bd] = triple_bidegrees(t);
            let [b, c, d] = t.map(|m| FockVector::from(m.clone()));
            let mut eval = TripleEval::new(&b, &c, &d)?;
            for modes in mode_window(bb, bc, bd, bound, true) {
                record_instance(&mut report, &mut eval, modes)?;
            }
            Ok(report)
        })
        .collect();
    let mut report = IdentityReport::new(IDENTITY);
    for p in parts? {
        report.merge(p);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// `samples` applicable instances drawn with a seeded ChaCha stream: a
/// random monomial triple of total weight ≤ `max_weight`, then a random
/// mode triple of its window. Modes are drawn regardless of coset; draws in
/// the wrong coset are counted as inapplicable.
pub fn sampled(max_weight: u32, samples: usize, seed: u64) -> Result<IdentityReport> {
    let start = std::time::Instant::now();
    let bound = 4 * max_weight as i64;
    let monos = monomials_up_to(bound, false);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws = Vec::with_capacity(samples);
    let mut inapplicable = 0;
    while draws.len() < samples {
        let b = monos.choose(&mut rng).expect("vacuum is always present");
        let fits_c: Vec<_> = monos.iter().filter(|c| b.weight_quarters() + c.weight_quarters() <= bound).collect();
        let c = *fits_c.choose(&mut rng).expect("vacuum fits");
        let used = b.weight_quarters() + c.weight_quarters();
        let fits_d: Vec<_> = monos.iter().filter(|d| used + d.weight_quarters() <= bound).collect();
        let d = *fits_d.choose(&mut rng).expect("vacuum fits");
        let t = [b, c, d];
        let [bb, bc, bd] = triple_bidegrees(&t);
        let window = mode_window(bb, bc, bd, bound, false);
        let Some(&modes) = window.get(rng.gen_range(0..window.len().max(1))) else {
            continue;
        };
        let admissible = mode_window(bb, bc, bd, bound, true).contains(&modes);
        if admissible {
            draws.push((t.map(|m| FockVector::from(m.clone())), modes));
        } else {
            inapplicable += 1;
        }
    }
    let parts: Result<Vec<IdentityReport>> = draws
        .par_iter()
        .map(|([b, c, d], modes)| {
            let mut report = IdentityReport::new(IDENTITY);
            record_instance(&mut report, &mut TripleEval::new(b, c, d)?, *modes)?;
            Ok(report)
        })
        .collect();
    let mut report = IdentityReport::new(IDENTITY);
    for p in parts? {
        report.merge(p);
    }
    report.inapplicable += inapplicable;
    report.elapsed = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::{e_alpha, e_varpi};

    fn h(d: i64) -> HalfInt {
        HalfInt::from_doubled(d)
    }

    #[test]
    fn single_instances() {
        // k must lie in Δ(ϖ, α) = ℤ, so k = −3/2 is recorded as inapplicable
        let r = check_borcherds(&e_varpi(), &e_varpi(), &e_alpha(), h(-3), h(0), h(-3)).unwrap();
        assert!(r.passed() && r.checked == 0 && r.inapplicable == 1, "{r:?}");
        for k in -4..=2 {
            let r = check_borcherds(&e_varpi(), &e_varpi(), &e_alpha(), h(-3), h(0), h(k)).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        for m in -3..=2 {
            for k in -3..=2 {
                let r = check_borcherds(&e_alpha(), &e_alpha(), &e_varpi(), h(0), h(2 * m), h(2 * k)).unwrap();
                assert!(r.passed());
            }
        }
        let r = check_borcherds(&e_varpi(), &e_varpi(), &e_alpha(), h(-2), h(0), h(-3)).unwrap();
        assert_eq!((r.checked, r.inapplicable), (0, 1));
    }

    #[test]
    fn vacuum_middle_is_tautological() {
        let b = FockVector::from(FockMonomial::new(1, vec![1]));
        let (l, r) = borcherds_sides(&b, &FockVector::vacuum(), &e_alpha(), h(-2), h(-2), h(-2))
            .unwrap()
            .unwrap();
        assert_eq!(l, r);
        assert!(!l.is_zero());
    }

    #[test]
    fn window_respects_cosets_and_bounds() {
        let w = mode_window((1, 1), (1, 1), (2, 4), 20, true);
        assert!(!w.is_empty());
        assert!(w.iter().all(|(n, m, k)| !n.is_integer() && m.is_integer() && k.is_integer()));
        assert!(w.contains(&(h(-3), h(0), h(-2))));
        assert!(!w.contains(&(h(-3), h(0), h(-3))));
    }

    #[test]
    fn small_exhaustive_and_sampling_are_deterministic() {
        let r = exhaustive(2).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
        assert!(r.checked > 100);
        let a = sampled(3, 40, 7).unwrap();
        let b = sampled(3, 40, 7).unwrap();
        assert!(a.passed());
        assert_eq!((a.checked, a.inapplicable), (b.checked, b.inapplicable));
    }
}

//! Independent reference computations for the integration tests. Nothing
//! here calls into the library's algorithms; results are converted to
//! library types only for comparison.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use lattice_gva::{FockMonomial, FockVector};

type Rat = BigRational;

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Oscillator parts (sorted descending) and doubled z-exponent.
type Key = (Vec<u32>, i64);
type Series = BTreeMap<Key, Rat>;

fn insert(s: &mut Series, k: Key, c: Rat) {
    if c.is_zero() {
        return;
    }
    match s.entry(k) {
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

/// ϖ(n), n > 0, on an oscillator word: n·(multiplicity)/2 times the word
/// with one part n removed.
fn annihilate(parts: &[u32], n: u32) -> Option<(Vec<u32>, Rat)> {
    let k = parts.iter().filter(|&&p| p == n).count();
    if k == 0 {
        return None;
    }
    let mut out = parts.to_vec();
    let pos = out.iter().position(|&p| p == n).unwrap();
    out.remove(pos);
    Some((out, rat(n as i64 * k as i64, 2)))
}

fn create(parts: &[u32], n: u32) -> Vec<u32> {
    let mut out = parts.to_vec();
    out.push(n);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Applies exp(X) for a nilpotent-on-this-input operator X given as a
/// single-step map, dividing the k-th power by k!.
fn exp_apply(start: Series, step: impl Fn(&Series) -> Series, max_terms: usize) -> Series {
    let mut total = start.clone();
    let mut power = start;
    for k in 1..=max_terms {
        power = step(&power);
        if power.is_empty() {
            break;
        }
        let inv = rat(1, 1) / Rat::from_integer(BigInt::from(k));
        power = power.into_iter().map(|(key, c)| (key, c * &inv)).collect();
        for (key, c) in &power {
            insert(&mut total, key.clone(), c.clone());
        }
    }
    total
}

/// e^{bϖ}(m)·(ϖ(−n₁)⋯e^{rϖ}) from
/// Y(e^{bϖ},z) = exp(Σ_{k>0} bϖ(−k)zᵏ/k) exp(−Σ_{k>0} bϖ(k)z⁻ᵏ/k) e_{bϖ} z^{bϖ(0)},
/// reading off the coefficient of z^{−m−1}. `m_doubled` is 2m.
pub fn brute_vertex_mode(b: i64, m_doubled: i64, v: &FockMonomial) -> FockVector {
    let r = v.charge();
    // z^{bϖ(0)} e^{rϖ} = z^{br/2} e^{rϖ}
    let mut s = Series::new();
    s.insert((v.parts().to_vec(), b * r), Rat::one());
    let max_part = v.parts().iter().copied().max().unwrap_or(0);
    let br = rat(b, 1);

    let annihilators = |x: &Series| {
        let mut out = Series::new();
        for ((parts, e), c) in x {
            for n in 1..=max_part {
                if let Some((p, f)) = annihilate(parts, n) {
                    // −b ϖ(n) z^{−n}/n
                    let coeff = c * &f * -&br / Rat::from_integer(BigInt::from(n));
                    insert(&mut out, (p, e - 2 * n as i64), coeff);
                }
            }
        }
        out
    };
    s = exp_apply(s, annihilators, v.parts().len());

    let target = -m_doubled - 2;
    let lowest = s.keys().map(|(_, e)| *e).min().unwrap_or(target);
    let depth = (target - lowest).max(0) / 2;
    if (target - lowest).rem_euclid(2) != 0 {
        return FockVector::zero();
    }
    let creators = |x: &Series| {
        let mut out = Series::new();
        for ((parts, e), c) in x {
            for k in 1..=depth as u32 {
                let e2 = e + 2 * k as i64;
                if e2 > target {
                    break;
                }
                let coeff = c * &br / Rat::from_integer(BigInt::from(k));
                insert(&mut out, (create(parts, k), e2), coeff);
            }
        }
        out
    };
    s = exp_apply(s, creators, depth as usize);

    let mut out = FockVector::zero();
    for ((parts, e), c) in s {
        if e == target {
            out.add_term(FockMonomial::new(r + b, parts), c);
        }
    }
    out
}

/// Number of (n₁ ≤ … ≤ n_len) with Σnᵢ = sum, by exhaustive search.
pub fn count_nondecreasing(len: usize, sum: u32) -> usize {
    fn go(len: usize, sum: u32, min: u32) -> usize {
        if len == 0 {
            return (sum == 0) as usize;
        }
        (min..=sum).map(|first| go(len - 1, sum - first, first)).sum()
    }
    go(len, sum, 0)
}

/// Σ_r q^{r²} z^r / (q)_{width(r)}, as coefficients [r][q] up to q^order,
/// by expanding each 1/(1−qⁱ) as a geometric series.
pub fn naive_fermionic(order: usize, width: impl Fn(usize) -> usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut r = 0;
    while r * r <= order {
        let mut c = vec![0i64; order + 1];
        c[r * r] = 1;
        for i in 1..=width(r) {
            // multiply by 1 + qⁱ + q²ⁱ + ⋯
            let prev = c.clone();
            for n in 0..=order {
                let mut acc = 0;
                let mut k = 0;
                while k * i <= n {
                    acc += prev[n - k * i];
                    k += 1;
                }
                c[n] = acc;
            }
        }
        out.push(c);
        r += 1;
    }
    out
}

/// Sum over charges of [`naive_fermionic`].
pub fn naive_totals(order: usize, width: impl Fn(usize) -> usize) -> Vec<i64> {
    let by_charge = naive_fermionic(order, width);
    (0..=order).map(|n| by_charge.iter().map(|row| row[n]).sum()).collect()
}

//! Truncated integer q-series, optionally graded by a charge variable z.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graded::DimensionTable;

/// Σ c_{a,b} z^a q^b with all q-powers ≤ `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    order: i64,
    coeffs: BTreeMap<(i64, i64), BigInt>,
}

/// First bidegree, in (q, z) order, where two series differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub z: i64,
    pub q: i64,
    pub left: String,
    pub right: String,
}

impl QSeries {
    pub fn zero(order: i64) -> Self {
        QSeries { order, coeffs: BTreeMap::new() }
    }

    pub fn one(order: i64) -> Self {
        let mut s = Self::zero(order);
        s.add_term(0, 0, BigInt::one());
        s
    }

    /// Ungraded series from coefficients of q⁰, q¹, …
    pub fn from_coefficients(order: i64, coeffs: &[i64]) -> Self {
        let mut s = Self::zero(order);
        for (i, &c) in coeffs.iter().enumerate() {
            s.add_term(0, i as i64, BigInt::from(c));
        }
        s
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Adds c·z^a q^b; terms past the order are dropped.
    pub fn add_term(&mut self, z: i64, q: i64, c: BigInt) {
        if q > self.order || c.is_zero() {
            return;
        }
        let e = self.coeffs.entry((z, q)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&(z, q));
        }
    }

    pub fn coefficient(&self, z: i64, q: i64) -> BigInt {
        self.coeffs.get(&(z, q)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms as (z, q, c) in (z, q) order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &BigInt)> {
        self.coeffs.iter().map(|(&(z, q), c)| (z, q, c))
    }

    pub fn is_graded(&self) -> bool {
        self.coeffs.keys().any(|&(z, _)| z != 0)
    }

    /// z = 1.
    pub fn at_z_one(&self) -> QSeries {
        let mut out = Self::zero(self.order);
        for (&(_, q), c) in &self.coeffs {
            out.add_term(0, q, c.clone());
        }
        out
    }

    /// Coefficients of q⁰..q^order after z = 1.
    pub fn coefficients(&self) -> Vec<BigInt> {
        let flat = self.at_z_one();
        (0..=self.order).map(|q| flat.coefficient(0, q)).collect()
    }

    /// Coefficients as i64, for small series.
    pub fn small_coefficients(&self) -> Vec<i64> {
        self.coefficients()
            .iter()
            .map(|c| c.to_i64().expect("coefficient fits in i64"))
            .collect()
    }

    /// Multiplies by z^a q^b.
    pub fn shifted(&self, z: i64, q: i64) -> QSeries {
        let mut out = Self::zero(self.order);
        for (&(a, b), c) in &self.coeffs {
            out.add_term(a + z, b + q, c.clone());
        }
        out
    }

    pub fn try_add(&self, other: &QSeries) -> Result<QSeries> {
        self.same_order(other)?;
        let mut out = self.clone();
        for (&(a, b), c) in &other.coeffs {
            out.add_term(a, b, c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &QSeries) -> Result<QSeries> {
        self.same_order(other)?;
        let mut out = Self::zero(self.order);
        for (&(a1, b1), c1) in &self.coeffs {
            for (&(a2, b2), c2) in &other.coeffs {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        Ok(out)
    }

    fn same_order(&self, other: &QSeries) -> Result<()> {
        if self.order != other.order {
            return Err(Error::TruncationMismatch(self.order, other.order));
        }
        Ok(())
    }

    /// {"order": D, "coeffs": [[z, q, c], …]}
    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(&(z, q), c)| {
                let c = match c.to_i64() {
                    Some(x) => json!(x),
                    None => json!(c.to_string()),
                };
                json!([z, q, c])
            })
            .collect();
        json!({"order": self.order, "coeffs": coeffs})
    }
}

impl fmt::Display for QSeries {
    /// `1 + q + 2q^3 + z^2q^4`, ordered by (q, z).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.coeffs.keys().copied().collect();
        keys.sort_by_key(|&(z, q)| (q, z));
        if keys.is_empty() {
            write!(f, "0")?;
        }
        for (i, (z, q)) in keys.into_iter().enumerate() {
            let c = &self.coeffs[&(z, q)];
            let negative = c < &BigInt::zero();
            let abs = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut var = String::new();
            match z {
                0 => {}
                1 => var.push('z'),
                _ => var.push_str(&format!("z^{z}")),
            }
            match q {
                0 => {}
                1 => var.push('q'),
                _ => var.push_str(&format!("q^{q}")),
            }
            if var.is_empty() || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            write!(f, "{var}")?;
        }
        Ok(())
    }
}

/// 1/(q)_r = 1/Π_{n=1}^{r}(1−qⁿ): partitions into parts ≤ r.
pub fn pochhammer_inverse(r: u32, order: i64) -> QSeries {
    let mut c = vec![BigInt::zero(); (order.max(0) + 1) as usize];
    c[0] = BigInt::one();
    for part in 1..=r as usize {
        for i in part..c.len() {
            let prev = c[i - part].clone();
            c[i] += prev;
        }
    }
    let mut s = QSeries::zero(order);
    for (i, x) in c.into_iter().enumerate() {
        s.add_term(0, i as i64, x);
    }
    s
}

fn fermionic(order: i64, with_z: bool, pochhammer: impl Fn(u32) -> u32) -> QSeries {
    let mut out = QSeries::zero(order);
    let mut r: i64 = 0;
    while r * r <= order {
        let z = if with_z { r } else { 0 };
        let term = pochhammer_inverse(pochhammer(r as u32), order).shifted(z, r * r);
        out = out.try_add(&term).expect("same order");
        r += 1;
    }
    out
}

/// ch(C)(z,q) = Σ_r q^{r²}z^r/(q)_{2r}.
pub fn fermionic_char_c(order: i64, with_z: bool) -> QSeries {
    fermionic(order, with_z, |r| 2 * r)
}

/// ch(W)(z,q) = Σ_r q^{r²}z^r/(q)_r.
pub fn fermionic_char_w(order: i64, with_z: bool) -> QSeries {
    fermionic(order, with_z, |r| r)
}

/// Σ dim·z^{charge/2}q^{weight}; every charge must be even and every weight
/// integral.
pub fn char_from_dimensions(table: &DimensionTable, order: i64) -> Result<QSeries> {
    let mut out = QSeries::zero(order);
    for (&(charge, wq), &dim) in &table.entries {
        if charge % 2 != 0 || wq % 4 != 0 {
            return Err(Error::Invalid(format!(
                "character needs even charges and integral weights, got charge {charge}, weight {wq}/4"
            )));
        }
        out.add_term(charge / 2, wq / 4, BigInt::from(dim));
    }
    Ok(out)
}

/// The smallest (q, z) where the series differ, or `None` if equal.
pub fn compare(a: &QSeries, b: &QSeries) -> Result<Option<Mismatch>> {
    a.same_order(b)?;
    let mut keys: Vec<_> = a.coeffs.keys().chain(b.coeffs.keys()).copied().collect();
    keys.sort_by_key(|&(z, q)| (q, z));
    keys.dedup();
    Ok(keys.into_iter().find_map(|(z, q)| {
        let (l, r) = (a.coefficient(z, q), b.coefficient(z, q));
        (l != r).then(|| Mismatch { z, q, left: l.to_string(), right: r.to_string() })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::partition_count;
    use proptest::prelude::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer_inverse(0, 4).small_coefficients(), vec![1, 0, 0, 0, 0]);
        assert_eq!(pochhammer_inverse(2, 5).small_coefficients(), vec![1, 1, 2, 2, 3, 3]);
        assert_eq!(pochhammer_inverse(1, 3).small_coefficients(), vec![1, 1, 1, 1]);
        let full = pochhammer_inverse(12, 12).small_coefficients();
        for (n, c) in full.iter().enumerate() {
            assert_eq!(*c as u64, partition_count(n as u32));
        }
    }

    #[test]
    fn fermionic_characters() {
        let c = fermionic_char_c(8, false);
        assert_eq!(c.small_coefficients(), vec![1, 1, 1, 2, 3, 4, 5, 7, 9]);
        assert_eq!(c.to_string(), "1 + q + q^2 + 2q^3 + 3q^4 + 4q^5 + 5q^6 + 7q^7 + 9q^8");
        let cz = fermionic_char_c(5, true);
        assert_eq!(cz.coefficient(1, 3), BigInt::from(2));
        assert_eq!(fermionic_char_w(8, false).small_coefficients(), vec![1, 1, 1, 1, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn compare_and_orders() {
        let c = fermionic_char_c(5, false);
        let u = QSeries::from_coefficients(5, &[1, 1, 1, 2, 3, 5]);
        let m = compare(&u, &c).unwrap().unwrap();
        assert_eq!((m.q, m.left.as_str(), m.right.as_str()), (5, "5", "4"));
        assert_eq!(compare(&c, &c).unwrap(), None);
        assert!(matches!(compare(&c, &fermionic_char_c(6, false)), Err(Error::TruncationMismatch(5, 6))));
    }

    #[test]
    fn dimensions_to_character() {
        let mut t = DimensionTable::default();
        t.set(0, 0, 1);
        t.set(2, 12, 2);
        let s = char_from_dimensions(&t, 3).unwrap();
        assert_eq!(s.to_string(), "1 + 2zq^3");
        assert_eq!(s.to_json(), json!({"order": 3, "coeffs": [[0, 0, 1], [1, 3, 2]]}));
        t.set(1, 1, 1);
        assert!(char_from_dimensions(&t, 3).is_err());
    }

    proptest! {
        #[test]
        fn pochhammer_monotone_in_r(r in 0u32..8, order in 0i64..20) {
            let a = pochhammer_inverse(r, order).coefficients();
            let b = pochhammer_inverse(r + 1, order).coefficients();
            prop_assert!(a.iter().zip(&b).all(|(x, y)| x <= y));
        }

        #[test]
        fn graded_c_terms_are_shifted_pochhammers(order in 0i64..16) {
            let c = fermionic_char_c(order, true);
            let mut r = 0i64;
            while r * r <= order {
                let p = pochhammer_inverse(2 * r as u32, order);
                for q in 0..=order {
                    let expected = if q >= r * r { p.coefficient(0, q - r * r) } else { BigInt::zero() };
                    prop_assert_eq!(c.coefficient(r, q), expected);
                }
                r += 1;
            }
        }

        #[test]
        fn z_one_commutes_with_truncation(order in 0i64..14, cut in 0i64..14) {
            let cut = cut.min(order);
            let lo = fermionic_char_c(cut, true).at_z_one();
            let hi = fermionic_char_c(order, true).at_z_one().coefficients();
            prop_assert_eq!(lo.coefficients(), hi[..=cut as usize].to_vec());
        }
    }
}

//! Operator identities: anticommutation of e^α and e^ϖ, quasiconformality,
//! the Virasoro algebra, the ρ-operator rewriting, translation covariance,
//! the creation property and the Heisenberg–vertex commutator.

use num_traits::One;

use crate::error::Result;
use crate::fock::{heisenberg_apply, FockMonomial, FockVector};
use crate::grammar::{render, Oscillator};
use crate::report::IdentityReport;
use crate::scalar::{pairing, q, qi, ExactScalar, HalfInt, LatticeElement};
use crate::vertex::{derivation, rational_binomial, state_field_mode, vertex_mode_apply, virasoro_mode};

fn show(v: &FockVector) -> String {
    render(v, Oscillator::Varpi)
}

fn record_eq(report: &mut IdentityReport, lhs: &FockVector, rhs: &FockVector, inputs: impl FnOnce() -> String) {
    report.record(lhs == rhs, inputs, || show(lhs), || show(rhs));
}

/// e^α(m)e^ϖ(k)v = −e^ϖ(k)e^α(m)v.
pub fn check_commutation_sign(m: i64, k: HalfInt, v: &FockVector) -> IdentityReport {
    let mut report = IdentityReport::new("commutation-sign");
    record_commutation_sign(&mut report, m, k, v);
    report
}

pub(crate) fn record_commutation_sign(report: &mut IdentityReport, m: i64, k: HalfInt, v: &FockVector) {
    let lhs = vertex_mode_apply(2, HalfInt::int(m), &vertex_mode_apply(1, k, v));
    let rhs = -vertex_mode_apply(1, k, &vertex_mode_apply(2, HalfInt::int(m), v));
    record_eq(report, &lhs, &rhs, || format!("m={m}, k={k}, v={}", show(v)));
}

/// [L_n, e^α(m)] = −m·e^α(n+m) and [L_n, e^ϖ(m)] = (−m−3n/4−3/4)·e^ϖ(n+m)
/// on v. Integral m only for e^α.
pub fn check_quasiconformal(n: i64, m: HalfInt, v: &FockVector) -> Result<IdentityReport> {
    let mut report = IdentityReport::new("quasiconformal");
    record_quasiconformal(&mut report, n, m, v)?;
    Ok(report)
}

pub(crate) fn record_quasiconformal(report: &mut IdentityReport, n: i64, m: HalfInt, v: &FockVector) -> Result<()> {
    // e^{bϖ} is primary of weight h = b²/4: [L_n, a(m)] = ((h−1)(n+1) − m)a(n+m)
    for b in [2i64, 1] {
        if b == 2 && !m.is_integer() {
            continue;
        }
        let h = q(b * b, 4);
        let lhs = virasoro_mode(n, &vertex_mode_apply(b, m, v))? - vertex_mode_apply(b, m, &virasoro_mode(n, v)?);
        let coeff = (h - qi(1)) * qi(n + 1) - m.value();
        let rhs = vertex_mode_apply(b, m + n, v).scaled(&coeff);
        record_eq(report, &lhs, &rhs, || format!("b={b}, n={n}, m={m}, v={}", show(v)));
    }
    Ok(())
}

/// c from [L₂, L₋₂]1 = (4L₀ + c/2)1.
pub fn calibrate_central_charge() -> Result<ExactScalar> {
    let vac = FockVector::vacuum();
    let bracket = virasoro_mode(2, &virasoro_mode(-2, &vac)?)? - virasoro_mode(-2, &virasoro_mode(2, &vac)?)?;
    let l0 = virasoro_mode(0, &vac)?;
    let central = bracket - l0.scaled(&qi(4));
    Ok(central.coefficient(&FockMonomial::vacuum()) * qi(2))
}

/// [L_m, L_n]v = (m−n)L_{m+n}v + (m³−m)/12·c·δ_{m+n,0}v.
pub fn check_virasoro_algebra(m: i64, n: i64, v: &FockVector, c: &ExactScalar) -> Result<IdentityReport> {
    let mut report = IdentityReport::new("virasoro");
    record_virasoro(&mut report, m, n, v, c)?;
    Ok(report)
}

pub(crate) fn record_virasoro(report: &mut IdentityReport, m: i64, n: i64, v: &FockVector, c: &ExactScalar) -> Result<()> {
    let lhs = virasoro_mode(m, &virasoro_mode(n, v)?)? - virasoro_mode(n, &virasoro_mode(m, v)?)?;
    let mut rhs = virasoro_mode(m + n, v)?.scaled(&qi(m - n));
    if m + n == 0 {
        rhs.add_scaled(v, &(qi(m * m * m - m) * q(1, 12) * c));
    }
    record_eq(report, &lhs, &rhs, || format!("m={m}, n={n}, v={}", show(v)));
    Ok(())
}

/// ρ_{m,k;n}v = Σ_{j=0}^{m} C(m,j)(e^ϖ(n−1/2+j)e^ϖ)(m+k−j)v, computed from
/// the definition and from its rewriting
/// Σ_j (−1)^j C(n−1/2,j){e^ϖ(m+n−j−1/2)e^ϖ(k+j) − (−1)ⁿe^ϖ(n+k−j−1/2)e^ϖ(m+j)}v.
pub fn rho_sides(m: u32, k: u32, n: i64, v: &FockVector) -> Result<(FockVector, FockVector)> {
    let ev = FockVector::exp(1);
    let half = |x: i64| HalfInt::from_doubled(2 * x - 1);
    let mut lhs = FockVector::zero();
    for j in 0..=m {
        let inner = vertex_mode_apply(1, half(n + j as i64), &ev);
        let term = state_field_mode(&inner, HalfInt::int((m + k - j) as i64), v)?;
        lhs.add_scaled(&term, &rational_binomial(&qi(m as i64), j));
    }

    let top = half(n).value();
    let alt = |j: u32| {
        let c = rational_binomial(&top, j);
        if j % 2 == 1 {
            -c
        } else {
            c
        }
    };
    let sign = if n.rem_euclid(2) == 0 { -ExactScalar::one() } else { ExactScalar::one() };
    let mut rhs = FockVector::zero();
    // e^ϖ(p)v vanishes once 4·wt(e^ϖ(p)v) < (charge+1)²
    let live = |p: i64| match v.bidegree() {
        Some((c, wq)) => wq + 1 - 4 * p - 4 >= (c + 1) * (c + 1),
        None => false,
    };
    let mut j = 0u32;
    while live((k + j) as i64) || live((m + j) as i64) {
        let first = vertex_mode_apply(
            1,
            half(m as i64 + n - j as i64),
            &vertex_mode_apply(1, HalfInt::int((k + j) as i64), v),
        );
        let second = vertex_mode_apply(
            1,
            half(n + k as i64 - j as i64),
            &vertex_mode_apply(1, HalfInt::int((m + j) as i64), v),
        );
        let mut term = first;
        term.add_scaled(&second, &sign);
        rhs.add_scaled(&term, &alt(j));
        j += 1;
    }
    Ok((lhs, rhs))
}

pub fn check_rho_identity(m: u32, k: u32, n: i64, v: &FockVector) -> Result<IdentityReport> {
    let mut report = IdentityReport::new("rho");
    let (l, r) = rho_sides(m, k, n, v)?;
    record_eq(&mut report, &l, &r, || format!("m={m}, k={k}, n={n}, v={}", show(v)));
    Ok(report)
}

/// (∂u)(m)v = −m·u(m−1)v.
pub(crate) fn record_translation(report: &mut IdentityReport, u: &FockVector, m: HalfInt, v: &FockVector) -> Result<()> {
    let lhs = state_field_mode(&derivation(u), m, v)?;
    let rhs = state_field_mode(u, m - 1, v)?.scaled(&-m.value());
    record_eq(report, &lhs, &rhs, || format!("u={}, m={m}, v={}", show(u), show(v)));
    Ok(())
}

/// u(−1)1 = u, u(n)1 = 0 for 0 ≤ n ≤ 3, and ∂u = u(−2)1.
pub(crate) fn record_creation(report: &mut IdentityReport, u: &FockVector) -> Result<()> {
    let vac = FockVector::vacuum();
    let id = state_field_mode(u, HalfInt::int(-1), &vac)?;
    record_eq(report, &id, u, || format!("u(-1)1, u={}", show(u)));
    for n in 0..=3 {
        let z = state_field_mode(u, HalfInt::int(n), &vac)?;
        record_eq(report, &z, &FockVector::zero(), || format!("u({n})1, u={}", show(u)));
    }
    let d = state_field_mode(u, HalfInt::int(-2), &vac)?;
    record_eq(report, &d, &derivation(u), || format!("u(-2)1, u={}", show(u)));
    Ok(())
}

/// [ϖ(n), e^β(m)] = (ϖ,β)e^β(n+m).
pub(crate) fn record_heisenberg(report: &mut IdentityReport, b: i64, n: i64, m: HalfInt, v: &FockVector) {
    let lhs = heisenberg_apply(n, &vertex_mode_apply(b, m, v)) - vertex_mode_apply(b, m, &heisenberg_apply(n, v));
    let rhs = vertex_mode_apply(b, m + n, v).scaled(&pairing(LatticeElement::VARPI, LatticeElement(b)));
    record_eq(report, &lhs, &rhs, || format!("b={b}, n={n}, m={m}, v={}", show(v)));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::{e_alpha, e_varpi};

    #[test]
    fn commutation_sign_examples() {
        assert!(check_commutation_sign(-1, HalfInt::int(-1), &FockVector::vacuum()).passed());
        assert!(check_commutation_sign(0, HalfInt::from_doubled(-3), &e_varpi()).passed());
        assert!(check_commutation_sign(2, HalfInt::from_doubled(1), &FockVector::zero()).passed());
    }

    #[test]
    fn quasiconformal_examples() {
        assert!(check_quasiconformal(0, HalfInt::int(-1), &FockVector::vacuum()).unwrap().passed());
        let v: FockVector = FockMonomial::new(1, vec![1]).into();
        let r = check_quasiconformal(1, HalfInt::from_doubled(-5), &v).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.checked, 1);
    }

    #[test]
    fn central_charge_is_one() {
        let c = calibrate_central_charge().unwrap();
        assert_eq!(c, qi(1));
        let r = check_virasoro_algebra(1, -1, &e_alpha(), &c).unwrap();
        assert!(r.passed());
        let lhs = virasoro_mode(1, &virasoro_mode(-1, &e_alpha()).unwrap()).unwrap();
        assert_eq!(lhs, e_alpha().scaled(&qi(2)));
        assert!(check_virasoro_algebra(2, -2, &FockVector::vacuum(), &c).unwrap().passed());
        assert!(!check_virasoro_algebra(2, -2, &FockVector::vacuum(), &qi(2)).unwrap().passed());
    }

    #[test]
    fn rho_examples() {
        assert!(check_rho_identity(0, 0, 0, &e_alpha()).unwrap().passed());
        assert!(check_rho_identity(1, 0, -1, &e_alpha()).unwrap().passed());
        let (l, r) = rho_sides(2, 1, 3, &FockVector::vacuum()).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn vacuum_and_translation() {
        let mut r = IdentityReport::new("t");
        let u: FockVector = FockMonomial::new(1, vec![2, 1]).into();
        record_creation(&mut r, &u).unwrap();
        record_translation(&mut r, &u, HalfInt::from_doubled(-3), &e_varpi()).unwrap();
        record_heisenberg(&mut r, 1, 2, HalfInt::from_doubled(-5), &u);
        assert!(r.passed(), "{r:?}");
    }
}

//! Verification suites, registered by name and selected at runtime.

pub mod borcherds;
pub mod operators;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{FockMonomial, FockVector};
use crate::graded::monomials_up_to;
use crate::report::IdentityReport;
use crate::scalar::{qi, HalfInt};
use crate::subspace::structure::derivative_recurrence_check;

pub use operators::{
    calibrate_central_charge, check_commutation_sign, check_quasiconformal, check_rho_identity,
    check_virasoro_algebra, rho_sides,
};

/// Parameters shared by every suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Weight bound of the exhaustive part.
    pub max_weight: u32,
    pub seed: u64,
    /// Sampled instances, for suites that sample.
    pub samples: usize,
    /// Total-weight bound of sampled instances.
    pub sample_weight: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { max_weight: 4, seed: 0, samples: 500, sample_weight: 7 }
    }
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, config: &SuiteConfig) -> Result<IdentityReport>;
}

fn timed(name: &str, f: impl FnOnce(&mut IdentityReport) -> Result<()>) -> Result<IdentityReport> {
    let start = std::time::Instant::now();
    let mut report = IdentityReport::new(name);
    f(&mut report)?;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Runs `f` on every item in parallel and merges the reports in input order.
fn par_merge<T: Sync>(
    name: &str,
    items: &[T],
    f: impl Fn(&mut IdentityReport, &T) -> Result<()> + Sync,
) -> Result<IdentityReport> {
    let start = std::time::Instant::now();
    let parts: Result<Vec<IdentityReport>> = items
        .par_iter()
        .map(|x| {
            let mut r = IdentityReport::new(name);
            f(&mut r, x)?;
            Ok(r)
        })
        .collect();
    let mut report = IdentityReport::new(name);
    for p in parts? {
        report.merge(p);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

fn basis_states(max_weight: u32, even_only: bool) -> Vec<FockVector> {
    monomials_up_to(4 * max_weight as i64, even_only)
        .into_iter()
        .map(FockVector::from)
        .collect()
}

fn half_range(bound: i64) -> impl Iterator<Item = HalfInt> {
    (-2 * bound..=2 * bound).map(HalfInt::from_doubled)
}

pub struct Borcherds;

impl Suite for Borcherds {
    fn name(&self) -> &'static str {
        "borcherds"
    }
    fn description(&self) -> &'static str {
        "Borcherds identity: all monomial triples of total weight <= max-weight, plus seeded samples"
    }
    fn run(&self, config: &SuiteConfig) -> Result<IdentityReport> {
        let mut report = borcherds::exhaustive(config.max_weight)?;
        if config.samples > 0 {
            report.merge(borcherds::sampled(config.sample_weight, config.samples, config.seed)?);
        }
        Ok(report)
    }
}

pub struct CommutationSign;

impl Suite for CommutationSign {
    fn name(&self) -> &'static str {
        "commutation-sign"
    }
    fn description(&self) -> &'static str {
        "e^alpha(m) e^varpi(k) = -e^varpi(k) e^alpha(m) for |m|, |k| <= 4"
    }
    fn run(&self, config: &SuiteConfig) -> Result<IdentityReport> {
        par_merge(self.name(), &basis_states(config.max_weight, false), |r, v| {
            for m in -4..=4 {
                for k in half_range(4) {
                    operators::record_commutation_sign(r, m, k, v);
                }
            }
            Ok(())
        })
    }
}

pub struct Quasiconformal;

impl Suite for Quasiconformal {
    fn name(&self) -> &'static str {
        "quasiconformal"
    }
    fn description(&self) -> &'static str {
        "[L_n, e^alpha(m)] and [L_n, e^varpi(m)] for -1 <= n <= 3, |m| <= 4"
    }
    fn run(&self, config: &SuiteConfig) -> Result<IdentityReport> {
        par_merge(self.name(), &basis_states(config.max_weight, false), |r, v| {
            for n in -1..=3 {
                for m in half_range(4) {
                    operators::record_quasiconformal(r, n, m, v)?;
                }
            }
            Ok(())
        })
    }
}

pub struct Virasoro;

impl Suite for Virasoro {
    fn name(&self) -> &'static str {
        "virasoro"
    }
    fn description(&self) -> &'static str {
        "Virasoro relations for |m|, |n| <= 4 with the central charge calibrated on the vacuum"
    }
    fn run(&self, config: &SuiteConfig) -> Result<IdentityReport> {
        let c = calibrate_central_charge()?;
        let mut report = par_merge(self.name(), &basis_states(config.max_weight, false), |r, v| {
            for m in -4..=4 {
                for n in -4..=4 {
                    operators::record_virasoro(r, m, n, v, &c)?;
                }
            }
            Ok(())
        })?;
        report.record(
            c == qi(1),
            || "central charge from [L_2, L_-2]1".into(),
            || crate::scalar::fmt_scalar(&c),
            || "1".into(),
        );
        Ok(report)
    }
}

pub struct Rho;

impl Suite for Rho {
    fn name(&self) -> &'static str {
        "rho"
    }
    fn description(&self) -> &'static str {
        "rho_{m,k;n} from its definition and from its Borcherds rewriting, m, k <= 3, -4 <= n <= 2"
    }
    fn run(&self, config: &SuiteConfig) -> Result<IdentityReport> {
        par_merge(self.name(), &basis_states(config.max_weight, true), |r, v| {
            for m in 0..=3 {
                for k in 0..=3 {
                    for n in -4..=2 {
                        r.merge(check_rho_identity(m, k, n, v)?);
                    }
                }
            }
            Ok(())
        })
    }
}

pub struct Translation;

impl Suite for Translation {
    fn name(&self) -> &'static str {
        "translation"
    }
    fn description(&self) -> &'static str {
        "(du)(m)v = -m u(m-1)v on monomial pairs of total weight <= max-weight"
    }
    fn run(&self, config: &SuiteConfig) -> Result<IdentityReport> {
        let states = monomials_up_to(4 * config.max_weight as i64, false);
        let pairs: Vec<(&FockMonomial, &FockMonomial)> = states
            .iter()
            .flat_map(|u| states.iter().map(move |v| (u, v)))
            .filter(|(u, v)| u.weight_quarters() + v.weight_quarters() <= 4 * config.max_weight as i64)
            .collect();
        par_merge(self.name(), &pairs, |r, (u, v)| {
            let (u, v) = (FockVector::from((*u).clone()), FockVector::from((*v).clone()));
            for m in half_range(config.max_weight as i64 + 1) {
                operators::record_translation(r, &u, m, &v)?;
            }
            Ok(())
        })
    }
}

pub struct Creation;

impl Suite for Creation {
    fn name(&self) -> &'static str {
        "creation"
    }
    fn description(&self) -> &'static str {
        "u(-1)1 = u, u(n)1 = 0 for n >= 0, u(-2)1 = du"
    }
    fn run(&self, config: &SuiteConfig) -> Result<IdentityReport> {
        par_merge(self.name(), &basis_states(config.max_weight, false), operators::record_creation)
    }
}

pub struct Heisenberg;

impl Suite for Heisenberg {
    fn name(&self) -> &'static str {
        "heisenberg"
    }
    fn description(&self) -> &'static str {
        "[varpi(n), e^beta(m)] = (varpi, beta) e^beta(n+m) for beta in {varpi, alpha}, |n|, |m| <= 3"
    }
    fn run(&self, config: &SuiteConfig) -> Result<IdentityReport> {
        par_merge(self.name(), &basis_states(config.max_weight, false), |r, v| {
            for b in [1, 2] {
                for n in -3..=3 {
                    for m in half_range(3) {
                        operators::record_heisenberg(r, b, n, m, v);
                    }
                }
            }
            Ok(())
        })
    }
}

pub struct DerivativeRecurrence;

impl Suite for DerivativeRecurrence {
    fn name(&self) -> &'static str {
        "derivative-recurrence"
    }
    fn description(&self) -> &'static str {
        "dPhi°(n,m) = (m+3/2)Phi°(n,m+1) + (n+1)Phi°(n+1,m) for n, m <= max-weight"
    }
    fn run(&self, config: &SuiteConfig) -> Result<IdentityReport> {
        timed(self.name(), |r| {
            r.merge(derivative_recurrence_check(config.max_weight));
            Ok(())
        })
    }
}

/// Every registered suite, in a fixed order.
pub fn registry() -> Vec<Box<dyn Suite>> {
    vec![
        Box::new(Borcherds),
        Box::new(CommutationSign),
        Box::new(Quasiconformal),
        Box::new(Virasoro),
        Box::new(Rho),
        Box::new(Translation),
        Box::new(Creation),
        Box::new(Heisenberg),
        Box::new(DerivativeRecurrence),
    ]
}

pub fn lookup(name: &str) -> Result<Box<dyn Suite>> {
    let all = registry();
    let known = all.iter().map(|s| s.name()).collect::<Vec<_>>().join(", ");
    all.into_iter()
        .find(|s| s.name().eq_ignore_ascii_case(name))
        .ok_or(Error::Unknown { kind: "suite", name: name.to_string(), known })
}

//! One function per subcommand. Each returns the report in both formats and
//! whether everything it checked passed.

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use lattice_gva::graded::DimensionTable;
use lattice_gva::grammar::{self, render, to_json_terms, Oscillator};
use lattice_gva::identities::{self, SuiteConfig};
use lattice_gva::jet::{self, jet_character, DifferentialRingSpec};
use lattice_gva::qseries::{char_from_dimensions, compare, fermionic_char_c, fermionic_char_w, QSeries};
use lattice_gva::report::IdentityReport;
use lattice_gva::scalar::{fmt_scalar, q, HalfInt};
use lattice_gva::subspace::commutant::{commutant_dimension_table, CommutantTable, GeneratorSet};
use lattice_gva::subspace::spaces::{self, GradedSpace};
use lattice_gva::subspace::structure::{change_of_basis, sl2_report};
use lattice_gva::subspace::vectors::phi;
use lattice_gva::vertex::{e_alpha, e_varpi, omega, state_field_mode};
use lattice_gva::zhu::{c2_dims, generalized_c2_dims_wcirc, zhu_bracket, zhu_product};
use lattice_gva::{Error, FockVector};

use crate::table;
use crate::{Cli, Command, Global};

pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub passed: bool,
}

/// Marks errors caused by bad arguments.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// 2 for usage errors, 1 for everything else.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::Unknown { .. } | Error::Parse { .. } | Error::Invalid(_)) => 2,
        _ => 1,
    }
}

fn progress(msg: impl AsRef<str>) {
    eprintln!("[gva] {}", msg.as_ref());
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Verify { suite, samples, sample_weight } => verify(g, suite, *samples, *sample_weight),
        Command::Char { space } => character(g, space),
        Command::Commutant { of, ambient } => commutant(g, of, ambient),
        Command::Duality => duality(g),
        Command::Zhu { space, left, right, generalized } => zhu(g, space, left.as_deref(), right.as_deref(), *generalized),
        Command::Jet { ring } => jet_cmd(g, ring),
        Command::Phi { n } => phi_cmd(g, *n),
        Command::Ope { left, right, n } => ope(g, left, right, n.as_deref()),
        Command::Basis { space } => basis(g, space),
        Command::Sl2 => sl2(g),
        Command::Report => report(g),
    }
}

/// A vector argument: the text grammar, or one of `phi<k>`, `phi(k)`, `vac`,
/// `ea` (e^alpha), `ew` (e^varpi), `omega`.
pub fn parse_vector(text: &str) -> Result<FockVector> {
    let t = text.trim();
    let lower = t.to_ascii_lowercase();
    if let Some(rest) = lower.strip_prefix("phi") {
        let digits = rest.trim_start_matches(['_', '(']).trim_end_matches(')');
        let n: u32 = digits.parse().map_err(|_| usage(format!("bad generator index in `{t}`")))?;
        return Ok(phi(n));
    }
    match lower.as_str() {
        "vac" | "1" => Ok(FockVector::vacuum()),
        "ea" => Ok(e_alpha()),
        "ew" => Ok(e_varpi()),
        "omega" => Ok(omega()),
        _ => Ok(grammar::parse(t).with_context(|| format!("cannot parse vector `{t}`"))?),
    }
}

fn vector_json(v: &FockVector, osc: Oscillator) -> Value {
    json!({"text": render(v, osc), "terms": to_json_terms(v)})
}

fn report_json(r: &IdentityReport) -> Value {
    serde_json::to_value(r).expect("serializable")
}

fn reports_outcome(reports: Vec<IdentityReport>) -> Outcome {
    let mut text = String::new();
    for r in &reports {
        text.push_str(&r.summary());
        text.push('\n');
        for f in r.failures.iter().take(5) {
            text.push_str(&format!("  at {}\n    left:  {}\n    right: {}\n", f.inputs, f.left, f.right));
        }
    }
    let passed = reports.iter().all(IdentityReport::passed);
    Outcome {
        json: json!({"passed": passed, "reports": reports.iter().map(report_json).collect::<Vec<_>>()}),
        text,
        passed,
    }
}

fn verify(g: &Global, suite: &str, samples: usize, sample_weight: u32) -> Result<Outcome> {
    let config = SuiteConfig { max_weight: g.weight_or(4), seed: g.seed, samples, sample_weight };
    let suites = if suite.eq_ignore_ascii_case("all") {
        identities::registry()
    } else {
        vec![identities::lookup(suite)?]
    };
    let mut reports = Vec::new();
    for s in suites {
        progress(format!("suite {} at weight <= {}", s.name(), config.max_weight));
        let r = s.run(&config)?;
        progress(format!("{} ({:.1?})", r.summary(), r.elapsed));
        reports.push(r);
    }
    Ok(reports_outcome(reports))
}

fn dimension_table(space: &dyn GradedSpace, max_weight: u32, max_charge: u32) -> DimensionTable {
    let mut t = DimensionTable::default();
    for (c, w) in space.bidegrees(4 * max_weight as i64, max_charge as i64) {
        t.set(c, w, space.dim(c, w));
    }
    t
}

/// Drops terms whose charge z·α exceeds the charge bound.
fn charge_cut(s: &QSeries, max_charge: u32) -> QSeries {
    let mut out = QSeries::zero(s.order());
    for (z, qq, c) in s.terms() {
        if 2 * z.unsigned_abs() <= max_charge as u64 {
            out.add_term(z, qq, c.clone());
        }
    }
    out
}

fn dims_rows(t: &DimensionTable) -> Vec<Vec<String>> {
    t.records()
        .into_iter()
        .map(|r| vec![r.charge.to_string(), r.weight, r.dim.to_string()])
        .collect()
}

fn character(g: &Global, name: &str) -> Result<Outcome> {
    let space = spaces::lookup(name)?;
    let mw = g.weight_or(6);
    progress(format!("enumerating {} at weight <= {mw}", space.name()));
    let dims = dimension_table(space.as_ref(), mw, g.max_charge);
    let mut text = table::render(&["charge", "weight", "dim"], &dims_rows(&dims));
    let mut json = json!({"space": space.name(), "max_weight": mw, "max_charge": g.max_charge, "dims": dims.records()});
    let mut passed = true;
    if space.integral_weights() {
        let series = char_from_dimensions(&dims, mw as i64)?;
        text.push_str(&format!("ch = {series}\n"));
        json["series"] = series.to_json();
        let formula = match space.name() {
            "C" => Some(fermionic_char_c(mw as i64, true)),
            "W" => Some(fermionic_char_w(mw as i64, true)),
            _ => None,
        };
        if let Some(f) = formula {
            let f = charge_cut(&f, g.max_charge);
            let mismatch = compare(&series, &f)?;
            passed = mismatch.is_none();
            match &mismatch {
                None => text.push_str("fermionic formula: match\n"),
                Some(m) => text.push_str(&format!(
                    "fermionic formula: MISMATCH at z^{} q^{}: {} vs {}\n",
                    m.z, m.q, m.left, m.right
                )),
            }
            json["fermionic_mismatch"] = serde_json::to_value(mismatch)?;
        }
    }
    json["passed"] = json!(passed);
    Ok(Outcome { json, text, passed })
}

fn commutant_outcome(t: &CommutantTable) -> Outcome {
    let rows: Vec<Vec<String>> = t
        .rows
        .iter()
        .map(|r| {
            vec![
                r.charge.to_string(),
                r.weight.clone(),
                r.kernel_dim.to_string(),
                r.explicit_dim.map_or("-".into(), |d| d.to_string()),
                if r.escalated { "yes".into() } else { "".into() },
            ]
        })
        .collect();
    let passed = t.rows.iter().all(|r| r.explicit_dim.is_none_or(|d| d == r.kernel_dim));
    let mut text = format!("commutant of {} in {}\n", t.generators, t.ambient);
    text.push_str(&table::render(&["charge", "weight", "kernel", "explicit", "escalated"], &rows));
    let mut json = serde_json::to_value(t).expect("serializable");
    json["passed"] = json!(passed);
    Outcome { json, text, passed }
}

fn commutant(g: &Global, of: &str, ambient: &str) -> Result<Outcome> {
    let mw = g.weight_or(6);
    let gens = GeneratorSet::for_weight(of, mw as i64)?;
    let ambient = spaces::lookup(ambient)?;
    progress(format!("kernel of {} on {} at weight <= {mw}", gens.name(), ambient.name()));
    let t = commutant_dimension_table(&gens, ambient.as_ref(), mw as i64, g.max_charge as i64)?;
    Ok(commutant_outcome(&t))
}

fn duality(g: &Global) -> Result<Outcome> {
    let mw = g.weight_or(6);
    let gens = GeneratorSet::for_weight("C", mw as i64)?;
    progress(format!("kernel of {} on VA1 at weight <= {mw}", gens.name()));
    let t = commutant_dimension_table(&gens, &spaces::LatticeVA1, mw as i64, g.max_charge as i64)?;
    let w = spaces::PrincipalW;
    let mut rows = Vec::new();
    let mut records = Vec::new();
    let mut passed = true;
    for r in &t.rows {
        let expected = w.dim(r.charge, r.weight_quarters);
        passed &= expected == r.kernel_dim;
        rows.push(vec![r.charge.to_string(), r.weight.clone(), r.kernel_dim.to_string(), expected.to_string()]);
        records.push(json!({"charge": r.charge, "weight": r.weight, "kernel_dim": r.kernel_dim, "w_dim": expected}));
    }
    let mut text = format!("commutant of {} in VA1 against W\n", t.generators);
    text.push_str(&table::render(&["charge", "weight", "kernel", "dim W"], &rows));
    text.push_str(if passed { "duality: match\n" } else { "duality: MISMATCH\n" });
    Ok(Outcome {
        json: json!({"generators": t.generators, "max_weight": mw, "rows": records, "passed": passed}),
        text,
        passed,
    })
}

fn zhu(g: &Global, name: &str, left: Option<&str>, right: Option<&str>, generalized: bool) -> Result<Outcome> {
    let mw = g.weight_or(6);
    let space = spaces::lookup(name)?;
    let osc = g.oscillator();
    if generalized {
        if space.name() != "Wcirc" {
            bail!(usage("--generalized applies only to --space Wcirc"));
        }
        progress(format!("generalized quotient of Wcirc at weight <= {mw}"));
        let r = generalized_c2_dims_wcirc(mw as i64)?;
        let rows: Vec<Vec<String>> = r
            .rows
            .iter()
            .map(|x| vec![x.charge.to_string(), x.weight.clone(), x.space_dim.to_string(), x.c2_dim.to_string(), x.quotient_dim.to_string()])
            .collect();
        let mut text = table::render(&["charge", "weight", "dim", "span", "quotient"], &rows);
        text.push_str(&format!("total quotient dimension {}, top weight {}\n", r.total_quotient_dim, r.threshold));
        return Ok(Outcome { json: serde_json::to_value(&r)?, text, passed: true });
    }
    progress(format!("C2 quotient of {} at weight <= {mw}", space.name()));
    let t = c2_dims(space.as_ref(), mw as i64)?;
    let rows: Vec<Vec<String>> = t
        .rows()
        .iter()
        .map(|x| vec![x.charge.to_string(), x.weight.clone(), x.space_dim.to_string(), x.c2_dim.to_string(), x.quotient_dim.to_string()])
        .collect();
    let by_weight = t.quotient_by_weight();
    let mut text = table::render(&["charge", "weight", "dim", "C2", "quotient"], &rows);
    text.push_str(&format!(
        "quotient by weight: {}\n",
        by_weight.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
    ));
    let mut json = json!({"space": space.name(), "max_weight": mw, "rows": t.rows(), "quotient_by_weight": by_weight});
    if let (Some(l), Some(r)) = (left, right) {
        let (u, v) = (parse_vector(l)?, parse_vector(r)?);
        progress("product and bracket");
        let p = zhu_product(&u, &v, space.as_ref())?;
        let b = zhu_bracket(&u, &v, space.as_ref())?;
        text.push_str(&format!("[u][v]   = {}\n{{[u],[v]}} = {}\n", p.render(osc), b.render(osc)));
        json["product"] = vector_json(&p.residual, osc);
        json["bracket"] = vector_json(&b.residual, osc);
    }
    Ok(Outcome { json, text, passed: true })
}

fn load_ring(name: &str, max_weight: u32) -> Result<(String, DifferentialRingSpec)> {
    match jet::lookup(name) {
        Ok(r) => Ok((r.name().to_string(), r.spec(max_weight))),
        Err(lookup_err) => {
            let path = std::path::Path::new(name);
            if !path.exists() {
                return Err(lookup_err.into());
            }
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {name}"))?;
            Ok((name.to_string(), DifferentialRingSpec::from_json(&text)?))
        }
    }
}

fn jet_cmd(g: &Global, ring: &str) -> Result<Outcome> {
    let mw = g.weight_or(6);
    let (name, spec) = load_ring(ring, mw)?;
    progress(format!("arc space of {name} up to q^{mw}"));
    let series = jet_character(&spec, mw)?;
    let mut text = format!("{series}\n");
    let mut json = json!({"ring": name, "max_weight": mw, "series": series.to_json()});
    let target = match name.as_str() {
        "RW" => Some(("W", fermionic_char_w(mw as i64, false))),
        "RC" => Some(("C", fermionic_char_c(mw as i64, false))),
        _ => None,
    };
    if let Some((space, ch)) = target {
        let mismatch = compare(&series, &ch)?;
        match &mismatch {
            None => text.push_str(&format!("equals ch({space}) up to q^{mw}\n")),
            Some(m) => text.push_str(&format!("differs from ch({space}) first at q^{}: {} vs {}\n", m.q, m.left, m.right)),
        }
        json["compared_with"] = json!(space);
        json["first_mismatch"] = serde_json::to_value(mismatch)?;
    }
    Ok(Outcome { json, text, passed: true })
}

fn phi_cmd(g: &Global, n: u32) -> Result<Outcome> {
    let v = phi(n);
    let osc = g.oscillator();
    let mut json = vector_json(&v, osc);
    json["n"] = json!(n);
    json["weight"] = json!(2 * n + 1);
    json["charge"] = json!(2);
    Ok(Outcome { text: format!("{}\n", render(&v, osc)), json, passed: true })
}

/// Every mode n ≥ 0 at which u(n)v can be nonzero by grading.
fn singular_modes(u: &FockVector, v: &FockVector) -> Vec<HalfInt> {
    let mut modes = std::collections::BTreeSet::new();
    for (cu, wu) in u.components().into_keys() {
        for (cv, wv) in v.components().into_keys() {
            let c = cu + cv;
            let mut d = (cu * cv).rem_euclid(2);
            while wu + wv - 2 * d - 4 >= c * c {
                modes.insert(d);
                d += 2;
            }
        }
    }
    modes.into_iter().map(HalfInt::from_doubled).collect()
}

fn ope(g: &Global, left: &str, right: &str, n: Option<&str>) -> Result<Outcome> {
    let (u, v) = (parse_vector(left)?, parse_vector(right)?);
    let osc = g.oscillator();
    let modes = match n {
        Some(s) => vec![HalfInt::parse(s).ok_or_else(|| usage(format!("mode `{s}` is not an integer or half-integer")))?],
        None => singular_modes(&u, &v),
    };
    let mut text = String::new();
    let mut entries = Vec::new();
    for m in modes {
        let r = state_field_mode(&u, m, &v)?;
        let label = fmt_scalar(&m.value());
        text.push_str(&format!("u({label})v = {}\n", render(&r, osc)));
        let mut e = vector_json(&r, osc);
        e["n"] = json!(label);
        entries.push(e);
    }
    if entries.is_empty() {
        text.push_str("no non-negative mode can be nonzero\n");
    }
    Ok(Outcome {
        json: json!({"left": vector_json(&u, osc), "right": vector_json(&v, osc), "products": entries}),
        text,
        passed: true,
    })
}

fn basis(g: &Global, name: &str) -> Result<Outcome> {
    let space = spaces::lookup(name)?;
    let mw = g.weight_or(6);
    let osc = g.oscillator();
    let mut text = format!("{}: {}\n", space.name(), space.description());
    let mut pieces = Vec::new();
    for (c, w) in space.bidegrees(4 * mw as i64, g.max_charge as i64) {
        let weight = fmt_scalar(&q(w, 4));
        let vectors = space.basis(c, w);
        text.push_str(&format!("charge {c}, weight {weight} (dim {}):\n", vectors.len()));
        for v in &vectors {
            text.push_str(&format!("  {}\n", render(v, osc)));
        }
        pieces.push(json!({
            "charge": c,
            "weight": weight,
            "dim": vectors.len(),
            "vectors": vectors.iter().map(|v| vector_json(v, osc)).collect::<Vec<_>>(),
        }));
    }
    Ok(Outcome { json: json!({"space": space.name(), "pieces": pieces}), text, passed: true })
}

fn sl2(g: &Global) -> Result<Outcome> {
    let mw = g.weight_or(6);
    progress(format!("charge-alpha part of C at weight <= {mw}"));
    let r = sl2_report(mw)?;
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|x| {
            vec![
                x.weight.to_string(),
                x.dim.to_string(),
                x.expected_dim.to_string(),
                x.derivation_rank.to_string(),
                x.ker_l1.to_string(),
                x.phi_descendant_rank.to_string(),
                if x.passed() { "ok".into() } else { "FAIL".into() },
            ]
        })
        .collect();
    let mut text = table::render(&["weight", "dim", "expected", "rank d", "ker L1", "rank d^i phi", ""], &rows);
    let mut changes = Vec::new();
    let mut passed = r.passed();
    for n in 1..=mw.saturating_sub(1) / 2 {
        let c = change_of_basis(n)?;
        passed &= c.passed();
        text.push_str(&format!(
            "change of basis at weight {}: det {} (expected {}), lower triangular: {}\n",
            2 * n + 1,
            fmt_scalar(&c.determinant),
            fmt_scalar(&c.expected_determinant),
            c.lower_triangular
        ));
        changes.push(c);
    }
    Ok(Outcome {
        json: json!({"sl2": r, "change_of_basis": changes, "passed": passed}),
        text,
        passed,
    })
}

fn report(g: &Global) -> Result<Outcome> {
    let mw = g.weight_or(4);
    let mut sections: Vec<(&str, Outcome)> = Vec::new();
    let sub = Global { max_weight: Some(mw), ..g.clone() };
    sections.push(("verify", verify(&sub, "all", 500, mw + 2)?));
    sections.push(("char C", character(&sub, "C")?));
    sections.push(("char W", character(&sub, "W")?));
    sections.push(("commutant", commutant(&sub, "W", "VA1")?));
    sections.push(("duality", duality(&sub)?));
    sections.push(("zhu C", zhu(&sub, "C", None, None, false)?));
    sections.push(("zhu W", zhu(&sub, "W", None, None, false)?));
    sections.push(("sl2", sl2(&sub)?));
    let mut text = String::new();
    let mut json = serde_json::Map::new();
    let mut passed = true;
    for (name, o) in sections {
        text.push_str(&format!("== {name}: {} ==\n{}", if o.passed { "PASS" } else { "FAIL" }, o.text));
        passed &= o.passed;
        json.insert(name.replace(' ', "_"), o.json);
    }
    json.insert("max_weight".into(), json!(mw));
    json.insert("passed".into(), json!(passed));
    Ok(Outcome { json: Value::Object(json), text, passed })
}

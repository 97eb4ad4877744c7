use rayon::prelude::*;
use serde_json::{json, Value};

use octomagic::hurwitz::{check_composition, make_algebra, table2, AlgebraName, TABLE2_EXPECTED};
use octomagic::liealg::{table1, TABLE1_EXPECTED};
use octomagic::magic::{self, TableKind};
use octomagic::ratlin::Rat;
use octomagic::rosenfeld::{self, CosetKind, CosetSpace};
use octomagic::Error;

use crate::report::{Failure, Outcome};

struct Section {
    name: &'static str,
    summary: String,
    report: Value,
    failures: Vec<Failure>,
}

impl Section {
    fn new(name: &'static str) -> Section {
        Section { name, summary: String::new(), report: Value::Null, failures: Vec::new() }
    }

    fn fail(&mut self, what: impl Into<String>, detail: String) {
        self.failures.push(Failure::new(format!("{}: {}", self.name, what.into()), detail));
    }
}

fn table1_section() -> Result<Section, Error> {
    let mut s = Section::new("table1");
    let rows = table1()?;
    for (r, e) in rows.iter().zip(TABLE1_EXPECTED.iter()) {
        if !r.matches(e) {
            s.fail(r.algebra.clone(), format!("got {r:?}, expected {e:?}"));
        }
    }
    s.summary = format!("{} algebras", rows.len());
    s.report = serde_json::to_value(&rows).expect("serializes");
    Ok(s)
}

fn table2_section() -> Result<Section, Error> {
    let mut s = Section::new("table2");
    let rows = table2()?;
    for ((name, p), e) in rows.iter().zip(TABLE2_EXPECTED.iter()) {
        if p.flags() != *e {
            s.fail(name.clone(), format!("flags {:?}, expected {e:?}", p.flags()));
        }
        let no = p.flags().iter().filter(|f| !**f).count();
        if p.witnesses.len() != no {
            s.fail(name.clone(), format!("{} witnesses for {no} failing identities", p.witnesses.len()));
        }
    }
    s.summary = format!("{} products", rows.len());
    s.report = json!(rows.iter().map(|(n, p)| json!({"algebra": n, "profile": p})).collect::<Vec<_>>());
    Ok(s)
}

fn composition_section() -> Result<Section, Error> {
    let mut s = Section::new("composition");
    let mut out = Vec::new();
    for n in AlgebraName::HURWITZ.iter() {
        let ok = check_composition(&make_algebra(n)?);
        if !ok {
            s.fail(n.to_string(), "N(xy) ≠ N(x)N(y)".into());
        }
        out.push(json!({"algebra": n.to_string(), "ok": ok}));
    }
    s.summary = format!("{} algebras", out.len());
    s.report = Value::Array(out);
    Ok(s)
}

fn calibration_section() -> Section {
    let mut s = Section::new("calibration");
    let c = magic::calibration();
    if !c.on_nominal_grid {
        s.fail("grid", format!("{:?} is off the nominal grid", c.coefficients));
    }
    s.summary = format!(
        "α = {}, μ = {}, γ = {} from {} equations",
        c.coefficients.alpha, c.coefficients.mu, c.coefficients.gamma, c.equations
    );
    s.report = serde_json::to_value(c).expect("serializes");
    s
}

fn tables_section() -> Result<Section, Error> {
    let mut s = Section::new("tables");
    let reports = magic::octonionic_tables(&TableKind::ALL)?;
    let mut n = 0;
    for r in &reports {
        for c in &r.cells {
            n += 1;
            if !c.ok {
                s.fail(format!("{}[{},{}]", r.table.name(), c.row, c.column), format!("{c:?}"));
            }
        }
    }
    s.summary = format!("{n} cells in {} tables", reports.len());
    s.report = serde_json::to_value(&reports).expect("serializes");
    Ok(s)
}

fn coset_section(name: &'static str, rows: &[CosetSpace]) -> Section {
    let mut s = Section::new(name);
    for cs in rows {
        if let Err(e) = cs.verify() {
            s.fail(cs.name(), e.to_string());
        }
        if cs.checks.table_match != Some(true) {
            s.fail(cs.name(), "does not match its tabulated row".into());
        }
    }
    s.summary = format!("{} rows", rows.len());
    s.report = Value::Array(rows.iter().map(|c| c.report()).collect());
    s
}

fn chains_section() -> Result<Section, Error> {
    let mut s = Section::new("chains");
    let chains = rosenfeld::chain_reports()?;
    for c in chains.iter().filter(|c| !c.coincide) {
        s.fail(c.members.join(" ≃ "), "certificates differ".into());
    }
    s.summary = format!("{} chains", chains.len());
    s.report = serde_json::to_value(&chains).expect("serializes");
    Ok(s)
}

fn accounting_section() -> Result<Section, Error> {
    let mut s = Section::new("accounting");
    let rows = rosenfeld::accounting_suite()?;
    for r in rows.iter().filter(|r| !r.ok) {
        s.fail(r.name.clone(), format!("{r:?}"));
    }
    s.summary = format!("{} quotients", rows.len());
    s.report = serde_json::to_value(&rows).expect("serializes");
    Ok(s)
}

fn curvature_section(all: &[&CosetSpace], lambda: &Rat) -> Result<Section, Error> {
    let mut s = Section::new("curvature");
    let per: Vec<(String, Option<_>, Option<_>)> = all
        .par_iter()
        .map(|cs| {
            let r = cs.curvature(lambda)?;
            Ok((cs.name(), r.bianchi_failure(), r.pair_exchange_failure()))
        })
        .collect::<Result<_, Error>>()?;
    for (name, b, p) in &per {
        if let Some(t) = b {
            s.fail(name.clone(), format!("Bianchi fails on {t:?}"));
        }
        if let Some(t) = p {
            s.fail(name.clone(), format!("pair exchange fails on {t:?}"));
        }
    }

    let sphere = rosenfeld::coset(&AlgebraName::R, &AlgebraName::O, CosetKind::LineP)?;
    let k1 = sphere.curvature(lambda)?.constant_curvature()?;
    let twice = lambda.clone() * Rat::from(2);
    let k2 = sphere.curvature(&twice)?.constant_curvature()?;
    if !k1.constant {
        s.fail(sphere.name(), "sectional curvature is not constant".into());
    }
    let scaled = match (&k1.value, &k2.value) {
        (Some(a), Some(b)) => *b == a.clone() / Rat::from(4),
        _ => false,
    };
    if !scaled {
        s.fail(sphere.name(), format!("K(2λ) = {:?} is not K(λ)/4 = {:?}/4", k2.value, k1.value));
    }
    s.summary = format!(
        "{} cosets; {} has K = {} at λ = {lambda}",
        per.len(),
        sphere.name(),
        k1.value.as_ref().map_or("?".to_string(), |v| v.to_string())
    );
    s.report = json!({
        "lambda": lambda,
        "cosets": per.iter().map(|(n, b, p)| json!({"name": n, "bianchi": b.is_none(), "pair_exchange": p.is_none()})).collect::<Vec<_>>(),
        "constant_curvature": { "coset": sphere.name(), "at_lambda": k1, "at_2lambda": k2, "inverse_square_scaling": scaled },
    });
    Ok(s)
}

pub fn check_all(lambda: &Rat) -> Result<Outcome, Error> {
    let planes = rosenfeld::plane_rows()?;
    let lines = rosenfeld::line_rows()?;
    let all: Vec<&CosetSpace> = planes.iter().chain(lines.iter()).collect();
    let sections = vec![
        table1_section()?,
        table2_section()?,
        composition_section()?,
        calibration_section(),
        tables_section()?,
        coset_section("planes", &planes),
        coset_section("lines", &lines),
        chains_section()?,
        accounting_section()?,
        curvature_section(&all, lambda)?,
    ];

    let mut out = Outcome::new("check-all");
    let mut text = String::new();
    let mut csv = String::from("section,passed,failures,summary\n");
    let mut report = serde_json::Map::new();
    for s in sections {
        let ok = s.failures.is_empty();
        text.push_str(&format!("{:<12} {}  {}\n", s.name, if ok { "ok  " } else { "FAIL" }, s.summary));
        csv.push_str(&format!("{},{},{},\"{}\"\n", s.name, ok, s.failures.len(), s.summary.replace('"', "'")));
        report.insert(s.name.to_string(), json!({"passed": ok, "summary": s.summary, "detail": s.report}));
        for f in s.failures {
            text.push_str(&format!("  {}: {}\n", f.check, f.detail));
            out.fail(f);
        }
    }
    out.text = text;
    out.csv = csv;
    out.json = Value::Object(report);
    Ok(out)
}

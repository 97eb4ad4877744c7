mod checks;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use octomagic::hurwitz::AlgebraName;
use octomagic::magic::{self, Signature3, TableKind};
use octomagic::ratlin::Rat;
use octomagic::rosenfeld::{self, CosetKind};
use octomagic::Error;

use report::{Failure, Outcome};

#[derive(Parser, Debug)]
#[command(name = "octomagic", version, about = "Exact magic-square Lie algebras and Rosenfeld cosets")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Curvature scale λ (positive rational, e.g. 1 or 3/2).
    #[arg(long, default_value = "1", value_parser = parse_lambda, global = true)]
    lambda: Rat,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The octonionic magic-square tables m3, m12, m2, m11.
    Tables {
        /// m3, m12, m2, m11 (also m3-euclidean, m12-lorentzian, m2-euclidean,
        /// m11-lorentzian) or all.
        #[arg(long, default_value = "all", value_parser = parse_which)]
        which: Which,
    },
    /// Build one Tits algebra m3(A1,A2) or m12(A1,A2).
    Construct {
        #[arg(value_parser = parse_square)]
        square: Signature3,
        #[arg(value_parser = parse_algebra)]
        a1: AlgebraName,
        #[arg(value_parser = parse_algebra)]
        a2: AlgebraName,
        /// Include the full structure constants in JSON output.
        #[arg(long)]
        structure: bool,
    },
    /// Build a Rosenfeld plane or line as a symmetric coset.
    Coset {
        #[arg(value_enum)]
        shape: Shape,
        #[arg(value_parser = parse_algebra)]
        a: AlgebraName,
        #[arg(value_parser = parse_algebra)]
        b: AlgebraName,
        /// P, H or H~ for planes; P or H for lines.
        #[arg(long, default_value = "P")]
        kind: String,
        /// Skip the Bianchi and pair-exchange checks.
        #[arg(long)]
        no_curvature: bool,
    },
    /// Signature arithmetic for the exceptional X and Y quotients.
    Accounting,
    /// Every suite: Tables 1 and 2, composition, magic squares, planes,
    /// lines, isomorphy chains, accounting and curvature.
    CheckAll,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Shape {
    Plane,
    Line,
}

#[derive(Clone, Debug)]
struct Which(Vec<TableKind>);

fn parse_which(s: &str) -> Result<Which, String> {
    let k = s.to_ascii_lowercase();
    let base = k.strip_suffix("-euclidean").or_else(|| k.strip_suffix("-lorentzian")).unwrap_or(&k);
    if base == "all" {
        return Ok(Which(TableKind::ALL.to_vec()));
    }
    TableKind::from_str(base).map(|t| Which(vec![t])).map_err(|e| e.to_string())
}

fn parse_square(s: &str) -> Result<Signature3, String> {
    match s.to_ascii_lowercase().as_str() {
        "m3" => Ok(Signature3::Euclidean),
        "m12" | "m1,2" => Ok(Signature3::Lorentzian),
        _ => Err(format!("unknown square {s}; expected m3 or m12")),
    }
}

fn parse_algebra(s: &str) -> Result<AlgebraName, String> {
    let a = AlgebraName::from_str(s).map_err(|e| e.to_string())?;
    a.hurwitz_dim().map(|_| a).ok_or_else(|| format!("{s} is not a Hurwitz algebra"))
}

fn parse_lambda(s: &str) -> Result<Rat, String> {
    let r = Rat::from_str(s).map_err(|e| format!("{e}"))?;
    if r.is_positive() {
        Ok(r)
    } else {
        Err(format!("λ must be positive, got {s}"))
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Tables { which } => tables(&which.0),
        Command::Construct { square, a1, a2, structure } => construct(*square, a1, a2, *structure),
        Command::Coset { shape, a, b, kind, no_curvature } => {
            let kind = CosetKind::parse(kind, *shape == Shape::Line)?;
            coset(a, b, kind, !no_curvature, &cli.lambda)
        }
        Command::Accounting => accounting(),
        Command::CheckAll => checks::check_all(&cli.lambda),
    }
}

fn tables(kinds: &[TableKind]) -> Result<Outcome, Error> {
    let reports = magic::octonionic_tables(kinds)?;
    let mut out = Outcome::new("tables");
    for r in &reports {
        for c in r.cells.iter().filter(|c| !c.ok) {
            out.fail(Failure::new(
                format!("{}[{},{}]", r.table.name(), c.row, c.column),
                format!("got {:?} (dim {}, χ {}), expected {}", c.label, c.dim, c.chi, c.expected),
            ));
        }
    }
    out.text = reports.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n");
    out.csv = reports.iter().map(|r| format!("# {}\n{}", r.table.name(), r.to_csv())).collect();
    out.json = serde_json::to_value(&reports).expect("table reports serialize");
    Ok(out)
}

fn construct(sig: Signature3, a1: &AlgebraName, a2: &AlgebraName, structure: bool) -> Result<Outcome, Error> {
    let c = magic::cell(a1, a2, sig)?;
    let l = c.algebra();
    let label = octomagic::liealg::identify_real_form(l.dim(), c.chi()).ok();
    let cal = magic::calibration();
    let mut out = Outcome::new("construct");
    let grading = c.tits.grading_holds();
    if !grading {
        out.fail(Failure::new("grading", "[der, tensor] ⊄ tensor".into()));
    }
    let mut json = serde_json::json!({
        "cell": c.tits.name(),
        "dim": l.dim(),
        "killing": { "plus": c.signature.plus, "minus": c.signature.minus, "zero": c.signature.zero },
        "chi": c.chi(),
        "label": label.as_ref().map(|x| x.name.clone()),
        "jacobi": true,
        "grading": grading,
        "coefficients": cal.coefficients,
        "convention_hash": magic::convention_hash(),
        "segments": l.segments().iter().map(|s| serde_json::json!({"name": s.name, "start": s.start, "len": s.len})).collect::<Vec<_>>(),
    });
    if structure {
        json["structure"] = l.export_json();
    }
    out.text = format!(
        "{}: dim {}, Killing ({}, {}, {}), χ {}, {}\nJacobi exact: yes\ncoefficients α = {}, μ = {}, γ = {}\n",
        c.tits.name(),
        l.dim(),
        c.signature.plus,
        c.signature.minus,
        c.signature.zero,
        c.chi(),
        label.as_ref().map_or("unidentified".to_string(), |x| x.name.clone()),
        cal.coefficients.alpha,
        cal.coefficients.mu,
        cal.coefficients.gamma
    );
    out.csv = format!(
        "cell,dim,plus,minus,chi,label\n{},{},{},{},{},{}\n",
        c.tits.name(),
        l.dim(),
        c.signature.plus,
        c.signature.minus,
        c.chi(),
        label.map_or(String::new(), |x| x.name)
    );
    out.json = json;
    Ok(out)
}

fn coset(a: &AlgebraName, b: &AlgebraName, kind: CosetKind, curvature: bool, lambda: &Rat) -> Result<Outcome, Error> {
    let cs = rosenfeld::coset(a, b, kind)?;
    let mut out = Outcome::new("coset");
    if let Err(e) = cs.verify() {
        out.fail(Failure::new(cs.name(), e.to_string()));
    }
    let mut json = cs.report();
    let ideals = cs.k_ideals()?;
    json["k_ideals"] = serde_json::to_value(&ideals).expect("ideals serialize");
    if curvature {
        let r = cs.curvature(lambda)?;
        let bianchi = r.bianchi_failure();
        let pair = r.pair_exchange_failure();
        if let Some(t) = bianchi {
            out.fail(Failure::new("bianchi", format!("fails on {t:?}")));
        }
        if let Some(t) = pair {
            out.fail(Failure::new("pair-exchange", format!("fails on {t:?}")));
        }
        json["curvature"] = serde_json::json!({
            "lambda": lambda,
            "bianchi": bianchi.is_none(),
            "pair_exchange": pair.is_none(),
        });
    }
    let t = cs.tangent();
    out.text = format!(
        "{}: g {} (dim {}, χ {}), dim k {} = {}, tangent {} = ({} nc, {} c), χ_m {}\nchecks: {}\n",
        cs.name(),
        cs.g.label.as_deref().unwrap_or("unidentified"),
        cs.g.dim,
        cs.g.chi,
        cs.k.dim(),
        ideals.iter().map(|p| format!("({}, {})", p.dim, p.chi)).collect::<Vec<_>>().join(" ⊕ "),
        t.dim,
        t.nc,
        t.c,
        t.chi,
        serde_json::to_string(&json["checks"]).unwrap_or_default()
    );
    out.csv = format!(
        "name,g,g_dim,g_chi,k_dim,tangent_dim,nc,c,chi\n{},{},{},{},{},{},{},{},{}\n",
        cs.name(),
        cs.g.label.as_deref().unwrap_or(""),
        cs.g.dim,
        cs.g.chi,
        cs.k.dim(),
        t.dim,
        t.nc,
        t.c,
        t.chi
    );
    out.json = json;
    Ok(out)
}

fn accounting() -> Result<Outcome, Error> {
    let rows = rosenfeld::accounting_suite()?;
    let mut out = Outcome::new("accounting");
    let mut text = String::new();
    let mut csv = String::from("name,g,k,nc,c,chi,expected_nc,expected_c,ok\n");
    for r in &rows {
        if !r.ok {
            out.fail(Failure::new(r.name.clone(), format!("got ({}, {}), expected {:?}", r.nc, r.c, r.expected)));
        }
        text.push_str(&format!("{:<8} {}/{}: nc {}, c {}, χ {}\n", r.name, r.g, r.k.join("⊗"), r.nc, r.c, r.chi));
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.name,
            r.g,
            r.k.join("+"),
            r.nc,
            r.c,
            r.chi,
            r.expected.0,
            r.expected.1,
            r.ok
        ));
    }
    out.text = text;
    out.csv = csv;
    out.json = serde_json::to_value(&rows).expect("accounting rows serialize");
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("cannot configure {n} workers: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(outcome) => outcome.emit(cli.format, cli.output.as_deref()),
        Err(e) => {
            let code = match e {
                Error::Invalid(_) | Error::UnknownAlgebra(_) => 2,
                _ => 1,
            };
            let mut out = Outcome::new("error");
            out.fail(Failure::new("error", e.to_string()));
            out.emit_manifest();
            ExitCode::from(code)
        }
    }
}

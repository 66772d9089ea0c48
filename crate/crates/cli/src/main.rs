use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dilate_core::algebra::catalog::VariableCatalog;
use dilate_core::algebra::ideal::initial_ideal_generators;
use dilate_core::algebra::order::MonomialOrder;
use dilate_core::families::{self, check_budget, generate_g, sufficiency_pipeline, DEFAULT_BUDGET};
use dilate_core::family::{
    build_simplex, default_depth, idp_check, idp_failure_witness, w_points, FamilyParams,
};
use dilate_core::obstruction::{build_certificate, check_certificate, ObstructionCertificate};
use dilate_core::triangulation::{complex_from_initial_ideal, triangulation_json, verify_triangulation};
use dilate_core::Error;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "dilate", version, about = "Exact computations on dilated empty simplices P(a, m)")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the output here instead of standard output.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,

    /// Refuse instances with k·C(3k−1, k) above this value.
    #[arg(long, env = "DILATE_BUDGET", default_value_t = DEFAULT_BUDGET, global = true)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Family index k ≥ 2; P has dimension 2k−1.
    #[arg(short = 'k')]
    k: usize,
    /// Normalized volume of P.
    #[arg(short = 'm')]
    m: i64,
    /// a₁,…,a_{k−1} (comma separated or repeated); defaults to all ones.
    #[arg(short = 'a', value_delimiter = ',', allow_negative_numbers = true)]
    a: Vec<i64>,
}

impl ParamArgs {
    fn params(&self) -> Result<FamilyParams, Error> {
        let a = if self.a.is_empty() {
            vec![1; self.k.saturating_sub(1)]
        } else {
            self.a.clone()
        };
        Ok(FamilyParams::normalized(self.k, self.m, a)?.0)
    }
}

#[derive(Args, Debug, Clone)]
struct UnitArgs {
    /// Family index k ≥ 2; P has dimension 2k−1.
    #[arg(short = 'k')]
    k: usize,
    /// Normalized volume of P.
    #[arg(short = 'm')]
    m: i64,
    /// Highest degree compared in the Hilbert-function check.
    #[arg(long, default_value_t = 3)]
    maxdeg: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertices, δ-polynomial, normalized volume and box points of P.
    Simplex(ParamArgs),
    /// Lattice points of the dilation nP.
    Points {
        #[command(flatten)]
        params: ParamArgs,
        /// Dilation factor (defaults to k).
        #[arg(short = 'n')]
        n: Option<i64>,
    },
    /// Integer decomposition property of nP for n = 1, …, max-n.
    Idp {
        #[command(flatten)]
        params: ParamArgs,
        /// Largest dilation factor checked (defaults to k + 1).
        #[arg(long)]
        max_n: Option<i64>,
        /// Levels checked (defaults to d − 1).
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Verify the explicit Gröbner basis for P(1,…,1,m) and its triangulation.
    Gb {
        #[command(flatten)]
        unit: UnitArgs,
        /// Include the binomial family in the output.
        #[arg(long)]
        emit_family: bool,
    },
    /// Export the regular unimodular triangulation of kP(1,…,1,m).
    Triangulate(UnitArgs),
    /// Build an obstruction certificate (some 2 ≤ aⱼ ≤ m−2).
    Obstruct(ParamArgs),
    /// Re-check a certificate produced by `obstruct --format json`.
    VerifyCertificate {
        /// Certificate file, or `-` for standard input.
        path: PathBuf,
    },
}

/// Outcome of a command: its report and whether the mathematical claim held.
struct Outcome {
    json: Value,
    text: String,
    success: bool,
}

fn envelope(command: &str, body: Value) -> Value {
    let mut v = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Some(obj), Value::Object(extra)) = (v.as_object_mut(), body) {
        obj.extend(extra);
    }
    v
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn params_json(p: &FamilyParams) -> Value {
    json!({ "k": p.k(), "m": p.m(), "a": p.a() })
}

fn run_simplex(args: &ParamArgs) -> Result<Outcome, Error> {
    let p = args.params()?;
    let s = build_simplex(&p)?;
    let delta = s.delta_polynomial()?;
    let vol = s.normalized_volume();
    let ws = w_points(&p);
    let json = envelope(
        "simplex",
        json!({
            "params": params_json(&p),
            "dimension": p.dim(),
            "vertices": s.vertices(),
            "delta": delta.coeffs,
            "normalized_volume": vol.to_string(),
            "w_points": ws,
        }),
    );
    let mut text = format!("P{:?} with m = {} in dimension {}\n", p.a(), p.m(), p.dim());
    for (i, v) in s.vertices().iter().enumerate() {
        text += &format!("  v{i} = {v}\n");
    }
    text += &format!("δ = {delta}\nnormalized volume = {vol}\n");
    for (i, w) in ws.iter().enumerate() {
        text += &format!("  w{} = {w}\n", i + 1);
    }
    Ok(Outcome { json, text, success: true })
}

fn run_points(args: &ParamArgs, n: Option<i64>) -> Result<Outcome, Error> {
    let p = args.params()?;
    let n = n.unwrap_or(p.k() as i64);
    let pts = build_simplex(&p)?.enumerate_dilation_points(n)?;
    let json = envelope(
        "points",
        json!({ "params": params_json(&p), "n": n, "count": pts.len(), "points": pts }),
    );
    let mut text = format!("{} lattice points in {n}P\n", pts.len());
    for q in &pts {
        text += &format!("  {q}\n");
    }
    Ok(Outcome { json, text, success: true })
}

fn run_idp(args: &ParamArgs, max_n: Option<i64>, depth: Option<usize>, budget: u64) -> Result<Outcome, Error> {
    let p = args.params()?;
    check_budget(p.k(), budget)?;
    let k = p.k() as i64;
    let max_n = max_n.unwrap_or(k + 1);
    let depth = depth.unwrap_or_else(|| default_depth(p.dim()));
    let s = build_simplex(&p)?;
    let mut rows = Vec::new();
    let mut text = format!("IDP of nP (levels up to {depth})\n");
    let mut consistent = true;
    for n in 1..=max_n {
        log::info!("checking n = {n}");
        let out = idp_check(&s, n, depth)?;
        let witness = if n < k {
            Some(idp_failure_witness(&p, n as usize)?)
        } else {
            None
        };
        consistent &= out.holds == (n >= k);
        text += &format!(
            "  n = {n}: {}{}\n",
            if out.holds { "IDP" } else { "not IDP" },
            witness.as_ref().map(|w| format!(" (witness {w})")).unwrap_or_default()
        );
        rows.push(json!({
            "n": n,
            "idp": out.holds,
            "failure": out.failure.map(|(level, pt)| json!({ "level": level, "point": pt })),
            "witness": witness,
        }));
    }
    text += &format!("threshold n ≥ k = {k}: {}\n", if consistent { "confirmed" } else { "contradicted" });
    let json = envelope(
        "idp",
        json!({ "params": params_json(&p), "depth": depth, "threshold": k, "rows": rows, "threshold_confirmed": consistent }),
    );
    Ok(Outcome { json, text, success: consistent })
}

fn run_gb(args: &UnitArgs, emit_family: bool, budget: u64) -> Result<Outcome, Error> {
    let report = sufficiency_pipeline(args.k, args.m, args.maxdeg, budget)?;
    let mut body = json!({
        "params": { "k": args.k, "m": args.m, "a": vec![1; args.k - 1] },
        "verdict": report.verdict(),
        "report": report,
    });
    if emit_family {
        let family = generate_g(args.k, args.m)?;
        let cat = VariableCatalog::new(&family.params);
        body["family"] = to_value(&family.to_json(&cat));
    }
    let mut text = String::new();
    for s in &report.stages {
        text += &format!(
            "{:<16} {}  {}{}\n",
            s.stage,
            if s.passed { "ok  " } else { "FAIL" },
            s.detail,
            s.witness.as_ref().map(|w| format!("\n    witness: {w}")).unwrap_or_default()
        );
    }
    text += &report.verdict();
    text.push('\n');
    Ok(Outcome {
        json: envelope("gb", body),
        text,
        success: report.certified,
    })
}

fn run_triangulate(args: &UnitArgs, budget: u64) -> Result<Outcome, Error> {
    let report = sufficiency_pipeline(args.k, args.m, args.maxdeg, budget)?;
    if !report.certified {
        let text = format!("{}\n", report.verdict());
        return Ok(Outcome {
            json: envelope("triangulate", json!({ "verdict": report.verdict(), "report": report })),
            text,
            success: false,
        });
    }
    let family = generate_g(args.k, args.m)?;
    let cat = VariableCatalog::new(&family.params);
    let order = MonomialOrder::composite(&cat);
    let leads = initial_ideal_generators(&families::canonical_members(&family, &order), &order);
    let complex = complex_from_initial_ideal(&leads, &cat)?;
    let tri = verify_triangulation(&complex)?;
    let export = triangulation_json(&complex, &tri);
    let mut text = format!(
        "{} unimodular cells, total volume {} (expected {})\n",
        tri.cells, tri.total_volume, tri.expected_volume
    );
    for cell in &export.cells {
        let pts: Vec<String> = cell.iter().map(|p| p.to_string()).collect();
        text += &format!("  {}\n", pts.join(" "));
    }
    let success = tri.passed();
    Ok(Outcome {
        json: envelope(
            "triangulate",
            json!({ "params": { "k": args.k, "m": args.m }, "cells": export.cells, "summary": export.summary }),
        ),
        text,
        success,
    })
}

fn certificate_text(cert: &ObstructionCertificate) -> String {
    let mut text = format!("no regular unimodular triangulation of {}P{:?}, m = {}\n", cert.k, cert.a, cert.m);
    for d in &cert.second_differences {
        text += &format!("  i = {}: w* = {}, v = {}, v′ = {}\n", d.i, d.w_star, d.v, d.v_prime);
    }
    let iw = &cert.inverse_difference;
    text += &format!(
        "  a = {}, a′ = {}: w** = {}, u = {}, u′ = {}\n",
        iw.a, iw.a_prime, iw.w_double_star, iw.u, iw.u_prime
    );
    for l in &cert.chain {
        text += &format!("  class {} is below one of {:?}\n", l.class, l.larger_candidates);
    }
    let cycle: Vec<String> = cert.cycle.iter().map(|c| c.to_string()).collect();
    text += &format!("  cycle: {}\n", cycle.join(" → "));
    text
}

fn run_obstruct(args: &ParamArgs, budget: u64) -> Result<Outcome, Error> {
    let p = args.params()?;
    check_budget(p.k(), budget)?;
    let cert = build_certificate(&p)?;
    let check = check_certificate(&cert)?;
    let text = certificate_text(&cert);
    Ok(Outcome {
        json: envelope(
            "obstruct",
            json!({ "params": params_json(&p), "certificate": cert, "check": check }),
        ),
        text,
        success: check.valid(),
    })
}

fn run_verify(path: &PathBuf) -> Result<Outcome, Error> {
    let mut raw = String::new();
    if path.as_os_str() == "-" {
        io::stdin()
            .read_to_string(&mut raw)
            .map_err(|e| Error::Parse(e.to_string()))?;
    } else {
        raw = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    let value: Value = serde_json::from_str(&raw).map_err(|e| Error::Parse(e.to_string()))?;
    let cert_value = value.get("certificate").cloned().unwrap_or(value);
    let cert: ObstructionCertificate =
        serde_json::from_value(cert_value).map_err(|e| Error::Parse(e.to_string()))?;
    let check = check_certificate(&cert)?;
    let mut text = if check.valid() {
        format!(
            "certificate valid ({} binomials, {} decomposition targets)\n",
            check.checked_binomials, check.checked_targets
        )
    } else {
        "certificate INVALID\n".to_string()
    };
    for f in &check.failures {
        text += &format!("  {f}\n");
    }
    Ok(Outcome {
        json: envelope("verify-certificate", json!({ "valid": check.valid(), "check": check })),
        text,
        success: check.valid(),
    })
}

fn execute(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Simplex(a) => run_simplex(a),
        Command::Points { params, n } => run_points(params, *n),
        Command::Idp { params, max_n, depth } => run_idp(params, *max_n, *depth, cli.budget),
        Command::Gb { unit, emit_family } => run_gb(unit, *emit_family, cli.budget),
        Command::Triangulate(u) => run_triangulate(u, cli.budget),
        Command::Obstruct(a) => run_obstruct(a, cli.budget),
        Command::VerifyCertificate { path } => run_verify(path),
    }
}

fn write_output(cli: &Cli, outcome: &Outcome) -> io::Result<()> {
    let mut body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("JSON values serialize"),
        Format::Text => outcome.text.trim_end().to_string(),
    };
    body.push('\n');
    match &cli.output {
        Some(path) => fs::write(path, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(outcome) => {
            if let Err(e) = write_output(&cli, &outcome) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

//! Command-line surface: catalog browsing, jet dumps, minimal-polynomial
//! runs, Singer bounds, and the numeric crosscheck. Exit codes: 0 pass,
//! 1 usage error, 2 rational-only coefficients, 3 degree bound exceeded,
//! 4 crosscheck tolerance failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cmpoly::dynamics::{frobenius, Dynamics, Mat};
use cmpoly::exactalg::{parse_rat, PolyLambda, Rational};
use cmpoly::jets::JetSequence;
use cmpoly::liegroup::{
    catalog_entries, curvature_derivatives, koszul, load_space_file, parse_space,
    LiePresentation,
};
use cmpoly::minpoly::{
    c0_witness, divides, min_poly, pointwise_min_poly, ricci_diagnostics, root_structure,
    MinPolyError, MinPolyOutcome,
};
use cmpoly::report;
use cmpoly::singer::singer_invariant;

const EXIT_USAGE: u8 = 1;
const EXIT_RATIONAL_ONLY: u8 = 2;
const EXIT_BOUND_EXCEEDED: u8 = 3;
const EXIT_TOLERANCE: u8 = 4;

const ORDER_TOL: f64 = 1e-5;
const KILLING_TOL: f64 = 1e-8;
const CONJUGATION_TOL: f64 = 1e-6;

#[derive(Parser)]
#[command(name = "cmpoly", version, about = "Minimal polynomials of curvature jet sequences")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Catalog name (e.g. heisenberg3, su2_berger(1/2)) or a space-file path.
    #[arg(long)]
    space: String,
    /// RNG seed; CMPOLY_SEED overrides the default.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 64)]
    samples: usize,
    /// Degree bound; defaults to n(n+1)/2.
    #[arg(long)]
    max_k: Option<usize>,
    /// Write the record here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct CrosscheckOpts {
    /// Integration step.
    #[arg(long, default_value_t = 1e-3)]
    h: f64,
    /// Base step for the central differences.
    #[arg(long, default_value_t = 1e-2)]
    base_h: f64,
    #[arg(long, default_value_t = 1.0)]
    t_end: f64,
    /// Initial velocity as rationals "a,b,c"; default e_1 + e_n.
    #[arg(long)]
    direction: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the built-in spaces.
    Catalog,
    /// Dump the symbolic jets R^0..R^K.
    Jets {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value_t = 3)]
        max_order: usize,
    },
    /// Detect k, reconstruct and certify the minimal polynomial, run the
    /// exact diagnostics.
    Minpoly {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Minimal polynomial at a single direction.
    Pointwise {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        direction: String,
    },
    /// Stabilizer chain and the Singer-style bound.
    Singer {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Numeric cross-validation of the symbolic jets.
    Crosscheck {
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        check: CrosscheckOpts,
    },
    /// Full pipeline: minpoly diagnostics plus the crosscheck.
    All {
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        check: CrosscheckOpts,
    },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("cmpoly: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn resolve_space(spec: &str) -> Result<LiePresentation, String> {
    if Path::new(spec).is_file() {
        return load_space_file(Path::new(spec)).map_err(|e| e.to_string());
    }
    parse_space(spec).map_err(|e| e.to_string())
}

fn effective_seed(opt: Option<u64>) -> u64 {
    opt.or_else(|| std::env::var("CMPOLY_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(42)
}

fn parse_direction(s: &str, n: usize) -> Result<Vec<Rational>, String> {
    let v: Vec<Rational> = s
        .split(',')
        .map(|t| parse_rat(t.trim()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(format!("direction has {} entries, space has dimension {n}", v.len()));
    }
    Ok(v)
}

fn emit(record: &Value, out: Option<&PathBuf>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(record).map_err(|e| e.to_string())?;
    match out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| e.to_string()),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn config_echo(common: &CommonOpts, seed: u64, max_k: usize) -> Value {
    json!({
        "space": common.space,
        "seed": seed,
        "samples": common.samples,
        "max_k": max_k,
    })
}

fn cmd_catalog() -> ExitCode {
    for e in catalog_entries() {
        println!("{:<24} {:<20} {}", e.name, e.signature, e.description);
    }
    ExitCode::SUCCESS
}

fn cmd_jets(common: &CommonOpts, max_order: usize) -> Result<(Value, u8), String> {
    let pres = resolve_space(&common.space)?;
    let seq = JetSequence::from_presentation(&pres).map_err(|e| e.to_string())?;
    let jets: Vec<Value> = (0..=max_order)
        .map(|k| seq.get_jet(k).map(|m| report::jet_dump(&m, k)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let validation = seq.validate(max_order).map_err(|e| e.to_string())?;
    let code = if validation.violations.is_empty() { 0 } else { EXIT_TOLERANCE };
    let body = json!({
        "body": { "jets": jets },
        "diagnostics": { "violations": validation.violations },
    });
    Ok((body, code))
}

/// The minpoly pipeline body plus the exact diagnostics; shared by `minpoly`
/// and `all`.
fn minpoly_body(
    pres: &LiePresentation,
    seq: &JetSequence,
    max_k: usize,
    seed: u64,
    samples: usize,
) -> Result<(Value, u8, Option<cmpoly::minpoly::MinimalPolynomial>), String> {
    match min_poly(seq, max_k, seed, samples) {
        Ok(MinPolyOutcome::Polynomial(mp)) => {
            let k = mp.degree();
            let mut diagnostics = serde_json::Map::new();
            if k > 0 {
                let at = if mp.witness.is_empty() {
                    vec![Rational::from_integer(1.into()); seq.dim()]
                } else {
                    mp.witness.clone()
                };
                let specialized =
                    mp.p.eval_point(&at).map_err(|e| e.to_string())?;
                match root_structure(&specialized, seq.is_positive_definite()) {
                    Ok(rs) => {
                        diagnostics.insert("root_structure".into(), report::root_structure_value(&rs));
                    }
                    Err(MinPolyError::IndefiniteMetric) => {
                        diagnostics.insert("root_structure".into(), json!("refused: indefinite metric"));
                    }
                    Err(e) => return Err(e.to_string()),
                }
            }
            let ricci = ricci_diagnostics(seq, &mp).map_err(|e| e.to_string())?;
            diagnostics.insert("ricci".into(), report::ricci_value(&ricci));
            // Divisibility spot-check: lambda^2 * P stays in the ideal.
            let shifted = PolyLambda::lambda_pow(seq.dim(), 2).mul(&mp.p);
            let div = divides(seq, &shifted, &mp).map_err(|e| e.to_string())?;
            diagnostics.insert("ideal_closure".into(), report::division_value(&div));
            let alpha = koszul(pres).map_err(|e| e.to_string())?;
            let d = curvature_derivatives(pres, &alpha, k + 1);
            let singer = singer_invariant(&d, pres.metric(), k).map_err(|e| e.to_string())?;
            diagnostics.insert("singer".into(), report::singer_value(&singer));
            let body = json!({
                "kind": "minimal_polynomial",
                "minpoly": report::minpoly_value(&mp),
            });
            Ok((json!({ "body": body, "diagnostics": Value::Object(diagnostics) }), 0, Some(mp)))
        }
        Ok(MinPolyOutcome::RationalOnly(rr)) => {
            let body = json!({
                "kind": "rational_relation",
                "relation": report::rational_relation_value(&rr),
            });
            Ok((json!({ "body": body, "diagnostics": {} }), EXIT_RATIONAL_ONLY, None))
        }
        Err(MinPolyError::DegreeBoundExceeded { max_k }) => {
            let body = json!({
                "kind": "degree_bound_exceeded",
                "max_k": max_k,
            });
            Ok((json!({ "body": body, "diagnostics": {} }), EXIT_BOUND_EXCEEDED, None))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_pointwise(common: &CommonOpts, direction: &str, seed: u64, max_k: usize) -> Result<(Value, u8), String> {
    let pres = resolve_space(&common.space)?;
    let seq = JetSequence::from_presentation(&pres).map_err(|e| e.to_string())?;
    let x = parse_direction(direction, seq.dim())?;
    let pw = pointwise_min_poly(&seq, &x).map_err(|e| e.to_string())?;
    let mut diagnostics = serde_json::Map::new();
    if pw.k_x > 0 {
        match root_structure(&pw.p, seq.is_positive_definite()) {
            Ok(rs) => {
                diagnostics.insert("root_structure".into(), report::root_structure_value(&rs));
            }
            Err(MinPolyError::IndefiniteMetric) => {
                diagnostics.insert("root_structure".into(), json!("refused: indefinite metric"));
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    // Divisibility against the global polynomial when it exists.
    if let Ok(MinPolyOutcome::Polynomial(mp)) = min_poly(&seq, max_k, seed, common.samples) {
        let global = mp.p.eval_point(&x).map_err(|e| e.to_string())?;
        let divisible = if pw.p.is_zero() {
            false
        } else {
            global.divmod(&pw.p).map(|(_, r)| r.is_zero()).unwrap_or(false)
        };
        diagnostics.insert("divides_global".into(), json!(divisible));
    }
    let body = json!({ "pointwise": report::pointwise_value(&pw) });
    Ok((json!({ "body": body, "diagnostics": Value::Object(diagnostics) }), 0))
}

fn cmd_singer(common: &CommonOpts, seed: u64, max_k: usize) -> Result<(Value, u8), String> {
    let pres = resolve_space(&common.space)?;
    let seq = JetSequence::from_presentation(&pres).map_err(|e| e.to_string())?;
    let (k, _) = cmpoly::minpoly::generic_degree(&seq, max_k, seed, common.samples)
        .map_err(|e| e.to_string())?;
    let alpha = koszul(&pres).map_err(|e| e.to_string())?;
    let d = curvature_derivatives(&pres, &alpha, k + 1);
    let singer = singer_invariant(&d, pres.metric(), k).map_err(|e| e.to_string())?;
    let code = if singer.bound_holds { 0 } else { EXIT_TOLERANCE };
    let body = json!({ "singer": report::singer_value(&singer) });
    Ok((json!({ "body": body, "diagnostics": {} }), code))
}

fn crosscheck_body(
    pres: &LiePresentation,
    seq: &JetSequence,
    mp: Option<&cmpoly::minpoly::MinimalPolynomial>,
    check: &CrosscheckOpts,
) -> Result<(Value, u8), String> {
    let n = pres.dim();
    let x_rat: Vec<Rational> = match &check.direction {
        Some(s) => parse_direction(s, n)?,
        None => {
            let mut v = vec![Rational::from_integer(0.into()); n];
            v[0] = Rational::from_integer(1.into());
            v[n - 1] = Rational::from_integer(1.into());
            v
        }
    };
    let alpha = koszul(pres).map_err(|e| e.to_string())?;
    let d = curvature_derivatives(pres, &alpha, 0);
    let dynamics = Dynamics::new(pres, &alpha, &d);
    let x_raw: Vec<f64> = x_rat.iter().map(cmpoly::exactalg::rational_to_f64).collect();
    let norm = dynamics.inner(&x_raw, &x_raw).sqrt();
    if norm == 0.0 {
        return Err("crosscheck direction must be nonzero".into());
    }
    let x0: Vec<f64> = x_raw.iter().map(|c| c / norm).collect();

    let mut orders = Vec::new();
    let mut orders_ok = true;
    for order in 1..=3usize {
        let fd = dynamics.finite_difference_jet(&x0, order, check.base_h, check.h);
        let sym = seq.get_jet(order).map_err(|e| e.to_string())?.eval_f64(&x0);
        let scale = frobenius(&sym).max(1.0);
        let diff: Mat = fd
            .iter()
            .zip(&sym)
            .map(|(fr, sr)| fr.iter().zip(sr).map(|(a, b)| a - b).collect())
            .collect();
        let rel = frobenius(&diff) / scale;
        orders_ok &= rel < ORDER_TOL;
        orders.push((order, rel));
    }

    let coefficients: Vec<_> = mp
        .map(|p| (1..=p.degree()).map(|i| p.coefficient(i)).collect())
        .unwrap_or_default();
    let killing_drift = dynamics.killing_drift(&coefficients, &x0, check.t_end, check.h);
    let killing_ok = killing_drift.iter().all(|d| *d < KILLING_TOL);

    let needed_orders = mp.map(|p| p.degree()).unwrap_or(0).max(3);
    let conjugation_residual = match c0_witness(seq, &x_rat, needed_orders) {
        Ok(Some(w)) => {
            // The witness scales linearly with the direction; match the
            // normalized initial velocity.
            let mut cf = w.c.to_f64();
            for row in &mut cf {
                for e in row.iter_mut() {
                    *e /= norm;
                }
            }
            Some(dynamics.conjugation_residual_mat(&x0, &cf, check.t_end, check.h))
        }
        Ok(None) => None,
        Err(e) => return Err(e.to_string()),
    };
    let conj_ok = conjugation_residual.is_none_or(|r| r < CONJUGATION_TOL);

    let path = dynamics.integrate(&x0, check.t_end, check.h);
    let section = report::CrosscheckSection {
        orders,
        killing_drift,
        conjugation_residual,
        h: check.h,
        base_h: check.base_h,
        t_end: check.t_end,
        energy_drift: dynamics.energy_drift(&path),
        transport_drift: dynamics.transport_drift(&path),
    };
    let code = if orders_ok && killing_ok && conj_ok { 0 } else { EXIT_TOLERANCE };
    Ok((report::crosscheck_value(&section), code))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let (common, record, code) = match &cli.cmd {
        Cmd::Catalog => return Ok(cmd_catalog()),
        Cmd::Jets { common, max_order } => {
            let (body, code) = cmd_jets(common, *max_order)?;
            (common.clone(), body, code)
        }
        Cmd::Minpoly { common } => {
            let pres = resolve_space(&common.space)?;
            let seq = JetSequence::from_presentation(&pres).map_err(|e| e.to_string())?;
            let n = pres.dim();
            let seed = effective_seed(common.seed);
            let max_k = common.max_k.unwrap_or(n * (n + 1) / 2);
            let (v, code, _) = minpoly_body(&pres, &seq, max_k, seed, common.samples)?;
            (common.clone(), v, code)
        }
        Cmd::Pointwise { common, direction } => {
            let seed = effective_seed(common.seed);
            let pres = resolve_space(&common.space)?;
            let n = pres.dim();
            let max_k = common.max_k.unwrap_or(n * (n + 1) / 2);
            let (v, code) = cmd_pointwise(common, direction, seed, max_k)?;
            (common.clone(), v, code)
        }
        Cmd::Singer { common } => {
            let seed = effective_seed(common.seed);
            let pres = resolve_space(&common.space)?;
            let n = pres.dim();
            let max_k = common.max_k.unwrap_or(n * (n + 1) / 2);
            let (v, code) = cmd_singer(common, seed, max_k)?;
            (common.clone(), v, code)
        }
        Cmd::Crosscheck { common, check } => {
            let pres = resolve_space(&common.space)?;
            let seq = JetSequence::from_presentation(&pres).map_err(|e| e.to_string())?;
            let n = pres.dim();
            let seed = effective_seed(common.seed);
            let max_k = common.max_k.unwrap_or(n * (n + 1) / 2);
            let mp = match min_poly(&seq, max_k, seed, common.samples) {
                Ok(MinPolyOutcome::Polynomial(p)) => Some(p),
                _ => None,
            };
            let (v, code) = crosscheck_body(&pres, &seq, mp.as_ref(), check)?;
            (common.clone(), json!({ "body": {}, "diagnostics": { "crosscheck": v } }), code)
        }
        Cmd::All { common, check } => {
            let pres = resolve_space(&common.space)?;
            let seq = JetSequence::from_presentation(&pres).map_err(|e| e.to_string())?;
            let n = pres.dim();
            let seed = effective_seed(common.seed);
            let max_k = common.max_k.unwrap_or(n * (n + 1) / 2);
            let (v, mcode, mp) = minpoly_body(&pres, &seq, max_k, seed, common.samples)?;
            let (cv, ccode) = crosscheck_body(&pres, &seq, mp.as_ref(), check)?;
            let mut merged = v.clone();
            merged["diagnostics"]["crosscheck"] = cv;
            (common.clone(), merged, mcode.max(ccode))
        }
    };
    let seed = effective_seed(common.seed);
    let pres = resolve_space(&common.space)?;
    let n = pres.dim();
    let max_k = common.max_k.unwrap_or(n * (n + 1) / 2);
    let full = report::result_record(
        pres.name(),
        config_echo(&common, seed, max_k),
        record["body"].clone(),
        record["diagnostics"].clone(),
    );
    emit(&full, common.out.as_ref())?;
    Ok(ExitCode::from(code))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Help/version are not usage errors.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => fail(msg),
    }
}

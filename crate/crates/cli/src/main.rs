//! `nadiv` — construct, check and classify finite-dimensional real
//! nonassociative algebras from the command line.
//!
//! Reports are printed to stdout as JSON (byte-identical across runs with
//! the same inputs and seed, except the timing field); a human summary goes
//! to stderr. Exit codes: 0 success, 2 a verdict violation was found,
//! 1 usage error.

mod dsl;
mod files;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use nadiv_core::algebra::Identity;
use nadiv_core::division::{self, DivisionStatus};
use nadiv_core::{classify, constructions, lie};
use nalgebra::DVector;
use serde::Serialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(name = "nadiv", version, about = "workbench for real nonassociative division algebras")]
struct Cli {
    /// Seed for all sampled checks (falls back to NADIV_SEED, then 42).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build an algebra from a construction expression and write it to a file.
    New {
        /// Construction expression, e.g. `mut(H,0.75)` or `gcd(H,-1,0.8,0,1,0)`.
        expr: String,
        /// Output algebra file (JSON).
        #[arg(long)]
        out: PathBuf,
    },
    /// Check polynomial identities on an algebra file.
    Check {
        file: PathBuf,
        /// `all` or a comma-separated list of identity names.
        #[arg(long, default_value = "all")]
        identities: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Probe linear division numerically; dispatch a closed-form criterion
    /// when the provenance matches a parametric family.
    Division {
        file: PathBuf,
        #[arg(long, default_value_t = 20000)]
        samples: usize,
        /// `auto` enables the closed-form dispatch, `off` disables it.
        #[arg(long, default_value = "auto")]
        criterion: String,
    },
    /// Derivation Lie algebra: basis, dimension, label.
    Der {
        file: PathBuf,
        /// Also decompose the algebra into minimal invariant subspaces.
        #[arg(long)]
        modules: bool,
    },
    /// Compare invariant vectors; optionally verify an isomorphism witness.
    Compare {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Matrix file with a candidate isomorphism.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Reduce an eight-dimensional noncommutative Jordan division algebra
    /// to the sixteen-parameter table.
    Canonical { file: PathBuf },
    /// Build an octonion isotope O(s) from a spectrum and test whether its
    /// automorphism group can be nontrivial.
    Auttest {
        /// Seven positive eigenvalues, comma separated.
        #[arg(long)]
        spectrum: Option<String>,
        /// Symmetric positive definite 7x7 matrix file for s.
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Eigenvector frame for `--spectrum`: `rotated` (the trivial-Aut
        /// construction) or `canonical`.
        #[arg(long, default_value = "rotated")]
        basis: String,
    },
}

#[derive(Serialize)]
struct Report {
    command: String,
    seed: u64,
    checks: Vec<Value>,
    timing_ms: f64,
}

fn emit(report: &Report, summary: &[String]) {
    println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
    for line in summary {
        eprintln!("{line}");
    }
}

fn resolve_seed(cli: &Cli) -> u64 {
    if let Some(s) = cli.seed {
        return s;
    }
    if let Ok(v) = std::env::var("NADIV_SEED") {
        if let Ok(s) = v.parse() {
            return s;
        }
    }
    nadiv_core::DEFAULT_SEED
}

fn command_echo() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    args.join(" ")
}

fn element_json(v: &DVector<f64>) -> Value {
    Value::Array(v.iter().map(|x| json!(x)).collect())
}

fn matrix_json(m: &nalgebra::DMatrix<f64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|r| Value::Array((0..m.ncols()).map(|c| json!(m[(r, c)])).collect()))
            .collect(),
    )
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: &Cli) -> Result<i32> {
    let seed = resolve_seed(cli);
    let start = Instant::now();
    match &cli.cmd {
        Cmd::New { expr, out } => cmd_new(expr, out, seed, start),
        Cmd::Check { file, identities, samples } => cmd_check(file, identities, *samples, seed, start),
        Cmd::Division { file, samples, criterion } => {
            cmd_division(file, *samples, criterion, seed, start)
        }
        Cmd::Der { file, modules } => cmd_der(file, *modules, seed, start),
        Cmd::Compare { file_a, file_b, witness } => {
            cmd_compare(file_a, file_b, witness.as_deref(), seed, start)
        }
        Cmd::Canonical { file } => cmd_canonical(file, seed, start),
        Cmd::Auttest { spectrum, matrix, basis } => {
            cmd_auttest(spectrum.as_deref(), matrix.as_deref(), basis, seed, start)
        }
    }
}

fn cmd_new(expr: &str, out: &Path, seed: u64, start: Instant) -> Result<i32> {
    let parsed = dsl::parse(expr)?;
    let base = std::env::current_dir().context("cannot resolve current directory")?;
    let a = dsl::build(&parsed, &base)?.with_provenance(expr.trim());
    std::fs::write(out, files::write_algebra_file(&a))
        .with_context(|| format!("cannot write {}", out.display()))?;
    let report = Report {
        command: command_echo(),
        seed,
        checks: vec![json!({
            "name": "new",
            "expr": expr,
            "dim": a.dim(),
            "basis": a.basis_labels(),
            "out": out.display().to_string(),
        })],
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    emit(&report, &[format!("wrote {} (dim {})", out.display(), a.dim())]);
    Ok(0)
}

fn parse_identities(spec: &str) -> Result<Vec<Identity>> {
    if spec == "all" {
        return Ok(Identity::ALL.to_vec());
    }
    spec.split(',')
        .map(|s| s.trim().parse::<Identity>().map_err(|e| anyhow!(e)))
        .collect()
}

fn cmd_check(file: &Path, identities: &str, samples: usize, seed: u64, start: Instant) -> Result<i32> {
    let a = files::read_algebra(file)?;
    let list = parse_identities(identities)?;
    let mut checks = Vec::new();
    let mut summary = Vec::new();
    let mut violation = false;
    for id in list {
        let rep = a.check_identity(id, samples, seed)?;
        let witness = rep.witness.as_ref().map(|w| {
            json!({
                "args": w.args.iter().map(element_json).collect::<Vec<_>>(),
                "residual": w.residual,
            })
        });
        if !rep.holds {
            violation = true;
        }
        summary.push(format!("{}: {}", id.name(), if rep.holds { "holds" } else { "FAILS" }));
        checks.push(json!({
            "name": id.name(),
            "verdict": rep.holds,
            "witness": witness,
        }));
    }
    let report =
        Report { command: command_echo(), seed, checks, timing_ms: start.elapsed().as_secs_f64() * 1e3 };
    emit(&report, &summary);
    Ok(if violation { 2 } else { 0 })
}

fn cmd_division(file: &Path, samples: usize, criterion: &str, seed: u64, start: Instant) -> Result<i32> {
    let a = files::read_algebra(file)?;
    let numeric = division::zero_divisor_search(&a, samples, seed)?;
    let closed = if criterion == "auto" {
        a.provenance()
            .and_then(|p| dsl::parse(p).ok())
            .and_then(|e| dsl::closed_form_division(&e))
    } else {
        None
    };
    let agreement = match (closed, numeric.status) {
        (Some(c), DivisionStatus::Division) => Some(c),
        (Some(c), DivisionStatus::NotDivision) => Some(!c),
        _ => None,
    };
    let claimed = numeric.status == DivisionStatus::Division || closed == Some(true);
    let gate = division::hopf_gate(&a, claimed);
    let mut summary = vec![format!(
        "numeric: {}",
        match numeric.status {
            DivisionStatus::Division => "division",
            DivisionStatus::NotDivision => "not division (certificate attached)",
            DivisionStatus::Indeterminate => "indeterminate",
        }
    )];
    if let Some(c) = closed {
        summary.push(format!("closed form: {}", if c { "division" } else { "not division" }));
    }
    if agreement == Some(false) {
        summary.push("WARNING: closed-form and numeric verdicts disagree".into());
    }
    if let Some(g) = &gate {
        summary.push(format!("WARNING: {g}"));
    }
    let checks = vec![json!({
        "name": "division",
        "numeric": serde_json::to_value(&numeric)?,
        "closed_form": closed,
        "agreement": agreement,
        "hopf_gate": gate,
    })];
    let report =
        Report { command: command_echo(), seed, checks, timing_ms: start.elapsed().as_secs_f64() * 1e3 };
    emit(&report, &summary);
    let violation =
        numeric.status == DivisionStatus::NotDivision || agreement == Some(false) || gate.is_some();
    Ok(if violation { 2 } else { 0 })
}

fn cmd_der(file: &Path, modules: bool, seed: u64, start: Instant) -> Result<i32> {
    let a = files::read_algebra(file)?;
    let d = lie::derivation_basis(&a);
    let n2 = a.dim() * a.dim();
    let rank_gap = if d.dim > 0 && d.dim < n2 {
        Some(d.singular_values[n2 - d.dim - 1] / d.singular_values[n2 - d.dim].max(1e-300))
    } else {
        None
    };
    let module_dims = if modules && d.dim >= 1 {
        Some(lie::der_module_decomposition(&a, &d, seed)?)
    } else {
        None
    };
    let checks = vec![json!({
        "name": "derivations",
        "dim": d.dim,
        "label": d.label.name(),
        "closure_residual": d.closure_residual,
        "rank_gap": rank_gap,
        "module_dims": module_dims,
        "basis": d.basis.iter().map(matrix_json).collect::<Vec<_>>(),
    })];
    let mut summary = vec![format!("Der dimension {} ({})", d.dim, d.label.name())];
    if let Some(m) = &module_dims {
        summary.push(format!("module decomposition: {m:?}"));
    }
    let report =
        Report { command: command_echo(), seed, checks, timing_ms: start.elapsed().as_secs_f64() * 1e3 };
    emit(&report, &summary);
    Ok(0)
}

fn cmd_compare(
    file_a: &Path,
    file_b: &Path,
    witness: Option<&Path>,
    seed: u64,
    start: Instant,
) -> Result<i32> {
    let a = files::read_algebra(file_a)?;
    let b = files::read_algebra(file_b)?;
    let ia = classify::invariants(&a, seed)?;
    let ib = classify::invariants(&b, seed)?;
    let outcome = classify::compare_invariants(&ia, &ib);
    let witness_result = match witness {
        Some(path) => {
            let f = files::read_matrix(path)?;
            Some(classify::verify_iso_witness(&a, &b, &f))
        }
        None => None,
    };
    let mut summary = vec![match &outcome {
        classify::Comparison::Compatible => "compatible (not a proof of isomorphism)".to_string(),
        classify::Comparison::Distinguished { reason } => format!("distinguished: {reason}"),
    }];
    if let Some(ok) = witness_result {
        summary.push(format!("witness: {}", if ok { "verified" } else { "REJECTED" }));
    }
    let checks = vec![json!({
        "name": "compare",
        "outcome": serde_json::to_value(&outcome)?,
        "witness_verified": witness_result,
        "invariants_a": serde_json::to_value(&ia)?,
        "invariants_b": serde_json::to_value(&ib)?,
    })];
    let report =
        Report { command: command_echo(), seed, checks, timing_ms: start.elapsed().as_secs_f64() * 1e3 };
    emit(&report, &summary);
    let violation = matches!(outcome, classify::Comparison::Distinguished { .. })
        || witness_result == Some(false);
    Ok(if violation { 2 } else { 0 })
}

fn cmd_canonical(file: &Path, seed: u64, start: Instant) -> Result<i32> {
    let a = files::read_algebra(file)?;
    match classify::canonical_table1_reduction(&a, seed) {
        Ok(red) => {
            let p = red.params;
            let checks = vec![json!({
                "name": "canonical_reduction",
                "status": "ok",
                "params": {
                    "a": p.a, "b": p.b, "c": p.c,
                    "alpha": p.alpha, "beta": p.beta, "gamma": p.gamma, "mu": p.mu,
                    "lambda": p.lambda, "eta": p.eta, "sigma": p.sigma, "delta": p.delta,
                    "nu": p.nu, "pi": p.pi, "rho": p.rho, "theta": p.theta, "omega": p.omega,
                },
                "division_criterion": division::table1_division_criterion(&p).ok(),
                "basis_change": matrix_json(&red.columns),
                "residual": red.residual,
            })];
            let report = Report {
                command: command_echo(),
                seed,
                checks,
                timing_ms: start.elapsed().as_secs_f64() * 1e3,
            };
            emit(&report, &[format!("reduced to table parameters (residual {:.3e})", red.residual)]);
            Ok(0)
        }
        Err(e) => {
            let checks = vec![json!({
                "name": "canonical_reduction",
                "status": "failed",
                "reason": e.to_string(),
            })];
            let report = Report {
                command: command_echo(),
                seed,
                checks,
                timing_ms: start.elapsed().as_secs_f64() * 1e3,
            };
            emit(&report, &[format!("reduction failed: {e}")]);
            Ok(2)
        }
    }
}

fn cmd_auttest(
    spectrum: Option<&str>,
    matrix: Option<&Path>,
    basis: &str,
    seed: u64,
    start: Instant,
) -> Result<i32> {
    let (eigvecs, eigvals, s) = match (spectrum, matrix) {
        (Some(spec), None) => {
            let vals: Vec<f64> = spec
                .split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|_| anyhow!("bad eigenvalue `{t}`")))
                .collect::<Result<_>>()?;
            if vals.len() != 7 {
                bail!("--spectrum needs exactly 7 eigenvalues, got {}", vals.len());
            }
            let frame = match basis {
                "rotated" => constructions::rotated_vector_frame(),
                "canonical" => nalgebra::DMatrix::identity(7, 7),
                other => bail!("unknown --basis `{other}` (use rotated or canonical)"),
            };
            let s = constructions::symmetric_from_spectrum(&frame, &vals)?;
            let vecs: Vec<DVector<f64>> = (0..7).map(|i| frame.column(i).into()).collect();
            (vecs, vals, s)
        }
        (None, Some(path)) => {
            let s = files::read_matrix(path)?;
            if s.nrows() != 7 || s.ncols() != 7 || (&s - s.transpose()).norm() > 1e-9 {
                bail!("--matrix must be a symmetric 7x7 matrix");
            }
            let es = s.clone().symmetric_eigen();
            let mut order: Vec<usize> = (0..7).collect();
            order.sort_by(|&i, &j| es.eigenvalues[i].partial_cmp(&es.eigenvalues[j]).unwrap());
            let vals: Vec<f64> = order.iter().map(|&i| es.eigenvalues[i]).collect();
            let vecs: Vec<DVector<f64>> =
                order.iter().map(|&i| es.eigenvectors.column(i).into()).collect();
            (vecs, vals, s)
        }
        _ => bail!("provide exactly one of --spectrum or --matrix"),
    };

    let triple = lie::stabilized_quaternion_triple(&eigvecs, &eigvals)?;
    let o = constructions::canonical("O")?;
    let os = constructions::vector_isotope(&o, &s)?;
    let der = lie::derivation_basis(&os);
    let trivial = triple.is_none() && der.dim == 0;
    let verdict = if let Some(t) = triple {
        format!(
            "eigenvector triple ({},{},{}) spans a cross-product-closed subspace; a stable quaternion subalgebra exists and Aut(O(s)) is nontrivial",
            t[0], t[1], t[2]
        )
    } else if trivial {
        "no stabilized quaternion subalgebra among all 35 eigenvector triples; Der(O(s)) = 0; Aut(O(s)) is trivial by the stable-subalgebra criterion".to_string()
    } else {
        "no stabilized quaternion subalgebra, but the derivation algebra is nonzero".to_string()
    };
    let checks = vec![json!({
        "name": "auttest",
        "spectrum": eigvals,
        "stabilized_triple": triple.map(|t| vec![t[0], t[1], t[2]]),
        "der_dim": der.dim,
        "der_label": der.label.name(),
        "aut_trivial": trivial,
        "verdict": verdict,
    })];
    let report =
        Report { command: command_echo(), seed, checks, timing_ms: start.elapsed().as_secs_f64() * 1e3 };
    emit(&report, std::slice::from_ref(&verdict));
    Ok(0)
}

//! The `qdep` command line: JSON in, JSON out.
//!
//! Exit codes: 0 on success (including negative answers such as an
//! independent verdict or a failed verification), 1 for usage and schema
//! errors, 2 when an internal invariant is violated.

pub mod document;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::criterion::decide;
use crate::exactalg::IntMatrix;
use crate::gm_subgroups::{group_structure, solve};
use crate::pseudofield::{constants_subring, is_simple, root_of_unity_quotient, x_power};
use crate::theta::{self, RelationKind, ThetaParams};
use crate::witness::{brute_force_oracle, verify};
use crate::Error;

use document::{
    group_value, schema_error, subgroup_value, verdict_value, witness_value, EquationDocument, GmDocument,
    VerifyDocument,
};

#[derive(Parser, Debug)]
#[command(name = "qdep", version, about = "Periodic dependence of q-difference equations: decide, certify, verify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the criterion on an equation document and report the verdict.
    Decide {
        /// Equation document (JSON); `-` or absent reads stdin.
        input: Option<PathBuf>,
        /// Include the exponent matrix, DFT matrix, kernel basis and scaling plan.
        #[arg(long)]
        trace: bool,
        /// Read a JSON array of documents instead; reports keep input order.
        #[arg(long, conflicts_with = "input")]
        batch: Option<PathBuf>,
    },
    /// Print a certificate, or "independent".
    Witness { input: Option<PathBuf> },
    /// Check a supplied certificate: {"equation": ..., "witness": {"phi", "b_factors"}}.
    Verify { input: Option<PathBuf> },
    /// Structure of the subgroup cut out by a monomial system.
    GmGroup { input: Option<PathBuf> },
    /// Numeric checks of the theta functional equation and relations.
    ThetaCheck {
        /// 1, 2, 3 or all.
        #[arg(long, default_value = "all")]
        kind: String,
        #[arg(long, default_value_t = 3)]
        t: u32,
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        #[arg(long, default_value_t = 0.0)]
        q_imag: f64,
        #[arg(long, default_value_t = 40)]
        truncation: usize,
        #[arg(long, default_value_t = 32)]
        samples: usize,
        /// Parameters of relation 2; default u = 1, v = 0, n = t.
        #[arg(long)]
        u: Option<u32>,
        #[arg(long)]
        v: Option<u32>,
        #[arg(long)]
        n: Option<i64>,
    },
    /// Structure report for Q(i)[x]/(x^4 - 1) with x -> -x and x -> ix.
    PseudofieldDemo {
        /// Generators whose common fixed subring is reported.
        #[arg(long, value_delimiter = ',', default_value = "sigma")]
        constants_of: Vec<String>,
    },
    /// Exhaustive certificate search, independent of the criterion.
    Oracle {
        input: Option<PathBuf>,
        /// Search bound on max |n_r|; default 2t.
        #[arg(long)]
        bound: Option<u32>,
    },
}

/// Runs the command line with `argv[0]` being the program name.
pub fn run(argv: &[String]) -> i32 {
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let stderr = io::stderr();
    let mut err = stderr.lock();
    run_with(argv, &mut input, &mut out, &mut err)
}

pub fn run_with(argv: &[String], stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(v) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("values serialise"));
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => 2,
        _ => 1,
    }
}

fn read_input(path: Option<PathBuf>, stdin: &mut dyn Read) -> crate::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(&p).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Error::Invalid(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn decide_value(doc: &EquationDocument, trace: bool) -> crate::Result<Value> {
    let f = doc.build()?;
    Ok(verdict_value(&decide(&f)?, trace))
}

fn dispatch(cmd: Command, stdin: &mut dyn Read) -> crate::Result<Value> {
    match cmd {
        Command::Decide { input, trace, batch } => match batch {
            Some(path) => {
                let text = read_input(Some(path), stdin)?;
                let docs: Vec<Value> = serde_json::from_str(&text).map_err(schema_error)?;
                let results: Vec<crate::Result<Value>> = docs
                    .into_par_iter()
                    .map(|v| decide_value(&EquationDocument::from_value(v)?, trace))
                    .collect();
                let mut reports = Vec::with_capacity(results.len());
                for r in results {
                    match r {
                        Ok(v) => reports.push(v),
                        Err(e @ Error::Internal(_)) => return Err(e),
                        Err(e) => reports.push(json!({"error": e.to_string()})),
                    }
                }
                Ok(Value::Array(reports))
            }
            None => decide_value(&EquationDocument::parse(&read_input(input, stdin)?)?, trace),
        },
        Command::Witness { input } => {
            let f = EquationDocument::parse(&read_input(input, stdin)?)?.build()?;
            let v = decide(&f)?;
            Ok(match &v.witness {
                Some(w) => witness_value(w, true),
                None => Value::from("independent"),
            })
        }
        Command::Verify { input } => {
            let text = read_input(input, stdin)?;
            let doc: VerifyDocument = serde_json::from_str(&text).map_err(schema_error)?;
            let f = doc.equation.build()?;
            let w = doc.witness.build(f.domain())?;
            Ok(json!({"verified": verify(&f, &w)}))
        }
        Command::GmGroup { input } => {
            let text = read_input(input, stdin)?;
            let doc: GmDocument = serde_json::from_str(&text).map_err(schema_error)?;
            match &doc.matrix {
                Some(rows) => {
                    if rows.iter().any(|r| r.len() != doc.t) {
                        return Err(Error::Invalid(format!("matrix rows must have length t = {}", doc.t)));
                    }
                    Ok(group_value(&group_structure(&IntMatrix::from_rows(doc.t, rows), doc.t)))
                }
                None => Ok(subgroup_value(&solve(&doc.system()?)?)),
            }
        }
        Command::ThetaCheck { kind, t, q, q_imag, truncation, samples, u, v, n } => {
            theta_report(&kind, t, Complex64::new(q, q_imag), truncation, samples, (u, v, n))
        }
        Command::PseudofieldDemo { constants_of } => pseudofield_report(&constants_of),
        Command::Oracle { input, bound } => {
            let f = EquationDocument::parse(&read_input(input, stdin)?)?.build()?;
            let bound = bound.unwrap_or(2 * f.domain().t());
            let found = brute_force_oracle(&f, bound);
            Ok(json!({
                "bound": bound,
                "found": found.is_some(),
                "witness": found.as_ref().map(|w| witness_value(w, verify(&f, w))),
            }))
        }
    }
}

pub const FUNCTIONAL_TOLERANCE: f64 = 1e-10;
pub const RELATION_TOLERANCE: f64 = 1e-9;
pub const CONTROL_THRESHOLD: f64 = 1e-2;

fn theta_report(
    kind: &str,
    t: u32,
    q: Complex64,
    truncation: usize,
    samples: usize,
    shifted: (Option<u32>, Option<u32>, Option<i64>),
) -> crate::Result<Value> {
    let p = ThetaParams::with_default_samples(q, truncation, samples, t)?;
    let kinds: Vec<u8> = match kind {
        "all" => if t >= 3 { vec![1, 2, 3] } else { vec![2, 3] },
        "1" => vec![1],
        "2" => vec![2],
        "3" => vec![3],
        other => return Err(Error::Invalid(format!("--kind must be 1, 2, 3 or all, got {other}"))),
    };
    let functional = theta::functional_eq_residual(&p);
    let mut pass = functional < FUNCTIONAL_TOLERANCE;
    let mut relations = Vec::new();
    for k in kinds {
        let rk = match k {
            1 => RelationKind::Second,
            2 => RelationKind::Shifted {
                u: shifted.0.unwrap_or(1),
                v: shifted.1.unwrap_or(0),
                n: shifted.2.unwrap_or(t as i64),
            },
            _ => RelationKind::Power,
        };
        let exps = theta::relation_exponents(rk, t)?;
        let ctrl = theta::control_exponents(rk, t)?;
        let residual = theta::phi_invariance_residual(&p, &exps);
        let control = theta::phi_invariance_residual(&p, &ctrl);
        pass &= residual < RELATION_TOLERANCE && control > CONTROL_THRESHOLD;
        relations.push(json!({
            "kind": k,
            "exponents": exps,
            "residual": residual,
            "control_exponents": ctrl,
            "control_residual": control,
        }));
    }
    Ok(json!({
        "q": [q.re, q.im],
        "t": t,
        "truncation": truncation,
        "samples": samples,
        "functional_residual": functional,
        "relations": relations,
        "pass": pass,
    }))
}

fn pseudofield_report(constants_of: &[String]) -> crate::Result<Value> {
    let pf = root_of_unity_quotient(4, &[("sigma", 2), ("rho", 1)])?;
    let gens: Vec<usize> = constants_of
        .iter()
        .map(|n| pf.generator_index(n).ok_or_else(|| Error::Invalid(format!("unknown generator `{n}`"))))
        .collect::<crate::Result<_>>()?;
    let c = constants_subring(&pf, &gens)?;
    let tables: serde_json::Map<String, Value> = pf
        .generators()
        .iter()
        .map(|g| (g.name.clone(), json!({"perm": g.action.perm, "autos": g.action.autos, "order": g.order})))
        .collect();
    let strings = |x: &crate::pseudofield::PfElement| x.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>();
    Ok(json!({
        "base": "Q(zeta_4)",
        "components": pf.components(),
        "x": strings(&x_power(4, 1)),
        "action_tables": tables,
        "constants": {
            "generators": constants_of,
            "dimension": c.dimension,
            "rational_dimension": c.rational_dimension,
            "idempotents": c.idempotents.iter().map(strings).collect::<Vec<_>>(),
            "is_field": c.is_field(),
            "contains_x2": c.contains(&x_power(4, 2)),
        },
        "simple": {
            "all_generators": is_simple(&pf, &(0..pf.generators().len()).collect::<Vec<_>>()),
            "selected_generators": is_simple(&pf, &gens),
        },
    }))
}

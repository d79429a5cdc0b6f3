use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use serde_json::{json, Value};

use nilsuper::algebra::format_vector;
use nilsuper::catalog::{self, Skeleton};
use nilsuper::invariants::{
    center, characteristic_sequence, descending_central_series, right_annihilator,
};
use nilsuper::io::{self as nio, AnyAlgebra};
use nilsuper::verification as ver;
use nilsuper::{CheckReport, Complex64, Error, Rational, RationalAlgebra, Scalar};

use crate::{Cli, Command, Family, GlobalOpts};

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(String, io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{path}: {e}"),
        }
    }
}

impl CliError {
    /// Failed checks exit 1; bad input exits 2.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(
                Error::Inconsistency(..) | Error::NotNilpotent | Error::NotTwoGenerated(_),
            ) => 1,
            _ => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn code(&self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

fn read_input(path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io("stdin".into(), e))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))
}

fn emit(opts: &GlobalOpts, text: &str) -> CliResult<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &opts.output {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(p.display().to_string(), e)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io("stdout".into(), e)),
    }
}

fn emit_json(opts: &GlobalOpts, v: &Value) -> CliResult<()> {
    emit(
        opts,
        &serde_json::to_string_pretty(v).expect("json value serializes"),
    )
}

/// Invariants are certificate-grade, so they only run on the exact field.
fn read_rational(path: &Path) -> CliResult<RationalAlgebra> {
    Ok(nio::parse::<Rational>(&read_input(path)?)?)
}

fn report_lines<F: Scalar>(r: &CheckReport<F>, n: usize) -> Vec<String> {
    r.violations
        .iter()
        .map(|v| {
            let idx: Vec<String> = v.indices.iter().map(|i| i.to_string()).collect();
            format!(
                "{:?} ({}) residual {}",
                v.kind,
                idx.join(", "),
                format_vector(&v.residual, n)
            )
        })
        .collect()
}

fn check_output<F: Scalar>(
    opts: &GlobalOpts,
    label: &str,
    reports: &[(&str, CheckReport<F>)],
    n: usize,
) -> CliResult<Outcome> {
    let clean = reports.iter().all(|(_, r)| r.is_clean());
    if opts.json {
        let mut obj = serde_json::Map::new();
        obj.insert("clean".into(), json!(clean));
        for (name, r) in reports {
            obj.insert((*name).into(), json!(report_lines(r, n)));
        }
        emit_json(opts, &Value::Object(obj))?;
    } else {
        let mut out = Vec::new();
        for (name, r) in reports {
            out.push(format!("{name}: {} violation(s)", r.len()));
            out.extend(report_lines(r, n).into_iter().map(|l| format!("  {l}")));
        }
        out.push(format!(
            "{label}: {}",
            if clean { "clean" } else { "FAILED" }
        ));
        emit(opts, &out.join("\n"))?;
    }
    Ok(Outcome::from_bool(clean))
}

fn param_rows(text: Option<&String>, rows: usize, cols: usize) -> CliResult<Vec<Vec<Rational>>> {
    match text {
        Some(t) => Ok(nio::parse_scalar_rows(t)?),
        None => Ok(vec![vec![Rational::from_int(0); cols]; rows]),
    }
}

fn skeleton_or_table(
    opts: &GlobalOpts,
    s: Skeleton<Rational>,
    as_skeleton: bool,
) -> CliResult<Outcome> {
    if as_skeleton {
        emit_json(opts, &nio::skeleton_to_json(&s))?;
    } else {
        emit(opts, &nio::serialize(&s.complete()?))?;
    }
    Ok(Outcome::Pass)
}

fn catalog_cmd(opts: &GlobalOpts, family: &Family) -> CliResult<Outcome> {
    let a: RationalAlgebra = match family {
        Family::MaxLeibniz { n } => catalog::max_nilindex_leibniz(*n),
        Family::MaxSuper { n, m } => match m {
            Some(m) => catalog::max_nilindex_super_with(*n, *m)?,
            None => catalog::max_nilindex_super(*n),
        },
        Family::Zf {
            n,
            m,
            alpha,
            beta,
            skeleton,
        } => {
            let al = param_rows(alpha.as_ref(), *n, m.saturating_sub(1))?;
            let be = param_rows(beta.as_ref(), *m, n.saturating_sub(1))?;
            return skeleton_or_table(opts, catalog::zf_adapted(*n, *m, al, be)?, *skeleton);
        }
        Family::Thm32Family { m, gamma } => {
            catalog::thm32_family(*m, &nio::parse_scalar_list::<Rational>(gamma)?)?
        }
        Family::Thm32Normal { m } => catalog::thm32_normal(*m)?,
        Family::CsqModel {
            n,
            parts,
            alpha,
            beta,
            skeleton,
        } => {
            let m: usize = parts.iter().sum();
            let al = param_rows(alpha.as_ref(), *n, m.saturating_sub(1))?;
            let be = param_rows(beta.as_ref(), m, n.saturating_sub(1))?;
            return skeleton_or_table(
                opts,
                catalog::csq_model(*n, parts.clone(), al, be)?,
                *skeleton,
            );
        }
    };
    emit(opts, &nio::serialize(&a))?;
    Ok(Outcome::Pass)
}

fn invariants_cmd(opts: &GlobalOpts, a: &RationalAlgebra) -> CliResult<Outcome> {
    let series = descending_central_series(a);
    let cseq = characteristic_sequence(a, opts.samples, opts.seed).ok();
    let ann = right_annihilator(a).dim();
    let cen = center(a).dim();
    if opts.json {
        emit_json(
            opts,
            &json!({
                "n": a.n(),
                "m": a.m(),
                "nilindex": series.nilindex.value(),
                "series_dims": series.dims(),
                "char_sequence": cseq,
                "right_annihilator_dim": ann,
                "center_dim": cen,
            }),
        )?;
    } else {
        let lines = [
            format!("dimensions: ({} | {})", a.n(), a.m()),
            format!("nilindex: {}", series.nilindex),
            format!("series: {series}"),
            format!(
                "characteristic sequence: {}",
                cseq.map_or("undefined ([L0, L0] = L0)".into(), |c| c.to_string())
            ),
            format!("right annihilator dim: {ann}"),
            format!("center dim: {cen}"),
        ];
        emit(opts, &lines.join("\n"))?;
    }
    Ok(Outcome::Pass)
}

fn probe_output(opts: &GlobalOpts, r: &ver::ProbeReport) -> CliResult<Outcome> {
    if opts.json {
        emit(opts, &r.to_json())?;
    } else {
        let hist: Vec<String> = r
            .histogram
            .0
            .iter()
            .map(|(k, v)| format!("{k}: {v}"))
            .collect();
        let lines = [
            format!(
                "probe n = {}, parts = {:?}, trials = {}, seed = {}",
                r.n, r.parts, r.trials, r.seed
            ),
            format!("consistent completions: {}", r.consistent()),
            format!(
                "max nilindex: {}",
                r.max_nilindex.map_or("none".into(), |s| s.to_string())
            ),
            format!("histogram: {}", hist.join(", ")),
            format!("violations: {}", r.violations.len()),
        ];
        emit(opts, &lines.join("\n"))?;
    }
    Ok(Outcome::from_bool(r.passed()))
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Check { file } => match nio::parse_any(&read_input(file)?)? {
            AnyAlgebra::Rational(a) => check_output(
                opts,
                "leibniz superalgebra",
                &[
                    ("grading", a.check_grading()),
                    ("leibniz", a.check_leibniz_superidentity()),
                ],
                a.n(),
            ),
            AnyAlgebra::Complex(a) => check_output(
                opts,
                "leibniz superalgebra",
                &[
                    ("grading", a.check_grading()),
                    ("leibniz", a.check_leibniz_superidentity_tol(opts.tol)),
                ],
                a.n(),
            ),
        },
        Command::LieCheck { file } => match nio::parse_any(&read_input(file)?)? {
            AnyAlgebra::Rational(a) => check_output(
                opts,
                "lie superalgebra",
                &[
                    ("grading", a.check_grading()),
                    ("lie", a.check_lie_superidentity()),
                ],
                a.n(),
            ),
            AnyAlgebra::Complex(a) => check_output(
                opts,
                "lie superalgebra",
                &[
                    ("grading", a.check_grading()),
                    ("lie", a.check_lie_superidentity_tol(opts.tol)),
                ],
                a.n(),
            ),
        },
        Command::Invariants { file } => invariants_cmd(opts, &read_rational(file)?),
        Command::Series { file } => {
            let a = read_rational(file)?;
            let s = descending_central_series(&a);
            if opts.json {
                emit_json(
                    opts,
                    &json!({ "dims": s.dims(), "nilindex": s.nilindex.value() }),
                )?;
            } else {
                emit(opts, &format!("{s}\nnilindex: {}", s.nilindex))?;
            }
            Ok(Outcome::Pass)
        }
        Command::Cseq { file } => {
            let a = read_rational(file)?;
            let c = characteristic_sequence(&a, opts.samples, opts.seed)?;
            if opts.json {
                emit_json(opts, &json!(c))?;
            } else {
                emit(opts, &c.to_string())?;
            }
            Ok(Outcome::Pass)
        }
        Command::Catalog { family } => catalog_cmd(opts, family),
        Command::Complete { file } => {
            let s: Skeleton<Rational> = nio::parse_skeleton(&read_input(file)?)?;
            emit(opts, &nio::serialize(&s.complete()?))?;
            Ok(Outcome::Pass)
        }
        Command::Formula { n, m1, beta, i, j } => {
            let beta = nio::parse_scalar_rows::<Rational>(beta)?;
            let pairs: Vec<(usize, usize)> = match (i, j) {
                (Some(i), Some(j)) => vec![(*i, *j)],
                _ => (1..=*m1)
                    .flat_map(|i| (1..=*m1).map(move |j| (i, j)))
                    .collect(),
            };
            let mut rows = Vec::new();
            for (i, j) in pairs {
                let mut v = catalog::closed_formula_bracket(i, j, &beta, *n, *m1)?;
                v.extend((0..*m1).map(|_| Rational::from_int(0)));
                rows.push((i, j, v));
            }
            if opts.json {
                let items: Vec<Value> = rows
                    .iter()
                    .map(|(i, j, v)| json!({ "i": i, "j": j, "value": v[..*n].iter().map(Scalar::to_json).collect::<Vec<_>>() }))
                    .collect();
                emit_json(opts, &Value::Array(items))?;
            } else {
                let lines: Vec<String> = rows
                    .iter()
                    .map(|(i, j, v)| format!("[y{i}, y{j}] = {}", format_vector(v, *n)))
                    .collect();
                emit(opts, &lines.join("\n"))?;
            }
            Ok(Outcome::Pass)
        }
        Command::VerifyFormula { n, parts } => {
            if parts.is_empty() || parts.contains(&0) {
                return Err(Error::PartitionMismatch {
                    parts: parts.clone(),
                    m: parts.iter().sum(),
                }
                .into());
            }
            let r = ver::verify_formula_parts(*n, parts, opts.trials, opts.seed);
            if opts.json {
                emit_json(opts, &json!(r))?;
            } else {
                emit(
                    opts,
                    &format!(
                        "n = {n}, parts = {parts:?}: {} pairs over {} trials ({} inconsistent completions), {} mismatch(es)",
                        r.pairs_checked,
                        r.trials,
                        r.inconsistent,
                        r.mismatches.len()
                    ),
                )?;
            }
            Ok(Outcome::from_bool(r.passed()))
        }
        Command::VerifyThm32 { m, gamma, b1 } => {
            let gamma = nio::parse_scalar_list::<Complex64>(gamma)?;
            let b1 = Complex64::from_json(&Value::String(b1.clone())).map_err(|message| {
                Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("--b1: {message}"),
                }
            })?;
            let r = ver::verify_thm32(*m, &gamma, b1, opts.tol)?;
            if opts.json {
                emit_json(opts, &json!(r))?;
            } else {
                emit(
                    opts,
                    &format!(
                        "m = {m}: deviation {:.3e} (tolerance {:.1e}) {}",
                        r.deviation,
                        r.tolerance,
                        if r.passed { "PASS" } else { "FAIL" }
                    ),
                )?;
            }
            Ok(Outcome::from_bool(r.passed))
        }
        Command::ProbeZf { n, m, zero_prob } => probe_output(
            opts,
            &ver::probe_zf_with(*n, *m, opts.trials, opts.seed, *zero_prob)?,
        ),
        Command::ProbeCsq {
            n,
            parts,
            zero_prob,
        } => probe_output(
            opts,
            &ver::probe_csq_with(*n, parts, opts.trials, opts.seed, *zero_prob)?,
        ),
        Command::IsoVerify { a, b, map } => {
            let (a_text, b_text, t_text) = (read_input(a)?, read_input(b)?, read_input(map)?);
            let ok = match nio::parse_any(&a_text)? {
                AnyAlgebra::Rational(a) => ver::verify_isomorphism(
                    &a,
                    &nio::parse(&b_text)?,
                    &nio::parse_map(&t_text)?,
                    0.0,
                )?,
                AnyAlgebra::Complex(a) => ver::verify_isomorphism(
                    &a,
                    &nio::parse(&b_text)?,
                    &nio::parse_map(&t_text)?,
                    opts.tol,
                )?,
            };
            if opts.json {
                emit_json(opts, &json!({ "isomorphism": ok }))?;
            } else {
                emit(
                    opts,
                    if ok {
                        "isomorphism: yes"
                    } else {
                        "isomorphism: no"
                    },
                )?;
            }
            Ok(Outcome::from_bool(ok))
        }
        Command::Generators { file } => {
            let a = read_rational(file)?;
            let g = ver::check_generator_placement(&a)?;
            if opts.json {
                emit_json(opts, &json!(g))?;
            } else {
                emit(opts, &format!("generators: {} even, {} odd", g.even, g.odd))?;
            }
            Ok(Outcome::Pass)
        }
    }
}

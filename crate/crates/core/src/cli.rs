//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when the answer is mathematically negative
//! (no cover, rejected certificate, inadmissible degree), 2 on malformed input.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::{parse_elem, parse_poly, Field};
use crate::cartier::{
    admissible_degrees, cartier_matrix, classify, coker_dim, minimal_degree_linalg, obstruction, p_rank,
};
use crate::covers::{build_cover, build_cover_of_degree, minimal_degree_explicit};
use crate::curve::{AffineFunction, CoverVerdict, HyperellipticCurve};
use crate::elliptic::{canonical_cover_classify, supersingular_j_list, table};
use crate::error::Error;
use crate::moduli::{family_check, search_eg, SearchOptions};
use crate::report;

#[derive(Parser, Debug)]
#[command(name = "cartier-covers", version, about = "Etale covers of the affine line by hyperelliptic curves")]
struct Cli {
    /// Emit JSON (default for every command except `table`).
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,
    /// Emit tab-separated values.
    #[arg(long, global = true)]
    tsv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree of the base field over F_p.
    #[arg(long, default_value_t = 1)]
    m: u32,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Right-hand side f(x) of y^2 = f(x).
    #[arg(long, allow_hyphen_values = true)]
    f: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reproduce the supersingular elliptic table for p <= 17.
    Table,
    /// Supersingular j-invariants in characteristic p.
    SsJ {
        /// Characteristic.
        #[arg(long)]
        p: u64,
    },
    /// Cartier matrix on Omega(mP), classification and p-rank.
    Cartier {
        #[command(flatten)]
        curve: CurveArgs,
        /// Pole bound m <= 0.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        mpole: i64,
    },
    /// Decide whether an etale cover of the affine line exists.
    Exists {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Build a cover, of minimal degree unless --degree is given.
    Cover {
        #[command(flatten)]
        curve: CurveArgs,
        /// Cover degree; a multiple of p.
        #[arg(long)]
        degree: Option<u64>,
    },
    /// Minimal degree by both algorithms.
    Mindeg {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Admissible cover degrees up to a bound.
    Admissible {
        #[command(flatten)]
        curve: CurveArgs,
        /// Largest degree considered.
        #[arg(long)]
        bound: u64,
    },
    /// Legendre coefficients and the ramification of the canonical cover.
    Legendre {
        #[command(flatten)]
        field: FieldArgs,
        /// Parameter lambda, avoiding 0 and 1.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Enumerate pointed curves of genus g over F_q admitting a cover.
    Search {
        /// Characteristic.
        #[arg(long)]
        p: u64,
        /// Genus.
        #[arg(long)]
        g: usize,
        /// Field order, a power of p.
        #[arg(long)]
        q: u64,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check a parametric family pointwise over F_{p^ext}.
    Family {
        /// Family: p5_a or p7_ab.
        #[arg(long)]
        id: String,
        /// Extension degree of the parameter field.
        #[arg(long)]
        ext: u32,
    },
    /// Verify t = a(x) + b(x) y as an etale cover.
    Verify {
        #[command(flatten)]
        curve: CurveArgs,
        /// b(x).
        #[arg(long, alias = "b", allow_hyphen_values = true)]
        cover: String,
        /// a(x).
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        a: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Tsv,
}

struct Outcome {
    doc: Value,
    code: i32,
}

impl Outcome {
    fn ok(doc: Value) -> Outcome {
        Outcome { doc, code: 0 }
    }

    fn rejected(doc: Value) -> Outcome {
        Outcome { doc, code: 1 }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoCover(_) | Error::NotAdmissible { .. } => 1,
        _ => 2,
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let format = if cli.tsv || (!cli.json && matches!(cli.command, Command::Table)) {
        Format::Tsv
    } else {
        Format::Json
    };
    let name = command_name(&cli.command);
    match execute(cli.command) {
        Ok(outcome) => {
            let doc = report::document(name, outcome.doc);
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
                Format::Tsv => tsv(name, &doc),
            };
            if out.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Table => "table",
        Command::SsJ { .. } => "ss-j",
        Command::Cartier { .. } => "cartier",
        Command::Exists { .. } => "exists",
        Command::Cover { .. } => "cover",
        Command::Mindeg { .. } => "mindeg",
        Command::Admissible { .. } => "admissible",
        Command::Legendre { .. } => "legendre",
        Command::Search { .. } => "search",
        Command::Family { .. } => "family",
        Command::Verify { .. } => "verify",
    }
}

fn load_curve(args: &CurveArgs) -> crate::Result<HyperellipticCurve> {
    HyperellipticCurve::parse(args.field.p, args.field.m, &args.f)
}

fn no_cover(curve: &HyperellipticCurve) -> Option<Outcome> {
    obstruction(curve).map(|o| Outcome::rejected(report::rejection(curve, &o.to_string())))
}

fn execute(command: Command) -> crate::Result<Outcome> {
    match command {
        Command::Table => {
            let rows = table()?;
            let mut primes: Vec<u64> = rows.iter().map(|r| r.p).collect();
            primes.dedup();
            let j_lists = primes
                .iter()
                .map(|&p| {
                    let (k, js) = supersingular_j_list(p)?;
                    Ok(json!({ "p": p, "j": js.iter().map(|&j| k.format(j)).collect::<Vec<_>>() }))
                })
                .collect::<crate::Result<Vec<_>>>()?;
            let all = rows.iter().all(|r| r.verified());
            let doc = json!({
                "rows": rows.iter().map(report::table_row).collect::<Vec<_>>(),
                "j_lists": j_lists,
            });
            Ok(if all { Outcome::ok(doc) } else { Outcome::rejected(doc) })
        }
        Command::SsJ { p } => {
            let (k, js) = supersingular_j_list(p)?;
            Ok(Outcome::ok(json!({
                "p": p,
                "j": js.iter().map(|&j| k.format(j)).collect::<Vec<_>>(),
            })))
        }
        Command::Cartier { curve, mpole } => {
            let c = load_curve(&curve)?;
            let map = cartier_matrix(&c, mpole)?;
            Ok(Outcome::ok(json!({
                "curve": report::curve(&c),
                "matrix": report::matrix(&map),
                "coker_dim": coker_dim(&c, mpole)?,
                "classification": report::classification(classify(&c)),
                "p_rank": p_rank(&c),
            })))
        }
        Command::Exists { curve } => {
            let c = load_curve(&curve)?;
            let reason = obstruction(&c);
            let doc = json!({
                "curve": report::curve(&c),
                "exists": reason.is_none(),
                "reason": reason.map(|r| r.to_string()),
            });
            Ok(if reason.is_none() { Outcome::ok(doc) } else { Outcome::rejected(doc) })
        }
        Command::Cover { curve, degree } => {
            let c = load_curve(&curve)?;
            if let Some(o) = no_cover(&c) {
                return Ok(o);
            }
            let cert = match degree {
                None => build_cover(&c)?,
                Some(d) => match build_cover_of_degree(&c, d) {
                    Ok(cert) => cert,
                    Err(e @ Error::NotAdmissible { .. }) => {
                        return Ok(Outcome::rejected(report::rejection(&c, &e.to_string())))
                    }
                    Err(e) => return Err(e),
                },
            };
            Ok(Outcome::ok(report::certificate(&cert)))
        }
        Command::Mindeg { curve } => {
            let c = load_curve(&curve)?;
            if let Some(o) = no_cover(&c) {
                return Ok(o);
            }
            let (lin, exp) = (minimal_degree_linalg(&c)?, minimal_degree_explicit(&c)?);
            let mut doc = report::min_degree(lin, exp);
            doc["curve"] = report::curve(&c);
            Ok(if lin == exp { Outcome::ok(doc) } else { Outcome::rejected(doc) })
        }
        Command::Admissible { curve, bound } => {
            let c = load_curve(&curve)?;
            if let Some(o) = no_cover(&c) {
                return Ok(o);
            }
            Ok(Outcome::ok(json!({
                "curve": report::curve(&c),
                "bound": bound,
                "degrees": admissible_degrees(&c, bound)?,
            })))
        }
        Command::Legendre { field, lambda } => {
            let k = Field::new(field.p, field.m)?;
            let l = parse_elem(&lambda, &k)?;
            let cc = canonical_cover_classify(&k, l)?;
            Ok(Outcome::ok(report::legendre(field.p, field.m, &cc, &k)))
        }
        Command::Search { p, g, q, jobs } => {
            let r = search_eg(
                p,
                g,
                q,
                &SearchOptions {
                    jobs,
                    shard_shuffle: None,
                },
            )?;
            Ok(Outcome::ok(report::search(&r)))
        }
        Command::Family { id, ext } => {
            let r = family_check(&id, ext)?;
            let doc = report::family(&r);
            Ok(if r.passed() { Outcome::ok(doc) } else { Outcome::rejected(doc) })
        }
        Command::Verify { curve, cover, a } => {
            let c = load_curve(&curve)?;
            let k = c.field();
            let t = AffineFunction::new(parse_poly(&a, k, 'x')?, parse_poly(&cover, k, 'x')?);
            match c.verify_etale_cover(&t) {
                CoverVerdict::Accepted { degree, constant } => {
                    let minimal = minimal_degree_linalg(&c)? == degree;
                    Ok(Outcome::ok(json!({
                        "curve": report::curve(&c),
                        "t": report::function(&t),
                        "degree": degree,
                        "c": k.format(constant),
                        "minimal": minimal,
                    })))
                }
                CoverVerdict::Rejected(r) => {
                    let mut doc = report::rejection(&c, r.describe());
                    doc["t"] = report::function(&t);
                    Ok(Outcome::rejected(doc))
                }
            }
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

fn tsv(command: &str, doc: &Value) -> String {
    let mut s = String::new();
    let mut table = |columns: &[&str], rows: &[Value]| {
        s.push_str(&columns.join("\t"));
        s.push('\n');
        for row in rows {
            let line: Vec<String> = columns.iter().map(|c| cell(&row[*c])).collect();
            s.push_str(&line.join("\t"));
            s.push('\n');
        }
    };
    match command {
        "table" => table(
            &["p", "equation", "j", "cover", "verified"],
            doc["rows"].as_array().map(Vec::as_slice).unwrap_or(&[]),
        ),
        "search" => {
            let rows: Vec<Value> = doc["classes"]
                .as_array()
                .map(Vec::as_slice)
                .unwrap_or(&[])
                .iter()
                .map(|c| {
                    json!({
                        "normal_form": c["normal_form"],
                        "class_size": c["class_size"],
                        "classification": c["classification"],
                        "p_rank": c["p_rank"],
                        "min_degree_linalg": c["min_degree"]["linalg"],
                        "min_degree_explicit": c["min_degree"]["explicit"],
                        "agree": c["min_degree"]["agree"],
                        "admissible_degrees": c["admissible_degrees"],
                    })
                })
                .collect();
            table(
                &[
                    "normal_form",
                    "class_size",
                    "classification",
                    "p_rank",
                    "min_degree_linalg",
                    "min_degree_explicit",
                    "agree",
                    "admissible_degrees",
                ],
                &rows,
            )
        }
        _ => {
            if let Value::Object(map) = doc {
                for (key, value) in map {
                    let v = match value {
                        Value::Object(_) => value.to_string(),
                        other => cell(other),
                    };
                    s.push_str(&format!("{key}\t{v}\n"));
                }
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("cartier-covers").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["bogus"]).0, 2);
        assert_eq!(run_str(&["exists", "--p", "7"]).0, 2);
        let (code, _, err) = run_str(&["exists", "--p", "7", "--f", "x^^2"]);
        assert_eq!(code, 2);
        assert!(err.contains("offset 2"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("cover"));
    }

    #[test]
    fn negative_pole_bound() {
        let (code, out, _) = run_str(&["cartier", "--p", "5", "--f", "x+x^2+2*x^3+x^5", "--mpole", "-3"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["matrix"]["m_cod"], -1);
        assert_eq!(v["matrix"]["rows"][0][1], "2");
    }
}

//! Command-line front end.
//!
//! Exit codes: 0 when everything checked holds, 1 when an identity or limit
//! comparison fails (the report is still written), 2 on usage errors.
//! The degeneracy parameter is spelled `l` in bindings, e.g. `--bind l=1/2`.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{parse_binding, Bindings, Poly, Rat, Var};
use crate::error::Error;
use crate::sequences::{limit_rows, LimitRow, Provenance, SeqKind, SeqTable};
use crate::series::{self, Series};
use crate::verify::{self, IdentityId, Mode, VerifyReport};

/// Environment variable holding the maximum width of text-format polynomials.
pub const WIDTH_ENV: &str = "DEGSPIVEY_WIDTH";

#[derive(Parser, Debug)]
#[command(
    name = "degspivey",
    version,
    about = "Exact degenerate Bell/Fubini polynomials and Spivey-type identity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit a table of a polynomial family.
    Table {
        #[arg(long, value_parser = parse_kind)]
        kind: SeqKind,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Order bound alpha for two-var-deg-fubini.
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long, value_parser = parse_method)]
        method: Option<Provenance>,
        #[command(flatten)]
        common: Common,
    },
    /// Emit a single polynomial.
    Poly {
        #[arg(long, value_parser = parse_kind)]
        kind: SeqKind,
        #[arg(long)]
        n: usize,
        /// Second index (k for Stirling numbers, alpha for two-var-deg-fubini).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_parser = parse_method)]
        method: Option<Provenance>,
        #[command(flatten)]
        common: Common,
    },
    /// Dump the EGF coefficients of a generating function.
    Series {
        /// deg-exp, deg-bell, fully-deg-bell, deg-fubini, two-var-fubini:<alpha> or stirling:<k>
        #[arg(long)]
        gf: String,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check identities over an (n, m) grid.
    Verify {
        #[arg(long, value_parser = parse_identity, required_unless_present = "all", conflicts_with = "all")]
        id: Option<IdentityId>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 6)]
        m_max: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Symbolic)]
        mode: ModeArg,
        #[command(flatten)]
        common: Common,
    },
    /// Compare each degenerate family at l = 0 with its classical counterpart.
    Limit {
        #[arg(long, value_parser = parse_kind)]
        kind: SeqKind,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long)]
        k_max: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(clap::Args, Debug)]
pub struct Common {
    /// Bind a variable to an exact rational, e.g. `l=0` or `x=-1/2`. Repeatable.
    #[arg(long = "bind", value_parser = parse_bind)]
    pub bindings: Vec<(Var, Rat)>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Symbolic,
    Rational,
}

fn parse_kind(s: &str) -> Result<SeqKind, String> {
    SeqKind::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = SeqKind::ALL.iter().map(|k| k.name()).collect();
        format!("unknown kind {s:?}; expected one of {}", names.join(", "))
    })
}

fn parse_method(s: &str) -> Result<Provenance, String> {
    Provenance::from_name(s).ok_or_else(|| {
        format!("unknown method {s:?}; expected recurrence, closed-form or series-oracle")
    })
}

fn parse_identity(s: &str) -> Result<IdentityId, String> {
    IdentityId::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = IdentityId::ALL.iter().map(|i| i.name()).collect();
        format!(
            "unknown identity {s:?}; expected one of {}",
            names.join(", ")
        )
    })
}

fn parse_bind(s: &str) -> Result<(Var, Rat), String> {
    parse_binding(s).map_err(|e| e.to_string())
}

/// Output of one invocation before it is written anywhere.
struct Outcome {
    code: i32,
    body: String,
}

/// Runs the CLI on `args` (including the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let width = std::env::var(WIDTH_ENV)
        .ok()
        .and_then(|w| w.parse::<usize>().ok());
    let output = common(&cli.command).output.clone();
    match execute(cli.command, width) {
        Ok(outcome) => {
            let written = match output {
                Some(path) => fs::write(&path, &outcome.body)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out
                    .write_all(outcome.body.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => outcome.code,
                Err(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    2
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Table { common, .. }
        | Command::Poly { common, .. }
        | Command::Series { common, .. }
        | Command::Verify { common, .. }
        | Command::Limit { common, .. } => common,
    }
}

fn bindings_of(common: &Common) -> Bindings {
    common.bindings.iter().cloned().collect()
}

fn execute(cmd: Command, width: Option<usize>) -> Result<Outcome, Error> {
    match cmd {
        Command::Table {
            kind,
            n_max,
            k_max,
            method,
            common,
        } => {
            let table =
                SeqTable::build(kind, n_max, k_max, method)?.with_bindings(&bindings_of(&common));
            Ok(Outcome {
                code: 0,
                body: render_table(&table, common.format, width),
            })
        }
        Command::Poly {
            kind,
            n,
            k,
            method,
            common,
        } => run_poly(kind, n, k, method, &common, width),
        Command::Series { gf, order, common } => {
            let s = named_series(&gf, order)?;
            let b = bindings_of(&common);
            let s = s.map_coeffs(|c| c.eval(&b));
            Ok(Outcome {
                code: 0,
                body: render_series(&s, common.format, width),
            })
        }
        Command::Verify {
            id,
            all,
            n_max,
            m_max,
            mode,
            common,
        } => {
            let b = bindings_of(&common);
            let mode = match mode {
                ModeArg::Symbolic if !b.is_empty() => {
                    return Err(Error::Usage("--bind requires --mode rational".to_string()))
                }
                ModeArg::Symbolic => Mode::Symbolic,
                ModeArg::Rational if b.is_empty() => Mode::spot_grid(),
                ModeArg::Rational => Mode::Rational(vec![b]),
            };
            let ids: Vec<IdentityId> = if all {
                IdentityId::ALL.to_vec()
            } else {
                id.into_iter().collect()
            };
            let reports: Vec<VerifyReport> = ids
                .into_iter()
                .map(|id| verify::check(id, n_max, m_max, &mode))
                .collect();
            let code = if reports.iter().all(VerifyReport::ok) {
                0
            } else {
                1
            };
            Ok(Outcome {
                code,
                body: render_reports(&reports, all, common.format),
            })
        }
        Command::Limit {
            kind,
            n_max,
            k_max,
            common,
        } => {
            let rows = limit_rows(kind, n_max, k_max)?;
            let code = if rows.iter().all(|r| r.matches) { 0 } else { 1 };
            Ok(Outcome {
                code,
                body: render_limit(kind, n_max, &rows, common.format, width),
            })
        }
    }
}

fn run_poly(
    kind: SeqKind,
    n: usize,
    k: Option<usize>,
    method: Option<Provenance>,
    common: &Common,
    width: Option<usize>,
) -> Result<Outcome, Error> {
    let key = if kind.is_two_index() {
        let k = k.ok_or_else(|| Error::Usage(format!("{kind} needs --k")))?;
        if kind != SeqKind::TwoVarDegFubini && k > n {
            return Err(Error::Usage(format!("--k {k} exceeds --n {n}")));
        }
        Some(k)
    } else {
        None
    };
    let table = SeqTable::build(kind, n, key, method)?;
    let p = table
        .get(n, key)
        .cloned()
        .unwrap_or_else(Poly::zero)
        .eval(&bindings_of(common));
    let body = match common.format {
        Format::Json => format!("{}\n", p.to_json()),
        Format::Csv => format!("poly\n{p}\n"),
        Format::Text => format!("{}\n", elide(&p.to_string(), width)),
    };
    Ok(Outcome { code: 0, body })
}

/// Resolves a generating-function name to its truncated series.
pub fn named_series(name: &str, order: usize) -> Result<Series, Error> {
    let unknown = || Error::Usage(format!("unknown generating function {name:?}"));
    let parse_param = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    let s = match name.split_once(':') {
        None => match name {
            "deg-exp" => series::deg_exp(&Poly::one(), order),
            "deg-bell" => series::deg_bell_gf(order),
            "fully-deg-bell" => series::fully_deg_bell_gf(order),
            "deg-fubini" => series::deg_fubini_gf(order),
            _ => return Err(unknown()),
        },
        Some(("two-var-fubini", a)) => series::two_var_fubini_gf(parse_param(a)? as u32, order),
        Some(("stirling", k)) => series::stirling_column(parse_param(k)?, order),
        Some(_) => return Err(unknown()),
    };
    Ok(s)
}

/// Shortens `s` to at most `width` characters, keeping both ends.
fn elide(s: &str, width: Option<usize>) -> String {
    match width {
        Some(w) if w >= 5 && s.chars().count() > w => {
            let keep = w - 3;
            let head: String = s.chars().take(keep.div_ceil(2)).collect();
            let tail: String = s
                .chars()
                .rev()
                .take(keep / 2)
                .collect::<Vec<_>>()
                .into_iter()
                .rev()
                .collect();
            format!("{head}...{tail}")
        }
        _ => s.to_string(),
    }
}

fn render_table(table: &SeqTable, format: Format, width: Option<usize>) -> String {
    match format {
        Format::Json => format!("{}\n", table.to_json()),
        Format::Csv => table.to_csv(),
        Format::Text => {
            let mut out = format!("# {} ({})\n", table.kind, table.provenance.name());
            for (n, row) in table.rows().into_iter().enumerate() {
                let cells: Vec<String> = row
                    .iter()
                    .map(|e| elide(&e.poly.to_string(), width))
                    .collect();
                out.push_str(&format!("n={n}: {}\n", cells.join(" | ")));
            }
            out
        }
    }
}

fn render_series(s: &Series, format: Format, width: Option<usize>) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string(s).expect("serializable")),
        Format::Csv => {
            let mut out = String::from("n,egf_coeff\n");
            for (n, c) in s.coeffs().iter().enumerate() {
                out.push_str(&format!("{n},{c}\n"));
            }
            out
        }
        Format::Text => {
            let mut out = format!("# order {}\n", s.order());
            for (n, c) in s.coeffs().iter().enumerate() {
                out.push_str(&format!("n={n}: {}\n", elide(&c.to_string(), width)));
            }
            out
        }
    }
}

fn render_reports(reports: &[VerifyReport], as_list: bool, format: Format) -> String {
    match format {
        Format::Json if as_list => {
            format!(
                "{}\n",
                serde_json::to_string(reports).expect("serializable")
            )
        }
        Format::Json => reports
            .iter()
            .map(|r| format!("{}\n", r.to_json()))
            .collect(),
        Format::Csv => {
            let mut out = String::from("identity,grid_size,pass,fail\n");
            for r in reports {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    r.identity, r.grid_size, r.pass, r.fail
                ));
            }
            out
        }
        Format::Text => reports
            .iter()
            .map(|r| format!("{}\n", r.summary()))
            .collect(),
    }
}

#[derive(Serialize)]
struct LimitJson<'a> {
    kind: SeqKind,
    n_max: usize,
    all_match: bool,
    rows: &'a [LimitRow],
}

fn render_limit(
    kind: SeqKind,
    n_max: usize,
    rows: &[LimitRow],
    format: Format,
    width: Option<usize>,
) -> String {
    let all_match = rows.iter().all(|r| r.matches);
    match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string(&LimitJson {
                kind,
                n_max,
                all_match,
                rows
            })
            .expect("serializable")
        ),
        Format::Csv => {
            let mut out = String::from("n,k,at_lambda_zero,classical,matches\n");
            for r in rows {
                let k = r.k.map(|k| k.to_string()).unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.n, k, r.at_lambda_zero, r.classical, r.matches
                ));
            }
            out
        }
        Format::Text => {
            let mut out = format!("# {kind} at l = 0 vs classical\n");
            for r in rows {
                let idx = match r.k {
                    Some(k) => format!("n={} k={k}", r.n),
                    None => format!("n={}", r.n),
                };
                let status = if r.matches { "ok" } else { "MISMATCH" };
                out.push_str(&format!(
                    "{idx}: {status} | {} | {}\n",
                    elide(&r.at_lambda_zero.to_string(), width),
                    elide(&r.classical.to_string(), width)
                ));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["degspivey"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn elide_keeps_ends() {
        assert_eq!(elide("abcdefghij", Some(7)), "ab...ij");
        assert_eq!(elide("abc", Some(7)), "abc");
        assert_eq!(elide("abcdefghij", None), "abcdefghij");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["table", "--kind", "nope"]).0, 2);
        assert_eq!(
            run_args(&["table", "--kind", "deg-bell", "--n-max", "-1"]).0,
            2
        );
        assert_eq!(
            run_args(&["table", "--kind", "deg-bell", "--bind", "l=1/0"]).0,
            2
        );
        assert_eq!(run_args(&["series", "--gf", "bogus"]).0, 2);
        assert_eq!(run_args(&["verify"]).0, 2);
        assert_eq!(run_args(&["verify", "--id", "theorem9"]).0, 2);
        assert_eq!(
            run_args(&["verify", "--id", "theorem1", "--bind", "l=0"]).0,
            2
        );
        assert_eq!(
            run_args(&["poly", "--kind", "deg-stirling2", "--n", "3"]).0,
            2
        );
        assert_eq!(run_args(&["limit", "--kind", "rising-factorial"]).0, 2);
    }

    #[test]
    fn poly_query() {
        let (code, out, _) = run_args(&[
            "poly",
            "--kind",
            "fully-deg-bell",
            "--n",
            "2",
            "--format",
            "text",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "x + x^2 - l*x - l*x^2\n");
        let (_, out, _) = run_args(&[
            "poly",
            "--kind",
            "deg-stirling2",
            "--n",
            "3",
            "--k",
            "2",
            "--format",
            "text",
        ]);
        assert_eq!(out, "3 - 3*l\n");
    }
}

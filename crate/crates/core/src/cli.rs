//! Command-line front end: `design`, `verify`, `bound`, `convert`.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::code_model::{
    dopr_from_wpr, standardize, wpr_from_binary, wpr_from_dopr, BinaryCode, CodeParams, Dopr, Wpr,
};
use crate::correlation::johnson_bound;
use crate::designer::{design, DesignConfig};
use crate::document::{verify_document, CodeSetDocument};
use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ARGS: i32 = 1;
pub const EXIT_EMPTY: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "ooc",
    version,
    about = "Design and verify optical orthogonal codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Repr {
    Binary,
    Wpr,
    Dopr,
    Standard,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct a family of code sets.
    Design {
        /// Code length; a comma list gives one class per entry.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Code weight; a single value is broadcast over all lengths.
        #[arg(long, value_delimiter = ',', required = true)]
        w: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        lambda_a: usize,
        #[arg(long, default_value_t = 1)]
        lambda_c: usize,
        /// Cap on cliques carried between stages.
        #[arg(long)]
        max_sets: Option<usize>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Re-check every invariant of a saved JSON document.
    Verify { path: PathBuf },
    /// Print the Johnson upper bound on set size.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: usize,
        #[arg(long)]
        lambda: usize,
    },
    /// Convert a code between representations.
    Convert {
        #[arg(long, group = "input")]
        binary: Option<String>,
        #[arg(long, group = "input", value_delimiter = ',')]
        wpr: Option<Vec<usize>>,
        #[arg(long, group = "input", value_delimiter = ',')]
        dopr: Option<Vec<usize>>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Repr::Dopr)]
        to: Repr,
    },
}

/// Failure of a subcommand, carrying its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn args(e: impl ToString) -> Self {
        Failure {
            code: EXIT_ARGS,
            message: e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => EXIT_IO,
            _ => EXIT_ARGS,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses argv and runs the command, writing results to `out`.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ARGS } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Design {
            n,
            w,
            lambda_a,
            lambda_c,
            max_sets,
            out: path,
            format,
        } => {
            let params = class_list(&n, &w, lambda_a, lambda_c)?;
            let config = DesignConfig::new(params).with_max_sets(max_sets);
            let family = design(&config)?;
            let doc = CodeSetDocument::from_family(&family, &config);
            let text = match format {
                Format::Json => doc.to_json()?,
                Format::Csv => doc.to_csv(),
            };
            match path {
                Some(p) => fs::write(&p, text).map_err(|e| Failure {
                    code: EXIT_IO,
                    message: format!("{}: {e}", p.display()),
                })?,
                None => write_out(out, &text)?,
            }
            if family.is_empty() {
                log::warn!("no code set satisfies the constraints");
                return Ok(EXIT_EMPTY);
            }
            Ok(EXIT_OK)
        }
        Command::Verify { path } => {
            let text = fs::read_to_string(&path).map_err(|e| Failure {
                code: EXIT_IO,
                message: format!("{}: {e}", path.display()),
            })?;
            let doc = match CodeSetDocument::from_json(&text) {
                Ok(d) => d,
                Err(e) => {
                    write_out(out, &format!("FAIL document: {e}\n"))?;
                    return Ok(EXIT_VERIFY);
                }
            };
            let report = verify_document(&doc);
            write_out(out, &report.render())?;
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY
            })
        }
        Command::Bound { n, w, lambda } => {
            let b = johnson_bound(n, w, lambda)?;
            write_out(out, &format!("{b}\n"))?;
            Ok(EXIT_OK)
        }
        Command::Convert {
            binary,
            wpr,
            dopr,
            n,
            to,
        } => {
            let positions = parse_code(binary, wpr, dopr, n)?;
            let code = dopr_from_wpr(&positions);
            let std = standardize(&code);
            let text = match to {
                Repr::Binary => BinaryCode::from_wpr(&positions).to_string(),
                Repr::Wpr => join(positions.positions()),
                Repr::Dopr => join(code.dops()),
                Repr::Standard => join(std.dops()),
            };
            write_out(out, &format!("{text}\nstandard: {}\n", join(std.dops())))?;
            Ok(EXIT_OK)
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure {
        code: EXIT_IO,
        message: e.to_string(),
    })
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Pairs up `--n` and `--w`, broadcasting a single value.
fn class_list(
    n: &[usize],
    w: &[usize],
    lambda_a: usize,
    lambda_c: usize,
) -> Result<Vec<CodeParams>, Failure> {
    let len = n.len().max(w.len());
    if !(n.len() == len || n.len() == 1) || !(w.len() == len || w.len() == 1) {
        return Err(Failure::args(format!(
            "--n has {} values and --w has {}; lengths must match or be 1",
            n.len(),
            w.len()
        )));
    }
    (0..len)
        .map(|i| {
            let ni = n[if n.len() == 1 { 0 } else { i }];
            let wi = w[if w.len() == 1 { 0 } else { i }];
            CodeParams::new(ni, wi, lambda_a, lambda_c).map_err(Failure::from)
        })
        .collect()
}

/// Reads the input code as positions; a DoPR input is anchored at 0.
fn parse_code(
    binary: Option<String>,
    wpr: Option<Vec<usize>>,
    dopr: Option<Vec<usize>>,
    n: Option<usize>,
) -> Result<Wpr, Failure> {
    if let Some(b) = binary {
        let code = BinaryCode::parse(&b)?;
        if let Some(n) = n {
            if n != code.n() {
                return Err(Failure::args(format!(
                    "binary string has length {}, --n is {n}",
                    code.n()
                )));
            }
        }
        return Ok(wpr_from_binary(&code)?);
    }
    let n = n.ok_or_else(|| Failure::args("--n is required with --wpr or --dopr"))?;
    if let Some(p) = wpr {
        return Ok(Wpr::from_unsorted(p, n)?);
    }
    if let Some(d) = dopr {
        return Ok(wpr_from_dopr(&Dopr::new(d, n)?));
    }
    Err(Failure::args("one of --binary, --wpr, --dopr is required"))
}

//! Command-line front end. Exit codes: 0 success, 1 a check failed,
//! 2 bad input.

mod builtin;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::cobordism::{diamond_suite, parse_cobordism};
use crate::cube::{self, check_d_squared, homology, smith_normal_form, Coefficients, SignRule};
use crate::cube::linalg::Matrix;
use crate::error::{Error, Result};
use crate::pair::io::{load_pair, to_json};
use crate::pair::{verify, FrobeniusPair};
use crate::pole::{degree_report, parse_sides};
use crate::theory::{manifest, parse_theory, Theory};

pub use builtin::{build_builtin, parse_params, specialize_params, BUILTINS, DOUBLE_KEYS, RANK2_KEYS};

/// Environment variable naming an axiom file to use instead of the shipped one.
pub const AXIOMS_ENV: &str = "FROBPAIR_AXIOMS";

#[derive(Parser, Debug)]
#[command(name = "frobpair", version, about = "Exact checks for commutative Frobenius pairs with Möbius maps")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PairSource {
    /// Pair structure file (JSON).
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    pair: Option<PathBuf>,
    /// Built-in pair.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(BUILTINS))]
    builtin: Option<String>,
    /// `key=value` construction parameters or variable substitutions.
    #[arg(long, value_delimiter = ',')]
    params: Vec<String>,
}

impl PairSource {
    fn load(&self) -> Result<FrobeniusPair> {
        let params = parse_params(&self.params)?;
        match (&self.pair, &self.builtin) {
            (Some(path), _) => specialize_params(&load_pair(path)?, &params),
            (None, Some(name)) => build_builtin(name, &params),
            (None, None) => Err(Error::Input("one of --pair or --builtin is required".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CoeffArg {
    Q,
    Z,
    Z2,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a pair against the axiom table.
    Verify {
        #[command(flatten)]
        source: PairSource,
        /// Axiom file; defaults to $FROBPAIR_AXIOMS, then the shipped table.
        #[arg(long)]
        axioms: Option<PathBuf>,
        /// Only these groups.
        #[arg(long, value_delimiter = ',')]
        groups: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
    },
    /// Write a built-in pair as a structure file.
    Construct {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(BUILTINS))]
        builtin: String,
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate a cobordism word.
    Eval {
        #[command(flatten)]
        source: PairSource,
        word: PathBuf,
    },
    /// Run the critical-point exchange cases.
    Diamond {
        #[command(flatten)]
        source: PairSource,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
    },
    /// Check d² = 0 on a state cube and compute its homology.
    Cube {
        #[command(flatten)]
        source: PairSource,
        cube: PathBuf,
        #[arg(long, value_enum, default_value = "q")]
        coeff: CoeffArg,
        /// Variable substitutions applied before homology.
        #[arg(long, value_delimiter = ',')]
        specialize: Vec<String>,
    },
    /// Pole degree of each component given as a word over `+` and `-`.
    #[command(allow_hyphen_values = true)]
    Degree {
        #[arg(required = true)]
        components: Vec<String>,
    },
    /// Smith normal form of an integer matrix file.
    Snf { matrix: PathBuf },
}

fn load_theory(path: Option<&Path>) -> Result<Theory> {
    let path = path.map(Path::to_path_buf).or_else(|| std::env::var_os(AXIOMS_ENV).map(PathBuf::from));
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            parse_theory(&text)
        }
        None => Ok(manifest::shipped()),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Parses whitespace-separated integer rows; `#` starts a comment.
pub fn parse_matrix(text: &str) -> Result<Matrix<BigInt>> {
    let rows: Vec<Vec<BigInt>> = text
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|x| x.parse::<BigInt>().map_err(|_| Error::Parse(format!("'{x}' is not an integer"))))
                .collect()
        })
        .collect::<Result<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("rows have different lengths".into()));
    }
    Ok(Matrix::from_rows(cols, rows))
}

/// Runs one command, writing to `out`; returns the exit status.
fn execute(cli: Cli, out: &mut dyn Write) -> Result<u8> {
    let io = |e: std::io::Error| Error::Io(e.to_string());
    match cli.command {
        Command::Verify { source, axioms, groups, report } => {
            let theory = load_theory(axioms.as_deref())?;
            let pair = source.load()?;
            let groups = (!groups.is_empty()).then_some(groups);
            let r = verify(&pair, &theory.equations, groups.as_deref());
            let text = match report {
                ReportFormat::Text => report::text(&r, Some(theory.version)),
                ReportFormat::Json => report::json(&r, Some(theory.version)),
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(if r.passed() { 0 } else { 1 })
        }
        Command::Construct { builtin, params, output } => {
            let pair = build_builtin(&builtin, &parse_params(&params)?)?;
            let text = to_json(&pair);
            match output {
                Some(p) => std::fs::write(&p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
            Ok(0)
        }
        Command::Eval { source, word } => {
            let pair = source.load()?;
            let w = parse_cobordism(&read(&word)?)?;
            let m = w.evaluate(&pair)?;
            out.write_all(report::linmap(&pair, &m).as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Diamond { source, report } => {
            let pair = source.load()?;
            let r = diamond_suite(&pair);
            let text = match report {
                ReportFormat::Text => report::text(&r, None),
                ReportFormat::Json => report::json(&r, None),
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(if r.passed() { 0 } else { 1 })
        }
        Command::Cube { source, cube: path, coeff, specialize } => {
            let pair = specialize_params(&source.load()?, &parse_params(&specialize)?)?;
            let c = cube::load_cube(&path)?;
            if let Some(w) = check_d_squared(&c, &pair, SignRule::Before)? {
                writeln!(
                    out,
                    "d^2 != 0: d{}∘d{} from {} to {} at {}: {}",
                    w.degree + 1,
                    w.degree,
                    w.source,
                    w.target,
                    w.input,
                    w.value
                )
                .map_err(io)?;
                return Ok(1);
            }
            let coefficients = match coeff {
                CoeffArg::Q => Coefficients::Rationals,
                CoeffArg::Z => Coefficients::Integers,
                CoeffArg::Z2 => Coefficients::IntegersMod2,
            };
            let h = homology(&c, &pair, coefficients)?;
            out.write_all(report::homology(&h).as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Degree { components } => {
            let cs = components.iter().map(|c| parse_sides(c)).collect::<Result<Vec<_>>>()?;
            writeln!(out, "{}", degree_report(&cs)?).map_err(io)?;
            Ok(0)
        }
        Command::Snf { matrix } => {
            let m = parse_matrix(&read(&matrix)?)?;
            out.write_all(report::snf(&smith_normal_form(&m)).as_bytes()).map_err(io)?;
            Ok(0)
        }
    }
}

/// Entry point for the binary.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return ExitCode::from(2);
            }
            let _ = write!(out, "{}", e.render());
            return ExitCode::SUCCESS;
        }
    };
    match execute(cli, out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitCode::from(2)
        }
    }
}

//! `schroder`: trees, Hopf operations, cumulants, Wick polynomials and the
//! verification suite from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 I/O or format error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use schroder_core::hopf::{
    antipode, coproduct, iterated_reduced_coproduct, reduced_coproduct, AntipodeMethod,
    TensorElement, Word,
};
use schroder_core::ncprob::{
    conv_inverse, cumulants_from_moments, moments_from_cumulants, wick, CumulantFunctional,
    CumulantKind, CumulantMethod, InverseMethod, WickMethod, WordTable,
};
use schroder_core::partitions::tree_to_ncp;
use schroder_core::rational::format_q;
use schroder_core::trees::{enum_boolean, enum_prime, enum_schroder, enum_schroder_by_k};
use schroder_core::{verify, Error};

#[derive(Parser)]
#[command(
    name = "schroder",
    version,
    about = "Schröder trees, the double tensor Hopf algebra and non-commutative cumulants, in exact arithmetic"
)]
struct Cli {
    /// Human-readable output instead of canonical JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate or count Schröder trees.
    #[command(subcommand)]
    Trees(TreesCmd),
    /// Antipode and coproducts of words.
    #[command(subcommand)]
    Hopf(HopfCmd),
    /// Moment-cumulant transforms, inverses and Wick polynomials.
    #[command(subcommand)]
    Prob(ProbCmd),
    /// Run every cross-formula identity up to a degree.
    Verify {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum TreesCmd {
    /// One tree per line in the `(o,(o,o))` grammar.
    Enum {
        #[arg(long)]
        n: usize,
        /// Keep trees with exactly K internal vertices.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, conflicts_with = "boolean")]
        prime: bool,
        #[arg(long)]
        boolean: bool,
        /// Append the non-crossing partition of each tree.
        #[arg(long)]
        with_ncp: bool,
        /// Append the Murua coefficient of the skeleton.
        #[arg(long)]
        murua: bool,
    },
    /// Counts by number of internal vertices.
    Count {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum HopfCmd {
    Antipode {
        #[arg(long, value_parser = parse_word)]
        word: Word,
        #[arg(long, default_value = "schroder", value_parser = parse_antipode_method)]
        method: AntipodeMethod,
    },
    Coproduct {
        #[arg(long, value_parser = parse_word)]
        word: Word,
        /// Drop the terms with a unit factor.
        #[arg(long)]
        reduced: bool,
        /// The k-fold iterated reduced coproduct.
        #[arg(long, value_name = "K", conflicts_with = "reduced")]
        iterate: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ProbCmd {
    Cumulants {
        #[arg(long, value_parser = parse_kind)]
        kind: CumulantKind,
        #[arg(long)]
        moments: PathBuf,
        #[arg(long, value_parser = parse_cumulant_method)]
        method: Option<CumulantMethod>,
    },
    Moments {
        /// Defaults to the `kind` field of the cumulant file.
        #[arg(long, value_parser = parse_kind)]
        kind: Option<CumulantKind>,
        #[arg(long)]
        cumulants: PathBuf,
    },
    Wick(WickArgs),
    Inverse {
        #[arg(long)]
        moments: PathBuf,
        #[arg(long, default_value = "antipode", value_parser = parse_inverse_method)]
        method: InverseMethod,
    },
}

#[derive(Args)]
struct WickArgs {
    #[arg(long, value_parser = parse_word)]
    word: Word,
    #[arg(long)]
    moments: PathBuf,
    #[arg(long, default_value = "schroder", value_parser = parse_wick_method)]
    method: WickMethod,
}

fn parse_word(s: &str) -> Result<Word, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_antipode_method(s: &str) -> Result<AntipodeMethod, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<CumulantKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_cumulant_method(s: &str) -> Result<CumulantMethod, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_inverse_method(s: &str) -> Result<InverseMethod, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_wick_method(s: &str) -> Result<WickMethod, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Verification(String),
    Usage(String),
    Input(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Usage(m) | Failure::Input(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Format(_)
            | Error::MissingEntry(_)
            | Error::DegreeOverflow { .. } => Failure::Input(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Trees(cmd) => trees(cmd),
        Command::Hopf(cmd) => hopf(cmd, cli.pretty),
        Command::Prob(cmd) => prob(cmd, cli.pretty),
        Command::Verify { degree, seed } => run_verify(*degree, *seed, cli.pretty),
    }
}

fn trees(cmd: &TreesCmd) -> Result<String, Failure> {
    let mut out = String::new();
    match cmd {
        TreesCmd::Enum {
            n,
            k,
            prime,
            boolean,
            with_ncp,
            murua,
        } => {
            let all = match (prime, boolean, k) {
                (true, _, _) => enum_prime(*n)?,
                (_, true, _) => enum_boolean(*n)?,
                (_, _, Some(k)) => enum_schroder_by_k(*n, *k)?,
                _ => enum_schroder(*n)?,
            };
            for t in all
                .iter()
                .filter(|t| k.is_none_or(|k| t.internal_count() == k))
            {
                write!(out, "{t}").unwrap();
                if *with_ncp {
                    write!(out, "\t{}", tree_to_ncp(t)?).unwrap();
                }
                if *murua {
                    write!(out, "\t{}", format_q(&t.murua_coefficient()?)).unwrap();
                }
                out.push('\n');
            }
        }
        TreesCmd::Count { n } => {
            let mut total = 0;
            out.push_str("k\tcount\n");
            for k in 1..=(*n).max(1) {
                let c = if *n == 0 {
                    0
                } else {
                    enum_schroder_by_k(*n, k)?.len()
                };
                total += c;
                writeln!(out, "{k}\t{c}").unwrap();
            }
            if *n == 0 {
                total = enum_schroder(0)?.len();
            }
            writeln!(out, "total\t{total}").unwrap();
        }
    }
    Ok(out)
}

fn element_output(x: &TensorElement, pretty: bool) -> String {
    if pretty {
        format!("{x}\n")
    } else {
        format!("{}\n", x.to_json())
    }
}

fn hopf(cmd: &HopfCmd, pretty: bool) -> Result<String, Failure> {
    let x = match cmd {
        HopfCmd::Antipode { word, method } => {
            antipode(&TensorElement::word(word.clone()), *method)?
        }
        HopfCmd::Coproduct {
            word,
            reduced,
            iterate,
        } => {
            let w = TensorElement::word(word.clone());
            match (reduced, iterate) {
                (_, Some(0)) => return Err(Failure::Usage("--iterate must be at least 1".into())),
                (_, Some(k)) => iterated_reduced_coproduct(&w, *k)?,
                (true, None) => reduced_coproduct(&w)?,
                (false, None) => coproduct(&w)?,
            }
        }
    };
    Ok(element_output(&x, pretty))
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{} is not valid JSON: {e}", path.display())))
}

fn json_output(v: &Value, pretty: bool) -> String {
    let s = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    };
    format!("{}\n", s.expect("JSON values serialize"))
}

fn prob(cmd: &ProbCmd, pretty: bool) -> Result<String, Failure> {
    match cmd {
        ProbCmd::Cumulants {
            kind,
            moments,
            method,
        } => {
            let phi = WordTable::from_json(&read_json(moments)?)?;
            let method = method.unwrap_or_else(|| kind.default_method());
            let c = cumulants_from_moments(*kind, &phi, method)?;
            Ok(json_output(&c.to_json(), pretty))
        }
        ProbCmd::Moments { kind, cumulants } => {
            let v = read_json(cumulants)?;
            let file_kind = match v.get("kind") {
                None => None,
                Some(k) => Some(
                    k.as_str()
                        .ok_or_else(|| Failure::Input("\"kind\" must be a string".into()))?
                        .parse::<CumulantKind>()
                        .map_err(|e| Failure::Input(e.to_string()))?,
                ),
            };
            let kind = match (kind, file_kind) {
                (Some(a), Some(b)) if *a != b => {
                    return Err(Failure::Usage(format!(
                        "--kind {a} disagrees with the file's kind {b}"
                    )))
                }
                (Some(a), _) => *a,
                (None, Some(b)) => b,
                (None, None) => {
                    return Err(Failure::Usage(
                        "the cumulant file has no \"kind\"; pass --kind".into(),
                    ))
                }
            };
            let c = CumulantFunctional {
                kind,
                table: WordTable::from_json(&v)?,
            };
            Ok(json_output(&moments_from_cumulants(&c)?.to_json(), pretty))
        }
        ProbCmd::Wick(WickArgs {
            word,
            moments,
            method,
        }) => {
            let phi = WordTable::from_json(&read_json(moments)?)?;
            Ok(element_output(&wick(word, &phi, *method)?, pretty))
        }
        ProbCmd::Inverse { moments, method } => {
            let phi = WordTable::from_json(&read_json(moments)?)?;
            let inv = conv_inverse(&phi, *method)?;
            Ok(json_output(&inv.to_json_with("inverse", None), pretty))
        }
    }
}

fn run_verify(degree: usize, seed: u64, pretty: bool) -> Result<String, Failure> {
    let report = verify::run(degree, seed)?;
    let out = if pretty {
        let mut s = String::new();
        for c in &report.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(s, "{status} {} ({} cases)", c.name, c.cases).unwrap();
            for e in &c.examples {
                writeln!(s, "    {e}").unwrap();
            }
        }
        s
    } else {
        json_output(&report.to_json(), false)
    };
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

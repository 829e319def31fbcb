//! Command-line front end.
//!
//! Exit status: 0 success, 1 validation or check failure, 2 usage error, 3 I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classify::{classify_prefix, DEFAULT_MAX_DEPTH};
use crate::engine::{build_algebra, dump_table, valid_prefix, CentralizerSeq, Violation};
use crate::error::Error;
use crate::field::{Prime, ProjPoint};
use crate::sequences::{
    afs_sequence, decompose_constituents, deflate_h_times, inflate, normalize, parse_sequence,
    specialize, to_compact, to_record, AfsParams, Direction,
};
use crate::verify::{
    enumerate, node_budget_from_env, EnumerationConfig, SuiteRunner, VerifyConfig, SUITE_NAMES,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "maxclass", version, about = "Graded Lie algebras of maximal class over F_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One-line JSON record.
    #[default]
    Json,
    /// `p=3:0,0,inf`.
    Compact,
}

#[derive(Args, Debug)]
pub struct Input {
    /// Sequence file to read; stdin when absent or `-`.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Output {
    /// File to write; stdout when absent or `-`.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit the centralizer sequence of AFS(a, b, n, p).
    Afs {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, conflicts_with = "infinite", required_unless_present = "infinite")]
        n: Option<u32>,
        /// Use the n = inf limit.
        #[arg(long)]
        infinite: bool,
        #[arg(long)]
        p: u64,
        /// Last weight covered.
        #[arg(long)]
        weights: u32,
        /// Print the complete constituent lengths instead of the sequence.
        #[arg(long)]
        lengths: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Inflate with respect to a point.
    Inflate {
        #[arg(long)]
        w: String,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Deflate `times` times.
    Deflate {
        #[arg(long, default_value_t = 1)]
        times: u32,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Change basis so the centralizers read y, x, y - x in order of occurrence.
    Normalize {
        /// Print the basis-change matrix to stderr.
        #[arg(long)]
        show_matrix: bool,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Collapse every centralizer outside {y, w} onto one of them.
    Specialize {
        #[arg(long)]
        w: String,
        /// `fix-y` keeps y and sends the others to w; `fix-w` keeps w and sends them to y.
        #[arg(long, default_value = "fix-y")]
        direction: String,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Check that the sequence defines an algebra of maximal class.
    Validate {
        /// Table weight; defaults to one past the last centralizer.
        #[arg(long)]
        max_weight: Option<u32>,
        #[command(flatten)]
        input: Input,
    },
    /// Dump the structure constants.
    Table {
        #[arg(long)]
        max_weight: Option<u32>,
        #[command(flatten)]
        input: Input,
    },
    /// Classify a prefix.
    Classify {
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Enumerate normalized valid prefixes and print counts per weight.
    Enumerate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        max_weight: u32,
        /// Extra weight a prefix must extend through to count as surviving;
        /// defaults to the maximum weight.
        #[arg(long)]
        horizon: Option<u32>,
        /// Extension budget; defaults to MAXCLASS_NODE_BUDGET or 10^7.
        #[arg(long)]
        budget: Option<u64>,
        /// Also list the dead-end prefixes.
        #[arg(long)]
        dead_ends: bool,
    },
    /// Run property suites.
    Verify {
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        suite: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 54)]
        max_weight: u32,
        #[arg(long)]
        horizon: Option<u32>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Check(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(e) => Failure::Io(e.to_string()),
            e @ (Error::Parse(_)
            | Error::InvalidArgument(_)
            | Error::InvalidAfsParams(_)
            | Error::NotOddPrime(_)
            | Error::WeightTooSmall { .. }
            | Error::PrimeMismatch(..)
            | Error::SingularBasisChange) => Failure::Usage(e.to_string()),
            e => Failure::Check(e.to_string()),
        }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn read_seq(&mut self, input: &Input) -> Result<CentralizerSeq, Failure> {
        let text = match input.input.as_deref() {
            Some(path) if path.as_os_str() != "-" => fs::read_to_string(path)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
            _ => {
                let mut s = String::new();
                self.stdin
                    .read_to_string(&mut s)
                    .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
                s
            }
        };
        let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
        parse_sequence(line).map_err(|e| Failure::Usage(e.to_string()))
    }

    fn write_text(&mut self, out: Option<&std::path::Path>, text: &str) -> Result<(), Failure> {
        match out {
            Some(path) if path.as_os_str() != "-" => {
                fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
            }
            _ => self
                .stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Io(format!("stdout: {e}"))),
        }
    }

    fn write_seq(&mut self, out: &Output, seq: &CentralizerSeq) -> Result<(), Failure> {
        let mut text = match out.format {
            Format::Json => to_record(seq),
            Format::Compact => to_compact(seq),
        };
        text.push('\n');
        self.write_text(out.output.as_deref(), &text)
    }

    fn json_line<T: Serialize>(&mut self, value: &T) -> Result<(), Failure> {
        let mut text = serde_json::to_string(value).expect("report serializes");
        text.push('\n');
        self.write_text(None, &text)
    }
}

fn prime(p: u64) -> Result<Prime, Failure> {
    Prime::new(p).map_err(|e| Failure::Usage(e.to_string()))
}

fn min_weight(w: u32, what: &str) -> Result<u32, Failure> {
    if w < 3 {
        return Err(Failure::Usage(format!("{what} must be at least 3, got {w}")));
    }
    Ok(w)
}

#[derive(Serialize)]
struct ValidationReport<'a> {
    valid: bool,
    max_weight: u32,
    violations: usize,
    first_violations: &'a [Violation],
}

fn execute(cmd: Command, io: &mut Io<'_>) -> Result<i32, Failure> {
    match cmd {
        Command::Afs { a, b, n, infinite, p, weights, lengths, out } => {
            let p = prime(p)?;
            let weights = min_weight(weights, "--weights")?;
            let params = AfsParams::new(a, b, if infinite { None } else { n }, p)?;
            let seq = afs_sequence(params, weights);
            if lengths {
                let d = decompose_constituents(&seq)?;
                let text: Vec<String> = d.lengths.iter().map(u32::to_string).collect();
                io.write_text(out.output.as_deref(), &format!("{}\n", text.join(",")))?;
            } else {
                io.write_seq(&out, &seq)?;
            }
        }
        Command::Inflate { w, input, out } => {
            let seq = io.read_seq(&input)?;
            let w = ProjPoint::parse(&w, seq.p)?;
            io.write_seq(&out, &inflate(&seq, w))?;
        }
        Command::Deflate { times, input, out } => {
            let seq = io.read_seq(&input)?;
            io.write_seq(&out, &deflate_h_times(&seq, times)?)?;
        }
        Command::Normalize { show_matrix, input, out } => {
            let seq = io.read_seq(&input)?;
            let (n, g) = normalize(&seq);
            if show_matrix {
                writeln!(io.stderr, "{:?}", g.matrix()).map_err(|e| Failure::Io(e.to_string()))?;
            }
            io.write_seq(&out, &n)?;
        }
        Command::Specialize { w, direction, input, out } => {
            let seq = io.read_seq(&input)?;
            let w = ProjPoint::parse(&w, seq.p)?;
            let direction: Direction = direction.parse()?;
            io.write_seq(&out, &specialize(&seq, w, direction)?)?;
        }
        Command::Validate { max_weight, input } => {
            let seq = io.read_seq(&input)?;
            let n = min_weight(max_weight.unwrap_or(seq.last_weight() + 1), "--max-weight")?;
            let (ok, report) = valid_prefix(&seq, n)?;
            io.json_line(&ValidationReport {
                valid: ok,
                max_weight: n,
                violations: report.violations.len(),
                first_violations: &report.violations[..report.violations.len().min(10)],
            })?;
            return Ok(if ok { EXIT_OK } else { EXIT_FAILURE });
        }
        Command::Table { max_weight, input } => {
            let seq = io.read_seq(&input)?;
            let n = min_weight(max_weight.unwrap_or(seq.last_weight() + 1), "--max-weight")?;
            let t = build_algebra(&seq, n)?;
            io.write_text(None, &dump_table(&t))?;
        }
        Command::Classify { max_depth, input } => {
            let seq = io.read_seq(&input)?;
            let r = classify_prefix(&seq, max_depth)?;
            io.json_line(&r.report())?;
        }
        Command::Enumerate { p, max_weight, horizon, budget, dead_ends } => {
            let p = prime(p)?;
            let max_weight = min_weight(max_weight, "--max-weight")?;
            let config = EnumerationConfig {
                p,
                max_weight,
                horizon: horizon.unwrap_or(max_weight),
                node_budget: match budget {
                    Some(b) => b,
                    None => node_budget_from_env()?,
                },
            };
            let e = enumerate(config)?;
            io.json_line(&e.summary())?;
            if dead_ends {
                for s in e.dead_ends() {
                    io.write_text(None, &format!("{}\n", to_compact(&s)))?;
                }
            }
        }
        Command::Verify { suite, all, p, max_weight, horizon, budget, seed } => {
            let p = prime(p)?;
            let max_weight = min_weight(max_weight, "--max-weight")?;
            let config = VerifyConfig {
                p,
                max_weight,
                horizon: horizon.unwrap_or(max_weight),
                node_budget: match budget {
                    Some(b) => b,
                    None => node_budget_from_env()?,
                },
                seed,
            };
            let names: Vec<String> = match (suite, all) {
                (_, true) => SUITE_NAMES.iter().map(|s| s.to_string()).collect(),
                (Some(s), false) => vec![s],
                (None, false) => return Err(Failure::Usage("give --suite NAME or --all".into())),
            };
            let mut runner = SuiteRunner::new(config);
            let mut all_passed = true;
            for name in names {
                let report = runner.run(&name)?;
                writeln!(io.stderr, "{}", report.line()).map_err(|e| Failure::Io(e.to_string()))?;
                all_passed &= report.passed();
                io.json_line(&report)?;
            }
            return Ok(if all_passed { EXIT_OK } else { EXIT_FAILURE });
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs the command against the given streams.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(stderr, "{}", e.render());
            return EXIT_USAGE;
        }
        Err(e) => {
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    let mut io = Io { stdin, stdout, stderr };
    match execute(cli.command, &mut io) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(io.stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(io.stderr, "error: {msg}");
            EXIT_IO
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(io.stderr, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! The `urd` command line.
//!
//! Exit codes: 0 success or accept, 1 verification reject, 2 I/O or parse
//! error, 3 infeasible or invalid request, 4 search timeout, 64 usage.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use urd_core::{
    admissible_spectrum, build_urd, check_point, oracle_spectrum, parse_decomposition,
    parse_unchecked, serialize_decomposition, transform_pair, verify, verify_request, BuildError,
    BuildRequest, ClassKind, Diagnosis, EngineError, SearchLimits, Strategy,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECT: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_TIMEOUT: i32 = 4;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "urd",
    version,
    about = "Uniformly resolvable {P3, K3} decompositions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Print every admissible (r, s) for order v, one "r s" pair per line.
    Spectrum { v: u32 },
    /// Build a decomposition with r path classes and s triangle classes.
    Build {
        v: u32,
        r: u32,
        s: u32,
        #[command(flatten)]
        limits: LimitArgs,
        /// Output file; "-" or absent means stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a decomposition file ("-" reads stdin).
    Verify {
        input: PathBuf,
        /// Also require this order and class counts.
        #[arg(long, num_args = 3, value_names = ["V", "R", "S"])]
        expect: Option<Vec<u32>>,
    },
    /// Replace triangle classes i and j (0-based) by three path classes.
    Transform {
        input: PathBuf,
        i: usize,
        j: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive search for tiny orders.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum OracleCommand {
    /// Every realizable (r, s) for order v, found by exhaustive search.
    Spectrum {
        v: u32,
        /// Allow v = 12, which can take hours.
        #[arg(long)]
        long_run: bool,
        /// Give up after this many seconds (0 means never).
        #[arg(long, default_value_t = 0)]
        time_limit_secs: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Developed,
    Greedy,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct LimitArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub max_restarts: Option<u32>,
    #[arg(long)]
    pub max_class_attempts: Option<u32>,
    /// 0 means no limit.
    #[arg(long)]
    pub time_limit_secs: Option<u64>,
    /// Concurrent restarts; above 1 the output no longer depends only on
    /// the seed.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, value_enum, default_value_t = StrategyArg::Developed)]
    pub strategy: StrategyArg,
}

impl LimitArgs {
    pub fn to_limits(&self) -> SearchLimits {
        let defaults = SearchLimits::default();
        SearchLimits {
            seed: self.seed,
            max_restarts: self.max_restarts.unwrap_or(defaults.max_restarts),
            max_class_attempts: self
                .max_class_attempts
                .unwrap_or(defaults.max_class_attempts),
            time_limit: match self.time_limit_secs {
                None => defaults.time_limit,
                Some(0) => None,
                Some(t) => Some(Duration::from_secs(t)),
            },
            strategy: match self.strategy {
                StrategyArg::Developed => Strategy::Developed,
                StrategyArg::Greedy => Strategy::Greedy,
            },
            threads: self.threads.max(1),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli.command, stdin, stdout, stderr),
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    if !text.contains("Usage:") {
                        let usage = <Cli as clap::CommandFactory>::command().render_usage();
                        let _ = writeln!(stderr, "\n{usage}");
                    }
                    EXIT_USAGE
                }
            }
        }
    }
}

pub fn run(
    cmd: &Command,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let result = match cmd {
        Command::Spectrum { v } => spectrum(*v, stdout),
        Command::Build {
            v,
            r,
            s,
            limits,
            out,
        } => build(*v, *r, *s, limits, out.as_deref(), stdout),
        Command::Verify { input, expect } => {
            verify_file(input, expect.as_deref(), stdin, stdout, stderr)
        }
        Command::Transform { input, i, j, out } => {
            transform(input, *i, *j, out.as_deref(), stdin, stdout)
        }
        Command::Oracle(OracleCommand::Spectrum {
            v,
            long_run,
            time_limit_secs,
        }) => oracle(*v, *long_run, *time_limit_secs, stdout),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(stderr, "urd: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type Outcome = Result<i32, Failure>;

fn io_err(e: std::io::Error) -> Failure {
    fail(EXIT_IO, e.to_string())
}

fn read_input(path: &Path, stdin: &mut dyn Read) -> Result<Vec<u8>, Failure> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        stdin.read_to_end(&mut buf).map_err(io_err)?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))
    }
}

fn write_output(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::write(p, text).map_err(|e| fail(EXIT_IO, format!("{}: {e}", p.display())))
        }
        _ => stdout.write_all(text.as_bytes()).map_err(io_err),
    }
}

fn spectrum(v: u32, stdout: &mut dyn Write) -> Outcome {
    let points = admissible_spectrum(v).map_err(|e| fail(EXIT_INFEASIBLE, e.to_string()))?;
    for p in &points.points {
        writeln!(stdout, "{} {}", p.r, p.s).map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

fn build(
    v: u32,
    r: u32,
    s: u32,
    limits: &LimitArgs,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Outcome {
    if let Diagnosis::Reject(reason) = check_point(v, r, s) {
        return Err(fail(
            EXIT_INFEASIBLE,
            format!(
                "({r},{s}) is not in the spectrum of v={v}: {}",
                reason.code()
            ),
        ));
    }
    let req = BuildRequest {
        v,
        r,
        s,
        limits: limits.to_limits(),
    };
    let d = build_urd(&req).map_err(|e| match e {
        BuildError::Engine(EngineError::SearchTimeout(_)) => fail(EXIT_TIMEOUT, e.to_string()),
        BuildError::InfeasibleSpectrum { .. } => fail(EXIT_INFEASIBLE, e.to_string()),
        other => fail(EXIT_REJECT, format!("internal error: {other}")),
    })?;
    let text = serialize_decomposition(&d);
    let reparsed = parse_decomposition(text.as_bytes()).map_err(|e| {
        fail(
            EXIT_REJECT,
            format!("internal error: output does not parse: {e}"),
        )
    })?;
    let report = verify_request(&reparsed, v, r, s);
    if let Some(first) = report.violations.first() {
        return Err(fail(
            EXIT_REJECT,
            format!("internal error: output rejected: {first}"),
        ));
    }
    write_output(out, &text, stdout)?;
    Ok(EXIT_OK)
}

fn verify_file(
    input: &Path,
    expect: Option<&[u32]>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Outcome {
    let bytes = read_input(input, stdin)?;
    let d = parse_unchecked(&bytes).map_err(|e| fail(EXIT_IO, format!("parse error: {e}")))?;
    let report = match expect {
        Some(&[v, r, s]) => verify_request(&d, v, r, s),
        _ => verify(&d),
    };
    if report.is_accept() {
        writeln!(stdout, "ACCEPT").map_err(io_err)?;
        return Ok(EXIT_OK);
    }
    for violation in &report.violations {
        writeln!(stdout, "{violation}").map_err(io_err)?;
    }
    if report.truncated {
        let _ = writeln!(stderr, "urd: further violations omitted");
    }
    Ok(EXIT_REJECT)
}

fn transform(
    input: &Path,
    i: usize,
    j: usize,
    out: Option<&Path>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Outcome {
    let bytes = read_input(input, stdin)?;
    let mut d =
        parse_decomposition(&bytes).map_err(|e| fail(EXIT_IO, format!("parse error: {e}")))?;
    let n = d.classes.len();
    if i >= n || j >= n {
        return Err(fail(
            EXIT_INFEASIBLE,
            format!("class index out of range; there are {n} classes"),
        ));
    }
    if i == j {
        return Err(fail(EXIT_INFEASIBLE, "the two classes must differ"));
    }
    for k in [i, j] {
        if d.classes[k].kind != ClassKind::Triangle {
            return Err(fail(
                EXIT_INFEASIBLE,
                format!("class {k} is not a triangle class"),
            ));
        }
    }
    let paths = transform_pair(&d.classes[i], &d.classes[j])
        .map_err(|e| fail(EXIT_INFEASIBLE, e.to_string()))?;
    let (lo, hi) = (i.min(j), i.max(j));
    d.classes.remove(hi);
    d.classes.splice(lo..=lo, paths);
    write_output(out, &serialize_decomposition(&d), stdout)?;
    Ok(EXIT_OK)
}

fn oracle(v: u32, long_run: bool, time_limit_secs: u64, stdout: &mut dyn Write) -> Outcome {
    let limits = SearchLimits {
        time_limit: (time_limit_secs > 0).then(|| Duration::from_secs(time_limit_secs)),
        ..SearchLimits::default()
    };
    let result =
        oracle_spectrum(v, &limits, long_run).map_err(|e| fail(EXIT_INFEASIBLE, e.to_string()))?;
    for p in &result.points {
        writeln!(stdout, "{} {}", p.r, p.s).map_err(io_err)?;
    }
    writeln!(stdout, "exhausted: {}", result.exhausted).map_err(io_err)?;
    Ok(if result.exhausted {
        EXIT_OK
    } else {
        EXIT_TIMEOUT
    })
}

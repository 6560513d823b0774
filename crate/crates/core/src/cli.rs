//! Command-line front end. The `expcycles` binary forwards to [`run`].
//!
//! Exit codes: 0 pass, 1 usage or parameter error, 2 a checked claim was
//! violated (or two counting methods disagreed).

use std::io::Write;
use std::path::PathBuf;

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};

use crate::census::{closed_walk_trace_all_with, periodic_points_all, reduced_trace_all, Census};
use crate::error::{Error, Result};
use crate::graph::{
    build_perturbed_graph_with, out_neighbors_closed_form, out_neighbors_oracle, Limits, PerturbParams,
    DEFAULT_MAX_VERTICES,
};
use crate::ntheory::GraphParams;
use crate::report::VerificationReport;
use crate::sweep::{run_sweep, Format, SweepMethod, SweepSpec};
use crate::verify::{
    verify_corollary, verify_lemma1_suite, verify_lemma2, verify_theorem1, verify_theorem2, Lemma1Suite,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "expcycles",
    version,
    about = "Cycles of repeated exponentiation modulo p^n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Out-neighbors of one vertex, by closed form and by coset walk.
    Neighbors {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        x: u64,
    },
    /// Closed-walk counts for k = 1..=k_max.
    Census {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long = "k-max")]
        k_max: u32,
        #[arg(long, default_value_t = 0)]
        r: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Brute)]
        method: MethodArg,
        #[command(flatten)]
        io: OutputArgs,
    },
    /// Periodic points of x -> q^x mod p^n for k = 1..=k_max.
    Periodic {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long = "k-max")]
        k_max: u32,
        #[command(flatten)]
        io: OutputArgs,
    },
    /// Check one claim and write its report as JSON.
    Verify(VerifyArgs),
    /// Tabulate counts and bounds over a parameter grid.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct GraphArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    q: u64,
}

impl GraphArgs {
    fn params(&self) -> Result<GraphParams> {
        GraphParams::new(self.p, self.n, self.q)
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest graph to build explicitly.
    #[arg(long = "max-vertices", default_value_t = DEFAULT_MAX_VERTICES)]
    max_vertices: u64,
}

impl OutputArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_vertices: self.max_vertices,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Reduced,
    Both,
}

impl From<MethodArg> for SweepMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Brute => SweepMethod::Brute,
            MethodArg::Reduced => SweepMethod::Reduced,
            MethodArg::Both => SweepMethod::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClaimArg {
    Thm1,
    Thm2,
    Corollary,
    Lemma1,
    Lemma2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    claim: ClaimArg,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, default_value_t = 0)]
    r: u64,
    #[arg(long = "k-max", default_value_t = 5)]
    k_max: u32,
    #[arg(long = "n-max", default_value_t = 3)]
    n_max: u32,
    #[arg(long, default_value_t = 100)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    io: OutputArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Primes, comma separated or repeated.
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<u64>,
    /// Bases, comma separated or repeated.
    #[arg(long, value_delimiter = ',', required = true)]
    q: Vec<u64>,
    #[arg(long = "n-min", default_value_t = 1)]
    n_min: u32,
    #[arg(long = "n-max")]
    n_max: u32,
    #[arg(long = "k-max")]
    k_max: u32,
    #[arg(long, default_value_t = 0)]
    r: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Brute)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[command(flatten)]
    io: OutputArgs,
}

fn emit(text: &str, out_path: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<()> {
    match out_path {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::Invalid(format!("--{flag} is required for this claim")))
}

fn format_set(values: &[u64]) -> String {
    let inner: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

fn cmd_neighbors(graph: &GraphArgs, x: u64, stdout: &mut dyn Write) -> Result<i32> {
    let params = graph.params()?;
    let closed = out_neighbors_closed_form(&params, x)?;
    let oracle = out_neighbors_oracle(&params, x)?;
    if closed == oracle {
        writeln!(stdout, "{} (oracle agrees)", format_set(&closed))?;
        Ok(EXIT_PASS)
    } else {
        writeln!(
            stdout,
            "{} (oracle disagrees: {})",
            format_set(&closed),
            format_set(&oracle)
        )?;
        Ok(EXIT_VIOLATION)
    }
}

fn cmd_census(
    graph: &GraphArgs,
    k_max: u32,
    r: u64,
    method: MethodArg,
    io: &OutputArgs,
    stdout: &mut dyn Write,
) -> Result<i32> {
    let params = graph.params()?;
    if r > 0 && !matches!(method, MethodArg::Brute) {
        return Err(Error::ReducedNeedsUnperturbed(r));
    }
    let brute = || -> Result<Census> {
        let g = build_perturbed_graph_with(&PerturbParams::new(params, r), io.limits())?;
        closed_walk_trace_all_with(&g, k_max, io.limits())
    };
    let (text, code) = match method {
        MethodArg::Brute => (brute()?.to_json(), EXIT_PASS),
        MethodArg::Reduced => (reduced_trace_all(&params, k_max)?.to_json(), EXIT_PASS),
        MethodArg::Both => {
            let both = [brute()?, reduced_trace_all(&params, k_max)?];
            let code = if both[0].agrees_with(&both[1]) {
                EXIT_PASS
            } else {
                EXIT_VIOLATION
            };
            (
                serde_json::to_string_pretty(&both).expect("census serializes"),
                code,
            )
        }
    };
    emit(&(text + "\n"), io.out.as_ref(), stdout)?;
    Ok(code)
}

fn cmd_periodic(graph: &GraphArgs, k_max: u32, io: &OutputArgs, stdout: &mut dyn Write) -> Result<i32> {
    let params = graph.params()?;
    let counts = periodic_points_all(&params, k_max, io.limits())?;
    let text: String = (1..=k_max)
        .zip(counts)
        .map(|(k, c)| format!("k={k}: {c}\n"))
        .collect();
    emit(&text, io.out.as_ref(), stdout)?;
    Ok(EXIT_PASS)
}

fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32> {
    let limits = args.io.limits();
    let graph_params = || -> Result<GraphParams> {
        GraphParams::new(
            require(args.p, "p")?,
            require(args.n, "n")?,
            require(args.q, "q")?,
        )
    };
    let reports: Vec<VerificationReport> = match args.claim {
        ClaimArg::Thm1 => vec![verify_theorem1(&graph_params()?, args.k_max, limits)?],
        ClaimArg::Corollary => vec![verify_corollary(&graph_params()?, args.k_max, limits)?],
        ClaimArg::Lemma2 => vec![verify_lemma2(&graph_params()?, limits)?],
        ClaimArg::Lemma1 => vec![verify_lemma1_suite(&Lemma1Suite::new(args.trials, args.seed))?],
        ClaimArg::Thm2 => verify_theorem2(
            require(args.p, "p")?,
            require(args.q, "q")?,
            args.r,
            args.n_max,
            args.k_max,
            limits,
        )?
        .into(),
    };
    let text = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        serde_json::to_string_pretty(&reports).expect("reports serialize")
    };
    emit(&(text + "\n"), args.io.out.as_ref(), stdout)?;
    Ok(if reports.iter().all(VerificationReport::passed) {
        EXIT_PASS
    } else {
        EXIT_VIOLATION
    })
}

fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write) -> Result<i32> {
    let spec = SweepSpec {
        p_list: args.p.clone(),
        q_list: args.q.clone(),
        n_min: args.n_min,
        n_max: args.n_max,
        k_max: args.k_max,
        r: args.r,
        method: args.method.into(),
        limits: args.io.limits(),
    };
    let table = run_sweep(&spec)?;
    let format = match args.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    emit(&table.render(format), args.io.out.as_ref(), stdout)?;
    Ok(if table.disagreements.is_empty() {
        EXIT_PASS
    } else {
        EXIT_VIOLATION
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Neighbors { graph, x } => cmd_neighbors(graph, *x, stdout),
        Command::Census {
            graph,
            k_max,
            r,
            method,
            io,
        } => cmd_census(graph, *k_max, *r, *method, io, stdout),
        Command::Periodic { graph, k_max, io } => cmd_periodic(graph, *k_max, io, stdout),
        Command::Verify(args) => cmd_verify(args, stdout),
        Command::Sweep(args) => cmd_sweep(args, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("expcycles").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn neighbors_output() {
        let (code, out, _) = run_capture(&["neighbors", "--p", "3", "--n", "2", "--q", "2", "--x", "0"]);
        assert_eq!(code, 0);
        assert_eq!(out, "{1, 8} (oracle agrees)\n");
        let (_, out, _) = run_capture(&["neighbors", "--p", "3", "--n", "2", "--q", "2", "--x", "5"]);
        assert_eq!(out, "{4, 5} (oracle agrees)\n");
        let (_, out, _) = run_capture(&["neighbors", "--p", "3", "--n", "1", "--q", "2", "--x", "2"]);
        assert_eq!(out, "{1, 2} (oracle agrees)\n");
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_capture(&["verify", "thm9"]).0, 1);
        assert_eq!(
            run_capture(&["neighbors", "--p", "4", "--n", "1", "--q", "1", "--x", "0"]).0,
            1
        );
        assert_eq!(
            run_capture(&["census", "--p", "3", "--n", "2", "--q", "0x2", "--k-max", "2"]).0,
            1
        );
        let (code, _, err) = run_capture(&[
            "census", "--p", "3", "--n", "1", "--q", "2", "--r", "1", "--k-max", "2", "--method", "reduced",
        ]);
        assert_eq!(code, 1);
        assert!(err.contains("unperturbed"));
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn periodic_output() {
        let (code, out, _) = run_capture(&["periodic", "--p", "3", "--n", "2", "--q", "2", "--k-max", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "k=1: 1\n");
    }
}

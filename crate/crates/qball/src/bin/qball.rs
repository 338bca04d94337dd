use clap::{Args, Parser, Subcommand};
use qball::graph::ball_graph;
use qball::rep::TruncatedPathSpace;
use qball::verify::run_report;
use qball::word::parse_expr;
use std::process::ExitCode;
use std::sync::Arc;

/// Graph algebras of quantum even-dimensional balls: build the graphs,
/// enumerate path bases, verify the defining relations, and reduce
/// symbolic words.
#[derive(Parser)]
#[command(name = "qball", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Half-dimension of the ball (the graph is E_n).
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the ball graph E_n as canonical JSON.
    Graph {
        #[command(flatten)]
        common: Common,
    },
    /// Print the truncated path basis, one path per line in canonical
    /// order.
    Paths {
        #[command(flatten)]
        common: Common,
        /// Loop-exponent cutoff N.
        #[arg(long, default_value_t = 6)]
        cutoff: u32,
    },
    /// Run the relation-check suites and emit a JSON report.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Deformation parameter; repeatable for a grid.
        #[arg(long = "q", value_name = "Q")]
        q: Vec<f64>,
        /// Loop-exponent cutoff N.
        #[arg(long, default_value_t = 6)]
        cutoff: u32,
        /// Residual tolerance.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Seed for the randomized cross-checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Suite id filter; repeatable. All suites when omitted.
        #[arg(long = "suite", value_name = "ID")]
        suite: Vec<String>,
    },
    /// Reduce a symbolic *-word over E_n to normal form.
    Reduce {
        #[command(flatten)]
        common: Common,
        /// Expression in the word grammar, e.g. "S[e]* S[e]".
        word: String,
    },
}

fn emit(out: &Option<std::path::PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Graph { common } => {
            let g = match ball_graph(common.n) {
                Ok(g) => g,
                Err(e) => return usage_error(&e.to_string()),
            };
            match emit(&common.out, &g.to_json()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => usage_error(&e.to_string()),
            }
        }
        Command::Paths { common, cutoff } => {
            let space = match TruncatedPathSpace::for_ball(common.n, cutoff) {
                Ok(s) => s,
                Err(e) => return usage_error(&e.to_string()),
            };
            let mut text = space.manifest().join("\n");
            text.push('\n');
            match emit(&common.out, &text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => usage_error(&e.to_string()),
            }
        }
        Command::Verify { common, q, cutoff, tol, seed, suite } => {
            let qs = if q.is_empty() { vec![0.5] } else { q };
            if let Some(&bad) = qs.iter().find(|&&v| !(v > 0.0 && v < 1.0)) {
                return usage_error(&format!("q must satisfy 0 < q < 1, got {bad}"));
            }
            if common.n == 0 {
                return usage_error("n must be at least 1");
            }
            if cutoff < 2 {
                return usage_error("cutoff must be at least 2");
            }
            if !(tol > 0.0) {
                return usage_error("tolerance must be positive");
            }
            if let Some(bad) = suite
                .iter()
                .find(|s| !qball::verify::SUITES.contains(&s.as_str()))
            {
                return usage_error(&format!(
                    "unknown suite {bad}; expected one of {}",
                    qball::verify::SUITES.join(", ")
                ));
            }
            let (report, pass) = match run_report(common.n, &qs, cutoff, tol, seed, &suite) {
                Ok(r) => r,
                Err(e) => return usage_error(&e.to_string()),
            };
            let mut text = serde_json::to_string_pretty(&report).unwrap();
            text.push('\n');
            if let Err(e) = emit(&common.out, &text) {
                return usage_error(&e.to_string());
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Reduce { common, word } => {
            let g = match ball_graph(common.n) {
                Ok(g) => Arc::new(g),
                Err(e) => return usage_error(&e.to_string()),
            };
            let expr = match parse_expr(&g, &word) {
                Ok(e) => e,
                Err(e) => return usage_error(&e.to_string()),
            };
            let mut text = expr.render();
            text.push('\n');
            match emit(&common.out, &text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => usage_error(&e.to_string()),
            }
        }
    }
}

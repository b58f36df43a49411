use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use toric_boundary::groundstate::{eval_ground, eval_ground_dense, eval_ground_gf2, MarginPolicy};
use toric_boundary::lattice::Window;
use toric_boundary::pauli::PauliOp;
use toric_boundary_cli::config::{parse_suites, RunConfig};
use toric_boundary_cli::svg::{render, Fixture};
use toric_boundary_cli::{suites, verify};

#[derive(Parser)]
#[command(name = "toric-boundary", version, about = "Exact checks for the half-plane toric code with a smooth boundary")]
struct Cli {
    /// Config file of `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Window such as `window(cols=3, rows=0..4)`; its role depends on the subcommand.
    #[arg(long, global = true)]
    window: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Record per-suite wall-clock time in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and write a JSON report.
    Verify {
        /// Comma-separated suite names.
        #[arg(long)]
        suite: Option<String>,
    },
    /// Evaluate the ground state on an operator such as `X@H(0,1) Z@V(1,1)`.
    Eval {
        /// Operator terms; put a leading `-1` or `-i` phase after `--`.
        #[arg(num_args = 0..)]
        operator: Vec<String>,
        #[arg(long, value_enum, default_value_t = Oracle::Sweep)]
        oracle: Oracle,
    },
    /// Fusion, braiding and functor tables as JSON.
    Tables {
        /// Only the bulk-versus-boundary braiding comparison.
        #[arg(long)]
        pairs_only: bool,
    },
    /// Draw a fixture as SVG: lattice, cone, paths, condensation or distal.
    Diagram { fixture: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    Sweep,
    Gf2,
    Dense,
}

/// Input or configuration problems exit with 2.
struct Usage(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Usage {
    fn from(e: E) -> Usage {
        Usage(e.into())
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, Usage> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        cfg.apply_text(&text).with_context(|| format!("in {}", path.display()))?;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if cli.timings {
        cfg.timings = true;
    }
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    Ok(cfg)
}

fn cli_window(cli: &Cli) -> Result<Option<Window>, Usage> {
    Ok(cli.window.as_deref().map(Window::parse).transpose().context("--window")?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Usage> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode, Usage> {
    let mut cfg = load_config(cli)?;
    let window = cli_window(cli)?;
    match &cli.cmd {
        Cmd::Verify { suite } => {
            if let Some(s) = suite {
                cfg.suites = parse_suites(s)?;
            }
            if let Some(w) = window {
                cfg.ground_window = w;
            }
            let report = verify(&cfg);
            for s in &report.suites {
                eprintln!("{:<14} {}", s.name, s.verdict);
            }
            emit(cfg.out.as_deref(), &report.to_json())?;
            Ok(if report.all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Eval { operator, oracle } => {
            let p = PauliOp::parse(&operator.join(" "))?;
            let v = match oracle {
                Oracle::Sweep => eval_ground(&p)?,
                Oracle::Gf2 => eval_ground_gf2(&p, &MarginPolicy::default()),
                Oracle::Dense => {
                    let w = window
                        .or_else(|| Window::around(&p.support(), 0))
                        .unwrap_or(Window::new(0, 0, 0).expect("valid"));
                    eval_ground_dense(&p, &w)?
                }
            };
            println!("{v}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Tables { pairs_only } => {
            if let Some(w) = window {
                cfg.fusion_window = w;
            }
            match suites::tables(&cfg, *pairs_only) {
                Ok(v) => {
                    let mut text = serde_json::to_string_pretty(&v)?;
                    text.push('\n');
                    emit(cfg.out.as_deref(), &text)?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::Diagram { fixture } => {
            let f: Fixture = fixture.parse()?;
            if let Some(w) = window {
                cfg.diagram_window = w;
            }
            match render(f, &cfg) {
                Ok(svg) => {
                    emit(cfg.out.as_deref(), &svg)?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

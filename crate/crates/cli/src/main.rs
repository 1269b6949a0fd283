use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use limitideal::ideal::DEFAULT_DEPTH_CAP;
use limitideal::literal::parse_system;
use limitideal::oracle::{default_budget, run_suite, SuiteReport, SUITE_NAMES};
use limitideal::scenario::{
    emit_fixture, run_scenario, section_fixtures, RunOptions, ScenarioReport,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "limitideal",
    version,
    about = "Boundary functions of ideal sets over eventually periodic points"
)]
struct Cli {
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Overrides suite budgets and sampled pair counts.
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH_CAP)]
    depth_cap: usize,
    /// Also write machine-readable results here.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Refinement system, e.g. ";2" or "2.3;2.3".
    #[arg(long, global = true, value_name = "LITERAL")]
    system: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run { path: PathBuf },
    /// Print a built-in scenario, or run it with --run.
    Fixture {
        name: String,
        #[arg(long)]
        run: bool,
    },
    /// Run the built-in fixtures of one section: section2, section3 or all.
    PaperExamples { section: String },
    /// Run one property suite, or all of them.
    Suite { name: String },
    /// Classify a boundary function or ideal expression.
    Classify {
        op: Op,
        literal: String,
        /// Read the literal as an ideal expression.
        #[arg(long)]
        ideal: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Meet,
    Join,
}

struct Fail(u8, String);

impl Cli {
    fn options(&self) -> Result<RunOptions, Fail> {
        let system = match &self.system {
            Some(s) => Some(parse_system(s).map_err(|e| Fail(2, format!("--system: {e}")))?),
            None => None,
        };
        Ok(RunOptions {
            seed: self.seed,
            budget: self.budget,
            depth_cap: self.depth_cap,
            system,
        })
    }
}

fn write_json(path: Option<&Path>, value: &Value) -> Result<(), Fail> {
    let Some(path) = path else { return Ok(()) };
    let text = serde_json::to_string_pretty(value).expect("json values serialize");
    fs::write(path, text + "\n").map_err(|e| Fail(2, format!("{}: {e}", path.display())))
}

fn scenario(cli: &Cli, text: &str) -> Result<u8, Fail> {
    let report = run_scenario(text, cli.options()?);
    println!("{report}");
    write_json(
        cli.json.as_deref(),
        &serde_json::to_value(&report).expect("report serializes"),
    )?;
    Ok(report.exit_code as u8)
}

fn paper_examples(cli: &Cli, section: &str) -> Result<u8, Fail> {
    let names = section_fixtures(section).map_err(|e| Fail(2, e.to_string()))?;
    let opts = RunOptions {
        system: None,
        ..cli.options()?
    };
    let mut code = 0;
    let mut out = serde_json::Map::new();
    for name in names {
        let text = emit_fixture(name).expect("section fixtures exist");
        let report: ScenarioReport = run_scenario(&text, opts.clone());
        println!("== {name}\n{report}");
        code = code.max(report.exit_code as u8);
        out.insert(
            name.to_string(),
            serde_json::to_value(&report).expect("report serializes"),
        );
    }
    write_json(cli.json.as_deref(), &Value::Object(out))?;
    Ok(code)
}

fn suites(cli: &Cli, name: &str) -> Result<u8, Fail> {
    let opts = cli.options()?;
    let sys = match opts.system {
        Some(sys) => sys,
        None => parse_system(";2").expect("binary system parses"),
    };
    let names: Vec<&str> = match name {
        "all" => SUITE_NAMES.to_vec(),
        n => vec![n],
    };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for n in names {
        let budget = opts.budget.unwrap_or_else(|| default_budget(n));
        let start = Instant::now();
        let report = run_suite(n, &sys, opts.seed, budget).map_err(|e| Fail(2, e.to_string()))?;
        println!("{report} in {:.2?}", start.elapsed());
        reports.push(report);
    }
    let code = if reports.iter().all(SuiteReport::passed) {
        0
    } else {
        1
    };
    write_json(cli.json.as_deref(), &json!(reports))?;
    Ok(code)
}

fn run(cli: &Cli) -> Result<u8, Fail> {
    match &cli.command {
        Command::Run { path } => {
            let text = fs::read_to_string(path)
                .map_err(|e| Fail(2, format!("{}: {e}", path.display())))?;
            scenario(cli, &text)
        }
        Command::Fixture { name, run } => {
            let text = emit_fixture(name).map_err(|e| Fail(2, e.to_string()))?;
            if *run {
                scenario(cli, &text)
            } else {
                print!("{text}");
                Ok(0)
            }
        }
        Command::PaperExamples { section } => paper_examples(cli, section),
        Command::Suite { name } => suites(cli, name),
        Command::Classify { op, literal, ideal } => {
            let op = match op {
                Op::Meet => "meet",
                Op::Join => "join",
            };
            let kind = if *ideal { "ideal " } else { "" };
            let mut opts_cli = cli.options()?;
            if opts_cli.system.is_none() {
                opts_cli.system = Some(parse_system(";2").expect("binary system parses"));
            }
            let report = run_scenario(&format!("classify {op} {kind}{literal}\n"), opts_cli);
            println!("{report}");
            write_json(
                cli.json.as_deref(),
                &serde_json::to_value(&report).expect("report serializes"),
            )?;
            Ok(report.exit_code as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

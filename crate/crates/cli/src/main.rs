use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use exstructa::report::{
    cmd_classify, cmd_graph, cmd_verify, init_threads, Check, GraphTarget, JobConfig, StructureSelection, Suite,
    VerifyConfig, DEFAULT_AXIOM_BOUND, DEFAULT_DIM_BOUND,
};
use serde_json::json;

/// Classify exact structures on module categories of Nakayama algebras and
/// cross-check them against a finite-field oracle.
#[derive(Parser)]
#[command(name = "exstructa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One row per exact structure: Artin–Wedderburn, Jordan–Hölder, diamond.
    Classify {
        /// JSON job file; flags given alongside it override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Preset (`A3`, `linear:3,2,1`, `cyclic:2,2`), built-in fixture
        /// (`sink-a3`, `source-a3`) or fixture JSON path.
        #[arg(long)]
        algebra: Option<String>,
        /// Prime of the oracle field: 2 or 3 [default: 2].
        #[arg(long)]
        field: Option<u32>,
        /// Largest object dimension examined [default: 6].
        #[arg(long)]
        dim_bound: Option<usize>,
        /// `all` or comma-separated hex codes of B.
        #[arg(long)]
        structures: Option<String>,
        /// Also validate the exact-category axioms.
        #[arg(long)]
        axioms: bool,
        /// Largest object dimension in the axiom checks [default: 4].
        #[arg(long)]
        axiom_bound: Option<usize>,
        /// Directory for classification.csv and classification.md.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
    /// Oracle agreement suites; prints PASS/FAIL per suite.
    Verify {
        /// As for `classify`, or `linear-upto:N` for a sweep.
        #[arg(long, default_value = "linear-upto:4")]
        algebra: String,
        /// `eb` compares interval membership with the oracle; `aw` the AW,
        /// JH and diamond verdicts; `counting` the E-simple counts.
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Oracle fields; the first one drives every suite except `eb`.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        fields: Vec<u32>,
        #[arg(long, default_value_t = DEFAULT_DIM_BOUND)]
        dim_bound: usize,
        #[arg(long, default_value_t = DEFAULT_AXIOM_BOUND)]
        axiom_bound: usize,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// DOT export of the AR quiver or of a subobject poset.
    Graph {
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long, default_value = "A3")]
        algebra: String,
        #[arg(long, default_value_t = 2)]
        field: u32,
        #[arg(long, default_value_t = DEFAULT_DIM_BOUND)]
        dim_bound: usize,
        /// Direct sum of indecomposables, e.g. `(2,1)+(1,2)`.
        #[arg(long)]
        object: Option<String>,
        /// Hex code of B.
        #[arg(long, default_value = "0")]
        structure: String,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Markdown,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Axioms,
    Eb,
    Aw,
    Counting,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Axioms => Suite::Axioms,
            SuiteArg::Eb => Suite::Eb,
            SuiteArg::Aw => Suite::Aw,
            SuiteArg::Counting => Suite::Counting,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Ar,
    Poset,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Fail(serde_json::Value),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match init_threads()
        .map_err(anyhow::Error::from)
        .and_then(|()| run(cli.command))
    {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail(summary)) => {
            eprintln!("{summary}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Classify {
            config,
            algebra,
            field,
            dim_bound,
            structures,
            axioms,
            axiom_bound,
            out,
            format,
        } => {
            let mut job = match &config {
                Some(path) => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    JobConfig::from_json(&text)?
                }
                None => JobConfig::new(algebra.clone().context("either --config or --algebra is required")?),
            };
            if let Some(a) = algebra {
                job.algebra = a;
            }
            if let Some(p) = field {
                job.field = p;
            }
            if let Some(d) = dim_bound {
                job.dim_bound = d;
            }
            if let Some(s) = structures {
                job.structures = StructureSelection::parse(&s);
            }
            if axioms && !job.checks.contains(&Check::Axioms) {
                job.checks.push(Check::Axioms);
            }
            if let Some(b) = axiom_bound {
                job.axiom_bound = b;
            }
            if out.is_some() {
                job.output_dir = out;
            }
            let table = cmd_classify(&job)?;
            match format {
                Format::Markdown => print!("{}", table.to_markdown()),
                Format::Csv => print!("{}", table.to_csv()?),
                Format::Json => println!("{}", serde_json::to_string_pretty(&table)?),
            }
            if table.consistent() {
                Ok(Outcome::Pass)
            } else {
                let bad: Vec<&str> = table
                    .rows
                    .iter()
                    .filter(|r| !r.consistent(table.nakayama))
                    .map(|r| r.b.as_str())
                    .collect();
                Ok(Outcome::Fail(
                    json!({"status": "fail", "command": "classify", "inconsistent_structures": bad}),
                ))
            }
        }
        Command::Verify {
            algebra,
            suite,
            fields,
            dim_bound,
            axiom_bound,
            json,
        } => {
            let config = VerifyConfig {
                algebra,
                suite: suite.into(),
                fields,
                dim_bound,
                axiom_bound,
            };
            let report = cmd_verify(&config)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{report}");
            }
            if report.passed() {
                Ok(Outcome::Pass)
            } else {
                let failures: Vec<_> = report
                    .suites
                    .iter()
                    .filter(|s| !s.passed())
                    .map(|s| json!({"suite": s.suite, "failure": s.failure}))
                    .collect();
                Ok(Outcome::Fail(
                    json!({"status": "fail", "command": "verify", "failures": failures}),
                ))
            }
        }
        Command::Graph {
            target,
            algebra,
            field,
            dim_bound,
            object,
            structure,
            out,
        } => {
            let target = match target {
                TargetArg::Ar => GraphTarget::ArQuiver,
                TargetArg::Poset => GraphTarget::Poset {
                    object: object.context("--object is required for a poset graph")?,
                    structure,
                },
            };
            let dot = cmd_graph(&algebra, field, dim_bound, &target)?;
            match out {
                Some(path) => std::fs::write(&path, dot).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{dot}"),
            }
            Ok(Outcome::Pass)
        }
    }
}

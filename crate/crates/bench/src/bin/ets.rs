use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ets_bench::dot::write_dot;
use ets_bench::experiment::{learn_cell, run_experiment, summarize, write_rows, write_summary, ExperimentConfig, Row, Seeds};
use ets_bench::families::{gen_asml, gen_random, gen_ssh, gen_tcp};
use ets_bench::model::ModelSpec;
use ets_bench::Result;
use ets_core::automata::equivalence;
use ets_core::experts::{communities, Expert};
use ets_core::suite::{ets, w_method};

#[derive(Parser)]
#[command(name = "ets", version, about = "Mealy machine learning with expert test suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Asml,
    Tcp,
    Ssh,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Wmethod,
    Ets,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a benchmark machine as DOT.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 3)]
        a: usize,
        #[arg(long, default_value_t = 5)]
        b: usize,
        /// States (random family).
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Inputs (random family).
        #[arg(long, default_value_t = 11)]
        inputs: usize,
        /// Outputs (random family).
        #[arg(long, default_value_t = 5)]
        outputs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Learn a machine and report query costs.
    Learn {
        /// DOT file or model spec (e.g. `asml:3:5`, `coffee`).
        #[arg(long)]
        sul: String,
        #[arg(long, default_value = "moe")]
        strategy: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0.2)]
        gamma: f64,
        #[arg(long, default_value = "default")]
        mu: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[arg(long)]
        test_budget: Option<u64>,
        /// Append the run as a CSV row (with header) to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the final hypothesis as DOT.
        #[arg(long)]
        hypothesis: Option<PathBuf>,
        /// Keep testing the final hypothesis until the budget runs out instead
        /// of stopping once it is correct.
        #[arg(long)]
        full_budget: bool,
    },
    /// Print a test suite, one word per line.
    Suite {
        #[arg(long)]
        hyp: String,
        #[arg(long, value_enum, default_value = "ets")]
        method: Method,
        #[arg(long, default_value = "trivial")]
        expert: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Check two machines for equivalence (exit code 1 when they differ).
    Equiv { a: String, b: String },
    /// Print the communities of a machine's active state graph.
    Communities { model: String },
    /// Run an experiment described by a TOML file.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// Exit with code 1 when any run fails to learn its model.
        #[arg(long)]
        strict: bool,
        /// Override the CSV output path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn load(spec: &str) -> Result<ets_core::automata::MealyMachine> {
    spec.parse::<ModelSpec>()?.load()
}

fn sink(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { family, a, b, n, inputs, outputs, seed, output } => {
            let m = match family {
                Family::Asml => gen_asml(a, b)?,
                Family::Tcp => gen_tcp(a, b)?,
                Family::Ssh => gen_ssh(a, b)?,
                Family::Random => gen_random(n, inputs, outputs, seed)?,
            };
            sink(output.as_ref())?.write_all(write_dot(&m).as_bytes())?;
        }
        Command::Learn { sul, strategy, k, gamma, mu, seed, budget, test_budget, csv, hypothesis, full_budget } => {
            let cfg = ExperimentConfig {
                models: vec![sul.clone()],
                strategies: vec![strategy.clone()],
                seeds: Seeds::List(vec![seed]),
                budget,
                k,
                gamma,
                mu,
                master_seed: 0,
                threads: 1,
                test_budget,
                warmup_states: 5,
                stop_when_learned: !full_budget,
                output: None,
                summary: None,
            };
            cfg.validate()?;
            let (record, h) = learn_cell(&cfg, &sul, &strategy, seed)?;
            let row = Row::from_record(&record);
            print_row(&row);
            if let Some(p) = csv {
                write_rows(std::slice::from_ref(&row), File::create(p)?)?;
            }
            if let (Some(p), Some(h)) = (hypothesis, h) {
                std::fs::write(p, write_dot(&h))?;
            }
        }
        Command::Suite { hyp, method, expert, k } => {
            let h = load(&hyp)?;
            let suite = match method {
                Method::Wmethod => w_method(&h, k),
                Method::Ets => ets(&h, Expert::parse(&expert, k)?, k)?,
            };
            print!("{}", suite.render(h.inputs()));
        }
        Command::Equiv { a, b } => {
            let (ma, mb) = (load(&a)?, load(&b)?);
            return Ok(match equivalence(&ma, &mb)? {
                None => {
                    println!("equivalent");
                    ExitCode::SUCCESS
                }
                Some(w) => {
                    println!("{}", ma.inputs().render(&w));
                    ExitCode::from(1)
                }
            });
        }
        Command::Communities { model } => {
            let m = load(&model)?;
            for block in communities(&m).blocks() {
                let names: Vec<&str> = block.iter().map(|&q| m.label(q)).collect();
                println!("{}", names.join(" "));
            }
        }
        Command::Experiment { config, strict, output } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if output.is_some() {
                cfg.output = output;
            }
            let rows = run_experiment(&cfg)?;
            for r in rows.iter().filter(|r| !r.note.is_empty()) {
                eprintln!("{} {} seed {}: {}", r.model, r.strategy, r.seed, r.note);
            }
            write_rows(&rows, sink(cfg.output.as_ref())?)?;
            if let Some(p) = &cfg.summary {
                write_summary(&summarize(&rows), File::create(p)?)?;
            }
            if strict && rows.iter().any(|r| !r.learned) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_row(r: &Row) {
    let s = r.stats;
    println!(
        "model={} strategy={} seed={} learned={} states={} learn_inputs={} learn_resets={} test_inputs={} test_resets={} total={}",
        r.model,
        r.strategy,
        r.seed,
        u8::from(r.learned),
        r.states,
        s.learn_symbols,
        s.learn_resets,
        s.test_symbols,
        s.test_resets,
        s.total()
    );
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

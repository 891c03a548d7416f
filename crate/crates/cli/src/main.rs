use std::path::PathBuf;
use std::process::ExitCode;

use ballmapper::pipeline::{
    cmd_ball_summary, cmd_describe, cmd_gen, cmd_variable_summary, run, Dataset, GenConfig,
    RunConfig,
};
use ballmapper::{Error, LandmarkOrder, LayoutParams, MissingPolicy, DEFAULT_BIN_COUNT};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "ballmapper", version, about = "Ball Mapper graphs and per-ball summaries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the cover, graph and layout; write the SVG, results and merged CSVs.
    Run(RunArgs),
    /// Per-ball means of several variables from a merged CSV.
    BallSummary(BallSummaryArgs),
    /// Per-ball distribution of one variable from a merged CSV.
    VariableSummary(VariableSummaryArgs),
    /// Write a synthetic dataset.
    Gen(GenArgs),
    /// Summary statistics and correlation matrix of numeric columns.
    Describe(DescribeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Data,
    Shuffle,
}

#[derive(Args)]
struct RunArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Comma-separated axis columns.
    #[arg(long, value_delimiter = ',', required = true)]
    axes: Vec<String>,
    #[arg(short, long, allow_negative_numbers = true)]
    epsilon: f64,
    /// Column whose ball means color the nodes.
    #[arg(long)]
    color: Option<String>,
    #[arg(long, default_value_t = 0.05)]
    repulsion: f64,
    #[arg(long, default_value_t = 0.01)]
    attraction: f64,
    #[arg(long, default_value_t = 500)]
    iterations: usize,
    /// Draw ball ids on the discs.
    #[arg(long)]
    labels: bool,
    /// Rescale each axis to mean 0 and sample sd 1 before covering.
    #[arg(long)]
    standardize: bool,
    /// Row identifier column; must be unique and is not used as an axis.
    #[arg(long)]
    id_col: Option<String>,
    #[arg(long, value_enum, default_value_t = Order::Data)]
    order: Order,
    /// Seed for `--order shuffle`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BIN_COUNT)]
    bins: usize,
    /// Drop rows with missing or non-numeric axis or color values instead of failing.
    #[arg(long)]
    drop_missing: bool,
    #[arg(long, default_value = ",")]
    delimiter: char,
    #[arg(long, default_value = "bm_graph.svg")]
    svg: PathBuf,
    #[arg(long, default_value = "bm_results.csv")]
    results: PathBuf,
    #[arg(long, default_value = "bm_merged.csv")]
    merged: PathBuf,
}

#[derive(Args)]
struct BallSummaryArgs {
    /// Merged CSV written by `run`.
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    vars: Vec<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = ",")]
    delimiter: char,
}

#[derive(Args)]
struct VariableSummaryArgs {
    /// Merged CSV written by `run`.
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    var: String,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write a boxplot SVG.
    #[arg(long)]
    boxplot: Option<PathBuf>,
    #[arg(long, default_value = ",")]
    delimiter: char,
}

#[derive(Args)]
struct GenArgs {
    /// `gauss` or `x`.
    dataset: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(short, long, default_value_t = 1000)]
    n: usize,
    #[arg(short, long, default_value_t = 2)]
    k: usize,
}

#[derive(Args)]
struct DescribeArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    columns: Vec<String>,
    #[arg(long, default_value = ",")]
    delimiter: char,
}

fn delimiter_byte(c: char) -> Result<u8, Error> {
    if c.is_ascii() {
        Ok(c as u8)
    } else {
        Err(Error::InvalidParameter(format!("delimiter `{c}` is not ASCII")))
    }
}

fn exec(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run(a) => {
            let config = RunConfig {
                input: a.input,
                delimiter: delimiter_byte(a.delimiter)?,
                axes: a.axes,
                color: a.color,
                epsilon: a.epsilon,
                layout: LayoutParams::new(a.repulsion, a.attraction, a.iterations),
                labels: a.labels,
                standardize: a.standardize,
                id_column: a.id_col,
                order: match a.order {
                    Order::Data => LandmarkOrder::Data,
                    Order::Shuffle => LandmarkOrder::Shuffle { seed: a.seed },
                },
                search: Default::default(),
                bins: a.bins,
                missing: if a.drop_missing {
                    MissingPolicy::Drop
                } else {
                    MissingPolicy::Reject
                },
                svg: a.svg,
                results: a.results,
                merged: a.merged,
            };
            let out = run::<f64>(&config)?;
            if !out.dropped.is_empty() {
                println!("dropped {} incomplete rows", out.dropped.len());
            }
            if let Some(spec) = &out.standardization {
                for c in &spec.columns {
                    println!("standardized {}: mean {} sd {}", c.column, c.mean, c.sd);
                }
            }
            println!(
                "{} points, {} balls, {} edges",
                out.cloud.len(),
                out.n_balls(),
                out.graph.edges().len()
            );
            println!(
                "wrote graph {}, results {}, merged {}",
                config.svg.display(),
                config.results.display(),
                config.merged.display()
            );
        }
        Command::BallSummary(a) => {
            let table = cmd_ball_summary::<f64>(
                &a.input,
                &a.vars,
                a.output.as_deref(),
                delimiter_byte(a.delimiter)?,
            )?;
            if a.output.is_none() {
                table.write_csv(std::io::stdout().lock())?;
            }
        }
        Command::VariableSummary(a) => {
            let table = cmd_variable_summary::<f64>(
                &a.input,
                &a.var,
                a.output.as_deref(),
                a.boxplot.as_deref(),
                delimiter_byte(a.delimiter)?,
            )?;
            if a.output.is_none() {
                table.write_csv(std::io::stdout().lock())?;
            }
        }
        Command::Gen(a) => {
            let config = GenConfig {
                dataset: a.dataset.parse::<Dataset>()?,
                seed: a.seed,
                n: a.n,
                k: a.k,
                out: a.output,
            };
            let cloud = cmd_gen(&config)?;
            println!("wrote {} rows to {}", cloud.len(), config.out.display());
        }
        Command::Describe(a) => {
            let (summary, corr) =
                cmd_describe::<f64>(&a.input, &a.columns, delimiter_byte(a.delimiter)?)?;
            summary.write_csv(std::io::stdout().lock())?;
            println!();
            println!(",{}", corr.columns.join(","));
            for (name, row) in corr.columns.iter().zip(&corr.values) {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:.4}")).collect();
                println!("{name},{}", cells.join(","));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match exec(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_io() { 2 } else { 1 })
        }
    }
}

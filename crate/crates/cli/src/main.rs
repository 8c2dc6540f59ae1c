use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use coxeter_bipolar::census::{CensusParams, DEFAULT_ESSENTIAL_MARGIN, DEFAULT_VERTEX_CAP};
use coxeter_bipolar::criteria::CriteriaOptions;
use coxeter_bipolar::diagram::DEFAULT_ENUMERATION_CAP;
use coxeter_bipolar_cli::{cmd_analyze, cmd_census, cmd_emit, cmd_probe, AnalyzeOptions, EmitFormat, Outcome, Probe, EXIT_ERROR};

/// Bipolarity of Coxeter groups.
///
/// INPUT is a TOML or JSON file, or `catalog:<name>` for a shipped fixture.
#[derive(Parser)]
#[command(name = "bipolar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct CensusArgs {
    /// Tubular neighbourhood radius.
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Census radius R, measured from a centre the removed walls preserve;
    /// the census is repeated at R - 2.
    #[arg(long, default_value_t = 8)]
    radius: u32,
    #[arg(long, default_value_t = DEFAULT_ESSENTIAL_MARGIN)]
    margin: u32,
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    vertex_cap: usize,
}

impl CensusArgs {
    fn params(self) -> CensusParams {
        CensusParams::new(self.k, self.radius)
            .with_margin(self.margin)
            .with_vertex_cap(self.vertex_cap)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide bipolarity and summarise the diagram. Exit 0 bipolar, 1 not.
    Analyze {
        input: String,
        /// Report every failing subset, not only the first.
        #[arg(long)]
        all_witnesses: bool,
        /// Also census every generator.
        #[arg(long)]
        census: bool,
        #[command(flatten)]
        census_args: CensusArgs,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        rank_cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Count essential components around a generator's wall. Exit 3 if unstable.
    Census {
        input: String,
        #[arg(long)]
        generator: String,
        #[command(flatten)]
        census_args: CensusArgs,
        #[arg(long)]
        json: bool,
    },
    /// Probes on single elements. Words are generator names separated by spaces.
    Probe {
        input: String,
        #[command(subcommand)]
        probe: ProbeCommand,
        #[arg(long, global = true)]
        json: bool,
    },
    /// Write the analysis as JSON or the Coxeter graph as DOT.
    Emit {
        input: String,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ProbeCommand {
    /// How far the wall of T strays from the wall of R, at radius R - 2 and R.
    Dominate {
        r: String,
        t: String,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 8)]
        radius: u32,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        vertex_cap: usize,
    },
    /// Census around the walls of the parabolic on the support of an involution.
    Involution {
        w: String,
        #[command(flatten)]
        census_args: CensusArgs,
    },
    /// The sets J, T, U at vertex V for reflection R.
    Jtu { v: String, r: String },
    /// Nearly bipolar conditions at vertex V for reflection R.
    Nearly { v: String, r: String },
    /// Bipolar conditions at vertex V for reflection R.
    Bipolar { v: String, r: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

fn run(cli: Cli) -> Result<Outcome, coxeter_bipolar_cli::CliError> {
    match cli.command {
        Command::Analyze {
            input,
            all_witnesses,
            census,
            census_args,
            rank_cap,
            json,
        } => cmd_analyze(
            &input,
            AnalyzeOptions {
                criteria: CriteriaOptions {
                    enumeration_cap: rank_cap,
                    all_witnesses,
                },
                census: census.then(|| census_args.params()),
            },
            json,
        ),
        Command::Census {
            input,
            generator,
            census_args,
            json,
        } => cmd_census(&input, &generator, census_args.params(), json),
        Command::Probe { input, probe, json } => {
            let (probe, cap) = match probe {
                ProbeCommand::Dominate {
                    r,
                    t,
                    k,
                    radius,
                    vertex_cap,
                } => (Probe::Dominate { r, t, k, radius }, vertex_cap),
                ProbeCommand::Involution { w, census_args } => (
                    Probe::Involution {
                        w,
                        params: census_args.params(),
                    },
                    census_args.vertex_cap,
                ),
                ProbeCommand::Jtu { v, r } => (Probe::Jtu { v, r }, DEFAULT_VERTEX_CAP),
                ProbeCommand::Nearly { v, r } => (Probe::Nearly { v, r }, DEFAULT_VERTEX_CAP),
                ProbeCommand::Bipolar { v, r } => (Probe::Bipolar { v, r }, DEFAULT_VERTEX_CAP),
            };
            cmd_probe(&input, &probe, json, cap)
        }
        Command::Emit { input, format, output } => {
            let format = match format {
                Format::Json => EmitFormat::Json,
                Format::Dot => EmitFormat::Dot,
            };
            cmd_emit(&input, format, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}

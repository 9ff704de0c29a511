use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fockchannel::cli::{self, Format, OracleOpts, PresetOpts, SweepSpec};
use fockchannel::purity::{optimal_cat_phase, InitialState, Path};
use fockchannel::{CatPhase, ChannelParams, Complex64, Error, Execution, PolyOrder, Result};

/// Purity of Fock states and their superpositions in Gaussian channels.
#[derive(Parser)]
#[command(name = "fockchannel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Purity along a time grid for one state and channel.
    Sweep {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        bath: BathArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Number states |1>, |2> at mu_inf = 0.5, r in {0, 1}.
    Fig1 {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Relative purity gain of the superposition at the optimal phase.
    Fig2 {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Agreement report between all paths on the reference grid.
    Validate {
        /// Comma-separated paths to compare [default: all].
        #[arg(long, value_delimiter = ',')]
        paths: Vec<Path>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print a channel in both parametrizations.
    Convert {
        #[command(flatten)]
        bath: BathArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct StateArgs {
    /// Photon number n, or `cat01` for (|0> + e^{i theta}|1>)/sqrt(2).
    #[arg(long)]
    state: String,
    /// Superposition phase [default: the purity-optimal phase for the bath].
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
}

#[derive(Args)]
#[group(required = true, multiple = true)]
struct BathArgs {
    #[arg(long, conflicts_with_all = ["big_n", "m_re", "m_im"])]
    mu_inf: Option<f64>,
    #[arg(long, requires = "mu_inf")]
    r: Option<f64>,
    #[arg(long, requires = "mu_inf", allow_negative_numbers = true)]
    phi: Option<f64>,
    #[arg(long = "N", id = "big_n", value_name = "N")]
    big_n: Option<f64>,
    #[arg(
        long = "M-re",
        id = "m_re",
        value_name = "RE",
        requires = "big_n",
        allow_negative_numbers = true
    )]
    m_re: Option<f64>,
    #[arg(
        long = "M-im",
        id = "m_im",
        value_name = "IM",
        requires = "big_n",
        allow_negative_numbers = true
    )]
    m_im: Option<f64>,
}

impl BathArgs {
    fn channel(&self) -> Result<ChannelParams> {
        match (self.mu_inf, self.big_n) {
            (Some(mu), None) => {
                cli::channel_from_bath(mu, self.r.unwrap_or(0.0), self.phi.unwrap_or(0.0))
            }
            (None, Some(n)) => ChannelParams::new(
                1.0,
                n,
                Complex64::new(self.m_re.unwrap_or(0.0), self.m_im.unwrap_or(0.0)),
            ),
            _ => Err(Error::Validation(
                "give either --mu-inf [--r --phi] or --N [--M-re --M-im]".into(),
            )),
        }
    }
}

#[derive(Args)]
struct GridArgs {
    /// Largest gamma*t.
    #[arg(long)]
    t_max: Option<f64>,
    /// Number of grid points including gamma*t = 0.
    #[arg(long)]
    points: Option<usize>,
    /// Comma-separated subset of closed_form,quadrature_1d,quadrature_2d,oracle.
    #[arg(long, value_delimiter = ',')]
    paths: Vec<Path>,
}

#[derive(Args)]
struct RunArgs {
    /// Oracle Fock truncation [default: from a tail estimate].
    #[arg(long)]
    dim: Option<usize>,
    /// Oracle step in gamma*t.
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    /// Worker threads [default: all cores].
    #[arg(long)]
    jobs: Option<usize>,
    /// Output file [default: stdout].
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = Format::Csv)]
    format: Format,
}

impl RunArgs {
    fn oracle(&self) -> OracleOpts {
        OracleOpts {
            dim: self.dim,
            dt: self.dt,
            ..OracleOpts::default()
        }
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn parse_state(args: &StateArgs, channel: &ChannelParams) -> Result<InitialState> {
    if args.state == "cat01" {
        let theta = args
            .theta
            .map(CatPhase::new)
            .unwrap_or_else(|| optimal_cat_phase(&channel.bath()));
        return Ok(InitialState::Cat01 { theta });
    }
    if args.theta.is_some() {
        return Err(Error::Validation(
            "--theta applies to --state cat01 only".into(),
        ));
    }
    let n: u32 = args.state.parse().map_err(|_| {
        Error::Validation(format!(
            "--state must be a photon number or cat01, got {:?}",
            args.state
        ))
    })?;
    Ok(InitialState::Number {
        n: PolyOrder::new(n)?,
    })
}

fn preset(grid: &GridArgs, run: &RunArgs, mut base: PresetOpts) -> PresetOpts {
    if let Some(t) = grid.t_max {
        base.t_max = t;
    }
    if let Some(p) = grid.points {
        base.points = p;
    }
    if !grid.paths.is_empty() {
        base.paths = grid.paths.clone();
    }
    base.oracle = run.oracle();
    base
}

fn run(cli: Cli) -> Result<()> {
    let exec = Execution::default();
    match cli.command {
        Command::Sweep {
            state,
            bath,
            grid,
            run,
        } => {
            let channel = bath.channel()?;
            let spec = SweepSpec {
                initial_state: parse_state(&state, &channel)?,
                channel,
                t_max: grid.t_max.unwrap_or(1.0),
                points: grid.points.unwrap_or(101),
                paths: if grid.paths.is_empty() {
                    vec![Path::Quadrature2d]
                } else {
                    grid.paths
                },
                oracle: run.oracle(),
            };
            spec.validate()?;
            let series = exec.with_jobs(run.jobs, || cli::run_sweep(&spec, exec))?;
            let out = output(&run.out)?;
            match run.format {
                Format::Csv => cli::write_series_csv(&series, out),
                Format::Json => {
                    cli::write_json(&serde_json::json!({ "spec": spec, "series": series }), out)
                }
            }
        }
        Command::Fig1 { grid, run } => {
            let opts = preset(&grid, &run, cli::fig1_defaults());
            let rows = exec.with_jobs(run.jobs, || cli::fig1(&opts, exec))?;
            let out = output(&run.out)?;
            match run.format {
                Format::Csv => cli::write_fig1_csv(&rows, out),
                Format::Json => cli::write_json(&rows, out),
            }
        }
        Command::Fig2 { grid, run } => {
            let opts = preset(&grid, &run, cli::fig2_defaults());
            let rows = exec.with_jobs(run.jobs, || cli::fig2(&opts, exec))?;
            let out = output(&run.out)?;
            match run.format {
                Format::Csv => cli::write_fig2_csv(&rows, out),
                Format::Json => cli::write_json(&rows, out),
            }
        }
        Command::Validate { paths, run } => {
            let paths = if paths.is_empty() {
                Path::ALL.to_vec()
            } else {
                paths
            };
            let report = exec.with_jobs(run.jobs, || cli::validate(&paths, &run.oracle(), exec))?;
            let out = output(&run.out)?;
            match run.format {
                Format::Csv => cli::write_report_csv(&report, out)?,
                Format::Json => cli::write_json(&report, out)?,
            }
            if let Some(bad) = report.rows.iter().find(|r| !r.pass) {
                return Err(Error::Accuracy {
                    what: format!("{} {} vs {}", bad.case, bad.path, bad.reference),
                    estimate: bad.max_abs_diff,
                    abs_err: bad.tolerance,
                });
            }
            Ok(())
        }
        Command::Convert { bath, out } => {
            cli::write_json(&cli::convert(&bath.channel()?), output(&out)?)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("FOCKCHANNEL_LOG", "warn"))
        .init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

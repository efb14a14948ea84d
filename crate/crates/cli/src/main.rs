//! `extalg`: predict, compute and compare Ext-algebra dimensions of graded
//! quotients of polynomial rings.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use extalg_core::jobfile::JobSpec;
use extalg_core::linalg::FieldSpec;
use extalg_core::pipeline::{
    run_betti, run_dual, run_example, run_predict, run_resolve, run_verify, ExampleKind, PipelineConfig,
    DEFAULT_COST_CAP,
};
use extalg_core::polyalgebra::{GradedIdeal, MonomialOrder};
use extalg_core::report::{Format, Report, REPORT_SCHEMA};
use extalg_core::resolution::ResolutionBounds;

#[derive(Parser, Debug)]
#[command(name = "extalg", version, about = "Ext-algebra dimensions for almost linear quotients")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Field characteristic (a prime).
    #[arg(long = "char", global = true)]
    characteristic: Option<u32>,
    /// Largest cohomological degree p.
    #[arg(long, global = true)]
    max_p: Option<usize>,
    /// Largest internal degree s.
    #[arg(long, global = true)]
    max_deg: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    /// Accepted for scripts; runs never use randomness.
    #[arg(long, global = true)]
    seedless: bool,
    /// Cap on estimated dense matrix cells.
    #[arg(long, default_value_t = DEFAULT_COST_CAP, global = true)]
    cost_cap: u128,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
    Json,
}

/// A job: a job file, or variables and generators on the command line.
#[derive(Args, Debug)]
struct JobArgs {
    /// Job file with [field], [ring], [ideal] and [bounds] sections.
    job: Option<PathBuf>,
    /// Comma-separated variable names (instead of a job file).
    #[arg(long, conflicts_with = "job")]
    vars: Option<String>,
    /// Ideal generator; repeat for several.
    #[arg(long = "gen", requires = "vars")]
    generators: Vec<String>,
    /// Monomial order: grlex or grevlex.
    #[arg(long)]
    order: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Koszul dual of the ambient polynomial ring.
    Dual(JobArgs),
    /// Minimal resolution of k over R (the oracle).
    Resolve(JobArgs),
    /// Betti table of R over the ambient ring.
    Betti(JobArgs),
    /// Predicted Ext dimensions.
    Predict(JobArgs),
    /// Prediction against the oracle.
    Verify(JobArgs),
    /// Determinantal example families.
    #[command(subcommand)]
    Example(Example),
    /// Print the JSON schema of reports.
    Schema,
}

#[derive(Subcommand, Debug)]
enum Example {
    /// Maximal minors of a generic n x m matrix.
    Determinantal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// n-th power of the irrelevant ideal of k[x0..xs].
    Power {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
}

fn load_job(args: &JobArgs, global: &Global) -> Result<JobSpec, String> {
    let mut job = match (&args.job, &args.vars) {
        (Some(path), _) => JobSpec::read(path).map_err(|e| e.to_string())?,
        (None, Some(vars)) => JobSpec {
            variables: vars
                .split(',')
                .map(|v| v.trim().to_string())
                .filter(|v| !v.is_empty())
                .collect(),
            generators: args.generators.iter().map(|g| (0, g.clone())).collect(),
            ..JobSpec::default()
        },
        (None, None) => return Err("give a job file or --vars".into()),
    };
    if let Some(order) = &args.order {
        job.order = MonomialOrder::from_name(order).ok_or_else(|| format!("unknown monomial order `{order}`"))?;
    }
    if let Some(p) = global.characteristic {
        job.characteristic = p;
    }
    if let Some(p) = global.max_p {
        job.bounds.max_homological = p;
    }
    if let Some(s) = global.max_deg {
        job.bounds.max_internal = s;
    }
    job.check_bounds().map_err(|e| e.to_string())?;
    Ok(job)
}

fn run(cli: &Cli) -> Result<Report, String> {
    let g = &cli.global;
    let config = |bounds: ResolutionBounds| PipelineConfig {
        cost_cap: g.cost_cap,
        ..PipelineConfig::new(bounds)
    };
    let with_job = |args: &JobArgs, needs_ideal: bool| -> Result<_, String> {
        let job = load_job(args, g)?;
        let (ring, ideal) = if needs_ideal {
            job.build().map_err(|e| e.to_string())?
        } else {
            (job.ring().map_err(|e| e.to_string())?, GradedIdeal::zero())
        };
        Ok((ring, ideal, config(job.bounds)))
    };
    let report = match &cli.command {
        Command::Dual(a) => {
            let (ring, _, cfg) = with_job(a, false)?;
            run_dual(&ring, &cfg)
        }
        Command::Resolve(a) => {
            let (ring, ideal, cfg) = with_job(a, true)?;
            run_resolve(&ring, &ideal, &cfg)
        }
        Command::Betti(a) => {
            let (ring, ideal, cfg) = with_job(a, true)?;
            run_betti(&ring, &ideal, &cfg)
        }
        Command::Predict(a) => {
            let (ring, ideal, cfg) = with_job(a, true)?;
            run_predict(&ring, &ideal, &cfg)
        }
        Command::Verify(a) => {
            let (ring, ideal, cfg) = with_job(a, true)?;
            run_verify(&ring, &ideal, &cfg)
        }
        Command::Example(e) => {
            let field = FieldSpec::new(g.characteristic.unwrap_or(extalg_core::linalg::DEFAULT_CHARACTERISTIC))
                .map_err(|e| e.to_string())?;
            let bounds = ResolutionBounds::new(
                g.max_p.unwrap_or(extalg_core::jobfile::DEFAULT_MAX_P),
                g.max_deg.unwrap_or(extalg_core::jobfile::DEFAULT_MAX_DEG),
            );
            if bounds.max_homological == 0 || bounds.max_internal == 0 {
                return Err("bounds must be positive".into());
            }
            let kind = match *e {
                Example::Determinantal { n, m } => ExampleKind::Determinantal { n, m },
                Example::Power { n, s } => ExampleKind::Power { n, s },
            };
            run_example(kind, field, &config(bounds))
        }
        Command::Schema => unreachable!("handled before run"),
    };
    report.map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if matches!(cli.command, Command::Schema) {
        print!("{REPORT_SCHEMA}");
        return ExitCode::SUCCESS;
    }
    match run(&cli) {
        Ok(report) => {
            let format = match cli.global.format {
                OutputFormat::Text => Format::Text,
                OutputFormat::Csv => Format::Csv,
                OutputFormat::Json => Format::Json,
            };
            print!("{}", report.render(format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

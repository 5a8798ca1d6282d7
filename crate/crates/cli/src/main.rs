use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use exactcat::config::{default_cache_dir, Format, Theorem, WorkbenchConfig, DEFAULT_BUDGET};
use exactcat::{cmd_catalog, cmd_enumerate, cmd_verify, exit_code, Session, WorkbenchError};

#[derive(Parser)]
#[command(name = "exactcat", version, about = "Exact structures, balanced pairs and cotorsion pairs on finite module categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Algebra spec (TOML, or JSON with a .json extension)
    #[arg(long, global = true)]
    spec: Option<PathBuf>,

    /// Largest total dimension searched for indecomposables (overrides bounds.dim)
    #[arg(long, global = true)]
    dim_bound: Option<usize>,

    /// Axiom verification bound on total dimension; defaults to twice the largest indecomposable
    #[arg(long, global = true)]
    bound: Option<usize>,

    /// Cap on search sizes (candidate modules, assignment lattice, classes)
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,

    /// Worker threads; defaults to the number of cores
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Ignore and do not write the on-disk cache
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Indecomposables, projective/injective flags and the Ext¹ table
    Catalog,
    /// All exact structures with their relative projectives and injectives
    Enumerate,
    /// Run one theorem sweep: 2.3, 2.9, 3.3, 3.4, 3.5, 3.6, 4.3 or 2.8-4
    Verify { theorem: String },
}

fn run(cli: Cli) -> Result<i32, WorkbenchError> {
    let started = Instant::now();
    let spec = cli.spec.ok_or_else(|| WorkbenchError::Input("no algebra spec given (use --spec FILE)".into()))?;
    let config = WorkbenchConfig {
        spec_path: spec,
        dim_bound: cli.dim_bound,
        bound: cli.bound,
        budget: cli.budget,
        workers: cli.workers,
        format: cli.format,
        out: cli.out,
        use_cache: !cli.no_cache,
        cache_dir: default_cache_dir(),
    };
    config.validate()?;
    let theorem = match &cli.command {
        Command::Verify { theorem } => Some(Theorem::parse(theorem)?),
        _ => None,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.workers {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(WorkbenchError::internal)?;
    let report = pool.install(|| {
        let session = Session::open(&config)?;
        match (&cli.command, &theorem) {
            (Command::Catalog, _) => cmd_catalog(&session),
            (Command::Enumerate, _) => cmd_enumerate(&session),
            (Command::Verify { .. }, Some(t)) => cmd_verify(&session, t),
            (Command::Verify { .. }, None) => unreachable!("parsed above"),
        }
    })?;
    let mut text = match config.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    if config.format == Format::Text {
        text.push_str(&format!("elapsed {:.2} s\n", started.elapsed().as_secs_f64()));
    }
    match &config.out {
        Some(path) => std::fs::write(path, text).map_err(|e| WorkbenchError::Input(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(exit_code(&report))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("exactcat: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

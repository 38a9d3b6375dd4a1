use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stasurf::efset::EF_TOL;
use stasurf_cli::analyze::{analyze, load_surface, Overrides};
use stasurf_cli::sample::{render, sample, Format};
use stasurf_cli::share::share;
use stasurf_cli::{gallery, parse, to_json, CliError, CliResult, EXIT_PARSE};

#[derive(Parser)]
#[command(name = "stasurf", version, about = "Analyze space-like stationary surfaces in R^{3,1} from Weierstrass data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Regularity, periods, E_f, classification and value-distribution audits.
    Analyze {
        /// Surface description file, or gallery:NAME.
        surface: String,
        #[command(flatten)]
        opts: CommonOpts,
        /// Ramification targets for psi1, e.g. "0,1,-1,inf".
        #[arg(long)]
        targets: Option<String>,
    },
    /// Sample the immersion on a grid.
    Sample {
        surface: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Shared values of the psi1 of two surfaces and the unicity audit.
    Share {
        first: String,
        second: String,
        /// Count values omitted by both functions as shared.
        #[arg(long)]
        count_both_omitted: bool,
        #[arg(long, default_value_t = EF_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The example gallery.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
}

#[derive(Subcommand)]
enum GalleryAction {
    /// List entries.
    List,
    /// Analyze and sample every entry and check the recorded expectations.
    Run {
        /// Directory for reports, CSV and OBJ files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CommonOpts {
    /// Grid node counts NxM.
    #[arg(long)]
    grid: Option<String>,
    /// Grid window "a,b,c,d": u and v ranges, or r and theta ranges.
    #[arg(long)]
    domain_window: Option<String>,
    /// Period loops "x,y,r;x,y,r".
    #[arg(long)]
    loops: Option<String>,
    /// Acceptance threshold for E_f points.
    #[arg(long, default_value_t = EF_TOL)]
    tol: f64,
    /// csv, obj or json.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CommonOpts {
    fn overrides(&self) -> CliResult<Overrides> {
        Ok(Overrides {
            grid_counts: self.grid.as_deref().map(parse::grid_counts).transpose()?,
            window: self.domain_window.as_deref().map(parse::window).transpose()?,
            loops: self.loops.as_deref().map(parse::loops).transpose()?,
            targets: None,
            ef_tol: self.tol,
        })
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::parse(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Analyze { surface, opts, targets } => {
            if let Some(f) = opts.format.as_deref().filter(|f| *f != "json") {
                return Err(CliError::parse(format!("analyze writes json reports, not {f}")));
            }
            let spec = load_surface(&surface)?;
            let mut ov = opts.overrides()?;
            ov.targets = targets.as_deref().map(parse::complex_list).transpose()?;
            let report = analyze(&spec, &ov)?;
            emit(&to_json(&report), opts.out.as_ref())?;
            Ok(report.exit_code)
        }
        Command::Sample { surface, opts } => {
            let format: Format = opts.format.as_deref().unwrap_or("csv").parse()?;
            let spec = load_surface(&surface)?;
            let mesh = sample(&spec, &opts.overrides()?)?;
            if mesh.samples.is_empty() {
                eprintln!("warning: no grid node could be sampled ({} skipped)", mesh.skipped.len());
            }
            emit(&render(&mesh, format), opts.out.as_ref())?;
            Ok(0)
        }
        Command::Share { first, second, count_both_omitted, tol, out } => {
            let report = share(&load_surface(&first)?, &load_surface(&second)?, count_both_omitted, tol)?;
            emit(&to_json(&report), out.as_ref())?;
            Ok(report.exit_code)
        }
        Command::Gallery { action: GalleryAction::List } => {
            for e in gallery::entries() {
                println!("{}\t{}", e.name(), e.surface.description.as_deref().unwrap_or(""));
            }
            Ok(0)
        }
        Command::Gallery { action: GalleryAction::Run { out } } => {
            let r = gallery::run(out.as_deref())?;
            for l in &r.lines {
                println!("{l}");
            }
            Ok(if r.ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}

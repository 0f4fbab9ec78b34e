use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use perciso::experiment::{execute, validation_outcome, write_run, Command, Format, Manifest, Outcome, RunConfig};
use perciso::iso::IsoMode;
use perciso::validation;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Sub {
    Sample,
    Beta,
    Wulff,
    Cheeger,
    Profile,
    Shapes,
    Validate,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Profile,
    Cheeger,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Fmt {
    Csv,
    Json,
    Svg,
}

/// Wulff-shape isoperimetry for supercritical bond percolation on Z².
///
/// Data goes to the files under --out (with a manifest.json), or to standard
/// output when --out is absent. Logs go to standard error. Set
/// PERCISO_THREADS to choose the worker count; results do not depend on it.
#[derive(Debug, Parser)]
#[command(name = "perciso", version)]
struct Cli {
    #[arg(value_enum, required_unless_present = "manifest")]
    command: Option<Sub>,
    #[arg(long, default_value_t = 0.7)]
    p: f64,
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated scales, e.g. 16,32,64.
    #[arg(long, value_delimiter = ',')]
    n_list: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    replicas: Option<usize>,
    /// Directions per octant of an estimated norm table.
    #[arg(long)]
    dirs: Option<usize>,
    /// A single direction for `beta`, e.g. 1,0.
    #[arg(long, value_parser = parse_dir)]
    dir: Option<(f64, f64)>,
    #[arg(long)]
    eps: Option<f64>,
    /// Node budget of the exact enumerations.
    #[arg(long)]
    budget: Option<u64>,
    /// l1, l2, linf or table:<path>.
    #[arg(long)]
    norm: Option<String>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long)]
    table_scale: Option<u32>,
    #[arg(long)]
    table_replicas: Option<usize>,
    /// Which artifact goes to standard output when --out is absent.
    #[arg(long, value_enum, default_value = "csv")]
    format: Fmt,
    /// `validate` only: skip the slow criteria.
    #[arg(long)]
    quick: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Replay a manifest.json; other run flags are ignored.
    #[arg(long, conflicts_with = "command")]
    manifest: Option<PathBuf>,
}

fn parse_dir(s: &str) -> Result<(f64, f64), String> {
    let (x, y) = s.split_once(',').ok_or("expected x,y")?;
    let f = |t: &str| t.trim().parse::<f64>().map_err(|e| e.to_string());
    Ok((f(x)?, f(y)?))
}

impl Cli {
    fn config(&self) -> perciso::Result<RunConfig> {
        if let Some(m) = &self.manifest {
            return Ok(Manifest::load(m)?.config);
        }
        let command = match self.command.expect("clap requires a command") {
            Sub::Sample => Command::Sample,
            Sub::Beta => Command::Beta,
            Sub::Wulff => Command::Wulff,
            Sub::Cheeger => Command::Cheeger,
            Sub::Profile => Command::Profile,
            Sub::Shapes => Command::Shapes,
            Sub::Validate => Command::Validate,
        };
        Ok(RunConfig {
            command,
            p: self.p,
            n: self.n,
            n_list: self.n_list.clone(),
            seed: self.seed,
            replicas: self.replicas,
            dirs: self.dirs,
            dir: self.dir,
            eps: self.eps,
            budget: self.budget,
            norm: self.norm.clone(),
            mode: self.mode.map(|m| match m {
                Mode::Profile => IsoMode::Profile,
                Mode::Cheeger => IsoMode::Cheeger,
            }),
            table_scale: self.table_scale,
            table_replicas: self.table_replicas,
            format: match self.format {
                Fmt::Csv => Format::Csv,
                Fmt::Json => Format::Json,
                Fmt::Svg => Format::Svg,
            },
            quick: self.quick,
        })
    }
}

fn run(cli: &Cli) -> perciso::Result<Outcome> {
    let cfg = cli.config()?;
    let outcome = if cfg.command == Command::Validate {
        let results = validation::run_all_with(cfg.quick, &mut |r| eprintln!("{}", r.line()));
        validation_outcome(&results)?
    } else {
        execute(&cfg)?
    };
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    match &cli.out {
        Some(dir) => {
            for p in write_run(dir, &cfg, &outcome)? {
                eprintln!("wrote {}", p.display());
            }
        }
        None => {
            let a = outcome.artifacts.iter().find(|a| a.format() == cfg.format).unwrap_or(&outcome.artifacts[0]);
            std::io::stdout().write_all(&a.bytes)?;
        }
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) if o.passed == Some(false) => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": e.to_string(), "kind": format!("{e:?}").split(['(', ' ', '{']).next() }));
            ExitCode::from(3)
        }
    }
}

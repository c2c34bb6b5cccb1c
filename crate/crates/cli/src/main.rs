use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use glab_core::cli::{run, CliError, OutputFormat, TaskConfig, TASKS};

#[derive(Parser)]
#[command(name = "glab", version, about = "Verification kernels for finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Type-A Chevalley generators over prime fields.
    #[command(subcommand)]
    Chevalley(ChevalleyCmd),
    /// Thick subsets and simplicity certificates.
    #[command(subcommand)]
    Thick(ThickCmd),
    /// Permutation identities and factorizations.
    #[command(subcommand)]
    Perm(PermCmd),
    /// Central extensions and commutator identities.
    #[command(subcommand)]
    Ext(ExtCmd),
    /// Structure of a group.
    Group(Common),
    /// Root system data.
    Roots(Common),
    /// Ramsey number lookup.
    Ramsey(Common),
    /// Run a task from a key=value config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the task names accepted in config files.
    Tasks,
}

#[derive(Subcommand)]
enum ChevalleyCmd {
    VerifyRelations(Common),
    ClassCube(Common),
    ClassCubeSweep(Common),
    Gauss(Common),
    Transport(Common),
    RegularSequence(Common),
}

#[derive(Subcommand)]
enum ThickCmd {
    Analyze(Common),
    Gn(Common),
    SimplicityDegree(Common),
    CoveringNumber(Common),
    Spread(Common),
}

#[derive(Subcommand)]
enum PermCmd {
    Identities(Common),
    Express(Common),
    Distance(Common),
}

#[derive(Subcommand)]
enum ExtCmd {
    Build(Common),
    Split(Common),
    Bound(Common),
    Iwasawa(Common),
    Club(Common),
    Semidirect(Common),
}

#[derive(Args, Clone, Default)]
struct Common {
    #[arg(long)]
    group: Option<String>,
    /// Subset spec; repeat for tasks taking several sets.
    #[arg(long = "set")]
    sets: Vec<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Diagonal entries of a torus element, e.g. "2,3".
    #[arg(long)]
    t: Option<String>,
    /// Matrix (row-major residues) or a file holding one.
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    u: Option<String>,
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long)]
    tau: Option<String>,
    #[arg(long = "max-m")]
    max_m: Option<usize>,
    /// Root system such as A2 or B3.
    #[arg(long)]
    system: Option<String>,
    /// Cocycle file, `zero` or `random`.
    #[arg(long)]
    cocycle: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long = "order-cap")]
    order_cap: Option<usize>,
    /// Extra task parameter as key=value.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
}

impl Common {
    fn config(&self, task: &str) -> Result<TaskConfig, CliError> {
        let mut cfg = TaskConfig::new(task);
        cfg.group = self.group.clone();
        cfg.sets = self.sets.clone();
        cfg.n = self.n;
        cfg.m = self.m;
        cfg.p = self.p;
        cfg.cap = self.cap;
        cfg.seed = self.seed;
        cfg.format = self.format.parse::<OutputFormat>()?;
        let named = [
            ("t", self.t.clone()),
            ("g", self.g.clone()),
            ("u", self.u.clone()),
            ("sigma", self.sigma.clone()),
            ("tau", self.tau.clone()),
            ("max-m", self.max_m.map(|v| v.to_string())),
            ("system", self.system.clone()),
            ("cocycle", self.cocycle.clone()),
            ("samples", self.samples.map(|v| v.to_string())),
            ("order-cap", self.order_cap.map(|v| v.to_string())),
        ];
        for (k, v) in named {
            if let Some(v) = v {
                cfg.params.insert(k.to_string(), v);
            }
        }
        for kv in &self.params {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| CliError::Input(format!("--param expects KEY=VALUE, got {kv:?}")))?;
            cfg.params.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(cfg)
    }
}

fn resolve(command: Command) -> Result<Option<(TaskConfig, Option<PathBuf>)>, CliError> {
    let (task, args) = match command {
        Command::Tasks => {
            for t in TASKS {
                println!("{:<22} {}", t.name, t.summary);
            }
            return Ok(None);
        }
        Command::Run { config, out } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", config.display())))?;
            return Ok(Some((TaskConfig::parse(&text)?, out)));
        }
        Command::Group(a) => ("group-info", a),
        Command::Roots(a) => ("roots", a),
        Command::Ramsey(a) => ("ramsey", a),
        Command::Chevalley(c) => match c {
            ChevalleyCmd::VerifyRelations(a) => ("verify-relations", a),
            ChevalleyCmd::ClassCube(a) => ("class-cube", a),
            ChevalleyCmd::ClassCubeSweep(a) => ("class-cube-sweep", a),
            ChevalleyCmd::Gauss(a) => ("gauss", a),
            ChevalleyCmd::Transport(a) => ("transport", a),
            ChevalleyCmd::RegularSequence(a) => ("regular-sequence", a),
        },
        Command::Thick(c) => match c {
            ThickCmd::Analyze(a) => ("thick-analyze", a),
            ThickCmd::Gn(a) => ("gn", a),
            ThickCmd::SimplicityDegree(a) => ("simplicity-degree", a),
            ThickCmd::CoveringNumber(a) => ("covering-number", a),
            ThickCmd::Spread(a) => ("spread", a),
        },
        Command::Perm(c) => match c {
            PermCmd::Identities(a) => ("perm-identities", a),
            PermCmd::Express(a) => ("perm-express", a),
            PermCmd::Distance(a) => ("perm-distance", a),
        },
        Command::Ext(c) => match c {
            ExtCmd::Build(a) => ("ext-build", a),
            ExtCmd::Split(a) => ("ext-split", a),
            ExtCmd::Bound(a) => ("ext-bound", a),
            ExtCmd::Iwasawa(a) => ("ext-iwasawa", a),
            ExtCmd::Club(a) => ("club-identity", a),
            ExtCmd::Semidirect(a) => ("semidirect-commutator", a),
        },
    };
    Ok(Some((args.config(task)?, args.out.clone())))
}

fn execute(command: Command) -> Result<i32, CliError> {
    let Some((cfg, out)) = resolve(command)? else {
        return Ok(0);
    };
    let report = run(&cfg)?;
    let text = report.render()?;
    match out {
        Some(path) => fs::write(&path, format!("{}\n", text.trim_end()))
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let _ = writeln!(io::stdout().lock(), "{}", text.trim_end());
        }
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("glab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

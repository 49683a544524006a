use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use buckdens::density::{buck_lower, buck_upper, window_densities};
use buckdens::generators::sampled_residues;
use buckdens::suites::{self, Suite, SuiteConfig};
use buckdens::zmod::classify;
use buckdens::{AnalyzeOptions, ChainKind, Convention, ModulusChain, ResidueSet, SetDescription};
use clap::{Parser, Subcommand, ValueEnum};

mod render;

use render::{Format, Report};

#[derive(Parser)]
#[command(name = "buckdens", version, about = "Buck densities, modular profiles and sumset structure for subsets of N")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    BuckUpper,
    BuckLower,
    Windows,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionArg {
    AllowEmpty,
    RequireNonempty,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::AllowEmpty => Convention::AllowEmpty,
            ConventionArg::RequireNonempty => Convention::RequireNonempty,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the members of a set up to the horizon.
    Gen {
        /// Set description: inline JSON or a path to a JSON file.
        set: String,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        horizon: u64,
    },
    /// Buck or window densities of a set.
    Density {
        set: String,
        #[arg(long, value_enum, default_value_t = Mode::BuckUpper)]
        mode: Mode,
        /// factorial, primorial or pow2.
        #[arg(long, default_value = "factorial")]
        chain: String,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
        #[arg(long, default_value_t = 1 << 16, value_parser = clap::value_parser!(u64).range(1..))]
        horizon: u64,
    },
    /// Members of a sumset and its modular profiles.
    Sumset {
        #[arg(num_args = 2.., required = true)]
        sets: Vec<String>,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        horizon: u64,
        /// Profiles are listed for moduli 1..=max-mod.
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
        max_mod: u64,
    },
    /// Kneser-type structure of a sumset; one set means X+X.
    Analyze {
        #[arg(num_args = 1.., required = true)]
        sets: Vec<String>,
        #[arg(long = "qmax", value_parser = clap::value_parser!(u64).range(1..))]
        q_max: Option<u64>,
        #[arg(long, default_value_t = 1 << 16, value_parser = clap::value_parser!(u64).range(1..))]
        horizon: u64,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        m_max: u64,
        #[arg(long)]
        chain: Option<String>,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
        #[arg(long, value_enum, default_value_t = ConventionArg::AllowEmpty)]
        convention: ConventionArg,
    },
    /// Structure of a subset of Z/mZ.
    Classify {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long, num_args = 1.., required = true)]
        elems: Vec<u64>,
        #[arg(long, value_enum, default_value_t = ConventionArg::AllowEmpty)]
        convention: ConventionArg,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        /// Seed for the randomized suites.
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
enum Failure {
    /// 1: a suite failed or a counterexample turned up.
    Verification(String),
    /// 2: bad arguments or input.
    Usage(String),
    /// 3: an internal size cap was hit.
    Limit(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Limit(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Usage(m) | Failure::Limit(m) => m,
        }
    }
}

impl From<buckdens::Error> for Failure {
    fn from(e: buckdens::Error) -> Self {
        match e {
            e if e.is_limit() => Failure::Limit(e.to_string()),
            e @ buckdens::Error::NotContained { .. } => Failure::Verification(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

fn load_set(arg: &str) -> Result<SetDescription, Failure> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("cannot read set description {arg:?}: {e}")))?
    };
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("malformed set description: {e}")))?;
    Ok(SetDescription::from_json(v)?)
}

fn chain(name: &str, depth: u32) -> Result<ModulusChain, Failure> {
    Ok(ModulusChain::new(ChainKind::parse(name)?, depth)?)
}

fn threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("BUCKDENS_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| Failure::Usage(format!("BUCKDENS_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Usage(e.to_string()))
}

fn execute(command: Command) -> Result<(Report, bool), Failure> {
    let report = match command {
        Command::Gen { set, horizon } => {
            let x = load_set(&set)?;
            let members = x.members_up_to(horizon)?;
            Report::Gen(render::GenReport { family: x.family_name().into(), horizon, count: members.len(), members })
        }
        Command::Density { set, mode, chain: name, depth, horizon } => {
            let x = load_set(&set)?;
            let c = chain(&name, depth)?;
            match mode {
                Mode::BuckUpper => Report::Density(render::DensityReport::single("buck_upper", buck_upper(&x, &c, horizon)?)),
                Mode::BuckLower => Report::Density(render::DensityReport::single("buck_lower", buck_lower(&x, &c, horizon)?)),
                Mode::Windows => Report::Density(render::DensityReport::windows(window_densities(&x, horizon)?)),
            }
        }
        Command::Sumset { sets, horizon, max_mod } => {
            let parts = sets.iter().map(|s| load_set(s)).collect::<Result<Vec<_>, _>>()?;
            let families = parts.iter().map(|p| p.family_name().to_string()).collect();
            let sum = SetDescription::sumset(parts)?;
            let members = sum.members_up_to(horizon)?;
            let profiles = (1..=max_mod)
                .map(|m| {
                    let res = |s: Option<ResidueSet>| s.map(|s| s.members());
                    Ok(match sum.attained(m) {
                        Some(a) => render::ProfileRow {
                            m,
                            source: "exact".into(),
                            attained: a.members(),
                            infinitely_attained: res(sum.infinitely_attained(m)),
                            cofinitely_attained: res(sum.cofinitely_attained(m)),
                        },
                        None => render::ProfileRow {
                            m,
                            source: "sampled".into(),
                            attained: sampled_residues(&sum, m, horizon)?.members(),
                            infinitely_attained: None,
                            cofinitely_attained: None,
                        },
                    })
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            Report::Sumset(render::SumsetReport { summands: families, horizon, members, profiles })
        }
        Command::Analyze { sets, q_max, horizon, m_max, chain: name, depth, convention } => {
            let mut parts = sets.iter().map(|s| load_set(s)).collect::<Result<Vec<_>, _>>()?;
            if parts.len() == 1 {
                parts.push(parts[0].clone());
            }
            let opts = AnalyzeOptions { q_max, horizon, chain: name.map(|n| chain(&n, depth)).transpose()?, m_max, convention: convention.into() };
            Report::Analyze(Box::new(buckdens::kneser::analyze_sumset(&parts, &opts)?))
        }
        Command::Classify { modulus, elems, convention } => {
            let s = ResidueSet::from_reduced(modulus, elems)?;
            Report::Classify(classify(&s, convention.into())?)
        }
        Command::Verify { suite, seed } => {
            let selected = if suite == "all" { Suite::ALL.to_vec() } else { vec![Suite::parse(&suite)?] };
            let mut config = SuiteConfig::default();
            if let Some(seed) = seed {
                config.seed = seed;
            }
            let reports = selected.into_iter().map(|s| suites::run(s, &config)).collect::<Result<Vec<_>, _>>()?;
            let pass = reports.iter().all(|r| r.pass);
            return Ok((Report::Verify(render::VerifyReport { pass, suites: reports }), pass));
        }
    };
    Ok((report, true))
}

fn run(cli: Cli) -> Result<(), Failure> {
    threads()?;
    let (report, pass) = execute(cli.command)?;
    let text = report.render(cli.format).map_err(|e| Failure::Usage(format!("cannot render report: {e}")))?;
    match &cli.output {
        Some(path) => fs::write(path, &text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
        }
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification("verification failed".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("buckdens: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

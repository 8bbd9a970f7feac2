use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use edlab::algorithms::Algorithm;
use edlab::harness::csv::{write_rows, Row, RunRow};
use edlab::harness::{self, ExperimentConfig, ProfileSource};
use edlab::{io, realize_instance, ClusterProfile, CountingOracle};

#[derive(Parser)]
#[command(
    name = "edlab",
    version,
    about = "Comparison-counted element distinctness experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a profile file and optionally a realized instance.
    Gen(GenArgs),
    /// Run one algorithm on an instance file.
    Run(RunArgs),
    /// Play an algorithm against the adversary, then realize a profile.
    Duel(DuelArgs),
    /// Oblivious versus clairvoyant comparison counts.
    SweepCompetitive(SweepArgs),
    /// The adversary separation game for several n.
    SweepSeparation(SeparationArgs),
    /// Check the linear-subset, approximation and block-iteration bounds.
    CheckBounds(SweepArgs),
    /// Set intersection.
    #[command(subcommand)]
    Si(SiCommand),
    /// Profile statistics.
    #[command(subcommand)]
    Profile(ProfileCommand),
}

#[derive(Args)]
struct GenArgs {
    /// Random profile: `m=M n=N` (m may be omitted).
    #[arg(long, num_args = 1..=2, value_name = "KEY=VALUE", conflicts_with = "clique")]
    profile_random: Option<Vec<String>>,
    /// One clique: `n=N`.
    #[arg(long, value_name = "n=N")]
    clique: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Profile output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also realize the profile into this instance file.
    #[arg(long)]
    instance: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoName {
    Block,
    Median,
    Clairvoyant,
    Oblivious,
    Preprocessed,
    Doubling,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    algo: AlgoName,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long = "L")]
    l: Option<usize>,
    /// Profile for the clairvoyant runners; derived from the input when omitted.
    #[arg(long)]
    profile: Option<PathBuf>,
    /// Write the comparison transcript here.
    #[arg(long)]
    transcript: Option<PathBuf>,
}

#[derive(Args)]
struct DuelArgs {
    #[arg(long)]
    algo: AlgoName,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    profile: PathBuf,
    #[arg(long)]
    rounds: Option<u64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long = "L")]
    l: Option<usize>,
    /// Write the realized instance here.
    #[arg(long)]
    instance: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated sizes.
    #[arg(long, value_delimiter = ',', default_values_t = [4096usize])]
    n: Vec<usize>,
    /// Random profiles per n.
    #[arg(long, default_value_t = 50)]
    count: usize,
    /// Use this profile instead of random ones.
    #[arg(long, conflicts_with = "count")]
    profile: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    repetitions: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fail when some ratio / log2 log2 n exceeds this.
    #[arg(long)]
    max_ratio: Option<f64>,
}

#[derive(Args)]
struct SeparationArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [1024usize, 4096, 16384])]
    n: Vec<usize>,
    #[arg(long, default_value = "oblivious")]
    algo: AlgoName,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long = "L")]
    l: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SiAlgoName {
    Doubling,
    Clairvoyant,
}

#[derive(Subcommand)]
enum SiCommand {
    /// Run a set-intersection algorithm on an "A:"/"B:" instance file.
    Run {
        #[arg(long)]
        algo: SiAlgoName,
        #[arg(long)]
        input: PathBuf,
        /// A-size of the shared cluster; derived from the input when omitted.
        #[arg(long)]
        i: Option<usize>,
        /// Expected |A| and |B|.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Write a realized member of the lower-bound family.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The adversary against an algorithm, then the clairvoyant runner.
    Duel {
        #[arg(long, default_value = "doubling")]
        algo: SiAlgoName,
        #[arg(long, value_delimiter = ',', default_values_t = [512usize, 4096])]
        n: Vec<usize>,
        #[arg(long)]
        i: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ProfileCommand {
    /// n, m, largest cluster, L1 and L2 with their objectives.
    Stats {
        #[arg(long)]
        input: PathBuf,
    },
    /// The three lower bounds and the linear-subset inequality.
    Bounds {
        #[arg(long)]
        input: PathBuf,
    },
}

/// Parses `key=value` pairs restricted to `keys`.
fn key_values(items: &[String], keys: &[&str]) -> anyhow::Result<Vec<(String, usize)>> {
    items
        .iter()
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .with_context(|| format!("expected KEY=VALUE, got {kv:?}"))?;
            if !keys.contains(&k) {
                bail!("unknown key {k:?}; expected one of {keys:?}");
            }
            Ok((
                k.to_string(),
                v.parse().with_context(|| format!("bad value in {kv:?}"))?,
            ))
        })
        .collect()
}

fn output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::fs::File::create(p).with_context(|| format!("cannot write {}", p.display()))?),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn emit<R: Row>(path: Option<&Path>, rows: &[R]) -> anyhow::Result<()> {
    write_rows(output(path)?, rows)?;
    Ok(())
}

fn algorithm(
    name: AlgoName,
    k: Option<usize>,
    l: Option<usize>,
    profile: Option<ClusterProfile>,
) -> anyhow::Result<Algorithm> {
    let need_profile = || profile.clone().context("this algorithm needs a profile");
    Ok(match name {
        AlgoName::Block => Algorithm::Block {
            k: k.context("--k is required for block")?,
        },
        AlgoName::Median => Algorithm::Median {
            l: l.context("--L is required for median")?,
        },
        AlgoName::Clairvoyant => Algorithm::Clairvoyant(need_profile()?),
        AlgoName::Preprocessed => Algorithm::Preprocessed(need_profile()?),
        AlgoName::Oblivious => Algorithm::Oblivious,
        AlgoName::Doubling => Algorithm::Doubling,
    })
}

/// Exit status for checked commands: the first violation goes to stderr.
fn verdict(first_violation: Option<String>) -> ExitCode {
    match first_violation {
        None => ExitCode::SUCCESS,
        Some(v) => {
            eprintln!("violation: {v}");
            ExitCode::from(1)
        }
    }
}

fn gen(args: GenArgs) -> anyhow::Result<ExitCode> {
    let seed = harness::seed_from_env(args.seed.unwrap_or(0));
    let profile = if let Some(kv) = &args.profile_random {
        let kv = key_values(kv, &["m", "n"])?;
        let get = |key: &str| kv.iter().find(|(k, _)| k == key).map(|&(_, v)| v);
        let n = get("n").context("--profile-random needs n=N")?;
        let mut rng = harness::rng_for(seed, 0);
        match get("m") {
            Some(m) => {
                if m == 0 || m > n {
                    bail!("need 1 <= m <= n");
                }
                harness::random_profile_m(m, n, &mut rng)
            }
            None => harness::random_profile(n, &mut rng),
        }
    } else if let Some(c) = &args.clique {
        let kv = key_values(std::slice::from_ref(c), &["n"])?;
        ClusterProfile::clique(kv[0].1)?
    } else {
        bail!("pass --profile-random or --clique");
    };
    match &args.out {
        Some(p) => io::write_profile(p, &profile)?,
        None => print!("{}", io::format_numbers(profile.sizes().iter().map(|&s| s as u64))),
    }
    if let Some(p) = &args.instance {
        io::write_instance(p, &realize_instance(&profile, seed))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn run(args: RunArgs) -> anyhow::Result<ExitCode> {
    let inst = io::read_instance(&args.input)?;
    let profile = match &args.profile {
        Some(p) => io::read_profile(p)?,
        None => inst.profile(),
    };
    let alg = algorithm(args.algo, args.k, args.l, Some(profile))?;
    let mut oracle = CountingOracle::new(&inst);
    let report = alg.run(&mut oracle)?;
    if let Some(p) = &args.transcript {
        io::write_transcript(p, oracle.transcript())?;
    }
    let row = RunRow {
        algo: alg.to_string(),
        n: inst.len(),
        report,
    };
    emit(None, &[row])?;
    Ok(ExitCode::SUCCESS)
}

fn duel(args: DuelArgs) -> anyhow::Result<ExitCode> {
    let profile = io::read_profile(&args.profile)?;
    if profile.n() != args.n {
        bail!("profile has {} elements, --n is {}", profile.n(), args.n);
    }
    let alg = algorithm(args.algo, args.k, args.l, Some(profile.clone()))?;
    let (row, inst) = harness::duel(&alg, &profile, args.rounds)?;
    if let Some(p) = &args.instance {
        io::write_instance(p, &inst)?;
    }
    emit(None, std::slice::from_ref(&row))?;
    Ok(verdict(
        (!row.consistency).then(|| "realized instance contradicts the transcript".to_string()),
    ))
}

fn config(name: &str, args: &SweepArgs) -> anyhow::Result<ExperimentConfig> {
    let mut config = ExperimentConfig::new(name, args.n.clone(), harness::seed_from_env(args.seed));
    config.repetitions = args.repetitions.max(1);
    config.output = args.out.clone();
    config.profiles = match &args.profile {
        Some(p) => {
            let profile = io::read_profile(p)?;
            config.n = vec![profile.n()];
            ProfileSource::Fixed(vec![profile])
        }
        None => ProfileSource::Random { count: args.count },
    };
    Ok(config)
}

fn sweep_competitive(args: SweepArgs) -> anyhow::Result<ExitCode> {
    let config = config("competitive", &args)?;
    let rows = harness::sweep_competitive(&config)?;
    emit(config.output.as_deref(), &rows)?;
    let violation = args.max_ratio.and_then(|c| {
        rows.iter().find(|r| r.ratio_per_loglog > c).map(|r| {
            format!(
                "n = {}, profile {}: ratio / log log n = {:.4} > {c}",
                r.n, r.profile_id, r.ratio_per_loglog
            )
        })
    });
    Ok(verdict(violation))
}

fn sweep_separation(args: SeparationArgs) -> anyhow::Result<ExitCode> {
    let alg = algorithm(args.algo, args.k, args.l, None)?;
    let rows = harness::sweep_separation(&alg, &args.n)?;
    emit(args.out.as_deref(), &rows)?;
    let violation = rows.iter().find_map(|r| {
        if !r.consistent {
            Some(format!("n = {}: realized instance is inconsistent", r.n))
        } else if !r.c_bound_ok {
            Some(format!(
                "n = {}: C(L) = {} exceeds n / 2^(i-3) with i = {}",
                r.n, r.c_l, r.i
            ))
        } else if !r.median_found {
            Some(format!("n = {}: median recursion found no duplicate", r.n))
        } else {
            None
        }
    });
    Ok(verdict(violation))
}

fn check_bounds(args: SweepArgs) -> anyhow::Result<ExitCode> {
    let config = config("bounds", &args)?;
    let rows = harness::check_bounds(&config)?;
    emit(config.output.as_deref(), &rows)?;
    Ok(verdict(rows.iter().find_map(|r| r.violation())))
}

fn si_algorithm(name: SiAlgoName, i: Option<usize>) -> anyhow::Result<edlab::setint::SiAlgorithm> {
    use edlab::setint::SiAlgorithm;
    Ok(match name {
        SiAlgoName::Doubling => SiAlgorithm::Doubling,
        SiAlgoName::Clairvoyant => SiAlgorithm::Clairvoyant {
            i: i.context("--i is required for clairvoyant")?,
        },
    })
}

fn si(cmd: SiCommand) -> anyhow::Result<ExitCode> {
    use edlab::setint::{realize_si, si_family};
    match cmd {
        SiCommand::Run { algo, input, i, n } => {
            let inst = io::read_si(&input)?;
            if let Some(n) = n {
                if inst.a().len() != n || inst.b().len() != n {
                    bail!(
                        "expected |A| = |B| = {n}, got {} and {}",
                        inst.a().len(),
                        inst.b().len()
                    );
                }
            }
            // the clairvoyant runner may read i off the instance it is promised
            let i = i.or_else(|| {
                inst.profile()
                    .clusters()
                    .iter()
                    .find(|c| c.0 > 0 && c.1 > 0)
                    .map(|c| c.0)
            });
            let alg = si_algorithm(algo, i)?;
            let report = alg.run(&inst)?;
            let row = RunRow {
                algo: alg.name().into(),
                n: inst.a().len() + inst.b().len(),
                report,
            };
            emit(None, &[row])?;
            Ok(ExitCode::SUCCESS)
        }
        SiCommand::Gen { n, i, seed, out } => {
            let inst = realize_si(&si_family(n, i)?, harness::seed_from_env(seed.unwrap_or(0)));
            match out {
                Some(p) => io::write_si(&p, &inst)?,
                None => print!("{}", io::format_si(&inst)),
            }
            Ok(ExitCode::SUCCESS)
        }
        SiCommand::Duel { algo, n, i } => {
            let alg = si_algorithm(algo, i)?;
            let rows = n
                .iter()
                .map(|&n| harness::si_separation(alg, n))
                .collect::<edlab::Result<Vec<_>>>()?;
            emit(None, &rows)?;
            Ok(verdict(rows.iter().find_map(|r| {
                (!r.consistent || !r.clairvoyant_found).then(|| format!("n = {}: realized instance not solved", r.n))
            })))
        }
    }
}

fn profile(cmd: ProfileCommand) -> anyhow::Result<ExitCode> {
    let mut out = std::io::stdout().lock();
    match cmd {
        ProfileCommand::Stats { input } => {
            let p = io::read_profile(&input)?;
            let (l2, obj2) = p.select_l2();
            let l1 = p.select_l1().ok();
            writeln!(out, "n,m,max_size,L1,bound1,L2,objective2")?;
            writeln!(
                out,
                "{},{},{},{},{},{l2},{obj2:.6}",
                p.n(),
                p.m(),
                p.max_size(),
                l1.map_or("n/a".into(), |(l, _)| l.to_string()),
                l1.map_or("n/a".into(), |(_, b)| format!("{b:.6}")),
            )?;
        }
        ProfileCommand::Bounds { input } => {
            let p = io::read_profile(&input)?;
            let b = p.bounds();
            let linear = if p.m() >= 2 {
                p.check_linear_subset()?.to_string()
            } else {
                "n/a".into()
            };
            writeln!(out, "n,m,median,block,combined,linear_subset")?;
            writeln!(
                out,
                "{},{},{:.6},{:.6},{:.6},{linear}",
                p.n(),
                p.m(),
                b.median,
                b.block,
                b.combined
            )?;
            if linear == "false" {
                return Ok(verdict(Some("linear-subset inequality fails".into())));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Run(a) => run(a),
        Command::Duel(a) => duel(a),
        Command::SweepCompetitive(a) => sweep_competitive(a),
        Command::SweepSeparation(a) => sweep_separation(a),
        Command::CheckBounds(a) => check_bounds(a),
        Command::Si(c) => si(c),
        Command::Profile(c) => profile(c),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

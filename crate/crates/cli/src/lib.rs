//! Command-line pipeline for cellq: build, reps, special, cellbasis,
//! specialize, verify and report, with a content-addressed stage cache.

pub mod artifact;
pub mod cache;
pub mod config;
pub mod error;
pub mod session;

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cellq_core::cellular::RingSpec;
use cellq_core::props::{self, PropertyReport};
use serde::Serialize;

use artifact::{
    check_schema, read, to_bytes, AlgArtifact, DatumArtifact, HeckeArtifact, RepsArtifact, SpechtArtifact,
    ALG_SCHEMA, DATUM_SCHEMA, MULTI_REPORT_SCHEMA, REPS_SCHEMA,
};
use cache::Cache;
use config::{Instance, NamedSpecialization, PropsOptions, RunConfig};
use error::{CliError, Exit, Result};
use session::Session;

#[derive(Parser, Debug)]
#[command(name = "cellq", version, about = "Exact q-Schur algebra computations")]
pub struct Cli {
    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Cache directory; defaults to $CELLQ_CACHE, then the user cache directory.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Disable the stage cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Seed for representation splitting and property sampling.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Log stage activity to stderr (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct InstanceArgs {
    /// Cartan type (A to G).
    #[arg(long = "type")]
    cartan: String,
    /// Rank of the root system.
    #[arg(long)]
    rank: usize,
    /// Orbit spec: semicolon-separated subsets of {1..rank}, `-` for the empty set.
    #[arg(long, allow_hyphen_values = true)]
    orbits: String,
}

#[derive(Args, Debug, Clone)]
struct PropsArgs {
    /// `all` or a comma-separated list of check names.
    #[arg(long, default_value = "all")]
    props: String,
    /// Largest basis size checked exhaustively.
    #[arg(long, default_value_t = props::DEFAULT_EXHAUSTIVE_LIMIT)]
    exhaustive_limit: usize,
    /// Tuples sampled per check above the exhaustive limit.
    #[arg(long, default_value_t = props::DEFAULT_SAMPLES)]
    samples: usize,
}

impl PropsArgs {
    fn options(&self) -> PropsOptions {
        PropsOptions { select: self.props.clone(), exhaustive_limit: self.exhaustive_limit, samples: self.samples }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the algebra: basis, structure constants, cells, asymptotic ring.
    Build {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Write the artifact here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kazhdan-Lusztig polynomials and structure constants of W.
    Hecke {
        /// Cartan type (A to G).
        #[arg(long = "type")]
        cartan: String,
        /// Rank of the root system.
        #[arg(long)]
        rank: usize,
        /// Write the tables here instead of stdout.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Irreducible representations of the asymptotic ring and their invariants.
    Reps {
        /// Algebra artifact written by `build`.
        alg: PathBuf,
        /// Write the artifact here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Positive lines of the special modules, one per left cell pair.
    Special {
        /// Algebra artifact written by `build`.
        alg: PathBuf,
        /// Write the artifact here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cellular datum over the ring inverting the chosen primes.
    Cellbasis {
        /// Algebra artifact written by `build`.
        alg: PathBuf,
        /// Representations to use; computed when absent.
        #[arg(long)]
        reps: Option<PathBuf>,
        /// `auto`, `Z` or `invert:p,q,...`.
        #[arg(long, default_value = "auto")]
        ring: String,
        /// Write the artifact here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decomposition matrix of the cell modules at a specialization.
    Specialize {
        /// Cellular datum written by `cellbasis`.
        datum: PathBuf,
        /// `generic`, `Q`, `Fp:<p>` or `cyclotomic:<n>`.
        #[arg(long)]
        field: String,
        /// An integer, `zeta` or `q`.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Write the artifact here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the property suite; exits 1 if any check fails.
    Verify {
        /// Algebra artifact written by `build`.
        alg: PathBuf,
        /// Representations written by `reps`; computed when absent.
        reps: Option<PathBuf>,
        #[command(flatten)]
        props: PropsArgs,
        /// Output format.
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write the artifact here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Property suite over several instances, e.g. `A2:1,2;1;2;-`.
    Report {
        /// Instances `TYPE RANK:ORBITS`, e.g. `B2:1;2;-`.
        instances: Vec<String>,
        #[command(flatten)]
        props: PropsArgs,
        /// Output format.
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write the artifact here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All stages for one instance, artifacts and summary written to a directory.
    Pipeline {
        /// Run configuration file; replaces the instance flags.
        #[arg(long, conflicts_with_all = ["cartan", "rank", "orbits"])]
        config: Option<PathBuf>,
        /// Cartan type (A to G).
        #[arg(long = "type", required_unless_present = "config")]
        cartan: Option<String>,
        /// Rank of the root system.
        #[arg(long, required_unless_present = "config")]
        rank: Option<usize>,
        /// Orbit spec: semicolon-separated subsets of {1..rank}, `-` for the empty set.
        #[arg(long, required_unless_present = "config", allow_hyphen_values = true)]
        orbits: Option<String>,
        /// Ground ring: `auto`, `Z` or `invert:p,q,...`.
        #[arg(long, default_value = "auto")]
        ring: String,
        /// Specializations `FIELD@Q`; defaults to `generic` and `Q@1`.
        #[arg(long = "specialize")]
        specializations: Vec<String>,
        #[command(flatten)]
        props: PropsArgs,
        /// Output directory [default: cellq-out].
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Exit::Usage as i32 } else { Exit::Success as i32 };
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("cellq: --jobs must be positive");
            return Exit::Usage as i32;
        }
        // Fails only if a pool already exists, as in repeated in-process runs.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(&cli) {
        Ok(code) => code as i32,
        Err(e) => {
            eprintln!("cellq: error: {e}");
            e.exit() as i32
        }
    }
}

impl Cli {
    fn cache(&self) -> Option<Cache> {
        (!self.no_cache).then(|| Cache::locate(self.cache_dir.as_deref()))
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(props::DEFAULT_SEED)
    }

    fn session(&self, instance: Instance, ring: RingSpec) -> Session {
        Session::new(instance, self.seed(), ring, self.cache(), self.verbose)
    }

    /// A session seeded with an algebra artifact read from disk.
    fn session_from_alg(&self, path: &Path, ring: RingSpec) -> Result<Session> {
        let (bytes, a): (_, AlgArtifact) = read(path)?;
        check_schema(path, &a.schema, ALG_SCHEMA)?;
        let s = self.session(a.instance.clone(), ring);
        s.provide_alg(&bytes, a);
        Ok(s)
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => artifact::write(p, bytes),
        None => std::io::stdout().write_all(bytes).map_err(CliError::io("<stdout>")),
    }
}

fn read_reps(path: &Path, session: &Session) -> Result<()> {
    let (bytes, r): (_, RepsArtifact) = read(path)?;
    check_schema(path, &r.schema, REPS_SCHEMA)?;
    if r.instance != session.instance {
        return Err(CliError::Usage(format!("{} belongs to {}, not {}", path.display(), r.instance, session.instance)));
    }
    session.provide_reps(&bytes, r.reps);
    Ok(())
}

#[derive(Serialize)]
struct MultiReport {
    schema: &'static str,
    passed: bool,
    reports: Vec<PropertyReport>,
}

fn render(reports: &[PropertyReport], format: Format) -> Vec<u8> {
    match format {
        Format::Json => to_bytes(&MultiReport {
            schema: MULTI_REPORT_SCHEMA,
            passed: reports.iter().all(PropertyReport::passed),
            reports: reports.to_vec(),
        }),
        Format::Text => reports.iter().map(PropertyReport::to_text).collect::<Vec<_>>().join("\n").into_bytes(),
    }
}

fn verdict(passed: bool) -> Exit {
    if passed {
        Exit::Success
    } else {
        Exit::VerificationFailure
    }
}

fn execute(cli: &Cli) -> Result<Exit> {
    match &cli.command {
        Command::Build { instance, out } => {
            let inst = Instance::new(&instance.cartan, instance.rank, &instance.orbits)?;
            let s = cli.session(inst, RingSpec::Auto);
            emit(out.as_deref(), &s.alg_bytes()?)?;
        }
        Command::Hecke { cartan, rank, dump } => {
            let s = cli.session(Instance::new(cartan, *rank, "-")?, RingSpec::Auto);
            let bytes = to_bytes(&HeckeArtifact::new(s.hecke()?));
            emit(dump.as_deref(), &bytes)?;
        }
        Command::Reps { alg, out } => {
            let s = cli.session_from_alg(alg, RingSpec::Auto)?;
            emit(out.as_deref(), &s.reps_bytes()?)?;
        }
        Command::Special { alg, out } => {
            let s = cli.session_from_alg(alg, RingSpec::Auto)?;
            emit(out.as_deref(), &s.special_bytes()?)?;
        }
        Command::Cellbasis { alg, reps, ring, out } => {
            let ring = RingSpec::parse(ring).map_err(CliError::Config)?;
            let s = cli.session_from_alg(alg, ring)?;
            if let Some(r) = reps {
                read_reps(r, &s)?;
            }
            emit(out.as_deref(), &s.datum_bytes()?)?;
        }
        Command::Specialize { datum, field, q, out } => {
            let sp = NamedSpecialization::parse(&format!("{field}@{q}"))?;
            let (bytes, d): (_, DatumArtifact) = read(datum)?;
            check_schema(datum, &d.schema, DATUM_SCHEMA)?;
            let s = Session::new(d.instance.clone(), d.seed, d.ring.clone(), cli.cache(), cli.verbose);
            s.provide_datum(&bytes, d.into_datum());
            let bytes = s.specht_bytes(&sp)?;
            let a: SpechtArtifact = serde_json::from_slice(&bytes)
                .map_err(|source| CliError::CorruptCache { key: "specialize".into(), source })?;
            match out {
                Some(p) => {
                    artifact::write(p, &bytes)?;
                    print!("{}", a.decomposition.table());
                }
                None => emit(None, &bytes)?,
            }
        }
        Command::Verify { alg, reps, props, format, out } => {
            let suite = props.options().suite(cli.seed())?;
            let s = cli.session_from_alg(alg, RingSpec::Auto)?;
            if let Some(r) = reps {
                read_reps(r, &s)?;
            }
            let (bytes, passed) = s.verify_bytes(&suite)?;
            let bytes = match format {
                Format::Json => bytes,
                Format::Text => {
                    let r: PropertyReport = serde_json::from_slice(&bytes)
                        .map_err(|source| CliError::CorruptCache { key: "verify".into(), source })?;
                    r.to_text().into_bytes()
                }
            };
            emit(out.as_deref(), &bytes)?;
            return Ok(verdict(passed));
        }
        Command::Report { instances, props, format, out } => {
            let suite = props.options().suite(cli.seed())?;
            let instances: Vec<Instance> = instances.iter().map(|i| Instance::parse(i)).collect::<Result<_>>()?;
            let mut reports = Vec::new();
            for inst in instances {
                let s = cli.session(inst, RingSpec::Auto);
                let (bytes, _) = s.verify_bytes(&suite)?;
                reports.push(
                    serde_json::from_slice(&bytes)
                        .map_err(|source| CliError::CorruptCache { key: s.instance.to_string(), source })?,
                );
            }
            emit(out.as_deref(), &render(&reports, *format))?;
            return Ok(verdict(reports.iter().all(PropertyReport::passed)));
        }
        Command::Pipeline { config, cartan, rank, orbits, ring, specializations, props, out_dir } => {
            let cfg = match config {
                // explicit global flags override the file
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
                    let mut c = RunConfig::from_json(&text)
                        .map_err(|source| CliError::Artifact { path: path.clone(), source })?;
                    c.seed = cli.seed.unwrap_or(c.seed);
                    c.cache_dir = cli.cache_dir.clone().or(c.cache_dir);
                    c.out_dir = out_dir.clone().or(c.out_dir);
                    c.verbosity = c.verbosity.max(cli.verbose);
                    c
                }
                None => {
                    let mut c = RunConfig::new(cartan.as_deref().unwrap_or_default(), rank.unwrap_or_default(), orbits.as_deref().unwrap_or_default());
                    c.ring = ring.clone();
                    c.seed = cli.seed();
                    c.cache_dir = cli.cache_dir.clone();
                    c.out_dir = out_dir.clone();
                    c.verbosity = cli.verbose;
                    c.props = props.options();
                    if !specializations.is_empty() {
                        c.specializations = specializations.clone();
                    }
                    c
                }
            };
            return pipeline(&cfg, cli.no_cache);
        }
    }
    Ok(Exit::Success)
}

/// Runs every stage for one configuration, writing each artifact as soon as
/// it exists so a failing stage leaves its predecessors on disk.
pub fn pipeline(cfg: &RunConfig, no_cache: bool) -> Result<Exit> {
    let r = cfg.resolve()?;
    let cache = (!no_cache).then(|| Cache::locate(cfg.cache_dir.as_deref()));
    let s = Session::new(r.instance.clone(), r.seed, r.ring.clone(), cache, cfg.verbosity);
    let dir = cfg.out_dir.clone().unwrap_or_else(|| PathBuf::from("cellq-out"));
    let put = |name: &str, bytes: &[u8]| artifact::write(&dir.join(name), bytes);

    // Cache location, output directory and verbosity do not affect results.
    let recorded = RunConfig { cache_dir: None, out_dir: None, verbosity: 0, ..cfg.clone() };
    put("config.json", recorded.to_json().as_bytes())?;
    put("alg.json", &s.alg_bytes()?)?;
    put("reps.json", &s.reps_bytes()?)?;
    put("special.json", &s.special_bytes()?)?;
    put("datum.json", &s.datum_bytes()?)?;
    let (report, passed) = s.verify_bytes(&r.suite)?;
    put("verify.json", &report)?;
    let mut specht = Vec::new();
    for sp in &r.specializations {
        let bytes = s.specht_bytes(sp)?;
        put(&format!("specht-{}.json", sp.slug()), &bytes)?;
        specht.push(
            serde_json::from_slice::<SpechtArtifact>(&bytes)
                .map_err(|source| CliError::CorruptCache { key: sp.text.clone(), source })?,
        );
    }
    let summary = s.summary(Some(passed), &specht)?;
    put("summary.txt", summary.as_bytes())?;
    print!("{summary}");
    let stats = s.stats();
    eprintln!("cellq: cache hits={} misses={}", stats.hits, stats.misses);
    Ok(verdict(passed))
}

//! `projprod` command line: `plan`, `bounds` and `verify`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse error,
//! 3 dimension error, 4 missing configuration.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cat::{verify_cat_tower, CatCover};
use crate::error::Error;
use crate::nonsingular::{verify_map, MapKind, NonSingularMap};
use crate::quotient::{ProjProdPoint, Shape, EPS_ZERO};
use crate::ring::{bounds_report, verify_ring};
use crate::sphere::{PathEvaluator, DEFAULT_PATH_SAMPLES};
use crate::tc::{verify_tower, TcPlanner, Tolerances, EPS_STRAT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DIMENSION: i32 = 3;
pub const EXIT_MISSING_CONFIG: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "projprod",
    version,
    about = "Category covers and motion planners for projective product spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Plan a path between two points of P_n̄.
    Plan {
        #[command(flatten)]
        common: CommonArgs,
        /// JSON file {"from": {"factors": [...]}, "to": {"factors": [...]}}.
        #[arg(long)]
        query: PathBuf,
    },
    /// Report LS-category, TC bounds and the zero-divisor cup-length.
    Bounds {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run verification suites and print a JSON report.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Comma-separated nondecreasing dimensions, e.g. 1,3.
    #[arg(long)]
    nbar: String,
    #[arg(long, value_enum, default_value_t = MapKindArg::Auto)]
    map_kind: MapKindArg,
    #[arg(long, default_value_t = EPS_ZERO)]
    epsilon_zero: f64,
    #[arg(long, default_value_t = EPS_STRAT)]
    epsilon_strat: f64,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Continuity probe pairs per tower suite.
    #[arg(long, default_value_t = 1_000)]
    probes: usize,
    #[arg(long, env = "PROJPROD_SEED", default_value_t = 0)]
    seed: u64,
    /// Number of grid intervals for serialized paths.
    #[arg(long, default_value_t = DEFAULT_PATH_SAMPLES)]
    path_samples: usize,
    /// TC(P^{n1}); required when n1 > 3.
    #[arg(long)]
    tc_pn1: Option<usize>,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum MapKindArg {
    Auto,
    DivisionAlgebra,
    PolynomialReversal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Suite {
    Tc,
    Cat,
    Maps,
    Ring,
    All,
}

/// Validated run configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub nbar: Shape,
    pub map_kind: MapKind,
    pub epsilon_zero: f64,
    pub epsilon_strat: f64,
    pub samples: usize,
    pub probes: usize,
    pub seed: u64,
    pub n_samples: usize,
    pub tc_pn1: Option<usize>,
}

impl RunConfig {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            eps_zero: self.epsilon_zero,
            eps_strat: self.epsilon_strat,
        }
    }

    pub fn map(&self) -> Result<NonSingularMap, Error> {
        NonSingularMap::with_kind(self.nbar.n1(), self.map_kind)
    }
}

impl TryFrom<&CommonArgs> for RunConfig {
    type Error = Error;

    fn try_from(a: &CommonArgs) -> Result<Self, Error> {
        let nbar: Shape = a.nbar.parse()?;
        let n1 = nbar.n1();
        let map_kind = match a.map_kind {
            MapKindArg::Auto => NonSingularMap::auto(n1)?.kind(),
            MapKindArg::DivisionAlgebra => MapKind::DivisionAlgebra,
            MapKindArg::PolynomialReversal => MapKind::PolynomialReversal,
        };
        if a.samples == 0 {
            return Err(Error::InvalidConfig("samples must be at least 1".into()));
        }
        if a.path_samples == 0 {
            return Err(Error::InvalidConfig(
                "path-samples must be at least 1".into(),
            ));
        }
        let config = RunConfig {
            nbar,
            map_kind,
            epsilon_zero: a.epsilon_zero,
            epsilon_strat: a.epsilon_strat,
            samples: a.samples,
            probes: a.probes,
            seed: a.seed,
            n_samples: a.path_samples,
            tc_pn1: a.tc_pn1,
        };
        config.tolerances().validate()?;
        Ok(config)
    }
}

#[derive(Deserialize)]
struct Query {
    from: ProjProdPoint,
    to: ProjProdPoint,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::DimensionMismatch { .. } | Error::UnsupportedDimension(_) => EXIT_DIMENSION,
        Error::MissingTcInput(_) => EXIT_MISSING_CONFIG,
        _ => EXIT_PARSE,
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

fn parse_failure(message: String) -> Failure {
    Failure {
        code: EXIT_PARSE,
        message,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(&cli.command) {
        Ok((value, ok)) => {
            let out = match &cli.command {
                Command::Plan { common, .. }
                | Command::Bounds { common }
                | Command::Verify { common, .. } => common.out.clone(),
            };
            let text = serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n";
            let written = match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(message) = written {
                let _ = writeln!(stderr, "error: {message}");
                return EXIT_PARSE;
            }
            if ok {
                EXIT_OK
            } else {
                let _ = writeln!(stderr, "verification failed");
                EXIT_VERIFY_FAILED
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: &Command) -> Result<(serde_json::Value, bool), Failure> {
    match command {
        Command::Plan { common, query } => {
            let config = RunConfig::try_from(common)?;
            plan(&config, query).map(|v| (v, true))
        }
        Command::Bounds { common } => {
            let config = RunConfig::try_from(common)?;
            let report = bounds_report(&config.nbar, config.tc_pn1)?;
            Ok((
                serde_json::to_value(report).expect("report serializes"),
                true,
            ))
        }
        Command::Verify { common, suite } => {
            let config = RunConfig::try_from(common)?;
            verify(&config, *suite)
        }
    }
}

fn plan(config: &RunConfig, query: &PathBuf) -> Result<serde_json::Value, Failure> {
    let text = std::fs::read_to_string(query)
        .map_err(|e| parse_failure(format!("cannot read {}: {e}", query.display())))?;
    let q: Query = serde_json::from_str(&text)
        .map_err(|e| parse_failure(format!("malformed query {}: {e}", query.display())))?;
    let planner =
        TcPlanner::new(config.nbar.clone(), config.map()?)?.with_tolerances(config.tolerances())?;
    let (label, path) = planner.product_section(q.from.factors(), q.to.factors())?;
    let samples: Vec<Vec<Vec<f64>>> = path
        .sample(config.n_samples)
        .into_iter()
        .map(|p| {
            p.into_factors()
                .into_iter()
                .map(|f| f.into_coords())
                .collect()
        })
        .collect();
    Ok(json!({
        "nbar": config.nbar,
        "map_kind": config.map_kind,
        "stratum": label,
        "path": samples,
    }))
}

fn verify(config: &RunConfig, suite: Suite) -> Result<(serde_json::Value, bool), Failure> {
    let run = |s: Suite| suite == s || suite == Suite::All;
    let mut suites = serde_json::Map::new();
    let mut ok = true;

    if run(Suite::Maps) {
        let mut maps = vec![config.map()?];
        if config.map_kind == MapKind::DivisionAlgebra {
            maps.push(NonSingularMap::polynomial_reversal(config.nbar.n1())?);
        }
        let reports: Vec<_> = maps
            .iter()
            .map(|m| {
                let report = verify_map(m, config.samples, config.seed);
                ok &= report.pass;
                json!({ "kind": m.kind(), "report": report })
            })
            .collect();
        suites.insert("maps".into(), json!(reports));
    }
    if run(Suite::Ring) {
        let report = verify_ring(&config.nbar, config.seed)?;
        ok &= report.pass;
        suites.insert("ring".into(), json!(report));
    }
    if run(Suite::Cat) {
        let cover = CatCover::new(config.nbar.clone()).with_tolerances(config.tolerances())?;
        let report = verify_cat_tower(&cover, config.samples, config.probes, config.seed);
        ok &= report.pass;
        suites.insert("cat".into(), json!(report));
    }
    if run(Suite::Tc) {
        let planner = TcPlanner::new(config.nbar.clone(), config.map()?)?
            .with_tolerances(config.tolerances())?;
        let report = verify_tower(&planner, config.samples, config.probes, config.seed);
        ok &= report.pass;
        suites.insert("tc".into(), json!(report));
    }
    Ok((
        json!({
            "config": config,
            "suite": suite,
            "suites": suites,
            "pass": ok,
        }),
        ok,
    ))
}

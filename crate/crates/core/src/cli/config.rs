//! Command-line and `key=value` file configuration.
//!
//! Flags and file keys share one namespace (`J`, `beta`, `t-min`, ...). File
//! values are read first; flags given on the command line override them.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::spin_algebra::{Axis, DEFAULT_MAX_AGENTS};

pub const THREADS_ENV: &str = "SPINCONSENSUS_THREADS";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("unknown flag or key `{0}`")]
    UnknownFlag(String),
    #[error("missing required `{0}`")]
    MissingRequired(String),
    #[error("`{field}`: cannot parse `{value}` as {expected}")]
    TypeError {
        field: String,
        value: String,
        expected: &'static str,
    },
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("cannot read config file {path}: {message}")]
    File { path: String, message: String },
    /// `--help` / `--version`; the payload is the text to print.
    #[error("{0}")]
    Info(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    SolveM,
    PhaseDiagram,
    KmsCheck,
    Evolve,
    AlgebraCheck,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::SolveM => "solve-m",
            CommandKind::PhaseDiagram => "phase-diagram",
            CommandKind::KmsCheck => "kms-check",
            CommandKind::Evolve => "evolve",
            CommandKind::AlgebraCheck => "algebra-check",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Hamiltonian used by `kms-check`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HamiltonianKind {
    Meanfield,
    Total,
    Ext,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub command: CommandKind,
    pub j: f64,
    pub b: f64,
    pub betas: Vec<f64>,
    pub temperatures: Vec<f64>,
    pub n: usize,
    pub n_list: Vec<usize>,
    pub seed: u64,
    pub tolerance: f64,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    pub threads: Option<usize>,
    pub n_cap: usize,
    pub hamiltonian: HamiltonianKind,
    pub samples: usize,
    pub exhaustive: bool,
    pub initial: [f64; 3],
    pub axis: Option<Axis>,
    pub times: Vec<f64>,
}

#[derive(Debug, Clone, Default, Args)]
struct Flags {
    /// Mean-field coupling J (J < 0 is cooperative)
    #[arg(long = "J", allow_hyphen_values = true)]
    j: Option<String>,
    /// External field strength B (kms-check --hamiltonian ext)
    #[arg(long = "B", allow_hyphen_values = true)]
    b: Option<String>,
    /// Inverse temperature, or a comma separated list
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Lowest temperature of the phase-diagram grid
    #[arg(long = "t-min", allow_hyphen_values = true)]
    t_min: Option<String>,
    /// Highest temperature of the phase-diagram grid
    #[arg(long = "t-max", allow_hyphen_values = true)]
    t_max: Option<String>,
    /// Number of grid points
    #[arg(long, allow_hyphen_values = true)]
    steps: Option<String>,
    /// Number of agents
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    /// Comma separated agent counts (evolve)
    #[arg(long = "n-list")]
    n_list: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    seed: Option<String>,
    /// Root-finding tolerance
    #[arg(long, allow_hyphen_values = true)]
    tol: Option<String>,
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<String>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
    /// Worker threads (falls back to SPINCONSENSUS_THREADS)
    #[arg(long, allow_hyphen_values = true)]
    threads: Option<String>,
    /// Cap on the number of agents in dense constructions
    #[arg(long = "n-cap", allow_hyphen_values = true)]
    n_cap: Option<String>,
    /// meanfield, total or ext (kms-check)
    #[arg(long)]
    hamiltonian: Option<String>,
    /// Number of sampled observable pairs (kms-check)
    #[arg(long, allow_hyphen_values = true)]
    samples: Option<String>,
    /// Check every single-site Pauli pair (kms-check)
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    exhaustive: Option<String>,
    /// Initial Bloch vector "u1,u2,u3" (evolve)
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    /// Restrict evolve output to one axis (1, 2 or 3)
    #[arg(long, allow_hyphen_values = true)]
    axis: Option<String>,
    /// Final time of the evolve grid
    #[arg(long = "time-max", allow_hyphen_values = true)]
    time_max: Option<String>,
    /// Number of points of the evolve time grid
    #[arg(long = "time-steps", allow_hyphen_values = true)]
    time_steps: Option<String>,
    /// key=value configuration file; command-line flags take precedence
    #[arg(long)]
    config: Option<String>,
}

impl Flags {
    fn into_map(self) -> (BTreeMap<&'static str, String>, Option<String>) {
        let mut m = BTreeMap::new();
        let pairs = [
            ("J", self.j),
            ("B", self.b),
            ("beta", self.beta),
            ("t-min", self.t_min),
            ("t-max", self.t_max),
            ("steps", self.steps),
            ("n", self.n),
            ("n-list", self.n_list),
            ("seed", self.seed),
            ("tol", self.tol),
            ("out", self.out),
            ("format", self.format),
            ("threads", self.threads),
            ("n-cap", self.n_cap),
            ("hamiltonian", self.hamiltonian),
            ("samples", self.samples),
            ("exhaustive", self.exhaustive),
            ("u", self.u),
            ("axis", self.axis),
            ("time-max", self.time_max),
            ("time-steps", self.time_steps),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                m.insert(k, v);
            }
        }
        (m, self.config)
    }
}

const KEYS: [&str; 21] = [
    "J",
    "B",
    "beta",
    "t-min",
    "t-max",
    "steps",
    "n",
    "n-list",
    "seed",
    "tol",
    "out",
    "format",
    "threads",
    "n-cap",
    "hamiltonian",
    "samples",
    "exhaustive",
    "u",
    "axis",
    "time-max",
    "time-steps",
];

#[derive(Debug, Subcommand)]
enum Sub {
    /// Solve the self-consistency equation at given J and beta
    SolveM(Flags),
    /// m_c over a temperature grid
    PhaseDiagram(Flags),
    /// KMS residuals of Gibbs states over Pauli observable pairs
    KmsCheck(Flags),
    /// Exact vs mean-field mean-spin trajectories
    Evolve(Flags),
    /// Pauli/ladder identities and cross-site commutation
    AlgebraCheck(Flags),
}

#[derive(Debug, Parser)]
#[command(
    name = "spinconsensus",
    version,
    about = "Mean-field spin models of collective decisions"
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Sub>,
}

/// Parse `key=value` lines; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            ConfigError::Invalid(format!("line {}: expected key=value", lineno + 1))
        })?;
        let k = k.trim();
        if !KEYS.contains(&k) {
            return Err(ConfigError::UnknownFlag(k.to_string()));
        }
        out.insert(k.to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn map_clap_error(e: clap::Error) -> ConfigError {
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ConfigError::Info(e.to_string()),
        ErrorKind::UnknownArgument | ErrorKind::InvalidSubcommand => {
            let arg = e
                .get(clap::error::ContextKind::InvalidArg)
                .or_else(|| e.get(clap::error::ContextKind::InvalidSubcommand))
                .map(|v| v.to_string())
                .unwrap_or_else(|| e.to_string());
            ConfigError::UnknownFlag(arg)
        }
        ErrorKind::MissingSubcommand | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            ConfigError::MissingRequired("command".into())
        }
        ErrorKind::MissingRequiredArgument => ConfigError::MissingRequired(e.to_string()),
        _ => ConfigError::Invalid(e.to_string()),
    }
}

/// Parse command-line arguments (without the program name).
pub fn parse_config<I, T>(args: I) -> Result<SweepConfig, ConfigError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv =
        std::iter::once(OsString::from("spinconsensus")).chain(args.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(argv).map_err(map_clap_error)?;
    let (command, flags) = match cli.command {
        None => return Err(ConfigError::MissingRequired("command".into())),
        Some(Sub::SolveM(f)) => (CommandKind::SolveM, f),
        Some(Sub::PhaseDiagram(f)) => (CommandKind::PhaseDiagram, f),
        Some(Sub::KmsCheck(f)) => (CommandKind::KmsCheck, f),
        Some(Sub::Evolve(f)) => (CommandKind::Evolve, f),
        Some(Sub::AlgebraCheck(f)) => (CommandKind::AlgebraCheck, f),
    };
    let (cli_values, config_path) = flags.into_map();
    let mut values: BTreeMap<String, String> = match config_path {
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| ConfigError::File {
                path: path.clone(),
                message: e.to_string(),
            })?;
            parse_config_text(&text)?
        }
        None => BTreeMap::new(),
    };
    for (k, v) in cli_values {
        values.insert(k.to_string(), v);
    }
    resolve(command, &values, std::env::var(THREADS_ENV).ok())
}

struct Values<'a> {
    map: &'a BTreeMap<String, String>,
}

impl Values<'_> {
    fn raw(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    fn require<'s>(&'s self, key: &str) -> Result<&'s str, ConfigError> {
        self.raw(key)
            .ok_or_else(|| ConfigError::MissingRequired(key.to_string()))
    }

    fn parse<T: std::str::FromStr>(
        &self,
        key: &str,
        raw: &str,
        expected: &'static str,
    ) -> Result<T, ConfigError> {
        raw.trim().parse::<T>().map_err(|_| ConfigError::TypeError {
            field: key.to_string(),
            value: raw.to_string(),
            expected,
        })
    }

    fn f64_or(&self, key: &str, default: Option<f64>) -> Result<f64, ConfigError> {
        match (self.raw(key), default) {
            (Some(r), _) => {
                let v: f64 = self.parse(key, r, "a real number")?;
                if !v.is_finite() {
                    return Err(ConfigError::TypeError {
                        field: key.into(),
                        value: r.into(),
                        expected: "a finite real number",
                    });
                }
                Ok(v)
            }
            (None, Some(d)) => Ok(d),
            (None, None) => Err(ConfigError::MissingRequired(key.into())),
        }
    }

    fn usize_or(&self, key: &str, default: Option<usize>) -> Result<usize, ConfigError> {
        match (self.raw(key), default) {
            (Some(r), _) => self.parse(key, r, "a non-negative integer"),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(ConfigError::MissingRequired(key.into())),
        }
    }

    fn list<T: std::str::FromStr>(
        &self,
        key: &str,
        raw: &str,
        expected: &'static str,
    ) -> Result<Vec<T>, ConfigError> {
        raw.split(',')
            .map(|p| self.parse(key, p, expected))
            .collect()
    }
}

fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..steps)
            .map(|k| {
                if k == steps - 1 {
                    hi
                } else {
                    lo + (hi - lo) * k as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

/// Resolve merged key/value pairs into a validated [`SweepConfig`].
pub fn resolve(
    command: CommandKind,
    map: &BTreeMap<String, String>,
    threads_env: Option<String>,
) -> Result<SweepConfig, ConfigError> {
    let v = Values { map };
    for k in map.keys() {
        if !KEYS.contains(&k.as_str()) {
            return Err(ConfigError::UnknownFlag(k.clone()));
        }
    }

    let format = match v.raw("format").unwrap_or("csv") {
        "csv" => OutputFormat::Csv,
        "json" => OutputFormat::Json,
        other => {
            return Err(ConfigError::TypeError {
                field: "format".into(),
                value: other.into(),
                expected: "csv or json",
            })
        }
    };
    let hamiltonian = match v.raw("hamiltonian").unwrap_or("meanfield") {
        "meanfield" => HamiltonianKind::Meanfield,
        "total" => HamiltonianKind::Total,
        "ext" => HamiltonianKind::Ext,
        other => {
            return Err(ConfigError::TypeError {
                field: "hamiltonian".into(),
                value: other.into(),
                expected: "meanfield, total or ext",
            })
        }
    };
    let exhaustive = match v.raw("exhaustive") {
        None => None,
        Some(r) => Some(v.parse::<bool>("exhaustive", r, "true or false")?),
    };
    let threads = match v.raw("threads") {
        Some(r) => Some(v.parse::<usize>("threads", r, "a positive integer")?),
        None => match threads_env {
            Some(r) if !r.trim().is_empty() => {
                Some(v.parse::<usize>(THREADS_ENV, &r, "a positive integer")?)
            }
            _ => None,
        },
    };
    if threads == Some(0) {
        return Err(invalid("threads must be positive"));
    }
    let seed: u64 = match v.raw("seed") {
        Some(r) => v.parse("seed", r, "an unsigned 64-bit integer")?,
        None => 0,
    };
    let tolerance = v.f64_or("tol", Some(crate::mean_field::DEFAULT_TOLERANCE))?;
    if !(tolerance > 0.0) {
        return Err(invalid("tolerance must be positive"));
    }
    let n_cap = v.usize_or("n-cap", Some(DEFAULT_MAX_AGENTS))?;
    if n_cap == 0 {
        return Err(invalid("n-cap must be positive"));
    }
    let axis = match v.raw("axis") {
        Some(r) => {
            let idx: usize = v.parse("axis", r, "1, 2 or 3")?;
            Some(Axis::from_index(idx).map_err(|_| ConfigError::TypeError {
                field: "axis".into(),
                value: r.into(),
                expected: "1, 2 or 3",
            })?)
        }
        None => None,
    };

    let mut cfg = SweepConfig {
        command,
        j: -1.0,
        b: 1.0,
        betas: Vec::new(),
        temperatures: Vec::new(),
        n: 0,
        n_list: Vec::new(),
        seed,
        tolerance,
        output: v.raw("out").map(PathBuf::from),
        format,
        threads,
        n_cap,
        hamiltonian,
        samples: v.usize_or("samples", Some(32))?,
        exhaustive: false,
        initial: [1.0, 0.0, 0.0],
        axis,
        times: Vec::new(),
    };

    let betas = |required: bool| -> Result<Vec<f64>, ConfigError> {
        let raw = if required {
            v.require("beta")?
        } else {
            v.raw("beta").unwrap_or("1")
        };
        let list: Vec<f64> = v.list("beta", raw, "a real number or comma separated list")?;
        Ok(list)
    };

    match command {
        CommandKind::SolveM => {
            cfg.j = v.f64_or("J", None)?;
            cfg.betas = betas(true)?;
            if cfg.betas.iter().any(|b| !(*b > 0.0) || !b.is_finite()) {
                return Err(invalid("beta values must be positive"));
            }
        }
        CommandKind::PhaseDiagram => {
            cfg.j = v.f64_or("J", None)?;
            if !(cfg.j < 0.0) {
                return Err(invalid("phase-diagram needs J < 0"));
            }
            let t_min = v.f64_or("t-min", None)?;
            let t_max = v.f64_or("t-max", None)?;
            let steps = v.usize_or("steps", None)?;
            if steps == 0 {
                return Err(invalid("steps must be at least 1"));
            }
            if !(t_min > 0.0) || t_max < t_min {
                return Err(invalid("temperature grid needs 0 < t-min <= t-max"));
            }
            cfg.temperatures = linspace(t_min, t_max, steps);
        }
        CommandKind::KmsCheck => {
            cfg.j = v.f64_or("J", Some(-1.0))?;
            cfg.b = v.f64_or("B", Some(1.0))?;
            cfg.n = v.usize_or("n", None)?;
            cfg.betas = betas(true)?;
            if cfg.betas.iter().any(|b| !(*b >= 0.0)) {
                return Err(invalid("beta values must be non-negative"));
            }
            cfg.exhaustive = exhaustive.unwrap_or(cfg.n <= 4);
            if !cfg.exhaustive && cfg.samples == 0 {
                return Err(invalid("samples must be positive"));
            }
        }
        CommandKind::Evolve => {
            cfg.j = v.f64_or("J", Some(-1.0))?;
            cfg.n_list = match (v.raw("n-list"), v.raw("n")) {
                (Some(r), _) => v.list("n-list", r, "comma separated integers")?,
                (None, Some(r)) => vec![v.parse("n", r, "a positive integer")?],
                (None, None) => vec![2, 4, 6, 8],
            };
            let u: Vec<f64> = v.list(
                "u",
                v.raw("u").unwrap_or("1,0,0"),
                "three comma separated reals",
            )?;
            cfg.initial = u.try_into().map_err(|_| ConfigError::TypeError {
                field: "u".into(),
                value: v.raw("u").unwrap_or_default().into(),
                expected: "three comma separated reals",
            })?;
            let t_max = v.f64_or("time-max", Some(2.0))?;
            let steps = v.usize_or("time-steps", Some(21))?;
            if steps == 0 {
                return Err(invalid("time-steps must be at least 1"));
            }
            cfg.times = linspace(0.0, t_max, steps);
        }
        CommandKind::AlgebraCheck => {
            cfg.n = v.usize_or("n", Some(4))?;
        }
    }

    let agents = cfg
        .n_list
        .iter()
        .copied()
        .chain((cfg.n > 0).then_some(cfg.n));
    for n in agents {
        if n == 0 || n > cfg.n_cap {
            return Err(invalid(format!(
                "agent count {n} must be in 1..={}",
                cfg.n_cap
            )));
        }
    }
    if matches!(command, CommandKind::KmsCheck | CommandKind::AlgebraCheck) && cfg.n == 0 {
        return Err(invalid("n must be positive"));
    }
    if matches!(command, CommandKind::Evolve) && cfg.n_list.is_empty() {
        return Err(invalid("n-list must be non-empty"));
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn empty_argv_is_missing_command() {
        assert_eq!(
            parse_config(Vec::<String>::new()),
            Err(ConfigError::MissingRequired("command".into()))
        );
    }

    #[test]
    fn phase_diagram_grid() {
        let cfg = parse_config(args(
            "phase-diagram --J -1 --t-min 0.05 --t-max 1.5 --steps 30 --out pd.csv",
        ))
        .unwrap();
        assert_eq!(cfg.command, CommandKind::PhaseDiagram);
        assert_eq!(cfg.j, -1.0);
        assert_eq!(cfg.temperatures.len(), 30);
        assert_eq!(cfg.temperatures[0], 0.05);
        assert_eq!(cfg.temperatures[29], 1.5);
        assert_eq!(cfg.output, Some(PathBuf::from("pd.csv")));
        assert_eq!(
            (cfg.tolerance, cfg.format, cfg.seed, cfg.n_cap),
            (1e-12, OutputFormat::Csv, 0, 12)
        );
    }

    #[test]
    fn zero_steps_is_invalid() {
        let e = parse_config(args(
            "phase-diagram --J -1 --t-min 0.05 --t-max 1.5 --steps 0",
        ))
        .unwrap_err();
        assert!(matches!(e, ConfigError::Invalid(_)));
    }

    #[test]
    fn unknown_flag_and_type_errors() {
        assert!(matches!(
            parse_config(args("solve-m --J -1 --beta 2 --bogus 3")),
            Err(ConfigError::UnknownFlag(_))
        ));
        assert!(matches!(
            parse_config(args("frobnicate")),
            Err(ConfigError::UnknownFlag(_))
        ));
        assert_eq!(
            parse_config(args("solve-m --J abc --beta 2")),
            Err(ConfigError::TypeError {
                field: "J".into(),
                value: "abc".into(),
                expected: "a real number"
            })
        );
        assert_eq!(
            parse_config(args("solve-m --J -1")),
            Err(ConfigError::MissingRequired("beta".into()))
        );
    }

    #[test]
    fn file_values_are_overridden_by_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "# sweep\nJ = -1\nbeta=0.5,2  # two points\n").unwrap();
        let p = path.to_str().unwrap();
        let cfg = parse_config(args(&format!("solve-m --config {p} --J -2"))).unwrap();
        assert_eq!(cfg.j, -2.0);
        assert_eq!(cfg.betas, vec![0.5, 2.0]);
        let cfg = parse_config(args(&format!("solve-m --config {p}"))).unwrap();
        assert_eq!(cfg.j, -1.0);
    }

    #[test]
    fn unknown_file_key_rejected() {
        assert_eq!(
            parse_config_text("J=-1\nwidth=3\n"),
            Err(ConfigError::UnknownFlag("width".into()))
        );
        assert!(matches!(
            parse_config_text("J -1\n"),
            Err(ConfigError::Invalid(_))
        ));
    }

    #[test]
    fn threads_env_fallback() {
        let mut m = BTreeMap::new();
        m.insert("n".to_string(), "3".to_string());
        let cfg = resolve(CommandKind::AlgebraCheck, &m, Some("3".into())).unwrap();
        assert_eq!(cfg.threads, Some(3));
        m.insert("threads".to_string(), "5".to_string());
        let cfg = resolve(CommandKind::AlgebraCheck, &m, Some("3".into())).unwrap();
        assert_eq!(cfg.threads, Some(5));
    }

    #[test]
    fn kms_defaults() {
        let cfg = parse_config(args("kms-check --n 4 --beta 2 --seed 7")).unwrap();
        assert!(cfg.exhaustive);
        assert_eq!(
            (cfg.n, cfg.seed, cfg.hamiltonian),
            (4, 7, HamiltonianKind::Meanfield)
        );
        let cfg = parse_config(args("kms-check --n 6 --beta 2")).unwrap();
        assert!(!cfg.exhaustive);
        let cfg = parse_config(args("kms-check --n 6 --beta 1,5 --exhaustive")).unwrap();
        assert!(cfg.exhaustive);
        assert!(matches!(
            parse_config(args("kms-check --n 13 --beta 1")),
            Err(ConfigError::Invalid(_))
        ));
    }

    #[test]
    fn evolve_defaults() {
        let cfg = parse_config(args("evolve")).unwrap();
        assert_eq!(cfg.n_list, vec![2, 4, 6, 8]);
        assert_eq!(cfg.initial, [1.0, 0.0, 0.0]);
        assert_eq!(cfg.times.len(), 21);
        let cfg = parse_config(args(
            "evolve --n-list 2,3 --u 0,0,1 --time-max 1 --time-steps 3 --axis 3",
        ))
        .unwrap();
        assert_eq!(cfg.times, vec![0.0, 0.5, 1.0]);
        assert_eq!(cfg.axis, Some(Axis::Z));
        assert!(matches!(
            parse_config(args("evolve --u 1,0")),
            Err(ConfigError::TypeError { .. })
        ));
    }
}

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use calogero::algebra::QuantumNumbers;
use calogero::coupling::parse_rational;
use calogero::oracle::Delta2Form;
use calogero::Coupling;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

pub const OUT_DIR_ENV: &str = "CALOGERO_OUT_DIR";

#[derive(Debug)]
pub enum ConfigError {
    /// clap already rendered the message; `exit` is its own code
    Clap(clap::Error),
    Usage(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Clap(e) => write!(f, "{e}"),
            ConfigError::Usage(msg) => write!(f, "error: {msg}"),
        }
    }
}

fn usage(msg: impl Into<String>) -> ConfigError {
    ConfigError::Usage(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Delta2Choice {
    Recurrence,
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Coefficients,
    Delta1,
    Free,
    Identities,
    Norms,
    Weierstrass,
    Oracle,
    Adjudication,
    Spot,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Coeffs,
    Delta1,
    Delta2,
    Energy,
    Weier,
    Oracle,
    Verify,
}

#[derive(Parser, Debug)]
#[command(name = "calogero", version)]
#[command(about = "Perturbative spectra of the elliptic Calogero-Sutherland model, with numerical cross-checks")]
struct Cli {
    /// Flat TOML file whose keys mirror the long flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Output file; relative paths resolve against $CALOGERO_OUT_DIR when set
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct StateArgs {
    /// Rank n of A_n (N = n + 1 particles)
    #[arg(long)]
    rank: Option<usize>,
    /// Quantum numbers, comma separated
    #[arg(long)]
    m: Option<String>,
    /// Coupling as an integer or p/q
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recurrence coefficients of z_1 and z_n, with closed forms where known
    Coeffs {
        #[command(flatten)]
        state: StateArgs,
        /// Include the monomial expansion of the Jack polynomial
        #[arg(long)]
        dump: bool,
    },
    /// First-order energy coefficient
    Delta1 {
        #[command(flatten)]
        state: StateArgs,
    },
    /// Second-order energy coefficient (rank 1)
    Delta2 {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum)]
        form: Option<Delta2Choice>,
    },
    /// Assembled energy expansion, optionally evaluated at g
    Energy {
        #[command(flatten)]
        state: StateArgs,
        /// 1 or 2
        #[arg(long)]
        order: Option<usize>,
        /// Comma-separated nome values
        #[arg(long)]
        g: Option<String>,
    },
    /// Weierstrass function from the nome series
    Weier {
        #[arg(long, allow_hyphen_values = true)]
        z: Option<f64>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        p_max: Option<usize>,
        /// Also evaluate the lattice-sum oracle
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Numerical diagonalization against the perturbative levels (rank 1)
    Oracle {
        #[arg(long, allow_hyphen_values = true)]
        kappa: Option<String>,
        /// Comma-separated levels m
        #[arg(long)]
        levels: Option<String>,
        /// Comma-separated nome values
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        basis_size: Option<usize>,
        #[arg(long)]
        p_max: Option<usize>,
        #[arg(long, value_enum)]
        delta2_form: Option<Delta2Choice>,
    },
    /// Run the cross-check suites
    Verify {
        #[arg(long, value_enum)]
        suite: Option<Suite>,
    },
}

/// Keys accepted in a config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    rank: Option<usize>,
    m: Option<String>,
    kappa: Option<String>,
    g: Option<String>,
    z: Option<f64>,
    order: Option<usize>,
    form: Option<Delta2Choice>,
    dump: Option<bool>,
    p_max: Option<usize>,
    oracle: Option<bool>,
    cutoff: Option<usize>,
    tol: Option<f64>,
    levels: Option<String>,
    basis_size: Option<usize>,
    delta2_form: Option<Delta2Choice>,
    suite: Option<Suite>,
    format: Option<Format>,
    out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub rank: Option<usize>,
    pub m: Option<QuantumNumbers>,
    #[serde(serialize_with = "display")]
    pub kappa: Option<Coupling>,
    pub g: Vec<f64>,
    pub z: Option<f64>,
    pub order: Option<usize>,
    pub form: Delta2Choice,
    pub dump: bool,
    pub p_max: Option<usize>,
    pub oracle: bool,
    pub cutoff: usize,
    pub tol: f64,
    pub levels: Vec<u32>,
    pub basis_size: usize,
    pub suite: Suite,
    pub format: Format,
    pub out: Option<PathBuf>,
}

fn display<S: serde::Serializer>(k: &Option<Coupling>, s: S) -> Result<S::Ok, S::Error> {
    match k {
        Some(k) => s.serialize_str(&k.to_string()),
        None => s.serialize_none(),
    }
}

impl RunConfig {
    pub fn delta2_form(&self) -> Delta2Form {
        match self.form {
            Delta2Choice::Recurrence => Delta2Form::Recurrence,
            Delta2Choice::Closed => Delta2Form::AsPrinted,
        }
    }

    pub fn require_kappa(&self) -> Result<&Coupling, ConfigError> {
        self.kappa.as_ref().ok_or_else(|| usage("--kappa is required"))
    }

    pub fn require_state(&self) -> Result<(usize, &QuantumNumbers, &Coupling), ConfigError> {
        let m = self.m.as_ref().ok_or_else(|| usage("--m is required"))?;
        Ok((m.rank(), m, self.require_kappa()?))
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, ConfigError> {
    s.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|_| usage(format!("cannot parse {what} entry {t:?}"))))
        .collect()
}

pub fn parse_kappa(s: &str) -> Result<Coupling, ConfigError> {
    parse_rational(s)
        .map(Coupling::new)
        .map_err(|e| usage(format!("--kappa {s:?}: {e}")))
}

/// Parses argv (including the program name) and an optional config file.
pub fn parse_config<I, T>(args: I) -> Result<RunConfig, ConfigError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(ConfigError::Clap)?;
    let file = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
            toml::from_str::<FileConfig>(&text)
                .map_err(|e| usage(format!("config {}: {e}", path.display())))?
        }
        None => FileConfig::default(),
    };
    let mut cfg = RawConfig::from_file(file);
    cfg.format = cli.format.or(cfg.format);
    cfg.out = cli.out.or(cfg.out);
    let kind = match cli.command {
        Command::Coeffs { state, dump } => {
            cfg.apply_state(state);
            cfg.dump = dump || cfg.dump;
            CommandKind::Coeffs
        }
        Command::Delta1 { state } => {
            cfg.apply_state(state);
            CommandKind::Delta1
        }
        Command::Delta2 { state, form } => {
            cfg.apply_state(state);
            cfg.form = form.or(cfg.form);
            CommandKind::Delta2
        }
        Command::Energy { state, order, g } => {
            cfg.apply_state(state);
            cfg.order = order.or(cfg.order);
            cfg.g = g.or(cfg.g);
            CommandKind::Energy
        }
        Command::Weier { z, g, p_max, oracle, cutoff, tol } => {
            cfg.z = z.or(cfg.z);
            cfg.g = g.or(cfg.g);
            cfg.p_max = p_max.or(cfg.p_max);
            cfg.oracle = oracle || cfg.oracle;
            cfg.cutoff = cutoff.or(cfg.cutoff);
            cfg.tol = tol.or(cfg.tol);
            CommandKind::Weier
        }
        Command::Oracle { kappa, levels, g, basis_size, p_max, delta2_form } => {
            cfg.kappa = kappa.or(cfg.kappa);
            cfg.levels = levels.or(cfg.levels);
            cfg.g = g.or(cfg.g);
            cfg.basis_size = basis_size.or(cfg.basis_size);
            cfg.p_max = p_max.or(cfg.p_max);
            cfg.form = delta2_form.or(cfg.form);
            CommandKind::Oracle
        }
        Command::Verify { suite } => {
            cfg.suite = suite.or(cfg.suite);
            CommandKind::Verify
        }
    };
    cfg.finish(kind)
}

/// Merged but unvalidated settings.
#[derive(Default)]
struct RawConfig {
    rank: Option<usize>,
    m: Option<String>,
    kappa: Option<String>,
    g: Option<String>,
    z: Option<f64>,
    order: Option<usize>,
    form: Option<Delta2Choice>,
    dump: bool,
    p_max: Option<usize>,
    oracle: bool,
    cutoff: Option<usize>,
    tol: Option<f64>,
    levels: Option<String>,
    basis_size: Option<usize>,
    suite: Option<Suite>,
    format: Option<Format>,
    out: Option<PathBuf>,
}

impl RawConfig {
    fn from_file(f: FileConfig) -> Self {
        RawConfig {
            rank: f.rank,
            m: f.m,
            kappa: f.kappa,
            g: f.g,
            z: f.z,
            order: f.order,
            form: f.form.or(f.delta2_form),
            dump: f.dump.unwrap_or(false),
            p_max: f.p_max,
            oracle: f.oracle.unwrap_or(false),
            cutoff: f.cutoff,
            tol: f.tol,
            levels: f.levels,
            basis_size: f.basis_size,
            suite: f.suite,
            format: f.format,
            out: f.out,
        }
    }

    fn apply_state(&mut self, s: StateArgs) {
        self.rank = s.rank.or(self.rank);
        self.m = s.m.or(self.m.take());
        self.kappa = s.kappa.or(self.kappa.take());
    }

    fn finish(self, command: CommandKind) -> Result<RunConfig, ConfigError> {
        let kappa = self.kappa.as_deref().map(parse_kappa).transpose()?;
        let m = match (&self.m, self.rank) {
            (Some(s), rank) => {
                let parts = parse_list::<u32>(s, "--m")?;
                let q = match rank {
                    Some(n) => QuantumNumbers::with_rank(parts, n),
                    None => QuantumNumbers::new(parts),
                };
                Some(q.map_err(|e| usage(format!("--m {s:?}: {e}")))?)
            }
            (None, Some(0)) => return Err(usage("--rank must be at least 1")),
            (None, _) => None,
        };
        let rank = m.as_ref().map(|q| q.rank()).or(self.rank);
        let g = match &self.g {
            Some(s) => parse_list::<f64>(s, "--g")?,
            None => Vec::new(),
        };
        if let Some(bad) = g.iter().find(|x| !(0.0..1.0).contains(*x)) {
            return Err(usage(format!("--g values must lie in [0, 1), got {bad}")));
        }
        let levels = match &self.levels {
            Some(s) => parse_list::<u32>(s, "--levels")?,
            None => vec![0, 1, 2],
        };
        if let Some(order) = self.order {
            if !(1..=2).contains(&order) {
                return Err(usage(format!("--order must be 1 or 2, got {order}")));
            }
        }
        let format = self.format.unwrap_or(Format::Json);
        if format == Format::Csv && !matches!(command, CommandKind::Oracle | CommandKind::Weier) {
            return Err(usage("csv output is available for the oracle and weier subcommands"));
        }
        Ok(RunConfig {
            command,
            rank,
            m,
            kappa,
            g,
            z: self.z,
            order: self.order,
            form: self.form.unwrap_or(Delta2Choice::Recurrence),
            dump: self.dump,
            p_max: self.p_max,
            oracle: self.oracle,
            cutoff: self.cutoff.unwrap_or(1 << 13),
            tol: self.tol.unwrap_or(1e-12),
            levels,
            basis_size: self.basis_size.unwrap_or(80),
            suite: self.suite.unwrap_or(Suite::All),
            format,
            out: self.out,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, ConfigError> {
        parse_config(std::iter::once("calogero").chain(args.iter().copied()))
    }

    #[test]
    fn state_flags() {
        let c = parse(&["coeffs", "--rank", "2", "--m", "1,0", "--kappa", "5/2"]).unwrap();
        assert_eq!(c.command, CommandKind::Coeffs);
        assert_eq!(c.rank, Some(2));
        assert_eq!(c.m.unwrap().as_slice(), &[1, 0]);
        assert_eq!(c.kappa.unwrap(), Coupling::from_ratio(5, 2));
    }

    #[test]
    fn decimal_coupling_rejected() {
        assert!(matches!(
            parse(&["delta1", "--m", "1", "--kappa", "0.5"]),
            Err(ConfigError::Usage(_))
        ));
    }

    #[test]
    fn arity_mismatch_rejected() {
        assert!(matches!(
            parse(&["delta1", "--m", "1,0", "--rank", "3", "--kappa", "2"]),
            Err(ConfigError::Usage(_))
        ));
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "kappa = \"3\"\nm = \"2\"\nform = \"closed\"\n").unwrap();
        let p = path.to_str().unwrap();
        let c = parse(&["delta2", "--config", p, "--kappa", "5/2"]).unwrap();
        assert_eq!(c.kappa.unwrap(), Coupling::from_ratio(5, 2));
        assert_eq!(c.m.unwrap().as_slice(), &[2]);
        assert_eq!(c.form, Delta2Choice::Closed);
    }

    #[test]
    fn unknown_file_keys_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "kapa = \"3\"\n").unwrap();
        let p = path.to_str().unwrap();
        assert!(matches!(parse(&["delta1", "--config", p]), Err(ConfigError::Usage(_))));
    }

    #[test]
    fn g_range_checked() {
        assert!(parse(&["energy", "--m", "0", "--kappa", "2", "--g", "1.5"]).is_err());
        let c = parse(&["oracle", "--kappa", "3", "--g", "0.001,0.002"]).unwrap();
        assert_eq!(c.g, vec![0.001, 0.002]);
        assert_eq!(c.levels, vec![0, 1, 2]);
    }

    #[test]
    fn csv_only_for_tables() {
        assert!(parse(&["delta1", "--m", "1", "--kappa", "2", "--format", "csv"]).is_err());
        assert!(parse(&["oracle", "--kappa", "2", "--format", "csv"]).is_ok());
    }
}

//! Run configuration: JSON file keys and command-line flags share one schema.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::Args;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    VerifyDelta,
    VerifyPoisson,
    VerifyVoronoi,
    VerifyCharsumC,
    SweepCharsumA,
    SweepCharsumB,
    SweepWeil,
    VerifyDecomposition,
    Lvalue,
    ExponentSweep,
    DumpCoeffs,
}

impl Command {
    pub const ALL: [Command; 11] = [
        Command::VerifyDelta,
        Command::VerifyPoisson,
        Command::VerifyVoronoi,
        Command::VerifyCharsumC,
        Command::SweepCharsumA,
        Command::SweepCharsumB,
        Command::SweepWeil,
        Command::VerifyDecomposition,
        Command::Lvalue,
        Command::ExponentSweep,
        Command::DumpCoeffs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyDelta => "verify-delta",
            Command::VerifyPoisson => "verify-poisson",
            Command::VerifyVoronoi => "verify-voronoi",
            Command::VerifyCharsumC => "verify-charsum-C",
            Command::SweepCharsumA => "sweep-charsum-A",
            Command::SweepCharsumB => "sweep-charsum-B",
            Command::SweepWeil => "sweep-weil",
            Command::VerifyDecomposition => "verify-decomposition",
            Command::Lvalue => "lvalue",
            Command::ExponentSweep => "exponent-sweep",
            Command::DumpCoeffs => "dump-coeffs",
        }
    }

    /// Parameter keys accepted besides `command`, `seed`, `output` and `format`.
    pub fn keys(self) -> &'static [&'static str] {
        match self {
            Command::VerifyDelta => &["nmax", "Q", "tolerance"],
            Command::VerifyPoisson => &["scale", "shift", "tolerance"],
            Command::VerifyVoronoi => &["weight", "q", "a", "X", "truncation", "tolerance"],
            Command::VerifyCharsumC => &["p", "max_modulus", "literal_samples", "tolerance"],
            Command::SweepCharsumA => &["p", "r", "tuples"],
            Command::SweepCharsumB | Command::SweepWeil => &["p", "tuples"],
            Command::VerifyDecomposition => &["weight", "p", "r", "l", "N", "tolerance"],
            Command::Lvalue => &["weight", "p", "r", "index", "test_function", "balance", "alt_balance", "truncation", "tolerance"],
            Command::ExponentSweep => &["weight", "p", "r", "rmax", "samples", "test_function", "tolerance"],
            Command::DumpCoeffs => &["weight", "nmax"],
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let names: Vec<_> = Command::ALL.iter().map(|c| c.name()).collect();
            format!("unknown command `{s}` (expected one of {})", names.join(", "))
        })
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// 64-bit seed, written as decimal or `0x` hex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Seed(pub u64);

impl FromStr for Seed {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
            Some(hex) => u64::from_str_radix(hex, 16),
            None => t.parse(),
        };
        parsed.map(Seed).map_err(|e| format!("invalid seed `{s}`: {e}"))
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl Serialize for Seed {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Seed {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(Seed(n)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Every key is optional; flags override the file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[arg(skip)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<Seed>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nmax: Option<usize>,
    #[arg(long = "Q")]
    #[serde(rename = "Q", skip_serializing_if = "Option::is_none")]
    pub q_max: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<u32>,
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<u32>>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rmax: Option<u32>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<u64>>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[arg(long = "X", value_delimiter = ',', num_args = 1..)]
    #[serde(rename = "X", skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
    #[arg(long = "N", value_delimiter = ',', num_args = 1..)]
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub big_n: Option<Vec<f64>>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[arg(long = "max_modulus", alias = "max-modulus")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_modulus: Option<u64>,
    #[arg(long = "literal_samples", alias = "literal-samples")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub literal_samples: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tuples: Option<usize>,
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<Vec<u64>>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[arg(long = "test_function", alias = "test-function")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub test_function: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub balance: Option<f64>,
    #[arg(long = "alt_balance", alias = "alt-balance")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alt_balance: Option<f64>,
}

macro_rules! prefer {
    ($flags:expr, $file:expr; $($field:ident),* $(,)?) => {
        Params { $($field: $flags.$field.or($file.$field),)* }
    };
}

impl Params {
    /// Flags win over file values key by key.
    pub fn merge(flags: Params, file: Params) -> Params {
        prefer!(flags, file;
            command, seed, output, format, tolerance, nmax, q_max, scale, shift, weight, p, r, rmax, l, q, a,
            x, big_n, truncation, max_modulus, literal_samples, tuples, index, samples, test_function,
            balance, alt_balance)
    }

    /// Names of the keys that are set.
    pub fn present_keys(&self) -> Vec<String> {
        match serde_json::to_value(self) {
            Ok(serde_json::Value::Object(map)) => map.keys().cloned().collect(),
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

/// Fully resolved run: command, seed and validated parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    pub format: Format,
    pub params: Params,
}

impl RunConfig {
    pub fn resolve(positional: Option<String>, flags: Params, file: Option<Params>) -> Result<Self, ConfigError> {
        let mut params = Params::merge(flags, file.unwrap_or_default());
        let name = positional
            .or_else(|| params.command.clone())
            .ok_or_else(|| ConfigError("no command given".into()))?;
        let command: Command = name.parse().map_err(ConfigError)?;
        params.command = Some(command.name().to_string());
        let common = ["command", "seed", "output", "format"];
        for key in params.present_keys() {
            if !common.contains(&key.as_str()) && !command.keys().contains(&key.as_str()) {
                return Err(ConfigError(format!("key `{key}` does not apply to `{command}`")));
            }
        }
        let seed = params.seed.map(|s| s.0).unwrap_or(gl2twist::DEFAULT_SEED);
        params.seed = Some(Seed(seed));
        Ok(Self { command, seed, format: params.format.unwrap_or(Format::Csv), params })
    }

    /// Canonical JSON echo of the resolved configuration.
    pub fn echo(&self) -> String {
        let mut echo = self.params.clone();
        echo.output = None;
        serde_json::to_string(&echo).unwrap_or_default()
    }
}

pub fn read_config_file(path: &std::path::Path) -> Result<Params, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| ConfigError(format!("invalid config {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_forms() {
        assert_eq!("0x5EED".parse::<Seed>().unwrap(), Seed(0x5EED));
        assert_eq!("24301".parse::<Seed>().unwrap(), Seed(24301));
        assert!("zz".parse::<Seed>().is_err());
        let p: Params = serde_json::from_str(r#"{"seed": 7}"#).unwrap();
        assert_eq!(p.seed, Some(Seed(7)));
        let p: Params = serde_json::from_str(r#"{"seed": "0x10"}"#).unwrap();
        assert_eq!(p.seed, Some(Seed(16)));
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<Params>(r#"{"nmx": 3}"#).is_err());
    }

    #[test]
    fn flags_win() {
        let flags = Params { nmax: Some(5), ..Default::default() };
        let file = Params { nmax: Some(9), q_max: Some(3.0), command: Some("verify-delta".into()), ..Default::default() };
        let run = RunConfig::resolve(None, flags, Some(file)).unwrap();
        assert_eq!(run.params.nmax, Some(5));
        assert_eq!(run.params.q_max, Some(3.0));
        assert_eq!(run.command, Command::VerifyDelta);
        assert_eq!(run.seed, gl2twist::DEFAULT_SEED);
    }

    #[test]
    fn empty_and_misplaced() {
        assert!(RunConfig::resolve(None, Params::default(), Some(Params::default())).is_err());
        let flags = Params { tuples: Some(3), ..Default::default() };
        assert!(RunConfig::resolve(Some("verify-delta".into()), flags, None).is_err());
        assert!(RunConfig::resolve(Some("verify-gamma".into()), Params::default(), None).is_err());
    }
}

//! Run configuration: built-in defaults, an optional flat `key = value`
//! file, then command-line flags, merged in that order.

use std::collections::BTreeMap;
use std::fmt;

use bkzeta::spectra::{ScanConfig, ScanMode};
use bkzeta::waveform::{SqueezeParameter, Variant};

use crate::error::CliError;
use crate::output::Format;
use crate::verify::SUITES;

/// Keys accepted in config files and as flags.
pub const KEYS: &[&str] = &[
    "format", "lambda", "mode", "n", "only", "out", "step", "t", "tol", "variant", "y",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Verify,
    Scan,
    Boundary,
    Converge,
}

impl Command {
    pub fn label(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Scan => "scan",
            Command::Boundary => "boundary",
            Command::Converge => "converge",
        }
    }

    fn defaults(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Command::Verify => &[("format", "csv")],
            Command::Scan => &[
                ("format", "csv"),
                ("lambda", "12"),
                ("mode", "limit"),
                ("n", "0"),
                ("step", "0.05"),
                ("t", "0.1:50"),
                ("tol", "1e-10"),
            ],
            Command::Boundary => &[
                ("format", "csv"),
                ("lambda", "12"),
                ("n", "0"),
                ("t", "10"),
                ("variant", "original"),
                ("y", "0,0.25,0.5,1"),
            ],
            Command::Converge => &[
                ("format", "csv"),
                ("lambda", "8,10,12"),
                ("n", "0"),
                ("t", "10"),
                ("variant", "tilde"),
            ],
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Effective configuration of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: BTreeMap<String, String>,
}

/// Parse a flat `key = value` file. Blank lines and `#` comments are skipped.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", k + 1)))?;
        let key = key.trim();
        check_key(key)?;
        out.insert(key.to_string(), value.trim().to_string());
    }
    Ok(out)
}

fn check_key(key: &str) -> Result<(), CliError> {
    if KEYS.contains(&key) {
        Ok(())
    } else {
        Err(CliError::Config(format!("unknown key '{key}'")))
    }
}

impl RunConfig {
    pub fn assemble(
        command: Command,
        file: BTreeMap<String, String>,
        flags: BTreeMap<String, String>,
    ) -> Result<Self, CliError> {
        let mut params: BTreeMap<String, String> = command
            .defaults()
            .iter()
            .map(|&(k, v)| (k.to_string(), v.to_string()))
            .collect();
        for (k, v) in file.into_iter().chain(flags) {
            check_key(&k)?;
            params.insert(k, v);
        }
        Ok(Self { command, params })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }

    fn require(&self, key: &str) -> Result<&str, CliError> {
        self.get(key)
            .ok_or_else(|| CliError::Config(format!("missing '{key}'")))
    }

    /// Lines echoed at the top of every report. The output path is left out
    /// so that reports written to different files stay identical.
    pub fn echo(&self) -> Vec<(String, String)> {
        std::iter::once(("command".to_string(), self.command.label().to_string()))
            .chain(
                self.params
                    .iter()
                    .filter(|(k, _)| k.as_str() != "out")
                    .map(|(k, v)| (k.clone(), v.clone())),
            )
            .collect()
    }

    pub fn format(&self) -> Result<Format, CliError> {
        match self.require("format")? {
            "csv" => Ok(Format::Csv),
            "records" => Ok(Format::Records),
            other => Err(CliError::Config(format!("unknown format '{other}'"))),
        }
    }

    pub fn number(&self, key: &str) -> Result<f64, CliError> {
        parse_number(key, self.require(key)?)
    }

    pub fn list(&self, key: &str) -> Result<Vec<f64>, CliError> {
        self.require(key)?
            .split(',')
            .map(|v| parse_number(key, v))
            .collect()
    }

    pub fn range(&self, key: &str) -> Result<(f64, f64), CliError> {
        let v = self.require(key)?;
        let (lo, hi) = v
            .split_once(':')
            .ok_or_else(|| CliError::Config(format!("'{key}' must be lo:hi, got '{v}'")))?;
        Ok((parse_number(key, lo)?, parse_number(key, hi)?))
    }

    pub fn quantum_number(&self) -> Result<usize, CliError> {
        let v = self.require("n")?;
        v.trim()
            .parse()
            .map_err(|_| CliError::Config(format!("'n' must be a nonnegative integer, got '{v}'")))
    }

    pub fn variant(&self) -> Result<Variant, CliError> {
        self.require("variant")?
            .parse()
            .map_err(|e: bkzeta::Error| CliError::Config(e.to_string()))
    }

    pub fn lambdas(&self) -> Result<Vec<SqueezeParameter>, CliError> {
        self.list("lambda")?
            .into_iter()
            .map(|l| SqueezeParameter::new(l).map_err(|e| CliError::Config(e.to_string())))
            .collect()
    }

    pub fn scan_settings(&self) -> Result<(ScanConfig, ScanMode), CliError> {
        let (lo, hi) = self.range("t")?;
        let cfg = ScanConfig::new(lo, hi, self.number("step")?, self.number("tol")?)
            .map_err(|e| CliError::Config(e.to_string()))?;
        let mode = match self.require("mode")? {
            "limit" => ScanMode::Limit,
            "finite" => {
                let lambdas = self.lambdas()?;
                if lambdas.len() != 1 {
                    return Err(CliError::Config("finite mode takes a single lambda".into()));
                }
                ScanMode::Finite {
                    lambda: lambdas[0],
                    n: self.quantum_number()?,
                }
            }
            other => return Err(CliError::Config(format!("unknown mode '{other}'"))),
        };
        Ok((cfg, mode))
    }

    pub fn only(&self) -> Result<Option<&str>, CliError> {
        match self.get("only") {
            None => Ok(None),
            Some(name) if SUITES.contains(&name) => Ok(Some(name)),
            Some(name) => Err(CliError::Config(format!(
                "unknown suite '{name}', expected one of {}",
                SUITES.join(", ")
            ))),
        }
    }

    pub fn tolerance_override(&self) -> Result<Option<f64>, CliError> {
        match self.get("tol") {
            None => Ok(None),
            Some(v) => {
                let tol = parse_number("tol", v)?;
                if tol > 0.0 {
                    Ok(Some(tol))
                } else {
                    Err(CliError::Config("'tol' must be positive".into()))
                }
            }
        }
    }
}

fn parse_number(key: &str, v: &str) -> Result<f64, CliError> {
    let x: f64 = v
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("'{key}' expects a number, got '{v}'")))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Config(format!("'{key}' must be finite")))
    }
}

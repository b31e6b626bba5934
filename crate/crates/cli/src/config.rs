use std::path::Path;

use serde::{Deserialize, Serialize};
use tropical_rb::semiring::{Beta, Entropy};
use tropical_rb::witt::{DEFAULT_ORDER, POINT_CAP};
use tropical_rb::{Error, Result};

/// Environment variable naming a default config file.
pub const CONFIG_ENV: &str = "TROPICAL_RB_CONFIG";

const MAX_ORDER: usize = 64;

/// Every tunable of a run. The JSON config file uses the same field names as
/// the long flags (with `_` for `-`); flags override the file.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub beta: Option<Beta>,
    pub tol: Option<f64>,
    pub order: Option<usize>,
    pub len: Option<usize>,
    pub q_terms: Option<usize>,
    pub admissibility: Option<String>,
    pub operator: Option<String>,
    pub q: Option<String>,
    pub mask: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub entropy: Option<String>,
    pub alpha: Option<f64>,
    pub cap: Option<u64>,
    pub primes: Option<String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<ConfigFile> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("config {}: {e}", path.display())))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: ConfigFile) -> ConfigFile {
        ConfigFile {
            beta: over.beta.or(self.beta),
            tol: over.tol.or(self.tol),
            order: over.order.or(self.order),
            len: over.len.or(self.len),
            q_terms: over.q_terms.or(self.q_terms),
            admissibility: over.admissibility.or(self.admissibility),
            operator: over.operator.or(self.operator),
            q: over.q.or(self.q),
            mask: over.mask.or(self.mask),
            seed: over.seed.or(self.seed),
            samples: over.samples.or(self.samples),
            entropy: over.entropy.or(self.entropy),
            alpha: over.alpha.or(self.alpha),
            cap: over.cap.or(self.cap),
            primes: over.primes.or(self.primes),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorName {
    PartialSum,
    QIntegral,
    Projection,
    Identity,
    CharacteristicMultiplier,
}

impl OperatorName {
    fn parse(s: &str) -> Result<OperatorName> {
        Ok(match s {
            "partial-sum" => OperatorName::PartialSum,
            "q-integral" => OperatorName::QIntegral,
            "projection" => OperatorName::Projection,
            "identity" => OperatorName::Identity,
            "characteristic-multiplier" => OperatorName::CharacteristicMultiplier,
            _ => return Err(Error::Parse(format!("unknown operator '{s}'"))),
        })
    }
}

/// Validated run configuration, echoed in every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub beta: Beta,
    pub tol: f64,
    /// Truncation order of Witt vectors and zeta functions.
    pub order: usize,
    /// Length of sequence- and series-valued characters.
    pub len: usize,
    /// Terms of a truncated q-sum; `None` selects the closed form.
    pub q_terms: Option<usize>,
    pub admissibility: String,
    pub operator: OperatorName,
    pub q: Option<String>,
    pub mask: Option<Vec<bool>>,
    pub seed: u64,
    pub samples: usize,
    pub entropy: Entropy,
    pub cap: u64,
    pub primes: Option<Vec<u64>>,
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Error::Domain(format!("{name} must be a positive finite number, got {x}")))
    }
}

fn nonzero(name: &str, n: usize, max: usize) -> Result<usize> {
    if n == 0 || n > max {
        return Err(Error::Domain(format!("{name} must lie in 1..={max}, got {n}")));
    }
    Ok(n)
}

fn parse_mask(s: &str) -> Result<Vec<bool>> {
    s.split(',')
        .map(|t| match t.trim() {
            "1" | "true" => Ok(true),
            "0" | "false" => Ok(false),
            other => Err(Error::Parse(format!("mask entries are 0 or 1, got '{other}'"))),
        })
        .collect()
}

pub fn parse_primes(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("not an integer: '{t}'"))))
        .collect()
}

impl RunConfig {
    pub fn resolve(c: &ConfigFile) -> Result<RunConfig> {
        let entropy = match c.entropy.as_deref().unwrap_or("shannon") {
            "shannon" => Entropy::Shannon,
            "renyi" => Entropy::renyi(c.alpha.ok_or_else(|| Error::Parse("--entropy renyi needs --alpha".into()))?)?,
            "tsallis" => {
                Entropy::tsallis(c.alpha.ok_or_else(|| Error::Parse("--entropy tsallis needs --alpha".into()))?)?
            }
            other => return Err(Error::Parse(format!("unknown entropy '{other}'"))),
        };
        let admissibility = c.admissibility.clone().unwrap_or_else(|| "all".into());
        if !matches!(admissibility.as_str(), "all" | "induced") {
            return Err(Error::Parse(format!("unknown admissibility '{admissibility}'")));
        }
        let mask = c.mask.as_deref().map(parse_mask).transpose()?;
        let len = match (c.len, &mask) {
            (Some(n), Some(m)) if n != m.len() => {
                return Err(Error::Domain(format!("mask has {} entries but len is {n}", m.len())));
            }
            (Some(n), _) => n,
            (None, Some(m)) => m.len(),
            (None, None) => 4,
        };
        Ok(RunConfig {
            beta: c.beta.unwrap_or(Beta::INFINITY),
            tol: positive("tol", c.tol.unwrap_or(1e-9))?,
            order: nonzero("order", c.order.unwrap_or(DEFAULT_ORDER), MAX_ORDER)?,
            len: nonzero("len", len, MAX_ORDER)?,
            q_terms: c.q_terms.map(|k| nonzero("q-terms", k, 100_000)).transpose()?,
            admissibility,
            operator: OperatorName::parse(c.operator.as_deref().unwrap_or("partial-sum"))?,
            q: c.q.clone(),
            mask,
            seed: c.seed.unwrap_or(0x5eed),
            samples: nonzero("samples", c.samples.unwrap_or(100), 1_000_000)?,
            entropy,
            cap: c.cap.unwrap_or(POINT_CAP),
            primes: c.primes.as_deref().map(parse_primes).transpose()?,
        })
    }
}

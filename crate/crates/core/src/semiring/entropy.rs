use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Tolerance on `Σ p = 1` when validating probability vectors.
const SIMPLEX_TOL: f64 = 1e-9;

/// Entropy functional used to deform addition.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Entropy {
    Shannon,
    Renyi { q: f64 },
    Tsallis { alpha: f64 },
}

impl Entropy {
    pub fn renyi(q: f64) -> Result<Entropy> {
        check_order(q, "Rényi order q")?;
        Ok(Entropy::Renyi { q })
    }

    pub fn tsallis(alpha: f64) -> Result<Entropy> {
        check_order(alpha, "Tsallis index alpha")?;
        Ok(Entropy::Tsallis { alpha })
    }

    /// Re-validates parameters, e.g. after deserialization.
    pub fn validated(self) -> Result<Entropy> {
        match self {
            Entropy::Shannon => Ok(self),
            Entropy::Renyi { q } => Entropy::renyi(q),
            Entropy::Tsallis { alpha } => Entropy::tsallis(alpha),
        }
    }

    pub fn is_shannon(&self) -> bool {
        matches!(self, Entropy::Shannon)
    }

    /// Evaluates the entropy of a (not re-validated) probability vector.
    /// Zero coordinates contribute nothing.
    pub fn eval(&self, p: &[f64]) -> f64 {
        match *self {
            Entropy::Shannon => -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>(),
            Entropy::Renyi { q } => {
                let s: f64 = p.iter().filter(|&&x| x > 0.0).map(|&x| x.powf(q)).sum();
                s.ln() / (1.0 - q)
            }
            Entropy::Tsallis { alpha } => {
                let s: f64 = p.iter().filter(|&&x| x > 0.0).map(|&x| x.powf(alpha)).sum();
                (s - 1.0) / (1.0 - alpha)
            }
        }
    }

    pub fn eval_prob(&self, p: &ProbVector) -> f64 {
        self.eval(p.as_slice())
    }
}

fn check_order(x: f64, what: &str) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::InvalidParameter(format!("{what} must be finite and positive, got {x}")));
    }
    if x == 1.0 {
        return Err(Error::InvalidParameter(format!(
            "{what} = 1 is the Shannon limit; use the Shannon entropy instead"
        )));
    }
    Ok(())
}

/// A point of the probability simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    pub fn new(p: Vec<f64>) -> Result<ProbVector> {
        if p.is_empty() {
            return Err(Error::EmptyInput("probability vector".into()));
        }
        if p.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::Domain("probabilities must be finite and non-negative".into()));
        }
        let s: f64 = p.iter().sum();
        if (s - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::Domain(format!("probabilities sum to {s}, not 1")));
        }
        Ok(ProbVector(p))
    }

    pub fn uniform(n: usize) -> ProbVector {
        ProbVector(vec![1.0 / n as f64; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

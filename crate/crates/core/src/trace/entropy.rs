use serde::{Deserialize, Serialize};

use super::matrix::{DensityMatrix, SymMatrix};
use crate::semiring::Entropy;
use crate::{Error, Result};

/// Eigenvalues below this are clamped before taking logarithms or negative powers.
pub const LOG_FLOOR: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum QuantumEntropy {
    VonNeumann,
    Renyi { q: f64 },
    Tsallis { alpha: f64 },
    /// `Tr ρ (log ρ - log σ)`.
    Relative,
    /// `Tr ρ log(ρ^{1/2} σ^{-1} ρ^{1/2})`.
    BelavkinStaszewski,
    /// `4/(1-α²) Tr((I - σ^{(α+1)/2} ρ^{(α-1)/2}) ρ)`.
    Umegaki { alpha: f64 },
}

impl QuantumEntropy {
    /// Relative kinds need a reference state.
    pub fn needs_reference(&self) -> bool {
        matches!(
            self,
            QuantumEntropy::Relative | QuantumEntropy::BelavkinStaszewski | QuantumEntropy::Umegaki { .. }
        )
    }

    pub fn validated(self) -> Result<QuantumEntropy> {
        match self {
            QuantumEntropy::Renyi { q } => {
                Entropy::renyi(q)?;
            }
            QuantumEntropy::Tsallis { alpha } => {
                Entropy::tsallis(alpha)?;
            }
            QuantumEntropy::Umegaki { alpha } if !alpha.is_finite() || alpha.abs() == 1.0 => {
                return Err(Error::InvalidParameter(format!("Umegaki index must avoid ±1, got {alpha}")));
            }
            _ => {}
        }
        Ok(self)
    }

    /// Classical counterpart on commuting states, where one exists.
    pub fn classical(&self) -> Option<Entropy> {
        match *self {
            QuantumEntropy::VonNeumann => Some(Entropy::Shannon),
            QuantumEntropy::Renyi { q } => Some(Entropy::Renyi { q }),
            QuantumEntropy::Tsallis { alpha } => Some(Entropy::Tsallis { alpha }),
            _ => None,
        }
    }
}

fn clamped_log(x: f64) -> f64 {
    x.max(LOG_FLOOR).ln()
}

fn clamped_pow(x: f64, e: f64) -> f64 {
    if e >= 0.0 {
        x.max(0.0).powf(e)
    } else {
        x.max(LOG_FLOOR).powf(e)
    }
}

fn reference<'a>(kind: &QuantumEntropy, sigma: Option<&'a DensityMatrix>, rho: &DensityMatrix) -> Result<&'a DensityMatrix> {
    let s = sigma.ok_or_else(|| Error::InvalidParameter(format!("{kind:?} needs a reference state")))?;
    if s.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", rho.dim(), s.dim())));
    }
    Ok(s)
}

/// Evaluates a quantum entropy functional by spectral functional calculus.
pub fn quantum_entropy_eval(kind: QuantumEntropy, rho: &DensityMatrix, sigma: Option<&DensityMatrix>) -> Result<f64> {
    let kind = kind.validated()?;
    if let Some(classical) = kind.classical() {
        let p: Vec<f64> = rho.as_sym().eigenvalues().into_iter().map(|l| l.max(0.0)).collect();
        return Ok(classical.eval(&p));
    }
    let sigma = reference(&kind, sigma, rho)?;
    let r = rho.as_sym();
    let s = sigma.as_sym();
    match kind {
        QuantumEntropy::Relative => {
            let neg_vn: f64 = r.eigenvalues().into_iter().filter(|l| *l > 0.0).map(|l| l * clamped_log(l)).sum();
            let log_s = s.map_spectrum(clamped_log);
            Ok(neg_vn - r.trace_product(&log_s)?)
        }
        QuantumEntropy::BelavkinStaszewski => {
            if s.min_eigenvalue() <= LOG_FLOOR {
                return Err(Error::Singular("reference state must be invertible".into()));
            }
            let half = r.map_spectrum(|l| l.max(0.0).sqrt());
            let inv = s.map_spectrum(|l| 1.0 / l);
            let m = SymMatrix::symmetrized(half.matrix() * inv.matrix() * half.matrix());
            Ok(r.trace_product(&m.map_spectrum(clamped_log))?)
        }
        QuantumEntropy::Umegaki { alpha } => {
            let sa = s.map_spectrum(|l| clamped_pow(l, (alpha + 1.0) / 2.0));
            let rb = r.map_spectrum(|l| clamped_pow(l, (alpha - 1.0) / 2.0) * l.max(0.0));
            Ok(4.0 / (1.0 - alpha * alpha) * (r.trace() - sa.trace_product(&rb)?))
        }
        _ => unreachable!("classical kinds handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn von_neumann_maximally_mixed() {
        let v = quantum_entropy_eval(QuantumEntropy::VonNeumann, &DensityMatrix::maximally_mixed(2), None).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn renyi_two_diagonal() {
        let rho = DensityMatrix::diagonal(&[0.25, 0.75]).unwrap();
        let v = quantum_entropy_eval(QuantumEntropy::Renyi { q: 2.0 }, &rho, None).unwrap();
        assert!((v + (10.0f64 / 16.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn relative_entropy_of_equal_states_is_zero() {
        let rho = DensityMatrix::new(SymMatrix::from_rows(&[vec![0.6, 0.1], vec![0.1, 0.4]]).unwrap()).unwrap();
        let v = quantum_entropy_eval(QuantumEntropy::Relative, &rho, Some(&rho)).unwrap();
        assert!(v.abs() < 1e-12);
        let bs = quantum_entropy_eval(QuantumEntropy::BelavkinStaszewski, &rho, Some(&rho)).unwrap();
        assert!(bs.abs() < 1e-12);
    }

    #[test]
    fn relative_entropy_diagonal_is_kullback_leibler() {
        let rho = DensityMatrix::diagonal(&[0.2, 0.8]).unwrap();
        let sig = DensityMatrix::diagonal(&[0.5, 0.5]).unwrap();
        let kl = 0.2 * (0.2f64 / 0.5).ln() + 0.8 * (0.8f64 / 0.5).ln();
        let v = quantum_entropy_eval(QuantumEntropy::Relative, &rho, Some(&sig)).unwrap();
        assert!((v - kl).abs() < 1e-12);
        let bs = quantum_entropy_eval(QuantumEntropy::BelavkinStaszewski, &rho, Some(&sig)).unwrap();
        assert!((bs - kl).abs() < 1e-12);
    }

    #[test]
    fn umegaki_diagonal_closed_form() {
        let (p, s, a) = ([0.3, 0.7], [0.6, 0.4], 0.5);
        let rho = DensityMatrix::diagonal(&p).unwrap();
        let sig = DensityMatrix::diagonal(&s).unwrap();
        let direct: f64 = (0..2)
            .map(|i| (1.0 - s[i].powf((a + 1.0) / 2.0) * p[i].powf((a - 1.0) / 2.0)) * p[i])
            .sum();
        let v = quantum_entropy_eval(QuantumEntropy::Umegaki { alpha: a }, &rho, Some(&sig)).unwrap();
        assert!((v - 4.0 / (1.0 - a * a) * direct).abs() < 1e-12);
    }

    #[test]
    fn reference_required_and_checked() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(quantum_entropy_eval(QuantumEntropy::Relative, &rho, None).is_err());
        let sing = DensityMatrix::diagonal(&[1.0, 0.0]).unwrap();
        assert!(matches!(
            quantum_entropy_eval(QuantumEntropy::BelavkinStaszewski, &rho, Some(&sing)),
            Err(Error::Singular(_))
        ));
        assert!(quantum_entropy_eval(QuantumEntropy::Umegaki { alpha: 1.0 }, &rho, Some(&rho)).is_err());
    }
}

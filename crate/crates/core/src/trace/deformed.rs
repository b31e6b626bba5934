use serde::Serialize;

use super::entropy::{quantum_entropy_eval, QuantumEntropy, LOG_FLOOR};
use super::matrix::{DensityMatrix, SymMatrix};
use crate::semiring::{simplex_min, thermo_add_n_detailed, Beta, ExtReal, Resolution};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeformedTrace {
    pub value: f64,
    /// `true` when the minimum was taken only over states commuting with the input.
    pub restricted: bool,
    pub resolution: Resolution,
}

/// `log Tr e^{-βX}`, shifted by the smallest eigenvalue.
pub fn log_partition(x: &SymMatrix, beta: f64) -> f64 {
    let ev = x.eigenvalues();
    let lmin = ev[0];
    -beta * lmin + ev.iter().map(|l| (-beta * (l - lmin)).exp()).sum::<f64>().ln()
}

/// Entropy-deformed trace `min_ρ { Tr(ρA) - β⁻¹ S(ρ) }`.
///
/// The von Neumann case uses the closed form `-β⁻¹ log Tr e^{-βA}` and requires
/// `A ⪰ 0`. Other entropies minimize over density matrices diagonal in an
/// eigenbasis of `A`, and the result is flagged as restricted.
pub fn deformed_trace(
    a: &SymMatrix,
    beta: Beta,
    kind: QuantumEntropy,
    sigma: Option<&DensityMatrix>,
) -> Result<DeformedTrace> {
    let kind = kind.validated()?;
    if beta.is_infinite() {
        return Ok(DeformedTrace { value: a.min_eigenvalue(), restricted: false, resolution: Resolution::Tropical });
    }
    let b = beta.value();
    match kind {
        QuantumEntropy::VonNeumann => {
            if !a.is_psd() {
                return Err(Error::NotPositiveSemidefinite(a.min_eigenvalue()));
            }
            Ok(DeformedTrace { value: -log_partition(a, b) / b, restricted: false, resolution: Resolution::ClosedForm })
        }
        QuantumEntropy::Renyi { .. } | QuantumEntropy::Tsallis { .. } => {
            let xs: Vec<ExtReal> = a.eigenvalues().into_iter().map(ExtReal::min_plus).collect();
            let s = thermo_add_n_detailed(&xs, beta, &kind.classical().expect("classical kind"))?;
            Ok(DeformedTrace { value: s.value.value(), restricted: true, resolution: s.resolution })
        }
        _ => {
            let sigma = sigma.ok_or_else(|| Error::InvalidParameter(format!("{kind:?} needs a reference state")))?;
            let sp = a.spectrum();
            let f = |p: &[f64]| {
                let rho = DensityMatrix::new(sp.with_values(p));
                let energy: f64 = p.iter().zip(&sp.values).map(|(pi, l)| pi * l).sum();
                match rho.and_then(|r| quantum_entropy_eval(kind, &r, Some(sigma))) {
                    Ok(s) => energy - s / b,
                    Err(_) => f64::INFINITY,
                }
            };
            let (value, resolution) = simplex_min(a.dim(), &f, None);
            Ok(DeformedTrace { value, restricted: true, resolution })
        }
    }
}

/// Both sides of the free-energy identity
/// `Tr(ρA) - β⁻¹ N(ρ) = β⁻¹ S(ρ ‖ σ_{β,A}) - β⁻¹ log Z`,
/// with `σ_{β,A}` the Gibbs state and `Z = Tr e^{-βA}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FreeEnergy {
    pub lhs: f64,
    pub rhs: f64,
    pub energy: f64,
    pub entropy: f64,
    pub relative_entropy: f64,
    pub log_partition: f64,
}

pub fn free_energy_decompose(a: &SymMatrix, rho: &DensityMatrix, beta: Beta) -> Result<FreeEnergy> {
    if beta.is_infinite() {
        return Err(Error::InvalidBeta("free-energy decomposition needs finite β".into()));
    }
    if a.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", a.dim(), rho.dim())));
    }
    if rho.as_sym().min_eigenvalue() <= LOG_FLOOR {
        return Err(Error::Singular("state has a vanishing eigenvalue".into()));
    }
    let b = beta.value();
    let energy = rho.as_sym().trace_product(a)?;
    let entropy = quantum_entropy_eval(QuantumEntropy::VonNeumann, rho, None)?;
    let log_partition = log_partition(a, b);
    // log σ = −βA − log Z from the spectrum of A; the Gibbs state itself can
    // have eigenvalues far below the logarithm floor.
    let log_gibbs = a.map_spectrum(|l| -b * l - log_partition);
    let relative_entropy = -entropy - rho.as_sym().trace_product(&log_gibbs)?;
    Ok(FreeEnergy {
        lhs: energy - entropy / b,
        rhs: relative_entropy / b - log_partition / b,
        energy,
        entropy,
        relative_entropy,
        log_partition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{thermo_add_n, Entropy};

    fn b(x: f64) -> Beta {
        Beta::new(x).unwrap()
    }

    #[test]
    fn identity_two_by_two() {
        let t = deformed_trace(&SymMatrix::identity(2), b(1.0), QuantumEntropy::VonNeumann, None).unwrap();
        assert!((t.value - (1.0 - 2f64.ln())).abs() < 1e-12);
        assert!(!t.restricted);
    }

    #[test]
    fn zero_temperature_is_smallest_eigenvalue() {
        let a = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let t = deformed_trace(&a, Beta::INFINITY, QuantumEntropy::VonNeumann, None).unwrap();
        assert!((t.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_reduces_to_scalar_sum() {
        let xs = [0.5, 1.5, 3.0];
        let a = SymMatrix::diag(&xs);
        let t = deformed_trace(&a, b(0.7), QuantumEntropy::VonNeumann, None).unwrap().value;
        let s: Vec<ExtReal> = xs.iter().map(|&x| ExtReal::min_plus(x)).collect();
        let v = thermo_add_n(&s, b(0.7), &Entropy::Shannon).unwrap().value();
        assert!((t - v).abs() < 1e-12);
    }

    #[test]
    fn non_psd_rejected_for_closed_form() {
        let a = SymMatrix::diag(&[-1.0, 1.0]);
        assert!(deformed_trace(&a, b(1.0), QuantumEntropy::VonNeumann, None).is_err());
    }

    #[test]
    fn restricted_kinds_flagged() {
        let a = SymMatrix::diag(&[0.0, 1.0]);
        let t = deformed_trace(&a, b(1.0), QuantumEntropy::Tsallis { alpha: 2.0 }, None).unwrap();
        assert!(t.restricted);
        let sig = DensityMatrix::maximally_mixed(2);
        let r = deformed_trace(&a, b(1.0), QuantumEntropy::Relative, Some(&sig)).unwrap();
        assert!(r.restricted && r.value.is_finite());
    }

    #[test]
    fn free_energy_at_gibbs_state() {
        let a = SymMatrix::from_rows(&[vec![1.0, 0.3], vec![0.3, 2.0]]).unwrap();
        let g = DensityMatrix::gibbs(&a, 1.3);
        let fe = free_energy_decompose(&a, &g, b(1.3)).unwrap();
        assert!((fe.lhs - fe.rhs).abs() < 1e-12);
        assert!(fe.relative_entropy.abs() < 1e-12);
        let t = deformed_trace(&a, b(1.3), QuantumEntropy::VonNeumann, None).unwrap().value;
        assert!((fe.lhs - t).abs() < 1e-12);
    }

    #[test]
    fn free_energy_rejects_singular_state() {
        let a = SymMatrix::identity(2);
        let rho = DensityMatrix::diagonal(&[1.0, 0.0]).unwrap();
        assert!(matches!(free_energy_decompose(&a, &rho, b(1.0)), Err(Error::Singular(_))));
    }
}

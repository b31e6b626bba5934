use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::element::{Element, Shape};
use super::operator::{Domain, RotaBaxter};
use crate::semiring::Mode;
use crate::Result;

/// Outcome of sampling the Rota-Baxter identity of an operator.
#[derive(Clone, Debug, Serialize)]
pub struct RbCertificate {
    pub operator: String,
    pub weight: f64,
    pub samples: usize,
    pub max_residual: f64,
    /// Monotonicity `f ≤ g ⇒ T f ≤ T g` held on every sampled pair.
    pub monotone: bool,
}

/// Random element of an operator's domain. Coefficients are uniform in
/// `[-3, 3]`, and about one in ten is the additive identity.
pub fn sample_element(domain: Domain, mode: Mode, rng: &mut impl Rng) -> Element {
    let coeffs = (0..domain.len)
        .map(|j| {
            let pinned = domain.shape == Shape::Series && j == 0 && !domain.constant_mode;
            if pinned || (domain.len > 1 && rng.gen_bool(0.1)) {
                mode.zero()
            } else {
                rng.gen_range(-3.0..3.0)
            }
        })
        .collect();
    Element::new(domain.shape, mode, coeffs).expect("sampled coefficients are valid")
}

/// Distance between the two sides of the operator's Rota-Baxter identity.
pub fn rb_residual(op: &dyn RotaBaxter, f1: &Element, f2: &Element) -> Result<f64> {
    let beta = op.beta();
    let lam = op.weight();
    let t1 = op.apply(f1)?;
    let t2 = op.apply(f2)?;
    let prod = t1.odot(&t2, beta)?;
    let a = op.apply(&t1.odot(f2, beta)?)?;
    let b = op.apply(&f1.odot(&t2, beta)?)?;
    let c = op.apply(&f1.odot(f2, beta)?)?.shift(lam.abs().ln());
    if lam > 0.0 {
        let rhs = Element::sum(&prod, &[(&a, 1.0), (&b, 1.0), (&c, 1.0)], beta)?;
        prod.residual(&rhs)
    } else {
        let lhs = prod.oplus(&c, beta)?;
        let rhs = a.oplus(&b, beta)?;
        lhs.residual(&rhs)
    }
}

/// Samples the identity and monotonicity on `samples` random pairs.
pub fn certify_rb(op: &dyn RotaBaxter, samples: usize, seed: u64) -> Result<RbCertificate> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_residual: f64 = 0.0;
    let mut monotone = true;
    for _ in 0..samples {
        let f1 = sample_element(op.domain(), op.mode(), &mut rng);
        let f2 = sample_element(op.domain(), op.mode(), &mut rng);
        max_residual = max_residual.max(rb_residual(op, &f1, &f2)?);
        let lo = f1.oplus(&f2, crate::semiring::Beta::INFINITY)?;
        if !op.apply(&lo)?.le(&op.apply(&f1)?)? {
            monotone = false;
        }
    }
    Ok(RbCertificate { operator: op.name(), weight: op.weight(), samples, max_residual, monotone })
}

/// First sampled pair violating `T(f₁⊙f₂) ≥ T(f₁)⊙T(f₂)` (semiring order
/// reversed, i.e. `T(f₁⊙f₂)` is never better than the product).
pub fn superadditivity_counterexample(op: &dyn RotaBaxter, samples: usize, seed: u64) -> Result<Option<(Element, Element)>> {
    additivity_counterexample(op, samples, seed, true)
}

/// First sampled pair violating `T(f₁⊙f₂) ≤ T(f₁)⊙T(f₂)`.
pub fn subadditivity_counterexample(op: &dyn RotaBaxter, samples: usize, seed: u64) -> Result<Option<(Element, Element)>> {
    additivity_counterexample(op, samples, seed, false)
}

fn additivity_counterexample(
    op: &dyn RotaBaxter,
    samples: usize,
    seed: u64,
    sup: bool,
) -> Result<Option<(Element, Element)>> {
    let beta = op.beta();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let f1 = sample_element(op.domain(), op.mode(), &mut rng);
        let f2 = sample_element(op.domain(), op.mode(), &mut rng);
        let joint = op.apply(&f1.odot(&f2, beta)?)?;
        let split = op.apply(&f1)?.odot(&op.apply(&f2)?, beta)?;
        let ok = if sup { split.le(&joint)? } else { joint.le(&split)? };
        if !ok {
            return Ok(Some((f1, f2)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::super::operator::*;
    use super::*;
    use crate::semiring::Beta;

    #[test]
    fn partial_sum_exact_at_zero_temperature() {
        let c = certify_rb(&PartialSum::new(Beta::INFINITY, 6), 200, 1).unwrap();
        assert_eq!(c.max_residual, 0.0);
        assert!(c.monotone);
    }

    #[test]
    fn partial_sum_finite_beta() {
        let c = certify_rb(&PartialSum::new(Beta::new(1.3).unwrap(), 6), 200, 2).unwrap();
        assert!(c.max_residual < 1e-9, "{}", c.max_residual);
    }

    #[test]
    fn q_integral_finite_beta() {
        let op = QIntegral::new(0.4, Beta::new(0.8).unwrap(), 6).unwrap();
        let c = certify_rb(&op, 200, 3).unwrap();
        assert!(c.max_residual < 1e-9, "{}", c.max_residual);
    }

    #[test]
    fn projection_exact() {
        let op = Projection::new(vec![true, false, true, true, false], Beta::INFINITY);
        assert_eq!(certify_rb(&op, 200, 4).unwrap().max_residual, 0.0);
        let op = Projection::new(vec![true, false, true], Beta::new(2.0).unwrap());
        assert!(certify_rb(&op, 200, 4).unwrap().max_residual < 1e-12);
        assert!(superadditivity_counterexample(&op, 200, 5).unwrap().is_none());
    }

    #[test]
    fn characteristic_multiplier_exact() {
        let op = CharacteristicMultiplier::new(vec![true, false, false, true]);
        assert_eq!(certify_rb(&op, 200, 6).unwrap().max_residual, 0.0);
    }

    #[test]
    fn a_plain_shift_is_not_rota_baxter() {
        let d = Domain { shape: Shape::Sequence, len: 3, constant_mode: true };
        let op = FnOperator::new("shift", 1.0, AdditivityClass::OplusAdditive, Beta::INFINITY, d, |f| Ok(f.shift(1.0)));
        assert!(certify_rb(&op, 50, 7).unwrap().max_residual > 0.5);
    }

    #[test]
    fn superadditivity_violation_found() {
        let d = Domain { shape: Shape::Sequence, len: 2, constant_mode: true };
        let op = FnOperator::new("clip", -1.0, AdditivityClass::Superadditive, Beta::INFINITY, d, |f| {
            let c = f.coeffs().iter().map(|x| x.max(0.0)).collect();
            Ok(Element::sequence(c))
        });
        assert!(superadditivity_counterexample(&op, 200, 8).unwrap().is_some());
    }
}

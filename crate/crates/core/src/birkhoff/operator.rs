use std::sync::Arc;

use serde::Serialize;

use super::element::{Element, Shape};
use crate::semiring::{lse_min, Beta, Mode};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdditivityClass {
    /// `T(f₁ ⊕ f₂) = T(f₁) ⊕ T(f₂)`.
    OplusAdditive,
    /// Linear in the semiring sense and idempotent.
    LinearIdempotent,
    /// `T(f₁ ⊙ f₂) ≥ T(f₁) ⊙ T(f₂)` in the semiring order.
    Superadditive,
}

/// Inputs an operator accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Domain {
    pub shape: Shape,
    pub len: usize,
    /// Whether series inputs may carry a finite constant coefficient.
    pub constant_mode: bool,
}

/// A Rota-Baxter operator on a thermodynamic semiring.
///
/// Weight `λ > 0`: `T(f₁)⊙T(f₂) = T(T(f₁)⊙f₂) ⊕ T(f₁⊙T(f₂)) ⊕ T(f₁⊙f₂)⊙log λ`.
/// Weight `λ < 0`: `T(f₁)⊙T(f₂) ⊕ T(f₁⊙f₂)⊙log(-λ) = T(T(f₁)⊙f₂) ⊕ T(f₁⊙T(f₂))`.
/// Sums are the β-deformed ones at finite β.
pub trait RotaBaxter: Send + Sync {
    fn name(&self) -> String;
    fn weight(&self) -> f64;
    fn class(&self) -> AdditivityClass;
    fn beta(&self) -> Beta;
    fn mode(&self) -> Mode {
        Mode::MinPlus
    }
    fn domain(&self) -> Domain;
    fn apply(&self, f: &Element) -> Result<Element>;

    /// The classical linear operator this one is conjugate to under
    /// `φ = e^{-βψ}`, acting on exponential-picture coefficients.
    fn shadow(&self, _phi: &[f64]) -> Option<Vec<f64>> {
        None
    }

    /// Most exponential-picture terms one output coefficient adds up, when
    /// each enters with coefficient 1. Bounds the gap to the β = ∞ value.
    fn fan_in(&self) -> Option<f64> {
        None
    }
}

fn check_input(op: &dyn RotaBaxter, f: &Element) -> Result<()> {
    let d = op.domain();
    if f.shape() != d.shape || f.len() != d.len {
        return Err(Error::ShapeMismatch(format!(
            "{} acts on {:?}[{}], got {:?}[{}]",
            op.name(),
            d.shape,
            d.len,
            f.shape(),
            f.len()
        )));
    }
    if f.mode() != op.mode() {
        return Err(Error::ModeMismatch);
    }
    Ok(())
}

/// `(Tf)(1) = ∞`, `(Tf)(n) = ⊕_{k<n} f(k)`. Weight +1.
#[derive(Clone, Debug)]
pub struct PartialSum {
    beta: Beta,
    len: usize,
    mode: Mode,
}

impl PartialSum {
    pub fn new(beta: Beta, len: usize) -> PartialSum {
        PartialSum { beta, len, mode: Mode::MinPlus }
    }

    pub fn with_mode(mut self, mode: Mode) -> PartialSum {
        self.mode = mode;
        self
    }
}

impl RotaBaxter for PartialSum {
    fn name(&self) -> String {
        format!("partial-sum(β={})", self.beta)
    }
    fn weight(&self) -> f64 {
        1.0
    }
    fn class(&self) -> AdditivityClass {
        AdditivityClass::OplusAdditive
    }
    fn beta(&self) -> Beta {
        self.beta
    }
    fn mode(&self) -> Mode {
        self.mode
    }
    fn domain(&self) -> Domain {
        Domain { shape: Shape::Sequence, len: self.len, constant_mode: true }
    }

    fn apply(&self, f: &Element) -> Result<Element> {
        check_input(self, f)?;
        let s = self.mode.sign();
        let mut out = f.zero_like();
        let mut acc: Vec<f64> = Vec::with_capacity(f.len());
        for (n, x) in f.coeffs().iter().enumerate() {
            out.coeffs_mut()[n] = s * lse_min(acc.iter().copied(), self.beta);
            acc.push(s * x);
        }
        Ok(out)
    }

    fn shadow(&self, phi: &[f64]) -> Option<Vec<f64>> {
        let mut run = 0.0;
        Some(
            phi.iter()
                .map(|x| {
                    let v = run;
                    run += x;
                    v
                })
                .collect(),
        )
    }

    fn fan_in(&self) -> Option<f64> {
        Some(self.len.saturating_sub(1).max(1) as f64)
    }
}

/// Thermodynamic q-integral on series:
/// `(Tγ)(t) = ⊕_{k=1..K} γ(q^k t)` through the exponential picture, so that the
/// monomial `tʲ` is scaled by `Σ_k q^{kj}` (`qʲ/(1-qʲ)` when `K = ∞`). Weight +1.
///
/// Requires `0 < q < 1`. With `K = ∞` the constant coefficient must be the
/// additive identity; a truncated sum accepts it and scales it by `K`.
#[derive(Clone, Debug)]
pub struct QIntegral {
    q: f64,
    beta: Beta,
    len: usize,
    terms: Option<usize>,
}

impl QIntegral {
    /// Closed-form operator on series with coefficients `t⁰ … t^{len-1}`.
    pub fn new(q: f64, beta: Beta, len: usize) -> Result<QIntegral> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidParameter(format!("q must lie in (0, 1), got {q}")));
        }
        Ok(QIntegral { q, beta, len, terms: None })
    }

    /// Sum truncated at `k` terms. Fails when the dropped tail, measured in the
    /// semiring, exceeds `tol` on some non-constant coefficient.
    pub fn truncated(q: f64, beta: Beta, len: usize, k: usize, tol: f64) -> Result<QIntegral> {
        let mut op = QIntegral::new(q, beta, len)?;
        if k == 0 {
            return Err(Error::InvalidParameter("at least one term is needed".into()));
        }
        op.terms = Some(k);
        let bound = op.tail_bound();
        if bound > tol {
            return Err(Error::Domain(format!(
                "K = {k} terms leave a tail of {bound:e} > {tol:e}; increase K"
            )));
        }
        Ok(op)
    }

    /// `-β⁻¹ log(1 - q^K)`, the worst semiring-side error of truncation.
    pub fn tail_bound(&self) -> f64 {
        match self.terms {
            None => 0.0,
            Some(k) => -(1.0 - self.q.powi(k as i32)).ln() * self.beta.inv(),
        }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Exponential-picture multiplier of `tʲ`.
    pub fn scale(&self, j: usize) -> f64 {
        let qj = self.q.powi(j as i32);
        match self.terms {
            None => qj / (1.0 - qj),
            Some(k) => (1..=k).map(|i| qj.powi(i as i32)).sum(),
        }
    }
}

impl RotaBaxter for QIntegral {
    fn name(&self) -> String {
        match self.terms {
            None => format!("q-integral(q={}, β={})", self.q, self.beta),
            Some(k) => format!("q-integral(q={}, β={}, K={k})", self.q, self.beta),
        }
    }
    fn weight(&self) -> f64 {
        1.0
    }
    fn class(&self) -> AdditivityClass {
        AdditivityClass::OplusAdditive
    }
    fn beta(&self) -> Beta {
        self.beta
    }
    fn domain(&self) -> Domain {
        Domain { shape: Shape::Series, len: self.len, constant_mode: self.terms.is_some() }
    }

    fn apply(&self, f: &Element) -> Result<Element> {
        check_input(self, f)?;
        let c0 = f.coeffs()[0];
        if self.terms.is_none() && c0 != f64::INFINITY {
            return Err(Error::Domain(
                "the q-integral diverges on a finite constant coefficient; use a truncated operator".into(),
            ));
        }
        let mut out = f.clone();
        let inv = self.beta.inv();
        for (j, c) in out.coeffs_mut().iter_mut().enumerate() {
            if *c == f64::INFINITY {
                continue;
            }
            let scale = if j == 0 { self.terms.unwrap_or(1) as f64 } else { self.scale(j) };
            *c -= inv * scale.ln();
        }
        Ok(out)
    }

    fn shadow(&self, phi: &[f64]) -> Option<Vec<f64>> {
        Some(
            phi.iter()
                .enumerate()
                .map(|(j, x)| if j == 0 { x * self.terms.unwrap_or(0) as f64 } else { x * self.scale(j) })
                .collect(),
        )
    }
}

/// Projection onto the coordinates where `mask` holds; the others become the
/// additive identity. Weight −1, linear and idempotent, any β.
#[derive(Clone, Debug)]
pub struct Projection {
    mask: Vec<bool>,
    beta: Beta,
    shape: Shape,
}

impl Projection {
    pub fn new(mask: Vec<bool>, beta: Beta) -> Projection {
        Projection { mask, beta, shape: Shape::Sequence }
    }

    pub fn on_series(mut self) -> Projection {
        self.shape = Shape::Series;
        self
    }
}

impl RotaBaxter for Projection {
    fn name(&self) -> String {
        format!("projection(β={})", self.beta)
    }
    fn weight(&self) -> f64 {
        -1.0
    }
    fn class(&self) -> AdditivityClass {
        AdditivityClass::LinearIdempotent
    }
    fn beta(&self) -> Beta {
        self.beta
    }
    fn domain(&self) -> Domain {
        Domain { shape: self.shape, len: self.mask.len(), constant_mode: true }
    }

    fn apply(&self, f: &Element) -> Result<Element> {
        check_input(self, f)?;
        let mut out = f.clone();
        let zero = f.mode().zero();
        for (c, keep) in out.coeffs_mut().iter_mut().zip(&self.mask) {
            if !keep {
                *c = zero;
            }
        }
        Ok(out)
    }

    fn shadow(&self, phi: &[f64]) -> Option<Vec<f64>> {
        Some(phi.iter().zip(&self.mask).map(|(x, k)| if *k { *x } else { 0.0 }).collect())
    }

    fn fan_in(&self) -> Option<f64> {
        Some(1.0)
    }
}

/// Multiplication by a characteristic function in the ordinary sense: masked-out
/// coordinates become `0`, the multiplicative unit. Weight −1 at β = ∞.
#[derive(Clone, Debug)]
pub struct CharacteristicMultiplier {
    mask: Vec<bool>,
}

impl CharacteristicMultiplier {
    pub fn new(mask: Vec<bool>) -> CharacteristicMultiplier {
        CharacteristicMultiplier { mask }
    }
}

impl RotaBaxter for CharacteristicMultiplier {
    fn name(&self) -> String {
        "characteristic-multiplier".into()
    }
    fn weight(&self) -> f64 {
        -1.0
    }
    fn class(&self) -> AdditivityClass {
        AdditivityClass::LinearIdempotent
    }
    fn beta(&self) -> Beta {
        Beta::INFINITY
    }
    fn domain(&self) -> Domain {
        Domain { shape: Shape::Sequence, len: self.mask.len(), constant_mode: true }
    }

    fn apply(&self, f: &Element) -> Result<Element> {
        check_input(self, f)?;
        let mut out = f.clone();
        for (c, keep) in out.coeffs_mut().iter_mut().zip(&self.mask) {
            if !keep {
                *c = 0.0;
            }
        }
        Ok(out)
    }
}

/// The identity map, a weight −1 operator in either mode.
#[derive(Clone, Debug)]
pub struct Identity {
    domain: Domain,
    mode: Mode,
    beta: Beta,
}

impl Identity {
    pub fn new(shape: Shape, len: usize, mode: Mode, beta: Beta) -> Identity {
        Identity { domain: Domain { shape, len, constant_mode: true }, mode, beta }
    }
}

impl RotaBaxter for Identity {
    fn name(&self) -> String {
        "identity".into()
    }
    fn weight(&self) -> f64 {
        -1.0
    }
    fn class(&self) -> AdditivityClass {
        AdditivityClass::Superadditive
    }
    fn beta(&self) -> Beta {
        self.beta
    }
    fn mode(&self) -> Mode {
        self.mode
    }
    fn domain(&self) -> Domain {
        self.domain
    }
    fn apply(&self, f: &Element) -> Result<Element> {
        check_input(self, f)?;
        Ok(f.clone())
    }
    fn shadow(&self, phi: &[f64]) -> Option<Vec<f64>> {
        Some(phi.to_vec())
    }

    fn fan_in(&self) -> Option<f64> {
        Some(1.0)
    }
}

type ApplyFn = dyn Fn(&Element) -> Result<Element> + Send + Sync;

/// Operator given by a closure, for experiments and counterexamples.
#[derive(Clone)]
pub struct FnOperator {
    name: String,
    weight: f64,
    class: AdditivityClass,
    beta: Beta,
    mode: Mode,
    domain: Domain,
    f: Arc<ApplyFn>,
}

impl FnOperator {
    pub fn new(
        name: impl Into<String>,
        weight: f64,
        class: AdditivityClass,
        beta: Beta,
        domain: Domain,
        f: impl Fn(&Element) -> Result<Element> + Send + Sync + 'static,
    ) -> FnOperator {
        FnOperator { name: name.into(), weight, class, beta, mode: Mode::MinPlus, domain, f: Arc::new(f) }
    }

    pub fn with_mode(mut self, mode: Mode) -> FnOperator {
        self.mode = mode;
        self
    }

    /// `T f = f ⊕ r` for a fixed reference `r`.
    pub fn min_with(reference: Element, beta: Beta) -> FnOperator {
        let domain = Domain { shape: reference.shape(), len: reference.len(), constant_mode: true };
        let mode = reference.mode();
        FnOperator::new("min-with-reference", -1.0, AdditivityClass::OplusAdditive, beta, domain, move |f| {
            f.oplus(&reference, beta)
        })
        .with_mode(mode)
    }

    /// `T f = r` for a fixed `r`.
    pub fn constant(reference: Element, beta: Beta) -> FnOperator {
        let domain = Domain { shape: reference.shape(), len: reference.len(), constant_mode: true };
        let mode = reference.mode();
        FnOperator::new("constant", -1.0, AdditivityClass::OplusAdditive, beta, domain, move |_| {
            Ok(reference.clone())
        })
        .with_mode(mode)
    }
}

impl RotaBaxter for FnOperator {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn weight(&self) -> f64 {
        self.weight
    }
    fn class(&self) -> AdditivityClass {
        self.class
    }
    fn beta(&self) -> Beta {
        self.beta
    }
    fn mode(&self) -> Mode {
        self.mode
    }
    fn domain(&self) -> Domain {
        self.domain
    }
    fn apply(&self, f: &Element) -> Result<Element> {
        check_input(self, f)?;
        (self.f)(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: f64 = f64::INFINITY;

    #[test]
    fn partial_sum_tropical() {
        let t = PartialSum::new(Beta::INFINITY, 3);
        let out = t.apply(&Element::sequence(vec![5.0, 1.0, 4.0])).unwrap();
        assert_eq!(out.coeffs(), &[INF, 5.0, 1.0]);
    }

    #[test]
    fn partial_sum_on_zeros() {
        let t = PartialSum::new(Beta::new(1.0).unwrap(), 4);
        let out = t.apply(&Element::sequence(vec![0.0; 4])).unwrap();
        let expect = [INF, 0.0, -2f64.ln(), -3f64.ln()];
        for (a, b) in out.coeffs().iter().zip(expect) {
            assert!(super::super::element::coord_gap(*a, b) < 1e-14);
        }
    }

    #[test]
    fn projection_masks_to_infinity() {
        let t = Projection::new(vec![false, true, false, true], Beta::INFINITY);
        let out = t.apply(&Element::sequence(vec![1.0, 2.0, 3.0, 4.0])).unwrap();
        assert_eq!(out.coeffs(), &[INF, 2.0, INF, 4.0]);
    }

    #[test]
    fn q_integral_constant_mode() {
        let beta = Beta::new(1.0).unwrap();
        let closed = QIntegral::new(0.5, beta, 3).unwrap();
        assert!(closed.apply(&Element::series(vec![2.0, INF, INF])).is_err());
        let t = QIntegral::truncated(0.5, beta, 3, 60, 1e-12).unwrap();
        let out = t.apply(&Element::series(vec![2.0, INF, INF])).unwrap();
        assert!((out.coeffs()[0] - (2.0 - 60f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn q_integral_monomial_shadow() {
        let beta = Beta::new(2.0).unwrap();
        let t = QIntegral::new(0.5, beta, 4).unwrap();
        let out = t.apply(&Element::series(vec![INF, INF, 0.0, INF])).unwrap();
        // t² ↦ q²t²/(1-q²) in the exponential picture.
        let expect = -(0.25f64 / 0.75).ln() / 2.0;
        assert!((out.coeffs()[2] - expect).abs() < 1e-14);
    }

    #[test]
    fn q_integral_truncation_guard() {
        let beta = Beta::new(1.0).unwrap();
        assert!(QIntegral::truncated(0.5, beta, 3, 3, 1e-9).is_err());
        assert!(QIntegral::new(1.5, beta, 3).is_err());
        assert!(QIntegral::new(-0.5, beta, 3).is_err());
    }

    #[test]
    fn scalar_linearity_of_q_integral() {
        let beta = Beta::new(0.7).unwrap();
        let t = QIntegral::new(0.3, beta, 4).unwrap();
        let g = Element::series(vec![INF, 0.4, -1.0, 2.0]);
        let lhs = t.apply(&g.shift(1.25)).unwrap();
        let rhs = t.apply(&g).unwrap().shift(1.25);
        assert!(lhs.residual(&rhs).unwrap() < 1e-14);
    }

    #[test]
    fn domain_checked() {
        let t = PartialSum::new(Beta::INFINITY, 3);
        assert!(t.apply(&Element::sequence(vec![1.0, 2.0])).is_err());
        assert!(t.apply(&Element::series(vec![1.0, 2.0, 3.0])).is_err());
    }
}

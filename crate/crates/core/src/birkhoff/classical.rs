use std::collections::HashMap;

use serde::Serialize;

use super::element::{coord_gap, Element, Shape};
use super::engine::{EngineConfig, Scheme, Session};
use super::operator::RotaBaxter;
use crate::hopf::{Character, HopfAlgebra};
use crate::semiring::Beta;
use crate::{Error, Result};

/// Ring product of exponential-picture values: pointwise for scalars and
/// sequences, Cauchy product for truncated series.
fn ring_mul(shape: Shape, a: &[f64], b: &[f64]) -> Vec<f64> {
    match shape {
        Shape::Series => (0..a.len()).map(|n| (0..=n).map(|i| a[i] * b[n - i]).sum()).collect(),
        _ => a.iter().zip(b).map(|(x, y)| x * y).collect(),
    }
}

fn ring_unit(shape: Shape, len: usize) -> Vec<f64> {
    match shape {
        Shape::Series => (0..len).map(|j| if j == 0 { 1.0 } else { 0.0 }).collect(),
        _ => vec![1.0; len],
    }
}

fn to_exp(e: &Element, beta: Beta) -> Vec<f64> {
    let s = e.mode().sign();
    e.coeffs().iter().map(|x| (-beta.value() * s * x).exp()).collect()
}

fn from_exp(phi: &[f64], sign: f64, beta: Beta) -> Result<Vec<f64>> {
    phi.iter()
        .map(|&p| {
            if p < 0.0 {
                Err(Error::Domain(format!("negative exponential-picture value {p}")))
            } else if p == 0.0 {
                Ok(sign * f64::INFINITY)
            } else {
                Ok(-sign * p.ln() / beta.value())
            }
        })
        .collect()
}

/// `φ_β(x) = e^{-βψ(x)}`, formed factor by factor and multiplied in the ring.
pub fn ring_value<H: HopfAlgebra>(h: &H, psi: &dyn Character<H::Elem>, x: &H::Elem, beta: Beta) -> Result<Vec<f64>> {
    let unit = psi.unit();
    let mut acc = ring_unit(unit.shape(), unit.len());
    if h.is_unit(x) {
        return Ok(acc);
    }
    if psi.evaluates_whole() {
        return Ok(to_exp(&psi.eval_connected(x)?, beta));
    }
    for c in h.components(x) {
        acc = ring_mul(unit.shape(), &acc, &to_exp(&psi.eval_connected(&c)?, beta));
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassicalEntry<K> {
    pub key: K,
    pub graph: String,
    pub value: Vec<f64>,
    pub prepared: Vec<f64>,
    pub minus: Vec<f64>,
    pub plus: Vec<f64>,
}

/// The classical recursion for a ring-valued character `φ` and a linear operator `𝒯`:
/// weight +1 gives `φ₋ = 𝒯(φ̃)`, `φ₊ = φ₋ + φ̃`; weight −1 gives
/// `φ₋ = −𝒯(φ̃)`, `φ₊ = (1 − 𝒯)(φ̃)`, where `φ̃ = φ + Σ φ₋(x′)φ(x″)`.
pub fn classical_birkhoff_oracle<H: HopfAlgebra>(
    h: &H,
    phi: &dyn Fn(&H::Elem) -> Result<Vec<f64>>,
    shape: Shape,
    op: &dyn Fn(&[f64]) -> Vec<f64>,
    weight: f64,
    graphs: &[H::Elem],
) -> Result<Vec<ClassicalEntry<H::Key>>> {
    if weight != 1.0 && weight != -1.0 {
        return Err(Error::InvalidParameter(format!("weight must be ±1, got {weight}")));
    }
    struct Rec<'a, H: HopfAlgebra> {
        h: &'a H,
        phi: &'a dyn Fn(&H::Elem) -> Result<Vec<f64>>,
        shape: Shape,
        op: &'a dyn Fn(&[f64]) -> Vec<f64>,
        weight: f64,
        memo: HashMap<H::Key, ClassicalEntry<H::Key>>,
        order: Vec<H::Key>,
    }
    impl<H: HopfAlgebra> Rec<'_, H> {
        fn eval(&mut self, x: &H::Elem) -> Result<ClassicalEntry<H::Key>> {
            let key = self.h.key(x);
            if let Some(e) = self.memo.get(&key) {
                return Ok(e.clone());
            }
            let value = (self.phi)(x)?;
            let mut prepared = value.clone();
            let (minus, plus) = if self.h.is_unit(x) {
                (value.clone(), value.clone())
            } else {
                for t in self.h.reduced_coproduct(x)? {
                    let m = self.eval(&t.left)?.minus;
                    let r = (self.phi)(&t.right)?;
                    for (p, v) in prepared.iter_mut().zip(ring_mul(self.shape, &m, &r)) {
                        *p += t.multiplicity as f64 * v;
                    }
                }
                let tp = (self.op)(&prepared);
                let minus: Vec<f64> = tp.iter().map(|v| self.weight * v).collect();
                let plus: Vec<f64> = minus.iter().zip(&prepared).map(|(a, b)| a + b).collect();
                (minus, plus)
            };
            let e = ClassicalEntry { key: key.clone(), graph: self.h.describe(x), value, prepared, minus, plus };
            self.memo.insert(key.clone(), e.clone());
            self.order.push(key);
            Ok(e)
        }
    }
    let mut rec = Rec { h, phi, shape, op, weight, memo: HashMap::new(), order: Vec::new() };
    for g in graphs {
        rec.eval(g)?;
    }
    Ok(rec.order.iter().map(|k| rec.memo[k].clone()).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugationRow {
    pub graph: String,
    pub prepared: f64,
    pub minus: f64,
    pub plus: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpConjugationReport {
    pub beta: Beta,
    pub operator: String,
    pub rows: Vec<ConjugationRow>,
    pub max_residual: f64,
    /// `|T(f ⊙ c) − T(f) ⊙ c|` on one sampled `f`, `c = 0.7`.
    pub linearity_residual: f64,
}

/// Runs the thermodynamic weight +1 factorization and the classical one of
/// `e^{-βψ}` under the operator's shadow, and compares them through `-β⁻¹ log`.
pub fn exp_conjugation_check<H: HopfAlgebra>(
    h: &H,
    psi: &dyn Character<H::Elem>,
    op: &dyn RotaBaxter,
    graphs: &[H::Elem],
    config: EngineConfig,
) -> Result<ExpConjugationReport> {
    let beta = op.beta();
    if beta.is_infinite() {
        return Err(Error::Domain("exponential conjugation needs a finite β".into()));
    }
    if op.shadow(&vec![0.0; op.domain().len]).is_none() {
        return Err(Error::InvalidParameter(format!("{} has no classical shadow", op.name())));
    }
    let seed = config.seed;
    let mut session = Session::new(h, psi, Scheme::WeightOne(op), config)?;
    for g in graphs {
        session.evaluate(g)?;
    }
    let unit = psi.unit();
    let sign = unit.mode().sign();
    let phi = |x: &H::Elem| ring_value(h, psi, x, beta);
    let shadow = |v: &[f64]| op.shadow(v).expect("checked above");
    let classical = classical_birkhoff_oracle(h, &phi, unit.shape(), &shadow, 1.0, graphs)?;
    let gap = |a: &Element, b: &[f64]| -> Result<f64> {
        let b = from_exp(b, sign, beta)?;
        Ok(a.coeffs().iter().zip(&b).map(|(x, y)| coord_gap(*x, *y)).fold(0.0, f64::max))
    };
    let mut rows = Vec::new();
    for c in &classical {
        let e = session
            .get(&c.key)
            .ok_or_else(|| Error::UndefinedComponent(format!("{} missing from the thermodynamic run", c.graph)))?;
        rows.push(ConjugationRow {
            graph: c.graph.clone(),
            prepared: gap(&e.prepared, &c.prepared)?,
            minus: gap(&e.minus, &c.minus)?,
            plus: gap(&e.plus, &c.plus)?,
        });
    }
    let max_residual = rows.iter().map(|r| r.prepared.max(r.minus).max(r.plus)).fold(0.0, f64::max);
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let f = super::certify::sample_element(op.domain(), op.mode(), &mut rng);
    let linearity_residual = op.apply(&f.shift(0.7))?.residual(&op.apply(&f)?.shift(0.7))?;
    Ok(ExpConjugationReport { beta, operator: op.name(), rows, max_residual, linearity_residual })
}

#[cfg(test)]
mod tests {
    use super::super::operator::*;
    use super::*;
    use crate::hopf::{enumerate_graphs, EdgeCountCharacter, FnCharacter, Graph, GraphHopf};

    #[test]
    fn primitive_weight_one() {
        let h = GraphHopf::default();
        let phi = |_: &Graph| Ok(vec![2.0, 3.0, 5.0]);
        let t = PartialSum::new(Beta::INFINITY, 3);
        let shadow = |v: &[f64]| t.shadow(v).unwrap();
        let r = classical_birkhoff_oracle(&h, &phi, Shape::Sequence, &shadow, 1.0, &[Graph::path(1)]).unwrap();
        assert_eq!(r[0].minus, vec![0.0, 2.0, 5.0]);
        assert_eq!(r[0].plus, vec![2.0, 5.0, 10.0]);
    }

    #[test]
    fn projection_weight_minus_one_gives_complement() {
        let h = GraphHopf::default().with_cap(8);
        let phi = |g: &Graph| Ok(vec![g.num_edges() as f64, 1.0, 0.5 * g.num_edges() as f64]);
        let p = Projection::new(vec![true, false, true], Beta::INFINITY);
        let shadow = |v: &[f64]| p.shadow(v).unwrap();
        let r = classical_birkhoff_oracle(&h, &phi, Shape::Sequence, &shadow, -1.0, &[Graph::path(2)]).unwrap();
        for e in &r {
            let comp: Vec<f64> = e.prepared.iter().zip([0.0, 1.0, 0.0]).map(|(a, k)| a * k).collect();
            assert_eq!(e.plus, comp);
        }
    }

    #[test]
    fn conjugation_on_sequences() {
        let h = GraphHopf::default();
        let psi = FnCharacter::new("mixed", Element::sequence(vec![0.0; 4]), |g: &Graph| {
            let m = g.num_edges() as f64;
            let loops = g.edges().iter().filter(|e| e.u == e.v).count() as f64;
            Ok(Element::sequence(vec![m, 0.3 * m + loops, 1.0 - 0.2 * m, 0.7 * m * m]))
        });
        let graphs: Vec<Graph> = enumerate_graphs(3).into_iter().filter(|g| g.num_edges() > 0).collect();
        for b in [0.5, 1.0, 2.0] {
            let t = PartialSum::new(Beta::new(b).unwrap(), 4);
            let r = exp_conjugation_check(&h, &psi, &t, &graphs, EngineConfig::default()).unwrap();
            assert!(r.max_residual < 1e-8, "β = {b}: {}", r.max_residual);
            assert!(r.linearity_residual < 1e-12);
        }
    }

    #[test]
    fn conjugation_on_series_with_q_integral() {
        let h = GraphHopf::default();
        let psi = EdgeCountCharacter::series(0.4, 5);
        let graphs: Vec<Graph> = enumerate_graphs(3).into_iter().filter(|g| g.num_edges() > 0).collect();
        let t = QIntegral::new(0.5, Beta::new(1.0).unwrap(), 5).unwrap();
        let r = exp_conjugation_check(&h, &psi, &t, &graphs, EngineConfig::default()).unwrap();
        assert!(r.max_residual < 1e-8, "{}", r.max_residual);
    }

    #[test]
    fn infinite_beta_rejected() {
        let h = GraphHopf::default();
        let psi = EdgeCountCharacter::sequence(vec![1.0; 2]);
        let t = PartialSum::new(Beta::INFINITY, 2);
        assert!(exp_conjugation_check(&h, &psi, &t, &[Graph::path(1)], EngineConfig::default()).is_err());
    }
}

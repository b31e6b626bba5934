use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Graph, HopfAlgebra};
use crate::birkhoff::{Element, Shape};
use crate::semiring::Beta;
use crate::{Error, Result};

/// A semiring-valued character: multiplicative over the monomial basis,
/// with the unit sent to the semiring's multiplicative identity.
pub trait Character<E>: Send + Sync {
    fn name(&self) -> String;
    /// Value on the unit. Fixes the shape, mode and length of every value.
    fn unit(&self) -> Element;
    fn eval_connected(&self, x: &E) -> Result<Element>;
    /// When set, [`char_eval`] hands whole monomials to `eval_connected`
    /// instead of splitting them into connected factors.
    fn evaluates_whole(&self) -> bool {
        false
    }
}

/// Evaluates a character as the product of its values on connected factors.
pub fn char_eval<H: HopfAlgebra>(h: &H, psi: &dyn Character<H::Elem>, x: &H::Elem, beta: Beta) -> Result<Element> {
    let unit = psi.unit();
    if h.is_unit(x) {
        return Ok(unit);
    }
    if psi.evaluates_whole() {
        let v = psi.eval_connected(x)?;
        unit.compatible(&v)?;
        return Ok(v);
    }
    let mut acc = unit;
    for c in h.components(x) {
        let v = psi.eval_connected(&c)?;
        acc = acc.odot(&v, beta)?;
    }
    Ok(acc)
}

/// `(ψ₁ ⋆ ψ₂)(x)`: the semiring sum over the full coproduct, primitive terms
/// included. At finite β each reduced term is weighted by its multiplicity.
pub fn convolve<H: HopfAlgebra>(
    h: &H,
    psi1: &dyn Character<H::Elem>,
    psi2: &dyn Character<H::Elem>,
    x: &H::Elem,
    beta: Beta,
) -> Result<Element> {
    let u1 = psi1.unit();
    u1.compatible(&psi2.unit())?;
    if h.is_unit(x) {
        return Ok(u1);
    }
    let mut vals = vec![(char_eval(h, psi1, x, beta)?, 1.0), (char_eval(h, psi2, x, beta)?, 1.0)];
    for t in h.reduced_coproduct(x)? {
        let v = char_eval(h, psi1, &t.left, beta)?.odot(&char_eval(h, psi2, &t.right, beta)?, beta)?;
        vals.push((v, t.multiplicity as f64));
    }
    let refs: Vec<(&Element, f64)> = vals.iter().map(|(v, w)| (v, *w)).collect();
    Element::sum(&u1, &refs, beta)
}

/// The counit-like character: the unit on `1` and the additive identity elsewhere.
pub struct TrivialCharacter {
    pub unit: Element,
}

impl<E> Character<E> for TrivialCharacter {
    fn name(&self) -> String {
        "trivial".into()
    }
    fn unit(&self) -> Element {
        self.unit.clone()
    }
    fn eval_connected(&self, _x: &E) -> Result<Element> {
        Ok(self.unit.zero_like())
    }
}

/// A fixed per-edge cost `cᵢ` in each coordinate, times the number of edges.
/// For series the value is the monomial `(c·|E|) t^{|E|}`, which keeps the
/// character multiplicative under the deformed convolution at every β.
#[derive(Clone, Debug)]
pub struct EdgeCountCharacter {
    shape: Shape,
    weights: Vec<f64>,
}

impl EdgeCountCharacter {
    pub fn scalar(c: f64) -> EdgeCountCharacter {
        EdgeCountCharacter { shape: Shape::Scalar, weights: vec![c] }
    }

    pub fn sequence(weights: Vec<f64>) -> EdgeCountCharacter {
        EdgeCountCharacter { shape: Shape::Sequence, weights }
    }

    /// Series truncated after `t^len-1`, cost `c` per edge.
    pub fn series(c: f64, len: usize) -> EdgeCountCharacter {
        EdgeCountCharacter { shape: Shape::Series, weights: vec![c; len] }
    }
}

impl Character<Graph> for EdgeCountCharacter {
    fn name(&self) -> String {
        format!("edge-count({:?})", self.shape)
    }
    fn unit(&self) -> Element {
        Element::one(self.shape, Default::default(), self.weights.len())
    }
    fn eval_connected(&self, g: &Graph) -> Result<Element> {
        let m = g.num_edges();
        let coeffs = match self.shape {
            Shape::Series => (0..self.weights.len())
                .map(|j| if j == m { self.weights[0] * m as f64 } else { f64::INFINITY })
                .collect(),
            _ => self.weights.iter().map(|w| w * m as f64).collect(),
        };
        Element::new(self.shape, Default::default(), coeffs)
    }
}

/// A character given by a closure on connected factors.
type CharacterFn<E> = Arc<dyn Fn(&E) -> Result<Element> + Send + Sync>;

#[derive(Clone)]
pub struct FnCharacter<E> {
    name: String,
    unit: Element,
    f: CharacterFn<E>,
    whole: bool,
}

impl<E> FnCharacter<E> {
    pub fn new(name: &str, unit: Element, f: impl Fn(&E) -> Result<Element> + Send + Sync + 'static) -> FnCharacter<E> {
        FnCharacter { name: name.into(), unit, f: Arc::new(f), whole: false }
    }

    /// The closure receives whole monomials; multiplicativity is then the caller's claim.
    pub fn on_monomials(mut self) -> FnCharacter<E> {
        self.whole = true;
        self
    }
}

impl<E> Character<E> for FnCharacter<E> {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn unit(&self) -> Element {
        self.unit.clone()
    }
    fn eval_connected(&self, x: &E) -> Result<Element> {
        (self.f)(x)
    }
    fn evaluates_whole(&self) -> bool {
        self.whole
    }
}

/// `τ(Γ) = Σ_v f_v + Σ_e f_e` with vertex costs keyed by vertex id and edge
/// costs keyed by edge label. Vertices created by contraction fall back to
/// the default vertex cost.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct InclusionExclusionCharacter {
    #[serde(default)]
    pub vertex_costs: BTreeMap<u32, f64>,
    #[serde(default)]
    pub edge_costs: BTreeMap<u32, f64>,
    #[serde(default)]
    pub default_vertex: Option<f64>,
    #[serde(default)]
    pub default_edge: Option<f64>,
}

impl InclusionExclusionCharacter {
    pub fn uniform(vertex: f64, edge: f64) -> InclusionExclusionCharacter {
        InclusionExclusionCharacter { default_vertex: Some(vertex), default_edge: Some(edge), ..Default::default() }
    }

    fn vertex_cost(&self, v: u32) -> Result<f64> {
        self.vertex_costs
            .get(&v)
            .copied()
            .or(self.default_vertex)
            .ok_or_else(|| Error::MissingLabel(format!("no cost for vertex {v}")))
    }

    fn edge_cost(&self, l: u32) -> Result<f64> {
        self.edge_costs
            .get(&l)
            .copied()
            .or(self.default_edge)
            .ok_or_else(|| Error::MissingLabel(format!("no cost for edge label {l}")))
    }

    /// Cost of every vertex and edge of `g`, isolated vertices included.
    pub fn value(&self, g: &Graph) -> Result<f64> {
        let mut s = 0.0;
        for &v in g.vertices() {
            s += self.vertex_cost(v)?;
        }
        for e in g.edges() {
            s += self.edge_cost(e.label)?;
        }
        Ok(s)
    }
}

impl Character<Graph> for InclusionExclusionCharacter {
    fn name(&self) -> String {
        "inclusion-exclusion".into()
    }
    fn unit(&self) -> Element {
        Element::scalar(0.0)
    }
    fn eval_connected(&self, g: &Graph) -> Result<Element> {
        Ok(Element::scalar(self.value(g)?))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{GraphHopf, Term};
    use super::*;

    const INF: Beta = Beta::INFINITY;

    #[test]
    fn multiplicative_over_disjoint_unions() {
        let h = GraphHopf::default();
        let psi = EdgeCountCharacter::sequence(vec![1.0, 2.5]);
        let a = Graph::cycle(3);
        let b = Graph::banana(2);
        let u = a.disjoint_union(&b);
        let va = char_eval(&h, &psi, &a, INF).unwrap();
        let vb = char_eval(&h, &psi, &b, INF).unwrap();
        assert_eq!(char_eval(&h, &psi, &u, INF).unwrap(), va.odot(&vb, INF).unwrap());
        assert_eq!(char_eval(&h, &psi, &Graph::empty(), INF).unwrap().coeffs(), &[0.0, 0.0]);
        let three = a.disjoint_union(&a).disjoint_union(&a);
        assert_eq!(char_eval(&h, &psi, &three, INF).unwrap().coeffs(), &[9.0, 22.5]);
    }

    #[test]
    fn isolated_vertices_are_units() {
        let h = GraphHopf::default();
        let tau = InclusionExclusionCharacter::uniform(1.0, 0.5);
        let g = Graph::new(vec![0, 1, 2, 7], Graph::path(2).edges().to_vec()).unwrap();
        assert_eq!(char_eval(&h, &tau, &g, INF).unwrap().coeffs(), &[4.0]);
        let t = Graph::cycle(3);
        assert_eq!(char_eval(&h, &tau, &t, INF).unwrap().coeffs(), &[3.0 + 1.5]);
    }

    #[test]
    fn inclusion_exclusion_on_overlap() {
        let tau = InclusionExclusionCharacter {
            vertex_costs: (0..4).map(|v| (v, 0.3 * v as f64 + 1.0)).collect(),
            edge_costs: (0..4).map(|l| (l, 2.0 - 0.1 * l as f64)).collect(),
            ..Default::default()
        };
        // Γ = square 0-1-2-3-0 with labels 0..3; Γ₁ = edges 0,1; Γ₂ = edges 1,2,3; γ = edge 1.
        let square = Graph::cycle(4);
        let e = square.edges().to_vec();
        let g1 = Graph::new(vec![0, 1, 2], vec![e[0], e[1]]).unwrap();
        let g2 = Graph::new(vec![0, 1, 2, 3], vec![e[1], e[2], e[3]]).unwrap();
        let gamma = Graph::new(vec![0, 1, 2], vec![e[1]]).unwrap();
        let lhs = tau.value(&square).unwrap();
        let rhs = tau.value(&g1).unwrap() + tau.value(&g2).unwrap() - tau.value(&gamma).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn missing_label_is_an_error() {
        let tau = InclusionExclusionCharacter { default_vertex: Some(0.0), ..Default::default() };
        assert!(matches!(tau.value(&Graph::path(1)), Err(Error::MissingLabel(_))));
    }

    #[test]
    fn convolution_with_trivial_is_identity() {
        let h = GraphHopf::default();
        let psi = EdgeCountCharacter::sequence(vec![1.0, -0.5, 2.0]);
        let eps = TrivialCharacter { unit: Character::<Graph>::unit(&psi) };
        for beta in [INF, Beta::new(1.5).unwrap()] {
            for g in super::super::enumerate_graphs(3) {
                let a = convolve(&h, &psi, &eps, &g, beta).unwrap();
                let b = char_eval(&h, &psi, &g, beta).unwrap();
                assert!(a.residual(&b).unwrap() < 1e-12, "{g}");
            }
        }
    }

    #[test]
    fn primitive_convolution_is_min() {
        let h = GraphHopf::default();
        let p1 = EdgeCountCharacter::scalar(2.0);
        let p2 = EdgeCountCharacter::scalar(-1.0);
        let v = convolve(&h, &p1, &p2, &Graph::path(1), INF).unwrap();
        assert_eq!(v.coeffs(), &[-1.0]);
    }

    #[test]
    fn triangle_convolution_by_enumeration() {
        let h = GraphHopf::default();
        let psi = EdgeCountCharacter::scalar(1.0);
        let v = convolve(&h, &psi, &psi, &Graph::cycle(3), INF).unwrap();
        // every term has total edge count 3
        assert_eq!(v.coeffs(), &[3.0]);
        let psi = FnCharacter::new("loops-cheap", Element::scalar(0.0), |g: &Graph| {
            let loops = g.edges().iter().filter(|e| e.u == e.v).count() as f64;
            Ok(Element::scalar(g.num_edges() as f64 - 2.0 * loops))
        });
        let v = convolve(&h, &psi, &psi, &Graph::cycle(3), INF).unwrap();
        // path ⊗ loop: 2 + (1 − 2) = 1
        assert_eq!(v.coeffs(), &[1.0]);
        let terms: Vec<Term<Graph>> = h.reduced_coproduct(&Graph::cycle(3)).unwrap();
        assert_eq!(terms.iter().map(|t| t.multiplicity).sum::<usize>(), 6);
    }
}

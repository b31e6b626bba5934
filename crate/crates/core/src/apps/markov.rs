use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::birkhoff::{Element, EngineConfig, FactorizationResult, RotaBaxter, Scheme, Session, Shape};
use crate::hopf::{FnCharacter, Graph, HopfAlgebra, Term};
use crate::semiring::{Beta, Mode};
use crate::{Error, Result};

/// Largest host for which all `2^|V|` induced subgraphs are enumerated.
pub const FAMILY_CAP: usize = 12;

/// Tolerance for the additive potential check.
pub const NN_TOL: f64 = 1e-9;

/// Tolerance for the multiplicative field check `|r₁/r₂ − 1|`.
pub const MARKOV_TOL: f64 = 1e-12;

const MAX_VIOLATIONS: usize = 10;

pub type VertexSet = BTreeSet<u32>;

#[derive(Clone, Debug, Serialize)]
pub struct InducedSubgraph {
    pub vertices: VertexSet,
    pub graph: Graph,
}

fn check_host(host: &Graph) -> Result<()> {
    if host.num_vertices() > FAMILY_CAP {
        return Err(Error::CapExceeded(format!(
            "host has {} vertices; induced families are enumerated up to {FAMILY_CAP}",
            host.num_vertices()
        )));
    }
    Ok(())
}

fn subsets(host: &Graph) -> Vec<VertexSet> {
    let vs = host.vertices();
    (0..1u32 << vs.len())
        .map(|mask| vs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v).collect())
        .collect()
}

/// One induced subgraph per vertex subset, in order of the subset bitmask.
pub fn induced_family(host: &Graph) -> Result<Vec<InducedSubgraph>> {
    check_host(host)?;
    Ok(subsets(host).into_iter().map(|a| InducedSubgraph { graph: host.induced(&a), vertices: a }).collect())
}

type Evaluator = Arc<dyn Fn(&VertexSet) -> Result<Vec<f64>> + Send + Sync>;

/// A sequence-valued function `W` on the induced subgraphs of a host graph.
#[derive(Clone)]
pub struct NearestNeighborPotential {
    pub name: String,
    pub host: Graph,
    pub len: usize,
    eval: Evaluator,
}

impl std::fmt::Debug for NearestNeighborPotential {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NearestNeighborPotential({} on {})", self.name, self.host)
    }
}

/// JSON form of a potential: a host graph plus one of the built-in kinds.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub host: Graph,
    #[serde(flatten)]
    pub kind: PotentialKind,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialKind {
    /// `W(A) = Σ_{v∈A} c_v`.
    VertexCosts {
        /// Vertex id (as a string key) ↦ costs.
        costs: BTreeMap<String, Vec<f64>>,
        #[serde(default)]
        default: Option<Vec<f64>>,
    },
    /// `W(A) = Σ_{v∈A} c_v + Σ_{e ⊆ A} J_e`, with edges keyed by position in the host.
    Pairwise {
        vertex: Vec<f64>,
        /// Edge position (as a string key) ↦ coupling.
        #[serde(default)]
        edges: BTreeMap<String, Vec<f64>>,
        #[serde(default)]
        default_edge: Option<Vec<f64>>,
    },
    /// `W(A) = w · #E(A)²`, which is not nearest-neighbor on paths.
    SquaredEdgeCount { weight: Vec<f64> },
}

fn same_len(vals: &[&Vec<f64>]) -> Result<usize> {
    let len = vals.first().map(|v| v.len()).ok_or_else(|| Error::EmptyInput("no potential values".into()))?;
    if len == 0 || vals.iter().any(|v| v.len() != len) {
        return Err(Error::DimensionMismatch("potential values must share one positive length".into()));
    }
    Ok(len)
}

impl NearestNeighborPotential {
    pub fn new(
        name: &str,
        host: Graph,
        len: usize,
        f: impl Fn(&VertexSet) -> Result<Vec<f64>> + Send + Sync + 'static,
    ) -> NearestNeighborPotential {
        NearestNeighborPotential { name: name.into(), host, len, eval: Arc::new(f) }
    }

    pub fn vertex_costs(host: Graph, costs: BTreeMap<u32, Vec<f64>>, default: Option<Vec<f64>>) -> Result<Self> {
        let mut all: Vec<&Vec<f64>> = costs.values().collect();
        all.extend(default.iter());
        let len = same_len(&all)?;
        let table: BTreeMap<u32, Vec<f64>> = host
            .vertices()
            .iter()
            .map(|v| {
                costs
                    .get(v)
                    .or(default.as_ref())
                    .cloned()
                    .map(|c| (*v, c))
                    .ok_or_else(|| Error::MissingLabel(format!("no cost for vertex {v}")))
            })
            .collect::<Result<_>>()?;
        Ok(NearestNeighborPotential::new("vertex_costs", host, len, move |a| {
            let mut w = vec![0.0; len];
            for v in a {
                for (x, c) in w.iter_mut().zip(&table[v]) {
                    *x += c;
                }
            }
            Ok(w)
        }))
    }

    pub fn pairwise(
        host: Graph,
        vertex: Vec<f64>,
        edges: BTreeMap<usize, Vec<f64>>,
        default_edge: Option<Vec<f64>>,
    ) -> Result<Self> {
        let mut all: Vec<&Vec<f64>> = vec![&vertex];
        all.extend(edges.values());
        all.extend(default_edge.iter());
        let len = same_len(&all)?;
        let ends: Vec<(u32, u32)> = host.edges().iter().map(|e| (e.u, e.v)).collect();
        let couplings: Vec<Vec<f64>> = (0..ends.len())
            .map(|i| {
                edges
                    .get(&i)
                    .or(default_edge.as_ref())
                    .cloned()
                    .ok_or_else(|| Error::MissingLabel(format!("no coupling for edge {i}")))
            })
            .collect::<Result<_>>()?;
        Ok(NearestNeighborPotential::new("pairwise", host, len, move |a| {
            let mut w: Vec<f64> = vertex.iter().map(|c| c * a.len() as f64).collect();
            for ((u, v), j) in ends.iter().zip(&couplings) {
                if a.contains(u) && a.contains(v) {
                    for (x, c) in w.iter_mut().zip(j) {
                        *x += c;
                    }
                }
            }
            Ok(w)
        }))
    }

    pub fn squared_edge_count(host: Graph, weight: Vec<f64>) -> Result<Self> {
        let len = same_len(&[&weight])?;
        let h = host.clone();
        Ok(NearestNeighborPotential::new("squared_edge_count", host, len, move |a| {
            let m = h.induced(a).num_edges() as f64;
            Ok(weight.iter().map(|w| w * m * m).collect())
        }))
    }

    pub fn from_spec(spec: PotentialSpec) -> Result<Self> {
        fn keys<K: std::str::FromStr + Ord>(m: BTreeMap<String, Vec<f64>>) -> Result<BTreeMap<K, Vec<f64>>> {
            m.into_iter()
                .map(|(k, v)| k.trim().parse().map(|k| (k, v)).map_err(|_| Error::Parse(format!("bad key {k:?}"))))
                .collect()
        }
        match spec.kind {
            PotentialKind::VertexCosts { costs, default } => Self::vertex_costs(spec.host, keys(costs)?, default),
            PotentialKind::Pairwise { vertex, edges, default_edge } => {
                Self::pairwise(spec.host, vertex, keys(edges)?, default_edge)
            }
            PotentialKind::SquaredEdgeCount { weight } => Self::squared_edge_count(spec.host, weight),
        }
    }

    pub fn eval(&self, a: &VertexSet) -> Result<Vec<f64>> {
        let w = (self.eval)(a)?;
        if w.len() != self.len {
            return Err(Error::DimensionMismatch(format!("potential returned {} values, expected {}", w.len(), self.len)));
        }
        Ok(w)
    }
}

/// `π` on the induced subgraphs of a host, one positive value per coordinate.
#[derive(Clone)]
pub struct MarkovField {
    pub name: String,
    pub host: Graph,
    pub len: usize,
    eval: Evaluator,
}

impl MarkovField {
    pub fn new(
        name: &str,
        host: Graph,
        len: usize,
        f: impl Fn(&VertexSet) -> Result<Vec<f64>> + Send + Sync + 'static,
    ) -> MarkovField {
        MarkovField { name: name.into(), host, len, eval: Arc::new(f) }
    }

    /// `π_β = e^{−βW}`.
    pub fn from_potential(w: &NearestNeighborPotential, beta: Beta) -> Result<MarkovField> {
        if beta.is_infinite() {
            return Err(Error::InvalidBeta("a Markov field e^{-βW} needs a finite β".into()));
        }
        let b = beta.value();
        let inner = w.clone();
        Ok(MarkovField::new(&format!("exp(-{b}·{})", w.name), w.host.clone(), w.len, move |a| {
            Ok(inner.eval(a)?.iter().map(|x| (-b * x).exp()).collect())
        }))
    }

    pub fn eval(&self, a: &VertexSet) -> Result<Vec<f64>> {
        (self.eval)(a)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub set: VertexSet,
    pub vertex: u32,
    pub neighborhood: VertexSet,
    pub coordinate: usize,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioReport {
    pub name: String,
    pub family_size: usize,
    /// Applicable `(A, v)` pairs with `v ∉ A`.
    pub pairs_checked: usize,
    /// Coordinates left out entirely, with the reason.
    pub skipped_coordinates: Vec<(usize, String)>,
    /// Individual comparisons skipped because both sides were undefined (`∞ − ∞`).
    pub undefined_comparisons: usize,
    #[serde(with = "crate::serde_ext::ext_f64")]
    pub max_residual: f64,
    pub tolerance: f64,
    pub violations: Vec<Violation>,
    pub passes: bool,
}

/// Runs `cmp(A ∪ v, A, B ∪ v, B)` over all subsets `A`, vertices `v ∉ A`,
/// `B = A ∩ ∂(v)`, and every non-skipped coordinate.
fn ratio_scan(
    host: &Graph,
    values: &BTreeMap<VertexSet, Vec<f64>>,
    len: usize,
    skip: &BTreeSet<usize>,
    tol: f64,
    cmp: impl Fn(f64, f64, f64, f64) -> Option<(f64, f64, f64)>,
) -> (usize, usize, f64, Vec<Violation>) {
    let (mut pairs, mut undefined, mut worst) = (0usize, 0usize, 0.0f64);
    let mut violations = Vec::new();
    let mut by_neighbor: Vec<(u32, VertexSet)> = host.vertices().iter().map(|v| (*v, host.neighbors(*v))).collect();
    by_neighbor.sort();
    for (a, wa) in values {
        for (v, nbhd) in &by_neighbor {
            if a.contains(v) {
                continue;
            }
            pairs += 1;
            let mut av = a.clone();
            av.insert(*v);
            let b: VertexSet = a.intersection(nbhd).copied().collect();
            let mut bv = b.clone();
            bv.insert(*v);
            let (wav, wb, wbv) = (&values[&av], &values[&b], &values[&bv]);
            for j in (0..len).filter(|j| !skip.contains(j)) {
                match cmp(wav[j], wa[j], wbv[j], wb[j]) {
                    None => undefined += 1,
                    Some((res, lhs, rhs)) => {
                        worst = worst.max(res);
                        if res > tol && violations.len() < MAX_VIOLATIONS {
                            violations.push(Violation {
                                set: a.clone(),
                                vertex: *v,
                                neighborhood: b.clone(),
                                coordinate: j,
                                lhs,
                                rhs,
                            });
                        }
                    }
                }
            }
        }
    }
    (pairs, undefined, worst, violations)
}

fn diff(x: f64, y: f64) -> Option<f64> {
    if x.is_infinite() && y.is_infinite() {
        None
    } else {
        Some(x - y)
    }
}

/// Checks `W(A∪v) − W(A) = W(B∪v) − W(B)` with `B = A ∩ ∂(v)` on the whole family.
pub fn nn_check(w: &NearestNeighborPotential) -> Result<RatioReport> {
    check_host(&w.host)?;
    let values: BTreeMap<VertexSet, Vec<f64>> =
        subsets(&w.host).into_iter().map(|a| w.eval(&a).map(|x| (a, x))).collect::<Result<_>>()?;
    let (pairs, undefined, worst, violations) =
        ratio_scan(&w.host, &values, w.len, &BTreeSet::new(), NN_TOL, |av, a, bv, b| {
            let (l, r) = (diff(av, a)?, diff(bv, b)?);
            let res = if l == r { 0.0 } else { (l - r).abs() };
            Some((res, l, r))
        });
    Ok(RatioReport {
        name: w.name.clone(),
        family_size: values.len(),
        pairs_checked: pairs,
        skipped_coordinates: Vec::new(),
        undefined_comparisons: undefined,
        max_residual: worst,
        tolerance: NN_TOL,
        passes: worst <= NN_TOL,
        violations,
    })
}

/// Checks `π(A∪v)/π(A) = π(B∪v)/π(B)` with `B = A ∩ ∂(v)`. A coordinate on
/// which `π` vanishes on the whole family is skipped and reported; any other
/// non-positive value is an error.
pub fn markov_check(pi: &MarkovField) -> Result<RatioReport> {
    check_host(&pi.host)?;
    let values: BTreeMap<VertexSet, Vec<f64>> = subsets(&pi.host)
        .into_iter()
        .map(|a| {
            let v = pi.eval(&a)?;
            if v.len() != pi.len {
                return Err(Error::DimensionMismatch(format!("field returned {} values, expected {}", v.len(), pi.len)));
            }
            Ok((a, v))
        })
        .collect::<Result<_>>()?;
    let mut skip = BTreeSet::new();
    let mut skipped = Vec::new();
    for j in 0..pi.len {
        if values.iter().all(|(a, v)| a.is_empty() || v[j] == 0.0) {
            skip.insert(j);
            skipped.push((j, "π vanishes on every nonempty subset".to_string()));
            continue;
        }
        if let Some((a, v)) = values.iter().find(|(_, v)| !(v[j] > 0.0 && v[j].is_finite())) {
            return Err(Error::Domain(format!("π({a:?}) = {} at coordinate {j} is not a positive number", v[j])));
        }
    }
    let (pairs, undefined, worst, violations) = ratio_scan(&pi.host, &values, pi.len, &skip, MARKOV_TOL, |av, a, bv, b| {
        let (l, r) = (av / a, bv / b);
        Some(((l / r - 1.0).abs(), l, r))
    });
    Ok(RatioReport {
        name: pi.name.clone(),
        family_size: values.len(),
        pairs_checked: pairs,
        skipped_coordinates: skipped,
        undefined_comparisons: undefined,
        max_residual: worst,
        tolerance: MARKOV_TOL,
        passes: worst <= MARKOV_TOL,
        violations,
    })
}

/// Hopf algebra on the vertex subsets of a host: vertices are primitive, so
/// `Δ(A) = Σ_{B⊆A} B ⊗ (A∖B)`, graded by the number of vertices.
#[derive(Clone, Debug)]
pub struct VertexSetHopf {
    pub host: Graph,
}

impl HopfAlgebra for VertexSetHopf {
    type Elem = VertexSet;
    type Key = Vec<u32>;

    fn key(&self, x: &VertexSet) -> Vec<u32> {
        x.iter().copied().collect()
    }

    fn degree(&self, x: &VertexSet) -> usize {
        x.len()
    }

    fn reduced_coproduct(&self, x: &VertexSet) -> Result<Vec<Term<VertexSet>>> {
        let vs: Vec<u32> = x.iter().copied().collect();
        if vs.len() > FAMILY_CAP {
            return Err(Error::CapExceeded(format!("{} vertices exceeds the cap of {FAMILY_CAP}", vs.len())));
        }
        let full = (1u32 << vs.len()) - 1;
        Ok((1..full)
            .map(|mask| {
                let side = |bit: u32| vs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == bit).map(|(_, v)| *v).collect();
                Term {
                    left: side(1),
                    right: side(0),
                    multiplicity: 1,
                }
            })
            .collect())
    }

    fn components(&self, x: &VertexSet) -> Vec<VertexSet> {
        x.iter().map(|v| BTreeSet::from([*v])).collect()
    }

    fn product(&self, x: &VertexSet, y: &VertexSet) -> VertexSet {
        x.union(y).copied().collect()
    }

    fn describe(&self, x: &VertexSet) -> String {
        let inner: Vec<String> = x.iter().map(|v| v.to_string()).collect();
        format!("{{{}}}", inner.join(", "))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldValues {
    pub set: VertexSet,
    #[serde(with = "crate::serde_ext::ext_vec")]
    pub minus: Vec<f64>,
    #[serde(with = "crate::serde_ext::ext_vec")]
    pub plus: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PotentialFactorization {
    pub potential: String,
    pub beta: Beta,
    /// `W(A) = Σ_{v∈A} W({v})` on the whole family.
    pub vertex_only: bool,
    pub warnings: Vec<String>,
    pub values: Vec<FieldValues>,
    pub potential_minus: RatioReport,
    pub potential_plus: RatioReport,
    pub field_minus: Option<RatioReport>,
    pub field_plus: Option<RatioReport>,
    pub factorization: FactorizationResult<Vec<u32>>,
}

fn is_vertex_only(w: &NearestNeighborPotential) -> Result<bool> {
    let singles: BTreeMap<u32, Vec<f64>> =
        w.host.vertices().iter().map(|v| w.eval(&BTreeSet::from([*v])).map(|x| (*v, x))).collect::<Result<_>>()?;
    let empty = w.eval(&BTreeSet::new())?;
    if empty.iter().any(|x| *x != 0.0) {
        return Ok(false);
    }
    for a in subsets(&w.host) {
        let got = w.eval(&a)?;
        let mut want = vec![0.0; w.len];
        for v in &a {
            for (x, c) in want.iter_mut().zip(&singles[v]) {
                *x += c;
            }
        }
        if got.iter().zip(&want).any(|(g, s)| (g - s).abs() > NN_TOL * (1.0 + s.abs())) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Factorizes the potential `W`, viewed as a sequence-valued min-plus
/// character on vertex subsets, with the weight +1 operator `op` at its β, and
/// certifies `W±` as nearest-neighbor potentials and `e^{−βW±}` as Markov fields.
pub fn factorize_potential(
    w: &NearestNeighborPotential,
    op: &dyn RotaBaxter,
    config: EngineConfig,
) -> Result<PotentialFactorization> {
    check_host(&w.host)?;
    let beta = op.beta();
    let vertex_only = is_vertex_only(w)?;
    let mut warnings = Vec::new();
    let unit = Element::one(Shape::Sequence, Mode::MinPlus, w.len);
    let inner = w.clone();
    let mut psi = FnCharacter::new(&w.name, unit, move |a: &VertexSet| Ok(Element::sequence(inner.eval(a)?)));
    if !vertex_only {
        warnings.push(format!(
            "{} depends on more than the vertex set; it is evaluated on whole subsets and the Markov property of the factors is not guaranteed",
            w.name
        ));
        psi = psi.on_monomials();
    }
    let h = VertexSetHopf { host: w.host.clone() };
    let family = subsets(&w.host);
    let mut session = Session::new(&h, &psi, Scheme::WeightOne(op), config)?;
    let mut values = Vec::new();
    let mut minus_table = BTreeMap::new();
    let mut plus_table = BTreeMap::new();
    for a in &family {
        let e = session.evaluate(a)?;
        minus_table.insert(a.clone(), e.minus.coeffs().to_vec());
        plus_table.insert(a.clone(), e.plus.coeffs().to_vec());
        values.push(FieldValues { set: a.clone(), minus: e.minus.coeffs().to_vec(), plus: e.plus.coeffs().to_vec() });
    }
    let factorization = session.run(&family)?;
    let make = |name: &str, table: BTreeMap<VertexSet, Vec<f64>>| {
        NearestNeighborPotential::new(name, w.host.clone(), w.len, move |a| {
            table.get(a).cloned().ok_or_else(|| Error::UndefinedComponent(format!("{a:?} is outside the family")))
        })
    };
    let w_minus = make(&format!("{}_minus", w.name), minus_table);
    let w_plus = make(&format!("{}_plus", w.name), plus_table);
    let potential_minus = nn_check(&w_minus)?;
    let potential_plus = nn_check(&w_plus)?;
    let (field_minus, field_plus) = if beta.is_infinite() {
        warnings.push("β = ∞: the fields e^{-βW±} degenerate, only the potentials are checked".into());
        (None, None)
    } else {
        (
            Some(markov_check(&MarkovField::from_potential(&w_minus, beta)?)?),
            Some(markov_check(&MarkovField::from_potential(&w_plus, beta)?)?),
        )
    };
    Ok(PotentialFactorization {
        potential: w.name.clone(),
        beta,
        vertex_only,
        warnings,
        values,
        potential_minus,
        potential_plus,
        field_minus,
        field_plus,
        factorization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::birkhoff::PartialSum;

    fn costs(host: &Graph, len: usize) -> NearestNeighborPotential {
        let c = host.vertices().iter().map(|v| (*v, (0..len).map(|j| 1.0 + (*v as f64) * 0.5 + j as f64).collect())).collect();
        NearestNeighborPotential::vertex_costs(host.clone(), c, None).unwrap()
    }

    #[test]
    fn triangle_family() {
        let fam = induced_family(&Graph::cycle(3)).unwrap();
        let mut sizes: Vec<usize> = fam.iter().map(|s| s.vertices.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![0, 1, 1, 1, 2, 2, 2, 3]);
        assert_eq!(fam[0].graph.num_vertices(), 0);
        assert_eq!(fam[7].graph, Graph::cycle(3));
    }

    #[test]
    fn vertex_costs_are_nearest_neighbor() {
        let r = nn_check(&costs(&Graph::path(3), 2)).unwrap();
        assert!(r.passes);
        assert_eq!(r.max_residual, 0.0);
    }

    #[test]
    fn pairwise_fields_are_markov() {
        let host = Graph::cycle(4);
        let w = NearestNeighborPotential::pairwise(host, vec![0.3], BTreeMap::new(), Some(vec![-0.7])).unwrap();
        assert!(nn_check(&w).unwrap().passes);
        let r = markov_check(&MarkovField::from_potential(&w, Beta::new(1.0).unwrap()).unwrap()).unwrap();
        assert!(r.passes, "{}", r.max_residual);
    }

    #[test]
    fn squared_edge_count_violates() {
        let w = NearestNeighborPotential::squared_edge_count(Graph::path(3), vec![1.0]).unwrap();
        let r = nn_check(&w).unwrap();
        assert!(!r.passes);
        let v = &r.violations[0];
        assert_ne!(v.lhs, v.rhs);
    }

    #[test]
    fn non_positive_field_rejected() {
        let pi = MarkovField::new("bad", Graph::path(1), 1, |a| Ok(vec![if a.len() == 1 { -1.0 } else { 1.0 }]));
        assert!(matches!(markov_check(&pi), Err(Error::Domain(_))));
    }

    #[test]
    fn factorized_fields_are_markov() {
        let host = Graph::path(3);
        let w = costs(&host, 3);
        let op = PartialSum::new(Beta::new(1.0).unwrap(), 3);
        let r = factorize_potential(&w, &op, EngineConfig::default()).unwrap();
        assert!(r.vertex_only);
        assert!(r.potential_minus.passes && r.potential_plus.passes);
        let fm = r.field_minus.unwrap();
        assert!(fm.passes, "{}", fm.max_residual);
        assert_eq!(fm.skipped_coordinates.len(), 1);
        assert!(r.field_plus.unwrap().passes);
        assert!(r.factorization.identity_residual < 1e-9);
    }

    #[test]
    fn pairwise_potential_warns() {
        let host = Graph::path(2);
        let w = NearestNeighborPotential::pairwise(host, vec![1.0, 2.0], BTreeMap::new(), Some(vec![0.5, 0.5])).unwrap();
        let op = PartialSum::new(Beta::INFINITY, 2);
        let r = factorize_potential(&w, &op, EngineConfig::default()).unwrap();
        assert!(!r.vertex_only);
        assert!(!r.warnings.is_empty());
    }

    #[test]
    fn spec_json() {
        let s = r#"{"host": {"edges": [[0,1],[1,2]]}, "kind": "vertex_costs", "costs": {"0": [1.0], "1": [2.0]}, "default": [0.5]}"#;
        let spec: PotentialSpec = serde_json::from_str(s).unwrap();
        let w = NearestNeighborPotential::from_spec(spec).unwrap();
        assert_eq!(w.eval(&BTreeSet::from([0, 2])).unwrap(), vec![1.5]);
    }
}

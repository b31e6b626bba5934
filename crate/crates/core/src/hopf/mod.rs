//! The graded Hopf algebra of multigraphs. Graphs are taken modulo isolated
//! vertices, so an edgeless graph is the unit and the grading is the edge count.
//! The coproduct sums over edge subsets `γ` with quotient `Γ/γ`.

mod canon;
mod character;
mod graph;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use serde::Serialize;

pub use canon::{canonical_key, CanonKey};
pub use character::{
    char_eval, convolve, Character, EdgeCountCharacter, FnCharacter, InclusionExclusionCharacter, TrivialCharacter,
};
pub use graph::{Edge, EdgeSet, Graph, MAX_EDGES};

use crate::{Error, Result};

/// Default cap on the number of edges for subset enumeration.
pub const DEFAULT_EDGE_CAP: usize = 16;

/// Which edge subsets `γ` enter the coproduct.
pub type SubsetFilter = Arc<dyn Fn(&Graph, EdgeSet) -> bool + Send + Sync>;

#[derive(Clone, Default)]
pub enum Admissibility {
    /// Every nonempty proper edge subset.
    #[default]
    All,
    /// Only subsets containing every edge of `Γ` between their own endpoints.
    Induced,
    Custom(SubsetFilter),
}

impl Admissibility {
    pub fn admits(&self, g: &Graph, s: EdgeSet) -> bool {
        match self {
            Admissibility::All => true,
            Admissibility::Induced => {
                let ends: std::collections::BTreeSet<u32> =
                    s.iter().flat_map(|i| [g.edges()[i].u, g.edges()[i].v]).collect();
                g.edges()
                    .iter()
                    .enumerate()
                    .all(|(i, e)| s.contains(i) || !(ends.contains(&e.u) && ends.contains(&e.v)))
            }
            Admissibility::Custom(f) => f(g, s),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Admissibility::All => "all",
            Admissibility::Induced => "induced",
            Admissibility::Custom(_) => "custom",
        }
    }
}

impl fmt::Debug for Admissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Admissibility {
    type Err = Error;
    fn from_str(s: &str) -> Result<Admissibility> {
        match s {
            "all" => Ok(Admissibility::All),
            "induced" => Ok(Admissibility::Induced),
            _ => Err(Error::Parse(format!("unknown admissibility '{s}' (expected all or induced)"))),
        }
    }
}

/// One non-primitive coproduct term `γ ⊗ Γ/γ`, with the number of edge
/// subsets producing the same pair up to isomorphism.
#[derive(Clone, Debug, Serialize)]
pub struct CoproductTerm {
    pub left: Graph,
    pub right: Graph,
    pub multiplicity: usize,
    /// The first edge subset (in bitmask order) realizing this pair.
    pub edges: EdgeSet,
}

/// All admissible nonempty proper edge subsets with their subgraph and quotient, before deduplication.
pub fn coproduct_raw(g: &Graph, adm: &Admissibility, cap: usize) -> Result<Vec<(EdgeSet, Graph, Graph)>> {
    let m = g.num_edges();
    if m > cap.min(MAX_EDGES - 1) {
        return Err(Error::CapExceeded(format!("{m} edges exceeds the enumeration cap of {cap}")));
    }
    let mut out = Vec::new();
    for mask in 1..(1u64 << m) - 1 {
        let s = EdgeSet(mask);
        if adm.admits(g, s) {
            out.push((s, g.subgraph(s)?, g.contract(s)?));
        }
    }
    Ok(out)
}

/// Non-primitive part of the coproduct, deduplicated by the canonical form of
/// the pair. Labeled keys distinguish vertex ids and edge labels.
pub fn coproduct(g: &Graph, adm: &Admissibility, cap: usize, labeled: bool) -> Result<Vec<CoproductTerm>> {
    let key = |x: &Graph| canonical_key(&x.without_isolated(), labeled);
    let mut seen: BTreeMap<(CanonKey, CanonKey), usize> = BTreeMap::new();
    let mut terms: Vec<CoproductTerm> = Vec::new();
    for (s, left, right) in coproduct_raw(g, adm, cap)? {
        let k = (key(&left), key(&right));
        match seen.get(&k) {
            Some(&i) => terms[i].multiplicity += 1,
            None => {
                seen.insert(k, terms.len());
                terms.push(CoproductTerm { left, right: right.without_isolated(), multiplicity: 1, edges: s });
            }
        }
    }
    Ok(terms)
}

/// A term `x′ ⊗ x″` of a reduced coproduct.
#[derive(Clone, Debug)]
pub struct Term<E> {
    pub left: E,
    pub right: E,
    pub multiplicity: usize,
}

/// A graded connected commutative Hopf algebra with a basis of monomials,
/// as seen by the factorization engines.
pub trait HopfAlgebra: Sync {
    type Elem: Clone + fmt::Debug + Send + Sync;
    type Key: Clone + Eq + Hash + Ord + fmt::Debug + Send + Sync + Serialize;

    fn key(&self, x: &Self::Elem) -> Self::Key;
    fn degree(&self, x: &Self::Elem) -> usize;
    fn is_unit(&self, x: &Self::Elem) -> bool {
        self.degree(x) == 0
    }
    /// Terms of `Δ(x)` other than `x ⊗ 1` and `1 ⊗ x`.
    fn reduced_coproduct(&self, x: &Self::Elem) -> Result<Vec<Term<Self::Elem>>>;
    /// Connected factors of a monomial; the unit has none.
    fn components(&self, x: &Self::Elem) -> Vec<Self::Elem>;
    fn product(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn describe(&self, x: &Self::Elem) -> String;
}

/// The graph Hopf algebra with a chosen admissibility rule.
#[derive(Clone, Debug)]
pub struct GraphHopf {
    pub admissibility: Admissibility,
    pub cap: usize,
    /// Memo keys and deduplication respect vertex ids and edge labels.
    pub labeled: bool,
}

impl Default for GraphHopf {
    fn default() -> GraphHopf {
        GraphHopf { admissibility: Admissibility::All, cap: DEFAULT_EDGE_CAP, labeled: false }
    }
}

impl GraphHopf {
    pub fn new(admissibility: Admissibility) -> GraphHopf {
        GraphHopf { admissibility, ..GraphHopf::default() }
    }

    pub fn labeled(mut self) -> GraphHopf {
        self.labeled = true;
        self
    }

    pub fn with_cap(mut self, cap: usize) -> GraphHopf {
        self.cap = cap;
        self
    }
}

impl HopfAlgebra for GraphHopf {
    type Elem = Graph;
    type Key = CanonKey;

    fn key(&self, x: &Graph) -> CanonKey {
        canonical_key(&x.without_isolated(), self.labeled)
    }

    fn degree(&self, x: &Graph) -> usize {
        x.num_edges()
    }

    fn reduced_coproduct(&self, x: &Graph) -> Result<Vec<Term<Graph>>> {
        Ok(coproduct(x, &self.admissibility, self.cap, self.labeled)?
            .into_iter()
            .map(|t| Term { left: t.left, right: t.right, multiplicity: t.multiplicity })
            .collect())
    }

    fn components(&self, x: &Graph) -> Vec<Graph> {
        x.edge_components()
    }

    fn product(&self, x: &Graph, y: &Graph) -> Graph {
        x.disjoint_union(y)
    }

    fn describe(&self, x: &Graph) -> String {
        x.to_string()
    }
}

/// Every multigraph (loops and parallel edges allowed, no isolated vertices)
/// with at most `max_edges` edges, one per isomorphism class, by edge count.
pub fn enumerate_graphs(max_edges: usize) -> Vec<Graph> {
    let mut levels: Vec<Vec<Graph>> = vec![vec![Graph::empty()]];
    for _ in 0..max_edges {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in levels.last().expect("nonempty") {
            let n = g.num_vertices() as u32;
            let mut cands: Vec<(u32, u32)> = Vec::new();
            for a in 0..=n {
                for b in a..=n + 1 {
                    if b <= n || (a == n && b == n + 1) {
                        cands.push((a, b));
                    }
                }
            }
            for (a, b) in cands {
                let mut pairs: Vec<(u32, u32)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
                pairs.push((a, b));
                let h = Graph::from_edges(&pairs);
                if seen.insert(canonical_key(&h, false)) {
                    next.push(h);
                }
            }
        }
        levels.push(next);
    }
    levels.into_iter().flatten().collect()
}

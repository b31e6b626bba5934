use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest number of edges an [`EdgeSet`] can address.
pub const MAX_EDGES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    /// Label used by label-sensitive characters; defaults to the edge's position.
    pub label: u32,
}

/// Finite multigraph. Loops and parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: Vec<u32>,
    edges: Vec<Edge>,
}

/// A set of edges of some parent graph, as a bitmask over edge positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct EdgeSet(pub u64);

impl EdgeSet {
    pub fn full(n: usize) -> EdgeSet {
        if n >= 64 {
            EdgeSet(u64::MAX)
        } else {
            EdgeSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    pub fn from_indices(idx: &[usize]) -> EdgeSet {
        EdgeSet(idx.iter().fold(0, |m, &i| m | 1 << i))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Graph {
    pub fn new(vertices: Vec<u32>, edges: Vec<Edge>) -> Result<Graph> {
        let set: BTreeSet<u32> = vertices.iter().copied().collect();
        if set.len() != vertices.len() {
            return Err(Error::Domain("duplicate vertex ids".into()));
        }
        if let Some(e) = edges.iter().find(|e| !set.contains(&e.u) || !set.contains(&e.v)) {
            return Err(Error::Domain(format!("edge ({}, {}) has an endpoint outside the vertex set", e.u, e.v)));
        }
        Ok(Graph { vertices: set.into_iter().collect(), edges })
    }

    /// Vertices are the endpoints; labels are the edge positions.
    pub fn from_edges(pairs: &[(u32, u32)]) -> Graph {
        let vertices: BTreeSet<u32> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
        let edges = pairs.iter().enumerate().map(|(i, &(u, v))| Edge { u, v, label: i as u32 }).collect();
        Graph { vertices: vertices.into_iter().collect(), edges }
    }

    pub fn empty() -> Graph {
        Graph { vertices: Vec::new(), edges: Vec::new() }
    }

    /// Path with `n` edges.
    pub fn path(n: usize) -> Graph {
        Graph::from_edges(&(0..n as u32).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    /// Cycle with `n ≥ 1` edges (a loop for `n = 1`).
    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(&(0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect::<Vec<_>>())
    }

    /// Two vertices joined by `k` parallel edges.
    pub fn banana(k: usize) -> Graph {
        Graph::from_edges(&vec![(0, 1); k])
    }

    /// A single vertex carrying `k` loops.
    pub fn rose(k: usize) -> Graph {
        Graph::from_edges(&vec![(0, 0); k])
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Graph {
        let mut pairs = Vec::new();
        for i in 0..n as u32 {
            for j in (i + 1)..n as u32 {
                pairs.push((i, j));
            }
        }
        let mut g = Graph::from_edges(&pairs);
        g.vertices = (0..n as u32).collect();
        g
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn with_labels(mut self, labels: &[u32]) -> Result<Graph> {
        if labels.len() != self.edges.len() {
            return Err(Error::DimensionMismatch("one label per edge".into()));
        }
        for (e, &l) in self.edges.iter_mut().zip(labels) {
            e.label = l;
        }
        Ok(self)
    }

    fn index_of(&self, v: u32) -> usize {
        self.vertices.binary_search(&v).expect("vertex of this graph")
    }

    fn check_set(&self, s: EdgeSet) -> Result<()> {
        if self.edges.len() < 64 && s.0 >> self.edges.len() != 0 {
            return Err(Error::NotSubgraph(format!("edge set {:#b} exceeds {} edges", s.0, self.edges.len())));
        }
        Ok(())
    }

    /// Vertex partition induced by the edges in `s` (every vertex appears).
    fn classes(&self, s: EdgeSet) -> UnionFind {
        let mut uf = UnionFind::new(self.vertices.len());
        for i in s.iter() {
            let e = self.edges[i];
            uf.union(self.index_of(e.u), self.index_of(e.v));
        }
        uf
    }

    /// Connected components, isolated vertices included.
    pub fn components(&self) -> Vec<Graph> {
        let mut uf = self.classes(EdgeSet::full(self.edges.len()));
        let mut groups: BTreeMap<usize, (Vec<u32>, Vec<Edge>)> = BTreeMap::new();
        for (i, &v) in self.vertices.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().0.push(v);
        }
        for e in &self.edges {
            let r = uf.find(self.index_of(e.u));
            groups.get_mut(&r).expect("component").1.push(*e);
        }
        groups.into_values().map(|(vertices, edges)| Graph { vertices, edges }).collect()
    }

    /// Components with at least one edge.
    pub fn edge_components(&self) -> Vec<Graph> {
        self.components().into_iter().filter(|c| c.num_edges() > 0).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn without_isolated(&self) -> Graph {
        let used: BTreeSet<u32> = self.edges.iter().flat_map(|e| [e.u, e.v]).collect();
        Graph { vertices: used.into_iter().collect(), edges: self.edges.clone() }
    }

    /// The subgraph spanned by the edges in `s`: those edges and their endpoints.
    pub fn subgraph(&self, s: EdgeSet) -> Result<Graph> {
        self.check_set(s)?;
        let edges: Vec<Edge> = s.iter().map(|i| self.edges[i]).collect();
        let vertices: BTreeSet<u32> = edges.iter().flat_map(|e| [e.u, e.v]).collect();
        Ok(Graph { vertices: vertices.into_iter().collect(), edges })
    }

    /// Collapses each component of the subgraph spanned by `s` to a single new
    /// vertex. Remaining edges with both ends in one collapsed component become loops.
    pub fn contract(&self, s: EdgeSet) -> Result<Graph> {
        self.check_set(s)?;
        let mut uf = self.classes(s);
        let touched: BTreeSet<usize> =
            s.iter().flat_map(|i| [self.index_of(self.edges[i].u), self.index_of(self.edges[i].v)]).collect();
        let mut fresh = self.vertices.last().map_or(0, |v| v + 1);
        let mut image: BTreeMap<usize, u32> = BTreeMap::new();
        let mut map = vec![0u32; self.vertices.len()];
        for (i, &v) in self.vertices.iter().enumerate() {
            map[i] = if touched.contains(&i) {
                let r = uf.find(i);
                *image.entry(r).or_insert_with(|| {
                    fresh += 1;
                    fresh - 1
                })
            } else {
                v
            };
        }
        let edges: Vec<Edge> = (0..self.edges.len())
            .filter(|i| !s.contains(*i))
            .map(|i| {
                let e = self.edges[i];
                Edge { u: map[self.index_of(e.u)], v: map[self.index_of(e.v)], label: e.label }
            })
            .collect();
        let vertices: BTreeSet<u32> = map.into_iter().collect();
        Ok(Graph { vertices: vertices.into_iter().collect(), edges })
    }

    /// Number of components of the subgraph spanned by `s`.
    pub fn component_count(&self, s: EdgeSet) -> usize {
        let mut uf = self.classes(s);
        let touched: BTreeSet<usize> =
            s.iter().flat_map(|i| [self.index_of(self.edges[i].u), self.index_of(self.edges[i].v)]).collect();
        touched.into_iter().map(|i| uf.find(i)).collect::<BTreeSet<_>>().len()
    }

    /// Disjoint union; the second graph's vertex ids are shifted past the first's.
    /// Edge labels are kept as they are.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.vertices.last().map_or(0, |v| v + 1);
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().map(|v| v + off));
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge { u: e.u + off, v: e.v + off, label: e.label }));
        Graph { vertices, edges }
    }

    /// Induced subgraph on a vertex subset.
    pub fn induced(&self, keep: &BTreeSet<u32>) -> Graph {
        let vertices: Vec<u32> = self.vertices.iter().copied().filter(|v| keep.contains(v)).collect();
        let edges = self.edges.iter().copied().filter(|e| keep.contains(&e.u) && keep.contains(&e.v)).collect();
        Graph { vertices, edges }
    }

    /// Vertices adjacent to `v`, excluding `v` itself.
    pub fn neighbors(&self, v: u32) -> BTreeSet<u32> {
        self.edges
            .iter()
            .filter_map(|e| match (e.u == v, e.v == v) {
                (true, false) => Some(e.v),
                (false, true) => Some(e.u),
                _ => None,
            })
            .collect()
    }

    /// Edge positions that are bridges (their removal disconnects their endpoints).
    pub fn is_bridge(&self, i: usize) -> bool {
        let e = self.edges[i];
        if e.u == e.v {
            return false;
        }
        let mut rest = EdgeSet::full(self.edges.len());
        rest.0 &= !(1u64 << i);
        let mut uf = self.classes(rest);
        uf.find(self.index_of(e.u)) != uf.find(self.index_of(e.v))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}-{}", e.u, e.v)?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<u32>>,
    edges: Vec<Vec<u32>>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let default_labels = self.edges.iter().enumerate().all(|(i, e)| e.label == i as u32);
        let edges = self
            .edges
            .iter()
            .map(|e| if default_labels { vec![e.u, e.v] } else { vec![e.u, e.v, e.label] })
            .collect();
        GraphJson { vertices: Some(self.vertices.clone()), edges }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Graph, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        let mut edges = Vec::new();
        for (i, e) in raw.edges.iter().enumerate() {
            let label = match e.len() {
                2 => i as u32,
                3 => e[2],
                _ => return Err(serde::de::Error::custom("edges are [u, v] or [u, v, label]")),
            };
            edges.push(Edge { u: e[0], v: e[1], label });
        }
        let vertices = raw
            .vertices
            .unwrap_or_else(|| edges.iter().flat_map(|e| [e.u, e.v]).collect::<BTreeSet<_>>().into_iter().collect());
        Graph::new(vertices, edges).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_contract_one_edge() {
        let t = Graph::cycle(3);
        let q = t.contract(EdgeSet::from_indices(&[0])).unwrap();
        assert_eq!(q.num_vertices(), 2);
        assert_eq!(q.num_edges(), 2);
        let (a, b) = (q.edges()[0], q.edges()[1]);
        assert_eq!((a.u.min(a.v), a.u.max(a.v)), (b.u.min(b.v), b.u.max(b.v)));
    }

    #[test]
    fn contracting_spanning_tree_leaves_loops() {
        let t = Graph::cycle(3);
        let q = t.contract(EdgeSet::from_indices(&[0, 1])).unwrap();
        assert_eq!(q.num_vertices(), 1);
        assert_eq!(q.num_edges(), 1);
        assert_eq!(q.edges()[0].u, q.edges()[0].v);
    }

    #[test]
    fn vertex_count_after_contraction() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (3, 4), (2, 3), (4, 4)]);
        for m in 0..(1u64 << g.num_edges()) {
            let s = EdgeSet(m);
            let sub = g.subgraph(s).unwrap();
            let q = g.contract(s).unwrap();
            assert_eq!(q.num_vertices(), g.num_vertices() - sub.num_vertices() + g.component_count(s));
            assert_eq!(q.num_edges(), g.num_edges() - s.len());
        }
    }

    #[test]
    fn out_of_range_set_rejected() {
        assert!(matches!(Graph::path(2).subgraph(EdgeSet(0b100)), Err(Error::NotSubgraph(_))));
    }

    #[test]
    fn components_and_bridges() {
        let g = Graph::path(2).disjoint_union(&Graph::banana(2));
        assert_eq!(g.components().len(), 2);
        assert!(g.is_bridge(0));
        assert!(!g.is_bridge(2));
        assert!(!Graph::rose(1).is_bridge(0));
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::from_edges(&[(0, 1), (1, 1), (1, 2)]);
        let s = serde_json::to_string(&g).unwrap();
        let h: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(g, h);
        let h: Graph = serde_json::from_str(r#"{"edges": [[0, 1], [0, 1]]}"#).unwrap();
        assert_eq!(h, Graph::banana(2));
        assert!(serde_json::from_str::<Graph>(r#"{"vertices": [0], "edges": [[0, 1]]}"#).is_err());
    }
}

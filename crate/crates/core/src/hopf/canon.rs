use std::collections::BTreeMap;

use serde::Serialize;

use super::graph::Graph;

/// Isomorphism-invariant encoding of a multigraph. Two graphs get equal keys
/// exactly when they are isomorphic (with labels, when labels are requested).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonKey {
    pub vertices: u32,
    /// Vertex colors in canonical order (empty when unlabeled).
    pub colors: Vec<u32>,
    /// Edges `(i, j, label)` with `i ≤ j` in canonical positions, sorted.
    pub edges: Vec<(u32, u32, u32)>,
}

impl CanonKey {
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }
}

struct Work {
    n: usize,
    /// `adj[i]` maps a neighbor index to the multiset of labels on the joining edges.
    adj: Vec<BTreeMap<usize, Vec<u32>>>,
}

impl Work {
    fn signature(&self, colors: &[u32], v: usize) -> (u32, Vec<(u32, Vec<u32>)>) {
        let mut nb: Vec<(u32, Vec<u32>)> = self.adj[v]
            .iter()
            .map(|(&w, labels)| (if w == v { u32::MAX } else { colors[w] }, labels.clone()))
            .collect();
        nb.sort();
        (colors[v], nb)
    }

    /// Equitable refinement. New colors are ranks of signatures, so the
    /// relative order of existing cells is preserved.
    fn refine(&self, colors: &mut [u32]) {
        loop {
            let sigs: Vec<_> = (0..self.n).map(|v| self.signature(colors, v)).collect();
            let mut sorted = sigs.clone();
            sorted.sort();
            sorted.dedup();
            let before = colors.iter().collect::<std::collections::BTreeSet<_>>().len();
            for v in 0..self.n {
                colors[v] = sorted.binary_search(&sigs[v]).expect("present") as u32;
            }
            if sorted.len() == before {
                return;
            }
        }
    }

    fn encode(&self, colors: &[u32], vcolor: &[u32], labeled: bool) -> CanonKey {
        let mut edges = Vec::new();
        for v in 0..self.n {
            for (&w, labels) in &self.adj[v] {
                if w < v {
                    continue;
                }
                let (a, b) = (colors[v].min(colors[w]), colors[v].max(colors[w]));
                for &l in labels {
                    edges.push((a, b, l));
                }
            }
        }
        edges.sort();
        let colors_out = if labeled {
            let mut c = vec![0; self.n];
            for v in 0..self.n {
                c[colors[v] as usize] = vcolor[v];
            }
            c
        } else {
            Vec::new()
        };
        CanonKey { vertices: self.n as u32, colors: colors_out, edges }
    }

    fn search(&self, mut colors: Vec<u32>, vcolor: &[u32], labeled: bool, best: &mut Option<CanonKey>) {
        self.refine(&mut colors);
        let mut cells: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            cells.entry(c).or_default().push(v);
        }
        let target = cells.values().find(|c| c.len() > 1);
        match target {
            None => {
                let key = self.encode(&colors, vcolor, labeled);
                if best.as_ref().is_none_or(|b| key < *b) {
                    *best = Some(key);
                }
            }
            Some(cell) => {
                for &v in cell {
                    let next: Vec<u32> = (0..self.n)
                        .map(|x| 2 * colors[x] + u32::from(colors[x] == colors[v] && x != v))
                        .collect();
                    self.search(next, vcolor, labeled, best);
                }
            }
        }
    }
}

/// Canonical key by color refinement with individualization of the first
/// non-singleton cell, taking the least encoding over all branches.
///
/// Unlabeled keys ignore vertex ids and edge labels. Labeled keys keep both:
/// vertex ids become initial colors and edge labels travel with the edges.
pub fn canonical_key(g: &Graph, labeled: bool) -> CanonKey {
    let n = g.num_vertices();
    let index: BTreeMap<u32, usize> = g.vertices().iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj: Vec<BTreeMap<usize, Vec<u32>>> = vec![BTreeMap::new(); n];
    for e in g.edges() {
        let l = if labeled { e.label } else { 0 };
        let (a, b) = (index[&e.u], index[&e.v]);
        adj[a].entry(b).or_default().push(l);
        if a != b {
            adj[b].entry(a).or_default().push(l);
        }
    }
    for m in &mut adj {
        for labels in m.values_mut() {
            labels.sort_unstable();
        }
    }
    let vcolor: Vec<u32> = if labeled { g.vertices().to_vec() } else { vec![0; n] };
    let initial: Vec<u32> = if labeled { (0..n as u32).collect() } else { vec![0; n] };
    let work = Work { n, adj };
    let mut best = None;
    work.search(initial, &vcolor, labeled, &mut best);
    best.unwrap_or(CanonKey { vertices: 0, colors: Vec::new(), edges: Vec::new() })
}

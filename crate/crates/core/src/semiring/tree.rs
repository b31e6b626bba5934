use std::fmt;
use std::str::FromStr;

use super::{thermo_add_n, Beta, Entropy, ExtReal};
use crate::{Error, Result};

/// Planar rooted tree. Leaves consume inputs left to right; every internal
/// vertex has at least two children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanarTree {
    Leaf,
    Node(Vec<PlanarTree>),
}

impl PlanarTree {
    pub fn node(children: Vec<PlanarTree>) -> Result<PlanarTree> {
        if children.len() < 2 {
            return Err(Error::InvalidParameter("internal vertices need at least two children".into()));
        }
        Ok(PlanarTree::Node(children))
    }

    pub fn leaves(&self) -> usize {
        match self {
            PlanarTree::Leaf => 1,
            PlanarTree::Node(c) => c.iter().map(PlanarTree::leaves).sum(),
        }
    }

    /// `((x₁ x₂) x₃) …`
    pub fn left_comb(n: usize) -> PlanarTree {
        (1..n).fold(PlanarTree::Leaf, |acc, _| PlanarTree::Node(vec![acc, PlanarTree::Leaf]))
    }

    /// `x₁ (x₂ (x₃ …))`
    pub fn right_comb(n: usize) -> PlanarTree {
        (1..n).fold(PlanarTree::Leaf, |acc, _| PlanarTree::Node(vec![PlanarTree::Leaf, acc]))
    }

    /// One vertex with `n` leaves.
    pub fn corolla(n: usize) -> PlanarTree {
        if n == 1 {
            PlanarTree::Leaf
        } else {
            PlanarTree::Node(vec![PlanarTree::Leaf; n])
        }
    }

    /// All planar binary trees with `n` leaves.
    pub fn binary_trees(n: usize) -> Vec<PlanarTree> {
        if n == 1 {
            return vec![PlanarTree::Leaf];
        }
        let mut out = Vec::new();
        for k in 1..n {
            for l in PlanarTree::binary_trees(k) {
                for r in PlanarTree::binary_trees(n - k) {
                    out.push(PlanarTree::Node(vec![l.clone(), r]));
                }
            }
        }
        out
    }

    fn eval(&self, xs: &mut std::slice::Iter<'_, ExtReal>, beta: Beta, s: &Entropy) -> Result<ExtReal> {
        match self {
            PlanarTree::Leaf => Ok(*xs.next().expect("leaf count checked")),
            PlanarTree::Node(children) => {
                let vals = children.iter().map(|c| c.eval(xs, beta, s)).collect::<Result<Vec<_>>>()?;
                thermo_add_n(&vals, beta, s)
            }
        }
    }
}

/// Evaluates the tree, applying the deformed sum at every internal vertex.
pub fn tree_compose(tree: &PlanarTree, xs: &[ExtReal], beta: Beta, entropy: &Entropy) -> Result<ExtReal> {
    let leaves = tree.leaves();
    if leaves != xs.len() {
        return Err(Error::ArityMismatch { leaves, inputs: xs.len() });
    }
    tree.eval(&mut xs.iter(), beta, entropy)
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarTree::Leaf => write!(f, "*"),
            PlanarTree::Node(c) => {
                write!(f, "(")?;
                for (i, t) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Parses `*` for a leaf and `(t1,t2,…)` for a vertex, e.g. `((*,*),*)`.
impl FromStr for PlanarTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<PlanarTree> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let t = parse_tree(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::Parse(format!("trailing input in tree '{s}'")));
        }
        Ok(t)
    }
}

fn parse_tree(c: &[char], pos: &mut usize) -> Result<PlanarTree> {
    match c.get(*pos) {
        Some('*') => {
            *pos += 1;
            Ok(PlanarTree::Leaf)
        }
        Some('(') => {
            *pos += 1;
            let mut children = vec![parse_tree(c, pos)?];
            loop {
                match c.get(*pos) {
                    Some(',') => {
                        *pos += 1;
                        children.push(parse_tree(c, pos)?);
                    }
                    Some(')') => {
                        *pos += 1;
                        break;
                    }
                    _ => return Err(Error::Parse("expected ',' or ')' in tree".into())),
                }
            }
            PlanarTree::node(children).map_err(|e| Error::Parse(e.to_string()))
        }
        _ => Err(Error::Parse("expected '*' or '(' in tree".into())),
    }
}

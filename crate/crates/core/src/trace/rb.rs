//! Rota-Baxter identity for deformed traces of matrix-valued sequences.
//!
//! A sequence `A = (A₁, …, A_N)` of symmetric matrices is pushed through the
//! partial-sum operator coordinate-wise in the exponential picture:
//! `T(A)ₙ = -β⁻¹ log Σ_{k<n} e^{-β A_k}` (matrix logarithm), with `T(A)₁ = ∞`.
//! Sums of matrices of this kind are taken as Kronecker sums, so that
//! `e^{-β(X ⊞ Y)} = e^{-βX} ⊗ e^{-βY}` and deformed traces add.

use serde::Serialize;

use super::deformed::log_partition;
use super::matrix::{kronecker_sum, SymMatrix};
use crate::semiring::{lse_min, Beta};
use crate::{Error, Result};

/// `None` stands for the additive identity (the all-`∞` matrix).
type Slot = Option<SymMatrix>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatrixRbReport {
    /// `Tr⊕(T(A) ⊞ T(B))` per index.
    pub lhs: Vec<f64>,
    /// `Tr⊕(T(T(A) ⊞ B)) ⊕_β Tr⊕(T(A ⊞ T(B))) ⊕_β Tr⊕(T(A ⊞ B))` per index.
    pub rhs: Vec<f64>,
    pub max_residual: f64,
    /// Largest gap between the left side and the plain minimum of the three terms.
    pub tropical_gap: f64,
    /// `log 3 / β`.
    pub tropical_bound: f64,
}

pub fn constant_sequence(a: &SymMatrix, n: usize) -> Vec<SymMatrix> {
    vec![a.clone(); n]
}

fn deformed(x: &Slot, beta: f64) -> f64 {
    match x {
        None => f64::INFINITY,
        Some(m) => -log_partition(m, beta) / beta,
    }
}

fn ksum(x: &Slot, y: &Slot) -> Slot {
    match (x, y) {
        (Some(a), Some(b)) => Some(kronecker_sum(a, b)),
        _ => None,
    }
}

/// Coordinate-wise partial sum in the exponential picture.
fn partial_sum(seq: &[Slot], beta: f64) -> Vec<Slot> {
    (0..seq.len())
        .map(|n| {
            let terms: Vec<&SymMatrix> = seq[..n].iter().flatten().collect();
            let shift = terms.iter().map(|m| m.min_eigenvalue()).fold(f64::INFINITY, f64::min);
            if shift == f64::INFINITY {
                return None;
            }
            let dim = terms[0].dim();
            let mut acc = SymMatrix::zeros(dim);
            for m in terms {
                let e = m.map_spectrum(|l| (-beta * (l - shift)).exp());
                acc = acc.add(&e).expect("equal sizes");
            }
            Some(acc.map_spectrum(|l| shift - l.ln() / beta))
        })
        .collect()
}

/// Evaluates both sides of the weight-one Rota-Baxter identity for deformed
/// traces with the partial-sum operator, index by index.
pub fn matrix_rb_check(a: &[SymMatrix], b: &[SymMatrix], beta: Beta) -> Result<MatrixRbReport> {
    if beta.is_infinite() {
        return Err(Error::InvalidBeta("the matrix identity is evaluated at finite β".into()));
    }
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::DimensionMismatch("sequences must be nonempty and of equal length".into()));
    }
    for seq in [a, b] {
        if seq.iter().any(|m| m.dim() != seq[0].dim()) {
            return Err(Error::DimensionMismatch("matrices within a sequence must share a size".into()));
        }
    }
    let bv = beta.value();
    let sa: Vec<Slot> = a.iter().cloned().map(Some).collect();
    let sb: Vec<Slot> = b.iter().cloned().map(Some).collect();
    let ta = partial_sum(&sa, bv);
    let tb = partial_sum(&sb, bv);
    let zip = |x: &[Slot], y: &[Slot]| -> Vec<Slot> { x.iter().zip(y).map(|(p, q)| ksum(p, q)).collect() };

    let t1 = partial_sum(&zip(&ta, &sb), bv);
    let t2 = partial_sum(&zip(&sa, &tb), bv);
    let t3 = partial_sum(&zip(&sa, &sb), bv);

    let mut report = MatrixRbReport {
        lhs: Vec::new(),
        rhs: Vec::new(),
        max_residual: 0.0,
        tropical_gap: 0.0,
        tropical_bound: 3f64.ln() / bv,
    };
    for n in 0..a.len() {
        let l = deformed(&ksum(&ta[n], &tb[n]), bv);
        let terms = [deformed(&t1[n], bv), deformed(&t2[n], bv), deformed(&t3[n], bv)];
        let r = lse_min(terms, beta);
        let trop = terms.iter().copied().fold(f64::INFINITY, f64::min);
        report.max_residual = report.max_residual.max(gap(l, r));
        report.tropical_gap = report.tropical_gap.max(gap(l, trop));
        report.lhs.push(l);
        report.rhs.push(r);
    }
    Ok(report)
}

fn gap(x: f64, y: f64) -> f64 {
    if x == y {
        0.0
    } else {
        (x - y).abs()
    }
}

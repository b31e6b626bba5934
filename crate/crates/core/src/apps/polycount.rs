use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::hopf::Graph;
use crate::witt::{count_hypersurface, is_prime, GraphPolynomial};
use crate::{Error, Result};

/// Largest graph accepted by [`polycount`].
pub const MAX_POLYCOUNT_EDGES: usize = 6;

pub const VERDICT_POLYNOMIAL: &str = "consistent with polynomial";
pub const VERDICT_NOT_POLYNOMIAL: &str = "not polynomial";

#[derive(Clone, Debug, Serialize)]
pub struct PolyCountReport {
    pub graph: String,
    pub num_edges: usize,
    pub graph_polynomial: String,
    pub primes: Vec<u64>,
    /// `N(Y_Γ, q)` at each sampled prime.
    pub counts: Vec<u64>,
    /// Ascending coefficients when the interpolant is an integer polynomial.
    pub coefficients: Option<Vec<String>>,
    pub polynomial: Option<String>,
    pub verdict: &'static str,
    /// Leading exponent, `−∞` when the counts are not polynomial.
    #[serde(with = "crate::serde_ext::ext_f64")]
    pub psi: f64,
}

/// The first `|E| + 2` primes.
pub fn default_primes(num_edges: usize) -> Vec<u64> {
    (2u64..).filter(|&p| is_prime(p)).take(num_edges + 2).collect()
}

/// Newton interpolation through `(x_i, y_i)`, returned as ascending monomial coefficients.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut coeffs = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        // coeffs ← coeffs·(x − x_k) + dd[k]
        let mut next = vec![BigRational::zero(); n];
        for (d, c) in coeffs.iter().enumerate() {
            if d + 1 < n {
                next[d + 1] += c;
            }
            next[d] -= c * &xs[k];
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    coeffs
}

fn eval_poly(c: &[BigRational], x: &BigRational) -> BigRational {
    c.iter().rev().fold(BigRational::zero(), |acc, a| acc * x + a)
}

fn format_poly(c: &[BigInt]) -> String {
    let mut out = String::new();
    for (d, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let mag = a.abs();
        let sign = if a.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if a.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let body = match (d, mag.is_one()) {
            (0, _) => mag.to_string(),
            (1, true) => "q".into(),
            (1, false) => format!("{mag}q"),
            (_, true) => format!("q^{d}"),
            (_, false) => format!("{mag}q^{d}"),
        };
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Counts `N(Y_Γ, q)` at each prime and tests whether they are the values of
/// one integer polynomial of degree at most `|E|`: the first `|E| + 1`
/// samples fix the interpolant, the rest must be reproduced exactly.
pub fn polycount(g: &Graph, primes: &[u64], cap: u64) -> Result<PolyCountReport> {
    let m = g.num_edges();
    if m > MAX_POLYCOUNT_EDGES {
        return Err(Error::CapExceeded(format!("polycount handles at most {MAX_POLYCOUNT_EDGES} edges, got {m}")));
    }
    let distinct: BTreeSet<u64> = primes.iter().copied().collect();
    if distinct.len() != primes.len() {
        return Err(Error::InvalidParameter("sampled primes must be distinct".into()));
    }
    if let Some(p) = primes.iter().find(|p| !is_prime(**p)) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if primes.len() < m + 2 {
        return Err(Error::InvalidParameter(format!(
            "insufficient primes: {} given, a graph with {m} edges needs at least {}",
            primes.len(),
            m + 2
        )));
    }
    let counts: Vec<u64> = primes
        .iter()
        .map(|&q| count_hypersurface(g, q, cap).map(|c| c.complement.expect("hypersurface count")))
        .collect::<Result<_>>()?;
    let xs: Vec<BigRational> = primes.iter().map(|&q| BigRational::from_integer(q.into())).collect();
    let ys: Vec<BigRational> = counts.iter().map(|&c| BigRational::from_integer(c.into())).collect();
    let fit = interpolate(&xs[..m + 1], &ys[..m + 1]);
    let integral = fit.iter().all(|c| c.is_integer());
    let reproduces = xs.iter().zip(&ys).all(|(x, y)| &eval_poly(&fit, x) == y);
    let (coefficients, polynomial, verdict, psi) = if integral && reproduces {
        let ints: Vec<BigInt> = fit.iter().map(|c| c.to_integer()).collect();
        let degree = ints.iter().rposition(|c| !c.is_zero());
        (
            Some(ints.iter().map(|c| c.to_string()).collect()),
            Some(format_poly(&ints)),
            VERDICT_POLYNOMIAL,
            degree.map_or(f64::NEG_INFINITY, |d| d as f64),
        )
    } else {
        (None, None, VERDICT_NOT_POLYNOMIAL, f64::NEG_INFINITY)
    };
    Ok(PolyCountReport {
        graph: g.to_string(),
        num_edges: m,
        graph_polynomial: GraphPolynomial::of(g).to_string(),
        primes: primes.to_vec(),
        counts,
        coefficients,
        polynomial,
        verdict,
        psi,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DisjointUnionCheck {
    pub left: PolyCountReport,
    pub right: PolyCountReport,
    pub union: PolyCountReport,
    /// `N(Y_{Γ₁⊔Γ₂}, q) = N(Y_{Γ₁}, q)·N(Y_{Γ₂}, q)` at every prime shared by the three runs.
    pub counts_multiply: bool,
    /// `ψ(Γ₁⊔Γ₂) = ψ(Γ₁) + ψ(Γ₂)` in max-plus arithmetic.
    pub psi_additive: bool,
}

/// Runs [`polycount`] on `Γ₁`, `Γ₂` and `Γ₁ ⊔ Γ₂` with the same primes.
pub fn polycount_disjoint_union(g1: &Graph, g2: &Graph, primes: &[u64], cap: u64) -> Result<DisjointUnionCheck> {
    let union = g1.disjoint_union(g2);
    let (left, right, both) = (polycount(g1, primes, cap)?, polycount(g2, primes, cap)?, polycount(&union, primes, cap)?);
    let counts_multiply = (0..primes.len()).all(|i| both.counts[i] == left.counts[i] * right.counts[i]);
    let psi_additive = both.psi == left.psi + right.psi;
    Ok(DisjointUnionCheck { left, right, union: both, counts_multiply, psi_additive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::POINT_CAP;

    #[test]
    fn banana_two() {
        let r = polycount(&Graph::banana(2), &[2, 3, 5, 7], POINT_CAP).unwrap();
        assert_eq!(r.polynomial.as_deref(), Some("q^2 - q"));
        assert_eq!(r.psi, 2.0);
        assert_eq!(r.verdict, VERDICT_POLYNOMIAL);
    }

    #[test]
    fn single_edge_convention() {
        let r = polycount(&Graph::path(1), &default_primes(1), POINT_CAP).unwrap();
        assert_eq!(r.graph_polynomial, "1");
        assert_eq!(r.polynomial.as_deref(), Some("q"));
        assert_eq!(r.psi, 1.0);
    }

    #[test]
    fn disjoint_bananas() {
        let r = polycount_disjoint_union(&Graph::banana(2), &Graph::banana(2), &default_primes(4), POINT_CAP).unwrap();
        assert_eq!(r.union.psi, 4.0);
        assert!(r.counts_multiply && r.psi_additive);
    }

    #[test]
    fn insufficient_primes() {
        assert!(matches!(polycount(&Graph::banana(2), &[2, 3, 5], POINT_CAP), Err(Error::InvalidParameter(_))));
        assert!(polycount(&Graph::banana(2), &[2, 3, 5, 5], POINT_CAP).is_err());
        assert!(polycount(&Graph::banana(2), &[2, 3, 5, 9], POINT_CAP).is_err());
    }

    #[test]
    fn interpolation_recovers_polynomials() {
        let xs: Vec<BigRational> = [2, 3, 5, 7].iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
        let want = [BigRational::from_integer(BigInt::from(-4)), BigRational::zero(), BigRational::one(), BigRational::from_integer(BigInt::from(3))];
        let ys: Vec<BigRational> = xs.iter().map(|x| eval_poly(&want, x)).collect();
        assert_eq!(interpolate(&xs, &ys), want.to_vec());
        assert_eq!(format_poly(&[BigInt::from(-4), BigInt::zero(), BigInt::one(), BigInt::from(3)]), "3q^3 + q^2 - 4");
    }

    #[test]
    fn non_polynomial_samples() {
        let xs: Vec<BigRational> = [2, 3, 5].iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
        let ys: Vec<BigRational> = [1, 2, 5].iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
        let fit = interpolate(&xs, &ys);
        assert!(fit.iter().any(|c| !c.is_integer()));
    }
}

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::series::rat;
use super::vector::pow;
use crate::hopf::Graph;
use crate::{Error, Result};

/// Largest grid `q^{|E|}` enumerated by brute force.
pub const POINT_CAP: u64 = 2_000_000;

/// Integer polynomial in `𝕃` and `𝕃⁻¹`, stored as power ↦ coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MotiveClass {
    terms: BTreeMap<i32, BigInt>,
}

#[derive(Serialize, Deserialize)]
struct MotiveRepr {
    tate: Vec<(i64, i32)>,
}

impl MotiveClass {
    /// From `(coefficient, power)` pairs.
    pub fn tate(pairs: &[(i64, i32)]) -> MotiveClass {
        let mut m = MotiveClass::default();
        for &(c, k) in pairs {
            *m.terms.entry(k).or_insert_with(BigInt::zero) += c;
        }
        m.terms.retain(|_, c| !c.is_zero());
        m
    }

    pub fn point() -> MotiveClass {
        MotiveClass::tate(&[(1, 0)])
    }

    /// `[𝔸ⁿ] = 𝕃ⁿ`.
    pub fn affine(n: u32) -> MotiveClass {
        MotiveClass::tate(&[(1, n as i32)])
    }

    /// `[ℙⁿ] = 1 + 𝕃 + … + 𝕃ⁿ`.
    pub fn projective(n: u32) -> MotiveClass {
        MotiveClass::tate(&(0..=n as i32).map(|k| (1, k)).collect::<Vec<_>>())
    }

    /// Multiplication by `𝕃^k`.
    pub fn twist(&self, k: i32) -> MotiveClass {
        MotiveClass { terms: self.terms.iter().map(|(p, c)| (p + k, c.clone())).collect() }
    }

    pub fn add(&self, other: &MotiveClass) -> MotiveClass {
        let mut m = self.clone();
        for (p, c) in &other.terms {
            *m.terms.entry(*p).or_insert_with(BigInt::zero) += c;
        }
        m.terms.retain(|_, c| !c.is_zero());
        m
    }

    pub fn mul(&self, other: &MotiveClass) -> MotiveClass {
        let mut m = MotiveClass::default();
        for (p, a) in &self.terms {
            for (k, b) in &other.terms {
                *m.terms.entry(p + k).or_insert_with(BigInt::zero) += a * b;
            }
        }
        m.terms.retain(|_, c| !c.is_zero());
        m
    }

    /// Value at `𝕃 = x`.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let inv = if x.is_zero() { None } else { Some(x.recip()) };
        self.terms.iter().fold(BigRational::zero(), |acc, (p, c)| {
            let base = if *p >= 0 { pow(x, *p as usize) } else { pow(inv.as_ref().expect("x ≠ 0"), (-p) as usize) };
            acc + BigRational::from_integer(c.clone()) * base
        })
    }

    /// Counts `P(q^r)` for `r = 1..=order`.
    pub fn counts(&self, q: u64, order: usize) -> CountingSequence {
        let q = rat(q as i64);
        let values = (1..=order).map(|r| self.eval(&pow(&q, r))).collect();
        CountingSequence { values, source: CountSource::Formula }
    }
}

impl std::fmt::Display for MotiveClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| match *p {
                0 => c.to_string(),
                1 => format!("{c}L"),
                _ => format!("{c}L^{p}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for MotiveClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let tate = self.terms.iter().map(|(p, c)| (c.to_i64().unwrap_or(i64::MAX), *p)).collect();
        MotiveRepr { tate }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MotiveClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<MotiveClass, D::Error> {
        Ok(MotiveClass::tate(&MotiveRepr::deserialize(d)?.tate))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountSource {
    Formula,
    BruteForce,
}

/// `#X(F_{q^r})` for `r = 1..N`.
#[derive(Clone, Debug, Serialize)]
pub struct CountingSequence {
    #[serde(serialize_with = "rational_strings")]
    pub values: Vec<BigRational>,
    pub source: CountSource,
}

fn rational_strings<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// A variety whose points can be counted.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VarietySpec {
    Tate(MotiveClass),
    GraphHypersurface { graph_hypersurface: Graph },
}

/// Kirchhoff polynomial `Ψ_Γ = Σ_T ∏_{e∉T} t_e`; each monomial is stored as an
/// edge bitmask. Disconnected graphs use maximal spanning forests, so the
/// polynomial of a disjoint union is the product of the polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphPolynomial {
    pub num_vars: usize,
    pub monomials: Vec<u64>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&self, mut x: usize) -> usize {
        while self.0[x] != x {
            x = self.0[x];
        }
        x
    }
}

/// Spanning forests of `g` as edge bitmasks, by deletion-contraction: a loop
/// (after contraction) can only be deleted, any other edge is either
/// contracted into the forest or deleted; deleting a bridge of what remains is pruned.
pub fn spanning_forests(g: &Graph) -> Vec<u64> {
    let idx: BTreeMap<u32, usize> = g.vertices().iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let ends: Vec<(usize, usize)> = g.edges().iter().map(|e| (idx[&e.u], idx[&e.v])).collect();
    let n = idx.len();
    let rank = rank_of(&ends, n, &Dsu((0..n).collect()), 0);
    fn rank_of(ends: &[(usize, usize)], n: usize, dsu: &Dsu, from: usize) -> usize {
        let mut d = Dsu((0..n).map(|i| dsu.find(i)).collect());
        let mut r = 0;
        for &(a, b) in &ends[from..] {
            let (x, y) = (d.find(a), d.find(b));
            if x != y {
                d.0[x] = y;
                r += 1;
            }
        }
        r
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(ends: &[(usize, usize)], n: usize, i: usize, dsu: Dsu, chosen: u64, size: usize, rank: usize, out: &mut Vec<u64>) {
        if size == rank {
            out.push(chosen);
            return;
        }
        if i == ends.len() || size + rank_of(ends, n, &dsu, i) < rank {
            return;
        }
        let (x, y) = (dsu.find(ends[i].0), dsu.find(ends[i].1));
        if x != y {
            let mut c = Dsu(dsu.0.clone());
            c.0[x] = y;
            rec(ends, n, i + 1, c, chosen | (1 << i), size + 1, rank, out);
        }
        rec(ends, n, i + 1, dsu, chosen, size, rank, out);
    }
    let mut out = Vec::new();
    rec(&ends, n, 0, Dsu((0..n).collect()), 0, 0, rank, &mut out);
    out
}

impl GraphPolynomial {
    pub fn of(g: &Graph) -> GraphPolynomial {
        let m = g.num_edges();
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let mut monomials: Vec<u64> = spanning_forests(g).into_iter().map(|f| full & !f).collect();
        monomials.sort_unstable();
        GraphPolynomial { num_vars: m, monomials }
    }

    /// `Ψ(x) mod p`.
    pub fn eval_mod(&self, x: &[u64], p: u64) -> u64 {
        let mut s = 0u64;
        for &mon in &self.monomials {
            let mut v = 1u64;
            let mut bits = mon;
            while bits != 0 && v != 0 {
                let i = bits.trailing_zeros() as usize;
                v = v * x[i] % p;
                bits &= bits - 1;
            }
            s = (s + v) % p;
        }
        s
    }
}

impl std::fmt::Display for GraphPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .monomials
            .iter()
            .map(|&m| {
                if m == 0 {
                    return "1".to_string();
                }
                (0..self.num_vars).filter(|i| m >> i & 1 == 1).map(|i| format!("t{}", i + 1)).collect::<String>()
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn check_prime(q: u64) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::Domain(format!("point counting needs a prime field size, got {q}")));
    }
    Ok(())
}

fn grid_size(q: u64, dim: usize, cap: u64) -> Result<u64> {
    let mut n = 1u64;
    for _ in 0..dim {
        n = n.checked_mul(q).filter(|&n| n <= cap).ok_or_else(|| {
            Error::CapExceeded(format!("enumerating {q}^{dim} points exceeds the cap of {cap}"))
        })?;
    }
    Ok(n)
}

fn digits(mut idx: u64, q: u64, dim: usize, out: &mut [u64]) {
    for d in out.iter_mut().take(dim) {
        *d = idx % q;
        idx /= q;
    }
}

/// Result of counting one variety over `F_q`.
#[derive(Clone, Debug, Serialize)]
pub struct PointCount {
    pub q: u64,
    /// `#X(F_q)`.
    pub points: u64,
    /// `N(Y, q) = q^{|E|} − #X(F_q)` for graph hypersurfaces.
    pub complement: Option<u64>,
    pub source: CountSource,
    pub polynomial: Option<String>,
}

/// `#{x ∈ F_q^{|E|} : Ψ_Γ(x) = 0}`, enumerating the grid in parallel.
pub fn count_hypersurface(g: &Graph, q: u64, cap: u64) -> Result<PointCount> {
    check_prime(q)?;
    let dim = g.num_edges();
    let total = grid_size(q, dim, cap)?;
    let poly = GraphPolynomial::of(g);
    let zeros: u64 = (0..total)
        .into_par_iter()
        .map_init(
            || vec![0u64; dim],
            |x, idx| {
                digits(idx, q, dim, x);
                u64::from(poly.eval_mod(x, q) == 0)
            },
        )
        .sum();
    Ok(PointCount {
        q,
        points: zeros,
        complement: Some(total - zeros),
        source: CountSource::BruteForce,
        polynomial: Some(poly.to_string()),
    })
}

/// `#𝔸ⁿ(F_q)` by listing every coordinate vector.
pub fn brute_force_affine(n: usize, q: u64) -> Result<u64> {
    check_prime(q)?;
    let total = grid_size(q, n, POINT_CAP)?;
    Ok((0..total).into_par_iter().map(|_| 1u64).sum())
}

/// `#ℙⁿ(F_q)`: nonzero vectors of `F_q^{n+1}` whose first nonzero coordinate is 1.
pub fn brute_force_projective(n: usize, q: u64) -> Result<u64> {
    check_prime(q)?;
    let dim = n + 1;
    let total = grid_size(q, dim, POINT_CAP)?;
    Ok((0..total)
        .into_par_iter()
        .map_init(
            || vec![0u64; dim],
            |x, idx| {
                digits(idx, q, dim, x);
                u64::from(x.iter().find(|&&c| c != 0) == Some(&1))
            },
        )
        .sum())
}

pub fn count_points(spec: &VarietySpec, q: u64, cap: u64) -> Result<PointCount> {
    match spec {
        VarietySpec::Tate(m) => {
            check_prime(q)?;
            let v = m.eval(&rat(q as i64));
            if !v.is_integer() || v.is_negative() {
                return Err(Error::Domain(format!("{m} does not evaluate to a point count at q = {q}")));
            }
            let points = v.to_integer().to_u64().ok_or_else(|| Error::CapExceeded(format!("{m} at q = {q} overflows")))?;
            Ok(PointCount { q, points, complement: None, source: CountSource::Formula, polynomial: None })
        }
        VarietySpec::GraphHypersurface { graph_hypersurface } => count_hypersurface(graph_hypersurface, q, cap),
    }
}

/// Counting sequence from a motive, checked at `r = 1` against brute force
/// when the motive is `𝔸ⁿ` or `ℙⁿ` with `n ≤ 2`.
pub fn counts_with_check(m: &MotiveClass, q: u64, order: usize) -> Result<(CountingSequence, Option<u64>)> {
    check_prime(q)?;
    let seq = m.counts(q, order);
    let brute = (0..=2u32)
        .find_map(|n| {
            if *m == MotiveClass::affine(n) {
                Some(brute_force_affine(n as usize, q))
            } else if *m == MotiveClass::projective(n) {
                Some(brute_force_projective(n as usize, q))
            } else {
                None
            }
        })
        .transpose()?;
    if let Some(b) = brute {
        if seq.values.first().map(|v| v != &rat(b as i64)).unwrap_or(false) {
            return Err(Error::Certification(format!("formula count {} ≠ brute-force count {b}", seq.values[0])));
        }
    }
    Ok((seq, brute))
}

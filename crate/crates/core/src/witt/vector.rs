use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::series::{rat, RatSeries};
use crate::{Error, Result};

pub const DEFAULT_ORDER: usize = 8;

/// Ghost coordinates `g₁..g_N`, defined by `t·α′/α = Σ gₙ tⁿ`.
pub type GhostVector = Vec<BigRational>;

/// Truncated big Witt vector `1 + a₁t + … + a_N t^N` over exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittVector {
    coeffs: Vec<BigRational>,
}

/// Which multiplication a Rota-Baxter check uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WittProduct {
    /// The Witt product `⋆`: ghosts multiply componentwise.
    Star,
    /// The convolution `⊛`: ghosts multiply as power series.
    Convolution,
}

impl std::fmt::Display for WittProduct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WittProduct::Star => "star",
            WittProduct::Convolution => "convolution",
        })
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n.trim().parse().map_err(|_| bad())?, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl WittVector {
    /// From `a₁..a_N`.
    pub fn new(coeffs: Vec<BigRational>) -> WittVector {
        WittVector { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> WittVector {
        WittVector { coeffs: coeffs.iter().map(|&c| rat(c)).collect() }
    }

    /// The series `1`, which is the additive zero.
    pub fn zero(order: usize) -> WittVector {
        WittVector { coeffs: vec![BigRational::zero(); order] }
    }

    /// `(1−t)⁻¹`, the unit of `⋆`.
    pub fn one(order: usize) -> WittVector {
        WittVector { coeffs: vec![BigRational::one(); order] }
    }

    /// `(1−at)⁻¹`.
    pub fn geometric(a: &BigRational, order: usize) -> WittVector {
        let mut coeffs = Vec::with_capacity(order);
        let mut p = BigRational::one();
        for _ in 0..order {
            p *= a;
            coeffs.push(p.clone());
        }
        WittVector { coeffs }
    }

    pub fn from_series(s: &RatSeries) -> Result<WittVector> {
        if !s.coeffs()[0].is_one() {
            return Err(Error::Domain(format!("a Witt vector has constant term 1, got {}", s.coeffs()[0])));
        }
        Ok(WittVector { coeffs: s.coeffs()[1..].to_vec() })
    }

    pub fn parse(src: &str, order: usize) -> Result<WittVector> {
        WittVector::from_series(&RatSeries::parse(src, order)?)
    }

    pub fn to_series(&self) -> RatSeries {
        let mut c = vec![BigRational::one()];
        c.extend(self.coeffs.iter().cloned());
        RatSeries::new(c).expect("nonempty")
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn check(&self, other: &WittVector) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::DimensionMismatch(format!(
                "Witt vectors truncated at orders {} and {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    /// `gₙ = n·aₙ − Σ_{i=1}^{n−1} aᵢ g_{n−i}`.
    pub fn ghost(&self) -> GhostVector {
        let a = &self.coeffs;
        let mut g: Vec<BigRational> = Vec::with_capacity(a.len());
        for n in 1..=a.len() {
            let mut v = rat(n as i64) * &a[n - 1];
            for i in 1..n {
                v -= &a[i - 1] * &g[n - i - 1];
            }
            g.push(v);
        }
        g
    }

    /// Inverse of [`WittVector::ghost`]: `aₙ = (gₙ + Σ_{i=1}^{n−1} aᵢ g_{n−i}) / n`.
    pub fn from_ghost(g: &[BigRational]) -> WittVector {
        let mut a: Vec<BigRational> = Vec::with_capacity(g.len());
        for n in 1..=g.len() {
            let mut v = g[n - 1].clone();
            for i in 1..n {
                v += &a[i - 1] * &g[n - i - 1];
            }
            a.push(v / rat(n as i64));
        }
        WittVector { coeffs: a }
    }

    fn map_ghost(&self, f: impl Fn(usize, &BigRational) -> Result<BigRational>) -> Result<WittVector> {
        let g: Result<Vec<_>> = self.ghost().iter().enumerate().map(|(i, x)| f(i + 1, x)).collect();
        Ok(WittVector::from_ghost(&g?))
    }

    /// Witt addition: the series product.
    pub fn add(&self, other: &WittVector) -> Result<WittVector> {
        self.check(other)?;
        WittVector::from_series(&self.to_series().mul(&other.to_series())?)
    }

    /// Witt negation: the series inverse.
    pub fn neg(&self) -> WittVector {
        WittVector::from_series(&self.to_series().inv().expect("constant term 1")).expect("constant term 1")
    }

    pub fn sub(&self, other: &WittVector) -> Result<WittVector> {
        self.add(&other.neg())
    }

    /// The Witt product `⋆`.
    pub fn star(&self, other: &WittVector) -> Result<WittVector> {
        self.check(other)?;
        let g: Vec<_> = self.ghost().iter().zip(other.ghost()).map(|(a, b)| a * b).collect();
        Ok(WittVector::from_ghost(&g))
    }

    /// The convolution `⊛`: `g(α ⊛ γ)ₙ = Σ_{r+ℓ=n} g_r(α) g_ℓ(γ)`.
    pub fn convolve(&self, other: &WittVector) -> Result<WittVector> {
        self.check(other)?;
        let (a, b) = (self.ghost(), other.ghost());
        let n = a.len();
        let g: Vec<BigRational> = (1..=n)
            .map(|m| (1..m).fold(BigRational::zero(), |acc, r| acc + &a[r - 1] * &b[m - r - 1]))
            .collect();
        Ok(WittVector::from_ghost(&g))
    }

    pub fn product(&self, other: &WittVector, which: WittProduct) -> Result<WittVector> {
        match which {
            WittProduct::Star => self.star(other),
            WittProduct::Convolution => self.convolve(other),
        }
    }

    /// Partial-sum operator on ghosts: `gₙ ↦ Σ_{k<n} g_k`. Equals `α ⊛ 𝕀`.
    pub fn partial_sum(&self) -> WittVector {
        let mut acc = BigRational::zero();
        let g: Vec<BigRational> = self
            .ghost()
            .into_iter()
            .map(|x| {
                let out = acc.clone();
                acc += x;
                out
            })
            .collect();
        WittVector::from_ghost(&g)
    }

    /// The q-operator `α(t) ↦ ∏_{k≥1} α(q^k t)`, evaluated on ghosts as
    /// `gₙ ↦ gₙ·qⁿ/(1−qⁿ)`.
    pub fn q_operator(&self, q: &BigRational) -> Result<WittVector> {
        self.map_ghost(|n, g| {
            let qn = pow(q, n);
            if qn.is_one() {
                return Err(Error::Domain(format!("q^{n} = 1 for q = {q}")));
            }
            Ok(g * &qn / (BigRational::one() - &qn))
        })
    }

    /// `−_W id −_W (q-operator)`, acting on ghosts as `gₙ ↦ −gₙ/(1−qⁿ)`.
    pub fn q_tilde_operator(&self, q: &BigRational) -> Result<WittVector> {
        self.map_ghost(|n, g| {
            let qn = pow(q, n);
            if qn.is_one() {
                return Err(Error::Domain(format!("q^{n} = 1 for q = {q}")));
            }
            Ok(-g / (BigRational::one() - qn))
        })
    }

    /// `∏_{k=1}^{K} α(q^k t)` as a series product, the finite form of the q-operator.
    pub fn q_truncated_product(&self, q: &BigRational, k: usize) -> Result<WittVector> {
        let s = self.to_series();
        let mut acc = RatSeries::one(self.order());
        let mut qk = BigRational::one();
        for _ in 0..k {
            qk *= q;
            acc = acc.mul(&s.substitute(&qk))?;
        }
        WittVector::from_series(&acc)
    }

    /// `α(c·t)`.
    pub fn substitute(&self, c: &BigRational) -> WittVector {
        WittVector::from_series(&self.to_series().substitute(c)).expect("constant term stays 1")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Largest `|gₙ|` as a float, for reporting.
    pub fn ghost_sup(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.ghost().iter().map(|g| g.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
    }
}

pub(crate) fn pow(q: &BigRational, n: usize) -> BigRational {
    let mut p = BigRational::one();
    for _ in 0..n {
        p *= q;
    }
    p
}

impl Serialize for WittVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for WittVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<WittVector, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        let coeffs: Result<Vec<_>> = raw.iter().map(|s| parse_rational(s)).collect();
        Ok(WittVector { coeffs: coeffs.map_err(serde::de::Error::custom)? })
    }
}

impl std::fmt::Display for WittVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_series())
    }
}

/// Ghost-coordinate residual of the weight-one Rota-Baxter identity
/// `T(a)·T(b) = T(T(a)·b) + T(a·T(b)) + T(a·b)`, where `+` is Witt addition
/// and `·` is the chosen product.
pub fn rb_identity_residual(
    op: &dyn Fn(&WittVector) -> Result<WittVector>,
    product: WittProduct,
    a: &WittVector,
    b: &WittVector,
) -> Result<GhostVector> {
    let (ta, tb) = (op(a)?, op(b)?);
    let lhs = ta.product(&tb, product)?;
    let rhs = op(&ta.product(b, product)?)?
        .add(&op(&a.product(&tb, product)?)?)?
        .add(&op(&a.product(b, product)?)?)?;
    Ok(lhs.sub(&rhs)?.ghost())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn product_of_geometric_series() {
        let a = WittVector::parse("(1-2t)^-1", 8).unwrap();
        let b = WittVector::parse("(1-3t)^-1", 8).unwrap();
        assert_eq!(a.star(&b).unwrap(), WittVector::parse("(1-6t)^-1", 8).unwrap());
    }

    #[test]
    fn units() {
        let a = WittVector::from_integers(&[3, -1, 4, 1, -5, 9, 2, 6]);
        assert_eq!(a.add(&WittVector::zero(8)).unwrap(), a);
        assert_eq!(a.star(&WittVector::one(8)).unwrap(), a);
        assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn ghost_examples() {
        assert_eq!(WittVector::one(6).ghost(), vec![rat(1); 6]);
        let g = WittVector::geometric(&r(-2, 3), 5).ghost();
        assert_eq!(g, (1..=5).map(|n| pow(&r(-2, 3), n)).collect::<Vec<_>>());
    }

    #[test]
    fn ghost_against_logarithmic_derivative() {
        // t·α′/α by term-by-term series division.
        let a = WittVector::from_integers(&[2, 0, -1, 5, 3, 1]);
        let s = a.to_series();
        let mut deriv = vec![BigRational::zero(); 7];
        for (j, c) in s.coeffs().iter().enumerate() {
            deriv[j] = c * rat(j as i64);
        }
        let q = RatSeries::new(deriv).unwrap().mul(&s.inv().unwrap()).unwrap();
        assert_eq!(a.ghost(), q.coeffs()[1..].to_vec());
    }

    #[test]
    fn unghost_inverts_ghost() {
        let a = WittVector::new((1..=8).map(|k| r(k * k - 7, k + 1)).collect());
        assert_eq!(WittVector::from_ghost(&a.ghost()), a);
    }

    #[test]
    fn convolution_examples() {
        let one = WittVector::one(8);
        let c = one.convolve(&one).unwrap();
        assert_eq!(c.ghost(), (1..=8).map(|n| rat(n - 1)).collect::<Vec<_>>());
        let a = WittVector::from_integers(&[1, 2, 3, 4, 5, 6, 7, 8]);
        assert!(a.convolve(&WittVector::zero(8)).unwrap().is_zero());
        assert_eq!(a.partial_sum(), a.convolve(&one).unwrap());
    }

    #[test]
    fn partial_sum_examples() {
        let t = WittVector::one(8).partial_sum();
        assert_eq!(t.ghost(), (1..=8).map(|n| rat(n - 1)).collect::<Vec<_>>());
        assert!(WittVector::from_integers(&[4, 1, 7]).partial_sum().ghost()[0].is_zero());
    }

    #[test]
    fn q_operator_on_unit() {
        let q = r(1, 2);
        let t = WittVector::one(8).q_operator(&q).unwrap();
        assert_eq!(t.ghost(), (1..=8).map(|n| r(1, (1 << n) - 1)).collect::<Vec<_>>());
        let tilde = WittVector::one(8).q_tilde_operator(&q).unwrap();
        let via_def = WittVector::one(8).neg().sub(&t).unwrap();
        assert_eq!(tilde, via_def);
    }

    #[test]
    fn q_operator_matches_truncated_product() {
        use num_traits::ToPrimitive;
        let q = r(1, 2);
        let a = WittVector::from_integers(&[1, -2, 0, 3, 1, 0, -1, 2]);
        let closed = a.q_operator(&q).unwrap();
        let trunc = a.q_truncated_product(&q, 40).unwrap();
        for (x, y) in closed.coeffs().iter().zip(trunc.coeffs()) {
            assert!((x - y).abs().to_f64().unwrap() < 1e-9);
        }
    }

    #[test]
    fn roots_of_unity_rejected() {
        let a = WittVector::one(4);
        assert!(a.q_operator(&rat(1)).is_err());
        assert!(a.q_operator(&rat(-1)).is_err());
        assert!(a.q_tilde_operator(&rat(-1)).is_err());
    }

    #[test]
    fn rb_identities() {
        let a = WittVector::from_integers(&[1, -2, 3, 0, 1, 5, -1, 2]);
        let b = WittVector::from_integers(&[0, 4, -1, 2, 2, -3, 1, 1]);
        let ps = |x: &WittVector| Ok(x.partial_sum());
        assert!(rb_identity_residual(&ps, WittProduct::Star, &a, &b).unwrap().iter().all(Zero::is_zero));
        let conv = rb_identity_residual(&ps, WittProduct::Convolution, &a, &b).unwrap();
        assert!(conv.iter().any(|g| !g.is_zero()));
        for q in [r(1, 2), rat(2), r(-3, 5)] {
            let tq = |x: &WittVector| x.q_operator(&q);
            let tt = |x: &WittVector| x.q_tilde_operator(&q);
            assert!(rb_identity_residual(&tq, WittProduct::Convolution, &a, &b).unwrap().iter().all(Zero::is_zero));
            assert!(rb_identity_residual(&tt, WittProduct::Convolution, &a, &b).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn json_round_trip() {
        let a = WittVector::new(vec![r(1, 2), rat(-3), rat(0)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"["1/2","-3","0"]"#);
        assert_eq!(serde_json::from_str::<WittVector>(&s).unwrap(), a);
        assert!(serde_json::from_str::<WittVector>(r#"["1/0"]"#).is_err());
    }
}

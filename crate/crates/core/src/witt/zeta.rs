use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::motive::{counts_with_check, CountingSequence, MotiveClass};
use super::series::rat;
use super::vector::{pow, WittVector};
use crate::{Error, Result};

/// Truncation of the finite products used as a secondary check on the `q⁻¹` side.
pub const PRODUCT_TRUNCATION: usize = 40;

/// `Z(X, t) = exp(Σ #X(F_{q^r}) t^r / r)`: the Witt vector whose ghost is the counts.
pub fn zeta_from_counts(c: &CountingSequence) -> WittVector {
    WittVector::from_ghost(&c.values)
}

pub fn zeta(m: &MotiveClass, q: u64, order: usize) -> WittVector {
    zeta_from_counts(&m.counts(q, order))
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    /// Both sides agree in every coefficient, in exact arithmetic.
    pub exact: bool,
    /// Largest `|gₙ|` of the Witt difference of the two sides.
    pub residual: f64,
    pub lhs: WittVector,
    pub rhs: WittVector,
}

impl IdentityCheck {
    fn new(name: impl Into<String>, lhs: WittVector, rhs: WittVector) -> Result<IdentityCheck> {
        let diff = lhs.sub(&rhs)?;
        Ok(IdentityCheck { name: name.into(), exact: diff.is_zero(), residual: diff.ghost_sup(), lhs, rhs })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaReport {
    pub motive: MotiveClass,
    pub q: u64,
    pub order: usize,
    pub zeta: WittVector,
    pub brute_force_count: Option<u64>,
    pub checks: Vec<IdentityCheck>,
    /// `∏_{k=1}^{K} Z([X]𝕃^{−k})` versus the closed form, with the exact tail removed.
    pub truncated_product_gap: f64,
    pub all_exact: bool,
}

/// Ghost of `Σ_{k>K} Z([X]𝕃^{∓k})` computed from the counts: `gₙ·ρⁿ⁽ᴷ⁺¹⁾/(1−ρⁿ)`.
fn tail(z: &WittVector, rho: &BigRational, k: usize) -> WittVector {
    let g: Vec<BigRational> = z
        .ghost()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let rn = pow(rho, i + 1);
            g * pow(&rn, k + 1) / (BigRational::one() - rn)
        })
        .collect();
    WittVector::from_ghost(&g)
}

/// `∏_{k=from}^{to} Z([X]𝕃^{sign·k})` as a series product of motive zeta functions.
fn motive_product(m: &MotiveClass, q: u64, order: usize, sign: i32, from: i32, to: i32) -> Result<WittVector> {
    let mut acc = WittVector::zero(order);
    for k in from..=to {
        acc = acc.add(&zeta(&m.twist(sign * k), q, order))?;
    }
    Ok(acc)
}

/// Checks the three zeta-function consequences of the Witt Rota-Baxter operators
/// for a Tate class `X` over `F_q`:
///
/// * partial sums: `T(Z(X)) = Z(X) ⊛ Z(point)`;
/// * q-operator: `T_q(Z(X)) = ∏_{k≥1} Z([X]𝕃^k)`, and the same with `q⁻¹` and `𝕃^{−k}`;
/// * tilde operator: `T̃_q(Z(X)) = ∏_{k≥0} Z([X]𝕃^k)⁻¹`, and the same with `q⁻¹`.
///
/// The infinite products are pinned down by their functional equations
/// `P(t) = Z([X]𝕃^{±1}, t)·P(q^{±1}t)` and `Q(t)·Z(X, t) = Q(q^{±1}t)`, which are
/// checked in exact arithmetic; class twists come from the motive, the
/// substitutions from the series. On the convergent `q⁻¹` side the product is
/// also truncated at `K` factors and compared with the closed form minus its exact tail.
pub fn zeta_rb_checks(m: &MotiveClass, q: u64, order: usize) -> Result<ZetaReport> {
    if order == 0 {
        return Err(Error::InvalidParameter("truncation order must be positive".into()));
    }
    let (counts, brute) = counts_with_check(m, q, order)?;
    let z = zeta_from_counts(&counts);
    let qr = rat(q as i64);
    let qinv = qr.recip();
    let mut checks = Vec::new();

    let pt = zeta(&MotiveClass::point(), q, order);
    checks.push(IdentityCheck::new("partial_sum: T(Z(X)) = Z(X) ⊛ Z(point)", z.partial_sum(), z.convolve(&pt)?)?);

    for (label, rho, sign) in [("q", &qr, 1), ("q^-1", &qinv, -1)] {
        let p = z.q_operator(rho)?;
        let first = zeta(&m.twist(sign), q, order);
        checks.push(IdentityCheck::new(
            format!("q_operator[{label}]: T(Z(X))(t) = Z([X]L^{sign}, t) · T(Z(X))({label}·t)"),
            p.clone(),
            first.add(&p.substitute(rho))?,
        )?);
        let tilde = z.q_tilde_operator(rho)?;
        checks.push(IdentityCheck::new(
            format!("tilde_operator[{label}]: T~(Z(X))(t) · Z(X, t) = T~(Z(X))({label}·t)"),
            tilde.add(&z)?,
            tilde.substitute(rho),
        )?);
        checks.push(IdentityCheck::new(
            format!("tilde_definition[{label}]: T~ = -id - T"),
            tilde.clone(),
            z.neg().sub(&p)?,
        )?);
    }

    let k = PRODUCT_TRUNCATION as i32;
    let p_minus = z.q_operator(&qinv)?;
    let truncated = motive_product(m, q, order, -1, 1, k)?;
    checks.push(IdentityCheck::new(
        format!("q_operator[q^-1]: closed form = prod_(k=1..{k}) Z([X]L^-k) + exact tail"),
        p_minus.clone(),
        truncated.add(&tail(&z, &qinv, PRODUCT_TRUNCATION))?,
    )?);
    let tilde_minus = z.q_tilde_operator(&qinv)?;
    let truncated_tilde = motive_product(m, q, order, -1, 0, k)?.neg();
    checks.push(IdentityCheck::new(
        format!("tilde_operator[q^-1]: closed form = prod_(k=0..{k}) Z([X]L^-k)^-1 - exact tail"),
        tilde_minus,
        truncated_tilde.sub(&tail(&z, &qinv, PRODUCT_TRUNCATION))?,
    )?);
    let truncated_product_gap = p_minus
        .coeffs()
        .iter()
        .zip(truncated.coeffs())
        .map(|(a, b)| (a - b).abs().to_f64().unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);

    let all_exact = checks.iter().all(|c| c.exact);
    Ok(ZetaReport {
        motive: m.clone(),
        q,
        order,
        zeta: z,
        brute_force_count: brute,
        checks,
        truncated_product_gap,
        all_exact,
    })
}

/// Multiplicativity of zeta functions on Tate classes:
/// `Z(X ⊔ Y) = Z(X) +_W Z(Y)` and `Z(X × Y) = Z(X) ⋆ Z(Y)`.
pub fn zeta_multiplicativity(x: &MotiveClass, y: &MotiveClass, q: u64, order: usize) -> Result<(bool, bool)> {
    let (zx, zy) = (zeta(x, q, order), zeta(y, q, order));
    let sum = zeta(&x.add(y), q, order) == zx.add(&zy)?;
    let prod = zeta(&x.mul(y), q, order) == zx.star(&zy)?;
    Ok((sum, prod))
}

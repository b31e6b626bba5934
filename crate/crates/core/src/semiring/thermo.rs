use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Beta, Entropy, ExtReal, Mode};
use crate::{Error, Result};

const GRID_POINTS: usize = 2000;
const GOLDEN_TOL: f64 = 1e-12;
const DESCENT_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 400;
const RANDOM_STARTS: usize = 8;
const START_SEED: u64 = 0x5eed_0f7e;

/// How a deformed sum was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Resolution {
    /// Infinite temperature parameter or a single finite summand.
    Tropical,
    /// Shannon log-sum-exp.
    ClosedForm,
    /// Two summands: grid search followed by golden-section refinement.
    GoldenSection { grid_step: f64, bracket: f64 },
    /// Three or more summands: multi-start pairwise-exchange descent on the simplex.
    MultiStart { starts: usize, sweeps: usize, tol: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermoSum {
    pub value: ExtReal,
    pub resolution: Resolution,
}

/// Min-plus Shannon-deformed sum `-β⁻¹ log Σ e^{-β xᵢ}`, shifted by the minimum.
/// `+∞` entries are dropped; an empty or all-`∞` input gives `+∞`.
pub fn lse_min<I: IntoIterator<Item = f64>>(xs: I, beta: Beta) -> f64 {
    let xs: Vec<f64> = xs.into_iter().filter(|x| *x < f64::INFINITY).collect();
    let m = xs.iter().copied().fold(f64::INFINITY, f64::min);
    if m == f64::INFINITY || beta.is_infinite() {
        return m;
    }
    let b = beta.value();
    let s: f64 = xs.iter().map(|x| (-b * (x - m)).exp()).sum();
    m - s.ln() / b
}

/// As [`lse_min`] with positive multiplicities: `-β⁻¹ log Σ wᵢ e^{-β xᵢ}`.
/// Multiplicities are ignored at infinite β.
pub fn lse_min_weighted(xs: &[(f64, f64)], beta: Beta) -> f64 {
    let m = xs
        .iter()
        .filter(|(_, w)| *w > 0.0)
        .map(|(x, _)| *x)
        .fold(f64::INFINITY, f64::min);
    if m == f64::INFINITY || beta.is_infinite() {
        return m;
    }
    let b = beta.value();
    let s: f64 = xs
        .iter()
        .filter(|(x, w)| *w > 0.0 && *x < f64::INFINITY)
        .map(|(x, w)| w * (-b * (x - m)).exp())
        .sum();
    m - s.ln() / b
}

/// Two-term Shannon-deformed sum on raw values of the given mode.
pub fn oplus_beta(x: f64, y: f64, beta: Beta, mode: Mode) -> f64 {
    let s = mode.sign();
    s * lse_min([s * x, s * y], beta)
}

pub fn thermo_add_n(xs: &[ExtReal], beta: Beta, entropy: &Entropy) -> Result<ExtReal> {
    Ok(thermo_add_n_detailed(xs, beta, entropy)?.value)
}

/// Entropy-deformed sum `min_p { Σ pᵢ xᵢ - β⁻¹ S(p) }` (max-plus by duality).
pub fn thermo_add_n_detailed(xs: &[ExtReal], beta: Beta, entropy: &Entropy) -> Result<ThermoSum> {
    let first = xs.first().ok_or_else(|| Error::EmptyInput("deformed sum of no terms".into()))?;
    let mode = first.mode();
    if xs.iter().any(|x| x.mode() != mode) {
        return Err(Error::ModeMismatch);
    }
    let entropy = entropy.validated()?;
    let s = mode.sign();
    let finite: Vec<f64> = xs.iter().filter(|x| !x.is_zero()).map(|x| s * x.value()).collect();
    let wrap = |v: f64, resolution| ThermoSum { value: ExtReal { value: s * v, mode }, resolution };

    if finite.is_empty() {
        return Ok(wrap(f64::INFINITY, Resolution::Tropical));
    }
    let m = finite.iter().copied().fold(f64::INFINITY, f64::min);
    if beta.is_infinite() || finite.len() == 1 {
        return Ok(wrap(m, Resolution::Tropical));
    }
    if entropy.is_shannon() {
        return Ok(wrap(lse_min(finite, beta), Resolution::ClosedForm));
    }
    let shifted: Vec<f64> = finite.iter().map(|x| x - m).collect();
    let (v, res) = minimize_free_energy(&shifted, beta.value(), &entropy);
    Ok(wrap(m + v, res))
}

fn objective(p: &[f64], xs: &[f64], beta: f64, entropy: &Entropy) -> f64 {
    let energy: f64 = p.iter().zip(xs).filter(|(pi, _)| **pi > 0.0).map(|(pi, x)| pi * x).sum();
    energy - entropy.eval(p) / beta
}

fn minimize_free_energy(xs: &[f64], beta: f64, entropy: &Entropy) -> (f64, Resolution) {
    // Gibbs weights are the Shannon optimum and usually land near the deformed one.
    let w: Vec<f64> = xs.iter().map(|x| (-beta * x).exp()).collect();
    let z: f64 = w.iter().sum();
    let gibbs: Vec<f64> = w.iter().map(|x| x / z).collect();
    simplex_min(xs.len(), &|p: &[f64]| objective(p, xs, beta, entropy), Some(gibbs))
}

/// Global minimum of `f` over the probability simplex of dimension `n ≥ 1`.
///
/// Two coordinates: grid search then golden-section refinement. More: multi-start
/// pairwise-exchange descent from the barycenter, the vertices, the optional hint
/// and a fixed set of Dirichlet samples.
pub(crate) fn simplex_min(n: usize, f: &dyn Fn(&[f64]) -> f64, hint: Option<Vec<f64>>) -> (f64, Resolution) {
    match n {
        0 => (f64::INFINITY, Resolution::Tropical),
        1 => (f(&[1.0]), Resolution::Tropical),
        2 => minimize_pair(f),
        _ => minimize_simplex(n, f, hint),
    }
}

fn minimize_pair(f: &dyn Fn(&[f64]) -> f64) -> (f64, Resolution) {
    let g = |p: f64| f(&[p, 1.0 - p]);
    let step = 1.0 / GRID_POINTS as f64;
    let (mut best_i, mut best) = (0, g(0.0));
    for i in 1..=GRID_POINTS {
        let v = g(i as f64 * step);
        if v < best {
            best = v;
            best_i = i;
        }
    }
    let lo = best_i.saturating_sub(1) as f64 * step;
    let hi = ((best_i + 1).min(GRID_POINTS)) as f64 * step;
    let (_, v) = golden(&g, lo, hi, GOLDEN_TOL);
    (v.min(best), Resolution::GoldenSection { grid_step: step, bracket: GOLDEN_TOL })
}

fn minimize_simplex(n: usize, f: &dyn Fn(&[f64]) -> f64, hint: Option<Vec<f64>>) -> (f64, Resolution) {
    let mut starts: Vec<Vec<f64>> = vec![vec![1.0 / n as f64; n]];
    starts.extend(hint);
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        starts.push(e);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    for _ in 0..RANDOM_STARTS {
        let g: Vec<f64> = (0..n).map(|_| -rng.gen_range(f64::MIN_POSITIVE..1.0).ln()).collect();
        let s: f64 = g.iter().sum();
        starts.push(g.iter().map(|x| x / s).collect());
    }

    let mut best = f64::INFINITY;
    let mut max_sweeps = 0;
    for p in &starts {
        let (v, sweeps) = pairwise_descent(p.clone(), f);
        best = best.min(v);
        max_sweeps = max_sweeps.max(sweeps);
    }
    (best, Resolution::MultiStart { starts: starts.len(), sweeps: max_sweeps, tol: DESCENT_TOL })
}

/// Moves mass between pairs of coordinates, one exact line search at a time.
fn pairwise_descent(mut p: Vec<f64>, f: &dyn Fn(&[f64]) -> f64) -> (f64, usize) {
    let n = p.len();
    let mut current = f(&p);
    for sweep in 1..=MAX_SWEEPS {
        let before = current;
        for i in 0..n {
            for j in (i + 1)..n {
                let (pi, pj) = (p[i], p[j]);
                let total = pi + pj;
                if total <= 0.0 {
                    continue;
                }
                let h = |t: f64| {
                    let mut q = p.clone();
                    q[i] = t;
                    q[j] = total - t;
                    f(&q)
                };
                let (t, v) = golden(&h, 0.0, total, GOLDEN_TOL * total.max(1e-300));
                let (t, v) = [(0.0, h(0.0)), (total, h(total)), (t, v)]
                    .into_iter()
                    .fold((pi, current), |acc, c| if c.1 < acc.1 { c } else { acc });
                if v < current {
                    p[i] = t;
                    p[j] = total - t;
                    current = v;
                }
            }
        }
        if before - current <= DESCENT_TOL * (1.0 + current.abs()) {
            return (current, sweep);
        }
    }
    (current, MAX_SWEEPS)
}

fn golden<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    [(c, fc), (d, fd), (x, fx)]
        .into_iter()
        .fold((x, fx), |acc, c| if c.1 < acc.1 { c } else { acc })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(xs: &[f64]) -> Vec<ExtReal> {
        xs.iter().map(|&x| ExtReal::min_plus(x)).collect()
    }

    fn b(x: f64) -> Beta {
        Beta::new(x).unwrap()
    }

    #[test]
    fn shannon_zero_zero() {
        let v = thermo_add_n(&mp(&[0.0, 0.0]), b(1.0), &Entropy::Shannon).unwrap();
        assert!((v.value() + 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn tropical_limit_is_min() {
        let v = thermo_add_n(&mp(&[3.0, 5.0, 1.0]), Beta::INFINITY, &Entropy::Shannon).unwrap();
        assert_eq!(v.value(), 1.0);
    }

    #[test]
    fn infinities_are_dropped() {
        let v = thermo_add_n(&mp(&[f64::INFINITY, 2.0]), b(3.0), &Entropy::Shannon).unwrap();
        assert_eq!(v.value(), 2.0);
        let v = thermo_add_n(&mp(&[f64::INFINITY; 3]), b(3.0), &Entropy::Shannon).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn empty_input_errors() {
        assert!(matches!(thermo_add_n(&[], b(1.0), &Entropy::Shannon), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn tsallis_pair_matches_closed_form() {
        // Tsallis index 2 on two summands is a quadratic in p with an interior optimum.
        let (x, y, beta) = (0.0, 1.0, 2.0);
        let t = Entropy::tsallis(2.0).unwrap();
        let v = thermo_add_n(&mp(&[x, y]), b(beta), &t).unwrap().value();
        // f(p) = p x + (1-p) y - 2 p (1-p) / beta, minimized at p* below.
        let p = ((y - x) * beta / 2.0 + 1.0) / 2.0;
        let p = p.clamp(0.0, 1.0);
        let expect = p * x + (1.0 - p) * y - 2.0 * p * (1.0 - p) / beta;
        assert!((v - expect).abs() < 1e-10, "{v} vs {expect}");
    }

    #[test]
    fn simplex_descent_agrees_with_shannon_closed_form() {
        // With many starts the generic minimizer must recover log-sum-exp.
        let xs = [0.3, -0.2, 1.5, 0.0];
        let (v, res) = minimize_free_energy(&xs, 1.7, &Entropy::Shannon);
        let exact = lse_min(xs, b(1.7));
        assert!((v - exact).abs() < 1e-9, "{v} vs {exact}");
        assert!(matches!(res, Resolution::MultiStart { .. }));
    }

    #[test]
    fn max_plus_by_duality() {
        let xs: Vec<ExtReal> = [0.0, 0.0].iter().map(|&x| ExtReal::max_plus(x)).collect();
        let v = thermo_add_n(&xs, b(1.0), &Entropy::Shannon).unwrap();
        assert!((v.value() - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn weighted_counts_multiplicity() {
        let w = lse_min_weighted(&[(1.0, 3.0)], b(2.0));
        let u = lse_min([1.0, 1.0, 1.0], b(2.0));
        assert!((w - u).abs() < 1e-14);
        assert_eq!(lse_min_weighted(&[(1.0, 3.0), (0.5, 1.0)], Beta::INFINITY), 0.5);
    }
}

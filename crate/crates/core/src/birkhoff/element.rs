use serde::{Deserialize, Serialize};

use crate::semiring::{lse_min_weighted, Beta, Mode};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Scalar,
    /// Functions on `{1, …, N}` with pointwise operations.
    Sequence,
    /// Power series truncated after `t^N`. Sums are coefficient-wise; products are
    /// deformed convolutions `(a ⊙ b)ₙ = ⊕_{i+j=n} (aᵢ + bⱼ)`, the image of the
    /// Cauchy product under `-β⁻¹ log`.
    Series,
}

/// A value of a thermodynamic semiring: scalar, sequence or truncated series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Element {
    shape: Shape,
    #[serde(default)]
    mode: Mode,
    #[serde(with = "crate::serde_ext::ext_vec")]
    coeffs: Vec<f64>,
}

impl Element {
    pub fn new(shape: Shape, mode: Mode, coeffs: Vec<f64>) -> Result<Element> {
        if coeffs.is_empty() {
            return Err(Error::EmptyInput("element with no coefficients".into()));
        }
        if shape == Shape::Scalar && coeffs.len() != 1 {
            return Err(Error::ShapeMismatch("a scalar has exactly one coefficient".into()));
        }
        let forbidden = -mode.zero();
        if coeffs.iter().any(|x| x.is_nan() || *x == forbidden) {
            return Err(Error::Domain(format!("coefficient outside the {mode:?} semiring")));
        }
        Ok(Element { shape, mode, coeffs })
    }

    /// Re-runs validation, e.g. after deserialization.
    pub fn validated(self) -> Result<Element> {
        Element::new(self.shape, self.mode, self.coeffs)
    }

    pub fn scalar(x: f64) -> Element {
        Element::new(Shape::Scalar, Mode::MinPlus, vec![x]).expect("valid min-plus scalar")
    }

    pub fn sequence(xs: Vec<f64>) -> Element {
        Element::new(Shape::Sequence, Mode::MinPlus, xs).expect("valid min-plus sequence")
    }

    /// Coefficients of `t⁰, t¹, …, t^N`.
    pub fn series(xs: Vec<f64>) -> Element {
        Element::new(Shape::Series, Mode::MinPlus, xs).expect("valid min-plus series")
    }

    pub fn in_mode(mut self, mode: Mode) -> Result<Element> {
        self.mode = mode;
        self.validated()
    }

    pub fn zero(shape: Shape, mode: Mode, len: usize) -> Element {
        Element { shape, mode, coeffs: vec![mode.zero(); len] }
    }

    pub fn one(shape: Shape, mode: Mode, len: usize) -> Element {
        let coeffs = match shape {
            Shape::Series => (0..len).map(|j| if j == 0 { 0.0 } else { mode.zero() }).collect(),
            _ => vec![0.0; len],
        };
        Element { shape, mode, coeffs }
    }

    pub fn zero_like(&self) -> Element {
        Element::zero(self.shape, self.mode, self.len())
    }

    pub fn one_like(&self) -> Element {
        Element::one(self.shape, self.mode, self.len())
    }

    /// Same shape as `self`, every coefficient replaced by `x` where that makes
    /// sense: constant sequences, or `x·t⁰` for series.
    pub fn constant_like(&self, x: f64) -> Element {
        let mut e = self.one_like();
        e.coeffs.iter_mut().for_each(|c| {
            if *c == 0.0 {
                *c = x;
            }
        });
        e
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| self.mode.is_zero(c))
    }

    pub fn compatible(&self, other: &Element) -> Result<()> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch);
        }
        if self.shape != other.shape || self.len() != other.len() {
            return Err(Error::ShapeMismatch(format!(
                "{:?}[{}] vs {:?}[{}]",
                self.shape,
                self.len(),
                other.shape,
                other.len()
            )));
        }
        Ok(())
    }

    pub fn oplus(&self, other: &Element, beta: Beta) -> Result<Element> {
        Element::sum(self, &[(self, 1.0), (other, 1.0)], beta)
    }

    /// Deformed sum of several elements, each counted with a positive multiplicity.
    /// Multiplicities only matter at finite β. An empty list gives the additive
    /// identity shaped like `template`.
    pub fn sum(template: &Element, terms: &[(&Element, f64)], beta: Beta) -> Result<Element> {
        for (t, _) in terms {
            template.compatible(t)?;
        }
        let s = template.mode.sign();
        let coeffs = (0..template.len())
            .map(|j| {
                let xs: Vec<(f64, f64)> = terms.iter().map(|(t, w)| (s * t.coeffs[j], *w)).collect();
                s * lse_min_weighted(&xs, beta)
            })
            .collect();
        Ok(Element { shape: template.shape, mode: template.mode, coeffs })
    }

    /// Semiring product. Series use the deformed convolution, so β matters there.
    pub fn odot(&self, other: &Element, beta: Beta) -> Result<Element> {
        self.compatible(other)?;
        let mode = self.mode;
        let coeffs = match self.shape {
            Shape::Scalar | Shape::Sequence => {
                self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| mode.trop_mul(*a, *b)).collect()
            }
            Shape::Series => {
                let s = mode.sign();
                (0..self.len())
                    .map(|n| {
                        let xs: Vec<(f64, f64)> = (0..=n)
                            .map(|i| (s * mode.trop_mul(self.coeffs[i], other.coeffs[n - i]), 1.0))
                            .collect();
                        s * lse_min_weighted(&xs, beta)
                    })
                    .collect()
            }
        };
        Ok(Element { shape: self.shape, mode, coeffs })
    }

    /// `c ⊙ self` for a finite scalar `c`.
    pub fn shift(&self, c: f64) -> Element {
        let mode = self.mode;
        Element { shape: self.shape, mode, coeffs: self.coeffs.iter().map(|x| mode.trop_mul(*x, c)).collect() }
    }

    /// Largest coordinate-wise distance; equal infinities count as zero.
    pub fn residual(&self, other: &Element) -> Result<f64> {
        self.compatible(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| coord_gap(*a, *b)).fold(0.0, f64::max))
    }

    /// Coordinate-wise semiring order (`≤` for min-plus, `≥` for max-plus).
    pub fn le(&self, other: &Element) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| self.mode.le(*a, *b)))
    }
}

pub(crate) fn coord_gap(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs()
    }
}

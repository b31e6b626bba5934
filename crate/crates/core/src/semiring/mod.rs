//! Extended reals with tropical and entropy-deformed addition.
//!
//! Min-plus is the native convention: `⊕ = min`, `⊙ = +`, additive identity `+∞`.
//! Max-plus values are handled by negation duality.

mod entropy;
mod thermo;
mod tree;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use entropy::{Entropy, ProbVector};
pub use thermo::{
    lse_min, lse_min_weighted, oplus_beta, thermo_add_n, thermo_add_n_detailed, Resolution,
    ThermoSum,
};
pub use tree::{tree_compose, PlanarTree};
pub(crate) use thermo::simplex_min;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    MinPlus,
    MaxPlus,
}

impl Mode {
    /// Sign that maps values of this mode into min-plus values.
    pub fn sign(self) -> f64 {
        match self {
            Mode::MinPlus => 1.0,
            Mode::MaxPlus => -1.0,
        }
    }

    /// Additive identity of the mode.
    pub fn zero(self) -> f64 {
        match self {
            Mode::MinPlus => f64::INFINITY,
            Mode::MaxPlus => f64::NEG_INFINITY,
        }
    }

    pub fn is_zero(self, x: f64) -> bool {
        x == self.zero()
    }

    /// Tropical sum of two raw values.
    pub fn trop_add(self, x: f64, y: f64) -> f64 {
        match self {
            Mode::MinPlus => x.min(y),
            Mode::MaxPlus => x.max(y),
        }
    }

    /// Tropical product of two raw values with the additive identity absorbing.
    pub fn trop_mul(self, x: f64, y: f64) -> f64 {
        if self.is_zero(x) || self.is_zero(y) {
            self.zero()
        } else {
            x + y
        }
    }

    /// `true` when `x` is at least as good as `y` in the semiring order
    /// (smaller for min-plus, larger for max-plus).
    pub fn le(self, x: f64, y: f64) -> bool {
        match self {
            Mode::MinPlus => x <= y,
            Mode::MaxPlus => x >= y,
        }
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "min-plus" | "min" => Ok(Mode::MinPlus),
            "max-plus" | "max" => Ok(Mode::MaxPlus),
            _ => Err(Error::Parse(format!("unknown semiring mode '{s}'"))),
        }
    }
}

/// Inverse temperature. Either a positive finite real or `∞`; zero is rejected.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Beta(f64);

impl Beta {
    pub const INFINITY: Beta = Beta(f64::INFINITY);

    pub fn new(b: f64) -> Result<Beta> {
        if b.is_nan() || b <= 0.0 {
            return Err(Error::InvalidBeta(format!(
                "inverse temperature must be > 0 or infinite, got {b}"
            )));
        }
        Ok(Beta(b))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// `1/β`, zero at infinite β.
    pub fn inv(self) -> f64 {
        if self.is_infinite() {
            0.0
        } else {
            1.0 / self.0
        }
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for Beta {
    type Err = Error;
    fn from_str(s: &str) -> Result<Beta> {
        match s.trim() {
            "inf" | "infinity" | "∞" | "+inf" => Ok(Beta::INFINITY),
            t => {
                let b: f64 = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("cannot parse inverse temperature '{t}'")))?;
                Beta::new(b)
            }
        }
    }
}

impl Serialize for Beta {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Beta {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Beta, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let parsed = match &v {
            serde_json::Value::Number(n) => n.as_f64().map(Beta::new),
            serde_json::Value::String(s) => Some(s.parse()),
            _ => None,
        };
        match parsed {
            Some(Ok(b)) => Ok(b),
            Some(Err(e)) => Err(serde::de::Error::custom(e.to_string())),
            None => Err(serde::de::Error::custom("expected a number or \"inf\"")),
        }
    }
}

/// A point of `ℝ ∪ {∞}` tagged with its semiring mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtReal {
    value: f64,
    mode: Mode,
}

impl ExtReal {
    pub fn try_new(value: f64, mode: Mode) -> Result<ExtReal> {
        let bad = value.is_nan()
            || (mode == Mode::MinPlus && value == f64::NEG_INFINITY)
            || (mode == Mode::MaxPlus && value == f64::INFINITY);
        if bad {
            return Err(Error::Domain(format!("{value} is not a value of the {mode:?} semiring")));
        }
        Ok(ExtReal { value, mode })
    }

    /// Min-plus value. Panics on NaN or `-∞`.
    pub fn min_plus(value: f64) -> ExtReal {
        ExtReal::try_new(value, Mode::MinPlus).expect("invalid min-plus value")
    }

    /// Max-plus value. Panics on NaN or `+∞`.
    pub fn max_plus(value: f64) -> ExtReal {
        ExtReal::try_new(value, Mode::MaxPlus).expect("invalid max-plus value")
    }

    pub fn zero(mode: Mode) -> ExtReal {
        ExtReal { value: mode.zero(), mode }
    }

    pub fn one(mode: Mode) -> ExtReal {
        ExtReal { value: 0.0, mode }
    }

    pub fn value(self) -> f64 {
        self.value
    }

    pub fn mode(self) -> Mode {
        self.mode
    }

    pub fn is_zero(self) -> bool {
        self.mode.is_zero(self.value)
    }

    pub fn oplus(self, other: ExtReal) -> Result<ExtReal> {
        self.check(other)?;
        Ok(ExtReal { value: self.mode.trop_add(self.value, other.value), mode: self.mode })
    }

    pub fn odot(self, other: ExtReal) -> Result<ExtReal> {
        self.check(other)?;
        Ok(ExtReal { value: self.mode.trop_mul(self.value, other.value), mode: self.mode })
    }

    fn check(self, other: ExtReal) -> Result<()> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch);
        }
        Ok(())
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_infinite() {
            write!(f, "{}inf", if self.value < 0.0 { "-" } else { "" })
        } else {
            write!(f, "{}", self.value)
        }
    }
}

/// Tropical sum and product of two values of the same mode.
pub fn trop_ops(x: ExtReal, y: ExtReal) -> Result<(ExtReal, ExtReal)> {
    Ok((x.oplus(y)?, x.odot(y)?))
}

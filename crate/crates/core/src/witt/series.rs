use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Power series `c₀ + c₁t + … + c_N t^N` over exact rationals, truncated after `t^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatSeries {
    coeffs: Vec<BigRational>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RatSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Result<RatSeries> {
        if coeffs.is_empty() {
            return Err(Error::EmptyInput("a series needs at least the constant coefficient".into()));
        }
        Ok(RatSeries { coeffs })
    }

    pub fn constant(c: BigRational, order: usize) -> RatSeries {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = c;
        RatSeries { coeffs }
    }

    pub fn one(order: usize) -> RatSeries {
        RatSeries::constant(BigRational::one(), order)
    }

    /// The series `t`.
    pub fn t(order: usize) -> RatSeries {
        let mut s = RatSeries::constant(BigRational::zero(), order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn check(&self, other: &RatSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::DimensionMismatch(format!(
                "series truncated at orders {} and {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &RatSeries) -> Result<RatSeries> {
        self.check(other)?;
        Ok(RatSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &RatSeries) -> Result<RatSeries> {
        self.check(other)?;
        Ok(RatSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: &BigRational) -> RatSeries {
        RatSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &RatSeries) -> Result<RatSeries> {
        self.check(other)?;
        let n = self.coeffs.len();
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(RatSeries { coeffs: out })
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inv(&self) -> Result<RatSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Singular("series with zero constant term has no inverse".into()));
        }
        let n = self.coeffs.len();
        let mut out = vec![BigRational::zero(); n];
        out[0] = c0.recip();
        for k in 1..n {
            let mut s = BigRational::zero();
            for i in 1..=k {
                s += &self.coeffs[i] * &out[k - i];
            }
            out[k] = -s / c0;
        }
        Ok(RatSeries { coeffs: out })
    }

    pub fn pow(&self, e: i64) -> Result<RatSeries> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatSeries::one(self.order());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// `f(c·t)`.
    pub fn substitute(&self, c: &BigRational) -> RatSeries {
        let mut p = BigRational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &p);
            p *= c;
        }
        RatSeries { coeffs }
    }

    /// Parses expressions in `t` such as `(1-2t)^-1`, `1 + t/2 - 3t^2` or
    /// `(1-t)^-1 * (1-3t)^-2`, truncating after `t^order`.
    pub fn parse(src: &str, order: usize) -> Result<RatSeries> {
        let mut p = Parser { s: src.as_bytes(), i: 0, order };
        let v = p.expr()?;
        p.ws();
        if p.i != p.s.len() {
            return Err(Error::Parse(format!("unexpected '{}' at offset {} in {src:?}", p.s[p.i] as char, p.i)));
        }
        Ok(v)
    }
}

impl std::fmt::Display for RatSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show = j == 0 || !mag.is_one();
            match (show, j) {
                (true, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}t")?,
                (true, _) => write!(f, "{mag}t^{j}")?,
                (false, 1) => write!(f, "t")?,
                (false, _) => write!(f, "t^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    order: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn err<T>(&self, what: &str) -> Result<T> {
        Err(Error::Parse(format!("{what} at offset {}", self.i)))
    }

    fn expr(&mut self) -> Result<RatSeries> {
        let neg = if self.peek() == Some(b'-') {
            self.i += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = acc.scale(&rat(-1));
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.i += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatSeries> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    acc = acc.mul(&self.factor()?)?;
                }
                Some(b'/') => {
                    self.i += 1;
                    acc = acc.mul(&self.factor()?.inv()?)?;
                }
                Some(c) if c == b'(' || c == b't' || c.is_ascii_digit() => acc = acc.mul(&self.factor()?)?,
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatSeries> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let neg = match self.peek() {
                Some(b'-') => {
                    self.i += 1;
                    true
                }
                Some(b'+') => {
                    self.i += 1;
                    false
                }
                _ => false,
            };
            self.ws();
            let start = self.i;
            while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                self.i += 1;
            }
            if start == self.i {
                return self.err("expected an integer exponent");
            }
            let e: i64 = std::str::from_utf8(&self.s[start..self.i])
                .expect("ascii")
                .parse()
                .map_err(|_| Error::Parse("exponent out of range".into()))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatSeries> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.i += 1;
                Ok(v)
            }
            Some(b't') => {
                self.i += 1;
                Ok(RatSeries::t(self.order))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                    self.i += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.s[start..self.i]).expect("ascii").parse().expect("digits");
                Ok(RatSeries::constant(BigRational::from_integer(n), self.order))
            }
            _ => self.err("expected a number, 't' or '('"),
        }
    }
}

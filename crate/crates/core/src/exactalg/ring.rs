use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::AlgError;

/// Exact rationals.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Commutative ring of matrix entries.
pub trait Ring:
    Zero + One + Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_q(c: &Q) -> Self;
    fn parse_str(s: &str) -> Result<Self, AlgError>;
    /// Number of variables actually occurring.
    fn var_count(&self) -> usize;

    fn from_i64(n: i64) -> Self {
        Self::from_q(&q(n))
    }

    fn accumulate(&mut self, other: &Self) {
        *self = self.plus(other);
    }

    /// Writes the entry as it appears in canonical keys.
    fn write_key(&self, w: &mut dyn fmt::Write) -> fmt::Result {
        write!(w, "{self}")
    }

    fn scale_int(&self, n: i64) -> Self {
        match n {
            0 => Self::zero(),
            1 => self.clone(),
            -1 => self.negate(),
            _ => self.times(&Self::from_i64(n)),
        }
    }
}

impl Ring for Q {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_q(c: &Q) -> Self {
        c.clone()
    }
    fn parse_str(s: &str) -> Result<Self, AlgError> {
        parse_rational(s)
    }
    fn var_count(&self) -> usize {
        0
    }
    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }
    fn write_key(&self, w: &mut dyn fmt::Write) -> fmt::Result {
        match (self.numer().to_i64(), self.denom().to_i64()) {
            (Some(n), Some(1)) => write!(w, "{n}"),
            (Some(n), Some(d)) => write!(w, "{n}/{d}"),
            _ => write!(w, "{self}"),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Q, AlgError> {
    let s = s.trim();
    let bad = || AlgError::Parse(format!("bad rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// "p/q", or "p" for integers.
pub fn format_rational(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{HdcError, Result};

/// Rational exponent `p = a / b` kept in lowest terms.
///
/// `a > b` always holds except for the `p = 1` convenience mode, which must be
/// requested explicitly through [`PExponent::one`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawExponent")]
pub struct PExponent {
    a: u32,
    b: u32,
}

#[derive(Deserialize)]
struct RawExponent {
    a: u32,
    b: u32,
}

impl TryFrom<RawExponent> for PExponent {
    type Error = HdcError;

    fn try_from(raw: RawExponent) -> Result<Self> {
        if raw.a == raw.b && raw.a > 0 {
            return Ok(PExponent::one());
        }
        PExponent::new(raw.a, raw.b)
    }
}

impl PExponent {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(HdcError::InvalidExponent(format!("{a}/{b}: both parts must be positive")));
        }
        let g = a.gcd(&b);
        let (a, b) = (a / g, b / g);
        if a <= b {
            return Err(HdcError::InvalidExponent(format!(
                "{a}/{b}: p must exceed 1 (p = 1 is only available as an explicit convenience mode)"
            )));
        }
        if a > 64 {
            return Err(HdcError::InvalidExponent(format!("{a}/{b}: numerator above 64 is not supported")));
        }
        Ok(PExponent { a, b })
    }

    /// The `p = 1` convenience mode (consensus string).
    pub const fn one() -> Self {
        PExponent { a: 1, b: 1 }
    }

    pub fn integer(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn numer(&self) -> u32 {
        self.a
    }

    pub fn denom(&self) -> u32 {
        self.b
    }

    pub fn is_one(&self) -> bool {
        self.a == 1 && self.b == 1
    }

    pub fn is_integral(&self) -> bool {
        self.b == 1
    }

    pub fn as_f64(&self) -> f64 {
        self.a as f64 / self.b as f64
    }

    /// Parses `a/b` or `a`. `1` is accepted only when `allow_one` is set.
    pub fn parse_with(text: &str, allow_one: bool) -> Result<Self> {
        let text = text.trim();
        let (a, b) = match text.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (text, "1"),
        };
        let parse = |s: &str| {
            s.parse::<u32>().map_err(|_| {
                HdcError::InvalidExponent(format!("{text:?}: only rational p = a/b with integer a, b is accepted"))
            })
        };
        let (a, b) = (parse(a)?, parse(b)?);
        if allow_one && a == b && a > 0 {
            return Ok(Self::one());
        }
        Self::new(a, b)
    }
}

impl FromStr for PExponent {
    type Err = HdcError;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with(s, false)
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.b)
    }
}

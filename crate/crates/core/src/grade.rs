//! Exact membership grades in the unit interval.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradeError {
    #[error("grade {0} lies outside [0, 1]")]
    OutOfRange(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse grade `{0}`")]
    Syntax(String),
}

/// A membership grade: a reduced rational `p/q` with `0 <= p/q <= 1`.
///
/// The derived ordering is the rational ordering because `Rational64`
/// compares by value and is always kept reduced with a positive
/// denominator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Grade(Rational64);

impl Grade {
    pub const ZERO: Grade = Grade(Rational64::new_raw(0, 1));
    pub const ONE: Grade = Grade(Rational64::new_raw(1, 1));

    pub fn new(numer: i64, denom: i64) -> Result<Self, GradeError> {
        if denom == 0 {
            return Err(GradeError::ZeroDenominator);
        }
        Self::from_ratio(Rational64::new(numer, denom))
    }

    pub fn from_ratio(r: Rational64) -> Result<Self, GradeError> {
        if r < Rational64::from_integer(0) || r > Rational64::from_integer(1) {
            return Err(GradeError::OutOfRange(r.to_string()));
        }
        Ok(Grade(r))
    }

    pub fn ratio(self) -> Rational64 {
        self.0
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(self) -> bool {
        self == Grade::ZERO
    }

    pub fn is_one(self) -> bool {
        self == Grade::ONE
    }

    /// `self + 1 - top`, the shift that sends `top` to 1.
    ///
    /// Requires `self <= top`; the result then stays inside [0, 1].
    pub fn lift_against(self, top: Grade) -> Grade {
        debug_assert!(self <= top);
        Grade(self.0 + Rational64::from_integer(1) - top.0)
    }

    pub fn midpoint(self, other: Grade) -> Grade {
        Grade((self.0 + other.0) / Rational64::from_integer(2))
    }
}

impl fmt::Debug for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Grade {
    type Err = GradeError;

    /// Accepts `p/q`, plain integers and finite decimals (`0.2` is read as `1/5`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let syntax = || GradeError::Syntax(s.to_string());
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| syntax())?;
            let q: i64 = q.trim().parse().map_err(|_| syntax())?;
            return Grade::new(p, q);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax());
            }
            let int: i64 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| syntax())?
            };
            if int < 0 || s.starts_with('-') {
                return Err(GradeError::OutOfRange(s.to_string()));
            }
            let scale = 10i64.pow(frac.len() as u32);
            let frac: i64 = frac.parse().map_err(|_| syntax())?;
            let numer = int
                .checked_mul(scale)
                .and_then(|v| v.checked_add(frac))
                .ok_or_else(|| GradeError::OutOfRange(s.to_string()))?;
            return Grade::new(numer, scale);
        }
        let v: i64 = s.parse().map_err(|_| syntax())?;
        Grade::new(v, 1)
    }
}

impl TryFrom<String> for Grade {
    type Error = GradeError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Grade> for String {
    fn from(g: Grade) -> String {
        g.to_string()
    }
}

/// Parses a comma separated grade list such as `0,1/2,1`.
pub fn parse_grade_list(s: &str) -> Result<Vec<Grade>, GradeError> {
    let mut grades = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Grade>, _>>()?;
    grades.sort();
    grades.dedup();
    Ok(grades)
}

/// Shorthand used heavily in tests and builtins. Panics on invalid input.
pub fn g(numer: i64, denom: i64) -> Grade {
    Grade::new(numer, denom).expect("valid grade literal")
}

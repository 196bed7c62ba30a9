//! Exact rational helpers shared by every solver.
//!
//! All thresholds of the form `x > ε·k` are decided in integer arithmetic:
//! the accuracy parameter is stored as a reduced fraction `num / den` and
//! every comparison is cross-multiplied in `u128`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const EPS_SCALE: u64 = 1_000_000_000;

/// Accuracy parameter of an approximation scheme, strictly inside (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Epsilon {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Epsilon {
    /// Rounds `value` to nine decimal places and reduces the fraction.
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 || value >= 1.0 {
            return Err(Error::InvalidEpsilon(value));
        }
        let num = ((value * EPS_SCALE as f64).round() as u64).clamp(1, EPS_SCALE - 1);
        Ok(Self::from_ratio(num, EPS_SCALE).expect("clamped into (0, 1)"))
    }

    pub fn from_ratio(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 || num >= den {
            return Err(Error::InvalidEpsilon(num as f64 / den.max(1) as f64));
        }
        let g = gcd(num, den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `x > ε·k`
    pub fn exceeds_fraction_of(&self, x: u64, k: u64) -> bool {
        x as u128 * self.den as u128 > k as u128 * self.num as u128
    }

    /// `count ≤ 1/ε`
    pub fn count_within_inverse(&self, count: usize) -> bool {
        count as u128 * self.num as u128 <= self.den as u128
    }

    /// `⌊1/ε⌋`
    pub fn inverse_floor(&self) -> u64 {
        self.den / self.num
    }

    /// `ε ≤ 1/k`, i.e. `ε·k ≤ 1`. True for `k = 0`.
    pub fn at_most_inverse_of(&self, k: u64) -> bool {
        self.num as u128 * k as u128 <= self.den as u128
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", trim_float(self.value()))
    }
}

/// Formats with at most six decimals and no trailing zeros.
pub fn trim_float(x: f64) -> String {
    let s = format!("{:.6}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Profit-to-weight ratio compared by cross-multiplication.
///
/// The order is total: zero-weight sets with positive profit rank above
/// every positive-weight set; among the rest, positive ratios compare by
/// `p₁·w₂` against `p₂·w₁`; the empty-valued `(0, 0)` ranks below all
/// positive ratios but above zero-profit sets of positive weight.
#[derive(Debug, Clone, Copy)]
pub struct Ratio {
    pub profit: u64,
    pub weight: u64,
}

impl Ratio {
    pub fn new(profit: u64, weight: u64) -> Self {
        Self { profit, weight }
    }

    fn class(&self) -> u8 {
        match (self.profit, self.weight) {
            (p, 0) if p > 0 => 3,
            (_, 0) => 1,
            (0, _) => 0,
            _ => 2,
        }
    }

    pub fn as_f64(&self) -> f64 {
        if self.weight == 0 {
            if self.profit == 0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.profit as f64 / self.weight as f64
        }
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.class(), other.class());
        if a != b {
            return a.cmp(&b);
        }
        if a == 2 {
            let lhs = self.profit as u128 * other.weight as u128;
            let rhs = other.profit as u128 * self.weight as u128;
            lhs.cmp(&rhs)
        } else {
            Ordering::Equal
        }
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ratio {}

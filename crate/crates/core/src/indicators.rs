//! Indicator functions selecting which neighbourhoods count for an event.
//!
//! Everything is evaluated literally from the set definitions. The strict
//! coverage comparisons of the s-indicators use exact rational arithmetic.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::universe::SubsetMask;

/// A coverage fraction `s` in `[0, 1]`, held as an exact rational.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Share {
    num: u64,
    den: u64,
}

impl Share {
    pub const ZERO: Share = Share { num: 0, den: 1 };
    pub const ONE: Share = Share { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::BadShare(format!("{num}/{den}")));
        }
        let g = gcd(num, den);
        Ok(Share {
            num: num / g,
            den: den / g,
        })
    }

    /// Uses the shortest decimal that round-trips to `s`, so `0.1` means
    /// one tenth rather than its binary approximation.
    pub fn from_f64(s: f64) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::BadShare(s.to_string()));
        }
        format!("{s}").parse()
    }

    pub fn numer(self) -> u64 {
        self.num
    }

    pub fn denom(self) -> u64 {
        self.den
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `count > s * of`, exactly.
    #[inline]
    pub fn exceeded_by(self, count: usize, of: usize) -> bool {
        count as u128 * self.den as u128 > self.num as u128 * of as u128
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl FromStr for Share {
    type Err = Error;

    /// Accepts plain decimals (`0`, `0.25`, `1.0`, `.5`) and fractions (`1/3`).
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::BadShare(text.to_string());
        let t = text.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d = d.trim().parse().map_err(|_| bad())?;
            return Share::new(n, d).map_err(|_| bad());
        }
        let (int, frac) = t.split_once('.').unwrap_or((t, ""));
        if int.is_empty() && frac.is_empty()
            || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
            || frac.len() > 18
        {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let num = int
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(bad)?;
        Share::new(num, den).map_err(|_| bad())
    }
}

impl fmt::Debug for Share {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Exact decimal when the denominator allows one (`0.25`), otherwise the
/// reduced fraction (`1/3`). Either form parses back to the same share.
impl fmt::Display for Share {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (mut d, mut twos, mut fives) = (self.den, 0u32, 0u32);
        while d % 2 == 0 {
            d /= 2;
            twos += 1;
        }
        while d % 5 == 0 {
            d /= 5;
            fives += 1;
        }
        let digits = twos.max(fives);
        let scale = 10u64.checked_pow(digits);
        match scale {
            Some(scale) if d == 1 => {
                let scaled = self.num * (scale / self.den);
                let (int, frac) = (scaled / scale, scaled % scale);
                if digits == 0 {
                    write!(f, "{int}")
                } else {
                    write!(f, "{int}.{frac:0w$}", w = digits as usize)
                }
            }
            _ => write!(f, "{}/{}", self.num, self.den),
        }
    }
}

/// The indicator families. `x` is the event, `y` the candidate neighbourhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndicatorKind {
    /// `x ∩ y ≠ ∅`
    Upper,
    /// `y ⊆ x`
    Lower,
    /// `y ≠ ∅`, ignoring `x`
    NonEmpty,
    /// `x ⊆ y`
    Subset,
    /// `x = y`
    Equality,
    /// `|x ∩ y| ≥ k`
    UpperK(usize),
    /// `y ⊆ x` and `|y| ≥ k`
    LowerK(usize),
    /// `x = y` or `|x ∩ y| > s·|x|`
    UpperS(Share),
    /// `x = y` or (`y ⊊ x` and `|y| > s·|x|`)
    LowerS(Share),
}

impl IndicatorKind {
    /// Checks parameters against a universe of `n` elements.
    pub fn validate(self, n: usize) -> Result<Self> {
        match self {
            IndicatorKind::UpperK(k) | IndicatorKind::LowerK(k) if k < 1 || k > n => {
                Err(Error::BadK { k, n })
            }
            _ => Ok(self),
        }
    }

    #[inline]
    pub fn eval(self, x: SubsetMask, y: SubsetMask) -> bool {
        eval_indicator(self, x, y)
    }
}

#[inline]
pub fn eval_indicator(kind: IndicatorKind, x: SubsetMask, y: SubsetMask) -> bool {
    match kind {
        IndicatorKind::Upper => !x.is_disjoint(y),
        IndicatorKind::Lower => y.is_subset_of(x),
        IndicatorKind::NonEmpty => !y.is_empty(),
        IndicatorKind::Subset => x.is_subset_of(y),
        IndicatorKind::Equality => x == y,
        IndicatorKind::UpperK(k) => x.intersection(y).len() >= k,
        IndicatorKind::LowerK(k) => y.is_subset_of(x) && y.len() >= k,
        IndicatorKind::UpperS(s) => x == y || s.exceeded_by(x.intersection(y).len(), x.len()),
        IndicatorKind::LowerS(s) => {
            x == y || (y.is_subset_of(x) && y != x && s.exceeded_by(y.len(), x.len()))
        }
    }
}

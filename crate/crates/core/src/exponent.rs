//! Exact nonnegative rationals, used for the coefficient `t` of a pair
//! `(R, a^t)` and for the ratios reported by the F-signature module.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A reduced fraction `num / den` with `den >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exponent {
    num: u64,
    den: u64,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent { num: 0, den: 1 };
    pub const ONE: Exponent = Exponent { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Exponent> {
        if den == 0 {
            return Err(Error::precondition("zero denominator"));
        }
        let g = num.gcd(&den);
        Ok(Exponent {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(n: u64) -> Exponent {
        Exponent { num: n, den: 1 }
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `⌈self · q⌉`.
    pub fn ceil_mul(self, q: u64) -> u64 {
        let prod = self.num as u128 * q as u128;
        prod.div_ceil(self.den as u128) as u64
    }

    /// `⌊self · q⌋`.
    pub fn floor_mul(self, q: u64) -> u64 {
        (self.num as u128 * q as u128 / self.den as u128) as u64
    }

    pub fn add(self, other: Exponent) -> Exponent {
        let den = self.den.lcm(&other.den);
        let num = self.num * (den / self.den) + other.num * (den / other.den);
        Exponent::new(num, den).unwrap()
    }

    pub fn mul_int(self, k: u64) -> Exponent {
        Exponent::new(self.num * k, self.den).unwrap()
    }

    pub fn div_int(self, k: u64) -> Result<Exponent> {
        Exponent::new(self.num, self.den * k)
    }

    /// Always `num/den`, even for integers.
    pub fn fraction_string(self) -> String {
        format!("{}/{}", self.num, self.den)
    }
}

impl Default for Exponent {
    fn default() -> Self {
        Exponent::ZERO
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts `a`, `a/b` and surrounding whitespace.
    fn from_str(s: &str) -> Result<Exponent> {
        let s = s.trim();
        let field = |text: &str, offset: usize| -> Result<u64> {
            let t = text.trim();
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse(offset, format!("`{t}` is not a natural number")));
            }
            t.parse::<u64>()
                .map_err(|_| Error::parse(offset, "number too large"))
        };
        match s.split_once('/') {
            None => Ok(Exponent::integer(field(s, 0)?)),
            Some((a, b)) => {
                let den = field(b, a.len() + 1)?;
                if den == 0 {
                    return Err(Error::parse(a.len() + 1, "zero denominator"));
                }
                Exponent::new(field(a, 0)?, den)
            }
        }
    }
}

//! Exact half-integer labels.
//!
//! Every angular-momentum label `j` or projection `m` is stored as its doubled
//! value, so `j = 3/2` is `HalfInt { twice: 3 }` and all label arithmetic stays
//! in the integers.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt {
    pub twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    #[inline]
    pub const fn from_twice(twice: i32) -> Self {
        HalfInt { twice }
    }

    #[inline]
    pub const fn from_int(n: i32) -> Self {
        HalfInt { twice: 2 * n }
    }

    /// A label usable as `j`: rejects negative values.
    pub fn spin(twice: i32) -> Result<Self> {
        let j = HalfInt { twice };
        if twice < 0 {
            return Err(Error::NegativeSpin(j.to_string()));
        }
        Ok(j)
    }

    #[inline]
    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    /// Dimension `2j + 1` of the spin-`j` space.
    #[inline]
    pub fn dim(self) -> usize {
        debug_assert!(self.twice >= 0);
        (self.twice + 1) as usize
    }

    /// The integer value, if this is one.
    pub fn as_integer(self) -> Option<i32> {
        self.is_integer().then_some(self.twice / 2)
    }

    /// Checks that `m` is one of `-j, -j+1, ..., j`.
    pub fn check_projection(self, m: HalfInt) -> Result<()> {
        if self.twice < 0 {
            return Err(Error::NegativeSpin(self.to_string()));
        }
        if m.twice.abs() > self.twice || (m.twice - self.twice) % 2 != 0 {
            return Err(Error::BadProjection {
                j: self.to_string(),
                m: m.to_string(),
            });
        }
        Ok(())
    }
}

/// `(-1)^x` for an integer-valued `x`, given as a doubled value.
#[inline]
pub fn phase(twice: i32) -> i32 {
    debug_assert!(twice % 2 == 0, "phase exponent must be an integer");
    if (twice / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `-j, -j+1, ..., j` in ascending order.
pub fn m_values(j: HalfInt) -> Result<Vec<HalfInt>> {
    if j.twice < 0 {
        return Err(Error::NegativeSpin(j.to_string()));
    }
    Ok((0..=j.twice)
        .map(|s| HalfInt::from_twice(-j.twice + 2 * s))
        .collect())
}

/// Triangle rule: `(j3)` occurs in `(j1) x (j2)`.
pub fn triangle(j1: HalfInt, j2: HalfInt, j3: HalfInt) -> bool {
    let (a, b, c) = (j1.twice, j2.twice, j3.twice);
    a >= 0 && b >= 0 && c >= 0 && (a + b + c) % 2 == 0 && c >= (a - b).abs() && c <= a + b
}

/// All `j` in the Kronecker product `(j1) x (j2)`, ascending.
pub fn coupled_spins(j1: HalfInt, j2: HalfInt) -> Vec<HalfInt> {
    let lo = (j1.twice - j2.twice).abs();
    let hi = j1.twice + j2.twice;
    (lo..=hi).step_by(2).map(HalfInt::from_twice).collect()
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::ParseHalfInt(s.to_string());
        match t.split_once('/') {
            None => {
                let n: i32 = t.parse().map_err(|_| bad())?;
                n.checked_mul(2).map(HalfInt::from_twice).ok_or_else(bad)
            }
            Some((num, den)) => {
                let num: i32 = num.trim().parse().map_err(|_| bad())?;
                let den: i32 = den.trim().parse().map_err(|_| bad())?;
                match den {
                    1 => num.checked_mul(2).map(HalfInt::from_twice).ok_or_else(bad),
                    2 => Ok(HalfInt::from_twice(num)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

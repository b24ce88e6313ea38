//! Exact signed square roots of rationals, and sums of them.
//!
//! Coupling coefficients in the Condon-Shortley convention are all of the form
//! `±√(p/q)`. Sums of such values (orthogonality sums, contractions) live in a
//! multi-quadratic extension of the rationals; [`SurdSum`] keeps them exact by
//! grouping terms whose radicands differ by a rational square.

use std::fmt;
use std::ops::{Mul, Neg};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Factorials are tabulated up to this argument unless [`init_factorials`]
/// is called first. Covers every symbol with `2j <= 200`.
pub const DEFAULT_FACTORIAL_BOUND: usize = 512;

static FACTORIALS: OnceLock<Vec<BigInt>> = OnceLock::new();

fn build_table(bound: usize) -> Vec<BigInt> {
    let mut table = Vec::with_capacity(bound + 1);
    let mut acc = BigInt::one();
    table.push(acc.clone());
    for n in 1..=bound {
        acc *= n;
        table.push(acc.clone());
    }
    table
}

/// Builds the factorial table with a custom bound. Returns `false` if the table
/// was already built (the existing table is kept).
pub fn init_factorials(bound: usize) -> bool {
    FACTORIALS.set(build_table(bound)).is_ok()
}

fn table() -> &'static [BigInt] {
    FACTORIALS.get_or_init(|| build_table(DEFAULT_FACTORIAL_BOUND))
}

/// `n!` as an exact integer. Arguments past the table bound are computed on
/// the fly from the last tabulated entry.
pub fn factorial(n: i32) -> BigInt {
    assert!(n >= 0, "factorial of negative argument {n}");
    let t = table();
    let n = n as usize;
    if n < t.len() {
        return t[n].clone();
    }
    let mut acc = t[t.len() - 1].clone();
    for i in t.len()..=n {
        acc *= i;
    }
    acc
}

fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a non-negative rational, if it is rational.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    let n = is_perfect_square(x.numer())?;
    let d = is_perfect_square(x.denom())?;
    Some(BigRational::new(n, d))
}

/// `sign * sqrt(magnitude_squared)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactSqrtRational {
    sign: i8,
    magnitude_squared: BigRational,
}

impl Default for ExactSqrtRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl ExactSqrtRational {
    pub fn zero() -> Self {
        ExactSqrtRational {
            sign: 0,
            magnitude_squared: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_coef_radicand(BigRational::from_integer(n.into()), BigRational::one())
    }

    /// The value `coef * sqrt(radicand)`; `radicand` must be non-negative.
    pub fn from_coef_radicand(coef: BigRational, radicand: BigRational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        if coef.is_zero() || radicand.is_zero() {
            return Self::zero();
        }
        let sign = if coef.is_negative() { -1 } else { 1 };
        let magnitude_squared = &coef * &coef * radicand;
        ExactSqrtRational {
            sign,
            magnitude_squared,
        }
    }

    /// `sign * sqrt(magnitude_squared)` from its parts.
    pub fn from_signed_square(sign: i8, magnitude_squared: BigRational) -> Self {
        assert!(!magnitude_squared.is_negative(), "negative square");
        if sign == 0 || magnitude_squared.is_zero() {
            return Self::zero();
        }
        ExactSqrtRational {
            sign: sign.signum(),
            magnitude_squared,
        }
    }

    #[inline]
    pub fn sign(&self) -> i8 {
        self.sign
    }

    #[inline]
    pub fn magnitude_squared(&self) -> &BigRational {
        &self.magnitude_squared
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// The square carrying the sign of the value, `sign * |x|^2`.
    pub fn signed_square(&self) -> BigRational {
        match self.sign {
            0 => BigRational::zero(),
            s if s > 0 => self.magnitude_squared.clone(),
            _ => -self.magnitude_squared.clone(),
        }
    }

    /// The only lossy step.
    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let mag = self
            .magnitude_squared
            .to_f64()
            .expect("rational magnitude out of f64 range")
            .sqrt();
        f64::from(self.sign) * mag
    }

    /// Multiplies by a rational number.
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let sign = if c.is_negative() { -self.sign } else { self.sign };
        ExactSqrtRational {
            sign,
            magnitude_squared: &self.magnitude_squared * c * c,
        }
    }
}

impl Mul for &ExactSqrtRational {
    type Output = ExactSqrtRational;
    fn mul(self, rhs: &ExactSqrtRational) -> ExactSqrtRational {
        if self.is_zero() || rhs.is_zero() {
            return ExactSqrtRational::zero();
        }
        ExactSqrtRational {
            sign: self.sign * rhs.sign,
            magnitude_squared: &self.magnitude_squared * &rhs.magnitude_squared,
        }
    }
}

impl Mul for ExactSqrtRational {
    type Output = ExactSqrtRational;
    fn mul(self, rhs: ExactSqrtRational) -> ExactSqrtRational {
        &self * &rhs
    }
}

impl Mul<i64> for ExactSqrtRational {
    type Output = ExactSqrtRational;
    fn mul(self, rhs: i64) -> ExactSqrtRational {
        self.scale(&BigRational::from_integer(rhs.into()))
    }
}

impl Neg for ExactSqrtRational {
    type Output = ExactSqrtRational;
    fn neg(mut self) -> ExactSqrtRational {
        self.sign = -self.sign;
        self
    }
}

impl fmt::Display for ExactSqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 0 {
            return write!(f, "0");
        }
        let s = if self.sign < 0 { "-" } else { "" };
        match rational_sqrt(&self.magnitude_squared) {
            Some(r) => write!(f, "{s}{r}"),
            None => write!(f, "{s}sqrt({})", self.magnitude_squared),
        }
    }
}

/// An exact finite sum `sum_i c_i sqrt(r_i)` with rational `c_i`, `r_i`.
///
/// Terms are merged whenever the ratio of their radicands is a rational
/// square, so distinct classes are linearly independent over the rationals
/// and the sum is zero iff every class coefficient is zero.
#[derive(Clone, Debug, Default)]
pub struct SurdSum {
    // (radicand representative, coefficient)
    classes: Vec<(BigRational, BigRational)>,
}

impl SurdSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: &ExactSqrtRational) {
        if x.is_zero() {
            return;
        }
        let sign = BigRational::from_integer(BigInt::from(x.sign));
        for (rep, coef) in &mut self.classes {
            if let Some(root) = rational_sqrt(&(x.magnitude_squared() / &*rep)) {
                *coef += sign * root;
                return;
            }
        }
        self.classes.push((x.magnitude_squared().clone(), sign));
    }

    pub fn sub(&mut self, x: &ExactSqrtRational) {
        self.add(&-x.clone());
    }

    pub fn is_zero(&self) -> bool {
        self.classes.iter().all(|(_, c)| c.is_zero())
    }

    /// Collapses to a single signed square root if only one class survives.
    pub fn to_single(&self) -> Option<ExactSqrtRational> {
        let mut live = self.classes.iter().filter(|(_, c)| !c.is_zero());
        match (live.next(), live.next()) {
            (None, _) => Some(ExactSqrtRational::zero()),
            (Some((r, c)), None) => Some(ExactSqrtRational::from_coef_radicand(c.clone(), r.clone())),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.classes
            .iter()
            .map(|(r, c)| c.to_f64().unwrap_or(f64::NAN) * r.to_f64().unwrap_or(f64::NAN).sqrt())
            .sum()
    }
}

impl FromIterator<ExactSqrtRational> for SurdSum {
    fn from_iter<I: IntoIterator<Item = ExactSqrtRational>>(iter: I) -> Self {
        let mut s = SurdSum::new();
        for x in iter {
            s.add(&x);
        }
        s
    }
}

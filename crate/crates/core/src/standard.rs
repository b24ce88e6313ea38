//! Wigner-Racah algebra of SU(2) in the standard `{J^2, J_3}` scheme.
//!
//! Everything here is exact: Racah's closed sums are evaluated over big
//! rationals and returned as [`ExactSqrtRational`]. Condon-Shortley phases.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{factorial, ExactSqrtRational, SurdSum};
use crate::halfint::{phase, triangle, HalfInt};

fn fact(twice: i32) -> BigInt {
    debug_assert!(twice % 2 == 0);
    factorial(twice / 2)
}

fn valid_pair(j: HalfInt, m: HalfInt) -> bool {
    j.twice >= 0 && m.twice.abs() <= j.twice && (j.twice - m.twice) % 2 == 0
}

/// Square of the triangle coefficient, `(a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!`.
fn triangle_coefficient_sq(a: HalfInt, b: HalfInt, c: HalfInt) -> BigRational {
    let (a, b, c) = (a.twice, b.twice, c.twice);
    let num = fact(a + b - c) * fact(a - b + c) * fact(-a + b + c);
    let den = fact(a + b + c + 2);
    BigRational::new(num, den)
}

/// Clebsch-Gordan coefficient `(j1 j2 m1 m2 | j m)`.
///
/// Total over all labels: selection-rule violations (including invalid or
/// mismatched projections) give an exact zero.
pub fn cg(j1: HalfInt, j2: HalfInt, m1: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> ExactSqrtRational {
    if m.twice != m1.twice + m2.twice
        || !triangle(j1, j2, j)
        || !valid_pair(j1, m1)
        || !valid_pair(j2, m2)
        || !valid_pair(j, m)
    {
        return ExactSqrtRational::zero();
    }
    let (tj1, tj2, tj, tm1, tm2, tm) = (j1.twice, j2.twice, j.twice, m1.twice, m2.twice, m.twice);

    let mut radicand = triangle_coefficient_sq(j1, j2, j) * BigInt::from(tj + 1);
    radicand *= BigRational::from_integer(
        fact(tj + tm) * fact(tj - tm) * fact(tj1 - tm1) * fact(tj1 + tm1) * fact(tj2 - tm2) * fact(tj2 + tm2),
    );

    // summation index t, doubled like everything else
    let t_min = 0.max(tj2 - tj - tm1).max(tj1 - tj + tm2);
    let t_max = (tj1 + tj2 - tj).min(tj1 - tm1).min(tj2 + tm2);
    let mut sum = BigRational::zero();
    let mut t = t_min;
    while t <= t_max {
        let den = fact(t)
            * fact(tj1 + tj2 - tj - t)
            * fact(tj1 - tm1 - t)
            * fact(tj2 + tm2 - t)
            * fact(tj - tj2 + tm1 + t)
            * fact(tj - tj1 - tm2 + t);
        let term = BigRational::new(BigInt::from(phase(t)), den);
        sum += term;
        t += 2;
    }
    ExactSqrtRational::from_coef_radicand(sum, radicand)
}

/// Wigner 3-jm symbol.
pub fn threejm(j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt, m3: HalfInt) -> ExactSqrtRational {
    if m1.twice + m2.twice + m3.twice != 0 || !triangle(j1, j2, j3) {
        return ExactSqrtRational::zero();
    }
    let c = cg(j1, j2, m1, m2, j3, -m3);
    if c.is_zero() {
        return c;
    }
    let s = phase(j1.twice - j2.twice - m3.twice);
    let inv = BigRational::new(BigInt::one(), BigInt::from(j3.twice + 1));
    let scale = ExactSqrtRational::from_coef_radicand(BigRational::from_integer(s.into()), inv);
    &c * &scale
}

/// Wigner 6-j symbol `{j1 j2 j3; j4 j5 j6}` by Racah's single sum.
pub fn sixj(j1: HalfInt, j2: HalfInt, j3: HalfInt, j4: HalfInt, j5: HalfInt, j6: HalfInt) -> ExactSqrtRational {
    let triads = [(j1, j2, j3), (j1, j5, j6), (j4, j2, j6), (j4, j5, j3)];
    if !triads.iter().all(|&(a, b, c)| triangle(a, b, c)) {
        return ExactSqrtRational::zero();
    }
    let radicand = triads
        .iter()
        .map(|&(a, b, c)| triangle_coefficient_sq(a, b, c))
        .fold(BigRational::one(), |acc, x| acc * x);

    let a = triads.map(|(x, y, z)| x.twice + y.twice + z.twice);
    let b = [
        j1.twice + j2.twice + j4.twice + j5.twice,
        j2.twice + j3.twice + j5.twice + j6.twice,
        j3.twice + j1.twice + j6.twice + j4.twice,
    ];
    let t_min = *a.iter().max().unwrap();
    let t_max = *b.iter().min().unwrap();
    let mut sum = BigRational::zero();
    let mut t = t_min;
    while t <= t_max {
        let num = BigInt::from(phase(t)) * fact(t + 2);
        let den = a.iter().map(|&ai| fact(t - ai)).product::<BigInt>() * b.iter().map(|&bi| fact(bi - t)).product::<BigInt>();
        sum += BigRational::new(num, den);
        t += 2;
    }
    ExactSqrtRational::from_coef_radicand(sum, radicand)
}

/// Wigner 9-j symbol, rows `(j1 j2 j3) (j4 j5 j6) (j7 j8 j9)`, as a sum over
/// products of three 6-j symbols.
#[allow(clippy::too_many_arguments)]
pub fn ninej(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    j4: HalfInt,
    j5: HalfInt,
    j6: HalfInt,
    j7: HalfInt,
    j8: HalfInt,
    j9: HalfInt,
) -> ExactSqrtRational {
    let rows_cols = [
        (j1, j2, j3),
        (j4, j5, j6),
        (j7, j8, j9),
        (j1, j4, j7),
        (j2, j5, j8),
        (j3, j6, j9),
    ];
    if !rows_cols.iter().all(|&(a, b, c)| triangle(a, b, c)) {
        return ExactSqrtRational::zero();
    }
    let lo = (j1.twice - j9.twice)
        .abs()
        .max((j4.twice - j8.twice).abs())
        .max((j2.twice - j6.twice).abs());
    let hi = (j1.twice + j9.twice).min(j4.twice + j8.twice).min(j2.twice + j6.twice);
    let mut acc = SurdSum::new();
    let mut tx = lo;
    while tx <= hi {
        let x = HalfInt::from_twice(tx);
        let term = sixj(j1, j4, j7, j8, j9, x) * sixj(j2, j5, j8, j4, x, j6) * sixj(j3, j6, j9, x, j1, j2);
        if !term.is_zero() {
            let weight = i64::from(phase(2 * tx)) * i64::from(tx + 1);
            acc.add(&(term * weight));
        }
        tx += 2;
    }
    // the x-dependent triangle coefficients enter squared, so one radical survives
    acc.to_single().expect("9-j sum did not collapse to a single radical")
}

/// Standard metric tensor `(-1)^(j-m) delta(mp, -m)`.
pub fn metric_standard(j: HalfInt, m: HalfInt, mp: HalfInt) -> ExactSqrtRational {
    if mp.twice != -m.twice || !valid_pair(j, m) {
        return ExactSqrtRational::zero();
    }
    ExactSqrtRational::from_int(i64::from(phase(j.twice - m.twice)))
}

type MemoTable = RwLock<HashMap<[i32; 6], f64>>;

static CG_MEMO: OnceLock<MemoTable> = OnceLock::new();
static THREEJM_MEMO: OnceLock<MemoTable> = OnceLock::new();

fn memoized(table: &'static OnceLock<MemoTable>, key: [i32; 6], compute: impl FnOnce() -> f64) -> f64 {
    let table = table.get_or_init(Default::default);
    if let Some(&v) = table.read().expect("memo lock poisoned").get(&key) {
        return v;
    }
    let v = compute();
    table.write().expect("memo lock poisoned").insert(key, v);
    v
}

/// Float value of `(j1 j2 m1 m2 | j m)`, memoized.
pub fn cg_f64(j1: HalfInt, j2: HalfInt, m1: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> f64 {
    if m.twice != m1.twice + m2.twice || !triangle(j1, j2, j) {
        return 0.0;
    }
    let key = [j1.twice, j2.twice, m1.twice, m2.twice, j.twice, m.twice];
    memoized(&CG_MEMO, key, || cg(j1, j2, m1, m2, j, m).to_f64())
}

/// Float value of the 3-jm symbol, memoized.
pub fn threejm_f64(j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt, m3: HalfInt) -> f64 {
    if m1.twice + m2.twice + m3.twice != 0 || !triangle(j1, j2, j3) {
        return 0.0;
    }
    let key = [j1.twice, j2.twice, j3.twice, m1.twice, m2.twice, m3.twice];
    memoized(&THREEJM_MEMO, key, || threejm(j1, j2, j3, m1, m2, m3).to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sqrt_of(sign: i8, n: i64, d: i64) -> ExactSqrtRational {
        ExactSqrtRational::from_signed_square(sign, rat(n, d))
    }

    #[test]
    fn cg_examples() {
        assert_eq!(cg(h("1/2"), h("1/2"), h("1/2"), h("-1/2"), h("0"), h("0")), sqrt_of(1, 1, 2));
        assert_eq!(cg(h("1/2"), h("1/2"), h("1/2"), h("1/2"), h("1"), h("1")), ExactSqrtRational::one());
        assert!(cg(h("1"), h("1"), h("0"), h("0"), h("1"), h("0")).is_zero());
        // selection rules
        assert!(cg(h("1/2"), h("1/2"), h("1/2"), h("1/2"), h("1"), h("0")).is_zero());
        assert!(cg(h("1/2"), h("1/2"), h("1/2"), h("-1/2"), h("2"), h("0")).is_zero());
        assert!(cg(h("1"), h("1"), h("1/2"), h("-1/2"), h("1"), h("0")).is_zero());
    }

    #[test]
    fn threejm_examples() {
        let v = threejm(h("1/2"), h("1/2"), h("0"), h("1/2"), h("-1/2"), h("0"));
        assert_eq!(v, sqrt_of(1, 1, 2));
        assert!(threejm(h("1"), h("1"), h("1"), h("1"), h("0"), h("0")).is_zero());
        // odd j1+j2+j3: a column swap flips sign
        let a = threejm(h("1"), h("1"), h("1"), h("1"), h("0"), h("-1"));
        let b = threejm(h("1"), h("1"), h("1"), h("0"), h("1"), h("-1"));
        assert!(!a.is_zero());
        assert_eq!(a, -b);
    }

    #[test]
    fn sixj_examples() {
        assert!(sixj(h("1/2"), h("1/2"), h("3/2"), h("1/2"), h("1/2"), h("1")).is_zero());
        // {j 0 j; j' x j'} = (-1)^(j+j'+x) / sqrt((2j+1)(2j'+1))
        let v = sixj(h("1"), h("0"), h("1"), h("3/2"), h("1/2"), h("3/2"));
        assert_eq!(v, sqrt_of(-1, 1, 12));
        // j=1, j'=1/2, x=1/2: phase (-1)^2
        let v = sixj(h("1"), h("0"), h("1"), h("1/2"), h("1/2"), h("1/2"));
        assert_eq!(v, sqrt_of(1, 1, 6));
        // j=1, j'=1, x=1: (-1)^3
        let v = sixj(h("1"), h("0"), h("1"), h("1"), h("1"), h("1"));
        assert_eq!(v, sqrt_of(-1, 1, 9));
    }

    #[test]
    fn ninej_reduces_to_sixj_with_zero() {
        // {a b e; c d e; f f 0} = (-1)^(b+c+e+f) / sqrt((2e+1)(2f+1)) {a b e; d c f}
        let (a, b, c, d, e, f) = (h("1"), h("1/2"), h("1/2"), h("1"), h("3/2"), h("1/2"));
        let lhs = ninej(a, b, e, c, d, e, f, f, h("0"));
        let s = sixj(a, b, e, d, c, f);
        let p = phase(b.twice + c.twice + e.twice + f.twice);
        let norm = ExactSqrtRational::from_signed_square(p as i8, rat(1, i64::from((e.twice + 1) * (f.twice + 1))));
        assert!(!lhs.is_zero());
        assert_eq!(lhs, &s * &norm);
    }

    #[test]
    fn ninej_row_triangle_violation() {
        let v = ninej(h("1/2"), h("1/2"), h("2"), h("1/2"), h("1/2"), h("1"), h("1"), h("1"), h("1"));
        assert!(v.is_zero());
    }

    #[test]
    fn metric_examples() {
        assert_eq!(metric_standard(h("1/2"), h("1/2"), h("-1/2")), ExactSqrtRational::from_int(1));
        assert_eq!(metric_standard(h("1/2"), h("-1/2"), h("1/2")), ExactSqrtRational::from_int(-1));
        assert!(metric_standard(h("1"), h("0"), h("1")).is_zero());
        assert_eq!(metric_standard(h("1"), h("0"), h("0")), ExactSqrtRational::from_int(-1));
    }
}

//! Exhaustive exact checks of standard-scheme identities.
//!
//! Residues are computed in exact arithmetic; `failures` counts cases whose
//! exact residue is non-zero and `worst` is the float size of the largest one.

use std::collections::HashMap;

use serde::Serialize;

use crate::exact::{ExactSqrtRational, SurdSum};
use crate::halfint::{coupled_spins, m_values, phase, triangle, HalfInt};
use crate::standard::{cg, sixj, threejm};

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ExactTally {
    pub cases: usize,
    pub failures: usize,
    pub worst: f64,
}

impl ExactTally {
    fn record(&mut self, residue: &SurdSum) {
        self.cases += 1;
        if !residue.is_zero() {
            self.failures += 1;
            self.worst = self.worst.max(residue.to_f64().abs().max(f64::MIN_POSITIVE));
        }
    }

    fn record_eq(&mut self, a: &ExactSqrtRational, b: &ExactSqrtRational) {
        let mut d = SurdSum::new();
        d.add(a);
        d.sub(b);
        self.record(&d);
    }

    pub fn exact(&self) -> bool {
        self.failures == 0
    }

    /// `0.0` when every case holds exactly.
    pub fn residual(&self) -> f64 {
        if self.exact() {
            0.0
        } else {
            self.worst
        }
    }
}

fn spins(j_max: HalfInt) -> Vec<HalfInt> {
    (0..=j_max.twice.max(0)).map(HalfInt::from_twice).collect()
}

fn ms(j: HalfInt) -> Vec<HalfInt> {
    m_values(j).expect("non-negative spin")
}

fn kronecker(b: bool) -> ExactSqrtRational {
    if b {
        ExactSqrtRational::one()
    } else {
        ExactSqrtRational::zero()
    }
}

/// Both CG orthogonality relations for all `j1, j2 <= j_max`:
/// `sum_{m1 m2} (..|j m)(..|j' m') = delta delta` over every `j, j'` (including
/// `j` outside `j1 x j2`), and `sum_{j m} (j1 j2 m1 m2|j m)(j1 j2 m1' m2'|j m) = delta delta`.
pub fn cg_orthogonality(j_max: HalfInt) -> ExactTally {
    let mut tally = ExactTally::default();
    for &j1 in &spins(j_max) {
        for &j2 in &spins(j_max) {
            let mut memo: HashMap<(i32, i32, i32), ExactSqrtRational> = HashMap::new();
            let mut c = |m1: HalfInt, m2: HalfInt, j: HalfInt| {
                memo.entry((m1.twice, m2.twice, j.twice))
                    .or_insert_with(|| cg(j1, j2, m1, m2, j, m1 + m2))
                    .clone()
            };
            let inside = coupled_spins(j1, j2);
            let mut candidates = inside.clone();
            candidates.push(HalfInt::from_twice(j1.twice + j2.twice + 2));
            for &j in &candidates {
                for &jp in &candidates {
                    if (j.twice - jp.twice) % 2 != 0 {
                        continue;
                    }
                    for m in ms(j.min(jp)) {
                        let mut s = SurdSum::new();
                        for m1 in ms(j1) {
                            let m2 = m - m1;
                            if m2.twice.abs() > j2.twice {
                                continue;
                            }
                            s.add(&(&c(m1, m2, j) * &c(m1, m2, jp)));
                        }
                        s.sub(&kronecker(j == jp && inside.contains(&j)));
                        tally.record(&s);
                    }
                }
            }
            for m1 in ms(j1) {
                for m2 in ms(j2) {
                    for m1p in ms(j1) {
                        let m2p = m1 + m2 - m1p;
                        if m2p.twice.abs() > j2.twice {
                            continue;
                        }
                        let mut s = SurdSum::new();
                        for &j in &inside {
                            if (m1 + m2).twice.abs() <= j.twice {
                                s.add(&(&c(m1, m2, j) * &c(m1p, m2p, j)));
                            }
                        }
                        s.sub(&kronecker(m1 == m1p));
                        tally.record(&s);
                    }
                }
            }
        }
    }
    tally
}

/// Column permutations and `m -> -m` of the 3-jm symbol, all spins `<= j_max`.
pub fn threejm_symmetries(j_max: HalfInt) -> ExactTally {
    let mut tally = ExactTally::default();
    let js = spins(j_max);
    for &j1 in &js {
        for &j2 in &js {
            for &j3 in &js {
                if !triangle(j1, j2, j3) {
                    continue;
                }
                let odd = phase(j1.twice + j2.twice + j3.twice) < 0;
                for m1 in ms(j1) {
                    for m2 in ms(j2) {
                        let m3 = -(m1 + m2);
                        if m3.twice.abs() > j3.twice {
                            continue;
                        }
                        let base = threejm(j1, j2, j3, m1, m2, m3);
                        let signed = if odd { -base.clone() } else { base.clone() };
                        tally.record_eq(&threejm(j2, j3, j1, m2, m3, m1), &base);
                        tally.record_eq(&threejm(j3, j1, j2, m3, m1, m2), &base);
                        tally.record_eq(&threejm(j2, j1, j3, m2, m1, m3), &signed);
                        tally.record_eq(&threejm(j1, j3, j2, m1, m3, m2), &signed);
                        tally.record_eq(&threejm(j3, j2, j1, m3, m2, m1), &signed);
                        tally.record_eq(&threejm(j1, j2, j3, -m1, -m2, -m3), &signed);
                    }
                }
            }
        }
    }
    tally
}

/// The 24 permutations of columns combined with upper/lower exchanges in
/// pairs of columns, over every 6-tuple of spins `<= j_max`.
pub fn sixj_symmetries(j_max: HalfInt) -> ExactTally {
    let js = spins(j_max);
    let n = js.len();
    let mut values: HashMap<[i32; 6], ExactSqrtRational> = HashMap::new();
    let mut tuple = [0usize; 6];
    loop {
        let t = tuple.map(|i| js[i]);
        values.insert(t.map(|h| h.twice), sixj(t[0], t[1], t[2], t[3], t[4], t[5]));
        let mut p = 6;
        loop {
            if p == 0 {
                break;
            }
            p -= 1;
            tuple[p] += 1;
            if tuple[p] < n {
                break;
            }
            tuple[p] = 0;
        }
        if tuple == [0; 6] {
            break;
        }
    }

    const COLS: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
    const FLIPS: [[bool; 3]; 4] = [
        [false, false, false],
        [true, true, false],
        [true, false, true],
        [false, true, true],
    ];
    let mut tally = ExactTally::default();
    for (key, v) in &values {
        let upper = [key[0], key[1], key[2]];
        let lower = [key[3], key[4], key[5]];
        for cols in COLS {
            for flips in FLIPS {
                let mut img = [0i32; 6];
                for (c, &src) in cols.iter().enumerate() {
                    let (u, l) = if flips[c] { (lower[src], upper[src]) } else { (upper[src], lower[src]) };
                    img[c] = u;
                    img[c + 3] = l;
                }
                tally.record_eq(&values[&img], v);
            }
        }
    }
    tally
}

/// Racah's sum against the four-3jm contraction defining the 6-j symbol,
/// `{j1 j2 j3; j4 j5 j6} = sum (-1)^{sum (J - M)} (j1 j2 j3; -m1 -m2 -m3)
/// (j1 j5 j6; m1 -m5 m6) (j4 j2 j6; m4 m2 -m6) (j4 j5 j3; -m4 m5 m3)`.
pub fn sixj_contraction(j_max: HalfInt) -> ExactTally {
    let js = spins(j_max);
    let mut memo: HashMap<[i32; 6], ExactSqrtRational> = HashMap::new();
    let mut w = |a: HalfInt, b: HalfInt, c: HalfInt, ma: HalfInt, mb: HalfInt, mc: HalfInt| {
        memo.entry([a.twice, b.twice, c.twice, ma.twice, mb.twice, mc.twice])
            .or_insert_with(|| threejm(a, b, c, ma, mb, mc))
            .clone()
    };
    let mut tally = ExactTally::default();
    for &j1 in &js {
        for &j2 in &js {
            for &j3 in &js {
                if !triangle(j1, j2, j3) {
                    continue;
                }
                for &j4 in &js {
                    for &j5 in &js {
                        if !triangle(j4, j5, j3) {
                            continue;
                        }
                        for &j6 in &js {
                            if !triangle(j1, j5, j6) || !triangle(j4, j2, j6) {
                                continue;
                            }
                            let mut s = SurdSum::new();
                            for m1 in ms(j1) {
                                for m2 in ms(j2) {
                                    let m3 = -(m1 + m2);
                                    if m3.twice.abs() > j3.twice {
                                        continue;
                                    }
                                    let a = w(j1, j2, j3, -m1, -m2, -m3);
                                    if a.is_zero() {
                                        continue;
                                    }
                                    for m5 in ms(j5) {
                                        let m6 = m5 - m1;
                                        let m4 = m5 + m3;
                                        if m6.twice.abs() > j6.twice || m4.twice.abs() > j4.twice {
                                            continue;
                                        }
                                        let sign = phase(
                                            (j1.twice - m1.twice)
                                                + (j2.twice - m2.twice)
                                                + (j3.twice - m3.twice)
                                                + (j4.twice - m4.twice)
                                                + (j5.twice - m5.twice)
                                                + (j6.twice - m6.twice),
                                        );
                                        let term = &(&a * &w(j1, j5, j6, m1, -m5, m6))
                                            * &(&w(j4, j2, j6, m4, m2, -m6) * &w(j4, j5, j3, -m4, m5, m3));
                                        s.add(&(term * i64::from(sign)));
                                    }
                                }
                            }
                            s.sub(&sixj(j1, j2, j3, j4, j5, j6));
                            tally.record(&s);
                        }
                    }
                }
            }
        }
    }
    tally
}

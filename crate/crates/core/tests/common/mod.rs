//! Independent oracles for the integration tests.
//!
//! Clebsch-Gordan coefficients come from building coupled states by hand:
//! Gram-Schmidt for each highest-weight state, Condon-Shortley sign on the
//! `m1 = j1` component, then repeated lowering. Nothing here calls the Racah
//! sums of the library.
#![allow(dead_code)]

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use quon_su2::HalfInt;

pub fn h(s: &str) -> HalfInt {
    s.parse().unwrap()
}

pub fn spins(max_twice: i32) -> Vec<HalfInt> {
    (0..=max_twice).map(HalfInt::from_twice).collect()
}

pub fn ms(j: HalfInt) -> Vec<HalfInt> {
    (0..=j.twice).map(|i| HalfInt::from_twice(-j.twice + 2 * i)).collect()
}

fn lowering_coef(tj: i32, tm: i32) -> f64 {
    // J- |j m> = sqrt((j+m)(j-m+1)) |j m-1>
    (f64::from(tj + tm) / 2.0 * (f64::from(tj - tm) / 2.0 + 1.0)).sqrt()
}

/// `(j1 j2 m1 m2 | j m)` for every label of the pair `(j1, j2)`, keyed by
/// doubled `(m1, m2, j, m)`.
pub struct CgOracle {
    pub j1: HalfInt,
    pub j2: HalfInt,
    values: HashMap<(i32, i32, i32, i32), f64>,
}

impl CgOracle {
    pub fn new(j1: HalfInt, j2: HalfInt) -> Self {
        let (d1, d2) = ((j1.twice + 1) as usize, (j2.twice + 1) as usize);
        let idx = |tm1: i32, tm2: i32| (((tm1 + j1.twice) / 2) as usize) * d2 + ((tm2 + j2.twice) / 2) as usize;
        let d = d1 * d2;

        let mut lower = vec![vec![0.0; d]; d];
        for tm1 in (-j1.twice..=j1.twice).step_by(2) {
            for tm2 in (-j2.twice..=j2.twice).step_by(2) {
                let col = idx(tm1, tm2);
                if tm1 > -j1.twice {
                    lower[idx(tm1 - 2, tm2)][col] += lowering_coef(j1.twice, tm1);
                }
                if tm2 > -j2.twice {
                    lower[idx(tm1, tm2 - 2)][col] += lowering_coef(j2.twice, tm2);
                }
            }
        }
        let apply = |v: &Vec<f64>| -> Vec<f64> {
            (0..d).map(|r| (0..d).map(|c| lower[r][c] * v[c]).sum()).collect()
        };
        let dot = |a: &Vec<f64>, b: &Vec<f64>| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };

        let mut states: HashMap<(i32, i32), Vec<f64>> = HashMap::new();
        let mut tj = j1.twice + j2.twice;
        while tj >= (j1.twice - j2.twice).abs() {
            // highest weight of spin j: the M = j direction orthogonal to larger spins
            let mut top = None;
            for tm1 in (-j1.twice..=j1.twice).rev().step_by(2) {
                let tm2 = tj - tm1;
                if tm2.abs() > j2.twice {
                    continue;
                }
                let mut v = vec![0.0; d];
                v[idx(tm1, tm2)] = 1.0;
                for ((_, tm), u) in states.iter() {
                    if *tm == tj {
                        let c = dot(u, &v);
                        for (x, y) in v.iter_mut().zip(u) {
                            *x -= c * y;
                        }
                    }
                }
                let n = dot(&v, &v).sqrt();
                if n > 1e-8 {
                    top = Some(v.into_iter().map(|x| x / n).collect::<Vec<f64>>());
                    break;
                }
            }
            let mut v = top.expect("highest-weight state exists");
            if v[idx(j1.twice, tj - j1.twice)] < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            let mut tm = tj;
            loop {
                states.insert((tj, tm), v.clone());
                if tm == -tj {
                    break;
                }
                let c = lowering_coef(tj, tm);
                v = apply(&v).into_iter().map(|x| x / c).collect();
                tm -= 2;
            }
            tj -= 2;
        }

        let mut values = HashMap::new();
        for ((tj, tm), v) in &states {
            for tm1 in (-j1.twice..=j1.twice).step_by(2) {
                let tm2 = tm - tm1;
                if tm2.abs() <= j2.twice {
                    values.insert((tm1, tm2, *tj, *tm), v[idx(tm1, tm2)]);
                }
            }
        }
        CgOracle { j1, j2, values }
    }

    pub fn get(&self, m1: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> f64 {
        *self.values.get(&(m1.twice, m2.twice, j.twice, m.twice)).unwrap_or(&0.0)
    }
}

fn phase(twice: i32) -> f64 {
    if (twice / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Memoized oracle 3-jm symbols from the oracle CG coefficients.
#[derive(Default)]
pub struct ThreeJmOracle {
    pairs: HashMap<(i32, i32), CgOracle>,
}

impl ThreeJmOracle {
    pub fn get(&mut self, j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt, m3: HalfInt) -> f64 {
        if m1.twice + m2.twice + m3.twice != 0 {
            return 0.0;
        }
        if m1.twice.abs() > j1.twice || m2.twice.abs() > j2.twice || m3.twice.abs() > j3.twice {
            return 0.0;
        }
        let lo = (j1.twice - j2.twice).abs();
        if j3.twice < lo || j3.twice > j1.twice + j2.twice || (j1.twice + j2.twice + j3.twice) % 2 != 0 {
            return 0.0;
        }
        let cg = self.pairs.entry((j1.twice, j2.twice)).or_insert_with(|| CgOracle::new(j1, j2));
        phase(j1.twice - j2.twice - m3.twice) / f64::from(j3.twice + 1).sqrt() * cg.get(m1, m2, j3, -m3)
    }

    /// Six 3-jm symbols summed over every projection.
    #[allow(clippy::too_many_arguments)]
    pub fn ninej(&mut self, j: [HalfInt; 9]) -> f64 {
        let mut sum = 0.0;
        for m1 in ms(j[0]) {
            for m2 in ms(j[1]) {
                for m4 in ms(j[3]) {
                    for m5 in ms(j[4]) {
                        let m3 = -(m1 + m2);
                        let m6 = -(m4 + m5);
                        let m7 = -(m1 + m4);
                        let m8 = -(m2 + m5);
                        let m9 = -(m3 + m6);
                        let t = self.get(j[0], j[1], j[2], m1, m2, m3)
                            * self.get(j[3], j[4], j[5], m4, m5, m6)
                            * self.get(j[6], j[7], j[8], m7, m8, m9)
                            * self.get(j[0], j[3], j[6], m1, m4, m7)
                            * self.get(j[1], j[4], j[7], m2, m5, m8)
                            * self.get(j[2], j[5], j[8], m3, m6, m9);
                        sum += t;
                    }
                }
            }
        }
        sum
    }

    /// Four 3-jm symbols summed over every projection.
    pub fn sixj(&mut self, j: [HalfInt; 6]) -> f64 {
        let [j1, j2, j3, j4, j5, j6] = j;
        let mut sum = 0.0;
        for m1 in ms(j1) {
            for m2 in ms(j2) {
                for m5 in ms(j5) {
                    let m3 = -(m1 + m2);
                    let m6 = m5 - m1;
                    let m4 = m5 + m3;
                    let s = phase(
                        j1.twice - m1.twice + j2.twice - m2.twice + j3.twice - m3.twice + j4.twice - m4.twice
                            + j5.twice
                            - m5.twice
                            + j6.twice
                            - m6.twice,
                    );
                    sum += s
                        * self.get(j1, j2, j3, -m1, -m2, -m3)
                        * self.get(j1, j5, j6, m1, -m5, m6)
                        * self.get(j4, j2, j6, m4, m2, -m6)
                        * self.get(j4, j5, j3, -m4, m5, m3);
                }
            }
        }
        sum
    }
}

/// `<j m | j alpha; r>` from scratch, `alpha = -j r + s`.
pub fn dft(j: HalfInt, r: f64) -> DMatrix<Complex64> {
    let d = (j.twice + 1) as usize;
    let jf = f64::from(j.twice) / 2.0;
    DMatrix::from_fn(d, d, |im, s| {
        let m = -jf + im as f64;
        let alpha = -jf * r + s as f64;
        Complex64::from_polar(1.0 / (d as f64).sqrt(), alpha * m * 2.0 * PI / d as f64)
    })
}

/// `(j1 j2 alpha1 alpha2 | j alpha; r)` as the plain change of basis
/// `sum <alpha1|m1><alpha2|m2>(j1 j2 m1 m2|j m)<j m|alpha>` over every projection.
pub fn cg_nonstandard_oracle(cg: &CgOracle, j: HalfInt, r: f64) -> Vec<Vec<Vec<Complex64>>> {
    let (j1, j2) = (cg.j1, cg.j2);
    let (w1, w2, w) = (dft(j1, r), dft(j2, r), dft(j, r));
    let (d1, d2, d) = (w1.nrows(), w2.nrows(), w.nrows());
    let mut out = vec![vec![vec![Complex64::new(0.0, 0.0); d]; d2]; d1];
    for (s1, plane) in out.iter_mut().enumerate() {
        for (s2, line) in plane.iter_mut().enumerate() {
            for (s, slot) in line.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (i1, m1) in ms(j1).into_iter().enumerate() {
                    for (i2, m2) in ms(j2).into_iter().enumerate() {
                        for (i, m) in ms(j).into_iter().enumerate() {
                            let c = cg.get(m1, m2, j, m);
                            acc += w1[(i1, s1)].conj() * w2[(i2, s2)].conj() * c * w[(i, s)];
                        }
                    }
                }
                *slot = acc;
            }
        }
    }
    out
}

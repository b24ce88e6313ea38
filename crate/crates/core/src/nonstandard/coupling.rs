use rand::Rng;

use super::{same_r, AlphaLabel};
use crate::error::{Error, Result};
use crate::halfint::{coupled_spins, m_values, phase, triangle, HalfInt};
use crate::matrix::C64;
use crate::report::ResidualReport;
use crate::standard::{cg_f64, threejm_f64};

fn check_label(j: HalfInt, a: &AlphaLabel) -> Result<()> {
    if a.j != j {
        return Err(Error::LabelMismatch(format!("alpha label carries j = {}, expected {}", a.j, j)));
    }
    Ok(())
}

/// `exp(sign i alpha m 2pi/(2j+1))` for every `(s, m)`; rows by `s`, columns by `m`.
fn phase_rows(j: HalfInt, r: f64, sign: i32) -> Vec<Vec<C64>> {
    let ms = m_values(j).expect("non-negative j");
    AlphaLabel::all(j, r)
        .expect("non-negative j")
        .iter()
        .map(|a| ms.iter().map(|&m| a.phase(m, sign)).collect())
        .collect()
}

/// All `(j1 j2 alpha1 alpha2 | j alpha; r)` for fixed `(j1, j2, j, r)`.
#[derive(Clone, Debug)]
pub struct CouplingTable {
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub j: HalfInt,
    pub r: f64,
    values: Vec<C64>,
}

impl CouplingTable {
    pub fn new(j1: HalfInt, j2: HalfInt, j: HalfInt, r: f64) -> Result<Self> {
        for x in [j1, j2, j] {
            HalfInt::spin(x.twice)?;
        }
        let (d1, d2, d) = (j1.dim(), j2.dim(), j.dim());
        let mut values = vec![C64::new(0.0, 0.0); d1 * d2 * d];
        if triangle(j1, j2, j) {
            let p1 = phase_rows(j1, r, -1);
            let p2 = phase_rows(j2, r, -1);
            let p = phase_rows(j, r, 1);
            let m1s = m_values(j1)?;
            let m2s = m_values(j2)?;
            // nonzero standard coefficients, with m = m1 + m2 eliminated
            let mut terms = Vec::new();
            for (i1, &m1) in m1s.iter().enumerate() {
                for (i2, &m2) in m2s.iter().enumerate() {
                    let m = m1 + m2;
                    if m.twice.abs() > j.twice {
                        continue;
                    }
                    let c = cg_f64(j1, j2, m1, m2, j, m);
                    if c != 0.0 {
                        let im = ((m.twice + j.twice) / 2) as usize;
                        terms.push((i1, i2, im, c));
                    }
                }
            }
            let pref = 1.0 / ((d1 * d2 * d) as f64).sqrt();
            for s1 in 0..d1 {
                for s2 in 0..d2 {
                    for s in 0..d {
                        let sum: C64 = terms
                            .iter()
                            .map(|&(i1, i2, im, c)| p[s][im] * p1[s1][i1] * p2[s2][i2] * c)
                            .sum();
                        values[(s1 * d2 + s2) * d + s] = sum * pref;
                    }
                }
            }
        }
        Ok(CouplingTable { j1, j2, j, r, values })
    }

    #[inline]
    pub fn get(&self, s1: usize, s2: usize, s: usize) -> C64 {
        let (d2, d) = (self.j2.dim(), self.j.dim());
        self.values[(s1 * d2 + s2) * d + s]
    }
}

/// Coupling coefficient `(j1 j2 alpha1 alpha2 | j alpha; r)` in the `{J^2, U_r}`
/// scheme, as the Fourier-weighted combination of standard coefficients
/// `sum q^{alpha m} q1^{-alpha1 m1} q2^{-alpha2 m2} (j1 j2 m1 m2 | j m)`.
pub fn cg_nonstandard(
    j1: HalfInt,
    j2: HalfInt,
    a1: &AlphaLabel,
    a2: &AlphaLabel,
    j: HalfInt,
    a: &AlphaLabel,
) -> Result<C64> {
    check_label(j1, a1)?;
    check_label(j2, a2)?;
    check_label(j, a)?;
    same_r(&[a1, a2, a])?;
    if !triangle(j1, j2, j) {
        return Ok(C64::new(0.0, 0.0));
    }
    let mut sum = C64::new(0.0, 0.0);
    for m1 in m_values(j1)? {
        for m2 in m_values(j2)? {
            let m = m1 + m2;
            if m.twice.abs() > j.twice {
                continue;
            }
            let c = cg_f64(j1, j2, m1, m2, j, m);
            if c != 0.0 {
                sum += a.phase(m, 1) * a1.phase(m1, -1) * a2.phase(m2, -1) * c;
            }
        }
    }
    let pref = 1.0 / f64::from((j1.twice + 1) * (j2.twice + 1) * (j.twice + 1)).sqrt();
    Ok(sum * pref)
}

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// Both orthonormality relations at fixed `r`, over every label choice:
/// completeness `sum_{j alpha} (..|j alpha)(..'|j alpha)^* = delta delta`, and
/// `sum_{alpha1 alpha2} (..|j alpha)^* (..|j' alpha') = Delta delta delta`.
/// The second relation also runs over two `j` values outside `(j1) x (j2)`,
/// reported separately, where the sum must vanish identically.
pub fn verify_cg_orthonormality(j1: HalfInt, j2: HalfInt, r: f64) -> Result<ResidualReport> {
    let inside = coupled_spins(j1, j2);
    let mut outside = vec![HalfInt::from_twice(j1.twice + j2.twice + 2)];
    if (j1.twice - j2.twice).abs() >= 2 {
        outside.push(HalfInt::from_twice((j1.twice - j2.twice).abs() - 2));
    }
    let tables: Vec<CouplingTable> = inside
        .iter()
        .chain(&outside)
        .map(|&j| CouplingTable::new(j1, j2, j, r))
        .collect::<Result<_>>()?;
    let n_inside = inside.len();
    let (d1, d2) = (j1.dim(), j2.dim());

    let mut rep = ResidualReport::new();
    let mut completeness = 0.0f64;
    for s1 in 0..d1 {
        for s2 in 0..d2 {
            for t1 in 0..d1 {
                for t2 in 0..d2 {
                    let mut sum = C64::new(0.0, 0.0);
                    for t in &tables[..n_inside] {
                        for s in 0..t.j.dim() {
                            sum += t.get(s1, s2, s) * t.get(t1, t2, s).conj();
                        }
                    }
                    completeness = completeness.max((sum - delta(s1, t1) * delta(s2, t2)).norm());
                }
            }
        }
    }
    rep.push("completeness (sum over j alpha)", completeness);

    let mut ortho = 0.0f64;
    let mut outside_worst = 0.0f64;
    for (ia, ta) in tables.iter().enumerate() {
        for (ib, tb) in tables.iter().enumerate() {
            for s in 0..ta.j.dim() {
                for sp in 0..tb.j.dim() {
                    let mut sum = C64::new(0.0, 0.0);
                    for s1 in 0..d1 {
                        for s2 in 0..d2 {
                            sum += ta.get(s1, s2, s).conj() * tb.get(s1, s2, sp);
                        }
                    }
                    let contained = if ia < n_inside { 1.0 } else { 0.0 };
                    let target = contained * delta(ia, ib) * delta(s, sp);
                    let dev = (sum - target).norm();
                    if ia < n_inside && ib < n_inside {
                        ortho = ortho.max(dev);
                    } else {
                        outside_worst = outside_worst.max(dev);
                    }
                }
            }
        }
    }
    rep.push("orthonormality (sum over alpha1 alpha2)", ortho);
    rep.push("Delta: j outside j1 x j2", outside_worst);
    Ok(rep)
}

/// One randomly drawn entry of each orthonormality relation.
#[derive(Clone, Debug)]
pub struct OrthonormalitySample {
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub completeness: f64,
    pub orthonormality: f64,
}

impl OrthonormalitySample {
    /// Draws `j1, j2 <= j_max`, then random label pairs for both relations.
    pub fn draw<R: Rng>(rng: &mut R, j_max: HalfInt, r: f64) -> Result<Self> {
        let j1 = HalfInt::from_twice(rng.random_range(0..=j_max.twice));
        let j2 = HalfInt::from_twice(rng.random_range(0..=j_max.twice));
        let inside = coupled_spins(j1, j2);
        let tables: Vec<CouplingTable> = inside
            .iter()
            .map(|&j| CouplingTable::new(j1, j2, j, r))
            .collect::<Result<_>>()?;
        let (d1, d2) = (j1.dim(), j2.dim());

        let (s1, s2) = (rng.random_range(0..d1), rng.random_range(0..d2));
        // bias towards the diagonal so that both branches of the delta get exercised
        let (t1, t2) = if rng.random_bool(0.5) {
            (s1, s2)
        } else {
            (rng.random_range(0..d1), rng.random_range(0..d2))
        };
        let mut sum = C64::new(0.0, 0.0);
        for t in &tables {
            for s in 0..t.j.dim() {
                sum += t.get(s1, s2, s) * t.get(t1, t2, s).conj();
            }
        }
        let completeness = (sum - delta(s1, t1) * delta(s2, t2)).norm();

        let ia = rng.random_range(0..tables.len());
        let ib = if rng.random_bool(0.5) {
            ia
        } else {
            rng.random_range(0..tables.len())
        };
        let s = rng.random_range(0..tables[ia].j.dim());
        let sp = if ia == ib && rng.random_bool(0.5) {
            s
        } else {
            rng.random_range(0..tables[ib].j.dim())
        };
        let mut sum = C64::new(0.0, 0.0);
        for s1 in 0..d1 {
            for s2 in 0..d2 {
                sum += tables[ia].get(s1, s2, s).conj() * tables[ib].get(s1, s2, sp);
            }
        }
        let orthonormality = (sum - delta(ia, ib) * delta(s, sp)).norm();
        Ok(OrthonormalitySample {
            j1,
            j2,
            completeness,
            orthonormality,
        })
    }
}

/// The `fbar_r` symbol: the 3-jm symbol dressed with
/// `q_a^{-alpha_a m_a}`, `q_a = exp(2 pi i / (2 j_a + 1))`, over all three columns.
pub fn fbar(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    a1: &AlphaLabel,
    a2: &AlphaLabel,
    a3: &AlphaLabel,
) -> Result<C64> {
    check_label(j1, a1)?;
    check_label(j2, a2)?;
    check_label(j3, a3)?;
    same_r(&[a1, a2, a3])?;
    if !triangle(j1, j2, j3) {
        return Ok(C64::new(0.0, 0.0));
    }
    let mut sum = C64::new(0.0, 0.0);
    for m1 in m_values(j1)? {
        for m2 in m_values(j2)? {
            let m3 = -(m1 + m2);
            if m3.twice.abs() > j3.twice {
                continue;
            }
            let w = threejm_f64(j1, j2, j3, m1, m2, m3);
            if w != 0.0 {
                sum += a1.phase(m1, -1) * a2.phase(m2, -1) * a3.phase(m3, -1) * w;
            }
        }
    }
    let pref = 1.0 / f64::from((j1.twice + 1) * (j2.twice + 1) * (j3.twice + 1)).sqrt();
    Ok(sum * pref)
}

/// The Wigner-Eckart coefficient
/// `f_r(j1 j2 j3; alpha1 alpha2 alpha3) = (-1)^{2 j3} (2j1+1)^{-1/2} (j2 j3 alpha2 alpha3 | j1 alpha1; r)^*`.
pub fn f_small(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    a1: &AlphaLabel,
    a2: &AlphaLabel,
    a3: &AlphaLabel,
) -> Result<C64> {
    let c = cg_nonstandard(j2, j3, a2, a3, j1, a1)?;
    let sign = f64::from(phase(2 * j3.twice));
    Ok(c.conj() * (sign / f64::from(j1.twice + 1).sqrt()))
}

/// Every triangle-admissible `(j1, j2, j3)` with `2(j1 + j2 + j3) <= max_twice_sum`.
pub fn fbar_triples(max_twice_sum: i32) -> Vec<(HalfInt, HalfInt, HalfInt)> {
    let mut out = Vec::new();
    for a in 0..=max_twice_sum {
        for b in 0..=max_twice_sum - a {
            for c in 0..=max_twice_sum - a - b {
                let t = (HalfInt::from_twice(a), HalfInt::from_twice(b), HalfInt::from_twice(c));
                if triangle(t.0, t.1, t.2) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Column-permutation and complex-conjugation behaviour of `fbar_r` over
/// every label choice of the given triples.
pub fn verify_fbar_symmetry(triples: &[(HalfInt, HalfInt, HalfInt)], r: f64) -> Result<ResidualReport> {
    // (permutation, is_odd)
    const PERMS: [([usize; 3], bool); 6] = [
        ([0, 1, 2], false),
        ([1, 2, 0], false),
        ([2, 0, 1], false),
        ([1, 0, 2], true),
        ([0, 2, 1], true),
        ([2, 1, 0], true),
    ];
    let mut rep = ResidualReport::new();
    for name in ["even permutations", "odd permutations", "conjugation", "realness parity"] {
        rep.push(name, 0.0);
    }
    for &(j1, j2, j3) in triples {
        let js = [j1, j2, j3];
        let odd_sum = (j1.twice + j2.twice + j3.twice) % 4 != 0;
        let parity = if odd_sum { -1.0 } else { 1.0 };
        let labels = [AlphaLabel::all(j1, r)?, AlphaLabel::all(j2, r)?, AlphaLabel::all(j3, r)?];
        for a1 in &labels[0] {
            for a2 in &labels[1] {
                for a3 in &labels[2] {
                    let als = [a1, a2, a3];
                    let v = fbar(j1, j2, j3, a1, a2, a3)?;
                    for (p, odd) in PERMS {
                        let w = fbar(js[p[0]], js[p[1]], js[p[2]], als[p[0]], als[p[1]], als[p[2]])?;
                        if odd {
                            rep.record_max("odd permutations", (w - v * parity).norm());
                        } else {
                            rep.record_max("even permutations", (w - v).norm());
                        }
                    }
                    rep.record_max("conjugation", (v.conj() - v * parity).norm());
                    let off = if odd_sum { v.re.abs() } else { v.im.abs() };
                    rep.record_max("realness parity", off);
                }
            }
        }
    }
    Ok(rep)
}

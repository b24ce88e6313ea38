//! Spin-`j` realization of su(2) from the quon operators.
//!
//! The Schwinger map sends `|n_a, n_b)` with `n_a + n_b = k - 1` to `|j, m>`
//! with `j = (k-1)/2` and `m = (n_a - n_b)/2`. On that diagonal `J+ = H U_r`
//! and `J- = U_r^dag H` are the usual shift operators. Matrices here are built
//! straight from the closed-form actions on `F_j`, basis ascending in `m`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::halfint::{m_values, HalfInt};
use crate::matrix::{cis, BasisLabel, OperatorMatrix, C64};
use crate::quon::{build_h, build_rep, build_ur, FockLabel};
use crate::report::ResidualReport;

/// The space `F_j` together with the phase parameter `phi_r = 2 pi j r`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpinSpace {
    pub j: HalfInt,
    pub k: usize,
    pub r: f64,
    pub phi_r: f64,
}

impl SpinSpace {
    pub fn new(j: HalfInt, r: f64) -> Result<Self> {
        let j = HalfInt::spin(j.twice)?;
        Ok(SpinSpace {
            j,
            k: j.dim(),
            r,
            phi_r: PI * f64::from(j.twice) * r,
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn m_labels(&self) -> Vec<HalfInt> {
        m_values(self.j).expect("j validated at construction")
    }

    pub fn basis(&self) -> Vec<BasisLabel> {
        spin_basis(self.j)
    }
}

pub fn spin_basis(j: HalfInt) -> Vec<BasisLabel> {
    m_values(j)
        .expect("non-negative j")
        .into_iter()
        .map(|m| BasisLabel::Spin { j, m })
        .collect()
}

/// One entry of the Schwinger correspondence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SchwingerPair {
    pub fock: FockLabel,
    pub j: HalfInt,
    pub m: HalfInt,
}

/// The diagonal `n_a + n_b = k - 1` of `F` as `|j, m>` states, ascending in `m`.
pub fn schwinger_embed(k: i64) -> Result<Vec<SchwingerPair>> {
    if k < 2 {
        return Err(Error::OrderTooSmall(k));
    }
    let k = k as usize;
    let j = HalfInt::from_twice(k as i32 - 1);
    Ok((0..k)
        .map(|n_a| {
            let n_b = k - 1 - n_a;
            SchwingerPair {
                fock: FockLabel { n_a, n_b },
                j,
                m: HalfInt::from_twice(n_a as i32 - n_b as i32),
            }
        })
        .collect())
}

/// Inverse direction of the Schwinger map.
pub fn fock_of(j: HalfInt, m: HalfInt) -> Result<FockLabel> {
    j.check_projection(m)?;
    Ok(FockLabel {
        n_a: ((j.twice + m.twice) / 2) as usize,
        n_b: ((j.twice - m.twice) / 2) as usize,
    })
}

/// `H`, `U_r`, `U_r^dag`, `J+`, `J-`, `J3` and `J^2` on `F_j`.
#[derive(Clone, Debug, Serialize)]
pub struct SpinOperatorSet {
    pub space: SpinSpace,
    pub h: OperatorMatrix,
    pub u_r: OperatorMatrix,
    pub u_r_dag: OperatorMatrix,
    pub j_plus: OperatorMatrix,
    pub j_minus: OperatorMatrix,
    pub j3: OperatorMatrix,
    pub casimir: OperatorMatrix,
}

/// Builds the spin-`j` operators from
/// `H|j,m> = sqrt((j+m)(j-m+1)) |j,m>`,
/// `U_r|j,m> = |j,m+1>` (m < j), `U_r|j,j> = e^{i phi_r} |j,-j>`,
/// `U_r^dag|j,m> = |j,m-1>` (m > -j), `U_r^dag|j,-j> = e^{-i phi_r} |j,j>`.
pub fn build_spin_ops(j: HalfInt, r: f64) -> Result<SpinOperatorSet> {
    let space = SpinSpace::new(j, r)?;
    let n = space.dim();
    let basis = space.basis();
    let ms = space.m_labels();

    let h_diag: Vec<C64> = ms
        .iter()
        .map(|m| {
            let (tj, tm) = (f64::from(j.twice), f64::from(m.twice));
            C64::new((((tj + tm) / 2.0) * ((tj - tm + 2.0) / 2.0)).sqrt(), 0.0)
        })
        .collect();
    let h = OperatorMatrix::from_diagonal(basis.clone(), &h_diag);

    let one = C64::new(1.0, 0.0);
    let mut u_r = OperatorMatrix::zeros(basis.clone());
    let mut u_r_dag = OperatorMatrix::zeros(basis.clone());
    for i in 0..n - 1 {
        u_r.set(i + 1, i, one);
        u_r_dag.set(i, i + 1, one);
    }
    u_r.set(0, n - 1, cis(space.phi_r));
    u_r_dag.set(n - 1, 0, cis(-space.phi_r));

    let j3_diag: Vec<C64> = ms.iter().map(|m| C64::new(m.to_f64(), 0.0)).collect();
    let j3 = OperatorMatrix::from_diagonal(basis, &j3_diag);

    let j_plus = &h * &u_r;
    let j_minus = &u_r_dag * &h;
    let casimir = {
        let sym = &(&j_plus * &j_minus) + &(&j_minus * &j_plus);
        &sym.scale(C64::new(0.5, 0.0)) + &(&j3 * &j3)
    };

    Ok(SpinOperatorSet {
        space,
        h,
        u_r,
        u_r_dag,
        j_plus,
        j_minus,
        j3,
        casimir,
    })
}

/// Closed-form `J+` and `J-` on `F_j`, independent of the polar decomposition.
pub fn shift_operators(j: HalfInt) -> (OperatorMatrix, OperatorMatrix) {
    let basis = spin_basis(j);
    let ms = m_values(j).expect("non-negative j");
    let mut jp = OperatorMatrix::zeros(basis.clone());
    let mut jm = OperatorMatrix::zeros(basis);
    let jf = j.to_f64();
    for (i, m) in ms.iter().enumerate() {
        let mf = m.to_f64();
        if i + 1 < ms.len() {
            jp.set(i + 1, i, C64::new(((jf - mf) * (jf + mf + 1.0)).sqrt(), 0.0));
        }
        if i > 0 {
            jm.set(i - 1, i, C64::new(((jf + mf) * (jf - mf + 1.0)).sqrt(), 0.0));
        }
    }
    (jp, jm)
}

/// Residuals of the su(2) relations and of the generators against their
/// closed forms.
pub fn verify_su2(ops: &SpinOperatorSet) -> ResidualReport {
    let mut rep = ResidualReport::new();
    let (jp, jm, j3) = (&ops.j_plus, &ops.j_minus, &ops.j3);
    rep.push("[J3,J+] - J+", j3.commutator(jp).distance(jp));
    rep.push("[J3,J-] + J-", j3.commutator(jm).distance(&jm.scale(C64::new(-1.0, 0.0))));
    rep.push("[J+,J-] - 2 J3", jp.commutator(jm).distance(&j3.scale(C64::new(2.0, 0.0))));

    let (cp, cm) = shift_operators(ops.space.j);
    rep.push("J+ - closed form", jp.distance(&cp));
    rep.push("J- - closed form", jm.distance(&cm));
    let diag: Vec<C64> = ops.space.m_labels().iter().map(|m| C64::new(m.to_f64(), 0.0)).collect();
    rep.push("J3 - diag(m)", j3.distance(&OperatorMatrix::from_diagonal(ops.space.basis(), &diag)));

    rep.push("J- - J+^dag", jm.distance(&jp.adjoint()));
    rep.push("J3 - J3^dag", j3.distance(&j3.adjoint()));
    rep.push("U_r^dag - adjoint(U_r)", ops.u_r_dag.distance(&ops.u_r.adjoint()));
    let id = OperatorMatrix::identity(ops.space.basis());
    rep.push("U_r^dag U_r - 1", (&ops.u_r_dag * &ops.u_r).distance(&id));
    rep.push("H - H^dag", ops.h.distance(&ops.h.adjoint()));
    rep
}

/// Residuals of the Casimir identities.
pub fn casimir_identities(ops: &SpinOperatorSet) -> ResidualReport {
    let mut rep = ResidualReport::new();
    let j2 = &ops.casimir;
    let j3sq = &ops.j3 * &ops.j3;
    let h2 = &ops.h * &ops.h;

    let form_a = &(&h2 + &j3sq) - &ops.j3;
    let form_b = &(&(&(&ops.u_r_dag * &h2) * &ops.u_r) + &j3sq) + &ops.j3;
    rep.push("J2 - (H^2 + J3^2 - J3)", j2.distance(&form_a));
    rep.push("J2 - (U^dag H^2 U + J3^2 + J3)", j2.distance(&form_b));
    rep.push("[J2, U_r]", j2.commutator(&ops.u_r).max_norm());
    let jf = ops.space.j.to_f64();
    rep.push("J2 - j(j+1)", j2.distance_to_scalar(C64::new(jf * (jf + 1.0), 0.0)));
    rep
}

/// `U_r^(2j+1) - e^{i phi_r}` on `F_j`.
pub fn cyclicity_residual(ops: &SpinOperatorSet) -> f64 {
    ops.u_r
        .pow(ops.space.dim() as u32)
        .distance_to_scalar(cis(ops.space.phi_r))
}

/// Greedy multiset distance: each expected value is paired with the
/// nearest computed value not yet used.
fn multiset_distance(expected: &[C64], computed: &[C64]) -> f64 {
    if expected.len() != computed.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; computed.len()];
    let mut worst = 0.0f64;
    for e in expected {
        let (idx, d) = computed
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, c)| (i, (c - e).norm()))
            .fold((usize::MAX, f64::INFINITY), |best, x| if x.1 < best.1 { x } else { best });
        if idx == usize::MAX {
            return f64::NAN;
        }
        used[idx] = true;
        worst = worst.max(d);
    }
    worst
}

/// Eigenvalues of a normal matrix `N`: diagonalize the Hermitian part of
/// `e^{-i theta0} N` and read each eigenvalue of `N` off as a Rayleigh
/// quotient. `theta0` must keep the projected spectrum non-degenerate.
fn normal_eigenvalues(op: &OperatorMatrix, theta0: f64) -> Vec<C64> {
    let n = op.entries() * cis(-theta0);
    let herm = (&n + n.adjoint()) * C64::new(0.5, 0.0);
    let eig = nalgebra::SymmetricEigen::new(herm);
    eig.eigenvectors
        .column_iter()
        .map(|v| v.dotc(&(op.entries() * v)) / v.dotc(&v))
        .collect()
}

/// Spectra of `J3` and `U_r`, computed numerically and compared as
/// multisets with `{-j, ..., j}` and `{exp(-i alpha 2 pi / (2j+1))}`,
/// `alpha = -j r + s`.
pub fn spectrum_residuals(ops: &SpinOperatorSet) -> ResidualReport {
    let mut rep = ResidualReport::new();
    let n = ops.space.dim();
    let j3_expected: Vec<C64> = ops.space.m_labels().iter().map(|m| C64::new(m.to_f64(), 0.0)).collect();
    let jr = ops.space.j.to_f64() * ops.space.r;
    let u_expected: Vec<C64> = (0..n)
        .map(|s| cis(-2.0 * PI * (s as f64 - jr) / n as f64))
        .collect();
    // a quarter step off the phase lattice: cos(theta - theta0) never repeats
    let theta0 = 2.0 * PI * (jr - 0.25) / n as f64;
    for (name, op, expected, t0) in [
        ("J3 spectrum", &ops.j3, j3_expected, 0.0),
        ("U_r spectrum", &ops.u_r, u_expected, theta0),
    ] {
        let d = multiset_distance(&expected, &normal_eigenvalues(op, t0));
        rep.push(name, d);
    }
    rep
}

/// Restricts an operator on `F` to the Schwinger diagonal of order `k`.
/// Also returns the largest amplitude leaking from `F_j` to its complement.
pub fn restrict_to_spin(op: &OperatorMatrix, k: usize) -> Result<(OperatorMatrix, f64)> {
    if op.dim() != k * k {
        return Err(Error::Dimension {
            expected: k * k,
            got: op.dim(),
        });
    }
    let pairs = schwinger_embed(k as i64)?;
    let idx: Vec<usize> = pairs.iter().map(|p| p.fock.index(k)).collect();
    let j = pairs[0].j;
    let mut out = OperatorMatrix::zeros(spin_basis(j));
    for (a, &ia) in idx.iter().enumerate() {
        for (b, &ib) in idx.iter().enumerate() {
            out.set(a, b, op.get(ia, ib));
        }
    }
    let mut leak = 0.0f64;
    for &col in &idx {
        for row in 0..k * k {
            if !idx.contains(&row) {
                leak = leak.max(op.get(row, col).norm());
            }
        }
    }
    Ok((out, leak))
}

/// Compares the `F`-level quon operators, restricted to `F_j`, with the
/// closed-form `F_j` matrices, at `phi_r = 2 pi j r` with `j = (k-1)/2`.
pub fn quon_restriction_check(k: i64, r: f64) -> Result<ResidualReport> {
    let rep = build_rep(k)?;
    let j = HalfInt::from_twice(k as i32 - 1);
    let ops = build_spin_ops(j, r)?;
    let k = k as usize;

    let (h, h_leak) = restrict_to_spin(&build_h(&rep), k)?;
    let ur_full = build_ur(&rep, ops.space.phi_r);
    let (ur, ur_leak) = restrict_to_spin(&ur_full, k)?;
    let (ur_dag, dag_leak) = restrict_to_spin(&ur_full.adjoint(), k)?;

    let mut out = ResidualReport::new();
    out.push("H restricted - H on F_j", h.distance(&ops.h));
    out.push("U_r restricted - U_r on F_j", ur.distance(&ops.u_r));
    out.push("U_r^dag restricted - U_r^dag on F_j", ur_dag.distance(&ops.u_r_dag));
    out.push("leakage out of F_j", h_leak.max(ur_leak).max(dag_leak));
    Ok(out)
}

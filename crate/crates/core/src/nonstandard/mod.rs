//! The `{J^2, U_r}` scheme.
//!
//! For fixed real `r`, the states
//! `|j, alpha; r> = (2j+1)^{-1/2} sum_m exp(i alpha m 2 pi / (2j+1)) |j, m>`
//! with `alpha = -j r + s`, `s = 0, ..., 2j`, diagonalize `U_r` and `J^2`
//! simultaneously. This module holds the labels, the inter-basis unitary and
//! the eigenbasis check; coupling coefficients, tensor operators and the
//! recoupling check live in the submodules.

mod coupling;
mod recoupling;
mod tensor;

pub use coupling::{
    cg_nonstandard, f_small, fbar, fbar_triples, verify_cg_orthonormality, verify_fbar_symmetry,
    CouplingTable, OrthonormalitySample,
};
pub use recoupling::{recoupling_invariance_check, RecouplingContext};
pub use tensor::{
    alpha_combinations, tensor_to_alpha, wigner_eckart_check, TensorOperator, WignerEckartReport,
};

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::halfint::{m_values, HalfInt};
use crate::matrix::{cis, root_of_unity, BasisLabel, OperatorMatrix, C64};
use crate::report::ResidualReport;
use crate::su2gen::build_spin_ops;

/// Non-standard label `alpha = -j r + s`. Equality is decided on
/// `(j, s, r)`, never on the float value of `alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AlphaLabel {
    pub j: HalfInt,
    pub r: f64,
    pub s: usize,
}

impl AlphaLabel {
    pub fn new(j: HalfInt, r: f64, s: usize) -> Result<Self> {
        let j = HalfInt::spin(j.twice)?;
        if s > j.twice as usize {
            return Err(Error::AlphaStep {
                j: j.to_string(),
                s: s as i64,
                max: i64::from(j.twice),
            });
        }
        Ok(AlphaLabel { j, r, s })
    }

    /// All `2j + 1` labels for `(j, r)`, ascending in `s`.
    pub fn all(j: HalfInt, r: f64) -> Result<Vec<AlphaLabel>> {
        let j = HalfInt::spin(j.twice)?;
        Ok((0..=j.twice as usize).map(|s| AlphaLabel { j, r, s }).collect())
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        -self.j.to_f64() * self.r + self.s as f64
    }

    /// `exp(sign * i * alpha * m * 2 pi / (2j+1))`.
    ///
    /// The `s m` part is an exact root of unity of order `2(2j+1)`; only the
    /// `-j r m` part goes through a real exponential.
    pub fn phase(&self, m: HalfInt, sign: i32) -> C64 {
        let order = 2 * i64::from(self.j.twice + 1);
        let exact = root_of_unity(i64::from(sign) * self.s as i64 * i64::from(m.twice), order);
        if self.r == 0.0 || m.twice == 0 || self.j.twice == 0 {
            return exact;
        }
        let theta = -PI * f64::from(self.j.twice) * f64::from(m.twice) * self.r / (2.0 * f64::from(self.j.twice + 1));
        exact * cis(f64::from(sign) * theta)
    }

    /// Eigenvalue `exp(-i alpha 2 pi / (2j+1))` of `U_r` on `|j, alpha; r>`.
    pub fn u_eigenvalue(&self) -> C64 {
        let dim = i64::from(self.j.twice + 1);
        let exact = root_of_unity(-(self.s as i64), dim);
        if self.r == 0.0 || self.j.twice == 0 {
            return exact;
        }
        exact * cis(PI * f64::from(self.j.twice) * self.r / dim as f64)
    }

    pub fn basis_label(&self) -> BasisLabel {
        BasisLabel::Alpha {
            j: self.j,
            s: self.s,
            r: self.r,
        }
    }
}

pub(crate) fn same_r(labels: &[&AlphaLabel]) -> Result<f64> {
    let r = labels[0].r;
    for a in &labels[1..] {
        if a.r.to_bits() != r.to_bits() && !(a.r == 0.0 && r == 0.0) {
            return Err(Error::MixedR(r, a.r));
        }
    }
    Ok(r)
}

/// `<j m | j alpha; r> = (2j+1)^{-1/2} exp(i alpha m 2 pi / (2j+1))`.
pub fn overlap(j: HalfInt, m: HalfInt, a: &AlphaLabel) -> Result<C64> {
    if a.j != j {
        return Err(Error::LabelMismatch(format!("alpha label carries j = {}, expected {}", a.j, j)));
    }
    j.check_projection(m)?;
    Ok(a.phase(m, 1) / f64::from(j.twice + 1).sqrt())
}

/// The unitary with entries `<j m | j alpha; r>`; rows run over `m`
/// ascending, columns over `s` ascending.
pub fn overlap_matrix(j: HalfInt, r: f64) -> Result<DMatrix<C64>> {
    let ms = m_values(j)?;
    let alphas = AlphaLabel::all(j, r)?;
    let norm = f64::from(j.twice + 1).sqrt();
    Ok(DMatrix::from_fn(ms.len(), alphas.len(), |i, c| alphas[c].phase(ms[i], 1) / norm))
}

/// `|j, alpha; r>` expanded in the standard basis.
pub fn alpha_state(a: &AlphaLabel) -> Vec<C64> {
    let norm = f64::from(a.j.twice + 1).sqrt();
    m_values(a.j)
        .expect("validated label")
        .into_iter()
        .map(|m| a.phase(m, 1) / norm)
        .collect()
}

pub fn alpha_basis(j: HalfInt, r: f64) -> Result<Vec<BasisLabel>> {
    Ok(AlphaLabel::all(j, r)?.iter().map(AlphaLabel::basis_label).collect())
}

fn check_dim(j: HalfInt, got: usize) -> Result<()> {
    let expected = HalfInt::spin(j.twice)?.dim();
    if got != expected {
        return Err(Error::Dimension { expected, got });
    }
    Ok(())
}

/// Components of a standard-basis vector in the `alpha` basis.
pub fn to_nonstandard_vector(j: HalfInt, r: f64, v: &[C64]) -> Result<Vec<C64>> {
    check_dim(j, v.len())?;
    let w = overlap_matrix(j, r)?;
    let out = w.adjoint() * DVector::from_column_slice(v);
    Ok(out.iter().copied().collect())
}

/// Components of an `alpha`-basis vector in the standard basis.
pub fn to_standard_vector(j: HalfInt, r: f64, v: &[C64]) -> Result<Vec<C64>> {
    check_dim(j, v.len())?;
    let w = overlap_matrix(j, r)?;
    let out = w * DVector::from_column_slice(v);
    Ok(out.iter().copied().collect())
}

/// `W^dag A W`: the matrix of `A` in the `alpha` basis.
pub fn to_nonstandard(j: HalfInt, r: f64, op: &OperatorMatrix) -> Result<OperatorMatrix> {
    check_dim(j, op.dim())?;
    let w = overlap_matrix(j, r)?;
    OperatorMatrix::new(alpha_basis(j, r)?, w.adjoint() * op.entries() * &w)
}

/// `W A W^dag`: back to the standard basis.
pub fn to_standard(j: HalfInt, r: f64, op: &OperatorMatrix) -> Result<OperatorMatrix> {
    check_dim(j, op.dim())?;
    let w = overlap_matrix(j, r)?;
    OperatorMatrix::new(crate::su2gen::spin_basis(j), &w * op.entries() * w.adjoint())
}

/// `||W^dag W - 1||_max` for the overlap matrix.
pub fn overlap_unitarity_residual(j: HalfInt, r: f64) -> Result<f64> {
    let w = overlap_matrix(j, r)?;
    let n = w.ncols();
    let prod = w.adjoint() * &w;
    let mut worst = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let target = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((prod[(a, b)] - C64::new(target, 0.0)).norm());
        }
    }
    Ok(worst)
}

fn euclid(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Residuals of `U_r |j,alpha;r> = exp(-i alpha 2pi/(2j+1)) |j,alpha;r>` and
/// `J^2 |j,alpha;r> = j(j+1) |j,alpha;r>` over every label, plus unitarity
/// of the overlap matrix.
pub fn verify_eigenbasis(j: HalfInt, r: f64) -> Result<ResidualReport> {
    let ops = build_spin_ops(j, r)?;
    let jf = j.to_f64();
    let mut rep = ResidualReport::new();
    rep.push("U_r eigen-equation", 0.0);
    rep.push("J2 eigen-equation", 0.0);
    for a in AlphaLabel::all(j, r)? {
        let v = alpha_state(&a);
        let lam = a.u_eigenvalue();
        let uv = ops.u_r.apply(&v);
        let du: Vec<C64> = uv.iter().zip(&v).map(|(x, y)| x - lam * y).collect();
        rep.record_max("U_r eigen-equation", euclid(&du));
        let cv = ops.casimir.apply(&v);
        let dc: Vec<C64> = cv.iter().zip(&v).map(|(x, y)| x - y * (jf * (jf + 1.0))).collect();
        rep.record_max("J2 eigen-equation", euclid(&dc));
    }
    rep.push("overlap unitarity", overlap_unitarity_residual(j, r)?);
    Ok(rep)
}

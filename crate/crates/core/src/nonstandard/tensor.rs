use nalgebra::DMatrix;
use serde::Serialize;

use super::{f_small, overlap_matrix, AlphaLabel};
use crate::error::{Error, Result};
use crate::halfint::{m_values, phase, triangle, HalfInt};
use crate::matrix::C64;
use crate::standard::cg_f64;
use crate::su2gen::SpinOperatorSet;

/// Spherical components `T^(k)_q`, `q = -k..k` ascending, mapping the
/// spin-`ket_j` space into the spin-`bra_j` space.
#[derive(Clone, Debug)]
pub struct TensorOperator {
    rank: HalfInt,
    bra_j: HalfInt,
    ket_j: HalfInt,
    components: Vec<DMatrix<C64>>,
    /// Extra quantum numbers of the bra/ket sides; carried, never interpreted.
    pub source_tag: String,
}

impl TensorOperator {
    pub fn new(
        rank: HalfInt,
        bra_j: HalfInt,
        ket_j: HalfInt,
        components: Vec<DMatrix<C64>>,
        source_tag: impl Into<String>,
    ) -> Result<Self> {
        if rank.twice < 0 || !rank.is_integer() {
            return Err(Error::Tensor(format!("rank must be a non-negative integer, got {rank}")));
        }
        HalfInt::spin(bra_j.twice)?;
        HalfInt::spin(ket_j.twice)?;
        if components.len() != rank.dim() {
            return Err(Error::Tensor(format!(
                "rank {rank} needs {} components, got {}",
                rank.dim(),
                components.len()
            )));
        }
        for c in &components {
            if c.nrows() != bra_j.dim() || c.ncols() != ket_j.dim() {
                return Err(Error::Tensor(format!(
                    "component is {}x{}, expected {}x{}",
                    c.nrows(),
                    c.ncols(),
                    bra_j.dim(),
                    ket_j.dim()
                )));
            }
        }
        Ok(TensorOperator {
            rank,
            bra_j,
            ket_j,
            components,
            source_tag: source_tag.into(),
        })
    }

    pub fn rank(&self) -> HalfInt {
        self.rank
    }

    pub fn bra_j(&self) -> HalfInt {
        self.bra_j
    }

    pub fn ket_j(&self) -> HalfInt {
        self.ket_j
    }

    pub fn components(&self) -> &[DMatrix<C64>] {
        &self.components
    }

    /// The scalar (rank-0) identity on spin `j`.
    pub fn identity(j: HalfInt) -> Result<Self> {
        let n = HalfInt::spin(j.twice)?.dim();
        Self::new(HalfInt::ZERO, j, j, vec![DMatrix::identity(n, n)], "identity")
    }

    /// The vector operator `J`: `T_{+1} = -J+/sqrt2`, `T_0 = J3`, `T_{-1} = J-/sqrt2`.
    pub fn from_angular_momentum(ops: &SpinOperatorSet) -> Result<Self> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let comps = vec![
            ops.j_minus.entries().map(|z| z * s),
            ops.j3.entries().clone(),
            ops.j_plus.entries().map(|z| -z * s),
        ];
        let j = ops.space.j;
        Self::new(HalfInt::ONE, j, j, comps, "J")
    }

    /// `[A (x) B]^(k)_q = sum (ka kb qa qb | k q) A_qa B_qb`.
    pub fn couple(a: &TensorOperator, b: &TensorOperator, rank: HalfInt) -> Result<Self> {
        if a.ket_j != b.bra_j {
            return Err(Error::Tensor(format!(
                "cannot compose: left acts on j = {}, right lands in j = {}",
                a.ket_j, b.bra_j
            )));
        }
        if !triangle(a.rank, b.rank, rank) {
            return Err(Error::Tensor(format!("rank {rank} not in {} x {}", a.rank, b.rank)));
        }
        let qa_all = m_values(a.rank)?;
        let qb_all = m_values(b.rank)?;
        let mut comps = Vec::with_capacity(rank.dim());
        for q in m_values(rank)? {
            let mut acc = DMatrix::zeros(a.bra_j.dim(), b.ket_j.dim());
            for (ia, &qa) in qa_all.iter().enumerate() {
                for (ib, &qb) in qb_all.iter().enumerate() {
                    let c = cg_f64(a.rank, b.rank, qa, qb, rank, q);
                    if c != 0.0 {
                        acc += (&a.components[ia] * &b.components[ib]).map(|z| z * c);
                    }
                }
            }
            comps.push(acc);
        }
        let tag = format!("[{} x {}]^{}", a.source_tag, b.source_tag, rank);
        Self::new(rank, a.bra_j, b.ket_j, comps, tag)
    }

    /// A tensor whose standard-basis matrix elements are fixed by the
    /// standard Wigner-Eckart theorem with the given reduced element,
    /// `<j1 m1|T_q|j2 m2> = reduced (-1)^{2k} (2j1+1)^{-1/2} (j2 k m2 q | j1 m1)`.
    pub fn from_reduced(bra_j: HalfInt, ket_j: HalfInt, rank: HalfInt, reduced: C64) -> Result<Self> {
        let m1s = m_values(bra_j)?;
        let m2s = m_values(ket_j)?;
        let sign = f64::from(phase(2 * rank.twice));
        let norm = sign / f64::from(bra_j.twice + 1).sqrt();
        let comps = m_values(rank)?
            .into_iter()
            .map(|q| {
                DMatrix::from_fn(m1s.len(), m2s.len(), |i, k| {
                    reduced * (norm * cg_f64(ket_j, rank, m2s[k], q, bra_j, m1s[i]))
                })
            })
            .collect();
        Self::new(rank, bra_j, ket_j, comps, "reduced")
    }
}

/// `T_alpha(r) = (2k+1)^{-1/2} sum_q exp(i alpha q 2pi/(2k+1)) T_q`, still in
/// the standard bra/ket bases. Indexed by the step index `s` of `alpha`.
pub fn alpha_combinations(t: &TensorOperator, r: f64) -> Result<Vec<DMatrix<C64>>> {
    let qs = m_values(t.rank)?;
    let norm = 1.0 / f64::from(t.rank.twice + 1).sqrt();
    AlphaLabel::all(t.rank, r)?
        .iter()
        .map(|a| {
            let mut acc = DMatrix::zeros(t.bra_j.dim(), t.ket_j.dim());
            for (iq, &q) in qs.iter().enumerate() {
                acc += t.components[iq].map(|z| z * a.phase(q, 1) * norm);
            }
            Ok(acc)
        })
        .collect()
}

/// The components `T_alpha(r)` as matrices between `|j1, alpha1; r>` and
/// `|j2, alpha2; r>` states.
pub fn tensor_to_alpha(t: &TensorOperator, r: f64) -> Result<Vec<DMatrix<C64>>> {
    let w_bra = overlap_matrix(t.bra_j, r)?;
    let w_ket = overlap_matrix(t.ket_j, r)?;
    Ok(alpha_combinations(t, r)?
        .into_iter()
        .map(|m| w_bra.adjoint() * m * &w_ket)
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct WignerEckartReport {
    /// Best-fit constant `c` in `<j1 a1|T_a|j2 a2> = c f_r(j1 j2 k; a1 a2 a)`.
    pub reduced_element: C64,
    /// Largest `|<..|T|..> - c f_r|` over every label triple.
    pub max_residual: f64,
    /// Largest matrix element where `f_r` itself vanishes.
    pub unexplained: f64,
}

impl WignerEckartReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual <= tol && self.unexplained <= tol
    }
}

/// Matrix elements of `T_alpha(r)` in the `{J^2, U_r}` basis checked against
/// `f_r(j1 j2 k; alpha1 alpha2 alpha)` up to a single label-independent factor.
pub fn wigner_eckart_check(t: &TensorOperator, j1: HalfInt, j2: HalfInt, r: f64) -> Result<WignerEckartReport> {
    if t.bra_j != j1 || t.ket_j != j2 {
        return Err(Error::LabelMismatch(format!(
            "tensor maps j = {} to j = {}, asked for {} <- {}",
            t.ket_j, t.bra_j, j1, j2
        )));
    }
    let k = t.rank;
    let elements = tensor_to_alpha(t, r)?;
    let a1s = AlphaLabel::all(j1, r)?;
    let a2s = AlphaLabel::all(j2, r)?;
    let aks = AlphaLabel::all(k, r)?;

    let mut pairs = Vec::with_capacity(a1s.len() * a2s.len() * aks.len());
    for a1 in &a1s {
        for a2 in &a2s {
            for a in &aks {
                let f = f_small(j1, j2, k, a1, a2, a)?;
                let m = elements[a.s][(a1.s, a2.s)];
                pairs.push((f, m));
            }
        }
    }
    let norm: f64 = pairs.iter().map(|(f, _)| f.norm_sqr()).sum();
    let reduced_element = if norm > 0.0 {
        pairs.iter().map(|(f, m)| f.conj() * m).sum::<C64>() / norm
    } else {
        C64::new(0.0, 0.0)
    };
    let mut max_residual = 0.0f64;
    let mut unexplained = 0.0f64;
    for (f, m) in &pairs {
        max_residual = max_residual.max((m - reduced_element * f).norm());
        if f.norm() <= 1e-12 {
            unexplained = unexplained.max(m.norm());
        }
    }
    Ok(WignerEckartReport {
        reduced_element,
        max_residual,
        unexplained,
    })
}

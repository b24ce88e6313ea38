//! SU(2) built from two quon algebras at `q = exp(2 pi i / k)`, the polar
//! decomposition `J+ = H U_r`, and the Wigner-Racah algebra of SU(2) in the
//! non-standard `{J^2, U_r}` basis checked against the usual `{J^2, J_3}` one.
//!
//! ```
//! use quon_su2::{build_spin_ops, verify_su2, HalfInt};
//!
//! let j: HalfInt = "3/2".parse().unwrap();
//! let ops = build_spin_ops(j, 0.37).unwrap();
//! assert!(verify_su2(&ops).within(1e-11));
//! ```

pub mod error;
pub mod exact;
pub mod halfint;
pub mod identities;
pub mod matrix;
pub mod nonstandard;
pub mod quon;
pub mod report;
pub mod standard;
pub mod su2gen;
pub mod symbol;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{ExactSqrtRational, SurdSum};
pub use halfint::{coupled_spins, m_values, triangle, HalfInt};
pub use matrix::{BasisLabel, OperatorMatrix, C64};
pub use nonstandard::{
    cg_nonstandard, f_small, fbar, overlap, recoupling_invariance_check, tensor_to_alpha, to_nonstandard, to_standard,
    verify_cg_orthonormality, verify_eigenbasis, verify_fbar_symmetry, wigner_eckart_check, AlphaLabel,
    TensorOperator, WignerEckartReport,
};
pub use quon::{build_h, build_rep, build_ur, q_factorial, q_number, w_commutator_check, w_generator, QDeformation, QuonRep};
pub use report::ResidualReport;
pub use standard::{cg, metric_standard, ninej, sixj, threejm};
pub use su2gen::{build_spin_ops, casimir_identities, schwinger_embed, verify_su2, SpinOperatorSet, SpinSpace};
pub use symbol::{parse_r, Scheme, SymbolValue};
pub use verify::{run_suite, CheckResult, VerifyConfig, VerifyReport};

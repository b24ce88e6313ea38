//! Dense complex operator matrices with an explicit ordered basis.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;

pub type C64 = Complex64;

/// Label of one basis vector.
#[derive(Clone, Debug, PartialEq)]
pub enum BasisLabel {
    /// `|n_a, n_b)` in the two-oscillator Fock space.
    Fock { n_a: usize, n_b: usize },
    /// `|j, m>` in the standard basis.
    Spin { j: HalfInt, m: HalfInt },
    /// `|j, alpha; r>` with `alpha = -j r + s`.
    Alpha { j: HalfInt, s: usize, r: f64 },
    /// A single oscillator level `|n)`.
    Level(usize),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Fock { n_a, n_b } => write!(f, "|{n_a},{n_b})"),
            BasisLabel::Spin { j, m } => write!(f, "|{j},{m}>"),
            BasisLabel::Alpha { j, s, r } => write!(f, "|{j},s={s};r={r}>"),
            BasisLabel::Level(n) => write!(f, "|{n})"),
        }
    }
}

impl Serialize for BasisLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A square operator matrix. Rows and columns share `basis`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    basis: Vec<BasisLabel>,
    entries: DMatrix<C64>,
}

impl OperatorMatrix {
    pub fn new(basis: Vec<BasisLabel>, entries: DMatrix<C64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::Dimension {
                expected: entries.nrows(),
                got: entries.ncols(),
            });
        }
        if basis.len() != entries.nrows() {
            return Err(Error::Dimension {
                expected: basis.len(),
                got: entries.nrows(),
            });
        }
        Ok(OperatorMatrix { basis, entries })
    }

    pub fn zeros(basis: Vec<BasisLabel>) -> Self {
        let n = basis.len();
        OperatorMatrix {
            basis,
            entries: DMatrix::zeros(n, n),
        }
    }

    pub fn identity(basis: Vec<BasisLabel>) -> Self {
        let n = basis.len();
        OperatorMatrix {
            basis,
            entries: DMatrix::identity(n, n),
        }
    }

    pub fn from_diagonal(basis: Vec<BasisLabel>, diag: &[C64]) -> Self {
        let mut m = Self::zeros(basis);
        for (i, &d) in diag.iter().enumerate() {
            m.entries[(i, i)] = d;
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    #[inline]
    pub fn basis(&self) -> &[BasisLabel] {
        &self.basis
    }

    #[inline]
    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[(row, col)]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: C64) {
        self.entries[(row, col)] = v;
    }

    /// Same entries, relabelled basis.
    pub fn with_basis(mut self, basis: Vec<BasisLabel>) -> Result<Self> {
        if basis.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: basis.len(),
            });
        }
        self.basis = basis;
        Ok(self)
    }

    pub fn adjoint(&self) -> Self {
        OperatorMatrix {
            basis: self.basis.clone(),
            entries: self.entries.adjoint(),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        OperatorMatrix {
            basis: self.basis.clone(),
            entries: self.entries.map(|x| x * c),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::identity(self.basis.clone());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from `other`.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    /// Deviation from a multiple of the identity.
    pub fn distance_to_scalar(&self, c: C64) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { c } else { C64::new(0.0, 0.0) };
                worst = worst.max((self.entries[(i, j)] - target).norm());
            }
        }
        worst
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.entries[(i, j)].norm() <= tol))
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim()).map(|i| self.entries[(i, i)]).collect()
    }

    /// Kronecker product; the basis of the result is supplied by the caller.
    pub fn kron(&self, other: &Self, basis: Vec<BasisLabel>) -> Result<Self> {
        OperatorMatrix::new(basis, self.entries.kronecker(&other.entries))
    }

    /// Applies the operator to a column vector.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim(), "dimension mismatch");
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.entries[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Row-major `[re, im]` pairs, the JSON export layout.
    pub fn to_pairs(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| [self.entries[(i, j)].re, self.entries[(i, j)].im]).collect())
            .collect()
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix {
            basis: self.basis.clone(),
            entries: &self.entries * &rhs.entries,
        }
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix {
            basis: self.basis.clone(),
            entries: &self.entries + &rhs.entries,
        }
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix {
            basis: self.basis.clone(),
            entries: &self.entries - &rhs.entries,
        }
    }
}

impl Serialize for OperatorMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OperatorMatrix", 3)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("entries", &self.to_pairs())?;
        st.end()
    }
}

/// `exp(2 pi i num / den)` with the exponent reduced modulo `den` first.
pub fn root_of_unity(num: i64, den: i64) -> C64 {
    assert!(den > 0, "root of unity with non-positive order");
    let p = num.rem_euclid(den);
    if p == 0 {
        return C64::new(1.0, 0.0);
    }
    if 2 * p == den {
        return C64::new(-1.0, 0.0);
    }
    if 4 * p == den {
        return C64::new(0.0, 1.0);
    }
    if 4 * p == 3 * den {
        return C64::new(0.0, -1.0);
    }
    let theta = 2.0 * std::f64::consts::PI * (p as f64) / (den as f64);
    C64::from_polar(1.0, theta)
}

/// `exp(i theta)`.
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

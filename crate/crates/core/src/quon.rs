//! Two quon algebras at `q = exp(2 pi i / k)` and the operators they generate
//! on the Fock space `F = F_a (x) F_b`.
//!
//! The Fock basis is ordered `n_a`-major: `|n_a, n_b)` sits at index
//! `n_a * k + n_b`.

use std::collections::HashMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{cis, root_of_unity, BasisLabel, OperatorMatrix, C64};
use crate::report::ResidualReport;

/// Largest order accepted by [`build_rep`]; `F` then has dimension 4096.
pub const MAX_ORDER: usize = 64;

/// The deformation parameter `q = exp(2 pi i / k)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QDeformation {
    k: usize,
    q: C64,
}

impl QDeformation {
    pub fn new(k: i64) -> Result<Self> {
        if k < 2 {
            return Err(Error::OrderTooSmall(k));
        }
        if k as usize > MAX_ORDER {
            return Err(Error::OrderTooLarge(k as usize, MAX_ORDER));
        }
        Ok(QDeformation {
            k: k as usize,
            q: root_of_unity(1, k),
        })
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn q(&self) -> C64 {
        self.q
    }

    /// `q^p` for integer `p`, reduced modulo `k`.
    #[inline]
    pub fn power(&self, p: i64) -> C64 {
        root_of_unity(p, self.k as i64)
    }

    /// `q^x` for real `x`.
    pub fn real_power(&self, x: f64) -> C64 {
        if x.fract() == 0.0 && x.abs() < 1e15 {
            self.power(x as i64)
        } else {
            cis(2.0 * PI * x / self.k as f64)
        }
    }
}

/// Label `|n_a, n_b)` of the Fock basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FockLabel {
    pub n_a: usize,
    pub n_b: usize,
}

impl FockLabel {
    #[inline]
    pub fn index(self, k: usize) -> usize {
        self.n_a * k + self.n_b
    }

    #[inline]
    pub fn from_index(i: usize, k: usize) -> Self {
        FockLabel { n_a: i / k, n_b: i % k }
    }
}

/// `[x]_q = (1 - q^x) / (1 - q)`.
pub fn q_number(x: f64, d: &QDeformation) -> C64 {
    let one = C64::new(1.0, 0.0);
    (one - d.real_power(x)) / (one - d.q())
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`, with `[0]_q! = 1`. Only `0 <= n <= k-1`
/// is accepted, since the product vanishes from `n = k` on.
pub fn q_factorial(n: i64, d: &QDeformation) -> Result<C64> {
    let max = d.k() as i64 - 1;
    if n < 0 || n > max {
        return Err(Error::QFactorialRange { n, max });
    }
    Ok((1..=n).map(|i| q_number(i as f64, d)).product())
}

/// The `k`-dimensional representations of the algebras `A` and `B`.
#[derive(Clone, Debug)]
pub struct QuonRep {
    pub deformation: QDeformation,
    pub a_plus: OperatorMatrix,
    pub a_minus: OperatorMatrix,
    pub n_a: OperatorMatrix,
    pub b_plus: OperatorMatrix,
    pub b_minus: OperatorMatrix,
    pub n_b: OperatorMatrix,
}

fn levels(k: usize) -> Vec<BasisLabel> {
    (0..k).map(BasisLabel::Level).collect()
}

pub fn fock_basis(k: usize) -> Vec<BasisLabel> {
    (0..k * k)
        .map(|i| {
            let l = FockLabel::from_index(i, k);
            BasisLabel::Fock { n_a: l.n_a, n_b: l.n_b }
        })
        .collect()
}

/// Builds
/// `a+ |n) = |n+1)`, `a- |n) = [n]_q |n-1)`,
/// `b+ |n) = [n+1]_q |n+1)`, `b- |n) = |n-1)`, `N |n) = n |n)`
/// with `a+|k-1) = b+|k-1) = 0` and `a-|0) = b-|0) = 0`.
pub fn build_rep(k: i64) -> Result<QuonRep> {
    let d = QDeformation::new(k)?;
    let k = d.k();
    let one = C64::new(1.0, 0.0);
    let basis = levels(k);

    let mut a_plus = OperatorMatrix::zeros(basis.clone());
    let mut a_minus = OperatorMatrix::zeros(basis.clone());
    let mut b_plus = OperatorMatrix::zeros(basis.clone());
    let mut b_minus = OperatorMatrix::zeros(basis.clone());
    for n in 0..k - 1 {
        // column = source state, row = image
        a_plus.set(n + 1, n, one);
        b_plus.set(n + 1, n, q_number((n + 1) as f64, &d));
    }
    for n in 1..k {
        a_minus.set(n - 1, n, q_number(n as f64, &d));
        b_minus.set(n - 1, n, one);
    }
    let number: Vec<C64> = (0..k).map(|n| C64::new(n as f64, 0.0)).collect();
    let n_a = OperatorMatrix::from_diagonal(basis.clone(), &number);
    let n_b = OperatorMatrix::from_diagonal(basis, &number);

    Ok(QuonRep {
        deformation: d,
        a_plus,
        a_minus,
        n_a,
        b_plus,
        b_minus,
        n_b,
    })
}

impl QuonRep {
    #[inline]
    pub fn k(&self) -> usize {
        self.deformation.k()
    }

    /// `X (x) 1` on `F`.
    pub fn embed_a(&self, op: &OperatorMatrix) -> OperatorMatrix {
        let k = self.k();
        op.kron(&OperatorMatrix::identity(levels(k)), fock_basis(k))
            .expect("k x k operator")
    }

    /// `1 (x) Y` on `F`.
    pub fn embed_b(&self, op: &OperatorMatrix) -> OperatorMatrix {
        let k = self.k();
        OperatorMatrix::identity(levels(k))
            .kron(op, fock_basis(k))
            .expect("k x k operator")
    }

    /// Residuals of the defining relations of `A` and `B` and of their
    /// mutual commutation on `F`. Nilpotency entries are exact (0 or not).
    pub fn defining_relations(&self) -> ResidualReport {
        let k = self.k();
        let q = self.deformation.q();
        let id = OperatorMatrix::identity(levels(k));
        let mut rep = ResidualReport::new();

        for (tag, plus, minus, num) in [
            ("a", &self.a_plus, &self.a_minus, &self.n_a),
            ("b", &self.b_plus, &self.b_minus, &self.n_b),
        ] {
            let lhs = &(minus * plus) - &(plus * minus).scale(q);
            rep.push(format!("{tag}- {tag}+ - q {tag}+ {tag}- - 1"), lhs.distance(&id));
            rep.push(format!("[N_{tag}, {tag}+] - {tag}+"), num.commutator(plus).distance(plus));
            rep.push(format!("[N_{tag}, {tag}-] + {tag}-"), num.commutator(minus).distance(&minus.scale(C64::new(-1.0, 0.0))));
            rep.push(format!("({tag}+)^k"), plus.pow(k as u32).max_norm());
            rep.push(format!("({tag}-)^k"), minus.pow(k as u32).max_norm());
        }

        let a_ops = [&self.a_plus, &self.a_minus, &self.n_a];
        let b_ops = [&self.b_plus, &self.b_minus, &self.n_b];
        let mut worst = 0.0f64;
        for a in a_ops {
            let ea = self.embed_a(a);
            for b in b_ops {
                worst = worst.max(ea.commutator(&self.embed_b(b)).max_norm());
            }
        }
        rep.push("[A, B] on F", worst);
        rep
    }
}

/// `H = sqrt(N_a (N_b + 1))`, diagonal on `F`.
pub fn build_h(rep: &QuonRep) -> OperatorMatrix {
    let k = rep.k();
    let diag: Vec<C64> = (0..k * k)
        .map(|i| {
            let l = FockLabel::from_index(i, k);
            C64::new(((l.n_a * (l.n_b + 1)) as f64).sqrt(), 0.0)
        })
        .collect();
    OperatorMatrix::from_diagonal(fock_basis(k), &diag)
}

/// `U_r = [a+ + e^{i phi/2} (a-)^{k-1} / [k-1]_q!] [b- + e^{i phi/2} (b+)^{k-1} / [k-1]_q!]`.
pub fn build_ur(rep: &QuonRep, phi_r: f64) -> OperatorMatrix {
    let k = rep.k();
    let d = &rep.deformation;
    let half_phase = cis(phi_r / 2.0);
    let norm = q_factorial(k as i64 - 1, d).expect("k - 1 is in range");
    let wrap = half_phase / norm;
    let left = &rep.a_plus + &rep.a_minus.pow(k as u32 - 1).scale(wrap);
    let right = &rep.b_minus + &rep.b_plus.pow(k as u32 - 1).scale(wrap);
    &rep.embed_a(&left) * &rep.embed_b(&right)
}

/// `V = q^{N_a - N_b}` on `F`.
pub fn build_v(rep: &QuonRep) -> OperatorMatrix {
    let k = rep.k();
    let d = &rep.deformation;
    let diag: Vec<C64> = (0..k * k)
        .map(|i| {
            let l = FockLabel::from_index(i, k);
            d.power(l.n_a as i64 - l.n_b as i64)
        })
        .collect();
    OperatorMatrix::from_diagonal(fock_basis(k), &diag)
}

/// Precomputed powers of `U = U_r` and `V` for evaluating many
/// `T_(m1,m2) = q^{m1 m2} U^{m1} V^{m2}`.
pub struct WGenerators {
    deformation: QDeformation,
    u_powers: Vec<OperatorMatrix>,
    v_powers: Vec<OperatorMatrix>,
    cache: HashMap<(usize, usize), OperatorMatrix>,
}

impl WGenerators {
    pub fn new(rep: &QuonRep, phi_r: f64) -> Self {
        let u = build_ur(rep, phi_r);
        let v = build_v(rep);
        WGenerators {
            deformation: rep.deformation,
            u_powers: vec![OperatorMatrix::identity(fock_basis(rep.k())), u],
            v_powers: vec![OperatorMatrix::identity(fock_basis(rep.k())), v],
            cache: HashMap::new(),
        }
    }

    fn power(cache: &mut Vec<OperatorMatrix>, n: usize) -> OperatorMatrix {
        while cache.len() <= n {
            let next = &cache[cache.len() - 1] * &cache[1];
            cache.push(next);
        }
        cache[n].clone()
    }

    pub fn t(&mut self, m1: usize, m2: usize) -> OperatorMatrix {
        if let Some(t) = self.cache.get(&(m1, m2)) {
            return t.clone();
        }
        let u = Self::power(&mut self.u_powers, m1);
        let v = Self::power(&mut self.v_powers, m2);
        let t = (&u * &v).scale(self.deformation.power((m1 * m2) as i64));
        self.cache.insert((m1, m2), t.clone());
        t
    }

    /// Max-norm of `[T_m, T_n] + 2i sin((2 pi / k) m x n) T_{m+n}`.
    pub fn commutator_residual(&mut self, m: (usize, usize), n: (usize, usize)) -> f64 {
        let k = self.deformation.k() as i64;
        let tm = self.t(m.0, m.1);
        let tn = self.t(n.0, n.1);
        let tmn = self.t(m.0 + n.0, m.1 + n.1);
        let cross = (m.0 * n.1) as i64 - (m.1 * n.0) as i64;
        let s = (2.0 * PI * cross.rem_euclid(k) as f64 / k as f64).sin();
        let rhs = tmn.scale(C64::new(0.0, 2.0 * s));
        (&tm.commutator(&tn) + &rhs).max_norm()
    }
}

/// `T_(m1,m2) = q^{m1 m2} U_r^{m1} V^{m2}`.
pub fn w_generator(rep: &QuonRep, phi_r: f64, m1: usize, m2: usize) -> OperatorMatrix {
    WGenerators::new(rep, phi_r).t(m1, m2)
}

/// Residual of the structure relation `[T_m, T_n] = -2i sin((2 pi/k) m x n) T_{m+n}`.
pub fn w_commutator_check(rep: &QuonRep, phi_r: f64, m: (usize, usize), n: (usize, usize)) -> f64 {
    WGenerators::new(rep, phi_r).commutator_residual(m, n)
}

/// Worst structure-relation residual over all `m, n` in `[0, range)^2`.
pub fn w_commutator_sweep(rep: &QuonRep, phi_r: f64, range: usize) -> f64 {
    let mut gens = WGenerators::new(rep, phi_r);
    let mut worst = 0.0f64;
    for m1 in 0..range {
        for m2 in 0..range {
            for n1 in 0..range {
                for n2 in 0..range {
                    worst = worst.max(gens.commutator_residual((m1, m2), (n1, n2)));
                }
            }
        }
    }
    worst
}

//! The full verification suite behind `verify`.
//!
//! Every check produces a residual and compares it with a tolerance. Exact
//! standard-layer checks have tolerance zero; all others carry a default
//! that can be replaced uniformly.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::halfint::{coupled_spins, HalfInt};
use crate::identities::{cg_orthogonality, sixj_contraction, sixj_symmetries, threejm_symmetries, ExactTally};
use crate::matrix::cis;
use crate::nonstandard::{
    fbar_triples, verify_cg_orthonormality, verify_eigenbasis, verify_fbar_symmetry, wigner_eckart_check,
    OrthonormalitySample, RecouplingContext, TensorOperator,
};
use crate::quon::{build_rep, build_ur, w_commutator_sweep};
use crate::report::ResidualReport;
use crate::su2gen::{
    build_spin_ops, casimir_identities, cyclicity_residual, quon_restriction_check, spectrum_residuals, verify_su2,
};

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    /// Largest spin for the spin-`j` and eigenbasis suites.
    pub j_max: HalfInt,
    pub r_values: Vec<f64>,
    /// Quon orders; the `W` algebra runs on those `<= 6`, the restriction
    /// check on those `<= 10`.
    pub k_values: Vec<i64>,
    /// Replaces every non-exact tolerance when set.
    pub tol: Option<f64>,
    pub seed: u64,
    pub random_samples: usize,
    /// Spin bound for randomly drawn orthonormality entries.
    pub random_j_max: HalfInt,
    /// Largest spin in exhaustive non-standard coupling checks.
    pub coupling_j_max: HalfInt,
    /// Bound on `2(j1 + j2 + j3)` for the `fbar` symmetry check.
    pub fbar_twice_sum: i32,
    /// Largest spin in the Wigner-Eckart checks.
    pub tensor_j_max: HalfInt,
    /// Largest argument in the exact standard-layer checks.
    pub standard_j_max: HalfInt,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            j_max: HalfInt::from_twice(25),
            r_values: vec![0.0, 0.37, 1.0, 2.5],
            k_values: (2..=12).collect(),
            tol: None,
            seed: 0x5eed,
            random_samples: 100,
            random_j_max: HalfInt::from_int(4),
            coupling_j_max: HalfInt::from_twice(3),
            fbar_twice_sum: 9,
            tensor_j_max: HalfInt::from_int(3),
            standard_j_max: HalfInt::from_int(2),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub parameters: BTreeMap<String, String>,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub config: VerifyConfig,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

struct Emitter<'a> {
    tol_override: Option<f64>,
    out: &'a mut Vec<CheckResult>,
}

impl Emitter<'_> {
    fn float(&mut self, name: &str, params: &[(&str, String)], residual: f64, default_tol: f64) {
        let tolerance = self.tol_override.unwrap_or(default_tol);
        self.out.push(CheckResult {
            name: name.to_string(),
            parameters: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            residual,
            tolerance,
            pass: !residual.is_nan() && residual <= tolerance,
        });
    }

    fn report(&mut self, prefix: &str, params: &[(&str, String)], rep: &ResidualReport, tol_for: impl Fn(&str) -> f64) {
        for r in &rep.entries {
            self.float(&format!("{prefix}: {}", r.name), params, r.value, tol_for(&r.name));
        }
    }

    fn exact(&mut self, name: &str, params: &[(&str, String)], tally: &ExactTally) {
        let mut p: Vec<(&str, String)> = params.to_vec();
        p.push(("cases", tally.cases.to_string()));
        self.out.push(CheckResult {
            name: name.to_string(),
            parameters: p.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            residual: tally.residual(),
            tolerance: 0.0,
            pass: tally.exact(),
        });
    }
}

fn fmt_r(r: f64) -> String {
    format!("{r}")
}

/// Units of work run in parallel; each yields its checks in a fixed order.
enum Job {
    Quon { k: i64, r_values: Vec<f64> },
    Spin { j: HalfInt, r: f64 },
    Coupling { r: f64, samples: Vec<OrthonormalitySample> },
    Fbar { r: f64 },
    Recoupling { r: f64 },
    Tensor { j: HalfInt },
    Standard(u8),
}

fn run_job(job: &Job, cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut em = Emitter {
        tol_override: cfg.tol,
        out: &mut out,
    };
    match job {
        Job::Quon { k, r_values } => {
            let rep = build_rep(*k)?;
            let params = [("k", k.to_string())];
            em.report("quon relations", &params, &rep.defining_relations(), |_| 1e-12);
            for &r in r_values {
                let phi = PI * (*k - 1) as f64 * r;
                let params = [("k", k.to_string()), ("r", fmt_r(r))];
                let u = build_ur(&rep, phi);
                let cyc = u.pow(*k as u32).distance_to_scalar(cis(phi));
                em.float("quon: (U_r)^k - e^{i phi_r}", &params, cyc, 1e-10);
                let unitary = (&u.adjoint() * &u).distance_to_scalar(cis(0.0));
                em.float("quon: U_r^dag U_r - 1", &params, unitary, 1e-12);
                if *k <= 6 {
                    let range = *k as usize;
                    em.float("quon: W commutators", &params, w_commutator_sweep(&rep, phi, range), 1e-10);
                }
                if *k <= 10 {
                    em.report("su2 restriction", &params, &quon_restriction_check(*k, r)?, |_| 1e-12);
                }
            }
        }
        Job::Spin { j, r } => {
            let ops = build_spin_ops(*j, *r)?;
            let params = [("j", j.to_string()), ("r", fmt_r(*r))];
            em.report("su2", &params, &verify_su2(&ops), |_| 1e-11);
            em.report("casimir", &params, &casimir_identities(&ops), |_| 1e-11);
            em.float("su2: (U_r)^(2j+1) - e^{i phi_r}", &params, cyclicity_residual(&ops), 1e-10);
            em.report("spectrum", &params, &spectrum_residuals(&ops), |_| 1e-10);
            em.report("eigenbasis", &params, &verify_eigenbasis(*j, *r)?, |name| {
                if name == "overlap unitarity" {
                    1e-12
                } else {
                    1e-10
                }
            });
        }
        Job::Coupling { r, samples } => {
            let spins: Vec<HalfInt> = (0..=cfg.coupling_j_max.twice).map(HalfInt::from_twice).collect();
            for &j1 in &spins {
                for &j2 in &spins {
                    let params = [("j1", j1.to_string()), ("j2", j2.to_string()), ("r", fmt_r(*r))];
                    em.report("cg_nonstandard", &params, &verify_cg_orthonormality(j1, j2, *r)?, |_| 1e-10);
                }
            }
            let params = [
                ("r", fmt_r(*r)),
                ("samples", samples.len().to_string()),
                ("j_max", cfg.random_j_max.to_string()),
                ("seed", cfg.seed.to_string()),
            ];
            let comp = samples.iter().map(|s| s.completeness).fold(0.0, f64::max);
            let orth = samples.iter().map(|s| s.orthonormality).fold(0.0, f64::max);
            em.float("cg_nonstandard random: completeness", &params, comp, 1e-10);
            em.float("cg_nonstandard random: orthonormality", &params, orth, 1e-10);
        }
        Job::Fbar { r } => {
            let triples = fbar_triples(cfg.fbar_twice_sum);
            let params = [
                ("r", fmt_r(*r)),
                ("max 2(j1+j2+j3)", cfg.fbar_twice_sum.to_string()),
                ("triples", triples.len().to_string()),
            ];
            em.report("fbar", &params, &verify_fbar_symmetry(&triples, *r)?, |_| 1e-10);
        }
        Job::Recoupling { r } => {
            let spins: Vec<HalfInt> = (0..=cfg.coupling_j_max.twice).map(HalfInt::from_twice).collect();
            let mut ctx = RecouplingContext::new(*r);
            let mut worst = 0.0f64;
            let mut count = 0usize;
            for &j1 in &spins {
                for &j2 in &spins {
                    for &j3 in &spins {
                        for j12 in coupled_spins(j1, j2) {
                            for j23 in coupled_spins(j2, j3) {
                                for j in coupled_spins(j12, j3) {
                                    if j12.twice > cfg.coupling_j_max.twice
                                        || j23.twice > cfg.coupling_j_max.twice
                                        || j.twice > cfg.coupling_j_max.twice
                                    {
                                        continue;
                                    }
                                    let d = ctx.invariance_residual(j1, j2, j3, j12, j23, j)?;
                                    worst = if d.is_nan() { f64::NAN } else { worst.max(d) };
                                    count += 1;
                                }
                            }
                        }
                    }
                }
            }
            let params = [
                ("r", fmt_r(*r)),
                ("j_max", cfg.coupling_j_max.to_string()),
                ("cases", count.to_string()),
            ];
            em.float("recoupling: contraction - 6j", &params, worst, 1e-9);
        }
        Job::Tensor { j } => {
            let mut reduced: Vec<(&str, Vec<crate::matrix::C64>)> = vec![("rank 1", vec![]), ("rank 2", vec![])];
            for &r in &cfg.r_values {
                let ops = build_spin_ops(*j, r)?;
                let t1 = TensorOperator::from_angular_momentum(&ops)?;
                let params = [("j", j.to_string()), ("r", fmt_r(r))];
                let rep = wigner_eckart_check(&t1, *j, *j, r)?;
                em.float("wigner-eckart rank 1: proportionality", &params, rep.max_residual, 1e-9);
                em.float("wigner-eckart rank 1: forbidden elements", &params, rep.unexplained, 1e-9);
                reduced[0].1.push(rep.reduced_element);
                if j.twice >= 2 {
                    let t2 = TensorOperator::couple(&t1, &t1, HalfInt::from_int(2))?;
                    let rep = wigner_eckart_check(&t2, *j, *j, r)?;
                    em.float("wigner-eckart rank 2: proportionality", &params, rep.max_residual, 1e-9);
                    em.float("wigner-eckart rank 2: forbidden elements", &params, rep.unexplained, 1e-9);
                    reduced[1].1.push(rep.reduced_element);
                }
            }
            for (label, vals) in &reduced {
                if vals.is_empty() {
                    continue;
                }
                let spread = vals.iter().map(|z| (z - vals[0]).norm()).fold(0.0, f64::max);
                let params = [("j", j.to_string())];
                em.float(&format!("wigner-eckart {label}: r-independence"), &params, spread, 1e-9);
            }
        }
        Job::Standard(which) => {
            let jm = cfg.standard_j_max;
            let params = [("j_max", jm.to_string())];
            match which {
                0 => em.exact("standard: CG orthogonality", &params, &cg_orthogonality(jm)),
                1 => em.exact("standard: 3jm symmetries", &params, &threejm_symmetries(jm)),
                2 => em.exact("standard: 6j symmetries", &params, &sixj_symmetries(jm)),
                _ => {
                    // the contraction grows fast; cap it one step below the others
                    let jc = HalfInt::from_twice((jm.twice - 1).max(0));
                    em.exact("standard: 6j Racah sum vs 3jm contraction", &[("j_max", jc.to_string())], &sixj_contraction(jc))
                }
            }
        }
    }
    Ok(out)
}

/// Runs every suite. Random draws happen up front on one seeded generator,
/// so the report depends only on the configuration.
pub fn run_suite(cfg: &VerifyConfig) -> Result<VerifyReport> {
    HalfInt::spin(cfg.j_max.twice)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut jobs = Vec::new();
    for which in 0..4 {
        jobs.push(Job::Standard(which));
    }
    for &k in &cfg.k_values {
        jobs.push(Job::Quon {
            k,
            r_values: cfg.r_values.clone(),
        });
    }
    for tj in 0..=cfg.j_max.twice {
        for &r in &cfg.r_values {
            jobs.push(Job::Spin {
                j: HalfInt::from_twice(tj),
                r,
            });
        }
    }
    for &r in &cfg.r_values {
        let samples = (0..cfg.random_samples)
            .map(|_| OrthonormalitySample::draw(&mut rng, cfg.random_j_max, r))
            .collect::<Result<Vec<_>>>()?;
        jobs.push(Job::Coupling { r, samples });
        jobs.push(Job::Fbar { r });
        jobs.push(Job::Recoupling { r });
    }
    for tj in 0..=cfg.tensor_j_max.twice {
        jobs.push(Job::Tensor { j: HalfInt::from_twice(tj) });
    }

    let chunks = jobs
        .par_iter()
        .map(|job| run_job(job, cfg))
        .collect::<Result<Vec<_>>>()?;
    let mut checks: Vec<CheckResult> = chunks.into_iter().flatten().collect();
    if cfg.r_values.len() > 1 {
        // r-independence of the recoupling coefficients themselves
        checks.extend(recoupling_r_spread(cfg)?);
    }
    Ok(VerifyReport {
        seed: cfg.seed,
        config: cfg.clone(),
        checks,
    })
}

fn recoupling_r_spread(cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let spins: Vec<HalfInt> = (0..=cfg.coupling_j_max.twice).map(HalfInt::from_twice).collect();
    let mut contexts: Vec<RecouplingContext> = cfg.r_values.iter().map(|&r| RecouplingContext::new(r)).collect();
    let mut worst = 0.0f64;
    for &j1 in &spins {
        for &j2 in &spins {
            for &j3 in &spins {
                for j12 in coupled_spins(j1, j2) {
                    for j23 in coupled_spins(j2, j3) {
                        for j in coupled_spins(j12, j3) {
                            if [j12, j23, j].iter().any(|x| x.twice > cfg.coupling_j_max.twice) {
                                continue;
                            }
                            let vals = contexts
                                .iter_mut()
                                .map(|c| c.recoupling_coefficients(j1, j2, j3, j12, j23, j))
                                .collect::<Result<Vec<_>>>()?;
                            for v in &vals[1..] {
                                for (a, b) in v.iter().zip(&vals[0]) {
                                    worst = worst.max((a - b).norm());
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut em = Emitter {
        tol_override: cfg.tol,
        out: &mut out,
    };
    let rs: Vec<String> = cfg.r_values.iter().map(|r| fmt_r(*r)).collect();
    em.float(
        "recoupling: r-independence",
        &[("r", rs.join(",")), ("j_max", cfg.coupling_j_max.to_string())],
        worst,
        1e-9,
    );
    Ok(out)
}

mod common;

use std::f64::consts::PI;

use common::{cg_nonstandard_oracle, dft, h, ms, spins, CgOracle, ThreeJmOracle};
use num_complex::Complex64 as C;
use quon_su2::nonstandard::{overlap_matrix, RecouplingContext};
use quon_su2::{
    build_spin_ops, cg_nonstandard, coupled_spins, f_small, fbar, overlap, triangle, verify_eigenbasis,
    wigner_eckart_check, AlphaLabel, HalfInt, TensorOperator,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn labels(j: HalfInt, r: f64) -> Vec<AlphaLabel> {
    AlphaLabel::all(j, r).unwrap()
}

fn parity(twice_sum: i32) -> f64 {
    if (twice_sum / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[test]
fn coupling_matches_change_of_basis_oracle() {
    for r in [0.0, 2.0, 0.37] {
        for j1 in spins(4) {
            for j2 in spins(4) {
                let cg = CgOracle::new(j1, j2);
                for j in coupled_spins(j1, j2) {
                    let o = cg_nonstandard_oracle(&cg, j, r);
                    for a1 in labels(j1, r) {
                        for a2 in labels(j2, r) {
                            for a in labels(j, r) {
                                let v = cg_nonstandard(j1, j2, &a1, &a2, j, &a).unwrap();
                                let w = o[a1.s][a2.s][a.s];
                                assert!((v - w).norm() < 1e-10, "r={r} ({j1} {j2} {} {}|{j} {}): {v} vs {w}", a1.s, a2.s, a.s);
                            }
                        }
                    }
                }
            }
        }
    }
}

fn fbar_oracle(o: &mut ThreeJmOracle, js: [HalfInt; 3], als: [&AlphaLabel; 3]) -> C {
    let mut sum = C::new(0.0, 0.0);
    for m1 in ms(js[0]) {
        for m2 in ms(js[1]) {
            let m3 = -(m1 + m2);
            if m3.twice.abs() > js[2].twice {
                continue;
            }
            let w = o.get(js[0], js[1], js[2], m1, m2, m3);
            let mut z = C::new(w, 0.0);
            for (ja, (a, m)) in js.iter().zip(als.iter().zip([m1, m2, m3])) {
                let d = f64::from(ja.twice + 1);
                z *= C::from_polar(1.0 / d.sqrt(), -a.alpha() * m.to_f64() * 2.0 * PI / d);
            }
            sum += z;
        }
    }
    sum
}

#[test]
fn fbar_matches_direct_sum() {
    let mut o = ThreeJmOracle::default();
    for r in [0.0, 0.37] {
        for j1 in spins(3) {
            for j2 in spins(3) {
                for j3 in spins(3) {
                    if !triangle(j1, j2, j3) {
                        continue;
                    }
                    for a1 in labels(j1, r) {
                        for a2 in labels(j2, r) {
                            for a3 in labels(j3, r) {
                                let v = fbar(j1, j2, j3, &a1, &a2, &a3).unwrap();
                                let w = fbar_oracle(&mut o, [j1, j2, j3], [&a1, &a2, &a3]);
                                assert!((v - w).norm() < 1e-12, "{v} vs {w}");
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn fbar_spin_half_pair_to_one() {
    // every entry of (1/2 1/2 1) at r = 0 against a hand-rolled sum
    let mut o = ThreeJmOracle::default();
    let js = [h("1/2"), h("1/2"), h("1")];
    let mut nonzero = 0;
    for a1 in labels(js[0], 0.0) {
        for a2 in labels(js[1], 0.0) {
            for a3 in labels(js[2], 0.0) {
                let v = fbar(js[0], js[1], js[2], &a1, &a2, &a3).unwrap();
                let w = fbar_oracle(&mut o, js, [&a1, &a2, &a3]);
                assert!((v - w).norm() < 1e-14);
                // j1 + j2 + j3 = 2: real
                assert!(v.im.abs() < 1e-14);
                if v.norm() > 1e-12 {
                    nonzero += 1;
                }
            }
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn fbar_conjugation_on_random_labels() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for r in [0.0, 0.37] {
        let mut drawn = 0;
        while drawn < 50 {
            let j1 = HalfInt::from_twice(rng.random_range(0..=6));
            let j2 = HalfInt::from_twice(rng.random_range(0..=6));
            let js3 = coupled_spins(j1, j2);
            let j3 = js3[rng.random_range(0..js3.len())];
            let a1 = AlphaLabel::new(j1, r, rng.random_range(0..j1.dim())).unwrap();
            let a2 = AlphaLabel::new(j2, r, rng.random_range(0..j2.dim())).unwrap();
            let a3 = AlphaLabel::new(j3, r, rng.random_range(0..j3.dim())).unwrap();
            let v = fbar(j1, j2, j3, &a1, &a2, &a3).unwrap();
            let p = parity(j1.twice + j2.twice + j3.twice);
            assert!((v.conj() - v * p).norm() < 1e-12, "{j1} {j2} {j3} r={r}: {v}");
            drawn += 1;
        }
    }
}

#[test]
fn fbar_realness_parity_exhaustive() {
    for r in [0.0, 0.37, 1.0] {
        for j1 in spins(3) {
            for j2 in spins(3) {
                for j3 in spins(3) {
                    if !triangle(j1, j2, j3) {
                        continue;
                    }
                    let odd = (j1.twice + j2.twice + j3.twice) % 4 != 0;
                    for a1 in labels(j1, r) {
                        for a2 in labels(j2, r) {
                            for a3 in labels(j3, r) {
                                let v = fbar(j1, j2, j3, &a1, &a2, &a3).unwrap();
                                let off = if odd { v.re } else { v.im };
                                assert!(off.abs() < 1e-10);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn coupling_interchange_symmetry() {
    for r in [0.0, 0.37] {
        for j1 in spins(3) {
            for j2 in spins(3) {
                for j in coupled_spins(j1, j2) {
                    let p = parity(j1.twice + j2.twice - j.twice);
                    for a1 in labels(j1, r) {
                        for a2 in labels(j2, r) {
                            for a in labels(j, r) {
                                let v = cg_nonstandard(j1, j2, &a1, &a2, j, &a).unwrap();
                                let w = cg_nonstandard(j2, j1, &a2, &a1, j, &a).unwrap();
                                assert!((w - v * p).norm() < 1e-12);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn f_small_sign_and_prefactor() {
    // f(1/2 1 1/2): (-1)^{2 j3} = -1, 1/sqrt(2), conjugated oracle coupling (1 1/2 a2 a3 | 1/2 a1)
    let (j1, j2, j3) = (h("1/2"), h("1"), h("1/2"));
    for r in [0.0, 0.37] {
        let o = cg_nonstandard_oracle(&CgOracle::new(j2, j3), j1, r);
        for a1 in labels(j1, r) {
            for a2 in labels(j2, r) {
                for a3 in labels(j3, r) {
                    let v = f_small(j1, j2, j3, &a1, &a2, &a3).unwrap();
                    let w = -o[a2.s][a3.s][a1.s].conj() / 2f64.sqrt();
                    assert!((v - w).norm() < 1e-12);
                }
            }
        }
    }
    // integer j3 keeps the sign
    let (j1, j2, j3) = (h("1"), h("1"), h("1"));
    let a = labels(j1, 0.0);
    let o = cg_nonstandard_oracle(&CgOracle::new(j2, j3), j1, 0.0);
    let v = f_small(j1, j2, j3, &a[0], &a[1], &a[2]).unwrap();
    assert!((v - o[1][2][0].conj() / 3f64.sqrt()).norm() < 1e-12);
}

#[test]
fn overlap_matches_fourier_oracle() {
    for tj in 0..=25 {
        let j = HalfInt::from_twice(tj);
        for r in [0.0, 0.37, 1.0, 2.5] {
            let w = overlap_matrix(j, r).unwrap();
            let o = dft(j, r);
            assert!((&w - &o).iter().all(|z| z.norm() < 1e-12), "j={j} r={r}");
            for (im, m) in ms(j).into_iter().enumerate() {
                for a in labels(j, r) {
                    assert!((overlap(j, m, &a).unwrap() - o[(im, a.s)]).norm() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn overlap_examples() {
    // <1/2 1/2 | 1/2, alpha = 1; 0> = i / sqrt 2
    let a = AlphaLabel::new(h("1/2"), 0.0, 1).unwrap();
    let v = overlap(h("1/2"), h("1/2"), &a).unwrap();
    assert!((v - C::new(0.0, 0.5f64.sqrt())).norm() < 1e-15);
    // <1 0 | 1 alpha; r> = 1/sqrt 3 for every alpha
    for a in labels(h("1"), 0.37) {
        assert!((overlap(h("1"), h("0"), &a).unwrap() - C::new(1.0 / 3f64.sqrt(), 0.0)).norm() < 1e-15);
    }
}

#[test]
fn r_zero_is_fourier_matrix_times_column_phases() {
    for tj in 0..=12 {
        let j = HalfInt::from_twice(tj);
        let d = j.dim();
        let w = overlap_matrix(j, 0.0).unwrap();
        for row in 0..d {
            for s in 0..d {
                let fourier = C::from_polar(1.0 / (d as f64).sqrt(), 2.0 * PI * (row * s) as f64 / d as f64);
                let column = C::from_polar(1.0, -2.0 * PI * s as f64 * j.to_f64() / d as f64);
                assert!((w[(row, s)] - fourier * column).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn spin_one_eigenvalues_at_r_one() {
    // phi_r = 2 pi: U_r is the plain cyclic shift, alpha in {-1, 0, 1}
    let j = h("1");
    let ops = build_spin_ops(j, 1.0).unwrap();
    let alphas: Vec<f64> = labels(j, 1.0).iter().map(AlphaLabel::alpha).collect();
    assert_eq!(alphas, vec![-1.0, 0.0, 1.0]);
    for a in labels(j, 1.0) {
        let v: Vec<C> = ms(j).into_iter().map(|m| overlap(j, m, &a).unwrap()).collect();
        let uv = ops.u_r.apply(&v);
        let lam = C::from_polar(1.0, -2.0 * PI * a.alpha() / 3.0);
        for (x, y) in uv.iter().zip(&v) {
            assert!((x - lam * y).norm() < 1e-14);
        }
        assert!((a.u_eigenvalue() - lam).norm() < 1e-14);
    }
}

#[test]
fn eigenbasis_up_to_25_over_2() {
    for tj in 0..=25 {
        for r in [0.0, 0.37, 1.0, 2.5] {
            let rep = verify_eigenbasis(HalfInt::from_twice(tj), r).unwrap();
            assert!(rep.get("U_r eigen-equation").unwrap() <= 1e-10);
            assert!(rep.get("J2 eigen-equation").unwrap() <= 1e-10);
            assert!(rep.get("overlap unitarity").unwrap() <= 1e-12);
        }
    }
}

fn rank_two(j: HalfInt, r: f64) -> TensorOperator {
    let t = TensorOperator::from_angular_momentum(&build_spin_ops(j, r).unwrap()).unwrap();
    TensorOperator::couple(&t, &t, h("2")).unwrap()
}

#[test]
fn wigner_eckart_for_angular_momentum() {
    for tj in 1..=6 {
        let j = HalfInt::from_twice(tj);
        let jf = j.to_f64();
        // <j||J||j> = sqrt((2j+1) j (j+1)) with the 1/sqrt(2j1+1) convention
        let expected = ((2.0 * jf + 1.0) * jf * (jf + 1.0)).sqrt();
        let mut reduced = Vec::new();
        for r in [0.0, 0.37] {
            let t = TensorOperator::from_angular_momentum(&build_spin_ops(j, r).unwrap()).unwrap();
            let rep = wigner_eckart_check(&t, j, j, r).unwrap();
            assert!(rep.passes(1e-9), "j={j} r={r}: {rep:?}");
            assert!((rep.reduced_element.norm() - expected).abs() < 1e-9, "{rep:?} vs {expected}");
            reduced.push(rep.reduced_element);
        }
        assert!((reduced[0] - reduced[1]).norm() < 1e-9);
    }
}

#[test]
fn wigner_eckart_for_rank_two() {
    for tj in 2..=6 {
        let j = HalfInt::from_twice(tj);
        let mut reduced = Vec::new();
        for r in [0.0, 0.37] {
            let t = rank_two(j, r);
            let rep = wigner_eckart_check(&t, j, j, r).unwrap();
            assert!(rep.passes(1e-9), "j={j} r={r}: {rep:?}");
            assert!(rep.reduced_element.norm() > 1e-3);
            reduced.push(rep.reduced_element);
        }
        assert!((reduced[0] - reduced[1]).norm() < 1e-9);
    }
}

#[test]
fn wigner_eckart_scalar_and_selection_rule() {
    for tj in 0..=6 {
        let j = HalfInt::from_twice(tj);
        let rep = wigner_eckart_check(&TensorOperator::identity(j).unwrap(), j, j, 0.37).unwrap();
        assert!(rep.passes(1e-10));
        assert!((rep.reduced_element - C::new(f64::from(tj + 1).sqrt(), 0.0)).norm() < 1e-10);
    }
    // a rank-2 tensor on spin 1/2 vanishes: 1/2 x 2 cannot reach 1/2
    let t = rank_two(h("1/2"), 0.0);
    assert!(t.components().iter().all(|c| c.iter().all(|z| z.norm() < 1e-14)));
    for a1 in labels(h("1/2"), 0.0) {
        for a2 in labels(h("1/2"), 0.0) {
            for a in labels(h("2"), 0.0) {
                assert_eq!(f_small(h("1/2"), h("1/2"), h("2"), &a1, &a2, &a).unwrap(), C::new(0.0, 0.0));
            }
        }
    }
}

#[test]
fn recoupling_spin_half_example() {
    // ((1/2 1/2) 0, 1/2; 1/2 | 1/2, (1/2 1/2) 0; 1/2) = (-1)^2 {1/2 1/2 0; 1/2 1/2 0} = -1/2
    for r in [0.0, 0.37] {
        let mut ctx = RecouplingContext::new(r);
        let half = h("1/2");
        let c = ctx.recoupling_coefficients(half, half, half, h("0"), h("0"), half).unwrap();
        assert_eq!(c.len(), 2);
        for z in c {
            assert!((z - C::new(-0.5, 0.0)).norm() < 1e-12, "{z}");
        }
        // (1/2 1/2) 1 with 1/2 to 3/2 only goes one way
        let c = ctx.recoupling_coefficients(half, half, half, h("1"), h("1"), h("3/2")).unwrap();
        assert!(c.iter().all(|z| (z - C::new(1.0, 0.0)).norm() < 1e-12));
    }
}

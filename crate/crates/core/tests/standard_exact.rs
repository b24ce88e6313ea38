mod common;

use common::{h, ms, spins, CgOracle, ThreeJmOracle};
use num_bigint::BigInt;
use num_rational::BigRational;
use quon_su2::identities::{cg_orthogonality, sixj_contraction, sixj_symmetries, threejm_symmetries};
use quon_su2::{cg, metric_standard, ninej, sixj, threejm, triangle, ExactSqrtRational, HalfInt};

fn sqrt_of(sign: i8, n: i64, d: i64) -> ExactSqrtRational {
    ExactSqrtRational::from_signed_square(sign, BigRational::new(BigInt::from(n), BigInt::from(d)))
}

#[test]
fn cg_matches_coupled_state_construction() {
    for j1 in spins(4) {
        for j2 in spins(4) {
            let oracle = CgOracle::new(j1, j2);
            for j in quon_su2::coupled_spins(j1, j2) {
                for m1 in ms(j1) {
                    for m2 in ms(j2) {
                        let m = m1 + m2;
                        if m.twice.abs() > j.twice {
                            continue;
                        }
                        let exact = cg(j1, j2, m1, m2, j, m).to_f64();
                        let o = oracle.get(m1, m2, j, m);
                        assert!((exact - o).abs() < 1e-12, "({j1} {j2} {m1} {m2}|{j} {m}): {exact} vs {o}");
                    }
                }
            }
        }
    }
}

#[test]
fn cg_examples() {
    assert_eq!(cg(h("1/2"), h("1/2"), h("1/2"), h("-1/2"), h("0"), h("0")), sqrt_of(1, 1, 2));
    assert_eq!(cg(h("1/2"), h("1/2"), h("1/2"), h("1/2"), h("1"), h("1")), ExactSqrtRational::one());
    assert!(cg(h("1"), h("1"), h("0"), h("0"), h("1"), h("0")).is_zero());
    let o = CgOracle::new(h("1"), h("1"));
    assert!(o.get(h("0"), h("0"), h("1"), h("0")).abs() < 1e-14);
}

#[test]
fn cg_orthogonality_exact_up_to_three() {
    let t = cg_orthogonality(h("3"));
    assert!(t.exact(), "{t:?}");
    assert!(t.cases > 5000);
}

#[test]
fn threejm_symmetries_exact_up_to_two() {
    let t = threejm_symmetries(h("2"));
    assert!(t.exact(), "{t:?}");
}

#[test]
fn threejm_example_against_oracle() {
    // (1/2 1/2 0; 1/2 -1/2 0) = (-1)^{0} (1/2 1/2 1/2 -1/2 | 0 0) = +1/sqrt2
    let v = threejm(h("1/2"), h("1/2"), h("0"), h("1/2"), h("-1/2"), h("0"));
    let mut o = ThreeJmOracle::default();
    let ov = o.get(h("1/2"), h("1/2"), h("0"), h("1/2"), h("-1/2"), h("0"));
    assert_eq!(v, sqrt_of(1, 1, 2));
    assert!((ov - v.to_f64()).abs() < 1e-15);
    assert!(threejm(h("1"), h("1"), h("1"), h("1"), h("1"), h("0")).is_zero());
}

#[test]
fn sixj_racah_equals_contraction_exactly() {
    let t = sixj_contraction(h("2"));
    assert!(t.exact(), "{t:?}");
    assert!(t.cases > 500);
}

#[test]
fn sixj_against_oracle_contraction() {
    let mut o = ThreeJmOracle::default();
    let js = spins(3);
    for &a in &js {
        for &b in &js {
            for &c in &js {
                if !triangle(a, b, c) {
                    continue;
                }
                for &d in &js {
                    for &e in &js {
                        for &f in &js {
                            let v = sixj(a, b, c, d, e, f).to_f64();
                            let ov = o.sixj([a, b, c, d, e, f]);
                            assert!((v - ov).abs() < 1e-12, "{{{a} {b} {c}; {d} {e} {f}}}: {v} vs {ov}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn sixj_examples() {
    assert_eq!(sixj(h("1/2"), h("1/2"), h("1"), h("1/2"), h("1/2"), h("1")), sqrt_of(1, 1, 36));
    assert!(sixj(h("1/2"), h("1/2"), h("2"), h("1/2"), h("1/2"), h("1")).is_zero());
    // {j 0 j; j' x j'} = (-1)^{j+j'+x} / sqrt((2j+1)(2j'+1))
    let (j, jp, x) = (h("3/2"), h("1"), h("3/2"));
    let expected = sqrt_of(1, 1, 12);
    assert_eq!(sixj(j, h("0"), j, jp, x, jp), expected);
    let mut o = ThreeJmOracle::default();
    assert!((o.sixj([j, h("0"), j, jp, x, jp]) - expected.to_f64()).abs() < 1e-14);
}

#[test]
fn sixj_trivial_symmetries_exact() {
    let t = sixj_symmetries(h("3/2"));
    assert!(t.exact(), "{t:?}");
    let t = sixj_symmetries(h("2"));
    assert!(t.exact(), "{t:?}");
}

#[test]
fn sixj_regge_symmetry() {
    let js = spins(4);
    let mut checked = 0;
    for &a in &js {
        for &b in &js {
            for &c in &js {
                for &d in &js {
                    for &e in &js {
                        for &f in &js {
                            let v = sixj(a, b, c, d, e, f);
                            // {a b c; d e f} = {a (b+e+c-f)/2 (c+f+b-e)/2; d (e+b+f-c)/2 (f+c+e-b)/2}
                            let s = |p: i32, q: i32, r: i32, t: i32| p + q + r - t;
                            let b2 = s(b.twice, e.twice, c.twice, f.twice);
                            let c2 = s(c.twice, f.twice, b.twice, e.twice);
                            let e2 = s(e.twice, b.twice, f.twice, c.twice);
                            let f2 = s(f.twice, c.twice, e.twice, b.twice);
                            if [b2, c2, e2, f2].iter().any(|x| x % 2 != 0 || *x < 0) {
                                continue;
                            }
                            let w = sixj(
                                a,
                                HalfInt::from_twice(b2 / 2),
                                HalfInt::from_twice(c2 / 2),
                                d,
                                HalfInt::from_twice(e2 / 2),
                                HalfInt::from_twice(f2 / 2),
                            );
                            assert_eq!(v, w, "Regge image of {{{a} {b} {c}; {d} {e} {f}}}");
                            if !v.is_zero() {
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn ninej_against_six_threejm_oracle() {
    let mut o = ThreeJmOracle::default();
    let vals = [h("1/2"), h("1")];
    let mut nonzero = 0;
    for code in 0..(1 << 9) {
        let j: [HalfInt; 9] = std::array::from_fn(|i| vals[(code >> i) & 1]);
        let v = ninej(j[0], j[1], j[2], j[3], j[4], j[5], j[6], j[7], j[8]).to_f64();
        let ov = o.ninej(j);
        assert!((v - ov).abs() < 1e-12, "{j:?}: {v} vs {ov}");
        if v.abs() > 1e-12 {
            nonzero += 1;
        }
    }
    assert!(nonzero >= 4, "{nonzero}");
    let j = [h("1"), h("3/2"), h("1/2"), h("2"), h("1"), h("1"), h("1"), h("1/2"), h("3/2")];
    let v = ninej(j[0], j[1], j[2], j[3], j[4], j[5], j[6], j[7], j[8]).to_f64();
    assert!((v - o.ninej(j)).abs() < 1e-12);
    assert!(v.abs() > 1e-6);
}

#[test]
fn ninej_zero_argument_reduces_to_sixj() {
    // {a b e; c d e; f f 0} = (-1)^{b+c+e+f} / sqrt((2e+1)(2f+1)) {a b e; d c f}
    let (a, b, c, d, e, f) = (h("1"), h("1/2"), h("1"), h("1/2"), h("3/2"), h("1"));
    let lhs = ninej(a, b, e, c, d, e, f, f, h("0"));
    let six = sixj(a, b, e, d, c, f);
    assert!(!six.is_zero());
    let sign = if ((b.twice + c.twice + e.twice + f.twice) / 2) % 2 == 0 { 1 } else { -1 };
    let pref = ExactSqrtRational::from_signed_square(
        sign,
        BigRational::new(BigInt::from(1), BigInt::from((e.twice + 1) * (f.twice + 1))),
    );
    assert_eq!(lhs, &pref * &six);
    let mut o = ThreeJmOracle::default();
    assert!((o.ninej([a, b, e, c, d, e, f, f, h("0")]) - lhs.to_f64()).abs() < 1e-13);
}

#[test]
fn ninej_row_triangle_violation() {
    let z = ninej(h("1/2"), h("1/2"), h("2"), h("1/2"), h("1/2"), h("1"), h("1"), h("1"), h("1"));
    assert!(z.is_zero());
}

#[test]
fn metric_examples() {
    assert_eq!(metric_standard(h("1/2"), h("1/2"), h("-1/2")), ExactSqrtRational::one());
    assert_eq!(metric_standard(h("1/2"), h("-1/2"), h("1/2")), ExactSqrtRational::from_int(-1));
    assert!(metric_standard(h("1"), h("0"), h("1")).is_zero());
}

#[test]
fn metric_links_threejm_and_cg() {
    // (j1 j2 j3; m1 m2 m3) = (-1)^{j1-j2-j3} (2j3+1)^{-1/2} sum_m' g(j3; m3, m') (j1 j2 m1 m2 | j3 m')
    for j1 in spins(3) {
        for j2 in spins(3) {
            for j3 in quon_su2::coupled_spins(j1, j2) {
                for m1 in ms(j1) {
                    for m2 in ms(j2) {
                        let m3 = -(m1 + m2);
                        if m3.twice.abs() > j3.twice {
                            continue;
                        }
                        let via_metric: f64 = ms(j3)
                            .into_iter()
                            .map(|mp| metric_standard(j3, m3, mp).to_f64() * cg(j1, j2, m1, m2, j3, mp).to_f64())
                            .sum::<f64>()
                            / f64::from(j3.twice + 1).sqrt();
                        let sign = if ((j1.twice - j2.twice - j3.twice) / 2).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                        let w = threejm(j1, j2, j3, m1, m2, m3).to_f64();
                        assert!((sign * via_metric - w).abs() < 1e-13);
                    }
                }
            }
        }
    }
}

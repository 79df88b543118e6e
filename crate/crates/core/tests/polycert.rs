use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

use spin7_core::aw_algebra::{normalize, AWParams, BundleTag};
use spin7_core::critical_points::p0_point;
use spin7_core::exact::{rat, Rat};
use spin7_core::polycert::barriers::{ABD_VARS, AB_VARS, Z_VARS};
use spin7_core::polycert::*;

fn pairs() -> Vec<AWParams> {
    [(1, 0), (29, 1), (17, 5), (3, 2), (7, 6), (1, 1)].iter().map(|&(k, l)| normalize(k, l).unwrap()).collect()
}

#[test]
fn barrier_values_at_named_points() {
    for p in pairs() {
        let q = barrier(&p, Barrier::Q);
        let z4 = rat(6 * p.delta, p.k + p.l);
        assert!(q.eval(&[rat(0, 1), rat(1, 3), rat(1, 3), z4.clone()]).is_zero(), "{p}");
        let a = barrier(&p, Barrier::A);
        assert_eq!(a.eval(&[rat(0, 1), rat(0, 1), rat(0, 1), z4]), rat(2, 1));
        // P vanishes at P0 of the K bundle, which lies on the Minus conservation surface.
        let s = p0_point(&p, BundleTag::K).unwrap();
        assert!(barrier(&p, Barrier::P).eval(&s.z).is_zero());
    }
    let p = normalize(1, 1).unwrap();
    let pt = [rat(2, 7), rat(1, 7), rat(1, 7), rat(21, 1)];
    assert!(barrier(&p, Barrier::P).eval(&pt).is_zero());
}

#[test]
fn q_slices_match_printed_expansions() {
    let p = normalize(3, 2).unwrap();
    for (a, b) in [(rat(0, 1), rat(1, 1)), (rat(1, 3), rat(1, 2)), (rat(1, 2), rat(1, 7))] {
        let q1 = slice(&p, Slice::Q1, &[a.clone(), b.clone()]).unwrap().univariate_coeffs(0);
        let want = [
            rat(3, 4) * &a * &a * &b - rat(2, 1) * &a + rat(1, 1),
            -(rat(2, 1) + rat(3, 2) * &a * &b),
            rat(3, 4) * &b,
        ];
        assert_eq!(q1, want.to_vec());
        let s = slice(&p, Slice::Q1, &[a.clone(), b.clone()]).unwrap();
        let at = s.eval(&[rat(2, 3)]);
        let printed = rat(-1, 3) - rat(2, 1) * &a + &b / rat(3, 1) - &a * &b + rat(3, 4) * &a * &a * &b;
        assert_eq!(at, printed);
        let q2 = slice(&p, Slice::Q2, &[a.clone(), b.clone()]).unwrap().univariate_coeffs(0);
        let want = [
            rat(2, 1) * &a * &a - rat(2, 1) * &a + rat(2, 1),
            -(rat(12, 1) * &a + rat(2, 1)),
            rat(-2, 1),
            rat(0, 1),
            rat(9, 8) * &b * &b,
        ];
        assert_eq!(q2, want.to_vec());
    }
}

#[test]
fn p_slices_match_printed_expansions() {
    for p in pairs() {
        let (k, l) = (rat(p.k, 1), rat(p.l, 1));
        let (a, b, d) = (rat(2, 3), rat(1, 5), rat(3, 4));
        let p1 = slice(&p, Slice::P1, &[a.clone(), b.clone(), d.clone()]).unwrap().univariate_coeffs(0);
        let lead = rat(-3, 1) * (&k + &l) / &k * &a * &b * &d + rat(3, 1) * &l / &k * &b * &d + rat(3, 1) * &a * &d;
        assert_eq!(p1, vec![rat(1, 1), rat(-2, 1) * (rat(1, 1) + &a + &b), lead]);
        let p2 = slice(&p, Slice::P2, &[a.clone(), b.clone(), d.clone()]).unwrap().univariate_coeffs(0);
        let kl = (&k + &l) / &k;
        let lk = &l / &k;
        let lead = rat(18, 1) * &kl * &kl * &a * &a * &b * &b * &d * &d + rat(18, 1) * &lk * &lk * &b * &b * &d * &d
            + rat(18, 1) * &a * &a * &d * &d;
        let quad = rat(2, 1) * (rat(1, 1) + &a * &a + &b * &b) - rat(12, 1) * (&a * &b + &a + &b);
        assert_eq!(p2, vec![rat(2, 1), rat(-2, 1) * (rat(1, 1) + &a + &b), quad, rat(0, 1), lead], "{p}");
    }
}

#[test]
fn slices_are_barrier_substitutions() {
    let p = normalize(17, 5).unwrap();
    let (a, b, d) = (rat(1, 4), rat(2, 3), rat(5, 7));
    let z1 = rat(3, 10);
    let bp = barrier(&p, Barrier::B);
    let z = [z1.clone(), &a * &z1, &b * &z1, rat(6 * p.delta, p.k) * &d];
    let s = slice(&p, Slice::P2, &[a.clone(), b.clone(), d]).unwrap();
    assert_eq!(s.eval(&[z1]), bp.eval(&z));
    let u = rat(2, 5);
    let q = barrier(&p, Barrier::Q);
    let z = [a.clone(), rat(1, 10), &u - rat(1, 10), rat(6 * p.delta, p.k + p.l) * &b];
    assert_eq!(slice(&p, Slice::Q1, &[a, b]).unwrap().eval(&[u]), q.eval(&z));
}

#[test]
fn root_functions_at_the_contact_points() {
    let p = normalize(3, 2).unwrap();
    let at = [rat(0, 1), rat(1, 1)];
    assert_eq!(root_fn(&p, RootFn::Omega, &at).unwrap(), Some(2.0 / 3.0));
    assert_eq!(root_fn(&p, RootFn::Zeta, &at).unwrap(), Some(2.0 / 3.0));
    let at = [rat(1, 1), rat(0, 1), rat(1, 1)];
    assert!((root_fn(&p, RootFn::Xi, &at).unwrap().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    assert!((root_fn(&p, RootFn::Sigma, &at).unwrap().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    // q1 at (1/2, 1) is (3/4)u² − (11/4)u + 3/16.
    let w = root_fn(&p, RootFn::Omega, &[rat(1, 2), rat(1, 1)]).unwrap().unwrap();
    let want = (11.0 / 4.0 - (121.0f64 / 16.0 - 9.0 / 16.0).sqrt()) / 1.5;
    assert!((w - want).abs() < 1e-14 && (0.0..=2.0 / 3.0).contains(&w));
}

#[test]
fn implicit_derivatives_at_the_contact_points() {
    let p = normalize(3, 2).unwrap();
    let at = [rat(0, 1), rat(1, 1)];
    let w = implicit_derivatives(&p, RootFn::Omega, &at, 2).unwrap();
    assert_eq!(w.root, rat(2, 3));
    assert_eq!(w.gradient, vec![rat(-3, 1), rat(1, 3)]);
    let h = w.hessian.unwrap();
    assert_eq!(h, vec![vec![rat(24, 1), rat(-6, 1)], vec![rat(-6, 1), rat(5, 6)]]);
    let z = implicit_derivatives(&p, RootFn::Zeta, &at, 2).unwrap();
    assert_eq!(z.gradient, vec![rat(-3, 1), rat(2, 15)]);
    let h = z.hessian.unwrap();
    assert_eq!(h, vec![vec![rat(141, 5), rat(-78, 25)], vec![rat(-78, 25), rat(134, 375)]]);

    let at = [rat(1, 1), rat(0, 1), rat(1, 1)];
    for p in pairs() {
        let x = implicit_derivatives(&p, RootFn::Xi, &at, 1).unwrap();
        assert_eq!(x.gradient, vec![rat(-1, 6), rat(-1, 2), rat(1, 6)]);
        let s = implicit_derivatives(&p, RootFn::Sigma, &at, 1).unwrap();
        assert_eq!(s.gradient, vec![rat(-1, 6), rat(-1, 2), rat(1, 15)]);
        let h = sigma_minus_xi_hessian(&p).unwrap();
        let (k, l) = (p.k, p.l);
        assert_eq!(h[0][0], rat(11, 60));
        assert_eq!(h[0][1], rat(k + 2 * l, 12 * k));
        assert_eq!(h[1][1], rat(23 * k * k + 8 * k * l + 8 * l * l, 60 * k * k));
        assert_eq!(sigma_minus_xi_hessian_det(&p).unwrap(), rat(19 * k * k - k * l - l * l, 300 * k * k));
    }
    let one = normalize(1, 1).unwrap();
    assert_eq!(sigma_minus_xi_hessian_det(&one).unwrap(), rat(17, 300));
    assert!(implicit_derivatives(&p, RootFn::Omega, &[rat(1, 3), rat(1, 2)], 1).is_err());
}

#[test]
fn q_resultant_matches_printed_bracket() {
    for p in [normalize(3, 2).unwrap(), normalize(1, 1).unwrap()] {
        let r = q_resultant(&p);
        assert_eq!(r, printed_q_resultant());
        assert_eq!(r.variables(), &AB_VARS.map(String::from)[..]);
        assert!(r.eval(&[rat(0, 1), rat(1, 1)]).is_zero());
        assert_eq!(r.eval(&[rat(0, 1), rat(1, 2)]), rat(135, 256));
    }
}

#[test]
fn rtilde_matches_printed_expansion_and_zeros() {
    for p in pairs() {
        let rt = rtilde(&p).unwrap();
        assert_eq!(rt.variables(), &ABD_VARS.map(String::from)[..]);
        assert!(rt.eval(&[rat(1, 1), rat(0, 1), rat(1, 1)]).is_zero(), "{p}");
        let r = p_resultant(&p);
        let d = rat(2, 3);
        let pt = [rat(1, 5), rat(3, 7), d.clone()];
        assert_eq!(r.eval(&pt), rat(36, 1) * &d * &d * rt.eval(&pt));
    }
    let p = normalize(1, 1).unwrap();
    assert!(rtilde(&p).unwrap().eval(&[rat(0, 1), rat(1, 1), rat(1, 1)]).is_zero());
    let p = normalize(3, 2).unwrap();
    let rt = rtilde(&p).unwrap();
    assert_eq!(rt.eval(&[rat(0, 1), rat(1, 1), rat(1, 1)]), rat(32, 9));
    assert_eq!(rt.eval(&[rat(1, 1), rat(1, 1), rat(0, 1)]), rat(456, 1));
    let p = normalize(17, 5).unwrap();
    assert_eq!(rtilde(&p).unwrap().eval(&[rat(0, 1), rat(1, 1), rat(1, 1)]), rat(190800, 83521));
}

#[test]
fn rtilde_constant_in_delta_part_vanishes_at_origin() {
    for p in pairs() {
        let rt = rtilde(&p).unwrap();
        let printed = printed_rtilde(&p);
        let at0 = |f: &RatPoly| f.substitute(2, &rat(0, 1));
        assert_eq!(at0(&rt), at0(&printed));
        assert!(at0(&rt).eval(&[rat(0, 1), rat(0, 1), rat(0, 1)]).is_zero());
    }
}

#[test]
fn certify_q_resultant_on_its_box() {
    let r = q_resultant(&normalize(3, 2).unwrap());
    let b = RatBox::new(vec![rat(0, 1), rat(0, 1)], vec![rat(1, 2), rat(1, 1)], vec![false, true], vec![false; 2]).unwrap();
    let cert = certify_nonneg(&r, &b, &[ball(&[rat(0, 1), rat(1, 1)])], DEFAULT_MAX_DEPTH).unwrap();
    assert!(cert.is_nonnegative(), "{:?}", cert.to_json());
    let j = cert.to_json();
    assert_eq!(j["status"], "NonNegative");
    assert_eq!(j["exclusions"][0]["radius"], "1/100");
}

#[test]
fn certify_finds_sign_changes() {
    let x = RatPoly::var(&["x"], 0);
    let f = &x - &RatPoly::constant(&["x"], rat(1, 2));
    let cert = certify_nonneg(&f, &RatBox::unit(1), &[], DEFAULT_MAX_DEPTH).unwrap();
    match &cert.status {
        CertStatus::CounterexampleFound { point, value } => {
            assert!(value.is_negative());
            assert_eq!(&f.eval(point), value);
        }
        other => panic!("{other:?}"),
    }
    assert!(cert.to_json()["counterexample"]["value"].as_str().unwrap().starts_with('-'));

    // (x - 1/2)² is non-negative with a zero inside the box; it needs an exclusion ball.
    let g = f.pow(2);
    let c = certify_nonneg(&g, &RatBox::unit(1), &[], DEFAULT_MAX_DEPTH).unwrap();
    assert!(c.is_nonnegative());
    let h = &g - &RatPoly::constant(&["x"], rat(1, 1_000_000_000));
    let c = certify_nonneg(&h, &RatBox::unit(1), &[], 8).unwrap();
    assert!(!c.is_nonnegative());
}

#[test]
fn certified_boxes_survive_random_sampling() {
    let r = q_resultant(&normalize(3, 2).unwrap());
    let center = [rat(0, 1), rat(1, 1)];
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let radius2 = rat(1, 10_000);
    let mut checked = 0;
    while checked < 100_000 {
        let a = rat(rng.gen_range(0..=5_000), 10_000);
        let b = rat(rng.gen_range(0..=10_000), 10_000);
        let d2 = (&a - &center[0]) * (&a - &center[0]) + (&b - &center[1]) * (&b - &center[1]);
        if d2 <= radius2 {
            continue;
        }
        let v = r.eval_f64(&[spin7_core::exact::rat_to_f64(&a), spin7_core::exact::rat_to_f64(&b)]);
        if v < 1e-9 {
            assert!(!r.eval(&[a, b]).is_negative());
        }
        checked += 1;
    }
}

#[test]
fn omega_never_exceeds_zeta_on_grid() {
    let p = normalize(3, 2).unwrap();
    for i in 0..32 {
        for j in 0..32 {
            let a = rat(i, 62);
            let b = rat(j + 1, 32);
            let w = root_fn(&p, RootFn::Omega, &[a.clone(), b.clone()]).unwrap().unwrap();
            let z = root_fn(&p, RootFn::Zeta, &[a.clone(), b.clone()]).unwrap().unwrap();
            let near = i == 0 && j == 31;
            assert!(w <= z + 1e-12, "({i},{j}): {w} > {z}");
            if !near {
                assert!(w < z - 1e-9, "({i},{j}): {w} ~ {z}");
            }
        }
    }
}

#[test]
fn xi_never_exceeds_sigma_on_grid() {
    for p in [normalize(3, 2).unwrap(), normalize(1, 1).unwrap()] {
        for i in 0..16 {
            for j in 0..=i {
                for m in 0..16 {
                    let pt = [rat(i, 15), rat(j, 15), rat(m + 1, 16)];
                    let Some(s) = root_fn(&p, RootFn::Sigma, &pt).unwrap() else { continue };
                    let x = root_fn(&p, RootFn::Xi, &pt).unwrap().unwrap();
                    assert!(x <= s + 1e-9, "{p} {pt:?}: xi {x} > sigma {s}");
                }
            }
        }
    }
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (0i64..=64, 1i64..=64).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn resultant_vanishes_iff_common_root(a in small_rat(), b in small_rat()) {
        let p = normalize(3, 2).unwrap();
        let r = q_resultant(&p);
        let q1 = slice(&p, Slice::Q1, &[a.clone(), b.clone()]).unwrap().univariate_coeffs(0);
        let q2 = slice(&p, Slice::Q2, &[a.clone(), b.clone()]).unwrap().univariate_coeffs(0);
        let leading_ok = !b.is_zero();
        prop_assume!(leading_ok);
        prop_assert_eq!(r.eval(&[a, b]).is_zero(), have_common_root(&q1, &q2));
    }

    #[test]
    fn barriers_evaluate_like_their_definition(z in prop::array::uniform4(0i64..=20)) {
        let p = normalize(3, 2).unwrap();
        let z: Vec<Rat> = z.iter().map(|&v| rat(v, 10)).collect();
        let s = &z[1] + &z[2];
        let d = rat(p.delta, 1);
        let kl = rat(p.k + p.l, 1);
        let q = &kl / (rat(8, 1) * &d) * &z[3] * &s * &s - (rat(2, 1) + &kl / (rat(4, 1) * &d) * &z[0] * &z[3]) * &s
            + &kl / (rat(8, 1) * &d) * &z[0] * &z[0] * &z[3] - rat(2, 1) * &z[0] + rat(1, 1);
        prop_assert_eq!(barrier(&p, Barrier::Q).eval(&z), q);
        let names = Z_VARS.map(String::from);
        let b = barrier(&p, Barrier::Q);
        prop_assert_eq!(b.variables(), &names[..]);
    }
}

#[test]
fn certify_rtilde_for_listed_pairs() {
    for p in pairs() {
        let rt = rtilde(&p).unwrap();
        let balls: Vec<Exclusion> = rtilde_zeros(&p).iter().map(|z| ball(z)).collect();
        let cert = certify_nonneg(&rt, &RatBox::unit(3), &balls, DEFAULT_MAX_DEPTH).unwrap();
        assert!(cert.is_nonnegative(), "{p}: {}", cert.to_json());
        assert_eq!(cert.exclusions.len(), if (p.k, p.l) == (1, 1) { 2 } else { 1 });
        assert!(cert.max_depth_reached < DEFAULT_MAX_DEPTH);
    }
}

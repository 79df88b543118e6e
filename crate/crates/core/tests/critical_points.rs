use spin7_core::aw_algebra::{normalize, BundleTag};
use spin7_core::critical_points::tables;
use spin7_core::critical_points::*;
use spin7_core::exact::{rat, rat_to_f64, Rat};
use spin7_core::phase_system::{Coeffs, PhaseState};

use num_traits::Zero;
use proptest::prelude::*;

fn is_zero_vec(v: &[Rat; 8]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[test]
fn jacobians_match_closed_forms() {
    for (k, l) in [(1, 0), (1, 1), (3, 2), (17, 5), (7, 6)] {
        let p = normalize(k, l).unwrap();
        let jk = jacobian_exact(&p, &p0_point(&p, BundleTag::KplusL).unwrap());
        assert_eq!(jk, tables::p0_kplusl_jacobian(p.k, p.l), "{p}");
        let jk = jacobian_exact(&p, &p0_point(&p, BundleTag::K).unwrap());
        assert_eq!(jk, tables::p0_k_jacobian(p.k, p.l), "{p}");
        assert_eq!(jacobian_exact(&p, &p1_point()), tables::p1_jacobian());
    }
}

#[test]
fn named_jacobian_entries() {
    let p = normalize(3, 2).unwrap();
    let j = jacobian_exact(&p, &p0_point(&p, BundleTag::KplusL).unwrap());
    assert_eq!(j[0][7], rat(-2 * 5, 27 * 19));
    assert_eq!(j[7][0], rat(-8 * 19, 5));
    let j = jacobian_exact(&p, &p0_point(&p, BundleTag::K).unwrap());
    assert_eq!(j[7][2], rat(-8 * 19, 3));
    assert_eq!(j[7][3], rat(2 * 19, 3));
}

#[test]
fn conventional_bases_are_eigenvectors() {
    for (k, l) in [(1, 1), (3, 2), (17, 5), (29, 1)] {
        let p = normalize(k, l).unwrap();
        for tag in BundleTag::ALL {
            let s = p0_point(&p, tag).unwrap();
            let m = jacobian_exact(&p, &s);
            for (lam, v) in tables::p0_values().iter().zip(tables::p0_vectors(p.k, p.l, tag).iter()) {
                assert!(is_zero_vec(&eigen_residual_exact(&m, lam, v)), "{p} {tag:?}");
            }
        }
        let m = jacobian_exact(&p, &p1_point());
        for (lam, v) in tables::p1_values().iter().zip(tables::p1_vectors().iter()) {
            assert!(is_zero_vec(&eigen_residual_exact(&m, lam, v)));
        }
        let m = jacobian_exact(&p, &p0_point(&p, BundleTag::K).unwrap());
        for (lam, v) in tables::p0_values().iter().zip(tables::p0_k_vectors(p.k, p.l).iter()) {
            assert!(is_zero_vec(&eigen_residual_exact(&m, lam, v)));
        }
    }
}

#[test]
fn listed_p0_k_basis_has_two_bad_entries() {
    let p = normalize(3, 2).unwrap();
    let m = jacobian_exact(&p, &p0_point(&p, BundleTag::K).unwrap());
    let bad: Vec<usize> = tables::p0_values()
        .iter()
        .zip(tables::p0_k_listed_vectors(p.k, p.l).iter())
        .enumerate()
        .filter(|(_, (lam, v))| !is_zero_vec(&eigen_residual_exact(&m, lam, v)))
        .map(|(i, _)| i + 1)
        .collect();
    assert_eq!(bad, vec![4, 8]);
}

#[test]
fn spectra_at_p0_and_p1() {
    let p = normalize(3, 2).unwrap();
    let cat = catalog(&p).unwrap();
    let want_p0 = [2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, -2.0 / 3.0, -2.0 / 3.0, -4.0 / 3.0, -4.0 / 3.0];
    for tag in BundleTag::ALL {
        let e = eigen(&p, cat.find(CpLabel::P0(tag)).unwrap()).unwrap();
        let got = e.spectrum();
        assert_eq!(got.len(), 8);
        for (g, w) in got.iter().zip(want_p0.iter()) {
            assert!((g - w).abs() < 1e-10, "{got:?}");
        }
        assert_eq!(e.eigenspaces[0].basis.len(), 4);
        assert_eq!(e.unstable_frame.len(), 3);
        assert!(e.tangency_flags.iter().all(|t| t.ricci_flat));
    }
    let e = eigen(&p, cat.find(CpLabel::P1).unwrap()).unwrap();
    let want = [1.0 / 3.0, -1.0 / 6.0, -1.0 / 6.0, -1.0 / 6.0, -2.0 / 3.0, -2.0 / 3.0, -5.0 / 6.0, -5.0 / 6.0];
    for (g, w) in e.spectrum().iter().zip(want.iter()) {
        assert!((g - w).abs() < 1e-10);
    }
    assert_eq!(e.unstable_frame.len(), 1);
    assert!(!e.tangency_flags[0].ricci_flat);
}

#[test]
fn p0_k_second_vector_in_unstable_eigenspace() {
    let p = normalize(3, 2).unwrap();
    let v = tables::p0_k_listed_vectors(3, 2)[1].clone().map(|x| rat_to_f64(&x));
    assert_eq!(v, [17.0, 10.0, -9.0, -36.0, -10.0, -17.0, 9.0, 0.0]);
    let s = p0_point(&p, BundleTag::K).unwrap().to_f64();
    let m = to_matrix(&jacobian(&p, &s));
    assert!(eigen_residual(&m, 2.0 / 3.0, &v) < 1e-10);
}

#[test]
fn tangency_flags_at_p0() {
    for (k, l) in [(1, 1), (3, 2), (17, 5)] {
        let p = normalize(k, l).unwrap();
        let s = p0_point(&p, BundleTag::KplusL).unwrap();
        let vs = tables::p0_kplusl_vectors(p.k, p.l);
        let flags: Vec<_> = vs.iter().map(|v| tangency(&p, &s, v, 0.0)).collect();
        let rf: Vec<usize> = (0..8).filter(|&i| flags[i].ricci_flat).map(|i| i + 1).collect();
        let sp: Vec<usize> = (0..8).filter(|&i| flags[i].spin_plus).map(|i| i + 1).collect();
        assert_eq!(rf, vec![1, 2, 3, 5, 7, 8]);
        assert_eq!(sp, vec![1, 2, 7]);

        let s = p0_point(&p, BundleTag::K).unwrap();
        let vs = tables::p0_k_vectors(p.k, p.l);
        let flags: Vec<_> = vs.iter().map(|v| tangency(&p, &s, v, 0.0)).collect();
        let sm: Vec<usize> = (0..8).filter(|&i| flags[i].spin_minus).map(|i| i + 1).collect();
        assert_eq!(&sm[..2], &[1, 2]);
        assert!(flags[..3].iter().all(|f| f.ricci_flat));
    }
}

#[test]
fn frames_match_closed_forms() {
    let p = normalize(3, 2).unwrap();
    let f = unstable_frame_exact(&p, BundleTag::KplusL, FrameConstraint::SpinPlus).unwrap();
    assert_eq!(f[0][7], rat(-36 * 19, 5));
    let f = unstable_frame_exact(&p, BundleTag::K, FrameConstraint::SpinMinus).unwrap();
    assert_eq!(f[0].clone().map(|x| rat_to_f64(&x)), [0.0, 0.0, 2.0, -4.0, -1.0, -1.0, 0.0, -36.0 * 19.0 / 3.0]);
    let f = unstable_frame_exact(&p, BundleTag::KplusL, FrameConstraint::RicciFlat).unwrap();
    assert_eq!(f[2].clone().map(|x| rat_to_f64(&x)), [0.0, 1.0, -1.0, 0.0, 0.0, 1.0, -1.0, 0.0]);
}

#[test]
fn conical_points_generic() {
    for (k, l) in [(1, 0), (3, 2), (17, 5), (29, 1), (7, 6)] {
        let p = normalize(k, l).unwrap();
        let [a, b] = solve_homogeneous_einstein(&p).unwrap();
        let co = Coeffs::<f64>::new(&p);
        for cp in [&a, &b] {
            let s = cp.state();
            assert!(s.z.iter().all(|&z| z > 0.0));
            assert!(homogeneous::residual(&co, &s.z) <= 1e-12);
            assert!(co.vector_field(&s).max_norm() <= 1e-12);
        }
        assert!(a.state().z[0] < b.state().z[0]);
    }
}

fn state_strategy() -> impl Strategy<Value = [f64; 8]> {
    prop::array::uniform8(-1.0f64..1.0).prop_map(|mut v| {
        for z in &mut v[4..] {
            *z = z.abs();
        }
        v[7] *= 10.0;
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn jacobian_matches_finite_differences(v in state_strategy(), kl in prop::sample::select(vec![(1, 0), (1, 1), (3, 2), (17, 5)])) {
        let p = normalize(kl.0, kl.1).unwrap();
        let s = PhaseState::from_array(v);
        let a = jacobian(&p, &s);
        let f = jacobian_fd(&p, &s, 1e-6);
        for r in 0..8 {
            for c in 0..8 {
                let scale = a[r][c].abs().max(1.0);
                prop_assert!((a[r][c] - f[r][c]).abs() <= 1e-6 * scale, "entry ({r},{c}): {} vs {}", a[r][c], f[r][c]);
            }
        }
    }
}

//! Built-in invariant checks: exact data, certificates and reference runs.

use serde_json::{json, Value};

use spin7_core::aw_algebra::{normalize, BundleTag};
use spin7_core::critical_points::{
    catalog, eigen, eigen_residual_exact, jacobian_exact, p0_point, p1_point, tables, CpLabel,
};
use spin7_core::exact::{rat, Rat};
use spin7_core::phase_system::{Coeffs, PhaseState};
use spin7_core::polycert::{
    ball, certify_nonneg, implicit_derivatives, printed_q_resultant, q_resultant, rtilde, rtilde_zeros,
    sigma_minus_xi_hessian_det, RatBox, RootFn, DEFAULT_MAX_DEPTH,
};
use spin7_core::shooting::{integrate, ShootSpec};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn fixed_points() -> Check {
    let mut n = 0;
    for (k, l) in [(1, 0), (1, 1), (3, 2), (17, 5)] {
        let p = normalize(k, l).map_err(|e| e.to_string())?;
        let cat = catalog(&p).map_err(|e| e.to_string())?;
        for cp in &cat.points {
            let ok = if cp.coords.is_exact() { cp.is_exact_fixed_point(&p) } else { cp.field_residual(&p) <= 1e-12 };
            ensure(ok, || format!("{} is not fixed for {p}", cp.label.name()))?;
            n += 1;
        }
    }
    Ok(format!("{n} cataloged points are fixed"))
}

fn linearization() -> Check {
    let zero = |v: &[Rat; 8]| v.iter().all(|x| *x == rat(0, 1));
    for (k, l) in [(1, 1), (3, 2)] {
        let p = normalize(k, l).map_err(|e| e.to_string())?;
        for (tag, table) in [
            (BundleTag::KplusL, tables::p0_kplusl_jacobian(p.k, p.l)),
            (BundleTag::K, tables::p0_k_jacobian(p.k, p.l)),
        ] {
            let s = p0_point(&p, tag).ok_or("missing P0")?;
            let m = jacobian_exact(&p, &s);
            ensure(m == table, || format!("Jacobian at P0({}) differs for {p}", tag.name()))?;
            let vecs = if tag == BundleTag::K { tables::p0_k_vectors(p.k, p.l) } else { tables::p0_vectors(p.k, p.l, tag) };
            for (lam, v) in tables::p0_values().iter().zip(vecs.iter()) {
                ensure(zero(&eigen_residual_exact(&m, lam, v)), || format!("eigenvector at P0({}) for {p}", tag.name()))?;
            }
        }
        let m = jacobian_exact(&p, &p1_point());
        ensure(m == tables::p1_jacobian(), || format!("Jacobian at P1 differs for {p}"))?;
        let cat = catalog(&p).map_err(|e| e.to_string())?;
        let e = eigen(&p, cat.find(CpLabel::P1).ok_or("missing P1")?).map_err(|e| e.to_string())?;
        ensure(e.unstable_frame.len() == 1, || "P1 should have one unstable direction".into())?;
    }
    Ok("Jacobians and eigenvectors at P0 and P1 are exact".into())
}

fn identities() -> Check {
    let mut count = 0;
    for (k, l) in [(1, 0), (3, 2), (17, 5)] {
        let co = Coeffs::<Rat>::new(&normalize(k, l).map_err(|e| e.to_string())?);
        for i in 0..64i64 {
            let v: [Rat; 8] = std::array::from_fn(|j| rat((i * 7 + j as i64 * 13) % 23 - 11, 1 + (i + j as i64) % 5));
            let s = PhaseState::from_array(v);
            let f = co.vector_field(&s);
            let st = co.scalar_terms(&s);
            let two = rat(2, 1);
            let lhs = &two * (&f.x[0] + &f.x[1] + &f.x[2]) + &f.x[3];
            let h = &two * (&s.x[0] + &s.x[1] + &s.x[2]) + &s.x[3] - rat(1, 1);
            let gm1 = &st.g - rat(1, 1);
            ensure(lhs == &h * &gm1 + (&gm1 + &st.rs), || format!("energy identity fails at {s:?}"))?;
            count += 1;
        }
    }
    Ok(format!("energy identity exact on {count} states"))
}

fn root_data() -> Check {
    let p = normalize(3, 2).map_err(|e| e.to_string())?;
    let at = [rat(0, 1), rat(1, 1)];
    let w = implicit_derivatives(&p, RootFn::Omega, &at, 2).map_err(|e| e.to_string())?;
    ensure(w.root == rat(2, 3) && w.gradient == vec![rat(-3, 1), rat(1, 3)], || "omega derivatives".into())?;
    let z = implicit_derivatives(&p, RootFn::Zeta, &at, 2).map_err(|e| e.to_string())?;
    ensure(z.gradient == vec![rat(-3, 1), rat(2, 15)], || "zeta derivatives".into())?;
    for (k, l) in [(1, 1), (3, 2)] {
        let p = normalize(k, l).map_err(|e| e.to_string())?;
        let det = sigma_minus_xi_hessian_det(&p).map_err(|e| e.to_string())?;
        ensure(det == rat(19 * k * k - k * l - l * l, 300 * k * k), || format!("Hessian determinant for {p}: {det}"))?;
    }
    Ok("root values, gradients and Hessian determinants".into())
}

fn certificates() -> Check {
    let r = q_resultant(&normalize(1, 0).map_err(|e| e.to_string())?);
    ensure(r == printed_q_resultant(), || "q-slice resultant differs from the closed form".into())?;
    let bx = RatBox::closed(vec![rat(0, 1), rat(0, 1)], vec![rat(1, 2), rat(1, 1)]).map_err(|e| e.to_string())?;
    let c = certify_nonneg(&r, &bx, &[ball(&[rat(0, 1), rat(1, 1)])], DEFAULT_MAX_DEPTH).map_err(|e| e.to_string())?;
    ensure(c.is_nonnegative(), || format!("r: {}", c.to_json()))?;
    let mut boxes = c.boxes_processed;
    for (k, l) in [(1, 0), (29, 1), (17, 5), (3, 2), (7, 6), (1, 1)] {
        let p = normalize(k, l).map_err(|e| e.to_string())?;
        let f = rtilde(&p).map_err(|e| e.to_string())?;
        let balls: Vec<_> = rtilde_zeros(&p).iter().map(|z| ball(z)).collect();
        let c = certify_nonneg(&f, &RatBox::unit(3), &balls, DEFAULT_MAX_DEPTH).map_err(|e| e.to_string())?;
        ensure(c.is_nonnegative(), || format!("rtilde {p}: {}", c.to_json()))?;
        boxes += c.boxes_processed;
    }
    Ok(format!("r and six reduced resultants certified ({boxes} boxes)"))
}

fn reference_runs() -> Check {
    let p = normalize(3, 2).map_err(|e| e.to_string())?;
    for (tag, s) in [(BundleTag::KplusL, [0.6, 0.8]), (BundleTag::K, [0.8, 0.6])] {
        let spec = ShootSpec::spin(p, tag, s[0], s[1]).map_err(|e| e.to_string())?;
        let t = integrate(&spec).map_err(|e| e.to_string())?;
        ensure(t.outcome.is_alc_p1(), || format!("{} run: {:?}", tag.name(), t.outcome.kind))?;
    }
    let one = normalize(1, 1).map_err(|e| e.to_string())?;
    let s = 10f64.sqrt();
    let spec = ShootSpec::spin(one, BundleTag::KplusL, -3.0 / s, 1.0 / s).map_err(|e| e.to_string())?;
    let t = integrate(&spec).map_err(|e| e.to_string())?;
    let z = t.last().state.z;
    ensure((z[0] - 2.0 / 21.0).abs() < 1e-6 && (z[3] - 63.0 / 5.0).abs() < 1e-4, || format!("boundary run ends at {z:?}"))?;
    Ok("(3,2) runs reach P1; (1,1) boundary run reaches the conical point".into())
}

/// Runs every check; returns the report and whether all passed.
pub fn run() -> (Value, bool) {
    let checks: [(&str, fn() -> Check); 6] = [
        ("fixed_points", fixed_points),
        ("linearization", linearization),
        ("identities", identities),
        ("root_data", root_data),
        ("certificates", certificates),
        ("reference_runs", reference_runs),
    ];
    let mut all = true;
    let mut rows = Vec::new();
    for (name, f) in checks {
        let r = f();
        all &= r.is_ok();
        let (status, detail) = match r {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        eprintln!("{status} {name}: {detail}");
        rows.push(json!({"check": name, "status": status, "detail": detail}));
    }
    (json!({"passed": all, "checks": rows}), all)
}

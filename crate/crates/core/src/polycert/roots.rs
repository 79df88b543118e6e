//! Implicit root functions of the slices and their exact derivatives.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::aw_algebra::AWParams;
use crate::critical_points::small_rational;
use crate::error::{Error, Result};
use crate::exact::{rat, rat_from_f64, rat_to_f64, rat_to_string, Rat};

use super::barriers::{slice, slice_symbolic, Slice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootFn {
    /// Smaller positive root of q₁ in `u`.
    Omega,
    /// Smallest non-negative root of q₂ in `u` on `[0, 2/3]`.
    Zeta,
    /// Smaller positive root of p₁ in `Z₁`.
    Xi,
    /// Smallest positive root of p₂ in `Z₁` on `[0, 1/2]`.
    Sigma,
}

impl RootFn {
    pub fn slice(self) -> Slice {
        match self {
            RootFn::Omega => Slice::Q1,
            RootFn::Zeta => Slice::Q2,
            RootFn::Xi => Slice::P1,
            RootFn::Sigma => Slice::P2,
        }
    }

    pub fn arity(self) -> usize {
        match self {
            RootFn::Omega | RootFn::Zeta => 2,
            RootFn::Xi | RootFn::Sigma => 3,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "omega" => Ok(RootFn::Omega),
            "zeta" => Ok(RootFn::Zeta),
            "xi" => Ok(RootFn::Xi),
            "sigma" => Ok(RootFn::Sigma),
            other => Err(Error::InvalidRequest(format!("unknown root function {other:?}"))),
        }
    }
}

const ROOT_TOL: f64 = 1e-12;

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

fn bisect(c: &[f64], mut a: f64, mut b: f64) -> f64 {
    let mut fa = horner(c, a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if b - a <= ROOT_TOL * 0.01 || m <= a || m >= b {
            break;
        }
        let fm = horner(c, m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Real roots in `(lo, hi)` found by isolating between critical points.
fn interior_roots(c: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let mut c = c.to_vec();
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let deriv: Vec<f64> = c.iter().enumerate().skip(1).map(|(i, &a)| i as f64 * a).collect();
    let mut knots = vec![lo];
    knots.extend(interior_roots(&deriv, lo, hi));
    knots.push(hi);
    let scale = c.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let mut out: Vec<f64> = Vec::new();
    for (i, w) in knots.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (horner(&c, a), horner(&c, b));
        if i > 0 && fa.abs() <= 1e-14 * scale {
            out.push(a);
        }
        if fa != 0.0 && fb != 0.0 && (fa < 0.0) != (fb < 0.0) {
            out.push(bisect(&c, a, b));
        }
    }
    out.retain(|&r| r > lo && r < hi);
    out.dedup_by(|a, b| (*a - *b).abs() <= ROOT_TOL);
    out
}

/// Smallest root of the exact polynomial in `[lo, hi]`, optionally excluding `lo`.
fn smallest_root(c: &[Rat], lo: &Rat, hi: &Rat, include_lo: bool) -> Option<f64> {
    let eval = |x: &Rat| c.iter().rev().fold(Rat::zero(), |acc, a| acc * x + a);
    if include_lo && eval(lo).is_zero() {
        return Some(rat_to_f64(lo));
    }
    let cf: Vec<f64> = c.iter().map(rat_to_f64).collect();
    if let Some(r) = interior_roots(&cf, rat_to_f64(lo), rat_to_f64(hi)).first() {
        return Some(*r);
    }
    eval(hi).is_zero().then(|| rat_to_f64(hi))
}

/// Smaller positive root of a polynomial of degree ≤ 2 from the exact discriminant.
fn quadratic_root(c: &[Rat], point: &[Rat]) -> Result<Option<f64>> {
    let get = |i: usize| c.get(i).cloned().unwrap_or_else(Rat::zero);
    let (c0, c1, c2) = (get(0), get(1), get(2));
    if c.len() > 3 {
        return Err(Error::DomainAnomaly("slice is not quadratic".into()));
    }
    if c2.is_zero() {
        if c1.is_zero() {
            return Ok(None);
        }
        let r = rat_to_f64(&(-c0 / c1));
        return Ok((r > 0.0).then_some(r));
    }
    let disc = &c1 * &c1 - rat(4, 1) * &c2 * &c0;
    if disc.is_negative() {
        return Err(Error::DomainAnomaly(format!("negative discriminant at {}", fmt_point(point))));
    }
    let (b, a) = (rat_to_f64(&c1), rat_to_f64(&c2));
    let sq = rat_to_f64(&disc).sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    let mut roots = vec![q / a];
    if q != 0.0 {
        roots.push(rat_to_f64(&c0) / q);
    }
    Ok(roots.into_iter().filter(|&r| r > 0.0).min_by(f64::total_cmp))
}

fn fmt_point(point: &[Rat]) -> String {
    format!("({})", point.iter().map(rat_to_string).collect::<Vec<_>>().join(", "))
}

/// Value of the root function at `point`; `None` when the root is absent.
pub fn root_fn(p: &AWParams, which: RootFn, point: &[Rat]) -> Result<Option<f64>> {
    let s = slice(p, which.slice(), point)?;
    let c = s.univariate_coeffs(0);
    match which {
        RootFn::Omega | RootFn::Xi => quadratic_root(&c, point),
        RootFn::Zeta => Ok(smallest_root(&c, &rat(0, 1), &rat(2, 3), true)),
        RootFn::Sigma => Ok(smallest_root(&c, &rat(0, 1), &rat(1, 2), false)),
    }
}

pub fn root_fn_f64(p: &AWParams, which: RootFn, point: &[f64]) -> Result<Option<f64>> {
    let pt: Option<Vec<Rat>> = point.iter().map(|&x| rat_from_f64(x)).collect();
    root_fn(p, which, &pt.ok_or_else(|| Error::InvalidRequest("non-finite point".into()))?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImplicitDerivatives {
    pub root: Rat,
    pub gradient: Vec<Rat>,
    pub hessian: Option<Vec<Vec<Rat>>>,
}

/// Exact first (and optionally second) partials of the root function with
/// respect to its parameters. The root at `point` must be rational.
pub fn implicit_derivatives(p: &AWParams, which: RootFn, point: &[Rat], order: u8) -> Result<ImplicitDerivatives> {
    if !(1..=2).contains(&order) {
        return Err(Error::InvalidRequest(format!("derivative order must be 1 or 2, got {order}")));
    }
    let approx = root_fn(p, which, point)?
        .ok_or_else(|| Error::InvalidRequest(format!("no root at {}", fmt_point(point))))?;
    let f = slice_symbolic(p, which.slice());
    let n = which.arity();
    let root = small_rational(approx, 1_000_000)
        .filter(|r| {
            let mut x = point.to_vec();
            x.push(r.clone());
            f.eval(&x).is_zero()
        })
        .ok_or_else(|| {
            Error::InvalidRequest(format!("root {approx} at {} is not rational; exact derivatives unavailable", fmt_point(point)))
        })?;
    let mut x = point.to_vec();
    x.push(root.clone());
    let fu = f.diff(n).eval(&x);
    if fu.is_zero() {
        return Err(Error::NonSimpleRoot(fmt_point(&x)));
    }
    let gradient: Vec<Rat> = (0..n).map(|i| -f.diff(i).eval(&x) / &fu).collect();
    let hessian = (order == 2).then(|| {
        let fuu = f.diff(n).diff(n).eval(&x);
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let fij = f.diff(i).diff(j).eval(&x);
                        let fiu = f.diff(i).diff(n).eval(&x);
                        let fju = f.diff(j).diff(n).eval(&x);
                        let (ri, rj) = (&gradient[i], &gradient[j]);
                        -(fij + fiu * rj + fju * ri + &fuu * ri * rj) / &fu
                    })
                    .collect()
            })
            .collect()
    });
    Ok(ImplicitDerivatives { root, gradient, hessian })
}

/// Hessian of `(σ − ξ)(α, β, 1)` in `(α, β)` at `(1, 0)`.
pub fn sigma_minus_xi_hessian(p: &AWParams) -> Result<[[Rat; 2]; 2]> {
    let at = [rat(1, 1), rat(0, 1), rat(1, 1)];
    let s = implicit_derivatives(p, RootFn::Sigma, &at, 2)?.hessian.expect("second order requested");
    let x = implicit_derivatives(p, RootFn::Xi, &at, 2)?.hessian.expect("second order requested");
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| &s[i][j] - &x[i][j])))
}

pub fn sigma_minus_xi_hessian_det(p: &AWParams) -> Result<Rat> {
    let h = sigma_minus_xi_hessian(p)?;
    Ok(&h[0][0] * &h[1][1] - &h[0][1] * &h[1][0])
}

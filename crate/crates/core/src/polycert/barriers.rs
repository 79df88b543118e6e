//! Barrier polynomials, their slices, and the resultants of the slices.

use serde::{Deserialize, Serialize};

use crate::aw_algebra::AWParams;
use crate::error::{Error, Result};
use crate::exact::{rat, rat_int, Rat};

use super::poly::RatPoly;
use super::printed::RTILDE_TERMS;
use super::resultant::sylvester_resultant;

pub const Z_VARS: [&str; 4] = ["Z1", "Z2", "Z3", "Z4"];
pub const Q_SLICE_VARS: [&str; 3] = ["alpha", "beta", "u"];
pub const P_SLICE_VARS: [&str; 4] = ["alpha", "beta", "delta", "Z1"];
pub const AB_VARS: [&str; 2] = ["alpha", "beta"];
pub const ABD_VARS: [&str; 3] = ["alpha", "beta", "delta"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Barrier {
    Q,
    A,
    P,
    B,
}

impl Barrier {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "Q" => Ok(Barrier::Q),
            "A" => Ok(Barrier::A),
            "P" => Ok(Barrier::P),
            "B" => Ok(Barrier::B),
            other => Err(Error::InvalidRequest(format!("unknown barrier {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Slice {
    Q1,
    Q2,
    P1,
    P2,
}

impl Slice {
    pub fn barrier(self) -> Barrier {
        match self {
            Slice::Q1 => Barrier::Q,
            Slice::Q2 => Barrier::A,
            Slice::P1 => Barrier::P,
            Slice::P2 => Barrier::B,
        }
    }
}

fn c(v: &[&str], x: Rat) -> RatPoly {
    RatPoly::constant(v, x)
}

/// The barrier as a polynomial in `(Z₁, Z₂, Z₃, Z₄)`.
pub fn barrier(p: &AWParams, which: Barrier) -> RatPoly {
    let v = &Z_VARS;
    let [z1, z2, z3, z4]: [RatPoly; 4] = RatPoly::vars(v).try_into().expect("four variables");
    let (k, l, d) = (p.k, p.l, p.delta);
    let one = c(v, rat_int(1));
    let two = rat_int(2);
    match which {
        Barrier::Q => {
            let s = &z2 + &z3;
            let e = rat(k + l, 8 * d);
            (&z4 * &s.pow(2)).scale(&e) - (c(v, two.clone()) + (&z1 * &z4).scale(&rat(k + l, 4 * d))) * &s
                + (&z1.pow(2) * &z4).scale(&e)
                - z1.scale(&two)
                + one
        }
        Barrier::A => {
            let s = &z2 + &z3;
            let kl = rat(k + l, d);
            (&s.pow(4) * &z4.pow(2)).scale(&(&kl * &kl / rat_int(32))) - s.pow(2).scale(&two)
                - (z1.scale(&rat_int(12)) + c(v, two.clone())) * &s
                + z1.pow(2).scale(&two)
                - z1.scale(&two)
                + c(v, two)
        }
        Barrier::P => {
            one - (&(&z1 + &z2) + &z3).scale(&two) - (&(&z2 * &z3) * &z4).scale(&rat(k + l, 2 * d))
                + (&(&z1 * &z3) * &z4).scale(&rat(l, 2 * d))
                + (&(&z1 * &z2) * &z4).scale(&rat(k, 2 * d))
        }
        Barrier::B => {
            let sq = |a: i64| rat(a * a, 2 * d * d);
            (&(&z1.pow(2) + &z2.pow(2)) + &z3.pow(2)).scale(&two)
                - (&(&(&z2 * &z3) + &(&z1 * &z2)) + &(&z1 * &z3)).scale(&rat_int(12))
                + c(v, two.clone())
                - (&(&z1 + &z2) + &z3).scale(&two)
                + (&(&z2 * &z3).pow(2) * &z4.pow(2)).scale(&sq(k + l))
                + (&(&z1 * &z3).pow(2) * &z4.pow(2)).scale(&sq(l))
                + (&(&z1 * &z2).pow(2) * &z4.pow(2)).scale(&sq(k))
        }
    }
}

/// Slice with symbolic parameters: q-slices over `(α, β, u)` with `u = Z₂ + Z₃`,
/// p-slices over `(α, β, δ, Z₁)`.
pub fn slice_symbolic(p: &AWParams, which: Slice) -> RatPoly {
    let b = barrier(p, which.barrier());
    match which {
        Slice::Q1 | Slice::Q2 => {
            let v = &Q_SLICE_VARS;
            let [a, be, u]: [RatPoly; 3] = RatPoly::vars(v).try_into().expect("three variables");
            let half = u.scale(&rat(1, 2));
            b.compose(&[a, half.clone(), half, be.scale(&rat(6 * p.delta, p.k + p.l))])
        }
        Slice::P1 | Slice::P2 => {
            let v = &P_SLICE_VARS;
            let [a, be, de, z1]: [RatPoly; 4] = RatPoly::vars(v).try_into().expect("four variables");
            b.compose(&[z1.clone(), &a * &z1, &be * &z1, de.scale(&rat(6 * p.delta, p.k))])
        }
    }
}

/// Univariate slice at fixed parameters; `params` is `(α, β)` or `(α, β, δ)`.
pub fn slice(p: &AWParams, which: Slice, params: &[Rat]) -> Result<RatPoly> {
    let want = match which {
        Slice::Q1 | Slice::Q2 => 2,
        Slice::P1 | Slice::P2 => 3,
    };
    if params.len() != want {
        return Err(Error::InvalidRequest(format!("{which:?} takes {want} parameters, got {}", params.len())));
    }
    let mut s = slice_symbolic(p, which);
    for (i, x) in params.iter().enumerate() {
        s = s.substitute(i, x);
    }
    for _ in 0..want {
        s = s.drop_var(0);
    }
    Ok(s)
}

/// Resultant of the two q-slices in `u`, over `(α, β)`.
pub fn q_resultant(p: &AWParams) -> RatPoly {
    let q1 = slice_symbolic(p, Slice::Q1);
    let q2 = slice_symbolic(p, Slice::Q2);
    sylvester_resultant(&q1, &q2, 2).expect("both slices have positive degree in u")
}

/// The printed closed form `27β²·[…]` of the q-slice resultant.
pub fn printed_q_resultant() -> RatPoly {
    let bracket: [(i64, i64, u32, u32); 22] = [
        (243, 16384, 8, 6),
        (-81, 512, 7, 5),
        (81, 1024, 6, 5),
        (81, 256, 6, 4),
        (-189, 256, 5, 4),
        (27, 128, 4, 4),
        (-153, 32, 5, 3),
        (-27, 32, 4, 3),
        (27, 16, 3, 3),
        (-9, 32, 2, 3),
        (18, 1, 4, 2),
        (-39, 2, 3, 2),
        (159, 16, 2, 2),
        (-9, 4, 1, 2),
        (3, 16, 0, 2),
        (21, 1, 3, 1),
        (-15, 1, 2, 1),
        (17, 4, 1, 1),
        (-7, 16, 0, 1),
        (6, 1, 2, 0),
        (-2, 1, 1, 0),
        (1, 4, 0, 0),
    ];
    RatPoly::from_terms(&AB_VARS, bracket.iter().map(|&(n, d, i, j)| (vec![i, j + 2], rat(27 * n, d))))
}

/// Printed expansion of the reduced p-slice resultant at `ρ = l/k`.
pub fn printed_rtilde(p: &AWParams) -> RatPoly {
    let rho = rat(p.l, p.k);
    RatPoly::from_terms(
        &ABD_VARS,
        RTILDE_TERMS
            .iter()
            .map(|&(n, d, [r, a, b, de])| (vec![a, b, de], rat(n, d) * num_traits::pow(rho.clone(), r as usize))),
    )
}

/// Resultant of the two p-slices in `Z₁`, over `(α, β, δ)`.
pub fn p_resultant(p: &AWParams) -> RatPoly {
    let p1 = slice_symbolic(p, Slice::P1);
    let p2 = slice_symbolic(p, Slice::P2);
    sylvester_resultant(&p1, &p2, 3).expect("both slices have positive degree in Z1")
}

/// The p-slice resultant divided by its exact factor `36δ²`, checked against
/// the printed expansion.
pub fn rtilde(p: &AWParams) -> Result<RatPoly> {
    let r = p_resultant(p);
    let rt = r.div_monomial(&[0, 0, 2], &rat_int(36)).ok_or_else(|| {
        Error::FormulaDiscrepancy(format!("resultant for {p} is not divisible by delta^2"))
    })?;
    let printed = printed_rtilde(p);
    let diff = &rt - &printed;
    if !diff.is_zero() {
        let listed: Vec<String> = diff.terms().take(12).map(|(m, c)| format!("{:?}: {}", m.0, c)).collect();
        return Err(Error::FormulaDiscrepancy(format!(
            "computed and printed expansions differ for {p} in {} terms: {}",
            diff.len(),
            listed.join(", ")
        )));
    }
    Ok(rt)
}

/// Points where the reduced resultant is claimed to vanish on the unit cube.
pub fn rtilde_zeros(p: &AWParams) -> Vec<[Rat; 3]> {
    let mut z = vec![[rat_int(1), rat_int(0), rat_int(1)]];
    if (p.k, p.l) == (1, 1) {
        z.push([rat_int(0), rat_int(1), rat_int(1)]);
    }
    z
}

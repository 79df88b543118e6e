//! Sylvester resultants with polynomial coefficients.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rat;

use super::poly::RatPoly;

/// Sylvester matrix of `f` and `g` in variable `v`, entries over all variables
/// but with `v` absent.
pub fn sylvester_matrix(f: &RatPoly, g: &RatPoly, v: usize) -> Result<Vec<Vec<RatPoly>>> {
    let fc = f.coeffs_in(v);
    let gc = g.coeffs_in(v);
    let (m, n) = (fc.len() - 1, gc.len() - 1);
    if m == 0 || n == 0 || f.is_zero() || g.is_zero() {
        return Err(Error::InvalidRequest(format!(
            "resultant needs positive degree in {}, got {m} and {n}",
            f.variables()[v]
        )));
    }
    let zero = RatPoly::zero(&f.variables().iter().map(String::as_str).collect::<Vec<_>>());
    let size = m + n;
    let mut rows = vec![vec![zero; size]; size];
    for r in 0..n {
        for (j, c) in fc.iter().rev().enumerate() {
            rows[r][r + j] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in gc.iter().rev().enumerate() {
            rows[n + r][r + j] = c.clone();
        }
    }
    Ok(rows)
}

/// Division-free determinant by Laplace expansion along rows, memoized on the
/// set of used columns.
pub fn determinant(rows: &[Vec<RatPoly>]) -> RatPoly {
    let n = rows.len();
    assert!(n < 64 && rows.iter().all(|r| r.len() == n), "square matrix expected");
    let vars: Vec<&str> = rows[0][0].variables().iter().map(String::as_str).collect();
    let mut memo: HashMap<u64, RatPoly> = HashMap::new();
    fn rec(rows: &[Vec<RatPoly>], row: usize, used: u64, vars: &[&str], memo: &mut HashMap<u64, RatPoly>) -> RatPoly {
        let n = rows.len();
        if row == n {
            return RatPoly::constant(vars, Rat::one());
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = RatPoly::zero(vars);
        let mut sign = true;
        for c in 0..n {
            if used & (1 << c) != 0 {
                continue;
            }
            let e = &rows[row][c];
            if !e.is_zero() {
                let minor = rec(rows, row + 1, used | (1 << c), vars, memo);
                if !minor.is_zero() {
                    let t = e * &minor;
                    acc = if sign { &acc + &t } else { &acc - &t };
                }
            }
            sign = !sign;
        }
        memo.insert(used, acc.clone());
        acc
    }
    rec(rows, 0, 0, &vars, &mut memo)
}

/// Resultant of `f` and `g` with respect to variable `v`; `v` is removed from
/// the variable list of the result.
pub fn sylvester_resultant(f: &RatPoly, g: &RatPoly, v: usize) -> Result<RatPoly> {
    if f.variables() != g.variables() {
        return Err(Error::InvalidRequest("resultant operands use different variables".into()));
    }
    let m = sylvester_matrix(f, g, v)?;
    Ok(determinant(&m).drop_var(v))
}

/// Whether two univariate rational polynomials share a complex root, via an
/// exact Euclidean gcd.
pub fn have_common_root(f: &[Rat], g: &[Rat]) -> bool {
    fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }
    let (mut a, mut b) = (trim(f.to_vec()), trim(g.to_vec()));
    if a.is_empty() || b.is_empty() {
        return true;
    }
    while !b.is_empty() {
        let mut r = a.clone();
        while r.len() >= b.len() && !r.is_empty() {
            let q = r.last().unwrap() / b.last().unwrap();
            let shift = r.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                r[shift + i] -= &q * c;
            }
            r = trim(r);
        }
        a = b;
        b = r;
    }
    a.len() > 1
}

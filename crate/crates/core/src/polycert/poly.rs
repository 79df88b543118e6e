//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exact::{rat_int, rat_to_f64, rat_to_string, Rat};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    vars: Vec<String>,
    terms: BTreeMap<Mono, Rat>,
}

impl RatPoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: Rat) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(vars: &[&str], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, Rat::one());
        p
    }

    /// All variables of `vars` as polynomials, in order.
    pub fn vars(vars: &[&str]) -> Vec<Self> {
        (0..vars.len()).map(|i| Self::var(vars, i)).collect()
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(&Mono(exps.to_vec())).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rat) {
        assert_eq!(exps.len(), self.vars.len(), "exponent length");
        if c.is_zero() {
            return;
        }
        let key = Mono(exps);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    fn same_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials over different variables");
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        Self { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(&self.var_refs(), Rat::one());
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.vars.len());
        let mut powers: Vec<Vec<Rat>> = x.iter().map(|v| vec![Rat::one(), v.clone()]).collect();
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &x[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t *= &powers[i][e as usize];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.vars.len());
        self.terms
            .iter()
            .map(|(m, c)| rat_to_f64(c) * m.0.iter().zip(x).map(|(&e, v)| v.powi(e as i32)).product::<f64>())
            .sum()
    }

    /// Substitutes `subs[i]` for variable `i`; all substitutes share one variable list.
    pub fn compose(&self, subs: &[RatPoly]) -> RatPoly {
        assert_eq!(subs.len(), self.vars.len());
        let target: Vec<&str> = subs[0].var_refs();
        let mut cache: Vec<Vec<RatPoly>> = subs.iter().map(|s| vec![Self::constant(&target, Rat::one()), s.clone()]).collect();
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap() * &subs[i];
                    cache[i].push(next);
                }
                if e > 0 {
                    t = &t * &cache[i][e as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Fixes variable `i` to the value `v`, keeping it in the variable list.
    pub fn substitute(&self, i: usize, v: &Rat) -> RatPoly {
        let mut out = Self::zero(&self.var_refs());
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i];
            e[i] = 0;
            out.add_term(e, c * num_traits::pow(v.clone(), k as usize));
        }
        out
    }

    pub fn diff(&self, i: usize) -> RatPoly {
        let mut out = Self::zero(&self.var_refs());
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            out.add_term(e, c * rat_int(k as i64));
        }
        out
    }

    /// Coefficients of `x_i^0, x_i^1, …` as polynomials in which `x_i` no longer occurs.
    pub fn coeffs_in(&self, i: usize) -> Vec<RatPoly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Self::zero(&self.var_refs()); d + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i] as usize;
            e[i] = 0;
            out[k].add_term(e, c.clone());
        }
        out
    }

    /// Removes a variable that does not occur.
    pub fn drop_var(&self, i: usize) -> RatPoly {
        assert_eq!(self.degree_in(i), 0, "variable {} still occurs", self.vars[i]);
        let mut vars = self.vars.clone();
        vars.remove(i);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.remove(i);
                (Mono(e), c.clone())
            })
            .collect();
        RatPoly { vars, terms }
    }

    /// Re-expresses over a superset of variables.
    pub fn embed(&self, vars: &[&str]) -> RatPoly {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).unwrap_or_else(|| panic!("variable {v} missing")))
            .collect();
        let mut out = Self::zero(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (j, &k) in m.0.iter().enumerate() {
                e[map[j]] = k;
            }
            out.add_term(e, c.clone());
        }
        out
    }

    /// Exact quotient by the monomial `c·x^e`; `None` if some term is not divisible.
    pub fn div_monomial(&self, exps: &[u32], c: &Rat) -> Option<RatPoly> {
        let mut out = Self::zero(&self.var_refs());
        for (m, v) in &self.terms {
            let e: Option<Vec<u32>> = m.0.iter().zip(exps).map(|(a, b)| a.checked_sub(*b)).collect();
            out.add_term(e?, v / c);
        }
        Some(out)
    }

    /// Univariate coefficients `[c₀, c₁, …]`; panics if another variable occurs.
    pub fn univariate_coeffs(&self, i: usize) -> Vec<Rat> {
        self.coeffs_in(i)
            .into_iter()
            .map(|p| {
                assert!(p.terms.keys().all(|m| m.0.iter().all(|&e| e == 0)), "not univariate");
                p.terms.values().next().cloned().unwrap_or_else(Rat::zero)
            })
            .collect()
    }

    pub fn max_abs_coeff(&self) -> Rat {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Rat::zero)
    }
}

impl<'a> std::ops::Add<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        self.same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        self.same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.0.clone(), -c.clone());
        }
        out
    }
}

impl<'a> std::ops::Mul<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        self.same_vars(rhs);
        let mut out = RatPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let e = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl std::ops::Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        self.scale(&-Rat::one())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr<RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
        impl std::ops::$tr<&RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: &RatPoly) -> RatPoly {
                std::ops::$tr::$m(&self, rhs)
            }
        }
        impl std::ops::$tr<RatPoly> for &RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                std::ops::$tr::$m(self, &rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl std::ops::Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let a = c.abs();
            let mono: Vec<String> = m
                .0
                .iter()
                .zip(&self.vars)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", rat_to_string(&a))?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", rat_to_string(&a), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

//! Scalar types shared by the float and exact code paths.
//!
//! Every polynomial formula in the crate is written once, generically over
//! [`Scalar`], and evaluated with `f64` for integration, with [`Rat`] for exact
//! checks at rational points, and with [`QuadSurd`] at the points whose
//! coordinates involve a single square root.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Very large numerators or denominators: shift both down first.
            let bits = r.numer().bits().max(r.denom().bits()) as i64 - 900;
            let shift = bits.max(0) as usize;
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Exact rational nearest to a finite double (the double's exact binary value).
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

/// `"num/den"`, or just `"num"` for integers.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `num/den`, an integer, or a decimal literal (with optional exponent)
/// into an exact rational. Decimal literals are read exactly, so `0.6` is `3/5`.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = Rat::from_integer(all);
    if scale >= 0 {
        r *= Rat::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= Rat::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -r } else { r })
}

/// Parses a real-valued flag: rational syntax is converted, anything else goes
/// through the standard float parser.
pub fn parse_real(s: &str) -> Result<f64> {
    if s.contains('/') {
        return parse_rational(s).map(|r| rat_to_f64(&r));
    }
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("not a number: {s:?}")))
}

/// Ring operations plus an embedding of the rationals.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + Zero
    + One
{
    fn from_rat(r: &Rat) -> Self;
    fn to_f64(&self) -> f64;
    /// Sign of the value; exact for exact types.
    fn sign(&self) -> Ordering;
    /// True when arithmetic on this type carries no rounding.
    fn is_exact() -> bool;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(&rat_int(n))
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rat(&rat(n, d))
    }
    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
    fn scale(&self, r: &Rat) -> Self {
        self.clone() * Self::from_rat(r)
    }
}

impl Scalar for f64 {
    fn from_rat(r: &Rat) -> Self {
        rat_to_f64(r)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sign(&self) -> Ordering {
        self.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
    }
    fn is_exact() -> bool {
        false
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
}

impl Scalar for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn to_f64(&self) -> f64 {
        rat_to_f64(self)
    }
    fn sign(&self) -> Ordering {
        self.cmp(&Rat::zero())
    }
    fn is_exact() -> bool {
        true
    }
}

/// `a + b·√d` with rational `a`, `b` and a square-free radicand `d > 1`.
///
/// A value with `b = 0` is compatible with every radicand; mixing two
/// different radicands with non-zero surd parts panics.
#[derive(Clone, Debug)]
pub struct QuadSurd {
    pub a: Rat,
    pub b: Rat,
    pub d: i64,
}

impl QuadSurd {
    pub fn new(a: Rat, b: Rat, d: i64) -> Self {
        assert!(d > 1, "radicand must exceed 1");
        Self { a, b, d }
    }

    pub fn rational(a: Rat) -> Self {
        Self { a, b: Rat::zero(), d: 0 }
    }

    /// `c·√d`.
    pub fn surd(c: Rat, d: i64) -> Self {
        Self::new(Rat::zero(), c, d)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn radicand(&self, other: &Self) -> i64 {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, true) => self.d.max(other.d),
            (false, true) => self.d,
            (true, false) => other.d,
            (false, false) => {
                assert_eq!(self.d, other.d, "mixed radicands");
                self.d
            }
        }
    }
}

impl PartialEq for QuadSurd {
    fn eq(&self, other: &Self) -> bool {
        if self.b.is_zero() && other.b.is_zero() {
            return self.a == other.a;
        }
        self.d == other.d && self.a == other.a && self.b == other.b
    }
}

impl Add for QuadSurd {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let d = self.radicand(&o);
        Self { a: self.a + o.a, b: self.b + o.b, d }
    }
}

impl Sub for QuadSurd {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let d = self.radicand(&o);
        Self { a: self.a - o.a, b: self.b - o.b, d }
    }
}

impl Mul for QuadSurd {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = self.radicand(&o);
        let dd = rat_int(d);
        Self {
            a: &self.a * &o.a + &self.b * &o.b * dd,
            b: &self.a * &o.b + &self.b * &o.a,
            d,
        }
    }
}

impl Neg for QuadSurd {
    type Output = Self;
    fn neg(self) -> Self {
        Self { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Zero for QuadSurd {
    fn zero() -> Self {
        Self::rational(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadSurd {
    fn one() -> Self {
        Self::rational(Rat::one())
    }
}

impl Scalar for QuadSurd {
    fn from_rat(r: &Rat) -> Self {
        Self::rational(r.clone())
    }
    fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * (self.d.max(0) as f64).sqrt()
    }
    fn sign(&self) -> Ordering {
        // sign(a + b√d) from sign(a), sign(b) and a² versus b²d.
        let sa = self.a.cmp(&Rat::zero());
        let sb = self.b.cmp(&Rat::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * rat_int(self.d);
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }
    fn is_exact() -> bool {
        true
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", rat_to_string(&self.a));
        }
        let surd = format!("{}*sqrt({})", rat_to_string(&self.b.abs()), self.d);
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{sign}{surd}")
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{} {sign} {surd}", rat_to_string(&self.a))
        }
    }
}

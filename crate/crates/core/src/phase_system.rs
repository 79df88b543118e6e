//! The 8-dimensional polynomial flow in (X₁..X₄, Z₁..Z₄), its conservation laws,
//! the two Spin(7) chiralities, and membership tests for the named invariant sets.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::aw_algebra::AWParams;
use crate::error::{Error, Result};
use crate::exact::{rat, Rat, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseState<T = f64> {
    pub x: [T; 4],
    pub z: [T; 4],
}

impl<T: Scalar> PhaseState<T> {
    pub fn new(x: [T; 4], z: [T; 4]) -> Self {
        Self { x, z }
    }

    pub fn from_array(v: [T; 8]) -> Self {
        let [x1, x2, x3, x4, z1, z2, z3, z4] = v;
        Self { x: [x1, x2, x3, x4], z: [z1, z2, z3, z4] }
    }

    pub fn to_array(&self) -> [T; 8] {
        let [x1, x2, x3, x4] = self.x.clone();
        let [z1, z2, z3, z4] = self.z.clone();
        [x1, x2, x3, x4, z1, z2, z3, z4]
    }

    pub fn to_f64(&self) -> PhaseState<f64> {
        PhaseState {
            x: self.x.clone().map(|v| v.to_f64()),
            z: self.z.clone().map(|v| v.to_f64()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(self.z.iter()).all(|v| v.sign() == Ordering::Equal)
    }
}

impl PhaseState<f64> {
    pub fn is_finite(&self) -> bool {
        self.x.iter().chain(self.z.iter()).all(|v| v.is_finite())
    }

    pub fn max_norm(&self) -> f64 {
        self.x.iter().chain(self.z.iter()).fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_dist(&self, other: &PhaseState<f64>) -> f64 {
        let a = self.to_array();
        let b = other.to_array();
        a.iter().zip(b.iter()).fold(0.0, |m, (u, v)| m.max((u - v).abs()))
    }

    pub fn check_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NumericDomain(format!("non-finite state {self:?}")))
        }
    }
}

/// The two Spin(7) first-order systems: `F ≡ 0` is `Plus`, `H ≡ 0` is `Minus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chirality {
    Plus,
    Minus,
}

impl Chirality {
    pub fn flip(self) -> Self {
        match self {
            Chirality::Plus => Chirality::Minus,
            Chirality::Minus => Chirality::Plus,
        }
    }
}

/// Structural constants of the flow for one parameter pair.
///
/// `a = ((k+l)², l², k²)/(2Δ²)` weight the quartic terms of ℛᵢ and
/// `c = (k+l, l, k)/(2Δ)` weight the cubic terms of the Spin(7) conditions.
#[derive(Clone, Debug)]
pub struct Coeffs<T> {
    pub params: AWParams,
    pub a: [T; 3],
    pub c: [T; 3],
}

impl<T: Scalar> Coeffs<T> {
    pub fn new(p: &AWParams) -> Self {
        let (k, l, d) = (p.k, p.l, p.delta);
        let a = [(k + l) * (k + l), l * l, k * k].map(|n| T::from_rat(&rat(n, 2 * d * d)));
        let c = [k + l, l, k].map(|n| T::from_rat(&rat(n, 2 * d)));
        Self { params: *p, a, c }
    }

    pub fn scalar_terms(&self, s: &PhaseState<T>) -> ScalarTerms<T> {
        let [x1, x2, x3, x4] = s.x.clone();
        let [z1, z2, z3, z4] = s.z.clone();
        let two = T::from_i64(2);
        let six = T::from_i64(6);
        let g = two.clone() * (x1.square() + x2.square() + x3.square()) + x4.square();
        let z4s = z4.square();
        let q1 = self.a[0].clone() * z2.square() * z3.square() * z4s.clone();
        let q2 = self.a[1].clone() * z1.square() * z3.square() * z4s.clone();
        let q3 = self.a[2].clone() * z1.square() * z2.square() * z4s;
        let r1 = six.clone() * z2.clone() * z3.clone() + z1.square() - z2.square() - z3.square() - q1.clone();
        let r2 = six.clone() * z1.clone() * z3.clone() + z2.square() - z3.square() - z1.square() - q2.clone();
        let r3 = six * z1.clone() * z2.clone() + z3.square() - z1.square() - z2.square() - q3.clone();
        let r4 = q1 + q2 + q3;
        let rs = two * (r1.clone() + r2.clone() + r3.clone()) + r4.clone();
        ScalarTerms { g, r: [r1, r2, r3, r4], rs }
    }

    pub fn vector_field(&self, s: &PhaseState<T>) -> PhaseState<T> {
        let st = self.scalar_terms(s);
        let [x1, x2, x3, x4] = s.x.clone();
        let [z1, z2, z3, z4] = s.z.clone();
        let g = st.g.clone();
        let gm1 = g.clone() - T::one();
        let [r1, r2, r3, r4] = st.r;
        PhaseState {
            x: [
                x1.clone() * gm1.clone() + r1,
                x2.clone() * gm1.clone() + r2,
                x3.clone() * gm1.clone() + r3,
                x4.clone() * gm1 + r4,
            ],
            z: [
                z1 * (g.clone() + x1.clone() - x2.clone() - x3.clone()),
                z2 * (g.clone() + x2.clone() - x3.clone() - x1.clone()),
                z3 * (g.clone() + x3 - x1 - x2),
                z4 * (x4 - g),
            ],
        }
    }

    /// Signed cubic terms `w` of the `Plus` system: `F_i = X_i + Z_i − Z_j − Z_k + w_i`
    /// for i ≤ 3 and `F₄ = X₄ − Σw`. `Minus` negates `w`.
    pub fn cubic_terms(&self, z: &[T; 4], chirality: Chirality) -> [T; 3] {
        let [z1, z2, z3, z4] = z.clone();
        let w = [
            self.c[0].clone() * z2.clone() * z3.clone() * z4.clone(),
            -(self.c[1].clone() * z1.clone() * z3 * z4.clone()),
            -(self.c[2].clone() * z1 * z2 * z4),
        ];
        match chirality {
            Chirality::Plus => w,
            Chirality::Minus => w.map(|v| -v),
        }
    }

    /// `F` (Plus) or `H` (Minus).
    pub fn spin_residuals(&self, s: &PhaseState<T>, chirality: Chirality) -> [T; 4] {
        let [x1, x2, x3, x4] = s.x.clone();
        let [z1, z2, z3, _] = s.z.clone();
        let [w1, w2, w3] = self.cubic_terms(&s.z, chirality);
        let wsum = w1.clone() + w2.clone() + w3.clone();
        [
            x1 + z1.clone() - z2.clone() - z3.clone() + w1,
            x2 + z2.clone() - z3.clone() - z1.clone() + w2,
            x3 + z3 - z1 - z2 + w3,
            x4 - wsum,
        ]
    }

    /// Z-only conservation residual on the chirality's Spin(7) set.
    pub fn zcons(&self, z: &[T; 4], chirality: Chirality) -> T {
        let [w1, w2, w3] = self.cubic_terms(z, chirality);
        let sum = z[0].clone() + z[1].clone() + z[2].clone();
        T::from_i64(2) * sum - (w1 + w2 + w3) - T::one()
    }

    /// Gradient of [`Coeffs::zcons`] in Z.
    pub fn zcons_grad(&self, z: &[T; 4], chirality: Chirality) -> [T; 4] {
        let [z1, z2, z3, z4] = z.clone();
        let sg = match chirality {
            Chirality::Plus => T::one(),
            Chirality::Minus => -T::one(),
        };
        let [ckl, cl, ck] = self.c.clone();
        let two = T::from_i64(2);
        // ∂/∂Z of −Σw with w = (ckl Z₂Z₃Z₄, −cl Z₁Z₃Z₄, −ck Z₁Z₂Z₄)·sg.
        [
            two.clone() + sg.clone() * (cl.clone() * z3.clone() * z4.clone() + ck.clone() * z2.clone() * z4.clone()),
            two.clone() + sg.clone() * (ck.clone() * z1.clone() * z4.clone() - ckl.clone() * z3.clone() * z4.clone()),
            two + sg.clone() * (cl.clone() * z1.clone() * z4.clone() - ckl.clone() * z2.clone() * z4),
            sg * (cl * z1.clone() * z3.clone() + ck * z1 * z2.clone() - ckl * z2 * z3),
        ]
    }

    /// Solves the chirality's four linear conditions for X.
    pub fn x_from_z(&self, z: &[T; 4], chirality: Chirality) -> [T; 4] {
        let [z1, z2, z3, _] = z.clone();
        let [w1, w2, w3] = self.cubic_terms(z, chirality);
        let wsum = w1.clone() + w2.clone() + w3.clone();
        [
            z2.clone() + z3.clone() - z1.clone() - w1,
            z1.clone() + z3.clone() - z2.clone() - w2,
            z1 + z2 - z3 - w3,
            wsum,
        ]
    }

    /// Last four entries of the field at `(x_from_z(z), z)`.
    pub fn reduced_field(&self, z: &[T; 4], chirality: Chirality) -> [T; 4] {
        let s = PhaseState { x: self.x_from_z(z, chirality), z: z.clone() };
        self.vector_field(&s).z
    }

    pub fn residuals(&self, s: &PhaseState<T>) -> ConstraintResiduals<T> {
        let st = self.scalar_terms(s);
        let [x1, x2, x3, x4] = s.x.clone();
        let hyper = T::from_i64(2) * (x1 + x2 + x3) + x4 - T::one();
        ConstraintResiduals {
            hyperplane: hyper,
            conservation: st.g - T::one() + st.rs,
            f: self.spin_residuals(s, Chirality::Plus),
            h: self.spin_residuals(s, Chirality::Minus),
            zcons_plus: self.zcons(&s.z, Chirality::Plus),
            zcons_minus: self.zcons(&s.z, Chirality::Minus),
        }
    }

    pub fn hyperplane_grad() -> [T; 8] {
        [2, 2, 2, 1, 0, 0, 0, 0].map(T::from_i64)
    }

    /// Gradient of `𝒢 − 1 + ℛ_s` in (X, Z).
    pub fn conservation_grad(&self, s: &PhaseState<T>) -> [T; 8] {
        let j = self.jacobian(s);
        let x = &s.x;
        let wt = [2, 2, 2, 1].map(T::from_i64);
        std::array::from_fn(|c| {
            if c < 4 {
                let f = if c < 3 { 4 } else { 2 };
                T::from_i64(f) * x[c].clone()
            } else {
                (0..4).fold(T::zero(), |acc, i| acc + wt[i].clone() * j[i][c].clone())
            }
        })
    }

    /// Gradients of the four Spin(7) residuals of the given chirality.
    pub fn spin_grad(&self, s: &PhaseState<T>, chirality: Chirality) -> [[T; 8]; 4] {
        let [z1, z2, z3, z4] = s.z.clone();
        let sg = match chirality {
            Chirality::Plus => T::one(),
            Chirality::Minus => -T::one(),
        };
        let zero = T::zero();
        let [ckl, cl, ck] = self.c.clone();
        let dw: [[T; 4]; 3] = [
            [zero.clone(), z3.clone() * z4.clone(), z2.clone() * z4.clone(), z2.clone() * z3.clone()]
                .map(|v| sg.clone() * ckl.clone() * v),
            [z3.clone() * z4.clone(), zero.clone(), z1.clone() * z4.clone(), z1.clone() * z3.clone()]
                .map(|v| -(sg.clone() * cl.clone() * v)),
            [z2.clone() * z4.clone(), z1.clone() * z4, zero.clone(), z1 * z2].map(|v| -(sg.clone() * ck.clone() * v)),
        ];
        let lin: [[i64; 4]; 3] = [[1, -1, -1, 0], [-1, 1, -1, 0], [-1, -1, 1, 0]];
        let mut out: [[T; 8]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
        for i in 0..3 {
            out[i][i] = T::one();
            for c in 0..4 {
                out[i][4 + c] = T::from_i64(lin[i][c]) + dw[i][c].clone();
            }
        }
        out[3][3] = T::one();
        for c in 0..4 {
            out[3][4 + c] = -(dw[0][c].clone() + dw[1][c].clone() + dw[2][c].clone());
        }
        out
    }

    /// Analytic Jacobian of the field; row i holds ∂V_i/∂(X₁..X₄, Z₁..Z₄).
    pub fn jacobian(&self, s: &PhaseState<T>) -> [[T; 8]; 8] {
        let st = self.scalar_terms(s);
        let g = st.g;
        let [x1, x2, x3, x4] = s.x.clone();
        let [z1, z2, z3, z4] = s.z.clone();
        let [a1, a2, a3] = self.a.clone();
        let zero = T::zero();
        let two = T::from_i64(2);
        let six = T::from_i64(6);
        let four = T::from_i64(4);
        let dg = [
            four.clone() * x1.clone(),
            four.clone() * x2.clone(),
            four * x3.clone(),
            two.clone() * x4.clone(),
        ];
        let xs = [x1.clone(), x2.clone(), x3.clone(), x4.clone()];
        let z4s = z4.square();

        // ∂ℛᵢ/∂Zⱼ.
        let dr: [[T; 4]; 4] = [
            [
                two.clone() * z1.clone(),
                six.clone() * z3.clone() - two.clone() * z2.clone() - two.clone() * a1.clone() * z2.clone() * z3.square() * z4s.clone(),
                six.clone() * z2.clone() - two.clone() * z3.clone() - two.clone() * a1.clone() * z2.square() * z3.clone() * z4s.clone(),
                -(two.clone() * a1.clone() * z2.square() * z3.square() * z4.clone()),
            ],
            [
                six.clone() * z3.clone() - two.clone() * z1.clone() - two.clone() * a2.clone() * z1.clone() * z3.square() * z4s.clone(),
                two.clone() * z2.clone(),
                six.clone() * z1.clone() - two.clone() * z3.clone() - two.clone() * a2.clone() * z1.square() * z3.clone() * z4s.clone(),
                -(two.clone() * a2.clone() * z1.square() * z3.square() * z4.clone()),
            ],
            [
                six.clone() * z2.clone() - two.clone() * z1.clone() - two.clone() * a3.clone() * z1.clone() * z2.square() * z4s.clone(),
                six * z1.clone() - two.clone() * z2.clone() - two.clone() * a3.clone() * z1.square() * z2.clone() * z4s.clone(),
                two.clone() * z3.clone(),
                -(two.clone() * a3.clone() * z1.square() * z2.square() * z4.clone()),
            ],
            [
                two.clone() * z1.clone() * z4s.clone() * (a2.clone() * z3.square() + a3.clone() * z2.square()),
                two.clone() * z2.clone() * z4s.clone() * (a1.clone() * z3.square() + a3.clone() * z1.square()),
                two.clone() * z3.clone() * z4s * (a1.clone() * z2.square() + a2.clone() * z1.square()),
                two * z4.clone() * (a1 * z2.square() * z3.square() + a2 * z1.square() * z3.square() + a3 * z1.square() * z2.square()),
            ],
        ];

        let mut j: [[T; 8]; 8] = std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
        for i in 0..4 {
            for c in 0..4 {
                let mut v = xs[i].clone() * dg[c].clone();
                if i == c {
                    v = v + g.clone() - T::one();
                }
                j[i][c] = v;
                j[i][4 + c] = dr[i][c].clone();
            }
        }
        // Z rows: Zᵢ (±𝒢 + eᵢ·X).
        let e: [[i64; 4]; 4] = [[1, -1, -1, 0], [-1, 1, -1, 0], [-1, -1, 1, 0], [0, 0, 0, 1]];
        let zs = [z1, z2, z3, z4];
        for i in 0..4 {
            let gsign = if i == 3 { -T::one() } else { T::one() };
            let mut lin = gsign.clone() * g.clone();
            for c in 0..4 {
                lin = lin + T::from_i64(e[i][c]) * xs[c].clone();
            }
            for c in 0..4 {
                j[4 + i][c] = zs[i].clone() * (gsign.clone() * dg[c].clone() + T::from_i64(e[i][c]));
            }
            j[4 + i][4 + i] = lin;
        }
        j
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarTerms<T = f64> {
    pub g: T,
    pub r: [T; 4],
    pub rs: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintResiduals<T = f64> {
    pub hyperplane: T,
    pub conservation: T,
    pub f: [T; 4],
    pub h: [T; 4],
    pub zcons_plus: T,
    pub zcons_minus: T,
}

impl<T: Scalar> ConstraintResiduals<T> {
    pub fn spin(&self, chirality: Chirality) -> &[T; 4] {
        match chirality {
            Chirality::Plus => &self.f,
            Chirality::Minus => &self.h,
        }
    }

    pub fn zcons(&self, chirality: Chirality) -> &T {
        match chirality {
            Chirality::Plus => &self.zcons_plus,
            Chirality::Minus => &self.zcons_minus,
        }
    }
}

pub fn scalar_terms<T: Scalar>(p: &AWParams, s: &PhaseState<T>) -> ScalarTerms<T> {
    Coeffs::new(p).scalar_terms(s)
}

pub fn vector_field<T: Scalar>(p: &AWParams, s: &PhaseState<T>) -> PhaseState<T> {
    Coeffs::new(p).vector_field(s)
}

pub fn residuals<T: Scalar>(p: &AWParams, s: &PhaseState<T>) -> ConstraintResiduals<T> {
    Coeffs::new(p).residuals(s)
}

pub fn x_from_z<T: Scalar>(p: &AWParams, z: &[T; 4], chirality: Chirality) -> [T; 4] {
    Coeffs::new(p).x_from_z(z, chirality)
}

/// Float entry point that rejects non-finite input.
pub fn vector_field_checked(p: &AWParams, s: &PhaseState<f64>) -> Result<PhaseState<f64>> {
    s.check_finite()?;
    Ok(vector_field(p, s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SetId {
    CRF,
    CSpinPlus,
    CSpinMinus,
    CG2,
    SCheck,
    TkCheck,
    STilde,
    TTilde,
}

impl SetId {
    pub const ALL: [SetId; 8] = [
        SetId::CRF,
        SetId::CSpinPlus,
        SetId::CSpinMinus,
        SetId::CG2,
        SetId::SCheck,
        SetId::TkCheck,
        SetId::STilde,
        SetId::TTilde,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    /// residual = 0
    Eq,
    /// residual ≥ 0
    Ge,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub relation: Relation,
    pub residual: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub set: SetId,
    pub member: bool,
    pub conditions: Vec<Condition>,
}

impl MembershipReport {
    pub fn violated(&self) -> Vec<&Condition> {
        self.conditions.iter().filter(|c| !c.holds).collect()
    }
}

struct CondBuilder<'a, T> {
    tol: f64,
    out: &'a mut Vec<Condition>,
    _t: std::marker::PhantomData<T>,
}

impl<T: Scalar> CondBuilder<'_, T> {
    fn push(&mut self, name: &str, relation: Relation, v: T) {
        let holds = if T::is_exact() && self.tol == 0.0 {
            match relation {
                Relation::Eq => v.sign() == Ordering::Equal,
                Relation::Ge => v.sign() != Ordering::Less,
            }
        } else {
            let f = v.to_f64();
            match relation {
                Relation::Eq => f.abs() <= self.tol,
                Relation::Ge => f >= -self.tol,
            }
        };
        self.out.push(Condition { name: name.to_string(), relation, residual: v.to_f64(), holds });
    }

    fn push_with(&mut self, name: &str, relation: Relation, residual: f64, holds: bool) {
        self.out.push(Condition { name: name.to_string(), relation, residual, holds });
    }
}

/// Tests membership of `s` in a named set. Equalities must hold within `tol`,
/// inequalities within `-tol` slack. Exact scalar types with `tol = 0` are
/// decided exactly.
pub fn membership<T: Scalar>(p: &AWParams, s: &PhaseState<T>, set: SetId, tol: f64) -> Result<MembershipReport> {
    if matches!(set, SetId::STilde | SetId::TTilde) && (p.k, p.l) != (1, 1) {
        return Err(Error::InvalidSet(format!("{set:?} is only defined for (k,l) = (1,1), got {p}")));
    }
    let co = Coeffs::<T>::new(p);
    let res = co.residuals(s);
    let mut conditions = Vec::new();
    let mut b = CondBuilder::<T> { tol, out: &mut conditions, _t: Default::default() };
    let [x1, x2, x3, x4] = s.x.clone();
    let [z1, z2, z3, z4] = s.z.clone();

    let crf = |b: &mut CondBuilder<T>| {
        for (i, zi) in s.z.iter().enumerate() {
            b.push(&format!("Z{} >= 0", i + 1), Relation::Ge, zi.clone());
        }
        b.push("X4 >= 0", Relation::Ge, x4.clone());
        b.push("hyperplane", Relation::Eq, res.hyperplane.clone());
        b.push("conservation", Relation::Eq, res.conservation.clone());
    };
    let spin = |b: &mut CondBuilder<T>, ch: Chirality| {
        let (letter, r) = match ch {
            Chirality::Plus => ("F", &res.f),
            Chirality::Minus => ("H", &res.h),
        };
        for (i, v) in r.iter().enumerate() {
            b.push(&format!("{letter}{}", i + 1), Relation::Eq, v.clone());
        }
    };
    let z4_cap = |b: &mut CondBuilder<T>, order: i64| {
        let cap = T::from_rat(&rat(6 * p.delta, order));
        b.push(&format!("Z4 <= 6*delta/{order}"), Relation::Ge, cap - z4.clone());
    };

    match set {
        SetId::CRF => crf(&mut b),
        SetId::CSpinPlus => {
            crf(&mut b);
            spin(&mut b, Chirality::Plus);
        }
        SetId::CSpinMinus => {
            crf(&mut b);
            spin(&mut b, Chirality::Minus);
        }
        SetId::CG2 => {
            crf(&mut b);
            spin(&mut b, Chirality::Plus);
            spin(&mut b, Chirality::Minus);
        }
        SetId::SCheck => {
            crf(&mut b);
            spin(&mut b, Chirality::Plus);
            z4_cap(&mut b, p.k + p.l);
            b.push("Z2+Z3 <= 2/3", Relation::Ge, T::from_ratio(2, 3) - z2.clone() - z3.clone());
        }
        SetId::TkCheck => {
            crf(&mut b);
            spin(&mut b, Chirality::Minus);
            z4_cap(&mut b, p.k);
            b.push(
                "Z1+Z2+Z3 <= 2/3",
                Relation::Ge,
                T::from_ratio(2, 3) - z1.clone() - z2.clone() - z3.clone(),
            );
            b.push("Z1-Z2 >= 0", Relation::Ge, z1.clone() - z2.clone());
            b.push("Z2-Z3 >= 0", Relation::Ge, z2.clone() - z3.clone());
        }
        SetId::STilde => {
            crf(&mut b);
            spin(&mut b, Chirality::Plus);
            b.push("X2-X3", Relation::Eq, x2.clone() - x3.clone());
            b.push("Z2-Z3", Relation::Eq, z2.clone() - z3.clone());
            let prod = (z2.clone() * z3.clone()).to_f64();
            let value = prod.max(0.0).sqrt() * z4.to_f64() - 3.0;
            let holds = if T::is_exact() && tol == 0.0 {
                // √(Z₂Z₃)Z₄ ≤ 3 with Z₄ ≥ 0 is Z₂Z₃Z₄² ≤ 9.
                let poly = T::from_i64(9) - z2.clone() * z3.clone() * z4.square();
                z4.sign() == Ordering::Less || poly.sign() != Ordering::Less
            } else {
                value <= tol
            };
            b.push_with("sqrt(Z2*Z3)*Z4 - 3 <= 0", Relation::Ge, -value, holds);
        }
        SetId::TTilde => {
            crf(&mut b);
            spin(&mut b, Chirality::Minus);
            b.push("Z2+Z3-Z1 >= 0", Relation::Ge, z2.clone() + z3.clone() - z1.clone());
            b.push("Z2*Z4+Z3*Z4-6 <= 0", Relation::Ge, T::from_i64(6) - (z2.clone() + z3.clone()) * z4.clone());
        }
    }
    let _ = (x1, x2, x3);
    let member = conditions.iter().all(|c| c.holds);
    Ok(MembershipReport { set, member, conditions })
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport<T = f64> {
    /// X₄ − (2(Z₁+Z₂+Z₃) − 1)
    pub x4_identity: T,
    /// (X₁+X₂+X₃+X₄) − (Z₁+Z₂+Z₃)
    pub sum_identity: T,
}

pub fn identity_checks<T: Scalar>(_p: &AWParams, s: &PhaseState<T>) -> IdentityReport<T> {
    let [x1, x2, x3, x4] = s.x.clone();
    let [z1, z2, z3, _] = s.z.clone();
    let zsum = z1 + z2 + z3;
    IdentityReport {
        x4_identity: x4.clone() - (T::from_i64(2) * zsum.clone() - T::one()),
        sum_identity: x1 + x2 + x3 + x4 - zsum,
    }
}

/// Exact rational state from small integer ratios, `(num, den)` per entry.
pub fn rational_state(v: [(i64, i64); 8]) -> PhaseState<Rat> {
    PhaseState::from_array(v.map(|(n, d)| rat(n, d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aw_algebra::normalize;
    use crate::exact::rat_int;
    use num_traits::Zero;

    fn p0_kplusl(p: &AWParams) -> PhaseState<Rat> {
        let t = rat(1, 3);
        let z = rat(0, 1);
        PhaseState::new(
            [t.clone(), z.clone(), z.clone(), t.clone()],
            [z, t.clone(), t, rat(6 * p.delta, p.k + p.l)],
        )
    }

    fn p1() -> PhaseState<Rat> {
        let s = rat(1, 6);
        let z = rat(0, 1);
        PhaseState::new(
            [s.clone(), s.clone(), s.clone(), z.clone()],
            [s.clone(), s.clone(), s, z],
        )
    }

    #[test]
    fn scalar_terms_at_p1() {
        let p = normalize(3, 2).unwrap();
        let st = scalar_terms(&p, &p1());
        assert_eq!(st.g, rat(1, 6));
        assert_eq!(st.r, [rat(5, 36), rat(5, 36), rat(5, 36), rat_int(0)]);
        assert_eq!(st.rs, rat(5, 6));
    }

    #[test]
    fn scalar_terms_at_p0() {
        for (k, l) in [(1, 0), (1, 1), (3, 2), (17, 5)] {
            let p = normalize(k, l).unwrap();
            let st = scalar_terms(&p, &p0_kplusl(&p));
            assert_eq!(st.g, rat(1, 3));
            assert_eq!(st.r, [rat(2, 9), rat_int(0), rat_int(0), rat(2, 9)]);
            assert_eq!(st.rs, rat(2, 3));
        }
    }

    #[test]
    fn zero_z_gives_zero_curvature_terms() {
        let p = normalize(3, 2).unwrap();
        let s = PhaseState::new([0.3, -0.1, 0.7, 0.2], [0.0; 4]);
        let st = scalar_terms(&p, &s);
        assert_eq!(st.r, [0.0; 4]);
        assert_eq!(st.rs, 0.0);
    }

    #[test]
    fn field_vanishes_at_p0_and_p1() {
        let p = normalize(3, 2).unwrap();
        assert!(vector_field(&p, &p1()).is_zero());
        assert!(vector_field(&p, &p0_kplusl(&p)).is_zero());
    }

    #[test]
    fn field_vanishes_on_z_zero_sphere() {
        let p = normalize(3, 2).unwrap();
        // 2·(1/3)²·... chosen on 2Σx²+x₄² = 1: x = (1/2, 1/2, 0, 0).
        let s = rational_state([(1, 2), (1, 2), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)]);
        assert!(vector_field(&p, &s).is_zero());
    }

    #[test]
    fn spin_residuals_at_singular_points() {
        let p = normalize(3, 2).unwrap();
        let r = residuals(&p, &p0_kplusl(&p));
        assert!(r.f.iter().all(|v| v.is_zero()));
        let pk = rational_state([(0, 1), (0, 1), (1, 3), (1, 3), (1, 3), (1, 3), (0, 1), (6 * 19, 3)]);
        let r = residuals(&p, &pk);
        assert!(r.h.iter().all(|v| v.is_zero()));
        let r = residuals(&p, &p1());
        assert!(r.f.iter().chain(r.h.iter()).all(|v| v.is_zero()));
        assert!(r.conservation.is_zero());
    }

    #[test]
    fn x_from_z_reproduces_singular_points() {
        let p = normalize(3, 2).unwrap();
        let z = [rat(0, 1), rat(1, 3), rat(1, 3), rat(6 * 19, 5)];
        assert_eq!(x_from_z(&p, &z, Chirality::Plus), [rat(1, 3), rat(0, 1), rat(0, 1), rat(1, 3)]);
        let z = [rat(1, 3), rat(1, 3), rat(0, 1), rat(6 * 19, 3)];
        assert_eq!(x_from_z(&p, &z, Chirality::Minus), [rat(0, 1), rat(0, 1), rat(1, 3), rat(1, 3)]);
        let z = [rat(1, 6), rat(1, 6), rat(1, 6), rat(0, 1)];
        for ch in [Chirality::Plus, Chirality::Minus] {
            assert_eq!(x_from_z(&p, &z, ch), [rat(1, 6), rat(1, 6), rat(1, 6), rat(0, 1)]);
        }
    }

    #[test]
    fn membership_examples() {
        let p = normalize(3, 2).unwrap();
        assert!(membership(&p, &p1(), SetId::CG2, 0.0).unwrap().member);
        assert!(membership(&p, &p1(), SetId::CG2, 1e-12).unwrap().member);
        assert!(membership(&p, &p0_kplusl(&p), SetId::SCheck, 1e-12).unwrap().member);
        assert!(membership(&p, &p0_kplusl(&p), SetId::SCheck, 0.0).unwrap().member);
        let mut s = p1().to_f64();
        s.z[0] = -0.1;
        let rep = membership(&p, &s, SetId::CRF, 1e-12).unwrap();
        assert!(!rep.member);
        assert_eq!(rep.violated()[0].name, "Z1 >= 0");
        assert!(matches!(membership(&p, &s, SetId::STilde, 1e-9), Err(Error::InvalidSet(_))));
    }

    #[test]
    fn identities_hold_at_named_points() {
        let p = normalize(3, 2).unwrap();
        let r = identity_checks(&p, &p0_kplusl(&p));
        assert!(r.x4_identity.is_zero() && r.sum_identity.is_zero());
        let q = normalize(1, 1).unwrap();
        let ac1 = rational_state([(1, 7), (1, 7), (1, 7), (1, 7), (2, 7), (1, 7), (1, 7), (21, 1)]);
        let r = identity_checks(&q, &ac1);
        assert!(r.x4_identity.is_zero() && r.sum_identity.is_zero());
    }

    #[test]
    fn jacobian_at_p1_diagonal_entries() {
        let p = normalize(3, 2).unwrap();
        let j = Coeffs::<Rat>::new(&p).jacobian(&p1());
        assert_eq!(j[3][3], rat(-5, 6));
        assert_eq!(j[7][7], rat(-1, 6));
    }
}

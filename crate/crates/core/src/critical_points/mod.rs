//! The fixed-point catalog, linearizations, and the unstable frames used for shooting.

pub mod homogeneous;
pub mod tables;

use std::cmp::Ordering;

use nalgebra::{Complex, SMatrix};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::aw_algebra::{bundle, AWParams, BundleTag};
use crate::error::{Error, Result};
use crate::exact::{rat, rat_from_f64, rat_to_f64, QuadSurd, Rat, Scalar};
use crate::phase_system::{Chirality, Coeffs, PhaseState};

pub type Mat8 = SMatrix<f64, 8, 8>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CpLabel {
    /// Singular-orbit point of a bundle.
    P0(BundleTag),
    P1,
    /// ALC limits off P₁; `j` is the index of the largest Z.
    AlcB(u8),
    /// Conical limits, numbered in order of increasing Z₁.
    Ac(u8),
    G2Source(u8),
    G2Saddle(u8),
    CircleFamily,
    LineFamily,
}

impl CpLabel {
    pub fn name(&self) -> String {
        match self {
            CpLabel::P0(t) => format!("P0({})", t.name()),
            CpLabel::P1 => "P1".into(),
            CpLabel::AlcB(j) => format!("ALC_b{j}"),
            CpLabel::Ac(j) => format!("AC{j}"),
            CpLabel::G2Source(j) => format!("G2_source{j}"),
            CpLabel::G2Saddle(j) => format!("G2_saddle{j}"),
            CpLabel::CircleFamily => "circle_family".into(),
            CpLabel::LineFamily => "line_family".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Coords {
    Rational(PhaseState<Rat>),
    Surd(PhaseState<QuadSurd>),
    Numeric(PhaseState<f64>),
}

impl Coords {
    pub fn to_f64(&self) -> PhaseState<f64> {
        match self {
            Coords::Rational(s) => s.to_f64(),
            Coords::Surd(s) => s.to_f64(),
            Coords::Numeric(s) => s.clone(),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Coords::Numeric(_))
    }

    /// Coordinates as strings: exact forms where available.
    pub fn display(&self) -> [String; 8] {
        match self {
            Coords::Rational(s) => s.to_array().map(|v| crate::exact::rat_to_string(&v)),
            Coords::Surd(s) => s.to_array().map(|v| v.to_string()),
            Coords::Numeric(s) => s.to_array().map(|v| format!("{v:.15}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPoint {
    pub label: CpLabel,
    pub coords: Coords,
    pub family_param: Option<Vec<f64>>,
}

impl CriticalPoint {
    pub fn state(&self) -> PhaseState<f64> {
        self.coords.to_f64()
    }

    pub fn is_family(&self) -> bool {
        matches!(self.label, CpLabel::CircleFamily | CpLabel::LineFamily)
    }

    /// max-norm of the field at the point; exactly zero for exact coordinates that are fixed.
    pub fn field_residual(&self, p: &AWParams) -> f64 {
        match &self.coords {
            Coords::Rational(s) => Coeffs::<Rat>::new(p).vector_field(s).to_f64().max_norm(),
            Coords::Surd(s) => Coeffs::<QuadSurd>::new(p).vector_field(s).to_f64().max_norm(),
            Coords::Numeric(s) => Coeffs::<f64>::new(p).vector_field(s).max_norm(),
        }
    }

    /// True when the field vanishes in exact arithmetic.
    pub fn is_exact_fixed_point(&self, p: &AWParams) -> bool {
        match &self.coords {
            Coords::Rational(s) => Coeffs::<Rat>::new(p).vector_field(s).is_zero(),
            Coords::Surd(s) => Coeffs::<QuadSurd>::new(p).vector_field(s).is_zero(),
            Coords::Numeric(_) => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyDescription {
    pub label: CpLabel,
    pub description: String,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Catalog {
    pub points: Vec<CriticalPoint>,
    pub families: Vec<FamilyDescription>,
    pub notes: Vec<String>,
}

impl Catalog {
    pub fn find(&self, label: CpLabel) -> Option<&CriticalPoint> {
        self.points.iter().find(|c| c.label == label)
    }
}

fn rstate(v: [Rat; 8]) -> Coords {
    Coords::Rational(PhaseState::from_array(v))
}

/// P₀ of the given bundle; `None` when its Z₄ entry would divide by zero.
pub fn p0_point(p: &AWParams, tag: BundleTag) -> Option<PhaseState<Rat>> {
    let b = bundle(p, tag).ok()?;
    let t = rat(1, 3);
    let o = rat(0, 1);
    let z4 = rat(6 * p.delta, b.order);
    let v = match tag {
        BundleTag::KplusL => [t.clone(), o.clone(), o.clone(), t.clone(), o, t.clone(), t, z4],
        BundleTag::L => [o.clone(), t.clone(), o.clone(), t.clone(), t.clone(), o, t, z4],
        BundleTag::K => [o.clone(), o, t.clone(), t.clone(), t.clone(), t, rat(0, 1), z4],
    };
    Some(PhaseState::from_array(v))
}

pub fn p1_point() -> PhaseState<Rat> {
    let s = rat(1, 6);
    let o = rat(0, 1);
    PhaseState::new([s.clone(), s.clone(), s.clone(), o.clone()], [s.clone(), s.clone(), s, o])
}

/// Chirality whose Spin(7) set contains the bundle's P₀.
pub fn p0_chirality(tag: BundleTag) -> Chirality {
    match tag {
        BundleTag::KplusL => Chirality::Plus,
        BundleTag::K | BundleTag::L => Chirality::Minus,
    }
}

pub fn alc_b_points() -> Vec<CriticalPoint> {
    let big = || QuadSurd::surd(rat(1, 12), 10);
    let small = || QuadSurd::surd(rat(1, 24), 10);
    let r = |n, d| QuadSurd::rational(rat(n, d));
    (0..3)
        .map(|j| {
            let z: [QuadSurd; 3] = std::array::from_fn(|i| if i == j { big() } else { small() });
            let [z1, z2, z3] = z;
            let s = PhaseState::new([r(1, 6), r(1, 6), r(1, 6), r(0, 1)], [z1, z2, z3, r(0, 1)]);
            CriticalPoint { label: CpLabel::AlcB(j as u8 + 1), coords: Coords::Surd(s), family_param: None }
        })
        .collect()
}

/// G₂ sources: the unique fixed points with a single non-zero Zⱼ (j ≤ 3).
fn g2_sources() -> Vec<CriticalPoint> {
    (0..3)
        .map(|j| {
            let mut v: [Rat; 8] = std::array::from_fn(|_| rat(0, 1));
            for i in 0..3 {
                v[i] = if i == j { rat(-1, 2) } else { rat(1, 2) };
            }
            v[4 + j] = rat(1, 2);
            CriticalPoint { label: CpLabel::G2Source(j as u8 + 1), coords: rstate(v), family_param: None }
        })
        .collect()
}

fn g2_saddles() -> Vec<CriticalPoint> {
    (0..3)
        .map(|j| {
            let mut v: [Rat; 8] = std::array::from_fn(|_| rat(0, 1));
            v[j] = rat(1, 2);
            for i in 0..3 {
                if i != j {
                    v[4 + i] = rat(1, 4);
                }
            }
            CriticalPoint { label: CpLabel::G2Saddle(j as u8 + 1), coords: rstate(v), family_param: None }
        })
        .collect()
}

/// Best rational approximation with denominator at most `max_den`.
pub(crate) fn small_rational(x: f64, max_den: i64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a as f64;
        if frac.abs() < 1e-14 {
            break;
        }
        r = 1.0 / frac;
    }
    (k1 != 0).then(|| rat(h1, k1))
}

/// Conical points; coordinates are promoted to exact rationals when a
/// small-denominator guess is an exact fixed point.
pub fn conical_points(p: &AWParams) -> Result<Vec<CriticalPoint>> {
    let sols = homogeneous::solve(p)?;
    let co = Coeffs::<Rat>::new(p);
    Ok(sols
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let x = [1.0 / 7.0; 4];
            let guess: Option<Vec<Rat>> = z.iter().map(|&v| small_rational(v, 1000)).collect();
            let exact = guess.and_then(|g| {
                let s = PhaseState::new(
                    std::array::from_fn(|_| rat(1, 7)),
                    [g[0].clone(), g[1].clone(), g[2].clone(), g[3].clone()],
                );
                co.vector_field(&s).is_zero().then_some(s)
            });
            let coords = match exact {
                Some(s) => Coords::Rational(s),
                None => Coords::Numeric(PhaseState::new(x, *z)),
            };
            CriticalPoint { label: CpLabel::Ac(i as u8 + 1), coords, family_param: None }
        })
        .collect())
}

/// All isolated fixed points on the Ricci-flat constraint set plus the two families.
pub fn catalog(p: &AWParams) -> Result<Catalog> {
    let mut points = Vec::new();
    let mut notes = Vec::new();
    for tag in BundleTag::ALL {
        match p0_point(p, tag) {
            Some(s) => points.push(CriticalPoint { label: CpLabel::P0(tag), coords: Coords::Rational(s), family_param: None }),
            None => notes.push(format!("P0({}) omitted: bundle order is zero for {p}", tag.name())),
        }
    }
    points.push(CriticalPoint { label: CpLabel::P1, coords: Coords::Rational(p1_point()), family_param: None });
    points.extend(alc_b_points());
    match conical_points(p) {
        Ok(c) => points.extend(c),
        Err(e) => notes.push(format!("conical points unavailable: {e}")),
    }
    points.extend(g2_sources());
    points.extend(g2_saddles());
    let families = vec![
        FamilyDescription {
            label: CpLabel::CircleFamily,
            description: "Z = 0, 2X1+2X2+2X3+X4 = 1, 2X1^2+2X2^2+2X3^2+X4^2 = 1".into(),
            dimension: 2,
        },
        FamilyDescription {
            label: CpLabel::LineFamily,
            description: "X = (0,0,0,1), Z = (0,0,0,z4), z4 >= 0".into(),
            dimension: 1,
        },
    ];
    Ok(Catalog { points, families, notes })
}

/// Point of the Z = 0 family: the intersection of the hyperplane with the unit
/// sphere of 2X₁²+2X₂²+2X₃²+X₄², in spherical angles about its centre (1,1,1,1)/7.
pub fn circle_family_point(theta: f64, phi: f64) -> CriticalPoint {
    let r = (6.0f64 / 7.0).sqrt();
    let u1 = [0.5, -0.5, 0.0, 0.0];
    let u2 = [1.0, 1.0, -2.0, 0.0].map(|v: f64| v / 12f64.sqrt());
    let u3 = [1.0, 1.0, 1.0, -6.0].map(|v: f64| v / 42f64.sqrt());
    let (a, b, c) = (phi.sin() * theta.cos(), phi.sin() * theta.sin(), phi.cos());
    let x = std::array::from_fn(|i| 1.0 / 7.0 + r * (a * u1[i] + b * u2[i] + c * u3[i]));
    CriticalPoint {
        label: CpLabel::CircleFamily,
        coords: Coords::Numeric(PhaseState::new(x, [0.0; 4])),
        family_param: Some(vec![theta, phi]),
    }
}

pub fn line_family_point(z4: f64) -> Result<CriticalPoint> {
    if !(z4.is_finite() && z4 >= 0.0) {
        return Err(Error::InvalidRequest(format!("line family needs z4 >= 0, got {z4}")));
    }
    Ok(CriticalPoint {
        label: CpLabel::LineFamily,
        coords: Coords::Numeric(PhaseState::new([0.0, 0.0, 0.0, 1.0], [0.0, 0.0, 0.0, z4])),
        family_param: Some(vec![z4]),
    })
}

pub fn jacobian(p: &AWParams, s: &PhaseState<f64>) -> [[f64; 8]; 8] {
    Coeffs::<f64>::new(p).jacobian(s)
}

pub fn jacobian_exact(p: &AWParams, s: &PhaseState<Rat>) -> [[Rat; 8]; 8] {
    Coeffs::<Rat>::new(p).jacobian(s)
}

/// Central-difference Jacobian with step `h`.
pub fn jacobian_fd(p: &AWParams, s: &PhaseState<f64>, h: f64) -> [[f64; 8]; 8] {
    let co = Coeffs::<f64>::new(p);
    let base = s.to_array();
    let mut j = [[0.0; 8]; 8];
    for c in 0..8 {
        let mut hi = base;
        let mut lo = base;
        hi[c] += h;
        lo[c] -= h;
        let fh = co.vector_field(&PhaseState::from_array(hi)).to_array();
        let fl = co.vector_field(&PhaseState::from_array(lo)).to_array();
        for r in 0..8 {
            j[r][c] = (fh[r] - fl[r]) / (2.0 * h);
        }
    }
    j
}

pub fn to_matrix(j: &[[f64; 8]; 8]) -> Mat8 {
    Mat8::from_fn(|r, c| j[r][c])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eigenspace {
    pub value: f64,
    pub basis: Vec<[f64; 8]>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangencyFlags {
    pub ricci_flat: bool,
    pub spin_plus: bool,
    pub spin_minus: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenData {
    /// Clustered eigenvalues sorted by descending real part.
    pub eigenvalues: Vec<Eigenvalue>,
    /// Null spaces of ℒ − λI for the real clusters.
    pub eigenspaces: Vec<Eigenspace>,
    /// Unstable vectors tangent to the Ricci-flat set (conventional order at P₀).
    pub unstable_frame: Vec<[f64; 8]>,
    pub tangency_flags: Vec<TangencyFlags>,
    /// max ‖(ℒ − λI)v‖∞ over the conventional eigenvector basis, when one is known.
    pub table_residual: Option<f64>,
}

impl EigenData {
    /// Flattened spectrum with multiplicities, descending.
    pub fn spectrum(&self) -> Vec<f64> {
        self.eigenvalues.iter().flat_map(|e| std::iter::repeat(e.re).take(e.multiplicity)).collect()
    }
}

pub const CLUSTER_TOL: f64 = 1e-8;

/// Clustered spectrum of an 8×8 real matrix.
pub fn spectrum(m: &Mat8) -> Result<Vec<Eigenvalue>> {
    let ev: Vec<Complex<f64>> = m.complex_eigenvalues().iter().copied().collect();
    if ev.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::EigenFailure(format!("non-finite eigenvalues {ev:?}")));
    }
    let mut ev = ev;
    ev.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
    let mut out: Vec<(Complex<f64>, usize)> = Vec::new();
    for z in ev {
        match out.iter_mut().find(|(c, _)| (*c - z).norm() <= CLUSTER_TOL) {
            Some((c, n)) => {
                *c = (*c * *n as f64 + z) / (*n as f64 + 1.0);
                *n += 1;
            }
            None => out.push((z, 1)),
        }
    }
    Ok(out
        .into_iter()
        .map(|(z, n)| Eigenvalue { re: z.re, im: z.im, multiplicity: n })
        .collect())
}

/// Orthonormal basis of the numerical null space of ℒ − λI, at most `max_dim` vectors.
pub fn null_space(m: &Mat8, lambda: f64, max_dim: usize) -> Vec<[f64; 8]> {
    let shifted = m - Mat8::identity() * lambda;
    let scale = m.norm().max(1.0);
    let svd = shifted.svd(false, true);
    let Some(vt) = svd.v_t else { return Vec::new() };
    let mut idx: Vec<usize> = (0..8).collect();
    idx.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    idx.into_iter()
        .take(max_dim)
        .filter(|&i| svd.singular_values[i] <= 1e-6 * scale)
        .map(|i| std::array::from_fn(|c| vt[(i, c)]))
        .collect()
}

/// ‖(ℒ − λI)v‖∞.
pub fn eigen_residual(m: &Mat8, lambda: f64, v: &[f64; 8]) -> f64 {
    let vv = nalgebra::SVector::<f64, 8>::from_column_slice(v);
    let r = m * vv - vv * lambda;
    r.amax()
}

/// (ℒ − λI)v in exact arithmetic.
pub fn eigen_residual_exact(m: &[[Rat; 8]; 8], lambda: &Rat, v: &[Rat; 8]) -> [Rat; 8] {
    std::array::from_fn(|r| {
        let mv = (0..8).fold(Rat::zero(), |acc, c| acc + &m[r][c] * &v[c]);
        mv - lambda * &v[r]
    })
}

fn dot<T: Scalar>(a: &[T; 8], b: &[T; 8]) -> T {
    a.iter().zip(b.iter()).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn all_zero<T: Scalar>(vals: &[T], tol: f64) -> bool {
    if T::is_exact() {
        vals.iter().all(|v| v.sign() == Ordering::Equal)
    } else {
        vals.iter().all(|v| v.to_f64().abs() <= tol)
    }
}

/// Tangency of `v` at `s` to the Ricci-flat set and to each Spin(7) set,
/// decided by the pairing with the constraint gradients.
///
/// Exact scalar types decide exactly; floats compare against `tol` relative to ‖v‖∞.
pub fn tangency<T: Scalar>(p: &AWParams, s: &PhaseState<T>, v: &[T; 8], tol: f64) -> TangencyFlags {
    let co = Coeffs::<T>::new(p);
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.to_f64().abs())).max(1.0);
    let tol = tol * scale;
    let rf = [dot(&Coeffs::<T>::hyperplane_grad(), v), dot(&co.conservation_grad(s), v)];
    let ricci_flat = all_zero(&rf, tol);
    let spin = |ch| {
        let g = co.spin_grad(s, ch);
        let vals: Vec<T> = g.iter().map(|row| dot(row, v)).collect();
        ricci_flat && all_zero(&vals, tol)
    };
    TangencyFlags { ricci_flat, spin_plus: spin(Chirality::Plus), spin_minus: spin(Chirality::Minus) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrameConstraint {
    RicciFlat,
    SpinPlus,
    SpinMinus,
}

impl FrameConstraint {
    pub fn chirality(self) -> Option<Chirality> {
        match self {
            FrameConstraint::RicciFlat => None,
            FrameConstraint::SpinPlus => Some(Chirality::Plus),
            FrameConstraint::SpinMinus => Some(Chirality::Minus),
        }
    }
}

/// Exact, unnormalized frame at a P₀: three vectors for `RicciFlat`, two for a
/// Spin(7) constraint. Each returned vector is checked to be tangent.
pub fn unstable_frame_exact(p: &AWParams, tag: BundleTag, constraint: FrameConstraint) -> Result<Vec<[Rat; 8]>> {
    let s = p0_point(p, tag).ok_or_else(|| Error::InvalidBundle(format!("P0({}) does not exist for {p}", tag.name())))?;
    let frame = tables::p0_frame(p, tag);
    let n = match constraint.chirality() {
        None => 3,
        Some(ch) => {
            if ch != p0_chirality(tag) {
                return Err(Error::InvalidRequest(format!(
                    "P0({}) lies on the {:?} Spin(7) set, not {:?}",
                    tag.name(),
                    p0_chirality(tag),
                    ch
                )));
            }
            2
        }
    };
    let out: Vec<[Rat; 8]> = frame.into_iter().take(n).collect();
    for (i, v) in out.iter().enumerate() {
        let t = tangency(p, &s, v, 0.0);
        let ok = match constraint {
            FrameConstraint::RicciFlat => t.ricci_flat,
            FrameConstraint::SpinPlus => t.spin_plus,
            FrameConstraint::SpinMinus => t.spin_minus,
        };
        if !ok {
            return Err(Error::EigenFailure(format!("frame vector {} at P0({}) is not tangent to {constraint:?}", i + 1, tag.name())));
        }
    }
    Ok(out)
}

/// Float version of [`unstable_frame_exact`] for a catalog point.
pub fn unstable_frame(p: &AWParams, cp: &CriticalPoint, constraint: FrameConstraint) -> Result<Vec<[f64; 8]>> {
    let CpLabel::P0(tag) = cp.label else {
        return Err(Error::InvalidRequest(format!("unstable frames are defined at P0 points, not {}", cp.label.name())));
    };
    Ok(unstable_frame_exact(p, tag, constraint)?.iter().map(|v| v.clone().map(|x| rat_to_f64(&x))).collect())
}

/// The conventional eigenbasis and eigenvalues at P₀ or P₁, if the point has one.
pub fn conventional_basis(p: &AWParams, label: CpLabel) -> Option<(Vec<Rat>, Vec<[Rat; 8]>)> {
    match label {
        CpLabel::P0(tag) => {
            bundle(p, tag).ok()?;
            Some((tables::p0_values().to_vec(), tables::p0_vectors(p.k, p.l, tag).to_vec()))
        }
        CpLabel::P1 => Some((tables::p1_values().to_vec(), tables::p1_vectors().to_vec())),
        _ => None,
    }
}

/// Spectrum, eigenspaces, unstable frame and tangency flags at an isolated point.
pub fn eigen(p: &AWParams, cp: &CriticalPoint) -> Result<EigenData> {
    if cp.is_family() {
        return Err(Error::InvalidRequest("eigen-analysis is not performed on fixed-point families".into()));
    }
    let s = cp.state();
    s.check_finite()?;
    let m = to_matrix(&jacobian(p, &s));
    let eigenvalues = spectrum(&m)?;
    let eigenspaces: Vec<Eigenspace> = eigenvalues
        .iter()
        .filter(|e| e.im.abs() <= CLUSTER_TOL)
        .map(|e| Eigenspace { value: e.re, basis: null_space(&m, e.re, e.multiplicity) })
        .collect();

    let unstable_frame: Vec<[f64; 8]> = match cp.label {
        CpLabel::P0(_) => unstable_frame(p, cp, FrameConstraint::RicciFlat)?,
        _ => eigenspaces.iter().filter(|e| e.value > CLUSTER_TOL).flat_map(|e| e.basis.iter().copied()).collect(),
    };
    let tangency_flags = unstable_frame.iter().map(|v| tangency(p, &s, v, 1e-9)).collect();

    let table_residual = conventional_basis(p, cp.label).map(|(vals, vecs)| {
        vals.iter()
            .zip(vecs.iter())
            .map(|(l, v)| eigen_residual(&m, rat_to_f64(l), &v.clone().map(|x| rat_to_f64(&x))))
            .fold(0.0, f64::max)
    });
    if let Some(r) = table_residual {
        let scale = m.norm().max(1.0);
        if r > 1e-9 * scale {
            return Err(Error::EigenFailure(format!(
                "conventional eigenbasis at {} has residual {r:e}",
                cp.label.name()
            )));
        }
    }
    Ok(EigenData { eigenvalues, eigenspaces, unstable_frame, tangency_flags, table_residual })
}

/// The two conical fixed points, sorted by Z₁.
pub fn solve_homogeneous_einstein(p: &AWParams) -> Result<[CriticalPoint; 2]> {
    let pts = conical_points(p)?;
    let [a, b]: [CriticalPoint; 2] = pts.try_into().expect("solver returns exactly two points");
    Ok([a, b])
}

/// Exact rational state from floats, for feeding solver output to exact checks.
pub fn rationalize(s: &PhaseState<f64>) -> Option<PhaseState<Rat>> {
    let v: Option<Vec<Rat>> = s.to_array().iter().map(|&x| rat_from_f64(x)).collect();
    let v = v?;
    Some(PhaseState::from_array(std::array::from_fn(|i| v[i].clone())))
}

/// Largest |entry| of an exact matrix difference, as a float.
pub fn max_abs_diff(a: &[[Rat; 8]; 8], b: &[[Rat; 8]; 8]) -> f64 {
    let mut m = Rat::zero();
    for r in 0..8 {
        for c in 0..8 {
            let d = (&a[r][c] - &b[r][c]).abs();
            if d > m {
                m = d;
            }
        }
    }
    rat_to_f64(&m)
}

//! Closed-form linearization data at the singular-orbit points and at P₁.
//!
//! Formulas take raw integers `(k, l)` rather than [`AWParams`] because the
//! data at P₀^{(k)} and P₀^{(l)} is the data at P₀^{(k+l)} for a relabelled,
//! not necessarily normalized, parameter pair composed with an index swap.

use crate::aw_algebra::{AWParams, BundleTag};
use crate::exact::{rat, rat_int, Rat};

pub type RatVec = [Rat; 8];
pub type RatMat = [[Rat; 8]; 8];

fn delta(k: i64, l: i64) -> i64 {
    k * k + k * l + l * l
}

fn ints(v: [i64; 8]) -> RatVec {
    v.map(rat_int)
}

fn with_last(v: [i64; 7], last: Rat) -> RatVec {
    let mut out: RatVec = std::array::from_fn(|_| rat_int(0));
    for (o, x) in out.iter_mut().zip(v) {
        *o = rat_int(x);
    }
    out[7] = last;
    out
}

/// Swaps coordinate indices `i` and `j` (0-based among 1..3) in both the X and Z blocks.
pub fn swap_indices(v: &RatVec, i: usize, j: usize) -> RatVec {
    let mut out = v.clone();
    out.swap(i, j);
    out.swap(4 + i, 4 + j);
    out
}

/// Raw parameter pair and index swap carrying P₀^{(k+l)} data to the given bundle point.
///
/// The Ricci-flat field for `(k, l)` conjugated by the swap equals the field for
/// the returned pair, since only the squares `(k+l)², l², k²` enter it.
pub fn relabel(k: i64, l: i64, tag: BundleTag) -> (i64, i64, Option<(usize, usize)>) {
    match tag {
        BundleTag::KplusL => (k, l, None),
        BundleTag::K => (k + l, -l, Some((0, 2))),
        BundleTag::L => (-k, k + l, Some((0, 1))),
    }
}

/// Eigenvectors at P₀^{(k+l)}: four for 2/3, two for −2/3, two for −4/3.
pub fn p0_kplusl_vectors(k: i64, l: i64) -> [RatVec; 8] {
    let d = delta(k, l);
    let s = k + l;
    [
        with_last([2, 0, 0, -4, 0, -1, -1], rat(-36 * d, s)),
        ints([-3 * s, 4 * k + 5 * l, 5 * k + 4 * l, -12 * s, 3 * s, -5 * k - 4 * l, -4 * k - 5 * l, 0]),
        ints([0, 1, -1, 0, 0, 1, -1, 0]),
        ints([0, 3, 3, 0, 2, 0, 0, 0]),
        with_last([4, -3, -3, 4, 0, -2, -2], rat(36 * d, s)),
        ints([0, 1, 1, 0, 0, 0, 0, 0]),
        ints([0, 2, -2, 0, 0, -1, 1, 0]),
        with_last([2, -1, 1, -4, 0, 1, 0], rat(18 * d, s)),
    ]
}

/// Eigenvalues paired with [`p0_kplusl_vectors`]; the same at every P₀.
pub fn p0_values() -> [Rat; 8] {
    [rat(2, 3), rat(2, 3), rat(2, 3), rat(2, 3), rat(-2, 3), rat(-2, 3), rat(-4, 3), rat(-4, 3)]
}

/// Eigenvectors at any P₀, obtained from the P₀^{(k+l)} basis by relabelling.
pub fn p0_vectors(k: i64, l: i64, tag: BundleTag) -> [RatVec; 8] {
    let (kk, ll, swap) = relabel(k, l, tag);
    let base = p0_kplusl_vectors(kk, ll);
    match swap {
        None => base,
        Some((i, j)) => base.map(|v| swap_indices(&v, i, j)),
    }
}

/// The conventional basis at P₀^{(k)} as it is usually listed.
///
/// Entries 4 and 8 of this listing fail the eigenvector equation; the
/// corrected vectors are `(3,3,0,0,0,0,2,0)` and `(−1,1,2,−4,1,0,0,18Δ/k)`.
/// [`p0_k_vectors`] returns the corrected basis.
pub fn p0_k_listed_vectors(k: i64, l: i64) -> [RatVec; 8] {
    let d = delta(k, l);
    [
        with_last([0, 0, 2, -4, -1, -1, 0], rat(-36 * d, k)),
        ints([5 * k + l, 4 * k - l, -3 * k, -12 * k, -4 * k + l, -5 * k - l, 3 * k, 0]),
        ints([-1, 1, 0, 0, -1, 1, 0, 0]),
        ints([3, 3, 0, 0, 0, 2, 0, 0]),
        with_last([0, 0, 2, 2, -1, -1, 0], rat(18 * d, k)),
        ints([1, 1, 0, 0, 0, 0, 0, 0]),
        ints([2, -2, 0, 0, -1, 1, 0, 0]),
        with_last([-1, 1, 2, -4, 2, 0, 0], rat(18 * d, k)),
    ]
}

/// [`p0_k_listed_vectors`] with entries 4 and 8 corrected.
pub fn p0_k_vectors(k: i64, l: i64) -> [RatVec; 8] {
    let d = delta(k, l);
    let mut v = p0_k_listed_vectors(k, l);
    v[3] = ints([3, 3, 0, 0, 0, 0, 2, 0]);
    v[7] = with_last([-1, 1, 2, -4, 1, 0, 0], rat(18 * d, k));
    v
}

pub fn p1_vectors() -> [RatVec; 8] {
    [
        ints([0, 0, 0, 0, 0, 0, 0, 1]),
        ints([2, -1, -1, 0, -4, 2, 2, 0]),
        ints([0, -1, 1, 0, 0, 2, -2, 0]),
        ints([0, 0, 0, 1, 0, 0, 0, 0]),
        ints([-5, -5, -5, 0, 1, 1, 1, 0]),
        ints([4, -2, -2, 0, -2, 1, 1, 0]),
        ints([0, 2, -2, 0, 0, -1, 1, 0]),
        ints([2, 2, 2, 0, 1, 1, 1, 0]),
    ]
}

pub fn p1_values() -> [Rat; 8] {
    [rat(-1, 6), rat(-1, 6), rat(-1, 6), rat(-5, 6), rat(-5, 6), rat(-2, 3), rat(-2, 3), rat(1, 3)]
}

fn mat(rows: [[(i64, i64); 8]; 8]) -> RatMat {
    rows.map(|r| r.map(|(n, d)| rat(n, d)))
}

/// Closed-form Jacobian at P₀^{(k+l)}.
pub fn p0_kplusl_jacobian(k: i64, l: i64) -> RatMat {
    let d = delta(k, l);
    let s = k + l;
    let z = (0, 1);
    let mut m = mat([
        [(-2, 9), z, z, (2, 9), z, z, z, z],
        [z, (-2, 3), z, z, (2, 1), (2, 3), (-2, 3), z],
        [z, z, (-2, 3), z, (2, 1), (-2, 3), (2, 3), z],
        [(4, 9), z, z, (-4, 9), z, (4, 3), (4, 3), z],
        [z, z, z, z, (2, 3), z, z, z],
        [(1, 9), (1, 3), (-1, 3), (2, 9), z, z, z, z],
        [(1, 9), (-1, 3), (1, 3), (2, 9), z, z, z, z],
        [z, z, z, z, z, z, z, z],
    ]);
    m[0][7] = rat(-2 * s, 27 * d);
    m[3][7] = rat(2 * s, 27 * d);
    m[7][0] = rat(-8 * d, s);
    m[7][3] = rat(2 * d, s);
    m
}

/// Closed-form Jacobian at P₀^{(k)}.
pub fn p0_k_jacobian(k: i64, l: i64) -> RatMat {
    let d = delta(k, l);
    let z = (0, 1);
    let mut m = mat([
        [(-2, 3), z, z, z, (2, 3), (-2, 3), (2, 1), z],
        [z, (-2, 3), z, z, (-2, 3), (2, 3), (2, 1), z],
        [z, z, (-2, 9), (2, 9), z, z, z, z],
        [z, z, (4, 9), (-4, 9), (4, 3), (4, 3), z, z],
        [(1, 3), (-1, 3), (1, 9), (2, 9), z, z, z, z],
        [(-1, 3), (1, 3), (1, 9), (2, 9), z, z, z, z],
        [z, z, z, z, z, z, (2, 3), z],
        [z, z, z, z, z, z, z, z],
    ]);
    m[2][7] = rat(-2 * k, 27 * d);
    m[3][7] = rat(2 * k, 27 * d);
    m[7][2] = rat(-8 * d, k);
    m[7][3] = rat(2 * d, k);
    m
}

/// Jacobian at P₁; independent of `(k, l)`.
pub fn p1_jacobian() -> RatMat {
    let z = (0, 1);
    mat([
        [(-13, 18), (1, 9), (1, 9), z, (1, 3), (2, 3), (2, 3), z],
        [(1, 9), (-13, 18), (1, 9), z, (2, 3), (1, 3), (2, 3), z],
        [(1, 9), (1, 9), (-13, 18), z, (2, 3), (2, 3), (1, 3), z],
        [z, z, z, (-5, 6), z, z, z, z],
        [(5, 18), (-1, 18), (-1, 18), z, z, z, z, z],
        [(-1, 18), (5, 18), (-1, 18), z, z, z, z, z],
        [(-1, 18), (-1, 18), (5, 18), z, z, z, z, z],
        [z, z, z, z, z, z, z, (-1, 6)],
    ])
}

/// Frame indices (0-based into [`p0_vectors`]) tangent to the Ricci-flat
/// constraint set and, among them, to the matching Spin(7) set.
pub const RICCI_FLAT_FRAME: [usize; 3] = [0, 1, 2];
pub const SPIN_FRAME: [usize; 2] = [0, 1];

/// Unnormalized frame vectors at the bundle's P₀ in the conventional order.
pub fn p0_frame(p: &AWParams, tag: BundleTag) -> [RatVec; 3] {
    let v = p0_vectors(p.k, p.l, tag);
    RICCI_FLAT_FRAME.map(|i| v[i].clone())
}

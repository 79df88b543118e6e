//! Certified non-negativity over boxes by Bernstein expansion and subdivision.

use num_integer::binomial;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{rat, rat_int, Rat};

use super::poly::RatPoly;

/// Axis-aligned box with exact endpoints. Open flags are informational: the
/// closed box is always certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatBox {
    pub lo: Vec<Rat>,
    pub hi: Vec<Rat>,
    pub open_lo: Vec<bool>,
    pub open_hi: Vec<bool>,
}

impl RatBox {
    pub fn closed(lo: Vec<Rat>, hi: Vec<Rat>) -> Result<Self> {
        let n = lo.len();
        Self::new(lo, hi, vec![false; n], vec![false; n])
    }

    pub fn new(lo: Vec<Rat>, hi: Vec<Rat>, open_lo: Vec<bool>, open_hi: Vec<bool>) -> Result<Self> {
        let n = lo.len();
        if hi.len() != n || open_lo.len() != n || open_hi.len() != n || n == 0 {
            return Err(Error::InvalidRequest("box bounds have mismatched dimensions".into()));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::InvalidRequest("box lower bound exceeds upper bound".into()));
        }
        Ok(Self { lo, hi, open_lo, open_hi })
    }

    /// `[0, 1]ⁿ`.
    pub fn unit(n: usize) -> Self {
        Self::closed(vec![rat_int(0); n], vec![rat_int(1); n]).expect("valid unit box")
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    fn width(&self, i: usize) -> Rat {
        &self.hi[i] - &self.lo[i]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exclusion {
    pub center: Vec<Rat>,
    pub radius: Rat,
}

impl Exclusion {
    pub fn new(center: Vec<Rat>, radius: Rat) -> Self {
        Self { center, radius }
    }

    /// Whether the whole box lies in the closed ball.
    fn contains(&self, b: &RatBox) -> bool {
        let mut far = Rat::zero();
        for i in 0..b.dim() {
            let a = (&b.lo[i] - &self.center[i]).abs();
            let c = (&b.hi[i] - &self.center[i]).abs();
            let m = if a > c { a } else { c };
            far += &m * &m;
        }
        far <= &self.radius * &self.radius
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CertStatus {
    NonNegative,
    CounterexampleFound { point: Vec<Rat>, value: Rat },
    Inconclusive { worst_box: RatBox, lower_bound: Rat },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub status: CertStatus,
    pub exclusions: Vec<Exclusion>,
    pub boxes_processed: usize,
    /// Boxes discharged because they lie inside an exclusion ball.
    pub boxes_excluded: usize,
    pub max_depth_reached: u32,
}

impl Certificate {
    pub fn is_nonnegative(&self) -> bool {
        self.status == CertStatus::NonNegative
    }

    pub fn to_json(&self) -> Value {
        let q = |r: &Rat| Value::String(format!("{}/{}", r.numer(), r.denom()));
        let qs = |v: &[Rat]| Value::Array(v.iter().map(q).collect());
        let status = match &self.status {
            CertStatus::NonNegative => "NonNegative",
            CertStatus::CounterexampleFound { .. } => "CounterexampleFound",
            CertStatus::Inconclusive { .. } => "Inconclusive",
        };
        let mut v = json!({
            "status": status,
            "exclusions": self.exclusions.iter().map(|e| json!({"center": qs(&e.center), "radius": q(&e.radius)})).collect::<Vec<_>>(),
            "boxes_processed": self.boxes_processed,
            "boxes_excluded": self.boxes_excluded,
            "max_depth_reached": self.max_depth_reached,
        });
        match &self.status {
            CertStatus::CounterexampleFound { point, value } => {
                v["counterexample"] = json!({"point": qs(point), "value": q(value)});
            }
            CertStatus::Inconclusive { worst_box, lower_bound } => {
                v["worst_box"] = json!({"lo": qs(&worst_box.lo), "hi": qs(&worst_box.hi), "lower_bound": q(lower_bound)});
            }
            CertStatus::NonNegative => {}
        }
        v
    }
}

/// Dense coefficient tensor, row-major, one axis per variable.
#[derive(Clone, Debug)]
struct Tensor {
    dims: Vec<usize>,
    data: Vec<Rat>,
}

impl Tensor {
    fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.dims.len()];
        for i in (0..self.dims.len().saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.dims[i + 1];
        }
        s
    }

    /// Starting offsets of all lines along `ax`.
    fn line_starts(&self, ax: usize) -> Vec<usize> {
        let st = self.strides();
        (0..self.data.len()).filter(|&o| (o / st[ax]) % self.dims[ax] == 0).collect()
    }

    fn map_lines(&mut self, ax: usize, f: impl Fn(&[Rat]) -> Vec<Rat>) {
        let st = self.strides()[ax];
        let n = self.dims[ax];
        for start in self.line_starts(ax) {
            let line: Vec<Rat> = (0..n).map(|i| self.data[start + i * st].clone()).collect();
            for (i, v) in f(&line).into_iter().enumerate() {
                self.data[start + i * st] = v;
            }
        }
    }

    fn min(&self) -> &Rat {
        self.data.iter().min().expect("non-empty tensor")
    }
}

/// Bernstein coefficients of `f` over `b`.
fn bernstein(f: &RatPoly, b: &RatBox) -> Tensor {
    let n = f.nvars();
    let vars: Vec<&str> = f.variables().iter().map(String::as_str).collect();
    let subs: Vec<RatPoly> = (0..n)
        .map(|i| &RatPoly::constant(&vars, b.lo[i].clone()) + &RatPoly::var(&vars, i).scale(&b.width(i)))
        .collect();
    let g = f.compose(&subs);
    let dims: Vec<usize> = (0..n).map(|i| g.degree_in(i).max(f.degree_in(i)) as usize + 1).collect();
    let mut t = Tensor { data: vec![Rat::zero(); dims.iter().product()], dims };
    let st = t.strides();
    for (m, c) in g.terms() {
        let off: usize = m.0.iter().zip(&st).map(|(&e, s)| e as usize * s).sum();
        t.data[off] = c.clone();
    }
    for ax in 0..n {
        let deg = t.dims[ax] - 1;
        t.map_lines(ax, |a| {
            (0..=deg)
                .map(|i| {
                    (0..=i).fold(Rat::zero(), |acc, j| acc + &a[j] * rat(binomial(i, j) as i64, binomial(deg, j) as i64))
                })
                .collect()
        });
    }
    t
}

/// Splits the Bernstein tensor at the midpoint of axis `ax`.
fn split(t: &Tensor, ax: usize) -> (Tensor, Tensor) {
    let half = rat(1, 2);
    let mut left = t.clone();
    let mut right = t.clone();
    let casteljau = |a: &[Rat]| {
        let n = a.len();
        let mut cur = a.to_vec();
        let mut l = vec![cur[0].clone()];
        let mut r = vec![cur[n - 1].clone()];
        for _ in 1..n {
            cur = cur.windows(2).map(|w| (&w[0] + &w[1]) * &half).collect();
            l.push(cur[0].clone());
            r.push(cur[cur.len() - 1].clone());
        }
        r.reverse();
        (l, r)
    };
    left.map_lines(ax, |a| casteljau(a).0);
    right.map_lines(ax, |a| casteljau(a).1);
    (left, right)
}

/// Box vertices paired with their Bernstein coefficient, which equals the
/// exact value of the polynomial there.
fn vertices(t: &Tensor, b: &RatBox) -> Vec<(Vec<Rat>, Rat)> {
    let n = t.dims.len();
    let st = t.strides();
    (0..(1usize << n))
        .map(|mask| {
            let mut off = 0;
            let mut pt = Vec::with_capacity(n);
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    off += (t.dims[i] - 1) * st[i];
                    pt.push(b.hi[i].clone());
                } else {
                    pt.push(b.lo[i].clone());
                }
            }
            (pt, t.data[off].clone())
        })
        .collect()
}

enum Step {
    Done,
    Excluded,
    Negative(Vec<Rat>, Rat),
    Split([(RatBox, Tensor); 2]),
    Exhausted(RatBox, Rat),
}

const MAX_BOXES: usize = 1 << 22;

/// Branch-and-bound proof that `f ≥ 0` on `b` outside the exclusion balls.
pub fn certify_nonneg(f: &RatPoly, b: &RatBox, exclusions: &[Exclusion], max_depth: u32) -> Result<Certificate> {
    if f.nvars() != b.dim() {
        return Err(Error::InvalidRequest(format!("polynomial has {} variables, box has {}", f.nvars(), b.dim())));
    }
    if exclusions.iter().any(|e| e.center.len() != b.dim() || e.radius.is_negative()) {
        return Err(Error::InvalidRequest("exclusion ball does not match the box".into()));
    }
    let step = |bx: &RatBox, t: &Tensor, depth: u32| -> Step {
        let lower = t.min();
        if !lower.is_negative() {
            return Step::Done;
        }
        if let Some((pt, v)) = vertices(t, bx).into_iter().find(|(_, v)| v.is_negative()) {
            return Step::Negative(pt, v);
        }
        if exclusions.iter().any(|e| e.contains(bx)) {
            return Step::Excluded;
        }
        if depth >= max_depth {
            return Step::Exhausted(bx.clone(), lower.clone());
        }
        let ax = (0..bx.dim()).max_by(|&i, &j| bx.width(i).cmp(&bx.width(j)).then(j.cmp(&i))).expect("non-empty box");
        let mid = (&bx.lo[ax] + &bx.hi[ax]) * rat(1, 2);
        let (tl, tr) = split(t, ax);
        let mut bl = bx.clone();
        bl.hi[ax] = mid.clone();
        let mut br = bx.clone();
        br.lo[ax] = mid;
        Step::Split([(bl, tl), (br, tr)])
    };

    let mut level = vec![(b.clone(), bernstein(f, b))];
    let (mut processed, mut excluded, mut depth) = (0usize, 0usize, 0u32);
    let mut worst: Option<(RatBox, Rat)> = None;
    let finish = |status, processed, excluded, depth| Certificate {
        status,
        exclusions: exclusions.to_vec(),
        boxes_processed: processed,
        boxes_excluded: excluded,
        max_depth_reached: depth,
    };
    while !level.is_empty() {
        let steps: Vec<Step> = level.par_iter().map(|(bx, t)| step(bx, t, depth)).collect();
        processed += steps.len();
        let mut next = Vec::new();
        for s in steps {
            match s {
                Step::Done => {}
                Step::Excluded => excluded += 1,
                Step::Negative(point, value) => {
                    debug_assert_eq!(f.eval(&point), value);
                    return Ok(finish(CertStatus::CounterexampleFound { point, value }, processed, excluded, depth));
                }
                Step::Split(children) => next.extend(children),
                Step::Exhausted(bx, lb) => {
                    if worst.as_ref().is_none_or(|(_, w)| lb < *w) {
                        worst = Some((bx, lb));
                    }
                }
            }
        }
        if processed + next.len() > MAX_BOXES {
            let (bx, lb) = next
                .iter()
                .map(|(bx, t)| (bx.clone(), t.min().clone()))
                .min_by(|a, b| a.1.cmp(&b.1))
                .expect("non-empty level");
            worst = Some((bx, lb));
            next.clear();
        }
        if !next.is_empty() {
            depth += 1;
        }
        level = next;
    }
    let status = match worst {
        None => CertStatus::NonNegative,
        Some((worst_box, lower_bound)) => CertStatus::Inconclusive { worst_box, lower_bound },
    };
    Ok(finish(status, processed, excluded, depth))
}

pub const DEFAULT_MAX_DEPTH: u32 = 40;

/// Default exclusion radius around proven zeros.
pub fn default_radius() -> Rat {
    rat(1, 100)
}

pub fn ball(center: &[Rat]) -> Exclusion {
    Exclusion::new(center.to_vec(), default_radius())
}

//! Parameters of the Aloff–Wallach spaces and the three ℝ⁴/ℤ_|i| bundles over ℂP².

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat, Rat};

/// Normalized coprime pair with `k ≥ l ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AWParams {
    pub k: i64,
    pub l: i64,
    pub delta: i64,
}

impl AWParams {
    /// `l/k`.
    pub fn rho(&self) -> Rat {
        rat(self.l, self.k)
    }
}

impl fmt::Display for AWParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

/// The twelve images of `(a, b)` under permutations and a global sign flip of
/// the zero-sum triple `(a, b, −a−b)`, projected to their first two entries.
pub fn orbit(a: i64, b: i64) -> Vec<(i64, i64)> {
    let t = [a, b, -a - b];
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(12);
    for sign in [1, -1] {
        for p in PERMS {
            out.push((sign * t[p[0]], sign * t[p[1]]));
        }
    }
    out
}

pub fn normalize(k_raw: i64, l_raw: i64) -> Result<AWParams> {
    if k_raw == 0 && l_raw == 0 {
        return Err(Error::InvalidParameters("(k, l) = (0, 0)".into()));
    }
    let (k, l) = orbit(k_raw, l_raw)
        .into_iter()
        .find(|&(k, l)| k >= l && l >= 0)
        .expect("every zero-sum triple has a representative with k >= l >= 0");
    let g = k.gcd(&l);
    let (k, l) = (k / g, l / g);
    Ok(AWParams { k, l, delta: k * k + k * l + l * l })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceClass {
    Generic,
    Exceptional10,
    Exceptional11,
}

pub fn classify_space(p: &AWParams) -> SpaceClass {
    match (p.k, p.l) {
        (1, 0) => SpaceClass::Exceptional10,
        (1, 1) => SpaceClass::Exceptional11,
        _ => SpaceClass::Generic,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BundleTag {
    KplusL,
    K,
    L,
}

impl BundleTag {
    pub const ALL: [BundleTag; 3] = [BundleTag::KplusL, BundleTag::K, BundleTag::L];

    pub fn name(&self) -> &'static str {
        match self {
            BundleTag::KplusL => "k+l",
            BundleTag::K => "k",
            BundleTag::L => "l",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "k+l" | "kplusl" | "kl" => Ok(BundleTag::KplusL),
            "k" => Ok(BundleTag::K),
            "l" => Ok(BundleTag::L),
            other => Err(Error::InvalidBundle(format!("unknown bundle {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleIndex {
    pub tag: BundleTag,
    pub order: i64,
}

pub fn bundle(p: &AWParams, tag: BundleTag) -> Result<BundleIndex> {
    let order = match tag {
        BundleTag::KplusL => p.k + p.l,
        BundleTag::K => p.k,
        BundleTag::L => p.l,
    };
    if order <= 0 {
        return Err(Error::InvalidBundle(format!(
            "bundle {} has zero order for {p}",
            tag.name()
        )));
    }
    Ok(BundleIndex { tag, order })
}

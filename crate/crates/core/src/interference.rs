//! Instantaneous cross-link interference and its long-term reference value.
//!
//! A downlink victim (`z_n = 1`) is hit by neighbor base stations in downlink
//! and, scaled by `c1`, by neighbor users in uplink. An uplink victim
//! (`z_n = 0`) is hit by neighbor base stations in downlink, scaled by `c2`,
//! and by neighbor users in uplink. Only co-block users interfere.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::power::{PowerAllocation, PowerBudget};
use crate::topology::{ChannelSet, ChannelStats, Deployment};

/// Cross-interference management factors: 0 is perfect suppression, 1 none.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterferenceParams {
    /// Uplink-to-downlink factor (user-to-user gains).
    pub c1: f64,
    /// Downlink-to-uplink factor (base-to-base gains).
    pub c2: f64,
}

impl InterferenceParams {
    pub fn new(c1: f64, c2: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&c1) || !(0.0..=1.0).contains(&c2) {
            return Err(Error::InvalidConfig(format!(
                "interference factors must lie in [0, 1], got c1={c1}, c2={c2}"
            )));
        }
        Ok(Self { c1, c2 })
    }

    pub fn symmetric(c: f64) -> Result<Self> {
        Self::new(c, c)
    }
}

/// Per-cell duplex modes for one slot; `true` is downlink.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<u8>", into = "Vec<u8>")]
pub struct ModeVector(Vec<bool>);

impl ModeVector {
    pub fn new(modes: Vec<bool>) -> Self {
        Self(modes)
    }

    pub fn all_uplink(n: usize) -> Self {
        Self(vec![false; n])
    }

    pub fn all_downlink(n: usize) -> Self {
        Self(vec![true; n])
    }

    /// Profile with `z_n` taken from bit `n` of `index`.
    pub fn from_index(index: usize, n: usize) -> Self {
        Self((0..n).map(|b| index >> b & 1 == 1).collect())
    }

    /// Inverse of [`ModeVector::from_index`].
    pub fn index(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (b, &dl)| acc | (usize::from(dl) << b))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_downlink(&self, n: usize) -> bool {
        self.0[n]
    }

    /// `z_n` as 0.0 / 1.0.
    pub fn z(&self, n: usize) -> f64 {
        if self.0[n] {
            1.0
        } else {
            0.0
        }
    }

    pub fn set(&mut self, n: usize, downlink: bool) {
        self.0[n] = downlink;
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }
}

impl From<Vec<u8>> for ModeVector {
    fn from(v: Vec<u8>) -> Self {
        Self(v.into_iter().map(|b| b != 0).collect())
    }
}

impl From<ModeVector> for Vec<u8> {
    fn from(m: ModeVector) -> Self {
        m.0.into_iter().map(u8::from).collect()
    }
}

impl fmt::Display for ModeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &dl in &self.0 {
            f.write_str(if dl { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Interference on user `k` of cell `n` caused by cell `m`.
#[allow(clippy::too_many_arguments)]
pub fn pairwise_interference(
    n: usize,
    k: usize,
    m: usize,
    z: &ModeVector,
    p: &PowerAllocation,
    ch: &ChannelSet,
    params: &InterferenceParams,
    dep: &Deployment,
) -> Result<f64> {
    if m == n {
        return Err(Error::SelfInterferencePair(n));
    }
    Ok(pair_term(n, k, m, z, p, ch, params, dep))
}

#[allow(clippy::too_many_arguments)]
#[inline]
fn pair_term(
    n: usize,
    k: usize,
    m: usize,
    z: &ModeVector,
    p: &PowerAllocation,
    ch: &ChannelSet,
    params: &InterferenceParams,
    dep: &Deployment,
) -> f64 {
    let j = dep.co_block_user(m, k);
    let pj = p.p[j];
    match (z.is_downlink(n), z.is_downlink(m)) {
        (true, true) => ch.h[(m, k)] * pj,
        (true, false) => params.c1 * ch.u[(j, k)] * pj,
        (false, true) => params.c2 * ch.b[(m, n)] * pj,
        (false, false) => ch.h[(n, j)] * pj,
    }
}

/// Sum of [`pairwise_interference`] over all other cells.
pub fn total_interference(
    n: usize,
    k: usize,
    z: &ModeVector,
    p: &PowerAllocation,
    ch: &ChannelSet,
    params: &InterferenceParams,
    dep: &Deployment,
) -> f64 {
    (0..dep.num_cells())
        .filter(|&m| m != n)
        .map(|m| pair_term(n, k, m, z, p, ch, params, dep))
        .sum()
}

/// Average interference per ordered cell pair, tabulated for every
/// combination of victim and interferer mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceInterference {
    num_cells: usize,
    /// `entries[n * N + m][z_n][z_m]`; the diagonal pairs are zero.
    entries: Vec<[[f64; 2]; 2]>,
}

impl ReferenceInterference {
    pub fn zeros(num_cells: usize) -> Self {
        Self {
            num_cells,
            entries: vec![[[0.0; 2]; 2]; num_cells * num_cells],
        }
    }

    pub fn num_cells(&self) -> usize {
        self.num_cells
    }

    /// Interference suffered by cell `n` from cell `m`.
    pub fn get(&self, n: usize, m: usize, victim_dl: bool, interferer_dl: bool) -> f64 {
        self.entries[n * self.num_cells + m][usize::from(victim_dl)][usize::from(interferer_dl)]
    }

    pub fn set(&mut self, n: usize, m: usize, victim_dl: bool, interferer_dl: bool, value: f64) {
        self.entries[n * self.num_cells + m][usize::from(victim_dl)][usize::from(interferer_dl)] =
            value;
    }
}

/// Reference interference under nominal powers: `alpha1 / K` per downlink
/// user and `alpha0` per uplink user.
pub fn reference_interference(
    stats: &ChannelStats,
    params: &InterferenceParams,
    budget: &PowerBudget,
    users_per_cell: usize,
) -> ReferenceInterference {
    let n_cells = stats.mean_h.rows();
    let dl_power = budget.alpha1 / users_per_cell as f64;
    let ul_power = budget.alpha0;
    let mut out = ReferenceInterference::zeros(n_cells);
    for n in 0..n_cells {
        for m in (0..n_cells).filter(|&m| m != n) {
            out.set(n, m, true, true, dl_power * stats.mean_h[(m, n)]);
            out.set(n, m, true, false, params.c1 * stats.mean_u[(m, n)] * ul_power);
            out.set(n, m, false, true, dl_power * params.c2 * stats.mean_b[(m, n)]);
            out.set(n, m, false, false, stats.mean_h[(n, m)] * ul_power);
        }
    }
    out
}

/// Reference interference power `J_n(z)` of cell `n`.
pub fn aggregate_reference(n: usize, z: &ModeVector, reference: &ReferenceInterference) -> f64 {
    let victim = z.is_downlink(n);
    (0..reference.num_cells())
        .filter(|&m| m != n)
        .map(|m| reference.get(n, m, victim, z.is_downlink(m)))
        .sum()
}

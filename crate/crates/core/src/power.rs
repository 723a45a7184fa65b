//! Greedy per-cell power allocation.
//!
//! Uplink users transmit at full power `alpha0`. A downlink cell splits its
//! sum budget `alpha1` by weighted water-filling, treating the reference
//! interference `J_n(z)` as part of the noise floor:
//!
//! ```text
//! p_k = (w_k / lambda - (sigma^2 + J_n) / H_{n,k})^+
//! ```
//!
//! with one multiplier `lambda` per cell chosen so that the budget is spent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inputs::FrameInputs;
use crate::interference::{aggregate_reference, ModeVector};

/// Stop bisecting once the spent budget is this close (relative) to `alpha1`.
pub const BUDGET_TOLERANCE: f64 = 1e-10;

const MAX_BISECTIONS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerBudget {
    /// Per-user uplink power limit, W.
    pub alpha0: f64,
    /// Per-cell downlink sum power, W.
    pub alpha1: f64,
    /// Noise power, W.
    pub sigma2: f64,
}

impl PowerBudget {
    pub fn new(alpha0: f64, alpha1: f64, sigma2: f64) -> Result<Self> {
        if !(alpha0 > 0.0 && alpha1 > 0.0 && sigma2 > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "power budget must be positive: alpha0={alpha0}, alpha1={alpha1}, sigma2={sigma2}"
            )));
        }
        Ok(Self {
            alpha0,
            alpha1,
            sigma2,
        })
    }
}

/// Rate weights per user and mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightSet {
    pub uplink: Vec<f64>,
    pub downlink: Vec<f64>,
}

impl WeightSet {
    pub fn new(uplink: Vec<f64>, downlink: Vec<f64>) -> Result<Self> {
        if uplink.len() != downlink.len() {
            return Err(Error::InvalidConfig("weight vectors differ in length".into()));
        }
        if uplink.iter().chain(&downlink).any(|w| !(0.0..=1.0).contains(w)) {
            return Err(Error::InvalidConfig("weights must lie in [0, 1]".into()));
        }
        Ok(Self { uplink, downlink })
    }

    pub fn uniform(num_users: usize, w: f64) -> Self {
        Self {
            uplink: vec![w; num_users],
            downlink: vec![w; num_users],
        }
    }

    /// `w_k(z_n)`.
    #[inline]
    pub fn get(&self, user: usize, downlink: bool) -> f64 {
        if downlink {
            self.downlink[user]
        } else {
            self.uplink[user]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerAllocation {
    /// Transmit power to (downlink) or from (uplink) every user, W.
    pub p: Vec<f64>,
    /// Water-filling multiplier of each downlink cell that spent its budget.
    pub lambda: Vec<Option<f64>>,
}

/// Weighted water-filling of `budget` over users with per-user weights and
/// floors `levels = (sigma^2 + J) / H`.
///
/// Returns the powers and the multiplier, or `None` for the multiplier when
/// no user can take power (every weight zero or every level infinite).
pub fn water_fill(weights: &[f64], levels: &[f64], budget: f64) -> (Vec<f64>, Option<f64>) {
    debug_assert_eq!(weights.len(), levels.len());
    let eligible = |k: usize| weights[k] > 0.0 && levels[k].is_finite();
    let spend = |lambda: f64| -> f64 {
        (0..weights.len())
            .filter(|&k| eligible(k))
            .map(|k| (weights[k] / lambda - levels[k]).max(0.0))
            .sum()
    };

    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for k in (0..weights.len()).filter(|&k| eligible(k)) {
        lo = lo.min(weights[k] / (levels[k] + budget));
        hi = hi.max(weights[k] / levels[k]);
    }
    if !(hi > 0.0) {
        return (vec![0.0; weights.len()], None);
    }
    while spend(hi) > budget {
        hi *= 2.0;
    }

    // spend() is decreasing in lambda: spend(lo) >= budget >= spend(hi)
    let mut lambda = hi;
    for _ in 0..MAX_BISECTIONS {
        lambda = (lo * hi).sqrt();
        let s = spend(lambda);
        if ((s - budget) / budget).abs() <= BUDGET_TOLERANCE {
            break;
        }
        if s > budget {
            lo = lambda;
        } else {
            hi = lambda;
        }
    }

    let alloc = |lambda: f64| -> Vec<f64> {
        (0..weights.len())
            .map(|k| {
                if eligible(k) {
                    (weights[k] / lambda - levels[k]).max(0.0)
                } else {
                    0.0
                }
            })
            .collect()
    };

    // Closed form on the active set found by bisection.
    let p = alloc(lambda);
    let (w_sum, l_sum) = p
        .iter()
        .enumerate()
        .filter(|(_, &pk)| pk > 0.0)
        .fold((0.0, 0.0), |(w, l), (k, _)| (w + weights[k], l + levels[k]));
    if w_sum > 0.0 {
        let exact = w_sum / (budget + l_sum);
        let polished = alloc(exact);
        let same_support = polished
            .iter()
            .zip(&p)
            .all(|(a, b)| (*a > 0.0) == (*b > 0.0));
        if same_support {
            return (polished, Some(exact));
        }
    }
    (p, Some(lambda))
}

/// Decoupled power allocation for the mode profile `z`.
pub fn allocate_power(z: &ModeVector, inputs: &FrameInputs<'_>) -> PowerAllocation {
    let dep = inputs.dep;
    let budget = inputs.budget;
    let mut p = vec![0.0; dep.num_users()];
    let mut lambda = vec![None; dep.num_cells()];
    for n in 0..dep.num_cells() {
        let users = dep.cell_users(n);
        if !z.is_downlink(n) {
            for &k in users {
                p[k] = budget.alpha0;
            }
            continue;
        }
        let floor = budget.sigma2 + aggregate_reference(n, z, inputs.reference);
        let weights: Vec<f64> = users.iter().map(|&k| inputs.weights.downlink[k]).collect();
        let levels: Vec<f64> = users
            .iter()
            .map(|&k| {
                let g = inputs.ch.h[(n, k)];
                if g > 0.0 {
                    floor / g
                } else {
                    f64::INFINITY
                }
            })
            .collect();
        let (cell_p, cell_lambda) = water_fill(&weights, &levels, budget.alpha1);
        for (&k, pk) in users.iter().zip(cell_p) {
            p[k] = pk;
        }
        lambda[n] = cell_lambda;
    }
    PowerAllocation { p, lambda }
}

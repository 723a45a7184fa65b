//! Weighted sum-rates per cell and for the network, in bit/s/Hz per user block.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::inputs::FrameInputs;
use crate::interference::{aggregate_reference, total_interference, ModeVector};
use crate::power::PowerAllocation;

/// Interference model used to score a mode profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PayoffFlavor {
    /// Instantaneous interference from the full channel state.
    Sip,
    /// Reference interference `J_n(z)` from long-term channel means.
    App,
}

impl fmt::Display for PayoffFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PayoffFlavor::Sip => "SIP",
            PayoffFlavor::App => "APP",
        })
    }
}

impl FromStr for PayoffFlavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "sip" => Ok(PayoffFlavor::Sip),
            "app" => Ok(PayoffFlavor::App),
            other => Err(Error::InvalidConfig(format!("unknown payoff flavor {other:?}"))),
        }
    }
}

/// Weighted sum-rate of cell `n` under profile `z` and powers `p`.
pub fn wsr_cell(
    n: usize,
    z: &ModeVector,
    p: &PowerAllocation,
    inputs: &FrameInputs<'_>,
    flavor: PayoffFlavor,
) -> f64 {
    let dl = z.is_downlink(n);
    let noise = inputs.budget.sigma2;
    let reference = match flavor {
        PayoffFlavor::App => Some(aggregate_reference(n, z, inputs.reference)),
        PayoffFlavor::Sip => None,
    };
    inputs
        .dep
        .cell_users(n)
        .iter()
        .map(|&k| {
            let w = inputs.weights.get(k, dl);
            if w == 0.0 || p.p[k] == 0.0 {
                return 0.0;
            }
            let interference = reference.unwrap_or_else(|| {
                total_interference(n, k, z, p, inputs.ch, inputs.params, inputs.dep)
            });
            w * (1.0 + inputs.ch.h[(n, k)] * p.p[k] / (noise + interference)).log2()
        })
        .sum()
}

/// Network weighted sum-rate: the sum of [`wsr_cell`] over all cells.
pub fn wsr_network(
    z: &ModeVector,
    p: &PowerAllocation,
    inputs: &FrameInputs<'_>,
    flavor: PayoffFlavor,
) -> f64 {
    (0..inputs.num_cells())
        .map(|n| wsr_cell(n, z, p, inputs, flavor))
        .sum()
}

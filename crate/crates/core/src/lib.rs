//! Dynamic TDD mode scheduling for small-cell networks.
//!
//! Every cell picks uplink (`z_n = 0`) or downlink (`z_n = 1`) independently in
//! each slot, which creates cross-link interference between neighbors. This
//! crate decouples the joint problem into two stages:
//!
//! 1. a greedy per-cell power allocation ([`power`]): full power in uplink,
//!    weighted water-filling against the reference interference in downlink;
//! 2. a non-cooperative game among cells ([`game`]) whose mixed-strategy Nash
//!    equilibrium gives each cell its downlink probability for the frame.
//!
//! Two payoff models are supported: [`rate::PayoffFlavor::Sip`] scores mode
//! profiles with the instantaneous interference, [`rate::PayoffFlavor::App`]
//! with the long-term reference interference, which needs far less signaling.
//!
//! The [`baselines`] module holds the exhaustive optimum, static TDD and a
//! switching-point scheduler; [`harness`] runs frame-level Monte Carlo
//! experiments over the wrap-around hexagonal layout of [`topology`].

pub mod baselines;
pub mod error;
pub mod game;
pub mod harness;
pub mod inputs;
pub mod interference;
pub mod matrix;
pub mod power;
pub mod rate;
pub mod stats;
pub mod topology;

pub use error::{Error, Result};
pub use game::{
    build_payoff_table, expected_payoff, indifference_residual, sample_modes, signaling_overhead,
    solve_msne, EquilibriumReport, MixedStrategy, OverheadReport, PayoffTable, SolverOptions,
};
pub use inputs::FrameInputs;
pub use interference::{
    aggregate_reference, pairwise_interference, reference_interference, total_interference,
    InterferenceParams, ModeVector, ReferenceInterference,
};
pub use power::{allocate_power, PowerAllocation, PowerBudget, WeightSet};
pub use rate::{wsr_cell, wsr_network, PayoffFlavor};
pub use topology::{
    estimate_channel_stats, generate_channels, generate_deployment, wrapped_distance, ChannelSet,
    ChannelStats, Deployment, Point, TopologyConfig,
};

use crate::interference::{InterferenceParams, ReferenceInterference};
use crate::power::{PowerBudget, WeightSet};
use crate::topology::{ChannelSet, Deployment};

/// Everything that stays fixed over one frame: the user drop, its channel,
/// the rate weights and the slow-rate reference interference table.
#[derive(Debug, Clone, Copy)]
pub struct FrameInputs<'a> {
    pub dep: &'a Deployment,
    pub ch: &'a ChannelSet,
    pub reference: &'a ReferenceInterference,
    pub weights: &'a WeightSet,
    pub budget: &'a PowerBudget,
    pub params: &'a InterferenceParams,
}

impl FrameInputs<'_> {
    pub fn num_cells(&self) -> usize {
        self.dep.num_cells()
    }
}

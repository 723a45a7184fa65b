//! Reference schedulers: exhaustive per-slot optimum, static TDD and a
//! per-frame DL/UL switching point.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::PayoffTable;
use crate::interference::ModeVector;

/// Mode profiles for the slots of one frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameSchedule {
    pub slots: Vec<ModeVector>,
}

impl FrameSchedule {
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }
}

/// Profile maximizing the network payoff; ties go to the lexicographically
/// smallest `(z_1, ..., z_N)`.
pub fn opt_schedule(table: &PayoffTable) -> ModeVector {
    let cells = table.num_cells();
    let mut best: Option<(f64, ModeVector)> = None;
    for idx in 0..table.num_profiles() {
        let value = table.network_value(idx);
        let z = ModeVector::from_index(idx, cells);
        let replace = match &best {
            None => true,
            Some((bv, bz)) => value > *bv || (value == *bv && z.as_slice() < bz.as_slice()),
        };
        if replace {
            best = Some((value, z));
        }
    }
    best.map(|(_, z)| z).expect("a table has at least two profiles")
}

/// Static TDD: the first half of the frame is downlink everywhere, the
/// second half uplink.
pub fn stdd_schedule(cells: usize, slots_per_frame: usize) -> Result<FrameSchedule> {
    if slots_per_frame == 0 || !slots_per_frame.is_multiple_of(2) {
        return Err(Error::UnevenStaticSplit(slots_per_frame));
    }
    let half = slots_per_frame / 2;
    let slots = (0..slots_per_frame)
        .map(|t| {
            if t < half {
                ModeVector::all_downlink(cells)
            } else {
                ModeVector::all_uplink(cells)
            }
        })
        .collect();
    Ok(FrameSchedule { slots })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SwitchpointScope {
    /// Every cell picks its own switching point.
    #[default]
    PerCell,
    /// One switching point shared by the whole network.
    Global,
}

/// Number of fixed downlink slots at the head and uplink slots at the tail.
pub const FIXED_EDGE_SLOTS: usize = 2;

/// Smallest frame that leaves at least one flexible slot.
pub const MIN_SWITCHPOINT_FRAME: usize = 2 * FIXED_EDGE_SLOTS + 1;

/// Candidate switching points: slots `1..=s` are downlink.
pub fn switchpoint_candidates(slots_per_frame: usize) -> std::ops::RangeInclusive<usize> {
    FIXED_EDGE_SLOTS..=slots_per_frame - FIXED_EDGE_SLOTS
}

/// Midpoint used before any frame has been scheduled.
pub fn initial_switchpoints(cells: usize, slots_per_frame: usize) -> Vec<usize> {
    vec![slots_per_frame / 2; cells]
}

/// Builds the frame from per-cell switching points.
pub fn switchpoint_frame(points: &[usize], slots_per_frame: usize) -> FrameSchedule {
    let slots = (1..=slots_per_frame)
        .map(|t| ModeVector::new(points.iter().map(|&s| t <= s).collect()))
        .collect();
    FrameSchedule { slots }
}

/// Switching-point scheduler.
///
/// `payoff(n, z)` is the cell's approximated payoff for a profile. Per cell,
/// the switching point maximizing its frame-summed payoff is chosen with the
/// neighbors held at `previous` (their last-frame points); with the global
/// scope a single point maximizes the summed network payoff. Ties go to the
/// earliest point. Returns the frame and the chosen points.
pub fn switchpoint_schedule<F>(
    payoff: F,
    cells: usize,
    slots_per_frame: usize,
    previous: &[usize],
    scope: SwitchpointScope,
) -> Result<(FrameSchedule, Vec<usize>)>
where
    F: Fn(usize, &ModeVector) -> f64,
{
    if slots_per_frame < MIN_SWITCHPOINT_FRAME {
        return Err(Error::FrameTooShort(slots_per_frame));
    }
    if previous.len() != cells {
        return Err(Error::InvalidConfig("one previous switching point per cell".into()));
    }
    let pick = |score: &dyn Fn(usize) -> f64| -> usize {
        let mut best = (f64::NEG_INFINITY, FIXED_EDGE_SLOTS);
        for s in switchpoint_candidates(slots_per_frame) {
            let v = score(s);
            if v > best.0 {
                best = (v, s);
            }
        }
        best.1
    };
    let points = match scope {
        SwitchpointScope::PerCell => (0..cells)
            .map(|n| {
                pick(&|s| {
                    let mut pts = previous.to_vec();
                    pts[n] = s;
                    switchpoint_frame(&pts, slots_per_frame)
                        .slots
                        .iter()
                        .map(|z| payoff(n, z))
                        .sum()
                })
            })
            .collect(),
        SwitchpointScope::Global => {
            let s = pick(&|s| {
                switchpoint_frame(&vec![s; cells], slots_per_frame)
                    .slots
                    .iter()
                    .map(|z| (0..cells).map(|n| payoff(n, z)).sum::<f64>())
                    .sum()
            });
            vec![s; cells]
        }
    };
    Ok((switchpoint_frame(&points, slots_per_frame), points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rate::PayoffFlavor;

    #[test]
    fn opt_single_cell_and_ties() {
        let t = PayoffTable::from_values(1, PayoffFlavor::Sip, vec![2.0, 3.0]).unwrap();
        assert_eq!(opt_schedule(&t).as_slice(), &[true]);
        let flat = PayoffTable::from_fn(3, PayoffFlavor::Sip, |_, _| 1.0).unwrap();
        assert_eq!(opt_schedule(&flat), ModeVector::all_uplink(3));
    }

    #[test]
    fn opt_tie_is_lexicographic() {
        // profiles (1,0) and (0,1) both best; (0,1) is lexicographically smaller
        let t = PayoffTable::from_fn(2, PayoffFlavor::Sip, |n, z| {
            if z.is_downlink(0) != z.is_downlink(1) && n == 0 {
                5.0
            } else {
                0.0
            }
        })
        .unwrap();
        assert_eq!(opt_schedule(&t).as_slice(), &[false, true]);
    }

    #[test]
    fn stdd_patterns() {
        let s = stdd_schedule(3, 10).unwrap();
        assert_eq!(s.len(), 10);
        for (t, z) in s.slots.iter().enumerate() {
            let expect = t < 5;
            assert!(z.as_slice().iter().all(|&dl| dl == expect));
        }
        let s = stdd_schedule(2, 2).unwrap();
        assert_eq!(s.slots, vec![ModeVector::all_downlink(2), ModeVector::all_uplink(2)]);
        assert_eq!(stdd_schedule(2, 9).unwrap_err().to_string(), "uneven static split: 9 slots per frame");
    }

    #[test]
    fn switchpoint_extremes() {
        let f = switchpoint_frame(&[2], 10);
        let pattern: Vec<bool> = f.slots.iter().map(|z| z.is_downlink(0)).collect();
        assert_eq!(pattern, [true, true, false, false, false, false, false, false, false, false]);
        let f = switchpoint_frame(&[8], 10);
        let dl = f.slots.iter().filter(|z| z.is_downlink(0)).count();
        assert_eq!(dl, 8);
    }

    #[test]
    fn downlink_heavy_cell_picks_last_point() {
        let payoff = |n: usize, z: &ModeVector| if z.is_downlink(n) { 10.0 } else { 1.0 };
        let prev = initial_switchpoints(3, 10);
        let (frame, pts) = switchpoint_schedule(payoff, 3, 10, &prev, SwitchpointScope::PerCell).unwrap();
        assert_eq!(pts, vec![8, 8, 8]);
        assert_eq!(frame.len(), 10);
        let (_, pts) = switchpoint_schedule(payoff, 3, 10, &prev, SwitchpointScope::Global).unwrap();
        assert_eq!(pts, vec![8, 8, 8]);
    }

    #[test]
    fn short_frames_rejected() {
        let err = switchpoint_schedule(|_, _| 0.0, 1, 4, &[2], SwitchpointScope::PerCell).unwrap_err();
        assert_eq!(err.to_string(), "frame too short for fixed head/tail: 4 slots per frame");
    }

    #[test]
    fn patterns_are_monotone() {
        for s in switchpoint_candidates(10) {
            let f = switchpoint_frame(&[s, 10 - s], 10);
            for n in 0..2 {
                let modes: Vec<bool> = f.slots.iter().map(|z| z.is_downlink(n)).collect();
                assert!(modes.windows(2).all(|w| w[0] || !w[1]));
                assert!(modes[0] && modes[1] && !modes[8] && !modes[9]);
            }
        }
    }
}

//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use dtdd::harness::{calibrate_noise, PowerTemplate};
use dtdd::topology::{generate_deployment_with_rng, ChannelStatsAccumulator};
use dtdd::{
    generate_channels, ChannelSet, ChannelStats, Deployment, PayoffFlavor, PayoffTable,
    PowerBudget, TopologyConfig, WeightSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sorted active-set water-filling: users enter in decreasing `w / level`.
pub fn water_fill_active_set(weights: &[f64], levels: &[f64], budget: f64) -> Vec<f64> {
    let mut order: Vec<usize> = (0..weights.len())
        .filter(|&k| weights[k] > 0.0 && levels[k].is_finite())
        .collect();
    order.sort_by(|&a, &b| (weights[b] / levels[b]).total_cmp(&(weights[a] / levels[a])));
    let mut p = vec![0.0; weights.len()];
    let mut lambda = None;
    let (mut w_sum, mut l_sum) = (0.0, 0.0);
    for (i, &k) in order.iter().enumerate() {
        w_sum += weights[k];
        l_sum += levels[k];
        let lam = w_sum / (budget + l_sum);
        let next_out = order
            .get(i + 1)
            .is_none_or(|&j| weights[j] / levels[j] <= lam);
        if weights[k] / levels[k] > lam && next_out {
            lambda = Some((lam, i + 1));
        }
    }
    if let Some((lam, count)) = lambda {
        for &k in &order[..count] {
            p[k] = weights[k] / lam - levels[k];
        }
    }
    p
}

pub fn wf_objective(weights: &[f64], levels: &[f64], p: &[f64]) -> f64 {
    weights
        .iter()
        .zip(levels)
        .zip(p)
        .map(|((w, l), p)| w * (1.0 + p / l).log2())
        .sum()
}

/// Best objective over the budget face of the simplex with the given step.
pub fn wf_grid_search(weights: &[f64], levels: &[f64], budget: f64, steps: usize) -> f64 {
    let s = budget / steps as f64;
    match weights.len() {
        1 => wf_objective(weights, levels, &[budget]),
        2 => (0..=steps)
            .map(|i| {
                let a = i as f64 * s;
                wf_objective(weights, levels, &[a, (budget - a).max(0.0)])
            })
            .fold(f64::NEG_INFINITY, f64::max),
        3 => {
            let mut best = f64::NEG_INFINITY;
            for i in 0..=steps {
                for j in 0..=(steps - i) {
                    let (a, b) = (i as f64 * s, j as f64 * s);
                    let c = (budget - a - b).max(0.0);
                    best = best.max(wf_objective(weights, levels, &[a, b, c]));
                }
            }
            best
        }
        _ => panic!("grid search supports up to three users"),
    }
}

/// Interior equilibrium of a two-player game from the indifference ratios.
/// `a[n][z0][z1]` is player n's payoff.
pub fn closed_form_2x2(a: &[[[f64; 2]; 2]; 2]) -> Option<(f64, f64)> {
    let d1 = a[0][1][1] - a[0][1][0] - a[0][0][1] + a[0][0][0];
    let d0 = a[1][1][1] - a[1][0][1] - a[1][1][0] + a[1][0][0];
    if d0 == 0.0 || d1 == 0.0 {
        return None;
    }
    let q1 = (a[0][0][0] - a[0][1][0]) / d1;
    let q0 = (a[1][0][0] - a[1][0][1]) / d0;
    (q0 > 0.0 && q0 < 1.0 && q1 > 0.0 && q1 < 1.0).then_some((q0, q1))
}

pub fn has_pure_equilibrium_2x2(a: &[[[f64; 2]; 2]; 2]) -> bool {
    (0..2).any(|x| {
        (0..2).any(|y| a[0][x][y] >= a[0][1 - x][y] && a[1][x][y] >= a[1][x][1 - y])
    })
}

pub fn table_2x2(a: &[[[f64; 2]; 2]; 2]) -> PayoffTable {
    PayoffTable::from_fn(2, PayoffFlavor::Sip, |n, z| {
        a[n][usize::from(z.is_downlink(0))][usize::from(z.is_downlink(1))]
    })
    .unwrap()
}

pub fn random_table<R: Rng>(cells: usize, hi: f64, rng: &mut R) -> PayoffTable {
    let values = (0..cells << cells).map(|_| rng.gen::<f64>() * hi).collect();
    PayoffTable::from_values(cells, PayoffFlavor::Sip, values).unwrap()
}

/// One scored frame's inputs, owned.
pub struct Frame {
    pub dep: Deployment,
    pub ch: ChannelSet,
    pub stats: ChannelStats,
    pub budget: PowerBudget,
    pub weights: WeightSet,
}

pub fn frame(cfg: &TopologyConfig, warmup: usize, seed: u64) -> Frame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = ChannelStatsAccumulator::new(cfg.num_cells);
    let mut budget = None;
    for _ in 0..warmup {
        let dep = generate_deployment_with_rng(cfg, &mut rng);
        let ch = generate_channels(&dep, cfg);
        budget.get_or_insert_with(|| calibrate_noise(&dep, &ch, &PowerTemplate::default()));
        acc.add(&ch, &dep).unwrap();
    }
    let dep = generate_deployment_with_rng(cfg, &mut rng);
    let ch = generate_channels(&dep, cfg);
    let budget = budget.unwrap_or_else(|| calibrate_noise(&dep, &ch, &PowerTemplate::default()));
    if warmup == 0 {
        acc.add(&ch, &dep).unwrap();
    }
    let users = dep.num_users();
    let weights = WeightSet::new(
        (0..users).map(|_| 1.0 - rng.gen::<f64>()).collect(),
        (0..users).map(|_| 1.0 - rng.gen::<f64>()).collect(),
    )
    .unwrap();
    Frame {
        dep,
        ch,
        stats: acc.finish().unwrap(),
        budget,
        weights,
    }
}

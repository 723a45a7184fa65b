//! Estimates long-term channel means and tabulates reference interference.

use dtdd::harness::{calibrate_noise, PowerTemplate};
use dtdd::topology::{generate_deployment_with_rng, ChannelStatsAccumulator};
use dtdd::{aggregate_reference, generate_channels, reference_interference, InterferenceParams, ModeVector, TopologyConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dtdd::Result<()> {
    let cfg = TopologyConfig {
        users_per_cell: 5,
        ..Default::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut acc = ChannelStatsAccumulator::new(cfg.num_cells);
    let mut budget = None;
    for _ in 0..50 {
        let dep = generate_deployment_with_rng(&cfg, &mut rng);
        let ch = generate_channels(&dep, &cfg);
        budget.get_or_insert_with(|| calibrate_noise(&dep, &ch, &PowerTemplate::default()));
        acc.add(&ch, &dep)?;
    }
    let stats = acc.finish()?;
    let budget = budget.expect("at least one drop");
    println!("noise {:.3e} W over {} drops", budget.sigma2, stats.window_frames);

    for c in [0.0, 0.3, 1.0] {
        let params = InterferenceParams::symmetric(c)?;
        let reference = reference_interference(&stats, &params, &budget, cfg.users_per_cell);
        let all_dl = ModeVector::all_downlink(cfg.num_cells);
        let mut mixed = all_dl.clone();
        for m in 1..cfg.num_cells {
            mixed.set(m, m % 2 == 0);
        }
        println!(
            "c={c:.1}: J_0(all DL) {:.3e}  J_0({mixed}) {:.3e}",
            aggregate_reference(0, &all_dl, &reference),
            aggregate_reference(0, &mixed, &reference)
        );
    }
    Ok(())
}

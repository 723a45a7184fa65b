//! One frame of the game: payoff tables, equilibrium and sampled slots.

use dtdd::harness::{calibrate_noise, PowerTemplate};
use dtdd::topology::{generate_deployment_with_rng, ChannelStatsAccumulator};
use dtdd::{
    build_payoff_table, generate_channels, reference_interference, sample_modes, solve_msne,
    FrameInputs, InterferenceParams, PayoffFlavor, SolverOptions, TopologyConfig, WeightSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> dtdd::Result<()> {
    let cfg = TopologyConfig {
        users_per_cell: 15,
        ..Default::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut acc = ChannelStatsAccumulator::new(cfg.num_cells);
    let mut budget = None;
    for _ in 0..50 {
        let dep = generate_deployment_with_rng(&cfg, &mut rng);
        let ch = generate_channels(&dep, &cfg);
        budget.get_or_insert_with(|| calibrate_noise(&dep, &ch, &PowerTemplate::default()));
        acc.add(&ch, &dep)?;
    }
    let stats = acc.finish()?;
    let budget = budget.expect("warm-up drops");

    let dep = generate_deployment_with_rng(&cfg, &mut rng);
    let ch = generate_channels(&dep, &cfg);
    let users = dep.num_users();
    let weights = WeightSet::new(
        (0..users).map(|_| 1.0 - rng.gen::<f64>()).collect(),
        (0..users).map(|_| 1.0 - rng.gen::<f64>()).collect(),
    )?;
    let params = InterferenceParams::symmetric(0.3)?;
    let reference = reference_interference(&stats, &params, &budget, cfg.users_per_cell);
    let inputs = FrameInputs {
        dep: &dep,
        ch: &ch,
        reference: &reference,
        weights: &weights,
        budget: &budget,
        params: &params,
    };

    for flavor in [PayoffFlavor::Sip, PayoffFlavor::App] {
        let table = build_payoff_table(flavor, &inputs, 16)?;
        let report = solve_msne(&table, &SolverOptions::default())?;
        println!("{flavor}: q = {:.3?}", report.q.as_slice());
        println!("  expected network payoff {:.3}", report.social_welfare);
        println!("  distinct equilibria {} from {} starts", report.distinct_solutions, report.solver_starts_used);
        let slots = sample_modes(report.q.as_slice(), 10, &mut rng);
        let shown: Vec<String> = slots.iter().map(|z| z.to_string()).collect();
        println!("  slots {}", shown.join(" "));
    }
    Ok(())
}

//! Drops users on the wrap-around 7-cell layout and prints link gains.

use dtdd::{generate_channels, generate_deployment, TopologyConfig};

fn main() -> dtdd::Result<()> {
    let cfg = TopologyConfig {
        users_per_cell: 3,
        rng_seed: 42,
        ..Default::default()
    };
    cfg.validate()?;
    let dep = generate_deployment(&cfg);
    let ch = generate_channels(&dep, &cfg);

    println!("inter-site distance: {:.1} m", cfg.inter_site_distance());
    for (n, bs) in dep.bs_positions.iter().enumerate() {
        println!("cell {n} at ({:7.1}, {:7.1})", bs.x, bs.y);
    }
    for k in 0..dep.num_users() {
        let n = dep.serving_cell[k];
        println!(
            "user {k:2} cell {n} block {} gain {:.3e}",
            dep.block_of_user[k],
            ch.h[(n, k)]
        );
    }
    let b01 = ch.b[(0, 1)];
    println!("BS0-BS1 gain {b01:.3e} (1/D^2 = {:.3e})", cfg.inter_site_distance().powi(-2));
    Ok(())
}

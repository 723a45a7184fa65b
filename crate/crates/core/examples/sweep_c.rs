//! Average network WSR of every scheme against the cross-interference factor.
//!
//! Usage: `cargo run --release --example sweep_c [seeds] [frames]`

use dtdd::harness::{run_experiment, ScenarioConfig};

fn main() -> dtdd::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer argument"));
    let seeds = args.next().unwrap_or(3);
    let frames = args.next().unwrap_or(5) as usize;
    let cfg = ScenarioConfig {
        c_values: vec![0.0, 0.25, 0.5, 0.75, 1.0],
        seeds: (0..seeds).collect(),
        frames,
        ..Default::default()
    };
    let result = run_experiment(&cfg)?;

    print!("{:>5}", "c");
    for s in &cfg.schemes {
        print!("{:>9}", s.to_string());
    }
    println!();
    for &c in &cfg.c_values {
        print!("{c:>5.2}");
        for &s in &cfg.schemes {
            let v: Vec<f64> = result
                .records
                .iter()
                .filter(|r| r.scheme == s && r.c == c)
                .map(|r| r.avg_network_wsr)
                .collect();
            print!("{:>9.3}", v.iter().sum::<f64>() / v.len() as f64);
        }
        println!();
    }
    Ok(())
}

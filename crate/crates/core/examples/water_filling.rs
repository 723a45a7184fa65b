//! Weighted water-filling for a single downlink cell.

use dtdd::power::water_fill;

fn main() {
    let weights = [1.0, 0.5, 0.8, 0.1];
    // levels are (noise + interference) / gain
    let levels = [0.2, 0.4, 1.5, 3.0];
    for budget in [0.5, 2.0, 8.0] {
        let (p, lambda) = water_fill(&weights, &levels, budget);
        let objective: f64 = weights
            .iter()
            .zip(&levels)
            .zip(&p)
            .map(|((w, l), p)| w * (1.0 + p / l).log2())
            .sum();
        println!("budget {budget:4}: lambda {lambda:?}");
        println!("  powers {p:.4?}  sum {:.6}  wsr {objective:.4}", p.iter().sum::<f64>());
    }
}

//! Two-cell game with an interior equilibrium, checked against the closed form.

use dtdd::{solve_msne, PayoffFlavor, PayoffTable, SolverOptions};

fn main() -> dtdd::Result<()> {
    // payoff[n][z_0][z_1]
    let a = [[[3.0, 0.0], [1.0, 2.0]], [[1.0, 3.0], [2.0, 0.5]]];
    let table = PayoffTable::from_fn(2, PayoffFlavor::Sip, |n, z| {
        a[n][usize::from(z.is_downlink(0))][usize::from(z.is_downlink(1))]
    })?;

    // Cell 0 is indifferent when q_1 makes its DL and UL payoffs equal.
    let p0 = &a[0];
    let q1 = (p0[0][0] - p0[1][0]) / (p0[1][1] - p0[1][0] - p0[0][1] + p0[0][0]);
    let p1 = &a[1];
    let q0 = (p1[0][0] - p1[0][1]) / (p1[1][1] - p1[0][1] - p1[1][0] + p1[0][0]);

    let report = solve_msne(&table, &SolverOptions::default())?;
    println!("closed form q = ({q0:.6}, {q1:.6})");
    println!("solver      q = {:.6?}", report.q.as_slice());
    println!("max |F|       {:.2e}", report.residuals.iter().map(|f| f.abs()).fold(0.0, f64::max));
    println!("distinct equilibria found: {}", report.distinct_solutions);
    Ok(())
}

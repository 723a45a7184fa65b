//! Reference schedulers on a small synthetic payoff.

use dtdd::baselines::{initial_switchpoints, opt_schedule, stdd_schedule, switchpoint_schedule, SwitchpointScope};
use dtdd::{ModeVector, PayoffFlavor, PayoffTable};

fn main() -> dtdd::Result<()> {
    // cell 0 favors downlink, cell 2 favors uplink, and mismatched
    // neighbors hurt each other
    let bias = [3.0, 1.0, -2.0];
    let payoff = |n: usize, z: &ModeVector| {
        let own = if z.is_downlink(n) { 5.0 + bias[n] } else { 5.0 };
        let clash = (0..3).filter(|&m| m != n && z.is_downlink(m) != z.is_downlink(n)).count();
        own - 0.8 * clash as f64
    };
    let table = PayoffTable::from_fn(3, PayoffFlavor::Sip, payoff)?;
    let best = opt_schedule(&table);
    println!("OPT  {best} network {:.2}", table.network_value(best.index()));

    let stdd = stdd_schedule(3, 10)?;
    let rows: Vec<String> = stdd.slots.iter().map(|z| z.to_string()).collect();
    println!("STDD {}", rows.join(" "));

    for scope in [SwitchpointScope::PerCell, SwitchpointScope::Global] {
        let (frame, points) = switchpoint_schedule(payoff, 3, 10, &initial_switchpoints(3, 10), scope)?;
        let rows: Vec<String> = frame.slots.iter().map(|z| z.to_string()).collect();
        println!("{scope:?} points {points:?}: {}", rows.join(" "));
    }
    Ok(())
}

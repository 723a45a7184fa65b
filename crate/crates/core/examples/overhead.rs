//! Per-frame signaling load of the two payoff models.

use dtdd::{signaling_overhead, PayoffFlavor};

fn main() {
    println!("{:>3} {:>3} {:>10} {:>10} {:>12}", "N", "K", "SIP", "APP", "APP window");
    for cells in [1, 3, 7, 19] {
        for k in [1, 5, 15] {
            let sip = signaling_overhead(PayoffFlavor::Sip, cells, k);
            let app = signaling_overhead(PayoffFlavor::App, cells, k);
            println!(
                "{cells:>3} {k:>3} {:>10} {:>10} {:>12}",
                sip.per_frame(),
                app.per_frame(),
                app.scalars_per_window_app_slow
            );
        }
    }
}

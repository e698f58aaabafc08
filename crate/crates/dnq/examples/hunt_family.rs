//! Enumerate the radicand family d = 2·(24t(3t ± 2) + 5): whenever the
//! inner value is prime, x² − d·y² = 6 is solvable with y = 1 by
//! construction, and norm −1 solvability is verified computationally.
//!
//! ```bash
//! cargo run --example hunt_family
//! ```

use dnq::counterexample::hunt_radicands;

fn main() {
    let report = hunt_radicands(12);
    println!(
        "{:>3} {:>5} {:>8} {:>8}  witness for x² − dy² = 6",
        "t", "±", "p", "d"
    );
    for c in &report.candidates {
        println!(
            "{:>3} {:>5} {:>8} {:>8}  ({}, {})",
            c.index,
            if c.sign > 0 { "+" } else { "−" },
            c.p,
            c.d,
            c.witness6.re,
            c.witness6.im
        );
    }
    for anomaly in &report.anomalies {
        println!("anomaly: {anomaly}");
    }
    println!("{} verified radicands with t ≤ 12", report.candidates.len());
}

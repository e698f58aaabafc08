//! Solve x² − d·y² = N completely for small |N|: continued fraction,
//! fundamental unit, primitive solution classes with an exhaustion
//! certificate, and the deterministic solution stream.
//!
//! ```bash
//! cargo run --example pell_solutions
//! ```

use dnq::pell::{cf_sqrt, enumerate_norm, hypothesis_check};
use dnq::quadring::RingCtx;
use num_bigint::BigInt;

fn main() {
    for d in [10i64, 58, 106] {
        let ctx = RingCtx::new(d).unwrap();
        let cf = cf_sqrt(&BigInt::from(d)).unwrap();
        let (unit, unit_norm) = ctx.fund_unit();
        println!("√{d} = [{}; {:?}]", cf.a0, cf.period);
        println!(
            "  fundamental unit ({}, {}) of norm {unit_norm}",
            unit.re, unit.im
        );

        for target in [6i64, -6, 2] {
            let set = ctx.solution_set(target).unwrap();
            if set.solvable {
                let stream = enumerate_norm(&ctx, target, 4).unwrap();
                let shown: Vec<String> = stream
                    .iter()
                    .map(|s| format!("({}, {})", s.re, s.im))
                    .collect();
                println!("  x² − {d}y² = {target}: {}", shown.join(", "));
            } else {
                println!(
                    "  x² − {d}y² = {target}: no solutions (exhausted y ≤ {})",
                    set.search_bound
                );
            }
        }

        let report = hypothesis_check(&ctx).unwrap();
        println!(
            "  d mod 48 = {}, hypothesis {}",
            report.d_mod_48,
            if report.holds { "holds" } else { "fails" }
        );
    }
}

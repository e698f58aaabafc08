//! Produce counterexample records: values n that admit a D(n) quadruple
//! yet are not a difference of two squares in Z[√d].
//!
//! ```bash
//! cargo run --example counterexample_stream
//! ```

use dnq::counterexample::{counterexample_stream, representable_diff_squares, Representability};
use dnq::quadring::{RingCtx, RingElt};

fn main() {
    let ctx = RingCtx::new(10).unwrap();
    let d = ctx.d().clone();

    for rec in counterexample_stream(&ctx, 200, 5).unwrap() {
        println!(
            "n = {} (witness prime p = {} ≡ 3 mod 4, x = {}, y = {})",
            rec.n.pretty(&d),
            rec.witness.p,
            2 * &rec.witness.m + 1,
            2 * &rec.witness.k + 1,
        );
        println!(
            "  ±2 unattainable as norms: scans exhausted at y ≤ {} / {}",
            rec.nonrep_cert.bound_plus, rec.nonrep_cert.bound_minus
        );
        println!(
            "  quadruple: {{{}}}",
            rec.quadruple
                .elements
                .iter()
                .map(|e| e.pretty(&d))
                .collect::<Vec<_>>()
                .join(", ")
        );
    }

    // The decision is exact for classes (4m+2, 4k) and (4m+2, 4k+2); in
    // a ring with a norm ±2 element the same class is representable.
    let ctx2 = RingCtx::new(2).unwrap();
    match representable_diff_squares(&ctx2, &RingElt::new(2, 2)) {
        Representability::Yes {
            witness: Some((alpha, beta)),
        } => println!(
            "in Z[√2]: 2 + 2√2 = ({})² − ({})²",
            alpha.pretty(ctx2.d()),
            beta.pretty(ctx2.d())
        ),
        other => println!("in Z[√2]: {other:?}"),
    }
}

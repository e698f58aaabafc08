//! Verify candidate quadruples pair by pair, including a deliberately
//! broken one.
//!
//! ```bash
//! cargo run --example verify_quadruple
//! ```

use dnq::builder::verify;
use dnq::quadring::{RingCtx, RingElt};

fn check(ctx: &RingCtx, n: RingElt, elems: [RingElt; 4]) {
    let d = ctx.d();
    let report = verify(ctx, &n, &elems).unwrap();
    println!("n = {}:", n.pretty(d));
    if report.ok() {
        for pair in &report.pairs {
            println!(
                "  e{}·e{} + n = ({})²",
                pair.i,
                pair.j,
                pair.root.as_ref().unwrap().pretty(d)
            );
        }
    } else {
        println!("  FAILED pairs: {:?}", report.failing_pairs());
    }
}

fn main() {
    let ctx10 = RingCtx::new(10).unwrap();
    check(
        &ctx10,
        RingElt::new(26, 6),
        [
            RingElt::new(19, 6),
            RingElt::new(-8, 6),
            RingElt::new(35, 18),
            RingElt::new(35, 42),
        ],
    );

    let ctx58 = RingCtx::new(58).unwrap();
    check(
        &ctx58,
        RingElt::new(18, 2),
        [
            RingElt::new(19603, 2574),
            RingElt::new(543627, -70094),
            RingElt::new(543616, -70094),
            RingElt::new(2154883, -282950),
        ],
    );

    // Perturbing one element breaks exactly the pairs it appears in.
    check(
        &ctx10,
        RingElt::new(26, 6),
        [
            RingElt::new(19, 6),
            RingElt::new(-8, 6),
            RingElt::new(35, 18),
            RingElt::new(36, 42),
        ],
    );
}

//! Construct verified D(n) quadruples and scale them to related targets.
//!
//! ```bash
//! cargo run --example build_quadruple
//! ```

use dnq::builder::{construct, scale_quadruple, PAIRS};
use dnq::quadring::{RingCtx, RingElt};

fn main() {
    let ctx = RingCtx::new(10).unwrap();
    let d = ctx.d().clone();

    let n = RingElt::new(26, 6);
    let q = construct(&ctx, &n, 1).expect("class (2, 2) is covered");
    println!(
        "D({}) quadruple via case {} with seed {} (index {:?}):",
        n.pretty(&d),
        q.case_id.as_u8(),
        q.seed.pretty(&d),
        q.seed_index
    );
    for (elem, label) in q.elements.iter().zip(["a", "b", "a+b+2r", "a+4b+4r"]) {
        println!("  {label:>8} = {}", elem.pretty(&d));
    }
    for ((i, j), root) in PAIRS.iter().zip(q.roots.iter()) {
        println!("  e{i}·e{j} + n = ({})²", root.pretty(&d));
    }

    // Scaling by w turns D(n) into D(w²·n); (4m, 4k) classes are reached
    // exactly this way with w = 2.
    let scaled = scale_quadruple(&ctx, &q, &RingElt::new(2, 0)).unwrap();
    println!(
        "scaled by 2: D({}) with elements {{{}}}",
        scaled.n.pretty(&d),
        scaled
            .elements
            .iter()
            .map(|e| e.pretty(&d))
            .collect::<Vec<_>>()
            .join(", ")
    );
}

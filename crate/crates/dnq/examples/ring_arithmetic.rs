//! Exact arithmetic in Z[√d]: products, norms, exact division, ring
//! square roots, and residue classification.
//!
//! ```bash
//! cargo run --example ring_arithmetic
//! ```

use dnq::quadring::{classify_mod4, RingCtx, RingElt};

fn main() {
    let ctx = RingCtx::new(10).expect("10 is square-free and ≡ 2 mod 4");
    let d = ctx.d().clone();

    let x = RingElt::new(19, 6);
    let y = RingElt::new(-8, 6);
    let product = ctx.mul(&x, &y);
    println!(
        "({}) · ({}) = {}",
        x.pretty(&d),
        y.pretty(&d),
        product.pretty(&d)
    );
    println!("Nm({}) = {}", x.pretty(&d), ctx.norm(&x));

    let q = ctx
        .div_exact(&RingElt::new(151, 48), &x)
        .expect("divides exactly");
    println!("(151 + 48√10) / ({}) = {}", x.pretty(&d), q.pretty(&d));

    let square = ctx.square(&RingElt::new(12, 3));
    let root = ctx.sqrt(&square).expect("a square has a root");
    println!("√({}) = {}", square.pretty(&d), root.pretty(&d));
    println!("√(5 + 2√10) = {:?}", ctx.sqrt(&RingElt::new(5, 2)));

    for n in [RingElt::new(26, 6), RingElt::new(1, 1), RingElt::new(-2, 0)] {
        let tag = classify_mod4(&n);
        println!(
            "{} ∈ class (4m+{}, 4k+{}) [{:?}], m = {}, k = {}",
            n.pretty(&d),
            tag.re_offset,
            tag.im_offset,
            tag.family(),
            tag.m,
            tag.k
        );
    }

    let (unit, norm) = ctx.fund_unit();
    println!("fundamental unit: {} with norm {}", unit.pretty(&d), norm);
}

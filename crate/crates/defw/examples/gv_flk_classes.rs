//! The two classical generators at low order: the Godbillon–Vey class
//! h[1,0]*c[1,0] and the Fuks–Lodder–Kotschick class h[1,0]*h[1,1]*c[1,0],
//! computed as cohomology of the quotient algebra in codimension one.
//!
//! ```bash
//! cargo run --example gv_flk_classes
//! ```

use defw::cohomology::{class_delta, cohomology, cohomology_with, SpaceSpec};
use defw::context::{AlgebraContext, Variant};
use defw::element::Rat;
use defw::text::parse_element;
use num_traits::Zero;

fn main() {
    let ctx = AlgebraContext::unbounded(1, Variant::W);

    // degree 3, order 0: one class, the Godbillon-Vey class
    let h30 = cohomology(ctx, 3, 0).unwrap();
    println!("H(degree 3, order 0): dim {}", h30.dim());
    for b in h30.basis() {
        println!("  generator: {b}");
    }

    // its derivative class at order 1 equals 2 h[1,1]*c[1,0]
    let gv = h30
        .class_of(&parse_element("h[1,0]*c[1,0]", ctx).unwrap())
        .unwrap();
    let dgv = class_delta(&gv).unwrap();
    println!("delta(GV) representative: {}", dgv.representative);

    // the FLK class lives in the zero eigenspace at order 1, degree 4
    let f01 = cohomology_with(ctx, 4, 1, SpaceSpec::eigen(Rat::zero())).unwrap();
    let flk = f01
        .class_of(&parse_element("h[1,0]*h[1,1]*c[1,0]", ctx).unwrap())
        .unwrap();
    println!(
        "F(0,1) at degree 4: dim {}, FLK class nonzero: {}",
        f01.dim(),
        !flk.is_zero()
    );

    // everything at order 0 other than degrees 0 and 3 dies
    print!("order-0 cohomology dims, degrees 0..8:");
    for degree in 0..=8 {
        print!(" {}", cohomology(ctx, degree, 0).unwrap().dim());
    }
    println!();
}

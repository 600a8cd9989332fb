//! Images of the zero-eigenspace projector on the order-4 monomials, after
//! reduction to the canonical coset form: the table that drives the
//! vanishing argument at orders two through four.
//!
//! ```bash
//! cargo run --example projector_tables
//! ```

use defw::cohomology::{cohomology_with, SpaceSpec};
use defw::context::{AlgebraContext, Variant};
use defw::element::Rat;
use defw::ideal::quotient_piece;
use defw::projector::{p1_coefficients, projector_p};
use defw::report::projector_table_fixtures;
use defw::serialize::rat_display;
use defw::text::parse_element;
use num_traits::Zero;

fn main() {
    let ctx = AlgebraContext::unbounded(1, Variant::W);

    let coeffs: Vec<String> = p1_coefficients(4).iter().map(rat_display).collect();
    println!(
        "p(1,4) = sum of ({}) . (delta sigma)^i\n",
        coeffs.join(", ")
    );

    for (k, entries) in projector_table_fixtures() {
        println!("order {k} images under p(1,{k}), reduced mod the ideal:");
        for (input, _) in entries {
            let x = parse_element(input, ctx).unwrap();
            let degree = x.bidegree().unwrap().0;
            let piece = quotient_piece(ctx, degree, k);
            let image = piece.reduce(&projector_p(1, k, &x).unwrap()).unwrap();
            println!("  p({input}) = {image}");
        }
        println!();
    }

    // the upshot: the zero eigenspace of cohomology vanishes at these orders
    for order in 2..=4u32 {
        let mut dims = Vec::new();
        for degree in 0..=8u32 {
            dims.push(
                cohomology_with(ctx, degree, order, SpaceSpec::eigen(Rat::zero()))
                    .unwrap()
                    .dim()
                    .to_string(),
            );
        }
        println!("F(0,{order}) dims over degrees 0..8: {}", dims.join(" "));
    }
}

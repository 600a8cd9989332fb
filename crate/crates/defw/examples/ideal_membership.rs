//! The relation ideals and their bigraded slices: membership tests, coset
//! normal forms, and the jet-order dependence of triviality through the
//! derivation-closure depth.
//!
//! ```bash
//! cargo run --example ideal_membership
//! ```

use defw::context::AlgebraContext;
use defw::element::Element;
use defw::ideal::{is_in_ideal, is_in_ideal_capped, reduce_mod_ideal, IdealVariant};
use defw::text::parse_element;

fn main() {
    let ctx = AlgebraContext::free(1);
    let el = |s: &str| parse_element(s, ctx).unwrap();

    // the Bott square and its derivation closure
    for s in [
        "c[1,0]*c[1,0]",
        "c[1,0]*c[1,1]",
        "c[1,1]*c[1,1] + c[1,0]*c[1,2]",
        "c[1,1]*c[1,1]",
        "h[1,0]*c[1,0]",
    ] {
        println!(
            "{s} in ideal: {}",
            is_in_ideal(&el(s), IdealVariant::I).unwrap()
        );
    }

    // canonical coset representatives
    let x = el("c[1,0]*c[1,2]");
    println!(
        "reduce({x}) = {}",
        reduce_mod_ideal(&x, IdealVariant::I).unwrap()
    );

    // triple products of the even generator die once the closure depth
    // reaches five, mirroring triviality at jet order >= 5
    println!("\ntriple products c[1,i]*c[1,j]*c[1,k], i+j+k <= 5:");
    println!(
        "{:<28} {:>6} {:>8} {:>8}",
        "monomial", "full", "depth 5", "depth 2"
    );
    for i in 0..=5u32 {
        for j in i..=5u32 {
            for k in j..=5u32 {
                if i + j + k > 5 {
                    continue;
                }
                let x = Element::from_generators(ctx, &[], &[(1, i), (1, j), (1, k)]).unwrap();
                let name = format!("c[1,{i}]*c[1,{j}]*c[1,{k}]");
                println!(
                    "{:<28} {:>6} {:>8} {:>8}",
                    name,
                    is_in_ideal(&x, IdealVariant::I).unwrap(),
                    is_in_ideal_capped(&x, IdealVariant::I, 5).unwrap(),
                    is_in_ideal_capped(&x, IdealVariant::I, 2).unwrap(),
                );
            }
        }
    }

    // at codimension two the norm ideal and the classical Bott ideal differ
    let ctx2 = AlgebraContext::free(2);
    let y = parse_element("h[2,1]*c[2,0]", ctx2).unwrap();
    println!(
        "\nq = 2: h[2,1]*c[2,0] in the norm ideal: {}, in the Bott ideal: {}",
        is_in_ideal(&y, IdealVariant::I).unwrap(),
        is_in_ideal(&y, IdealVariant::IPrime).unwrap(),
    );
}

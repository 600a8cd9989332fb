//! The element text syntax and the JSON interchange schema: parsing,
//! printing, exact rational coefficients as num/den strings, and the
//! round-trip contract between the two encodings.
//!
//! ```bash
//! cargo run --example element_io
//! ```

use defw::context::{AlgebraContext, JetOrder, Variant};
use defw::element::Element;
use defw::serialize::{element_from_json, element_from_json_text, element_to_json};
use defw::text::parse_element;

fn main() {
    let ctx = AlgebraContext::free(1);

    // parse, canonicalize, print
    let e = parse_element("h[1,1]*h[1,0] + (3/4) c[1,0] - 2 h[1,2]*c[1,1]", ctx).unwrap();
    println!("parsed:  {e}");

    // products absorb Koszul signs into the coefficients
    let a = parse_element("h[1,2]*h[1,1]", ctx).unwrap();
    let b = parse_element("c[1,0]*c[1,2]", ctx).unwrap();
    println!("product: {}", a.try_mul(&b).unwrap());

    // gradings of a single monomial
    let m = parse_element("h[1,1]*h[1,2]*c[1,0]*c[1,2]", ctx).unwrap();
    let (mono, _) = m.terms().next().unwrap();
    let g = mono.gradings();
    println!(
        "gradings of {mono}: degree {}, order {}, length {}, type ({},{}), norm {}",
        g.degree, g.order, g.length, g.ty.0, g.ty.1, g.norm
    );

    // the JSON schema carries exact coefficients and the text form
    let v = element_to_json(&e);
    println!("json:    {}", serde_json::to_string(&v).unwrap());
    assert_eq!(element_from_json(&v, ctx).unwrap(), e);
    assert_eq!(element_from_json_text(&v, ctx).unwrap(), e);
    println!("round trips through both encodings: true");

    // finite jet order contexts validate generator orders
    let fin = AlgebraContext::new(1, JetOrder::Finite(2), Variant::Free).unwrap();
    let err = Element::from_generators(fin, &[(1, 3)], &[]);
    println!(
        "order 3 generator at jet order 2: {:?}",
        err.err().map(|e| e.to_string())
    );
}

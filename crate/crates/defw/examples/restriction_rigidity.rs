//! Restriction to lower codimension and formal rigidity: cocycles of the
//! plus quotient at codimension two restrict to classes in codimension one
//! whose derivative classes vanish, exhibited through the homotopy
//! operator and the norm filtration.
//!
//! ```bash
//! cargo run --example restriction_rigidity
//! ```

use defw::cohomology::cohomology;
use defw::context::{AlgebraContext, Variant};
use defw::derivation::{d, delta, k_total};
use defw::ideal::{is_in_ideal, IdealVariant};
use defw::text::parse_element;

fn main() {
    let plus2 = AlgebraContext::unbounded(2, Variant::WPlus);
    let w1 = AlgebraContext::unbounded(1, Variant::W);

    // the restriction homomorphism kills the top index
    let x = parse_element("h[2,0]*c[2,0] + h[1,0]*c[1,0]", plus2).unwrap();
    println!("restrict({x}) = {}", x.restrict_codim().unwrap());

    let mut checked = 0;
    let mut rigid = 0;
    for order in 0..=2u32 {
        for degree in 0..=7u32 {
            let h = cohomology(plus2, degree, order).unwrap();
            for row in h.cocycles.rows() {
                let phi = h.piece.element_from_coords(row);
                checked += 1;

                // the homotopy route: d(phi) sits deep in the norm filtration,
                // so K(d phi) restricts into the codimension-one ideal
                let dphi = d(&phi).unwrap();
                let min_norm = dphi.terms().map(|(m, _)| m.norm()).min();
                let kd = k_total(&dphi).unwrap();
                let kd_res = kd.restrict_codim().unwrap().into_ctx(w1).unwrap();
                let kd_in_ideal =
                    kd_res.is_zero() || is_in_ideal(&kd_res, IdealVariant::I).unwrap();

                // the direct route: the derivative of the restricted class dies
                let res = phi.restrict_codim().unwrap().into_ctx(w1).unwrap();
                let dres = delta(&res).unwrap();
                let target = cohomology(w1, degree, order + 1).unwrap();
                let class = target.class_of(&dres).unwrap();
                if class.is_zero() && kd_in_ideal {
                    rigid += 1;
                }
                if checked <= 3 {
                    println!(
                        "cocycle at ({degree},{order}): min norm of d(phi) = {:?}, \
                         restricted derivative class zero: {}",
                        min_norm,
                        class.is_zero()
                    );
                }
            }
        }
    }
    println!("\n{rigid}/{checked} restricted cocycle classes are formally rigid");
}

//! The eigenstructure of the composite derivation delta∘sigma: eigenvalues
//! on the order-k part, the projector decomposition, the shift of sigma
//! between eigenspaces, and injectivity of delta on cohomology.
//!
//! ```bash
//! cargo run --example eigenspace_structure
//! ```

use defw::cohomology::{cochain_space, cohomology, delta_matrix_on_cohomology, SpaceSpec};
use defw::context::{AlgebraContext, Variant};
use defw::element::Element;
use defw::ideal::quotient_piece;
use defw::projector::{delta_sigma, lambda_eigenvalue, projector_p};
use defw::serialize::rat_display;

fn main() {
    let ctx = AlgebraContext::unbounded(1, Variant::W);

    println!("eigenvalues lambda(m,k) of delta∘sigma on the order-k part:");
    for k in 1..=5u32 {
        let row: Vec<String> = (1..=k)
            .map(|m| rat_display(&lambda_eigenvalue(m, k)))
            .collect();
        println!("  k = {k}: {}", row.join(", "));
    }

    // decompose a cochain piece into eigenspaces
    let (degree, order) = (3u32, 3u32);
    let piece = quotient_piece(ctx, degree, order);
    println!("\npiece ({degree}, {order}): dim {}", piece.dim());
    for m in 1..=order {
        let lambda = lambda_eigenvalue(m, order);
        let space = cochain_space(ctx, degree, order, &SpaceSpec::eigen(lambda.clone())).unwrap();
        println!("  eigenvalue {}: dim {}", rat_display(&lambda), space.dim());
    }

    // project a monomial and confirm the eigen relation
    let x = Element::from_generators(ctx, &[(1, 3)], &[(1, 0)]).unwrap();
    for m in 1..=3u32 {
        let p = projector_p(m, 3, &x).unwrap();
        let check = delta_sigma(&p).unwrap() == p.scale(&lambda_eigenvalue(m, 3));
        println!("p({m},3)(h[1,3]*c[1,0]) = {p}   [eigenvector: {check}]");
    }

    // delta is injective on the computed cohomology pieces
    println!("\ninjectivity of delta on cohomology (q = 1):");
    for order in 0..=3u32 {
        for degree in 1..=6u32 {
            let from = cohomology(ctx, degree, order).unwrap();
            if from.dim() == 0 {
                continue;
            }
            let to = cohomology(ctx, degree, order + 1).unwrap();
            let matrix = delta_matrix_on_cohomology(&from, &to).unwrap();
            println!(
                "  H({degree},{order}) dim {} -> H({degree},{}) rank {}",
                from.dim(),
                order + 1,
                matrix.rank()
            );
        }
    }
}

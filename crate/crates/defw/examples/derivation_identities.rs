//! The derivation calculus: the differential, the order-shifting time
//! derivations, their integration partners, and the homotopy operators,
//! with the commutator identities that organize everything.
//!
//! ```bash
//! cargo run --example derivation_identities
//! ```

use defw::context::AlgebraContext;
use defw::derivation::{d, delta, delta_i, k_i, k_total, l_op, sigma, sigma_prime};
use defw::element::rat;
use defw::text::parse_element;

fn main() {
    let ctx = AlgebraContext::free(1);
    let el = |s: &str| parse_element(s, ctx).unwrap();

    let gv = el("h[1,0]*c[1,0]");
    println!("d(GV)      = {}", d(&gv).unwrap());
    println!("delta(GV)  = {}", delta(&gv).unwrap());
    println!("sigma(c[1,3]) = {}", sigma(&el("c[1,3]")).unwrap());
    println!("sigma'(c[1,3]) = {}", sigma_prime(&el("c[1,3]")).unwrap());
    println!("K(c[1,2])  = {}", k_total(&el("c[1,2]")).unwrap());
    println!("L(c[1,0]*c[1,2]) = {}", l_op(&el("c[1,0]*c[1,2]")).unwrap());

    // the order commutator: sigma delta - delta sigma = ord * id on monomials
    let x = el("h[1,2]*c[1,1]*c[1,3]");
    let lhs = &sigma(&delta(&x).unwrap()).unwrap() - &delta(&sigma(&x).unwrap()).unwrap();
    println!(
        "order commutator on {x}: matches ord = 6: {}",
        lhs == x.scale(&rat(6, 1))
    );

    // the length commutator: sigma' delta - delta sigma' = length * id
    let lhs =
        &sigma_prime(&delta(&x).unwrap()).unwrap() - &delta(&sigma_prime(&x).unwrap()).unwrap();
    println!(
        "length commutator on {x}: matches length = 3: {}",
        lhs == x.scale(&rat(3, 1))
    );

    // the homotopy identity: delta = K d + d K (and per index)
    let y = el("h[1,0]*h[1,1]*c[1,0] + 3 h[1,2]*c[1,1]*c[1,3]");
    let rhs = &k_total(&d(&y).unwrap()).unwrap() + &d(&k_total(&y).unwrap()).unwrap();
    println!(
        "delta = K d + d K on a sample: {}",
        delta(&y).unwrap() == rhs
    );

    let ctx2 = AlgebraContext::free(2);
    let z = parse_element("h[2,0]*c[1,0]*c[2,1]", ctx2).unwrap();
    let rhs1 = &k_i(&d(&z).unwrap(), 1).unwrap() + &d(&k_i(&z, 1).unwrap()).unwrap();
    println!(
        "per-index homotopy at q = 2: {}",
        delta_i(&z, 1).unwrap() == rhs1
    );

    // the degree-lowering homotopy on type (1, b): (1+b) w = L dw + d Lw
    let w = el("h[1,1]*c[1,0]*c[1,2]");
    let rhs = &l_op(&d(&w).unwrap()).unwrap() + &d(&l_op(&w).unwrap()).unwrap();
    println!(
        "(1+b) w = L dw + d Lw at b = 2: {}",
        w.scale(&rat(3, 1)) == rhs
    );
}

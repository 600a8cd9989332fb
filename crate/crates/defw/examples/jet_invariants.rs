//! Invariant polynomials of the block Toeplitz jet groups: the truncated
//! polynomial matrix picture, power block traces, the Newton polynomials
//! and their prolongations, and exact invariance under conjugation.
//!
//! ```bash
//! cargo run --example jet_invariants
//! ```

use defw::invariants::{
    check_ad_invariance, chern_poly_jet, elementary_symmetric, newton_phi, power_trace_coeff,
    trace, TruncPolyMatrix,
};
use defw::serialize::rat_display;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (q, r) = (2usize, 2usize);
    let x = TruncPolyMatrix::random(&mut rng, q, r);

    println!("random sample over q = {q}, truncation order {r}");
    println!("block matrix is {}x{}", (r + 1) * q, (r + 1) * q);

    // power block traces C'(k,l)
    for k in 1..=q as u32 {
        for l in 0..=r as u32 {
            let v = power_trace_coeff(&x, k, l).unwrap();
            println!(
                "C'({k},{l}) = {} . (-1/2pi)^{}",
                rat_display(&v.rational_part),
                v.pi_exponent
            );
        }
    }

    // Newton polynomials express elementary symmetric functions in power sums
    let phi2 = newton_phi(2);
    println!(
        "\nphi_2 has {} terms; on the constant block:",
        phi2.num_terms()
    );
    let a0 = x.coeff(0);
    let p1 = trace(a0);
    let p2 = trace(&a0.mul(a0));
    let via_newton = phi2.eval(&|i, _| if i == 1 { p1.clone() } else { p2.clone() });
    println!(
        "  e_2(A_0) = {} via Newton, {} via the characteristic polynomial",
        rat_display(&via_newton),
        rat_display(&elementary_symmetric(a0, 2))
    );

    // the jet invariants and their exact conjugation invariance
    for k in 1..=q as u32 {
        for l in 0..=r as u32 {
            let v = chern_poly_jet(&x, k, l).unwrap();
            println!(
                "c({k},{l}) = {} . (-1/2pi)^{}",
                rat_display(&v.rational_part),
                v.pi_exponent
            );
        }
    }

    let mut all = true;
    for _ in 0..25 {
        let g = TruncPolyMatrix::random_invertible(&mut rng, q, r);
        for k in 1..=q as u32 {
            for l in 0..=r as u32 {
                all &= check_ad_invariance(k, l, &x, &g).unwrap();
            }
        }
    }
    println!("\nexact invariance under 25 random conjugations: {all}");
}

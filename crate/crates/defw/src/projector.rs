//! Eigenspace projectors for the composite order derivations.
//!
//! On the order-k part, delta∘sigma acts with eigenvalues
//! lambda(m, k) = (m-1)(2k-m)/2 for 1 <= m <= k. The projector onto the
//! zero eigenspace has the closed form
//!   p(1,k) = sum_i (-1)^i 2^i (2k-i-2)! / ((2k-2)! i!) delta^i sigma^i,
//! and the higher projectors follow by the recursion
//!   p(m,k) = delta ∘ p(m-1,k-1) ∘ sigma / lambda(m,k).
//! The length eigentheory uses sigma' instead, with eigenvalues i*l on the
//! order-k, length-l part.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::context::{DefwError, Result};
use crate::derivation::{delta, power, sigma, sigma_prime, Derivation};
use crate::element::{Element, Rat};

fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n as u64 {
        acc *= i;
    }
    acc
}

/// Eigenvalue lambda(m, k) = (m-1)(2k-m)/2 of delta∘sigma on the order-k part.
pub fn lambda_eigenvalue(m: u32, k: u32) -> Rat {
    debug_assert!(m >= 1 && m <= k.max(1));
    Rat::new(
        BigInt::from(m as i64 - 1) * BigInt::from(2 * k as i64 - m as i64),
        BigInt::from(2),
    )
}

fn check_order(x: &Element, k: u32) -> Result<()> {
    if x.is_zero() {
        return Ok(());
    }
    match x.homogeneous_order() {
        Some(o) if o == k => Ok(()),
        _ => Err(DefwError::Validation(format!(
            "projector expects a homogeneous element of order {k}"
        ))),
    }
}

/// Coefficients of the zero-eigenspace projector p(1,k) in front of
/// delta^i sigma^i, i = 0..k-1.
pub fn p1_coefficients(k: u32) -> Vec<Rat> {
    (0..k)
        .map(|i| {
            let num = BigInt::from(2).pow(i) * factorial(2 * k - i - 2);
            let den = factorial(2 * k - 2) * factorial(i);
            let mut r = Rat::new(num, den);
            if i % 2 == 1 {
                r = -r;
            }
            r
        })
        .collect()
}

/// The projector from the order-k part onto the lambda(m,k)-eigenspace,
/// applied to a homogeneous element of order k.
pub fn projector_p(m: u32, k: u32, x: &Element) -> Result<Element> {
    if k == 0 {
        // the order-zero part is a single eigenspace
        if m != 0 && m != 1 {
            return Err(DefwError::Validation("order 0 admits only m = 1".into()));
        }
        check_order(x, 0)?;
        return Ok(x.clone());
    }
    if m < 1 || m > k {
        return Err(DefwError::Validation(format!(
            "projector index m = {m} out of range [1, {k}]"
        )));
    }
    check_order(x, k)?;
    if m == 1 {
        let mut out = Element::zero(x.ctx());
        for (i, coeff) in p1_coefficients(k).into_iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let term = power(
                Derivation::Delta,
                &power(Derivation::Sigma, x, i as u32)?,
                i as u32,
            )?;
            out = &out + &term.scale(&coeff);
        }
        Ok(out)
    } else {
        let inner = projector_p(m - 1, k - 1, &sigma(x)?)?;
        let lam = lambda_eigenvalue(m, k);
        debug_assert!(lam.is_positive());
        Ok(delta(&inner)?.scale(&lam.recip()))
    }
}

/// The length-eigentheory projector on the order-k, length-l part:
/// p'(i,k,l) = sum_{m=0}^{k-i} (-1)^m / (i! m! l^{m+i}) delta^{m+i} sigma'^{m+i}.
/// Its nonzero outputs are eigenvectors of delta∘sigma' with eigenvalue i*l.
pub fn projector_p_prime(i: u32, k: u32, l: u32, x: &Element) -> Result<Element> {
    if l == 0 {
        return Err(DefwError::Validation(
            "length projector needs length l >= 1".into(),
        ));
    }
    if i > k {
        return Err(DefwError::Validation(format!(
            "eigen index i = {i} out of range [0, {k}]"
        )));
    }
    check_order(x, k)?;
    if !x.is_zero() && x.homogeneous_length() != Some(l) {
        return Err(DefwError::Validation(format!(
            "projector expects a homogeneous element of length {l}"
        )));
    }
    let mut out = Element::zero(x.ctx());
    for m in 0..=(k - i) {
        let e = m + i;
        let num = BigInt::one();
        let den = factorial(i) * factorial(m) * BigInt::from(l as i64).pow(e);
        let mut coeff = Rat::new(num, den);
        if m % 2 == 1 {
            coeff = -coeff;
        }
        let term = power(Derivation::Delta, &power(Derivation::SigmaPrime, x, e)?, e)?;
        out = &out + &term.scale(&coeff);
    }
    Ok(out)
}

/// Sanity helper: delta∘sigma applied to an element.
pub fn delta_sigma(x: &Element) -> Result<Element> {
    delta(&sigma(x)?)
}

/// delta∘sigma' for the length eigentheory.
pub fn delta_sigma_prime(x: &Element) -> Result<Element> {
    delta(&sigma_prime(x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::AlgebraContext;
    use crate::element::rat;
    use crate::text::parse_element;

    fn ctx() -> AlgebraContext {
        AlgebraContext::free(1)
    }

    fn el(s: &str) -> Element {
        parse_element(s, ctx()).unwrap()
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda_eigenvalue(1, 4), rat(0, 1));
        assert_eq!(lambda_eigenvalue(2, 2), rat(1, 1));
        assert_eq!(lambda_eigenvalue(3, 3), rat(3, 1));
        assert_eq!(lambda_eigenvalue(2, 4), rat(3, 1));
    }

    #[test]
    fn p1_4_coefficients_match_closed_form() {
        let c = p1_coefficients(4);
        assert_eq!(c, vec![rat(1, 1), rat(-1, 3), rat(1, 15), rat(-1, 90)]);
    }

    #[test]
    fn p_images_from_the_order4_table() {
        // p(h[1,4]*c[1,0]) = -1/5 h3c1 + 3/5 h2c2 - 1/5 h1c3, free of the ideal
        let x = el("h[1,4]*c[1,0]");
        let img = projector_p(1, 4, &x).unwrap();
        let expect = el("-1/5 h[1,3]*c[1,1] + 3/5 h[1,2]*c[1,2] - 1/5 h[1,1]*c[1,3]");
        assert_eq!(img, expect);

        // p(1,2) = id - delta sigma on order 2
        let y = el("h[1,2]*c[1,0]");
        let img = projector_p(1, 2, &y).unwrap();
        assert_eq!(img, el("-h[1,1]*c[1,1]"));
    }

    #[test]
    fn projector_completeness_on_samples() {
        for s in ["h[1,4]*c[1,0]", "h[1,1]*h[1,3]", "c[1,2]*c[1,2]"] {
            let x = el(s);
            let k = x.homogeneous_order().unwrap();
            let mut sum = Element::zero(ctx());
            for m in 1..=k {
                sum = &sum + &projector_p(m, k, &x).unwrap();
            }
            assert_eq!(sum, x, "completeness failed on {s}");
        }
    }

    #[test]
    fn projector_images_are_eigenvectors() {
        let x = el("h[1,4]*c[1,0] + 2 c[1,1]*c[1,3]");
        let k = 4;
        for m in 1..=k {
            let px = projector_p(m, k, &x).unwrap();
            let lam = lambda_eigenvalue(m, k);
            assert_eq!(
                delta_sigma(&px).unwrap(),
                px.scale(&lam),
                "eigen relation failed at m = {m}"
            );
        }
    }

    #[test]
    fn p_prime_decomposes_and_squares() {
        // across i = 0..k the p' sum to the identity on length-homogeneous input
        let x = el("h[1,1]*c[1,0]");
        let (k, l) = (1, 2);
        let mut sum = Element::zero(ctx());
        for i in 0..=k {
            let p = projector_p_prime(i, k, l, &x).unwrap();
            sum = &sum + &p;
            // idempotence
            let pp = projector_p_prime(i, k, l, &p).unwrap();
            assert_eq!(pp, p, "p' not idempotent at i = {i}");
            // eigen relation
            let target = p.scale(&rat((i * l) as i64, 1));
            assert_eq!(delta_sigma_prime(&p).unwrap(), target);
        }
        assert_eq!(sum, x);
    }

    #[test]
    fn p_prime_single_term_at_top_index() {
        // i = k leaves only delta^k sigma'^k / (k! l^k)
        let x = el("h[1,2]*c[1,0]");
        let (k, l) = (2, 2);
        let p = projector_p_prime(k, k, l, &x).unwrap();
        let inner = power(Derivation::SigmaPrime, &x, k).unwrap();
        let manual = power(Derivation::Delta, &inner, k)
            .unwrap()
            .scale(&rat(1, 8));
        assert_eq!(p, manual);
    }

    #[test]
    fn validation() {
        assert!(projector_p(0, 3, &el("c[1,3]")).is_err());
        assert!(projector_p(4, 3, &el("c[1,3]")).is_err());
        assert!(projector_p(1, 2, &el("c[1,3]")).is_err()); // wrong order
        assert!(projector_p_prime(0, 1, 0, &el("h[1,1]")).is_err()); // l = 0
    }
}

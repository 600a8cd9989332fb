//! Derivations on elements: the differential `d`, the order-shifting time
//! derivations and their integration partners, and the signed homotopy
//! operators. One Leibniz engine, eight generator rule tables.

use num_traits::One;

use crate::context::{DefwError, JetOrder, Result};
use crate::element::{rat, Element, Rat};
use crate::monomial::{GenKind, Generator, Monomial};

/// What to do when a rule would push a generator past a finite jet order
/// bound. Strict mode raises an error; the permissive mode truncates the
/// offending term to zero and exists for experimentation only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverflowPolicy {
    Strict,
    Truncate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derivation {
    /// Differential: h[i,j] -> c[i,j], c -> 0. Signed.
    D,
    /// Order shift up on every index. Unsigned.
    Delta,
    /// Order shift up on one index only. Unsigned.
    DeltaI(u32),
    /// Weighted order shift down, coefficient l(l-1)/2. Unsigned.
    Sigma,
    /// Length-compatible order shift down, coefficient l. Unsigned.
    SigmaPrime,
    /// Homotopy for DeltaI: c[i,l] -> h[i,l+1] on index i, h -> 0. Signed.
    KI(u32),
    /// Sum of the KI over all indices. Signed.
    K,
    /// Degree-lowering homotopy for the type filtration: c[i] -> h[i]. Signed.
    /// Only supported in codimension one.
    L,
}

impl Derivation {
    pub fn is_signed(&self) -> bool {
        matches!(
            self,
            Derivation::D | Derivation::KI(_) | Derivation::K | Derivation::L
        )
    }

    /// Image of a single generator: list of (coefficient, replacement).
    fn rule(
        &self,
        g: Generator,
        r: JetOrder,
        policy: OverflowPolicy,
    ) -> Result<Vec<(Rat, Generator)>> {
        let shift_up = |g: Generator| -> Result<Vec<(Rat, Generator)>> {
            if !r.admits(g.order + 1) {
                return match policy {
                    OverflowPolicy::Strict => Err(DefwError::OrderOverflow(format!(
                        "cannot raise order of {g} past bound {r}"
                    ))),
                    OverflowPolicy::Truncate => Ok(Vec::new()),
                };
            }
            Ok(vec![(
                Rat::one(),
                Generator {
                    order: g.order + 1,
                    ..g
                },
            )])
        };
        match self {
            Derivation::D => Ok(match g.kind {
                GenKind::H => vec![(
                    Rat::one(),
                    Generator {
                        kind: GenKind::C,
                        ..g
                    },
                )],
                GenKind::C => Vec::new(),
            }),
            Derivation::Delta => shift_up(g),
            Derivation::DeltaI(i) => {
                if g.index == *i {
                    shift_up(g)
                } else {
                    Ok(Vec::new())
                }
            }
            Derivation::Sigma => {
                let l = g.order;
                if l < 2 {
                    return Ok(Vec::new());
                }
                let coeff = rat((l as i64) * (l as i64 - 1), 2);
                Ok(vec![(coeff, Generator { order: l - 1, ..g })])
            }
            Derivation::SigmaPrime => {
                let l = g.order;
                if l == 0 {
                    return Ok(Vec::new());
                }
                Ok(vec![(rat(l as i64, 1), Generator { order: l - 1, ..g })])
            }
            Derivation::KI(i) => match g.kind {
                GenKind::C if g.index == *i => {
                    if !r.admits(g.order + 1) {
                        return match policy {
                            OverflowPolicy::Strict => Err(DefwError::OrderOverflow(format!(
                                "cannot raise order of {g} past bound {r}"
                            ))),
                            OverflowPolicy::Truncate => Ok(Vec::new()),
                        };
                    }
                    Ok(vec![(
                        Rat::one(),
                        Generator {
                            kind: GenKind::H,
                            index: *i,
                            order: g.order + 1,
                        },
                    )])
                }
                _ => Ok(Vec::new()),
            },
            Derivation::K => unreachable!("K is expanded into KI terms before rule lookup"),
            Derivation::L => Ok(match g.kind {
                GenKind::C => vec![(
                    Rat::one(),
                    Generator {
                        kind: GenKind::H,
                        ..g
                    },
                )],
                GenKind::H => Vec::new(),
            }),
        }
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.apply_with(x, OverflowPolicy::Strict)
    }

    pub fn apply_with(&self, x: &Element, policy: OverflowPolicy) -> Result<Element> {
        let ctx = x.ctx();
        match self {
            Derivation::K => {
                let mut out = Element::zero(ctx);
                for i in 1..=ctx.q {
                    out = &out + &Derivation::KI(i).apply_with(x, policy)?;
                }
                return Ok(out);
            }
            Derivation::L => {
                if ctx.q != 1 {
                    return Err(DefwError::Unsupported(
                        "the L operator is defined only in codimension one".into(),
                    ));
                }
            }
            Derivation::DeltaI(i) | Derivation::KI(i) => {
                if *i < 1 || *i > ctx.q {
                    return Err(DefwError::Validation(format!(
                        "derivation index {i} out of range [1, {}]",
                        ctx.q
                    )));
                }
            }
            _ => {}
        }

        let signed = self.is_signed();
        let mut out = Element::zero(ctx);
        for (m, coeff) in x.terms() {
            let word: Vec<Generator> = m.factors().copied().collect();
            let mut deg_prefix = 0u32;
            for (t, g) in word.iter().enumerate() {
                let images = self.rule(*g, ctx.r, policy)?;
                if !images.is_empty() {
                    let sign = if signed && deg_prefix % 2 == 1 {
                        -1i8
                    } else {
                        1
                    };
                    for (rc, g2) in images {
                        let mut new_word = word.clone();
                        new_word[t] = g2;
                        if let Some((s2, mono)) = Monomial::from_word(&new_word) {
                            let total_sign = sign * s2;
                            let mut c = coeff * &rc;
                            if total_sign < 0 {
                                c = -c;
                            }
                            out.add_term(mono, c);
                        }
                    }
                }
                deg_prefix += g.degree();
            }
        }
        Ok(out)
    }
}

pub fn d(x: &Element) -> Result<Element> {
    Derivation::D.apply(x)
}

pub fn delta(x: &Element) -> Result<Element> {
    Derivation::Delta.apply(x)
}

pub fn delta_i(x: &Element, i: u32) -> Result<Element> {
    Derivation::DeltaI(i).apply(x)
}

pub fn sigma(x: &Element) -> Result<Element> {
    Derivation::Sigma.apply(x)
}

pub fn sigma_prime(x: &Element) -> Result<Element> {
    Derivation::SigmaPrime.apply(x)
}

pub fn k_total(x: &Element) -> Result<Element> {
    Derivation::K.apply(x)
}

pub fn k_i(x: &Element, i: u32) -> Result<Element> {
    Derivation::KI(i).apply(x)
}

pub fn l_op(x: &Element) -> Result<Element> {
    Derivation::L.apply(x)
}

/// Iterated application.
pub fn power(kind: Derivation, x: &Element, times: u32) -> Result<Element> {
    let mut cur = x.clone();
    for _ in 0..times {
        cur = kind.apply(&cur)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::{AlgebraContext, Variant};
    use crate::text::parse_element;

    fn ctx() -> AlgebraContext {
        AlgebraContext::free(1)
    }

    fn el(s: &str) -> Element {
        parse_element(s, ctx()).unwrap()
    }

    #[test]
    fn d_on_generators() {
        assert_eq!(d(&el("h[1,2]")).unwrap(), el("c[1,2]"));
        assert!(d(&el("c[1,2]")).unwrap().is_zero());
    }

    #[test]
    fn d_squared_is_zero_on_a_sample() {
        let x = el("h[1,0]*h[1,1]*c[1,0] + 2 h[1,2]*c[1,1] - 1/3 h[1,0]*h[1,2]*h[1,3]");
        assert!(d(&d(&x).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn gv_differential_is_bott_square() {
        let gv = el("h[1,0]*c[1,0]");
        assert_eq!(d(&gv).unwrap(), el("c[1,0]*c[1,0]"));
    }

    #[test]
    fn delta_is_unsigned_leibniz() {
        let gv = el("h[1,0]*c[1,0]");
        assert_eq!(delta(&gv).unwrap(), el("h[1,1]*c[1,0] + h[1,0]*c[1,1]"));

        let c2 = el("c[1,0]*c[1,0]");
        assert_eq!(delta(&c2).unwrap(), el("2 c[1,0]*c[1,1]"));
    }

    #[test]
    fn delta_i_restricts_to_one_index() {
        let ctx2 = AlgebraContext::free(2);
        let x = parse_element("h[2,0]*c[1,0]", ctx2).unwrap();
        let d1 = delta_i(&x, 1).unwrap();
        assert_eq!(d1, parse_element("h[2,0]*c[1,1]", ctx2).unwrap());
        let dall = delta(&x).unwrap();
        assert_eq!(
            dall,
            parse_element("h[2,1]*c[1,0] + h[2,0]*c[1,1]", ctx2).unwrap()
        );
    }

    #[test]
    fn sigma_coefficients() {
        assert_eq!(sigma(&el("c[1,3]")).unwrap(), el("3 c[1,2]"));
        assert!(sigma(&el("h[1,1]*c[1,0]")).unwrap().is_zero());
        // unsigned Leibniz then the repeated factor dies
        assert_eq!(
            sigma_prime(&el("h[1,1]*h[1,2]")).unwrap(),
            el("h[1,0]*h[1,2]")
        );
    }

    #[test]
    fn k_rules() {
        assert_eq!(k_total(&el("c[1,2]")).unwrap(), el("h[1,3]"));
        assert!(k_total(&el("h[1,0]")).unwrap().is_zero());
    }

    #[test]
    fn l_requires_codim_one() {
        let ctx2 = AlgebraContext::free(2);
        let x = parse_element("c[2,0]", ctx2).unwrap();
        assert!(matches!(l_op(&x), Err(DefwError::Unsupported(_))));

        let y = el("c[1,0]*c[1,2]");
        assert_eq!(l_op(&y).unwrap(), el("h[1,0]*c[1,2] + h[1,2]*c[1,0]"));
    }

    #[test]
    fn strict_overflow_errors_and_truncation() {
        let fin = AlgebraContext::new(1, JetOrder::Finite(2), Variant::Free).unwrap();
        let x = parse_element("c[1,2]", fin).unwrap();
        assert!(matches!(delta(&x), Err(DefwError::OrderOverflow(_))));
        let t = Derivation::Delta
            .apply_with(&x, OverflowPolicy::Truncate)
            .unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn order_commutator_on_monomials() {
        // sigma(delta(x)) - delta(sigma(x)) = ord(x) * x
        for s in ["h[1,0]*c[1,2]", "c[1,1]*c[1,3]", "h[1,2]*h[1,4]*c[1,0]"] {
            let x = el(s);
            let lhs = &sigma(&delta(&x).unwrap()).unwrap() - &delta(&sigma(&x).unwrap()).unwrap();
            let ord = x.homogeneous_order().unwrap();
            assert_eq!(lhs, x.scale(&rat(ord as i64, 1)), "failed on {s}");
        }
    }

    #[test]
    fn length_commutator_on_monomials() {
        // sigma'(delta(x)) - delta(sigma'(x)) = l(x) * x
        for s in [
            "h[1,0]*c[1,2]",
            "c[1,1]*c[1,3]",
            "h[1,2]*h[1,4]*c[1,0]",
            "c[1,5]",
        ] {
            let x = el(s);
            let lhs = &sigma_prime(&delta(&x).unwrap()).unwrap()
                - &delta(&sigma_prime(&x).unwrap()).unwrap();
            let len = x.terms().next().unwrap().0.length();
            assert_eq!(lhs, x.scale(&rat(len as i64, 1)), "failed on {s}");
        }
    }

    #[test]
    fn homotopy_identities_on_a_sample() {
        let x = el("h[1,0]*h[1,1]*c[1,0] + 3 h[1,2]*c[1,1]*c[1,3]");
        // delta = K d + d K
        let lhs = delta(&x).unwrap();
        let rhs = &k_total(&d(&x).unwrap()).unwrap() + &d(&k_total(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        // per index
        let lhs1 = delta_i(&x, 1).unwrap();
        let rhs1 = &k_i(&d(&x).unwrap(), 1).unwrap() + &d(&k_i(&x, 1).unwrap()).unwrap();
        assert_eq!(lhs1, rhs1);
    }

    #[test]
    fn l_homotopy_on_type_1b() {
        // (1+b) w = L(dw) + d(Lw) for type (1,b) inputs at q=1
        for s in [
            "h[1,0]*c[1,2]*c[1,3]",
            "h[1,1]*c[1,0]",
            "h[1,4]*c[1,0]*c[1,1]*c[1,2]",
        ] {
            let w = el(s);
            let b = w.terms().next().unwrap().0.ty().1 as i64;
            let lhs = w.scale(&rat(1 + b, 1));
            let rhs = &l_op(&d(&w).unwrap()).unwrap() + &d(&l_op(&w).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "failed on {s}");
        }
    }
}

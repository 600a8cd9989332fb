//! Sparse elements: finite rational linear combinations of canonical monomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::context::{AlgebraContext, DefwError, Result};
use crate::monomial::Monomial;

pub type Rat = BigRational;

/// Convenience constructor for small rational constants.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

/// A finite rational linear combination of canonical monomials. No zero
/// coefficients are ever stored, so equality of the term maps is equality
/// of elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    ctx: AlgebraContext,
    terms: BTreeMap<Monomial, Rat>,
}

impl Element {
    pub fn zero(ctx: AlgebraContext) -> Self {
        Element {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: AlgebraContext) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::one(), Rat::one());
        Element { ctx, terms }
    }

    /// Single canonical term with coefficient ±1, or zero on an h-repeat.
    /// This is the entry point for building monomials from generator lists;
    /// the sorting parity is absorbed into the coefficient.
    pub fn from_generators(
        ctx: AlgebraContext,
        h_list: &[(u32, u32)],
        c_list: &[(u32, u32)],
    ) -> Result<Element> {
        let word: Vec<crate::monomial::Generator> = h_list
            .iter()
            .map(|&(i, a)| crate::monomial::Generator::h(i, a))
            .chain(
                c_list
                    .iter()
                    .map(|&(i, b)| crate::monomial::Generator::c(i, b)),
            )
            .collect();
        for g in &word {
            g.validate(&ctx)?;
        }
        match Monomial::from_word(&word) {
            None => Ok(Element::zero(ctx)),
            Some((sign, m)) => {
                let coeff = if sign >= 0 { Rat::one() } else { -Rat::one() };
                Ok(Element::from_term(ctx, m, coeff))
            }
        }
    }

    pub fn from_term(ctx: AlgebraContext, m: Monomial, coeff: Rat) -> Element {
        let mut e = Element::zero(ctx);
        e.add_term(m, coeff);
        e
    }

    pub fn from_monomial(ctx: AlgebraContext, m: Monomial) -> Element {
        Element::from_term(ctx, m, Rat::one())
    }

    pub fn ctx(&self) -> AlgebraContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Monomial, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, s: &Rat) -> Element {
        if s.is_zero() {
            return Element::zero(self.ctx);
        }
        Element {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    fn check_ctx(&self, other: &Element) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(DefwError::ContextMismatch(format!(
                "{} vs {}",
                self.ctx, other.ctx
            )));
        }
        Ok(())
    }

    /// Graded-commutative product: bilinear extension of the monomial
    /// product with Koszul signs.
    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check_ctx(other)?;
        let mut out = Element::zero(self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((sign, m)) = m1.mul(m2) {
                    let mut c = c1 * c2;
                    if sign < 0 {
                        c = -c;
                    }
                    out.add_term(m, c);
                }
            }
        }
        Ok(out)
    }

    /// True if every monomial shares one (degree, order).
    pub fn is_bihomogeneous(&self) -> bool {
        let mut it = self.terms.keys();
        match it.next() {
            None => true,
            Some(first) => {
                let (d, o) = (first.degree(), first.order());
                it.all(|m| m.degree() == d && m.order() == o)
            }
        }
    }

    /// The common (degree, order) of a nonzero bihomogeneous element.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        if !self.is_bihomogeneous() {
            return None;
        }
        self.terms.keys().next().map(|m| (m.degree(), m.order()))
    }

    /// Split into bigraded components, keyed by (degree, order).
    pub fn bigraded_components(&self) -> BTreeMap<(u32, u32), Element> {
        let mut out: BTreeMap<(u32, u32), Element> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry((m.degree(), m.order()))
                .or_insert_with(|| Element::zero(self.ctx))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Maximum norm over the monomials, as with the degree of a polynomial.
    pub fn norm(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.norm()).max()
    }

    /// The order grading when every term agrees on it.
    pub fn homogeneous_order(&self) -> Option<u32> {
        let mut orders = self.terms.keys().map(|m| m.order());
        let first = orders.next()?;
        orders.all(|o| o == first).then_some(first)
    }

    /// The length grading when every term agrees on it.
    pub fn homogeneous_length(&self) -> Option<u32> {
        let mut lengths = self.terms.keys().map(|m| m.length());
        let first = lengths.next()?;
        lengths.all(|l| l == first).then_some(first)
    }

    /// Restriction homomorphism to codimension q-1: kills every generator of
    /// the top index and keeps the rest.
    pub fn restrict_codim(&self) -> Result<Element> {
        let target = self.ctx.lower_codim()?;
        let killed = self.ctx.q;
        let mut out = Element::zero(target);
        for (m, c) in &self.terms {
            if m.avoids_index(killed) {
                out.add_term(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Keep only the terms of the given type (h-count, c-count).
    pub fn type_component(&self, ty: (u32, u32)) -> Element {
        let mut out = Element::zero(self.ctx);
        for (m, c) in &self.terms {
            if m.ty() == ty {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Reinterpret in another context. Fails if some factor is out of range.
    pub fn into_ctx(&self, ctx: AlgebraContext) -> Result<Element> {
        for m in self.terms.keys() {
            m.validate(&ctx)?;
        }
        Ok(Element {
            ctx,
            terms: self.terms.clone(),
        })
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        debug_assert_eq!(self.ctx, rhs.ctx);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        debug_assert_eq!(self.ctx, rhs.ctx);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("context mismatch in product")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if abs.is_one() && !m.is_one() {
                write!(f, "{m}")?;
            } else if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs} {m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Variant;

    fn ctx1() -> AlgebraContext {
        AlgebraContext::free(1)
    }

    #[test]
    fn make_monomial_parity_and_nilpotence() {
        let e = Element::from_generators(ctx1(), &[(1, 1), (1, 0)], &[]).unwrap();
        assert_eq!(e.to_string(), "-h[1,0]*h[1,1]");

        let z = Element::from_generators(ctx1(), &[(1, 0), (1, 0)], &[]).unwrap();
        assert!(z.is_zero());

        let flk = Element::from_generators(ctx1(), &[(1, 0), (1, 1)], &[(1, 0)]).unwrap();
        assert_eq!(flk.to_string(), "h[1,0]*h[1,1]*c[1,0]");
    }

    #[test]
    fn multiply_signs() {
        let h0 = Element::from_generators(ctx1(), &[(1, 0)], &[]).unwrap();
        let h1 = Element::from_generators(ctx1(), &[(1, 1)], &[]).unwrap();
        let c0 = Element::from_generators(ctx1(), &[], &[(1, 0)]).unwrap();

        assert_eq!((&h0 * &h1).to_string(), "h[1,0]*h[1,1]");
        assert_eq!((&h1 * &h0).to_string(), "-h[1,0]*h[1,1]");
        assert_eq!((&c0 * &h0).to_string(), "h[1,0]*c[1,0]");

        let a = Element::from_generators(ctx1(), &[(1, 2), (1, 1)], &[]).unwrap();
        let b = Element::from_generators(ctx1(), &[], &[(1, 0), (1, 2)]).unwrap();
        assert_eq!((&a * &b).to_string(), "-h[1,1]*h[1,2]*c[1,0]*c[1,2]");
    }

    #[test]
    fn validation_errors() {
        let err = Element::from_generators(ctx1(), &[(2, 0)], &[]);
        assert!(err.is_err());
        let fin =
            AlgebraContext::new(1, crate::context::JetOrder::Finite(2), Variant::Free).unwrap();
        assert!(Element::from_generators(fin, &[(1, 3)], &[]).is_err());
    }

    #[test]
    fn restriction_is_linear_and_kills_top_index() {
        let ctx2 = AlgebraContext::free(2);
        let x = Element::from_generators(ctx2, &[(2, 0)], &[(2, 0)]).unwrap();
        // h[2,0]*c[2,0] restricted from q=2 to q=1 dies
        assert!(x.restrict_codim().unwrap().is_zero());

        let a = Element::from_generators(ctx2, &[(1, 0)], &[(1, 0)]).unwrap();
        let b = Element::from_generators(ctx2, &[(2, 1)], &[(1, 0)]).unwrap();
        let s = &a + &b;
        let r = s.restrict_codim().unwrap();
        assert_eq!(r.to_string(), "h[1,0]*c[1,0]");
        assert_eq!(r.ctx().q, 1);

        // from q = 3, index 2 survives
        let ctx3 = AlgebraContext::free(3);
        let y = Element::from_generators(ctx3, &[(2, 0)], &[(2, 0)]).unwrap();
        let ry = y.restrict_codim().unwrap();
        assert_eq!(ry.to_string(), "h[2,0]*c[2,0]");
        assert_eq!(ry.ctx().q, 2);
    }

    #[test]
    fn display_rationals() {
        let ctx = ctx1();
        let m = Element::from_generators(ctx, &[(1, 0)], &[]).unwrap();
        let e = m.scale(&rat(-15, 14));
        assert_eq!(e.to_string(), "-15/14 h[1,0]");
        let one = Element::one(ctx).scale(&rat(3, 1));
        assert_eq!(one.to_string(), "3");
    }
}

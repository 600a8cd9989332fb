//! The relation ideals and their finite-dimensional bigraded slices.
//!
//! All quotients are computed as linear slices inside one (degree, order)
//! piece: seed monomials, closed under the order-raising derivation, are
//! multiplied by every monomial of the complementary bidegree and the
//! resulting spanning set is row-reduced. There is no symbolic rewriting.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::basis::enumerate_basis;
use crate::context::{AlgebraContext, DefwError, JetOrder, Result, Variant};
use crate::derivation::delta;
use crate::element::{Element, Rat};
use crate::linalg::Subspace;
use crate::monomial::Monomial;

/// Which relation ideal a slice belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealVariant {
    /// Generated by the derivation closure of {norm > q}.
    I,
    /// Generated by the derivation closure of the order-zero Bott monomials.
    IPrime,
    /// Generated by the order-zero Bott monomials alone, no closure.
    IPlus,
}

impl IdealVariant {
    pub fn of(variant: Variant) -> Option<IdealVariant> {
        match variant {
            Variant::Free => None,
            Variant::W => Some(IdealVariant::I),
            Variant::WPrime => Some(IdealVariant::IPrime),
            Variant::WPlus => Some(IdealVariant::IPlus),
        }
    }
}

/// One bigraded piece of a quotient algebra: the free monomial basis, the
/// ideal slice in those coordinates, and the coset representative monomials
/// (the non-pivot columns).
#[derive(Debug)]
pub struct QuotientPiece {
    pub ctx: AlgebraContext,
    pub degree: u32,
    pub order: u32,
    pub ambient: Vec<Monomial>,
    pub ideal: Subspace,
    pub coset_reps: Vec<Monomial>,
}

impl QuotientPiece {
    pub fn dim(&self) -> usize {
        self.coset_reps.len()
    }

    /// Coordinates of a bihomogeneous element in the free ambient basis.
    pub fn ambient_vec(&self, x: &Element) -> Result<Vec<Rat>> {
        let mut v = vec![Rat::zero(); self.ambient.len()];
        for (m, c) in x.terms() {
            match self.ambient.binary_search(m) {
                Ok(i) => v[i] = c.clone(),
                Err(_) => {
                    return Err(DefwError::Validation(format!(
                        "monomial {m} is not in the ({}, {}) piece",
                        self.degree, self.order
                    )))
                }
            }
        }
        Ok(v)
    }

    pub fn element_from_ambient(&self, v: &[Rat]) -> Element {
        let mut e = Element::zero(self.ctx);
        for (m, c) in self.ambient.iter().zip(v) {
            e.add_term(m.clone(), c.clone());
        }
        e
    }

    /// Canonical coset representative: eliminate the ideal pivots.
    pub fn reduce(&self, x: &Element) -> Result<Element> {
        let v = self.ambient_vec(x)?;
        let r = self.ideal.reduce_vec(&v);
        Ok(self.element_from_ambient(&r))
    }

    /// Coordinates in the coset representative basis.
    pub fn coords(&self, x: &Element) -> Result<Vec<Rat>> {
        let v = self.ambient_vec(x)?;
        let r = self.ideal.reduce_vec(&v);
        Ok(self.project(&r))
    }

    /// Project an already-reduced ambient vector onto the non-pivot columns.
    pub fn project(&self, reduced: &[Rat]) -> Vec<Rat> {
        self.non_pivot_columns()
            .map(|i| reduced[i].clone())
            .collect()
    }

    pub fn element_from_coords(&self, v: &[Rat]) -> Element {
        let mut e = Element::zero(self.ctx);
        for (i, c) in self.non_pivot_columns().zip(v.iter().cloned()) {
            e.add_term(self.ambient[i].clone(), c);
        }
        e
    }

    fn non_pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        let pivots: std::collections::HashSet<usize> =
            self.ideal.pivots().iter().copied().collect();
        (0..self.ambient.len()).filter(move |i| !pivots.contains(i))
    }

    pub fn contains_in_ideal(&self, x: &Element) -> Result<bool> {
        let v = self.ambient_vec(x)?;
        Ok(self.ideal.contains(&v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct SliceKey {
    variant: Option<IdealVariant>,
    // the full caller context: cached pieces hand back elements in it
    ctx: AlgebraContext,
    degree: u32,
    order: u32,
    closure_cap: Option<u32>,
}

fn cache() -> &'static Mutex<HashMap<SliceKey, Arc<QuotientPiece>>> {
    static CACHE: OnceLock<Mutex<HashMap<SliceKey, Arc<QuotientPiece>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The bigraded piece of the context's quotient algebra.
pub fn quotient_piece(ctx: AlgebraContext, degree: u32, order: u32) -> Arc<QuotientPiece> {
    quotient_piece_capped(ctx, degree, order, None)
}

/// Same, with the derivation closure depth capped (models the finite jet
/// order dependence of ideal membership).
pub fn quotient_piece_capped(
    ctx: AlgebraContext,
    degree: u32,
    order: u32,
    closure_cap: Option<u32>,
) -> Arc<QuotientPiece> {
    let variant = IdealVariant::of(ctx.variant);
    build_piece(variant, ctx, degree, order, closure_cap)
}

/// Basis data of the intersection of an ideal with one bigraded piece,
/// independent of the context's own variant.
pub fn ideal_slice(
    variant: IdealVariant,
    ctx: AlgebraContext,
    degree: u32,
    order: u32,
) -> Arc<QuotientPiece> {
    build_piece(Some(variant), ctx, degree, order, None)
}

pub fn ideal_slice_capped(
    variant: IdealVariant,
    ctx: AlgebraContext,
    degree: u32,
    order: u32,
    closure_cap: Option<u32>,
) -> Arc<QuotientPiece> {
    build_piece(Some(variant), ctx, degree, order, closure_cap)
}

fn build_piece(
    variant: Option<IdealVariant>,
    ctx: AlgebraContext,
    degree: u32,
    order: u32,
    closure_cap: Option<u32>,
) -> Arc<QuotientPiece> {
    let key = SliceKey {
        variant,
        ctx,
        degree,
        order,
        closure_cap,
    };
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return Arc::clone(hit);
    }
    let piece = Arc::new(compute_piece(variant, ctx, degree, order, closure_cap));
    cache().lock().unwrap().insert(key, Arc::clone(&piece));
    piece
}

fn compute_piece(
    variant: Option<IdealVariant>,
    ctx: AlgebraContext,
    degree: u32,
    order: u32,
    closure_cap: Option<u32>,
) -> QuotientPiece {
    let free_ctx = AlgebraContext {
        variant: Variant::Free,
        ..ctx
    };
    let ambient = enumerate_basis(free_ctx, degree, order);
    let ideal = match variant {
        None => Subspace::empty(ambient.len()),
        Some(v) => ideal_subspace(v, free_ctx, degree, order, closure_cap, &ambient),
    };
    let pivots: std::collections::HashSet<usize> = ideal.pivots().iter().copied().collect();
    let coset_reps = ambient
        .iter()
        .enumerate()
        .filter(|(i, _)| !pivots.contains(i))
        .map(|(_, m)| m.clone())
        .collect();
    QuotientPiece {
        ctx,
        degree,
        order,
        ambient,
        ideal,
        coset_reps,
    }
}

fn ideal_subspace(
    variant: IdealVariant,
    ctx: AlgebraContext,
    degree: u32,
    order: u32,
    closure_cap: Option<u32>,
    ambient: &[Monomial],
) -> Subspace {
    let mut spanning: Vec<Vec<Rat>> = Vec::new();
    let ambient_vec = |e: &Element| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); ambient.len()];
        for (m, c) in e.terms() {
            let i = ambient.binary_search(m).expect("bidegree bookkeeping");
            v[i] = c.clone();
        }
        v
    };

    for seed in minimal_seeds(variant, ctx, degree, order) {
        let seed_degree = seed.degree();
        let seed_order = seed.order();
        let max_depth = match variant {
            IdealVariant::IPlus => 0,
            _ => {
                let by_order = order - seed_order;
                let by_cap = closure_cap.unwrap_or(u32::MAX);
                let by_r = match ctx.r {
                    JetOrder::Unbounded => u32::MAX,
                    JetOrder::Finite(r) => {
                        let top = seed.factors().map(|g| g.order).max().unwrap_or(0);
                        r.saturating_sub(top)
                    }
                };
                by_order.min(by_cap).min(by_r)
            }
        };
        let mut closed = Element::from_monomial(ctx, seed);
        for depth in 0..=max_depth {
            if depth > 0 {
                closed = delta(&closed).expect("depth bound keeps orders in range");
            }
            let cof_order = order - seed_order - depth;
            let cof_degree = degree - seed_degree;
            for cof in enumerate_basis(ctx, cof_degree, cof_order) {
                let prod = closed
                    .try_mul(&Element::from_monomial(ctx, cof))
                    .expect("same context");
                if !prod.is_zero() {
                    spanning.push(ambient_vec(&prod));
                }
            }
        }
    }
    Subspace::from_spanning(ambient.len(), &spanning)
}

/// Seed monomials of the ideal, restricted to minimal ones: dropping any
/// factor takes the relevant weight down to q or below. Monomial multiples
/// of a seed are again in the ideal, so minimal seeds span the same slices.
fn minimal_seeds(
    variant: IdealVariant,
    ctx: AlgebraContext,
    max_degree: u32,
    max_order: u32,
) -> Vec<Monomial> {
    let q = ctx.q;
    let mut out = Vec::new();
    let max_seed_order = match variant {
        IdealVariant::I => max_order,
        _ => 0,
    };
    for ds in 0..=max_degree {
        for os in 0..=max_seed_order {
            for m in enumerate_basis(ctx, ds, os) {
                let keep = match variant {
                    IdealVariant::I => {
                        m.norm() > q && m.factors().all(|g| m.norm() - g.norm() <= q)
                    }
                    IdealVariant::IPrime | IdealVariant::IPlus => {
                        m.ty().0 == 0
                            && m.order() == 0
                            && m.norm() > q
                            && m.factors().all(|g| m.norm() - g.norm() <= q)
                    }
                };
                if keep {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// Ideal membership by rank test, componentwise on bigraded pieces.
pub fn is_in_ideal(x: &Element, variant: IdealVariant) -> Result<bool> {
    for ((degree, order), component) in x.bigraded_components() {
        let piece = ideal_slice(variant, x.ctx(), degree, order);
        if !piece.contains_in_ideal(&component)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_in_ideal_capped(x: &Element, variant: IdealVariant, cap: u32) -> Result<bool> {
    for ((degree, order), component) in x.bigraded_components() {
        let piece = ideal_slice_capped(variant, x.ctx(), degree, order, Some(cap));
        if !piece.contains_in_ideal(&component)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The unique coset representative of x modulo the ideal, computed piecewise.
pub fn reduce_mod_ideal(x: &Element, variant: IdealVariant) -> Result<Element> {
    let mut out = Element::zero(x.ctx());
    for ((degree, order), component) in x.bigraded_components() {
        let piece = ideal_slice(variant, x.ctx(), degree, order);
        out = &out + &piece.reduce(&component)?;
    }
    Ok(out)
}

/// Reduce by the context's own quotient (identity in the free algebra).
pub fn reduce_in_ctx(x: &Element) -> Result<Element> {
    match IdealVariant::of(x.ctx().variant) {
        None => Ok(x.clone()),
        Some(v) => reduce_mod_ideal(x, v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_element;

    fn ctx1() -> AlgebraContext {
        AlgebraContext::free(1)
    }

    fn el(s: &str) -> Element {
        parse_element(s, ctx1()).unwrap()
    }

    #[test]
    fn q1_minimal_seed_is_bott_square() {
        let seeds = minimal_seeds(IdealVariant::I, ctx1(), 6, 4);
        let names: Vec<String> = seeds.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, vec!["c[1,0]*c[1,0]"]);
    }

    #[test]
    fn q1_slices_contain_delta_closure() {
        // delta(c^2) = 2 c0 c1
        assert!(is_in_ideal(&el("c[1,0]*c[1,1]"), IdealVariant::I).unwrap());
        // delta^2(c^2)/2 = c1^2 + c0 c2
        assert!(is_in_ideal(&el("c[1,1]*c[1,1] + c[1,0]*c[1,2]"), IdealVariant::I).unwrap());
        assert!(!is_in_ideal(&el("c[1,1]*c[1,1]"), IdealVariant::I).unwrap());
        // delta^3(c^2) = 6 c1 c2 + 2 c0 c3
        assert!(is_in_ideal(&el("3 c[1,1]*c[1,2] + c[1,0]*c[1,3]"), IdealVariant::I).unwrap());
        assert!(is_in_ideal(&el("c[1,0]*c[1,0]"), IdealVariant::I).unwrap());
        assert!(!is_in_ideal(&el("h[1,0]*c[1,0]"), IdealVariant::I).unwrap());
    }

    #[test]
    fn q2_prime_membership_via_closure() {
        let ctx2 = AlgebraContext::free(2);
        // delta(c1^3) = 3 c1^2 c1' : at q=2 the seed is c1^3 (weighted degree 3 > 2)
        let x = parse_element("c[1,0]*c[1,0]*c[1,1]", ctx2).unwrap();
        assert!(is_in_ideal(&x, IdealVariant::IPrime).unwrap());
        // c1 c2 is a seed itself (weighted degree 3)
        let y = parse_element("c[1,0]*c[2,0]", ctx2).unwrap();
        assert!(is_in_ideal(&y, IdealVariant::IPrime).unwrap());
        assert!(is_in_ideal(&y, IdealVariant::IPlus).unwrap());
        // but c2 alone is not
        let z = parse_element("c[2,0]", ctx2).unwrap();
        assert!(!is_in_ideal(&z, IdealVariant::IPrime).unwrap());
    }

    #[test]
    fn iplus_has_no_closure() {
        let ctx2 = AlgebraContext::free(2);
        // delta(c1 c2) = c1' c2 + c1 c2' is in I' but only partially in I+
        let x = parse_element("c[1,1]*c[2,0] + c[1,0]*c[2,1]", ctx2).unwrap();
        assert!(is_in_ideal(&x, IdealVariant::IPrime).unwrap());
        assert!(!is_in_ideal(&x, IdealVariant::IPlus).unwrap());
    }

    #[test]
    fn reduce_normal_forms() {
        // c0c2 + c1^2 reduces to zero; the pivot representative maps c0c2 -> -c1^2
        let zero = reduce_mod_ideal(&el("c[1,0]*c[1,2] + c[1,1]*c[1,1]"), IdealVariant::I).unwrap();
        assert!(zero.is_zero());
        let r = reduce_mod_ideal(&el("c[1,0]*c[1,2]"), IdealVariant::I).unwrap();
        assert_eq!(r, el("-c[1,1]*c[1,1]"));
        let gv = reduce_mod_ideal(&el("h[1,0]*c[1,0]"), IdealVariant::I).unwrap();
        assert_eq!(gv, el("h[1,0]*c[1,0]"));
        assert!(reduce_mod_ideal(&Element::zero(ctx1()), IdealVariant::I)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn i_and_iprime_agree_at_q1() {
        for degree in 0..=6 {
            for order in 0..=4 {
                let a = ideal_slice(IdealVariant::I, ctx1(), degree, order);
                let b = ideal_slice(IdealVariant::IPrime, ctx1(), degree, order);
                assert!(
                    a.ideal.same_space(&b.ideal),
                    "slices differ at ({degree}, {order})"
                );
            }
        }
    }

    #[test]
    fn closure_depth_cap_changes_membership() {
        // with full closure c1 c2^2 is trivial; with depth capped at 2 it is not
        let x = el("c[1,1]*c[1,2]*c[1,2]");
        assert!(is_in_ideal(&x, IdealVariant::I).unwrap());
        assert!(!is_in_ideal_capped(&x, IdealVariant::I, 2).unwrap());
    }

    #[test]
    fn nine_of_fourteen_type22_monomials_survive() {
        // at bidegree (6,5), the five type-(2,2) monomials containing c0^2
        // or c0c1 die; the remaining nine span the 5-dimensional quotient
        let ctx = AlgebraContext::unbounded(1, Variant::W);
        let piece = quotient_piece(ctx, 6, 5);
        let typed: Vec<Monomial> = crate::basis::enumerate_basis_typed(ctx, 6, 5, (2, 2));
        assert_eq!(typed.len(), 14);
        let mut surviving = Vec::new();
        for m in typed {
            let x = Element::from_monomial(ctx, m.clone());
            if !piece.reduce(&x).unwrap().is_zero() {
                surviving.push(piece.coords(&x).unwrap());
            }
        }
        assert_eq!(surviving.len(), 9);
        let span = crate::linalg::Subspace::from_spanning(piece.dim(), &surviving);
        assert_eq!(span.dim(), 5);
    }

    #[test]
    fn quotient_piece_coordinates_roundtrip() {
        let ctx = AlgebraContext::unbounded(1, Variant::W);
        let piece = quotient_piece(ctx, 4, 2);
        // ambient: c0c2, c1^2, h-type monomials of (4,2)
        let x = parse_element("h[1,0]*h[1,2]*c[1,0] + 5 c[1,0]*c[1,2]", ctx).unwrap();
        let coords = piece.coords(&x).unwrap();
        let back = piece.element_from_coords(&coords);
        assert_eq!(piece.reduce(&x).unwrap(), back);
    }
}

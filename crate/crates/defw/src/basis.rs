//! Exhaustive enumeration of monomial bases of bigraded pieces.

use crate::context::AlgebraContext;
use crate::monomial::{Generator, Monomial};

/// The complete, duplicate-free, sorted list of canonical monomials of the
/// free algebra with the given degree and total order. Generator orders are
/// bounded by the total order (and by r when finite), so the list is finite.
/// Quotient filtering happens downstream.
pub fn enumerate_basis(ctx: AlgebraContext, degree: u32, order: u32) -> Vec<Monomial> {
    let max_gen_order = ctx.r.cap(order);
    let mut out = Vec::new();

    // candidate generators, each sorted ascending in the canonical order
    let h_gens: Vec<Generator> = (1..=ctx.q)
        .flat_map(|i| (0..=max_gen_order).map(move |o| Generator::h(i, o)))
        .collect();
    let c_gens: Vec<Generator> = (1..=ctx.q)
        .flat_map(|i| (0..=max_gen_order).map(move |o| Generator::c(i, o)))
        .collect();
    let mut h_sorted = h_gens;
    h_sorted.sort();
    let mut c_sorted = c_gens;
    c_sorted.sort();

    let max_h = (degree as usize).min(h_sorted.len());
    for a in 0..=max_h {
        let rest = degree as i64 - a as i64;
        if rest < 0 || rest % 2 != 0 {
            continue;
        }
        let b = (rest / 2) as usize;
        let mut h_part = Vec::with_capacity(a);
        pick_strict(
            &h_sorted,
            0,
            a,
            order,
            &mut h_part,
            &mut |h_part, h_order| {
                let c_order = order - h_order;
                let mut c_part = Vec::with_capacity(b);
                pick_weak(&c_sorted, 0, b, c_order, &mut c_part, &mut |c_part| {
                    let word: Vec<Generator> =
                        h_part.iter().chain(c_part.iter()).copied().collect();
                    let (sign, m) = Monomial::from_word(&word).expect("distinct by construction");
                    debug_assert_eq!(sign, 1);
                    out.push(m);
                });
            },
        );
    }

    out.sort();
    out.dedup();
    out
}

/// Basis of the type-(a, b) sub-piece.
pub fn enumerate_basis_typed(
    ctx: AlgebraContext,
    degree: u32,
    order: u32,
    ty: (u32, u32),
) -> Vec<Monomial> {
    enumerate_basis(ctx, degree, order)
        .into_iter()
        .filter(|m| m.ty() == ty)
        .collect()
}

// strictly increasing choices of `want` generators with orders summing to <= budget;
// the callback receives the chosen prefix and its total order
fn pick_strict(
    gens: &[Generator],
    from: usize,
    want: usize,
    budget: u32,
    acc: &mut Vec<Generator>,
    f: &mut impl FnMut(&[Generator], u32),
) {
    if want == 0 {
        let used: u32 = acc.iter().map(|g| g.order).sum();
        f(acc, used);
        return;
    }
    for i in from..gens.len() {
        let g = gens[i];
        let used: u32 = acc.iter().map(|x| x.order).sum();
        if used + g.order > budget {
            continue;
        }
        acc.push(g);
        pick_strict(gens, i + 1, want - 1, budget, acc, f);
        acc.pop();
    }
}

// weakly increasing choices of `want` generators with orders summing to exactly `budget`
fn pick_weak(
    gens: &[Generator],
    from: usize,
    want: usize,
    budget: u32,
    acc: &mut Vec<Generator>,
    f: &mut impl FnMut(&[Generator]),
) {
    if want == 0 {
        if budget == 0 {
            f(acc);
        }
        return;
    }
    for i in from..gens.len() {
        let g = gens[i];
        if g.order > budget {
            continue;
        }
        acc.push(g);
        pick_weak(gens, i, want - 1, budget - g.order, acc, f);
        acc.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pieces_q1() {
        let ctx = AlgebraContext::free(1);
        let b = enumerate_basis(ctx, 3, 0);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].to_string(), "h[1,0]*c[1,0]");

        let b = enumerate_basis(ctx, 1, 4);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].to_string(), "h[1,4]");

        // degree 0 piece is the unit
        let b = enumerate_basis(ctx, 0, 0);
        assert_eq!(b.len(), 1);
        assert!(b[0].is_one());
        assert!(enumerate_basis(ctx, 0, 1).is_empty());
    }

    #[test]
    fn type_22_piece_at_degree6_order5() {
        // free type-(2,2) monomials of bidegree (6,5) at q=1; the nine of
        // them that avoid c[1,0]^2 and c[1,0]*c[1,1] are the interesting ones
        let ctx = AlgebraContext::free(1);
        let b = enumerate_basis_typed(ctx, 6, 5, (2, 2));
        assert_eq!(b.len(), 14);
        let names: Vec<String> = b.iter().map(|m| m.to_string()).collect();
        for expect in [
            "h[1,0]*h[1,1]*c[1,0]*c[1,4]",
            "h[1,0]*h[1,1]*c[1,1]*c[1,3]",
            "h[1,0]*h[1,1]*c[1,2]*c[1,2]",
            "h[1,0]*h[1,2]*c[1,0]*c[1,3]",
            "h[1,0]*h[1,2]*c[1,1]*c[1,2]",
            "h[1,0]*h[1,3]*c[1,0]*c[1,2]",
            "h[1,0]*h[1,3]*c[1,1]*c[1,1]",
            "h[1,1]*h[1,2]*c[1,0]*c[1,2]",
            "h[1,1]*h[1,2]*c[1,1]*c[1,1]",
        ] {
            assert!(names.iter().any(|n| n == expect), "missing {expect}");
        }
    }

    #[test]
    fn every_entry_has_requested_bidegree() {
        let ctx = AlgebraContext::free(2);
        for degree in 0..=5 {
            for order in 0..=3 {
                for m in enumerate_basis(ctx, degree, order) {
                    assert_eq!(m.degree(), degree);
                    assert_eq!(m.order(), order);
                }
            }
        }
    }
}

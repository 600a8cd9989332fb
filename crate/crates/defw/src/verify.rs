//! Property suites: randomized identity checks, ideal stability sweeps,
//! the eigenstructure batteries, and the rigidity computation. The CLI
//! `verify` command and the acceptance tests both drive these.

use num_traits::Zero;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::basis::enumerate_basis;
use crate::cohomology::{cochain_space, cohomology, delta_matrix_on_cohomology, SpaceSpec};
use crate::context::{AlgebraContext, Result, Variant};
use crate::derivation::{d, delta, delta_i, k_i, k_total, l_op, sigma, sigma_prime};
use crate::element::{rat, Element, Rat};
use crate::ideal::{ideal_slice, is_in_ideal, quotient_piece, IdealVariant};
use crate::invariants::{
    check_ad_invariance, chern_poly_jet, elementary_symmetric, trace, TruncPolyMatrix,
};
use crate::linalg::RatMatrix;
use crate::monomial::Monomial;
use crate::projector::{
    delta_sigma, delta_sigma_prime, lambda_eigenvalue, projector_p, projector_p_prime,
};

#[derive(Debug, Clone)]
pub struct PropertyCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl PropertyCheck {
    fn pass(name: &str, detail: String) -> Self {
        PropertyCheck {
            name: name.into(),
            passed: true,
            detail,
        }
    }

    fn fail(name: &str, detail: String) -> Self {
        PropertyCheck {
            name: name.into(),
            passed: false,
            detail,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: u32,
    pub q_max: u32,
    pub degree_max: u32,
    pub order_max: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            trials: 500,
            q_max: 2,
            degree_max: 8,
            order_max: 6,
        }
    }
}

fn random_monomial(
    rng: &mut ChaCha8Rng,
    ctx: AlgebraContext,
    max_degree: u32,
    max_order: u32,
) -> Monomial {
    loop {
        let degree = rng.gen_range(0..=max_degree);
        let order = rng.gen_range(0..=max_order);
        let basis = enumerate_basis(ctx, degree, order);
        if !basis.is_empty() {
            return basis[rng.gen_range(0..basis.len())].clone();
        }
    }
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Rat {
    let num = loop {
        let n = rng.gen_range(-10..=10i64);
        if n != 0 {
            break n;
        }
    };
    rat(num, rng.gen_range(1..=10i64))
}

fn random_element(
    rng: &mut ChaCha8Rng,
    ctx: AlgebraContext,
    max_degree: u32,
    max_order: u32,
    max_terms: usize,
) -> Element {
    let mut e = Element::zero(ctx);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let m = random_monomial(rng, ctx, max_degree, max_order);
        e.add_term(m, random_coeff(rng));
    }
    e
}

/// One randomized identity: runs `trials` cases, reports the first failure.
fn run_trials(
    name: &str,
    trials: u32,
    mut case: impl FnMut(u32) -> Result<Option<String>>,
) -> PropertyCheck {
    for t in 0..trials {
        match case(t) {
            Ok(None) => {}
            Ok(Some(counterexample)) => {
                return PropertyCheck::fail(name, format!("trial {t}: {counterexample}"));
            }
            Err(e) => return PropertyCheck::fail(name, format!("trial {t}: error {e}")),
        }
    }
    PropertyCheck::pass(name, format!("{trials} randomized trials"))
}

// ---------------------------------------------------------------------------
// algebra_core properties

pub fn algebra_suite(cfg: &VerifyConfig) -> Vec<PropertyCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    let ctxs: Vec<AlgebraContext> = (1..=cfg.q_max).map(AlgebraContext::free).collect();

    out.push(run_trials(
        "canonicalization_idempotent",
        cfg.trials,
        |_| {
            let ctx = ctxs[rng.gen_range(0..ctxs.len())];
            let e = random_element(&mut rng, ctx, 6, 5, 4);
            let re = e.try_mul(&Element::one(ctx))?;
            Ok((re != e).then(|| format!("{e} changed under re-canonicalization")))
        },
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    out.push(run_trials("graded_commutativity", cfg.trials, |_| {
        let ctx = ctxs[rng.gen_range(0..ctxs.len())];
        let a = Element::from_monomial(ctx, random_monomial(&mut rng, ctx, 5, 4));
        let b = Element::from_monomial(ctx, random_monomial(&mut rng, ctx, 5, 4));
        let (da, db) = (a.bidegree().unwrap().0, b.bidegree().unwrap().0);
        let ab = a.try_mul(&b)?;
        let mut ba = b.try_mul(&a)?;
        if (da * db) % 2 == 1 {
            ba = -&ba;
        }
        Ok((ab != ba).then(|| format!("a = {a}, b = {b}")))
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(2));
    out.push(run_trials("grading_additivity", cfg.trials, |_| {
        let ctx = ctxs[rng.gen_range(0..ctxs.len())];
        let a = random_monomial(&mut rng, ctx, 5, 4);
        let b = random_monomial(&mut rng, ctx, 5, 4);
        if let Some((_, m)) = a.mul(&b) {
            let ga = a.gradings();
            let gb = b.gradings();
            let gm = m.gradings();
            let ok = gm.degree == ga.degree + gb.degree
                && gm.order == ga.order + gb.order
                && gm.length == ga.length + gb.length
                && gm.norm == ga.norm + gb.norm;
            Ok((!ok).then(|| format!("a = {a}, b = {b}")))
        } else {
            Ok(None)
        }
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(3));
    out.push(run_trials("enumeration_complete", cfg.trials, |_| {
        let ctx = ctxs[rng.gen_range(0..ctxs.len())];
        let m = random_monomial(&mut rng, ctx, 6, 5);
        let basis = enumerate_basis(ctx, m.degree(), m.order());
        Ok((!basis.contains(&m)).then(|| format!("{m} missing from its piece")))
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(4));
    out.push(run_trials("restriction_homomorphism", cfg.trials, |_| {
        let q = rng.gen_range(2..=cfg.q_max.max(2));
        let ctx = AlgebraContext::free(q);
        let a = random_element(&mut rng, ctx, 5, 3, 3);
        let b = random_element(&mut rng, ctx, 5, 3, 3);
        let lhs = a.try_mul(&b)?.restrict_codim()?;
        let rhs = a.restrict_codim()?.try_mul(&b.restrict_codim()?)?;
        Ok((lhs != rhs).then(|| format!("a = {a}, b = {b}")))
    }));

    out
}

// ---------------------------------------------------------------------------
// derivation identities

pub fn derivation_suite(cfg: &VerifyConfig) -> Vec<PropertyCheck> {
    let mut out = Vec::new();
    let ctxs: Vec<AlgebraContext> = (1..=cfg.q_max).map(AlgebraContext::free).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(10));
    out.push(run_trials("d_squared_zero", cfg.trials, |_| {
        let ctx = ctxs[rng.gen_range(0..ctxs.len())];
        let x = random_element(&mut rng, ctx, 6, 5, 4);
        let dd = d(&d(&x)?)?;
        Ok((!dd.is_zero()).then(|| format!("d^2({x}) = {dd}")))
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(11));
    out.push(run_trials("order_commutator", cfg.trials, |_| {
        let ctx = ctxs[rng.gen_range(0..ctxs.len())];
        let m = random_monomial(&mut rng, ctx, 6, 5);
        let x = Element::from_monomial(ctx, m.clone());
        let lhs = &sigma(&delta(&x)?)? - &delta(&sigma(&x)?)?;
        let rhs = x.scale(&rat(m.order() as i64, 1));
        Ok((lhs != rhs).then(|| format!("x = {x}")))
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(12));
    out.push(run_trials("length_commutator", cfg.trials, |_| {
        let ctx = ctxs[rng.gen_range(0..ctxs.len())];
        let m = random_monomial(&mut rng, ctx, 6, 5);
        let x = Element::from_monomial(ctx, m.clone());
        let lhs = &sigma_prime(&delta(&x)?)? - &delta(&sigma_prime(&x)?)?;
        let rhs = x.scale(&rat(m.length() as i64, 1));
        Ok((lhs != rhs).then(|| format!("x = {x}")))
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(13));
    out.push(run_trials("homotopy_per_index", cfg.trials, |_| {
        let ctx = ctxs[rng.gen_range(0..ctxs.len())];
        let x = random_element(&mut rng, ctx, 6, 4, 3);
        let i = rng.gen_range(1..=ctx.q);
        let lhs = delta_i(&x, i)?;
        let rhs = &k_i(&d(&x)?, i)? + &d(&k_i(&x, i)?)?;
        Ok((lhs != rhs).then(|| format!("x = {x}, i = {i}")))
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(14));
    out.push(run_trials("homotopy_total", cfg.trials, |_| {
        let ctx = ctxs[rng.gen_range(0..ctxs.len())];
        let x = random_element(&mut rng, ctx, 6, 4, 3);
        let lhs = delta(&x)?;
        let rhs = &k_total(&d(&x)?)? + &d(&k_total(&x)?)?;
        Ok((lhs != rhs).then(|| format!("x = {x}")))
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(15));
    out.push(run_trials("norm_of_homotopy_image", cfg.trials, |_| {
        let ctx = ctxs[rng.gen_range(0..ctxs.len())];
        let m = random_monomial(&mut rng, ctx, 6, 4);
        let x = Element::from_monomial(ctx, m.clone());
        let img = k_total(&x)?;
        let bound = m.norm().saturating_sub(1);
        let bad = img.terms().find(|(t, _)| t.norm() < bound);
        Ok(bad.map(|(t, _)| format!("K({m}) contains {t} of norm {} < {bound}", t.norm())))
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(16));
    out.push(run_trials("l_homotopy_type_1b", cfg.trials, |_| {
        let ctx = AlgebraContext::free(1);
        // random type (1, b) monomial
        let b = rng.gen_range(0..=3u32);
        let degree = 1 + 2 * b;
        let order = rng.gen_range(0..=5u32);
        let all = enumerate_basis(ctx, degree, order);
        let typed: Vec<&Monomial> = all.iter().filter(|m| m.ty() == (1, b)).collect();
        if typed.is_empty() {
            return Ok(None);
        }
        let w = Element::from_monomial(ctx, typed[rng.gen_range(0..typed.len())].clone());
        let lhs = w.scale(&rat(1 + b as i64, 1));
        let rhs = &l_op(&d(&w)?)? + &d(&l_op(&w)?)?;
        Ok((lhs != rhs).then(|| format!("w = {w}")))
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(17));
    out.push(run_trials("d_delta_commute", cfg.trials, |_| {
        let ctx = ctxs[rng.gen_range(0..ctxs.len())];
        let x = random_element(&mut rng, ctx, 6, 4, 3);
        let lhs = d(&delta(&x)?)?;
        let rhs = delta(&d(&x)?)?;
        Ok((lhs != rhs).then(|| format!("x = {x}")))
    }));

    out
}

// ---------------------------------------------------------------------------
// ideal stability

pub fn ideal_suite(cfg: &VerifyConfig) -> Vec<PropertyCheck> {
    let mut out = Vec::new();
    let degree_max = cfg.degree_max.min(6);
    let order_max = cfg.order_max.min(4);

    for q in 1..=cfg.q_max {
        let ctx = AlgebraContext::free(q);
        for variant in [IdealVariant::I, IdealVariant::IPrime] {
            let tag = match variant {
                IdealVariant::I => "I",
                IdealVariant::IPrime => "Iprime",
                IdealVariant::IPlus => "Iplus",
            };
            let mut ok_d = true;
            let mut ok_delta = true;
            let mut ok_sigma = true;
            let mut detail = String::new();
            'outer: for degree in 0..=degree_max {
                for order in 0..=order_max {
                    let piece = ideal_slice(variant, ctx, degree, order);
                    for row in piece.ideal.rows() {
                        let g = piece.element_from_ambient(row);
                        let dg = d(&g).unwrap();
                        if !is_in_ideal(&dg, variant).unwrap() {
                            ok_d = false;
                            detail = format!("d({g}) escapes {tag} at ({degree},{order})");
                            break 'outer;
                        }
                        let del = delta(&g).unwrap();
                        if !is_in_ideal(&del, variant).unwrap() {
                            ok_delta = false;
                            detail = format!("delta({g}) escapes {tag} at ({degree},{order})");
                            break 'outer;
                        }
                        let sg = sigma(&g).unwrap();
                        if !is_in_ideal(&sg, variant).unwrap() {
                            ok_sigma = false;
                            detail = format!("sigma({g}) escapes {tag} at ({degree},{order})");
                            break 'outer;
                        }
                    }
                }
            }
            let all = ok_d && ok_delta && ok_sigma;
            out.push(if all {
                PropertyCheck::pass(
                    &format!("ideal_stability_d_delta_sigma_{tag}_q{q}"),
                    format!("degrees <= {degree_max}, orders <= {order_max}"),
                )
            } else {
                PropertyCheck::fail(&format!("ideal_stability_d_delta_sigma_{tag}_q{q}"), detail)
            });
        }

        // sigma' preserves I' everywhere
        let mut ok = true;
        let mut detail = format!("degrees <= {degree_max}, orders <= {order_max}");
        'sp: for degree in 0..=degree_max {
            for order in 0..=order_max {
                let piece = ideal_slice(IdealVariant::IPrime, ctx, degree, order);
                for row in piece.ideal.rows() {
                    let g = piece.element_from_ambient(row);
                    let sg = sigma_prime(&g).unwrap();
                    if !is_in_ideal(&sg, IdealVariant::IPrime).unwrap() {
                        ok = false;
                        detail = format!("sigma'({g}) escapes I' at ({degree},{order})");
                        break 'sp;
                    }
                }
            }
        }
        out.push(if ok {
            PropertyCheck::pass(&format!("sigma_prime_preserves_Iprime_q{q}"), detail)
        } else {
            PropertyCheck::fail(&format!("sigma_prime_preserves_Iprime_q{q}"), detail)
        });

        // containments I+ <= I' <= I
        let mut ok = true;
        let mut detail = format!("degrees <= {degree_max}, orders <= {order_max}");
        'cont: for degree in 0..=degree_max {
            for order in 0..=order_max {
                let plus = ideal_slice(IdealVariant::IPlus, ctx, degree, order);
                let prime = ideal_slice(IdealVariant::IPrime, ctx, degree, order);
                let full = ideal_slice(IdealVariant::I, ctx, degree, order);
                if !plus.ideal.is_subspace_of(&prime.ideal)
                    || !prime.ideal.is_subspace_of(&full.ideal)
                {
                    ok = false;
                    detail = format!("containment fails at ({degree},{order})");
                    break 'cont;
                }
            }
        }
        out.push(if ok {
            PropertyCheck::pass(&format!("ideal_containments_q{q}"), detail)
        } else {
            PropertyCheck::fail(&format!("ideal_containments_q{q}"), detail)
        });
    }

    // I = I' exactly when q = 1 on the computed grid
    {
        let ctx = AlgebraContext::free(1);
        let mut ok = true;
        let mut detail = String::from("all computed slices agree");
        'eq: for degree in 0..=degree_max {
            for order in 0..=order_max {
                let a = ideal_slice(IdealVariant::I, ctx, degree, order);
                let b = ideal_slice(IdealVariant::IPrime, ctx, degree, order);
                if !a.ideal.same_space(&b.ideal) {
                    ok = false;
                    detail = format!("I != I' at ({degree},{order}) for q=1");
                    break 'eq;
                }
            }
        }
        out.push(if ok {
            PropertyCheck::pass("i_equals_iprime_q1", detail)
        } else {
            PropertyCheck::fail("i_equals_iprime_q1", detail)
        });
    }

    // sigma' does not preserve I for q = 2: search a witness
    if cfg.q_max >= 2 {
        let ctx = AlgebraContext::free(2);
        let mut witness = None;
        'w: for degree in 0..=degree_max {
            for order in 1..=order_max {
                let piece = ideal_slice(IdealVariant::I, ctx, degree, order);
                for row in piece.ideal.rows() {
                    let g = piece.element_from_ambient(row);
                    let sg = sigma_prime(&g).unwrap();
                    if !sg.is_zero() && !is_in_ideal(&sg, IdealVariant::I).unwrap() {
                        witness = Some(format!("sigma'({g}) = {sg} is outside I"));
                        break 'w;
                    }
                }
            }
        }
        out.push(match witness {
            Some(wit) => PropertyCheck::pass("sigma_prime_leaves_I_q2", wit),
            None => PropertyCheck::fail(
                "sigma_prime_leaves_I_q2",
                "no witness found on the grid; expected one".into(),
            ),
        });
    }

    out
}

// ---------------------------------------------------------------------------
// structure of the order eigentheory (projector batteries, shifts, injectivity)

pub fn structure_suite(cfg: &VerifyConfig) -> Vec<PropertyCheck> {
    let mut out = Vec::new();

    // the induced differential squares to zero on every quotient piece
    for q in 1..=cfg.q_max {
        let ctx = AlgebraContext::unbounded(q, Variant::W);
        let (dmax, omax) = if q == 1 { (cfg.degree_max, cfg.order_max) } else { (6, 3) };
        let mut ok = true;
        let mut detail = format!("degrees <= {dmax}, orders <= {omax}");
        'dd0: for order in 0..=omax {
            for degree in 0..=dmax {
                let piece = quotient_piece(ctx, degree, order);
                let two_up = quotient_piece(ctx, degree + 2, order);
                for repm in &piece.coset_reps {
                    let x = Element::from_monomial(ctx, repm.clone());
                    let ddx = d(&d(&x).unwrap()).unwrap();
                    let coords = two_up.coords(&ddx).unwrap();
                    if coords.iter().any(|c| !c.is_zero()) {
                        ok = false;
                        detail = format!("d^2({repm}) is nonzero mod the ideal at ({degree},{order})");
                        break 'dd0;
                    }
                }
            }
        }
        out.push(if ok {
            PropertyCheck::pass(&format!("induced_d_squares_to_zero_q{q}"), detail)
        } else {
            PropertyCheck::fail(&format!("induced_d_squares_to_zero_q{q}"), detail)
        });
    }

    let grids: Vec<(AlgebraContext, u32, u32, u32)> = {
        let mut g = vec![(
            AlgebraContext::unbounded(1, Variant::W),
            cfg.degree_max,
            cfg.order_max.min(5),
            5,
        )];
        if cfg.q_max >= 2 {
            g.push((AlgebraContext::unbounded(2, Variant::W), 6, 3, 3));
        }
        g
    };

    for (ctx, degree_max, order_max, k_max) in &grids {
        let (ctx, degree_max, order_max, k_max) = (*ctx, *degree_max, *order_max, *k_max);
        let mut completeness = true;
        let mut orthogonality = true;
        let mut eigen = true;
        let mut detail = String::new();
        'grid: for k in 1..=k_max.min(order_max) {
            for degree in 0..=degree_max {
                let piece = quotient_piece(ctx, degree, k);
                for repm in &piece.coset_reps {
                    let x = Element::from_monomial(ctx, repm.clone());
                    let rx = piece.reduce(&x).unwrap();
                    let mut sum = Element::zero(ctx);
                    let mut projections = Vec::new();
                    for m in 1..=k {
                        let px = projector_p(m, k, &x).unwrap();
                        let rpx = piece.reduce(&px).unwrap();
                        sum = &sum + &rpx;
                        projections.push((m, px, rpx));
                    }
                    if piece.reduce(&sum).unwrap() != rx {
                        completeness = false;
                        detail = format!("sum of projectors misses {repm} at ({degree},{k})");
                        break 'grid;
                    }
                    for (m, px, rpx) in &projections {
                        // eigen relation
                        let ds = piece.reduce(&delta_sigma(px).unwrap()).unwrap();
                        if ds != rpx.scale(&lambda_eigenvalue(*m, k)) {
                            eigen = false;
                            detail = format!("eigen relation fails for m={m} on {repm}");
                            break 'grid;
                        }
                        // orthogonal idempotence
                        for (m2, px2, rpx2) in &projections {
                            let pp = piece.reduce(&projector_p(*m, k, px2).unwrap()).unwrap();
                            let expect = if m == m2 {
                                rpx2.clone()
                            } else {
                                Element::zero(ctx)
                            };
                            let _ = px;
                            if pp != expect {
                                orthogonality = false;
                                detail =
                                    format!("p_{m} p_{m2} != delta on {repm} at ({degree},{k})");
                                break 'grid;
                            }
                        }
                    }
                }
            }
        }
        let q = ctx.q;
        out.push(if completeness {
            PropertyCheck::pass(
                &format!("projector_completeness_q{q}"),
                format!(
                    "orders <= {}, degrees <= {degree_max}",
                    k_max.min(order_max)
                ),
            )
        } else {
            PropertyCheck::fail(&format!("projector_completeness_q{q}"), detail.clone())
        });
        out.push(if orthogonality {
            PropertyCheck::pass(&format!("projector_orthogonality_q{q}"), String::new())
        } else {
            PropertyCheck::fail(&format!("projector_orthogonality_q{q}"), detail.clone())
        });
        out.push(if eigen {
            PropertyCheck::pass(&format!("projector_eigenvalues_q{q}"), String::new())
        } else {
            PropertyCheck::fail(&format!("projector_eigenvalues_q{q}"), detail.clone())
        });
    }

    // sigma shift between eigenspaces, and (1/lambda) delta sigma = id
    for (ctx, degree_max, order_max) in [
        (
            AlgebraContext::unbounded(1, Variant::W),
            cfg.degree_max,
            cfg.order_max.min(5),
        ),
        (AlgebraContext::unbounded(2, Variant::W), 6, 3),
    ] {
        if ctx.q > cfg.q_max {
            continue;
        }
        let mut ok = true;
        let mut detail = format!("orders <= {order_max}, degrees <= {degree_max}");
        'shift: for k in 2..=order_max {
            for degree in 0..=degree_max {
                for m in 1..=k {
                    let lambda = lambda_eigenvalue(m, k);
                    let space =
                        cochain_space(ctx, degree, k, &SpaceSpec::eigen(lambda.clone())).unwrap();
                    let target_lambda = &lambda - rat(k as i64 - 1, 1);
                    let target =
                        cochain_space(ctx, degree, k - 1, &SpaceSpec::eigen(target_lambda.clone()))
                            .unwrap();
                    for row in space.sub.rows() {
                        let x = space.piece.element_from_coords(row);
                        let sx = space.piece.ctx; // context check only
                        let _ = sx;
                        let img = sigma(&x).unwrap();
                        let coords = target.piece.coords(&img).unwrap();
                        if !target.sub.contains(&coords) {
                            ok = false;
                            detail = format!(
                                "sigma image of eigenvector leaves the shifted eigenspace at ({degree},{k}), m={m}"
                            );
                            break 'shift;
                        }
                        if !lambda.is_zero() {
                            // (1/lambda) delta sigma = id on E_lambda
                            let back = delta(&img).unwrap().scale(&lambda.recip());
                            if space.piece.reduce(&back).unwrap() != space.piece.reduce(&x).unwrap()
                            {
                                ok = false;
                                detail = format!(
                                    "delta/lambda fails to invert sigma at ({degree},{k}), m={m}"
                                );
                                break 'shift;
                            }
                        }
                    }
                }
            }
        }
        let q = ctx.q;
        out.push(if ok {
            PropertyCheck::pass(&format!("sigma_shift_and_inverse_q{q}"), detail)
        } else {
            PropertyCheck::fail(&format!("sigma_shift_and_inverse_q{q}"), detail)
        });
    }

    // delta injectivity on cohomology pieces
    {
        let ctx = AlgebraContext::unbounded(1, Variant::W);
        let mut ok = true;
        let mut detail = String::new();
        'inj: for order in 0..=cfg.order_max.min(5) {
            // degree zero is the scalars; the unit class is killed by delta
            for degree in 1..=cfg.degree_max {
                let from = cohomology(ctx, degree, order).unwrap();
                if from.dim() == 0 {
                    continue;
                }
                let to = cohomology(ctx, degree, order + 1).unwrap();
                let m = delta_matrix_on_cohomology(&from, &to).unwrap();
                if m.rank() < from.dim() {
                    ok = false;
                    detail = format!("delta drops rank at ({degree},{order}) for q=1");
                    break 'inj;
                }
            }
        }
        out.push(if ok {
            PropertyCheck::pass(
                "delta_injective_on_cohomology_q1",
                format!(
                    "orders <= {}, degrees <= {}",
                    cfg.order_max.min(5),
                    cfg.degree_max
                ),
            )
        } else {
            PropertyCheck::fail("delta_injective_on_cohomology_q1", detail)
        });
    }
    if cfg.q_max >= 2 {
        let ctx = AlgebraContext::unbounded(2, Variant::WPrime);
        let mut ok = true;
        let mut detail = String::new();
        'inj2: for order in 0..=3u32 {
            for degree in 1..=6u32 {
                let from = cohomology(ctx, degree, order).unwrap();
                if from.dim() == 0 {
                    continue;
                }
                let to = cohomology(ctx, degree, order + 1).unwrap();
                let m = delta_matrix_on_cohomology(&from, &to).unwrap();
                if m.rank() < from.dim() {
                    ok = false;
                    detail = format!("delta' drops rank at ({degree},{order}) for q=2");
                    break 'inj2;
                }
            }
        }
        out.push(if ok {
            PropertyCheck::pass(
                "delta_injective_on_cohomology_q2_prime",
                "orders <= 3, degrees <= 6".into(),
            )
        } else {
            PropertyCheck::fail("delta_injective_on_cohomology_q2_prime", detail)
        });
    }

    // double-entry bookkeeping: eigenspaces recomputed on cohomology
    // coordinates agree with the cohomology of the eigen sub-complex
    {
        let ctx = AlgebraContext::unbounded(1, Variant::W);
        let mut ok = true;
        let mut detail = String::new();
        'dd: for order in 0..=cfg.order_max.min(5) {
            for degree in 0..=cfg.degree_max {
                let h = cohomology(ctx, degree, order).unwrap();
                if h.dim() == 0 {
                    continue;
                }
                // matrix of delta∘sigma on class coordinates
                let n = h.dim();
                let mut m = RatMatrix::zeros(n, n);
                for (j, e) in h.basis().iter().enumerate() {
                    let img = delta_sigma(e).unwrap();
                    let coords = h.class_coords(&img).unwrap();
                    for (i, c) in coords.into_iter().enumerate() {
                        m[(i, j)] = c;
                    }
                }
                for mm in 1..=order.max(1) {
                    let lambda = lambda_eigenvalue(mm.min(order.max(1)), order.max(1));
                    if order == 0 && !lambda.is_zero() {
                        continue;
                    }
                    let mut shifted = m.clone();
                    for i in 0..n {
                        shifted[(i, i)] -= &lambda;
                    }
                    let eig_dim = n - shifted.rank();
                    let f =
                        crate::cohomology::f_lambda(ctx, lambda.clone(), degree, order).unwrap();
                    if f.dim() != eig_dim {
                        ok = false;
                        detail = format!(
                            "F_lambda mismatch at ({degree},{order}), lambda = {lambda}: complex route {} vs eigen route {eig_dim}",
                            f.dim()
                        );
                        break 'dd;
                    }
                }
            }
        }
        out.push(if ok {
            PropertyCheck::pass(
                "eigenspace_double_entry_q1",
                "complex route matches cohomology-level eigenspaces".into(),
            )
        } else {
            PropertyCheck::fail("eigenspace_double_entry_q1", detail)
        });
    }

    // representative independence of class operations
    {
        let ctx = AlgebraContext::unbounded(1, Variant::W);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(40));
        let check = run_trials("class_ops_representative_independent", 50, |_| {
            // a nonzero class with room above and below
            let h = cohomology(ctx, 3, 1)?;
            let x = h.basis()[0].clone();
            // perturb by a coboundary and an ideal element of the right bidegree
            let prev = enumerate_basis(ctx, 2, 1);
            let cob = d(&Element::from_monomial(
                ctx,
                prev[rng.gen_range(0..prev.len())].clone(),
            ))?;
            let piece = quotient_piece(ctx, 3, 1);
            let ideal_rows = piece.ideal.rows();
            let mut pert = &x + &cob.scale(&random_coeff(&mut rng));
            if !ideal_rows.is_empty() {
                let g = piece.element_from_ambient(&ideal_rows[rng.gen_range(0..ideal_rows.len())]);
                pert = &pert + &g.scale(&random_coeff(&mut rng));
            }
            let c1 = h.class_of(&x)?;
            let c2 = h.class_of(&pert)?;
            if c1.coords != c2.coords {
                return Ok(Some(
                    "class changed under representative perturbation".into(),
                ));
            }
            // products with delta^2 GV
            let gv = Element::from_generators(ctx, &[(1, 0)], &[(1, 0)])?;
            let other = cohomology(ctx, 3, 2)?.class_of(&delta(&delta(&gv)?)?)?;
            let p1 = crate::cohomology::class_mul(&c1, &other)?;
            let p2 = crate::cohomology::class_mul(&c2, &other)?;
            Ok((p1.coords != p2.coords)
                .then(|| "product depends on the representative".to_string()))
        });
        out.push(check);
    }

    // length projectors on the classical Bott quotient at q = 2
    if cfg.q_max >= 2 {
        let ctx = AlgebraContext::unbounded(2, Variant::WPrime);
        let mut ok = true;
        let mut detail = String::new();
        'pp: for (degree, k) in [(3u32, 1u32), (4, 2), (5, 2), (6, 2)] {
            let piece = quotient_piece(ctx, degree, k);
            for repm in &piece.coset_reps {
                let l = repm.length();
                if l == 0 {
                    continue;
                }
                let x = Element::from_monomial(ctx, repm.clone());
                let rx = piece.reduce(&x).unwrap();
                let mut sum = Element::zero(ctx);
                for i in 0..=k {
                    let p = projector_p_prime(i, k, l, &x).unwrap();
                    let rp = piece.reduce(&p).unwrap();
                    // idempotence and the eigen relation, modulo the ideal
                    let pp = piece
                        .reduce(&projector_p_prime(i, k, l, &p).unwrap())
                        .unwrap();
                    if pp != rp {
                        ok = false;
                        detail = format!("p' not idempotent on {repm} (i={i})");
                        break 'pp;
                    }
                    let ds = piece.reduce(&delta_sigma_prime(&p).unwrap()).unwrap();
                    if ds != rp.scale(&rat((i * l) as i64, 1)) {
                        ok = false;
                        detail = format!("p' eigen relation fails on {repm} (i={i})");
                        break 'pp;
                    }
                    sum = &sum + &rp;
                }
                if piece.reduce(&sum).unwrap() != rx {
                    ok = false;
                    detail = format!("p' decomposition misses {repm}");
                    break 'pp;
                }
            }
        }
        out.push(if ok {
            PropertyCheck::pass(
                "length_projectors_q2_prime",
                "sample bidegrees on the Bott quotient".into(),
            )
        } else {
            PropertyCheck::fail("length_projectors_q2_prime", detail)
        });
    }

    out
}

// ---------------------------------------------------------------------------
// restriction rigidity: derivative classes of restricted cocycles vanish

pub fn rigidity_suite(degree_max: u32, order_max: u32) -> Vec<PropertyCheck> {
    let mut out = Vec::new();
    let plus2 = AlgebraContext::unbounded(2, Variant::WPlus);
    let w1 = AlgebraContext::unbounded(1, Variant::W);

    let mut ok = true;
    let mut count = 0usize;
    let mut detail = String::new();
    'outer: for order in 0..=order_max {
        for degree in 0..=degree_max {
            let h = match cohomology(plus2, degree, order) {
                Ok(h) => h,
                Err(e) => {
                    ok = false;
                    detail = format!("cohomology failed at ({degree},{order}): {e}");
                    break 'outer;
                }
            };
            let piece = &h.piece;
            for row in h.cocycles.rows() {
                let phi = piece.element_from_coords(row);
                count += 1;

                // homotopy witness: every monomial of d(phi) has norm > 2,
                // and the image of K(d phi) under restriction lies in the
                // codimension-one ideal
                let dphi = d(&phi).unwrap();
                if let Some((bad, _)) = dphi.terms().find(|(m, _)| m.norm() <= 2) {
                    ok = false;
                    detail =
                        format!("d(cocycle) has low-norm monomial {bad} at ({degree},{order})");
                    break 'outer;
                }
                let kd = k_total(&dphi).unwrap();
                let kd_res = kd.restrict_codim().unwrap().into_ctx(w1).unwrap();
                if !kd_res.is_zero() && !is_in_ideal(&kd_res, IdealVariant::I).unwrap() {
                    ok = false;
                    detail = format!("restricted K(d phi) escapes the ideal at ({degree},{order})");
                    break 'outer;
                }

                // the restricted class has trivial derivative
                let res = phi.restrict_codim().unwrap().into_ctx(w1).unwrap();
                let dres = delta(&res).unwrap();
                let target = cohomology(w1, degree, order + 1).unwrap();
                match target.class_of(&dres) {
                    Ok(class) => {
                        if !class.is_zero() {
                            ok = false;
                            detail = format!(
                                "delta of a restricted class is nonzero at ({degree},{order})"
                            );
                            break 'outer;
                        }
                    }
                    Err(e) => {
                        ok = false;
                        detail = format!("restricted image not a cocycle: {e}");
                        break 'outer;
                    }
                }
            }
        }
    }
    out.push(if ok {
        PropertyCheck::pass(
            "restriction_rigidity_desk_scale",
            format!("{count} cocycles over degrees <= {degree_max}, orders <= {order_max}"),
        )
    } else {
        PropertyCheck::fail("restriction_rigidity_desk_scale", detail)
    });
    out
}

// ---------------------------------------------------------------------------
// block group invariants

pub fn invariants_suite(cfg: &VerifyConfig, ad_trials: u32) -> Vec<PropertyCheck> {
    let mut out = Vec::new();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(60));
    out.push(run_trials("block_isomorphism_roundtrip", 50, |_| {
        let q = rng.gen_range(1..=3usize);
        let r = rng.gen_range(1..=3usize);
        let x = TruncPolyMatrix::random(&mut rng, q, r);
        let y = TruncPolyMatrix::random(&mut rng, q, r);
        let back = TruncPolyMatrix::from_block(&x.to_block(), q, r).unwrap();
        if back != x {
            return Ok(Some("round trip failed".into()));
        }
        Ok((x.mul(&y).to_block() != x.to_block().mul(&y.to_block()))
            .then(|| "block map not multiplicative".to_string()))
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(61));
    out.push(run_trials("power_trace_generating_identity", 50, |_| {
        // traces of the power blocks read off the block-matrix powers
        let q = rng.gen_range(1..=3usize);
        let r = rng.gen_range(1..=3usize);
        let x = TruncPolyMatrix::random(&mut rng, q, r);
        let k = rng.gen_range(0..=4usize);
        let blocks = x.power_blocks(k);
        let mut bp = RatMatrix::identity((r + 1) * q);
        for _ in 0..k {
            bp = bp.mul(&x.to_block());
        }
        let back = TruncPolyMatrix::from_block(&bp, q, r).unwrap();
        for l in 0..=r {
            if trace(back.coeff(l)) != trace(&blocks[l]) {
                return Ok(Some(format!("trace mismatch at k={k}, l={l}")));
            }
        }
        Ok(None)
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(62));
    out.push(run_trials("chern_constant_term", 50, |_| {
        let q = rng.gen_range(1..=3usize);
        let r = rng.gen_range(1..=2usize);
        let x = TruncPolyMatrix::random(&mut rng, q, r);
        for k in 1..=q as u32 {
            let v = chern_poly_jet(&x, k, 0).unwrap();
            if v.rational_part != elementary_symmetric(x.coeff(0), k as usize) {
                return Ok(Some(format!("c_(k,0) mismatch at q={q}, k={k}")));
            }
        }
        Ok(None)
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(63));
    out.push(run_trials("ad_invariance", ad_trials, |_| {
        let q = rng.gen_range(1..=3usize);
        let r = rng.gen_range(1..=3usize);
        let x = TruncPolyMatrix::random(&mut rng, q, r);
        let g = TruncPolyMatrix::random_invertible(&mut rng, q, r);
        let k = rng.gen_range(1..=q) as u32;
        let l = rng.gen_range(0..=r) as u32;
        Ok((!check_ad_invariance(k, l, &x, &g).unwrap())
            .then(|| format!("invariance fails at q={q}, r={r}, k={k}, l={l}")))
    }));

    out
}

/// Everything, in the order the CLI reports it.
pub fn run_all(cfg: &VerifyConfig) -> Vec<PropertyCheck> {
    let mut out = Vec::new();
    out.extend(algebra_suite(cfg));
    out.extend(derivation_suite(cfg));
    out.extend(ideal_suite(cfg));
    out.extend(structure_suite(cfg));
    out.extend(rigidity_suite(7.min(cfg.degree_max), 2.min(cfg.order_max)));
    out.extend(invariants_suite(cfg, 100.max(cfg.trials / 5)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        let cfg = VerifyConfig {
            seed: 42,
            trials: 40,
            q_max: 2,
            degree_max: 5,
            order_max: 3,
        };
        for check in algebra_suite(&cfg)
            .into_iter()
            .chain(derivation_suite(&cfg))
            .chain(ideal_suite(&cfg))
        {
            assert!(check.passed, "{}: {}", check.name, check.detail);
        }
    }
}

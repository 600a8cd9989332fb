//! Report builders for the command line surface: cohomology grids, the
//! verification run, the invariant-polynomial tables, and the full
//! order-five classification report with change-of-basis certificates.
//!
//! Payloads are plain JSON values (coefficients as num/den strings) and
//! render to markdown or TSV; a record is byte-stable for a fixed
//! configuration and engine version.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cohomology::{cochain_space, cohomology, cohomology_with, SpaceSpec};
use crate::context::{AlgebraContext, DefwError, JetOrder, Result, Variant};
use crate::derivation::{power, sigma, Derivation};
use crate::element::{Element, Rat};
use crate::ideal::{is_in_ideal, is_in_ideal_capped, quotient_piece, IdealVariant};
use crate::invariants::{
    chern_character_coeff, chern_poly_jet, power_trace_coeff, TruncPolyMatrix,
};
use crate::linalg::{RatMatrix, Subspace};
use crate::projector::projector_p;
use crate::serialize::{element_to_json, jet_order_to_json, rat_display, rat_to_json};
use crate::text::parse_element;
use crate::verify::{run_all, PropertyCheck, VerifyConfig};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Markdown,
    Tsv,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub q: u32,
    pub r: JetOrder,
    pub variant: Variant,
    pub degrees: (u32, u32),
    pub orders: (u32, u32),
    pub lambda: Option<Rat>,
    pub ty: Option<(u32, u32)>,
    pub seed: u64,
    pub trials: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q: 1,
            r: JetOrder::Unbounded,
            variant: Variant::W,
            degrees: (0, 8),
            orders: (0, 5),
            lambda: None,
            ty: None,
            seed: 42,
            trials: 500,
        }
    }
}

impl RunConfig {
    pub fn ctx(&self) -> Result<AlgebraContext> {
        AlgebraContext::new(self.q, self.r, self.variant)
    }

    fn echo(&self) -> Value {
        json!({
            "q": self.q,
            "r": jet_order_to_json(self.r),
            "variant": self.variant.to_string(),
            "degrees": [self.degrees.0, self.degrees.1],
            "orders": [self.orders.0, self.orders.1],
            "lambda": self.lambda.as_ref().map(rat_display),
            "type": self.ty.map(|(a, b)| json!([a, b])),
            "seed": self.seed,
            "trials": self.trials,
        })
    }
}

#[derive(Debug, Clone)]
pub struct ReportRecord {
    pub command: String,
    pub config: Value,
    pub payload: Value,
    pub engine_version: String,
}

impl ReportRecord {
    fn new(command: &str, config: Value, payload: Value) -> Self {
        ReportRecord {
            command: command.into(),
            config,
            payload,
            engine_version: ENGINE_VERSION.into(),
        }
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "command": self.command,
            "config": self.config,
            "engine_version": self.engine_version,
            "payload": self.payload,
        })
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json_value()).unwrap();
                s.push('\n');
                s
            }
            OutputFormat::Markdown => render_markdown(self),
            OutputFormat::Tsv => render_tsv(self),
        }
    }
}

// ---------------------------------------------------------------------------
// cohomology grids

pub fn cmd_cohomology(cfg: &RunConfig) -> Result<ReportRecord> {
    let ctx = cfg.ctx()?;
    if let Some((a, b)) = cfg.ty {
        if ctx.q != 1 {
            return Err(DefwError::Unsupported(
                "type filters are a codimension-one tool".into(),
            ));
        }
        let _ = (a, b);
    }
    let mut cells: Vec<(u32, u32)> = Vec::new();
    for degree in cfg.degrees.0..=cfg.degrees.1 {
        if let Some((a, b)) = cfg.ty {
            if a + 2 * b != degree {
                continue;
            }
        }
        for order in cfg.orders.0..=cfg.orders.1 {
            cells.push((degree, order));
        }
    }

    let compute = |&(degree, order): &(u32, u32)| -> Result<Value> {
        let spec = SpaceSpec {
            lambda: cfg.lambda.clone(),
            ty: cfg.ty,
        };
        let piece = cohomology_with(ctx, degree, order, spec)?;
        let basis: Vec<Value> = piece.basis().iter().map(element_to_json).collect();
        Ok(json!({
            "degree": degree,
            "order": order,
            "dim": piece.dim(),
            "basis": basis,
        }))
    };

    let results: Result<Vec<Value>> = run_cells(&cells, compute);
    let payload = json!({ "cells": results? });
    Ok(ReportRecord::new("cohomology", cfg.echo(), payload))
}

/// Fan grid cells out to worker threads when DEFW_THREADS allows, keeping
/// the output ordered by grid coordinates.
fn run_cells<T: Send + Sync>(
    cells: &[T],
    compute: impl Fn(&T) -> Result<Value> + Sync,
) -> Result<Vec<Value>> {
    let threads = std::env::var("DEFW_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1);
    match threads {
        Some(1) | None => cells.iter().map(&compute).collect(),
        Some(n) => {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| DefwError::Validation(format!("thread pool: {e}")))?;
            pool.install(|| cells.par_iter().map(&compute).collect())
        }
    }
}

// ---------------------------------------------------------------------------
// verification run

pub fn cmd_verify(cfg: &RunConfig) -> Result<ReportRecord> {
    let vcfg = VerifyConfig {
        seed: cfg.seed,
        trials: cfg.trials,
        q_max: cfg.q.max(2),
        degree_max: cfg.degrees.1,
        order_max: cfg.orders.1,
    };
    let checks = run_all(&vcfg);
    Ok(verify_record(cfg, &checks))
}

pub fn verify_record(cfg: &RunConfig, checks: &[PropertyCheck]) -> ReportRecord {
    let all_passed = checks.iter().all(|c| c.passed);
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
        .collect();
    let payload = json!({ "all_passed": all_passed, "checks": rows });
    ReportRecord::new("verify", cfg.echo(), payload)
}

// ---------------------------------------------------------------------------
// invariant polynomials

pub fn cmd_invariants_eval(cfg: &RunConfig, k: u32, l: u32) -> Result<ReportRecord> {
    let r = match cfg.r {
        JetOrder::Finite(r) => r,
        JetOrder::Unbounded => {
            return Err(DefwError::Validation(
                "invariants eval needs a finite jet order".into(),
            ))
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let x = TruncPolyMatrix::random(&mut rng, cfg.q as usize, r as usize);
    let sample: Vec<Value> = (0..=r as usize)
        .map(|li| {
            let block = x.coeff(li);
            let rows: Vec<Vec<Value>> = (0..block.rows)
                .map(|i| {
                    (0..block.cols)
                        .map(|j| rat_to_json(&block[(i, j)]))
                        .collect()
                })
                .collect();
            json!(rows)
        })
        .collect();

    let big_c = chern_character_coeff(&x, k, l)?;
    let big_c_prime = power_trace_coeff(&x, k, l)?;
    let small_c = chern_poly_jet(&x, k, l)?;
    let payload = json!({
        "k": k,
        "l": l,
        "sample_coefficients": sample,
        "C_kl": { "rational_part": rat_to_json(&big_c.rational_part), "pi_exponent": big_c.pi_exponent },
        "Cprime_kl": { "rational_part": rat_to_json(&big_c_prime.rational_part), "pi_exponent": big_c_prime.pi_exponent },
        "c_kl": { "rational_part": rat_to_json(&small_c.rational_part), "pi_exponent": small_c.pi_exponent },
    });
    Ok(ReportRecord::new("invariants-eval", cfg.echo(), payload))
}

pub fn cmd_invariants_check(cfg: &RunConfig) -> Result<ReportRecord> {
    let vcfg = VerifyConfig {
        seed: cfg.seed,
        trials: cfg.trials,
        q_max: cfg.q,
        degree_max: cfg.degrees.1,
        order_max: cfg.orders.1,
    };
    let checks = crate::verify::invariants_suite(&vcfg, cfg.trials.max(100));
    let all_passed = checks.iter().all(|c| c.passed);
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
        .collect();
    let payload = json!({ "all_passed": all_passed, "checks": rows });
    Ok(ReportRecord::new("invariants-check", cfg.echo(), payload))
}

// ---------------------------------------------------------------------------
// the order <= 5 classification report (codimension one)

fn w1() -> AlgebraContext {
    AlgebraContext::unbounded(1, Variant::W)
}

fn el(s: &str) -> Element {
    parse_element(s, w1()).expect("fixture parses")
}

/// The reference projector image tables for orders 2, 3, 4. Each entry is
/// (input, expected image); equality is after ideal reduction.
pub fn projector_table_fixtures() -> Vec<(u32, Vec<(&'static str, &'static str)>)> {
    vec![
        (
            2,
            vec![
                ("h[1,2]", "0"),
                ("h[1,0]*h[1,2]", "0"),
                ("h[1,2]*c[1,0]", "-h[1,1]*c[1,1]"),
                ("h[1,0]*h[1,2]*c[1,0]", "-h[1,0]*h[1,1]*c[1,1]"),
                ("c[1,2]", "0"),
                ("h[1,0]*c[1,2]", "-h[1,1]*c[1,1]"),
                ("c[1,0]*c[1,2]", "c[1,0]*c[1,2]"),
                ("h[1,0]*c[1,0]*c[1,2]", "h[1,0]*c[1,0]*c[1,2]"),
                ("h[1,1]*c[1,1]", "h[1,1]*c[1,1]"),
                ("h[1,0]*h[1,1]*c[1,1]", "h[1,0]*h[1,1]*c[1,1]"),
                ("c[1,1]*c[1,1]", "c[1,1]*c[1,1]"),
                ("h[1,0]*c[1,1]*c[1,1]", "h[1,0]*c[1,1]*c[1,1]"),
            ],
        ),
        (
            3,
            vec![
                ("h[1,3]", "0"),
                ("h[1,3]*c[1,0]", "-1/2 h[1,2]*c[1,1] + 1/2 h[1,1]*c[1,2]"),
                (
                    "h[1,0]*h[1,3]*c[1,0]",
                    "-h[1,1]*h[1,2]*c[1,0] - 1/2 h[1,0]*h[1,2]*c[1,1] + 1/2 h[1,0]*h[1,1]*c[1,2]",
                ),
                ("c[1,3]", "0"),
                ("h[1,0]*c[1,3]", "-1/2 h[1,1]*c[1,2] + 1/2 h[1,2]*c[1,1]"),
                (
                    "h[1,0]*c[1,0]*c[1,3]",
                    "-1/2 h[1,1]*c[1,0]*c[1,2] + h[1,1]*c[1,1]*c[1,1] + 1/2 h[1,2]*c[1,0]*c[1,1]",
                ),
                ("h[1,1]*h[1,2]", "h[1,1]*h[1,2]"),
                ("h[1,1]*h[1,2]*c[1,0]", "h[1,1]*h[1,2]*c[1,0]"),
                ("h[1,0]*h[1,1]*h[1,2]", "h[1,0]*h[1,1]*h[1,2]"),
                ("h[1,0]*h[1,1]*h[1,2]*c[1,0]", "h[1,0]*h[1,1]*h[1,2]*c[1,0]"),
                ("h[1,1]*c[1,2]", "-1/2 h[1,2]*c[1,1] + 1/2 h[1,1]*c[1,2]"),
                ("h[1,1]*c[1,0]*c[1,2]", "h[1,1]*c[1,0]*c[1,2]"),
                ("h[1,1]*c[1,1]*c[1,1]", "h[1,1]*c[1,1]*c[1,1]"),
                ("h[1,0]*c[1,1]*c[1,2]", "-1/2 h[1,1]*c[1,1]*c[1,1]"),
                ("h[1,0]*c[1,1]*c[1,1]*c[1,1]", "0"),
            ],
        ),
        (
            4,
            vec![
                ("h[1,4]", "0"),
                (
                    "h[1,4]*c[1,0]",
                    "-1/5 h[1,3]*c[1,1] + 3/5 h[1,2]*c[1,2] - 1/5 h[1,1]*c[1,3]",
                ),
                ("h[1,0]*h[1,4]", "0"),
                (
                    "h[1,0]*h[1,4]*c[1,0]",
                    "-1/5 h[1,0]*h[1,3]*c[1,1] + 9/5 h[1,1]*h[1,2]*c[1,1] + 3/5 h[1,0]*h[1,2]*c[1,2] - 1/5 h[1,0]*h[1,1]*c[1,3]",
                ),
                ("h[1,1]*h[1,3]", "0"),
                ("h[1,1]*h[1,3]*c[1,0]", "-h[1,1]*h[1,2]*c[1,1]"),
                ("h[1,0]*h[1,1]*h[1,3]", "0"),
                ("h[1,0]*h[1,1]*h[1,3]*c[1,0]", "-h[1,0]*h[1,1]*h[1,2]*c[1,1]"),
                (
                    "h[1,3]*c[1,1]",
                    "1/5 h[1,3]*c[1,1] - 3/5 h[1,2]*c[1,2] + 1/5 h[1,1]*c[1,3]",
                ),
                (
                    "h[1,0]*h[1,3]*c[1,1]",
                    "1/5 h[1,0]*h[1,3]*c[1,1] - 4/5 h[1,1]*h[1,2]*c[1,1] - 3/5 h[1,0]*h[1,2]*c[1,2] + 1/5 h[1,0]*h[1,1]*c[1,3]",
                ),
                ("h[1,1]*h[1,2]*c[1,1]", "h[1,1]*h[1,2]*c[1,1]"),
                ("h[1,0]*h[1,1]*h[1,2]*c[1,1]", "h[1,0]*h[1,1]*h[1,2]*c[1,1]"),
                (
                    "h[1,2]*c[1,2]",
                    "-1/5 h[1,3]*c[1,1] + 3/5 h[1,2]*c[1,2] - 1/5 h[1,1]*c[1,3]",
                ),
                (
                    "h[1,2]*c[1,0]*c[1,2]",
                    "-1/5 h[1,3]*c[1,0]*c[1,1] + 3/5 h[1,2]*c[1,0]*c[1,2] - 1/15 h[1,2]*c[1,1]*c[1,1] - 1/5 h[1,1]*c[1,0]*c[1,3] + 1/15 h[1,1]*c[1,1]*c[1,2]",
                ),
                (
                    "h[1,2]*c[1,1]*c[1,1]",
                    "2/3 h[1,2]*c[1,1]*c[1,1] - 2/3 h[1,1]*c[1,1]*c[1,2]",
                ),
                (
                    "h[1,0]*h[1,2]*c[1,2]",
                    "-1/5 h[1,0]*h[1,3]*c[1,1] + 3/5 h[1,0]*h[1,2]*c[1,2] - 1/5 h[1,1]*h[1,2]*c[1,1] - 1/5 h[1,0]*h[1,1]*c[1,3]",
                ),
                (
                    "h[1,0]*h[1,2]*c[1,0]*c[1,2]",
                    "1/3 h[1,0]*h[1,2]*c[1,0]*c[1,2] - 1/3 h[1,0]*h[1,2]*c[1,1]*c[1,1] - 1/3 h[1,0]*h[1,1]*c[1,0]*c[1,3] - 1/3 h[1,0]*h[1,1]*c[1,1]*c[1,2]",
                ),
                (
                    "h[1,0]*h[1,2]*c[1,1]*c[1,1]",
                    "2/3 h[1,0]*h[1,2]*c[1,1]*c[1,1] - 2/3 h[1,0]*h[1,1]*c[1,1]*c[1,2]",
                ),
                (
                    "h[1,1]*c[1,1]*c[1,2]",
                    "-1/3 h[1,2]*c[1,1]*c[1,1] + 1/3 h[1,1]*c[1,1]*c[1,2]",
                ),
                (
                    "h[1,0]*h[1,1]*c[1,1]*c[1,2]",
                    "-1/3 h[1,0]*h[1,2]*c[1,1]*c[1,1] + 1/3 h[1,0]*h[1,1]*c[1,1]*c[1,2]",
                ),
                (
                    "h[1,0]*c[1,2]*c[1,2]",
                    "2/15 h[1,2]*c[1,1]*c[1,1] - 2/15 h[1,1]*c[1,1]*c[1,2] + 3/5 h[1,0]*c[1,2]*c[1,2] - 2/5 h[1,0]*c[1,1]*c[1,3]",
                ),
                ("h[1,0]*c[1,1]*c[1,1]*c[1,2]", "0"),
                ("h[1,0]*c[1,0]*c[1,2]*c[1,2]", "0"),
            ],
        ),
    ]
}

/// The coordinate basis of the type-(2,2) piece at bidegree (6,5): the five
/// monomials every row vector below refers to.
pub fn w_basis_monomials() -> Vec<&'static str> {
    vec![
        "h[1,0]*h[1,1]*c[1,0]*c[1,4]",
        "h[1,0]*h[1,1]*c[1,1]*c[1,3]",
        "h[1,0]*h[1,2]*c[1,0]*c[1,3]",
        "h[1,0]*h[1,3]*c[1,0]*c[1,2]",
        "h[1,1]*h[1,2]*c[1,0]*c[1,2]",
    ]
}

/// The reference coordinate rows of the projector images of the basis
/// monomials, in the basis above.
pub fn reference_c_rows() -> Vec<Vec<Rat>> {
    let r = |n: i64, d: i64| Rat::new(n.into(), d.into());
    vec![
        vec![r(-1, 14), r(-15, 14), r(-9, 14), r(9, 14), r(9, 14)],
        vec![r(5, 28), r(33, 28), r(3, 28), r(-3, 28), r(-3, 28)],
        vec![r(-3, 28), r(-3, 28), r(15, 28), r(-15, 28), r(-15, 28)],
        vec![r(1, 14), r(1, 14), r(-5, 14), r(5, 14), r(-9, 14)],
        vec![r(0, 1), r(0, 1), r(0, 1), r(0, 1), r(1, 1)],
    ]
}

pub fn reference_z_rows() -> Vec<Vec<Rat>> {
    let r = |n: i64| Rat::from_integer(n.into());
    vec![
        vec![r(1), r(6), r(0), r(0), r(0)],
        vec![r(0), r(1), r(1), r(-1), r(0)],
        vec![r(0), r(0), r(0), r(0), r(1)],
    ]
}

pub fn reference_b_rows() -> Vec<Vec<Rat>> {
    let r = |n: i64| Rat::from_integer(n.into());
    vec![
        vec![r(1), r(0), r(-6), r(6), r(0)],
        vec![r(0), r(5), r(5), r(-5), r(-3)],
    ]
}

/// The candidate spanning elements of the zero eigenspace at order four,
/// in the reference listing order.
pub fn e04_candidates() -> Vec<&'static str> {
    vec![
        "h[1,3]*c[1,1] - 3 h[1,2]*c[1,2] + h[1,1]*c[1,3]",
        "h[1,0]*h[1,3]*c[1,1] - 3 h[1,0]*h[1,2]*c[1,2] + h[1,0]*h[1,1]*c[1,3]",
        "h[1,1]*h[1,2]*c[1,1]",
        "h[1,0]*h[1,1]*h[1,2]*c[1,1]",
        "-3 h[1,2]*c[1,0]*c[1,2] + h[1,1]*c[1,0]*c[1,3]",
        "h[1,2]*c[1,1]*c[1,1] - h[1,1]*c[1,1]*c[1,2]",
        "-3 h[1,0]*h[1,2]*c[1,0]*c[1,2] + h[1,0]*h[1,1]*c[1,0]*c[1,3]",
        "h[1,0]*h[1,2]*c[1,1]*c[1,1] - h[1,0]*h[1,1]*c[1,1]*c[1,2]",
        "3 h[1,0]*c[1,2]*c[1,2] - 2 h[1,0]*c[1,1]*c[1,3]",
    ]
}

/// Coordinates of a type-(2,2) element of bidegree (6,5) in the five-monomial
/// coordinate basis, modulo the ideal.
pub fn w_coords(x: &Element) -> Result<Vec<Rat>> {
    let piece = quotient_piece(w1(), 6, 5);
    let basis: Vec<Vec<Rat>> = w_basis_monomials()
        .iter()
        .map(|s| piece.coords(&el(s)))
        .collect::<Result<_>>()?;
    let target = piece.coords(x)?;
    let n = target.len();
    let mut m = RatMatrix::zeros(n, basis.len());
    for (j, b) in basis.iter().enumerate() {
        for (i, c) in b.iter().enumerate() {
            m[(i, j)] = c.clone();
        }
    }
    m.solve(&target)
        .ok_or_else(|| DefwError::Validation("element is outside the five-monomial span".into()))
}

/// Exact change-of-basis certificate: T with T * engine_rows = target_rows.
/// Both inputs must span the same space; returns None otherwise.
pub fn change_of_basis(engine_rows: &[Vec<Rat>], target_rows: &[Vec<Rat>]) -> Option<RatMatrix> {
    if engine_rows.len() != target_rows.len() {
        return None;
    }
    let k = engine_rows.len();
    if k == 0 {
        return Some(RatMatrix::zeros(0, 0));
    }
    let n = engine_rows[0].len();
    // solve row_t = sum_j T[t][j] engine_rows[j] for each target row
    let mut lhs = RatMatrix::zeros(n, k);
    for (j, row) in engine_rows.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            lhs[(i, j)] = c.clone();
        }
    }
    let mut t = RatMatrix::zeros(k, k);
    for (ti, row) in target_rows.iter().enumerate() {
        let sol = lhs.solve(row)?;
        for (j, c) in sol.into_iter().enumerate() {
            t[(ti, j)] = c;
        }
    }
    t.inverse().is_some().then_some(t)
}

fn rows_to_json(rows: &[Vec<Rat>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(rat_to_json).collect()))
            .collect(),
    )
}

fn matrix_to_json(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows)
            .map(|i| Value::Array((0..m.cols).map(|j| rat_to_json(&m[(i, j)])).collect()))
            .collect(),
    )
}

pub fn cmd_report_section10(cfg: &RunConfig) -> Result<ReportRecord> {
    if cfg.q != 1 {
        return Err(DefwError::Validation(
            "the classification report is about codimension one".into(),
        ));
    }
    let ctx = w1();
    let zero = Rat::zero();

    // generators at low order
    let gv_piece = cohomology(ctx, 3, 0)?;
    let flk_piece = cohomology_with(ctx, 4, 1, SpaceSpec::eigen(zero.clone()))?;
    let mut f0_dims: Vec<Value> = Vec::new();
    for order in 0..=1u32 {
        for degree in 0..=8u32 {
            let piece = cohomology_with(ctx, degree, order, SpaceSpec::eigen(zero.clone()))?;
            if piece.dim() > 0 {
                f0_dims.push(json!({
                    "degree": degree,
                    "order": order,
                    "dim": piece.dim(),
                    "basis": piece.basis().iter().map(element_to_json).collect::<Vec<_>>(),
                }));
            }
        }
    }
    let generators = json!({
        "gv": {
            "degree": 3, "order": 0,
            "dim": gv_piece.dim(),
            "basis": gv_piece.basis().iter().map(element_to_json).collect::<Vec<_>>(),
        },
        "flk": {
            "degree": 4, "order": 1,
            "dim": flk_piece.dim(),
            "class_nonzero": !flk_piece.class_of(&el("h[1,0]*h[1,1]*c[1,0]"))?.is_zero(),
        },
        "f0_low_orders": f0_dims,
    });

    // vanishing of the zero eigenspace at orders 2..4
    let mut vanishing: Vec<Value> = Vec::new();
    for order in 2..=4u32 {
        let mut dims: Vec<Value> = Vec::new();
        for degree in 0..=8u32 {
            let piece = cohomology_with(ctx, degree, order, SpaceSpec::eigen(zero.clone()))?;
            dims.push(json!({ "degree": degree, "dim": piece.dim() }));
        }
        vanishing.push(json!({ "order": order, "dims": dims }));
    }

    // projector image tables
    let mut tables: Vec<Value> = Vec::new();
    for (k, entries) in projector_table_fixtures() {
        let mut rows: Vec<Value> = Vec::new();
        for (input, expected) in entries {
            let x = el(input);
            let image = projector_p(1, k, &x)?;
            let piece = quotient_piece(ctx, x.bidegree().unwrap().0, k);
            let reduced = piece.reduce(&image)?;
            let expected_reduced = piece.reduce(&el(expected))?;
            rows.push(json!({
                "input": input,
                "image_reduced": element_to_json(&reduced),
                "expected": expected,
                "matches": reduced == expected_reduced,
            }));
        }
        tables.push(json!({ "order": k, "entries": rows }));
    }

    // candidates at order four with exactness verdicts
    let mut candidates: Vec<Value> = Vec::new();
    for s in e04_candidates() {
        let x = el(s);
        let (degree, _) = x.bidegree().unwrap();
        let piece = cohomology_with(ctx, degree, 4, SpaceSpec::eigen(zero.clone()))?;
        let v = piece.piece.coords(&x)?;
        let in_e0 = {
            let space = cochain_space(ctx, degree, 4, &SpaceSpec::eigen(zero.clone()))?;
            space.sub.contains(&v)
        };
        candidates.push(json!({
            "element": s,
            "in_zero_eigenspace": in_e0,
            "is_cocycle": piece.is_cocycle(&x)?,
            "is_coboundary": piece.is_coboundary(&x)?,
        }));
    }

    // the type-(2,2) order-five block: coordinate table, cocycles,
    // coboundaries, certificates, and the surviving class
    let c_inputs = w_basis_monomials();
    let mut c_rows_engine: Vec<Vec<Rat>> = Vec::new();
    for s in &c_inputs {
        let img = projector_p(1, 5, &el(s))?;
        c_rows_engine.push(w_coords(&img)?);
    }
    let c_matches = c_rows_engine == reference_c_rows();

    // Z: the zero eigenspace of type (2,2)
    let z_space = cochain_space(ctx, 6, 5, &SpaceSpec::eigen_typed(zero.clone(), (2, 2)))?;
    let z_rows_engine: Vec<Vec<Rat>> = z_space
        .basis_elements()
        .iter()
        .map(w_coords)
        .collect::<Result<_>>()?;
    let z_sub = Subspace::from_spanning(5, &z_rows_engine);
    let z_ref_sub = Subspace::from_spanning(5, &reference_z_rows());
    let z_span_equal = z_sub.same_space(&z_ref_sub);
    let z_certificate = change_of_basis(&z_rows_engine, &reference_z_rows());

    // B: derivatives of the type-(3,1) part of the zero eigenspace
    let b_source = cochain_space(ctx, 5, 5, &SpaceSpec::eigen_typed(zero.clone(), (3, 1)))?;
    let mut b_rows_engine: Vec<Vec<Rat>> = Vec::new();
    let mut b_images: Vec<Value> = Vec::new();
    for e in b_source.basis_elements() {
        let de = crate::derivation::d(&e)?;
        let coords = w_coords(&de)?;
        if coords.iter().any(|c| !c.is_zero()) {
            b_rows_engine.push(coords);
        }
        b_images.push(element_to_json(&quotient_piece(ctx, 6, 5).reduce(&de)?));
    }
    let b_sub = Subspace::from_spanning(5, &b_rows_engine);
    let b_rows_rref: Vec<Vec<Rat>> = b_sub.rows().to_vec();
    let b_ref_sub = Subspace::from_spanning(5, &reference_b_rows());
    let b_span_equal = b_sub.same_space(&b_ref_sub);
    let b_certificate = change_of_basis(&b_rows_rref, &reference_b_rows());

    let v_piece = cohomology_with(ctx, 6, 5, SpaceSpec::eigen_typed(zero.clone(), (2, 2)))?;
    let v_generator_class = v_piece.class_of(&el("h[1,1]*h[1,2]*c[1,0]*c[1,2]"))?;

    let thm_10_7 = json!({
        "coordinate_basis": c_inputs,
        "c_table_engine": rows_to_json(&c_rows_engine),
        "c_table_matches_fixture": c_matches,
        "z_rows_engine": rows_to_json(&z_rows_engine),
        "z_rows_reference": rows_to_json(&reference_z_rows()),
        "z_span_equal": z_span_equal,
        "z_certificate": z_certificate.as_ref().map(matrix_to_json),
        "b_rows_engine": rows_to_json(&b_rows_rref),
        "b_rows_reference": rows_to_json(&reference_b_rows()),
        "b_span_equal": b_span_equal,
        "b_certificate": b_certificate.as_ref().map(matrix_to_json),
        "b_projector_images": b_images,
        "v_dim": v_piece.dim(),
        "v_generator_nonzero": !v_generator_class.is_zero(),
    });

    // products of the derivative classes
    let gv = el("h[1,0]*c[1,0]");
    let dpow = |n: u32| power(Derivation::Delta, &gv, n);
    let h65 = cohomology(ctx, 6, 5)?;
    let h64 = cohomology(ctx, 6, 4)?;
    let p14 = dpow(1)?.try_mul(&dpow(4)?)?;
    let p23 = dpow(2)?.try_mul(&dpow(3)?)?;
    let p13 = dpow(1)?.try_mul(&dpow(3)?)?;
    let c14 = h65.class_of(&p14)?;
    let c23 = h65.class_of(&p23)?;
    let generator = h65.class_of(&el("h[1,1]*h[1,2]*c[1,0]*c[1,2]"))?;
    let sum = &p14 + &p23;
    let sigma_p23 = sigma(&p23)?;
    let products = json!({
        "h65_dim": h65.dim(),
        "generator_coords": Value::Array(generator.coords.iter().map(rat_to_json).collect()),
        "d1gv_d4gv_coords": Value::Array(c14.coords.iter().map(rat_to_json).collect()),
        "d2gv_d3gv_coords": Value::Array(c23.coords.iter().map(rat_to_json).collect()),
        "d1gv_d4gv_nonzero": !c14.is_zero(),
        "sum_vanishes": h65.class_of(&sum)?.is_zero(),
        "d1gv_d3gv_vanishes": h64.class_of(&p13)?.is_zero(),
        "sigma_of_d2gv_d3gv_vanishes": h64.class_of(&sigma_p23)?.is_zero(),
    });

    // the extra class of type (3,2)
    let prop_10_2 = {
        let f = cohomology_with(ctx, 7, 5, SpaceSpec::eigen(zero.clone()))?;
        let class = f.class_of(&el("h[1,0]*h[1,1]*h[1,2]*c[1,0]*c[1,2]"))?;
        json!({ "dim": f.dim(), "class_nonzero": !class.is_zero() })
    };

    // triple products of the even generators and the closure-depth effect
    let mut triples: Vec<Value> = Vec::new();
    for i in 0..=5u32 {
        for j in i..=5u32 {
            for k in j..=5u32 {
                if i + j + k > 5 {
                    continue;
                }
                let x = Element::from_generators(ctx, &[], &[(1, i), (1, j), (1, k)])?;
                let full = is_in_ideal(&x, IdealVariant::I)?;
                let depth5 = is_in_ideal_capped(&x, IdealVariant::I, 5)?;
                let depth2 = is_in_ideal_capped(&x, IdealVariant::I, 2)?;
                triples.push(json!({
                    "monomial": format!("c[1,{i}]*c[1,{j}]*c[1,{k}]"),
                    "in_ideal": full,
                    "in_ideal_depth5": depth5,
                    "in_ideal_depth2": depth2,
                }));
            }
        }
    }

    let payload = json!({
        "generators": generators,
        "f0_vanishing_orders_2_to_4": vanishing,
        "projector_tables": tables,
        "e04_candidates": candidates,
        "type22_order5": thm_10_7,
        "products": products,
        "order5_type32_class": prop_10_2,
        "triple_c_products": triples,
    });
    Ok(ReportRecord::new("report-section10", cfg.echo(), payload))
}

// ---------------------------------------------------------------------------
// renderers

fn render_markdown(record: &ReportRecord) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# defw {} report\n\nengine version: {}\n\nconfig: `{}`\n\n",
        record.command,
        record.engine_version,
        serde_json::to_string(&record.config).unwrap()
    ));
    render_value_md(&record.payload, 2, &mut out);
    out
}

fn render_value_md(v: &Value, level: usize, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{} {}\n\n", "#".repeat(level.min(6)), k));
                        render_value_md(val, level + 1, out);
                    }
                    other => {
                        out.push_str(&format!("- **{k}**: {}\n", scalar_md(other)));
                    }
                }
            }
            out.push('\n');
        }
        Value::Array(items) => {
            if let Some(table) = array_as_table(items) {
                out.push_str(&table);
                out.push('\n');
            } else {
                for item in items {
                    match item {
                        Value::Object(_) | Value::Array(_) => render_value_md(item, level + 1, out),
                        other => out.push_str(&format!("- {}\n", scalar_md(other))),
                    }
                }
                out.push('\n');
            }
        }
        other => {
            out.push_str(&format!("{}\n", scalar_md(other)));
        }
    }
}

fn scalar_md(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Render an array of flat objects with identical keys as a markdown table.
fn array_as_table(items: &[Value]) -> Option<String> {
    if items.is_empty() {
        return None;
    }
    let first = items.first()?.as_object()?;
    let keys: Vec<&String> = first.keys().collect();
    if keys.is_empty() {
        return None;
    }
    let flat = |v: &Value| -> Option<String> {
        match v {
            Value::Object(m) => {
                // num/den pairs print as fractions
                if let (Some(Value::String(n)), Some(Value::String(d))) =
                    (m.get("num"), m.get("den"))
                {
                    return Some(if d == "1" {
                        n.clone()
                    } else {
                        format!("{n}/{d}")
                    });
                }
                None
            }
            Value::Array(a) => {
                let cells: Option<Vec<String>> = a.iter().map(flat_cell).collect();
                cells.map(|c| c.join(", "))
            }
            other => Some(scalar_md(other)),
        }
    };
    fn flat_cell(v: &Value) -> Option<String> {
        match v {
            Value::Object(m) => {
                if let (Some(Value::String(n)), Some(Value::String(d))) =
                    (m.get("num"), m.get("den"))
                {
                    Some(if d == "1" {
                        n.clone()
                    } else {
                        format!("{n}/{d}")
                    })
                } else if let Some(Value::String(t)) = m.get("text") {
                    Some(t.clone())
                } else {
                    None
                }
            }
            other => Some(match other {
                Value::String(s) => s.clone(),
                x => x.to_string(),
            }),
        }
    }
    let mut rows = Vec::with_capacity(items.len());
    for item in items {
        let obj = item.as_object()?;
        if obj.keys().collect::<Vec<_>>() != keys {
            return None;
        }
        let mut row = Vec::with_capacity(keys.len());
        for k in &keys {
            let v = obj.get(*k)?;
            let cell = match v {
                Value::Object(m) if m.contains_key("text") => {
                    m.get("text").and_then(Value::as_str).map(str::to_string)
                }
                other => flat(other),
            };
            row.push(cell?);
        }
        rows.push(row);
    }
    let mut out = String::new();
    out.push_str(&format!(
        "| {} |\n",
        keys.iter()
            .map(|s| s.as_str())
            .collect::<Vec<_>>()
            .join(" | ")
    ));
    out.push_str(&format!("|{}\n", "---|".repeat(keys.len())));
    for row in rows {
        out.push_str(&format!("| {} |\n", row.join(" | ")));
    }
    Some(out)
}

fn render_tsv(record: &ReportRecord) -> String {
    let mut out = String::new();
    out.push_str(&format!("command\t{}\n", record.command));
    out.push_str(&format!("engine_version\t{}\n", record.engine_version));
    out.push_str(&format!(
        "config\t{}\n",
        serde_json::to_string(&record.config).unwrap()
    ));
    flatten_tsv("payload", &record.payload, &mut out);
    out
}

fn flatten_tsv(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                flatten_tsv(&format!("{prefix}.{k}"), val, out);
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                flatten_tsv(&format!("{prefix}[{i}]"), item, out);
            }
        }
        other => {
            out.push_str(&format!("{prefix}\t{}\n", scalar_md(other)));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w_coords_of_basis_monomials_are_unit_vectors() {
        for (i, s) in w_basis_monomials().iter().enumerate() {
            let coords = w_coords(&el(s)).unwrap();
            for (j, c) in coords.iter().enumerate() {
                if i == j {
                    assert!(c == &Rat::from_integer(1.into()));
                } else {
                    assert!(c.is_zero());
                }
            }
        }
    }

    #[test]
    fn change_of_basis_certificates() {
        let rows_a = reference_z_rows();
        let sub = Subspace::from_spanning(5, &rows_a);
        let rref_rows: Vec<Vec<Rat>> = sub.rows().to_vec();
        let t = change_of_basis(&rref_rows, &rows_a).unwrap();
        // T * rref = reference rows
        for (ti, target) in rows_a.iter().enumerate() {
            let mut acc = vec![Rat::zero(); 5];
            for (j, row) in rref_rows.iter().enumerate() {
                for (a, r) in acc.iter_mut().zip(row) {
                    *a += &t[(ti, j)] * r;
                }
            }
            assert_eq!(&acc, target);
        }
    }

    #[test]
    fn cohomology_grid_record() {
        let cfg = RunConfig {
            degrees: (3, 4),
            orders: (0, 1),
            ..RunConfig::default()
        };
        let record = cmd_cohomology(&cfg).unwrap();
        let cells = record.payload["cells"].as_array().unwrap();
        assert_eq!(cells.len(), 4);
        // (3,0) has the single generator
        assert_eq!(cells[0]["dim"], 1);
        let md = record.render(OutputFormat::Markdown);
        assert!(md.contains("cohomology"));
        let tsv = record.render(OutputFormat::Tsv);
        assert!(tsv.contains("payload.cells[0].dim\t1"));
    }
}

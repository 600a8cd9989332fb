//! Exact-arithmetic engine for the deformation algebras of foliations.
//!
//! The crate builds the free bigraded algebra on anticommuting generators
//! `h[i,a]` and commuting generators `c[i,b]`, the relation ideals encoding
//! the Bott vanishing and its jet refinements, and computes cohomology of
//! the quotients in bigraded pieces together with the eigenspace structure
//! of the order derivations. A companion module implements the invariant
//! polynomials of the block Toeplitz jet groups over truncated polynomial
//! matrices. All arithmetic is exact rational; outputs are deterministic.
//!
//! Start with the runnable examples (`cargo run --example gv_flk_classes`)
//! or the `defw` command line tool.

pub mod basis;
pub mod cli;
pub mod cohomology;
pub mod context;
pub mod derivation;
pub mod element;
pub mod ideal;
pub mod invariants;
pub mod linalg;
pub mod monomial;
pub mod projector;
pub mod report;
pub mod serialize;
pub mod text;
pub mod verify;

pub use context::{AlgebraContext, DefwError, JetOrder, Result, Variant};
pub use element::{rat, Element, Rat};
pub use monomial::{GenKind, Generator, Gradings, Monomial};

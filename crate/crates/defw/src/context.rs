//! Algebra contexts: codimension, jet order bound, and quotient variant.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Upper bound for generator orders. `Unbounded` models the r = ∞ algebra;
/// every concrete computation still takes explicit (degree, order) arguments,
/// so all enumerations stay finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JetOrder {
    Unbounded,
    Finite(u32),
}

impl JetOrder {
    pub fn admits(&self, order: u32) -> bool {
        match self {
            JetOrder::Unbounded => true,
            JetOrder::Finite(r) => order <= *r,
        }
    }

    pub fn cap(&self, order: u32) -> u32 {
        match self {
            JetOrder::Unbounded => order,
            JetOrder::Finite(r) => order.min(*r),
        }
    }
}

impl fmt::Display for JetOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JetOrder::Unbounded => write!(f, "inf"),
            JetOrder::Finite(r) => write!(f, "{r}"),
        }
    }
}

/// Which quotient of the free algebra the context works in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// No quotient at all.
    Free,
    /// Quotient by the norm ideal (the jet-refined Bott vanishing).
    W,
    /// Quotient by the classical Bott ideal and its derivatives.
    WPrime,
    /// Quotient by the ideal generated by the order-zero Bott monomials alone.
    WPlus,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Variant::Free => "free",
            Variant::W => "W",
            Variant::WPrime => "Wprime",
            Variant::WPlus => "Wplus",
        };
        write!(f, "{s}")
    }
}

/// Context every element lives in: codimension `q`, jet order bound `r`,
/// and the quotient variant. `W` and `WPrime` coincide semantically when q = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraContext {
    pub q: u32,
    pub r: JetOrder,
    pub variant: Variant,
}

impl AlgebraContext {
    pub fn new(q: u32, r: JetOrder, variant: Variant) -> Result<Self, DefwError> {
        if q < 1 {
            return Err(DefwError::Validation("codimension q must be >= 1".into()));
        }
        if let JetOrder::Finite(r) = r {
            if r < 1 {
                return Err(DefwError::Validation(
                    "finite jet order r must be >= 1".into(),
                ));
            }
        }
        Ok(AlgebraContext { q, r, variant })
    }

    /// Unbounded-order context, the setting of all structure computations.
    pub fn unbounded(q: u32, variant: Variant) -> Self {
        AlgebraContext {
            q,
            r: JetOrder::Unbounded,
            variant,
        }
    }

    pub fn free(q: u32) -> Self {
        Self::unbounded(q, Variant::Free)
    }

    /// Same context with a different variant.
    pub fn with_variant(self, variant: Variant) -> Self {
        AlgebraContext { variant, ..self }
    }

    /// Context one codimension down, for the restriction homomorphism.
    pub fn lower_codim(self) -> Result<Self, DefwError> {
        if self.q < 2 {
            return Err(DefwError::Validation(
                "restriction needs codimension >= 2".into(),
            ));
        }
        Ok(AlgebraContext {
            q: self.q - 1,
            ..self
        })
    }
}

impl fmt::Display for AlgebraContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q={}, r={}, {})", self.q, self.r, self.variant)
    }
}

#[derive(Debug, Error)]
pub enum DefwError {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("order overflow: {0}")]
    OrderOverflow(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("unsupported context: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = DefwError> = std::result::Result<T, E>;

//! Generators and canonical signed monomials of the free bigraded algebra.
//!
//! A monomial is a product of anticommuting degree-1 generators `h[i,a]` and
//! commuting degree-2 generators `c[i,b]`. Canonical form keeps the h-factors
//! strictly increasing and the c-factors weakly increasing under the fixed
//! generator order (kind with H < C, then index, then order); the sign of the
//! sorting permutation is returned separately and absorbed into coefficients.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::context::{AlgebraContext, DefwError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenKind {
    H,
    C,
}

/// A single generator `h[index,order]` or `c[index,order]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub kind: GenKind,
    pub index: u32,
    pub order: u32,
}

impl Generator {
    pub fn h(index: u32, order: u32) -> Self {
        Generator {
            kind: GenKind::H,
            index,
            order,
        }
    }

    pub fn c(index: u32, order: u32) -> Self {
        Generator {
            kind: GenKind::C,
            index,
            order,
        }
    }

    pub fn degree(&self) -> u32 {
        match self.kind {
            GenKind::H => 1,
            GenKind::C => 2,
        }
    }

    /// Weighted transversal degree of a single factor. Order-0 h-generators
    /// contribute nothing; everything else contributes max{index - order, 0}.
    pub fn norm(&self) -> u32 {
        match self.kind {
            GenKind::H if self.order == 0 => 0,
            _ => self.index.saturating_sub(self.order),
        }
    }

    pub fn validate(&self, ctx: &AlgebraContext) -> Result<()> {
        if self.index < 1 || self.index > ctx.q {
            return Err(DefwError::Validation(format!(
                "generator index {} out of range [1, {}]",
                self.index, ctx.q
            )));
        }
        if !ctx.r.admits(self.order) {
            return Err(DefwError::Validation(format!(
                "generator order {} exceeds jet order bound {}",
                self.order, ctx.r
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            GenKind::H => 'h',
            GenKind::C => 'c',
        };
        write!(f, "{}[{},{}]", k, self.index, self.order)
    }
}

/// All five gradings of a monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gradings {
    pub degree: u32,
    pub order: u32,
    pub length: u32,
    /// (number of h-factors, number of c-factors)
    pub ty: (u32, u32),
    pub norm: u32,
}

/// Canonical monomial: strictly increasing h-factors, weakly increasing
/// c-factors. The empty monomial is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    h_factors: Vec<Generator>,
    c_factors: Vec<Generator>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            h_factors: Vec::new(),
            c_factors: Vec::new(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.h_factors.is_empty() && self.c_factors.is_empty()
    }

    pub fn h_factors(&self) -> &[Generator] {
        &self.h_factors
    }

    pub fn c_factors(&self) -> &[Generator] {
        &self.c_factors
    }

    pub fn factors(&self) -> impl Iterator<Item = &Generator> {
        self.h_factors.iter().chain(self.c_factors.iter())
    }

    /// Canonicalize a word of generators. Returns `None` if an h-generator
    /// repeats (odd generators square to zero); otherwise the sign of the
    /// permutation sorting the h-subsequence and the canonical monomial.
    /// C-generators are central, so only h-h transpositions carry signs.
    pub fn from_word(word: &[Generator]) -> Option<(i8, Monomial)> {
        let mut hs: Vec<Generator> = Vec::new();
        let mut cs: Vec<Generator> = Vec::new();
        let mut sign = 1i8;
        for g in word {
            match g.kind {
                GenKind::H => {
                    // insertion sort, counting the odd factors the new one passes
                    let pos = hs.partition_point(|x| *x < *g);
                    if hs.get(pos) == Some(g) {
                        return None;
                    }
                    if (hs.len() - pos) % 2 == 1 {
                        sign = -sign;
                    }
                    hs.insert(pos, *g);
                }
                GenKind::C => {
                    let pos = cs.partition_point(|x| *x <= *g);
                    cs.insert(pos, *g);
                }
            }
        }
        Some((
            sign,
            Monomial {
                h_factors: hs,
                c_factors: cs,
            },
        ))
    }

    /// Product with another canonical monomial, Koszul sign included.
    pub fn mul(&self, other: &Monomial) -> Option<(i8, Monomial)> {
        let word: Vec<Generator> = self.factors().chain(other.factors()).copied().collect();
        Monomial::from_word(&word)
    }

    pub fn degree(&self) -> u32 {
        self.h_factors.len() as u32 + 2 * self.c_factors.len() as u32
    }

    pub fn order(&self) -> u32 {
        self.factors().map(|g| g.order).sum()
    }

    pub fn length(&self) -> u32 {
        (self.h_factors.len() + self.c_factors.len()) as u32
    }

    pub fn ty(&self) -> (u32, u32) {
        (self.h_factors.len() as u32, self.c_factors.len() as u32)
    }

    pub fn norm(&self) -> u32 {
        self.factors().map(|g| g.norm()).sum()
    }

    pub fn gradings(&self) -> Gradings {
        Gradings {
            degree: self.degree(),
            order: self.order(),
            length: self.length(),
            ty: self.ty(),
            norm: self.norm(),
        }
    }

    pub fn validate(&self, ctx: &AlgebraContext) -> Result<()> {
        self.factors().try_for_each(|g| g.validate(ctx))
    }

    /// True if every factor has index < `index`.
    pub fn avoids_index(&self, index: u32) -> bool {
        self.factors().all(|g| g.index != index)
    }
}

/// Graded-lexicographic order: degree, then order, then the factor lists.
/// This is the global monomial order all bases and pivots are built on.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.order().cmp(&other.order()))
            .then_with(|| self.h_factors.cmp(&other.h_factors))
            .then_with(|| self.c_factors.cmp(&other.c_factors))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for g in self.factors() {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "{g}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_canonicalization_signs() {
        let w = [Generator::h(1, 1), Generator::h(1, 0)];
        let (sign, m) = Monomial::from_word(&w).unwrap();
        assert_eq!(sign, -1);
        assert_eq!(m.h_factors(), &[Generator::h(1, 0), Generator::h(1, 1)]);

        // repeated odd generator squares to zero
        assert!(Monomial::from_word(&[Generator::h(1, 0), Generator::h(1, 0)]).is_none());

        // even generators commute for free
        let w = [Generator::c(1, 2), Generator::h(1, 0), Generator::c(1, 0)];
        let (sign, m) = Monomial::from_word(&w).unwrap();
        assert_eq!(sign, 1);
        assert_eq!(m.c_factors(), &[Generator::c(1, 0), Generator::c(1, 2)]);
        assert_eq!(m.to_string(), "h[1,0]*c[1,0]*c[1,2]");
    }

    #[test]
    fn gradings_of_flk_like_monomial() {
        let (sign, m) =
            Monomial::from_word(&[Generator::h(1, 0), Generator::h(1, 1), Generator::c(1, 0)])
                .unwrap();
        assert_eq!(sign, 1);
        let g = m.gradings();
        assert_eq!(g.degree, 4);
        assert_eq!(g.order, 1);
        assert_eq!(g.length, 3);
        assert_eq!(g.ty, (2, 1));
        assert_eq!(g.norm, 1);
    }

    #[test]
    fn norm_rules() {
        // order-0 h contributes 0, order-0 c contributes its index
        assert_eq!(Generator::h(2, 0).norm(), 0);
        assert_eq!(Generator::c(2, 0).norm(), 2);
        assert_eq!(Generator::h(2, 1).norm(), 1);
        assert_eq!(Generator::c(1, 2).norm(), 0);

        let (_, m) = Monomial::from_word(&[
            Generator::h(1, 1),
            Generator::h(1, 2),
            Generator::c(1, 0),
            Generator::c(1, 2),
        ])
        .unwrap();
        assert_eq!(m.norm(), 1);
        assert_eq!(m.gradings().degree, 6);
        assert_eq!(m.gradings().order, 5);
    }
}

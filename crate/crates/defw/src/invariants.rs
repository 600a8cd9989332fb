//! Invariant polynomials of the block Toeplitz jet groups.
//!
//! A block lower-triangular Toeplitz matrix over q×q rational blocks is the
//! same thing as a q×q matrix of degree-r truncated polynomials; powers,
//! traces of the power blocks, and Newton polynomials in those traces give
//! the jet-order Chern invariants c_{k,l}. The transcendental factor
//! (-1/2π)^k is carried as an exponent tag so everything stays rational.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::context::{DefwError, Result};
use crate::element::{rat, Rat};
use crate::linalg::RatMatrix;

/// q×q rational matrices A_0..A_r read as A_0 + A_1 t + ... + A_r t^r;
/// multiplication and inversion are taken modulo t^{r+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncPolyMatrix {
    pub q: usize,
    pub r: usize,
    coeffs: Vec<RatMatrix>,
}

impl TruncPolyMatrix {
    pub fn new(q: usize, r: usize, coeffs: Vec<RatMatrix>) -> Result<Self> {
        if coeffs.len() != r + 1 {
            return Err(DefwError::Validation(format!(
                "expected {} coefficient matrices, got {}",
                r + 1,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|m| m.rows != q || m.cols != q) {
            return Err(DefwError::Validation(format!(
                "coefficients must be {q}x{q}"
            )));
        }
        Ok(TruncPolyMatrix { q, r, coeffs })
    }

    pub fn zero(q: usize, r: usize) -> Self {
        TruncPolyMatrix {
            q,
            r,
            coeffs: vec![RatMatrix::zeros(q, q); r + 1],
        }
    }

    pub fn identity(q: usize, r: usize) -> Self {
        let mut coeffs = vec![RatMatrix::zeros(q, q); r + 1];
        coeffs[0] = RatMatrix::identity(q);
        TruncPolyMatrix { q, r, coeffs }
    }

    pub fn coeff(&self, l: usize) -> &RatMatrix {
        &self.coeffs[l]
    }

    pub fn random<R: Rng>(rng: &mut R, q: usize, r: usize) -> Self {
        let coeffs = (0..=r)
            .map(|_| {
                let mut m = RatMatrix::zeros(q, q);
                for i in 0..q {
                    for j in 0..q {
                        m[(i, j)] = rat(rng.gen_range(-10..=10), rng.gen_range(1..=10));
                    }
                }
                m
            })
            .collect();
        TruncPolyMatrix { q, r, coeffs }
    }

    /// Random group element: invertible constant term.
    pub fn random_invertible<R: Rng>(rng: &mut R, q: usize, r: usize) -> Self {
        loop {
            let candidate = Self::random(rng, q, r);
            if candidate.coeffs[0].inverse().is_some() {
                return candidate;
            }
        }
    }

    pub fn mul(&self, other: &TruncPolyMatrix) -> TruncPolyMatrix {
        assert_eq!((self.q, self.r), (other.q, other.r));
        let mut out = TruncPolyMatrix::zero(self.q, self.r);
        for l in 0..=self.r {
            let mut acc = RatMatrix::zeros(self.q, self.q);
            for a in 0..=l {
                let prod = self.coeffs[a].mul(&other.coeffs[l - a]);
                for i in 0..self.q {
                    for j in 0..self.q {
                        acc[(i, j)] += prod[(i, j)].clone();
                    }
                }
            }
            out.coeffs[l] = acc;
        }
        out
    }

    /// Inverse modulo t^{r+1}; requires an invertible constant term.
    pub fn inverse(&self) -> Result<TruncPolyMatrix> {
        let b0 = self.coeffs[0]
            .inverse()
            .ok_or_else(|| DefwError::Validation("constant term is singular".into()))?;
        let mut out = TruncPolyMatrix::zero(self.q, self.r);
        out.coeffs[0] = b0.clone();
        for l in 1..=self.r {
            // B_l = -A_0^{-1} (sum_{a=1}^{l} A_a B_{l-a})
            let mut acc = RatMatrix::zeros(self.q, self.q);
            for a in 1..=l {
                let prod = self.coeffs[a].mul(&out.coeffs[l - a]);
                for i in 0..self.q {
                    for j in 0..self.q {
                        acc[(i, j)] += prod[(i, j)].clone();
                    }
                }
            }
            let mut neg = b0.mul(&acc);
            for i in 0..self.q {
                for j in 0..self.q {
                    let v = -neg[(i, j)].clone();
                    neg[(i, j)] = v;
                }
            }
            out.coeffs[l] = neg;
        }
        Ok(out)
    }

    pub fn conjugate_by(&self, g: &TruncPolyMatrix) -> Result<TruncPolyMatrix> {
        Ok(g.mul(self).mul(&g.inverse()?))
    }

    /// The (r+1)q x (r+1)q block lower-triangular Toeplitz matrix.
    pub fn to_block(&self) -> RatMatrix {
        let n = (self.r + 1) * self.q;
        let mut out = RatMatrix::zeros(n, n);
        for bi in 0..=self.r {
            for bj in 0..=bi {
                let blk = &self.coeffs[bi - bj];
                for i in 0..self.q {
                    for j in 0..self.q {
                        out[(bi * self.q + i, bj * self.q + j)] = blk[(i, j)].clone();
                    }
                }
            }
        }
        out
    }

    /// Inverse of `to_block`; rejects matrices that are not block
    /// lower-triangular Toeplitz of the given shape.
    pub fn from_block(block: &RatMatrix, q: usize, r: usize) -> Result<TruncPolyMatrix> {
        let n = (r + 1) * q;
        if block.rows != n || block.cols != n {
            return Err(DefwError::Validation(format!(
                "expected a {n}x{n} matrix for q={q}, r={r}"
            )));
        }
        let mut coeffs = Vec::with_capacity(r + 1);
        for l in 0..=r {
            let mut m = RatMatrix::zeros(q, q);
            for i in 0..q {
                for j in 0..q {
                    m[(i, j)] = block[(l * q + i, j)].clone();
                }
            }
            coeffs.push(m);
        }
        let candidate = TruncPolyMatrix { q, r, coeffs };
        if &candidate.to_block() != block {
            return Err(DefwError::Validation(
                "matrix is not block lower-triangular Toeplitz".into(),
            ));
        }
        Ok(candidate)
    }

    /// Coefficient blocks of the k-th power: X^k = sum_l Y_l(k) t^l.
    pub fn power_blocks(&self, k: usize) -> Vec<RatMatrix> {
        let mut acc = TruncPolyMatrix::identity(self.q, self.r);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc.coeffs
    }
}

/// Trace of a rational matrix.
pub fn trace(m: &RatMatrix) -> Rat {
    (0..m.rows)
        .map(|i| m[(i, i)].clone())
        .fold(Rat::zero(), |a, b| a + b)
}

/// A rational multiple of (-1/2π)^k, kept exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledInvariantValue {
    pub rational_part: Rat,
    pub pi_exponent: u32,
}

impl ScaledInvariantValue {
    pub fn new(rational_part: Rat, pi_exponent: u32) -> Self {
        ScaledInvariantValue {
            rational_part,
            pi_exponent,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.pi_exponent != other.pi_exponent {
            return Err(DefwError::Validation(
                "cannot add values of different transcendental weight".into(),
            ));
        }
        Ok(ScaledInvariantValue::new(
            &self.rational_part + &other.rational_part,
            self.pi_exponent,
        ))
    }

    pub fn mul(&self, other: &Self) -> Self {
        ScaledInvariantValue::new(
            &self.rational_part * &other.rational_part,
            self.pi_exponent + other.pi_exponent,
        )
    }
}

impl fmt::Display for ScaledInvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * (-1/2pi)^{}", self.rational_part, self.pi_exponent)
    }
}

fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n as u64 {
        acc *= i;
    }
    acc
}

/// C_{k,l}: normalized trace of the l-th block of the k-th power,
/// value (1/k!) (-1/2π)^k tr Y_l(k).
pub fn chern_character_coeff(x: &TruncPolyMatrix, k: u32, l: u32) -> Result<ScaledInvariantValue> {
    if (l as usize) > x.r {
        return Err(DefwError::Validation(format!(
            "block index l={l} exceeds truncation order {}",
            x.r
        )));
    }
    let blocks = x.power_blocks(k as usize);
    let t = trace(&blocks[l as usize]);
    Ok(ScaledInvariantValue::new(
        t / Rat::from_integer(factorial(k)),
        k,
    ))
}

/// C'_{k,l} = k! C_{k,l}: the raw power trace tr Y_l(k).
pub fn power_trace_coeff(x: &TruncPolyMatrix, k: u32, l: u32) -> Result<ScaledInvariantValue> {
    if (l as usize) > x.r {
        return Err(DefwError::Validation(format!(
            "block index l={l} exceeds truncation order {}",
            x.r
        )));
    }
    let blocks = x.power_blocks(k as usize);
    Ok(ScaledInvariantValue::new(trace(&blocks[l as usize]), k))
}

/// Polynomials in the doubly-indexed free variables x_i^(m) with the
/// prolongation derivation x_i^(m) -> x_i^(m+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalPoly {
    // monomial = sorted ((var index, derivative order) -> exponent)
    terms: BTreeMap<Vec<((u32, u32), u32)>, Rat>,
}

impl FormalPoly {
    pub fn zero() -> Self {
        FormalPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = FormalPoly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(i: u32, m: u32) -> Self {
        let mut p = FormalPoly::zero();
        p.add_term(vec![((i, m), 1)], Rat::one());
        p
    }

    fn add_term(&mut self, key: Vec<((u32, u32), u32)>, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &FormalPoly) -> FormalPoly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> FormalPoly {
        let mut out = FormalPoly::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &FormalPoly) -> FormalPoly {
        let mut out = FormalPoly::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let mut merged: BTreeMap<(u32, u32), u32> = BTreeMap::new();
                for &(v, e) in k1.iter().chain(k2.iter()) {
                    *merged.entry(v).or_insert(0) += e;
                }
                out.add_term(merged.into_iter().collect(), c1 * c2);
            }
        }
        out
    }

    /// The unsigned prolongation derivation.
    pub fn delta(&self) -> FormalPoly {
        let mut out = FormalPoly::zero();
        for (key, c) in &self.terms {
            for (pos, &((i, m), e)) in key.iter().enumerate() {
                // differentiate this variable: e * x^(e-1) * x_i^(m+1)
                let mut merged: BTreeMap<(u32, u32), u32> = BTreeMap::new();
                for (p2, &(v, e2)) in key.iter().enumerate() {
                    let e2 = if p2 == pos { e2 - 1 } else { e2 };
                    if e2 > 0 {
                        *merged.entry(v).or_insert(0) += e2;
                    }
                }
                *merged.entry((i, m + 1)).or_insert(0) += 1;
                out.add_term(merged.into_iter().collect(), c * rat(e as i64, 1));
            }
        }
        out
    }

    pub fn delta_power(&self, l: u32) -> FormalPoly {
        let mut cur = self.clone();
        for _ in 0..l {
            cur = cur.delta();
        }
        cur
    }

    /// Evaluate with a value assignment for each variable.
    pub fn eval(&self, f: &impl Fn(u32, u32) -> Rat) -> Rat {
        let mut acc = Rat::zero();
        for (key, c) in &self.terms {
            let mut term = c.clone();
            for &((i, m), e) in key {
                let v = f(i, m);
                for _ in 0..e {
                    term *= &v;
                }
            }
            acc += term;
        }
        acc
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

/// Newton polynomial: the unique polynomial expressing the k-th elementary
/// symmetric function through the power sums p_1..p_k, as a polynomial in
/// the variables x_1^(0)..x_k^(0).
pub fn newton_phi(k: u32) -> FormalPoly {
    // e_k = (1/k) sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
    let mut e: Vec<FormalPoly> = vec![FormalPoly::constant(Rat::one())];
    for kk in 1..=k {
        let mut acc = FormalPoly::zero();
        for i in 1..=kk {
            let term = e[(kk - i) as usize].mul(&FormalPoly::var(i, 0));
            let sign = if i % 2 == 1 { Rat::one() } else { -Rat::one() };
            acc = acc.add(&term.scale(&sign));
        }
        e.push(acc.scale(&rat(1, kk as i64)));
    }
    e[k as usize].clone()
}

/// The jet Chern invariant c_{k,l}: the l-th prolongation of the Newton
/// polynomial evaluated at the power traces x_i^(m) -> tr Y_m(i).
pub fn chern_poly_jet(x: &TruncPolyMatrix, k: u32, l: u32) -> Result<ScaledInvariantValue> {
    if k < 1 || k as usize > x.q {
        return Err(DefwError::Validation(format!(
            "chern index k={k} out of range [1, {}]",
            x.q
        )));
    }
    if (l as usize) > x.r {
        return Err(DefwError::Validation(format!(
            "derivative order l={l} exceeds truncation order {}",
            x.r
        )));
    }
    // cache all needed power traces
    let mut traces: HashMapTraces = HashMapTraces::new();
    for i in 1..=k {
        let blocks = x.power_blocks(i as usize);
        for m in 0..=l {
            traces.insert((i, m), trace(&blocks[m as usize]));
        }
    }
    let poly = newton_phi(k).delta_power(l);
    let value = poly.eval(&|i, m| traces.get(&(i, m)).cloned().unwrap_or_else(Rat::zero));
    Ok(ScaledInvariantValue::new(value, k))
}

type HashMapTraces = std::collections::HashMap<(u32, u32), Rat>;

/// The k-th elementary symmetric function of the eigenvalues of a plain
/// rational matrix, extracted from the characteristic polynomial by exact
/// expansion. This is the oracle pinning the Newton conventions.
pub fn elementary_symmetric(a: &RatMatrix, k: usize) -> Rat {
    // Leverrier–Faddeev: char poly coefficients from power traces, exactly
    // e_k = (1/k) sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i
    let n = a.rows;
    debug_assert!(k <= n);
    let mut powers: Vec<RatMatrix> = vec![RatMatrix::identity(n)];
    for _ in 0..k {
        powers.push(powers.last().unwrap().mul(a));
    }
    let p: Vec<Rat> = (0..=k).map(|i| trace(&powers[i])).collect();
    let mut e: Vec<Rat> = vec![Rat::one()];
    for kk in 1..=k {
        let mut acc = Rat::zero();
        for i in 1..=kk {
            let term = &e[kk - i] * &p[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / rat(kk as i64, 1));
    }
    e[k].clone()
}

/// Elementary symmetric functions of a truncated-polynomial matrix,
/// as a vector of t-coefficients. Oracle for the derivative structure.
pub fn elementary_symmetric_trunc(x: &TruncPolyMatrix, k: usize) -> Vec<Rat> {
    // same Newton recursion, computed in the ring of truncated polynomials
    let r = x.r;
    let poly_trace =
        |m: &TruncPolyMatrix| -> Vec<Rat> { (0..=r).map(|l| trace(m.coeff(l))).collect() };
    let poly_mul = |a: &[Rat], b: &[Rat]| -> Vec<Rat> {
        let mut out = vec![Rat::zero(); r + 1];
        for i in 0..=r {
            for j in 0..=(r - i) {
                let v = &a[i] * &b[j];
                out[i + j] += v;
            }
        }
        out
    };
    let mut powers: Vec<TruncPolyMatrix> = vec![TruncPolyMatrix::identity(x.q, r)];
    for _ in 0..k {
        powers.push(powers.last().unwrap().mul(x));
    }
    let p: Vec<Vec<Rat>> = (0..=k).map(|i| poly_trace(&powers[i])).collect();
    let mut e: Vec<Vec<Rat>> = vec![{
        let mut one = vec![Rat::zero(); r + 1];
        one[0] = Rat::one();
        one
    }];
    for kk in 1..=k {
        let mut acc = vec![Rat::zero(); r + 1];
        for i in 1..=kk {
            let term = poly_mul(&e[kk - i], &p[i]);
            for (a, t) in acc.iter_mut().zip(term) {
                if i % 2 == 1 {
                    *a += t;
                } else {
                    *a -= t;
                }
            }
        }
        for a in acc.iter_mut() {
            *a /= rat(kk as i64, 1);
        }
        e.push(acc);
    }
    e[k].clone()
}

/// Exact Ad-invariance check: c_{k,l}(g X g^{-1}) == c_{k,l}(X).
pub fn check_ad_invariance(
    k: u32,
    l: u32,
    x: &TruncPolyMatrix,
    g: &TruncPolyMatrix,
) -> Result<bool> {
    let conj = x.conjugate_by(g)?;
    Ok(chern_poly_jet(&conj, k, l)? == chern_poly_jet(x, k, l)?)
}

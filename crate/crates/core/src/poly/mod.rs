//! Exact sparse multivariate polynomials over `Q` and `GF(p)`.
//!
//! A [`Polynomial`] is a list of `(Monomial, Scalar)` terms kept sorted in strictly
//! descending degree-reverse-lexicographic order with no zero coefficients, so two equal
//! polynomials always have identical term lists and identical printouts.

mod monomial;
mod parse;
mod ring;
mod scalar;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use monomial::Monomial;
pub use parse::parse_polynomial;
pub use ring::{is_prime, Ring, RingConfig};
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("unknown variable {name:?} in {text:?}")]
    UnknownVariable { name: String, text: String },
    #[error("ambiguous identifier {name:?} in {text:?}; separate factors with '*'")]
    AmbiguousIdentifier { name: String, text: String },
    #[error("malformed exponent in {text:?}")]
    MalformedExponent { text: String },
    #[error("division by zero in coefficient of {text:?}")]
    ZeroDenominator { text: String },
    #[error("coefficient {coefficient} is not defined modulo {modulus}")]
    NotReducible { coefficient: String, modulus: u32 },
    #[error("syntax error at byte {position} in {text:?}: {message}")]
    Syntax { text: String, position: usize, message: String },
    #[error("operands live in different rings")]
    RingMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Scalar)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Scalar::one(ring.characteristic()))
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, Scalar::from_i64(c, ring.characteristic()))
    }

    pub fn variable(ring: &Ring, index: usize) -> Self {
        Self::monomial(ring, Monomial::variable(ring.nvars(), index), Scalar::one(ring.characteristic()))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Scalar) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(prev) => *prev = prev.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Wraps terms already in strictly descending order with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<(Monomial, Scalar)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Coefficient of the monomial `1`. A polynomial lies in `(x_1, ..., x_n)` iff this is zero.
    pub fn constant_term(&self) -> Scalar {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Scalar::zero(self.ring.characteristic()),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect() }
    }

    pub fn scale_i64(&self, c: i64) -> Polynomial {
        self.scale(&Scalar::from_i64(c, self.ring.characteristic()))
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        // multiplication by a monomial preserves the order
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.mul(c))).collect() }
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        assert!(self.same_ring(other), "polynomials from different rings");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let take_b = |c: &Scalar| if negate_other { c.neg() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), take_b(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), take_b(c))));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    /// Panics if the rings differ; see [`poly_arith`] for the checked form.
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert!(self.same_ring(other), "polynomials from different rings");
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let products =
            self.terms.iter().flat_map(|(m1, c1)| other.terms.iter().map(move |(m2, c2)| (m1.mul(m2), c1.mul(c2))));
        Polynomial::from_terms(&self.ring, products)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(self.same_ring(divisor), "polynomials from different rings");
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = lc.inv()?;
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.leading_term() {
            let q = lm.quotient_of(m)?;
            let qc = c.mul(&lc_inv);
            rest = rest.sub(&divisor.mul_term(&q, &qc));
            quotient.push((q, qc));
        }
        // quotient terms were produced in descending order
        Some(Polynomial::from_sorted_terms(&self.ring, quotient))
    }
}

/// Checked ring arithmetic. `b` is ignored for [`ArithOp::Neg`] and required otherwise.
pub fn poly_arith(op: ArithOp, a: &Polynomial, b: Option<&Polynomial>) -> Result<Polynomial, PolyError> {
    if op == ArithOp::Neg {
        return Ok(a.neg());
    }
    let b = b.ok_or(PolyError::RingMismatch)?;
    if !a.same_ring(b) {
        return Err(PolyError::RingMismatch);
    }
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Neg => unreachable!(),
    })
}

pub(crate) fn fmt_monomial(ring: &RingConfig, m: &Monomial, f: &mut impl fmt::Write) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        f.write_str(&ring.variables()[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    /// Canonical form: descending terms, explicit `*` and `^`, e.g. `x^3*z^2 - y*z^2 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { c.neg() } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                fmt_monomial(&self.ring, m, f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(ch: u32) -> Ring {
        RingConfig::new(["x", "y", "z"], ch).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn add_inverse_is_zero() {
        let r = ring(0);
        let x = p(&r, "x");
        assert!(poly_arith(ArithOp::Add, &x, Some(&x.neg())).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(0);
        let prod = p(&r, "x+y").mul(&p(&r, "x-y"));
        assert_eq!(prod, p(&r, "x^2 - y^2"));
    }

    #[test]
    fn square_in_characteristic_two() {
        let r = ring(2);
        let s = p(&r, "x+y").pow(2);
        assert_eq!(s.to_string(), "x^2 + y^2");
    }

    #[test]
    fn constant_terms() {
        let r = ring(0);
        assert_eq!(p(&r, "x^2 + 3").constant_term(), Scalar::from_i64(3, 0));
        assert!(p(&r, "-y*z^2").constant_term().is_zero());
        assert!(Polynomial::zero(&r).constant_term().is_zero());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = p(&ring(0), "x");
        let b = p(&RingConfig::new(["x", "w"], 0).unwrap(), "x");
        assert_eq!(poly_arith(ArithOp::Mul, &a, Some(&b)), Err(PolyError::RingMismatch));
    }

    #[test]
    fn exact_division() {
        let r = ring(0);
        let f = p(&r, "x^2 - y^2");
        assert_eq!(f.div_exact(&p(&r, "x - y")), Some(p(&r, "x + y")));
        assert_eq!(f.div_exact(&p(&r, "x - z")), None);
    }

    #[test]
    fn printing() {
        let r = ring(0);
        assert_eq!(p(&r, "3 - 2*y*x + 1/2 z^3").to_string(), "1/2*z^3 - 2*x*y + 3");
        assert_eq!(p(&r, "-y*z^2").to_string(), "-y*z^2");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
        let r5 = ring(5);
        assert_eq!(p(&r5, "-x").to_string(), "4*x");
    }
}

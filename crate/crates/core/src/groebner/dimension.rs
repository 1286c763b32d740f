use std::fmt;

use serde::{Serialize, Serializer};

use super::{buchberger, GroebnerBasis, GroebnerConfig, GroebnerError};
use crate::matrix::Ideal;
use crate::poly::Monomial;

/// Grade or height of an ideal; the unit ideal gets `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Grade {
    Finite(u32),
    Infinite,
}

impl Grade {
    pub fn at_least(self, required: u64) -> bool {
        match self {
            Grade::Infinite => true,
            Grade::Finite(g) => g as u64 >= required,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Grade::Finite(g) => Some(g),
            Grade::Infinite => None,
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Finite(g) => write!(f, "{g}"),
            Grade::Infinite => f.write_str("∞ (unit ideal)"),
        }
    }
}

impl Serialize for Grade {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Grade::Finite(g) => s.serialize_u32(*g),
            Grade::Infinite => s.serialize_str("infinite"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GradeResult {
    pub ideal: Ideal,
    /// Krull dimension of `R/I`; `-1` for the unit ideal.
    pub dimension: i64,
    pub height: Grade,
    pub grade: Grade,
    pub is_proper: bool,
}

/// Largest set of variables (as a bitmask) containing the support of none of `monomials`.
///
/// Computed as the complement of a minimum hitting set of the supports.
pub fn max_independent_set(nvars: usize, monomials: &[Monomial]) -> Result<u64, GroebnerError> {
    if nvars > 64 {
        return Err(GroebnerError::TooManyVariables(nvars));
    }
    let full: u64 = if nvars == 64 { u64::MAX } else { (1u64 << nvars) - 1 };
    let mut supports: Vec<u64> = monomials.iter().map(Monomial::support_mask).collect();
    supports.sort_by_key(|s| s.count_ones());
    supports.dedup();
    // keep inclusion-minimal supports only
    let mut minimal: Vec<u64> = Vec::new();
    for s in supports {
        if !minimal.iter().any(|m| m & s == *m) {
            minimal.push(s);
        }
    }
    if minimal.contains(&0) {
        // a constant: nothing is independent
        return Ok(0);
    }
    let mut best = full;
    hitting_set(&minimal, 0, &mut best);
    Ok(full & !best)
}

fn hitting_set(sets: &[u64], chosen: u64, best: &mut u64) {
    let Some(unhit) = sets.iter().find(|s| **s & chosen == 0) else {
        if chosen.count_ones() < best.count_ones() {
            *best = chosen;
        }
        return;
    };
    if chosen.count_ones() + 1 >= best.count_ones() {
        return;
    }
    let mut bits = *unhit;
    while bits != 0 {
        let v = bits.trailing_zeros();
        bits &= bits - 1;
        hitting_set(sets, chosen | (1 << v), best);
    }
}

/// `dim R/I` from a Gröbner basis: `-1` for the unit ideal, `n` for the zero ideal.
pub fn krull_dimension_of_basis(gb: &GroebnerBasis) -> Result<i64, GroebnerError> {
    let n = gb.ideal().ring().nvars();
    if gb.is_unit() {
        return Ok(-1);
    }
    let indep = max_independent_set(n, &gb.leading_monomials())?;
    Ok(indep.count_ones() as i64)
}

pub fn krull_dimension(ideal: &Ideal, config: &GroebnerConfig) -> Result<i64, GroebnerError> {
    krull_dimension_of_basis(&buchberger(ideal, config)?)
}

/// Grade of an ideal contained in `(x_1, ..., x_n)`, computed as its height `n - dim R/I`.
///
/// The polynomial ring is Cohen–Macaulay, so grade equals height. The value agrees with the
/// grade after localizing at the origin whenever every minimal prime of `I` passes through
/// the origin, which holds for homogeneous ideals.
pub fn grade(ideal: &Ideal, config: &GroebnerConfig) -> Result<GradeResult, GroebnerError> {
    if ideal.is_unit() {
        return Ok(GradeResult {
            ideal: ideal.clone(),
            dimension: -1,
            height: Grade::Infinite,
            grade: Grade::Infinite,
            is_proper: false,
        });
    }
    if let Some(g) = ideal.generators().iter().find(|g| !g.constant_term().is_zero()) {
        return Err(GroebnerError::NotInMaximalIdeal { generator: g.to_string() });
    }
    let n = ideal.ring().nvars() as i64;
    let dimension = if ideal.is_zero() { n } else { krull_dimension(ideal, config)? };
    let height = Grade::Finite((n - dimension) as u32);
    Ok(GradeResult { ideal: ideal.clone(), dimension, height, grade: height, is_proper: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Ring, RingConfig};

    fn xyz() -> Ring {
        RingConfig::new(["x", "y", "z"], 0).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect())
    }

    #[test]
    fn dimensions() {
        let r = xyz();
        let c = GroebnerConfig::default();
        assert_eq!(krull_dimension(&ideal(&r, &["z", "x^2"]), &c).unwrap(), 1);
        assert_eq!(krull_dimension(&ideal(&r, &["x^3*z^2", "y*z^2", "x^2*z"]), &c).unwrap(), 2);
        assert_eq!(krull_dimension(&Ideal::zero(&r), &c).unwrap(), 3);
        assert_eq!(krull_dimension(&Ideal::unit(&r), &c).unwrap(), -1);
    }

    #[test]
    fn independent_set_is_the_y_axis() {
        let r = xyz();
        let gb = buchberger(&ideal(&r, &["z", "x^2"]), &GroebnerConfig::default()).unwrap();
        assert_eq!(max_independent_set(3, &gb.leading_monomials()).unwrap(), 0b010);
    }

    #[test]
    fn grades() {
        let r = xyz();
        let c = GroebnerConfig::default();
        let g1 = grade(&ideal(&r, &["-y*z", "x^2", "-x*z^2", "z"]), &c).unwrap();
        assert_eq!(g1.grade, Grade::Finite(2));
        assert_eq!(g1.dimension, 1);
        let g2 = grade(&ideal(&r, &["x^3*z^2", "-y*z^2", "x^2*z"]), &c).unwrap();
        assert_eq!(g2.grade, Grade::Finite(1));
        assert_eq!(grade(&Ideal::zero(&r), &c).unwrap().grade, Grade::Finite(0));
        let unit = grade(&Ideal::unit(&r), &c).unwrap();
        assert!(!unit.is_proper);
        assert_eq!(unit.grade, Grade::Infinite);
        assert!(unit.grade.at_least(1_000));
    }

    #[test]
    fn grade_rejects_ideals_off_the_origin() {
        let r = xyz();
        assert!(matches!(
            grade(&ideal(&r, &["x - 1", "y"]), &GroebnerConfig::default()),
            Err(GroebnerError::NotInMaximalIdeal { .. })
        ));
    }

    #[test]
    fn linear_ideal_grade() {
        let r = RingConfig::new(["x", "y", "z", "w"], 0).unwrap();
        let g = grade(&ideal(&r, &["w", "-z", "-y", "x"]), &GroebnerConfig::default()).unwrap();
        assert_eq!(g.grade, Grade::Finite(4));
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A field element: an exact rational (characteristic 0) or a residue mod a prime.
///
/// Residues carry their modulus so that arithmetic needs no external context.
/// Mixing the two kinds, or two different moduli, is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { residue: u32, modulus: u32 },
}

impl Scalar {
    pub fn zero(characteristic: u32) -> Self {
        Self::from_i64(0, characteristic)
    }

    pub fn one(characteristic: u32) -> Self {
        Self::from_i64(1, characteristic)
    }

    pub fn from_i64(value: i64, characteristic: u32) -> Self {
        if characteristic == 0 {
            Scalar::Rational(BigRational::from_integer(BigInt::from(value)))
        } else {
            let m = characteristic as i64;
            Scalar::Modular { residue: value.rem_euclid(m) as u32, modulus: characteristic }
        }
    }

    /// Reduces an integer into the field. Always succeeds.
    pub fn from_bigint(value: &BigInt, characteristic: u32) -> Self {
        if characteristic == 0 {
            Scalar::Rational(BigRational::from_integer(value.clone()))
        } else {
            let m = BigInt::from(characteristic);
            let r = value.mod_floor(&m);
            Scalar::Modular { residue: r.to_u32().expect("residue below modulus"), modulus: characteristic }
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Scalar::Rational(_) => 0,
            Scalar::Modular { modulus, .. } => *modulus,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { residue, .. } => *residue == 1,
        }
    }

    /// True when the printed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Modular { .. } => false,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { residue: a, modulus }, Scalar::Modular { residue: b, modulus: m2 }) => {
                assert_eq!(modulus, m2, "scalar modulus mismatch");
                let s = (*a as u64 + *b as u64) % *modulus as u64;
                Scalar::Modular { residue: s as u32, modulus: *modulus }
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { residue, modulus } => {
                Scalar::Modular { residue: if *residue == 0 { 0 } else { modulus - residue }, modulus: *modulus }
            }
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { residue: a, modulus }, Scalar::Modular { residue: b, modulus: m2 }) => {
                assert_eq!(modulus, m2, "scalar modulus mismatch");
                let s = (*a as u64 * *b as u64) % *modulus as u64;
                Scalar::Modular { residue: s as u32, modulus: *modulus }
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Modular { residue, modulus } => {
                // Fermat: a^(p-2)
                let p = *modulus as u64;
                let mut base = *residue as u64;
                let mut e = p - 2;
                let mut acc = 1u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                Scalar::Modular { residue: acc as u32, modulus: *modulus }
            }
        })
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self.mul(&i))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { residue, .. } => write!(f, "{residue}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_inverse_roundtrip() {
        for p in [2u32, 3, 7, 2_147_483_647] {
            for v in 1..20i64 {
                let a = Scalar::from_i64(v, p);
                if a.is_zero() {
                    continue;
                }
                assert!(a.mul(&a.inv().unwrap()).is_one(), "p={p} v={v}");
            }
        }
    }

    #[test]
    fn negative_residues_normalize() {
        let a = Scalar::from_i64(-1, 5);
        assert_eq!(a, Scalar::Modular { residue: 4, modulus: 5 });
        assert!(a.add(&Scalar::one(5)).is_zero());
    }

    #[test]
    fn rational_display() {
        let q = Scalar::Rational(BigRational::new(BigInt::from(-3), BigInt::from(6)));
        assert_eq!(q.to_string(), "-1/2");
        assert!(q.is_negative());
    }
}

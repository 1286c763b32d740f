use std::fmt;

use crate::poly::{Polynomial, Ring};

/// An ideal given by generators. The unit ideal is flagged and stored as `{1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    unit: bool,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Self {
        Ideal { ring: ring.clone(), generators: generators.into_iter().filter(|g| !g.is_zero()).collect(), unit: false }
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), generators: vec![Polynomial::one(ring)], unit: true }
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), generators: Vec::new(), unit: false }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// True only for ideals constructed as the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "({})", gens.join(", "))
    }
}

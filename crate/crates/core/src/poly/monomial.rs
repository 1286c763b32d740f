use std::cmp::Ordering;

/// Exponent vector of a monomial, ordered by degree-reverse-lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        Monomial { degree, exponents }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { degree: 0, exponents: vec![0; nvars] }
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut exponents = vec![0; nvars];
        exponents[index] = 1;
        Monomial { degree: 1, exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            degree: other.degree - self.degree,
            exponents: other.exponents.iter().zip(&self.exponents).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exponents.iter().zip(&other.exponents).map(|(a, b)| *a.max(b)).collect())
    }

    /// No variable occurs in both.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exponents.iter().zip(&other.exponents).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of the variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exponents.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    /// Support as a bitmask (at most 64 variables).
    pub fn support_mask(&self) -> u64 {
        self.support().fold(0u64, |m, i| m | (1 << i))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exponents.iter().zip(&other.exponents).rev() {
                if a != b {
                    // smaller exponent in the last differing variable wins
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

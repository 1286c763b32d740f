use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::PolyError;

/// Shared handle to a ring description. Polynomials over the same ring hold clones of one handle.
pub type Ring = Arc<RingConfig>;

/// The ambient ring `k[x_1, ..., x_n]` with `k = Q` (characteristic 0) or `GF(p)`.
///
/// Monomials are ordered degree-reverse-lexicographically with `x_1 > x_2 > ... > x_n`
/// in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingConfig {
    variables: Vec<String>,
    characteristic: u32,
}

impl RingConfig {
    pub fn new<S: Into<String>>(
        variables: impl IntoIterator<Item = S>,
        characteristic: u32,
    ) -> Result<Ring, PolyError> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        for (i, v) in variables.iter().enumerate() {
            if !is_identifier(v) {
                return Err(PolyError::InvalidRing(format!("bad variable name {v:?}")));
            }
            if variables[..i].contains(v) {
                return Err(PolyError::InvalidRing(format!("duplicate variable {v:?}")));
            }
        }
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(PolyError::InvalidRing(format!("characteristic {characteristic} is neither 0 nor a prime")));
        }
        if characteristic >= 1 << 31 {
            return Err(PolyError::InvalidRing(format!("characteristic {characteristic} exceeds 2^31")));
        }
        Ok(Arc::new(RingConfig { variables, characteristic }))
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

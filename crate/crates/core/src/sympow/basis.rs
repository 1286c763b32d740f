use std::collections::HashMap;

use serde::Serialize;

use crate::matrix::combinations;

/// `(a_0, ..., a_p)` with `Σ a_i = j` and `Σ i·a_i = t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Composition(pub Vec<u32>);

impl Composition {
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, a)| i as u32 * a).sum()
    }
}

impl std::fmt::Display for Composition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All compositions of weight `j` and degree `t` with `p + 1` parts, lexicographically ascending.
pub fn enumerate_compositions(j: u32, t: u32, p: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut current = vec![0u32; p + 1];
    fill(0, j, t, &mut current, &mut out);
    out
}

fn fill(i: usize, j: u32, t: u32, current: &mut Vec<u32>, out: &mut Vec<Composition>) {
    let last = current.len() - 1;
    if i == last {
        // the last part is forced by the weight; check the degree
        if j as u64 * i as u64 == t as u64 {
            current[i] = j;
            out.push(Composition(current.clone()));
        }
        return;
    }
    for a in 0..=j {
        let used = a * i as u32;
        if used > t {
            break;
        }
        // remaining parts sit at positions > i, so they contribute at least (i+1) per unit
        let rest = j - a;
        let rem_t = t - used;
        if (rest as u64) * (i as u64 + 1) > rem_t as u64 || (rest as u64) * (last as u64) < rem_t as u64 {
            continue;
        }
        current[i] = a;
        fill(i + 1, rest, rem_t, current, out);
    }
    current[i] = 0;
}

/// Exponent vectors of length `rank` summing to `degree`, lexicographically descending.
pub fn divided_monomials(rank: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if rank == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut current = vec![0u32; rank];
    divided_fill(0, degree, &mut current, &mut out);
    out
}

fn divided_fill(i: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i == current.len() - 1 {
        current[i] = left;
        out.push(current.clone());
        return;
    }
    for e in (0..=left).rev() {
        current[i] = e;
        divided_fill(i + 1, left - e, current, out);
    }
}

/// Strictly increasing index tuples of length `degree` from `0..rank`, lexicographically.
pub fn exterior_tuples(rank: usize, degree: u32) -> Vec<Vec<usize>> {
    if degree as usize > rank {
        return Vec::new();
    }
    combinations(rank, degree as usize)
}

/// Basis of one tensor factor `D_a F_i` (even `i`) or `Λ^a F_i` (odd `i`), with reverse lookup.
#[derive(Debug)]
pub(crate) enum FactorBasis {
    Divided { elements: Vec<Vec<u32>>, index: HashMap<Vec<u32>, usize> },
    Exterior { elements: Vec<Vec<usize>>, index: HashMap<Vec<usize>, usize> },
}

impl FactorBasis {
    pub(crate) fn new(position: usize, rank: usize, degree: u32) -> Self {
        if position.is_multiple_of(2) {
            let elements = divided_monomials(rank, degree);
            let index = elements.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
            FactorBasis::Divided { elements, index }
        } else {
            let elements = exterior_tuples(rank, degree);
            let index = elements.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
            FactorBasis::Exterior { elements, index }
        }
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            FactorBasis::Divided { elements, .. } => elements.len(),
            FactorBasis::Exterior { elements, .. } => elements.len(),
        }
    }

    pub(crate) fn divided(&self) -> (&[Vec<u32>], &HashMap<Vec<u32>, usize>) {
        match self {
            FactorBasis::Divided { elements, index } => (elements, index),
            FactorBasis::Exterior { .. } => panic!("expected a divided-power factor"),
        }
    }

    pub(crate) fn exterior(&self) -> (&[Vec<usize>], &HashMap<Vec<usize>, usize>) {
        match self {
            FactorBasis::Exterior { elements, index } => (elements, index),
            FactorBasis::Divided { .. } => panic!("expected an exterior-power factor"),
        }
    }
}

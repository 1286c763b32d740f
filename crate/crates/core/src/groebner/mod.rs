//! Gröbner bases under the ring's degree-reverse-lexicographic order, and the dimension
//! and grade computations built on them.

mod cache;
mod dimension;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::matrix::Ideal;
use crate::poly::{Monomial, PolyError, Polynomial, Scalar};

pub use cache::GroebnerCache;
pub use dimension::{grade, krull_dimension, krull_dimension_of_basis, max_independent_set, Grade, GradeResult};

pub const DEFAULT_SPAIR_BUDGET: u64 = 500_000;

#[derive(Debug, Error)]
pub enum GroebnerError {
    #[error("S-pair budget of {budget} reductions exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("generator {generator} has a nonzero constant term; the ideal is not inside (x_1, ..., x_n)")]
    NotInMaximalIdeal { generator: String },
    #[error("dimension computation supports at most 64 variables, ring has {0}")]
    TooManyVariables(usize),
    #[error("Gröbner cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    DegRevLex,
}

impl MonomialOrder {
    pub fn tag(self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "grevlex",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct GroebnerConfig {
    /// Maximum number of S-pair reductions; `None` means [`DEFAULT_SPAIR_BUDGET`].
    pub spair_budget: Option<u64>,
    pub cache: Option<GroebnerCache>,
}

impl GroebnerConfig {
    pub fn budget(&self) -> u64 {
        self.spair_budget.unwrap_or(DEFAULT_SPAIR_BUDGET)
    }
}

/// A reduced Gröbner basis: monic elements, no leading monomial dividing another term
/// of any other element, listed by descending leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ideal: Ideal,
    basis: Vec<Polynomial>,
    order: MonomialOrder,
}

impl GroebnerBasis {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().filter_map(|p| p.leading_monomial().cloned()).collect()
    }

    /// Normal form of `p` modulo the basis.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let refs: Vec<&Polynomial> = self.basis.iter().collect();
        normal_form(p, &refs)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    sugar: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
}

struct State<'a> {
    polys: Vec<Polynomial>,
    sugar: Vec<u32>,
    /// indices into `polys` forming the current basis
    active: Vec<usize>,
    pairs: BTreeSet<Pair>,
    config: &'a GroebnerConfig,
}

impl State<'_> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("basis elements are nonzero")
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let si = self.sugar[i] + lcm.degree() - self.lm(i).degree();
        let sj = self.sugar[j] + lcm.degree() - self.lm(j).degree();
        si.max(sj)
    }

    /// Gebauer–Möller installation of a new element `h` (already pushed to `polys`).
    fn update(&mut self, h: usize) {
        let lm_h = self.lm(h).clone();
        let candidates: Vec<(usize, Monomial)> = self.active.iter().map(|&g| (g, lm_h.lcm(self.lm(g)))).collect();

        // chain criterion among the new pairs, coprime pairs kept for now
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (g1, l1)) in candidates.iter().enumerate() {
            let coprime = lm_h.is_coprime(self.lm(*g1));
            let dominated =
                candidates[idx + 1..].iter().any(|(_, l2)| l2.divides(l1)) || kept.iter().any(|(_, l2)| l2.divides(l1));
            if coprime || !dominated {
                kept.push((*g1, l1.clone()));
            }
        }
        // Buchberger's first criterion
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !lm_h.is_coprime(self.lm(*g)))
            .map(|(g, lcm)| {
                let sugar = self.pair_sugar(g, h, &lcm);
                Pair { sugar, lcm, i: g, j: h }
            })
            .collect();

        // prune old pairs whose lcm is strictly divisible through h
        let lms: Vec<Monomial> = self.polys.iter().map(|p| p.leading_monomial().unwrap().clone()).collect();
        self.pairs.retain(|p| {
            if !lm_h.divides(&p.lcm) {
                return true;
            }
            let l1 = lms[p.i].lcm(&lm_h);
            let l2 = lms[p.j].lcm(&lm_h);
            l1 == p.lcm || l2 == p.lcm
        });
        self.pairs.extend(new_pairs);

        self.active.retain(|&g| !lm_h.divides(&lms[g]));
        self.active.push(h);
    }

    fn s_polynomial(&self, p: &Pair) -> Polynomial {
        let f = &self.polys[p.i];
        let g = &self.polys[p.j];
        let ch = f.ring().characteristic();
        let one = Scalar::one(ch);
        let mf = self.lm(p.i).quotient_of(&p.lcm).unwrap();
        let mg = self.lm(p.j).quotient_of(&p.lcm).unwrap();
        // both are monic
        f.mul_term(&mf, &one).sub(&g.mul_term(&mg, &one))
    }
}

/// Full reduction of `p` by `divisors` (each assumed monic and nonzero).
pub(crate) fn normal_form(p: &Polynomial, divisors: &[&Polynomial]) -> Polynomial {
    let ring = p.ring().clone();
    let masks: Vec<u64> = divisors.iter().map(|d| d.leading_monomial().map_or(0, Monomial::support_mask)).collect();
    let mut rest = p.clone();
    let mut done: Vec<(Monomial, Scalar)> = Vec::new();
    while let Some((m, c)) = rest.leading_term().cloned() {
        let mask = m.support_mask();
        let hit = divisors
            .iter()
            .zip(&masks)
            .find(|(d, dm)| *dm & !mask == 0 && d.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match hit {
            Some((d, _)) => {
                let (lm, lc) = d.leading_term().unwrap();
                let q = lm.quotient_of(&m).unwrap();
                let coeff = c.div(lc).expect("nonzero leading coefficient");
                rest = rest.sub(&d.mul_term(&q, &coeff));
            }
            None => {
                done.push((m, c));
                let mut terms = rest.into_terms();
                terms.remove(0);
                rest = Polynomial::from_sorted_terms(&ring, terms);
            }
        }
    }
    Polynomial::from_sorted_terms(&ring, done)
}

/// Computes the reduced Gröbner basis of `ideal`.
pub fn buchberger(ideal: &Ideal, config: &GroebnerConfig) -> Result<GroebnerBasis, GroebnerError> {
    if let Some(cache) = &config.cache {
        if let Some(basis) = cache.load(ideal)? {
            return Ok(GroebnerBasis { ideal: ideal.clone(), basis, order: MonomialOrder::DegRevLex });
        }
    }
    let basis = compute_basis(ideal, config)?;
    if let Some(cache) = &config.cache {
        cache.store(ideal, &basis)?;
    }
    Ok(GroebnerBasis { ideal: ideal.clone(), basis, order: MonomialOrder::DegRevLex })
}

fn compute_basis(ideal: &Ideal, config: &GroebnerConfig) -> Result<Vec<Polynomial>, GroebnerError> {
    let ring = ideal.ring();
    if ideal.is_unit() {
        return Ok(vec![Polynomial::one(ring)]);
    }
    let mut inputs: Vec<Polynomial> = ideal.generators().iter().map(Polynomial::monic).collect();
    if inputs.iter().any(Polynomial::is_constant) {
        return Ok(vec![Polynomial::one(ring)]);
    }
    inputs.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    inputs.dedup();

    let mut state = State { polys: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: BTreeSet::new(), config };
    for f in inputs {
        // skip generators already reducible to zero by what we have
        let f = {
            let current: Vec<&Polynomial> = state.active.iter().map(|&i| &state.polys[i]).collect();
            normal_form(&f, &current)
        };
        if f.is_zero() {
            continue;
        }
        let f = f.monic();
        if f.is_constant() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        state.sugar.push(f.total_degree().unwrap());
        state.polys.push(f);
        state.update(state.polys.len() - 1);
    }

    let budget = state.config.budget();
    let mut reductions = 0u64;
    while let Some(pair) = state.pairs.pop_first() {
        reductions += 1;
        if reductions > budget {
            return Err(GroebnerError::BudgetExceeded { budget });
        }
        let s = state.s_polynomial(&pair);
        let current: Vec<&Polynomial> = state.active.iter().map(|&i| &state.polys[i]).collect();
        let h = normal_form(&s, &current);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.is_constant() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        state.sugar.push(pair.sugar);
        state.polys.push(h);
        state.update(state.polys.len() - 1);
    }

    Ok(reduce_basis(state.active.iter().map(|&i| state.polys[i].clone()).collect()))
}

/// Turns any Gröbner basis into the reduced one.
fn reduce_basis(mut g: Vec<Polynomial>) -> Vec<Polynomial> {
    g.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    // minimal: drop elements whose leading monomial is divisible by an earlier (smaller) one
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in g {
        let lm = p.leading_monomial().unwrap();
        if !minimal.iter().any(|q| q.leading_monomial().unwrap().divides(lm)) {
            minimal.push(p);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Polynomial> = minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p).collect();
        reduced.push(normal_form(&minimal[k], &others).monic());
    }
    reduced.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    reduced
}

//! The complex `S_jF•`: in degree `t` the sum over compositions `a` of weight `j` and degree `t`
//! of `D_{a_0}F_0 ⊗ Λ^{a_1}F_1 ⊗ D_{a_2}F_2 ⊗ ...`, with the signed block differentials.
//!
//! Basis conventions: divided monomials are listed by descending exponent vector, exterior
//! tuples lexicographically, tensor blocks with the rightmost factor varying fastest, and blocks
//! by ascending composition. Divided-power basis elements multiply with coefficient 1 under the
//! cup product, and lowering a divided exponent `α_l` contributes the factor `α_l`; with this
//! normalization the differentials square to zero.

mod basis;

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::betti::binomial;
use crate::matrix::{MatrixError, PolyMatrix};
use crate::poly::{Polynomial, Scalar};
use crate::resolution::{matrix_document, FreeResolution, MatrixDocument};

use basis::FactorBasis;
pub use basis::{divided_monomials, enumerate_compositions, exterior_tuples, Composition};

pub const DEFAULT_RANK_CAP: u64 = 50_000;

#[derive(Debug, Error)]
pub enum SymPowError {
    #[error(
        "characteristic {characteristic} does not exceed j·p = {bound}; \
         integers up to j·p must be invertible (use --force to override)"
    )]
    Characteristic { characteristic: u32, bound: u64 },
    #[error("total rank {total} of the complex exceeds the cap of {cap}")]
    RankCap { total: BigUint, cap: u64 },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// `rank D_j(R^l) = C(j + l - 1, l - 1)`; for `l = 0` this is 1 when `j = 0` and 0 otherwise.
pub fn divided_rank(l: u64, j: u64) -> BigUint {
    if l == 0 {
        return if j == 0 { BigUint::from(1u32) } else { BigUint::zero() };
    }
    binomial(j as i64 + l as i64 - 1, l as i64 - 1)
}

/// Rank of `D_a F_i` or `Λ^a F_i` depending on the parity of `i`.
pub fn factor_rank(position: usize, beta: u64, a: u64) -> BigUint {
    if position.is_multiple_of(2) {
        divided_rank(beta, a)
    } else {
        binomial(beta as i64, a as i64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSpec {
    pub composition: Composition,
    #[serde(serialize_with = "crate::betti::serialize_big")]
    pub rank: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSpec {
    pub t: u32,
    pub blocks: Vec<BlockSpec>,
    #[serde(serialize_with = "crate::betti::serialize_big")]
    pub rank: BigUint,
}

/// Blocks and ranks of `(S_jF•)_t` predicted from the Betti numbers alone.
pub fn component_spec_of(betti: &[usize], j: u32, t: u32) -> ComponentSpec {
    let p = betti.len() - 1;
    let blocks: Vec<BlockSpec> = enumerate_compositions(j, t, p)
        .into_iter()
        .map(|c| {
            let rank = c.parts().iter().enumerate().map(|(i, &a)| factor_rank(i, betti[i] as u64, a as u64)).product();
            BlockSpec { composition: c, rank }
        })
        .collect();
    let rank = blocks.iter().map(|b| &b.rank).sum();
    ComponentSpec { t, blocks, rank }
}

pub fn component_spec(res: &FreeResolution, j: u32, t: u32) -> ComponentSpec {
    component_spec_of(res.betti(), j, t)
}

/// `jp` for even `p`, `j(p-1) + min(β_p, j)` for odd `p`.
pub fn expected_length_of(betti: &[usize], j: u32) -> u64 {
    let p = (betti.len() - 1) as u64;
    let j = j as u64;
    if p.is_multiple_of(2) {
        j * p
    } else {
        j * (p - 1) + j.min(betti[p as usize] as u64)
    }
}

pub fn expected_length(res: &FreeResolution, j: u32) -> u64 {
    expected_length_of(res.betti(), j)
}

/// Entries `(target exterior tuple, target divided monomial, coefficient)` of the map
/// `D_a F_{i+1} ⊗ Λ^b F_i -> D_{a-1} F_{i+1} ⊗ Λ^{b+1} F_i` on one basis element, for odd `i`.
///
/// `phi` is the matrix of `φ_{i+1}`; the image `φ(f_l)` is wedged onto the right of `v`.
pub fn a_map_terms(phi: &PolyMatrix, alpha: &[u32], v: &[usize]) -> Vec<(Vec<usize>, Vec<u32>, Polynomial)> {
    let ring = phi.ring();
    let ch = ring.characteristic();
    let mut out = Vec::new();
    for (l, &e) in alpha.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let mut lowered = alpha.to_vec();
        lowered[l] -= 1;
        let mult = Scalar::from_i64(e as i64, ch);
        for k in 0..phi.rows() {
            let entry = phi.get(k, l);
            if entry.is_zero() || v.contains(&k) {
                continue;
            }
            let after = v.iter().filter(|&&m| m > k).count();
            let mut wedge = v.to_vec();
            let pos = wedge.len() - after;
            wedge.insert(pos, k);
            let sign = if after % 2 == 0 { mult.clone() } else { mult.neg() };
            out.push((wedge, lowered.clone(), entry.scale(&sign)));
        }
    }
    out
}

/// Entries `(target exterior tuple, target divided monomial, coefficient)` of the map
/// `Λ^a F_{i+1} ⊗ D_b F_i -> Λ^{a-1} F_{i+1} ⊗ D_{b+1} F_i` on one basis element, for even `i`.
///
/// Deleting the `l`-th wedge factor (1-based) carries the sign `(-1)^{l+1}`; `φ(f)` is then
/// multiplied into the divided monomial with coefficient 1.
pub fn b_map_terms(phi: &PolyMatrix, u: &[usize], gamma: &[u32]) -> Vec<(Vec<usize>, Vec<u32>, Polynomial)> {
    let mut out = Vec::new();
    for (pos, &f) in u.iter().enumerate() {
        let mut rest = u.to_vec();
        rest.remove(pos);
        let negate = pos % 2 == 1;
        for k in 0..phi.rows() {
            let entry = phi.get(k, f);
            if entry.is_zero() {
                continue;
            }
            let mut raised = gamma.to_vec();
            raised[k] += 1;
            out.push((rest.clone(), raised, if negate { entry.neg() } else { entry.clone() }));
        }
    }
    out
}

/// Matrix of the A map on whole bases: columns `D_a F_{i+1} ⊗ Λ^b F_i`, rows
/// `D_{a-1} F_{i+1} ⊗ Λ^{b+1} F_i`, each ordered with the exterior factor varying fastest.
pub fn build_a_map(phi: &PolyMatrix, a_src: u32, a_dst: u32) -> PolyMatrix {
    let (src_d, src_e) = (divided_monomials(phi.cols(), a_src), exterior_tuples(phi.rows(), a_dst));
    let (dst_d, dst_e) =
        (divided_monomials(phi.cols(), a_src.saturating_sub(1)), exterior_tuples(phi.rows(), a_dst + 1));
    let d_index: HashMap<&Vec<u32>, usize> = dst_d.iter().enumerate().map(|(k, e)| (e, k)).collect();
    let e_index: HashMap<&Vec<usize>, usize> = dst_e.iter().enumerate().map(|(k, e)| (e, k)).collect();
    let mut m = PolyMatrix::zeros(phi.ring(), dst_d.len() * dst_e.len(), src_d.len() * src_e.len());
    if a_src == 0 {
        return m;
    }
    for (x, alpha) in src_d.iter().enumerate() {
        for (y, v) in src_e.iter().enumerate() {
            let col = x * src_e.len() + y;
            for (wedge, lowered, c) in a_map_terms(phi, alpha, v) {
                let row = d_index[&lowered] * dst_e.len() + e_index[&wedge];
                let sum = m.get(row, col).add(&c);
                m.set(row, col, sum);
            }
        }
    }
    m
}

/// Matrix of the B map on whole bases: columns `Λ^a F_{i+1} ⊗ D_b F_i`, rows
/// `Λ^{a-1} F_{i+1} ⊗ D_{b+1} F_i`, each ordered with the divided factor varying fastest.
pub fn build_b_map(phi: &PolyMatrix, a_src: u32, a_dst: u32) -> PolyMatrix {
    let (src_e, src_d) = (exterior_tuples(phi.cols(), a_src), divided_monomials(phi.rows(), a_dst));
    let (dst_e, dst_d) =
        (exterior_tuples(phi.cols(), a_src.saturating_sub(1)), divided_monomials(phi.rows(), a_dst + 1));
    let d_index: HashMap<&Vec<u32>, usize> = dst_d.iter().enumerate().map(|(k, e)| (e, k)).collect();
    let e_index: HashMap<&Vec<usize>, usize> = dst_e.iter().enumerate().map(|(k, e)| (e, k)).collect();
    let mut m = PolyMatrix::zeros(phi.ring(), dst_e.len() * dst_d.len(), src_e.len() * src_d.len());
    if a_src == 0 {
        return m;
    }
    for (x, u) in src_e.iter().enumerate() {
        for (y, gamma) in src_d.iter().enumerate() {
            let col = x * src_d.len() + y;
            for (rest, raised, c) in b_map_terms(phi, u, gamma) {
                let row = e_index[&rest] * dst_d.len() + d_index[&raised];
                let sum = m.get(row, col).add(&c);
                m.set(row, col, sum);
            }
        }
    }
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub composition: Composition,
    pub rank: usize,
    /// Position of the block's first basis vector within the component.
    pub offset: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Component {
    pub t: u32,
    pub blocks: Vec<Block>,
    pub rank: usize,
}

impl Component {
    /// The block containing basis position `index`.
    pub fn block_of(&self, index: usize) -> Option<&Block> {
        self.blocks.iter().find(|b| b.offset <= index && index < b.offset + b.rank)
    }
}

#[derive(Clone, Debug, Default)]
pub struct AssembleOptions {
    /// Build even when some integer in `2..=jp` is not invertible.
    pub force: bool,
    /// Cap on the sum of all component ranks; `None` means [`DEFAULT_RANK_CAP`].
    pub rank_cap: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct SymPowerComplex {
    j: u32,
    betti: Vec<usize>,
    components: Vec<Component>,
    differentials: Vec<PolyMatrix>,
    warnings: Vec<String>,
}

impl SymPowerComplex {
    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn betti(&self) -> &[usize] {
        &self.betti
    }

    /// Components for `t = 0..=length`; trailing zero components are dropped.
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.rank).collect()
    }

    /// Largest `t` with a nonzero component.
    pub fn length(&self) -> usize {
        self.components.len() - 1
    }

    /// `d_t : (S_jF•)_t -> (S_jF•)_{t-1}` for `1 <= t <= length`.
    pub fn differential(&self, t: usize) -> &PolyMatrix {
        &self.differentials[t - 1]
    }

    pub fn differential_mut(&mut self, t: usize) -> &mut PolyMatrix {
        &mut self.differentials[t - 1]
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.differentials
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Structured export: block metadata per degree and the differential matrices.
    pub fn to_json(&self, res: &FreeResolution) -> String {
        #[derive(Serialize)]
        struct Export<'a> {
            j: u32,
            ring: serde_json::Value,
            betti: &'a [usize],
            length: usize,
            components: &'a [Component],
            differentials: Vec<DifferentialExport>,
        }
        #[derive(Serialize)]
        struct DifferentialExport {
            t: usize,
            #[serde(flatten)]
            matrix: MatrixDocument,
        }
        let export = Export {
            j: self.j,
            ring: serde_json::json!({
                "variables": res.ring().variables(),
                "characteristic": res.ring().characteristic(),
            }),
            betti: &self.betti,
            length: self.length(),
            components: &self.components,
            differentials: self
                .differentials
                .iter()
                .enumerate()
                .map(|(k, m)| DifferentialExport { t: k + 1, matrix: matrix_document(m) })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&export).expect("complex serializes");
        s.push('\n');
        s
    }
}

/// `0` or a prime larger than `j·p`.
pub fn characteristic_allows(characteristic: u32, j: u32, p: usize) -> bool {
    characteristic == 0 || characteristic as u64 > j as u64 * p as u64
}

struct BuiltBlock {
    composition: Composition,
    factors: Vec<std::rc::Rc<FactorBasis>>,
    offset: usize,
    rank: usize,
}

/// Target indices on factors `i` and `i+1` with the coefficient of that term.
type FactorImage = (usize, usize, Polynomial);

type FactorCache = HashMap<(usize, u32), std::rc::Rc<FactorBasis>>;

fn build_blocks(betti: &[usize], j: u32, t: u32, cache: &mut FactorCache) -> Vec<BuiltBlock> {
    let mut offset = 0;
    let mut out = Vec::new();
    for composition in enumerate_compositions(j, t, betti.len() - 1) {
        let factors: Vec<_> = composition
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                cache.entry((i, a)).or_insert_with(|| std::rc::Rc::new(FactorBasis::new(i, betti[i], a))).clone()
            })
            .collect();
        let rank = factors.iter().map(|f| f.len()).product();
        out.push(BuiltBlock { composition, factors, offset, rank });
        offset += rank;
    }
    out
}

/// Position of a tuple of factor indices within a block, rightmost factor fastest.
fn block_index(factors: &[std::rc::Rc<FactorBasis>], idx: &[usize]) -> usize {
    factors.iter().zip(idx).fold(0, |acc, (f, &k)| acc * f.len() + k)
}

fn for_each_index(factors: &[std::rc::Rc<FactorBasis>], mut f: impl FnMut(&[usize])) {
    let sizes: Vec<usize> = factors.iter().map(|b| b.len()).collect();
    if sizes.contains(&0) {
        return;
    }
    let mut idx = vec![0usize; sizes.len()];
    loop {
        f(&idx);
        let mut k = sizes.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < sizes[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Builds `S_jF•` with all block differentials.
pub fn assemble_complex(
    res: &FreeResolution,
    j: u32,
    options: &AssembleOptions,
) -> Result<SymPowerComplex, SymPowError> {
    let betti = res.betti().to_vec();
    let p = res.length();
    let ring = res.ring();
    let ch = ring.characteristic();
    let mut warnings = Vec::new();
    if !characteristic_allows(ch, j, p) {
        let bound = j as u64 * p as u64;
        if !options.force {
            return Err(SymPowError::Characteristic { characteristic: ch, bound });
        }
        let msg = format!("characteristic {ch} does not exceed j·p = {bound}; building anyway because of --force");
        log::warn!("{msg}");
        warnings.push(msg);
    }
    let top = j * p as u32;
    let specs: Vec<ComponentSpec> = (0..=top).map(|t| component_spec_of(&betti, j, t)).collect();
    let total: BigUint = specs.iter().map(|s| &s.rank).sum();
    let cap = options.rank_cap.unwrap_or(DEFAULT_RANK_CAP);
    if total > BigUint::from(cap) {
        return Err(SymPowError::RankCap { total, cap });
    }
    let length = specs.iter().rposition(|s| !s.rank.is_zero()).unwrap_or(0);

    let mut cache = FactorCache::new();
    let built: Vec<Vec<BuiltBlock>> = (0..=length as u32).map(|t| build_blocks(&betti, j, t, &mut cache)).collect();
    let components: Vec<Component> = built
        .iter()
        .zip(&specs)
        .enumerate()
        .map(|(t, (blocks, spec))| {
            let rank = blocks.iter().map(|b| b.rank).sum();
            debug_assert_eq!(BigUint::from(rank), spec.rank);
            Component {
                t: t as u32,
                blocks: blocks
                    .iter()
                    .map(|b| Block { composition: b.composition.clone(), rank: b.rank, offset: b.offset })
                    .collect(),
                rank,
            }
        })
        .collect();

    let mut differentials = Vec::with_capacity(length);
    for t in 1..=length {
        let mut d = PolyMatrix::zeros(ring, components[t - 1].rank, components[t].rank);
        let targets: HashMap<&Composition, &BuiltBlock> = built[t - 1].iter().map(|b| (&b.composition, b)).collect();
        for src in &built[t] {
            let a = src.composition.parts();
            for i in 0..p {
                if a[i + 1] == 0 {
                    continue;
                }
                let mut b = a.to_vec();
                b[i] += 1;
                b[i + 1] -= 1;
                let Some(dst) = targets.get(&Composition(b)) else { continue };
                if dst.rank == 0 {
                    continue;
                }
                let sigma: u64 = (0..=i).map(|k| (k as u64 + 1) * a[k] as u64).sum();
                let block_sign = if sigma.is_multiple_of(2) { 1 } else { -1 };
                add_block_map(&mut d, res.map(i + 1), i, src, dst, block_sign);
            }
        }
        differentials.push(d);
    }
    Ok(SymPowerComplex { j, betti, components, differentials, warnings })
}

fn add_block_map(d: &mut PolyMatrix, phi: &PolyMatrix, i: usize, src: &BuiltBlock, dst: &BuiltBlock, block_sign: i64) {
    // images on the two touched factors, memoized per (factor i, factor i+1) index pair
    let mut memo: HashMap<(usize, usize), Vec<FactorImage>> = HashMap::new();
    for_each_index(&src.factors, |idx| {
        let key = (idx[i], idx[i + 1]);
        let terms = memo.entry(key).or_insert_with(|| {
            if i % 2 == 1 {
                let (v_el, _) = src.factors[i].exterior();
                let (alpha_el, _) = src.factors[i + 1].divided();
                let (_, v_ix) = dst.factors[i].exterior();
                let (_, alpha_ix) = dst.factors[i + 1].divided();
                a_map_terms(phi, &alpha_el[key.1], &v_el[key.0])
                    .into_iter()
                    .map(|(w, al, c)| (v_ix[&w], alpha_ix[&al], c.scale_i64(block_sign)))
                    .collect()
            } else {
                let (g_el, _) = src.factors[i].divided();
                let (u_el, _) = src.factors[i + 1].exterior();
                let (_, g_ix) = dst.factors[i].divided();
                let (_, u_ix) = dst.factors[i + 1].exterior();
                b_map_terms(phi, &u_el[key.1], &g_el[key.0])
                    .into_iter()
                    .map(|(rest, raised, c)| (g_ix[&raised], u_ix[&rest], c.scale_i64(block_sign)))
                    .collect()
            }
        });
        let col = src.offset + block_index(&src.factors, idx);
        let mut target = idx.to_vec();
        for (x, y, c) in terms.iter() {
            target[i] = *x;
            target[i + 1] = *y;
            let row = dst.offset + block_index(&dst.factors, &target);
            let sum = d.get(row, col).add(c);
            d.set(row, col, sum);
        }
    });
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// Degree of the source basis vector.
    pub t: usize,
    pub row: usize,
    pub col: usize,
    pub row_block: String,
    pub col_block: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub checked: usize,
    pub witnesses: Vec<Witness>,
}

const MAX_WITNESSES: usize = 10;

fn locate(c: &Component, index: usize) -> String {
    match c.block_of(index) {
        Some(b) => format!("{} #{}", b.composition, index - b.offset + 1),
        None => format!("#{}", index + 1),
    }
}

/// Checks `d_{t-1} · d_t = 0` for every `t`, reporting nonzero entries with their blocks.
pub fn verify_dd_zero(c: &SymPowerComplex) -> VerifyReport {
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for t in 2..=c.length() {
        let prod = c.differential(t - 1).mul(c.differential(t)).expect("consecutive differentials compose");
        checked += 1;
        for r in 0..prod.rows() {
            for col in 0..prod.cols() {
                let v = prod.get(r, col);
                if !v.is_zero() && witnesses.len() < MAX_WITNESSES {
                    witnesses.push(Witness {
                        t,
                        row: r + 1,
                        col: col + 1,
                        row_block: locate(&c.components[t - 2], r),
                        col_block: locate(&c.components[t], col),
                        value: v.to_string(),
                    });
                }
            }
        }
    }
    VerifyReport { pass: witnesses.is_empty(), checked, witnesses }
}

/// Checks that every differential entry has zero constant term.
pub fn verify_minimal(c: &SymPowerComplex) -> VerifyReport {
    let mut witnesses = Vec::new();
    let mut pass = true;
    for t in 1..=c.length() {
        let d = c.differential(t);
        for r in 0..d.rows() {
            for col in 0..d.cols() {
                let v = d.get(r, col);
                if !v.constant_term().is_zero() {
                    pass = false;
                    if witnesses.len() < MAX_WITNESSES {
                        witnesses.push(Witness {
                            t,
                            row: r + 1,
                            col: col + 1,
                            row_block: locate(&c.components[t - 1], r),
                            col_block: locate(&c.components[t], col),
                            value: v.to_string(),
                        });
                    }
                }
            }
        }
    }
    VerifyReport { pass, checked: c.length(), witnesses }
}

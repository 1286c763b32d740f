#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;
use symres::matrix::PolyMatrix;
use symres::poly::{Monomial, Polynomial, Ring, RingConfig, Scalar};
use symres::resolution::FreeResolution;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str) -> FreeResolution {
    FreeResolution::load(&fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub const FIXTURES: [&str; 5] =
    ["pd1_monomial.json", "generic_3x2.json", "product_of_lines.json", "squarefree_six.json", "koszul3.json"];

pub fn random_monomial_entry(rng: &mut impl Rng, ring: &Ring) -> Polynomial {
    let n = ring.nvars();
    let mut exps = vec![0u32; n];
    for _ in 0..rng.gen_range(1..=2) {
        exps[rng.gen_range(0..n)] += 1;
    }
    let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Polynomial::monomial(ring, Monomial::new(exps), Scalar::from_i64(c, ring.characteristic()))
}

/// A minimal complex with the given ranks and random sparse monomial entries.
///
/// Each intermediate `F_i` is split into a part hit by `φ_{i+1}` and a part on which `φ_i`
/// may be nonzero, so consecutive maps compose to zero.
pub fn random_complex(rng: &mut impl Rng, betti: &[usize], density: f64) -> FreeResolution {
    let ring = RingConfig::new(["x1", "x2", "x3", "x4"], 0).unwrap();
    let p = betti.len() - 1;
    // split[i] = number of leading basis vectors of F_i reserved as targets of φ_{i+1}
    let split: Vec<usize> = (0..=p)
        .map(|i| match i {
            0 => betti[0],
            i if i == p => 0,
            i => rng.gen_range(0..=betti[i]),
        })
        .collect();
    let maps = (1..=p)
        .map(|i| {
            let (rows, cols) = (betti[i - 1], betti[i]);
            let mut m = PolyMatrix::zeros(&ring, rows, cols);
            for r in 0..split[i - 1] {
                for c in split[i]..cols {
                    if rng.gen_bool(density) {
                        m.set(r, c, random_monomial_entry(rng, &ring));
                    }
                }
            }
            m
        })
        .collect();
    FreeResolution::new(&ring, maps, true).expect("block-split maps form a minimal complex")
}

/// Every `β` with `1 <= β_i <= max` and length `p`.
pub fn all_betti(p: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..=p {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (1..=max).map(move |b| {
                    let mut v = prefix.clone();
                    v.push(b);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn r0(betti: &[usize]) -> i64 {
    betti.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
}

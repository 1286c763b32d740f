use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symres::groebner::{buchberger, grade, krull_dimension, Grade, GroebnerCache, GroebnerConfig};
use symres::matrix::{Ideal, PolyMatrix, DEFAULT_MAX_MINOR_COUNT};
use symres::poly::{parse_polynomial, Monomial, Polynomial, Ring, RingConfig, Scalar};

const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(ring, gens.iter().map(|g| parse_polynomial(g, ring).unwrap()).collect())
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &Ring) -> Polynomial {
    let n = ring.nvars();
    let terms = (0..rng.gen_range(1..=3)).map(|_| {
        let mut e = vec![0u32; n];
        for _ in 0..rng.gen_range(1..=2) {
            e[rng.gen_range(0..n)] += 1;
        }
        (Monomial::new(e), Scalar::from_i64(rng.gen_range(1..=4), ring.characteristic()))
    });
    Polynomial::from_terms(ring, terms)
}

#[test]
fn basis_does_not_depend_on_generator_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let ring = RingConfig::new(["x", "y", "z"], 0).unwrap();
    let config = GroebnerConfig::default();
    for _ in 0..20 {
        let mut gens: Vec<Polynomial> = (0..rng.gen_range(1..=4)).map(|_| random_poly(&mut rng, &ring)).collect();
        let first = buchberger(&Ideal::new(&ring, gens.clone()), &config).unwrap();
        gens.shuffle(&mut rng);
        let second = buchberger(&Ideal::new(&ring, gens.clone()), &config).unwrap();
        assert_eq!(first.basis(), second.basis());
        for g in &gens {
            assert!(first.contains(g));
        }
    }
}

#[test]
fn dimension_is_monotone_under_inclusion() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let ring = RingConfig::new(["x", "y", "z", "w"], 0).unwrap();
    let config = GroebnerConfig::default();
    for _ in 0..20 {
        let small: Vec<Polynomial> = (0..rng.gen_range(1..=3)).map(|_| random_poly(&mut rng, &ring)).collect();
        let mut large = small.clone();
        large.push(random_poly(&mut rng, &ring));
        let d_small = krull_dimension(&Ideal::new(&ring, small), &config).unwrap();
        let d_large = krull_dimension(&Ideal::new(&ring, large), &config).unwrap();
        assert!(d_large <= d_small, "{d_large} > {d_small}");
    }
}

/// Dimension by enumerating variable subsets that avoid every generator's support.
fn brute_force_dimension(nvars: usize, gens: &[Vec<u32>]) -> i64 {
    (0u32..1 << nvars)
        .filter(|s| gens.iter().all(|g| g.iter().enumerate().any(|(v, &e)| e > 0 && s & (1 << v) == 0)))
        .map(|s| s.count_ones() as i64)
        .max()
        .unwrap_or(-1)
}

#[test]
fn monomial_ideals_match_subset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let config = GroebnerConfig::default();
    for _ in 0..100 {
        let n = rng.gen_range(1..=6usize);
        let ring = RingConfig::new(NAMES[..n].iter().copied(), 0).unwrap();
        let gens: Vec<Vec<u32>> = (0..rng.gen_range(1..=6))
            .map(|_| loop {
                let e: Vec<u32> = (0..n).map(|_| if rng.gen_bool(0.4) { rng.gen_range(1..=2) } else { 0 }).collect();
                if e.iter().any(|&x| x > 0) {
                    break e;
                }
            })
            .collect();
        let polys =
            gens.iter().map(|e| Polynomial::monomial(&ring, Monomial::new(e.clone()), Scalar::one(0))).collect();
        let got = krull_dimension(&Ideal::new(&ring, polys), &config).unwrap();
        assert_eq!(got, brute_force_dimension(n, &gens));
    }
}

#[test]
fn linear_ideals_have_codimension_equal_to_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let config = GroebnerConfig::default();
    for _ in 0..30 {
        let n = rng.gen_range(2..=6usize);
        let ring = RingConfig::new(NAMES[..n].iter().copied(), 0).unwrap();
        let k = rng.gen_range(1..=n);
        let mut coeffs = PolyMatrix::zeros(&ring, k, n);
        let gens: Vec<Polynomial> = (0..k)
            .map(|r| {
                let terms: Vec<_> = (0..n)
                    .map(|v| {
                        let c = rng.gen_range(-2..=2);
                        coeffs.set(r, v, Polynomial::from_i64(&ring, c));
                        (Monomial::variable(n, v), Scalar::from_i64(c, 0))
                    })
                    .collect();
                Polynomial::from_terms(&ring, terms)
            })
            .collect();
        let rank = coeffs.rank_over_fraction_field() as i64;
        let got = krull_dimension(&Ideal::new(&ring, gens), &config).unwrap();
        assert_eq!(got, n as i64 - rank);
    }
}

#[test]
fn known_grades() {
    let ring = RingConfig::new(["x", "y", "z"], 0).unwrap();
    let config = GroebnerConfig::default();
    let g = |gens: &[&str]| grade(&ideal(&ring, gens), &config).unwrap().grade;
    assert_eq!(g(&["x", "y", "z"]), Grade::Finite(3));
    assert_eq!(g(&["x*y", "x*z"]), Grade::Finite(1));
    assert_eq!(g(&["x^2 - y*z", "y^2 - x*z", "z^2 - x*y"]), Grade::Finite(2));
    assert_eq!(grade(&Ideal::unit(&ring), &config).unwrap().grade, Grade::Infinite);
    assert!(grade(&ideal(&ring, &["x", "x + 1"]), &config).is_err());
    assert_eq!(g(&["0"]), Grade::Finite(0));
    // 2x2 minors of a generic 2x3 matrix have grade 2
    let ring6 = RingConfig::new(NAMES, 0).unwrap();
    let m = PolyMatrix::from_rows(
        &ring6,
        ["a b c", "d e f"]
            .iter()
            .map(|row| row.split(' ').map(|v| parse_polynomial(v, &ring6).unwrap()).collect())
            .collect(),
    )
    .unwrap();
    let minors = m.minors_ideal(2, DEFAULT_MAX_MINOR_COUNT).unwrap();
    assert_eq!(grade(&minors, &config).unwrap().grade, Grade::Finite(2));
}

#[test]
fn positive_characteristic() {
    let ring = RingConfig::new(["x", "y"], 2).unwrap();
    let config = GroebnerConfig::default();
    // x^2 + y^2 = (x + y)^2 over GF(2)
    let i = ideal(&ring, &["x^2 + y^2", "x + y"]);
    let gb = buchberger(&i, &config).unwrap();
    assert_eq!(gb.basis().len(), 1);
    assert_eq!(krull_dimension(&i, &config).unwrap(), 1);
}

#[test]
fn spair_budget_is_enforced() {
    let ring = RingConfig::new(["x", "y", "z"], 0).unwrap();
    let config = GroebnerConfig { spair_budget: Some(0), cache: None };
    let i = ideal(&ring, &["x^2 - y*z", "y^2 - x*z", "z^2 - x*y"]);
    assert!(buchberger(&i, &config).is_err());
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let ring = RingConfig::new(["x", "y", "z"], 0).unwrap();
    let i = ideal(&ring, &["x^2 - y*z", "y^2 - x*z"]);
    let config = GroebnerConfig { spair_budget: None, cache: Some(GroebnerCache::new(dir.path())) };
    let fresh = buchberger(&i, &config).unwrap();
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let cached = buchberger(&i, &config).unwrap();
    assert_eq!(fresh.basis(), cached.basis());
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symres::matrix::{PolyMatrix, DEFAULT_MAX_MINOR_COUNT};
use symres::poly::{Monomial, Polynomial, Ring, RingConfig, Scalar};

fn random_entry(rng: &mut ChaCha8Rng, ring: &Ring) -> Polynomial {
    if rng.gen_bool(0.3) {
        return Polynomial::zero(ring);
    }
    let e: Vec<u32> = (0..ring.nvars()).map(|_| rng.gen_range(0..2)).collect();
    let c = Scalar::from_i64(rng.gen_range(-3..=3), ring.characteristic());
    Polynomial::monomial(ring, Monomial::new(e), c)
}

fn random_matrix(rng: &mut ChaCha8Rng, ring: &Ring, rows: usize, cols: usize) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(ring, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, random_entry(rng, ring));
        }
    }
    m
}

#[test]
fn determinant_alternates_under_row_swap() {
    let ring = RingConfig::new(["x", "y"], 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=4 {
        for _ in 0..10 {
            let m = random_matrix(&mut rng, &ring, n, n);
            let mut order: Vec<usize> = (0..n).collect();
            if n > 1 {
                order.swap(0, n - 1);
            }
            let cols: Vec<usize> = (0..n).collect();
            let swapped = m.submatrix(&order, &cols);
            let d = m.determinant().unwrap();
            let expected = if n > 1 { d.neg() } else { d };
            assert_eq!(swapped.determinant().unwrap(), expected);
        }
    }
}

#[test]
fn determinant_of_block_triangular_is_product() {
    let ring = RingConfig::new(["x", "y", "z"], 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (a, b) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
        let top = random_matrix(&mut rng, &ring, a, a);
        let bottom = random_matrix(&mut rng, &ring, b, b);
        let corner = random_matrix(&mut rng, &ring, a, b);
        let mut m = PolyMatrix::zeros(&ring, a + b, a + b);
        for r in 0..a {
            for c in 0..a {
                m.set(r, c, top.get(r, c).clone());
            }
            for c in 0..b {
                m.set(r, a + c, corner.get(r, c).clone());
            }
        }
        for r in 0..b {
            for c in 0..b {
                m.set(a + r, a + c, bottom.get(r, c).clone());
            }
        }
        let product = top.determinant().unwrap().mul(&bottom.determinant().unwrap());
        assert_eq!(m.determinant().unwrap(), product);
    }
}

#[test]
fn rank_is_largest_nonvanishing_minor_size() {
    let ring = RingConfig::new(["x", "y"], 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let inner = rng.gen_range(1..=3);
        // a product through a narrow middle keeps the rank small
        let m = random_matrix(&mut rng, &ring, rows, inner).mul(&random_matrix(&mut rng, &ring, inner, cols)).unwrap();
        let rank = m.rank_over_fraction_field();
        let largest = (1..=rows.min(cols) as i64)
            .filter(|&t| !m.minors_ideal(t, DEFAULT_MAX_MINOR_COUNT).unwrap().is_zero())
            .max()
            .unwrap_or(0);
        assert_eq!(rank as i64, largest, "{m:?}");
        assert!(rank <= inner);
    }
}

#[test]
fn minors_ideal_conventions() {
    let ring = RingConfig::new(["x", "y"], 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let m = random_matrix(&mut rng, &ring, 2, 3);
    assert!(m.minors_ideal(0, DEFAULT_MAX_MINOR_COUNT).unwrap().is_unit());
    assert!(m.minors_ideal(-1, DEFAULT_MAX_MINOR_COUNT).unwrap().is_unit());
    assert!(m.minors_ideal(3, DEFAULT_MAX_MINOR_COUNT).unwrap().is_zero());
    assert!(m.minors_ideal(2, 2).is_err());
}

mod common;

use common::all_betti;
use num_bigint::BigUint;
use num_traits::Zero;
use symres::betti::{
    beh_check, betti_formula, betti_pd1, betti_table, expected_pd, fiber_bound, lower_bound, rees_mu, upper_bound,
    BettiLabel,
};

fn u(n: u64) -> BigUint {
    BigUint::from(n)
}

#[test]
fn support_ends_at_expected_projective_dimension() {
    for p in 1..=3usize {
        for beta in all_betti(p, 5) {
            for j in 1..=4u32 {
                let pd = expected_pd(&beta, j) as u32;
                assert!(!betti_formula(&beta, j, pd).is_zero(), "β={beta:?} j={j}");
                for t in pd + 1..=j * p as u32 + 1 {
                    assert!(betti_formula(&beta, j, t).is_zero(), "β={beta:?} j={j} t={t}");
                }
            }
        }
    }
}

#[test]
fn bounds_sandwich_every_table() {
    for p in 1..=3usize {
        for beta in all_betti(p, 6) {
            for j in 1..=4u32 {
                let upper = upper_bound(&beta, j);
                for t in 0..=expected_pd(&beta, j) as u32 {
                    let v = betti_formula(&beta, j, t);
                    assert!(v <= upper, "β={beta:?} j={j} t={t}");
                    if let Some(lower) = lower_bound(&beta, j, t) {
                        assert!(lower <= v, "β={beta:?} j={j} t={t}: {lower} > {v}");
                    }
                }
            }
        }
    }
}

#[test]
fn length_one_closed_form_for_larger_ranks() {
    for b0 in 1..=12 {
        for b1 in 1..=12 {
            for j in 0..=6u32 {
                for t in 0..=j.min(b1 as u32) {
                    assert_eq!(betti_pd1(b0, b1, j, t).unwrap(), betti_formula(&[b0, b1], j, t));
                }
            }
        }
    }
}

#[test]
fn known_tables() {
    let t = betti_table(&[6, 7, 2], 2, BettiLabel::Sym).unwrap();
    assert_eq!(t.values, [21, 42, 33, 14, 3].map(u));
    assert_eq!(t.pd, 4);
    assert_eq!(upper_bound(&[6, 7, 2], 2), u(171));
    assert_eq!(upper_bound(&[6, 7, 2], 3), u(1330));
    let t = betti_table(&[4, 4, 1], 3, BettiLabel::Sym).unwrap();
    assert_eq!(t.values, [20, 40, 34, 20, 10, 4, 1].map(u));
    assert_eq!(rees_mu(6, 2), u(21));
    assert!(betti_table(&[3], 2, BettiLabel::Sym).is_err());
    assert!(betti_table(&[3, 0], 2, BettiLabel::Sym).is_err());
}

#[test]
fn labels() {
    assert_eq!("rees".parse::<BettiLabel>().unwrap(), BettiLabel::Rees);
    assert!("sum".parse::<BettiLabel>().is_err());
    let table = betti_table(&[3, 2], 2, BettiLabel::Power).unwrap();
    let text = table.to_string();
    assert!(text.contains("I^2"));
    assert_eq!(text.lines().count(), 2 + table.values.len());
}

#[test]
fn lower_bound_reports() {
    let values = [21, 42, 33, 14, 3].map(u);
    let report = beh_check(&values, 4, 6);
    assert!(report.hypothesis_holds && report.pass);
    assert_eq!(report.total, u(113));
    let too_big = beh_check(&values, 7, 6);
    assert!(!too_big.hypothesis_holds && !too_big.pass);
    let fiber = fiber_bound(2, 3, 4, &values);
    assert_eq!(fiber.composite_beta1, 11);
    assert!(fiber.pass);
}

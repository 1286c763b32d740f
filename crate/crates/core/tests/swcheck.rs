mod common;

use common::{fixture, FIXTURES};
use symres::swcheck::{
    check_swj, check_swj_cached, j_feasible_range, j_feasible_range_of, pd1_grade_criterion, GradeCache, SwConfig,
};
use symres::sympow::{assemble_complex, expected_length, AssembleOptions};

#[test]
fn first_power_always_passes() {
    let config = SwConfig::default();
    for name in FIXTURES {
        let report = check_swj(&fixture(name), 1, &config).unwrap();
        assert!(report.overall, "{name}:\n{report}");
    }
}

#[test]
fn passing_implies_expected_length() {
    let config = SwConfig::default();
    for name in FIXTURES {
        let res = fixture(name);
        for j in 1..=3 {
            if check_swj(&res, j, &config).unwrap().overall {
                let c = assemble_complex(&res, j, &AssembleOptions::default()).unwrap();
                assert_eq!(c.length() as u64, expected_length(&res, j), "{name} j={j}");
            }
        }
    }
}

#[test]
fn conditions_are_monotone_in_j() {
    let config = SwConfig::default();
    for name in FIXTURES {
        let res = fixture(name);
        let mut cache = GradeCache::new(&res, &config);
        let verdicts: Vec<bool> = (1..=4).map(|j| check_swj_cached(&res, j, &mut cache).unwrap().overall).collect();
        for w in verdicts.windows(2) {
            assert!(w[0] || !w[1], "{name}: {verdicts:?}");
        }
    }
}

#[test]
fn fixture_verdicts() {
    let config = SwConfig::default();
    let expect = [
        ("pd1_monomial.json", [true, true, true]),
        ("generic_3x2.json", [true, true, true]),
        ("product_of_lines.json", [true, true, false]),
        ("squarefree_six.json", [true, true, false]),
    ];
    for (name, verdicts) in expect {
        let res = fixture(name);
        for (k, want) in verdicts.iter().enumerate() {
            let j = k as u32 + 1;
            assert_eq!(check_swj(&res, j, &config).unwrap().overall, *want, "{name} j={j}");
        }
    }
}

#[test]
fn characteristic_condition() {
    let text = std::fs::read_to_string(common::fixture_path("generic_3x2.json")).unwrap();
    let res =
        symres::resolution::FreeResolution::from_json(&text.replace("\"characteristic\": 0", "\"characteristic\": 3"))
            .unwrap();
    let config = SwConfig::default();
    assert!(check_swj(&res, 2, &config).unwrap().overall);
    let report = check_swj(&res, 3, &config).unwrap();
    assert!(!report.overall);
    assert_eq!(report.failures().count(), 1);
}

#[test]
fn length_one_criterion() {
    let res = fixture("generic_3x2.json");
    let report = pd1_grade_criterion(&res, 3, &SwConfig::default()).unwrap();
    assert_eq!(report.beta1, 2);
    assert!(report.pass);
    assert!(pd1_grade_criterion(&fixture("koszul3.json"), 2, &SwConfig::default()).is_err());
}

#[test]
fn feasibility() {
    assert_eq!(j_feasible_range(&fixture("product_of_lines.json"), None).max_j, Some(2));
    assert_eq!(j_feasible_range(&fixture("squarefree_six.json"), None).max_j, Some(2));
    let koszul = j_feasible_range(&fixture("koszul3.json"), None);
    assert!(koszul.allows(1));
    let wide = j_feasible_range_of(&[6, 7, 2], 10);
    assert!(wide.dim_overridden || wide.dim == 10);
    assert_eq!(wide.max_j, Some(5));
    assert!(wide.allows(5) && !wide.allows(6));
}

mod common;

use common::{fixture, FIXTURES};
use symres::resolution::{FreeResolution, ResolutionError};

#[test]
fn map_ranks_do_not_exceed_defect_ranks() {
    for name in FIXTURES {
        let res = fixture(name);
        let r = res.defect_ranks();
        for i in 1..=res.length() {
            let rank = res.map(i).rank_over_fraction_field() as i64;
            assert!(rank <= r.get(i), "{name}: rank φ_{i} = {rank} > r_{i} = {}", r.get(i));
        }
        assert!(r.r0 >= 0, "{name}: negative generic rank");
    }
}

#[test]
fn json_round_trip() {
    for name in FIXTURES {
        let res = fixture(name);
        let text = res.to_json();
        let again = FreeResolution::from_json(&text).unwrap();
        assert_eq!(again.to_json(), text, "{name}");
        assert_eq!(again.betti(), res.betti());
        assert_eq!(again.maps(), res.maps());
        assert_eq!(again.reference_betti(), res.reference_betti());
    }
}

#[test]
fn fixture_shapes() {
    let shapes = [
        ("pd1_monomial.json", vec![3, 2]),
        ("generic_3x2.json", vec![3, 2]),
        ("product_of_lines.json", vec![4, 4, 1]),
        ("squarefree_six.json", vec![6, 7, 2]),
        ("koszul3.json", vec![1, 3, 3, 1]),
    ];
    for (name, betti) in shapes {
        let res = fixture(name);
        assert_eq!(res.betti(), betti.as_slice(), "{name}");
        assert!(res.is_minimal() && res.entries_in_maximal_ideal(), "{name}");
    }
}

const TWO_MAPS: &str = r#"{
  "ring": {"variables": ["x", "y", "z"], "characteristic": 0},
  "minimal": true,
  "maps": [
    {"rows": 1, "cols": 3, "entries": [["x", "y", "z"]]},
    {"rows": 3, "cols": 3, "entries": [["-y", "-z", "0"], ["x", "0", "-z"], ["0", "x", "y"]]}
  ]
}"#;

#[test]
fn loader_accepts_a_complex() {
    let res = FreeResolution::from_json(TWO_MAPS).unwrap();
    assert_eq!(res.betti(), &[1, 3, 3]);
}

#[test]
fn loader_rejects_bad_input() {
    let broken = TWO_MAPS.replace(r#"["0", "x", "y"]"#, r#"["0", "x", "x"]"#);
    assert!(matches!(FreeResolution::from_json(&broken), Err(ResolutionError::NotComplex { map: 1, .. })));
    let shape = TWO_MAPS.replace(r#""rows": 3, "cols": 3"#, r#""rows": 2, "cols": 3"#);
    assert!(FreeResolution::from_json(&shape).is_err());
    let unknown = TWO_MAPS.replace(r#""y", "z"]]"#, r#""y", "w"]]"#);
    assert!(matches!(FreeResolution::from_json(&unknown), Err(ResolutionError::Entry { .. })));
    let unit = TWO_MAPS.replace(r#"["x", "y", "z"]]"#, r#"["x", "y", "1"]]"#);
    assert!(FreeResolution::from_json(&unit).is_err());
    assert!(FreeResolution::from_json("{").is_err());
}

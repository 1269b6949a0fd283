use super::*;
use crate::ideal::close_finite_level;
use crate::literal::parse_system;
use crate::testutil::{bin, w};

#[test]
fn model_sizes() {
    let sys = bin();
    let m = build_finite_model(&sys, 1).unwrap();
    assert_eq!(m.words(), &[w(&[1]), w(&[2])]);
    assert_eq!(
        m.pairs(),
        &[(w(&[1]), w(&[1])), (w(&[1]), w(&[2])), (w(&[2]), w(&[2]))]
    );
    assert_eq!(build_finite_model(&sys, 2).unwrap().pairs().len(), 10);
    let k23 = parse_system("2.3;2").unwrap();
    let m = build_finite_model(&k23, 2).unwrap();
    assert_eq!((m.words().len(), m.pairs().len()), (6, 21));
    assert!(matches!(
        build_finite_model(&sys, 14),
        Err(OracleError::CapExceeded { .. })
    ));
    assert_eq!(build_finite_model(&sys, 0), Err(OracleError::ZeroLevel));
}

#[test]
fn brute_boundary_examples() {
    let sys = bin();
    let m = build_finite_model(&sys, 2).unwrap();
    let s = close_finite_level(&sys, 2, [(w(&[1, 2]), w(&[2, 1]))], Mode::IdealSet).unwrap();
    assert_eq!(
        brute_boundary(&m, &s, &w(&[2, 1])).unwrap(),
        Some(w(&[1, 2]))
    );
    assert_eq!(brute_boundary(&m, &s, &w(&[1, 2])).unwrap(), None);
    let empty = close_finite_level(&sys, 2, [], Mode::IdealSet).unwrap();
    assert!(m
        .words()
        .iter()
        .all(|v| brute_boundary(&m, &empty, v).unwrap().is_none()));
    let one = close_finite_level(&sys, 1, [], Mode::IdealSet).unwrap();
    assert!(brute_boundary(&m, &one, &w(&[1, 1])).is_err());
}

#[test]
fn closed_set_enumeration() {
    let sys = bin();
    let m = build_finite_model(&sys, 1).unwrap();
    // ∅, {(1,2)}, {(1,2),(1,1)}, {(1,2),(2,2)}, all three
    assert_eq!(m.closed_sets().len(), 5);
    for s in build_finite_model(&sys, 2).unwrap().closed_sets() {
        let gens: Vec<_> = s.pairs().iter().cloned().collect();
        assert_eq!(
            close_finite_level(&sys, 2, gens, Mode::IdealSet).unwrap(),
            s
        );
    }
}

#[test]
fn sampled_points() {
    let sys = bin();
    let a = sample_points(&sys, 1, 10, 3, 2);
    assert_eq!(a.len(), 10);
    assert_eq!(a, sample_points(&sys, 1, 10, 3, 2));
    assert!(a.contains(&sys.p_min()) && a.contains(&sys.p_max()));
    assert!(a.iter().any(|p| p.has_gap_above(&sys)));
    assert!(a.iter().any(|p| p.has_gap_below(&sys)));
    assert!(a[4].same_orbit(&a[5]));
}

#[test]
fn unknown_suite() {
    assert!(matches!(
        run_suite("nope", &bin(), 1, 1),
        Err(OracleError::UnknownSuite(_))
    ));
}

#[test]
fn every_suite_passes_small_budget() {
    let sys = bin();
    for name in SUITE_NAMES {
        let report = run_suite(name, &sys, 5, 3).unwrap();
        assert!(report.passed(), "{report}");
    }
}

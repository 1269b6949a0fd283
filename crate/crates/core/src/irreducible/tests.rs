use super::*;
use crate::boundary::validate_bf;
use crate::testutil::{bin, pt};

fn mixed_points() -> (Point, Point, Point, Point) {
    (
        pt(&[1], &[1, 2]),
        pt(&[1, 2], &[2, 1]),
        pt(&[2], &[1, 2]),
        pt(&[2, 2], &[1, 2]),
    )
}

#[test]
fn normal_forms() {
    let sys = bin();
    let (a, b, _, _) = mixed_points();
    let phi = phi_ab(&sys, &a, &b);
    assert_eq!(
        normalize_bf(&sys, &phi).1,
        FormTag::PhiAB {
            a: a.clone(),
            b: b.clone()
        }
    );
    let at = phi_at(&sys, &a, &b);
    assert_eq!(
        normalize_bf(&sys, &at).1,
        FormTag::PhiAT {
            a: a.clone(),
            t: b.clone()
        }
    );
    let id = PiecewiseBF::identity(&sys, Mode::IdealSet);
    assert_eq!(normalize_bf(&sys, &id).1, FormTag::Identity);
    let min = PiecewiseBF::constant(&sys, sys.p_min(), Mode::IdealSet);
    assert_eq!(normalize_bf(&sys, &min).1, FormTag::Minimal);
}

#[test]
fn range_and_drop_examples() {
    let sys = bin();
    let (a, b, _, _) = mixed_points();
    let (ran, _) = range_and_drop(&sys, &phi_at(&sys, &a, &b));
    assert_eq!(ran.points(&sys), Some(vec![sys.p_min(), a.clone()]));
    assert_eq!(ran.size(&sys), RangeSize::Two);

    let (_, drop) = range_and_drop(&sys, &PiecewiseBF::identity(&sys, Mode::IdealSet));
    assert!(drop.rd_is_empty());

    let phi = phi_ab(&sys, &a, &b);
    let (ran, drop) = range_and_drop(&sys, &phi);
    assert_eq!(drop.rd_points(&sys), Some(vec![a.clone()]));
    assert_eq!(ran.size(&sys), RangeSize::Many);
    let mut sampler = Sampler::new(&sys, 5, [a.clone(), b.clone()]);
    for _ in 0..300 {
        let y = sampler.point(&sys);
        let v = phi.eval(&sys, &y);
        assert!(ran.contains(&sys, &v), "{y:?}");
        assert_eq!(drop.in_ed(&sys, &y), v < y, "{y:?}");
        if y <= a || y > b {
            assert!(ran.contains(&sys, &y));
        }
    }
}

#[test]
fn meet_classes() {
    let sys = bin();
    let (a, b, c, d) = mixed_points();
    assert_eq!(
        classify_meet_bf(&sys, &phi_ab(&sys, &a, &b)).unwrap(),
        MeetClass::PhiAB {
            a: a.clone(),
            b: b.clone()
        }
    );
    let (ga, gb) = (pt(&[2], &[1]), pt(&[2, 2], &[1]));
    assert_eq!(
        classify_meet_bf(&sys, &psi_paab(&sys, &ga, &gb)).unwrap(),
        MeetClass::PsiPaab {
            pa: pt(&[1], &[2]),
            a: ga,
            b: gb
        }
    );
    let two = bf_lattice(
        LatticeOp::Meet,
        &sys,
        &phi_ab(&sys, &a, &b),
        &phi_ab(&sys, &c, &d),
    )
    .unwrap();
    let MeetClass::Reducible { psi1, psi2 } = classify_meet_bf(&sys, &two).unwrap() else {
        panic!("two drops should split");
    };
    assert_eq!(
        bf_lattice(LatticeOp::Meet, &sys, &psi1, &psi2).unwrap(),
        two
    );
    assert!(validate_bf(&sys, &psi1).is_empty() && validate_bf(&sys, &psi2).is_empty());
}

#[test]
fn join_classes() {
    let sys = bin();
    let (a, b, _, _) = mixed_points();
    let min = PiecewiseBF::constant(&sys, sys.p_min(), Mode::IdealSet);
    assert_eq!(
        classify_join_bf(&sys, &min).unwrap(),
        JoinClass::MinimalForm
    );
    assert_eq!(
        classify_join_bf(&sys, &phi_at(&sys, &a, &b)).unwrap(),
        JoinClass::PhiAT {
            a: a.clone(),
            t: b.clone()
        }
    );
    let phi = phi_ab(&sys, &a, &b);
    let JoinClass::Reducible { psi1, psi2 } = classify_join_bf(&sys, &phi).unwrap() else {
        panic!("infinite range should split");
    };
    assert_eq!(
        bf_lattice(LatticeOp::Join, &sys, &psi1, &psi2).unwrap(),
        phi
    );
}

#[test]
fn gap_pair_split_point_is_recovered() {
    let sys = bin();
    // a is a value just above a gap, t has a gap below
    let (a, t) = (pt(&[1], &[1, 2]), pt(&[2, 2], &[1]));
    let phi = phi_at(&sys, &a, &t.pred(&sys).unwrap());
    assert_eq!(
        classify_join_bf(&sys, &phi).unwrap(),
        JoinClass::PhiAT {
            a,
            t: t.pred(&sys).unwrap()
        }
    );
}

#[test]
fn meet_ideal_catalog() {
    let sys = bin();
    let (a, _, _, _) = mixed_points();
    let r = classify_meet_ideal(&sys, &IdealExpr::strip(a.clone(), pt(&[2], &[2, 1]))).unwrap();
    assert_eq!(r.verdict, IdealVerdict::Irreducible);

    let (ga, gb) = (pt(&[1], &[2]), pt(&[2], &[1]));
    let r = classify_meet_ideal(&sys, &IdealExpr::strip(ga.clone(), gb.clone())).unwrap();
    assert_eq!(r.verdict, IdealVerdict::NotIrreducible);
    assert_eq!(
        r.boundary_class,
        MeetClass::PhiAB {
            a: ga.clone(),
            b: gb.clone()
        }
    );
    assert!(r.boundary_class.is_irreducible());

    let r = classify_meet_ideal(&sys, &IdealExpr::strip_plus(ga, gb)).unwrap();
    assert_eq!(r.verdict, IdealVerdict::NotIrreducible);
    let r = classify_meet_ideal(
        &sys,
        &IdealExpr::strip_plus(pt(&[2], &[1]), pt(&[2, 2], &[1])),
    )
    .unwrap();
    assert_eq!(r.verdict, IdealVerdict::Irreducible);
    let r = classify_meet_ideal(&sys, &IdealExpr::corner(pt(&[2], &[1]), pt(&[2], &[1]))).unwrap();
    assert_eq!(r.verdict, IdealVerdict::NotInCatalog);
}

#[test]
fn join_ideal_catalog() {
    let sys = bin();
    let mix = pt(&[], &[1, 2]);
    let r = classify_join_ideal(&sys, &IdealExpr::corner(mix.clone(), mix)).unwrap();
    assert_eq!(r.verdict, IdealVerdict::Irreducible);

    let (a, t) = (pt(&[2], &[1]), pt(&[2, 1], &[2]));
    let sigma = IdealExpr::corner(a.clone(), t.clone());
    let r = classify_join_ideal(&sys, &sigma).unwrap();
    assert_eq!(r.verdict, IdealVerdict::NotIrreducible);
    let (first, second) = r.decomposition.unwrap();
    assert_eq!(first, IdealExpr::corner(a, pt(&[2, 2], &[1])));
    assert_eq!(second, IdealExpr::corner(pt(&[1], &[2]), t));
    let union = IdealExpr::union(vec![first, second]).unwrap();
    assert_eq!(membership_mismatch(&sys, &sigma, &union, 500), None);

    let r =
        classify_join_ideal(&sys, &IdealExpr::corner(pt(&[2], &[1]), pt(&[2], &[1, 2]))).unwrap();
    assert_eq!(r.verdict, IdealVerdict::Irreducible);
    let r = classify_join_ideal(&sys, &IdealExpr::empty(Mode::IdealSet)).unwrap();
    assert_eq!(r.verdict, IdealVerdict::Irreducible);
}

#[test]
fn family_constraints() {
    let sys = bin();
    let mix = pt(&[], &[1, 2]);
    assert!(matches!(
        construct_family(&sys, FamilyKind::PhiAT, &mix, &mix),
        Ok(Family::Bf(_))
    ));
    let err =
        construct_family(&sys, FamilyKind::PhiAB, &pt(&[2], &[1]), &pt(&[2, 2], &[1])).unwrap_err();
    assert!(err.to_string().contains("Property2b"), "{err}");
    let err = construct_family(
        &sys,
        FamilyKind::PsiPaab,
        &pt(&[2], &[1]),
        &pt(&[2, 2], &[1, 2]),
    )
    .unwrap_err();
    assert!(err.to_string().contains("b has a gap below"), "{err}");
    assert!(construct_family(
        &sys,
        FamilyKind::PsiPaab,
        &pt(&[2], &[1]),
        &pt(&[2, 2], &[1])
    )
    .is_ok());
}

#[test]
fn corner_function_sandwich() {
    let sys = bin();
    let t = pt(&[2, 1], &[1, 2]);
    for a in [pt(&[1], &[2, 1]), pt(&[1], &[2])] {
        let phi = phi_at(&sys, &a, &t);
        let open = IdealExpr::sigma_open(phi.clone());
        assert_eq!(
            membership_mismatch(&sys, &IdealExpr::corner(a.clone(), t.clone()), &open, 300),
            None
        );
        if a.has_gap_above(&sys) {
            let closed = IdealExpr::sigma_closed(phi);
            let sa = IdealExpr::corner(a.suc(&sys).unwrap(), t.clone());
            assert_eq!(membership_mismatch(&sys, &sa, &closed, 300), None);
        }
    }
}

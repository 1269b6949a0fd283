use super::*;
use crate::restrict::restrict_to_level;
use crate::testutil::{bin, pt, w};

fn pairs(list: &[(&[u32], &[u32])]) -> BTreeSet<(Word, Word)> {
    list.iter().map(|(u, v)| (w(u), w(v))).collect()
}

#[test]
fn closure_examples() {
    let sys = bin();
    let s = close_finite_level(&sys, 2, [(w(&[1, 2]), w(&[2, 1]))], Mode::IdealSet).unwrap();
    let want = pairs(&[
        (&[1, 1], &[2, 1]),
        (&[1, 2], &[2, 1]),
        (&[1, 1], &[2, 2]),
        (&[1, 2], &[2, 2]),
    ]);
    assert_eq!(s.pairs(), &want);
    let s = close_finite_level(&sys, 2, [], Mode::IdealSet).unwrap();
    assert!(s.is_empty());
    let s = close_finite_level(&sys, 2, [(w(&[1, 1]), w(&[1, 1]))], Mode::IdealSet).unwrap();
    let want = pairs(&[
        (&[1, 1], &[1, 1]),
        (&[1, 1], &[1, 2]),
        (&[1, 1], &[2, 1]),
        (&[1, 1], &[2, 2]),
    ]);
    assert_eq!(s.pairs(), &want);
}

#[test]
fn closure_errors() {
    let sys = bin();
    assert!(matches!(
        close_finite_level(&sys, 2, [(w(&[2, 1]), w(&[1, 2]))], Mode::IdealSet),
        Err(IdealError::Reversed(..))
    ));
    assert!(close_finite_level(&sys, 2, [(w(&[2, 1]), w(&[1, 2]))], Mode::ModuleSet).is_ok());
    assert!(matches!(
        close_finite_level(&sys, 2, [(w(&[1]), w(&[1, 2]))], Mode::IdealSet),
        Err(IdealError::LevelMismatch { .. })
    ));
    assert!(matches!(
        close_finite_level(&sys, 1, [(w(&[1]), w(&[3]))], Mode::IdealSet),
        Err(IdealError::Order(_))
    ));
}

#[test]
fn membership_examples() {
    let sys = bin();
    let a = pt(&[], &[1, 2]);
    let b = pt(&[2, 2], &[1, 2]);
    let strip = IdealExpr::strip(a.clone(), b.clone());
    assert!(member(&sys, &strip, &pt(&[], &[1]), &pt(&[2], &[1])).is_yes());
    let s = close_finite_level(&sys, 1, [(w(&[1]), w(&[2]))], Mode::IdealSet).unwrap();
    let fin = IdealExpr::finite(s);
    assert!(member(&sys, &fin, &pt(&[1, 1], &[2]), &pt(&[], &[2])).is_yes());
    assert!(member(&sys, &fin, &pt(&[1, 1], &[2]), &pt(&[1], &[2])).is_no());

    let a = pt(&[2], &[1]);
    let b = pt(&[2, 2], &[1]);
    let plus = IdealExpr::strip_plus(a.clone(), b.clone());
    let strip = IdealExpr::strip(a.clone(), b.clone());
    assert!(member(&sys, &plus, &a, &b).is_yes());
    assert!(member(&sys, &strip, &a, &b).is_no());
}

#[test]
fn module_mode_ignores_order() {
    let sys = bin();
    let full = IdealExpr::full(Mode::ModuleSet);
    let (x, y) = (pt(&[2], &[1]), pt(&[1], &[1]));
    assert!(member(&sys, &full, &x, &y).is_yes());
    assert!(member(&sys, &IdealExpr::full(Mode::IdealSet), &x, &y).is_no());
}

#[test]
fn verdict_logic() {
    let y = Verdict::Yes(None);
    let n = Verdict::No("n".into());
    let u = Verdict::Unknown(3);
    assert!(u.clone().or(y.clone()).is_yes());
    assert!(u.clone().and(n.clone()).is_no());
    assert!(u.clone().or(n.clone()).is_unknown());
    assert!(u.and(y).is_unknown());
}

#[test]
fn validation_examples() {
    let sys = bin();
    let strip = IdealExpr::strip(pt(&[], &[1, 2]), pt(&[2, 2], &[1, 2]));
    assert_eq!(validate_ideal_expr(&sys, &strip), vec![]);
    let bad = IdealExpr::strip_plus(pt(&[2], &[1]), pt(&[1], &[2]));
    assert!(matches!(
        validate_ideal_expr(&sys, &bad).as_slice(),
        [IdealViolation::ConstructorViolation(_)]
    ));
    let raw = MatrixUnitSet::new_unchecked(2, pairs(&[(&[1, 2], &[2, 1])]), Mode::IdealSet);
    let found = validate_ideal_expr(&sys, &IdealExpr::finite(raw));
    assert!(found
        .iter()
        .any(|v| matches!(v, IdealViolation::IdealPropertyViolation { .. })));
}

#[test]
fn combine_rules() {
    let sys = bin();
    let sigma = IdealExpr::corner(pt(&[2], &[1]), pt(&[2, 1], &[2]));
    let u = IdealExpr::union(vec![IdealExpr::empty(Mode::IdealSet), sigma.clone()]).unwrap();
    let i = IdealExpr::intersection(vec![IdealExpr::full(Mode::IdealSet), sigma.clone()]).unwrap();
    let mut sampler = Sampler::for_expr(&sys, &sigma, 3);
    for _ in 0..100 {
        let (x, y) = sampler.pair_near(&sys, &sigma);
        let m = member(&sys, &sigma, &x, &y).is_yes();
        assert_eq!(member(&sys, &u, &x, &y).is_yes(), m);
        assert_eq!(member(&sys, &i, &x, &y).is_yes(), m);
    }
    assert_eq!(
        combine(
            CombineOp::Union,
            vec![
                IdealExpr::full(Mode::IdealSet),
                IdealExpr::full(Mode::ModuleSet)
            ]
        ),
        Err(IdealError::MixedModes)
    );
    assert_eq!(
        combine(CombineOp::Union, vec![]),
        Err(IdealError::EmptyCombination)
    );
}

#[test]
fn restriction_examples() {
    let sys = bin();
    let full = restrict_to_level(&sys, &IdealExpr::full(Mode::IdealSet), 1).unwrap();
    assert_eq!(
        full.pairs(),
        &pairs(&[(&[1], &[1]), (&[1], &[2]), (&[2], &[2])])
    );
    let s = close_finite_level(&sys, 1, [(w(&[1]), w(&[2]))], Mode::IdealSet).unwrap();
    let r = restrict_to_level(&sys, &IdealExpr::finite(s), 2).unwrap();
    let want = pairs(&[
        (&[1, 1], &[2, 1]),
        (&[1, 1], &[2, 2]),
        (&[1, 2], &[2, 1]),
        (&[1, 2], &[2, 2]),
    ]);
    assert_eq!(r.pairs(), &want);
    let strip = IdealExpr::strip(pt(&[], &[1, 2]), pt(&[2, 2], &[1, 2]));
    assert!(restrict_to_level(&sys, &strip, 1).unwrap().is_empty());
}

#[test]
fn restriction_parent_child_consistency() {
    let sys = bin();
    let exprs = vec![
        IdealExpr::strip(pt(&[], &[1, 2]), pt(&[2, 2], &[1, 2])),
        IdealExpr::strip_plus(pt(&[2], &[1]), pt(&[2, 2], &[1])),
        IdealExpr::corner(pt(&[2], &[1]), pt(&[2, 1], &[2])),
        IdealExpr::union(vec![
            IdealExpr::corner(pt(&[2], &[1]), pt(&[2, 1], &[2])),
            IdealExpr::strip(pt(&[1, 2], &[1]), pt(&[2, 1], &[1])),
        ])
        .unwrap(),
    ];
    for e in &exprs {
        for n in 1..=3 {
            let parent = restrict_to_level(&sys, e, n).unwrap();
            let child = restrict_to_level(&sys, e, n + 1).unwrap();
            for u in Word::all(&sys, n) {
                for v in Word::all(&sys, n) {
                    let kids = (1..=2).all(|d| child.contains(&u.push(d), &v.push(d)));
                    assert_eq!(parent.contains(&u, &v), kids, "{e:?} at {n}: {u:?} {v:?}");
                }
            }
        }
    }
}

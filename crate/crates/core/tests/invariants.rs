use limitideal::boundary::{
    bf_equiv, bf_lattice, bf_minus, bf_plus, boundary_of, validate_bf, LatticeOp,
};
use limitideal::cocycle::order_by_cocycle;
use limitideal::ideal::{member, IdealExpr};
use limitideal::literal::{
    parse_bf, parse_ideal, parse_point, parse_system, print_bf, print_ideal, print_point,
};
use limitideal::oracle::{random_bf, random_ideal_expr, Gen};
use limitideal::order::{p_test, RefinementSystem};
use proptest::prelude::*;

fn systems() -> impl Strategy<Value = RefinementSystem> {
    prop_oneof![
        Just(parse_system(";2").unwrap()),
        Just(parse_system(";2.3").unwrap()),
        Just(parse_system("3;2").unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn point_literals_round_trip(sys in systems(), seed: u64) {
        let mut g = Gen::new(&sys, seed);
        let p = g.point(&sys);
        prop_assert_eq!(parse_point(&sys, &print_point(&sys, &p)).unwrap(), p);
    }

    #[test]
    fn successor_and_predecessor_invert(sys in systems(), seed: u64) {
        let mut g = Gen::new(&sys, seed);
        let p = g.point(&sys);
        if let Some(s) = p.suc(&sys) {
            prop_assert!(p < s && s.has_gap_below(&sys));
            prop_assert_eq!(s.pred(&sys), Some(p.clone()));
        }
        if let Some(q) = p.pred(&sys) {
            prop_assert!(q < p && q.has_gap_above(&sys));
        }
    }

    #[test]
    fn p_is_an_order_inside_orbits(sys in systems(), seed: u64) {
        let mut g = Gen::new(&sys, seed);
        let (a, b) = g.p_pair(&sys);
        let c = g.sampler().orbit_point_above(&sys, &b);
        prop_assert!(p_test(&a, &a) && p_test(&a, &b) && p_test(&b, &c) && p_test(&a, &c));
        prop_assert!(a <= b && a.same_orbit(&b));
        if a != b {
            prop_assert!(!p_test(&b, &a));
        }
    }

    #[test]
    fn cocycle_order_matches_orbit_order(sys in systems(), seed: u64) {
        let mut g = Gen::new(&sys, seed);
        let (a, b) = g.p_pair(&sys);
        if a != b {
            prop_assert_eq!(order_by_cocycle(&sys, &a, &b).unwrap(), a.cmp(&b));
        }
    }

    #[test]
    fn generated_functions_are_valid(sys in systems(), seed: u64) {
        let mut g = Gen::new(&sys, seed);
        let phi = random_bf(&sys, &mut g);
        prop_assert_eq!(validate_bf(&sys, &phi), vec![]);
        let down = bf_minus(&sys, &phi);
        prop_assert_eq!(bf_minus(&sys, &down), down.clone());
        prop_assert!(bf_equiv(&sys, &phi, &down));
        if let Ok(up) = bf_plus(&sys, &phi) {
            prop_assert_eq!(validate_bf(&sys, &up), vec![]);
            prop_assert!(bf_equiv(&sys, &phi, &up));
        }
    }

    #[test]
    fn lattice_laws(sys in systems(), seed: u64) {
        let mut g = Gen::new(&sys, seed);
        let (phi, psi) = (random_bf(&sys, &mut g), random_bf(&sys, &mut g));
        let meet = bf_lattice(LatticeOp::Meet, &sys, &phi, &psi).unwrap();
        let join = bf_lattice(LatticeOp::Join, &sys, &phi, &psi).unwrap();
        prop_assert_eq!(&meet, &bf_lattice(LatticeOp::Meet, &sys, &psi, &phi).unwrap());
        prop_assert_eq!(&join, &bf_lattice(LatticeOp::Join, &sys, &psi, &phi).unwrap());
        prop_assert_eq!(bf_lattice(LatticeOp::Meet, &sys, &phi, &join).unwrap(), phi.clone());
        prop_assert_eq!(bf_lattice(LatticeOp::Join, &sys, &phi, &meet).unwrap(), phi.clone());
        let y = g.point(&sys);
        prop_assert_eq!(meet.eval(&sys, &y), phi.eval(&sys, &y).min(psi.eval(&sys, &y)));
    }

    #[test]
    fn literals_round_trip(sys in systems(), seed: u64) {
        let mut g = Gen::new(&sys, seed);
        let phi = random_bf(&sys, &mut g);
        prop_assert_eq!(parse_bf(&sys, &print_bf(&sys, &phi)).unwrap(), phi);
        let sigma = random_ideal_expr(&sys, &mut g);
        prop_assert_eq!(parse_ideal(&sys, &print_ideal(&sys, &sigma)).unwrap(), sigma);
    }

    #[test]
    fn boundaries_are_valid_and_membership_is_boolean(sys in systems(), seed: u64) {
        let mut g = Gen::new(&sys, seed);
        let (s, t) = (random_ideal_expr(&sys, &mut g), random_ideal_expr(&sys, &mut g));
        prop_assert_eq!(validate_bf(&sys, &boundary_of(&sys, &s).unwrap()), vec![]);
        let both = IdealExpr::intersection(vec![s.clone(), t.clone()]).unwrap();
        let either = IdealExpr::union(vec![s.clone(), t.clone()]).unwrap();
        for _ in 0..8 {
            let (x, y) = g.p_pair(&sys);
            let (ms, mt) = (member(&sys, &s, &x, &y), member(&sys, &t, &x, &y));
            if ms.is_unknown() || mt.is_unknown() {
                continue;
            }
            prop_assert_eq!(member(&sys, &both, &x, &y).is_yes(), ms.is_yes() && mt.is_yes());
            prop_assert_eq!(member(&sys, &either, &x, &y).is_yes(), ms.is_yes() || mt.is_yes());
        }
    }
}

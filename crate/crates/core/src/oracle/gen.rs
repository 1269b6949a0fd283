//! Random ideal expressions and boundary functions with valid parameters.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::boundary::{bf_lattice, bf_minus, bf_plus, boundary_of, LatticeOp, PiecewiseBF};
use crate::cocycle::gap_enumeration;
use crate::ideal::{close_finite_level, IdealExpr, Mode};
use crate::irreducible::{phi_ab, phi_at, psi_paab};
use crate::order::{Point, RefinementSystem, Word};
use crate::sample::Sampler;

/// Parameter source: a sampler whose pool is biased towards gap points.
pub struct Gen {
    sampler: Sampler,
}

impl Gen {
    pub fn new(sys: &RefinementSystem, seed: u64) -> Self {
        Gen {
            sampler: Sampler::new(sys, seed, []),
        }
    }

    pub fn sampler(&mut self) -> &mut Sampler {
        &mut self.sampler
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        self.sampler.rng()
    }

    pub fn point(&mut self, sys: &RefinementSystem) -> Point {
        self.sampler.point(sys)
    }

    /// Two points in increasing order.
    pub fn ordered(&mut self, sys: &RefinementSystem) -> (Point, Point) {
        let (a, b) = (self.point(sys), self.point(sys));
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// A pair in `P`: the first is a point of the second's orbit below it.
    pub fn p_pair(&mut self, sys: &RefinementSystem) -> (Point, Point) {
        let b = self.point(sys);
        let a = self.sampler.orbit_point_below(sys, &b);
        (a, b)
    }

    /// A point with a gap below.
    pub fn gap_below(&mut self, sys: &RefinementSystem) -> Point {
        let n = self.rng().gen_range(1..=12u128);
        let a = gap_enumeration(sys).gap_point(n).expect("n ≥ 1");
        a.suc(sys).expect("gap points have a successor")
    }

    /// A point without a gap below.
    pub fn no_gap_below(&mut self, sys: &RefinementSystem) -> Point {
        let p = self.point(sys);
        if p.has_gap_below(sys) {
            p.pred(sys).expect("gap-below points have a predecessor")
        } else {
            p
        }
    }

    pub fn finite_set(&mut self, sys: &RefinementSystem, mode: Mode) -> IdealExpr {
        let level = if sys.word_count(2) <= 16 {
            self.rng().gen_range(1..=2)
        } else {
            1
        };
        let gens: Vec<(Word, Word)> = (0..self.rng().gen_range(0..=2))
            .map(|_| {
                let u = self.sampler.word(sys, level);
                let v = self.sampler.word(sys, level);
                if mode == Mode::IdealSet && u > v {
                    (v, u)
                } else {
                    (u, v)
                }
            })
            .collect();
        IdealExpr::finite(
            close_finite_level(sys, level, gens, mode).expect("generators are ordered"),
        )
    }
}

/// One named family member or a finite-level boundary.
pub fn random_bf_leaf(sys: &RefinementSystem, g: &mut Gen) -> PiecewiseBF {
    match g.rng().gen_range(0..5) {
        0 => {
            let (a, b) = g.ordered(sys);
            let a = if a.has_gap_below(sys) {
                a.pred(sys).expect("gap-below points have a predecessor")
            } else {
                a
            };
            phi_ab(sys, &a, &b)
        }
        1 => {
            let a = g.gap_below(sys);
            let b = g.sampler().orbit_point_above(sys, &a);
            if a == b {
                PiecewiseBF::identity(sys, Mode::IdealSet)
            } else {
                psi_paab(sys, &a, &b)
            }
        }
        2 => {
            let a = g.no_gap_below(sys);
            let t = g.point(sys);
            let t = if t < a { a.clone() } else { t };
            if t.is_max(sys) {
                PiecewiseBF::constant(sys, sys.p_min(), Mode::IdealSet)
            } else {
                phi_at(sys, &a, &t)
            }
        }
        3 => {
            let sigma = g.finite_set(sys, Mode::IdealSet);
            boundary_of(sys, &sigma).expect("finite sets have boundaries")
        }
        _ => PiecewiseBF::identity(sys, Mode::IdealSet),
    }
}

/// A lattice combination of family members, sometimes passed through `⁻` or `⁺`.
pub fn random_bf(sys: &RefinementSystem, g: &mut Gen) -> PiecewiseBF {
    let mut phi = random_bf_leaf(sys, g);
    for _ in 0..g.rng().gen_range(0..=2) {
        let psi = random_bf_leaf(sys, g);
        let op = if g.rng().gen_bool(0.5) {
            LatticeOp::Join
        } else {
            LatticeOp::Meet
        };
        phi = bf_lattice(op, sys, &phi, &psi).expect("same mode");
    }
    match g.rng().gen_range(0..6) {
        0 => bf_minus(sys, &phi),
        1 => bf_plus(sys, &phi).unwrap_or(phi),
        _ => phi,
    }
}

fn random_ideal_leaf(sys: &RefinementSystem, g: &mut Gen) -> IdealExpr {
    match g.rng().gen_range(0..7) {
        0 => {
            let (a, b) = g.ordered(sys);
            IdealExpr::strip(a, b)
        }
        1 => {
            let (a, b) = g.p_pair(sys);
            IdealExpr::strip_plus(a, b)
        }
        2 => {
            let (a, t) = g.ordered(sys);
            if a.is_min(sys) || t.is_max(sys) {
                IdealExpr::strip(a, t)
            } else {
                IdealExpr::corner(a, t)
            }
        }
        3 => g.finite_set(sys, Mode::IdealSet),
        4 => IdealExpr::sigma_open(random_bf(sys, g)),
        5 => IdealExpr::sigma_closed(random_bf(sys, g)),
        _ => {
            if g.rng().gen_bool(0.5) {
                IdealExpr::empty(Mode::IdealSet)
            } else {
                IdealExpr::full(Mode::IdealSet)
            }
        }
    }
}

/// A catalog ideal set, or a union or intersection of two.
pub fn random_ideal_expr(sys: &RefinementSystem, g: &mut Gen) -> IdealExpr {
    let first = random_ideal_leaf(sys, g);
    match g.rng().gen_range(0..4) {
        0 => IdealExpr::union(vec![first, random_ideal_leaf(sys, g)]).expect("same mode"),
        1 => IdealExpr::intersection(vec![first, random_ideal_leaf(sys, g)]).expect("same mode"),
        _ => first,
    }
}

/// A module set built from finite levels, `Full` and `Empty`.
pub fn random_module_expr(sys: &RefinementSystem, g: &mut Gen) -> IdealExpr {
    let leaf = |g: &mut Gen| match g.rng().gen_range(0..5) {
        0 => IdealExpr::full(Mode::ModuleSet),
        1 => IdealExpr::empty(Mode::ModuleSet),
        _ => g.finite_set(sys, Mode::ModuleSet),
    };
    let first = leaf(g);
    match g.rng().gen_range(0..3) {
        0 => IdealExpr::union(vec![first, leaf(g)]).expect("same mode"),
        1 => IdealExpr::intersection(vec![first, leaf(g)]).expect("same mode"),
        _ => first,
    }
}

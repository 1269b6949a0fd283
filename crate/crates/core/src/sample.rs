//! Deterministic sampling of points and orbit-correlated pairs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cocycle::gap_enumeration;
use crate::ideal::{IdealExpr, Node};
use crate::order::{Point, RefinementSystem, Word};

pub struct Sampler {
    rng: ChaCha8Rng,
    pool: Vec<Point>,
    targets: Vec<(Point, Point)>,
    word_pairs: Vec<(Word, Word)>,
    max_level: usize,
}

impl Sampler {
    /// The pool always holds `p_min`, `p_max`, a gap-free point and the first
    /// few points with a gap above, together with their successors.
    pub fn new(sys: &RefinementSystem, seed: u64, extra: impl IntoIterator<Item = Point>) -> Self {
        let mut pool = vec![sys.p_min(), sys.p_max(), sys.mixed()];
        let gaps = gap_enumeration(sys);
        for n in 1..=6 {
            let a = gaps.gap_point(n).expect("n ≥ 1");
            pool.extend(a.suc(sys));
            pool.push(a);
        }
        for p in extra {
            pool.extend(p.suc(sys));
            pool.extend(p.pred(sys));
            pool.push(p);
        }
        pool.sort();
        pool.dedup();
        let max_level = pool
            .iter()
            .map(|p| p.preamble().len() + p.period().len())
            .max()
            .unwrap_or(1)
            + sys.prefix_len()
            + 2;
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            pool,
            targets: Vec::new(),
            word_pairs: Vec::new(),
            max_level,
        }
    }

    /// Pool and targets drawn from the points, level sets and graphs in `sigma`.
    pub fn for_expr(sys: &RefinementSystem, sigma: &IdealExpr, seed: u64) -> Self {
        let mut s = Sampler::new(sys, seed, sigma.landmarks(sys));
        s.max_level = s.max_level.max(sigma.max_level() + 2);
        s.collect(sys, sigma);
        s
    }

    fn collect(&mut self, sys: &RefinementSystem, sigma: &IdealExpr) {
        match &sigma.node {
            Node::FiniteLevel(set) => self.word_pairs.extend(set.pairs().iter().cloned()),
            Node::Strip { a, b } | Node::StripPlus { a, b } => {
                self.targets.push((a.clone(), b.clone()))
            }
            Node::Corner { a, t } => self.targets.push((a.clone(), t.clone())),
            Node::OfBFOpen(phi) | Node::OfBFClosed(phi) => {
                let pool = self.pool.clone();
                for y in pool {
                    self.targets.push((phi.eval(sys, &y), y));
                }
            }
            Node::Union(parts) | Node::Intersection(parts) => {
                for p in parts {
                    self.collect(sys, p);
                }
            }
            Node::Empty | Node::Full => {}
        }
    }

    pub fn pool(&self) -> &[Point] {
        &self.pool
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn word(&mut self, sys: &RefinementSystem, level: usize) -> Word {
        Word(
            (0..level)
                .map(|n| self.rng.gen_range(1..=sys.k(n)))
                .collect(),
        )
    }

    fn level(&mut self) -> usize {
        self.rng.gen_range(0..=self.max_level)
    }

    /// A fresh eventually periodic point.
    pub fn random_point(&mut self, sys: &RefinementSystem) -> Point {
        let pre_len = self.rng.gen_range(0..=self.max_level);
        let per_len = sys.cycle_len() * self.rng.gen_range(1..=2);
        let start = pre_len.max(sys.prefix_len());
        let digits: Vec<_> = (0..start + per_len)
            .map(|n| self.rng.gen_range(1..=sys.k(n)))
            .collect();
        Point::canonicalize(sys, digits[..start].to_vec(), digits[start..].to_vec())
            .expect("digits drawn within bounds")
    }

    /// A pool point, a perturbed pool point, or a fresh point.
    pub fn point(&mut self, sys: &RefinementSystem) -> Point {
        match self.rng.gen_range(0..3) {
            0 => self
                .pool
                .choose(&mut self.rng)
                .expect("pool is nonempty")
                .clone(),
            1 => {
                let base = self
                    .pool
                    .choose(&mut self.rng)
                    .expect("pool is nonempty")
                    .clone();
                let m = self.level();
                let w = self.word(sys, m);
                Point::splice(sys, &w, &base)
            }
            _ => self.random_point(sys),
        }
    }

    /// A point of the orbit of `y` agreeing with `target` on a random prefix.
    pub fn near_in_orbit(&mut self, sys: &RefinementSystem, target: &Point, y: &Point) -> Point {
        let m = self.level();
        Point::splice(sys, &target.prefix(m), y)
    }

    /// A pair in one orbit, biased towards the structure of the expression.
    pub fn pair_near(&mut self, sys: &RefinementSystem, _sigma: &IdealExpr) -> (Point, Point) {
        match self.rng.gen_range(0..4) {
            0 if !self.word_pairs.is_empty() => {
                let (u, v) = self
                    .word_pairs
                    .choose(&mut self.rng)
                    .expect("nonempty")
                    .clone();
                let tail = self.point(sys);
                (Point::splice(sys, &u, &tail), Point::splice(sys, &v, &tail))
            }
            1 if !self.targets.is_empty() => {
                let (c, d) = self
                    .targets
                    .choose(&mut self.rng)
                    .expect("nonempty")
                    .clone();
                let y = if self.rng.gen_bool(0.5) {
                    d
                } else {
                    let p = self.point(sys);
                    self.near_in_orbit(sys, &d, &p)
                };
                let x = self.near_in_orbit(sys, &c, &y);
                (x, y)
            }
            _ => {
                let y = self.point(sys);
                let target = self.point(sys);
                let x = self.near_in_orbit(sys, &target, &y);
                (x, y)
            }
        }
    }

    /// A point `w ⪯ x` in the orbit of `x`.
    pub fn orbit_point_below(&mut self, sys: &RefinementSystem, x: &Point) -> Point {
        let m = self.level();
        let r = self.word(sys, m);
        let u = r.min(x.prefix(m));
        Point::splice(sys, &u, x)
    }

    /// A point `z ⪰ y` in the orbit of `y`.
    pub fn orbit_point_above(&mut self, sys: &RefinementSystem, y: &Point) -> Point {
        let m = self.level();
        let r = self.word(sys, m);
        let u = r.max(y.prefix(m));
        Point::splice(sys, &u, y)
    }
}

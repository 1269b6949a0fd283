//! Refinement of `X` into singletons and open gaps between breakpoints, and the
//! greedy rebuild that yields the canonical piece list.

use std::collections::BTreeSet;

use super::{Leaf, Piece, PiecewiseBF};
use crate::ideal::Mode;
use crate::order::{point_between, Bound, OrderInterval, Point, RefinementSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum AtomKind {
    Point(Point),
    /// Nonempty open interval between consecutive breakpoints.
    Open(Point, Point),
}

#[derive(Debug, Clone)]
pub(crate) struct Atoms {
    points: Vec<Point>,
    list: Vec<AtomKind>,
}

enum AtomValue {
    Point(Point),
    Open(Leaf),
}

impl Atoms {
    /// Breakpoints are closed under successor and predecessor and always
    /// include `p_min` and `p_max`.
    pub(crate) fn new(
        sys: &RefinementSystem,
        breakpoints: impl IntoIterator<Item = Point>,
    ) -> Self {
        let mut set: BTreeSet<Point> = breakpoints.into_iter().collect();
        set.insert(sys.p_min());
        set.insert(sys.p_max());
        let neighbours: Vec<Point> = set
            .iter()
            .flat_map(|p| [p.suc(sys), p.pred(sys)])
            .flatten()
            .collect();
        set.extend(neighbours);
        let points: Vec<Point> = set.into_iter().collect();
        let mut list = Vec::with_capacity(2 * points.len());
        for (i, p) in points.iter().enumerate() {
            list.push(AtomKind::Point(p.clone()));
            if let Some(q) = points.get(i + 1) {
                if p.suc(sys).as_ref() != Some(q) {
                    list.push(AtomKind::Open(p.clone(), q.clone()));
                }
            }
        }
        Atoms { points, list }
    }

    pub(crate) fn points(&self) -> &[Point] {
        &self.points
    }

    pub(crate) fn list(&self) -> &[AtomKind] {
        &self.list
    }

    /// A point inside the atom; for open atoms, one with no gaps.
    pub(crate) fn sample(sys: &RefinementSystem, atom: &AtomKind) -> Point {
        match atom {
            AtomKind::Point(p) => p.clone(),
            AtomKind::Open(lo, hi) => {
                point_between(sys, lo, hi, &sys.mixed()).expect("open atoms are nonempty")
            }
        }
    }

    /// Canonical piecewise function with the given values at breakpoints and
    /// the given leaf on each open atom (queried at an interior sample).
    pub(crate) fn rebuild(
        &self,
        sys: &RefinementSystem,
        mode: Mode,
        value_at: impl Fn(&Point) -> Point,
        leaf_at: impl Fn(&Point) -> Leaf,
    ) -> PiecewiseBF {
        let values: Vec<AtomValue> = self
            .list
            .iter()
            .map(|a| match a {
                AtomKind::Point(p) => AtomValue::Point(value_at(p)),
                AtomKind::Open(..) => AtomValue::Open(leaf_at(&Atoms::sample(sys, a))),
            })
            .collect();
        PiecewiseBF::from_canonical(self.greedy(sys, &values), mode)
    }

    fn agrees(sys: &RefinementSystem, leaf: &Leaf, atom: &AtomKind, value: &AtomValue) -> bool {
        match (atom, value) {
            (AtomKind::Point(p), AtomValue::Point(v)) => &leaf.apply(sys, p) == v,
            (AtomKind::Open(..), AtomValue::Open(l)) => l == leaf,
            _ => unreachable!("atom and value kinds line up"),
        }
    }

    /// Leftmost-longest runs; ties go to identity, then identity-minus, then constant.
    fn greedy(&self, sys: &RefinementSystem, values: &[AtomValue]) -> Vec<Piece> {
        let n = self.list.len();
        let mut pieces = Vec::new();
        let mut i = 0;
        while i < n {
            let candidates = match &values[i] {
                AtomValue::Point(v) => {
                    vec![Leaf::Identity, Leaf::IdentityMinus, Leaf::Const(v.clone())]
                }
                AtomValue::Open(l) => vec![l.clone()],
            };
            let mut best: Option<(usize, Leaf)> = None;
            for cand in candidates {
                if !Atoms::agrees(sys, &cand, &self.list[i], &values[i]) {
                    continue;
                }
                let mut j = i + 1;
                while j < n && Atoms::agrees(sys, &cand, &self.list[j], &values[j]) {
                    j += 1;
                }
                if best.as_ref().is_none_or(|(bj, _)| j > *bj) {
                    best = Some((j, cand));
                }
            }
            let (j, leaf) = best.expect("the constant candidate always agrees");
            let lo = match &self.list[i] {
                AtomKind::Point(p) => Bound::closed(p.clone()),
                AtomKind::Open(p, _) => Bound::open(p.clone()),
            };
            let hi = match &self.list[j - 1] {
                AtomKind::Point(p) => Bound::closed(p.clone()),
                AtomKind::Open(_, q) => Bound::open(q.clone()),
            };
            pieces.push(Piece::new(OrderInterval { lo, hi }, leaf));
            i = j;
        }
        pieces
    }
}

/// Canonical function with the given values, where every change of leaf
/// happens at one of `breakpoints`.
pub(crate) fn tabulate(
    sys: &RefinementSystem,
    mode: Mode,
    breakpoints: impl IntoIterator<Item = Point>,
    value_at: impl Fn(&Point) -> Point,
    leaf_at: impl Fn(&Point) -> Leaf,
) -> PiecewiseBF {
    let first = Atoms::new(sys, breakpoints).rebuild(sys, mode, value_at, leaf_at);
    super::ops::renormalize(sys, first)
}

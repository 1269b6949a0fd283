//! Ideal sets (and module sets) as a closed expression class with decidable membership.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boundary::{decide_cylinder_level, BfError, CylinderCheck, PiecewiseBF};
use crate::order::{orbit_test, p_test, OrderError, Point, RefinementSystem, Word};
use crate::sample::Sampler;

/// Default cap on cylinder levels explored by searches.
pub const DEFAULT_DEPTH_CAP: usize = 4096;

/// Largest number of words per level for which level-`N` sets are enumerated.
pub const MAX_LEVEL_WORDS: u128 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    IdealSet,
    ModuleSet,
}

impl Mode {
    /// The ambient relation: `P` for ideal sets, `G` for module sets.
    pub fn relates(self, x: &Point, y: &Point) -> bool {
        match self {
            Mode::IdealSet => p_test(x, y),
            Mode::ModuleSet => orbit_test(x, y),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Bf(#[from] BfError),
    #[error("word has level {found}, expected {expected}")]
    LevelMismatch { expected: usize, found: usize },
    #[error("generator ({0}, {1}) is not in P")]
    Reversed(String, String),
    #[error("level {0} has too many words to enumerate")]
    LevelTooLarge(usize),
    #[error("cannot combine expressions of different modes")]
    MixedModes,
    #[error("cannot combine an empty list")]
    EmptyCombination,
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("analysis exceeded depth {0}")]
    DepthExceeded(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Optionally carries the cylinder level that certified membership.
    Yes(Option<usize>),
    No(String),
    /// Search stopped at this depth without a decision.
    Unknown(usize),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn from_bool(b: bool, reason: &str) -> Verdict {
        if b {
            Verdict::Yes(None)
        } else {
            Verdict::No(reason.to_string())
        }
    }

    pub fn or(self, other: Verdict) -> Verdict {
        match (self, other) {
            (y @ Verdict::Yes(_), _) | (_, y @ Verdict::Yes(_)) => y,
            (u @ Verdict::Unknown(_), _) | (_, u @ Verdict::Unknown(_)) => u,
            (n, _) => n,
        }
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (n @ Verdict::No(_), _) | (_, n @ Verdict::No(_)) => n,
            (u @ Verdict::Unknown(_), _) | (_, u @ Verdict::Unknown(_)) => u,
            (y, _) => y,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes(Some(m)) => write!(f, "yes (cylinder level {m})"),
            Verdict::Yes(None) => write!(f, "yes"),
            Verdict::No(r) => write!(f, "no ({r})"),
            Verdict::Unknown(d) => write!(f, "unknown (depth {d})"),
        }
    }
}

/// A set of matrix units `e_{u,v}` at a fixed level.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixUnitSet {
    level: usize,
    pairs: BTreeSet<(Word, Word)>,
    mode: Mode,
}

impl MatrixUnitSet {
    /// Takes the pairs as given, without closing them.
    pub fn new_unchecked(level: usize, pairs: BTreeSet<(Word, Word)>, mode: Mode) -> Self {
        MatrixUnitSet { level, pairs, mode }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn pairs(&self) -> &BTreeSet<(Word, Word)> {
        &self.pairs
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, u: &Word, v: &Word) -> bool {
        self.pairs.contains(&(u.clone(), v.clone()))
    }

    /// Largest `u` paired with `v`.
    pub fn top_partner(&self, v: &Word) -> Option<&Word> {
        self.pairs
            .iter()
            .filter(|(_, w)| w == v)
            .map(|(u, _)| u)
            .max()
    }
}

fn check_level_size(sys: &RefinementSystem, level: usize) -> Result<(), IdealError> {
    if sys.word_count(level) > MAX_LEVEL_WORDS {
        return Err(IdealError::LevelTooLarge(level));
    }
    Ok(())
}

/// Smallest superset of the generators closed under `u′ ⪯ u`, `v ⪯ v′`.
pub fn close_finite_level(
    sys: &RefinementSystem,
    level: usize,
    generators: impl IntoIterator<Item = (Word, Word)>,
    mode: Mode,
) -> Result<MatrixUnitSet, IdealError> {
    check_level_size(sys, level)?;
    let words = Word::all(sys, level);
    let mut pairs = BTreeSet::new();
    for (u, v) in generators {
        for w in [&u, &v] {
            if w.level() != level {
                return Err(IdealError::LevelMismatch {
                    expected: level,
                    found: w.level(),
                });
            }
            Word::new(sys, w.0.clone())?;
        }
        if mode == Mode::IdealSet && u > v {
            return Err(IdealError::Reversed(sys.fmt_word(&u), sys.fmt_word(&v)));
        }
        for lower in words.iter().filter(|w| *w <= &u) {
            for upper in words.iter().filter(|w| *w >= &v) {
                pairs.insert((lower.clone(), upper.clone()));
            }
        }
    }
    Ok(MatrixUnitSet { level, pairs, mode })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Empty,
    Full,
    FiniteLevel(MatrixUnitSet),
    /// `{(x,y) ∈ P : x ≺ a or b ≺ y}`.
    Strip {
        a: Point,
        b: Point,
    },
    /// The strip together with the single pair `(a, b)`.
    StripPlus {
        a: Point,
        b: Point,
    },
    /// `{(x,y) ∈ P : x ≺ a and t ≺ y}`.
    Corner {
        a: Point,
        t: Point,
    },
    /// `{(x,y) : x ≺ φ(y)}`.
    OfBFOpen(PiecewiseBF),
    /// Pairs with a cylinder neighbourhood inside `{(x,y) : x ⪯ φ(y)}`.
    OfBFClosed(PiecewiseBF),
    Union(Vec<IdealExpr>),
    Intersection(Vec<IdealExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdealExpr {
    pub mode: Mode,
    pub node: Node,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Union,
    Intersection,
}

impl IdealExpr {
    pub fn empty(mode: Mode) -> Self {
        IdealExpr {
            mode,
            node: Node::Empty,
        }
    }

    pub fn full(mode: Mode) -> Self {
        IdealExpr {
            mode,
            node: Node::Full,
        }
    }

    pub fn finite(set: MatrixUnitSet) -> Self {
        IdealExpr {
            mode: set.mode(),
            node: Node::FiniteLevel(set),
        }
    }

    pub fn strip(a: Point, b: Point) -> Self {
        IdealExpr {
            mode: Mode::IdealSet,
            node: Node::Strip { a, b },
        }
    }

    pub fn strip_plus(a: Point, b: Point) -> Self {
        IdealExpr {
            mode: Mode::IdealSet,
            node: Node::StripPlus { a, b },
        }
    }

    pub fn corner(a: Point, t: Point) -> Self {
        IdealExpr {
            mode: Mode::IdealSet,
            node: Node::Corner { a, t },
        }
    }

    pub fn sigma_open(phi: PiecewiseBF) -> Self {
        IdealExpr {
            mode: phi.mode(),
            node: Node::OfBFOpen(phi),
        }
    }

    pub fn sigma_closed(phi: PiecewiseBF) -> Self {
        IdealExpr {
            mode: phi.mode(),
            node: Node::OfBFClosed(phi),
        }
    }

    pub fn union(parts: Vec<IdealExpr>) -> Result<Self, IdealError> {
        combine(CombineOp::Union, parts)
    }

    pub fn intersection(parts: Vec<IdealExpr>) -> Result<Self, IdealError> {
        combine(CombineOp::Intersection, parts)
    }

    /// Every point named by the expression, recursively.
    pub fn landmarks(&self, sys: &RefinementSystem) -> Vec<Point> {
        let mut out = Vec::new();
        self.collect_landmarks(sys, &mut out);
        out
    }

    fn collect_landmarks(&self, sys: &RefinementSystem, out: &mut Vec<Point>) {
        match &self.node {
            Node::Empty | Node::Full | Node::FiniteLevel(_) => {}
            Node::Strip { a, b } | Node::StripPlus { a, b } => out.extend([a.clone(), b.clone()]),
            Node::Corner { a, t } => out.extend([a.clone(), t.clone()]),
            Node::OfBFOpen(phi) | Node::OfBFClosed(phi) => out.extend(phi.landmarks(sys)),
            Node::Union(parts) | Node::Intersection(parts) => {
                for p in parts {
                    p.collect_landmarks(sys, out);
                }
            }
        }
    }

    /// Largest finite level used anywhere in the expression.
    pub fn max_level(&self) -> usize {
        match &self.node {
            Node::FiniteLevel(s) => s.level(),
            Node::Union(parts) | Node::Intersection(parts) => {
                parts.iter().map(IdealExpr::max_level).max().unwrap_or(0)
            }
            _ => 0,
        }
    }
}

pub fn combine(op: CombineOp, parts: Vec<IdealExpr>) -> Result<IdealExpr, IdealError> {
    let mode = parts.first().ok_or(IdealError::EmptyCombination)?.mode;
    if parts.iter().any(|p| p.mode != mode) {
        return Err(IdealError::MixedModes);
    }
    let node = match op {
        CombineOp::Union => Node::Union(parts),
        CombineOp::Intersection => Node::Intersection(parts),
    };
    Ok(IdealExpr { mode, node })
}

pub fn member(sys: &RefinementSystem, sigma: &IdealExpr, x: &Point, y: &Point) -> Verdict {
    member_capped(sys, sigma, x, y, DEFAULT_DEPTH_CAP)
}

pub fn member_capped(
    sys: &RefinementSystem,
    sigma: &IdealExpr,
    x: &Point,
    y: &Point,
    depth_cap: usize,
) -> Verdict {
    if let Node::Union(parts) = &sigma.node {
        return parts
            .iter()
            .fold(Verdict::No("no part contains the pair".into()), |acc, p| {
                if acc.is_yes() {
                    acc
                } else {
                    acc.or(member_capped(sys, p, x, y, depth_cap))
                }
            });
    }
    if let Node::Intersection(parts) = &sigma.node {
        return parts.iter().fold(Verdict::Yes(None), |acc, p| {
            if acc.is_no() {
                acc
            } else {
                acc.and(member_capped(sys, p, x, y, depth_cap))
            }
        });
    }
    if !sigma.mode.relates(x, y) {
        return Verdict::No(match sigma.mode {
            Mode::IdealSet => "pair is not in P".into(),
            Mode::ModuleSet => "pair is not in G".into(),
        });
    }
    match &sigma.node {
        Node::Empty => Verdict::No("empty set".into()),
        Node::Full => Verdict::Yes(None),
        Node::FiniteLevel(s) => {
            let n = s.level();
            Verdict::from_bool(
                s.contains(&x.prefix(n), &y.prefix(n)),
                "prefix pair not in the level set",
            )
        }
        Node::Strip { a, b } => Verdict::from_bool(x < a || b < y, "a ⪯ x and y ⪯ b"),
        Node::StripPlus { a, b } => Verdict::from_bool(
            x < a || b < y || (x == a && y == b),
            "a ⪯ x, y ⪯ b and (x,y) ≠ (a,b)",
        ),
        Node::Corner { a, t } => Verdict::from_bool(x < a && t < y, "x ⪰ a or y ⪯ t"),
        Node::OfBFOpen(phi) => Verdict::from_bool(x < &phi.eval(sys, y), "x ⪰ φ(y)"),
        Node::OfBFClosed(phi) => decide_cylinder_level(
            sys,
            phi,
            x,
            y,
            CylinderCheck::Plain,
            sigma.mode == Mode::IdealSet,
            depth_cap,
        ),
        Node::Union(_) | Node::Intersection(_) => unreachable!("handled above"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealViolation {
    ConstructorViolation(String),
    /// `(w,x) ∈ P`, `(x,y) ∈ σ`, `(y,z) ∈ P` but `(w,z) ∉ σ`.
    IdealPropertyViolation {
        w: Point,
        x: Point,
        y: Point,
        z: Point,
    },
    /// A member pair outside the ambient relation.
    OutsideRelation {
        x: Point,
        y: Point,
    },
}

fn structural_violations(sys: &RefinementSystem, sigma: &IdealExpr, out: &mut Vec<IdealViolation>) {
    let mut flag = |msg: String| out.push(IdealViolation::ConstructorViolation(msg));
    match &sigma.node {
        Node::Strip { .. } | Node::StripPlus { .. } | Node::Corner { .. }
            if sigma.mode != Mode::IdealSet =>
        {
            flag("strip and corner sets exist only in ideal mode".into())
        }
        Node::StripPlus { a, b } if !p_test(a, b) => flag(format!(
            "strip-plus needs (a,b) ∈ P: a={}, b={}",
            sys.fmt_point(a),
            sys.fmt_point(b)
        )),
        Node::Corner { a, t } if !(sys.p_min() < *a && a <= t && *t < sys.p_max()) => {
            flag(format!(
                "corner needs p_min ≺ a ⪯ t ≺ p_max: a={}, t={}",
                sys.fmt_point(a),
                sys.fmt_point(t)
            ))
        }
        Node::FiniteLevel(s) => {
            if s.mode() != sigma.mode {
                flag("level set mode differs from expression mode".into());
            }
            for (u, v) in s.pairs() {
                if u.level() != s.level() || v.level() != s.level() {
                    flag(format!(
                        "pair at wrong level: ({}, {})",
                        sys.fmt_word(u),
                        sys.fmt_word(v)
                    ));
                } else if Word::new(sys, u.0.clone()).is_err()
                    || Word::new(sys, v.0.clone()).is_err()
                {
                    flag("pair has out-of-range digits".into());
                } else if sigma.mode == Mode::IdealSet && u > v {
                    flag(format!(
                        "pair not in P: ({}, {})",
                        sys.fmt_word(u),
                        sys.fmt_word(v)
                    ));
                }
            }
        }
        Node::OfBFOpen(phi) | Node::OfBFClosed(phi) if phi.mode() != sigma.mode => {
            flag("boundary function mode differs from expression mode".into())
        }
        Node::Union(parts) | Node::Intersection(parts) => {
            if parts.iter().any(|p| p.mode != sigma.mode) {
                flag("mixed modes in combination".into());
            }
            for p in parts {
                structural_violations(sys, p, out);
            }
        }
        _ => {}
    }
}

/// Structural checks plus a sampled check of the ideal property.
pub fn validate_ideal_expr(sys: &RefinementSystem, sigma: &IdealExpr) -> Vec<IdealViolation> {
    validate_ideal_expr_with(sys, sigma, 500, 0)
}

pub fn validate_ideal_expr_with(
    sys: &RefinementSystem,
    sigma: &IdealExpr,
    samples: usize,
    seed: u64,
) -> Vec<IdealViolation> {
    let mut out = Vec::new();
    structural_violations(sys, sigma, &mut out);
    if !out.is_empty() {
        return out;
    }
    let mut sampler = Sampler::for_expr(sys, sigma, seed);
    let mut found = 0;
    for _ in 0..samples {
        let (x, y) = sampler.pair_near(sys, sigma);
        if !member(sys, sigma, &x, &y).is_yes() {
            continue;
        }
        if !sigma.mode.relates(&x, &y) {
            out.push(IdealViolation::OutsideRelation { x, y });
            continue;
        }
        let w = sampler.orbit_point_below(sys, &x);
        let z = sampler.orbit_point_above(sys, &y);
        if member(sys, sigma, &w, &z).is_no() {
            out.push(IdealViolation::IdealPropertyViolation { w, x, y, z });
            found += 1;
            if found >= 3 {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests;

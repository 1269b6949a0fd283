//! Finite shadows: the level-`N` matrix units wholly contained in an ideal set.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::boundary::{cylinder_le, CylinderCheck};
use crate::ideal::{member, IdealError, IdealExpr, MatrixUnitSet, Mode, Node, MAX_LEVEL_WORDS};
use crate::order::{lcm, Point, RefinementSystem, Word};

/// Extra levels a union may descend below the requested level.
pub const DEFAULT_UNION_DEPTH: usize = 10;

pub fn restrict_to_level(
    sys: &RefinementSystem,
    sigma: &IdealExpr,
    level: usize,
) -> Result<MatrixUnitSet, IdealError> {
    restrict_to_level_capped(sys, sigma, level, DEFAULT_UNION_DEPTH)
}

pub fn restrict_to_level_capped(
    sys: &RefinementSystem,
    sigma: &IdealExpr,
    level: usize,
    union_depth: usize,
) -> Result<MatrixUnitSet, IdealError> {
    if level == 0 {
        return Err(IdealError::ZeroLevel);
    }
    if sys.word_count(level) > MAX_LEVEL_WORDS {
        return Err(IdealError::LevelTooLarge(level));
    }
    let probes = probe_tails(sys, sigma);
    let words = Word::all(sys, level);
    let mut pairs = BTreeSet::new();
    for u in &words {
        for v in &words {
            if sigma.mode == Mode::IdealSet && u > v {
                continue;
            }
            if cylinder_in(sys, sigma, u, v, union_depth, &probes)? {
                pairs.insert((u.clone(), v.clone()));
            }
        }
    }
    Ok(MatrixUnitSet::new_unchecked(level, pairs, sigma.mode))
}

fn probe_tails(sys: &RefinementSystem, sigma: &IdealExpr) -> Vec<Point> {
    let mut out = vec![sys.p_min(), sys.p_max(), sys.mixed()];
    for p in sigma.landmarks(sys) {
        out.extend(p.suc(sys));
        out.extend(p.pred(sys));
        out.push(p);
    }
    out.sort();
    out.dedup();
    out
}

/// Compares the tails of `a` and `b` from position `n` on.
fn tail_cmp(a: &Point, b: &Point, n: usize) -> Ordering {
    let horizon =
        n + a.preamble().len().max(b.preamble().len()) + lcm(a.period().len(), b.period().len());
    (n..horizon)
        .find(|&i| a.digit(i) != b.digit(i))
        .map_or(Ordering::Equal, |i| a.digit(i).cmp(&b.digit(i)))
}

/// Which tails `w` satisfy `u·w ≺ a`: all, none, or those below `a`'s tail.
#[derive(PartialEq, Eq)]
enum Cover {
    All,
    None,
    Threshold,
}

fn cover(word: &Word, point: &Point, below: bool) -> Cover {
    match (word.cmp(&point.prefix(word.level())), below) {
        (Ordering::Equal, _) => Cover::Threshold,
        (Ordering::Less, true) | (Ordering::Greater, false) => Cover::All,
        _ => Cover::None,
    }
}

fn strip_covers(u: &Word, v: &Word, a: &Point, b: &Point) -> bool {
    let ca = cover(u, a, true);
    let cb = cover(v, b, false);
    ca == Cover::All
        || cb == Cover::All
        || (ca == Cover::Threshold
            && cb == Cover::Threshold
            && tail_cmp(b, a, u.level()) == Ordering::Less)
}

/// Digit strings that extend a level-`from` word by `len` digits.
fn extensions(sys: &RefinementSystem, from: usize, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for i in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=sys.k(from + i)).map(move |d| {
                    let mut w = w.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

fn extend(u: &Word, tail: &[u32]) -> Word {
    Word(u.0.iter().chain(tail).copied().collect())
}

fn cylinder_in(
    sys: &RefinementSystem,
    sigma: &IdealExpr,
    u: &Word,
    v: &Word,
    depth: usize,
    probes: &[Point],
) -> Result<bool, IdealError> {
    let n = u.level();
    if sigma.mode == Mode::IdealSet && u > v {
        return Ok(false);
    }
    Ok(match &sigma.node {
        Node::Empty => false,
        Node::Full => true,
        Node::FiniteLevel(set) => {
            let m = set.level();
            if n >= m {
                set.contains(&Word(u.0[..m].to_vec()), &Word(v.0[..m].to_vec()))
            } else {
                extensions(sys, n, m - n)
                    .iter()
                    .all(|t| set.contains(&extend(u, t), &extend(v, t)))
            }
        }
        Node::Strip { a, b } => strip_covers(u, v, a, b),
        Node::StripPlus { a, b } => {
            strip_covers(u, v, a, b)
                || (u == &a.prefix(n) && v == &b.prefix(n) && tail_cmp(a, b, n) == Ordering::Equal)
        }
        Node::Corner { a, t } => u < &a.prefix(n) && v > &t.prefix(n),
        Node::OfBFOpen(phi) => cylinder_le(sys, phi, u, v, CylinderCheck::Strict),
        Node::OfBFClosed(phi) => cylinder_le(sys, phi, u, v, CylinderCheck::Plain),
        Node::Intersection(parts) => {
            for p in parts {
                if !cylinder_in(sys, p, u, v, depth, probes)? {
                    return Ok(false);
                }
            }
            true
        }
        Node::Union(parts) => {
            for p in parts {
                if cylinder_in(sys, p, u, v, 0, probes).unwrap_or(false) {
                    return Ok(true);
                }
            }
            for tail in probes {
                let x = Point::splice(sys, u, tail);
                let y = Point::splice(sys, v, tail);
                if member(sys, sigma, &x, &y).is_no() {
                    return Ok(false);
                }
            }
            if depth == 0 {
                return Err(IdealError::DepthExceeded(n));
            }
            for d in 1..=sys.k(n) {
                if !cylinder_in(sys, sigma, &u.push(d), &v.push(d), depth - 1, probes)? {
                    return Ok(false);
                }
            }
            true
        }
    })
}

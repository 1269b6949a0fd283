use super::cylinder::{decide_cylinder_level, CylinderCheck};
use super::{Leaf, Piece, PiecewiseBF};
use crate::ideal::{Mode, Verdict, DEFAULT_DEPTH_CAP};
use crate::order::{point_between, Point, RefinementSystem};
use crate::sample::Sampler;

/// A failed boundary-function property, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BfViolation {
    /// `φ(y) ≻ y`.
    Property1 { y: Point },
    /// `φ(y)` has a gap below but `(φ(y), y)` is outside the ambient relation.
    Property2a { y: Point },
    /// `φ(y)` has a gap below but `y` does not.
    Property2b { y: Point },
    /// `φ(y)` has a gap below and is also attained at a larger point.
    Property2c { y: Point },
    /// No cylinder neighbourhood of `(φ(y), y)` lies under the graph.
    Property2d { y: Point },
    /// `y ≺ z` and `φ(z) ≺ φ(y)`.
    Property3 { y: Point, z: Point },
    /// `φ(y) ≠ sup{φ(t) : t ≺ y}` at a point without a gap below.
    Property4 { y: Point },
    /// A cylinder search hit the depth cap.
    Undecided { y: Point },
}

/// A point of the piece with no gap below, if any.
fn gapless_point(sys: &RefinementSystem, p: &Piece) -> Option<Point> {
    let iv = &p.interval;
    if let Some(m) = iv.min(sys).filter(|m| !m.has_gap_below(sys)) {
        return Some(m);
    }
    if let Some(m) = iv.max(sys).filter(|m| !m.has_gap_below(sys)) {
        return Some(m);
    }
    point_between(sys, &iv.lo.point, &iv.hi.point, &sys.mixed())
}

fn cylinder_2d(
    sys: &RefinementSystem,
    phi: &PiecewiseBF,
    c: &Point,
    y: &Point,
    out: &mut Vec<BfViolation>,
) {
    let ideal = phi.mode() == Mode::IdealSet;
    match decide_cylinder_level(
        sys,
        phi,
        c,
        y,
        CylinderCheck::Plain,
        ideal,
        DEFAULT_DEPTH_CAP,
    ) {
        Verdict::Yes(_) => {}
        Verdict::No(_) => out.push(BfViolation::Property2d { y: y.clone() }),
        Verdict::Unknown(_) => out.push(BfViolation::Undecided { y: y.clone() }),
    }
}

fn check_gap_below_values(sys: &RefinementSystem, phi: &PiecewiseBF, out: &mut Vec<BfViolation>) {
    let pieces = phi.pieces();
    for (i, p) in pieces.iter().enumerate() {
        match &p.leaf {
            Leaf::Const(c) if c.has_gap_below(sys) => {
                let single = p
                    .interval
                    .min(sys)
                    .filter(|m| p.interval.max(sys).as_ref() == Some(m) && m.has_gap_below(sys));
                let Some(y) = single else {
                    let y = gapless_point(sys, p).unwrap_or_else(|| p.interval.inf(sys));
                    out.push(BfViolation::Property2b { y });
                    continue;
                };
                if !phi.mode().relates(c, &y) {
                    out.push(BfViolation::Property2a { y: y.clone() });
                }
                let shared = pieces.iter().enumerate().any(|(j, q)| {
                    j != i
                        && match &q.leaf {
                            Leaf::Const(d) => d == c,
                            Leaf::Identity => q.interval.contains(c),
                            Leaf::IdentityMinus => false,
                        }
                });
                if shared {
                    out.push(BfViolation::Property2c { y: y.clone() });
                }
                cylinder_2d(sys, phi, c, &y, out);
            }
            Leaf::Identity => {
                let ends = [p.interval.min(sys), p.interval.max(sys)];
                for m in ends.into_iter().flatten().filter(|m| m.has_gap_below(sys)) {
                    cylinder_2d(sys, phi, &m, &m, out);
                }
            }
            _ => {}
        }
    }
}

pub fn validate_bf(sys: &RefinementSystem, phi: &PiecewiseBF) -> Vec<BfViolation> {
    validate_bf_with(sys, phi, 200, 0)
}

/// Symbolic per-piece checks of properties 1–4, then sampled checks of 1 and 3.
pub fn validate_bf_with(
    sys: &RefinementSystem,
    phi: &PiecewiseBF,
    samples: usize,
    seed: u64,
) -> Vec<BfViolation> {
    let ideal = phi.mode() == Mode::IdealSet;
    let pieces = phi.pieces();
    let mut out = Vec::new();
    if ideal {
        for p in pieces {
            if let Leaf::Const(c) = &p.leaf {
                let inf = p.interval.inf(sys);
                if *c > inf {
                    let y = p.interval.min(sys).unwrap_or_else(|| {
                        point_between(sys, &inf, &c.clone().min(p.interval.sup(sys)), &sys.mixed())
                            .unwrap_or_else(|| p.interval.sup(sys))
                    });
                    out.push(BfViolation::Property1 { y });
                }
            }
        }
    }
    check_gap_below_values(sys, phi, &mut out);
    for w in pieces.windows(2) {
        if w[0].image_sup(sys) > w[1].image_inf(sys) {
            out.push(BfViolation::Property3 {
                y: w[0].interval.sup(sys),
                z: w[1].interval.inf(sys),
            });
        }
    }
    if ideal && phi.eval(sys, &sys.p_min()) != sys.p_min() {
        out.push(BfViolation::Property4 { y: sys.p_min() });
    }
    for w in pieces.windows(2) {
        if !w[1].interval.lo.closed {
            continue;
        }
        let m = &w[1].interval.lo.point;
        if !m.has_gap_below(sys) && phi.eval(sys, m) != w[0].image_sup(sys) {
            out.push(BfViolation::Property4 { y: m.clone() });
        }
    }
    let mut sampler = Sampler::new(sys, seed, phi.landmarks(sys));
    for _ in 0..samples {
        let y = sampler.point(sys);
        let z = sampler.point(sys);
        let (fy, fz) = (phi.eval(sys, &y), phi.eval(sys, &z));
        if ideal && fy > y {
            out.push(BfViolation::Property1 { y: y.clone() });
        }
        if y < z && fz < fy {
            out.push(BfViolation::Property3 { y, z });
        } else if z < y && fy < fz {
            out.push(BfViolation::Property3 { y: z, z: y });
        }
    }
    let mut seen = Vec::new();
    out.retain(|v| {
        if seen.contains(v) {
            false
        } else {
            seen.push(v.clone());
            true
        }
    });
    out
}

//! Decides `∀w: u·w R φ(v·w)` for level-`M` words by intersecting each piece
//! with the cylinder of `v`.

use super::{Leaf, PiecewiseBF};
use crate::ideal::Verdict;
use crate::order::{cylinder_bounds, lcm, Bound, OrderInterval, Point, RefinementSystem, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CylinderCheck {
    /// `u·w ⪯ φ(v·w)`.
    Plain,
    /// `u·w ≺ φ(v·w)`.
    Strict,
    /// `u·w ⪯ φ(v·w)`, or `⪯ suc φ(v·w)` where `φ(v·w)` has a gap above.
    Hat,
}

pub fn cylinder_le(
    sys: &RefinementSystem,
    phi: &PiecewiseBF,
    u: &Word,
    v: &Word,
    check: CylinderCheck,
) -> bool {
    let (lo, hi) = cylinder_bounds(sys, v);
    let cyl = OrderInterval {
        lo: Bound::closed(lo),
        hi: Bound::closed(hi),
    };
    let shift = |p: &Point| Point::splice(sys, u, p);
    for piece in phi.pieces() {
        let Some(j) = piece.interval.intersect(sys, &cyl) else {
            continue;
        };
        let ok = match (&piece.leaf, check) {
            (Leaf::Const(c), CylinderCheck::Plain) => shift(&j.sup(sys)) <= *c,
            (Leaf::Const(c), CylinderCheck::Hat) => {
                let top = c.suc(sys).unwrap_or_else(|| c.clone());
                shift(&j.sup(sys)) <= top
            }
            (Leaf::Const(c), CylinderCheck::Strict) => match j.max(sys) {
                Some(m) => shift(&m) < *c,
                None => shift(&j.sup(sys)) <= *c,
            },
            (Leaf::Identity, CylinderCheck::Strict)
            | (Leaf::IdentityMinus, CylinderCheck::Strict) => u < v,
            (Leaf::Identity, _) | (Leaf::IdentityMinus, CylinderCheck::Hat) => u <= v,
            (Leaf::IdentityMinus, CylinderCheck::Plain) => {
                u < v
                    || (u == v
                        && matches!((j.min(sys), j.max(sys)), (Some(a), Some(b)) if a == b && !a.has_gap_below(sys)))
            }
        };
        if !ok {
            return false;
        }
    }
    true
}

/// A level past which cylinder checks involving `phi` and `extra` no longer change.
pub fn search_bound(sys: &RefinementSystem, phi: &PiecewiseBF, extra: &[&Point]) -> usize {
    let marks = phi.landmarks(sys);
    let all = marks.iter().chain(extra.iter().copied());
    let mut pre = 0;
    let mut per = sys.cycle_len();
    for p in all {
        pre = pre.max(p.preamble().len());
        per = lcm(per, p.period().len());
    }
    pre + sys.prefix_len() + 2 * per + 2
}

/// Least cylinder level `M` with `(x,y) ∈ e_{u,v}` and the check holding on
/// `e_{u,v}`. With `require_p`, the cylinder must also lie in `P`.
pub fn decide_cylinder_level(
    sys: &RefinementSystem,
    phi: &PiecewiseBF,
    x: &Point,
    y: &Point,
    check: CylinderCheck,
    require_p: bool,
    depth_cap: usize,
) -> Verdict {
    let Some(start) = x.agreement_index(y) else {
        return Verdict::No("points are not in one orbit".into());
    };
    if require_p && x > y {
        return Verdict::No("pair is not in P".into());
    }
    let bound = search_bound(sys, phi, &[x, y]).max(start);
    let stop = bound.min(depth_cap);
    for m in start..=stop {
        if cylinder_le(sys, phi, &x.prefix(m), &y.prefix(m), check) {
            return Verdict::Yes(Some(m));
        }
    }
    if bound > depth_cap {
        Verdict::Unknown(depth_cap)
    } else {
        Verdict::No("no cylinder neighbourhood lies under the graph".into())
    }
}

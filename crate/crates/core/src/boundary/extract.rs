use super::ops::{bf_lattice, bf_minus, LatticeOp};
use super::{BfError, Leaf, Piece, PiecewiseBF};
use crate::ideal::{IdealExpr, MatrixUnitSet, Mode, Node, MAX_LEVEL_WORDS};
use crate::order::{
    cylinder_bounds, interval_is_empty, p_test, Bound, OrderInterval, Point, RefinementSystem,
    Tail, Word,
};

fn piece(sys: &RefinementSystem, lo: Bound, hi: Bound, leaf: Leaf) -> Option<Piece> {
    if interval_is_empty(sys, &lo, &hi) {
        None
    } else {
        Some(Piece::new(OrderInterval { lo, hi }, leaf))
    }
}

fn assemble(
    sys: &RefinementSystem,
    mode: Mode,
    parts: impl IntoIterator<Item = Option<Piece>>,
) -> Result<PiecewiseBF, BfError> {
    PiecewiseBF::from_pieces(sys, parts.into_iter().flatten().collect(), mode)
}

fn minus(sys: &RefinementSystem, a: &Point) -> Point {
    a.pred(sys).unwrap_or_else(|| a.clone())
}

/// `φ_σ(y) = sup{x ∈ orb(y) : (x,y) ∈ σ}`, with `sup ∅ = p_min`.
pub fn boundary_of(sys: &RefinementSystem, sigma: &IdealExpr) -> Result<PiecewiseBF, BfError> {
    let mode = sigma.mode;
    let (p_min, p_max) = (sys.p_min(), sys.p_max());
    match &sigma.node {
        Node::Empty => Ok(PiecewiseBF::constant(sys, p_min, mode)),
        Node::Full => Ok(match mode {
            Mode::IdealSet => PiecewiseBF::identity(sys, mode),
            Mode::ModuleSet => PiecewiseBF::constant(sys, p_max, mode),
        }),
        Node::FiniteLevel(set) => finite_level(sys, set, mode),
        Node::Strip { a, b } => {
            if b < a {
                return Ok(PiecewiseBF::identity(sys, mode));
            }
            assemble(
                sys,
                mode,
                [
                    piece(
                        sys,
                        Bound::closed(p_min),
                        Bound::open(a.clone()),
                        Leaf::Identity,
                    ),
                    piece(
                        sys,
                        Bound::closed(a.clone()),
                        Bound::closed(b.clone()),
                        Leaf::Const(minus(sys, a)),
                    ),
                    piece(
                        sys,
                        Bound::open(b.clone()),
                        Bound::closed(p_max),
                        Leaf::Identity,
                    ),
                ],
            )
        }
        Node::StripPlus { a, b } => {
            if !p_test(a, b) {
                return boundary_of(sys, &IdealExpr::strip(a.clone(), b.clone()));
            }
            if a == b {
                return Ok(PiecewiseBF::identity(sys, mode));
            }
            assemble(
                sys,
                mode,
                [
                    piece(
                        sys,
                        Bound::closed(p_min),
                        Bound::open(a.clone()),
                        Leaf::Identity,
                    ),
                    piece(
                        sys,
                        Bound::closed(a.clone()),
                        Bound::open(b.clone()),
                        Leaf::Const(minus(sys, a)),
                    ),
                    piece(
                        sys,
                        Bound::closed(b.clone()),
                        Bound::closed(b.clone()),
                        Leaf::Const(a.clone()),
                    ),
                    piece(
                        sys,
                        Bound::open(b.clone()),
                        Bound::closed(p_max),
                        Leaf::Identity,
                    ),
                ],
            )
        }
        Node::Corner { a, t } => assemble(
            sys,
            mode,
            [
                piece(
                    sys,
                    Bound::closed(p_min.clone()),
                    Bound::closed(t.clone()),
                    Leaf::Const(p_min),
                ),
                piece(
                    sys,
                    Bound::open(t.clone()),
                    Bound::closed(p_max),
                    Leaf::Const(minus(sys, a)),
                ),
            ],
        ),
        Node::OfBFClosed(phi) => Ok(phi.clone()),
        Node::OfBFOpen(phi) => Ok(bf_minus(sys, phi)),
        Node::Union(parts) => fold(sys, parts, LatticeOp::Join),
        Node::Intersection(parts) => fold(sys, parts, LatticeOp::Meet),
    }
}

fn fold(
    sys: &RefinementSystem,
    parts: &[IdealExpr],
    op: LatticeOp,
) -> Result<PiecewiseBF, BfError> {
    let mut iter = parts.iter();
    let first = iter
        .next()
        .ok_or_else(|| BfError::NotPartition("empty combination".into()))?;
    let mut acc = boundary_of(sys, first)?;
    for p in iter {
        acc = bf_lattice(op, sys, &acc, &boundary_of(sys, p)?)?;
    }
    Ok(acc)
}

/// On each level-`N` cylinder `C_v`: identity when `v` pairs with itself,
/// `u·max` for the largest partner `u`, `p_min` when `v` has no partner.
fn finite_level(
    sys: &RefinementSystem,
    set: &MatrixUnitSet,
    mode: Mode,
) -> Result<PiecewiseBF, BfError> {
    let n = set.level();
    if sys.word_count(n) > MAX_LEVEL_WORDS {
        return Err(BfError::DepthExceeded(n));
    }
    let mut pieces = Vec::new();
    for v in Word::all(sys, n) {
        let top = set
            .pairs()
            .iter()
            .filter(|(u, w)| w == &v && (mode == Mode::ModuleSet || u <= &v))
            .map(|(u, _)| u)
            .max();
        let leaf = match top {
            None => Leaf::Const(sys.p_min()),
            Some(u) if u == &v && mode == Mode::IdealSet => Leaf::Identity,
            Some(u) => Leaf::Const(Point::with_tail(sys, u, Tail::Max)),
        };
        let (lo, hi) = cylinder_bounds(sys, &v);
        pieces.push(Piece::new(
            OrderInterval::new(sys, Bound::closed(lo), Bound::closed(hi))?,
            leaf,
        ));
    }
    PiecewiseBF::from_pieces(sys, pieces, mode)
}

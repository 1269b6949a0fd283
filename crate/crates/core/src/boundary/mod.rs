//! Boundary functions as piecewise objects over order intervals.

mod atoms;
mod cylinder;
mod extract;
mod graph;
mod ops;
mod validate;

use thiserror::Error;

use crate::ideal::Mode;
use crate::order::{interval_is_empty, Bound, OrderError, OrderInterval, Point, RefinementSystem};

pub(crate) use atoms::{tabulate, Atoms};
pub use cylinder::{cylinder_le, decide_cylinder_level, search_bound, CylinderCheck};
pub use extract::boundary_of;
pub use graph::{in_b_phi, in_l_phi, sandwich_check, GraphSets};
pub(crate) use ops::renormalize;
pub use ops::{
    bf_between, bf_equiv, bf_lattice, bf_minus, bf_plus, is_point_of_modification,
    is_point_of_modification_capped, LatticeOp, ModificationCertificate,
};
pub use validate::{validate_bf, validate_bf_with, BfViolation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BfError {
    #[error("pieces do not partition the space: {0}")]
    NotPartition(String),
    #[error("boundary functions have different modes")]
    ModeMismatch,
    #[error("analysis exceeded depth {0}")]
    DepthExceeded(usize),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Leaf {
    Identity,
    /// `pred y` where `y` has a gap below, `y` elsewhere.
    IdentityMinus,
    Const(Point),
}

impl Leaf {
    pub fn apply(&self, sys: &RefinementSystem, y: &Point) -> Point {
        match self {
            Leaf::Identity => y.clone(),
            Leaf::IdentityMinus => y.pred(sys).unwrap_or_else(|| y.clone()),
            Leaf::Const(c) => c.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Piece {
    pub interval: OrderInterval,
    pub leaf: Leaf,
}

impl Piece {
    pub fn new(interval: OrderInterval, leaf: Leaf) -> Self {
        Piece { interval, leaf }
    }

    /// Supremum of the image of the piece.
    pub(crate) fn image_sup(&self, sys: &RefinementSystem) -> Point {
        match self.interval.max(sys) {
            Some(m) => self.leaf.apply(sys, &m),
            None => match &self.leaf {
                Leaf::Const(c) => c.clone(),
                _ => self.interval.hi.point.clone(),
            },
        }
    }

    /// Infimum of the image of the piece.
    pub(crate) fn image_inf(&self, sys: &RefinementSystem) -> Point {
        match self.interval.min(sys) {
            Some(m) => self.leaf.apply(sys, &m),
            None => match &self.leaf {
                Leaf::Const(c) => c.clone(),
                _ => self.interval.lo.point.clone(),
            },
        }
    }
}

/// A function `X → X` given by a finite ordered partition into intervals,
/// each carrying a leaf. Always held in canonical form, so structural
/// equality is extensional equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiecewiseBF {
    pieces: Vec<Piece>,
    mode: Mode,
}

impl PiecewiseBF {
    /// Builds from an ordered partition and brings it to canonical form.
    /// Boundary-function properties are not checked here; see [`validate_bf`].
    pub fn from_pieces(
        sys: &RefinementSystem,
        pieces: Vec<Piece>,
        mode: Mode,
    ) -> Result<Self, BfError> {
        let pieces: Vec<Piece> = pieces
            .into_iter()
            .map(|p| Piece::new(tighten(sys, p.interval), p.leaf))
            .collect();
        check_partition(sys, &pieces)?;
        let raw = PiecewiseBF { pieces, mode };
        let atoms = Atoms::new(sys, raw.breakpoints());
        Ok(atoms.rebuild(sys, mode, |y| raw.eval(sys, y), |z| raw.leaf_at(z).clone()))
    }

    pub fn identity(sys: &RefinementSystem, mode: Mode) -> Self {
        PiecewiseBF {
            pieces: vec![Piece::new(OrderInterval::full(sys), Leaf::Identity)],
            mode,
        }
    }

    pub fn constant(sys: &RefinementSystem, c: Point, mode: Mode) -> Self {
        PiecewiseBF {
            pieces: vec![Piece::new(OrderInterval::full(sys), Leaf::Const(c))],
            mode,
        }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub(crate) fn from_canonical(pieces: Vec<Piece>, mode: Mode) -> Self {
        PiecewiseBF { pieces, mode }
    }

    pub fn piece_index(&self, y: &Point) -> usize {
        self.pieces
            .iter()
            .position(|p| p.interval.contains(y))
            .expect("pieces partition the space")
    }

    pub(crate) fn leaf_at(&self, y: &Point) -> &Leaf {
        &self.pieces[self.piece_index(y)].leaf
    }

    pub fn eval(&self, sys: &RefinementSystem, y: &Point) -> Point {
        self.leaf_at(y).apply(sys, y)
    }

    /// Every interval endpoint and constant value.
    pub fn breakpoints(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for p in &self.pieces {
            out.push(p.interval.lo.point.clone());
            out.push(p.interval.hi.point.clone());
            if let Leaf::Const(c) = &p.leaf {
                out.push(c.clone());
            }
        }
        out
    }

    /// Every point the function mentions, together with successors and predecessors.
    pub(crate) fn landmarks(&self, sys: &RefinementSystem) -> Vec<Point> {
        Atoms::new(sys, self.breakpoints()).points().to_vec()
    }
}

/// Canonical bounds: open ends only at points without a gap on that side.
pub(crate) fn tighten(sys: &RefinementSystem, iv: OrderInterval) -> OrderInterval {
    let lo = match (&iv.lo, iv.lo.point.suc(sys)) {
        (Bound { closed: false, .. }, Some(s)) => Bound::closed(s),
        _ => iv.lo,
    };
    let hi = match (&iv.hi, iv.hi.point.pred(sys)) {
        (Bound { closed: false, .. }, Some(p)) => Bound::closed(p),
        _ => iv.hi,
    };
    OrderInterval { lo, hi }
}

fn check_partition(sys: &RefinementSystem, pieces: &[Piece]) -> Result<(), BfError> {
    let first = pieces
        .first()
        .ok_or_else(|| BfError::NotPartition("no pieces".into()))?;
    if first.interval.lo != Bound::closed(sys.p_min()) {
        return Err(BfError::NotPartition(
            "first piece must start at p_min".into(),
        ));
    }
    let last = pieces.last().expect("nonempty");
    if last.interval.hi != Bound::closed(sys.p_max()) {
        return Err(BfError::NotPartition("last piece must end at p_max".into()));
    }
    if let Some(i) = pieces
        .iter()
        .position(|p| interval_is_empty(sys, &p.interval.lo, &p.interval.hi))
    {
        return Err(BfError::NotPartition(format!("piece {} is empty", i + 1)));
    }
    for (i, w) in pieces.windows(2).enumerate() {
        let hi = &w[0].interval.hi;
        let lo = &w[1].interval.lo;
        let joined = if hi.closed {
            (!lo.closed && lo.point == hi.point)
                || (lo.closed && hi.point.suc(sys).as_ref() == Some(&lo.point))
        } else {
            lo.closed && lo.point == hi.point
        };
        if !joined {
            return Err(BfError::NotPartition(format!(
                "pieces {} and {} do not meet",
                i + 1,
                i + 2
            )));
        }
    }
    Ok(())
}

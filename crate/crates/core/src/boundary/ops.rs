use std::collections::BTreeMap;

use super::cylinder::{decide_cylinder_level, CylinderCheck};
use super::{Atoms, BfError, Leaf, PiecewiseBF};
use crate::ideal::{Mode, Verdict, DEFAULT_DEPTH_CAP};
use crate::order::{Point, RefinementSystem, Word};

/// Re-derives the canonical form against the function's own breakpoints.
pub(crate) fn renormalize(sys: &RefinementSystem, f: PiecewiseBF) -> PiecewiseBF {
    let atoms = Atoms::new(sys, f.breakpoints());
    atoms.rebuild(sys, f.mode(), |y| f.eval(sys, y), |z| f.leaf_at(z).clone())
}

fn minus_point(sys: &RefinementSystem, c: &Point) -> Point {
    c.pred(sys).unwrap_or_else(|| c.clone())
}

/// `φ⁻`: the predecessor wherever `φ(y)` has a gap below.
pub fn bf_minus(sys: &RefinementSystem, phi: &PiecewiseBF) -> PiecewiseBF {
    let atoms = Atoms::new(sys, phi.breakpoints());
    let out = atoms.rebuild(
        sys,
        phi.mode(),
        |y| minus_point(sys, &phi.eval(sys, y)),
        |z| match phi.leaf_at(z) {
            Leaf::Identity | Leaf::IdentityMinus => Leaf::IdentityMinus,
            Leaf::Const(c) => Leaf::Const(minus_point(sys, c)),
        },
    );
    renormalize(sys, out)
}

/// Cylinder witnessing that `y` is a point of modification: `e_{u,v}`
/// contains `(suc φ(y), y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModificationCertificate {
    pub y: Point,
    pub u: Word,
    pub v: Word,
}

pub fn is_point_of_modification(
    sys: &RefinementSystem,
    phi: &PiecewiseBF,
    y: &Point,
) -> (Verdict, Option<ModificationCertificate>) {
    is_point_of_modification_capped(sys, phi, y, DEFAULT_DEPTH_CAP)
}

pub fn is_point_of_modification_capped(
    sys: &RefinementSystem,
    phi: &PiecewiseBF,
    y: &Point,
    depth_cap: usize,
) -> (Verdict, Option<ModificationCertificate>) {
    if !y.has_gap_below(sys) {
        return (Verdict::No("y has no gap below".into()), None);
    }
    let value = phi.eval(sys, y);
    let Some(s) = value.suc(sys) else {
        return (Verdict::No("φ(y) has no gap above".into()), None);
    };
    let verdict = decide_cylinder_level(
        sys,
        phi,
        &s,
        y,
        CylinderCheck::Hat,
        phi.mode() == Mode::IdealSet,
        depth_cap,
    );
    let cert = match verdict {
        Verdict::Yes(Some(m)) => Some(ModificationCertificate {
            y: y.clone(),
            u: s.prefix(m),
            v: y.prefix(m),
        }),
        _ => None,
    };
    (verdict, cert)
}

/// `φ⁺`: the successor at every point of modification.
pub fn bf_plus(sys: &RefinementSystem, phi: &PiecewiseBF) -> Result<PiecewiseBF, BfError> {
    let atoms = Atoms::new(sys, phi.breakpoints());
    let mut values = BTreeMap::new();
    for y in atoms.points() {
        let value = phi.eval(sys, y);
        let new = match is_point_of_modification(sys, phi, y).0 {
            Verdict::Yes(_) => value
                .suc(sys)
                .expect("modification values have a gap above"),
            Verdict::No(_) => value,
            Verdict::Unknown(d) => return Err(BfError::DepthExceeded(d)),
        };
        values.insert(y.clone(), new);
    }
    // inside an id- piece every gap-below point is a point of modification
    let out = atoms.rebuild(
        sys,
        phi.mode(),
        |y| values[y].clone(),
        |z| match phi.leaf_at(z) {
            Leaf::IdentityMinus => Leaf::Identity,
            other => other.clone(),
        },
    );
    Ok(renormalize(sys, out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Join,
    Meet,
}

/// Pointwise maximum or minimum.
pub fn bf_lattice(
    op: LatticeOp,
    sys: &RefinementSystem,
    phi: &PiecewiseBF,
    psi: &PiecewiseBF,
) -> Result<PiecewiseBF, BfError> {
    if phi.mode() != psi.mode() {
        return Err(BfError::ModeMismatch);
    }
    let pick = |a: Point, b: Point| match op {
        LatticeOp::Join => a.max(b),
        LatticeOp::Meet => a.min(b),
    };
    let atoms = Atoms::new(sys, phi.breakpoints().into_iter().chain(psi.breakpoints()));
    let out = atoms.rebuild(
        sys,
        phi.mode(),
        |y| pick(phi.eval(sys, y), psi.eval(sys, y)),
        |z| {
            let (lf, lg) = (phi.leaf_at(z), psi.leaf_at(z));
            let (fz, gz) = (lf.apply(sys, z), lg.apply(sys, z));
            let first = match op {
                LatticeOp::Join => fz > gz,
                LatticeOp::Meet => fz < gz,
            };
            if fz != gz {
                return if first { lf.clone() } else { lg.clone() };
            }
            // equal at a gap-free sample: same leaf, or id against id-
            match (lf, lg, op) {
                (Leaf::Identity, Leaf::IdentityMinus, LatticeOp::Meet)
                | (Leaf::IdentityMinus, Leaf::Identity, LatticeOp::Meet) => Leaf::IdentityMinus,
                (Leaf::Identity, Leaf::IdentityMinus, LatticeOp::Join)
                | (Leaf::IdentityMinus, Leaf::Identity, LatticeOp::Join) => Leaf::Identity,
                _ => lf.clone(),
            }
        },
    );
    Ok(renormalize(sys, out))
}

/// `φ ≈ ψ`: equal after taking `⁻`.
pub fn bf_equiv(sys: &RefinementSystem, phi: &PiecewiseBF, psi: &PiecewiseBF) -> bool {
    bf_minus(sys, phi) == bf_minus(sys, psi)
}

/// `φ⁻ ⪯ ψ ⪯ φ⁺` pointwise.
pub fn bf_between(
    sys: &RefinementSystem,
    phi: &PiecewiseBF,
    psi: &PiecewiseBF,
) -> Result<bool, BfError> {
    let lower = bf_minus(sys, phi);
    let upper = bf_plus(sys, phi)?;
    Ok(bf_lattice(LatticeOp::Meet, sys, &lower, psi)? == lower
        && bf_lattice(LatticeOp::Meet, sys, psi, &upper)? == *psi)
}

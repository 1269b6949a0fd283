//! Meet and join irreducibility of boundary functions and ideal sets, with
//! named normal forms and verified witnesses for reducible inputs.

use thiserror::Error;

use crate::boundary::{
    bf_lattice, boundary_of, renormalize, tabulate, validate_bf, BfError, BfViolation, LatticeOp,
    Leaf, PiecewiseBF,
};
use crate::ideal::{member, IdealExpr, Mode, Node};
use crate::order::{
    gap_below_point_between, p_test, point_between, OrderInterval, Point, RefinementSystem,
};
use crate::sample::Sampler;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IrrError {
    #[error(transparent)]
    Bf(#[from] BfError),
    #[error("{family}: {clause}")]
    Constraint {
        family: &'static str,
        clause: String,
    },
    #[error("witness check failed: {0}")]
    Witness(String),
}

fn constraint(family: &'static str, clause: impl Into<String>) -> IrrError {
    IrrError::Constraint {
        family,
        clause: clause.into(),
    }
}

/// Function equal to `value(y)` where it is `Some`, and to `y` elsewhere.
/// Every change of formula must happen at one of `breaks`.
fn shape(
    sys: &RefinementSystem,
    mode: Mode,
    breaks: Vec<Point>,
    value: impl Fn(&Point) -> Option<Point>,
) -> PiecewiseBF {
    tabulate(
        sys,
        mode,
        breaks,
        |y| value(y).unwrap_or_else(|| y.clone()),
        |z| value(z).map_or(Leaf::Identity, Leaf::Const),
    )
}

/// `y` outside `[a, b]` and `a` on it.
pub fn phi_ab(sys: &RefinementSystem, a: &Point, b: &Point) -> PiecewiseBF {
    shape(sys, Mode::IdealSet, vec![a.clone(), b.clone()], |y| {
        (a <= y && y <= b).then(|| a.clone())
    })
}

/// `y` outside `[a, b]`, `pred a` on `[a, b)` and `a` at `b`.
pub fn psi_paab(sys: &RefinementSystem, a: &Point, b: &Point) -> PiecewiseBF {
    let pa = a.pred(sys).unwrap_or_else(|| a.clone());
    shape(sys, Mode::IdealSet, vec![a.clone(), b.clone()], |y| {
        if y == b {
            Some(a.clone())
        } else {
            (a <= y && y < b).then(|| pa.clone())
        }
    })
}

/// `p_min` on `[p_min, t]` and `a` after.
pub fn phi_at(sys: &RefinementSystem, a: &Point, t: &Point) -> PiecewiseBF {
    let lo = sys.p_min();
    shape(sys, Mode::IdealSet, vec![a.clone(), t.clone()], |y| {
        Some(if y <= t { lo.clone() } else { a.clone() })
    })
}

/// Points of a closed interval with at most two elements; `None` if infinite.
fn finite_points(sys: &RefinementSystem, iv: &OrderInterval) -> Option<Vec<Point>> {
    let (lo, hi) = (iv.min(sys)?, iv.max(sys)?);
    if lo == hi {
        Some(vec![lo])
    } else if lo.suc(sys).as_ref() == Some(&hi) {
        Some(vec![lo, hi])
    } else {
        None
    }
}

/// A few points of an infinite interval, for choosing separated values.
fn spread(sys: &RefinementSystem, iv: &OrderInterval, gap_below: bool) -> Vec<Point> {
    let (lo, hi) = (iv.inf(sys), iv.sup(sys));
    let pick = |l: &Point, h: &Point| {
        if gap_below {
            gap_below_point_between(sys, l, h)
        } else {
            point_between(sys, l, h, &sys.mixed())
        }
    };
    let mut out: Vec<Point> = Vec::new();
    if let Some(mid) = pick(&lo, &hi) {
        out.extend(pick(&lo, &mid));
        out.extend(pick(&mid, &hi));
        out.push(mid);
    }
    out
}

/// One component of `ran φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RangePart {
    Interval(OrderInterval),
    /// The interval without its gap-below points.
    GapFree(OrderInterval),
    Point(Point),
}

impl RangePart {
    fn contains(&self, sys: &RefinementSystem, y: &Point) -> bool {
        match self {
            RangePart::Interval(iv) => iv.contains(y),
            RangePart::GapFree(iv) => iv.contains(y) && !y.has_gap_below(sys),
            RangePart::Point(p) => p == y,
        }
    }

    fn points(&self, sys: &RefinementSystem) -> Option<Vec<Point>> {
        match self {
            RangePart::Interval(iv) => finite_points(sys, iv),
            RangePart::GapFree(iv) => finite_points(sys, iv)
                .map(|ps| ps.into_iter().filter(|p| !p.has_gap_below(sys)).collect()),
            RangePart::Point(p) => Some(vec![p.clone()]),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RangeSize {
    One,
    Two,
    Many,
}

/// `ran φ` as a finite union, in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeDescriptor {
    parts: Vec<RangePart>,
}

impl RangeDescriptor {
    pub fn parts(&self) -> &[RangePart] {
        &self.parts
    }

    pub fn contains(&self, sys: &RefinementSystem, y: &Point) -> bool {
        self.parts.iter().any(|p| p.contains(sys, y))
    }

    /// The elements, when there are finitely many.
    pub fn points(&self, sys: &RefinementSystem) -> Option<Vec<Point>> {
        let mut out = Vec::new();
        for p in &self.parts {
            out.extend(p.points(sys)?);
        }
        out.sort();
        out.dedup();
        Some(out)
    }

    pub fn size(&self, sys: &RefinementSystem) -> RangeSize {
        match self.points(sys).map(|p| p.len()) {
            Some(1) => RangeSize::One,
            Some(2) => RangeSize::Two,
            _ => RangeSize::Many,
        }
    }

    /// Sorted elements: all of them if finite, otherwise a spread of each part.
    pub fn sample(&self, sys: &RefinementSystem) -> Vec<Point> {
        let mut out = Vec::new();
        for p in &self.parts {
            match (p.points(sys), p) {
                (Some(ps), _) => out.extend(ps),
                (None, RangePart::Interval(iv)) | (None, RangePart::GapFree(iv)) => {
                    let gapfree = matches!(p, RangePart::GapFree(_));
                    out.extend(
                        [iv.min(sys), iv.max(sys)]
                            .into_iter()
                            .flatten()
                            .filter(|y| !(gapfree && y.has_gap_below(sys))),
                    );
                    out.extend(spread(sys, iv, false));
                }
                (None, RangePart::Point(_)) => unreachable!(),
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// One component of `ED_φ = {y : φ(y) ≺ y}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DropPart {
    /// Points of `within` above `value`, all sent to `value`.
    Above { within: OrderInterval, value: Point },
    /// Gap-below points of the interval, each sent to its predecessor.
    GapBelow(OrderInterval),
}

/// `ED_φ` and its image `RD_φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DropDescriptor {
    parts: Vec<DropPart>,
}

impl DropDescriptor {
    pub fn parts(&self) -> &[DropPart] {
        &self.parts
    }

    pub fn in_ed(&self, sys: &RefinementSystem, y: &Point) -> bool {
        self.parts.iter().any(|p| match p {
            DropPart::Above { within, value } => within.contains(y) && y > value,
            DropPart::GapBelow(iv) => iv.contains(y) && y.has_gap_below(sys),
        })
    }

    pub fn rd_is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Elements of `RD_φ`, when there are finitely many.
    pub fn rd_points(&self, sys: &RefinementSystem) -> Option<Vec<Point>> {
        let mut out = Vec::new();
        for p in &self.parts {
            match p {
                DropPart::Above { value, .. } => out.push(value.clone()),
                DropPart::GapBelow(iv) => out.extend(
                    finite_points(sys, iv)?
                        .into_iter()
                        .filter(|y| y.has_gap_below(sys))
                        .filter_map(|y| y.pred(sys)),
                ),
            }
        }
        out.sort();
        out.dedup();
        Some(out)
    }

    /// Sorted elements of `RD_φ`: all if finite, otherwise a spread.
    pub fn rd_sample(&self, sys: &RefinementSystem) -> Vec<Point> {
        let mut out = Vec::new();
        for p in &self.parts {
            match p {
                DropPart::Above { value, .. } => out.push(value.clone()),
                DropPart::GapBelow(iv) => {
                    let ys = finite_points(sys, iv).unwrap_or_else(|| spread(sys, iv, true));
                    out.extend(
                        ys.into_iter()
                            .filter(|y| y.has_gap_below(sys))
                            .filter_map(|y| y.pred(sys)),
                    );
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Symbolic `ran φ`, `ED_φ` and `RD_φ`, computed piece by piece.
pub fn range_and_drop(
    sys: &RefinementSystem,
    phi: &PiecewiseBF,
) -> (RangeDescriptor, DropDescriptor) {
    let mut ran = Vec::new();
    let mut drop = Vec::new();
    for piece in phi.pieces() {
        let iv = &piece.interval;
        match &piece.leaf {
            Leaf::Identity => ran.push(RangePart::Interval(iv.clone())),
            Leaf::Const(c) => {
                ran.push(RangePart::Point(c.clone()));
                if &iv.sup(sys) > c {
                    drop.push(DropPart::Above {
                        within: iv.clone(),
                        value: c.clone(),
                    });
                }
            }
            Leaf::IdentityMinus => {
                let lowest = iv.min(sys).filter(|m| m.has_gap_below(sys));
                if let Some(p) = lowest.as_ref().and_then(|m| m.pred(sys)) {
                    ran.push(RangePart::Point(p));
                }
                if !iv.is_singleton() || lowest.is_none() {
                    ran.push(RangePart::GapFree(iv.clone()));
                }
                let has_drop = match finite_points(sys, iv) {
                    Some(ps) => ps.iter().any(|y| y.has_gap_below(sys)),
                    None => true,
                };
                if has_drop {
                    drop.push(DropPart::GapBelow(iv.clone()));
                }
            }
        }
    }
    ran.dedup();
    (
        RangeDescriptor { parts: ran },
        DropDescriptor { parts: drop },
    )
}

/// `sup{y : φ(y) ⪯ bound}`; the set is an initial segment since `φ` is monotone.
fn sup_where_le(sys: &RefinementSystem, phi: &PiecewiseBF, bound: &Point) -> Option<Point> {
    let cap = |iv: &OrderInterval, b: &Point| {
        let sup = iv.sup(sys);
        if &sup <= b {
            Some(sup)
        } else if iv.contains(b) {
            Some(b.clone())
        } else {
            None
        }
    };
    let mut best = None;
    for piece in phi.pieces() {
        let iv = &piece.interval;
        let found = match &piece.leaf {
            Leaf::Const(c) => (c <= bound).then(|| iv.sup(sys)),
            Leaf::Identity => cap(iv, bound),
            Leaf::IdentityMinus => {
                let b = bound.suc(sys).filter(|_| bound.has_gap_above(sys));
                cap(iv, b.as_ref().unwrap_or(bound))
            }
        };
        if found.is_some() {
            best = found;
        }
    }
    best
}

/// Named shapes recognised by [`normalize_bf`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormTag {
    Identity,
    Minimal,
    PhiAB { a: Point, b: Point },
    PsiPaab { pa: Point, a: Point, b: Point },
    PhiAT { a: Point, t: Point },
    Other,
}

fn match_phi_ab(sys: &RefinementSystem, phi: &PiecewiseBF, rd: &[Point]) -> Option<FormTag> {
    let [a] = rd else { return None };
    let b = sup_where_le(sys, phi, a)?;
    (phi_ab(sys, a, &b) == *phi).then(|| FormTag::PhiAB { a: a.clone(), b })
}

fn match_psi(sys: &RefinementSystem, phi: &PiecewiseBF, rd: &[Point]) -> Option<FormTag> {
    let [pa, a] = rd else { return None };
    if pa.suc(sys).as_ref() != Some(a) {
        return None;
    }
    let b = sup_where_le(sys, phi, a)?;
    (psi_paab(sys, a, &b) == *phi).then(|| FormTag::PsiPaab {
        pa: pa.clone(),
        a: a.clone(),
        b,
    })
}

fn match_phi_at(sys: &RefinementSystem, phi: &PiecewiseBF, ran: &[Point]) -> Option<FormTag> {
    let [lo, a] = ran else { return None };
    if lo != &sys.p_min() {
        return None;
    }
    let mut t = sup_where_le(sys, phi, lo)?;
    if &phi.eval(sys, &t) == a && t.has_gap_below(sys) {
        t = t.pred(sys)?;
    }
    (phi_at(sys, a, &t) == *phi).then(|| FormTag::PhiAT { a: a.clone(), t })
}

/// Canonical form together with the named shape it matches, if any.
pub fn normalize_bf(sys: &RefinementSystem, phi: &PiecewiseBF) -> (PiecewiseBF, FormTag) {
    let phi = renormalize(sys, phi.clone());
    if phi == PiecewiseBF::identity(sys, phi.mode()) {
        return (phi, FormTag::Identity);
    }
    if phi == PiecewiseBF::constant(sys, sys.p_min(), phi.mode()) {
        return (phi, FormTag::Minimal);
    }
    let (ran, drop) = range_and_drop(sys, &phi);
    let rd = drop.rd_points(sys).unwrap_or_default();
    let ran = ran.points(sys).unwrap_or_default();
    let tag = match_phi_at(sys, &phi, &ran)
        .or_else(|| match_phi_ab(sys, &phi, &rd))
        .or_else(|| match_psi(sys, &phi, &rd))
        .unwrap_or(FormTag::Other);
    (phi, tag)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeetClass {
    IdentityForm,
    PhiAB {
        a: Point,
        b: Point,
    },
    PsiPaab {
        pa: Point,
        a: Point,
        b: Point,
    },
    /// `φ = ψ₁ ∧ ψ₂` with neither equal to `φ`.
    Reducible {
        psi1: PiecewiseBF,
        psi2: PiecewiseBF,
    },
}

impl MeetClass {
    pub fn is_irreducible(&self) -> bool {
        !matches!(self, MeetClass::Reducible { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JoinClass {
    MinimalForm,
    PhiAT {
        a: Point,
        t: Point,
    },
    /// `φ = ψ₁ ∨ ψ₂` with neither equal to `φ`.
    Reducible {
        psi1: PiecewiseBF,
        psi2: PiecewiseBF,
    },
}

impl JoinClass {
    pub fn is_irreducible(&self) -> bool {
        !matches!(self, JoinClass::Reducible { .. })
    }
}

fn check_witnesses(
    sys: &RefinementSystem,
    op: LatticeOp,
    phi: &PiecewiseBF,
    psi1: &PiecewiseBF,
    psi2: &PiecewiseBF,
) -> Result<(), IrrError> {
    for (name, psi) in [("ψ₁", psi1), ("ψ₂", psi2)] {
        let bad = validate_bf(sys, psi);
        if !bad.is_empty() {
            return Err(IrrError::Witness(format!(
                "{name} is not a boundary function: {bad:?}"
            )));
        }
        if psi == phi {
            return Err(IrrError::Witness(format!("{name} equals φ")));
        }
    }
    if bf_lattice(op, sys, psi1, psi2)? != *phi {
        return Err(IrrError::Witness(format!(
            "{op:?} of the witnesses is not φ"
        )));
    }
    Ok(())
}

/// Two sample values with a gap-free point strictly between them.
fn separated(sys: &RefinementSystem, values: &[Point]) -> Option<Point> {
    let mixed = sys.mixed();
    values.iter().enumerate().find_map(|(i, lo)| {
        values[i + 1..]
            .iter()
            .find_map(|hi| point_between(sys, lo, hi, &mixed))
    })
}

/// Meet classification: identity, `φ_{a,b}`, `ψ_{pa,a,b}`, or a verified
/// splitting `φ = ψ₁ ∧ ψ₂`.
pub fn classify_meet_bf(sys: &RefinementSystem, phi: &PiecewiseBF) -> Result<MeetClass, IrrError> {
    let (phi, tag) = normalize_bf(sys, phi);
    match tag {
        FormTag::Identity => return Ok(MeetClass::IdentityForm),
        FormTag::Minimal => {
            return Ok(MeetClass::PhiAB {
                a: sys.p_min(),
                b: sys.p_max(),
            })
        }
        FormTag::PhiAB { a, b } => return Ok(MeetClass::PhiAB { a, b }),
        FormTag::PsiPaab { pa, a, b } => return Ok(MeetClass::PsiPaab { pa, a, b }),
        _ => {}
    }
    let (_, drop) = range_and_drop(sys, &phi);
    let b = separated(sys, &drop.rd_sample(sys))
        .ok_or_else(|| IrrError::Witness("no two separated drop values".into()))?;
    let eta = shape(sys, phi.mode(), vec![b.clone()], |y| {
        (y > &b).then(|| b.clone())
    });
    let psi1 = bf_lattice(LatticeOp::Join, sys, &phi, &eta)?;
    let t = sup_where_le(sys, &phi, &b).unwrap_or_else(|| sys.p_min());
    let psi2 = tabulate(
        sys,
        phi.mode(),
        phi.breakpoints().into_iter().chain([t.clone()]),
        |y| if y <= &t { phi.eval(sys, y) } else { y.clone() },
        |z| {
            if z <= &t {
                phi.leaf_at(z).clone()
            } else {
                Leaf::Identity
            }
        },
    );
    check_witnesses(sys, LatticeOp::Meet, &phi, &psi1, &psi2)?;
    Ok(MeetClass::Reducible { psi1, psi2 })
}

/// Join classification: minimal, `φ^{a,t}`, or a verified splitting `φ = ψ₁ ∨ ψ₂`.
pub fn classify_join_bf(sys: &RefinementSystem, phi: &PiecewiseBF) -> Result<JoinClass, IrrError> {
    let (phi, tag) = normalize_bf(sys, phi);
    match tag {
        FormTag::Minimal => return Ok(JoinClass::MinimalForm),
        FormTag::PhiAT { a, t } => return Ok(JoinClass::PhiAT { a, t }),
        _ => {}
    }
    let (ran, _) = range_and_drop(sys, &phi);
    let lo = sys.p_min();
    let values: Vec<Point> = ran.sample(sys).into_iter().filter(|v| v != &lo).collect();
    let c = separated(sys, &values)
        .ok_or_else(|| IrrError::Witness("no two separated range values".into()))?;
    let s = sup_where_le(sys, &phi, &c).unwrap_or_else(|| lo.clone());
    let breaks: Vec<Point> = phi
        .breakpoints()
        .into_iter()
        .chain([c.clone(), s])
        .collect();
    let low = |y: &Point| phi.eval(sys, y) <= c;
    let psi1 = tabulate(
        sys,
        phi.mode(),
        breaks.clone(),
        |y| phi.eval(sys, y).min(c.clone()),
        |z| {
            if low(z) {
                phi.leaf_at(z).clone()
            } else {
                Leaf::Const(c.clone())
            }
        },
    );
    let psi2 = tabulate(
        sys,
        phi.mode(),
        breaks,
        |y| if low(y) { lo.clone() } else { phi.eval(sys, y) },
        |z| {
            if low(z) {
                Leaf::Const(lo.clone())
            } else {
                phi.leaf_at(z).clone()
            }
        },
    );
    check_witnesses(sys, LatticeOp::Join, &phi, &psi1, &psi2)?;
    Ok(JoinClass::Reducible { psi1, psi2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealVerdict {
    Irreducible,
    NotIrreducible,
    /// Not one of the shapes the catalog decides.
    NotInCatalog,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetIdealReport {
    pub verdict: IdealVerdict,
    pub boundary: PiecewiseBF,
    pub boundary_class: MeetClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinIdealReport {
    pub verdict: IdealVerdict,
    /// `σ = first ∪ second` with both strictly smaller.
    pub decomposition: Option<(IdealExpr, IdealExpr)>,
}

/// Unwraps one-element unions and intersections.
fn core_node(sigma: &IdealExpr) -> &Node {
    match &sigma.node {
        Node::Union(parts) | Node::Intersection(parts) if parts.len() == 1 => core_node(&parts[0]),
        n => n,
    }
}

/// Meet irreducibility of strips: `σ_{a,b}` fails only off `P` with a gap
/// above `a` and below `b`; `τ_{a,b}` needs `(a, b) ∈ P` and not both gaps.
pub fn classify_meet_ideal(
    sys: &RefinementSystem,
    sigma: &IdealExpr,
) -> Result<MeetIdealReport, IrrError> {
    let boundary = boundary_of(sys, sigma)?;
    let boundary_class = classify_meet_bf(sys, &boundary)?;
    let both_gaps = |a: &Point, b: &Point| a.has_gap_above(sys) && b.has_gap_below(sys);
    let verdict = match (sigma.mode, core_node(sigma)) {
        (Mode::IdealSet, Node::Strip { a, b }) if a <= b => {
            IdealVerdict::from_bool(p_test(a, b) || !both_gaps(a, b))
        }
        (Mode::IdealSet, Node::StripPlus { a, b }) => {
            IdealVerdict::from_bool(p_test(a, b) && !both_gaps(a, b))
        }
        _ => IdealVerdict::NotInCatalog,
    };
    Ok(MeetIdealReport {
        verdict,
        boundary,
        boundary_class,
    })
}

impl IdealVerdict {
    fn from_bool(b: bool) -> Self {
        if b {
            IdealVerdict::Irreducible
        } else {
            IdealVerdict::NotIrreducible
        }
    }
}

/// Pairs on which `lhs` and `rhs` disagree, among `samples` sampled pairs.
fn membership_mismatch(
    sys: &RefinementSystem,
    lhs: &IdealExpr,
    rhs: &IdealExpr,
    samples: usize,
) -> Option<(Point, Point)> {
    let mut sampler = Sampler::for_expr(sys, lhs, 11);
    (0..samples).find_map(|_| {
        let (x, y) = sampler.pair_near(sys, lhs);
        (member(sys, lhs, &x, &y).is_yes() != member(sys, rhs, &x, &y).is_yes()).then_some((x, y))
    })
}

/// Join irreducibility of corners: `σ^{a,t}` splits as
/// `σ^{a,suc t} ∪ σ^{pred a,t}` exactly when `a` has a gap below, `t` a gap
/// above and `(pred a, suc t) ∉ P`.
pub fn classify_join_ideal(
    sys: &RefinementSystem,
    sigma: &IdealExpr,
) -> Result<JoinIdealReport, IrrError> {
    let (verdict, decomposition) = match (sigma.mode, core_node(sigma)) {
        (Mode::IdealSet, Node::Empty) => (IdealVerdict::Irreducible, None),
        (Mode::IdealSet, Node::Corner { a, t }) => {
            let split = match (a.pred(sys), t.suc(sys)) {
                (Some(pa), Some(st)) if !p_test(&pa, &st) => Some((
                    IdealExpr::corner(a.clone(), st),
                    IdealExpr::corner(pa, t.clone()),
                )),
                _ => None,
            };
            match split {
                Some(parts) => (IdealVerdict::NotIrreducible, Some(parts)),
                None => (IdealVerdict::Irreducible, None),
            }
        }
        _ => (IdealVerdict::NotInCatalog, None),
    };
    if let Some((first, second)) = &decomposition {
        let union = IdealExpr::union(vec![first.clone(), second.clone()])
            .map_err(|e| IrrError::Witness(e.to_string()))?;
        if let Some((x, y)) = membership_mismatch(sys, sigma, &union, 200) {
            return Err(IrrError::Witness(format!(
                "decomposition differs at ({}, {})",
                sys.fmt_point(&x),
                sys.fmt_point(&y)
            )));
        }
    }
    Ok(JoinIdealReport {
        verdict,
        decomposition,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Strip,
    StripPlus,
    Corner,
    PhiAB,
    PsiPaab,
    PhiAT,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Strip => "strip",
            FamilyKind::StripPlus => "strip_plus",
            FamilyKind::Corner => "corner",
            FamilyKind::PhiAB => "phi_ab",
            FamilyKind::PsiPaab => "psi_paab",
            FamilyKind::PhiAT => "phi_at",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Ideal(IdealExpr),
    Bf(PiecewiseBF),
}

fn violation_name(v: &BfViolation) -> &'static str {
    match v {
        BfViolation::Property1 { .. } => "Property1",
        BfViolation::Property2a { .. } => "Property2a",
        BfViolation::Property2b { .. } => "Property2b",
        BfViolation::Property2c { .. } => "Property2c",
        BfViolation::Property2d { .. } => "Property2d",
        BfViolation::Property3 { .. } => "Property3",
        BfViolation::Property4 { .. } => "Property4",
        BfViolation::Undecided { .. } => "Undecided",
    }
}

/// Builds a named family member from its two parameters (`(a, b)` or
/// `(a, t)`), checking the family's constraints.
pub fn construct_family(
    sys: &RefinementSystem,
    kind: FamilyKind,
    a: &Point,
    b: &Point,
) -> Result<Family, IrrError> {
    let family = kind.name();
    let need = |ok: bool, clause: &str| {
        if ok {
            Ok(())
        } else {
            Err(constraint(family, clause))
        }
    };
    let out = match kind {
        FamilyKind::Strip => {
            need(a <= b, "a ⪯ b")?;
            Family::Ideal(IdealExpr::strip(a.clone(), b.clone()))
        }
        FamilyKind::StripPlus => {
            need(p_test(a, b), "(a, b) ∈ P")?;
            Family::Ideal(IdealExpr::strip_plus(a.clone(), b.clone()))
        }
        FamilyKind::Corner => {
            need(a > &sys.p_min(), "p_min ≺ a")?;
            need(a <= b, "a ⪯ t")?;
            need(b < &sys.p_max(), "t ≺ p_max")?;
            Family::Ideal(IdealExpr::corner(a.clone(), b.clone()))
        }
        FamilyKind::PhiAB => {
            need(a <= b, "a ⪯ b")?;
            need(!a.has_gap_below(sys), "Property2b: a has a gap below")?;
            Family::Bf(phi_ab(sys, a, b))
        }
        FamilyKind::PsiPaab => {
            need(a < b, "a ≺ b")?;
            need(a.has_gap_below(sys), "a has a gap below")?;
            need(b.has_gap_below(sys), "b has a gap below")?;
            need(p_test(a, b), "(a, b) ∈ P")?;
            Family::Bf(psi_paab(sys, a, b))
        }
        FamilyKind::PhiAT => {
            need(a <= b, "a ⪯ t")?;
            need(b < &sys.p_max(), "t ≺ p_max")?;
            need(!a.has_gap_below(sys), "Property2b: a has a gap below")?;
            Family::Bf(phi_at(sys, a, b))
        }
    };
    if let Family::Bf(phi) = &out {
        if let Some(v) = validate_bf(sys, phi).first() {
            return Err(constraint(family, format!("{}: {v:?}", violation_name(v))));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;

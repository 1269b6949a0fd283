use super::cylinder::{decide_cylinder_level, CylinderCheck};
use super::extract::boundary_of;
use super::{Atoms, BfError, PiecewiseBF};
use crate::ideal::{member, IdealExpr, Mode, Verdict, DEFAULT_DEPTH_CAP};
use crate::order::{point_between, Point, RefinementSystem};
use crate::sample::Sampler;

/// `(φ(y), y) ∈ σ[φ]`.
pub fn in_b_phi(sys: &RefinementSystem, phi: &PiecewiseBF, y: &Point) -> Verdict {
    let c = phi.eval(sys, y);
    if !phi.mode().relates(&c, y) {
        return Verdict::No("(φ(y), y) is outside the ambient relation".into());
    }
    decide_cylinder_level(
        sys,
        phi,
        &c,
        y,
        CylinderCheck::Plain,
        phi.mode() == Mode::IdealSet,
        DEFAULT_DEPTH_CAP,
    )
}

/// `(φ(y), y) ∈ B_φ` with `φ(y)` having a gap below.
pub fn in_l_phi(sys: &RefinementSystem, phi: &PiecewiseBF, y: &Point) -> Verdict {
    if !phi.eval(sys, y).has_gap_below(sys) {
        return Verdict::No("φ(y) has no gap below".into());
    }
    in_b_phi(sys, phi, y)
}

/// The graph subsets `L_φ ⊆ B_φ ⊆ graph(φ)` as predicates on `y`.
#[derive(Debug, Clone)]
pub struct GraphSets<'a> {
    sys: &'a RefinementSystem,
    phi: &'a PiecewiseBF,
}

impl<'a> GraphSets<'a> {
    pub fn new(sys: &'a RefinementSystem, phi: &'a PiecewiseBF) -> Self {
        GraphSets { sys, phi }
    }

    pub fn in_b(&self, y: &Point) -> Verdict {
        in_b_phi(self.sys, self.phi, y)
    }

    pub fn in_l(&self, y: &Point) -> Verdict {
        in_l_phi(self.sys, self.phi, y)
    }

    /// Points of `L_φ` among the breakpoints of `φ`. Any point of `L_φ` is a
    /// gap-below value, which only constant singletons and identity pieces produce.
    pub fn l_points(&self) -> Vec<Point> {
        Atoms::new(self.sys, self.phi.breakpoints())
            .points()
            .iter()
            .filter(|y| self.in_l(y).is_yes())
            .cloned()
            .collect()
    }
}

/// A pair witnessing that `φ` is not the boundary of `sigma`, checked by membership.
fn counterexample(
    sys: &RefinementSystem,
    sigma: &IdealExpr,
    phi: &PiecewiseBF,
    psi: &PiecewiseBF,
) -> Result<(Point, Point, &'static str), BfError> {
    let atoms = Atoms::new(sys, phi.breakpoints().into_iter().chain(psi.breakpoints()));
    let ys = atoms.list().iter().map(|a| Atoms::sample(sys, a));
    for y in ys {
        let (f, g) = (phi.eval(sys, &y), psi.eval(sys, &y));
        if f == g {
            continue;
        }
        if f < g {
            // sigma reaches above φ(y)
            let x = if member(sys, sigma, &g, &y).is_yes() {
                Some(g.clone())
            } else {
                point_between(sys, &f, &g, &y)
            };
            if let Some(x) = x {
                if member(sys, sigma, &x, &y).is_yes() {
                    return Ok((x, y, "in σ but not in σ[φ]"));
                }
            }
        } else {
            if let Some(x) = point_between(sys, &g, &f, &y) {
                if !member(sys, sigma, &x, &y).is_yes() {
                    return Ok((x, y, "in σ(φ) but not in σ"));
                }
            }
            if in_l_phi(sys, phi, &y).is_yes() && !member(sys, sigma, &f, &y).is_yes() {
                return Ok((f, y, "in L_φ but not in σ"));
            }
        }
    }
    Err(BfError::Internal(
        "boundaries differ but no separating pair was found".into(),
    ))
}

/// Whether `φ` is the boundary function of `sigma`, i.e.
/// `σ(φ) ∪ L_φ ⊆ σ ⊆ σ[φ]`. Decided by comparing canonical forms and
/// cross-checked on sampled pairs.
pub fn sandwich_check(
    sys: &RefinementSystem,
    sigma: &IdealExpr,
    phi: &PiecewiseBF,
) -> Result<Verdict, BfError> {
    let psi = boundary_of(sys, sigma)?;
    if psi != *phi {
        let (x, y, what) = counterexample(sys, sigma, phi, &psi)?;
        return Ok(Verdict::No(format!(
            "({}, {}) {what}",
            sys.fmt_point(&x),
            sys.fmt_point(&y)
        )));
    }
    let open = IdealExpr::sigma_open(phi.clone());
    let closed = IdealExpr::sigma_closed(phi.clone());
    let mut sampler = Sampler::for_expr(sys, sigma, 7);
    for _ in 0..300 {
        let (x, y) = sampler.pair_near(sys, sigma);
        let in_sigma = member(sys, sigma, &x, &y);
        let lower = member(sys, &open, &x, &y).is_yes() && in_sigma.is_no();
        let upper = in_sigma.is_yes() && member(sys, &closed, &x, &y).is_no();
        if lower || upper {
            return Err(BfError::Internal(format!(
                "equal boundaries but ({}, {}) breaks the sandwich",
                sys.fmt_point(&x),
                sys.fmt_point(&y)
            )));
        }
    }
    for y in GraphSets::new(sys, phi).l_points() {
        let c = phi.eval(sys, &y);
        if member(sys, sigma, &c, &y).is_no() {
            return Err(BfError::Internal(format!(
                "equal boundaries but L_φ point at {} is missing",
                sys.fmt_point(&y)
            )));
        }
    }
    Ok(Verdict::Yes(None))
}

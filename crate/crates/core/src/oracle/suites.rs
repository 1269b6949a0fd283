//! Named property suites. Each instance draws from its own seed, derived
//! from the run seed and the instance index, so any failure replays alone.

use std::fmt;

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use super::gen::{random_bf, random_bf_leaf, random_ideal_expr, random_module_expr, Gen};
use super::{brute_boundary, build_finite_model, FiniteModel, OracleError};
use crate::boundary::{
    bf_between, bf_equiv, bf_lattice, bf_minus, bf_plus, boundary_of, validate_bf,
    validate_bf_with, Atoms, LatticeOp, PiecewiseBF,
};
use crate::cocycle::{btilde, ctilde, gap_enumeration, order_by_cocycle};
use crate::ideal::{
    close_finite_level, member, validate_ideal_expr_with, IdealExpr, MatrixUnitSet, Mode,
};
use crate::irreducible::{
    classify_join_bf, classify_join_ideal, classify_meet_bf, classify_meet_ideal, phi_ab, phi_at,
    psi_paab, range_and_drop, IdealVerdict, JoinClass, MeetClass, RangeSize,
};
use crate::literal::{print_bf, print_ideal, print_point, print_system};
use crate::order::{cylinder_bounds, p_test, point_between, Point, RefinementSystem, Word};
use crate::sample::Sampler;

pub const SUITE_NAMES: [&str; 16] = [
    "prop1",
    "def-biconditions",
    "prop4_5",
    "prop6",
    "prop7",
    "lemma8",
    "prop9",
    "lemma10",
    "prop11",
    "lemma12",
    "prop13",
    "prop14",
    "prop15",
    "cocycle",
    "oracle-equivalence",
    "module-set-mode",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteViolation {
    pub index: usize,
    pub witness: String,
}

/// Outcome of one suite run. Wall-clock time is left out so reports are
/// byte-identical across runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub system: String,
    pub seed: u64,
    pub budget: usize,
    pub samples: usize,
    pub violations: Vec<SuiteViolation>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} on system {} (seed {}, {} instances, {} samples, {} violations)",
            self.suite,
            if self.passed() { "pass" } else { "FAIL" },
            self.system,
            self.seed,
            self.budget,
            self.samples,
            self.violations.len()
        )?;
        for v in &self.violations {
            write!(f, "\n  #{}: {}", v.index, v.witness)?;
        }
        Ok(())
    }
}

/// Seed of instance `index` in a run seeded with `seed`.
pub fn instance_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn default_budget(name: &str) -> usize {
    match name {
        "prop1" | "def-biconditions" => 100,
        "oracle-equivalence" => 400,
        "cocycle" => 500,
        "lemma12" | "prop11" => 100,
        _ => 50,
    }
}

type Outcome = Result<usize, String>;

struct Ctx<'a> {
    sys: &'a RefinementSystem,
    exhaustive: Vec<MatrixUnitSet>,
}

/// Runs `budget` instances of the named suite.
pub fn run_suite(
    name: &str,
    sys: &RefinementSystem,
    seed: u64,
    budget: usize,
) -> Result<SuiteReport, OracleError> {
    let check = suite_fn(name)?;
    let ctx = Ctx::new(sys, name);
    let mut samples = 0;
    let mut violations = Vec::new();
    for index in 0..budget {
        let mut g = Gen::new(sys, instance_seed(seed, index));
        match check(&ctx, &mut g, index) {
            Ok(n) => samples += n,
            Err(witness) => violations.push(SuiteViolation { index, witness }),
        }
    }
    Ok(SuiteReport {
        suite: name.to_string(),
        system: print_system(sys),
        seed,
        budget,
        samples,
        violations,
    })
}

/// Reruns a single instance.
pub fn replay(
    name: &str,
    sys: &RefinementSystem,
    seed: u64,
    index: usize,
) -> Result<Outcome, OracleError> {
    let check = suite_fn(name)?;
    let ctx = Ctx::new(sys, name);
    let mut g = Gen::new(sys, instance_seed(seed, index));
    Ok(check(&ctx, &mut g, index))
}

type SuiteFn = fn(&Ctx, &mut Gen, usize) -> Outcome;

fn suite_fn(name: &str) -> Result<SuiteFn, OracleError> {
    Ok(match name {
        "prop1" => prop1,
        "def-biconditions" => def_biconditions,
        "prop4_5" => prop4_5,
        "prop6" => prop6,
        "prop7" => prop7,
        "lemma8" => lemma8,
        "prop9" => prop9,
        "lemma10" => lemma10,
        "prop11" => prop11,
        "lemma12" => lemma12,
        "prop13" => prop13,
        "prop14" => prop14,
        "prop15" => prop15,
        "cocycle" => cocycle,
        "oracle-equivalence" => oracle_equivalence,
        "module-set-mode" => module_set_mode,
        other => return Err(OracleError::UnknownSuite(other.to_string())),
    })
}

impl<'a> Ctx<'a> {
    fn new(sys: &'a RefinementSystem, name: &str) -> Self {
        let mut exhaustive = Vec::new();
        if name == "oracle-equivalence" {
            for level in 1..=2 {
                match build_finite_model(sys, level) {
                    Ok(m) if m.pairs().len() <= 12 => exhaustive.extend(m.closed_sets()),
                    _ => break,
                }
            }
        }
        Ctx { sys, exhaustive }
    }

    fn ideal(&self, e: &IdealExpr) -> String {
        print_ideal(self.sys, e)
    }

    fn bf(&self, phi: &PiecewiseBF) -> String {
        print_bf(self.sys, phi)
    }

    fn pt(&self, p: &Point) -> String {
        print_point(self.sys, p)
    }
}

fn boundary(ctx: &Ctx, sigma: &IdealExpr) -> Result<PiecewiseBF, String> {
    boundary_of(ctx.sys, sigma).map_err(|e| format!("boundary of {} failed: {e}", ctx.ideal(sigma)))
}

/// Samples `(w, y)` and checks that `φ(y)` separates members from
/// non-members: `w ≺ φ(y)` related means member, `φ(y) ≺ w` means not.
fn biconditions(ctx: &Ctx, g: &mut Gen, sigma: &IdealExpr, phi: &PiecewiseBF, n: usize) -> Outcome {
    let sys = ctx.sys;
    let mut s = Sampler::for_expr(sys, sigma, g.rng().gen());
    for _ in 0..n {
        let y = s.point(sys);
        let fy = phi.eval(sys, &y);
        let w = match s.rng().gen_range(0..3) {
            0 => s.orbit_point_below(sys, &fy),
            1 => s.orbit_point_above(sys, &fy),
            _ => s.near_in_orbit(sys, &fy, &y),
        };
        let w = Point::splice(sys, &w.prefix(w.preamble().len() + 3), &y);
        let m = member(sys, sigma, &w, &y);
        let bad = if w < fy && sigma.mode.relates(&w, &y) {
            m.is_no()
        } else {
            fy < w && m.is_yes()
        };
        if bad {
            return Err(format!(
                "σ = {}, φ = {}, w = {}, y = {}: {m}",
                ctx.ideal(sigma),
                ctx.bf(phi),
                ctx.pt(&w),
                ctx.pt(&y)
            ));
        }
    }
    Ok(n)
}

fn prop1(ctx: &Ctx, g: &mut Gen, _: usize) -> Outcome {
    let sigma = random_ideal_expr(ctx.sys, g);
    let phi = boundary(ctx, &sigma)?;
    let found = validate_bf_with(ctx.sys, &phi, 500, g.rng().gen());
    if found.is_empty() {
        Ok(500)
    } else {
        Err(format!(
            "σ = {}, φ = {}: {found:?}",
            ctx.ideal(&sigma),
            ctx.bf(&phi)
        ))
    }
}

fn def_biconditions(ctx: &Ctx, g: &mut Gen, _: usize) -> Outcome {
    let sigma = random_ideal_expr(ctx.sys, g);
    let phi = boundary(ctx, &sigma)?;
    biconditions(ctx, g, &sigma, &phi, 100)
}

fn prop4_5(ctx: &Ctx, g: &mut Gen, _: usize) -> Outcome {
    let sys = ctx.sys;
    let sigma = random_ideal_expr(sys, g);
    let phi = boundary(ctx, &sigma)?;
    let open = IdealExpr::sigma_open(phi.clone());
    let closed = IdealExpr::sigma_closed(phi.clone());
    let mut s = Sampler::for_expr(sys, &sigma, g.rng().gen());
    for _ in 0..1000 {
        let (x, y) = s.pair_near(sys, &sigma);
        let inside = member(sys, &sigma, &x, &y);
        if (member(sys, &open, &x, &y).is_yes() && inside.is_no())
            || (inside.is_yes() && member(sys, &closed, &x, &y).is_no())
        {
            return Err(format!(
                "σ = {}, φ = {}: sandwich fails at ({}, {})",
                ctx.ideal(&sigma),
                ctx.bf(&phi),
                ctx.pt(&x),
                ctx.pt(&y)
            ));
        }
    }
    // any ideal between σ(ψ) and σ[ψ] has boundary between ψ⁻ and ψ
    let psi = random_bf(sys, g);
    let tau = random_ideal_expr(sys, g);
    let between = IdealExpr::union(vec![
        IdealExpr::sigma_open(psi.clone()),
        IdealExpr::intersection(vec![IdealExpr::sigma_closed(psi.clone()), tau])
            .expect("same mode"),
    ])
    .expect("same mode");
    let beta = boundary(ctx, &between)?;
    let lower = bf_minus(sys, &psi);
    let meet = |f: &PiecewiseBF, h: &PiecewiseBF| {
        bf_lattice(LatticeOp::Meet, sys, f, h).map_err(|e| e.to_string())
    };
    if meet(&lower, &beta)? != lower || meet(&beta, &psi)? != beta {
        return Err(format!(
            "σ = {}: boundary {} outside [ψ⁻, ψ]",
            ctx.ideal(&between),
            ctx.bf(&beta)
        ));
    }
    Ok(1000)
}

fn prop6(ctx: &Ctx, g: &mut Gen, _: usize) -> Outcome {
    let phi = random_bf(ctx.sys, g);
    let sigma = IdealExpr::sigma_closed(phi.clone());
    if boundary(ctx, &sigma)? != phi {
        return Err(format!("boundary of σ[φ] differs for φ = {}", ctx.bf(&phi)));
    }
    biconditions(ctx, g, &sigma, &phi, 40)
}

fn prop7(ctx: &Ctx, g: &mut Gen, _: usize) -> Outcome {
    let phi = random_bf(ctx.sys, g);
    let minus = bf_minus(ctx.sys, &phi);
    let sigma = IdealExpr::sigma_open(phi.clone());
    if boundary(ctx, &sigma)? != minus {
        return Err(format!(
            "boundary of σ(φ) is not φ⁻ for φ = {}",
            ctx.bf(&phi)
        ));
    }
    biconditions(ctx, g, &sigma, &minus, 40)
}

fn plus(ctx: &Ctx, phi: &PiecewiseBF) -> Result<PiecewiseBF, String> {
    bf_plus(ctx.sys, phi).map_err(|e| format!("φ⁺ of {} failed: {e}", ctx.bf(phi)))
}

fn lemma8(ctx: &Ctx, g: &mut Gen, _: usize) -> Outcome {
    let sys = ctx.sys;
    let phi = random_bf(sys, g);
    let up = plus(ctx, &phi)?;
    let mut checked = 0;
    let points = Atoms::new(sys, phi.breakpoints().into_iter().chain(up.breakpoints()));
    for y in points.points() {
        let (fy, uy) = (phi.eval(sys, y), up.eval(sys, y));
        if fy >= uy {
            continue;
        }
        let mut zs: Vec<Point> = (0..20).map(|_| g.point(sys)).filter(|z| z > y).collect();
        zs.extend(y.suc(sys));
        zs.extend(point_between(sys, y, &sys.p_max(), &sys.mixed()));
        for z in zs {
            checked += 1;
            if uy >= phi.eval(sys, &z) {
                return Err(format!(
                    "φ = {}: φ⁺({}) not below φ({})",
                    ctx.bf(&phi),
                    ctx.pt(y),
                    ctx.pt(&z)
                ));
            }
        }
    }
    Ok(checked)
}

fn prop9(ctx: &Ctx, g: &mut Gen, _: usize) -> Outcome {
    let phi = random_bf(ctx.sys, g);
    let up = plus(ctx, &phi)?;
    let found = validate_bf(ctx.sys, &up);
    if found.is_empty() {
        Ok(1)
    } else {
        Err(format!(
            "φ = {}, φ⁺ = {}: {found:?}",
            ctx.bf(&phi),
            ctx.bf(&up)
        ))
    }
}

fn lemma10(ctx: &Ctx, g: &mut Gen, _: usize) -> Outcome {
    let sys = ctx.sys;
    let phi = random_bf(sys, g);
    let (up, down) = (plus(ctx, &phi)?, bf_minus(sys, &phi));
    if bf_minus(sys, &up) != down {
        return Err(format!("(φ⁺)⁻ ≠ φ⁻ for φ = {}", ctx.bf(&phi)));
    }
    if plus(ctx, &down)? != up {
        return Err(format!("(φ⁻)⁺ ≠ φ⁺ for φ = {}", ctx.bf(&phi)));
    }
    Ok(2)
}

fn prop11(ctx: &Ctx, g: &mut Gen, _: usize) -> Outcome {
    let sys = ctx.sys;
    let phi = random_bf(sys, g);
    let other = random_bf(sys, g);
    let related = match g.rng().gen_range(0..4) {
        0 => plus(ctx, &phi)?,
        1 => bf_minus(sys, &phi),
        2 => phi.clone(),
        _ => bf_lattice(
            LatticeOp::Join,
            sys,
            &bf_minus(sys, &phi),
            &bf_minus(sys, &other),
        )
        .map_err(|e| e.to_string())?,
    };
    for psi in [related, other] {
        let between = bf_between(sys, &phi, &psi).map_err(|e| e.to_string())?;
        if bf_equiv(sys, &phi, &psi) != between {
            return Err(format!(
                "φ = {}, ψ = {}: equivalence and betweenness disagree",
                ctx.bf(&phi),
                ctx.bf(&psi)
            ));
        }
    }
    Ok(2)
}

fn lemma12(ctx: &Ctx, g: &mut Gen, _: usize) -> Outcome {
    let sys = ctx.sys;
    let (sigma, tau) = (random_ideal_expr(sys, g), random_ideal_expr(sys, g));
    let (bs, bt) = (boundary(ctx, &sigma)?, boundary(ctx, &tau)?);
    let mut n = 0;
    for op in [LatticeOp::Join, LatticeOp::Meet] {
        let parts = vec![sigma.clone(), tau.clone()];
        let combined = match op {
            LatticeOp::Join => IdealExpr::union(parts),
            LatticeOp::Meet => IdealExpr::intersection(parts),
        }
        .expect("same mode");
        let want = bf_lattice(op, sys, &bs, &bt).map_err(|e| e.to_string())?;
        if boundary(ctx, &combined)? != want {
            return Err(format!(
                "{op:?} boundary differs for {}",
                ctx.ideal(&combined)
            ));
        }
        n += biconditions(ctx, g, &combined, &want, 50)?;
    }
    Ok(n)
}

fn family_or_random(ctx: &Ctx, g: &mut Gen) -> PiecewiseBF {
    if g.rng().gen_bool(0.6) {
        random_bf_leaf(ctx.sys, g)
    } else {
        random_bf(ctx.sys, g)
    }
}

/// A point with a gap above, a gap below, or neither.
fn grid_point(ctx: &Ctx, g: &mut Gen, kind: usize) -> Point {
    let sys = ctx.sys;
    match kind {
        0 => g
            .gap_below(sys)
            .pred(sys)
            .expect("gap-below points have a predecessor"),
        1 => g.gap_below(sys),
        _ => {
            let p = g.point(sys);
            point_between(sys, &sys.p_min(), &sys.p_max(), &p).unwrap_or(p)
        }
    }
}

fn prop13(ctx: &Ctx, g: &mut Gen, index: usize) -> Outcome {
    let sys = ctx.sys;
    let phi = family_or_random(ctx, g);
    let class = classify_meet_bf(sys, &phi).map_err(|e| format!("φ = {}: {e}", ctx.bf(&phi)))?;
    let ok = match &class {
        MeetClass::IdentityForm => phi == PiecewiseBF::identity(sys, Mode::IdealSet),
        MeetClass::PhiAB { a, b } => !a.has_gap_below(sys) && phi_ab(sys, a, b) == phi,
        MeetClass::PsiPaab { pa, a, b } => {
            a.has_gap_below(sys)
                && b.has_gap_below(sys)
                && p_test(a, b)
                && a.pred(sys).as_ref() == Some(pa)
                && psi_paab(sys, a, b) == phi
        }
        MeetClass::Reducible { psi1, psi2 } => {
            validate_bf(sys, psi1).is_empty()
                && validate_bf(sys, psi2).is_empty()
                && psi1 != &phi
                && psi2 != &phi
                && bf_lattice(LatticeOp::Meet, sys, psi1, psi2).ok().as_ref() == Some(&phi)
        }
    };
    if !ok {
        return Err(format!("φ = {}: uncertified {class:?}", ctx.bf(&phi)));
    }
    // strips over the gap grid: an irreducible ideal has an irreducible boundary
    let (ka, kb) = (index % 3, (index / 3) % 3);
    let a = grid_point(ctx, g, ka);
    let b = if g.rng().gen_bool(0.5) {
        g.sampler().orbit_point_above(sys, &a)
    } else {
        grid_point(ctx, g, kb)
    };
    let (a, b) = (a.clone().min(b.clone()), a.max(b));
    let sigma = if g.rng().gen_bool(0.5) {
        IdealExpr::strip(a, b)
    } else {
        IdealExpr::strip_plus(a, b)
    };
    let report =
        classify_meet_ideal(sys, &sigma).map_err(|e| format!("σ = {}: {e}", ctx.ideal(&sigma)))?;
    if report.verdict == IdealVerdict::Irreducible && !report.boundary_class.is_irreducible() {
        return Err(format!(
            "σ = {}: irreducible with reducible boundary",
            ctx.ideal(&sigma)
        ));
    }
    Ok(2)
}

fn prop14(ctx: &Ctx, g: &mut Gen, _: usize) -> Outcome {
    let sys = ctx.sys;
    let phi = family_or_random(ctx, g);
    let class = classify_join_bf(sys, &phi).map_err(|e| format!("φ = {}: {e}", ctx.bf(&phi)))?;
    let size = range_and_drop(sys, &phi).0.size(sys);
    let ok = match &class {
        JoinClass::MinimalForm => {
            size == RangeSize::One && phi == PiecewiseBF::constant(sys, sys.p_min(), Mode::IdealSet)
        }
        JoinClass::PhiAT { a, t } => {
            size == RangeSize::Two && !a.has_gap_below(sys) && phi_at(sys, a, t) == phi
        }
        JoinClass::Reducible { psi1, psi2 } => {
            size == RangeSize::Many
                && validate_bf(sys, psi1).is_empty()
                && validate_bf(sys, psi2).is_empty()
                && psi1 != &phi
                && psi2 != &phi
                && bf_lattice(LatticeOp::Join, sys, psi1, psi2).ok().as_ref() == Some(&phi)
        }
    };
    if ok {
        Ok(1)
    } else {
        Err(format!("φ = {}: uncertified {class:?}", ctx.bf(&phi)))
    }
}

fn prop15(ctx: &Ctx, g: &mut Gen, index: usize) -> Outcome {
    let sys = ctx.sys;
    let a = grid_point(ctx, g, index % 3);
    let t = grid_point(ctx, g, (index / 3) % 3);
    let (a, t) = (a.clone().min(t.clone()), a.max(t));
    if a.is_min(sys) || t.is_max(sys) {
        return Ok(0);
    }
    let sigma = IdealExpr::corner(a.clone(), t.clone());
    let report =
        classify_join_ideal(sys, &sigma).map_err(|e| format!("σ = {}: {e}", ctx.ideal(&sigma)))?;
    let splits = a.has_gap_below(sys)
        && t.has_gap_above(sys)
        && !p_test(
            &a.pred(sys).expect("gap below"),
            &t.suc(sys).expect("gap above"),
        );
    let want = if splits {
        IdealVerdict::NotIrreducible
    } else {
        IdealVerdict::Irreducible
    };
    if report.verdict != want || report.decomposition.is_some() != splits {
        return Err(format!(
            "σ = {}: verdict {:?}",
            ctx.ideal(&sigma),
            report.verdict
        ));
    }
    if a.has_gap_below(sys) {
        return Ok(1);
    }
    // σ(φ^{a,t}) = σ^{a,t}
    let open = IdealExpr::sigma_open(phi_at(sys, &a, &t));
    let mut s = Sampler::for_expr(sys, &sigma, g.rng().gen());
    for _ in 0..100 {
        let (x, y) = s.pair_near(sys, &sigma);
        if member(sys, &open, &x, &y).is_yes() != member(sys, &sigma, &x, &y).is_yes() {
            return Err(format!(
                "σ(φ^(a,t)) ≠ σ^(a,t) at ({}, {})",
                ctx.pt(&x),
                ctx.pt(&y)
            ));
        }
    }
    Ok(101)
}

fn cocycle(ctx: &Ctx, g: &mut Gen, index: usize) -> Outcome {
    let sys = ctx.sys;
    let mut checks = 0;
    if index == 0 {
        let one = num_rational::BigRational::from_integer(1.into());
        if btilde(sys, &sys.p_max()) != one {
            return Err("b̃(p_max) ≠ 1".into());
        }
        checks += 1;
    }
    let y = g.point(sys);
    let target = g.point(sys);
    let x = g.sampler().near_in_orbit(sys, &target, &y);
    let target = g.point(sys);
    let z = g.sampler().near_in_orbit(sys, &target, &y);
    let fail = |what: &str| {
        Err(format!(
            "{what} at x = {}, y = {}, z = {}",
            ctx.pt(&x),
            ctx.pt(&y),
            ctx.pt(&z)
        ))
    };
    let c = |p: &Point, q: &Point| ctilde(sys, p, q).expect("one orbit");
    if p_test(&x, &y) != (c(&x, &y) >= Zero::zero()) {
        return fail("analyticity");
    }
    if c(&x, &z) != c(&x, &y) + c(&y, &z) {
        return fail("additivity");
    }
    let (lo, hi) = (x.clone().min(y.clone()), x.clone().max(y.clone()));
    let (bl, bh) = (btilde(sys, &lo), btilde(sys, &hi));
    let gap_pair = lo.suc(sys).as_ref() == Some(&hi);
    if bl > bh || (lo != hi && (bl == bh) != gap_pair) {
        return fail("monotone coboundary");
    }
    let e = gap_enumeration(sys);
    let (sl, sh) = (e.s_set(&lo, 20), e.s_set(&hi, 20));
    if !sl.iter().all(|n| sh.contains(n)) {
        return fail("S-monotonicity");
    }
    if x != y && order_by_cocycle(sys, &x, &y).ok() != Some(x.cmp(&y)) {
        return fail("order from cocycle");
    }
    Ok(checks + 5)
}

fn expected_boundary(sys: &RefinementSystem, brute: Option<&Word>, v: &Word, y: &Point) -> Point {
    match brute {
        None => sys.p_min(),
        Some(u) if u == v => y.clone(),
        Some(u) => cylinder_bounds(sys, u).1,
    }
}

fn random_level_set(ctx: &Ctx, g: &mut Gen) -> Result<(FiniteModel, MatrixUnitSet), String> {
    let sys = ctx.sys;
    let level = (1..=3)
        .rev()
        .find(|&n| sys.word_count(n) <= 64)
        .unwrap_or(1);
    let model = build_finite_model(sys, level).map_err(|e| e.to_string())?;
    let gens: Vec<(Word, Word)> = (0..g.rng().gen_range(1..=3))
        .map(|_| {
            let i = g.rng().gen_range(0..model.pairs().len());
            model.pairs()[i].clone()
        })
        .collect();
    let set =
        close_finite_level(sys, level, gens.clone(), Mode::IdealSet).map_err(|e| e.to_string())?;
    if set.pairs() != &model.saturate(&gens) {
        return Err(format!(
            "closure differs from saturation for generators {gens:?}"
        ));
    }
    Ok((model, set))
}

fn oracle_equivalence(ctx: &Ctx, g: &mut Gen, index: usize) -> Outcome {
    let sys = ctx.sys;
    let (model, set) = match ctx.exhaustive.get(index) {
        Some(set) => (
            build_finite_model(sys, set.level()).map_err(|e| e.to_string())?,
            set.clone(),
        ),
        None => random_level_set(ctx, g)?,
    };
    let sigma = IdealExpr::finite(set.clone());
    let phi = boundary(ctx, &sigma)?;
    let mut n = 0;
    let tails = [sys.p_min(), sys.p_max(), sys.mixed(), g.point(sys)];
    for v in model.words() {
        let brute = brute_boundary(&model, &set, v).map_err(|e| e.to_string())?;
        for tail in &tails {
            let y = Point::splice(sys, v, tail);
            n += 1;
            if phi.eval(sys, &y) != expected_boundary(sys, brute.as_ref(), v, &y) {
                return Err(format!(
                    "{}: boundary at {} disagrees with brute force",
                    ctx.ideal(&sigma),
                    ctx.pt(&y)
                ));
            }
        }
    }
    for (u, v) in model.pairs().iter().flat_map(|(u, v)| [(u, v), (v, u)]) {
        let tail = &tails[n % tails.len()];
        let (x, y) = (Point::splice(sys, u, tail), Point::splice(sys, v, tail));
        let want = set.contains(u, v) && p_test(&x, &y);
        n += 1;
        if member(sys, &sigma, &x, &y).is_yes() != want {
            return Err(format!(
                "{}: membership of ({}, {}) disagrees",
                ctx.ideal(&sigma),
                ctx.pt(&x),
                ctx.pt(&y)
            ));
        }
    }
    Ok(n)
}

fn module_set_mode(ctx: &Ctx, g: &mut Gen, _: usize) -> Outcome {
    let sys = ctx.sys;
    let sigma = random_module_expr(sys, g);
    let found = validate_ideal_expr_with(sys, &sigma, 100, g.rng().gen());
    if !found.is_empty() {
        return Err(format!("σ = {}: {found:?}", ctx.ideal(&sigma)));
    }
    let phi = boundary(ctx, &sigma)?;
    let found = validate_bf_with(sys, &phi, 100, g.rng().gen());
    if !found.is_empty() {
        return Err(format!(
            "σ = {}, φ = {}: {found:?}",
            ctx.ideal(&sigma),
            ctx.bf(&phi)
        ));
    }
    Ok(200 + biconditions(ctx, g, &sigma, &phi, 50)?)
}

//! Line-oriented scenario files: named values, commands and assertions.
//!
//! ```text
//! # comment
//! system ;2
//! point a = 2|1
//! ideal s = strip(a=a, b=a)
//! bf f = {[|1, |2] -> id}
//! let g = boundary s
//! eval g a => 1|2
//! classify meet ideal s => irreducible
//! ```
//!
//! A trailing `=> value` turns a command into an assertion. Commands:
//! `eval F P`, `member I P P`, `boundary I`, `minus F`, `plus F`,
//! `lattice meet|join F F`, `classify meet|join [ideal] X`, `equiv F F`,
//! `sandwich I`, `probe I I`, `suite NAME|all`, `paper-examples SECTION`.

mod fixtures;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::boundary::{
    bf_equiv, bf_lattice, bf_minus, bf_plus, boundary_of, LatticeOp, PiecewiseBF,
};
use crate::ideal::{member_capped, IdealExpr, Verdict, DEFAULT_DEPTH_CAP};
use crate::irreducible::{
    classify_join_bf, classify_join_ideal, classify_meet_bf, classify_meet_ideal, IdealVerdict,
};
use crate::literal::{
    parse_system, print_bf, print_ideal, print_point, print_system, Names, ParseError, Parser,
};
use crate::oracle::{default_budget, run_suite, SUITE_NAMES};
use crate::order::{Point, RefinementSystem};
use crate::sample::Sampler;

pub use fixtures::{emit_fixture, section_fixtures, FIXTURE_NAMES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("unknown section {0:?}")]
    UnknownSection(String),
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub seed: u64,
    /// Overrides suite budgets and the sample counts of `sandwich` and `probe`.
    pub budget: Option<usize>,
    pub depth_cap: usize,
    /// Used when the scenario has no `system` line.
    pub system: Option<RefinementSystem>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 1,
            budget: None,
            depth_cap: DEFAULT_DEPTH_CAP,
            system: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommandRecord {
    pub line: usize,
    pub command: String,
    pub value: String,
    pub expected: Option<String>,
    pub ok: bool,
}

impl fmt::Display for CommandRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:>4}: {} -> {}", self.line, self.command, self.value)?;
        match (&self.expected, self.ok) {
            (Some(_), true) => write!(f, "  [ok]"),
            (Some(e), false) => write!(f, "  [FAIL: expected {e}]"),
            (None, true) => Ok(()),
            (None, false) => write!(f, "  [FAIL]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioReport {
    pub system: Option<String>,
    pub exit_code: i32,
    pub error: Option<String>,
    pub results: Vec<CommandRecord>,
}

impl ScenarioReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for ScenarioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(f, "{r}")?;
        }
        if let Some(e) = &self.error {
            writeln!(f, "error: {e}")?;
        }
        let failed = self.results.iter().filter(|r| !r.ok).count();
        write!(
            f,
            "{} commands, {failed} failed, exit {}",
            self.results.len(),
            self.exit_code
        )
    }
}

#[derive(Default)]
struct Env {
    points: BTreeMap<String, Point>,
    ideals: BTreeMap<String, IdealExpr>,
    bfs: BTreeMap<String, PiecewiseBF>,
}

impl Env {
    fn taken(&self, name: &str) -> bool {
        self.points.contains_key(name)
            || self.ideals.contains_key(name)
            || self.bfs.contains_key(name)
    }
}

impl Names for Env {
    fn point(&self, name: &str) -> Option<Point> {
        self.points.get(name).cloned()
    }
    fn ideal(&self, name: &str) -> Option<IdealExpr> {
        self.ideals.get(name).cloned()
    }
    fn bf(&self, name: &str) -> Option<PiecewiseBF> {
        self.bfs.get(name).cloned()
    }
}

/// Result of one command before it is compared with an expectation.
enum Value {
    Point(Point),
    Bf(PiecewiseBF),
    /// A keyword such as `yes`, `irreducible` or `holds`.
    Word(String),
    Pairs(Vec<(Point, Point)>),
    /// Self-checking commands: the text and whether the check passed.
    Checked(String, bool),
}

/// Interpreter state: the system, bound names and the records so far.
pub struct Scenario {
    opts: RunOptions,
    sys: Option<RefinementSystem>,
    env: Env,
    records: Vec<CommandRecord>,
}

impl Scenario {
    pub fn new(opts: RunOptions) -> Self {
        Scenario {
            sys: opts.system.clone(),
            opts,
            env: Env::default(),
            records: Vec::new(),
        }
    }

    /// Runs every line; stops at the first input error.
    pub fn run(mut self, text: &str) -> ScenarioReport {
        let mut error = None;
        for (i, raw) in text.lines().enumerate() {
            if let Err(e) = self.line(i + 1, raw) {
                error = Some(e.to_string());
                break;
            }
        }
        let exit_code = if error.is_some() {
            2
        } else if self.records.iter().all(|r| r.ok) {
            0
        } else {
            1
        };
        ScenarioReport {
            system: self.sys.as_ref().map(print_system),
            exit_code,
            error,
            results: self.records,
        }
    }

    fn sys(&self, line: usize) -> Result<&RefinementSystem, ParseError> {
        self.sys.as_ref().ok_or_else(|| ParseError {
            line,
            col: 1,
            message: "no system declared".into(),
        })
    }

    fn line(&mut self, line: usize, raw: &str) -> Result<(), ParseError> {
        let body = raw.split('#').next().unwrap_or("");
        let text = body.trim();
        if text.is_empty() {
            return Ok(());
        }
        let indent = body.len() - body.trim_start().len();
        let (head, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let col = indent + head.len() + 2;
        let err = |message: String| ParseError {
            line,
            col: indent + 1,
            message,
        };
        match head {
            "system" => {
                let sys = parse_system(rest.trim()).map_err(|e| ParseError { line, col, ..e })?;
                if !self.env.taken_any() {
                    self.sys = Some(sys);
                    Ok(())
                } else {
                    Err(err("system must precede all declarations".into()))
                }
            }
            "point" | "ideal" | "bf" => {
                let (name, lit) = self.binding(line, col, rest)?;
                let sys = self.sys(line)?.clone();
                let offset = col + rest.len() - lit.len();
                let mut p = Parser::with_names(&sys, lit, &self.env).at(line, offset);
                match head {
                    "point" => {
                        let v = p.point()?;
                        p.finish()?;
                        self.env.points.insert(name, v);
                    }
                    "ideal" => {
                        let v = p.ideal()?;
                        p.finish()?;
                        self.env.ideals.insert(name, v);
                    }
                    _ => {
                        let v = p.bf()?;
                        p.finish()?;
                        self.env.bfs.insert(name, v);
                    }
                }
                Ok(())
            }
            "let" => {
                let (name, cmd) = self.binding(line, col, rest)?;
                let offset = col + rest.len() - cmd.len();
                match self.command(line, offset, cmd)? {
                    Value::Point(p) => {
                        self.env.points.insert(name, p);
                    }
                    Value::Bf(f) => {
                        self.env.bfs.insert(name, f);
                    }
                    _ => return Err(err("only points and boundary functions can be bound".into())),
                }
                Ok(())
            }
            _ => {
                let (cmd, expected) = match text.split_once("=>") {
                    Some((c, e)) => (c.trim_end(), Some(e.trim())),
                    None => (text, None),
                };
                let value = self.command(line, indent + 1, cmd)?;
                let record = self.record(line, indent + 1 + cmd.len() + 3, cmd, value, expected)?;
                self.records.push(record);
                Ok(())
            }
        }
    }

    /// Splits `NAME = rest`, rejecting reused names.
    fn binding<'t>(
        &self,
        line: usize,
        col: usize,
        rest: &'t str,
    ) -> Result<(String, &'t str), ParseError> {
        let err = |message: String| ParseError { line, col, message };
        let (name, value) = rest
            .split_once('=')
            .ok_or_else(|| err("expected `NAME = ...`".into()))?;
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(err(format!("bad name `{name}`")));
        }
        if self.env.taken(name) {
            return Err(err(format!("name `{name}` already bound")));
        }
        Ok((name.to_string(), value.trim()))
    }

    fn record(
        &self,
        line: usize,
        col: usize,
        cmd: &str,
        value: Value,
        expected: Option<&str>,
    ) -> Result<CommandRecord, ParseError> {
        let (shown, ok) = match &value {
            Value::Point(p) => (print_point(self.sys(line)?, p), true),
            Value::Bf(f) => (print_bf(self.sys(line)?, f), true),
            Value::Word(w) => (w.clone(), true),
            Value::Pairs(ps) => (self.pairs_text(line, ps)?, true),
            Value::Checked(text, ok) => (text.clone(), *ok),
        };
        let ok = match expected {
            None => ok,
            Some(e) => ok && self.matches(line, col, &value, e)?,
        };
        Ok(CommandRecord {
            line,
            command: cmd.to_string(),
            value: shown,
            expected: expected.map(str::to_string),
            ok,
        })
    }

    fn pairs_text(&self, line: usize, ps: &[(Point, Point)]) -> Result<String, ParseError> {
        let sys = self.sys(line)?;
        if ps.is_empty() {
            return Ok("none".into());
        }
        let parts: Vec<String> = ps
            .iter()
            .map(|(x, y)| format!("({}, {})", print_point(sys, x), print_point(sys, y)))
            .collect();
        Ok(parts.join(", "))
    }

    fn matches(
        &self,
        line: usize,
        col: usize,
        value: &Value,
        expected: &str,
    ) -> Result<bool, ParseError> {
        let sys = self.sys(line)?;
        let mut p = Parser::with_names(sys, expected, &self.env).at(line, col);
        let ok = match value {
            Value::Point(v) => {
                let e = p.point()?;
                p.finish()?;
                &e == v
            }
            Value::Bf(v) => {
                let e = p.bf()?;
                p.finish()?;
                &e == v
            }
            Value::Word(w) | Value::Checked(w, _) => w.split_whitespace().next() == Some(expected),
            Value::Pairs(ps) => {
                let mut want = Vec::new();
                if p.keyword() != Some("none") {
                    p = Parser::with_names(sys, expected, &self.env).at(line, col);
                    loop {
                        if !p.eat_token("(") {
                            return Err(p.fail("expected `(`"));
                        }
                        let x = p.point()?;
                        if !p.eat_token(",") {
                            return Err(p.fail("expected `,`"));
                        }
                        let y = p.point()?;
                        if !p.eat_token(")") {
                            return Err(p.fail("expected `)`"));
                        }
                        want.push((x, y));
                        if !p.eat_token(",") {
                            break;
                        }
                    }
                }
                p.finish()?;
                want.sort();
                &want == ps
            }
        };
        Ok(ok)
    }

    fn command(&mut self, line: usize, col: usize, text: &str) -> Result<Value, ParseError> {
        let (head, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let col = col + head.len() + 1;
        match head {
            "suite" => return self.suite(line, col, rest.trim()),
            "paper-examples" => return self.paper_examples(line, col, rest.trim()),
            _ => {}
        }
        let sys = self.sys(line)?.clone();
        let mut p = Parser::with_names(&sys, rest, &self.env).at(line, col);
        let value = match head {
            "eval" => {
                let f = p.bf()?;
                let y = p.point()?;
                Value::Point(f.eval(&sys, &y))
            }
            "member" => {
                let s = p.ideal()?;
                let (x, y) = (p.point()?, p.point()?);
                Value::Word(verdict_word(&member_capped(
                    &sys,
                    &s,
                    &x,
                    &y,
                    self.opts.depth_cap,
                )))
            }
            "boundary" => {
                let s = p.ideal()?;
                match boundary_of(&sys, &s) {
                    Ok(f) => Value::Bf(f),
                    Err(e) => Value::Checked(format!("error: {e}"), false),
                }
            }
            "minus" => Value::Bf(bf_minus(&sys, &p.bf()?)),
            "plus" => match bf_plus(&sys, &p.bf()?) {
                Ok(f) => Value::Bf(f),
                Err(e) => Value::Checked(format!("error: {e}"), false),
            },
            "lattice" => {
                let op = lattice_op(&mut p)?;
                let (f, g) = (p.bf()?, p.bf()?);
                match bf_lattice(op, &sys, &f, &g) {
                    Ok(h) => Value::Bf(h),
                    Err(e) => Value::Checked(format!("error: {e}"), false),
                }
            }
            "classify" => self.classify(&sys, &mut p)?,
            "equiv" => {
                let (f, g) = (p.bf()?, p.bf()?);
                Value::Word(yes_no(bf_equiv(&sys, &f, &g)))
            }
            "sandwich" => {
                let s = p.ideal()?;
                self.sandwich(&sys, &s)
            }
            "probe" => {
                let (s, t) = (p.ideal()?, p.ideal()?);
                self.probe(&sys, &s, &t)
            }
            other => {
                return Err(ParseError {
                    line,
                    col: col - head.len() - 1,
                    message: format!("unknown command `{other}`"),
                })
            }
        };
        p.finish()?;
        Ok(value)
    }

    fn classify(&self, sys: &RefinementSystem, p: &mut Parser) -> Result<Value, ParseError> {
        let op = lattice_op(p)?;
        let ideal = {
            let mut probe = p.clone();
            probe.keyword() == Some("ideal")
        };
        if ideal {
            p.keyword();
            let s = p.ideal()?;
            let verdict = match op {
                LatticeOp::Meet => classify_meet_ideal(sys, &s).map(|r| (r.verdict, String::new())),
                LatticeOp::Join => classify_join_ideal(sys, &s).map(|r| {
                    let detail = r
                        .decomposition
                        .map(|(l, r)| {
                            format!(" = {} ∪ {}", print_ideal(sys, &l), print_ideal(sys, &r))
                        })
                        .unwrap_or_default();
                    (r.verdict, detail)
                }),
            };
            return Ok(match verdict {
                Ok((v, detail)) => Value::Word(format!("{}{detail}", ideal_word(v))),
                Err(e) => Value::Checked(format!("error: {e}"), false),
            });
        }
        let f = p.bf()?;
        let class = match op {
            LatticeOp::Meet => {
                classify_meet_bf(sys, &f).map(|c| (c.is_irreducible(), format!("{c:?}")))
            }
            LatticeOp::Join => {
                classify_join_bf(sys, &f).map(|c| (c.is_irreducible(), format!("{c:?}")))
            }
        };
        Ok(match class {
            Ok((true, _)) => Value::Word("irreducible".into()),
            Ok((false, _)) => Value::Word("reducible (witnesses verified)".into()),
            Err(e) => Value::Checked(format!("error: {e}"), false),
        })
    }

    fn samples(&self, default: usize) -> usize {
        self.opts.budget.unwrap_or(default)
    }

    /// Checks `σ(φ) ⊆ σ ⊆ σ[φ]` on sampled pairs, with `φ` the boundary of `σ`.
    fn sandwich(&self, sys: &RefinementSystem, sigma: &IdealExpr) -> Value {
        let phi = match boundary_of(sys, sigma) {
            Ok(f) => f,
            Err(e) => return Value::Checked(format!("error: {e}"), false),
        };
        let open = IdealExpr::sigma_open(phi.clone());
        let closed = IdealExpr::sigma_closed(phi);
        let cap = self.opts.depth_cap;
        let mut s = Sampler::for_expr(sys, sigma, self.opts.seed);
        let n = self.samples(1000);
        for _ in 0..n {
            let (x, y) = s.pair_near(sys, sigma);
            let inside = member_capped(sys, sigma, &x, &y, cap);
            if (member_capped(sys, &open, &x, &y, cap).is_yes() && inside.is_no())
                || (inside.is_yes() && member_capped(sys, &closed, &x, &y, cap).is_no())
            {
                let at = format!("({}, {})", print_point(sys, &x), print_point(sys, &y));
                return Value::Checked(format!("fails at {at}"), false);
            }
        }
        Value::Checked(format!("holds on {n} pairs"), true)
    }

    /// Sampled pairs, landmark pairs included, where membership differs.
    fn probe(&self, sys: &RefinementSystem, s: &IdealExpr, t: &IdealExpr) -> Value {
        let both = IdealExpr::union(vec![s.clone(), t.clone()]);
        let Ok(both) = both else {
            return Value::Checked("error: mixed modes".into(), false);
        };
        let marks: Vec<Point> = both.landmarks(sys);
        let mut pairs: Vec<(Point, Point)> = marks
            .iter()
            .flat_map(|x| marks.iter().map(move |y| (x.clone(), y.clone())))
            .filter(|(x, y)| x.same_orbit(y) && s.mode.relates(x, y))
            .collect();
        let mut sampler = Sampler::for_expr(sys, &both, self.opts.seed);
        pairs.extend((0..self.samples(500)).map(|_| sampler.pair_near(sys, &both)));
        let cap = self.opts.depth_cap;
        let mut differ: Vec<(Point, Point)> = pairs
            .into_iter()
            .filter(|(x, y)| {
                let (a, b) = (
                    member_capped(sys, s, x, y, cap),
                    member_capped(sys, t, x, y, cap),
                );
                (a.is_yes() && b.is_no()) || (a.is_no() && b.is_yes())
            })
            .collect();
        differ.sort();
        differ.dedup();
        Value::Pairs(differ)
    }

    fn suite(&self, line: usize, col: usize, name: &str) -> Result<Value, ParseError> {
        let sys = self.sys(line)?.clone();
        let names: Vec<&str> = match name {
            "all" => SUITE_NAMES.to_vec(),
            n if SUITE_NAMES.contains(&n) => vec![n],
            n => {
                return Err(ParseError {
                    line,
                    col,
                    message: format!("unknown suite `{n}`"),
                })
            }
        };
        let mut failed = Vec::new();
        let mut samples = 0;
        for n in &names {
            let budget = self.opts.budget.unwrap_or_else(|| default_budget(n));
            let report = run_suite(n, &sys, self.opts.seed, budget).expect("suite names are known");
            samples += report.samples;
            if !report.passed() {
                failed.push(format!("{n} ({} violations)", report.violations.len()));
            }
        }
        Ok(if failed.is_empty() {
            Value::Checked(
                format!("passed {} suites, {samples} samples", names.len()),
                true,
            )
        } else {
            Value::Checked(format!("failed {}", failed.join(", ")), false)
        })
    }

    fn paper_examples(&self, line: usize, col: usize, section: &str) -> Result<Value, ParseError> {
        let names = section_fixtures(section).map_err(|e| ParseError {
            line,
            col,
            message: e.to_string(),
        })?;
        let mut failed = Vec::new();
        for name in &names {
            let text = emit_fixture(name).expect("section fixtures exist");
            let opts = RunOptions {
                system: None,
                ..self.opts.clone()
            };
            if Scenario::new(opts).run(&text).exit_code != 0 {
                failed.push(*name);
            }
        }
        Ok(if failed.is_empty() {
            Value::Checked(format!("passed {} fixtures", names.len()), true)
        } else {
            Value::Checked(format!("failed {}", failed.join(", ")), false)
        })
    }
}

impl Env {
    fn taken_any(&self) -> bool {
        !(self.points.is_empty() && self.ideals.is_empty() && self.bfs.is_empty())
    }
}

fn lattice_op(p: &mut Parser) -> Result<LatticeOp, ParseError> {
    match p.keyword() {
        Some("meet") => Ok(LatticeOp::Meet),
        Some("join") => Ok(LatticeOp::Join),
        _ => Err(p.fail("expected `meet` or `join`")),
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

fn verdict_word(v: &Verdict) -> String {
    match v {
        Verdict::Yes(_) => "yes".into(),
        Verdict::No(_) => "no".into(),
        Verdict::Unknown(d) => format!("unknown (depth {d})"),
    }
}

fn ideal_word(v: IdealVerdict) -> &'static str {
    match v {
        IdealVerdict::Irreducible => "irreducible",
        IdealVerdict::NotIrreducible => "not-irreducible",
        IdealVerdict::NotInCatalog => "not-in-catalog",
    }
}

/// Runs scenario text with the given options.
pub fn run_scenario(text: &str, opts: RunOptions) -> ScenarioReport {
    Scenario::new(opts).run(text)
}

#[cfg(test)]
mod tests;

//! Text syntax for systems, points, words, ideal expressions and boundary
//! functions. Every printer emits text its parser reads back to an equal value.
//!
//! ```text
//! system  := digits ';' digits              e.g. ";2", "2.3;2.3"
//! point   := digits '|' digits              e.g. "21|2", "|1"
//! digits  := d d d ...  |  n.n.n ...        (dots when some k_n > 9)
//! ideal   := empty | full | strip(a=P, b=P) | strip_plus(a=P, b=P)
//!          | corner(a=P, t=P) | finite(level=N, pairs=[(W,W), ...])
//!          | sigma_open(BF) | sigma_closed(BF) | union(I, ...) | intersection(I, ...)
//!          (module sets: a trailing "mode=module" argument, or "full(mode=module)")
//! bf      := '{' piece (';' piece)* '}'     optionally prefixed by "module"
//! piece   := ('[' | '(') P ',' P (']' | ')') '->' (id | id- | const(P))
//! ```
//! Bare identifiers stand for named values when a [`Names`] resolver is given.

use thiserror::Error;

use crate::boundary::{Leaf, Piece, PiecewiseBF};
use crate::ideal::{close_finite_level, IdealExpr, Mode, Node};
use crate::order::{Bound, Digit, OrderInterval, Point, RefinementSystem, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Lookup of named values referenced from literals.
pub trait Names {
    fn point(&self, name: &str) -> Option<Point>;
    fn ideal(&self, name: &str) -> Option<IdealExpr>;
    fn bf(&self, name: &str) -> Option<PiecewiseBF>;
}

struct NoNames;

impl Names for NoNames {
    fn point(&self, _: &str) -> Option<Point> {
        None
    }
    fn ideal(&self, _: &str) -> Option<IdealExpr> {
        None
    }
    fn bf(&self, _: &str) -> Option<PiecewiseBF> {
        None
    }
}

fn dotted(sys: &RefinementSystem) -> bool {
    sys.max_k() > 9
}

fn fmt_digits(digits: &[Digit], dots: bool) -> String {
    let parts: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
    parts.join(if dots { "." } else { "" })
}

pub fn print_system(sys: &RefinementSystem) -> String {
    format!(
        "{};{}",
        fmt_digits(sys.prefix(), true),
        fmt_digits(sys.cycle(), true)
    )
}

pub fn print_point(sys: &RefinementSystem, p: &Point) -> String {
    let dots = dotted(sys);
    format!(
        "{}|{}",
        fmt_digits(p.preamble(), dots),
        fmt_digits(p.period(), dots)
    )
}

pub fn print_word(sys: &RefinementSystem, w: &Word) -> String {
    if w.level() == 0 {
        return "ε".into();
    }
    fmt_digits(w.digits(), dotted(sys))
}

fn mode_suffix(mode: Mode, first: bool) -> &'static str {
    match (mode, first) {
        (Mode::IdealSet, _) => "",
        (Mode::ModuleSet, true) => "mode=module",
        (Mode::ModuleSet, false) => ", mode=module",
    }
}

pub fn print_ideal(sys: &RefinementSystem, e: &IdealExpr) -> String {
    let p = |x: &Point| print_point(sys, x);
    let m = e.mode;
    match &e.node {
        Node::Empty if m == Mode::IdealSet => "empty".into(),
        Node::Full if m == Mode::IdealSet => "full".into(),
        Node::Empty => format!("empty({})", mode_suffix(m, true)),
        Node::Full => format!("full({})", mode_suffix(m, true)),
        Node::Strip { a, b } => format!("strip(a={}, b={}{})", p(a), p(b), mode_suffix(m, false)),
        Node::StripPlus { a, b } => {
            format!(
                "strip_plus(a={}, b={}{})",
                p(a),
                p(b),
                mode_suffix(m, false)
            )
        }
        Node::Corner { a, t } => format!("corner(a={}, t={}{})", p(a), p(t), mode_suffix(m, false)),
        Node::FiniteLevel(set) => {
            let pairs: Vec<String> = set
                .pairs()
                .iter()
                .map(|(u, v)| format!("({},{})", print_word(sys, u), print_word(sys, v)))
                .collect();
            format!(
                "finite(level={}, pairs=[{}]{})",
                set.level(),
                pairs.join(", "),
                mode_suffix(m, false)
            )
        }
        Node::OfBFOpen(phi) => format!("sigma_open({})", print_bf(sys, phi)),
        Node::OfBFClosed(phi) => format!("sigma_closed({})", print_bf(sys, phi)),
        Node::Union(parts) | Node::Intersection(parts) => {
            let name = if matches!(e.node, Node::Union(_)) {
                "union"
            } else {
                "intersection"
            };
            let inner: Vec<String> = parts.iter().map(|x| print_ideal(sys, x)).collect();
            format!("{name}({})", inner.join(", "))
        }
    }
}

pub fn print_leaf(sys: &RefinementSystem, leaf: &Leaf) -> String {
    match leaf {
        Leaf::Identity => "id".into(),
        Leaf::IdentityMinus => "id-".into(),
        Leaf::Const(c) => format!("const({})", print_point(sys, c)),
    }
}

pub fn print_interval(sys: &RefinementSystem, iv: &OrderInterval) -> String {
    format!(
        "{}{}, {}{}",
        if iv.lo.closed { '[' } else { '(' },
        print_point(sys, &iv.lo.point),
        print_point(sys, &iv.hi.point),
        if iv.hi.closed { ']' } else { ')' }
    )
}

pub fn print_bf(sys: &RefinementSystem, phi: &PiecewiseBF) -> String {
    let pieces: Vec<String> = phi
        .pieces()
        .iter()
        .map(|p| {
            format!(
                "{} -> {}",
                print_interval(sys, &p.interval),
                print_leaf(sys, &p.leaf)
            )
        })
        .collect();
    let prefix = if phi.mode() == Mode::ModuleSet {
        "module"
    } else {
        ""
    };
    format!("{prefix}{{{}}}", pieces.join("; "))
}

/// Recursive-descent reader over one literal.
#[derive(Clone)]
pub struct Parser<'a> {
    sys: &'a RefinementSystem,
    src: &'a str,
    pos: usize,
    names: &'a dyn Names,
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    pub fn new(sys: &'a RefinementSystem, src: &'a str) -> Self {
        Parser::with_names(sys, src, &NoNames)
    }

    pub fn with_names(sys: &'a RefinementSystem, src: &'a str, names: &'a dyn Names) -> Self {
        Parser {
            sys,
            src,
            pos: 0,
            names,
            line: 1,
            col: 1,
        }
    }

    /// Position reported for the start of `src`, for errors inside larger files.
    pub fn at(mut self, line: usize, col: usize) -> Self {
        self.line = line;
        self.col = col;
        self
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let before = &self.src[..self.pos];
        let line = self.line + before.matches('\n').count();
        let col = match before.rfind('\n') {
            Some(i) => before[i + 1..].chars().count() + 1,
            None => self.col + before.chars().count(),
        };
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        if !rest.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
            return None;
        }
        let mut end = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if &rest[..end] == "id" && rest[end..].starts_with('-') && !rest[end..].starts_with("->") {
            end += 1;
        }
        self.pos += end;
        Some(&rest[..end])
    }

    /// Consumes `token` if it comes next.
    pub fn eat_token(&mut self, token: &str) -> bool {
        self.eat(token)
    }

    /// Consumes the next identifier, if any.
    pub fn keyword(&mut self) -> Option<&'a str> {
        self.ident()
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    /// A parse error at the current position.
    pub fn fail(&self, message: impl Into<String>) -> ParseError {
        self.error(message)
    }

    pub fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn digit_run(&mut self) -> &'a str {
        let rest = self.rest();
        let end = rest
            .find(|c: char| !(c.is_ascii_digit() || c == '.'))
            .unwrap_or(rest.len());
        self.pos += end;
        &rest[..end]
    }

    fn digits(&self, text: &str) -> Result<Vec<Digit>, ParseError> {
        if text.is_empty() {
            return Ok(Vec::new());
        }
        let parts: Vec<&str> = if text.contains('.') || dotted(self.sys) {
            text.split('.').collect()
        } else {
            text.split("").filter(|s| !s.is_empty()).collect()
        };
        parts
            .iter()
            .map(|s| {
                s.parse::<Digit>()
                    .map_err(|_| self.error(format!("bad digit `{s}`")))
            })
            .collect()
    }

    pub fn point(&mut self) -> Result<Point, ParseError> {
        self.skip_ws();
        if let Some(name) = self.ident() {
            return self
                .names
                .point(name)
                .ok_or_else(|| self.error(format!("unknown point `{name}`")));
        }
        let pre = self.digit_run();
        let pre = self.digits(pre)?;
        if !self.rest().starts_with('|') {
            return Err(self.error("expected `|` in point"));
        }
        self.pos += 1;
        let per = self.digit_run();
        let per = self.digits(per)?;
        Point::canonicalize(self.sys, pre, per).map_err(|e| self.error(e.to_string()))
    }

    pub fn word(&mut self) -> Result<Word, ParseError> {
        if self.eat("ε") {
            return Ok(Word::empty());
        }
        self.skip_ws();
        let text = self.digit_run();
        if text.is_empty() {
            return Err(self.error("expected a word"));
        }
        let digits = self.digits(text)?;
        Word::new(self.sys, digits).map_err(|e| self.error(e.to_string()))
    }

    fn usize(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let text = self.digit_run();
        text.parse().map_err(|_| self.error("expected a number"))
    }

    fn mode_arg(&mut self) -> Result<Mode, ParseError> {
        if self.eat("mode") {
            self.expect("=")?;
            return match self.ident() {
                Some("module") => Ok(Mode::ModuleSet),
                Some("ideal") => Ok(Mode::IdealSet),
                _ => Err(self.error("mode must be `ideal` or `module`")),
            };
        }
        Ok(Mode::IdealSet)
    }

    fn named_point(&mut self, key: &str) -> Result<Point, ParseError> {
        self.expect(key)?;
        self.expect("=")?;
        self.point()
    }

    /// Optional `, mode=...` then `)`.
    fn close_with_mode(&mut self) -> Result<Mode, ParseError> {
        let mode = if self.eat(",") {
            self.mode_arg()?
        } else {
            Mode::IdealSet
        };
        self.expect(")")?;
        Ok(mode)
    }

    pub fn ideal(&mut self) -> Result<IdealExpr, ParseError> {
        let start = self.pos;
        let Some(name) = self.ident() else {
            return Err(self.error("expected an ideal expression"));
        };
        let with_mode = |mut e: IdealExpr, mode: Mode| {
            e.mode = mode;
            e
        };
        match name {
            "empty" | "full" => {
                let mode = if self.eat("(") {
                    let m = self.mode_arg()?;
                    self.expect(")")?;
                    m
                } else {
                    Mode::IdealSet
                };
                Ok(if name == "empty" {
                    IdealExpr::empty(mode)
                } else {
                    IdealExpr::full(mode)
                })
            }
            "strip" | "strip_plus" | "corner" => {
                self.expect("(")?;
                let a = self.named_point("a")?;
                self.expect(",")?;
                let second = if name == "corner" { "t" } else { "b" };
                let b = self.named_point(second)?;
                let mode = self.close_with_mode()?;
                let e = match name {
                    "strip" => IdealExpr::strip(a, b),
                    "strip_plus" => IdealExpr::strip_plus(a, b),
                    _ => IdealExpr::corner(a, b),
                };
                Ok(with_mode(e, mode))
            }
            "finite" => {
                self.expect("(")?;
                self.expect("level")?;
                self.expect("=")?;
                let level = self.usize()?;
                self.expect(",")?;
                self.expect("pairs")?;
                self.expect("=")?;
                self.expect("[")?;
                let mut gens = Vec::new();
                if !self.eat("]") {
                    loop {
                        self.expect("(")?;
                        let u = self.word()?;
                        self.expect(",")?;
                        let v = self.word()?;
                        self.expect(")")?;
                        gens.push((u, v));
                        if self.eat("]") {
                            break;
                        }
                        self.expect(",")?;
                    }
                }
                let mode = self.close_with_mode()?;
                close_finite_level(self.sys, level, gens, mode)
                    .map(IdealExpr::finite)
                    .map_err(|e| self.error(e.to_string()))
            }
            "sigma_open" | "sigma_closed" => {
                self.expect("(")?;
                let phi = self.bf()?;
                self.expect(")")?;
                Ok(if name == "sigma_open" {
                    IdealExpr::sigma_open(phi)
                } else {
                    IdealExpr::sigma_closed(phi)
                })
            }
            "union" | "intersection" => {
                self.expect("(")?;
                let mut parts = vec![self.ideal()?];
                while self.eat(",") {
                    parts.push(self.ideal()?);
                }
                self.expect(")")?;
                let out = if name == "union" {
                    IdealExpr::union(parts)
                } else {
                    IdealExpr::intersection(parts)
                };
                out.map_err(|e| self.error(e.to_string()))
            }
            other => self.names.ideal(other).ok_or_else(|| {
                self.pos = start;
                self.error(format!("unknown ideal expression `{other}`"))
            }),
        }
    }

    fn leaf(&mut self) -> Result<Leaf, ParseError> {
        match self.ident() {
            Some("id") => Ok(Leaf::Identity),
            Some("id-") => Ok(Leaf::IdentityMinus),
            Some("const") => {
                self.expect("(")?;
                let c = self.point()?;
                self.expect(")")?;
                Ok(Leaf::Const(c))
            }
            _ => Err(self.error("expected `id`, `id-` or `const(point)`")),
        }
    }

    pub fn bf(&mut self) -> Result<PiecewiseBF, ParseError> {
        let start = self.pos;
        let mode = if self.eat("module") {
            Mode::ModuleSet
        } else {
            Mode::IdealSet
        };
        if !self.eat("{") {
            self.pos = start;
            if let Some(name) = self.ident() {
                return self
                    .names
                    .bf(name)
                    .ok_or_else(|| self.error(format!("unknown boundary function `{name}`")));
            }
            return Err(self.error("expected `{` or a name"));
        }
        let mut pieces = Vec::new();
        loop {
            let lo_closed = if self.eat("[") {
                true
            } else if self.eat("(") {
                false
            } else {
                return Err(self.error("expected `[` or `(`"));
            };
            let lo = self.point()?;
            self.expect(",")?;
            let hi = self.point()?;
            let hi_closed = if self.eat("]") {
                true
            } else if self.eat(")") {
                false
            } else {
                return Err(self.error("expected `]` or `)`"));
            };
            self.expect("->")?;
            let leaf = self.leaf()?;
            let lo = Bound {
                point: lo,
                closed: lo_closed,
            };
            let hi = Bound {
                point: hi,
                closed: hi_closed,
            };
            let interval =
                OrderInterval::new(self.sys, lo, hi).map_err(|e| self.error(e.to_string()))?;
            pieces.push(Piece::new(interval, leaf));
            if self.eat("}") {
                break;
            }
            self.expect(";")?;
        }
        PiecewiseBF::from_pieces(self.sys, pieces, mode).map_err(|e| self.error(e.to_string()))
    }
}

pub fn parse_system(src: &str) -> Result<RefinementSystem, ParseError> {
    let err = |message: String| ParseError {
        line: 1,
        col: 1,
        message,
    };
    let (prefix, cycle) = src
        .trim()
        .split_once(';')
        .ok_or_else(|| err("system literal is `prefix;cycle`".into()))?;
    let nums = |s: &str| -> Result<Vec<Digit>, ParseError> {
        s.split('.')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| err(format!("bad branching number `{t}`")))
            })
            .collect()
    };
    RefinementSystem::new(nums(prefix)?, nums(cycle)?).map_err(|e| err(e.to_string()))
}

fn whole<T>(
    sys: &RefinementSystem,
    src: &str,
    f: impl FnOnce(&mut Parser) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    let mut p = Parser::new(sys, src);
    let out = f(&mut p)?;
    p.finish()?;
    Ok(out)
}

pub fn parse_point(sys: &RefinementSystem, src: &str) -> Result<Point, ParseError> {
    whole(sys, src, |p| p.point())
}

pub fn parse_word(sys: &RefinementSystem, src: &str) -> Result<Word, ParseError> {
    whole(sys, src, |p| p.word())
}

pub fn parse_ideal(sys: &RefinementSystem, src: &str) -> Result<IdealExpr, ParseError> {
    whole(sys, src, |p| p.ideal())
}

pub fn parse_bf(sys: &RefinementSystem, src: &str) -> Result<PiecewiseBF, ParseError> {
    whole(sys, src, |p| p.bf())
}

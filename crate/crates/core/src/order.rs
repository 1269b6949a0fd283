//! Points of the Cantor space `X = Π {1, …, k_n}`, its lexicographic order,
//! the tails-equal orbit relation and the gap structure.
//!
//! Every point handled here is eventually periodic and stored in a canonical
//! `preamble | period` form, so structural equality is point equality.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

pub type Digit = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("digit {digit} at position {position} is outside 1..={bound}")]
    DigitOutOfRange {
        position: usize,
        digit: Digit,
        bound: Digit,
    },
    #[error("period length {len} is not a multiple of the system cycle length {cycle}")]
    MisalignedPeriod { len: usize, cycle: usize },
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("invalid refinement system: {0}")]
    BadSystem(String),
    #[error("order interval is empty")]
    EmptyInterval,
    #[error("words have different levels ({0} vs {1})")]
    LevelMismatch(usize, usize),
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Digit-alphabet sizes `k_1, k_2, …`: a finite prefix followed by a cycle
/// repeated forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RefinementSystem {
    prefix: Vec<Digit>,
    cycle: Vec<Digit>,
}

impl RefinementSystem {
    pub fn new(prefix: Vec<Digit>, cycle: Vec<Digit>) -> Result<Self, OrderError> {
        if cycle.is_empty() {
            return Err(OrderError::BadSystem("cycle must be nonempty".into()));
        }
        if let Some(k) = prefix.iter().chain(cycle.iter()).find(|&&k| k < 2) {
            return Err(OrderError::BadSystem(format!(
                "every digit count must be at least 2, found {k}"
            )));
        }
        Ok(Self { prefix, cycle })
    }

    /// All `k_n = 2`.
    pub fn binary() -> Self {
        Self {
            prefix: vec![],
            cycle: vec![2],
        }
    }

    pub fn prefix(&self) -> &[Digit] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Digit] {
        &self.cycle
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn cycle_len(&self) -> usize {
        self.cycle.len()
    }

    /// Alphabet size at 0-based position `n`.
    pub fn k(&self, n: usize) -> Digit {
        if n < self.prefix.len() {
            self.prefix[n]
        } else {
            self.cycle[(n - self.prefix.len()) % self.cycle.len()]
        }
    }

    pub fn max_k(&self) -> Digit {
        self.prefix
            .iter()
            .chain(self.cycle.iter())
            .copied()
            .max()
            .unwrap_or(2)
    }

    /// Number of level-`n` words, saturating.
    pub fn word_count(&self, level: usize) -> u128 {
        (0..level).fold(1u128, |acc, n| acc.saturating_mul(self.k(n) as u128))
    }

    pub fn p_min(&self) -> Point {
        Point::with_tail(self, &Word::empty(), Tail::Min)
    }

    pub fn p_max(&self) -> Point {
        Point::with_tail(self, &Word::empty(), Tail::Max)
    }

    /// Point whose tail is neither all-min nor all-max (alternating `1, k_n`),
    /// used as an orbit representative without gaps.
    pub fn mixed(&self) -> Point {
        let len = lcm(2, self.cycle_len());
        let start = self.prefix_len();
        Point::build(self, start, len, |n| if n % 2 == 0 { 1 } else { self.k(n) })
    }

    /// Render a point in literal syntax; digits are dot-separated when any
    /// alphabet exceeds 9.
    pub fn fmt_point(&self, p: &Point) -> String {
        let dotted = self.max_k() > 9 || p.digits_iter_all().any(|d| d > 9);
        let join = |ds: &[Digit]| {
            let parts: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
            if dotted {
                parts.join(".")
            } else {
                parts.concat()
            }
        };
        format!("{}|{}", join(&p.preamble), join(&p.period))
    }

    pub fn fmt_word(&self, w: &Word) -> String {
        let parts: Vec<String> = w.0.iter().map(|d| d.to_string()).collect();
        if self.max_k() > 9 {
            parts.join(".")
        } else {
            parts.concat()
        }
    }
}

impl fmt::Display for RefinementSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ds: &[Digit]| {
            ds.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(".")
        };
        write!(f, "{};{}", join(&self.prefix), join(&self.cycle))
    }
}

/// A finite digit word `d_1 … d_N` (stored 0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Digit>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(sys: &RefinementSystem, digits: Vec<Digit>) -> Result<Self, OrderError> {
        for (n, &d) in digits.iter().enumerate() {
            let k = sys.k(n);
            if d < 1 || d > k {
                return Err(OrderError::DigitOutOfRange {
                    position: n + 1,
                    digit: d,
                    bound: k,
                });
            }
        }
        Ok(Word(digits))
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    pub fn push(&self, d: Digit) -> Word {
        let mut v = self.0.clone();
        v.push(d);
        Word(v)
    }

    /// Lexicographic successor among words of the same level.
    pub fn next(&self, sys: &RefinementSystem) -> Option<Word> {
        let mut v = self.0.clone();
        for n in (0..v.len()).rev() {
            if v[n] < sys.k(n) {
                v[n] += 1;
                return Some(Word(v));
            }
            v[n] = 1;
        }
        None
    }

    /// Lexicographic predecessor among words of the same level.
    pub fn prev(&self, sys: &RefinementSystem) -> Option<Word> {
        let mut v = self.0.clone();
        for n in (0..v.len()).rev() {
            if v[n] > 1 {
                v[n] -= 1;
                return Some(Word(v));
            }
            v[n] = sys.k(n);
        }
        None
    }

    /// All words of the given level in lexicographic order.
    pub fn all(sys: &RefinementSystem, level: usize) -> Vec<Word> {
        let mut out = vec![Word(vec![1; level])];
        while let Some(w) = out.last().unwrap().next(sys) {
            out.push(w);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    Min,
    Max,
}

/// An eventually periodic point of `X` in canonical form: the period is
/// primitive among periods whose length is a multiple of the system cycle,
/// and the preamble is as short as possible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    preamble: Vec<Digit>,
    period: Vec<Digit>,
}

impl Point {
    pub fn canonicalize(
        sys: &RefinementSystem,
        preamble: Vec<Digit>,
        period: Vec<Digit>,
    ) -> Result<Point, OrderError> {
        if period.is_empty() {
            return Err(OrderError::EmptyPeriod);
        }
        let c = sys.cycle_len();
        if !period.len().is_multiple_of(c) {
            return Err(OrderError::MisalignedPeriod {
                len: period.len(),
                cycle: c,
            });
        }
        let raw = Point { preamble, period };
        let check_to = raw.preamble.len().max(sys.prefix_len()) + raw.period.len();
        for n in 0..check_to {
            let d = raw.digit(n);
            let k = sys.k(n);
            if d < 1 || d > k {
                return Err(OrderError::DigitOutOfRange {
                    position: n + 1,
                    digit: d,
                    bound: k,
                });
            }
        }
        let Point {
            mut preamble,
            period,
        } = raw;
        let len = period.len();
        let mut best = len;
        for d in (c..len).step_by(c) {
            if len % d == 0 && (0..len).all(|i| period[i] == period[(i + d) % len]) {
                best = d;
                break;
            }
        }
        let mut period: Vec<Digit> = period[..best].to_vec();
        while let Some(&last) = preamble.last() {
            if last != *period.last().unwrap() {
                break;
            }
            preamble.pop();
            period.rotate_right(1);
        }
        Ok(Point { preamble, period })
    }

    /// Build from a digit function: positions `< start` form the preamble,
    /// `start..start+len` the period. Callers guarantee validity.
    pub(crate) fn build(
        sys: &RefinementSystem,
        start: usize,
        len: usize,
        f: impl Fn(usize) -> Digit,
    ) -> Point {
        let preamble = (0..start).map(&f).collect();
        let period = (start..start + len).map(&f).collect();
        Point::canonicalize(sys, preamble, period).expect("internally built point is valid")
    }

    /// `word` followed by the all-min or all-max tail.
    pub fn with_tail(sys: &RefinementSystem, word: &Word, tail: Tail) -> Point {
        let m = word.level();
        let start = m.max(sys.prefix_len());
        Point::build(sys, start, sys.cycle_len(), |n| {
            if n < m {
                word.0[n]
            } else {
                match tail {
                    Tail::Min => 1,
                    Tail::Max => sys.k(n),
                }
            }
        })
    }

    /// `word` followed by the digits of `tail_source` from position `word.level()` on.
    pub fn splice(sys: &RefinementSystem, word: &Word, tail_source: &Point) -> Point {
        let m = word.level();
        let start = m.max(tail_source.preamble.len());
        Point::build(sys, start, tail_source.period.len(), |n| {
            if n < m {
                word.0[n]
            } else {
                tail_source.digit(n)
            }
        })
    }

    pub fn preamble(&self) -> &[Digit] {
        &self.preamble
    }

    pub fn period(&self) -> &[Digit] {
        &self.period
    }

    /// Digit at 0-based position `n`.
    pub fn digit(&self, n: usize) -> Digit {
        let p = self.preamble.len();
        if n < p {
            self.preamble[n]
        } else {
            self.period[(n - p) % self.period.len()]
        }
    }

    fn digits_iter_all(&self) -> impl Iterator<Item = Digit> + '_ {
        self.preamble.iter().chain(self.period.iter()).copied()
    }

    pub fn prefix(&self, level: usize) -> Word {
        Word((0..level).map(|n| self.digit(n)).collect())
    }

    /// Position after which every digit lies in the repeating part for both
    /// the point and the system.
    pub(crate) fn settled(&self, sys: &RefinementSystem) -> usize {
        self.preamble.len().max(sys.prefix_len())
    }

    /// Number of positions past which any comparison with `other` is decided.
    pub(crate) fn horizon(&self, other: &Point) -> usize {
        self.preamble.len().max(other.preamble.len()) + lcm(self.period.len(), other.period.len())
    }

    /// First position where the two points differ.
    pub fn first_difference(&self, other: &Point) -> Option<usize> {
        (0..self.horizon(other)).find(|&n| self.digit(n) != other.digit(n))
    }

    fn tail_is(&self, sys: &RefinementSystem, tail: Tail) -> bool {
        let s = self.settled(sys);
        (s..s + self.period.len()).all(|n| match tail {
            Tail::Min => self.digit(n) == 1,
            Tail::Max => self.digit(n) == sys.k(n),
        })
    }

    pub fn is_min(&self, sys: &RefinementSystem) -> bool {
        self.tail_is(sys, Tail::Min) && (0..self.settled(sys)).all(|n| self.digit(n) == 1)
    }

    pub fn is_max(&self, sys: &RefinementSystem) -> bool {
        self.tail_is(sys, Tail::Max) && (0..self.settled(sys)).all(|n| self.digit(n) == sys.k(n))
    }

    pub fn has_gap_above(&self, sys: &RefinementSystem) -> bool {
        self.tail_is(sys, Tail::Max) && !self.is_max(sys)
    }

    pub fn has_gap_below(&self, sys: &RefinementSystem) -> bool {
        self.tail_is(sys, Tail::Min) && !self.is_min(sys)
    }

    /// Immediate successor, present exactly when the point has a gap above.
    pub fn suc(&self, sys: &RefinementSystem) -> Option<Point> {
        if !self.has_gap_above(sys) {
            return None;
        }
        let s = self.settled(sys);
        let j = (0..s).rev().find(|&n| self.digit(n) < sys.k(n))?;
        let mut w = self.prefix(j + 1);
        w.0[j] += 1;
        Some(Point::with_tail(sys, &w, Tail::Min))
    }

    /// Immediate predecessor, present exactly when the point has a gap below.
    pub fn pred(&self, sys: &RefinementSystem) -> Option<Point> {
        if !self.has_gap_below(sys) {
            return None;
        }
        let s = self.settled(sys);
        let j = (0..s).rev().find(|&n| self.digit(n) > 1)?;
        let mut w = self.prefix(j + 1);
        w.0[j] -= 1;
        Some(Point::with_tail(sys, &w, Tail::Max))
    }

    /// Tails-equal relation `G`.
    pub fn same_orbit(&self, other: &Point) -> bool {
        let s = self.preamble.len().max(other.preamble.len());
        let l = lcm(self.period.len(), other.period.len());
        (s..s + l).all(|n| self.digit(n) == other.digit(n))
    }

    /// Smallest `N` with `x_n = y_n` for every position `n ≥ N` (0-based),
    /// or `None` when the tails never merge.
    pub fn agreement_index(&self, other: &Point) -> Option<usize> {
        if !self.same_orbit(other) {
            return None;
        }
        let s = self.preamble.len().max(other.preamble.len());
        let mut n = s;
        while n > 0 && self.digit(n - 1) == other.digit(n - 1) {
            n -= 1;
        }
        Some(n)
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.first_difference(other) {
            None => Ordering::Equal,
            Some(n) => self.digit(n).cmp(&other.digit(n)),
        }
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn order_compare(x: &Point, y: &Point) -> Ordering {
    x.cmp(y)
}

pub fn orbit_test(x: &Point, y: &Point) -> bool {
    x.same_orbit(y)
}

/// `(x, y) ∈ P`: same orbit and `x ⪯ y`.
pub fn p_test(x: &Point, y: &Point) -> bool {
    x.same_orbit(y) && x <= y
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapProbe {
    pub gap_above: bool,
    pub gap_below: bool,
    pub suc: Option<Point>,
    pub pred: Option<Point>,
}

pub fn gap_probe(sys: &RefinementSystem, x: &Point) -> GapProbe {
    GapProbe {
        gap_above: x.has_gap_above(sys),
        gap_below: x.has_gap_below(sys),
        suc: x.suc(sys),
        pred: x.pred(sys),
    }
}

/// Least and greatest points of the cylinder of `u`.
pub fn cylinder_bounds(sys: &RefinementSystem, u: &Word) -> (Point, Point) {
    (
        Point::with_tail(sys, u, Tail::Min),
        Point::with_tail(sys, u, Tail::Max),
    )
}

/// A cylinder word `w` with `lo ≺ C_w ≺ hi`, if the open interval is nonempty.
fn inner_cylinder(sys: &RefinementSystem, lo: &Point, hi: &Point) -> Option<Word> {
    if lo >= hi {
        return None;
    }
    let bound = lo.horizon(hi) + sys.prefix_len() + 4 * lcm(lo.period.len(), hi.period.len()) + 4;
    for m in 1..=bound {
        if let Some(w) = lo.prefix(m).next(sys) {
            let top = Point::with_tail(sys, &w, Tail::Max);
            if &top < hi {
                return Some(w);
            }
        }
    }
    None
}

/// A point of the orbit of `rep` strictly between `lo` and `hi`. Orbits are
/// dense, so this exists whenever the open interval is nonempty.
pub fn point_between(sys: &RefinementSystem, lo: &Point, hi: &Point, rep: &Point) -> Option<Point> {
    inner_cylinder(sys, lo, hi).map(|w| Point::splice(sys, &w, rep))
}

/// A point with a gap below strictly between `lo` and `hi`.
pub fn gap_below_point_between(sys: &RefinementSystem, lo: &Point, hi: &Point) -> Option<Point> {
    inner_cylinder(sys, lo, hi).map(|w| Point::with_tail(sys, &w, Tail::Min))
}

/// One end of an [`OrderInterval`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bound {
    pub point: Point,
    pub closed: bool,
}

impl Bound {
    pub fn closed(point: Point) -> Self {
        Bound {
            point,
            closed: true,
        }
    }

    pub fn open(point: Point) -> Self {
        Bound {
            point,
            closed: false,
        }
    }
}

/// A nonempty order interval of `X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderInterval {
    pub lo: Bound,
    pub hi: Bound,
}

impl OrderInterval {
    pub fn new(sys: &RefinementSystem, lo: Bound, hi: Bound) -> Result<Self, OrderError> {
        if interval_is_empty(sys, &lo, &hi) {
            return Err(OrderError::EmptyInterval);
        }
        Ok(OrderInterval { lo, hi })
    }

    pub fn full(sys: &RefinementSystem) -> Self {
        OrderInterval {
            lo: Bound::closed(sys.p_min()),
            hi: Bound::closed(sys.p_max()),
        }
    }

    pub fn singleton(p: Point) -> Self {
        OrderInterval {
            lo: Bound::closed(p.clone()),
            hi: Bound::closed(p),
        }
    }

    pub fn contains(&self, y: &Point) -> bool {
        let above = if self.lo.closed {
            &self.lo.point <= y
        } else {
            &self.lo.point < y
        };
        let below = if self.hi.closed {
            y <= &self.hi.point
        } else {
            y < &self.hi.point
        };
        above && below
    }

    pub fn is_singleton(&self) -> bool {
        self.lo.closed && self.hi.closed && self.lo.point == self.hi.point
    }

    /// Least element, if attained.
    pub fn min(&self, sys: &RefinementSystem) -> Option<Point> {
        if self.lo.closed {
            Some(self.lo.point.clone())
        } else {
            self.lo.point.suc(sys)
        }
    }

    /// Greatest element, if attained.
    pub fn max(&self, sys: &RefinementSystem) -> Option<Point> {
        if self.hi.closed {
            Some(self.hi.point.clone())
        } else {
            self.hi.point.pred(sys)
        }
    }

    /// Supremum: the maximum when attained, otherwise the upper endpoint.
    pub fn sup(&self, sys: &RefinementSystem) -> Point {
        self.max(sys).unwrap_or_else(|| self.hi.point.clone())
    }

    /// Infimum: the minimum when attained, otherwise the lower endpoint.
    pub fn inf(&self, sys: &RefinementSystem) -> Point {
        self.min(sys).unwrap_or_else(|| self.lo.point.clone())
    }

    pub fn intersect(
        &self,
        sys: &RefinementSystem,
        other: &OrderInterval,
    ) -> Option<OrderInterval> {
        let lo = match self.lo.point.cmp(&other.lo.point) {
            Ordering::Greater => self.lo.clone(),
            Ordering::Less => other.lo.clone(),
            Ordering::Equal => Bound {
                point: self.lo.point.clone(),
                closed: self.lo.closed && other.lo.closed,
            },
        };
        let hi = match self.hi.point.cmp(&other.hi.point) {
            Ordering::Less => self.hi.clone(),
            Ordering::Greater => other.hi.clone(),
            Ordering::Equal => Bound {
                point: self.hi.point.clone(),
                closed: self.hi.closed && other.hi.closed,
            },
        };
        OrderInterval::new(sys, lo, hi).ok()
    }
}

pub(crate) fn interval_is_empty(sys: &RefinementSystem, lo: &Bound, hi: &Bound) -> bool {
    match lo.point.cmp(&hi.point) {
        Ordering::Greater => true,
        Ordering::Equal => !(lo.closed && hi.closed),
        Ordering::Less => !lo.closed && !hi.closed && lo.point.suc(sys).as_ref() == Some(&hi.point),
    }
}

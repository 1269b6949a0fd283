//! Exact coboundary cocycles on a refinement system.
//!
//! `b̃(x) = Σ (x_n − 1) / (k_1 ⋯ k_n)` has a closed form for eventually
//! periodic points (finite sum plus a geometric tail). The injective 0-cocycle
//! `b = b̃ + Σ_{n ∈ S(x)} 2^{-n}` is generally irrational and is exposed only
//! through interval refinement.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::order::{Point, RefinementSystem, Tail, Word};

pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CocycleError {
    #[error("points are not in the same orbit")]
    NotInOrbit,
    #[error("points are equal")]
    EqualPoints,
    #[error("point has no gap above")]
    NoGapAbove,
    #[error("gap index must be at least 1")]
    BadIndex,
    #[error("precision must be positive")]
    NonPositiveEps,
    #[error("refinement did not separate the points by depth {0}")]
    DepthExceeded(usize),
}

/// Closed rational interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInterval {
    pub lo: ExactRational,
    pub hi: ExactRational,
}

impl RationalInterval {
    pub fn width(&self) -> ExactRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &ExactRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            fmt_rational(&self.lo),
            fmt_rational(&self.hi)
        )
    }
}

/// Always `p/q`, including integers.
pub fn fmt_rational(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn ratio(n: u64, d: &BigInt) -> ExactRational {
    BigRational::new(BigInt::from(n), d.clone())
}

pub fn btilde(sys: &RefinementSystem, x: &Point) -> ExactRational {
    let start = x.settled(sys);
    let len = x.period().len();
    let mut denom = BigInt::one();
    let mut head = ExactRational::zero();
    for n in 0..start {
        denom *= sys.k(n);
        head += ratio((x.digit(n) - 1) as u64, &denom);
    }
    // one period block, scaled relative to the denominator reached so far
    let base = denom.clone();
    let mut block = ExactRational::zero();
    for n in start..start + len {
        denom *= sys.k(n);
        block += ratio((x.digit(n) - 1) as u64, &denom);
    }
    let r = BigRational::new(base, denom);
    head + block / (ExactRational::one() - r)
}

/// `c̃(x, y) = Σ (y_n − x_n) / (k_1 ⋯ k_n)`, a finite sum for orbit pairs.
pub fn ctilde(sys: &RefinementSystem, x: &Point, y: &Point) -> Result<ExactRational, CocycleError> {
    let until = x.agreement_index(y).ok_or(CocycleError::NotInOrbit)?;
    let mut denom = BigInt::one();
    let mut acc = ExactRational::zero();
    for n in 0..until {
        denom *= sys.k(n);
        let diff = y.digit(n) as i64 - x.digit(n) as i64;
        acc += BigRational::new(BigInt::from(diff), denom.clone());
    }
    Ok(acc)
}

/// The canonical enumeration `n ↦ a⁽ⁿ⁾` of points with a gap above, ordered by
/// the length and then lexicographic order of their minimal preamble.
#[derive(Debug, Clone)]
pub struct GapEnumeration<'a> {
    sys: &'a RefinementSystem,
}

impl<'a> GapEnumeration<'a> {
    pub fn new(sys: &'a RefinementSystem) -> Self {
        GapEnumeration { sys }
    }

    /// Number of minimal preambles of length `m`: words whose last digit is not maximal.
    fn count_at(&self, m: usize) -> u128 {
        self.sys.word_count(m - 1) * (self.sys.k(m - 1) as u128 - 1)
    }

    pub fn gap_point(&self, n: u128) -> Result<Point, CocycleError> {
        if n == 0 {
            return Err(CocycleError::BadIndex);
        }
        let mut idx = n - 1;
        let mut m = 1;
        loop {
            let c = self.count_at(m);
            if idx < c {
                break;
            }
            idx -= c;
            m += 1;
        }
        // mixed radix: the last digit ranges over 1..k_m - 1
        let mut digits = vec![0; m];
        let last_radix = self.sys.k(m - 1) as u128 - 1;
        digits[m - 1] = (idx % last_radix) as u32 + 1;
        idx /= last_radix;
        for pos in (0..m - 1).rev() {
            let k = self.sys.k(pos) as u128;
            digits[pos] = (idx % k) as u32 + 1;
            idx /= k;
        }
        Ok(Point::with_tail(self.sys, &Word(digits), Tail::Max))
    }

    pub fn gap_index(&self, a: &Point) -> Result<u128, CocycleError> {
        if !a.has_gap_above(self.sys) {
            return Err(CocycleError::NoGapAbove);
        }
        let settled = a.settled(self.sys);
        let j = (0..settled)
            .rev()
            .find(|&n| a.digit(n) < self.sys.k(n))
            .ok_or(CocycleError::NoGapAbove)?;
        let m = j + 1;
        let mut before: u128 = (1..m).map(|l| self.count_at(l)).sum();
        let mut idx: u128 = 0;
        for pos in 0..m - 1 {
            idx = idx * self.sys.k(pos) as u128 + (a.digit(pos) - 1) as u128;
        }
        idx = idx * (self.sys.k(m - 1) as u128 - 1) + (a.digit(m - 1) - 1) as u128;
        before += idx;
        Ok(before + 1)
    }

    /// `{n ≤ depth : a⁽ⁿ⁾ ≺ x}`.
    pub fn s_set(&self, x: &Point, depth: usize) -> Vec<u128> {
        (1..=depth as u128)
            .filter(|&n| &self.gap_point(n).expect("n ≥ 1") < x)
            .collect()
    }
}

pub fn gap_enumeration(sys: &RefinementSystem) -> GapEnumeration<'_> {
    GapEnumeration::new(sys)
}

fn pow2_inv(n: usize) -> ExactRational {
    BigRational::new(BigInt::one(), BigInt::one() << n)
}

fn b_interval_at_depth(sys: &RefinementSystem, x: &Point, depth: usize) -> RationalInterval {
    let base = btilde(sys, x);
    if x.is_min(sys) {
        return RationalInterval {
            lo: base.clone(),
            hi: base,
        };
    }
    let enumeration = GapEnumeration::new(sys);
    let mut lo = base;
    for n in enumeration.s_set(x, depth) {
        lo += pow2_inv(n as usize);
    }
    let hi = &lo + pow2_inv(depth);
    RationalInterval { lo, hi }
}

/// Interval of width at most `eps` containing `b(x)`.
pub fn b_approx(
    sys: &RefinementSystem,
    x: &Point,
    eps: &ExactRational,
) -> Result<RationalInterval, CocycleError> {
    if eps <= &ExactRational::zero() {
        return Err(CocycleError::NonPositiveEps);
    }
    let mut depth = 0;
    while pow2_inv(depth) > *eps {
        depth += 1;
    }
    Ok(b_interval_at_depth(sys, x, depth))
}

/// Order of two distinct points read off the injective cocycle `b`.
pub fn order_by_cocycle(
    sys: &RefinementSystem,
    x: &Point,
    y: &Point,
) -> Result<Ordering, CocycleError> {
    if x == y {
        return Err(CocycleError::EqualPoints);
    }
    const MAX_DEPTH: usize = 4096;
    let mut depth = 1;
    while depth <= MAX_DEPTH {
        let bx = b_interval_at_depth(sys, x, depth);
        let by = b_interval_at_depth(sys, y, depth);
        if bx.hi < by.lo {
            return Ok(Ordering::Less);
        }
        if by.hi < bx.lo {
            return Ok(Ordering::Greater);
        }
        depth *= 2;
    }
    Err(CocycleError::DepthExceeded(MAX_DEPTH))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Digit;

    fn bin() -> RefinementSystem {
        RefinementSystem::binary()
    }

    fn pt(pre: &[Digit], per: &[Digit]) -> Point {
        Point::canonicalize(&bin(), pre.to_vec(), per.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> ExactRational {
        BigRational::new(n.into(), d.into())
    }

    /// Partial sum of the defining series to `terms` positions.
    fn series(sys: &RefinementSystem, x: &Point, terms: usize) -> ExactRational {
        let mut denom = BigInt::one();
        let mut acc = ExactRational::zero();
        for n in 0..terms {
            denom *= sys.k(n);
            acc += BigRational::new(BigInt::from(x.digit(n) - 1), denom.clone());
        }
        acc
    }

    #[test]
    fn btilde_examples() {
        let sys = bin();
        assert_eq!(btilde(&sys, &pt(&[], &[1])), q(0, 1));
        assert_eq!(btilde(&sys, &pt(&[], &[2])), q(1, 1));
        assert_eq!(btilde(&sys, &pt(&[], &[1, 2])), q(1, 3));
    }

    #[test]
    fn btilde_matches_series() {
        let sys = RefinementSystem::new(vec![3], vec![2, 3]).unwrap();
        let x = Point::canonicalize(&sys, vec![2, 1], vec![3, 1]).unwrap();
        let exact = btilde(&sys, &x);
        let approx = series(&sys, &x, 60);
        let err = &exact - &approx;
        assert!(err >= ExactRational::zero());
        assert!(err < q(1, 1 << 40));
    }

    #[test]
    fn ctilde_examples() {
        let sys = bin();
        let x = pt(&[1, 1], &[2]);
        let y = pt(&[], &[2]);
        assert_eq!(ctilde(&sys, &x, &y).unwrap(), q(3, 4));
        assert_eq!(ctilde(&sys, &x, &x).unwrap(), q(0, 1));
        assert_eq!(ctilde(&sys, &y, &x).unwrap(), q(-3, 4));
        assert_eq!(
            ctilde(&sys, &pt(&[], &[1]), &pt(&[], &[2])),
            Err(CocycleError::NotInOrbit)
        );
    }

    #[test]
    fn enumeration_examples() {
        let sys = bin();
        let e = gap_enumeration(&sys);
        assert_eq!(e.gap_point(1).unwrap(), pt(&[1], &[2]));
        assert_eq!(e.gap_point(2).unwrap(), pt(&[1, 1], &[2]));
        assert_eq!(e.gap_point(3).unwrap(), pt(&[2, 1], &[2]));
        assert_eq!(e.gap_index(&pt(&[1], &[2])).unwrap(), 1);
        assert_eq!(
            e.gap_index(&pt(&[], &[1, 2])),
            Err(CocycleError::NoGapAbove)
        );
        assert_eq!(e.gap_point(0), Err(CocycleError::BadIndex));
    }

    #[test]
    fn enumeration_is_a_bijection_on_a_mixed_system() {
        let sys = RefinementSystem::new(vec![3], vec![2, 3]).unwrap();
        let e = gap_enumeration(&sys);
        let mut seen = std::collections::HashSet::new();
        for n in 1..200u128 {
            let a = e.gap_point(n).unwrap();
            assert!(a.has_gap_above(&sys));
            assert_eq!(e.gap_index(&a).unwrap(), n);
            assert!(seen.insert(a));
        }
    }

    #[test]
    fn b_approx_examples() {
        let sys = bin();
        let r = b_approx(&sys, &pt(&[], &[1]), &q(1, 1000)).unwrap();
        assert_eq!((r.lo, r.hi), (q(0, 1), q(0, 1)));
        let r = b_approx(&sys, &pt(&[], &[2]), &q(1, 8)).unwrap();
        assert_eq!((r.lo.clone(), r.hi.clone()), (q(15, 8), q(2, 1)));
        let r = b_approx(&sys, &pt(&[2], &[1]), &q(1, 4)).unwrap();
        assert!(r.width() <= q(1, 4));
        // deeper partial sum, computed term by term, must land inside
        let deep: ExactRational = (1..=30u128)
            .filter(|&n| gap_enumeration(&sys).gap_point(n).unwrap() < pt(&[2], &[1]))
            .map(|n| pow2_inv(n as usize))
            .fold(q(1, 2), |a, b| a + b);
        assert!(r.contains(&deep));
    }

    #[test]
    fn cocycle_ordering() {
        let sys = bin();
        assert_eq!(
            order_by_cocycle(&sys, &pt(&[1], &[2]), &pt(&[2], &[1])),
            Ok(Ordering::Less)
        );
        assert_eq!(btilde(&sys, &pt(&[1], &[2])), btilde(&sys, &pt(&[2], &[1])));
        assert_eq!(
            order_by_cocycle(&sys, &pt(&[], &[1]), &pt(&[], &[2])),
            Ok(Ordering::Less)
        );
        assert_eq!(
            order_by_cocycle(&sys, &pt(&[], &[2, 1]), &pt(&[], &[1, 2])),
            Ok(Ordering::Greater)
        );
        assert_eq!(
            order_by_cocycle(&sys, &pt(&[], &[2]), &pt(&[], &[2])),
            Err(CocycleError::EqualPoints)
        );
    }
}

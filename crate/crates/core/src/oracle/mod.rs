//! Brute-force finite model, deterministic generators and the property suites
//! that cross-check the symbolic engine.

mod gen;
mod suites;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ideal::{MatrixUnitSet, Mode};
use crate::order::{Point, RefinementSystem, Tail, Word};

pub use gen::{random_bf, random_bf_leaf, random_ideal_expr, random_module_expr, Gen};
pub use suites::{
    default_budget, instance_seed, replay, run_suite, SuiteReport, SuiteViolation, SUITE_NAMES,
};

/// Largest word count a finite model may enumerate.
pub const DEFAULT_MODEL_CAP: u128 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("level {level} has {count} words, above the cap {cap}")]
    CapExceeded {
        level: usize,
        count: u128,
        cap: u128,
    },
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("set is at level {set}, model at level {model}")]
    LevelMismatch { set: usize, model: usize },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

/// All level-`N` words in order, with every pair `u ⪯ v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModel {
    level: usize,
    words: Vec<Word>,
    pairs: Vec<(Word, Word)>,
}

impl FiniteModel {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn pairs(&self) -> &[(Word, Word)] {
        &self.pairs
    }

    /// Every subset of the pairs closed under `(u, v) ↦ (u', v')` for
    /// `u' ⪯ u ⪯ v ⪯ v'`. Exponential in the number of pairs.
    pub fn closed_sets(&self) -> Vec<MatrixUnitSet> {
        let n = self.pairs.len();
        assert!(n <= 20, "too many pairs to enumerate subsets");
        (0u32..1 << n)
            .map(|mask| {
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.pairs[i].clone())
                    .collect::<BTreeSet<_>>()
            })
            .filter(|s| self.is_closed(s))
            .map(|s| MatrixUnitSet::new_unchecked(self.level, s, Mode::IdealSet))
            .collect()
    }

    fn is_closed(&self, s: &BTreeSet<(Word, Word)>) -> bool {
        s.iter().all(|(u, v)| {
            self.pairs
                .iter()
                .filter(|(x, y)| x <= u && v <= y)
                .all(|p| s.contains(p))
        })
    }

    /// Saturation of `gens` by the ideal property, computed by fixpoint iteration.
    pub fn saturate(&self, gens: &[(Word, Word)]) -> BTreeSet<(Word, Word)> {
        let mut set: BTreeSet<(Word, Word)> = gens.iter().cloned().collect();
        loop {
            let grown: BTreeSet<(Word, Word)> = self
                .pairs
                .iter()
                .filter(|(x, y)| set.iter().any(|(u, v)| x <= u && v <= y))
                .cloned()
                .chain(set.iter().cloned())
                .collect();
            if grown == set {
                return set;
            }
            set = grown;
        }
    }
}

pub fn build_finite_model(
    sys: &RefinementSystem,
    level: usize,
) -> Result<FiniteModel, OracleError> {
    build_finite_model_capped(sys, level, DEFAULT_MODEL_CAP)
}

pub fn build_finite_model_capped(
    sys: &RefinementSystem,
    level: usize,
    cap: u128,
) -> Result<FiniteModel, OracleError> {
    if level == 0 {
        return Err(OracleError::ZeroLevel);
    }
    let count = sys.word_count(level);
    if count > cap {
        return Err(OracleError::CapExceeded { level, count, cap });
    }
    let words = Word::all(sys, level);
    let pairs = words
        .iter()
        .enumerate()
        .flat_map(|(i, u)| words[i..].iter().map(move |v| (u.clone(), v.clone())))
        .collect();
    Ok(FiniteModel {
        level,
        words,
        pairs,
    })
}

/// `max{u : (u, v) ∈ S}`, or `None` when `v` has no partner.
pub fn brute_boundary(
    model: &FiniteModel,
    set: &MatrixUnitSet,
    v: &Word,
) -> Result<Option<Word>, OracleError> {
    if set.level() != model.level {
        return Err(OracleError::LevelMismatch {
            set: set.level(),
            model: model.level,
        });
    }
    Ok(model
        .words
        .iter()
        .filter(|u| set.contains(u, v))
        .max()
        .cloned())
}

/// A deterministic batch of at least `count` points. Every batch holds
/// `p_min`, `p_max`, a point with a gap above, one with a gap below, and
/// pairs of points sharing a tail.
pub fn sample_points(
    sys: &RefinementSystem,
    seed: u64,
    count: usize,
    max_preamble: usize,
    max_period: usize,
) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = Word(vec![1]);
    let mut out = vec![
        sys.p_min(),
        sys.p_max(),
        Point::with_tail(sys, &first, Tail::Max),
        Point::with_tail(sys, &Word(vec![sys.k(0)]), Tail::Min),
    ];
    while out.len() < count {
        let p = random_point(sys, &mut rng, max_preamble.max(1), max_period.max(1));
        if out.len() + 1 < count {
            let m = rng.gen_range(1..=max_preamble.max(1));
            let w = Word((0..m).map(|n| rng.gen_range(1..=sys.k(n))).collect());
            out.push(Point::splice(sys, &w, &p));
        }
        out.push(p);
    }
    out
}

pub(crate) fn random_point(
    sys: &RefinementSystem,
    rng: &mut ChaCha8Rng,
    max_preamble: usize,
    max_period: usize,
) -> Point {
    let pre = rng.gen_range(0..=max_preamble).max(sys.prefix_len());
    let reps = rng.gen_range(1..=max_period.div_ceil(sys.cycle_len()).max(1));
    let per = reps * sys.cycle_len();
    let digits: Vec<_> = (0..pre + per)
        .map(|n| rng.gen_range(1..=sys.k(n)))
        .collect();
    Point::canonicalize(sys, digits[..pre].to_vec(), digits[pre..].to_vec())
        .expect("digits drawn within bounds")
}

#[cfg(test)]
mod tests;

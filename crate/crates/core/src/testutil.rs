use crate::order::{Digit, Point, RefinementSystem, Word};

pub(crate) fn bin() -> RefinementSystem {
    RefinementSystem::binary()
}

pub(crate) fn pt(pre: &[Digit], per: &[Digit]) -> Point {
    Point::canonicalize(&bin(), pre.to_vec(), per.to_vec()).unwrap()
}

pub(crate) fn w(digits: &[Digit]) -> Word {
    Word(digits.to_vec())
}

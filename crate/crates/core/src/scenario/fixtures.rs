//! Self-checking scenarios for the small worked examples of boundary functions.

use super::ScenarioError;

pub const FIXTURE_NAMES: [&str; 6] = [
    "trivial",
    "full",
    "maximal-gap",
    "maximal-nogap",
    "strip-pair",
    "prime-variant",
];

const TRIVIAL: &str = "\
# the empty ideal set has the constant minimal boundary function
system ;2
ideal s = empty
boundary s => {[|1, |2] -> const(|1)}
let f = boundary s
eval f 21|2 => |1
member s |1 |2 => no
classify join ideal s => irreducible
";

const FULL: &str = "\
# all of P has the identity boundary function
system ;2
ideal s = full
boundary s => {[|1, |2] -> id}
let f = boundary s
eval f 2|1 => 2|1
eval f 1|2 => 1|2
member s 1|2 21|2 => yes
member s 1|2 2|1 => no
";

const MAXIMAL_GAP: &str = "\
# P without (a, a), where a has a gap below: pred a at a, identity elsewhere
system ;2
point a = 2|1
point pa = 1|2
ideal s = strip(a=a, b=a)
let f = boundary s
eval f a => pa
eval f pa => pa
eval f 21|2 => 21|2
eval f 22|1 => 22|1
boundary s => {[|1, 1|2] -> id; [2|1, 2|1] -> const(1|2); (2|1, |2] -> id}
member s a a => no
member s 1|1 a => yes
member s a 22|1 => yes
classify meet ideal s => irreducible
";

const MAXIMAL_NOGAP: &str = "\
# P without (a, a), where a has no gap below: same boundary function as P
system ;2
point a = |12
ideal s = strip(a=a, b=a)
ideal p = full
let f = boundary s
let g = boundary p
boundary s => g
equiv f g => yes
member s a a => no
member p a a => yes
classify meet ideal s => irreducible
";

const STRIP_PAIR: &str = "\
# the strip and the strip with (a, b) added share a boundary function
system ;2
point a = 1|12
point b = 2|12
ideal s = strip(a=a, b=b)
ideal t = strip_plus(a=a, b=b)
let f = boundary s
boundary t => f
eval f a => a
eval f b => a
eval f 12|2 => a
member s a b => no
member t a b => yes
probe s t => (a, b)
sandwich s => holds
sandwich t => holds
";

const PRIME_VARIANT: &str = "\
# off-diagonal strips: equal boundaries, and the hulls differ only at (a, b)
system ;2
point a = 1|12
point b = 2|12
bf identity = {[|1, |2] -> id}
ideal s = intersection(strip(a=a, b=b), sigma_open(identity))
ideal t = intersection(strip_plus(a=a, b=b), sigma_open(identity))
let f = boundary s
boundary t => f
eval f a => a
eval f b => a
eval f 22|1 => 21|2
eval f 2|1 => a
eval f 11|12 => 11|12
minus f => f
member s a b => no
member t a b => yes
probe sigma_closed(f) sigma_open(f) => (a, b)
";

pub fn emit_fixture(name: &str) -> Result<String, ScenarioError> {
    let text = match name {
        "trivial" => TRIVIAL,
        "full" => FULL,
        "maximal-gap" => MAXIMAL_GAP,
        "maximal-nogap" => MAXIMAL_NOGAP,
        "strip-pair" => STRIP_PAIR,
        "prime-variant" => PRIME_VARIANT,
        other => return Err(ScenarioError::UnknownFixture(other.to_string())),
    };
    Ok(text.to_string())
}

/// Fixture names grouped the way `paper-examples` accepts them.
pub fn section_fixtures(section: &str) -> Result<Vec<&'static str>, ScenarioError> {
    match section {
        "section2" => Ok(vec!["strip-pair"]),
        "section3" => Ok(vec![
            "trivial",
            "full",
            "maximal-gap",
            "maximal-nogap",
            "prime-variant",
        ]),
        "all" => Ok(FIXTURE_NAMES.to_vec()),
        other => Err(ScenarioError::UnknownSection(other.to_string())),
    }
}

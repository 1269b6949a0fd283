//! Runs every acceptance criterion and prints one pass/fail line each.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use limitideal::boundary::boundary_of;
use limitideal::cocycle::btilde;
use limitideal::ideal::{member, IdealExpr};
use limitideal::irreducible::{classify_join_ideal, IdealVerdict};
use limitideal::literal::{parse_point, parse_system};
use limitideal::oracle::{brute_boundary, build_finite_model, run_suite, SUITE_NAMES};
use limitideal::order::{cylinder_bounds, Point, RefinementSystem};
use limitideal::sample::Sampler;
use limitideal::scenario::{emit_fixture, run_scenario, RunOptions, FIXTURE_NAMES};
use num_rational::BigRational;

const SEED: u64 = 7;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn suite(name: &str, sys: &RefinementSystem, budget: usize) -> Check {
    let report = run_suite(name, sys, SEED, budget).map_err(|e| e.to_string())?;
    if report.passed() {
        Ok(format!(
            "{name} {} instances, {} samples",
            report.budget, report.samples
        ))
    } else {
        Err(format!("{report}"))
    }
}

fn suites(runs: &[(&str, &RefinementSystem, usize)]) -> Check {
    let done: Result<Vec<String>, String> = runs.iter().map(|(n, s, b)| suite(n, s, *b)).collect();
    Ok(done?.join("; "))
}

fn within(limit: Duration, start: Instant, check: Check) -> Check {
    let elapsed = start.elapsed();
    let detail = check?;
    if elapsed > limit {
        return Err(format!("{detail}, took {elapsed:.2?} (limit {limit:?})"));
    }
    Ok(format!("{detail}, {elapsed:.2?}"))
}

/// Every closed set at levels 1 and 2, compared word by word with brute force.
fn exhaustive_boundaries(sys: &RefinementSystem) -> Check {
    let mut sets = 0;
    let mut checks = 0;
    for level in 1..=2 {
        let model = build_finite_model(sys, level).map_err(|e| e.to_string())?;
        for set in model.closed_sets() {
            sets += 1;
            let phi =
                boundary_of(sys, &IdealExpr::finite(set.clone())).map_err(|e| e.to_string())?;
            for v in model.words() {
                let brute = brute_boundary(&model, &set, v).map_err(|e| e.to_string())?;
                for tail in [sys.p_min(), sys.p_max(), sys.mixed()] {
                    let y = Point::splice(sys, v, &tail);
                    let want = match &brute {
                        None => sys.p_min(),
                        Some(u) if u == v => y.clone(),
                        Some(u) => cylinder_bounds(sys, u).1,
                    };
                    checks += 1;
                    if phi.eval(sys, &y) != want {
                        return Err(format!("level {level}, set {:?}, word {v:?}", set.pairs()));
                    }
                }
            }
        }
    }
    Ok(format!("{sets} closed sets, {checks} words x tails"))
}

/// The corner split is reported and agrees with the corner on sampled pairs.
fn corner_exception(sys: &RefinementSystem) -> Check {
    let p = |s: &str| parse_point(sys, s).map_err(|e| e.to_string());
    let sigma = IdealExpr::corner(p("2|1")?, p("21|2")?);
    let report = classify_join_ideal(sys, &sigma).map_err(|e| e.to_string())?;
    if report.verdict != IdealVerdict::NotIrreducible {
        return Err(format!("verdict {:?}", report.verdict));
    }
    let (l, r) = report.decomposition.ok_or("no decomposition")?;
    // each part misses some pair of the corner among landmark pairs
    let mut marks = IdealExpr::union(vec![l.clone(), r.clone()])
        .map_err(|e| e.to_string())?
        .landmarks(sys);
    marks.extend([sys.p_min(), sys.p_max()]);
    let pairs: Vec<(Point, Point)> = marks
        .iter()
        .flat_map(|x| marks.iter().map(move |y| (x.clone(), y.clone())))
        .filter(|(x, y)| x.same_orbit(y) && x <= y)
        .collect();
    for part in [&l, &r] {
        let missing = pairs
            .iter()
            .any(|(x, y)| member(sys, &sigma, x, y).is_yes() && member(sys, part, x, y).is_no());
        if !missing {
            return Err("a part is not strictly smaller".into());
        }
    }
    let union = IdealExpr::union(vec![l, r]).map_err(|e| e.to_string())?;
    let mut s = Sampler::for_expr(sys, &sigma, SEED);
    let mut decided = 0;
    for _ in 0..500 {
        let (x, y) = s.pair_near(sys, &sigma);
        let (a, b) = (member(sys, &sigma, &x, &y), member(sys, &union, &x, &y));
        if a.is_unknown() || b.is_unknown() {
            continue;
        }
        decided += 1;
        if a.is_yes() != b.is_yes() {
            return Err(format!("membership differs at ({x:?}, {y:?})"));
        }
    }
    Ok(format!("corner split verified on {decided}/500 pairs"))
}

fn cocycle_values(sys: &RefinementSystem) -> Check {
    let one = BigRational::from_integer(1.into());
    let third = BigRational::new(1.into(), 3.into());
    let p = |s: &str| parse_point(sys, s).map_err(|e| e.to_string());
    if btilde(sys, &p("|2")?) != one || btilde(sys, &p("|12")?) != third {
        return Err("b̃ values differ".into());
    }
    Ok("b̃(|2) = 1, b̃(|12) = 1/3".into())
}

fn fixtures() -> Check {
    for name in FIXTURE_NAMES {
        let text = emit_fixture(name).map_err(|e| e.to_string())?;
        let report = run_scenario(
            &text,
            RunOptions {
                seed: SEED,
                ..RunOptions::default()
            },
        );
        if report.exit_code != 0 {
            return Err(format!("{name}:\n{report}"));
        }
    }
    Ok(format!("{} fixtures exit 0", FIXTURE_NAMES.len()))
}

fn determinism(sys: &RefinementSystem) -> Check {
    for name in SUITE_NAMES {
        let run = || {
            run_suite(name, sys, SEED, 4)
                .map(|r| r.to_json())
                .map_err(|e| e.to_string())
        };
        if run()? != run()? {
            return Err(format!("{name} JSON differs between runs"));
        }
    }
    Ok(format!("{} suites byte-identical", SUITE_NAMES.len()))
}

fn main() -> ExitCode {
    let bin = parse_system(";2").expect("binary system");
    let alt = parse_system(";2.3").expect("alternating system");
    let criteria: Vec<Criterion> = vec![
        (
            "oracle equivalence",
            Box::new(|| {
                let start = Instant::now();
                let check = exhaustive_boundaries(&bin)
                    .and_then(|a| Ok(format!("{a}; {}", suite("oracle-equivalence", &bin, 400)?)));
                within(Duration::from_secs(10), start, check)
            }),
        ),
        (
            "boundary properties",
            Box::new(|| {
                let start = Instant::now();
                within(
                    Duration::from_secs(60),
                    start,
                    suites(&[("prop1", &bin, 100), ("prop1", &alt, 100)]),
                )
            }),
        ),
        (
            "sandwich",
            Box::new(|| {
                suites(&[
                    ("prop6", &bin, 50),
                    ("prop7", &bin, 50),
                    ("prop4_5", &bin, 50),
                ])
            }),
        ),
        (
            "minus/plus and equivalence",
            Box::new(|| suites(&[("lemma10", &bin, 50), ("prop11", &bin, 100)])),
        ),
        (
            "union and intersection",
            Box::new(|| suites(&[("lemma12", &bin, 100)])),
        ),
        (
            "irreducibility",
            Box::new(|| {
                let s = suites(&[
                    ("prop13", &bin, 50),
                    ("prop14", &bin, 50),
                    ("prop15", &bin, 50),
                ])?;
                Ok(format!("{s}; {}", corner_exception(&bin)?))
            }),
        ),
        (
            "cocycle",
            Box::new(|| {
                Ok(format!(
                    "{}; {}",
                    suite("cocycle", &bin, 1000)?,
                    cocycle_values(&bin)?
                ))
            }),
        ),
        ("fixtures", Box::new(fixtures)),
        ("determinism", Box::new(|| determinism(&bin))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

#![allow(dead_code)]

use indexmap::IndexMap;
use num_traits::Zero;
use prefswap::format::{parse_instance, OFFICE_EXAMPLE};
use prefswap::model::int;
use prefswap::simplex::find_nonnegative_solution;
use prefswap::{Alternative, Criterion, Engine, Instance, Query, Rational, Statement};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn office() -> Instance {
    parse_instance(OFFICE_EXAMPLE).unwrap()
}

pub fn office_engine() -> Engine {
    Engine::new(&office())
}

pub fn named_query(engine: &Engine, x: &str, y: &str) -> Query {
    let i = engine.instance();
    Query::new(i.resolve_alternative(x).unwrap(), i.resolve_alternative(y).unwrap()).unwrap()
}

pub fn numeric_criteria(n: usize) -> Vec<Criterion> {
    (1..=n).map(|i| Criterion::numeric(format!("c{i}"))).collect()
}

pub fn instance(n: usize, statements: Vec<Statement>) -> Instance {
    Instance::new(numeric_criteria(n), IndexMap::new(), statements).unwrap()
}

/// Statements between random points of a small integer grid, with
/// occasional shared wildcards.
pub fn random_instance(rng: &mut TestRng, n: usize, statements: usize, values: i64) -> Instance {
    let stmts = (0..statements)
        .map(|k| {
            let mut better = Vec::with_capacity(n);
            let mut worse = Vec::with_capacity(n);
            for _ in 0..n {
                if rng.gen_bool(0.2) {
                    better.push(None);
                    worse.push(None);
                } else {
                    better.push(Some(rng.gen_range(0..values)));
                    worse.push(Some(rng.gen_range(0..values)));
                }
            }
            Statement::new(
                format!("p{}", k + 1),
                Alternative::from_partial_ints(&better),
                Alternative::from_partial_ints(&worse),
            )
        })
        .collect();
    instance(n, stmts)
}

/// Binary-scale instance with levels `lo_i < hi_i` per criterion. With
/// `only_swaps`, every statement is an order-2 swap with wildcards
/// elsewhere; otherwise statements use arbitrary level combinations.
pub fn random_binary_instance(
    rng: &mut TestRng,
    n: usize,
    statements: usize,
    only_swaps: bool,
) -> (Instance, Vec<(i64, i64)>) {
    let levels: Vec<(i64, i64)> = (0..n)
        .map(|_| {
            let lo = rng.gen_range(-5..5);
            (lo, lo + rng.gen_range(1..4))
        })
        .collect();
    let stmts = (0..statements)
        .map(|k| {
            let (better, worse): (Vec<Option<i64>>, Vec<Option<i64>>) = if only_swaps {
                let mut ids: Vec<usize> = (0..n).collect();
                ids.shuffle(rng);
                let (gain, loss) = (ids[0], ids[1]);
                (0..n)
                    .map(|i| {
                        if i == gain {
                            (Some(levels[i].1), Some(levels[i].0))
                        } else if i == loss {
                            (Some(levels[i].0), Some(levels[i].1))
                        } else {
                            (None, None)
                        }
                    })
                    .unzip()
            } else {
                (0..n)
                    .map(|i| {
                        let pick = |r: &mut TestRng| if r.gen_bool(0.5) { levels[i].1 } else { levels[i].0 };
                        if rng.gen_bool(0.2) {
                            (None, None)
                        } else {
                            (Some(pick(rng)), Some(pick(rng)))
                        }
                    })
                    .unzip()
            };
            Statement::new(
                format!("p{}", k + 1),
                Alternative::from_partial_ints(&better),
                Alternative::from_partial_ints(&worse),
            )
        })
        .collect();
    (instance(n, stmts), levels)
}

/// A value around the reference levels of criterion `i`: below, on, between
/// or above them.
pub fn value_near(rng: &mut TestRng, engine: &Engine, i: usize) -> Rational {
    let levels = engine.scales().levels(i);
    if levels.is_empty() {
        return int(rng.gen_range(-3..3));
    }
    let half = Rational::new(1.into(), 2.into());
    match rng.gen_range(0..6) {
        0 => &levels[0] - int(1),
        1 => &levels[levels.len() - 1] + int(1),
        2 if levels.len() > 1 => {
            let k = rng.gen_range(0..levels.len() - 1);
            (&levels[k] + &levels[k + 1]) * &half
        }
        2 => &levels[0] + &half,
        _ => levels.choose(rng).unwrap().clone(),
    }
}

pub fn random_query(rng: &mut TestRng, engine: &Engine, on_scale: bool) -> Query {
    let n = engine.instance().n();
    let pick = |rng: &mut TestRng, i: usize| {
        let levels = engine.scales().levels(i);
        if on_scale && !levels.is_empty() {
            levels.choose(rng).unwrap().clone()
        } else {
            value_near(rng, engine, i)
        }
    };
    let x = Alternative::from_values((0..n).map(|i| pick(rng, i)).collect::<Vec<_>>());
    let y = Alternative::from_values((0..n).map(|i| pick(rng, i)).collect::<Vec<_>>());
    Query::new(x, y).unwrap()
}

/// Necessary queries found by rejection sampling.
pub fn necessary_queries(rng: &mut TestRng, engine: &Engine, count: usize, on_scale: bool) -> Vec<Query> {
    let mut out = Vec::new();
    for _ in 0..200 * count {
        if out.len() == count {
            break;
        }
        let q = random_query(rng, engine, on_scale);
        if engine.is_necessary(&q) {
            out.push(q);
        }
    }
    out
}

/// Independent necessity check over the augmented scales
/// `V_i + {x_i, y_i}`: looks for nonnegative increments `w` satisfying every
/// statement with `(x - y) . w <= -1`. Necessary iff there is none.
pub fn augmented_is_necessary(instance: &Instance, q: &Query) -> bool {
    let n = instance.n();
    let mut grids: Vec<Vec<Rational>> = vec![Vec::new(); n];
    for s in instance.statements() {
        for (i, grid) in grids.iter_mut().enumerate() {
            for side in [&s.better, &s.worse] {
                if let Some(v) = side.get(i) {
                    grid.push(v.clone());
                }
            }
        }
    }
    for (i, grid) in grids.iter_mut().enumerate() {
        grid.push(q.x.get(i).unwrap().clone());
        grid.push(q.y.get(i).unwrap().clone());
        grid.sort();
        grid.dedup();
    }
    let offsets: Vec<usize> = grids
        .iter()
        .scan(0, |acc, g| {
            let start = *acc;
            *acc += g.len() - 1;
            Some(start)
        })
        .collect();
    let width: usize = grids.iter().map(|g| g.len() - 1).sum();

    // u(a) - u(b) as a row over increments.
    let difference = |a: &Alternative, b: &Alternative| -> Vec<i64> {
        let mut row = vec![0i64; width];
        for i in 0..n {
            let (Some(av), Some(bv)) = (a.get(i), b.get(i)) else {
                continue;
            };
            let pa = grids[i].iter().position(|v| v == av).unwrap();
            let pb = grids[i].iter().position(|v| v == bv).unwrap();
            for k in pa.min(pb)..pa.max(pb) {
                row[offsets[i] + k] = if pa > pb { 1 } else { -1 };
            }
        }
        row
    };

    // Unknowns: w (width), one surplus per statement, one slack for the target.
    let m = instance.statements().len();
    let cols = width + m + 1;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (k, s) in instance.statements().iter().enumerate() {
        let mut row: Vec<Rational> = difference(&s.better, &s.worse).into_iter().map(int).collect();
        row.resize(cols, Rational::zero());
        row[width + k] = int(-1);
        a.push(row);
        b.push(Rational::zero());
    }
    let mut row: Vec<Rational> = difference(&q.x, &q.y).into_iter().map(int).collect();
    row.resize(cols, Rational::zero());
    row[width + m] = int(1);
    a.push(row);
    b.push(int(-1));
    find_nonnegative_solution(&a, &b).is_none()
}

/// Rounding computed from its definition, independent of the library:
/// per criterion the pair `(rounded x, rounded y)` or `None` for a shared
/// wildcard.
pub fn reference_rounding(levels: &[Rational], x: &Rational, y: &Rational) -> Option<(Rational, Rational)> {
    if x >= y && !levels.iter().any(|v| y <= v && v <= x) {
        return None;
    }
    let down = levels.iter().filter(|v| *v <= x).max().unwrap().clone();
    let up = levels.iter().filter(|v| *v >= y).min().unwrap().clone();
    Some((down, up))
}

/// Slot coefficients of an on-scale pair, from the definition.
pub fn reference_slot_signs(levels: &[Rational], pair: Option<(Rational, Rational)>) -> Vec<i64> {
    levels
        .windows(2)
        .map(|w| match &pair {
            None => 0,
            Some((a, b)) if *a >= w[1] && w[0] >= *b => 1,
            Some((a, b)) if *b >= w[1] && w[0] >= *a => -1,
            _ => 0,
        })
        .collect()
}

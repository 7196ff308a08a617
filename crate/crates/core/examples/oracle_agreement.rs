//! Compares the exact cone test with the bounded integer search and the
//! random falsifier on random small instances.
//!
//! cargo run --release --example oracle_agreement -- 200

use indexmap::IndexMap;
use prefswap::necessity::{falsify_covector, ilp_oracle, ILP_MAX_SLOTS};
use prefswap::{Alternative, Criterion, Engine, Instance, Query, Statement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(0..3)).collect()
}

fn main() -> prefswap::Result<()> {
    let rounds: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut agree_found, mut agree_refuted, mut silent) = (0, 0, 0);
    let mut done = 0;
    while done < rounds {
        let n = rng.gen_range(2..=3);
        let criteria: Vec<Criterion> = (0..n).map(|i| Criterion::numeric(format!("c{i}"))).collect();
        let statements = (0..rng.gen_range(1..=4))
            .map(|k| {
                let (b, w) = (random_point(&mut rng, n), random_point(&mut rng, n));
                Statement::new(format!("p{k}"), Alternative::from_ints(&b), Alternative::from_ints(&w))
            })
            .collect();
        let engine = Engine::new(&Instance::new(criteria, IndexMap::new(), statements)?);
        if engine.index().len() > ILP_MAX_SLOTS {
            continue;
        }
        let (x, y) = (random_point(&mut rng, n), random_point(&mut rng, n));
        let q = Query::new(Alternative::from_ints(&x), Alternative::from_ints(&y))?;
        let Ok(target) = engine.rounded_covector(&q) else {
            continue;
        };
        done += 1;

        let necessary = engine.is_necessary(&q);
        let found = ilp_oracle(&engine.cone_system(target.clone())?, 6)?.is_some();
        let refuted = falsify_covector(engine.statement_covectors(), &target, 10_000, done as u64).is_some();
        assert!(!found || necessary, "integer certificate for a non-necessary query");
        assert!(!refuted || !necessary, "counterexample for a necessary query");
        match (found, refuted) {
            (true, _) => agree_found += 1,
            (_, true) => agree_refuted += 1,
            _ => silent += 1,
        }
    }
    println!("{rounds} queries: {agree_found} certified, {agree_refuted} refuted, {silent} undecided by the oracles");
    Ok(())
}

//! Breadth-first search on the family whose shortest order-2 explanation
//! needs 2p swaps on three criteria.
//!
//! cargo run --release --example worst_case_search -- 5

use std::time::Instant;

use prefswap::explain::{shortest_explanation_search, worst_case_instance, SearchLimits};
use prefswap::Engine;

fn main() -> prefswap::Result<()> {
    let max_p: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    for p in 1..=max_p {
        let (instance, q) = worst_case_instance(p)?;
        let engine = Engine::new(&instance);
        let start = Instant::now();
        let ex = shortest_explanation_search(
            &engine,
            &q,
            SearchLimits {
                max_order: 2,
                budget: 10_000_000,
            },
        )?
        .expect("the family is explainable");
        println!("p = {p}: {} swaps in {:?}", ex.swap_count(), start.elapsed());
        if p == 2 {
            print!("{}", ex.render(&instance));
        }
    }
    Ok(())
}

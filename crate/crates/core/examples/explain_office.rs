//! Matches negative to positive arguments for the office query and renders
//! the four explanations obtained from both policies and both swap orders.
//!
//! cargo run --example explain_office

use prefswap::explain::{find_explanation, render_sequence, RenderPolicy};
use prefswap::format::{parse_instance, OFFICE_EXAMPLE};
use prefswap::{Engine, Query};

fn main() -> prefswap::Result<()> {
    let instance = parse_instance(OFFICE_EXAMPLE)?;
    let engine = Engine::new(&instance);
    let q = Query::new(instance.resolve_alternative("x")?, instance.resolve_alternative("y")?)?;

    let matching = find_explanation(&engine, &q)?.expect("the office query is explainable");
    for &(negative, positive) in matching.pairs() {
        println!(
            "{} >= {}",
            instance.criteria()[positive].name,
            instance.criteria()[negative].name
        );
    }

    for policy in [RenderPolicy::Shortest, RenderPolicy::Reference] {
        for order in [[0, 1], [1, 0]] {
            let ex = render_sequence(&engine, &q, &matching, policy, &order)?;
            println!("\n{policy:?}, {} first:", instance.criteria()[order[0]].name);
            print!("{}", ex.render(&instance));
        }
    }
    Ok(())
}

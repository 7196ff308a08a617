//! Prints the order-2 swap relation between criteria and the reduced
//! necessary-preference graph of the office instance, both as DOT.
//!
//! cargo run --example swap_graphs | dot -Tsvg -O

use prefswap::explain::{delta2_graph, necessary_graph_dot};
use prefswap::format::{parse_instance, OFFICE_EXAMPLE};
use prefswap::Engine;

fn main() -> prefswap::Result<()> {
    let engine = Engine::new(&parse_instance(OFFICE_EXAMPLE)?);
    let swaps = delta2_graph(&engine)?;
    eprintln!(
        "{} swap edges, transitively closed: {}",
        swaps.len(),
        swaps.is_transitively_closed()
    );
    print!("{}", swaps.to_dot(engine.instance()));
    print!("{}", necessary_graph_dot(&engine, true)?);
    Ok(())
}

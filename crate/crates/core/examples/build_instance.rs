//! Builds an instance in code with a label criterion and wildcard
//! statements, then rounds a few off-scale queries onto its scales.
//!
//! cargo run --example build_instance

use indexmap::IndexMap;
use prefswap::format::write_instance;
use prefswap::rounding::round_query;
use prefswap::{Alternative, Criterion, Engine, Instance, Query, Statement};

fn main() -> prefswap::Result<()> {
    let criteria = vec![
        Criterion::numeric("price"),
        Criterion::labels("comfort", ["basic", "standard", "premium"]),
        Criterion::numeric("speed"),
    ];
    let stmt =
        |label: &str, better: [&str; 3], worse: [&str; 3], criteria: &[Criterion]| -> prefswap::Result<Statement> {
            let side = |values: [&str; 3]| -> prefswap::Result<Alternative> {
                let parsed = criteria
                    .iter()
                    .zip(values)
                    .map(|(c, v)| if v == "*" { Ok(None) } else { c.parse_value(v).map(Some) })
                    .collect::<prefswap::Result<Vec<_>>>()?;
                Ok(Alternative::new(parsed))
            };
            Ok(Statement::new(label, side(better)?, side(worse)?))
        };
    let statements = vec![
        stmt(
            "cheap beats comfy",
            ["-100", "basic", "*"],
            ["-300", "premium", "*"],
            &criteria,
        )?,
        stmt(
            "fast beats comfy",
            ["*", "standard", "120"],
            ["*", "premium", "80"],
            &criteria,
        )?,
    ];
    let instance = Instance::new(criteria, IndexMap::new(), statements)?;
    let engine = Engine::new(&instance);
    println!("{}", write_instance(&instance));

    for (x, y) in [
        ("-150,standard,100", "-250,premium,90"),
        ("-90,basic,130", "-300,premium,80"),
        ("-400,premium,80", "-100,basic,80"),
    ] {
        let q = Query::new(instance.resolve_alternative(x)?, instance.resolve_alternative(y)?)?;
        let verdict = if engine.is_necessary(&q) {
            "necessary"
        } else {
            "not necessary"
        };
        match round_query(&q, engine.scales()) {
            Ok(r) => println!(
                "{x} vs {y}: rounded to {} vs {}, {verdict}",
                instance.format_alternative(&r.x_low),
                instance.format_alternative(&r.y_high)
            ),
            Err(e) => println!("{x} vs {y}: {e}, {verdict}"),
        }
    }
    Ok(())
}

//! Decides the office-rental query and prints the certificate behind it.
//!
//! cargo run --example necessity_check

use prefswap::covector::dump;
use prefswap::format::{parse_instance, OFFICE_EXAMPLE};
use prefswap::{Engine, Query};

fn main() -> prefswap::Result<()> {
    let instance = parse_instance(OFFICE_EXAMPLE)?;
    let engine = Engine::new(&instance);

    for (i, c) in instance.criteria().iter().enumerate() {
        let levels: Vec<String> = engine.scales().levels(i).iter().map(|v| c.format_value(v)).collect();
        println!("{:8} {}", c.name, levels.join(" < "));
    }

    for (x, y) in [("x", "y"), ("ABCd", "abcD"), ("e2", "e1")] {
        let q = Query::new(instance.resolve_alternative(x)?, instance.resolve_alternative(y)?)?;
        let decision = engine.decide(&q);
        println!();
        println!(
            "{} >= {} ?",
            instance.format_alternative(&q.x),
            instance.format_alternative(&q.y)
        );
        if let Some(c) = &decision.covector {
            print!("{}", dump(c, &instance, engine.scales(), engine.index()));
        }
        match &decision.certificate {
            Some(cert) => print!("necessary\n{}", engine.render_certificate(cert)),
            None => println!("not necessary"),
        }
    }
    Ok(())
}

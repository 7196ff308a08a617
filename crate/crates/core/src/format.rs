//! JSON instance documents.
//!
//! ```json
//! {
//!   "criteria": [
//!     { "name": "Size", "domain": { "kind": "numeric" } },
//!     { "name": "Gym", "domain": { "kind": "labels", "ascending": ["no gym", "gym"] } }
//!   ],
//!   "alternatives": { "a": [400, "gym"], "b": [200, "*"] },
//!   "statements": [ { "better": "a", "worse": [300, "gym"] } ]
//! }
//! ```
//!
//! Numbers are read from their literal text, so decimals stay exact. Numeric
//! criteria also accept strings of the form `"n/d"`; `"*"` is the wildcard.

use indexmap::IndexMap;
use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};
use crate::model::{Alternative, Criterion, Domain, Instance, Rational, Statement};

/// The office-rental instance used throughout the docs and tests.
pub const OFFICE_EXAMPLE: &str = include_str!("../data/office.json");

fn malformed(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_instance(source: &str) -> Result<Instance> {
    let doc: Value = serde_json::from_str(source).map_err(|e| malformed(e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| malformed("top level must be an object"))?;

    let criteria = obj
        .get("criteria")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("missing `criteria` array"))?
        .iter()
        .map(parse_criterion)
        .collect::<Result<Vec<_>>>()?;

    let mut alternatives = IndexMap::new();
    if let Some(alts) = obj.get("alternatives") {
        let alts = alts
            .as_object()
            .ok_or_else(|| malformed("`alternatives` must be an object"))?;
        for (name, values) in alts {
            alternatives.insert(name.clone(), parse_values(&criteria, values)?);
        }
    }

    let mut statements = Vec::new();
    if let Some(stmts) = obj.get("statements") {
        let stmts = stmts
            .as_array()
            .ok_or_else(|| malformed("`statements` must be an array"))?;
        for (k, s) in stmts.iter().enumerate() {
            let better = s.get("better").ok_or_else(|| malformed("statement without `better`"))?;
            let worse = s.get("worse").ok_or_else(|| malformed("statement without `worse`"))?;
            let (better, bname) = resolve_side(&criteria, &alternatives, better)?;
            let (worse, wname) = resolve_side(&criteria, &alternatives, worse)?;
            let label = match (bname, wname) {
                (Some(b), Some(w)) => format!("{b} >= {w}"),
                _ => format!("p{}", k + 1),
            };
            statements.push(Statement::new(label, better, worse));
        }
    }

    Instance::new(criteria, alternatives, statements)
}

fn parse_criterion(value: &Value) -> Result<Criterion> {
    let name = value
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| malformed("criterion without `name`"))?;
    let domain = value
        .get("domain")
        .ok_or_else(|| malformed("criterion without `domain`"))?;
    match domain.get("kind").and_then(Value::as_str) {
        Some("numeric") => Ok(Criterion::numeric(name)),
        Some("labels") => {
            let labels = domain
                .get("ascending")
                .and_then(Value::as_array)
                .ok_or_else(|| malformed(format!("labels domain of `{name}` needs `ascending`")))?
                .iter()
                .map(|l| l.as_str().map(str::to_string))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| malformed(format!("labels of `{name}` must be strings")))?;
            Ok(Criterion::labels(name, labels))
        }
        _ => Err(malformed(format!("unknown domain kind for `{name}`"))),
    }
}

fn resolve_side(
    criteria: &[Criterion],
    alternatives: &IndexMap<String, Alternative>,
    side: &Value,
) -> Result<(Alternative, Option<String>)> {
    match side {
        Value::String(name) => alternatives
            .get(name)
            .cloned()
            .map(|a| (a, Some(name.clone())))
            .ok_or_else(|| Error::UnknownAlternative(name.clone())),
        _ => Ok((parse_values(criteria, side)?, None)),
    }
}

fn parse_values(criteria: &[Criterion], value: &Value) -> Result<Alternative> {
    let items = value
        .as_array()
        .ok_or_else(|| malformed("alternative must be an array of values"))?;
    if items.len() != criteria.len() {
        return Err(Error::Arity {
            expected: criteria.len(),
            found: items.len(),
        });
    }
    let values = criteria
        .iter()
        .zip(items)
        .map(|(c, v)| match v {
            Value::String(s) if s == "*" => Ok(None),
            Value::String(s) => c.parse_value(s).map(Some),
            Value::Number(n) => match &c.domain {
                Domain::Numeric => c.parse_value(&n.to_string()).map(Some),
                Domain::Labels(_) => Err(Error::OutOfDomain {
                    criterion: c.name.clone(),
                    value: n.to_string(),
                }),
            },
            other => Err(malformed(format!("unsupported value {other}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Alternative::new(values))
}

fn value_to_json(criterion: &Criterion, value: &Option<Rational>) -> Value {
    let Some(v) = value else {
        return Value::String("*".into());
    };
    match &criterion.domain {
        Domain::Labels(_) => Value::String(criterion.format_value(v)),
        Domain::Numeric => match terminating_decimal(v) {
            Some(text) => Value::Number(text.parse::<Number>().expect("decimal literal")),
            None => Value::String(crate::model::format_rational(v)),
        },
    }
}

/// Decimal expansion when the denominator only has factors 2 and 5.
fn terminating_decimal(v: &Rational) -> Option<String> {
    use num_bigint::BigInt;
    use num_traits::{One, Signed, Zero};
    if v.is_integer() {
        return Some(v.numer().to_string());
    }
    let mut d = v.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut twos, mut fives) = (0usize, 0usize);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return None;
    }
    let digits = twos.max(fives);
    let scaled = (v * Rational::from_integer(num_traits::pow(BigInt::from(10), digits))).to_integer();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let abs = scaled.abs().to_string();
    let padded = format!("{abs:0>width$}", width = digits + 1);
    let (whole, frac) = padded.split_at(padded.len() - digits);
    Some(format!("{sign}{whole}.{frac}"))
}

pub fn alternative_to_json(instance: &Instance, alt: &Alternative) -> Value {
    Value::Array(
        instance
            .criteria()
            .iter()
            .zip(alt.entries())
            .map(|(c, v)| value_to_json(c, v))
            .collect(),
    )
}

/// Serializes an instance into the document format; [`parse_instance`]
/// reads it back to an equal instance.
pub fn instance_to_json(instance: &Instance) -> Value {
    let criteria = instance
        .criteria()
        .iter()
        .map(|c| {
            let domain = match &c.domain {
                Domain::Numeric => serde_json::json!({ "kind": "numeric" }),
                Domain::Labels(l) => serde_json::json!({ "kind": "labels", "ascending": l }),
            };
            serde_json::json!({ "name": c.name, "domain": domain })
        })
        .collect::<Vec<_>>();

    let mut alternatives = Map::new();
    for (name, alt) in instance.alternatives() {
        alternatives.insert(name.clone(), alternative_to_json(instance, alt));
    }

    let side = |alt: &Alternative, name: Option<&str>| match name {
        Some(n) if instance.alternative(n) == Some(alt) => Value::String(n.to_string()),
        _ => alternative_to_json(instance, alt),
    };
    let statements = instance
        .statements()
        .iter()
        .map(|s| {
            let names = s.label.split_once(" >= ");
            let mut obj = Map::new();
            obj.insert("better".into(), side(&s.better, names.map(|n| n.0)));
            obj.insert("worse".into(), side(&s.worse, names.map(|n| n.1)));
            Value::Object(obj)
        })
        .collect::<Vec<_>>();

    serde_json::json!({
        "criteria": criteria,
        "alternatives": alternatives,
        "statements": statements,
    })
}

pub fn write_instance(instance: &Instance) -> String {
    serde_json::to_string_pretty(&instance_to_json(instance)).expect("instance serializes")
}

//! Domain types: criteria, alternatives, preference statements, reference
//! scales and Pareto dominance.
//!
//! Every attribute is increasing. Costs and times are stored already negated,
//! and ordered label domains are mapped to `0, 1, 2, ...` at ingestion, so the
//! whole engine works on exact rationals with "larger is better".

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    /// Rationals, larger is better.
    Numeric,
    /// Explicit labels listed worst first.
    Labels(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Criterion {
    pub name: String,
    pub domain: Domain,
}

impl Criterion {
    pub fn numeric(name: impl Into<String>) -> Self {
        Criterion {
            name: name.into(),
            domain: Domain::Numeric,
        }
    }

    pub fn labels<S: Into<String>>(name: impl Into<String>, ascending: impl IntoIterator<Item = S>) -> Self {
        Criterion {
            name: name.into(),
            domain: Domain::Labels(ascending.into_iter().map(Into::into).collect()),
        }
    }

    /// Parses a textual value: a label for label domains, an exact decimal
    /// (or `n/d`) for numeric ones.
    pub fn parse_value(&self, text: &str) -> Result<Rational> {
        let text = text.trim();
        let out_of_domain = || Error::OutOfDomain {
            criterion: self.name.clone(),
            value: text.to_string(),
        };
        match &self.domain {
            Domain::Numeric => parse_rational(text).ok_or_else(out_of_domain),
            Domain::Labels(labels) => labels
                .iter()
                .position(|l| l == text)
                .map(|p| int(p as i64))
                .ok_or_else(out_of_domain),
        }
    }

    pub fn contains(&self, value: &Rational) -> bool {
        match &self.domain {
            Domain::Numeric => true,
            Domain::Labels(labels) => {
                value.is_integer() && !value.is_negative() && value.to_integer() < BigInt::from(labels.len())
            }
        }
    }

    pub fn format_value(&self, value: &Rational) -> String {
        match &self.domain {
            Domain::Labels(labels) if self.contains(value) => {
                let idx: usize = value.to_integer().try_into().unwrap_or(0);
                labels[idx].clone()
            }
            _ => format_rational(value),
        }
    }
}

/// Exact rational as `n` or `n/d`.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `-12000`, `1.25`, `3e2`, `-2.5E-1` or `7/3` exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let joined = format!("{whole}{frac}");
    let mut numer: BigInt = joined.parse().ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    })
}

/// A point of `X_1 x ... x X_n`; `None` is the ceteris-paribus wildcard.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alternative(Vec<Option<Rational>>);

impl Alternative {
    pub fn new(values: Vec<Option<Rational>>) -> Self {
        Alternative(values)
    }

    pub fn from_values(values: impl IntoIterator<Item = Rational>) -> Self {
        Alternative(values.into_iter().map(Some).collect())
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::from_values(values.iter().map(|&v| int(v)))
    }

    /// Integer entries with `None` as wildcard.
    pub fn from_partial_ints(values: &[Option<i64>]) -> Self {
        Alternative(values.iter().map(|v| v.map(int)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, criterion: usize) -> Option<&Rational> {
        self.0[criterion].as_ref()
    }

    pub fn entries(&self) -> &[Option<Rational>] {
        &self.0
    }

    pub fn has_wildcard(&self) -> bool {
        self.0.iter().any(Option::is_none)
    }

    /// Values of a wildcard-free alternative.
    pub fn values(&self) -> Result<Vec<&Rational>> {
        self.0
            .iter()
            .map(|v| v.as_ref().ok_or(Error::UnexpectedWildcard))
            .collect()
    }

    pub(crate) fn set(&mut self, criterion: usize, value: Option<Rational>) {
        self.0[criterion] = value;
    }

    /// Criteria on which the two alternatives differ.
    pub fn differing_criteria(&self, other: &Alternative) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] != other.0[i]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub label: String,
    pub better: Alternative,
    pub worse: Alternative,
}

impl Statement {
    pub fn new(label: impl Into<String>, better: Alternative, worse: Alternative) -> Self {
        Statement {
            label: label.into(),
            better,
            worse,
        }
    }
}

/// A validated decision problem: criteria, named alternatives and the
/// preference statements `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    criteria: Vec<Criterion>,
    alternatives: IndexMap<String, Alternative>,
    statements: Vec<Statement>,
}

impl Instance {
    pub fn new(
        criteria: Vec<Criterion>,
        alternatives: IndexMap<String, Alternative>,
        statements: Vec<Statement>,
    ) -> Result<Self> {
        let mut names = HashSet::new();
        for c in &criteria {
            if !names.insert(c.name.as_str()) {
                return Err(Error::InvalidCriteria(format!("duplicate criterion name `{}`", c.name)));
            }
            if let Domain::Labels(labels) = &c.domain {
                let distinct: HashSet<_> = labels.iter().collect();
                if labels.len() < 2 || distinct.len() != labels.len() {
                    return Err(Error::InvalidCriteria(format!(
                        "criterion `{}` needs at least two distinct labels",
                        c.name
                    )));
                }
            }
        }
        let instance = Instance {
            criteria,
            alternatives,
            statements,
        };
        for alt in instance.alternatives.values() {
            instance.check_alternative(alt)?;
        }
        for s in &instance.statements {
            instance.check_alternative(&s.better)?;
            instance.check_alternative(&s.worse)?;
            let mismatch = s
                .better
                .entries()
                .iter()
                .zip(s.worse.entries())
                .any(|(a, b)| a.is_none() != b.is_none());
            if mismatch {
                return Err(Error::WildcardMismatch(s.label.clone()));
            }
        }
        Ok(instance)
    }

    fn check_alternative(&self, alt: &Alternative) -> Result<()> {
        if alt.len() != self.criteria.len() {
            return Err(Error::Arity {
                expected: self.criteria.len(),
                found: alt.len(),
            });
        }
        for (c, v) in self.criteria.iter().zip(alt.entries()) {
            if let Some(v) = v {
                if !c.contains(v) {
                    return Err(Error::OutOfDomain {
                        criterion: c.name.clone(),
                        value: format_rational(v),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.criteria.len()
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.criteria
    }

    pub fn criterion_index(&self, name: &str) -> Option<usize> {
        self.criteria.iter().position(|c| c.name == name)
    }

    pub fn alternatives(&self) -> &IndexMap<String, Alternative> {
        &self.alternatives
    }

    pub fn alternative(&self, name: &str) -> Option<&Alternative> {
        self.alternatives.get(name)
    }

    pub fn statements(&self) -> &[Statement] {
        &self.statements
    }

    /// Resolves a named alternative, or parses an inline comma-separated list
    /// of values in criterion order (`*` for a wildcard).
    pub fn resolve_alternative(&self, spec: &str) -> Result<Alternative> {
        if let Some(alt) = self.alternatives.get(spec.trim()) {
            return Ok(alt.clone());
        }
        if !spec.contains(',') && self.n() > 1 {
            return Err(Error::UnknownAlternative(spec.to_string()));
        }
        let parts: Vec<&str> = spec.split(',').collect();
        if parts.len() != self.n() {
            return Err(Error::Arity {
                expected: self.n(),
                found: parts.len(),
            });
        }
        let values = self
            .criteria
            .iter()
            .zip(parts)
            .map(|(c, p)| match p.trim() {
                "*" => Ok(None),
                p => c.parse_value(p).map(Some),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Alternative::new(values))
    }

    pub fn format_alternative(&self, alt: &Alternative) -> String {
        let parts: Vec<String> = self
            .criteria
            .iter()
            .zip(alt.entries())
            .map(|(c, v)| match v {
                Some(v) => c.format_value(v),
                None => "*".to_string(),
            })
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// Per-criterion sorted distinct values referenced by the statements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceScale {
    levels: Vec<Vec<Rational>>,
}

impl ReferenceScale {
    pub fn new(levels: Vec<Vec<Rational>>) -> Self {
        let levels = levels
            .into_iter()
            .map(|l| l.into_iter().collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        ReferenceScale { levels }
    }

    pub fn n(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self, criterion: usize) -> &[Rational] {
        &self.levels[criterion]
    }

    pub fn all_levels(&self) -> &[Vec<Rational>] {
        &self.levels
    }

    pub fn position(&self, criterion: usize, value: &Rational) -> Option<usize> {
        self.levels[criterion].binary_search(value).ok()
    }

    /// At most two levels on every criterion. Criteria with fewer than two
    /// levels carry no elementary preference and are always neutral.
    pub fn is_binary(&self) -> bool {
        self.levels.iter().all(|l| l.len() <= 2)
    }

    pub fn require_binary(&self) -> Result<()> {
        match self.levels.iter().position(|l| l.len() > 2) {
            Some(i) => Err(Error::NonBinaryScale {
                criterion: i,
                size: self.levels[i].len(),
            }),
            None => Ok(()),
        }
    }
}

pub fn build_reference_scales(instance: &Instance) -> ReferenceScale {
    let mut levels = vec![BTreeSet::new(); instance.n()];
    for s in instance.statements() {
        for alt in [&s.better, &s.worse] {
            for (i, v) in alt.entries().iter().enumerate() {
                if let Some(v) = v {
                    levels[i].insert(v.clone());
                }
            }
        }
    }
    ReferenceScale {
        levels: levels.into_iter().map(|l| l.into_iter().collect()).collect(),
    }
}

/// Pareto dominance: `x_i >= y_i` on every criterion.
pub fn dominates(x: &Alternative, y: &Alternative) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::Arity {
            expected: x.len(),
            found: y.len(),
        });
    }
    let xs = x.values()?;
    let ys = y.values()?;
    Ok(xs.iter().zip(ys).all(|(a, b)| *a >= b))
}

impl fmt::Display for Alternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|v| v.as_ref().map_or_else(|| "*".to_string(), format_rational))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

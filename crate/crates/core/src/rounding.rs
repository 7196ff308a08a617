//! Bounded and unbounded queries, and the conservative rounding of bounded
//! queries onto the reference scales: the candidate is rounded down and the
//! challenger rounded up, criterion by criterion.

use crate::error::{Error, Result};
use crate::model::{dominates, Alternative, Rational, ReferenceScale};

/// The question "is `x` at least as good as `y`?".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Query {
    pub x: Alternative,
    pub y: Alternative,
}

impl Query {
    pub fn new(x: Alternative, y: Alternative) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Arity {
                expected: x.len(),
                found: y.len(),
            });
        }
        if x.has_wildcard() || y.has_wildcard() {
            return Err(Error::UnexpectedWildcard);
        }
        Ok(Query { x, y })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub(crate) fn pair(&self, criterion: usize) -> (&Rational, &Rational) {
        (
            self.x.get(criterion).expect("query without wildcards"),
            self.y.get(criterion).expect("query without wildcards"),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundedness {
    Bounded,
    /// The challenger escapes the scale above, or the candidate below, on a
    /// criterion where the challenger wins.
    Unbounded {
        criterion: usize,
    },
    /// The challenger wins on a criterion that no statement mentions.
    NoScale {
        criterion: usize,
    },
}

impl Boundedness {
    pub fn is_bounded(self) -> bool {
        self == Boundedness::Bounded
    }

    pub fn criterion(self) -> Option<usize> {
        match self {
            Boundedness::Bounded => None,
            Boundedness::Unbounded { criterion } | Boundedness::NoScale { criterion } => Some(criterion),
        }
    }
}

pub fn boundedness(q: &Query, scales: &ReferenceScale) -> Boundedness {
    for i in 0..q.n() {
        let (x, y) = q.pair(i);
        if y <= x {
            continue;
        }
        let levels = scales.levels(i);
        match (levels.first(), levels.last()) {
            (Some(bottom), Some(top)) => {
                if y > top || x < bottom {
                    return Boundedness::Unbounded { criterion: i };
                }
            }
            _ => return Boundedness::NoScale { criterion: i },
        }
    }
    Boundedness::Bounded
}

pub fn is_bounded(q: &Query, scales: &ReferenceScale) -> bool {
    boundedness(q, scales).is_bounded()
}

/// A query on the reference scales, wildcards standing for criteria that
/// cannot matter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RoundedQuery {
    pub x_low: Alternative,
    pub y_high: Alternative,
}

impl RoundedQuery {
    /// The rounded pair with wildcards replaced by the original candidate
    /// value, which keeps `x >= x_low` and `y_high >= y`.
    pub fn concrete(&self, q: &Query) -> (Alternative, Alternative) {
        let mut lo = self.x_low.clone();
        let mut hi = self.y_high.clone();
        for i in 0..q.n() {
            if lo.get(i).is_none() {
                lo.set(i, Some(q.pair(i).0.clone()));
                hi.set(i, Some(q.pair(i).0.clone()));
            }
        }
        (lo, hi)
    }

    pub fn as_query(&self, q: &Query) -> Query {
        let (x, y) = self.concrete(q);
        Query { x, y }
    }
}

pub fn round_query(q: &Query, scales: &ReferenceScale) -> Result<RoundedQuery> {
    if let Some(criterion) = boundedness(q, scales).criterion() {
        return Err(Error::Unbounded { criterion });
    }
    let mut x_low = Vec::with_capacity(q.n());
    let mut y_high = Vec::with_capacity(q.n());
    for i in 0..q.n() {
        let (x, y) = q.pair(i);
        let levels = scales.levels(i);
        let between = levels.iter().any(|v| y <= v && v <= x);
        if x >= y && !between {
            x_low.push(None);
            y_high.push(None);
            continue;
        }
        // Boundedness guarantees both exist.
        let lo = levels.iter().rev().find(|v| *v <= x).cloned();
        let hi = levels.iter().find(|v| *v >= y).cloned();
        debug_assert!(lo.is_some() && hi.is_some());
        x_low.push(lo);
        y_high.push(hi);
    }
    Ok(RoundedQuery {
        x_low: Alternative::new(x_low),
        y_high: Alternative::new(y_high),
    })
}

/// The five mutually exclusive situations of a criterion against a binary
/// scale `{bottom < top}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArgumentStrength {
    StrongForX,
    WeakForX,
    Neutral,
    WeakForY,
    /// Necessity is impossible for this query.
    StrongForY,
}

impl ArgumentStrength {
    /// Covector coefficient, undefined when the query is unbounded.
    pub fn coefficient(self) -> Option<i64> {
        match self {
            ArgumentStrength::StrongForX => Some(1),
            ArgumentStrength::WeakForX | ArgumentStrength::Neutral => Some(0),
            ArgumentStrength::WeakForY => Some(-1),
            ArgumentStrength::StrongForY => None,
        }
    }
}

pub fn classify_argument_binary(
    criterion: usize,
    x: &Rational,
    y: &Rational,
    scale: &[Rational],
) -> Result<ArgumentStrength> {
    let [bottom, top] = scale else {
        return Err(Error::NonBinaryScale {
            criterion,
            size: scale.len(),
        });
    };
    Ok(if x == y {
        ArgumentStrength::Neutral
    } else if x > y {
        if x >= top && bottom >= y {
            ArgumentStrength::StrongForX
        } else {
            ArgumentStrength::WeakForX
        }
    } else if top >= y && x >= bottom {
        ArgumentStrength::WeakForY
    } else {
        ArgumentStrength::StrongForY
    })
}

/// `x` dominates the rounded candidate and the rounded challenger dominates
/// `y`, wildcard positions excluded.
pub fn brackets(q: &Query, r: &RoundedQuery) -> bool {
    let (lo, hi) = r.concrete(q);
    dominates(&q.x, &lo).unwrap_or(false) && dominates(&hi, &q.y).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{parse_instance, OFFICE_EXAMPLE};
    use crate::model::{build_reference_scales, int, Instance};

    fn office() -> (Instance, ReferenceScale) {
        let inst = parse_instance(OFFICE_EXAMPLE).unwrap();
        let scales = build_reference_scales(&inst);
        (inst, scales)
    }

    fn query(inst: &Instance, x: &str, y: &str) -> Query {
        Query::new(
            inst.resolve_alternative(x).unwrap(),
            inst.resolve_alternative(y).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn office_query_is_bounded_and_rounds() {
        let (inst, scales) = office();
        let q = query(&inst, "x", "y");
        assert!(is_bounded(&q, &scales));
        let r = round_query(&q, &scales).unwrap();
        assert_eq!(inst.format_alternative(&r.x_low), "(-50, no gym, 400, -5000)");
        assert_eq!(inst.format_alternative(&r.y_high), "(-15, gym, 200, -12000)");
        assert!(brackets(&q, &r));
    }

    #[test]
    fn candidate_below_scale_is_unbounded() {
        let (inst, scales) = office();
        let q = query(&inst, "-60,no gym,450,-5000", "y");
        assert_eq!(boundedness(&q, &scales), Boundedness::Unbounded { criterion: 0 });
        assert_eq!(round_query(&q, &scales), Err(Error::Unbounded { criterion: 0 }));
        let q = query(&inst, "x", "x");
        assert!(is_bounded(&q, &scales));
    }

    #[test]
    fn empty_scale_with_challenger_winning() {
        let scales = ReferenceScale::new(vec![vec![int(0), int(1)], vec![]]);
        let q = Query::new(Alternative::from_ints(&[1, 0]), Alternative::from_ints(&[0, 5])).unwrap();
        assert_eq!(boundedness(&q, &scales), Boundedness::NoScale { criterion: 1 });
        let q = Query::new(Alternative::from_ints(&[1, 5]), Alternative::from_ints(&[0, 0])).unwrap();
        let r = round_query(&q, &scales).unwrap();
        assert_eq!(r.x_low.get(1), None);
    }

    #[test]
    fn off_scale_ties_become_wildcards() {
        let (inst, scales) = office();
        let q = query(&inst, "-30,no gym,300,-8000", "-30,no gym,300,-8000");
        let r = round_query(&q, &scales).unwrap();
        assert_eq!(r.x_low.get(0), None);
        assert_eq!(r.x_low.get(1), Some(&int(0)));
        assert_eq!(r.y_high.get(1), Some(&int(0)));
        assert_eq!(r.x_low.get(2), None);
        assert_eq!(r.x_low.get(3), None);
    }

    #[test]
    fn size_gap_is_neutral() {
        let (inst, scales) = office();
        let q = query(&inst, "-15,gym,300,-5000", "-15,gym,250,-5000");
        let r = round_query(&q, &scales).unwrap();
        assert_eq!((r.x_low.get(2), r.y_high.get(2)), (None, None));
    }

    #[test]
    fn challenger_inside_same_gap_rounds_to_adjacent_levels() {
        let (inst, scales) = office();
        let q = query(&inst, "-15,gym,250,-5000", "-15,gym,300,-5000");
        let r = round_query(&q, &scales).unwrap();
        assert_eq!((r.x_low.get(2), r.y_high.get(2)), (Some(&int(200)), Some(&int(400))));
    }

    #[test]
    fn binary_classification() {
        let scale = [int(200), int(400)];
        let c = |x, y| classify_argument_binary(2, &int(x), &int(y), &scale).unwrap();
        assert_eq!(c(450, 180), ArgumentStrength::StrongForX);
        assert_eq!(c(300, 250), ArgumentStrength::WeakForX);
        assert_eq!(c(300, 300), ArgumentStrength::Neutral);
        assert_eq!(c(250, 300), ArgumentStrength::WeakForY);
        assert_eq!(c(300, 500), ArgumentStrength::StrongForY);
        assert_eq!(c(150, 300), ArgumentStrength::StrongForY);
        assert!(classify_argument_binary(0, &int(0), &int(1), &[int(0), int(1), int(2)]).is_err());
    }

    #[test]
    fn rounding_is_idempotent_on_scale() {
        let (inst, scales) = office();
        let q = query(&inst, "e1", "e2");
        let r = round_query(&q, &scales).unwrap();
        assert_eq!(r.x_low, q.x);
        assert_eq!(r.y_high, q.y);
    }

    #[test]
    fn wildcards_rejected_in_queries() {
        let x = Alternative::from_partial_ints(&[None, Some(1)]);
        assert_eq!(Query::new(x.clone(), x), Err(Error::UnexpectedWildcard));
    }
}

//! Necessary preference as cone membership.
//!
//! A bounded query is necessary iff its rounded covector is a nonnegative
//! combination of the statement covectors and the elementary dominance
//! covectors. The combination is found exactly and returned as a
//! [`Certificate`]. Two independent checks sit beside the main path: a
//! bounded integer search ([`ilp_oracle`]) and a primal sampler looking for
//! utility increments that break the query ([`sampling_falsifier`]).

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::covector::{covector_of, covector_of_rounded_query, Covector, IndexSet};
use crate::error::{Error, Result};
use crate::model::{build_reference_scales, format_rational, Instance, Rational, ReferenceScale};
use crate::rounding::{boundedness, round_query, Boundedness, Query, RoundedQuery};
use crate::simplex::find_nonnegative_solution;

/// Generators (statements first, then the unit covectors in slot order) and
/// a target, all over one index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSystem {
    pub statements: Vec<Covector>,
    pub slots: usize,
    pub target: Covector,
}

impl ConeSystem {
    pub fn new(statements: Vec<Covector>, index: &IndexSet, target: Covector) -> Result<Self> {
        if target.len() != index.len() || statements.iter().any(|s| s.len() != index.len()) {
            return Err(Error::IndexMismatch);
        }
        Ok(ConeSystem {
            statements,
            slots: index.len(),
            target,
        })
    }
}

/// Nonnegative `lambda` per statement and `mu` per slot with
/// `sum lambda_p p* + sum mu_s d*_s = target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub lambda: Vec<Rational>,
    pub mu: Vec<Rational>,
}

/// `r * target = sum ell_p p* + sum m_s d*_s` with `r > 0`, `ell, m >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerCertificate {
    pub r: i64,
    pub ell: Vec<i64>,
    pub m: Vec<i64>,
}

impl Certificate {
    pub fn verify(&self, system: &ConeSystem) -> bool {
        if self.lambda.len() != system.statements.len() || self.mu.len() != system.slots {
            return false;
        }
        if self.lambda.iter().chain(&self.mu).any(Signed::is_negative) {
            return false;
        }
        (0..system.slots).all(|s| {
            let mut total = self.mu[s].clone();
            for (l, p) in self.lambda.iter().zip(&system.statements) {
                total += l * Rational::from_integer(p.0[s].into());
            }
            total == Rational::from_integer(system.target.0[s].into())
        })
    }

    /// Scales by the least common denominator.
    pub fn to_integer(&self) -> Option<IntegerCertificate> {
        let r = self
            .lambda
            .iter()
            .chain(&self.mu)
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let scale = |v: &Rational| (v * Rational::from_integer(r.clone())).to_integer().to_i64();
        Some(IntegerCertificate {
            r: r.to_i64()?,
            ell: self.lambda.iter().map(scale).collect::<Option<_>>()?,
            m: self.mu.iter().map(scale).collect::<Option<_>>()?,
        })
    }
}

impl IntegerCertificate {
    pub fn verify(&self, system: &ConeSystem) -> bool {
        if self.r < 1 || self.ell.len() != system.statements.len() || self.m.len() != system.slots {
            return false;
        }
        if self.ell.iter().chain(&self.m).any(|&v| v < 0) {
            return false;
        }
        (0..system.slots).all(|s| {
            let rhs: i64 = self.m[s]
                + self
                    .ell
                    .iter()
                    .zip(&system.statements)
                    .map(|(l, p)| l * p.0[s])
                    .sum::<i64>();
            self.r * system.target.0[s] == rhs
        })
    }
}

/// Decides whether the target lies in the cone of the generators.
pub fn cone_membership(system: &ConeSystem) -> Option<Certificate> {
    let k = system.statements.len();
    if system.slots == 0 {
        return Some(Certificate {
            lambda: vec![Rational::zero(); k],
            mu: Vec::new(),
        });
    }
    let columns = k + system.slots;
    let a: Vec<Vec<Rational>> = (0..system.slots)
        .map(|s| {
            let mut row = vec![Rational::zero(); columns];
            for (j, p) in system.statements.iter().enumerate() {
                row[j] = Rational::from_integer(p.0[s].into());
            }
            row[k + s] = Rational::one();
            row
        })
        .collect();
    let b: Vec<Rational> = system
        .target
        .0
        .iter()
        .map(|&t| Rational::from_integer(t.into()))
        .collect();
    let mut x = find_nonnegative_solution(&a, &b)?;
    let mu = x.split_off(k);
    let cert = Certificate { lambda: x, mu };
    debug_assert!(cert.verify(system));
    Some(cert)
}

/// The full verdict on one query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub boundedness: Boundedness,
    pub rounded: Option<RoundedQuery>,
    pub covector: Option<Covector>,
    pub certificate: Option<Certificate>,
}

impl Decision {
    pub fn is_necessary(&self) -> bool {
        self.certificate.is_some()
    }
}

/// An instance together with its reference scales, index set and statement
/// covectors, ready to answer queries.
#[derive(Debug, Clone)]
pub struct Engine {
    instance: Instance,
    scales: ReferenceScale,
    index: IndexSet,
    statements: Vec<Covector>,
}

impl Engine {
    pub fn new(instance: &Instance) -> Self {
        let scales = build_reference_scales(instance);
        let index = IndexSet::new(&scales);
        let statements = instance
            .statements()
            .iter()
            .map(|s| covector_of(&s.better, &s.worse, &scales, &index).expect("statement values are on the scales"))
            .collect();
        Engine {
            instance: instance.clone(),
            scales,
            index,
            statements,
        }
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn scales(&self) -> &ReferenceScale {
        &self.scales
    }

    pub fn index(&self) -> &IndexSet {
        &self.index
    }

    pub fn statement_covectors(&self) -> &[Covector] {
        &self.statements
    }

    pub fn cone_system(&self, target: Covector) -> Result<ConeSystem> {
        ConeSystem::new(self.statements.clone(), &self.index, target)
    }

    /// Cone membership of a covector over this engine's index set.
    pub fn certify(&self, target: &Covector) -> Result<Option<Certificate>> {
        Ok(cone_membership(&self.cone_system(target.clone())?))
    }

    pub fn rounded_covector(&self, q: &Query) -> Result<Covector> {
        covector_of_rounded_query(q, &self.scales, &self.index)
    }

    pub fn decide(&self, q: &Query) -> Decision {
        let bounded = boundedness(q, &self.scales);
        if !bounded.is_bounded() {
            return Decision {
                boundedness: bounded,
                rounded: None,
                covector: None,
                certificate: None,
            };
        }
        let rounded = round_query(q, &self.scales).expect("bounded");
        let covector = self.rounded_covector(q).expect("bounded");
        let certificate = self.certify(&covector).expect("same index set");
        Decision {
            boundedness: bounded,
            rounded: Some(rounded),
            covector: Some(covector),
            certificate,
        }
    }

    pub fn is_necessary(&self, q: &Query) -> bool {
        self.decide(q).is_necessary()
    }

    /// Text block mapping statement labels to `lambda` and slots to `mu`,
    /// followed by the integer form.
    pub fn render_certificate(&self, cert: &Certificate) -> String {
        let mut out = String::from("lambda:\n");
        for (s, l) in self.instance.statements().iter().zip(&cert.lambda) {
            let _ = writeln!(out, "  {}  {}", s.label, format_rational(l));
        }
        out.push_str("mu:\n");
        for (slot, m) in self.index.slots().iter().zip(&cert.mu) {
            if m.is_zero() {
                continue;
            }
            let _ = writeln!(
                out,
                "  {}  {}",
                self.slot_name(slot.criterion, slot.k),
                format_rational(m)
            );
        }
        if let Some(int) = cert.to_integer() {
            let _ = writeln!(out, "integer form: r = {}, ell = {:?}, m = {:?}", int.r, int.ell, int.m);
        }
        out
    }

    pub fn slot_name(&self, criterion: usize, k: usize) -> String {
        let c = &self.instance.criteria()[criterion];
        let levels = self.scales.levels(criterion);
        format!(
            "{}[{} .. {}]",
            c.name,
            c.format_value(&levels[k]),
            c.format_value(&levels[k + 1])
        )
    }
}

/// Builds an engine for the instance and decides the query.
pub fn is_necessary(q: &Query, instance: &Instance) -> bool {
    Engine::new(instance).is_necessary(q)
}

pub const ILP_MAX_STATEMENTS: usize = 5;
pub const ILP_MAX_SLOTS: usize = 8;

/// Exhaustive integer search over `r in [1, B]`, `ell in [0, B]^P`; the slot
/// coefficients `m` are then forced by the balance on every slot and must
/// land in `[0, B]`.
pub fn ilp_oracle(system: &ConeSystem, bound: i64) -> Result<Option<IntegerCertificate>> {
    if bound < 1 {
        return Err(Error::InvalidParameter("oracle bound must be at least 1".into()));
    }
    if system.statements.len() > ILP_MAX_STATEMENTS || system.slots > ILP_MAX_SLOTS {
        return Err(Error::InvalidParameter(format!(
            "integer oracle is limited to {ILP_MAX_STATEMENTS} statements and {ILP_MAX_SLOTS} slots"
        )));
    }
    let k = system.statements.len();
    for r in 1..=bound {
        let mut ell = vec![0i64; k];
        loop {
            let m: Vec<i64> = (0..system.slots)
                .map(|s| {
                    r * system.target.0[s] - ell.iter().zip(&system.statements).map(|(l, p)| l * p.0[s]).sum::<i64>()
                })
                .collect();
            if m.iter().all(|&v| (0..=bound).contains(&v)) {
                return Ok(Some(IntegerCertificate { r, ell, m }));
            }
            // Odometer over ell.
            let mut pos = 0;
            while pos < k && ell[pos] == bound {
                ell[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
            ell[pos] += 1;
        }
    }
    Ok(None)
}

/// Samples nonnegative integer increment vectors, keeps those satisfying
/// every statement, and returns the first one under which the rounded query
/// fails. Deterministic for a given seed.
pub fn sampling_falsifier(engine: &Engine, q: &Query, trials: usize, seed: u64) -> Result<Option<Vec<i64>>> {
    let target = engine.rounded_covector(q)?;
    Ok(falsify_covector(engine.statement_covectors(), &target, trials, seed))
}

pub fn falsify_covector(statements: &[Covector], target: &Covector, trials: usize, seed: u64) -> Option<Vec<i64>> {
    const SCALES: [i64; 4] = [1, 2, 5, 20];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = vec![0i64; target.len()];
    for _ in 0..trials {
        let top = SCALES[rng.gen_range(0..SCALES.len())];
        for v in w.iter_mut() {
            *v = if rng.gen_bool(1.0 / 3.0) {
                0
            } else {
                rng.gen_range(1..=top)
            };
        }
        if statements.iter().all(|p| p.dot(&w) >= 0) && target.dot(&w) < 0 {
            return Some(w);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{parse_instance, OFFICE_EXAMPLE};
    use crate::model::int;

    fn engine() -> Engine {
        Engine::new(&parse_instance(OFFICE_EXAMPLE).unwrap())
    }

    fn query(e: &Engine, x: &str, y: &str) -> Query {
        let i = e.instance();
        Query::new(i.resolve_alternative(x).unwrap(), i.resolve_alternative(y).unwrap()).unwrap()
    }

    fn rat(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn cost_over_commute_certificate() {
        let e = engine();
        let system = e.cone_system(Covector(vec![-1, 0, 0, 1])).unwrap();
        let expected = Certificate {
            lambda: rat(&[0, 1, 1]),
            mu: rat(&[0, 0, 0, 0]),
        };
        assert!(expected.verify(&system));
        let found = cone_membership(&system).unwrap();
        assert!(found.verify(&system));
    }

    #[test]
    fn single_generator_target() {
        let e = engine();
        for target in e
            .statement_covectors()
            .iter()
            .cloned()
            .chain((0..4).map(|s| e.index().unit(s)))
        {
            let system = e.cone_system(target).unwrap();
            assert!(cone_membership(&system).unwrap().verify(&system));
        }
    }

    #[test]
    fn reverse_of_first_statement_is_not_in_cone() {
        let e = engine();
        let system = e.cone_system(Covector(vec![-1, 1, -1, 1])).unwrap();
        assert!(cone_membership(&system).is_none());
        assert!(ilp_oracle(&system, 10).unwrap().is_none());
    }

    #[test]
    fn office_query_is_necessary() {
        let e = engine();
        let d = e.decide(&query(&e, "x", "y"));
        assert!(d.is_necessary());
        assert_eq!(d.covector.unwrap().0, vec![-1, -1, 1, 1]);
    }

    #[test]
    fn abcd_certificate_is_unique() {
        let e = engine();
        let d = e.decide(&query(&e, "ABCd", "abcD"));
        let cert = d.certificate.unwrap();
        let int = cert.to_integer().unwrap();
        assert_eq!(
            int,
            IntegerCertificate {
                r: 1,
                ell: vec![1, 0, 0],
                m: vec![0, 2, 0, 0]
            }
        );
        let text = e.render_certificate(&cert);
        assert!(text.contains("e1 >= e2  1"));
        assert!(text.contains("Gym[no gym .. gym]  2"));
    }

    #[test]
    fn reverse_statement_not_necessary() {
        let e = engine();
        assert!(!e.is_necessary(&query(&e, "e2", "e1")));
        assert!(is_necessary(&query(&e, "e1", "e2"), e.instance()));
    }

    #[test]
    fn empty_index_set() {
        let system = ConeSystem {
            statements: vec![Covector(vec![]), Covector(vec![])],
            slots: 0,
            target: Covector(vec![]),
        };
        let cert = cone_membership(&system).unwrap();
        assert_eq!(cert.lambda.len(), 2);
        assert!(cert.verify(&system));
    }

    #[test]
    fn unbounded_query_is_not_necessary() {
        let e = engine();
        let d = e.decide(&query(&e, "-60,no gym,450,-5000", "y"));
        assert_eq!(d.boundedness, Boundedness::Unbounded { criterion: 0 });
        assert!(!d.is_necessary());
    }

    #[test]
    fn pareto_dominance_needs_no_statement() {
        let inst = Instance::new(
            vec![
                crate::model::Criterion::numeric("a"),
                crate::model::Criterion::numeric("b"),
            ],
            Default::default(),
            vec![crate::model::Statement::new(
                "p",
                crate::model::Alternative::from_ints(&[1, 0]),
                crate::model::Alternative::from_ints(&[0, 1]),
            )],
        )
        .unwrap();
        let e = Engine::new(&inst);
        let q = Query::new(
            crate::model::Alternative::from_ints(&[1, 1]),
            crate::model::Alternative::from_ints(&[0, 0]),
        )
        .unwrap();
        let cert = e.decide(&q).certificate.unwrap();
        assert!(cert.lambda.iter().all(Zero::is_zero));
    }

    #[test]
    fn ilp_oracle_examples() {
        let e = engine();
        let system = e.cone_system(Covector(vec![0, -1, 1, 0])).unwrap();
        let found = ilp_oracle(&system, 6).unwrap().unwrap();
        assert!(found.verify(&system));
        assert_eq!(found.r, 1);
        assert!(IntegerCertificate {
            r: 1,
            ell: vec![1, 1, 1],
            m: vec![0; 4]
        }
        .verify(&system));

        let system = e.cone_system(e.index().unit(2)).unwrap();
        let found = ilp_oracle(&system, 6).unwrap().unwrap();
        assert_eq!(found.r, 1);
        assert!(found.verify(&system));

        let system = e.cone_system(Covector(vec![1, 1, 1, -1])).unwrap();
        assert!(ilp_oracle(&system, 1).unwrap().is_none());
        assert_eq!(ilp_oracle(&system, 2).unwrap().unwrap().m, vec![0, 2, 0, 0]);
        assert!(ilp_oracle(&system, 0).is_err());
    }

    #[test]
    fn falsifier_examples() {
        let e = engine();
        let w = sampling_falsifier(&e, &query(&e, "e2", "e1"), 10_000, 7)
            .unwrap()
            .unwrap();
        let target = e.rounded_covector(&query(&e, "e2", "e1")).unwrap();
        assert!(target.dot(&w) < 0);
        assert!(e.statement_covectors().iter().all(|p| p.dot(&w) >= 0));
        assert!(sampling_falsifier(&e, &query(&e, "x", "x"), 10_000, 7)
            .unwrap()
            .is_none());
        assert!(sampling_falsifier(&e, &query(&e, "e2", "e3"), 10_000, 7)
            .unwrap()
            .is_none());
        assert!(sampling_falsifier(&e, &query(&e, "-60,no gym,450,-5000", "y"), 10, 7).is_err());
    }

    #[test]
    fn falsifier_is_deterministic() {
        let e = engine();
        let q = query(&e, "e2", "e1");
        assert_eq!(
            sampling_falsifier(&e, &q, 500, 3).unwrap(),
            sampling_falsifier(&e, &q, 500, 3).unwrap()
        );
    }
}

//! Explanations of necessary preferences as chains of dominance steps and
//! preference swaps.
//!
//! On binary reference scales a query is explained term by term: every
//! negative argument is cancelled by a distinct positive argument that is
//! necessarily preferred to it in an order-2 swap. [`find_explanation`]
//! computes such a matching, [`render_sequence`] turns it into a sequence of
//! alternatives, and [`shortest_explanation_search`] is the general
//! breadth-first search over the augmented scales used when no matching
//! exists or scales are not binary.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use indexmap::IndexMap;

use crate::covector::{argument_partition, ArgumentPartition, Covector};
use crate::error::{Error, Result};
use crate::matching::maximum_matching;
use crate::model::{dominates, int, Alternative, Criterion, Instance, Rational, Statement};
use crate::necessity::Engine;
use crate::rounding::Query;

/// Directed relation between criteria: `(i, j)` when the order-2 swap
/// `({i} >= {j})` is necessary.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SwapRelation {
    edges: BTreeSet<(usize, usize)>,
}

impl SwapRelation {
    pub fn from_edges(edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        SwapRelation {
            edges: edges.into_iter().collect(),
        }
    }

    pub fn contains(&self, gain: usize, loss: usize) -> bool {
        self.edges.contains(&(gain, loss))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_transitively_closed(&self) -> bool {
        self.edges.iter().all(|&(a, b)| {
            self.edges
                .iter()
                .filter(|&&(c, _)| c == b)
                .all(|&(_, d)| d == a || self.contains(a, d))
        })
    }

    pub fn to_dot(&self, instance: &Instance) -> String {
        let mut out = String::from("digraph swaps {\n  rankdir=LR;\n  node [shape=box, style=rounded];\n");
        for c in instance.criteria() {
            let _ = writeln!(out, "  \"{}\";", escape(&c.name));
        }
        for (i, j) in self.edges() {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\";",
                escape(&instance.criteria()[i].name),
                escape(&instance.criteria()[j].name)
            );
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Criteria carrying exactly one elementary preference.
fn binary_criteria(engine: &Engine) -> Vec<usize> {
    (0..engine.instance().n())
        .filter(|&i| engine.index().range(i).len() == 1)
        .collect()
}

pub fn swap_is_necessary(engine: &Engine, gain: usize, loss: usize) -> Result<bool> {
    let target = engine.index().swap_target(gain, loss)?;
    Ok(engine.certify(&target)?.is_some())
}

/// Every necessary order-2 swap between criteria. Requires binary scales.
pub fn delta2_graph(engine: &Engine) -> Result<SwapRelation> {
    engine.scales().require_binary()?;
    let criteria = binary_criteria(engine);
    let mut edges = BTreeSet::new();
    for &i in &criteria {
        for &j in &criteria {
            if i != j && swap_is_necessary(engine, i, j)? {
                edges.insert((i, j));
            }
        }
    }
    Ok(SwapRelation { edges })
}

/// Injection from negative to positive arguments along the swap relation,
/// stored as `(negative, positive)` pairs sorted by negative argument.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        Matching { pairs }
    }

    /// The positive argument cancelling `negative`.
    pub fn phi(&self, negative: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.0 == negative).map(|p| p.1)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    fn is_injective(&self) -> bool {
        let images: BTreeSet<usize> = self.pairs.iter().map(|p| p.1).collect();
        images.len() == self.pairs.len()
    }
}

/// Why [`find_explanation`] did or did not produce a matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchOutcome {
    Matched {
        arguments: ArgumentPartition,
        matching: Matching,
    },
    NotNecessary,
    TooFewPositive {
        arguments: ArgumentPartition,
    },
    /// Necessary, but not explainable by order-2 swaps and dominance.
    NoCoveringMatching {
        arguments: ArgumentPartition,
        matched: usize,
    },
}

impl MatchOutcome {
    pub fn matching(&self) -> Option<&Matching> {
        match self {
            MatchOutcome::Matched { matching, .. } => Some(matching),
            _ => None,
        }
    }
}

/// Term-by-term explanation search on binary scales. Swap edges are decided
/// on demand, only between the query's positive and negative arguments.
pub fn find_explanation_detailed(engine: &Engine, q: &Query) -> Result<MatchOutcome> {
    find_with(engine, q, |gain, loss| swap_is_necessary(engine, gain, loss))
}

/// Same as [`find_explanation_detailed`] with a precomputed swap relation.
pub fn find_explanation_with(engine: &Engine, q: &Query, relation: &SwapRelation) -> Result<MatchOutcome> {
    find_with(engine, q, |gain, loss| Ok(relation.contains(gain, loss)))
}

pub fn find_explanation(engine: &Engine, q: &Query) -> Result<Option<Matching>> {
    Ok(find_explanation_detailed(engine, q)?.matching().cloned())
}

fn find_with(engine: &Engine, q: &Query, mut edge: impl FnMut(usize, usize) -> Result<bool>) -> Result<MatchOutcome> {
    engine.scales().require_binary()?;
    let decision = engine.decide(q);
    let Some(covector) = decision.covector.as_ref() else {
        return Ok(MatchOutcome::NotNecessary);
    };
    let arguments = argument_partition(covector, engine.index())?;
    if arguments.positive.len() < arguments.negative.len() {
        return Ok(MatchOutcome::TooFewPositive { arguments });
    }
    if !decision.is_necessary() {
        return Ok(MatchOutcome::NotNecessary);
    }
    let mut adjacency = Vec::with_capacity(arguments.negative.len());
    for &loss in &arguments.negative {
        let mut row = Vec::new();
        for (r, &gain) in arguments.positive.iter().enumerate() {
            if edge(gain, loss)? {
                row.push(r);
            }
        }
        adjacency.push(row);
    }
    let partner = maximum_matching(arguments.positive.len(), &adjacency);
    let pairs: Vec<(usize, usize)> = partner
        .iter()
        .enumerate()
        .filter_map(|(l, r)| r.map(|r| (arguments.negative[l], arguments.positive[r])))
        .collect();
    if pairs.len() < arguments.negative.len() {
        return Ok(MatchOutcome::NoCoveringMatching {
            matched: pairs.len(),
            arguments,
        });
    }
    Ok(MatchOutcome::Matched {
        arguments,
        matching: Matching::new(pairs),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderPolicy {
    /// Intermediate terms mix the values of `x` and `y`; remaining dominance
    /// is grouped into one final step.
    Shortest,
    /// Open with `x -> rounded x`, swap on reference levels, close with
    /// `rounded y -> y`.
    Reference,
}

/// Order in which negative arguments are cancelled. Swaps on disjoint
/// criteria commute, so every order yields a valid explanation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderPolicy {
    /// Ascending criterion index of the negative argument.
    Index,
    /// No strength model is defined; falls back to [`OrderPolicy::Index`].
    StrongestFirst,
    /// Explicit permutation of the negative arguments.
    AsGiven(Vec<usize>),
}

impl OrderPolicy {
    pub fn resolve(&self, matching: &Matching) -> Result<Vec<usize>> {
        match self {
            OrderPolicy::Index | OrderPolicy::StrongestFirst => Ok(order_by(matching, |a, b| a.cmp(b))),
            OrderPolicy::AsGiven(order) => {
                let given: BTreeSet<usize> = order.iter().copied().collect();
                let expected: BTreeSet<usize> = matching.pairs().iter().map(|p| p.0).collect();
                if given != expected || order.len() != expected.len() {
                    return Err(Error::InvalidParameter(
                        "swap order must be a permutation of the negative arguments".into(),
                    ));
                }
                Ok(order.clone())
            }
        }
    }
}

/// Negative arguments sorted by a caller-supplied comparator.
pub fn order_by(matching: &Matching, mut cmp: impl FnMut(&usize, &usize) -> Ordering) -> Vec<usize> {
    let mut order: Vec<usize> = matching.pairs().iter().map(|p| p.0).collect();
    order.sort_by(|a, b| cmp(a, b));
    order
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepKind {
    Dominance,
    /// `positive` are the criteria where the step's left side is better,
    /// `negative` where it is worse.
    Swap {
        positive: Vec<usize>,
        negative: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub from: Alternative,
    pub to: Alternative,
    pub kind: StepKind,
}

impl Step {
    fn classify(from: Alternative, to: Alternative) -> Step {
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for i in from.differing_criteria(&to) {
            if from.get(i) > to.get(i) {
                positive.push(i);
            } else {
                negative.push(i);
            }
        }
        let kind = if negative.is_empty() {
            StepKind::Dominance
        } else {
            StepKind::Swap { positive, negative }
        };
        Step { from, to, kind }
    }
}

/// A chain of statements from `x` to `y`. Length is counted in steps.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Explanation {
    pub steps: Vec<Step>,
}

impl Explanation {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn swap_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s.kind, StepKind::Swap { .. }))
            .count()
    }

    /// The visited alternatives, `x` first.
    pub fn terms(&self) -> Vec<&Alternative> {
        let mut out: Vec<&Alternative> = self.steps.iter().map(|s| &s.from).collect();
        if let Some(last) = self.steps.last() {
            out.push(&last.to);
        }
        out
    }

    /// Checks the chain from `q.x` to `q.y`: consecutive steps connect, every
    /// dominance step is Pareto dominance, and every swap changes exactly its
    /// named criteria, has order at most `max_order` and is necessary.
    pub fn validate(&self, engine: &Engine, q: &Query, max_order: usize) -> std::result::Result<(), String> {
        let Some(first) = self.steps.first() else {
            return if q.x == q.y {
                Ok(())
            } else {
                Err("empty explanation for distinct alternatives".into())
            };
        };
        if first.from != q.x {
            return Err("explanation does not start at x".into());
        }
        if self.steps.last().map(|s| &s.to) != Some(&q.y) {
            return Err("explanation does not end at y".into());
        }
        for (k, step) in self.steps.iter().enumerate() {
            if k > 0 && self.steps[k - 1].to != step.from {
                return Err(format!("step {k} does not chain"));
            }
            let changed = step.from.differing_criteria(&step.to);
            match &step.kind {
                StepKind::Dominance => {
                    if !dominates(&step.from, &step.to).map_err(|e| e.to_string())? {
                        return Err(format!("step {k} is not a dominance"));
                    }
                }
                StepKind::Swap { positive, negative } => {
                    if positive.is_empty() || negative.is_empty() {
                        return Err(format!("step {k} is a swap without arguments on both sides"));
                    }
                    let mut named: Vec<usize> = positive.iter().chain(negative).copied().collect();
                    named.sort_unstable();
                    if named != changed {
                        return Err(format!("step {k} changes criteria other than the named ones"));
                    }
                    if changed.len() > max_order {
                        return Err(format!("step {k} has order {} > {max_order}", changed.len()));
                    }
                    let sq = Query::new(step.from.clone(), step.to.clone()).map_err(|e| e.to_string())?;
                    if !engine.is_necessary(&sq) {
                        return Err(format!("step {k} is not necessary"));
                    }
                }
            }
        }
        Ok(())
    }

    /// One alternative per line, changed values wrapped in `[...]`, with the
    /// justification of each step.
    pub fn render(&self, instance: &Instance) -> String {
        let mut out = String::new();
        let Some(first) = self.steps.first() else {
            return out;
        };
        let _ = writeln!(out, "   {}", instance.format_alternative(&first.from));
        for step in &self.steps {
            let changed = step.from.differing_criteria(&step.to);
            let values: Vec<String> = instance
                .criteria()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let v = step.to.get(i).map_or_else(|| "*".to_string(), |v| c.format_value(v));
                    if changed.contains(&i) {
                        format!("[{v}]")
                    } else {
                        v
                    }
                })
                .collect();
            let why = match &step.kind {
                StepKind::Dominance => "dominance".to_string(),
                StepKind::Swap { positive, negative } => {
                    let names = |ids: &[usize]| {
                        ids.iter()
                            .map(|&i| instance.criteria()[i].name.as_str())
                            .collect::<Vec<_>>()
                            .join(", ")
                    };
                    format!("swap {{{}}} >= {{{}}}", names(positive), names(negative))
                }
            };
            let _ = writeln!(out, ">= ({})    by {}", values.join(", "), why);
        }
        out
    }
}

/// Turns a covering matching into a sequence of alternatives.
pub fn render_sequence(
    engine: &Engine,
    q: &Query,
    matching: &Matching,
    policy: RenderPolicy,
    order: &[usize],
) -> Result<Explanation> {
    let decision = engine.decide(q);
    let (Some(covector), Some(rounded)) = (&decision.covector, &decision.rounded) else {
        return Err(Error::Unbounded {
            criterion: decision.boundedness.criterion().unwrap_or(0),
        });
    };
    let arguments = argument_partition(covector, engine.index())?;
    for &k in &arguments.negative {
        if matching.phi(k).is_none() {
            return Err(Error::UncoveredArgument(k));
        }
    }
    if !matching.is_injective() || matching.len() != arguments.negative.len() {
        return Err(Error::InvalidParameter(
            "matching is not an injection from the negative arguments".into(),
        ));
    }
    let order = OrderPolicy::AsGiven(order.to_vec()).resolve(matching)?;

    let (start, source) = match policy {
        RenderPolicy::Shortest => (q.x.clone(), q.y.clone()),
        RenderPolicy::Reference => rounded.concrete(q),
    };
    let mut steps = Vec::new();
    let mut current = q.x.clone();
    if current != start {
        steps.push(Step::classify(current.clone(), start.clone()));
        current = start;
    }
    for &loss in &order {
        let gain = matching.phi(loss).expect("checked above");
        let mut next = current.clone();
        next.set(gain, source.get(gain).cloned());
        next.set(loss, source.get(loss).cloned());
        steps.push(Step::classify(current.clone(), next.clone()));
        current = next;
    }
    if current != q.y {
        steps.push(Step::classify(current, q.y.clone()));
    }
    Ok(Explanation { steps })
}

/// Search limits for [`shortest_explanation_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest number of criteria a swap step may change.
    pub max_order: usize,
    /// Maximum number of expanded states.
    pub budget: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_order: 2,
            budget: 100_000,
        }
    }
}

/// Breadth-first search for a minimum-step explanation over the augmented
/// scales `V_i + {x_i, y_i}`. Dominance moves of any width are single edges;
/// swap moves change between two and `max_order` criteria, trade a gain on
/// some against a loss on others, and must be necessary. Necessity is memoized on the step covector.
pub fn shortest_explanation_search(engine: &Engine, q: &Query, limits: SearchLimits) -> Result<Option<Explanation>> {
    if limits.max_order < 2 {
        return Err(Error::InvalidParameter("max order must be at least 2".into()));
    }
    if q.x == q.y {
        return Ok(Some(Explanation::default()));
    }
    if !engine.is_necessary(q) {
        return Ok(None);
    }
    let n = q.n();
    let levels: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let (x, y) = q.pair(i);
            let mut l: BTreeSet<Rational> = engine.scales().levels(i).iter().cloned().collect();
            l.insert(x.clone());
            l.insert(y.clone());
            l.into_iter().collect()
        })
        .collect();
    let locate = |alt: &Alternative| -> Vec<usize> {
        (0..n)
            .map(|i| levels[i].binary_search(alt.get(i).unwrap()).unwrap())
            .collect()
    };
    let to_alt = |s: &[usize]| Alternative::from_values(s.iter().enumerate().map(|(i, &v)| levels[i][v].clone()));

    // Per criterion and value pair, the slot coefficients of the rounded
    // step, or None when the pair makes any step unbounded.
    let pair_coeffs = per_criterion_coefficients(engine, &levels);
    let mut memo: HashMap<Covector, bool> = HashMap::new();
    let mut necessary = |from: &[usize], to: &[usize]| -> bool {
        let mut c = Vec::with_capacity(engine.index().len());
        for i in 0..n {
            match &pair_coeffs[i][from[i]][to[i]] {
                Some(part) => c.extend_from_slice(part),
                None => return false,
            }
        }
        let c = Covector(c);
        if let Some(&v) = memo.get(&c) {
            return v;
        }
        let v = engine.certify(&c).expect("same index set").is_some();
        memo.insert(c, v);
        v
    };

    let start = locate(&q.x);
    let goal = locate(&q.y);
    let mut parent: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    parent.insert(start.clone(), start.clone());
    let mut queue = VecDeque::from([start.clone()]);
    let mut expanded = 0usize;

    while let Some(state) = queue.pop_front() {
        expanded += 1;
        if expanded > limits.budget {
            return Err(Error::BudgetExceeded(limits.budget));
        }
        for next in neighbours(&state, &levels, limits.max_order) {
            if parent.contains_key(&next) {
                continue;
            }
            let is_dominance = next.iter().zip(&state).all(|(t, s)| t <= s);
            if !is_dominance && !necessary(&state, &next) {
                continue;
            }
            parent.insert(next.clone(), state.clone());
            if next == goal {
                let mut path = vec![next];
                while path.last() != Some(&start) {
                    let p = parent[path.last().unwrap()].clone();
                    path.push(p);
                }
                path.reverse();
                let steps = path
                    .windows(2)
                    .map(|w| Step::classify(to_alt(&w[0]), to_alt(&w[1])))
                    .collect();
                return Ok(Some(Explanation { steps }));
            }
            queue.push_back(next);
        }
    }
    Ok(None)
}

fn per_criterion_coefficients(engine: &Engine, levels: &[Vec<Rational>]) -> Vec<Vec<Vec<Option<Vec<i64>>>>> {
    let n = levels.len();
    let base: Vec<Rational> = levels.iter().map(|l| l[0].clone()).collect();
    (0..n)
        .map(|i| {
            let range = engine.index().range(i);
            levels[i]
                .iter()
                .map(|a| {
                    levels[i]
                        .iter()
                        .map(|b| {
                            let mut x = base.clone();
                            let mut y = base.clone();
                            x[i] = a.clone();
                            y[i] = b.clone();
                            let q = Query::new(Alternative::from_values(x), Alternative::from_values(y)).ok()?;
                            let c = engine.rounded_covector(&q).ok()?;
                            Some(c.0[range.clone()].to_vec())
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// States reachable in one move: every state dominated by `state`, then
/// every state differing on `2..=max_order` criteria that is better on at
/// least one of them and worse on at least one.
fn neighbours(state: &[usize], levels: &[Vec<Rational>], max_order: usize) -> Vec<Vec<usize>> {
    let n = state.len();
    let mut out = Vec::new();

    // Dominated states, odometer over [0, state_i].
    let mut t = vec![0usize; n];
    loop {
        if t != state {
            out.push(t.clone());
        }
        let mut pos = 0;
        while pos < n && t[pos] == state[pos] {
            t[pos] = 0;
            pos += 1;
        }
        if pos == n {
            break;
        }
        t[pos] += 1;
    }

    for order in 2..=max_order.min(n) {
        for subset in combinations(n, order) {
            let mut choice = vec![0usize; order];
            loop {
                let valid = subset.iter().zip(&choice).all(|(&i, &v)| v != state[i]);
                if valid {
                    let mut next = state.to_vec();
                    for (&i, &v) in subset.iter().zip(&choice) {
                        next[i] = v;
                    }
                    let gains = next.iter().zip(state).any(|(a, b)| a < b);
                    let losses = next.iter().zip(state).any(|(a, b)| a > b);
                    if gains && losses {
                        out.push(next);
                    }
                }
                let mut pos = 0;
                while pos < order && choice[pos] + 1 == levels[subset[pos]].len() {
                    choice[pos] = 0;
                    pos += 1;
                }
                if pos == order {
                    break;
                }
                choice[pos] += 1;
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Three-criterion family whose shortest order-2 explanation of `x >= y`
/// takes exactly `2p` swaps. Returns the instance, with `x` and `y` among
/// its alternatives, and the query.
pub fn worst_case_instance(p: usize) -> Result<(Instance, Query)> {
    if p < 1 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    let criteria = vec![
        Criterion::numeric("c1"),
        Criterion::numeric("c2"),
        Criterion::numeric("c3"),
    ];
    let p_i = p as i64;
    let mut statements = Vec::with_capacity(2 * p);
    let mut label = 0;
    let mut push = |better: [Option<i64>; 3], worse: [Option<i64>; 3]| {
        label += 1;
        statements.push(Statement::new(
            format!("p{label}"),
            Alternative::from_partial_ints(&better),
            Alternative::from_partial_ints(&worse),
        ));
    };
    for j in 0..p_i {
        push([Some(2 * j), Some(-j), None], [Some(2 * j + 1), Some(-j - 1), None]);
    }
    for j in 0..p_i {
        push([Some(2 * j + 1), None, Some(-j)], [Some(2 * j + 2), None, Some(-j - 1)]);
    }
    let x = Alternative::from_ints(&[0, 0, 0]);
    let y = Alternative::from_ints(&[2 * p_i, -p_i, -p_i]);
    let mut alternatives = IndexMap::new();
    alternatives.insert("x".to_string(), x.clone());
    alternatives.insert("y".to_string(), y.clone());
    let instance = Instance::new(criteria, alternatives, statements)?;
    Ok((instance, Query::new(x, y)?))
}

/// Edge class in the necessary-preference graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeClass {
    Dominance,
    Statement,
    Derived,
}

/// Grid points and classified edges `(from, to, class)`.
pub type NecessaryGraph = (Vec<Alternative>, Vec<(usize, usize, EdgeClass)>);

/// Necessary preference between all points of the reference grid on binary
/// scales, as `(from, to, class)` with `from != to`. With `reduce`, edges
/// implied by a two-step strict path are dropped.
pub fn necessary_graph(engine: &Engine, reduce: bool) -> Result<NecessaryGraph> {
    engine.scales().require_binary()?;
    let n = engine.instance().n();
    let choices: Vec<Vec<Option<Rational>>> = (0..n)
        .map(|i| {
            let l = engine.scales().levels(i);
            if l.is_empty() {
                vec![Some(int(0))]
            } else {
                l.iter().cloned().map(Some).collect()
            }
        })
        .collect();
    let mut nodes = vec![Alternative::new(vec![])];
    for c in &choices {
        nodes = nodes
            .into_iter()
            .flat_map(|a| {
                c.iter().map(move |v| {
                    let mut e = a.entries().to_vec();
                    e.push(v.clone());
                    Alternative::new(e)
                })
            })
            .collect();
    }
    // Top levels first, as in the usual lattice drawing.
    nodes.reverse();
    let m = nodes.len();
    let mut relation = vec![vec![false; m]; m];
    for a in 0..m {
        for b in 0..m {
            if a != b {
                let q = Query::new(nodes[a].clone(), nodes[b].clone())?;
                relation[a][b] = engine.is_necessary(&q);
            }
        }
    }
    let strict = |a: usize, b: usize| relation[a][b] && !relation[b][a];
    let mut edges = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if !relation[a][b] {
                continue;
            }
            if reduce && strict(a, b) && (0..m).any(|c| c != a && c != b && strict(a, c) && strict(c, b)) {
                continue;
            }
            let class = if dominates(&nodes[a], &nodes[b])? {
                EdgeClass::Dominance
            } else if engine
                .instance()
                .statements()
                .iter()
                .any(|s| statement_matches(s, &nodes[a], &nodes[b]))
            {
                EdgeClass::Statement
            } else {
                EdgeClass::Derived
            };
            edges.push((a, b, class));
        }
    }
    Ok((nodes, edges))
}

fn statement_matches(s: &Statement, a: &Alternative, b: &Alternative) -> bool {
    (0..a.len()).all(|i| match (s.better.get(i), s.worse.get(i)) {
        (Some(sb), Some(sw)) => a.get(i) == Some(sb) && b.get(i) == Some(sw),
        _ => a.get(i) == b.get(i),
    })
}

/// DOT rendering of [`necessary_graph`]: dominance edges double, statement
/// edges dotted, derived edges plain.
pub fn necessary_graph_dot(engine: &Engine, reduce: bool) -> Result<String> {
    let (nodes, edges) = necessary_graph(engine, reduce)?;
    let inst = engine.instance();
    let mut out = String::from("digraph necessary {\n  node [shape=box, style=rounded];\n");
    for (k, node) in nodes.iter().enumerate() {
        let _ = writeln!(out, "  n{k} [label=\"{}\"];", escape(&inst.format_alternative(node)));
    }
    for (a, b, class) in edges {
        let style = match class {
            EdgeClass::Dominance => "[color=\"black:invis:black\"]",
            EdgeClass::Statement => "[style=dotted]",
            EdgeClass::Derived => "[style=solid]",
        };
        let _ = writeln!(out, "  n{a} -> n{b} {style};");
    }
    out.push_str("}\n");
    Ok(out)
}

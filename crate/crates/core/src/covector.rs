//! Covectors over elementary preference slots.
//!
//! Slot `(i, k)` stands for the unknown utility increment between the
//! consecutive reference levels `k` and `k + 1` of criterion `i`. A query on
//! the reference scales maps to a `{-1, 0, +1}` vector over the slots, and
//! `u(x) - u(y)` is the dot product of that vector with the increments.

use std::fmt;
use std::ops::{Add, Range};

use crate::error::{Error, Result};
use crate::model::{Alternative, Instance, Rational, ReferenceScale};
use crate::rounding::{boundedness, Query};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub criterion: usize,
    /// Zero-based: the increment from level `k` to level `k + 1`.
    pub k: usize,
}

/// Lexicographically ordered slots `(i, k)`, `0 <= k < p_i - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    offsets: Vec<usize>,
    slots: Vec<Slot>,
}

impl IndexSet {
    pub fn new(scales: &ReferenceScale) -> Self {
        let mut offsets = Vec::with_capacity(scales.n() + 1);
        let mut slots = Vec::new();
        for i in 0..scales.n() {
            offsets.push(slots.len());
            let p = scales.levels(i).len();
            slots.extend((0..p.saturating_sub(1)).map(|k| Slot { criterion: i, k }));
        }
        offsets.push(slots.len());
        IndexSet { offsets, slots }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn range(&self, criterion: usize) -> Range<usize> {
        self.offsets[criterion]..self.offsets[criterion + 1]
    }

    pub fn index_of(&self, slot: Slot) -> Option<usize> {
        let r = self.range(slot.criterion);
        (slot.k < r.len()).then(|| r.start + slot.k)
    }

    pub fn zero(&self) -> Covector {
        Covector(vec![0; self.len()])
    }

    /// The elementary dominance covector of slot number `index`.
    pub fn unit(&self, index: usize) -> Covector {
        let mut c = self.zero();
        c.0[index] = 1;
        c
    }

    /// On binary scales, the covector of the order-2 swap `({gain} >= {loss})`.
    pub fn swap_target(&self, gain: usize, loss: usize) -> Result<Covector> {
        let mut c = self.zero();
        for (criterion, sign) in [(gain, 1), (loss, -1)] {
            let r = self.range(criterion);
            if r.len() != 1 {
                return Err(Error::NonBinaryScale {
                    criterion,
                    size: r.len() + 1,
                });
            }
            c.0[r.start] = sign;
        }
        Ok(c)
    }
}

/// Integer coefficients over an [`IndexSet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Covector(pub Vec<i64>);

impl Covector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// No negative coefficient: a dominance covector.
    pub fn is_dominance(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn dot(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w).map(|(c, w)| c * w).sum()
    }

    pub fn dot_rational(&self, w: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(w)
            .map(|(c, w)| w * Rational::from_integer((*c).into()))
            .sum()
    }

    pub fn scaled(&self, factor: i64) -> Covector {
        Covector(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn checked_add(&self, other: &Covector) -> Result<Covector> {
        covector_sum(self, other)
    }
}

impl Add for &Covector {
    type Output = Covector;

    /// Panics on index-set mismatch; see [`covector_sum`] for the checked form.
    fn add(self, rhs: &Covector) -> Covector {
        covector_sum(self, rhs).expect("covectors over the same index set")
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| format!("{c:+}").replace("+0", "0")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn covector_sum(a: &Covector, b: &Covector) -> Result<Covector> {
    if a.len() != b.len() {
        return Err(Error::IndexMismatch);
    }
    Ok(Covector(a.0.iter().zip(&b.0).map(|(a, b)| a + b).collect()))
}

/// Covector of a query whose two sides lie on the reference scales.
/// Wildcard positions contribute nothing.
pub fn covector_of(x: &Alternative, y: &Alternative, scales: &ReferenceScale, index: &IndexSet) -> Result<Covector> {
    let mut c = index.zero();
    for i in 0..scales.n() {
        let (Some(xi), Some(yi)) = (x.get(i), y.get(i)) else {
            continue;
        };
        let pos = |v: &Rational| {
            scales.position(i, v).ok_or_else(|| Error::NotOnScale {
                criterion: i,
                value: crate::model::format_rational(v),
            })
        };
        let (px, py) = (pos(xi)?, pos(yi)?);
        let base = index.range(i).start;
        // Slot k sits between levels k and k + 1.
        if px > py {
            c.0[base + py..base + px].iter_mut().for_each(|s| *s = 1);
        } else {
            c.0[base + px..base + py].iter_mut().for_each(|s| *s = -1);
        }
    }
    Ok(c)
}

/// Covector of the rounded query, computed directly from the raw values:
/// `+1` on increments fully inside `[y_i, x_i]`, `-1` on increments meeting
/// `]x_i, y_i[`.
pub fn covector_of_rounded_query(q: &Query, scales: &ReferenceScale, index: &IndexSet) -> Result<Covector> {
    if let Some(criterion) = boundedness(q, scales).criterion() {
        return Err(Error::Unbounded { criterion });
    }
    let mut c = index.zero();
    for i in 0..q.n() {
        let (x, y) = q.pair(i);
        let levels = scales.levels(i);
        let base = index.range(i).start;
        for (k, pair) in levels.windows(2).enumerate() {
            let (lo, hi) = (&pair[0], &pair[1]);
            c.0[base + k] = if y <= lo && hi <= x {
                1
            } else if x < y && lo < y && hi > x {
                -1
            } else {
                0
            };
        }
    }
    Ok(c)
}

/// Positive, negative and neutral arguments on binary scales.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ArgumentPartition {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
    pub neutral: Vec<usize>,
}

pub fn argument_partition(c: &Covector, index: &IndexSet) -> Result<ArgumentPartition> {
    if c.len() != index.len() {
        return Err(Error::IndexMismatch);
    }
    let mut out = ArgumentPartition::default();
    for i in 0..index.n() {
        let r = index.range(i);
        match r.len() {
            0 => out.neutral.push(i),
            1 => match c.0[r.start].signum() {
                1 => out.positive.push(i),
                -1 => out.negative.push(i),
                _ => out.neutral.push(i),
            },
            len => {
                return Err(Error::NonBinaryScale {
                    criterion: i,
                    size: len + 1,
                })
            }
        }
    }
    Ok(out)
}

/// One line per criterion listing each increment and its coefficient.
pub fn dump(c: &Covector, instance: &Instance, scales: &ReferenceScale, index: &IndexSet) -> String {
    let width = instance.criteria().iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (i, criterion) in instance.criteria().iter().enumerate() {
        let levels = scales.levels(i);
        let slots: Vec<String> = index
            .range(i)
            .enumerate()
            .map(|(k, s)| {
                format!(
                    "[{} .. {}]:{:+}",
                    criterion.format_value(&levels[k]),
                    criterion.format_value(&levels[k + 1]),
                    c.0[s]
                )
                .replace(":+0", ":0")
            })
            .collect();
        let body = if slots.is_empty() {
            "(no slots)".to_string()
        } else {
            slots.join("  ")
        };
        out.push_str(&format!("{:width$}  {}\n", criterion.name, body));
    }
    out
}

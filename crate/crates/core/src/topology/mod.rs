//! Finite topological spaces presented by their specialization preorder.
//!
//! A finite space is Alexandrov: its closed sets are exactly the sets closed
//! downwards under `x ⤳ y` (read: `y ∈ cl{x}`). Every truncated spectrum in
//! this crate is checked against this engine.

mod dot;
mod trichotomy;

pub use dot::to_dot;
pub use trichotomy::{trichotomy_report, PointMeta, SymbolicContext, TrichotomyContext, TrichotomyWitness};

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::Exec;

/// Hard limit imposed by the bitmask representation.
pub const MAX_POINTS: usize = 64;

/// Default limit for operations that enumerate closed sets.
pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("a finite space holds at most {MAX_POINTS} points, got {0}")]
    TooManyPoints(usize),
    #[error("exhaustive search needs at most {bound} points, the space has {points}")]
    BoundExceeded { points: usize, bound: usize },
    #[error("unknown point label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("point index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("the set is empty")]
    EmptySet,
    #[error("the set is not closed")]
    NotClosed,
    #[error("the closed set is reducible")]
    Reducible,
}

/// A set of points of a [`FiniteSpace`], as a bitmask over point indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> PointSet {
        if n >= 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> PointSet {
        PointSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> PointSet {
        PointSet(it.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn union(self, o: PointSet) -> PointSet {
        PointSet(self.0 | o.0)
    }

    pub fn intersection(self, o: PointSet) -> PointSet {
        PointSet(self.0 & o.0)
    }

    pub fn difference(self, o: PointSet) -> PointSet {
        PointSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: PointSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite space: labelled points and a reflexive, transitive
/// specialization relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    labels: Vec<String>,
    // down[x] = cl{x}
    down: Vec<PointSet>,
    bound: usize,
}

impl FiniteSpace {
    /// Builds a space from generating pairs `(x, y)` meaning `x ⤳ y`; the
    /// reflexive-transitive closure is taken.
    pub fn new(labels: Vec<String>, spec: &[(usize, usize)]) -> Result<Self, TopologyError> {
        let n = labels.len();
        if n > MAX_POINTS {
            return Err(TopologyError::TooManyPoints(n));
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(TopologyError::DuplicateLabel(l.clone()));
            }
        }
        let mut down: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
        for &(x, y) in spec {
            if x >= n || y >= n {
                return Err(TopologyError::IndexOutOfRange(x.max(y)));
            }
            down[x].insert(y);
        }
        // Warshall
        for k in 0..n {
            for x in 0..n {
                if down[x].contains(k) {
                    down[x] = down[x].union(down[k]);
                }
            }
        }
        Ok(FiniteSpace { labels, down, bound: DEFAULT_EXHAUSTIVE_BOUND })
    }

    /// Builds a space from a predicate `spec(x, y)` for `x ⤳ y`.
    pub fn from_fn<F: Fn(usize, usize) -> bool>(labels: Vec<String>, spec: F) -> Result<Self, TopologyError> {
        let n = labels.len();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| spec(x, y)).collect();
        Self::new(labels, &pairs)
    }

    /// Sets the exhaustive-enumeration bound (clamped to [`MAX_POINTS`]).
    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = bound.min(MAX_POINTS);
        self
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, TopologyError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| TopologyError::UnknownLabel(label.to_string()))
    }

    pub fn set_of(&self, labels: &[&str]) -> Result<PointSet, TopologyError> {
        labels.iter().map(|l| self.index_of(l)).collect::<Result<Vec<_>, _>>().map(PointSet::from_indices)
    }

    pub fn labels_of(&self, s: PointSet) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    pub fn all(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// `x ⤳ y`, i.e. `y ∈ cl{x}`.
    pub fn specializes(&self, x: usize, y: usize) -> bool {
        self.down[x].contains(y)
    }

    pub fn point_closure(&self, x: usize) -> PointSet {
        self.down[x]
    }

    /// The points specializing to `y`: the smallest open set containing `y`.
    pub fn up(&self, y: usize) -> PointSet {
        PointSet::from_indices((0..self.len()).filter(|&x| self.down[x].contains(y)))
    }

    pub fn closure(&self, s: PointSet) -> PointSet {
        s.iter().fold(PointSet::EMPTY, |acc, x| acc.union(self.down[x]))
    }

    /// Closure of a set given by labels.
    pub fn closure_of_labels(&self, labels: &[&str]) -> Result<PointSet, TopologyError> {
        Ok(self.closure(self.set_of(labels)?))
    }

    pub fn is_closed(&self, s: PointSet) -> bool {
        self.closure(s) == s
    }

    fn check_bound(&self) -> Result<(), TopologyError> {
        if self.len() > self.bound {
            return Err(TopologyError::BoundExceeded { points: self.len(), bound: self.bound });
        }
        Ok(())
    }

    /// All closed sets, sorted by bitmask.
    pub fn closed_sets(&self, exec: Exec) -> Result<Vec<PointSet>, TopologyError> {
        self.check_bound()?;
        let n = self.len();
        let up: Vec<PointSet> = (0..n).map(|y| self.up(y)).collect();
        // Fix the first few decisions sequentially, then enumerate the
        // remaining subtrees independently.
        let split = n.min(6);
        let mut prefixes = vec![(PointSet::EMPTY, PointSet::EMPTY)];
        for (x, up_x) in up.iter().enumerate().take(split) {
            prefixes = prefixes
                .into_iter()
                .flat_map(|(inc, exc)| {
                    if inc.contains(x) || exc.contains(x) {
                        vec![(inc, exc)]
                    } else {
                        vec![(inc.union(self.down[x]), exc), (inc, exc.union(*up_x))]
                    }
                })
                .collect();
        }
        let mut out: Vec<PointSet> = exec
            .map(&prefixes, |&(inc, exc)| {
                let mut acc = Vec::new();
                self.extend_closed(split, inc, exc, &up, &mut acc);
                acc
            })
            .into_iter()
            .flatten()
            .collect();
        out.sort();
        Ok(out)
    }

    fn extend_closed(&self, x: usize, inc: PointSet, exc: PointSet, up: &[PointSet], out: &mut Vec<PointSet>) {
        let mut x = x;
        while x < self.len() && (inc.contains(x) || exc.contains(x)) {
            x += 1;
        }
        if x == self.len() {
            out.push(inc);
            return;
        }
        self.extend_closed(x + 1, inc.union(self.down[x]), exc, up, out);
        self.extend_closed(x + 1, inc, exc.union(up[x]), up, out);
    }

    fn check_closed_nonempty(&self, s: PointSet) -> Result<(), TopologyError> {
        if s.is_empty() {
            return Err(TopologyError::EmptySet);
        }
        if !self.is_closed(s) {
            return Err(TopologyError::NotClosed);
        }
        Ok(())
    }

    /// Whether the nonempty closed set `s` is not a union of two proper
    /// closed subsets.
    ///
    /// Every proper closed `A ⊊ s` misses some `x ∈ s` and so lies inside the
    /// closed set `s ∖ up(x)`; enlarging `A` only shrinks the complement, so
    /// it suffices to test `cl(s ∩ up(x)) ≠ s` for each `x`.
    pub fn is_irreducible(&self, s: PointSet) -> Result<bool, TopologyError> {
        self.check_closed_nonempty(s)?;
        Ok(s.iter().all(|x| self.closure(s.intersection(self.up(x))) == s))
    }

    /// The same decision by scanning every pair of closed subsets of `s`.
    pub fn is_irreducible_exhaustive(&self, s: PointSet) -> Result<bool, TopologyError> {
        self.check_closed_nonempty(s)?;
        let subs: Vec<PointSet> = self
            .closed_sets(Exec::Sequential)?
            .into_iter()
            .filter(|a| a.is_subset(s) && *a != s)
            .collect();
        Ok(!subs.iter().any(|a| subs.iter().any(|b| a.union(*b) == s)))
    }

    /// Points whose closure is exactly `s`.
    pub fn generic_points(&self, s: PointSet) -> Result<Vec<usize>, TopologyError> {
        self.check_closed_nonempty(s)?;
        Ok(s.iter().filter(|&p| self.down[p] == s).collect())
    }

    /// Enumerates irreducible closed sets and their generic points.
    pub fn check_sober(&self, exec: Exec) -> Result<SoberReport, TopologyError> {
        let closed = self.closed_sets(exec)?;
        let found: Vec<Option<Irreducible>> = exec.map(&closed, |&s| {
            if s.is_empty() || !self.is_irreducible(s).expect("closed and nonempty") {
                return None;
            }
            let generics = self.generic_points(s).expect("closed and nonempty");
            Some(Irreducible { set: s, generics })
        });
        let irreducibles: Vec<Irreducible> = found.into_iter().flatten().collect();
        let sober = irreducibles.iter().all(|i| !i.generics.is_empty());
        Ok(SoberReport { sober, irreducibles })
    }

    /// Identifies topologically indistinguishable points.
    ///
    /// Classes are numbered by first member; a class label is its members'
    /// labels joined by `|`. Returns the quotient and the map point ↦ class.
    pub fn t0_quotient(&self) -> (FiniteSpace, Vec<usize>) {
        let n = self.len();
        let mut class = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        let mut labels: Vec<String> = Vec::new();
        for x in 0..n {
            if class[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            let members: Vec<usize> =
                (x..n).filter(|&y| self.specializes(x, y) && self.specializes(y, x)).collect();
            for &y in &members {
                class[y] = c;
            }
            labels.push(members.iter().map(|&y| self.labels[y].as_str()).collect::<Vec<_>>().join("|"));
        }
        let pairs: Vec<(usize, usize)> = reps
            .iter()
            .enumerate()
            .flat_map(|(cx, &x)| {
                let class = &class;
                self.down[x].iter().map(move |y| (cx, class[y]))
            })
            .collect();
        let q = FiniteSpace::new(labels, &pairs).expect("quotient is smaller").with_bound(self.bound);
        (q, class)
    }

    /// True when `x ⤳ y ⤳ x` forces `x = y`.
    pub fn is_t0(&self) -> bool {
        (0..self.len()).all(|x| (0..self.len()).all(|y| x == y || !(self.specializes(x, y) && self.specializes(y, x))))
    }

    /// A bijection `f` with `x ⤳ y ⇔ f(x) ⤳ f(y)`, found by backtracking.
    pub fn find_isomorphism(&self, other: &FiniteSpace) -> Option<Vec<usize>> {
        if self.len() != other.len() {
            return None;
        }
        let mut map = vec![usize::MAX; self.len()];
        let mut used = vec![false; self.len()];
        if self.extend_iso(other, 0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    fn extend_iso(&self, other: &FiniteSpace, x: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if x == self.len() {
            return true;
        }
        for y in 0..other.len() {
            if used[y] {
                continue;
            }
            let ok = (0..x).all(|z| {
                self.specializes(x, z) == other.specializes(y, map[z])
                    && self.specializes(z, x) == other.specializes(map[z], y)
            }) && self.specializes(x, x) == other.specializes(y, y);
            if ok {
                map[x] = y;
                used[y] = true;
                if self.extend_iso(other, x + 1, map, used) {
                    return true;
                }
                used[y] = false;
            }
        }
        false
    }
}

/// An irreducible closed set with its generic points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irreducible {
    pub set: PointSet,
    pub generics: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoberReport {
    pub sober: bool,
    pub irreducibles: Vec<Irreducible>,
}

impl SoberReport {
    pub fn to_json(&self, space: &FiniteSpace) -> Value {
        let irr: Vec<Value> = self
            .irreducibles
            .iter()
            .map(|i| {
                json!({
                    "set": space.labels_of(i.set),
                    "generics": i.generics.iter().map(|&g| space.label(g)).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({"sober": self.sober, "irreducibles": irr})
    }
}

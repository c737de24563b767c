use serde_json::{json, Value};

use super::{FiniteSpace, PointSet, TopologyError};
use crate::ideal::SymbolicIdeal;

/// Which alternative of the trichotomy for an irreducible closed set holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrichotomyWitness {
    /// A pp-pair `phi/psi` with nothing strictly between on the set.
    MinimalPair { phi: String, psi: String },
    /// The set is the closure of the hull of its generic type.
    GenericClosure { point: usize },
    /// The set is the closure of the hull of its critical type.
    CriticalClosure { point: usize },
}

impl TrichotomyWitness {
    pub fn to_json(&self, space: &FiniteSpace) -> Value {
        match self {
            TrichotomyWitness::MinimalPair { phi, psi } => json!({"kind": "minimal_pair", "phi": phi, "psi": psi}),
            TrichotomyWitness::GenericClosure { point } => {
                json!({"kind": "generic_closure", "point": space.label(*point)})
            }
            TrichotomyWitness::CriticalClosure { point } => {
                json!({"kind": "critical_closure", "point": space.label(*point)})
            }
        }
    }
}

/// Data a spectrum supplies for the trichotomy check.
pub trait TrichotomyContext {
    fn space(&self) -> &FiniteSpace;
    /// The point realizing the generic type of the closed set, if it is a point of the space.
    fn generic_of(&self, c: PointSet) -> Option<usize>;
    /// The point realizing the critical type of the closed set.
    fn critical_of(&self, c: PointSet) -> Option<usize>;
    /// A minimal pair for the closed set, when the context can exhibit one.
    fn minimal_pair(&self, c: PointSet) -> Option<(String, String)>;
}

/// Reports the first alternative the context can witness for the
/// irreducible closed set `c`: a minimal pair, then the generic hull, then
/// the critical hull. Hull witnesses are checked against the closure.
pub fn trichotomy_report<C: TrichotomyContext + ?Sized>(
    ctx: &C,
    c: PointSet,
) -> Result<Option<TrichotomyWitness>, TopologyError> {
    let space = ctx.space();
    if !space.is_irreducible(c)? {
        return Err(TopologyError::Reducible);
    }
    if let Some((phi, psi)) = ctx.minimal_pair(c) {
        return Ok(Some(TrichotomyWitness::MinimalPair { phi, psi }));
    }
    if let Some(p) = ctx.generic_of(c) {
        if space.point_closure(p) == c {
            return Ok(Some(TrichotomyWitness::GenericClosure { point: p }));
        }
    }
    if let Some(p) = ctx.critical_of(c) {
        if space.point_closure(p) == c {
            return Ok(Some(TrichotomyWitness::CriticalClosure { point: p }));
        }
    }
    Ok(None)
}

/// Point invariants used to read off generic and critical types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PointMeta {
    pub ass: SymbolicIdeal,
    pub div: SymbolicIdeal,
    pub ann: SymbolicIdeal,
}

/// A trichotomy context for spectra described by ideal metadata.
///
/// The generic type of a closed set `C` is `⟨⋂ ann, ⋃ Div⟩` and its critical
/// type is `⟨⋃ Ass, ⋂ ann⟩`, taken over the points of `C`; each type is
/// matched to the point whose e-pair representations contain it.
pub struct SymbolicContext<'a> {
    pub space: &'a FiniteSpace,
    pub meta: Vec<PointMeta>,
    /// Every e-pair `⟨I, J⟩` known to present each point.
    pub pairs: Vec<Vec<(SymbolicIdeal, SymbolicIdeal)>>,
    pub minimal: Box<dyn Fn(PointSet) -> Option<(String, String)> + 'a>,
}

impl SymbolicContext<'_> {
    fn lookup(&self, pair: (SymbolicIdeal, SymbolicIdeal)) -> Option<usize> {
        self.pairs.iter().position(|ps| ps.contains(&pair))
    }

    fn fold(&self, c: PointSet, f: impl Fn(&PointMeta) -> SymbolicIdeal, smallest: bool) -> Option<SymbolicIdeal> {
        let it = c.iter().map(|i| f(&self.meta[i]));
        // Ord lists ideals from largest to smallest
        if smallest {
            it.max()
        } else {
            it.min()
        }
    }
}

impl TrichotomyContext for SymbolicContext<'_> {
    fn space(&self) -> &FiniteSpace {
        self.space
    }

    fn generic_of(&self, c: PointSet) -> Option<usize> {
        let ann = self.fold(c, |m| m.ann, true)?;
        let div = self.fold(c, |m| m.div, false)?;
        self.lookup((ann, div))
    }

    fn critical_of(&self, c: PointSet) -> Option<usize> {
        let ass = self.fold(c, |m| m.ass, false)?;
        let ann = self.fold(c, |m| m.ann, true)?;
        self.lookup((ass, ann))
    }

    fn minimal_pair(&self, c: PointSet) -> Option<(String, String)> {
        (self.minimal)(c)
    }
}

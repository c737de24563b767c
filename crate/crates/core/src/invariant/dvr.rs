//! The case `Γ ≅ ℤ`: the spectrum of a discrete valuation domain.
//!
//! Points are `n ≥ 1` (the module `R/J(R)ⁿ`, pair `⟨Γ_{≥1}, Γ_{≥n}⟩`),
//! `∞ = ⟨{∞},{∞}⟩`, `∞⁺ = ⟨{∞}, Γ_{≥1}⟩` and `∞⁻ = ⟨Γ_{≥1}, {∞}⟩`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::{wset_witness, InvariantError, UpsetPair, WSet};
use crate::family::IndexPart;
use crate::ideal::SymbolicIdeal;
use crate::topology::{FiniteSpace, PointMeta, PointSet, SymbolicContext};
use crate::valuegroup::{Cut, ValueGroup};
use crate::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DvrPoint {
    N(u64),
    Inf,
    InfPlus,
    InfMinus,
}

impl DvrPoint {
    /// The standard representative pair, with `Γ = ℤu`.
    pub fn representative(self, gamma: &ValueGroup) -> Result<UpsetPair, InvariantError> {
        let u = gamma.positive_generator().ok_or(InvariantError::NotCyclic)?;
        let at = |n: u64| Cut::AtClosed(u.scale_int(&BigInt::from(n)));
        Ok(match self {
            DvrPoint::N(n) => UpsetPair::new(at(1), at(n)),
            DvrPoint::Inf => UpsetPair::new(Cut::Infinity, Cut::Infinity),
            DvrPoint::InfPlus => UpsetPair::new(Cut::Infinity, at(1)),
            DvrPoint::InfMinus => UpsetPair::new(at(1), Cut::Infinity),
        })
    }

    /// `(Ass, Div, ann)`, with `ChainPos(i)` standing for `J^{i+1}`.
    pub fn metadata(self) -> PointMeta {
        use SymbolicIdeal::*;
        match self {
            DvrPoint::N(n) => PointMeta { ass: SymbolicIdeal::J, div: SymbolicIdeal::J, ann: ChainPos(n - 1) },
            DvrPoint::Inf => PointMeta { ass: Zero, div: Zero, ann: Zero },
            DvrPoint::InfPlus => PointMeta { ass: Zero, div: SymbolicIdeal::J, ann: Zero },
            DvrPoint::InfMinus => PointMeta { ass: SymbolicIdeal::J, div: Zero, ann: Zero },
        }
    }

    /// E-pairs `⟨I, J⟩` presenting the point.
    pub fn pairs(self) -> Vec<(SymbolicIdeal, SymbolicIdeal)> {
        use SymbolicIdeal::*;
        match self {
            DvrPoint::N(n) => vec![(ChainPos(n - 1), SymbolicIdeal::J), (SymbolicIdeal::J, ChainPos(n - 1))],
            DvrPoint::Inf => vec![(Zero, Zero)],
            DvrPoint::InfPlus => vec![(Zero, SymbolicIdeal::J)],
            DvrPoint::InfMinus => vec![(SymbolicIdeal::J, Zero)],
        }
    }

    pub fn label(self) -> String {
        match self {
            DvrPoint::N(n) => n.to_string(),
            DvrPoint::Inf => "inf".into(),
            DvrPoint::InfPlus => "inf+".into(),
            DvrPoint::InfMinus => "inf-".into(),
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            DvrPoint::N(n) => json!({"t": "n", "n": n}),
            other => json!({"t": other.label()}),
        }
    }

    pub fn from_json(value: &Value) -> Result<DvrPoint, InvariantError> {
        let tag = value
            .get("t")
            .and_then(Value::as_str)
            .ok_or_else(|| InvariantError::Parse("point needs a string field \"t\"".into()))?;
        Ok(match tag {
            "n" => match value.get("n").and_then(Value::as_u64) {
                Some(n) if n >= 1 => DvrPoint::N(n),
                _ => return Err(InvariantError::Parse("point \"n\" needs a positive integer \"n\"".into())),
            },
            "inf" => DvrPoint::Inf,
            "inf+" => DvrPoint::InfPlus,
            "inf-" => DvrPoint::InfMinus,
            other => return Err(InvariantError::Parse(format!("unknown point tag {other:?}"))),
        })
    }
}

impl fmt::Display for DvrPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// The label of the ≈-class of `p` for a cyclic value group `ℤu`.
///
/// Finite cuts are written as `Γ_{≥m}`, `Γ_{≥m'}`; the class is `m + m' − 1`.
pub fn dvr_pair_to_point(p: &UpsetPair, gamma: &ValueGroup) -> Result<DvrPoint, InvariantError> {
    let u = gamma.positive_generator().ok_or(InvariantError::NotCyclic)?;
    p.validate(gamma)?;
    let steps = |c: &Cut| -> u64 {
        match c.canonical(gamma) {
            Cut::AtClosed(g) => g
                .checked_div(u)
                .expect("nonzero generator")
                .floor()
                .to_u64()
                .expect("canonical cut sits at a positive multiple"),
            _ => unreachable!("canonical finite cuts are closed"),
        }
    };
    Ok(match (&p.left, &p.right) {
        (Cut::Infinity, Cut::Infinity) => DvrPoint::Inf,
        (Cut::Infinity, _) => DvrPoint::InfPlus,
        (_, Cut::Infinity) => DvrPoint::InfMinus,
        (l, r) => DvrPoint::N(steps(l) + steps(r) - 1),
    })
}

/// Membership in `W_{α,β,γ,δ}`, decided from the definition through a
/// representative pair.
pub fn dvr_in_wset(pt: DvrPoint, w: &WSet, gamma: &ValueGroup) -> Result<bool, InvariantError> {
    let rep = pt.representative(gamma)?;
    Ok(wset_witness(&rep, w, gamma, 1, Exec::Sequential)?.is_some())
}

/// `y ∈ cl{x}`: `∞⁺ ⤳ ∞`, `∞⁻ ⤳ ∞`, and reflexivity.
pub fn dvr_specializes(x: DvrPoint, y: DvrPoint) -> bool {
    x == y || matches!((x, y), (DvrPoint::InfPlus | DvrPoint::InfMinus, DvrPoint::Inf))
}

/// A subset of the spectrum: an index part for the points `n` plus flags.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DvrSet {
    pub part: IndexPart,
    pub inf: bool,
    pub inf_plus: bool,
    pub inf_minus: bool,
}

impl DvrSet {
    pub fn contains(&self, p: DvrPoint) -> bool {
        match p {
            DvrPoint::N(n) => self.part.contains(n),
            DvrPoint::Inf => self.inf,
            DvrPoint::InfPlus => self.inf_plus,
            DvrPoint::InfMinus => self.inf_minus,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.part.to_json(),
            "flags": {"inf": self.inf, "inf+": self.inf_plus, "inf-": self.inf_minus},
        })
    }

    pub fn from_json(value: &Value) -> Result<DvrSet, InvariantError> {
        let part = match value.get("n") {
            Some(v) => IndexPart::from_json(v).map_err(InvariantError::Parse)?,
            None => IndexPart::empty(),
        };
        let flag = |k: &str| value.get("flags").and_then(|f| f.get(k)).and_then(Value::as_bool).unwrap_or(false);
        Ok(DvrSet { part, inf: flag("inf"), inf_plus: flag("inf+"), inf_minus: flag("inf-") })
    }
}

/// The closed-set criterion: `∞⁺` or `∞⁻` forces `∞`, and infinitely many
/// finite points force all three infinite points.
pub fn dvr_closed(c: &DvrSet) -> bool {
    let first = !(c.inf_plus || c.inf_minus) || c.inf;
    let second = !c.part.is_infinite() || (c.inf && c.inf_plus && c.inf_minus);
    first && second
}

/// The least closed superset.
pub fn dvr_closure(c: &DvrSet) -> DvrSet {
    let mut out = c.clone();
    if out.part.is_infinite() {
        out.inf_plus = true;
        out.inf_minus = true;
    }
    if out.inf_plus || out.inf_minus {
        out.inf = true;
    }
    out
}

/// The points `1..=n`, `∞`, `∞⁺`, `∞⁻`, in that order.
pub fn dvr_points(n: u64) -> Vec<DvrPoint> {
    (1..=n).map(DvrPoint::N).chain([DvrPoint::Inf, DvrPoint::InfPlus, DvrPoint::InfMinus]).collect()
}

/// The closed subspace `{1..n, ∞, ∞⁺, ∞⁻}`.
pub fn dvr_truncate(n: u64) -> FiniteSpace {
    let pts = dvr_points(n);
    FiniteSpace::from_fn(pts.iter().map(|p| p.label()).collect(), |x, y| dvr_specializes(pts[x], pts[y]))
        .expect("labels are distinct")
}

/// Metadata-driven trichotomy data for [`dvr_truncate`]`(n)`.
pub fn dvr_trichotomy_context(space: &FiniteSpace, n: u64) -> SymbolicContext<'_> {
    let pts = dvr_points(n);
    SymbolicContext {
        space,
        meta: pts.iter().map(|p| p.metadata()).collect(),
        pairs: pts.iter().map(|p| p.pairs()).collect(),
        minimal: Box::new(|_: PointSet| None),
    }
}

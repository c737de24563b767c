//! Spectra of exceptional rank-one uniserial domains of type `C_k`.
//!
//! Up to topological indistinguishability the points are `N(0,0)`,
//! `N(J,J)`, `N(J,0)`, `N(0,J)` and the families `X_n`, `Y_n`, `Z_n`
//! (`Y` and `Z` only for `k ≥ 1`). Closed sets are characterized by finitely
//! many implications plus one condition on infinite subsets, so they are
//! decided here on finite/cofinite descriptions ([`FamilySet`]).

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::family::IndexPart;
use crate::ideal::{q_power_position, zj_position, zr_position, SymbolicIdeal};
use crate::topology::{FiniteSpace, PointMeta, PointSet, SymbolicContext, TopologyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExceptionalError {
    #[error("family indices start at 1")]
    ZeroIndex,
    #[error("type C_0 has no points Y_n or Z_n")]
    NoYZ,
    #[error("the set is not closed")]
    NotClosed,
    #[error("truncation at N={n} is too small for type C_{k}; need N ≥ max(k, 1)")]
    TruncationTooSmall { k: u64, n: u64 },
    #[error("the unit ideal cannot parametrize this open")]
    UnitNotAllowed,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// A point of `Zg_R / T₀` for type `C_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExcPoint {
    N00,
    NJJ,
    NJ0,
    N0J,
    X(u64),
    Y(u64),
    Z(u64),
}

impl ExcPoint {
    pub fn validate(self, k: u64) -> Result<(), ExceptionalError> {
        match self {
            ExcPoint::X(0) | ExcPoint::Y(0) | ExcPoint::Z(0) => Err(ExceptionalError::ZeroIndex),
            ExcPoint::Y(_) | ExcPoint::Z(_) if k == 0 => Err(ExceptionalError::NoYZ),
            _ => Ok(()),
        }
    }

    pub fn label(self) -> String {
        match self {
            ExcPoint::N00 => "N00".into(),
            ExcPoint::NJJ => "NJJ".into(),
            ExcPoint::NJ0 => "NJ0".into(),
            ExcPoint::N0J => "N0J".into(),
            ExcPoint::X(n) => format!("X{n}"),
            ExcPoint::Y(n) => format!("Y{n}"),
            ExcPoint::Z(n) => format!("Z{n}"),
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            ExcPoint::X(n) => json!({"t": "X", "n": n}),
            ExcPoint::Y(n) => json!({"t": "Y", "n": n}),
            ExcPoint::Z(n) => json!({"t": "Z", "n": n}),
            other => json!({"t": other.label()}),
        }
    }

    pub fn from_json(value: &Value) -> Result<ExcPoint, ExceptionalError> {
        let tag = value
            .get("t")
            .and_then(Value::as_str)
            .ok_or_else(|| ExceptionalError::Parse("point needs a string field \"t\"".into()))?;
        let n = || -> Result<u64, ExceptionalError> {
            match value.get("n").and_then(Value::as_u64) {
                Some(0) => Err(ExceptionalError::ZeroIndex),
                Some(n) => Ok(n),
                None => Err(ExceptionalError::Parse(format!("point {tag:?} needs an integer \"n\""))),
            }
        };
        Ok(match tag {
            "N00" => ExcPoint::N00,
            "NJJ" => ExcPoint::NJJ,
            "NJ0" => ExcPoint::NJ0,
            "N0J" => ExcPoint::N0J,
            "X" => ExcPoint::X(n()?),
            "Y" => ExcPoint::Y(n()?),
            "Z" => ExcPoint::Z(n()?),
            other => return Err(ExceptionalError::Parse(format!("unknown point tag {other:?}"))),
        })
    }
}

impl fmt::Display for ExcPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// `(Ass, Div, ann)` of a point.
pub fn metadata(pt: ExcPoint, k: u64) -> Result<PointMeta, ExceptionalError> {
    pt.validate(k)?;
    use SymbolicIdeal::Zero;
    let j = SymbolicIdeal::J;
    let full = |ann| PointMeta { ass: j, div: j, ann };
    Ok(match pt {
        ExcPoint::N00 => PointMeta { ass: Zero, div: Zero, ann: Zero },
        ExcPoint::NJ0 => PointMeta { ass: j, div: Zero, ann: Zero },
        ExcPoint::N0J => PointMeta { ass: Zero, div: j, ann: Zero },
        ExcPoint::NJJ => full(j),
        ExcPoint::X(n) => full(SymbolicIdeal::ChainPos(x_ann_position(k, n))),
        ExcPoint::Y(n) | ExcPoint::Z(n) => full(SymbolicIdeal::ChainPos(zr_position(k, n).expect("k ≥ 1"))),
    })
}

/// `ann X_n`: `Qⁿ` for `k ≠ 1` and `zⁿJ(R)` for `k = 1`.
fn x_ann_position(k: u64, n: u64) -> u64 {
    if k == 1 {
        zj_position(1, n).expect("k = 1")
    } else {
        q_power_position(k, n)
    }
}

/// E-pairs with two-sided entries known to present the point. `Y_n` is
/// presented by `⟨bR, Ra⟩` with `ab = zⁿ`, which is not of this form.
pub fn presenting_pairs(pt: ExcPoint, k: u64) -> Vec<(SymbolicIdeal, SymbolicIdeal)> {
    use SymbolicIdeal::{ChainPos, Zero};
    let j = SymbolicIdeal::J;
    match pt {
        ExcPoint::N00 => vec![(Zero, Zero)],
        ExcPoint::NJJ => vec![(j, j)],
        ExcPoint::NJ0 => vec![(j, Zero)],
        ExcPoint::N0J => vec![(Zero, j)],
        ExcPoint::X(n) => {
            let p = ChainPos(x_ann_position(k, n));
            vec![(p, j), (j, p)]
        }
        ExcPoint::Z(n) => {
            let p = ChainPos(zr_position(k, n).expect("k ≥ 1"));
            vec![(p, j), (j, p)]
        }
        ExcPoint::Y(_) => vec![],
    }
}

/// A finitely describable set of points.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FamilySet {
    pub x: IndexPart,
    pub y: IndexPart,
    pub z: IndexPart,
    pub n00: bool,
    pub njj: bool,
    pub nj0: bool,
    pub n0j: bool,
}

impl FamilySet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Every point of the spectrum for type `C_k`.
    pub fn everything(k: u64) -> Self {
        let yz = if k == 0 { IndexPart::empty() } else { IndexPart::all() };
        FamilySet { x: IndexPart::all(), y: yz.clone(), z: yz, n00: true, njj: true, nj0: true, n0j: true }
    }

    pub fn from_points<I: IntoIterator<Item = ExcPoint>>(pts: I) -> Self {
        let mut s = FamilySet::empty();
        for p in pts {
            s.insert(p);
        }
        s
    }

    pub fn insert(&mut self, p: ExcPoint) {
        let add = |part: &mut IndexPart, n: u64| {
            *part = part.union(&IndexPart::finite([n]));
        };
        match p {
            ExcPoint::N00 => self.n00 = true,
            ExcPoint::NJJ => self.njj = true,
            ExcPoint::NJ0 => self.nj0 = true,
            ExcPoint::N0J => self.n0j = true,
            ExcPoint::X(n) => add(&mut self.x, n),
            ExcPoint::Y(n) => add(&mut self.y, n),
            ExcPoint::Z(n) => add(&mut self.z, n),
        }
    }

    pub fn validate(&self, k: u64) -> Result<(), ExceptionalError> {
        if k == 0 && !(self.y.is_empty() && self.z.is_empty()) {
            return Err(ExceptionalError::NoYZ);
        }
        Ok(())
    }

    pub fn contains(&self, p: ExcPoint) -> bool {
        match p {
            ExcPoint::N00 => self.n00,
            ExcPoint::NJJ => self.njj,
            ExcPoint::NJ0 => self.nj0,
            ExcPoint::N0J => self.n0j,
            ExcPoint::X(n) => self.x.contains(n),
            ExcPoint::Y(n) => self.y.contains(n),
            ExcPoint::Z(n) => self.z.contains(n),
        }
    }

    pub fn is_finite(&self) -> bool {
        !(self.x.is_infinite() || self.y.is_infinite() || self.z.is_infinite())
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty() && self.y.is_empty() && self.z.is_empty() && !(self.n00 || self.njj || self.nj0 || self.n0j)
    }

    /// The points of a finite set in canonical order; `None` if infinite.
    pub fn points(&self) -> Option<Vec<ExcPoint>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = Vec::new();
        for (flag, p) in [(self.n00, ExcPoint::N00), (self.njj, ExcPoint::NJJ), (self.nj0, ExcPoint::NJ0), (self.n0j, ExcPoint::N0J)] {
            if flag {
                out.push(p);
            }
        }
        let listed = |part: &IndexPart| match part {
            IndexPart::Finite(s) => s.iter().copied().collect::<Vec<_>>(),
            IndexPart::Cofinite(_) => unreachable!("checked finite"),
        };
        out.extend(listed(&self.x).into_iter().map(ExcPoint::X));
        out.extend(listed(&self.y).into_iter().map(ExcPoint::Y));
        out.extend(listed(&self.z).into_iter().map(ExcPoint::Z));
        Some(out)
    }

    pub fn union(&self, o: &FamilySet) -> FamilySet {
        FamilySet {
            x: self.x.union(&o.x),
            y: self.y.union(&o.y),
            z: self.z.union(&o.z),
            n00: self.n00 || o.n00,
            njj: self.njj || o.njj,
            nj0: self.nj0 || o.nj0,
            n0j: self.n0j || o.n0j,
        }
    }

    pub fn is_subset(&self, o: &FamilySet) -> bool {
        self.x.is_subset(&o.x)
            && self.y.is_subset(&o.y)
            && self.z.is_subset(&o.z)
            && (!self.n00 || o.n00)
            && (!self.njj || o.njj)
            && (!self.nj0 || o.nj0)
            && (!self.n0j || o.n0j)
    }

    fn flags_json(&self) -> Value {
        json!({"n00": self.n00, "njj": self.njj, "nj0": self.nj0, "n0j": self.n0j})
    }

    pub fn to_json(&self) -> Value {
        json!({"x": self.x.to_json(), "y": self.y.to_json(), "z": self.z.to_json(), "flags": self.flags_json()})
    }

    /// Finite index parts written as plain arrays.
    pub fn to_compact_json(&self) -> Value {
        json!({
            "x": self.x.to_compact_json(),
            "y": self.y.to_compact_json(),
            "z": self.z.to_compact_json(),
            "flags": self.flags_json(),
        })
    }

    /// Missing parts are empty and missing flags are false.
    pub fn from_json(value: &Value) -> Result<FamilySet, ExceptionalError> {
        let obj = value.as_object().ok_or_else(|| ExceptionalError::Parse("set must be a JSON object".into()))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "x" | "y" | "z" | "flags") {
                return Err(ExceptionalError::Parse(format!("unknown field {key:?}")));
            }
        }
        let part = |k: &str| -> Result<IndexPart, ExceptionalError> {
            match obj.get(k) {
                None => Ok(IndexPart::empty()),
                Some(v) => IndexPart::from_json(v).map_err(|e| ExceptionalError::Parse(format!("{k}: {e}"))),
            }
        };
        let flags = obj.get("flags");
        let flag = |k: &str| -> Result<bool, ExceptionalError> {
            match flags.and_then(|f| f.get(k)) {
                None => Ok(false),
                Some(v) => v.as_bool().ok_or_else(|| ExceptionalError::Parse(format!("flags.{k} must be a boolean"))),
            }
        };
        Ok(FamilySet {
            x: part("x")?,
            y: part("y")?,
            z: part("z")?,
            n00: flag("n00")?,
            njj: flag("njj")?,
            nj0: flag("nj0")?,
            n0j: flag("n0j")?,
        })
    }
}

/// The indices `n` with `Z_n` forced by the `X` part.
fn z_forced_by_x(x: &IndexPart, k: u64) -> IndexPart {
    match k {
        0 => IndexPart::empty(),
        1 => x.clone(),
        _ => x.divided_by(k),
    }
}

/// The closed-set criterion for type `C_k`.
pub fn is_closed(c: &FamilySet, k: u64) -> bool {
    let specials = !(c.nj0 || c.n0j) || c.n00;
    let infinite = !c.is_finite();
    let limit = !infinite || (c.nj0 && c.n0j && c.n00);
    let families = k == 0 || (c.y.is_subset(&c.z) && z_forced_by_x(&c.x, k).is_subset(&c.z));
    specials && limit && families
}

/// The least closed superset.
pub fn closure(c: &FamilySet, k: u64) -> FamilySet {
    let mut out = c.clone();
    out.z = out.z.union(&out.y).union(&z_forced_by_x(&out.x, k));
    if !out.is_finite() {
        out.nj0 = true;
        out.n0j = true;
    }
    if out.nj0 || out.n0j {
        out.n00 = true;
    }
    out
}

/// `cl{p}` as a list in canonical order.
pub fn point_closure(p: ExcPoint, k: u64) -> Result<Vec<ExcPoint>, ExceptionalError> {
    p.validate(k)?;
    Ok(closure(&FamilySet::from_points([p]), k).points().expect("point closures are finite"))
}

fn check_closed(c: &FamilySet, k: u64) -> Result<(), ExceptionalError> {
    c.validate(k)?;
    if !is_closed(c, k) {
        return Err(ExceptionalError::NotClosed);
    }
    Ok(())
}

/// Points `p ∈ C` with `cl{p} = C`. Infinite closed sets have none, since
/// every point closure is finite.
pub fn generic_points(c: &FamilySet, k: u64) -> Result<Vec<ExcPoint>, ExceptionalError> {
    check_closed(c, k)?;
    let Some(pts) = c.points() else {
        return Ok(Vec::new());
    };
    Ok(pts
        .into_iter()
        .filter(|&p| closure(&FamilySet::from_points([p]), k) == *c)
        .collect())
}

/// Whether the closed set is the closure of one of its points, which for
/// these sober spaces is irreducibility.
pub fn is_irreducible(c: &FamilySet, k: u64) -> Result<bool, ExceptionalError> {
    Ok(!generic_points(c, k)?.is_empty())
}

/// Parameter of a sub-basic open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubbasicOpen {
    /// Points with `a ∉ ann N`, `RaR` at the given position.
    AnnBelow(SymbolicIdeal),
    /// Points with `a ∈ Ass N`.
    AssAtLeast(SymbolicIdeal),
    /// Points with `a ∈ Div N`.
    DivAtLeast(SymbolicIdeal),
}

/// Membership of a point in a sub-basic open; `a ∈ I` is `RaR ⊆ I`.
pub fn in_subbasic(pt: ExcPoint, open: SubbasicOpen, k: u64) -> Result<bool, ExceptionalError> {
    let m = metadata(pt, k)?;
    Ok(match open {
        SubbasicOpen::AnnBelow(pos) => !pos.is_subset_of(m.ann),
        SubbasicOpen::AssAtLeast(SymbolicIdeal::Unit) | SubbasicOpen::DivAtLeast(SymbolicIdeal::Unit) => {
            return Err(ExceptionalError::UnitNotAllowed)
        }
        SubbasicOpen::AssAtLeast(pos) => pos.is_subset_of(m.ass),
        SubbasicOpen::DivAtLeast(pos) => pos.is_subset_of(m.div),
    })
}

/// The open set `{X_{kn}, Y_n, Z_n}` isolating `Y_n` from the rest of its
/// closure (`k ≥ 1`).
pub fn y_isolating_open(n: u64, k: u64) -> Result<FamilySet, ExceptionalError> {
    if k == 0 {
        return Err(ExceptionalError::NoYZ);
    }
    if n == 0 {
        return Err(ExceptionalError::ZeroIndex);
    }
    Ok(FamilySet::from_points([ExcPoint::X(k * n), ExcPoint::Y(n), ExcPoint::Z(n)]))
}

/// Points of the truncation at `N`, in canonical order.
pub fn truncation_points(k: u64, n: u64) -> Vec<ExcPoint> {
    let mut pts = vec![ExcPoint::N00, ExcPoint::NJJ, ExcPoint::NJ0, ExcPoint::N0J];
    pts.extend((1..=n).map(ExcPoint::X));
    if k > 0 {
        pts.extend((1..=n).map(ExcPoint::Y));
        pts.extend((1..=n).map(ExcPoint::Z));
    }
    pts
}

/// The subspace of points with index at most `N`; it is closed, because
/// closures only move from `X_{kn}`, `Y_n` down to `Z_n` with `n ≤ kn`.
pub fn truncate(k: u64, n: u64) -> Result<FiniteSpace, ExceptionalError> {
    if n == 0 || n < k {
        return Err(ExceptionalError::TruncationTooSmall { k, n });
    }
    let pts = truncation_points(k, n);
    let labels = pts.iter().map(|p| p.label()).collect();
    let closures: Vec<FamilySet> = pts.iter().map(|&p| closure(&FamilySet::from_points([p]), k)).collect();
    Ok(FiniteSpace::from_fn(labels, |x, y| closures[x].contains(pts[y]))?)
}

/// Trichotomy data for [`truncate`]`(k, n)`: generic and critical types
/// from metadata, and the pair `xb=0 / a|x` (`ab = zⁿ`) for the closures
/// of the points `Y_n`.
pub fn trichotomy_context(space: &FiniteSpace, k: u64, n: u64) -> SymbolicContext<'_> {
    let pts = truncation_points(k, n);
    let meta = pts.iter().map(|&p| metadata(p, k).expect("valid point")).collect();
    let pairs = pts.iter().map(|&p| presenting_pairs(p, k)).collect();
    let minimal = move |c: PointSet| -> Option<(String, String)> {
        pts.iter().enumerate().find_map(|(i, p)| match p {
            ExcPoint::Y(m) if space.point_closure(i) == c => Some(("xb=0".to_string(), format!("a|x [ab=z^{m}]"))),
            _ => None,
        })
    };
    SymbolicContext { space, meta, pairs, minimal: Box::new(minimal) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::trichotomy_report;
    use crate::Exec;
    use ExcPoint::*;

    fn set(pts: &[ExcPoint]) -> FamilySet {
        FamilySet::from_points(pts.iter().copied())
    }

    #[test]
    fn metadata_examples() {
        let m = metadata(X(2), 0).unwrap();
        assert_eq!((m.ass, m.div, m.ann), (SymbolicIdeal::J, SymbolicIdeal::J, SymbolicIdeal::ChainPos(2)));
        // z³R in C_2 sits at position 3·3−1
        assert_eq!(metadata(Y(3), 2).unwrap().ann, SymbolicIdeal::ChainPos(8));
        for k in 0..4 {
            let m = metadata(N00, k).unwrap();
            assert_eq!((m.ass, m.div, m.ann), (SymbolicIdeal::Zero, SymbolicIdeal::Zero, SymbolicIdeal::Zero));
        }
        assert_eq!(metadata(Y(1), 0), Err(ExceptionalError::NoYZ));
        // C_1: ann X_n = zⁿJ at position 2n
        assert_eq!(metadata(X(2), 1).unwrap().ann, SymbolicIdeal::ChainPos(4));
    }

    #[test]
    fn closed_examples() {
        assert!(is_closed(&set(&[X(2), Z(1)]), 2));
        assert!(!is_closed(&set(&[Y(3)]), 2));
        let xs = FamilySet { x: IndexPart::all(), ..Default::default() };
        assert!(!is_closed(&xs, 0));
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure(&set(&[X(2)]), 2), set(&[X(2), Z(1)]));
        assert_eq!(closure(&set(&[Y(3)]), 2), set(&[Y(3), Z(3)]));
        let xs = FamilySet { x: IndexPart::all(), ..Default::default() };
        let expected = FamilySet { x: IndexPart::all(), nj0: true, n0j: true, n00: true, ..Default::default() };
        assert_eq!(closure(&xs, 0), expected);
    }

    #[test]
    fn point_closure_table() {
        for k in 0..4u64 {
            assert_eq!(point_closure(NJ0, k).unwrap(), vec![N00, NJ0]);
            assert_eq!(point_closure(N0J, k).unwrap(), vec![N00, N0J]);
            assert_eq!(point_closure(NJJ, k).unwrap(), vec![NJJ]);
            assert_eq!(point_closure(N00, k).unwrap(), vec![N00]);
            for n in 1..6 {
                if k >= 1 {
                    assert_eq!(point_closure(Y(n), k).unwrap(), vec![Y(n), Z(n)]);
                    assert_eq!(point_closure(Z(n), k).unwrap(), vec![Z(n)]);
                }
                match k {
                    0 => assert_eq!(point_closure(X(n), k).unwrap(), vec![X(n)]),
                    1 => assert_eq!(point_closure(X(n), k).unwrap(), vec![X(n), Z(n)]),
                    _ => {
                        assert_eq!(point_closure(X(k * n), k).unwrap(), vec![X(k * n), Z(n)]);
                        if n % k != 0 {
                            assert_eq!(point_closure(X(n), k).unwrap(), vec![X(n)]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&set(&[X(2), Z(1)]), 2).unwrap());
        assert_eq!(generic_points(&set(&[X(2), Z(1)]), 2).unwrap(), vec![X(2)]);
        assert!(!is_irreducible(&set(&[X(1), Y(1), Z(1)]), 1).unwrap());
        assert!(is_irreducible(&set(&[N00]), 3).unwrap());
        assert_eq!(generic_points(&set(&[NJ0, N00]), 1).unwrap(), vec![NJ0]);
        assert!(generic_points(&set(&[N00, NJJ]), 1).unwrap().is_empty());
        assert_eq!(is_irreducible(&set(&[Y(1)]), 1), Err(ExceptionalError::NotClosed));
        assert!(!is_irreducible(&FamilySet::everything(2), 2).unwrap());
    }

    #[test]
    fn truncation_sizes() {
        assert_eq!(truncate(2, 4).unwrap().len(), 16);
        assert_eq!(truncate(0, 5).unwrap().len(), 9);
        assert_eq!(truncate(1, 2).unwrap().len(), 10);
        assert!(truncate(3, 2).is_err());
    }

    #[test]
    fn truncation_closures() {
        let sp = truncate(2, 4).unwrap();
        assert_eq!(sp.closure_of_labels(&["X2"]).unwrap(), sp.set_of(&["X2", "Z1"]).unwrap());
        // the truncation is a closed subspace: closed sets of the space are
        // the closed family sets inside it
        let pts = truncation_points(2, 4);
        for s in sp.closed_sets(Exec::Parallel).unwrap() {
            let fam = FamilySet::from_points(s.iter().map(|i| pts[i]));
            assert!(is_closed(&fam, 2));
        }
    }

    #[test]
    fn subbasic_examples() {
        assert!(in_subbasic(X(2), SubbasicOpen::AnnBelow(SymbolicIdeal::ChainPos(1)), 0).unwrap());
        assert!(!in_subbasic(N00, SubbasicOpen::AssAtLeast(SymbolicIdeal::ChainPos(5)), 0).unwrap());
        assert!(in_subbasic(NJJ, SubbasicOpen::DivAtLeast(SymbolicIdeal::J), 0).unwrap());
        assert_eq!(
            in_subbasic(NJJ, SubbasicOpen::DivAtLeast(SymbolicIdeal::Unit), 0),
            Err(ExceptionalError::UnitNotAllowed)
        );
    }

    #[test]
    fn isolating_open_has_closed_complement() {
        for k in 1..4 {
            let sp = truncate(k, 4).unwrap();
            for n in 1..=4 / k {
                let open = y_isolating_open(n, k).unwrap();
                let labels: Vec<String> =
                    open.points().unwrap().iter().map(|p| p.label()).collect();
                let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
                let o = sp.set_of(&refs).unwrap();
                assert!(sp.is_closed(sp.all().difference(o)));
                // inside cl Y_n it holds Y_n and Z_n; the minimal pair separates them
                let y = sp.index_of(&format!("Y{n}")).unwrap();
                assert!(sp.point_closure(y).is_subset(o));
            }
        }
    }

    #[test]
    fn trichotomy_on_truncations() {
        for k in 0..4 {
            let n = 4;
            let sp = truncate(k, n).unwrap();
            let ctx = trichotomy_context(&sp, k, n);
            for irr in sp.check_sober(Exec::Parallel).unwrap().irreducibles {
                let w = trichotomy_report(&ctx, irr.set).unwrap();
                assert!(w.is_some(), "k={k} set={:?}", sp.labels_of(irr.set));
            }
        }
    }

    #[test]
    fn json_round_trips() {
        for p in [N00, NJ0, X(3), Y(1), Z(7)] {
            assert_eq!(ExcPoint::from_json(&p.to_json()).unwrap(), p);
        }
        let s = FamilySet { x: IndexPart::cofinite([2]), z: IndexPart::finite([1, 5]), n00: true, ..Default::default() };
        assert_eq!(FamilySet::from_json(&s.to_json()).unwrap(), s);
        assert_eq!(FamilySet::from_json(&s.to_compact_json()).unwrap(), s);
        let parsed = FamilySet::from_json(&json!({"x": {"kind": "finite", "idx": [2]}})).unwrap();
        assert_eq!(parsed, set(&[X(2)]));
        assert!(FamilySet::from_json(&json!({"w": []})).is_err());
    }
}

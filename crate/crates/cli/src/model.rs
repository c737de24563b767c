//! Ring-kind dispatch: points, sets, closures and finite truncations for
//! whatever a descriptor names.

use std::cmp::Ordering;

use serde_json::{json, Map, Value};
use ziegler::chainring::{zg, ChainRing, ChainSpectrum};
use ziegler::exceptional::{self, ExcPoint, FamilySet};
use ziegler::ideal::SymbolicIdeal;
use ziegler::invariant::dvr::{self, DvrPoint, DvrSet};
use ziegler::invariant::{self as inv, InvPoint};
use ziegler::nearly_simple::{self as ns, NsPoint};
use ziegler::ringspec::{ideal_name, RingSpec};
use ziegler::topology::{FiniteSpace, PointMeta, TrichotomyContext, MAX_POINTS};
use ziegler::valuegroup::ValueGroup;

use crate::error::{invalid, CliError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Dvr(DvrPoint),
    Dense(InvPoint),
    Ns(NsPoint),
    Exc(ExcPoint),
    /// The indecomposable `ℤ/p^m`.
    Chain(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetVal {
    Dvr(DvrSet),
    Exc(FamilySet),
    /// A finite set, sorted by canonical key without repeats.
    List(Vec<Point>),
}

pub struct Model {
    spec: RingSpec,
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("set serializers return objects"),
    }
}

fn dvr_key(p: DvrPoint) -> (u8, u64) {
    match p {
        DvrPoint::N(n) => (0, n),
        DvrPoint::Inf => (1, 0),
        DvrPoint::InfPlus => (2, 0),
        DvrPoint::InfMinus => (3, 0),
    }
}

fn dense_rank(p: &InvPoint) -> u8 {
    match p {
        InvPoint::Val(_) => 0,
        InvPoint::ValPlus(_) => 1,
        InvPoint::ValMinus(_) => 2,
        InvPoint::Inf => 3,
        InvPoint::InfPlus => 4,
        InvPoint::InfMinus => 5,
    }
}

/// Canonical order: finite indices or values first, then the infinite points.
fn cmp_points(a: &Point, b: &Point) -> Ordering {
    match (a, b) {
        (Point::Dvr(x), Point::Dvr(y)) => dvr_key(*x).cmp(&dvr_key(*y)),
        (Point::Ns(x), Point::Ns(y)) => x.index().cmp(&y.index()),
        (Point::Exc(x), Point::Exc(y)) => x.cmp(y),
        (Point::Chain(x), Point::Chain(y)) => x.cmp(y),
        (Point::Dense(x), Point::Dense(y)) => match (x.value(), y.value()) {
            (Some(r), Some(s)) => r.compare(s).expect("same field").then(dense_rank(x).cmp(&dense_rank(y))),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => dense_rank(x).cmp(&dense_rank(y)),
        },
        _ => unreachable!("points of one model share a kind"),
    }
}

fn sorted(mut pts: Vec<Point>) -> Vec<Point> {
    pts.sort_by(cmp_points);
    pts.dedup_by(|a, b| cmp_points(a, b) == Ordering::Equal);
    pts
}

impl Model {
    pub fn new(spec: RingSpec) -> Self {
        Model { spec }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn group(&self) -> Result<ValueGroup, CliError> {
        match &self.spec {
            RingSpec::Dvr => Ok(ValueGroup::integers()),
            RingSpec::InvariantDense(g) => Ok(g.clone()),
            other => Err(invalid(format!("ring kind {:?} has no value group", other.kind()))),
        }
    }

    fn chain(&self, ring: ChainRing) -> Result<ChainSpectrum, CliError> {
        Ok(zg(ring)?)
    }

    pub fn parse_point(&self, v: &Value) -> Result<Point, CliError> {
        match &self.spec {
            RingSpec::Dvr => Ok(Point::Dvr(DvrPoint::from_json(v)?)),
            RingSpec::InvariantDense(g) => {
                let p = InvPoint::from_json(v, g.d())?;
                p.validate(g)?;
                Ok(Point::Dense(p))
            }
            RingSpec::NearlySimple => Ok(Point::Ns(NsPoint::from_json(v).map_err(invalid)?)),
            RingSpec::Exceptional(k) => {
                let p = ExcPoint::from_json(v)?;
                p.validate(*k)?;
                Ok(Point::Exc(p))
            }
            RingSpec::Chain(r) => match v.get("m").and_then(Value::as_u64) {
                Some(m) if (1..=u64::from(r.n())).contains(&m) => Ok(Point::Chain(m as u32)),
                _ => Err(invalid(format!("a point of zg({r}) is {{\"m\": m}} with 1 ≤ m ≤ {}", r.n()))),
            },
        }
    }

    pub fn point_json(&self, p: &Point) -> Value {
        match p {
            Point::Dvr(x) => x.to_json(),
            Point::Dense(x) => x.to_json(),
            Point::Ns(x) => x.to_json(),
            Point::Exc(x) => x.to_json(),
            Point::Chain(m) => json!({"m": m}),
        }
    }

    pub fn label(&self, p: &Point) -> String {
        match (p, &self.spec) {
            (Point::Dvr(x), _) => x.label(),
            (Point::Dense(x), _) => x.to_string(),
            (Point::Ns(x), _) => x.label().to_string(),
            (Point::Exc(x), _) => x.label(),
            (Point::Chain(m), RingSpec::Chain(r)) => format!("Z/{}", r.p().pow(*m)),
            (Point::Chain(m), _) => format!("Z/p^{m}"),
        }
    }

    /// `(Ass, Div, ann)` when the spectrum is described by ideal metadata.
    pub fn meta_json(&self, p: &Point) -> Option<Value> {
        let (meta, k): (PointMeta, Option<u64>) = match (p, &self.spec) {
            (Point::Dvr(x), _) => (x.metadata(), None),
            (Point::Ns(x), _) => (x.metadata(), None),
            (Point::Exc(x), RingSpec::Exceptional(k)) => (exceptional::metadata(*x, *k).ok()?, Some(*k)),
            _ => return None,
        };
        let name = |i| match (k, i) {
            (Some(k), _) => ideal_name(i, k),
            (None, SymbolicIdeal::ChainPos(0)) => "J(R)".to_string(),
            (None, SymbolicIdeal::ChainPos(p)) => format!("J(R)^{}", p + 1),
            (None, _) => i.to_string(),
        };
        Some(json!({"ass": name(meta.ass), "div": name(meta.div), "ann": name(meta.ann)}))
    }

    pub fn parse_set(&self, v: &Value) -> Result<SetVal, CliError> {
        match &self.spec {
            RingSpec::Exceptional(k) => {
                let s = FamilySet::from_json(v)?;
                s.validate(*k)?;
                Ok(SetVal::Exc(s))
            }
            RingSpec::Dvr => {
                let obj = v.as_object().ok_or_else(|| invalid("set must be a JSON object"))?;
                if let Some(key) = obj.keys().find(|k| !matches!(k.as_str(), "n" | "flags")) {
                    return Err(invalid(format!("unknown field {key:?}")));
                }
                Ok(SetVal::Dvr(DvrSet::from_json(v)?))
            }
            _ => {
                let pts = v
                    .get("points")
                    .and_then(Value::as_array)
                    .ok_or_else(|| invalid("set must be an object {\"points\": [...]}"))?;
                let pts = pts.iter().map(|p| self.parse_point(p)).collect::<Result<Vec<_>, _>>()?;
                Ok(SetVal::List(sorted(pts)))
            }
        }
    }

    pub fn set_json(&self, s: &SetVal) -> Map<String, Value> {
        match s {
            SetVal::Exc(c) => object(c.to_compact_json()),
            SetVal::Dvr(c) => object(c.to_json()),
            SetVal::List(pts) => {
                let pts: Vec<Value> = pts.iter().map(|p| self.point_json(p)).collect();
                object(json!({"points": pts}))
            }
        }
    }

    /// Every point in the closure of `x`.
    fn point_closure(&self, x: &Point) -> Result<Vec<Point>, CliError> {
        let candidates: Vec<Point> = match x {
            Point::Dense(p) => {
                let mut c = vec![x.clone(), Point::Dense(InvPoint::Inf)];
                if let Some(r) = p.value() {
                    c.push(Point::Dense(InvPoint::Val(r.clone())));
                }
                c
            }
            Point::Ns(_) => NsPoint::ALL.into_iter().map(Point::Ns).collect(),
            Point::Chain(_) => match &self.spec {
                RingSpec::Chain(r) => (1..=r.n()).map(Point::Chain).collect(),
                _ => unreachable!("chain points come from chain rings"),
            },
            other => vec![other.clone()],
        };
        let mut out = Vec::new();
        for y in candidates {
            if self.specializes(x, &y)? {
                out.push(y);
            }
        }
        Ok(out)
    }

    pub fn closure(&self, s: &SetVal) -> Result<SetVal, CliError> {
        match (s, &self.spec) {
            (SetVal::Exc(c), RingSpec::Exceptional(k)) => Ok(SetVal::Exc(exceptional::closure(c, *k))),
            (SetVal::Dvr(c), _) => Ok(SetVal::Dvr(dvr::dvr_closure(c))),
            (SetVal::List(pts), _) => {
                let mut out = Vec::new();
                for p in pts {
                    out.extend(self.point_closure(p)?);
                }
                Ok(SetVal::List(sorted(out)))
            }
            _ => unreachable!("sets are parsed by the model"),
        }
    }

    pub fn is_closed(&self, s: &SetVal) -> Result<bool, CliError> {
        match (s, &self.spec) {
            (SetVal::Exc(c), RingSpec::Exceptional(k)) => Ok(exceptional::is_closed(c, *k)),
            (SetVal::Dvr(c), _) => Ok(dvr::dvr_closed(c)),
            (SetVal::List(_), _) => Ok(&self.closure(s)? == s),
            _ => unreachable!("sets are parsed by the model"),
        }
    }

    /// `y ∈ cl{x}`.
    pub fn specializes(&self, x: &Point, y: &Point) -> Result<bool, CliError> {
        Ok(match (x, y, &self.spec) {
            (Point::Dvr(a), Point::Dvr(b), _) => dvr::dvr_specializes(*a, *b),
            (Point::Dense(a), Point::Dense(b), _) => inv::specializes(a, b),
            (Point::Ns(a), Point::Ns(b), _) => ns::ns_closure(*a).contains(b),
            (Point::Exc(a), Point::Exc(b), RingSpec::Exceptional(k)) => {
                exceptional::point_closure(*a, *k)?.contains(b)
            }
            (Point::Chain(a), Point::Chain(b), RingSpec::Chain(r)) => {
                let s = self.chain(*r)?;
                s.space().specializes(*a as usize - 1, *b as usize - 1)
            }
            _ => unreachable!("points of one model share a kind"),
        })
    }

    /// The points of the truncation at `n`, in canonical order.
    pub fn points(&self, n: u64) -> Result<Vec<Point>, CliError> {
        Ok(match &self.spec {
            RingSpec::Dvr => {
                check_dvr_truncation(n)?;
                dvr::dvr_points(n).into_iter().map(Point::Dvr).collect()
            }
            RingSpec::NearlySimple => NsPoint::ALL.into_iter().map(Point::Ns).collect(),
            RingSpec::Exceptional(k) => {
                check_exc_truncation(*k, n)?;
                exceptional::truncation_points(*k, n).into_iter().map(Point::Exc).collect()
            }
            RingSpec::Chain(r) => (1..=r.n()).map(Point::Chain).collect(),
            RingSpec::InvariantDense(_) => return Err(no_truncation()),
        })
    }

    /// Runs `f` on the finite truncation at `n` and its trichotomy data.
    pub fn with_space<R>(
        &self,
        n: u64,
        f: impl FnOnce(&FiniteSpace, &dyn TrichotomyContext) -> Result<R, CliError>,
    ) -> Result<R, CliError> {
        match &self.spec {
            RingSpec::Dvr => {
                check_dvr_truncation(n)?;
                let space = dvr::dvr_truncate(n);
                let ctx = dvr::dvr_trichotomy_context(&space, n);
                f(&space, &ctx)
            }
            RingSpec::NearlySimple => {
                let space = ns::ns_space();
                let ctx = ns::ns_trichotomy_context(&space);
                f(&space, &ctx)
            }
            RingSpec::Exceptional(k) => {
                check_exc_truncation(*k, n)?;
                let space = exceptional::truncate(*k, n)?;
                let ctx = exceptional::trichotomy_context(&space, *k, n);
                f(&space, &ctx)
            }
            RingSpec::Chain(r) => {
                let s = self.chain(*r)?;
                let ctx = s.trichotomy();
                f(s.space(), &ctx)
            }
            RingSpec::InvariantDense(_) => Err(no_truncation()),
        }
    }
}

fn no_truncation() -> CliError {
    invalid("a dense value group gives uncountably many points and no finite truncation")
}

fn check_dvr_truncation(n: u64) -> Result<(), CliError> {
    if n == 0 {
        return Err(invalid("--truncate must be at least 1"));
    }
    if n > (MAX_POINTS - 3) as u64 {
        return Err(CliError::Bound(format!("truncation at {n} exceeds {MAX_POINTS} points")));
    }
    Ok(())
}

fn check_exc_truncation(k: u64, n: u64) -> Result<(), CliError> {
    if n == 0 || n < k {
        return Err(exceptional::ExceptionalError::TruncationTooSmall { k, n }.into());
    }
    let size = if k == 0 { 4 + n } else { 4 + 3 * n };
    if size > MAX_POINTS as u64 {
        return Err(CliError::Bound(format!("truncation at {n} exceeds {MAX_POINTS} points")));
    }
    Ok(())
}

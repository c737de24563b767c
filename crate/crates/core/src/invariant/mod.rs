//! Spectra of invariant rank-one uniserial domains.
//!
//! Points are ≈-classes of pairs `⟨E, F⟩` of strictly positive upsets of the
//! value group `Γ`, up to topological indistinguishability. Basic opens are
//! the sets `W_{α,β,γ,δ}`. A dense `Γ` uses the labels `r`, `r⁺`, `r⁻`,
//! `∞`, `∞⁺`, `∞⁻` ([`InvPoint`]); `Γ ≅ ℤ` uses `n`, `∞`, `∞⁺`, `∞⁻`
//! ([`dvr::DvrPoint`]). The two alphabets are kept apart.

pub mod dvr;

use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::valuegroup::{Cut, Extended, QuadElement, ValueGroup, ValueGroupError};
use crate::Exec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    ValueGroup(#[from] ValueGroupError),
    #[error("this operation needs a dense value group")]
    NotDense,
    #[error("this operation needs a cyclic value group")]
    NotCyclic,
    #[error("shift {0} must be a non-negative element of the value group")]
    BadShift(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid W-set: {0}")]
    InvalidWSet(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A point of the spectrum for a dense value group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum InvPoint {
    /// `r`, for a positive real `r` (here: in the quadratic field).
    Val(QuadElement),
    /// `r⁺`, for `r ∈ Γ`, `r ≥ 0`.
    ValPlus(QuadElement),
    /// `r⁻`, for `r ∈ Γ`, `r > 0`.
    ValMinus(QuadElement),
    Inf,
    InfPlus,
    InfMinus,
}

impl InvPoint {
    pub fn validate(&self, gamma: &ValueGroup) -> Result<(), InvariantError> {
        let bad = |m: String| Err(InvariantError::InvalidPoint(m));
        match self {
            InvPoint::Val(r) if !r.is_positive() => bad(format!("{r} is not positive")),
            InvPoint::ValPlus(r) if r.is_negative() || !gamma.member(r) => {
                bad(format!("{r}⁺ needs a non-negative group element"))
            }
            InvPoint::ValMinus(r) if !r.is_positive() || !gamma.member(r) => {
                bad(format!("{r}⁻ needs a positive group element"))
            }
            InvPoint::Val(r) | InvPoint::ValPlus(r) | InvPoint::ValMinus(r) if r.d() != gamma.d() => {
                Err(ValueGroupError::FieldMismatch(gamma.d(), r.d()).into())
            }
            _ => Ok(()),
        }
    }

    pub fn value(&self) -> Option<&QuadElement> {
        match self {
            InvPoint::Val(r) | InvPoint::ValPlus(r) | InvPoint::ValMinus(r) => Some(r),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            InvPoint::Val(_) => "val",
            InvPoint::ValPlus(_) => "val+",
            InvPoint::ValMinus(_) => "val-",
            InvPoint::Inf => "inf",
            InvPoint::InfPlus => "inf+",
            InvPoint::InfMinus => "inf-",
        }
    }

    pub fn to_json(&self) -> Value {
        match self.value() {
            Some(r) => json!({"t": self.tag(), "r": r.to_json()}),
            None => json!({"t": self.tag()}),
        }
    }

    pub fn from_json(value: &Value, d: u64) -> Result<InvPoint, InvariantError> {
        let tag = value
            .get("t")
            .and_then(Value::as_str)
            .ok_or_else(|| InvariantError::Parse("point needs a string field \"t\"".into()))?;
        let r = || -> Result<QuadElement, InvariantError> {
            let v = value.get("r").ok_or_else(|| InvariantError::Parse(format!("point {tag:?} needs \"r\"")))?;
            Ok(QuadElement::from_json(v, d)?)
        };
        Ok(match tag {
            "val" => InvPoint::Val(r()?),
            "val+" => InvPoint::ValPlus(r()?),
            "val-" => InvPoint::ValMinus(r()?),
            "inf" => InvPoint::Inf,
            "inf+" => InvPoint::InfPlus,
            "inf-" => InvPoint::InfMinus,
            other => return Err(InvariantError::Parse(format!("unknown point tag {other:?}"))),
        })
    }
}

impl fmt::Display for InvPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvPoint::Val(r) => write!(f, "{r}"),
            InvPoint::ValPlus(r) => write!(f, "({r})+"),
            InvPoint::ValMinus(r) => write!(f, "({r})-"),
            InvPoint::Inf => write!(f, "∞"),
            InvPoint::InfPlus => write!(f, "∞+"),
            InvPoint::InfMinus => write!(f, "∞-"),
        }
    }
}

/// A pair `⟨E, F⟩` of strictly positive upsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpsetPair {
    pub left: Cut,
    pub right: Cut,
}

impl UpsetPair {
    pub fn new(left: Cut, right: Cut) -> Self {
        UpsetPair { left, right }
    }

    pub fn validate(&self, gamma: &ValueGroup) -> Result<(), InvariantError> {
        self.left.validate(gamma)?;
        self.right.validate(gamma)?;
        Ok(())
    }

    /// `⟨E + γ, F⟩`.
    pub fn shift_left(&self, g: &QuadElement) -> UpsetPair {
        UpsetPair::new(self.left.translate(g), self.right.clone())
    }

    /// `⟨E, F + γ⟩`.
    pub fn shift_right(&self, g: &QuadElement) -> UpsetPair {
        UpsetPair::new(self.left.clone(), self.right.translate(g))
    }

    pub fn to_json(&self) -> Value {
        json!({"left": self.left.to_json(), "right": self.right.to_json()})
    }

    pub fn from_json(value: &Value, d: u64) -> Result<UpsetPair, InvariantError> {
        let side = |k: &str| -> Result<Cut, InvariantError> {
            let v = value.get(k).ok_or_else(|| InvariantError::Parse(format!("pair needs field {k:?}")))?;
            Ok(Cut::from_json(v, d)?)
        };
        Ok(UpsetPair::new(side("left")?, side("right")?))
    }
}

impl fmt::Display for UpsetPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}⟩", self.left, self.right)
    }
}

/// Parameters of the basic open `W_{α,β,γ,δ}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WSet {
    pub alpha: QuadElement,
    pub beta: QuadElement,
    pub gamma: Extended,
    pub delta: Extended,
}

impl WSet {
    pub fn new(alpha: QuadElement, beta: QuadElement, gamma: Extended, delta: Extended) -> Self {
        WSet { alpha, beta, gamma, delta }
    }

    /// `α, β ∈ Γ_{≥0}` and `γ, δ ∈ Γ_{>0} ∪ {∞}`.
    pub fn validate(&self, group: &ValueGroup) -> Result<(), InvariantError> {
        for (name, x) in [("alpha", &self.alpha), ("beta", &self.beta)] {
            if x.is_negative() || !group.member(x) {
                return Err(InvariantError::InvalidWSet(format!("{name}={x} must be a non-negative group element")));
            }
        }
        for (name, x) in [("gamma", &self.gamma), ("delta", &self.delta)] {
            if let Extended::Finite(x) = x {
                if !x.is_positive() || !group.member(x) {
                    return Err(InvariantError::InvalidWSet(format!("{name}={x} must be a positive group element or inf")));
                }
            }
        }
        Ok(())
    }

    /// `α + γ + β + δ`, with `∞` absorbing.
    pub fn upper(&self) -> Extended {
        self.gamma.add(&self.delta).add_finite(&self.alpha).add_finite(&self.beta)
    }

    pub fn lower(&self) -> QuadElement {
        &self.alpha + &self.beta
    }

    pub fn to_json(&self) -> Value {
        json!({
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
            "gamma": self.gamma.to_json(),
            "delta": self.delta.to_json(),
        })
    }

    pub fn from_json(value: &Value, d: u64) -> Result<WSet, InvariantError> {
        let field = |k: &str| value.get(k).ok_or_else(|| InvariantError::Parse(format!("W-set needs field {k:?}")));
        Ok(WSet {
            alpha: QuadElement::from_json(field("alpha")?, d)?,
            beta: QuadElement::from_json(field("beta")?, d)?,
            gamma: Extended::from_json(field("gamma")?, d)?,
            delta: Extended::from_json(field("delta")?, d)?,
        })
    }
}

/// `E + γ` for `γ ∈ Γ_{≥0}`.
pub fn shift(e: &Cut, g: &QuadElement, gamma: &ValueGroup) -> Result<Cut, InvariantError> {
    if g.d() != gamma.d() || g.is_negative() || !gamma.member(g) {
        return Err(InvariantError::BadShift(g.to_string()));
    }
    Ok(e.translate(g))
}

enum Constraint {
    Any,
    Exactly(QuadElement),
    Never,
}

/// The `γ` forced by `a = b + γ` on canonical cuts.
fn offset(a: &Cut, b: &Cut) -> Constraint {
    match (a, b) {
        (Cut::Infinity, Cut::Infinity) => Constraint::Any,
        (Cut::AtOpen(x), Cut::AtOpen(y)) | (Cut::AtClosed(x), Cut::AtClosed(y)) => Constraint::Exactly(x - y),
        _ => Constraint::Never,
    }
}

fn solvable(c1: Constraint, c2: Constraint, gamma: &ValueGroup) -> bool {
    let ok = |g: &QuadElement| !g.is_negative() && gamma.member(g);
    match (c1, c2) {
        (Constraint::Never, _) | (_, Constraint::Never) => false,
        (Constraint::Any, Constraint::Any) => true,
        (Constraint::Exactly(g), Constraint::Any) | (Constraint::Any, Constraint::Exactly(g)) => ok(&g),
        (Constraint::Exactly(g), Constraint::Exactly(h)) => g == h && ok(&g),
    }
}

/// `⟨E,F⟩ ≈ ⟨G,H⟩`: some `γ ∈ Γ_{≥0}` has `E = G+γ, F+γ = H` or
/// `E+γ = G, F = H+γ`.
///
/// Cuts are put in canonical form first, after which each equation pins
/// `γ` to one endpoint difference (or leaves it free for `{∞}`).
pub fn pairs_equivalent(p: &UpsetPair, q: &UpsetPair, gamma: &ValueGroup) -> bool {
    let (e, f) = (p.left.canonical(gamma), p.right.canonical(gamma));
    let (g, h) = (q.left.canonical(gamma), q.right.canonical(gamma));
    solvable(offset(&e, &g), offset(&h, &f), gamma) || solvable(offset(&g, &e), offset(&f, &h), gamma)
}

/// The label of the ≈-class of `p`, for a dense value group.
pub fn pair_to_point(p: &UpsetPair, gamma: &ValueGroup) -> Result<InvPoint, InvariantError> {
    if !gamma.is_dense()? {
        return Err(InvariantError::NotDense);
    }
    p.validate(gamma)?;
    Ok(match (&p.left, &p.right) {
        (Cut::Infinity, Cut::Infinity) => InvPoint::Inf,
        (Cut::Infinity, _) => InvPoint::InfPlus,
        (_, Cut::Infinity) => InvPoint::InfMinus,
        (l, r) => {
            let (a, b) = (l.endpoint().expect("finite"), r.endpoint().expect("finite"));
            let sum = a + b;
            if !gamma.member(a) || !gamma.member(b) {
                InvPoint::Val(sum)
            } else {
                match (l, r) {
                    (Cut::AtOpen(_), Cut::AtOpen(_)) => InvPoint::ValPlus(sum),
                    (Cut::AtClosed(_), Cut::AtClosed(_)) => InvPoint::ValMinus(sum),
                    _ => InvPoint::Val(sum),
                }
            }
        }
    })
}

/// Membership of a labelled point in `W_{α,β,γ,δ}`.
pub fn in_wset(pt: &InvPoint, w: &WSet) -> bool {
    let lower = w.lower();
    let upper = w.upper();
    let above = |r: &QuadElement, strict: bool| match r.compare(&lower).expect("same field") {
        Ordering::Greater => true,
        Ordering::Equal => !strict,
        Ordering::Less => false,
    };
    let below = |r: &QuadElement, strict: bool| match Extended::Finite(r.clone()).cmp_ext(&upper) {
        Ordering::Less => true,
        Ordering::Equal => !strict,
        Ordering::Greater => false,
    };
    match pt {
        InvPoint::Inf => w.gamma.is_infinite() && w.delta.is_infinite(),
        InvPoint::InfPlus => w.gamma.is_infinite(),
        InvPoint::InfMinus => w.delta.is_infinite(),
        InvPoint::Val(r) => above(r, true) && below(r, true),
        InvPoint::ValPlus(r) => above(r, false) && below(r, true),
        InvPoint::ValMinus(r) => above(r, true) && below(r, false),
    }
}

/// `y ∈ cl{x}` in the dense case: `r⁺ ⤳ r` (for `r > 0`), `r⁻ ⤳ r`,
/// `∞⁺ ⤳ ∞`, `∞⁻ ⤳ ∞`, and every point specializes to itself.
pub fn specializes(x: &InvPoint, y: &InvPoint) -> bool {
    use InvPoint::*;
    if x == y {
        return true;
    }
    match (x, y) {
        (ValPlus(r), Val(s)) | (ValMinus(r), Val(s)) => r == s && r.is_positive(),
        (InfPlus, Inf) | (InfMinus, Inf) => true,
        _ => false,
    }
}

/// A `μ ∈ Γ` exhibiting `⟨E+μ, F−μ⟩` as a representative of `p` with
/// `α ∉ E+μ`, `α+γ ∈ E+μ`, `β ∉ F−μ`, `β+δ ∈ F−μ`.
///
/// This decides membership of the class of `p` in `W` straight from the
/// definition of the W-sets, independently of the labels. `Ok(None)` means
/// no such `μ` exists; for a dense group every nonempty interval is
/// searched up to coefficient radius `cap`.
pub fn wset_witness(
    p: &UpsetPair,
    w: &WSet,
    gamma: &ValueGroup,
    cap: u64,
    exec: Exec,
) -> Result<Option<QuadElement>, InvariantError> {
    let d = gamma.d();
    let mut bounds = Bounds::default();
    // left side: G = E + μ
    match &p.left {
        Cut::Infinity => {
            if !w.gamma.is_infinite() {
                return Ok(None);
            }
        }
        Cut::AtOpen(e) => {
            // α ≤ e+μ < α+γ
            bounds.lower(&w.alpha - e, false);
            if let Extended::Finite(g) = &w.gamma {
                bounds.upper(&(&w.alpha + g) - e, true);
            }
        }
        Cut::AtClosed(e) => {
            // α < e+μ ≤ α+γ
            bounds.lower(&w.alpha - e, true);
            if let Extended::Finite(g) = &w.gamma {
                bounds.upper(&(&w.alpha + g) - e, false);
            }
        }
    }
    // right side: H = F − μ
    match &p.right {
        Cut::Infinity => {
            if !w.delta.is_infinite() {
                return Ok(None);
            }
        }
        Cut::AtOpen(f) => {
            // β ≤ f−μ < β+δ
            bounds.upper(f - &w.beta, false);
            if let Extended::Finite(dl) = &w.delta {
                bounds.lower(&(f - &w.beta) - dl, true);
            }
        }
        Cut::AtClosed(f) => {
            // β < f−μ ≤ β+δ
            bounds.upper(f - &w.beta, true);
            if let Extended::Finite(dl) = &w.delta {
                bounds.lower(&(f - &w.beta) - dl, false);
            }
        }
    }
    bounds.solve(gamma, d, cap, exec)
}

#[derive(Default)]
struct Bounds {
    lo: Option<(QuadElement, bool)>,
    hi: Option<(QuadElement, bool)>,
}

impl Bounds {
    fn lower(&mut self, x: QuadElement, strict: bool) {
        self.lo = Some(match self.lo.take() {
            None => (x, strict),
            Some((y, s)) => match x.compare(&y).expect("same field") {
                Ordering::Greater => (x, strict),
                Ordering::Less => (y, s),
                Ordering::Equal => (x, strict || s),
            },
        });
    }

    fn upper(&mut self, x: QuadElement, strict: bool) {
        self.hi = Some(match self.hi.take() {
            None => (x, strict),
            Some((y, s)) => match x.compare(&y).expect("same field") {
                Ordering::Less => (x, strict),
                Ordering::Greater => (y, s),
                Ordering::Equal => (x, strict || s),
            },
        });
    }

    fn admits(&self, x: &QuadElement) -> bool {
        let lo_ok = self.lo.as_ref().is_none_or(|(l, s)| match x.compare(l).expect("same field") {
            Ordering::Greater => true,
            Ordering::Equal => !s,
            Ordering::Less => false,
        });
        let hi_ok = self.hi.as_ref().is_none_or(|(h, s)| match x.compare(h).expect("same field") {
            Ordering::Less => true,
            Ordering::Equal => !s,
            Ordering::Greater => false,
        });
        lo_ok && hi_ok
    }

    fn solve(&self, gamma: &ValueGroup, d: u64, cap: u64, exec: Exec) -> Result<Option<QuadElement>, InvariantError> {
        // inclusive endpoints that already lie in Γ
        for (x, strict) in self.lo.iter().chain(self.hi.iter()) {
            if !strict && gamma.member(x) && self.admits(x) {
                return Ok(Some(x.clone()));
            }
        }
        if gamma.rank() == 0 {
            let zero = QuadElement::zero(d);
            return Ok(self.admits(&zero).then_some(zero));
        }
        // a window of width larger than one basis step always meets Γ
        let step = gamma.basis().iter().fold(QuadElement::from_ints(1, 0, d), |acc, e| acc + e.clone());
        let (lo, hi) = match (&self.lo, &self.hi) {
            (None, None) => return Ok(Some(QuadElement::zero(d))),
            (Some((l, _)), Some((h, _))) => (l.clone(), h.clone()),
            (Some((l, _)), None) => (l.clone(), l + &step),
            (None, Some((h, _))) => (h - &step, h.clone()),
        };
        if lo.compare(&hi)? != Ordering::Less {
            return Ok(None);
        }
        match gamma.find_between_capped(&lo, &hi, cap, exec) {
            Ok(g) => Ok(Some(g)),
            Err(ValueGroupError::NotFound { .. }) if !gamma.is_dense()? => Ok(None),
            Err(e) => Err(e.into()),
        }
    }
}

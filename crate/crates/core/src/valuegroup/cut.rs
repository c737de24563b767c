use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Value};

use super::{QuadElement, ValueGroup, ValueGroupError};

/// A strictly positive upset of `Γ ∪ {∞}`.
///
/// `AtOpen(g)` is `{x ∈ Γ : x > g} ∪ {∞}`, `AtClosed(g)` is
/// `{x ∈ Γ : x ≥ g} ∪ {∞}` and `Infinity` is `{∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cut {
    AtOpen(QuadElement),
    AtClosed(QuadElement),
    Infinity,
}

impl Cut {
    /// Checks the representation rules against `gamma`: closed cuts sit at
    /// positive group elements, open cuts at non-negative field elements.
    pub fn validate(&self, gamma: &ValueGroup) -> Result<(), ValueGroupError> {
        match self {
            Cut::Infinity => Ok(()),
            Cut::AtOpen(g) => {
                check_field(g, gamma)?;
                if g.is_negative() {
                    return Err(ValueGroupError::InvalidCut(format!("open endpoint {g} is negative")));
                }
                Ok(())
            }
            Cut::AtClosed(g) => {
                check_field(g, gamma)?;
                if !g.is_positive() {
                    return Err(ValueGroupError::InvalidCut(format!("closed endpoint {g} is not positive")));
                }
                if !gamma.member(g) {
                    return Err(ValueGroupError::InvalidCut(format!("closed endpoint {g} is not in the group")));
                }
                Ok(())
            }
        }
    }

    pub fn endpoint(&self) -> Option<&QuadElement> {
        match self {
            Cut::AtOpen(g) | Cut::AtClosed(g) => Some(g),
            Cut::Infinity => None,
        }
    }

    /// Translates the finite endpoint by `gamma`.
    pub fn translate(&self, gamma: &QuadElement) -> Cut {
        match self {
            Cut::AtOpen(g) => Cut::AtOpen(g + gamma),
            Cut::AtClosed(g) => Cut::AtClosed(g + gamma),
            Cut::Infinity => Cut::Infinity,
        }
    }

    /// A normal form under which equal upsets have equal representations.
    ///
    /// For a cyclic group `ℤu`, an open cut at `g` equals the closed cut at
    /// the next multiple of `u` above `g`. For dense groups every valid
    /// representation is already unique.
    pub fn canonical(&self, gamma: &ValueGroup) -> Cut {
        match (self, gamma.positive_generator()) {
            (Cut::AtOpen(g), Some(u)) => {
                let next = g.checked_div(u).expect("nonzero generator").floor() + 1;
                Cut::AtClosed(u.scale_int(&next))
            }
            _ => self.clone(),
        }
    }

    /// Membership of an extended group element in the upset.
    pub fn contains(&self, x: &Extended) -> bool {
        match (self, x) {
            (_, Extended::Infinite) => true,
            (Cut::Infinity, Extended::Finite(_)) => false,
            (Cut::AtOpen(g), Extended::Finite(x)) => x > g,
            (Cut::AtClosed(g), Extended::Finite(x)) => x >= g,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Cut::AtOpen(g) => json!({"kind": "open", "g": g.to_json()}),
            Cut::AtClosed(g) => json!({"kind": "closed", "g": g.to_json()}),
            Cut::Infinity => json!({"kind": "inf"}),
        }
    }

    pub fn from_json(value: &Value, d: u64) -> Result<Cut, ValueGroupError> {
        let kind = value
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| ValueGroupError::Parse("cut needs a string field \"kind\"".into()))?;
        let endpoint = || {
            value
                .get("g")
                .ok_or_else(|| ValueGroupError::Parse(format!("{kind} cut needs field \"g\"")))
                .and_then(|g| QuadElement::from_json(g, d))
        };
        match kind {
            "open" => Ok(Cut::AtOpen(endpoint()?)),
            "closed" => Ok(Cut::AtClosed(endpoint()?)),
            "inf" => Ok(Cut::Infinity),
            other => Err(ValueGroupError::Parse(format!("unknown cut kind {other:?}"))),
        }
    }
}

fn check_field(g: &QuadElement, gamma: &ValueGroup) -> Result<(), ValueGroupError> {
    if g.d() != gamma.d() {
        return Err(ValueGroupError::FieldMismatch(gamma.d(), g.d()));
    }
    Ok(())
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cut::AtOpen(g) => write!(f, "I>{g}"),
            Cut::AtClosed(g) => write!(f, "I≥{g}"),
            Cut::Infinity => write!(f, "{{∞}}"),
        }
    }
}

/// A field element or `∞`, with `x < ∞` for every finite `x` and
/// `x + ∞ = ∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Extended {
    Finite(QuadElement),
    Infinite,
}

impl Extended {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn finite(&self) -> Option<&QuadElement> {
        match self {
            Extended::Finite(x) => Some(x),
            Extended::Infinite => None,
        }
    }

    pub fn add(&self, other: &Extended) -> Extended {
        match (self, other) {
            (Extended::Finite(x), Extended::Finite(y)) => Extended::Finite(x + y),
            _ => Extended::Infinite,
        }
    }

    pub fn add_finite(&self, other: &QuadElement) -> Extended {
        self.add(&Extended::Finite(other.clone()))
    }

    /// Exact comparison; panics when two finite values come from different fields.
    pub fn cmp_ext(&self, other: &Extended) -> Ordering {
        match (self, other) {
            (Extended::Infinite, Extended::Infinite) => Ordering::Equal,
            (Extended::Infinite, _) => Ordering::Greater,
            (_, Extended::Infinite) => Ordering::Less,
            (Extended::Finite(x), Extended::Finite(y)) => x.compare(y).expect("same field"),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Extended::Finite(x) => x.to_json(),
            Extended::Infinite => Value::String("inf".into()),
        }
    }

    pub fn from_json(value: &Value, d: u64) -> Result<Extended, ValueGroupError> {
        match value {
            Value::String(s) if s == "inf" => Ok(Extended::Infinite),
            v => QuadElement::from_json(v, d).map(Extended::Finite),
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(x) => write!(f, "{x}"),
            Extended::Infinite => write!(f, "∞"),
        }
    }
}

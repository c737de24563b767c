//! Ring descriptors: parsing, validation, serialization, and display names
//! for the two-sided ideal chains of exceptional rings.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::chainring::ChainRing;
use crate::ideal::{decode_position, ChainIdeal, SymbolicIdeal};
use crate::valuegroup::{QuadElement, ValueGroup};

/// The only descriptor version.
pub const VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingSpecError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{path}: {message}")]
    Validation { path: String, message: String },
}

fn invalid(path: &str, message: impl Into<String>) -> RingSpecError {
    RingSpecError::Validation { path: path.to_string(), message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    /// A discrete valuation domain, value group `ℤ`.
    Dvr,
    /// An invariant uniserial domain with a dense value group.
    InvariantDense(ValueGroup),
    NearlySimple,
    /// An exceptional domain of type `C_k`.
    Exceptional(u64),
    /// The finite chain ring `ℤ/pⁿ`.
    Chain(ChainRing),
}

impl RingSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            RingSpec::Dvr => "dvr",
            RingSpec::InvariantDense(_) => "invariant_dense",
            RingSpec::NearlySimple => "nearly_simple",
            RingSpec::Exceptional(_) => "exceptional",
            RingSpec::Chain(_) => "chain",
        }
    }

    pub fn parse(text: &str) -> Result<RingSpec, RingSpecError> {
        let value: Value = serde_json::from_str(text).map_err(|e| RingSpecError::Syntax(e.to_string()))?;
        RingSpec::from_json(&value)
    }

    pub fn from_json(value: &Value) -> Result<RingSpec, RingSpecError> {
        let obj = value.as_object().ok_or_else(|| invalid("$", "descriptor must be a JSON object"))?;
        if let Some(v) = obj.get("v") {
            if v.as_u64() != Some(VERSION) {
                return Err(invalid("$.v", format!("unsupported version {v}, expected {VERSION}")));
            }
        }
        let kind = obj
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| invalid("$.kind", "missing string field"))?;
        let allowed: &[&str] = match kind {
            "dvr" | "nearly_simple" => &[],
            "invariant_dense" => &["d", "generators"],
            "exceptional" => &["k"],
            "chain" => &["p", "n"],
            other => return Err(invalid("$.kind", format!("unknown kind {other:?}"))),
        };
        for key in obj.keys() {
            if key != "v" && key != "kind" && !allowed.contains(&key.as_str()) {
                return Err(invalid(&format!("$.{key}"), format!("unexpected field for kind {kind:?}")));
            }
        }
        let uint = |key: &str| -> Result<u64, RingSpecError> {
            obj.get(key)
                .ok_or_else(|| invalid(&format!("$.{key}"), "missing field"))?
                .as_u64()
                .ok_or_else(|| invalid(&format!("$.{key}"), "must be a non-negative integer"))
        };
        match kind {
            "dvr" => Ok(RingSpec::Dvr),
            "nearly_simple" => Ok(RingSpec::NearlySimple),
            "exceptional" => Ok(RingSpec::Exceptional(uint("k")?)),
            "chain" => {
                let p = uint("p")?;
                let n = u32::try_from(uint("n")?).map_err(|_| invalid("$.n", "too large"))?;
                ChainRing::new(p, n).map(RingSpec::Chain).map_err(|e| invalid("$", e.to_string()))
            }
            _ => {
                let d = uint("d")?;
                let gens = obj
                    .get("generators")
                    .and_then(Value::as_array)
                    .ok_or_else(|| invalid("$.generators", "missing array"))?;
                let gens = gens
                    .iter()
                    .enumerate()
                    .map(|(i, g)| {
                        QuadElement::from_json(g, d).map_err(|e| invalid(&format!("$.generators[{i}]"), e.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let group = ValueGroup::new(d, gens).map_err(|e| invalid("$", e.to_string()))?;
                match group.is_dense() {
                    Ok(true) => Ok(RingSpec::InvariantDense(group)),
                    Ok(false) => Err(invalid("$.generators", "value group is cyclic, not dense; use kind \"dvr\"")),
                    Err(e) => Err(invalid("$.generators", e.to_string())),
                }
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("v".into(), json!(VERSION));
        obj.insert("kind".into(), json!(self.kind()));
        match self {
            RingSpec::Dvr | RingSpec::NearlySimple => {}
            RingSpec::Exceptional(k) => {
                obj.insert("k".into(), json!(k));
            }
            RingSpec::Chain(r) => {
                obj.insert("p".into(), json!(r.p()));
                obj.insert("n".into(), json!(r.n()));
            }
            RingSpec::InvariantDense(g) => {
                obj.insert("d".into(), json!(g.d()));
                let gens: Vec<Value> = g.generators().iter().map(QuadElement::to_json).collect();
                obj.insert("generators".into(), Value::Array(gens));
            }
        }
        Value::Object(obj)
    }
}

/// The conventional name of a two-sided ideal of a `C_k` ring:
/// `J(R)`, `Q^m`, `z^nR`, `z^nJ(R)`, with exponent 1 omitted.
pub fn ideal_name(pos: SymbolicIdeal, k: u64) -> String {
    let power = |base: &str, e: u64, tail: &str| {
        if e == 1 {
            format!("{base}{tail}")
        } else {
            format!("{base}^{e}{tail}")
        }
    };
    match pos {
        SymbolicIdeal::Unit => "R".into(),
        SymbolicIdeal::Zero => "0".into(),
        SymbolicIdeal::ChainPos(i) => match decode_position(k, i) {
            ChainIdeal::Radical => "J(R)".into(),
            ChainIdeal::QPow(m) => power("Q", m, ""),
            ChainIdeal::ZR(n) => power("z", n, "R"),
            ChainIdeal::ZJ(n) => power("z", n, "J(R)"),
        },
    }
}

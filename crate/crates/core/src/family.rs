//! Finite and cofinite sets of positive indices.

use std::collections::BTreeSet;

use serde_json::{json, Value};

/// A subset of `{1, 2, 3, …}` that is finite or has finite complement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IndexPart {
    Finite(BTreeSet<u64>),
    /// Every positive index except the listed ones.
    Cofinite(BTreeSet<u64>),
}

impl Default for IndexPart {
    fn default() -> Self {
        IndexPart::empty()
    }
}

impl IndexPart {
    pub fn empty() -> Self {
        IndexPart::Finite(BTreeSet::new())
    }

    pub fn all() -> Self {
        IndexPart::Cofinite(BTreeSet::new())
    }

    pub fn finite<I: IntoIterator<Item = u64>>(it: I) -> Self {
        IndexPart::Finite(it.into_iter().collect())
    }

    pub fn cofinite<I: IntoIterator<Item = u64>>(excluded: I) -> Self {
        IndexPart::Cofinite(excluded.into_iter().collect())
    }

    /// Drops the index 0, which names no point, from the representation.
    pub fn normalized(self) -> Self {
        match self {
            IndexPart::Finite(mut s) => {
                s.remove(&0);
                IndexPart::Finite(s)
            }
            IndexPart::Cofinite(mut s) => {
                s.remove(&0);
                IndexPart::Cofinite(s)
            }
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        match self {
            IndexPart::Finite(s) => n >= 1 && s.contains(&n),
            IndexPart::Cofinite(e) => n >= 1 && !e.contains(&n),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, IndexPart::Cofinite(_))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, IndexPart::Finite(s) if s.is_empty())
    }

    pub fn union(&self, other: &IndexPart) -> IndexPart {
        use IndexPart::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a | b),
            (Finite(a), Cofinite(e)) | (Cofinite(e), Finite(a)) => Cofinite(e - a),
            (Cofinite(e), Cofinite(f)) => Cofinite(e & f),
        }
    }

    pub fn intersection(&self, other: &IndexPart) -> IndexPart {
        use IndexPart::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a & b),
            (Finite(a), Cofinite(e)) | (Cofinite(e), Finite(a)) => Finite(a - e),
            (Cofinite(e), Cofinite(f)) => Cofinite(e | f),
        }
    }

    pub fn is_subset(&self, other: &IndexPart) -> bool {
        use IndexPart::*;
        match (self, other) {
            (Finite(a), _) => a.iter().all(|&n| other.contains(n)),
            (Cofinite(_), Finite(_)) => false,
            // complement of e inside complement of f  ⇔  f ⊆ e
            (Cofinite(e), Cofinite(f)) => f.iter().all(|n| e.contains(n)),
        }
    }

    /// `{n ≥ 1 : k·n ∈ self}`.
    pub fn divided_by(&self, k: u64) -> IndexPart {
        assert!(k >= 1, "divisor must be positive");
        let shrink = |s: &BTreeSet<u64>| s.iter().filter(|&&x| x % k == 0).map(|&x| x / k).collect();
        match self {
            IndexPart::Finite(s) => IndexPart::Finite(shrink(s)),
            IndexPart::Cofinite(e) => IndexPart::Cofinite(shrink(e)),
        }
    }

    /// Members in `1..=n`.
    pub fn up_to(&self, n: u64) -> Vec<u64> {
        (1..=n).filter(|&i| self.contains(i)).collect()
    }

    /// `{"kind":"finite","idx":[…]}` or `{"kind":"cofinite","idx":[excluded…]}`.
    pub fn to_json(&self) -> Value {
        match self {
            IndexPart::Finite(s) => json!({"kind": "finite", "idx": s}),
            IndexPart::Cofinite(e) => json!({"kind": "cofinite", "idx": e}),
        }
    }

    /// Finite parts as bare arrays, cofinite parts in full.
    pub fn to_compact_json(&self) -> Value {
        match self {
            IndexPart::Finite(s) => json!(s),
            IndexPart::Cofinite(_) => self.to_json(),
        }
    }

    /// Accepts both the full and the compact form.
    pub fn from_json(value: &Value) -> Result<IndexPart, String> {
        let indices = |v: &Value| -> Result<BTreeSet<u64>, String> {
            v.as_array()
                .ok_or_else(|| "expected an array of indices".to_string())?
                .iter()
                .map(|x| match x.as_u64() {
                    Some(n) if n >= 1 => Ok(n),
                    _ => Err(format!("index {x} is not a positive integer")),
                })
                .collect()
        };
        match value {
            Value::Array(_) => Ok(IndexPart::Finite(indices(value)?)),
            Value::Object(map) => {
                let idx = map.get("idx").map(indices).transpose()?.unwrap_or_default();
                match map.get("kind").and_then(Value::as_str) {
                    Some("finite") => Ok(IndexPart::Finite(idx)),
                    Some("cofinite") => Ok(IndexPart::Cofinite(idx)),
                    Some(other) => Err(format!("unknown index kind {other:?}")),
                    None => Err("index part needs a \"kind\"".into()),
                }
            }
            _ => Err("index part must be an array or an object".into()),
        }
    }
}

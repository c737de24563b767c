//! Two-sided ideals of a uniserial domain, named by their place in the
//! descending ideal chain `R ⊋ J(R) ⊋ … ⊋ 0`.

use std::fmt;

use serde_json::{json, Value};

/// A two-sided ideal in a totally ordered chain.
///
/// `ChainPos(0)` is the Jacobson radical `J(R)`; larger positions are
/// smaller ideals. `Unit` and `Zero` sit outside the numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolicIdeal {
    Unit,
    ChainPos(u64),
    Zero,
}

impl SymbolicIdeal {
    pub const J: SymbolicIdeal = SymbolicIdeal::ChainPos(0);

    /// `self ⊆ other`.
    ///
    /// The derived `Ord` lists ideals from largest to smallest, so inclusion
    /// is the reversed order.
    pub fn is_subset_of(self, other: SymbolicIdeal) -> bool {
        self >= other
    }

    pub fn to_json(self) -> Value {
        match self {
            SymbolicIdeal::Unit => json!({"pos": "R"}),
            SymbolicIdeal::ChainPos(i) => json!({"pos": i}),
            SymbolicIdeal::Zero => json!({"pos": "0"}),
        }
    }

    pub fn from_json(value: &Value) -> Option<SymbolicIdeal> {
        match value.get("pos")? {
            Value::String(s) if s == "R" => Some(SymbolicIdeal::Unit),
            Value::String(s) if s == "0" => Some(SymbolicIdeal::Zero),
            v => v.as_u64().map(SymbolicIdeal::ChainPos),
        }
    }
}

impl fmt::Display for SymbolicIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicIdeal::Unit => write!(f, "R"),
            SymbolicIdeal::ChainPos(i) => write!(f, "pos{i}"),
            SymbolicIdeal::Zero => write!(f, "0"),
        }
    }
}

/// The shape of a chain position in an exceptional ring of type `C_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainIdeal {
    /// `J(R)` itself.
    Radical,
    /// `Qᵐ`, `m ≥ 1`.
    QPow(u64),
    /// `zⁿR`, `n ≥ 1`.
    ZR(u64),
    /// `zⁿJ(R)`, `n ≥ 1`; only used for `k = 1`, where it is not a power of `Q`.
    ZJ(u64),
}

/// Decodes chain position `pos` for type `C_k`.
///
/// - `C₀`: `J, Q, Q², …`
/// - `C₁`: `J, zR, zJ, z²R, z²J, …` (here `Qⁿ = zⁿR`)
/// - `C_k`, `k ≥ 2`: `J, Q, …, Q^{k−1}, zR, Q^k, …` with `Q^{kn} = zⁿJ`
pub fn decode_position(k: u64, pos: u64) -> ChainIdeal {
    if pos == 0 {
        return ChainIdeal::Radical;
    }
    match k {
        0 => ChainIdeal::QPow(pos),
        1 => {
            if pos % 2 == 1 {
                ChainIdeal::ZR(pos.div_ceil(2))
            } else {
                ChainIdeal::ZJ(pos / 2)
            }
        }
        _ => {
            // blocks of k+1 positions end in zⁿR
            if (pos + 1).is_multiple_of(k + 1) {
                ChainIdeal::ZR((pos + 1) / (k + 1))
            } else {
                ChainIdeal::QPow(pos - pos / (k + 1))
            }
        }
    }
}

/// Position of `Qᵐ` for type `C_k`, `m ≥ 1`.
pub fn q_power_position(k: u64, m: u64) -> u64 {
    match k {
        0 => m,
        1 => 2 * m - 1,
        _ => m + m / k,
    }
}

/// Position of `zⁿR`, `n ≥ 1`; `None` for `k = 0`, which has no element `z`.
pub fn zr_position(k: u64, n: u64) -> Option<u64> {
    match k {
        0 => None,
        1 => Some(2 * n - 1),
        _ => Some(n * (k + 1) - 1),
    }
}

/// Position of `zⁿJ(R)`, `n ≥ 1`; `None` for `k = 0`.
pub fn zj_position(k: u64, n: u64) -> Option<u64> {
    zr_position(k, n).map(|p| p + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn containment_is_total() {
        use SymbolicIdeal::*;
        assert!(Zero.is_subset_of(ChainPos(3)));
        assert!(ChainPos(3).is_subset_of(ChainPos(1)));
        assert!(ChainPos(1).is_subset_of(Unit));
        assert!(!Unit.is_subset_of(ChainPos(0)));
        assert!(ChainPos(2).is_subset_of(ChainPos(2)));
    }

    #[test]
    fn decoding_matches_positions() {
        for k in 0..5 {
            for m in 1..30 {
                assert_eq!(decode_position(k, q_power_position(k, m)), match k {
                    1 => ChainIdeal::ZR(m),
                    _ => ChainIdeal::QPow(m),
                });
            }
            for n in 1..10 {
                if let Some(p) = zr_position(k, n) {
                    assert_eq!(decode_position(k, p), ChainIdeal::ZR(n));
                }
            }
        }
        // C_k: Q^{kn} sits right after zⁿR
        for k in 2..5 {
            for n in 1..6 {
                assert_eq!(q_power_position(k, k * n), zj_position(k, n).unwrap());
            }
        }
    }

    #[test]
    fn c2_chain_prefix() {
        let names: Vec<_> = (0..7).map(|p| decode_position(2, p)).collect();
        use ChainIdeal::*;
        assert_eq!(names, vec![Radical, QPow(1), ZR(1), QPow(2), QPow(3), ZR(2), QPow(4)]);
    }

    #[test]
    fn json_round_trip() {
        for i in [SymbolicIdeal::Unit, SymbolicIdeal::ChainPos(4), SymbolicIdeal::Zero] {
            assert_eq!(SymbolicIdeal::from_json(&i.to_json()), Some(i));
        }
    }
}

use ziegler::ideal::{q_power_position, zj_position, zr_position, SymbolicIdeal};
use ziegler::ringspec::ideal_name;

/// Reads a displayed ideal name back to its chain position.
fn position_of(name: &str, k: u64) -> Option<u64> {
    let exponent = |s: &str| if s.is_empty() { Some(1) } else { s.strip_prefix('^')?.parse().ok() };
    if name == "J(R)" {
        return Some(0);
    }
    if let Some(rest) = name.strip_prefix('Q') {
        return Some(q_power_position(k, exponent(rest)?));
    }
    let rest = name.strip_prefix('z')?;
    if let Some(e) = rest.strip_suffix("J(R)") {
        return zj_position(k, exponent(e)?);
    }
    zr_position(k, exponent(rest.strip_suffix('R')?)?)
}

#[test]
fn names_read_back_to_their_positions() {
    for k in 0..6 {
        let mut previous: Option<SymbolicIdeal> = None;
        for i in 0..80 {
            let pos = SymbolicIdeal::ChainPos(i);
            let name = ideal_name(pos, k);
            assert_eq!(position_of(&name, k), Some(i), "k={k} {name}");
            if let Some(prev) = previous {
                assert!(pos.is_subset_of(prev) && !prev.is_subset_of(pos));
            }
            previous = Some(pos);
        }
    }
}

#[test]
fn z_times_radical_renders_as_a_power_of_q() {
    for k in 2..6 {
        for n in 1..10 {
            let pos = SymbolicIdeal::ChainPos(zj_position(k, n).unwrap());
            assert_eq!(ideal_name(pos, k), format!("Q^{}", k * n));
        }
    }
}

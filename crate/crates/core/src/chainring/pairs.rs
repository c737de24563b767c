use std::fmt;

use super::{ChainError, ChainRing, FinModule};
use crate::Exec;

/// The pair `⟨I, J⟩ = ⟨(p^a), (p^b)⟩` with `0 ≤ a ≤ n` and `1 ≤ b ≤ n`.
///
/// `J = R` is excluded: the clause `¬(r|x·r)` it forces for every `r ∉ I`
/// is unsatisfiable, while the quantifier criteria are vacuous there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EPair {
    pub a: u32,
    pub b: u32,
}

impl EPair {
    pub fn new(ring: ChainRing, a: u32, b: u32) -> Result<Self, ChainError> {
        if a > ring.n() || b == 0 || b > ring.n() {
            return Err(ChainError::BadPair { a, b });
        }
        Ok(EPair { a, b })
    }

    /// Every pair over the ring, ordered by `(a, b)`.
    pub fn all(ring: ChainRing) -> Vec<EPair> {
        (0..=ring.n()).flat_map(|a| (1..=ring.n()).map(move |b| EPair { a, b })).collect()
    }

    /// `I = R`, realized only by zero.
    pub fn is_degenerate(&self) -> bool {
        self.a == 0
    }
}

impl fmt::Display for EPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨(p^{}),(p^{})⟩", self.a, self.b)
    }
}

/// The pp-type of an element, read as an e-pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PpType {
    /// The zero element, which satisfies every pp-formula.
    Zero,
    Pair(EPair),
}

/// An element `x ∈ ℤ/p^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Realizer {
    pub m: u32,
    pub x: u64,
}

/// `⟨I, J⟩` with `I = ann x = (p^a)` and `J = {s : s ∤ x} = (p^b)`.
pub fn pp_type(x: usize, m: &FinModule) -> PpType {
    if x == 0 {
        return PpType::Zero;
    }
    let ring = m.ring();
    let a = (0..=ring.n()).find(|&a| m.scale(x, ring.power(a)) == 0).expect("p^n kills every module");
    let b = (1..=ring.n())
        .find(|&b| !(0..m.size()).any(|y| m.scale(y, ring.power(b)) == x))
        .expect("p^n divides only zero");
    PpType::Pair(EPair { a, b })
}

fn check(ring: ChainRing, pair: EPair) -> Result<(), ChainError> {
    EPair::new(ring, pair.a, pair.b).map(|_| ())
}

/// Both equivalent criteria of the consistency lemma, evaluated by
/// quantifying over ring elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CriterionReport {
    /// For all `r ∈ I, r* ∉ I, s ∈ J, s* ∉ J`: `s*r* ≠ sr* + s*r`.
    pub cond2: bool,
    /// For all `r ∈ I, r* ∉ I, s ∈ J, s* ∉ J`: `s*r* ∉ RsrR`.
    pub cond3: bool,
}

impl CriterionReport {
    pub fn consistent(&self) -> bool {
        self.cond3
    }

    pub fn agree(&self) -> bool {
        self.cond2 == self.cond3
    }
}

pub fn consistent_criterion(pair: EPair, ring: ChainRing, exec: Exec) -> Result<CriterionReport, ChainError> {
    check(ring, pair)?;
    let q = ring.order();
    let elems: Vec<u64> = (0..q).collect();
    let (inside_i, outside_i): (Vec<u64>, Vec<u64>) = elems.iter().partition(|&&x| ring.in_ideal(x, pair.a));
    let (inside_j, outside_j): (Vec<u64>, Vec<u64>) = elems.iter().partition(|&&x| ring.in_ideal(x, pair.b));
    let violates = |test: &(dyn Fn(u64, u64, u64, u64) -> bool + Sync)| {
        exec.any(&inside_i, |&r| {
            outside_i
                .iter()
                .any(|&rs| inside_j.iter().any(|&s| outside_j.iter().any(|&ss| test(r, rs, s, ss))))
        })
    };
    let cond2 = !violates(&|r, rs, s, ss| (ss * rs) % q == (s * rs + ss * r) % q);
    // RsrR = (sr) is the set of elements of valuation at least v(sr)
    let cond3 = !violates(&|r, rs, s, ss| ring.valuation(ss * rs) >= ring.valuation(s * r));
    Ok(CriterionReport { cond2, cond3 })
}

/// Divisibility in `ℤ/p^m`: `table[c][x]` iff some `y` has `y·c = x`.
fn divisibility_table(pm: u64) -> Vec<Vec<bool>> {
    (0..pm)
        .map(|c| {
            let mut row = vec![false; pm as usize];
            for y in 0..pm {
                row[((y * c) % pm) as usize] = true;
            }
            row
        })
        .collect()
}

/// Whether `x ∈ ℤ/p^m` satisfies every clause of `J*/I`:
/// `s|x` for `s ∉ J`, `x·r = 0` for `r ∈ I`, and `¬(sr | x·r)` for
/// `s ∈ J, r ∉ I`.
fn satisfies(pair: EPair, ring: ChainRing, pm: u64, div: &[Vec<bool>], x: u64) -> bool {
    let q = ring.order();
    let divides = |c: u64, y: u64| div[(c % pm) as usize][(y % pm) as usize];
    for s in 0..q {
        if !ring.in_ideal(s, pair.b) && !divides(s, x) {
            return false;
        }
    }
    for r in 0..q {
        if ring.in_ideal(r, pair.a) {
            if !(x * r).is_multiple_of(pm) {
                return false;
            }
        } else {
            for s in (0..q).filter(|&s| ring.in_ideal(s, pair.b)) {
                if divides(s * r, x * r) {
                    return false;
                }
            }
        }
    }
    true
}

/// An element of some `ℤ/p^m`, `m ≤ n`, realizing `J*/I`, found by
/// exhaustive search with the smallest `m` and then smallest `x`.
pub fn consistent_bruteforce(pair: EPair, ring: ChainRing, exec: Exec) -> Result<Option<Realizer>, ChainError> {
    check(ring, pair)?;
    for m in 1..=ring.n() {
        let pm = ring.p().pow(m);
        let div = divisibility_table(pm);
        let xs: Vec<u64> = (0..pm).collect();
        let hits = exec.map(&xs, |&x| satisfies(pair, ring, pm, &div, x));
        if let Some(x) = hits.iter().position(|&h| h) {
            return Ok(Some(Realizer { m, x: x as u64 }));
        }
    }
    Ok(None)
}

/// The indecomposable `ℤ/p^m` realizing a consistent, non-degenerate pair:
/// the smallest `m` with a nonzero element of that type satisfying `J*/I`.
pub fn hull(pair: EPair, ring: ChainRing) -> Result<(FinModule, Realizer), ChainError> {
    check(ring, pair)?;
    if pair.is_degenerate() {
        return Err(ChainError::Degenerate);
    }
    for m in 1..=ring.n() {
        let module = FinModule::cyclic(ring, m)?;
        let pm = ring.p().pow(m);
        let div = divisibility_table(pm);
        for x in 1..pm {
            if pp_type(x as usize, &module) == PpType::Pair(pair) && satisfies(pair, ring, pm, &div, x) {
                return Ok((module, Realizer { m, x }));
            }
        }
    }
    Err(ChainError::Inconsistent { a: pair.a, b: pair.b })
}

/// `N(I₁,J₁) ≅ N(I₂,J₂)`: some `u ≠ 0` has `I₁ = uI₂` and `J₁u = J₂`, or
/// some `v ≠ 0` has `vI₁ = I₂` and `J₁ = J₂v`.
pub fn pairs_isomorphic(p1: EPair, p2: EPair, ring: ChainRing) -> Result<bool, ChainError> {
    for p in [p1, p2] {
        if !consistent_criterion(p, ring, Exec::Sequential)?.consistent() {
            return Err(ChainError::Inconsistent { a: p.a, b: p.b });
        }
    }
    let n = ring.n();
    // uI for I = (p^a) is the ideal (p^{a + v(u)})
    let shifted = |a: u32, u: u64| (a + ring.valuation(u)).min(n);
    let forward = |x: EPair, y: EPair| (1..ring.order()).any(|u| x.a == shifted(y.a, u) && shifted(x.b, u) == y.b);
    Ok(forward(p1, p2) || forward(p2, p1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u64, n: u32) -> ChainRing {
        ChainRing::new(p, n).unwrap()
    }

    fn pair(a: u32, b: u32) -> EPair {
        EPair { a, b }
    }

    #[test]
    fn type_examples() {
        let r = z(2, 3);
        let m8 = FinModule::cyclic(r, 3).unwrap();
        assert_eq!(pp_type(2, &m8), PpType::Pair(pair(2, 2)));
        assert_eq!(pp_type(0, &m8), PpType::Zero);
        for m in 1..=3 {
            assert_eq!(pp_type(1, &FinModule::cyclic(r, m).unwrap()), PpType::Pair(pair(m, 1)));
        }
    }

    #[test]
    fn criterion_examples() {
        let r = z(2, 3);
        let ok = consistent_criterion(pair(2, 2), r, Exec::Sequential).unwrap();
        assert!(ok.cond2 && ok.cond3);
        let bad = consistent_criterion(pair(2, 3), r, Exec::Sequential).unwrap();
        assert!(!bad.cond3 && !bad.cond2);
        assert!(consistent_criterion(pair(0, 1), r, Exec::Sequential).unwrap().consistent());
        assert!(EPair::new(r, 1, 0).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        let r = z(2, 3);
        assert_eq!(consistent_bruteforce(pair(2, 2), r, Exec::Sequential).unwrap(), Some(Realizer { m: 3, x: 2 }));
        assert_eq!(consistent_bruteforce(pair(2, 3), r, Exec::Sequential).unwrap(), None);
        let z4 = z(2, 2);
        assert!(consistent_bruteforce(pair(0, 1), z4, Exec::Parallel).unwrap().is_some());
    }

    #[test]
    fn criterion_matches_bruteforce_small() {
        for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 2), (5, 2)] {
            let r = z(p, n);
            for e in EPair::all(r) {
                let c = consistent_criterion(e, r, Exec::Parallel).unwrap();
                assert!(c.agree(), "{e} over {r}");
                let b = consistent_bruteforce(e, r, Exec::Parallel).unwrap();
                assert_eq!(c.consistent(), b.is_some(), "{e} over {r}");
            }
        }
    }

    #[test]
    fn hull_examples() {
        let r = z(2, 3);
        let (m, w) = hull(pair(2, 2), r).unwrap();
        assert_eq!((m.lengths(), w.x), (&[3][..], 2));
        let zp = z(5, 1);
        let (m, w) = hull(pair(1, 1), zp).unwrap();
        assert_eq!((m.lengths(), w.x), (&[1][..], 1));
        assert_eq!(hull(pair(0, 1), r), Err(ChainError::Degenerate));
        assert_eq!(hull(pair(2, 3), r), Err(ChainError::Inconsistent { a: 2, b: 3 }));
    }

    #[test]
    fn isomorphism_examples() {
        let r = z(2, 3);
        assert!(pairs_isomorphic(pair(1, 2), pair(2, 1), r).unwrap());
        assert!(pairs_isomorphic(pair(2, 2), pair(2, 2), r).unwrap());
        assert!(!pairs_isomorphic(pair(1, 1), pair(2, 2), r).unwrap());
        assert!(pairs_isomorphic(pair(2, 3), pair(2, 2), r).is_err());
    }

    #[test]
    fn isomorphism_matches_hulls() {
        for (p, n) in [(2, 3), (3, 3), (2, 4)] {
            let r = z(p, n);
            let realized: Vec<EPair> = EPair::all(r)
                .into_iter()
                .filter(|&e| !e.is_degenerate() && consistent_criterion(e, r, Exec::Sequential).unwrap().consistent())
                .collect();
            for &x in &realized {
                for &y in &realized {
                    let same_hull = hull(x, r).unwrap().0 == hull(y, r).unwrap().0;
                    assert_eq!(pairs_isomorphic(x, y, r).unwrap(), same_hull, "{x} {y}");
                }
            }
        }
    }
}

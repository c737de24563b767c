use std::collections::HashMap;
use std::fmt;

use super::{ChainRing, ElemSet, FinModule};

/// Default cap on the number of atoms in generated lattice elements.
pub const DEFAULT_MAX_ATOMS: usize = 4;

/// `Σᵢ (sᵢ|x ∧ x·tᵢ = 0)` for ring elements `sᵢ, tᵢ`; no atoms is `x = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PpFormula {
    pub atoms: Vec<(u64, u64)>,
}

impl PpFormula {
    pub fn zero() -> Self {
        PpFormula { atoms: Vec::new() }
    }

    pub fn top() -> Self {
        PpFormula { atoms: vec![(1, 0)] }
    }

    pub fn atom(s: u64, t: u64) -> Self {
        PpFormula { atoms: vec![(s, t)] }
    }

    pub fn divisibility(s: u64) -> Self {
        PpFormula::atom(s, 0)
    }

    pub fn annihilator(t: u64) -> Self {
        PpFormula::atom(1, t)
    }

    pub fn sum(&self, other: &PpFormula) -> PpFormula {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        PpFormula { atoms }
    }
}

impl fmt::Display for PpFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "x=0");
        }
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|&(s, t)| match (s, t) {
                (1, 0) => "x=x".to_string(),
                (s, 0) => format!("{s}|x"),
                (1, t) => format!("x*{t}=0"),
                (s, t) => format!("{s}|x & x*{t}=0"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn atom_eval(s: u64, t: u64, m: &FinModule) -> ElemSet {
    let mut divisible = m.empty_set();
    for y in 0..m.size() {
        divisible.insert(m.scale(y, s));
    }
    let mut out = m.empty_set();
    for x in divisible.ones() {
        if m.scale(x, t) == 0 {
            out.insert(x);
        }
    }
    out
}

/// The solution set `φ(M)`: the subgroup sum of the atom solution sets.
pub fn pp_eval(phi: &PpFormula, m: &FinModule) -> ElemSet {
    phi.atoms
        .iter()
        .fold(m.zero_set(), |acc, &(s, t)| m.subgroup_sum(&acc, &atom_eval(s, t, m)))
}

/// `φ ≤ ψ`, decided on the indecomposables `ℤ/p^m`, `m ≤ n`.
pub fn pp_leq(phi: &PpFormula, psi: &PpFormula, ring: ChainRing) -> bool {
    ring.indecomposables().iter().all(|m| pp_eval(phi, m).is_subset(&pp_eval(psi, m)))
}

/// Representatives of the pp-lattice: sums of at most `max_atoms` atoms
/// `(p^i, p^j)`, one per evaluation on the indecomposables, preferring
/// fewer atoms. Sorted by total solution-set size, then by formula.
pub fn pp_lattice(ring: ChainRing, max_atoms: usize) -> Vec<PpFormula> {
    let modules = ring.indecomposables();
    let n = ring.n();
    let mut exponents: Vec<(u32, u32)> = (0..=n).flat_map(|i| (0..=n).map(move |j| (i, j))).collect();
    // plain divisibility and annihilator atoms first, so representatives read simply
    exponents.sort_by_key(|&(i, j)| ((i != 0) as u8 + (j != n) as u8, i, j));
    let atoms: Vec<(u64, u64)> = exponents.iter().map(|&(i, j)| (ring.power(i), ring.power(j))).collect();
    let atom_evals: Vec<Vec<ElemSet>> =
        atoms.iter().map(|&(s, t)| modules.iter().map(|m| atom_eval(s, t, m)).collect()).collect();

    let mut seen: HashMap<Vec<ElemSet>, PpFormula> = HashMap::new();
    let zero: Vec<ElemSet> = modules.iter().map(|m| m.zero_set()).collect();
    seen.insert(zero.clone(), PpFormula::zero());
    // breadth-first by atom count; only newly reached evaluations are extended
    let mut frontier = vec![(PpFormula::zero(), zero)];
    for _ in 0..max_atoms {
        let mut next = Vec::new();
        for (phi, evals) in &frontier {
            for (atom, ae) in atoms.iter().zip(&atom_evals) {
                let sums: Vec<ElemSet> =
                    modules.iter().zip(evals).zip(ae).map(|((m, e), a)| m.subgroup_sum(e, a)).collect();
                if !seen.contains_key(&sums) {
                    let psi = phi.sum(&PpFormula { atoms: vec![*atom] });
                    seen.insert(sums.clone(), psi.clone());
                    next.push((psi, sums));
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<(usize, PpFormula)> = seen
        .into_iter()
        .map(|(evals, phi)| (evals.iter().map(|e| e.count_ones(..)).sum(), phi))
        .collect();
    out.sort();
    out.into_iter().map(|(_, phi)| phi).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u64, n: u32) -> ChainRing {
        ChainRing::new(p, n).unwrap()
    }

    fn elems(set: &ElemSet) -> Vec<usize> {
        set.ones().collect()
    }

    #[test]
    fn evaluation_examples() {
        let r = z(2, 3);
        let m = FinModule::cyclic(r, 3).unwrap();
        assert_eq!(elems(&pp_eval(&PpFormula::atom(2, 4), &m)), vec![0, 2, 4, 6]);
        assert_eq!(elems(&pp_eval(&PpFormula::top(), &m)), (0..8).collect::<Vec<_>>());
        assert_eq!(elems(&pp_eval(&PpFormula::zero(), &m)), vec![0]);
    }

    #[test]
    fn evaluation_matches_exhaustive_decomposition() {
        // x ∈ Σ atoms iff x = Σ xᵢ with each xᵢ in its atom, checked directly
        let r = z(2, 3);
        let m = FinModule::new(r, vec![2, 3]).unwrap();
        let phi = PpFormula { atoms: vec![(2, 2), (4, 0)] };
        let a: Vec<usize> = (0..m.size())
            .filter(|&x| (0..m.size()).any(|y| m.scale(y, 2) == x) && m.scale(x, 2) == 0)
            .collect();
        let b: Vec<usize> = (0..m.size()).filter(|&x| (0..m.size()).any(|y| m.scale(y, 4) == x)).collect();
        let mut expected: Vec<usize> = a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).map(|(x, y)| m.add(x, y)).collect();
        expected.sort();
        expected.dedup();
        assert_eq!(elems(&pp_eval(&phi, &m)), expected);
    }

    #[test]
    fn order_examples() {
        assert!(pp_leq(&PpFormula::divisibility(4), &PpFormula::divisibility(2), z(2, 3)));
        // on ℤ/4 itself both are {0, 2}, but on ℤ/2 the annihilator formula
        // holds everywhere while 2|x only holds at 0
        let r = z(2, 2);
        let m4 = FinModule::cyclic(r, 2).unwrap();
        assert_eq!(pp_eval(&PpFormula::annihilator(2), &m4), pp_eval(&PpFormula::divisibility(2), &m4));
        assert!(!pp_leq(&PpFormula::annihilator(2), &PpFormula::divisibility(2), r));
        assert!(pp_leq(&PpFormula::divisibility(2), &PpFormula::annihilator(2), r));
        assert!(!pp_leq(&PpFormula::divisibility(2), &PpFormula::annihilator(2), z(2, 3)));
    }

    #[test]
    fn display() {
        assert_eq!(PpFormula::zero().to_string(), "x=0");
        assert_eq!(PpFormula::top().to_string(), "x=x");
        assert_eq!(PpFormula::atom(2, 4).to_string(), "2|x & x*4=0");
        assert_eq!(PpFormula::divisibility(2).sum(&PpFormula::annihilator(2)).to_string(), "2|x + x*2=0");
    }

    #[test]
    fn lattice_is_deduplicated_and_bounded() {
        let r = z(2, 2);
        let lat = pp_lattice(r, DEFAULT_MAX_ATOMS);
        assert_eq!(lat[0], PpFormula::zero());
        assert_eq!(lat.last().unwrap(), &PpFormula::top());
        let modules = r.indecomposables();
        let evals: Vec<Vec<ElemSet>> = lat.iter().map(|f| modules.iter().map(|m| pp_eval(f, m)).collect()).collect();
        for i in 0..evals.len() {
            for j in 0..i {
                assert_ne!(evals[i], evals[j]);
            }
        }
        // over ℤ/p^n every pp-definable subgroup of ℤ/p^m is some p^j ℤ/p^m,
        // so the lattice is at most the product of chains
        assert!(lat.len() <= 2 * 3);
    }
}

use super::{pp_eval, pp_lattice, ChainRing, ElemSet, FinModule, PpFormula, DEFAULT_MAX_ATOMS};

/// `|φ(M) / (φ ∧ ψ)(M)|`, the meet taken on solution sets.
pub fn invariant(phi: &PpFormula, psi: &PpFormula, m: &FinModule) -> u64 {
    let top = pp_eval(phi, m);
    let mut bottom = pp_eval(psi, m);
    bottom.intersect_with(&top);
    (top.count_ones(..) / bottom.count_ones(..)) as u64
}

/// Equality of every invariant over the generated pp-lattice.
pub fn elem_equiv(m: &FinModule, n: &FinModule, ring: ChainRing) -> bool {
    let lattice = pp_lattice(ring, DEFAULT_MAX_ATOMS);
    let sizes = |module: &FinModule| -> Vec<ElemSet> { lattice.iter().map(|f| pp_eval(f, module)).collect() };
    let (em, en) = (sizes(m), sizes(n));
    let index = |e: &[ElemSet], i: usize, j: usize| {
        let mut meet = e[j].clone();
        meet.intersect_with(&e[i]);
        e[i].count_ones(..) / meet.count_ones(..)
    };
    (0..lattice.len()).all(|i| (0..lattice.len()).all(|j| index(&em, i, j) == index(&en, i, j)))
}

/// Checks that `ρ(x, y) := x = y·r` gives mutually inverse order
/// isomorphisms between the pp-definable subgroups of `M` in
/// `[ρ(x,0), ∃y ρ] = [0, Mr]` and in `[ρ(0,y), ∃x ρ] = [ann_M r, M]`:
/// `φ ↦ {y : y·r ∈ φ(M)}` and `ψ ↦ ψ(M)·r`.
pub fn goursat_check(r: u64, m: &FinModule) -> bool {
    let ring = m.ring();
    let image = |s: &ElemSet| {
        let mut out = m.empty_set();
        for y in s.ones() {
            out.insert(m.scale(y, r));
        }
        out
    };
    let preimage = |s: &ElemSet| {
        let mut out = m.empty_set();
        for y in 0..m.size() {
            if s.contains(m.scale(y, r)) {
                out.insert(y);
            }
        }
        out
    };
    let all = m.full_set();
    let (low_x, high_x) = (m.zero_set(), image(&all));
    let (low_y, high_y) = (preimage(&m.zero_set()), all);
    let mut definable: Vec<ElemSet> = pp_lattice(ring, DEFAULT_MAX_ATOMS).iter().map(|f| pp_eval(f, m)).collect();
    definable.sort_by_key(|s| s.ones().collect::<Vec<_>>());
    definable.dedup();
    let within = |s: &ElemSet, lo: &ElemSet, hi: &ElemSet| lo.is_subset(s) && s.is_subset(hi);
    let left: Vec<&ElemSet> = definable.iter().filter(|s| within(s, &low_x, &high_x)).collect();
    let right: Vec<&ElemSet> = definable.iter().filter(|s| within(s, &low_y, &high_y)).collect();

    let forward_ok = left.iter().all(|phi| {
        let psi = preimage(phi);
        right.contains(&&psi) && image(&psi) == **phi
    });
    let backward_ok = right.iter().all(|psi| {
        let phi = image(psi);
        left.contains(&&phi) && preimage(&phi) == **psi
    });
    let monotone = left.iter().all(|a| {
        left.iter().all(|b| a.is_subset(b) == preimage(a).is_subset(&preimage(b)))
    });
    forward_ok && backward_ok && monotone && left.len() == right.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u64, n: u32) -> ChainRing {
        ChainRing::new(p, n).unwrap()
    }

    #[test]
    fn invariant_examples() {
        let r = z(2, 2);
        let m4 = FinModule::cyclic(r, 2).unwrap();
        let m2 = FinModule::cyclic(r, 1).unwrap();
        assert_eq!(invariant(&PpFormula::top(), &PpFormula::zero(), &m4), 4);
        let (ann, div) = (PpFormula::annihilator(2), PpFormula::divisibility(2));
        assert_eq!(invariant(&ann, &div, &m4), 1);
        assert_eq!(invariant(&ann, &div, &m2), 2);
    }

    #[test]
    fn equivalence_examples() {
        let r = z(2, 2);
        let m4 = FinModule::new(r, vec![2]).unwrap();
        let m44 = FinModule::new(r, vec![2, 2]).unwrap();
        assert!(!elem_equiv(&m4, &m44, r));
        assert!(elem_equiv(&m44, &m44, r));
        let a = FinModule::new(r, vec![1, 2]).unwrap();
        let b = FinModule::new(r, vec![2, 1]).unwrap();
        assert!(elem_equiv(&a, &b, r));
        let c = FinModule::new(r, vec![1, 1]).unwrap();
        assert!(!elem_equiv(&m4, &c, r));
    }

    #[test]
    fn goursat_on_cyclic_modules() {
        let r = z(2, 3);
        for m in 1..=3 {
            let module = FinModule::cyclic(r, m).unwrap();
            for s in 0..8 {
                assert!(goursat_check(s, &module), "r={s} M=Z/{}", 1 << m);
            }
        }
        let m = FinModule::new(r, vec![1, 3]).unwrap();
        assert!(goursat_check(2, &m));
    }
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ziegler::chainring::{
    elem_equiv, hull, pairs_isomorphic, pp_eval, pp_leq, pp_lattice, ChainRing, EPair, FinModule, PpFormula,
    DEFAULT_MAX_ATOMS,
};

fn random_formula(rng: &mut ChaCha8Rng, r: ChainRing) -> PpFormula {
    let atoms = (0..rng.gen_range(0..=3)).map(|_| (rng.gen_range(0..r.order()), rng.gen_range(0..r.order()))).collect();
    PpFormula { atoms }
}

fn random_module(rng: &mut ChaCha8Rng, r: ChainRing, max_summands: usize) -> FinModule {
    let lengths = (0..rng.gen_range(1..=max_summands)).map(|_| rng.gen_range(1..=r.n())).collect();
    FinModule::new(r, lengths).unwrap()
}

#[test]
fn evaluation_splits_over_direct_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let r = [ChainRing::new(2, 3).unwrap(), ChainRing::new(3, 2).unwrap()][rng.gen_range(0..2)];
        let phi = random_formula(&mut rng, r);
        let m = random_module(&mut rng, r, 2);
        let n = random_module(&mut rng, r, 2);
        let sum = m.direct_sum(&n).unwrap();
        let (on_m, on_n, on_sum) = (pp_eval(&phi, &m), pp_eval(&phi, &n), pp_eval(&phi, &sum));
        let split = m.lengths().len();
        for z in 0..sum.size() {
            let c = sum.coords(z);
            let inside = on_m.contains(m.index(&c[..split])) && on_n.contains(n.index(&c[split..]));
            assert_eq!(on_sum.contains(z), inside, "{phi} on {sum}");
        }
        assert_eq!(on_sum, m.product_set(&n, &on_m, &on_n));
    }
}

#[test]
fn order_on_indecomposables_extends_to_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let r = ChainRing::new(2, 3).unwrap();
    let lattice = pp_lattice(r, DEFAULT_MAX_ATOMS);
    for _ in 0..100 {
        let phi = &lattice[rng.gen_range(0..lattice.len())];
        let psi = &lattice[rng.gen_range(0..lattice.len())];
        let m = random_module(&mut rng, r, 3);
        if pp_leq(phi, psi, r) {
            assert!(pp_eval(phi, &m).is_subset(&pp_eval(psi, &m)), "{phi} ≤ {psi} fails on {m}");
        }
    }
}

#[test]
fn isomorphic_pairs_have_equal_hulls() {
    for p in [2, 3] {
        for n in 1..=4 {
            let r = ChainRing::new(p, n).unwrap();
            let realized: Vec<EPair> = EPair::all(r).into_iter().filter(|e| !e.is_degenerate() && hull(*e, r).is_ok()).collect();
            for &a in &realized {
                for &b in &realized {
                    let same_hull = hull(a, r).unwrap().0 == hull(b, r).unwrap().0;
                    assert_eq!(pairs_isomorphic(a, b, r).unwrap(), same_hull, "{a} {b} over {r}");
                }
            }
        }
    }
}

#[test]
fn rearranged_modules_are_equivalent() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let r = ChainRing::new(3, 2).unwrap();
    for _ in 0..20 {
        let m = random_module(&mut rng, r, 3);
        let mut lengths = m.lengths().to_vec();
        lengths.reverse();
        let rearranged = FinModule::new(r, lengths).unwrap();
        assert!(elem_equiv(&m, &rearranged, r));
    }
}

use std::collections::BTreeMap;

use super::{hull, pp_eval, pp_lattice, ChainError, ChainRing, ElemSet, EPair, FinModule, PpFormula};
use super::{DEFAULT_MAX_ATOMS, MAX_ZG_EXPONENT};
use crate::topology::{FiniteSpace, PointSet, TrichotomyContext};

/// The Ziegler spectrum of `ℤ/pⁿ`: the points `ℤ/p^m`, `m = 1..=n`, with
/// specialization read off from pp-pair separation.
pub struct ChainSpectrum {
    ring: ChainRing,
    modules: Vec<FinModule>,
    lattice: Vec<PpFormula>,
    /// `evals[i][f]` is formula `f` evaluated on point `i`.
    evals: Vec<Vec<ElemSet>>,
    space: FiniteSpace,
}

/// Builds the spectrum; `y ∈ cl{x}` iff every pp-pair opened by `y` is
/// opened by `x`.
pub fn zg(ring: ChainRing) -> Result<ChainSpectrum, ChainError> {
    if ring.n() > MAX_ZG_EXPONENT {
        return Err(ChainError::ExponentTooLarge { n: ring.n(), max: MAX_ZG_EXPONENT });
    }
    let modules = ring.indecomposables();
    let lattice = pp_lattice(ring, DEFAULT_MAX_ATOMS);
    let evals: Vec<Vec<ElemSet>> = modules.iter().map(|m| lattice.iter().map(|f| pp_eval(f, m)).collect()).collect();
    let leq = |psi: usize, phi: usize| evals.iter().all(|e| e[psi].is_subset(&e[phi]));
    let pairs: Vec<(usize, usize)> = (0..lattice.len())
        .flat_map(|phi| (0..lattice.len()).map(move |psi| (phi, psi)))
        .filter(|&(phi, psi)| phi != psi && leq(psi, phi))
        .collect();
    let opened = |point: usize, (phi, psi): (usize, usize)| evals[point][phi] != evals[point][psi];
    let labels = modules.iter().map(|m| m.to_string()).collect();
    let space = FiniteSpace::from_fn(labels, |x, y| {
        pairs.iter().all(|&pr| !opened(y, pr) || opened(x, pr))
    })
    .expect("at most MAX_ZG_EXPONENT points");
    Ok(ChainSpectrum { ring, modules, lattice, evals, space })
}

impl ChainSpectrum {
    pub fn ring(&self) -> ChainRing {
        self.ring
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn modules(&self) -> &[FinModule] {
        &self.modules
    }

    pub fn lattice(&self) -> &[PpFormula] {
        &self.lattice
    }

    /// Restriction of formula `f` to the points of `c`, as a vector of sets.
    fn on(&self, c: PointSet, f: usize) -> Vec<&ElemSet> {
        c.iter().map(|i| &self.evals[i][f]).collect()
    }

    fn is_bottom_on(&self, c: PointSet, f: usize) -> bool {
        self.on(c, f).iter().all(|s| s.count_ones(..) == 1)
    }

    fn is_top_on(&self, c: PointSet, f: usize) -> bool {
        c.iter().all(|i| self.evals[i][f].count_ones(..) == self.modules[i].size())
    }

    fn representative(&self, evals: &[ElemSet]) -> Option<usize> {
        (0..self.lattice.len()).find(|&f| self.evals.iter().zip(evals).all(|(e, s)| e[f] == *s))
    }

    /// A `C`-minimal pair in `[x=0, x=x]`: `ψ` is the largest formula
    /// vanishing on `C` and `φ` lies in the class immediately above it.
    pub fn minimal_pair(&self, c: PointSet) -> Option<(PpFormula, PpFormula)> {
        if c.is_empty() {
            return None;
        }
        let psi = (0..self.lattice.len()).rev().find(|&f| self.is_bottom_on(c, f))?;
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for f in (0..self.lattice.len()).filter(|&f| !self.is_bottom_on(c, f)) {
            let size: usize = self.on(c, f).iter().map(|s| s.count_ones(..)).sum();
            classes.entry(size).or_default().push(f);
        }
        let (_, lowest) = classes.into_iter().next()?;
        let phi = lowest[0];
        // raise φ to φ + ψ so that ψ ≤ φ holds everywhere, not only on C
        let sum: Vec<ElemSet> = self
            .modules
            .iter()
            .zip(&self.evals)
            .map(|(m, e)| m.subgroup_sum(&e[phi], &e[psi]))
            .collect();
        let phi = self.representative(&sum).unwrap_or(phi);
        Some((self.lattice[phi].clone(), self.lattice[psi].clone()))
    }

    /// A pair opened exactly by point `i`.
    pub fn isolating_pair(&self, i: usize) -> Option<(PpFormula, PpFormula)> {
        let (phi, psi) = self.minimal_pair(self.space.point_closure(i))?;
        let opens = |j: usize| pp_eval(&phi, &self.modules[j]) != pp_eval(&psi, &self.modules[j]);
        ((0..self.modules.len()).all(|j| opens(j) == (j == i))).then_some((phi, psi))
    }

    fn point_of_pair(&self, pair: EPair) -> Option<usize> {
        let (m, _) = hull(pair, self.ring).ok()?;
        self.modules.iter().position(|x| *x == m)
    }

    /// The hull of the generic type of `C`: `I` collects the annihilator
    /// formulas equal to `x=x` on `C`, `J` the divisibility formulas that
    /// are not.
    pub fn generic_point(&self, c: PointSet) -> Option<usize> {
        let n = self.ring.n();
        let ann = |a: u32| self.formula_index(&PpFormula::annihilator(self.ring.power(a)));
        let div = |b: u32| self.formula_index(&PpFormula::divisibility(self.ring.power(b)));
        let a = (0..=n).find(|&a| ann(a).is_some_and(|f| self.is_top_on(c, f)))?;
        let b = (1..=n).find(|&b| div(b).is_some_and(|f| !self.is_top_on(c, f)))?;
        self.point_of_pair(EPair::new(self.ring, a, b).ok()?)
    }

    /// The hull of the critical type of `C`: `I` collects the annihilator
    /// formulas above `x=0` on `C`, `J` the divisibility formulas equal to
    /// `x=0` on `C`.
    pub fn critical_point(&self, c: PointSet) -> Option<usize> {
        let n = self.ring.n();
        let ann = |a: u32| self.formula_index(&PpFormula::annihilator(self.ring.power(a)));
        let div = |b: u32| self.formula_index(&PpFormula::divisibility(self.ring.power(b)));
        let a = (0..=n).find(|&a| ann(a).is_some_and(|f| !self.is_bottom_on(c, f)))?;
        let b = (1..=n).find(|&b| div(b).is_some_and(|f| self.is_bottom_on(c, f)))?;
        self.point_of_pair(EPair::new(self.ring, a, b).ok()?)
    }

    /// The lattice index of the class of `phi`.
    fn formula_index(&self, phi: &PpFormula) -> Option<usize> {
        let evals: Vec<ElemSet> = self.modules.iter().map(|m| pp_eval(phi, m)).collect();
        self.representative(&evals)
    }

    pub fn trichotomy(&self) -> ChainTrichotomy<'_> {
        ChainTrichotomy { spectrum: self }
    }
}

/// Trichotomy data computed from pp-formula evaluations.
pub struct ChainTrichotomy<'a> {
    spectrum: &'a ChainSpectrum,
}

impl TrichotomyContext for ChainTrichotomy<'_> {
    fn space(&self) -> &FiniteSpace {
        &self.spectrum.space
    }

    fn generic_of(&self, c: PointSet) -> Option<usize> {
        self.spectrum.generic_point(c)
    }

    fn critical_of(&self, c: PointSet) -> Option<usize> {
        self.spectrum.critical_point(c)
    }

    fn minimal_pair(&self, c: PointSet) -> Option<(String, String)> {
        self.spectrum.minimal_pair(c).map(|(phi, psi)| (phi.to_string(), psi.to_string()))
    }
}

//! Finite chain rings `ℤ/pⁿ` as concrete uniserial rings, with exhaustive
//! oracles for pp-formulae, e-pairs and the Ziegler spectrum.
//!
//! Every finitely generated module is a direct sum of cyclic modules
//! `ℤ/p^m`, and all of them are pure-injective, so the spectrum consists of
//! the indecomposables `ℤ/p¹, …, ℤ/pⁿ` and everything is decided by scanning
//! finite sets.

mod formula;
mod invariants;
mod pairs;
mod zg;

use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use formula::{pp_eval, pp_lattice, pp_leq, PpFormula, DEFAULT_MAX_ATOMS};
pub use invariants::{elem_equiv, goursat_check, invariant};
pub use pairs::{
    consistent_bruteforce, consistent_criterion, hull, pairs_isomorphic, pp_type, CriterionReport, EPair,
    PpType, Realizer,
};
pub use zg::{zg, ChainSpectrum, ChainTrichotomy};

/// Largest module handled by exhaustive scans.
pub const MAX_MODULE_SIZE: u64 = 1 << 16;

/// Largest exponent `n` for which the spectrum is built.
pub const MAX_ZG_EXPONENT: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("p^n = {p}^{n} is too large")]
    RingTooLarge { p: u64, n: u32 },
    #[error("module lengths must lie in 1..={n}, got {got}")]
    BadLength { got: u32, n: u32 },
    #[error("module of size {0} exceeds the scan limit")]
    ModuleTooLarge(u128),
    #[error("pair ⟨(p^{a}), (p^{b})⟩ is outside 0 ≤ a ≤ n, 1 ≤ b ≤ n")]
    BadPair { a: u32, b: u32 },
    #[error("pair ⟨(p^{a}), (p^{b})⟩ is inconsistent")]
    Inconsistent { a: u32, b: u32 },
    #[error("pair ⟨R, J⟩ is realized only by zero and has no indecomposable hull")]
    Degenerate,
    #[error("the spectrum is only built for n ≤ {max}, got {n}")]
    ExponentTooLarge { n: u32, max: u32 },
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The ring `ℤ/pⁿ`; its ideals are `(p^a)`, `a = 0..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChainRing {
    p: u64,
    n: u32,
    order: u64,
}

impl ChainRing {
    pub fn new(p: u64, n: u32) -> Result<Self, ChainError> {
        if !is_prime(p) {
            return Err(ChainError::NotPrime(p));
        }
        if n == 0 {
            return Err(ChainError::ZeroExponent);
        }
        let order = p
            .checked_pow(n)
            .filter(|&o| o <= MAX_MODULE_SIZE)
            .ok_or(ChainError::RingTooLarge { p, n })?;
        Ok(ChainRing { p, n, order })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `pⁿ`, the number of ring elements.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `p^i mod pⁿ`, so `p^i = 0` for `i ≥ n`.
    pub fn power(&self, i: u32) -> u64 {
        if i >= self.n {
            0
        } else {
            self.p.pow(i)
        }
    }

    /// The `p`-adic valuation, with `v(0) = n`.
    pub fn valuation(&self, x: u64) -> u32 {
        valuation(self.p, x % self.order, self.n)
    }

    /// Membership of `x` in the ideal `(p^a)`.
    pub fn in_ideal(&self, x: u64, a: u32) -> bool {
        self.valuation(x) >= a
    }

    /// `ℤ/p^m` for `m = 1..=n`.
    pub fn indecomposables(&self) -> Vec<FinModule> {
        (1..=self.n).map(|m| FinModule::cyclic(*self, m).expect("m ≤ n")).collect()
    }
}

impl fmt::Display for ChainRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}", self.order)
    }
}

/// Valuation of `x` in `ℤ/p^m`, with `v(0) = m`.
fn valuation(p: u64, x: u64, m: u32) -> u32 {
    if x == 0 {
        return m;
    }
    let mut v = 0;
    let mut x = x;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v.min(m)
}

/// A set of elements of a module, indexed as in [`FinModule`].
pub type ElemSet = FixedBitSet;

/// The module `⊕ᵢ ℤ/p^{mᵢ}`.
///
/// Elements are indexed in mixed radix with the first summand most
/// significant, so the index of `(x, y) ∈ M ⊕ N` is `x·|N| + y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinModule {
    ring: ChainRing,
    lengths: Vec<u32>,
    moduli: Vec<u64>,
    size: usize,
}

impl FinModule {
    pub fn new(ring: ChainRing, lengths: Vec<u32>) -> Result<Self, ChainError> {
        let mut size: u128 = 1;
        for &m in &lengths {
            if m == 0 || m > ring.n {
                return Err(ChainError::BadLength { got: m, n: ring.n });
            }
            size *= ring.p.pow(m) as u128;
            if size > MAX_MODULE_SIZE as u128 {
                return Err(ChainError::ModuleTooLarge(size));
            }
        }
        let moduli = lengths.iter().map(|&m| ring.p.pow(m)).collect();
        Ok(FinModule { ring, lengths, moduli, size: size as usize })
    }

    pub fn cyclic(ring: ChainRing, m: u32) -> Result<Self, ChainError> {
        FinModule::new(ring, vec![m])
    }

    pub fn direct_sum(&self, other: &FinModule) -> Result<FinModule, ChainError> {
        let mut lengths = self.lengths.clone();
        lengths.extend_from_slice(&other.lengths);
        FinModule::new(self.ring, lengths)
    }

    pub fn ring(&self) -> ChainRing {
        self.ring
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_indecomposable(&self) -> bool {
        self.lengths.len() == 1
    }

    /// The coordinates of element `i`.
    pub fn coords(&self, mut i: usize) -> Vec<u64> {
        let mut out = vec![0; self.moduli.len()];
        for (slot, &q) in out.iter_mut().zip(&self.moduli).rev() {
            *slot = i as u64 % q;
            i /= q as usize;
        }
        out
    }

    pub fn index(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&c, &q)| acc * q as usize + (c % q) as usize)
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        let (a, b) = (self.coords(i), self.coords(j));
        let sum: Vec<u64> = a.iter().zip(&b).zip(&self.moduli).map(|((x, y), q)| (x + y) % q).collect();
        self.index(&sum)
    }

    /// `x·s` for a ring element `s`.
    pub fn scale(&self, i: usize, s: u64) -> usize {
        let c: Vec<u64> = self.coords(i).iter().zip(&self.moduli).map(|(x, q)| (x * (s % q)) % q).collect();
        self.index(&c)
    }

    pub fn empty_set(&self) -> ElemSet {
        FixedBitSet::with_capacity(self.size)
    }

    pub fn zero_set(&self) -> ElemSet {
        let mut s = self.empty_set();
        s.insert(0);
        s
    }

    pub fn full_set(&self) -> ElemSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    /// The subgroup sum `A + B` of two subgroups.
    pub fn subgroup_sum(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut s = a.clone();
        for g in b.ones() {
            if s.contains(g) {
                continue;
            }
            // adjoin the cyclic group generated by g
            let base: Vec<usize> = s.ones().collect();
            let mut k = g;
            while !s.contains(k) {
                for &x in &base {
                    s.insert(self.add(x, k));
                }
                k = self.add(k, g);
            }
        }
        s
    }

    /// The subset of `M ⊕ N` given by `A × B`.
    pub fn product_set(&self, other: &FinModule, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = FixedBitSet::with_capacity(self.size * other.size);
        for x in a.ones() {
            for y in b.ones() {
                out.insert(x * other.size + y);
            }
        }
        out
    }
}

impl fmt::Display for FinModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lengths.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.moduli.iter().map(|q| format!("Z/{q}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

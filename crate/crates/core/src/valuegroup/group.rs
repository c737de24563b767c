use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{is_square_free, QuadElement, ValueGroupError};
use crate::Exec;

/// Default coefficient radius for [`ValueGroup::find_between`].
pub const DEFAULT_SEARCH_CAP: u64 = 1 << 16;

/// The subgroup of ℝ generated by finitely many elements of `ℚ(√d)`.
///
/// After multiplying every coordinate by a common denominator `L` the group
/// becomes a sublattice of ℤ², kept in Hermite normal form for membership
/// tests and in Lagrange-reduced form for searching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueGroup {
    d: u64,
    generators: Vec<QuadElement>,
    scale: BigInt,
    // Hermite form: rows (p0, p1) with p0 > 0 and (0, g2) with g2 >= 0.
    pivot: Option<(BigInt, BigInt)>,
    g2: BigInt,
    basis: Vec<QuadElement>,
}

impl ValueGroup {
    pub fn new(d: u64, generators: Vec<QuadElement>) -> Result<Self, ValueGroupError> {
        if !is_square_free(d) {
            return Err(ValueGroupError::NotSquareFree(d));
        }
        for g in &generators {
            if g.d() != d {
                return Err(ValueGroupError::FieldMismatch(d, g.d()));
            }
        }
        let scale = generators.iter().fold(BigInt::one(), |acc, g| {
            acc.lcm(g.a().denom()).lcm(g.b().denom())
        });
        let rows: Vec<(BigInt, BigInt)> =
            generators.iter().map(|g| integer_coords(g, &scale).expect("scale clears denominators")).collect();
        let (pivot, g2) = hermite(&rows);
        let mut group = ValueGroup { d, generators, scale, pivot, g2, basis: Vec::new() };
        group.basis = group.reduced_basis();
        Ok(group)
    }

    /// The group ℤ, with `d = 1`.
    pub fn integers() -> Self {
        Self::new(1, vec![QuadElement::from_ints(1, 0, 1)]).expect("valid")
    }

    /// The group ℤ + ℤ√d.
    pub fn standard_rank_two(d: u64) -> Result<Self, ValueGroupError> {
        if d == 1 {
            return Err(ValueGroupError::NotSquareFree(d));
        }
        Self::new(d, vec![QuadElement::from_ints(1, 0, d), QuadElement::from_ints(0, 1, d)])
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn generators(&self) -> &[QuadElement] {
        &self.generators
    }

    /// A reduced basis; for rank one it is the positive generator.
    pub fn basis(&self) -> &[QuadElement] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The positive generator of a cyclic group.
    pub fn positive_generator(&self) -> Option<&QuadElement> {
        match self.basis.as_slice() {
            [u] => Some(u),
            _ => None,
        }
    }

    /// Dense iff the lattice has rank two; cyclic groups are discrete.
    pub fn is_dense(&self) -> Result<bool, ValueGroupError> {
        match self.rank() {
            0 => Err(ValueGroupError::TrivialGroup),
            r => Ok(r == 2),
        }
    }

    pub fn member(&self, g: &QuadElement) -> bool {
        if g.d() != self.d {
            return false;
        }
        let Some((x0, x1)) = integer_coords(g, &self.scale) else {
            return false;
        };
        let residual = match &self.pivot {
            None => {
                if !x0.is_zero() {
                    return false;
                }
                x1
            }
            Some((p0, p1)) => {
                let (c, r) = x0.div_rem(p0);
                if !r.is_zero() {
                    return false;
                }
                x1 - c * p1
            }
        };
        if self.g2.is_zero() {
            residual.is_zero()
        } else {
            residual.is_multiple_of(&self.g2)
        }
    }

    /// The element `Σ cᵢ·basisᵢ`; extra coefficients are ignored.
    pub fn element(&self, coeffs: &[i64]) -> QuadElement {
        self.basis
            .iter()
            .zip(coeffs)
            .fold(QuadElement::zero(self.d), |acc, (e, c)| acc + e.scale_int(&BigInt::from(*c)))
    }

    /// Some `g ∈ Γ` with `lo < g < hi`, using the default search cap.
    pub fn find_between(&self, lo: &QuadElement, hi: &QuadElement) -> Result<QuadElement, ValueGroupError> {
        self.find_between_capped(lo, hi, DEFAULT_SEARCH_CAP, Exec::default())
    }

    /// Some `g ∈ Γ` with `lo < g < hi`.
    ///
    /// Cyclic groups are handled exactly. For rank two, integer coefficient
    /// vectors in the reduced basis are searched in L∞ balls of radius
    /// 1, 2, 4, … up to `cap`; the result has the smallest norm, and among
    /// those the smallest value.
    pub fn find_between_capped(
        &self,
        lo: &QuadElement,
        hi: &QuadElement,
        cap: u64,
        exec: Exec,
    ) -> Result<QuadElement, ValueGroupError> {
        lo.same_field(hi)?;
        if lo.d() != self.d {
            return Err(ValueGroupError::FieldMismatch(self.d, lo.d()));
        }
        if lo.compare(hi)? != Ordering::Less {
            return Err(ValueGroupError::EmptyInterval { lo: lo.to_string(), hi: hi.to_string() });
        }
        match self.basis.as_slice() {
            [] => {
                let zero = QuadElement::zero(self.d);
                if lo.is_negative() && hi.is_positive() {
                    Ok(zero)
                } else {
                    Err(ValueGroupError::NotFound { cap })
                }
            }
            [u] => {
                let lo_c = lo.checked_div(u).expect("nonzero generator").floor() + 1;
                let hi_c = hi.checked_div(u).expect("nonzero generator").ceil() - 1;
                if lo_c > hi_c {
                    return Err(ValueGroupError::NotFound { cap });
                }
                Ok(u.scale_int(&closest_to_zero(&lo_c, &hi_c)))
            }
            [e1, e2] => self.search_rank_two(e1, e2, lo, hi, cap, exec),
            _ => unreachable!("rank is at most two"),
        }
    }

    fn search_rank_two(
        &self,
        e1: &QuadElement,
        e2: &QuadElement,
        lo: &QuadElement,
        hi: &QuadElement,
        cap: u64,
        exec: Exec,
    ) -> Result<QuadElement, ValueGroupError> {
        // c1·e1 + c2·e2 ∈ (lo, hi)  ⇔  c1 ∈ (P − c2·K, Q − c2·K)
        let inv = |x: &QuadElement| x.checked_div(e1).expect("nonzero basis vector");
        let (p, q) = if e1.is_positive() { (inv(lo), inv(hi)) } else { (inv(hi), inv(lo)) };
        let k = inv(e2);
        let increasing = e1.is_positive();
        // floating-point bounds reject rows cheaply; exact arithmetic decides the rest
        let (pf, qf, kf) = (p.approx(), q.approx(), k.approx());
        let (mp, mq, mk) = (magnitude(&p), magnitude(&q), magnitude(&k));
        let mut radius = 1u64;
        loop {
            let r = radius.min(cap);
            let width = 2 * r + 1;
            let prefilter = [mp, mq, mk * r as f64].iter().all(|m| m.is_finite() && *m <= 1e9);
            let rows = exec.filter_map_range(0..width, |i| {
                let c2f = i as f64 - r as f64;
                let eps = 1e-12 * (1.0 + mp + mq + c2f.abs() * mk);
                if prefilter && !row_may_hit(pf - c2f * kf, qf - c2f * kf, r as f64, eps) {
                    return None;
                }
                let c2 = BigInt::from(i as i128 - r as i128);
                let shift = k.scale_int(&c2);
                let c1_min = (&p - &shift).floor() + 1;
                let c1_max = (&q - &shift).ceil() - 1;
                let m = BigInt::from(r);
                if c1_min > c1_max || c1_min > m || c1_max < -&m {
                    return None;
                }
                let row_norm = c2.abs().max(closest_to_zero(&c1_min, &c1_max).abs());
                let lo_c = c1_min.max(-&row_norm);
                let hi_c = c1_max.min(row_norm.clone());
                // smallest value in the row among coefficients of that norm
                let c1 = if increasing { lo_c } else { hi_c };
                Some((row_norm, c1, c2))
            });
            let best = rows
                .into_iter()
                .map(|(norm, c1, c2)| (norm, e1.scale_int(&c1) + e2.scale_int(&c2)))
                .min_by(|(na, va), (nb, vb)| {
                    na.cmp(nb).then_with(|| va.compare(vb).expect("same field"))
                });
            if let Some((_, g)) = best {
                return Ok(g);
            }
            if r >= cap {
                return Err(ValueGroupError::NotFound { cap });
            }
            radius = radius.saturating_mul(2);
        }
    }

    fn reduced_basis(&self) -> Vec<QuadElement> {
        let mut rows = Vec::new();
        if let Some(p) = &self.pivot {
            rows.push(p.clone());
        }
        if !self.g2.is_zero() {
            rows.push((BigInt::zero(), self.g2.clone()));
        }
        if rows.len() == 2 {
            let (u, v) = lagrange(rows[0].clone(), rows[1].clone());
            rows = vec![u, v];
        }
        let to_elem = |(x, y): (BigInt, BigInt)| {
            let l = BigRational::from_integer(self.scale.clone());
            let e = QuadElement::new(BigRational::from_integer(x) / &l, BigRational::from_integer(y) / l, self.d)
                .expect("radicand checked");
            if e.is_negative() {
                -e
            } else {
                e
            }
        };
        rows.into_iter().map(to_elem).collect()
    }
}

/// `|a| + |b|·√d`, which bounds the rounding error of [`QuadElement::approx`].
fn magnitude(x: &QuadElement) -> f64 {
    use num_traits::{Signed, ToPrimitive};
    let part = |v: &BigRational| v.abs().to_f64().unwrap_or(f64::INFINITY);
    part(x.a()) + part(x.b()) * (x.d() as f64).sqrt()
}

/// Whether `(lo, hi)`, known up to `eps`, may contain an integer of
/// absolute value at most `r`.
fn row_may_hit(lo: f64, hi: f64, r: f64, eps: f64) -> bool {
    let first = (lo - eps).floor() + 1.0;
    let last = (hi + eps).ceil() - 1.0;
    first <= last && first <= r && last >= -r
}

/// `(L·a, L·b)` when both are integers.
fn integer_coords(g: &QuadElement, scale: &BigInt) -> Option<(BigInt, BigInt)> {
    let l = BigRational::from_integer(scale.clone());
    let x = g.a() * &l;
    let y = g.b() * l;
    if x.is_integer() && y.is_integer() {
        Some((x.to_integer(), y.to_integer()))
    } else {
        None
    }
}

fn hermite(rows: &[(BigInt, BigInt)]) -> (Option<(BigInt, BigInt)>, BigInt) {
    let mut pivot: Option<(BigInt, BigInt)> = None;
    let mut g2 = BigInt::zero();
    for (x, y) in rows {
        if x.is_zero() {
            g2 = g2.gcd(y);
            continue;
        }
        pivot = Some(match pivot {
            None => (x.clone(), y.clone()),
            Some((p0, p1)) => {
                let e = p0.extended_gcd(x);
                let g = e.gcd;
                let new = (&e.x * &p0 + &e.y * x, &e.x * &p1 + &e.y * y);
                // the complementary combination vanishes in column 0
                let rest = (x / &g) * &p1 - (&p0 / &g) * y;
                g2 = g2.gcd(&rest);
                new
            }
        });
    }
    let pivot = pivot.map(|(p0, p1)| {
        let (p0, p1) = if p0.is_negative() { (-p0, -p1) } else { (p0, p1) };
        let p1 = if g2.is_zero() { p1 } else { p1.mod_floor(&g2) };
        (p0, p1)
    });
    (pivot, g2)
}

fn norm2((x, y): &(BigInt, BigInt)) -> BigInt {
    x * x + y * y
}

fn dot(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> BigInt {
    &a.0 * &b.0 + &a.1 * &b.1
}

/// Gauss–Lagrange reduction of a two-dimensional integer basis.
fn lagrange(mut u: (BigInt, BigInt), mut v: (BigInt, BigInt)) -> ((BigInt, BigInt), (BigInt, BigInt)) {
    if norm2(&u) > norm2(&v) {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        let nu = norm2(&u);
        // nearest integer to <u,v>/<u,u>
        let num: BigInt = dot(&u, &v) * 2 + &nu;
        let m = num.div_floor(&(&nu * 2));
        v = (&v.0 - &m * &u.0, &v.1 - &m * &u.1);
        if norm2(&v) >= nu {
            return (u, v);
        }
        std::mem::swap(&mut u, &mut v);
    }
}

fn closest_to_zero(lo: &BigInt, hi: &BigInt) -> BigInt {
    if lo.is_positive() {
        lo.clone()
    } else if hi.is_negative() {
        hi.clone()
    } else {
        BigInt::zero()
    }
}

//! Exact elements `a + b·√d` of a real quadratic field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ValueGroupError;

/// Returns true when `d` has no repeated prime factor. `1` counts as square-free.
pub fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// An element `a + b·√d` with rational coordinates.
///
/// The radicand `d` is carried by every element so that mixing two fields is
/// detected. When `d = 1` the element is kept with `b = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElement {
    a: BigRational,
    b: BigRational,
    d: u64,
}

/// Wire form of an element: lowest-terms rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadRepr {
    pub a: String,
    pub b: String,
}

impl QuadElement {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self, ValueGroupError> {
        if !is_square_free(d) {
            return Err(ValueGroupError::NotSquareFree(d));
        }
        Ok(Self::canonical(a, b, d))
    }

    fn canonical(a: BigRational, b: BigRational, d: u64) -> Self {
        if d == 1 {
            QuadElement { a: a + b, b: BigRational::zero(), d }
        } else {
            QuadElement { a, b, d }
        }
    }

    /// Integer coordinates; panics if `d` is not square-free.
    pub fn from_ints(a: i64, b: i64, d: u64) -> Self {
        Self::new(int(a), int(b), d).expect("radicand must be square-free")
    }

    /// The rational `num/den`; panics on a zero denominator or bad radicand.
    pub fn rational(num: i64, den: i64, d: u64) -> Self {
        Self::new(BigRational::new(num.into(), den.into()), BigRational::zero(), d)
            .expect("radicand must be square-free")
    }

    pub fn zero(d: u64) -> Self {
        Self::canonical(BigRational::zero(), BigRational::zero(), d)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Sign of the real number `a + b√d`, computed exactly.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            (sa, _) => {
                // mixed signs: compare a² with d·b²
                let a2 = &self.a * &self.a;
                let db2 = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
                match sa {
                    Ordering::Greater => a2.cmp(&db2),
                    _ => db2.cmp(&a2),
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// Exact order comparison. Fails when the radicands differ.
    pub fn compare(&self, other: &Self) -> Result<Ordering, ValueGroupError> {
        self.same_field(other)?;
        Ok((self.clone() - other.clone()).signum())
    }

    pub(crate) fn same_field(&self, other: &Self) -> Result<(), ValueGroupError> {
        if self.d != other.d {
            return Err(ValueGroupError::FieldMismatch(self.d, other.d));
        }
        Ok(())
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, k: &BigRational) -> Self {
        Self::canonical(&self.a * k, &self.b * k, self.d)
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(k.clone()))
    }

    fn conjugate(&self) -> Self {
        Self::canonical(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Field norm `a² − d·b²`; nonzero for every nonzero element.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d))
    }

    /// Exact quotient; `None` for division by zero.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.d, other.d, "radicand mismatch");
        if other.is_zero() {
            return None;
        }
        let n = other.norm();
        let num = self.clone() * other.conjugate();
        Some(Self::canonical(num.a / &n, num.b / n, self.d))
    }

    /// Greatest integer not exceeding the element.
    pub fn floor(&self) -> BigInt {
        let fa = self.a.floor().to_integer();
        let ft = floor_b_sqrt_d(&self.b, self.d);
        // floor(a) + floor(t) <= floor(a + t) <= floor(a) + floor(t) + 1
        let base = fa + ft;
        let next = BigRational::from_integer(&base + 1);
        let candidate = Self::canonical(next, BigRational::zero(), self.d);
        if (self.clone() - candidate).signum() != Ordering::Less {
            base + 1
        } else {
            base
        }
    }

    /// Smallest integer not below the element.
    pub fn ceil(&self) -> BigInt {
        -(-self.clone()).floor()
    }

    /// Rough floating value, for display and sampling only.
    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    pub fn to_repr(&self) -> QuadRepr {
        QuadRepr { a: self.a.to_string(), b: self.b.to_string() }
    }

    pub fn from_repr(repr: &QuadRepr, d: u64) -> Result<Self, ValueGroupError> {
        let a = parse_rational(&repr.a)?;
        let b = parse_rational(&repr.b)?;
        Self::new(a, b, d)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_repr()).expect("plain strings serialize")
    }

    pub fn from_json(value: &serde_json::Value, d: u64) -> Result<Self, ValueGroupError> {
        let repr: QuadRepr = serde_json::from_value(value.clone())
            .map_err(|e| ValueGroupError::Parse(e.to_string()))?;
        Self::from_repr(&repr, d)
    }
}

/// floor(b·√d) for rational b, exactly.
fn floor_b_sqrt_d(b: &BigRational, d: u64) -> BigInt {
    if b.is_zero() {
        return BigInt::zero();
    }
    let p = b.numer().abs();
    let q = b.denom().clone();
    let radicand = &p * &p * BigInt::from(d);
    let root = radicand.sqrt();
    let exact = &root * &root == radicand;
    // s = |b|√d = sqrt(p²d)/q
    let floor_s = root.div_floor(&q);
    if b.is_positive() {
        floor_s
    } else {
        let s_is_int = exact && root.is_multiple_of(&q);
        if s_is_int {
            -floor_s
        } else {
            -floor_s - 1
        }
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Parses `"p"` or `"p/q"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ValueGroupError> {
    let bad = || ValueGroupError::Parse(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        None => BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad()),
        Some((n, q)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, q))
        }
    }
}

impl Add for QuadElement {
    type Output = QuadElement;

    fn add(self, rhs: QuadElement) -> QuadElement {
        assert_eq!(self.d, rhs.d, "radicand mismatch");
        Self::canonical(self.a + rhs.a, self.b + rhs.b, self.d)
    }
}

impl<'a> Add<&'a QuadElement> for &'a QuadElement {
    type Output = QuadElement;

    fn add(self, rhs: &QuadElement) -> QuadElement {
        self.clone() + rhs.clone()
    }
}

impl Sub for QuadElement {
    type Output = QuadElement;

    fn sub(self, rhs: QuadElement) -> QuadElement {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a QuadElement> for &'a QuadElement {
    type Output = QuadElement;

    fn sub(self, rhs: &QuadElement) -> QuadElement {
        self.clone() - rhs.clone()
    }
}

impl Neg for QuadElement {
    type Output = QuadElement;

    fn neg(self) -> QuadElement {
        QuadElement { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Mul for QuadElement {
    type Output = QuadElement;

    fn mul(self, rhs: QuadElement) -> QuadElement {
        assert_eq!(self.d, rhs.d, "radicand mismatch");
        let d = BigRational::from_integer(BigInt::from(self.d));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * d;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Self::canonical(a, b, self.d)
    }
}

/// Within one field this is the real order; elements of different fields
/// are incomparable.
impl PartialOrd for QuadElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).ok()
    }
}

impl fmt::Debug for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = format!("√{}", self.d);
        let b_abs = self.b.abs();
        let coeff = if b_abs.is_one() {
            String::new()
        } else if b_abs.is_integer() {
            b_abs.to_string()
        } else {
            format!("({b_abs})")
        };
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{sign}{coeff}{root}")
        } else {
            let sign = if self.b.is_negative() { "-" } else { "+" };
            write!(f, "{}{sign}{coeff}{root}", self.a)
        }
    }
}

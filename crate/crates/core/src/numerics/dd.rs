//! Double-double arithmetic and the [`Real`] abstraction used by the exact sums.
//!
//! A [`Dd`] stores an unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`, giving
//! roughly 106 bits of significand. Only the operations needed by the exact
//! colored Jones evaluation are provided: the four field operations, exact
//! scaling by powers of two and sine/cosine at rational multiples of π.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Error-free sum: returns `(s, e)` with `s + e = a + b` exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Error-free sum assuming `|a| ≥ |b|`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Error-free product via fused multiply-add.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Double-double number `hi + lo`.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    /// π to double-double precision.
    pub const PI: Dd = Dd { hi: std::f64::consts::PI, lo: 1.224_646_799_147_353_2e-16 };

    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact conversion of an integer of magnitude below 2^106.
    pub fn from_i128(n: i128) -> Self {
        let hi = n as f64;
        let lo = (n - hi as i128) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Multiplication by `2^k` (exact barring overflow/underflow).
    #[inline]
    pub fn ldexp(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        Dd { hi: self.hi * f, lo: self.lo * f }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    /// Square root by one Newton correction of the double estimate.
    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::from_f64(self.hi.max(0.0).sqrt());
        }
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let r = ((self.hi - p) - e + self.lo) / (2.0 * x);
        let (hi, lo) = quick_two_sum(x, r);
        Dd { hi, lo }
    }

    /// `(sin θ, cos θ)` for `|θ| ≤ π/4` by Taylor series.
    fn sin_cos_small(theta: Dd) -> (Dd, Dd) {
        let x2 = theta * theta;
        // sin: θ Σ (−x²)^k/(2k+1)!, cos: Σ (−x²)^k/(2k)!
        let mut sin = Dd::ZERO;
        let mut cos = Dd::ZERO;
        let mut term_s = theta;
        let mut term_c = Dd::ONE;
        for k in 0..30 {
            sin += term_s;
            cos += term_c;
            let a = (2 * k + 2) as f64;
            let b = (2 * k + 3) as f64;
            term_c = -(term_c * x2) / Dd::from_f64(a * (a - 1.0));
            term_s = -(term_s * x2) / Dd::from_f64(b * a);
            if term_s.hi.abs() < 1e-40 && term_c.hi.abs() < 1e-40 {
                break;
            }
        }
        (sin, cos)
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

impl AddAssign for Dd {
    #[inline]
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl SubAssign for Dd {
    #[inline]
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}

impl MulAssign for Dd {
    #[inline]
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}

/// Real scalar abstraction over `f64` and [`Dd`].
pub trait Real:
    Copy
    + Send
    + Sync
    + PartialOrd
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    /// Multiplication by `2^k`.
    fn ldexp(self, k: i32) -> Self;
    /// Leading double of the value (for exponent bookkeeping).
    fn lead(self) -> f64;
    /// `(sin(π·num/den), cos(π·num/den))` with exact integer argument reduction.
    fn sin_cos_pi_ratio(num: i64, den: i64) -> (Self, Self);
}

/// Reduces `π·num/den` to an angle `π·a/b` in `[0, π/4]` and reports how to
/// recover `(sin, cos)` of the original angle.
///
/// Returns `(a, b, swap, sin_sign, cos_sign)`; after computing `(s, c)` of the
/// reduced angle, swap them if `swap` and then apply the signs.
fn reduce_pi_ratio(num: i64, den: i64) -> (i64, i64, bool, f64, f64) {
    assert!(den > 0, "denominator must be positive");
    let period = 2 * den as i128;
    let mut m = (num as i128).rem_euclid(period) as i64; // angle π m/den ∈ [0, 2π)
    let mut ss = 1.0;
    let mut cs = 1.0;
    if m >= den {
        // θ − π
        m -= den;
        ss = -ss;
        cs = -cs;
    }
    if 2 * m > den {
        // π − θ: sin unchanged, cos flips
        m = den - m;
        cs = -cs;
    }
    // now θ = π m/den ∈ [0, π/2]
    if 4 * m > den {
        // π/2 − θ = π (den − 2m)/(2 den); sin↔cos
        (den - 2 * m, 2 * den, true, ss, cs)
    } else {
        (m, den, false, ss, cs)
    }
}

impl Real for f64 {
    #[inline]
    fn zero() -> Self {
        0.0
    }
    #[inline]
    fn one() -> Self {
        1.0
    }
    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn ldexp(self, k: i32) -> Self {
        self * 2f64.powi(k)
    }
    #[inline]
    fn lead(self) -> f64 {
        self
    }
    fn sin_cos_pi_ratio(num: i64, den: i64) -> (Self, Self) {
        let (a, b, swap, ss, cs) = reduce_pi_ratio(num, den);
        let th = std::f64::consts::PI * (a as f64) / (b as f64);
        let (s, c) = th.sin_cos();
        let (s, c) = if swap { (c, s) } else { (s, c) };
        (ss * s, cs * c)
    }
}

impl Real for Dd {
    #[inline]
    fn zero() -> Self {
        Dd::ZERO
    }
    #[inline]
    fn one() -> Self {
        Dd::ONE
    }
    #[inline]
    fn from_f64(x: f64) -> Self {
        Dd::from_f64(x)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    #[inline]
    fn ldexp(self, k: i32) -> Self {
        Dd::ldexp(self, k)
    }
    #[inline]
    fn lead(self) -> f64 {
        self.hi
    }
    fn sin_cos_pi_ratio(num: i64, den: i64) -> (Self, Self) {
        let (a, b, swap, ss, cs) = reduce_pi_ratio(num, den);
        let th = Dd::PI * Dd::from_i128(a as i128) / Dd::from_i128(b as i128);
        let (s, c) = Dd::sin_cos_small(th);
        let (s, c) = if swap { (c, s) } else { (s, c) };
        (Dd::from_f64(ss) * s, Dd::from_f64(cs) * c)
    }
}

//! Exact scalars.
//!
//! [`Rational`] is the number type used everywhere a payoff, probability or
//! multiplier appears. [`Surd`] extends it to numbers of the form `a + b·√d`,
//! which is all the exact root-finding in [`crate::semialgebraic`] ever needs
//! for polynomials of degree two.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision fraction, always kept in lowest terms.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`. Panics on a zero denominator.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p` or `p/q`, accepting both ASCII `-` and U+2212 as the sign.
pub fn parse_rational(token: &str) -> Result<Rational, Error> {
    let cleaned = token.trim().replace('\u{2212}', "-");
    let bad = || Error::InvalidNumber(token.to_string());
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (cleaned.as_str(), None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => {
            if d.starts_with('+') || d.starts_with('-') {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::ZeroDenominator(token.to_string()));
    }
    Ok(Rational::new(num, den))
}

/// Exact square root when `value` is the square of a rational.
pub fn rational_sqrt(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let n = value.numer();
    let d = value.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &rn * &rn == *n && &rd * &rd == *d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

/// Rational bracket `[lo, hi]` of `√value` with `hi − lo ≤ 2^-bits`.
pub fn sqrt_bracket(value: &Rational, bits: u32) -> (Rational, Rational) {
    debug_assert!(!value.is_negative());
    // √(n/d) = √(n·d)/d; scale by 4^bits so the integer root carries `bits` fraction bits.
    let scale = BigInt::one() << (2 * bits as usize);
    let radicand = value.numer() * value.denom() * &scale;
    let root = radicand.sqrt();
    let denom = value.denom() * (BigInt::one() << bits as usize);
    let lo = Rational::new(root.clone(), denom.clone());
    let hi = if &root * &root == radicand {
        lo.clone()
    } else {
        Rational::new(root + 1, denom.clone())
    };
    // The bracket on √(n·d) has width 2^-bits; dividing by d only shrinks it.
    (lo, hi)
}

/// The simplest fraction (smallest denominator) in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    // Stern-Brocot descent via continued fractions on positive intervals.
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if fl.clone() + Rational::one() <= *hi {
        return fl + Rational::one();
    }
    let inv_lo = (hi - &fl).recip();
    let inv_hi = (lo - &fl).recip();
    fl + simplest_between(&inv_lo, &inv_hi).recip()
}

/// Ordered field operations shared by [`Rational`] and [`Surd`].
pub trait OrderedField:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(value: Rational) -> Self;
    fn to_rational(&self) -> Option<Rational>;
    fn signum_i(&self) -> i32;

    fn zero_value() -> Self {
        Self::from_rational(Rational::zero())
    }
    fn one_value() -> Self {
        Self::from_rational(Rational::one())
    }
    fn is_zero_value(&self) -> bool {
        self.signum_i() == 0
    }
    /// A rational strictly between `self` and `other`, which must be ordered `self < other`.
    fn rational_between(&self, other: &Self) -> Rational;
}

impl OrderedField for Rational {
    fn from_rational(value: Rational) -> Self {
        value
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn signum_i(&self) -> i32 {
        sign_of(self)
    }
    fn rational_between(&self, other: &Self) -> Rational {
        (self + other) / int(2)
    }
}

pub fn sign_of(value: &Rational) -> i32 {
    match value.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// `a + b·√d` with rational `a`, `b` and a positive non-square radicand `d`.
///
/// When `b` is zero the value is rational and `d` is stored as zero. Arithmetic
/// between two irrational values requires a shared radicand; ordering works
/// across radicands.
#[derive(Clone, Debug)]
pub struct Surd {
    a: Rational,
    b: Rational,
    d: Rational,
}

impl Surd {
    pub fn rational(a: Rational) -> Self {
        Surd {
            a,
            b: Rational::zero(),
            d: Rational::zero(),
        }
    }

    /// Builds `a + b·√d`, collapsing to a rational when `d` is a perfect square.
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        if b.is_zero() || d.is_zero() {
            return Surd::rational(a);
        }
        match rational_sqrt(&d) {
            Some(root) => Surd::rational(a + b * root),
            None => Surd { a, b, d },
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn radicand(&self) -> Option<&Rational> {
        (!self.b.is_zero()).then_some(&self.d)
    }

    fn shared_radicand(&self, other: &Surd) -> Rational {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, true) => Rational::zero(),
            (false, true) => self.d.clone(),
            (true, false) => other.d.clone(),
            (false, false) => {
                assert!(
                    self.d == other.d,
                    "surd arithmetic across different radicands"
                );
                self.d.clone()
            }
        }
    }

    /// Rational bracket `[lo, hi]` of the value with width at most `2^-bits · |b|`.
    pub fn bracket(&self, bits: u32) -> (Rational, Rational) {
        if self.b.is_zero() {
            return (self.a.clone(), self.a.clone());
        }
        let (lo, hi) = sqrt_bracket(&self.d, bits);
        let x = &self.a + &self.b * &lo;
        let y = &self.a + &self.b * &hi;
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let (lo, _) = self.bracket(60);
        lo.to_f64().unwrap_or(f64::NAN)
    }
}

/// Sign of `b·√d`, for `d ≥ 0`.
fn sign_radical(b: &Rational, d: &Rational) -> i32 {
    if d.is_zero() {
        0
    } else {
        sign_of(b)
    }
}

/// Sign of `a + b1·√d1 + b2·√d2`.
fn sign_of_sum(a: &Rational, b1: &Rational, d1: &Rational, b2: &Rational, d2: &Rational) -> i32 {
    let s1 = sign_radical(b1, d1);
    let s2 = sign_radical(b2, d2);
    // Sign of u = b1√d1 + b2√d2.
    let su = if s1 == 0 || s2 == 0 || s1 == s2 {
        if s1 != 0 {
            s1
        } else {
            s2
        }
    } else {
        let m1 = b1 * b1 * d1;
        let m2 = b2 * b2 * d2;
        match m1.cmp(&m2) {
            Ordering::Greater => s1,
            Ordering::Less => s2,
            Ordering::Equal => 0,
        }
    };
    let sa = sign_of(a);
    if sa == 0 {
        return su;
    }
    if su == 0 || su == sa {
        return sa;
    }
    // Opposite signs: compare u² = b1²d1 + b2²d2 + 2·b1·b2·√(d1·d2) against a².
    let rest = b1 * b1 * d1 + b2 * b2 * d2 - a * a;
    let cross = int(2) * b1 * b2;
    let prod = d1 * d2;
    let diff = sign_single(&rest, &cross, &prod);
    match diff {
        1 => su,
        -1 => sa,
        _ => 0,
    }
}

/// Sign of `a + b·√d`.
fn sign_single(a: &Rational, b: &Rational, d: &Rational) -> i32 {
    let sb = sign_radical(b, d);
    let sa = sign_of(a);
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    match (a * a).cmp(&(b * b * d)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl Eq for Surd {}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        let s = sign_of_sum(
            &(&self.a - &other.a),
            &self.b,
            &self.d,
            &-other.b.clone(),
            &other.d,
        );
        s.cmp(&0)
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        let d = self.shared_radicand(&rhs);
        Surd::new(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        let d = self.shared_radicand(&rhs);
        Surd::new(self.a - rhs.a, self.b - rhs.b, d)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        let d = self.shared_radicand(&rhs);
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &d;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Surd::new(a, b, d)
    }
}

impl Div for Surd {
    type Output = Surd;
    fn div(self, rhs: Surd) -> Surd {
        let d = self.shared_radicand(&rhs);
        let norm = &rhs.a * &rhs.a - &rhs.b * &rhs.b * &d;
        assert!(!norm.is_zero(), "division by zero surd");
        let conj = Surd::new(rhs.a.clone() / &norm, -rhs.b.clone() / &norm, d);
        self * conj
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl OrderedField for Surd {
    fn from_rational(value: Rational) -> Self {
        Surd::rational(value)
    }
    fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }
    fn signum_i(&self) -> i32 {
        sign_single(&self.a, &self.b, &self.d)
    }
    fn rational_between(&self, other: &Self) -> Rational {
        debug_assert!(self < other);
        let mut bits = 8;
        loop {
            let (_, hi) = self.bracket(bits);
            let (lo, _) = other.bracket(bits);
            if hi < lo {
                let c = simplest_between(&hi, &lo);
                let inside = Surd::rational(c.clone());
                if &inside > self && &inside < other {
                    return c;
                }
                return (hi + lo) / int(2);
            }
            bits *= 2;
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

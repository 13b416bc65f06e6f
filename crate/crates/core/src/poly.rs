//! Univariate polynomials over the rationals, with exact real-root isolation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{int, sign_of, simplest_between, OrderedField, Rational};

/// Dense polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `a + b·x`
    pub fn linear(a: Rational, b: Rational) -> Self {
        Poly::new(vec![a, b])
    }

    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_in<F: OrderedField>(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero_value(), |acc, c| {
            acc * x.clone() + F::from_rational(c.clone())
        })
    }

    pub fn sign_at(&self, x: &Rational) -> i32 {
        sign_of(&self.eval(x))
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.lead();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lead;
            if !factor.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &factor * c;
                }
            }
            quot[k] = factor;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.lead().recip();
        self.scale(&inv)
    }

    /// Scales to integer coefficients with unit content and positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        Poly::new(
            ints.into_iter()
                .map(|c| Rational::from_integer(c * &sign / &content))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree(&self) -> Poly {
        if self.degree().unwrap_or(0) < 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.primitive();
        }
        self.div_rem(&g).0.primitive()
    }

    fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            let next = -r;
            // Positive rescaling keeps the sign pattern and tames coefficient growth.
            let prim = next.primitive();
            let r = if prim.lead().is_positive() == next.lead().is_positive() {
                prim
            } else {
                -prim
            };
            seq.push(r);
        }
        seq
    }
}

fn sign_variations(seq: &[Poly], x: &Rational) -> usize {
    let signs: Vec<i32> = seq
        .iter()
        .map(|p| p.sign_at(x))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// A real root: either an exact rational or an isolating open interval
/// `(lo, hi)` of a squarefree polynomial that contains exactly one root and
/// whose endpoints are not roots.
#[derive(Clone, Debug)]
pub enum RealRoot {
    Exact(Rational),
    Isolated {
        poly: Poly,
        lo: Rational,
        hi: Rational,
    },
}

impl RealRoot {
    pub fn bounds(&self) -> (Rational, Rational) {
        match self {
            RealRoot::Exact(r) => (r.clone(), r.clone()),
            RealRoot::Isolated { lo, hi, .. } => (lo.clone(), hi.clone()),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            RealRoot::Exact(r) => Some(r),
            RealRoot::Isolated { .. } => None,
        }
    }

    /// Halves the isolating interval; may discover that the midpoint is the root.
    pub fn refine(&mut self) {
        if let RealRoot::Isolated { poly, lo, hi } = self {
            let mid = (&*lo + &*hi) / int(2);
            let s_mid = poly.sign_at(&mid);
            if s_mid == 0 {
                *self = RealRoot::Exact(mid);
                return;
            }
            if poly.sign_at(lo) == s_mid {
                *lo = mid;
            } else {
                *hi = mid;
            }
        }
    }

    /// Decides whether the root is rational, collapsing to `Exact` if so.
    pub fn resolve_rational(&mut self) {
        let RealRoot::Isolated { poly, .. } = self else {
            return;
        };
        let prim = poly.primitive();
        let lead = prim.lead().abs();
        // Distinct fractions whose denominators divide `lead` are at least 1/lead² apart.
        let width_bound = (&lead * &lead).recip();
        loop {
            let (lo, hi) = match self {
                RealRoot::Exact(_) => return,
                RealRoot::Isolated { lo, hi, .. } => (lo.clone(), hi.clone()),
            };
            if &hi - &lo < width_bound {
                let candidate = simplest_between(&lo, &hi);
                if prim.eval(&candidate).is_zero() {
                    *self = RealRoot::Exact(candidate);
                }
                return;
            }
            self.refine();
        }
    }

    /// Exact comparison of two roots, refining intervals as needed.
    pub fn compare(&mut self, other: &mut RealRoot) -> Ordering {
        loop {
            match (&*self, &*other) {
                (RealRoot::Exact(a), RealRoot::Exact(b)) => return a.cmp(b),
                (RealRoot::Exact(a), RealRoot::Isolated { poly, lo, hi }) => {
                    if a <= lo {
                        return Ordering::Less;
                    }
                    if a >= hi {
                        return Ordering::Greater;
                    }
                    if poly.eval(a).is_zero() {
                        return Ordering::Equal;
                    }
                    other.refine();
                }
                (RealRoot::Isolated { .. }, RealRoot::Exact(_)) => {
                    return other.compare(self).reverse();
                }
                (
                    RealRoot::Isolated {
                        poly: p,
                        lo: a,
                        hi: b,
                    },
                    RealRoot::Isolated {
                        poly: q,
                        lo: c,
                        hi: d,
                    },
                ) => {
                    if b <= c {
                        return Ordering::Less;
                    }
                    if d <= a {
                        return Ordering::Greater;
                    }
                    let lo = a.max(c).clone();
                    let hi = b.min(d).clone();
                    let g = p.gcd(q);
                    if g.degree().unwrap_or(0) > 0 && count_roots_open(&g, &lo, &hi) > 0 {
                        return Ordering::Equal;
                    }
                    self.refine();
                    other.refine();
                }
            }
        }
    }

    /// A rational strictly between `self < other`.
    pub fn rational_between(&mut self, other: &mut RealRoot) -> Rational {
        loop {
            let (_, hi) = self.bounds();
            let (lo, _) = other.bounds();
            if hi < lo {
                let c = simplest_between(&hi, &lo);
                let touches = (c == hi && matches!(self, RealRoot::Exact(_)))
                    || (c == lo && matches!(other, RealRoot::Exact(_)));
                return if touches { (hi + lo) / int(2) } else { c };
            }
            if hi == lo {
                // Shared endpoint of two isolating intervals is neither root.
                if matches!(self, RealRoot::Isolated { .. })
                    && matches!(other, RealRoot::Isolated { .. })
                {
                    return hi;
                }
            }
            self.refine();
            other.refine();
        }
    }
}

/// Number of distinct roots of a squarefree polynomial in the open interval `(lo, hi)`,
/// assuming neither endpoint is a root.
fn count_roots_open(p: &Poly, lo: &Rational, hi: &Rational) -> usize {
    let seq = p.sturm_sequence();
    sign_variations(&seq, lo).saturating_sub(sign_variations(&seq, hi))
}

/// All real roots of `p` in the open interval `(lo, hi)`, in increasing order.
/// Returns `None` for the zero polynomial.
pub fn roots_in_open_interval(p: &Poly, lo: &Rational, hi: &Rational) -> Option<Vec<RealRoot>> {
    if p.is_zero() {
        return None;
    }
    let mut q = p.squarefree();
    let mut exact: Vec<Rational> = Vec::new();
    // Endpoint roots are outside the open interval; divide them out so Sturm counts are clean.
    for end in [lo, hi] {
        if q.degree().unwrap_or(0) > 0 && q.eval(end).is_zero() {
            q = q.div_rem(&Poly::linear(-end.clone(), Rational::one())).0;
        }
    }
    'restart: loop {
        if q.degree().unwrap_or(0) == 0 {
            break;
        }
        if q.degree() == Some(1) {
            let r = -q.coeff(0) / q.coeff(1);
            if &r > lo && &r < hi {
                exact.push(r);
            }
            break;
        }
        let seq = q.sturm_sequence();
        let mut isolated = Vec::new();
        let mut stack = vec![(
            lo.clone(),
            hi.clone(),
            sign_variations(&seq, lo),
            sign_variations(&seq, hi),
        )];
        while let Some((a, b, va, vb)) = stack.pop() {
            let count = va.saturating_sub(vb);
            if count == 0 {
                continue;
            }
            if count == 1 {
                isolated.push((a, b));
                continue;
            }
            let mid = (&a + &b) / int(2);
            if q.eval(&mid).is_zero() {
                exact.push(mid.clone());
                q = q.div_rem(&Poly::linear(-mid, Rational::one())).0;
                continue 'restart;
            }
            let vm = sign_variations(&seq, &mid);
            stack.push((mid.clone(), b, vm, vb));
            stack.push((a, mid, va, vm));
        }
        let mut roots: Vec<RealRoot> = exact.into_iter().map(RealRoot::Exact).collect();
        roots.extend(isolated.into_iter().map(|(lo, hi)| RealRoot::Isolated {
            poly: q.clone(),
            lo,
            hi,
        }));
        return Some(sort_dedup(roots));
    }
    Some(sort_dedup(exact.into_iter().map(RealRoot::Exact).collect()))
}

/// Sorts roots exactly and merges equal ones, preferring exact representatives.
pub fn sort_dedup(roots: Vec<RealRoot>) -> Vec<RealRoot> {
    let mut out: Vec<RealRoot> = Vec::with_capacity(roots.len());
    for mut root in roots {
        let mut pos = out.len();
        let mut duplicate = false;
        for (k, existing) in out.iter_mut().enumerate() {
            match root.compare(existing) {
                Ordering::Less => {
                    pos = k;
                    break;
                }
                Ordering::Equal => {
                    duplicate = true;
                    if matches!(root, RealRoot::Exact(_)) {
                        *existing = root.clone();
                    }
                    break;
                }
                Ordering::Greater => {}
            }
        }
        if !duplicate {
            out.insert(pos, root);
        }
    }
    out
}

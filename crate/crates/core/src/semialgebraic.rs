//! Exact feasibility of systems of multilinear inequalities over the unit cube
//! in up to three variables.
//!
//! One variable is an interval intersection. Two variables `(s, t)` are handled
//! by writing every constraint as `α(s)·t + β(s)`: the shape of the feasible
//! `t`-interval only changes where one of `α`, `β`, `α + β` or a cross term
//! `β_j·α_i − β_i·α_j` changes sign, so it suffices to test those critical
//! points (exactly, in `Q(√d)`) and one rational point per cell between them.
//! Three variables `(p, q, r)` lift the same idea one level: the critical
//! polynomials of the `(q, r)` problem have coefficients in `Q[p]`, and the
//! values of `p` where their root structure in `q` can change are the roots of
//! coefficients, endpoint values, discriminants and pairwise resultants.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::poly::{roots_in_open_interval, sort_dedup, Poly, RealRoot};
use crate::rational::{int, OrderedField, Rational, Surd};

/// Multilinear polynomial; `coeffs[mask]` multiplies the product of the variables whose bits are set in `mask`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multilinear {
    nvars: usize,
    coeffs: Vec<Rational>,
}

impl Multilinear {
    pub fn new(nvars: usize, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), 1 << nvars);
        Multilinear { nvars, coeffs }
    }

    /// Interpolates from the values at the cube's corners; `values[mask]` is the
    /// value at the corner whose coordinates are 1 exactly on the bits of `mask`.
    pub fn from_corners(nvars: usize, values: Vec<Rational>) -> Self {
        assert_eq!(values.len(), 1 << nvars);
        let mut coeffs = values;
        for k in 0..nvars {
            for mask in 0..coeffs.len() {
                if mask & (1 << k) != 0 {
                    let lower = coeffs[mask ^ (1 << k)].clone();
                    coeffs[mask] -= lower;
                }
            }
        }
        Multilinear { nvars, coeffs }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars);
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mask, c)| {
                (0..self.nvars)
                    .filter(|k| mask & (1 << k) != 0)
                    .fold(c.clone(), |acc, k| acc * &x[k])
            })
            .sum()
    }

    pub fn eval_in<F: OrderedField>(&self, x: &[F]) -> F {
        assert_eq!(x.len(), self.nvars);
        let mut total = F::zero_value();
        for (mask, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = (0..self.nvars)
                .filter(|k| mask & (1 << k) != 0)
                .fold(F::from_rational(c.clone()), |acc, k| acc * x[k].clone());
            total = total + term;
        }
        total
    }

    /// Fixes the first variable, shifting the others down.
    pub fn substitute_first(&self, value: &Rational) -> Multilinear {
        let coeffs = (0..1usize << (self.nvars - 1))
            .map(|m| &self.coeffs[m << 1] + value * &self.coeffs[(m << 1) | 1])
            .collect();
        Multilinear::new(self.nvars - 1, coeffs)
    }

    pub fn negate(&self) -> Multilinear {
        Multilinear::new(self.nvars, self.coeffs.iter().map(|c| -c).collect())
    }
}

/// `f > 0` when `strict`, `f ≥ 0` otherwise.
#[derive(Debug, Clone)]
pub struct Inequality {
    pub f: Multilinear,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// A rational point of the cube satisfying every inequality.
    Witness(Vec<Rational>),
    /// Feasible, but every feasible point has an irrational coordinate.
    IrrationalOnly,
    Infeasible,
    /// An irrational critical value could not be tested exactly.
    Unknown,
}

impl Feasibility {
    fn prefix(self, value: &Rational) -> Feasibility {
        match self {
            Feasibility::Witness(mut w) => {
                w.insert(0, value.clone());
                Feasibility::Witness(w)
            }
            other => other,
        }
    }
}

pub fn decide(nvars: usize, system: &[Inequality]) -> Feasibility {
    assert!(system.iter().all(|c| c.f.nvars == nvars));
    match nvars {
        0 => {
            let ok = system.iter().all(|c| {
                let v = &c.f.coeffs[0];
                v.is_positive() || (!c.strict && v.is_zero())
            });
            if ok {
                Feasibility::Witness(Vec::new())
            } else {
                Feasibility::Infeasible
            }
        }
        1 => {
            let rows: Vec<_> = system
                .iter()
                .map(|c| (c.f.coeffs[1].clone(), c.f.coeffs[0].clone(), c.strict))
                .collect();
            match solve_1d(&rows) {
                Some(t) => Feasibility::Witness(vec![t
                    .to_rational()
                    .expect("rational data gives rational endpoints")]),
                None => Feasibility::Infeasible,
            }
        }
        2 => decide_2d(system),
        3 => decide_3d(system),
        _ => Feasibility::Unknown,
    }
}

/// Finds `t ∈ [0, 1]` with `a·t + b ⋈ 0` for every row, preferring a rational point.
fn solve_1d<F: OrderedField>(rows: &[(F, F, bool)]) -> Option<F> {
    let mut lo = (F::zero_value(), false);
    let mut hi = (F::one_value(), false);
    for (a, b, strict) in rows {
        match a.signum_i() {
            0 => {
                let s = b.signum_i();
                if s < 0 || (s == 0 && *strict) {
                    return None;
                }
            }
            sa => {
                let bound = -b.clone() / a.clone();
                if sa > 0 {
                    if bound > lo.0 || (bound == lo.0 && *strict) {
                        lo = (bound, *strict);
                    }
                } else if bound < hi.0 || (bound == hi.0 && *strict) {
                    hi = (bound, *strict);
                }
            }
        }
    }
    match lo.0.partial_cmp(&hi.0) {
        Some(Ordering::Less) => {
            if !lo.1 && lo.0.to_rational().is_some() {
                return Some(lo.0);
            }
            if !hi.1 && hi.0.to_rational().is_some() {
                return Some(hi.0);
            }
            Some(F::from_rational(lo.0.rational_between(&hi.0)))
        }
        Some(Ordering::Equal) if !lo.1 && !hi.1 => Some(lo.0),
        _ => None,
    }
}

/// Roots in `[0, 1]` of `c0 + c1·s + c2·s²`; `None` when the polynomial is identically zero.
pub(crate) fn quadratic_roots(c: [&Rational; 3]) -> Option<Vec<Surd>> {
    let [c0, c1, c2] = c;
    let unit =
        |r: &Surd| *r >= Surd::rational(Rational::zero()) && *r <= Surd::rational(Rational::one());
    let mut out = Vec::new();
    if !c2.is_zero() {
        let disc = c1 * c1 - int(4) * c2 * c0;
        if disc.is_negative() {
            return Some(out);
        }
        let center = -c1 / (int(2) * c2);
        let half = (int(2) * c2).recip();
        out.push(Surd::new(center.clone(), half.clone(), disc.clone()));
        out.push(Surd::new(center, -half, disc));
    } else if !c1.is_zero() {
        out.push(Surd::rational(-c0 / c1));
    } else if c0.is_zero() {
        return None;
    }
    out.retain(unit);
    Some(out)
}

fn decide_2d(system: &[Inequality]) -> Feasibility {
    // f = c0 + c1·s + c2·t + c3·s·t = α(s)·t + β(s)
    let alpha: Vec<[Rational; 2]> = system
        .iter()
        .map(|c| [c.f.coeffs[2].clone(), c.f.coeffs[3].clone()])
        .collect();
    let beta: Vec<[Rational; 2]> = system
        .iter()
        .map(|c| [c.f.coeffs[0].clone(), c.f.coeffs[1].clone()])
        .collect();
    let zero = Rational::zero();
    let mut critical: Vec<Surd> = vec![Surd::rational(int(0)), Surd::rational(int(1))];
    let mut push = |c: [&Rational; 3]| {
        if let Some(rs) = quadratic_roots(c) {
            critical.extend(rs);
        }
    };
    for i in 0..system.len() {
        push([&alpha[i][0], &alpha[i][1], &zero]);
        push([&beta[i][0], &beta[i][1], &zero]);
        let sum = [&alpha[i][0] + &beta[i][0], &alpha[i][1] + &beta[i][1]];
        push([&sum[0], &sum[1], &zero]);
        for j in (i + 1)..system.len() {
            // β_j·α_i − β_i·α_j
            let x0 = &beta[j][0] * &alpha[i][0] - &beta[i][0] * &alpha[j][0];
            let x1 = &beta[j][0] * &alpha[i][1] + &beta[j][1] * &alpha[i][0]
                - &beta[i][0] * &alpha[j][1]
                - &beta[i][1] * &alpha[j][0];
            let x2 = &beta[j][1] * &alpha[i][1] - &beta[i][1] * &alpha[j][1];
            push([&x0, &x1, &x2]);
        }
    }
    critical.sort();
    critical.dedup();

    let all_strict = system.iter().all(|c| c.strict);
    let slice = |s: &Rational| -> Option<Rational> {
        let rows: Vec<_> = system
            .iter()
            .map(|c| {
                (
                    &c.f.coeffs[2] + &c.f.coeffs[3] * s,
                    &c.f.coeffs[0] + &c.f.coeffs[1] * s,
                    c.strict,
                )
            })
            .collect();
        solve_1d(&rows)
    };

    let mut samples: Vec<Rational> = critical
        .windows(2)
        .map(|w| w[0].rational_between(&w[1]))
        .collect();
    if !all_strict {
        samples.extend(critical.iter().filter_map(|c| c.to_rational()));
    }
    for s in &samples {
        if let Some(t) = slice(s) {
            return Feasibility::Witness(vec![s.clone(), t]);
        }
    }
    if !all_strict {
        for c in critical.iter().filter(|c| !c.is_rational()) {
            let rows: Vec<_> = system
                .iter()
                .map(|k| {
                    let f = &k.f.coeffs;
                    let a = Surd::rational(f[2].clone()) + Surd::rational(f[3].clone()) * c.clone();
                    let b = Surd::rational(f[0].clone()) + Surd::rational(f[1].clone()) * c.clone();
                    (a, b, k.strict)
                })
                .collect();
            if solve_1d(&rows).is_some() {
                return Feasibility::IrrationalOnly;
            }
        }
    }
    Feasibility::Infeasible
}

/// Polynomial in `q` whose coefficients are polynomials in `p`.
type BiPoly = Vec<Poly>;

fn bi_trim(mut f: BiPoly) -> BiPoly {
    while f.last().is_some_and(Poly::is_zero) {
        f.pop();
    }
    f
}

fn bi_add(f: &BiPoly, g: &BiPoly) -> BiPoly {
    let n = f.len().max(g.len());
    let zero = Poly::zero();
    bi_trim(
        (0..n)
            .map(|k| f.get(k).unwrap_or(&zero) + g.get(k).unwrap_or(&zero))
            .collect(),
    )
}

fn bi_mul(f: &BiPoly, g: &BiPoly) -> BiPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Poly::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] = &out[i + j] + &(a * b);
        }
    }
    bi_trim(out)
}

fn bi_neg(f: &BiPoly) -> BiPoly {
    f.iter().map(|c| -c.clone()).collect()
}

/// Polynomials in `p` whose roots bound the cells on which the `(q, r)` problem keeps its shape.
fn projection(system: &[Inequality]) -> Vec<Poly> {
    // f = A(p, q)·r + B(p, q) with bit 0 = p, bit 1 = q, bit 2 = r.
    let lin = |a: &Rational, b: &Rational| Poly::linear(a.clone(), b.clone());
    let mut phi: Vec<BiPoly> = Vec::new();
    let mut a_list = Vec::new();
    let mut b_list = Vec::new();
    for c in system {
        let k = &c.f.coeffs;
        let a = bi_trim(vec![lin(&k[4], &k[5]), lin(&k[6], &k[7])]);
        let b = bi_trim(vec![lin(&k[0], &k[1]), lin(&k[2], &k[3])]);
        phi.push(a.clone());
        phi.push(b.clone());
        phi.push(bi_add(&a, &b));
        a_list.push(a);
        b_list.push(b);
    }
    for i in 0..system.len() {
        for j in (i + 1)..system.len() {
            let x = bi_add(
                &bi_mul(&b_list[j], &a_list[i]),
                &bi_neg(&bi_mul(&b_list[i], &a_list[j])),
            );
            phi.push(x);
        }
    }
    phi.retain(|f| !f.is_empty());

    let mut psi: Vec<Poly> = Vec::new();
    for f in &phi {
        psi.extend(f.iter().cloned());
        psi.push(f.iter().fold(Poly::zero(), |acc, c| &acc + c));
        if f.len() == 3 {
            psi.push(&(&f[1] * &f[1]) - &(&(&f[2] * &f[0]) * &Poly::constant(int(4))));
        }
    }
    for (i, f) in phi.iter().enumerate() {
        for g in &phi[i + 1..] {
            let (f, g) = if f.len() >= g.len() { (f, g) } else { (g, f) };
            match (f.len(), g.len()) {
                (2, 2) => psi.push(&(&f[1] * &g[0]) - &(&f[0] * &g[1])),
                (3, 2) => {
                    let (a, b, c) = (&f[2], &f[1], &f[0]);
                    let (d, e) = (&g[1], &g[0]);
                    psi.push(&(&(a * e) * e) - &(&(&(b * d) * e) - &(&(c * d) * d)));
                }
                (3, 3) => {
                    let (a, b, c) = (&f[2], &f[1], &f[0]);
                    let (d, e, ff) = (&g[2], &g[1], &g[0]);
                    let af_cd = &(a * ff) - &(c * d);
                    let ae_bd = &(a * e) - &(b * d);
                    let bf_ce = &(b * ff) - &(c * e);
                    psi.push(&(&af_cd * &af_cd) - &(&ae_bd * &bf_ce));
                    psi.push(ae_bd);
                }
                _ => {}
            }
        }
    }
    psi.retain(|p| !p.is_constant());
    let mut unique: Vec<Poly> = Vec::new();
    for p in psi {
        let p = p.squarefree();
        if !unique.contains(&p) {
            unique.push(p);
        }
    }
    unique
}

fn decide_3d(system: &[Inequality]) -> Feasibility {
    let all_strict = system.iter().all(|c| c.strict);
    let zero = Rational::zero();
    let one = Rational::one();
    let mut roots: Vec<RealRoot> = Vec::new();
    for p in projection(system) {
        let found = roots_in_open_interval(&p, &zero, &one).expect("nonconstant polynomial");
        roots.extend(found);
    }
    if !all_strict {
        roots.iter_mut().for_each(RealRoot::resolve_rational);
    }
    let mut roots = sort_dedup(roots);

    let mut boundaries = vec![RealRoot::Exact(zero.clone())];
    boundaries.append(&mut roots);
    boundaries.push(RealRoot::Exact(one));
    let mut samples: Vec<Rational> = Vec::new();
    for k in 0..boundaries.len() - 1 {
        let (left, right) = boundaries.split_at_mut(k + 1);
        samples.push(left[k].rational_between(&mut right[0]));
    }
    let mut irrational_critical = false;
    if !all_strict {
        for b in &boundaries {
            match b.as_rational() {
                Some(r) => samples.push(r.clone()),
                None => irrational_critical = true,
            }
        }
    }

    let mut irrational_only = false;
    let mut unknown = irrational_critical;
    for p in &samples {
        let slice: Vec<Inequality> = system
            .iter()
            .map(|c| Inequality {
                f: c.f.substitute_first(p),
                strict: c.strict,
            })
            .collect();
        match decide_2d(&slice) {
            Feasibility::Witness(w) => return Feasibility::Witness(w).prefix(p),
            Feasibility::IrrationalOnly => irrational_only = true,
            Feasibility::Unknown => unknown = true,
            Feasibility::Infeasible => {}
        }
    }
    if unknown {
        Feasibility::Unknown
    } else if irrational_only {
        Feasibility::IrrationalOnly
    } else {
        Feasibility::Infeasible
    }
}

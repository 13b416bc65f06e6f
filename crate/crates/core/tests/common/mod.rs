//! Brute-force oracles shared by the integration tests. Nothing here calls the
//! solver's own equilibrium or efficiency code; payoffs are recomputed from
//! the raw matrices.
#![allow(dead_code)]

pub mod equivalence;
pub mod props;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strong_nash::rational::{int, Rational};
use strong_nash::{BimatrixGame, MixedProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    /// Every member strictly better.
    AllStrict,
    /// No member worse, one strictly better.
    SomeStrict,
}

pub fn bilinear(u: &[Vec<Rational>], x: &[Rational], y: &[Rational]) -> Rational {
    let mut total = Rational::zero();
    for (i, row) in u.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            total += &x[i] * &y[j] * v;
        }
    }
    total
}

pub fn values(game: &BimatrixGame, x: &[Rational], y: &[Rational]) -> (Rational, Rational) {
    (bilinear(game.u1(), x, y), bilinear(game.u2(), x, y))
}

fn unit(m: usize, k: usize) -> Vec<Rational> {
    (0..m)
        .map(|i| if i == k { int(1) } else { int(0) })
        .collect()
}

/// Exact best-response check over pure deviations.
pub fn is_nash(game: &BimatrixGame, x: &[Rational], y: &[Rational]) -> bool {
    let (v1, v2) = values(game, x, y);
    (0..game.rows()).all(|i| bilinear(game.u1(), &unit(game.rows(), i), y) <= v1)
        && (0..game.cols()).all(|j| bilinear(game.u2(), x, &unit(game.cols(), j)) <= v2)
}

pub fn pure_nash(game: &BimatrixGame) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..game.rows() {
        for j in 0..game.cols() {
            let best_row = (0..game.rows()).all(|k| game.u1()[k][j] <= game.u1()[i][j]);
            let best_col = (0..game.cols()).all(|k| game.u2()[i][k] <= game.u2()[i][j]);
            if best_row && best_col {
                out.push((i, j));
            }
        }
    }
    out
}

/// All vectors of `m` nonnegative integers summing to `total`.
pub fn compositions(m: usize, total: u64) -> Vec<Vec<u64>> {
    if m == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(m - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn grid_strategy(counts: &[u64], denom: u64) -> Vec<Rational> {
    counts
        .iter()
        .map(|&c| Rational::new(BigInt::from(c), BigInt::from(denom)))
        .collect()
}

fn integer_matrix(u: &[Vec<Rational>]) -> Vec<Vec<i64>> {
    u.iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    assert!(v.is_integer(), "grid oracle needs integer payoffs");
                    v.to_integer().to_i64().unwrap()
                })
                .collect()
        })
        .collect()
}

/// Integer thresholds for comparing `U / scale` with `v`: `U > v ⇔ U > floor(v·scale)`
/// and `U ≥ v ⇔ U ≥ ceil(v·scale)`.
fn thresholds(v: &Rational, scale: u64) -> (i128, i128) {
    let s = v * Rational::from_integer(BigInt::from(scale));
    (
        s.floor().to_integer().to_i128().unwrap(),
        s.ceil().to_integer().to_i128().unwrap(),
    )
}

fn better(total: i128, th: (i128, i128), strict: bool) -> bool {
    if strict {
        total > th.0
    } else {
        total >= th.1
    }
}

fn dominates(t1: i128, t2: i128, th1: (i128, i128), th2: (i128, i128), mode: Dominance) -> bool {
    match mode {
        Dominance::AllStrict => better(t1, th1, true) && better(t2, th2, true),
        Dominance::SomeStrict => {
            better(t1, th1, false)
                && better(t2, th2, false)
                && (better(t1, th1, true) || better(t2, th2, true))
        }
    }
}

/// A pair of grid strategies (step `1/denom`) whose payoffs dominate `(v1, v2)`.
pub fn grid_dominator_pair(
    game: &BimatrixGame,
    v: (&Rational, &Rational),
    mode: Dominance,
    denom: u64,
) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let u1 = integer_matrix(game.u1());
    let u2 = integer_matrix(game.u2());
    let th1 = thresholds(v.0, denom * denom);
    let th2 = thresholds(v.1, denom * denom);
    let rows = compositions(game.rows(), denom);
    for b in compositions(game.cols(), denom) {
        let r: Vec<i128> = u1
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&b)
                    .map(|(&u, &w)| u as i128 * w as i128)
                    .sum()
            })
            .collect();
        let s: Vec<i128> = u2
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&b)
                    .map(|(&u, &w)| u as i128 * w as i128)
                    .sum()
            })
            .collect();
        for a in &rows {
            let t1: i128 = a.iter().zip(&r).map(|(&w, &x)| w as i128 * x).sum();
            let t2: i128 = a.iter().zip(&s).map(|(&w, &x)| w as i128 * x).sum();
            if dominates(t1, t2, th1, th2, mode) {
                return Some((grid_strategy(a, denom), grid_strategy(&b, denom)));
            }
        }
    }
    None
}

/// Player `who` alone moves on the grid against the other's fixed strategy; a
/// lone member dominates exactly when they strictly gain, in either mode.
pub fn grid_dominator_single(
    game: &BimatrixGame,
    x: &[Rational],
    y: &[Rational],
    who: usize,
    denom: u64,
) -> Option<Vec<Rational>> {
    let (v1, v2) = values(game, x, y);
    let m = if who == 0 { game.rows() } else { game.cols() };
    for c in compositions(m, denom) {
        let s = grid_strategy(&c, denom);
        let (w1, w2) = if who == 0 {
            values(game, &s, y)
        } else {
            values(game, x, &s)
        };
        let (mine, base) = if who == 0 { (w1, &v1) } else { (w2, &v2) };
        if mine > *base {
            return Some(s);
        }
    }
    None
}

/// Grid profiles (step `1/denom`) that are exact Nash equilibria.
pub fn grid_nash(game: &BimatrixGame, denom: u64) -> Vec<(Vec<Rational>, Vec<Rational>)> {
    let u1 = integer_matrix(game.u1());
    let u2 = integer_matrix(game.u2());
    let d = denom as i128;
    let rows = compositions(game.rows(), denom);
    let mut out = Vec::new();
    for b in compositions(game.cols(), denom) {
        // Row payoffs against b, times denom.
        let r: Vec<i128> = u1
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&b)
                    .map(|(&u, &w)| u as i128 * w as i128)
                    .sum()
            })
            .collect();
        let best_row = *r.iter().max().unwrap();
        for a in &rows {
            let v1: i128 = a.iter().zip(&r).map(|(&w, &x)| w as i128 * x).sum();
            if best_row * d > v1 {
                continue;
            }
            // Column payoffs against a, times denom.
            let c: Vec<i128> = (0..game.cols())
                .map(|j| {
                    a.iter()
                        .zip(&u2)
                        .map(|(&w, row)| w as i128 * row[j] as i128)
                        .sum()
                })
                .collect();
            let v2: i128 = c.iter().zip(&b).map(|(&x, &w)| x * w as i128).sum();
            if *c.iter().max().unwrap() * d <= v2 {
                out.push((grid_strategy(a, denom), grid_strategy(&b, denom)));
            }
        }
    }
    out
}

pub fn support_of(x: &[Rational]) -> Vec<usize> {
    (0..x.len()).filter(|&i| !x[i].is_zero()).collect()
}

pub fn random_integer_game(m1: usize, m2: usize, range: i64, rng: &mut ChaCha8Rng) -> BimatrixGame {
    let mut matrix = || -> Vec<Vec<Rational>> {
        (0..m1)
            .map(|_| {
                (0..m2)
                    .map(|_| int(rng.gen_range(-range..=range)))
                    .collect()
            })
            .collect()
    };
    let u1 = matrix();
    let u2 = matrix();
    BimatrixGame::new(u1, u2).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn profile(x: &[Rational], y: &[Rational]) -> MixedProfile {
    MixedProfile::new(vec![x.to_vec(), y.to_vec()]).unwrap()
}

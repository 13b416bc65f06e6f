//! Nash verification, pure enumeration, support-restricted equilibrium search and
//! KKT multipliers for full-support bimatrix profiles.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{
    action_payoffs, expected_payoff, BimatrixGame, Cells, MixedProfile, NormalForm, PayoffVector,
    SupportProfile,
};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NashWitness {
    pub profile: MixedProfile,
    pub values: PayoffVector,
    pub support: SupportProfile,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KktCertificate {
    pub lambda: [Rational; 2],
    pub nu: [Rational; 2],
    /// Whether some solution has both multipliers strictly positive; `lambda` is then such a solution.
    pub strictly_positive: bool,
}

/// No player gains by a unilateral pure deviation from the pure profile `actions`.
pub fn is_pure_nash<G: NormalForm + ?Sized>(game: &G, actions: &[usize]) -> Result<bool> {
    let profile = MixedProfile::pure(game.dims(), actions)?;
    is_nash(game, &profile)
}

/// Exact best-response test: every action earns at most the profile value, and
/// in-support actions earn exactly that value.
pub fn is_nash<G: NormalForm + ?Sized>(game: &G, profile: &MixedProfile) -> Result<bool> {
    let values = expected_payoff(game, profile)?;
    for player in 0..game.num_players() {
        let payoffs = action_payoffs(game, profile, player)?;
        for (a, u) in payoffs.iter().enumerate() {
            if *u > values[player] {
                return Ok(false);
            }
            if profile.player(player)[a].is_positive() && *u != values[player] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All pure equilibria, in lexicographic order of the action tuples.
pub fn enumerate_pure_nash<G: NormalForm + ?Sized>(game: &G) -> Vec<Vec<usize>> {
    Cells::new(game.dims())
        .filter(|cell| is_pure_nash(game, cell).expect("cell matches dims"))
        .collect()
}

/// Support profiles of a bimatrix game ordered by total size, then lexicographically.
pub fn support_profiles(dims: &[usize]) -> Vec<SupportProfile> {
    let subsets: Vec<Vec<Vec<usize>>> = dims
        .iter()
        .map(|&m| {
            (1u64..(1 << m))
                .map(|mask| (0..m).filter(|k| mask & (1 << k) != 0).collect())
                .collect()
        })
        .collect();
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for player_sets in &subsets {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                player_sets.iter().map(move |s| {
                    let mut next = prefix.clone();
                    next.push(s.clone());
                    next
                })
            })
            .collect();
    }
    out.sort_by(|a, b| {
        let size = |p: &Vec<Vec<usize>>| p.iter().map(Vec::len).sum::<usize>();
        size(a).cmp(&size(b)).then_with(|| a.cmp(b))
    });
    out.into_iter()
        .map(|sets| SupportProfile::new(sets).expect("nonempty sorted sets"))
        .collect()
}

/// Welfare-maximizing equilibrium whose support is exactly `support`, if any.
///
/// Only the opponent's mix enters each player's indifference conditions, so the
/// system is linear in `(x1, x2, v1, v2)`.
pub fn nash_on_support(
    game: &BimatrixGame,
    support: &SupportProfile,
) -> Result<Option<NashWitness>> {
    support.validate_for(game.dims())?;
    let s1 = &support.sets()[0];
    let s2 = &support.sets()[1];
    let (n1, n2) = (s1.len(), s2.len());
    // Variables: x1 on S1, x2 on S2, v1, v2.
    let nv = n1 + n2 + 2;
    let (v1, v2) = (n1 + n2, n1 + n2 + 1);
    let ones = |range: std::ops::Range<usize>| -> Vec<(usize, Rational)> {
        range.map(|k| (k, Rational::one())).collect()
    };
    let base = |extra: usize| {
        let mut lp = LinearProgram::new(nv + extra);
        lp.set_free(v1).set_free(v2);
        for (terms, rel) in indifference_rows(game, s1, s2) {
            lp.constrain_terms(&terms, rel, Rational::zero());
        }
        lp.constrain_terms(&ones(0..n1), Relation::Eq, Rational::one());
        lp.constrain_terms(&ones(n1..n1 + n2), Relation::Eq, Rational::one());
        lp
    };
    let mut welfare = vec![Rational::zero(); nv];
    welfare[v1] = Rational::one();
    welfare[v2] = Rational::one();
    let mut lp = base(0);
    lp.maximize(welfare);

    let LpOutcome::Optimal { mut x, value } = lp.solve() else {
        return Ok(None);
    };
    if x[..n1 + n2].iter().any(Zero::is_zero) {
        // Keep the welfare optimum and push the smallest in-support probability up.
        let z = nv;
        let mut lp = base(1);
        lp.set_free(z);
        lp.constrain_terms(
            &[(v1, Rational::one()), (v2, Rational::one())],
            Relation::Eq,
            value,
        );
        for k in 0..n1 + n2 {
            lp.constrain_terms(
                &[(z, Rational::one()), (k, -Rational::one())],
                Relation::Le,
                Rational::zero(),
            );
        }
        let mut obj = vec![Rational::zero(); nv + 1];
        obj[z] = Rational::one();
        lp.maximize(obj);
        match lp.solve() {
            LpOutcome::Optimal { x: y, value: zmin } if zmin.is_positive() => {
                x = y;
                x.truncate(nv);
            }
            _ => return Ok(None),
        }
    }

    let mut x1 = vec![Rational::zero(); game.rows()];
    let mut x2 = vec![Rational::zero(); game.cols()];
    for (k, &i) in s1.iter().enumerate() {
        x1[i] = x[k].clone();
    }
    for (k, &j) in s2.iter().enumerate() {
        x2[j] = x[n1 + k].clone();
    }
    let profile = MixedProfile::new(vec![x1, x2])?;
    let values = PayoffVector(vec![x[v1].clone(), x[v2].clone()]);
    debug_assert_eq!(expected_payoff(game, &profile)?, values);
    Ok(Some(NashWitness {
        profile,
        values,
        support: support.clone(),
    }))
}

type Row = (Vec<(usize, Rational)>, Relation);

fn indifference_rows(game: &BimatrixGame, s1: &[usize], s2: &[usize]) -> Vec<Row> {
    let (n1, n2) = (s1.len(), s2.len());
    let (v1, v2) = (n1 + n2, n1 + n2 + 1);
    let mut rows = Vec::new();
    for i in 0..game.rows() {
        let mut terms: Vec<_> = s2
            .iter()
            .enumerate()
            .map(|(k, &j)| (n1 + k, game.u1()[i][j].clone()))
            .collect();
        terms.push((v1, -Rational::one()));
        rows.push((
            terms,
            if s1.contains(&i) {
                Relation::Eq
            } else {
                Relation::Le
            },
        ));
    }
    for j in 0..game.cols() {
        let mut terms: Vec<_> = s1
            .iter()
            .enumerate()
            .map(|(k, &i)| (k, game.u2()[i][j].clone()))
            .collect();
        terms.push((v2, -Rational::one()));
        rows.push((
            terms,
            if s2.contains(&j) {
                Relation::Eq
            } else {
                Relation::Le
            },
        ));
    }
    rows
}

/// Multipliers `(λ, ν)` with `λ ≥ 0`, `λ1 + λ2 = 1` solving
/// `λ2·u2(i, x2) + ν1 = 0` for every row `i` and `λ1·u1(x1, j) + ν2 = 0` for every column `j`,
/// after shifting the payoffs so that `values` becomes the origin.
/// Among solutions, one maximizing `min(λ1, λ2)` is returned.
pub fn kkt_certificate(
    game: &BimatrixGame,
    profile: &MixedProfile,
    values: &PayoffVector,
) -> Result<Option<KktCertificate>> {
    profile.check_dims(game.dims())?;
    if !profile.is_fully_mixed() {
        return Err(Error::NotFullyMixed);
    }
    let g = game.normalize_to_zero(values)?;
    let (x1, x2) = (profile.player(0), profile.player(1));
    let row_u2: Vec<Rational> = g
        .u2()
        .iter()
        .map(|row| row.iter().zip(x2).map(|(u, p)| u * p).sum())
        .collect();
    let col_u1: Vec<Rational> = (0..g.cols())
        .map(|j| g.u1().iter().zip(x1).map(|(row, p)| &row[j] * p).sum())
        .collect();
    // Variables: λ1, λ2, ν1, ν2, z.
    let (l1, l2, n1, n2, z) = (0, 1, 2, 3, 4);
    let mut lp = LinearProgram::new(5);
    lp.set_free(n1).set_free(n2).set_free(z);
    for u in &row_u2 {
        lp.constrain_terms(
            &[(l2, u.clone()), (n1, Rational::one())],
            Relation::Eq,
            Rational::zero(),
        );
    }
    for u in &col_u1 {
        lp.constrain_terms(
            &[(l1, u.clone()), (n2, Rational::one())],
            Relation::Eq,
            Rational::zero(),
        );
    }
    lp.constrain_terms(
        &[(l1, Rational::one()), (l2, Rational::one())],
        Relation::Eq,
        Rational::one(),
    );
    lp.constrain_terms(
        &[(z, Rational::one()), (l1, -Rational::one())],
        Relation::Le,
        Rational::zero(),
    );
    lp.constrain_terms(
        &[(z, Rational::one()), (l2, -Rational::one())],
        Relation::Le,
        Rational::zero(),
    );
    lp.maximize(vec![
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::one(),
    ]);
    Ok(match lp.solve() {
        LpOutcome::Optimal { x, value } => Some(KktCertificate {
            lambda: [x[l1].clone(), x[l2].clone()],
            nu: [x[n1].clone(), x[n2].clone()],
            strictly_positive: value.is_positive(),
        }),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("z is bounded by λ"),
    })
}

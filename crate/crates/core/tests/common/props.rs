//! Property checks shared by the standalone property suite and the acceptance run.

use num_traits::One;
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::sample::subsequence;
use proptest::test_runner::TestCaseError;

use strong_nash::bench::{perturb, run_smoothed_bench, BenchBase, PerturbSpec};
use strong_nash::engine::{find_sne, SneMode};
use strong_nash::format::{parse_game, serialize_game};
use strong_nash::game::expected_payoff;
use strong_nash::geometry::{classify_line, condition1, line_condition_report, LineKind};
use strong_nash::nash::{
    enumerate_pure_nash, is_nash, kkt_certificate, nash_on_support, support_profiles,
};
use strong_nash::pareto::{
    coalition_efficiency, grid_domination_search, hull_efficiency_certificate,
    two_coalition_exact_2x2, Coalition, EfficiencyVerdict, GridParams, ParetoMode,
};
use strong_nash::rational::{int, ratio, Rational};
use strong_nash::semialgebraic::Multilinear;
use strong_nash::{
    BimatrixGame, Game, MixedProfile, NormalForm, PayoffVector, SupportProfile, TensorGame,
};

use super::{grid_dominator_pair, grid_dominator_single, grid_nash, values, Dominance};

pub type Check = Result<(), TestCaseError>;

// ---------- generators ----------

fn build_bimatrix(m1: usize, m2: usize, v: &[i64]) -> BimatrixGame {
    let (a, b) = v.split_at(m1 * m2);
    let matrix = |w: &[i64]| -> Vec<Vec<Rational>> {
        w.chunks(m2)
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    };
    BimatrixGame::new(matrix(a), matrix(b)).unwrap()
}

pub fn int_game(lo: usize, hi: usize, range: i64) -> impl Strategy<Value = BimatrixGame> {
    (lo..=hi, lo..=hi).prop_flat_map(move |(m1, m2)| {
        vec(-range..=range, 2 * m1 * m2).prop_map(move |v| build_bimatrix(m1, m2, &v))
    })
}

/// Random probability vector with denominator dividing the weight total.
pub fn strategy(m: usize) -> impl Strategy<Value = Vec<Rational>> {
    vec(0u32..=4, m)
        .prop_filter("nonzero weight", |w| w.iter().any(|&x| x > 0))
        .prop_map(|w| {
            let total: u32 = w.iter().sum();
            w.iter().map(|&x| ratio(x as i64, total as i64)).collect()
        })
}

pub fn profile_for(dims: &[usize]) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    dims.iter().map(|&m| strategy(m)).collect::<Vec<_>>()
}

pub fn tensor_game() -> impl Strategy<Value = TensorGame> {
    vec(1usize..=3, 2..=3).prop_flat_map(|dims| {
        let cells: usize = dims.iter().product();
        let n = dims.len();
        vec(vec(-5i64..=5, cells), n).prop_map(move |p| {
            TensorGame::new(
                dims.clone(),
                p.into_iter()
                    .map(|v| v.into_iter().map(int).collect())
                    .collect(),
            )
            .unwrap()
        })
    })
}

/// Game whose outcomes lie on `u2 = slope·u1 + 3` (or a vertical/horizontal line).
pub fn line_game(lo: usize, hi: usize) -> impl Strategy<Value = BimatrixGame> {
    (lo..=hi, lo..=hi, -3i64..=3, 1i64..=3, 0u8..4).prop_flat_map(|(m1, m2, p, q, shape)| {
        vec(-4i64..=4, m1 * m2).prop_map(move |xs| {
            let u: Vec<Rational> = xs.iter().map(|&x| int(x)).collect();
            let slope = ratio(p, q);
            let (u1, u2): (Vec<Rational>, Vec<Rational>) = match shape {
                0 => (vec![int(2); u.len()], u.clone()),
                1 => (u.clone(), vec![int(-1); u.len()]),
                _ => (u.clone(), u.iter().map(|x| &slope * x + int(3)).collect()),
            };
            let rows = |w: Vec<Rational>| -> Vec<Vec<Rational>> {
                w.chunks(m2).map(<[Rational]>::to_vec).collect()
            };
            BimatrixGame::new(rows(u1), rows(u2)).unwrap()
        })
    })
}

// ---------- core model ----------

#[derive(Debug, Clone)]
pub struct MultilinearCase {
    pub game: TensorGame,
    pub profile: Vec<Vec<Rational>>,
    pub player: usize,
    pub other: Vec<Rational>,
    pub lambda: Rational,
}

pub fn multilinear_case() -> impl Strategy<Value = MultilinearCase> {
    tensor_game()
        .prop_flat_map(|game| {
            let dims = game.dims().to_vec();
            let n = dims.len();
            (Just(game), profile_for(&dims), 0..n, 0i64..=8).prop_flat_map(
                move |(game, profile, player, l)| {
                    let m = dims[player];
                    (
                        Just(game),
                        Just(profile),
                        Just(player),
                        strategy(m),
                        Just(ratio(l, 8)),
                    )
                },
            )
        })
        .prop_map(|(game, profile, player, other, lambda)| MultilinearCase {
            game,
            profile,
            player,
            other,
            lambda,
        })
}

pub fn multilinearity(c: &MultilinearCase) -> Check {
    let p = MixedProfile::new(c.profile.clone()).unwrap();
    let q = p.with_player(c.player, c.other.clone()).unwrap();
    let one_minus = Rational::one() - &c.lambda;
    let mixed: Vec<Rational> = c.profile[c.player]
        .iter()
        .zip(&c.other)
        .map(|(a, b)| &c.lambda * a + &one_minus * b)
        .collect();
    let r = p.with_player(c.player, mixed).unwrap();
    let (vp, vq, vr) = (
        expected_payoff(&c.game, &p).unwrap(),
        expected_payoff(&c.game, &q).unwrap(),
        expected_payoff(&c.game, &r).unwrap(),
    );
    for i in 0..c.game.num_players() {
        prop_assert_eq!(&vr.0[i], &(&c.lambda * &vp.0[i] + &one_minus * &vq.0[i]));
    }
    Ok(())
}

/// Payoffs from the multilinear interpolation of the corner values agree with
/// expected payoffs on two-action games.
pub fn corner_interpolation(game: &TensorGame, probs: &[Rational]) -> Check {
    let n = game.num_players();
    let profile = MixedProfile::new(
        probs
            .iter()
            .map(|p| vec![p.clone(), Rational::one() - p])
            .collect(),
    )
    .unwrap();
    let v = expected_payoff(game, &profile).unwrap();
    for i in 0..n {
        let corners = (0..1usize << n)
            .map(|mask| {
                let cell: Vec<usize> = (0..n).map(|k| usize::from(mask & (1 << k) == 0)).collect();
                game.payoff(i, &cell).clone()
            })
            .collect();
        prop_assert_eq!(&Multilinear::from_corners(n, corners).eval(probs), &v.0[i]);
    }
    Ok(())
}

pub fn two_action_case() -> impl Strategy<Value = (TensorGame, Vec<Rational>)> {
    (2usize..=3).prop_flat_map(|n| {
        let dims = vec![2usize; n];
        let cells = 1usize << n;
        (
            vec(vec(-5i64..=5, cells), n).prop_map(move |p| {
                TensorGame::new(
                    dims.clone(),
                    p.into_iter()
                        .map(|v| v.into_iter().map(int).collect())
                        .collect(),
                )
                .unwrap()
            }),
            vec((0i64..=6).prop_map(|k| ratio(k, 6)), n),
        )
    })
}

#[derive(Debug, Clone)]
pub struct RestrictionCase {
    pub game: TensorGame,
    pub support: Vec<Vec<usize>>,
    pub sub_profile: Vec<Vec<Rational>>,
}

pub fn restriction_case() -> impl Strategy<Value = RestrictionCase> {
    tensor_game()
        .prop_flat_map(|game| {
            let sets: Vec<_> = game
                .dims()
                .iter()
                .map(|&m| subsequence((0..m).collect::<Vec<_>>(), 1..=m))
                .collect();
            (Just(game), sets)
        })
        .prop_flat_map(|(game, support)| {
            let sub: Vec<usize> = support.iter().map(Vec::len).collect();
            (Just(game), Just(support), profile_for(&sub))
        })
        .prop_map(|(game, support, sub_profile)| RestrictionCase {
            game,
            support,
            sub_profile,
        })
}

pub fn restriction_consistency(c: &RestrictionCase) -> Check {
    let r = c
        .game
        .restrict(&SupportProfile::new(c.support.clone()).unwrap())
        .unwrap();
    let p = MixedProfile::new(c.sub_profile.clone()).unwrap();
    let full = r.embed(&p).unwrap();
    prop_assert_eq!(
        expected_payoff(&r.game, &p).unwrap(),
        expected_payoff(&c.game, &full).unwrap()
    );
    Ok(())
}

pub fn normalization_invariance(game: &BimatrixGame, v: (i64, i64, i64)) -> Check {
    let values = PayoffVector(vec![ratio(v.0, v.2), ratio(v.1, v.2)]);
    let shifted = game.normalize_to_zero(&values).unwrap();
    prop_assert_eq!(enumerate_pure_nash(game), enumerate_pure_nash(&shifted));
    Ok(())
}

pub fn round_trip(game: &TensorGame) -> Check {
    let parsed = parse_game(&serialize_game(game)).unwrap();
    match parsed {
        Game::Bimatrix(b) => prop_assert_eq!(&b.to_tensor(), game),
        Game::Tensor(t) => prop_assert_eq!(&t, game),
    }
    Ok(())
}

// ---------- nash ----------

pub fn nash_on_support_sound(game: &BimatrixGame) -> Check {
    for s in support_profiles(game.dims()) {
        if let Some(w) = nash_on_support(game, &s).unwrap() {
            prop_assert!(is_nash(game, &w.profile).unwrap());
            prop_assert!(super::is_nash(
                game,
                w.profile.player(0),
                w.profile.player(1)
            ));
            prop_assert_eq!(&w.profile.support(), &s);
            prop_assert_eq!(&w.support, &s);
        }
    }
    Ok(())
}

/// Every grid equilibrium of a 2×2 game is matched by a witness on its support,
/// or on a smaller one when welfare is maximized only at the boundary, of at
/// least the same total payoff.
pub fn nash_complete_2x2(game: &BimatrixGame) -> Check {
    let witnesses: Vec<_> = support_profiles(game.dims())
        .into_iter()
        .filter_map(|s| nash_on_support(game, &s).unwrap())
        .collect();
    for (x, y) in grid_nash(game, 64) {
        let sets = [super::support_of(&x), super::support_of(&y)];
        let (a, b) = values(game, &x, &y);
        let welfare = a + b;
        let matched = witnesses.iter().any(|w| {
            w.support
                .sets()
                .iter()
                .zip(&sets)
                .all(|(inner, outer)| inner.iter().all(|k| outer.contains(k)))
                && w.values.sum() >= welfare
        });
        prop_assert!(matched, "missed equilibrium {:?} {:?}", x, y);
        let exact = SupportProfile::new(sets.to_vec()).unwrap();
        if let Some(w) = nash_on_support(game, &exact).unwrap() {
            prop_assert!(w.values.sum() >= welfare);
        }
    }
    Ok(())
}

pub fn kkt_scale_invariance(game: &BimatrixGame, scale: (i64, i64)) -> Check {
    let c = ratio(scale.0, scale.1);
    let scaled = BimatrixGame::new(
        game.u1()
            .iter()
            .map(|r| r.iter().map(|x| x * &c).collect())
            .collect(),
        game.u2().to_vec(),
    )
    .unwrap();
    let full = SupportProfile::full(game.dims());
    if let Some(w) = nash_on_support(game, &full).unwrap() {
        let before = kkt_certificate(game, &w.profile, &w.values).unwrap();
        let v = PayoffVector(vec![&w.values.0[0] * &c, w.values.0[1].clone()]);
        let after = kkt_certificate(&scaled, &w.profile, &v).unwrap();
        prop_assert_eq!(before.is_some(), after.is_some());
    }
    Ok(())
}

// ---------- pareto ----------

fn oracle_mode(mode: ParetoMode) -> Dominance {
    match mode {
        ParetoMode::Weak => Dominance::AllStrict,
        ParetoMode::Strict => Dominance::SomeStrict,
    }
}

pub fn mode_of(strict: bool) -> ParetoMode {
    if strict {
        ParetoMode::Strict
    } else {
        ParetoMode::Weak
    }
}

pub fn coalition_of(k: usize) -> Coalition {
    match k {
        0 => Coalition::new(vec![0], 2).unwrap(),
        1 => Coalition::new(vec![1], 2).unwrap(),
        _ => Coalition::grand(2),
    }
}

#[derive(Debug, Clone)]
pub struct VerdictCase {
    pub game: BimatrixGame,
    pub profile: Vec<Vec<Rational>>,
    pub coalition: usize,
    pub strict: bool,
}

pub fn verdict_case(lo: usize, hi: usize) -> impl Strategy<Value = VerdictCase> {
    int_game(lo, hi, 4)
        .prop_flat_map(|g| {
            let dims = g.dims().to_vec();
            (Just(g), profile_for(&dims), 0usize..3, any::<bool>())
        })
        .prop_map(|(game, profile, coalition, strict)| VerdictCase {
            game,
            profile,
            coalition,
            strict,
        })
}

/// Dominated witnesses re-verify exactly; Efficient verdicts survive a grid at `1/denom`.
pub fn verdict_soundness(c: &VerdictCase, denom: u64) -> Check {
    let mode = mode_of(c.strict);
    let p = MixedProfile::new(c.profile.clone()).unwrap();
    let coalition = coalition_of(c.coalition);
    let verdict =
        coalition_efficiency(&c.game, &p, &coalition, mode, &GridParams::default()).unwrap();
    let (v1, v2) = values(&c.game, &c.profile[0], &c.profile[1]);
    match verdict {
        EfficiencyVerdict::Dominated { witness, values: w } => {
            let (w1, w2) = values(&c.game, witness.player(0), witness.player(1));
            prop_assert_eq!(&w.0, &vec![w1.clone(), w2.clone()]);
            for i in 0..2 {
                if !coalition.members().contains(&i) {
                    prop_assert_eq!(witness.player(i), p.player(i));
                }
            }
            let (cand, base): (Vec<Rational>, Vec<Rational>) = match c.coalition {
                0 => (vec![w1], vec![v1]),
                1 => (vec![w2], vec![v2]),
                _ => (vec![w1, w2], vec![v1, v2]),
            };
            prop_assert!(mode.dominates(&cand, &base));
        }
        EfficiencyVerdict::Efficient(_) => {
            let hit = match c.coalition {
                2 => grid_dominator_pair(&c.game, (&v1, &v2), oracle_mode(mode), denom).map(|_| ()),
                k => grid_dominator_single(&c.game, &c.profile[0], &c.profile[1], k, denom)
                    .map(|_| ()),
            };
            prop_assert!(hit.is_none(), "grid dominator for an efficient verdict");
        }
        EfficiencyVerdict::Undetermined { .. } => {}
    }
    Ok(())
}

pub fn mode_monotonicity(c: &VerdictCase) -> Check {
    let p = MixedProfile::new(c.profile.clone()).unwrap();
    let coalition = coalition_of(c.coalition);
    let params = GridParams::default();
    let strict =
        coalition_efficiency(&c.game, &p, &coalition, ParetoMode::Strict, &params).unwrap();
    if strict.is_efficient() {
        let weak =
            coalition_efficiency(&c.game, &p, &coalition, ParetoMode::Weak, &params).unwrap();
        prop_assert!(weak.is_efficient(), "{:?}", weak);
    }
    Ok(())
}

pub fn singleton_equivalence(game: &BimatrixGame) -> Check {
    for s in support_profiles(game.dims()) {
        if let Some(w) = nash_on_support(game, &s).unwrap() {
            for k in 0..2 {
                for mode in [ParetoMode::Weak, ParetoMode::Strict] {
                    let v = coalition_efficiency(
                        game,
                        &w.profile,
                        &coalition_of(k),
                        mode,
                        &GridParams::default(),
                    )
                    .unwrap();
                    prop_assert!(v.is_efficient());
                }
            }
        }
    }
    Ok(())
}

/// A hull certificate is never contradicted by the graded grid search.
pub fn hull_consistency(c: &VerdictCase) -> Check {
    let mode = mode_of(c.strict);
    let p = MixedProfile::new(c.profile.clone()).unwrap();
    let v = expected_payoff(&c.game, &p).unwrap();
    if hull_efficiency_certificate(&c.game, &v, mode) {
        for d in [4i64, 8, 16, 32, 64] {
            let params = GridParams {
                resolution: ratio(1, d),
                max_refinements: 0,
                ..GridParams::default()
            };
            let hit = grid_domination_search(&c.game, &v, &Coalition::grand(2), &p, mode, &params)
                .unwrap();
            prop_assert!(hit.is_none(), "grid dominator at 1/{}", d);
        }
    }
    Ok(())
}

pub fn collinear_exactness(game: &BimatrixGame, profile: &[Vec<Rational>], strict: bool) -> Check {
    let mode = mode_of(strict);
    let p = MixedProfile::new(profile.to_vec()).unwrap();
    let grand = Coalition::grand(2);
    let tiered = coalition_efficiency(game, &p, &grand, mode, &GridParams::default()).unwrap();
    let exact = two_coalition_exact_2x2(game, &p, &grand, mode).unwrap();
    if !matches!(exact, EfficiencyVerdict::Undetermined { .. }) {
        prop_assert_eq!(tiered.is_efficient(), exact.is_efficient());
    }
    Ok(())
}

pub fn line_game_2x2_case() -> impl Strategy<Value = (BimatrixGame, Vec<Vec<Rational>>, bool)> {
    (line_game(2, 2), profile_for(&[2, 2]), any::<bool>())
}

// ---------- geometry ----------

pub fn permute_game(game: &BimatrixGame, rows: &[usize], cols: &[usize]) -> BimatrixGame {
    let pick = |u: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| u[i][j].clone()).collect())
            .collect()
    };
    BimatrixGame::new(pick(game.u1()), pick(game.u2())).unwrap()
}

pub fn condition1_permutation(game: &BimatrixGame, seed: u64) -> Check {
    use rand::seq::SliceRandom;
    let mut r = super::rng(seed);
    let mut rows: Vec<usize> = (0..game.rows()).collect();
    let mut cols: Vec<usize> = (0..game.cols()).collect();
    rows.shuffle(&mut r);
    cols.shuffle(&mut r);
    let permuted = permute_game(game, &rows, &cols);
    prop_assert_eq!(condition1(game).is_some(), condition1(&permuted).is_some());
    prop_assert_eq!(
        classify_line(game).is_collinear(),
        classify_line(&permuted).is_collinear()
    );
    Ok(())
}

pub fn negative_slope_implies_condition1(game: &BimatrixGame) -> Check {
    if matches!(classify_line(game).kind, LineKind::NegativeSlope(_))
        && game.rows() >= 2
        && game.cols() >= 2
    {
        prop_assert!(condition1(game).is_some());
    }
    Ok(())
}

fn slope_class(kind: &LineKind) -> u8 {
    match kind {
        LineKind::Point => 0,
        LineKind::Vertical => 1,
        LineKind::Horizontal => 2,
        LineKind::NegativeSlope(_) => 3,
        LineKind::PositiveSlope(_) => 4,
        LineKind::NotCollinear => 5,
    }
}

pub fn affine_invariance(
    game: &BimatrixGame,
    a: (i64, i64),
    b: (i64, i64),
    shift: (i64, i64),
) -> Check {
    let (sa, sb) = (ratio(a.0, a.1), ratio(b.0, b.1));
    let map = |u: &[Vec<Rational>], s: &Rational, c: i64| -> Vec<Vec<Rational>> {
        u.iter()
            .map(|r| r.iter().map(|x| s * x + int(c)).collect())
            .collect()
    };
    let moved =
        BimatrixGame::new(map(game.u1(), &sa, shift.0), map(game.u2(), &sb, shift.1)).unwrap();
    prop_assert_eq!(
        slope_class(&classify_line(game).kind),
        slope_class(&classify_line(&moved).kind)
    );
    Ok(())
}

pub fn competitive_outcomes_are_efficient(game: &BimatrixGame) -> Check {
    if matches!(
        classify_line(game).kind,
        LineKind::NegativeSlope(_) | LineKind::Point
    ) {
        for i in 0..game.rows() {
            for j in 0..game.cols() {
                let v = PayoffVector(vec![game.u1()[i][j].clone(), game.u2()[i][j].clone()]);
                prop_assert!(hull_efficiency_certificate(game, &v, ParetoMode::Weak));
            }
        }
    }
    Ok(())
}

// ---------- engine ----------

pub fn engine_properties(game: &BimatrixGame, oracle_denom: u64) -> Check {
    let params = GridParams::default();
    let strong = find_sne(game, SneMode::Strong, &params).unwrap();
    let sup = find_sne(game, SneMode::Super, &params).unwrap();
    for (report, mode) in [(&strong, SneMode::Strong), (&sup, SneMode::Super)] {
        let d = &report.diagnostics;
        if !d.condition1_hit() && !d.condition2_hit() {
            prop_assert_eq!(d.supports_enumerated, 0);
            prop_assert!(!d.mixed_branch_run);
        }
        if let Some(w) = report.witness() {
            let (x, y) = (w.profile.player(0), w.profile.player(1));
            prop_assert!(super::is_nash(game, x, y));
            let (v1, v2) = values(game, x, y);
            let hit =
                grid_dominator_pair(game, (&v1, &v2), oracle_mode(mode.pareto()), oracle_denom);
            prop_assert!(hit.is_none(), "{:?} witness dominated by {:?}", mode, hit);
            line_condition_conformance(game, &w.profile, mode)?;
        }
    }
    if sup.witness().is_some() {
        prop_assert!(strong.witness().is_some(), "super strong without strong");
    }
    Ok(())
}

fn line_condition_conformance(game: &BimatrixGame, profile: &MixedProfile, mode: SneMode) -> Check {
    if profile.as_pure().is_some() {
        return Ok(());
    }
    let support = profile.support();
    let r = game.restrict(&support).unwrap();
    let sub = MixedProfile::new(
        support
            .sets()
            .iter()
            .zip(profile.strategies())
            .map(|(set, x)| set.iter().map(|&k| x[k].clone()).collect())
            .collect(),
    )
    .unwrap();
    let report = line_condition_report(&r.game, &sub).unwrap();
    match mode {
        SneMode::Strong => prop_assert!(report.strong_condition, "{:?}", report),
        SneMode::Super => prop_assert!(report.super_strong_condition, "{:?}", report),
    }
    Ok(())
}

// ---------- bench ----------

pub fn perturbation_soundness(
    game: &BimatrixGame,
    sigma: (i64, i64),
    grain: u64,
    seed: u64,
) -> Check {
    let spec = PerturbSpec::new(ratio(sigma.0, sigma.1), grain, seed).unwrap();
    let p = perturb(game, &spec);
    let d = Rational::from_integer(grain.into());
    for (a, b) in game
        .u1()
        .iter()
        .chain(game.u2())
        .flatten()
        .zip(p.u1().iter().chain(p.u2()).flatten())
    {
        let diff = b - a;
        prop_assert!(num_traits::Signed::abs(&diff) <= spec.sigma);
        prop_assert!((diff * &d).is_integer());
    }
    prop_assert_eq!(perturb(game, &spec), p);
    Ok(())
}

pub fn csv_reproducible(seed: u64) -> Check {
    let spec = PerturbSpec::new(ratio(1, 10), 1_000_000, seed).unwrap();
    let run = || {
        run_smoothed_bench(&[(2, 2), (3, 2)], 3, &spec, &BenchBase::Random)
            .unwrap()
            .to_csv(false)
    };
    prop_assert_eq!(run(), run());
    Ok(())
}

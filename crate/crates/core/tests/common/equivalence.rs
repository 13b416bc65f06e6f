//! Solver-versus-oracle comparison on random integer games.

use strong_nash::engine::{find_sne, SneMode, SolveOutcome};
use strong_nash::pareto::GridParams;
use strong_nash::rational::Rational;
use strong_nash::BimatrixGame;

use super::{grid_dominator_pair, is_nash, pure_nash, random_integer_game, rng, values, Dominance};

#[derive(Debug, Default)]
pub struct EquivalenceReport {
    pub games: usize,
    pub solver_sne: usize,
    pub oracle_pure_sne: usize,
    pub undetermined: usize,
    /// Solver witnesses the oracle rejects.
    pub refuted: Vec<String>,
    /// Oracle-certified pure equilibria where the solver reported non-existence.
    pub missed: Vec<String>,
}

impl EquivalenceReport {
    pub fn agrees(&self) -> bool {
        self.refuted.is_empty() && self.missed.is_empty()
    }
}

fn dominance(mode: SneMode) -> Dominance {
    match mode {
        SneMode::Strong => Dominance::AllStrict,
        SneMode::Super => Dominance::SomeStrict,
    }
}

/// Pure equilibria with no grid dominator for the pair of players.
pub fn oracle_pure_sne(game: &BimatrixGame, mode: SneMode, denom: u64) -> Vec<(usize, usize)> {
    pure_nash(game)
        .into_iter()
        .filter(|&(i, j)| {
            let (v1, v2): (&Rational, &Rational) = (&game.u1()[i][j], &game.u2()[i][j]);
            grid_dominator_pair(game, (v1, v2), dominance(mode), denom).is_none()
        })
        .collect()
}

pub fn compare(game: &BimatrixGame, mode: SneMode, denom: u64, report: &mut EquivalenceReport) {
    report.games += 1;
    let solved = find_sne(game, mode, &GridParams::default()).expect("valid game");
    let certified = oracle_pure_sne(game, mode, denom);
    if !certified.is_empty() {
        report.oracle_pure_sne += 1;
    }
    match &solved.outcome {
        SolveOutcome::Sne { witness, .. } => {
            report.solver_sne += 1;
            let (x, y) = (witness.profile.player(0), witness.profile.player(1));
            let (v1, v2) = values(game, x, y);
            if !is_nash(game, x, y) {
                report.refuted.push(format!(
                    "{mode:?}: witness {} is not an equilibrium of {game:?}",
                    witness.profile
                ));
            } else if let Some((a, b)) =
                grid_dominator_pair(game, (&v1, &v2), dominance(mode), denom)
            {
                report.refuted.push(format!(
                    "{mode:?}: witness {} dominated by {a:?};{b:?} in {game:?}",
                    witness.profile
                ));
            }
        }
        SolveOutcome::NonExistence => {
            if let Some(cell) = certified.first() {
                report.missed.push(format!(
                    "{mode:?}: pure equilibrium {cell:?} missed in {game:?}"
                ));
            }
        }
        SolveOutcome::Undetermined { .. } => report.undetermined += 1,
    }
}

/// `count` random games of each size in `sizes`, entries in `[-range, range]`, both modes.
pub fn run(sizes: &[usize], count: usize, range: i64, seed: u64, denom: u64) -> EquivalenceReport {
    let mut report = EquivalenceReport::default();
    let mut r = rng(seed);
    for &m in sizes {
        for _ in 0..count {
            let game = random_integer_game(m, m, range, &mut r);
            for mode in [SneMode::Strong, SneMode::Super] {
                compare(&game, mode, denom, &mut report);
            }
        }
    }
    report
}

//! Strong equilibrium search for bimatrix games and k-strong verification for
//! supplied profiles of n-player games.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::game::{expected_payoff, BimatrixGame, Cells, MixedProfile, NormalForm, PayoffVector};
use crate::geometry::{condition1, condition2, Block, Condition2};
use crate::nash::{enumerate_pure_nash, is_nash, nash_on_support, support_profiles, NashWitness};
use crate::pareto::{
    coalition_efficiency, two_coalition_exact_2x2, Coalition, EfficiencyVerdict, GridParams,
    ParetoMode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SneMode {
    /// Weakly Pareto efficient for every coalition.
    Strong,
    /// Strictly Pareto efficient for every coalition.
    Super,
}

impl SneMode {
    pub fn pareto(self) -> ParetoMode {
        match self {
            SneMode::Strong => ParetoMode::Weak,
            SneMode::Super => ParetoMode::Strict,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionVerdict {
    pub coalition: Coalition,
    pub verdict: EfficiencyVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Sne {
        witness: NashWitness,
        efficiency: Vec<CoalitionVerdict>,
    },
    NonExistence,
    /// Equilibria whose efficiency could not be settled; none was found efficient.
    Undetermined {
        candidates: Vec<(NashWitness, EfficiencyVerdict)>,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub pure_profiles_scanned: usize,
    pub pure_nash_found: usize,
    pub condition1: Option<Block>,
    pub condition2: Option<Condition2>,
    pub mixed_branch_run: bool,
    pub supports_enumerated: usize,
    pub elapsed: Duration,
}

impl Diagnostics {
    pub fn condition1_hit(&self) -> bool {
        self.condition1.is_some()
    }

    pub fn condition2_hit(&self) -> bool {
        self.condition2.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    pub diagnostics: Diagnostics,
}

impl SolveReport {
    pub fn witness(&self) -> Option<&NashWitness> {
        match &self.outcome {
            SolveOutcome::Sne { witness, .. } => Some(witness),
            _ => None,
        }
    }

    /// The equilibrium found uses a mixed strategy for some player.
    pub fn is_mixed_sne(&self) -> bool {
        self.witness()
            .is_some_and(|w| w.profile.as_pure().is_none())
    }
}

fn verdicts_for_bimatrix(
    game: &BimatrixGame,
    profile: &MixedProfile,
    mode: ParetoMode,
    params: &GridParams,
) -> Result<(EfficiencyVerdict, Vec<CoalitionVerdict>)> {
    let grand = coalition_efficiency(game, profile, &Coalition::grand(2), mode, params)?;
    let mut all = Vec::with_capacity(3);
    for c in Coalition::all_sized(2, 1, 1) {
        let verdict = coalition_efficiency(game, profile, &c, mode, params)?;
        all.push(CoalitionVerdict {
            coalition: c,
            verdict,
        });
    }
    all.push(CoalitionVerdict {
        coalition: Coalition::grand(2),
        verdict: grand.clone(),
    });
    Ok((grand, all))
}

/// Scans pure profiles, then (only if one of the geometric conditions holds)
/// supports by increasing size, returning the first equilibrium that is
/// efficient for the grand coalition in the requested sense.
pub fn find_sne(game: &BimatrixGame, mode: SneMode, params: &GridParams) -> Result<SolveReport> {
    let start = Instant::now();
    let pmode = mode.pareto();
    let mut diag = Diagnostics::default();
    let mut candidates = Vec::new();

    let finish = |outcome: SolveOutcome, mut diag: Diagnostics| {
        diag.elapsed = start.elapsed();
        Ok(SolveReport {
            outcome,
            diagnostics: diag,
        })
    };

    diag.pure_profiles_scanned = game.num_cells();
    let pure = enumerate_pure_nash(game);
    diag.pure_nash_found = pure.len();
    for actions in pure {
        let profile = MixedProfile::pure(game.dims(), &actions)?;
        let (grand, all) = verdicts_for_bimatrix(game, &profile, pmode, params)?;
        let witness = NashWitness {
            values: expected_payoff(game, &profile)?,
            support: profile.support(),
            profile,
        };
        match grand {
            EfficiencyVerdict::Efficient(_) => {
                return finish(
                    SolveOutcome::Sne {
                        witness,
                        efficiency: all,
                    },
                    diag,
                );
            }
            EfficiencyVerdict::Undetermined { .. } => candidates.push((witness, grand)),
            EfficiencyVerdict::Dominated { .. } => {}
        }
    }

    diag.condition1 = condition1(game);
    diag.condition2 = condition2(game);
    if diag.condition1.is_none() && diag.condition2.is_none() {
        let outcome = if candidates.is_empty() {
            SolveOutcome::NonExistence
        } else {
            SolveOutcome::Undetermined { candidates }
        };
        return finish(outcome, diag);
    }

    diag.mixed_branch_run = true;
    for support in support_profiles(game.dims()) {
        if support.is_pure() {
            continue;
        }
        diag.supports_enumerated += 1;
        let Some(witness) = nash_on_support(game, &support)? else {
            continue;
        };
        let (grand, all) = verdicts_for_bimatrix(game, &witness.profile, pmode, params)?;
        match grand {
            EfficiencyVerdict::Efficient(_) => {
                return finish(
                    SolveOutcome::Sne {
                        witness,
                        efficiency: all,
                    },
                    diag,
                );
            }
            EfficiencyVerdict::Undetermined { .. } => candidates.push((witness, grand)),
            EfficiencyVerdict::Dominated { .. } => {}
        }
    }
    let outcome = if candidates.is_empty() {
        SolveOutcome::NonExistence
    } else {
        SolveOutcome::Undetermined { candidates }
    };
    finish(outcome, diag)
}

#[derive(Debug, Clone)]
pub struct KStrongQuery<'a, G: ?Sized> {
    pub game: &'a G,
    pub profile: &'a MixedProfile,
    pub k: usize,
    pub mode: ParetoMode,
    pub grid: GridParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KStrongVerdict {
    Holds,
    Fails,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KStrongReport {
    pub is_nash: bool,
    pub values: PayoffVector,
    /// Verdicts for coalitions of size 2..=k; singletons are covered by the equilibrium test.
    pub coalitions: Vec<CoalitionVerdict>,
    pub overall: KStrongVerdict,
}

pub fn verify_k_strong<G: NormalForm + ?Sized>(
    query: &KStrongQuery<'_, G>,
) -> Result<KStrongReport> {
    let game = query.game;
    let n = game.num_players();
    if query.k == 0 || query.k > n {
        return Err(Error::Precondition(format!(
            "k must lie in 1..={n}, got {}",
            query.k
        )));
    }
    let values = expected_payoff(game, query.profile)?;
    let nash = is_nash(game, query.profile)?;
    let mut coalitions = Vec::new();
    for c in Coalition::all_sized(n, 2, query.k) {
        let exact_fits = c.len() == 2 && c.members().iter().all(|&m| game.dims()[m] == 2);
        let mut verdict = if exact_fits {
            two_coalition_exact_2x2(game, query.profile, &c, query.mode)?
        } else {
            coalition_efficiency(game, query.profile, &c, query.mode, &query.grid)?
        };
        if exact_fits && matches!(verdict, EfficiencyVerdict::Undetermined { .. }) {
            verdict = coalition_efficiency(game, query.profile, &c, query.mode, &query.grid)?;
        }
        coalitions.push(CoalitionVerdict {
            coalition: c,
            verdict,
        });
    }
    let overall = if !nash || coalitions.iter().any(|c| c.verdict.is_dominated()) {
        KStrongVerdict::Fails
    } else if coalitions.iter().all(|c| c.verdict.is_efficient()) {
        KStrongVerdict::Holds
    } else {
        KStrongVerdict::Undetermined
    };
    Ok(KStrongReport {
        is_nash: nash,
        values,
        coalitions,
        overall,
    })
}

/// First pure outcome inside the profile's support whose payoff is strictly
/// below the profile's value for every player.
pub fn dominated_outcome_witness<G: NormalForm + ?Sized>(
    game: &G,
    profile: &MixedProfile,
) -> Result<Option<(Vec<usize>, PayoffVector)>> {
    let values = expected_payoff(game, profile)?;
    let support = profile.support();
    let sub_dims: Vec<usize> = support.sets().iter().map(Vec::len).collect();
    for sub in Cells::new(&sub_dims) {
        let cell: Vec<usize> = sub.iter().zip(support.sets()).map(|(&k, s)| s[k]).collect();
        let payoff = PayoffVector(
            (0..game.num_players())
                .map(|p| game.payoff(p, &cell).clone())
                .collect(),
        );
        if values.strictly_dominates(&payoff) {
            return Ok(Some((cell, payoff)));
        }
    }
    Ok(None)
}

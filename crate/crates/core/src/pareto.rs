//! Pareto efficiency of a profile for a coalition whose members deviate with
//! independent mixed strategies while everybody else stays put.
//!
//! Decisions go through tiers: a scan of pure joint deviations, exact
//! certificates (singletons, collinear outcomes, a convex-hull LP, and exact
//! semialgebraic tests for small coalitions), then a grid search. `Efficient`
//! and `Dominated` are always exact; `Undetermined` is returned only when no
//! tier settles the question.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{expected_payoff, BimatrixGame, Cells, MixedProfile, NormalForm, PayoffVector};
use crate::geometry::classify_points;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::rational::{int, Rational};
use crate::semialgebraic::{decide, Feasibility, Inequality, Multilinear};

/// Which Pareto efficiency is being asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParetoMode {
    /// Weak efficiency: no deviation improves every member (`>>`).
    Weak,
    /// Strict efficiency: no deviation improves someone without hurting any member (`>`).
    Strict,
}

impl ParetoMode {
    /// Whether `candidate` dominates `base` in the sense that refutes this efficiency.
    pub fn dominates(self, candidate: &[Rational], base: &[Rational]) -> bool {
        let pairs = || candidate.iter().zip(base);
        match self {
            ParetoMode::Weak => pairs().all(|(a, b)| a > b),
            ParetoMode::Strict => pairs().all(|(a, b)| a >= b) && pairs().any(|(a, b)| a > b),
        }
    }
}

/// Sorted, nonempty set of player indices (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition(Vec<usize>);

impl Coalition {
    pub fn new(mut members: Vec<usize>, num_players: usize) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::InvalidCoalition("empty coalition".into()));
        }
        if let Some(&bad) = members.iter().find(|&&m| m >= num_players) {
            return Err(Error::InvalidCoalition(format!(
                "player {} does not exist in a {num_players}-player game",
                bad + 1
            )));
        }
        Ok(Coalition(members))
    }

    pub fn grand(num_players: usize) -> Self {
        Coalition((0..num_players).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every coalition with `min..=max` members, by size and then lexicographically.
    pub fn all_sized(num_players: usize, min: usize, max: usize) -> Vec<Coalition> {
        let mut out = Vec::new();
        for size in min.max(1)..=max.min(num_players) {
            let mut combo: Vec<usize> = (0..size).collect();
            loop {
                out.push(Coalition(combo.clone()));
                let Some(k) = (0..size).rev().find(|&k| combo[k] < num_players - size + k) else {
                    break;
                };
                combo[k] += 1;
                for l in k + 1..size {
                    combo[l] = combo[l - 1] + 1;
                }
            }
        }
        out
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.0.iter().map(|m| (m + 1).to_string()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    Hull,
    CollinearSlope,
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EfficiencyVerdict {
    Efficient(CertificateKind),
    Dominated {
        witness: MixedProfile,
        values: PayoffVector,
    },
    /// `best_margin` is the largest uniform gain over the queried values inside the
    /// convex hull of pure deviation outcomes (positive, else a certificate would exist).
    Undetermined {
        best_margin: Rational,
        resolution: Rational,
    },
}

impl EfficiencyVerdict {
    pub fn is_efficient(&self) -> bool {
        matches!(self, EfficiencyVerdict::Efficient(_))
    }

    pub fn is_dominated(&self) -> bool {
        matches!(self, EfficiencyVerdict::Dominated { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridParams {
    /// Initial grid step `1/D`.
    pub resolution: Rational,
    /// Number of times the step is halved after an unsuccessful pass.
    pub max_refinements: u32,
    /// Passes that would visit more grid points than this are skipped.
    pub max_points: u64,
}

impl Default for GridParams {
    fn default() -> Self {
        GridParams {
            resolution: Rational::new(1.into(), 32.into()),
            max_refinements: 3,
            max_points: 200_000,
        }
    }
}

/// A game with the players outside a coalition frozen at a profile.
struct Deviation<'a, G: ?Sized> {
    game: &'a G,
    base: &'a MixedProfile,
    members: &'a [usize],
}

impl<G: NormalForm + ?Sized> Deviation<'_, G> {
    fn member_dims(&self) -> Vec<usize> {
        self.members.iter().map(|&m| self.game.dims()[m]).collect()
    }

    fn profile(&self, mixes: &[Vec<Rational>]) -> MixedProfile {
        let mut strategies = self.base.strategies().to_vec();
        for (&m, x) in self.members.iter().zip(mixes) {
            strategies[m] = x.clone();
        }
        MixedProfile::new(strategies).expect("valid member mixes")
    }

    fn pure_mixes(&self, actions: &[usize]) -> Vec<Vec<Rational>> {
        actions
            .iter()
            .zip(self.member_dims())
            .map(|(&a, m)| {
                let mut x = vec![Rational::zero(); m];
                x[a] = Rational::one();
                x
            })
            .collect()
    }

    fn evaluate(&self, profile: &MixedProfile) -> (PayoffVector, Vec<Rational>) {
        let full = expected_payoff(self.game, profile).expect("dims checked");
        let own = self.members.iter().map(|&m| full[m].clone()).collect();
        (full, own)
    }

    fn target(&self, values: &PayoffVector) -> Vec<Rational> {
        self.members.iter().map(|&m| values[m].clone()).collect()
    }

    /// Member payoffs for every pure joint deviation, in lexicographic order.
    fn pure_outcomes(&self) -> Vec<(Vec<usize>, Vec<Rational>)> {
        Cells::new(&self.member_dims())
            .map(|actions| {
                let p = self.profile(&self.pure_mixes(&actions));
                let (_, own) = self.evaluate(&p);
                (actions, own)
            })
            .collect()
    }

    fn dominated(
        &self,
        profile: MixedProfile,
        values: &PayoffVector,
        mode: ParetoMode,
    ) -> Option<EfficiencyVerdict> {
        let (full, own) = self.evaluate(&profile);
        mode.dominates(&own, &self.target(values))
            .then_some(EfficiencyVerdict::Dominated {
                witness: profile,
                values: full,
            })
    }
}

fn check_inputs<G: NormalForm + ?Sized>(
    game: &G,
    profile: &MixedProfile,
    coalition: &Coalition,
) -> Result<()> {
    profile.check_dims(game.dims())?;
    if coalition.members().iter().any(|&m| m >= game.num_players()) {
        return Err(Error::InvalidCoalition(format!(
            "coalition {coalition} does not fit a {}-player game",
            game.num_players()
        )));
    }
    Ok(())
}

/// First pure joint deviation of the coalition, others fixed at `fixed`, whose
/// member payoffs refute efficiency of `values` in `mode`.
pub fn pure_domination_scan<G: NormalForm + ?Sized>(
    game: &G,
    values: &PayoffVector,
    coalition: &Coalition,
    fixed: &MixedProfile,
    mode: ParetoMode,
) -> Result<Option<MixedProfile>> {
    check_inputs(game, fixed, coalition)?;
    let dev = Deviation {
        game,
        base: fixed,
        members: coalition.members(),
    };
    let target = dev.target(values);
    Ok(dev
        .pure_outcomes()
        .into_iter()
        .find(|(_, own)| mode.dominates(own, &target))
        .map(|(actions, _)| dev.profile(&dev.pure_mixes(&actions))))
}

/// Largest `t` with `values + t·1` weakly below a convex combination of `points`
/// (weak mode), or largest total excess over `values` of a combination that is
/// nowhere below them (strict mode). The values are certified efficient iff the
/// margin is `≤ 0` (weak) or `= 0` (strict).
fn hull_margin(
    points: &[Vec<Rational>],
    values: &[Rational],
    mode: ParetoMode,
) -> Option<Rational> {
    let n = points.len();
    let dim = values.len();
    let ones: Vec<(usize, Rational)> = (0..n).map(|k| (k, Rational::one())).collect();
    let mut lp;
    match mode {
        ParetoMode::Weak => {
            let t = n;
            lp = LinearProgram::new(n + 1);
            lp.set_free(t);
            for i in 0..dim {
                let mut terms: Vec<(usize, Rational)> = points
                    .iter()
                    .enumerate()
                    .map(|(k, p)| (k, p[i].clone()))
                    .collect();
                terms.push((t, -Rational::one()));
                lp.constrain_terms(&terms, Relation::Ge, values[i].clone());
            }
            lp.constrain_terms(&ones, Relation::Eq, Rational::one());
            let mut obj = vec![Rational::zero(); n + 1];
            obj[t] = Rational::one();
            lp.maximize(obj);
        }
        ParetoMode::Strict => {
            lp = LinearProgram::new(n);
            for i in 0..dim {
                let terms: Vec<(usize, Rational)> = points
                    .iter()
                    .enumerate()
                    .map(|(k, p)| (k, p[i].clone()))
                    .collect();
                lp.constrain_terms(&terms, Relation::Ge, values[i].clone());
            }
            lp.constrain_terms(&ones, Relation::Eq, Rational::one());
            lp.maximize(points.iter().map(|p| p.iter().sum()).collect());
        }
    }
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => Some(match mode {
            ParetoMode::Weak => value,
            ParetoMode::Strict => value - values.iter().sum::<Rational>(),
        }),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("convex hull is bounded"),
    }
}

fn hull_certifies(margin: &Option<Rational>, mode: ParetoMode) -> bool {
    match (margin, mode) {
        (None, _) => true,
        (Some(m), ParetoMode::Weak) => !m.is_positive(),
        (Some(m), ParetoMode::Strict) => m.is_zero(),
    }
}

/// No point of the convex hull of the outcome pairs dominates `values`.
/// `true` certifies efficiency; `false` proves nothing on its own.
pub fn hull_efficiency_certificate(
    game: &BimatrixGame,
    values: &PayoffVector,
    mode: ParetoMode,
) -> bool {
    let points: Vec<Vec<Rational>> = Cells::new(game.dims())
        .map(|c| vec![game.u1()[c[0]][c[1]].clone(), game.u2()[c[0]][c[1]].clone()])
        .collect();
    hull_certifies(&hull_margin(&points, &values.0, mode), mode)
}

fn binomial_capped(n: u64, k: u64, cap: u64) -> u64 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(cap) {
            return cap + 1;
        }
    }
    acc as u64
}

/// Probability vectors with entries in multiples of `1/d`, lexicographic in the numerators.
fn grid_simplex(m: usize, d: u64) -> Vec<Vec<Rational>> {
    fn rec(m: usize, left: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if prefix.len() + 1 == m {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            rec(m, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    rec(m, d, &mut Vec::new(), &mut raw);
    let dd = int(d as i64);
    raw.into_iter()
        .map(|ks| ks.into_iter().map(|k| int(k as i64) / &dd).collect())
        .collect()
}

/// Exhaustive search over product mixes of the coalition with probabilities on the
/// `resolution` grid, halving the step up to `max_refinements` times.
pub fn grid_domination_search<G: NormalForm + ?Sized>(
    game: &G,
    values: &PayoffVector,
    coalition: &Coalition,
    fixed: &MixedProfile,
    mode: ParetoMode,
    params: &GridParams,
) -> Result<Option<MixedProfile>> {
    Ok(grid_search(game, values, coalition, fixed, mode, params)?.0)
}

fn grid_search<G: NormalForm + ?Sized>(
    game: &G,
    values: &PayoffVector,
    coalition: &Coalition,
    fixed: &MixedProfile,
    mode: ParetoMode,
    params: &GridParams,
) -> Result<(Option<MixedProfile>, Rational)> {
    check_inputs(game, fixed, coalition)?;
    if !params.resolution.is_positive() || !params.resolution.numer().is_one() {
        return Err(Error::Precondition(
            "grid resolution must be 1/D for a positive integer D".into(),
        ));
    }
    let dev = Deviation {
        game,
        base: fixed,
        members: coalition.members(),
    };
    let target = dev.target(values);
    let dims = dev.member_dims();
    let mut d: u64 = params
        .resolution
        .denom()
        .try_into()
        .map_err(|_| Error::Precondition("grid resolution denominator too large".into()))?;
    let mut reached = params.resolution.clone();
    for _ in 0..=params.max_refinements {
        let total = dims.iter().try_fold(1u64, |acc, &m| {
            let c = binomial_capped(d + m as u64 - 1, m as u64 - 1, params.max_points);
            acc.checked_mul(c).filter(|&t| t <= params.max_points)
        });
        if total.is_none() {
            break;
        }
        reached = Rational::new(1.into(), d.into());
        let grids: Vec<Vec<Vec<Rational>>> = dims.iter().map(|&m| grid_simplex(m, d)).collect();
        let sizes: Vec<usize> = grids.iter().map(Vec::len).collect();
        for idx in Cells::new(&sizes) {
            let mixes: Vec<Vec<Rational>> =
                idx.iter().zip(&grids).map(|(&k, g)| g[k].clone()).collect();
            let p = dev.profile(&mixes);
            let (_, own) = dev.evaluate(&p);
            if mode.dominates(&own, &target) {
                return Ok((Some(p), reached));
            }
        }
        d *= 2;
    }
    Ok((None, reached))
}

/// Exact decision for a coalition of at most three members that each use at most
/// two actions; `choices[k]` lists the actions member `k` may mix over.
fn exact_block<G: NormalForm + ?Sized>(
    dev: &Deviation<'_, G>,
    choices: &[Vec<usize>],
    target: &[Rational],
    mode: ParetoMode,
) -> Feasibility {
    let var_members: Vec<usize> = (0..choices.len())
        .filter(|&k| choices[k].len() == 2)
        .collect();
    let nvars = var_members.len();
    // Corner `mask`: member var_members[b] plays its second action iff bit b is set.
    let mut corner_values: Vec<Vec<Rational>> = vec![Vec::with_capacity(1 << nvars); target.len()];
    for mask in 0..(1usize << nvars) {
        let actions: Vec<usize> = choices
            .iter()
            .enumerate()
            .map(|(k, acts)| match var_members.iter().position(|&v| v == k) {
                Some(b) => acts[(mask >> b) & 1],
                None => acts[0],
            })
            .collect();
        let (_, own) = dev.evaluate(&dev.profile(&dev.pure_mixes(&actions)));
        for (i, u) in own.into_iter().enumerate() {
            corner_values[i].push(u - &target[i]);
        }
    }
    let gains: Vec<Multilinear> = corner_values
        .into_iter()
        .map(|v| Multilinear::from_corners(nvars, v))
        .collect();
    let systems: Vec<Vec<Inequality>> = match mode {
        ParetoMode::Weak => vec![gains
            .iter()
            .map(|f| Inequality {
                f: f.clone(),
                strict: true,
            })
            .collect()],
        ParetoMode::Strict => (0..gains.len())
            .map(|k| {
                gains
                    .iter()
                    .enumerate()
                    .map(|(i, f)| Inequality {
                        f: f.clone(),
                        strict: i == k,
                    })
                    .collect()
            })
            .collect(),
    };
    let mut outcome = Feasibility::Infeasible;
    for system in &systems {
        match decide(nvars, system) {
            w @ Feasibility::Witness(_) => {
                let Feasibility::Witness(point) = &w else {
                    unreachable!()
                };
                // Translate the point back to per-member actions for the caller.
                let mut full = Vec::with_capacity(choices.len());
                let mut it = point.iter();
                for acts in choices {
                    if acts.len() == 2 {
                        full.push(it.next().unwrap().clone());
                    } else {
                        full.push(Rational::zero());
                    }
                }
                return Feasibility::Witness(full);
            }
            Feasibility::Unknown => outcome = Feasibility::Unknown,
            Feasibility::IrrationalOnly if outcome == Feasibility::Infeasible => {
                outcome = Feasibility::IrrationalOnly
            }
            _ => {}
        }
    }
    outcome
}

fn block_profile<G: NormalForm + ?Sized>(
    dev: &Deviation<'_, G>,
    choices: &[Vec<usize>],
    point: &[Rational],
) -> MixedProfile {
    let dims = dev.member_dims();
    let mixes: Vec<Vec<Rational>> = choices
        .iter()
        .zip(point)
        .zip(dims)
        .map(|((acts, w), m)| {
            let mut x = vec![Rational::zero(); m];
            if acts.len() == 2 {
                x[acts[0]] = Rational::one() - w;
                x[acts[1]] = w.clone();
            } else {
                x[acts[0]] = Rational::one();
            }
            x
        })
        .collect();
    dev.profile(&mixes)
}

fn pairs(m: usize) -> Vec<Vec<usize>> {
    if m == 1 {
        return vec![vec![0]];
    }
    (0..m)
        .flat_map(|a| ((a + 1)..m).map(move |b| vec![a, b]))
        .collect()
}

enum ExactOutcome {
    Decided(EfficiencyVerdict),
    Inconclusive,
}

/// Exact tier. Two-member coalitions reduce to supports of size at most two per
/// member: if some mix dominates, moving along `(1, 1)` inside the payoff polygon
/// of one member's mixes ends on an edge, which only uses two actions; repeat for
/// the other member. Three members with two actions each use the cube test directly.
fn exact_tier<G: NormalForm + ?Sized>(
    dev: &Deviation<'_, G>,
    values: &PayoffVector,
    mode: ParetoMode,
) -> ExactOutcome {
    let dims = dev.member_dims();
    let target = dev.target(values);
    let blocks: Vec<Vec<Vec<usize>>> = match dims.len() {
        2 => {
            let (a, b) = (pairs(dims[0]), pairs(dims[1]));
            let mut blocks: Vec<Vec<Vec<usize>>> = a
                .iter()
                .flat_map(|x| b.iter().map(move |y| vec![x.clone(), y.clone()]))
                .collect();
            blocks.sort_by_key(|blk| blk.iter().map(Vec::len).sum::<usize>());
            blocks
        }
        3 if dims.iter().all(|&m| m <= 2) => vec![dims.iter().map(|&m| (0..m).collect()).collect()],
        _ => return ExactOutcome::Inconclusive,
    };
    let mut inconclusive = false;
    for choices in &blocks {
        match exact_block(dev, choices, &target, mode) {
            Feasibility::Witness(point) => {
                let profile = block_profile(dev, choices, &point);
                let verdict = dev
                    .dominated(profile, values, mode)
                    .expect("semialgebraic witness re-verifies exactly");
                return ExactOutcome::Decided(verdict);
            }
            Feasibility::Infeasible => {}
            Feasibility::IrrationalOnly | Feasibility::Unknown => inconclusive = true,
        }
    }
    if inconclusive {
        ExactOutcome::Inconclusive
    } else {
        ExactOutcome::Decided(EfficiencyVerdict::Efficient(CertificateKind::Exhaustive))
    }
}

/// Tiered efficiency decision for `coalition` at `profile`.
pub fn coalition_efficiency<G: NormalForm + ?Sized>(
    game: &G,
    profile: &MixedProfile,
    coalition: &Coalition,
    mode: ParetoMode,
    params: &GridParams,
) -> Result<EfficiencyVerdict> {
    check_inputs(game, profile, coalition)?;
    let values = expected_payoff(game, profile)?;
    let dev = Deviation {
        game,
        base: profile,
        members: coalition.members(),
    };
    let target = dev.target(&values);

    let outcomes = dev.pure_outcomes();
    if let Some((actions, _)) = outcomes
        .iter()
        .find(|(_, own)| mode.dominates(own, &target))
    {
        let witness = dev.profile(&dev.pure_mixes(actions));
        return Ok(dev.dominated(witness, &values, mode).expect("scan hit"));
    }
    // A single member's payoff is linear in its own mix, so pure deviations suffice.
    if coalition.len() == 1 {
        return Ok(EfficiencyVerdict::Efficient(CertificateKind::Exhaustive));
    }
    let points: Vec<Vec<Rational>> = outcomes.into_iter().map(|(_, own)| own).collect();
    if coalition.len() == 2 {
        // Achievable pairs lie on the segment spanned by the pure outcomes; with no
        // pure outcome dominating, nothing on a common line can dominate either.
        let planar: Vec<(Rational, Rational)> = points
            .iter()
            .map(|p| (p[0].clone(), p[1].clone()))
            .collect();
        if classify_points(&planar).is_collinear() {
            return Ok(EfficiencyVerdict::Efficient(
                CertificateKind::CollinearSlope,
            ));
        }
    }
    let margin = hull_margin(&points, &target, mode);
    if hull_certifies(&margin, mode) {
        return Ok(EfficiencyVerdict::Efficient(CertificateKind::Hull));
    }
    if let ExactOutcome::Decided(v) = exact_tier(&dev, &values, mode) {
        return Ok(v);
    }
    let (hit, resolution) = grid_search(game, &values, coalition, profile, mode, params)?;
    if let Some(witness) = hit {
        return Ok(dev.dominated(witness, &values, mode).expect("grid hit"));
    }
    Ok(EfficiencyVerdict::Undetermined {
        best_margin: margin.unwrap_or_else(Rational::zero),
        resolution,
    })
}

/// Exact verdict for a two-member coalition whose members have two actions each.
pub fn two_coalition_exact_2x2<G: NormalForm + ?Sized>(
    game: &G,
    profile: &MixedProfile,
    coalition: &Coalition,
    mode: ParetoMode,
) -> Result<EfficiencyVerdict> {
    check_inputs(game, profile, coalition)?;
    if coalition.len() != 2 || coalition.members().iter().any(|&m| game.dims()[m] != 2) {
        return Err(Error::Precondition(
            "exact bilinear test needs two members with two actions each".into(),
        ));
    }
    let values = expected_payoff(game, profile)?;
    let dev = Deviation {
        game,
        base: profile,
        members: coalition.members(),
    };
    let choices = vec![vec![0, 1], vec![0, 1]];
    Ok(
        match exact_block(&dev, &choices, &dev.target(&values), mode) {
            Feasibility::Witness(point) => {
                let witness = block_profile(&dev, &choices, &point);
                dev.dominated(witness, &values, mode)
                    .expect("exact witness")
            }
            Feasibility::Infeasible => EfficiencyVerdict::Efficient(CertificateKind::Exhaustive),
            Feasibility::IrrationalOnly | Feasibility::Unknown => EfficiencyVerdict::Undetermined {
                best_margin: Rational::zero(),
                resolution: Rational::zero(),
            },
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::ratio;

    fn pv(xs: &[Rational]) -> PayoffVector {
        PayoffVector(xs.to_vec())
    }

    fn competitive_3x3_ne() -> MixedProfile {
        let x = vec![ratio(1, 2), ratio(1, 3), ratio(1, 6)];
        MixedProfile::new(vec![x.clone(), x]).unwrap()
    }

    #[test]
    fn coalitions() {
        assert_eq!(Coalition::new(vec![2, 0, 2], 3).unwrap().members(), &[0, 2]);
        assert!(Coalition::new(vec![], 3).is_err());
        assert!(Coalition::new(vec![3], 3).is_err());
        let all: Vec<String> = Coalition::all_sized(3, 2, 3)
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(all, ["{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]);
    }

    #[test]
    fn pure_scan() {
        let pd = catalog::prisoners_dilemma();
        let at = MixedProfile::pure(&[2, 2], &[1, 1]).unwrap();
        let hit = pure_domination_scan(
            &pd,
            &pv(&[int(1), int(1)]),
            &Coalition::grand(2),
            &at,
            ParetoMode::Weak,
        )
        .unwrap();
        assert_eq!(hit, Some(MixedProfile::pure(&[2, 2], &[0, 0]).unwrap()));

        let competitive_3x3 = catalog::competitive_3x3();
        let zero = pv(&[int(0), int(0)]);
        assert_eq!(
            pure_domination_scan(
                &competitive_3x3,
                &zero,
                &Coalition::grand(2),
                &competitive_3x3_ne(),
                ParetoMode::Weak
            )
            .unwrap(),
            None
        );

        let three_player_ring = catalog::three_player_ring();
        let half = ratio(1, 2);
        let uni = MixedProfile::uniform(three_player_ring.dims());
        let v = pv(&[half.clone(), half.clone(), half]);
        assert_eq!(
            pure_domination_scan(
                &three_player_ring,
                &v,
                &Coalition::grand(3),
                &uni,
                ParetoMode::Weak
            )
            .unwrap(),
            None
        );
    }

    #[test]
    fn hull_certificates() {
        let zero = pv(&[int(0), int(0)]);
        assert!(hull_efficiency_certificate(
            &catalog::competitive_3x3(),
            &zero,
            ParetoMode::Weak
        ));
        assert!(hull_efficiency_certificate(
            &catalog::competitive_3x3(),
            &zero,
            ParetoMode::Strict
        ));
        assert!(!hull_efficiency_certificate(
            &catalog::prisoners_dilemma(),
            &pv(&[int(1), int(1)]),
            ParetoMode::Weak
        ));
        let single = BimatrixGame::from_pairs(&[&[(0, 0)]]).unwrap();
        assert!(hull_efficiency_certificate(
            &single,
            &zero,
            ParetoMode::Strict
        ));
    }

    #[test]
    fn grid_search_examples() {
        let g = BimatrixGame::from_pairs(&[&[(1, 1), (3, 0)], &[(0, 3), (0, 0)]]).unwrap();
        let base = MixedProfile::pure(&[2, 2], &[0, 0]).unwrap();
        let params = GridParams {
            resolution: ratio(1, 4),
            max_refinements: 0,
            ..GridParams::default()
        };
        let w = grid_domination_search(
            &g,
            &pv(&[int(1), int(1)]),
            &Coalition::grand(2),
            &base,
            ParetoMode::Weak,
            &params,
        )
        .unwrap()
        .unwrap();
        let x = vec![ratio(3, 4), ratio(1, 4)];
        assert_eq!(w, MixedProfile::new(vec![x.clone(), x]).unwrap());
        assert_eq!(
            expected_payoff(&g, &w).unwrap(),
            pv(&[ratio(9, 8), ratio(9, 8)])
        );

        let competitive_3x3 = catalog::competitive_3x3();
        let zero = pv(&[int(0), int(0)]);
        let params = GridParams {
            resolution: ratio(1, 4),
            max_refinements: 1,
            ..GridParams::default()
        };
        assert_eq!(
            grid_domination_search(
                &competitive_3x3,
                &zero,
                &Coalition::grand(2),
                &competitive_3x3_ne(),
                ParetoMode::Weak,
                &params
            )
            .unwrap(),
            None
        );

        // Player 1's best-response value against column 1 of the prisoner's dilemma.
        let pd = catalog::prisoners_dilemma();
        let at = MixedProfile::pure(&[2, 2], &[1, 0]).unwrap();
        let v = expected_payoff(&pd, &at).unwrap();
        let solo = Coalition::new(vec![0], 2).unwrap();
        assert_eq!(
            grid_domination_search(
                &pd,
                &v,
                &solo,
                &at,
                ParetoMode::Strict,
                &GridParams::default()
            )
            .unwrap(),
            None
        );
    }

    #[test]
    fn verdicts_on_reference_games() {
        let params = GridParams::default();
        let pd = catalog::prisoners_dilemma();
        let at = MixedProfile::pure(&[2, 2], &[1, 1]).unwrap();
        match coalition_efficiency(&pd, &at, &Coalition::grand(2), ParetoMode::Weak, &params)
            .unwrap()
        {
            EfficiencyVerdict::Dominated { witness, values } => {
                assert_eq!(witness, MixedProfile::pure(&[2, 2], &[0, 0]).unwrap());
                assert_eq!(values, pv(&[int(3), int(3)]));
            }
            other => panic!("expected domination, got {other:?}"),
        }
        assert_eq!(
            coalition_efficiency(
                &catalog::competitive_3x3(),
                &competitive_3x3_ne(),
                &Coalition::grand(2),
                ParetoMode::Weak,
                &params
            )
            .unwrap(),
            EfficiencyVerdict::Efficient(CertificateKind::CollinearSlope)
        );
    }

    #[test]
    fn exact_tier_finds_interior_dominators() {
        // (1,1) is not dominated by any cell, and the hull contains (3/2, 3/2),
        // but the mixed outcome at p = q = 3/4 gives (9/8, 9/8).
        let g = BimatrixGame::from_pairs(&[&[(1, 1), (3, 0)], &[(0, 3), (0, 0)]]).unwrap();
        let at = MixedProfile::pure(&[2, 2], &[0, 0]).unwrap();
        let v = coalition_efficiency(
            &g,
            &at,
            &Coalition::grand(2),
            ParetoMode::Weak,
            &GridParams::default(),
        )
        .unwrap();
        assert!(v.is_dominated());
        // At the symmetric optimum the two gains move in opposite directions.
        let x = vec![ratio(3, 4), ratio(1, 4)];
        let p = MixedProfile::new(vec![x.clone(), x]).unwrap();
        let v = coalition_efficiency(
            &g,
            &p,
            &Coalition::grand(2),
            ParetoMode::Weak,
            &GridParams::default(),
        )
        .unwrap();
        assert!(v.is_efficient(), "{v:?}");
    }

    #[test]
    fn three_player_ring_two_coalitions_are_exactly_efficient() {
        let g = catalog::three_player_ring();
        let uni = MixedProfile::uniform(g.dims());
        for c in Coalition::all_sized(3, 2, 2) {
            for mode in [ParetoMode::Weak, ParetoMode::Strict] {
                assert_eq!(
                    two_coalition_exact_2x2(&g, &uni, &c, mode).unwrap(),
                    EfficiencyVerdict::Efficient(CertificateKind::Exhaustive),
                    "coalition {c} {mode:?}"
                );
            }
        }
    }

    #[test]
    fn three_player_ring_grand_coalition_is_exactly_efficient() {
        let g = catalog::three_player_ring();
        let uni = MixedProfile::uniform(g.dims());
        let v = coalition_efficiency(
            &g,
            &uni,
            &Coalition::grand(3),
            ParetoMode::Strict,
            &GridParams::default(),
        )
        .unwrap();
        assert_eq!(v, EfficiencyVerdict::Efficient(CertificateKind::Exhaustive));
    }

    #[test]
    fn exact_2x2_with_constant_payoffs() {
        let payoffs = vec![vec![int(2); 8], vec![int(3); 8], vec![int(0); 8]];
        let g = crate::game::TensorGame::new(vec![2, 2, 2], payoffs).unwrap();
        let p = MixedProfile::uniform(g.dims());
        let c = Coalition::new(vec![0, 1], 3).unwrap();
        assert!(two_coalition_exact_2x2(&g, &p, &c, ParetoMode::Weak)
            .unwrap()
            .is_efficient());
        assert!(two_coalition_exact_2x2(
            &catalog::competitive_3x3(),
            &competitive_3x3_ne(),
            &Coalition::grand(2),
            ParetoMode::Weak
        )
        .is_err());
    }
}

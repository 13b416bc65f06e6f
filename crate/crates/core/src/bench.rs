//! Random and perturbed game generation, the smoothed-runtime benchmark and
//! the genericity experiments.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{
    find_sne, verify_k_strong, KStrongQuery, KStrongVerdict, SneMode, SolveOutcome,
};
use crate::error::{Error, Result};
use crate::game::{BimatrixGame, Game, MixedProfile, NormalForm, TensorGame};
use crate::nash::enumerate_pure_nash;
use crate::pareto::{GridParams, ParetoMode};
use crate::rational::{int, ratio, Rational, Surd};
use crate::semialgebraic::{quadratic_roots, Multilinear};

const BASE_STREAM: u64 = 0;
const PERTURB_STREAM: u64 = 1;
const BASE_RANGE: i64 = 10;

/// Uniform perturbation on the grid `{k/D : |k/D| ≤ σ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbSpec {
    pub sigma: Rational,
    pub grain: u64,
    pub seed: u64,
}

impl PerturbSpec {
    pub fn new(sigma: Rational, grain: u64, seed: u64) -> Result<Self> {
        if !sigma.is_positive() {
            return Err(Error::Precondition(format!(
                "sigma must be positive, got {sigma}"
            )));
        }
        if grain == 0 {
            return Err(Error::Precondition("grain must be at least 1".into()));
        }
        Ok(PerturbSpec { sigma, grain, seed })
    }

    /// Largest `k` with `k/D ≤ σ`.
    pub fn max_step(&self) -> i64 {
        (&self.sigma * Rational::from_integer(BigInt::from(self.grain)))
            .floor()
            .to_integer()
            .to_i64()
            .unwrap_or(i64::MAX / 2)
    }

    /// Same spec with the seed used for trial `index`.
    pub fn for_trial(&self, index: u64) -> PerturbSpec {
        PerturbSpec {
            seed: self.seed ^ index,
            ..self.clone()
        }
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

struct Perturber {
    rng: ChaCha8Rng,
    max_step: i64,
    grain: Rational,
}

impl Perturber {
    fn new(spec: &PerturbSpec) -> Self {
        Perturber {
            rng: rng(spec.seed, PERTURB_STREAM),
            max_step: spec.max_step(),
            grain: Rational::from_integer(BigInt::from(spec.grain)),
        }
    }

    fn apply(&mut self, entry: &Rational) -> Rational {
        if self.max_step == 0 {
            return entry.clone();
        }
        let k = self.rng.gen_range(-self.max_step..=self.max_step);
        entry + Rational::from_integer(BigInt::from(k)) / &self.grain
    }
}

/// Adds an independent draw to every entry, `u1` row-major first, then `u2`.
pub fn perturb(game: &BimatrixGame, spec: &PerturbSpec) -> BimatrixGame {
    let mut p = Perturber::new(spec);
    let mut shift = |m: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        m.iter()
            .map(|row| row.iter().map(|x| p.apply(x)).collect())
            .collect()
    };
    let u1 = shift(game.u1());
    let u2 = shift(game.u2());
    BimatrixGame::new(u1, u2).expect("perturbation preserves shape")
}

/// Same as [`perturb`] for an n-player game, player by player in cell order.
pub fn perturb_tensor(game: &TensorGame, spec: &PerturbSpec) -> TensorGame {
    let mut p = Perturber::new(spec);
    let payoffs = (0..game.num_players())
        .map(|i| game.tensor(i).iter().map(|x| p.apply(x)).collect())
        .collect();
    TensorGame::new(game.dims().to_vec(), payoffs).expect("perturbation preserves shape")
}

fn random_entries(r: &mut ChaCha8Rng, count: usize) -> Vec<Rational> {
    (0..count)
        .map(|_| int(r.gen_range(-BASE_RANGE..=BASE_RANGE)))
        .collect()
}

/// Integer entries uniform in `[-10, 10]`.
pub fn random_bimatrix(m1: usize, m2: usize, seed: u64) -> BimatrixGame {
    let mut r = rng(seed, BASE_STREAM);
    let matrix = |r: &mut ChaCha8Rng| -> Vec<Vec<Rational>> {
        (0..m1).map(|_| random_entries(r, m2)).collect()
    };
    let u1 = matrix(&mut r);
    let u2 = matrix(&mut r);
    BimatrixGame::new(u1, u2).expect("valid dimensions")
}

pub fn random_tensor(dims: &[usize], seed: u64) -> TensorGame {
    let mut r = rng(seed, BASE_STREAM);
    let cells: usize = dims.iter().product();
    let payoffs = (0..dims.len())
        .map(|_| random_entries(&mut r, cells))
        .collect();
    TensorGame::new(dims.to_vec(), payoffs).expect("valid dimensions")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BenchBase {
    /// Fresh random integer game per trial.
    Random,
    Zero,
    /// A fixed game; its own dimensions replace the requested sizes.
    Game(BimatrixGame),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SizeRecord {
    pub m1: usize,
    pub m2: usize,
    pub trials: usize,
    pub mean_us: f64,
    pub median_us: f64,
    pub max_us: f64,
    pub pure_sne: usize,
    pub mixed_sne: usize,
    pub nonexistence: usize,
    pub undetermined: usize,
    pub cond1_hits: usize,
    pub cond2_hits: usize,
    pub mixed_branch_runs: usize,
    /// Per-trial solve times in microseconds, in trial order.
    pub timings_us: Vec<f64>,
}

/// A trial in which a geometric condition fired or a mixed equilibrium came back.
#[derive(Debug, Clone, PartialEq)]
pub struct Anomaly {
    pub m1: usize,
    pub m2: usize,
    pub trial: usize,
    pub seed: u64,
    pub game: BimatrixGame,
    pub condition1: bool,
    pub condition2: bool,
    pub mixed_sne: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchStats {
    pub records: Vec<SizeRecord>,
    pub anomalies: Vec<Anomaly>,
}

pub const CSV_HEADER: &str =
    "m1,m2,trials,mean_us,median_us,max_us,pure_sne,mixed_sne,nonexistence,undetermined,cond1_hits,cond2_hits,mixed_branch_runs";

impl BenchStats {
    /// Without timing the three time columns are left empty, which makes the
    /// output a pure function of the seed, spec and sizes.
    pub fn to_csv(&self, include_timing: bool) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            let times = if include_timing {
                format!("{:.3},{:.3},{:.3}", r.mean_us, r.median_us, r.max_us)
            } else {
                ",,".to_string()
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.m1,
                r.m2,
                r.trials,
                times,
                r.pure_sne,
                r.mixed_sne,
                r.nonexistence,
                r.undetermined,
                r.cond1_hits,
                r.cond2_hits,
                r.mixed_branch_runs
            );
        }
        out
    }

    pub fn total_condition_hits(&self) -> usize {
        self.records
            .iter()
            .map(|r| r.cond1_hits + r.cond2_hits)
            .sum()
    }

    pub fn total_mixed_branch_runs(&self) -> usize {
        self.records.iter().map(|r| r.mixed_branch_runs).sum()
    }
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        0.0
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Runs `find_sne` in strong mode on `trials` perturbed games per size.
/// Trial `t` overall (counting across sizes) uses seed `spec.seed ^ t`.
pub fn run_smoothed_bench(
    sizes: &[(usize, usize)],
    trials: usize,
    spec: &PerturbSpec,
    base: &BenchBase,
) -> Result<BenchStats> {
    if trials == 0 {
        return Err(Error::Precondition("at least one trial is required".into()));
    }
    let sizes: Vec<(usize, usize)> = match base {
        BenchBase::Game(g) => vec![(g.rows(), g.cols())],
        _ => sizes.to_vec(),
    };
    let params = GridParams::default();
    let mut records = Vec::with_capacity(sizes.len());
    let mut anomalies = Vec::new();
    for (si, &(m1, m2)) in sizes.iter().enumerate() {
        let mut rec = SizeRecord {
            m1,
            m2,
            trials,
            mean_us: 0.0,
            median_us: 0.0,
            max_us: 0.0,
            pure_sne: 0,
            mixed_sne: 0,
            nonexistence: 0,
            undetermined: 0,
            cond1_hits: 0,
            cond2_hits: 0,
            mixed_branch_runs: 0,
            timings_us: Vec::with_capacity(trials),
        };
        for t in 0..trials {
            let index = (si * trials + t) as u64;
            let trial_spec = spec.for_trial(index);
            let base_game = match base {
                BenchBase::Random => random_bimatrix(m1, m2, trial_spec.seed),
                BenchBase::Zero => BimatrixGame::new(
                    vec![vec![Rational::zero(); m2]; m1],
                    vec![vec![Rational::zero(); m2]; m1],
                )?,
                BenchBase::Game(g) => g.clone(),
            };
            let game = perturb(&base_game, &trial_spec);
            let start = Instant::now();
            let report = find_sne(&game, SneMode::Strong, &params)?;
            rec.timings_us.push(start.elapsed().as_secs_f64() * 1e6);

            let d = &report.diagnostics;
            let mixed = report.is_mixed_sne();
            match &report.outcome {
                SolveOutcome::Sne { .. } if mixed => rec.mixed_sne += 1,
                SolveOutcome::Sne { .. } => rec.pure_sne += 1,
                SolveOutcome::NonExistence => rec.nonexistence += 1,
                SolveOutcome::Undetermined { .. } => rec.undetermined += 1,
            }
            rec.cond1_hits += usize::from(d.condition1_hit());
            rec.cond2_hits += usize::from(d.condition2_hit());
            rec.mixed_branch_runs += usize::from(d.mixed_branch_run);
            if d.condition1_hit() || d.condition2_hit() || mixed {
                anomalies.push(Anomaly {
                    m1,
                    m2,
                    trial: t,
                    seed: trial_spec.seed,
                    game,
                    condition1: d.condition1_hit(),
                    condition2: d.condition2_hit(),
                    mixed_sne: mixed,
                });
            }
        }
        let n = rec.timings_us.len() as f64;
        rec.mean_us = rec.timings_us.iter().sum::<f64>() / n;
        rec.median_us = median(&rec.timings_us);
        rec.max_us = rec.timings_us.iter().copied().fold(0.0, f64::max);
        records.push(rec);
    }
    Ok(BenchStats { records, anomalies })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyFit {
    /// Ascending coefficients in the original `x`.
    pub coeffs: Vec<f64>,
    /// `‖y − ŷ‖ / ‖y‖`.
    pub relative_residual: f64,
}

impl PolyFit {
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

/// Least-squares polynomial of the given degree through `(xs, ys)`.
pub fn fit_polynomial(xs: &[f64], ys: &[f64], degree: usize) -> Option<PolyFit> {
    let k = degree + 1;
    if xs.len() != ys.len() || xs.len() < k {
        return None;
    }
    let scale = xs.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    // Normal equations in the scaled variable x/scale.
    let mut a = vec![vec![0.0; k + 1]; k];
    for (&x, &y) in xs.iter().zip(ys) {
        let powers: Vec<f64> = (0..k).map(|p| (x / scale).powi(p as i32)).collect();
        for r in 0..k {
            for c in 0..k {
                a[r][c] += powers[r] * powers[c];
            }
            a[r][k] += powers[r] * y;
        }
    }
    for col in 0..k {
        let pivot = (col..k).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        for r in 0..k {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..=k {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    let coeffs: Vec<f64> = (0..k)
        .map(|i| a[i][k] / a[i][i] / scale.powi(i as i32))
        .collect();
    let mut fit = PolyFit {
        coeffs,
        relative_residual: 0.0,
    };
    let res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| (y - fit.eval(x)).powi(2))
        .sum();
    let norm: f64 = ys.iter().map(|y| y * y).sum();
    fit.relative_residual = if norm > 0.0 {
        (res / norm).sqrt()
    } else {
        res.sqrt()
    };
    Some(fit)
}

/// What the search found in one game.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialClass {
    /// Some equilibrium found uses a mixed strategy.
    Mixed,
    Pure,
    None,
    /// A candidate could not be settled.
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericitySummary {
    pub players: usize,
    pub dims: Vec<usize>,
    pub trials: usize,
    pub pure: usize,
    pub mixed: usize,
    pub none: usize,
    pub unresolved: usize,
    /// Games with a mixed hit, kept for audit.
    pub mixed_games: Vec<Game>,
}

impl GenericitySummary {
    fn empty(dims: &[usize]) -> Self {
        GenericitySummary {
            players: dims.len(),
            dims: dims.to_vec(),
            trials: 0,
            pure: 0,
            mixed: 0,
            none: 0,
            unresolved: 0,
            mixed_games: Vec::new(),
        }
    }

    fn record(&mut self, game: &Game, class: TrialClass) {
        self.trials += 1;
        match class {
            TrialClass::Mixed => {
                self.mixed += 1;
                self.mixed_games.push(game.clone());
            }
            TrialClass::Pure => self.pure += 1,
            TrialClass::None => self.none += 1,
            TrialClass::Unresolved => self.unresolved += 1,
        }
    }

    pub fn mixed_fraction(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.mixed as f64 / self.trials as f64
        }
    }
}

/// Two players: strong equilibria via `find_sne`. Three players with two
/// actions each: 2-strong equilibria among pure profiles and full-support
/// profiles solving the indifference equations.
pub fn classify_trial(game: &Game) -> Result<TrialClass> {
    match game {
        Game::Bimatrix(g) => {
            let report = find_sne(g, SneMode::Strong, &GridParams::default())?;
            Ok(match report.outcome {
                SolveOutcome::Sne { .. } if report.is_mixed_sne() => TrialClass::Mixed,
                SolveOutcome::Sne { .. } => TrialClass::Pure,
                SolveOutcome::NonExistence => TrialClass::None,
                SolveOutcome::Undetermined { .. } => TrialClass::Unresolved,
            })
        }
        Game::Tensor(t) if t.dims() == [2, 2, 2] => classify_three_player(t),
        Game::Tensor(t) => Err(Error::Precondition(format!(
            "genericity experiments support two players or three players with two actions each, got {:?}",
            t.dims()
        ))),
    }
}

fn two_strong(game: &TensorGame, profile: &MixedProfile) -> Result<KStrongVerdict> {
    let query = KStrongQuery {
        game,
        profile,
        k: 2,
        mode: ParetoMode::Weak,
        grid: GridParams::default(),
    };
    Ok(verify_k_strong(&query)?.overall)
}

fn classify_three_player(game: &TensorGame) -> Result<TrialClass> {
    let mut pure = false;
    let mut unresolved = false;
    for cell in enumerate_pure_nash(game) {
        let profile = MixedProfile::pure(game.dims(), &cell)?;
        match two_strong(game, &profile)? {
            KStrongVerdict::Holds => pure = true,
            KStrongVerdict::Undetermined => unresolved = true,
            KStrongVerdict::Fails => {}
        }
    }
    let (candidates, degenerate) = full_support_candidates(game);
    unresolved |= degenerate;
    for candidate in candidates {
        match candidate {
            Candidate::Rational(p) => {
                let profile = MixedProfile::new(
                    p.iter()
                        .map(|x| vec![x.clone(), Rational::one() - x])
                        .collect(),
                )?;
                match two_strong(game, &profile)? {
                    KStrongVerdict::Holds => return Ok(TrialClass::Mixed),
                    KStrongVerdict::Undetermined => unresolved = true,
                    KStrongVerdict::Fails => {}
                }
            }
            Candidate::Irrational(p) => {
                if !pair_deviation_refutes(game, &p) {
                    unresolved = true;
                }
            }
        }
    }
    Ok(if pure {
        TrialClass::Pure
    } else if unresolved {
        TrialClass::Unresolved
    } else {
        TrialClass::None
    })
}

/// Fully mixed equilibrium of a 2×2×2 game; `p[i]` is player `i`'s probability of their first action.
#[derive(Debug, Clone, PartialEq)]
enum Candidate {
    Rational([Rational; 3]),
    Irrational([Surd; 3]),
}

/// Player `i`'s payoff as a multilinear function of `(p0, p1, p2)`.
fn payoff_polynomial(game: &TensorGame, i: usize) -> Multilinear {
    let values = (0..8usize)
        .map(|mask| {
            let cell: Vec<usize> = (0..3).map(|k| usize::from(mask & (1 << k) == 0)).collect();
            game.payoff(i, &cell).clone()
        })
        .collect();
    Multilinear::from_corners(3, values)
}

/// Gain of player `i` from their first action over their second, as
/// `[c0, c_a, c_b, c_ab]` in the other two probabilities (in player order).
fn indifference(game: &TensorGame, i: usize) -> [Rational; 4] {
    let others: Vec<usize> = (0..3).filter(|&k| k != i).collect();
    let values: Vec<Rational> = (0..4usize)
        .map(|mask| {
            let mut cell = vec![0usize; 3];
            for (bit, &k) in others.iter().enumerate() {
                cell[k] = usize::from(mask & (1 << bit) == 0);
            }
            let first = game.payoff(i, &cell).clone();
            cell[i] = 1;
            first - game.payoff(i, &cell)
        })
        .collect();
    let c = Multilinear::from_corners(2, values).coeffs().to_vec();
    [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]
}

type Linear = [Rational; 2];

fn lin_mul(x: &Linear, y: &Linear) -> [Rational; 3] {
    [&x[0] * &y[0], &x[0] * &y[1] + &x[1] * &y[0], &x[1] * &y[1]]
}

fn lin_eval<F: crate::rational::OrderedField>(x: &Linear, t: &F) -> F {
    F::from_rational(x[0].clone()) + F::from_rational(x[1].clone()) * t.clone()
}

/// Solves the indifference equations by eliminating `p0` and `p1` in favour of `p2`.
/// The flag reports a degenerate elimination that was not explored.
fn full_support_candidates(game: &TensorGame) -> (Vec<Candidate>, bool) {
    let [c0, c1, c2, c3] = indifference(game, 0); // in (p1, p2)
    let [d0, d1, d2, d3] = indifference(game, 1); // in (p0, p2)
    let [e0, e1, e2, e3] = indifference(game, 2); // in (p0, p1)
                                                  // p1 = N1/E1, p0 = N0/E0 as functions of p2.
    let n1: Linear = [-c0, -c2];
    let den1: Linear = [c1, c3];
    let n0: Linear = [-d0, -d2];
    let den0: Linear = [d1, d3];
    if den0.iter().all(Zero::is_zero) || den1.iter().all(Zero::is_zero) {
        return (Vec::new(), true);
    }
    let terms = [
        (e0, lin_mul(&den0, &den1)),
        (e1, lin_mul(&n0, &den1)),
        (e2, lin_mul(&den0, &n1)),
        (e3, lin_mul(&n0, &n1)),
    ];
    let mut q = [Rational::zero(), Rational::zero(), Rational::zero()];
    for (w, t) in &terms {
        for k in 0..3 {
            q[k] += w * &t[k];
        }
    }
    let zero = Surd::rational(Rational::zero());
    let one = Surd::rational(Rational::one());
    let inside = |x: &Surd| *x > zero && *x < one;
    let roots: Vec<Surd> = match quadratic_roots([&q[0], &q[1], &q[2]]) {
        Some(rs) => rs,
        // A continuum of solutions: sample it at a few rational points.
        None => [
            ratio(1, 2),
            ratio(1, 3),
            ratio(2, 3),
            ratio(1, 4),
            ratio(3, 4),
        ]
        .into_iter()
        .map(Surd::rational)
        .collect(),
    };
    let mut out = Vec::new();
    for p2 in roots.into_iter().filter(inside) {
        let e0v = lin_eval(&den0, &p2);
        let e1v = lin_eval(&den1, &p2);
        if e0v == zero || e1v == zero {
            continue;
        }
        let p0 = lin_eval(&n0, &p2) / e0v;
        let p1 = lin_eval(&n1, &p2) / e1v;
        if !(inside(&p0) && inside(&p1)) {
            continue;
        }
        let candidate = match (exact(&p0), exact(&p1), exact(&p2)) {
            (Some(a), Some(b), Some(c)) => Candidate::Rational([a, b, c]),
            _ => Candidate::Irrational([p0, p1, p2]),
        };
        out.push(candidate);
    }
    (out, false)
}

fn exact(x: &Surd) -> Option<Rational> {
    x.is_rational().then(|| x.rational_part().clone())
}

/// Looks for a two-player deviation that strictly improves both members,
/// among a coarse grid and small steps around the profile.
fn pair_deviation_refutes(game: &TensorGame, p: &[Surd; 3]) -> bool {
    let f: Vec<Multilinear> = (0..3).map(|i| payoff_polynomial(game, i)).collect();
    let base: Vec<Surd> = f.iter().map(|fi| fi.eval_in(p)).collect();
    let zero = Surd::rational(Rational::zero());
    let one = Surd::rational(Rational::one());
    let mut moves: Vec<(Surd, Surd)> = Vec::new();
    for a in 0..=8 {
        for b in 0..=8 {
            moves.push((Surd::rational(ratio(a, 8)), Surd::rational(ratio(b, 8))));
        }
    }
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    for &(a, b) in &pairs {
        let mut local = moves.clone();
        for e in (3..=30).step_by(3) {
            let eps = Rational::new(BigInt::one(), BigInt::one() << e);
            for sa in [-1, 1] {
                for sb in [-1, 1] {
                    local.push((
                        p[a].clone() + Surd::rational(&eps * int(sa)),
                        p[b].clone() + Surd::rational(&eps * int(sb)),
                    ));
                }
            }
        }
        for (x, y) in local {
            if x < zero || x > one || y < zero || y > one {
                continue;
            }
            let mut q = p.clone();
            q[a] = x;
            q[b] = y;
            if f[a].eval_in(&q) > base[a] && f[b].eval_in(&q) > base[b] {
                return true;
            }
        }
    }
    false
}

/// Classifies `trials` perturbed random games with the given dimensions.
/// Trial `t` uses seed `spec.seed ^ t` for both the base game and the perturbation.
pub fn run_genericity_experiment(
    n: usize,
    dims: &[usize],
    trials: usize,
    spec: &PerturbSpec,
) -> Result<GenericitySummary> {
    if dims.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{n} players but {} dimensions",
            dims.len()
        )));
    }
    let mut summary = GenericitySummary::empty(dims);
    for t in 0..trials {
        let trial_spec = spec.for_trial(t as u64);
        let game = if n == 2 {
            Game::Bimatrix(perturb(
                &random_bimatrix(dims[0], dims[1], trial_spec.seed),
                &trial_spec,
            ))
        } else {
            Game::Tensor(perturb_tensor(
                &random_tensor(dims, trial_spec.seed),
                &trial_spec,
            ))
        };
        let class = classify_trial(&game)?;
        summary.record(&game, class);
    }
    Ok(summary)
}

/// A single unperturbed trial on a supplied game.
pub fn genericity_of_game(game: &Game) -> Result<GenericitySummary> {
    let mut summary = GenericitySummary::empty(game.dims());
    let class = classify_trial(game)?;
    summary.record(game, class);
    Ok(summary)
}

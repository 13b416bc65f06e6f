//! Game representation: bimatrix and n-player tensor games over exact rationals,
//! mixed profiles, supports and multilinear payoff evaluation.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{OrderedField, Rational};

/// Read access shared by every finite normal-form game.
///
/// Cells are addressed by one action index per player (0-based).
pub trait NormalForm {
    fn dims(&self) -> &[usize];
    fn payoff(&self, player: usize, cell: &[usize]) -> &Rational;

    fn num_players(&self) -> usize {
        self.dims().len()
    }

    fn num_cells(&self) -> usize {
        self.dims().iter().product()
    }
}

/// Odometer over all cells of a game, last player's action varying fastest.
#[derive(Debug, Clone)]
pub struct Cells {
    dims: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Cells {
    pub fn new(dims: &[usize]) -> Self {
        let next = if dims.iter().all(|&d| d > 0) {
            Some(vec![0; dims.len()])
        } else {
            None
        };
        Cells {
            dims: dims.to_vec(),
            next,
        }
    }
}

impl Iterator for Cells {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut k = succ.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            succ[k] += 1;
            if succ[k] < self.dims[k] {
                self.next = Some(succ);
                break;
            }
            succ[k] = 0;
        }
        Some(current)
    }
}

/// Two-player game stored cell-aligned: cell `(i, j)` holds the outcome pair
/// `(u1[i][j], u2[i][j])` reached when player 1 plays row `i` and player 2 column `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimatrixGame {
    dims: [usize; 2],
    u1: Vec<Vec<Rational>>,
    u2: Vec<Vec<Rational>>,
}

impl BimatrixGame {
    pub fn new(u1: Vec<Vec<Rational>>, u2: Vec<Vec<Rational>>) -> Result<Self> {
        let rows = u1.len();
        if rows == 0 || u2.len() != rows {
            return Err(Error::InvalidGame(
                "payoff grids must have the same positive number of rows".into(),
            ));
        }
        let cols = u1[0].len();
        if cols == 0 {
            return Err(Error::InvalidGame(
                "payoff grids need at least one column".into(),
            ));
        }
        if u1.iter().chain(u2.iter()).any(|row| row.len() != cols) {
            return Err(Error::InvalidGame(
                "payoff grids must be rectangular and equal-sized".into(),
            ));
        }
        Ok(BimatrixGame {
            dims: [rows, cols],
            u1,
            u2,
        })
    }

    /// Convenience constructor from integer outcome pairs, row-major.
    pub fn from_pairs(cells: &[&[(i64, i64)]]) -> Result<Self> {
        let u1 = cells
            .iter()
            .map(|row| row.iter().map(|&(a, _)| crate::rational::int(a)).collect())
            .collect();
        let u2 = cells
            .iter()
            .map(|row| row.iter().map(|&(_, b)| crate::rational::int(b)).collect())
            .collect();
        BimatrixGame::new(u1, u2)
    }

    pub fn rows(&self) -> usize {
        self.dims[0]
    }

    pub fn cols(&self) -> usize {
        self.dims[1]
    }

    pub fn u1(&self) -> &[Vec<Rational>] {
        &self.u1
    }

    pub fn u2(&self) -> &[Vec<Rational>] {
        &self.u2
    }

    /// Outcome point `(u1, u2)` of a cell.
    pub fn outcome(&self, row: usize, col: usize) -> (&Rational, &Rational) {
        (&self.u1[row][col], &self.u2[row][col])
    }

    pub fn to_tensor(&self) -> TensorGame {
        let flat = |grid: &[Vec<Rational>]| grid.iter().flatten().cloned().collect();
        TensorGame {
            dims: self.dims.to_vec(),
            payoffs: vec![flat(&self.u1), flat(&self.u2)],
        }
    }

    /// Shifts each player's payoffs so that `values` becomes `(0, 0)`.
    pub fn normalize_to_zero(&self, values: &PayoffVector) -> Result<BimatrixGame> {
        if values.len() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "expected 2 values, got {}",
                values.len()
            )));
        }
        let shift = |grid: &[Vec<Rational>], v: &Rational| {
            grid.iter()
                .map(|row| row.iter().map(|x| x - v).collect())
                .collect()
        };
        Ok(BimatrixGame {
            dims: self.dims,
            u1: shift(&self.u1, &values[0]),
            u2: shift(&self.u2, &values[1]),
        })
    }

    pub fn restrict(&self, support: &SupportProfile) -> Result<Restricted<BimatrixGame>> {
        support.validate_for(&self.dims)?;
        let rows = &support.sets()[0];
        let cols = &support.sets()[1];
        let pick = |grid: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
            rows.iter()
                .map(|&i| cols.iter().map(|&j| grid[i][j].clone()).collect())
                .collect()
        };
        Ok(Restricted {
            game: BimatrixGame {
                dims: [rows.len(), cols.len()],
                u1: pick(&self.u1),
                u2: pick(&self.u2),
            },
            maps: support.sets().to_vec(),
            original_dims: self.dims.to_vec(),
        })
    }

    /// Player 1's payoff for each row against a column mix.
    pub fn row_payoffs(&self, col_mix: &[Rational]) -> Vec<Rational> {
        self.u1.iter().map(|row| dot(row, col_mix)).collect()
    }

    /// Player 2's payoff for each column against a row mix.
    pub fn col_payoffs(&self, row_mix: &[Rational]) -> Vec<Rational> {
        (0..self.cols())
            .map(|j| {
                row_mix
                    .iter()
                    .zip(&self.u2)
                    .map(|(x, row)| x * &row[j])
                    .sum()
            })
            .collect()
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl NormalForm for BimatrixGame {
    fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn payoff(&self, player: usize, cell: &[usize]) -> &Rational {
        match player {
            0 => &self.u1[cell[0]][cell[1]],
            1 => &self.u2[cell[0]][cell[1]],
            _ => panic!("bimatrix game has two players, got player index {player}"),
        }
    }
}

/// n-player game: one payoff tensor per player, stored flat in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorGame {
    dims: Vec<usize>,
    payoffs: Vec<Vec<Rational>>,
}

impl TensorGame {
    pub fn new(dims: Vec<usize>, payoffs: Vec<Vec<Rational>>) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::InvalidGame(
                "a game needs at least two players".into(),
            ));
        }
        if dims.iter().any(|&d| d == 0) {
            return Err(Error::InvalidGame(
                "every player needs at least one action".into(),
            ));
        }
        if payoffs.len() != dims.len() {
            return Err(Error::InvalidGame(format!(
                "expected {} payoff tensors, got {}",
                dims.len(),
                payoffs.len()
            )));
        }
        let cells: usize = dims.iter().product();
        if let Some(bad) = payoffs.iter().position(|t| t.len() != cells) {
            return Err(Error::InvalidGame(format!(
                "payoff tensor of player {} has {} entries, expected {}",
                bad + 1,
                payoffs[bad].len(),
                cells
            )));
        }
        Ok(TensorGame { dims, payoffs })
    }

    pub fn tensor(&self, player: usize) -> &[Rational] {
        &self.payoffs[player]
    }

    pub fn index(&self, cell: &[usize]) -> usize {
        cell.iter()
            .zip(&self.dims)
            .fold(0, |acc, (&a, &d)| acc * d + a)
    }

    pub fn to_bimatrix(&self) -> Option<BimatrixGame> {
        if self.dims.len() != 2 {
            return None;
        }
        let cols = self.dims[1];
        let grid = |t: &[Rational]| t.chunks(cols).map(|c| c.to_vec()).collect();
        Some(BimatrixGame {
            dims: [self.dims[0], cols],
            u1: grid(&self.payoffs[0]),
            u2: grid(&self.payoffs[1]),
        })
    }

    pub fn restrict(&self, support: &SupportProfile) -> Result<Restricted<TensorGame>> {
        support.validate_for(&self.dims)?;
        let sub_dims: Vec<usize> = support.sets().iter().map(Vec::len).collect();
        let mut payoffs = vec![Vec::new(); self.dims.len()];
        for sub_cell in Cells::new(&sub_dims) {
            let cell: Vec<usize> = sub_cell
                .iter()
                .zip(support.sets())
                .map(|(&k, set)| set[k])
                .collect();
            let idx = self.index(&cell);
            for (player, out) in payoffs.iter_mut().enumerate() {
                out.push(self.payoffs[player][idx].clone());
            }
        }
        Ok(Restricted {
            game: TensorGame {
                dims: sub_dims,
                payoffs,
            },
            maps: support.sets().to_vec(),
            original_dims: self.dims.clone(),
        })
    }
}

impl NormalForm for TensorGame {
    fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn payoff(&self, player: usize, cell: &[usize]) -> &Rational {
        &self.payoffs[player][self.index(cell)]
    }
}

/// A parsed game: two-player files become bimatrices, larger ones tensors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Game {
    Bimatrix(BimatrixGame),
    Tensor(TensorGame),
}

impl Game {
    pub fn as_bimatrix(&self) -> Option<&BimatrixGame> {
        match self {
            Game::Bimatrix(g) => Some(g),
            Game::Tensor(_) => None,
        }
    }

    pub fn to_tensor(&self) -> TensorGame {
        match self {
            Game::Bimatrix(g) => g.to_tensor(),
            Game::Tensor(t) => t.clone(),
        }
    }

    pub fn restrict(&self, support: &SupportProfile) -> Result<Restricted<Game>> {
        match self {
            Game::Bimatrix(g) => g.restrict(support).map(|r| r.map(Game::Bimatrix)),
            Game::Tensor(t) => t.restrict(support).map(|r| r.map(Game::Tensor)),
        }
    }
}

impl NormalForm for Game {
    fn dims(&self) -> &[usize] {
        match self {
            Game::Bimatrix(g) => g.dims(),
            Game::Tensor(t) => t.dims(),
        }
    }

    fn payoff(&self, player: usize, cell: &[usize]) -> &Rational {
        match self {
            Game::Bimatrix(g) => g.payoff(player, cell),
            Game::Tensor(t) => t.payoff(player, cell),
        }
    }
}

/// A sub-game on a support, remembering which original action each kept action was.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restricted<G> {
    pub game: G,
    pub maps: Vec<Vec<usize>>,
    pub original_dims: Vec<usize>,
}

impl<G> Restricted<G> {
    fn map<H>(self, f: impl FnOnce(G) -> H) -> Restricted<H> {
        Restricted {
            game: f(self.game),
            maps: self.maps,
            original_dims: self.original_dims,
        }
    }

    /// Lifts a profile of the sub-game back to the original game, with zeros off-support.
    pub fn embed(&self, profile: &MixedProfile) -> Result<MixedProfile> {
        let sub_dims: Vec<usize> = self.maps.iter().map(Vec::len).collect();
        profile.check_dims(&sub_dims)?;
        let strategies = self
            .maps
            .iter()
            .zip(&self.original_dims)
            .zip(profile.strategies())
            .map(|((map, &m), x)| {
                let mut full = vec![Rational::zero(); m];
                for (k, &orig) in map.iter().enumerate() {
                    full[orig] = x[k].clone();
                }
                full
            })
            .collect();
        MixedProfile::new(strategies)
    }
}

/// One probability vector per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedProfile {
    strategies: Vec<Vec<Rational>>,
}

impl MixedProfile {
    pub fn new(strategies: Vec<Vec<Rational>>) -> Result<Self> {
        if strategies.is_empty() {
            return Err(Error::InvalidProfile("no players".into()));
        }
        for (i, x) in strategies.iter().enumerate() {
            if x.is_empty() {
                return Err(Error::InvalidProfile(format!(
                    "player {} has no actions",
                    i + 1
                )));
            }
            if x.iter().any(Signed::is_negative) {
                return Err(Error::InvalidProfile(format!(
                    "player {} has a negative probability",
                    i + 1
                )));
            }
            let total: Rational = x.iter().sum();
            if !total.is_one() {
                return Err(Error::InvalidProfile(format!(
                    "player {} probabilities sum to {total}, not 1",
                    i + 1
                )));
            }
        }
        Ok(MixedProfile { strategies })
    }

    /// Vertex profile: each player plays one action with certainty.
    pub fn pure(dims: &[usize], actions: &[usize]) -> Result<Self> {
        if dims.len() != actions.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} actions for {} players",
                actions.len(),
                dims.len()
            )));
        }
        let strategies = dims
            .iter()
            .zip(actions)
            .map(|(&m, &a)| {
                if a >= m {
                    return Err(Error::InvalidProfile(format!(
                        "action {} out of range for {} actions",
                        a + 1,
                        m
                    )));
                }
                let mut x = vec![Rational::zero(); m];
                x[a] = Rational::one();
                Ok(x)
            })
            .collect::<Result<_>>()?;
        Ok(MixedProfile { strategies })
    }

    pub fn uniform(dims: &[usize]) -> Self {
        let strategies = dims
            .iter()
            .map(|&m| vec![Rational::new(1.into(), (m as i64).into()); m])
            .collect();
        MixedProfile { strategies }
    }

    pub fn strategies(&self) -> &[Vec<Rational>] {
        &self.strategies
    }

    pub fn player(&self, i: usize) -> &[Rational] {
        &self.strategies[i]
    }

    pub fn num_players(&self) -> usize {
        self.strategies.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.strategies.iter().map(Vec::len).collect()
    }

    pub fn check_dims(&self, dims: &[usize]) -> Result<()> {
        if self.dims() != dims {
            return Err(Error::DimensionMismatch(format!(
                "profile shape {:?} does not match game dims {:?}",
                self.dims(),
                dims
            )));
        }
        Ok(())
    }

    pub fn support(&self) -> SupportProfile {
        SupportProfile {
            sets: self
                .strategies
                .iter()
                .map(|x| {
                    x.iter()
                        .enumerate()
                        .filter(|(_, p)| p.is_positive())
                        .map(|(j, _)| j)
                        .collect()
                })
                .collect(),
        }
    }

    pub fn is_fully_mixed(&self) -> bool {
        self.strategies
            .iter()
            .all(|x| x.iter().all(Signed::is_positive))
    }

    /// The single action of a pure strategy profile, if every player is pure.
    pub fn as_pure(&self) -> Option<Vec<usize>> {
        self.strategies
            .iter()
            .map(|x| {
                let mut it = x.iter().enumerate().filter(|(_, p)| !p.is_zero());
                match (it.next(), it.next()) {
                    (Some((j, _)), None) => Some(j),
                    _ => None,
                }
            })
            .collect()
    }

    /// Same profile with player `i`'s strategy replaced.
    pub fn with_player(&self, i: usize, strategy: Vec<Rational>) -> Result<Self> {
        let mut strategies = self.strategies.clone();
        strategies[i] = strategy;
        MixedProfile::new(strategies)
    }
}

impl fmt::Display for MixedProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let players: Vec<String> = self
            .strategies
            .iter()
            .map(|x| {
                x.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", players.join(";"))
    }
}

/// Per-player sorted, nonempty set of in-support actions (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupportProfile {
    sets: Vec<Vec<usize>>,
}

impl SupportProfile {
    pub fn new(sets: Vec<Vec<usize>>) -> Result<Self> {
        for (i, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::InvalidSupport(format!(
                    "player {} has an empty support",
                    i + 1
                )));
            }
            if set.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidSupport(format!(
                    "player {} support is not strictly increasing",
                    i + 1
                )));
            }
        }
        Ok(SupportProfile { sets })
    }

    pub fn full(dims: &[usize]) -> Self {
        SupportProfile {
            sets: dims.iter().map(|&m| (0..m).collect()).collect(),
        }
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    pub fn is_pure(&self) -> bool {
        self.sets.iter().all(|s| s.len() == 1)
    }

    pub fn validate_for(&self, dims: &[usize]) -> Result<()> {
        if self.sets.len() != dims.len() {
            return Err(Error::InvalidSupport(format!(
                "support has {} players, game has {}",
                self.sets.len(),
                dims.len()
            )));
        }
        for (i, (set, &m)) in self.sets.iter().zip(dims).enumerate() {
            if set.is_empty() {
                return Err(Error::InvalidSupport(format!(
                    "player {} has an empty support",
                    i + 1
                )));
            }
            if let Some(&bad) = set.iter().find(|&&a| a >= m) {
                return Err(Error::InvalidSupport(format!(
                    "action {} out of range for player {} with {} actions",
                    bad + 1,
                    i + 1,
                    m
                )));
            }
        }
        Ok(())
    }
}

/// One payoff per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PayoffVector(pub Vec<Rational>);

impl PayoffVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self >> other`: strictly larger in every component.
    pub fn strictly_dominates(&self, other: &PayoffVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a > b)
    }

    /// `self > other`: at least as large everywhere and different somewhere.
    pub fn weakly_dominates(&self, other: &PayoffVector) -> bool {
        self.0.len() == other.0.len()
            && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
            && self.0 != other.0
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().sum()
    }
}

impl std::ops::Index<usize> for PayoffVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for PayoffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Multilinear expected payoff of every player over any ordered field.
pub fn expected_payoff_in<G, F>(game: &G, strategies: &[Vec<F>]) -> Vec<F>
where
    G: NormalForm + ?Sized,
    F: OrderedField,
{
    let n = game.num_players();
    let mut totals = vec![F::zero_value(); n];
    for cell in Cells::new(game.dims()) {
        let mut weight = F::one_value();
        for (k, &a) in cell.iter().enumerate() {
            let p = &strategies[k][a];
            if p.is_zero_value() {
                weight = F::zero_value();
                break;
            }
            weight = weight * p.clone();
        }
        if weight.is_zero_value() {
            continue;
        }
        for (player, total) in totals.iter_mut().enumerate() {
            let u = game.payoff(player, &cell);
            if !u.is_zero() {
                *total = total.clone() + weight.clone() * F::from_rational(u.clone());
            }
        }
    }
    totals
}

pub fn expected_payoff<G: NormalForm + ?Sized>(
    game: &G,
    profile: &MixedProfile,
) -> Result<PayoffVector> {
    profile.check_dims(game.dims())?;
    Ok(PayoffVector(expected_payoff_in(game, profile.strategies())))
}

/// Payoff of each pure action of `player` against the other players' mixes in `profile`.
pub fn action_payoffs<G: NormalForm + ?Sized>(
    game: &G,
    profile: &MixedProfile,
    player: usize,
) -> Result<Vec<Rational>> {
    profile.check_dims(game.dims())?;
    Ok(action_payoffs_in(game, profile.strategies(), player))
}

pub fn action_payoffs_in<G, F>(game: &G, strategies: &[Vec<F>], player: usize) -> Vec<F>
where
    G: NormalForm + ?Sized,
    F: OrderedField,
{
    let mut out = vec![F::zero_value(); game.dims()[player]];
    for cell in Cells::new(game.dims()) {
        let mut weight = F::one_value();
        for (k, &a) in cell.iter().enumerate() {
            if k == player {
                continue;
            }
            let p = &strategies[k][a];
            if p.is_zero_value() {
                weight = F::zero_value();
                break;
            }
            weight = weight * p.clone();
        }
        if weight.is_zero_value() {
            continue;
        }
        let u = game.payoff(player, &cell);
        if !u.is_zero() {
            let slot = &mut out[cell[player]];
            *slot = slot.clone() + weight * F::from_rational(u.clone());
        }
    }
    out
}

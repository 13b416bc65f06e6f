//! Geometry of the outcome points `(u1, u2)` of a bimatrix game in the payoff plane.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{expected_payoff, BimatrixGame, MixedProfile, PayoffVector};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineKind {
    /// Fewer than two distinct points.
    Point,
    Vertical,
    Horizontal,
    NegativeSlope(Rational),
    PositiveSlope(Rational),
    NotCollinear,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineClass {
    pub kind: LineKind,
    /// Collinear points whose line contains the origin; for a single point, the point is the origin.
    pub through_origin: bool,
}

impl LineClass {
    pub fn is_collinear(&self) -> bool {
        self.kind != LineKind::NotCollinear
    }
}

impl fmt::Display for LineClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            LineKind::Point => write!(f, "Point")?,
            LineKind::Vertical => write!(f, "Vertical")?,
            LineKind::Horizontal => write!(f, "Horizontal")?,
            LineKind::NegativeSlope(s) => write!(f, "NegativeSlope({s})")?,
            LineKind::PositiveSlope(s) => write!(f, "PositiveSlope({s})")?,
            LineKind::NotCollinear => return write!(f, "NotCollinear"),
        }
        if self.through_origin {
            write!(f, " through origin")?;
        }
        Ok(())
    }
}

type Point = (Rational, Rational);

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

pub fn classify_points(points: &[Point]) -> LineClass {
    let Some(p0) = points.first() else {
        return LineClass {
            kind: LineKind::Point,
            through_origin: false,
        };
    };
    let origin = (Rational::zero(), Rational::zero());
    let Some(p1) = points.iter().find(|p| *p != p0) else {
        return LineClass {
            kind: LineKind::Point,
            through_origin: *p0 == origin,
        };
    };
    if points.iter().any(|p| !cross(p0, p1, p).is_zero()) {
        return LineClass {
            kind: LineKind::NotCollinear,
            through_origin: false,
        };
    }
    let dx = &p1.0 - &p0.0;
    let dy = &p1.1 - &p0.1;
    let kind = if dx.is_zero() {
        LineKind::Vertical
    } else if dy.is_zero() {
        LineKind::Horizontal
    } else {
        let slope = dy / dx;
        if slope.is_negative() {
            LineKind::NegativeSlope(slope)
        } else {
            LineKind::PositiveSlope(slope)
        }
    };
    LineClass {
        kind,
        through_origin: cross(p0, p1, &origin).is_zero(),
    }
}

fn outcome(game: &BimatrixGame, i: usize, j: usize) -> Point {
    let (a, b) = game.outcome(i, j);
    (a.clone(), b.clone())
}

pub fn outcome_points(game: &BimatrixGame) -> Vec<Point> {
    (0..game.rows())
        .flat_map(|i| (0..game.cols()).map(move |j| (i, j)))
        .map(|(i, j)| outcome(game, i, j))
        .collect()
}

pub fn classify_line(game: &BimatrixGame) -> LineClass {
    classify_points(&outcome_points(game))
}

/// Rows `{i, i'}` and columns `{j, j'}` of a 2×2 block with collinear outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub rows: [usize; 2],
    pub cols: [usize; 2],
}

/// First 2×2 block, in lexicographic order of (rows, columns), whose four outcomes are collinear.
pub fn condition1(game: &BimatrixGame) -> Option<Block> {
    let (m1, m2) = (game.rows(), game.cols());
    for i in 0..m1 {
        for i2 in (i + 1)..m1 {
            for j in 0..m2 {
                for j2 in (j + 1)..m2 {
                    let pts = [
                        outcome(game, i, j),
                        outcome(game, i, j2),
                        outcome(game, i2, j),
                        outcome(game, i2, j2),
                    ];
                    if classify_points(&pts).is_collinear() {
                        return Some(Block {
                            rows: [i, i2],
                            cols: [j, j2],
                        });
                    }
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition2 {
    /// Two rows of one column share player 1's payoff.
    Vertical { col: usize, rows: [usize; 2] },
    /// Two columns of one row share player 2's payoff.
    Horizontal { row: usize, cols: [usize; 2] },
}

/// Columns are scanned first, then rows.
pub fn condition2(game: &BimatrixGame) -> Option<Condition2> {
    let (m1, m2) = (game.rows(), game.cols());
    for j in 0..m2 {
        for i in 0..m1 {
            for i2 in (i + 1)..m1 {
                if game.u1()[i][j] == game.u1()[i2][j] {
                    return Some(Condition2::Vertical {
                        col: j,
                        rows: [i, i2],
                    });
                }
            }
        }
    }
    for i in 0..m1 {
        for j in 0..m2 {
            for j2 in (j + 1)..m2 {
                if game.u2()[i][j] == game.u2()[i][j2] {
                    return Some(Condition2::Horizontal {
                        row: i,
                        cols: [j, j2],
                    });
                }
            }
        }
    }
    None
}

/// `u2 = −a·u1 + b` for some `a > 0`, or all outcomes coincide.
pub fn is_strictly_competitive(game: &BimatrixGame) -> bool {
    matches!(
        classify_line(game).kind,
        LineKind::NegativeSlope(_) | LineKind::Point
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineConditionReport {
    pub values: PayoffVector,
    /// Classification of the outcomes after shifting `values` to the origin.
    pub line: LineClass,
    /// Collinear through the origin with strictly negative slope (or a single point at the origin).
    pub super_strong_condition: bool,
    /// Collinear through the origin with non-positive slope, or on a vertical or horizontal line.
    pub strong_condition: bool,
}

/// Necessary line conditions for a full-support profile to be a (super) strong equilibrium.
pub fn line_condition_report(
    game: &BimatrixGame,
    profile: &MixedProfile,
) -> Result<LineConditionReport> {
    profile.check_dims(&[game.rows(), game.cols()])?;
    if !profile.is_fully_mixed() {
        return Err(Error::NotFullyMixed);
    }
    let values = expected_payoff(game, profile)?;
    let line = classify_line(&game.normalize_to_zero(&values)?);
    let super_strong_condition =
        line.through_origin && matches!(line.kind, LineKind::NegativeSlope(_) | LineKind::Point);
    let strong_condition = line.through_origin
        && matches!(
            line.kind,
            LineKind::NegativeSlope(_)
                | LineKind::Point
                | LineKind::Vertical
                | LineKind::Horizontal
        );
    Ok(LineConditionReport {
        values,
        line,
        super_strong_condition,
        strong_condition,
    })
}

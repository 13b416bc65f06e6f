//! Plain-text game files and command-line profile strings.
//!
//! ```text
//! # prisoner's dilemma
//! players 2
//! dims 2 2
//! payoffs 1
//! 3 0
//! 5 1
//! payoffs 2
//! 3 5
//! 0 1
//! ```
//!
//! Payoff tokens are row-major over the action tuple with the last player's
//! action varying fastest, and may be spread over any number of lines.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, Game, MixedProfile, NormalForm, TensorGame};
use crate::rational::{parse_rational, Rational};

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

fn content_lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return None;
        }
        Some(Line {
            number: k + 1,
            tokens: trimmed.split_whitespace().collect(),
        })
    })
}

fn parse_count(token: &str, line: usize, what: &str) -> Result<usize> {
    match token.parse::<usize>() {
        Ok(0) => Err(Error::parse(line, format!("{what} must be positive"))),
        Ok(n) => Ok(n),
        Err(_) => Err(Error::parse(
            line,
            format!("expected a positive integer for {what}, found `{token}`"),
        )),
    }
}

pub fn parse_game(text: &str) -> Result<Game> {
    let mut lines = content_lines(text).peekable();
    let last_line = text.lines().count().max(1);

    let header = lines
        .next()
        .ok_or_else(|| Error::parse(last_line, "empty game file"))?;
    let n = match header.tokens.as_slice() {
        ["players", count] => parse_count(count, header.number, "player count")?,
        _ => return Err(Error::parse(header.number, "expected `players <n>`")),
    };
    if n < 2 {
        return Err(Error::parse(
            header.number,
            "a game needs at least two players",
        ));
    }

    let dims_line = lines
        .next()
        .ok_or_else(|| Error::parse(last_line, "missing `dims` line"))?;
    if dims_line.tokens.first() != Some(&"dims") {
        return Err(Error::parse(
            dims_line.number,
            "expected `dims <m1> ... <mn>`",
        ));
    }
    let dims = dims_line.tokens[1..]
        .iter()
        .map(|t| parse_count(t, dims_line.number, "action count"))
        .collect::<Result<Vec<_>>>()?;
    if dims.len() != n {
        return Err(Error::parse(
            dims_line.number,
            format!("expected {n} action counts, found {}", dims.len()),
        ));
    }
    let cells: usize = dims.iter().product();

    let mut payoffs: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut current: Option<(usize, usize)> = None; // (player, header line)
    for line in lines {
        let mut tokens = line.tokens.as_slice();
        if tokens.first() == Some(&"payoffs") {
            if let Some((player, at)) = current {
                check_count(&payoffs[player], cells, at, player)?;
            }
            let expected = payoffs.len() + 1;
            match tokens {
                [_, idx] if idx.parse::<usize>().ok() == Some(expected) => {}
                _ => {
                    return Err(Error::parse(
                        line.number,
                        format!("expected `payoffs {expected}`"),
                    ))
                }
            }
            if expected > n {
                return Err(Error::parse(
                    line.number,
                    format!("only {n} players declared"),
                ));
            }
            payoffs.push(Vec::with_capacity(cells));
            current = Some((expected - 1, line.number));
            tokens = &[];
        }
        let Some((player, _)) = current else {
            return Err(Error::parse(
                line.number,
                "payoff entries before a `payoffs` header",
            ));
        };
        for token in tokens {
            let value =
                parse_rational(token).map_err(|e| Error::parse(line.number, e.to_string()))?;
            if payoffs[player].len() == cells {
                return Err(Error::parse(
                    line.number,
                    format!(
                        "too many entries for player {}: expected {cells}",
                        player + 1
                    ),
                ));
            }
            payoffs[player].push(value);
        }
    }
    match current {
        Some((player, at)) => check_count(&payoffs[player], cells, at, player)?,
        None => return Err(Error::parse(last_line, "missing `payoffs` sections")),
    }
    if payoffs.len() != n {
        return Err(Error::parse(
            last_line,
            format!("expected payoffs for {n} players, found {}", payoffs.len()),
        ));
    }

    let tensor = TensorGame::new(dims, payoffs)?;
    Ok(match tensor.to_bimatrix() {
        Some(b) => Game::Bimatrix(b),
        None => Game::Tensor(tensor),
    })
}

fn check_count(entries: &[Rational], cells: usize, line: usize, player: usize) -> Result<()> {
    if entries.len() == cells {
        Ok(())
    } else {
        Err(Error::parse(
            line,
            format!(
                "wrong entry count for player {}: expected {cells}, found {}",
                player + 1,
                entries.len()
            ),
        ))
    }
}

pub fn parse_bimatrix(text: &str) -> Result<BimatrixGame> {
    match parse_game(text)? {
        Game::Bimatrix(b) => Ok(b),
        Game::Tensor(t) => Err(Error::InvalidGame(format!(
            "expected a two-player game, found {} players",
            t.num_players()
        ))),
    }
}

pub fn serialize_game<G: NormalForm + ?Sized>(game: &G) -> String {
    let dims = game.dims();
    let width = *dims.last().unwrap();
    let mut out = String::new();
    writeln!(out, "players {}", dims.len()).unwrap();
    let dims_text: Vec<String> = dims.iter().map(ToString::to_string).collect();
    writeln!(out, "dims {}", dims_text.join(" ")).unwrap();
    for player in 0..dims.len() {
        writeln!(out, "payoffs {}", player + 1).unwrap();
        let values: Vec<String> = crate::game::Cells::new(dims)
            .map(|cell| game.payoff(player, &cell).to_string())
            .collect();
        for row in values.chunks(width) {
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
    }
    out
}

/// Parses `"1/2,1/2;0,1"`: players separated by `;`, probabilities by `,`.
pub fn parse_profile(text: &str) -> Result<MixedProfile> {
    let strategies = text
        .split(';')
        .map(|player| {
            player
                .split(',')
                .map(|t| parse_rational(t.trim()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::InvalidProfile(e.to_string()))?;
    MixedProfile::new(strategies)
}

//! Small reference games used throughout the tests, the CLI docs and the benchmarks.

use crate::game::{BimatrixGame, TensorGame};
use crate::rational::int;

/// 3×3 strictly competitive game whose outcomes all lie on `u2 = −2·u1`.
pub fn competitive_3x3() -> BimatrixGame {
    BimatrixGame::from_pairs(&[
        &[(0, 0), (-1, 2), (2, -4)],
        &[(1, -2), (0, 0), (-3, 6)],
        &[(-2, 4), (3, -6), (0, 0)],
    ])
    .expect("static game")
}

pub fn prisoners_dilemma() -> BimatrixGame {
    BimatrixGame::from_pairs(&[&[(3, 3), (0, 5)], &[(5, 0), (1, 1)]]).expect("static game")
}

pub fn matching_pennies() -> BimatrixGame {
    BimatrixGame::from_pairs(&[&[(1, -1), (-1, 1)], &[(-1, 1), (1, -1)]]).expect("static game")
}

pub fn coordination() -> BimatrixGame {
    BimatrixGame::from_pairs(&[&[(1, 1), (0, 0)], &[(0, 0), (1, 1)]]).expect("static game")
}

/// Three players with two actions each. Player 3's first action selects the
/// matrix `((2,0,0) (0,2,0); (0,0,2) (0,0,0))`, the second
/// `((0,0,0) (0,0,2); (0,2,0) (2,0,0))`; rows are player 1, columns player 2.
pub fn three_player_ring() -> TensorGame {
    let first = [[(2, 0, 0), (0, 2, 0)], [(0, 0, 2), (0, 0, 0)]];
    let second = [[(0, 0, 0), (0, 0, 2)], [(0, 2, 0), (2, 0, 0)]];
    let mut payoffs = vec![Vec::new(); 3];
    for i1 in 0..2 {
        for i2 in 0..2 {
            for i3 in 0..2 {
                let (a, b, c) = if i3 == 0 {
                    first[i1][i2]
                } else {
                    second[i1][i2]
                };
                payoffs[0].push(int(a));
                payoffs[1].push(int(b));
                payoffs[2].push(int(c));
            }
        }
    }
    TensorGame::new(vec![2, 2, 2], payoffs).expect("static game")
}

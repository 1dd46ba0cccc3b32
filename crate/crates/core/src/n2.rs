//! Closed forms for `n = 2`, where the chain of components `C_k` and the
//! correspondence are explicit.
//!
//! The nontrivial cell is everything but the identity. Its elements come in
//! four families indexed by the first window entry, and the components
//! `C_j` are indexed by `j` in `Z`. Words are lists of simple reflection
//! indices read left to right.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::ambc::{phi_special, AmbcTriple};
use crate::error::{Error, Result};
use crate::perm::{AffinePermutation, RectShape};
use crate::tabloid::Tabloid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum N2Family {
    /// `[2k+2, 1-2k] = s1 (s0 s1)^k`, `k >= 0`.
    A,
    /// `[-1-2k, 4+2k] = (s1 s0)^{k+1}`, `k >= 0`.
    B,
    /// `[2k+1, 2-2k] = (s0 s1)^k`, `k >= 1`.
    C,
    /// `[-2k, 3+2k] = s0 (s1 s0)^k`, `k >= 0`.
    D,
}

impl N2Family {
    pub const ALL: [N2Family; 4] = [N2Family::A, N2Family::B, N2Family::C, N2Family::D];

    pub fn min_k(self) -> i64 {
        if self == N2Family::C {
            1
        } else {
            0
        }
    }

    pub fn window(self, k: i64) -> [i64; 2] {
        match self {
            N2Family::A => [2 * k + 2, 1 - 2 * k],
            N2Family::B => [-1 - 2 * k, 4 + 2 * k],
            N2Family::C => [2 * k + 1, 2 - 2 * k],
            N2Family::D => [-2 * k, 3 + 2 * k],
        }
    }

    pub fn word(self, k: i64) -> Vec<usize> {
        let k = k as usize;
        match self {
            N2Family::A => [vec![1], alternating(0, 2 * k)].concat(),
            N2Family::B => alternating(1, 2 * k + 2),
            N2Family::C => alternating(0, 2 * k),
            N2Family::D => [vec![0], alternating(1, 2 * k)].concat(),
        }
    }

    /// `(P, Q)` as row tops: `true` for `{1|2}`.
    fn tabloids(self) -> (bool, bool) {
        match self {
            N2Family::A => (true, true),
            N2Family::B => (true, false),
            N2Family::C => (false, true),
            N2Family::D => (false, false),
        }
    }
}

/// `s_a s_b s_a ...` with `len` letters.
pub fn alternating(first: usize, len: usize) -> Vec<usize> {
    (0..len).map(|i| (first + i) % 2).collect()
}

pub fn word_to_perm(n: usize, word: &[usize]) -> AffinePermutation {
    word.iter().fold(AffinePermutation::identity(n), |acc, &i| {
        acc.compose_unchecked(&AffinePermutation::simple_reflection(n, i as i64))
    })
}

fn tab(one_on_top: bool) -> Tabloid {
    let rows = if one_on_top { vec![vec![1], vec![2]] } else { vec![vec![2], vec![1]] };
    Tabloid::from_rows(rows).expect("valid n = 2 tabloid")
}

fn triple(p: bool, q: bool, k: i64) -> AmbcTriple {
    AmbcTriple::new(tab(p), tab(q), vec![-k, k]).expect("valid n = 2 triple")
}

/// `theta(C_j)`.
pub fn theta_n2(j: i64) -> Tabloid {
    tab(j.rem_euclid(2) == 0)
}

/// The correspondence for `n = 2` by family lookup.
pub fn phi_n2(w: &AffinePermutation) -> Result<AmbcTriple> {
    if w.n() != 2 {
        return Err(Error::Precondition(format!("{w} does not have period 2")));
    }
    let a = w.window()[0];
    let (family, k) = match (a.rem_euclid(2), a) {
        (_, 1) => {
            return Err(Error::NotInCell(w.to_string(), "(1,1)".into()));
        }
        (0, a) if a >= 2 => (N2Family::A, (a - 2) / 2),
        (1, a) if a <= -1 => (N2Family::B, (-1 - a) / 2),
        (1, a) => (N2Family::C, (a - 1) / 2),
        (_, a) => (N2Family::D, -a / 2),
    };
    let (p, q) = family.tabloids();
    Ok(triple(p, q, k))
}

#[derive(Clone, Debug, Serialize)]
pub struct N2PhiRow {
    pub family: N2Family,
    pub k: i64,
    pub window: AffinePermutation,
    pub word: Vec<usize>,
    pub triple: AmbcTriple,
}

/// `r(C_first, C_second)` and `Theta(C_first, C_second)`, `first` in `{0, 1}`.
#[derive(Clone, Debug, Serialize)]
pub struct N2PairRow {
    pub first: i64,
    pub second: i64,
    pub word: Vec<usize>,
    pub rel_pos: AffinePermutation,
    pub theta: AmbcTriple,
}

#[derive(Clone, Debug, Serialize)]
pub struct N2Fixture {
    pub phi_rows: Vec<N2PhiRow>,
    pub pair_rows: Vec<N2PairRow>,
}

fn rel_pos_word(first: i64, second: i64) -> Vec<usize> {
    let (k, odd) = (second.div_euclid(2), second.rem_euclid(2) == 1);
    let (k_abs, kk) = (k.unsigned_abs() as usize, k);
    match (first, odd) {
        (0, false) => [alternating(1, 2 * k_abs), vec![1]].concat(),
        (0, true) if kk >= 0 => alternating(1, 2 * (k_abs + 1)),
        (0, true) => alternating(1, 2 * k_abs),
        (1, false) if kk >= 1 => alternating(0, 2 * k_abs),
        (1, false) => alternating(0, 2 * (k_abs + 1)),
        (1, true) => [alternating(0, 2 * k_abs), vec![0]].concat(),
        _ => unreachable!("first component is C_0 or C_1"),
    }
}

/// `Theta(C_first, C_second)` with `second = 2k` or `2k + 1`.
pub fn theta_big_n2(first: i64, second: i64) -> AmbcTriple {
    let k = second.div_euclid(2);
    AmbcTriple::new(theta_n2(first), theta_n2(second), vec![-k, k]).expect("valid n = 2 triple")
}

/// Family rows for `k` in `ks` (clipped below by each family's start) and
/// pair rows for `C_0, C_1` against `C_j`, `j = 2k, 2k + 1`.
pub fn n2_tables(ks: RangeInclusive<i64>) -> N2Fixture {
    let mut phi_rows = Vec::new();
    for family in N2Family::ALL {
        for k in ks.clone().filter(|&k| k >= family.min_k()) {
            let (p, q) = family.tabloids();
            phi_rows.push(N2PhiRow {
                family,
                k,
                window: AffinePermutation::new(family.window(k).to_vec()).expect("valid window"),
                word: family.word(k),
                triple: triple(p, q, k),
            });
        }
    }
    let mut pair_rows = Vec::new();
    for first in [0, 1] {
        for k in ks.clone() {
            for second in [2 * k, 2 * k + 1] {
                let word = rel_pos_word(first, second);
                pair_rows.push(N2PairRow {
                    first,
                    second,
                    rel_pos: word_to_perm(2, &word),
                    word,
                    theta: theta_big_n2(first, second),
                });
            }
        }
    }
    N2Fixture { phi_rows, pair_rows }
}

/// The independent derivation of a family row: `phi_special` on the left
/// cell of `T^lambda`, inversion from `C`, rotation from `A`.
pub fn derive_phi_row(family: N2Family, k: i64) -> Result<AmbcTriple> {
    let shape = RectShape { l: 1, m: 2 };
    let w = |f: N2Family, k: i64| AffinePermutation::new(f.window(k).to_vec());
    match family {
        N2Family::A | N2Family::C => phi_special(&w(family, k)?, shape),
        N2Family::B => Ok(phi_special(&w(N2Family::C, k + 1)?, shape)?.invert()),
        N2Family::D => Ok(phi_special(&w(N2Family::A, k)?, shape)?.rotate(1)),
    }
}

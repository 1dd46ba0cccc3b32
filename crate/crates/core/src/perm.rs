//! Affine permutations in window notation.
//!
//! An affine permutation of period `n` is a bijection `w: Z -> Z` with
//! `w(i + n) = w(i) + n` whose window `[w(1), ..., w(n)]` sums to
//! `n(n+1)/2`. Everything here is a pure function of the window.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::budget::{check_budget, Budget};
use crate::error::{Error, Result};
use crate::tabloid::Partition;

/// Largest absolute window entry accepted. Products and rotations of
/// desk-scale elements stay far below this, so `i64` arithmetic cannot
/// overflow on any value that passed validation.
pub const MAX_ENTRY: i64 = 1 << 40;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl AffinePermutation {
    /// Validates a window: residues pairwise distinct and the sum equal to
    /// `n(n+1)/2`.
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::InvalidWindow("empty window".into()));
        }
        if let Some(&x) = window.iter().find(|x| x.abs() > MAX_ENTRY) {
            return Err(Error::InvalidWindow(format!(
                "entry {x} exceeds the supported magnitude {MAX_ENTRY}"
            )));
        }
        let nn = n as i64;
        let mut seen = vec![None; n];
        for (pos, &x) in window.iter().enumerate() {
            let r = x.rem_euclid(nn) as usize;
            if let Some(prev) = seen[r] {
                return Err(Error::InvalidWindow(format!(
                    "duplicate residues: w({}) = {} and w({}) = {} agree mod {n}",
                    prev + 1,
                    window[prev],
                    pos + 1,
                    x
                )));
            }
            seen[r] = Some(pos);
        }
        let sum: i64 = window.iter().sum();
        let expected = nn * (nn + 1) / 2;
        if sum != expected {
            return Err(Error::InvalidWindow(format!(
                "window sum is {sum}, expected n(n+1)/2 = {expected}"
            )));
        }
        Ok(Self { window })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            window: (1..=n as i64).collect(),
        }
    }

    /// The simple reflection `s_i`, `i` taken mod `n`.
    pub fn simple_reflection(n: usize, i: i64) -> Self {
        let nn = n as i64;
        let i = i.rem_euclid(nn);
        let window = (1..=nn)
            .map(|x| {
                if x.rem_euclid(nn) == i {
                    x + 1
                } else if x.rem_euclid(nn) == (i + 1) % nn {
                    x - 1
                } else {
                    x
                }
            })
            .collect();
        Self { window }
    }

    /// The longest element `w_0^lambda` of the parabolic subgroup: the
    /// window reversed inside consecutive blocks whose sizes are the parts
    /// of the transpose of `shape`.
    pub fn w0_lambda(shape: &Partition) -> Self {
        let mut window = Vec::with_capacity(shape.size());
        let mut offset = 0i64;
        for block in shape.transpose().parts() {
            let b = *block as i64;
            window.extend((1..=b).rev().map(|x| offset + x));
            offset += b;
        }
        Self { window }
    }

    /// `w^(k)`: blocks of the rectangle rotated by `k`, conjugated by `phi^k`.
    pub fn w_k(shape: RectShape, k: usize) -> Result<Self> {
        let (l, m) = (shape.l as i64, shape.m as i64);
        if k == 0 || k as i64 >= m {
            return Err(Error::OutOfRange(format!(
                "w^(k) needs k in [1, m-1] = [1, {}], got {k}",
                m - 1
            )));
        }
        let k = k as i64;
        let mut window = Vec::with_capacity(shape.n());
        for b in 0..l {
            let off = b * m;
            window.extend((m - k + 1..=m).map(|x| off + x));
            window.extend((1..=m - k).map(|x| off + x));
        }
        Ok(Self { window }.rotate(k))
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// `w(i)` for any integer `i`, extended by periodicity.
    pub fn eval(&self, i: i64) -> i64 {
        let n = self.window.len() as i64;
        let idx = (i - 1).rem_euclid(n) as usize;
        self.window[idx] + n * (i - 1).div_euclid(n)
    }

    /// The residue of `w(i)` in `[1, n]`.
    pub fn residue(&self, i: i64) -> usize {
        let n = self.window.len() as i64;
        ((self.eval(i) - 1).rem_euclid(n) + 1) as usize
    }

    /// The finite permutation `overline(w)` of residues as a 1-based table:
    /// entry `r - 1` is the residue of `w(r)`.
    pub fn residue_map(&self) -> Vec<usize> {
        (1..=self.n() as i64).map(|i| self.residue(i)).collect()
    }

    /// `self ∘ other`, i.e. `(uv)(i) = u(v(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::PeriodMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self {
            window: other.window.iter().map(|&v| self.eval(v)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n() as i64;
        let mut window = vec![0; self.n()];
        for (pos, &v) in self.window.iter().enumerate() {
            let r = (v - 1).rem_euclid(n);
            let q = (v - 1).div_euclid(n);
            window[r as usize] = pos as i64 + 1 - n * q;
        }
        Self { window }
    }

    /// `phi^k(w)`, with `phi(w)(i) = w(i - 1) + 1`.
    pub fn rotate(&self, k: i64) -> Self {
        let n = self.n() as i64;
        Self {
            window: (1..=n).map(|i| self.eval(i - k) + k).collect(),
        }
    }

    /// Length computed by both classical formulas; they must agree.
    pub fn length(&self) -> u64 {
        let shi = self.length_floor_sum();
        let inv = self.length_inversions();
        assert_eq!(
            shi, inv,
            "length formulas disagree on {self}: floor-sum {shi}, inversions {inv}"
        );
        shi
    }

    /// `sum_{1 <= i < j <= n} |floor((w(j) - w(i)) / n)|`.
    pub fn length_floor_sum(&self) -> u64 {
        let n = self.n() as i64;
        let w = &self.window;
        let mut total = 0u64;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                total += (w[j] - w[i]).div_euclid(n).unsigned_abs();
            }
        }
        total
    }

    /// `#{(i, j) in [n] x Z_{>0} : i < j, w(i) > w(j)}`, counted by walking
    /// each residue class of `j` upwards until it passes `w(i)`.
    pub fn length_inversions(&self) -> u64 {
        let n = self.n() as i64;
        let mut total = 0u64;
        for i in 1..=n {
            let wi = self.eval(i);
            for r in 1..=n {
                let mut j = if r > i { r } else { r + n };
                while self.eval(j) < wi {
                    total += 1;
                    j += n;
                }
            }
        }
        total
    }

    /// Right descent set `{i : w(i) > w(i+1)}` as residues in `[1, n]`.
    pub fn right_descents(&self) -> Vec<usize> {
        (1..=self.n() as i64)
            .filter(|&i| self.eval(i) > self.eval(i + 1))
            .map(|i| i as usize)
            .collect()
    }

    /// Left descent set, the right descent set of the inverse.
    pub fn left_descents(&self) -> Vec<usize> {
        self.inverse().right_descents()
    }

    /// A random window: a shuffled `[1..n]` with each entry moved by a
    /// multiple of `n` of size at most `spread` (the last one absorbs the sum).
    pub fn random<R: Rng>(n: usize, spread: i64, rng: &mut R) -> Self {
        let mut base: Vec<i64> = (1..=n as i64).collect();
        base.shuffle(rng);
        let mut shifts: Vec<i64> = (0..n).map(|_| rng.gen_range(-spread..=spread)).collect();
        let total: i64 = shifts[..n - 1].iter().sum();
        shifts[n - 1] = -total;
        let n_i = n as i64;
        Self::new(base.iter().zip(&shifts).map(|(b, t)| b + n_i * t).collect())
            .expect("shifted permutation is a valid window")
    }

    /// Every window with entries in `[lo, hi]`, in lexicographic order.
    pub fn enumerate_bounded(n: usize, lo: i64, hi: i64, budget: Budget) -> Result<Vec<Self>> {
        let target = (n * (n + 1) / 2) as i64;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        #[allow(clippy::too_many_arguments)]
        fn rec(
            n: usize,
            lo: i64,
            hi: i64,
            target: i64,
            budget: Budget,
            cur: &mut Vec<i64>,
            used: &mut [bool],
            out: &mut Vec<AffinePermutation>,
        ) -> Result<()> {
            let sum: i64 = cur.iter().sum();
            let left = (n - cur.len()) as i64;
            if left == 0 {
                if sum == target {
                    check_budget("enumerating bounded windows", out.len() as u128 + 1, budget)?;
                    out.push(AffinePermutation { window: cur.clone() });
                }
                return Ok(());
            }
            if sum + left * lo > target || sum + left * hi < target {
                return Ok(());
            }
            for v in lo..=hi {
                let r = v.rem_euclid(n as i64) as usize;
                if used[r] {
                    continue;
                }
                used[r] = true;
                cur.push(v);
                rec(n, lo, hi, target, budget, cur, used, out)?;
                cur.pop();
                used[r] = false;
            }
            Ok(())
        }
        rec(n, lo, hi, target, budget, &mut cur, &mut used, &mut out)?;
        Ok(out)
    }
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.window.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a comma-separated integer list, `−` (U+2212) accepted as minus.
pub(crate) fn parse_int_list(body: &str) -> Result<Vec<i64>> {
    let body = body.replace('\u{2212}', "-");
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<i64>()
                .map_err(|_| Error::Parse(format!("not an integer: {tok:?}")))
        })
        .collect()
}

pub(crate) fn strip_delims(s: &str, open: char, close: char) -> Result<&str> {
    let s = s.trim();
    s.strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| Error::Parse(format!("expected {open}...{close}, got {s:?}")))
}

impl FromStr for AffinePermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = strip_delims(s, '[', ']')?;
        Self::new(parse_int_list(body)?)
    }
}

impl Serialize for AffinePermutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AffinePermutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A rectangle `(l^m)`: `m` rows of length `l`, `n = l * m`.
///
/// Written `LxM` on the command line, so `2x3` is `(2,2,2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RectShape {
    pub l: usize,
    pub m: usize,
}

impl RectShape {
    pub fn new(l: usize, m: usize) -> Result<Self> {
        if l == 0 || m == 0 {
            return Err(Error::Precondition(format!(
                "rectangle needs positive sides, got {l}x{m}"
            )));
        }
        Ok(Self { l, m })
    }

    pub fn n(&self) -> usize {
        self.l * self.m
    }

    pub fn partition(&self) -> Partition {
        Partition::rectangle(self.l, self.m)
    }

    pub fn w0(&self) -> AffinePermutation {
        AffinePermutation::w0_lambda(&self.partition())
    }

    /// Errors unless `n >= 3`; the cell machinery does not apply to `n = 2`.
    pub fn require_cell_machinery(&self) -> Result<()> {
        if self.n() < 3 {
            return Err(Error::Precondition(format!(
                "shape {self} has n = {}; the rectangular cell machinery needs n >= 3",
                self.n()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for RectShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.l, self.m)
    }
}

impl FromStr for RectShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (l, m) = s
            .trim()
            .split_once(['x', 'X'])
            .ok_or_else(|| Error::Parse(format!("shape must look like LxM, got {s:?}")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad shape component {t:?}")))
        };
        Self::new(parse(l)?, parse(m)?)
    }
}

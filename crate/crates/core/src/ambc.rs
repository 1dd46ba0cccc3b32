//! The affine matrix ball correspondence restricted to rectangular cells.
//!
//! `phi_rect` never runs the general ball-insertion algorithm. It splits a
//! cell element as `phi^k(u * w0 * v)` and assembles the triple from the
//! closed formula for the left cell of `T^lambda`, the inversion rule and
//! the rotation rule.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cells::{ceil_div, in_left_cell_t, RectCell};
use crate::error::{Error, Result};
use crate::perm::{parse_int_list, strip_delims, AffinePermutation, RectShape};
use crate::tabloid::{Partition, Tabloid};

/// `(P, Q, rho)`: insertion tabloid, recording tabloid and weight.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTriple", into = "RawTriple")]
pub struct AmbcTriple {
    p: Tabloid,
    q: Tabloid,
    rho: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawTriple {
    #[serde(rename = "P")]
    p: Tabloid,
    #[serde(rename = "Q")]
    q: Tabloid,
    rho: Vec<i64>,
}

impl TryFrom<RawTriple> for AmbcTriple {
    type Error = Error;
    fn try_from(r: RawTriple) -> Result<Self> {
        Self::new(r.p, r.q, r.rho)
    }
}

impl From<AmbcTriple> for RawTriple {
    fn from(t: AmbcTriple) -> Self {
        RawTriple {
            p: t.p,
            q: t.q,
            rho: t.rho,
        }
    }
}

impl AmbcTriple {
    pub fn new(p: Tabloid, q: Tabloid, rho: Vec<i64>) -> Result<Self> {
        if p.shape() != q.shape() || p.n() != q.n() {
            return Err(Error::Precondition(format!(
                "P = {p} and Q = {q} have different shapes"
            )));
        }
        if rho.len() != p.num_rows() {
            return Err(Error::Precondition(format!(
                "weight {rho:?} has {} entries, shape has {} rows",
                rho.len(),
                p.num_rows()
            )));
        }
        let sum: i64 = rho.iter().sum();
        if sum != 0 {
            return Err(Error::Precondition(format!("weight {rho:?} sums to {sum}, not 0")));
        }
        Ok(Self { p, q, rho })
    }

    pub fn p(&self) -> &Tabloid {
        &self.p
    }

    pub fn q(&self) -> &Tabloid {
        &self.q
    }

    pub fn rho(&self) -> &[i64] {
        &self.rho
    }

    pub fn shape(&self) -> Partition {
        self.p.shape()
    }

    /// `rho - s(P) + s(Q)`.
    pub fn centralized(&self) -> Vec<i64> {
        centralize(&self.rho, &self.p, &self.q)
    }

    /// Weakly increasing centralized weight inside every segment of equal
    /// part sizes.
    pub fn is_dominant(&self) -> bool {
        let c = self.centralized();
        segments(&self.shape())
            .into_iter()
            .all(|r| c[r].windows(2).all(|w| w[0] <= w[1]))
    }

    pub fn dominant_representative(&self) -> Self {
        let mut c = self.centralized();
        for r in segments(&self.shape()) {
            c[r].sort_unstable();
        }
        Self {
            rho: decentralize(&c, &self.p, &self.q),
            ..self.clone()
        }
    }

    /// The triple of the inverse permutation: swap `P` and `Q` and take the
    /// dominant representative of `-rho`.
    pub fn invert(&self) -> Self {
        Self {
            p: self.q.clone(),
            q: self.p.clone(),
            rho: self.rho.iter().map(|x| -x).collect(),
        }
        .dominant_representative()
    }

    /// The triple of `phi^k(w)` given the triple of `w`.
    pub fn rotate(&self, k: i64) -> Self {
        let n = self.p.n() as i64;
        let k = k.rem_euclid(n) as usize;
        let rho = (1..=self.rho.len())
            .map(|i| self.rho[i - 1] + self.p.delta(i, k) - self.q.delta(i, k))
            .collect();
        Self {
            p: self.p.shift(k as i64),
            q: self.q.shift(k as i64),
            rho,
        }
    }

    /// Every triple over `(P, Q)` whose dominant representative is this
    /// one's, i.e. distinct segmentwise rearrangements of the centralized
    /// weight, in lexicographic order of the centralized weight.
    pub fn fiber(&self) -> Vec<Self> {
        let c = self.centralized();
        let segs = segments(&self.shape());
        let mut out = vec![Vec::new()];
        for r in segs {
            let mut piece = c[r].to_vec();
            piece.sort_unstable();
            let perms = distinct_permutations(&piece);
            out = out
                .into_iter()
                .cartesian_product(perms)
                .map(|(mut a, b)| {
                    a.extend(b);
                    a
                })
                .collect();
        }
        out.into_iter()
            .map(|c| Self {
                rho: decentralize(&c, &self.p, &self.q),
                ..self.clone()
            })
            .collect()
    }
}

pub(crate) fn centralize(rho: &[i64], p: &Tabloid, q: &Tabloid) -> Vec<i64> {
    let (sp, sq) = (p.symmetrized_offset(), q.symmetrized_offset());
    (0..rho.len()).map(|i| rho[i] - sp[i] + sq[i]).collect()
}

pub(crate) fn decentralize(c: &[i64], p: &Tabloid, q: &Tabloid) -> Vec<i64> {
    let (sp, sq) = (p.symmetrized_offset(), q.symmetrized_offset());
    (0..c.len()).map(|i| c[i] + sp[i] - sq[i]).collect()
}

/// Index ranges of maximal runs of equal parts.
pub fn segments(shape: &Partition) -> Vec<std::ops::Range<usize>> {
    let parts = shape.parts();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=parts.len() {
        if i == parts.len() || parts[i] != parts[start] {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// Distinct permutations of a sorted slice, in lexicographic order.
pub(crate) fn distinct_permutations(sorted: &[i64]) -> Vec<Vec<i64>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// `m! / prod(c_i!)` for the multiplicities `c_i` of a vector.
pub fn count_rearrangements(v: &[i64]) -> u64 {
    let mut total = 1u64;
    let mut placed = 0u64;
    for (_, group) in &v.iter().sorted().chunk_by(|&&x| x) {
        for t in 1..=group.count() as u64 {
            placed += 1;
            total = total * placed / t;
        }
    }
    total
}

/// Multinomial `(m; j1, j2 - j1, ..., m - js)` for cut points `js` in
/// `[1, m-1]`.
pub fn multinomial_from_cuts(m: usize, cuts: &[usize]) -> u64 {
    let mut bounds = vec![0];
    bounds.extend(cuts.iter().copied());
    bounds.push(m);
    let mut total = 1u64;
    let mut placed = 0u64;
    for w in bounds.windows(2) {
        for t in 1..=(w[1] - w[0]) as u64 {
            placed += 1;
            total = total * placed / t;
        }
    }
    total
}

impl fmt::Display for AmbcTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},({}))", self.p, self.q, self.rho.iter().join(","))
    }
}

impl fmt::Debug for AmbcTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for AmbcTriple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = strip_delims(s, '(', ')')?;
        let bad = || Error::Parse(format!("expected ({{P}},{{Q}},(rho)), got {s:?}"));
        let p_end = body.find('}').ok_or_else(bad)?;
        let p: Tabloid = body[..=p_end].parse()?;
        let rest = body[p_end + 1..].trim_start().strip_prefix(',').ok_or_else(bad)?;
        let q_end = rest.find('}').ok_or_else(bad)?;
        let q: Tabloid = rest[..=q_end].parse()?;
        let rest = rest[q_end + 1..].trim_start().strip_prefix(',').ok_or_else(bad)?;
        let rho = parse_int_list(strip_delims(rest, '(', ')')?)?;
        Self::new(p, q, rho)
    }
}

/// Closed formula on the left cell of `T^lambda`: `Q = T^lambda`,
/// `P_i = {w(jm + 1 - i)}`, `rho_i = sum_j ceil(w(jm + 1 - i) / n) - l`.
pub fn phi_special(w: &AffinePermutation, shape: RectShape) -> Result<AmbcTriple> {
    if !in_left_cell_t(w, shape) {
        return Err(Error::Precondition(format!(
            "{w} is not in the left cell of T^lambda for {shape}"
        )));
    }
    let (l, m, n) = (shape.l as i64, shape.m as i64, shape.n() as i64);
    let mut rows = Vec::with_capacity(shape.m);
    let mut rho = Vec::with_capacity(shape.m);
    for i in 1..=m {
        let vals: Vec<i64> = (1..=l).map(|j| w.eval(j * m + 1 - i)).collect();
        rho.push(vals.iter().map(|&v| ceil_div(v, n)).sum::<i64>() - l);
        rows.push(vals);
    }
    AmbcTriple::new(
        Tabloid::from_rows(rows)?,
        Tabloid::t_lambda(&shape.partition()),
        rho,
    )
}

/// `sum_j ceil(u(1 + jm) / n) - l`, the constant centralized weight of
/// `u * w0` for `u` in the inverse fundamental box.
pub fn fbox_weight(u: &AffinePermutation, shape: RectShape) -> i64 {
    let (l, m, n) = (shape.l as i64, shape.m as i64, shape.n() as i64);
    (0..l).map(|j| ceil_div(u.eval(1 + j * m), n)).sum::<i64>() - l
}

/// Full correspondence on the rectangular two-sided cell.
pub fn phi_rect(cell: &RectCell, x: &AffinePermutation) -> Result<AmbcTriple> {
    let shape = cell.shape();
    let d = cell.decompose(x)?;
    let w0 = cell.w0();
    let left = phi_special(&d.u.compose_unchecked(w0), shape)?;
    let right = phi_special(&d.v.inverse().compose_unchecked(w0), shape)?.invert();
    let rho = left.rho.iter().zip(&right.rho).map(|(a, b)| a + b).collect();
    let t = AmbcTriple::new(left.p, right.q, rho)?.rotate(d.k as i64);
    if !t.is_dominant() {
        return Err(Error::Inconsistency(format!(
            "assembled triple {t} for {x} is not dominant"
        )));
    }
    Ok(t)
}

/// Which way the wrap case of the Knuth transport moves weight when the
/// exchanged pair is `(n, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WrapSign {
    /// Add 1 at the row of `n`, subtract 1 at the row of `1` (rows read in
    /// the old `P`).
    #[default]
    AddAtN,
    /// The opposite assignment.
    AddAtOne,
}

/// The triple of `s_k w` from the triple of `w`, where the left Knuth move
/// exchanges `i` and `i + 1` in `P`.
pub fn knuth_transport(t: &AmbcTriple, i: usize, sign: WrapSign) -> Result<AmbcTriple> {
    let n = t.p.n();
    let i = (i + n - 1) % n + 1;
    let p = t.p.knuth_move(i).ok_or_else(|| {
        Error::Precondition(format!(
            "exchanging {i} and {} in {} is not a Knuth move",
            i % n + 1,
            t.p
        ))
    })?;
    let mut rho = t.rho.clone();
    if i == n {
        let (row_n, row_1) = (t.p.row_of(n as i64), t.p.row_of(1));
        let (plus, minus) = match sign {
            WrapSign::AddAtN => (row_n, row_1),
            WrapSign::AddAtOne => (row_1, row_n),
        };
        rho[plus - 1] += 1;
        rho[minus - 1] -= 1;
    }
    AmbcTriple::new(p, t.q.clone(), rho)
}

/// `#Psi^{-1}(x)`, from the excess positions of the right factor and,
/// independently, from the rearrangements of the centralized weight.
pub fn fiber_size(cell: &RectCell, x: &AffinePermutation) -> Result<u64> {
    let shape = cell.shape();
    let d = cell.decompose(x)?;
    let cuts: Vec<usize> = crate::cells::excess_vector(&d.v.inverse(), shape)
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(j, _)| j + 1)
        .collect();
    let by_cuts = multinomial_from_cuts(shape.m, &cuts);
    let by_weight = count_rearrangements(&phi_rect(cell, x)?.centralized());
    if by_cuts != by_weight {
        return Err(Error::Inconsistency(format!(
            "fiber size of {x}: {by_cuts} from excess positions, {by_weight} from the weight"
        )));
    }
    Ok(by_cuts)
}

//! Tabloids: row-equivalence classes of fillings by residues mod `n`.
//!
//! Rows are stored as sorted residues in `[1, n]`. Column indices extend
//! periodically, `X_{i, j + k*len} = X_{i,j} + k*n`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::budget::{check_budget, Budget};
use crate::error::{Error, Result};
use crate::perm::strip_delims;

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Precondition(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self(parts))
    }

    /// `(l^m)`: `m` parts equal to `l`.
    pub fn rectangle(l: usize, m: usize) -> Self {
        Self(vec![l; m])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn transpose(&self) -> Self {
        let first = self.0.first().copied().unwrap_or(0);
        Self((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// Number of tabloids of this shape, `n! / prod(parts!)`.
    pub fn multinomial(&self) -> u128 {
        let mut acc = 1u128;
        let mut placed = 0u128;
        for &p in &self.0 {
            for t in 1..=p as u128 {
                placed += 1;
                acc = acc * placed / t;
            }
        }
        acc
    }

    /// The gcd of the transpose parts.
    pub fn d(&self) -> usize {
        self.transpose().0.iter().fold(0, |a, &b| gcd(a, b))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tabloid {
    rows: Vec<Vec<usize>>,
    n: usize,
}

impl Tabloid {
    /// Builds a tabloid from rows of residues. Entries may be any integers;
    /// they are reduced into `[1, n]`, with `n` the total number of entries.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.iter().map(Vec::len).sum::<usize>();
        if n == 0 {
            return Err(Error::InvalidTabloid("no entries".into()));
        }
        if rows.iter().any(Vec::is_empty) {
            return Err(Error::InvalidTabloid("empty row".into()));
        }
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::InvalidTabloid(
                "row lengths must be weakly decreasing".into(),
            ));
        }
        let nn = n as i64;
        let mut seen = vec![false; n + 1];
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let mut r: Vec<usize> = row
                .iter()
                .map(|&x| ((x - 1).rem_euclid(nn) + 1) as usize)
                .collect();
            r.sort_unstable();
            for &x in &r {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidTabloid(format!(
                        "residue {x} appears twice (n = {n})"
                    )));
                }
            }
            out.push(r);
        }
        Ok(Self { rows: out, n })
    }

    fn from_sorted_unchecked(rows: Vec<Vec<usize>>, n: usize) -> Self {
        Self { rows, n }
    }

    /// `T^lambda`: residues `1, 2, ...` written down the columns.
    pub fn t_lambda(shape: &Partition) -> Self {
        let mut rows = vec![Vec::new(); shape.len()];
        let mut next = 1;
        for col in 0..shape.parts().first().copied().unwrap_or(0) {
            for (i, &len) in shape.parts().iter().enumerate() {
                if len > col {
                    rows[i].push(next);
                    next += 1;
                }
            }
        }
        rows.iter_mut().for_each(|r| r.sort_unstable());
        Self::from_sorted_unchecked(rows, shape.size())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(Vec::len).collect())
    }

    /// Extended entry `X_{i,j}`, `i` 1-based, `j` any integer.
    pub fn entry(&self, i: usize, j: i64) -> Result<i64> {
        let row = self
            .rows
            .get(i.wrapping_sub(1))
            .ok_or_else(|| Error::OutOfRange(format!("row {i} of a {}-row tabloid", self.rows.len())))?;
        Ok(extended(row, self.n, j))
    }

    /// 1-based row containing residue `r` (reduced mod `n`).
    pub fn row_of(&self, r: i64) -> usize {
        let r = ((r - 1).rem_euclid(self.n as i64) + 1) as usize;
        self.rows
            .iter()
            .position(|row| row.binary_search(&r).is_ok())
            .expect("rows partition the residues")
            + 1
    }

    /// `X + k`.
    pub fn shift(&self, k: i64) -> Self {
        let n = self.n as i64;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| ((x as i64 + k - 1).rem_euclid(n) + 1) as usize)
                    .sorted_unstable()
                    .collect()
            })
            .collect();
        Self::from_sorted_unchecked(rows, self.n)
    }

    /// Relabels entries by `sigma`, given as a 1-based table of images.
    pub fn act(&self, sigma: &[usize]) -> Result<Self> {
        if sigma.len() != self.n {
            return Err(Error::Precondition(format!(
                "permutation of {} letters acting on a tabloid with n = {}",
                sigma.len(),
                self.n
            )));
        }
        let distinct: BTreeSet<_> = sigma.iter().collect();
        if distinct.len() != self.n || sigma.iter().any(|&x| x == 0 || x > self.n) {
            return Err(Error::Precondition(format!("{sigma:?} is not a bijection of [1, n]")));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|&x| sigma[x - 1]).sorted_unstable().collect())
            .collect();
        Ok(Self::from_sorted_unchecked(rows, self.n))
    }

    /// Residues `i` whose row lies strictly above the row of `i + 1`.
    pub fn tau_invariant(&self) -> BTreeSet<usize> {
        (1..=self.n)
            .filter(|&i| self.row_of(i as i64) < self.row_of(i as i64 + 1))
            .collect()
    }

    /// `lch_i`, `i` in `[1, rows - 1]`; zero when the two rows differ in length.
    pub fn local_charge(&self, i: usize) -> i64 {
        assert!(
            i >= 1 && i < self.rows.len(),
            "local charge index {i} out of range for {} rows",
            self.rows.len()
        );
        let (upper, lower) = (&self.rows[i - 1], &self.rows[i]);
        if upper.len() != lower.len() {
            return 0;
        }
        // For each j the condition X_{i+1, j+g} >= X_{i,j} holds exactly when
        // j + g reaches the first column of row i+1 at or above X_{i,j}.
        upper
            .iter()
            .enumerate()
            .map(|(j, &x)| {
                let t = 1 + lower.partition_point(|&y| y < x) as i64;
                t - (j as i64 + 1)
            })
            .max()
            .unwrap_or(0)
    }

    pub fn local_charges(&self) -> Vec<i64> {
        (1..self.rows.len()).map(|i| self.local_charge(i)).collect()
    }

    /// `s(X)`: partial sums of local charges inside each segment of equal
    /// row lengths.
    pub fn symmetrized_offset(&self) -> Vec<i64> {
        let lch = self.local_charges();
        let mut s = vec![0; self.rows.len()];
        for i in 1..self.rows.len() {
            if self.rows[i].len() == self.rows[i - 1].len() {
                s[i] = s[i - 1] + lch[i - 1];
            }
        }
        s
    }

    pub fn charge(&self) -> i64 {
        self.local_charges()
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as i64 + 1) * c)
            .sum()
    }

    /// Swaps `i` and `i + 1` when the tau-invariants before and after are
    /// incomparable under inclusion.
    pub fn knuth_move(&self, i: usize) -> Option<Self> {
        let swapped = self.swap_residues(i);
        let (a, b) = (self.tau_invariant(), swapped.tau_invariant());
        if a.is_subset(&b) || b.is_subset(&a) {
            None
        } else {
            Some(swapped)
        }
    }

    /// Exchanges the residues `i` and `i + 1` (mod `n`) unconditionally.
    pub fn swap_residues(&self, i: usize) -> Self {
        let n = self.n;
        let a = (i + n - 1) % n + 1;
        let b = a % n + 1;
        let sigma: Vec<usize> = (1..=n)
            .map(|x| if x == a { b } else if x == b { a } else { x })
            .collect();
        self.act(&sigma).expect("transposition is a bijection")
    }

    /// Number of entries of row `i` in `[n - k + 1, n]`.
    pub fn delta(&self, i: usize, k: usize) -> i64 {
        let lo = self.n + 1 - k.min(self.n);
        self.rows[i - 1].iter().filter(|&&x| x >= lo).count() as i64
    }

    /// Every tabloid of the given shape, in lexicographic order of rows.
    pub fn enumerate(shape: &Partition, budget: Budget) -> Result<Vec<Self>> {
        check_budget("enumerating tabloids", shape.multinomial(), budget)?;
        let n = shape.size();
        let mut out = Vec::new();
        let mut rows = Vec::with_capacity(shape.len());
        fill(shape.parts(), (1..=n).collect(), &mut rows, n, &mut out);
        Ok(out)
    }
}

fn fill(
    parts: &[usize],
    remaining: Vec<usize>,
    rows: &mut Vec<Vec<usize>>,
    n: usize,
    out: &mut Vec<Tabloid>,
) {
    let Some((&len, rest)) = parts.split_first() else {
        out.push(Tabloid::from_sorted_unchecked(rows.clone(), n));
        return;
    };
    for row in remaining.iter().copied().combinations(len) {
        let left = remaining.iter().copied().filter(|x| !row.contains(x)).collect();
        rows.push(row);
        fill(rest, left, rows, n, out);
        rows.pop();
    }
}

fn extended(row: &[usize], n: usize, j: i64) -> i64 {
    let len = row.len() as i64;
    let q = (j - 1).div_euclid(len);
    let r = (j - 1).rem_euclid(len) as usize;
    row[r] as i64 + q * n as i64
}

impl fmt::Display for Tabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}}}",
            self.rows.iter().map(|r| r.iter().join(",")).join("|")
        )
    }
}

impl fmt::Debug for Tabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Tabloid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = strip_delims(s, '{', '}')?;
        let rows = body
            .split('|')
            .map(crate::perm::parse_int_list)
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }
}

impl Serialize for Tabloid {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Tabloid {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(deserializer)?;
        Self::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

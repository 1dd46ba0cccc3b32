//! Labels `F^c(Y_w)` of irreducible components, pairs of them modulo common
//! translations, their relative positions and the maps to tabloids and
//! triples.
//!
//! A label is any `(w, c)` with `w` in the fundamental box and `c` an
//! integer vector; its normal form has `min(c) = 0`, obtained from
//! `F^{1}(Y_w) = Y_{phi^m(w)}`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::ambc::{decentralize, multinomial_from_cuts, AmbcTriple};
use crate::cells::{act_on_t_lambda, alcove_wall, in_w0_r, nested_product, RectCell};
use crate::error::{Error, Result};
use crate::perm::{parse_int_list, strip_delims, AffinePermutation, RectShape};
use crate::tabloid::Tabloid;

/// `F^c(Y_w)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComponentLabel {
    pub w: AffinePermutation,
    pub c: Vec<i64>,
}

impl ComponentLabel {
    pub fn new(w: AffinePermutation, c: Vec<i64>) -> Self {
        Self { w, c }
    }

    pub fn weight(&self) -> i64 {
        self.c.iter().sum()
    }

    /// The same component with `c` moved by `t`.
    pub fn translate(&self, t: &[i64]) -> Self {
        Self {
            w: self.w.clone(),
            c: self.c.iter().zip(t).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w:{};c:({})", self.w, self.c.iter().join(","))
    }
}

impl fmt::Debug for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `w:[..];c:(..)` and the short form `[..]:(..)`.
impl FromStr for ComponentLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (w, c) = if let Some(rest) = s.strip_prefix("w:") {
            rest.split_once(";c:")
                .ok_or_else(|| Error::Parse(format!("expected w:[..];c:(..), got {s:?}")))?
        } else {
            let close = s
                .find(']')
                .ok_or_else(|| Error::Parse(format!("expected [..]:(..), got {s:?}")))?;
            let rest = s[close + 1..].trim_start();
            let rest = rest
                .strip_prefix(':')
                .ok_or_else(|| Error::Parse(format!("expected [..]:(..), got {s:?}")))?;
            (&s[..=close], rest)
        };
        Ok(Self {
            w: w.parse()?,
            c: parse_int_list(strip_delims(c, '(', ')')?)?,
        })
    }
}

/// Canonical representative of a pair `(F^{1_k}(Y_{w1}), F^c(Y_{w2}))`
/// modulo common translations: `k` in `[0, m-1]`, `c >= 0`, `min(c) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairRep {
    pub k: usize,
    pub w1: AffinePermutation,
    pub c: Vec<i64>,
    pub w2: AffinePermutation,
}

impl PairRep {
    pub fn first(&self, m: usize) -> ComponentLabel {
        ComponentLabel::new(self.w1.clone(), ones(m, self.k))
    }

    pub fn second(&self) -> ComponentLabel {
        ComponentLabel::new(self.w2.clone(), self.c.clone())
    }
}

impl fmt::Display for PairRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={}; w1={}; c=({}); w2={}",
            self.k,
            self.w1,
            self.c.iter().join(","),
            self.w2
        )
    }
}

/// How `(c - 1_k)` enters the weight of `Theta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RevReading {
    /// Coordinates in reverse order.
    #[default]
    TupleReverse,
    /// The decreasing rearrangement.
    SortedDescending,
}

/// `1_k`: ones in the first `k` of `m` coordinates.
pub fn ones(m: usize, k: usize) -> Vec<i64> {
    (0..m).map(|i| i64::from(i < k)).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn check_label(cell: &RectCell, label: &ComponentLabel) -> Result<()> {
    if label.c.len() != cell.shape().m {
        return Err(Error::Precondition(format!(
            "label {label} has {} coordinates, expected m = {}",
            label.c.len(),
            cell.shape().m
        )));
    }
    if !cell.contains_fbox(&label.w) {
        return Err(Error::Precondition(format!(
            "{} is not in the fundamental box for {}",
            label.w,
            cell.shape()
        )));
    }
    Ok(())
}

/// Moves `min(c)` into `w`: `(w, c) -> (phi^{m min c}(w), c - min c)`.
pub fn normalize(cell: &RectCell, label: &ComponentLabel) -> Result<ComponentLabel> {
    check_label(cell, label)?;
    let lo = *label.c.iter().min().expect("m >= 1");
    let w = label.w.rotate(cell.shape().m as i64 * lo);
    if !cell.contains_fbox(&w) {
        return Err(Error::Inconsistency(format!(
            "phi^(m*{lo}) moved {} out of the fundamental box",
            label.w
        )));
    }
    Ok(ComponentLabel::new(w, label.c.iter().map(|x| x - lo).collect()))
}

/// The multiset of `k`s for a weight vector: `i` repeated `c'_i - c'_{i+1}`
/// times with `c'` the decreasing rearrangement.
pub fn peel_multiset(c: &[i64]) -> Vec<usize> {
    let sorted: Vec<i64> = c.iter().copied().sorted_unstable_by(|a, b| b.cmp(a)).collect();
    sorted
        .windows(2)
        .enumerate()
        .flat_map(|(i, p)| std::iter::repeat_n(i + 1, (p[0] - p[1]) as usize))
        .collect()
}

/// The `w` in `w0 R_{T^lambda}` whose orbit closure contains `F^c(Y_{w2})`.
pub fn orbit_of_label(cell: &RectCell, label: &ComponentLabel) -> Result<AffinePermutation> {
    let label = normalize(cell, label)?;
    let ks = peel_multiset(&label.c);
    nested_product(&label.w, &ks, cell.shape())
}

/// Translates a pair so the first label becomes `F^{1_k}(Y_{w1})`, then
/// normalizes the second.
pub fn orbit_rep_pair(cell: &RectCell, c1: &ComponentLabel, c2: &ComponentLabel) -> Result<PairRep> {
    check_label(cell, c1)?;
    check_label(cell, c2)?;
    let m = cell.shape().m as i64;
    let total = c1.weight();
    let (alpha, beta) = (total.div_euclid(m), total.rem_euclid(m) as usize);
    let t: Vec<i64> = sub(&c1.c, &ones(m as usize, beta))
        .into_iter()
        .map(|x| x - alpha)
        .collect();
    let w1 = c1.w.rotate(m * alpha);
    let second = normalize(cell, &ComponentLabel::new(c2.w.clone(), sub(&c2.c, &t)))?;
    Ok(PairRep {
        k: beta,
        w1,
        c: second.c,
        w2: second.w,
    })
}

fn check_rep(cell: &RectCell, rep: &PairRep) -> Result<()> {
    let m = cell.shape().m;
    if rep.k >= m {
        return Err(Error::Precondition(format!("k = {} not in [0, {}]", rep.k, m - 1)));
    }
    if rep.c.len() != m || rep.c.iter().any(|&x| x < 0) || rep.c.iter().min() != Some(&0) {
        return Err(Error::Precondition(format!(
            "pair representative needs c >= 0 with min 0 and m = {m} entries, got {:?}",
            rep.c
        )));
    }
    for w in [&rep.w1, &rep.w2] {
        if !cell.contains_fbox(w) {
            return Err(Error::Precondition(format!("{w} is not in the fundamental box")));
        }
    }
    Ok(())
}

/// Relative position by the product formula
/// `phi^k(w1^{-1} w0 W)`, `W` the orbit element of `F^{c - 1_k}(Y_{w2})`.
pub fn rel_pos_rep(cell: &RectCell, rep: &PairRep) -> Result<AffinePermutation> {
    check_rep(cell, rep)?;
    let m = cell.shape().m;
    let inner = ComponentLabel::new(rep.w2.clone(), sub(&rep.c, &ones(m, rep.k)));
    let big_w = orbit_of_label(cell, &inner)?;
    Ok(rep
        .w1
        .inverse()
        .compose_unchecked(cell.w0())
        .compose_unchecked(&big_w)
        .rotate(rep.k as i64))
}

pub fn rel_pos(cell: &RectCell, c1: &ComponentLabel, c2: &ComponentLabel) -> Result<AffinePermutation> {
    rel_pos_rep(cell, &orbit_rep_pair(cell, c1, c2)?)
}

/// `delta^alpha_i(u) = #{ j : u(i + jm) mod n in [n - alpha + 1, n] }`.
pub fn delta(u: &AffinePermutation, shape: RectShape, alpha: usize, i: usize) -> i64 {
    let (l, m, n) = (shape.l, shape.m, shape.n());
    (0..l)
        .filter(|&j| u.residue((i + j * m) as i64) > n - alpha)
        .count() as i64
}

/// The constant `rho~(u w0)` for `u` in the inverse fundamental box.
fn box_weight(u: &AffinePermutation, shape: RectShape) -> i64 {
    crate::ambc::fbox_weight(u, shape)
}

/// The scalar part of the closed formula, so that the centralized weight is
/// `scalar * 1 + e` with `e` built from `c - 1_k`.
fn closed_form_scalar(rep: &PairRep, shape: RectShape) -> i64 {
    let (l, n) = (shape.l as i64, shape.n() as i64);
    let (u1, u2) = (rep.w1.inverse(), rep.w2.inverse());
    let total: i64 = rep.c.iter().sum();
    let big_k = total.div_euclid(n) * l + delta(&u2, shape, total.rem_euclid(n) as usize, 1)
        - delta(&u1, shape, rep.k, 1);
    // -rho~(w0 w1) + rho~(w0 w2) = box_weight(u1) - box_weight(u2)
    box_weight(&u1, shape) - box_weight(&u2, shape) - big_k
}

fn closed_form_tabloids(rep: &PairRep, shape: RectShape) -> (Tabloid, Tabloid) {
    let total: i64 = rep.c.iter().sum();
    (
        act_on_t_lambda(&rep.w1.inverse(), shape).shift(rep.k as i64),
        act_on_t_lambda(&rep.w2.inverse(), shape).shift(total),
    )
}

fn closed_form(rep: &PairRep, shape: RectShape, e: Vec<i64>) -> Result<AmbcTriple> {
    let scalar = closed_form_scalar(rep, shape);
    let (p, q) = closed_form_tabloids(rep, shape);
    let centralized: Vec<i64> = e.iter().map(|x| x + scalar).collect();
    let rho = decentralize(&centralized, &p, &q);
    AmbcTriple::new(p, q, rho)
}

/// Closed formula for the triple of the relative position, with the
/// increasing rearrangement of `c - 1_k`.
pub fn rel_pos_triple(cell: &RectCell, rep: &PairRep) -> Result<AmbcTriple> {
    check_rep(cell, rep)?;
    let e = sub(&rep.c, &ones(cell.shape().m, rep.k)).into_iter().sorted_unstable().collect();
    closed_form(rep, cell.shape(), e)
}

fn read_rev(v: Vec<i64>, reading: RevReading) -> Vec<i64> {
    match reading {
        RevReading::TupleReverse => v.into_iter().rev().collect(),
        RevReading::SortedDescending => v.into_iter().sorted_unstable_by(|a, b| b.cmp(a)).collect(),
    }
}

/// `Theta`: as [`rel_pos_triple`] but with `c - 1_k` read through `reading`.
pub fn theta_big(cell: &RectCell, rep: &PairRep, reading: RevReading) -> Result<AmbcTriple> {
    check_rep(cell, rep)?;
    let e = read_rev(sub(&rep.c, &ones(cell.shape().m, rep.k)), reading);
    closed_form(rep, cell.shape(), e)
}

/// `theta(F^c(Y_w)) = overline(w^{-1})(T^lambda) + |c|`.
pub fn theta(cell: &RectCell, label: &ComponentLabel) -> Result<Tabloid> {
    check_label(cell, label)?;
    let shape = cell.shape();
    let m = shape.m as i64;
    let total = label.weight();
    let (alpha, beta) = (total.div_euclid(m), total.rem_euclid(m));
    Ok(act_on_t_lambda(&label.w.inverse().rotate(m * alpha), shape).shift(beta))
}

/// Default search bound on `alpha` in [`theta_big_inverse`].
pub fn default_alpha_bound(t: &AmbcTriple, m: usize) -> i64 {
    let spread = t.centralized().iter().map(|x| x.abs()).max().unwrap_or(0);
    2 * spread + m as i64 + 2
}

/// `Theta^{-1}`: recovers `k` and `w1` from `P`, the residue of `|c|` from
/// `Q`, then scans `|c| = m alpha + beta` for `alpha` in `[0, alpha_max]`.
pub fn theta_big_inverse(
    cell: &RectCell,
    t: &AmbcTriple,
    alpha_max: Option<i64>,
    reading: RevReading,
) -> Result<PairRep> {
    let shape = cell.shape();
    let m = shape.m as i64;
    if t.p().shape() != shape.partition() || t.p().n() != shape.n() {
        return Err(Error::Precondition(format!(
            "triple {t} does not have shape {}",
            shape.partition()
        )));
    }
    let k = (-t.p().charge()).rem_euclid(m);
    let w1 = crate::cells::fbox_from_tabloid(&t.p().shift(-k))?.inverse();
    let beta = (-t.q().charge()).rem_euclid(m);
    let bound = alpha_max.unwrap_or_else(|| default_alpha_bound(t, shape.m));
    let target = t.centralized();
    let mut found: Option<PairRep> = None;
    for alpha in 0..=bound {
        let total = m * alpha + beta;
        let w2 = crate::cells::fbox_from_tabloid(&t.q().shift(-total))?.inverse();
        let probe = PairRep {
            k: k as usize,
            w1: w1.clone(),
            c: vec![0; shape.m],
            w2,
        };
        // The scalar depends on c only through |c|.
        let mut probe_with_total = probe.clone();
        probe_with_total.c[0] = total;
        let scalar = closed_form_scalar(&probe_with_total, shape);
        let e_read: Vec<i64> = target.iter().map(|x| x - scalar).collect();
        let e: Vec<i64> = match reading {
            RevReading::TupleReverse => e_read.into_iter().rev().collect(),
            RevReading::SortedDescending => e_read.into_iter().sorted_unstable().collect(),
        };
        let c: Vec<i64> = e.iter().zip(ones(shape.m, k as usize)).map(|(a, b)| a + b).collect();
        if c.iter().any(|&x| x < 0) || c.iter().min() != Some(&0) || c.iter().sum::<i64>() != total {
            continue;
        }
        let rep = PairRep { c, ..probe };
        if theta_big(cell, &rep, reading)? != *t {
            continue;
        }
        if let Some(prev) = &found {
            return Err(Error::Inconsistency(format!(
                "two preimages of {t}: {prev} and {rep}"
            )));
        }
        found = Some(rep);
    }
    found.ok_or_else(|| Error::SearchBound {
        bound,
        detail: format!("no component pair maps to {t}"),
    })
}

/// `Psi` on rectangular triples, through `Theta^{-1}` and the relative
/// position.
pub fn psi_rect(cell: &RectCell, t: &AmbcTriple, alpha_max: Option<i64>) -> Result<AffinePermutation> {
    let rep = theta_big_inverse(cell, t, alpha_max, RevReading::default())?;
    rel_pos_rep(cell, &rep)
}

/// `m! / #S_I` with `I` the indices whose wall alcove equation holds.
pub fn num_components_in_orbit(v: &AffinePermutation, shape: RectShape) -> Result<u64> {
    if !in_w0_r(v, shape) {
        return Err(Error::Precondition(format!(
            "{v} does not satisfy the chain and block alcove equations for {shape}"
        )));
    }
    let u = v.inverse();
    let cuts: Vec<usize> = (1..shape.m).filter(|&i| !alcove_wall(&u, shape, i)).collect();
    Ok(multinomial_from_cuts(shape.m, &cuts))
}

/// The three criteria for `(c1, c2) ~ (d1, d2)` modulo translations and the
/// symmetric group.
pub fn pairs_equivalent(
    cell: &RectCell,
    c1: &ComponentLabel,
    c2: &ComponentLabel,
    d1: &ComponentLabel,
    d2: &ComponentLabel,
) -> Result<bool> {
    for l in [c1, c2, d1, d2] {
        check_label(cell, l)?;
    }
    let m = cell.shape().m as i64;
    let same_base = |a: &ComponentLabel, b: &ComponentLabel| {
        a.w.rotate(a.weight()) == b.w.rotate(b.weight())
    };
    let first = same_base(c1, d1) && same_base(c2, d2);
    let second = (c1.weight() - d1.weight()) % m == 0 && (c2.weight() - d2.weight()) % m == 0;
    let x: Vec<i64> = sub(&c2.c, &c1.c).into_iter().sorted_unstable().collect();
    let y: Vec<i64> = sub(&d2.c, &d1.c).into_iter().sorted_unstable().collect();
    let diff = sub(&x, &y);
    let third = diff.iter().all_equal();
    Ok(first && second && third)
}

/// Every pair representative with `c` bounded entrywise by `bound`, in a
/// fixed order.
pub fn enumerate_pair_reps(cell: &RectCell, bound: i64) -> Vec<PairRep> {
    let m = cell.shape().m;
    let cs: Vec<Vec<i64>> = (0..m)
        .map(|_| 0..=bound)
        .multi_cartesian_product()
        .filter(|c| c.iter().min() == Some(&0))
        .collect();
    let mut out = Vec::new();
    for k in 0..m {
        for w1 in cell.fbox() {
            for w2 in cell.fbox() {
                for c in &cs {
                    out.push(PairRep {
                        k,
                        w1: w1.clone(),
                        c: c.clone(),
                        w2: w2.clone(),
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambc::phi_rect;

    fn p(s: &str) -> AffinePermutation {
        s.parse().unwrap()
    }

    fn cell(l: usize, m: usize) -> RectCell {
        RectCell::new(RectShape::new(l, m).unwrap(), u128::MAX).unwrap()
    }

    fn example_one() -> (ComponentLabel, ComponentLabel) {
        (
            ComponentLabel::new(AffinePermutation::identity(6), vec![0, 0, 0]),
            ComponentLabel::new(p("[0,1,4,3,5,8]").inverse(), vec![5, 2, 0]),
        )
    }

    #[test]
    fn label_parsing() {
        let a: ComponentLabel = "w:[1,2,3,4];c:(0,1)".parse().unwrap();
        let b: ComponentLabel = "[1,2,3,4]:(0,1)".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "w:[1,2,3,4];c:(0,1)");
        assert!("[1,2,3,4](0,1)".parse::<ComponentLabel>().is_err());
    }

    #[test]
    fn normalization() {
        let cell = cell(2, 3);
        let w = p("[0,1,4,3,5,8]").inverse();
        let n = normalize(&cell, &ComponentLabel::new(w.clone(), vec![1, 1, 1])).unwrap();
        assert_eq!(n, ComponentLabel::new(w.rotate(3), vec![0, 0, 0]));
        let n = normalize(&cell, &ComponentLabel::new(w.clone(), vec![2, 1, 3])).unwrap();
        assert_eq!(n, ComponentLabel::new(w.rotate(3), vec![1, 0, 2]));
        let done = ComponentLabel::new(w, vec![0, 2, 5]);
        assert_eq!(normalize(&cell, &done).unwrap(), done);
    }

    #[test]
    fn orbit_example() {
        let cell = cell(2, 3);
        let (_, c2) = example_one();
        assert_eq!(peel_multiset(&c2.c), vec![1, 1, 1, 2, 2]);
        let w = orbit_of_label(&cell, &c2).unwrap();
        assert_eq!(w.inverse(), p("[-8,2,11,-5,6,15]"));
        let w_id = orbit_of_label(&cell, &ComponentLabel::new(c2.w.clone(), vec![0, 0, 0])).unwrap();
        assert_eq!(w_id, c2.w);
    }

    #[test]
    fn worked_example_one() {
        let cell = cell(2, 3);
        let (c1, c2) = example_one();
        let rep = orbit_rep_pair(&cell, &c1, &c2).unwrap();
        assert_eq!(rep.k, 0);
        let x = rel_pos_rep(&cell, &rep).unwrap();
        assert_eq!(x, p("[12,2,-8,15,-5,5]"));
        let expected: AmbcTriple = "({1,4|2,5|3,6},{1,4|2,6|3,5},(-2,0,2))".parse().unwrap();
        assert_eq!(rel_pos_triple(&cell, &rep).unwrap(), expected);
        assert_eq!(phi_rect(&cell, &x).unwrap(), expected);
        let th = theta_big(&cell, &rep, RevReading::TupleReverse).unwrap();
        assert_eq!(th.dominant_representative(), expected);
        assert_eq!(theta_big_inverse(&cell, &th, None, RevReading::TupleReverse).unwrap(), rep);
    }

    #[test]
    fn worked_example_two() {
        let cell = cell(2, 3);
        let c1 = ComponentLabel::new(p("[-1,2,4,3,6,7]").inverse(), vec![1, 1, 0]);
        let c2 = ComponentLabel::new(p("[0,1,4,3,5,8]").inverse(), vec![0, 2, 5]);
        let rep = orbit_rep_pair(&cell, &c1, &c2).unwrap();
        assert_eq!((rep.k, rep.c.clone()), (2, vec![0, 2, 5]));
        let x = rel_pos(&cell, &c1, &c2).unwrap();
        assert_eq!(x, p("[15,2,-11,18,-7,4]"));
        let expected: AmbcTriple = "({1,5|2,4|3,6},{1,4|2,6|3,5},(-3,0,3))".parse().unwrap();
        assert_eq!(rel_pos_triple(&cell, &rep).unwrap(), expected);
        assert_eq!(phi_rect(&cell, &x).unwrap(), expected);
        assert_eq!(theta(&cell, &c1).unwrap(), "{1,5|2,4|3,6}".parse().unwrap());
    }

    #[test]
    fn identity_pair() {
        let cell = cell(2, 2);
        let id = AffinePermutation::identity(4);
        let y = ComponentLabel::new(id.clone(), vec![0, 0]);
        assert_eq!(rel_pos(&cell, &y, &y).unwrap(), *cell.w0());
        assert_eq!(theta(&cell, &y).unwrap(), Tabloid::t_lambda(&cell.shape().partition()));
        let tl = Tabloid::t_lambda(&cell.shape().partition());
        let t = AmbcTriple::new(tl.clone(), tl, vec![0, 0]).unwrap();
        let rep = theta_big_inverse(&cell, &t, None, RevReading::TupleReverse).unwrap();
        assert_eq!(rep, PairRep { k: 0, w1: id.clone(), c: vec![0, 0], w2: id });
        assert_eq!(psi_rect(&cell, &t, None).unwrap(), *cell.w0());
    }

    #[test]
    fn component_counts() {
        let shape = RectShape::new(2, 3).unwrap();
        let w = p("[-8,2,11,-5,6,15]").inverse();
        assert_eq!(num_components_in_orbit(&w, shape).unwrap(), 6);
        assert_eq!(num_components_in_orbit(&AffinePermutation::identity(6), shape).unwrap(), 1);
        assert!(num_components_in_orbit(&shape.w0(), shape).is_err());
    }

    #[test]
    fn equivalence_basics() {
        let cell = cell(2, 3);
        let (c1, c2) = example_one();
        assert!(pairs_equivalent(&cell, &c1, &c2, &c1, &c2).unwrap());
        let t = [2, -1, -1];
        assert!(pairs_equivalent(&cell, &c1, &c2, &c1.translate(&t), &c2.translate(&t)).unwrap());
        let other = ComponentLabel::new(c2.w.clone(), vec![5, 0, 2]);
        assert!(pairs_equivalent(&cell, &c1, &c2, &c1, &other).unwrap());
        let far = ComponentLabel::new(c2.w.clone(), vec![5, 1, 0]);
        assert!(!pairs_equivalent(&cell, &c1, &c2, &c1, &far).unwrap());
    }

    #[test]
    fn pair_enumeration_size() {
        assert_eq!(enumerate_pair_reps(&cell(2, 2), 4).len(), 2 * 3 * 3 * 9);
    }
}

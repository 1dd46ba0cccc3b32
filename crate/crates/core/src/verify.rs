//! Self-checks grouped into suites. Each check records a description, a
//! verdict and a short detail string; an error inside a check counts as a
//! failure rather than aborting the suite.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ambc::{fiber_size, knuth_transport, phi_rect, phi_special, AmbcTriple, WrapSign};
use crate::budget::{default_budget, Budget};
use crate::cells::{
    act_on_t_lambda, alcove_wall, excess_vector, fbox_from_tabloid, in_fundamental_box,
    iterative_factorization, shape_of, RectCell,
};
use crate::components::{
    enumerate_pair_reps, num_components_in_orbit, orbit_of_label, pairs_equivalent, rel_pos,
    rel_pos_rep, rel_pos_triple, theta, theta_big, theta_big_inverse, ComponentLabel, PairRep,
    RevReading,
};
use crate::error::{Error, Result};
use crate::figures::{figure_edges, figure_vertices};
use crate::knuth::{left_knuth_class, left_knuth_neighbors, monodromy_group, verify_fbox_theorem, default_class_budget};
use crate::n2::{derive_phi_row, n2_tables, phi_n2, theta_n2};
use crate::perm::{AffinePermutation, RectShape};
use crate::tabloid::Tabloid;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub description: String,
    pub passed: bool,
    pub details: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite)?;
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "  {tag} {}: {}", c.description, c.details)?;
        }
        write!(
            f,
            "  {} passed, {} failed in {} ms",
            self.passed, self.failed, self.elapsed_ms
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Lengths,
    Tabloids,
    Fbox,
    Knuth,
    Ambc,
    Components,
    Lusztig,
    N2,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Lengths,
        Suite::Tabloids,
        Suite::Fbox,
        Suite::Knuth,
        Suite::Ambc,
        Suite::Components,
        Suite::Lusztig,
        Suite::N2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lengths => "lengths",
            Suite::Tabloids => "tabloids",
            Suite::Fbox => "fbox",
            Suite::Knuth => "knuth",
            Suite::Ambc => "ambc",
            Suite::Components => "components",
            Suite::Lusztig => "lusztig",
            Suite::N2 => "n2",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub shapes: Vec<RectShape>,
    pub seed: u64,
    /// Random elements per shape in the sampled checks.
    pub samples: usize,
    /// Entrywise bound on `c` in pair sweeps; `2m` when unset.
    pub pair_bound: Option<i64>,
    pub budget: Budget,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            shapes: default_shapes(),
            seed: 0,
            samples: 10_000,
            pair_bound: None,
            budget: default_budget(),
        }
    }
}

/// `(2,2)`, `(3,3)` and `(2,2,2)`.
pub fn default_shapes() -> Vec<RectShape> {
    [(2, 2), (3, 2), (2, 3)]
        .into_iter()
        .map(|(l, m)| RectShape { l, m })
        .collect()
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn check(&mut self, description: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, details) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            description: description.into(),
            passed,
            details,
        });
    }
}

/// Counts failures over a sweep and keeps the first counterexample.
#[derive(Default)]
struct Tally {
    seen: usize,
    bad: usize,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.seen += 1;
        if !ok {
            self.bad += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn finish(self) -> (bool, String) {
        match self.first {
            None => (true, format!("{} cases", self.seen)),
            Some(f) => (false, format!("{}/{} failed, first: {f}", self.bad, self.seen)),
        }
    }
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    match suite {
        Suite::All => Suite::EACH.iter().map(|&s| run_suite(s, opts)).collect(),
        s => Ok(vec![run_suite(s, opts)?]),
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut rec = Recorder { checks: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    match suite {
        Suite::Lengths => lengths(&mut rec, opts, &mut rng),
        Suite::Tabloids => tabloids(&mut rec, opts)?,
        Suite::Fbox => fbox(&mut rec, opts, &mut rng)?,
        Suite::Knuth => knuth(&mut rec, opts)?,
        Suite::Ambc => ambc(&mut rec, opts, &mut rng)?,
        Suite::Components => components(&mut rec, opts, &mut rng)?,
        Suite::Lusztig => lusztig(&mut rec, opts)?,
        Suite::N2 => n2(&mut rec),
        Suite::All => return Err(Error::Precondition("run `all` through `run`".into())),
    }
    let failed = rec.checks.iter().filter(|c| !c.passed).count();
    Ok(VerificationReport {
        suite: suite.name().to_string(),
        passed: rec.checks.len() - failed,
        failed,
        checks: rec.checks,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn cells(opts: &VerifyOptions) -> Result<Vec<RectCell>> {
    opts.shapes.iter().map(|&s| RectCell::new(s, opts.budget)).collect()
}

fn bound(opts: &VerifyOptions, shape: RectShape) -> i64 {
    opts.pair_bound.unwrap_or(2 * shape.m as i64)
}

/// A random canonical pair with `c` bounded by `2m`.
pub fn random_pair_rep<R: Rng>(cell: &RectCell, rng: &mut R) -> PairRep {
    let m = cell.shape().m;
    let mut c: Vec<i64> = (0..m).map(|_| rng.gen_range(0..=2 * m as i64)).collect();
    let lo = *c.iter().min().expect("m >= 1");
    c.iter_mut().for_each(|x| *x -= lo);
    let fbox = cell.fbox();
    PairRep {
        k: rng.gen_range(0..m),
        w1: fbox[rng.gen_range(0..fbox.len())].clone(),
        c,
        w2: fbox[rng.gen_range(0..fbox.len())].clone(),
    }
}

/// A random element of the cell, as the relative position of a random pair.
pub fn random_cell_element<R: Rng>(cell: &RectCell, rng: &mut R) -> Result<AffinePermutation> {
    rel_pos_rep(cell, &random_pair_rep(cell, rng))
}

fn lengths(rec: &mut Recorder, opts: &VerifyOptions, rng: &mut ChaCha8Rng) {
    let ns: BTreeSet<usize> = opts.shapes.iter().map(|s| s.n()).collect();
    for n in ns {
        let sample: Vec<AffinePermutation> =
            (0..opts.samples).map(|_| AffinePermutation::random(n, 3, rng)).collect();
        rec.check(format!("n={n}: floor-sum length equals inversion count"), || {
            let mut t = Tally::default();
            for w in &sample {
                let (a, b) = (w.length_floor_sum(), w.length_inversions());
                t.record(a == b, || format!("{w}: {a} vs {b}"));
            }
            Ok(t.finish())
        });
        rec.check(format!("n={n}: length invariant under inverse and rotation"), || {
            let mut t = Tally::default();
            for w in &sample {
                let l = w.length();
                t.record(w.inverse().length() == l && w.rotate(1).length() == l, || w.to_string());
            }
            Ok(t.finish())
        });
        rec.check(format!("n={n}: simple reflections change length by one, down exactly on descents"), || {
            let mut t = Tally::default();
            for w in sample.iter().take(1000) {
                let l = w.length() as i64;
                let left: BTreeSet<usize> = w.left_descents().into_iter().collect();
                for i in 0..n {
                    let sw = AffinePermutation::simple_reflection(n, i as i64).compose_unchecked(w);
                    let d = sw.length() as i64 - l;
                    let desc = left.contains(&if i == 0 { n } else { i });
                    t.record(d == if desc { -1 } else { 1 }, || format!("s_{i} {w}"));
                }
            }
            Ok(t.finish())
        });
    }
}

fn tabloids(rec: &mut Recorder, opts: &VerifyOptions) -> Result<()> {
    for &shape in &opts.shapes {
        let lambda = shape.partition();
        let all = Tabloid::enumerate(&lambda, opts.budget)?;
        rec.check(format!("{shape}: tabloid count is the multinomial"), || {
            let want = lambda.multinomial();
            Ok((all.len() as u128 == want, format!("{} of {want}", all.len())))
        });
        rec.check(format!("{shape}: text form round-trips"), || {
            let mut t = Tally::default();
            for x in &all {
                let back: Tabloid = x.to_string().parse()?;
                t.record(&back == x, || x.to_string());
            }
            Ok(t.finish())
        });
        let d = lambda.d() as i64;
        rec.check(format!("{shape}: rotation lowers charge by one modulo {d}"), || {
            let mut t = Tally::default();
            for x in &all {
                let ok = (x.shift(1).charge() - x.charge() + 1).rem_euclid(d) == 0;
                t.record(ok, || x.to_string());
            }
            Ok(t.finish())
        });
        rec.check(format!("{shape}: charge is equidistributed modulo {d}"), || {
            let counts = all.iter().map(|x| x.charge().rem_euclid(d)).counts();
            let sizes: BTreeSet<usize> = counts.values().copied().collect();
            Ok((
                counts.len() as i64 == d && sizes.len() == 1,
                format!("class sizes {:?}", counts.into_iter().sorted().collect_vec()),
            ))
        });
    }
    Ok(())
}

fn fbox(rec: &mut Recorder, opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<()> {
    for cell in cells(opts)? {
        let shape = cell.shape();
        let (l, m, n) = (shape.l, shape.m, shape.n() as i64);
        let w0 = cell.w0().clone();
        rec.check(format!("{shape}: fundamental box has n!/(m (l!)^m) elements"), || {
            let want = shape.partition().multinomial() / m as u128;
            Ok((cell.fbox().len() as u128 == want, format!("{} of {want}", cell.fbox().len())))
        });
        rec.check(format!("{shape}: membership by excess vector agrees with alcove equations"), || {
            let mut t = Tally::default();
            for w in cell.fbox() {
                t.record(in_fundamental_box(w, shape)?, || w.to_string());
            }
            Ok(t.finish())
        });
        rec.check(format!("{shape}: u -> P(u w0) = u(T) is a bijection onto charge divisible by m"), || {
            let mut t = Tally::default();
            let mut images = HashSet::new();
            for u in cell.fbox_inverse() {
                let p = act_on_t_lambda(u, shape);
                let t_p = phi_special(&u.compose_unchecked(&w0), shape)?;
                let ok = t_p.p() == &p && p.charge() % m as i64 == 0 && fbox_from_tabloid(&p)? == *u;
                images.insert(p);
                t.record(ok, || u.to_string());
            }
            let want = shape.partition().multinomial() / m as u128;
            t.record(images.len() as u128 == want, || format!("{} images", images.len()));
            Ok(t.finish())
        });
        rec.check(format!("{shape}: gaps within blocks of the inverse box are at most n-l"), || {
            let mut t = Tally::default();
            for u in cell.fbox_inverse() {
                for (i, j) in (1..m).cartesian_product(0..l) {
                    let gap = u.eval((i + 1 + j * m) as i64) - u.eval((i + j * m) as i64);
                    t.record(gap <= n - l as i64, || format!("{u} at i={i} j={j}: {gap}"));
                }
            }
            Ok(t.finish())
        });
        rec.check(format!("{shape}: centralized weight of u w0 is the constant box weight"), || {
            let mut t = Tally::default();
            for u in cell.fbox_inverse() {
                let tr = phi_special(&u.compose_unchecked(&w0), shape)?;
                let c = crate::ambc::fbox_weight(u, shape);
                let p = tr.p();
                let by_charge = p.charge() / m as i64 - p.local_charges().iter().sum::<i64>();
                let ok = tr.centralized().iter().all(|&x| x == c) && by_charge == c;
                t.record(ok, || format!("{u}: {:?} vs {c}, {by_charge}", tr.centralized()));
            }
            Ok(t.finish())
        });
        rec.check(format!("{shape}: phi^m preserves the fundamental box"), || {
            let mut t = Tally::default();
            for w in cell.fbox() {
                t.record(cell.contains_fbox(&w.rotate(m as i64)), || w.to_string());
            }
            Ok(t.finish())
        });
        rec.check(format!("{shape}: orbit elements factor back with additive length"), || {
            let mut t = Tally::default();
            for _ in 0..opts.samples.min(2000) {
                let w = cell.fbox()[rng.gen_range(0..cell.fbox().len())].clone();
                let c: Vec<i64> = (0..m).map(|_| rng.gen_range(0..=2 * m as i64)).collect();
                let label = ComponentLabel::new(w, c);
                let big = orbit_of_label(&cell, &label)?;
                let normal = crate::components::normalize(&cell, &label)?;
                let (base, ks) = iterative_factorization(&big, shape)?;
                let expected: Vec<usize> = crate::components::peel_multiset(&normal.c);
                let extra: u64 = ks.iter().map(|&k| (l * (m - k) * k) as u64).sum();
                let ok = base == normal.w
                    && ks.iter().copied().sorted().collect_vec() == expected
                    && big.length() == base.length() + extra;
                t.record(ok, || label.to_string());
            }
            Ok(t.finish())
        });
    }
    Ok(())
}

/// Transport checks along one edge `x -> s_k x`.
fn transport_ok(cell: &RectCell, x: &AffinePermutation, k: usize, y: &AffinePermutation) -> Result<bool> {
    let (tx, ty) = (phi_rect(cell, x)?, phi_rect(cell, y)?);
    if tx.q() != ty.q() {
        return Ok(false);
    }
    let n = cell.shape().n();
    for i in [k + n - 1, k, k + 1] {
        if let Ok(moved) = knuth_transport(&tx, i % n, WrapSign::default()) {
            if moved.p() == ty.p() {
                return Ok(moved == ty);
            }
        }
    }
    Ok(false)
}

fn knuth(rec: &mut Recorder, opts: &VerifyOptions) -> Result<()> {
    for cell in cells(opts)? {
        let shape = cell.shape();
        rec.check(format!("{shape}: left Knuth class of w0 equals the inverse box times w0"), || {
            let r = verify_fbox_theorem(&cell)?;
            Ok((
                r.passed(),
                format!(
                    "class {}, box {}, expected {}, equal {}, phi^m stable {}",
                    r.class_size, r.fbox_size, r.expected_size, r.sets_equal, r.rotation_stable
                ),
            ))
        });
        let graph = left_knuth_class(cell.w0(), default_class_budget(shape))?;
        if let Some(fig) = figure_vertices(shape) {
            rec.check(format!("{shape}: vertices match the transcribed figure"), || {
                let got = graph.vertex_set();
                Ok((got == fig, format!("{} computed, {} drawn", got.len(), fig.len())))
            });
        }
        if let Some(fig) = figure_edges(shape) {
            rec.check(format!("{shape}: labelled edges match the transcribed figure"), || {
                let got = graph.labelled_edges();
                let diff = got.symmetric_difference(&fig).count();
                Ok((diff == 0, format!("{} computed, {} drawn, {diff} differ", got.len(), fig.len())))
            });
        }
        rec.check(format!("{shape}: transport of (P, Q, rho) along every class edge"), || {
            let mut t = Tally::default();
            for &(a, b, k) in &graph.edges {
                let (x, y) = (&graph.vertices[a], &graph.vertices[b]);
                t.record(transport_ok(&cell, x, k, y)?, || format!("{x} -s_{k}- {y}"));
            }
            Ok(t.finish())
        });
        rec.check(format!("{shape}: monodromy group is trivial"), || {
            let g = monodromy_group(&shape.partition());
            Ok((g.is_empty(), format!("{} generators", g.len())))
        });
    }
    Ok(())
}

fn reverse(v: &[i64]) -> Vec<i64> {
    v.iter().rev().copied().collect()
}

fn ambc(rec: &mut Recorder, opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<()> {
    rec.check("worked examples of the correspondence", || {
        let cell = RectCell::new(RectShape { l: 2, m: 3 }, opts.budget)?;
        let a: AffinePermutation = "[12,2,-8,15,-5,5]".parse()?;
        let b: AffinePermutation = "[15,2,-11,18,-7,4]".parse()?;
        let ta: AmbcTriple = "({1,4|2,5|3,6},{1,4|2,6|3,5},(-2,0,2))".parse()?;
        let tb: AmbcTriple = "({1,5|2,4|3,6},{1,4|2,6|3,5},(-3,0,3))".parse()?;
        let (ga, gb) = (phi_rect(&cell, &a)?, phi_rect(&cell, &b)?);
        Ok((ga == ta && gb == tb, format!("{ga}; {gb}")))
    });
    for cell in cells(opts)? {
        let shape = cell.shape();
        let count = opts.samples.min(3000);
        let sample: Vec<AffinePermutation> =
            (0..count).map(|_| random_cell_element(&cell, rng)).collect::<Result<_>>()?;
        let images: Vec<AmbcTriple> = sample.iter().map(|x| phi_rect(&cell, x)).collect::<Result<_>>()?;
        rec.check(format!("{shape}: images are dominant of shape lambda"), || {
            let mut t = Tally::default();
            for (x, tr) in sample.iter().zip(&images) {
                t.record(tr.is_dominant() && tr.shape() == shape.partition(), || x.to_string());
            }
            Ok(t.finish())
        });
        rec.check(format!("{shape}: inverse swaps P and Q and reverses the centralized weight"), || {
            let mut t = Tally::default();
            for (x, tr) in sample.iter().zip(&images) {
                let inv = phi_rect(&cell, &x.inverse())?;
                let neg: Vec<i64> = reverse(&inv.centralized()).iter().map(|v| -v).collect();
                t.record(inv == tr.invert() && tr.centralized() == neg, || x.to_string());
            }
            Ok(t.finish())
        });
        rec.check(format!("{shape}: rotation acts through delta"), || {
            let mut t = Tally::default();
            for (x, tr) in sample.iter().zip(&images) {
                t.record(phi_rect(&cell, &x.rotate(1))? == tr.rotate(1), || x.to_string());
            }
            Ok(t.finish())
        });
        rec.check(format!("{shape}: descents are tau-invariants of P and Q"), || {
            let mut t = Tally::default();
            for (x, tr) in sample.iter().zip(&images) {
                let left: BTreeSet<usize> = x.left_descents().into_iter().collect();
                let right: BTreeSet<usize> = x.right_descents().into_iter().collect();
                t.record(left == tr.p().tau_invariant() && right == tr.q().tau_invariant(), || x.to_string());
            }
            Ok(t.finish())
        });
        rec.check(format!("{shape}: fiber sizes agree between excess cuts and weight rearrangements"), || {
            let mut t = Tally::default();
            for (x, tr) in sample.iter().zip(&images) {
                let size = fiber_size(&cell, x)?;
                t.record(size as usize == tr.fiber().len(), || x.to_string());
            }
            Ok(t.finish())
        });
        rec.check(format!("{shape}: transport along left Knuth moves of sampled elements"), || {
            let mut t = Tally::default();
            for x in sample.iter().take(500) {
                for (k, y) in left_knuth_neighbors(x) {
                    t.record(transport_ok(&cell, x, k, &y)?, || format!("{x} -s_{k}- {y}"));
                }
            }
            Ok(t.finish())
        });
        rec.check(format!("{shape}: psi inverts phi"), || {
            let mut t = Tally::default();
            for (x, tr) in sample.iter().zip(&images).take(1000) {
                let back = crate::components::psi_rect(&cell, tr, None)?;
                t.record(&back == x, || x.to_string());
            }
            Ok(t.finish())
        });
    }
    Ok(())
}

/// Per-shape data of the bounded pair sweep.
pub struct PairSweep {
    pub reps: Vec<PairRep>,
    pub rel: Vec<AffinePermutation>,
    pub theta: Vec<AmbcTriple>,
}

pub fn pair_sweep(cell: &RectCell, bound: i64) -> Result<PairSweep> {
    let reps = enumerate_pair_reps(cell, bound);
    let rel = reps.iter().map(|r| rel_pos_rep(cell, r)).collect::<Result<_>>()?;
    let theta = reps
        .iter()
        .map(|r| theta_big(cell, r, RevReading::TupleReverse))
        .collect::<Result<_>>()?;
    Ok(PairSweep { reps, rel, theta })
}

/// Central identity on a sweep: both paths to the dominant triple agree.
pub fn check_cross_paths(cell: &RectCell, sweep: &PairSweep) -> Result<(bool, String)> {
    let mut t = Tally::default();
    for ((rep, x), th) in sweep.reps.iter().zip(&sweep.rel).zip(&sweep.theta) {
        let a = phi_rect(cell, x)?;
        let b = rel_pos_triple(cell, rep)?;
        let c = th.dominant_representative();
        t.record(a == b && b == c, || format!("{rep}: {a} / {b} / {c}"));
    }
    Ok(t.finish())
}

/// Injectivity of `Theta` and `Theta^{-1} Theta = id` on a sweep.
pub fn check_theta_bijective(cell: &RectCell, sweep: &PairSweep) -> Result<(bool, String)> {
    let mut t = Tally::default();
    let mut seen: HashMap<&AmbcTriple, &PairRep> = HashMap::new();
    for (rep, th) in sweep.reps.iter().zip(&sweep.theta) {
        if let Some(prev) = seen.insert(th, rep) {
            t.record(false, || format!("{prev} and {rep} both map to {th}"));
            continue;
        }
        let back = theta_big_inverse(cell, th, None, RevReading::TupleReverse)?;
        t.record(&back == rep, || format!("{rep} comes back as {back}"));
    }
    Ok(t.finish())
}

/// For every image `x`: the full fiber through `Theta^{-1}` of the weight
/// rearrangements has `fiber_size(x)` distinct pairs, all mapping to `x`;
/// the count equals the component count of the orbit; the pairs of the
/// sweep over `x` are among them.
pub fn check_fibers(cell: &RectCell, sweep: &PairSweep) -> Result<(bool, String)> {
    let mut by_x: HashMap<&AffinePermutation, Vec<&PairRep>> = HashMap::new();
    for (rep, x) in sweep.reps.iter().zip(&sweep.rel) {
        by_x.entry(x).or_default().push(rep);
    }
    let mut t = Tally::default();
    let mut sizes = BTreeSet::new();
    for (x, domain) in by_x {
        let size = fiber_size(cell, x)?;
        sizes.insert(size);
        let orbit = num_components_in_orbit(&cell.decompose(x)?.v, cell.shape())?;
        let full: Vec<PairRep> = phi_rect(cell, x)?
            .fiber()
            .iter()
            .map(|t| theta_big_inverse(cell, t, None, RevReading::TupleReverse))
            .collect::<Result<_>>()?;
        let distinct: HashSet<&PairRep> = full.iter().collect();
        let mut all_hit = true;
        for rep in &full {
            all_hit &= rel_pos_rep(cell, rep)? == *x;
        }
        let contained = domain.iter().all(|r| distinct.contains(r));
        let ok = size == orbit && distinct.len() as u64 == size && full.len() as u64 == size && all_hit && contained;
        t.record(ok, || {
            format!("{x}: fiber_size {size}, orbit count {orbit}, {} distinct preimages", distinct.len())
        });
    }
    let (ok, msg) = t.finish();
    Ok((ok, format!("{msg}, fiber sizes {sizes:?}")))
}

fn components(rec: &mut Recorder, opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<()> {
    for cell in cells(opts)? {
        let shape = cell.shape();
        let m = shape.m;
        let b = bound(opts, shape);
        let sweep = pair_sweep(&cell, b)?;
        rec.check(format!("{shape}: phi_rect(rel_pos) = rel_pos_triple = dom(Theta), c <= {b}"), || {
            check_cross_paths(&cell, &sweep)
        });
        rec.check(format!("{shape}: Theta injective and inverted by Theta^-1, c <= {b}"), || {
            check_theta_bijective(&cell, &sweep)
        });
        rec.check(format!("{shape}: rel_pos fibers have fiber_size elements"), || check_fibers(&cell, &sweep));
        rec.check(format!("{shape}: Theta has P = theta(first), Q = theta(second)"), || {
            let mut t = Tally::default();
            for (rep, th) in sweep.reps.iter().zip(&sweep.theta) {
                let ok = th.p() == &theta(&cell, &rep.first(m))? && th.q() == &theta(&cell, &rep.second())?;
                t.record(ok, || rep.to_string());
            }
            Ok(t.finish())
        });
        let random_label = |rng: &mut ChaCha8Rng| {
            let fbox = cell.fbox();
            ComponentLabel::new(
                fbox[rng.gen_range(0..fbox.len())].clone(),
                (0..m).map(|_| rng.gen_range(-2..=2 * m as i64)).collect(),
            )
        };
        let labels: Vec<(ComponentLabel, ComponentLabel)> = (0..opts.samples.min(2000))
            .map(|_| (random_label(rng), random_label(rng)))
            .collect();
        rec.check(format!("{shape}: r(C1, C2) = r(C2, C1)^-1"), || {
            let mut t = Tally::default();
            for (c1, c2) in &labels {
                let ok = rel_pos(&cell, c1, c2)? == rel_pos(&cell, c2, c1)?.inverse();
                t.record(ok, || format!("{c1} / {c2}"));
            }
            Ok(t.finish())
        });
        rec.check(format!("{shape}: rel_pos invariant under common translations"), || {
            let mut t = Tally::default();
            for (c1, c2) in &labels {
                let mut shift: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
                let total: i64 = shift.iter().sum();
                shift[0] -= total;
                let ok = rel_pos(&cell, c1, c2)? == rel_pos(&cell, &c1.translate(&shift), &c2.translate(&shift))?;
                t.record(ok, || format!("{c1} / {c2} by {shift:?}"));
            }
            Ok(t.finish())
        });
        rec.check(format!("{shape}: r(F^(1_k) C1, F^c C2) = phi^k(r(C1, F^(c - 1_k) C2))"), || {
            let mut t = Tally::default();
            for (c1, c2) in &labels {
                let k = rng.gen_range(0..m);
                let ones = crate::components::ones(m, k);
                let lhs = rel_pos(&cell, &c1.translate(&ones), c2)?;
                let neg: Vec<i64> = ones.iter().map(|x| -x).collect();
                let rhs = rel_pos(&cell, c1, &c2.translate(&neg))?.rotate(k as i64);
                t.record(lhs == rhs, || format!("{c1} / {c2}, k={k}"));
            }
            Ok(t.finish())
        });
        rec.check(format!("{shape}: pair equivalence criteria match equality of rel_pos"), || {
            equivalence_check(&cell, rng, opts.samples)
        });
    }
    Ok(())
}

/// Exhaustive over labels with `c` in `[-1, 1]^m` when that is small,
/// sampled otherwise; sampled pairs include translated and permuted copies
/// so both verdicts occur.
fn equivalence_check(cell: &RectCell, rng: &mut ChaCha8Rng, samples: usize) -> Result<(bool, String)> {
    let m = cell.shape().m;
    let labels: Vec<ComponentLabel> = cell
        .fbox()
        .iter()
        .cartesian_product((0..m).map(|_| -1..=1i64).multi_cartesian_product())
        .map(|(w, c)| ComponentLabel::new(w.clone(), c))
        .collect();
    let pairs: Vec<(ComponentLabel, ComponentLabel, AffinePermutation)> = labels
        .iter()
        .cartesian_product(&labels)
        .map(|(a, b)| Ok((a.clone(), b.clone(), rel_pos(cell, a, b)?)))
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    let mut positives = 0usize;
    let mut compare = |p: &(ComponentLabel, ComponentLabel, AffinePermutation),
                       q: &(ComponentLabel, ComponentLabel, AffinePermutation)|
     -> Result<()> {
        let eq = pairs_equivalent(cell, &p.0, &p.1, &q.0, &q.1)?;
        positives += usize::from(eq);
        t.record(eq == (p.2 == q.2), || format!("({}, {}) vs ({}, {}): criteria {eq}", p.0, p.1, q.0, q.1));
        Ok(())
    };
    if pairs.len() <= 1000 {
        for p in &pairs {
            for q in &pairs {
                compare(p, q)?;
            }
        }
    } else {
        for _ in 0..samples {
            let p = &pairs[rng.gen_range(0..pairs.len())];
            let q = &pairs[rng.gen_range(0..pairs.len())];
            compare(p, q)?;
            // A translated and permuted copy of p.
            let mut shift: Vec<i64> = (0..m).map(|_| rng.gen_range(-2..=2)).collect();
            let total: i64 = shift.iter().sum();
            shift[0] -= total;
            let a = p.0.translate(&shift);
            let mut diff: Vec<i64> = p.1.c.iter().zip(&p.0.c).map(|(x, y)| x - y).collect();
            let (i, j) = (rng.gen_range(0..m), rng.gen_range(0..m));
            diff.swap(i, j);
            let b = ComponentLabel::new(p.1.w.clone(), a.c.iter().zip(&diff).map(|(x, d)| x + d).collect());
            let r = rel_pos(cell, &a, &b)?;
            compare(p, &(a, b, r))?;
        }
    }
    let (ok, msg) = t.finish();
    Ok((ok, format!("{msg}, {positives} equivalent")))
}

/// Windows with entries in `[1 - n, 2n]` lying in the cell.
pub fn bounded_cell_elements(cell: &RectCell, budget: Budget) -> Result<(usize, Vec<AffinePermutation>)> {
    let n = cell.shape().n();
    let ni = n as i64;
    let all = AffinePermutation::enumerate_bounded(n, 1 - ni, 2 * ni, budget)?;
    let total = all.len();
    Ok((total, all.into_iter().filter(|x| cell.in_cell(x)).collect()))
}

/// Membership agrees with the Greene shape on the bounded enumeration and
/// every member is a relative position.
pub fn check_lusztig(cell: &RectCell, budget: Budget) -> Result<(bool, String)> {
    let shape = cell.shape();
    let n = shape.n();
    let ni = n as i64;
    let lambda = shape.partition();
    let all = AffinePermutation::enumerate_bounded(n, 1 - ni, 2 * ni, budget)?;
    let mut t = Tally::default();
    let mut members = 0usize;
    let mut max_c = 0i64;
    for x in &all {
        let inside = cell.in_cell(x);
        let greene = shape_of(x)? == lambda;
        t.record(inside == greene, || format!("{x}: decomposes {inside}, Greene shape is lambda {greene}"));
        if inside {
            members += 1;
            let rep = theta_big_inverse(cell, &phi_rect(cell, x)?, None, RevReading::TupleReverse)?;
            max_c = max_c.max(*rep.c.iter().max().expect("m >= 1"));
            t.record(rel_pos_rep(cell, &rep)? == *x, || format!("{x} not attained"));
        }
    }
    let (ok, msg) = t.finish();
    Ok((ok, format!("{msg}, {} windows, {members} in the cell, preimage c up to {max_c}", all.len())))
}

fn lusztig(rec: &mut Recorder, opts: &VerifyOptions) -> Result<()> {
    for cell in cells(opts)? {
        let shape = cell.shape();
        rec.check(format!("{shape}: cell elements with entries in [1-n, 2n] are relative positions"), || {
            check_lusztig(&cell, opts.budget)
        });
        rec.check(format!("{shape}: excess cuts and wall alcove equations agree"), || {
            let mut t = Tally::default();
            let (_, members) = bounded_cell_elements(&cell, opts.budget)?;
            for x in &members {
                let v = cell.decompose(x)?.v;
                let u = v.inverse();
                let excess = excess_vector(&u, shape);
                for i in 1..shape.m {
                    t.record((excess[i - 1] == 0) == alcove_wall(&u, shape, i), || format!("{x} at {i}"));
                }
            }
            Ok(t.finish())
        });
    }
    Ok(())
}

fn n2(rec: &mut Recorder) {
    let fixture = n2_tables(0..=5);
    rec.check("n=2: family windows equal their words", || {
        let mut t = Tally::default();
        for row in &fixture.phi_rows {
            let w = crate::n2::word_to_perm(2, &row.word);
            t.record(w == row.window, || format!("{:?} k={}", row.family, row.k));
        }
        Ok(t.finish())
    });
    rec.check("n=2: families from phi_special, inversion and rotation", || {
        let mut t = Tally::default();
        for row in &fixture.phi_rows {
            let derived = derive_phi_row(row.family, row.k)?;
            t.record(derived == row.triple && phi_n2(&row.window)? == row.triple, || {
                format!("{:?} k={}: {derived}", row.family, row.k)
            });
        }
        Ok(t.finish())
    });
    let pairs = n2_tables(-5..=5);
    rec.check("n=2: relative positions map to the dominant Theta", || {
        let mut t = Tally::default();
        for row in &pairs.pair_rows {
            let ok = phi_n2(&row.rel_pos)? == row.theta.dominant_representative()
                && row.theta.p() == &theta_n2(row.first)
                && row.theta.q() == &theta_n2(row.second);
            t.record(ok, || format!("C{} C{}", row.first, row.second));
        }
        Ok(t.finish())
    });
    rec.check("n=2: Theta is injective on the table", || {
        let distinct: HashSet<&AmbcTriple> = pairs.pair_rows.iter().map(|r| &r.theta).collect();
        Ok((distinct.len() == pairs.pair_rows.len(), format!("{} rows", pairs.pair_rows.len())))
    });
}

//! Hand-transcribed left Knuth classes of `w0` for `(2,2)`, `(3,3)` and
//! `(2,2,2)`, with edge labels for the first two.

use std::collections::BTreeSet;

use crate::perm::{AffinePermutation, RectShape};

type Edge = (&'static [i64], &'static [i64], usize);

const FIG_2X2_VERTICES: &[&[i64]] = &[&[2, 1, 4, 3], &[3, 1, 4, 2], &[2, 0, 5, 3]];

const FIG_2X2_EDGES: &[Edge] = &[
    (&[2, 1, 4, 3], &[3, 1, 4, 2], 2),
    (&[2, 1, 4, 3], &[2, 0, 5, 3], 0),
];

const FIG_3X2_VERTICES: &[&[i64]] = &[
    &[2, 1, 4, 3, 6, 5],
    &[3, 1, 4, 2, 6, 5],
    &[2, 1, 5, 3, 6, 4],
    &[2, 0, 4, 3, 7, 5],
    &[3, 1, 5, 2, 6, 4],
    &[3, 0, 4, 2, 7, 5],
    &[2, 0, 5, 3, 7, 4],
    &[4, 1, 5, 2, 6, 3],
    &[3, 0, 4, 1, 8, 5],
    &[2, -1, 6, 3, 7, 4],
];

const FIG_3X2_EDGES: &[Edge] = &[
    (&[2, 1, 4, 3, 6, 5], &[3, 1, 4, 2, 6, 5], 2),
    (&[2, 1, 4, 3, 6, 5], &[2, 1, 5, 3, 6, 4], 4),
    (&[2, 1, 4, 3, 6, 5], &[2, 0, 4, 3, 7, 5], 0),
    (&[3, 1, 4, 2, 6, 5], &[3, 1, 5, 2, 6, 4], 4),
    (&[3, 1, 4, 2, 6, 5], &[3, 0, 4, 2, 7, 5], 0),
    (&[2, 1, 5, 3, 6, 4], &[3, 1, 5, 2, 6, 4], 2),
    (&[2, 1, 5, 3, 6, 4], &[2, 0, 5, 3, 7, 4], 0),
    (&[2, 0, 4, 3, 7, 5], &[3, 0, 4, 2, 7, 5], 2),
    (&[2, 0, 4, 3, 7, 5], &[2, 0, 5, 3, 7, 4], 4),
    (&[3, 1, 5, 2, 6, 4], &[4, 1, 5, 2, 6, 3], 3),
    (&[3, 0, 4, 2, 7, 5], &[3, 0, 4, 1, 8, 5], 1),
    (&[2, 0, 5, 3, 7, 4], &[2, -1, 6, 3, 7, 4], 5),
];

const FIG_2X3_VERTICES: &[&[i64]] = &[
    &[3, 2, 1, 6, 5, 4],
    &[4, 2, 1, 6, 5, 3],
    &[3, 2, 0, 7, 5, 4],
    &[4, 3, 1, 6, 5, 2],
    &[5, 2, 1, 6, 4, 3],
    &[4, 2, 0, 7, 5, 3],
    &[3, 2, -1, 7, 6, 4],
    &[3, 1, 0, 8, 5, 4],
    &[4, 3, 0, 7, 5, 2],
    &[5, 3, 1, 6, 4, 2],
    &[5, 2, 0, 7, 4, 3],
    &[4, 2, -1, 7, 6, 3],
    &[3, 1, -1, 8, 6, 4],
    &[4, 1, 0, 8, 5, 3],
    &[4, 3, 0, 8, 5, 1],
    &[5, 3, 0, 7, 4, 2],
    &[6, 2, -1, 7, 4, 3],
    &[5, 2, -2, 7, 6, 3],
    &[4, 1, -1, 8, 6, 3],
    &[4, 1, 0, 9, 5, 2],
    &[5, 3, 0, 8, 4, 1],
    &[6, 3, -1, 7, 4, 2],
    &[6, 2, -2, 7, 5, 3],
    &[5, 1, -2, 8, 6, 3],
    &[4, 1, -1, 9, 6, 2],
    &[6, 3, -1, 8, 4, 1],
    &[4, 2, 0, 9, 5, 1],
    &[5, 1, -2, 9, 6, 2],
    &[7, 3, -1, 8, 4, 0],
    &[5, 1, -3, 10, 6, 2],
];

fn perm(w: &[i64]) -> AffinePermutation {
    AffinePermutation::new(w.to_vec()).expect("figure windows are valid")
}

/// The transcribed figure for `shape`, if there is one.
pub fn figure_vertices(shape: RectShape) -> Option<BTreeSet<AffinePermutation>> {
    let raw = match (shape.l, shape.m) {
        (2, 2) => FIG_2X2_VERTICES,
        (3, 2) => FIG_3X2_VERTICES,
        (2, 3) => FIG_2X3_VERTICES,
        _ => return None,
    };
    Some(raw.iter().map(|w| perm(w)).collect())
}

/// Labelled edges with sorted endpoints, where the figure draws labels.
pub fn figure_edges(shape: RectShape) -> Option<BTreeSet<(AffinePermutation, AffinePermutation, usize)>> {
    let raw = match (shape.l, shape.m) {
        (2, 2) => FIG_2X2_EDGES,
        (3, 2) => FIG_3X2_EDGES,
        _ => return None,
    };
    Some(
        raw.iter()
            .map(|&(a, b, k)| {
                let (a, b) = (perm(a), perm(b));
                if a <= b {
                    (a, b, k)
                } else {
                    (b, a, k)
                }
            })
            .collect(),
    )
}

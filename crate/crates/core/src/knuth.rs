//! Left Knuth classes, their graphs and the monodromy lattice.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::budget::{check_budget, Budget};
use crate::cells::RectCell;
use crate::error::Result;
use crate::perm::{AffinePermutation, RectShape};
use crate::tabloid::Partition;

fn incomparable(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> bool {
    !a.is_subset(b) && !b.is_subset(a)
}

/// All `(k, s_k w)` with `L(w)` and `L(s_k w)` incomparable, `k` in `[0, n-1]`.
pub fn left_knuth_neighbors(w: &AffinePermutation) -> Vec<(usize, AffinePermutation)> {
    let n = w.n();
    let lw: BTreeSet<usize> = w.left_descents().into_iter().collect();
    (0..n)
        .filter_map(|k| {
            let s = AffinePermutation::simple_reflection(n, k as i64);
            let sw = s.compose_unchecked(w);
            let ls: BTreeSet<usize> = sw.left_descents().into_iter().collect();
            incomparable(&lw, &ls).then_some((k, sw))
        })
        .collect()
}

/// A left Knuth class with its labelled moves.
#[derive(Clone, Debug, Serialize)]
pub struct KnuthGraph {
    /// Vertices in breadth-first discovery order from the root.
    pub vertices: Vec<AffinePermutation>,
    /// `(a, b, k)`: vertices `a < b` joined by `s_k`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl KnuthGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges as `(window, window, k)` with the endpoints in sorted order.
    pub fn labelled_edges(&self) -> BTreeSet<(AffinePermutation, AffinePermutation, usize)> {
        self.edges
            .iter()
            .map(|&(a, b, k)| {
                let (x, y) = (self.vertices[a].clone(), self.vertices[b].clone());
                if x <= y {
                    (x, y, k)
                } else {
                    (y, x, k)
                }
            })
            .collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<AffinePermutation> {
        self.vertices.iter().cloned().collect()
    }

    /// Graphviz rendering with window labels and `s_k` edge labels.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{name}\" {{\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for &(a, b, k) in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\" [label=\"s_{k}\"];",
                self.vertices[a], self.vertices[b]
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Default vertex budget for the class of `w0` of a rectangle: ten times
/// the expected size.
pub fn default_class_budget(shape: RectShape) -> Budget {
    10 * shape.partition().multinomial() / shape.m as u128
}

/// Breadth-first closure of `w` under left Knuth moves.
pub fn left_knuth_class(w: &AffinePermutation, budget: Budget) -> Result<KnuthGraph> {
    let mut index: HashMap<AffinePermutation, usize> = HashMap::new();
    let mut vertices = vec![w.clone()];
    index.insert(w.clone(), 0);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for (k, nb) in left_knuth_neighbors(&vertices[a]) {
            let b = match index.get(&nb) {
                Some(&b) => b,
                None => {
                    check_budget("exploring a left Knuth class", vertices.len() as u128 + 1, budget)?;
                    let b = vertices.len();
                    index.insert(nb.clone(), b);
                    vertices.push(nb);
                    queue.push_back(b);
                    b
                }
            };
            if a < b {
                edges.push((a, b, k));
            }
        }
    }
    Ok(KnuthGraph { vertices, edges })
}

/// Generators of `{ sum a_i 1_{m_i} : sum a_i m_i = 0 }` where `m_i` are the
/// distinct parts of the transpose. Empty for rectangles.
pub fn monodromy_group(shape: &Partition) -> Vec<Vec<i64>> {
    let mut sizes: Vec<i64> = shape.transpose().parts().iter().map(|&x| x as i64).collect();
    sizes.dedup();
    let k = sizes.len();
    let rows = shape.len();
    // Column operations on (sizes | identity) until one nonzero entry is left;
    // the other columns of the identity part span the kernel.
    let mut vals = sizes.clone();
    let mut basis: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect();
    loop {
        let nonzero: Vec<usize> = (0..k).filter(|&i| vals[i] != 0).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let piv = *nonzero.iter().min_by_key(|&&i| vals[i].abs()).unwrap();
        for &i in nonzero.iter().filter(|&&i| i != piv) {
            let q = vals[i].div_euclid(vals[piv]);
            vals[i] -= q * vals[piv];
            let pb = basis[piv].clone();
            for (x, y) in basis[i].iter_mut().zip(pb) {
                *x -= q * y;
            }
        }
    }
    (0..k)
        .filter(|&i| vals[i] == 0)
        .map(|i| {
            let mut v = vec![0i64; rows];
            for (a, &m) in basis[i].iter().zip(&sizes) {
                for x in v.iter_mut().take(m as usize) {
                    *x += a;
                }
            }
            if v.iter().rev().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            v
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FboxTheoremReport {
    pub shape: String,
    pub class_size: usize,
    pub fbox_size: usize,
    pub expected_size: u128,
    pub sets_equal: bool,
    pub rotation_stable: bool,
}

impl FboxTheoremReport {
    pub fn passed(&self) -> bool {
        self.sets_equal
            && self.rotation_stable
            && self.class_size as u128 == self.expected_size
            && self.fbox_size as u128 == self.expected_size
    }
}

/// Compares the left Knuth class of `w0` with `F^{-1} w0` and checks that
/// `phi^m` preserves the class.
pub fn verify_fbox_theorem(cell: &RectCell) -> Result<FboxTheoremReport> {
    let shape = cell.shape();
    let graph = left_knuth_class(cell.w0(), default_class_budget(shape))?;
    let class = graph.vertex_set();
    let from_box: BTreeSet<_> = cell
        .fbox_inverse()
        .iter()
        .map(|u| u.compose_unchecked(cell.w0()))
        .collect();
    let rotated: BTreeSet<_> = class.iter().map(|w| w.rotate(shape.m as i64)).collect();
    Ok(FboxTheoremReport {
        shape: shape.to_string(),
        class_size: class.len(),
        fbox_size: from_box.len(),
        expected_size: shape.partition().multinomial() / shape.m as u128,
        sets_equal: class == from_box,
        rotation_stable: rotated == class,
    })
}

/// DOT file name for the class of `w0` of a rectangle.
pub fn dot_file_name(shape: RectShape) -> String {
    format!("lkc_{}x{}.dot", shape.l, shape.m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn p(s: &str) -> AffinePermutation {
        s.parse().unwrap()
    }

    #[test]
    fn neighbors() {
        let nb = left_knuth_neighbors(&p("[2,1,4,3]"));
        assert_eq!(nb, vec![(0, p("[2,0,5,3]")), (2, p("[3,1,4,2]"))]);
        assert!(left_knuth_neighbors(&AffinePermutation::identity(5)).is_empty());
        let ks: Vec<usize> = left_knuth_neighbors(&p("[3,2,1,6,5,4]")).iter().map(|x| x.0).collect();
        assert_eq!(ks, vec![0, 3]);
    }

    #[test]
    fn small_classes() {
        let g = left_knuth_class(&p("[2,1,4,3]"), 100).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.edges.len(), 2);
        assert_eq!(left_knuth_class(&p("[2,1,4,3,6,5]"), 100).unwrap().len(), 10);
        let g = left_knuth_class(&p("[3,2,1,6,5,4]"), 300).unwrap();
        assert_eq!(g.len(), 30);
        assert!(g.vertex_set().contains(&p("[7,3,-1,8,4,0]")));
        assert!(matches!(
            left_knuth_class(&p("[3,2,1,6,5,4]"), 5),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn monodromy() {
        assert!(monodromy_group(&Partition::rectangle(3, 2)).is_empty());
        assert!(monodromy_group(&Partition::new(vec![1]).unwrap()).is_empty());
        assert_eq!(monodromy_group(&Partition::new(vec![2, 1]).unwrap()), vec![vec![-1, 1]]);
        // (3,1): transpose (2,1,1), sizes {2,1}: 1_2 - 2*1_1 = (-1,1)
        assert_eq!(monodromy_group(&Partition::new(vec![3, 1]).unwrap()), vec![vec![-1, 1]]);
        // (3,2,1): transpose (3,2,1), kernel of 3a+2b+c has rank 2
        let g = monodromy_group(&Partition::new(vec![3, 2, 1]).unwrap());
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn dot_output() {
        let g = left_knuth_class(&p("[2,1,4,3]"), 100).unwrap();
        let dot = g.to_dot("lkc_2x2");
        assert!(dot.contains("\"[2,1,4,3]\" -- \"[2,0,5,3]\" [label=\"s_0\"];"));
        assert_eq!(dot_file_name(RectShape::new(2, 3).unwrap()), "lkc_2x3.dot");
    }
}

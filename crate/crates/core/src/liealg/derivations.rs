use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{LieAlgebra, Segment};
use crate::hurwitz::{make_algebra, AlgebraName, AlgebraTable, ProductTable};
use crate::ratlin::{rref_of_rows, Accumulator, Rat, RatMatrix, SparseVec};
use crate::Error;

/// A Lie algebra of linear maps (or tuples of them), with its basis kept as
/// flattened matrices.
///
/// The basis comes from a reduced echelon kernel, so every basis element is 1
/// at its own free column and 0 at the others; coordinates of any element of
/// the span are read off the free columns.
#[derive(Clone, Debug)]
pub struct MatrixLie {
    pub algebra: LieAlgebra,
    n: usize,
    blocks: usize,
    basis: Vec<SparseVec>,
    free: Vec<usize>,
}

impl MatrixLie {
    /// Size of each matrix component.
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn flat(&self, k: usize) -> &SparseVec {
        &self.basis[k]
    }

    /// Component `block` of basis element `k` as a matrix.
    pub fn matrix(&self, k: usize, block: usize) -> RatMatrix {
        let nn = self.n * self.n;
        let v = SparseVec::from_pairs(
            self.basis[k]
                .entries()
                .iter()
                .filter(|(i, _)| i / nn == block)
                .map(|(i, x)| (i % nn, x.clone())),
        );
        RatMatrix::unflatten(self.n, self.n, &v)
    }

    /// Coordinates of a flattened element, or None if it lies outside.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let c = SparseVec::from_pairs(self.free.iter().enumerate().map(|(k, &f)| (k, v.get(f))));
        let mut acc = Accumulator::new(self.blocks * self.n * self.n);
        for (k, x) in c.entries() {
            acc.add_scaled(&self.basis[*k], x);
        }
        (acc.take() == *v).then_some(c)
    }

    pub fn coords_of_matrix(&self, m: &RatMatrix) -> Option<SparseVec> {
        debug_assert_eq!(self.blocks, 1);
        self.coords(&m.flatten())
    }
}

fn var(block: usize, n: usize, r: usize, c: usize) -> usize {
    block * n * n + r * n + c
}

/// Solves the homogeneous system and closes the solution space under the
/// blockwise commutator.
fn matrix_lie(n: usize, blocks: usize, rows: Vec<SparseVec>, prefix: &str) -> Result<MatrixLie, Error> {
    let cols = blocks * n * n;
    let rref = rref_of_rows(cols, rows.iter());
    let kernel = rref.kernel();
    let free = rref.free_columns();
    let nn = n * n;
    let mats: Vec<Vec<RatMatrix>> = kernel
        .iter()
        .map(|v| {
            (0..blocks)
                .map(|b| {
                    let part = SparseVec::from_pairs(
                        v.entries().iter().filter(|(i, _)| i / nn == b).map(|(i, x)| (i % nn, x.clone())),
                    );
                    RatMatrix::unflatten(n, n, &part)
                })
                .collect()
        })
        .collect();
    let labels: Vec<String> = (0..kernel.len()).map(|k| format!("{prefix}{k}")).collect();
    let d = kernel.len();
    let shell = MatrixLie {
        algebra: LieAlgebra::abelian(0),
        n,
        blocks,
        basis: kernel,
        free,
    };
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    let brackets: Vec<Result<SparseVec, Error>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut flat = Vec::new();
            for b in 0..blocks {
                let c = mats[i][b].commutator(&mats[j][b]);
                flat.extend(c.flatten().into_entries().into_iter().map(|(k, x)| (b * nn + k, x)));
            }
            shell
                .coords(&SparseVec::from_pairs(flat))
                .ok_or_else(|| Error::Check(format!("commutator of {prefix}{i} and {prefix}{j} leaves the span")))
        })
        .collect();
    let mut table = vec![SparseVec::new(); d * d];
    for (&(i, j), b) in pairs.iter().zip(brackets) {
        let b = b?;
        table[j * d + i] = b.neg();
        table[i * d + j] = b;
    }
    let segments = vec![Segment { name: prefix.to_string(), start: 0, len: d }];
    let algebra = LieAlgebra::from_full(labels, segments, table)?;
    Ok(MatrixLie { algebra, ..shell })
}

fn is_commutative<T: ProductTable>(t: &T) -> bool {
    let n = t.dim();
    (0..n).all(|i| (i + 1..n).all(|j| t.product(i, j) == t.product(j, i)))
}

/// Rows of A(e_i e_j) − B(e_i) e_j − e_i C(e_j) = 0 for the given blocks.
fn leibniz_rows<T: ProductTable>(t: &T, blocks: [usize; 3], symmetric: bool) -> Vec<SparseVec> {
    let n = t.dim();
    let mut out = Vec::new();
    let mut accs: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in (if symmetric { i } else { 0 })..n {
            for (l, c) in t.product(i, j).entries() {
                for (m, acc) in accs.iter_mut().enumerate() {
                    acc.push((var(blocks[0], n, m, *l), c.clone()));
                }
            }
            for k in 0..n {
                for (m, c) in t.product(k, j).entries() {
                    accs[*m].push((var(blocks[1], n, k, i), -c));
                }
                for (m, c) in t.product(i, k).entries() {
                    accs[*m].push((var(blocks[2], n, k, j), -c));
                }
            }
            for acc in accs.iter_mut() {
                let row = SparseVec::from_pairs(std::mem::take(acc));
                if !row.is_empty() {
                    out.push(row);
                }
            }
        }
    }
    out
}

/// Linear maps D with D(xy) = D(x)y + xD(y).
pub fn derivations_of<T: ProductTable>(t: &T, prefix: &str) -> Result<MatrixLie, Error> {
    let rows = leibniz_rows(t, [0, 0, 0], is_commutative(t));
    matrix_lie(t.dim(), 1, rows, prefix)
}

/// Triples (A, B, C) of norm-antisymmetric maps with A(xy) = B(x)y + xC(y).
pub fn triality_of(a: &AlgebraTable, prefix: &str) -> Result<MatrixLie, Error> {
    let n = a.dim();
    let mut rows = leibniz_rows(a, [0, 1, 2], false);
    let g = a.norm_form();
    for b in 0..3 {
        for r in 0..n {
            for c in r..n {
                rows.push(SparseVec::from_pairs([
                    (var(b, n, r, c), Rat::int(g[r] as i64)),
                    (var(b, n, c, r), Rat::int(g[c] as i64)),
                ]));
            }
        }
    }
    matrix_lie(n, 3, rows, prefix)
}

/// tri and der of one Hurwitz algebra; χ is None when the Killing form
/// degenerates (abelian cases).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub algebra: String,
    pub tri_dim: usize,
    pub tri_chi: Option<i64>,
    pub der_dim: usize,
    pub der_chi: Option<i64>,
}

/// (algebra, dim tri, χ tri, dim der, χ der); None where the Killing form
/// degenerates, 0 for the zero algebra.
pub type Table1Entry = (&'static str, usize, Option<i64>, usize, Option<i64>);

pub const TABLE1_EXPECTED: [Table1Entry; 7] = [
    ("R", 0, Some(0), 0, Some(0)),
    ("C", 2, None, 0, Some(0)),
    ("H", 9, Some(-9), 3, Some(-3)),
    ("O", 28, Some(-28), 14, Some(-14)),
    ("Cs", 2, None, 0, Some(0)),
    ("Hs", 9, Some(3), 3, Some(1)),
    ("Os", 28, Some(4), 14, Some(2)),
];

impl Table1Row {
    pub fn matches(&self, e: &Table1Entry) -> bool {
        (self.algebra.as_str(), self.tri_dim, self.tri_chi, self.der_dim, self.der_chi) == *e
    }
}

pub fn table1() -> Result<Vec<Table1Row>, Error> {
    AlgebraName::HURWITZ
        .par_iter()
        .map(|n| {
            let a = make_algebra(n)?;
            let t = triality_of(&a, "t")?;
            let d = derivations_of(&a, "d")?;
            Ok(Table1Row {
                algebra: n.to_string(),
                tri_dim: t.dim(),
                tri_chi: t.algebra.character().ok(),
                der_dim: d.dim(),
                der_chi: d.algebra.character().ok(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octonion_derivations() {
        let o = make_algebra(&AlgebraName::O).unwrap();
        let d = derivations_of(&o, "g").unwrap();
        assert_eq!(d.dim(), 14);
        assert!(d.algebra.jacobi_check());
        assert_eq!(d.algebra.character().unwrap(), -14);
        // every basis derivation kills the unit
        for k in 0..d.dim() {
            assert!(d.matrix(k, 0).mul_sparse_vec(&SparseVec::unit(0)).is_empty());
        }
    }

    #[test]
    fn small_algebras() {
        let c = make_algebra(&AlgebraName::C).unwrap();
        assert_eq!(derivations_of(&c, "d").unwrap().dim(), 0);
        let h = make_algebra(&AlgebraName::H).unwrap();
        let dh = derivations_of(&h, "d").unwrap();
        assert_eq!(dh.dim(), 3);
        assert_eq!(dh.algebra.character().unwrap(), -3);
        assert_eq!(triality_of(&h, "t").unwrap().dim(), 9);
        assert_eq!(triality_of(&make_algebra(&AlgebraName::R).unwrap(), "t").unwrap().dim(), 0);
        let tc = triality_of(&c, "t").unwrap();
        assert_eq!(tc.dim(), 2);
        assert!(tc.algebra.is_abelian());
    }

    #[test]
    fn coordinates_reject_outsiders() {
        let h = make_algebra(&AlgebraName::H).unwrap();
        let dh = derivations_of(&h, "d").unwrap();
        assert!(dh.coords_of_matrix(&RatMatrix::identity(4)).is_none());
        let m = dh.matrix(0, 0).add(&dh.matrix(2, 0).scale(&Rat::int(3)));
        assert_eq!(dh.coords_of_matrix(&m).unwrap(), SparseVec::from_pairs([(0, Rat::ONE), (2, Rat::int(3))]));
    }
}

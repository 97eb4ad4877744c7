use super::{Rat, RatMatrix, RatVector, SparseVec};

/// Incremental row echelon form over the rationals.
///
/// Rows are reduced against every existing pivot on insertion, so each stored
/// row is zero in the pivot columns that existed when it was added. Pivots are
/// normalized to 1. Call [`Echelon::finish`] to obtain the reduced form.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    /// pivot_of[c] = index into `rows` of the row whose pivot is column c.
    pivot_of: Vec<Option<usize>>,
    rows: Vec<SparseVec>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, pivot_of: vec![None; cols], rows: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current pivots.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut cur = v.clone();
        let mut pos = 0;
        while pos < cur.len() {
            let (c, x) = cur.entries()[pos].clone();
            match self.pivot_of[c] {
                Some(r) => cur = cur.axpy(&-x, &self.rows[r]),
                None => pos += 1,
            }
        }
        cur
    }

    /// Adds a row; returns true when it was independent of the previous ones.
    pub fn push(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((c, lead)) = r.leading().cloned() else {
            return false;
        };
        let r = if lead.is_one() { r } else { r.scale(&lead.recip()) };
        self.pivot_of[c] = Some(self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Back-substitutes so that every pivot column is zero outside its row.
    pub fn finish(self) -> Rref {
        let Echelon { cols, pivot_of, mut rows } = self;
        let mut order: Vec<(usize, usize)> = pivot_of
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.map(|r| (c, r)))
            .collect();
        // Largest pivot column first: each row only needs rows already finished.
        order.sort_by_key(|o| std::cmp::Reverse(o.0));
        for &(c, r) in &order {
            let mut cur = std::mem::take(&mut rows[r]);
            let mut pos = 1;
            while pos < cur.len() {
                let (cc, x) = cur.entries()[pos].clone();
                match pivot_of[cc] {
                    Some(rr) if cc != c => cur = cur.axpy(&-x, &rows[rr]),
                    _ => pos += 1,
                }
            }
            rows[r] = cur;
        }
        let mut pivots: Vec<usize> = order.iter().map(|(c, _)| *c).collect();
        pivots.reverse();
        let sorted_rows = pivots.iter().map(|c| rows[pivot_of[*c].unwrap()].clone()).collect();
        Rref { cols, pivots, rows: sorted_rows }
    }
}

/// Reduced row echelon form: `rows[i]` has a leading 1 in column `pivots[i]`
/// and zeros in all other pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub cols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseVec>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Null-space basis: one vector per free column f, equal to 1 at f and 0
    /// at every other free column.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let free = self.free_columns();
        let mut slot = vec![usize::MAX; self.cols];
        for (k, &f) in free.iter().enumerate() {
            slot[f] = k;
        }
        let mut out: Vec<Vec<(usize, Rat)>> = free.iter().map(|&f| vec![(f, Rat::ONE)]).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            for (c, x) in row.entries() {
                if *c != p {
                    out[slot[*c]].push((p, -x));
                }
            }
        }
        out.into_iter().map(SparseVec::from_pairs).collect()
    }
}

pub fn rref_of_rows<'a, I: IntoIterator<Item = &'a SparseVec>>(cols: usize, rows: I) -> Rref {
    let mut e = Echelon::new(cols);
    for r in rows {
        e.push(r);
    }
    e.finish()
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut e = Echelon::new(m.cols());
    for r in m.row_vecs() {
        e.push(r);
    }
    e.rank()
}

pub fn kernel_basis_sparse(m: &RatMatrix) -> Vec<SparseVec> {
    rref_of_rows(m.cols(), m.row_vecs()).kernel()
}

pub fn kernel_basis(m: &RatMatrix) -> Vec<RatVector> {
    kernel_basis_sparse(m).iter().map(|v| v.to_dense(m.cols())).collect()
}

/// A subspace given by a basis, supporting membership and coordinate queries.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
    rref: Rref,
    /// For each rref row, its expression in terms of `basis`.
    transform: Vec<SparseVec>,
    pivot_pos: Vec<usize>,
}

impl Subspace {
    /// Builds from spanning vectors; dependent vectors are discarded from the
    /// basis.
    pub fn span(ambient: usize, vectors: &[SparseVec]) -> Self {
        // Augmented elimination [v | e_k] tracks the combination producing each row.
        let n = vectors.len();
        let mut e = Echelon::new(ambient + n);
        let mut basis = Vec::new();
        for v in vectors.iter() {
            let mut pairs: Vec<(usize, Rat)> = v.entries().to_vec();
            pairs.push((ambient + basis.len(), Rat::ONE));
            let aug = SparseVec::from_pairs(pairs);
            let red = e.reduce(&aug);
            if red.leading().is_some_and(|(c, _)| *c < ambient) {
                e.push(&aug);
                basis.push(v.clone());
            }
        }
        let full = e.finish();
        let mut pivots = Vec::new();
        let mut rows = Vec::new();
        let mut transform = Vec::new();
        for (row, &p) in full.rows.iter().zip(&full.pivots) {
            if p >= ambient {
                continue;
            }
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (c, x) in row.entries() {
                if *c < ambient {
                    left.push((*c, x.clone()));
                } else {
                    right.push((*c - ambient, x.clone()));
                }
            }
            pivots.push(p);
            rows.push(SparseVec::from_pairs(left));
            transform.push(SparseVec::from_pairs(right));
        }
        let mut pivot_pos = vec![usize::MAX; ambient];
        for (i, &p) in pivots.iter().enumerate() {
            pivot_pos[p] = i;
        }
        Subspace { ambient, basis, rref: Rref { cols: ambient, pivots, rows }, transform, pivot_pos }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of `v` with respect to `basis`, or None if `v` is outside.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut residual = v.clone();
        let mut coeffs = SparseVec::new();
        while let Some((c, x)) = residual.leading().cloned() {
            match self.pivot_pos[c] {
                usize::MAX => return None,
                i => {
                    residual = residual.axpy(&-&x, &self.rref.rows[i]);
                    coeffs = coeffs.axpy(&x, &self.transform[i]);
                }
            }
        }
        Some(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> RatMatrix {
        RatMatrix::from_i64(rows)
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(kernel_basis(&m(&[vec![1, 0], vec![0, 1]])).is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let k = kernel_basis(&m(&[vec![0, 0], vec![0, 0]]));
        assert_eq!(k.len(), 2);
        assert_eq!(rank(&RatMatrix::from_dense(&k)), 2);
    }

    #[test]
    fn rank_one_kernel_direction() {
        let k = kernel_basis(&m(&[vec![1, 1], vec![2, 2]]));
        assert_eq!(k.len(), 1);
        assert_eq!(&k[0][0], &-&k[0][1]);
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn rank_by_hand() {
        assert_eq!(rank(&m(&[vec![1, 2], vec![2, 4], vec![0, 1]])), 2);
        assert_eq!(rank(&RatMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&RatMatrix::identity(5)), 5);
    }

    #[test]
    fn rref_clears_pivot_columns() {
        let r = rref_of_rows(
            3,
            m(&[vec![0, 1, 1], vec![1, 1, 0], vec![1, 2, 1]]).row_vecs(),
        );
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rows[0].get(1), Rat::ZERO);
        assert_eq!(r.rows[0].get(2), Rat::int(-1));
    }

    #[test]
    fn subspace_coordinates() {
        let a = SparseVec::from_dense(&[Rat::int(1), Rat::int(1), Rat::ZERO]);
        let b = SparseVec::from_dense(&[Rat::ZERO, Rat::int(2), Rat::int(2)]);
        let s = Subspace::span(3, &[a.clone(), b.clone(), a.add(&b)]);
        assert_eq!(s.dim(), 2);
        let target = a.scale(&Rat::int(3)).axpy(&Rat::new(-1, 2), &b);
        let c = s.coordinates(&target).unwrap();
        assert_eq!(c.get(0), Rat::int(3));
        assert_eq!(c.get(1), Rat::new(-1, 2));
        assert!(!s.contains(&SparseVec::unit(0)));
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rat;

/// A dense coordinate vector.
pub type RatVector = Vec<Rat>;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseVec {
    entries: Vec<(usize, Rat)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds from arbitrary (index, value) pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Rat)>>(pairs: I) -> Self {
        let mut v: Vec<(usize, Rat)> = pairs.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        v.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Rat)> = Vec::with_capacity(v.len());
        for (i, x) in v {
            match out.last_mut() {
                Some((j, y)) if *j == i => *y += &x,
                _ => out.push((i, x)),
            }
        }
        out.retain(|(_, x)| !x.is_zero());
        SparseVec { entries: out }
    }

    pub fn from_dense(v: &[Rat]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Rat::ONE)] }
    }

    pub fn to_dense(&self, len: usize) -> RatVector {
        let mut out = vec![Rat::ZERO; len];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Rat)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Rat)> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Rat {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rat::ZERO,
        }
    }

    pub fn leading(&self) -> Option<&(usize, Rat)> {
        self.entries.first()
    }

    pub fn scale(&self, s: &Rat) -> SparseVec {
        if s.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * s)).collect(),
        }
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: &Rat, other: &SparseVec) -> SparseVec {
        if s.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        let (xs, ys) = (&self.entries, &other.entries);
        while a < xs.len() || b < ys.len() {
            if b >= ys.len() || (a < xs.len() && xs[a].0 < ys[b].0) {
                out.push(xs[a].clone());
                a += 1;
            } else if a >= xs.len() || ys[b].0 < xs[a].0 {
                out.push((ys[b].0, &ys[b].1 * s));
                b += 1;
            } else {
                let mut v = xs[a].1.clone();
                v.add_mul(s, &ys[b].1);
                if !v.is_zero() {
                    out.push((xs[a].0, v));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Rat::ONE, other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Rat::int(-1), other)
    }

    pub fn neg(&self) -> SparseVec {
        self.scale(&Rat::int(-1))
    }

    pub fn dot(&self, other: &SparseVec) -> Rat {
        let mut acc = Rat::ZERO;
        let (mut a, mut b) = (0, 0);
        let (xs, ys) = (&self.entries, &other.entries);
        while a < xs.len() && b < ys.len() {
            match xs[a].0.cmp(&ys[b].0) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    acc.add_mul(&xs[a].1, &ys[b].1);
                    a += 1;
                    b += 1;
                }
            }
        }
        acc
    }

    pub fn dot_dense(&self, other: &[Rat]) -> Rat {
        let mut acc = Rat::ZERO;
        for (i, x) in &self.entries {
            acc.add_mul(x, &other[*i]);
        }
        acc
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// Reindexes through `map`; entries mapped to `None` are dropped.
    pub fn remap(&self, map: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_pairs(
            self.entries
                .iter()
                .filter_map(|(i, x)| map(*i).map(|j| (j, x.clone()))),
        )
    }
}

/// Accumulates a sparse linear combination into a dense buffer.
pub struct Accumulator {
    values: Vec<Rat>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl Accumulator {
    pub fn new(len: usize) -> Self {
        Accumulator {
            values: vec![Rat::ZERO; len],
            touched: Vec::new(),
            mark: vec![false; len],
        }
    }

    pub fn add(&mut self, i: usize, x: &Rat) {
        if x.is_zero() {
            return;
        }
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(i);
        }
        self.values[i] += x;
    }

    pub fn add_mul(&mut self, i: usize, a: &Rat, b: &Rat) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(i);
        }
        self.values[i].add_mul(a, b);
    }

    pub fn add_scaled(&mut self, v: &SparseVec, s: &Rat) {
        for (i, x) in v.entries() {
            self.add_mul(*i, x, s);
        }
    }

    /// Drains the buffer into a sparse vector and resets it.
    pub fn take(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.mark[i] = false;
            let v = std::mem::take(&mut self.values[i]);
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        self.touched.clear();
        SparseVec { entries: out }
    }
}

/// A rows × cols rational matrix stored as sparse rows.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_sparse_rows(cols: usize, data: Vec<SparseVec>) -> Self {
        debug_assert!(data.iter().all(|r| r.max_index().is_none_or(|m| m < cols)));
        RatMatrix { rows: data.len(), cols, data }
    }

    pub fn from_dense(rows: &[Vec<Rat>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        RatMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| SparseVec::from_dense(r)).collect(),
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<Rat>> =
            rows.iter().map(|r| r.iter().map(|&x| Rat::from(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn diagonal(d: &[Rat]) -> Self {
        RatMatrix {
            rows: d.len(),
            cols: d.len(),
            data: d
                .iter()
                .enumerate()
                .map(|(i, x)| SparseVec::from_pairs([(i, x.clone())]))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols);
        let cur = self.data[r].get(c);
        let delta = &v - &cur;
        self.data[r] = self.data[r].axpy(&Rat::ONE, &SparseVec::from_pairs([(c, delta)]));
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut cols: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, x) in row.entries() {
                cols[*c].push((r, x.clone()));
            }
        }
        RatMatrix {
            rows: self.cols,
            cols: self.rows,
            data: cols.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn mul_vec(&self, v: &[Rat]) -> RatVector {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        self.data.iter().map(|r| r.dot_dense(v)).collect()
    }

    pub fn mul_sparse_vec(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(
            self.data
                .iter()
                .enumerate()
                .map(|(i, r)| (i, r.dot(v))),
        )
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut acc = Accumulator::new(other.cols);
        let data = self
            .data
            .iter()
            .map(|row| {
                for (k, x) in row.entries() {
                    acc.add_scaled(&other.data[*k], x);
                }
                acc.take()
            })
            .collect();
        RatMatrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.scale(s)).collect(),
        }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &RatMatrix) -> RatMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    /// Row-major flattening into a sparse vector of length rows * cols.
    pub fn flatten(&self) -> SparseVec {
        let mut out = Vec::with_capacity(self.nnz());
        for (r, row) in self.data.iter().enumerate() {
            for (c, x) in row.entries() {
                out.push((r * self.cols + c, x.clone()));
            }
        }
        SparseVec::from_pairs(out)
    }

    pub fn unflatten(rows: usize, cols: usize, v: &SparseVec) -> RatMatrix {
        let mut data: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); rows];
        for (i, x) in v.entries() {
            data[i / cols].push((i % cols, x.clone()));
        }
        RatMatrix { rows, cols, data: data.into_iter().map(SparseVec::from_pairs).collect() }
    }

    /// Principal submatrix on the given index set.
    pub fn principal(&self, idx: &[usize]) -> RatMatrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &i) in idx.iter().enumerate() {
            pos[i] = k;
        }
        let data = idx
            .iter()
            .map(|&i| self.data[i].remap(|c| (pos[c] != usize::MAX).then_some(pos[c])))
            .collect();
        RatMatrix { rows: idx.len(), cols: idx.len(), data }
    }

    /// Gram matrix `Vᵀ B V` of a bilinear form `B` on the given vectors.
    pub fn gram(&self, vectors: &[SparseVec]) -> RatMatrix {
        let images: Vec<SparseVec> = vectors.iter().map(|v| self.mul_sparse_vec(v)).collect();
        let data = vectors
            .iter()
            .map(|u| SparseVec::from_pairs(images.iter().enumerate().map(|(j, w)| (j, u.dot(w)))))
            .collect();
        RatMatrix { rows: vectors.len(), cols: vectors.len(), data }
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

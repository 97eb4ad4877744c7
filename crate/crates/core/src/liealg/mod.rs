//! Lie algebras given by sparse exact structure constants.

mod derivations;
mod ideals;
mod labels;
mod split;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ratlin::{
    kernel_basis_sparse, symmetric_signature, Accumulator, Rat, RatMatrix, Signature, SparseVec,
    Subspace,
};
use crate::Error;

pub use derivations::{derivations_of, table1, triality_of, MatrixLie, Table1Entry, Table1Row, TABLE1_EXPECTED};
pub use ideals::{ideal_decomposition, parts_match, IdealPart};
pub use labels::{identify_real_form, label_table, LabelTable, RealFormLabel};
pub use split::{
    bracket_inclusions, check_automorphism, involution_split, restricted_signature, split_within, Inclusions,
    InvolutionSplit,
};

/// A named contiguous block of basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub name: String,
    pub start: usize,
    pub len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    segments: Vec<Segment>,
    /// brackets[i * dim + j] = [e_i, e_j]
    brackets: Vec<SparseVec>,
}

impl LieAlgebra {
    /// Builds from the brackets [e_i, e_j] for i < j; the rest follows by
    /// antisymmetry.
    pub fn from_upper<F>(labels: Vec<String>, segments: Vec<Segment>, mut upper: F) -> LieAlgebra
    where
        F: FnMut(usize, usize) -> SparseVec,
    {
        let n = labels.len();
        let mut brackets = vec![SparseVec::new(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let b = upper(i, j);
                brackets[j * n + i] = b.neg();
                brackets[i * n + j] = b;
            }
        }
        LieAlgebra { dim: n, labels, segments, brackets }
    }

    /// Builds from every ordered bracket, rejecting non-antisymmetric input.
    pub fn from_full(
        labels: Vec<String>,
        segments: Vec<Segment>,
        brackets: Vec<SparseVec>,
    ) -> Result<LieAlgebra, Error> {
        let n = labels.len();
        if brackets.len() != n * n {
            return Err(Error::Dimension { expected: n * n, got: brackets.len() });
        }
        for i in 0..n {
            if !brackets[i * n + i].is_empty() {
                return Err(Error::Check(format!("[e{i}, e{i}] ≠ 0")));
            }
            for j in i + 1..n {
                if brackets[i * n + j] != brackets[j * n + i].neg() {
                    return Err(Error::Check(format!("bracket not antisymmetric at ({i}, {j})")));
                }
            }
        }
        Ok(LieAlgebra { dim: n, labels, segments, brackets })
    }

    pub fn abelian(n: usize) -> LieAlgebra {
        let labels = (0..n).map(|i| format!("e{i}")).collect();
        LieAlgebra::from_upper(labels, Vec::new(), |_, _| SparseVec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn segment(&self, name: &str) -> Option<&Segment> {
        self.segments.iter().find(|s| s.name == name)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i * self.dim + j]
    }

    /// Mutable access for perturbation experiments; the result is no longer
    /// guaranteed to be a Lie algebra.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: SparseVec) {
        let n = self.dim;
        self.brackets[j * n + i] = v.neg();
        self.brackets[i * n + j] = v;
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.dim);
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                let s = self.bracket_basis(*i, *j);
                if !s.is_empty() {
                    acc.add_scaled(s, &(a * b));
                }
            }
        }
        acc.take()
    }

    /// Matrix of ad x; column j is [x, e_j].
    pub fn ad(&self, x: &SparseVec) -> RatMatrix {
        let cols: Vec<SparseVec> = (0..self.dim).map(|j| self.bracket(x, &SparseVec::unit(j))).collect();
        RatMatrix::from_sparse_rows(self.dim, cols).transpose()
    }

    /// Number of nonzero structure constants C_ij^k with i < j.
    pub fn nnz(&self) -> usize {
        let n = self.dim;
        (0..n).map(|i| (i + 1..n).map(|j| self.brackets[i * n + j].len()).sum::<usize>()).sum()
    }

    /// Structure constants as (i, j, k, C_ij^k) with i < j.
    pub fn structure_triples(&self) -> Vec<(usize, usize, usize, Rat)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for (k, c) in self.brackets[i * n + j].entries() {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn export_json(&self) -> serde_json::Value {
        let triples: Vec<serde_json::Value> = self
            .structure_triples()
            .into_iter()
            .map(|(i, j, k, c)| serde_json::json!([i, j, k, c.to_string()]))
            .collect();
        serde_json::json!({
            "dim": self.dim,
            "labels": self.labels,
            "segments": self.segments,
            "structure_constants": triples,
        })
    }

    /// Inverse of [`LieAlgebra::export_json`].
    pub fn import_json(v: &serde_json::Value) -> Result<LieAlgebra, Error> {
        let bad = |what: &str| Error::Invalid(format!("malformed Lie algebra JSON: {what}"));
        let labels: Vec<String> = serde_json::from_value(v["labels"].clone()).map_err(|_| bad("labels"))?;
        let segments: Vec<Segment> =
            serde_json::from_value(v["segments"].clone()).map_err(|_| bad("segments"))?;
        let n = labels.len();
        let mut upper: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); n * n];
        for t in v["structure_constants"].as_array().ok_or_else(|| bad("structure_constants"))? {
            let (i, j, k, c): (usize, usize, usize, String) =
                serde_json::from_value(t.clone()).map_err(|_| bad("triple"))?;
            if i >= j || j >= n || k >= n {
                return Err(bad("index"));
            }
            upper[i * n + j].push((k, c.parse().map_err(|_| bad("coefficient"))?));
        }
        let mut upper: Vec<SparseVec> = upper.into_iter().map(SparseVec::from_pairs).collect();
        Ok(LieAlgebra::from_upper(labels, segments, |i, j| std::mem::take(&mut upper[i * n + j])))
    }

    /// Structure constants scaled by a common denominator, if it fits.
    fn integer_table(&self) -> Option<IntTable> {
        let mut scale: i64 = 1;
        for b in &self.brackets {
            for (_, c) in b.entries() {
                let (_, d) = c.as_small()?;
                scale = lcm(scale, d)?;
            }
        }
        let mut rows = Vec::with_capacity(self.brackets.len());
        for b in &self.brackets {
            let mut row = Vec::with_capacity(b.len());
            for (k, c) in b.entries() {
                let (p, q) = c.as_small()?;
                row.push((*k as u32, p.checked_mul(scale / q)?));
            }
            rows.push(row);
        }
        Some(IntTable { n: self.dim, scale, rows })
    }

    /// First basis triple i < j < k on which Jacobi fails.
    pub fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        match self.integer_table() {
            Some(t) => (0..n).into_par_iter().find_map_first(|i| t.jacobi_from(i)),
            None => (0..n).into_par_iter().find_map_first(|i| self.jacobi_from_rational(i)),
        }
    }

    fn jacobi_from_rational(&self, i: usize) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let mut acc = Accumulator::new(n);
        for j in i + 1..n {
            for k in j + 1..n {
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for (l, x) in self.bracket_basis(a, b).entries() {
                        acc.add_scaled(self.bracket_basis(*l, c), x);
                    }
                }
                if !acc.take().is_empty() {
                    return Some((i, j, k));
                }
            }
        }
        None
    }

    pub fn jacobi_check(&self) -> bool {
        self.jacobi_failure().is_none()
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(|b| b.is_empty())
    }

    /// K(x, y) = Tr(ad x ad y) on the basis.
    pub fn killing_form(&self) -> RatMatrix {
        match self.integer_table() {
            Some(t) => t.killing(),
            None => self.killing_rational(),
        }
    }

    fn killing_rational(&self) -> RatMatrix {
        let n = self.dim;
        let ads: Vec<RatMatrix> = (0..n).map(|a| self.ad(&SparseVec::unit(a))).collect();
        let mut rows = vec![Vec::new(); n];
        for a in 0..n {
            for b in a..n {
                let mut t = Rat::ZERO;
                for r in 0..n {
                    for (s, x) in ads[a].row(r).entries() {
                        let y = ads[b].get(*s, r);
                        if !y.is_zero() {
                            t.add_mul(x, &y);
                        }
                    }
                }
                if !t.is_zero() {
                    rows[a].push((b, t.clone()));
                    if a != b {
                        rows[b].push((a, t));
                    }
                }
            }
        }
        RatMatrix::from_sparse_rows(n, rows.into_iter().map(SparseVec::from_pairs).collect())
    }

    pub fn killing_signature(&self) -> Signature {
        symmetric_signature(&self.killing_form()).expect("Killing form is symmetric")
    }

    /// χ = #positive − #negative directions of the Killing form; requires a
    /// nondegenerate form.
    pub fn character(&self) -> Result<i64, Error> {
        let s = self.killing_signature();
        if s.zero > 0 {
            return Err(Error::Check(format!(
                "Killing form is degenerate ({} null directions); use an ambient form",
                s.zero
            )));
        }
        Ok(s.chi())
    }

    /// Kernel of ad, as a basis of coordinate vectors.
    pub fn center(&self) -> Vec<SparseVec> {
        let n = self.dim;
        // Row (j, k): Σ_i x_i C_ij^k = 0.
        let mut rows: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.bracket_basis(i, j).entries() {
                    rows[j * n + k].push((i, c.clone()));
                }
            }
        }
        let rows: Vec<SparseVec> =
            rows.into_iter().filter(|r| !r.is_empty()).map(SparseVec::from_pairs).collect();
        kernel_basis_sparse(&RatMatrix::from_sparse_rows(n, rows))
    }

    /// Span of all brackets.
    pub fn derived_subalgebra(&self) -> Subspace {
        let n = self.dim;
        let mut e = crate::ratlin::Echelon::new(n);
        let mut kept = Vec::new();
        'outer: for i in 0..n {
            for j in i + 1..n {
                let b = self.bracket_basis(i, j);
                if !b.is_empty() && e.push(b) {
                    kept.push(b.clone());
                    if e.rank() == n {
                        break 'outer;
                    }
                }
            }
        }
        Subspace::span(n, &kept)
    }

    /// The subalgebra spanned by `basis`, which must be bracket-closed.
    pub fn subalgebra(&self, basis: &[SparseVec], labels: Vec<String>) -> Result<LieAlgebra, Error> {
        let space = Subspace::span(self.dim, basis);
        if space.dim() != basis.len() {
            return Err(Error::Invalid("subalgebra basis is linearly dependent".into()));
        }
        self.restrict_to(&space, labels)
    }

    fn restrict_to(&self, space: &Subspace, labels: Vec<String>) -> Result<LieAlgebra, Error> {
        let basis = space.basis();
        let m = basis.len();
        let mut brackets = vec![SparseVec::new(); m * m];
        for a in 0..m {
            for b in a + 1..m {
                let v = self.bracket(&basis[a], &basis[b]);
                let c = space
                    .coordinates(&v)
                    .ok_or_else(|| Error::Check(format!("subspace not closed at ({a}, {b})")))?;
                brackets[b * m + a] = c.neg();
                brackets[a * m + b] = c;
            }
        }
        Ok(LieAlgebra { dim: m, labels, segments: Vec::new(), brackets })
    }

    /// The same algebra in the basis f_a = Σ_i S_ia e_i (columns of S).
    pub fn change_basis(&self, s: &RatMatrix) -> Result<LieAlgebra, Error> {
        if s.rows() != self.dim || s.cols() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: s.rows() });
        }
        let cols: Vec<SparseVec> = s.transpose().row_vecs().to_vec();
        let space = Subspace::span(self.dim, &cols);
        if space.dim() != self.dim {
            return Err(Error::Invalid("basis change is singular".into()));
        }
        let labels = (0..self.dim).map(|a| format!("f{a}")).collect();
        self.restrict_to(&space, labels)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: i64, b: i64) -> Option<i64> {
    (a / gcd(a, b)).checked_mul(b)
}

/// Integer copy of the structure constants, multiplied by `scale`.
struct IntTable {
    n: usize,
    scale: i64,
    rows: Vec<Vec<(u32, i64)>>,
}

impl IntTable {
    fn row(&self, i: usize, j: usize) -> &[(u32, i64)] {
        &self.rows[i * self.n + j]
    }

    fn jacobi_from(&self, i: usize) -> Option<(usize, usize, usize)> {
        let n = self.n;
        let mut acc = vec![0i128; n];
        let mut touched: Vec<usize> = Vec::with_capacity(n);
        for j in i + 1..n {
            for k in j + 1..n {
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for &(l, x) in self.row(a, b) {
                        for &(m, y) in self.row(l as usize, c) {
                            let m = m as usize;
                            if acc[m] == 0 {
                                touched.push(m);
                            }
                            acc[m] += x as i128 * y as i128;
                        }
                    }
                }
                let mut bad = false;
                for &m in &touched {
                    bad |= acc[m] != 0;
                    acc[m] = 0;
                }
                touched.clear();
                if bad {
                    return Some((i, j, k));
                }
            }
        }
        None
    }

    fn killing(&self) -> RatMatrix {
        let n = self.n;
        // K_ab = Σ_{j,k} C_aj^k C_bk^j.
        let rows: Vec<SparseVec> = (0..n)
            .into_par_iter()
            .map(|b| {
                let mut dense_b = vec![0i64; n * n];
                for k in 0..n {
                    for &(j, y) in self.row(b, k) {
                        dense_b[j as usize * n + k] = y;
                    }
                }
                let denom = Rat::int(self.scale) * Rat::int(self.scale);
                let pairs: Vec<(usize, Rat)> = (0..n)
                    .filter_map(|a| {
                        let mut t: i128 = 0;
                        for j in 0..n {
                            for &(k, x) in self.row(a, j) {
                                let y = dense_b[j * n + k as usize];
                                if y != 0 {
                                    t += x as i128 * y as i128;
                                }
                            }
                        }
                        (t != 0).then(|| (a, i128_to_rat(t) / &denom))
                    })
                    .collect();
                SparseVec::from_pairs(pairs)
            })
            .collect();
        RatMatrix::from_sparse_rows(n, rows)
    }
}

fn i128_to_rat(t: i128) -> Rat {
    match i64::try_from(t) {
        Ok(v) => Rat::int(v),
        Err(_) => Rat::from(num_rational::BigRational::from_integer(num_bigint::BigInt::from(t))),
    }
}

pub fn so3() -> LieAlgebra {
    let labels = vec!["L1".to_string(), "L2".into(), "L3".into()];
    LieAlgebra::from_upper(labels, Vec::new(), |i, j| match (i, j) {
        (0, 1) => SparseVec::unit(2),
        (0, 2) => SparseVec::unit(1).neg(),
        (1, 2) => SparseVec::unit(0),
        _ => SparseVec::new(),
    })
}

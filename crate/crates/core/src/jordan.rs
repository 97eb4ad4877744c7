//! Jordan algebras of η-Hermitian 2×2 and 3×3 matrices over a composition
//! algebra, with the symmetrized product X∘Y = ½(XY + YX).

use serde::{Deserialize, Serialize};

use crate::hurwitz::{profile::sample_vectors, AlgebraTable, ProductTable};
use crate::ratlin::{symmetric_signature, Accumulator, Rat, RatMatrix, Signature, SparseVec};
use crate::Error;

const SAMPLE_SEED: u64 = 0x10_2d_a1;
const SAMPLE_COUNT: usize = 128;

/// Off-diagonal slot (p, q), p < q, carrying a unit of the base algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum JordanBasis {
    Diag(usize),
    Off { p: usize, q: usize, unit: usize },
}

#[derive(Clone, Debug)]
pub struct JordanAlgebra {
    base: AlgebraTable,
    n: usize,
    eta: Vec<i8>,
    basis: Vec<JordanBasis>,
    labels: Vec<String>,
    products: Vec<SparseVec>,
}

/// An n×n matrix over the base algebra, entries row-major.
type AMatrix = Vec<SparseVec>;

impl ProductTable for JordanAlgebra {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.basis.len() + j]
    }
}

pub fn off_diagonal_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            v.push((p, q));
        }
    }
    v
}

fn matrix_mul(a: &AlgebraTable, n: usize, x: &AMatrix, y: &AMatrix) -> AMatrix {
    let mut out = Vec::with_capacity(n * n);
    let mut acc = Accumulator::new(a.dim());
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                let (u, v) = (&x[i * n + j], &y[j * n + k]);
                if u.is_empty() || v.is_empty() {
                    continue;
                }
                for (s, p) in u.entries() {
                    for (t, q) in v.entries() {
                        let pq = p * q;
                        acc.add_scaled(a.product(*s, *t), &pq);
                    }
                }
            }
            out.push(acc.take());
        }
    }
    out
}

/// ½(XY + YX) in the full matrix algebra.
fn matrix_circ(a: &AlgebraTable, n: usize, x: &AMatrix, y: &AMatrix) -> AMatrix {
    let xy = matrix_mul(a, n, x, y);
    let yx = matrix_mul(a, n, y, x);
    xy.iter().zip(&yx).map(|(u, v)| u.add(v).scale(&Rat::new(1, 2))).collect()
}

impl JordanAlgebra {
    pub fn base(&self) -> &AlgebraTable {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eta(&self) -> &[i8] {
        &self.eta
    }

    pub fn basis(&self) -> &[JordanBasis] {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_euclidean(&self) -> bool {
        self.eta.iter().all(|&e| e > 0)
    }

    pub fn identity(&self) -> SparseVec {
        SparseVec::from_pairs((0..self.n).map(|i| (i, Rat::ONE)))
    }

    fn to_matrix(&self, x: &SparseVec) -> AMatrix {
        let n = self.n;
        let d = self.base.dim();
        let unit = self.base.unit();
        let mut pairs: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); n * n];
        for (i, c) in x.entries() {
            match self.basis[*i] {
                JordanBasis::Diag(k) => pairs[k * n + k].push((unit, c.clone())),
                JordanBasis::Off { p, q, unit: u } => {
                    pairs[p * n + q].push((u, c.clone()));
                    let s = (self.eta[p] * self.eta[q]) as i64 * self.base.conj_sign()[u] as i64;
                    pairs[q * n + p].push((u, c * &Rat::int(s)));
                }
            }
        }
        debug_assert!(pairs.iter().all(|v| v.iter().all(|(u, _)| *u < d)));
        pairs.into_iter().map(SparseVec::from_pairs).collect()
    }

    /// Coordinates of an η-Hermitian matrix; None when the matrix is not
    /// η-Hermitian with real diagonal.
    fn from_matrix(&self, m: &AMatrix) -> Option<SparseVec> {
        let n = self.n;
        let unit = self.base.unit();
        let mut out = Vec::new();
        for k in 0..n {
            let e = &m[k * n + k];
            if e.entries().iter().any(|(u, _)| *u != unit) {
                return None;
            }
            out.push((k, e.get(unit)));
        }
        let d = self.base.dim();
        for (slot, &(p, q)) in off_diagonal_pairs(n).iter().enumerate() {
            let upper = &m[p * n + q];
            let lower = &m[q * n + p];
            let sign = Rat::int((self.eta[p] * self.eta[q]) as i64);
            if &self.base.conj(upper).scale(&sign) != lower {
                return None;
            }
            for (u, c) in upper.entries() {
                out.push((n + slot * d + u, c.clone()));
            }
        }
        Some(SparseVec::from_pairs(out))
    }

    pub fn circ(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.mul(x, y)
    }

    /// Tr(x) = sum of diagonal coordinates.
    pub fn trace(&self, x: &SparseVec) -> Rat {
        let mut t = Rat::ZERO;
        for (i, c) in x.entries() {
            if *i < self.n {
                t += c;
            }
        }
        t
    }

    /// T(X, Y) = Tr(X∘Y).
    pub fn trace_form(&self, x: &SparseVec, y: &SparseVec) -> Rat {
        self.trace(&self.circ(x, y))
    }

    pub fn trace_form_matrix(&self) -> RatMatrix {
        let d = self.dim();
        let data = (0..d)
            .map(|i| {
                SparseVec::from_pairs((0..d).map(|j| (j, self.trace(self.product(i, j)))))
            })
            .collect();
        RatMatrix::from_sparse_rows(d, data)
    }

    pub fn trace_signature(&self) -> Signature {
        symmetric_signature(&self.trace_form_matrix()).expect("trace form is symmetric")
    }

    /// X∗Y = X∘Y − (Tr(X∘Y)/n)·I.
    pub fn mr_star(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let p = self.circ(x, y);
        let t = self.trace(&p) / Rat::int(self.n as i64);
        p.axpy(&-t, &self.identity())
    }

    /// Basis of the traceless subspace: E_kk − E_{k+1,k+1}, then the
    /// off-diagonal units in their original order.
    pub fn traceless_basis(&self) -> Vec<SparseVec> {
        let mut out: Vec<SparseVec> = (0..self.n - 1)
            .map(|k| SparseVec::from_pairs([(k, Rat::ONE), (k + 1, Rat::int(-1))]))
            .collect();
        out.extend((self.n..self.dim()).map(SparseVec::unit));
        out
    }

    pub fn traceless_labels(&self) -> Vec<String> {
        let mut out: Vec<String> = (0..self.n - 1)
            .map(|k| format!("E{}{}-E{}{}", k + 1, k + 1, k + 2, k + 2))
            .collect();
        out.extend(self.labels[self.n..].iter().cloned());
        out
    }

    /// Coordinates of a traceless element in [`Self::traceless_basis`].
    pub fn traceless_coords(&self, x: &SparseVec) -> Result<SparseVec, Error> {
        if !self.trace(x).is_zero() {
            return Err(Error::Check("element is not traceless".into()));
        }
        let mut out = Vec::new();
        let mut running = Rat::ZERO;
        for k in 0..self.n - 1 {
            running += &x.get(k);
            out.push((k, running.clone()));
        }
        for (i, c) in x.entries() {
            if *i >= self.n {
                out.push((*i - 1, c.clone()));
            }
        }
        Ok(SparseVec::from_pairs(out))
    }

    /// Signs of φ_s(X) = sXs on the basis.
    pub fn reflection_auto(&self, s: &[i8]) -> Result<Vec<i8>, Error> {
        if s.len() != self.n || s.iter().any(|&x| x != 1 && x != -1) {
            return Err(Error::Invalid(format!("reflection must be a ±1 vector of length {}", self.n)));
        }
        let signs: Vec<i8> = self
            .basis
            .iter()
            .map(|b| match *b {
                JordanBasis::Diag(_) => 1,
                JordanBasis::Off { p, q, .. } => s[p] * s[q],
            })
            .collect();
        let apply = |v: &SparseVec| {
            SparseVec::from_pairs(v.entries().iter().map(|(i, c)| (*i, c * &Rat::int(signs[*i] as i64))))
        };
        let d = self.dim();
        for i in 0..d {
            for j in i..d {
                let lhs = apply(self.product(i, j));
                let rhs = self.product(i, j).scale(&Rat::int((signs[i] * signs[j]) as i64));
                if lhs != rhs {
                    return Err(Error::NotAutomorphism(format!(
                        "reflection breaks {} ∘ {}",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(signs)
    }

    /// (X²∘Y)∘X = X²∘(Y∘X) on basis pairs and a fixed sample.
    pub fn jordan_identity_check(&self) -> bool {
        let d = self.dim();
        let holds = |x: &SparseVec, y: &SparseVec| {
            let x2 = self.circ(x, x);
            self.circ(&self.circ(&x2, y), x) == self.circ(&x2, &self.circ(y, x))
        };
        for i in 0..d {
            for j in 0..d {
                if !holds(&SparseVec::unit(i), &SparseVec::unit(j)) {
                    return false;
                }
            }
        }
        let xs = sample_vectors(d, SAMPLE_COUNT, SAMPLE_SEED);
        let ys = sample_vectors(d, SAMPLE_COUNT, SAMPLE_SEED + 1);
        xs.iter().zip(&ys).all(|(x, y)| holds(x, y))
    }
}

fn basis_layout(a: &AlgebraTable, n: usize) -> (Vec<JordanBasis>, Vec<String>) {
    let mut basis: Vec<JordanBasis> = (0..n).map(JordanBasis::Diag).collect();
    let mut labels: Vec<String> = (0..n).map(|k| format!("E{}{}", k + 1, k + 1)).collect();
    for (p, q) in off_diagonal_pairs(n) {
        for u in 0..a.dim() {
            basis.push(JordanBasis::Off { p, q, unit: u });
            labels.push(format!("{}[{}{}]", a.labels()[u], p + 1, q + 1));
        }
    }
    (basis, labels)
}

fn check_shape(n: usize, eta: &[i8]) -> Result<(), Error> {
    if !(n == 2 || n == 3) {
        return Err(Error::Invalid(format!("rank {n} not supported")));
    }
    if eta.len() != n || eta.iter().any(|&e| e != 1 && e != -1) {
        return Err(Error::Invalid("eta must be a ±1 vector of length n".into()));
    }
    Ok(())
}

/// Builds 𝔍_n(A) for η = (+,…,+), or its Lorentzian form for one −1 in η.
pub fn make_jordan(a: &AlgebraTable, n: usize, eta: &[i8]) -> Result<JordanAlgebra, Error> {
    check_shape(n, eta)?;
    if a.conj_sign()[a.unit()] != 1 {
        return Err(Error::Invalid("base algebra has no usable conjugation".into()));
    }
    let (basis, labels) = basis_layout(a, n);
    let mut j = JordanAlgebra {
        base: a.clone(),
        n,
        eta: eta.to_vec(),
        basis,
        labels,
        products: Vec::new(),
    };
    let d = j.basis.len();
    let mats: Vec<AMatrix> = (0..d).map(|i| j.to_matrix(&SparseVec::unit(i))).collect();
    let mut products = vec![SparseVec::new(); d * d];
    for x in 0..d {
        for y in x..d {
            let m = matrix_circ(a, n, &mats[x], &mats[y]);
            let v = j.from_matrix(&m).ok_or_else(|| {
                Error::Check(format!(
                    "{} ∘ {} leaves the η-Hermitian matrices",
                    j.labels[x], j.labels[y]
                ))
            })?;
            products[x * d + y] = v.clone();
            products[y * d + x] = v;
        }
    }
    j.products = products;
    Ok(j)
}

/// Jordan identity for η-Hermitian matrices over an arbitrary base with
/// conjugation, evaluated in the full matrix algebra (no closure assumed).
/// Samples have real diagonals.
pub fn formal_jordan_identity(a: &AlgebraTable, n: usize, eta: &[i8], samples: usize) -> Result<bool, Error> {
    check_shape(n, eta)?;
    let (basis, labels) = basis_layout(a, n);
    let shell = JordanAlgebra { base: a.clone(), n, eta: eta.to_vec(), basis, labels, products: Vec::new() };
    let d = shell.basis.len();
    let xs = sample_vectors(d, samples, SAMPLE_SEED);
    let ys = sample_vectors(d, samples, SAMPLE_SEED + 1);
    for (x, y) in xs.iter().zip(&ys) {
        let (x, y) = (shell.to_matrix(x), shell.to_matrix(y));
        let x2 = matrix_circ(a, n, &x, &x);
        let lhs = matrix_circ(a, n, &matrix_circ(a, n, &x2, &y), &x);
        let rhs = matrix_circ(a, n, &x2, &matrix_circ(a, n, &y, &x));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::{make_algebra, AlgebraName};

    fn j(name: AlgebraName, eta: &[i8]) -> JordanAlgebra {
        make_jordan(&make_algebra(&name).unwrap(), eta.len(), eta).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(j(AlgebraName::O, &[1, 1, 1]).dim(), 27);
        assert_eq!(j(AlgebraName::O, &[1, 1]).dim(), 10);
        assert_eq!(j(AlgebraName::O, &[-1, 1, 1]).dim(), 27);
        assert_eq!(j(AlgebraName::C, &[1, 1, 1]).dim(), 9);
    }

    #[test]
    fn lorentzian_lower_entries_are_negated_conjugates() {
        let jl = j(AlgebraName::O, &[-1, 1, 1]);
        // x1 sits at (1,2); its mirror at (2,1) is −x̄1.
        let i1_12 = jl.basis().iter().position(|b| *b == JordanBasis::Off { p: 0, q: 1, unit: 1 }).unwrap();
        let m = jl.to_matrix(&SparseVec::unit(i1_12));
        assert_eq!(m[3], SparseVec::unit(1));
        let i1_23 = jl.basis().iter().position(|b| *b == JordanBasis::Off { p: 1, q: 2, unit: 1 }).unwrap();
        let m = jl.to_matrix(&SparseVec::unit(i1_23));
        assert_eq!(m[7], SparseVec::unit(1).neg());
    }

    #[test]
    fn unit_and_idempotent() {
        let a = j(AlgebraName::O, &[1, 1, 1]);
        let e11 = SparseVec::unit(0);
        assert_eq!(a.circ(&e11, &e11), e11);
        for i in 0..a.dim() {
            assert_eq!(a.circ(&a.identity(), &SparseVec::unit(i)), SparseVec::unit(i));
        }
    }

    #[test]
    fn michel_radicati_example() {
        let a = j(AlgebraName::R, &[1, 1, 1]);
        let x = SparseVec::from_pairs([(0, Rat::ONE), (1, Rat::int(-1))]);
        let expect = a.circ(&x, &x).axpy(&Rat::new(-2, 3), &a.identity());
        assert_eq!(a.mr_star(&x, &x), expect);
        assert!(a.trace(&a.mr_star(&x, &x)).is_zero());
    }

    #[test]
    fn trace_signatures() {
        let s = j(AlgebraName::O, &[1, 1, 1]).trace_signature();
        assert_eq!((s.plus, s.minus, s.zero), (27, 0, 0));
        let s = j(AlgebraName::Os, &[1, 1, 1]).trace_signature();
        assert_eq!((s.plus, s.minus, s.zero), (15, 12, 0));
        let s = j(AlgebraName::O, &[-1, 1, 1]).trace_signature();
        assert_eq!(s.zero, 0);
        assert!(s.minus > 0);
    }

    #[test]
    fn reflection_signs() {
        let a = j(AlgebraName::O, &[1, 1, 1]);
        let signs = a.reflection_auto(&[1, 1, -1]).unwrap();
        assert_eq!(signs.iter().filter(|&&s| s > 0).count(), 11);
        assert!(a.reflection_auto(&[1, 1, 1]).unwrap().iter().all(|&s| s == 1));
        assert!(a.reflection_auto(&[1, 2, 1]).is_err());
    }

    #[test]
    fn albert_algebra_is_jordan() {
        assert!(j(AlgebraName::O, &[1, 1, 1]).jordan_identity_check());
        assert!(j(AlgebraName::O, &[-1, 1, 1]).jordan_identity_check());
    }

    #[test]
    fn traceless_coordinates_round_trip() {
        let a = j(AlgebraName::H, &[1, 1, 1]);
        let basis = a.traceless_basis();
        assert_eq!(basis.len(), a.dim() - 1);
        for (k, b) in basis.iter().enumerate() {
            assert_eq!(a.traceless_coords(b).unwrap(), SparseVec::unit(k));
        }
    }
}

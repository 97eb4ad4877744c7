//! The composition algebras R, C, H, O and their split forms, tensor products
//! of them, and checks of the identities those products do or do not satisfy.

pub mod profile;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ratlin::{Rat, RatVector, SparseVec};
use crate::Error;

pub use profile::{property_profile, table2, table2_products, IdentityProfile, Witness, TABLE2_EXPECTED};

/// A finite-dimensional algebra presented by basis products.
pub trait ProductTable {
    fn dim(&self) -> usize;
    /// The product of basis elements `i` and `j`.
    fn product(&self, i: usize, j: usize) -> &SparseVec;

    fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = crate::ratlin::Accumulator::new(self.dim());
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                let ab = a * b;
                acc.add_scaled(self.product(*i, *j), &ab);
            }
        }
        acc.take()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraName {
    R,
    C,
    H,
    O,
    Cs,
    Hs,
    Os,
    Tensor(Box<AlgebraName>, Box<AlgebraName>),
}

impl AlgebraName {
    pub const HURWITZ: [AlgebraName; 7] = [
        AlgebraName::R,
        AlgebraName::C,
        AlgebraName::H,
        AlgebraName::O,
        AlgebraName::Cs,
        AlgebraName::Hs,
        AlgebraName::Os,
    ];

    pub fn is_split(&self) -> bool {
        matches!(self, AlgebraName::Cs | AlgebraName::Hs | AlgebraName::Os)
    }

    pub fn hurwitz_dim(&self) -> Option<usize> {
        Some(match self {
            AlgebraName::R => 1,
            AlgebraName::C | AlgebraName::Cs => 2,
            AlgebraName::H | AlgebraName::Hs => 4,
            AlgebraName::O | AlgebraName::Os => 8,
            AlgebraName::Tensor(..) => return None,
        })
    }
}

impl fmt::Display for AlgebraName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraName::R => write!(f, "R"),
            AlgebraName::C => write!(f, "C"),
            AlgebraName::H => write!(f, "H"),
            AlgebraName::O => write!(f, "O"),
            AlgebraName::Cs => write!(f, "Cs"),
            AlgebraName::Hs => write!(f, "Hs"),
            AlgebraName::Os => write!(f, "Os"),
            AlgebraName::Tensor(a, b) => write!(f, "{a}⊗{b}"),
        }
    }
}

impl FromStr for AlgebraName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s.trim() {
            "R" => AlgebraName::R,
            "C" => AlgebraName::C,
            "H" => AlgebraName::H,
            "O" => AlgebraName::O,
            "Cs" | "Cs'" | "Csplit" => AlgebraName::Cs,
            "Hs" | "Hsplit" => AlgebraName::Hs,
            "Os" | "Osplit" => AlgebraName::Os,
            other => {
                for sep in ["⊗", "*", "x"] {
                    if let Some((a, b)) = other.split_once(sep) {
                        if let (Ok(a), Ok(b)) = (a.parse(), b.parse()) {
                            return Ok(AlgebraName::Tensor(Box::new(a), Box::new(b)));
                        }
                    }
                }
                return Err(Error::UnknownAlgebra(other.to_string()));
            }
        })
    }
}

/// An algebra with unit, conjugation and a diagonal norm form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraTable {
    name: AlgebraName,
    dim: usize,
    unit: usize,
    labels: Vec<String>,
    /// products[i * dim + j] = e_i e_j
    products: Vec<SparseVec>,
    conj_sign: Vec<i8>,
    norm_form: Vec<i8>,
}

impl ProductTable for AlgebraTable {
    fn dim(&self) -> usize {
        self.dim
    }

    fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.dim + j]
    }
}

impl AlgebraTable {
    pub fn name(&self) -> &AlgebraName {
        &self.name
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn conj_sign(&self) -> &[i8] {
        &self.conj_sign
    }

    /// N(e_i) for each basis element; the basis is orthogonal for N.
    pub fn norm_form(&self) -> &[i8] {
        &self.norm_form
    }

    /// Indices of the trace-zero basis elements (those with x̄ = −x).
    pub fn imaginary_units(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.conj_sign[i] < 0).collect()
    }

    /// e_i e_j as a signed basis element, when it is one.
    pub fn monomial(&self, i: usize, j: usize) -> Option<(usize, i64)> {
        match self.product(i, j).entries() {
            [(k, s)] => s.to_i64().map(|s| (*k, s)),
            _ => None,
        }
    }

    pub fn conj(&self, x: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(
            x.entries()
                .iter()
                .map(|(i, v)| (*i, if self.conj_sign[*i] < 0 { -v } else { v.clone() })),
        )
    }

    /// Unit coefficient of x.
    pub fn real_part(&self, x: &SparseVec) -> Rat {
        x.get(self.unit)
    }

    /// N(x) = x̄x, a multiple of the unit; returns the coefficient.
    pub fn norm(&self, x: &SparseVec) -> Rat {
        self.real_part(&self.mul(&self.conj(x), x))
    }

    /// ⟨x,y⟩ = x̄y + ȳx, returned as its unit coefficient.
    pub fn trace_form(&self, x: &SparseVec, y: &SparseVec) -> Rat {
        let a = self.mul(&self.conj(x), y);
        let b = self.mul(&self.conj(y), x);
        self.real_part(&a) + self.real_part(&b)
    }

    pub fn mul_dense(&self, x: &[Rat], y: &[Rat]) -> Result<RatVector, Error> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        Ok(self.mul(&SparseVec::from_dense(x), &SparseVec::from_dense(y)).to_dense(self.dim))
    }

    pub fn norm_dense(&self, x: &[Rat]) -> Result<Rat, Error> {
        self.check_len(x.len())?;
        Ok(self.norm(&SparseVec::from_dense(x)))
    }

    pub fn trace_form_dense(&self, x: &[Rat], y: &[Rat]) -> Result<Rat, Error> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        Ok(self.trace_form(&SparseVec::from_dense(x), &SparseVec::from_dense(y)))
    }

    pub fn conj_dense(&self, x: &[Rat]) -> Result<RatVector, Error> {
        self.check_len(x.len())?;
        Ok(self.conj(&SparseVec::from_dense(x)).to_dense(self.dim))
    }

    fn check_len(&self, got: usize) -> Result<(), Error> {
        if got == self.dim {
            Ok(())
        } else {
            Err(Error::Dimension { expected: self.dim, got })
        }
    }

    /// Signature (plus, minus) of the diagonal norm form.
    pub fn norm_signature(&self) -> (usize, usize) {
        let plus = self.norm_form.iter().filter(|&&s| s > 0).count();
        (plus, self.dim - plus)
    }

    /// Multiplication table as signed triples (i, j, k, sign) meaning
    /// e_i e_j = sign · e_k; only valid for monomial tables.
    pub fn signed_triples(&self) -> Vec<(usize, usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, s) in self.product(i, j).entries() {
                    out.push((i, j, *k, s.to_i64().expect("integral structure constant")));
                }
            }
        }
        out
    }

    pub fn export_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name.to_string(),
            "dim": self.dim,
            "unit": self.unit,
            "labels": self.labels,
            "conj_sign": self.conj_sign,
            "norm_form": self.norm_form,
            "mult": self.signed_triples(),
        })
    }

    /// Restriction to the span of the given basis elements, which must be
    /// closed under multiplication and contain the unit.
    fn subalgebra(&self, name: AlgebraName, idx: &[usize]) -> AlgebraTable {
        let mut pos = vec![usize::MAX; self.dim];
        for (k, &i) in idx.iter().enumerate() {
            pos[i] = k;
        }
        let n = idx.len();
        let mut products = Vec::with_capacity(n * n);
        for &i in idx {
            for &j in idx {
                let p = self.product(i, j);
                assert!(p.entries().iter().all(|(k, _)| pos[*k] != usize::MAX), "not closed");
                products.push(p.remap(|k| Some(pos[k])));
            }
        }
        AlgebraTable {
            name,
            dim: n,
            unit: pos[self.unit],
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            products,
            conj_sign: idx.iter().map(|&i| self.conj_sign[i]).collect(),
            norm_form: idx.iter().map(|&i| self.norm_form[i]).collect(),
        }
    }

    fn finish_norm(mut self) -> AlgebraTable {
        self.norm_form = (0..self.dim)
            .map(|i| {
                let n = self.norm(&SparseVec::unit(i));
                n.signum() as i8
            })
            .collect();
        self
    }
}

fn real() -> AlgebraTable {
    AlgebraTable {
        name: AlgebraName::R,
        dim: 1,
        unit: 0,
        labels: vec!["1".into()],
        products: vec![SparseVec::unit(0)],
        conj_sign: vec![1],
        norm_form: vec![1],
    }
}

/// Doubles `a` with (p + qℓ)(r + sℓ) = (pr + γ s̄q) + (sp + q r̄)ℓ, so ℓ² = γ.
/// New basis elements e_{n+i} = e_i ℓ.
fn cayley_dickson(a: &AlgebraTable, gamma: i64, name: AlgebraName) -> AlgebraTable {
    let n = a.dim;
    let d = 2 * n;
    let g = Rat::int(gamma);
    let conj_basis = |i: usize| -> Rat { Rat::int(a.conj_sign[i] as i64) };
    let mut products = Vec::with_capacity(d * d);
    for x in 0..d {
        for y in 0..d {
            let (xa, xb) = if x < n { (Some(x), None) } else { (None, Some(x - n)) };
            let (ya, yb) = if y < n { (Some(y), None) } else { (None, Some(y - n)) };
            let mut pairs: Vec<(usize, Rat)> = Vec::new();
            // first component: p r + γ s̄ q
            if let (Some(p), Some(r)) = (xa, ya) {
                pairs.extend(a.product(p, r).entries().iter().cloned());
            }
            if let (Some(q), Some(s)) = (xb, yb) {
                let c = &g * &conj_basis(s);
                pairs.extend(a.product(s, q).entries().iter().map(|(k, v)| (*k, v * &c)));
            }
            // second component: s p + q r̄
            if let (Some(p), Some(s)) = (xa, yb) {
                pairs.extend(a.product(s, p).entries().iter().map(|(k, v)| (k + n, v.clone())));
            }
            if let (Some(q), Some(r)) = (xb, ya) {
                let c = conj_basis(r);
                pairs.extend(a.product(q, r).entries().iter().map(|(k, v)| (k + n, v * &c)));
            }
            products.push(SparseVec::from_pairs(pairs));
        }
    }
    let mut labels = Vec::with_capacity(d);
    labels.push("1".to_string());
    for k in 1..d {
        labels.push(format!("i{k}"));
    }
    let mut conj_sign = vec![-1i8; d];
    conj_sign[a.unit] = 1;
    AlgebraTable { name, dim: d, unit: a.unit, labels, products, conj_sign, norm_form: vec![0; d] }
        .finish_norm()
}

/// Builds one of the seven Hurwitz algebras.
///
/// Basis 1, i1, ..., with H = ⟨1,i1,i2,i3⟩ (i1 i2 = i3) and O = H ⊕ Hℓ,
/// ℓ = i4, i_k ℓ = i_{k+4}. This gives the oriented Fano lines
/// 123, 145, 246, 347, 176, 257, 365. Os doubles H with ℓ² = +1, so
/// i4..i7 square to +1; Cs = ⟨1,i4⟩ and Hs = ⟨1,i1,i4,i5⟩ inside Os.
pub fn make_algebra(name: &AlgebraName) -> Result<AlgebraTable, Error> {
    let r = real();
    let c = cayley_dickson(&r, -1, AlgebraName::C);
    let h = cayley_dickson(&c, -1, AlgebraName::H);
    Ok(match name {
        AlgebraName::R => r,
        AlgebraName::C => c,
        AlgebraName::H => h,
        AlgebraName::O => cayley_dickson(&h, -1, AlgebraName::O),
        AlgebraName::Os => cayley_dickson(&h, 1, AlgebraName::Os),
        AlgebraName::Cs => cayley_dickson(&h, 1, AlgebraName::Os).subalgebra(AlgebraName::Cs, &[0, 4]),
        AlgebraName::Hs => {
            cayley_dickson(&h, 1, AlgebraName::Os).subalgebra(AlgebraName::Hs, &[0, 1, 4, 5])
        }
        AlgebraName::Tensor(a, b) => tensor_algebra(&make_algebra(a)?, &make_algebra(b)?),
    })
}

pub fn make_named(name: &str) -> Result<AlgebraTable, Error> {
    make_algebra(&name.parse()?)
}

/// A ⊗ B with (a⊗b)(c⊗d) = ac ⊗ bd; basis index i·dim B + j.
pub fn tensor_algebra(a: &AlgebraTable, b: &AlgebraTable) -> AlgebraTable {
    let (na, nb) = (a.dim, b.dim);
    let d = na * nb;
    let mut products = Vec::with_capacity(d * d);
    for x in 0..d {
        for y in 0..d {
            let (i, j) = (x / nb, x % nb);
            let (k, l) = (y / nb, y % nb);
            let mut pairs = Vec::new();
            for (p, u) in a.product(i, k).entries() {
                for (q, v) in b.product(j, l).entries() {
                    pairs.push((p * nb + q, u * v));
                }
            }
            products.push(SparseVec::from_pairs(pairs));
        }
    }
    let mut labels = Vec::with_capacity(d);
    let mut conj_sign = Vec::with_capacity(d);
    let mut norm_form = Vec::with_capacity(d);
    for i in 0..na {
        for j in 0..nb {
            labels.push(format!("{}⊗{}", a.labels[i], b.labels[j]));
            conj_sign.push(a.conj_sign[i] * b.conj_sign[j]);
            norm_form.push(a.norm_form[i] * b.norm_form[j]);
        }
    }
    AlgebraTable {
        name: AlgebraName::Tensor(Box::new(a.name.clone()), Box::new(b.name.clone())),
        dim: d,
        unit: a.unit * nb + b.unit,
        labels,
        products,
        conj_sign,
        norm_form,
    }
}

/// A basis quadruple violating the polarized composition law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionFailure {
    pub x: String,
    pub x2: String,
    pub y: String,
    pub y2: String,
}

/// Checks ⟨xy, x′y′⟩ + ⟨x′y, xy′⟩ = ⟨x,x′⟩⟨y,y′⟩ on all basis quadruples.
///
/// This is the full polarization of N(xy) = N(x)N(y); setting x = x′ or
/// y = y′ gives the two partially polarized forms. Returns the first failure.
pub fn composition_failure(a: &AlgebraTable) -> Option<CompositionFailure> {
    let n = a.dim;
    let e = |i: usize| SparseVec::unit(i);
    let form: Vec<Vec<Rat>> =
        (0..n).map(|i| (0..n).map(|j| a.trace_form(&e(i), &e(j))).collect()).collect();
    let prod = |i: usize, j: usize| a.product(i, j);
    let ip = |u: &SparseVec, v: &SparseVec| -> Rat {
        let mut acc = Rat::ZERO;
        for (i, x) in u.entries() {
            for (j, y) in v.entries() {
                if !form[*i][*j].is_zero() {
                    acc += &(&(x * y) * &form[*i][*j]);
                }
            }
        }
        acc
    };
    for x in 0..n {
        for x2 in x..n {
            for y in 0..n {
                for y2 in y..n {
                    let lhs = ip(prod(x, y), prod(x2, y2)) + ip(prod(x2, y), prod(x, y2));
                    let rhs = &form[x][x2] * &form[y][y2];
                    if lhs != rhs {
                        return Some(CompositionFailure {
                            x: a.labels[x].clone(),
                            x2: a.labels[x2].clone(),
                            y: a.labels[y].clone(),
                            y2: a.labels[y2].clone(),
                        });
                    }
                }
            }
        }
    }
    None
}

pub fn check_composition(a: &AlgebraTable) -> bool {
    composition_failure(a).is_none()
}

//! The Tits construction of the magic-square Lie algebras m₃(A₁, A₂) and
//! m₁,₂(A₁, A₂), dimension cross-checks, and the octonionic tables.

mod cache;
mod dims;
mod tables;

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::hurwitz::{make_algebra, AlgebraName, AlgebraTable, ProductTable};
use crate::jordan::{make_jordan, JordanAlgebra};
use crate::liealg::{derivations_of, LieAlgebra, MatrixLie, Segment};
use crate::ratlin::{Echelon, Rat, RatMatrix, SparseVec};
use crate::Error;

pub use dims::{bs_dim_check, order2_dim_check, vinberg_dim_check, DimAccount};
pub use tables::{
    cell_inputs, expected_label, octonionic_tables, table_cell_name, CellReport, TableKind, TableReport, EXPECTED_M11, EXPECTED_M12,
    EXPECTED_M2, EXPECTED_M3, TABLE_COLUMNS, TABLE_ROWS,
};
pub use cache::{cell, convention_hash, Cell, CACHE_ENV};

/// Coefficients of the tensor–tensor bracket
/// [a⊗X, b⊗Y] = α T(X,Y) D_{a,b} + μ Im(ab)⊗(X∗Y) + γ t(a,b) [L_X, L_Y].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TitsCoefficients {
    pub alpha: Rat,
    pub mu: Rat,
    pub gamma: Rat,
}

/// η = (+,+,+) gives m₃, η = (−,+,+) gives m₁,₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Signature3 {
    Euclidean,
    Lorentzian,
}

impl Signature3 {
    pub fn eta(self) -> [i8; 3] {
        match self {
            Signature3::Euclidean => [1, 1, 1],
            Signature3::Lorentzian => [-1, 1, 1],
        }
    }

    pub fn from_eta(eta: &[i8]) -> Result<Self, Error> {
        match eta {
            [1, 1, 1] => Ok(Signature3::Euclidean),
            [-1, 1, 1] => Ok(Signature3::Lorentzian),
            _ => Err(Error::Invalid(format!("unsupported η {eta:?}; use (+,+,+) or (−,+,+)"))),
        }
    }
}

/// Everything the bracket is assembled from, independent of the coefficients.
#[derive(Debug)]
pub struct TitsParts {
    pub a1: AlgebraTable,
    pub j: JordanAlgebra,
    pub der_a1: MatrixLie,
    pub der_j: MatrixLie,
    /// Basis indices of Im A₁ inside A₁.
    pub im: Vec<usize>,
    /// Traceless basis of 𝔍 as vectors of 𝔍.
    pub j0: Vec<SparseVec>,
    // per pair of Im units (a, b)
    dab: Vec<SparseVec>,
    imab: Vec<SparseVec>,
    tab: Vec<Rat>,
    // per pair of traceless basis elements (x, y)
    txy: Vec<Rat>,
    star: Vec<SparseVec>,
    lxy: Vec<SparseVec>,
    // actions
    d1_act: Vec<Vec<SparseVec>>,
    dj_act: Vec<Vec<SparseVec>>,
}

impl TitsParts {
    pub fn new(a1: &AlgebraTable, a2: &AlgebraTable, sig: Signature3) -> Result<TitsParts, Error> {
        let j = make_jordan(a2, 3, &sig.eta())?;
        let der_a1 = derivations_of(a1, "derA1:")?;
        let der_j = derivations_of(&j, "derJ:")?;
        let im = a1.imaginary_units();
        let mut im_pos = vec![usize::MAX; a1.dim()];
        for (k, &i) in im.iter().enumerate() {
            im_pos[i] = k;
        }
        let to_im = |v: &SparseVec| -> Result<SparseVec, Error> {
            if v.entries().iter().any(|(i, _)| im_pos[*i] == usize::MAX) {
                return Err(Error::Check("element leaves Im A₁".into()));
            }
            Ok(v.remap(|i| Some(im_pos[i])))
        };
        let ni = im.len();
        let n1 = a1.dim();
        let left = |a: usize| -> RatMatrix {
            let rows: Vec<SparseVec> = (0..n1).map(|x| a1.product(a, x).clone()).collect();
            RatMatrix::from_sparse_rows(n1, rows).transpose()
        };
        let right = |a: usize| -> RatMatrix {
            let rows: Vec<SparseVec> = (0..n1).map(|x| a1.product(x, a).clone()).collect();
            RatMatrix::from_sparse_rows(n1, rows).transpose()
        };
        let mut dab = Vec::with_capacity(ni * ni);
        let mut imab = Vec::with_capacity(ni * ni);
        let mut tab = Vec::with_capacity(ni * ni);
        for &a in &im {
            for &b in &im {
                let (la, lb, ra, rb) = (left(a), left(b), right(a), right(b));
                let d = la.commutator(&lb).add(&la.commutator(&rb)).add(&ra.commutator(&rb));
                let c = der_a1
                    .coords_of_matrix(&d)
                    .ok_or_else(|| Error::Check("D_{a,b} is not a derivation".into()))?;
                dab.push(c);
                let ab = a1.product(a, b);
                let re = a1.real_part(ab);
                let im_part = ab.axpy(&-re, &SparseVec::unit(a1.unit()));
                imab.push(to_im(&im_part)?);
                tab.push(a1.trace_form(&SparseVec::unit(a), &SparseVec::unit(b)));
            }
        }
        let j0 = j.traceless_basis();
        let nj = j0.len();
        let lmat: Vec<RatMatrix> = j0
            .iter()
            .map(|x| {
                let cols: Vec<SparseVec> = (0..j.dim()).map(|z| j.circ(x, &SparseVec::unit(z))).collect();
                RatMatrix::from_sparse_rows(j.dim(), cols).transpose()
            })
            .collect();
        let pairs: Vec<(usize, usize)> = (0..nj).flat_map(|x| (0..nj).map(move |y| (x, y))).collect();
        let per_pair: Vec<Result<(Rat, SparseVec, SparseVec), Error>> = pairs
            .par_iter()
            .map(|&(x, y)| {
                let t = j.trace_form(&j0[x], &j0[y]);
                let s = j.traceless_coords(&j.mr_star(&j0[x], &j0[y]))?;
                let l = if x == y {
                    SparseVec::new()
                } else {
                    der_j
                        .coords_of_matrix(&lmat[x].commutator(&lmat[y]))
                        .ok_or_else(|| Error::Check("[L_X, L_Y] is not a derivation".into()))?
                };
                Ok((t, s, l))
            })
            .collect();
        let mut txy = Vec::with_capacity(nj * nj);
        let mut star = Vec::with_capacity(nj * nj);
        let mut lxy = Vec::with_capacity(nj * nj);
        for r in per_pair {
            let (t, s, l) = r?;
            txy.push(t);
            star.push(s);
            lxy.push(l);
        }
        let d1_act = (0..der_a1.dim())
            .map(|p| {
                let m = der_a1.matrix(p, 0);
                im.iter().map(|&a| to_im(&m.mul_sparse_vec(&SparseVec::unit(a)))).collect()
            })
            .collect::<Result<Vec<Vec<SparseVec>>, Error>>()?;
        let dj_act = (0..der_j.dim())
            .map(|p| {
                let m = der_j.matrix(p, 0);
                j0.iter().map(|x| j.traceless_coords(&m.mul_sparse_vec(x))).collect()
            })
            .collect::<Result<Vec<Vec<SparseVec>>, Error>>()?;
        Ok(TitsParts { a1: a1.clone(), j, der_a1, der_j, im, j0, dab, imab, tab, txy, star, lxy, d1_act, dj_act })
    }

    pub fn dim(&self) -> usize {
        self.der_a1.dim() + self.der_j.dim() + self.im.len() * self.j0.len()
    }

    pub fn offsets(&self) -> (usize, usize) {
        let d1 = self.der_a1.dim();
        (d1, d1 + self.der_j.dim())
    }

    /// Basis index of Im-unit `a` (position in `im`) tensored with traceless
    /// element `x`.
    pub fn tensor_index(&self, a: usize, x: usize) -> usize {
        self.offsets().1 + a * self.j0.len() + x
    }

    fn labels(&self) -> (Vec<String>, Vec<Segment>) {
        let (d1, dj) = (self.der_a1.dim(), self.der_j.dim());
        let mut labels: Vec<String> = (0..d1).map(|k| format!("derA1:{k}")).collect();
        labels.extend((0..dj).map(|k| format!("derJ:{k}")));
        let jl = self.j.traceless_labels();
        for &a in &self.im {
            for x in &jl {
                labels.push(format!("{}⊗{}", self.a1.labels()[a], x));
            }
        }
        let segments = vec![
            Segment { name: "derA1".into(), start: 0, len: d1 },
            Segment { name: "derJ".into(), start: d1, len: dj },
            Segment { name: "tensor".into(), start: d1 + dj, len: self.im.len() * self.j0.len() },
        ];
        (labels, segments)
    }

    /// Assembles the Lie bracket with the given coefficients.
    pub fn assemble(&self, c: &TitsCoefficients) -> LieAlgebra {
        let (o1, o2) = self.offsets();
        let (ni, nj) = (self.im.len(), self.j0.len());
        let n = self.dim();
        let (labels, segments) = self.labels();
        let tensor = |a: usize, v: &SparseVec| v.remap(|x| Some(o2 + a * nj + x));
        let outer = |av: &SparseVec, x: usize| av.remap(|a| Some(o2 + a * nj + x));
        let rows: Vec<Vec<SparseVec>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (i + 1..n)
                    .map(|j| {
                        if j < o1 {
                            self.der_a1.algebra.bracket_basis(i, j).clone()
                        } else if i < o1 && j < o2 {
                            SparseVec::new()
                        } else if j < o2 {
                            self.der_j.algebra.bracket_basis(i - o1, j - o1).remap(|k| Some(k + o1))
                        } else {
                            let (b, y) = ((j - o2) / nj, (j - o2) % nj);
                            if i < o1 {
                                outer(&self.d1_act[i][b], y)
                            } else if i < o2 {
                                tensor(b, &self.dj_act[i - o1][y])
                            } else {
                                let (a, x) = ((i - o2) / nj, (i - o2) % nj);
                                let mut out = Vec::new();
                                let t = &self.txy[x * nj + y];
                                if !t.is_zero() && !c.alpha.is_zero() {
                                    let s = &c.alpha * t;
                                    for (k, v) in self.dab[a * ni + b].entries() {
                                        out.push((*k, v * &s));
                                    }
                                }
                                let ab = &self.imab[a * ni + b];
                                let st = &self.star[x * nj + y];
                                if !c.mu.is_zero() {
                                    for (p, u) in ab.entries() {
                                        for (q, v) in st.entries() {
                                            out.push((o2 + p * nj + q, &(u * v) * &c.mu));
                                        }
                                    }
                                }
                                let tr = &self.tab[a * ni + b];
                                if !tr.is_zero() && !c.gamma.is_zero() {
                                    let s = &c.gamma * tr;
                                    for (k, v) in self.lxy[x * nj + y].entries() {
                                        out.push((o1 + k, v * &s));
                                    }
                                }
                                SparseVec::from_pairs(out)
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        LieAlgebra::from_upper(labels, segments, |i, j| rows[i][j - i - 1].clone())
    }

    /// The automorphism induced by X ↦ sXs on 𝔍: identity on der A₁,
    /// D ↦ φ D φ on der 𝔍, a⊗X ↦ a⊗φ(X).
    pub fn reflection_theta(&self, s: &[i8]) -> Result<RatMatrix, Error> {
        let signs = self.j.reflection_auto(s)?;
        let (o1, o2) = self.offsets();
        let nj = self.j0.len();
        let mut cols: Vec<SparseVec> = vec![SparseVec::new(); self.dim()];
        for (k, col) in cols.iter_mut().enumerate().take(o1) {
            *col = SparseVec::unit(k);
        }
        let dj = self.j.dim();
        for p in 0..self.der_j.dim() {
            let flat = self.der_j.flat(p);
            let conj = SparseVec::from_pairs(flat.entries().iter().map(|(i, x)| {
                let (r, c) = (i / dj, i % dj);
                (*i, x * &Rat::int((signs[r] * signs[c]) as i64))
            }));
            let v = self
                .der_j
                .coords(&conj)
                .ok_or_else(|| Error::NotAutomorphism("φDφ is not a derivation".into()))?;
            cols[o1 + p] = v.remap(|k| Some(o1 + k));
        }
        for x in 0..nj {
            let image = self.j.traceless_coords(&SparseVec::from_pairs(
                self.j0[x].entries().iter().map(|(i, v)| (*i, v * &Rat::int(signs[*i] as i64))),
            ))?;
            for a in 0..self.im.len() {
                cols[o2 + a * nj + x] = image.remap(|q| Some(o2 + a * nj + q));
            }
        }
        Ok(RatMatrix::from_sparse_rows(self.dim(), cols).transpose())
    }
}

/// A magic-square Lie algebra with its construction data.
#[derive(Debug)]
pub struct TitsAlgebra {
    pub a1: AlgebraName,
    pub a2: AlgebraName,
    pub signature: Signature3,
    pub coefficients: TitsCoefficients,
    pub parts: TitsParts,
    pub algebra: LieAlgebra,
}

/// Result of fitting (α, γ) to the Jacobi identity with μ = 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Calibration {
    pub coefficients: TitsCoefficients,
    pub cells: Vec<String>,
    pub equations: usize,
    /// Whether (α, γ) lies in {±1/12, ±1/4, ±1/6} × {±1/2, ±1/4, ±1}.
    pub on_nominal_grid: bool,
}

fn jacobi_residual(l: &LieAlgebra, i: usize, j: usize, k: usize) -> SparseVec {
    let mut acc = crate::ratlin::Accumulator::new(l.dim());
    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
        for (m, x) in l.bracket_basis(a, b).entries() {
            acc.add_scaled(l.bracket_basis(*m, c), x);
        }
    }
    acc.take()
}

/// Solves the Jacobi identity for (α, γ). Cells whose Im A₁ has fewer than
/// three units leave some coefficients unconstrained, so the fit uses the
/// quaternionic row.
pub fn calibrate_on(cells: &[(AlgebraName, AlgebraName)]) -> Result<Calibration, Error> {
    let mut e = Echelon::new(3);
    let mut equations = 0;
    for (a1, a2) in cells {
        let parts = TitsParts::new(&make_algebra(a1)?, &make_algebra(a2)?, Signature3::Euclidean)?;
        let coef = |alpha: i64, gamma: i64| TitsCoefficients {
            alpha: Rat::int(alpha),
            mu: Rat::ONE,
            gamma: Rat::int(gamma),
        };
        let l00 = parts.assemble(&coef(0, 0));
        let l10 = parts.assemble(&coef(1, 0));
        let l01 = parts.assemble(&coef(0, 1));
        let n = l00.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let r00 = jacobi_residual(&l00, i, j, k);
                    let ra = jacobi_residual(&l10, i, j, k).sub(&r00);
                    let rg = jacobi_residual(&l01, i, j, k).sub(&r00);
                    let mut comps: Vec<usize> =
                        r00.entries().iter().chain(ra.entries()).chain(rg.entries()).map(|(c, _)| *c).collect();
                    comps.sort_unstable();
                    comps.dedup();
                    for c in comps {
                        let row = SparseVec::from_pairs([(0, ra.get(c)), (1, rg.get(c)), (2, r00.get(c))]);
                        equations += 1;
                        e.push(&row);
                    }
                }
            }
        }
    }
    let rref = e.finish();
    let kernel = rref.kernel();
    if kernel.len() != 1 || kernel[0].get(2).is_zero() {
        return Err(Error::Check(format!(
            "Jacobi does not determine (α, γ): solution space of dimension {}",
            kernel.len()
        )));
    }
    let v = &kernel[0];
    let w = v.get(2);
    let alpha = v.get(0) / &w;
    let gamma = v.get(1) / &w;
    let grid_a = [Rat::new(1, 12), Rat::new(1, 4), Rat::new(1, 6)];
    let grid_g = [Rat::new(1, 2), Rat::new(1, 4), Rat::ONE];
    let on_nominal_grid = grid_a.iter().any(|g| *g == alpha.abs()) && grid_g.iter().any(|g| *g == gamma.abs());
    Ok(Calibration {
        coefficients: TitsCoefficients { alpha, mu: Rat::ONE, gamma },
        cells: cells.iter().map(|(a, b)| format!("m3({a},{b})")).collect(),
        equations,
        on_nominal_grid,
    })
}

pub const CALIBRATION_CELLS: [(AlgebraName, AlgebraName); 2] =
    [(AlgebraName::H, AlgebraName::R), (AlgebraName::H, AlgebraName::C)];

/// The frozen calibration used by every construction.
pub fn calibration() -> &'static Calibration {
    static CAL: OnceLock<Calibration> = OnceLock::new();
    CAL.get_or_init(|| calibrate_on(&CALIBRATION_CELLS).unwrap_or_else(|e| panic!("calibration failed: {e}")))
}

pub fn tits_construct_with(
    a1: &AlgebraName,
    a2: &AlgebraName,
    signature: Signature3,
    coefficients: TitsCoefficients,
) -> Result<TitsAlgebra, Error> {
    let parts = TitsParts::new(&make_algebra(a1)?, &make_algebra(a2)?, signature)?;
    let algebra = parts.assemble(&coefficients);
    Ok(TitsAlgebra { a1: a1.clone(), a2: a2.clone(), signature, coefficients, parts, algebra })
}

/// Builds m₃(A₁, A₂) or m₁,₂(A₁, A₂) with the calibrated bracket and
/// verifies Jacobi exactly.
pub fn tits_construct(a1: &AlgebraName, a2: &AlgebraName, signature: Signature3) -> Result<TitsAlgebra, Error> {
    let t = tits_construct_with(a1, a2, signature, calibration().coefficients.clone())?;
    if let Some((i, j, k)) = t.algebra.jacobi_failure() {
        let l = t.algebra.labels();
        return Err(Error::Check(format!(
            "Jacobi fails on ({}, {}, {}) in {}",
            l[i],
            l[j],
            l[k],
            cell_name(a1, a2, signature)
        )));
    }
    Ok(t)
}

pub fn cell_name(a1: &AlgebraName, a2: &AlgebraName, signature: Signature3) -> String {
    match signature {
        Signature3::Euclidean => format!("m3({a1},{a2})"),
        Signature3::Lorentzian => format!("m12({a1},{a2})"),
    }
}

impl TitsAlgebra {
    pub fn name(&self) -> String {
        cell_name(&self.a1, &self.a2, self.signature)
    }

    /// [derA1, derJ] = 0 and [der, tensor] ⊆ tensor.
    pub fn grading_holds(&self) -> bool {
        let (o1, o2) = self.parts.offsets();
        let n = self.algebra.dim();
        let in_tensor = |v: &SparseVec| v.entries().iter().all(|(k, _)| *k >= o2);
        (0..o1).all(|i| (o1..o2).all(|j| self.algebra.bracket_basis(i, j).is_empty()))
            && (0..o2).all(|i| (o2..n).all(|j| in_tensor(self.algebra.bracket_basis(i, j))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cells() {
        use AlgebraName::*;
        let t = tits_construct(&R, &R, Signature3::Euclidean).unwrap();
        assert_eq!(t.algebra.dim(), 3);
        assert_eq!(t.algebra.character().unwrap(), -3);
        let t = tits_construct(&C, &C, Signature3::Euclidean).unwrap();
        assert_eq!(t.algebra.dim(), 16);
        assert!(t.grading_holds());
        let t = tits_construct(&H, &H, Signature3::Euclidean).unwrap();
        assert_eq!(t.algebra.dim(), 66);
        assert_eq!(t.algebra.character().unwrap(), -66);
    }
}

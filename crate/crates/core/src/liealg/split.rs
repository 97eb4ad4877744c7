use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::LieAlgebra;
use crate::ratlin::{symmetric_signature, Rat, RatMatrix, Signature, SparseVec, Subspace};
use crate::Error;

/// g = k ⊕ m for an involutive automorphism θ (k = +1, m = −1 eigenspace).
#[derive(Clone, Debug)]
pub struct InvolutionSplit {
    pub theta: RatMatrix,
    pub k: Subspace,
    pub m: Subspace,
}

impl InvolutionSplit {
    pub fn k_basis(&self) -> &[SparseVec] {
        self.k.basis()
    }

    pub fn m_basis(&self) -> &[SparseVec] {
        self.m.basis()
    }
}

/// Image of each basis vector under (1 ± θ)/2, reduced to a basis.
fn eigenspace(theta: &RatMatrix, sign: i64) -> Subspace {
    let n = theta.rows();
    let half = Rat::new(1, 2);
    let t = theta.transpose();
    let cols: Vec<SparseVec> = (0..n)
        .map(|j| {
            let tj = t.row(j).scale(&Rat::int(sign));
            SparseVec::unit(j).add(&tj).scale(&half)
        })
        .filter(|v| !v.is_empty())
        .collect();
    Subspace::span(n, &cols)
}

/// Checks θ² = 1 and θ[x, y] = [θx, θy] on basis pairs.
pub fn check_automorphism(l: &LieAlgebra, theta: &RatMatrix) -> Result<(), Error> {
    let n = l.dim();
    if theta.rows() != n || theta.cols() != n {
        return Err(Error::Dimension { expected: n, got: theta.rows() });
    }
    if theta.mul(theta) != RatMatrix::identity(n) {
        return Err(Error::NotAutomorphism("θ² ≠ 1".into()));
    }
    let cols: Vec<SparseVec> = theta.transpose().row_vecs().to_vec();
    let bad = (0..n).into_par_iter().find_map_first(|i| {
        (i + 1..n).find_map(|j| {
            let lhs = theta.mul_sparse_vec(l.bracket_basis(i, j));
            let rhs = l.bracket(&cols[i], &cols[j]);
            (lhs != rhs).then_some((i, j))
        })
    });
    match bad {
        Some((i, j)) => Err(Error::NotAutomorphism(format!(
            "θ does not preserve [{}, {}]",
            l.labels()[i],
            l.labels()[j]
        ))),
        None => Ok(()),
    }
}

/// Splits span(within) into the ±1 eigenspaces of θ. `within` must be
/// θ-stable.
pub fn split_within(theta: &RatMatrix, within: &[SparseVec]) -> (Subspace, Subspace) {
    let n = theta.rows();
    let half = Rat::new(1, 2);
    let (mut plus, mut minus) = (Vec::new(), Vec::new());
    for v in within {
        let tv = theta.mul_sparse_vec(v);
        plus.push(v.add(&tv).scale(&half));
        minus.push(v.sub(&tv).scale(&half));
    }
    plus.retain(|v| !v.is_empty());
    minus.retain(|v| !v.is_empty());
    (Subspace::span(n, &plus), Subspace::span(n, &minus))
}

/// Checks θ² = 1 and θ[x, y] = [θx, θy] on basis pairs, then splits and
/// verifies [k,k] ⊆ k, [k,m] ⊆ m, [m,m] ⊆ k.
pub fn involution_split(l: &LieAlgebra, theta: &RatMatrix) -> Result<InvolutionSplit, Error> {
    check_automorphism(l, theta)?;
    let n = l.dim();
    let k = eigenspace(theta, 1);
    let m = eigenspace(theta, -1);
    if k.dim() + m.dim() != n {
        return Err(Error::Check("eigenspaces do not span".into()));
    }
    let split = InvolutionSplit { theta: theta.clone(), k, m };
    match bracket_inclusions(l, theta, split.k_basis(), split.m_basis()) {
        Inclusions { kk: false, .. } => Err(Error::Check("[k,k] ⊄ k".into())),
        Inclusions { km: false, .. } => Err(Error::Check("[k,m] ⊄ m".into())),
        Inclusions { mm: false, .. } => Err(Error::Check("[m,m] ⊄ k".into())),
        _ => Ok(split),
    }
}

/// Which of [k,k] ⊆ k, [k,m] ⊆ m, [m,m] ⊆ k hold, with k and m read as
/// the ±1 eigenvectors of θ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inclusions {
    pub kk: bool,
    pub km: bool,
    pub mm: bool,
}

impl Inclusions {
    pub fn all(&self) -> bool {
        self.kk && self.km && self.mm
    }
}

pub fn bracket_inclusions(l: &LieAlgebra, theta: &RatMatrix, kb: &[SparseVec], mb: &[SparseVec]) -> Inclusions {
    let eigen = |v: &SparseVec, sign: i64| theta.mul_sparse_vec(v) == v.scale(&Rat::int(sign));
    let kk = (0..kb.len())
        .into_par_iter()
        .all(|a| (a + 1..kb.len()).all(|b| eigen(&l.bracket(&kb[a], &kb[b]), 1)));
    let km = (0..kb.len())
        .into_par_iter()
        .all(|a| mb.iter().all(|y| eigen(&l.bracket(&kb[a], y), -1)));
    let mm = (0..mb.len())
        .into_par_iter()
        .all(|a| (a + 1..mb.len()).all(|b| eigen(&l.bracket(&mb[a], &mb[b]), 1)));
    Inclusions { kk, km, mm }
}

/// Inertia of `form` restricted to span(vectors); plus = non-compact.
pub fn restricted_signature(form: &RatMatrix, vectors: &[SparseVec]) -> Signature {
    symmetric_signature(&form.gram(vectors)).expect("Gram matrix of a symmetric form is symmetric")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::so3;

    #[test]
    fn identity_involution() {
        let l = so3();
        let s = involution_split(&l, &RatMatrix::identity(3)).unwrap();
        assert_eq!((s.k.dim(), s.m.dim()), (3, 0));
    }

    #[test]
    fn rotation_by_pi() {
        // diag(1,−1,−1) fixes L1 and negates L2, L3: k = so(2), m = 2-dim.
        let l = so3();
        let theta = RatMatrix::diagonal(&[Rat::ONE, Rat::int(-1), Rat::int(-1)]);
        let s = involution_split(&l, &theta).unwrap();
        assert_eq!((s.k.dim(), s.m.dim()), (1, 2));
        let sig = restricted_signature(&l.killing_form(), s.m_basis());
        assert_eq!((sig.plus, sig.minus), (0, 2));
    }

    #[test]
    fn rejects_non_automorphism() {
        let l = so3();
        let theta = RatMatrix::diagonal(&[Rat::ONE, Rat::ONE, Rat::int(-1)]);
        // L1 L2 fixed but their bracket L3 negated
        assert!(involution_split(&l, &theta).is_err());
    }
}

//! Splitting a semisimple subalgebra into ideals.
//!
//! On a simple ideal kᵢ ⊆ k ⊆ g every invariant form is a multiple of the
//! Killing form of kᵢ, so K_k = cᵢ · B|_kᵢ there. The generalized eigenspaces
//! of (K_k, B|_k) are therefore sums of ideals; ideals with equal ratio stay
//! merged.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::LieAlgebra;
use crate::ratlin::{kernel_basis_sparse, symmetric_signature, Rat, RatMatrix, SparseVec, Subspace};
use crate::Error;

const KRYLOV_SEED: u64 = 0x1d_ea15;

/// One eigenspace of K_k relative to the ambient form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealPart {
    pub dim: usize,
    /// nc − c from the ambient form.
    pub chi: i64,
    /// K_k / B on this part; zero on the centre.
    pub ratio: Rat,
}

/// Ratios and eigenspaces of K_k relative to `form` restricted to `k`.
pub fn ideal_decomposition(l: &LieAlgebra, k: &Subspace, form: &RatMatrix) -> Result<Vec<IdealPart>, Error> {
    let m = k.dim();
    if m == 0 {
        return Ok(Vec::new());
    }
    let labels = (0..m).map(|i| format!("k{i}")).collect();
    let kk = l.subalgebra(k.basis(), labels)?.killing_form();
    let bk = form.gram(k.basis());
    let rows = Subspace::span(m, bk.row_vecs());
    if rows.dim() != m {
        return Err(Error::Check("ambient form degenerates on the subalgebra".into()));
    }
    // T = B⁻¹K, applied as the coordinates of Kv in the rows of B.
    let apply = |v: &SparseVec| rows.coordinates(&kk.mul_sparse_vec(v)).expect("B is invertible");

    let mut rng = ChaCha8Rng::seed_from_u64(KRYLOV_SEED);
    let v = SparseVec::from_pairs((0..m).map(|i| (i, Rat::int(rng.gen_range(1..=97)))));
    let mut krylov = vec![v];
    let coeffs = loop {
        let next = apply(krylov.last().expect("nonempty"));
        if let Some(c) = Subspace::span(m, &krylov).coordinates(&next) {
            break c.to_dense(krylov.len());
        }
        krylov.push(next);
        if krylov.len() > m {
            return Err(Error::Check("Krylov sequence did not close".into()));
        }
    };
    // tᵈ − Σ cⱼ tʲ
    let mut poly: Vec<Rat> = coeffs.iter().map(|c| -c.clone()).collect();
    poly.push(Rat::ONE);
    let roots = rational_roots(&poly)?;
    if roots.len() != poly.len() - 1 {
        return Err(Error::Check(format!("minimal polynomial {poly:?} does not split over Q")));
    }

    let mut parts = Vec::new();
    for r in roots {
        let shifted = kk.sub(&bk.scale(&r));
        let ker = kernel_basis_sparse(&shifted);
        let sig = symmetric_signature(&bk.gram(&ker))?;
        parts.push(IdealPart { dim: ker.len(), chi: sig.chi(), ratio: r });
    }
    if parts.iter().map(|p| p.dim).sum::<usize>() != m {
        return Err(Error::Check("subalgebra is not a sum of ideals of distinct ratio".into()));
    }
    parts.sort_by(|a, b| b.dim.cmp(&a.dim).then(a.chi.cmp(&b.chi)));
    Ok(parts)
}

fn divisors(n: u128) -> Result<Vec<u128>, Error> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
        if d > 10_000_000 {
            return Err(Error::Check(format!("{n} is too large to factor")));
        }
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Distinct rational roots of Σ pⱼ tʲ (coefficients from the constant term up).
fn rational_roots(poly: &[Rat]) -> Result<Vec<Rat>, Error> {
    let mut denom = num_bigint::BigInt::from(1);
    for c in poly {
        denom = denom.lcm(&c.denom());
    }
    let ints: Vec<num_bigint::BigInt> = poly.iter().map(|c| c.numer() * (&denom / c.denom())).collect();
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut roots = if shift > 0 { vec![Rat::int(0)] } else { Vec::new() };
    let trimmed = &ints[shift..];
    let to_u = |x: &num_bigint::BigInt| {
        x.abs().to_u128().ok_or_else(|| Error::Check("polynomial coefficients overflow".into()))
    };
    let a0 = to_u(&trimmed[0])?;
    let ad = to_u(trimmed.last().expect("nonempty"))?;
    let eval = |r: &Rat| {
        poly.iter().rev().fold(Rat::int(0), |acc, c| acc * r.clone() + c.clone())
    };
    for p in divisors(a0)? {
        for q in divisors(ad)? {
            if p.gcd(&q) != 1 {
                continue;
            }
            for s in [1i128, -1] {
                let r = Rat::from(num_rational::BigRational::new(
                    num_bigint::BigInt::from(s * p as i128),
                    num_bigint::BigInt::from(q),
                ));
                if eval(&r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Whether `parts` arise by grouping `expected` (dim, χ) summands, each
/// summand used exactly once.
pub fn parts_match(parts: &[(usize, i64)], expected: &[(usize, i64)]) -> bool {
    fn go(i: usize, expected: &[(usize, i64)], left: &mut [(i64, i64)]) -> bool {
        if i == expected.len() {
            return left.iter().all(|&(d, c)| d == 0 && c == 0);
        }
        let (d, c) = expected[i];
        for j in 0..left.len() {
            if left[j].0 >= d as i64 {
                left[j].0 -= d as i64;
                left[j].1 -= c;
                if go(i + 1, expected, left) {
                    return true;
                }
                left[j].0 += d as i64;
                left[j].1 += c;
            }
        }
        false
    }
    let mut left: Vec<(i64, i64)> = parts.iter().map(|&(d, c)| (d as i64, c)).collect();
    go(0, expected, &mut left)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::so3;

    #[test]
    fn roots_of_products() {
        // (t − 1/2)(t + 3) t = t³ + 5/2 t² − 3/2 t
        let p = [Rat::int(0), Rat::new(-3, 2), Rat::new(5, 2), Rat::ONE];
        assert_eq!(rational_roots(&p).unwrap(), vec![Rat::int(-3), Rat::int(0), Rat::new(1, 2)]);
        // t² − 2 has none
        assert!(rational_roots(&[Rat::int(-2), Rat::int(0), Rat::ONE]).unwrap().is_empty());
    }

    #[test]
    fn simple_algebra_is_one_part() {
        let l = so3();
        let k = Subspace::span(3, &(0..3).map(SparseVec::unit).collect::<Vec<_>>());
        let parts = ideal_decomposition(&l, &k, &l.killing_form()).unwrap();
        assert_eq!(parts, vec![IdealPart { dim: 3, chi: -3, ratio: Rat::ONE }]);
    }

    #[test]
    fn grouping() {
        assert!(parts_match(&[(66, -2), (3, -3)], &[(66, -2), (3, -3)]));
        assert!(!parts_match(&[(66, -2), (3, -3)], &[(66, -6), (3, 1)]));
        assert!(parts_match(&[(6, -6)], &[(3, -3), (3, -3)]));
        assert!(!parts_match(&[(6, -6)], &[(3, -3)]));
    }
}

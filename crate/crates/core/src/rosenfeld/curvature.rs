use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::hurwitz::profile::sample_vectors;
use crate::liealg::LieAlgebra;
use crate::ratlin::{Rat, RatMatrix, SparseVec, Subspace};
use crate::Error;

const SECTIONAL_SEED: u64 = 0x5e_c710;
const SECTIONAL_SAMPLES: usize = 16;

/// R^a_{bcd} = −(1/2λ²) · (m_a-coefficient of [m_b, [m_c, m_d]]) on a
/// symmetric coset, evaluated on demand.
#[derive(Debug)]
pub struct CurvatureTensor<'a> {
    l: &'a LieAlgebra,
    m: &'a Subspace,
    metric: RatMatrix,
    lambda: Rat,
    scale: Rat,
    /// [m_c, m_d] for c < d, row-major over pairs.
    pairs: Vec<SparseVec>,
}

fn pair_index(n: usize, c: usize, d: usize) -> usize {
    c * n - c * (c + 1) / 2 + (d - c - 1)
}

/// Constant sectional curvature certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantCurvature {
    pub value: Option<Rat>,
    pub pairs_checked: usize,
    pub samples_checked: usize,
    pub constant: bool,
}

impl<'a> CurvatureTensor<'a> {
    pub fn new(l: &'a LieAlgebra, m: &'a Subspace, metric: RatMatrix, lambda: Rat) -> Result<Self, Error> {
        if !lambda.is_positive() {
            return Err(Error::Invalid(format!("λ must be positive, got {lambda}")));
        }
        let scale = -(&(&lambda * &lambda) * &Rat::int(2)).recip();
        let mb = m.basis();
        let n = mb.len();
        let pairs = (0..n)
            .into_par_iter()
            .flat_map_iter(|c| (c + 1..n).map(move |d| (c, d)))
            .map(|(c, d)| l.bracket(&mb[c], &mb[d]))
            .collect();
        Ok(CurvatureTensor { l, m, metric, lambda, scale, pairs })
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn lambda(&self) -> &Rat {
        &self.lambda
    }

    pub fn metric(&self) -> &RatMatrix {
        &self.metric
    }

    /// [m_c, m_d] for any c, d.
    fn w(&self, c: usize, d: usize) -> SparseVec {
        use std::cmp::Ordering::*;
        match c.cmp(&d) {
            Less => self.pairs[pair_index(self.dim(), c, d)].clone(),
            Greater => self.pairs[pair_index(self.dim(), d, c)].neg(),
            Equal => SparseVec::new(),
        }
    }

    fn coords(&self, v: &SparseVec) -> Result<SparseVec, Error> {
        self.m.coordinates(v).ok_or_else(|| Error::Check("[m, [m, m]] leaves m; the coset is not symmetric".into()))
    }

    /// R^·_{bcd} as a vector over the m basis.
    pub fn raised(&self, b: usize, c: usize, d: usize) -> Result<SparseVec, Error> {
        let v = self.l.bracket(&self.m.basis()[b], &self.w(c, d));
        Ok(self.coords(&v)?.scale(&self.scale))
    }

    pub fn component(&self, a: usize, b: usize, c: usize, d: usize) -> Result<Rat, Error> {
        Ok(self.raised(b, c, d)?.get(a))
    }

    /// R_{abcd} = g_{ae} R^e_{bcd}.
    pub fn lowered(&self, a: usize, b: usize, c: usize, d: usize) -> Result<Rat, Error> {
        Ok(self.metric.row(a).dot(&self.raised(b, c, d)?))
    }

    /// All n⁴ raised components, index ((a·n + b)·n + c)·n + d. Only for
    /// small tangent spaces.
    pub fn components(&self) -> Result<Vec<Rat>, Error> {
        let n = self.dim();
        if n > 16 {
            return Err(Error::Invalid(format!("refusing to materialize a {n}⁴ tensor")));
        }
        let mut out = vec![Rat::ZERO; n * n * n * n];
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for (a, x) in self.raised(b, c, d)?.entries() {
                        out[((a * n + b) * n + c) * n + d] = x.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// First distinct triple b < c < d violating
    /// R^a_{bcd} + R^a_{cdb} + R^a_{dbc} = 0. Triples with a repeated index
    /// cancel by antisymmetry in (c, d).
    pub fn bianchi_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let mb = self.m.basis();
        (0..n).into_par_iter().find_map_first(|b| {
            for c in b + 1..n {
                for d in c + 1..n {
                    let s = self
                        .l
                        .bracket(&mb[b], &self.w(c, d))
                        .add(&self.l.bracket(&mb[c], &self.w(d, b)))
                        .add(&self.l.bracket(&mb[d], &self.w(b, c)));
                    if !s.is_empty() {
                        return Some((b, c, d));
                    }
                }
            }
            None
        })
    }

    /// First (a, b, c, d) with R_{abcd} ≠ R_{cdab}, streaming over pairs.
    pub fn pair_exchange_failure(&self) -> Option<(usize, usize, usize, usize)> {
        let n = self.dim();
        if n < 2 {
            return None;
        }
        let mb = self.m.basis();
        // R_{abcd} = scale · z_{ab} · w_{cd} with z_{ab}[k] = g(m_a, [m_b, e_k])
        // on the support S of the pair brackets.
        let mut support: Vec<usize> = self.pairs.iter().flat_map(|w| w.entries().iter().map(|(k, _)| *k)).collect();
        support.sort_unstable();
        support.dedup();
        let mut pos = vec![usize::MAX; self.l.dim()];
        for (i, &k) in support.iter().enumerate() {
            pos[k] = i;
        }
        let killing = self.l.killing_form();
        let ka: Vec<SparseVec> = mb.iter().map(|v| killing.mul_sparse_vec(v)).collect();
        let by_b: Vec<Vec<Vec<Rat>>> = (0..n)
            .into_par_iter()
            .map(|b| {
                let cols: Vec<SparseVec> =
                    support.iter().map(|&k| self.l.bracket(&mb[b], &SparseVec::unit(k))).collect();
                ka.iter().map(|r| cols.iter().map(|c| r.dot(c)).collect()).collect()
            })
            .collect();
        let mut z: Vec<Vec<Rat>> = vec![Vec::new(); n * n];
        for (b, rows) in by_b.into_iter().enumerate() {
            for (a, row) in rows.into_iter().enumerate() {
                z[a * n + b] = row;
            }
        }
        let w: Vec<Vec<(usize, Rat)>> = self
            .pairs
            .iter()
            .map(|v| v.entries().iter().map(|(k, x)| (pos[*k], x.clone())).collect())
            .collect();
        match Scaled::new(&z, &w) {
            Some(s) => s.pair_failure(n),
            None => rational_pair_failure(n, &z, &w),
        }
    }

    /// K(X, Y) = g(R(X,Y)Y, X) / (g(X,X) g(Y,Y) − g(X,Y)²) for coordinate
    /// vectors over the m basis; None on a degenerate plane.
    pub fn sectional(&self, x: &SparseVec, y: &SparseVec) -> Result<Option<Rat>, Error> {
        let g = |u: &SparseVec, v: &SparseVec| u.dot(&self.metric.mul_sparse_vec(v));
        let den = &(&g(x, x) * &g(y, y)) - &(&g(x, y) * &g(x, y));
        if den.is_zero() {
            return Ok(None);
        }
        let amb = |u: &SparseVec| {
            let mut acc = crate::ratlin::Accumulator::new(self.l.dim());
            for (i, c) in u.entries() {
                acc.add_scaled(&self.m.basis()[*i], c);
            }
            acc.take()
        };
        let (xa, ya) = (amb(x), amb(y));
        // R(X,Y)Z = R^a_{bcd} Z^b X^c Y^d
        let r = self.coords(&self.l.bracket(&ya, &self.l.bracket(&xa, &ya)))?.scale(&self.scale);
        Ok(Some(&g(&r, x) / &den))
    }

    /// Sectional curvature over all pairs of a g-orthogonal basis of m and
    /// over seeded random planes.
    pub fn constant_curvature(&self) -> Result<ConstantCurvature, Error> {
        let n = self.dim();
        let basis = orthogonal_basis(&self.metric);
        let mut values = Vec::new();
        let mut pairs = 0;
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                if let Some(k) = self.sectional(&basis[i], &basis[j])? {
                    values.push(k);
                    pairs += 1;
                }
            }
        }
        let samples = sample_vectors(n, 2 * SECTIONAL_SAMPLES, SECTIONAL_SEED);
        let mut sampled = 0;
        for s in samples.chunks(2) {
            if let Some(k) = self.sectional(&s[0], &s[1])? {
                values.push(k);
                sampled += 1;
            }
        }
        let constant = values.windows(2).all(|w| w[0] == w[1]);
        Ok(ConstantCurvature {
            value: if constant { values.first().cloned() } else { None },
            pairs_checked: pairs,
            samples_checked: sampled,
            constant,
        })
    }
}

/// Gram–Schmidt over a symmetric form, skipping null directions.
fn orthogonal_basis(g: &RatMatrix) -> Vec<SparseVec> {
    let n = g.rows();
    let mut out: Vec<(SparseVec, SparseVec, Rat)> = Vec::new();
    for i in 0..n {
        let mut v = SparseVec::unit(i);
        for (u, gu, nu) in &out {
            let c = &v.dot(gu) / nu;
            v = v.axpy(&-c, u);
        }
        let gv = g.mul_sparse_vec(&v);
        let nv = v.dot(&gv);
        if !nv.is_zero() {
            out.push((v, gv, nv));
        }
    }
    out.into_iter().map(|(v, _, _)| v).collect()
}

/// The pair-exchange data with a common denominator, in i64.
struct Scaled {
    z: Vec<Vec<i64>>,
    w: Vec<Vec<(usize, i64)>>,
}

fn common_scale<'a, I: IntoIterator<Item = &'a Rat>>(xs: I) -> Option<i64> {
    let mut l: i64 = 1;
    for x in xs {
        let (_, d) = x.as_small()?;
        l = l.lcm(&d);
        if l > 1 << 20 {
            return None;
        }
    }
    Some(l)
}

fn scale_int(x: &Rat, l: i64) -> Option<i64> {
    let (p, q) = x.as_small()?;
    let v = p.checked_mul(l / q)?;
    (v.abs() < 1 << 40).then_some(v)
}

impl Scaled {
    fn new(z: &[Vec<Rat>], w: &[Vec<(usize, Rat)>]) -> Option<Scaled> {
        let lz = common_scale(z.iter().flatten())?;
        let lw = common_scale(w.iter().flatten().map(|(_, x)| x))?;
        let z = z.iter().map(|r| r.iter().map(|x| scale_int(x, lz)).collect()).collect::<Option<Vec<Vec<i64>>>>()?;
        let w = w
            .iter()
            .map(|r| r.iter().map(|(k, x)| Some((*k, scale_int(x, lw)?))).collect())
            .collect::<Option<Vec<Vec<(usize, i64)>>>>()?;
        Some(Scaled { z, w })
    }

    fn dot(&self, p: usize, q: usize) -> i128 {
        self.w[q].iter().map(|(k, x)| self.z[p][*k] as i128 * *x as i128).sum()
    }

    fn pair_failure(&self, n: usize) -> Option<(usize, usize, usize, usize)> {
        (0..n * n).into_par_iter().find_map_first(|p| {
            let (a, b) = (p / n, p % n);
            for c in 0..n {
                for d in c + 1..n {
                    let lhs = self.dot(p, pair_index(n, c, d));
                    let rhs = match a.cmp(&b) {
                        std::cmp::Ordering::Less => self.dot(c * n + d, pair_index(n, a, b)),
                        std::cmp::Ordering::Greater => -self.dot(c * n + d, pair_index(n, b, a)),
                        std::cmp::Ordering::Equal => 0,
                    };
                    if lhs != rhs {
                        return Some((a, b, c, d));
                    }
                }
            }
            None
        })
    }
}

fn rational_pair_failure(n: usize, z: &[Vec<Rat>], w: &[Vec<(usize, Rat)>]) -> Option<(usize, usize, usize, usize)> {
    let dot = |p: usize, q: usize| {
        let mut s = Rat::ZERO;
        for (k, x) in &w[q] {
            s.add_mul(&z[p][*k], x);
        }
        s
    };
    (0..n * n).into_par_iter().find_map_first(|p| {
        let (a, b) = (p / n, p % n);
        for c in 0..n {
            for d in c + 1..n {
                let lhs = dot(p, pair_index(n, c, d));
                let rhs = match a.cmp(&b) {
                    std::cmp::Ordering::Less => dot(c * n + d, pair_index(n, a, b)),
                    std::cmp::Ordering::Greater => -dot(c * n + d, pair_index(n, b, a)),
                    std::cmp::Ordering::Equal => Rat::ZERO,
                };
                if lhs != rhs {
                    return Some((a, b, c, d));
                }
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{involution_split, so3};

    #[test]
    fn pair_indexing() {
        let n = 5;
        let mut k = 0;
        for c in 0..n {
            for d in c + 1..n {
                assert_eq!(pair_index(n, c, d), k);
                k += 1;
            }
        }
    }

    #[test]
    fn flat_fixture_has_zero_curvature() {
        let l = LieAlgebra::abelian(3);
        let m = Subspace::span(3, &[SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(2)]);
        let r = CurvatureTensor::new(&l, &m, RatMatrix::identity(3), Rat::ONE).unwrap();
        assert!(r.components().unwrap().iter().all(|x| x.is_zero()));
        assert_eq!(r.bianchi_failure(), None);
        assert_eq!(r.pair_exchange_failure(), None);
    }

    #[test]
    fn two_sphere() {
        // so(3)/so(2): constant curvature, scaling as 1/λ²
        let l = so3();
        let theta = RatMatrix::diagonal(&[Rat::ONE, Rat::int(-1), Rat::int(-1)]);
        let s = involution_split(&l, &theta).unwrap();
        let g = l.killing_form().gram(s.m_basis());
        let r1 = CurvatureTensor::new(&l, &s.m, g.clone(), Rat::ONE).unwrap();
        let r2 = CurvatureTensor::new(&l, &s.m, g, Rat::int(2)).unwrap();
        let k1 = r1.constant_curvature().unwrap();
        let k2 = r2.constant_curvature().unwrap();
        assert!(k1.constant && k2.constant);
        let (k1, k2) = (k1.value.unwrap(), k2.value.unwrap());
        assert!(k1.is_positive());
        assert_eq!(k1, &k2 * &Rat::int(4));
        assert_eq!(r1.bianchi_failure(), None);
        assert_eq!(r1.pair_exchange_failure(), None);
        assert!(CurvatureTensor::new(&l, &s.m, RatMatrix::identity(2), Rat::ZERO).is_err());
    }

    #[test]
    fn components_agree_with_sectional() {
        let l = so3();
        let theta = RatMatrix::diagonal(&[Rat::ONE, Rat::int(-1), Rat::int(-1)]);
        let s = involution_split(&l, &theta).unwrap();
        let g = l.killing_form().gram(s.m_basis());
        let r = CurvatureTensor::new(&l, &s.m, g.clone(), Rat::new(3, 2)).unwrap();
        let comps = r.components().unwrap();
        let n = 2;
        // R(e0, e1)e1 lowered with e0, over the norms
        let mut num = Rat::ZERO;
        for a in 0..n {
            num.add_mul(&g.get(0, a), &comps[((a * n + 1) * n) * n + 1]);
        }
        let den = &(&g.get(0, 0) * &g.get(1, 1)) - &(&g.get(0, 1) * &g.get(0, 1));
        let direct = r.sectional(&SparseVec::unit(0), &SparseVec::unit(1)).unwrap().unwrap();
        assert_eq!(&num / &den, direct);
    }
}

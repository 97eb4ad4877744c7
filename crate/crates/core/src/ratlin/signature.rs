use serde::{Deserialize, Serialize};

use super::{Rat, RatMatrix};
use crate::Error;

/// Inertia of a real symmetric bilinear form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.plus + self.minus + self.zero
    }

    /// plus − minus.
    pub fn chi(&self) -> i64 {
        self.plus as i64 - self.minus as i64
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.zero == 0
    }
}

/// Counts positive, negative and null directions by symmetric Gaussian
/// elimination (congruence), pivoting on a rank-2 block when every remaining
/// diagonal entry vanishes.
pub fn symmetric_signature(b: &RatMatrix) -> Result<Signature, Error> {
    if b.rows() != b.cols() || !b.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = b.rows();
    // Rows as dense vectors; entries outside the active set are ignored.
    let mut a: Vec<Vec<Rat>> = b.to_dense();
    let mut active: Vec<bool> = vec![true; n];
    let mut sig = Signature { plus: 0, minus: 0, zero: 0 };
    let mut remaining = n;
    while remaining > 0 {
        let pivot = (0..n).find(|&i| active[i] && !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = (0..n)
                    .filter(|&i| active[i])
                    .find_map(|i| (0..n).find(|&j| active[j] && !a[i][j].is_zero()).map(|j| (i, j)));
                let Some((i, j)) = pair else {
                    sig.zero += remaining;
                    break;
                };
                // x_i -> x_i + x_j makes the (i,i) entry 2 a_ij, which is nonzero.
                for k in 0..n {
                    if active[k] {
                        let v = a[j][k].clone();
                        a[i][k] += &v;
                    }
                }
                for k in 0..n {
                    if active[k] {
                        let v = a[k][j].clone();
                        a[k][i] += &v;
                    }
                }
                i
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            sig.plus += 1;
        } else {
            sig.minus += 1;
        }
        active[p] = false;
        remaining -= 1;
        let dinv = d.recip();
        let row_p: Vec<(usize, Rat)> = (0..n)
            .filter(|&k| active[k] && !a[p][k].is_zero())
            .map(|k| (k, a[p][k].clone()))
            .collect();
        for &(i, ref api) in &row_p {
            let f = api * &dinv;
            for &(k, ref apk) in &row_p {
                a[i][k].add_mul(&-&f, apk);
            }
        }
    }
    Ok(sig)
}

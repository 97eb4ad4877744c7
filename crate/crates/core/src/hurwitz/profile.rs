use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{make_algebra, tensor_algebra, AlgebraName, AlgebraTable, ProductTable};
use crate::ratlin::{Rat, SparseVec};
use crate::Error;

pub const SAMPLE_SEED: u64 = 0x0c7a_0b1e;
pub const SAMPLE_COUNT: usize = 128;

/// Which of the standard identities an algebra satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityProfile {
    pub commutative: bool,
    pub associative: bool,
    pub alternative: bool,
    pub flexible: bool,
    pub power_associative: bool,
    /// One counterexample for every identity that fails.
    pub witnesses: Vec<Witness>,
}

impl IdentityProfile {
    pub fn flags(&self) -> [bool; 5] {
        [self.commutative, self.associative, self.alternative, self.flexible, self.power_associative]
    }

    fn chain_is_monotone(&self) -> bool {
        (!self.associative || self.alternative)
            && (!self.alternative || self.flexible)
            && (!self.flexible || self.power_associative)
    }
}

/// Inputs on which an identity fails, written in the algebra's basis labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub identity: String,
    pub inputs: Vec<String>,
    pub residual: String,
}

fn show(t: &AlgebraTable, v: &SparseVec) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = v
        .entries()
        .iter()
        .map(|(i, x)| {
            if x.is_one() {
                t.labels()[*i].clone()
            } else {
                format!("({x})·{}", t.labels()[*i])
            }
        })
        .collect();
    terms.join(" + ")
}

/// Associator of basis elements, cached for the multilinear checks.
fn basis_associators(t: &AlgebraTable) -> Vec<SparseVec> {
    let n = t.dim();
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let ij = t.product(i, j);
            for k in 0..n {
                let l = t.mul(ij, &SparseVec::unit(k));
                let r = t.mul(&SparseVec::unit(i), t.product(j, k));
                out.push(l.sub(&r));
            }
        }
    }
    out
}

/// Decides commutativity, associativity, alternativity and flexibility on
/// basis elements (via the linearized identities) and power-associativity on
/// a fixed pseudorandom sample.
pub fn property_profile(t: &AlgebraTable) -> Result<IdentityProfile, Error> {
    let n = t.dim();
    let e = SparseVec::unit;
    let mut witnesses = Vec::new();
    let mut witness = |identity: &str, inputs: Vec<String>, residual: String| {
        witnesses.push(Witness { identity: identity.into(), inputs, residual });
    };

    let mut commutative = true;
    'c: for i in 0..n {
        for j in i + 1..n {
            let d = t.product(i, j).sub(t.product(j, i));
            if !d.is_empty() {
                commutative = false;
                witness("xy = yx", vec![t.labels()[i].clone(), t.labels()[j].clone()], show(t, &d));
                break 'c;
            }
        }
    }

    let a = basis_associators(t);
    let at = |i: usize, j: usize, k: usize| &a[(i * n + j) * n + k];
    let labels3 = |i: usize, j: usize, k: usize| {
        vec![t.labels()[i].clone(), t.labels()[j].clone(), t.labels()[k].clone()]
    };
    let first = |f: &dyn Fn(usize, usize, usize) -> SparseVec| {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let r = f(i, j, k);
                    if !r.is_empty() {
                        return Some((i, j, k, r));
                    }
                }
            }
        }
        None
    };

    let associative = match first(&|i, j, k| at(i, j, k).clone()) {
        None => true,
        Some((i, j, k, r)) => {
            witness("(xy)z = x(yz)", labels3(i, j, k), show(t, &r));
            false
        }
    };
    let left = first(&|i, j, k| at(i, j, k).add(at(j, i, k)));
    let right = first(&|i, j, k| at(i, j, k).add(at(i, k, j)));
    let alternative = match (left, right) {
        (None, None) => true,
        (Some((i, j, k, r)), _) => {
            witness("(x,y,z) + (y,x,z) = 0", labels3(i, j, k), show(t, &r));
            false
        }
        (None, Some((i, j, k, r))) => {
            witness("(x,y,z) + (x,z,y) = 0", labels3(i, j, k), show(t, &r));
            false
        }
    };
    let flexible = match first(&|i, j, k| at(i, j, k).add(at(k, j, i))) {
        None => true,
        Some((i, j, k, r)) => {
            witness("(x,y,z) + (z,y,x) = 0", labels3(i, j, k), show(t, &r));
            false
        }
    };

    let mut power_associative = true;
    for x in (0..n).map(e).chain(sample_vectors(n, SAMPLE_COUNT, SAMPLE_SEED)) {
        let xx = t.mul(&x, &x);
        let x_xx = t.mul(&x, &xx);
        let d3 = x_xx.sub(&t.mul(&xx, &x));
        if !d3.is_empty() {
            power_associative = false;
            witness("x(xx) = (xx)x", vec![show(t, &x)], show(t, &d3));
            break;
        }
        let d4 = t.mul(&xx, &xx).sub(&t.mul(&x, &x_xx));
        if !d4.is_empty() {
            power_associative = false;
            witness("(xx)(xx) = x(x(xx))", vec![show(t, &x)], show(t, &d4));
            break;
        }
    }

    let p = IdentityProfile {
        commutative,
        associative,
        alternative,
        flexible,
        power_associative,
        witnesses,
    };
    if !p.chain_is_monotone() {
        return Err(Error::Check(format!("identity chain violated for {}", t.name())));
    }
    Ok(p)
}

/// The tensor products whose identity profiles are tabulated, in order.
pub fn table2_products() -> [(AlgebraName, AlgebraName); 6] {
    use AlgebraName::*;
    [(C, C), (C, H), (H, H), (C, O), (H, O), (O, O)]
}

/// Flags (comm, ass, alt, flex, pow-ass) for each entry of `table2_products`.
pub const TABLE2_EXPECTED: [[bool; 5]; 6] = [
    [true, true, true, true, true],
    [false, true, true, true, true],
    [false, true, true, true, true],
    [false, false, true, true, true],
    [false, false, false, false, false],
    [false, false, false, false, false],
];

pub fn table2() -> Result<Vec<(String, IdentityProfile)>, Error> {
    table2_products()
        .par_iter()
        .map(|(a, b)| {
            let t = tensor_algebra(&make_algebra(a)?, &make_algebra(b)?);
            Ok((format!("{a}⊗{b}"), property_profile(&t)?))
        })
        .collect()
}

/// Deterministic vectors with entries in {−2, …, 2}.
pub fn sample_vectors(dim: usize, count: usize, seed: u64) -> Vec<SparseVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            SparseVec::from_pairs((0..dim).map(|i| (i, Rat::int(rng.gen_range(-2..=2)))))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(a: AlgebraName, b: AlgebraName) -> IdentityProfile {
        let t = tensor_algebra(&make_algebra(&a).unwrap(), &make_algebra(&b).unwrap());
        property_profile(&t).unwrap()
    }

    #[test]
    fn small_products() {
        use AlgebraName::*;
        assert_eq!(profile(C, C).flags(), [true, true, true, true, true]);
        assert_eq!(profile(C, H).flags(), [false, true, true, true, true]);
        assert_eq!(profile(H, H).flags(), [false, true, true, true, true]);
        let co = profile(C, O);
        assert_eq!(co.flags(), [false, false, true, true, true]);
        assert_eq!(co.witnesses.len(), 2);
    }

    #[test]
    fn octonions_alone_are_alternative() {
        let o = make_algebra(&AlgebraName::O).unwrap();
        let p = property_profile(&o).unwrap();
        assert_eq!(p.flags(), [false, false, true, true, true]);
    }
}

use serde::{Deserialize, Serialize};

use super::{Signature3, TitsParts};
use crate::hurwitz::{make_algebra, tensor_algebra, AlgebraName, ProductTable};
use crate::jordan::make_jordan;
use crate::liealg::{derivations_of, triality_of};
use crate::Error;

/// A dimension formula evaluated term by term and compared to a target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimAccount {
    pub formula: String,
    pub terms: Vec<(String, usize)>,
    pub total: usize,
    pub target: usize,
    pub ok: bool,
}

impl DimAccount {
    fn new(formula: &str, terms: Vec<(String, usize)>, target: usize) -> DimAccount {
        let total = terms.iter().map(|(_, d)| d).sum();
        DimAccount { formula: formula.into(), terms, total, target, ok: total == target }
    }
}

fn tits_dim(a1: &AlgebraName, a2: &AlgebraName) -> Result<usize, Error> {
    Ok(TitsParts::new(&make_algebra(a1)?, &make_algebra(a2)?, Signature3::Euclidean)?.dim())
}

/// der A₁ ⊕ der A₂ ⊕ sa(3, A₁⊗A₂) against the Tits dimension.
pub fn vinberg_dim_check(a1: &AlgebraName, a2: &AlgebraName) -> Result<DimAccount, Error> {
    let (x, y) = (make_algebra(a1)?, make_algebra(a2)?);
    let t = tensor_algebra(&x, &y);
    let anti = t.conj_sign().iter().filter(|&&s| s < 0).count();
    // three off-diagonal entries, three anti-Hermitian diagonal ones minus the trace
    let sa = 3 * t.dim() + 2 * anti;
    let terms = vec![
        (format!("der({a1})"), derivations_of(&x, "d")?.dim()),
        (format!("der({a2})"), derivations_of(&y, "d")?.dim()),
        (format!("sa(3,{a1}⊗{a2})"), sa),
    ];
    Ok(DimAccount::new("der A1 + der A2 + sa(3, A1⊗A2)", terms, tits_dim(a1, a2)?))
}

/// tri A₁ ⊕ tri A₂ ⊕ 3 (A₁⊗A₂) against the Tits dimension.
pub fn bs_dim_check(a1: &AlgebraName, a2: &AlgebraName) -> Result<DimAccount, Error> {
    let (x, y) = (make_algebra(a1)?, make_algebra(a2)?);
    let terms = vec![
        (format!("tri({a1})"), triality_of(&x, "t")?.dim()),
        (format!("tri({a2})"), triality_of(&y, "t")?.dim()),
        (format!("3·{a1}⊗{a2}"), 3 * x.dim() * y.dim()),
    ];
    Ok(DimAccount::new("tri A1 + tri A2 + 3 A1⊗A2", terms, tits_dim(a1, a2)?))
}

/// so(Im A₁) ⊕ der 𝔍₂(A₂) ⊕ Im A₁ ⊗ 𝔍₂′(A₂) against `target`, the
/// dimension of the order-2 table entry.
pub fn order2_dim_check(
    a1: &AlgebraName,
    a2: &AlgebraName,
    lorentzian: bool,
    target: usize,
) -> Result<DimAccount, Error> {
    let (x, y) = (make_algebra(a1)?, make_algebra(a2)?);
    let eta: &[i8] = if lorentzian { &[-1, 1] } else { &[1, 1] };
    let j = make_jordan(&y, 2, eta)?;
    let m = x.dim() - 1;
    let jname = if lorentzian { "J11" } else { "J2" };
    let terms = vec![
        (format!("so(Im {a1})"), m * (m.max(1) - 1) / 2),
        (format!("der({jname}({a2}))"), derivations_of(&j, "d")?.dim()),
        (format!("Im {a1}⊗{jname}'"), m * (j.dim() - 1)),
    ];
    Ok(DimAccount::new("so(A1') + der J2(A2) + (dim A1 - 1)(dim J2 - 1)", terms, target))
}

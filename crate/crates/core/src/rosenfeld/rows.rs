use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{coset, isomorphy_check, CosetKind, CosetSpace};
use crate::hurwitz::AlgebraName::{self, *};
use crate::Error;

/// A tabulated plane or line: isometry label, isotropy dimension and
/// tangent signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedRow {
    pub a: AlgebraName,
    pub b: AlgebraName,
    pub kind: CosetKind,
    pub g: &'static str,
    pub k_dim: usize,
    pub nc: usize,
    pub c: usize,
}

const fn row(
    a: AlgebraName,
    b: AlgebraName,
    kind: CosetKind,
    g: &'static str,
    k_dim: usize,
    nc: usize,
    c: usize,
) -> ExpectedRow {
    ExpectedRow { a, b, kind, g, k_dim, nc, c }
}

use CosetKind::{LineH, LineP, PlaneH, PlaneHtilde, PlaneP};

pub static PLANE_ROWS: [ExpectedRow; 19] = [
    row(R, O, PlaneP, "f4(-52)", 36, 0, 16),
    row(R, O, PlaneH, "f4(-20)", 36, 16, 0),
    row(R, O, PlaneHtilde, "f4(-20)", 36, 8, 8),
    row(R, Os, PlaneP, "f4(4)", 36, 8, 8),
    row(C, O, PlaneP, "e6(-78)", 46, 0, 32),
    row(C, O, PlaneH, "e6(-14)", 46, 32, 0),
    row(C, O, PlaneHtilde, "e6(-14)", 46, 16, 16),
    row(C, Os, PlaneP, "e6(2)", 46, 16, 16),
    row(Cs, O, PlaneP, "e6(-26)", 46, 16, 16),
    row(Cs, Os, PlaneP, "e6(6)", 46, 16, 16),
    row(H, O, PlaneP, "e7(-133)", 69, 0, 64),
    row(H, O, PlaneH, "e7(-5)", 69, 64, 0),
    row(H, O, PlaneHtilde, "e7(-5)", 69, 32, 32),
    row(Hs, O, PlaneP, "e7(-25)", 69, 32, 32),
    row(Hs, Os, PlaneP, "e7(7)", 69, 32, 32),
    row(O, O, PlaneP, "e8(-248)", 120, 0, 128),
    row(O, O, PlaneH, "e8(8)", 120, 128, 0),
    row(O, O, PlaneHtilde, "e8(8)", 120, 64, 64),
    row(Os, O, PlaneP, "e8(-24)", 120, 64, 64),
];

pub static LINE_ROWS: [ExpectedRow; 17] = [
    row(R, O, LineP, "so(9)", 28, 0, 8),
    row(R, O, LineH, "so(8,1)", 28, 8, 0),
    row(R, Os, LineP, "so(5,4)", 28, 4, 4),
    row(C, O, LineP, "so(10)", 30, 0, 16),
    row(C, O, LineH, "so(8,2)", 30, 16, 0),
    row(C, Os, LineP, "so(6,4)", 30, 8, 8),
    row(Cs, O, LineP, "so(9,1)", 30, 8, 8),
    row(Cs, Os, LineP, "so(5,5)", 30, 8, 8),
    row(H, O, LineP, "so(12)", 37, 0, 32),
    row(H, O, LineH, "so(8,4)", 37, 32, 0),
    row(H, Os, LineP, "so(8,4)", 37, 16, 16),
    row(Hs, O, LineP, "so(10,2)", 37, 16, 16),
    row(Hs, Os, LineP, "so(6,6)", 37, 16, 16),
    row(O, O, LineP, "so(16)", 56, 0, 64),
    row(O, O, LineH, "so(8,8)", 56, 64, 0),
    row(O, Os, LineP, "so(12,4)", 56, 32, 32),
    row(Os, Os, LineP, "so(8,8)", 56, 32, 32),
];

fn find_row(a: &AlgebraName, b: &AlgebraName, kind: CosetKind) -> Option<&'static ExpectedRow> {
    PLANE_ROWS.iter().chain(LINE_ROWS.iter()).find(|r| r.a == *a && r.b == *b && r.kind == kind)
}

pub(super) fn table_match(cs: &CosetSpace) -> Option<bool> {
    let r = find_row(&cs.a, &cs.b, cs.kind)?;
    let label_ok = cs.g.label.as_deref() == Some(r.g);
    Some(label_ok && cs.k.dim() == r.k_dim && (cs.tangent.plus, cs.tangent.minus) == (r.nc, r.c))
}

fn build_rows(rows: &[ExpectedRow]) -> Result<Vec<CosetSpace>, Error> {
    rows.par_iter().map(|r| coset(&r.a, &r.b, r.kind)).collect()
}

pub fn plane_rows() -> Result<Vec<CosetSpace>, Error> {
    build_rows(&PLANE_ROWS)
}

pub fn line_rows() -> Result<Vec<CosetSpace>, Error> {
    build_rows(&LINE_ROWS)
}

fn all3(a: AlgebraName, b: AlgebraName) -> Vec<(AlgebraName, AlgebraName, CosetKind)> {
    vec![(a.clone(), b.clone(), PlaneP), (a.clone(), b.clone(), PlaneH), (a, b, PlaneHtilde)]
}

fn both_lines(a: AlgebraName, b: AlgebraName) -> Vec<(AlgebraName, AlgebraName, CosetKind)> {
    vec![(a.clone(), b.clone(), LineP), (a, b, LineH)]
}

/// Cosets asserted to coincide.
pub fn isomorphy_chains() -> Vec<Vec<(AlgebraName, AlgebraName, CosetKind)>> {
    let mut h = vec![(H, O, PlaneHtilde)];
    h.extend(all3(H, Os));
    let mut o = vec![(O, O, PlaneHtilde)];
    o.extend(all3(Os, Os));
    vec![
        all3(R, Os),
        all3(C, Os),
        all3(Cs, O),
        all3(Cs, Os),
        h,
        all3(Hs, O),
        all3(Hs, Os),
        o,
        all3(O, Os),
        both_lines(R, Os),
        both_lines(C, Os),
        both_lines(Cs, O),
        both_lines(Cs, Os),
        both_lines(H, Os),
        both_lines(Hs, O),
        both_lines(Hs, Os),
        both_lines(O, Os),
        both_lines(Os, Os),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub members: Vec<String>,
    pub certificate: Option<(Option<String>, usize, (usize, usize))>,
    pub coincide: bool,
}

pub fn chain_reports() -> Result<Vec<ChainReport>, Error> {
    isomorphy_chains()
        .par_iter()
        .map(|chain| {
            let cosets = chain.iter().map(|(a, b, k)| coset(a, b, *k)).collect::<Result<Vec<_>, Error>>()?;
            let refs: Vec<&CosetSpace> = cosets.iter().collect();
            Ok(ChainReport {
                members: cosets.iter().map(|c| c.name()).collect(),
                certificate: cosets.first().map(|c| c.certificate()),
                coincide: isomorphy_check(&refs),
            })
        })
        .collect()
}

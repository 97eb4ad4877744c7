use serde::{Deserialize, Serialize};

use super::coset;
use super::rows::{ExpectedRow, LINE_ROWS, PLANE_ROWS};
use crate::liealg::{label_table, parts_match};
use crate::Error;

/// Tangent (nc, c, χ) of g/(k₁ ⊕ k₂ ⊕ …) from the label table alone.
pub fn signature_accounting(g: &str, ks: &[&str]) -> Result<(usize, usize, i64), Error> {
    let t = label_table();
    let find = |n: &str| t.by_name(n).ok_or_else(|| Error::Invalid(format!("unknown real form {n}")));
    let gl = find(g)?;
    let (mut nc, mut c) = (gl.nc as i64, gl.c as i64);
    for k in ks {
        let kl = find(k)?;
        nc -= kl.nc as i64;
        c -= kl.c as i64;
    }
    if nc < 0 || c < 0 {
        return Err(Error::Check(format!("{g} over {ks:?} leaves a negative count ({nc}, {c})")));
    }
    Ok((nc as usize, c as usize, nc - c))
}

/// A quotient that is not a Rosenfeld plane or line, with its expected
/// tangent counts.
#[derive(Clone, Copy, Debug)]
pub struct AccountingEntry {
    pub name: &'static str,
    pub g: &'static str,
    pub k: &'static [&'static str],
    pub nc: usize,
    pub c: usize,
    /// Compared against plane rows (true) or line rows (false).
    pub plane_like: bool,
}

pub const X_SPACES: [AccountingEntry; 7] = [
    AccountingEntry { name: "X32,I", g: "E6(2)", k: &["SO*(10)", "U(1)"], nc: 20, c: 12, plane_like: true },
    AccountingEntry { name: "X32,II", g: "E6(-14)", k: &["SO*(10)", "U(1)"], nc: 12, c: 20, plane_like: true },
    AccountingEntry { name: "X64,I", g: "E7(7)", k: &["SO*(12)", "SU(2)"], nc: 40, c: 24, plane_like: true },
    AccountingEntry { name: "X64,II", g: "E7(-5)", k: &["SO*(12)", "SL(2,R)"], nc: 32, c: 32, plane_like: true },
    AccountingEntry { name: "X64,III", g: "E7(-25)", k: &["SO*(12)", "SU(2)"], nc: 24, c: 40, plane_like: true },
    AccountingEntry { name: "X128,I", g: "E8(8)", k: &["SO*(16)"], nc: 72, c: 56, plane_like: true },
    AccountingEntry { name: "X128,II", g: "E8(-24)", k: &["SO*(16)"], nc: 56, c: 72, plane_like: true },
];

pub const Y_SPACES: [AccountingEntry; 3] = [
    AccountingEntry { name: "Y16", g: "SO*(10)", k: &["SO*(8)", "U(1)"], nc: 8, c: 8, plane_like: false },
    AccountingEntry { name: "Y32", g: "SO*(12)", k: &["SO*(8)", "SU(2)", "SL(2,R)"], nc: 16, c: 16, plane_like: false },
    AccountingEntry { name: "Y64", g: "SO*(16)", k: &["SO*(8)", "SO*(8)"], nc: 32, c: 32, plane_like: false },
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccountingReport {
    pub name: String,
    pub g: String,
    pub k: Vec<String>,
    pub nc: usize,
    pub c: usize,
    pub chi: i64,
    pub expected: (usize, usize),
    /// Tabulated rows with the same isometry algebra and tangent signature.
    pub certificate_matches: Vec<String>,
    /// Those among them whose isotropy ideals also agree with `k`; expected
    /// to be empty.
    pub rosenfeld_matches: Vec<String>,
    pub ok: bool,
}

fn certificate_matches(e: &AccountingEntry, nc: usize, c: usize) -> Vec<&'static ExpectedRow> {
    let t = label_table();
    let rows: &'static [ExpectedRow] = if e.plane_like { &PLANE_ROWS } else { &LINE_ROWS };
    rows.iter()
        .filter(|r| t.by_name(r.g).is_some_and(|l| t.same(l, e.g)) && (r.nc, r.c) == (nc, c))
        .collect()
}

/// Whether the constructed isotropy of `r` splits like the labels `ks`.
fn same_isotropy(r: &ExpectedRow, ks: &[&str]) -> Result<bool, Error> {
    let t = label_table();
    let expected: Vec<(usize, i64)> = ks
        .iter()
        .map(|k| t.by_name(k).map(|l| (l.dim, l.chi)).ok_or_else(|| Error::Invalid(format!("unknown real form {k}"))))
        .collect::<Result<_, _>>()?;
    let cs = coset(&r.a, &r.b, r.kind)?;
    let parts: Vec<(usize, i64)> = cs.k_ideals()?.iter().map(|p| (p.dim, p.chi)).collect();
    Ok(parts_match(&parts, &expected))
}

fn row_name(r: &ExpectedRow) -> String {
    match r.a {
        crate::hurwitz::AlgebraName::R => format!("{}{}", r.b, r.kind.symbol()),
        _ => format!("({}⊗{}){}", r.a, r.b, r.kind.symbol()),
    }
}

pub fn accounting_suite() -> Result<Vec<AccountingReport>, Error> {
    X_SPACES
        .iter()
        .chain(Y_SPACES.iter())
        .map(|e| {
            let (nc, c, chi) = signature_accounting(e.g, e.k)?;
            let coarse = certificate_matches(e, nc, c);
            let mut matches = Vec::new();
            for r in &coarse {
                if same_isotropy(r, e.k)? {
                    matches.push(row_name(r));
                }
            }
            Ok(AccountingReport {
                name: e.name.into(),
                g: e.g.into(),
                k: e.k.iter().map(|s| s.to_string()).collect(),
                nc,
                c,
                chi,
                expected: (e.nc, e.c),
                ok: (nc, c) == (e.nc, e.c) && matches.is_empty(),
                certificate_matches: coarse.iter().map(|r| row_name(r)).collect(),
                rosenfeld_matches: matches,
            })
        })
        .collect()
}

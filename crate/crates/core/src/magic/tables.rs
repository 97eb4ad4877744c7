use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{cache::cell, cell_name, order2_dim_check, DimAccount, Signature3};
use crate::hurwitz::{make_algebra, AlgebraName};
use crate::jordan::make_jordan;
use crate::liealg::{derivations_of, identify_real_form, involution_split, label_table, restricted_signature};
use crate::Error;

pub const TABLE_ROWS: [AlgebraName; 4] = [AlgebraName::R, AlgebraName::C, AlgebraName::H, AlgebraName::O];

/// Column headers; `A` is the row algebra and `A_s` its split partner
/// (R for R, Os for O).
pub const TABLE_COLUMNS: [&str; 4] = ["(A,O)", "(A_s,O)", "(Os,A)", "(A_s,Os)"];

pub const EXPECTED_M3: [[&str; 4]; 4] = [
    ["f4(-52)", "f4(-52)", "f4(4)", "f4(4)"],
    ["e6(-78)", "e6(-26)", "e6(2)", "e6(6)"],
    ["e7(-133)", "e7(-25)", "e7(-5)", "e7(7)"],
    ["e8(-248)", "e8(-24)", "e8(-24)", "e8(8)"],
];

pub const EXPECTED_M12: [[&str; 4]; 4] = [
    ["f4(-20)", "f4(-20)", "f4(4)", "f4(4)"],
    ["e6(-14)", "e6(-26)", "e6(2)", "e6(6)"],
    ["e7(-5)", "e7(-25)", "e7(-5)", "e7(7)"],
    ["e8(8)", "e8(-24)", "e8(-24)", "e8(8)"],
];

pub const EXPECTED_M2: [[&str; 4]; 4] = [
    ["so(9)", "so(9)", "so(5,4)", "so(5,4)"],
    ["so(10)", "so(9,1)", "so(6,4)", "so(5,5)"],
    ["so(12)", "so(10,2)", "so(8,4)", "so(6,6)"],
    ["so(16)", "so(12,4)", "so(12,4)", "so(8,8)"],
];

pub const EXPECTED_M11: [[&str; 4]; 4] = [
    ["so(8,1)", "so(8,1)", "so(5,4)", "so(5,4)"],
    ["so(8,2)", "so(9,1)", "so(6,4)", "so(5,5)"],
    ["so(8,4)", "so(10,2)", "so(8,4)", "so(6,6)"],
    ["so(8,8)", "so(12,4)", "so(12,4)", "so(8,8)"],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    M3,
    M12,
    M2,
    M11,
}

impl TableKind {
    pub const ALL: [TableKind; 4] = [TableKind::M3, TableKind::M12, TableKind::M2, TableKind::M11];

    pub fn name(self) -> &'static str {
        match self {
            TableKind::M3 => "m3",
            TableKind::M12 => "m12",
            TableKind::M2 => "m2",
            TableKind::M11 => "m11",
        }
    }

    pub fn expected(self) -> &'static [[&'static str; 4]; 4] {
        match self {
            TableKind::M3 => &EXPECTED_M3,
            TableKind::M12 => &EXPECTED_M12,
            TableKind::M2 => &EXPECTED_M2,
            TableKind::M11 => &EXPECTED_M11,
        }
    }

    /// The order-3 table whose cells contain this one.
    fn ambient(self) -> Signature3 {
        match self {
            TableKind::M3 | TableKind::M2 => Signature3::Euclidean,
            TableKind::M12 | TableKind::M11 => Signature3::Lorentzian,
        }
    }

    fn order2(self) -> bool {
        matches!(self, TableKind::M2 | TableKind::M11)
    }
}

impl std::str::FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().replace(['_', ','], "").as_str() {
            "m3" => Ok(TableKind::M3),
            "m12" => Ok(TableKind::M12),
            "m2" => Ok(TableKind::M2),
            "m11" => Ok(TableKind::M11),
            _ => Err(Error::Invalid(format!("unknown table {s}; expected m3, m12, m2 or m11"))),
        }
    }
}

fn split_partner(a: &AlgebraName) -> AlgebraName {
    match a {
        AlgebraName::C => AlgebraName::Cs,
        AlgebraName::H => AlgebraName::Hs,
        AlgebraName::O => AlgebraName::Os,
        other => other.clone(),
    }
}

/// (A₁, A₂) for a row algebra and column index.
pub fn cell_inputs(row: &AlgebraName, col: usize) -> (AlgebraName, AlgebraName) {
    let s = split_partner(row);
    match col {
        0 => (row.clone(), AlgebraName::O),
        1 => (s, AlgebraName::O),
        2 => (AlgebraName::Os, row.clone()),
        _ => (s, AlgebraName::Os),
    }
}

pub fn expected_label(kind: TableKind, row: usize, col: usize) -> &'static str {
    kind.expected()[row][col]
}

/// The fixed subalgebra of the order-2 reflection contains one copy of
/// this ideal per Hurwitz factor; (dim, χ).
fn frak_a(a: &AlgebraName) -> (usize, i64) {
    match a {
        AlgebraName::C => (1, -1),
        AlgebraName::Cs => (1, 1),
        AlgebraName::H => (3, -3),
        AlgebraName::Hs => (3, 1),
        _ => (0, 0),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub table: TableKind,
    pub row: String,
    pub column: String,
    pub a1: String,
    pub a2: String,
    pub dim: usize,
    pub plus: usize,
    pub minus: usize,
    pub chi: i64,
    pub label: Option<String>,
    pub expected: String,
    /// "tits" for order-3 cells; "der-jordan" or "fixed-subalgebra" for
    /// order-2 cells.
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<DimAccount>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub table: TableKind,
    pub cells: Vec<CellReport>,
    pub all_ok: bool,
}

impl TableReport {
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n{:<4}", self.table.name(), "");
        for c in TABLE_COLUMNS {
            let _ = write!(s, " {c:<20}");
        }
        for (r, row) in TABLE_ROWS.iter().enumerate() {
            let _ = write!(s, "\n{:<4}", row.to_string());
            for c in 0..4 {
                let cell = &self.cells[r * 4 + c];
                let l = cell.label.as_deref().unwrap_or("?");
                let mark = if cell.ok { "" } else { " !" };
                let _ = write!(s, " {:<20}", format!("{l} [{}]{mark}", cell.chi));
            }
        }
        s.push('\n');
        s
    }

    /// The 4×4 grid of labels, one CSV row per table row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("row");
        for c in TABLE_COLUMNS {
            let _ = write!(s, ",\"{c}\"");
        }
        for (r, row) in TABLE_ROWS.iter().enumerate() {
            let _ = write!(s, "\n{row}");
            for c in 0..4 {
                let _ = write!(s, ",{}", self.cells[r * 4 + c].label.as_deref().unwrap_or("?"));
            }
        }
        s.push('\n');
        s
    }
}

fn finish(
    kind: TableKind,
    r: usize,
    c: usize,
    (a1, a2): (AlgebraName, AlgebraName),
    (dim, plus, minus): (usize, usize, usize),
    method: &str,
    dims: Option<DimAccount>,
) -> CellReport {
    let chi = plus as i64 - minus as i64;
    let expected = expected_label(kind, r, c);
    let label = identify_real_form(dim, chi).ok().map(|l| l.name);
    let label_ok = label.as_deref().is_some_and(|l| label_table().by_name(expected).is_some_and(|e| e.name == l));
    let ok = label_ok && dims.as_ref().is_none_or(|d| d.ok);
    CellReport {
        table: kind,
        row: TABLE_ROWS[r].to_string(),
        column: TABLE_COLUMNS[c].into(),
        a1: a1.to_string(),
        a2: a2.to_string(),
        dim,
        plus,
        minus,
        chi,
        label,
        expected: expected.into(),
        method: method.into(),
        dims,
        ok,
    }
}

fn order3_cell(kind: TableKind, r: usize, c: usize) -> Result<CellReport, Error> {
    let (a1, a2) = cell_inputs(&TABLE_ROWS[r], c);
    let x = cell(&a1, &a2, kind.ambient())?;
    let s = x.signature;
    Ok(finish(kind, r, c, (a1, a2), (x.algebra().dim(), s.plus, s.minus), "tits", None))
}

fn order2_cell(kind: TableKind, r: usize, c: usize) -> Result<CellReport, Error> {
    let (a1, a2) = cell_inputs(&TABLE_ROWS[r], c);
    let lorentzian = kind == TableKind::M11;
    if a1 == AlgebraName::R {
        let eta: &[i8] = if lorentzian { &[-1, 1] } else { &[1, 1] };
        let j = make_jordan(&make_algebra(&a2)?, 2, eta)?;
        let d = derivations_of(&j, "D")?;
        let s = d.algebra.killing_signature();
        let dims = order2_dim_check(&a1, &a2, lorentzian, d.dim())?;
        return Ok(finish(kind, r, c, (a1, a2), (d.dim(), s.plus, s.minus), "der-jordan", Some(dims)));
    }
    // so(Im A₁) ⊕ der 𝔍₂ ⊕ Im A₁⊗𝔍₂′ ⊕ 𝔄(A₁) ⊕ 𝔄(A₂) is fixed by X ↦ sXs
    let x = cell(&a1, &a2, kind.ambient())?;
    let theta = x.tits.parts.reflection_theta(&[1, 1, -1])?;
    let split = involution_split(x.algebra(), &theta)?;
    let sk = restricted_signature(&x.killing, split.k_basis());
    let (d1, c1) = frak_a(&a1);
    let (d2, c2) = frak_a(&a2);
    let dim = split.k.dim() - d1 - d2;
    let chi = sk.chi() - c1 - c2;
    let (plus, minus) = (((dim as i64 + chi) / 2) as usize, ((dim as i64 - chi) / 2) as usize);
    let dims = order2_dim_check(&a1, &a2, lorentzian, dim)?;
    Ok(finish(kind, r, c, (a1, a2), (dim, plus, minus), "fixed-subalgebra", Some(dims)))
}

/// Builds the requested tables. Cells are shared with every other caller in
/// the process.
pub fn octonionic_tables(kinds: &[TableKind]) -> Result<Vec<TableReport>, Error> {
    kinds
        .iter()
        .map(|&kind| {
            let cells = (0..16)
                .into_par_iter()
                .map(|i| {
                    let (r, c) = (i / 4, i % 4);
                    if kind.order2() {
                        order2_cell(kind, r, c)
                    } else {
                        order3_cell(kind, r, c)
                    }
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let all_ok = cells.iter().all(|c| c.ok);
            Ok(TableReport { table: kind, cells, all_ok })
        })
        .collect()
}

/// Name of the cell for diagnostics.
pub fn table_cell_name(kind: TableKind, r: usize, c: usize) -> String {
    let (a1, a2) = cell_inputs(&TABLE_ROWS[r], c);
    let base = cell_name(&a1, &a2, kind.ambient());
    if kind.order2() {
        format!("{}{}", kind.name(), &base[base.find('(').unwrap_or(0)..])
    } else {
        base
    }
}

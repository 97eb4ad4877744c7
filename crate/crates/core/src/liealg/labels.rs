use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::Error;

const ASSET: &str = include_str!("../../data/real_forms.json");

/// A real form recorded by dimension and character χ = nc − c.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealFormLabel {
    pub name: String,
    pub dim: usize,
    pub chi: i64,
    pub nc: usize,
    pub c: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct Asset {
    version: u32,
    labels: Vec<RealFormLabel>,
}

#[derive(Debug)]
pub struct LabelTable {
    pub version: u32,
    labels: Vec<RealFormLabel>,
    by_key: BTreeMap<(usize, i64), usize>,
    by_name: BTreeMap<String, usize>,
}

/// Canonical spelling: lower case, group names mapped to algebra names,
/// no spaces, ASCII minus.
pub fn normalize_name(s: &str) -> String {
    let mut t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    t = t.replace('−', "-").replace("^*", "*").replace("^{*}", "*");
    for (from, to) in [("Spin", "so"), ("SO", "so"), ("SU", "su"), ("SL", "sl"), ("Sp", "sp"), ("U(", "u(")] {
        if t.starts_with(from) {
            t = format!("{to}{}", &t[from.len()..]);
        }
    }
    if let Some(first) = t.chars().next() {
        if matches!(first, 'E' | 'F' | 'G') {
            t = format!("{}{}", first.to_ascii_lowercase(), &t[1..]);
        }
    }
    t.replace("_", "").replace("{", "").replace("}", "")
}

impl LabelTable {
    fn load() -> Result<LabelTable, Error> {
        let asset: Asset =
            serde_json::from_str(ASSET).map_err(|e| Error::Invalid(format!("label asset: {e}")))?;
        let mut by_key = BTreeMap::new();
        let mut by_name = BTreeMap::new();
        for (i, l) in asset.labels.iter().enumerate() {
            if l.nc + l.c != l.dim || l.nc as i64 - l.c as i64 != l.chi {
                return Err(Error::Invalid(format!("label {} is inconsistent", l.name)));
            }
            if let Some(&j) = by_key.get(&(l.dim, l.chi)) {
                let other: &RealFormLabel = &asset.labels[j];
                return Err(Error::Invalid(format!(
                    "labels {} and {} share (dim, χ) = ({}, {})",
                    other.name, l.name, l.dim, l.chi
                )));
            }
            by_key.insert((l.dim, l.chi), i);
            for n in std::iter::once(&l.name).chain(&l.aliases) {
                if by_name.insert(normalize_name(n), i).is_some() {
                    return Err(Error::Invalid(format!("label name {n} is repeated")));
                }
            }
        }
        Ok(LabelTable { version: asset.version, labels: asset.labels, by_key, by_name })
    }

    pub fn labels(&self) -> &[RealFormLabel] {
        &self.labels
    }

    pub fn lookup(&self, dim: usize, chi: i64) -> Option<&RealFormLabel> {
        self.by_key.get(&(dim, chi)).map(|&i| &self.labels[i])
    }

    pub fn by_name(&self, name: &str) -> Option<&RealFormLabel> {
        self.by_name.get(&normalize_name(name)).map(|&i| &self.labels[i])
    }

    /// True when `name` denotes the same entry as `label`.
    pub fn same(&self, label: &RealFormLabel, name: &str) -> bool {
        self.by_name(name).is_some_and(|l| l.name == label.name)
    }
}

/// The shipped label table; the collision audit runs on first use and
/// aborts if the asset is inconsistent.
pub fn label_table() -> &'static LabelTable {
    static TABLE: OnceLock<LabelTable> = OnceLock::new();
    TABLE.get_or_init(|| LabelTable::load().unwrap_or_else(|e| panic!("{e}")))
}

pub fn identify_real_form(dim: usize, chi: i64) -> Result<RealFormLabel, Error> {
    label_table()
        .lookup(dim, chi)
        .cloned()
        .ok_or_else(|| Error::Check(format!("unidentified real form (dim {dim}, χ {chi})")))
}

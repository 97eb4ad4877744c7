use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use super::{calibration, cell_name, tits_construct_with, Signature3, TitsAlgebra};
use crate::hurwitz::AlgebraName;
use crate::liealg::LieAlgebra;
use crate::ratlin::{symmetric_signature, RatMatrix, Signature};
use crate::Error;

/// Environment variable naming a directory for cached structure constants.
pub const CACHE_ENV: &str = "OCTOMAGIC_CACHE_DIR";

const CONVENTION: &str = "cd-doubling:l=i4,gamma=-1|+1;jordan:diag,then (p<q,unit);traceless:Ekk-Ek+1;tits:v1";

/// A constructed magic-square cell with its Killing data.
#[derive(Debug)]
pub struct Cell {
    pub tits: TitsAlgebra,
    pub killing: RatMatrix,
    pub signature: Signature,
    /// True when the structure constants came from the disk cache.
    pub from_disk: bool,
}

impl Cell {
    pub fn chi(&self) -> i64 {
        self.signature.chi()
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.tits.algebra
    }
}

type Key = (AlgebraName, AlgebraName, Signature3);
type Slot = Arc<OnceLock<Result<Arc<Cell>, String>>>;

fn registry() -> &'static Mutex<HashMap<Key, Slot>> {
    static REG: OnceLock<Mutex<HashMap<Key, Slot>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// FNV-1a over the convention string and the calibrated coefficients.
pub fn convention_hash() -> String {
    let c = &calibration().coefficients;
    let s = format!("{CONVENTION};alpha={};mu={};gamma={}", c.alpha, c.mu, c.gamma);
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("{h:016x}")
}

fn cache_path(key: &Key) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    let eta = match key.2 {
        Signature3::Euclidean => "ppp",
        Signature3::Lorentzian => "mpp",
    };
    Some(PathBuf::from(dir).join(format!("{}_{}_{}_{}.json", key.0, key.1, eta, convention_hash())))
}

fn load(key: &Key) -> Option<LieAlgebra> {
    let text = std::fs::read_to_string(cache_path(key)?).ok()?;
    let v: serde_json::Value = serde_json::from_str(&text).ok()?;
    if v["convention"].as_str()? != convention_hash() {
        return None;
    }
    LieAlgebra::import_json(&v["algebra"]).ok()
}

fn store(key: &Key, l: &LieAlgebra) {
    let Some(path) = cache_path(key) else { return };
    let Some(dir) = path.parent() else { return };
    if std::fs::create_dir_all(dir).is_err() {
        return;
    }
    let body = serde_json::json!({ "convention": convention_hash(), "algebra": l.export_json() });
    // write to a temporary file in the same directory, then rename
    let Ok(mut tmp) = tempfile::NamedTempFile::new_in(dir) else { return };
    if tmp.write_all(body.to_string().as_bytes()).is_ok() {
        let _ = tmp.persist(&path);
    }
}

fn build(key: &Key) -> Result<Cell, Error> {
    let (a1, a2, sig) = key;
    let mut tits = tits_construct_with(a1, a2, *sig, calibration().coefficients.clone())?;
    let mut from_disk = false;
    if let Some(l) = load(key) {
        if l.dim() == tits.algebra.dim() && l.labels() == tits.algebra.labels() {
            tits.algebra = l;
            from_disk = true;
        }
    }
    // cached or not, Jacobi is always re-verified
    if let Some((i, j, k)) = tits.algebra.jacobi_failure() {
        return Err(Error::Check(format!(
            "Jacobi fails on basis triple ({i}, {j}, {k}) in {}",
            cell_name(a1, a2, *sig)
        )));
    }
    if !from_disk {
        store(key, &tits.algebra);
    }
    let killing = tits.algebra.killing_form();
    let signature = symmetric_signature(&killing)?;
    Ok(Cell { tits, killing, signature, from_disk })
}

/// The cell m₃(A₁,A₂) or m₁,₂(A₁,A₂), built once per process.
pub fn cell(a1: &AlgebraName, a2: &AlgebraName, sig: Signature3) -> Result<Arc<Cell>, Error> {
    let key = (a1.clone(), a2.clone(), sig);
    let slot = {
        let mut reg = registry().lock().expect("cell registry poisoned");
        reg.entry(key.clone()).or_default().clone()
    };
    slot.get_or_init(|| build(&key).map(Arc::new).map_err(|e| e.to_string()))
        .clone()
        .map_err(Error::Check)
}

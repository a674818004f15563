//! On-disk table cache: one versioned JSON file per group, keyed by
//! [`content_hash`](crate::perm::io::content_hash).

use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::character::{CharTable, Character};
use super::dixon::character_table;
use crate::cyclotomic::CycValue;
use crate::error::{Error, Result};
use crate::perm::io::content_hash;
use crate::perm::PermGroup;

pub const CACHE_VERSION: u32 = 1;
pub const DEFAULT_CACHE_DIR: &str = ".etalab-cache";

#[derive(Debug, Serialize, Deserialize)]
pub struct CachedClasses {
    pub sizes: Vec<usize>,
    pub representatives: Vec<Vec<u32>>,
}

/// Serialized form of a [`CharTable`].
#[derive(Debug, Serialize, Deserialize)]
pub struct CachedTable {
    pub version: u32,
    pub order: usize,
    pub exponent: u64,
    pub prime: u64,
    pub classes: CachedClasses,
    /// Per character, per class: reduced power-basis coefficients.
    pub irreducibles: Vec<Vec<Vec<Value>>>,
}

fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => Value::from(x),
        None => Value::from(n.to_string()),
    }
}

fn json_to_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Cache(format!("non-integral coefficient {n}"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::Cache(format!("bad coefficient {s:?}"))),
        other => Err(Error::Cache(format!("bad coefficient {other}"))),
    }
}

impl CachedTable {
    pub fn from_table(table: &CharTable) -> Self {
        let group = table.group();
        let classes = group.classes();
        Self {
            version: CACHE_VERSION,
            order: group.order(),
            exponent: group.exponent(),
            prime: table.prime(),
            classes: CachedClasses {
                sizes: classes.sizes().to_vec(),
                representatives: classes
                    .representatives()
                    .iter()
                    .map(|r| r.images().to_vec())
                    .collect(),
            },
            irreducibles: table
                .iter()
                .map(|chi| {
                    chi.values()
                        .iter()
                        .map(|v| v.coeffs().iter().map(int_to_json).collect())
                        .collect()
                })
                .collect(),
        }
    }

    /// Rebuilds the table for `group`, rejecting files whose class data disagree.
    pub fn into_table(self, group: &Arc<PermGroup>) -> Result<CharTable> {
        if self.version != CACHE_VERSION {
            return Err(Error::Cache(format!(
                "unsupported version {}",
                self.version
            )));
        }
        let classes = group.classes();
        let reps_match = self.classes.representatives.len() == classes.len()
            && self
                .classes
                .representatives
                .iter()
                .zip(classes.representatives())
                .all(|(a, b)| a.as_slice() == b.images());
        if self.order != group.order()
            || self.exponent != group.exponent()
            || self.classes.sizes != classes.sizes()
            || !reps_match
        {
            return Err(Error::Cache(
                "cached class data do not match the group".into(),
            ));
        }
        let e = self.exponent as u32;
        let mut irreducibles = Vec::with_capacity(self.irreducibles.len());
        for row in &self.irreducibles {
            let values = row
                .iter()
                .map(|coeffs| {
                    let ints = coeffs.iter().map(json_to_int).collect::<Result<Vec<_>>>()?;
                    CycValue::from_coeffs(e, ints)
                        .ok_or_else(|| Error::Cache("coefficient vector has wrong length".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            irreducibles.push(Character::new(Arc::clone(group), values)?);
        }
        if irreducibles.len() != classes.len() {
            return Err(Error::Cache("wrong number of characters".into()));
        }
        Ok(CharTable::from_parts(
            Arc::clone(group),
            self.prime,
            irreducibles,
        ))
    }
}

/// Directory-backed table cache.
#[derive(Debug, Clone)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, group: &PermGroup) -> PathBuf {
        self.dir.join(format!("{}.json", content_hash(group)))
    }

    /// Loads a cached table, or computes and stores it. Unreadable or
    /// mismatching cache files are recomputed and overwritten.
    pub fn get_or_compute(&self, group: &Arc<PermGroup>) -> Result<CharTable> {
        let path = self.path_for(group);
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(table) = serde_json::from_str::<CachedTable>(&text)
                .map_err(Error::from)
                .and_then(|c| c.into_table(group))
            {
                return Ok(table);
            }
        }
        let table = character_table(group)?;
        std::fs::create_dir_all(&self.dir)?;
        let json = serde_json::to_string(&CachedTable::from_table(&table))?;
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, json)?;
        std::fs::rename(&tmp, &path)?;
        Ok(table)
    }
}

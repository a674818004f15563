//! The built-in group catalog, shipped as group files, and loading of
//! user-supplied catalogs from a directory.

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::io::parse_group_file;
use crate::perm::PermGroup;

/// A named group file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub source: String,
}

impl CatalogEntry {
    pub fn new(name: impl Into<String>, source: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            source: source.into(),
        }
    }

    pub fn build(&self) -> Result<Arc<PermGroup>> {
        parse_group_file(&self.source)?.build()
    }
}

macro_rules! embedded {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../catalog/", $name, ".grp")))),*]
    };
}

const DEFAULT: &[(&str, &str)] = embedded![
    "c2", "c4", "c8", "c2xc2", "c2xc4", "d8", "q8", "m16", "d16", "q16", "c4wrc2", "w2_2", "c3",
    "c9", "c3xc3", "e27", "c3wrc3", "c5", "c25",
];

/// The default catalog in its fixed order.
pub fn default_catalog() -> Vec<CatalogEntry> {
    DEFAULT
        .iter()
        .map(|(name, src)| CatalogEntry::new(*name, *src))
        .collect()
}

pub fn default_entry(name: &str) -> Option<CatalogEntry> {
    DEFAULT
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(n, src)| CatalogEntry::new(*n, *src))
}

/// Every `*.grp` file in `dir`, sorted by file name.
pub fn load_catalog_dir(dir: &Path) -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    for item in std::fs::read_dir(dir)? {
        let path = item?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("grp") {
            continue;
        }
        let name = path
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| Error::InvalidArgument(format!("bad file name {}", path.display())))?
            .to_string();
        entries.push(CatalogEntry::new(name, std::fs::read_to_string(&path)?));
    }
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(entries)
}

/// `"default"` selects the built-in catalog, a directory loads its group
/// files, and any other path is read as a single group file.
pub fn resolve_catalog(selector: &str) -> Result<Vec<CatalogEntry>> {
    if selector == "default" {
        return Ok(default_catalog());
    }
    let path = Path::new(selector);
    if path.is_dir() {
        load_catalog_dir(path)
    } else {
        let name = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or(selector)
            .to_string();
        Ok(vec![CatalogEntry::new(
            name,
            std::fs::read_to_string(path)?,
        )])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;

    fn built(name: &str) -> Arc<PermGroup> {
        default_entry(name).unwrap().build().unwrap()
    }

    #[test]
    fn catalog_matches_constructions() {
        let c = |m| cyclic(m).unwrap();
        let expected: Vec<(&str, Arc<PermGroup>)> = vec![
            ("c2", c(2)),
            ("c4", c(4)),
            ("c8", c(8)),
            ("c2xc2", direct_product(&c(2), &c(2)).unwrap()),
            ("c2xc4", direct_product(&c(2), &c(4)).unwrap()),
            ("d8", dihedral(4).unwrap()),
            ("q8", quaternion().unwrap()),
            ("m16", modular(16).unwrap()),
            ("d16", dihedral(8).unwrap()),
            ("q16", generalized_quaternion(16).unwrap()),
            ("c4wrc2", wreath_cp(&c(4), 2).unwrap().group),
            ("c3", c(3)),
            ("c9", c(9)),
            ("c3xc3", direct_product(&c(3), &c(3)).unwrap()),
            ("e27", extraspecial_exp_p(3, 1).unwrap()),
            ("c3wrc3", wreath_cp(&c(3), 3).unwrap().group),
            ("c5", c(5)),
            ("c25", c(25)),
        ];
        for (name, g) in expected {
            let h = built(name);
            assert!(PermGroup::same_group(&g, &h), "{name}");
        }
        let w = built("w2_2");
        assert_eq!((w.order(), w.degree()), (2048, 16));
        assert!(PermGroup::same_group(
            &w,
            &prop5_witness(2, 2).unwrap().group
        ));
    }

    #[test]
    fn all_catalog_groups_are_p_groups() {
        for entry in default_catalog() {
            let g = entry.build().unwrap();
            assert!(g.p_group_info().is_p_group, "{}", entry.name);
            assert!(g.order() <= 2048);
        }
    }
}

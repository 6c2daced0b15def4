//! Example knots and d-data shipped with the library.

use crate::error::Result;
use crate::library::{DSources, KnotLibrary};

pub const KNOTS_JSON: &str = include_str!("../corpus/knots.json");
pub const CHH_JSON: &str = include_str!("../corpus/cochran-harvey-horn.json");

/// Bundled d-record files by file name.
pub const D_FILES: &[(&str, &str)] = &[("cochran-harvey-horn.json", CHH_JSON)];

pub fn library() -> KnotLibrary {
    KnotLibrary::from_json(KNOTS_JSON).expect("bundled corpus is valid")
}

pub fn d_file(name: &str) -> Option<&'static str> {
    let base = name.rsplit('/').next().unwrap_or(name);
    D_FILES.iter().find(|(n, _)| *n == base).map(|(_, t)| *t)
}

/// Every bundled d-record file.
pub fn d_sources() -> Result<DSources> {
    let mut d = DSources::new();
    for (_, text) in D_FILES {
        d.add_json(text)?;
    }
    Ok(d)
}

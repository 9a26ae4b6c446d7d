//! User j-maps: one `NAME = j(t)` per line, `#` comments.

use std::collections::BTreeMap;
use std::path::Path;

use galois_fiber::models::JMap;

use crate::CliError;

pub type UserMaps = BTreeMap<String, JMap>;

pub fn parse(text: &str, path: &str) -> Result<UserMaps, CliError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| CliError::JMapFile { path: path.to_string(), msg: format!("line {}: {msg}", i + 1) };
        let (name, map) = line.split_once('=').ok_or_else(|| bad("expected NAME = j(t)".into()))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(bad("empty name".into()));
        }
        let j = JMap::parse(map.trim()).map_err(|e| bad(e.to_string()))?;
        if out.insert(name.to_string(), j).is_some() {
            return Err(bad(format!("{name} defined twice")));
        }
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<UserMaps, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::JMapFile { path: shown.clone(), msg: e.to_string() })?;
    parse(&text, &shown)
}

/// The j-map for a reference: a user map by name, else a catalog entry.
pub fn resolve(reference: &str, user: &UserMaps) -> Result<JMap, CliError> {
    if let Some(j) = user.get(reference) {
        return Ok(j.clone());
    }
    Ok(JMap::of_catalog(reference)?)
}

//! Shipped data files, overridable at run time from a directory named by
//! `GALOIS_FIBER_DATA`.

use std::borrow::Cow;
use std::path::PathBuf;

pub const DATA_DIR_VAR: &str = "GALOIS_FIBER_DATA";

/// Override path for `file`, when the variable is set.
pub fn override_path(file: &str) -> Option<PathBuf> {
    std::env::var_os(DATA_DIR_VAR).map(|d| PathBuf::from(d).join(file))
}

/// Parse `file` from the override directory if present, else the embedded copy.
pub fn load<T: serde::de::DeserializeOwned>(file: &str, embedded: &'static str) -> T {
    let text: Cow<'static, str> = match override_path(file) {
        Some(p) => match std::fs::read_to_string(&p) {
            Ok(s) => Cow::Owned(s),
            Err(e) => {
                log::warn!("{}: {e}; using the shipped {file}", p.display());
                Cow::Borrowed(embedded)
            }
        },
        None => Cow::Borrowed(embedded),
    };
    match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) if matches!(text, Cow::Owned(_)) => {
            log::error!("override {file} is invalid ({e}); using the shipped copy");
            serde_json::from_str(embedded).expect("shipped data is valid JSON")
        }
        Err(e) => panic!("shipped {file} is invalid: {e}"),
    }
}

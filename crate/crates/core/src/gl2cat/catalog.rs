//! The shipped subgroup catalog for levels 2, 3, 5, 7, 11, 13.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::construct::{borel, nonsplit_cartan, nonsplit_cartan_normalizer, split_cartan, split_cartan_normalizer};
use super::group::FiniteMatrixGroup;
use super::mat::Mat2;
use super::GroupError;

const CATALOG_JSON: &str = include_str!("../../data/catalog.json");

#[derive(Deserialize)]
struct RawCatalog {
    schema: u32,
    levels: Vec<RawLevel>,
}

#[derive(Deserialize)]
struct RawLevel {
    level: u32,
    entries: Vec<RawEntry>,
    edges: Vec<(String, String, Option<u64>)>,
}

#[derive(Deserialize, Clone)]
struct RawEntry {
    name: String,
    gens: Option<Vec<[i64; 4]>>,
    construct: Option<String>,
    parent: Option<String>,
    jmap: Option<JMapRef>,
    printed_gens: Option<Vec<[i64; 4]>>,
    gens_note: Option<String>,
}

#[derive(Deserialize, Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "UPPERCASE")]
pub enum JMapKind {
    Ratfunc,
    Constant,
    Elliptic11,
    None,
}

/// The j-map as stored: printed text, a corrected text where the printed one
/// is inconsistent, or a constant value.
#[derive(Deserialize, Serialize, Clone, Debug, PartialEq, Eq)]
pub struct JMapRef {
    pub kind: JMapKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corrected: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl JMapRef {
    pub fn none() -> Self {
        JMapRef { kind: JMapKind::None, printed: None, corrected: None, value: None, note: None }
    }

    /// The text used for computation: the corrected form when there is one.
    pub fn effective(&self) -> Option<&str> {
        self.corrected.as_deref().or(self.printed.as_deref()).or(self.value.as_deref())
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub level: u32,
    pub name: String,
    pub group: FiniteMatrixGroup,
    pub contains_minus_i: bool,
    pub jmap: JMapRef,
    pub parent: Option<String>,
    /// Generators as printed, when they differ from the ones used.
    pub printed_gens: Option<Vec<Mat2>>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub lower: String,
    pub upper: String,
    pub label: Option<u64>,
}

fn raw() -> &'static RawCatalog {
    static CAT: OnceLock<RawCatalog> = OnceLock::new();
    CAT.get_or_init(|| {
        let c: RawCatalog = crate::fixtures::load("catalog.json", CATALOG_JSON);
        assert_eq!(c.schema, 1);
        c
    })
}

fn raw_level(level: u32) -> Result<&'static RawLevel, GroupError> {
    raw().levels.iter().find(|l| l.level == level).ok_or(GroupError::UnknownLevel(level))
}

pub fn catalog_levels() -> Vec<u32> {
    raw().levels.iter().map(|l| l.level).collect()
}

/// Names understood at every level.
pub const GENERIC_NAMES: [&str; 8] = ["GL_2", "I", "+-I", "B", "C_spl", "N_spl", "C_nsp", "N_nsp"];

fn generic_group(level: u32, name: &str) -> Result<Option<FiniteMatrixGroup>, GroupError> {
    Ok(Some(match name {
        "GL_2" => FiniteMatrixGroup::gl2(level),
        "I" => FiniteMatrixGroup::trivial(level),
        "+-I" => FiniteMatrixGroup::closure(&[Mat2::scalar(level, -1)], level)?,
        "B" => borel(level),
        "C_spl" => split_cartan(level)?,
        "N_spl" => split_cartan_normalizer(level)?,
        "C_nsp" => nonsplit_cartan(level)?,
        "N_nsp" => nonsplit_cartan_normalizer(level)?,
        _ => return Ok(None),
    }))
}

fn quads(level: u32, q: &[[i64; 4]]) -> Vec<Mat2> {
    q.iter().map(|&x| Mat2::from_quad(level, x)).collect()
}

fn materialize(level: u32, e: &RawEntry) -> Result<CatalogEntry, GroupError> {
    let group = match (&e.gens, &e.construct) {
        (Some(g), _) => FiniteMatrixGroup::closure(&quads(level, g), level)?,
        (None, Some(c)) => generic_group(level, c)?.ok_or_else(|| GroupError::Catalog(format!("unknown constructor {c}")))?,
        (None, None) => return Err(GroupError::Catalog(format!("{} has neither generators nor constructor", e.name))),
    };
    Ok(CatalogEntry {
        level,
        name: e.name.clone(),
        contains_minus_i: group.contains_minus_identity(),
        group,
        jmap: e.jmap.clone().unwrap_or_else(JMapRef::none),
        parent: e.parent.clone(),
        printed_gens: e.printed_gens.as_ref().map(|g| quads(level, g)),
        note: e.gens_note.clone(),
    })
}

/// Entry `name` at `level`; the generic names of `GENERIC_NAMES` resolve at any level.
pub fn catalog_lookup(level: u32, name: &str) -> Result<CatalogEntry, GroupError> {
    if let Ok(l) = raw_level(level) {
        if let Some(e) = l.entries.iter().find(|e| e.name == name) {
            return materialize(level, e);
        }
    }
    if let Some(group) = generic_group(level, name)? {
        return Ok(CatalogEntry {
            level,
            name: name.to_string(),
            contains_minus_i: group.contains_minus_identity(),
            group,
            jmap: JMapRef::none(),
            parent: None,
            printed_gens: None,
            note: None,
        });
    }
    raw_level(level)?;
    Err(GroupError::UnknownName { level, name: name.to_string() })
}

pub fn catalog_level(level: u32) -> Result<Vec<CatalogEntry>, GroupError> {
    raw_level(level)?.entries.iter().map(|e| materialize(level, e)).collect()
}

pub fn catalog_edges(level: u32) -> Result<Vec<Edge>, GroupError> {
    Ok(raw_level(level)?.edges.iter().map(|(a, b, l)| Edge { lower: a.clone(), upper: b.clone(), label: *l }).collect())
}

/// Parse a reference such as `7:G_2`.
pub fn parse_ref(s: &str) -> Result<(u32, String), GroupError> {
    let bad = || GroupError::BadReference(s.to_string());
    let (l, n) = s.split_once(':').ok_or_else(bad)?;
    let level = l.trim().parse().map_err(|_| bad())?;
    let name = n.trim();
    if name.is_empty() {
        return Err(bad());
    }
    Ok((level, name.to_string()))
}

pub fn lookup_ref(s: &str) -> Result<CatalogEntry, GroupError> {
    let (l, n) = parse_ref(s)?;
    catalog_lookup(l, &n)
}

/// Computed data for one lattice edge.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeCheck {
    pub edge: Edge,
    pub contained: bool,
    pub contained_up_to_conjugacy: bool,
    /// |upper| / |lower|
    pub order_ratio: f64,
    pub label_matches: bool,
}

/// Whether some conjugate `g a g^-1` lies inside `b`.
pub fn conjugate_into(a: &FiniteMatrixGroup, b: &FiniteMatrixGroup) -> bool {
    if !b.order().is_multiple_of(a.order()) {
        return false;
    }
    let ambient = FiniteMatrixGroup::gl2(a.modulus());
    ambient.elements().iter().any(|g| {
        let gi = g.inverse().unwrap();
        a.generators().iter().all(|x| b.contains(&g.mul(x).mul(&gi)))
    })
}

pub fn lattice_check(level: u32) -> Result<Vec<EdgeCheck>, GroupError> {
    let mut out = Vec::new();
    for edge in catalog_edges(level)? {
        let lo = catalog_lookup(level, &edge.lower)?.group;
        let hi = catalog_lookup(level, &edge.upper)?.group;
        let contained = lo.is_subgroup_of(&hi);
        let contained_up_to_conjugacy = contained || conjugate_into(&lo, &hi);
        let ratio = hi.order() as f64 / lo.order() as f64;
        let label_matches = edge.label.is_some_and(|l| contained && hi.order() == l as usize * lo.order());
        out.push(EdgeCheck { edge, contained, contained_up_to_conjugacy, order_ratio: ratio, label_matches });
    }
    Ok(out)
}

//! Finite subgroups of GL_2(Z/n): closure, applicability, normal subgroups,
//! quotients, fiber products and the level catalog.

mod catalog;
mod construct;
mod group;
mod mat;
mod normal;

use serde::Serialize;
use thiserror::Error;

pub use catalog::{
    catalog_edges, catalog_level, catalog_levels, catalog_lookup, conjugate_into, lattice_check, lookup_ref, parse_ref,
    CatalogEntry, Edge, EdgeCheck, JMapKind, JMapRef, GENERIC_NAMES,
};
pub use construct::{
    borel, gl2_order, nonsplit_cartan, nonsplit_cartan_normalizer, nsp_epsilon, scalars, split_cartan, split_cartan_normalizer,
};
pub use group::FiniteMatrixGroup;
pub use mat::Mat2;
pub use normal::{
    common_quotients, graph_subgroup, is_normal, isomorphisms, normal_subgroups, normal_subgroups_bounded, CommonQuotient,
    Quotient, Table, DEFAULT_BOUND,
};

use mat::gcd;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator {0:?} is not invertible")]
    NotInvertible(Mat2),
    #[error("generator modulus {found} differs from group modulus {expected}")]
    ModulusMismatch { expected: u32, found: u32 },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("group order {order} exceeds the bound {bound}")]
    SizeBound { order: usize, bound: usize },
    #[error("modulus {0} is not a power of 2")]
    NotPowerOfTwo(u32),
    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(u32, u32),
    #[error("maps are not surjective onto a common quotient")]
    NotSurjective,
    #[error("maps do not define a subgroup")]
    NotHomomorphism,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("no catalog for level {0}")]
    UnknownLevel(u32),
    #[error("no entry {name} at level {level}")]
    UnknownName { level: u32, name: String },
    #[error("bad group reference '{0}' (expected LEVEL:NAME)")]
    BadReference(String),
    #[error("catalog data: {0}")]
    Catalog(String),
}

/// Outcome of the applicability test with the first failing condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Applicability {
    pub applicable: bool,
    pub witness: Option<Mat2>,
    pub failed: Option<&'static str>,
}

/// A matrix in `g` with trace 0, determinant -1 and a fixed vector of order n.
pub fn complex_conjugation_witness(g: &FiniteMatrixGroup) -> Option<Mat2> {
    let n = g.modulus();
    let minus_one = (n - 1) % n;
    g.elements().iter().copied().find(|m| {
        m.trace() == 0
            && m.det() == minus_one
            && (0..n).any(|x| (0..n).any(|y| gcd(gcd(x, y), n) == 1 && m.apply((x, y)) == (x, y)))
    })
}

pub fn is_applicable(g: &FiniteMatrixGroup) -> Applicability {
    let fail = |why| Applicability { applicable: false, witness: None, failed: Some(why) };
    if g.order() as u64 == gl2_order(g.modulus()) {
        return fail("G is all of GL_2");
    }
    if !g.contains_minus_identity() {
        return fail("-I not in G");
    }
    if !g.has_surjective_det() {
        return fail("det not surjective");
    }
    match complex_conjugation_witness(g) {
        Some(w) => Applicability { applicable: true, witness: Some(w), failed: None },
        None => fail("no trace-0, det-(-1) element fixing a point of order n"),
    }
}

/// Finite-level part of the 2-adic conditions: surjective determinant and a
/// trace-0 element of determinant -1. The genus condition is not checked.
pub fn has_rzb_conditions(g: &FiniteMatrixGroup) -> Result<bool, GroupError> {
    let n = g.modulus();
    if n < 2 || !n.is_power_of_two() {
        return Err(GroupError::NotPowerOfTwo(n));
    }
    let minus_one = n - 1;
    Ok(g.has_surjective_det() && g.elements().iter().any(|m| m.trace() == 0 && m.det() == minus_one))
}

/// `[GL_2(Z/n0) x GL_2(Z/n1) : H0 x H1]` for catalog names.
pub fn composite_index(h0: &str, n0: u32, h1: &str, n1: u32) -> Result<u64, GroupError> {
    if gcd(n0, n1) != 1 {
        return Err(GroupError::NotCoprime(n0, n1));
    }
    let a = catalog_lookup(n0, h0)?.group.order() as u64;
    let b = catalog_lookup(n1, h1)?.group.order() as u64;
    Ok(gl2_order(n0) * gl2_order(n1) / (a * b))
}

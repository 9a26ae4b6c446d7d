//! Entanglement machinery: Goursat obstructions between catalog groups, the
//! Gauss period cubic and its curves, the Rubin-Silverberg family, the
//! Brau-Jones j-family and the level-3 index-6 classification.

mod gauss;


use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{rational_roots, BigRat, ExactError, QPoly};
use crate::gl2cat::{
    self, common_quotients, graph_subgroup, is_applicable, isomorphisms, lookup_ref, normal_subgroups, FiniteMatrixGroup,
    GroupError, Mat2, Quotient,
};
use crate::models::{EllipticQ, ModelError};

pub use gauss::{
    gauss_cubic, gauss_curve, gauss_k, gauss_k_solutions, gaussian_period_polynomial, rubin_silverberg_coefficients,
    rubin_silverberg_et, two_division_check, CubicStatus, GaussCubicReport, GaussParams, TwoDivisionCheck, PERIOD_LIMIT,
    SPLIT_PRIMES_BELOW,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EntangleError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not 1 mod 3")]
    NotOneModThree(u64),
    #[error("no representation 4p = (3k-2)^2 + 27N^2 for p = {0}")]
    NoRepresentation(u64),
    #[error("p = {0} too large for exact Gaussian periods")]
    TooLarge(u64),
    #[error("denominator p - 9k^2/4 + 3k - 1 vanishes")]
    ZeroDenominator,
    #[error("t = {0} is excluded")]
    Excluded(BigRat),
    #[error("t = 0 is a pole")]
    Pole,
    #[error("degenerate: {0}")]
    Degenerate(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "NO_ENTANGLEMENT")]
    NoEntanglement,
    #[serde(rename = "POSSIBLE_ENTANGLEMENT")]
    PossibleEntanglement,
}

/// One pair `N0 < G0`, `N1 < G1` with `G0/N0 = G1/N1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoursatTriple {
    pub quotient_order: usize,
    pub n0_order: usize,
    pub n1_order: usize,
    pub quotient_abelian: bool,
    /// Isomorphisms found between the two quotients (capped).
    pub iso_count: usize,
    /// Order of the fibered product in GL_2(Z/n0 n1).
    pub graph_order: usize,
    /// Generators of the two kernels as `[a, b, c, d]`.
    pub n0_generators: Vec<[u32; 4]>,
    pub n1_generators: Vec<[u32; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntanglementReport {
    pub left: String,
    pub right: String,
    pub left_order: usize,
    pub right_order: usize,
    pub triples: Vec<GoursatTriple>,
    pub verdict: Verdict,
    /// Possible entanglement degrees `|Q|`.
    pub degrees: BTreeSet<usize>,
}

/// Goursat filter on two explicit groups of coprime level.
pub fn goursat_groups(
    g0: &FiniteMatrixGroup,
    g1: &FiniteMatrixGroup,
) -> Result<(Vec<GoursatTriple>, BTreeSet<usize>), EntangleError> {
    let cq = common_quotients(g0, g1)?;
    let mut triples = Vec::new();
    for c in &cq {
        let graph = c.graph(g0, g1)?;
        triples.push(GoursatTriple {
            quotient_order: c.order,
            n0_order: c.n0.order(),
            n1_order: c.n1.order(),
            quotient_abelian: c.q0.table.is_abelian(),
            iso_count: c.iso_count,
            graph_order: graph.order(),
            n0_generators: c.n0.generators().iter().map(|m| m.quad()).collect(),
            n1_generators: c.n1.generators().iter().map(|m| m.quad()).collect(),
        });
    }
    triples.sort_by(|a, b| {
        (a.quotient_order, a.n0_order, a.n1_order, &a.n1_generators).cmp(&(
            b.quotient_order,
            b.n0_order,
            b.n1_order,
            &b.n1_generators,
        ))
    });
    let degrees = triples.iter().map(|t| t.quotient_order).collect();
    Ok((triples, degrees))
}

/// Goursat filter on catalog references such as `2:G_3`, `5:G_9`.
pub fn goursat_filter(left: &str, right: &str) -> Result<EntanglementReport, EntangleError> {
    let a = lookup_ref(left)?;
    let b = lookup_ref(right)?;
    let (triples, degrees) = goursat_groups(&a.group, &b.group)?;
    let verdict = if triples.is_empty() { Verdict::NoEntanglement } else { Verdict::PossibleEntanglement };
    Ok(EntanglementReport {
        left: left.to_string(),
        right: right.to_string(),
        left_order: a.group.order(),
        right_order: b.group.order(),
        triples,
        verdict,
        degrees,
    })
}

/// The order-8 subgroup of GL_2(F_3): `(x -y; y x)` with `x^2 + y^2 = 1` and
/// `(x y; y -x)` with `x^2 + y^2 = -1`.
pub fn brau_jones_kernel() -> FiniteMatrixGroup {
    FiniteMatrixGroup::from_predicate(3, |m| {
        let [a, b, c, d] = m.quad();
        let n = (a * a + c * c) % 3;
        (a == d && (b + c) % 3 == 0 && n == 1) || (b == c && (a + d) % 3 == 0 && n == 2)
    })
}

/// `theta: GL_2(F_3) -> GL_2(F_2)` with kernel the Brau-Jones subgroup, as
/// the position of `theta(g)` in the element list of GL_2(F_2) for each `g`.
pub fn theta_labels() -> Result<Vec<u32>, EntangleError> {
    let g3 = FiniteMatrixGroup::gl2(3);
    let g2 = FiniteMatrixGroup::gl2(2);
    let q3 = Quotient::new(&g3, &brau_jones_kernel())?;
    let q2 = Quotient::new(&g2, &FiniteMatrixGroup::trivial(2))?;
    let (iso, _) = isomorphisms(&q3.table, &q2.table, 1);
    let iso = iso.ok_or(EntangleError::Degenerate("GL_2(F_3)/N is not GL_2(F_2)".into()))?;
    // turn quotient labels of GL_2(F_2) into element positions
    let mut pos = vec![0u32; q2.table.order];
    for (i, &l) in q2.labels.iter().enumerate() {
        pos[l as usize] = i as u32;
    }
    Ok(q3.labels.iter().map(|&l| pos[iso[l as usize] as usize]).collect())
}

/// Graph of theta restricted to `g3 <= GL_2(F_3)`, inside GL_2(Z/6).
fn theta_graph(g3: &FiniteMatrixGroup) -> Result<FiniteMatrixGroup, EntangleError> {
    let full = FiniteMatrixGroup::gl2(3);
    let theta = theta_labels()?;
    let g2 = FiniteMatrixGroup::gl2(2);
    let psi2: Vec<u32> = (0..g2.order() as u32).collect();
    let psi3: Vec<u32> = g3.elements().iter().map(|m| theta[full.position(m).unwrap()]).collect();
    Ok(graph_subgroup(&g2, &psi2, g3, &psi3)?)
}

/// `H'`: the graph of theta on all of GL_2(F_3).
pub fn h_prime() -> Result<FiniteMatrixGroup, EntangleError> {
    theta_graph(&FiniteMatrixGroup::gl2(3))
}

/// `H''`: the graph of theta restricted to the level-3 Borel `G_3`, whose
/// kernel there is `<2I>`.
pub fn h_double_prime() -> Result<FiniteMatrixGroup, EntangleError> {
    let g3 = lookup_ref("3:G_3")?.group;
    let kernel = FiniteMatrixGroup::closure(&[Mat2::scalar(3, 2)], 3)?;
    let index6: Vec<FiniteMatrixGroup> = normal_subgroups(&g3)?.into_iter().filter(|n| g3.order() == 6 * n.order()).collect();
    if index6.len() != 1 || !index6[0].same_elements(&kernel) {
        return Err(EntangleError::Degenerate("G_3 has no unique index-6 normal subgroup <2I>".into()));
    }
    theta_graph(&g3)
}

/// Level-3 catalog entries `G` (with `+-G` applicable) having a normal
/// subgroup of index 6.
pub fn level3_index6_subgroups() -> Result<Vec<String>, EntangleError> {
    let mut out = Vec::new();
    for e in gl2cat::catalog_level(3)? {
        let g = &e.group;
        if g.order() % 6 != 0 || !is_applicable(&g.plus_minus()).applicable {
            continue;
        }
        if normal_subgroups(g)?.iter().any(|n| g.order() == 6 * n.order()) {
            out.push(e.name.clone());
        }
    }
    Ok(out)
}

fn r(n: i64) -> BigRat {
    BigRat::from_integer(n.into())
}

/// `2^10 3^3 t^3 (1 - 4 t^3)`, for `t` not in `{0, 1/2}`.
pub fn brau_jones_j(t: &BigRat) -> Result<BigRat, EntangleError> {
    if t.is_zero() || *t == BigRat::new(1.into(), 2.into()) {
        return Err(EntangleError::Excluded(t.clone()));
    }
    let t3 = t * t * t;
    Ok(r(27648) * &t3 * (BigRat::one() - r(4) * &t3))
}

/// `2^10 3^3 s^3 (1 - 4 s^3) - J_3(t)` as a polynomial in `s`, with
/// `J_3(t) = 27 (t+1)(t+9)^3 / t^3`.
pub fn xhpp_polynomial(t: &BigRat) -> Result<QPoly, EntangleError> {
    if t.is_zero() {
        return Err(EntangleError::Pole);
    }
    let t9 = t + r(9);
    let rhs = r(27) * (t + r(1)) * &t9 * &t9 * &t9 / (t * t * t);
    let mut c = vec![BigRat::zero(); 7];
    c[0] = -rhs;
    c[3] = r(27648);
    c[6] = r(-110592);
    Ok(QPoly::from_rats(c))
}

/// Rational `s` on the level-6 curve above `t`, sorted.
pub fn xhpp_solve(t: &BigRat) -> Result<Vec<BigRat>, EntangleError> {
    let f = xhpp_polynomial(t)?;
    let mut s = rational_roots(&f)?;
    s.sort();
    s.dedup();
    debug_assert!(s.iter().all(|s| f.eval(s).is_zero()));
    Ok(s)
}

/// Rational `t != 0` over a given `s`: roots of `27 (t+1)(t+9)^3 - j(s) t^3`.
pub fn xhpp_t_values(s: &BigRat) -> Result<Vec<BigRat>, EntangleError> {
    let s3 = s * s * s;
    let js = r(27648) * &s3 * (BigRat::one() - r(4) * &s3);
    let lhs = QPoly::from_i64s(&[27, 27]).mul(&QPoly::from_i64s(&[9, 1]).pow(3));
    let f = lhs.sub(&QPoly::from_rats(vec![BigRat::zero(), BigRat::zero(), BigRat::zero(), js]));
    let mut t: Vec<BigRat> = rational_roots(&f)?.into_iter().filter(|t| !t.is_zero()).collect();
    t.sort();
    t.dedup();
    Ok(t)
}

/// The j-invariant shared by both sides of the level-6 equation at `t`.
pub fn xhpp_j(t: &BigRat) -> Result<BigRat, EntangleError> {
    Ok(-xhpp_polynomial(t)?.coeff(0))
}

/// Short Weierstrass model of the Rubin-Silverberg curve; see [`rubin_silverberg_et`].
pub fn elliptic_short(a: BigRat, b: BigRat) -> Result<EllipticQ, EntangleError> {
    EllipticQ::short(a, b).map_err(|e| match e {
        ModelError::Singular => EntangleError::Degenerate("singular Weierstrass model".into()),
        e => e.into(),
    })
}

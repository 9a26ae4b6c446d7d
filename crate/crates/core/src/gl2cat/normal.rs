//! Normal subgroups, quotient tables, isomorphisms of small quotients and
//! fiber products (Goursat).

use std::collections::{HashSet, VecDeque};

use super::group::FiniteMatrixGroup;
use super::mat::{gcd, Mat2};
use super::GroupError;

pub const DEFAULT_BOUND: usize = 10_000;

/// A finite group given by its multiplication table on `0..order`.
#[derive(Clone, Debug)]
pub struct Table {
    pub order: usize,
    pub mul: Vec<u32>,
    pub identity: u32,
}

impl Table {
    pub fn op(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order as u32).map(|a| self.element_order(a)).collect();
        v.sort();
        v
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32).all(|a| (0..self.order as u32).all(|b| self.op(a, b) == self.op(b, a)))
    }

    fn generators(&self) -> Vec<u32> {
        let mut cand: Vec<u32> = (0..self.order as u32).collect();
        cand.sort_by_key(|&a| std::cmp::Reverse(self.element_order(a)));
        let mut inside = vec![false; self.order];
        inside[self.identity as usize] = true;
        let mut span = vec![self.identity];
        let mut gens = Vec::new();
        for a in cand {
            if span.len() == self.order {
                break;
            }
            if inside[a as usize] {
                continue;
            }
            gens.push(a);
            let mut queue: VecDeque<u32> = span.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = self.op(x, g);
                    if !inside[y as usize] {
                        inside[y as usize] = true;
                        span.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        gens
    }
}

const UNSET: u32 = u32::MAX;

/// Extend generator images to a map on the generated subgroup; `None` when
/// inconsistent or not injective.
fn extend(src: &Table, dst: &Table, gens: &[u32], imgs: &[u32]) -> Option<Vec<u32>> {
    let mut phi = vec![UNSET; src.order];
    let mut hit = vec![false; dst.order];
    phi[src.identity as usize] = dst.identity;
    hit[dst.identity as usize] = true;
    let mut queue = VecDeque::from([src.identity]);
    while let Some(x) = queue.pop_front() {
        let fx = phi[x as usize];
        for (g, im) in gens.iter().zip(imgs) {
            let y = src.op(x, *g);
            let fy = dst.op(fx, *im);
            match phi[y as usize] {
                UNSET => {
                    if hit[fy as usize] {
                        return None;
                    }
                    hit[fy as usize] = true;
                    phi[y as usize] = fy;
                    queue.push_back(y);
                }
                v if v != fy => return None,
                _ => {}
            }
        }
    }
    Some(phi)
}

/// First isomorphism `src -> dst` found and the number of isomorphisms
/// (counting stops at `limit`).
pub fn isomorphisms(src: &Table, dst: &Table, limit: usize) -> (Option<Vec<u32>>, usize) {
    if src.order != dst.order || src.order_profile() != dst.order_profile() {
        return (None, 0);
    }
    if src.is_abelian() != dst.is_abelian() {
        return (None, 0);
    }
    let gens = src.generators();
    let cands: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| {
            let o = src.element_order(g);
            (0..dst.order as u32).filter(|&b| dst.element_order(b) == o).collect()
        })
        .collect();
    let mut first = None;
    let mut count = 0usize;
    let mut imgs = Vec::with_capacity(gens.len());
    search(src, dst, &gens, &cands, &mut imgs, &mut first, &mut count, limit);
    (first, count)
}

#[allow(clippy::too_many_arguments)]
fn search(
    src: &Table,
    dst: &Table,
    gens: &[u32],
    cands: &[Vec<u32>],
    imgs: &mut Vec<u32>,
    first: &mut Option<Vec<u32>>,
    count: &mut usize,
    limit: usize,
) {
    if *count >= limit {
        return;
    }
    let k = imgs.len();
    if k == gens.len() {
        if let Some(phi) = extend(src, dst, gens, imgs) {
            if phi.iter().all(|&v| v != UNSET) {
                *count += 1;
                if first.is_none() {
                    *first = Some(phi);
                }
            }
        }
        return;
    }
    for &c in &cands[k] {
        imgs.push(c);
        if extend(src, dst, &gens[..=k], imgs).is_some() {
            search(src, dst, gens, cands, imgs, first, count, limit);
        }
        imgs.pop();
    }
}

/// Elements of `g` (as positions) closed under the given generator positions.
fn close_in(g: &FiniteMatrixGroup, gens: &[usize]) -> Vec<usize> {
    let el = g.elements();
    let mut inside = vec![false; el.len()];
    let id = g.position(&Mat2::identity(g.modulus())).unwrap();
    inside[id] = true;
    let mut out = vec![id];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.position(&el[x].mul(&el[s])).unwrap();
            if !inside[y] {
                inside[y] = true;
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out.sort();
    out
}

fn conjugacy_classes(g: &FiniteMatrixGroup) -> Vec<Vec<usize>> {
    let el = g.elements();
    let gens: Vec<(Mat2, Mat2)> = g.generators().iter().map(|s| (*s, s.inverse().unwrap())).collect();
    let mut seen = vec![false; el.len()];
    let mut classes = Vec::new();
    for i in 0..el.len() {
        if seen[i] {
            continue;
        }
        seen[i] = true;
        let mut cls = vec![i];
        let mut queue = VecDeque::from([i]);
        while let Some(x) = queue.pop_front() {
            for (s, si) in &gens {
                let y = g.position(&s.mul(&el[x]).mul(si)).unwrap();
                if !seen[y] {
                    seen[y] = true;
                    cls.push(y);
                    queue.push_back(y);
                }
            }
        }
        cls.sort();
        classes.push(cls);
    }
    classes
}

/// Normal subgroups as sorted position lists, ordered by size.
fn normal_positions(g: &FiniteMatrixGroup, bound: usize) -> Result<Vec<Vec<usize>>, GroupError> {
    if g.order() > bound {
        return Err(GroupError::SizeBound { order: g.order(), bound });
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let trivial = close_in(g, &[]);
    seen.insert(trivial.clone());
    found.push(trivial);
    for cls in conjugacy_classes(g) {
        let n = close_in(g, &cls);
        if seen.insert(n.clone()) {
            found.push(n);
        }
    }
    // every normal subgroup is a join of normal closures of classes
    let mut start = 0;
    loop {
        let len = found.len();
        let mut fresh = Vec::new();
        for i in 0..len {
            for j in start.max(i + 1)..len {
                let mut gens = found[i].clone();
                gens.extend_from_slice(&found[j]);
                let n = close_in(g, &gens);
                if seen.insert(n.clone()) {
                    fresh.push(n);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        start = len;
        found.extend(fresh);
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    Ok(found)
}

fn subgroup_from_positions(g: &FiniteMatrixGroup, pos: &[usize]) -> FiniteMatrixGroup {
    let el = g.elements();
    FiniteMatrixGroup::from_elements(g.modulus(), pos.iter().map(|&i| el[i]).collect())
}

/// All normal subgroups of `g`, sorted by order.
pub fn normal_subgroups(g: &FiniteMatrixGroup) -> Result<Vec<FiniteMatrixGroup>, GroupError> {
    normal_subgroups_bounded(g, DEFAULT_BOUND)
}

pub fn normal_subgroups_bounded(g: &FiniteMatrixGroup, bound: usize) -> Result<Vec<FiniteMatrixGroup>, GroupError> {
    Ok(normal_positions(g, bound)?.iter().map(|p| subgroup_from_positions(g, p)).collect())
}

pub fn is_normal(n: &FiniteMatrixGroup, g: &FiniteMatrixGroup) -> bool {
    n.is_subgroup_of(g)
        && g.generators().iter().all(|s| {
            let si = s.inverse().unwrap();
            n.generators().iter().all(|x| n.contains(&s.mul(x).mul(&si)))
        })
}

/// `G / N` with coset labels for every element of `G`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub table: Table,
    /// Coset label of each element of `G` (indexed by position).
    pub labels: Vec<u32>,
    /// A representative in `G` for each coset label.
    pub reps: Vec<Mat2>,
}

impl Quotient {
    pub fn new(g: &FiniteMatrixGroup, n: &FiniteMatrixGroup) -> Result<Self, GroupError> {
        if !is_normal(n, g) {
            return Err(GroupError::NotNormal);
        }
        let el = g.elements();
        let mut labels = vec![UNSET; el.len()];
        let mut reps = Vec::new();
        for i in 0..el.len() {
            if labels[i] != UNSET {
                continue;
            }
            let k = reps.len() as u32;
            reps.push(el[i]);
            for x in n.elements() {
                labels[g.position(&el[i].mul(x)).unwrap()] = k;
            }
        }
        let q = reps.len();
        let mut mul = vec![0u32; q * q];
        for a in 0..q {
            for b in 0..q {
                mul[a * q + b] = labels[g.position(&reps[a].mul(&reps[b])).unwrap()];
            }
        }
        let identity = labels[g.position(&Mat2::identity(g.modulus())).unwrap()];
        Ok(Quotient { table: Table { order: q, mul, identity }, labels, reps })
    }

    pub fn label_of(&self, g: &FiniteMatrixGroup, m: &Mat2) -> Option<u32> {
        g.position(m).map(|i| self.labels[i])
    }
}

/// A pair `N0 < G0`, `N1 < G1` with an explicit isomorphism `G0/N0 -> G1/N1`.
#[derive(Clone, Debug)]
pub struct CommonQuotient {
    pub n0: FiniteMatrixGroup,
    pub n1: FiniteMatrixGroup,
    pub order: usize,
    pub q0: Quotient,
    pub q1: Quotient,
    /// Coset label in `G0/N0` -> coset label in `G1/N1`.
    pub iso: Vec<u32>,
    pub iso_count: usize,
}

impl CommonQuotient {
    /// Both projections expressed as labels of `G1/N1`.
    pub fn maps(&self) -> (Vec<u32>, Vec<u32>) {
        (self.q0.labels.iter().map(|&l| self.iso[l as usize]).collect(), self.q1.labels.clone())
    }

    /// The fiber product `{(g0, g1) : iso(g0 N0) = g1 N1}`.
    pub fn graph(&self, g0: &FiniteMatrixGroup, g1: &FiniteMatrixGroup) -> Result<FiniteMatrixGroup, GroupError> {
        let (a, b) = self.maps();
        graph_subgroup(g0, &a, g1, &b)
    }
}

const ISO_COUNT_LIMIT: usize = 100_000;

/// All pairs of normal subgroups with isomorphic nontrivial quotients.
pub fn common_quotients(g0: &FiniteMatrixGroup, g1: &FiniteMatrixGroup) -> Result<Vec<CommonQuotient>, GroupError> {
    let ns0 = normal_positions(g0, DEFAULT_BOUND)?;
    let ns1 = normal_positions(g1, DEFAULT_BOUND)?;
    let mut out = Vec::new();
    for p0 in &ns0 {
        let q = g0.order() / p0.len();
        if q == 1 {
            continue;
        }
        for p1 in &ns1 {
            if g1.order() / p1.len() != q {
                continue;
            }
            let n0 = subgroup_from_positions(g0, p0);
            let n1 = subgroup_from_positions(g1, p1);
            let q0 = Quotient::new(g0, &n0)?;
            let q1 = Quotient::new(g1, &n1)?;
            let (iso, count) = isomorphisms(&q0.table, &q1.table, ISO_COUNT_LIMIT);
            if let Some(iso) = iso {
                out.push(CommonQuotient { n0, n1, order: q, q0, q1, iso, iso_count: count });
            }
        }
    }
    Ok(out)
}

/// Fiber product of `psi0: G0 -> Q` and `psi1: G1 -> Q`, given as labels per
/// element position, embedded in GL_2(Z/n0 n1) by CRT.
pub fn graph_subgroup(
    g0: &FiniteMatrixGroup,
    psi0: &[u32],
    g1: &FiniteMatrixGroup,
    psi1: &[u32],
) -> Result<FiniteMatrixGroup, GroupError> {
    let (n0, n1) = (g0.modulus(), g1.modulus());
    if gcd(n0, n1) != 1 {
        return Err(GroupError::NotCoprime(n0, n1));
    }
    if psi0.len() != g0.order() || psi1.len() != g1.order() {
        return Err(GroupError::NotSurjective);
    }
    let mut im0: Vec<u32> = psi0.to_vec();
    im0.sort();
    im0.dedup();
    let mut im1: Vec<u32> = psi1.to_vec();
    im1.sort();
    im1.dedup();
    if im0 != im1 {
        return Err(GroupError::NotSurjective);
    }
    let mut elems = Vec::new();
    for (x, lx) in g0.elements().iter().zip(psi0) {
        for (y, ly) in g1.elements().iter().zip(psi1) {
            if lx == ly {
                elems.push(Mat2::crt(x, y));
            }
        }
    }
    let g = FiniteMatrixGroup::from_elements(n0 * n1, elems);
    if !g.is_closed() {
        return Err(GroupError::NotHomomorphism);
    }
    Ok(g)
}

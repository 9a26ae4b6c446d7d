use std::collections::VecDeque;

use super::mat::{gcd, Mat2};
use super::GroupError;

/// Subgroup of GL_2(Z/n) with its full, sorted element list.
#[derive(Clone)]
pub struct FiniteMatrixGroup {
    n: u32,
    gens: Vec<Mat2>,
    elems: Vec<Mat2>,
    // code -> position in `elems`, u32::MAX when absent
    index: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl FiniteMatrixGroup {
    fn from_parts(n: u32, gens: Vec<Mat2>, mut elems: Vec<Mat2>) -> Self {
        elems.sort();
        elems.dedup();
        let size = (n as usize).pow(4);
        let mut index = vec![ABSENT; size];
        for (i, m) in elems.iter().enumerate() {
            index[m.code()] = i as u32;
        }
        FiniteMatrixGroup { n, gens, elems, index }
    }

    /// Breadth-first closure of `gens` under multiplication.
    pub fn closure(gens: &[Mat2], n: u32) -> Result<Self, GroupError> {
        assert!((1..=32).contains(&n), "modulus out of range");
        for g in gens {
            if g.n != n {
                return Err(GroupError::ModulusMismatch { expected: n, found: g.n });
            }
            if !g.is_invertible() {
                return Err(GroupError::NotInvertible(*g));
            }
        }
        let size = (n as usize).pow(4);
        let mut seen = vec![false; size];
        let id = Mat2::identity(n);
        seen[id.code()] = true;
        let mut elems = vec![id];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.mul(g);
                if !seen[y.code()] {
                    seen[y.code()] = true;
                    elems.push(y);
                    queue.push_back(y);
                }
            }
        }
        Ok(Self::from_parts(n, gens.to_vec(), elems))
    }

    /// Group given by a predicate on GL_2(Z/n); generators are chosen greedily.
    pub fn from_predicate(n: u32, pred: impl Fn(&Mat2) -> bool) -> Self {
        let mut elems = Vec::new();
        let n64 = n as i64;
        for a in 0..n64 {
            for b in 0..n64 {
                for c in 0..n64 {
                    for d in 0..n64 {
                        let m = Mat2::new(n, a, b, c, d);
                        if m.is_invertible() && pred(&m) {
                            elems.push(m);
                        }
                    }
                }
            }
        }
        let mut g = Self::from_parts(n, Vec::new(), elems);
        g.gens = g.greedy_generators();
        g
    }

    /// Group with a known element set; callers check `is_closed` when the
    /// set is not known to be a group.
    pub(crate) fn from_elements(n: u32, elems: Vec<Mat2>) -> Self {
        let mut g = Self::from_parts(n, Vec::new(), elems);
        g.gens = g.greedy_generators();
        g
    }

    pub fn trivial(n: u32) -> Self {
        Self::closure(&[], n).unwrap()
    }

    pub fn gl2(n: u32) -> Self {
        Self::from_predicate(n, |_| true)
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn generators(&self) -> &[Mat2] {
        &self.gens
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elems
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        m.n == self.n && self.index[m.code()] != ABSENT
    }

    pub fn position(&self, m: &Mat2) -> Option<usize> {
        if m.n != self.n {
            return None;
        }
        let i = self.index[m.code()];
        (i != ABSENT).then_some(i as usize)
    }

    pub fn contains_minus_identity(&self) -> bool {
        self.contains(&Mat2::scalar(self.n, -1))
    }

    pub fn is_subgroup_of(&self, o: &FiniteMatrixGroup) -> bool {
        self.n == o.n && self.elems.iter().all(|m| o.contains(m))
    }

    pub fn same_elements(&self, o: &FiniteMatrixGroup) -> bool {
        self.n == o.n && self.elems == o.elems
    }

    /// `<G, -I>`.
    pub fn plus_minus(&self) -> FiniteMatrixGroup {
        let mut gens = self.gens.clone();
        gens.push(Mat2::scalar(self.n, -1));
        Self::closure(&gens, self.n).unwrap()
    }

    /// Set of determinants, sorted.
    pub fn determinants(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.elems.iter().map(|m| m.det()).collect();
        d.sort();
        d.dedup();
        d
    }

    pub fn has_surjective_det(&self) -> bool {
        let units = (1..self.n.max(2)).filter(|&u| gcd(u, self.n) == 1).count().max(1);
        self.determinants().len() == units
    }

    pub fn element_order(&self, m: &Mat2) -> usize {
        let id = Mat2::identity(self.n);
        let mut x = *m;
        let mut k = 1;
        while x != id {
            x = x.mul(m);
            k += 1;
        }
        k
    }

    pub fn is_closed(&self) -> bool {
        self.elems.iter().all(|x| self.gens.iter().all(|g| self.contains(&x.mul(g)))) && self.contains(&Mat2::identity(self.n))
    }

    /// Image under reduction to a divisor `m` of the modulus.
    pub fn reduce(&self, m: u32) -> FiniteMatrixGroup {
        let elems = self.elems.iter().map(|x| x.reduce(m)).collect();
        Self::from_elements(m, elems)
    }

    /// A generating set: keep an element when it is outside the span so far.
    pub(crate) fn greedy_generators(&self) -> Vec<Mat2> {
        let size = (self.n as usize).pow(4);
        let mut inside = vec![false; size];
        let id = Mat2::identity(self.n);
        inside[id.code()] = true;
        let mut span = vec![id];
        let mut gens: Vec<Mat2> = Vec::new();
        // larger-order elements first keeps the list short
        let mut cand: Vec<(usize, Mat2)> = self.elems.iter().map(|m| (self.element_order(m), *m)).collect();
        cand.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, m) in cand {
            if span.len() == self.elems.len() {
                break;
            }
            if inside[m.code()] {
                continue;
            }
            gens.push(m);
            // re-close
            let mut queue: VecDeque<Mat2> = span.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                for g in &gens {
                    let y = x.mul(g);
                    if !inside[y.code()] {
                        inside[y.code()] = true;
                        span.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        gens
    }
}

impl std::fmt::Debug for FiniteMatrixGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteMatrixGroup(n={}, order={}, gens={:?})", self.n, self.order(), self.gens)
    }
}

impl PartialEq for FiniteMatrixGroup {
    fn eq(&self, o: &Self) -> bool {
        self.same_elements(o)
    }
}

impl Eq for FiniteMatrixGroup {}

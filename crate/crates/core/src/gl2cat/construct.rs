use super::group::FiniteMatrixGroup;
use super::mat::Mat2;
use super::GroupError;
use crate::exact::{is_prime, legendre};

fn need_prime(l: u32) -> Result<(), GroupError> {
    if is_prime(l as u64) {
        Ok(())
    } else {
        Err(GroupError::NotPrime(l))
    }
}

/// Non-residue used for the non-split Cartan: -1 when l = 3 mod 4, else the
/// least quadratic non-residue.
pub fn nsp_epsilon(l: u32) -> Result<u32, GroupError> {
    if l == 2 || !is_prime(l as u64) {
        return Err(GroupError::NotPrime(l));
    }
    if l % 4 == 3 {
        return Ok(l - 1);
    }
    Ok((2..l).find(|&e| legendre(e as u64, l as u64) == -1).unwrap())
}

/// Upper triangular matrices (Borel).
pub fn borel(n: u32) -> FiniteMatrixGroup {
    FiniteMatrixGroup::from_predicate(n, |m| m.e[2] == 0)
}

pub fn split_cartan(l: u32) -> Result<FiniteMatrixGroup, GroupError> {
    need_prime(l)?;
    Ok(FiniteMatrixGroup::from_predicate(l, |m| m.e[1] == 0 && m.e[2] == 0))
}

pub fn split_cartan_normalizer(l: u32) -> Result<FiniteMatrixGroup, GroupError> {
    need_prime(l)?;
    Ok(FiniteMatrixGroup::from_predicate(l, |m| (m.e[1] == 0 && m.e[2] == 0) || (m.e[0] == 0 && m.e[3] == 0)))
}

/// Matrices `(a b*eps; b a)`.
pub fn nonsplit_cartan(l: u32) -> Result<FiniteMatrixGroup, GroupError> {
    let eps = nsp_epsilon(l)? as u64;
    let l64 = l as u64;
    Ok(FiniteMatrixGroup::from_predicate(l, |m| m.e[0] == m.e[3] && m.e[1] as u64 == (m.e[2] as u64 * eps) % l64))
}

/// `C_nsp` together with `(1 0; 0 -1) C_nsp`.
pub fn nonsplit_cartan_normalizer(l: u32) -> Result<FiniteMatrixGroup, GroupError> {
    let c = nonsplit_cartan(l)?;
    let mut gens = c.generators().to_vec();
    gens.push(Mat2::new(l, 1, 0, 0, -1));
    FiniteMatrixGroup::closure(&gens, l)
}

pub fn scalars(n: u32) -> FiniteMatrixGroup {
    FiniteMatrixGroup::from_predicate(n, |m| m.e[1] == 0 && m.e[2] == 0 && m.e[0] == m.e[3])
}

/// |GL_2(Z/n)| via the product over prime powers.
pub fn gl2_order(n: u32) -> u64 {
    let mut n = n as u64;
    let mut out = 1u64;
    let mut p = 2u64;
    while n > 1 {
        if n.is_multiple_of(p) {
            let mut q = 1u64;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            // |GL_2(Z/p^k)| = p^{4(k-1)} (p^2-1)(p^2-p)
            out *= (q / p).pow(4) * (p * p - 1) * (p * p - p);
        }
        p += 1;
    }
    out
}

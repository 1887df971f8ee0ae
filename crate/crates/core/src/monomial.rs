use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Dense exponent vector. The derived `Ord` is lex with variable 0 highest,
/// which is the native term order of [`crate::Polynomial`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u16; 20]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[idx] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    /// Product of the listed variables (with multiplicity).
    pub fn from_vars(nvars: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let mut m = Self::one(nvars);
        for v in vars {
            m.0[v] += 1;
        }
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Indices of variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<SmallVec<_>>>()
            .map(Monomial)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Reindex variables: exponent of old variable `v` moves to `perm[v]`.
    pub(crate) fn permute(&self, perm: &[usize]) -> Monomial {
        let mut out = SmallVec::from_elem(0, self.0.len());
        for (v, &e) in self.0.iter().enumerate() {
            out[perm[v]] = e;
        }
        Monomial(out)
    }

    /// Prepend `k` zero exponents.
    pub(crate) fn extend_front(&self, k: usize) -> Monomial {
        let mut out: SmallVec<[u16; 20]> = SmallVec::from_elem(0, k);
        out.extend_from_slice(&self.0);
        Monomial(out)
    }

    /// Drop the first `k` exponents, which must be zero.
    pub(crate) fn strip_front(&self, k: usize) -> Option<Monomial> {
        self.0[..k]
            .iter()
            .all(|&e| e == 0)
            .then(|| Monomial(SmallVec::from_slice(&self.0[k..])))
    }
}

/// Lex order along an explicit variable priority list, highest first.
///
/// The first `elim_block_size` variables of the priority list form an
/// elimination block: lex eliminates any prefix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    priority: Vec<usize>,
    elim_block_size: usize,
}

impl MonomialOrder {
    /// Lex with variable 0 highest: `x_1 > ... > x_n > y_1 > ... > y_n`
    /// (auxiliaries above all of them).
    pub fn lex(nvars: usize) -> Self {
        MonomialOrder { priority: (0..nvars).collect(), elim_block_size: 0 }
    }

    pub fn with_priority(priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &v in &priority {
            if v >= priority.len() || seen[v] {
                return Err(Error::InvalidInput(format!(
                    "priority list {priority:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        Ok(MonomialOrder { priority, elim_block_size: 0 })
    }

    pub fn with_elimination_block(mut self, k: usize) -> Self {
        self.elim_block_size = k.min(self.priority.len());
        self
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn elim_block_size(&self) -> usize {
        self.elim_block_size
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn is_native(&self) -> bool {
        self.priority.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `perm[v]` = rank of variable `v` in the priority list.
    pub(crate) fn ranks(&self) -> Vec<usize> {
        let mut perm = vec![0; self.priority.len()];
        for (rank, &v) in self.priority.iter().enumerate() {
            perm[v] = rank;
        }
        perm
    }

    pub fn compare(&self, u: &Monomial, v: &Monomial) -> Ordering {
        assert_eq!(u.nvars(), v.nvars(), "monomials of different lengths");
        for &var in &self.priority {
            match u.0[var].cmp(&v.0[var]) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }
}

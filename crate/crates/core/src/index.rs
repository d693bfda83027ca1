//! Multi-indices `n = (n_1, ..., n_r)` and the index sets the identity sweeps
//! walk over.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{binomial, factorial};

/// An r-tuple of nonnegative integers.
///
/// Ordering is graded: first by total degree `|n|`, then lexicographically.
/// Maps keyed by `MultiIndex` therefore iterate degree by degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(components: Vec<usize>) -> Self {
        MultiIndex(components)
    }

    pub fn zeros(arity: usize) -> Self {
        MultiIndex(vec![0; arity])
    }

    pub fn ones(arity: usize) -> Self {
        MultiIndex(vec![1; arity])
    }

    /// The unit multi-index `e_j` (zero-based `j`).
    pub fn unit(arity: usize, j: usize) -> Self {
        let mut v = vec![0; arity];
        v[j] = 1;
        MultiIndex(v)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, j: usize) -> usize {
        self.0[j]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `n + e_j`.
    pub fn plus_unit(&self, j: usize) -> Self {
        let mut v = self.0.clone();
        v[j] += 1;
        MultiIndex(v)
    }

    /// `n - e_j`, or an error when `n_j = 0`.
    pub fn minus_unit(&self, j: usize) -> Result<Self> {
        self.checked_minus_unit(j)
            .ok_or_else(|| Error::NegativeIndex {
                index: self.clone(),
                component: j,
            })
    }

    pub fn checked_minus_unit(&self, j: usize) -> Option<Self> {
        let mut v = self.0.clone();
        v[j] = v[j].checked_sub(1)?;
        Some(MultiIndex(v))
    }

    /// Componentwise `self - other`, `None` if any component would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<Self> {
        debug_assert_eq!(self.arity(), other.arity());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn add(&self, other: &MultiIndex) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `n_1! n_2! ... n_r!`
    pub fn factorial(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, &c| acc * factorial(c))
    }

    /// `C(n_1, k_1) ... C(n_r, k_r)`
    pub fn binomial(&self, k: &MultiIndex) -> BigInt {
        self.0
            .iter()
            .zip(&k.0)
            .fold(BigInt::one(), |acc, (&n, &k)| acc * binomial(n, k))
    }

    /// All `k` with `0 <= k <= self` componentwise, in graded order.
    pub fn lower_box(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zeros(self.arity())];
        for (j, &bound) in self.0.iter().enumerate() {
            out = out
                .into_iter()
                .flat_map(|base| {
                    (0..=bound).map(move |c| {
                        let mut v = base.0.clone();
                        v[j] = c;
                        MultiIndex(v)
                    })
                })
                .collect();
        }
        out.sort();
        out
    }

    /// All multi-indices of the given arity with `|k| <= max_total`, graded order.
    pub fn simplex(arity: usize, max_total: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for total in 0..=max_total {
            out.extend(Self::with_total(arity, total));
        }
        out
    }

    /// All multi-indices of the given arity with `|k| = total`, lexicographic.
    pub fn with_total(arity: usize, total: usize) -> Vec<MultiIndex> {
        fn rec(arity: usize, remaining: usize, prefix: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == arity {
                prefix.push(remaining);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for c in 0..=remaining {
                prefix.push(c);
                rec(arity, remaining - c, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if arity == 0 {
            if total == 0 {
                out.push(MultiIndex(Vec::new()));
            }
            return out;
        }
        rec(arity, total, &mut Vec::with_capacity(arity), &mut out);
        out
    }

    /// Parses `"1,0"` (commas) into a multi-index.
    pub fn parse(text: &str) -> Result<Self> {
        text.split(',')
            .map(|c| {
                c.trim().parse::<usize>().map_err(|_| {
                    Error::Parse(format!("bad multi-index component {c:?} in {text:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[usize; N]> for MultiIndex {
    fn from(v: [usize; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

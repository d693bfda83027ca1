//! Finite tables `n -> P_n(x)` over the simplex `|n| <= order`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::poly::{FFPoly, Step};

/// A polynomial family materialized on every index with `|n| <= order`.
///
/// All members share one step. Lookups beyond the order are refused rather
/// than zero-filled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    step: Step,
    arity: usize,
    order: usize,
    members: BTreeMap<MultiIndex, FFPoly>,
}

impl Family {
    /// Validates that `members` covers exactly the simplex `|n| <= order`.
    pub fn new(
        step: Step,
        arity: usize,
        order: usize,
        members: BTreeMap<MultiIndex, FFPoly>,
    ) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: 0,
            });
        }
        for (n, p) in &members {
            if n.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: n.arity(),
                });
            }
            if n.total() > order {
                return Err(Error::OutOfOrder {
                    index: n.clone(),
                    order,
                });
            }
            if p.step() != &step {
                return Err(Error::BasisMismatch {
                    left: Box::new(step.value().clone()),
                    right: Box::new(p.omega().clone()),
                });
            }
        }
        for n in MultiIndex::simplex(arity, order) {
            if !members.contains_key(&n) {
                return Err(Error::MissingMember(n));
            }
        }
        Ok(Family {
            step,
            arity,
            order,
            members,
        })
    }

    pub fn from_fn<F>(step: &Step, arity: usize, order: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&MultiIndex) -> Result<FFPoly>,
    {
        let members = MultiIndex::simplex(arity, order)
            .into_iter()
            .map(|n| f(&n).map(|p| (n, p)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Family::new(step.clone(), arity, order, members)
    }

    /// `{x^(|n|,w)}`, the simplest Appell family.
    pub fn falling_factorials(step: &Step, arity: usize, order: usize) -> Self {
        Family::from_fn(step, arity, order, |n| Ok(FFPoly::basis(n.total(), step)))
            .expect("simplex is covered")
    }

    pub fn step(&self) -> &Step {
        &self.step
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> impl Iterator<Item = (&MultiIndex, &FFPoly)> {
        self.members.iter()
    }

    pub fn get(&self, n: &MultiIndex) -> Result<&FFPoly> {
        if n.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: n.arity(),
            });
        }
        self.members.get(n).ok_or_else(|| Error::OutOfOrder {
            index: n.clone(),
            order: self.order,
        })
    }

    /// `P_{n - e_j}`, or the zero polynomial when `n_j = 0`.
    pub fn below(&self, n: &MultiIndex, j: usize) -> Result<FFPoly> {
        match n.checked_minus_unit(j) {
            Some(m) => self.get(&m).cloned(),
            None => Ok(FFPoly::zero(&self.step)),
        }
    }

    /// Copy with one member replaced.
    pub fn with_member(&self, n: &MultiIndex, p: FFPoly) -> Result<Family> {
        self.get(n)?;
        if p.step() != &self.step {
            return Err(Error::BasisMismatch {
                left: Box::new(self.step.value().clone()),
                right: Box::new(p.omega().clone()),
            });
        }
        let mut out = self.clone();
        out.members.insert(n.clone(), p);
        Ok(out)
    }

    pub fn truncate(&self, order: usize) -> Family {
        let order = order.min(self.order);
        Family {
            step: self.step.clone(),
            arity: self.arity,
            order,
            members: self
                .members
                .iter()
                .filter(|(n, _)| n.total() <= order)
                .map(|(n, p)| (n.clone(), p.clone()))
                .collect(),
        }
    }

    pub fn into_members(self) -> BTreeMap<MultiIndex, FFPoly> {
        self.members
    }
}

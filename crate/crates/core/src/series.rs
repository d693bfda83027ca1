//! Truncated power series in `r` formal variables `t_1..t_r` whose
//! coefficients are [`FFPoly`] values.
//!
//! Truncation is by total degree: a series of order `N` holds the
//! coefficients of `t^k` for `|k| <= N` and nothing else. Stored
//! coefficients are ordinary power-series coefficients; the `t^n / n!`
//! normalization of exponential generating functions is applied by
//! [`MultiSeries::from_seed`] and undone by [`MultiSeries::extract`].

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::poly::{FFPoly, Step};
use crate::rational::{from_bigint, int, pow, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSeries {
    step: Step,
    arity: usize,
    order: usize,
    terms: BTreeMap<MultiIndex, FFPoly>,
}

impl MultiSeries {
    pub fn zero(step: &Step, arity: usize, order: usize) -> Self {
        MultiSeries {
            step: step.clone(),
            arity,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(step: &Step, arity: usize, order: usize) -> Self {
        let mut s = Self::zero(step, arity, order);
        s.set(MultiIndex::zeros(arity), FFPoly::one(step));
        s
    }

    /// `c_0 + c_1 t_1 + ... + c_r t_r` with constant coefficients.
    pub fn linear(step: &Step, order: usize, constant: Rational, slopes: &[Rational]) -> Self {
        let arity = slopes.len();
        let mut s = Self::zero(step, arity, order);
        s.set(MultiIndex::zeros(arity), FFPoly::constant(constant, step));
        if order >= 1 {
            for (j, c) in slopes.iter().enumerate() {
                s.set(
                    MultiIndex::unit(arity, j),
                    FFPoly::constant(c.clone(), step),
                );
            }
        }
        s
    }

    /// `exp(c_1 t_1 + ... + c_r t_r)` truncated at total degree `order`;
    /// the coefficient of `t^k` is `prod_i c_i^{k_i} / k_i!`.
    pub fn exp_linear(c: &[Rational], order: usize, step: &Step) -> Self {
        let arity = c.len();
        let mut s = Self::zero(step, arity, order);
        for k in MultiIndex::simplex(arity, order) {
            let num = k
                .components()
                .iter()
                .zip(c)
                .fold(Rational::one(), |acc, (&e, ci)| acc * pow(ci, e));
            let coeff = num / from_bigint(k.factorial());
            s.set(k, FFPoly::constant(coeff, step));
        }
        s
    }

    /// `(1 + w (t_1 + ... + t_r))^{x/w}`: the coefficient of `t^k` is
    /// `x^(|k|,w) / (k_1! ... k_r!)`.
    pub fn newton_binomial(omega: &Rational, order: usize, arity: usize) -> Result<Self> {
        let step = Step::new(omega.clone())?;
        Ok(Self::newton_binomial_in(&step, order, arity))
    }

    pub fn newton_binomial_in(step: &Step, order: usize, arity: usize) -> Self {
        let mut s = Self::zero(step, arity, order);
        for k in MultiIndex::simplex(arity, order) {
            let inv = Rational::one() / from_bigint(k.factorial());
            s.set(k.clone(), FFPoly::basis(k.total(), step).scale(&inv));
        }
        s
    }

    /// `A(t) = sum_n seed(n) t^n / n!`, requiring `seed(0) != 0`.
    pub fn from_seed<F>(seed: F, step: &Step, order: usize, arity: usize) -> Result<Self>
    where
        F: Fn(&MultiIndex) -> Rational,
    {
        if seed(&MultiIndex::zeros(arity)).is_zero() {
            return Err(Error::DegenerateSeed);
        }
        let mut s = Self::zero(step, arity, order);
        for k in MultiIndex::simplex(arity, order) {
            let c = seed(&k) / from_bigint(k.factorial());
            s.set(k, FFPoly::constant(c, step));
        }
        Ok(s)
    }

    /// Re-assembles `sum_n P_n(x) t^n / n!` from family members; indices not
    /// present in `family` are zero.
    pub fn from_family(
        family: &BTreeMap<MultiIndex, FFPoly>,
        step: &Step,
        arity: usize,
        order: usize,
    ) -> Result<Self> {
        let mut s = Self::zero(step, arity, order);
        for (n, p) in family {
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
            if p.step() != step {
                return Err(Error::BasisMismatch {
                    left: Box::new(step.value().clone()),
                    right: Box::new(p.omega().clone()),
                });
            }
            let inv = Rational::one() / from_bigint(n.factorial());
            s.set(n.clone(), p.scale(&inv));
        }
        Ok(s)
    }

    fn set(&mut self, k: MultiIndex, p: FFPoly) {
        debug_assert!(k.total() <= self.order);
        if p.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, p);
        }
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

    /// Nonzero terms in graded index order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &FFPoly)> {
        self.terms.iter()
    }

    fn check_index(&self, k: &MultiIndex) -> Result<()> {
        if k.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: k.arity(),
            });
        }
        if k.total() > self.order {
            return Err(Error::OutOfOrder {
                index: k.clone(),
                order: self.order,
            });
        }
        Ok(())
    }

    /// Coefficient of `t^k`.
    pub fn coefficient(&self, k: &MultiIndex) -> Result<FFPoly> {
        self.check_index(k)?;
        Ok(self
            .terms
            .get(k)
            .cloned()
            .unwrap_or_else(|| FFPoly::zero(&self.step)))
    }

    /// `P_n = n_1! ... n_r! * [t^n] s`.
    pub fn extract(&self, n: &MultiIndex) -> Result<FFPoly> {
        Ok(self.coefficient(n)?.scale(&from_bigint(n.factorial())))
    }

    /// Every `P_n` with `|n| <= order`, including zero members.
    pub fn extract_family(&self) -> BTreeMap<MultiIndex, FFPoly> {
        MultiIndex::simplex(self.arity, self.order)
            .into_iter()
            .map(|n| {
                let p = self.extract(&n).expect("index within order");
                (n, p)
            })
            .collect()
    }

    fn compatible(&self, other: &MultiSeries) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        if self.step != other.step {
            return Err(Error::BasisMismatch {
                left: Box::new(self.step.value().clone()),
                right: Box::new(other.step.value().clone()),
            });
        }
        Ok(())
    }

    /// Truncated Cauchy product; the result has the smaller of the two orders.
    pub fn multiply(&self, other: &MultiSeries) -> Result<MultiSeries> {
        self.compatible(other)?;
        let order = self.order.min(other.order);
        let mut acc: BTreeMap<MultiIndex, FFPoly> = BTreeMap::new();
        for (i, p) in &self.terms {
            if i.total() > order {
                continue;
            }
            for (j, q) in &other.terms {
                if i.total() + j.total() > order {
                    continue;
                }
                let prod = p.mul(q)?;
                acc.entry(i.add(j))
                    .and_modify(|e| e.add_scaled_assign(&prod, &Rational::one()))
                    .or_insert(prod);
            }
        }
        let mut out = Self::zero(&self.step, self.arity, order);
        for (k, p) in acc {
            out.set(k, p);
        }
        Ok(out)
    }

    fn combine(&self, other: &MultiSeries, sign: &Rational) -> Result<MultiSeries> {
        self.compatible(other)?;
        let order = self.order.min(other.order);
        let mut out = self.truncate(order);
        for (k, q) in other.terms.iter().filter(|(k, _)| k.total() <= order) {
            let mut p = out
                .terms
                .remove(k)
                .unwrap_or_else(|| FFPoly::zero(&self.step));
            p.add_scaled_assign(q, sign);
            out.set(k.clone(), p);
        }
        Ok(out)
    }

    pub fn add(&self, other: &MultiSeries) -> Result<MultiSeries> {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &MultiSeries) -> Result<MultiSeries> {
        self.combine(other, &-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> MultiSeries {
        let mut out = Self::zero(&self.step, self.arity, self.order);
        for (k, p) in &self.terms {
            out.set(k.clone(), p.scale(c));
        }
        out
    }

    /// Multiplies every coefficient by the polynomial `p(x)`.
    pub fn mul_coefficients(&self, p: &FFPoly) -> Result<MultiSeries> {
        let mut out = Self::zero(&self.step, self.arity, self.order);
        for (k, q) in &self.terms {
            out.set(k.clone(), q.mul(p)?);
        }
        Ok(out)
    }

    pub fn truncate(&self, order: usize) -> MultiSeries {
        let order = order.min(self.order);
        let mut out = Self::zero(&self.step, self.arity, order);
        for (k, p) in self.terms.iter().filter(|(k, _)| k.total() <= order) {
            out.set(k.clone(), p.clone());
        }
        out
    }

    /// Formal partial derivative in `t_j` (zero-based). Exact up to order
    /// `N - 1`, which becomes the order of the result.
    pub fn derivative(&self, j: usize) -> Result<MultiSeries> {
        if j >= self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: j + 1,
            });
        }
        if self.order == 0 {
            return Err(Error::OutOfOrder {
                index: MultiIndex::unit(self.arity, j),
                order: 0,
            });
        }
        let mut out = Self::zero(&self.step, self.arity, self.order - 1);
        for (k, p) in &self.terms {
            if let Some(lower) = k.checked_minus_unit(j) {
                out.set(lower, p.scale(&int(k.get(j) as i64)));
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

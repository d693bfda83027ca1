//! Polynomials in the generalized falling-factorial basis
//! `x^(k,w) = x (x - w) (x - 2w) ... (x - (k-1)w)`.
//!
//! The basis is the canonical storage form because the forward difference
//! `D_w f(x) = (f(x + w) - f(x)) / w` acts on it as a shift:
//! `D_w x^(n,w) = n x^(n-1,w)`. The monomial form is a view produced by
//! [`FFPoly::to_monomial`].

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, falling_factorial, from_bigint, int, pow, Rational};

/// Default bound on polynomial degree accepted at user-facing entry points.
pub const DEFAULT_DEGREE_CAP: usize = 64;

/// The nonzero step `w` of a falling-factorial basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step(Rational);

impl Step {
    pub fn new(omega: Rational) -> Result<Self> {
        if omega.is_zero() {
            return Err(Error::InvalidStep);
        }
        Ok(Step(omega))
    }

    pub fn one() -> Self {
        Step(Rational::one())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `sum_k c_k x^(k,w)` with exact rational coefficients.
///
/// Trailing zero coefficients are never stored; the zero polynomial has an
/// empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FFPoly {
    step: Step,
    coeffs: Vec<Rational>,
}

/// Basis element `x^(n,w)` for a raw rational step.
pub fn ff_basis(n: usize, omega: &Rational) -> Result<FFPoly> {
    Ok(FFPoly::basis(n, &Step::new(omega.clone())?))
}

impl FFPoly {
    pub fn zero(step: &Step) -> Self {
        FFPoly {
            step: step.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(step: &Step) -> Self {
        Self::constant(Rational::one(), step)
    }

    pub fn constant(c: Rational, step: &Step) -> Self {
        Self::from_coeffs(vec![c], step)
    }

    pub fn basis(n: usize, step: &Step) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        FFPoly {
            step: step.clone(),
            coeffs,
        }
    }

    /// The indeterminate `x = x^(1,w)`.
    pub fn x(step: &Step) -> Self {
        Self::basis(1, step)
    }

    pub fn from_coeffs(coeffs: Vec<Rational>, step: &Step) -> Self {
        let mut p = FFPoly {
            step: step.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn step(&self) -> &Step {
        &self.step
    }

    pub fn omega(&self) -> &Rational {
        self.step.value()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^(k,w)`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    fn same_basis(&self, other: &FFPoly) -> Result<()> {
        if self.step != other.step {
            return Err(Error::BasisMismatch {
                left: Box::new(self.omega().clone()),
                right: Box::new(other.omega().clone()),
            });
        }
        Ok(())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut basis = Rational::one();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * &basis;
            }
            basis *= x - self.omega() * int(k as i64);
        }
        acc
    }

    pub fn add(&self, other: &FFPoly) -> Result<FFPoly> {
        self.same_basis(other)?;
        let mut out = self.clone();
        out.add_scaled_assign(other, &Rational::one());
        Ok(out)
    }

    pub fn sub(&self, other: &FFPoly) -> Result<FFPoly> {
        self.same_basis(other)?;
        let mut out = self.clone();
        out.add_scaled_assign(other, &-Rational::one());
        Ok(out)
    }

    pub fn neg(&self) -> FFPoly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> FFPoly {
        if c.is_zero() {
            return FFPoly::zero(&self.step);
        }
        FFPoly {
            step: self.step.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `self += c * other`; both operands must share a step.
    pub(crate) fn add_scaled_assign(&mut self, other: &FFPoly, c: &Rational) {
        debug_assert_eq!(self.step, other.step);
        if c.is_zero() {
            return;
        }
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
        self.trim();
    }

    /// `self += c * x^(k,w)`.
    pub(crate) fn add_basis_assign(&mut self, k: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, Rational::zero());
        }
        self.coeffs[k] += c;
        self.trim();
    }

    /// `x * p`, via `x * x^(k,w) = x^(k+1,w) + k w x^(k,w)`.
    pub fn mul_x(&self) -> FFPoly {
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k + 1] += c;
            coeffs[k] += c * self.omega() * int(k as i64);
        }
        FFPoly::from_coeffs(coeffs, &self.step)
    }

    /// Exact product using the linearization rule
    /// `x^(m,w) x^(n,w) = sum_k C(m,k) C(n,k) k! w^k x^(m+n-k,w)`.
    pub fn mul(&self, other: &FFPoly) -> Result<FFPoly> {
        self.same_basis(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(FFPoly::zero(&self.step));
        }
        let deg = self.coeffs.len() + other.coeffs.len() - 2;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        let max_k = self.coeffs.len().min(other.coeffs.len());
        // weight[k] = k! w^k
        let weight: Vec<Rational> = (0..max_k)
            .map(|k| from_bigint(factorial(k)) * pow(self.omega(), k))
            .collect();
        for (m, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (n, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, w) in weight.iter().enumerate().take(m.min(n) + 1) {
                    let c = from_bigint(binomial(m, k) * binomial(n, k)) * w;
                    coeffs[m + n - k] += &ab * c;
                }
            }
        }
        Ok(FFPoly::from_coeffs(coeffs, &self.step))
    }

    /// Forward difference `D_w`: `D_w x^(n,w) = n x^(n-1,w)`.
    pub fn delta(&self) -> FFPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * int(k as i64))
            .collect();
        FFPoly::from_coeffs(coeffs, &self.step)
    }

    /// `D_w^k p`; on basis elements `D_w^k x^(n,w) = n!/(n-k)! x^(n-k,w)`.
    pub fn delta_power(&self, k: usize) -> FFPoly {
        if k == 0 {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(k)
            .map(|(n, c)| c * from_bigint(falling_factorial(n, k)))
            .collect();
        FFPoly::from_coeffs(coeffs, &self.step)
    }

    /// Monomial coefficients `m_0..m_d` with `sum m_j x^j = sum c_k x^(k,w)`.
    pub fn to_monomial(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        // running monomial expansion of x^(k,w)
        let mut basis = vec![Rational::one()];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                for (o, b) in out.iter_mut().zip(&basis) {
                    *o += c * b;
                }
            }
            let shift = self.omega() * int(k as i64);
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (j, b) in basis.iter().enumerate() {
                next[j + 1] += b;
                next[j] -= b * &shift;
            }
            basis = next;
        }
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }

    /// Inverse of [`FFPoly::to_monomial`], by Horner's rule with `mul_x`.
    pub fn from_monomial(monomial: &[Rational], step: &Step) -> FFPoly {
        let mut p = FFPoly::zero(step);
        for m in monomial.iter().rev() {
            p = p.mul_x();
            p.add_basis_assign(0, m);
        }
        p
    }

    /// Expansion `p(x + y) = sum_k q_k(x) y^(k,w)` from the Vandermonde rule
    /// `(x + y)^(n,w) = sum_k C(n,k) x^(n-k,w) y^(k,w)`.
    pub fn shift_argument(&self) -> Bivariate {
        let mut slots = vec![FFPoly::zero(&self.step); self.coeffs.len()];
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, slot) in slots.iter_mut().enumerate().take(n + 1) {
                slot.add_basis_assign(n - k, &(c * from_bigint(binomial(n, k))));
            }
        }
        Bivariate::from_slots(slots, &self.step)
    }

    /// Text rendering in the falling-factorial basis, e.g. `x^(2,1) - 3*x^(1,1) + 2`.
    pub fn to_ff_string(&self) -> String {
        render_terms(&self.coeffs, |k| format!("x^({k},{})", self.omega()))
    }

    /// Text rendering in the monomial basis, e.g. `x^2 - 3*x + 2`.
    pub fn to_monomial_string(&self) -> String {
        render_terms(&self.to_monomial(), |k| {
            if k == 1 {
                "x".to_string()
            } else {
                format!("x^{k}")
            }
        })
    }
}

fn render_terms(coeffs: &[Rational], name: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c < &Rational::zero();
        let mag = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if k == 0 {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&name(k));
        } else {
            out.push_str(&format!("{mag}*{}", name(k)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for FFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ff_string())
    }
}

/// A polynomial in two variables stored as `sum_k q_k(x) y^(k,w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bivariate {
    step: Step,
    slots: Vec<FFPoly>,
}

impl Bivariate {
    pub fn zero(step: &Step) -> Self {
        Bivariate {
            step: step.clone(),
            slots: Vec::new(),
        }
    }

    pub fn from_slots(slots: Vec<FFPoly>, step: &Step) -> Self {
        let mut b = Bivariate {
            step: step.clone(),
            slots,
        };
        b.trim();
        b
    }

    fn trim(&mut self) {
        while self.slots.last().is_some_and(FFPoly::is_zero) {
            self.slots.pop();
        }
    }

    /// Coefficient polynomial `q_k(x)` of `y^(k,w)`.
    pub fn slot(&self, k: usize) -> FFPoly {
        self.slots
            .get(k)
            .cloned()
            .unwrap_or_else(|| FFPoly::zero(&self.step))
    }

    pub fn slots(&self) -> &[FFPoly] {
        &self.slots
    }

    pub fn is_zero(&self) -> bool {
        self.slots.is_empty()
    }

    /// `self += c * p(x) * y^(k,w)`.
    pub(crate) fn add_term_assign(&mut self, k: usize, p: &FFPoly, c: &Rational) {
        if self.slots.len() <= k {
            self.slots.resize(k + 1, FFPoly::zero(&self.step));
        }
        self.slots[k].add_scaled_assign(p, c);
        self.trim();
    }

    /// `self += c * p(x) * q(y)`.
    pub(crate) fn add_tensor_assign(&mut self, p: &FFPoly, q: &FFPoly, c: &Rational) {
        for (k, qk) in q.coeffs().iter().enumerate() {
            if !qk.is_zero() {
                self.add_term_assign(k, p, &(c * qk));
            }
        }
    }

    pub fn sub(&self, other: &Bivariate) -> Result<Bivariate> {
        if self.step != other.step {
            return Err(Error::BasisMismatch {
                left: Box::new(self.step.value().clone()),
                right: Box::new(other.step.value().clone()),
            });
        }
        let mut out = self.clone();
        for (k, q) in other.slots.iter().enumerate() {
            out.add_term_assign(k, q, &-Rational::one());
        }
        Ok(out)
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let ypoly = FFPoly::from_coeffs(self.slots.iter().map(|q| q.eval(x)).collect(), &self.step);
        ypoly.eval(y)
    }
}

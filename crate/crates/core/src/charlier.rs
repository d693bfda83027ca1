//! Multiple Charlier polynomials `C_n^(a)(x)` for `r` Poisson-type weights
//! `a_i^x / x!`, and executable forms of their identities.
//!
//! Two independent constructors are provided: the explicit double (or
//! r-fold) binomial sum and coefficient extraction from the generating
//! function `exp(-sum a_j t_j) (1 + sum t_j)^x`. Every identity check returns
//! the exact residual polynomial; an identity holds iff the residual is zero.
//!
//! Index terms that would have a negative component (for example
//! `C_{n1, n2-1}` at `n2 = 0`) are taken to be the zero polynomial.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::index::MultiIndex;
use crate::poly::{Bivariate, FFPoly, Step};
use crate::rational::{from_bigint, int, parse_rational_list, pow, Rational};
use crate::series::MultiSeries;

/// The weight parameters `a = (a_1, ..., a_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharlierParams(Vec<Rational>);

impl CharlierParams {
    pub fn new(a: Vec<Rational>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(CharlierParams(a))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_rational_list(text)?)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    /// Componentwise `self - other`.
    pub fn minus(&self, other: &CharlierParams) -> Result<CharlierParams> {
        self.check_arity(other.arity())?;
        Ok(CharlierParams(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn has_repeated(&self) -> bool {
        self.0
            .iter()
            .enumerate()
            .any(|(i, a)| self.0[i + 1..].contains(a))
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(Signed::is_positive)
    }

    fn check_arity(&self, found: usize) -> Result<()> {
        if found != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found,
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for CharlierParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An identity instance; it holds iff `residual` (left minus right) is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub residual: FFPoly,
}

impl Witness {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// `C_n^(a)(x) = sum_{k <= n} prod_i C(n_i,k_i) (-a_i)^{n_i-k_i} x^(|k|,1)`.
pub fn charlier_explicit(n: &MultiIndex, params: &CharlierParams) -> Result<FFPoly> {
    params.check_arity(n.arity())?;
    let step = Step::one();
    let mut p = FFPoly::zero(&step);
    for k in n.lower_box() {
        let weight = n
            .components()
            .iter()
            .zip(k.components())
            .zip(params.values())
            .fold(Rational::one(), |acc, ((&ni, &ki), a)| {
                acc * pow(&-a, ni - ki)
            });
        let c = from_bigint(n.binomial(&k)) * weight;
        p.add_basis_assign(k.total(), &c);
    }
    Ok(p)
}

/// `C_n` with a zero polynomial for indices that would go negative.
fn charlier_or_zero(n: Option<MultiIndex>, params: &CharlierParams) -> Result<FFPoly> {
    match n {
        Some(n) => charlier_explicit(&n, params),
        None => Ok(FFPoly::zero(&Step::one())),
    }
}

/// `exp(-sum a_j t_j) (1 + sum t_j)^x` truncated at total degree `order`.
pub fn charlier_series(params: &CharlierParams, order: usize) -> MultiSeries {
    let step = Step::one();
    let neg: Vec<Rational> = params.values().iter().map(|a| -a).collect();
    MultiSeries::exp_linear(&neg, order, &step)
        .multiply(&MultiSeries::newton_binomial_in(
            &step,
            order,
            params.arity(),
        ))
        .expect("same arity and step")
}

/// `C_n` read off the truncated generating function.
pub fn charlier_genfunc(n: &MultiIndex, params: &CharlierParams, order: usize) -> Result<FFPoly> {
    params.check_arity(n.arity())?;
    if n.total() > order {
        return Err(Error::OutOfOrder {
            index: n.clone(),
            order,
        });
    }
    charlier_series(params, order).extract(n)
}

/// The explicit family on `|n| <= order`.
pub fn charlier_family(params: &CharlierParams, order: usize) -> Family {
    Family::from_fn(&Step::one(), params.arity(), order, |n| {
        charlier_explicit(n, params)
    })
    .expect("explicit constructor covers the simplex")
}

/// `D C_n - sum_i n_i C_{n-e_i}`.
pub fn verify_difference_rule(n: &MultiIndex, params: &CharlierParams) -> Result<Witness> {
    let mut residual = charlier_explicit(n, params)?.delta();
    for i in 0..n.arity() {
        if let Some(m) = n.checked_minus_unit(i) {
            residual.add_scaled_assign(&charlier_explicit(&m, params)?, &-int(n.get(i) as i64));
        }
    }
    Ok(Witness { residual })
}

/// `sum_{k <= n} prod_i C(n_i,k_i) a_i^{n_i-k_i} C_k - x^(|n|,1)`.
///
/// The right-hand family is `C_k^(a)`, with the parameter vector held fixed
/// and the index `k` running over the box below `n`.
pub fn inversion_formula(n: &MultiIndex, params: &CharlierParams) -> Result<Witness> {
    params.check_arity(n.arity())?;
    let mut residual = FFPoly::zero(&Step::one());
    for k in n.lower_box() {
        let weight = n
            .components()
            .iter()
            .zip(k.components())
            .zip(params.values())
            .fold(Rational::one(), |acc, ((&ni, &ki), a)| {
                acc * pow(a, ni - ki)
            });
        let c = from_bigint(n.binomial(&k)) * weight;
        residual.add_scaled_assign(&charlier_explicit(&k, params)?, &c);
    }
    residual.add_basis_assign(n.total(), &-Rational::one());
    Ok(Witness { residual })
}

/// `sum_{k <= n} prod_i C(n_i,k_i) (a_i - b_i)^{k_i} C^(a)_{n-k} - C^(b)_n`.
pub fn connection_formula(
    n: &MultiIndex,
    from: &CharlierParams,
    to: &CharlierParams,
) -> Result<Witness> {
    from.check_arity(n.arity())?;
    let diff = from.minus(to)?;
    let mut residual = charlier_explicit(n, to)?.neg();
    for k in n.lower_box() {
        let weight = k
            .components()
            .iter()
            .zip(diff.values())
            .fold(Rational::one(), |acc, (&ki, d)| acc * pow(d, ki));
        if weight.is_zero() {
            continue;
        }
        let rest = n.checked_sub(&k).expect("k in lower box");
        let c = from_bigint(n.binomial(&k)) * weight;
        residual.add_scaled_assign(&charlier_explicit(&rest, from)?, &c);
    }
    Ok(Witness { residual })
}

/// Bivariate identity instance; holds iff the residual is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateWitness {
    pub residual: Bivariate,
}

impl BivariateWitness {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Addition formula for the split `a = alpha + (a - alpha)`:
/// `C^(a)_n(x+y) - sum_{k<=n} C(n,k) C^(alpha)_k(x) C^(a-alpha)_{n-k}(y)`,
/// as a polynomial in `x` and `y`.
pub fn addition_formula(
    n: &MultiIndex,
    params: &CharlierParams,
    split: &CharlierParams,
) -> Result<BivariateWitness> {
    params.check_arity(n.arity())?;
    let rest = params.minus(split)?;
    let step = Step::one();
    let mut rhs = Bivariate::zero(&step);
    for k in n.lower_box() {
        let m = n.checked_sub(&k).expect("k in lower box");
        let left = charlier_explicit(&k, split)?;
        let right = charlier_explicit(&m, &rest)?;
        rhs.add_tensor_assign(&left, &right, &from_bigint(n.binomial(&k)));
    }
    let lhs = charlier_explicit(n, params)?.shift_argument();
    Ok(BivariateWitness {
        residual: lhs.sub(&rhs)?,
    })
}

/// Grid form of [`addition_formula`]: evaluates both sides exactly on
/// `(x, y)` in `{0..|n|}^2`, which determines a polynomial of degree at most
/// `|n|` in each variable. Returns the points where the sides differ.
pub fn addition_formula_on_grid(
    n: &MultiIndex,
    params: &CharlierParams,
    split: &CharlierParams,
) -> Result<Vec<(Rational, Rational)>> {
    params.check_arity(n.arity())?;
    let rest = params.minus(split)?;
    let lhs = charlier_explicit(n, params)?;
    let terms = n
        .lower_box()
        .into_iter()
        .map(|k| {
            let m = n.checked_sub(&k).expect("k in lower box");
            Ok((
                from_bigint(n.binomial(&k)),
                charlier_explicit(&k, split)?,
                charlier_explicit(&m, &rest)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut failures = Vec::new();
    let side = n.total() as i64;
    for xi in 0..=side {
        for yi in 0..=side {
            let (x, y) = (int(xi), int(yi));
            let left = lhs.eval(&(&x + &y));
            let right = terms.iter().fold(Rational::zero(), |acc, (c, p, q)| {
                acc + c * p.eval(&x) * q.eval(&y)
            });
            if left != right {
                failures.push((x, y));
            }
        }
    }
    Ok(failures)
}

/// Left-minus-right residuals of the three two-weight recurrences at `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceResiduals {
    /// `(a2 - a1) C_{n1,n2} - (C_{n1+1,n2} - C_{n1,n2+1})`
    pub rec1: FFPoly,
    /// `x C - C_{n1+1,n2} - (a1+n1+n2) C - (a1 n1 + a2 n2) C_{n1,n2-1}
    ///  - a1 n1 (a1 - a2) C_{n1-1,n2-1}`
    pub rec2: FFPoly,
    /// `x C - C_{n1+1,n2} - (a1+n1+n2) C - a1 n1 C_{n1-1,n2} - a2 n2 C_{n1,n2-1}`
    pub rec3: FFPoly,
}

impl RecurrenceResiduals {
    pub fn all_zero(&self) -> bool {
        self.rec1.is_zero() && self.rec2.is_zero() && self.rec3.is_zero()
    }
}

pub fn recurrence_residuals(
    n: &MultiIndex,
    params: &CharlierParams,
) -> Result<RecurrenceResiduals> {
    if params.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: params.arity(),
        });
    }
    params.check_arity(n.arity())?;
    let (a1, a2) = (params.get(0), params.get(1));
    let (n1, n2) = (int(n.get(0) as i64), int(n.get(1) as i64));

    let c = charlier_explicit(n, params)?;
    let up1 = charlier_explicit(&n.plus_unit(0), params)?;
    let up2 = charlier_explicit(&n.plus_unit(1), params)?;
    let down1 = charlier_or_zero(n.checked_minus_unit(0), params)?;
    let down2 = charlier_or_zero(n.checked_minus_unit(1), params)?;
    let down12 = charlier_or_zero(
        n.checked_minus_unit(0)
            .and_then(|m| m.checked_minus_unit(1)),
        params,
    )?;
    let xc = c.mul_x();
    let lead = &(a1 + &n1 + &n2);

    let mut rec1 = c.scale(&(a2 - a1));
    rec1.add_scaled_assign(&up1, &-Rational::one());
    rec1.add_scaled_assign(&up2, &Rational::one());

    let mut rec2 = xc.clone();
    rec2.add_scaled_assign(&up1, &-Rational::one());
    rec2.add_scaled_assign(&c, &-lead);
    rec2.add_scaled_assign(&down2, &-(a1 * &n1 + a2 * &n2));
    rec2.add_scaled_assign(&down12, &-(a1 * &n1 * (a1 - a2)));

    let mut rec3 = xc;
    rec3.add_scaled_assign(&up1, &-Rational::one());
    rec3.add_scaled_assign(&c, &-lead);
    rec3.add_scaled_assign(&down1, &-(a1 * &n1));
    rec3.add_scaled_assign(&down2, &-(a2 * &n2));

    Ok(RecurrenceResiduals { rec1, rec2, rec3 })
}

/// Residual series of the partial-differential relations satisfied by
/// `G = exp(-sum a_j t_j) (1 + sum t_j)^x`, compared up to order `N - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffRelations {
    /// For `j = 2..r`: `dG/dt_1 - dG/dt_j - (a_j - a_1) G`.
    pub rel1: Vec<MultiSeries>,
    /// For `i = 1..r`: `(1 + sum t) dG/dt_i - (x - a_i (1 + sum t)) G`.
    pub rel2: Vec<MultiSeries>,
}

impl DiffRelations {
    pub fn holds(&self) -> bool {
        self.rel1.iter().chain(&self.rel2).all(MultiSeries::is_zero)
    }
}

pub fn diff_relations_check(params: &CharlierParams, order: usize) -> Result<DiffRelations> {
    let step = Step::one();
    let r = params.arity();
    let g = charlier_series(params, order);
    let ones = vec![Rational::one(); r];
    let kernel = MultiSeries::linear(&step, order, Rational::one(), &ones);
    let d: Vec<MultiSeries> = (0..r).map(|i| g.derivative(i)).collect::<Result<_>>()?;

    let rel1 = (1..r)
        .map(|j| {
            let shift = g.scale(&(params.get(j) - params.get(0)));
            d[0].sub(&d[j])?.sub(&shift)
        })
        .collect::<Result<Vec<_>>>()?;

    let xg = g.mul_coefficients(&FFPoly::x(&step))?;
    let kg = kernel.multiply(&g)?;
    let rel2 = (0..r)
        .map(|i| {
            let lhs = kernel.multiply(&d[i])?;
            let rhs = xg.sub(&kg.scale(params.get(i)))?;
            lhs.sub(&rhs)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(DiffRelations { rel1, rel2 })
}

/// Reduction of `C_{n,0}^(a1,a2)` to the classical monic Charlier polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalCheck {
    /// `C_{n,0}^(a1,a2) - C_n^(a1)` (single-weight polynomial).
    pub single_weight_residual: FFPoly,
    /// `C_{n,0}^(a1,a2) - C_{n,0}^(a1,a2+1)`.
    pub a2_shift_residual: FFPoly,
    /// `x C_n - C_{n+1} - (n + a1) C_n - n a1 C_{n-1}` on the `n2 = 0` row.
    pub recurrence_residual: FFPoly,
}

impl ClassicalCheck {
    pub fn holds(&self) -> bool {
        self.single_weight_residual.is_zero()
            && self.a2_shift_residual.is_zero()
            && self.recurrence_residual.is_zero()
    }
}

pub fn classical_charlier_check(n1: usize, params: &CharlierParams) -> Result<ClassicalCheck> {
    if params.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: params.arity(),
        });
    }
    let a1 = params.get(0);
    let row = |n: usize| charlier_explicit(&MultiIndex::from([n, 0]), params);
    let c = row(n1)?;

    let single = CharlierParams::new(vec![a1.clone()])?;
    let single_weight_residual = c.sub(&charlier_explicit(&MultiIndex::from([n1]), &single)?)?;

    let shifted = CharlierParams::new(vec![a1.clone(), params.get(1) + int(1)])?;
    let a2_shift_residual = c.sub(&charlier_explicit(&MultiIndex::from([n1, 0]), &shifted)?)?;

    let nn = int(n1 as i64);
    let mut recurrence_residual = c.mul_x();
    recurrence_residual.add_scaled_assign(&row(n1 + 1)?, &-Rational::one());
    recurrence_residual.add_scaled_assign(&c, &-(&nn + a1));
    if n1 > 0 {
        recurrence_residual.add_scaled_assign(&row(n1 - 1)?, &-(&nn * a1));
    }
    Ok(ClassicalCheck {
        single_weight_residual,
        a2_shift_residual,
        recurrence_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn params(v: &[Rational]) -> CharlierParams {
        CharlierParams::new(v.to_vec()).unwrap()
    }

    fn idx<const N: usize>(v: [usize; N]) -> MultiIndex {
        MultiIndex::from(v)
    }

    fn ff(coeffs: Vec<Rational>) -> FFPoly {
        FFPoly::from_coeffs(coeffs, &Step::one())
    }

    #[test]
    fn explicit_examples() {
        let (a1, a2) = (ratio(3, 2), int(-5));
        let p = params(&[a1.clone(), a2.clone()]);
        assert_eq!(
            charlier_explicit(&idx([0, 0]), &p).unwrap(),
            FFPoly::one(&Step::one())
        );
        assert_eq!(
            charlier_explicit(&idx([1, 0]), &p).unwrap(),
            ff(vec![-a1.clone(), int(1)])
        );
        assert_eq!(
            charlier_explicit(&idx([1, 1]), &p).unwrap(),
            ff(vec![&a1 * &a2, -(&a1 + &a2), int(1)])
        );
        assert!(matches!(
            charlier_explicit(&idx([1, 1, 0]), &p),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn explicit_is_monic_of_total_degree() {
        let p = params(&[ratio(1, 2), int(3), int(-2)]);
        for n in MultiIndex::simplex(3, 5) {
            let c = charlier_explicit(&n, &p).unwrap();
            assert_eq!(c.degree(), Some(n.total()));
            assert_eq!(c.leading_coeff(), Some(&int(1)));
        }
    }

    #[test]
    fn genfunc_examples() {
        let p = params(&[int(1), int(2)]);
        assert_eq!(
            charlier_genfunc(&idx([0, 0]), &p, 0).unwrap(),
            FFPoly::one(&Step::one())
        );
        assert_eq!(
            charlier_genfunc(&idx([2, 1]), &p, 3).unwrap(),
            charlier_explicit(&idx([2, 1]), &p).unwrap()
        );
        let p3 = params(&[int(1), int(2), int(3)]);
        assert_eq!(
            charlier_genfunc(&idx([1, 1, 1]), &p3, 3).unwrap(),
            charlier_explicit(&idx([1, 1, 1]), &p3).unwrap()
        );
        assert!(matches!(
            charlier_genfunc(&idx([2, 2]), &p, 3),
            Err(Error::OutOfOrder { .. })
        ));
    }

    #[test]
    fn difference_rule_examples() {
        let p = params(&[int(1), int(2)]);
        assert!(verify_difference_rule(&idx([0, 0]), &p).unwrap().holds());
        assert!(verify_difference_rule(&idx([1, 1]), &p).unwrap().holds());
        let p = params(&[ratio(1, 2), int(3)]);
        for n in MultiIndex::simplex(2, 6) {
            assert!(verify_difference_rule(&n, &p).unwrap().holds(), "{n}");
        }
    }

    #[test]
    fn inversion_examples() {
        let p = params(&[ratio(2, 7), int(-4)]);
        assert!(inversion_formula(&idx([1, 0]), &p).unwrap().holds());
        assert!(inversion_formula(&idx([0, 0]), &p).unwrap().holds());
        let p = params(&[int(1), int(3)]);
        assert!(inversion_formula(&idx([2, 2]), &p).unwrap().holds());
    }

    #[test]
    fn connection_examples() {
        let a = params(&[int(1), int(2)]);
        let b = params(&[int(3), int(5)]);
        assert!(connection_formula(&idx([2, 1]), &a, &a).unwrap().holds());
        assert!(connection_formula(&idx([1, 0]), &a, &b).unwrap().holds());
        assert!(connection_formula(&idx([2, 1]), &a, &b).unwrap().holds());
        let short = params(&[int(1)]);
        assert!(connection_formula(&idx([1, 0]), &a, &short).is_err());
    }

    #[test]
    fn addition_examples() {
        let a = params(&[int(1), int(2)]);
        assert!(addition_formula(&idx([0, 0]), &a, &a).unwrap().holds());
        let a = params(&[int(2), int(4)]);
        let alpha = params(&[int(1), int(1)]);
        assert!(addition_formula(&idx([1, 1]), &a, &alpha).unwrap().holds());
        assert!(addition_formula_on_grid(&idx([1, 1]), &a, &alpha)
            .unwrap()
            .is_empty());
        let a = params(&[int(3), int(5)]);
        let alpha = params(&[int(1), int(2)]);
        assert!(addition_formula(&idx([2, 1]), &a, &alpha).unwrap().holds());
        assert!(addition_formula_on_grid(&idx([2, 1]), &a, &alpha)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn recurrence_examples() {
        let p = params(&[ratio(5, 3), int(4)]);
        let r = recurrence_residuals(&idx([0, 0]), &p).unwrap();
        assert!(r.rec3.is_zero());
        assert!(r.all_zero());

        let a = ratio(2, 3);
        let eq = params(&[a.clone(), a.clone()]);
        let r = recurrence_residuals(&idx([1, 0]), &eq).unwrap();
        assert!(r.rec1.is_zero());
        assert_eq!(
            charlier_explicit(&idx([2, 0]), &eq).unwrap(),
            ff(vec![&a * &a, -(int(2) * &a), int(1)])
        );

        let p = params(&[int(1), int(3)]);
        assert!(recurrence_residuals(&idx([2, 2]), &p).unwrap().all_zero());
    }

    #[test]
    fn second_recurrence_on_the_vanishing_second_component() {
        // On the row n2 = 0 the rec-2 right-hand side drops a1 n1 C_{n1-1,0}
        // under the zero convention, so the residual is exactly that term.
        let p = params(&[int(1), int(3)]);
        for n1 in 1..5 {
            let r = recurrence_residuals(&idx([n1, 0]), &p).unwrap();
            assert!(r.rec1.is_zero() && r.rec3.is_zero());
            let expected = charlier_explicit(&idx([n1 - 1, 0]), &p)
                .unwrap()
                .scale(&(p.get(0) * int(n1 as i64)));
            assert_eq!(r.rec2, expected);
        }
    }

    #[test]
    fn diff_relation_examples() {
        let eq = params(&[int(2), int(2)]);
        let d = diff_relations_check(&eq, 5).unwrap();
        assert!(d.rel1[0].is_zero());
        let p = params(&[int(1), int(2)]);
        let d = diff_relations_check(&p, 6).unwrap();
        assert!(d.holds());
        assert_eq!(d.rel2[0].order(), 5);
    }

    #[test]
    fn diff_relation_constant_term() {
        // [t^0] of (gen-rel2): C_{1,0} + a1 C_{0,0} = x C_{0,0}
        let p = params(&[int(1), int(2)]);
        let c10 = charlier_explicit(&idx([1, 0]), &p).unwrap();
        let lhs = c10.add(&FFPoly::constant(int(1), &Step::one())).unwrap();
        assert_eq!(lhs, FFPoly::x(&Step::one()));
    }

    #[test]
    fn classical_examples() {
        let p = params(&[int(2), int(7)]);
        let c10 = charlier_explicit(&idx([1, 0]), &p).unwrap();
        assert_eq!(c10, ff(vec![int(-2), int(1)]));
        assert!(classical_charlier_check(0, &p).unwrap().holds());
        let q = params(&[int(2), int(1)]);
        for n in 0..=6 {
            assert!(classical_charlier_check(n, &p).unwrap().holds());
            assert_eq!(
                charlier_explicit(&idx([n, 0]), &p).unwrap(),
                charlier_explicit(&idx([n, 0]), &q).unwrap()
            );
        }
    }

    #[test]
    fn params_helpers() {
        assert!(params(&[int(1), int(1)]).has_repeated());
        assert!(!params(&[int(1), int(2)]).has_repeated());
        assert!(!params(&[int(1), int(-2)]).all_positive());
        assert_eq!(
            CharlierParams::parse("1/2, 3").unwrap().to_string(),
            "(1/2,3)"
        );
        assert!(CharlierParams::new(vec![]).is_err());
    }
}

//! Multiple Δω-Appell families built from a seed `a_n`, three independent
//! constructions of the same family, and checks of the defining difference
//! rule and the addition formula.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::charlier::CharlierParams;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::index::MultiIndex;
use crate::poly::{Bivariate, FFPoly, Step, DEFAULT_DEGREE_CAP};
use crate::rational::{factorial, from_bigint, int, pow, Rational};
use crate::series::MultiSeries;

/// Seed coefficients `a_n` on `|n| <= order`; absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppellSeed {
    step: Step,
    arity: usize,
    order: usize,
    coeffs: BTreeMap<MultiIndex, Rational>,
}

impl AppellSeed {
    pub fn new(
        step: Step,
        arity: usize,
        order: usize,
        coeffs: BTreeMap<MultiIndex, Rational>,
    ) -> Result<Self> {
        Self::with_cap(step, arity, order, coeffs, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(
        step: Step,
        arity: usize,
        order: usize,
        mut coeffs: BTreeMap<MultiIndex, Rational>,
        cap: usize,
    ) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: 0,
            });
        }
        if order > cap {
            return Err(Error::DegreeCap { degree: order, cap });
        }
        for k in coeffs.keys() {
            if k.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: k.arity(),
                });
            }
            if k.total() > order {
                return Err(Error::OutOfOrder {
                    index: k.clone(),
                    order,
                });
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        if !coeffs.contains_key(&MultiIndex::zeros(arity)) {
            return Err(Error::DegenerateSeed);
        }
        Ok(AppellSeed {
            step,
            arity,
            order,
            coeffs,
        })
    }

    pub fn from_fn<F>(step: &Step, arity: usize, order: usize, f: F) -> Result<Self>
    where
        F: Fn(&MultiIndex) -> Rational,
    {
        let coeffs = MultiIndex::simplex(arity, order)
            .into_iter()
            .map(|k| {
                let c = f(&k);
                (k, c)
            })
            .collect();
        Self::new(step.clone(), arity, order, coeffs)
    }

    /// `a_n = [n = 0]`, whose family is `{x^(|n|,w)}`.
    pub fn delta(step: &Step, arity: usize, order: usize) -> Result<Self> {
        Self::from_fn(step, arity, order, |k| {
            if k.is_zero() {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// `a_n = prod_i (-a_i)^{n_i}` with step 1, whose family is the multiple
    /// Charlier family.
    pub fn charlier(params: &CharlierParams, order: usize) -> Result<Self> {
        Self::from_fn(&Step::one(), params.arity(), order, |k| {
            k.components()
                .iter()
                .zip(params.values())
                .fold(Rational::one(), |acc, (&ki, a)| acc * pow(&-a, ki))
        })
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

    pub fn coeff(&self, k: &MultiIndex) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero coefficients only.
    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, Rational> {
        &self.coeffs
    }
}

/// A seed together with its family table on `|n| <= seed.order()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppellFamily {
    seed: AppellSeed,
    table: Family,
}

impl AppellFamily {
    pub fn seed(&self) -> &AppellSeed {
        &self.seed
    }

    pub fn family(&self) -> &Family {
        &self.table
    }

    pub fn into_family(self) -> Family {
        self.table
    }

    pub fn get(&self, n: &MultiIndex) -> Result<&FFPoly> {
        self.table.get(n)
    }
}

/// `P_n = sum_{k <= n} C(n,k) a_{n-k} x^(|k|,w)`.
pub fn build_via_c(seed: &AppellSeed) -> AppellFamily {
    let step = &seed.step;
    let table = Family::from_fn(step, seed.arity, seed.order, |n| {
        let mut p = FFPoly::zero(step);
        for k in n.lower_box() {
            let a = seed.coeff(&n.checked_sub(&k).expect("k in lower box"));
            if !a.is_zero() {
                p.add_basis_assign(k.total(), &(from_bigint(n.binomial(&k)) * a));
            }
        }
        Ok(p)
    })
    .expect("simplex is covered");
    AppellFamily {
        seed: seed.clone(),
        table,
    }
}

/// Coefficient extraction from `A(t) (1 + w sum t_j)^{x/w}`.
pub fn build_via_b(seed: &AppellSeed) -> Result<AppellFamily> {
    let a = MultiSeries::from_seed(|k| seed.coeff(k), &seed.step, seed.order, seed.arity)?;
    let g = a.multiply(&MultiSeries::newton_binomial_in(
        &seed.step, seed.order, seed.arity,
    ))?;
    let table = Family::new(
        seed.step.clone(),
        seed.arity,
        seed.order,
        g.extract_family(),
    )?;
    Ok(AppellFamily {
        seed: seed.clone(),
        table,
    })
}

/// `P_n = sum_{k <= n} C(n,k) (|n|-|k|)!/|n|! a_k D^{|k|} x^(|n|,w)`.
pub fn build_via_e(seed: &AppellSeed) -> AppellFamily {
    let step = &seed.step;
    let table = Family::from_fn(step, seed.arity, seed.order, |n| {
        let top = FFPoly::basis(n.total(), step);
        let norm = from_bigint(factorial(n.total()));
        let mut p = FFPoly::zero(step);
        for k in n.lower_box() {
            let a = seed.coeff(&k);
            if a.is_zero() {
                continue;
            }
            let c = from_bigint(n.binomial(&k)) * from_bigint(factorial(n.total() - k.total()))
                / &norm
                * a;
            p.add_scaled_assign(&top.delta_power(k.total()), &c);
        }
        Ok(p)
    })
    .expect("simplex is covered");
    AppellFamily {
        seed: seed.clone(),
        table,
    }
}

/// Nonzero residuals of `D P_n - sum_j n_j P_{n-e_j}` over `|n| <= max_total_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppellCheck {
    pub max_total_degree: usize,
    pub residuals: BTreeMap<MultiIndex, FFPoly>,
}

impl AppellCheck {
    pub fn holds(&self) -> bool {
        self.residuals.is_empty()
    }

    pub fn first_failure(&self) -> Option<(&MultiIndex, &FFPoly)> {
        self.residuals.iter().next()
    }
}

fn check_window(family: &Family, max_total_degree: usize) -> Result<()> {
    if max_total_degree > family.order() {
        let index = MultiIndex::new(
            std::iter::once(max_total_degree)
                .chain(std::iter::repeat_n(0, family.arity() - 1))
                .collect(),
        );
        return Err(Error::OutOfOrder {
            index,
            order: family.order(),
        });
    }
    Ok(())
}

pub fn appell_residual(family: &Family, n: &MultiIndex) -> Result<FFPoly> {
    let mut r = family.get(n)?.delta();
    for j in 0..n.arity() {
        if n.get(j) > 0 {
            r.add_scaled_assign(&family.below(n, j)?, &-int(n.get(j) as i64));
        }
    }
    Ok(r)
}

pub fn check_appell_property(family: &Family, max_total_degree: usize) -> Result<AppellCheck> {
    check_window(family, max_total_degree)?;
    let mut residuals = BTreeMap::new();
    for n in MultiIndex::simplex(family.arity(), max_total_degree) {
        let r = appell_residual(family, &n)?;
        if !r.is_zero() {
            residuals.insert(n, r);
        }
    }
    Ok(AppellCheck {
        max_total_degree,
        residuals,
    })
}

/// Nonzero residuals of `P_n(x+y) - sum_{k<=n} C(n,k) P_{n-k}(x) y^(|k|,w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditionCheck {
    pub max_total_degree: usize,
    pub residuals: BTreeMap<MultiIndex, Bivariate>,
}

impl AdditionCheck {
    pub fn holds(&self) -> bool {
        self.residuals.is_empty()
    }
}

pub fn addition_residual(family: &Family, n: &MultiIndex) -> Result<Bivariate> {
    let lhs = family.get(n)?.shift_argument();
    let mut rhs = Bivariate::zero(family.step());
    for k in n.lower_box() {
        let rest = n.checked_sub(&k).expect("k in lower box");
        rhs.add_term_assign(k.total(), family.get(&rest)?, &from_bigint(n.binomial(&k)));
    }
    lhs.sub(&rhs)
}

pub fn check_addition_formula(family: &Family, max_total_degree: usize) -> Result<AdditionCheck> {
    check_window(family, max_total_degree)?;
    let mut residuals = BTreeMap::new();
    for n in MultiIndex::simplex(family.arity(), max_total_degree) {
        let r = addition_residual(family, &n)?;
        if !r.is_zero() {
            residuals.insert(n, r);
        }
    }
    Ok(AdditionCheck {
        max_total_degree,
        residuals,
    })
}

/// Inverse of [`build_via_c`]: since `x^(k,w)` vanishes at 0 for `k >= 1`,
/// `a_n = P_n(0)`. The family is checked to be Appell first.
pub fn recover_seed(family: &Family) -> Result<AppellSeed> {
    let check = check_appell_property(family, family.order())?;
    if let Some((n, r)) = check.first_failure() {
        return Err(Error::NotAppell {
            index: n.clone(),
            residual: Box::new(r.clone()),
        });
    }
    let zero = Rational::zero();
    let coeffs = family
        .members()
        .map(|(n, p)| (n.clone(), p.eval(&zero)))
        .collect();
    AppellSeed::new(
        family.step().clone(),
        family.arity(),
        family.order(),
        coeffs,
    )
}

/// Outcome of the equivalence battery on one seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    /// Series construction minus binomial sum, where nonzero.
    pub b_mismatches: BTreeMap<MultiIndex, FFPoly>,
    /// Difference-power construction minus binomial sum, where nonzero.
    pub e_mismatches: BTreeMap<MultiIndex, FFPoly>,
    pub appell: AppellCheck,
    pub addition: AdditionCheck,
    pub round_trip: bool,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.b_mismatches.is_empty()
            && self.e_mismatches.is_empty()
            && self.appell.holds()
            && self.addition.holds()
            && self.round_trip
    }
}

fn mismatches(left: &Family, right: &Family) -> Result<BTreeMap<MultiIndex, FFPoly>> {
    let mut out = BTreeMap::new();
    for (n, p) in left.members() {
        let d = right.get(n)?.sub(p)?;
        if !d.is_zero() {
            out.insert(n.clone(), d);
        }
    }
    Ok(out)
}

/// Builds the family three ways and checks the difference rule, the
/// addition formula and the seed round trip on `|n| <= seed.order()`.
pub fn check_equivalence(seed: &AppellSeed) -> Result<EquivalenceReport> {
    let c = build_via_c(seed);
    let b = build_via_b(seed)?;
    let e = build_via_e(seed);
    let order = seed.order;
    Ok(EquivalenceReport {
        b_mismatches: mismatches(c.family(), b.family())?,
        e_mismatches: mismatches(c.family(), e.family())?,
        appell: check_appell_property(c.family(), order)?,
        addition: check_addition_formula(c.family(), order)?,
        round_trip: recover_seed(c.family()).is_ok_and(|s| &s == seed),
    })
}

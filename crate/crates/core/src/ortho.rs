//! Moment functionals of the Poisson-type weights `a^x / x!`, exact checks of
//! multiple orthogonality, extraction of nearest-neighbour recurrence
//! coefficients from a family table, and recognition of the Charlier case.
//!
//! The recurrence in direction `k` is
//! `x P_n = P_{n+e_k} + b_n P_n + sum_j a_{n,j} P_{n-e_j}`.
//! For two weights and direction 1 this is `E = b`, `F = a_{n,1}`,
//! `G = a_{n,2}`; for direction 2 the tilde form has `E~ = b`,
//! `F~ = a_{n,2}` and `G~ = a_{n,1}`. All families are taken monic in the
//! sense that `P_{n+e_k}` carries the leading term.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::appell::check_appell_property;
use crate::charlier::{charlier_explicit, CharlierParams};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::index::MultiIndex;
use crate::poly::FFPoly;
use crate::rational::{int, pow, Rational};

/// `L_a[p] = e^{-a} sum_{x >= 0} p(x) a^x / x!`, acting on the step-1 basis
/// as `L_a[x^(k,1)] = a^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentFunctional {
    a: Rational,
}

impl MomentFunctional {
    pub fn new(a: Rational) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::NonPositiveWeight(a));
        }
        Ok(MomentFunctional { a })
    }

    /// The same closed form without the positivity requirement; for `a <= 0`
    /// it no longer comes from a positive measure.
    pub fn formal(a: Rational) -> Self {
        MomentFunctional { a }
    }

    pub fn weight(&self) -> &Rational {
        &self.a
    }

    pub fn moment(&self, p: &FFPoly) -> Result<Rational> {
        if !p.omega().is_one() {
            return Err(Error::MomentBasis(p.omega().clone()));
        }
        let mut power = Rational::one();
        let mut sum = Rational::zero();
        for c in p.coeffs() {
            sum += c * &power;
            power *= &self.a;
        }
        Ok(sum)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Warning {
    /// Two weights coincide, so the system is not genuinely multiple.
    RepeatedParameter,
    /// Some weight is not positive, so it is not a measure.
    NonPositiveParameter,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Warning::RepeatedParameter => "repeated-parameter",
            Warning::NonPositiveParameter => "non-positive-parameter",
        })
    }
}

pub fn parameter_warnings(params: &CharlierParams) -> Vec<Warning> {
    let mut w = Vec::new();
    if params.has_repeated() {
        w.push(Warning::RepeatedParameter);
    }
    if !params.all_positive() {
        w.push(Warning::NonPositiveParameter);
    }
    w
}

/// One value `L_{a_i}[x^(k,1) C_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentCondition {
    pub weight: usize,
    pub k: usize,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalityVerdict {
    pub index: MultiIndex,
    /// All `k < n_i`; each value must vanish.
    pub conditions: Vec<MomentCondition>,
    /// The first non-vanishing moment `k = n_i`, one per weight.
    pub normality: Vec<MomentCondition>,
    pub warnings: Vec<Warning>,
}

impl OrthogonalityVerdict {
    pub fn holds(&self) -> bool {
        self.conditions.iter().all(|c| c.value.is_zero())
    }

    pub fn normal(&self) -> bool {
        self.normality.iter().all(|c| !c.value.is_zero())
    }

    pub fn violations(&self) -> impl Iterator<Item = &MomentCondition> {
        self.conditions.iter().filter(|c| !c.value.is_zero())
    }
}

pub fn verify_multiple_orthogonality(
    n: &MultiIndex,
    params: &CharlierParams,
) -> Result<OrthogonalityVerdict> {
    let c = charlier_explicit(n, params)?;
    let mut conditions = Vec::new();
    let mut normality = Vec::new();
    let mut xk = FFPoly::one(c.step());
    let mut products = vec![c.clone()];
    let top = n.components().iter().copied().max().unwrap_or(0);
    for _ in 0..top {
        xk = xk.mul_x();
        products.push(xk.mul(&c)?);
    }
    for (i, a) in params.values().iter().enumerate() {
        let functional = MomentFunctional::formal(a.clone());
        for (k, p) in products.iter().enumerate().take(n.get(i) + 1) {
            let cond = MomentCondition {
                weight: i,
                k,
                value: functional.moment(p)?,
            };
            if k < n.get(i) {
                conditions.push(cond);
            } else {
                normality.push(cond);
            }
        }
    }
    Ok(OrthogonalityVerdict {
        index: n.clone(),
        conditions,
        normality,
        warnings: parameter_warnings(params),
    })
}

/// Indices at which recurrences are extracted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Window {
    /// `|n| <= max`.
    Simplex(usize),
    Indices(Vec<MultiIndex>),
}

impl Window {
    pub fn indices(&self, arity: usize) -> Vec<MultiIndex> {
        match self {
            Window::Simplex(max) => MultiIndex::simplex(arity, *max),
            Window::Indices(v) => v.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowStatus {
    /// Unique coefficients.
    Solved,
    /// Consistent but underdetermined; `null_space` spans the ambiguity in
    /// the unknown order `(b, a_{n,j} for j with n_j >= 1)`.
    RankDeficient {
        rank: usize,
        unknowns: usize,
        null_space: Vec<Vec<Rational>>,
    },
    /// No coefficients work; `residual` is what a best partial solution
    /// leaves over.
    NoRecurrence { residual: FFPoly },
}

/// The recurrence at one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceRow {
    pub index: MultiIndex,
    /// `b_n` if uniquely determined.
    pub diagonal: Option<Rational>,
    /// `a_{n,j}` for each `j`; zero when `n_j = 0`, `None` if not determined.
    pub lower: Vec<Option<Rational>>,
    pub status: RowStatus,
    target: FFPoly,
    columns: Vec<FFPoly>,
    slots: Vec<usize>,
}

impl RecurrenceRow {
    pub fn is_solved(&self) -> bool {
        self.status == RowStatus::Solved
    }

    /// `x P_n - P_{n+e_k} - b P_n - sum_j a_j P_{n-e_j}` for trial values.
    pub fn residual_for(&self, diagonal: &Rational, lower: &[Rational]) -> FFPoly {
        let mut r = self.target.clone();
        r.add_scaled_assign(&self.columns[0], &-diagonal);
        for (col, &j) in self.columns[1..].iter().zip(&self.slots) {
            r.add_scaled_assign(col, &-&lower[j]);
        }
        r
    }
}

/// Exact Gauss-Jordan elimination of `sum_c x_c columns[c] = target` on the
/// falling-factorial coefficients, rows taken from the top degree down.
fn solve(
    columns: &[FFPoly],
    target: &FFPoly,
) -> (Vec<Rational>, Vec<Vec<Rational>>, usize, FFPoly) {
    let width = columns.len();
    let height = columns
        .iter()
        .chain(std::iter::once(target))
        .filter_map(FFPoly::degree)
        .max()
        .map_or(0, |d| d + 1);
    let mut m: Vec<Vec<Rational>> = (0..height)
        .rev()
        .map(|deg| {
            columns
                .iter()
                .map(|c| c.coeff(deg))
                .chain(std::iter::once(target.coeff(deg)))
                .collect()
        })
        .collect();

    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..width {
        let Some(p) = (row..height).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Rational::one() / &m[row][col];
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, target) in m.iter_mut().enumerate() {
            if r != row && !target[col].is_zero() {
                let f = target[col].clone();
                for (t, p) in target.iter_mut().zip(&pivot_row) {
                    *t -= &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }

    let mut solution = vec![Rational::zero(); width];
    for (r, &col) in pivots.iter().enumerate() {
        solution[col] = m[r][width].clone();
    }
    let null_space = (0..width)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); width];
            v[free] = Rational::one();
            for (r, &col) in pivots.iter().enumerate() {
                v[col] = -m[r][free].clone();
            }
            v
        })
        .collect();
    let mut residual = target.clone();
    for (c, x) in columns.iter().zip(&solution) {
        residual.add_scaled_assign(c, &-x);
    }
    (solution, null_space, pivots.len(), residual)
}

/// Solves for `b_n` and `a_{n,j}` at a single index. Requires `P_n`,
/// `P_{n+e_direction}` and every `P_{n-e_j}` in the table.
pub fn extract_recurrence_at(
    family: &Family,
    n: &MultiIndex,
    direction: usize,
) -> Result<RecurrenceRow> {
    let r = family.arity();
    if direction >= r {
        return Err(Error::ArityMismatch {
            expected: r,
            found: direction + 1,
        });
    }
    let p = family.get(n)?;
    let up = family.get(&n.plus_unit(direction))?;
    let mut target = p.mul_x();
    target.add_scaled_assign(up, &-Rational::one());

    let slots: Vec<usize> = (0..r).filter(|&j| n.get(j) > 0).collect();
    let mut columns = vec![p.clone()];
    for &j in &slots {
        columns.push(family.below(n, j)?);
    }
    let (solution, null_space, rank, residual) = solve(&columns, &target);

    let status = if !residual.is_zero() {
        RowStatus::NoRecurrence { residual }
    } else if null_space.is_empty() {
        RowStatus::Solved
    } else {
        RowStatus::RankDeficient {
            rank,
            unknowns: columns.len(),
            null_space: null_space.clone(),
        }
    };
    let determined = |c: usize| {
        let consistent = matches!(status, RowStatus::Solved | RowStatus::RankDeficient { .. });
        (consistent && null_space.iter().all(|v| v[c].is_zero())).then(|| solution[c].clone())
    };
    let mut lower = vec![Some(Rational::zero()); r];
    for (c, &j) in slots.iter().enumerate() {
        lower[j] = determined(c + 1);
    }
    Ok(RecurrenceRow {
        index: n.clone(),
        diagonal: determined(0),
        lower,
        status,
        target,
        columns,
        slots,
    })
}

/// Recurrence rows over a window, in graded index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NNRecurrenceCoeffs {
    pub arity: usize,
    pub direction: usize,
    pub rows: BTreeMap<MultiIndex, RecurrenceRow>,
}

impl NNRecurrenceCoeffs {
    pub fn row(&self, n: &MultiIndex) -> Option<&RecurrenceRow> {
        self.rows.get(n)
    }

    pub fn rank_deficient(&self) -> impl Iterator<Item = &RecurrenceRow> {
        self.rows
            .values()
            .filter(|r| matches!(r.status, RowStatus::RankDeficient { .. }))
    }

    pub fn failures(&self) -> impl Iterator<Item = &RecurrenceRow> {
        self.rows
            .values()
            .filter(|r| matches!(r.status, RowStatus::NoRecurrence { .. }))
    }

    pub fn all_solved(&self) -> bool {
        self.rows.values().all(RecurrenceRow::is_solved)
    }

    /// Two-weight names: `E`.
    pub fn e(&self, m: usize, n: usize) -> Option<Rational> {
        self.row(&MultiIndex::from([m, n]))?.diagonal.clone()
    }

    /// Two-weight names: `F` (direction 1) or `F~` (direction 2).
    pub fn f(&self, m: usize, n: usize) -> Option<Rational> {
        let slot = if self.direction == 0 { 0 } else { 1 };
        self.row(&MultiIndex::from([m, n]))?
            .lower
            .get(slot)?
            .clone()
    }

    /// Two-weight names: `G` (direction 1) or `G~` (direction 2).
    pub fn g(&self, m: usize, n: usize) -> Option<Rational> {
        let slot = if self.direction == 0 { 1 } else { 0 };
        self.row(&MultiIndex::from([m, n]))?
            .lower
            .get(slot)?
            .clone()
    }
}

pub fn extract_recurrence(
    family: &Family,
    direction: usize,
    window: &Window,
) -> Result<NNRecurrenceCoeffs> {
    let rows = window
        .indices(family.arity())
        .into_iter()
        .map(|n| extract_recurrence_at(family, &n, direction).map(|row| (n, row)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(NNRecurrenceCoeffs {
        arity: family.arity(),
        direction,
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// `b_n = |n| + b_0`.
    Diagonal,
    /// `a_{n,j} = n_j c_j`.
    Lower(usize),
    /// `c_direction = b_0`.
    Consistency,
    /// The row admits no recurrence at all, or (rank-deficient) none with
    /// the constrained values.
    RowEquation,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Diagonal => write!(f, "diagonal b_n = |n| + b_0"),
            Constraint::Lower(j) => write!(f, "lower a_n,{} = n_{} c_{}", j + 1, j + 1, j + 1),
            Constraint::Consistency => write!(f, "consistency c_k = b_0"),
            Constraint::RowEquation => write!(f, "row equation"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: MultiIndex,
    pub constraint: Constraint,
    pub expected: Option<Rational>,
    pub found: Option<Rational>,
    pub residual: Option<FFPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintVerdict {
    /// `b_0` and `c = (c_1, ..., c_r)`, the candidate Charlier parameters.
    Satisfied {
        b0: Rational,
        params: Vec<Rational>,
    },
    Violated(Violation),
    InsufficientWindow {
        missing: Vec<MultiIndex>,
    },
    MissingRow(MultiIndex),
}

impl ConstraintVerdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, ConstraintVerdict::Satisfied { .. })
    }
}

/// Checks `b_n = |n| + b_0`, `a_{n,j} = n_j c_j` and `c_k = b_0` on the
/// window. `c_j` is read from the all-ones row; if that row is not uniquely
/// solved it is read from the row `e_j`. Rank-deficient rows pass when the
/// constrained values solve their equation.
pub fn check_appell_orthogonal_constraints(
    coeffs: &NNRecurrenceCoeffs,
    window: &Window,
) -> ConstraintVerdict {
    let r = coeffs.arity;
    let indices = window.indices(r);
    let zero = MultiIndex::zeros(r);
    let ones = MultiIndex::ones(r);
    let missing: Vec<MultiIndex> = [&zero, &ones]
        .into_iter()
        .filter(|n| !indices.contains(n))
        .cloned()
        .collect();
    if !missing.is_empty() {
        return ConstraintVerdict::InsufficientWindow { missing };
    }
    for n in &indices {
        if coeffs.row(n).is_none() {
            return ConstraintVerdict::MissingRow(n.clone());
        }
    }
    let origin = coeffs.row(&zero).expect("checked above");
    let Some(b0) = origin.diagonal.clone() else {
        return ConstraintVerdict::Violated(row_violation(origin));
    };

    let ones_row = coeffs.row(&ones).expect("checked above");
    let mut params = Vec::with_capacity(r);
    for j in 0..r {
        let from_ones = ones_row
            .is_solved()
            .then(|| ones_row.lower[j].clone())
            .flatten();
        let c = from_ones.or_else(|| {
            coeffs
                .row(&MultiIndex::unit(r, j))
                .and_then(|row| row.lower[j].clone())
        });
        match c {
            Some(c) => params.push(c),
            None => return ConstraintVerdict::Violated(row_violation(ones_row)),
        }
    }
    if params[coeffs.direction] != b0 {
        return ConstraintVerdict::Violated(Violation {
            index: ones.clone(),
            constraint: Constraint::Consistency,
            expected: Some(b0),
            found: Some(params[coeffs.direction].clone()),
            residual: None,
        });
    }

    for n in &indices {
        let row = coeffs.row(n).expect("checked above");
        let diag = int(n.total() as i64) + &b0;
        let lower: Vec<Rational> = (0..r).map(|j| int(n.get(j) as i64) * &params[j]).collect();
        match &row.status {
            RowStatus::Solved => {
                if row.diagonal.as_ref() != Some(&diag) {
                    return ConstraintVerdict::Violated(Violation {
                        index: n.clone(),
                        constraint: Constraint::Diagonal,
                        expected: Some(diag),
                        found: row.diagonal.clone(),
                        residual: None,
                    });
                }
                for (j, (found, expected)) in row.lower.iter().zip(&lower).enumerate() {
                    if found.as_ref() != Some(expected) {
                        return ConstraintVerdict::Violated(Violation {
                            index: n.clone(),
                            constraint: Constraint::Lower(j),
                            expected: Some(expected.clone()),
                            found: found.clone(),
                            residual: None,
                        });
                    }
                }
            }
            RowStatus::RankDeficient { .. } => {
                let residual = row.residual_for(&diag, &lower);
                if !residual.is_zero() {
                    return ConstraintVerdict::Violated(Violation {
                        index: n.clone(),
                        constraint: Constraint::RowEquation,
                        expected: None,
                        found: None,
                        residual: Some(residual),
                    });
                }
            }
            RowStatus::NoRecurrence { .. } => {
                return ConstraintVerdict::Violated(row_violation(row));
            }
        }
    }
    ConstraintVerdict::Satisfied { b0, params }
}

fn row_violation(row: &RecurrenceRow) -> Violation {
    Violation {
        index: row.index.clone(),
        constraint: Constraint::RowEquation,
        expected: None,
        found: None,
        residual: match &row.status {
            RowStatus::NoRecurrence { residual } => Some(residual.clone()),
            _ => None,
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Basis,
    Window,
    Appell,
    Extraction,
    Constraints,
    Comparison,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Basis => "basis",
            Stage::Window => "window",
            Stage::Appell => "appell",
            Stage::Extraction => "extraction",
            Stage::Constraints => "constraints",
            Stage::Comparison => "comparison",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefutationWitness {
    /// The family uses step `w != 1`.
    Step(Rational),
    /// The family table is too short for the requested check.
    Order {
        needed: usize,
        available: usize,
    },
    /// A nonzero residual polynomial.
    Residual(FFPoly),
    /// A rank-deficient extraction row.
    RankDeficient {
        rank: usize,
        unknowns: usize,
        null_space: Vec<Vec<Rational>>,
    },
    Constraint(Violation),
    InsufficientWindow(Vec<MultiIndex>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Identification {
    Identified {
        params: CharlierParams,
        warnings: Vec<Warning>,
    },
    Refuted {
        stage: Stage,
        index: Option<MultiIndex>,
        witness: RefutationWitness,
    },
}

impl Identification {
    pub fn is_identified(&self) -> bool {
        matches!(self, Identification::Identified { .. })
    }
}

/// Decides whether `family` is a multiple Charlier family, using the
/// difference rule on `|n| <= max_total_degree`, direction-1 recurrences on
/// `|n| <= max_total_degree - 1`, the constraint check, and a final exact
/// comparison with the explicit polynomials.
///
/// A rank-deficient row is accepted only when the candidate parameters are
/// positive with a repetition (the coinciding-weights case, which carries a
/// warning) and the family matches them exactly; otherwise it refutes.
pub fn charlier_identification(family: &Family, max_total_degree: usize) -> Identification {
    let refute = |stage, index, witness| Identification::Refuted {
        stage,
        index,
        witness,
    };
    let r = family.arity();
    if !family.step().value().is_one() {
        return refute(
            Stage::Basis,
            None,
            RefutationWitness::Step(family.step().value().clone()),
        );
    }
    let needed = r + 1;
    if max_total_degree < needed || max_total_degree > family.order() {
        return refute(
            Stage::Window,
            None,
            RefutationWitness::Order {
                needed: needed.max(max_total_degree),
                available: family.order(),
            },
        );
    }

    let appell = check_appell_property(family, max_total_degree).expect("window within order");
    if let Some((n, res)) = appell.first_failure() {
        return refute(
            Stage::Appell,
            Some(n.clone()),
            RefutationWitness::Residual(res.clone()),
        );
    }

    let window = Window::Simplex(max_total_degree - 1);
    let coeffs = extract_recurrence(family, 0, &window).expect("window within order");
    if let Some(row) = coeffs.failures().next() {
        let RowStatus::NoRecurrence { residual } = &row.status else {
            unreachable!()
        };
        return refute(
            Stage::Extraction,
            Some(row.index.clone()),
            RefutationWitness::Residual(residual.clone()),
        );
    }

    let params = match check_appell_orthogonal_constraints(&coeffs, &window) {
        ConstraintVerdict::Satisfied { params, .. } => {
            CharlierParams::new(params).expect("arity is positive")
        }
        ConstraintVerdict::Violated(v) => {
            return refute(
                Stage::Constraints,
                Some(v.index.clone()),
                RefutationWitness::Constraint(v),
            )
        }
        ConstraintVerdict::InsufficientWindow { missing } => {
            return refute(
                Stage::Window,
                None,
                RefutationWitness::InsufficientWindow(missing),
            )
        }
        ConstraintVerdict::MissingRow(n) => {
            return refute(
                Stage::Window,
                Some(n.clone()),
                RefutationWitness::InsufficientWindow(vec![n]),
            )
        }
    };

    if let Some(row) = coeffs.rank_deficient().next() {
        if !(params.has_repeated() && params.all_positive()) {
            let RowStatus::RankDeficient {
                rank,
                unknowns,
                null_space,
            } = row.status.clone()
            else {
                unreachable!()
            };
            return refute(
                Stage::Extraction,
                Some(row.index.clone()),
                RefutationWitness::RankDeficient {
                    rank,
                    unknowns,
                    null_space,
                },
            );
        }
    }

    for n in MultiIndex::simplex(r, max_total_degree) {
        let expected = charlier_explicit(&n, &params).expect("arity matches");
        let diff = family
            .get(&n)
            .expect("within order")
            .sub(&expected)
            .expect("same step");
        if !diff.is_zero() {
            return refute(
                Stage::Comparison,
                Some(n),
                RefutationWitness::Residual(diff),
            );
        }
    }
    let warnings = parameter_warnings(&params);
    Identification::Identified { params, warnings }
}

/// `sum_{x=0}^{terms-1} x^(k,1) a^x / x!` in exact arithmetic, without the
/// `e^{-a}` normalization.
pub fn moment_partial_sum(a: &Rational, k: usize, terms: usize) -> Rational {
    let mut sum = Rational::zero();
    let mut weight = Rational::one();
    for x in 0..terms {
        if x > 0 {
            weight = weight * a / int(x as i64);
        }
        if x >= k {
            let ff = (0..k).fold(Rational::one(), |acc, i| acc * int((x - i) as i64));
            sum += ff * &weight;
        }
    }
    sum
}

/// `a^k` times the partial exponential sum `sum_{j<terms} a^j / j!`; the
/// exact value of [`moment_partial_sum`] after reindexing `x = j + k`,
/// used as a cross-check.
pub fn shifted_exponential(a: &Rational, k: usize, terms: usize) -> Rational {
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    for j in 0..terms.saturating_sub(k) {
        if j > 0 {
            term = term * a / int(j as i64);
        }
        sum += &term;
    }
    pow(a, k) * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::appell::{build_via_c, AppellSeed};
    use crate::charlier::charlier_family;
    use crate::poly::Step;
    use crate::rational::ratio;

    fn params(v: &[Rational]) -> CharlierParams {
        CharlierParams::new(v.to_vec()).unwrap()
    }

    #[test]
    fn moment_examples() {
        let s = Step::one();
        let l = MomentFunctional::new(ratio(1, 2)).unwrap();
        assert_eq!(l.moment(&FFPoly::one(&s)).unwrap(), int(1));
        assert_eq!(l.moment(&FFPoly::basis(2, &s)).unwrap(), ratio(1, 4));
        let l1 = MomentFunctional::new(int(1)).unwrap();
        let c10 = charlier_explicit(&MultiIndex::from([1, 0]), &params(&[int(1), int(2)])).unwrap();
        assert_eq!(l1.moment(&c10).unwrap(), int(0));
        let half = Step::new(ratio(1, 2)).unwrap();
        assert!(matches!(
            l.moment(&FFPoly::x(&half)),
            Err(Error::MomentBasis(_))
        ));
        assert!(MomentFunctional::new(int(0)).is_err());
    }

    #[test]
    fn moment_partial_sums_reindex() {
        for a in [ratio(1, 2), int(1), int(3)] {
            for k in 0..=4 {
                assert_eq!(
                    moment_partial_sum(&a, k, 12),
                    shifted_exponential(&a, k, 12)
                );
            }
        }
    }

    #[test]
    fn orthogonality_examples() {
        let p = params(&[int(1), int(2)]);
        let v = verify_multiple_orthogonality(&MultiIndex::from([1, 0]), &p).unwrap();
        assert!(v.holds() && v.normal());
        assert_eq!(v.conditions.len(), 1);

        let v = verify_multiple_orthogonality(&MultiIndex::from([0, 0]), &p).unwrap();
        assert!(v.conditions.is_empty() && v.holds());

        let p = params(&[int(1), int(3)]);
        let v = verify_multiple_orthogonality(&MultiIndex::from([2, 1]), &p).unwrap();
        assert_eq!(v.conditions.len(), 3);
        assert!(v.holds() && v.normal());
        assert!(v.warnings.is_empty());
    }

    #[test]
    fn orthogonality_flags_degenerate_parameters() {
        let v =
            verify_multiple_orthogonality(&MultiIndex::from([1, 1]), &params(&[int(2), int(2)]))
                .unwrap();
        assert_eq!(v.warnings, vec![Warning::RepeatedParameter]);
        let v =
            verify_multiple_orthogonality(&MultiIndex::from([1, 1]), &params(&[int(-2), int(2)]))
                .unwrap();
        assert_eq!(v.warnings, vec![Warning::NonPositiveParameter]);
    }

    #[test]
    fn extraction_on_charlier() {
        let fam = charlier_family(&params(&[int(1), int(2)]), 5);
        let c = extract_recurrence(&fam, 0, &Window::Simplex(4)).unwrap();
        assert!(c.all_solved());
        assert_eq!(c.e(1, 1), Some(int(3)));
        assert_eq!(c.f(1, 1), Some(int(1)));
        assert_eq!(c.g(1, 1), Some(int(2)));
        assert_eq!(c.e(0, 0), Some(int(1)));
        assert_eq!(c.f(0, 0), Some(int(0)));
        assert_eq!(c.g(0, 0), Some(int(0)));

        let t = extract_recurrence(&fam, 1, &Window::Simplex(4)).unwrap();
        assert_eq!(t.e(1, 1), Some(int(4)));
        assert_eq!(t.f(1, 1), Some(int(2)));
        assert_eq!(t.g(1, 1), Some(int(1)));
    }

    #[test]
    fn extraction_on_falling_factorials_is_rank_deficient() {
        let fam = Family::falling_factorials(&Step::one(), 2, 3);
        let row = extract_recurrence_at(&fam, &MultiIndex::from([1, 1]), 0).unwrap();
        let RowStatus::RankDeficient {
            rank,
            unknowns,
            null_space,
        } = &row.status
        else {
            panic!("expected rank deficiency, got {:?}", row.status)
        };
        assert_eq!((*rank, *unknowns), (2, 3));
        assert_eq!(null_space.len(), 1);
        // E = m + n is still determined, F and G individually are not
        assert_eq!(row.diagonal, Some(int(2)));
        assert_eq!(row.lower, vec![None, None]);
    }

    #[test]
    fn extraction_reports_a_missing_recurrence() {
        let s = Step::one();
        let seed =
            AppellSeed::from_fn(&s, 2, 4, |k| int(1 + k.get(0) as i64 * k.get(0) as i64)).unwrap();
        let fam = build_via_c(&seed).into_family();
        let c = extract_recurrence(&fam, 0, &Window::Simplex(3)).unwrap();
        assert!(c.failures().next().is_some());
    }

    #[test]
    fn constraint_examples() {
        let fam = charlier_family(&params(&[int(1), int(2)]), 5);
        let w = Window::Simplex(4);
        let c = extract_recurrence(&fam, 0, &w).unwrap();
        assert_eq!(
            check_appell_orthogonal_constraints(&c, &w),
            ConstraintVerdict::Satisfied {
                b0: int(1),
                params: vec![int(1), int(2)]
            }
        );
        let origin = Window::Indices(vec![MultiIndex::from([0, 0])]);
        assert!(matches!(
            check_appell_orthogonal_constraints(&c, &origin),
            ConstraintVerdict::InsufficientWindow { .. }
        ));

        let mut bad = c.clone();
        let row = bad.rows.get_mut(&MultiIndex::from([2, 1])).unwrap();
        row.lower[0] = Some(int(7));
        let ConstraintVerdict::Violated(v) = check_appell_orthogonal_constraints(&bad, &w) else {
            panic!("expected a violation")
        };
        assert_eq!(v.index, MultiIndex::from([2, 1]));
        assert_eq!(v.constraint, Constraint::Lower(0));
    }

    #[test]
    fn identification_examples() {
        let p = params(&[ratio(1, 2), int(5)]);
        let fam = build_via_c(&AppellSeed::charlier(&p, 5).unwrap()).into_family();
        assert_eq!(
            charlier_identification(&fam, 5),
            Identification::Identified {
                params: p,
                warnings: vec![]
            }
        );

        let fam = Family::falling_factorials(&Step::one(), 2, 5);
        let Identification::Refuted { stage, witness, .. } = charlier_identification(&fam, 5)
        else {
            panic!("falling factorials must be refuted")
        };
        assert_eq!(stage, Stage::Extraction);
        assert!(matches!(witness, RefutationWitness::RankDeficient { .. }));

        let fam = charlier_family(&params(&[int(1), int(1)]), 5);
        assert_eq!(
            charlier_identification(&fam, 5),
            Identification::Identified {
                params: params(&[int(1), int(1)]),
                warnings: vec![Warning::RepeatedParameter]
            }
        );
    }

    #[test]
    fn identification_refutes_other_steps_and_short_tables() {
        let half = Step::new(ratio(1, 2)).unwrap();
        let fam = Family::falling_factorials(&half, 2, 4);
        assert!(matches!(
            charlier_identification(&fam, 4),
            Identification::Refuted {
                stage: Stage::Basis,
                ..
            }
        ));
        let fam = charlier_family(&params(&[int(1), int(2)]), 2);
        assert!(matches!(
            charlier_identification(&fam, 2),
            Identification::Refuted {
                stage: Stage::Window,
                ..
            }
        ));
    }
}

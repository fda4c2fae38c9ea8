//! Exact rational simplex with Bland's rule.
//!
//! Problems have the shape `A z = b, l <= z <= u` with optional bounds. Every
//! feasible answer carries a witness that re-substitutes exactly, and every
//! infeasible answer carries a certificate: either an empty variable box, or
//! row multipliers `y` such that `y.b` exceeds the maximum of `y.A z` over the
//! box.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::linalg::{RatMat, RatVec};
use super::rat::{self, Rat};
use crate::error::{Error, Result};

/// Lower and upper bound of one variable; `None` is an infinite bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VarBound {
    #[serde(serialize_with = "serialize_opt")]
    pub lower: Option<Rat>,
    #[serde(serialize_with = "serialize_opt")]
    pub upper: Option<Rat>,
}

fn serialize_opt<S: serde::Serializer>(v: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&rat::format_rat(r)),
        None => s.serialize_none(),
    }
}

impl VarBound {
    pub fn between(lower: Rat, upper: Rat) -> Self {
        VarBound {
            lower: Some(lower),
            upper: Some(upper),
        }
    }

    pub fn nonnegative() -> Self {
        VarBound {
            lower: Some(Rat::zero()),
            upper: None,
        }
    }

    pub fn free() -> Self {
        VarBound {
            lower: None,
            upper: None,
        }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lower.as_ref().is_none_or(|l| l <= x) && self.upper.as_ref().is_none_or(|u| x <= u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityProblem {
    pub equalities: RatMat,
    pub rhs: RatVec,
    pub bounds: Vec<VarBound>,
}

impl FeasibilityProblem {
    pub fn new(equalities: RatMat, rhs: RatVec, bounds: Vec<VarBound>) -> Result<Self> {
        if rhs.dim() != equalities.rows() {
            return Err(Error::DimensionMismatch {
                expected: equalities.rows(),
                found: rhs.dim(),
            });
        }
        if bounds.len() != equalities.cols() {
            return Err(Error::DimensionMismatch {
                expected: equalities.cols(),
                found: bounds.len(),
            });
        }
        Ok(FeasibilityProblem {
            equalities,
            rhs,
            bounds,
        })
    }

    /// `A z = v` with `lower <= z <= upper` coordinatewise.
    pub fn boxed(a: &RatMat, v: &RatVec, lower: &RatVec, upper: &RatVec) -> Result<Self> {
        if lower.dim() != a.cols() || upper.dim() != a.cols() {
            return Err(Error::DimensionMismatch {
                expected: a.cols(),
                found: lower.dim().min(upper.dim()),
            });
        }
        let bounds = lower
            .iter()
            .zip(upper.iter())
            .map(|(l, u)| VarBound::between(l.clone(), u.clone()))
            .collect();
        Self::new(a.clone(), v.clone(), bounds)
    }

    pub fn num_vars(&self) -> usize {
        self.equalities.cols()
    }

    /// Exact re-substitution of a candidate point.
    pub fn is_satisfied_by(&self, z: &RatVec) -> bool {
        z.dim() == self.num_vars()
            && self.bounds.iter().zip(z.iter()).all(|(b, x)| b.contains(x))
            && self.equalities.apply(z).map(|az| az == self.rhs).unwrap_or(false)
    }
}

/// Why a problem has no solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Infeasibility {
    /// Variable `var` has lower bound above its upper bound.
    EmptyBounds { var: usize },
    /// `multipliers . rhs` is strictly above `max { multipliers . A z : z in box }`.
    RowCombination {
        multipliers: RatVec,
        #[serde(with = "rat::as_string")]
        combined_rhs: Rat,
        #[serde(with = "rat::as_string")]
        box_max: Rat,
    },
}

impl Infeasibility {
    /// Independently re-checks the certificate against the problem.
    pub fn verify(&self, problem: &FeasibilityProblem) -> bool {
        match self {
            Infeasibility::EmptyBounds { var } => match problem.bounds.get(*var) {
                Some(VarBound {
                    lower: Some(l),
                    upper: Some(u),
                }) => l > u,
                _ => false,
            },
            Infeasibility::RowCombination { multipliers, .. } => {
                if multipliers.dim() != problem.equalities.rows() {
                    return false;
                }
                let Ok(combined_rhs) = multipliers.dot(&problem.rhs) else {
                    return false;
                };
                let Ok(row) = problem.equalities.transpose().apply(multipliers) else {
                    return false;
                };
                match box_maximum(&row, &problem.bounds) {
                    Some(max) => combined_rhs > max,
                    None => false,
                }
            }
        }
    }
}

/// Maximum of `c.z` over the variable box, or `None` when unbounded.
fn box_maximum(c: &RatVec, bounds: &[VarBound]) -> Option<Rat> {
    let mut total = Rat::zero();
    for (coef, bound) in c.iter().zip(bounds) {
        if coef.is_zero() {
            continue;
        }
        let end = if coef.is_positive() { &bound.upper } else { &bound.lower };
        total += coef * end.as_ref()?;
    }
    Some(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(RatVec),
    Infeasible(Infeasibility),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&RatVec> {
        match self {
            Feasibility::Feasible(z) => Some(z),
            Feasibility::Infeasible(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rat, point: RatVec },
    Infeasible(Infeasibility),
    Unbounded,
}

/// How an original variable is expressed through nonnegative columns.
enum Substitution {
    Shift { lower: Rat, col: usize },
    Reflect { upper: Rat, col: usize },
    Split { pos: usize, neg: usize },
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let factor = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Rat], c: usize) -> Rat {
        let mut d = cost[c].clone();
        for (r, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.rows[r][c].is_zero() {
                d -= &cost[b] * &self.rows[r][c];
            }
        }
        d
    }

    fn objective(&self, cost: &[Rat]) -> Rat {
        self.basis
            .iter()
            .zip(&self.rhs)
            .map(|(&b, v)| &cost[b] * v)
            .sum()
    }

    /// Bland's rule: smallest improving column enters, ties in the ratio
    /// test go to the smallest basic column. Returns `false` if unbounded.
    fn run(&mut self, cost: &[Rat], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&c| {
                !self.basis.contains(&c) && self.reduced_cost(cost, c).is_negative()
            });
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

struct StandardForm {
    subs: Vec<Substitution>,
    structural: usize,
    eq_rows: usize,
    tableau: Tableau,
    signs: Vec<Rat>,
}

fn to_standard_form(problem: &FeasibilityProblem) -> std::result::Result<StandardForm, Infeasibility> {
    let a = &problem.equalities;
    let n = a.cols();
    let m = a.rows();
    let mut subs = Vec::with_capacity(n);
    let mut next = 0usize;
    let mut upper_rows: Vec<(usize, Rat)> = Vec::new();
    for (j, bound) in problem.bounds.iter().enumerate() {
        match (&bound.lower, &bound.upper) {
            (Some(l), Some(u)) => {
                if l > u {
                    return Err(Infeasibility::EmptyBounds { var: j });
                }
                subs.push(Substitution::Shift {
                    lower: l.clone(),
                    col: next,
                });
                upper_rows.push((next, u - l));
                next += 1;
            }
            (Some(l), None) => {
                subs.push(Substitution::Shift {
                    lower: l.clone(),
                    col: next,
                });
                next += 1;
            }
            (None, Some(u)) => {
                subs.push(Substitution::Reflect {
                    upper: u.clone(),
                    col: next,
                });
                next += 1;
            }
            (None, None) => {
                subs.push(Substitution::Split {
                    pos: next,
                    neg: next + 1,
                });
                next += 2;
            }
        }
    }
    let slack_start = next;
    let structural = slack_start + upper_rows.len();
    let total_rows = m + upper_rows.len();
    let width = structural + total_rows;
    let mut rows = vec![vec![Rat::zero(); width]; total_rows];
    let mut rhs = vec![Rat::zero(); total_rows];
    for i in 0..m {
        rhs[i] = problem.rhs[i].clone();
        for (j, sub) in subs.iter().enumerate() {
            let coef = a.get(i, j);
            if coef.is_zero() {
                continue;
            }
            match sub {
                Substitution::Shift { lower, col } => {
                    rows[i][*col] = coef.clone();
                    rhs[i] -= coef * lower;
                }
                Substitution::Reflect { upper, col } => {
                    rows[i][*col] = -coef;
                    rhs[i] -= coef * upper;
                }
                Substitution::Split { pos, neg } => {
                    rows[i][*pos] = coef.clone();
                    rows[i][*neg] = -coef;
                }
            }
        }
    }
    for (k, (col, width_bound)) in upper_rows.into_iter().enumerate() {
        let r = m + k;
        rows[r][col] = Rat::one();
        rows[r][slack_start + k] = Rat::one();
        rhs[r] = width_bound;
    }
    let mut signs = vec![Rat::one(); total_rows];
    for r in 0..total_rows {
        if rhs[r].is_negative() {
            signs[r] = -Rat::one();
            for x in rows[r].iter_mut() {
                *x = -x.clone();
            }
            rhs[r] = -rhs[r].clone();
        }
        rows[r][structural + r] = Rat::one();
    }
    let basis = (structural..structural + total_rows).collect();
    Ok(StandardForm {
        subs,
        structural,
        eq_rows: m,
        tableau: Tableau { rows, rhs, basis },
        signs,
    })
}

impl StandardForm {
    fn phase_one_cost(&self) -> Vec<Rat> {
        let width = self.structural + self.tableau.rows.len();
        (0..width)
            .map(|c| if c < self.structural { Rat::zero() } else { Rat::one() })
            .collect()
    }

    fn point(&self) -> RatVec {
        let mut y = vec![Rat::zero(); self.structural + self.tableau.rows.len()];
        for (r, &b) in self.tableau.basis.iter().enumerate() {
            y[b] = self.tableau.rhs[r].clone();
        }
        RatVec::new(
            self.subs
                .iter()
                .map(|s| match s {
                    Substitution::Shift { lower, col } => lower + &y[*col],
                    Substitution::Reflect { upper, col } => upper - &y[*col],
                    Substitution::Split { pos, neg } => &y[*pos] - &y[*neg],
                })
                .collect(),
        )
    }

    /// Row multipliers from the phase-one duals, in the original orientation.
    fn farkas_multipliers(&self, cost: &[Rat]) -> RatVec {
        RatVec::new(
            (0..self.eq_rows)
                .map(|i| {
                    let art = self.structural + i;
                    let dual: Rat = self
                        .tableau
                        .basis
                        .iter()
                        .enumerate()
                        .map(|(r, &b)| &cost[b] * &self.tableau.rows[r][art])
                        .sum();
                    &self.signs[i] * dual
                })
                .collect(),
        )
    }

    fn phase_one(&mut self, problem: &FeasibilityProblem) -> Option<Infeasibility> {
        let cost = self.phase_one_cost();
        let allowed = cost.len();
        self.tableau.run(&cost, allowed);
        if self.tableau.objective(&cost).is_zero() {
            return None;
        }
        let multipliers = self.farkas_multipliers(&cost);
        let combined_rhs = multipliers.dot(&problem.rhs).expect("row count");
        let row = problem
            .equalities
            .transpose()
            .apply(&multipliers)
            .expect("row count");
        let box_max = box_maximum(&row, &problem.bounds).expect("phase-one duals give a bounded combination");
        Some(Infeasibility::RowCombination {
            multipliers,
            combined_rhs,
            box_max,
        })
    }

    /// Pivots basic artificials out after a feasible phase one; rows that
    /// cannot be cleared are redundant and dropped.
    fn expel_artificials(&mut self) {
        let mut r = 0;
        while r < self.tableau.rows.len() {
            if self.tableau.basis[r] < self.structural {
                r += 1;
                continue;
            }
            match (0..self.structural).find(|&c| !self.tableau.rows[r][c].is_zero()) {
                Some(c) => {
                    self.tableau.pivot(r, c);
                    r += 1;
                }
                None => {
                    self.tableau.rows.remove(r);
                    self.tableau.rhs.remove(r);
                    self.tableau.basis.remove(r);
                }
            }
        }
    }
}

/// Decides `A z = b, l <= z <= u` exactly.
pub fn lp_feasible(problem: &FeasibilityProblem) -> Result<Feasibility> {
    problem_dims(problem)?;
    let mut form = match to_standard_form(problem) {
        Ok(f) => f,
        Err(cert) => return Ok(Feasibility::Infeasible(cert)),
    };
    if let Some(cert) = form.phase_one(problem) {
        debug_assert!(cert.verify(problem));
        return Ok(Feasibility::Infeasible(cert));
    }
    let z = form.point();
    debug_assert!(problem.is_satisfied_by(&z));
    Ok(Feasibility::Feasible(z))
}

/// Minimizes `objective . z` over the feasible set.
pub fn minimize(problem: &FeasibilityProblem, objective: &RatVec) -> Result<LpOutcome> {
    problem_dims(problem)?;
    if objective.dim() != problem.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: problem.num_vars(),
            found: objective.dim(),
        });
    }
    let mut form = match to_standard_form(problem) {
        Ok(f) => f,
        Err(cert) => return Ok(LpOutcome::Infeasible(cert)),
    };
    if let Some(cert) = form.phase_one(problem) {
        return Ok(LpOutcome::Infeasible(cert));
    }
    form.expel_artificials();
    let width = form.structural + form.signs.len();
    let mut cost = vec![Rat::zero(); width];
    for (j, sub) in form.subs.iter().enumerate() {
        let c = &objective[j];
        match sub {
            Substitution::Shift { col, .. } => cost[*col] = c.clone(),
            Substitution::Reflect { col, .. } => cost[*col] = -c,
            Substitution::Split { pos, neg } => {
                cost[*pos] = c.clone();
                cost[*neg] = -c;
            }
        }
    }
    if !form.tableau.run(&cost, form.structural) {
        return Ok(LpOutcome::Unbounded);
    }
    let point = form.point();
    let value = objective.dot(&point)?;
    Ok(LpOutcome::Optimal { value, point })
}

fn problem_dims(problem: &FeasibilityProblem) -> Result<()> {
    if problem.rhs.dim() != problem.equalities.rows() {
        return Err(Error::DimensionMismatch {
            expected: problem.equalities.rows(),
            found: problem.rhs.dim(),
        });
    }
    if problem.bounds.len() != problem.equalities.cols() {
        return Err(Error::DimensionMismatch {
            expected: problem.equalities.cols(),
            found: problem.bounds.len(),
        });
    }
    Ok(())
}

/// An affine expression `coeffs . x + constant`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineTerm {
    pub coeffs: RatVec,
    pub constant: Rat,
}

impl AffineTerm {
    pub fn new(coeffs: RatVec, constant: Rat) -> Self {
        AffineTerm { coeffs, constant }
    }

    pub fn eval(&self, x: &RatVec) -> Result<Rat> {
        Ok(self.coeffs.dot(x)? + &self.constant)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinMax {
    pub value: Rat,
    pub argmin: RatVec,
}

/// Exact `min_x max_k |term_k(x)|` over the variable box, via the epigraph LP
/// `t >= term_k(x)`, `t >= -term_k(x)`.
pub fn minimize_linear_over_max(terms: &[AffineTerm], vars: &[VarBound]) -> Result<MinMax> {
    if terms.is_empty() {
        return Err(Error::PreconditionViolated("need at least one term".into()));
    }
    let n = vars.len();
    for term in terms {
        if term.coeffs.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: term.coeffs.dim(),
            });
        }
    }
    // columns: x (n), t, one slack per inequality
    let k = terms.len();
    let cols = n + 1 + 2 * k;
    let mut a = RatMat::zeros(2 * k, cols);
    let mut rhs = Vec::with_capacity(2 * k);
    for (idx, term) in terms.iter().enumerate() {
        for sign in [0usize, 1] {
            let r = 2 * idx + sign;
            let s = if sign == 0 { Rat::one() } else { -Rat::one() };
            // s*(a.x + c) - t + slack = 0
            for j in 0..n {
                a.set(r, j, &s * &term.coeffs[j]);
            }
            a.set(r, n, -Rat::one());
            a.set(r, n + 1 + r, Rat::one());
            rhs.push(-(&s * &term.constant));
        }
    }
    let mut bounds = vars.to_vec();
    bounds.push(VarBound::free());
    bounds.extend((0..2 * k).map(|_| VarBound::nonnegative()));
    let problem = FeasibilityProblem::new(a, RatVec::new(rhs), bounds)?;
    let mut objective = RatVec::zeros(cols);
    objective.set(n, Rat::one());
    match minimize(&problem, &objective)? {
        LpOutcome::Optimal { value, point } => Ok(MinMax {
            value,
            argmin: RatVec::new(point.entries()[..n].to_vec()),
        }),
        LpOutcome::Unbounded => Err(Error::Unbounded),
        LpOutcome::Infeasible(_) => Err(Error::PreconditionViolated("variable box is empty".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rat::{int, rat};

    fn unit_box(a: RatMat, v: RatVec, upper: RatVec) -> FeasibilityProblem {
        let lower = RatVec::zeros(a.cols());
        FeasibilityProblem::boxed(&a, &v, &lower, &upper).unwrap()
    }

    #[test]
    fn midpoint_is_feasible() {
        let a = RatMat::from_rows(2, vec![vec![rat(1, 2), rat(1, 2)]]).unwrap();
        let p = unit_box(a, RatVec::new(vec![rat(1, 2)]), RatVec::from_ints(&[1, 1]));
        let z = lp_feasible(&p).unwrap();
        let w = z.witness().unwrap();
        assert!(p.is_satisfied_by(w));
    }

    #[test]
    fn bound_violation_gives_certificate() {
        let a = RatMat::from_int_rows(&[&[1]]);
        let p = unit_box(a, RatVec::from_ints(&[2]), RatVec::from_ints(&[1]));
        match lp_feasible(&p).unwrap() {
            Feasibility::Infeasible(cert) => assert!(cert.verify(&p)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn truncated_average_vertex_is_reached_by_first_unit() {
        let a = RatMat::from_rows(
            4,
            vec![
                vec![rat(1, 2), rat(1, 2), int(0), int(0)],
                vec![int(0), int(0), int(1), int(0)],
                vec![int(0), int(0), int(0), int(1)],
            ],
        )
        .unwrap();
        let v = RatVec::new(vec![rat(1, 2), int(0), int(0)]);
        let p = unit_box(a, v, RatVec::unit(4, 0));
        let z = lp_feasible(&p).unwrap();
        // direct substitution: z = e1 is the only point of the box hitting v
        assert_eq!(z.witness().unwrap(), &RatVec::unit(4, 0));
    }

    #[test]
    fn empty_box_is_reported() {
        let p = FeasibilityProblem::new(
            RatMat::zeros(0, 1),
            RatVec::zeros(0),
            vec![VarBound::between(int(2), int(1))],
        )
        .unwrap();
        assert_eq!(
            lp_feasible(&p).unwrap(),
            Feasibility::Infeasible(Infeasibility::EmptyBounds { var: 0 })
        );
    }

    #[test]
    fn free_and_half_bounded_variables() {
        // x - y = -3, x <= 1, y free  ->  feasible
        let a = RatMat::from_int_rows(&[&[1, -1]]);
        let p = FeasibilityProblem::new(
            a,
            RatVec::from_ints(&[-3]),
            vec![
                VarBound {
                    lower: None,
                    upper: Some(int(1)),
                },
                VarBound::free(),
            ],
        )
        .unwrap();
        let z = lp_feasible(&p).unwrap();
        assert!(p.is_satisfied_by(z.witness().unwrap()));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = RatMat::from_int_rows(&[&[1, 1]]);
        let err = FeasibilityProblem::new(a, RatVec::from_ints(&[1, 2]), vec![VarBound::free(); 2]);
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn minimize_detects_unbounded() {
        let a = RatMat::zeros(0, 1);
        let p = FeasibilityProblem::new(a, RatVec::zeros(0), vec![VarBound::free()]).unwrap();
        assert_eq!(minimize(&p, &RatVec::from_ints(&[1])).unwrap(), LpOutcome::Unbounded);
    }

    fn term(coeffs: &[i64], constant: Rat) -> AffineTerm {
        AffineTerm::new(RatVec::from_ints(coeffs), constant)
    }

    #[test]
    fn max_of_shifted_pair_and_half_sum() {
        // max(|a-1|, |b-1|, |a+b|/2): a=b=1/2 attains 1/2, and 2t >= a+b >= 2-2t
        let terms = vec![
            term(&[1, 0], int(-1)),
            term(&[0, 1], int(-1)),
            AffineTerm::new(RatVec::new(vec![rat(1, 2), rat(1, 2)]), int(0)),
        ];
        let out = minimize_linear_over_max(&terms, &[VarBound::free(), VarBound::free()]).unwrap();
        assert_eq!(out.value, rat(1, 2));
        for t in &terms {
            assert!(t.eval(&out.argmin).unwrap().abs() <= out.value);
        }
    }

    #[test]
    fn max_abs_trivial_cases() {
        let out = minimize_linear_over_max(&[term(&[1], int(0))], &[VarBound::free()]).unwrap();
        assert_eq!(out.value, int(0));
        let out = minimize_linear_over_max(
            &[term(&[1], int(-1)), term(&[1], int(1))],
            &[VarBound::free()],
        )
        .unwrap();
        assert_eq!(out.value, int(1));
        assert!(minimize_linear_over_max(&[], &[]).is_err());
    }
}

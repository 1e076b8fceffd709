//! Exact linear programming.
//!
//! A dense two-phase simplex over arbitrary-precision rationals with Bland's
//! pivoting rule (terminating, no cycling).  Infeasible problems come back
//! with a Farkas certificate: an exact nonnegative recombination of the
//! constraints and variable bounds that derives `0 <= negative`.

use crate::rational::Rational;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `objective . x` subject to linear constraints and per-variable bounds.
///
/// Variables are free unless bounds say otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<(Option<Rational>, Option<Rational>)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("constraint {index} has {got} coefficients, expected {expected}")]
    ConstraintLength {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("bounds list has {got} entries, expected {expected}")]
    BoundsLength { got: usize, expected: usize },
}

impl LpProblem {
    /// A problem over free variables with no constraints yet.
    pub fn new(objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LpProblem {
            objective,
            constraints: Vec::new(),
            bounds: vec![(None, None); n],
        }
    }

    /// A problem whose variables all carry a zero lower bound.
    pub fn with_nonnegative_vars(objective: Vec<Rational>) -> Self {
        let n = objective.len();
        let mut p = Self::new(objective);
        p.bounds = vec![(Some(Rational::zero()), None); n];
        let _ = n;
        p
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        for (index, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(LpError::ConstraintLength {
                    index,
                    got: c.coeffs.len(),
                    expected: n,
                });
            }
        }
        if self.bounds.len() != n {
            return Err(LpError::BoundsLength {
                got: self.bounds.len(),
                expected: n,
            });
        }
        Ok(())
    }

    /// Exact feasibility check of a candidate point.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        for c in &self.constraints {
            let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            let ok = match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            };
            if !ok {
                return false;
            }
        }
        for (j, (lo, hi)) in self.bounds.iter().enumerate() {
            if let Some(l) = lo {
                if &x[j] < l {
                    return false;
                }
            }
            if let Some(u) = hi {
                if &x[j] > u {
                    return false;
                }
            }
        }
        true
    }
}

/// Farkas proof of infeasibility.
///
/// Summing `constraint_multipliers[k]` times constraint `k` (signs matched to
/// the relations: `>= 0` for `<=` rows, `<= 0` for `>=` rows, free for `=`
/// rows), `lower_bound_multipliers[j] <= 0` times `x_j >= l_j`, and
/// `upper_bound_multipliers[j] >= 0` times `x_j <= u_j` cancels every
/// variable and leaves `0 <= negative`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfeasibilityCertificate {
    pub constraint_multipliers: Vec<Rational>,
    pub lower_bound_multipliers: Vec<Rational>,
    pub upper_bound_multipliers: Vec<Rational>,
}

impl InfeasibilityCertificate {
    /// Recombines the certificate with the problem in exact arithmetic.
    pub fn verify(&self, problem: &LpProblem) -> bool {
        let n = problem.num_vars();
        if self.constraint_multipliers.len() != problem.constraints.len()
            || self.lower_bound_multipliers.len() != n
            || self.upper_bound_multipliers.len() != n
        {
            return false;
        }
        for (mu, c) in self.constraint_multipliers.iter().zip(&problem.constraints) {
            let sign_ok = match c.relation {
                Relation::Le => !mu.is_negative(),
                Relation::Ge => !mu.is_positive(),
                Relation::Eq => true,
            };
            if !sign_ok {
                return false;
            }
        }
        let mut total = Rational::zero();
        for j in 0..n {
            let w = &self.lower_bound_multipliers[j];
            let v = &self.upper_bound_multipliers[j];
            if w.is_positive() || v.is_negative() {
                return false;
            }
            match (&problem.bounds[j].0, w.is_zero()) {
                (None, false) => return false,
                (Some(l), _) => total += w * l,
                _ => {}
            }
            match (&problem.bounds[j].1, v.is_zero()) {
                (None, false) => return false,
                (Some(u), _) => total += v * u,
                _ => {}
            }
            let mut coeff = w + v;
            for (mu, c) in self.constraint_multipliers.iter().zip(&problem.constraints) {
                coeff += mu * &c.coeffs[j];
            }
            if !coeff.is_zero() {
                return false;
            }
        }
        for (mu, c) in self.constraint_multipliers.iter().zip(&problem.constraints) {
            total += mu * &c.rhs;
        }
        total.is_negative()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        solution: Vec<Rational>,
    },
    Infeasible {
        certificate: InfeasibilityCertificate,
    },
    Unbounded,
}

// --- standard-form bookkeeping ---

#[derive(Debug, Clone)]
enum StdVar {
    /// x_orig = shift + x', x' >= 0
    Shifted { orig: usize, shift: Rational },
    /// x_orig = offset - x', x' >= 0
    Mirrored { orig: usize, offset: Rational },
    /// x_orig = x'_pos - x'_neg
    SplitPos { orig: usize },
    SplitNeg { orig: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RowSource {
    Constraint(usize),
    /// Upper-bound row `x'_j <= u_j - l_j` for a doubly bounded variable.
    UpperBound(usize),
}

struct Tableau {
    /// rows x (cols + rhs); T[i][width-1] is the right-hand side
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    allowed: Vec<bool>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, row: usize) -> &Rational {
        &self.t[row][self.width - 1]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col].clone();
        for x in &mut self.t[row] {
            *x /= &p;
        }
        for i in 0..self.t.len() {
            if i != row && !self.t[i][col].is_zero() {
                let factor = self.t[i][col].clone();
                for c in 0..self.width {
                    let delta = &factor * &self.t[row][c];
                    self.t[i][c] -= delta;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule simplex, maximizing `costs . x`.  Returns the dual-style
    /// multipliers are left implicit; `None` means unbounded.
    fn maximize(&mut self, costs: &[Rational]) -> Option<()> {
        loop {
            // reduced costs r_j = c_j - sum_i c_basis[i] T[i][j]
            let mut entering = None;
            for j in 0..self.width - 1 {
                if !self.allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut r = costs[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !costs[b].is_zero() {
                        r -= &costs[b] * &self.t[i][j];
                    }
                }
                if r.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else {
                return Some(());
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                if self.t[i][col].is_positive() {
                    let ratio = self.rhs(i) / &self.t[i][col];
                    let better = match &leaving {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else {
                return None;
            };
            self.pivot(row, col);
        }
    }

    fn objective_value(&self, costs: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &b)| &costs[b] * self.rhs(i))
            .sum()
    }
}

/// Exact simplex solve.
pub fn lp_solve(problem: &LpProblem, sense: Sense) -> Result<LpOutcome, LpError> {
    problem.validate()?;
    let n = problem.num_vars();

    // crossed bounds certify infeasibility on their own
    for (j, (lo, hi)) in problem.bounds.iter().enumerate() {
        if let (Some(l), Some(u)) = (lo, hi) {
            if l > u {
                let mut lower = vec![Rational::zero(); n];
                let mut upper = vec![Rational::zero(); n];
                lower[j] = -Rational::from_integer(1.into());
                upper[j] = Rational::from_integer(1.into());
                let certificate = InfeasibilityCertificate {
                    constraint_multipliers: vec![Rational::zero(); problem.constraints.len()],
                    lower_bound_multipliers: lower,
                    upper_bound_multipliers: upper,
                };
                debug_assert!(certificate.verify(problem));
                return Ok(LpOutcome::Infeasible { certificate });
            }
        }
    }

    // standard-form variables
    let mut std_vars = Vec::new();
    let mut upper_rows = Vec::new(); // (orig var, std var index, u - l)
    for (j, (lo, hi)) in problem.bounds.iter().enumerate() {
        match (lo, hi) {
            (Some(l), hi) => {
                let idx = std_vars.len();
                std_vars.push(StdVar::Shifted {
                    orig: j,
                    shift: l.clone(),
                });
                if let Some(u) = hi {
                    upper_rows.push((j, idx, u - l));
                }
            }
            (None, Some(u)) => std_vars.push(StdVar::Mirrored {
                orig: j,
                offset: u.clone(),
            }),
            (None, None) => {
                std_vars.push(StdVar::SplitPos { orig: j });
                std_vars.push(StdVar::SplitNeg { orig: j });
            }
        }
    }
    let nstd = std_vars.len();

    // rows in "coeffs REL rhs" form over standard variables
    struct Row {
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
        source: RowSource,
    }
    let mut rows = Vec::new();
    for (k, c) in problem.constraints.iter().enumerate() {
        let mut coeffs = vec![Rational::zero(); nstd];
        let mut rhs = c.rhs.clone();
        for (sv, var) in std_vars.iter().enumerate() {
            match var {
                StdVar::Shifted { orig, shift } => {
                    coeffs[sv] = c.coeffs[*orig].clone();
                    rhs -= &c.coeffs[*orig] * shift;
                }
                StdVar::Mirrored { orig, offset } => {
                    coeffs[sv] = -c.coeffs[*orig].clone();
                    rhs -= &c.coeffs[*orig] * offset;
                }
                StdVar::SplitPos { orig } => coeffs[sv] = c.coeffs[*orig].clone(),
                StdVar::SplitNeg { orig } => coeffs[sv] = -c.coeffs[*orig].clone(),
            }
        }
        rows.push(Row {
            coeffs,
            relation: c.relation,
            rhs,
            source: RowSource::Constraint(k),
        });
    }
    for (j, sv, limit) in &upper_rows {
        let mut coeffs = vec![Rational::zero(); nstd];
        coeffs[*sv] = Rational::from_integer(1.into());
        rows.push(Row {
            coeffs,
            relation: Relation::Le,
            rhs: limit.clone(),
            source: RowSource::UpperBound(*j),
        });
    }

    // equality standard form: slacks, sign normalization, artificials
    let m = rows.len();
    let num_slacks = rows
        .iter()
        .filter(|r| r.relation != Relation::Eq)
        .count();
    let width = nstd + num_slacks + m + 1;
    let mut t = vec![vec![Rational::zero(); width]; m];
    let mut signs = Vec::with_capacity(m);
    let mut slack_at = 0;
    for (i, row) in rows.iter().enumerate() {
        let negate = row.rhs.is_negative();
        let sigma = if negate { -1i64 } else { 1i64 };
        signs.push(sigma);
        for (sv, a) in row.coeffs.iter().enumerate() {
            t[i][sv] = if negate { -a.clone() } else { a.clone() };
        }
        if row.relation != Relation::Eq {
            let s = match row.relation {
                Relation::Le => Rational::from_integer(1.into()),
                Relation::Ge => Rational::from_integer((-1).into()),
                Relation::Eq => unreachable!(),
            };
            t[i][nstd + slack_at] = if negate { -s } else { s };
            slack_at += 1;
        }
        t[i][nstd + num_slacks + i] = Rational::from_integer(1.into());
        t[i][width - 1] = if negate {
            -row.rhs.clone()
        } else {
            row.rhs.clone()
        };
    }

    let mut tab = Tableau {
        t,
        basis: (0..m).map(|i| nstd + num_slacks + i).collect(),
        allowed: vec![true; width - 1],
        width,
    };

    // phase 1: maximize -sum(artificials)
    let mut phase1 = vec![Rational::zero(); width - 1];
    for a in nstd + num_slacks..width - 1 {
        phase1[a] = Rational::from_integer((-1).into());
    }
    tab.maximize(&phase1)
        .expect("phase 1 objective is bounded above by zero");

    if tab.objective_value(&phase1).is_negative() {
        // infeasible: dual multipliers off the artificial columns
        let art = |i: usize| nstd + num_slacks + i;
        let mut nu = vec![Rational::zero(); m];
        for (i, _) in rows.iter().enumerate() {
            let mut y = Rational::zero();
            for (r, &b) in tab.basis.iter().enumerate() {
                if !phase1[b].is_zero() {
                    y += &phase1[b] * &tab.t[r][art(i)];
                }
            }
            // undo the sign normalization
            nu[i] = if signs[i] < 0 { -y } else { y };
        }

        let mut constraint_multipliers = vec![Rational::zero(); problem.constraints.len()];
        let mut lower = vec![Rational::zero(); n];
        let mut upper = vec![Rational::zero(); n];
        for (i, row) in rows.iter().enumerate() {
            match row.source {
                RowSource::Constraint(k) => constraint_multipliers[k] = nu[i].clone(),
                RowSource::UpperBound(j) => upper[j] = nu[i].clone(),
            }
        }
        // balance per-variable coefficients against the bounds
        for (j, (lo, hi)) in problem.bounds.iter().enumerate() {
            let mut g = upper[j].clone();
            for (mu, c) in constraint_multipliers.iter().zip(&problem.constraints) {
                g += mu * &c.coeffs[j];
            }
            if g.is_positive() {
                debug_assert!(lo.is_some());
                lower[j] = -g;
            } else if g.is_negative() {
                debug_assert!(hi.is_some());
                upper[j] -= g;
            }
        }
        let certificate = InfeasibilityCertificate {
            constraint_multipliers,
            lower_bound_multipliers: lower,
            upper_bound_multipliers: upper,
        };
        debug_assert!(certificate.verify(problem));
        return Ok(LpOutcome::Infeasible { certificate });
    }

    // drive leftover artificials out of the basis
    let art_start = nstd + num_slacks;
    let mut drop_rows = Vec::new();
    for i in 0..tab.t.len() {
        if tab.basis[i] >= art_start {
            let col = (0..art_start).find(|&c| !tab.t[i][c].is_zero());
            match col {
                Some(c) => tab.pivot(i, c),
                None => drop_rows.push(i), // redundant 0 = 0 row
            }
        }
    }
    for &i in drop_rows.iter().rev() {
        tab.t.remove(i);
        tab.basis.remove(i);
    }
    for a in art_start..width - 1 {
        tab.allowed[a] = false;
    }

    // phase 2
    let direction = match sense {
        Sense::Maximize => Rational::from_integer(1.into()),
        Sense::Minimize => Rational::from_integer((-1).into()),
    };
    let mut phase2 = vec![Rational::zero(); width - 1];
    for (sv, var) in std_vars.iter().enumerate() {
        let c = match var {
            StdVar::Shifted { orig, .. } | StdVar::SplitPos { orig } => {
                problem.objective[*orig].clone()
            }
            StdVar::Mirrored { orig, .. } | StdVar::SplitNeg { orig } => {
                -problem.objective[*orig].clone()
            }
        };
        phase2[sv] = &direction * c;
    }
    if tab.maximize(&phase2).is_none() {
        return Ok(LpOutcome::Unbounded);
    }

    // read out the standard solution, map back to original variables
    let mut std_val = vec![Rational::zero(); nstd];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < nstd {
            std_val[b] = tab.rhs(i).clone();
        }
    }
    let mut solution = vec![Rational::zero(); n];
    for (sv, var) in std_vars.iter().enumerate() {
        match var {
            StdVar::Shifted { orig, shift } => solution[*orig] = shift + &std_val[sv],
            StdVar::Mirrored { orig, offset } => solution[*orig] = offset - &std_val[sv],
            StdVar::SplitPos { orig } => solution[*orig] += &std_val[sv],
            StdVar::SplitNeg { orig } => solution[*orig] -= &std_val[sv],
        }
    }
    let value: Rational = problem
        .objective
        .iter()
        .zip(&solution)
        .map(|(c, x)| c * x)
        .sum();
    debug_assert!(problem.is_feasible(&solution));
    Ok(LpOutcome::Optimal { value, solution })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn r(n: i64) -> Rational {
        rat_int(n)
    }

    #[test]
    fn maximizes_single_variable_box() {
        // max x s.t. x <= 1, x >= 0
        let mut p = LpProblem::with_nonnegative_vars(vec![r(1)]);
        p.add_constraint(vec![r(1)], Relation::Le, r(1));
        let out = lp_solve(&p, Sense::Maximize).unwrap();
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: r(1),
                solution: vec![r(1)],
            }
        );
    }

    #[test]
    fn crossed_constraints_are_infeasible_with_certificate() {
        // x <= 0 and x >= 1
        let mut p = LpProblem::new(vec![r(0)]);
        p.add_constraint(vec![r(1)], Relation::Le, r(0));
        p.add_constraint(vec![r(1)], Relation::Ge, r(1));
        let out = lp_solve(&p, Sense::Maximize).unwrap();
        let LpOutcome::Infeasible { certificate } = out else {
            panic!("expected infeasible, got {out:?}");
        };
        assert!(certificate.verify(&p));
    }

    #[test]
    fn crossed_bounds_are_infeasible_with_certificate() {
        let mut p = LpProblem::new(vec![r(0)]);
        p.bounds[0] = (Some(r(2)), Some(r(1)));
        let out = lp_solve(&p, Sense::Minimize).unwrap();
        let LpOutcome::Infeasible { certificate } = out else {
            panic!("expected infeasible");
        };
        assert!(certificate.verify(&p));
    }

    #[test]
    fn unbounded_direction_is_detected() {
        let p = LpProblem::with_nonnegative_vars(vec![r(1)]);
        assert_eq!(lp_solve(&p, Sense::Maximize).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn equality_and_free_variables() {
        // min x + y s.t. x + y = 3, x - y = 1 (free vars) -> x=2, y=1
        let mut p = LpProblem::new(vec![r(1), r(1)]);
        p.add_constraint(vec![r(1), r(1)], Relation::Eq, r(3));
        p.add_constraint(vec![r(1), r(-1)], Relation::Eq, r(1));
        let out = lp_solve(&p, Sense::Minimize).unwrap();
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: r(3),
                solution: vec![r(2), r(1)],
            }
        );
    }

    #[test]
    fn fractional_optimum_is_exact() {
        // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, 0 <= x, 0 <= y
        let mut p = LpProblem::with_nonnegative_vars(vec![r(3), r(2)]);
        p.add_constraint(vec![r(1), r(1)], Relation::Le, r(4));
        p.add_constraint(vec![r(1), r(3)], Relation::Le, r(6));
        let out = lp_solve(&p, Sense::Maximize).unwrap();
        let LpOutcome::Optimal { value, solution } = out else {
            panic!("expected optimal");
        };
        assert_eq!(value, r(14));
        assert!(p.is_feasible(&solution));
    }

    #[test]
    fn doubly_bounded_and_mirrored_variables() {
        // max x + y with 1 <= x <= 2, y <= 5 (no lower), x + y <= 6
        let mut p = LpProblem::new(vec![r(1), r(1)]);
        p.bounds[0] = (Some(r(1)), Some(r(2)));
        p.bounds[1] = (None, Some(r(5)));
        p.add_constraint(vec![r(1), r(1)], Relation::Le, r(6));
        let out = lp_solve(&p, Sense::Maximize).unwrap();
        let LpOutcome::Optimal { value, .. } = out else {
            panic!("expected optimal");
        };
        assert_eq!(value, r(6));
    }

    #[test]
    fn degenerate_equalities_still_solve() {
        // x + y = 1 stated twice, maximize x with x,y >= 0
        let mut p = LpProblem::with_nonnegative_vars(vec![r(1), r(0)]);
        p.add_constraint(vec![r(1), r(1)], Relation::Eq, r(1));
        p.add_constraint(vec![r(1), r(1)], Relation::Eq, r(1));
        let out = lp_solve(&p, Sense::Maximize).unwrap();
        let LpOutcome::Optimal { value, solution } = out else {
            panic!("expected optimal");
        };
        assert_eq!(value, r(1));
        assert_eq!(solution, vec![r(1), r(0)]);
    }

    #[test]
    fn minimization_with_ge_rows() {
        // min 4x + 3y s.t. 2x + y >= 8, x + y >= 6, x + 2y >= 8, x,y >= 0
        let mut p = LpProblem::with_nonnegative_vars(vec![r(4), r(3)]);
        p.add_constraint(vec![r(2), r(1)], Relation::Ge, r(8));
        p.add_constraint(vec![r(1), r(1)], Relation::Ge, r(6));
        p.add_constraint(vec![r(1), r(2)], Relation::Ge, r(8));
        let out = lp_solve(&p, Sense::Minimize).unwrap();
        let LpOutcome::Optimal { value, solution } = out else {
            panic!("expected optimal");
        };
        assert_eq!(value, r(20));
        assert!(p.is_feasible(&solution));
    }

    #[test]
    fn infeasible_equality_system_certifies() {
        // x + y = 1, x + y = 2, x,y >= 0
        let mut p = LpProblem::with_nonnegative_vars(vec![r(0), r(0)]);
        p.add_constraint(vec![r(1), r(1)], Relation::Eq, r(1));
        p.add_constraint(vec![r(1), r(1)], Relation::Eq, r(2));
        let LpOutcome::Infeasible { certificate } = lp_solve(&p, Sense::Maximize).unwrap() else {
            panic!("expected infeasible");
        };
        assert!(certificate.verify(&p));
    }

    #[test]
    fn fractional_bounds_certificate() {
        // 2x <= 1/3 and 3x >= 5/2: infeasible
        let mut p = LpProblem::new(vec![r(1)]);
        p.add_constraint(vec![r(2)], Relation::Le, rat(1, 3));
        p.add_constraint(vec![r(3)], Relation::Ge, rat(5, 2));
        let LpOutcome::Infeasible { certificate } = lp_solve(&p, Sense::Minimize).unwrap() else {
            panic!("expected infeasible");
        };
        assert!(certificate.verify(&p));
    }
}

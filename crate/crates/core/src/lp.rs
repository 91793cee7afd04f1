//! Exact rational linear programming: a dense two-phase simplex with Bland's
//! anti-cycling rule, plus the fractional covering and packing programs.
//!
//! Variables are implicitly nonnegative.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Weighting};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Ge,
    Le,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub sense: Sense,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    direction: Direction,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpSolution {
    Optimal { optimum: Rational, assignment: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpSolution {
    pub fn status(&self) -> LpStatus {
        match self {
            LpSolution::Optimal { .. } => LpStatus::Optimal,
            LpSolution::Infeasible => LpStatus::Infeasible,
            LpSolution::Unbounded => LpStatus::Unbounded,
        }
    }

    pub fn optimum(&self) -> Option<&Rational> {
        match self {
            LpSolution::Optimal { optimum, .. } => Some(optimum),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(direction: Direction, objective: Vec<Rational>) -> Self {
        LinearProgram { direction, objective, constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, sense: Sense, rhs: Rational) -> Result<()> {
        if coeffs.len() != self.num_vars() {
            return Err(Error::MalformedProgram(format!(
                "constraint has {} coefficients but the program has {} variables",
                coeffs.len(),
                self.num_vars()
            )));
        }
        self.constraints.push(Constraint { coeffs, sense, rhs });
        Ok(())
    }

    /// Exact feasibility test, including nonnegativity.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|c| {
                let lhs = dot(&c.coeffs, x);
                match c.sense {
                    Sense::Ge => lhs >= c.rhs,
                    Sense::Le => lhs <= c.rhs,
                    Sense::Eq => lhs == c.rhs,
                }
            })
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }

    pub fn solve(&self) -> LpSolution {
        Tableau::build(self).solve(self)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Columns: original variables, then one slack/surplus per inequality row,
/// then one artificial per `>=`/`=` row. The last entry of each row is the
/// right-hand side.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    num_original: usize,
    first_artificial: usize,
    width: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.constraints.len();
        let nv = lp.num_vars();
        // normalise to nonnegative right-hand sides
        let normalised: Vec<(Vec<Rational>, Sense, Rational)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let flipped = match c.sense {
                        Sense::Ge => Sense::Le,
                        Sense::Le => Sense::Ge,
                        Sense::Eq => Sense::Eq,
                    };
                    (c.coeffs.iter().map(|v| -v).collect(), flipped, -c.rhs.clone())
                } else {
                    (c.coeffs.clone(), c.sense, c.rhs.clone())
                }
            })
            .collect();
        let num_slack = normalised.iter().filter(|(_, s, _)| *s != Sense::Eq).count();
        let num_art = normalised.iter().filter(|(_, s, _)| *s != Sense::Le).count();
        let first_slack = nv;
        let first_artificial = nv + num_slack;
        let width = first_artificial + num_art;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut slack, mut art) = (first_slack, first_artificial);
        for (coeffs, sense, rhs) in normalised {
            let mut row = vec![Rational::zero(); width + 1];
            row[..nv].clone_from_slice(&coeffs);
            row[width] = rhs;
            match sense {
                Sense::Le => {
                    row[slack] = Rational::one();
                    basis.push(slack);
                    slack += 1;
                }
                Sense::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                    row[art] = Rational::one();
                    basis.push(art);
                    art += 1;
                }
                Sense::Eq => {
                    row[art] = Rational::one();
                    basis.push(art);
                    art += 1;
                }
            }
            rows.push(row);
        }
        Tableau { rows, basis, num_original: nv, first_artificial, width }
    }

    fn pivot(&mut self, r: usize, c: usize, objective: &mut [Rational]) {
        let inv = Rational::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v -= &factor * p;
                    }
                }
            }
        }
        if !objective[c].is_zero() {
            let factor = objective[c].clone();
            for (v, p) in objective.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced-cost row for minimising `cost`; the last entry is `-z`.
    fn objective_row(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut obj = vec![Rational::zero(); self.width + 1];
        obj[..cost.len()].clone_from_slice(cost);
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = obj[b].clone();
            if !cb.is_zero() {
                for (v, a) in obj.iter_mut().zip(row) {
                    *v -= &cb * a;
                }
            }
        }
        obj
    }

    /// Minimises with Bland's rule over columns `< allowed`. Returns false when unbounded.
    fn optimise(&mut self, objective: &mut [Rational], allowed: usize) -> bool {
        loop {
            let Some(enter) = (0..allowed).find(|&j| objective[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[enter].is_positive() {
                    let ratio = &row[self.width] / &row[enter];
                    let better = match &leave {
                        None => true,
                        Some((li, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, enter, objective),
            }
        }
    }

    fn solve(mut self, lp: &LinearProgram) -> LpSolution {
        // phase one: minimise the sum of artificials
        if self.first_artificial < self.width {
            let mut cost = vec![Rational::zero(); self.width];
            for c in cost.iter_mut().skip(self.first_artificial) {
                *c = Rational::one();
            }
            let mut obj = self.objective_row(&cost);
            let bounded = self.optimise(&mut obj, self.width);
            debug_assert!(bounded, "phase one is bounded below by zero");
            if !obj[self.width].is_zero() {
                return LpSolution::Infeasible;
            }
            self.evict_artificials();
        }

        let sign = match lp.direction {
            Direction::Minimize => Rational::one(),
            Direction::Maximize => -Rational::one(),
        };
        let cost: Vec<Rational> = lp.objective.iter().map(|c| c * &sign).collect();
        let mut obj = self.objective_row(&cost);
        if !self.optimise(&mut obj, self.first_artificial) {
            return LpSolution::Unbounded;
        }

        let mut assignment = vec![Rational::zero(); self.num_original];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.num_original {
                assignment[b] = row[self.width].clone();
            }
        }
        let optimum = lp.objective_value(&assignment);
        LpSolution::Optimal { optimum, assignment }
    }

    /// Drives zero-valued artificials out of the basis; rows where that is
    /// impossible are redundant and dropped.
    fn evict_artificials(&mut self) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(c) => {
                        let mut scratch = vec![Rational::zero(); self.width + 1];
                        self.pivot(r, c, &mut scratch);
                    }
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }
}

fn incidence_program(h: &Hypergraph, direction: Direction, objective: &[Rational], sense: Sense) -> Result<LinearProgram> {
    if objective.len() != h.len() {
        return Err(Error::LengthMismatch { expected: h.len(), found: objective.len() });
    }
    if let Some(i) = objective.iter().position(Signed::is_negative) {
        return Err(Error::NegativeEntry { index: i + 1 });
    }
    let mut lp = LinearProgram::new(direction, objective.to_vec());
    for i in 0..h.n() {
        let row = h
            .edges()
            .iter()
            .map(|e| if e.contains(i) { Rational::one() } else { Rational::zero() })
            .collect();
        lp.add_constraint(row, sense, Rational::one())?;
    }
    Ok(lp)
}

/// Cheapest fractional covering: minimise `sum cost(s) alpha(s)` subject to
/// every vertex having incident weight at least 1.
pub fn optimal_fractional_covering(h: &Hypergraph, costs: &[Rational]) -> Result<(Weighting, Rational)> {
    h.require_full_coverage()?;
    let lp = incidence_program(h, Direction::Minimize, costs, Sense::Ge)?;
    match lp.solve() {
        LpSolution::Optimal { optimum, assignment } => Ok((Weighting::new(assignment)?, optimum)),
        LpSolution::Infeasible => Err(Error::Infeasible),
        LpSolution::Unbounded => Err(Error::Unbounded),
    }
}

/// Most rewarding fractional packing: maximise `sum reward(s) beta(s)` subject
/// to every vertex having incident weight at most 1.
pub fn optimal_fractional_packing(h: &Hypergraph, rewards: &[Rational]) -> Result<(Weighting, Rational)> {
    let lp = incidence_program(h, Direction::Maximize, rewards, Sense::Le)?;
    match lp.solve() {
        LpSolution::Optimal { optimum, assignment } => Ok((Weighting::new(assignment)?, optimum)),
        LpSolution::Infeasible => Err(Error::Infeasible),
        LpSolution::Unbounded => Err(Error::Unbounded),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::StandardCollection;
    use crate::rational::{integer, ratio};

    fn single_var(direction: Direction, rows: &[(Sense, i64)], obj: i64) -> LpSolution {
        let mut lp = LinearProgram::new(direction, vec![integer(obj)]);
        for &(sense, rhs) in rows {
            lp.add_constraint(vec![integer(1)], sense, integer(rhs)).unwrap();
        }
        lp.solve()
    }

    #[test]
    fn trivial_programs() {
        let s = single_var(Direction::Minimize, &[(Sense::Ge, 1)], 1);
        assert_eq!(s.optimum(), Some(&integer(1)));
        let s = single_var(Direction::Maximize, &[(Sense::Le, 0), (Sense::Ge, 0)], 1);
        assert_eq!(s.optimum(), Some(&integer(0)));
        let s = single_var(Direction::Minimize, &[(Sense::Ge, 0)], -1);
        assert_eq!(s.status(), LpStatus::Unbounded);
        let s = single_var(Direction::Minimize, &[(Sense::Ge, 2), (Sense::Le, 1)], 1);
        assert_eq!(s.status(), LpStatus::Infeasible);
    }

    #[test]
    fn equality_and_negative_rhs() {
        // min x + y  s.t.  x + 2y = 3,  -x <= -1
        let mut lp = LinearProgram::new(Direction::Minimize, vec![integer(1), integer(1)]);
        lp.add_constraint(vec![integer(1), integer(2)], Sense::Eq, integer(3)).unwrap();
        lp.add_constraint(vec![integer(-1), integer(0)], Sense::Le, integer(-1)).unwrap();
        let sol = lp.solve();
        assert_eq!(sol.optimum(), Some(&integer(2)));
        if let LpSolution::Optimal { assignment, .. } = &sol {
            assert!(lp.is_feasible(assignment));
            assert_eq!(assignment, &vec![integer(1), integer(1)]);
        }
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut lp = LinearProgram::new(Direction::Maximize, vec![integer(1), integer(1)]);
        lp.add_constraint(vec![integer(1), integer(1)], Sense::Eq, integer(2)).unwrap();
        lp.add_constraint(vec![integer(2), integer(2)], Sense::Eq, integer(4)).unwrap();
        assert_eq!(lp.solve().optimum(), Some(&integer(2)));
    }

    #[test]
    fn malformed_constraint_rejected() {
        let mut lp = LinearProgram::new(Direction::Minimize, vec![integer(1)]);
        assert!(lp.add_constraint(vec![], Sense::Ge, integer(1)).is_err());
    }

    #[test]
    fn covering_examples() {
        let s1 = Hypergraph::standard(StandardCollection::Singletons, 3).unwrap();
        let (w, opt) = optimal_fractional_covering(&s1, &[integer(1), integer(1), integer(1)]).unwrap();
        assert_eq!(opt, integer(3));
        assert_eq!(w.values(), &[integer(1), integer(1), integer(1)]);

        let tri = Hypergraph::from_one_based(3, &[vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap();
        let (w, opt) = optimal_fractional_covering(&tri, &[integer(1), integer(1), integer(1)]).unwrap();
        assert_eq!(opt, ratio(3, 2));
        assert_eq!(w.values(), &[ratio(1, 2), ratio(1, 2), ratio(1, 2)]);

        let (_, opt) = optimal_fractional_packing(&tri, &[integer(1), integer(1), integer(1)]).unwrap();
        assert_eq!(opt, ratio(3, 2));

        let edge = Hypergraph::from_one_based(2, &[vec![1, 2]]).unwrap();
        let (_, opt) = optimal_fractional_packing(&edge, &[integer(1)]).unwrap();
        assert_eq!(opt, integer(1));

        let uncovered = Hypergraph::from_one_based(3, &[vec![1, 2]]).unwrap();
        assert_eq!(optimal_fractional_covering(&uncovered, &[integer(1)]), Err(Error::UncoveredIndex { index: 3 }));
        assert_eq!(optimal_fractional_covering(&tri, &[integer(1), integer(-1), integer(1)]), Err(Error::NegativeEntry { index: 2 }));
    }
}

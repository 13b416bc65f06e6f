//! Exact two-phase dense simplex over the rationals, using Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
struct Constraint {
    coeffs: Vec<Rational>,
    relation: Relation,
    rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<(&[Rational], &Rational)> {
        match self {
            LpOutcome::Optimal { x, value } => Some((x, value)),
            _ => None,
        }
    }
}

/// `maximize c·x` subject to linear constraints; variables are nonnegative unless marked free.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
    free: Vec<bool>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
            free: vec![false; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn maximize(&mut self, objective: Vec<Rational>) -> &mut Self {
        assert_eq!(objective.len(), self.num_vars);
        self.objective = objective;
        self
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.free[var] = true;
        self
    }

    pub fn constrain(
        &mut self,
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    /// Sparse form of [`constrain`](Self::constrain).
    pub fn constrain_terms(
        &mut self,
        terms: &[(usize, Rational)],
        relation: Relation,
        rhs: Rational,
    ) -> &mut Self {
        let mut coeffs = vec![Rational::zero(); self.num_vars];
        for (j, c) in terms {
            coeffs[*j] += c;
        }
        self.constrain(coeffs, relation, rhs)
    }

    pub fn solve(&self) -> LpOutcome {
        // Column layout: structural (free vars split into +/-), slack/surplus, artificial.
        let mut col_of = Vec::with_capacity(self.num_vars);
        let mut n_struct = 0;
        for &free in &self.free {
            col_of.push(n_struct);
            n_struct += if free { 2 } else { 1 };
        }
        let m = self.constraints.len();
        let n_slack = self
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let first_art = n_struct + n_slack;

        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut art_count = 0;
        let mut slack_idx = n_struct;
        let mut art_rows = Vec::new();
        for con in &self.constraints {
            let flip = con.rhs.is_negative();
            let sign = if flip {
                -Rational::one()
            } else {
                Rational::one()
            };
            let mut row = vec![Rational::zero(); first_art];
            for (j, c) in con.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                row[col_of[j]] = c * &sign;
                if self.free[j] {
                    row[col_of[j] + 1] = -(c * &sign);
                }
            }
            let relation = match (con.relation, flip) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (r, _) => r,
            };
            let mut needs_art = true;
            match relation {
                Relation::Le => {
                    row[slack_idx] = Rational::one();
                    basis.push(slack_idx);
                    needs_art = false;
                    slack_idx += 1;
                }
                Relation::Ge => {
                    row[slack_idx] = -Rational::one();
                    slack_idx += 1;
                }
                Relation::Eq => {}
            }
            if needs_art {
                basis.push(first_art + art_count);
                art_rows.push(rows.len());
                art_count += 1;
            }
            row.push(con.rhs.abs());
            rows.push(row);
        }
        let width = first_art + art_count;
        for (k, row) in rows.iter_mut().enumerate() {
            let rhs = row.pop().unwrap();
            row.resize(width, Rational::zero());
            if let Some(a) = art_rows.iter().position(|&r| r == k) {
                row[first_art + a] = Rational::one();
            }
            row.push(rhs);
        }
        let mut tab = Tableau { rows, basis, width };

        if art_count > 0 {
            // Phase 1: maximize −Σ artificials.
            let mut cost = vec![Rational::zero(); width];
            for c in cost.iter_mut().skip(first_art) {
                *c = -Rational::one();
            }
            let mut obj = tab.reduced_costs(&cost);
            if tab.optimize(&mut obj, width).is_err() {
                unreachable!("phase one is bounded");
            }
            if !obj[width].is_zero() {
                return LpOutcome::Infeasible;
            }
            tab.expel_artificials(first_art);
        }

        let mut cost = vec![Rational::zero(); width];
        for (j, c) in self.objective.iter().enumerate() {
            cost[col_of[j]] = c.clone();
            if self.free[j] {
                cost[col_of[j] + 1] = -c.clone();
            }
        }
        let mut obj = tab.reduced_costs(&cost);
        if tab.optimize(&mut obj, first_art).is_err() {
            return LpOutcome::Unbounded;
        }

        let mut values = vec![Rational::zero(); width];
        for (r, &b) in tab.basis.iter().enumerate() {
            values[b] = tab.rows[r][width].clone();
        }
        let x: Vec<Rational> = (0..self.num_vars)
            .map(|j| {
                let v = values[col_of[j]].clone();
                if self.free[j] {
                    v - &values[col_of[j] + 1]
                } else {
                    v
                }
            })
            .collect();
        let value = x
            .iter()
            .zip(&self.objective)
            .fold(Rational::zero(), |acc, (a, c)| acc + a * c);
        LpOutcome::Optimal { x, value }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

struct Unbounded;

impl Tableau {
    /// Objective row `c_j − c_B·B⁻¹A_j`, with the current objective value (negated) in the last slot.
    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut obj: Vec<Rational> = cost.to_vec();
        obj.push(Rational::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (o, a) in obj.iter_mut().zip(&self.rows[r]) {
                *o -= cb * a;
            }
        }
        obj
    }

    /// Bland's rule: lowest-index improving column, lowest-index leaving variable on ratio ties.
    fn optimize(&mut self, obj: &mut [Rational], allowed: usize) -> Result<(), Unbounded> {
        loop {
            let Some(enter) = (0..allowed).find(|&j| obj[j].is_positive()) else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Err(Unbounded);
            };
            self.pivot(r, enter, obj);
        }
    }

    fn pivot(&mut self, r: usize, col: usize, obj: &mut [Rational]) {
        let inv = self.rows[r][col].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        if !obj[col].is_zero() {
            let f = obj[col].clone();
            for (v, p) in obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = col;
    }

    /// Pivots zero-valued artificials out of the basis and drops redundant rows.
    fn expel_artificials(&mut self, first_art: usize) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] < first_art {
                r += 1;
                continue;
            }
            match (0..first_art).find(|&j| !self.rows[r][j].is_zero()) {
                Some(col) => {
                    let mut dummy = vec![Rational::zero(); self.width + 1];
                    self.pivot(r, col, &mut dummy);
                    r += 1;
                }
                None => {
                    self.rows.remove(r);
                    self.basis.remove(r);
                }
            }
        }
    }
}

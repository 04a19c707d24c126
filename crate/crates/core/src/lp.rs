//! Exact linear feasibility by phase-1 simplex over the rationals.
//!
//! Problems are stated with free or nonnegative variables and `=`, `>=`, `<=`
//! rows; they are converted to standard form `A z = b, z >= 0, b >= 0` with one
//! artificial per row, and the sum of artificials is minimized with Bland's rule
//! (no cycling). The problem is feasible iff that minimum is zero.

use num::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
    Le,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone)]
pub struct Feasibility {
    num_vars: usize,
    free: Vec<bool>,
    constraints: Vec<Constraint>,
}

impl Feasibility {
    /// `num_vars` variables, all free.
    pub fn free_vars(num_vars: usize) -> Self {
        Feasibility { num_vars, free: vec![true; num_vars], constraints: Vec::new() }
    }

    /// `num_vars` variables, all nonnegative.
    pub fn nonneg_vars(num_vars: usize) -> Self {
        Feasibility { num_vars, free: vec![false; num_vars], constraints: Vec::new() }
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width");
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self
    }

    /// A feasible point, or `None` if the constraints are inconsistent.
    pub fn solve(&self) -> Option<Vec<Rational>> {
        // Column layout: for each variable one column (two if free), then one
        // slack per inequality row, then one artificial per row.
        let mut var_cols: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.num_vars);
        let mut ncols = 0;
        for &is_free in &self.free {
            if is_free {
                var_cols.push((ncols, Some(ncols + 1)));
                ncols += 2;
            } else {
                var_cols.push((ncols, None));
                ncols += 1;
            }
        }
        let nrows = self.constraints.len();
        if nrows == 0 {
            return Some(vec![Rational::zero(); self.num_vars]);
        }
        let slack_start = ncols;
        let nslack = self.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        let art_start = slack_start + nslack;
        let width = art_start + nrows;

        let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(nrows);
        let mut rhs: Vec<Rational> = Vec::with_capacity(nrows);
        let mut slack = slack_start;
        for (r, c) in self.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); width];
            for (v, coeff) in c.coeffs.iter().enumerate() {
                let (pos, neg) = var_cols[v];
                row[pos] = coeff.clone();
                if let Some(neg) = neg {
                    row[neg] = -coeff.clone();
                }
            }
            match c.relation {
                Relation::Eq => {}
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                }
                Relation::Le => {
                    row[slack] = Rational::one();
                    slack += 1;
                }
            }
            let mut b = c.rhs.clone();
            if b.is_negative() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
                b = -b;
            }
            row[art_start + r] = Rational::one();
            tab.push(row);
            rhs.push(b);
        }
        let mut basis: Vec<usize> = (art_start..art_start + nrows).collect();

        // Reduced costs of the phase-1 objective (sum of artificials).
        let mut cost = vec![Rational::zero(); width];
        for row in &tab {
            for (j, v) in row.iter().enumerate().take(art_start) {
                cost[j] -= v;
            }
        }

        while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..nrows {
                if !tab[r][enter].is_positive() {
                    continue;
                }
                let ratio = &rhs[r] / &tab[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            // Phase-1 is bounded below by zero, so an entering column always
            // has a positive entry.
            let (pr, _) = leave.expect("phase-1 objective is bounded");
            pivot(&mut tab, &mut rhs, &mut cost, pr, enter);
            basis[pr] = enter;
        }

        let objective: Rational = basis
            .iter()
            .zip(&rhs)
            .filter(|(&b, _)| b >= art_start)
            .map(|(_, v)| v.clone())
            .sum();
        if !objective.is_zero() {
            return None;
        }

        let mut z = vec![Rational::zero(); width];
        for (r, &b) in basis.iter().enumerate() {
            z[b] = rhs[r].clone();
        }
        Some(
            var_cols
                .iter()
                .map(|&(pos, neg)| match neg {
                    Some(neg) => &z[pos] - &z[neg],
                    None => z[pos].clone(),
                })
                .collect(),
        )
    }
}

fn pivot(
    tab: &mut [Vec<Rational>],
    rhs: &mut [Rational],
    cost: &mut [Rational],
    pr: usize,
    pc: usize,
) {
    let inv = Rational::one() / tab[pr][pc].clone();
    for v in tab[pr].iter_mut() {
        *v *= &inv;
    }
    rhs[pr] *= &inv;
    let prow = tab[pr].clone();
    let prhs = rhs[pr].clone();
    for r in 0..tab.len() {
        if r == pr || tab[r][pc].is_zero() {
            continue;
        }
        let f = tab[r][pc].clone();
        for (v, p) in tab[r].iter_mut().zip(&prow) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
        rhs[r] -= &f * &prhs;
    }
    if !cost[pc].is_zero() {
        let f = cost[pc].clone();
        for (v, p) in cost.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
    }
}

/// Strictly positive vector in the column span of `basis` (vectors of length
/// `len`), i.e. `ρ = Σ λ_j basis[j]` with every `ρ_i >= 1`.
pub fn positive_combination(basis: &[Vec<Rational>], len: usize) -> Option<Vec<Rational>> {
    if basis.is_empty() {
        return None;
    }
    let mut lp = Feasibility::free_vars(basis.len());
    for i in 0..len {
        let row: Vec<Rational> = basis.iter().map(|b| b[i].clone()).collect();
        lp.add(row, Relation::Ge, Rational::one());
    }
    let lambda = lp.solve()?;
    Some(crate::linalg::combine(basis, &lambda, len))
}

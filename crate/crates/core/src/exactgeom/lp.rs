//! Exact two-phase primal simplex with Bland's anti-cycling rule.

use super::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub sense: Sense,
    pub rhs: Rational,
}

/// `maximize objective·x` subject to the constraints. Variables flagged in
/// `free` are unrestricted, the others are nonnegative.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub free: Vec<bool>,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            free: vec![true; num_vars],
            constraints: Vec::new(),
            objective: vec![Rational::zero(); num_vars],
        }
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, sense: Sense, rhs: Rational) {
        debug_assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push(Constraint { coeffs, sense, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        Simplex::build(self).run()
    }
}

struct Simplex {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
    artificial_start: usize,
    // column map: for each original variable, (positive column, optional negative column)
    var_cols: Vec<(usize, Option<usize>)>,
    objective: Vec<Rational>,
}

impl Simplex {
    fn build(lp: &LinearProgram) -> Simplex {
        let mut var_cols = Vec::with_capacity(lp.num_vars);
        let mut ncols = 0;
        for j in 0..lp.num_vars {
            if lp.free[j] {
                var_cols.push((ncols, Some(ncols + 1)));
                ncols += 2;
            } else {
                var_cols.push((ncols, None));
                ncols += 1;
            }
        }
        let m = lp.constraints.len();
        // normalize rows so that rhs >= 0
        let mut norm: Vec<(Vec<Rational>, Sense, Rational)> = Vec::with_capacity(m);
        for c in &lp.constraints {
            let mut row = vec![Rational::zero(); ncols];
            for (j, a) in c.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let (p, n) = var_cols[j];
                row[p] = a.clone();
                if let Some(n) = n {
                    row[n] = -a;
                }
            }
            let (row, sense, rhs) = if c.rhs.is_negative() {
                let flipped = match c.sense {
                    Sense::Le => Sense::Ge,
                    Sense::Ge => Sense::Le,
                    Sense::Eq => Sense::Eq,
                };
                (row.into_iter().map(|v| -v).collect(), flipped, -&c.rhs)
            } else {
                (row, c.sense, c.rhs.clone())
            };
            norm.push((row, sense, rhs));
        }
        let n_slack = norm.iter().filter(|r| r.1 != Sense::Eq).count();
        let n_art = norm.iter().filter(|r| r.1 != Sense::Le).count();
        let slack_start = ncols;
        let artificial_start = ncols + n_slack;
        let total = artificial_start + n_art;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut si, mut ai) = (slack_start, artificial_start);
        for (mut row, sense, rhs) in norm {
            row.resize(total + 1, Rational::zero());
            match sense {
                Sense::Le => {
                    row[si] = Rational::one();
                    basis.push(si);
                    si += 1;
                }
                Sense::Ge => {
                    row[si] = Rational::from_int(-1);
                    si += 1;
                    row[ai] = Rational::one();
                    basis.push(ai);
                    ai += 1;
                }
                Sense::Eq => {
                    row[ai] = Rational::one();
                    basis.push(ai);
                    ai += 1;
                }
            }
            row[total] = rhs;
            rows.push(row);
        }
        let mut objective = vec![Rational::zero(); total];
        for (j, c) in lp.objective.iter().enumerate() {
            let (p, n) = var_cols[j];
            objective[p] = c.clone();
            if let Some(n) = n {
                objective[n] = -c;
            }
        }
        Simplex {
            rows,
            basis,
            ncols: total,
            artificial_start,
            var_cols,
            objective,
        }
    }

    fn pivot(&mut self, z: &mut [Rational], r: usize, c: usize) {
        let width = self.ncols + 1;
        let inv = self.rows[r][c].recip();
        if inv != Rational::one() {
            for j in 0..width {
                if !self.rows[r][j].is_zero() {
                    self.rows[r][j] = &self.rows[r][j] * &inv;
                }
            }
        }
        let prow = self.rows[r].clone();
        let nz: Vec<usize> = (0..width).filter(|&j| !prow[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                let v = &prow[j] * &f;
                row[j] -= v;
            }
        }
        if !z[c].is_zero() {
            let f = z[c].clone();
            for &j in &nz {
                let v = &prow[j] * &f;
                z[j] -= v;
            }
        }
        self.basis[r] = c;
    }

    /// Reduced cost row for maximizing `cost` over the current basis; last entry is the value.
    fn reduced(&self, cost: &[Rational]) -> Vec<Rational> {
        let width = self.ncols + 1;
        let mut z = vec![Rational::zero(); width];
        for j in 0..self.ncols {
            z[j] = -&cost[j];
        }
        for (i, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for j in 0..width {
                if !self.rows[i][j].is_zero() {
                    let v = &self.rows[i][j] * &cost[b];
                    z[j] += v;
                }
            }
        }
        z
    }

    /// Runs simplex iterations on columns `< limit`. Returns false if unbounded.
    fn iterate(&mut self, z: &mut Vec<Rational>, limit: usize) -> bool {
        loop {
            let Some(c) = (0..limit).find(|&j| z[j].is_negative()) else {
                return true;
            };
            let rhs = self.ncols;
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(z, r, c);
        }
    }

    fn run(mut self) -> LpOutcome {
        let rhs = self.ncols;
        let mut phase1 = vec![Rational::zero(); self.ncols];
        for c in phase1.iter_mut().skip(self.artificial_start) {
            *c = Rational::from_int(-1);
        }
        let mut z = self.reduced(&phase1);
        self.iterate(&mut z, self.ncols);
        if !z[rhs].is_zero() {
            return LpOutcome::Infeasible;
        }
        // drive artificial variables out of the basis
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.artificial_start {
                if let Some(c) = (0..self.artificial_start).find(|&j| !self.rows[i][j].is_zero()) {
                    let mut dummy = vec![Rational::zero(); self.ncols + 1];
                    self.pivot(&mut dummy, i, c);
                } else {
                    self.rows.remove(i);
                    self.basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }
        let limit = self.artificial_start;
        let mut cost = self.objective.clone();
        for c in cost.iter_mut().skip(limit) {
            *c = Rational::zero();
        }
        let mut z = self.reduced(&cost);
        if !self.iterate(&mut z, limit) {
            return LpOutcome::Unbounded;
        }
        let mut col_val = vec![Rational::zero(); self.ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            col_val[b] = self.rows[i][rhs].clone();
        }
        let x = self
            .var_cols
            .iter()
            .map(|&(p, n)| match n {
                Some(n) => &col_val[p] - &col_val[n],
                None => col_val[p].clone(),
            })
            .collect();
        LpOutcome::Optimal {
            x,
            value: z[rhs].clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn small_max() {
        // max x + y, x + 2y <= 4, 3x + y <= 6, x,y >= 0 -> (8/5, 6/5), value 14/5
        let mut lp = LinearProgram::new(2);
        lp.free = vec![false, false];
        lp.objective = vec![r(1), r(1)];
        lp.add(vec![r(1), r(2)], Sense::Le, r(4));
        lp.add(vec![r(3), r(1)], Sense::Le, r(6));
        match lp.solve() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, Rational::new(14, 5));
                assert_eq!(x, vec![Rational::new(8, 5), Rational::new(6, 5)]);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add(vec![r(1)], Sense::Ge, r(2));
        lp.add(vec![r(1)], Sense::Le, r(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
        let mut lp = LinearProgram::new(1);
        lp.objective = vec![r(1)];
        lp.add(vec![r(1)], Sense::Ge, r(-3));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn free_vars_and_equalities() {
        // max -x subject to x + y = -5, y <= 2: optimum at x = -7
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![r(-1), r(0)];
        lp.add(vec![r(1), r(1)], Sense::Eq, r(-5));
        lp.add(vec![r(0), r(1)], Sense::Le, r(2));
        match lp.solve() {
            LpOutcome::Optimal { x, .. } => {
                assert_eq!(&x[0] + &x[1], r(-5));
                assert_eq!(x[0], r(-7));
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![r(1), r(0)];
        lp.add(vec![r(1), r(1)], Sense::Eq, r(2));
        lp.add(vec![r(2), r(2)], Sense::Eq, r(4));
        lp.add(vec![r(1), r(0)], Sense::Le, r(5));
        match lp.solve() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, r(5));
                assert_eq!(x[1], r(-3));
            }
            o => panic!("{o:?}"),
        }
    }
}

use num::{One, Signed, Zero};

use crate::frac::Frac;

/// The packing LP max Σ y_C subject to Σ_{C∋v} y_C ≤ 1, y ≥ 0, solved by an
/// exact primal simplex with Bland's rule. Columns are added lazily; the
/// slack basis is feasible, so no phase one is needed.
///
/// The tableau is stored by column: the first `rows` columns are the slacks,
/// whose current entries form B⁻¹.
pub(crate) struct PackingLp {
    rows: usize,
    cols: Vec<Vec<Frac>>,
    reduced: Vec<Frac>,
    rhs: Vec<Frac>,
    basis: Vec<usize>,
    objective: Frac,
}

impl PackingLp {
    pub fn new(rows: usize) -> PackingLp {
        let cols = (0..rows)
            .map(|r| {
                (0..rows)
                    .map(|i| if i == r { Frac::one() } else { Frac::zero() })
                    .collect()
            })
            .collect();
        PackingLp {
            rows,
            cols,
            reduced: vec![Frac::zero(); rows],
            rhs: vec![Frac::one(); rows],
            basis: (0..rows).collect(),
            objective: Frac::zero(),
        }
    }

    /// Adds the column of a cycle through `members` (row indices) and
    /// returns its index among the structural columns.
    pub fn add_column(&mut self, members: &[usize]) -> usize {
        let mut col = vec![Frac::zero(); self.rows];
        let mut reduced = Frac::one();
        for &v in members {
            for (x, y) in col.iter_mut().zip(&self.cols[v]) {
                *x += y;
            }
            reduced += &self.reduced[v];
        }
        self.cols.push(col);
        self.reduced.push(reduced);
        self.cols.len() - 1 - self.rows
    }

    pub fn solve(&mut self) {
        // Bland: lowest-index improving column, lowest-index leaving variable
        while let Some(e) = (0..self.cols.len()).find(|&j| self.reduced[j].is_positive()) {
            let mut leave: Option<(usize, Frac)> = None;
            for i in 0..self.rows {
                let a = &self.cols[e][i];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (r, _) = leave.expect("the packing LP is bounded");
            self.pivot(r, e);
        }
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let entering = self.cols[e].clone();
        let piv = entering[r].clone();
        for col in self.cols.iter_mut().chain(std::iter::once(&mut self.rhs)) {
            if col[r].is_zero() {
                continue;
            }
            let x = &col[r] / &piv;
            for i in 0..col.len() {
                if i != r && !entering[i].is_zero() {
                    col[i] -= &entering[i] * &x;
                }
            }
            col[r] = x;
        }
        let re = self.reduced[e].clone();
        for j in 0..self.cols.len() {
            let x = &self.cols[j][r];
            if !x.is_zero() && j != e {
                self.reduced[j] -= &re * x;
            }
        }
        self.objective += &re * &self.rhs[r];
        self.reduced[e] = Frac::zero();
        self.basis[r] = e;
    }

    pub fn objective(&self) -> &Frac {
        &self.objective
    }

    /// Optimal dual values, one per row.
    pub fn duals(&self) -> Vec<Frac> {
        (0..self.rows).map(|v| -&self.reduced[v]).collect()
    }

    /// Primal values of the structural columns.
    pub fn primal(&self) -> Vec<Frac> {
        let mut y = vec![Frac::zero(); self.cols.len() - self.rows];
        for (i, &b) in self.basis.iter().enumerate() {
            if b >= self.rows {
                y[b - self.rows] = self.rhs[i].clone();
            }
        }
        y
    }
}

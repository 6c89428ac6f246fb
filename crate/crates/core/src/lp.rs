//! Exact feasibility for equality systems over box-bounded variables.
//!
//! A [`LinearSystem`] has integer rows `Σ a_j v_j = b` and every variable
//! restricted to `[0, 1]`. [`solve_exact`] either returns a point that
//! satisfies everything exactly or a [`Certificate`]: multipliers `y` per row
//! and `w ≥ 0` per upper bound such that, writing `s_j = 1 − v_j`, the
//! combination
//!
//! ```text
//! Σ_r y_r (a_r·v − b_r) + Σ_j w_j (v_j + s_j − 1) = 0
//! ```
//!
//! reads `Σ c_j v_j + Σ w_j s_j = K` with every `c_j ≥ 0` and `K < 0`, which
//! no nonnegative `v, s` can satisfy.
//!
//! Equation-only contradictions are found first by Gaussian elimination, so
//! their certificates carry no bound multipliers. Everything else goes
//! through a dense phase-one simplex with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRow {
    /// Sparse integer coefficients, at most one entry per variable.
    pub coeffs: Vec<(usize, i64)>,
    pub rhs: i64,
}

impl LinearRow {
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        self.coeffs.iter().map(|&(j, a)| int(a) * &point[j]).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub rows: Vec<LinearRow>,
}

impl LinearSystem {
    /// Whether `point` satisfies every row and bound exactly.
    pub fn satisfied_by(&self, point: &[Rational]) -> bool {
        point.len() == self.num_vars
            && point.iter().all(crate::rational::in_unit_interval)
            && self.rows.iter().all(|r| r.evaluate(point) == int(r.rhs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub row_multipliers: Vec<Rational>,
    pub upper_multipliers: Vec<Rational>,
}

/// The certified combination `Σ c_j v_j + Σ w_j s_j = constant`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combination {
    pub var_coeffs: Vec<Rational>,
    pub slack_coeffs: Vec<Rational>,
    pub constant: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateError {
    Shape,
    NegativeVariableCoefficient(usize),
    NegativeBoundMultiplier(usize),
    NonNegativeConstant,
}

impl Certificate {
    pub fn combination(&self, sys: &LinearSystem) -> Combination {
        let mut var_coeffs = vec![Rational::zero(); sys.num_vars];
        let mut constant = Rational::zero();
        for (row, y) in sys.rows.iter().zip(&self.row_multipliers) {
            if y.is_zero() {
                continue;
            }
            for &(j, a) in &row.coeffs {
                var_coeffs[j] += int(a) * y;
            }
            constant += int(row.rhs) * y;
        }
        for (j, w) in self.upper_multipliers.iter().enumerate() {
            var_coeffs[j] += w;
            constant += w;
        }
        Combination {
            var_coeffs,
            slack_coeffs: self.upper_multipliers.clone(),
            constant,
        }
    }

    /// Check the certificate by direct arithmetic on the system.
    pub fn check(&self, sys: &LinearSystem) -> Result<Combination, CertificateError> {
        if self.row_multipliers.len() != sys.rows.len()
            || self.upper_multipliers.len() != sys.num_vars
        {
            return Err(CertificateError::Shape);
        }
        if let Some(j) = self.upper_multipliers.iter().position(Signed::is_negative) {
            return Err(CertificateError::NegativeBoundMultiplier(j));
        }
        let c = self.combination(sys);
        if let Some(j) = c.var_coeffs.iter().position(Signed::is_negative) {
            return Err(CertificateError::NegativeVariableCoefficient(j));
        }
        if !c.constant.is_negative() {
            return Err(CertificateError::NonNegativeConstant);
        }
        Ok(c)
    }

    /// No bound multiplier is used: the rows alone reduce to `0 = K`.
    pub fn is_equational(&self) -> bool {
        self.upper_multipliers.iter().all(Zero::is_zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible(Certificate),
}

/// Decide feasibility exactly. Deterministic for a given system.
pub fn solve_exact(sys: &LinearSystem) -> Feasibility {
    if let Some(cert) = equational_contradiction(sys) {
        return Feasibility::Infeasible(cert);
    }
    let mut tableau = Tableau::phase_one(sys);
    tableau.run(false);
    if tableau.objective_value().is_positive() {
        Feasibility::Infeasible(tableau.farkas(sys))
    } else {
        Feasibility::Feasible(tableau.point())
    }
}

/// Minimise `objective · v` over the feasible set. `None` when infeasible.
pub fn minimize(sys: &LinearSystem, objective: &[Rational]) -> Option<Vec<Rational>> {
    let mut tableau = Tableau::phase_one(sys);
    tableau.run(false);
    if tableau.objective_value().is_positive() {
        return None;
    }
    tableau.phase_two(objective);
    tableau.run(true);
    Some(tableau.point())
}

/// Gauss–Jordan on `[A | b]` while tracking row combinations. A zero row
/// with nonzero right-hand side yields multipliers `y` with `yᵀA = 0` and
/// `yᵀb ≠ 0`, scaled so that `yᵀb < 0`.
fn equational_contradiction(sys: &LinearSystem) -> Option<Certificate> {
    let m = sys.rows.len();
    let n = sys.num_vars;
    let mut rows: Vec<(Vec<Rational>, Rational, Vec<Rational>)> = sys
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut a = vec![Rational::zero(); n];
            for &(j, c) in &r.coeffs {
                a[j] += int(c);
            }
            let mut track = vec![Rational::zero(); m];
            track[i] = Rational::one();
            (a, int(r.rhs), track)
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..n {
        let Some(p) = (pivot_row..m).find(|&i| !rows[i].0[col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row].0[col].recip();
        {
            let (a, b, t) = &mut rows[pivot_row];
            a.iter_mut().for_each(|x| *x *= &inv);
            *b *= &inv;
            t.iter_mut().for_each(|x| *x *= &inv);
        }
        let (a_p, b_p, t_p) = rows[pivot_row].clone();
        for (i, (a, b, t)) in rows.iter_mut().enumerate() {
            if i == pivot_row || a[col].is_zero() {
                continue;
            }
            let f = a[col].clone();
            for (x, y) in a.iter_mut().zip(&a_p) {
                *x -= &f * y;
            }
            *b -= &f * &b_p;
            for (x, y) in t.iter_mut().zip(&t_p) {
                *x -= &f * y;
            }
        }
        pivot_row += 1;
    }

    let (_, b, track) = rows[pivot_row..]
        .iter()
        .find(|(a, b, _)| !b.is_zero() && a.iter().all(Zero::is_zero))?;
    let scale = if b.is_positive() {
        -Rational::one()
    } else {
        Rational::one()
    };
    Some(Certificate {
        row_multipliers: track.iter().map(|y| y * &scale).collect(),
        upper_multipliers: vec![Rational::zero(); n],
    })
}

/// Dense tableau for `[E 0; I I] (v, s) + artificials = (e, 1)`.
struct Tableau {
    n: usize,
    /// Sign applied to each original row to make its right-hand side ≥ 0.
    signs: Vec<bool>,
    /// Row-major constraint matrix over `2n + rows` columns.
    matrix: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    costs: Vec<Rational>,
    /// Reduced costs per column.
    reduced: Vec<Rational>,
}

impl Tableau {
    fn columns(&self) -> usize {
        2 * self.n + self.matrix.len()
    }

    fn is_artificial(&self, col: usize) -> bool {
        col >= 2 * self.n
    }

    fn phase_one(sys: &LinearSystem) -> Self {
        let n = sys.num_vars;
        let rows = sys.rows.len() + n;
        let cols = 2 * n + rows;
        let mut matrix = vec![vec![Rational::zero(); cols]; rows];
        let mut rhs = vec![Rational::zero(); rows];
        let mut signs = vec![false; rows];
        for (i, r) in sys.rows.iter().enumerate() {
            let negate = r.rhs < 0;
            signs[i] = negate;
            let s = if negate { -1 } else { 1 };
            for &(j, a) in &r.coeffs {
                matrix[i][j] += int(s * a);
            }
            rhs[i] = int(s * r.rhs);
        }
        for j in 0..n {
            let i = sys.rows.len() + j;
            matrix[i][j] = Rational::one();
            matrix[i][n + j] = Rational::one();
            rhs[i] = Rational::one();
        }
        for (i, row) in matrix.iter_mut().enumerate() {
            row[2 * n + i] = Rational::one();
        }
        let mut costs = vec![Rational::zero(); cols];
        for c in costs.iter_mut().skip(2 * n) {
            *c = Rational::one();
        }
        let basis = (0..rows).map(|i| 2 * n + i).collect();
        let mut t = Tableau {
            n,
            signs,
            matrix,
            rhs,
            basis,
            costs,
            reduced: Vec::new(),
        };
        t.recompute_reduced();
        t
    }

    fn recompute_reduced(&mut self) {
        let cols = self.columns();
        let mut reduced = self.costs.clone();
        for (row, &b) in self.matrix.iter().zip(&self.basis) {
            let cb = &self.costs[b];
            if cb.is_zero() {
                continue;
            }
            for (k, a) in row.iter().enumerate().take(cols) {
                if !a.is_zero() {
                    reduced[k] -= cb * a;
                }
            }
        }
        self.reduced = reduced;
    }

    fn objective_value(&self) -> Rational {
        self.basis
            .iter()
            .zip(&self.rhs)
            .map(|(&b, r)| &self.costs[b] * r)
            .sum()
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.matrix[row][col].recip();
        self.matrix[row].iter_mut().for_each(|x| *x *= &inv);
        self.rhs[row] *= &inv;
        let pivot_row = self.matrix[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        let nonzero: Vec<usize> = (0..pivot_row.len())
            .filter(|&k| !pivot_row[k].is_zero())
            .collect();
        for i in 0..self.matrix.len() {
            if i == row || self.matrix[i][col].is_zero() {
                continue;
            }
            let f = self.matrix[i][col].clone();
            for &k in &nonzero {
                let delta = &f * &pivot_row[k];
                self.matrix[i][k] -= delta;
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        let f = self.reduced[col].clone();
        if !f.is_zero() {
            for &k in &nonzero {
                let delta = &f * &pivot_row[k];
                self.reduced[k] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule: lowest-index improving column, lowest-index basic
    /// variable among tied ratios.
    fn run(&mut self, exclude_artificial: bool) {
        loop {
            let entering = (0..self.columns())
                .filter(|&k| !(exclude_artificial && self.is_artificial(k)))
                .find(|&k| self.reduced[k].is_negative());
            let Some(col) = entering else { return };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.matrix.len() {
                let a = &self.matrix[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
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
            // Every variable is bounded, so an improving column always has a
            // blocking row.
            let (row, _) = best.expect("bounded problem");
            self.pivot(row, col);
        }
    }

    fn point(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n];
        for (&b, r) in self.basis.iter().zip(&self.rhs) {
            if b < self.n {
                v[b] = r.clone();
            }
        }
        v
    }

    /// Duals of the optimal phase-one basis, turned into a certificate for
    /// the original row signs.
    fn farkas(&self, sys: &LinearSystem) -> Certificate {
        let m = sys.rows.len();
        // y_i = c_{a_i} − reduced(a_i) = 1 − reduced(a_i); certificate = −y.
        let multipliers: Vec<Rational> = (0..self.matrix.len())
            .map(|i| {
                let y = Rational::one() - &self.reduced[2 * self.n + i];
                if self.signs[i] {
                    y
                } else {
                    -y
                }
            })
            .collect();
        let cert = Certificate {
            row_multipliers: multipliers[..m].to_vec(),
            upper_multipliers: multipliers[m..].to_vec(),
        };
        debug_assert!(cert.check(sys).is_ok());
        cert
    }

    /// Pivot zero-level artificials out of the basis where possible, then
    /// install the real objective.
    fn phase_two(&mut self, objective: &[Rational]) {
        for row in 0..self.matrix.len() {
            if !self.is_artificial(self.basis[row]) {
                continue;
            }
            if let Some(col) = (0..2 * self.n).find(|&k| !self.matrix[row][k].is_zero()) {
                self.pivot(row, col);
            }
            // Otherwise the row is redundant: it has no entries outside the
            // artificial columns, so it never blocks a pivot.
        }
        let cols = self.columns();
        self.costs = vec![Rational::zero(); cols];
        self.costs[..self.n].clone_from_slice(objective);
        self.recompute_reduced();
    }
}

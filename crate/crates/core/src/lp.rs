//! Dense two-phase primal simplex for small covering and packing programs,
//! with dual recovery and a primal-dual certificate.
//!
//! Bland's rule is always on. Every constraint gets its own slack, so the
//! equality form has full row rank and artificial variables left in the
//! basis at level zero can always be pivoted out.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{ser_f64, ser_f64_vec};

/// Pivot, feasibility and optimality tolerance.
pub const LP_TOLERANCE: f64 = 1e-9;

/// `A·x (≥ or ≤) b`, `x ≥ 0`, objective `c`. The orientation is chosen by
/// the solver: [`solve_covering_lp`] or [`solve_packing_dual`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearProgram {
    objective: Vec<f64>,
    matrix: Vec<Vec<f64>>,
    rhs: Vec<f64>,
}

impl LinearProgram {
    pub fn new(objective: Vec<f64>, matrix: Vec<Vec<f64>>, rhs: Vec<f64>) -> Result<Self> {
        if matrix.len() != rhs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} constraint rows but {} right-hand sides",
                matrix.len(),
                rhs.len()
            )));
        }
        if let Some(i) = matrix.iter().position(|r| r.len() != objective.len()) {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has {} entries, expected {}",
                matrix[i].len(),
                objective.len()
            )));
        }
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        if !finite(&objective) || !finite(&rhs) || !matrix.iter().all(|r| finite(r)) {
            return Err(Error::InvalidParameter("linear program data must be finite".into()));
        }
        Ok(LinearProgram {
            objective,
            matrix,
            rhs,
        })
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.matrix
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.rhs.len()
    }

    /// Transposed data: the covering program `min cᵀx, Ax ≥ b` and the
    /// packing program `max bᵀy, Aᵀy ≤ c` are duals of each other.
    pub fn dual(&self) -> LinearProgram {
        let nv = self.num_vars();
        let matrix = (0..nv)
            .map(|j| self.matrix.iter().map(|r| r[j]).collect())
            .collect();
        LinearProgram {
            objective: self.rhs.clone(),
            matrix,
            rhs: self.objective.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    /// `min cᵀx` subject to `Ax ≥ b`.
    Covering,
    /// `max cᵀx` subject to `Ax ≤ b`.
    Packing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Solver output. For an optimal solve `dual` is a nonnegative vector with
/// `bᵀy` equal to the optimum. Infeasible covering programs have value
/// `+∞`, unbounded ones `−∞`; packing the other way round.
#[derive(Clone, Debug, Serialize)]
pub struct LpSolution {
    pub sense: Sense,
    pub status: LpStatus,
    #[serde(serialize_with = "ser_f64_vec")]
    pub primal: Vec<f64>,
    #[serde(serialize_with = "ser_f64_vec")]
    pub dual: Vec<f64>,
    #[serde(serialize_with = "ser_f64")]
    pub objective: f64,
    pub removed_zero_rows: Vec<usize>,
    pub iterations: usize,
}

/// Residuals of an optimal solution against its program.
#[derive(Clone, Debug, Serialize)]
pub struct LpCertificate {
    #[serde(serialize_with = "ser_f64")]
    pub primal_infeasibility: f64,
    #[serde(serialize_with = "ser_f64")]
    pub dual_infeasibility: f64,
    #[serde(serialize_with = "ser_f64")]
    pub duality_gap: f64,
    #[serde(serialize_with = "ser_f64")]
    pub complementary_slackness: f64,
}

impl LpCertificate {
    /// Feasibility within `1e-8`, gap within `1e-7·(1 + |value|)` and
    /// complementary slackness within `1e-7`.
    pub fn holds(&self, value: f64) -> bool {
        self.primal_infeasibility <= 1e-8
            && self.dual_infeasibility <= 1e-8
            && self.duality_gap <= 1e-7 * (1.0 + value.abs())
            && self.complementary_slackness <= 1e-7
    }
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// Recomputes feasibility, gap and complementary slackness from scratch.
    /// `None` unless the solve was optimal.
    pub fn certificate(&self, lp: &LinearProgram) -> Option<LpCertificate> {
        if !self.is_optimal() {
            return None;
        }
        let (x, y) = (&self.primal, &self.dual);
        let sign = match self.sense {
            Sense::Covering => 1.0,
            Sense::Packing => -1.0,
        };
        let mut primal_inf = x.iter().fold(0.0f64, |m, &v| m.max(-v));
        let mut dual_inf = y.iter().fold(0.0f64, |m, &v| m.max(-v));
        let mut cs = 0.0f64;
        for (i, row) in lp.matrix.iter().enumerate() {
            // covering rows: Ax − b ≥ 0; packing rows: b − Ax ≥ 0
            let surplus = sign * (dot(row, x) - lp.rhs[i]);
            primal_inf = primal_inf.max(-surplus);
            cs = cs.max((y[i] * surplus).abs());
        }
        for j in 0..lp.num_vars() {
            let aty: f64 = lp.matrix.iter().zip(y).map(|(r, yi)| r[j] * yi).sum();
            let reduced = sign * (lp.objective[j] - aty);
            dual_inf = dual_inf.max(-reduced);
            cs = cs.max((x[j] * reduced).abs());
        }
        let gap = (dot(&lp.objective, x) - dot(&lp.rhs, y)).abs();
        Some(LpCertificate {
            primal_infeasibility: primal_inf,
            dual_infeasibility: dual_inf,
            duality_gap: gap,
            complementary_slackness: cs,
        })
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `min cᵀx` subject to `Ax ≥ b`, `x ≥ 0`.
pub fn solve_covering_lp(p: &LinearProgram) -> Result<LpSolution> {
    solve(p, Sense::Covering)
}

/// `max cᵀx` subject to `Ax ≤ b`, `x ≥ 0`.
pub fn solve_packing_dual(p: &LinearProgram) -> Result<LpSolution> {
    solve(p, Sense::Packing)
}

fn solve(p: &LinearProgram, sense: Sense) -> Result<LpSolution> {
    let nv = p.num_vars();
    let nc = p.num_constraints();
    let cap = 10 * (nv + nc).pow(2);
    let (inf_value, unb_value) = match sense {
        Sense::Covering => (f64::INFINITY, f64::NEG_INFINITY),
        Sense::Packing => (f64::NEG_INFINITY, f64::INFINITY),
    };
    let fail = |status, objective, removed: Vec<usize>, iterations| LpSolution {
        sense,
        status,
        primal: Vec::new(),
        dual: Vec::new(),
        objective,
        removed_zero_rows: removed,
        iterations,
    };

    // zero rows: 0 ≥ b holds iff b ≤ 0 (covering), 0 ≤ b iff b ≥ 0 (packing)
    let mut removed = Vec::new();
    let mut kept = Vec::new();
    for (i, row) in p.matrix.iter().enumerate() {
        if row.iter().all(|&a| a == 0.0) {
            let ok = match sense {
                Sense::Covering => p.rhs[i] <= 0.0,
                Sense::Packing => p.rhs[i] >= 0.0,
            };
            if !ok {
                return Ok(fail(LpStatus::Infeasible, inf_value, vec![i], 0));
            }
            removed.push(i);
        } else {
            kept.push(i);
        }
    }

    // Equality form over kept rows: a·x − s = b (covering) or a·x + s = b
    // (packing), rows flipped so the right side is nonnegative.
    let m = kept.len();
    let slack_sign = match sense {
        Sense::Covering => -1.0,
        Sense::Packing => 1.0,
    };
    let ncols = nv + m;
    let mut eq: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    let mut flip = Vec::with_capacity(m);
    for (r, &i) in kept.iter().enumerate() {
        let mut row = vec![0.0; ncols];
        row[..nv].copy_from_slice(&p.matrix[i]);
        row[nv + r] = slack_sign;
        let f = if p.rhs[i] < 0.0 { -1.0 } else { 1.0 };
        for v in row.iter_mut() {
            *v *= f;
        }
        eq.push(row);
        b.push(f * p.rhs[i]);
        flip.push(f);
    }
    // internal objective is always minimized
    let mut cost = vec![0.0; ncols];
    for j in 0..nv {
        cost[j] = match sense {
            Sense::Covering => p.objective[j],
            Sense::Packing => -p.objective[j],
        };
    }

    let mut t = Tableau::new(&eq, &b, cap);
    let phase_one: Vec<f64> = (0..ncols + m).map(|j| if j >= ncols { 1.0 } else { 0.0 }).collect();
    t.set_objective(&phase_one);
    if t.run(ncols + m)? == Outcome::Unbounded {
        unreachable!("phase one is bounded below by zero");
    }
    let scale = 1.0 + b.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if t.value() > LP_TOLERANCE * scale {
        return Ok(fail(LpStatus::Infeasible, inf_value, removed, t.iterations));
    }
    t.drive_out_artificials(ncols);

    let mut phase_two = cost.clone();
    phase_two.extend(std::iter::repeat_n(0.0, m));
    t.set_objective(&phase_two);
    if t.run(ncols)? == Outcome::Unbounded {
        return Ok(fail(LpStatus::Unbounded, unb_value, removed, t.iterations));
    }

    // Refine the vertex from the final basis on the original data.
    let rows = &t.rows;
    let basis: Vec<usize> = rows.iter().map(|&r| t.basis[r]).collect();
    let bmat: Vec<Vec<f64>> = rows
        .iter()
        .map(|&r| basis.iter().map(|&j| eq[r][j]).collect())
        .collect();
    let rhs_kept: Vec<f64> = rows.iter().map(|&r| b[r]).collect();
    let xb = solve_dense(bmat.clone(), rhs_kept).unwrap_or_else(|| t.basic_values());
    let mut full = vec![0.0; ncols];
    for (&j, &v) in basis.iter().zip(&xb) {
        full[j] = if v < 0.0 && v > -LP_TOLERANCE { 0.0 } else { v };
    }
    let primal: Vec<f64> = full[..nv].to_vec();

    // Bᵀy = c_B on the kept equality rows, then undo the row flips.
    let bt: Vec<Vec<f64>> = (0..basis.len())
        .map(|c| (0..rows.len()).map(|r| bmat[r][c]).collect())
        .collect();
    let cb: Vec<f64> = basis.iter().map(|&j| cost[j]).collect();
    let y_eq = solve_dense(bt, cb).ok_or(Error::SimplexStalled {
        iterations: t.iterations,
    })?;
    let mut dual = vec![0.0; nc];
    for (&r, &y) in rows.iter().zip(&y_eq) {
        let v = match sense {
            Sense::Covering => flip[r] * y,
            Sense::Packing => -flip[r] * y,
        };
        dual[kept[r]] = if v < 0.0 && v > -LP_TOLERANCE { 0.0 } else { v };
    }
    let objective = dot(&p.objective, &primal);
    Ok(LpSolution {
        sense,
        status: LpStatus::Optimal,
        primal,
        dual,
        objective,
        removed_zero_rows: removed,
        iterations: t.iterations,
    })
}

#[derive(Debug, PartialEq, Eq)]
enum Outcome {
    Optimal,
    Unbounded,
}

/// Row-major tableau over structural, slack and artificial columns with the
/// right-hand side in the last position.
struct Tableau {
    a: Vec<Vec<f64>>,
    obj: Vec<f64>,
    basis: Vec<usize>,
    /// Rows still present; redundant rows are dropped after phase one.
    rows: Vec<usize>,
    width: usize,
    iterations: usize,
    cap: usize,
}

impl Tableau {
    fn new(eq: &[Vec<f64>], b: &[f64], cap: usize) -> Self {
        let m = eq.len();
        let ncols = eq.first().map_or(0, Vec::len);
        let width = ncols + m;
        let a = eq
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..m).map(|k| if k == i { 1.0 } else { 0.0 }));
                r.push(b[i]);
                r
            })
            .collect();
        Tableau {
            a,
            obj: vec![0.0; width + 1],
            basis: (ncols..width).collect(),
            rows: (0..m).collect(),
            width,
            iterations: 0,
            cap,
        }
    }

    fn set_objective(&mut self, cost: &[f64]) {
        let mut obj = cost.to_vec();
        obj.push(0.0);
        for &r in &self.rows {
            let cb = cost[self.basis[r]];
            if cb != 0.0 {
                for (o, v) in obj.iter_mut().zip(&self.a[r]) {
                    *o -= cb * v;
                }
            }
        }
        self.obj = obj;
    }

    fn value(&self) -> f64 {
        -self.obj[self.width]
    }

    fn basic_values(&self) -> Vec<f64> {
        self.rows.iter().map(|&r| self.a[r][self.width]).collect()
    }

    /// Bland's rule over columns `< allowed`.
    fn run(&mut self, allowed: usize) -> Result<Outcome> {
        loop {
            let Some(j) = (0..allowed).find(|&j| self.obj[j] < -LP_TOLERANCE) else {
                return Ok(Outcome::Optimal);
            };
            let mut best: Option<(f64, usize, usize)> = None;
            for &r in &self.rows {
                let arj = self.a[r][j];
                if arj > LP_TOLERANCE {
                    let ratio = self.a[r][self.width] / arj;
                    let better = match best {
                        None => true,
                        Some((q, _, bj)) => {
                            ratio < q - 1e-12 || (ratio <= q + 1e-12 && self.basis[r] < bj)
                        }
                    };
                    if better {
                        best = Some((ratio, r, self.basis[r]));
                    }
                }
            }
            let Some((_, r, _)) = best else {
                return Ok(Outcome::Unbounded);
            };
            if self.iterations >= self.cap {
                return Err(Error::SimplexStalled {
                    iterations: self.iterations,
                });
            }
            self.pivot(r, j);
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        self.iterations += 1;
        let p = self.a[r][j];
        for v in self.a[r].iter_mut() {
            *v /= p;
        }
        self.a[r][j] = 1.0;
        let pivot_row = self.a[r].clone();
        let eliminate = |row: &mut Vec<f64>| {
            let f = row[j];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                    if v.abs() < 1e-13 {
                        *v = 0.0;
                    }
                }
                row[j] = 0.0;
            }
        };
        for &i in &self.rows {
            if i != r {
                eliminate(&mut self.a[i]);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = j;
    }

    fn drive_out_artificials(&mut self, ncols: usize) {
        let rows = self.rows.clone();
        for r in rows {
            if self.basis[r] < ncols {
                continue;
            }
            let col = (0..ncols)
                .filter(|&j| self.a[r][j].abs() > LP_TOLERANCE)
                .max_by(|&x, &y| self.a[r][x].abs().total_cmp(&self.a[r][y].abs()));
            match col {
                Some(j) => self.pivot(r, j),
                None => self.rows.retain(|&i| i != r),
            }
        }
    }
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[p][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for i in (col + 1)..n {
            let f = a[i][col] / a[col][col];
            if f != 0.0 {
                for k in col..n {
                    a[i][k] -= f * a[col][k];
                }
                b[i] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = ((i + 1)..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

//! Domination parameters, vector representations and their LP value, and
//! checks of the lower bounds they give on `η(I(G))`.
//!
//! `Γ(G)` is a supremum over all representations and is never computed.
//! [`gamma_lower_bound`] only certifies `Γ(G) ≥ max |P|` over the
//! representations supplied.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{blow_up, lambda_max, Graph};
use crate::lp::{solve_covering_lp, LinearProgram, LpSolution};
use crate::report::{ser_f64, ser_f64_vec, CheckRecord, Status};
use crate::spectral::{eta_at_least_record, eta_of_independence_complex, Eta};

/// Subset-search cap for `γ` and `γ̃`.
pub const DOMINATION_CAP: usize = 16;
/// Cap for `iγ`, which searches pairs of sets.
pub const INDEPENDENT_DOMINATION_CAP: usize = 14;
/// Gram-entry tolerance for representation validity.
pub const REPRESENTATION_TOLERANCE: f64 = 1e-9;
/// Tolerance on the `η` and `λ_n` inequalities.
pub const BOUND_TOLERANCE: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Witness {
    Set { vertices: Vec<usize> },
    /// Independent set attaining the maximum, and its smallest cover.
    Pair { independent: Vec<usize>, cover: Vec<usize> },
    Weights {
        #[serde(serialize_with = "ser_f64_vec")]
        primal: Vec<f64>,
        #[serde(serialize_with = "ser_f64_vec")]
        dual: Vec<f64>,
    },
    /// Index of the representation attaining the bound.
    Representation { index: usize },
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct DominationReport {
    pub parameter: String,
    #[serde(serialize_with = "ser_f64")]
    pub value: f64,
    pub witness: Witness,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl DominationReport {
    fn new(parameter: &str, value: f64, witness: Witness) -> Self {
        DominationReport {
            parameter: parameter.into(),
            value,
            witness,
            notes: Vec::new(),
        }
    }
}

fn check_cap(g: &Graph, cap: usize, what: &'static str) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.n() > cap {
        return Err(Error::SearchCapExceeded {
            what,
            size: g.n(),
            cap,
        });
    }
    Ok(())
}

fn open_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect()
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// Smallest set of vertices whose masks together cover `target`, scanning
/// sizes upward and subsets of one size in increasing mask order.
fn min_cover(masks: &[u32], target: u32) -> Option<u32> {
    let n = masks.len();
    let union = |s: u32| members(s).iter().fold(0u32, |m, &v| m | masks[v]);
    if union((1u32 << n) - 1) & target != target {
        return None;
    }
    for size in 0..=n {
        let mut best: Option<u32> = None;
        for_each_subset_of_size(n, size, |s| {
            if best.is_none() && union(s) & target == target {
                best = Some(s);
            }
        });
        if best.is_some() {
            return best;
        }
    }
    None
}

// Gosper's hack walks the size-`k` subsets of `0..n` in increasing order.
pub(crate) fn for_each_subset_of_size(n: usize, k: usize, mut f: impl FnMut(u32)) {
    if k == 0 {
        f(0);
        return;
    }
    if k > n {
        return;
    }
    let limit = 1u64 << n;
    let mut s: u64 = (1 << k) - 1;
    while s < limit {
        f(s as u32);
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
}

/// `γ(G)`: smallest `S` with `S ∪ N(S) = V`.
pub fn domination_number(g: &Graph) -> Result<DominationReport> {
    domination_number_capped(g, DOMINATION_CAP)
}

pub fn domination_number_capped(g: &Graph, cap: usize) -> Result<DominationReport> {
    check_cap(g, cap.min(31), "domination search")?;
    let closed: Vec<u32> = open_masks(g).iter().enumerate().map(|(v, m)| m | 1 << v).collect();
    let all = (1u32 << g.n()) - 1;
    let s = min_cover(&closed, all).expect("V dominates itself");
    Ok(DominationReport::new(
        "domination_number",
        s.count_ones() as f64,
        Witness::Set { vertices: members(s) },
    ))
}

/// `γ̃(G)`: smallest `S` with `N(S) = V`.
pub fn total_domination_number(g: &Graph) -> Result<DominationReport> {
    total_domination_number_capped(g, DOMINATION_CAP)
}

pub fn total_domination_number_capped(g: &Graph, cap: usize) -> Result<DominationReport> {
    check_cap(g, cap.min(31), "total domination search")?;
    if let Some(v) = g.isolated_vertex() {
        return Err(Error::NoTotalDominatingSet(v));
    }
    let all = (1u32 << g.n()) - 1;
    let s = min_cover(&open_masks(g), all).expect("no isolated vertex");
    Ok(DominationReport::new(
        "total_domination_number",
        s.count_ones() as f64,
        Witness::Set { vertices: members(s) },
    ))
}

/// `iγ(G) = max_I min{|S| : N(S) ⊇ I}` over independent `I`. Monotone in
/// `I`, so only maximal independent sets are scanned. An isolated vertex
/// can never be covered; the value is then `+∞`.
pub fn independent_domination_number(g: &Graph) -> Result<DominationReport> {
    independent_domination_number_capped(g, INDEPENDENT_DOMINATION_CAP)
}

pub fn independent_domination_number_capped(g: &Graph, cap: usize) -> Result<DominationReport> {
    check_cap(g, cap.min(31), "independent domination search")?;
    let masks = open_masks(g);
    if let Some(v) = g.isolated_vertex() {
        let mut r = DominationReport::new(
            "independent_domination_number",
            f64::INFINITY,
            Witness::Pair {
                independent: vec![v],
                cover: Vec::new(),
            },
        );
        r.notes.push(format!("vertex {v} is isolated and has no neighbor to cover it"));
        return Ok(r);
    }
    let mut best: Option<(u32, u32)> = None;
    for i in maximal_independent_sets(&masks) {
        let s = min_cover(&masks, i).expect("no isolated vertex");
        if best.is_none_or(|(_, b)| s.count_ones() > b.count_ones()) {
            best = Some((i, s));
        }
    }
    let (i, s) = best.expect("a maximal independent set exists");
    Ok(DominationReport::new(
        "independent_domination_number",
        s.count_ones() as f64,
        Witness::Pair {
            independent: members(i),
            cover: members(s),
        },
    ))
}

fn maximal_independent_sets(masks: &[u32]) -> Vec<u32> {
    let n = masks.len();
    (0u32..1 << n)
        .filter(|&s| {
            let independent = members(s).iter().all(|&v| masks[v] & s == 0);
            independent && (0..n).all(|v| s >> v & 1 == 1 || masks[v] & s != 0)
        })
        .collect()
}

/// Covering LP of `γ*_s`: `Σ_{u∈N(v)} f(u) + deg(v)·f(v) ≥ 1` per vertex.
pub fn strong_domination_lp(g: &Graph) -> LinearProgram {
    let n = g.n();
    let rows = (0..n)
        .map(|v| {
            let mut row = vec![0.0; n];
            for &u in g.neighbors(v) {
                row[u] = 1.0;
            }
            row[v] = g.degree(v) as f64;
            row
        })
        .collect();
    LinearProgram::new(vec![1.0; n], rows, vec![1.0; n]).expect("square data")
}

fn lp_report(parameter: &str, sol: LpSolution) -> DominationReport {
    let mut r = DominationReport::new(
        parameter,
        sol.objective,
        Witness::Weights {
            primal: sol.primal.clone(),
            dual: sol.dual.clone(),
        },
    );
    if !sol.is_optimal() {
        r.witness = Witness::None;
        r.notes.push(format!("linear program {:?}", sol.status).to_lowercase());
    }
    r
}

/// `γ*_s(G)`. An isolated vertex makes the program infeasible; the value
/// is then `+∞`.
pub fn fractional_strong_domination(g: &Graph) -> Result<DominationReport> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let sol = solve_covering_lp(&strong_domination_lp(g))?;
    Ok(lp_report("fractional_strong_domination", sol))
}

/// Rows `P(v) ∈ ℝ^dim`, one per vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorRepresentation {
    dim: usize,
    vectors: Vec<Vec<f64>>,
}

impl VectorRepresentation {
    pub fn new(dim: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("representation dimension must be positive".into()));
        }
        if let Some(v) = vectors.iter().position(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector {v} has length {}, expected {dim}",
                vectors[v].len()
            )));
        }
        if vectors.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("representation entries must be finite".into()));
        }
        Ok(VectorRepresentation { dim, vectors })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: VectorRepresentation = serde_json::from_str(s)?;
        Self::new(raw.dim, raw.vectors)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn gram(&self) -> Vec<Vec<f64>> {
        self.vectors
            .iter()
            .map(|p| self.vectors.iter().map(|q| dot(p, q)).collect())
            .collect()
    }

    /// Same vectors with `extra` zero coordinates appended.
    pub fn zero_padded(&self, extra: usize) -> Self {
        let vectors = self
            .vectors
            .iter()
            .map(|p| p.iter().copied().chain(std::iter::repeat_n(0.0, extra)).collect())
            .collect();
        VectorRepresentation {
            dim: self.dim + extra,
            vectors,
        }
    }

    /// `Q((v, i)) = P(v)` on a blow-up with the given projection.
    pub fn pulled_back(&self, projection: &[usize]) -> Self {
        VectorRepresentation {
            dim: self.dim,
            vectors: projection.iter().map(|&v| self.vectors[v].clone()).collect(),
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// First pair violating the Gram conditions, with its inner product.
pub fn representation_violation(g: &Graph, p: &VectorRepresentation) -> Option<(usize, usize, f64)> {
    if p.len() != g.n() {
        return Some((p.len(), g.n(), f64::NAN));
    }
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            let d = dot(&p.vectors[u], &p.vectors[v]);
            let need = if g.has_edge(u, v) { 1.0 } else { 0.0 };
            if d < need - REPRESENTATION_TOLERANCE {
                return Some((u, v, d));
            }
        }
    }
    None
}

/// `P(u)·P(v) ≥ 1` on edges and `≥ 0` on non-edges, within `1e-9`.
pub fn validate_representation(g: &Graph, p: &VectorRepresentation) -> bool {
    representation_violation(g, p).is_none()
}

/// `min α·1` subject to `α·PPᵀ ≥ 1`, `α ≥ 0`.
pub fn representation_lp(p: &VectorRepresentation) -> LinearProgram {
    let n = p.len();
    LinearProgram::new(vec![1.0; n], p.gram(), vec![1.0; n]).expect("square data")
}

/// `|P|`, with the optimal `α` and the packing dual. Errors on an invalid
/// representation.
pub fn representation_value(g: &Graph, p: &VectorRepresentation) -> Result<DominationReport> {
    if let Some((u, v, d)) = representation_violation(g, p) {
        return Err(Error::InvalidParameter(format!(
            "not a vector representation: P({u})·P({v}) = {d}"
        )));
    }
    let sol = solve_covering_lp(&representation_lp(p))?;
    Ok(lp_report("representation_value", sol))
}

/// `P(v) ∈ ℝ^E` is the incidence vector of `v`, so `PPᵀ` has `deg(v)` on
/// the diagonal and the adjacency matrix off it.
pub fn edge_incidence_representation(g: &Graph) -> Result<VectorRepresentation> {
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::InvalidParameter("edge incidence needs at least one edge".into()));
    }
    let mut vectors = vec![vec![0.0; m]; g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        vectors[u][e] = 1.0;
        vectors[v][e] = 1.0;
    }
    Ok(VectorRepresentation { dim: m, vectors })
}

/// Representation of `C_{3k}` in `ℝ^{2k}`: vertex `3j ↦ e_{2j}`,
/// `3j+1 ↦ e_{2j} + e_{2j+1}`, `3j+2 ↦ e_{2j+1} + e_{2j+2}`, indices mod `2k`.
pub fn cycle_representation(k: usize) -> Result<VectorRepresentation> {
    if k == 0 {
        return Err(Error::InvalidParameter("cycle representation needs k >= 1".into()));
    }
    let dim = 2 * k;
    let mut vectors = Vec::with_capacity(3 * k);
    for j in 0..k {
        for coords in [vec![2 * j], vec![2 * j, 2 * j + 1], vec![2 * j + 1, 2 * j + 2]] {
            let mut p = vec![0.0; dim];
            for c in coords {
                p[c % dim] += 1.0;
            }
            vectors.push(p);
        }
    }
    Ok(VectorRepresentation { dim, vectors })
}

/// `Γ(G) ≥ max |P|` over the supplied representations.
pub fn gamma_lower_bound(g: &Graph, reps: &[VectorRepresentation]) -> Result<DominationReport> {
    if reps.is_empty() {
        return Err(Error::InvalidParameter("no representations supplied".into()));
    }
    let mut best = (f64::NEG_INFINITY, 0);
    for (i, p) in reps.iter().enumerate() {
        let v = representation_value(g, p)?.value;
        if v > best.0 {
            best = (v, i);
        }
    }
    let mut r = DominationReport::new(
        "gamma_lower_bound",
        best.0,
        Witness::Representation { index: best.1 },
    );
    r.notes.push("lower bound on the supremum over all representations".into());
    Ok(r)
}

/// `η(I(G)) ≥ n / λ_n(G)`.
pub fn verify_eta_vs_lambda_max(g: &Graph) -> Result<CheckRecord> {
    let eta = eta_of_independence_complex(g)?;
    verify_eta_vs_lambda_max_with(g, eta)
}

fn verify_eta_vs_lambda_max_with(g: &Graph, eta: Eta) -> Result<CheckRecord> {
    let lmax = lambda_max(g)?;
    let bound = if lmax <= 0.0 { f64::INFINITY } else { g.n() as f64 / lmax };
    Ok(eta_at_least_record(
        "independence_eta_vs_lambda_max",
        "eta(I(G)) >= n/lambda_n(G)",
        eta,
        bound,
        BOUND_TOLERANCE,
    ))
}

/// `λ_n(G) ≤ max_u P(u)·Σ_v P(v)`.
pub fn verify_lambda_max_vs_representation(g: &Graph, p: &VectorRepresentation) -> Result<CheckRecord> {
    if let Some((u, v, d)) = representation_violation(g, p) {
        return Err(Error::InvalidParameter(format!(
            "not a vector representation: P({u})·P({v}) = {d}"
        )));
    }
    let mut total = vec![0.0; p.dim];
    for q in &p.vectors {
        for (t, x) in total.iter_mut().zip(q) {
            *t += x;
        }
    }
    let rhs = p.vectors.iter().map(|q| dot(q, &total)).fold(f64::NEG_INFINITY, f64::max);
    Ok(CheckRecord::at_most(
        "lambda_max_vs_representation",
        "lambda_n(G) <= max_u P(u).sum_v P(v)",
        None,
        lambda_max(g)?,
        rhs,
        BOUND_TOLERANCE,
    ))
}

/// `η(I(G)) ≥ Γ(G) ≥ max |P|`, plus for every weight vector `a`:
/// `η(I(G_a)) = η(I(G))` and `γ*_s(G_a) ≤ η(I(G))`.
pub fn verify_eta_vs_gamma(
    g: &Graph,
    reps: &[VectorRepresentation],
    weights: &[Vec<usize>],
) -> Result<Vec<CheckRecord>> {
    let eta = eta_of_independence_complex(g)?;
    let mut out = Vec::new();
    if !reps.is_empty() {
        let lb = gamma_lower_bound(g, reps)?;
        out.push(eta_at_least_record(
            "independence_eta_vs_gamma",
            "eta(I(G)) >= Gamma(G) >= max |P|",
            eta,
            lb.value,
            BOUND_TOLERANCE,
        ));
    }
    for a in weights {
        let (ga, _) = blow_up(g, a)?;
        let eta_a = eta_of_independence_complex(&ga)?;
        let tag = format!("a = {a:?}");
        let status = if eta.is_certified() && eta_a.is_certified() {
            if eta == eta_a {
                Status::Pass
            } else {
                Status::Fail
            }
        } else {
            Status::Inconclusive
        };
        out.push(
            CheckRecord::equal("blowup_eta_invariance", "eta(I(G_a)) = eta(I(G))", None, eta_a.as_f64(), eta.as_f64(), 0.0)
                .with_status(status)
                .with_note(format!("{tag}; eta(I(G_a)) = {eta_a}, eta(I(G)) = {eta}")),
        );
        let gs = fractional_strong_domination(&ga)?.value;
        let status = match eta.at_least(gs, BOUND_TOLERANCE) {
            Some(true) => Status::Pass,
            Some(false) => Status::Fail,
            None => Status::Inconclusive,
        };
        out.push(
            CheckRecord::at_most(
                "blowup_strong_fractional_vs_eta",
                "gamma*_s(G_a) <= eta(I(G))",
                None,
                gs,
                eta.as_f64(),
                BOUND_TOLERANCE,
            )
            .with_status(status)
            .with_note(tag),
        );
    }
    Ok(out)
}

/// The classical bounds `η(I(G)) ≥ γ̃/2`, `≥ iγ` and `≥ γ*_s`, plus the
/// comparison `Γ(G) ≥ γ*_s(G)` through the edge-incidence representation.
pub fn verify_classical_bounds(g: &Graph) -> Result<Vec<CheckRecord>> {
    let eta = eta_of_independence_complex(g)?;
    let mut out = vec![verify_eta_vs_lambda_max_with(g, eta)?];
    let gs = fractional_strong_domination(g)?;
    out.push(eta_at_least_record(
        "independence_eta_vs_strong_fractional",
        "eta(I(G)) >= gamma*_s(G)",
        eta,
        gs.value,
        BOUND_TOLERANCE,
    ));
    if g.n() <= INDEPENDENT_DOMINATION_CAP {
        let ig = independent_domination_number(g)?;
        out.push(eta_at_least_record(
            "independence_eta_vs_independent_domination",
            "eta(I(G)) >= i-gamma(G)",
            eta,
            ig.value,
            BOUND_TOLERANCE,
        ));
    }
    if g.n() <= DOMINATION_CAP && g.isolated_vertex().is_none() {
        let tg = total_domination_number(g)?;
        out.push(eta_at_least_record(
            "independence_eta_vs_total_domination",
            "eta(I(G)) >= total-gamma(G)/2",
            eta,
            tg.value / 2.0,
            BOUND_TOLERANCE,
        ));
    }
    if g.edge_count() > 0 {
        let inc = representation_value(g, &edge_incidence_representation(g)?)?;
        out.push(CheckRecord::equal_relative(
            "edge_incidence_value",
            "|P_incidence| = gamma*_s(G)",
            None,
            inc.value,
            gs.value,
            1e-6,
        ));
    }
    Ok(out)
}

/// On `C_n`: `η(I(C_n)) = ⌊(n+1)/3⌋` and `γ*_s(C_n) = n/4`; for `3 | n`
/// also `|P| = n/3` for the cycle representation and `η(I(C_n)) ≥ |P|`
/// with equality.
pub fn verify_cycle(n: usize) -> Result<Vec<CheckRecord>> {
    let g = crate::graphs::cycle_graph(n)?;
    let eta = eta_of_independence_complex(&g)?;
    let want = ((n + 1) / 3) as f64;
    let mut out = vec![CheckRecord::equal(
        "cycle_independence_eta",
        "eta(I(C_n)) = floor((n+1)/3)",
        None,
        eta.as_f64(),
        want,
        0.0,
    )
    .with_status(if eta == Eta::Finite((n + 1) / 3) { Status::Pass } else { Status::Fail })];
    out.push(CheckRecord::equal(
        "cycle_strong_fractional",
        "gamma*_s(C_n) = n/4",
        None,
        fractional_strong_domination(&g)?.value,
        n as f64 / 4.0,
        1e-6,
    ));
    if n.is_multiple_of(3) {
        let k = n / 3;
        let value = representation_value(&g, &cycle_representation(k)?)?.value;
        out.push(CheckRecord::equal(
            "cycle_representation_value",
            "|P_cycle| = k on C_{3k}",
            Some(k as i64),
            value,
            k as f64,
            1e-6,
        ));
        out.push(
            CheckRecord::equal(
                "cycle_eta_gamma_tight",
                "eta(I(C_{3k})) = |P_cycle|",
                Some(k as i64),
                eta.as_f64(),
                value,
                1e-6,
            ),
        );
    }
    Ok(out)
}

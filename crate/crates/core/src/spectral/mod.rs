//! Hodge Laplacians of flag complexes and their spectra, reduced Betti
//! numbers, homological connectivity `η`, and verifiers for the eigenvalue
//! recursion `k·μ_k ≥ (k+1)·μ_{k-1} − n` and the spectral-gap vanishing
//! criterion.
//!
//! `Δ_k = d_{k-1} d_{k-1}ᵀ + d_kᵀ d_k` with the augmentation as `d_{-1}`, so
//! `Δ_0 = J + L_G`. Matrices are assembled in exact integer arithmetic and
//! converted to `f64` only for the eigensolver.

mod eigen;
mod identities;
mod rank;

use std::fmt;

use serde::{Serialize, Serializer};

pub use eigen::{symmetric_eigen, symmetric_eigenvalues, Spectrum};
pub use identities::{
    facet_degree_excess, flag_link_swaps, verify_cochain_identities, verify_facet_degree_bound,
};
pub use rank::{integer_rank, matrix_rank};

use crate::complex::{default_max_dim, independence_complex, FlagComplex};
use crate::error::{Error, Result};
use crate::graphs::{spectral_gap, Graph};
use crate::matrix::{DenseMatrix, IntMatrix};
use crate::report::{CheckRecord, Status};

/// Tolerance on the eigenvalue recursion.
pub const RECURSION_TOLERANCE: f64 = 1e-7;
/// Margin by which `λ_2` must exceed `kn/(k+1)` before vanishing is asserted.
pub const THRESHOLD_MARGIN: f64 = 1e-9;

/// `Δ_k` together with the coboundaries it was assembled from.
#[derive(Clone, Debug)]
pub struct HodgeLaplacian {
    degree: usize,
    integer: IntMatrix,
    matrix: DenseMatrix,
    down: IntMatrix,
    up: IntMatrix,
}

impl HodgeLaplacian {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    /// Exact integer entries.
    pub fn integer_matrix(&self) -> &IntMatrix {
        &self.integer
    }

    /// `d_{k-1}` (the augmentation column for `k = 0`).
    pub fn down(&self) -> &IntMatrix {
        &self.down
    }

    /// `d_k`; zero rows when `k` is the top stored dimension.
    pub fn up(&self) -> &IntMatrix {
        &self.up
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        symmetric_eigenvalues(&self.matrix)
    }

    /// `1e-7 · (1 + ‖Δ_k‖_∞)`, below which an eigenvalue counts as zero.
    pub fn zero_threshold(&self) -> f64 {
        1e-7 * (1.0 + self.matrix.norm_inf())
    }
}

/// `Δ_k` of `x`. At `k = max_dim` the `d_kᵀ d_k` term is the zero map.
pub fn hodge_laplacian(x: &FlagComplex, k: usize) -> Result<HodgeLaplacian> {
    if k > x.max_dim() {
        return Err(Error::DegreeOutOfRange {
            k: k as i64,
            min: 0,
            max: x.max_dim() as i64,
        });
    }
    if x.count(k as i64) == 0 {
        return Err(Error::NoSimplices { k });
    }
    let down = x.coboundary_matrix(k as i64 - 1)?;
    let up = x.coboundary_or_zero(k as i64);
    let integer = down.gram().add(&up.gram_transposed())?;
    Ok(HodgeLaplacian {
        degree: k,
        matrix: integer.to_dense(),
        integer,
        down,
        up,
    })
}

/// Smallest eigenvalue of `Δ_k` on a complex.
pub fn min_eigenvalue(x: &FlagComplex, k: usize) -> Result<f64> {
    Ok(hodge_laplacian(x, k)?.spectrum()?.min())
}

/// `μ_k(G)`: smallest eigenvalue of `Δ_k` of the full flag complex.
pub fn mu_k(g: &Graph, k: usize) -> Result<f64> {
    min_eigenvalue(&FlagComplex::full(g)?, k)
}

/// Homological connectivity `η = min{k : b̃^k ≠ 0} + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eta {
    Finite(usize),
    /// Every reduced cohomology group vanishes (full complex scanned).
    Infinite,
    /// Enumeration was truncated; only a lower bound is certified.
    AtLeast(usize),
}

impl Eta {
    /// Whether `η ≥ bound - tol` is certified: `None` when truncation leaves
    /// it undecided.
    pub fn at_least(&self, bound: f64, tol: f64) -> Option<bool> {
        match *self {
            Eta::Infinite => Some(true),
            Eta::Finite(e) => Some(e as f64 >= bound - tol),
            Eta::AtLeast(b) if b as f64 >= bound - tol => Some(true),
            Eta::AtLeast(_) => None,
        }
    }

    /// As `f64`, with `Infinite` as `+∞` and `AtLeast(b)` as `b`.
    pub fn as_f64(&self) -> f64 {
        match *self {
            Eta::Finite(e) | Eta::AtLeast(e) => e as f64,
            Eta::Infinite => f64::INFINITY,
        }
    }

    pub fn is_certified(&self) -> bool {
        !matches!(self, Eta::AtLeast(_))
    }
}

impl fmt::Display for Eta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eta::Finite(e) => write!(f, "{e}"),
            Eta::Infinite => write!(f, "inf"),
            Eta::AtLeast(b) => write!(f, ">={b} (truncated)"),
        }
    }
}

impl Serialize for Eta {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Eta::Finite(e) => s.serialize_u64(*e as u64),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

/// Reduced Betti numbers `b̃^0..=b̃^{max_dim}` and `η`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BettiProfile {
    pub betti: Vec<usize>,
    pub eta: Eta,
    pub max_dim_scanned: usize,
    pub truncated: bool,
}

/// Betti numbers computed twice: as the near-zero eigenvalue count of
/// `Δ_k`, and as `|X(k)| − rank d_k − rank d_{k-1}` with exact integer ranks.
/// Disagreement is an error.
///
/// On a truncated complex the top stored dimension is computed for the
/// skeleton. Vanishing there still certifies vanishing for the whole
/// complex, but a nonzero value does not.
pub fn betti_profile(x: &FlagComplex) -> Result<BettiProfile> {
    let max_dim = x.max_dim();
    // ranks[k + 1] = rank d_k for k = -1..max_dim
    let mut ranks = Vec::with_capacity(max_dim + 2);
    for k in -1..=(max_dim as i64) {
        let d = x.coboundary_or_zero(k);
        ranks.push(if d.rows() == 0 || d.cols() == 0 { 0 } else { integer_rank(&d) });
    }
    let mut betti = Vec::with_capacity(max_dim + 1);
    for k in 0..=max_dim {
        let size = x.count(k as i64);
        if size == 0 {
            betti.push(0);
            continue;
        }
        let rank_nullity = size - ranks[k + 1] - ranks[k];
        let lap = hodge_laplacian(x, k)?;
        let kernel = lap.spectrum()?.count_near_zero(lap.zero_threshold());
        if kernel != rank_nullity {
            return Err(Error::RankMismatch {
                k,
                kernel,
                rank_nullity,
            });
        }
        betti.push(kernel);
    }
    let truncated = x.is_truncated();
    let eta = match betti.iter().position(|&b| b > 0) {
        Some(k) if k < max_dim || !truncated => Eta::Finite(k + 1),
        Some(k) => Eta::AtLeast(k + 1),
        None if truncated => Eta::AtLeast(max_dim + 2),
        None => Eta::Infinite,
    };
    Ok(BettiProfile {
        betti,
        eta,
        max_dim_scanned: max_dim,
        truncated,
    })
}

/// `η` of the full flag complex of `g`.
pub fn eta_of_flag_complex(g: &Graph) -> Result<Eta> {
    Ok(betti_profile(&FlagComplex::full(g)?)?.eta)
}

/// `η(I(G))`, scanning dimensions up to `min(n − 1, 8)`.
pub fn eta_of_independence_complex(g: &Graph) -> Result<Eta> {
    let x = independence_complex(g, default_max_dim(g.n()))?;
    Ok(betti_profile(&x)?.eta)
}

/// `η ≥ bound` as a record; undecided truncation is inconclusive.
pub fn eta_at_least_record(check: &str, relation: &str, eta: Eta, bound: f64, tol: f64) -> CheckRecord {
    let status = match eta.at_least(bound, tol) {
        Some(true) => Status::Pass,
        Some(false) => Status::Fail,
        None => Status::Inconclusive,
    };
    CheckRecord::at_least(check, relation, None, eta.as_f64(), bound, tol)
        .with_status(status)
        .with_note(format!("eta = {eta}"))
}

/// Minimal eigenvalue of every nonempty `Δ_k`, indexed by `k`.
pub fn mu_profile(x: &FlagComplex) -> Result<Vec<f64>> {
    (0..=x.top_dim()).map(|k| min_eigenvalue(x, k)).collect()
}

/// `k·μ_k ≥ (k+1)·μ_{k-1} − n` for every `k ≥ 1` with `X(k)` nonempty.
pub fn verify_eigenvalue_recursion(g: &Graph) -> Result<Vec<CheckRecord>> {
    let x = FlagComplex::full(g)?;
    let mu = mu_profile(&x)?;
    Ok(recursion_records(g.n(), &mu))
}

pub(crate) fn recursion_records(n: usize, mu: &[f64]) -> Vec<CheckRecord> {
    (1..mu.len())
        .map(|k| {
            let kf = k as f64;
            CheckRecord::at_least(
                "eigenvalue_recursion",
                "k*mu_k >= (k+1)*mu_{k-1} - n",
                Some(k as i64),
                kf * mu[k],
                (kf + 1.0) * mu[k - 1] - n as f64,
                RECURSION_TOLERANCE,
            )
        })
        .collect()
}

/// `λ_2 > kn/(k+1)` implies `b̃^k(X(G)) = 0`, for every `k` with `X(k)`
/// nonempty.
pub fn verify_gap_vanishing(g: &Graph) -> Result<Vec<CheckRecord>> {
    let x = FlagComplex::full(g)?;
    let profile = betti_profile(&x)?;
    let gap = spectral_gap(g)?;
    Ok(vanishing_records(g.n(), gap, &profile, x.top_dim()))
}

pub(crate) fn vanishing_records(
    n: usize,
    gap: f64,
    profile: &BettiProfile,
    top_dim: usize,
) -> Vec<CheckRecord> {
    (0..=top_dim)
        .map(|k| {
            let threshold = (k * n) as f64 / (k + 1) as f64;
            let b = profile.betti[k];
            let margin = gap - threshold;
            let status = if margin > THRESHOLD_MARGIN {
                if b == 0 {
                    Status::Pass
                } else {
                    Status::Fail
                }
            } else {
                Status::Vacuous
            };
            let rec = CheckRecord::implication(
                "spectral_gap_vanishing",
                "lambda_2 > k*n/(k+1) => reduced betti_k = 0",
                Some(k as i64),
                gap,
                threshold,
                status,
            )
            .with_note(format!("betti_{k} = {b}"));
            if margin.abs() <= THRESHOLD_MARGIN && b > 0 {
                rec.with_note(format!("betti_{k} = {b}; sharp: lambda_2 meets the threshold exactly"))
            } else {
                rec
            }
        })
        .collect()
}

/// Exact structural checks on the full flag complex: `d_k·d_{k-1} = 0` in
/// integers for every `k`, `Δ_0 = J + L_G` entrywise, the two Betti
/// computations agreeing, and `λ_n(G) = n − λ_2(Ḡ)` within `1e-8`.
pub fn verify_structure(g: &Graph) -> Result<Vec<CheckRecord>> {
    let x = FlagComplex::full(g)?;
    let mut out = Vec::new();
    for k in 0..x.max_dim() as i64 {
        let prod = x.coboundary_matrix(k)?.mul(&x.coboundary_matrix(k - 1)?)?;
        let worst = (0..prod.rows())
            .flat_map(|i| prod.row(i).iter().map(|v| v.unsigned_abs()))
            .max()
            .unwrap_or(0);
        out.push(CheckRecord::equal(
            "coboundary_squares_to_zero",
            "d_k d_{k-1} = 0",
            Some(k),
            worst as f64,
            0.0,
            0.0,
        ));
    }
    let delta0 = hodge_laplacian(&x, 0)?;
    let lap = crate::graphs::laplacian_matrix(g)?;
    let mut worst = 0.0f64;
    for i in 0..g.n() {
        for j in 0..g.n() {
            worst = worst.max((delta0.matrix().get(i, j) - 1.0 - lap.get(i, j)).abs());
        }
    }
    out.push(CheckRecord::equal("laplacian_zero_identity", "Delta_0 = J + L_G", Some(0), worst, 0.0, 0.0));
    let hodge = match betti_profile(&x) {
        Ok(p) => CheckRecord::equal("hodge_betti_consistency", "dim ker Delta_k = |X(k)| - rank d_k - rank d_{k-1}", None, 0.0, 0.0, 0.0)
            .with_note(format!("betti = {:?}", p.betti)),
        Err(Error::RankMismatch { k, kernel, rank_nullity }) => CheckRecord::equal(
            "hodge_betti_consistency",
            "dim ker Delta_k = |X(k)| - rank d_k - rank d_{k-1}",
            Some(k as i64),
            kernel as f64,
            rank_nullity as f64,
            0.0,
        ),
        Err(e) => return Err(e),
    };
    out.push(hodge);
    if g.n() >= 2 {
        let lmax = crate::graphs::lambda_max(g)?;
        let gap_c = spectral_gap(&crate::graphs::complement(g))?;
        out.push(CheckRecord::equal(
            "complement_spectrum",
            "lambda_n(G) = n - lambda_2(complement G)",
            None,
            lmax,
            g.n() as f64 - gap_c,
            1e-8,
        ));
    }
    Ok(out)
}

/// The complete `r`-partite graph with sides `ℓ`: `μ_k = ℓ(r−k−1)` for
/// `0 ≤ k ≤ r−1`, zero recursion slack, `b̃^{r-1} = (ℓ−1)^r` and
/// `λ_2 = ℓ(r−1)`.
pub fn verify_turan(r: usize, ell: usize) -> Result<Vec<CheckRecord>> {
    let g = crate::graphs::turan_graph(r, ell)?;
    let x = FlagComplex::full(&g)?;
    let mu = mu_profile(&x)?;
    let mut out = Vec::new();
    for (k, &m) in mu.iter().enumerate() {
        out.push(CheckRecord::equal(
            "turan_mu",
            "mu_k(T_r(r*l)) = l(r-k-1)",
            Some(k as i64),
            m,
            (ell * (r - k - 1)) as f64,
            1e-8,
        ));
    }
    for rec in recursion_records(g.n(), &mu) {
        out.push(CheckRecord::equal(
            "turan_recursion_slack",
            "k*mu_k - (k+1)*mu_{k-1} + n = 0",
            rec.k,
            rec.slack,
            0.0,
            RECURSION_TOLERANCE,
        ));
    }
    let profile = betti_profile(&x)?;
    out.push(CheckRecord::equal(
        "turan_top_betti",
        "reduced betti_{r-1} = (l-1)^r",
        Some(r as i64 - 1),
        profile.betti[r - 1] as f64,
        ((ell - 1) as f64).powi(r as i32),
        0.0,
    ));
    out.push(CheckRecord::equal(
        "turan_spectral_gap",
        "lambda_2(T_r(r*l)) = l(r-1)",
        None,
        spectral_gap(&g)?,
        (ell * (r - 1)) as f64,
        1e-8,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, cycle_graph, laplacian_matrix, random_gnp, turan_graph};
    use crate::complex::build_flag_complex;

    #[test]
    fn delta_zero_is_j_plus_laplacian() {
        for seed in 0..6 {
            let g = random_gnp(8, 0.5, seed).unwrap();
            let x = FlagComplex::full(&g).unwrap();
            let d0 = hodge_laplacian(&x, 0).unwrap();
            let l = laplacian_matrix(&g).unwrap();
            for i in 0..8 {
                for j in 0..8 {
                    assert_eq!(d0.matrix().get(i, j), 1.0 + l.get(i, j));
                }
            }
        }
        let x = FlagComplex::full(&complete_graph(2)).unwrap();
        assert_eq!(hodge_laplacian(&x, 0).unwrap().matrix().to_rows(), vec![vec![2.0, 0.0], vec![0.0, 2.0]]);
    }

    #[test]
    fn top_laplacian_of_triangle() {
        let x = FlagComplex::full(&complete_graph(3)).unwrap();
        let d2 = hodge_laplacian(&x, 2).unwrap();
        assert_eq!(d2.matrix().to_rows(), vec![vec![3.0]]);
        assert!(matches!(hodge_laplacian(&FlagComplex::full(&cycle_graph(4).unwrap()).unwrap(), 2), Err(Error::NoSimplices { k: 2 })));
    }

    #[test]
    fn mu_examples() {
        for n in 2..=6 {
            let g = complete_graph(n);
            assert!((mu_k(&g, 0).unwrap() - n as f64).abs() < 1e-8);
            assert!((mu_k(&g, 0).unwrap() - spectral_gap(&g).unwrap()).abs() < 1e-8);
        }
        assert!(mu_k(&cycle_graph(4).unwrap(), 1).unwrap().abs() < 1e-8);
        for (r, ell) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
            let g = turan_graph(r, ell).unwrap();
            for k in 0..r {
                let want = (ell * (r - k - 1)) as f64;
                assert!((mu_k(&g, k).unwrap() - want).abs() < 1e-8, "T({r},{ell}) k={k}");
            }
        }
        assert!(matches!(mu_k(&cycle_graph(5).unwrap(), 2), Err(Error::NoSimplices { .. })));
    }

    #[test]
    fn betti_examples() {
        for n in 1..=5 {
            let p = betti_profile(&FlagComplex::full(&complete_graph(n)).unwrap()).unwrap();
            assert!(p.betti.iter().all(|&b| b == 0));
            assert_eq!(p.eta, Eta::Infinite);
        }
        let p = betti_profile(&FlagComplex::full(&cycle_graph(4).unwrap()).unwrap()).unwrap();
        assert_eq!(&p.betti[..2], &[0, 1]);
        assert_eq!(p.eta, Eta::Finite(2));
        let p = betti_profile(&FlagComplex::full(&turan_graph(3, 2).unwrap()).unwrap()).unwrap();
        assert_eq!(&p.betti[..3], &[0, 0, 1]);
        assert_eq!(p.eta, Eta::Finite(3));
        let p = betti_profile(&FlagComplex::full(&Graph::empty(3)).unwrap()).unwrap();
        assert_eq!(p.betti[0], 2);
        assert_eq!(p.eta, Eta::Finite(1));
    }

    #[test]
    fn truncated_eta() {
        // K_6 cut at dimension 2: the skeleton's top class is not certified
        let x = build_flag_complex(&complete_graph(6), 2).unwrap();
        let p = betti_profile(&x).unwrap();
        assert_eq!(&p.betti[..2], &[0, 0]);
        assert_eq!(p.eta, Eta::AtLeast(3));
        assert_eq!(p.eta.at_least(3.0, 0.0), Some(true));
        assert_eq!(p.eta.at_least(4.0, 0.0), None);
        // skeleton of a simplex has top cohomology that the full complex lacks
        let x = build_flag_complex(&complete_graph(4), 1).unwrap();
        let p = betti_profile(&x).unwrap();
        assert_eq!(p.betti, vec![0, 3]);
        assert_eq!(p.eta, Eta::AtLeast(2));
    }

    #[test]
    fn recursion_tight_on_turan() {
        for (r, ell) in [(2, 2), (3, 2), (4, 2), (3, 3)] {
            let recs = verify_eigenvalue_recursion(&turan_graph(r, ell).unwrap()).unwrap();
            assert_eq!(recs.len(), r - 1);
            for rec in recs {
                assert!(rec.pass);
                assert!(rec.slack.abs() < 1e-7, "{rec:?}");
            }
        }
        for rec in verify_eigenvalue_recursion(&complete_graph(5)).unwrap() {
            assert!(rec.pass);
        }
    }

    #[test]
    fn gap_vanishing_examples() {
        for rec in verify_gap_vanishing(&complete_graph(5)).unwrap() {
            assert_eq!(rec.status, Status::Pass);
        }
        let recs = verify_gap_vanishing(&turan_graph(3, 2).unwrap()).unwrap();
        let top = &recs[2];
        assert_eq!(top.status, Status::Vacuous);
        assert!(top.note.as_ref().unwrap().contains("sharp"));
        assert!(recs.iter().all(|r| r.pass));
    }
}

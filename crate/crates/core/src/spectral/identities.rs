//! Norm identities relating a cochain `φ ∈ C^k` to its vertex restrictions
//! `φ_u ∈ C^{k-1}` on a flag complex. Each identity is evaluated on both
//! sides by independent routes: the left side through coboundary and
//! Laplacian matrices, the right side through degrees and links.

use crate::complex::{restriction, Cochain, FlagComplex, Simplex};
use crate::error::{Error, Result};
use crate::report::CheckRecord;

use super::hodge_laplacian;

/// Relative residual allowed on each identity.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(a: &[f64]) -> f64 {
    dot(a, a)
}

/// `Σ_{τ facet of σ} deg(τ) − k·deg(σ)` for `σ ∈ X(k)`.
pub fn facet_degree_excess(x: &FlagComplex, sigma: &Simplex) -> Result<i64> {
    let k = sigma.dim() as i64;
    let own = x.simplex_degree(sigma)? as i64;
    let facets: i64 = (0..sigma.vertices().len())
        .map(|i| match sigma.face(i) {
            Some(f) => x.simplex_degree(&f).map(|d| d as i64),
            None => Ok(x.n() as i64),
        })
        .sum::<Result<i64>>()?;
    Ok(facets - k * own)
}

/// The facet-degree excess is at most `n` on every simplex of dimension
/// `k ≥ 1`: one record per nonempty dimension, reporting the maximum.
pub fn verify_facet_degree_bound(x: &FlagComplex) -> Result<Vec<CheckRecord>> {
    let n = x.n() as f64;
    let mut out = Vec::new();
    for k in 1..=x.top_dim() {
        let mut worst = i64::MIN;
        for s in x.simplices(k) {
            worst = worst.max(facet_degree_excess(x, s)?);
        }
        out.push(CheckRecord::at_most(
            "facet_degree_bound",
            "sum_{facets tau} deg(tau) - k*deg(sigma) <= n",
            Some(k as i64),
            worst as f64,
            n,
            0.0,
        ));
    }
    Ok(out)
}

/// `Σ_{η ∈ X(k-1)} Σ_{vw ∈ lk(η)} φ(vη)·φ(wη)` over unordered link edges.
fn link_pair_sum(x: &FlagComplex, phi: &Cochain) -> f64 {
    let k = phi.degree();
    let g = x.graph();
    let bases: Vec<&[usize]> = if k == 0 {
        vec![&[]]
    } else {
        x.simplices((k - 1) as usize).iter().map(Simplex::vertices).collect()
    };
    let mut total = 0.0;
    for eta in bases {
        let link = x.common_neighbors(eta);
        let vals: Vec<f64> = link
            .iter()
            .map(|&v| phi.oriented_value(x, &[v], eta).unwrap_or(0.0))
            .collect();
        for (i, &v) in link.iter().enumerate() {
            for (j, &w) in link.iter().enumerate().skip(i + 1) {
                if g.has_edge(v, w) {
                    total += vals[i] * vals[j];
                }
            }
        }
    }
    total
}

/// `Σ_{τ ∈ X(k-1)} (Σ_{v ∈ lk(τ)} φ(vτ))²`.
fn link_sum_squares(x: &FlagComplex, phi: &Cochain) -> f64 {
    let k = phi.degree() as usize;
    x.simplices(k - 1)
        .iter()
        .map(|tau| {
            let s: f64 = x
                .common_neighbors(tau.vertices())
                .iter()
                .map(|&v| phi.oriented_value(x, &[v], tau.vertices()).unwrap_or(0.0))
                .sum();
            s * s
        })
        .sum()
}

/// Evaluates, for one `φ ∈ C^k` with `k ≥ 1`:
///
/// * `coboundary_norm`: `‖d_kφ‖² = Σ deg(σ)φ(σ)² − 2 Σ_η Σ_{vw∈lk η} φ(vη)φ(wη)`
/// * `restricted_coboundary`: `Σ_u ‖d_{k-1}φ_u‖² = Σ (Σ_τ deg τ)φ(σ)² − 2k Σ_τ Σ_{vw∈lk τ} φ(vτ)φ(wτ)`
/// * `combined_coboundary`: `k(‖d_kφ‖² − Σ deg σ φ²) = Σ_u ‖d_{k-1}φ_u‖² − Σ (Σ_τ deg τ)φ²`
/// * `adjoint_expansion`: `‖d_{k-1}ᵀφ‖² = Σ_τ (Σ_{v∈lk τ} φ(vτ))²`
/// * `restricted_adjoint`: `Σ_u ‖d_{k-2}ᵀφ_u‖² = k‖d_{k-1}ᵀφ‖²`
/// * `key_identity`: `k(Δ_kφ, φ) = Σ_u (Δ_{k-1}φ_u, φ_u) − Σ (Σ_τ deg τ − k deg σ)φ²`
/// * `restriction_norm`: `Σ_u ‖φ_u‖² = (k+1)‖φ‖²`
///
/// `d_{-1}` is the augmentation. Needs `d_k`, so `k = max_dim` is only
/// allowed on an untruncated complex.
pub fn verify_cochain_identities(x: &FlagComplex, k: usize, phi: &Cochain) -> Result<Vec<CheckRecord>> {
    if phi.degree() != k as i64 {
        return Err(Error::DimensionMismatch(format!(
            "expected a {k}-cochain, got degree {}",
            phi.degree()
        )));
    }
    if k == 0 || k > x.max_dim() || (k == x.max_dim() && x.is_truncated()) {
        return Err(Error::DegreeOutOfRange {
            k: k as i64,
            min: 1,
            max: if x.is_truncated() { x.max_dim() as i64 - 1 } else { x.max_dim() as i64 },
        });
    }
    let kf = k as f64;
    let values = phi.values();
    let d_k = x.coboundary_or_zero(k as i64);
    let d_km1 = x.coboundary_matrix(k as i64 - 1)?;
    let d_km2 = x.coboundary_matrix(k as i64 - 2)?;

    let mut deg_weighted = 0.0;
    let mut facet_weighted = 0.0;
    let mut excess_weighted = 0.0;
    for (s, &v) in x.simplices(k).iter().zip(values) {
        let deg = x.simplex_degree(s)? as f64;
        let excess = facet_degree_excess(x, s)? as f64;
        let facet_sum = excess + kf * deg;
        deg_weighted += deg * v * v;
        facet_weighted += facet_sum * v * v;
        excess_weighted += excess * v * v;
    }
    let pairs = link_pair_sum(x, phi);

    let restricted: Vec<Cochain> = (0..x.n())
        .map(|u| restriction(x, phi, u))
        .collect::<Result<_>>()?;

    let dphi = norm2(&d_k.mul_vec(values)?);
    let adj = norm2(&d_km1.transpose_mul_vec(values)?);
    let mut sum_dphi_u = 0.0;
    let mut sum_adj_u = 0.0;
    let mut sum_norm_u = 0.0;
    for phi_u in &restricted {
        sum_dphi_u += norm2(&d_km1.mul_vec(phi_u.values())?);
        sum_adj_u += norm2(&d_km2.transpose_mul_vec(phi_u.values())?);
        sum_norm_u += phi_u.norm_squared();
    }

    let lap_k = hodge_laplacian(x, k)?;
    let quad_k = lap_k.matrix().bilinear(values, values)?;
    let quad_u: f64 = if x.count(k as i64 - 1) == 0 {
        0.0
    } else {
        let lap = hodge_laplacian(x, k - 1)?;
        restricted
            .iter()
            .map(|p| lap.matrix().bilinear(p.values(), p.values()))
            .sum::<Result<f64>>()?
    };

    let ki = Some(k as i64);
    let tol = IDENTITY_TOLERANCE;
    Ok(vec![
        CheckRecord::equal_relative(
            "coboundary_norm",
            "|d_k phi|^2 = sum deg(s) phi(s)^2 - 2 sum_eta sum_{vw in lk eta} phi(v eta) phi(w eta)",
            ki,
            dphi,
            deg_weighted - 2.0 * pairs,
            tol,
        ),
        CheckRecord::equal_relative(
            "restricted_coboundary",
            "sum_u |d_{k-1} phi_u|^2 = sum (sum_facets deg) phi^2 - 2k sum_tau sum_{vw in lk tau} phi(v tau) phi(w tau)",
            ki,
            sum_dphi_u,
            facet_weighted - 2.0 * kf * pairs,
            tol,
        ),
        CheckRecord::equal_relative(
            "combined_coboundary",
            "k(|d_k phi|^2 - sum deg phi^2) = sum_u |d_{k-1} phi_u|^2 - sum (sum_facets deg) phi^2",
            ki,
            kf * (dphi - deg_weighted),
            sum_dphi_u - facet_weighted,
            tol,
        ),
        CheckRecord::equal_relative(
            "adjoint_expansion",
            "|d_{k-1}^T phi|^2 = sum_tau (sum_{v in lk tau} phi(v tau))^2",
            ki,
            adj,
            link_sum_squares(x, phi),
            tol,
        ),
        CheckRecord::equal_relative(
            "restricted_adjoint",
            "sum_u |d_{k-2}^T phi_u|^2 = k |d_{k-1}^T phi|^2",
            ki,
            sum_adj_u,
            kf * adj,
            tol,
        ),
        CheckRecord::equal_relative(
            "key_identity",
            "k (Delta_k phi, phi) = sum_u (Delta_{k-1} phi_u, phi_u) - sum (sum_facets deg - k deg) phi^2",
            ki,
            kf * quad_k,
            quad_u - excess_weighted,
            tol,
        ),
        CheckRecord::equal_relative(
            "restriction_norm",
            "sum_u |phi_u|^2 = (k+1) |phi|^2",
            ki,
            sum_norm_u,
            (kf + 1.0) * phi.norm_squared(),
            tol,
        ),
    ])
}

/// Exhaustive check of the flag-complex swap: for `η ∈ X(j)` (including
/// the empty simplex), an edge `vw ∈ lk(η)` and `u ∈ lk(vη) ∩ lk(wη)`, the
/// edge `vw` lies in `lk(uη)`. Returns `(cases checked, violations)`.
pub fn flag_link_swaps(x: &FlagComplex) -> (usize, usize) {
    let g = x.graph();
    let mut checked = 0;
    let mut bad = 0;
    let max = x.max_dim();
    let mut visit = |eta: &[usize]| {
        // uvwη must fit under the enumeration cap
        if eta.len() + 3 > max + 1 {
            return;
        }
        let link = x.common_neighbors(eta);
        for (i, &v) in link.iter().enumerate() {
            for &w in &link[i + 1..] {
                if !g.has_edge(v, w) {
                    continue;
                }
                for &u in &link {
                    if u == v || u == w || !g.has_edge(u, v) || !g.has_edge(u, w) {
                        continue;
                    }
                    checked += 1;
                    let mut all: Vec<usize> = eta.iter().copied().chain([u, v, w]).collect();
                    all.sort_unstable();
                    if x.index_of(&all).is_none() {
                        bad += 1;
                    }
                }
            }
        }
    };
    visit(&[]);
    for k in 0..=x.top_dim() {
        for s in x.simplices(k) {
            visit(s.vertices());
        }
    }
    (checked, bad)
}

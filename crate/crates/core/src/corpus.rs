//! Seeded instance generators and the per-instance check suites the corpus
//! runs. The master seed drives a xoshiro256++ stream from which every
//! instance draws its own seed, so instance `i` is reproducible alone.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::complex::{Cochain, FlagComplex};
use crate::domination::{
    edge_incidence_representation, validate_representation, verify_classical_bounds, verify_eta_vs_gamma,
    verify_lambda_max_vs_representation, VectorRepresentation,
};
use crate::error::Result;
use crate::graphs::{random_gnp, Graph};
use crate::hypergraph::{fractional_width, line_graph, line_graph_incidence_representation, Hypergraph, HypergraphFamily};
use crate::report::CheckRecord;
use crate::spectral::{
    verify_cochain_identities, verify_eigenvalue_recursion, verify_facet_degree_bound, verify_gap_vanishing,
    verify_structure,
};

/// Edge probabilities cycled through by the `G(n, p)` corpus.
pub const EDGE_PROBABILITIES: [f64; 3] = [0.3, 0.5, 0.7];

#[derive(Clone, Debug)]
pub struct GraphInstance {
    pub id: String,
    pub graph: Graph,
    pub seed: u64,
}

pub fn rng(seed: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// `count` graphs `G(n, p)` with `n` uniform in `n_min..=n_max` and `p`
/// cycling through [`EDGE_PROBABILITIES`].
pub fn gnp_corpus(master_seed: u64, count: usize, n_min: usize, n_max: usize) -> Result<Vec<GraphInstance>> {
    let mut master = rng(master_seed);
    (0..count)
        .map(|i| {
            let n = master.random_range(n_min..=n_max);
            let p = EDGE_PROBABILITIES[i % EDGE_PROBABILITIES.len()];
            let seed: u64 = master.random();
            Ok(GraphInstance {
                id: format!("gnp-{i:04} n={n} p={p} seed={seed}"),
                graph: random_gnp(n, p, seed)?,
                seed,
            })
        })
        .collect()
}

/// Cochain with entries uniform in `[-1, 1)`.
pub fn random_cochain(x: &FlagComplex, k: usize, rng: &mut impl Rng) -> Result<Cochain> {
    let values = (0..x.count(k as i64)).map(|_| rng.random_range(-1.0..1.0)).collect();
    Cochain::new(x, k as i64, values)
}

/// Weight vector with entries in `{1, 2}`.
pub fn random_weights(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    (0..n).map(|_| rng.random_range(1..=2)).collect()
}

fn random_edge(ground: usize, max_size: usize, rng: &mut impl Rng) -> Vec<usize> {
    let size = rng.random_range(1..=max_size.min(ground));
    let mut e: Vec<usize> = rand::seq::index::sample(rng, ground, size).into_vec();
    e.sort_unstable();
    e
}

/// Random hypergraph on `ground` vertices with `edges` edges of size at
/// most `max_size`.
pub fn random_hypergraph(ground: usize, edges: usize, max_size: usize, rng: &mut impl Rng) -> Result<Hypergraph> {
    Hypergraph::new(ground, (0..edges).map(|_| random_edge(ground, max_size, rng)).collect())
}

#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub id: String,
    pub family: HypergraphFamily,
    /// Edge index per class of a planted SDR, if one was planted.
    pub planted: Option<Vec<usize>>,
}

/// `count` families with `m ≤ m_max` members over at most `ground_max`
/// vertices, 1 to 3 edges of size at most 3 per member. Odd-numbered
/// families carry a planted SDR at a random position of each member.
pub fn family_corpus(master_seed: u64, count: usize, m_max: usize, ground_max: usize) -> Result<Vec<FamilyInstance>> {
    let mut master = rng(master_seed);
    (0..count)
        .map(|i| {
            let seed: u64 = master.random();
            let mut r = rng(seed);
            let planted = i % 2 == 1;
            let m = r.random_range(1..=m_max);
            let ground = r.random_range(if planted { m.max(2) } else { 2 }..=ground_max);
            let mut members: Vec<Vec<Vec<usize>>> = (0..m)
                .map(|_| {
                    let e = r.random_range(1..=3);
                    (0..e).map(|_| random_edge(ground, 3, &mut r)).collect()
                })
                .collect();
            let mut witness = None;
            if planted {
                // disjoint blocks cut from a shuffled ground set
                let mut order: Vec<usize> = (0..ground).collect();
                order.shuffle(&mut r);
                let per = (ground / m).clamp(1, 3);
                let mut w = Vec::with_capacity(m);
                for (c, member) in members.iter_mut().enumerate() {
                    let size = r.random_range(1..=per);
                    let mut e = order[c * per..c * per + size].to_vec();
                    e.sort_unstable();
                    let pos = r.random_range(0..=member.len());
                    member.insert(pos, e);
                    w.push(pos);
                }
                witness = Some(w);
            }
            Ok(FamilyInstance {
                id: format!("family-{i:04} m={m} ground={ground} seed={seed}"),
                family: HypergraphFamily::new(ground, members)?,
                planted: witness,
            })
        })
        .collect()
}

/// `count` hypergraphs over at most 8 vertices with 2 to 8 edges.
pub fn hypergraph_corpus(master_seed: u64, count: usize) -> Result<Vec<(String, Hypergraph)>> {
    let mut master = rng(master_seed);
    (0..count)
        .map(|i| {
            let seed: u64 = master.random();
            let mut r = rng(seed);
            let ground = r.random_range(2..=8);
            let edges = r.random_range(2..=8);
            Ok((
                format!("hypergraph-{i:04} ground={ground} seed={seed}"),
                random_hypergraph(ground, edges, 3, &mut r)?,
            ))
        })
        .collect()
}

/// Options for [`graph_checks`].
#[derive(Clone, Copy, Debug)]
pub struct GraphCheckOptions {
    /// Random cochains per dimension for the norm identities.
    pub cochains: usize,
    /// Blow-up weight vectors, drawn only when `n ≤ blowup_max_n`.
    pub blowups: usize,
    pub blowup_max_n: usize,
}

impl Default for GraphCheckOptions {
    fn default() -> Self {
        GraphCheckOptions {
            cochains: 2,
            blowups: 1,
            blowup_max_n: 6,
        }
    }
}

/// Every graph-level verifier on one instance, in a fixed order.
pub fn graph_checks(inst: &GraphInstance, opts: GraphCheckOptions) -> Result<Vec<CheckRecord>> {
    let g = &inst.graph;
    let mut r = rng(inst.seed ^ 0x5EED_C0C4_A1A5_0000);
    let mut out = verify_structure(g)?;
    out.extend(verify_eigenvalue_recursion(g)?);
    out.extend(verify_gap_vanishing(g)?);
    let x = FlagComplex::full(g)?;
    out.extend(verify_facet_degree_bound(&x)?);
    for k in 1..=x.top_dim() {
        for _ in 0..opts.cochains {
            let phi = random_cochain(&x, k, &mut r)?;
            out.extend(verify_cochain_identities(&x, k, &phi)?);
        }
    }
    out.extend(verify_classical_bounds(g)?);
    let reps: Vec<VectorRepresentation> = if g.edge_count() > 0 {
        vec![edge_incidence_representation(g)?]
    } else {
        Vec::new()
    };
    for p in &reps {
        out.push(CheckRecord::equal(
            "representation_valid",
            "P(u).P(v) >= 1 on edges, >= 0 otherwise",
            None,
            if validate_representation(g, p) { 1.0 } else { 0.0 },
            1.0,
            0.0,
        ));
        out.push(verify_lambda_max_vs_representation(g, p)?);
    }
    let weights: Vec<Vec<usize>> = if g.n() <= opts.blowup_max_n {
        (0..opts.blowups).map(|_| random_weights(g.n(), &mut r)).collect()
    } else {
        Vec::new()
    };
    out.extend(verify_eta_vs_gamma(g, &reps, &weights)?);
    Ok(out
        .into_iter()
        .map(|rec| rec.with_instance(inst.id.clone()))
        .collect())
}

/// `|P_incidence| = w*(F)` on the line graph, and `w* ≤ w`.
pub fn hypergraph_checks(id: &str, f: &Hypergraph) -> Result<Vec<CheckRecord>> {
    let g = line_graph(f)?;
    let p = line_graph_incidence_representation(f)?;
    let ws = fractional_width(f)?.value;
    let value = crate::domination::representation_value(&g, &p)?.value;
    let w = crate::hypergraph::width(f)?.value as f64;
    Ok(vec![
        CheckRecord::equal_relative(
            "line_graph_incidence_value",
            "|P_incidence(line graph)| = w*(F)",
            None,
            value,
            ws,
            1e-6,
        )
        .with_instance(id),
        CheckRecord::at_most("fractional_width_below_width", "w*(F) <= w(F)", None, ws, w, 1e-7).with_instance(id),
    ])
}

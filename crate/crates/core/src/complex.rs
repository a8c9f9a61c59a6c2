//! Flag complexes: clique enumeration, simplex indexing, links, degrees,
//! integer coboundary matrices (with the augmentation `d_{-1}`) and the
//! vertex restriction of cochains.
//!
//! Simplices are stored with their vertices in increasing order, which fixes
//! the orientation of every simplex. All signs derive from permutation
//! parity relative to that order.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{complement, Graph};
use crate::matrix::IntMatrix;

/// Per-dimension cap on enumerated simplices.
pub const DEFAULT_SIMPLEX_CAP: usize = 20_000;

/// Largest dimension enumerated by default for `n` vertices.
pub fn default_max_dim(n: usize) -> usize {
    n.saturating_sub(1).min(8)
}

/// A simplex as a strictly increasing list of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidParameter("simplex needs a vertex".into()));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(format!(
                "simplex vertices must be strictly increasing: {vertices:?}"
            )));
        }
        Ok(Simplex(vertices))
    }

    /// Sorts and deduplicates first.
    pub fn from_unsorted(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex::new(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The `i`-th face: `self` with its `i`-th vertex removed. `None` for a
    /// vertex (its only face is the empty simplex).
    pub fn face(&self, i: usize) -> Option<Simplex> {
        if self.0.len() < 2 {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(i);
        Some(Simplex(v))
    }
}

/// Flag complex `X(G)` enumerated up to `max_dim`.
#[derive(Clone, Debug)]
pub struct FlagComplex {
    graph: Graph,
    max_dim: usize,
    skeleta: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    truncated: bool,
}

/// Builds `X(g)` up to dimension `max_dim` with the default simplex cap.
pub fn build_flag_complex(g: &Graph, max_dim: usize) -> Result<FlagComplex> {
    build_flag_complex_with_cap(g, max_dim, DEFAULT_SIMPLEX_CAP)
}

/// Enumerates cliques by depth-first expansion over increasing candidate
/// sets, which emits every skeleton in lexicographic order.
pub fn build_flag_complex_with_cap(g: &Graph, max_dim: usize, cap: usize) -> Result<FlagComplex> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut builder = Enumerator {
        g,
        max_dim,
        cap,
        skeleta: vec![Vec::new(); max_dim + 1],
        truncated: false,
    };
    let all: Vec<usize> = (0..g.n()).collect();
    let mut clique = Vec::with_capacity(max_dim + 1);
    builder.expand(&mut clique, &all)?;
    let Enumerator {
        skeleta, truncated, ..
    } = builder;
    let index = skeleta
        .iter()
        .map(|sk| {
            sk.iter()
                .enumerate()
                .map(|(i, s)| (s.0.clone(), i))
                .collect()
        })
        .collect();
    Ok(FlagComplex {
        graph: g.clone(),
        max_dim,
        skeleta,
        index,
        truncated,
    })
}

/// `I(g) = X(complement(g))`.
pub fn independence_complex(g: &Graph, max_dim: usize) -> Result<FlagComplex> {
    build_flag_complex(&complement(g), max_dim)
}

struct Enumerator<'a> {
    g: &'a Graph,
    max_dim: usize,
    cap: usize,
    skeleta: Vec<Vec<Simplex>>,
    truncated: bool,
}

impl Enumerator<'_> {
    fn expand(&mut self, clique: &mut Vec<usize>, candidates: &[usize]) -> Result<()> {
        for (i, &c) in candidates.iter().enumerate() {
            clique.push(c);
            let dim = clique.len() - 1;
            let sk = &mut self.skeleta[dim];
            sk.push(Simplex(clique.clone()));
            if sk.len() > self.cap {
                return Err(Error::ComplexTooLarge { dim, cap: self.cap });
            }
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&w| self.g.has_edge(c, w))
                .collect();
            if !next.is_empty() {
                if dim < self.max_dim {
                    self.expand(clique, &next)?;
                } else {
                    self.truncated = true;
                }
            }
            clique.pop();
        }
        Ok(())
    }
}

impl FlagComplex {
    /// The whole complex: enumeration up to `n - 1`, so nothing is cut off.
    pub fn full(g: &Graph) -> Result<FlagComplex> {
        build_flag_complex(g, g.n().saturating_sub(1))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// True when `X(G)` has simplices above `max_dim` that were not stored.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Largest `k` with `X(k)` nonempty.
    pub fn top_dim(&self) -> usize {
        self.skeleta.iter().rposition(|s| !s.is_empty()).unwrap_or(0)
    }

    /// `|X(k)|`, with `|X(-1)| = 1` for the empty simplex.
    pub fn count(&self, k: i64) -> usize {
        match k {
            -1 => 1,
            k if k < -1 => 0,
            k => self.skeleta.get(k as usize).map_or(0, Vec::len),
        }
    }

    pub fn counts(&self) -> Vec<usize> {
        self.skeleta.iter().map(Vec::len).collect()
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.skeleta.get(k).map_or(&[], Vec::as_slice)
    }

    /// Position of the simplex with the given (increasing) vertices.
    pub fn index_of(&self, vertices: &[usize]) -> Option<usize> {
        if vertices.is_empty() {
            return None;
        }
        self.index.get(vertices.len() - 1)?.get(vertices).copied()
    }

    pub fn contains(&self, sigma: &Simplex) -> bool {
        self.index_of(&sigma.0).is_some()
    }

    fn require(&self, sigma: &Simplex) -> Result<()> {
        if self.contains(sigma) {
            Ok(())
        } else {
            Err(Error::SimplexNotFound(sigma.0.clone()))
        }
    }

    /// Vertices outside `vertices` adjacent to all of them, ascending. For
    /// the empty slice this is every vertex.
    pub fn common_neighbors(&self, vertices: &[usize]) -> Vec<usize> {
        let g = &self.graph;
        match vertices.split_first() {
            None => (0..g.n()).collect(),
            Some((&first, rest)) => g
                .neighbors(first)
                .iter()
                .copied()
                .filter(|&w| rest.iter().all(|&v| g.has_edge(v, w)))
                .collect(),
        }
    }

    /// Number of `(dim σ + 1)`-simplices of `X(G)` containing `σ`, which for a
    /// flag complex is `|⋂_{v∈σ} N(v)|`.
    pub fn simplex_degree(&self, sigma: &Simplex) -> Result<usize> {
        self.require(sigma)?;
        Ok(self.common_neighbors(&sigma.0).len())
    }

    /// All stored `τ` disjoint from `σ` with `σ ∪ τ` stored, ordered by
    /// dimension and then lexicographically.
    pub fn link(&self, sigma: &Simplex) -> Result<Vec<Simplex>> {
        self.require(sigma)?;
        let common = self.common_neighbors(&sigma.0);
        let max_link_dim = match self.max_dim.checked_sub(sigma.dim() + 1) {
            Some(d) => d,
            None => return Ok(Vec::new()),
        };
        let mut out = Vec::new();
        for k in 0..=max_link_dim.min(self.top_dim()) {
            out.extend(
                self.skeleta[k]
                    .iter()
                    .filter(|t| t.0.iter().all(|v| common.binary_search(v).is_ok()))
                    .cloned(),
            );
        }
        Ok(out)
    }

    /// Matrix of `d_k : C^k → C^{k+1}` for `-1 ≤ k ≤ max_dim - 1`.
    ///
    /// Rows index `X(k+1)`, columns `X(k)`. Entry `(τ, σ)` is `(-1)^i` when
    /// `σ` is `τ` without its `i`-th vertex. `d_{-1}` is the `n × 1` all-ones
    /// column.
    pub fn coboundary_matrix(&self, k: i64) -> Result<IntMatrix> {
        let max = self.max_dim as i64 - 1;
        if k < -1 || k > max {
            return Err(Error::DegreeOutOfRange { k, min: -1, max });
        }
        if k == -1 {
            let mut m = IntMatrix::zeros(self.n(), 1);
            for v in 0..self.n() {
                m.set(v, 0, 1);
            }
            return Ok(m);
        }
        let k = k as usize;
        let rows = &self.skeleta[k + 1];
        let mut m = IntMatrix::zeros(rows.len(), self.skeleta[k].len());
        for (r, tau) in rows.iter().enumerate() {
            for i in 0..tau.0.len() {
                let mut face = tau.0.clone();
                face.remove(i);
                let c = self.index[k][&face];
                m.set(r, c, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        Ok(m)
    }

    /// `d_k`, or the zero map out of the top stored dimension.
    pub(crate) fn coboundary_or_zero(&self, k: i64) -> IntMatrix {
        if k >= self.max_dim as i64 {
            IntMatrix::zeros(0, self.count(k))
        } else {
            self.coboundary_matrix(k).expect("degree checked")
        }
    }

    /// Flag complex of the subgraph induced on `vertices` (relabelled in
    /// the given order), i.e. the induced subcomplex.
    pub fn induced(&self, vertices: &[usize]) -> Result<FlagComplex> {
        let sub = self.graph.induced_subgraph(vertices)?;
        let max_dim = self.max_dim.min(vertices.len().saturating_sub(1));
        build_flag_complex(&sub, max_dim)
    }

    pub fn dump(&self) -> ComplexDump {
        ComplexDump {
            dims: self.counts(),
            skeleta: self
                .skeleta
                .iter()
                .enumerate()
                .map(|(k, sk)| (k, sk.iter().map(|s| s.0.clone()).collect()))
                .collect(),
        }
    }
}

/// Debug dump: `{"dims": [...], "skeleta": {"k": [[v, ...], ...]}}`.
#[derive(Debug, Serialize)]
pub struct ComplexDump {
    pub dims: Vec<usize>,
    pub skeleta: BTreeMap<usize, Vec<Vec<usize>>>,
}

/// A real `k`-cochain, valued on `X(k)` in skeleton order. Degree `-1` is a
/// single scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    degree: i64,
    values: Vec<f64>,
}

impl Cochain {
    pub fn new(x: &FlagComplex, degree: i64, values: Vec<f64>) -> Result<Self> {
        if degree < -1 || degree > x.max_dim as i64 {
            return Err(Error::DegreeOutOfRange {
                k: degree,
                min: -1,
                max: x.max_dim as i64,
            });
        }
        let expected = x.count(degree);
        if values.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "{degree}-cochain needs {expected} values, got {}",
                values.len()
            )));
        }
        Ok(Cochain { degree, values })
    }

    pub fn zero(x: &FlagComplex, degree: i64) -> Result<Self> {
        Cochain::new(x, degree, vec![0.0; x.count(degree)])
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn norm_squared(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    /// Value on the ordered simplex `prefix ⌢ base`, using skew-symmetry to
    /// reduce to the stored increasing orientation. `base` must be
    /// increasing; `None` if the vertex set is not a stored simplex of this
    /// degree.
    pub fn oriented_value(&self, x: &FlagComplex, prefix: &[usize], base: &[usize]) -> Option<f64> {
        let (sorted, sign) = sort_with_sign(prefix, base)?;
        if sorted.len() as i64 - 1 != self.degree {
            return None;
        }
        if self.degree == -1 {
            return Some(self.values[0]);
        }
        x.index_of(&sorted).map(|i| sign * self.values[i])
    }
}

/// Merges `prefix ⌢ base` into increasing order and returns the parity of
/// the sorting permutation as `±1`. `None` on a repeated vertex.
pub(crate) fn sort_with_sign(prefix: &[usize], base: &[usize]) -> Option<(Vec<usize>, f64)> {
    let mut seq: Vec<usize> = prefix.iter().chain(base).copied().collect();
    let mut sign = 1.0;
    // insertion sort, counting transpositions
    for i in 1..seq.len() {
        let mut j = i;
        while j > 0 && seq[j - 1] > seq[j] {
            seq.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && seq[j - 1] == seq[j] {
            return None;
        }
    }
    Some((seq, sign))
}

/// `φ_u ∈ C^{k-1}`: `φ_u(τ) = φ(uτ)` when `u ∈ lk(τ)`, else 0. Requires
/// `1 ≤ k ≤ max_dim`.
pub fn restrict_cochain(x: &FlagComplex, phi: &Cochain, u: usize) -> Result<Cochain> {
    if phi.degree < 1 {
        return Err(Error::DegreeOutOfRange {
            k: phi.degree,
            min: 1,
            max: x.max_dim as i64,
        });
    }
    restriction(x, phi, u)
}

/// Same as [`restrict_cochain`] but also accepts `k = 0`, giving the
/// degree `-1` scalar `φ(u)`.
pub(crate) fn restriction(x: &FlagComplex, phi: &Cochain, u: usize) -> Result<Cochain> {
    if u >= x.n() {
        return Err(Error::VertexOutOfRange { vertex: u, n: x.n() });
    }
    if phi.degree == 0 {
        return Ok(Cochain {
            degree: -1,
            values: vec![phi.values[u]],
        });
    }
    let k = phi.degree as usize;
    let g = x.graph();
    let values = x.skeleta[k - 1]
        .iter()
        .map(|tau| {
            if tau.0.iter().all(|&v| g.has_edge(u, v)) {
                let pos = tau.0.partition_point(|&v| v < u);
                let mut merged = tau.0.clone();
                merged.insert(pos, u);
                let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
                sign * phi.values[x.index[k][&merged]]
            } else {
                0.0
            }
        })
        .collect();
    Ok(Cochain {
        degree: phi.degree - 1,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, cycle_graph, random_gnp, turan_graph};

    fn brute_force_cliques(g: &Graph, size: usize) -> Vec<Vec<usize>> {
        let n = g.n();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let vs: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            if vs
                .iter()
                .enumerate()
                .all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
            {
                out.push(vs);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn counts_examples() {
        assert_eq!(build_flag_complex(&complete_graph(3), 2).unwrap().counts(), vec![3, 3, 1]);
        assert_eq!(build_flag_complex(&cycle_graph(4).unwrap(), 2).unwrap().counts(), vec![4, 4, 0]);
        let t = turan_graph(3, 2).unwrap();
        let x = build_flag_complex(&t, 2).unwrap();
        assert_eq!(x.count(2), brute_force_cliques(&t, 3).len());
        assert_eq!(x.count(2), 8);
        assert!(matches!(build_flag_complex(&Graph::empty(0), 1), Err(Error::EmptyGraph)));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for seed in 0..10 {
            let g = random_gnp(9, 0.55, seed).unwrap();
            let x = FlagComplex::full(&g).unwrap();
            assert!(!x.is_truncated());
            for k in 0..=x.max_dim() {
                let got: Vec<Vec<usize>> =
                    x.simplices(k).iter().map(|s| s.vertices().to_vec()).collect();
                assert_eq!(got, brute_force_cliques(&g, k + 1), "seed {seed} dim {k}");
            }
        }
    }

    #[test]
    fn truncation_and_cap() {
        let k5 = complete_graph(5);
        let x = build_flag_complex(&k5, 2).unwrap();
        assert!(x.is_truncated());
        assert_eq!(x.counts(), vec![5, 10, 10]);
        assert!(!FlagComplex::full(&k5).unwrap().is_truncated());
        match build_flag_complex_with_cap(&k5, 4, 9) {
            Err(Error::ComplexTooLarge { dim, cap }) => assert_eq!((dim, cap), (2, 9)),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(default_max_dim(4), 3);
        assert_eq!(default_max_dim(30), 8);
    }

    #[test]
    fn independence_complex_examples() {
        let x = independence_complex(&complete_graph(4), 3).unwrap();
        assert_eq!(x.counts(), vec![4, 0, 0, 0]);
        let x = independence_complex(&Graph::empty(3), 2).unwrap();
        assert_eq!(x.counts(), vec![3, 3, 1]);
        let x = independence_complex(&cycle_graph(5).unwrap(), 1).unwrap();
        assert_eq!(x.counts(), vec![5, 5]);
    }

    #[test]
    fn coboundary_examples() {
        let x = FlagComplex::full(&Graph::empty(3)).unwrap();
        let aug = x.coboundary_matrix(-1).unwrap();
        assert_eq!((aug.rows(), aug.cols()), (3, 1));
        assert!((0..3).all(|i| aug.get(i, 0) == 1));

        let x = FlagComplex::full(&complete_graph(2)).unwrap();
        let d0 = x.coboundary_matrix(0).unwrap();
        assert_eq!(d0.row(0), &[-1, 1]);
        assert!(x.coboundary_matrix(1).is_err());
        assert!(x.coboundary_matrix(-2).is_err());

        for seed in 0..5 {
            let x = FlagComplex::full(&random_gnp(8, 0.6, seed).unwrap()).unwrap();
            for k in 0..x.max_dim() as i64 {
                let prod = x
                    .coboundary_matrix(k)
                    .unwrap()
                    .mul(&x.coboundary_matrix(k - 1).unwrap())
                    .unwrap();
                assert!(prod.is_zero(), "seed {seed} k {k}");
            }
        }
    }

    #[test]
    fn degree_examples() {
        let c4 = FlagComplex::full(&cycle_graph(4).unwrap()).unwrap();
        assert_eq!(c4.simplex_degree(&Simplex::new(vec![0]).unwrap()).unwrap(), 2);
        let k4 = FlagComplex::full(&complete_graph(4)).unwrap();
        assert_eq!(k4.simplex_degree(&Simplex::new(vec![1, 3]).unwrap()).unwrap(), 2);
        let k3 = FlagComplex::full(&complete_graph(3)).unwrap();
        assert_eq!(k3.simplex_degree(&Simplex::new(vec![0, 1, 2]).unwrap()).unwrap(), 0);
        assert!(matches!(
            c4.simplex_degree(&Simplex::new(vec![0, 2]).unwrap()),
            Err(Error::SimplexNotFound(_))
        ));
        // degree agrees with the stored coface count below the top dimension
        let x = FlagComplex::full(&random_gnp(9, 0.6, 11).unwrap()).unwrap();
        for k in 0..x.top_dim() {
            for s in x.simplices(k) {
                let cofaces = x.simplices(k + 1)
                    .iter()
                    .filter(|t| s.vertices().iter().all(|v| t.contains(*v)))
                    .count();
                assert_eq!(x.simplex_degree(s).unwrap(), cofaces);
            }
        }
    }

    #[test]
    fn link_examples() {
        let k3 = FlagComplex::full(&complete_graph(3)).unwrap();
        let lk = k3.link(&Simplex::new(vec![0]).unwrap()).unwrap();
        let lk: Vec<&[usize]> = lk.iter().map(Simplex::vertices).collect();
        assert_eq!(lk, vec![&[1][..], &[2], &[1, 2]]);
        let c4 = FlagComplex::full(&cycle_graph(4).unwrap()).unwrap();
        assert!(c4.link(&Simplex::new(vec![0, 1]).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn link_one_skeleton_is_induced_common_neighborhood() {
        for seed in 0..8 {
            let g = random_gnp(8, 0.5, seed).unwrap();
            let x = FlagComplex::full(&g).unwrap();
            for k in 0..=x.top_dim() {
                for s in x.simplices(k) {
                    let common: Vec<usize> = (0..8)
                        .filter(|&w| !s.contains(w) && s.vertices().iter().all(|&v| g.has_edge(v, w)))
                        .collect();
                    let lk = x.link(s).unwrap();
                    let verts: Vec<usize> =
                        lk.iter().filter(|t| t.dim() == 0).map(|t| t.vertices()[0]).collect();
                    assert_eq!(verts, common);
                    let edges: Vec<(usize, usize)> = lk
                        .iter()
                        .filter(|t| t.dim() == 1)
                        .map(|t| (t.vertices()[0], t.vertices()[1]))
                        .collect();
                    let sub = g.induced_subgraph(&common).unwrap();
                    let expected: Vec<(usize, usize)> =
                        sub.edges().iter().map(|&(a, b)| (common[a], common[b])).collect();
                    assert_eq!(edges, expected);
                }
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let x = FlagComplex::full(&complete_graph(3)).unwrap();
        let phi = Cochain::new(&x, 2, vec![1.0]).unwrap();
        let phi1 = restrict_cochain(&x, &phi, 1).unwrap();
        assert_eq!(phi1.degree(), 1);
        // X(1) = [0,1], [0,2], [1,2]; only [0,2] has 1 in its link
        assert_eq!(phi1.values(), &[0.0, -1.0, 0.0]);

        let x = FlagComplex::full(&Graph::new(4, [(0, 1), (1, 2)]).unwrap()).unwrap();
        let phi = Cochain::new(&x, 1, vec![2.0, -3.0]).unwrap();
        let phi3 = restrict_cochain(&x, &phi, 3).unwrap();
        assert!(phi3.values().iter().all(|&v| v == 0.0));
        assert!(restrict_cochain(&x, &Cochain::zero(&x, 0).unwrap(), 0).is_err());
    }

    #[test]
    fn oriented_values() {
        let x = FlagComplex::full(&complete_graph(3)).unwrap();
        let phi = Cochain::new(&x, 2, vec![5.0]).unwrap();
        assert_eq!(phi.oriented_value(&x, &[1], &[0, 2]), Some(-5.0));
        assert_eq!(phi.oriented_value(&x, &[2], &[0, 1]), Some(5.0));
        assert_eq!(phi.oriented_value(&x, &[2, 1], &[0]), Some(-5.0));
        assert_eq!(phi.oriented_value(&x, &[1], &[1, 2]), None);
    }

    #[test]
    fn dump_shape() {
        let x = FlagComplex::full(&cycle_graph(4).unwrap()).unwrap();
        let j = serde_json::to_string(&x.dump()).unwrap();
        assert!(j.starts_with(r#"{"dims":[4,4,0,0],"skeleta":{"0":[[0],[1],[2],[3]],"1":"#));
    }
}

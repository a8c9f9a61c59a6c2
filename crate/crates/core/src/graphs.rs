//! Simple undirected graphs on `0..n`, standard generators, the Laplacian
//! matrix and its extreme eigenvalues, complements and blow-ups.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::spectral::symmetric_eigenvalues;

/// Simple undirected graph with vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically.
/// A graph is immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    adjacent: Vec<bool>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range
    /// endpoints. `{u, v}` and `{v, u}` count as the same edge.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adjacent = vec![false; n * n];
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if adjacent[a * n + b] {
                return Err(Error::DuplicateEdge(a, b));
            }
            adjacent[a * n + b] = true;
            adjacent[b * n + a] = true;
            list.push((a, b));
        }
        list.sort_unstable();
        let mut neighbors = vec![Vec::new(); n];
        for &(a, b) in &list {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            neighbors,
            adjacent,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, std::iter::empty()).expect("edgeless graph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adjacent[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn isolated_vertex(&self) -> Option<usize> {
        (0..self.n).find(|&v| self.degree(v) == 0)
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the
    /// order given.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        for &v in vertices {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        let mut edges = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if u == v {
                    return Err(Error::InvalidParameter(format!(
                        "vertex {u} listed twice"
                    )));
                }
                if self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(vertices.len(), edges)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// JSON form `{"n": …, "edges": [[u, v], …]}`.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        Graph::new(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v)))
            .map_err(serde::de::Error::custom)
    }
}

/// Parses either the JSON form or the text form: a first line `n m`
/// followed by `m` lines `u v`. Blank lines and `#` comments are skipped.
pub fn parse_graph(input: &str) -> Result<Graph> {
    if input.trim_start().starts_with('{') {
        return serde_json::from_str(input).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        });
    }
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header line \"n m\"".into(),
    })?;
    let [n, m] = parse_pair(line, header)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, text) = lines.next().ok_or(Error::Parse {
            line: line + edges.len() + 1,
            message: format!("expected {m} edge lines, found {}", edges.len()),
        })?;
        let [u, v] = parse_pair(line, text)?;
        edges.push((u, v));
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse {
            line,
            message: "trailing content after edge list".into(),
        });
    }
    Graph::new(n, edges).map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line,
            message: format!("expected two integers, found {:?}", text),
        });
    }
    let mut out = [0; 2];
    for (slot, f) in out.iter_mut().zip(&fields) {
        *slot = f.parse().map_err(|_| Error::Parse {
            line,
            message: format!("not a nonnegative integer: {f:?}"),
        })?;
    }
    Ok(out)
}

/// `L_G`: degrees on the diagonal, `-1` on edges.
pub fn laplacian_matrix(g: &Graph) -> Result<DenseMatrix> {
    if g.n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut m = DenseMatrix::zeros(g.n, g.n);
    for v in 0..g.n {
        m.set(v, v, g.degree(v) as f64);
    }
    for &(u, v) in &g.edges {
        m.set(u, v, -1.0);
        m.set(v, u, -1.0);
    }
    Ok(m)
}

/// Second smallest Laplacian eigenvalue `λ_2`.
pub fn spectral_gap(g: &Graph) -> Result<f64> {
    if g.n < 2 {
        return Err(Error::TooFewVertices { needed: 2, got: g.n });
    }
    let spectrum = symmetric_eigenvalues(&laplacian_matrix(g)?)?;
    Ok(spectrum.eigenvalues()[1])
}

/// Largest Laplacian eigenvalue `λ_n`.
pub fn lambda_max(g: &Graph) -> Result<f64> {
    let spectrum = symmetric_eigenvalues(&laplacian_matrix(g)?)?;
    Ok(spectrum.max())
}

pub fn complement(g: &Graph) -> Graph {
    let mut edges = Vec::new();
    for u in 0..g.n {
        for v in (u + 1)..g.n {
            if !g.has_edge(u, v) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(g.n, edges).expect("complement of a simple graph is simple")
}

pub fn complete_graph(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v)));
    Graph::new(n, edges).expect("complete graph is simple")
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Complete `r`-partite graph with blocks `{b·ell, …, b·ell + ell − 1}`.
pub fn turan_graph(r: usize, ell: usize) -> Result<Graph> {
    if r == 0 || ell == 0 {
        return Err(Error::InvalidParameter(format!(
            "turan graph needs r >= 1 and ell >= 1, got r={r}, ell={ell}"
        )));
    }
    let n = r * ell;
    let edges = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u / ell != v / ell);
    Graph::new(n, edges)
}

/// Erdős–Rényi `G(n, p)`.
///
/// The generator is xoshiro256++ seeded through SplitMix64
/// (`0x9E3779B97F4A7C15`, `0xBF58476D1CE4E5B9`, `0x94D049BB133111EB`), so a
/// given `(n, p, seed)` always yields the same graph. Pairs `u < v` are
/// visited lexicographically, each drawing one uniform `f64` in `[0, 1)` and
/// keeping the edge iff the draw is below `p`.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Blow-up `G_a`: vertex `v` becomes `a[v]` pairwise non-adjacent copies.
///
/// Copy `(v, i)` gets index `a[0] + … + a[v-1] + i`, i.e. lexicographic in
/// `(v, i)`. Returns the graph and the projection back to `g`.
pub fn blow_up(g: &Graph, a: &[usize]) -> Result<(Graph, Vec<usize>)> {
    if a.len() != g.n {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for {} vertices",
            a.len(),
            g.n
        )));
    }
    if let Some(v) = a.iter().position(|&w| w == 0) {
        return Err(Error::InvalidParameter(format!(
            "blow-up weight of vertex {v} must be positive"
        )));
    }
    let mut offset = Vec::with_capacity(g.n);
    let mut projection = Vec::new();
    for (v, &w) in a.iter().enumerate() {
        offset.push(projection.len());
        projection.extend(std::iter::repeat_n(v, w));
    }
    let mut edges = Vec::new();
    for &(u, v) in &g.edges {
        for i in 0..a[u] {
            for j in 0..a[v] {
                edges.push((offset[u] + i, offset[v] + j));
            }
        }
    }
    Ok((Graph::new(projection.len(), edges)?, projection))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_spectrum(n: usize) -> Vec<f64> {
        let mut ev: Vec<f64> = (0..n)
            .map(|j| 2.0 - 2.0 * (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos())
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::new(2, [(0, 0)]), Err(Error::SelfLoop(0))));
        assert!(matches!(
            Graph::new(2, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn laplacian_small_cases() {
        let k2 = complete_graph(2);
        assert_eq!(
            laplacian_matrix(&k2).unwrap().to_rows(),
            vec![vec![1.0, -1.0], vec![-1.0, 1.0]]
        );
        assert_eq!(laplacian_matrix(&Graph::empty(1)).unwrap().to_rows(), vec![vec![0.0]]);
        assert!(matches!(laplacian_matrix(&Graph::empty(0)), Err(Error::EmptyGraph)));

        let c4 = laplacian_matrix(&cycle_graph(4).unwrap()).unwrap();
        for v in 0..4 {
            assert_eq!(c4.get(v, v), 2.0);
            assert_eq!(c4.get(v, (v + 1) % 4), -1.0);
            assert_eq!(c4.get(v, (v + 3) % 4), -1.0);
            assert_eq!(c4.get(v, (v + 2) % 4), 0.0);
        }
    }

    #[test]
    fn spectral_gap_examples() {
        assert!((spectral_gap(&complete_graph(5)).unwrap() - 5.0).abs() < 1e-8);
        assert!(spectral_gap(&Graph::empty(2)).unwrap().abs() < 1e-12);
        assert!(matches!(
            spectral_gap(&Graph::empty(1)),
            Err(Error::TooFewVertices { .. })
        ));
        for n in 3..=9 {
            let oracle = cycle_spectrum(n);
            let g = cycle_graph(n).unwrap();
            assert!((spectral_gap(&g).unwrap() - oracle[1]).abs() < 1e-8);
            assert!((lambda_max(&g).unwrap() - oracle[n - 1]).abs() < 1e-8);
        }
        assert!((spectral_gap(&cycle_graph(4).unwrap()).unwrap() - 2.0).abs() < 1e-8);
    }

    #[test]
    fn lambda_max_examples() {
        assert!((lambda_max(&complete_graph(2)).unwrap() - 2.0).abs() < 1e-10);
        assert_eq!(lambda_max(&Graph::empty(4)).unwrap(), 0.0);
        let g = random_gnp(9, 0.4, 3).unwrap();
        let lhs = lambda_max(&g).unwrap();
        let rhs = 9.0 - spectral_gap(&complement(&g)).unwrap();
        assert!((lhs - rhs).abs() < 1e-8);
    }

    #[test]
    fn complement_of_c5_is_a_5_cycle() {
        let c = complement(&cycle_graph(5).unwrap());
        assert_eq!(c.edge_count(), 5);
        assert!((0..5).all(|v| c.degree(v) == 2));
        // connected 2-regular graph on 5 vertices is C_5: walk it
        let mut seen = [false; 5];
        let (mut prev, mut cur) = (usize::MAX, 0);
        for _ in 0..5 {
            seen[cur] = true;
            let next = *c.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
            prev = cur;
            cur = next;
        }
        assert_eq!(cur, 0);
        assert!(seen.iter().all(|&s| s));
        assert_eq!(complement(&complete_graph(6)), Graph::empty(6));
    }

    #[test]
    fn turan_examples() {
        let t = turan_graph(2, 2).unwrap();
        assert_eq!(t.edges(), &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(turan_graph(4, 1).unwrap(), complete_graph(4));
        assert_eq!(turan_graph(1, 5).unwrap(), Graph::empty(5));
        assert!(turan_graph(0, 2).is_err());
        for (r, ell) in [(2, 2), (3, 2), (2, 3), (3, 3), (4, 2)] {
            let gap = spectral_gap(&turan_graph(r, ell).unwrap()).unwrap();
            assert!((gap - (ell * (r - 1)) as f64).abs() < 1e-8);
        }
    }

    #[test]
    fn generators() {
        assert_eq!(cycle_graph(3).unwrap(), complete_graph(3));
        assert!(cycle_graph(2).is_err());
        assert_eq!(random_gnp(7, 0.0, 1).unwrap(), Graph::empty(7));
        assert_eq!(random_gnp(7, 1.0, 1).unwrap(), complete_graph(7));
        assert_eq!(random_gnp(8, 0.5, 42).unwrap(), random_gnp(8, 0.5, 42).unwrap());
        assert!(random_gnp(3, 1.5, 0).is_err());
    }

    #[test]
    fn blow_up_examples() {
        let g = cycle_graph(5).unwrap();
        assert_eq!(blow_up(&g, &[1; 5]).unwrap().0, g);
        let (b, proj) = blow_up(&complete_graph(2), &[2, 2]).unwrap();
        assert_eq!(proj, vec![0, 0, 1, 1]);
        assert_eq!(b.edges(), turan_graph(2, 2).unwrap().edges());
        let (b, proj) = blow_up(&g, &[2, 1, 3, 1, 2]).unwrap();
        for u in 0..b.n() {
            for v in 0..b.n() {
                if u != v && proj[u] == proj[v] {
                    assert!(!b.has_edge(u, v));
                }
                assert_eq!(b.has_edge(u, v), g.has_edge(proj[u], proj[v]));
            }
        }
        assert!(blow_up(&g, &[1, 0, 1, 1, 1]).is_err());
    }

    #[test]
    fn text_and_json_parsing() {
        let g = parse_graph("4 4\n0 1\n1 2\n# comment\n2 3\n3 0\n").unwrap();
        assert_eq!(g, cycle_graph(4).unwrap());
        let j = serde_json::to_string(&g).unwrap();
        assert_eq!(j, r#"{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
        assert_eq!(parse_graph(&j).unwrap(), g);
        match parse_graph("3 2\n0 1\n1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph(r#"{"n":2,"edges":[[0,0]]}"#), Err(Error::Parse { .. })));
    }
}

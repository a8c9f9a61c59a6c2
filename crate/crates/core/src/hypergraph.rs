//! Hypergraphs with repeated edges, line graphs, width and fractional
//! width, systems of disjoint representatives, and Hall-type checks
//! through colorful simplices and colorful independent sets.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::FlagComplex;
use crate::domination::{
    edge_incidence_representation, for_each_subset_of_size, gamma_lower_bound, VectorRepresentation,
};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::lp::{solve_covering_lp, LinearProgram, LpSolution};
use crate::report::{ser_f64, CheckRecord, Status};
use crate::spectral::betti_profile;

/// Exact width search handles at most this many edges.
pub const WIDTH_CAP: usize = 20;
/// Subset sweeps over `I ⊆ [m]` handle at most this many classes.
pub const FAMILY_CAP: usize = 8;
/// A Hall margin must exceed this to count as satisfied.
pub const MARGIN_TOLERANCE: f64 = 1e-7;

/// Edges over `0..ground`, each nonempty, repeats allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypergraph {
    ground: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Vertices inside an edge are sorted and deduplicated.
    pub fn new(ground: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut clean = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            if e.is_empty() {
                return Err(Error::InvalidParameter(format!("edge {i} is empty")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= ground) {
                return Err(Error::VertexOutOfRange { vertex: v, n: ground });
            }
            e.sort_unstable();
            e.dedup();
            clean.push(e);
        }
        Ok(Hypergraph { ground, edges: clean })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            ground: usize,
            edges: Vec<Vec<usize>>,
        }
        let raw: Raw = serde_json::from_str(s)?;
        Self::new(raw.ground, raw.edges)
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Hypergraphs `F_1..F_m` over a shared ground set. An empty `F_i` is
/// allowed and rules out any SDR.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergraphFamily {
    ground: usize,
    members: Vec<Hypergraph>,
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    ground: usize,
    hypergraphs: Vec<Vec<Vec<usize>>>,
}

impl HypergraphFamily {
    pub fn new(ground: usize, hypergraphs: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if hypergraphs.is_empty() {
            return Err(Error::InvalidParameter("a family needs at least one hypergraph".into()));
        }
        let members = hypergraphs
            .into_iter()
            .map(|edges| Hypergraph::new(ground, edges))
            .collect::<Result<_>>()?;
        Ok(HypergraphFamily { ground, members })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: FamilyJson = serde_json::from_str(s)?;
        Self::new(raw.ground, raw.hypergraphs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FamilyJson {
            ground: self.ground,
            hypergraphs: self.members.iter().map(|h| h.edges.clone()).collect(),
        })
        .expect("plain data serializes")
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Hypergraph] {
        &self.members
    }

    /// `∪_{i∈I} F_i` with multiplicity, in class order.
    pub fn union(&self, classes: &[usize]) -> Hypergraph {
        let edges = classes
            .iter()
            .flat_map(|&i| self.members[i].edges.iter().cloned())
            .collect();
        Hypergraph {
            ground: self.ground,
            edges,
        }
    }

    /// Union of all members together with the class of every edge.
    pub fn disjoint_union(&self) -> (Hypergraph, Vec<Vec<usize>>) {
        let all: Vec<usize> = (0..self.len()).collect();
        let mut classes = Vec::with_capacity(self.len());
        let mut next = 0;
        for h in &self.members {
            classes.push((next..next + h.edge_count()).collect());
            next += h.edge_count();
        }
        (self.union(&all), classes)
    }
}

fn validate_partition(n: usize, classes: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; n];
    for (i, c) in classes.iter().enumerate() {
        if c.is_empty() {
            return Err(Error::InvalidParameter(format!("color class {i} is empty")));
        }
        for &v in c {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidParameter(format!("vertex {v} is in two classes")));
            }
        }
    }
    match seen.iter().position(|s| !s) {
        Some(v) => Err(Error::InvalidParameter(format!("vertex {v} is in no class"))),
        None => Ok(()),
    }
}

/// A complex with its vertices partitioned into color classes.
#[derive(Clone, Debug)]
pub struct PartitionedComplex {
    complex: FlagComplex,
    classes: Vec<Vec<usize>>,
}

impl PartitionedComplex {
    pub fn new(complex: FlagComplex, classes: Vec<Vec<usize>>) -> Result<Self> {
        validate_partition(complex.n(), &classes)?;
        Ok(PartitionedComplex { complex, classes })
    }

    pub fn complex(&self) -> &FlagComplex {
        &self.complex
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }
}

/// One vertex per hyperedge occurrence; two occurrences are adjacent when
/// they intersect, so copies of one edge are adjacent.
pub fn line_graph(f: &Hypergraph) -> Result<Graph> {
    if f.edges.is_empty() {
        return Err(Error::InvalidParameter("line graph of a hypergraph without edges".into()));
    }
    let m = f.edges.len();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            if intersection_size(&f.edges[i], &f.edges[j]) > 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::new(m, edges)
}

#[derive(Clone, Debug, Serialize)]
pub struct WidthReport {
    pub value: usize,
    /// Indices of the edges meeting every edge.
    pub witness: Vec<usize>,
}

/// `w(F)`: fewest edges meeting every edge, by subset search.
pub fn width(f: &Hypergraph) -> Result<WidthReport> {
    width_capped(f, WIDTH_CAP)
}

pub fn width_capped(f: &Hypergraph, cap: usize) -> Result<WidthReport> {
    let m = f.edges.len();
    if m > cap.min(31) {
        return Err(Error::SearchCapExceeded {
            what: "width search",
            size: m,
            cap,
        });
    }
    let hits: Vec<u32> = f
        .edges
        .iter()
        .map(|e| {
            f.edges
                .iter()
                .enumerate()
                .filter(|(_, g)| intersection_size(e, g) > 0)
                .fold(0u32, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    let all = if m == 0 { 0 } else { (1u32 << m) - 1 };
    for t in 0..=m {
        let mut found = None;
        for_each_subset_of_size(m, t, |s| {
            if found.is_none() {
                let cover = (0..m).filter(|i| s >> i & 1 == 1).fold(0u32, |acc, i| acc | hits[i]);
                if cover == all {
                    found = Some(s);
                }
            }
        });
        if let Some(s) = found {
            return Ok(WidthReport {
                value: t,
                witness: (0..m).filter(|i| s >> i & 1 == 1).collect(),
            });
        }
    }
    unreachable!("the full edge set meets every edge")
}

/// Covering LP of `w*`: for every edge `E`, `Σ_F f(F)·|E ∩ F| ≥ 1`.
pub fn fractional_width_lp(f: &Hypergraph) -> LinearProgram {
    let m = f.edges.len();
    let rows = f
        .edges
        .iter()
        .map(|e| f.edges.iter().map(|g| intersection_size(e, g) as f64).collect())
        .collect();
    LinearProgram::new(vec![1.0; m], rows, vec![1.0; m]).expect("square data")
}

#[derive(Clone, Debug, Serialize)]
pub struct FractionalWidth {
    #[serde(serialize_with = "ser_f64")]
    pub value: f64,
    pub solution: LpSolution,
}

/// `w*(F)`; zero for a hypergraph without edges.
pub fn fractional_width(f: &Hypergraph) -> Result<FractionalWidth> {
    let solution = solve_covering_lp(&fractional_width_lp(f))?;
    Ok(FractionalWidth {
        value: solution.objective,
        solution,
    })
}

/// `P(F) ∈ ℝ^V`, the incidence vector of each edge occurrence: a vector
/// representation of the line graph with `PPᵀ = (|E ∩ F|)`.
pub fn line_graph_incidence_representation(f: &Hypergraph) -> Result<VectorRepresentation> {
    let vectors = f
        .edges
        .iter()
        .map(|e| {
            let mut v = vec![0.0; f.ground];
            for &x in e {
                v[x] = 1.0;
            }
            v
        })
        .collect();
    VectorRepresentation::new(f.ground, vectors)
}

#[derive(Clone, Debug, Serialize)]
pub struct SdrSearch {
    /// Index into `F_i` of the chosen edge, for each `i`.
    pub choice: Option<Vec<usize>>,
    pub nodes: usize,
    /// SHA-256 of the visited `(class, edge)` sequence and the outcome.
    pub transcript: String,
}

/// Exhaustive backtracking for pairwise-disjoint `F_1 ∈ F_1, …, F_m ∈ F_m`.
pub fn find_sdr(fam: &HypergraphFamily) -> Result<SdrSearch> {
    if fam.len() > FAMILY_CAP {
        return Err(Error::SearchCapExceeded {
            what: "SDR search",
            size: fam.len(),
            cap: FAMILY_CAP,
        });
    }
    let mut used = vec![false; fam.ground];
    let mut choice = Vec::with_capacity(fam.len());
    let mut hasher = Sha256::new();
    let mut nodes = 0;
    let found = !fam.members.iter().any(|h| h.edges.is_empty())
        && sdr_step(fam, 0, &mut used, &mut choice, &mut hasher, &mut nodes);
    let choice = found.then_some(choice);
    hasher.update(match &choice {
        Some(c) => format!("found {c:?}"),
        None => "none".into(),
    });
    let transcript = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
    Ok(SdrSearch {
        choice,
        nodes,
        transcript,
    })
}

fn sdr_step(
    fam: &HypergraphFamily,
    i: usize,
    used: &mut [bool],
    choice: &mut Vec<usize>,
    hasher: &mut Sha256,
    nodes: &mut usize,
) -> bool {
    if i == fam.len() {
        return true;
    }
    for (j, e) in fam.members[i].edges.iter().enumerate() {
        *nodes += 1;
        hasher.update(format!("{i}:{j};"));
        if e.iter().any(|&v| used[v]) {
            continue;
        }
        for &v in e {
            used[v] = true;
        }
        choice.push(j);
        if sdr_step(fam, i + 1, used, choice, hasher, nodes) {
            return true;
        }
        choice.pop();
        for &v in e {
            used[v] = false;
        }
    }
    false
}

/// Re-checks membership and disjointness of a claimed SDR.
pub fn is_sdr(fam: &HypergraphFamily, choice: &[usize]) -> bool {
    if choice.len() != fam.len() {
        return false;
    }
    let mut used = vec![false; fam.ground];
    for (h, &j) in fam.members.iter().zip(choice) {
        let Some(e) = h.edges.get(j) else { return false };
        for &v in e {
            if std::mem::replace(&mut used[v], true) {
                return false;
            }
        }
    }
    true
}

/// Nonempty subsets of `0..m` in increasing bitmask order.
pub fn nonempty_subsets(m: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..1 << m).map(move |s| (0..m).filter(|i| s >> i & 1 == 1).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct SubsetMargin {
    pub subset: Vec<usize>,
    #[serde(serialize_with = "ser_f64")]
    pub value: f64,
    #[serde(serialize_with = "ser_f64")]
    pub needed: f64,
    #[serde(serialize_with = "ser_f64")]
    pub margin: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HallReport {
    pub sdr: SdrSearch,
    pub fractional_margins: Vec<SubsetMargin>,
    pub width_margins: Vec<SubsetMargin>,
    pub records: Vec<CheckRecord>,
}

fn implication_status(min_margin: f64, integral: bool, conclusion: bool) -> Status {
    if integral {
        match (min_margin >= 0.0, conclusion) {
            (true, true) => Status::Pass,
            (true, false) => Status::Fail,
            (false, _) => Status::Vacuous,
        }
    } else if min_margin > MARGIN_TOLERANCE {
        if conclusion {
            Status::Pass
        } else {
            Status::Fail
        }
    } else if min_margin >= -MARGIN_TOLERANCE {
        Status::Inconclusive
    } else {
        Status::Vacuous
    }
}

fn worst(margins: &[SubsetMargin]) -> Option<&SubsetMargin> {
    margins.iter().min_by(|a, b| a.margin.total_cmp(&b.margin))
}

/// Both Hall-type sufficient conditions for an SDR:
/// `w*(∪_{i∈I} F_i) > |I| − 1` and `w(∪_{i∈I} F_i) ≥ 2|I| − 1` for every
/// nonempty `I`. Each asserts an SDR when it holds; which of them hold is
/// recorded per family.
pub fn verify_hall_conditions(fam: &HypergraphFamily) -> Result<HallReport> {
    verify_hall_conditions_capped(fam, WIDTH_CAP)
}

pub fn verify_hall_conditions_capped(fam: &HypergraphFamily, width_cap: usize) -> Result<HallReport> {
    let m = fam.len();
    if m > FAMILY_CAP {
        return Err(Error::SearchCapExceeded {
            what: "subset sweep",
            size: m,
            cap: FAMILY_CAP,
        });
    }
    let sdr = find_sdr(fam)?;
    if let Some(c) = &sdr.choice {
        debug_assert!(is_sdr(fam, c));
    }
    let mut fractional = Vec::new();
    let mut integral = Vec::new();
    for subset in nonempty_subsets(m) {
        let u = fam.union(&subset);
        let size = subset.len() as f64;
        let ws = fractional_width(&u)?.value;
        fractional.push(SubsetMargin {
            subset: subset.clone(),
            value: ws,
            needed: size - 1.0,
            margin: ws - (size - 1.0),
        });
        let w = width_capped(&u, width_cap)?.value as f64;
        integral.push(SubsetMargin {
            subset,
            value: w,
            needed: 2.0 * size - 1.0,
            margin: w - (2.0 * size - 1.0),
        });
    }
    let has_sdr = sdr.choice.is_some();
    let outcome = match &sdr.choice {
        Some(c) => format!("SDR {c:?}"),
        None => format!("no SDR; transcript {}", sdr.transcript),
    };
    let wf = worst(&fractional).expect("m >= 1");
    let wi = worst(&integral).expect("m >= 1");
    let frac_status = implication_status(wf.margin, false, has_sdr);
    let int_status = implication_status(wi.margin, true, has_sdr);
    let separation = match (frac_status == Status::Pass || frac_status == Status::Fail, wi.margin >= 0.0) {
        (true, false) => "; fractional condition holds where the integral one fails",
        (false, true) => "; integral condition holds where the fractional one fails",
        _ => "",
    };
    let records = vec![
        CheckRecord::implication(
            "fractional_width_hall",
            "w*(union_I F_i) > |I|-1 for all I => SDR exists",
            None,
            wf.margin,
            0.0,
            frac_status,
        )
        .with_note(format!("tightest I = {:?}; {outcome}{separation}", wf.subset)),
        CheckRecord::implication(
            "width_hall",
            "w(union_I F_i) >= 2|I|-1 for all I => SDR exists",
            None,
            wi.margin,
            0.0,
            int_status,
        )
        .with_note(format!("tightest I = {:?}; {outcome}", wi.subset)),
        CheckRecord::at_most(
            "fractional_width_below_width",
            "w*(union_I F_i) <= w(union_I F_i) for all I",
            None,
            fractional
                .iter()
                .zip(&integral)
                .map(|(f, i)| f.value - i.value)
                .fold(f64::NEG_INFINITY, f64::max),
            0.0,
            MARGIN_TOLERANCE,
        ),
    ];
    Ok(HallReport {
        sdr,
        fractional_margins: fractional,
        width_margins: integral,
        records,
    })
}

/// Colorful tuple (one vertex per class, in class order) whose vertices are
/// pairwise `compatible`, by backtracking with pairwise pruning.
pub fn find_colorful(classes: &[Vec<usize>], compatible: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    fn step(classes: &[Vec<usize>], chosen: &mut Vec<usize>, ok: &dyn Fn(usize, usize) -> bool) -> bool {
        let Some(class) = classes.get(chosen.len()) else {
            return true;
        };
        for &v in class {
            if chosen.iter().all(|&u| ok(u, v)) {
                chosen.push(v);
                if step(classes, chosen, ok) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(classes.len());
    step(classes, &mut chosen, &compatible).then_some(chosen)
}

/// `η(Z[∪_{i∈I} W_i]) ≥ |I|` for every nonempty `I` implies a colorful
/// simplex. `Z` is a flag complex, so simplices are cliques of its graph.
pub fn verify_colorful_simplex(pc: &PartitionedComplex) -> Result<Vec<CheckRecord>> {
    let m = pc.classes.len();
    if m > FAMILY_CAP {
        return Err(Error::SearchCapExceeded {
            what: "subset sweep",
            size: m,
            cap: FAMILY_CAP,
        });
    }
    let mut out = Vec::new();
    let mut all_hold = true;
    let mut undecided = false;
    for subset in nonempty_subsets(m) {
        let vertices: Vec<usize> = subset.iter().flat_map(|&i| pc.classes[i].iter().copied()).collect();
        let eta = betti_profile(&pc.complex.induced(&vertices)?)?.eta;
        let need = subset.len() as f64;
        let status = match eta.at_least(need, 0.0) {
            Some(true) => Status::Pass,
            Some(false) => {
                all_hold = false;
                Status::Vacuous
            }
            None => {
                undecided = true;
                Status::Inconclusive
            }
        };
        out.push(
            CheckRecord::at_least("induced_eta_margin", "eta(Z[W_I]) >= |I|", None, eta.as_f64(), need, 0.0)
                .with_status(status)
                .with_note(format!("I = {subset:?}; eta = {eta}")),
        );
    }
    let g = pc.complex.graph();
    let found = find_colorful(&pc.classes, |u, v| g.has_edge(u, v));
    let status = match (all_hold, undecided, found.is_some()) {
        (false, _, _) => Status::Vacuous,
        (true, true, _) => Status::Inconclusive,
        (true, false, true) => Status::Pass,
        (true, false, false) => Status::Fail,
    };
    let lhs = if all_hold { 1.0 } else { 0.0 };
    out.push(
        CheckRecord::implication(
            "colorful_simplex",
            "eta(Z[W_I]) >= |I| for all I => colorful simplex",
            None,
            lhs,
            0.0,
            status,
        )
        .with_note(match &found {
            Some(s) => format!("colorful simplex {s:?}"),
            None => "no colorful simplex".into(),
        }),
    );
    Ok(out)
}

/// `Γ(G[W_I]) > |I| − 1` for every nonempty `I` implies a colorful
/// independent set. `Γ` is bounded below by the edge-incidence
/// representation of each induced subgraph (a zero representation when it
/// has no edges) and by the restrictions of any supplied representations
/// of `G`.
pub fn verify_colorful_independent_set(
    g: &Graph,
    classes: &[Vec<usize>],
    reps: &[VectorRepresentation],
) -> Result<Vec<CheckRecord>> {
    validate_partition(g.n(), classes)?;
    let m = classes.len();
    if m > FAMILY_CAP {
        return Err(Error::SearchCapExceeded {
            what: "subset sweep",
            size: m,
            cap: FAMILY_CAP,
        });
    }
    let mut out = Vec::new();
    let mut min_margin = f64::INFINITY;
    for subset in nonempty_subsets(m) {
        let vertices: Vec<usize> = subset.iter().flat_map(|&i| classes[i].iter().copied()).collect();
        let sub = g.induced_subgraph(&vertices)?;
        let mut candidates: Vec<VectorRepresentation> = reps.iter().map(|p| restrict(p, &vertices)).collect();
        candidates.push(if sub.edge_count() > 0 {
            edge_incidence_representation(&sub)?
        } else {
            VectorRepresentation::new(1, vec![vec![0.0]; sub.n()])?
        });
        let lb = gamma_lower_bound(&sub, &candidates)?.value;
        let need = subset.len() as f64 - 1.0;
        min_margin = min_margin.min(lb - need);
        out.push(
            CheckRecord::at_least("induced_gamma_margin", "Gamma(G[W_I]) > |I|-1", None, lb, need, 0.0)
                .with_status(if lb - need > MARGIN_TOLERANCE { Status::Pass } else { Status::Vacuous })
                .with_note(format!("I = {subset:?}")),
        );
    }
    let found = find_colorful(classes, |u, v| !g.has_edge(u, v));
    let status = implication_status(min_margin, false, found.is_some());
    out.push(
        CheckRecord::implication(
            "colorful_independent_set",
            "Gamma(G[W_I]) > |I|-1 for all I => colorful independent set",
            None,
            min_margin,
            0.0,
            status,
        )
        .with_note(match &found {
            Some(s) => format!("colorful independent set {s:?}"),
            None => "no colorful independent set".into(),
        }),
    );
    Ok(out)
}

fn restrict(p: &VectorRepresentation, vertices: &[usize]) -> VectorRepresentation {
    VectorRepresentation::new(p.dim(), vertices.iter().map(|&v| p.vectors()[v].clone()).collect())
        .expect("rows keep their length")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_flag_complex;
    use crate::domination::representation_value;
    use crate::graphs::complete_graph;

    fn hg(ground: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(ground, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    fn fam(ground: usize, hs: &[&[&[usize]]]) -> HypergraphFamily {
        HypergraphFamily::new(
            ground,
            hs.iter().map(|h| h.iter().map(|e| e.to_vec()).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(Hypergraph::new(3, vec![vec![]]).is_err());
        assert!(Hypergraph::new(3, vec![vec![3]]).is_err());
        assert!(HypergraphFamily::new(3, vec![]).is_err());
        let f = Hypergraph::from_json(r#"{"ground": 3, "edges": [[2, 0, 0]]}"#).unwrap();
        assert_eq!(f.edges(), &[vec![0, 2]]);
        let fa = fam(4, &[&[&[0, 1]], &[&[2], &[3]]]);
        assert_eq!(HypergraphFamily::from_json(&fa.to_json()).unwrap(), fa);
    }

    #[test]
    fn line_graph_examples() {
        let g = line_graph(&hg(6, &[&[0, 1], &[2, 3], &[4, 5]])).unwrap();
        assert_eq!(g.edge_count(), 0);
        let g = line_graph(&hg(4, &[&[0, 1], &[1, 2], &[2, 3]])).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        let g = line_graph(&hg(1, &[&[0], &[0]])).unwrap();
        assert_eq!(g, complete_graph(2));
        assert!(line_graph(&hg(1, &[])).is_err());
    }

    #[test]
    fn width_examples() {
        assert_eq!(width(&hg(2, &[&[0, 1]])).unwrap().value, 1);
        assert_eq!(width(&hg(4, &[&[0], &[1], &[2], &[3]])).unwrap().value, 4);
        assert_eq!(width(&hg(3, &[&[0, 1], &[1, 2], &[0, 2]])).unwrap().value, 1);
        let many = Hypergraph::new(21, (0..21).map(|i| vec![i]).collect()).unwrap();
        assert!(width(&many).is_err());
    }

    #[test]
    fn fractional_width_examples() {
        assert!((fractional_width(&hg(1, &[&[0]])).unwrap().value - 1.0).abs() < 1e-9);
        let d = hg(4, &[&[0], &[1], &[2], &[3]]);
        assert!((fractional_width(&d).unwrap().value - 4.0).abs() < 1e-9);
        let tri = hg(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        let w = fractional_width(&tri).unwrap();
        assert!((w.value - 0.75).abs() < 1e-9);
        assert!(w.solution.certificate(&fractional_width_lp(&tri)).unwrap().holds(w.value));
        // uniform 1/4 is feasible with every constraint tight
        let lp = fractional_width_lp(&tri);
        for row in lp.matrix() {
            let s: f64 = row.iter().map(|a| a * 0.25).sum();
            assert_eq!(s, 1.0);
        }
    }

    #[test]
    fn incidence_value_matches_fractional_width() {
        let f = hg(5, &[&[0, 1], &[1, 2, 3], &[3, 4], &[0, 4], &[2]]);
        let g = line_graph(&f).unwrap();
        let p = line_graph_incidence_representation(&f).unwrap();
        let v = representation_value(&g, &p).unwrap().value;
        assert!((v - fractional_width(&f).unwrap().value).abs() < 1e-9);
    }

    #[test]
    fn sdr_examples() {
        let s = find_sdr(&fam(2, &[&[&[0]], &[&[1]]])).unwrap();
        assert_eq!(s.choice, Some(vec![0, 0]));
        let s = find_sdr(&fam(1, &[&[&[0]], &[&[0]]])).unwrap();
        assert_eq!(s.choice, None);
        assert_eq!(s.transcript.len(), 64);
        let s = find_sdr(&fam(2, &[&[&[0]], &[]])).unwrap();
        assert_eq!(s.choice, None);
        let f = fam(6, &[&[&[0, 1], &[2, 3]], &[&[0, 2], &[1, 4]], &[&[1, 3], &[5]]]);
        let s = find_sdr(&f).unwrap();
        assert!(is_sdr(&f, s.choice.as_ref().unwrap()));
        assert_eq!(find_sdr(&f).unwrap().transcript, s.transcript);
    }

    #[test]
    fn hall_disjoint_singletons_separate_conditions() {
        let f = fam(3, &[&[&[0]], &[&[1]], &[&[2]]]);
        let r = verify_hall_conditions(&f).unwrap();
        assert_eq!(r.records[0].status, Status::Pass);
        assert_eq!(r.records[1].status, Status::Vacuous);
        assert!(r.records[0].note.as_ref().unwrap().contains("fractional condition holds"));
        for m in &r.fractional_margins {
            assert!((m.value - m.subset.len() as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn hall_repeated_singleton_is_not_asserted() {
        let r = verify_hall_conditions(&fam(1, &[&[&[0]], &[&[0]]])).unwrap();
        assert!(r.sdr.choice.is_none());
        let pair = &r.fractional_margins[2];
        assert_eq!(pair.subset, vec![0, 1]);
        assert!((pair.value - 1.0).abs() < 1e-9);
        assert_ne!(r.records[0].status, Status::Fail);
        assert_ne!(r.records[0].status, Status::Pass);
        let single = verify_hall_conditions(&fam(1, &[&[&[0]]])).unwrap();
        assert_eq!(single.records[1].status, Status::Pass);
    }

    #[test]
    fn colorful_simplex_examples() {
        let x = FlagComplex::full(&complete_graph(2)).unwrap();
        let pc = PartitionedComplex::new(x, vec![vec![0], vec![1]]).unwrap();
        let recs = verify_colorful_simplex(&pc).unwrap();
        assert_eq!(recs.last().unwrap().status, Status::Pass);
        // two isolated points: η(Z[W]) = 1 < 2
        let x = build_flag_complex(&Graph::empty(2), 1).unwrap();
        let pc = PartitionedComplex::new(x, vec![vec![0], vec![1]]).unwrap();
        let recs = verify_colorful_simplex(&pc).unwrap();
        assert_eq!(recs.last().unwrap().status, Status::Vacuous);
        let x = FlagComplex::full(&complete_graph(3)).unwrap();
        assert!(PartitionedComplex::new(x.clone(), vec![vec![0], vec![1]]).is_err());
        assert!(PartitionedComplex::new(x, vec![vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn colorful_independent_set_via_line_graph() {
        let f = fam(6, &[&[&[0, 1], &[2, 3]], &[&[0, 2], &[4]], &[&[5], &[1, 3]]]);
        let (u, classes) = f.disjoint_union();
        let g = line_graph(&u).unwrap();
        let p = line_graph_incidence_representation(&u).unwrap();
        let recs = verify_colorful_independent_set(&g, &classes, &[p]).unwrap();
        let last = recs.last().unwrap();
        assert!(last.pass, "{last:?}");
        assert!(find_sdr(&f).unwrap().choice.is_some());
    }
}

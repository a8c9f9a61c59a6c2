//! Command-line front end. Every command writes one JSON object per line
//! (or CSV rows of the check records), starting with a `run` header that
//! carries the seed. Output is byte-identical for identical invocations.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error,
//! 3 a search or enumeration cap was exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::complex::{build_flag_complex_with_cap, default_max_dim, DEFAULT_SIMPLEX_CAP};
use crate::corpus::{
    family_corpus, gnp_corpus, graph_checks, hypergraph_checks, hypergraph_corpus, GraphCheckOptions,
};
use crate::domination::{
    cycle_representation, domination_number_capped, edge_incidence_representation,
    fractional_strong_domination, gamma_lower_bound, independent_domination_number, representation_lp,
    representation_value, strong_domination_lp, total_domination_number_capped, validate_representation,
    verify_classical_bounds, verify_cycle, verify_eta_vs_gamma, verify_lambda_max_vs_representation, VectorRepresentation,
    DOMINATION_CAP, INDEPENDENT_DOMINATION_CAP,
};
use crate::error::{Error, Result};
use crate::graphs::{
    complement, complete_graph, cycle_graph, lambda_max, parse_graph, random_gnp, spectral_gap, turan_graph,
    Graph,
};
use crate::hypergraph::{
    fractional_width, fractional_width_lp, verify_hall_conditions_capped, width_capped, Hypergraph,
    HypergraphFamily, WIDTH_CAP,
};
use crate::report::{CheckRecord, Comparison, Rounded, Status};
use crate::spectral::{
    betti_profile, min_eigenvalue, recursion_records, vanishing_records, verify_facet_degree_bound,
    verify_turan,
};

const TURAN_FAMILY: [(usize, usize); 5] = [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)];

#[derive(Parser, Debug)]
#[command(name = "flaghodge", version, about = "Flag complex spectra, independence complex connectivity, vector domination and SDR checks")]
struct Cli {
    /// Master seed for generated instances and random cochains.
    #[arg(long, global = true, default_value_t = 42, env = "FLAGHODGE_SEED")]
    seed: u64,
    /// Output format. CSV carries the check records only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Caps {
    /// Highest simplex dimension enumerated [default: min(n-1, 8)].
    #[arg(long, global = true, env = "FLAGHODGE_MAX_DIM")]
    max_dim: Option<usize>,
    /// Most simplices allowed in one dimension.
    #[arg(long, global = true, env = "FLAGHODGE_SIMPLEX_CAP", default_value_t = DEFAULT_SIMPLEX_CAP)]
    simplex_cap: usize,
    /// Largest vertex count for exact domination searches.
    #[arg(long, global = true, env = "FLAGHODGE_SUBSET_CAP", default_value_t = DOMINATION_CAP)]
    subset_cap: usize,
    /// Largest edge count for exact width searches.
    #[arg(long, global = true, env = "FLAGHODGE_WIDTH_CAP", default_value_t = WIDTH_CAP)]
    width_cap: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Graph file: JSON {"n": .., "edges": [[u, v], ..]} or text "n m" then one "u v" per line.
    #[arg(long, required_unless_present = "gen", conflicts_with = "gen")]
    graph: Option<PathBuf>,
    /// Generated graph: turan:R:L, cycle:N, complete:N, empty:N or gnp:N:P (seeded by --seed).
    #[arg(long)]
    gen: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Laplacian and Hodge spectra, Betti numbers, eta, and the spectral checks.
    Spectra {
        #[command(flatten)]
        input: GraphInput,
        /// Work on the independence complex (flag complex of the complement).
        #[arg(long)]
        independence: bool,
    },
    /// Domination parameters, representation values and the eta bounds.
    Domination {
        #[command(flatten)]
        input: GraphInput,
        /// Comma-separated representations: edge-incidence, cycle, or paths to {"dim", "vectors"} JSON.
        #[arg(long, value_delimiter = ',', default_value = "edge-incidence")]
        reps: Vec<String>,
        /// Blow-up weights "a0,a1,..."; repeat for several vectors.
        #[arg(long)]
        weights: Vec<String>,
        /// Also emit the linear programs as JSON.
        #[arg(long)]
        dump_lp: bool,
    },
    /// SDR search and both Hall-type conditions for a family.
    Sdr {
        /// Family JSON {"ground": n, "hypergraphs": [[[..], ..], ..]}.
        #[arg(long)]
        family: PathBuf,
    },
    /// Width and fractional width of a hypergraph.
    Width {
        /// Hypergraph JSON {"ground": n, "edges": [[..], ..]}.
        #[arg(long)]
        hypergraph: PathBuf,
        /// Also emit the linear program as JSON.
        #[arg(long)]
        dump_lp: bool,
    },
    /// Every verifier over seeded G(n,p), Turán, cycle and hypergraph instances.
    Corpus {
        #[arg(long, default_value_t = 200)]
        graphs: usize,
        #[arg(long, default_value_t = 4)]
        nmin: usize,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        #[arg(long, default_value_t = 100)]
        families: usize,
        #[arg(long, default_value_t = 20)]
        hypergraphs: usize,
        /// Random cochains per dimension per graph for the norm identities.
        #[arg(long, default_value_t = 2)]
        cochains: usize,
    },
    /// Simplices of the flag (or independence) complex by dimension.
    DumpComplex {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        independence: bool,
    },
}

/// Parses `args` (program name first), runs, writes the report and returns
/// the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut out = Output::default();
    let code = match execute(&cli, &mut out) {
        Ok(()) => out.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    };
    let text = out.render(cli.format, cli.seed);
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    code
}

fn exit_code_for(e: &Error) -> i32 {
    if e.is_cap() {
        3
    } else if matches!(e, Error::RankMismatch { .. } | Error::NoConvergence { .. } | Error::SimplexStalled { .. }) {
        1
    } else {
        2
    }
}

#[derive(Default)]
struct Output {
    lines: Vec<Value>,
    checks: Vec<CheckRecord>,
    failed: bool,
    errors: usize,
    cap_errors: usize,
}

impl Output {
    fn push(&mut self, kind: &str, body: impl Serialize) {
        let mut v = serde_json::to_value(body).expect("report values serialize");
        if let Value::Object(map) = &mut v {
            let mut tagged = Map::new();
            tagged.insert("record".into(), Value::String(kind.into()));
            tagged.append(map);
            v = Value::Object(tagged);
        }
        self.lines.push(v);
    }

    fn check(&mut self, rec: CheckRecord) {
        self.failed |= rec.failed();
        self.push("check", &rec);
        self.checks.push(rec);
    }

    fn checks(&mut self, recs: impl IntoIterator<Item = CheckRecord>) {
        for r in recs {
            self.check(r);
        }
    }

    fn error(&mut self, instance: &str, e: &Error) {
        self.errors += 1;
        if e.is_cap() {
            self.cap_errors += 1;
        }
        self.push("error", json!({"instance": instance, "error": e.to_string(), "cap": e.is_cap()}));
    }

    fn exit_code(&self) -> i32 {
        if self.failed || self.errors > self.cap_errors {
            1
        } else if self.cap_errors > 0 {
            3
        } else {
            0
        }
    }

    fn render(&self, format: Format, seed: u64) -> String {
        match format {
            Format::Json => {
                let mut s = String::new();
                for v in &self.lines {
                    s.push_str(&serde_json::to_string(v).expect("values serialize"));
                    s.push('\n');
                }
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record([
                    "seed", "check", "relation", "instance", "k", "lhs", "rhs", "slack", "tolerance", "comparison",
                    "status", "pass", "note",
                ])
                .expect("in-memory write");
                for r in &self.checks {
                    let cell = |x: f64| match serde_json::to_value(Rounded(x)).expect("float serializes") {
                        Value::String(s) => s,
                        Value::Null => "nan".into(),
                        other => other.to_string(),
                    };
                    let plain = |v: Value| match v {
                        Value::String(s) => s,
                        other => other.to_string(),
                    };
                    w.write_record([
                        seed.to_string(),
                        r.check.clone(),
                        r.relation.clone(),
                        r.instance.clone(),
                        r.k.map(|k| k.to_string()).unwrap_or_default(),
                        cell(r.lhs),
                        cell(r.rhs),
                        cell(r.slack),
                        cell(r.tolerance),
                        plain(serde_json::to_value(r.comparison).expect("enum serializes")),
                        plain(serde_json::to_value(r.status).expect("enum serializes")),
                        r.pass.to_string(),
                        r.note.clone().unwrap_or_default(),
                    ])
                    .expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
            }
        }
    }
}

fn execute(cli: &Cli, out: &mut Output) -> Result<()> {
    let name = match &cli.command {
        Command::Spectra { .. } => "spectra",
        Command::Domination { .. } => "domination",
        Command::Sdr { .. } => "sdr",
        Command::Width { .. } => "width",
        Command::Corpus { .. } => "corpus",
        Command::DumpComplex { .. } => "dump-complex",
    };
    out.push(
        "run",
        json!({
            "command": name,
            "seed": cli.seed,
            "version": env!("CARGO_PKG_VERSION"),
            "max_dim": cli.caps.max_dim,
            "simplex_cap": cli.caps.simplex_cap,
            "subset_cap": cli.caps.subset_cap,
            "width_cap": cli.caps.width_cap,
        }),
    );
    match &cli.command {
        Command::Spectra { input, independence } => {
            let (label, g) = load_graph(input, cli.seed)?;
            spectra(out, &label, &g, *independence, cli.caps)
        }
        Command::Domination {
            input,
            reps,
            weights,
            dump_lp,
        } => {
            let (label, g) = load_graph(input, cli.seed)?;
            domination(out, &label, &g, reps, weights, *dump_lp, cli.caps)
        }
        Command::Sdr { family } => {
            let fam = HypergraphFamily::from_json(&read(family)?)?;
            sdr(out, &file_label(family), &fam, cli.caps)
        }
        Command::Width { hypergraph, dump_lp } => {
            let f = Hypergraph::from_json(&read(hypergraph)?)?;
            width(out, &file_label(hypergraph), &f, *dump_lp, cli.caps)
        }
        Command::Corpus {
            graphs,
            nmin,
            nmax,
            families,
            hypergraphs,
            cochains,
        } => {
            if nmin > nmax || *nmin == 0 {
                return Err(Error::InvalidParameter(format!("need 1 <= nmin <= nmax, got {nmin}..{nmax}")));
            }
            corpus(out, cli.seed, *graphs, *nmin, *nmax, *families, *hypergraphs, *cochains, cli.caps)
        }
        Command::DumpComplex { input, independence } => {
            let (label, g) = load_graph(input, cli.seed)?;
            let h = if *independence { complement(&g) } else { g };
            let x = build_flag_complex_with_cap(&h, max_dim_for(&h, cli.caps), cli.caps.simplex_cap)?;
            let mut v = serde_json::to_value(x.dump())?;
            v["instance"] = json!(label);
            v["complex"] = json!(if *independence { "independence" } else { "flag" });
            v["truncated"] = json!(x.is_truncated());
            out.push("complex", v);
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn file_label(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn load_graph(input: &GraphInput, seed: u64) -> Result<(String, Graph)> {
    if let Some(path) = &input.graph {
        return Ok((file_label(path), parse_graph(&read(path)?)?));
    }
    let spec = input.gen.as_deref().expect("clap requires --graph or --gen");
    Ok((spec.to_string(), generate(spec, seed)?))
}

fn generate(spec: &str, seed: u64) -> Result<Graph> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::InvalidParameter(format!("unrecognized generator '{spec}'"));
    let int = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match parts.as_slice() {
        ["turan", r, l] => turan_graph(int(r)?, int(l)?),
        ["cycle", n] => cycle_graph(int(n)?),
        ["complete", n] => Ok(complete_graph(int(n)?)),
        ["empty", n] => Ok(Graph::empty(int(n)?)),
        ["gnp", n, p] => random_gnp(int(n)?, p.parse().map_err(|_| bad())?, seed),
        _ => Err(bad()),
    }
}

fn max_dim_for(g: &Graph, caps: Caps) -> usize {
    let full = g.n().saturating_sub(1);
    caps.max_dim.map_or(default_max_dim(g.n()), |d| d.min(full))
}

fn rounded(xs: &[f64]) -> Vec<Rounded> {
    xs.iter().copied().map(Rounded).collect()
}

fn spectra(out: &mut Output, label: &str, input: &Graph, independence: bool, caps: Caps) -> Result<()> {
    let g = if independence { complement(input) } else { input.clone() };
    let x = build_flag_complex_with_cap(&g, max_dim_for(&g, caps), caps.simplex_cap)?;
    // the top Laplacian of a truncated skeleton lacks its up part
    let exact_top = if x.is_truncated() { x.max_dim().checked_sub(1) } else { Some(x.top_dim()) };
    let mu: Vec<f64> = match exact_top {
        Some(t) => (0..=t.min(x.top_dim())).map(|k| min_eigenvalue(&x, k)).collect::<Result<_>>()?,
        None => Vec::new(),
    };
    let profile = betti_profile(&x)?;
    let (gap, lmax) = if g.n() >= 2 {
        (Some(Rounded(spectral_gap(&g)?)), Some(Rounded(lambda_max(&g)?)))
    } else {
        (None, None)
    };
    out.push(
        "spectrum",
        json!({
            "instance": label,
            "complex": if independence { "independence" } else { "flag" },
            "n": g.n(),
            "edges": g.edge_count(),
            "lambda_2": gap,
            "lambda_n": lmax,
            "counts": x.counts(),
            "mu": rounded(&mu),
            "betti": profile.betti,
            "eta": profile.eta,
            "max_dim": x.max_dim(),
            "truncated": x.is_truncated(),
        }),
    );
    let tag = |r: CheckRecord| r.with_instance(label);
    out.checks(recursion_records(g.n(), &mu).into_iter().map(tag));
    if let Some(Rounded(gap)) = gap {
        let top = exact_top.map_or(0, |t| t.min(x.top_dim()));
        if exact_top.is_some() {
            out.checks(vanishing_records(g.n(), gap, &profile, top).into_iter().map(tag));
        }
    }
    out.checks(verify_facet_degree_bound(&x)?.into_iter().map(tag));
    Ok(())
}

fn parse_reps(g: &Graph, specs: &[String]) -> Result<Vec<(String, VectorRepresentation)>> {
    let mut reps = Vec::new();
    for spec in specs.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        let p = match spec {
            "edge-incidence" => {
                if g.edge_count() == 0 {
                    continue;
                }
                edge_incidence_representation(g)?
            }
            "cycle" => {
                if !g.n().is_multiple_of(3) {
                    return Err(Error::InvalidParameter("the cycle representation needs C_{3k}".into()));
                }
                cycle_representation(g.n() / 3)?
            }
            path => VectorRepresentation::from_json(&read(Path::new(path))?)?,
        };
        if !validate_representation(g, &p) {
            return Err(Error::InvalidParameter(format!("'{spec}' is not a vector representation of the graph")));
        }
        reps.push((spec.to_string(), p));
    }
    Ok(reps)
}

fn parse_weights(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad blow-up weight '{t}'")))
        })
        .collect()
}

fn domination(
    out: &mut Output,
    label: &str,
    g: &Graph,
    rep_specs: &[String],
    weight_specs: &[String],
    dump_lp: bool,
    caps: Caps,
) -> Result<()> {
    let reps = parse_reps(g, rep_specs)?;
    let weights: Vec<Vec<usize>> = weight_specs.iter().map(|s| parse_weights(s)).collect::<Result<_>>()?;
    let value = |out: &mut Output, r: crate::domination::DominationReport, extra: Value| {
        let mut v = serde_json::to_value(r).expect("report serializes");
        v["instance"] = json!(label);
        if let Value::Object(m) = extra {
            for (k, x) in m {
                v[k] = x;
            }
        }
        out.push("value", v);
    };
    value(out, domination_number_capped(g, caps.subset_cap)?, json!({}));
    if g.isolated_vertex().is_none() {
        value(out, total_domination_number_capped(g, caps.subset_cap)?, json!({}));
    }
    if g.n() <= INDEPENDENT_DOMINATION_CAP.min(caps.subset_cap) {
        value(out, independent_domination_number(g)?, json!({}));
    }
    value(out, fractional_strong_domination(g)?, json!({}));
    if dump_lp {
        out.push("lp", json!({"instance": label, "name": "strong_fractional_domination", "program": strong_domination_lp(g)}));
    }
    for (name, p) in &reps {
        value(out, representation_value(g, p)?, json!({"representation": name}));
        if dump_lp {
            out.push("lp", json!({"instance": label, "name": format!("representation {name}"), "program": representation_lp(p)}));
        }
    }
    let plain: Vec<VectorRepresentation> = reps.iter().map(|(_, p)| p.clone()).collect();
    if !plain.is_empty() {
        value(out, gamma_lower_bound(g, &plain)?, json!({}));
    }
    let tag = |r: CheckRecord| r.with_instance(label);
    out.checks(verify_classical_bounds(g)?.into_iter().map(tag));
    for (name, p) in &reps {
        out.check(verify_lambda_max_vs_representation(g, p)?.with_instance(label).with_note(format!("representation {name}")));
    }
    out.checks(verify_eta_vs_gamma(g, &plain, &weights)?.into_iter().map(tag));
    Ok(())
}

fn sdr(out: &mut Output, label: &str, fam: &HypergraphFamily, caps: Caps) -> Result<()> {
    let report = verify_hall_conditions_capped(fam, caps.width_cap)?;
    out.push("sdr", json!({"instance": label, "search": report.sdr}));
    for m in &report.fractional_margins {
        out.push("margin", json!({"instance": label, "condition": "fractional_width", "margin": m}));
    }
    for m in &report.width_margins {
        out.push("margin", json!({"instance": label, "condition": "width", "margin": m}));
    }
    out.checks(report.records.into_iter().map(|r| r.with_instance(label)));
    Ok(())
}

fn width(out: &mut Output, label: &str, f: &Hypergraph, dump_lp: bool, caps: Caps) -> Result<()> {
    let w = width_capped(f, caps.width_cap)?;
    out.push("width", json!({"instance": label, "value": w.value, "witness": w.witness}));
    let ws = fractional_width(f)?;
    out.push("fractional_width", json!({"instance": label, "value": Rounded(ws.value), "solution": ws.solution}));
    if dump_lp {
        out.push("lp", json!({"instance": label, "name": "fractional_width", "program": fractional_width_lp(f)}));
    }
    if f.edge_count() > 0 {
        out.checks(hypergraph_checks(label, f)?);
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn corpus(
    out: &mut Output,
    seed: u64,
    graphs: usize,
    nmin: usize,
    nmax: usize,
    families: usize,
    hypergraphs: usize,
    cochains: usize,
    caps: Caps,
) -> Result<()> {
    for (r, l) in TURAN_FAMILY {
        let id = format!("turan r={r} l={l}");
        match verify_turan(r, l) {
            Ok(recs) => out.checks(recs.into_iter().map(|x| x.with_instance(id.clone()))),
            Err(e) => out.error(&id, &e),
        }
    }
    for n in 3..=12 {
        let id = format!("cycle n={n}");
        match verify_cycle(n) {
            Ok(recs) => out.checks(recs.into_iter().map(|x| x.with_instance(id.clone()))),
            Err(e) => out.error(&id, &e),
        }
    }
    let opts = GraphCheckOptions {
        cochains,
        ..GraphCheckOptions::default()
    };
    let instances = gnp_corpus(seed, graphs, nmin, nmax)?;
    let results: Vec<Result<Vec<CheckRecord>>> = instances.par_iter().map(|i| graph_checks(i, opts)).collect();
    for (inst, res) in instances.iter().zip(results) {
        match res {
            Ok(recs) => out.checks(recs),
            Err(e) => out.error(&inst.id, &e),
        }
    }
    for (id, f) in hypergraph_corpus(seed ^ 0x4859_5045_5247_5248, hypergraphs)? {
        match hypergraph_checks(&id, &f) {
            Ok(recs) => out.checks(recs),
            Err(e) => out.error(&id, &e),
        }
    }
    let fams = family_corpus(seed ^ 0x4641_4D49_4C59_0000, families, 4, 9)?;
    let results: Vec<Result<Vec<CheckRecord>>> = fams
        .par_iter()
        .map(|f| verify_hall_conditions_capped(&f.family, caps.width_cap).map(|r| r.records))
        .collect();
    for (f, res) in fams.iter().zip(results) {
        match res {
            Ok(recs) => out.checks(recs.into_iter().map(|r| r.with_instance(f.id.clone()))),
            Err(e) => out.error(&f.id, &e),
        }
    }
    summarize(out);
    Ok(())
}

/// Signed distance from violation: negative means the relation failed.
fn margin(r: &CheckRecord) -> f64 {
    match r.comparison {
        Comparison::AtLeast | Comparison::Implies => r.slack,
        Comparison::AtMost => -r.slack,
        Comparison::Equal => -r.slack.abs(),
    }
}

#[derive(Serialize)]
struct Summary {
    check: String,
    relation: String,
    pass: usize,
    fail: usize,
    inconclusive: usize,
    vacuous: usize,
    worst_slack: Option<Rounded>,
    worst_instance: Option<String>,
}

fn summarize(out: &mut Output) {
    let mut rows: Vec<(Summary, f64)> = Vec::new();
    for r in &out.checks {
        let idx = match rows.iter().position(|(s, _)| s.check == r.check) {
            Some(i) => i,
            None => {
                rows.push((
                    Summary {
                        check: r.check.clone(),
                        relation: r.relation.clone(),
                        pass: 0,
                        fail: 0,
                        inconclusive: 0,
                        vacuous: 0,
                        worst_slack: None,
                        worst_instance: None,
                    },
                    f64::INFINITY,
                ));
                rows.len() - 1
            }
        };
        let (s, worst) = &mut rows[idx];
        match r.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::Inconclusive => s.inconclusive += 1,
            Status::Vacuous => s.vacuous += 1,
        }
        let m = margin(r);
        if r.status != Status::Vacuous && (s.worst_slack.is_none() || m < *worst) {
            *worst = m;
            s.worst_slack = Some(Rounded(r.slack));
            s.worst_instance = Some(r.instance.clone());
        }
    }
    let total = out.checks.len();
    let failed = out.checks.iter().filter(|r| r.failed()).count();
    let errors = out.errors;
    for (s, _) in rows {
        out.push("summary", s);
    }
    out.push("totals", json!({"checks": total, "failed": failed, "errors": errors}));
}

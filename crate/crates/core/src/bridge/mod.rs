//! Labelled Cayley-graph data and the conversions between sofic
//! approximations by maps and by labelled graphs.

mod chart;
mod graph;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

pub use chart::{chart_from_graph, BallChart, ChartFailure};
pub use graph::LabeledDigraph;

use crate::approx::{DefectReport, MapOnV, SoficApproximation};
use crate::error::{domain, parse_err, Error, Result};
use crate::group::{Ball, Group, GroupElement};
use crate::rational::{self, fraction, Rational};

/// The set `V_0` of vertices whose neighbourhood looks like a ball in the
/// Cayley graph, together with `δ = 1 - |V_0| / |V|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodSet {
    v_size: usize,
    vertices: BTreeSet<usize>,
    delta: Rational,
}

impl GoodSet {
    pub fn new(v_size: usize, vertices: BTreeSet<usize>) -> Result<Self> {
        if v_size == 0 {
            return Err(domain("V must be nonempty"));
        }
        if let Some(&v) = vertices.iter().next_back().filter(|&&v| v >= v_size) {
            return Err(domain(format!("vertex {v} outside {v_size} vertices")));
        }
        let delta = fraction(v_size - vertices.len(), v_size);
        Ok(GoodSet {
            v_size,
            vertices,
            delta,
        })
    }

    pub fn all(v_size: usize) -> Result<Self> {
        Self::new(v_size, (0..v_size).collect())
    }

    pub fn v_size(&self) -> usize {
        self.v_size
    }

    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Measured `δ = 1 - |V_0| / |V|`.
    pub fn delta(&self) -> Rational {
        self.delta
    }

    /// `|V_0| ≥ (1 - δ)|V|`.
    pub fn meets(&self, delta: Rational) -> bool {
        self.delta <= delta
    }

    /// `# good-set vertices N delta d` followed by one vertex per line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# good-set vertices {} delta {}\n",
            self.v_size,
            rational::render(&self.delta)
        );
        for v in &self.vertices {
            let _ = writeln!(out, "{v}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut v_size = None;
        let mut vertices = BTreeSet::new();
        for (i, line) in text.lines().enumerate() {
            let no = i + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                let toks: Vec<&str> = comment.split_whitespace().collect();
                if let Some(p) = toks.iter().position(|t| *t == "vertices") {
                    let n = toks
                        .get(p + 1)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| parse_err(no, "bad vertex count"))?;
                    v_size = Some(n);
                }
                continue;
            }
            let v: usize = line
                .parse()
                .map_err(|_| parse_err(no, format!("bad vertex {line:?}")))?;
            vertices.insert(v);
        }
        let v_size = v_size.ok_or_else(|| parse_err(1, "missing `# good-set vertices N` line"))?;
        Self::new(v_size, vertices)
    }
}

/// The labelled Cayley graph restricted to `N_r`: vertex `i` is the `i`-th
/// ball element, with an edge `(g, bg)` labelled `b` whenever `bg ∈ N_r`.
pub fn cayley_ball_graph(group: &Group, r: usize, cap: usize) -> Result<LabeledDigraph> {
    let ball = group.ball(r, cap)?;
    let labels = group.generators().iter().map(|b| b.name.clone()).collect();
    let mut graph = LabeledDigraph::new(ball.len(), labels);
    for (i, g) in ball.elements().iter().enumerate() {
        for (j, b) in group.generators().iter().enumerate() {
            if let Some(k) = ball.index_of(&group.mul(&b.element, g)) {
                graph.add_edge(j, i, k)?;
            }
        }
    }
    Ok(graph)
}

/// Vertices of `graph` at which a chart of radius `ball.radius()` exists.
pub fn good_set_from_charts(graph: &LabeledDigraph, ball: &Ball, group: &Group) -> Result<GoodSet> {
    let vertices = (0..graph.vertex_count())
        .filter(|&v| chart_from_graph(graph, v, ball, group).is_ok())
        .collect();
    GoodSet::new(graph.vertex_count(), vertices)
}

/// Maps from a labelled graph: `φ(g)(v) = ψ_v(g)` for `v ∈ V_0` and
/// `φ(g)(v) = v` otherwise. Maps are stored for every `g ∈ N_r`; `F` is the
/// checked set of the result.
pub fn graph_to_maps(
    graph: &LabeledDigraph,
    good: &GoodSet,
    r: usize,
    f: &[GroupElement],
    group: Arc<Group>,
    epsilon: Rational,
    cap: usize,
) -> Result<SoficApproximation> {
    if good.v_size() != graph.vertex_count() {
        return Err(domain(format!(
            "good set is over {} vertices, graph has {}",
            good.v_size(),
            graph.vertex_count()
        )));
    }
    let ball = group.ball(r, cap)?;
    for a in f {
        group.check_contains(a)?;
        for b in f {
            let ab = group.mul(a, b);
            if !ball.contains(&ab) {
                return Err(Error::Precondition(format!(
                    "product {} of F·F lies outside N_{r}",
                    group.label(&ab)
                )));
            }
        }
    }
    let n = graph.vertex_count();
    let mut images: Vec<Vec<usize>> = vec![(0..n).collect(); ball.len()];
    for &v in good.vertices() {
        let chart = chart_from_graph(graph, v, &ball, &group)
            .map_err(|e| Error::Precondition(format!("no chart at vertex {v}: {e}")))?;
        for (i, row) in images.iter_mut().enumerate() {
            row[v] = chart.at(i).expect("total");
        }
    }
    let maps: BTreeMap<GroupElement, MapOnV> = ball
        .elements()
        .iter()
        .cloned()
        .zip(images)
        .map(|(g, im)| Ok((g, MapOnV::new(im)?)))
        .collect::<Result<_>>()?;
    Ok(
        SoficApproximation::new(group, n, f.to_vec(), maps, epsilon)?
            .with_label(format!("graph |V|={n} r={r}")),
    )
}

/// Labelled graph from maps: an edge `(v, φ(b)(v))` labelled `b` for every
/// vertex and generator. `V_0` is the set of `v` where, with
/// `ψ_v(g) = φ(g)(v)`,
/// (A) `ψ_v(bg) = φ(b)(ψ_v(g))` for `g ∈ N_r`, `b ∈ B`, and
/// (C) `ψ_v` is injective on `N_{r+1}`.
/// The returned good set carries the measured `δ`; compare it with the
/// target using [`GoodSet::meets`].
pub fn maps_to_graph(
    approx: &SoficApproximation,
    r: usize,
    cap: usize,
) -> Result<(LabeledDigraph, GoodSet)> {
    let group = approx.group();
    let needed = group.ball(2 * r + 2, cap)?;
    let f: BTreeSet<&GroupElement> = approx.elements().iter().collect();
    if let Some(g) = needed.elements().iter().find(|g| !f.contains(g)) {
        return Err(domain(format!(
            "F must contain N_{}; {} is missing",
            2 * r + 2,
            group.label(g)
        )));
    }
    let n = approx.v_size();
    let gens = group.generators();
    let labels = gens.iter().map(|b| b.name.clone()).collect();
    let mut graph = LabeledDigraph::new(n, labels);
    let phi_b: Vec<&MapOnV> = gens
        .iter()
        .map(|b| approx.map(&b.element).expect("B ⊆ N_1 ⊆ F"))
        .collect();
    for (j, m) in phi_b.iter().enumerate() {
        for v in 0..n {
            graph.add_edge(j, v, m.apply(v))?;
        }
    }

    let outer = group.ball(r + 1, cap)?;
    let psi: Vec<&MapOnV> = outer
        .elements()
        .iter()
        .map(|g| approx.map(g).expect("N_{r+1} ⊆ F"))
        .collect();
    // (A): index pairs (g, bg) with g ∈ N_r
    let mut equations = Vec::new();
    for (i, g) in outer.elements().iter().enumerate() {
        if outer.lengths()[i] > r {
            continue;
        }
        for (j, b) in gens.iter().enumerate() {
            let k = outer
                .index_of(&group.mul(&b.element, g))
                .expect("bg ∈ N_{r+1}");
            equations.push((i, j, k));
        }
    }
    let mut seen = vec![usize::MAX; n];
    let good = (0..n)
        .filter(|&v| {
            let a_holds = equations
                .iter()
                .all(|&(i, j, k)| psi[k].apply(v) == phi_b[j].apply(psi[i].apply(v)));
            a_holds
                && psi.iter().all(|m| {
                    let w = m.apply(v);
                    let fresh = seen[w] != v;
                    seen[w] = v;
                    fresh
                })
        })
        .collect();
    Ok((graph, GoodSet::new(n, good)?))
}

/// `δ / (4|N_{r+1}|² + |N_r|·|B|)`, the largest admissible `ε` for a target
/// `δ` when passing from maps to graphs.
pub fn epsilon_threshold(delta: Rational, n_r1: usize, n_r: usize, b: usize) -> Result<Rational> {
    if delta <= Rational::from_integer(0) || delta > Rational::from_integer(1) {
        return Err(domain(format!(
            "delta {} outside (0,1]",
            rational::render(&delta)
        )));
    }
    let denom = 4 * (n_r1 as i64) * (n_r1 as i64) + (n_r as i64) * (b as i64);
    if denom == 0 {
        return Err(domain("ball sizes must be positive"));
    }
    Ok(delta / Rational::from_integer(denom))
}

/// Upper bound on `|V \ V_0|` from the counting argument:
/// `|N_r|·|B|·max_a·|V| + 4·|N_{r+1}|²·max_abc·|V|`.
pub fn exceptional_vertex_bound(
    report: &DefectReport,
    n_r: usize,
    n_r1: usize,
    b: usize,
) -> Rational {
    let v = Rational::from_integer(report.v_size as i64);
    let a_terms = Rational::from_integer((n_r * b) as i64);
    let c_terms = Rational::from_integer(4 * (n_r1 * n_r1) as i64);
    a_terms * report.max_a * v + c_terms * report.max_abc() * v
}

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::LabeledDigraph;
use crate::group::{Ball, Group, GroupElement};

/// A labelled-graph map `ψ_v: N_r -> V` with `ψ_v(1) = v`. Values are indexed
/// like the elements of the ball it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallChart {
    base: usize,
    radius: usize,
    chart: Vec<Option<usize>>,
}

impl BallChart {
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn values(&self) -> &[Option<usize>] {
        &self.chart
    }

    pub fn is_total(&self) -> bool {
        self.chart.iter().all(Option::is_some)
    }

    /// `ψ_v(g)` for the `i`-th ball element.
    pub fn at(&self, i: usize) -> Option<usize> {
        self.chart.get(i).copied().flatten()
    }

    pub fn get(&self, ball: &Ball, g: &GroupElement) -> Option<usize> {
        ball.index_of(g).and_then(|i| self.at(i))
    }
}

/// First constraint a chart violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChartFailure {
    /// Graph labels do not match the generators of the group.
    LabelMismatch {
        labels: usize,
        generators: usize,
    },
    BaseOutOfRange {
        base: usize,
        vertices: usize,
    },
    /// More than one edge with this label leaves the vertex.
    NonFunctional {
        vertex: usize,
        label: String,
    },
    /// No `label`-edge leaves the image of `element`.
    MissingEdge {
        element: String,
        label: String,
        vertex: usize,
    },
    NotInjective {
        first: String,
        second: String,
        vertex: usize,
    },
    /// The `label`-edge from the image of `element` does not end at the image
    /// of `label·element`.
    EdgeMismatch {
        element: String,
        label: String,
        expected: usize,
        found: usize,
    },
    /// The image is not the `r`-ball around the base vertex.
    NotOntoBall {
        image: usize,
        ball: usize,
    },
}

impl fmt::Display for ChartFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartFailure::LabelMismatch { labels, generators } => {
                write!(
                    f,
                    "graph has {labels} labels but the group has {generators} generators"
                )
            }
            ChartFailure::BaseOutOfRange { base, vertices } => {
                write!(f, "base vertex {base} outside {vertices} vertices")
            }
            ChartFailure::NonFunctional { vertex, label } => {
                write!(f, "vertex {vertex} has several {label}-edges")
            }
            ChartFailure::MissingEdge {
                element,
                label,
                vertex,
            } => {
                write!(f, "no {label}-edge at vertex {vertex} (image of {element})")
            }
            ChartFailure::NotInjective {
                first,
                second,
                vertex,
            } => {
                write!(
                    f,
                    "not injective: {first} and {second} both map to vertex {vertex}"
                )
            }
            ChartFailure::EdgeMismatch {
                element,
                label,
                expected,
                found,
            } => write!(
                f,
                "{label}-edge from image of {element} ends at {found}, expected {expected}"
            ),
            ChartFailure::NotOntoBall { image, ball } => {
                write!(f, "chart image has {image} vertices, graph ball has {ball}")
            }
        }
    }
}

impl std::error::Error for ChartFailure {}

fn successor(
    graph: &LabeledDigraph,
    v: usize,
    label: usize,
) -> Result<Option<usize>, ChartFailure> {
    graph
        .successor(v, label)
        .map_err(|()| ChartFailure::NonFunctional {
            vertex: v,
            label: graph.labels()[label].clone(),
        })
}

/// Builds `ψ_v` on `ball` by following labelled edges from `v` along
/// geodesics, then checks injectivity, that every edge `x -> bx` inside the
/// ball is present, and that the image is the graph ball of the same radius.
/// Label `i` of the graph stands for generator `i` of the group. Edges that
/// leave the ball from its boundary sphere are not constrained.
pub fn chart_from_graph(
    graph: &LabeledDigraph,
    v: usize,
    ball: &Ball,
    group: &Group,
) -> Result<BallChart, ChartFailure> {
    let gens = group.generators();
    if graph.labels().len() != gens.len() {
        return Err(ChartFailure::LabelMismatch {
            labels: graph.labels().len(),
            generators: gens.len(),
        });
    }
    if v >= graph.vertex_count() {
        return Err(ChartFailure::BaseOutOfRange {
            base: v,
            vertices: graph.vertex_count(),
        });
    }
    let elements = ball.elements();
    let lengths = ball.lengths();
    let inverses: Vec<GroupElement> = gens.iter().map(|b| group.inverse(&b.element)).collect();
    let mut chart = vec![None; elements.len()];
    chart[0] = Some(v);
    for (i, x) in elements.iter().enumerate().skip(1) {
        let (j, y) = inverses
            .iter()
            .enumerate()
            .find_map(|(j, binv)| {
                let y = ball.index_of(&group.mul(binv, x))?;
                (lengths[y] + 1 == lengths[i]).then_some((j, y))
            })
            .expect("every ball element has a predecessor");
        let from = chart[y].expect("predecessors come first");
        let w = successor(graph, from, j)?.ok_or_else(|| ChartFailure::MissingEdge {
            element: group.label(&elements[y]),
            label: gens[j].name.clone(),
            vertex: from,
        })?;
        chart[i] = Some(w);
    }

    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (i, w) in chart.iter().enumerate() {
        let w = w.expect("filled above");
        if let Some(&first) = owner.get(&w) {
            return Err(ChartFailure::NotInjective {
                first: group.label(&elements[first]),
                second: group.label(&elements[i]),
                vertex: w,
            });
        }
        owner.insert(w, i);
    }

    for (i, x) in elements.iter().enumerate() {
        let from = chart[i].expect("filled");
        for (j, b) in gens.iter().enumerate() {
            let Some(k) = ball.index_of(&group.mul(&b.element, x)) else {
                continue;
            };
            let expected = chart[k].expect("filled");
            match successor(graph, from, j)? {
                None => {
                    return Err(ChartFailure::MissingEdge {
                        element: group.label(x),
                        label: b.name.clone(),
                        vertex: from,
                    })
                }
                Some(found) if found != expected => {
                    return Err(ChartFailure::EdgeMismatch {
                        element: group.label(x),
                        label: b.name.clone(),
                        expected,
                        found,
                    })
                }
                Some(_) => {}
            }
        }
    }

    let image: BTreeSet<usize> = owner.keys().copied().collect();
    let around = graph.ball_around(v, ball.radius());
    if image != around {
        return Err(ChartFailure::NotOntoBall {
            image: image.len(),
            ball: around.len(),
        });
    }
    Ok(BallChart {
        base: v,
        radius: ball.radius(),
        chart,
    })
}

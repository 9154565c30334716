use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{domain, parse_err, Result};

/// A finite directed graph with edges labelled by generator indices.
/// Graphs built here have at most one outgoing edge per label at each vertex;
/// imported graphs may not, and chart construction rejects those.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDigraph {
    vertex_count: usize,
    labels: Vec<String>,
    edges: Vec<BTreeSet<(usize, usize)>>,
}

impl LabeledDigraph {
    pub fn new(vertex_count: usize, labels: Vec<String>) -> Self {
        let edges = vec![BTreeSet::new(); labels.len()];
        LabeledDigraph {
            vertex_count,
            labels,
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn add_edge(&mut self, label: usize, src: usize, dst: usize) -> Result<()> {
        if label >= self.labels.len() {
            return Err(domain(format!("label index {label} out of range")));
        }
        if src >= self.vertex_count || dst >= self.vertex_count {
            return Err(domain(format!(
                "edge ({src}, {dst}) outside {} vertices",
                self.vertex_count
            )));
        }
        self.edges[label].insert((src, dst));
        Ok(())
    }

    pub fn edges(&self, label: usize) -> &BTreeSet<(usize, usize)> {
        &self.edges[label]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(BTreeSet::len).sum()
    }

    pub fn has_edge(&self, label: usize, src: usize, dst: usize) -> bool {
        self.edges[label].contains(&(src, dst))
    }

    /// Targets of the `label`-edges leaving `v`.
    pub fn successors(&self, v: usize, label: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges[label]
            .range((v, 0)..=(v, usize::MAX))
            .map(|&(_, w)| w)
    }

    /// The unique `label`-successor of `v`; `Err(())` when there are several.
    pub fn successor(&self, v: usize, label: usize) -> std::result::Result<Option<usize>, ()> {
        let mut it = self.successors(v, label);
        let first = it.next();
        if it.next().is_some() {
            return Err(());
        }
        Ok(first)
    }

    pub fn is_functional(&self) -> bool {
        (0..self.labels.len()).all(|l| (0..self.vertex_count).all(|v| self.successor(v, l).is_ok()))
    }

    /// Vertices reachable from `v` by at most `r` edges (any labels).
    pub fn ball_around(&self, v: usize, r: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([v]);
        let mut frontier = vec![v];
        for _ in 0..r {
            let mut next = Vec::new();
            for &u in &frontier {
                for l in 0..self.labels.len() {
                    for w in self.successors(u, l) {
                        if seen.insert(w) {
                            next.push(w);
                        }
                    }
                }
            }
            frontier = next;
        }
        seen
    }

    /// Edge-list text: a `# vertices N` line, then one `label src dst` line
    /// per edge, grouped by label.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# vertices {}\n", self.vertex_count);
        for (l, name) in self.labels.iter().enumerate() {
            for (s, d) in &self.edges[l] {
                let _ = writeln!(out, "{name} {s} {d}");
            }
        }
        out
    }

    /// Parses the edge-list format. Labels must be among `labels`. Without a
    /// `# vertices N` line the vertex count is one more than the largest id.
    pub fn from_edge_list(text: &str, labels: &[String]) -> Result<Self> {
        let mut declared = None;
        let mut raw = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let no = i + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(n) = comment.trim().strip_prefix("vertices") {
                    let n: usize = n
                        .trim()
                        .parse()
                        .map_err(|_| parse_err(no, "bad vertex count"))?;
                    declared = Some(n);
                }
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [label, src, dst] = toks[..] else {
                return Err(parse_err(
                    no,
                    format!("expected `label src dst`, got {line:?}"),
                ));
            };
            let l = labels
                .iter()
                .position(|x| x == label)
                .ok_or_else(|| parse_err(no, format!("unknown label {label:?}")))?;
            let s: usize = src
                .parse()
                .map_err(|_| parse_err(no, format!("bad vertex {src:?}")))?;
            let d: usize = dst
                .parse()
                .map_err(|_| parse_err(no, format!("bad vertex {dst:?}")))?;
            raw.push((no, l, s, d));
        }
        let inferred = raw
            .iter()
            .map(|&(_, _, s, d)| s.max(d) + 1)
            .max()
            .unwrap_or(0);
        let n = declared.unwrap_or(inferred);
        let mut g = LabeledDigraph::new(n, labels.to_vec());
        for (no, l, s, d) in raw {
            g.add_edge(l, s, d)
                .map_err(|e| parse_err(no, e.to_string()))?;
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels() -> Vec<String> {
        vec!["t".into(), "t^-1".into()]
    }

    #[test]
    fn edge_list_round_trip() {
        let mut g = LabeledDigraph::new(4, labels());
        g.add_edge(0, 0, 1).unwrap();
        g.add_edge(1, 1, 0).unwrap();
        let text = g.to_edge_list();
        assert_eq!(text, "# vertices 4\nt 0 1\nt^-1 1 0\n");
        assert_eq!(LabeledDigraph::from_edge_list(&text, &labels()).unwrap(), g);
        let inferred = LabeledDigraph::from_edge_list("t 0 2\n", &labels()).unwrap();
        assert_eq!(inferred.vertex_count(), 3);
    }

    #[test]
    fn malformed_edge_lists() {
        assert!(LabeledDigraph::from_edge_list("t 0\n", &labels()).is_err());
        assert!(LabeledDigraph::from_edge_list("s 0 1\n", &labels()).is_err());
        assert!(LabeledDigraph::from_edge_list("t 0 x\n", &labels()).is_err());
        assert!(LabeledDigraph::from_edge_list("# vertices 2\nt 0 5\n", &labels()).is_err());
    }

    #[test]
    fn functional_and_balls() {
        let mut g = LabeledDigraph::new(3, labels());
        g.add_edge(0, 0, 1).unwrap();
        g.add_edge(0, 1, 2).unwrap();
        assert!(g.is_functional());
        assert_eq!(g.successor(0, 0), Ok(Some(1)));
        assert_eq!(g.successor(2, 0), Ok(None));
        assert_eq!(g.ball_around(0, 1), BTreeSet::from([0, 1]));
        assert_eq!(g.ball_around(0, 5), BTreeSet::from([0, 1, 2]));
        g.add_edge(0, 0, 2).unwrap();
        assert!(!g.is_functional());
        assert_eq!(g.successor(0, 0), Err(()));
        assert!(g.add_edge(2, 0, 0).is_err());
    }
}

//! Sofic approximations: a finite set `V` and maps `φ(g) ∈ Map(V)` for `g`
//! in a finite subset `F` of the group, with exact defect measurements.

mod builders;
mod defect;
mod map;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

pub use builders::{folner_approx, quotient_approx, Window};
pub use defect::{DefectReport, PairDefect};
pub use map::{compose, similarity_fraction, MapOnV};

use crate::error::{domain, parse_err, Result};
use crate::group::{Group, GroupElement};
use crate::rational::{self, Rational};

/// `V`, `F` and `φ`. The maps are stored on a domain containing `F`; builders
/// that can evaluate `φ` anywhere also store every product in `F·F`, so that
/// condition (a) can be checked for all pairs.
#[derive(Debug, Clone)]
pub struct SoficApproximation {
    group: Arc<Group>,
    v_size: usize,
    checked: Vec<GroupElement>,
    maps: BTreeMap<GroupElement, MapOnV>,
    epsilon: Rational,
    label: String,
}

impl SoficApproximation {
    /// `checked` is `F`; the identity is adjoined at the front. Every element
    /// of `F` needs a map; an identity map is supplied if none is given.
    pub fn new(
        group: Arc<Group>,
        v_size: usize,
        checked: Vec<GroupElement>,
        mut maps: BTreeMap<GroupElement, MapOnV>,
        epsilon: Rational,
    ) -> Result<Self> {
        if v_size == 0 {
            return Err(domain("V must be nonempty"));
        }
        if epsilon <= Rational::from_integer(0) || epsilon >= Rational::from_integer(1) {
            return Err(domain(format!(
                "epsilon {} outside (0,1)",
                rational::render(&epsilon)
            )));
        }
        let id = group.identity();
        maps.entry(id.clone())
            .or_insert_with(|| MapOnV::identity(v_size));
        let mut seen = BTreeSet::from([id.clone()]);
        let mut f = vec![id];
        for g in checked {
            group.check_contains(&g)?;
            if seen.insert(g.clone()) {
                f.push(g);
            }
        }
        for (g, m) in &maps {
            group.check_contains(g)?;
            if m.size() != v_size {
                return Err(domain(format!(
                    "map for {g} acts on {} points, expected {v_size}",
                    m.size()
                )));
            }
        }
        if let Some(g) = f.iter().find(|g| !maps.contains_key(g)) {
            return Err(domain(format!("no map given for {g}")));
        }
        Ok(SoficApproximation {
            group,
            v_size,
            checked: f,
            maps,
            epsilon,
            label: String::new(),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn v_size(&self) -> usize {
        self.v_size
    }

    /// `F`, identity first.
    pub fn elements(&self) -> &[GroupElement] {
        &self.checked
    }

    /// Every element with a stored map.
    pub fn domain(&self) -> impl Iterator<Item = &GroupElement> {
        self.maps.keys()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.maps.contains_key(g)
    }

    pub fn map(&self, g: &GroupElement) -> Option<&MapOnV> {
        self.maps.get(g)
    }

    pub fn epsilon(&self) -> Rational {
        self.epsilon
    }

    pub fn report(&self) -> DefectReport {
        DefectReport::measure(self)
    }

    /// Disjoint union of `m` copies of `V` with the same action on each.
    pub fn replicate(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(domain("need at least one copy"));
        }
        let n = self.v_size;
        let maps = self
            .maps
            .iter()
            .map(|(g, phi)| {
                let images = (0..m * n).map(|v| (v / n) * n + phi.apply(v % n)).collect();
                Ok((g.clone(), MapOnV::new(images)?))
            })
            .collect::<Result<_>>()?;
        Ok(SoficApproximation {
            group: self.group.clone(),
            v_size: m * n,
            checked: self.checked.clone(),
            maps,
            epsilon: self.epsilon,
            label: format!("{}x{m}", self.label),
        })
    }

    /// Text form: a header, `F`, then one `map` line per stored element.
    ///
    /// ```text
    /// sofic-approximation
    /// vertices 4
    /// epsilon 1/8
    /// checked (0) (1) (-1)
    /// map (1) 1 2 3 3
    /// ```
    pub fn to_text(&self) -> String {
        let mut out = String::from("sofic-approximation\n");
        let _ = writeln!(out, "vertices {}", self.v_size);
        let _ = writeln!(out, "epsilon {}", rational::render(&self.epsilon));
        if !self.label.is_empty() {
            let _ = writeln!(out, "label {}", self.label);
        }
        let f: Vec<String> = self.checked.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "checked {}", f.join(" "));
        for (g, m) in &self.maps {
            let images: Vec<String> = m.images().iter().map(usize::to_string).collect();
            let _ = writeln!(out, "map {g} {}", images.join(" "));
        }
        out
    }

    pub fn from_text(text: &str, group: Arc<Group>) -> Result<Self> {
        let mut v_size = None;
        let mut epsilon = None;
        let mut label = String::new();
        let mut checked = Vec::new();
        let mut maps = BTreeMap::new();
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        match lines.next() {
            Some((_, "sofic-approximation")) => {}
            _ => return Err(parse_err(1, "missing `sofic-approximation` header")),
        }
        for (no, line) in lines {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            match key {
                "vertices" => {
                    v_size = Some(
                        rest.trim()
                            .parse()
                            .map_err(|_| parse_err(no, "bad vertex count"))?,
                    )
                }
                "epsilon" => {
                    epsilon =
                        Some(rational::parse(rest).ok_or_else(|| parse_err(no, "bad epsilon"))?)
                }
                "label" => label = rest.to_string(),
                "checked" => {
                    checked = rest
                        .split_whitespace()
                        .map(|t| {
                            parse_element(t)
                                .ok_or_else(|| parse_err(no, format!("bad element {t:?}")))
                        })
                        .collect::<Result<_>>()?
                }
                "map" => {
                    let mut toks = rest.split_whitespace();
                    let g = toks
                        .next()
                        .and_then(parse_element)
                        .ok_or_else(|| parse_err(no, "bad map element"))?;
                    let images = toks
                        .map(|t| {
                            t.parse()
                                .map_err(|_| parse_err(no, format!("bad image {t:?}")))
                        })
                        .collect::<Result<Vec<usize>>>()?;
                    let m = MapOnV::new(images).map_err(|e| parse_err(no, e.to_string()))?;
                    maps.insert(g, m);
                }
                other => return Err(parse_err(no, format!("unknown key {other:?}"))),
            }
        }
        let v_size = v_size.ok_or_else(|| parse_err(1, "missing `vertices`"))?;
        let epsilon = epsilon.ok_or_else(|| parse_err(1, "missing `epsilon`"))?;
        Ok(Self::new(group, v_size, checked, maps, epsilon)?.with_label(label))
    }
}

/// Parses the `Display` form of a group element: `#i` or `(a,b,..)`.
pub fn parse_element(s: &str) -> Option<GroupElement> {
    if let Some(i) = s.strip_prefix('#') {
        return i.parse().ok().map(GroupElement::Finite);
    }
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    inner
        .split(',')
        .map(|c| c.trim().parse().ok())
        .collect::<Option<Vec<i64>>>()
        .map(GroupElement::Vector)
}

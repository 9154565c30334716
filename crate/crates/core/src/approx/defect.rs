use std::fmt::Write as _;

use super::SoficApproximation;
use crate::group::{Group, GroupElement};
use crate::rational::{fraction, render, Rational};

/// Condition (a) for one ordered pair `(e, f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDefect {
    pub left: GroupElement,
    pub right: GroupElement,
    pub product: GroupElement,
    /// Fraction of `v` with `φ(e)(φ(f)(v)) != φ(ef)(v)`; `None` when no map
    /// is stored for `ef`.
    pub disagreement: Option<Rational>,
}

/// Exact defects of a sofic approximation for conditions (a)-(c).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectReport {
    pub v_size: usize,
    /// All pairs of `F x F`, row-major in the order of `F`.
    pub pairs: Vec<PairDefect>,
    /// Disagreement fraction of `φ(1)` with the identity map.
    pub defect_b: Rational,
    /// Fixed-point (agreement) fraction of `φ(e)` for `e ∈ F \ {1}`.
    pub agreement_c: Vec<(GroupElement, Rational)>,
    /// `1 - |im φ(e)| / |V|` for every `e ∈ F`.
    pub non_injectivity: Vec<(GroupElement, Rational)>,
    /// Maximum over covered pairs only.
    pub max_a: Rational,
    pub max_c: Rational,
}

impl DefectReport {
    pub(super) fn measure(approx: &SoficApproximation) -> Self {
        let group = approx.group();
        let n = approx.v_size();
        let f = approx.elements();
        let zero = Rational::from_integer(0);
        let mut pairs = Vec::with_capacity(f.len() * f.len());
        for e in f {
            let phi_e = approx.map(e).expect("F is covered");
            for g in f {
                let phi_g = approx.map(g).expect("F is covered");
                let product = group.mul(e, g);
                let disagreement = approx.map(&product).map(|phi_eg| {
                    let bad = (0..n)
                        .filter(|&v| phi_e.apply(phi_g.apply(v)) != phi_eg.apply(v))
                        .count();
                    fraction(bad, n)
                });
                pairs.push(PairDefect {
                    left: e.clone(),
                    right: g.clone(),
                    product,
                    disagreement,
                });
            }
        }
        let id = group.identity();
        let phi_1 = approx.map(&id).expect("identity adjoined");
        let defect_b = fraction(n - phi_1.fixed_points(), n);
        let agreement_c: Vec<(GroupElement, Rational)> = f
            .iter()
            .filter(|e| **e != id)
            .map(|e| {
                (
                    e.clone(),
                    fraction(approx.map(e).expect("covered").fixed_points(), n),
                )
            })
            .collect();
        let non_injectivity = f
            .iter()
            .map(|e| {
                let m = approx.map(e).expect("covered");
                (e.clone(), fraction(n - m.image_size(), n))
            })
            .collect();
        let max_a = pairs
            .iter()
            .filter_map(|p| p.disagreement)
            .max()
            .unwrap_or(zero);
        let max_c = agreement_c.iter().map(|(_, r)| *r).max().unwrap_or(zero);
        DefectReport {
            v_size: n,
            pairs,
            defect_b,
            agreement_c,
            non_injectivity,
            max_a,
            max_c,
        }
    }

    pub fn defect_a(&self, e: &GroupElement, f: &GroupElement) -> Option<Rational> {
        self.pairs
            .iter()
            .find(|p| &p.left == e && &p.right == f)
            .and_then(|p| p.disagreement)
    }

    pub fn agreement(&self, e: &GroupElement) -> Option<Rational> {
        self.agreement_c
            .iter()
            .find(|(g, _)| g == e)
            .map(|(_, r)| *r)
    }

    pub fn non_injectivity_of(&self, e: &GroupElement) -> Option<Rational> {
        self.non_injectivity
            .iter()
            .find(|(g, _)| g == e)
            .map(|(_, r)| *r)
    }

    /// Pairs whose product has no stored map; excluded from `max_a`.
    pub fn uncovered_pairs(&self) -> impl Iterator<Item = &PairDefect> {
        self.pairs.iter().filter(|p| p.disagreement.is_none())
    }

    /// `max(max_a, defect_b, max_c)`.
    pub fn max_abc(&self) -> Rational {
        self.max_a.max(self.defect_b).max(self.max_c)
    }

    /// Conditions (a)-(c) at level `epsilon`: (a) and (b) as `≤ ε`
    /// similarity, (c) as agreement strictly below `ε`.
    pub fn satisfies(&self, epsilon: Rational) -> bool {
        self.max_a <= epsilon && self.defect_b <= epsilon && self.max_c < epsilon
    }

    pub const CSV_HEADER: &'static str = "level,vertices,max_a,defect_b,max_agreement_c";

    pub fn csv_row(&self, level: &str) -> String {
        format!(
            "{level},{},{},{},{}",
            self.v_size,
            render(&self.max_a),
            render(&self.defect_b),
            render(&self.max_c)
        )
    }

    /// Per-pair table plus the (b) and (c) values.
    pub fn to_text(&self, group: &Group) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "vertices {}", self.v_size);
        let _ = writeln!(out, "max_a {}", render(&self.max_a));
        let _ = writeln!(out, "defect_b {}", render(&self.defect_b));
        let _ = writeln!(out, "max_agreement_c {}", render(&self.max_c));
        let _ = writeln!(out, "\n# condition (a): e f ef disagreement");
        for p in &self.pairs {
            let value = p
                .disagreement
                .map_or("uncovered".to_string(), |r| render(&r));
            let _ = writeln!(
                out,
                "{} {} {} {}",
                group.label(&p.left),
                group.label(&p.right),
                group.label(&p.product),
                value
            );
        }
        let _ = writeln!(out, "\n# condition (c): e agreement");
        for (e, r) in &self.agreement_c {
            let _ = writeln!(out, "{} {}", group.label(e), render(r));
        }
        out
    }
}

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{MapOnV, SoficApproximation};
use crate::error::{domain, Result};
use crate::group::{Group, GroupElement, GroupKind, Homomorphism};
use crate::rational::Rational;

/// The finite set a Følner approximation acts on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Window {
    /// Box `Π [lower_i, lower_i + sides_i)` in `Z^d`.
    Box { lower: Vec<i64>, sides: Vec<usize> },
    /// All of a finite group.
    WholeGroup,
}

impl Window {
    /// `[0, n)^d`.
    pub fn cube(d: usize, n: usize) -> Self {
        Window::Box {
            lower: vec![0; d],
            sides: vec![n; d],
        }
    }
}

/// `F ∪ F·F` with the identity, in canonical order.
fn products_domain(group: &Group, f: &[GroupElement]) -> BTreeSet<GroupElement> {
    let mut dom: BTreeSet<GroupElement> = f.iter().cloned().collect();
    dom.insert(group.identity());
    for a in f {
        for b in f {
            dom.insert(group.mul(a, b));
        }
    }
    dom
}

struct BoxIndex<'a> {
    lower: &'a [i64],
    sides: &'a [usize],
}

impl BoxIndex<'_> {
    fn len(&self) -> usize {
        self.sides.iter().product()
    }

    fn point(&self, mut idx: usize) -> Vec<i64> {
        let mut p = vec![0; self.sides.len()];
        for i in (0..self.sides.len()).rev() {
            p[i] = self.lower[i] + (idx % self.sides[i]) as i64;
            idx /= self.sides[i];
        }
        p
    }

    fn index(&self, p: &[i64]) -> Option<usize> {
        let mut idx = 0usize;
        for ((&c, &lo), &side) in p.iter().zip(self.lower).zip(self.sides) {
            let off = c - lo;
            if off < 0 || off as usize >= side {
                return None;
            }
            idx = idx * side + off as usize;
        }
        Some(idx)
    }
}

/// Følner-set approximation: `φ(g)(v) = g·v` when `g·v` stays in the window,
/// otherwise `v`. Boxes require `Z^d`; the whole-group window requires a
/// finite group and gives the left regular action.
pub fn folner_approx(
    group: Arc<Group>,
    window: &Window,
    f: &[GroupElement],
    epsilon: Rational,
) -> Result<SoficApproximation> {
    for g in f {
        group.check_contains(g)?;
    }
    let dom = products_domain(&group, f);
    let (v_size, maps, label) = match (window, group.kind()) {
        (Window::Box { lower, sides }, GroupKind::FreeAbelian { rank }) => {
            if lower.len() != *rank || sides.len() != *rank {
                return Err(domain(format!("box dimension does not match Z^{rank}")));
            }
            let bx = BoxIndex { lower, sides };
            let n = bx.len();
            if n == 0 {
                return Err(domain("empty window"));
            }
            let points: Vec<Vec<i64>> = (0..n).map(|i| bx.point(i)).collect();
            let mut maps = BTreeMap::new();
            for g in &dom {
                let GroupElement::Vector(shift) = g else {
                    unreachable!("checked by contains")
                };
                let images = points
                    .iter()
                    .enumerate()
                    .map(|(v, p)| {
                        let q: Vec<i64> = p.iter().zip(shift).map(|(a, b)| a + b).collect();
                        bx.index(&q).unwrap_or(v)
                    })
                    .collect();
                maps.insert(g.clone(), MapOnV::new(images)?);
            }
            let sides: Vec<String> = sides.iter().map(usize::to_string).collect();
            (n, maps, format!("box {}", sides.join("x")))
        }
        (Window::WholeGroup, _) if group.is_finite() => {
            let elements = group
                .elements()
                .ok_or_else(|| domain("group too large to enumerate"))?;
            let n = elements.len();
            let mut maps = BTreeMap::new();
            for g in &dom {
                let images = elements
                    .iter()
                    .map(|v| group.index_of(&group.mul(g, v)).expect("closed"))
                    .collect();
                maps.insert(g.clone(), MapOnV::new(images)?);
            }
            (n, maps, format!("regular |G|={n}"))
        }
        (Window::Box { .. }, _) => return Err(domain("box windows need a free abelian group")),
        (Window::WholeGroup, _) => return Err(domain("whole-group window needs a finite group")),
    };
    Ok(SoficApproximation::new(group, v_size, f.to_vec(), maps, epsilon)?.with_label(label))
}

/// Approximation through a finite quotient `q: G -> Q` acting on itself:
/// `V = Q`, `φ(g)(v) = q(g)·v`.
pub fn quotient_approx(
    hom: &Homomorphism,
    f: &[GroupElement],
    epsilon: Rational,
) -> Result<SoficApproximation> {
    let source = hom.source().clone();
    let target = hom.target();
    let elements = target
        .elements()
        .ok_or_else(|| domain("quotient must be finite"))?;
    let n = elements.len();
    for g in f {
        source.check_contains(g)?;
    }
    let mut maps = BTreeMap::new();
    for g in products_domain(&source, f) {
        let q = hom.apply(&g)?;
        let images = elements
            .iter()
            .map(|v| target.index_of(&target.mul(&q, v)).expect("closed"))
            .collect();
        maps.insert(g, MapOnV::new(images)?);
    }
    Ok(
        SoficApproximation::new(source, n, f.to_vec(), maps, epsilon)?
            .with_label(format!("quotient |Q|={n}")),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_CAP;

    fn z(v: i64) -> GroupElement {
        GroupElement::Vector(vec![v])
    }

    fn eps() -> Rational {
        Rational::new(1, 8)
    }

    fn zero() -> Rational {
        Rational::from_integer(0)
    }

    #[test]
    fn integer_box_shift() {
        let g = Arc::new(Group::free_abelian(1));
        let n = 6;
        let a = folner_approx(g, &Window::cube(1, n), &[z(1), z(-1)], eps()).unwrap();
        assert_eq!(a.map(&z(1)).unwrap().images(), &[1, 2, 3, 4, 5, 5]);
        assert_eq!(a.map(&z(-1)).unwrap().images(), &[0, 0, 1, 2, 3, 4]);
        assert_eq!(a.elements(), &[z(0), z(1), z(-1)]);
        // products are stored, so (+1,+1) is covered
        assert!(a.contains(&z(2)));
    }

    #[test]
    fn integer_box_defects() {
        for n in [4usize, 8, 16, 33] {
            let g = Arc::new(Group::free_abelian(1));
            let a = folner_approx(g, &Window::cube(1, n), &[z(1), z(-1)], eps()).unwrap();
            let r = a.report();
            // single disagreement at v = n - 2
            assert_eq!(r.defect_a(&z(1), &z(1)), Some(Rational::new(1, n as i64)));
            assert_eq!(r.defect_b, zero());
            assert_eq!(r.max_a, Rational::new(1, n as i64));
            assert_eq!(r.uncovered_pairs().count(), 0);
            // +1 fixes only the top point
            assert_eq!(r.agreement(&z(1)), Some(Rational::new(1, n as i64)));
        }
    }

    #[test]
    fn z2_box_boundary_count() {
        let g = Arc::new(Group::free_abelian(2));
        let f = g.ball(1, DEFAULT_ELEMENT_CAP).unwrap().elements().to_vec();
        for n in [8usize, 16] {
            let a = folner_approx(g.clone(), &Window::cube(2, n), &f, eps()).unwrap();
            let r = a.report();
            // brute force over coordinates, independent of the stored maps
            let inside = |x: i64, y: i64| (0..n as i64).contains(&x) && (0..n as i64).contains(&y);
            let step = |p: (i64, i64), s: (i64, i64)| {
                let q = (p.0 + s.0, p.1 + s.1);
                if inside(q.0, q.1) {
                    q
                } else {
                    p
                }
            };
            let vec2 = |e: &GroupElement| match e {
                GroupElement::Vector(v) => (v[0], v[1]),
                _ => unreachable!(),
            };
            let mut worst = 0usize;
            for e in &f {
                for h in &f {
                    let (se, sh) = (vec2(e), vec2(h));
                    let seh = (se.0 + sh.0, se.1 + sh.1);
                    let mut bad = 0;
                    for x in 0..n as i64 {
                        for y in 0..n as i64 {
                            if step(step((x, y), sh), se) != step((x, y), seh) {
                                bad += 1;
                            }
                        }
                    }
                    worst = worst.max(bad);
                    assert_eq!(
                        a.report().defect_a(e, h),
                        Some(Rational::new(bad as i64, (n * n) as i64))
                    );
                }
            }
            assert_eq!(worst, 2 * (n - 1));
            assert_eq!(r.max_a, Rational::new(2 * (n as i64 - 1), (n * n) as i64));
            assert!(r.max_a <= Rational::new(2, n as i64));
        }
    }

    #[test]
    fn whole_finite_group_is_exact() {
        let s3 = Arc::new(
            Group::from_permutations(&[("a".into(), vec![1, 0, 2]), ("b".into(), vec![1, 2, 0])])
                .unwrap(),
        );
        let f = s3.elements().unwrap();
        let a = folner_approx(s3, &Window::WholeGroup, &f, eps()).unwrap();
        let r = a.report();
        assert_eq!(r.max_a, zero());
        assert_eq!(r.defect_b, zero());
        assert_eq!(r.max_c, zero());
        assert!(r.satisfies(eps()));
    }

    #[test]
    fn window_errors() {
        let zz = Arc::new(Group::free_abelian(1));
        assert!(folner_approx(zz.clone(), &Window::cube(1, 0), &[], eps()).is_err());
        assert!(folner_approx(zz.clone(), &Window::WholeGroup, &[], eps()).is_err());
        assert!(folner_approx(zz, &Window::cube(2, 3), &[], eps()).is_err());
        let c3 = Arc::new(Group::cyclic(3).unwrap());
        assert!(folner_approx(c3, &Window::cube(1, 3), &[], eps()).is_err());
    }

    #[test]
    fn quotient_of_integers() {
        let zz = Arc::new(Group::free_abelian(1));
        let n = 7;
        let hom = Homomorphism::reduction(zz, &[n]).unwrap();
        let f = vec![z(1), z(-1), z(2), z(n as i64)];
        let a = quotient_approx(&hom, &f, eps()).unwrap();
        assert_eq!(a.map(&z(1)).unwrap().images(), &[1, 2, 3, 4, 5, 6, 0]);
        let r = a.report();
        assert!(r.pairs.iter().all(|p| p.disagreement == Some(zero())));
        assert_eq!(r.defect_b, zero());
        assert_eq!(r.agreement(&z(n as i64)), Some(Rational::from_integer(1)));
        assert_eq!(r.agreement(&z(1)), Some(zero()));
        assert!(!r.satisfies(eps()), "kernel element violates (c)");
    }
}

use std::collections::HashSet;
use std::fmt::Write as _;

use super::{represent, Linearization};
use crate::approx::{MapOnV, SoficApproximation};
use crate::error::{domain, Result};
use crate::group::{GroupElement, GroupRingElement};
use crate::rational::{fraction, render, Rational};

fn maps_for<'a>(approx: &'a SoficApproximation, s: &[GroupElement]) -> Result<Vec<&'a MapOnV>> {
    s.iter()
        .map(|g| {
            approx
                .map(g)
                .ok_or_else(|| domain(format!("no map for {}", approx.group().label(g))))
        })
        .collect()
}

/// Images `φ(s)(p)` for `s ∈ S`, or `None` if two of them coincide.
fn images_at(maps: &[&MapOnV], p: usize) -> Option<Vec<usize>> {
    let imgs: Vec<usize> = maps.iter().map(|m| m.apply(p)).collect();
    let distinct: HashSet<usize> = imgs.iter().copied().collect();
    (distinct.len() == imgs.len()).then_some(imgs)
}

/// Greedy maximal `X ⊆ V` such that the points `φ(s)(p)`, `p ∈ X`, `s ∈ S`
/// are pairwise distinct. Vertices are scanned in increasing order; a vertex
/// where two elements of `S` agree can never be added.
pub fn separated_set(approx: &SoficApproximation, s: &[GroupElement]) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Err(domain("S must be nonempty"));
    }
    let maps = maps_for(approx, s)?;
    let mut used = vec![false; approx.v_size()];
    let mut x = Vec::new();
    for p in 0..approx.v_size() {
        let Some(imgs) = images_at(&maps, p) else {
            continue;
        };
        if imgs.iter().all(|&w| !used[w]) {
            imgs.iter().for_each(|&w| used[w] = true);
            x.push(p);
        }
    }
    Ok(x)
}

/// Whether all `φ(s)(p)` for `p ∈ x`, `s ∈ S` are distinct.
pub fn is_separated(approx: &SoficApproximation, s: &[GroupElement], x: &[usize]) -> Result<bool> {
    let maps = maps_for(approx, s)?;
    let mut seen = HashSet::new();
    Ok(x.iter()
        .all(|&p| maps.iter().all(|m| seen.insert(m.apply(p)))))
}

/// Outcome of the separated-set argument for one element at one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityRecord {
    pub v_size: usize,
    pub support_size: usize,
    pub x_size: usize,
    pub rank: usize,
    /// `max_s (1 - |im φ(s)|/|V|)`.
    pub max_non_injectivity: Rational,
    /// Fraction of vertices where two elements of `S` agree.
    pub degenerate: Rational,
    /// `max_non_injectivity + degenerate / |S|`.
    pub epsilon_meas: Rational,
    /// `(1 - ε_meas·|S|) / |S|²`.
    pub bound: Rational,
    /// The vectors `e_{φ(s)(q)}`, `q ∈ X`, are distinct basis vectors.
    pub images_distinct: bool,
}

impl InjectivityRecord {
    pub fn ratio(&self) -> Rational {
        fraction(self.x_size, self.v_size)
    }

    pub fn bound_holds(&self) -> bool {
        self.ratio() >= self.bound
    }

    pub fn rank_holds(&self) -> bool {
        self.rank >= self.x_size
    }

    pub fn holds(&self) -> bool {
        self.images_distinct && self.bound_holds() && self.rank_holds()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "vertices {}", self.v_size);
        let _ = writeln!(out, "support {}", self.support_size);
        let _ = writeln!(out, "separated {}", self.x_size);
        let _ = writeln!(out, "rank {}", self.rank);
        let _ = writeln!(out, "epsilon_meas {}", render(&self.epsilon_meas));
        let _ = writeln!(out, "ratio {}", render(&self.ratio()));
        let _ = writeln!(out, "bound {}", render(&self.bound));
        let _ = writeln!(out, "holds {}", self.holds());
        out
    }
}

/// Runs the separated-set argument for `a`: with `S = supp(a)` and `X` the
/// greedy separated set, the columns `T(a) e_q`, `q ∈ X`, have disjoint
/// nonzero supports, so `rank T(a) ≥ |X|`. Every vertex outside `X` is
/// degenerate or sends some `s` into the `|S||X|` used points, which gives
/// `|X| ≥ (1 - ε_meas·|S|)/|S|² · |V|`.
pub fn injectivity_bound_check(
    a: &GroupRingElement,
    approx: &SoficApproximation,
    lin: &Linearization,
) -> Result<InjectivityRecord> {
    if a.is_zero() {
        return Err(domain("element must be nonzero"));
    }
    if lin.v_size() != approx.v_size() {
        return Err(domain("linearization belongs to a different approximation"));
    }
    let s = a.support();
    let x = separated_set(approx, &s)?;
    let maps = maps_for(approx, &s)?;
    let n = approx.v_size();
    let max_non_injectivity = maps
        .iter()
        .map(|m| fraction(n - m.image_size(), n))
        .max()
        .expect("S nonempty");
    let degenerate_count = (0..n).filter(|&p| images_at(&maps, p).is_none()).count();
    let degenerate = fraction(degenerate_count, n);
    let k = Rational::from_integer(s.len() as i64);
    let epsilon_meas = max_non_injectivity + degenerate / k;
    let bound = (Rational::from_integer(1) - epsilon_meas * k) / (k * k);
    let rank = represent(a, lin)?.rank();
    Ok(InjectivityRecord {
        v_size: n,
        support_size: s.len(),
        x_size: x.len(),
        rank,
        max_non_injectivity,
        degenerate,
        epsilon_meas,
        bound,
        images_distinct: is_separated(approx, &s, &x)?,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;
    use std::sync::Arc;

    use super::*;
    use crate::approx::{folner_approx, quotient_approx, Window};
    use crate::group::{Group, Homomorphism};
    use crate::rank::linearize;

    fn z(v: i64) -> GroupElement {
        GroupElement::Vector(vec![v])
    }

    fn eps() -> Rational {
        Rational::new(1, 4)
    }

    fn cycle(n: u64, f: &[GroupElement]) -> SoficApproximation {
        let zz = Arc::new(Group::free_abelian(1));
        let hom = Homomorphism::reduction(zz, &[n]).unwrap();
        quotient_approx(&hom, f, eps()).unwrap()
    }

    /// Maximality by brute force: no outside vertex can be added.
    fn is_maximal(approx: &SoficApproximation, s: &[GroupElement], x: &[usize]) -> bool {
        (0..approx.v_size()).filter(|p| !x.contains(p)).all(|p| {
            let mut y = x.to_vec();
            y.push(p);
            !is_separated(approx, s, &y).unwrap()
        })
    }

    #[test]
    fn identity_support_takes_everything() {
        let a = cycle(7, &[z(1)]);
        assert_eq!(
            separated_set(&a, &[z(0)]).unwrap(),
            (0..7).collect::<Vec<_>>()
        );
        assert!(separated_set(&a, &[]).is_err());
    }

    #[test]
    fn exact_cycle_picks_every_other_vertex() {
        for n in [8u64, 16] {
            let a = cycle(n, &[z(1)]);
            let s = [z(0), z(1)];
            let x = separated_set(&a, &s).unwrap();
            // greedy by hand: p is taken iff p and p+1 are both unused
            let mut used = vec![false; n as usize];
            let mut want = Vec::new();
            for p in 0..n as usize {
                let q = (p + 1) % n as usize;
                if !used[p] && !used[q] {
                    used[p] = true;
                    used[q] = true;
                    want.push(p);
                }
            }
            assert_eq!(x, want);
            assert_eq!(x, (0..n as usize).step_by(2).collect::<Vec<_>>());
            assert!(4 * x.len() >= n as usize);
            assert!(is_maximal(&a, &s, &x));
        }
    }

    #[test]
    fn constant_maps_leave_nothing() {
        let g = Arc::new(Group::free_abelian(1));
        let c = MapOnV::constant(5, 2).unwrap();
        let maps = BTreeMap::from([(z(0), c.clone()), (z(1), c)]);
        let a = SoficApproximation::new(g, 5, vec![z(1)], maps, eps()).unwrap();
        assert!(separated_set(&a, &[z(0), z(1)]).unwrap().is_empty());
    }

    #[test]
    fn two_point_case() {
        let c2 = Arc::new(Group::cyclic(2).unwrap());
        let g = c2.parse_word("t").unwrap();
        let level = folner_approx(c2.clone(), &Window::WholeGroup, &[g.clone()], eps()).unwrap();
        let lin = linearize(&level, 3).unwrap();
        let a = GroupRingElement::from_terms(3, [(c2.identity(), 2), (g, 2)]).unwrap();
        let r = injectivity_bound_check(&a, &level, &lin).unwrap();
        assert_eq!((r.x_size, r.rank), (1, 1));
        assert_eq!(r.ratio(), Rational::new(1, 2));
        assert_eq!(r.bound, Rational::new(1, 4));
        assert!(r.holds());
        let zero = GroupRingElement::zero(3).unwrap();
        assert!(injectivity_bound_check(&zero, &level, &lin).is_err());
    }

    #[test]
    fn monomial_on_quotient_is_full() {
        let a = cycle(9, &[z(1), z(3)]);
        let lin = linearize(&a, 2).unwrap();
        let x = GroupRingElement::monomial(2, z(3), 1).unwrap();
        let r = injectivity_bound_check(&x, &a, &lin).unwrap();
        assert_eq!((r.x_size, r.rank, r.v_size), (9, 9, 9));
        assert_eq!(r.epsilon_meas, Rational::from_integer(0));
    }

    #[test]
    fn one_plus_t_on_a_box() {
        let zz = Arc::new(Group::free_abelian(1));
        let n = 16;
        let a = folner_approx(zz, &Window::cube(1, n), &[z(1)], eps()).unwrap();
        let lin = linearize(&a, 2).unwrap();
        let x = GroupRingElement::from_terms(2, [(z(0), 1), (z(1), 1)]).unwrap();
        let r = injectivity_bound_check(&x, &a, &lin).unwrap();
        assert_eq!(r.rank, n - 1);
        // the top point is degenerate and +1 misses vertex 0
        assert_eq!(r.degenerate, Rational::new(1, 16));
        assert_eq!(r.max_non_injectivity, Rational::new(1, 16));
        assert_eq!(r.x_size, 8);
        assert!(r.holds());
        assert!(is_maximal(
            &a,
            &[z(0), z(1)],
            &separated_set(&a, &[z(0), z(1)]).unwrap()
        ));
    }
}

//! Linearized sofic approximations and the normalized rank they induce on
//! group-ring elements at a finite level.

mod axioms;
mod finiteness;
mod separated;
mod sequence;

use std::collections::BTreeMap;

pub use axioms::{pseudo_rank_axioms_check, regularity_check, AxiomsReport, RegularityReport};
pub use finiteness::{direct_finiteness_check, FinitenessLevel, FinitenessVerdict};
pub use separated::{injectivity_bound_check, is_separated, separated_set, InjectivityRecord};
pub use sequence::{pseudo_rank_sequence, RankLevel, RankSequence};

use crate::approx::{MapOnV, SoficApproximation};
use crate::error::{domain, Result};
use crate::group::{Group, GroupElement, GroupRingElement};
use crate::linalg::{field, FpMatrix};
use crate::rational::{fraction, Rational};

/// The maps of a sofic approximation viewed as linear maps of GF(p)^V.
/// `M_g` sends the basis vector `e_v` to `e_{φ(g)(v)}`, so each matrix is a
/// 0/1 matrix with exactly one 1 per column. Matrices are kept in this
/// column-map form and only expanded on request.
#[derive(Debug, Clone)]
pub struct Linearization {
    p: u32,
    v_size: usize,
    label: String,
    columns: BTreeMap<GroupElement, MapOnV>,
}

pub fn linearize(approx: &SoficApproximation, p: u32) -> Result<Linearization> {
    field::check_prime(p)?;
    let columns = approx
        .domain()
        .map(|g| (g.clone(), approx.map(g).expect("in domain").clone()))
        .collect();
    Ok(Linearization {
        p,
        v_size: approx.v_size(),
        label: approx.label().to_string(),
        columns,
    })
}

impl Linearization {
    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn v_size(&self) -> usize {
        self.v_size
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.columns.contains_key(g)
    }

    pub fn column_map(&self, g: &GroupElement) -> Option<&MapOnV> {
        self.columns.get(g)
    }

    /// Dense `M_g`.
    pub fn matrix(&self, g: &GroupElement) -> Option<FpMatrix> {
        let m = self.columns.get(g)?;
        let mut out = FpMatrix::zeros(self.p, self.v_size, self.v_size).expect("prime checked");
        for v in 0..self.v_size {
            out.set(m.apply(v), v, 1);
        }
        Some(out)
    }

    fn missing<'a>(&self, elements: impl Iterator<Item = &'a GroupElement>) -> Vec<String> {
        elements
            .filter(|g| !self.contains(g))
            .map(ToString::to_string)
            .collect()
    }
}

/// `T(a) = Σ_s a(s)·M_s`.
pub fn represent(a: &GroupRingElement, lin: &Linearization) -> Result<FpMatrix> {
    if a.prime() != lin.p {
        return Err(domain(format!(
            "element over GF({}) but linearization over GF({})",
            a.prime(),
            lin.p
        )));
    }
    let support = a.support();
    let missing = lin.missing(support.iter());
    if !missing.is_empty() {
        return Err(domain(format!(
            "support not covered by the approximation: {}",
            missing.join(", ")
        )));
    }
    let mut out = FpMatrix::zeros(lin.p, lin.v_size, lin.v_size)?;
    for (s, k) in a.terms() {
        let m = &lin.columns[s];
        for v in 0..lin.v_size {
            out.add_at(m.apply(v), v, k);
        }
    }
    Ok(out)
}

/// `rank(M) / n` for a square `n x n` matrix; `0` for the empty matrix.
pub fn normalized_rank(m: &FpMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(domain(format!(
            "normalized rank of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    if m.rows() == 0 {
        return Ok(Rational::from_integer(0));
    }
    Ok(fraction(m.rank(), m.rows()))
}

/// `N(M_g M_h - M_{gh})`. Since `M_g M_h` is the column map of
/// `φ(g) ∘ φ(h)`, the difference has column `e_{φ(g)φ(h)(v)} - e_{φ(gh)(v)}`
/// at `v`, and only the columns where the two maps disagree are nonzero.
/// The rank is taken over those columns.
pub fn hom_defect(
    g: &GroupElement,
    h: &GroupElement,
    group: &Group,
    lin: &Linearization,
) -> Result<Rational> {
    let gh = group.mul(g, h);
    let missing = lin.missing([g, h, &gh].into_iter());
    if !missing.is_empty() {
        return Err(domain(format!("no map for {}", missing.join(", "))));
    }
    let composed = lin.columns[g].compose(&lin.columns[h])?;
    let direct = &lin.columns[&gh];
    let bad: Vec<usize> = (0..lin.v_size)
        .filter(|&v| composed.apply(v) != direct.apply(v))
        .collect();
    if bad.is_empty() {
        return Ok(Rational::from_integer(0));
    }
    // rows of the transpose are the nonzero columns
    let mut t = FpMatrix::zeros(lin.p, bad.len(), lin.v_size)?;
    for (i, &v) in bad.iter().enumerate() {
        t.add_at(i, composed.apply(v), 1);
        t.add_at(i, direct.apply(v), lin.p - 1);
    }
    Ok(fraction(t.rank(), lin.v_size))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::approx::{folner_approx, quotient_approx, Window};
    use crate::group::{Homomorphism, DEFAULT_ELEMENT_CAP as CAP};

    fn z(v: i64) -> GroupElement {
        GroupElement::Vector(vec![v])
    }

    fn eps() -> Rational {
        Rational::new(1, 4)
    }

    fn cyclic_level(n: u64, f: &[GroupElement]) -> SoficApproximation {
        let zz = Arc::new(Group::free_abelian(1));
        let hom = Homomorphism::reduction(zz, &[n]).unwrap();
        quotient_approx(&hom, f, eps()).unwrap()
    }

    #[test]
    fn linearize_examples() {
        let a = cyclic_level(5, &[z(1)]);
        let lin = linearize(&a, 7).unwrap();
        assert_eq!(
            lin.matrix(&z(0)).unwrap(),
            FpMatrix::identity(7, 5).unwrap()
        );
        let shift = lin.matrix(&z(1)).unwrap();
        for v in 0..5 {
            for w in 0..5 {
                assert_eq!(shift.get(w, v), u32::from(w == (v + 1) % 5));
            }
        }
        assert_eq!(normalized_rank(&shift).unwrap(), Rational::from_integer(1));

        let g = Arc::new(Group::free_abelian(1));
        let maps = BTreeMap::from([(z(1), MapOnV::constant(4, 0).unwrap())]);
        let c = SoficApproximation::new(g, 4, vec![z(1)], maps, eps()).unwrap();
        let m = linearize(&c, 2).unwrap().matrix(&z(1)).unwrap();
        assert_eq!(m.row(0), &[1, 1, 1, 1]);
        assert_eq!(m.rank(), 1);
        assert!(linearize(&c, 4).is_err());
    }

    #[test]
    fn represent_examples() {
        let c2 = Arc::new(Group::cyclic(2).unwrap());
        let gen = c2.parse_word("t").unwrap();
        let level = folner_approx(c2.clone(), &Window::WholeGroup, &[gen.clone()], eps()).unwrap();
        let lin = linearize(&level, 3).unwrap();
        let a = GroupRingElement::from_terms(3, [(c2.identity(), 2), (gen.clone(), 2)]).unwrap();
        let m = represent(&a, &lin).unwrap();
        assert_eq!(
            m,
            FpMatrix::from_rows(3, &[vec![2, 2], vec![2, 2]]).unwrap()
        );
        assert_eq!(normalized_rank(&m).unwrap(), Rational::new(1, 2));

        let one = GroupRingElement::one(3, &c2).unwrap();
        assert_eq!(
            represent(&one, &lin).unwrap(),
            FpMatrix::identity(3, 2).unwrap()
        );
        let zero = GroupRingElement::zero(3).unwrap();
        let m0 = represent(&zero, &lin).unwrap();
        assert!(m0.is_zero());
        assert_eq!(normalized_rank(&m0).unwrap(), Rational::from_integer(0));

        let wrong_p = GroupRingElement::one(5, &c2).unwrap();
        assert!(represent(&wrong_p, &lin).is_err());
        let small = cyclic_level(4, &[z(1)]);
        let uncovered = GroupRingElement::monomial(3, z(5), 1).unwrap();
        let err = represent(&uncovered, &linearize(&small, 3).unwrap()).unwrap_err();
        assert!(err.to_string().contains("(5)"), "{err}");
        assert!(normalized_rank(&FpMatrix::zeros(3, 2, 3).unwrap()).is_err());
    }

    #[test]
    fn hom_defect_matches_dense_product() {
        let zz = Arc::new(Group::free_abelian(1));
        let f = vec![z(1), z(-1), z(2)];
        for n in [3usize, 5, 8] {
            let a = folner_approx(zz.clone(), &Window::cube(1, n), &f, eps()).unwrap();
            for p in [2u32, 3] {
                let lin = linearize(&a, p).unwrap();
                for g in &f {
                    for h in &f {
                        let gh = zz.mul(g, h);
                        let Some(m_gh) = lin.matrix(&gh) else {
                            continue;
                        };
                        let dense = lin
                            .matrix(g)
                            .unwrap()
                            .mul(&lin.matrix(h).unwrap())
                            .unwrap()
                            .sub(&m_gh)
                            .unwrap();
                        let want = normalized_rank(&dense).unwrap();
                        assert_eq!(hom_defect(g, h, &zz, &lin).unwrap(), want);
                        let dis = a.report().defect_a(g, h).unwrap();
                        assert!(want <= dis);
                    }
                }
            }
        }
    }

    #[test]
    fn hom_defect_examples() {
        let zz = Arc::new(Group::free_abelian(1));
        let level = cyclic_level(6, &[z(1), z(-1), z(2)]);
        let lin = linearize(&level, 2).unwrap();
        assert_eq!(
            hom_defect(&z(1), &z(1), &zz, &lin).unwrap(),
            Rational::from_integer(0)
        );
        assert_eq!(
            hom_defect(&z(0), &z(0), &zz, &lin).unwrap(),
            Rational::from_integer(0)
        );
        for n in [4usize, 10] {
            let a = folner_approx(zz.clone(), &Window::cube(1, n), &[z(1)], eps()).unwrap();
            let lin = linearize(&a, 5).unwrap();
            assert_eq!(
                hom_defect(&z(1), &z(1), &zz, &lin).unwrap(),
                Rational::new(1, n as i64)
            );
        }
        assert!(hom_defect(&z(7), &z(1), &zz, &lin).is_err());
    }

    #[test]
    fn z2_defect_uses_few_columns() {
        let z2 = Arc::new(Group::free_abelian(2));
        let f = z2.ball(1, CAP).unwrap().elements().to_vec();
        let a = folner_approx(z2.clone(), &Window::cube(2, 16), &f, eps()).unwrap();
        let lin = linearize(&a, 2).unwrap();
        let rep = a.report();
        for g in &f {
            for h in &f {
                let d = hom_defect(g, h, &z2, &lin).unwrap();
                assert!(d <= rep.defect_a(g, h).unwrap());
            }
        }
    }
}

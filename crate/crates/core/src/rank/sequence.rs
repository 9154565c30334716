use std::fmt::Write as _;

use super::{linearize, normalized_rank, represent};
use crate::approx::SoficApproximation;
use crate::error::{domain, Result};
use crate::group::GroupRingElement;
use crate::rational::{render, Rational};

/// One level of a rank sequence. `value` is `None` when the level does not
/// cover the support; `note` then says why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankLevel {
    pub label: String,
    pub v_size: usize,
    pub epsilon: Rational,
    pub value: Option<Rational>,
    pub note: Option<String>,
}

/// Normalized ranks of one element along a refining family of levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankSequence {
    pub element: String,
    pub levels: Vec<RankLevel>,
}

impl RankSequence {
    pub fn values(&self) -> Vec<Rational> {
        self.levels.iter().filter_map(|l| l.value).collect()
    }

    pub fn warnings(&self) -> usize {
        self.levels.iter().filter(|l| l.value.is_none()).count()
    }

    pub fn last(&self) -> Option<Rational> {
        self.values().last().copied()
    }

    /// Computed values in the second half of the sequence.
    pub fn tail(&self) -> Vec<Rational> {
        let v = self.values();
        let start = v.len() / 2;
        v[start..].to_vec()
    }

    pub fn tail_min(&self) -> Option<Rational> {
        self.tail().into_iter().min()
    }

    pub fn tail_max(&self) -> Option<Rational> {
        self.tail().into_iter().max()
    }

    pub const CSV_HEADER: &'static str = "level,label,vertices,epsilon,normalized_rank,note";

    pub fn to_csv(&self) -> String {
        let mut out = format!("{}\n", Self::CSV_HEADER);
        for (i, l) in self.levels.iter().enumerate() {
            let value = l
                .value
                .map_or_else(|| "skipped".to_string(), |r| render(&r));
            let _ = writeln!(
                out,
                "{i},{},{},{},{value},{}",
                l.label,
                l.v_size,
                render(&l.epsilon),
                l.note.as_deref().unwrap_or("")
            );
        }
        out
    }

    pub fn summary(&self) -> String {
        let opt = |r: Option<Rational>| r.map_or_else(|| "none".to_string(), |r| render(&r));
        format!(
            "element {}\nlevels {}\nwarnings {}\nlast {}\ntail_min {}\ntail_max {}\n",
            self.element,
            self.levels.len(),
            self.warnings(),
            opt(self.last()),
            opt(self.tail_min()),
            opt(self.tail_max())
        )
    }
}

/// Normalized rank of `represent(a)` at each level. The family must refine:
/// `F` nondecreasing and `ε` nonincreasing. Levels that do not cover the
/// support are kept as warning rows.
pub fn pseudo_rank_sequence(
    a: &GroupRingElement,
    family: &[SoficApproximation],
) -> Result<RankSequence> {
    for pair in family.windows(2) {
        let (prev, next) = (&pair[0], &pair[1]);
        if next.epsilon() > prev.epsilon() {
            return Err(domain("family is not refining: epsilon increases"));
        }
        if let Some(g) = prev
            .elements()
            .iter()
            .find(|g| !next.elements().contains(g))
        {
            return Err(domain(format!("family is not refining: {g} leaves F")));
        }
    }
    let element = family
        .first()
        .map_or_else(|| a.to_string(), |l| a.display(l.group()));
    let mut levels = Vec::with_capacity(family.len());
    for level in family {
        let missing: Vec<String> = a
            .support()
            .iter()
            .filter(|g| !level.contains(g))
            .map(|g| level.group().label(g))
            .collect();
        let (value, note) = if missing.is_empty() {
            let m = represent(a, &linearize(level, a.prime())?)?;
            (Some(normalized_rank(&m)?), None)
        } else {
            (
                None,
                Some(format!("support not covered: {}", missing.join(" "))),
            )
        };
        levels.push(RankLevel {
            label: level.label().to_string(),
            v_size: level.v_size(),
            epsilon: level.epsilon(),
            value,
            note,
        });
    }
    Ok(RankSequence { element, levels })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::approx::{folner_approx, quotient_approx, Window};
    use crate::group::{Group, GroupElement, Homomorphism};

    fn z(v: i64) -> GroupElement {
        GroupElement::Vector(vec![v])
    }

    fn eps(k: i64) -> Rational {
        Rational::new(1, 1 << k)
    }

    #[test]
    fn constant_one() {
        let zz = Arc::new(Group::free_abelian(1));
        let family: Vec<_> = [4u64, 8, 16]
            .iter()
            .enumerate()
            .map(|(k, &n)| {
                let hom = Homomorphism::reduction(zz.clone(), &[n]).unwrap();
                quotient_approx(&hom, &[z(1)], eps(k as i64 + 1)).unwrap()
            })
            .collect();
        let one = GroupRingElement::one(2, &zz).unwrap();
        let s = pseudo_rank_sequence(&one, &family).unwrap();
        assert!(s.values().iter().all(|r| *r == Rational::from_integer(1)));
        assert_eq!(s.warnings(), 0);
        assert!(s.to_csv().starts_with(RankSequence::CSV_HEADER));
    }

    #[test]
    fn two_plus_two_g_is_half() {
        let c2 = Arc::new(Group::cyclic(2).unwrap());
        let g = c2.parse_word("t").unwrap();
        let base = folner_approx(c2.clone(), &Window::WholeGroup, &[g.clone()], eps(1)).unwrap();
        let family: Vec<_> = (0..4).map(|k| base.replicate(1 << k).unwrap()).collect();
        let a = GroupRingElement::from_terms(3, [(c2.identity(), 2), (g, 2)]).unwrap();
        let s = pseudo_rank_sequence(&a, &family).unwrap();
        assert_eq!(s.values(), vec![Rational::new(1, 2); 4]);
        assert_eq!(s.tail_min(), s.tail_max());
    }

    #[test]
    fn one_plus_t_on_boxes() {
        let zz = Arc::new(Group::free_abelian(1));
        let ns = [4usize, 8, 16, 32];
        let family: Vec<_> = ns
            .iter()
            .enumerate()
            .map(|(k, &n)| {
                folner_approx(zz.clone(), &Window::cube(1, n), &[z(1)], eps(k as i64 + 1)).unwrap()
            })
            .collect();
        let a = GroupRingElement::from_terms(2, [(z(0), 1), (z(1), 1)]).unwrap();
        let s = pseudo_rank_sequence(&a, &family).unwrap();
        // columns e_v + e_{v+1} for v < n-1, zero at the top point
        let want: Vec<Rational> = ns
            .iter()
            .map(|&n| Rational::new(n as i64 - 1, n as i64))
            .collect();
        assert_eq!(s.values(), want);
        assert_eq!(s.last(), Some(Rational::new(31, 32)));
        assert_eq!(s.tail_min(), Some(Rational::new(15, 16)));
    }

    #[test]
    fn uncovered_levels_and_refinement() {
        let zz = Arc::new(Group::free_abelian(1));
        let l1 = folner_approx(zz.clone(), &Window::cube(1, 4), &[z(1)], eps(1)).unwrap();
        let l2 = folner_approx(zz.clone(), &Window::cube(1, 8), &[z(1), z(5)], eps(2)).unwrap();
        let a = GroupRingElement::monomial(2, z(5), 1).unwrap();
        let s = pseudo_rank_sequence(&a, &[l1.clone(), l2.clone()]).unwrap();
        assert_eq!(s.warnings(), 1);
        assert!(s.to_csv().contains("skipped"));
        // truncated shift by 5 on [0, 8) has image size 5
        assert_eq!(s.values(), vec![Rational::new(5, 8)]);
        assert!(s.summary().contains("warnings 1"));
        assert!(pseudo_rank_sequence(&a, &[l2.clone(), l1.clone()]).is_err());
        let loose = folner_approx(zz, &Window::cube(1, 8), &[z(1)], Rational::new(3, 4)).unwrap();
        assert!(pseudo_rank_sequence(&a, &[l2, loose]).is_err());
    }
}

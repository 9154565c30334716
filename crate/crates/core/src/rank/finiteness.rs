use std::fmt::Write as _;

use super::{linearize, normalized_rank, represent};
use crate::approx::SoficApproximation;
use crate::error::{domain, Result};
use crate::group::{Group, GroupRingElement};
use crate::rational::{render, Rational};

/// Ranks of `T(ab) - I` and `T(ba) - I` at one level; `None` when the level
/// does not cover the support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitenessLevel {
    pub label: String,
    pub v_size: usize,
    pub ab_minus_one: Option<Rational>,
    pub ba_minus_one: Option<Rational>,
}

/// `ab = 1` and `ba = 1` decided by exact group-ring arithmetic, with
/// per-level matrix ranks as supporting evidence only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitenessVerdict {
    pub a: String,
    pub b: String,
    pub ab: String,
    pub ba: String,
    pub ab_is_one: bool,
    pub ba_is_one: bool,
    pub levels: Vec<FinitenessLevel>,
}

impl FinitenessVerdict {
    /// `ab = 1` but `ba != 1`.
    pub fn is_violation(&self) -> bool {
        self.ab_is_one && !self.ba_is_one
    }

    /// A level where `ab = 1` (resp. `ba = 1`) but the matrix is not zero.
    pub fn matrix_disagreements(&self) -> usize {
        let zero = Some(Rational::from_integer(0));
        self.levels
            .iter()
            .filter(|l| {
                (self.ab_is_one && l.ab_minus_one != zero && l.ab_minus_one.is_some())
                    || (self.ba_is_one && l.ba_minus_one != zero && l.ba_minus_one.is_some())
            })
            .count()
    }

    pub const CSV_HEADER: &'static str = "level,label,vertices,rank_ab_minus_1,rank_ba_minus_1";

    pub fn to_csv(&self) -> String {
        let opt = |r: Option<Rational>| r.map_or_else(|| "skipped".to_string(), |r| render(&r));
        let mut out = format!("{}\n", Self::CSV_HEADER);
        for (i, l) in self.levels.iter().enumerate() {
            let _ = writeln!(
                out,
                "{i},{},{},{},{}",
                l.label,
                l.v_size,
                opt(l.ab_minus_one),
                opt(l.ba_minus_one)
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        format!(
            "a {}\nb {}\nab {}\nba {}\nab_is_one {}\nba_is_one {}\nviolation {}\nlevels {}\n",
            self.a,
            self.b,
            self.ab,
            self.ba,
            self.ab_is_one,
            self.ba_is_one,
            self.is_violation(),
            self.levels.len()
        )
    }
}

/// Computes `ab` and `ba` exactly and the normalized ranks of `T(ab) - I`
/// and `T(ba) - I` at each level of `family`.
pub fn direct_finiteness_check(
    a: &GroupRingElement,
    b: &GroupRingElement,
    group: &Group,
    family: &[SoficApproximation],
) -> Result<FinitenessVerdict> {
    if a.prime() != b.prime() {
        return Err(domain(format!(
            "elements over GF({}) and GF({})",
            a.prime(),
            b.prime()
        )));
    }
    if let Some(level) = family.iter().find(|l| l.group().as_ref() != group) {
        return Err(domain(format!(
            "level {:?} is over a different group",
            level.label()
        )));
    }
    let p = a.prime();
    let ab = a.mul(b, group)?;
    let ba = b.mul(a, group)?;
    let one = GroupRingElement::one(p, group)?;
    let ab1 = ab.sub(&one, group)?;
    let ba1 = ba.sub(&one, group)?;
    let mut levels = Vec::with_capacity(family.len());
    for level in family {
        let lin = linearize(level, p)?;
        let rank_of = |x: &GroupRingElement| -> Result<Option<Rational>> {
            if x.support().iter().any(|g| !lin.contains(g)) {
                return Ok(None);
            }
            Ok(Some(normalized_rank(&represent(x, &lin)?)?))
        };
        levels.push(FinitenessLevel {
            label: level.label().to_string(),
            v_size: level.v_size(),
            ab_minus_one: rank_of(&ab1)?,
            ba_minus_one: rank_of(&ba1)?,
        });
    }
    Ok(FinitenessVerdict {
        a: a.display(group),
        b: b.display(group),
        ab: ab.display(group),
        ba: ba.display(group),
        ab_is_one: ab.is_one(),
        ba_is_one: ba.is_one(),
        levels,
    })
}

//! Run configuration: group file, prime, family schedule, seed.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use sofic_core::approx::{folner_approx, quotient_approx, SoficApproximation, Window};
use sofic_core::group::file::GroupFile;
use sofic_core::group::DEFAULT_ELEMENT_CAP as CAP;
use sofic_core::group::{Group, GroupElement, GroupKind, GroupRingElement, Homomorphism};
use sofic_core::rational::{self, render};
use sofic_core::Rational;

use crate::output::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelKind {
    /// `V` a finite quotient of the group, `|V| = N`.
    Quotient,
    /// A Følner box of side `N` in `Z^d`.
    Folner,
    /// `N` copies of the left regular action of a finite group.
    Regular,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSpec {
    pub size: u64,
    pub radius: usize,
    pub epsilon: Rational,
}

/// `KIND:ENTRY,ENTRY,...` with `ENTRY = N[@R][:EPS]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub kind: LevelKind,
    pub levels: Vec<LevelSpec>,
}

impl Schedule {
    pub fn parse(raw: &str, default_epsilon: Rational) -> Result<Self, CliError> {
        let (kind, rest) = raw
            .split_once(':')
            .ok_or_else(|| CliError::usage(format!("schedule {raw:?} needs KIND:ENTRIES")))?;
        let kind = match kind.trim() {
            "quotient" => LevelKind::Quotient,
            "folner" => LevelKind::Folner,
            "regular" => LevelKind::Regular,
            other => return Err(CliError::usage(format!("unknown schedule kind {other:?}"))),
        };
        let mut levels = Vec::new();
        for entry in rest.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            levels.push(parse_entry(entry, default_epsilon)?);
        }
        if levels.is_empty() {
            return Err(CliError::usage("schedule has no levels"));
        }
        for pair in levels.windows(2) {
            if pair[1].radius < pair[0].radius {
                return Err(CliError::usage("schedule radii must be nondecreasing"));
            }
            if pair[1].epsilon > pair[0].epsilon {
                return Err(CliError::usage("schedule epsilons must be nonincreasing"));
            }
        }
        Ok(Schedule { kind, levels })
    }
}

fn parse_entry(entry: &str, default_epsilon: Rational) -> Result<LevelSpec, CliError> {
    let bad = || CliError::usage(format!("bad schedule entry {entry:?}"));
    let (head, epsilon) = match entry.split_once(':') {
        Some((h, e)) => (h, rational::parse_decimal(e).ok_or_else(bad)?),
        None => (entry, default_epsilon),
    };
    let (size, radius) = match head.split_once('@') {
        Some((n, r)) => (n, r.trim().parse().map_err(|_| bad())?),
        None => (head, 1),
    };
    let size: u64 = size.trim().parse().map_err(|_| bad())?;
    if size == 0 {
        return Err(bad());
    }
    if epsilon <= Rational::from_integer(0) {
        return Err(CliError::usage(format!(
            "epsilon must be positive in {entry:?}"
        )));
    }
    Ok(LevelSpec {
        size,
        radius,
        epsilon,
    })
}

pub fn parse_rational(flag: &str, text: &str) -> Result<Rational, CliError> {
    rational::parse_decimal(text)
        .ok_or_else(|| CliError::usage(format!("{flag}: cannot read {text:?} as a number")))
}

/// A loaded group file plus the prime in effect.
pub struct Setup {
    pub path: PathBuf,
    pub group: Arc<Group>,
    pub file: GroupFile,
}

impl Setup {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let file = GroupFile::load(path)
            .map_err(|e| CliError::usage(format!("group file {}: {e}", path.display())))?;
        Ok(Setup {
            path: path.to_path_buf(),
            group: Arc::new(file.group.clone()),
            file,
        })
    }

    /// `--prime` wins over the file's `prime`.
    pub fn prime(&self, flag: Option<u32>) -> Result<u32, CliError> {
        flag.or(self.file.prime).ok_or_else(|| {
            CliError::usage("no prime: pass --prime or set `prime` in the group file")
        })
    }

    /// A named element of the group file, or an inline sum such as `2+2g`.
    pub fn element(&self, text: &str, p: u32) -> Result<GroupRingElement, CliError> {
        if self.file.elements.iter().any(|e| e.name == text) {
            return Ok(self.file.element(text, p)?);
        }
        GroupRingElement::parse(p, &self.group, text)
            .map_err(|e| CliError::usage(format!("element {text:?}: {e}")))
    }

    pub fn ball(&self, r: usize) -> Result<Vec<GroupElement>, CliError> {
        Ok(self.group.ball(r, CAP)?.elements().to_vec())
    }

    /// One approximation per schedule entry. `radius` overrides the
    /// per-entry radius when given.
    pub fn family(
        &self,
        schedule: &Schedule,
        radius: Option<usize>,
    ) -> Result<Vec<SoficApproximation>, CliError> {
        schedule
            .levels
            .iter()
            .map(|l| self.level(schedule.kind, l, radius.unwrap_or(l.radius)))
            .collect()
    }

    fn level(
        &self,
        kind: LevelKind,
        entry: &LevelSpec,
        radius: usize,
    ) -> Result<SoficApproximation, CliError> {
        let group = self.group.clone();
        let f = self.ball(radius)?;
        let n = entry.size;
        let level = match (kind, group.kind()) {
            (LevelKind::Quotient, GroupKind::FreeAbelian { rank }) => {
                let hom = Homomorphism::reduction(group.clone(), &vec![n; *rank])?;
                quotient_approx(&hom, &f, entry.epsilon)?
            }
            (LevelKind::Quotient, _) => {
                let order = group.order().expect("finite") as u64;
                if !n.is_multiple_of(order) {
                    return Err(CliError::usage(format!(
                        "quotient level {n} is not a multiple of the group order {order}"
                    )));
                }
                let hom = Homomorphism::identity_of(group.clone())?;
                copies(quotient_approx(&hom, &f, entry.epsilon)?, n / order)?
            }
            (LevelKind::Folner, GroupKind::FreeAbelian { rank }) => folner_approx(
                group.clone(),
                &Window::cube(*rank, n as usize),
                &f,
                entry.epsilon,
            )?,
            (LevelKind::Folner, _) => {
                return Err(CliError::usage(
                    "folner schedules need a free-abelian group",
                ))
            }
            (LevelKind::Regular, GroupKind::FreeAbelian { .. }) => {
                return Err(CliError::usage("regular schedules need a finite group"))
            }
            (LevelKind::Regular, _) => copies(
                folner_approx(group.clone(), &Window::WholeGroup, &f, entry.epsilon)?,
                n,
            )?,
        };
        Ok(level)
    }

    /// Lines shared by every report header.
    pub fn describe(&self) -> String {
        format!("group {}\n", self.path.display())
    }
}

fn copies(level: SoficApproximation, m: u64) -> Result<SoficApproximation, CliError> {
    Ok(if m == 1 {
        level
    } else {
        level.replicate(m as usize)?
    })
}

pub fn describe_schedule(raw: &str, schedule: &Schedule) -> String {
    let eps: Vec<String> = schedule.levels.iter().map(|l| render(&l.epsilon)).collect();
    format!("schedule {raw}\nepsilons {}\n", eps.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quarter() -> Rational {
        Rational::new(1, 4)
    }

    #[test]
    fn schedule_entries() {
        let s = Schedule::parse("quotient:4,8@2,16@2:1/8", quarter()).unwrap();
        assert_eq!(s.kind, LevelKind::Quotient);
        assert_eq!(
            s.levels,
            vec![
                LevelSpec {
                    size: 4,
                    radius: 1,
                    epsilon: quarter()
                },
                LevelSpec {
                    size: 8,
                    radius: 2,
                    epsilon: quarter()
                },
                LevelSpec {
                    size: 16,
                    radius: 2,
                    epsilon: Rational::new(1, 8)
                },
            ]
        );
        let s = Schedule::parse("folner: 8, 16:0.05", quarter()).unwrap();
        assert_eq!(s.levels[1].epsilon, Rational::new(1, 20));
    }

    #[test]
    fn schedule_errors() {
        for bad in [
            "quotient:",
            "quotient",
            "",
            "boxes:4",
            "quotient:x",
            "quotient:0",
            "quotient:4@2,8@1",
            "quotient:4:1/8,8:1/4",
            "quotient:4:0",
        ] {
            assert!(Schedule::parse(bad, quarter()).is_err(), "{bad}");
        }
    }
}

//! Group description files (TOML, one group per document).
//!
//! ```toml
//! kind = "table"            # or "permutations", "free-abelian", "cyclic"
//! table = [[0, 1], [1, 0]]
//! generators = [{ name = "g", element = 1 }]
//! prime = 3
//!
//! [[elements]]
//! name = "a"
//! terms = [["1", 2], ["g", 2]]
//! ```
//!
//! `free-abelian` takes `rank`; `cyclic` takes `moduli` (the finite quotient
//! `Z^d / diag(moduli)`); `permutations` takes generators with a `perm`
//! field. Element terms are `(word, coefficient)` pairs.

use std::path::Path;

use serde::Deserialize;

use super::{Group, GroupRingElement};
use crate::error::{domain, parse_err, Result};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroupFile {
    kind: String,
    rank: Option<usize>,
    moduli: Option<Vec<u64>>,
    table: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    generators: Vec<RawGenerator>,
    prime: Option<u32>,
    #[serde(default)]
    elements: Vec<RawElement>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    name: String,
    element: Option<usize>,
    perm: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElement {
    name: String,
    terms: Vec<(String, i64)>,
}

/// A named group-ring element as written in the file (words unparsed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementDef {
    pub name: String,
    pub terms: Vec<(String, i64)>,
}

/// A parsed group description.
#[derive(Debug, Clone)]
pub struct GroupFile {
    pub group: Group,
    pub prime: Option<u32>,
    pub elements: Vec<ElementDef>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawGroupFile = toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map(|s| text[..s.start].lines().count().max(1))
                .unwrap_or(1);
            parse_err(line, e.message().to_string())
        })?;
        let group = match raw.kind.as_str() {
            "free-abelian" => {
                let rank = raw
                    .rank
                    .ok_or_else(|| domain("free-abelian needs `rank`"))?;
                if rank == 0 {
                    return Err(domain("rank must be positive"));
                }
                if !raw.generators.is_empty() {
                    return Err(domain(
                        "free-abelian uses the standard basis; omit `generators`",
                    ));
                }
                Group::free_abelian(rank)
            }
            "cyclic" => {
                let moduli = raw.moduli.ok_or_else(|| domain("cyclic needs `moduli`"))?;
                Group::cyclic_product(&moduli)?
            }
            "table" => {
                let table = raw
                    .table
                    .ok_or_else(|| domain("table kind needs `table`"))?;
                let gens = raw
                    .generators
                    .iter()
                    .map(|g| {
                        g.element
                            .map(|e| (g.name.clone(), e))
                            .ok_or_else(|| domain(format!("generator {} needs `element`", g.name)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Group::from_table(&table, &gens)?
            }
            "permutations" => {
                let gens = raw
                    .generators
                    .iter()
                    .map(|g| {
                        g.perm
                            .clone()
                            .map(|p| (g.name.clone(), p))
                            .ok_or_else(|| domain(format!("generator {} needs `perm`", g.name)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if gens.is_empty() {
                    return Err(domain("permutations kind needs at least one generator"));
                }
                Group::from_permutations(&gens)?
            }
            other => return Err(domain(format!("unknown group kind {other:?}"))),
        };
        let elements: Vec<ElementDef> = raw
            .elements
            .into_iter()
            .map(|e| ElementDef {
                name: e.name,
                terms: e.terms,
            })
            .collect();
        let file = GroupFile {
            group,
            prime: raw.prime,
            elements,
        };
        // words must parse even when no prime is given yet
        for e in &file.elements {
            for (w, _) in &e.terms {
                file.group.parse_word(w)?;
            }
        }
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| domain(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Looks up a named element and builds it over GF(p).
    pub fn element(&self, name: &str, p: u32) -> Result<GroupRingElement> {
        let def = self
            .elements
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| domain(format!("no element named {name:?}")))?;
        GroupRingElement::from_words(p, &self.group, &def.terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;

    #[test]
    fn table_file() {
        let text = r#"
kind = "table"
table = [[0, 1], [1, 0]]
generators = [{ name = "g", element = 1 }]
prime = 3

[[elements]]
name = "a"
terms = [["1", 2], ["g", 2]]
"#;
        let f = GroupFile::parse(text).unwrap();
        assert_eq!(f.group.order(), Some(2));
        assert_eq!(f.prime, Some(3));
        let a = f.element("a", 3).unwrap();
        assert_eq!(a.coefficient(&GroupElement::Finite(1)), 2);
        assert!(f.element("b", 3).is_err());
    }

    #[test]
    fn other_kinds() {
        let f = GroupFile::parse("kind = \"free-abelian\"\nrank = 2\n").unwrap();
        assert_eq!(f.group.generators().len(), 4);
        let f = GroupFile::parse("kind = \"cyclic\"\nmoduli = [4, 2]\n").unwrap();
        assert_eq!(f.group.order(), Some(8));
        let f = GroupFile::parse(
            "kind = \"permutations\"\ngenerators = [{ name = \"r\", perm = [1, 2, 3, 0] }, { name = \"s\", perm = [3, 2, 1, 0] }]\n",
        )
        .unwrap();
        assert_eq!(f.group.order(), Some(8));
    }

    #[test]
    fn malformed_files() {
        assert!(GroupFile::parse("kind = \"blob\"").is_err());
        assert!(GroupFile::parse("kind = \"free-abelian\"").is_err());
        assert!(GroupFile::parse("kind = \"cyclic\"\nmoduli = [3]\nbogus = 1").is_err());
        assert!(GroupFile::parse("not toml at all [").is_err());
        let bad_word =
            "kind = \"cyclic\"\nmoduli = [3]\n[[elements]]\nname = \"a\"\nterms = [[\"q\", 1]]\n";
        assert!(GroupFile::parse(bad_word).is_err());
    }
}

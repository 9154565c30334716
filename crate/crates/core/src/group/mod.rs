//! Exact finitely generated groups and ball enumeration.
//!
//! Three kinds are supported: finite groups given by a multiplication table
//! (or by permutations, which are closed into a table), free abelian groups
//! `Z^d`, and their finite quotients `Z^d / diag(n_1, ..., n_d)`.

mod ball;
pub mod file;
mod hom;
pub mod ring;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

pub use ball::Ball;
pub use hom::Homomorphism;
pub use ring::{GroupRingElement, RingMatrix};

use crate::error::{domain, Result};

/// Default cap on enumerated elements (balls, permutation closures).
pub const DEFAULT_ELEMENT_CAP: usize = 1 << 20;

/// Canonical form of a group element: a table index for finite groups, an
/// integer vector for `Z^d` and its cyclic quotients. Equal forms are equal
/// elements. Finite tables are normalized so the identity is index 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Finite(usize),
    Vector(Vec<i64>),
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Finite(i) => *i == 0,
            GroupElement::Vector(v) => v.iter().all(|&c| c == 0),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Finite(i) => write!(f, "#{i}"),
            GroupElement::Vector(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// Multiplication table of a finite group, identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTable {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl FiniteTable {
    /// Validates a table `table[a][b] = a*b`. The identity is moved to index
    /// 0 by swapping labels; the returned permutation maps old labels to new.
    pub fn new(rows: &[Vec<usize>]) -> Result<(Self, Vec<usize>)> {
        let n = rows.len();
        if n == 0 {
            return Err(domain("empty multiplication table"));
        }
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(domain(format!("table row {a} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(domain(format!("table entry {bad} out of range")));
            }
            let distinct: BTreeSet<_> = row.iter().collect();
            if distinct.len() != n {
                return Err(domain(format!("table row {a} is not a permutation")));
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or_else(|| domain("table has no identity"))?;
        let relabel: Vec<usize> = (0..n)
            .map(|x| match x {
                x if x == e => 0,
                0 => e,
                x => x,
            })
            .collect();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[relabel[a] * n + relabel[b]] = relabel[rows[a][b]];
            }
        }
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| table[a * n + b] == 0)
                .ok_or_else(|| domain(format!("element {a} has no inverse")))?;
        }
        let t = FiniteTable {
            order: n,
            table,
            inverses,
        };
        // associativity is exhaustive for small tables, sampled otherwise
        let step = if n <= 32 { 1 } else { n / 16 + 1 };
        for a in (0..n).step_by(step) {
            for b in (0..n).step_by(step) {
                for c in (0..n).step_by(step) {
                    if t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c)) {
                        return Err(domain(format!("table not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok((t, relabel))
    }

    /// Closes permutations of `0..degree` under composition. Elements are
    /// sorted lexicographically as image arrays, so the identity is index 0.
    /// Composition is `(a*b)(x) = a(b(x))`. Returns the table and the index
    /// of each generator.
    pub fn from_permutations(perms: &[Vec<usize>], cap: usize) -> Result<(Self, Vec<usize>)> {
        let degree = perms.first().map_or(0, Vec::len);
        for p in perms {
            let distinct: BTreeSet<_> = p.iter().collect();
            if p.len() != degree || distinct.len() != degree || p.iter().any(|&v| v >= degree) {
                return Err(domain(format!("{p:?} is not a permutation of 0..{degree}")));
            }
        }
        let compose =
            |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&x| a[x]).collect() };
        let id: Vec<usize> = (0..degree).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in perms {
                let y = compose(g, &x);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(crate::Error::Resource {
                            what: "permutation closure".into(),
                            cap,
                        });
                    }
                    queue.push_back(y);
                }
            }
        }
        let elems: Vec<Vec<usize>> = seen.into_iter().collect();
        let index: HashMap<&[usize], usize> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_slice(), i))
            .collect();
        let rows: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| index[compose(a, b).as_slice()])
                    .collect()
            })
            .collect();
        let gens = perms.iter().map(|p| index[p.as_slice()]).collect();
        let (t, relabel) = Self::new(&rows)?;
        debug_assert!(relabel.iter().enumerate().all(|(i, &j)| i == j));
        Ok((t, gens))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Finite(FiniteTable),
    FreeAbelian {
        rank: usize,
    },
    /// `Z^d / diag(moduli)`, each modulus at least 1.
    CyclicQuotient {
        moduli: Vec<u64>,
    },
}

/// A named element of the generating set `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub element: GroupElement,
}

/// A group with a symmetric generating set `B = B^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    kind: GroupKind,
    generators: Vec<Generator>,
}

fn default_basis_names(d: usize) -> Vec<String> {
    match d {
        1 => vec!["t".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=d).map(|i| format!("e{i}")).collect(),
    }
}

fn unit_vector(d: usize, i: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] = sign;
    v
}

impl Group {
    /// Builds a group and closes the generator list under inverses; an
    /// inverse not already present is appended under the name `name^-1`.
    pub fn new(kind: GroupKind, generators: Vec<Generator>) -> Result<Self> {
        let mut g = Group {
            kind,
            generators: Vec::new(),
        };
        for gen in &generators {
            if !g.contains(&gen.element) {
                return Err(domain(format!(
                    "generator {} = {} is not an element of the group",
                    gen.name, gen.element
                )));
            }
        }
        let mut all = generators;
        let mut k = 0;
        while k < all.len() {
            let inv = g.inverse(&all[k].element);
            if !all.iter().any(|x| x.element == inv) {
                all.push(Generator {
                    name: format!("{}^-1", all[k].name),
                    element: inv,
                });
            }
            k += 1;
        }
        let mut names = BTreeSet::new();
        for gen in &all {
            if !names.insert(gen.name.as_str()) {
                return Err(domain(format!("duplicate generator name {:?}", gen.name)));
            }
        }
        g.generators = all;
        g.check_generates()?;
        Ok(g)
    }

    /// `Z^d` with generators `±e_i`.
    pub fn free_abelian(rank: usize) -> Self {
        let gens = default_basis_names(rank)
            .into_iter()
            .enumerate()
            .map(|(i, name)| Generator {
                name,
                element: GroupElement::Vector(unit_vector(rank, i, 1)),
            })
            .collect();
        Self::new(GroupKind::FreeAbelian { rank }, gens).expect("unit vectors generate Z^d")
    }

    /// `Z/n_1 x ... x Z/n_d` with generators `±e_i`.
    pub fn cyclic_product(moduli: &[u64]) -> Result<Self> {
        if moduli.is_empty() || moduli.contains(&0) {
            return Err(domain("moduli must be nonempty and positive"));
        }
        let d = moduli.len();
        let gens = default_basis_names(d)
            .into_iter()
            .enumerate()
            .map(|(i, name)| Generator {
                name,
                element: GroupElement::Vector(
                    unit_vector(d, i, 1)
                        .iter()
                        .zip(moduli)
                        .map(|(&c, &m)| c.rem_euclid(m as i64))
                        .collect(),
                ),
            })
            .collect();
        Self::new(
            GroupKind::CyclicQuotient {
                moduli: moduli.to_vec(),
            },
            gens,
        )
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::cyclic_product(&[n])
    }

    /// Finite group from a table; generators are `(name, index)` with indices
    /// in the table's own labelling.
    pub fn from_table(rows: &[Vec<usize>], generators: &[(String, usize)]) -> Result<Self> {
        let (table, relabel) = FiniteTable::new(rows)?;
        let gens = generators
            .iter()
            .map(|(name, i)| {
                let idx = *relabel
                    .get(*i)
                    .ok_or_else(|| domain(format!("generator index {i} out of range")))?;
                Ok(Generator {
                    name: name.clone(),
                    element: GroupElement::Finite(idx),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(GroupKind::Finite(table), gens)
    }

    pub fn from_permutations(generators: &[(String, Vec<usize>)]) -> Result<Self> {
        let perms: Vec<Vec<usize>> = generators.iter().map(|(_, p)| p.clone()).collect();
        let (table, idx) = FiniteTable::from_permutations(&perms, DEFAULT_ELEMENT_CAP)?;
        let gens = generators
            .iter()
            .zip(idx)
            .map(|((name, _), i)| Generator {
                name: name.clone(),
                element: GroupElement::Finite(i),
            })
            .collect();
        Self::new(GroupKind::Finite(table), gens)
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    /// The symmetric generating set `B`.
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_elements(&self) -> Vec<GroupElement> {
        self.generators.iter().map(|g| g.element.clone()).collect()
    }

    pub fn generator_name(&self, e: &GroupElement) -> Option<&str> {
        self.generators
            .iter()
            .find(|g| &g.element == e)
            .map(|g| g.name.as_str())
    }

    pub fn generator_by_name(&self, name: &str) -> Option<&GroupElement> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .map(|g| &g.element)
    }

    pub fn identity(&self) -> GroupElement {
        match &self.kind {
            GroupKind::Finite(_) => GroupElement::Finite(0),
            GroupKind::FreeAbelian { rank } => GroupElement::Vector(vec![0; *rank]),
            GroupKind::CyclicQuotient { moduli } => GroupElement::Vector(vec![0; moduli.len()]),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.kind, GroupKind::FreeAbelian { .. })
    }

    /// Group order, `None` for infinite groups or orders beyond `usize`.
    pub fn order(&self) -> Option<usize> {
        match &self.kind {
            GroupKind::Finite(t) => Some(t.order()),
            GroupKind::FreeAbelian { .. } => None,
            GroupKind::CyclicQuotient { moduli } => moduli
                .iter()
                .try_fold(1usize, |acc, &m| acc.checked_mul(usize::try_from(m).ok()?)),
        }
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        match (&self.kind, e) {
            (GroupKind::Finite(t), GroupElement::Finite(i)) => *i < t.order(),
            (GroupKind::FreeAbelian { rank }, GroupElement::Vector(v)) => v.len() == *rank,
            (GroupKind::CyclicQuotient { moduli }, GroupElement::Vector(v)) => {
                v.len() == moduli.len()
                    && v.iter()
                        .zip(moduli)
                        .all(|(&c, &m)| c >= 0 && (c as u64) < m)
            }
            _ => false,
        }
    }

    pub fn check_contains(&self, e: &GroupElement) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(domain(format!("{e} is not an element of this group")))
        }
    }

    /// Product `a * b`. Both arguments must belong to the group.
    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (&self.kind, a, b) {
            (GroupKind::Finite(t), GroupElement::Finite(x), GroupElement::Finite(y)) => {
                GroupElement::Finite(t.mul(*x, *y))
            }
            (GroupKind::FreeAbelian { .. }, GroupElement::Vector(x), GroupElement::Vector(y)) => {
                GroupElement::Vector(x.iter().zip(y).map(|(a, b)| a + b).collect())
            }
            (
                GroupKind::CyclicQuotient { moduli },
                GroupElement::Vector(x),
                GroupElement::Vector(y),
            ) => GroupElement::Vector(
                x.iter()
                    .zip(y)
                    .zip(moduli)
                    .map(|((a, b), &m)| (a + b).rem_euclid(m as i64))
                    .collect(),
            ),
            _ => panic!("elements {a} and {b} do not belong to this group"),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        match (&self.kind, a) {
            (GroupKind::Finite(t), GroupElement::Finite(x)) => GroupElement::Finite(t.inverse(*x)),
            (GroupKind::FreeAbelian { .. }, GroupElement::Vector(x)) => {
                GroupElement::Vector(x.iter().map(|c| -c).collect())
            }
            (GroupKind::CyclicQuotient { moduli }, GroupElement::Vector(x)) => {
                GroupElement::Vector(
                    x.iter()
                        .zip(moduli)
                        .map(|(c, &m)| (-c).rem_euclid(m as i64))
                        .collect(),
                )
            }
            _ => panic!("element {a} does not belong to this group"),
        }
    }

    /// `a^k` by repeated squaring; negative `k` uses the inverse.
    pub fn pow(&self, a: &GroupElement, k: i64) -> GroupElement {
        let mut base = if k < 0 { self.inverse(a) } else { a.clone() };
        let mut exp = k.unsigned_abs();
        let mut acc = self.identity();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// All elements in canonical order, for finite groups.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        match &self.kind {
            GroupKind::Finite(t) => Some((0..t.order()).map(GroupElement::Finite).collect()),
            GroupKind::FreeAbelian { .. } => None,
            GroupKind::CyclicQuotient { moduli } => {
                let n = self.order()?;
                Some(
                    (0..n)
                        .map(|mut k| {
                            let mut v = vec![0i64; moduli.len()];
                            for (slot, &m) in v.iter_mut().zip(moduli).rev() {
                                *slot = (k % m as usize) as i64;
                                k /= m as usize;
                            }
                            GroupElement::Vector(v)
                        })
                        .collect(),
                )
            }
        }
    }

    /// Position of `e` in [`Group::elements`], for finite groups.
    pub fn index_of(&self, e: &GroupElement) -> Option<usize> {
        if !self.contains(e) {
            return None;
        }
        match (&self.kind, e) {
            (GroupKind::Finite(_), GroupElement::Finite(i)) => Some(*i),
            (GroupKind::CyclicQuotient { moduli }, GroupElement::Vector(v)) => Some(
                v.iter()
                    .zip(moduli)
                    .fold(0usize, |acc, (&c, &m)| acc * m as usize + c as usize),
            ),
            _ => None,
        }
    }

    /// Parses a word such as `x y^-1 x^2` (tokens separated by spaces or `*`).
    /// `1`, `e` and the empty word denote the identity. Tokens are generator
    /// names, optionally with an integer exponent `^k`.
    pub fn parse_word(&self, word: &str) -> Result<GroupElement> {
        let mut acc = self.identity();
        for tok in word.split(|c: char| c.is_whitespace() || c == '*') {
            if tok.is_empty() || tok == "1" || tok == "e" {
                continue;
            }
            let factor = if let Some(g) = self.generator_by_name(tok) {
                g.clone()
            } else {
                let (name, exp) = tok
                    .rsplit_once('^')
                    .ok_or_else(|| domain(format!("unknown generator {tok:?}")))?;
                let base = self
                    .generator_by_name(name)
                    .ok_or_else(|| domain(format!("unknown generator {name:?}")))?;
                let exp: i64 = exp
                    .parse()
                    .map_err(|_| domain(format!("bad exponent in {tok:?}")))?;
                self.pow(base, exp)
            };
            acc = self.mul(&acc, &factor);
        }
        Ok(acc)
    }

    /// Canonical word for display: generator name if `e` is one, otherwise
    /// the canonical form.
    pub fn label(&self, e: &GroupElement) -> String {
        if e.is_identity() {
            return "1".into();
        }
        match (self.generator_name(e), &self.kind, e) {
            (Some(n), _, _) => n.to_string(),
            (None, GroupKind::FreeAbelian { rank: 1 }, GroupElement::Vector(v)) => {
                format!("t^{}", v[0])
            }
            _ => e.to_string(),
        }
    }

    fn check_generates(&self) -> Result<()> {
        match &self.kind {
            GroupKind::FreeAbelian { rank } => {
                let vectors: Vec<Vec<i64>> = self
                    .generators
                    .iter()
                    .map(|g| match &g.element {
                        GroupElement::Vector(v) => v.clone(),
                        GroupElement::Finite(_) => unreachable!("checked by contains"),
                    })
                    .collect();
                if !lattice_is_full(&vectors, *rank) {
                    return Err(domain("generators do not generate Z^d"));
                }
                Ok(())
            }
            _ => {
                let n = self
                    .order()
                    .ok_or_else(|| domain("finite group too large to enumerate"))?;
                let reached = self.ball(n, n.max(1))?;
                if reached.len() != n {
                    return Err(domain(format!(
                        "generators reach {} of {} elements",
                        reached.len(),
                        n
                    )));
                }
                Ok(())
            }
        }
    }

    /// The ball `N_r` of radius `r` around the identity in the Cayley graph.
    pub fn ball(&self, r: usize, cap: usize) -> Result<Ball> {
        Ball::enumerate(self, r, cap)
    }
}

/// Whether integer vectors generate all of `Z^d`, via Hermite-style row
/// reduction with Euclid steps.
fn lattice_is_full(vectors: &[Vec<i64>], d: usize) -> bool {
    let mut rows: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| v.iter().map(|&c| c as i128).collect())
        .collect();
    let mut top = 0;
    for col in 0..d {
        loop {
            let nonzero: Vec<usize> = (top..rows.len()).filter(|&r| rows[r][col] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let pivot = *nonzero
                .iter()
                .min_by_key(|&&r| rows[r][col].abs())
                .expect("nonempty");
            for &r in &nonzero {
                if r != pivot {
                    let q = rows[r][col] / rows[pivot][col];
                    let prow = rows[pivot].clone();
                    rows[r].iter_mut().zip(&prow).for_each(|(a, b)| *a -= q * b);
                }
            }
        }
        let Some(r) = (top..rows.len()).find(|&r| rows[r][col] != 0) else {
            return false;
        };
        if rows[r][col].abs() != 1 {
            return false;
        }
        rows.swap(top, r);
        top += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64) -> GroupElement {
        GroupElement::Vector(vec![v])
    }

    #[test]
    fn free_abelian_basics() {
        let g = Group::free_abelian(1);
        assert_eq!(g.generators().len(), 2);
        assert_eq!(g.generator_by_name("t^-1"), Some(&z(-1)));
        assert_eq!(g.parse_word("t t t^-1").unwrap(), z(1));
        assert_eq!(g.parse_word("t^-3*t").unwrap(), z(-2));
        assert_eq!(g.parse_word("1").unwrap(), z(0));
        assert!(g.parse_word("s").is_err());
        assert!(g.parse_word("t^x").is_err());
        assert_eq!(g.pow(&z(2), -3), z(-6));
    }

    #[test]
    fn lattice_generation() {
        assert!(lattice_is_full(&[vec![2, 0], vec![3, 0], vec![0, 1]], 2));
        assert!(!lattice_is_full(&[vec![2, 0], vec![4, 0], vec![0, 1]], 2));
        assert!(!lattice_is_full(&[vec![1, 1]], 2));
        let bad = Group::new(
            GroupKind::FreeAbelian { rank: 1 },
            vec![Generator {
                name: "s".into(),
                element: z(2),
            }],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn cyclic_product_enumeration() {
        let g = Group::cyclic_product(&[2, 3]).unwrap();
        assert_eq!(g.order(), Some(6));
        let els = g.elements().unwrap();
        for (i, e) in els.iter().enumerate() {
            assert_eq!(g.index_of(e), Some(i));
        }
        assert_eq!(els[5], GroupElement::Vector(vec![1, 2]));
        assert_eq!(g.inverse(&els[5]), GroupElement::Vector(vec![1, 1]));
        // Z/2: generator is its own inverse, so B has one element
        assert_eq!(Group::cyclic(2).unwrap().generators().len(), 1);
        assert!(Group::cyclic(0).is_err());
    }

    #[test]
    fn table_identity_is_relabelled() {
        // Z/3 with identity stored at label 2: a+b with labels (x+1) mod 3
        let rows: Vec<Vec<usize>> = (0..3)
            .map(|a| {
                (0..3)
                    .map(|b| ((a + 1) + (b + 1)) % 3)
                    .map(|s| (s + 2) % 3)
                    .collect()
            })
            .collect();
        let g = Group::from_table(&rows, &[("g".into(), 0)]).unwrap();
        assert_eq!(g.order(), Some(3));
        let gen = g.generator_by_name("g").unwrap().clone();
        assert!(!gen.is_identity());
        assert!(g.pow(&gen, 3).is_identity());
    }

    #[test]
    fn bad_tables_rejected() {
        assert!(FiniteTable::new(&[]).is_err());
        assert!(FiniteTable::new(&[vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteTable::new(&[vec![1, 0], vec![0, 1]]).is_ok());
        // Latin square that is not a group: no identity
        assert!(FiniteTable::new(&[vec![1, 2, 0], vec![2, 0, 1], vec![1, 2, 0]]).is_err());
        let not_generating = Group::from_table(&[vec![0, 1], vec![1, 0]], &[("e".into(), 0)]);
        assert!(not_generating.is_err());
    }

    #[test]
    fn symmetric_group_from_permutations() {
        let s3 =
            Group::from_permutations(&[("a".into(), vec![1, 0, 2]), ("b".into(), vec![1, 2, 0])])
                .unwrap();
        assert_eq!(s3.order(), Some(6));
        let a = s3.generator_by_name("a").unwrap().clone();
        let b = s3.generator_by_name("b").unwrap().clone();
        assert_ne!(s3.mul(&a, &b), s3.mul(&b, &a));
        assert!(s3.generator_by_name("b^-1").is_some());
        assert!(s3.generator_by_name("a^-1").is_none(), "a is an involution");
        assert_eq!(
            s3.parse_word("a b a").unwrap(),
            s3.parse_word("b^-1").unwrap()
        );
    }
}

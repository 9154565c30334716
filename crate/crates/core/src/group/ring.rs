//! The group algebra GF(p)(G): finitely supported functions `G -> GF(p)`
//! with convolution product.

use std::collections::BTreeMap;
use std::fmt;

use super::{Group, GroupElement};
use crate::error::{domain, Result};
use crate::linalg::{field, FpMatrix};

/// `Σ k_s s` with every stored coefficient nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    p: u32,
    terms: BTreeMap<GroupElement, u32>,
}

impl GroupRingElement {
    pub fn zero(p: u32) -> Result<Self> {
        field::check_prime(p)?;
        Ok(GroupRingElement {
            p,
            terms: BTreeMap::new(),
        })
    }

    pub fn one(p: u32, group: &Group) -> Result<Self> {
        Self::monomial(p, group.identity(), 1)
    }

    pub fn monomial(p: u32, g: GroupElement, k: i64) -> Result<Self> {
        Self::from_terms(p, [(g, k)])
    }

    /// Sums the given terms; repeated elements are merged and zero
    /// coefficients dropped.
    pub fn from_terms<I>(p: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GroupElement, i64)>,
    {
        let mut out = Self::zero(p)?;
        for (g, k) in terms {
            out.add_term(g, field::reduce_i64(p, k));
        }
        Ok(out)
    }

    /// Parses `(word, coefficient)` pairs against a group.
    pub fn from_words(p: u32, group: &Group, terms: &[(String, i64)]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|(w, k)| Ok((group.parse_word(w)?, *k)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(p, parsed)
    }

    /// Parses a sum such as `2 + 2g`, `1 - t^-1` or `3*x y^-1`. Each term is
    /// an optional integer coefficient, an optional `*`, and a word in the
    /// generators; a bare integer is a multiple of the identity.
    pub fn parse(p: u32, group: &Group, text: &str) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut pieces: Vec<(i64, &str)> = Vec::new();
        let (mut sign, mut start) = (1i64, 0);
        for (i, &c) in bytes.iter().enumerate() {
            let exponent_sign = i > 0 && bytes[i - 1] == b'^';
            if (c == b'+' || c == b'-') && !exponent_sign {
                let raw = text[start..i].trim();
                // only the first term may have an empty body (a leading sign)
                if !raw.is_empty() {
                    pieces.push((sign, raw));
                } else if start != 0 {
                    return Err(domain(format!("empty term in {text:?}")));
                }
                sign = if c == b'-' { -1 } else { 1 };
                start = i + 1;
            }
        }
        pieces.push((sign, text[start..].trim()));
        let mut terms = Vec::with_capacity(pieces.len());
        for (sign, raw) in pieces {
            if raw.is_empty() {
                return Err(domain(format!("empty term in {text:?}")));
            }
            let digits = raw.len() - raw.trim_start_matches(|c: char| c.is_ascii_digit()).len();
            let coeff: i64 = if digits == 0 {
                1
            } else {
                raw[..digits]
                    .parse()
                    .map_err(|_| domain(format!("bad coefficient in {raw:?}")))?
            };
            let word = raw[digits..].trim_start().trim_start_matches('*');
            terms.push((group.parse_word(word)?, sign * coeff));
        }
        Self::from_terms(p, terms)
    }

    fn add_term(&mut self, g: GroupElement, k: u32) {
        let sum = field::add(self.p, self.coefficient(&g), k);
        if sum == 0 {
            self.terms.remove(&g);
        } else {
            self.terms.insert(g, sum);
        }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Support in canonical order.
    pub fn support(&self) -> Vec<GroupElement> {
        self.terms.keys().cloned().collect()
    }

    pub fn coefficient(&self, g: &GroupElement) -> u32 {
        self.terms.get(g).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, u32)> {
        self.terms.iter().map(|(g, &k)| (g, k))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff the element is `1 · identity`.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(g, &k)| g.is_identity() && k == 1)
    }

    fn check_compatible(&self, other: &Self, group: &Group) -> Result<()> {
        if self.p != other.p {
            return Err(domain(format!(
                "coefficients in GF({}) and GF({})",
                self.p, other.p
            )));
        }
        for g in self.terms.keys().chain(other.terms.keys()) {
            group.check_contains(g)?;
        }
        Ok(())
    }

    pub fn add(&self, other: &Self, group: &Group) -> Result<Self> {
        self.check_compatible(other, group)?;
        let mut out = self.clone();
        for (g, &k) in &other.terms {
            out.add_term(g.clone(), k);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self, group: &Group) -> Result<Self> {
        self.add(&other.scale(-1), group)
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = field::reduce_i64(self.p, k);
        let terms = if k == 0 {
            BTreeMap::new()
        } else {
            self.terms
                .iter()
                .map(|(g, &c)| (g.clone(), field::mul(self.p, c, k)))
                .collect()
        };
        GroupRingElement { p: self.p, terms }
    }

    /// Convolution: `(ab)(g) = Σ_{st = g} a(s) b(t)`.
    pub fn mul(&self, other: &Self, group: &Group) -> Result<Self> {
        self.check_compatible(other, group)?;
        let p = self.p;
        let mut acc: BTreeMap<GroupElement, u32> = BTreeMap::new();
        for (s, &a) in &self.terms {
            for (t, &b) in &other.terms {
                let slot = acc.entry(group.mul(s, t)).or_insert(0);
                *slot = field::add(p, *slot, field::mul(p, a, b));
            }
        }
        acc.retain(|_, v| *v != 0);
        Ok(GroupRingElement { p, terms: acc })
    }

    /// Matrix of `x ↦ self · x` on GF(p)(G) in the basis `group.elements()`.
    /// Column `t` holds `self · t`, i.e. entry `(s t, t)` gets `self(s)`.
    pub fn left_regular_matrix(&self, group: &Group) -> Result<FpMatrix> {
        let elements = group
            .elements()
            .ok_or_else(|| domain("regular representation needs a finite group"))?;
        let n = elements.len();
        let mut m = FpMatrix::zeros(self.p, n, n)?;
        for (s, &k) in &self.terms {
            group.check_contains(s)?;
            for (j, t) in elements.iter().enumerate() {
                let i = group.index_of(&group.mul(s, t)).expect("closed");
                m.add_at(i, j, k);
            }
        }
        Ok(m)
    }

    /// Reads back a coefficient vector in the basis `group.elements()`.
    pub fn from_coefficients(p: u32, group: &Group, coeffs: &[u32]) -> Result<Self> {
        let elements = group
            .elements()
            .ok_or_else(|| domain("coefficient vectors need a finite group"))?;
        if coeffs.len() != elements.len() {
            return Err(domain("coefficient vector has the wrong length"));
        }
        Self::from_terms(
            p,
            elements
                .into_iter()
                .zip(coeffs)
                .map(|(g, &k)| (g, k as i64)),
        )
    }

    /// Two-sided inverse in a finite group algebra, found by solving
    /// `L_a · b = δ_1` in the regular representation. `None` if not a unit.
    pub fn inverse_in_finite_group(&self, group: &Group) -> Result<Option<Self>> {
        let l = self.left_regular_matrix(group)?;
        let n = l.rows();
        if l.rank() < n {
            return Ok(None);
        }
        let mut rhs = vec![0; n];
        rhs[group.index_of(&group.identity()).expect("identity")] = 1;
        let Some(x) = l.solve(&rhs)? else {
            return Ok(None);
        };
        Self::from_coefficients(self.p, group, &x).map(Some)
    }

    pub fn display(&self, group: &Group) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(g, &k)| match (k, g.is_identity()) {
                (k, true) => k.to_string(),
                (1, false) => group.label(g),
                (k, false) => format!("{k}*{}", group.label(g)),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(g, k)| format!("{k}*{g}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Square matrix with entries in GF(p)(G).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMatrix {
    n: usize,
    entries: Vec<GroupRingElement>,
}

impl RingMatrix {
    pub fn new(n: usize, entries: Vec<GroupRingElement>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(domain(format!("{n}x{n} matrix needs {} entries", n * n)));
        }
        if let Some(first) = entries.first() {
            if entries.iter().any(|e| e.p != first.p) {
                return Err(domain("entries over different primes"));
            }
        }
        Ok(RingMatrix { n, entries })
    }

    pub fn identity(p: u32, group: &Group, n: usize) -> Result<Self> {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    GroupRingElement::one(p, group)
                } else {
                    GroupRingElement::zero(p)
                }
            })
            .collect::<Result<_>>()?;
        Self::new(n, entries)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &Self, group: &Group) -> Result<Self> {
        if self.n != other.n {
            return Err(domain("matrix size mismatch"));
        }
        let n = self.n;
        let p = self.entries.first().map_or(2, |e| e.p);
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = GroupRingElement::zero(p)?;
                for k in 0..n {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j), group)?, group)?;
                }
                entries.push(acc);
            }
        }
        Self::new(n, entries)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// Block matrix of left regular representations: an `n|G| x n|G|`
    /// matrix over GF(p).
    pub fn regular_realization(&self, group: &Group) -> Result<FpMatrix> {
        let order = group
            .order()
            .ok_or_else(|| domain("realization needs a finite group"))?;
        let p = self.entries.first().map_or(2, |e| e.p);
        let size = self.n * order;
        let mut out = FpMatrix::zeros(p, size, size)?;
        for i in 0..self.n {
            for j in 0..self.n {
                let block = self.get(i, j).left_regular_matrix(group)?;
                for r in 0..order {
                    for c in 0..order {
                        let v = block.get(r, c);
                        if v != 0 {
                            out.add_at(i * order + r, j * order + c, v);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`RingMatrix::regular_realization`]: reads each block's
    /// column at the identity. Fails if the matrix is not a realization.
    pub fn from_realization(m: &FpMatrix, group: &Group, n: usize) -> Result<Self> {
        let elements = group
            .elements()
            .ok_or_else(|| domain("realization needs a finite group"))?;
        let order = elements.len();
        if m.rows() != n * order || m.cols() != n * order {
            return Err(domain("realization has the wrong size"));
        }
        let id = group.index_of(&group.identity()).expect("identity");
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let coeffs: Vec<u32> = (0..order)
                    .map(|r| m.get(i * order + r, j * order + id))
                    .collect();
                entries.push(GroupRingElement::from_coefficients(
                    m.prime(),
                    group,
                    &coeffs,
                )?);
            }
        }
        let out = Self::new(n, entries)?;
        if &out.regular_realization(group)? != m {
            return Err(domain(
                "matrix is not in the image of the regular realization",
            ));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64) -> GroupElement {
        GroupElement::Vector(vec![v])
    }

    #[test]
    fn parse_expressions() {
        let g = Group::free_abelian(1);
        let a = GroupRingElement::parse(3, &g, "2+2t").unwrap();
        assert_eq!(
            a,
            GroupRingElement::from_terms(3, [(z(0), 2), (z(1), 2)]).unwrap()
        );
        let b = GroupRingElement::parse(5, &g, "1 - t^-1 + 3*t t").unwrap();
        assert_eq!(
            b,
            GroupRingElement::from_terms(5, [(z(0), 1), (z(-1), -1), (z(2), 3)]).unwrap()
        );
        let c = GroupRingElement::parse(2, &g, "-t").unwrap();
        assert_eq!(c, GroupRingElement::monomial(2, z(1), 1).unwrap());
        assert!(GroupRingElement::parse(2, &g, "t + ").is_err());
        assert!(GroupRingElement::parse(2, &g, "1 ++ t").is_err());
        assert!(GroupRingElement::parse(2, &g, "u").is_err());
        assert!(GroupRingElement::parse(2, &g, "t + t").unwrap().is_zero());
    }

    #[test]
    fn one_is_neutral() {
        let g = Group::free_abelian(1);
        let a = GroupRingElement::from_terms(5, [(z(0), 2), (z(3), 4), (z(-1), 1)]).unwrap();
        let one = GroupRingElement::one(5, &g).unwrap();
        assert_eq!(a.mul(&one, &g).unwrap(), a);
        assert_eq!(one.mul(&a, &g).unwrap(), a);
    }

    #[test]
    fn square_in_gf3_of_c2() {
        let c2 = Group::cyclic(2).unwrap();
        let g = c2.parse_word("t").unwrap();
        let a = GroupRingElement::from_terms(3, [(c2.identity(), 1), (g.clone(), 1)]).unwrap();
        let sq = a.mul(&a, &c2).unwrap();
        let expected = GroupRingElement::from_terms(3, [(c2.identity(), 2), (g, 2)]).unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn square_in_gf2_of_z() {
        let zz = Group::free_abelian(1);
        let a = GroupRingElement::from_words(2, &zz, &[("1".into(), 1), ("t".into(), 1)]).unwrap();
        let sq = a.mul(&a, &zz).unwrap();
        assert_eq!(
            sq,
            GroupRingElement::from_terms(2, [(z(0), 1), (z(2), 1)]).unwrap()
        );
    }

    #[test]
    fn is_one_cases() {
        let zz = Group::free_abelian(1);
        assert!(GroupRingElement::one(3, &zz).unwrap().is_one());
        assert!(!GroupRingElement::monomial(3, z(0), 2).unwrap().is_one());
        assert!(!GroupRingElement::from_terms(3, [(z(0), 1), (z(1), 1)])
            .unwrap()
            .is_one());
        assert!(!GroupRingElement::zero(3).unwrap().is_one());
    }

    #[test]
    fn zero_coefficients_are_pruned() {
        let a = GroupRingElement::from_terms(3, [(z(1), 1), (z(1), 2), (z(2), 3)]).unwrap();
        assert!(a.is_zero());
        let zz = Group::free_abelian(1);
        let b = GroupRingElement::from_terms(3, [(z(1), 1)]).unwrap();
        assert!(b.sub(&b, &zz).unwrap().is_zero());
        assert!(b.scale(3).is_zero());
    }

    #[test]
    fn mismatches_are_domain_errors() {
        let zz = Group::free_abelian(1);
        let a = GroupRingElement::one(3, &zz).unwrap();
        let b = GroupRingElement::one(5, &zz).unwrap();
        assert!(a.mul(&b, &zz).is_err());
        let c2 = Group::cyclic(2).unwrap();
        let far = GroupRingElement::monomial(3, z(7), 1).unwrap();
        assert!(far.mul(&a, &c2).is_err());
    }

    #[test]
    fn regular_matrix_and_inverse() {
        let c2 = Group::cyclic(2).unwrap();
        let g = c2.parse_word("t").unwrap();
        let a = GroupRingElement::from_terms(3, [(c2.identity(), 2), (g.clone(), 2)]).unwrap();
        let m = a.left_regular_matrix(&c2).unwrap();
        assert_eq!(
            m,
            FpMatrix::from_rows(3, &[vec![2, 2], vec![2, 2]]).unwrap()
        );
        assert!(a.inverse_in_finite_group(&c2).unwrap().is_none());

        // GF(5)(C2) = GF(5) x GF(5) via (a0 + a1, a0 - a1)
        let u = GroupRingElement::from_terms(5, [(c2.identity(), 1), (g, 2)]).unwrap();
        let v = u.inverse_in_finite_group(&c2).unwrap().expect("unit");
        assert!(u.mul(&v, &c2).unwrap().is_one());
        assert!(v.mul(&u, &c2).unwrap().is_one());
    }

    #[test]
    fn ring_matrix_realization_round_trip() {
        let c3 = Group::cyclic(3).unwrap();
        let e = |w: &str, k| GroupRingElement::from_words(5, &c3, &[(w.into(), k)]).unwrap();
        let m = RingMatrix::new(2, vec![e("t", 1), e("1", 2), e("t^2", 3), e("1", 0)]).unwrap();
        let real = m.regular_realization(&c3).unwrap();
        assert_eq!(real.rows(), 6);
        assert_eq!(RingMatrix::from_realization(&real, &c3, 2).unwrap(), m);
        let id = RingMatrix::identity(5, &c3, 2).unwrap();
        assert!(id.is_identity());
        assert_eq!(m.mul(&id, &c3).unwrap(), m);
        assert_eq!(
            id.regular_realization(&c3).unwrap(),
            FpMatrix::identity(5, 6).unwrap()
        );
        assert!(RingMatrix::from_realization(&FpMatrix::identity(5, 5).unwrap(), &c3, 2).is_err());
    }
}

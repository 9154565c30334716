use std::collections::HashMap;
use std::sync::Arc;

use super::{Group, GroupElement, GroupKind};
use crate::error::{domain, Result};

/// A homomorphism onto a finite group.
///
/// For a free abelian source it is determined by the images of the basis
/// vectors (which must commute); for a finite source by the images of the
/// generators, extended along the Cayley graph.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    source: Arc<Group>,
    target: Arc<Group>,
    rule: Rule,
}

#[derive(Debug, Clone)]
enum Rule {
    Basis(Vec<GroupElement>),
    Table(HashMap<GroupElement, GroupElement>),
}

impl Homomorphism {
    /// `Z^d -> target` sending `e_i` to `images[i]`.
    pub fn from_basis_images(
        source: Arc<Group>,
        target: Arc<Group>,
        images: Vec<GroupElement>,
    ) -> Result<Self> {
        let GroupKind::FreeAbelian { rank } = source.kind() else {
            return Err(domain("basis images need a free abelian source"));
        };
        if images.len() != *rank {
            return Err(domain(format!(
                "expected {rank} basis images, got {}",
                images.len()
            )));
        }
        for x in &images {
            target.check_contains(x)?;
        }
        for a in &images {
            for b in &images {
                if target.mul(a, b) != target.mul(b, a) {
                    return Err(domain(format!("basis images {a} and {b} do not commute")));
                }
            }
        }
        let h = Homomorphism {
            source,
            target,
            rule: Rule::Basis(images),
        };
        h.verify()?;
        Ok(h)
    }

    /// Finite source: generator `b` goes to `images[b]` (in the order of
    /// `source.generators()`).
    pub fn from_generator_images(
        source: Arc<Group>,
        target: Arc<Group>,
        images: Vec<GroupElement>,
    ) -> Result<Self> {
        let elements = source
            .elements()
            .ok_or_else(|| domain("generator images need a finite source"))?;
        let gens = source.generators().to_vec();
        if images.len() != gens.len() {
            return Err(domain(format!(
                "expected {} generator images, got {}",
                gens.len(),
                images.len()
            )));
        }
        for x in &images {
            target.check_contains(x)?;
        }
        let ball = source.ball(elements.len(), elements.len().max(1))?;
        let mut map = HashMap::from([(source.identity(), target.identity())]);
        for (x, len) in ball.iter() {
            if len == 0 {
                continue;
            }
            // first generator b with b * y = x for some y one step closer
            let (img, y) = gens
                .iter()
                .zip(&images)
                .find_map(|(b, img)| {
                    let y = source.mul(&source.inverse(&b.element), x);
                    (ball.length(&y) == Some(len - 1)).then_some((img, y))
                })
                .expect("BFS parent exists");
            let value = target.mul(img, &map[&y]);
            map.insert(x.clone(), value);
        }
        let h = Homomorphism {
            source,
            target,
            rule: Rule::Table(map),
        };
        // h(b x) = h(b) h(x) for all generators b and all x
        for x in &elements {
            for (b, img) in gens.iter().zip(&images) {
                let lhs = h.apply(&h.source.mul(&b.element, x))?;
                let rhs = h.target.mul(img, &h.apply(x)?);
                if lhs != rhs {
                    return Err(domain(format!(
                        "generator images do not define a homomorphism (at {} * {x})",
                        b.name
                    )));
                }
            }
        }
        h.check_onto()?;
        Ok(h)
    }

    /// `Z^d -> Z/n_1 x ... x Z/n_d` by coordinatewise reduction.
    pub fn reduction(source: Arc<Group>, moduli: &[u64]) -> Result<Self> {
        let target = Arc::new(Group::cyclic_product(moduli)?);
        let images = (0..moduli.len())
            .map(|i| {
                let mut v = vec![0i64; moduli.len()];
                v[i] = 1 % moduli[i] as i64;
                GroupElement::Vector(v)
            })
            .collect();
        Self::from_basis_images(source, target, images)
    }

    /// Identity map of a finite group onto itself.
    pub fn identity_of(group: Arc<Group>) -> Result<Self> {
        let images = group.generator_elements();
        Self::from_generator_images(group.clone(), group, images)
    }

    pub fn source(&self) -> &Arc<Group> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Group> {
        &self.target
    }

    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement> {
        self.source.check_contains(g)?;
        match (&self.rule, g) {
            (Rule::Basis(images), GroupElement::Vector(v)) => Ok(v
                .iter()
                .zip(images)
                .fold(self.target.identity(), |acc, (&c, img)| {
                    self.target.mul(&acc, &self.target.pow(img, c))
                })),
            (Rule::Table(map), g) => map
                .get(g)
                .cloned()
                .ok_or_else(|| domain(format!("{g} outside the enumerated source"))),
            _ => Err(domain(format!("{g} has the wrong shape for this map"))),
        }
    }

    fn check_onto(&self) -> Result<()> {
        let order = self
            .target
            .order()
            .ok_or_else(|| domain("target must be finite"))?;
        // the image is the subgroup generated by the generator images
        let gens: Vec<GroupElement> = self
            .source
            .generators()
            .iter()
            .map(|b| self.apply(&b.element))
            .collect::<Result<_>>()?;
        let mut seen = std::collections::HashSet::from([self.target.identity()]);
        let mut frontier = vec![self.target.identity()];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = self.target.mul(g, &x);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        if seen.len() != order {
            return Err(domain(format!(
                "map is not onto: image has {} of {order} elements",
                seen.len()
            )));
        }
        Ok(())
    }

    /// Checks the homomorphism property on generator pairs and on products
    /// of small-ball elements, then surjectivity.
    fn verify(&self) -> Result<()> {
        let sample = self.source.ball(2, 4096)?;
        for a in sample.elements() {
            for b in self.source.generators() {
                let lhs = self.apply(&self.source.mul(a, &b.element))?;
                let rhs = self.target.mul(&self.apply(a)?, &self.apply(&b.element)?);
                if lhs != rhs {
                    return Err(domain(format!("not a homomorphism at ({a}, {})", b.name)));
                }
            }
        }
        self.check_onto()
    }
}

use std::collections::{BTreeSet, HashMap};

use super::{Group, GroupElement};
use crate::error::{Error, Result};

/// The ball `N_r` around the identity: elements in BFS order (by word
/// length, ties broken by canonical form) with their word lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    radius: usize,
    elements: Vec<GroupElement>,
    lengths: Vec<usize>,
    index: HashMap<GroupElement, usize>,
}

impl Ball {
    pub(super) fn enumerate(group: &Group, r: usize, cap: usize) -> Result<Ball> {
        let id = group.identity();
        let mut elements = vec![id.clone()];
        let mut lengths = vec![0];
        let mut index = HashMap::from([(id, 0)]);
        let mut layer_start = 0;
        for k in 1..=r {
            let mut next = BTreeSet::new();
            for x in &elements[layer_start..] {
                for b in group.generators() {
                    let y = group.mul(&b.element, x);
                    if !index.contains_key(&y) {
                        next.insert(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            if elements.len() + next.len() > cap {
                return Err(Error::Resource {
                    what: format!("ball of radius {r}"),
                    cap,
                });
            }
            layer_start = elements.len();
            for y in next {
                index.insert(y.clone(), elements.len());
                elements.push(y);
                lengths.push(k);
            }
        }
        Ok(Ball {
            radius: r,
            elements,
            lengths,
            index,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        self.index.contains_key(e)
    }

    pub fn index_of(&self, e: &GroupElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Word length of a ball element.
    pub fn length(&self, e: &GroupElement) -> Option<usize> {
        self.index_of(e).map(|i| self.lengths[i])
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, usize)> {
        self.elements.iter().zip(self.lengths.iter().copied())
    }
}

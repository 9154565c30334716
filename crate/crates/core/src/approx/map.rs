use crate::error::{domain, Result};
use crate::rational::{fraction, Rational};

/// A self-map of `V = {0, .., n-1}`, acting on the left. Not necessarily a
/// bijection.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MapOnV {
    images: Vec<usize>,
}

impl MapOnV {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if let Some(&bad) = images.iter().find(|&&v| v >= n) {
            return Err(domain(format!("image {bad} outside V of size {n}")));
        }
        Ok(MapOnV { images })
    }

    pub fn identity(n: usize) -> Self {
        MapOnV {
            images: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, value: usize) -> Result<Self> {
        Self::new(vec![value; n])
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.size() != other.size() {
            return Err(domain(format!(
                "maps on sets of size {} and {}",
                self.size(),
                other.size()
            )));
        }
        Ok(())
    }

    /// `self ∘ other`: `v ↦ self(other(v))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        Ok(MapOnV {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        })
    }

    /// Number of points where the maps differ.
    pub fn disagreements(&self, other: &Self) -> Result<usize> {
        self.check_size(other)?;
        Ok(self
            .images
            .iter()
            .zip(&other.images)
            .filter(|(a, b)| a != b)
            .count())
    }

    /// `|{v : e(v) != f(v)}| / |V|`. Two maps are ε-similar iff this is ≤ ε.
    pub fn similarity_fraction(&self, other: &Self) -> Result<Rational> {
        let d = self.disagreements(other)?;
        if self.size() == 0 {
            return Ok(Rational::from_integer(0));
        }
        Ok(fraction(d, self.size()))
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(v, &w)| *v == w)
            .count()
    }

    /// Size of the image, i.e. the largest set the map is injective on.
    pub fn image_size(&self) -> usize {
        let mut seen = vec![false; self.size()];
        let mut count = 0;
        for &w in &self.images {
            if !seen[w] {
                seen[w] = true;
                count += 1;
            }
        }
        count
    }

    pub fn is_bijection(&self) -> bool {
        self.image_size() == self.size()
    }
}

/// Free-function form of [`MapOnV::similarity_fraction`].
pub fn similarity_fraction(e: &MapOnV, f: &MapOnV) -> Result<Rational> {
    e.similarity_fraction(f)
}

/// Free-function form of [`MapOnV::compose`].
pub fn compose(e: &MapOnV, f: &MapOnV) -> Result<MapOnV> {
    e.compose(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift(n: usize) -> MapOnV {
        MapOnV::new((0..n).map(|v| (v + 1) % n).collect()).unwrap()
    }

    /// `v ↦ v + 1`, fixing the top point.
    fn truncated_shift(n: usize, k: usize) -> MapOnV {
        MapOnV::new((0..n).map(|v| if v + k < n { v + k } else { v }).collect()).unwrap()
    }

    #[test]
    fn similarity_examples() {
        let id = MapOnV::identity(4);
        assert_eq!(
            id.similarity_fraction(&id).unwrap(),
            Rational::from_integer(0)
        );
        let other = MapOnV::new(vec![1, 2, 3, 0]).unwrap();
        assert_eq!(
            id.similarity_fraction(&other).unwrap(),
            Rational::from_integer(1)
        );
        assert_eq!(
            shift(5).similarity_fraction(&MapOnV::identity(5)).unwrap(),
            Rational::from_integer(1)
        );
        assert!(id.similarity_fraction(&MapOnV::identity(3)).is_err());
    }

    #[test]
    fn compose_examples() {
        let f = shift(5);
        assert_eq!(compose(&MapOnV::identity(5), &f).unwrap(), f);
        let c = MapOnV::constant(5, 0).unwrap();
        assert_eq!(c.compose(&f).unwrap(), c);
        // shift+1 twice on [0,5): shift+2 except at the top two points
        let s1 = truncated_shift(5, 1);
        let twice = s1.compose(&s1).unwrap();
        assert_eq!(twice.images(), &[2, 3, 4, 4, 4]);
        let s2 = truncated_shift(5, 2);
        assert_eq!(s2.images(), &[2, 3, 4, 3, 4]);
        assert_eq!(twice.disagreements(&s2).unwrap(), 1);
        assert!(MapOnV::new(vec![0, 3]).is_err());
    }

    #[test]
    fn counts() {
        let m = MapOnV::new(vec![0, 0, 2, 1]).unwrap();
        assert_eq!(m.fixed_points(), 2);
        assert_eq!(m.image_size(), 3);
        assert!(!m.is_bijection());
        assert!(shift(6).is_bijection());
    }
}

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{Simplex, SSet};
use crate::error::{Error, Result};

/// A simplicial map, stored as the image of every source generator.
#[derive(Clone, Debug)]
pub struct SSetMap {
    source: Arc<SSet>,
    target: Arc<SSet>,
    images: Vec<Vec<Simplex>>,
}

impl PartialEq for SSetMap {
    fn eq(&self, other: &Self) -> bool {
        same(&self.source, &other.source)
            && same(&self.target, &other.target)
            && self.images == other.images
    }
}

impl Eq for SSetMap {}

pub(crate) fn same(a: &Arc<SSet>, b: &Arc<SSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl SSetMap {
    /// Validates dimensions, references and compatibility with every face.
    pub fn new(source: Arc<SSet>, target: Arc<SSet>, images: Vec<Vec<Simplex>>) -> Result<Self> {
        let m = SSetMap {
            source,
            target,
            images,
        };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        source: Arc<SSet>,
        target: Arc<SSet>,
        images: Vec<Vec<Simplex>>,
    ) -> Self {
        let m = SSetMap {
            source,
            target,
            images,
        };
        debug_assert_eq!(m.validate(), Ok(()));
        m
    }

    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        let levels = s.dimension().map_or(0, |d| d + 1);
        if self.images.len() != levels {
            return Err(Error::BadSimplex {
                cell: "map".into(),
                reason: format!("{} image levels for {} source levels", self.images.len(), levels),
            });
        }
        for n in 0..levels {
            if self.images[n].len() != s.count(n) {
                return Err(Error::BadSimplex {
                    cell: "map".into(),
                    reason: format!("wrong number of images in dimension {n}"),
                });
            }
            for (k, img) in self.images[n].iter().enumerate() {
                let ok = img.dim() == n
                    && img.base_dim < t.dimension().map_or(0, |d| d + 1)
                    && img.base < t.count(img.base_dim)
                    && img.word.windows(2).all(|w| w[0] > w[1]);
                if !ok {
                    return Err(Error::BadSimplex {
                        cell: s.cell(n, k).name.clone(),
                        reason: "image is not a simplex of the target of equal dimension".into(),
                    });
                }
            }
        }
        for n in 1..levels {
            for k in 0..s.count(n) {
                let x = Simplex::nd(n, k);
                let fx = &self.images[n][k];
                for i in 0..=n {
                    if self.apply(&s.face(&x, i)) != t.face(fx, i) {
                        return Err(Error::NotSimplicial {
                            cell: s.cell(n, k).name.clone(),
                            face: i,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<SSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SSet> {
        &self.target
    }

    pub fn images(&self) -> &[Vec<Simplex>] {
        &self.images
    }

    pub fn image_of(&self, n: usize, k: usize) -> &Simplex {
        &self.images[n][k]
    }

    /// Image of an arbitrary source simplex.
    pub fn apply(&self, s: &Simplex) -> Simplex {
        let img = &self.images[s.base_dim][s.base];
        if s.word.is_empty() {
            img.clone()
        } else {
            self.target.apply(img, &s.surjection())
        }
    }

    pub fn identity(k: &Arc<SSet>) -> Self {
        let images = (0..k.dimension().map_or(0, |d| d + 1))
            .map(|n| (0..k.count(n)).map(|i| Simplex::nd(n, i)).collect())
            .collect();
        SSetMap {
            source: k.clone(),
            target: k.clone(),
            images,
        }
    }

    pub fn is_identity(&self) -> bool {
        same(&self.source, &self.target)
            && self
                .images
                .iter()
                .enumerate()
                .all(|(n, l)| l.iter().enumerate().all(|(k, s)| *s == Simplex::nd(n, k)))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SSetMap) -> Result<Self> {
        if !same(&first.target, &self.source) {
            return Err(Error::SourceTargetMismatch);
        }
        let images = first
            .images
            .iter()
            .map(|l| l.iter().map(|s| self.apply(s)).collect())
            .collect();
        Ok(SSetMap {
            source: first.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    /// The constant map to a vertex `v` of the target.
    pub fn constant(source: &Arc<SSet>, target: &Arc<SSet>, v: usize) -> Self {
        let images = (0..source.dimension().map_or(0, |d| d + 1))
            .map(|n| {
                let s = Simplex {
                    base_dim: 0,
                    base: v,
                    word: (0..n).rev().collect(),
                };
                alloc::vec![s; source.count(n)]
            })
            .collect();
        SSetMap {
            source: source.clone(),
            target: target.clone(),
            images,
        }
    }

    /// Injective on generators with non-degenerate images.
    pub fn is_injective_on_generators(&self) -> bool {
        let mut seen = alloc::collections::BTreeSet::new();
        self.images
            .iter()
            .flatten()
            .all(|s| !s.is_degenerate() && seen.insert(s.clone()))
    }

    /// An isomorphism is a bijection between generators in each dimension.
    pub fn is_iso(&self) -> bool {
        let t_levels = self.target.dimension().map_or(0, |d| d + 1);
        self.is_injective_on_generators()
            && (0..t_levels).all(|n| self.target.count(n) == self.source.count(n))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_iso() {
            return None;
        }
        let mut images: Vec<Vec<Simplex>> = (0..self.target.dimension().map_or(0, |d| d + 1))
            .map(|n| alloc::vec![Simplex::nd(0, 0); self.target.count(n)])
            .collect();
        for (n, l) in self.images.iter().enumerate() {
            for (k, s) in l.iter().enumerate() {
                images[n][s.base] = Simplex::nd(n, k);
            }
        }
        SSetMap::new(self.target.clone(), self.source.clone(), images).ok()
    }

    /// Restricts the target to an isomorphic copy, checking generator counts.
    pub fn with_endpoints(&self, source: Arc<SSet>, target: Arc<SSet>) -> Result<Self> {
        SSetMap::new(source, target, self.images.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{boundary_delta, delta};

    #[test]
    fn boundary_inclusion_is_a_map() {
        let b = Arc::new(boundary_delta(2, 6).unwrap());
        let d = Arc::new(delta(2, 6).unwrap());
        let images = (0..2)
            .map(|n| (0..b.count(n)).map(|k| Simplex::nd(n, k)).collect())
            .collect();
        let inc = SSetMap::new(b.clone(), d.clone(), images).unwrap();
        assert!(inc.is_injective_on_generators());
        assert!(!inc.is_iso());
        assert!(SSetMap::identity(&d).is_iso());
        let id = SSetMap::identity(&b);
        assert_eq!(inc.after(&id).unwrap(), inc);
    }

    #[test]
    fn non_simplicial_map_rejected() {
        let d = Arc::new(delta(1, 6).unwrap());
        // edge to itself but vertices swapped
        let images = alloc::vec![
            alloc::vec![Simplex::nd(0, 1), Simplex::nd(0, 0)],
            alloc::vec![Simplex::nd(1, 0)],
        ];
        assert!(matches!(
            SSetMap::new(d.clone(), d, images),
            Err(Error::NotSimplicial { .. })
        ));
    }
}

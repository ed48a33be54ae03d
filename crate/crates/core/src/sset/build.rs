use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::simplex::subsets;
use super::{combine_caps, vertex_list_name, Cell, Simplex, SSet, SSetMap};
use crate::error::{Error, Result};

/// Generators of the faces of the simplex spanned by `vs` inside `Δ^n`,
/// with `k`-subsets listed lexicographically.
fn simplex_cells(n: usize, top: usize) -> Vec<Vec<Cell>> {
    let levels: Vec<Vec<Vec<usize>>> = (0..=top).map(|k| subsets(n + 1, k + 1)).collect();
    let mut cells = Vec::new();
    for (k, level) in levels.iter().enumerate() {
        let mut out = Vec::new();
        for vs in level {
            let faces = if k == 0 {
                Vec::new()
            } else {
                (0..=k)
                    .map(|i| {
                        let mut f = vs.clone();
                        f.remove(i);
                        let idx = levels[k - 1].binary_search(&f).expect("face is a subset");
                        Simplex::nd(k - 1, idx)
                    })
                    .collect()
            };
            out.push(Cell {
                name: vertex_list_name(vs),
                faces,
            });
        }
        cells.push(out);
    }
    cells
}

/// The standard `n`-simplex; generators are named by their vertex lists.
pub fn delta(n: usize, dim_cap: usize) -> Result<SSet> {
    if n > dim_cap {
        return Err(Error::CapExceeded {
            needed: n,
            cap: dim_cap,
        });
    }
    SSet::from_cells_unchecked(simplex_cells(n, n), dim_cap, false)
}

/// `Δ^n` without its top generator.
pub fn boundary_delta(n: usize, dim_cap: usize) -> Result<SSet> {
    if n > dim_cap {
        return Err(Error::CapExceeded {
            needed: n,
            cap: dim_cap,
        });
    }
    if n == 0 {
        return Ok(SSet::empty(dim_cap));
    }
    SSet::from_cells_unchecked(simplex_cells(n, n - 1), dim_cap, false)
}

/// The discrete simplicial set on a finite set of names.
pub fn constant_sset<S: AsRef<str>>(points: &[S], dim_cap: usize) -> Result<SSet> {
    let cells = if points.is_empty() {
        Vec::new()
    } else {
        alloc::vec![points
            .iter()
            .map(|p| Cell {
                name: p.as_ref().to_string(),
                faces: Vec::new(),
            })
            .collect()]
    };
    SSet::from_cells_unchecked(cells, dim_cap, false)
}

/// Vertex names, in order.
pub fn level_zero(k: &SSet) -> Vec<String> {
    k.cells(0).iter().map(|c| c.name.clone()).collect()
}

/// A disjoint union with its injections; summand `i` has generator names
/// prefixed by `tags[i]` and a colon.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub sset: Arc<SSet>,
    pub injections: Vec<SSetMap>,
    /// `offsets[i][n]` is the index of the first generator of summand `i` in
    /// dimension `n`.
    pub offsets: Vec<Vec<usize>>,
}

impl Coproduct {
    pub fn inject(&self, i: usize, s: &Simplex) -> Simplex {
        Simplex {
            base: s.base + self.offsets[i][s.base_dim],
            ..s.clone()
        }
    }

    /// Summand and local simplex of a simplex of the union.
    pub fn locate(&self, s: &Simplex) -> (usize, Simplex) {
        let n = s.base_dim;
        for (i, inj) in self.injections.iter().enumerate() {
            let off = self.offsets[i][n];
            if s.base >= off && s.base < off + inj.source().count(n) {
                return (
                    i,
                    Simplex {
                        base: s.base - off,
                        ..s.clone()
                    },
                );
            }
        }
        panic!("simplex outside every summand")
    }

    /// The map out of the union given by one map per summand.
    pub fn copair(&self, target: &Arc<SSet>, maps: &[SSetMap]) -> Result<SSetMap> {
        if maps.len() != self.injections.len() {
            return Err(Error::SourceTargetMismatch);
        }
        let levels = self.sset.dimension().map_or(0, |d| d + 1);
        let mut images: Vec<Vec<Simplex>> = (0..levels).map(|_| Vec::new()).collect();
        for (i, m) in maps.iter().enumerate() {
            if !super::map::same(m.source(), self.injections[i].source())
                || !super::map::same(m.target(), target)
            {
                return Err(Error::SourceTargetMismatch);
            }
            for (n, l) in m.images().iter().enumerate() {
                images[n].extend(l.iter().cloned());
            }
        }
        SSetMap::new(self.sset.clone(), target.clone(), images)
    }

    /// `copair` without validation, for maps built from valid pieces.
    pub(crate) fn copair_unchecked(&self, target: &Arc<SSet>, maps: &[SSetMap]) -> SSetMap {
        let levels = self.sset.dimension().map_or(0, |d| d + 1);
        let mut images: Vec<Vec<Simplex>> = (0..levels).map(|_| Vec::new()).collect();
        for m in maps {
            for (n, l) in m.images().iter().enumerate() {
                images[n].extend(l.iter().cloned());
            }
        }
        SSetMap::new_unchecked(self.sset.clone(), target.clone(), images)
    }
}

/// Disjoint union tagged by position.
pub fn coproduct(parts: &[Arc<SSet>]) -> Result<Coproduct> {
    let tagged: Vec<(String, Arc<SSet>)> = parts
        .iter()
        .enumerate()
        .map(|(i, k)| (format!("{i}"), k.clone()))
        .collect();
    coproduct_tagged(&tagged, crate::DEFAULT_DIM_CAP)
}

/// Disjoint union with explicit tags; `empty_cap` is the cap of the empty
/// union.
pub fn coproduct_tagged(parts: &[(String, Arc<SSet>)], empty_cap: usize) -> Result<Coproduct> {
    let (cap, truncated) = if parts.is_empty() {
        (empty_cap, false)
    } else {
        combine_caps(parts.iter().map(|(_, k)| &**k))
    };
    let top = parts
        .iter()
        .filter_map(|(_, k)| k.dimension())
        .max()
        .map_or(0, |d| d + 1);
    let top = if truncated { top.min(cap + 1) } else { top };
    let mut cells: Vec<Vec<Cell>> = (0..top).map(|_| Vec::new()).collect();
    let mut offsets = Vec::new();
    for (tag, k) in parts {
        let off: Vec<usize> = (0..top.max(1)).map(|n| cells.get(n).map_or(0, |l| l.len())).collect();
        for (n, level) in cells.iter_mut().enumerate() {
            for c in k.cells(n) {
                level.push(Cell {
                    name: format!("{tag}:{}", c.name),
                    faces: c
                        .faces
                        .iter()
                        .map(|f| Simplex {
                            base: f.base + off[f.base_dim],
                            ..f.clone()
                        })
                        .collect(),
                });
            }
        }
        offsets.push(off);
    }
    let sset = Arc::new(SSet::from_cells_unchecked(cells, cap, truncated)?);
    let injections = parts
        .iter()
        .zip(&offsets)
        .map(|((_, k), off)| {
            let k_levels = k.dimension().map_or(0, |d| d + 1).min(top);
            let images = (0..k_levels)
                .map(|n| (0..k.count(n)).map(|i| Simplex::nd(n, i + off[n])).collect())
                .collect();
            SSetMap::new_unchecked(k.clone(), sset.clone(), images)
        })
        .collect();
    Ok(Coproduct {
        sset,
        injections,
        offsets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::iso_check;

    #[test]
    fn delta_counts() {
        assert_eq!(delta(0, 6).unwrap().counts(), vec![1]);
        assert_eq!(delta(1, 6).unwrap().counts(), vec![2, 1]);
        let d2 = delta(2, 6).unwrap();
        assert_eq!(d2.counts(), vec![3, 3, 1]);
        d2.validate().unwrap();
        let d4 = delta(4, 6).unwrap();
        // C(5, k+1)
        assert_eq!(d4.counts(), vec![5, 10, 10, 5, 1]);
        d4.validate().unwrap();
        assert!(matches!(delta(7, 6), Err(Error::CapExceeded { needed: 7, cap: 6 })));
    }

    #[test]
    fn boundary_counts() {
        assert_eq!(boundary_delta(1, 6).unwrap().counts(), vec![2]);
        assert_eq!(boundary_delta(2, 6).unwrap().counts(), vec![3, 3]);
        boundary_delta(3, 6).unwrap().validate().unwrap();
    }

    #[test]
    fn constant_and_level_zero() {
        assert!(constant_sset::<&str>(&[], 6).unwrap().is_empty());
        assert_eq!(
            constant_sset(&["*"], 6).unwrap().counts(),
            delta(0, 6).unwrap().counts()
        );
        let s = constant_sset(&["a", "b", "c"], 6).unwrap();
        assert_eq!(s.counts(), vec![3]);
        assert_eq!(level_zero(&s), vec!["a", "b", "c"]);
        assert_eq!(level_zero(&delta(2, 6).unwrap()).len(), 3);
    }

    #[test]
    fn coproducts() {
        let empty = coproduct(&[]).unwrap();
        assert!(empty.sset.is_empty());
        let pt = Arc::new(delta(0, 6).unwrap());
        let two = coproduct(&[pt.clone(), pt.clone()]).unwrap();
        let s0 = Arc::new(boundary_delta(1, 6).unwrap());
        assert!(iso_check(&two.sset, &s0, 1000).unwrap().is_some());
        let d2 = Arc::new(delta(2, 6).unwrap());
        let mixed = coproduct(&[d2.clone(), pt.clone(), d2.clone()]).unwrap();
        assert_eq!(mixed.sset.counts(), vec![7, 6, 2]);
        mixed.sset.validate().unwrap();
        for (i, inj) in mixed.injections.iter().enumerate() {
            inj.validate().unwrap();
            let s = Simplex::nd(0, 0);
            let (j, local) = mixed.locate(&mixed.inject(i, &s));
            assert_eq!((j, local), (i, s));
        }
        let tri = Simplex::nd(2, 0);
        assert_eq!(mixed.locate(&mixed.inject(2, &tri)).0, 2);
    }
}

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::simplex::{word_to_surjection, words};
use super::{combine_caps, Cell, Simplex, SSet, SSetMap};
use crate::error::{Error, Result};

/// The cartesian product `K × L` with its pair bookkeeping.
///
/// An `n`-simplex of the product is a pair of `n`-simplices; it is
/// non-degenerate exactly when the two degeneracy words share no index.
#[derive(Clone, Debug)]
pub struct Product {
    pub sset: Arc<SSet>,
    pub left: Arc<SSet>,
    pub right: Arc<SSet>,
    pairs: Vec<Vec<(Simplex, Simplex)>>,
    index: Vec<BTreeMap<(Simplex, Simplex), usize>>,
}

fn compact(k: &SSet, s: &Simplex) -> String {
    if s.is_degenerate() {
        k.formal(s)
    } else {
        String::from(k.base_name(s))
    }
}

impl Product {
    pub fn new(k: &Arc<SSet>, l: &Arc<SSet>) -> Result<Self> {
        let (cap, truncated) = combine_caps([&**k, &**l]);
        let top = match (k.dimension(), l.dimension()) {
            (Some(p), Some(q)) => Some(p + q),
            _ => None,
        };
        let top = match top {
            None => None,
            Some(t) if truncated => Some(t.min(cap)),
            Some(t) if t > cap => return Err(Error::CapExceeded { needed: t, cap }),
            Some(t) => Some(t),
        };
        let mut pairs: Vec<Vec<(Simplex, Simplex)>> = Vec::new();
        let mut index: Vec<BTreeMap<(Simplex, Simplex), usize>> = Vec::new();
        let mut cells: Vec<Vec<Cell>> = Vec::new();
        let levels = top.map_or(0, |t| t + 1);
        for n in 0..levels {
            let mut level_pairs = Vec::new();
            for p in 0..=n.min(k.dimension().unwrap_or(0)) {
                for q in 0..=n.min(l.dimension().unwrap_or(0)) {
                    if p + q < n {
                        continue;
                    }
                    let wxs = words(n, n - p);
                    let wys = words(n, n - q);
                    for xb in 0..k.count(p) {
                        for yb in 0..l.count(q) {
                            for wx in &wxs {
                                for wy in &wys {
                                    if wx.iter().any(|i| wy.contains(i)) {
                                        continue;
                                    }
                                    level_pairs.push((
                                        Simplex {
                                            base_dim: p,
                                            base: xb,
                                            word: wx.clone(),
                                        },
                                        Simplex {
                                            base_dim: q,
                                            base: yb,
                                            word: wy.clone(),
                                        },
                                    ));
                                }
                            }
                        }
                    }
                }
            }
            level_pairs.sort();
            let idx: BTreeMap<(Simplex, Simplex), usize> = level_pairs
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), i))
                .collect();
            pairs.push(level_pairs);
            index.push(idx);
        }
        let mut prod = Product {
            sset: Arc::new(SSet::empty(cap)),
            left: k.clone(),
            right: l.clone(),
            pairs,
            index,
        };
        for n in 0..levels {
            let mut level = Vec::new();
            for (x, y) in &prod.pairs[n] {
                let faces = if n == 0 {
                    Vec::new()
                } else {
                    (0..=n)
                        .map(|i| prod.pair(&k.face(x, i), &l.face(y, i)))
                        .collect()
                };
                level.push(Cell {
                    name: format!("({},{})", compact(k, x), compact(l, y)),
                    faces,
                });
            }
            cells.push(level);
        }
        prod.sset = Arc::new(SSet::from_cells_unchecked(cells, cap, truncated)?);
        Ok(prod)
    }

    /// The simplex `(x, y)` of the product in normal form.
    pub fn pair(&self, x: &Simplex, y: &Simplex) -> Simplex {
        let n = x.dim();
        debug_assert_eq!(n, y.dim());
        let common: Vec<usize> = x.word.iter().copied().filter(|i| y.word.contains(i)).collect();
        if common.is_empty() {
            let base = self.index[n][&(x.clone(), y.clone())];
            return Simplex::nd(n, base);
        }
        let surj = word_to_surjection(&common, n);
        let mut section = Vec::new();
        for (j, &v) in surj.iter().enumerate() {
            if section.len() == v {
                section.push(j);
            }
        }
        let xs = self.left.apply(x, &section);
        let ys = self.right.apply(y, &section);
        let m = n - common.len();
        let base = self.index[m][&(xs, ys)];
        Simplex {
            base_dim: m,
            base,
            word: common,
        }
    }

    /// The two components of any simplex of the product.
    pub fn components(&self, s: &Simplex) -> (Simplex, Simplex) {
        let (x, y) = &self.pairs[s.base_dim][s.base];
        if s.word.is_empty() {
            (x.clone(), y.clone())
        } else {
            let surj = s.surjection();
            (x.degenerate_by(&surj), y.degenerate_by(&surj))
        }
    }

    pub fn generator(&self, n: usize, k: usize) -> &(Simplex, Simplex) {
        &self.pairs[n][k]
    }

    pub fn project_left(&self) -> SSetMap {
        let images = self
            .pairs
            .iter()
            .map(|l| l.iter().map(|(x, _)| x.clone()).collect())
            .collect();
        SSetMap::new_unchecked(self.sset.clone(), self.left.clone(), images)
    }

    pub fn project_right(&self) -> SSetMap {
        let images = self
            .pairs
            .iter()
            .map(|l| l.iter().map(|(_, y)| y.clone()).collect())
            .collect();
        SSetMap::new_unchecked(self.sset.clone(), self.right.clone(), images)
    }

    /// `f × g` from `self` to `to`.
    pub fn map_to(&self, to: &Product, f: &SSetMap, g: &SSetMap) -> Result<SSetMap> {
        use super::map::same;
        if !same(f.source(), &self.left)
            || !same(g.source(), &self.right)
            || !same(f.target(), &to.left)
            || !same(g.target(), &to.right)
        {
            return Err(Error::SourceTargetMismatch);
        }
        Ok(self.map_to_unchecked(to, f, g))
    }

    pub(crate) fn map_to_unchecked(&self, to: &Product, f: &SSetMap, g: &SSetMap) -> SSetMap {
        let images = self
            .pairs
            .iter()
            .map(|l| l.iter().map(|(x, y)| to.pair(&f.apply(x), &g.apply(y))).collect())
            .collect();
        SSetMap::new_unchecked(self.sset.clone(), to.sset.clone(), images)
    }

    /// The map into `self` with the given components.
    pub fn pairing(&self, f: &SSetMap, g: &SSetMap) -> Result<SSetMap> {
        use super::map::same;
        if !same(f.source(), g.source())
            || !same(f.target(), &self.left)
            || !same(g.target(), &self.right)
        {
            return Err(Error::SourceTargetMismatch);
        }
        let images = f
            .images()
            .iter()
            .zip(g.images())
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| self.pair(x, y)).collect())
            .collect();
        SSetMap::new(f.source().clone(), self.sset.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{boundary_delta, constant_sset, coproduct, delta, iso_check};

    fn arc(s: SSet) -> Arc<SSet> {
        Arc::new(s)
    }

    #[test]
    fn square_counts() {
        let d1 = arc(delta(1, 6).unwrap());
        let sq = Product::new(&d1, &d1).unwrap();
        assert_eq!(sq.sset.counts(), vec![4, 5, 2]);
        sq.sset.validate().unwrap();
        sq.project_left().validate().unwrap();
        sq.project_right().validate().unwrap();
    }

    #[test]
    fn prism_counts() {
        // Δ^1 × Δ^2: shuffles give 3 top simplices
        let d1 = arc(delta(1, 6).unwrap());
        let d2 = arc(delta(2, 6).unwrap());
        let p = Product::new(&d1, &d2).unwrap();
        assert_eq!(p.sset.counts(), vec![6, 12, 10, 3]);
        p.sset.validate().unwrap();
        assert_eq!(p.sset.euler_characteristic(), 1);
    }

    #[test]
    fn unit_law() {
        let pt = arc(delta(0, 6).unwrap());
        let b = arc(boundary_delta(2, 6).unwrap());
        let p = Product::new(&pt, &b).unwrap();
        let pr = p.project_right();
        assert!(pr.is_iso());
        assert!(iso_check(&p.sset, &b, 10_000).unwrap().is_some());
    }

    #[test]
    fn discrete_factor_gives_copies() {
        let s = arc(constant_sset(&["u", "v", "w"], 6).unwrap());
        let d1 = arc(delta(1, 6).unwrap());
        let p = Product::new(&s, &d1).unwrap();
        let copies = coproduct(&[d1.clone(), d1.clone(), d1.clone()]).unwrap();
        assert!(iso_check(&p.sset, &copies.sset, 10_000).unwrap().is_some());
    }

    #[test]
    fn cap_is_reported() {
        let d4 = arc(delta(4, 6).unwrap());
        assert!(matches!(
            Product::new(&d4, &d4),
            Err(Error::CapExceeded { needed: 8, cap: 6 })
        ));
    }

    #[test]
    fn pair_normalizes_common_degeneracies() {
        let d1 = arc(delta(1, 6).unwrap());
        let sq = Product::new(&d1, &d1).unwrap();
        let e = Simplex::nd(1, 0);
        let diag = sq.pair(&e, &e);
        let s = sq.pair(&e.degeneracy(0), &e.degeneracy(0));
        assert_eq!(s, diag.degeneracy(0));
        assert_eq!(sq.components(&s), (e.degeneracy(0), e.degeneracy(0)));
    }
}

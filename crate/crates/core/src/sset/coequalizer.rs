use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::map::same;
use super::{coproduct_tagged, Cell, Coproduct, Simplex, SSet, SSetMap};
use crate::error::{Error, Result};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// The coequalizer of `f, g: A ⇉ B`, computed levelwise by union-find and
/// renormalized: a class is a generator iff every member is one, and its
/// representative is the member with the least name.
#[derive(Clone, Debug)]
pub struct Coequalizer {
    pub sset: Arc<SSet>,
    pub projection: SSetMap,
    f: SSetMap,
    g: SSetMap,
    /// `reps[n][k]` is the index in `B` of the representative of cell `k`.
    reps: Vec<Vec<usize>>,
}

impl Coequalizer {
    pub fn new(f: &SSetMap, g: &SSetMap) -> Result<Self> {
        if !same(f.source(), g.source()) || !same(f.target(), g.target()) {
            return Err(Error::SourceTargetMismatch);
        }
        let a = f.source().clone();
        let b = f.target().clone();
        let top = if b.is_truncated() {
            Some(b.dim_cap())
        } else {
            b.dimension()
        };
        let levels = top.map_or(0, |t| t + 1);

        let mut sims: Vec<Vec<Simplex>> = Vec::new();
        let mut pos: Vec<BTreeMap<Simplex, usize>> = Vec::new();
        let mut classes: Vec<Vec<usize>> = Vec::new(); // root per simplex
        for n in 0..levels {
            let level = b.simplices(n);
            let index: BTreeMap<Simplex, usize> =
                level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
            let mut uf = UnionFind::new(level.len());
            for k in 0..a.count(n) {
                let x = Simplex::nd(n, k);
                uf.union(index[&f.apply(&x)], index[&g.apply(&x)]);
            }
            if n > 0 {
                let prev = &classes[n - 1];
                let mut first_of: BTreeMap<usize, usize> = BTreeMap::new();
                for (j, &root) in prev.iter().enumerate() {
                    match first_of.get(&root) {
                        None => {
                            first_of.insert(root, j);
                        }
                        Some(&first) => {
                            for i in 0..n {
                                let u = sims[n - 1][first].degeneracy(i);
                                let v = sims[n - 1][j].degeneracy(i);
                                uf.union(index[&u], index[&v]);
                            }
                        }
                    }
                }
            }
            let roots: Vec<usize> = (0..level.len()).map(|i| uf.find(i)).collect();
            classes.push(roots);
            sims.push(level);
            pos.push(index);
        }

        // classification of classes per level
        let mut reps: Vec<Vec<usize>> = Vec::new();
        let mut cell_of_root: Vec<BTreeMap<usize, usize>> = Vec::new();
        let mut degenerate_member: Vec<BTreeMap<usize, usize>> = Vec::new();
        for n in 0..levels {
            let mut all_nd: BTreeMap<usize, bool> = BTreeMap::new();
            let mut best: BTreeMap<usize, usize> = BTreeMap::new();
            let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
            for (i, s) in sims[n].iter().enumerate() {
                let root = classes[n][i];
                let nd = !s.is_degenerate();
                let e = all_nd.entry(root).or_insert(true);
                *e &= nd;
                if nd {
                    let better = match best.get(&root) {
                        None => true,
                        Some(&cur) => b.base_name(s) < b.base_name(&sims[n][cur]),
                    };
                    if better {
                        best.insert(root, i);
                    }
                } else {
                    deg.entry(root).or_insert(i);
                }
            }
            let mut level_reps: Vec<(usize, usize)> = all_nd
                .iter()
                .filter(|(_, &nd)| nd)
                .map(|(&root, _)| (sims[n][best[&root]].base, root))
                .collect();
            level_reps.sort();
            let mut cor = BTreeMap::new();
            for (k, &(_, root)) in level_reps.iter().enumerate() {
                cor.insert(root, k);
            }
            reps.push(level_reps.iter().map(|&(bi, _)| bi).collect());
            cell_of_root.push(cor);
            degenerate_member.push(deg);
        }

        let norm_ctx = Norm {
            sims: &sims,
            pos: &pos,
            classes: &classes,
            cell_of_root: &cell_of_root,
            degenerate_member: &degenerate_member,
        };
        let mut cells: Vec<Vec<Cell>> = Vec::new();
        for n in 0..levels {
            let mut level = Vec::new();
            for &bi in &reps[n] {
                let rep = Simplex::nd(n, bi);
                let faces = if n == 0 {
                    Vec::new()
                } else {
                    (0..=n).map(|i| norm_ctx.norm(&b.face(&rep, i))).collect()
                };
                level.push(Cell {
                    name: String::from(b.base_name(&rep)),
                    faces,
                });
            }
            cells.push(level);
        }
        let sset = Arc::new(SSet::from_cells_unchecked(cells, b.dim_cap(), b.is_truncated())?);
        let images = (0..b.dimension().map_or(0, |d| d + 1).min(levels))
            .map(|n| (0..b.count(n)).map(|k| norm_ctx.norm(&Simplex::nd(n, k))).collect())
            .collect();
        let projection = SSetMap::new_unchecked(b.clone(), sset.clone(), images);
        Ok(Coequalizer {
            sset,
            projection,
            f: f.clone(),
            g: g.clone(),
            reps,
        })
    }

    /// The generator of `B` chosen to represent cell `(n, k)`.
    pub fn representative(&self, n: usize, k: usize) -> Simplex {
        Simplex::nd(n, self.reps[n][k])
    }

    /// The unique map `Q → Z` through which `h: B → Z` factors.
    pub fn factor(&self, h: &SSetMap) -> Result<SSetMap> {
        if !same(h.source(), self.f.target()) {
            return Err(Error::SourceTargetMismatch);
        }
        let a = self.f.source();
        for n in 0..a.dimension().map_or(0, |d| d + 1) {
            for k in 0..a.count(n) {
                let x = Simplex::nd(n, k);
                if h.apply(&self.f.apply(&x)) != h.apply(&self.g.apply(&x)) {
                    return Err(Error::NotCoequalizing(a.cell(n, k).name.clone()));
                }
            }
        }
        Ok(self.factor_unchecked(h))
    }

    pub(crate) fn factor_unchecked(&self, h: &SSetMap) -> SSetMap {
        let images = self
            .reps
            .iter()
            .take(self.sset.dimension().map_or(0, |d| d + 1))
            .enumerate()
            .map(|(n, l)| l.iter().map(|&bi| h.image_of(n, bi).clone()).collect())
            .collect();
        SSetMap::new_unchecked(self.sset.clone(), h.target().clone(), images)
    }

    pub fn maps(&self) -> (&SSetMap, &SSetMap) {
        (&self.f, &self.g)
    }
}

struct Norm<'a> {
    sims: &'a [Vec<Simplex>],
    pos: &'a [BTreeMap<Simplex, usize>],
    classes: &'a [Vec<usize>],
    cell_of_root: &'a [BTreeMap<usize, usize>],
    degenerate_member: &'a [BTreeMap<usize, usize>],
}

impl Norm<'_> {
    fn norm(&self, s: &Simplex) -> Simplex {
        let n = s.dim();
        let root = self.classes[n][self.pos[n][s]];
        if let Some(&k) = self.cell_of_root[n].get(&root) {
            return Simplex::nd(n, k);
        }
        let d = &self.sims[n][self.degenerate_member[n][&root]];
        let base = self.norm(&Simplex::nd(d.base_dim, d.base));
        base.degenerate_by(&d.surjection())
    }
}

/// A pushout `B ⊔_A C` with its two legs.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub sset: Arc<SSet>,
    pub legs: [SSetMap; 2],
    pub union: Coproduct,
    pub coequalizer: Coequalizer,
}

impl Pushout {
    /// The map out of the pushout given by compatible maps on `B` and `C`.
    pub fn factor(&self, on_b: &SSetMap, on_c: &SSetMap) -> Result<SSetMap> {
        let h = self.union.copair(on_b.target(), &[on_b.clone(), on_c.clone()])?;
        self.coequalizer.factor(&h)
    }
}

pub fn pushout(f: &SSetMap, g: &SSetMap) -> Result<Pushout> {
    if !same(f.source(), g.source()) {
        return Err(Error::SourceTargetMismatch);
    }
    let union = coproduct_tagged(
        &[
            (String::from("0"), f.target().clone()),
            (String::from("1"), g.target().clone()),
        ],
        f.target().dim_cap(),
    )?;
    let left = union.injections[0].after(f)?;
    let right = union.injections[1].after(g)?;
    let coequalizer = Coequalizer::new(&left, &right)?;
    let legs = [
        coequalizer.projection.after(&union.injections[0])?,
        coequalizer.projection.after(&union.injections[1])?,
    ];
    Ok(Pushout {
        sset: coequalizer.sset.clone(),
        legs,
        union,
        coequalizer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;
    use crate::sset::{boundary_delta, delta, enumerate_maps, iso_check};

    fn endpoints() -> (SSetMap, SSetMap) {
        let pt = Arc::new(delta(0, 6).unwrap());
        let d1 = Arc::new(delta(1, 6).unwrap());
        let f = SSetMap::new(pt.clone(), d1.clone(), vec![vec![Simplex::nd(0, 0)]]).unwrap();
        let g = SSetMap::new(pt, d1, vec![vec![Simplex::nd(0, 1)]]).unwrap();
        (f, g)
    }

    #[test]
    fn circle_from_endpoints() {
        let (f, g) = endpoints();
        let q = Coequalizer::new(&f, &g).unwrap();
        assert_eq!(q.sset.counts(), vec![1, 1]);
        q.sset.validate().unwrap();
        q.projection.validate().unwrap();
        let h = homology(&q.sset, 2).unwrap();
        assert_eq!(h.betti(), vec![1, 1, 0]);
    }

    #[test]
    fn trivial_coequalizer_is_identity() {
        let (f, _) = endpoints();
        let q = Coequalizer::new(&f, &f).unwrap();
        assert!(q.projection.is_iso());
    }

    #[test]
    fn collapsing_an_edge_degenerates_it() {
        // identify Δ^1 with its collapse: coequalize id and the constant map
        let d1 = Arc::new(delta(1, 6).unwrap());
        let id = SSetMap::identity(&d1);
        let c = SSetMap::constant(&d1, &d1, 0);
        let q = Coequalizer::new(&id, &c).unwrap();
        assert_eq!(q.sset.counts(), vec![1]);
        assert_eq!(q.projection.image_of(1, 0), &Simplex::nd(0, 0).degeneracy(0));
    }

    #[test]
    fn universal_property_by_enumeration() {
        let (f, g) = endpoints();
        let q = Coequalizer::new(&f, &g).unwrap();
        for target in [delta(1, 6).unwrap(), boundary_delta(2, 6).unwrap()] {
            let z = Arc::new(target);
            let all = enumerate_maps(f.target(), &z, 100_000).unwrap();
            let from_q = enumerate_maps(&q.sset, &z, 100_000).unwrap();
            let coequalizing: Vec<&SSetMap> = all
                .iter()
                .filter(|h| h.after(&f).unwrap() == h.after(&g).unwrap())
                .collect();
            assert_eq!(coequalizing.len(), from_q.len());
            for h in coequalizing {
                let u = q.factor(h).unwrap();
                assert_eq!(&u.after(&q.projection).unwrap(), h);
                let matches = from_q
                    .iter()
                    .filter(|v| v.after(&q.projection).unwrap() == *h)
                    .count();
                assert_eq!(matches, 1);
            }
        }
    }

    #[test]
    fn pushout_glues_endpoints() {
        let s0 = Arc::new(boundary_delta(1, 6).unwrap());
        let pt = Arc::new(delta(0, 6).unwrap());
        let d1 = Arc::new(delta(1, 6).unwrap());
        let inc = SSetMap::new(s0.clone(), d1.clone(), vec![vec![Simplex::nd(0, 0), Simplex::nd(0, 1)]]).unwrap();
        let collapse = SSetMap::constant(&s0, &pt, 0);
        let p = pushout(&inc, &collapse).unwrap();
        let (f, g) = endpoints();
        let circle = Coequalizer::new(&f, &g).unwrap();
        assert!(iso_check(&p.sset, &circle.sset, 10_000).unwrap().is_some());
        assert_eq!(p.legs[0].after(&inc).unwrap(), p.legs[1].after(&collapse).unwrap());
        let along_id = pushout(&SSetMap::identity(&s0), &collapse).unwrap();
        assert!(iso_check(&along_id.sset, &pt, 1000).unwrap().is_some());
    }
}

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{Simplex, SSet, SSetMap};
use crate::error::{Error, Result};

/// All simplicial maps `K → L`, assigning generators in order of dimension
/// and then index, with candidate images taken in the order of
/// [`SSet::simplices`].
pub fn enumerate_maps(k: &Arc<SSet>, l: &Arc<SSet>, budget: usize) -> Result<Vec<SSetMap>> {
    let levels = k.dimension().map_or(0, |d| d + 1);
    if levels > 0 && l.is_truncated() && levels - 1 > l.dim_cap() {
        return Err(Error::CapExceeded {
            needed: levels - 1,
            cap: l.dim_cap(),
        });
    }
    let mut by_faces: Vec<BTreeMap<Vec<Simplex>, Vec<Simplex>>> = Vec::new();
    for n in 0..levels {
        let mut m: BTreeMap<Vec<Simplex>, Vec<Simplex>> = BTreeMap::new();
        for s in l.simplices(n) {
            let key: Vec<Simplex> = if n == 0 {
                Vec::new()
            } else {
                (0..=n).map(|i| l.face(&s, i)).collect()
            };
            m.entry(key).or_default().push(s);
        }
        by_faces.push(m);
    }
    let order: Vec<(usize, usize)> = (0..levels)
        .flat_map(|n| (0..k.count(n)).map(move |i| (n, i)))
        .collect();
    let mut images: Vec<Vec<Simplex>> = (0..levels)
        .map(|n| vec![Simplex::nd(0, 0); k.count(n)])
        .collect();
    let mut out = Vec::new();
    let mut nodes = 0usize;
    let ctx = Enum {
        k,
        l,
        by_faces: &by_faces,
        order: &order,
        budget,
    };
    ctx.search(0, &mut images, &mut nodes, &mut out)?;
    Ok(out)
}

struct Enum<'a> {
    k: &'a Arc<SSet>,
    l: &'a Arc<SSet>,
    by_faces: &'a [BTreeMap<Vec<Simplex>, Vec<Simplex>>],
    order: &'a [(usize, usize)],
    budget: usize,
}

impl Enum<'_> {
    fn image(&self, images: &[Vec<Simplex>], s: &Simplex) -> Simplex {
        let img = &images[s.base_dim][s.base];
        if s.word.is_empty() {
            img.clone()
        } else {
            self.l.apply(img, &s.surjection())
        }
    }

    fn search(
        &self,
        pos: usize,
        images: &mut Vec<Vec<Simplex>>,
        nodes: &mut usize,
        out: &mut Vec<SSetMap>,
    ) -> Result<()> {
        if pos == self.order.len() {
            out.push(SSetMap::new_unchecked(
                self.k.clone(),
                self.l.clone(),
                images.clone(),
            ));
            return Ok(());
        }
        let (n, i) = self.order[pos];
        let key: Vec<Simplex> = self
            .k
            .cell(n, i)
            .faces
            .iter()
            .map(|f| self.image(images, f))
            .collect();
        let Some(cands) = self.by_faces[n].get(&key) else {
            return Ok(());
        };
        for c in cands {
            *nodes += 1;
            if *nodes > self.budget {
                return Err(Error::SearchBudgetExceeded(self.budget));
            }
            images[n][i] = c.clone();
            self.search(pos + 1, images, nodes, out)?;
        }
        Ok(())
    }
}

struct Flat {
    offsets: Vec<usize>,
    dims: Vec<usize>,
    locals: Vec<usize>,
}

impl Flat {
    fn new(s: &SSet) -> Self {
        let mut offsets = Vec::new();
        let mut dims = Vec::new();
        let mut locals = Vec::new();
        for n in 0..s.dimension().map_or(0, |d| d + 1) {
            offsets.push(dims.len());
            for i in 0..s.count(n) {
                dims.push(n);
                locals.push(i);
            }
        }
        Flat {
            offsets,
            dims,
            locals,
        }
    }

    fn id(&self, s: &Simplex) -> usize {
        self.offsets[s.base_dim] + s.base
    }

    fn len(&self) -> usize {
        self.dims.len()
    }
}

type Signature = (usize, Vec<(Vec<usize>, usize)>, Vec<(usize, usize, Vec<usize>)>);

fn signatures(s: &SSet, flat: &Flat, colour: &[usize]) -> Vec<Signature> {
    let mut cofaces: Vec<Vec<(usize, usize, Vec<usize>)>> = vec![Vec::new(); flat.len()];
    let mut faces: Vec<Vec<(Vec<usize>, usize)>> = vec![Vec::new(); flat.len()];
    for c in 0..flat.len() {
        let cell = s.cell(flat.dims[c], flat.locals[c]);
        for (i, f) in cell.faces.iter().enumerate() {
            let b = flat.id(f);
            faces[c].push((f.word.clone(), colour[b]));
            cofaces[b].push((colour[c], i, f.word.clone()));
        }
    }
    (0..flat.len())
        .map(|c| {
            let mut co = core::mem::take(&mut cofaces[c]);
            co.sort();
            (colour[c], core::mem::take(&mut faces[c]), co)
        })
        .collect()
}

/// Searches for an isomorphism `K ≅ L` and returns it with its inverse.
///
/// Candidates are pruned by colour refinement over face and coface
/// incidences; the search then assigns generators from the top dimension
/// down, propagating through faces. `Ok(None)` means no isomorphism exists;
/// running out of budget is an error, never a negative answer.
pub fn iso_check(k: &Arc<SSet>, l: &Arc<SSet>, budget: usize) -> Result<Option<(SSetMap, SSetMap)>> {
    if k.counts() != l.counts() {
        return Ok(None);
    }
    let (fk, fl) = (Flat::new(k), Flat::new(l));
    let mut ck: Vec<usize> = fk.dims.clone();
    let mut cl: Vec<usize> = fl.dims.clone();
    let mut classes = 0;
    loop {
        let sk = signatures(k, &fk, &ck);
        let sl = signatures(l, &fl, &cl);
        let mut dict: BTreeMap<&Signature, usize> = BTreeMap::new();
        for sig in sk.iter().chain(sl.iter()) {
            dict.entry(sig).or_insert(0);
        }
        for (i, v) in dict.values_mut().enumerate() {
            *v = i;
        }
        let nk: Vec<usize> = sk.iter().map(|s| dict[s]).collect();
        let nl: Vec<usize> = sl.iter().map(|s| dict[s]).collect();
        let count = dict.len();
        ck = nk;
        cl = nl;
        if count == classes {
            break;
        }
        classes = count;
    }
    let mut hist: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for &c in &ck {
        hist.entry(c).or_default().0 += 1;
    }
    for &c in &cl {
        hist.entry(c).or_default().1 += 1;
    }
    if hist.values().any(|(a, b)| a != b) {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..fk.len()).collect();
    order.sort_by_key(|&c| (core::cmp::Reverse(fk.dims[c]), hist[&ck[c]].0, c));
    let mut by_colour: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (c, &col) in cl.iter().enumerate() {
        by_colour.entry(col).or_default().push(c);
    }
    let mut search = IsoSearch {
        k,
        l,
        fk: &fk,
        fl: &fl,
        ck: &ck,
        cl: &cl,
        fwd: vec![None; fk.len()],
        bwd: vec![None; fl.len()],
        trail: Vec::new(),
        nodes: 0,
        budget,
    };
    if !search.run(&order, 0, &by_colour)? {
        return Ok(None);
    }
    let k_arc = k.clone();
    let l_arc = l.clone();
    let build = |from: &SSet, flat_from: &Flat, flat_to: &Flat, table: &[Option<usize>]| {
        (0..from.dimension().map_or(0, |d| d + 1))
            .map(|n| {
                (0..from.count(n))
                    .map(|i| {
                        let t = table[flat_from.offsets[n] + i].expect("complete assignment");
                        Simplex::nd(flat_to.dims[t], flat_to.locals[t])
                    })
                    .collect()
            })
            .collect::<Vec<Vec<Simplex>>>()
    };
    let f = SSetMap::new(k_arc.clone(), l_arc.clone(), build(k, &fk, &fl, &search.fwd))?;
    let g = SSetMap::new(l_arc, k_arc, build(l, &fl, &fk, &search.bwd))?;
    debug_assert!(g.after(&f).map(|m| m.is_identity()).unwrap_or(false));
    Ok(Some((f, g)))
}

struct IsoSearch<'a> {
    k: &'a SSet,
    l: &'a SSet,
    fk: &'a Flat,
    fl: &'a Flat,
    ck: &'a [usize],
    cl: &'a [usize],
    fwd: Vec<Option<usize>>,
    bwd: Vec<Option<usize>>,
    trail: Vec<usize>,
    nodes: usize,
    budget: usize,
}

impl IsoSearch<'_> {
    fn assign(&mut self, a: usize, b: usize) -> bool {
        if self.ck[a] != self.cl[b] {
            return false;
        }
        match (self.fwd[a], self.bwd[b]) {
            (Some(x), _) => return x == b,
            (None, Some(_)) => return false,
            (None, None) => {}
        }
        self.fwd[a] = Some(b);
        self.bwd[b] = Some(a);
        self.trail.push(a);
        let ka = self.k.cell(self.fk.dims[a], self.fk.locals[a]);
        let lb = self.l.cell(self.fl.dims[b], self.fl.locals[b]);
        for (x, y) in ka.faces.iter().zip(&lb.faces) {
            if x.word != y.word {
                return false;
            }
            if !self.assign(self.fk.id(x), self.fl.id(y)) {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().expect("non-empty trail");
            let b = self.fwd[a].take().expect("assigned");
            self.bwd[b] = None;
        }
    }

    fn run(
        &mut self,
        order: &[usize],
        pos: usize,
        by_colour: &BTreeMap<usize, Vec<usize>>,
    ) -> Result<bool> {
        let Some(&a) = order.get(pos) else {
            return Ok(true);
        };
        if self.fwd[a].is_some() {
            return self.run(order, pos + 1, by_colour);
        }
        let cands = by_colour.get(&self.ck[a]).cloned().unwrap_or_default();
        for b in cands {
            if self.bwd[b].is_some() {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded(self.budget));
            }
            let mark = self.trail.len();
            if self.assign(a, b) && self.run(order, pos + 1, by_colour)? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::sset::{boundary_delta, delta, Nerve};

    #[test]
    fn self_iso_is_identity() {
        let d2 = Arc::new(delta(2, 6).unwrap());
        let (f, g) = iso_check(&d2, &d2, 1000).unwrap().unwrap();
        assert!(f.is_identity());
        assert!(g.is_identity());
    }

    #[test]
    fn delta_one_vs_nerve_of_interval() {
        let n = Nerve::new(&corpus::interval(), None).unwrap();
        assert!(iso_check(&Arc::new(delta(1, 6).unwrap()), &n.sset, 1000).unwrap().is_some());
        assert!(iso_check(&Arc::new(delta(1, 6).unwrap()), &Arc::new(boundary_delta(1, 6).unwrap()), 1000)
            .unwrap()
            .is_none());
    }

    #[test]
    fn orientation_matters() {
        // a←b→c versus a→b←c: same counts, not isomorphic
        let span = Nerve::new(&corpus::span(), None).unwrap();
        let cospan = Nerve::new(&corpus::cospan(), None).unwrap();
        assert!(iso_check(&span.sset, &cospan.sset, 1000).unwrap().is_none());
        assert!(iso_check(&span.sset, &span.sset, 1000).unwrap().is_some());
    }

    #[test]
    fn budget_is_an_error_not_an_answer() {
        let big = Arc::new(boundary_delta(3, 6).unwrap());
        assert!(matches!(
            iso_check(&big, &big, 0),
            Err(Error::SearchBudgetExceeded(0))
        ));
    }

    #[test]
    fn map_counts() {
        let pt = Arc::new(delta(0, 6).unwrap());
        let d1 = Arc::new(delta(1, 6).unwrap());
        let d2 = Arc::new(delta(2, 6).unwrap());
        let s0 = Arc::new(boundary_delta(1, 6).unwrap());
        assert_eq!(enumerate_maps(&pt, &d2, 100).unwrap().len(), 3);
        assert_eq!(enumerate_maps(&d1, &d1, 100).unwrap().len(), 3);
        assert_eq!(enumerate_maps(&s0, &pt, 100).unwrap().len(), 1);
        // monotone maps [2] → [2]
        assert_eq!(enumerate_maps(&d2, &d2, 1000).unwrap().len(), 10);
        let maps = enumerate_maps(&d1, &d1, 100).unwrap();
        assert_eq!(maps.iter().filter(|m| m.is_identity()).count(), 1);
    }
}

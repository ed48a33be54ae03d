use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{delta, Cell, Product, Simplex, SSet, SSetMap};
use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, CatNatTrans, FinCat};

/// The nerve of a finite category.
///
/// Generators of dimension `n` are chains `a0 → a1 → … → an` of `n`
/// composable non-identity morphisms. `d_0` drops the first arrow, `d_n` the
/// last, and `d_i` composes the arrows at vertex `i`. Vertices are named by
/// object ids and chains by `[f1,…,fn]`.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub sset: Arc<SSet>,
    pub category: FinCat,
    chains: Vec<Vec<Vec<usize>>>,
    lookup: Vec<BTreeMap<Vec<usize>, usize>>,
}

impl Nerve {
    /// Exact for loop-free categories; otherwise `cap` is required and the
    /// result is truncated there.
    pub fn new(c: &FinCat, cap: Option<usize>) -> Result<Self> {
        let loop_free = c.is_loop_free();
        if !loop_free && cap.is_none() {
            return Err(Error::TruncationRequired);
        }
        let limit = if loop_free { usize::MAX } else { cap.unwrap_or(0) };
        let mut chains: Vec<Vec<Vec<usize>>> = Vec::new();
        chains.push((0..c.n_objects()).map(|_| Vec::new()).collect());
        if c.n_objects() > 0 {
            let edges: Vec<Vec<usize>> = (0..c.n_morphisms())
                .filter(|&m| !c.is_identity(m))
                .map(|m| alloc::vec![m])
                .collect();
            let mut current = edges;
            let mut n = 1;
            while !current.is_empty() && n <= limit {
                let mut next = Vec::new();
                for ch in &current {
                    let last = c.morphism(*ch.last().expect("non-empty chain")).tgt;
                    for m in 0..c.n_morphisms() {
                        if !c.is_identity(m) && c.morphism(m).src == last {
                            let mut e = ch.clone();
                            e.push(m);
                            next.push(e);
                        }
                    }
                }
                chains.push(current);
                current = next;
                n += 1;
            }
        }
        while chains.len() > 1 && chains.last().is_some_and(|l| l.is_empty()) {
            chains.pop();
        }
        if c.n_objects() == 0 {
            chains.clear();
        }
        let top = chains.len().saturating_sub(1);
        let (dim_cap, truncated) = match cap {
            _ if !loop_free => (limit, true),
            Some(k) => (k.max(top), false),
            None => (crate::DEFAULT_DIM_CAP.max(top), false),
        };
        let lookup: Vec<BTreeMap<Vec<usize>, usize>> = chains
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, ch)| (ch.clone(), i)).collect())
            .collect();
        let mut nerve = Nerve {
            sset: Arc::new(SSet::empty(dim_cap)),
            category: c.clone(),
            chains,
            lookup,
        };
        let mut cells = Vec::new();
        for (n, level) in nerve.chains.iter().enumerate() {
            let mut out = Vec::new();
            for (k, ch) in level.iter().enumerate() {
                if n == 0 {
                    out.push(Cell {
                        name: c.object(k).to_string(),
                        faces: Vec::new(),
                    });
                    continue;
                }
                let start = c.morphism(ch[0]).src;
                let faces = (0..=n).map(|i| nerve.face_of_chain(start, ch, i)).collect();
                let names: Vec<&str> = ch.iter().map(|&m| c.morphism(m).id.as_str()).collect();
                out.push(Cell {
                    name: alloc::format!("[{}]", names.join(",")),
                    faces,
                });
            }
            cells.push(out);
        }
        nerve.sset = Arc::new(SSet::from_cells_unchecked(cells, dim_cap, truncated)?);
        Ok(nerve)
    }

    fn face_of_chain(&self, start: usize, ch: &[usize], i: usize) -> Simplex {
        let c = &self.category;
        let n = ch.len();
        let (s, list): (usize, Vec<usize>) = if i == 0 {
            (c.morphism(ch[0]).tgt, ch[1..].to_vec())
        } else if i == n {
            (start, ch[..n - 1].to_vec())
        } else {
            let mut l = ch[..i - 1].to_vec();
            l.push(c.compose(ch[i], ch[i - 1]).expect("composable chain"));
            l.extend_from_slice(&ch[i + 1..]);
            (start, l)
        };
        self.simplex_of_chain(s, &list)
    }

    /// The simplex of a chain that may contain identities.
    pub fn simplex_of_chain(&self, start: usize, chain: &[usize]) -> Simplex {
        let c = &self.category;
        let mut word = Vec::new();
        let mut base = Vec::new();
        for (j, &m) in chain.iter().enumerate() {
            if c.is_identity(m) {
                word.push(j);
            } else {
                base.push(m);
            }
        }
        word.reverse();
        if base.is_empty() {
            return Simplex {
                base_dim: 0,
                base: start,
                word,
            };
        }
        let idx = self.lookup[base.len()][&base];
        Simplex {
            base_dim: base.len(),
            base: idx,
            word,
        }
    }

    /// The first object and the full chain (identities included) of any
    /// simplex.
    pub fn chain_of(&self, s: &Simplex) -> (usize, Vec<usize>) {
        let c = &self.category;
        let n = s.dim();
        let start = self.sset.vertex(s, 0).base;
        let mut mors = Vec::with_capacity(n);
        for j in 0..n {
            let e = self.sset.apply(s, &[j, j + 1]);
            if e.base_dim == 1 {
                mors.push(self.chains[1][e.base][0]);
            } else {
                mors.push(c.identity(e.base));
            }
        }
        (start, mors)
    }

    /// Object at each vertex.
    pub fn objects_of(&self, s: &Simplex) -> Vec<usize> {
        self.sset.vertices(s)
    }

    pub fn generator_chain(&self, n: usize, k: usize) -> &[usize] {
        &self.chains[n][k]
    }

    pub fn vertex_of(&self, object: usize) -> Simplex {
        Simplex::nd(0, object)
    }
}

/// The induced map of nerves.
pub fn nerve_of_functor(f: &CatFunctor, source: &Nerve, target: &Nerve) -> Result<SSetMap> {
    if f.source() != &source.category || f.target() != &target.category {
        return Err(Error::InvalidFunctor("nerves of other categories supplied".into()));
    }
    let levels = source.sset.dimension().map_or(0, |d| d + 1);
    let images = (0..levels)
        .map(|n| {
            (0..source.sset.count(n))
                .map(|k| {
                    let s = Simplex::nd(n, k);
                    let (start, ch) = source.chain_of(&s);
                    let mapped: Vec<usize> = ch.iter().map(|&m| f.on_morphism(m)).collect();
                    target.simplex_of_chain(f.on_object(start), &mapped)
                })
                .collect()
        })
        .collect();
    SSetMap::new(source.sset.clone(), target.sset.clone(), images)
}

/// A simplicial homotopy `Δ^1 × B(A) → B(B)` built from `ν: F ⇒ G`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub prism: Product,
    pub map: SSetMap,
}

impl Homotopy {
    /// The restriction `H|_e` to the end `e ∈ {0, 1}` as a map `B(A) → B(B)`.
    pub fn end(&self, e: usize) -> SSetMap {
        let base = &self.prism.right;
        let images = (0..base.dimension().map_or(0, |d| d + 1))
            .map(|n| {
                (0..base.count(n))
                    .map(|k| {
                        let t = Simplex {
                            base_dim: 0,
                            base: e,
                            word: (0..n).rev().collect(),
                        };
                        self.map.apply(&self.prism.pair(&t, &Simplex::nd(n, k)))
                    })
                    .collect()
            })
            .collect();
        SSetMap::new_unchecked(base.clone(), self.map.target().clone(), images)
    }
}

/// The prism homotopy of a natural transformation: on a chain `x` paired with
/// `t: [n] → [1]`, arrows over `0` go through `F`, over `1` through `G`, and
/// the arrow crossing from `0` to `1` at vertex `j` becomes `ν_{a_j} ∘ F(f_j)`.
pub fn homotopy_from_nat_trans(nu: &CatNatTrans, source: &Nerve, target: &Nerve) -> Result<Homotopy> {
    nu.validate()?;
    let (f, g) = (nu.source(), nu.target());
    if f.source() != &source.category || f.target() != &target.category {
        return Err(Error::InvalidNatTrans("nerves of other categories supplied".into()));
    }
    let b = &target.category;
    let interval = Arc::new(delta(1, source.sset.dim_cap() + 1)?);
    let prism = Product::new(&interval, &source.sset)?;
    let levels = prism.sset.dimension().map_or(0, |d| d + 1);
    let mut images = Vec::with_capacity(levels);
    for n in 0..levels {
        let mut level = Vec::with_capacity(prism.sset.count(n));
        for k in 0..prism.sset.count(n) {
            let (t, x) = prism.generator(n, k).clone();
            let ts = interval.vertices(&t);
            let (start, ch) = source.chain_of(&x);
            let objs = source.objects_of(&x);
            let first = if ts[0] == 0 { f.on_object(start) } else { g.on_object(start) };
            let mut mors = Vec::with_capacity(n);
            for j in 1..=n {
                let m = match (ts[j - 1], ts[j]) {
                    (0, 0) => f.on_morphism(ch[j - 1]),
                    (1, 1) => g.on_morphism(ch[j - 1]),
                    _ => b
                        .compose(nu.component(objs[j]), f.on_morphism(ch[j - 1]))
                        .expect("component composes"),
                };
                mors.push(m);
            }
            level.push(target.simplex_of_chain(first, &mors));
        }
        images.push(level);
    }
    let map = SSetMap::new(prism.sset.clone(), target.sset.clone(), images)?;
    Ok(Homotopy { prism, map })
}

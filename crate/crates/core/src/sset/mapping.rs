use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::simplex::{codegeneracy, coface, epi_mono};
use super::{delta, enumerate_maps, identity_theta, vertex_list_name, Cell, Product, Simplex, SSet, SSetMap};
use crate::error::{Error, Result};

/// The map `Δ^a → Δ^b` induced by a monotone `θ: [a] → [b]`.
pub fn delta_map(from: &Arc<SSet>, to: &Arc<SSet>, theta: &[usize]) -> SSetMap {
    let images = (0..from.dimension().map_or(0, |d| d + 1))
        .map(|m| {
            (0..from.count(m))
                .map(|i| {
                    let vs: Vec<usize> = from
                        .vertices(&Simplex::nd(m, i))
                        .iter()
                        .map(|&v| theta[v])
                        .collect();
                    let (epi, image) = epi_mono(&vs);
                    let base = to.lookup(&vertex_list_name(&image)).expect("face of the simplex");
                    base.degenerate_by(&epi)
                })
                .collect()
        })
        .collect();
    SSetMap::new_unchecked(from.clone(), to.clone(), images)
}

/// `Map(K, L)` through simplicial degree `q_max`: its `q`-simplices are the
/// maps `K × Δ^q → L`.
#[derive(Clone, Debug)]
pub struct MapSpace {
    pub sset: Arc<SSet>,
    pub source: Arc<SSet>,
    pub target: Arc<SSet>,
    pub q_max: usize,
    deltas: Vec<Arc<SSet>>,
    prods: Vec<Product>,
    generators: Vec<Vec<SSetMap>>,
    index: Vec<BTreeMap<Vec<Vec<Simplex>>, usize>>,
    /// `face_maps[q][j] = id × δ^j: K × Δ^{q−1} → K × Δ^q`
    face_maps: Vec<Vec<SSetMap>>,
    /// `degeneracy_maps[q][j] = id × σ^j: K × Δ^q → K × Δ^{q−1}`
    degeneracy_maps: Vec<Vec<SSetMap>>,
}

impl MapSpace {
    pub fn new(k: &Arc<SSet>, l: &Arc<SSet>, q_max: usize, budget: usize) -> Result<Self> {
        if k.is_truncated() {
            return Err(Error::CapExceeded {
                needed: k.dim_cap() + 1,
                cap: k.dim_cap(),
            });
        }
        let dk = k.dimension().unwrap_or(0);
        let cap = (dk + q_max).max(k.dim_cap());
        let mut deltas = Vec::new();
        let mut prods = Vec::new();
        for q in 0..=q_max {
            let d = Arc::new(delta(q, cap)?);
            prods.push(Product::new(k, &d)?);
            deltas.push(d);
        }
        let mut face_maps: Vec<Vec<SSetMap>> = alloc::vec![Vec::new()];
        let mut degeneracy_maps: Vec<Vec<SSetMap>> = alloc::vec![Vec::new()];
        let id_k = SSetMap::identity(k);
        for q in 1..=q_max {
            let faces = (0..=q)
                .map(|j| {
                    let dm = delta_map(&deltas[q - 1], &deltas[q], &coface(q, j));
                    prods[q - 1].map_to_unchecked(&prods[q], &id_k, &dm)
                })
                .collect();
            let degs = (0..q)
                .map(|j| {
                    let dm = delta_map(&deltas[q], &deltas[q - 1], &codegeneracy(q, j));
                    prods[q].map_to_unchecked(&prods[q - 1], &id_k, &dm)
                })
                .collect();
            face_maps.push(faces);
            degeneracy_maps.push(degs);
        }
        let mut space = MapSpace {
            sset: Arc::new(SSet::empty(q_max)),
            source: k.clone(),
            target: l.clone(),
            q_max,
            deltas,
            prods,
            generators: Vec::new(),
            index: Vec::new(),
            face_maps,
            degeneracy_maps,
        };
        let mut cells: Vec<Vec<Cell>> = Vec::new();
        for q in 0..=q_max {
            let all = enumerate_maps(&space.prods[q].sset, l, budget)?;
            let mut gens = Vec::new();
            for f in all {
                let degenerate = (0..q).any(|j| {
                    let g = f.after(&space.face_maps[q][j]).expect("composable");
                    g.after(&space.degeneracy_maps[q][j]).expect("composable") == f
                });
                if !degenerate {
                    gens.push(f);
                }
            }
            let idx: BTreeMap<Vec<Vec<Simplex>>, usize> = gens
                .iter()
                .enumerate()
                .map(|(i, f)| (f.images().to_vec(), i))
                .collect();
            space.generators.push(gens);
            space.index.push(idx);
            let level = (0..space.generators[q].len())
                .map(|i| {
                    let f = &space.generators[q][i];
                    let faces = if q == 0 {
                        Vec::new()
                    } else {
                        (0..=q)
                            .map(|j| space.simplex_of(q - 1, &f.after(&space.face_maps[q][j]).expect("composable")))
                            .collect()
                    };
                    Cell {
                        name: format!("f{q}.{i}"),
                        faces,
                    }
                })
                .collect();
            cells.push(level);
        }
        space.sset = Arc::new(SSet::from_cells_unchecked(cells, q_max, true)?);
        Ok(space)
    }

    /// Normal form of a map `K × Δ^q → L` as a `q`-simplex.
    pub fn simplex_of(&self, q: usize, f: &SSetMap) -> Simplex {
        for j in 0..q {
            let g = f.after(&self.face_maps[q][j]).expect("composable");
            if g.after(&self.degeneracy_maps[q][j]).expect("composable") == *f {
                return self.simplex_of(q - 1, &g).degeneracy(j);
            }
        }
        Simplex::nd(q, self.index[q][f.images()])
    }

    /// The map `K × Δ^n → L` represented by an `n`-simplex.
    pub fn materialize(&self, s: &Simplex) -> SSetMap {
        let base = &self.generators[s.base_dim][s.base];
        if s.word.is_empty() {
            return base.clone();
        }
        let n = s.dim();
        let dm = delta_map(&self.deltas[n], &self.deltas[s.base_dim], &s.surjection());
        let pre = self.prods[n].map_to_unchecked(&self.prods[s.base_dim], &SSetMap::identity(&self.source), &dm);
        base.after(&pre).expect("composable")
    }

    /// Evaluation `Map(K, L) × K → L` on a pair of `n`-simplices.
    ///
    /// Works in every dimension: a degenerate `m = σ^* f` is evaluated as
    /// `f(x, σ)` with `σ` read as a simplex of `Δ^k`.
    pub fn evaluate(&self, m: &Simplex, x: &Simplex) -> Simplex {
        let k = m.base_dim;
        let f = &self.generators[k][m.base];
        let (epi, image) = epi_mono(&m.surjection());
        let delta = &self.deltas[k];
        let t = delta
            .lookup(&vertex_list_name(&image))
            .expect("face of the simplex")
            .degenerate_by(&epi);
        f.apply(&self.prods[k].pair(x, &t))
    }

    /// `Map(pre, post): Map(K, L) → Map(K', L')`, `f ↦ post ∘ f ∘ (pre × id)`.
    pub fn induced(&self, to: &MapSpace, pre: &SSetMap, post: &SSetMap) -> Result<SSetMap> {
        if to.q_max != self.q_max {
            return Err(Error::CapExceeded {
                needed: self.q_max,
                cap: to.q_max,
            });
        }
        use super::map::same;
        if !same(pre.source(), &to.source)
            || !same(pre.target(), &self.source)
            || !same(post.source(), &self.target)
            || !same(post.target(), &to.target)
        {
            return Err(Error::SourceTargetMismatch);
        }
        let levels = self.sset.dimension().map_or(0, |d| d + 1);
        let mut images = Vec::with_capacity(levels);
        for q in 0..levels {
            let dm = delta_map(&to.deltas[q], &self.deltas[q], &identity_theta(q));
            let restrict = to.prods[q].map_to_unchecked(&self.prods[q], pre, &dm);
            let level = self.generators[q]
                .iter()
                .map(|f| {
                    let g = post.after(&f.after(&restrict)?)?;
                    Ok(to.simplex_of(q, &g))
                })
                .collect::<Result<Vec<_>>>()?;
            images.push(level);
        }
        SSetMap::new(self.sset.clone(), to.sset.clone(), images)
    }

    /// The `n`-simplex of the map `K × Δ^n → L` sending `(x, t)` to
    /// `f(x, θ)`, where `θ` is the vertex list of `t`.
    pub fn simplex_from(&self, n: usize, f: impl Fn(&Simplex, &[usize]) -> Simplex) -> Result<Simplex> {
        let prod = &self.prods[n];
        let images = (0..prod.sset.dimension().map_or(0, |d| d + 1))
            .map(|m| {
                (0..prod.sset.count(m))
                    .map(|k| {
                        let (x, t) = prod.generator(m, k);
                        f(x, &self.deltas[n].vertices(t))
                    })
                    .collect()
            })
            .collect();
        let g = SSetMap::new(prod.sset.clone(), self.target.clone(), images)?;
        Ok(self.simplex_of(n, &g))
    }

    pub fn generator(&self, q: usize, i: usize) -> &SSetMap {
        &self.generators[q][i]
    }
}

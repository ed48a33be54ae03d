//! Finite categories given by total composition tables, functors and natural
//! transformations between them, and the derived categories (opposite,
//! product, full subcategory, slices and double slices) that index diagrams.
//!
//! Object and morphism ids are strings. Derived categories generate their ids
//! from their constituents and list objects and morphisms in lexicographic
//! order of those ids, so two independent constructions compare equal.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// Declarative input for [`FinCat::new`].
///
/// Missing identities are inserted as `id_<object>`; composites involving an
/// identity may be omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    /// `(id, source, target)`
    pub morphisms: Vec<(String, String, String)>,
    pub identities: BTreeMap<String, String>,
    /// `(g, f, g∘f)`
    pub compose: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    table: Vec<Option<usize>>,
    homs: Vec<Vec<usize>>,
    obj_index: BTreeMap<String, usize>,
    mor_index: BTreeMap<String, usize>,
}

impl FinCat {
    /// Validates a category description: totality of the composition table,
    /// unit laws and associativity are all checked exhaustively.
    pub fn new(spec: &CategorySpec) -> Result<Self> {
        let mut obj_index = BTreeMap::new();
        for (i, o) in spec.objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(Error::DuplicateId(o.clone()));
            }
        }
        let lookup_obj = |o: &String| {
            obj_index
                .get(o)
                .copied()
                .ok_or_else(|| Error::UnknownObject(o.clone()))
        };
        let mut morphisms = Vec::new();
        let mut mor_index = BTreeMap::new();
        for (id, s, t) in &spec.morphisms {
            let (src, tgt) = (lookup_obj(s)?, lookup_obj(t)?);
            if mor_index.insert(id.clone(), morphisms.len()).is_some() {
                return Err(Error::DuplicateId(id.clone()));
            }
            morphisms.push(Morphism {
                id: id.clone(),
                src,
                tgt,
            });
        }
        let mut identity = vec![usize::MAX; spec.objects.len()];
        for (o, m) in &spec.identities {
            let oi = lookup_obj(o)?;
            let mi = *mor_index
                .get(m)
                .ok_or_else(|| Error::UnknownMorphism(m.clone()))?;
            if morphisms[mi].src != oi || morphisms[mi].tgt != oi {
                return Err(Error::BadIdentity(o.clone()));
            }
            identity[oi] = mi;
        }
        for (oi, o) in spec.objects.iter().enumerate() {
            if identity[oi] == usize::MAX {
                let id = format!("id_{o}");
                if mor_index.insert(id.clone(), morphisms.len()).is_some() {
                    return Err(Error::DuplicateId(id));
                }
                identity[oi] = morphisms.len();
                morphisms.push(Morphism {
                    id,
                    src: oi,
                    tgt: oi,
                });
            }
        }

        let n = morphisms.len();
        let mut table: Vec<Option<usize>> = vec![None; n * n];
        let lookup_mor = |m: &String| {
            mor_index
                .get(m)
                .copied()
                .ok_or_else(|| Error::UnknownMorphism(m.clone()))
        };
        for (g, f, gf) in &spec.compose {
            let (gi, fi, gfi) = (lookup_mor(g)?, lookup_mor(f)?, lookup_mor(gf)?);
            let (mg, mf, mgf) = (&morphisms[gi], &morphisms[fi], &morphisms[gfi]);
            if mf.tgt != mg.src || mgf.src != mf.src || mgf.tgt != mg.tgt {
                return Err(Error::BadComposite {
                    g: g.clone(),
                    f: f.clone(),
                    gf: gf.clone(),
                });
            }
            match table[gi * n + fi] {
                Some(prev) if prev != gfi => {
                    return Err(Error::ConflictingComposite {
                        g: g.clone(),
                        f: f.clone(),
                        first: morphisms[prev].id.clone(),
                        second: gf.clone(),
                    })
                }
                _ => table[gi * n + fi] = Some(gfi),
            }
        }
        for fi in 0..n {
            let (s, t) = (morphisms[fi].src, morphisms[fi].tgt);
            for (slot, obj) in [(identity[t] * n + fi, t), (fi * n + identity[s], s)] {
                match table[slot] {
                    None => table[slot] = Some(fi),
                    Some(x) if x != fi => return Err(Error::BadIdentity(spec.objects[obj].clone())),
                    _ => {}
                }
            }
        }
        let cat = Self::assemble(spec.objects.clone(), morphisms, identity, table);
        cat.validate()?;
        Ok(cat)
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<usize>,
        table: Vec<Option<usize>>,
    ) -> Self {
        let no = objects.len();
        let mut homs = vec![Vec::new(); no * no];
        for (i, m) in morphisms.iter().enumerate() {
            homs[m.src * no + m.tgt].push(i);
        }
        let obj_index = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), i))
            .collect();
        let mor_index = morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.id.clone(), i))
            .collect();
        FinCat {
            objects,
            morphisms,
            identity,
            table,
            homs,
            obj_index,
            mor_index,
        }
    }

    /// Reorders objects and morphisms lexicographically by id. Returns the
    /// new category plus old-to-new index maps for objects and morphisms.
    fn sorted_by_id(self) -> (Self, Vec<usize>, Vec<usize>) {
        let mut obj_order: Vec<usize> = (0..self.objects.len()).collect();
        obj_order.sort_by(|&a, &b| self.objects[a].cmp(&self.objects[b]));
        let mut mor_order: Vec<usize> = (0..self.morphisms.len()).collect();
        mor_order.sort_by(|&a, &b| self.morphisms[a].id.cmp(&self.morphisms[b].id));
        let mut obj_new = vec![0; obj_order.len()];
        for (new, &old) in obj_order.iter().enumerate() {
            obj_new[old] = new;
        }
        let mut mor_new = vec![0; mor_order.len()];
        for (new, &old) in mor_order.iter().enumerate() {
            mor_new[old] = new;
        }
        let objects = obj_order.iter().map(|&o| self.objects[o].clone()).collect();
        let morphisms = mor_order
            .iter()
            .map(|&m| {
                let old = &self.morphisms[m];
                Morphism {
                    id: old.id.clone(),
                    src: obj_new[old.src],
                    tgt: obj_new[old.tgt],
                }
            })
            .collect();
        let mut identity = vec![0; obj_order.len()];
        for (old, &m) in self.identity.iter().enumerate() {
            identity[obj_new[old]] = mor_new[m];
        }
        let n = mor_order.len();
        let mut table = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                if let Some(gf) = self.table[g * n + f] {
                    table[mor_new[g] * n + mor_new[f]] = Some(mor_new[gf]);
                }
            }
        }
        (
            Self::assemble(objects, morphisms, identity, table),
            obj_new,
            mor_new,
        )
    }

    /// Exhaustive check of every category axiom.
    pub fn validate(&self) -> Result<()> {
        let n = self.morphisms.len();
        for (o, &i) in self.identity.iter().enumerate() {
            let m = &self.morphisms[i];
            if m.src != o || m.tgt != o {
                return Err(Error::BadIdentity(self.objects[o].clone()));
            }
        }
        for g in 0..n {
            for f in 0..n {
                let (mg, mf) = (&self.morphisms[g], &self.morphisms[f]);
                let composable = mf.tgt == mg.src;
                match (composable, self.table[g * n + f]) {
                    (true, None) => {
                        return Err(Error::MissingComposite {
                            g: mg.id.clone(),
                            f: mf.id.clone(),
                        })
                    }
                    (false, Some(gf)) => {
                        return Err(Error::BadComposite {
                            g: mg.id.clone(),
                            f: mf.id.clone(),
                            gf: self.morphisms[gf].id.clone(),
                        })
                    }
                    (true, Some(gf)) => {
                        let m = &self.morphisms[gf];
                        if m.src != mf.src || m.tgt != mg.tgt {
                            return Err(Error::BadComposite {
                                g: mg.id.clone(),
                                f: mf.id.clone(),
                                gf: m.id.clone(),
                            });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for f in 0..n {
            let mf = &self.morphisms[f];
            if self.table[self.identity[mf.tgt] * n + f] != Some(f) {
                return Err(Error::BadIdentity(self.objects[mf.tgt].clone()));
            }
            if self.table[f * n + self.identity[mf.src]] != Some(f) {
                return Err(Error::BadIdentity(self.objects[mf.src].clone()));
            }
        }
        for f in 0..n {
            for g in 0..n {
                let Some(gf) = self.table[g * n + f] else {
                    continue;
                };
                for h in 0..n {
                    let Some(hg) = self.table[h * n + g] else {
                        continue;
                    };
                    if self.table[h * n + gf] != self.table[hg * n + f] {
                        return Err(Error::NonAssociative {
                            h: self.morphisms[h].id.clone(),
                            g: self.morphisms[g].id.clone(),
                            f: self.morphisms[f].id.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn morphism(&self, m: usize) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.obj_index.get(id).copied()
    }

    pub fn morphism_index(&self, id: &str) -> Option<usize> {
        self.mor_index.get(id).copied()
    }

    pub fn obj(&self, id: &str) -> Result<usize> {
        self.object_index(id)
            .ok_or_else(|| Error::UnknownObject(id.to_string()))
    }

    pub fn mor(&self, id: &str) -> Result<usize> {
        self.morphism_index(id)
            .ok_or_else(|| Error::UnknownMorphism(id.to_string()))
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identity[self.morphisms[m].src] == m
    }

    /// `g ∘ f`, defined exactly when `target(f) = source(g)`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table[g * self.morphisms.len() + f]
    }

    /// Morphisms `a → b` in declaration order.
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a * self.objects.len() + b]
    }

    /// The discrete category on the given object ids.
    pub fn discrete<S: AsRef<str>>(objects: &[S]) -> Result<Self> {
        let spec = CategorySpec {
            objects: objects.iter().map(|o| o.as_ref().to_string()).collect(),
            ..Default::default()
        };
        Self::new(&spec)
    }

    /// Same ids, swapped endpoints, reversed composition.
    pub fn opposite(&self) -> Self {
        let n = self.morphisms.len();
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism {
                id: m.id.clone(),
                src: m.tgt,
                tgt: m.src,
            })
            .collect();
        let mut table = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                table[g * n + f] = self.table[f * n + g];
            }
        }
        Self::assemble(
            self.objects.clone(),
            morphisms,
            self.identity.clone(),
            table,
        )
    }

    pub fn pair_id(left: &str, right: &str) -> String {
        format!("({left},{right})")
    }

    /// The product category; object `(c,a)` and morphism `(f,g)` ids.
    pub fn product(&self, other: &FinCat) -> Self {
        let (n1, n2) = (self.morphisms.len(), other.morphisms.len());
        let no2 = other.objects.len();
        let mut objects = Vec::new();
        for c in &self.objects {
            for a in &other.objects {
                objects.push(Self::pair_id(c, a));
            }
        }
        let mut morphisms = Vec::new();
        for f in &self.morphisms {
            for g in &other.morphisms {
                morphisms.push(Morphism {
                    id: Self::pair_id(&f.id, &g.id),
                    src: f.src * no2 + g.src,
                    tgt: f.tgt * no2 + g.tgt,
                });
            }
        }
        let mut identity = Vec::new();
        for &i in &self.identity {
            for &j in &other.identity {
                identity.push(i * n2 + j);
            }
        }
        let n = n1 * n2;
        let mut table = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                let (g1, g2) = (g / n2, g % n2);
                let (f1, f2) = (f / n2, f % n2);
                if let (Some(a), Some(b)) = (self.compose(g1, f1), other.compose(g2, f2)) {
                    table[g * n + f] = Some(a * n2 + b);
                }
            }
        }
        Self::assemble(objects, morphisms, identity, table)
            .sorted_by_id()
            .0
    }

    /// Full subcategory on the given objects, keeping declaration order,
    /// together with its inclusion functor.
    pub fn full_subcategory<S: AsRef<str>>(&self, objs: &[S]) -> Result<(Self, CatFunctor)> {
        let mut keep = BTreeSet::new();
        for o in objs {
            keep.insert(self.obj(o.as_ref())?);
        }
        let obj_list: Vec<usize> = (0..self.objects.len())
            .filter(|o| keep.contains(o))
            .collect();
        let mut obj_new = vec![usize::MAX; self.objects.len()];
        for (i, &o) in obj_list.iter().enumerate() {
            obj_new[o] = i;
        }
        let mor_list: Vec<usize> = (0..self.morphisms.len())
            .filter(|&m| {
                keep.contains(&self.morphisms[m].src) && keep.contains(&self.morphisms[m].tgt)
            })
            .collect();
        let mut mor_new = vec![usize::MAX; self.morphisms.len()];
        for (i, &m) in mor_list.iter().enumerate() {
            mor_new[m] = i;
        }
        let morphisms = mor_list
            .iter()
            .map(|&m| {
                let old = &self.morphisms[m];
                Morphism {
                    id: old.id.clone(),
                    src: obj_new[old.src],
                    tgt: obj_new[old.tgt],
                }
            })
            .collect();
        let identity = obj_list.iter().map(|&o| mor_new[self.identity[o]]).collect();
        let n = mor_list.len();
        let mut table = vec![None; n * n];
        for (gi, &g) in mor_list.iter().enumerate() {
            for (fi, &f) in mor_list.iter().enumerate() {
                table[gi * n + fi] = self.compose(g, f).map(|gf| mor_new[gf]);
            }
        }
        let sub = Self::assemble(
            obj_list.iter().map(|&o| self.objects[o].clone()).collect(),
            morphisms,
            identity,
            table,
        );
        let inclusion = CatFunctor::new(sub.clone(), self.clone(), obj_list, mor_list)?;
        Ok((sub, inclusion))
    }

    /// True iff the only endomorphisms are identities and the relation
    /// "there is a non-identity arrow a → b" is acyclic.
    pub fn is_loop_free(&self) -> bool {
        let no = self.objects.len();
        let mut succ = vec![BTreeSet::new(); no];
        for (i, m) in self.morphisms.iter().enumerate() {
            if self.is_identity(i) {
                continue;
            }
            if m.src == m.tgt {
                return false;
            }
            succ[m.src].insert(m.tgt);
        }
        let mut indeg = vec![0usize; no];
        for s in &succ {
            for &t in s {
                indeg[t] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..no).filter(|&o| indeg[o] == 0).collect();
        let mut seen = 0;
        while let Some(o) = stack.pop() {
            seen += 1;
            for &t in &succ[o] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        seen == no
    }

    /// Double slice `d ↘ D ↘ c` for the full subcategory `D` on `d_objs`.
    ///
    /// Objects are factorizations `d --α--> d0 --γ--> c` with `d0 ∈ D`, with
    /// id `(α|d0|γ)`; morphisms are `β: d0 → d0'` with `β∘α = α'` and
    /// `γ'∘β = γ`, with id `β:(src)->(tgt)`.
    pub fn comma_double<S: AsRef<str>>(&self, d_objs: &[S], d: &str, c: &str) -> Result<DoubleComma> {
        let sub = self.object_set(d_objs)?;
        let (d, c) = (self.obj(d)?, self.obj(c)?);
        if !sub.contains(&d) {
            return Err(Error::UnknownObject(format!(
                "{} is not in the subcategory",
                self.objects[d]
            )));
        }
        let mut labels = Vec::new();
        for &d0 in &sub {
            for &alpha in self.hom(d, d0) {
                for &gamma in self.hom(d0, c) {
                    labels.push((alpha, d0, gamma));
                }
            }
        }
        let ids: Vec<String> = labels
            .iter()
            .map(|&(a, d0, g)| {
                format!(
                    "({}|{}|{})",
                    self.morphisms[a].id, self.objects[d0], self.morphisms[g].id
                )
            })
            .collect();
        let arrow_ok = |o: usize, o2: usize, beta: usize| {
            let (a, _, g) = labels[o];
            let (a2, _, g2) = labels[o2];
            self.compose(beta, a) == Some(a2) && self.compose(g2, beta) == Some(g)
        };
        let (cat, obj_new, arrows) = self.build_slice(&ids, |o| labels[o].1, arrow_ok);
        let mut new_labels = vec![(0, 0, 0); labels.len()];
        for (old, l) in labels.into_iter().enumerate() {
            new_labels[obj_new[old]] = l;
        }
        Ok(DoubleComma {
            category: cat,
            labels: new_labels,
            arrows,
        })
    }

    /// Slice `D ↘ c`: objects `(d', α: d' → c)` with id `(d'|α)`, morphisms
    /// `β: d' → d''` in `D` with `α''∘β = α'`.
    pub fn comma_slice<S: AsRef<str>>(&self, d_objs: &[S], c: &str) -> Result<Slice> {
        let sub = self.object_set(d_objs)?;
        let c = self.obj(c)?;
        let mut labels = Vec::new();
        for &d in &sub {
            for &alpha in self.hom(d, c) {
                labels.push((d, alpha));
            }
        }
        let ids: Vec<String> = labels
            .iter()
            .map(|&(d, a)| format!("({}|{})", self.objects[d], self.morphisms[a].id))
            .collect();
        let arrow_ok = |o: usize, o2: usize, beta: usize| {
            self.compose(labels[o2].1, beta) == Some(labels[o].1)
        };
        let (cat, obj_new, arrows) = self.build_slice(&ids, |o| labels[o].0, arrow_ok);
        let mut new_labels = vec![(0, 0); labels.len()];
        for (old, l) in labels.into_iter().enumerate() {
            new_labels[obj_new[old]] = l;
        }
        Ok(Slice {
            category: cat,
            labels: new_labels,
            arrows,
        })
    }

    /// Under category `a ↘ C`: objects `(x, α: a → x)` with id `(α|x)`,
    /// morphisms `γ: x → x'` with `γ∘α = α'`.
    pub fn under(&self, a: &str) -> Result<Slice> {
        let a = self.obj(a)?;
        let mut labels = Vec::new();
        for x in 0..self.objects.len() {
            for &alpha in self.hom(a, x) {
                labels.push((x, alpha));
            }
        }
        let ids: Vec<String> = labels
            .iter()
            .map(|&(x, al)| format!("({}|{})", self.morphisms[al].id, self.objects[x]))
            .collect();
        let arrow_ok = |o: usize, o2: usize, gamma: usize| {
            self.compose(gamma, labels[o].1) == Some(labels[o2].1)
        };
        let (cat, obj_new, arrows) = self.build_slice(&ids, |o| labels[o].0, arrow_ok);
        let mut new_labels = vec![(0, 0); labels.len()];
        for (old, l) in labels.into_iter().enumerate() {
            new_labels[obj_new[old]] = l;
        }
        Ok(Slice {
            category: cat,
            labels: new_labels,
            arrows,
        })
    }

    fn object_set<S: AsRef<str>>(&self, objs: &[S]) -> Result<Vec<usize>> {
        let mut set = BTreeSet::new();
        for o in objs {
            set.insert(self.obj(o.as_ref())?);
        }
        Ok(set.into_iter().collect())
    }

    /// Shared builder for comma-type categories whose objects sit over an
    /// object of `self` and whose arrows are arrows of `self` between those.
    fn build_slice(
        &self,
        ids: &[String],
        over: impl Fn(usize) -> usize,
        arrow_ok: impl Fn(usize, usize, usize) -> bool,
    ) -> (FinCat, Vec<usize>, Vec<usize>) {
        let no = ids.len();
        let mut morphisms = Vec::new();
        let mut under_arrow = Vec::new();
        let mut by_ends: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        for o in 0..no {
            for o2 in 0..no {
                for &beta in self.hom(over(o), over(o2)) {
                    if arrow_ok(o, o2, beta) {
                        by_ends.insert((o, o2, beta), morphisms.len());
                        morphisms.push(Morphism {
                            id: format!("{}:{}->{}", self.morphisms[beta].id, ids[o], ids[o2]),
                            src: o,
                            tgt: o2,
                        });
                        under_arrow.push(beta);
                    }
                }
            }
        }
        let identity: Vec<usize> = (0..no)
            .map(|o| by_ends[&(o, o, self.identity[over(o)])])
            .collect();
        let n = morphisms.len();
        let mut table = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                if morphisms[f].tgt != morphisms[g].src {
                    continue;
                }
                let gf = self
                    .compose(under_arrow[g], under_arrow[f])
                    .expect("composable in the ambient category");
                table[g * n + f] = by_ends
                    .get(&(morphisms[f].src, morphisms[g].tgt, gf))
                    .copied();
            }
        }
        let (cat, obj_new, mor_new) =
            Self::assemble(ids.to_vec(), morphisms, identity, table).sorted_by_id();
        let mut arrows = vec![0; n];
        for (old, beta) in under_arrow.into_iter().enumerate() {
            arrows[mor_new[old]] = beta;
        }
        (cat, obj_new, arrows)
    }
}

/// `d ↘ D ↘ c` with the `(α, d0, γ)` label of each object and the underlying
/// arrow of each morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleComma {
    pub category: FinCat,
    pub labels: Vec<(usize, usize, usize)>,
    pub arrows: Vec<usize>,
}

/// A one-sided slice: `labels[o] = (object, structure arrow)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub category: FinCat,
    pub labels: Vec<(usize, usize)>,
    pub arrows: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatFunctor {
    source: FinCat,
    target: FinCat,
    on_objects: Vec<usize>,
    on_morphisms: Vec<usize>,
}

impl CatFunctor {
    pub fn new(
        source: FinCat,
        target: FinCat,
        on_objects: Vec<usize>,
        on_morphisms: Vec<usize>,
    ) -> Result<Self> {
        let f = CatFunctor {
            source,
            target,
            on_objects,
            on_morphisms,
        };
        f.validate()?;
        Ok(f)
    }

    /// Builds a functor from id-level tables.
    pub fn from_ids(
        source: FinCat,
        target: FinCat,
        objects: impl Fn(&str) -> String,
        morphisms: impl Fn(&str) -> String,
    ) -> Result<Self> {
        let on_objects = source
            .objects()
            .iter()
            .map(|o| target.obj(&objects(o)))
            .collect::<Result<Vec<_>>>()?;
        let on_morphisms = source
            .morphisms()
            .iter()
            .map(|m| target.mor(&morphisms(&m.id)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, on_objects, on_morphisms)
    }

    pub fn identity(c: &FinCat) -> Self {
        CatFunctor {
            source: c.clone(),
            target: c.clone(),
            on_objects: (0..c.n_objects()).collect(),
            on_morphisms: (0..c.n_morphisms()).collect(),
        }
    }

    /// Exhaustive check: endpoints, identities and composites are preserved.
    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.on_objects.len() != s.n_objects() || self.on_morphisms.len() != s.n_morphisms() {
            return Err(Error::InvalidFunctor("table sizes".into()));
        }
        if self.on_objects.iter().any(|&o| o >= t.n_objects())
            || self.on_morphisms.iter().any(|&m| m >= t.n_morphisms())
        {
            return Err(Error::InvalidFunctor("image out of range".into()));
        }
        for (i, m) in s.morphisms().iter().enumerate() {
            let fm = t.morphism(self.on_morphisms[i]);
            if fm.src != self.on_objects[m.src] || fm.tgt != self.on_objects[m.tgt] {
                return Err(Error::InvalidFunctor(format!("endpoints of `{}`", m.id)));
            }
        }
        for o in 0..s.n_objects() {
            if self.on_morphisms[s.identity(o)] != t.identity(self.on_objects[o]) {
                return Err(Error::InvalidFunctor(format!("identity of `{}`", s.object(o))));
            }
        }
        for g in 0..s.n_morphisms() {
            for f in 0..s.n_morphisms() {
                if let Some(gf) = s.compose(g, f) {
                    let lhs = self.on_morphisms[gf];
                    let rhs = t.compose(self.on_morphisms[g], self.on_morphisms[f]);
                    if rhs != Some(lhs) {
                        return Err(Error::InvalidFunctor(format!(
                            "composite {} ∘ {}",
                            s.morphism(g).id,
                            s.morphism(f).id
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &FinCat {
        &self.source
    }

    pub fn target(&self) -> &FinCat {
        &self.target
    }

    pub fn on_object(&self, o: usize) -> usize {
        self.on_objects[o]
    }

    pub fn on_morphism(&self, m: usize) -> usize {
        self.on_morphisms[m]
    }

    pub fn object_table(&self) -> &[usize] {
        &self.on_objects
    }

    pub fn morphism_table(&self) -> &[usize] {
        &self.on_morphisms
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &CatFunctor) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::InvalidFunctor("composition of mismatched functors".into()));
        }
        Ok(CatFunctor {
            source: first.source.clone(),
            target: self.target.clone(),
            on_objects: first.on_objects.iter().map(|&o| self.on_objects[o]).collect(),
            on_morphisms: first
                .on_morphisms
                .iter()
                .map(|&m| self.on_morphisms[m])
                .collect(),
        })
    }

    pub fn opposite(&self) -> Self {
        CatFunctor {
            source: self.source.opposite(),
            target: self.target.opposite(),
            on_objects: self.on_objects.clone(),
            on_morphisms: self.on_morphisms.clone(),
        }
    }

    /// The switch isomorphism `C × A → A × C`.
    pub fn switch(c: &FinCat, a: &FinCat) -> Result<Self> {
        let source = c.product(a);
        let target = a.product(c);
        let mut on_objects = Vec::new();
        for o in source.objects() {
            let (x, y) = split_pair(c, a, o, true)?;
            on_objects.push(target.obj(&FinCat::pair_id(&y, &x))?);
        }
        let mut on_morphisms = Vec::new();
        for m in source.morphisms() {
            let (x, y) = split_pair(c, a, &m.id, false)?;
            on_morphisms.push(target.mor(&FinCat::pair_id(&y, &x))?);
        }
        Self::new(source, target, on_objects, on_morphisms)
    }

    /// `a ↦ (a, fixed)` into `first × second`, identity in the second slot.
    pub fn insert_left(first: &FinCat, second: &FinCat, fixed: usize) -> Result<Self> {
        let product = first.product(second);
        let fixed_id = second.object(fixed).to_string();
        let fixed_mor = second.morphism(second.identity(fixed)).id.clone();
        Self::from_ids(
            first.clone(),
            product,
            |o| FinCat::pair_id(o, &fixed_id),
            |m| FinCat::pair_id(m, &fixed_mor),
        )
    }
}

/// Recovers the two component ids of a product id by matching against the
/// factors' id sets; ids may themselves contain commas and parentheses.
fn split_pair(c: &FinCat, a: &FinCat, id: &str, objects: bool) -> Result<(String, String)> {
    let inner = id
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::UnknownObject(id.to_string()))?;
    for (pos, ch) in inner.char_indices() {
        if ch != ',' {
            continue;
        }
        let (x, y) = (&inner[..pos], &inner[pos + 1..]);
        let ok = if objects {
            c.object_index(x).is_some() && a.object_index(y).is_some()
        } else {
            c.morphism_index(x).is_some() && a.morphism_index(y).is_some()
        };
        if ok {
            return Ok((x.to_string(), y.to_string()));
        }
    }
    Err(Error::UnknownObject(id.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatNatTrans {
    source: CatFunctor,
    target: CatFunctor,
    components: Vec<usize>,
}

impl CatNatTrans {
    pub fn new(source: CatFunctor, target: CatFunctor, components: Vec<usize>) -> Result<Self> {
        let nt = CatNatTrans {
            source,
            target,
            components,
        };
        nt.validate()?;
        Ok(nt)
    }

    /// Checks the naturality square for every source-category morphism.
    pub fn validate(&self) -> Result<()> {
        let (f, g) = (&self.source, &self.target);
        if f.source != g.source || f.target != g.target {
            return Err(Error::InvalidNatTrans("functors have different endpoints".into()));
        }
        let (a, b) = (&f.source, &f.target);
        if self.components.len() != a.n_objects() {
            return Err(Error::InvalidNatTrans("component table size".into()));
        }
        for o in 0..a.n_objects() {
            let m = self.components[o];
            if m >= b.n_morphisms()
                || b.morphism(m).src != f.on_object(o)
                || b.morphism(m).tgt != g.on_object(o)
            {
                return Err(Error::InvalidNatTrans(a.object(o).to_string()));
            }
        }
        for (i, m) in a.morphisms().iter().enumerate() {
            let lhs = b.compose(g.on_morphism(i), self.components[m.src]);
            let rhs = b.compose(self.components[m.tgt], f.on_morphism(i));
            if lhs.is_none() || lhs != rhs {
                return Err(Error::InvalidNatTrans(m.id.clone()));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &CatFunctor {
        &self.source
    }

    pub fn target(&self) -> &CatFunctor {
        &self.target
    }

    pub fn component(&self, o: usize) -> usize {
        self.components[o]
    }

    /// `ν: F ⇒ G` becomes `ν^op: G^op ⇒ F^op` with the same components.
    pub fn opposite(&self) -> Self {
        CatNatTrans {
            source: self.target.opposite(),
            target: self.source.opposite(),
            components: self.components.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn spec(objects: &[&str], mors: &[(&str, &str, &str)], comp: &[(&str, &str, &str)]) -> CategorySpec {
        CategorySpec {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            morphisms: mors
                .iter()
                .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
                .collect(),
            identities: BTreeMap::new(),
            compose: comp
                .iter()
                .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
                .collect(),
        }
    }

    #[test]
    fn terminal_has_one_morphism() {
        let t = FinCat::new(&spec(&["*"], &[], &[])).unwrap();
        assert_eq!(t.n_morphisms(), 1);
        assert_eq!(t.opposite(), t);
    }

    #[test]
    fn interval_is_valid() {
        let i = corpus::interval();
        assert_eq!(i.n_objects(), 2);
        assert_eq!(i.n_morphisms(), 3);
        i.validate().unwrap();
        let op = i.opposite();
        let f = op.mor("f").unwrap();
        assert_eq!(op.morphism(f).src, op.obj("1").unwrap());
        assert_eq!(op.opposite(), i);
    }

    #[test]
    fn missing_composite_is_named() {
        let s = spec(
            &["0", "1", "2"],
            &[("f", "0", "1"), ("g", "1", "2"), ("h", "0", "2")],
            &[],
        );
        match FinCat::new(&s) {
            Err(Error::MissingComposite { g, f }) => {
                assert_eq!((g.as_str(), f.as_str()), ("g", "f"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_associative_table_rejected() {
        // one object, two non-identity endomorphisms e, z with a table that
        // breaks associativity: e∘e = z, z∘e = e, e∘z = z, z∘z = z.
        let s = spec(
            &["*"],
            &[("e", "*", "*"), ("z", "*", "*")],
            &[
                ("e", "e", "z"),
                ("z", "e", "e"),
                ("e", "z", "z"),
                ("z", "z", "z"),
            ],
        );
        assert!(matches!(FinCat::new(&s), Err(Error::NonAssociative { .. })));
    }

    #[test]
    fn bad_identity_rejected() {
        let mut s = spec(&["0", "1"], &[("f", "0", "1")], &[]);
        s.identities.insert("0".into(), "f".into());
        assert_eq!(FinCat::new(&s), Err(Error::BadIdentity("0".into())));
    }

    #[test]
    fn span_opposite_is_cospan_shape() {
        let span = corpus::span();
        let op = span.opposite();
        op.validate().unwrap();
        let b = op.obj("b").unwrap();
        assert!(op.morphisms().iter().filter(|m| m.src != m.tgt).all(|m| m.tgt == b));
    }

    #[test]
    fn product_counts() {
        let i = corpus::interval();
        let sq = i.product(&i);
        sq.validate().unwrap();
        assert_eq!(sq.n_objects(), 4);
        assert_eq!(sq.n_morphisms(), 9);
        let t = corpus::terminal();
        let ct = i.product(&t);
        assert_eq!(ct.n_objects(), 2);
        assert_eq!(ct.n_morphisms(), 3);
        let f = CatFunctor::from_ids(
            i.clone(),
            ct.clone(),
            |o| FinCat::pair_id(o, "*"),
            |m| FinCat::pair_id(m, "id_*"),
        )
        .unwrap();
        let back = CatFunctor::from_ids(
            ct.clone(),
            i.clone(),
            |o| o[1..o.len() - 3].to_string(),
            |m| m[1..m.len() - 6].to_string(),
        )
        .unwrap();
        assert_eq!(back.after(&f).unwrap(), CatFunctor::identity(&i));
        assert_eq!(f.after(&back).unwrap(), CatFunctor::identity(&ct));

        let span = corpus::span();
        let (d, _) = span.full_subcategory(&["a", "c"]).unwrap();
        assert_eq!(d.opposite().product(&span).n_objects(), 6);
    }

    #[test]
    fn full_subcategories() {
        let span = corpus::span();
        let (all, inc) = span.full_subcategory(&["a", "b", "c"]).unwrap();
        assert_eq!(all, span);
        assert_eq!(inc, CatFunctor::identity(&span));
        let (ac, _) = span.full_subcategory(&["a", "c"]).unwrap();
        assert_eq!(ac.n_objects(), 2);
        assert_eq!(ac.n_morphisms(), 2);
        let (b, _) = span.full_subcategory(&["b"]).unwrap();
        assert_eq!(b.n_morphisms(), 1);
        assert!(matches!(
            span.full_subcategory(&["q"]),
            Err(Error::UnknownObject(_))
        ));
    }

    #[test]
    fn double_comma_examples() {
        let i = corpus::interval();
        let dc = i.comma_double(&["0", "1"], "0", "1").unwrap();
        assert_eq!(dc.category.n_objects(), 2);
        assert_eq!(dc.category.n_morphisms(), 3);
        assert_eq!(
            dc.category.objects(),
            &["(f|1|id_1)".to_string(), "(id_0|0|f)".to_string()]
        );
        let empty = i.comma_double(&["0", "1"], "1", "0").unwrap();
        assert_eq!(empty.category.n_objects(), 0);

        let span = corpus::span();
        let dc = span.comma_double(&["a", "c"], "a", "a").unwrap();
        assert_eq!(dc.category.n_objects(), 1);
        assert_eq!(dc.category.n_morphisms(), 1);
    }

    #[test]
    fn double_comma_count_formula() {
        for cat in [corpus::interval(), corpus::span(), corpus::cospan(), corpus::square()] {
            let all: Vec<String> = cat.objects().to_vec();
            for d in 0..cat.n_objects() {
                for c in 0..cat.n_objects() {
                    let dc = cat.comma_double(&all, cat.object(d), cat.object(c)).unwrap();
                    dc.category.validate().unwrap();
                    let expected: usize = (0..cat.n_objects())
                        .map(|x| cat.hom(d, x).len() * cat.hom(x, c).len())
                        .sum();
                    assert_eq!(dc.category.n_objects(), expected);
                }
            }
        }
    }

    #[test]
    fn slices() {
        let t = corpus::terminal();
        let s = t.comma_slice(&["*"], "*").unwrap();
        assert_eq!(s.category.n_objects(), 1);
        let span = corpus::span();
        let s = span.comma_slice(&["a", "c"], "a").unwrap();
        assert_eq!(s.category.objects(), &["(a|id_a)".to_string()]);
        let i = corpus::interval();
        let s = i.comma_slice(&["0", "1"], "1").unwrap();
        assert_eq!(s.category.n_objects(), 2);
        assert_eq!(s.category.n_morphisms(), 3);
        let u = span.under("b").unwrap();
        assert_eq!(u.category.n_objects(), 3);
        u.category.validate().unwrap();
    }

    #[test]
    fn loop_freeness() {
        assert!(corpus::interval().is_loop_free());
        assert!(corpus::square().is_loop_free());
        let idem = spec(&["*"], &[("e", "*", "*")], &[("e", "e", "e")]);
        assert!(!FinCat::new(&idem).unwrap().is_loop_free());
    }

    #[test]
    fn switch_is_invertible() {
        let (i, s) = (corpus::interval(), corpus::span());
        let sw = CatFunctor::switch(&i, &s).unwrap();
        let back = CatFunctor::switch(&s, &i).unwrap();
        assert_eq!(back.after(&sw).unwrap(), CatFunctor::identity(&i.product(&s)));
    }

    #[test]
    fn nat_trans_naturality() {
        let i = corpus::interval();
        let t = corpus::terminal();
        let zero = CatFunctor::from_ids(t.clone(), i.clone(), |_| "0".into(), |_| "id_0".into()).unwrap();
        let one = CatFunctor::from_ids(t.clone(), i.clone(), |_| "1".into(), |_| "id_1".into()).unwrap();
        let nt = CatNatTrans::new(zero.clone(), one.clone(), vec![i.mor("f").unwrap()]).unwrap();
        nt.opposite().validate().unwrap();
        assert!(CatNatTrans::new(one, zero, vec![i.mor("f").unwrap()]).is_err());
    }
}

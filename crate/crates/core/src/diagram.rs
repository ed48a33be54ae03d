//! Diagrams of simplicial sets indexed by finite categories, maps between
//! them, restriction, induction (left Kan extension along a full inclusion)
//! and colimits.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FinCat, Slice};
use crate::homology::homology_equivalence_failure;
use crate::sset::{coproduct_tagged, same, enumerate_maps, Coequalizer, Coproduct, SSet, SSetMap};
use crate::DEFAULT_DIM_CAP;

/// A functor from a finite category to simplicial sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    index: FinCat,
    values: Vec<Arc<SSet>>,
    actions: Vec<SSetMap>,
}

impl Diagram {
    /// Validates endpoints, identities and composition.
    pub fn new(index: FinCat, values: Vec<Arc<SSet>>, actions: Vec<SSetMap>) -> Result<Self> {
        let d = Diagram {
            index,
            values,
            actions,
        };
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn new_unchecked(index: FinCat, values: Vec<Arc<SSet>>, actions: Vec<SSetMap>) -> Self {
        let d = Diagram {
            index,
            values,
            actions,
        };
        debug_assert_eq!(d.validate(), Ok(()));
        d
    }

    /// Builds a diagram from the actions of named morphisms. Identities may be
    /// omitted, and so may any morphism that is a composite of given ones.
    pub fn from_named(index: &FinCat, values: Vec<Arc<SSet>>, named: &[(String, SSetMap)]) -> Result<Self> {
        if values.len() != index.n_objects() {
            return Err(Error::InvalidFunctor(format!(
                "{} values for {} objects",
                values.len(),
                index.n_objects()
            )));
        }
        let mut actions: Vec<Option<SSetMap>> = vec![None; index.n_morphisms()];
        for (id, f) in named {
            let m = index.mor(id)?;
            if actions[m].is_some() {
                return Err(Error::DuplicateId(id.clone()));
            }
            actions[m] = Some(f.clone());
        }
        for o in 0..index.n_objects() {
            let id = index.identity(o);
            if actions[id].is_none() {
                actions[id] = Some(SSetMap::identity(&values[o]));
            }
        }
        loop {
            let mut progress = false;
            for g in 0..index.n_morphisms() {
                for f in 0..index.n_morphisms() {
                    let Some(gf) = index.compose(g, f) else { continue };
                    if actions[gf].is_some() {
                        continue;
                    }
                    if let (Some(ag), Some(af)) = (&actions[g], &actions[f]) {
                        actions[gf] = Some(ag.after(af)?);
                        progress = true;
                    }
                }
            }
            if !progress {
                break;
            }
        }
        let actions = actions
            .into_iter()
            .enumerate()
            .map(|(m, a)| a.ok_or_else(|| Error::UnknownMorphism(format!("no action given for `{}`", index.morphism(m).id))))
            .collect::<Result<Vec<_>>>()?;
        Diagram::new(index.clone(), values, actions)
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.index;
        if self.values.len() != c.n_objects() || self.actions.len() != c.n_morphisms() {
            return Err(Error::InvalidFunctor("tables do not match the index category".into()));
        }
        for (m, a) in self.actions.iter().enumerate() {
            let mor = c.morphism(m);
            if !same(a.source(), &self.values[mor.src]) || !same(a.target(), &self.values[mor.tgt]) {
                return Err(Error::NotFunctorial(format!("endpoints of the action of `{}`", mor.id)));
            }
            a.validate()?;
        }
        for o in 0..c.n_objects() {
            if !self.actions[c.identity(o)].is_identity() {
                return Err(Error::NotFunctorial(format!("identity of `{}`", c.object(o))));
            }
        }
        for g in 0..c.n_morphisms() {
            for f in 0..c.n_morphisms() {
                if let Some(gf) = c.compose(g, f) {
                    if self.actions[g].after(&self.actions[f])? != self.actions[gf] {
                        return Err(Error::NotFunctorial(format!(
                            "{} ∘ {}",
                            c.morphism(g).id,
                            c.morphism(f).id
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn index(&self) -> &FinCat {
        &self.index
    }

    pub fn value(&self, o: usize) -> &Arc<SSet> {
        &self.values[o]
    }

    pub fn values(&self) -> &[Arc<SSet>] {
        &self.values
    }

    pub fn value_of(&self, id: &str) -> Result<&Arc<SSet>> {
        Ok(&self.values[self.index.obj(id)?])
    }

    pub fn action(&self, m: usize) -> &SSetMap {
        &self.actions[m]
    }

    pub fn constant(c: &FinCat, k: &Arc<SSet>) -> Self {
        let id = SSetMap::identity(k);
        Diagram {
            index: c.clone(),
            values: vec![k.clone(); c.n_objects()],
            actions: vec![id; c.n_morphisms()],
        }
    }

    /// `X ∘ F` for a functor `F` into the index category.
    pub fn reindex(&self, f: &CatFunctor) -> Result<Self> {
        if *f.target() != self.index {
            return Err(Error::IndexMismatch("functor does not land in the index category".into()));
        }
        let values = f.object_table().iter().map(|&o| self.values[o].clone()).collect();
        let actions = f.morphism_table().iter().map(|&m| self.actions[m].clone()).collect();
        Ok(Diagram::new_unchecked(f.source().clone(), values, actions))
    }

    /// Restriction to the full subcategory on `d_objs`.
    pub fn restrict<S: AsRef<str>>(&self, d_objs: &[S]) -> Result<Self> {
        let (_, inclusion) = self.index.full_subcategory(d_objs)?;
        self.reindex(&inclusion)
    }

    /// Upper bound on the caps of the values, used for empty constructions.
    pub(crate) fn cap(&self) -> usize {
        self.values.iter().map(|v| v.dim_cap()).max().unwrap_or(DEFAULT_DIM_CAP)
    }

    /// The colimit, as the coequalizer of `⊔_{α: b→b'} X(b) ⇉ ⊔_a X(a)`.
    pub fn colim(&self) -> Result<Colimit> {
        let c = &self.index;
        let cap = self.cap();
        let middle = coproduct_tagged(
            &(0..c.n_objects())
                .map(|o| (c.object(o).into(), self.values[o].clone()))
                .collect::<Vec<_>>(),
            cap,
        )?;
        let arrows: Vec<usize> = (0..c.n_morphisms()).filter(|&m| !c.is_identity(m)).collect();
        let left = coproduct_tagged(
            &arrows
                .iter()
                .map(|&m| (c.morphism(m).id.clone(), self.values[c.morphism(m).src].clone()))
                .collect::<Vec<_>>(),
            cap,
        )?;
        let f = left.copair_unchecked(
            &middle.sset,
            &arrows
                .iter()
                .map(|&m| middle.injections[c.morphism(m).src].clone())
                .collect::<Vec<_>>(),
        );
        let g = left.copair_unchecked(
            &middle.sset,
            &arrows
                .iter()
                .map(|&m| middle.injections[c.morphism(m).tgt].after(&self.actions[m]))
                .collect::<Result<Vec<_>>>()?,
        );
        let coequalizer = Coequalizer::new(&f, &g)?;
        let cocone = middle
            .injections
            .iter()
            .map(|i| coequalizer.projection.after(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Colimit {
            sset: coequalizer.sset.clone(),
            cocone,
            middle,
            coequalizer,
        })
    }
}

/// A colimit with its cocone.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub sset: Arc<SSet>,
    pub cocone: Vec<SSetMap>,
    pub middle: Coproduct,
    pub coequalizer: Coequalizer,
}

impl Colimit {
    /// The map out of the colimit given by a cocone into `target`.
    pub fn factor(&self, target: &Arc<SSet>, legs: &[SSetMap]) -> Result<SSetMap> {
        let h = self.middle.copair(target, legs)?;
        self.coequalizer.factor(&h)
    }

    pub(crate) fn factor_unchecked(&self, target: &Arc<SSet>, legs: &[SSetMap]) -> SSetMap {
        self.coequalizer
            .factor_unchecked(&self.middle.copair_unchecked(target, legs))
    }
}

/// A natural transformation between diagrams over the same index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramMap {
    source: Arc<Diagram>,
    target: Arc<Diagram>,
    components: Vec<SSetMap>,
}

impl DiagramMap {
    pub fn new(source: Arc<Diagram>, target: Arc<Diagram>, components: Vec<SSetMap>) -> Result<Self> {
        let m = DiagramMap {
            source,
            target,
            components,
        };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: Arc<Diagram>, target: Arc<Diagram>, components: Vec<SSetMap>) -> Self {
        let m = DiagramMap {
            source,
            target,
            components,
        };
        debug_assert_eq!(m.validate(), Ok(()));
        m
    }

    /// Checks endpoints and every naturality square.
    pub fn validate(&self) -> Result<()> {
        let c = &self.source.index;
        if *c != self.target.index {
            return Err(Error::IndexMismatch("source and target are indexed differently".into()));
        }
        if self.components.len() != c.n_objects() {
            return Err(Error::IndexMismatch("one component per object".into()));
        }
        for (o, comp) in self.components.iter().enumerate() {
            if !same(comp.source(), &self.source.values[o]) || !same(comp.target(), &self.target.values[o]) {
                return Err(Error::NotNatural(format!("endpoints at object `{}`", c.object(o))));
            }
            comp.validate()?;
        }
        if let Some(m) = self.first_unnatural() {
            return Err(Error::NotNatural(c.morphism(m).id.clone()));
        }
        Ok(())
    }

    fn first_unnatural(&self) -> Option<usize> {
        let c = &self.source.index;
        (0..c.n_morphisms()).find(|&m| {
            let mor = c.morphism(m);
            let left = self.target.actions[m].after(&self.components[mor.src]);
            let right = self.components[mor.tgt].after(&self.source.actions[m]);
            left.ok() != right.ok()
        })
    }

    pub fn source(&self) -> &Arc<Diagram> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Diagram> {
        &self.target
    }

    pub fn component(&self, o: usize) -> &SSetMap {
        &self.components[o]
    }

    pub fn components(&self) -> &[SSetMap] {
        &self.components
    }

    pub fn identity(x: &Arc<Diagram>) -> Self {
        let components = x.values.iter().map(SSetMap::identity).collect();
        DiagramMap {
            source: x.clone(),
            target: x.clone(),
            components,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(SSetMap::is_identity)
    }

    /// `self ∘ first`
    pub fn after(&self, first: &DiagramMap) -> Result<Self> {
        if *first.target != *self.source {
            return Err(Error::SourceTargetMismatch);
        }
        let components = self
            .components
            .iter()
            .zip(&first.components)
            .map(|(g, f)| g.after(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(DiagramMap {
            source: first.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(SSetMap::is_iso)
    }

    pub fn inverse(&self) -> Option<Self> {
        let components = self
            .components
            .iter()
            .map(SSetMap::inverse)
            .collect::<Option<Vec<_>>>()?;
        Some(DiagramMap {
            source: self.target.clone(),
            target: self.source.clone(),
            components,
        })
    }

    /// Restriction to the full subcategory on `d_objs`.
    pub fn restrict<S: AsRef<str>>(&self, d_objs: &[S]) -> Result<Self> {
        let (_, inclusion) = self.source.index.full_subcategory(d_objs)?;
        self.reindex(&inclusion)
    }

    pub fn reindex(&self, f: &CatFunctor) -> Result<Self> {
        let source = Arc::new(self.source.reindex(f)?);
        let target = Arc::new(self.target.reindex(f)?);
        let components = f.object_table().iter().map(|&o| self.components[o].clone()).collect();
        Ok(DiagramMap::new_unchecked(source, target, components))
    }
}

/// The first object of `d_objs` at which `f` is not a homology equivalence
/// through `up_to`, with the reason.
pub fn objectwise_homology_failure<S: AsRef<str>>(
    f: &DiagramMap,
    d_objs: &[S],
    up_to: usize,
) -> Result<Option<(String, String)>> {
    let c = &f.source.index;
    for d in d_objs {
        let o = c.obj(d.as_ref())?;
        if let Some(why) = homology_equivalence_failure(&f.components[o], up_to)? {
            return Ok(Some((d.as_ref().into(), why)));
        }
    }
    Ok(None)
}

pub fn is_objectwise_homology_equivalence<S: AsRef<str>>(f: &DiagramMap, d_objs: &[S], up_to: usize) -> Result<bool> {
    Ok(objectwise_homology_failure(f, d_objs, up_to)?.is_none())
}

/// `ind Y` for `Y` over the full subcategory `D` of `C`, with the slice
/// colimits computing it.
#[derive(Clone, Debug)]
pub struct Induced {
    pub diagram: Arc<Diagram>,
    pub d_objs: Vec<String>,
    /// Per object of `C`: the slice `D ↘ c` and the colimit over it.
    pub slices: Vec<(Slice, Colimit)>,
    /// `C`-index of each object of `D`.
    d_index: Vec<usize>,
}

/// Left Kan extension along the full inclusion of `Y`'s index into `C`,
/// computed pointwise as the colimit over `D ↘ c`.
pub fn induce(y: &Diagram, c: &FinCat) -> Result<Induced> {
    let d = y.index();
    let d_objs: Vec<String> = d.objects().to_vec();
    let (sub, inclusion) = c.full_subcategory(&d_objs)?;
    if sub != *d {
        return Err(Error::IndexMismatch(
            "diagram is not indexed by a full subcategory listed in declaration order".into(),
        ));
    }
    let d_index = inclusion.object_table().to_vec();
    let mut slices = Vec::new();
    for o in 0..c.n_objects() {
        let slice = c.comma_slice(&d_objs, c.object(o))?;
        let values = slice
            .labels
            .iter()
            .map(|&(x, _)| y.value(d_of(&d_index, x)).clone())
            .collect();
        let actions = slice
            .arrows
            .iter()
            .map(|&beta| y.action(d.mor(&c.morphism(beta).id).expect("arrow of D")).clone())
            .collect();
        let over = Diagram::new_unchecked(slice.category.clone(), values, actions);
        let colim = over.colim()?;
        slices.push((slice, colim));
    }
    let values: Vec<Arc<SSet>> = slices.iter().map(|(_, l)| l.sset.clone()).collect();
    // γ: c → c' sends (x, α) to (x, γ∘α)
    let actions = (0..c.n_morphisms())
        .map(|g| {
            let mor = c.morphism(g);
            let (from, colim_from) = &slices[mor.src];
            let (to, colim_to) = &slices[mor.tgt];
            let legs: Vec<SSetMap> = from
                .labels
                .iter()
                .map(|&(x, alpha)| {
                    let ga = c.compose(g, alpha).expect("composable");
                    let k = to.labels.iter().position(|&l| l == (x, ga)).expect("object of the slice");
                    colim_to.cocone[k].clone()
                })
                .collect();
            colim_from.factor_unchecked(&colim_to.sset, &legs)
        })
        .collect();
    Ok(Induced {
        diagram: Arc::new(Diagram::new_unchecked(c.clone(), values, actions)),
        d_objs,
        slices,
        d_index,
    })
}

fn d_of(d_index: &[usize], x: usize) -> usize {
    d_index.iter().position(|&o| o == x).expect("object of D")
}

impl Induced {
    fn slot(&self, c: usize, x: usize, alpha: usize) -> usize {
        self.slices[c].0.labels.iter().position(|&l| l == (x, alpha)).expect("object of the slice")
    }

    /// `η: Y → res ind Y`, the cocone legs at `(d, id_d)`.
    pub fn unit(&self, y: &Arc<Diagram>) -> Result<DiagramMap> {
        let c = self.diagram.index();
        let components = self
            .d_index
            .iter()
            .map(|&o| self.slices[o].1.cocone[self.slot(o, o, c.identity(o))].clone())
            .collect();
        let res = Arc::new(self.diagram.restrict(&self.d_objs)?);
        DiagramMap::new(y.clone(), res, components)
    }

    /// `ind φ` for `φ: Y → Y'`, where `self` is `ind Y` and `to` is `ind Y'`.
    pub fn map(&self, phi: &DiagramMap, to: &Induced) -> Result<DiagramMap> {
        let components = self
            .slices
            .iter()
            .enumerate()
            .map(|(o, (slice, colim))| {
                let legs: Vec<SSetMap> = slice
                    .labels
                    .iter()
                    .enumerate()
                    .map(|(k, &(x, _))| to.slices[o].1.cocone[k].after(phi.component(d_of(&self.d_index, x))))
                    .collect::<Result<_>>()?;
                colim.factor(&to.slices[o].1.sset, &legs)
            })
            .collect::<Result<Vec<_>>>()?;
        DiagramMap::new(self.diagram.clone(), to.diagram.clone(), components)
    }
}

/// `ε: ind res X → X`, given `ind res X` as computed by [`induce`].
pub fn counit(x: &Arc<Diagram>, ind_res: &Induced) -> Result<DiagramMap> {
    let components = ind_res
        .slices
        .iter()
        .enumerate()
        .map(|(o, (slice, colim))| {
            let legs: Vec<SSetMap> = slice.labels.iter().map(|&(_, alpha)| x.action(alpha).clone()).collect();
            colim.factor(x.value(o), &legs)
        })
        .collect::<Result<Vec<_>>>()?;
    DiagramMap::new(ind_res.diagram.clone(), x.clone(), components)
}

/// All maps of diagrams `X → Y`, in lexicographic order of components.
pub fn enumerate_diagram_maps(x: &Arc<Diagram>, y: &Arc<Diagram>, budget: usize) -> Result<Vec<DiagramMap>> {
    let c = x.index();
    if *c != *y.index() {
        return Err(Error::IndexMismatch("source and target are indexed differently".into()));
    }
    let mut candidates = Vec::with_capacity(c.n_objects());
    let mut spent = 0usize;
    for o in 0..c.n_objects() {
        let maps = enumerate_maps(x.value(o), y.value(o), budget.saturating_sub(spent))?;
        spent += maps.len();
        if spent > budget {
            return Err(Error::SearchBudgetExceeded(budget));
        }
        candidates.push(maps);
    }
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut nodes = 0usize;
    search(x, y, &candidates, &mut chosen, &mut out, &mut nodes, budget)?;
    Ok(out)
}

fn search(
    x: &Arc<Diagram>,
    y: &Arc<Diagram>,
    candidates: &[Vec<SSetMap>],
    chosen: &mut Vec<usize>,
    out: &mut Vec<DiagramMap>,
    nodes: &mut usize,
    budget: usize,
) -> Result<()> {
    let c = x.index();
    let o = chosen.len();
    if o == c.n_objects() {
        let components = chosen.iter().enumerate().map(|(o, &i)| candidates[o][i].clone()).collect();
        out.push(DiagramMap::new_unchecked(x.clone(), y.clone(), components));
        return Ok(());
    }
    for i in 0..candidates[o].len() {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::SearchBudgetExceeded(budget));
        }
        chosen.push(i);
        // naturality on morphisms whose endpoints are both assigned
        let ok = (0..c.n_morphisms()).all(|m| {
            let mor = c.morphism(m);
            if mor.src.max(mor.tgt) != o {
                return true;
            }
            let f = &candidates[mor.src][chosen[mor.src]];
            let g = &candidates[mor.tgt][chosen[mor.tgt]];
            y.action(m).after(f).ok() == g.after(x.action(m)).ok()
        });
        if ok {
            search(x, y, candidates, chosen, out, nodes, budget)?;
        }
        chosen.pop();
    }
    Ok(())
}

/// Outcome of checking `mor(ind Y, Z) ≅ mor(Y, res Z)` by enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub left: usize,
    pub right: usize,
    pub bijective: bool,
    pub triangles: bool,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.left == self.right && self.bijective && self.triangles
    }
}

/// Enumerates both hom-sets and checks that `φ ↦ res φ ∘ η` and
/// `ψ ↦ ε ∘ ind ψ` are mutually inverse.
pub fn ind_res_adjunction_check(y: &Arc<Diagram>, z: &Arc<Diagram>, budget: usize) -> Result<AdjunctionReport> {
    let c = z.index();
    let d_objs: Vec<String> = y.index().objects().to_vec();
    let ind_y = induce(y, c)?;
    let res_z = Arc::new(z.restrict(&d_objs)?);
    let ind_res_z = induce(&res_z, c)?;
    let eps = counit(z, &ind_res_z)?;
    let eta = ind_y.unit(y)?;
    let left = enumerate_diagram_maps(&ind_y.diagram, z, budget)?;
    let right = enumerate_diagram_maps(y, &res_z, budget)?;
    let to_right = |phi: &DiagramMap| -> Result<DiagramMap> { phi.restrict(&d_objs)?.after(&eta) };
    let to_left = |psi: &DiagramMap| -> Result<DiagramMap> { eps.after(&ind_y.map(psi, &ind_res_z)?) };
    let mut images = Vec::with_capacity(left.len());
    let mut triangles = true;
    for phi in &left {
        let psi = to_right(phi)?;
        triangles &= to_left(&psi)? == *phi;
        images.push(right.iter().position(|r| *r == psi));
    }
    for psi in &right {
        triangles &= to_right(&to_left(psi)?)? == *psi;
    }
    let mut hit = vec![false; right.len()];
    let mut bijective = left.len() == right.len();
    for i in images {
        match i {
            Some(i) if !hit[i] => hit[i] = true,
            _ => bijective = false,
        }
    }
    Ok(AdjunctionReport {
        left: left.len(),
        right: right.len(),
        bijective,
        triangles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::homology::homology;
    use crate::sset::{boundary_delta, delta, iso_check, Simplex};

    fn pt() -> Arc<SSet> {
        Arc::new(delta(0, 6).unwrap())
    }

    #[test]
    fn constant_and_restrict() {
        let span = corpus::span();
        let x = Diagram::constant(&span, &pt());
        x.validate().unwrap();
        let r = x.restrict(&["a", "c"]).unwrap();
        assert_eq!(r.index().n_morphisms(), 2);
        let all = x.restrict(span.objects()).unwrap();
        assert_eq!(all, x);
        let rr = r.restrict(&["a"]).unwrap();
        assert_eq!(rr, x.restrict(&["a"]).unwrap());
    }

    #[test]
    fn broken_functoriality_is_named() {
        let i = corpus::interval();
        let s0 = Arc::new(boundary_delta(1, 6).unwrap());
        let swap = SSetMap::new(s0.clone(), s0.clone(), vec![vec![Simplex::nd(0, 1), Simplex::nd(0, 0)]]).unwrap();
        let bad = Diagram::from_named(
            &i,
            vec![s0.clone(), s0.clone()],
            &[("id_0".into(), swap), ("f".into(), SSetMap::identity(&s0))],
        );
        assert!(matches!(bad, Err(Error::NotFunctorial(_))));
    }

    #[test]
    fn colimits() {
        for (_, c) in corpus::categories() {
            let l = Diagram::constant(&c, &pt()).colim().unwrap();
            assert_eq!(l.sset.counts(), vec![1], "connected index");
        }
        let t = corpus::terminal();
        let b2 = Arc::new(boundary_delta(2, 6).unwrap());
        let l = Diagram::constant(&t, &b2).colim().unwrap();
        assert!(iso_check(&l.sset, &b2, 1000).unwrap().is_some());
        // pt ← S^0 → pt glues both points of S^0 into one
        let x = corpus::mixed(&corpus::span()).unwrap();
        let l = x.colim().unwrap();
        assert_eq!(l.sset.counts(), vec![1]);
        // Δ^0 → ∂Δ^1 ← Δ^0: the two points of ∂Δ^1 stay apart
        let x = corpus::mixed(&corpus::cospan()).unwrap();
        assert_eq!(homology(&x.colim().unwrap().sset, 1).unwrap().betti(), vec![2, 0]);
    }

    #[test]
    fn induction_along_span() {
        let span = corpus::span();
        let x = Arc::new(corpus::mixed(&span).unwrap());
        let y = Arc::new(x.restrict(&["a", "c"]).unwrap());
        let ind = induce(&y, &span).unwrap();
        let b = span.obj("b").unwrap();
        assert!(ind.diagram.value(b).is_empty());
        for o in ["a", "c"] {
            let v = ind.diagram.value_of(o).unwrap();
            assert!(iso_check(v, x.value_of(o).unwrap(), 1000).unwrap().is_some());
        }
        let eps = counit(&x, &ind).unwrap();
        assert!(eps.component(span.obj("a").unwrap()).is_iso());
        assert!(eps.component(span.obj("c").unwrap()).is_iso());
        let eta = ind.unit(&y).unwrap();
        assert!(eta.is_iso());
    }

    #[test]
    fn induction_along_identity_is_trivial() {
        let sq = corpus::square();
        let x = Arc::new(corpus::mixed(&sq).unwrap());
        let ind = induce(&x, &sq).unwrap();
        let eps = counit(&x, &ind).unwrap();
        assert!(eps.is_iso());
    }

    #[test]
    fn adjunction_on_interval() {
        let i = corpus::interval();
        let z = Arc::new(corpus::mixed(&i).unwrap());
        for d in [&["0"][..], &["1"][..], &["0", "1"][..]] {
            let y = Arc::new(Diagram::constant(&i.full_subcategory(d).unwrap().0, &pt()));
            let r = ind_res_adjunction_check(&y, &z, 100_000).unwrap();
            assert!(r.passed(), "{d:?}: {r:?}");
        }
    }

    #[test]
    fn homology_equivalence_witness() {
        let i = corpus::interval();
        let x = Arc::new(corpus::mixed(&i).unwrap());
        let id = DiagramMap::identity(&x);
        assert!(is_objectwise_homology_equivalence(&id, i.objects(), 2).unwrap());
        let p = Arc::new(Diagram::constant(&i, &pt()));
        let collapse = DiagramMap::new(
            x.clone(),
            p,
            x.values().iter().map(|v| SSetMap::constant(v, &pt(), 0)).collect(),
        )
        .unwrap();
        let w = objectwise_homology_failure(&collapse, i.objects(), 2).unwrap().unwrap();
        assert_eq!(w.0, "0");
    }
}

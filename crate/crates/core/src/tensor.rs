//! Tensor products of diagrams over an index category, bi-tensor products
//! and the adjunction with mapping spaces.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{enumerate_diagram_maps, Diagram, DiagramMap};
use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FinCat};
use crate::sset::{combine_caps, coproduct_tagged, Coequalizer, Coproduct, MapSpace, Product, SSet, SSetMap};

/// `X ⊗_A Y` as the coequalizer of
/// `⊔_{α: b→b'} X(b') × Y(b) ⇉ ⊔_a X(a) × Y(a)`.
#[derive(Clone, Debug)]
pub struct TensorResult {
    pub sset: Arc<SSet>,
    /// `⊔_a X(a) × Y(a) → X ⊗_A Y`
    pub quotient_map: SSetMap,
    pub middle: Coproduct,
    pub products: Vec<Product>,
    /// `X(a) × Y(a) → X ⊗_A Y`
    pub summand_maps: Vec<SSetMap>,
    pub coequalizer: Coequalizer,
}

impl TensorResult {
    /// The map out of the tensor given by one map `X(a) × Y(a) → Z` per
    /// object; fails unless the maps balance the two actions.
    pub fn factor(&self, target: &Arc<SSet>, legs: &[SSetMap]) -> Result<SSetMap> {
        let h = self.middle.copair(target, legs)?;
        self.coequalizer.factor(&h)
    }

    /// The name of the first generator of the left-hand union on which the
    /// two structural maps differ after the quotient.
    pub fn unbalanced_generator(&self) -> Option<String> {
        let (f, g) = self.coequalizer.maps();
        let a = f.source();
        let q = &self.quotient_map;
        for n in 0..a.dimension().map_or(0, |d| d + 1) {
            for k in 0..a.count(n) {
                let x = crate::sset::Simplex::nd(n, k);
                if q.apply(&f.apply(&x)) != q.apply(&g.apply(&x)) {
                    return Some(a.cell(n, k).name.clone());
                }
            }
        }
        None
    }
}

/// `X ⊗_A Y` for `X` over `A^op` and `Y` over `A`.
pub fn tensor_over(x: &Diagram, y: &Diagram) -> Result<TensorResult> {
    let a = y.index();
    if *x.index() != a.opposite() {
        return Err(Error::IndexMismatch(
            "left factor is not indexed by the opposite of the right factor's index".into(),
        ));
    }
    let (cap, _) = combine_caps(x.values().iter().chain(y.values()).map(|v| &**v));
    let products = (0..a.n_objects())
        .map(|o| Product::new(x.value(o), y.value(o)))
        .collect::<Result<Vec<_>>>()?;
    let middle = coproduct_tagged(
        &products
            .iter()
            .enumerate()
            .map(|(o, p)| (String::from(a.object(o)), p.sset.clone()))
            .collect::<Vec<_>>(),
        cap,
    )?;
    let arrows: Vec<usize> = (0..a.n_morphisms()).filter(|&m| !a.is_identity(m)).collect();
    // α: b → b' in A acts as X(α): X(b') → X(b)
    let lefts = arrows
        .iter()
        .map(|&m| {
            let mor = a.morphism(m);
            Product::new(x.value(mor.tgt), y.value(mor.src))
        })
        .collect::<Result<Vec<_>>>()?;
    let left = coproduct_tagged(
        &arrows
            .iter()
            .zip(&lefts)
            .map(|(&m, p)| (a.morphism(m).id.clone(), p.sset.clone()))
            .collect::<Vec<_>>(),
        cap,
    )?;
    let mut fs = Vec::with_capacity(arrows.len());
    let mut gs = Vec::with_capacity(arrows.len());
    for (&m, p) in arrows.iter().zip(&lefts) {
        let mor = a.morphism(m);
        let (b, b2) = (mor.src, mor.tgt);
        let on_x = p.map_to(&products[b], x.action(m), &SSetMap::identity(y.value(b)))?;
        let on_y = p.map_to(&products[b2], &SSetMap::identity(x.value(b2)), y.action(m))?;
        fs.push(middle.injections[b].after(&on_x)?);
        gs.push(middle.injections[b2].after(&on_y)?);
    }
    let f = left.copair_unchecked(&middle.sset, &fs);
    let g = left.copair_unchecked(&middle.sset, &gs);
    let coequalizer = Coequalizer::new(&f, &g)?;
    let summand_maps = middle
        .injections
        .iter()
        .map(|i| coequalizer.projection.after(i))
        .collect::<Result<Vec<_>>>()?;
    Ok(TensorResult {
        sset: coequalizer.sset.clone(),
        quotient_map: coequalizer.projection.clone(),
        middle,
        products,
        summand_maps,
        coequalizer,
    })
}

/// `X ⊗_A −` applied to `φ: Y → Y'`.
pub fn tensor_map_right(x: &Diagram, phi: &DiagramMap, from: &TensorResult, to: &TensorResult) -> Result<SSetMap> {
    let legs = (0..x.index().n_objects())
        .map(|o| {
            let m = from.products[o].map_to(&to.products[o], &SSetMap::identity(x.value(o)), phi.component(o))?;
            to.summand_maps[o].after(&m)
        })
        .collect::<Result<Vec<_>>>()?;
    from.factor(&to.sset, &legs)
}

/// `XX ⊗_A Y` for `XX` over `A^op × C`: the diagram over `C` whose value at
/// `c` is `XX(−, c) ⊗_A Y`.
#[derive(Clone, Debug)]
pub struct BiTensor {
    pub diagram: Arc<Diagram>,
    /// Per object `c` of `C`.
    pub parts: Vec<TensorResult>,
    /// `XX(−, c)` per object `c`.
    pub slices: Vec<Diagram>,
    a: FinCat,
    c: FinCat,
}

/// Object of `A^op × C` for `(a, c)`.
fn pair_object(index: &FinCat, a: &FinCat, c: &FinCat, ao: usize, co: usize) -> usize {
    index
        .obj(&FinCat::pair_id(a.object(ao), c.object(co)))
        .expect("object of the product")
}

fn pair_morphism(index: &FinCat, a: &FinCat, c: &FinCat, am: usize, cm: usize) -> usize {
    index
        .mor(&FinCat::pair_id(&a.morphism(am).id, &c.morphism(cm).id))
        .expect("morphism of the product")
}

pub fn bi_tensor(xx: &Diagram, c: &FinCat, y: &Diagram) -> Result<BiTensor> {
    let a = y.index();
    let a_op = a.opposite();
    if *xx.index() != a_op.product(c) {
        return Err(Error::IndexMismatch(
            "left factor is not indexed by A^op × C for the right factor's A".into(),
        ));
    }
    let mut slices = Vec::with_capacity(c.n_objects());
    let mut parts = Vec::with_capacity(c.n_objects());
    for co in 0..c.n_objects() {
        let slice = xx.reindex(&CatFunctor::insert_left(&a_op, c, co)?)?;
        parts.push(tensor_over(&slice, y)?);
        slices.push(slice);
    }
    let index = xx.index();
    let actions = (0..c.n_morphisms())
        .map(|g| {
            let mor = c.morphism(g);
            let (from, to) = (&parts[mor.src], &parts[mor.tgt]);
            let legs = (0..a.n_objects())
                .map(|ao| {
                    let m = pair_morphism(index, &a_op, c, a.identity(ao), g);
                    let p = from.products[ao].map_to(&to.products[ao], xx.action(m), &SSetMap::identity(y.value(ao)))?;
                    to.summand_maps[ao].after(&p)
                })
                .collect::<Result<Vec<_>>>()?;
            from.factor(&to.sset, &legs)
        })
        .collect::<Result<Vec<_>>>()?;
    let values = parts.iter().map(|p| p.sset.clone()).collect();
    Ok(BiTensor {
        diagram: Arc::new(Diagram::new(c.clone(), values, actions)?),
        parts,
        slices,
        a: a.clone(),
        c: c.clone(),
    })
}

impl BiTensor {
    /// `f ⊗ Y` for `f: XX → XX'`, where `self` is `XX ⊗ Y` and `to` is
    /// `XX' ⊗ Y`.
    pub fn map_left(&self, f: &DiagramMap, y: &Diagram, to: &BiTensor) -> Result<DiagramMap> {
        let a_op = self.a.opposite();
        let index = f.source().index();
        if *index != a_op.product(&self.c) || *to.diagram.index() != self.c {
            return Err(Error::IndexMismatch("map is not indexed by A^op × C".into()));
        }
        let components = (0..self.c.n_objects())
            .map(|co| {
                let (from, tgt) = (&self.parts[co], &to.parts[co]);
                let legs = (0..self.a.n_objects())
                    .map(|ao| {
                        let o = pair_object(index, &a_op, &self.c, ao, co);
                        let p = from.products[ao].map_to(&tgt.products[ao], f.component(o), &SSetMap::identity(y.value(ao)))?;
                        tgt.summand_maps[ao].after(&p)
                    })
                    .collect::<Result<Vec<_>>>()?;
                from.factor(&tgt.sset, &legs)
            })
            .collect::<Result<Vec<_>>>()?;
        DiagramMap::new(self.diagram.clone(), to.diagram.clone(), components)
    }

    /// `XX ⊗ φ` for `φ: Y → Y'`, where `to` is `XX ⊗ Y'`.
    pub fn map_right(&self, phi: &DiagramMap, to: &BiTensor) -> Result<DiagramMap> {
        if *phi.source().index() != self.a || *to.diagram.index() != self.c {
            return Err(Error::IndexMismatch("map is not indexed by A".into()));
        }
        let components = (0..self.c.n_objects())
            .map(|co| tensor_map_right(&self.slices[co], phi, &self.parts[co], &to.parts[co]))
            .collect::<Result<Vec<_>>>()?;
        DiagramMap::new(self.diagram.clone(), to.diagram.clone(), components)
    }
}

/// `f ⊗ Y`, computing both bi-tensors.
pub fn bi_tensor_map(f: &DiagramMap, c: &FinCat, y: &Diagram) -> Result<DiagramMap> {
    let from = bi_tensor(f.source(), c, y)?;
    let to = bi_tensor(f.target(), c, y)?;
    from.map_left(f, y, &to)
}

/// `r(Y, Z)` over `A^op × C`, `(a, c) ↦ Map(Y(a), Z(c))` through degree
/// `q_max`, with the mapping spaces themselves.
#[derive(Clone, Debug)]
pub struct MappingDiagram {
    pub diagram: Arc<Diagram>,
    /// Indexed by the objects of `A^op × C`.
    pub spaces: Vec<MapSpace>,
}

pub fn mapping_diagram(y: &Diagram, z: &Diagram, q_max: usize, budget: usize) -> Result<MappingDiagram> {
    let (a, c) = (y.index(), z.index());
    let a_op = a.opposite();
    let index = a_op.product(c);
    let mut spaces: Vec<Option<MapSpace>> = vec![None; index.n_objects()];
    for ao in 0..a.n_objects() {
        for co in 0..c.n_objects() {
            let o = pair_object(&index, &a_op, c, ao, co);
            spaces[o] = Some(MapSpace::new(y.value(ao), z.value(co), q_max, budget)?);
        }
    }
    let spaces: Vec<MapSpace> = spaces.into_iter().map(|s| s.expect("every pair")).collect();
    let mut actions: Vec<Option<SSetMap>> = vec![None; index.n_morphisms()];
    for am in 0..a.n_morphisms() {
        for cm in 0..c.n_morphisms() {
            let m = pair_morphism(&index, &a_op, c, am, cm);
            let mor = index.morphism(m);
            // (α, γ) acts by f ↦ Z(γ) ∘ f ∘ (Y(α) × id)
            actions[m] = Some(spaces[mor.src].induced(&spaces[mor.tgt], y.action(am), z.action(cm))?);
        }
    }
    let values = spaces.iter().map(|s| s.sset.clone()).collect();
    let actions = actions.into_iter().map(|m| m.expect("every pair")).collect();
    Ok(MappingDiagram {
        diagram: Arc::new(Diagram::new(index, values, actions)?),
        spaces,
    })
}

/// Outcome of checking `mor(XX ⊗ Y, Z) ≅ mor(XX, r(Y, Z))` by enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorAdjunctionReport {
    pub left: usize,
    pub right: usize,
    pub bijective: bool,
    pub round_trips: bool,
}

impl TensorAdjunctionReport {
    pub fn passed(&self) -> bool {
        self.left == self.right && self.bijective && self.round_trips
    }
}

/// Enumerates both hom-sets and checks the canonical correspondence
/// `φ ↦ (x ↦ ((y, θ) ↦ φ(θ^* x, y)))` and its inverse by evaluation.
/// `q_max` must reach the dimension of every value of `XX`.
pub fn adjunction_bijection_check(
    xx: &Arc<Diagram>,
    y: &Arc<Diagram>,
    z: &Arc<Diagram>,
    q_max: usize,
    budget: usize,
) -> Result<TensorAdjunctionReport> {
    let (a, c) = (y.index(), z.index());
    let a_op = a.opposite();
    let tensor = bi_tensor(xx, c, y)?;
    let r = mapping_diagram(y, z, q_max, budget)?;
    let index = xx.index();
    let left = enumerate_diagram_maps(&tensor.diagram, z, budget)?;
    let right = enumerate_diagram_maps(xx, &r.diagram, budget)?;

    let to_right = |phi: &DiagramMap| -> Result<DiagramMap> {
        let mut components = vec![None; index.n_objects()];
        for ao in 0..a.n_objects() {
            for co in 0..c.n_objects() {
                let o = pair_object(index, &a_op, c, ao, co);
                let xv = xx.value(o);
                let part = &tensor.parts[co];
                let leg = phi.component(co).after(&part.summand_maps[ao])?;
                let space = &r.spaces[o];
                let images = (0..xv.dimension().map_or(0, |d| d + 1))
                    .map(|n| {
                        (0..xv.count(n))
                            .map(|k| {
                                let x = crate::sset::Simplex::nd(n, k);
                                space.simplex_from(n, |yy, theta| {
                                    leg.apply(&part.products[ao].pair(&xv.apply(&x, theta), yy))
                                })
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                components[o] = Some(SSetMap::new(xv.clone(), space.sset.clone(), images)?);
            }
        }
        DiagramMap::new(
            xx.clone(),
            r.diagram.clone(),
            components.into_iter().map(|m| m.expect("every pair")).collect(),
        )
    };
    let to_left = |psi: &DiagramMap| -> Result<DiagramMap> {
        let components = (0..c.n_objects())
            .map(|co| {
                let part = &tensor.parts[co];
                let legs = (0..a.n_objects())
                    .map(|ao| {
                        let o = pair_object(index, &a_op, c, ao, co);
                        let p = &part.products[ao];
                        let space = &r.spaces[o];
                        let images = (0..p.sset.dimension().map_or(0, |d| d + 1))
                            .map(|n| {
                                (0..p.sset.count(n))
                                    .map(|k| {
                                        let (x, yy) = p.generator(n, k);
                                        space.evaluate(&psi.component(o).apply(x), yy)
                                    })
                                    .collect()
                            })
                            .collect();
                        SSetMap::new(p.sset.clone(), z.value(co).clone(), images)
                    })
                    .collect::<Result<Vec<_>>>()?;
                part.factor(z.value(co), &legs)
            })
            .collect::<Result<Vec<_>>>()?;
        DiagramMap::new(tensor.diagram.clone(), z.clone(), components)
    };

    let mut hit = vec![false; right.len()];
    let mut bijective = left.len() == right.len();
    let mut round_trips = true;
    for phi in &left {
        let psi = to_right(phi)?;
        round_trips &= to_left(&psi)? == *phi;
        match right.iter().position(|r| *r == psi) {
            Some(i) if !hit[i] => hit[i] = true,
            _ => bijective = false,
        }
    }
    for psi in &right {
        round_trips &= to_right(&to_left(psi)?)? == *psi;
    }
    Ok(TensorAdjunctionReport {
        left: left.len(),
        right: right.len(),
        bijective,
        round_trips,
    })
}

/// Reason a tensor failed its balance check, for reports.
pub fn balance_failure(t: &TensorResult) -> Option<String> {
    t.unbalanced_generator().map(|g| format!("structural maps differ on `{g}`"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::sset::{constant_sset, delta, iso_check};
    use crate::DEFAULT_BUDGET;

    fn point_over(a: &FinCat) -> Diagram {
        Diagram::constant(&a.opposite(), &Arc::new(delta(0, 6).unwrap()))
    }

    /// The discrete representable `mor_A(−, a0)` over `A^op`.
    fn representable(a: &FinCat, a0: usize) -> Diagram {
        let a_op = a.opposite();
        let values: Vec<Arc<SSet>> = (0..a.n_objects())
            .map(|o| {
                let ids: Vec<&str> = a.hom(o, a0).iter().map(|&m| a.morphism(m).id.as_str()).collect();
                Arc::new(constant_sset(&ids, 6).unwrap())
            })
            .collect();
        // α: b → b' (in A) sends f: b' → a0 to f ∘ α
        let actions = (0..a.n_morphisms())
            .map(|m| {
                let mor = a.morphism(m);
                let (from, to) = (&values[mor.tgt], &values[mor.src]);
                let images: Vec<crate::sset::Simplex> = a
                    .hom(mor.tgt, a0)
                    .iter()
                    .map(|&f| {
                        let fa = a.compose(f, m).unwrap();
                        let k = a.hom(mor.src, a0).iter().position(|&g| g == fa).unwrap();
                        crate::sset::Simplex::nd(0, k)
                    })
                    .collect();
                let images = if from.is_empty() { Vec::new() } else { vec![images] };
                SSetMap::new(from.clone(), to.clone(), images).unwrap()
            })
            .collect();
        Diagram::new(a_op, values, actions).unwrap()
    }

    #[test]
    fn point_tensor_is_colimit() {
        for (_, a) in corpus::categories() {
            for (name, y) in corpus::diagrams(&a) {
                let t = tensor_over(&point_over(&a), &y).unwrap();
                assert_eq!(t.unbalanced_generator(), None);
                let colim = y.colim().unwrap();
                assert!(
                    iso_check(&t.sset, &colim.sset, DEFAULT_BUDGET).unwrap().is_some(),
                    "{name}"
                );
            }
        }
    }

    #[test]
    fn representable_tensor_is_value() {
        for a in [corpus::interval(), corpus::span()] {
            let y = corpus::mixed(&a).unwrap();
            for a0 in 0..a.n_objects() {
                let t = tensor_over(&representable(&a, a0), &y).unwrap();
                assert!(iso_check(&t.sset, y.value(a0), DEFAULT_BUDGET).unwrap().is_some());
            }
        }
    }

    #[test]
    fn empty_right_factor() {
        let a = corpus::span();
        let y = Diagram::constant(&a, &Arc::new(SSet::empty(6)));
        let t = tensor_over(&point_over(&a), &y).unwrap();
        assert!(t.sset.is_empty());
    }

    #[test]
    fn index_mismatch() {
        let a = corpus::span();
        let y = corpus::mixed(&a).unwrap();
        assert!(matches!(tensor_over(&y, &y), Err(Error::IndexMismatch(_))));
    }

    #[test]
    fn bi_tensor_over_terminal_is_tensor() {
        let a = corpus::interval();
        let t = corpus::terminal();
        let y = corpus::mixed(&a).unwrap();
        let xx = Diagram::constant(&a.opposite().product(&t), &Arc::new(delta(1, 6).unwrap()));
        let bt = bi_tensor(&xx, &t, &y).unwrap();
        let x = Diagram::constant(&a.opposite(), &Arc::new(delta(1, 6).unwrap()));
        let direct = tensor_over(&x, &y).unwrap();
        assert!(iso_check(bt.diagram.value(0), &direct.sset, DEFAULT_BUDGET).unwrap().is_some());
    }

    #[test]
    fn identity_maps_to_identity() {
        let a = corpus::span();
        let c = corpus::interval();
        let y = corpus::mixed(&a).unwrap();
        let xx = Arc::new(Diagram::constant(&a.opposite().product(&c), &Arc::new(delta(1, 6).unwrap())));
        let f = bi_tensor_map(&DiagramMap::identity(&xx), &c, &y).unwrap();
        assert!(f.is_identity());
    }

    #[test]
    fn adjunction_with_empty_right_factor() {
        let a = corpus::interval();
        let c = corpus::interval();
        let y = Arc::new(Diagram::constant(&a, &Arc::new(SSet::empty(6))));
        let z = Arc::new(corpus::mixed(&c).unwrap());
        let xx = Arc::new(Diagram::constant(&a.opposite().product(&c), &Arc::new(delta(0, 6).unwrap())));
        let report = adjunction_bijection_check(&xx, &y, &z, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!((report.left, report.right), (1, 1));
        assert!(report.passed());
    }

    #[test]
    fn adjunction_on_interval() {
        let a = corpus::interval();
        let pt = Arc::new(delta(0, 6).unwrap());
        let d1 = Arc::new(delta(1, 6).unwrap());
        let y = Arc::new(corpus::mixed(&a).unwrap());
        let z = Arc::new(
            Diagram::from_named(&a, vec![pt.clone(), d1.clone()], &[("f".into(), SSetMap::constant(&pt, &d1, 1))])
                .unwrap(),
        );
        let xx = Arc::new(Diagram::constant(&a.opposite().product(&a), &d1));
        let report = adjunction_bijection_check(&xx, &y, &z, 1, DEFAULT_BUDGET).unwrap();
        assert!(report.left > 0);
        assert!(report.passed(), "{report:?}");
    }
}

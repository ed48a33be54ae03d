use std::sync::Arc;

use barcof_core::approx::{build_f, build_theta, hocolim, lambda_iso, thm62_compare, verify_theta_we, RelativePair};
use barcof_core::diagram::{induce, Diagram};
use barcof_core::fincat::{CategorySpec, FinCat};
use barcof_core::homology::homology;
use barcof_core::sset::{boundary_delta, delta, iso_check, Nerve};
use barcof_core::DEFAULT_BUDGET;
use proptest::prelude::*;

/// The poset on `0..n` generated by `edges`, each read from the smaller end.
fn poset(n: usize, edges: &[(usize, usize)]) -> FinCat {
    let mut below = vec![vec![false; n]; n];
    for &(a, b) in edges {
        let (i, j) = ((a % n).min(b % n), (a % n).max(b % n));
        if i != j {
            below[i][j] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if below[i][k] && below[k][j] {
                    below[i][j] = true;
                }
            }
        }
    }
    let name = |i: usize, j: usize| format!("m{i}{j}");
    let mut morphisms = Vec::new();
    let mut compose = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if below[i][j] {
                morphisms.push((name(i, j), format!("o{i}"), format!("o{j}")));
                for k in 0..n {
                    if below[j][k] {
                        compose.push((name(j, k), name(i, j), name(i, k)));
                    }
                }
            }
        }
    }
    FinCat::new(&CategorySpec {
        objects: (0..n).map(|i| format!("o{i}")).collect(),
        morphisms,
        identities: Default::default(),
        compose,
    })
    .expect("posets are categories")
}

fn arb_poset() -> impl Strategy<Value = FinCat> {
    (1usize..=4, prop::collection::vec((0usize..4, 0usize..4), 0..6)).prop_map(|(n, e)| poset(n, &e))
}

/// A poset with a nonempty set of its objects.
fn arb_pair() -> impl Strategy<Value = (FinCat, Vec<String>)> {
    (arb_poset(), any::<u8>()).prop_map(|(c, mask)| {
        let n = c.n_objects();
        let mut objs: Vec<String> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| c.object(i).to_string()).collect();
        if objs.is_empty() {
            objs.push(c.object(0).to_string());
        }
        (c, objs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn opposite_is_an_involution(c in arb_poset()) {
        prop_assert_eq!(c.opposite().opposite(), c.clone());
        c.opposite().validate().unwrap();
        c.product(&c.opposite()).validate().unwrap();
    }

    #[test]
    fn nerves_satisfy_the_simplicial_identities(c in arb_poset()) {
        let n = Nerve::new(&c, None).unwrap();
        n.sset.validate().unwrap();
        prop_assert_eq!(n.sset.count(0), c.n_objects());
        let nonidentity = (0..c.n_morphisms()).filter(|&m| !c.is_identity(m)).count();
        prop_assert_eq!(n.sset.counts().get(1).copied().unwrap_or(0), nonidentity);
    }

    #[test]
    fn f_is_induced_from_the_subcategory((c, objs) in arb_pair()) {
        let pair = RelativePair::new(&c, &objs).unwrap();
        let dd = RelativePair::full(pair.subcategory()).unwrap();
        let ind = induce(&build_f(&dd), pair.index()).unwrap();
        let f = build_f(&pair);
        for o in 0..pair.index().n_objects() {
            prop_assert!(iso_check(ind.diagram.value(o), f.value(o), DEFAULT_BUDGET).unwrap().is_some());
        }
    }

    #[test]
    fn theta_is_a_homology_equivalence((c, objs) in arb_pair(), op in any::<bool>()) {
        let pair = RelativePair::new(&c, &objs).unwrap();
        let b = build_theta(&pair, op, None).unwrap();
        for d in 0..pair.subcategory().n_objects() {
            for y in 0..c.n_objects() {
                let r = verify_theta_we(&b, d, y, 3).unwrap();
                prop_assert!(r.passed(), "{:?}", r);
            }
        }
    }

    #[test]
    fn lambda_inverts((c, objs) in arb_pair(), s0 in any::<bool>()) {
        let pair = RelativePair::new(&c, &objs).unwrap();
        let k = Arc::new(if s0 { boundary_delta(1, 6).unwrap() } else { delta(0, 6).unwrap() });
        let x = Diagram::constant(pair.subcategory(), &k);
        prop_assert!(lambda_iso(&pair, &x).unwrap().is_inverse_pair().unwrap());
    }

    #[test]
    fn hocolim_of_a_point_is_the_nerve(c in arb_poset()) {
        let pt = Arc::new(delta(0, 6).unwrap());
        let h = hocolim(&Diagram::constant(&c, &pt), None).unwrap();
        let n = Nerve::new(&c, None).unwrap();
        prop_assert_eq!(homology(&h.sset, 3).unwrap(), homology(&n.sset, 3).unwrap());
    }

    #[test]
    fn lcolim_is_hocolim(c in arb_poset(), s0 in any::<bool>()) {
        let k = Arc::new(if s0 { boundary_delta(1, 6).unwrap() } else { delta(0, 6).unwrap() });
        let r = thm62_compare(&Arc::new(Diagram::constant(&c, &k))).unwrap();
        prop_assert!(r.passed(), "{:?}", r.witness);
    }
}

//! The built-in instances: small index categories, relative pairs `D ⊆ C`
//! and diagrams over them.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::Diagram;
use crate::fincat::{CategorySpec, FinCat};
use crate::sset::{boundary_delta, delta, SSet, SSetMap, Simplex};
use crate::DEFAULT_DIM_CAP;

fn build(objects: &[&str], morphisms: &[(&str, &str, &str)], compose: &[(&str, &str, &str)]) -> FinCat {
    let spec = CategorySpec {
        objects: objects.iter().map(|s| s.to_string()).collect(),
        morphisms: morphisms
            .iter()
            .map(|(m, s, t)| (m.to_string(), s.to_string(), t.to_string()))
            .collect(),
        identities: Default::default(),
        compose: compose
            .iter()
            .map(|(g, f, gf)| (g.to_string(), f.to_string(), gf.to_string()))
            .collect(),
    };
    FinCat::new(&spec).expect("corpus category is valid")
}

pub fn terminal() -> FinCat {
    build(&["*"], &[], &[])
}

/// `0 → 1`, the arrow named `f`.
pub fn interval() -> FinCat {
    build(&["0", "1"], &[("f", "0", "1")], &[])
}

/// `a ← b → c`
pub fn span() -> FinCat {
    build(&["a", "b", "c"], &[("p", "b", "a"), ("q", "b", "c")], &[])
}

/// `a → b ← c`
pub fn cospan() -> FinCat {
    build(&["a", "b", "c"], &[("p", "a", "b"), ("q", "c", "b")], &[])
}

/// The commutative square `00 → 01 → 11`, `00 → 10 → 11` with diagonal `d`.
pub fn square() -> FinCat {
    build(
        &["00", "01", "10", "11"],
        &[
            ("a", "00", "10"),
            ("b", "00", "01"),
            ("c", "10", "11"),
            ("e", "01", "11"),
            ("d", "00", "11"),
        ],
        &[("c", "a", "d"), ("e", "b", "d")],
    )
}

/// Index categories by name.
pub fn categories() -> Vec<(&'static str, FinCat)> {
    vec![
        ("terminal", terminal()),
        ("interval", interval()),
        ("span", span()),
        ("cospan", cospan()),
        ("square", square()),
    ]
}

pub fn category(name: &str) -> Option<FinCat> {
    categories().into_iter().find(|(n, _)| *n == name).map(|(_, c)| c)
}

/// A category with a full subcategory given by its objects.
#[derive(Clone, Debug)]
pub struct PairInstance {
    pub name: String,
    pub category_name: &'static str,
    pub category: FinCat,
    pub d_objs: Vec<String>,
}

/// Every category with `D = C`, plus the two relative pairs on `{a, c}`.
pub fn pairs() -> Vec<PairInstance> {
    let mut out: Vec<PairInstance> = categories()
        .into_iter()
        .map(|(n, c)| PairInstance {
            name: n.to_string(),
            category_name: n,
            d_objs: c.objects().to_vec(),
            category: c,
        })
        .collect();
    for (n, c) in [("span", span()), ("cospan", cospan())] {
        out.push(PairInstance {
            name: alloc::format!("{n}/a,c"),
            category_name: n,
            category: c,
            d_objs: vec!["a".into(), "c".into()],
        });
    }
    out
}

fn arc(s: SSet) -> Arc<SSet> {
    Arc::new(s)
}

fn vertex_map(from: &Arc<SSet>, to: &Arc<SSet>, images: &[usize]) -> SSetMap {
    let levels = from.dimension().map_or(0, |d| d + 1);
    let mut imgs: Vec<Vec<Simplex>> = vec![images.iter().map(|&v| Simplex::nd(0, v)).collect()];
    imgs.truncate(levels);
    SSetMap::new(from.clone(), to.clone(), imgs).expect("vertex map")
}

/// Constant diagrams with values `Δ^0`, `S^0` and `∂Δ^2`, plus one mixed
/// diagram per index category.
pub fn diagrams(c: &FinCat) -> Vec<(String, Diagram)> {
    let cap = DEFAULT_DIM_CAP;
    let pt = arc(delta(0, cap).unwrap());
    let s0 = arc(boundary_delta(1, cap).unwrap());
    let bd2 = arc(boundary_delta(2, cap).unwrap());
    let mut out = vec![
        ("point".to_string(), Diagram::constant(c, &pt)),
        ("s0".to_string(), Diagram::constant(c, &s0)),
        ("boundary2".to_string(), Diagram::constant(c, &bd2)),
    ];
    if let Some(m) = mixed(c) {
        out.push(("mixed".to_string(), m));
    }
    out
}

/// The non-constant diagram for each corpus index category, recognised by
/// its objects.
pub fn mixed(c: &FinCat) -> Option<Diagram> {
    let cap = DEFAULT_DIM_CAP;
    let pt = arc(delta(0, cap).unwrap());
    let s0 = arc(boundary_delta(1, cap).unwrap());
    let d1 = arc(delta(1, cap).unwrap());
    let objs: Vec<&str> = c.objects().iter().map(|s| s.as_str()).collect();
    let values: Vec<Arc<SSet>>;
    let mut actions: Vec<(String, SSetMap)> = Vec::new();
    match objs.as_slice() {
        ["0", "1"] => {
            // ∂Δ^1 ↪ Δ^1
            values = vec![s0.clone(), d1.clone()];
            actions.push(("f".into(), vertex_map(&s0, &d1, &[0, 1])));
        }
        ["a", "b", "c"] if c.morphism(c.mor("p").ok()?).src == 1 => {
            // pt ← S^0 → pt
            values = vec![pt.clone(), s0.clone(), pt.clone()];
            actions.push(("p".into(), vertex_map(&s0, &pt, &[0, 0])));
            actions.push(("q".into(), vertex_map(&s0, &pt, &[0, 0])));
        }
        ["a", "b", "c"] => {
            // Δ^0 → ∂Δ^1 ← Δ^0
            values = vec![pt.clone(), s0.clone(), pt.clone()];
            actions.push(("p".into(), vertex_map(&pt, &s0, &[0])));
            actions.push(("q".into(), vertex_map(&pt, &s0, &[1])));
        }
        ["00", "01", "10", "11"] => {
            // S^0 → Δ^1 at the corner, points elsewhere
            values = vec![s0.clone(), pt.clone(), d1.clone(), pt.clone()];
            actions.push(("a".into(), vertex_map(&s0, &d1, &[0, 1])));
            actions.push(("b".into(), vertex_map(&s0, &pt, &[0, 0])));
            actions.push(("c".into(), SSetMap::constant(&d1, &pt, 0)));
            actions.push(("e".into(), SSetMap::identity(&pt)));
            actions.push(("d".into(), vertex_map(&s0, &pt, &[0, 0])));
        }
        _ if c.n_objects() >= 2 && (0..c.n_morphisms()).all(|m| c.is_identity(m)) => {
            // discrete: alternate points and pairs of points
            values = (0..c.n_objects()).map(|o| if o % 2 == 0 { pt.clone() } else { s0.clone() }).collect();
        }
        _ => return None,
    }
    Some(Diagram::from_named(c, values, &actions).expect("corpus diagram is valid"))
}

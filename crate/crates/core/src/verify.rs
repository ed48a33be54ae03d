//! The verification suites run over the built-in corpus. Each check has a
//! stable id and a witness when it fails; reports are sorted by id.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::approx::{
    bar_approx, build_e, build_f, build_theta, hocolim, hocolim_nat_variant_compare, lambda_iso, thm62_compare,
    verify_theta_we, RelativePair,
};
use crate::corpus::{self, PairInstance};
use crate::diagram::{ind_res_adjunction_check, objectwise_homology_failure, Diagram};
use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::homology::homology;
use crate::sset::{boundary_delta, delta, iso_check, skeleton, skeleton_pushout_check, Nerve, SSet, SSetBuilder};
use crate::tensor::{adjunction_bijection_check, tensor_over};
use crate::{DEFAULT_BUDGET, DEFAULT_DIM_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Skeleton,
    Theta,
    Lambda,
    Approx,
    Adjunction,
    Comparison,
    NatVariant,
    Topology,
    Structure,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Skeleton,
        Suite::Theta,
        Suite::Lambda,
        Suite::Approx,
        Suite::Adjunction,
        Suite::Comparison,
        Suite::NatVariant,
        Suite::Topology,
        Suite::Structure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Skeleton => "skeleton",
            Suite::Theta => "theta",
            Suite::Lambda => "lambda",
            Suite::Approx => "approx",
            Suite::Adjunction => "adjunction",
            Suite::Comparison => "comparison",
            Suite::NatVariant => "nat-variant",
            Suite::Topology => "topology",
            Suite::Structure => "structure",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A search budget or dimension cap ran out before the check finished.
    Exceeded,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Exceeded => "exceeded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: &str, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        Report {
            suite: suite.to_string(),
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Explicit dimension cap for nerves; `None` builds them exactly.
    pub cap: Option<usize>,
    pub budget: usize,
    /// Highest homology degree compared.
    pub up_to: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            cap: None,
            budget: DEFAULT_BUDGET,
            up_to: 3,
        }
    }
}

fn check(id: String, outcome: Result<Option<String>>, detail: impl FnOnce() -> String) -> Check {
    match outcome {
        Ok(None) => Check {
            id,
            status: Status::Pass,
            detail: detail(),
        },
        Ok(Some(w)) => Check {
            id,
            status: Status::Fail,
            detail: w,
        },
        Err(e @ (Error::SearchBudgetExceeded(_) | Error::CapExceeded { .. } | Error::TruncationRequired)) => Check {
            id,
            status: Status::Exceeded,
            detail: e.to_string(),
        },
        Err(e) => Check {
            id,
            status: Status::Fail,
            detail: e.to_string(),
        },
    }
}

fn fail_unless(ok: bool, witness: impl FnOnce() -> String) -> Option<String> {
    if ok {
        None
    } else {
        Some(witness())
    }
}

pub fn run(suite: Suite, config: &VerifyConfig) -> Report {
    let checks = match suite {
        Suite::Skeleton => skeleton_suite(),
        Suite::Theta => theta_suite(config),
        Suite::Lambda => lambda_suite(),
        Suite::Approx => approx_suite(config),
        Suite::Adjunction => adjunction_suite(config),
        Suite::Comparison => comparison_suite(),
        Suite::NatVariant => nat_variant_suite(config),
        Suite::Topology => topology_suite(config),
        Suite::Structure => structure_suite(),
    };
    Report::new(suite.name(), checks)
}

/// Every suite in order, merged into one report.
pub fn run_all(config: &VerifyConfig) -> Report {
    let checks = Suite::ALL
        .into_iter()
        .flat_map(|s| {
            run(s, config).checks.into_iter().map(move |mut c| {
                c.id = format!("{}/{}", s.name(), c.id);
                c
            })
        })
        .collect();
    Report::new("all", checks)
}

/// `Δ^1 / ∂Δ^1`: one vertex and one loop.
pub fn circle() -> SSet {
    let mut b = SSetBuilder::new(DEFAULT_DIM_CAP);
    let v = b.add("v", vec![]).expect("fresh name");
    b.add("loop", vec![v.clone(), v]).expect("fresh name");
    b.build().expect("valid circle")
}

fn skeleton_suite() -> Vec<Check> {
    let cap = DEFAULT_DIM_CAP;
    let square = Nerve::new(&corpus::square(), None).expect("loop-free").sset;
    let spaces: Vec<(&str, Arc<SSet>)> = vec![
        ("delta2", Arc::new(delta(2, cap).expect("small"))),
        ("boundary2", Arc::new(boundary_delta(2, cap).expect("small"))),
        ("circle", Arc::new(circle())),
        ("nerve-square", square),
    ];
    let mut out = Vec::new();
    for (name, k) in spaces {
        let top = k.dimension().unwrap_or(0);
        for n in 0..=top {
            let r = skeleton_pushout_check(&k, n);
            out.push(check(
                format!("{name}/sk{n}"),
                r.map(|r| fail_unless(r.passed, || r.witness.unwrap_or_default())),
                || format!("pushout rebuilds the {n}-skeleton"),
            ));
        }
        let exhausts = skeleton(&k, top).map(|(sk, inc)| {
            fail_unless(inc.is_iso() && sk.counts() == k.counts(), || {
                format!("top skeleton has counts {:?}, expected {:?}", sk.counts(), k.counts())
            })
        });
        out.push(check(format!("{name}/exhausts"), exhausts, || {
            format!("sk{top} is all of the space")
        }));
    }
    out
}

fn relative_pairs() -> Vec<(PairInstance, RelativePair)> {
    corpus::pairs()
        .into_iter()
        .map(|p| {
            let r = RelativePair::new(&p.category, &p.d_objs).expect("corpus pair");
            (p, r)
        })
        .collect()
}

fn theta_suite(config: &VerifyConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for (p, pair) in relative_pairs() {
        for op in [true, false] {
            let variant = if op { "op" } else { "nat" };
            let bundle = match build_theta(&pair, op, config.cap) {
                Ok(b) => b,
                Err(e) => {
                    out.push(check(format!("{}/{variant}", p.name), Err(e), String::new));
                    continue;
                }
            };
            for d in 0..pair.subcategory().n_objects() {
                for c in 0..pair.category().n_objects() {
                    let id = format!("{}/{variant}/({},{})", p.name, pair.subcategory().object(d), pair.category().object(c));
                    let r = verify_theta_we(&bundle, d, c, config.up_to);
                    let n = pair.category().hom(pair.in_c(d), c).len();
                    out.push(check(id, r.map(|r| fail_unless(r.passed(), || r.witness.unwrap_or_default())), || {
                        format!("{n} components, acyclic fibers, section and prism homotopy verified")
                    }));
                }
            }
        }
    }
    out
}

/// Corpus diagrams over `D`: constants and the mixed diagram over `D`, and
/// restrictions of the diagrams over `C`.
fn diagrams_over_d(p: &PairInstance, pair: &RelativePair) -> Vec<(String, Diagram)> {
    let mut out = corpus::diagrams(pair.subcategory());
    if pair.subcategory().n_objects() < pair.category().n_objects() {
        for (name, x) in corpus::diagrams(&p.category) {
            if name == "mixed" {
                out.push(("res-mixed".to_string(), x.restrict(pair.d_objs()).expect("objects of D")));
            }
        }
    }
    out
}

fn lambda_suite() -> Vec<Check> {
    let mut out = Vec::new();
    for (p, pair) in relative_pairs() {
        let full = pair.subcategory().n_objects() == pair.category().n_objects();
        for (name, x) in diagrams_over_d(&p, &pair) {
            let r = lambda_iso(&pair, &x).and_then(|l| {
                if !l.is_inverse_pair()? {
                    return Ok(Some("λ and its inverse do not compose to identities".to_string()));
                }
                if full {
                    for o in 0..x.index().n_objects() {
                        if iso_check(l.tensor.diagram.value(o), x.value(o), DEFAULT_BUDGET)?.is_none() {
                            return Ok(Some(format!("𝔽 ⊗ X is not X at `{}`", x.index().object(o))));
                        }
                    }
                }
                Ok(None)
            });
            out.push(check(format!("{}/{name}", p.name), r, || "λ ∘ λ⁻¹ = id and λ⁻¹ ∘ λ = id".into()));
        }
    }
    out
}

fn approx_suite(config: &VerifyConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for (p, pair) in relative_pairs() {
        for (name, x) in corpus::diagrams(&p.category) {
            let x = Arc::new(x);
            let r = bar_approx(&x, &pair, true).and_then(|b| {
                if let Some((d, why)) = objectwise_homology_failure(&b.xi, pair.d_objs(), config.up_to)? {
                    return Ok(Some(format!("ξ at `{d}`: {why}")));
                }
                for d in pair.d_objs() {
                    let o = pair.category().obj(d)?;
                    let eps = b.epsilon.component(o);
                    if !eps.is_iso() || iso_check(eps.source(), eps.target(), config.budget)?.is_none() {
                        return Ok(Some(format!("ε is not an isomorphism at `{d}`")));
                    }
                }
                Ok(None)
            });
            out.push(check(format!("{}/{name}", p.name), r, || {
                "ξ is a homology equivalence on D and ε|D is an isomorphism".into()
            }));
        }
    }
    out
}

fn adjunction_suite(config: &VerifyConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let cap = DEFAULT_DIM_CAP;
    let pt = Arc::new(delta(0, cap).expect("small"));
    let s0 = Arc::new(boundary_delta(1, cap).expect("small"));
    for (p, pair) in relative_pairs() {
        let zs: Vec<(String, Arc<Diagram>)> = corpus::diagrams(&p.category)
            .into_iter()
            .filter(|(n, _)| n != "boundary2")
            .map(|(n, z)| (n, Arc::new(z)))
            .collect();
        let ys: Vec<(&str, Arc<Diagram>)> = vec![
            ("point", Arc::new(Diagram::constant(pair.subcategory(), &pt))),
            ("s0", Arc::new(Diagram::constant(pair.subcategory(), &s0))),
        ];
        for (yn, y) in &ys {
            for (zn, z) in &zs {
                let r = ind_res_adjunction_check(y, z, config.budget);
                out.push(check(
                    format!("{}/ind-res/{yn}/{zn}", p.name),
                    r.map(|r| {
                        fail_unless(r.passed(), || {
                            format!("{} maps ind Y → Z against {} maps Y → res Z", r.left, r.right)
                        })
                    }),
                    || "mor(ind Y, Z) ≅ mor(Y, res Z)".into(),
                ));
                // 𝔽 is discrete, so maps into r(Y, Z) only see its vertices
                let f = Arc::new(build_f(&pair));
                let r = adjunction_bijection_check(&f, y, z, 0, config.budget);
                out.push(check(
                    format!("{}/tensor-F/{yn}/{zn}", p.name),
                    r.map(|r| {
                        fail_unless(r.passed(), || {
                            format!("{} maps 𝔽 ⊗ Y → Z against {} maps 𝔽 → r(Y, Z)", r.left, r.right)
                        })
                    }),
                    || "mor(𝔽 ⊗ Y, Z) ≅ mor(𝔽, r(Y, Z))".into(),
                ));
            }
        }
    }
    // a one-dimensional left factor: 𝔼 over the interval
    let pair = RelativePair::full(&corpus::interval()).expect("corpus pair");
    let e = build_e(&pair, true, None).expect("loop-free").diagram;
    let interval = pair.category().clone();
    let ys = [("point", Diagram::constant(&interval, &pt)), ("s0", Diagram::constant(&interval, &s0))];
    for (yn, y) in ys {
        let y = Arc::new(y);
        for (zn, z) in [("point", Diagram::constant(&interval, &pt)), ("mixed", corpus::mixed(&interval).expect("interval"))] {
            let r = adjunction_bijection_check(&e, &y, &Arc::new(z), 1, config.budget);
            out.push(check(
                format!("interval/tensor-E/{yn}/{zn}"),
                r.map(|r| fail_unless(r.passed(), || format!("{} against {} maps", r.left, r.right))),
                || "mor(𝔼 ⊗ Y, Z) ≅ mor(𝔼, r(Y, Z))".into(),
            ));
        }
    }
    out
}

fn comparison_suite() -> Vec<Check> {
    let mut out = Vec::new();
    for (cn, c) in corpus::categories() {
        for (name, x) in corpus::diagrams(&c) {
            let r = thm62_compare(&Arc::new(x)).map(|r| fail_unless(r.passed(), || r.witness.unwrap_or_default()));
            out.push(check(format!("{cn}/{name}"), r, || {
                "L colim X ≅ hocolim X and the triangle over colim X commutes".into()
            }));
        }
    }
    out
}

fn nat_variant_suite(config: &VerifyConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for (cn, c) in corpus::categories() {
        for (name, x) in corpus::diagrams(&c) {
            let r = hocolim_nat_variant_compare(&Arc::new(x), config.up_to);
            let betti = r.as_ref().map(|r| r.hocolim.betti()).unwrap_or_default();
            out.push(check(
                format!("{cn}/{name}"),
                r.map(|r| fail_unless(r.passed(), || format!("homology differs in degrees {:?}", r.differing_degrees()))),
                || format!("Betti numbers {betti:?} on both sides"),
            ));
        }
    }
    out
}

/// Betti numbers of the double mapping cylinder of `A ← B → C` for finite
/// sets, from its two-term cellular chain complex: one vertex per point of
/// `A` and `C`, one edge `f(b) → g(b)` per point of `B`.
pub fn double_cylinder_betti(a: usize, b: usize, c: usize, f: &[usize], g: &[usize], up_to: usize) -> Vec<usize> {
    assert!(f.len() == b && g.len() == b);
    let rows: Vec<Vec<i128>> = (0..b)
        .map(|e| {
            let mut row = vec![0i128; a + c];
            row[f[e]] -= 1;
            row[a + g[e]] += 1;
            row
        })
        .collect();
    let r = rational_rank(rows);
    let mut betti = vec![a + c - r, b - r];
    betti.resize(up_to + 1, 0);
    betti.truncate(up_to + 1);
    betti
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Rank over ℚ by fraction-free elimination with row content removed.
fn rational_rank(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let k = row[col];
            if k == 0 {
                continue;
            }
            for j in 0..cols {
                row[j] = row[j] * pivot[col] - k * pivot[j];
            }
            let content = row.iter().fold(0, |acc, &v| gcd(acc, v));
            if content > 1 {
                row.iter_mut().for_each(|v| *v /= content);
            }
        }
        rank += 1;
    }
    rank
}

fn topology_suite(config: &VerifyConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let span = corpus::span();
    let x = corpus::mixed(&span).expect("span");
    let r = hocolim(&x, config.cap).and_then(|h| {
        let hom = homology(&h.sset, config.up_to)?;
        // pt ← S^0 → pt with both points of S^0 going to the single point
        let oracle = double_cylinder_betti(1, 2, 1, &[0, 0], &[0, 0], config.up_to);
        let mut expected = vec![1, 1];
        expected.resize(config.up_to + 1, 0);
        Ok(fail_unless(
            hom.betti() == oracle && oracle == expected && hom.groups.iter().all(|g| g.torsion.is_empty()),
            || format!("tensor formula gives {:?}, cylinder gives {oracle:?}", hom.betti()),
        ))
    });
    out.push(check("span/cylinder".into(), r, || "homology (Z, Z, 0, 0) both ways".into()));
    for (cn, c) in corpus::categories() {
        let pt = Arc::new(delta(0, DEFAULT_DIM_CAP).expect("small"));
        let r = hocolim(&Diagram::constant(&c, &pt), config.cap).and_then(|h| {
            let lhs = homology(&h.sset, config.up_to)?;
            let rhs = homology(&Nerve::new(&c, config.cap)?.sset, config.up_to)?;
            Ok(fail_unless(lhs == rhs, || format!("hocolim {:?} against nerve {:?}", lhs.betti(), rhs.betti())))
        });
        out.push(check(format!("{cn}/point"), r, || "hocolim of the point has the homology of the nerve".into()));
    }
    out
}

fn category_checks(out: &mut Vec<Check>, id: &str, c: &FinCat) {
    out.push(check(format!("cat/{id}"), c.validate().map(|_| None), || {
        format!("{} objects, {} morphisms", c.n_objects(), c.n_morphisms())
    }));
}

fn structure_suite() -> Vec<Check> {
    let mut out = Vec::new();
    for (p, pair) in relative_pairs() {
        let c = pair.category();
        category_checks(&mut out, &format!("{}/C", p.name), c);
        category_checks(&mut out, &format!("{}/D", p.name), pair.subcategory());
        category_checks(&mut out, &format!("{}/Cop", p.name), &c.opposite());
        category_checks(&mut out, &format!("{}/DopxC", p.name), pair.index());
        for d in pair.d_objs() {
            for y in c.objects() {
                if let Ok(k) = c.comma_double(pair.d_objs(), d, y) {
                    category_checks(&mut out, &format!("{}/comma({d},{y})", p.name), &k.category);
                }
            }
        }
        for y in c.objects() {
            if let Ok(s) = c.under(y) {
                category_checks(&mut out, &format!("{}/under({y})", p.name), &s.category);
            }
        }
        let e = build_e(&pair, true, None).map(|e| e.diagram);
        let f = Ok(Arc::new(build_f(&pair)));
        for (name, d) in [("E", e), ("F", f)] {
            let r = d.and_then(|d| {
                for v in d.values() {
                    v.validate()?;
                }
                d.validate().map(|_| None)
            });
            out.push(check(format!("diagram/{}/{name}", p.name), r, || "values and actions valid".into()));
        }
        for (name, x) in corpus::diagrams(c) {
            let x = Arc::new(x);
            let r = bar_approx(&x, &pair, true).and_then(|b| {
                for v in b.qbar.diagram.values() {
                    v.validate()?;
                }
                b.qbar.diagram.validate()?;
                b.xi.validate()?;
                b.epsilon.validate()?;
                b.theta_tensor.validate()?;
                // same input, same output
                let again = bar_approx(&x, &pair, true)?;
                Ok(fail_unless(
                    format!("{:?}", again.qbar.diagram) == format!("{:?}", b.qbar.diagram) && again.xi == b.xi,
                    || "repeated construction differs".into(),
                ))
            });
            out.push(check(format!("diagram/{}/qbar-{name}", p.name), r, || {
                "Q̄X valid, ξ natural, deterministic".into()
            }));
        }
    }
    for (cn, c) in corpus::categories() {
        for (name, x) in corpus::diagrams(&c) {
            let r = hocolim(&x, None).and_then(|h| {
                h.sset.validate()?;
                h.under.validate()?;
                let t = tensor_over(&h.under, &x)?;
                Ok(fail_unless(t.sset.counts() == h.sset.counts() && t.unbalanced_generator().is_none(), || {
                    "hocolim is not deterministic or not balanced".into()
                }))
            });
            out.push(check(format!("sset/{cn}/hocolim-{name}"), r, || "simplicial identities hold".into()));
        }
        let r = Nerve::new(&c, None).and_then(|n| n.sset.validate().map(|_| None));
        out.push(check(format!("sset/{cn}/nerve"), r, || "simplicial identities hold".into()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()), Some(s));
        }
        assert_eq!(Suite::parse("nope"), None);
    }

    #[test]
    fn cylinder_oracle() {
        // two points glued to two points along one edge each: two components
        assert_eq!(double_cylinder_betti(2, 2, 2, &[0, 1], &[0, 1], 2), vec![2, 0, 0]);
        // a circle
        assert_eq!(double_cylinder_betti(1, 2, 1, &[0, 0], &[0, 0], 3), vec![1, 1, 0, 0]);
        // a wedge of two circles
        assert_eq!(double_cylinder_betti(1, 3, 1, &[0, 0, 0], &[0, 0, 0], 1), vec![1, 2]);
        // empty middle
        assert_eq!(double_cylinder_betti(1, 0, 1, &[], &[], 1), vec![2, 0]);
    }

    #[test]
    fn rank_over_the_rationals() {
        assert_eq!(rational_rank(vec![vec![2, 4], vec![1, 2]]), 1);
        assert_eq!(rational_rank(vec![vec![2, 3], vec![3, 5]]), 2);
        assert_eq!(rational_rank(vec![]), 0);
    }

    #[test]
    fn circle_is_a_circle() {
        let c = circle();
        assert_eq!(homology(&c, 2).unwrap().betti(), vec![1, 1, 0]);
    }

    #[test]
    fn cheap_suites_pass() {
        let config = VerifyConfig::default();
        for s in [Suite::Skeleton, Suite::Topology, Suite::Lambda] {
            let r = run(s, &config);
            assert!(r.passed(), "{:?}", r.checks.iter().filter(|c| c.status != Status::Pass).collect::<Vec<_>>());
            let mut ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
            let n = ids.len();
            ids.dedup();
            assert_eq!(ids.len(), n);
        }
    }
}

//! The subcommands, as functions from parsed arguments to named JSON
//! documents, summary lines and an exit status.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use barcof_core::approx::{bar_approx, hocolim, lcolim, thm62_compare, RelativePair};
use barcof_core::homology::{homology, homology_equivalence_failure};
use barcof_core::sset::SSet;
use barcof_core::verify::{self, Report, Status, Suite, VerifyConfig};
use barcof_core::Error;
use serde::Serialize;
use serde_json::{json, Value};

use crate::format::{self, Document, LoadError};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    Ok = 0,
    CheckFailed = 1,
    InputError = 2,
    Exceeded = 3,
}

/// Named JSON documents plus a human-readable summary.
#[derive(Clone, Debug)]
pub struct Output {
    pub files: Vec<(String, Value)>,
    pub summary: Vec<String>,
    pub exit: Exit,
}

impl Output {
    fn new() -> Self {
        Output {
            files: Vec::new(),
            summary: Vec::new(),
            exit: Exit::Ok,
        }
    }

    fn file(&mut self, name: &str, value: impl Serialize) {
        self.files.push((name.to_string(), serde_json::to_value(value).expect("serializable")));
    }

    fn fail(&mut self, exit: Exit) {
        self.exit = self.exit.max(exit);
    }

    fn failure(exit: Exit, message: String) -> Self {
        Output {
            files: Vec::new(),
            summary: vec![message],
            exit,
        }
    }
}

fn exit_for(e: &Error) -> Exit {
    match e {
        Error::SearchBudgetExceeded(_) | Error::CapExceeded { .. } | Error::TruncationRequired => Exit::Exceeded,
        _ => Exit::CheckFailed,
    }
}

fn computation_failure(e: Error) -> Output {
    let mut message = format!("error: {e}");
    if let Error::CapExceeded { needed, .. } = e {
        message.push_str(&format!(" (rerun with --cap {needed} or higher)"));
    }
    Output::failure(exit_for(&e), message)
}

fn input_failure(e: LoadError) -> Output {
    Output::failure(Exit::InputError, format!("input error: {e}"))
}

/// Homology through the top dimension, where every group that can be
/// nonzero lives.
fn full_homology(k: &SSet) -> Result<barcof_core::homology::HomologyResult, Error> {
    homology(k, k.dimension().unwrap_or(0))
}

fn betti_line(label: &str, h: &barcof_core::homology::HomologyResult) -> String {
    let torsion: Vec<String> = h
        .groups
        .iter()
        .filter(|g| !g.torsion.is_empty())
        .map(|g| format!("H{}: {:?}", g.degree, g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()))
        .collect();
    if torsion.is_empty() {
        format!("{label}: betti {:?}", h.betti())
    } else {
        format!("{label}: betti {:?}, torsion {}", h.betti(), torsion.join(", "))
    }
}

pub fn validate(files: &[PathBuf]) -> Output {
    let mut out = Output::new();
    let mut results = Vec::new();
    for file in files {
        let name = file.display().to_string();
        match format::load_document(file) {
            Ok(doc) => {
                let (kind, detail) = match &doc {
                    Document::Category(c) => ("category", format!("{} objects, {} morphisms", c.n_objects(), c.n_morphisms())),
                    Document::SSet(k) => ("sset", format!("generators per dimension {:?}", k.counts())),
                    Document::Diagram(x) => (
                        "diagram",
                        format!("{} objects, {} morphisms", x.index().n_objects(), x.index().n_morphisms()),
                    ),
                };
                out.summary.push(format!("ok   {name} ({kind}: {detail})"));
                results.push(json!({"file": name, "kind": kind, "status": "ok", "detail": detail}));
            }
            Err(e) => {
                let (status, exit) = match &e {
                    LoadError::Parse(_) => ("input-error", Exit::InputError),
                    LoadError::Invalid { .. } => ("invalid", Exit::CheckFailed),
                };
                out.fail(exit);
                out.summary.push(format!("FAIL {e}"));
                results.push(json!({"file": name, "status": status, "detail": e.to_string()}));
            }
        }
    }
    out.file("validate.json", json!({ "results": results }));
    out
}

pub struct HocolimArgs<'a> {
    pub diagram: &'a Path,
    pub lcolim: bool,
    pub compare: bool,
    pub cap: Option<usize>,
}

pub fn hocolim_cmd(args: &HocolimArgs) -> Output {
    let x = match format::load_diagram(args.diagram) {
        Ok(x) => Arc::new(x),
        Err(e) => return input_failure(e),
    };
    let run = || -> Result<Output, Error> {
        let mut out = Output::new();
        let h = hocolim(&x, args.cap)?;
        let hom = full_homology(&h.sset)?;
        out.summary.push(format!("hocolim: generators per dimension {:?}", h.sset.counts()));
        out.summary.push(betti_line("hocolim", &hom));
        out.file("hocolim.json", format::sset_to_file(&h.sset));
        out.file("hocolim_homology.json", format::homology_to_entries(&hom));
        if args.lcolim {
            let l = lcolim(&x, true)?;
            let lh = full_homology(&l.sset)?;
            out.summary.push(betti_line("L colim", &lh));
            out.file("lcolim.json", format::sset_to_file(&l.sset));
            out.file("lcolim_homology.json", format::homology_to_entries(&lh));
        }
        if args.compare {
            let r = thm62_compare(&x)?;
            let passed = r.passed();
            out.summary.push(format!(
                "comparison L colim → hocolim: {}; triangle over colim: {}",
                if r.iso.is_some() { "isomorphism" } else { "NOT an isomorphism" },
                if r.triangle { "commutes" } else { "DOES NOT commute" }
            ));
            let (forward, backward) = match &r.iso {
                Some((f, g)) => (json!(format::map_to_assignment(f)), json!(format::map_to_assignment(g))),
                None => (Value::Null, Value::Null),
            };
            out.file(
                "comparison.json",
                json!({
                    "passed": passed,
                    "isomorphism": r.iso.is_some(),
                    "triangle": r.triangle,
                    "witness": r.witness,
                    "forward": forward,
                    "backward": backward,
                }),
            );
            if !passed {
                out.fail(Exit::CheckFailed);
            }
        }
        Ok(out)
    };
    run().unwrap_or_else(computation_failure)
}

pub struct ApproxArgs<'a> {
    pub diagram: &'a Path,
    pub subcat: &'a [String],
    pub nat: bool,
    pub up_to: usize,
}

pub fn approx_cmd(args: &ApproxArgs) -> Output {
    let x = match format::load_diagram(args.diagram) {
        Ok(x) => Arc::new(x),
        Err(e) => return input_failure(e),
    };
    let pair = match RelativePair::new(x.index(), args.subcat) {
        Ok(p) => p,
        Err(e) => return Output::failure(Exit::InputError, format!("input error: --subcat: {e}")),
    };
    let run = || -> Result<Output, Error> {
        let mut out = Output::new();
        let b = bar_approx(&x, &pair, !args.nat)?;
        let c = x.index();
        let mut objects = Vec::new();
        let mut passed = true;
        for o in 0..c.n_objects() {
            let id = c.object(o);
            let in_d = pair.d_objs().iter().any(|d| d == id);
            let xi = b.xi.component(o);
            let failure = homology_equivalence_failure(xi, args.up_to)?;
            let source = homology(xi.source(), args.up_to)?;
            let target = homology(xi.target(), args.up_to)?;
            if in_d && failure.is_some() {
                passed = false;
            }
            let verdict = match (&failure, xi.is_iso()) {
                (_, true) => "isomorphism",
                (None, false) => "homology equivalence",
                (Some(_), false) => "not a homology equivalence",
            };
            out.summary.push(format!(
                "ξ({id}){}: {verdict}; Q̄X betti {:?}, X betti {:?}",
                if in_d { " [D]" } else { "" },
                source.betti(),
                target.betti()
            ));
            objects.push(json!({
                "object": id,
                "in_subcategory": in_d,
                "isomorphism": xi.is_iso(),
                "homology_equivalence": failure.is_none(),
                "qbar_betti": source.betti(),
                "x_betti": target.betti(),
                "witness": failure,
            }));
        }
        out.summary.push(format!(
            "ξ is {}a homology equivalence on D = {{{}}} (through degree {})",
            if passed { "" } else { "NOT " },
            pair.d_objs().join(", "),
            args.up_to
        ));
        out.file("qbar.json", format::diagram_to_file(&b.qbar.diagram));
        let xi: BTreeMap<String, format::MapAssignment> = (0..c.n_objects())
            .map(|o| (c.object(o).to_string(), format::map_to_assignment(b.xi.component(o))))
            .collect();
        out.file("xi.json", xi);
        out.file(
            "report.json",
            json!({
                "subcategory": pair.d_objs(),
                "variant": if args.nat { "nat" } else { "op" },
                "up_to": args.up_to,
                "passed": passed,
                "note": "weak equivalences are checked through integral homology and π0",
                "objects": objects,
            }),
        );
        if !passed {
            out.fail(Exit::CheckFailed);
        }
        Ok(out)
    };
    run().unwrap_or_else(computation_failure)
}

pub fn report_json(r: &Report) -> Value {
    json!({
        "suite": r.suite,
        "passed": r.passed(),
        "counts": {
            "pass": r.count(Status::Pass),
            "fail": r.count(Status::Fail),
            "exceeded": r.count(Status::Exceeded),
        },
        "checks": r.checks.iter().map(|c| json!({
            "id": c.id,
            "status": c.status.as_str(),
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    })
}

/// Runs one suite, or every suite for `"all"`.
pub fn verify_cmd(suite: &str, config: &VerifyConfig) -> Output {
    let report = if suite == "all" {
        verify::run_all(config)
    } else {
        match Suite::parse(suite) {
            Some(s) => verify::run(s, config),
            None => {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                return Output::failure(
                    Exit::InputError,
                    format!("input error: unknown suite `{suite}`; expected one of {} or all", names.join(", ")),
                );
            }
        }
    };
    let mut out = Output::new();
    for c in &report.checks {
        if c.status != Status::Pass {
            out.summary.push(format!("{:<8} {}: {}", c.status.as_str(), c.id, c.detail));
        }
    }
    out.summary.push(format!(
        "{}: {} checks, {} passed, {} failed, {} exceeded a cap or budget",
        report.suite,
        report.checks.len(),
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Exceeded)
    ));
    if report.count(Status::Fail) > 0 {
        out.fail(Exit::CheckFailed);
    } else if report.count(Status::Exceeded) > 0 {
        out.fail(Exit::Exceeded);
    }
    out.file("report.json", report_json(&report));
    out
}

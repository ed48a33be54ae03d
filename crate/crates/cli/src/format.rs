//! JSON file formats for categories, simplicial sets, maps, diagrams and
//! homology, in both directions.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use barcof_core::diagram::Diagram;
use barcof_core::fincat::{CategorySpec, FinCat};
use barcof_core::homology::HomologyResult;
use barcof_core::sset::{SSet, SSetBuilder, SSetMap, Simplex};
use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;

/// Malformed input: unreadable file, bad JSON, or a field that does not fit
/// the format. `field` is a dotted path into the document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub file: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.file)?;
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, ":{l}:{c}")?;
        }
        if let Some(field) = &self.field {
            write!(f, " at `{field}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ParseError {}

/// What went wrong while loading: the text did not parse, or it parsed into
/// something that breaks an invariant.
#[derive(Debug)]
pub enum LoadError {
    Parse(Box<ParseError>),
    Invalid { file: String, field: String, error: Box<barcof_core::Error> },
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Parse(e) => e.fmt(f),
            LoadError::Invalid { file, field, error } => write!(f, "{file} at `{field}`: {error}"),
        }
    }
}

impl std::error::Error for LoadError {}

impl From<ParseError> for LoadError {
    fn from(e: ParseError) -> Self {
        LoadError::Parse(Box::new(e))
    }
}

type Load<T> = Result<T, LoadError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeEntry {
    pub g: String,
    pub f: String,
    pub gf: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismEntry>,
    #[serde(default)]
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub compose: Vec<ComposeEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SSetFile {
    pub dim_cap: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub truncated: bool,
    /// Generator names by dimension, in order.
    pub nd: BTreeMap<usize, Vec<String>>,
    /// Faces `d_0, …, d_n` of each positive-dimensional generator.
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<String>>,
}

/// Images of every generator of the source, as formal simplices of the
/// target.
pub type MapAssignment = BTreeMap<String, String>;

/// Either a path (relative to the referring file) or the document inline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Ref<T> {
    Path(String),
    Inline(T),
}

impl<'de, T: DeserializeOwned> Deserialize<'de> for Ref<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(p) => Ok(Ref::Path(p)),
            v => T::deserialize(v).map(Ref::Inline).map_err(D::Error::custom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub category: Ref<CategoryFile>,
    pub values: BTreeMap<String, Ref<SSetFile>>,
    /// Identities and composites of listed morphisms may be left out.
    #[serde(default)]
    pub action: BTreeMap<String, MapAssignment>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub source: SSetFile,
    pub target: SSetFile,
    pub images: MapAssignment,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub degree: usize,
    pub betti: usize,
    /// Invariant factors; numbers when they fit in 64 bits, strings otherwise.
    pub torsion: Vec<Value>,
}

/// The kinds of document `validate` recognises.
#[derive(Clone, Debug)]
pub enum Document {
    Category(FinCat),
    SSet(SSet),
    Diagram(Diagram),
}

fn parse_error(file: &Path, e: serde_json::Error) -> ParseError {
    ParseError {
        file: file.display().to_string(),
        line: Some(e.line()),
        column: Some(e.column()),
        field: None,
        message: e.to_string(),
    }
}

fn read(file: &Path) -> Result<String, ParseError> {
    std::fs::read_to_string(file).map_err(|e| ParseError {
        file: file.display().to_string(),
        line: None,
        column: None,
        field: None,
        message: e.to_string(),
    })
}

fn parse_json<T: for<'de> Deserialize<'de>>(file: &Path, text: &str) -> Result<T, ParseError> {
    serde_json::from_str(text).map_err(|e| parse_error(file, e))
}

fn invalid(file: &Path, field: impl Into<String>, error: barcof_core::Error) -> LoadError {
    LoadError::Invalid {
        file: file.display().to_string(),
        field: field.into(),
        error: Box::new(error),
    }
}

pub fn category_from_file(file: &Path, c: &CategoryFile) -> Load<FinCat> {
    let spec = CategorySpec {
        objects: c.objects.clone(),
        morphisms: c.morphisms.iter().map(|m| (m.id.clone(), m.src.clone(), m.tgt.clone())).collect(),
        identities: c.identities.clone(),
        compose: c.compose.iter().map(|e| (e.g.clone(), e.f.clone(), e.gf.clone())).collect(),
    };
    FinCat::new(&spec).map_err(|e| invalid(file, "category", e))
}

pub fn category_to_file(c: &FinCat) -> CategoryFile {
    let mut compose = Vec::new();
    for g in 0..c.n_morphisms() {
        for f in 0..c.n_morphisms() {
            if c.is_identity(g) || c.is_identity(f) {
                continue;
            }
            if let Some(gf) = c.compose(g, f) {
                compose.push(ComposeEntry {
                    g: c.morphism(g).id.clone(),
                    f: c.morphism(f).id.clone(),
                    gf: c.morphism(gf).id.clone(),
                });
            }
        }
    }
    CategoryFile {
        objects: c.objects().to_vec(),
        morphisms: (0..c.n_morphisms())
            .map(|m| {
                let mor = c.morphism(m);
                MorphismEntry {
                    id: mor.id.clone(),
                    src: c.object(mor.src).to_string(),
                    tgt: c.object(mor.tgt).to_string(),
                }
            })
            .collect(),
        identities: (0..c.n_objects())
            .map(|o| (c.object(o).to_string(), c.morphism(c.identity(o)).id.clone()))
            .collect(),
        compose,
    }
}

pub fn sset_from_file(file: &Path, s: &SSetFile) -> Load<SSet> {
    let mut b = SSetBuilder::new(s.dim_cap).truncated(s.truncated);
    for (&dim, names) in &s.nd {
        for name in names {
            let field = format!("faces.{name}");
            let faces: Vec<Simplex> = match (dim, s.faces.get(name)) {
                (0, None) => Vec::new(),
                (0, Some(f)) if f.is_empty() => Vec::new(),
                (0, Some(_)) => {
                    return Err(invalid(
                        file,
                        field,
                        barcof_core::Error::BadSimplex {
                            cell: name.clone(),
                            reason: "vertices have no faces".into(),
                        },
                    ))
                }
                (_, None) => {
                    return Err(ParseError {
                        file: file.display().to_string(),
                        line: None,
                        column: None,
                        field: Some(field),
                        message: format!("missing faces of {dim}-simplex `{name}`"),
                    }
                    .into())
                }
                (_, Some(f)) => f
                    .iter()
                    .enumerate()
                    .map(|(i, t)| b.parse_formal(t).map_err(|e| invalid(file, format!("{field}[{i}]"), e)))
                    .collect::<Load<Vec<_>>>()?,
            };
            if dim > 0 && faces.len() != dim + 1 {
                return Err(invalid(
                    file,
                    field,
                    barcof_core::Error::BadSimplex {
                        cell: name.clone(),
                        reason: format!("{} faces given for a {dim}-simplex", faces.len()),
                    },
                ));
            }
            b.add(name, faces).map_err(|e| invalid(file, format!("nd.{dim}"), e))?;
        }
    }
    for name in s.faces.keys() {
        if b.get(name).is_none() {
            return Err(invalid(file, format!("faces.{name}"), barcof_core::Error::UnknownSimplex(name.clone())));
        }
    }
    b.build().map_err(|e| invalid(file, "faces", e))
}

pub fn sset_to_file(k: &SSet) -> SSetFile {
    let mut nd = BTreeMap::new();
    let mut faces = BTreeMap::new();
    for n in 0..k.dimension().map_or(0, |d| d + 1) {
        nd.insert(n, k.cells(n).iter().map(|c| c.name.clone()).collect());
        for c in k.cells(n) {
            if n > 0 {
                faces.insert(c.name.clone(), c.faces.iter().map(|f| k.formal(f)).collect());
            }
        }
    }
    SSetFile {
        dim_cap: k.dim_cap(),
        truncated: k.is_truncated(),
        nd,
        faces,
    }
}

pub fn map_from_assignment(
    file: &Path,
    field: &str,
    source: &Arc<SSet>,
    target: &Arc<SSet>,
    images: &MapAssignment,
) -> Load<SSetMap> {
    let levels = source.dimension().map_or(0, |d| d + 1);
    let mut out = Vec::with_capacity(levels);
    for n in 0..levels {
        let level = source
            .cells(n)
            .iter()
            .map(|c| {
                let f = format!("{field}.{}", c.name);
                let text = images.get(&c.name).ok_or_else(|| ParseError {
                    file: file.display().to_string(),
                    line: None,
                    column: None,
                    field: Some(f.clone()),
                    message: format!("no image given for `{}`", c.name),
                })?;
                target.parse_formal(text).map_err(|e| invalid(file, f, e))
            })
            .collect::<Load<Vec<_>>>()?;
        out.push(level);
    }
    for name in images.keys() {
        if source.lookup(name).is_none() {
            return Err(invalid(file, format!("{field}.{name}"), barcof_core::Error::UnknownSimplex(name.clone())));
        }
    }
    SSetMap::new(source.clone(), target.clone(), out).map_err(|e| invalid(file, field, e))
}

pub fn map_to_assignment(f: &SSetMap) -> MapAssignment {
    let k = f.source();
    let mut out = BTreeMap::new();
    for n in 0..k.dimension().map_or(0, |d| d + 1) {
        for (i, c) in k.cells(n).iter().enumerate() {
            out.insert(c.name.clone(), f.target().formal(f.image_of(n, i)));
        }
    }
    out
}

pub fn map_to_file(f: &SSetMap) -> MapFile {
    MapFile {
        source: sset_to_file(f.source()),
        target: sset_to_file(f.target()),
        images: map_to_assignment(f),
    }
}

fn resolve(base: &Path, rel: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new(".")).join(rel)
}

fn load_ref<T: for<'de> Deserialize<'de> + Clone>(file: &Path, r: &Ref<T>) -> Load<(PathBuf, T)> {
    match r {
        Ref::Inline(t) => Ok((file.to_path_buf(), t.clone())),
        Ref::Path(p) => {
            let path = resolve(file, p);
            let text = read(&path)?;
            Ok((path.clone(), parse_json(&path, &text)?))
        }
    }
}

pub fn diagram_from_file(file: &Path, d: &DiagramFile) -> Load<Diagram> {
    let (cfile, cdoc) = load_ref(file, &d.category)?;
    let c = category_from_file(&cfile, &cdoc)?;
    for name in d.values.keys() {
        if c.object_index(name).is_none() {
            return Err(invalid(file, format!("values.{name}"), barcof_core::Error::UnknownObject(name.clone())));
        }
    }
    let values = c
        .objects()
        .iter()
        .map(|o| {
            let r = d.values.get(o).ok_or_else(|| ParseError {
                file: file.display().to_string(),
                line: None,
                column: None,
                field: Some(format!("values.{o}")),
                message: format!("no value given for object `{o}`"),
            })?;
            let (sfile, sdoc) = load_ref(file, r)?;
            Ok(Arc::new(sset_from_file(&sfile, &sdoc)?))
        })
        .collect::<Load<Vec<_>>>()?;
    let named = d
        .action
        .iter()
        .map(|(id, images)| {
            let m = c.mor(id).map_err(|e| invalid(file, format!("action.{id}"), e))?;
            let mor = c.morphism(m);
            let f = map_from_assignment(file, &format!("action.{id}"), &values[mor.src], &values[mor.tgt], images)?;
            Ok((id.clone(), f))
        })
        .collect::<Load<Vec<_>>>()?;
    Diagram::from_named(&c, values, &named).map_err(|e| invalid(file, "action", e))
}

pub fn diagram_to_file(x: &Diagram) -> DiagramFile {
    let c = x.index();
    DiagramFile {
        category: Ref::Inline(category_to_file(c)),
        values: (0..c.n_objects())
            .map(|o| (c.object(o).to_string(), Ref::Inline(sset_to_file(x.value(o)))))
            .collect(),
        action: (0..c.n_morphisms())
            .filter(|&m| !c.is_identity(m))
            .map(|m| (c.morphism(m).id.clone(), map_to_assignment(x.action(m))))
            .collect(),
    }
}

pub fn homology_to_entries(h: &HomologyResult) -> Vec<HomologyEntry> {
    h.groups
        .iter()
        .map(|g| HomologyEntry {
            degree: g.degree,
            betti: g.betti,
            torsion: g
                .torsion
                .iter()
                .map(|t| {
                    let s = t.to_string();
                    s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s))
                })
                .collect(),
        })
        .collect()
}

pub fn load_diagram(file: &Path) -> Load<Diagram> {
    let text = read(file)?;
    diagram_from_file(file, &parse_json(file, &text)?)
}

pub fn load_sset(file: &Path) -> Load<SSet> {
    let text = read(file)?;
    sset_from_file(file, &parse_json(file, &text)?)
}

pub fn load_category(file: &Path) -> Load<FinCat> {
    let text = read(file)?;
    category_from_file(file, &parse_json(file, &text)?)
}

/// Loads any document, telling the kinds apart by their keys.
pub fn load_document(file: &Path) -> Load<Document> {
    let text = read(file)?;
    let v: Value = parse_json(file, &text)?;
    let has = |k: &str| v.get(k).is_some();
    if has("values") {
        Ok(Document::Diagram(diagram_from_file(file, &parse_json(file, &text)?)?))
    } else if has("nd") {
        Ok(Document::SSet(sset_from_file(file, &parse_json(file, &text)?)?))
    } else if has("objects") {
        Ok(Document::Category(category_from_file(file, &parse_json(file, &text)?)?))
    } else {
        Err(ParseError {
            file: file.display().to_string(),
            line: None,
            column: None,
            field: None,
            message: "not a category, simplicial set or diagram (expected `objects`, `nd` or `values`)".into(),
        }
        .into())
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

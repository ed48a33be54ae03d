//! Finite-type simplicial sets stored as non-degenerate generators whose
//! faces are formal simplices in Eilenberg–Zilber normal form.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

mod build;
mod coequalizer;
mod iso;
mod map;
mod mapping;
mod nerve;
mod product;
pub mod simplex;
mod skeleton;

pub use build::{boundary_delta, constant_sset, coproduct, coproduct_tagged, delta, level_zero, Coproduct};
pub use coequalizer::{pushout, Coequalizer, Pushout};
pub use iso::{enumerate_maps, iso_check};
pub use map::SSetMap;
pub(crate) use map::same;
pub use mapping::MapSpace;
pub use nerve::{homotopy_from_nat_trans, nerve_of_functor, Homotopy, Nerve};
pub use product::Product;
pub use simplex::Simplex;
pub use skeleton::{skeleton, skeleton_pushout_check, SkeletonReport};

/// A non-degenerate generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub name: String,
    /// `faces[i] = d_i`, empty for vertices.
    pub faces: Vec<Simplex>,
}

/// A simplicial set with finitely many non-degenerate simplices up to
/// `dim_cap`.
///
/// When `truncated` is false the generators listed are all there are; when
/// true, generators above `dim_cap` may exist but are not tracked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSet {
    cells: Vec<Vec<Cell>>,
    dim_cap: usize,
    truncated: bool,
    index: BTreeMap<String, (usize, usize)>,
}

impl SSet {
    pub fn empty(dim_cap: usize) -> Self {
        SSet {
            cells: Vec::new(),
            dim_cap,
            truncated: false,
            index: BTreeMap::new(),
        }
    }

    /// Builds and validates from generator lists per dimension.
    pub fn new(cells: Vec<Vec<Cell>>, dim_cap: usize, truncated: bool) -> Result<Self> {
        let s = Self::from_cells_unchecked(cells, dim_cap, truncated)?;
        s.validate()?;
        Ok(s)
    }

    /// Skips the simplicial-identity check; used by constructions whose
    /// output is correct by construction. Names are still checked.
    pub(crate) fn from_cells_unchecked(
        mut cells: Vec<Vec<Cell>>,
        dim_cap: usize,
        truncated: bool,
    ) -> Result<Self> {
        while cells.last().is_some_and(|l| l.is_empty()) {
            cells.pop();
        }
        if cells.len() > dim_cap + 1 {
            return Err(Error::CapExceeded {
                needed: cells.len() - 1,
                cap: dim_cap,
            });
        }
        let mut index = BTreeMap::new();
        for (n, level) in cells.iter().enumerate() {
            for (k, c) in level.iter().enumerate() {
                if index.insert(c.name.clone(), (n, k)).is_some() {
                    return Err(Error::DuplicateId(c.name.clone()));
                }
            }
        }
        Ok(SSet {
            cells,
            dim_cap,
            truncated,
            index,
        })
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Highest dimension carrying a generator; `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    /// Highest dimension in which the simplices are known exactly.
    pub fn known_through(&self) -> usize {
        if self.truncated {
            self.dim_cap
        } else {
            usize::MAX
        }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self, n: usize) -> &[Cell] {
        self.cells.get(n).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn count(&self, n: usize) -> usize {
        self.cells(n).len()
    }

    /// Generator counts per dimension, up to the top dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(|l| l.len()).collect()
    }

    pub fn cell(&self, n: usize, k: usize) -> &Cell {
        &self.cells[n][k]
    }

    pub fn lookup(&self, name: &str) -> Option<Simplex> {
        self.index.get(name).map(|&(n, k)| Simplex::nd(n, k))
    }

    pub fn base_name(&self, s: &Simplex) -> &str {
        &self.cells[s.base_dim][s.base].name
    }

    /// Formal string `"s3 s1 | name"`; `"| name"` for a generator.
    pub fn formal(&self, s: &Simplex) -> String {
        let mut out = String::new();
        for (i, w) in s.word.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&format!("s{w}"));
        }
        if !s.word.is_empty() {
            out.push(' ');
        }
        out.push_str("| ");
        out.push_str(self.base_name(s));
        out
    }

    /// Parses the formal string syntax; the word may be empty.
    pub fn parse_formal(&self, text: &str) -> Result<Simplex> {
        parse_formal_with(text, |name| self.lookup(name))
    }

    fn check_exists(&self, s: &Simplex) -> bool {
        s.base_dim < self.cells.len() && s.base < self.cells[s.base_dim].len()
    }

    /// `X(θ)(s)` for a monotone `θ: [m] → [dim s]` given as a vertex list.
    pub fn apply(&self, s: &Simplex, theta: &[usize]) -> Simplex {
        let surj = s.surjection();
        let mu: Vec<usize> = theta.iter().map(|&j| surj[j]).collect();
        let (tau, image) = simplex::epi_mono(&mu);
        let z = self.face_injective(s.base_dim, s.base, &image);
        z.degenerate_by(&tau)
    }

    /// `X(δ)(y)` for a generator `y` and an injective `δ`.
    fn face_injective(&self, dim: usize, base: usize, delta: &[usize]) -> Simplex {
        if delta.len() == dim + 1 {
            return Simplex::nd(dim, base);
        }
        let missing = (0..=dim)
            .rev()
            .find(|v| !delta.contains(v))
            .expect("a proper face misses a vertex");
        let rest: Vec<usize> = delta
            .iter()
            .map(|&v| if v < missing { v } else { v - 1 })
            .collect();
        let face = &self.cells[dim][base].faces[missing];
        self.apply(face, &rest)
    }

    pub fn face(&self, s: &Simplex, i: usize) -> Simplex {
        self.apply(s, &simplex::coface(s.dim(), i))
    }

    pub fn vertex(&self, s: &Simplex, j: usize) -> Simplex {
        self.apply(s, &[j])
    }

    pub fn vertices(&self, s: &Simplex) -> Vec<usize> {
        (0..=s.dim()).map(|j| self.vertex(s, j).base).collect()
    }

    /// Every `n`-simplex, degenerate ones included, ordered by base
    /// dimension, base index and then word.
    pub fn simplices(&self, n: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for k in 0..=n.min(self.cells.len().saturating_sub(1)) {
            if k >= self.cells.len() {
                break;
            }
            let ws = simplex::words(n, n - k);
            for b in 0..self.cells[k].len() {
                for w in &ws {
                    out.push(Simplex {
                        base_dim: k,
                        base: b,
                        word: w.clone(),
                    });
                }
            }
        }
        out
    }

    /// Checks face references, face dimensions and `d_i d_j = d_{j−1} d_i`
    /// for `i < j` on every generator.
    pub fn validate(&self) -> Result<()> {
        for (n, level) in self.cells.iter().enumerate() {
            for c in level {
                let expected = if n == 0 { 0 } else { n + 1 };
                if c.faces.len() != expected {
                    return Err(Error::BadSimplex {
                        cell: c.name.clone(),
                        reason: format!("expected {expected} faces, found {}", c.faces.len()),
                    });
                }
                for f in &c.faces {
                    if !self.check_exists(f) {
                        return Err(Error::BadSimplex {
                            cell: c.name.clone(),
                            reason: "face refers to a missing generator".into(),
                        });
                    }
                    if f.dim() != n - 1 || f.word.windows(2).any(|w| w[0] <= w[1]) || f.word.iter().any(|&i| i >= f.dim()) {
                        return Err(Error::BadSimplex {
                            cell: c.name.clone(),
                            reason: format!("malformed face `{}`", self.formal(f)),
                        });
                    }
                }
            }
        }
        for (n, level) in self.cells.iter().enumerate().skip(2) {
            for (k, c) in level.iter().enumerate() {
                let s = Simplex::nd(n, k);
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face(&self.face(&s, j), i);
                        let rhs = self.face(&self.face(&s, i), j - 1);
                        if lhs != rhs {
                            return Err(Error::SimplicialIdentity {
                                cell: c.name.clone(),
                                i,
                                j,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Euler characteristic of the generators; meaningful when complete.
    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(n, l)| if n % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    #[cfg(test)]
    pub(crate) fn with_cap(mut self, dim_cap: usize, truncated: bool) -> Self {
        self.dim_cap = dim_cap;
        self.truncated = truncated;
        self
    }
}

/// Cap and truncation flag for a construction combining several inputs.
pub(crate) fn combine_caps<'a>(inputs: impl IntoIterator<Item = &'a SSet>) -> (usize, bool) {
    let mut complete_cap = 0;
    let mut truncated_cap: Option<usize> = None;
    for s in inputs {
        if s.truncated {
            truncated_cap = Some(truncated_cap.map_or(s.dim_cap, |c| c.min(s.dim_cap)));
        } else {
            complete_cap = complete_cap.max(s.dim_cap);
        }
    }
    match truncated_cap {
        Some(c) => (c, true),
        None => (complete_cap, false),
    }
}

/// Incremental construction of an [`SSet`] by cell name.
#[derive(Clone, Debug)]
pub struct SSetBuilder {
    cells: Vec<Vec<Cell>>,
    index: BTreeMap<String, Simplex>,
    dim_cap: usize,
    truncated: bool,
}

impl SSetBuilder {
    pub fn new(dim_cap: usize) -> Self {
        SSetBuilder {
            cells: Vec::new(),
            index: BTreeMap::new(),
            dim_cap,
            truncated: false,
        }
    }

    pub fn truncated(mut self, truncated: bool) -> Self {
        self.truncated = truncated;
        self
    }

    /// Adds a generator of dimension `faces.len() − 1` (0 when empty).
    pub fn add(&mut self, name: &str, faces: Vec<Simplex>) -> Result<Simplex> {
        let dim = faces.len().saturating_sub(1);
        if dim > self.dim_cap {
            return Err(Error::CapExceeded {
                needed: dim,
                cap: self.dim_cap,
            });
        }
        if self.index.contains_key(name) {
            return Err(Error::DuplicateId(name.to_string()));
        }
        if dim == 0 && faces.len() == 1 {
            return Err(Error::BadSimplex {
                cell: name.to_string(),
                reason: "a single face is not allowed".into(),
            });
        }
        while self.cells.len() <= dim {
            self.cells.push(Vec::new());
        }
        let s = Simplex::nd(dim, self.cells[dim].len());
        self.cells[dim].push(Cell {
            name: name.to_string(),
            faces,
        });
        self.index.insert(name.to_string(), s.clone());
        Ok(s)
    }

    pub fn get(&self, name: &str) -> Option<&Simplex> {
        self.index.get(name)
    }

    /// Parses a formal simplex over the generators added so far.
    pub fn parse_formal(&self, text: &str) -> Result<Simplex> {
        parse_formal_with(text, |name| self.index.get(name).cloned())
    }

    pub fn build(self) -> Result<SSet> {
        SSet::new(self.cells, self.dim_cap, self.truncated)
    }
}

/// `"s3 s1 | name"` with `name` resolved by `lookup`. Names may themselves
/// contain `|` and spaces: the word is read token by token up to the first
/// `|`, and text without a leading word and bar is a bare name.
fn parse_formal_with(text: &str, lookup: impl Fn(&str) -> Option<Simplex>) -> Result<Simplex> {
    let bad = |reason: &str| Error::BadSimplex {
        cell: text.to_string(),
        reason: reason.to_string(),
    };
    let t = text.trim();
    let mut rest = t;
    let mut word = Vec::new();
    let name = loop {
        if let Some(r) = rest.strip_prefix('|') {
            break r.trim();
        }
        let (tok, after) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
        match tok.strip_prefix('s').and_then(|d| d.parse::<usize>().ok()) {
            Some(i) if !after.is_empty() => {
                word.push(i);
                rest = after.trim_start();
            }
            _ => {
                word.clear();
                break t;
            }
        }
    };
    if word.windows(2).any(|w| w[0] <= w[1]) {
        return Err(bad("degeneracy word must be strictly decreasing"));
    }
    let base = lookup(name).ok_or_else(|| Error::UnknownSimplex(name.to_string()))?;
    let dim = base.base_dim + word.len();
    if word.iter().any(|&i| i >= dim) {
        return Err(bad("degeneracy index out of range"));
    }
    Ok(Simplex { word, ..base })
}

pub(crate) fn vertex_list_name(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub(crate) fn identity_theta(n: usize) -> Vec<usize> {
    (0..=n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formal_roundtrip() {
        let d = delta(2, 6).unwrap();
        let s = Simplex {
            base_dim: 1,
            base: 2,
            word: vec![2, 0],
        };
        let text = d.formal(&s);
        assert_eq!(text, "s2 s0 | [1,2]");
        assert_eq!(d.parse_formal(&text).unwrap(), s);
        assert_eq!(d.parse_formal("| [0]").unwrap(), Simplex::nd(0, 0));
        assert!(d.parse_formal("s0 s1 | [0]").is_err());
        assert!(matches!(d.parse_formal("| nope"), Err(Error::UnknownSimplex(_))));
        assert_eq!(d.parse_formal("[0,1]").unwrap(), Simplex::nd(1, 0));
    }

    #[test]
    fn formal_names_with_bars() {
        let mut b = SSetBuilder::new(6);
        let x = b.add("(id|a|f)", vec![]).unwrap();
        let y = b.add("s1 | y", vec![]).unwrap();
        let e = b.add("e", vec![y.clone(), x.clone()]).unwrap();
        let k = b.build().unwrap();
        for s in [x, y, e.degeneracy(0), e.degeneracy(1).degeneracy(0)] {
            assert_eq!(k.parse_formal(&k.formal(&s)).unwrap(), s);
        }
    }

    #[test]
    fn faces_of_degenerate_simplices() {
        let d = delta(1, 6).unwrap();
        let e = Simplex::nd(1, 0);
        let s0e = e.degeneracy(0);
        // d_0 s_0 = id = d_1 s_0, d_2 s_0 = s_0 d_1
        assert_eq!(d.face(&s0e, 0), e);
        assert_eq!(d.face(&s0e, 1), e);
        assert_eq!(d.face(&s0e, 2), d.face(&e, 1).degeneracy(0));
        assert_eq!(d.vertices(&s0e), vec![0, 0, 1]);
    }

    #[test]
    fn simplicial_identity_violation_is_reported() {
        let mut b = SSetBuilder::new(6);
        let x = b.add("x", vec![]).unwrap();
        let y = b.add("y", vec![]).unwrap();
        let e = b.add("e", vec![y.clone(), x.clone()]).unwrap();
        let f = b.add("f", vec![x.clone(), y.clone()]).unwrap();
        // d_0 d_1 t = y but d_0 d_0 t = x
        b.add("t", vec![f.clone(), e.clone(), e.clone()]).unwrap();
        assert!(matches!(b.build(), Err(Error::SimplicialIdentity { .. })));
    }

    #[test]
    fn simplices_counts() {
        let d = delta(1, 6).unwrap();
        // Δ^1 has C(n+2, n) ... n-simplices = monotone maps [n] → [1] = n + 2
        for n in 0..5 {
            assert_eq!(d.simplices(n).len(), n + 2);
        }
    }
}

//! Integral homology of the normalized chain complex, via Smith normal form.

mod snf;

pub use snf::{smith_normal_form, IntMatrix, Snf};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::sset::{SSet, SSetMap, Simplex};

/// A sparse column: `(row, coefficient)` pairs.
pub type Column = Vec<(usize, i64)>;

/// Normalized chain complex: one generator per non-degenerate simplex,
/// degenerate faces contribute zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    /// `boundaries[n]` sends `C_n → C_{n−1}`, one column per generator;
    /// `boundaries[0]` is zero.
    pub boundaries: Vec<Vec<Column>>,
}

impl ChainComplex {
    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// Dense `∂_n`, of size `rank(n−1) × rank(n)`.
    pub fn boundary_matrix(&self, n: usize) -> IntMatrix {
        let rows = if n == 0 { 0 } else { self.rank(n - 1) };
        IntMatrix::from_rows(&dense(rows, self.rank(n), self.boundaries.get(n).map_or(&[][..], |b| b)))
    }

    /// Checks `∂_{n} ∘ ∂_{n+1} = 0` in every degree.
    pub fn check_square_zero(&self) -> Result<()> {
        for n in 1..self.boundaries.len() {
            let lower = &self.boundaries[n - 1];
            for (k, col) in self.boundaries[n].iter().enumerate() {
                let mut acc = vec![0i64; if n >= 2 { self.rank(n - 2) } else { 0 }];
                for &(r, c) in col {
                    if n >= 2 {
                        for &(r2, c2) in &lower[r] {
                            acc[r2] += c * c2;
                        }
                    }
                }
                if let Some(r) = acc.iter().position(|&x| x != 0) {
                    return Err(Error::CheckFailed(format!(
                        "∂∂ ≠ 0 on generator {k} of degree {n}, entry {r}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn dense(rows: usize, cols: usize, columns: &[Column]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; cols]; rows];
    for (j, col) in columns.iter().enumerate() {
        for &(i, c) in col {
            m[i][j] += c;
        }
    }
    m
}

/// The normalized chain complex of `K` in degrees `0..=top`.
pub fn chain_complex(k: &SSet, top: usize) -> ChainComplex {
    let top = top.min(k.known_through());
    let ranks: Vec<usize> = (0..=top).map(|n| k.count(n)).collect();
    let boundaries = (0..=top)
        .map(|n| {
            if n == 0 {
                return vec![Vec::new(); k.count(0)];
            }
            k.cells(n)
                .iter()
                .map(|cell| {
                    let mut col: Vec<(usize, i64)> = Vec::new();
                    for (i, face) in cell.faces.iter().enumerate() {
                        if face.is_degenerate() {
                            continue;
                        }
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        add_entry(&mut col, face.base, sign);
                    }
                    col
                })
                .collect()
        })
        .collect();
    ChainComplex { ranks, boundaries }
}

fn add_entry(col: &mut Column, row: usize, c: i64) {
    match col.iter_mut().find(|(r, _)| *r == row) {
        Some(e) => e.1 += c,
        None => col.push((row, c)),
    }
    col.retain(|&(_, c)| c != 0);
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn group(&self, n: usize) -> &HomologyGroup {
        &self.groups[n]
    }

    /// `H_0 = Z` and nothing else.
    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty() && g.betti == usize::from(g.degree == 0))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .map(|g| if g.degree % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }
}

/// Homology of an abstract complex in degrees `0..=up_to`; needs the
/// complex through degree `up_to + 1`.
pub fn homology_of_complex(c: &ChainComplex, up_to: usize) -> HomologyResult {
    let factors: Vec<Vec<BigInt>> = (0..=up_to + 1)
        .map(|n| {
            if n == 0 || n >= c.ranks.len() {
                return Vec::new();
            }
            let (rows, cols) = (c.rank(n - 1), c.rank(n));
            snf::invariant_factors(rows, cols, dense(rows, cols, &c.boundaries[n]))
        })
        .collect();
    let groups = (0..=up_to)
        .map(|n| {
            let rank_out = factors[n].len();
            let rank_in = factors[n + 1].len();
            HomologyGroup {
                degree: n,
                betti: c.rank(n) - rank_out - rank_in,
                torsion: factors[n + 1].iter().filter(|x| !x.is_one()).cloned().collect(),
            }
        })
        .collect();
    HomologyResult { groups }
}

/// `H_n(K; Z)` for `n ≤ up_to`. A truncated `K` must be known through
/// degree `up_to + 1`.
pub fn homology(k: &SSet, up_to: usize) -> Result<HomologyResult> {
    require_known(k, up_to)?;
    Ok(homology_of_complex(&chain_complex(k, up_to + 1), up_to))
}

fn require_known(k: &SSet, up_to: usize) -> Result<()> {
    if k.is_truncated() && up_to + 1 > k.dim_cap() {
        return Err(Error::CapExceeded {
            needed: up_to + 1,
            cap: k.dim_cap(),
        });
    }
    Ok(())
}

/// Connected components as sorted lists of vertex indices, ordered by their
/// least vertex.
pub fn pi0(k: &SSet) -> Vec<Vec<usize>> {
    let label = component_labels(k);
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; k.count(0)];
    for v in 0..k.count(0) {
        let root = label[v];
        if slot[root] == usize::MAX {
            slot[root] = comps.len();
            comps.push(Vec::new());
        }
        comps[slot[root]].push(v);
    }
    comps
}

/// For each vertex, the least vertex of its component.
pub fn component_labels(k: &SSet) -> Vec<usize> {
    let n = k.count(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in 0..k.count(1) {
        let vs = k.vertices(&Simplex::nd(1, e));
        let (a, b) = (find(&mut parent, vs[0]), find(&mut parent, vs[1]));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            parent[hi] = lo;
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

/// `f_*` on components, indexed as in [`pi0`].
pub fn pi0_map(f: &SSetMap) -> Vec<usize> {
    let src = pi0(f.source());
    let tgt_label = component_labels(f.target());
    let tgt = pi0(f.target());
    src.iter()
        .map(|comp| {
            let v = f.apply(&Simplex::nd(0, comp[0])).base;
            let root = tgt_label[v];
            tgt.iter().position(|c| c[0] == root).expect("component")
        })
        .collect()
}

/// Why `f` fails to be a homology equivalence through degree `up_to`, or
/// `None` when it is one.
///
/// `f` is surjective on `H_n` for `n ≤ up_to` and injective for `n < up_to`
/// exactly when the mapping cone is acyclic through `up_to`; surjectivity
/// between isomorphic finitely generated groups in degree `up_to` then
/// gives injectivity there too.
pub fn homology_equivalence_failure(f: &SSetMap, up_to: usize) -> Result<Option<String>> {
    let (k, l) = (f.source(), f.target());
    require_known(k, up_to)?;
    require_known(l, up_to)?;
    let p = pi0_map(f);
    let n_target = pi0(l).len();
    let mut seen = vec![false; n_target];
    for &c in &p {
        if core::mem::replace(&mut seen[c], true) {
            return Ok(Some(format!("two components map to component {c}")));
        }
    }
    if let Some(c) = seen.iter().position(|s| !s) {
        return Ok(Some(format!("component {c} of the target is missed")));
    }
    let ck = chain_complex(k, up_to + 1);
    let cl = chain_complex(l, up_to + 1);
    let cone = mapping_cone(&ck, &cl, f, up_to + 1);
    let hc = homology_of_complex(&cone, up_to);
    if let Some(g) = hc.groups.iter().find(|g| g.betti != 0 || !g.torsion.is_empty()) {
        return Ok(Some(format!("mapping cone has homology in degree {}", g.degree)));
    }
    let hk = homology_of_complex(&ck, up_to);
    let hl = homology_of_complex(&cl, up_to);
    if hk.groups[up_to] != hl.groups[up_to] {
        return Ok(Some(format!("H_{up_to} differs between source and target")));
    }
    Ok(None)
}

pub fn is_homology_equivalence(f: &SSetMap, up_to: usize) -> Result<bool> {
    Ok(homology_equivalence_failure(f, up_to)?.is_none())
}

/// `cone_n = K_{n−1} ⊕ L_n` with `∂(k, l) = (−∂k, f(k) + ∂l)`.
fn mapping_cone(ck: &ChainComplex, cl: &ChainComplex, f: &SSetMap, top: usize) -> ChainComplex {
    let rank = |n: usize| (if n == 0 { 0 } else { ck.rank(n - 1) }) + cl.rank(n);
    let ranks: Vec<usize> = (0..=top).map(rank).collect();
    let boundaries = (0..=top)
        .map(|n| {
            if n == 0 {
                return vec![Vec::new(); ranks[0]];
            }
            // rows of cone_{n−1}: K_{n−2} first, then L_{n−1}
            let offset = if n >= 2 { ck.rank(n - 2) } else { 0 };
            let mut cols: Vec<Column> = Vec::with_capacity(ranks[n]);
            for j in 0..ck.rank(n - 1) {
                let mut col: Column = Vec::new();
                if n >= 2 {
                    for &(r, c) in &ck.boundaries[n - 1][j] {
                        add_entry(&mut col, r, -c);
                    }
                }
                let image = f.image_of(n - 1, j);
                if !image.is_degenerate() {
                    add_entry(&mut col, offset + image.base, 1);
                }
                cols.push(col);
            }
            for j in 0..cl.rank(n) {
                let col = cl.boundaries[n][j].iter().map(|&(r, c)| (offset + r, c)).collect();
                cols.push(col);
            }
            cols
        })
        .collect();
    ChainComplex { ranks, boundaries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{boundary_delta, constant_sset, delta};
    use alloc::sync::Arc;

    #[test]
    fn ranks_and_boundaries() {
        let c = chain_complex(&delta(0, 6).unwrap(), 3);
        assert_eq!(c.ranks, vec![1, 0, 0, 0]);
        let b = boundary_delta(2, 6).unwrap();
        let c = chain_complex(&b, 2);
        assert_eq!(c.ranks, vec![3, 3, 0]);
        // edges [0,1], [0,2], [1,2]: ∂[i,j] = [j] − [i]
        let m = c.boundary_matrix(1);
        assert_eq!(m, IntMatrix::from_rows(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]));
        c.check_square_zero().unwrap();
        chain_complex(&delta(3, 6).unwrap(), 3).check_square_zero().unwrap();
    }

    #[test]
    fn basic_homology() {
        for n in 0..4 {
            let h = homology(&delta(n, 6).unwrap(), 4).unwrap();
            assert!(h.is_acyclic(), "{h:?}");
        }
        assert_eq!(homology(&boundary_delta(2, 6).unwrap(), 2).unwrap().betti(), vec![1, 1, 0]);
        assert_eq!(homology(&boundary_delta(1, 6).unwrap(), 1).unwrap().betti(), vec![2, 0]);
        assert_eq!(homology(&boundary_delta(3, 6).unwrap(), 3).unwrap().betti(), vec![1, 0, 1, 0]);
    }

    #[test]
    fn truncated_input_needs_headroom() {
        let t = SSet::empty(2).with_cap(2, true);
        assert!(matches!(homology(&t, 2), Err(Error::CapExceeded { .. })));
        assert!(homology(&t, 1).is_ok());
    }

    #[test]
    fn components() {
        assert_eq!(pi0(&boundary_delta(1, 6).unwrap()).len(), 2);
        assert!(pi0(&SSet::empty(6)).is_empty());
        assert_eq!(pi0(&constant_sset(&["x", "y", "z"], 6).unwrap()), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn equivalences() {
        let d1 = Arc::new(delta(1, 6).unwrap());
        let pt = Arc::new(delta(0, 6).unwrap());
        let s0 = Arc::new(boundary_delta(1, 6).unwrap());
        assert!(is_homology_equivalence(&SSetMap::identity(&d1), 3).unwrap());
        assert!(is_homology_equivalence(&SSetMap::constant(&d1, &pt, 0), 3).unwrap());
        let inc = SSetMap::new(s0, d1.clone(), vec![vec![Simplex::nd(0, 0), Simplex::nd(0, 1)]]).unwrap();
        assert!(!is_homology_equivalence(&inc, 3).unwrap());
        // ∂Δ^2 → Δ^2 agrees on π_0 but not on H_1
        let b2 = Arc::new(boundary_delta(2, 6).unwrap());
        let d2 = Arc::new(delta(2, 6).unwrap());
        let images = (0..2).map(|n| (0..3).map(|i| Simplex::nd(n, i)).collect()).collect();
        let inc = SSetMap::new(b2, d2, images).unwrap();
        let why = homology_equivalence_failure(&inc, 2).unwrap().unwrap();
        assert!(why.contains("degree"), "{why}");
    }

    #[test]
    fn degree_zero_failure_caught_by_cone_in_top_degree() {
        // S^1 → pt: equal π_0, H_1 differs; with up_to = 1 the top-degree
        // comparison is what catches it
        let b2 = Arc::new(boundary_delta(2, 6).unwrap());
        let pt = Arc::new(delta(0, 6).unwrap());
        assert!(!is_homology_equivalence(&SSetMap::constant(&b2, &pt, 0), 1).unwrap());
        assert!(is_homology_equivalence(&SSetMap::constant(&b2, &pt, 0), 0).unwrap());
    }
}

use alloc::vec::Vec;

/// A simplex in Eilenberg–Zilber normal form: the strictly decreasing
/// degeneracy word `s_{i1} ... s_{ik}` applied to a non-degenerate simplex.
///
/// The base is addressed by its dimension and its index among the
/// non-degenerate cells of that dimension.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    pub base_dim: usize,
    pub base: usize,
    pub word: Vec<usize>,
}

impl Simplex {
    pub fn nd(base_dim: usize, base: usize) -> Self {
        Simplex {
            base_dim,
            base,
            word: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.base_dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// The surjection `[dim] → [base_dim]` encoded by the degeneracy word.
    pub fn surjection(&self) -> Vec<usize> {
        word_to_surjection(&self.word, self.dim())
    }

    /// `X(τ)` of this simplex for a surjection `τ: [m] → [dim]`.
    pub fn degenerate_by(&self, tau: &[usize]) -> Simplex {
        let own = self.surjection();
        let composed: Vec<usize> = tau.iter().map(|&j| own[j]).collect();
        Simplex {
            base_dim: self.base_dim,
            base: self.base,
            word: surjection_to_word(&composed),
        }
    }

    /// `s_i` of this simplex, renormalized.
    pub fn degeneracy(&self, i: usize) -> Simplex {
        self.degenerate_by(&codegeneracy(self.dim() + 1, i))
    }
}

/// `surj(j) = j − #{i ∈ word : i < j}` on `[dim]`.
pub fn word_to_surjection(word: &[usize], dim: usize) -> Vec<usize> {
    (0..=dim)
        .map(|j| j - word.iter().filter(|&&i| i < j).count())
        .collect()
}

/// Strictly decreasing word of the positions where a monotone surjection
/// repeats a value.
pub fn surjection_to_word(surj: &[usize]) -> Vec<usize> {
    let mut word: Vec<usize> = (0..surj.len().saturating_sub(1))
        .filter(|&j| surj[j] == surj[j + 1])
        .collect();
    word.reverse();
    word
}

/// Coface `δ^i: [n−1] → [n]` as a vertex list.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..=n).filter(|&j| j != i).collect()
}

/// Codegeneracy `σ^i: [n] → [n−1]` as a vertex list.
pub fn codegeneracy(n: usize, i: usize) -> Vec<usize> {
    (0..=n).map(|j| if j <= i { j } else { j - 1 }).collect()
}

/// Epi-mono factorization of a monotone map: returns the surjection onto
/// the image and the injective inclusion of the image.
pub fn epi_mono(theta: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut image: Vec<usize> = Vec::new();
    let mut epi = Vec::with_capacity(theta.len());
    for &v in theta {
        if image.last() != Some(&v) {
            image.push(v);
        }
        epi.push(image.len() - 1);
    }
    (epi, image)
}

/// All strictly decreasing words of length `k` over `{0..n−1}`, i.e. all
/// surjections `[n] → [n−k]`, in lexicographic order of the increasing sets.
pub fn words(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mut set in subsets(n, k) {
        set.reverse();
        out.push(set);
    }
    out
}

/// `k`-element subsets of `{0..n−1}` as increasing lists, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn word_surjection_examples() {
        assert_eq!(word_to_surjection(&[0], 1), vec![0, 0]);
        assert_eq!(word_to_surjection(&[2, 0], 3), vec![0, 0, 1, 1]);
        assert_eq!(surjection_to_word(&[0, 0, 1, 1]), vec![2, 0]);
        assert_eq!(surjection_to_word(&[0]), Vec::<usize>::new());
    }

    #[test]
    fn simplicial_identity_for_degeneracies() {
        // s_i s_j = s_{j+1} s_i for i ≤ j
        let y = Simplex::nd(1, 0);
        for i in 0..=2 {
            for j in i..=1 {
                let lhs = y.degeneracy(j).degeneracy(i);
                let rhs = y.degeneracy(i).degeneracy(j + 1);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn epi_mono_factors() {
        let (e, m) = epi_mono(&[1, 1, 3, 4, 4]);
        assert_eq!(e, vec![0, 0, 1, 2, 2]);
        assert_eq!(m, vec![1, 3, 4]);
    }

    proptest! {
        #[test]
        fn word_roundtrip(n in 0usize..8, mask in 0u32..256) {
            let mut word: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            word.reverse();
            let surj = word_to_surjection(&word, n);
            prop_assert_eq!(surj.len(), n + 1);
            prop_assert_eq!(*surj.last().unwrap(), n - word.len());
            prop_assert_eq!(surjection_to_word(&surj), word);
        }

        #[test]
        fn renormalizing_is_idempotent(base in 0usize..3, degs in proptest::collection::vec(0usize..4, 0..4)) {
            let mut s = Simplex::nd(base, 0);
            for d in degs {
                let i = d % (s.dim() + 1);
                s = s.degeneracy(i);
            }
            let again = s.degenerate_by(&(0..=s.dim()).collect::<Vec<_>>());
            prop_assert_eq!(&again, &s);
            prop_assert!(s.word.windows(2).all(|w| w[0] > w[1]));
        }
    }
}

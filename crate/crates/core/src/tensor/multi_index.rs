use crate::error::{Error, Result};

use super::dimension::binomial;

/// Strictly increasing list of `p` indices in `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub(crate) Vec<usize>);

impl MultiIndex {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        let increasing = entries.windows(2).all(|w| w[0] < w[1]);
        if !increasing || entries.iter().any(|&i| i >= n) {
            return Err(Error::InvalidMultiIndex { entries, n });
        }
        Ok(MultiIndex(entries))
    }

    /// All `C(n, p)` multi-indices in lexicographic order.
    pub fn all(n: usize, p: usize) -> Vec<MultiIndex> {
        let mut out = Vec::with_capacity(binomial(n, p));
        if p > n {
            return out;
        }
        let mut cur: Vec<usize> = (0..p).collect();
        loop {
            out.push(MultiIndex(cur.clone()));
            // advance to the next combination
            let mut i = p;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < n - p + i {
                    cur[i] += 1;
                    for j in i + 1..p {
                        cur[j] = cur[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// Position of `self` in [`MultiIndex::all`]`(n, p)`.
    pub fn rank(&self, n: usize) -> usize {
        let p = self.0.len();
        let mut rank = 0;
        let mut prev = 0;
        for (pos, &e) in self.0.iter().enumerate() {
            for skipped in prev..e {
                rank += binomial(n - skipped - 1, p - pos - 1);
            }
            prev = e + 1;
        }
        rank
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }
}

/// Sorts an index tuple, returning the permutation sign, or `None` when an
/// index repeats (the alternating extension vanishes there).
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i8)> {
    let mut v = indices.to_vec();
    let mut sign = 1i8;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

//! Fraction-free sparse elimination over the integers (ranks over ℚ).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse integer vector, entries sorted by index, no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, BigInt)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    /// Builds a vector from unsorted terms, summing duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, BigInt)>) -> Self {
        let mut map: std::collections::BTreeMap<usize, BigInt> = std::collections::BTreeMap::new();
        for (i, c) in terms {
            *map.entry(i).or_insert_with(BigInt::zero) += c;
        }
        SparseVec {
            entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<(usize, &BigInt)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> BigInt {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .map(|k| self.entries[k].1.clone())
            .unwrap_or_default()
    }

    /// Reindexes through `perm` (old index to new index).
    pub fn permuted(&self, perm: &[usize]) -> SparseVec {
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .map(|(i, c)| (perm[*i], c.clone()))
            .collect();
        entries.sort_by_key(|(i, _)| *i);
        SparseVec { entries }
    }

    /// `a·self − b·other`.
    fn combine(&self, a: &BigInt, other: &SparseVec, b: &BigInt) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while i < x.len() || j < y.len() {
            let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
            let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
            if take_x {
                out.push((x[i].0, a * &x[i].1));
                i += 1;
            } else if take_y {
                out.push((y[j].0, -(b * &y[j].1)));
                j += 1;
            } else {
                let c = a * &x[i].1 - b * &y[j].1;
                if !c.is_zero() {
                    out.push((x[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        let mut v = SparseVec { entries: out };
        v.remove_content();
        v
    }

    fn remove_content(&mut self) {
        let mut g = BigInt::zero();
        for (_, c) in &self.entries {
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
        if g.is_zero() || g.is_one() {
            return;
        }
        for (_, c) in self.entries.iter_mut() {
            *c /= &g;
        }
    }

    /// Eliminates the leading term of `self` against `pivot`, whose leading
    /// index must coincide.
    fn eliminate(&self, pivot: &SparseVec) -> SparseVec {
        let (_, p) = pivot.leading().expect("pivot is nonzero");
        let (_, c) = self.leading().expect("vector is nonzero");
        let g = p.gcd(c);
        let (a, b) = (p / &g, c / &g);
        self.combine(&a, pivot, &b)
    }
}

/// Vectors with pairwise distinct leading indices spanning an inserted set.
///
/// Reducing a vector only clears leading terms, so the result has a leading
/// index that is not a pivot. When indices are ordered by decreasing
/// filtration degree, that leading index realises the smallest filtration
/// level reachable modulo the span.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: HashMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn from_vectors(vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut e = Echelon::new();
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((i, _)) = v.leading() {
            match self.pivots.get(&i) {
                Some(p) => v = v.eliminate(p),
                None => break,
            }
        }
        v
    }

    /// Adds a vector; returns whether it was independent of the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce(v);
        match v.leading() {
            Some((i, c)) => {
                if c.is_negative() {
                    for (_, c) in v.entries.iter_mut() {
                        *c = -c.clone();
                    }
                }
                self.pivots.insert(i, v);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_zero()
    }
}

pub fn rank(columns: impl IntoIterator<Item = SparseVec>) -> usize {
    Echelon::from_vectors(columns).rank()
}

//! The filtered cube complex over `ℚ[x]/(x² − 1)`.
//!
//! Vertices are bitmasks over crossings: bit i selects the 1-smoothing of
//! crossing i, which joins slots {0,3},{1,2}; the 0-smoothing joins
//! {0,1},{2,3}. The homological degree of a vertex is its number of set bits
//! minus the number of negative crossings, so the oriented resolution sits in
//! degree 0. A generator is a vertex together with a square-free monomial in
//! the circle variables, and its filtration degree is
//! `q = 2·deg − r_v − w − h`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

use super::linalg::{Echelon, SparseVec};
use crate::diagram::{LinkDiagram, Sign, UnionFind};

pub const DEFAULT_CROSSING_LIMIT: usize = 16;

/// Circles per resolution beyond which the basis would not fit in memory.
const CIRCLE_LIMIT: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("diagram has {crossings} crossings, over the limit of {limit}")]
    TooLarge { crossings: usize, limit: usize },
    #[error("a resolution has {0} circles, too many to enumerate")]
    TooManyCircles(usize),
    #[error("diagram is not planar")]
    NotPlanar,
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("chain is a boundary, so its class has no filtration grading")]
    ZeroClass,
}

/// One basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    pub vertex: u32,
    /// Bit k set means circle k of the vertex carries `x`.
    pub monomial: u32,
    pub h: i32,
    pub q: i32,
}

/// A chain in a single homological degree, indexed by block position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub h: i32,
    pub vector: SparseVec,
}

impl Chain {
    pub fn is_zero(&self) -> bool {
        self.vector.is_zero()
    }
}

struct State {
    /// Circle index for each dense edge index.
    circle_of: Vec<u16>,
    /// One dense edge index on each circle.
    reps: Vec<usize>,
}

struct Block {
    vertices: Vec<u32>,
    /// Prefix sums of block sizes; `offsets[k]` is where vertex k starts.
    offsets: Vec<usize>,
}

pub struct FilteredComplex {
    writhe: i32,
    negatives: usize,
    slots: Vec<[usize; 4]>,
    oriented: u32,
    states: Vec<State>,
    blocks: BTreeMap<i32, Block>,
    /// For each vertex, its position inside its block's vertex list.
    vertex_pos: Vec<usize>,
    images: Mutex<HashMap<i32, Arc<Echelon>>>,
}

impl std::fmt::Debug for FilteredComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FilteredComplex")
            .field("crossings", &self.crossings())
            .field("writhe", &self.writhe)
            .field("dimension", &self.dimension())
            .finish()
    }
}

impl FilteredComplex {
    pub fn build(diagram: &LinkDiagram) -> Result<Self, EngineError> {
        Self::build_with_limit(diagram, DEFAULT_CROSSING_LIMIT)
    }

    pub fn build_with_limit(diagram: &LinkDiagram, limit: usize) -> Result<Self, EngineError> {
        let n = diagram.crossing_count();
        if n > limit || n > 30 {
            return Err(EngineError::TooLarge {
                crossings: n,
                limit,
            });
        }
        if !diagram.is_planar() {
            return Err(EngineError::NotPlanar);
        }
        let labels: Vec<_> = diagram.edges().collect();
        let index: HashMap<_, _> = labels.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let slots: Vec<[usize; 4]> = diagram
            .crossings()
            .iter()
            .map(|x| x.edges.map(|e| index[&e]))
            .collect();
        let oriented = diagram
            .crossings()
            .iter()
            .enumerate()
            .filter(|(_, x)| x.sign == Sign::Negative)
            .fold(0u32, |m, (i, _)| m | (1 << i));
        let negatives = diagram.negative_count();

        let mut states = Vec::with_capacity(1 << n);
        for v in 0..(1u32 << n) {
            let mut uf = UnionFind::new(labels.len());
            for (i, s) in slots.iter().enumerate() {
                if v >> i & 1 == 0 {
                    uf.union(s[0], s[1]);
                    uf.union(s[2], s[3]);
                } else {
                    uf.union(s[0], s[3]);
                    uf.union(s[1], s[2]);
                }
            }
            let mut circle_of = vec![0u16; labels.len()];
            let mut root_circle: HashMap<usize, u16> = HashMap::new();
            let mut reps = Vec::new();
            for (e, slot) in circle_of.iter_mut().enumerate() {
                let root = uf.find(e);
                let next = reps.len() as u16;
                let c = *root_circle.entry(root).or_insert_with(|| {
                    reps.push(e);
                    next
                });
                *slot = c;
            }
            if reps.len() > CIRCLE_LIMIT {
                return Err(EngineError::TooManyCircles(reps.len()));
            }
            states.push(State { circle_of, reps });
        }

        let mut by_h: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
        for v in 0..(1u32 << n) {
            by_h.entry(v.count_ones() as i32 - negatives as i32)
                .or_default()
                .push(v);
        }
        let mut vertex_pos = vec![0; 1 << n];
        let mut blocks = BTreeMap::new();
        for (h, vertices) in by_h {
            let mut offsets = vec![0];
            for (k, &v) in vertices.iter().enumerate() {
                vertex_pos[v as usize] = k;
                offsets.push(offsets[k] + (1usize << states[v as usize].reps.len()));
            }
            blocks.insert(h, Block { vertices, offsets });
        }

        Ok(FilteredComplex {
            writhe: diagram.writhe(),
            negatives,
            slots,
            oriented,
            states,
            blocks,
            vertex_pos,
            images: Mutex::new(HashMap::new()),
        })
    }

    pub fn crossings(&self) -> usize {
        self.slots.len()
    }

    pub fn writhe(&self) -> i32 {
        self.writhe
    }

    /// The vertex of the oriented resolution.
    pub fn oriented_vertex(&self) -> u32 {
        self.oriented
    }

    pub fn vertex_count(&self) -> usize {
        self.states.len()
    }

    pub fn circles(&self, vertex: u32) -> usize {
        self.states[vertex as usize].reps.len()
    }

    /// Circle of the given vertex through crossing `k`, slot `s`.
    pub fn circle_at(&self, vertex: u32, k: usize, s: usize) -> usize {
        self.states[vertex as usize].circle_of[self.slots[k][s]] as usize
    }

    pub fn h_of(&self, vertex: u32) -> i32 {
        vertex.count_ones() as i32 - self.negatives as i32
    }

    pub fn q_of(&self, vertex: u32, monomial: u32) -> i32 {
        2 * monomial.count_ones() as i32
            - self.circles(vertex) as i32
            - self.writhe
            - self.h_of(vertex)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.blocks.keys().copied()
    }

    pub fn block_dimension(&self, h: i32) -> usize {
        self.blocks
            .get(&h)
            .map_or(0, |b| *b.offsets.last().unwrap())
    }

    pub fn dimension(&self) -> usize {
        self.blocks
            .values()
            .map(|b| *b.offsets.last().unwrap())
            .sum()
    }

    /// Position of (vertex, monomial) inside its degree block.
    pub fn index_of(&self, vertex: u32, monomial: u32) -> usize {
        let b = &self.blocks[&self.h_of(vertex)];
        b.offsets[self.vertex_pos[vertex as usize]] + monomial as usize
    }

    pub fn generator(&self, h: i32, index: usize) -> Generator {
        let b = &self.blocks[&h];
        let k = b.offsets.partition_point(|&o| o <= index) - 1;
        let vertex = b.vertices[k];
        let monomial = (index - b.offsets[k]) as u32;
        Generator {
            vertex,
            monomial,
            h,
            q: self.q_of(vertex, monomial),
        }
    }

    /// Image of one generator, as (index in degree h+1, coefficient) pairs.
    fn apply_generator(&self, vertex: u32, monomial: u32) -> Vec<(usize, i64)> {
        let src = &self.states[vertex as usize];
        let mut out = Vec::new();
        for (i, s) in self.slots.iter().enumerate() {
            if vertex >> i & 1 == 1 {
                continue;
            }
            let target = vertex | (1 << i);
            let sign = if (vertex & ((1u32 << i) - 1)).count_ones() % 2 == 0 {
                1
            } else {
                -1
            };
            let dst = &self.states[target as usize];
            let (a, b) = (src.circle_of[s[0]] as usize, src.circle_of[s[2]] as usize);
            let mut rest = 0u32;
            for (c, &rep) in src.reps.iter().enumerate() {
                if c != a && c != b && monomial >> c & 1 == 1 {
                    rest |= 1 << dst.circle_of[rep];
                }
            }
            let bit = |c: usize| monomial >> c & 1;
            if a != b {
                let merged = dst.circle_of[s[0]];
                let m = rest | ((bit(a) ^ bit(b)) << merged);
                out.push((self.index_of(target, m), sign));
            } else {
                let (c1, c2) = (dst.circle_of[s[0]], dst.circle_of[s[2]]);
                let pairs: [(u32, u32); 2] = if bit(a) == 0 {
                    [(0, 1), (1, 0)]
                } else {
                    [(1, 1), (0, 0)]
                };
                for (x1, x2) in pairs {
                    let m = rest | (x1 << c1) | (x2 << c2);
                    out.push((self.index_of(target, m), sign));
                }
            }
        }
        out
    }

    /// Differential of degree `h` as sparse columns, one per generator.
    pub fn differential(&self, h: i32) -> Vec<SparseVec> {
        let Some(b) = self.blocks.get(&h) else {
            return Vec::new();
        };
        let mut cols = Vec::with_capacity(*b.offsets.last().unwrap());
        for &v in &b.vertices {
            for m in 0..(1u32 << self.circles(v)) {
                let terms = self.apply_generator(v, m);
                cols.push(SparseVec::from_terms(
                    terms.into_iter().map(|(i, c)| (i, BigInt::from(c))),
                ));
            }
        }
        cols
    }

    pub fn apply(&self, chain: &Chain) -> Chain {
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (i, c) in chain.vector.iter() {
            let g = self.generator(chain.h, i);
            for (j, s) in self.apply_generator(g.vertex, g.monomial) {
                *acc.entry(j).or_insert_with(BigInt::zero) += c * s;
            }
        }
        Chain {
            h: chain.h + 1,
            vector: SparseVec::from_terms(acc),
        }
    }

    /// Checks that the differential squares to zero on every generator.
    pub fn check_d_squared(&self) -> bool {
        self.blocks.iter().all(|(&h, b)| {
            b.vertices.iter().all(|&v| {
                (0..(1u32 << self.circles(v))).all(|m| {
                    let mut acc: HashMap<usize, i64> = HashMap::new();
                    for (j, s) in self.apply_generator(v, m) {
                        let g = self.generator(h + 1, j);
                        for (k, t) in self.apply_generator(g.vertex, g.monomial) {
                            *acc.entry(k).or_default() += s * t;
                        }
                    }
                    acc.values().all(|&c| c == 0)
                })
            })
        })
    }

    /// Checks that every differential term lowers q by 0 or 4.
    pub fn check_filtration(&self) -> bool {
        self.blocks.iter().all(|(&h, b)| {
            b.vertices.iter().all(|&v| {
                (0..(1u32 << self.circles(v))).all(|m| {
                    let q = self.q_of(v, m);
                    self.apply_generator(v, m).iter().all(|&(j, _)| {
                        let drop = q - self.generator(h + 1, j).q;
                        drop == 0 || drop == 4
                    })
                })
            })
        })
    }

    /// Row order of degree `h` by decreasing q, ties by index.
    fn q_order(&self, h: i32) -> Vec<usize> {
        let dim = self.block_dimension(h);
        let mut idx: Vec<usize> = (0..dim).collect();
        idx.sort_by_key(|&i| (-self.generator(h, i).q, i));
        let mut perm = vec![0; dim];
        for (pos, &i) in idx.iter().enumerate() {
            perm[i] = pos;
        }
        perm
    }

    /// Echelon basis of the boundaries in degree `h`, rows in q-order.
    fn boundaries(&self, h: i32) -> Arc<Echelon> {
        if let Some(e) = self.images.lock().unwrap().get(&h) {
            return e.clone();
        }
        let perm = self.q_order(h);
        let e = Arc::new(Echelon::from_vectors(
            self.differential(h - 1)
                .into_iter()
                .map(|c| c.permuted(&perm)),
        ));
        self.images.lock().unwrap().insert(h, e.clone());
        e
    }

    pub fn differential_rank(&self, h: i32) -> usize {
        self.boundaries(h + 1).rank()
    }

    pub fn homology_rank(&self, h: i32) -> usize {
        self.block_dimension(h) - self.differential_rank(h) - self.differential_rank(h - 1)
    }

    pub fn homology_dimension(&self) -> usize {
        self.degrees().map(|h| self.homology_rank(h)).sum()
    }

    /// Filtration grading of the homology class of a cycle: the least j such
    /// that some homologous representative has all terms in q-degree ≤ j.
    pub fn qgr(&self, z: &Chain) -> Result<i32, EngineError> {
        if !self.apply(z).is_zero() {
            return Err(EngineError::NotACycle);
        }
        let perm = self.q_order(z.h);
        let reduced = self.boundaries(z.h).reduce(z.vector.permuted(&perm));
        let (pos, _) = reduced.leading().ok_or(EngineError::ZeroClass)?;
        let index = perm.iter().position(|&p| p == pos).expect("permutation");
        Ok(self.generator(z.h, index).q)
    }

    /// Largest q among the terms of a chain.
    pub fn max_q(&self, chain: &Chain) -> Option<i32> {
        chain
            .vector
            .iter()
            .map(|(i, _)| self.generator(chain.h, i).q)
            .max()
    }

    /// Debug dump: basis metadata and differential triplets.
    pub fn dump_json(&self) -> Value {
        let mut basis = Vec::new();
        let mut triplets = Vec::new();
        for (&h, _) in &self.blocks {
            for i in 0..self.block_dimension(h) {
                let g = self.generator(h, i);
                basis.push(json!({
                    "h": h, "index": i, "vertex": g.vertex, "monomial": g.monomial, "q": g.q,
                }));
            }
            for (col, v) in self.differential(h).iter().enumerate() {
                for (row, c) in v.iter() {
                    triplets.push(json!({
                        "h": h, "row": row, "col": col, "value": format!("{c}/1"),
                    }));
                }
            }
        }
        json!({
            "crossings": self.crossings(),
            "writhe": self.writhe,
            "basis": basis,
            "differential": triplets,
        })
    }
}

//! Oriented link diagrams in planar-diagram form.
//!
//! A crossing stores its four edge labels counterclockwise, starting at the
//! incoming under-strand, together with its sign. The sign fixes the direction
//! of the over-strand: a positive crossing has its over-strand running from
//! slot 3 to slot 1, a negative one from slot 1 to slot 3. Edges that meet no
//! crossing are crossing-free circles ("loops") and form their own component.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type EdgeId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed PD code: {0}")]
    MalformedPd(String),
    #[error("inconsistent diagram: {0}")]
    Inconsistent(String),
    #[error("braid generator {generator} out of range for {strands} strands")]
    GeneratorOutOfRange { generator: i32, strands: usize },
    #[error("{what} index {index} out of range (size {len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn from_value(v: i32) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }
}

/// Which side of an oriented edge, looking along its direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edges: [EdgeId; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(edges: [EdgeId; 4], sign: Sign) -> Self {
        Crossing { edges, sign }
    }

    /// Builds a crossing from labels listed counterclockwise starting anywhere,
    /// given the positions of the incoming under- and over-strands in that list.
    pub(crate) fn from_rotation(ccw: [EdgeId; 4], under_in: usize, over_in: usize) -> Self {
        let edges = [
            ccw[under_in % 4],
            ccw[(under_in + 1) % 4],
            ccw[(under_in + 2) % 4],
            ccw[(under_in + 3) % 4],
        ];
        let rel = (over_in + 4 - under_in) % 4;
        let sign = if rel == 3 {
            Sign::Positive
        } else {
            Sign::Negative
        };
        debug_assert!(rel == 1 || rel == 3);
        Crossing { edges, sign }
    }

    pub fn over_in_slot(&self) -> usize {
        match self.sign {
            Sign::Positive => 3,
            Sign::Negative => 1,
        }
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in_slot()
    }

    pub fn is_over(slot: usize) -> bool {
        slot % 2 == 1
    }

    /// The same crossing with over and under exchanged.
    pub fn mirrored(&self) -> Crossing {
        let [a, b, c, d] = self.edges;
        match self.sign {
            Sign::Positive => Crossing::new([d, a, b, c], Sign::Negative),
            Sign::Negative => Crossing::new([b, c, d, a], Sign::Positive),
        }
    }

    /// Slot pairs joined by the orientation-preserving smoothing.
    pub fn oriented_pairs(&self) -> [(usize, usize); 2] {
        match self.sign {
            Sign::Positive => [(0, 1), (2, 3)],
            Sign::Negative => [(0, 3), (1, 2)],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub crossing: usize,
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionStats {
    /// Circles of the oriented resolution.
    pub r: usize,
    pub w: i32,
    pub c: usize,
    pub l: usize,
    pub is_positive: bool,
}

impl ResolutionStats {
    /// Euler characteristic of the Seifert surface built from this diagram.
    pub fn seifert_euler_characteristic(&self) -> i64 {
        self.r as i64 - self.c as i64
    }
}

#[derive(Clone, Debug)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    loops: Vec<EdgeId>,
    components: Vec<Vec<EdgeId>>,
    ends: BTreeMap<EdgeId, (Slot, Slot)>,
}

impl PartialEq for LinkDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.loops == other.loops
    }
}

impl Eq for LinkDiagram {}

impl LinkDiagram {
    /// Validates crossings and loops and derives the component structure.
    pub fn new(crossings: Vec<Crossing>, mut loops: Vec<EdgeId>) -> Result<Self, DiagramError> {
        let mut tails: BTreeMap<EdgeId, Slot> = BTreeMap::new();
        let mut heads: BTreeMap<EdgeId, Slot> = BTreeMap::new();
        for (i, x) in crossings.iter().enumerate() {
            for s in 0..4 {
                let e = x.edges[s];
                let slot = Slot {
                    crossing: i,
                    index: s,
                };
                let map = if x.is_incoming(s) {
                    &mut heads
                } else {
                    &mut tails
                };
                if map.insert(e, slot).is_some() {
                    return Err(DiagramError::Inconsistent(format!(
                        "edge {e} is {} at more than one crossing slot",
                        if x.is_incoming(s) {
                            "incoming"
                        } else {
                            "outgoing"
                        }
                    )));
                }
            }
        }
        let mut ends = BTreeMap::new();
        for (&e, &t) in &tails {
            match heads.get(&e) {
                Some(&h) => {
                    ends.insert(e, (t, h));
                }
                None => {
                    return Err(DiagramError::Inconsistent(format!(
                        "edge {e} leaves a crossing but never enters one"
                    )))
                }
            }
        }
        if let Some(e) = heads.keys().find(|e| !tails.contains_key(e)) {
            return Err(DiagramError::Inconsistent(format!(
                "edge {e} enters a crossing but never leaves one"
            )));
        }
        loops.sort_unstable();
        for w in loops.windows(2) {
            if w[0] == w[1] {
                return Err(DiagramError::Inconsistent(format!(
                    "loop label {} repeated",
                    w[0]
                )));
            }
        }
        if let Some(e) = loops.iter().find(|e| ends.contains_key(e)) {
            return Err(DiagramError::Inconsistent(format!(
                "loop label {e} also used by a crossing"
            )));
        }

        // Successor of an edge: the outgoing slot on the same strand at its head.
        let mut components = Vec::new();
        let mut seen = BTreeSet::new();
        for &start in ends.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut e = start;
            loop {
                seen.insert(e);
                comp.push(e);
                let head = ends[&e].1;
                e = crossings[head.crossing].edges[(head.index + 2) % 4];
                if e == start {
                    break;
                }
            }
            components.push(comp);
        }
        for &e in &loops {
            components.push(vec![e]);
        }
        for comp in components.iter_mut() {
            let pos = comp
                .iter()
                .enumerate()
                .min_by_key(|(_, e)| **e)
                .map(|(i, _)| i)
                .unwrap_or(0);
            comp.rotate_left(pos);
        }
        components.sort_by_key(|c| c[0]);

        Ok(LinkDiagram {
            crossings,
            loops,
            components,
            ends,
        })
    }

    pub fn empty() -> Self {
        LinkDiagram::new(Vec::new(), Vec::new()).expect("empty diagram is valid")
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// Crossing-free diagram of the m-component unlink.
    pub fn unlink(m: usize) -> Self {
        LinkDiagram::new(Vec::new(), (1..=m as EdgeId).collect()).expect("unlink is valid")
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, k: usize) -> Result<&Crossing, DiagramError> {
        self.crossings.get(k).ok_or(DiagramError::IndexOutOfRange {
            what: "crossing",
            index: k,
            len: self.crossings.len(),
        })
    }

    pub fn loops(&self) -> &[EdgeId] {
        &self.loops
    }

    pub fn components(&self) -> &[Vec<EdgeId>] {
        &self.components
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|x| x.sign.value()).sum()
    }

    pub fn negative_count(&self) -> usize {
        self.crossings
            .iter()
            .filter(|x| x.sign == Sign::Negative)
            .count()
    }

    pub fn positive_count(&self) -> usize {
        self.crossings.len() - self.negative_count()
    }

    pub fn is_positive(&self) -> bool {
        self.negative_count() == 0
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.ends.keys().copied().chain(self.loops.iter().copied())
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.ends.contains_key(&e) || self.loops.contains(&e)
    }

    pub fn max_edge(&self) -> EdgeId {
        self.edges().max().unwrap_or(0)
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.loops.contains(&e)
    }

    pub fn tail(&self, e: EdgeId) -> Option<Slot> {
        self.ends.get(&e).map(|p| p.0)
    }

    pub fn head(&self, e: EdgeId) -> Option<Slot> {
        self.ends.get(&e).map(|p| p.1)
    }

    pub fn component_of(&self, e: EdgeId) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&e))
    }

    /// Component index of every edge.
    pub fn component_map(&self) -> BTreeMap<EdgeId, usize> {
        let mut map = BTreeMap::new();
        for (i, c) in self.components.iter().enumerate() {
            for &e in c {
                map.insert(e, i);
            }
        }
        map
    }

    /// Components of the two strands (under, over) at crossing k.
    pub fn strand_components(&self, k: usize) -> (usize, usize) {
        let x = &self.crossings[k];
        let map = self.component_map();
        (map[&x.edges[0]], map[&x.edges[1]])
    }

    /// Circles of the oriented resolution, each as the set of its edges.
    pub fn seifert_circles(&self) -> Vec<Vec<EdgeId>> {
        let pairs: Vec<_> = self.crossings.iter().map(|x| x.oriented_pairs()).collect();
        self.circles_with(|k| pairs[k])
    }

    /// Circles obtained by smoothing each crossing with the given slot pairing.
    pub(crate) fn circles_with(
        &self,
        pairing: impl Fn(usize) -> [(usize, usize); 2],
    ) -> Vec<Vec<EdgeId>> {
        let labels: Vec<EdgeId> = self.edges().collect();
        let index: BTreeMap<EdgeId, usize> =
            labels.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut uf = UnionFind::new(labels.len());
        for (k, x) in self.crossings.iter().enumerate() {
            for (s, t) in pairing(k) {
                uf.union(index[&x.edges[s]], index[&x.edges[t]]);
            }
        }
        let mut groups: BTreeMap<usize, Vec<EdgeId>> = BTreeMap::new();
        for (i, &e) in labels.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(e);
        }
        let mut circles: Vec<_> = groups.into_values().collect();
        circles.sort_by_key(|c| c[0]);
        circles
    }

    pub fn resolution_stats(&self) -> ResolutionStats {
        ResolutionStats {
            r: self.seifert_circles().len(),
            w: self.writhe(),
            c: self.crossing_count(),
            l: self.component_count(),
            is_positive: self.is_positive(),
        }
    }

    /// Linking number between components i and j (i != j).
    pub fn linking_number(&self, i: usize, j: usize) -> i32 {
        let map = self.component_map();
        let twice: i32 = self
            .crossings
            .iter()
            .filter(|x| {
                let (u, o) = (map[&x.edges[0]], map[&x.edges[1]]);
                (u == i && o == j) || (u == j && o == i)
            })
            .map(|x| x.sign.value())
            .sum();
        twice / 2
    }

    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self.crossings.iter().map(|x| x.mirrored()).collect();
        LinkDiagram::new(crossings, self.loops.clone()).expect("mirror preserves validity")
    }

    pub fn crossing_change(&self, k: usize) -> Result<LinkDiagram, DiagramError> {
        self.crossing(k)?;
        let mut crossings = self.crossings.clone();
        crossings[k] = crossings[k].mirrored();
        Ok(LinkDiagram::new(crossings, self.loops.clone())
            .expect("crossing change preserves validity"))
    }

    /// Adds `offset` to every edge label.
    pub fn shifted(&self, offset: EdgeId) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|x| Crossing::new(x.edges.map(|e| e + offset), x.sign))
            .collect();
        let loops = self.loops.iter().map(|e| e + offset).collect();
        LinkDiagram::new(crossings, loops).expect("relabelling preserves validity")
    }

    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let other = other.shifted(self.max_edge());
        let mut crossings = self.crossings.clone();
        crossings.extend_from_slice(&other.crossings);
        let mut loops = self.loops.clone();
        loops.extend_from_slice(&other.loops);
        LinkDiagram::new(crossings, loops).expect("disjoint union is valid")
    }

    /// Connected sum joining component `i1` of `self` to component `i2` of
    /// `other` by a band between the first edge of each named component.
    /// Returns the diagram and the two edges used, labelled as in the result.
    pub fn connect_sum(
        &self,
        i1: usize,
        other: &LinkDiagram,
        i2: usize,
    ) -> Result<(LinkDiagram, (EdgeId, EdgeId)), DiagramError> {
        let e1 = self
            .components
            .get(i1)
            .ok_or(DiagramError::IndexOutOfRange {
                what: "component",
                index: i1,
                len: self.components.len(),
            })?[0];
        let e2 = other
            .components
            .get(i2)
            .ok_or(DiagramError::IndexOutOfRange {
                what: "component",
                index: i2,
                len: other.components.len(),
            })?[0];
        let e2 = e2 + self.max_edge();
        let union = self.disjoint_union(other);
        Ok((union.band(e1, e2), (e1, e2)))
    }

    /// Oriented band between two distinct edges: the edges exchange their heads.
    /// A crossing-free loop involved in the band is absorbed into the other
    /// edge; when both are loops, `e2` is absorbed.
    pub(crate) fn band(&self, e1: EdgeId, e2: EdgeId) -> LinkDiagram {
        debug_assert_ne!(e1, e2);
        let (l1, l2) = (self.is_loop(e1), self.is_loop(e2));
        if l1 || l2 {
            let drop = if l2 { e2 } else { e1 };
            let loops = self.loops.iter().copied().filter(|&e| e != drop).collect();
            return LinkDiagram::new(self.crossings.clone(), loops).expect("valid");
        }
        let h1 = self.ends[&e1].1;
        let h2 = self.ends[&e2].1;
        let mut crossings = self.crossings.clone();
        crossings[h1.crossing].edges[h1.index] = e2;
        crossings[h2.crossing].edges[h2.index] = e1;
        LinkDiagram::new(crossings, self.loops.clone()).expect("exchanging heads keeps orientation")
    }

    /// Removes the given crossings, joining the strands that passed through
    /// them. Strands that no longer meet any crossing become loops when
    /// `keep_loop` accepts their label; otherwise they are dropped.
    pub(crate) fn splice_out(
        &self,
        remove: &BTreeSet<usize>,
        keep_loop: impl Fn(EdgeId) -> bool,
    ) -> (LinkDiagram, BTreeMap<EdgeId, EdgeId>) {
        let labels: Vec<EdgeId> = self.ends.keys().copied().collect();
        let index: BTreeMap<EdgeId, usize> =
            labels.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut uf = UnionFind::new(labels.len());
        for &k in remove {
            let x = &self.crossings[k];
            uf.union(index[&x.edges[0]], index[&x.edges[2]]);
            uf.union(index[&x.edges[1]], index[&x.edges[3]]);
        }
        let mut rep: BTreeMap<usize, EdgeId> = BTreeMap::new();
        for (i, &e) in labels.iter().enumerate() {
            let r = uf.find(i);
            let entry = rep.entry(r).or_insert(e);
            *entry = (*entry).min(e);
        }
        let relabel: BTreeMap<EdgeId, EdgeId> = labels
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, rep[&uf.find(i)]))
            .collect();
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(k, _)| !remove.contains(k))
            .map(|(_, x)| Crossing::new(x.edges.map(|e| relabel[&e]), x.sign))
            .collect();
        let used: BTreeSet<EdgeId> = crossings.iter().flat_map(|x| x.edges).collect();
        let mut loops = self.loops.clone();
        let freed: BTreeSet<EdgeId> = relabel
            .values()
            .copied()
            .filter(|e| !used.contains(e))
            .collect();
        loops.extend(freed.into_iter().filter(|&e| keep_loop(e)));
        let d = LinkDiagram::new(crossings, loops).expect("splicing keeps orientation");
        (d, relabel)
    }

    /// The sublink formed by the listed components.
    pub fn sublink(&self, keep: &[usize]) -> Result<LinkDiagram, DiagramError> {
        for &i in keep {
            if i >= self.components.len() {
                return Err(DiagramError::IndexOutOfRange {
                    what: "component",
                    index: i,
                    len: self.components.len(),
                });
            }
        }
        let map = self.component_map();
        let keep: BTreeSet<usize> = keep.iter().copied().collect();
        let remove: BTreeSet<usize> = (0..self.crossings.len())
            .filter(|&k| {
                let x = &self.crossings[k];
                !(keep.contains(&map[&x.edges[0]]) && keep.contains(&map[&x.edges[1]]))
            })
            .collect();
        let (d, _) = self.splice_out(&remove, |e| keep.contains(&map[&e]));
        let loops: Vec<EdgeId> = d
            .loops
            .iter()
            .copied()
            .filter(|e| keep.contains(&map[e]))
            .collect();
        Ok(LinkDiagram::new(d.crossings, loops).expect("valid"))
    }

    /// Renumbers edges 1, 2, ... consecutively along the components.
    pub fn relabel_canonical(&self) -> LinkDiagram {
        let mut map = BTreeMap::new();
        let mut next = 1;
        for c in &self.components {
            for &e in c {
                map.insert(e, next);
                next += 1;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .map(|x| Crossing::new(x.edges.map(|e| map[&e]), x.sign))
            .collect();
        let loops = self.loops.iter().map(|e| map[e]).collect();
        LinkDiagram::new(crossings, loops).expect("relabelling preserves validity")
    }

    /// An isomorphism onto `other`: a map of edge labels and a map of
    /// crossing indices carrying each crossing to one with the same sign and
    /// the same labels in the same slots. Crossing-free circles are matched in
    /// order.
    pub fn isomorphism(
        &self,
        other: &LinkDiagram,
    ) -> Option<(BTreeMap<EdgeId, EdgeId>, Vec<usize>)> {
        let n = self.crossings.len();
        if n != other.crossings.len() || self.loops.len() != other.loops.len() {
            return None;
        }
        let mut cross: Vec<Option<usize>> = vec![None; n];
        let mut used = vec![false; n];
        for seed in 0..n {
            if cross[seed].is_some() {
                continue;
            }
            let found = (0..n)
                .filter(|&t| !used[t])
                .find_map(|t| self.extend_match(other, seed, t, &cross, &used));
            let added = found?;
            for (a, b) in added {
                cross[a] = Some(b);
                used[b] = true;
            }
        }
        let cross: Vec<usize> = cross
            .into_iter()
            .map(|c| c.expect("every crossing matched"))
            .collect();
        let mut edges = BTreeMap::new();
        for (a, &b) in cross.iter().enumerate() {
            for s in 0..4 {
                edges.insert(self.crossings[a].edges[s], other.crossings[b].edges[s]);
            }
        }
        edges.extend(self.loops.iter().copied().zip(other.loops.iter().copied()));
        Some((edges, cross))
    }

    /// Grows the match `seed -> target` through shared edges across one
    /// piece, returning the new pairs if it is consistent.
    fn extend_match(
        &self,
        other: &LinkDiagram,
        seed: usize,
        target: usize,
        fixed: &[Option<usize>],
        used: &[bool],
    ) -> Option<Vec<(usize, usize)>> {
        let mut map: BTreeMap<usize, usize> = BTreeMap::new();
        let mut image: BTreeSet<usize> = BTreeSet::new();
        let mut stack = vec![(seed, target)];
        while let Some((a, b)) = stack.pop() {
            if let Some(&prev) = map.get(&a) {
                if prev != b {
                    return None;
                }
                continue;
            }
            if fixed[a].is_some() || used[b] || image.contains(&b) {
                return None;
            }
            if self.crossings[a].sign != other.crossings[b].sign {
                return None;
            }
            map.insert(a, b);
            image.insert(b);
            for s in 0..4 {
                let far = self.opposite_end(Slot {
                    crossing: a,
                    index: s,
                });
                let far_other = other.opposite_end(Slot {
                    crossing: b,
                    index: s,
                });
                if far.index != far_other.index {
                    return None;
                }
                stack.push((far.crossing, far_other.crossing));
            }
        }
        Some(map.into_iter().collect())
    }

    /// The slot at the far end of the edge leaving through `slot`.
    fn opposite_end(&self, slot: Slot) -> Slot {
        let e = self.crossings[slot.crossing].edges[slot.index];
        let (t, h) = self.ends[&e];
        if t == slot {
            h
        } else {
            t
        }
    }

    /// Faces of the planar map, as a face index for every crossing slot.
    /// The face of the slot where an edge starts lies to the right of that
    /// edge; the face of the slot where it ends lies to its left.
    pub fn faces(&self) -> BTreeMap<Slot, usize> {
        let mut face = BTreeMap::new();
        let mut count = 0;
        for k in 0..self.crossings.len() {
            for s in 0..4 {
                let start = Slot {
                    crossing: k,
                    index: s,
                };
                if face.contains_key(&start) {
                    continue;
                }
                let mut dart = start;
                loop {
                    face.insert(dart, count);
                    let far = self.opposite_end(dart);
                    dart = Slot {
                        crossing: far.crossing,
                        index: (far.index + 1) % 4,
                    };
                    if dart == start {
                        break;
                    }
                }
                count += 1;
            }
        }
        face
    }

    /// The face on the given side of an edge; `None` for loops.
    pub fn face_of(&self, faces: &BTreeMap<Slot, usize>, e: EdgeId, side: Side) -> Option<usize> {
        let (t, h) = *self.ends.get(&e)?;
        Some(match side {
            Side::Right => faces[&t],
            Side::Left => faces[&h],
        })
    }

    /// Connected pieces of the underlying 4-valent graph, as a piece index per crossing.
    pub fn pieces(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.crossings.len());
        for &(t, h) in self.ends.values() {
            uf.union(t.crossing, h.crossing);
        }
        (0..self.crossings.len()).map(|k| uf.find(k)).collect()
    }

    /// Euler-characteristic test: every connected piece must be a sphere.
    pub fn is_planar(&self) -> bool {
        let pieces = self.pieces();
        let faces = self.faces();
        let mut v: BTreeMap<usize, i64> = BTreeMap::new();
        let mut f: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for (slot, &fi) in &faces {
            f.entry(pieces[slot.crossing]).or_default().insert(fi);
        }
        for &p in &pieces {
            *v.entry(p).or_default() += 1;
        }
        v.iter().all(|(p, &n)| n - 2 * n + f[p].len() as i64 == 2)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{parse_braid, parse_pd, torus_link};

    fn trefoil() -> LinkDiagram {
        parse_braid(&[1, 1, 1], 2).unwrap()
    }

    #[test]
    fn trefoil_stats() {
        let s = trefoil().resolution_stats();
        assert_eq!((s.r, s.w, s.c, s.l, s.is_positive), (2, 3, 3, 1, true));
    }

    #[test]
    fn unknot_stats() {
        let s = LinkDiagram::unknot().resolution_stats();
        assert_eq!((s.r, s.w, s.c, s.l), (1, 0, 0, 1));
    }

    #[test]
    fn t33_stats() {
        let s = torus_link(3, 3).resolution_stats();
        assert_eq!((s.r, s.c, s.l, s.is_positive), (3, 6, 3, true));
    }

    #[test]
    fn mirror_flips_writhe() {
        let m = trefoil().mirror();
        assert_eq!(m.writhe(), -3);
        assert_eq!(m.resolution_stats().r, 2);
        assert_eq!(m.mirror(), trefoil());
    }

    #[test]
    fn union_of_unknots() {
        let u = LinkDiagram::unknot().disjoint_union(&LinkDiagram::unknot());
        assert_eq!(u.component_count(), 2);
        assert_eq!(u.crossing_count(), 0);
    }

    #[test]
    fn hopf_crossing_change() {
        let hopf = parse_braid(&[1, 1], 2).unwrap();
        let d = hopf.crossing_change(0).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.writhe(), 0);
        assert_eq!(d.linking_number(0, 1), 0);
        assert!(hopf.crossing_change(2).is_err());
    }

    #[test]
    fn connect_sum_counts() {
        let t = trefoil();
        let (d, (e1, e2)) = t.connect_sum(0, &t, 0).unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.crossing_count(), 6);
        assert!(d.has_edge(e1) && d.has_edge(e2));
        assert!(d.is_planar());
        let hopf = parse_braid(&[1, 1], 2).unwrap();
        let (d, _) = hopf.connect_sum(1, &hopf, 0).unwrap();
        assert_eq!(d.component_count(), 3);
        assert!(t.connect_sum(1, &t, 0).is_err());
    }

    #[test]
    fn connect_sum_with_loop() {
        let (d, _) = LinkDiagram::unknot().connect_sum(0, &trefoil(), 0).unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.crossing_count(), 3);
    }

    #[test]
    fn linking_numbers() {
        let hopf = parse_braid(&[1, 1], 2).unwrap();
        assert_eq!(hopf.linking_number(0, 1), 1);
        assert_eq!(hopf.mirror().linking_number(0, 1), -1);
        let t24 = torus_link(2, 4);
        assert_eq!(t24.linking_number(0, 1), 2);
    }

    #[test]
    fn planarity() {
        assert!(trefoil().is_planar());
        let fig8 = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap();
        assert!(fig8.is_planar());
        assert_eq!(fig8.faces().values().collect::<BTreeSet<_>>().len(), 6);
        // Each pair of strands meets exactly once: not realisable in the plane.
        let bogus = parse_pd("X[1,4,2,3] X[3,6,4,5] X[5,2,6,1]").unwrap();
        assert!(!bogus.is_planar());
    }

    #[test]
    fn sublink_of_hopf() {
        let hopf = parse_braid(&[1, 1], 2).unwrap();
        let s = hopf.sublink(&[0]).unwrap();
        assert_eq!(s.component_count(), 1);
        assert_eq!(s.crossing_count(), 0);
        let t = torus_link(3, 3).sublink(&[0, 2]).unwrap();
        assert_eq!(t.component_count(), 2);
        assert_eq!(t.linking_number(0, 1), 1);
    }

    #[test]
    fn rejects_bad_orientation() {
        let x = Crossing::new([1, 2, 2, 1], Sign::Positive);
        assert!(LinkDiagram::new(vec![x], vec![]).is_err());
        let kink = Crossing::new([1, 2, 2, 1], Sign::Negative);
        assert!(LinkDiagram::new(vec![kink], vec![]).is_ok());
        assert!(LinkDiagram::new(vec![], vec![3, 3]).is_err());
    }

    #[test]
    fn crossing_rotation() {
        let x = Crossing::from_rotation([5, 6, 7, 8], 2, 1);
        assert_eq!(x, Crossing::new([7, 8, 5, 6], Sign::Positive));
        let y = Crossing::from_rotation([5, 6, 7, 8], 2, 3);
        assert_eq!(y.sign, Sign::Negative);
    }

    #[test]
    fn isomorphisms() {
        let t = trefoil();
        let mut xs = t.crossings().to_vec();
        xs.rotate_left(1);
        let shuffled = LinkDiagram::new(
            xs.iter()
                .map(|x| Crossing::new(x.edges.map(|e| e + 10), x.sign))
                .collect(),
            vec![3],
        )
        .unwrap();
        let with_loop = t.disjoint_union(&LinkDiagram::unknot());
        let (edges, cross) = with_loop.isomorphism(&shuffled).unwrap();
        for (k, x) in with_loop.crossings().iter().enumerate() {
            assert_eq!(
                x.edges.map(|e| edges[&e]),
                shuffled.crossings()[cross[k]].edges
            );
        }
        assert!(t.isomorphism(&t.mirror()).is_none());
        assert!(t
            .isomorphism(&parse_braid(&[1, -1, 1], 2).unwrap())
            .is_none());
        let u = torus_link(2, 4).disjoint_union(&trefoil());
        assert!(u
            .isomorphism(&trefoil().disjoint_union(&torus_link(2, 4)))
            .is_some());
    }
}

//! Text and JSON notations for link diagrams: PD codes, braid words, torus links.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_integer::Integer;
use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::diagram::{Crossing, DiagramError, EdgeId, LinkDiagram, Sign};

/// Parses a PD code such as `X[1,5,2,4] X[3,1,4,6] ...`.
///
/// Tuples list edges counterclockwise from the incoming under-strand. The
/// direction of each over-strand is forced by the neighbouring under-strands
/// where possible; strands that are over at every crossing they meet fall back
/// to edge-number succession. `Loop[k]` adds a crossing-free circle and an
/// optional `PD[...]` wrapper is ignored.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    static TOKEN: OnceLock<Regex> = OnceLock::new();
    let token = TOKEN.get_or_init(|| Regex::new(r"([A-Za-z]+)\s*\[([^\[\]]*)\]").unwrap());

    let mut body = text.trim();
    if let Some(rest) = body.strip_prefix("PD[") {
        body = rest
            .strip_suffix(']')
            .ok_or_else(|| DiagramError::MalformedPd("unterminated PD[".into()))?;
    }

    let mut tuples: Vec<[EdgeId; 4]> = Vec::new();
    let mut loops = Vec::new();
    let mut last = 0;
    for cap in token.captures_iter(body) {
        let m = cap.get(0).unwrap();
        check_separator(&body[last..m.start()])?;
        last = m.end();
        let args = cap[2]
            .split(',')
            .map(|s| {
                s.trim().parse::<EdgeId>().map_err(|_| {
                    DiagramError::MalformedPd(format!("bad edge label {s:?} in {}", m.as_str()))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        match (&cap[1], args.len()) {
            ("X", 4) => tuples.push([args[0], args[1], args[2], args[3]]),
            ("Loop", 1) => loops.push(args[0]),
            (name, n) => {
                return Err(DiagramError::MalformedPd(format!(
                    "unexpected token {name} with {n} arguments"
                )))
            }
        }
    }
    check_separator(&body[last..])?;
    orient(tuples, loops)
}

fn check_separator(s: &str) -> Result<(), DiagramError> {
    if s.chars().all(|c| c.is_whitespace() || c == ',') {
        Ok(())
    } else {
        Err(DiagramError::MalformedPd(format!(
            "unexpected text {:?}",
            s.trim()
        )))
    }
}

/// Chooses over-strand directions so that every edge enters one slot and
/// leaves another. Each crossing has one unknown bit (over-strand runs
/// slot 3 to slot 1, or slot 1 to slot 3); edges impose parity constraints.
fn orient(tuples: Vec<[EdgeId; 4]>, loops: Vec<EdgeId>) -> Result<LinkDiagram, DiagramError> {
    let n = tuples.len();
    let mut occurrences: BTreeMap<EdgeId, Vec<(usize, usize)>> = BTreeMap::new();
    for (k, t) in tuples.iter().enumerate() {
        for (s, &e) in t.iter().enumerate() {
            occurrences.entry(e).or_default().push((k, s));
        }
    }
    for (e, occ) in &occurrences {
        if occ.len() != 2 {
            return Err(DiagramError::Inconsistent(format!(
                "edge {e} occurs {} times (expected 2)",
                occ.len()
            )));
        }
    }

    // Node n is the constant 0. A slot is incoming iff value(node) ^ parity.
    let incoming = |k: usize, s: usize| -> (usize, bool) {
        match s {
            0 => (n, true),
            2 => (n, false),
            1 => (k, false),
            _ => (k, true),
        }
    };
    let mut uf = ParityUnionFind::new(n + 1);
    for (e, occ) in &occurrences {
        let (u, pu) = incoming(occ[0].0, occ[0].1);
        let (v, pv) = incoming(occ[1].0, occ[1].1);
        // Exactly one end is incoming.
        if !uf.relate(u, v, !(pu ^ pv)) {
            return Err(DiagramError::Inconsistent(format!(
                "no orientation makes edge {e} run from one crossing to another"
            )));
        }
    }

    // Unconstrained classes: positive when the over-strand labels increase.
    let mut fixed: BTreeMap<usize, bool> = BTreeMap::new();
    let (root_n, par_n) = uf.find(n);
    fixed.insert(root_n, par_n);
    let mut value = vec![false; n];
    for k in 0..n {
        let (root, par) = uf.find(k);
        let root_value = *fixed.entry(root).or_insert_with(|| {
            let [_, b, _, d] = tuples[k];
            let positive = b == d + 1 || d > b + 1;
            // value true means the over-strand enters at slot 1 (negative).
            !positive ^ par
        });
        value[k] = root_value ^ par;
    }

    let crossings = tuples
        .iter()
        .zip(&value)
        .map(|(t, &neg)| Crossing::new(*t, if neg { Sign::Negative } else { Sign::Positive }))
        .collect();
    LinkDiagram::new(crossings, loops)
}

struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            parity: vec![false; n],
        }
    }

    fn find(&mut self, i: usize) -> (usize, bool) {
        if self.parent[i] == i {
            return (i, false);
        }
        let (root, p) = self.find(self.parent[i]);
        self.parent[i] = root;
        self.parity[i] ^= p;
        (root, self.parity[i])
    }

    /// Records value(a) ^ value(b) == diff; false on contradiction.
    fn relate(&mut self, a: usize, b: usize, diff: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == diff;
        }
        let (child, root) = if ra < rb { (rb, ra) } else { (ra, rb) };
        self.parent[child] = root;
        self.parity[child] = pa ^ pb ^ diff;
        true
    }
}

/// PD text for a diagram; crossing-free circles are written as `Loop[k]`.
pub fn to_pd_string(d: &LinkDiagram) -> String {
    let mut parts: Vec<String> = d
        .crossings()
        .iter()
        .map(|x| {
            format!(
                "X[{},{},{},{}]",
                x.edges[0], x.edges[1], x.edges[2], x.edges[3]
            )
        })
        .collect();
    parts.extend(d.loops().iter().map(|e| format!("Loop[{e}]")));
    parts.join(" ")
}

/// Closure of a braid word; `k` is the generator σ_k and `-k` its inverse.
/// Crossing `i` of the result is letter `i` of the word, and components are
/// ordered by the first strand position they pass through.
pub fn parse_braid(word: &[i32], strands: usize) -> Result<LinkDiagram, DiagramError> {
    for &g in word {
        if g == 0 || g.unsigned_abs() as usize >= strands {
            return Err(DiagramError::GeneratorOutOfRange {
                generator: g,
                strands,
            });
        }
    }
    let mut cur: Vec<EdgeId> = (1..=strands as EdgeId).collect();
    let mut next = strands as EdgeId + 1;
    let mut crossings = Vec::with_capacity(word.len());
    for &g in word {
        let k = g.unsigned_abs() as usize;
        let (left, right) = (cur[k - 1], cur[k]);
        let (o_left, o_right) = (next, next + 1);
        next += 2;
        let x = if g > 0 {
            Crossing::new([right, o_right, o_left, left], Sign::Positive)
        } else {
            Crossing::new([left, right, o_right, o_left], Sign::Negative)
        };
        crossings.push(x);
        cur[k - 1] = o_left;
        cur[k] = o_right;
    }
    let rename: BTreeMap<EdgeId, EdgeId> = cur
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i as EdgeId + 1))
        .collect();
    let used: std::collections::BTreeSet<EdgeId> = crossings.iter().flat_map(|x| x.edges).collect();
    let crossings: Vec<Crossing> = crossings
        .into_iter()
        .map(|x| Crossing::new(x.edges.map(|e| *rename.get(&e).unwrap_or(&e)), x.sign))
        .collect();
    let loops = (1..=strands as EdgeId)
        .filter(|e| !used.contains(e))
        .collect();
    Ok(LinkDiagram::new(crossings, loops)?.relabel_canonical())
}

/// Braid text: a `strands=N` header followed by whitespace-separated generators.
pub fn parse_braid_text(text: &str) -> Result<LinkDiagram, DiagramError> {
    let mut strands = None;
    let mut word = Vec::new();
    for tok in text.split(|c: char| c.is_whitespace() || c == ',' || c == ';' || c == ':') {
        if tok.is_empty() {
            continue;
        }
        if let Some(v) = tok.strip_prefix("strands=") {
            strands = Some(
                v.parse::<usize>()
                    .map_err(|_| DiagramError::MalformedPd(format!("bad strand count {v:?}")))?,
            );
        } else {
            word.push(
                tok.parse::<i32>().map_err(|_| {
                    DiagramError::MalformedPd(format!("bad braid generator {tok:?}"))
                })?,
            );
        }
    }
    let strands =
        strands.ok_or_else(|| DiagramError::MalformedPd("missing strands= header".into()))?;
    parse_braid(&word, strands)
}

/// Standard braid closure of the torus link T(p, q): (σ₁…σ_{p−1})^q on p strands.
pub fn torus_link(p: usize, q: usize) -> LinkDiagram {
    assert!(p >= 1 && q >= 1, "torus link parameters must be positive");
    let word: Vec<i32> = (0..q).flat_map(|_| 1..p as i32).collect();
    parse_braid(&word, p).expect("torus braid generators are in range")
}

pub fn torus_component_count(p: usize, q: usize) -> usize {
    p.gcd(&q)
}

/// Canonical JSON form of a diagram, also accepted as input.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CanonicalDiagram {
    pub crossings: Vec<[EdgeId; 4]>,
    pub signs: Vec<i32>,
    pub components: Vec<Vec<EdgeId>>,
}

/// Any accepted way to describe a diagram in JSON.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum DiagramInput {
    Pd { pd: String },
    Braid { braid: Vec<i32>, strands: usize },
    Torus { torus: (usize, usize) },
    Canonical(CanonicalDiagram),
}

impl DiagramInput {
    pub fn build(&self) -> Result<LinkDiagram, DiagramError> {
        match self {
            DiagramInput::Pd { pd } => parse_pd(pd),
            DiagramInput::Braid { braid, strands } => parse_braid(braid, *strands),
            DiagramInput::Torus { torus: (p, q) } => {
                if *p == 0 || *q == 0 {
                    return Err(DiagramError::MalformedPd(
                        "torus parameters must be positive".into(),
                    ));
                }
                Ok(torus_link(*p, *q))
            }
            DiagramInput::Canonical(c) => c.build(),
        }
    }
}

impl CanonicalDiagram {
    pub fn build(&self) -> Result<LinkDiagram, DiagramError> {
        if self.crossings.len() != self.signs.len() {
            return Err(DiagramError::MalformedPd(
                "crossings and signs differ in length".into(),
            ));
        }
        let crossings = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(t, &s)| {
                Sign::from_value(s)
                    .map(|sign| Crossing::new(*t, sign))
                    .ok_or_else(|| DiagramError::MalformedPd(format!("bad sign {s}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let used: std::collections::BTreeSet<EdgeId> =
            self.crossings.iter().flatten().copied().collect();
        let loops = self
            .components
            .iter()
            .flatten()
            .copied()
            .filter(|e| !used.contains(e))
            .collect();
        let d = LinkDiagram::new(crossings, loops)?;
        let mut given: Vec<Vec<EdgeId>> = self.components.clone();
        for c in given.iter_mut() {
            c.sort_unstable();
        }
        given.sort();
        let mut derived: Vec<Vec<EdgeId>> = d.components().to_vec();
        for c in derived.iter_mut() {
            c.sort_unstable();
        }
        derived.sort();
        if given != derived {
            return Err(DiagramError::Inconsistent(
                "components do not match the crossings".into(),
            ));
        }
        Ok(d)
    }
}

impl From<&LinkDiagram> for CanonicalDiagram {
    fn from(d: &LinkDiagram) -> Self {
        CanonicalDiagram {
            crossings: d.crossings().iter().map(|x| x.edges).collect(),
            signs: d.crossings().iter().map(|x| x.sign.value()).collect(),
            components: d.components().to_vec(),
        }
    }
}

impl Serialize for LinkDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CanonicalDiagram::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinkDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let input = DiagramInput::deserialize(d)?;
        input.build().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const RIGHT_TREFOIL: &str = "X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]";

    #[test]
    fn trefoil_pd() {
        let d = parse_pd(RIGHT_TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(), 3);
        let left = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        assert_eq!(left.writhe(), -3);
    }

    #[test]
    fn empty_pd() {
        let d = parse_pd("").unwrap();
        assert_eq!(d.component_count(), 0);
        assert!(d.is_empty());
    }

    #[test]
    fn malformed_pd() {
        assert!(matches!(
            parse_pd("X[1,2,3]"),
            Err(DiagramError::MalformedPd(_))
        ));
        assert!(matches!(
            parse_pd("X[1,2,3,x]"),
            Err(DiagramError::MalformedPd(_))
        ));
        assert!(matches!(
            parse_pd("X[1,2,2,1] junk"),
            Err(DiagramError::MalformedPd(_))
        ));
        assert!(matches!(
            parse_pd("X[1,2,3,4]"),
            Err(DiagramError::Inconsistent(_))
        ));
    }

    #[test]
    fn contradictory_orientation() {
        // Edge 1 would have to enter both of its under-crossings.
        assert!(matches!(
            parse_pd("X[1,3,2,4] X[1,4,2,3]"),
            Err(DiagramError::Inconsistent(_))
        ));
    }

    #[test]
    fn forced_orientation_ignores_numbering() {
        // Relabelled right trefoil whose over-strand labels do not increase.
        let d = parse_pd("X[6,2,5,1] X[4,6,1,3] X[2,4,3,5]").unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(), 3);
    }

    #[test]
    fn kinks_and_loops() {
        let d = parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(d.writhe(), 1);
        assert_eq!(d.component_count(), 1);
        let d = parse_pd("X[2,1,1,2] Loop[7]").unwrap();
        assert_eq!(d.writhe(), -1);
        assert_eq!(d.component_count(), 2);
    }

    #[test]
    fn braid_closures() {
        let t = parse_braid(&[1, 1, 1], 2).unwrap();
        assert_eq!((t.writhe(), t.component_count()), (3, 1));
        let u = parse_braid(&[], 1).unwrap();
        assert_eq!((u.crossing_count(), u.component_count()), (0, 1));
        let h = parse_braid(&[1, 1], 2).unwrap();
        assert_eq!((h.writhe(), h.component_count()), (2, 2));
        assert!(parse_braid(&[2], 2).is_err());
        assert!(parse_braid(&[0], 3).is_err());
        let split = parse_braid(&[1, 1], 3).unwrap();
        assert_eq!(split.component_count(), 3);
    }

    #[test]
    fn braid_text() {
        let d = parse_braid_text("strands=3\n1 -2 1 -2").unwrap();
        assert_eq!(
            (d.crossing_count(), d.component_count(), d.writhe()),
            (4, 1, 0)
        );
        assert!(parse_braid_text("1 1 1").is_err());
    }

    #[test]
    fn torus_links() {
        let t = torus_link(2, 3);
        assert_eq!((t.crossing_count(), t.component_count()), (3, 1));
        let u = torus_link(1, 5);
        assert_eq!((u.crossing_count(), u.component_count()), (0, 1));
        let h = torus_link(2, 4);
        assert_eq!((h.crossing_count(), h.component_count()), (4, 2));
        assert!(torus_link(3, 4).is_positive());
    }

    #[test]
    fn json_inputs() {
        let d: LinkDiagram = serde_json::from_str(r#"{"braid":[1,1,1],"strands":2}"#).unwrap();
        assert_eq!(d.writhe(), 3);
        let d2: LinkDiagram = serde_json::from_str(r#"{"torus":[2,3]}"#).unwrap();
        assert_eq!(d, d2);
        let d3: LinkDiagram =
            serde_json::from_str(&format!(r#"{{"pd":"{RIGHT_TREFOIL}"}}"#)).unwrap();
        assert_eq!(d3.writhe(), 3);
        let json = serde_json::to_string(&d).unwrap();
        assert!(json.starts_with(r#"{"crossings":"#));
        let back: LinkDiagram = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        let bad = r#"{"crossings":[[1,1,2,2]],"signs":[1],"components":[[1],[2]]}"#;
        assert!(serde_json::from_str::<LinkDiagram>(bad).is_err());
    }

    fn braid_word() -> impl Strategy<Value = (Vec<i32>, usize)> {
        (2usize..5).prop_flat_map(|s| {
            let gen = (1..s as i32).prop_flat_map(|k| prop_oneof![Just(k), Just(-k)]);
            (prop::collection::vec(gen, 0..9), Just(s))
        })
    }

    fn permutation_cycles(word: &[i32], strands: usize) -> usize {
        let mut perm: Vec<usize> = (0..strands).collect();
        for &g in word {
            let k = g.unsigned_abs() as usize;
            perm.swap(k - 1, k);
        }
        let mut seen = vec![false; strands];
        let mut cycles = 0;
        for i in 0..strands {
            if !seen[i] {
                cycles += 1;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = perm[j];
                }
            }
        }
        cycles
    }

    proptest! {
        #[test]
        fn closure_components_match_permutation((word, strands) in braid_word()) {
            let d = parse_braid(&word, strands).unwrap();
            prop_assert_eq!(d.component_count(), permutation_cycles(&word, strands));
            prop_assert!(d.is_planar());
        }

        #[test]
        fn pd_round_trip((word, strands) in braid_word()) {
            let d = parse_braid(&word, strands).unwrap();
            let back = parse_pd(&to_pd_string(&d)).unwrap();
            prop_assert_eq!(back, d);
        }

        #[test]
        fn mirror_properties((word, strands) in braid_word()) {
            let d = parse_braid(&word, strands).unwrap();
            let m = d.mirror();
            prop_assert_eq!(m.writhe(), -d.writhe());
            prop_assert_eq!(m.resolution_stats().r, d.resolution_stats().r);
        }

        #[test]
        fn torus_symmetry(p in 1usize..6, q in 1usize..6) {
            let a = torus_link(p, q);
            let b = torus_link(q, p);
            prop_assert_eq!(a.component_count(), b.component_count());
            prop_assert_eq!(a.component_count(), torus_component_count(p, q));
        }
    }
}

//! Elementary moves on link diagrams: Reidemeister moves and Morse moves
//! (0-, 1- and 2-handles).
//!
//! Moves locate themselves by edge labels and crossing indices of the
//! diagram they act on. Edge labels not touched by a move keep their value,
//! which is how components are followed through a movie.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::diagram::{Crossing, EdgeId, LinkDiagram, Side, Sign, Slot};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Move {
    /// Adds a kink to `edge`, with the given crossing sign, on the given side.
    #[serde(rename = "R1+")]
    R1Add {
        edge: EdgeId,
        sign: Sign,
        side: Side,
    },
    /// Removes the kink at a crossing.
    #[serde(rename = "R1-")]
    R1Remove { crossing: usize },
    /// Pushes a finger of `over` across `under` through the region on
    /// `over_side` of `over` and `under_side` of `under`.
    #[serde(rename = "R2+")]
    R2Add {
        over: EdgeId,
        over_side: Side,
        under: EdgeId,
        under_side: Side,
    },
    /// Removes two crossings bounding a bigon.
    #[serde(rename = "R2-")]
    R2Remove { crossings: [usize; 2] },
    /// Slides the strand across the triangle formed by three crossings.
    R3 { crossings: [usize; 3] },
    /// Adds a crossing-free circle, labelled `edge` or one past the largest
    /// label in use.
    H0 {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        edge: Option<EdgeId>,
    },
    /// Oriented band between two edges across the region on `side` of both.
    /// A band from an edge to itself splits off a small circle.
    H1 { edges: [EdgeId; 2], side: Side },
    /// Caps off a crossing-free circle.
    H2 { edge: EdgeId },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveClass {
    Reidemeister,
    ZeroHandle,
    Fusion,
    Fission,
    TwoHandle,
}

impl MoveClass {
    /// Contribution to the Euler characteristic of the traced surface.
    pub fn chi(self) -> i64 {
        match self {
            MoveClass::Reidemeister => 0,
            MoveClass::ZeroHandle | MoveClass::TwoHandle => 1,
            MoveClass::Fusion | MoveClass::Fission => -1,
        }
    }
}

impl Move {
    pub fn kind(&self) -> &'static str {
        match self {
            Move::R1Add { .. } => "R1+",
            Move::R1Remove { .. } => "R1-",
            Move::R2Add { .. } => "R2+",
            Move::R2Remove { .. } => "R2-",
            Move::R3 { .. } => "R3",
            Move::H0 { .. } => "H0",
            Move::H1 { .. } => "H1",
            Move::H2 { .. } => "H2",
        }
    }

    /// The same move with edge labels and crossing indices renamed. An
    /// explicit label for a new circle is dropped.
    pub fn relabel(
        &self,
        edge: impl Fn(EdgeId) -> EdgeId,
        crossing: impl Fn(usize) -> usize,
    ) -> Move {
        match self.clone() {
            Move::R1Add {
                edge: e,
                sign,
                side,
            } => Move::R1Add {
                edge: edge(e),
                sign,
                side,
            },
            Move::R1Remove { crossing: k } => Move::R1Remove {
                crossing: crossing(k),
            },
            Move::R2Add {
                over,
                over_side,
                under,
                under_side,
            } => Move::R2Add {
                over: edge(over),
                over_side,
                under: edge(under),
                under_side,
            },
            Move::R2Remove { crossings } => Move::R2Remove {
                crossings: crossings.map(&crossing),
            },
            Move::R3 { crossings } => Move::R3 {
                crossings: crossings.map(&crossing),
            },
            Move::H0 { .. } => Move::H0 { edge: None },
            Move::H1 { edges, side } => Move::H1 {
                edges: edges.map(&edge),
                side,
            },
            Move::H2 { edge: e } => Move::H2 { edge: edge(e) },
        }
    }
}

/// Result of applying a move.
#[derive(Clone, Debug)]
pub struct Applied {
    pub diagram: LinkDiagram,
    pub class: MoveClass,
    /// For each component before the move, the components after it that
    /// continue it. Components after the move that continue nothing were
    /// created by a 0-handle.
    pub transition: Vec<BTreeSet<usize>>,
    /// A move on the new diagram that undoes this one.
    pub inverse: Move,
}

type MoveResult = Result<Applied, String>;

fn finish(
    old: &LinkDiagram,
    diagram: LinkDiagram,
    class: MoveClass,
    links: impl IntoIterator<Item = (EdgeId, EdgeId)>,
    inverse: Move,
) -> MoveResult {
    if !diagram.is_planar() {
        return Err("the result is not a planar diagram".into());
    }
    let mut transition = vec![BTreeSet::new(); old.component_count()];
    for (a, b) in links {
        if let (Some(i), Some(j)) = (old.component_of(a), diagram.component_of(b)) {
            transition[i].insert(j);
        }
    }
    Ok(Applied {
        diagram,
        class,
        transition,
        inverse,
    })
}

/// Links between equal labels present before and after a move.
fn same_labels(old: &LinkDiagram, new: &LinkDiagram) -> Vec<(EdgeId, EdgeId)> {
    old.edges()
        .filter(|&e| new.has_edge(e))
        .map(|e| (e, e))
        .collect()
}

fn require_edge(d: &LinkDiagram, e: EdgeId) -> Result<(), String> {
    if d.has_edge(e) {
        Ok(())
    } else {
        Err(format!("edge {e} does not exist"))
    }
}

fn require_crossing(d: &LinkDiagram, k: usize) -> Result<&Crossing, String> {
    d.crossing(k).map_err(|e| e.to_string())
}

/// Replaces the label at one crossing slot.
fn set_slot(crossings: &mut [Crossing], slot: Slot, e: EdgeId) {
    crossings[slot.crossing].edges[slot.index] = e;
}

pub fn apply_move(d: &LinkDiagram, m: &Move) -> MoveResult {
    match *m {
        Move::H0 { edge } => {
            let e = edge.unwrap_or(d.max_edge() + 1);
            if d.has_edge(e) {
                return Err(format!("edge {e} already exists"));
            }
            let mut loops = d.loops().to_vec();
            loops.push(e);
            let new = LinkDiagram::new(d.crossings().to_vec(), loops).map_err(|e| e.to_string())?;
            let links = same_labels(d, &new);
            finish(d, new, MoveClass::ZeroHandle, links, Move::H2 { edge: e })
        }
        Move::H2 { edge } => {
            require_edge(d, edge)?;
            if !d.is_loop(edge) {
                return Err(format!("edge {edge} is not a crossing-free circle"));
            }
            let loops = d.loops().iter().copied().filter(|&e| e != edge).collect();
            let new = LinkDiagram::new(d.crossings().to_vec(), loops).map_err(|e| e.to_string())?;
            let links = same_labels(d, &new);
            finish(
                d,
                new,
                MoveClass::TwoHandle,
                links,
                Move::H0 { edge: Some(edge) },
            )
        }
        Move::H1 {
            edges: [e1, e2],
            side,
        } => band_move(d, e1, e2, side),
        Move::R1Add { edge, sign, side } => r1_add(d, edge, sign, side),
        Move::R1Remove { crossing } => r1_remove(d, crossing),
        Move::R2Add {
            over,
            over_side,
            under,
            under_side,
        } => r2_add(d, over, over_side, under, under_side),
        Move::R2Remove {
            crossings: [k1, k2],
        } => r2_remove(d, k1, k2),
        Move::R3 { crossings } => r3(d, crossings),
    }
}

fn band_move(d: &LinkDiagram, e1: EdgeId, e2: EdgeId, side: Side) -> MoveResult {
    require_edge(d, e1)?;
    require_edge(d, e2)?;
    if e1 == e2 {
        let fresh = d.max_edge() + 1;
        let mut loops = d.loops().to_vec();
        loops.push(fresh);
        let new = LinkDiagram::new(d.crossings().to_vec(), loops).map_err(|e| e.to_string())?;
        let mut links = same_labels(d, &new);
        links.push((e1, fresh));
        let inverse = Move::H1 {
            edges: [e1, fresh],
            side,
        };
        return finish(d, new, MoveClass::Fission, links, inverse);
    }
    let (l1, l2) = (d.is_loop(e1), d.is_loop(e2));
    if !l1 && !l2 {
        let pieces = d.pieces();
        let same_piece =
            pieces[d.tail(e1).unwrap().crossing] == pieces[d.tail(e2).unwrap().crossing];
        if same_piece {
            let faces = d.faces();
            if d.face_of(&faces, e1, side) != d.face_of(&faces, e2, side) {
                return Err(format!(
                    "edges {e1} and {e2} do not share a region on their {side:?} side"
                ));
            }
        }
    }
    let fusion = d.component_of(e1) != d.component_of(e2);
    let new = d.band(e1, e2);
    let mut links = same_labels(d, &new);
    let class = if fusion {
        MoveClass::Fusion
    } else {
        MoveClass::Fission
    };
    let inverse = if l1 || l2 {
        let (gone, kept) = if l2 { (e2, e1) } else { (e1, e2) };
        links.push((gone, kept));
        Move::H1 {
            edges: [kept, kept],
            side,
        }
    } else {
        Move::H1 {
            edges: [e1, e2],
            side: side.opposite(),
        }
    };
    finish(d, new, class, links, inverse)
}

fn r1_add(d: &LinkDiagram, e: EdgeId, sign: Sign, side: Side) -> MoveResult {
    require_edge(d, e)?;
    let is_loop = d.is_loop(e);
    let mut next = d.max_edge() + 1;
    let kink = next;
    next += 1;
    let after = if is_loop { e } else { next };
    let edges = match (sign, side) {
        (Sign::Positive, Side::Left) => [e, after, kink, kink],
        (Sign::Negative, Side::Right) => [e, kink, kink, after],
        (Sign::Positive, Side::Right) => [kink, kink, after, e],
        (Sign::Negative, Side::Left) => [kink, e, after, kink],
    };
    let mut crossings = d.crossings().to_vec();
    if !is_loop {
        set_slot(&mut crossings, d.head(e).unwrap(), after);
    }
    crossings.push(Crossing::new(edges, sign));
    let loops = d.loops().iter().copied().filter(|&l| l != e).collect();
    let new = LinkDiagram::new(crossings, loops).map_err(|e| e.to_string())?;
    let links = same_labels(d, &new);
    let inverse = Move::R1Remove {
        crossing: new.crossing_count() - 1,
    };
    finish(d, new, MoveClass::Reidemeister, links, inverse)
}

fn r1_remove(d: &LinkDiagram, k: usize) -> MoveResult {
    let x = *require_crossing(d, k)?;
    // The kink edge joins two cyclically adjacent slots of the same crossing.
    let pair = (0..4).find(|&s| {
        let e = x.edges[s];
        let t = (s + 1) % 4;
        x.edges[t] == e && {
            let (tail, head) = (d.tail(e).unwrap(), d.head(e).unwrap());
            tail.crossing == k && head.crossing == k
        }
    });
    let Some(s) = pair else {
        return Err(format!("crossing {k} is not a kink"));
    };
    let (sign, side) = match (s, x.sign) {
        (2, Sign::Positive) => (Sign::Positive, Side::Left),
        (1, Sign::Negative) => (Sign::Negative, Side::Right),
        (0, Sign::Positive) => (Sign::Positive, Side::Right),
        (3, Sign::Negative) => (Sign::Negative, Side::Left),
        _ => return Err(format!("crossing {k} has an inconsistent kink")),
    };
    let (new, relabel) = d.splice_out(&BTreeSet::from([k]), |_| true);
    let strand = relabel[&x.edges[s]];
    let links: Vec<_> = relabel.into_iter().collect();
    finish(
        d,
        new,
        MoveClass::Reidemeister,
        links,
        Move::R1Add {
            edge: strand,
            sign,
            side,
        },
    )
}

/// Compass positions used to lay out the two new crossings of an R2 move.
const EAST: usize = 0;
const NORTH: usize = 1;
const WEST: usize = 2;
const SOUTH: usize = 3;

/// The finger of `e1` dips below `e2`, creating crossings XL and XR from
/// left to right, with `e1` drawn above `e2` and the shared region between
/// them. `e1` runs left to right exactly when that region is on its right,
/// `e2` exactly when the region is on its left.
fn r2_add(d: &LinkDiagram, e1: EdgeId, side1: Side, e2: EdgeId, side2: Side) -> MoveResult {
    require_edge(d, e1)?;
    require_edge(d, e2)?;
    if e1 == e2 {
        return Err("an R2 move needs two different edges".into());
    }
    let (loop1, loop2) = (d.is_loop(e1), d.is_loop(e2));
    if !loop1 && !loop2 {
        let pieces = d.pieces();
        if pieces[d.tail(e1).unwrap().crossing] == pieces[d.tail(e2).unwrap().crossing] {
            let faces = d.faces();
            if d.face_of(&faces, e1, side1) != d.face_of(&faces, e2, side2) {
                return Err(format!("edges {e1} and {e2} do not share the named region"));
            }
        }
    }
    let right1 = side1 == Side::Right;
    let right2 = side2 == Side::Left;
    let mut next = d.max_edge() + 1;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let (m1, m2) = (fresh(), fresh());
    let h1 = if loop1 { e1 } else { fresh() };
    let h2 = if loop2 { e2 } else { fresh() };
    // Upper-left and upper-right pieces of e1; left and right pieces of e2.
    let (ul, ur) = if right1 { (e1, h1) } else { (h1, e1) };
    let (l, r) = if right2 { (e2, h2) } else { (h2, e2) };
    let mut xl = [0; 4];
    xl[NORTH] = ul;
    xl[SOUTH] = m1;
    xl[WEST] = l;
    xl[EAST] = m2;
    let mut xr = [0; 4];
    xr[NORTH] = ur;
    xr[SOUTH] = m1;
    xr[WEST] = m2;
    xr[EAST] = r;
    let under_in = if right2 { WEST } else { EAST };
    let left_over_in = if right1 { NORTH } else { SOUTH };
    let right_over_in = if right1 { SOUTH } else { NORTH };

    let mut crossings = d.crossings().to_vec();
    if !loop1 {
        set_slot(&mut crossings, d.head(e1).unwrap(), h1);
    }
    if !loop2 {
        set_slot(&mut crossings, d.head(e2).unwrap(), h2);
    }
    let base = crossings.len();
    crossings.push(Crossing::from_rotation(xl, under_in, left_over_in));
    crossings.push(Crossing::from_rotation(xr, under_in, right_over_in));
    let loops = d
        .loops()
        .iter()
        .copied()
        .filter(|&e| e != e1 && e != e2)
        .collect();
    let new = LinkDiagram::new(crossings, loops).map_err(|e| e.to_string())?;
    let links = same_labels(d, &new);
    finish(
        d,
        new,
        MoveClass::Reidemeister,
        links,
        Move::R2Remove {
            crossings: [base, base + 1],
        },
    )
}

/// Darts of each face of the diagram.
fn face_darts(d: &LinkDiagram) -> BTreeMap<usize, Vec<Slot>> {
    let mut out: BTreeMap<usize, Vec<Slot>> = BTreeMap::new();
    for (slot, f) in d.faces() {
        out.entry(f).or_default().push(slot);
    }
    out
}

/// The edge leaving slot `s` of crossing `k`.
fn edge_at(d: &LinkDiagram, slot: Slot) -> EdgeId {
    d.crossings()[slot.crossing].edges[slot.index]
}

fn r2_remove(d: &LinkDiagram, k1: usize, k2: usize) -> MoveResult {
    require_crossing(d, k1)?;
    require_crossing(d, k2)?;
    if k1 == k2 {
        return Err("an R2 move needs two different crossings".into());
    }
    let bigon = face_darts(d).into_values().find(|darts| {
        darts.len() == 2 && {
            let ks: BTreeSet<usize> = darts.iter().map(|s| s.crossing).collect();
            ks == BTreeSet::from([k1, k2])
        }
    });
    let Some(darts) = bigon else {
        return Err(format!("crossings {k1} and {k2} do not bound a bigon"));
    };
    let edges: Vec<EdgeId> = darts.iter().map(|&s| edge_at(d, s)).collect();
    let over_at_both = |e: EdgeId| {
        Crossing::is_over(d.tail(e).unwrap().index) && Crossing::is_over(d.head(e).unwrap().index)
    };
    let under_at_both = |e: EdgeId| {
        !Crossing::is_over(d.tail(e).unwrap().index) && !Crossing::is_over(d.head(e).unwrap().index)
    };
    let (over_mid, under_mid) = if over_at_both(edges[0]) && under_at_both(edges[1]) {
        (edges[0], edges[1])
    } else if over_at_both(edges[1]) && under_at_both(edges[0]) {
        (edges[1], edges[0])
    } else {
        return Err(format!("the bigon at crossings {k1} and {k2} is a clasp"));
    };
    // Sides of the region for the inverse move, read at the first crossing
    // of each strand.
    let over_first = d.tail(over_mid).unwrap();
    let under_first = d.tail(under_mid).unwrap();
    let xo = &d.crossings()[over_first.crossing];
    let over_side = if xo.edges[(over_first.index + 1) % 4] == under_mid {
        Side::Right
    } else {
        Side::Left
    };
    let xu = &d.crossings()[under_first.crossing];
    let under_side = if xu.edges[(under_first.index + 3) % 4] == over_mid {
        Side::Left
    } else {
        Side::Right
    };

    let (new, relabel) = d.splice_out(&BTreeSet::from([k1, k2]), |_| true);
    let inverse = Move::R2Add {
        over: relabel[&over_mid],
        over_side,
        under: relabel[&under_mid],
        under_side,
    };
    let links: Vec<_> = relabel.into_iter().collect();
    finish(d, new, MoveClass::Reidemeister, links, inverse)
}

fn r3(d: &LinkDiagram, ks: [usize; 3]) -> MoveResult {
    for &k in &ks {
        require_crossing(d, k)?;
    }
    let wanted: BTreeSet<usize> = ks.iter().copied().collect();
    if wanted.len() != 3 {
        return Err("an R3 move needs three different crossings".into());
    }
    let triangle = face_darts(d).into_values().find(|darts| {
        darts.len() == 3 && darts.iter().map(|s| s.crossing).collect::<BTreeSet<_>>() == wanted
    });
    let Some(darts) = triangle else {
        return Err(format!("crossings {ks:?} do not bound a triangle"));
    };
    let sides: Vec<EdgeId> = darts.iter().map(|&s| edge_at(d, s)).collect();
    let mut overs: Vec<usize> = sides
        .iter()
        .map(|&e| {
            [d.tail(e).unwrap(), d.head(e).unwrap()]
                .iter()
                .filter(|s| Crossing::is_over(s.index))
                .count()
        })
        .collect();
    overs.sort_unstable();
    if overs != [0, 1, 2] {
        return Err(format!(
            "the triangle at {ks:?} is not a sliding configuration"
        ));
    }
    let mut crossings = d.crossings().to_vec();
    let mut writes = Vec::new();
    for &mid in &sides {
        let (t, h) = (d.tail(mid).unwrap(), d.head(mid).unwrap());
        let before = Slot {
            crossing: t.crossing,
            index: (t.index + 2) % 4,
        };
        let after = Slot {
            crossing: h.crossing,
            index: (h.index + 2) % 4,
        };
        let (incoming, outgoing) = (edge_at(d, before), edge_at(d, after));
        writes.push((before, mid));
        writes.push((t, outgoing));
        writes.push((h, incoming));
        writes.push((after, mid));
    }
    for (slot, e) in writes {
        set_slot(&mut crossings, slot, e);
    }
    let new = LinkDiagram::new(crossings, d.loops().to_vec()).map_err(|e| e.to_string())?;
    let links = same_labels(d, &new);
    finish(
        d,
        new,
        MoveClass::Reidemeister,
        links,
        Move::R3 { crossings: ks },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lee::s2;
    use crate::notation::{parse_braid, parse_pd};

    fn trefoil() -> LinkDiagram {
        parse_pd("X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]").unwrap()
    }

    fn apply(d: &LinkDiagram, m: Move) -> Applied {
        apply_move(d, &m).unwrap_or_else(|e| panic!("{m:?}: {e}"))
    }

    /// Applies a move and its inverse, checking the round trip.
    fn round_trip(d: &LinkDiagram, m: Move) -> Applied {
        let a = apply(d, m);
        let b = apply(&a.diagram, a.inverse.clone());
        assert_eq!(b.diagram.crossing_count(), d.crossing_count());
        assert_eq!(b.diagram.component_count(), d.component_count());
        assert_eq!(b.diagram.writhe(), d.writhe());
        a
    }

    #[test]
    fn handles() {
        let u = LinkDiagram::unknot();
        let a = apply(&u, Move::H0 { edge: None });
        assert_eq!(a.diagram.component_count(), 2);
        assert_eq!(a.class, MoveClass::ZeroHandle);
        assert_eq!(a.transition, vec![BTreeSet::from([0])]);
        let b = apply(&a.diagram, a.inverse.clone());
        assert_eq!(b.diagram, u);
        assert!(apply_move(&trefoil(), &Move::H2 { edge: 1 }).is_err());
        assert!(apply_move(&u, &Move::H2 { edge: 9 }).is_err());
    }

    #[test]
    fn hopf_fusion() {
        let hopf = parse_braid(&[1, 1], 2).unwrap();
        let x = hopf.crossings()[0];
        let a = apply(
            &hopf,
            Move::H1 {
                edges: [x.edges[0], x.edges[1]],
                side: Side::Right,
            },
        );
        assert_eq!(a.class, MoveClass::Fusion);
        assert_eq!(a.diagram.component_count(), 1);
        assert_eq!(s2(&a.diagram), Ok(0));
        assert_eq!(a.transition, vec![BTreeSet::from([0]), BTreeSet::from([0])]);
        let back = apply(&a.diagram, a.inverse.clone());
        assert_eq!(back.class, MoveClass::Fission);
        assert_eq!(back.diagram.component_count(), 2);
    }

    #[test]
    fn band_needs_shared_region() {
        let hopf = parse_braid(&[1, 1], 2).unwrap();
        let x = hopf.crossings()[0];
        assert!(apply_move(
            &hopf,
            &Move::H1 {
                edges: [x.edges[0], x.edges[1]],
                side: Side::Left
            }
        )
        .is_err());
    }

    #[test]
    fn self_band_and_loops() {
        let u = LinkDiagram::unknot();
        let a = apply(
            &u,
            Move::H1 {
                edges: [1, 1],
                side: Side::Left,
            },
        );
        assert_eq!(a.class, MoveClass::Fission);
        assert_eq!(a.diagram.component_count(), 2);
        assert_eq!(a.transition, vec![BTreeSet::from([0, 1])]);
        let b = apply(&a.diagram, a.inverse.clone());
        assert_eq!(b.class, MoveClass::Fusion);
        assert_eq!(b.diagram, u);
    }

    #[test]
    fn kinks() {
        for sign in [Sign::Positive, Sign::Negative] {
            for side in [Side::Left, Side::Right] {
                for d in [trefoil(), LinkDiagram::unknot()] {
                    let a = round_trip(
                        &d,
                        Move::R1Add {
                            edge: 1,
                            sign,
                            side,
                        },
                    );
                    assert_eq!(a.diagram.writhe(), d.writhe() + sign.value());
                    assert_eq!(s2(&a.diagram), s2(&d));
                    let b = apply(&a.diagram, a.inverse.clone());
                    // A one-crossing circle has two monogons, so only the
                    // knotted case determines the kink's side.
                    if d.crossing_count() > 0 {
                        assert_eq!(
                            b.inverse,
                            Move::R1Add {
                                edge: 1,
                                sign,
                                side
                            }
                        );
                    }
                }
            }
        }
        assert!(apply_move(&trefoil(), &Move::R1Remove { crossing: 0 }).is_err());
    }

    #[test]
    fn finger_moves() {
        let t = trefoil();
        let faces = t.faces();
        let mut count = 0;
        for e1 in t.edges() {
            for e2 in t.edges() {
                for s1 in [Side::Left, Side::Right] {
                    for s2_ in [Side::Left, Side::Right] {
                        if e1 == e2 || t.face_of(&faces, e1, s1) != t.face_of(&faces, e2, s2_) {
                            continue;
                        }
                        let m = Move::R2Add {
                            over: e1,
                            over_side: s1,
                            under: e2,
                            under_side: s2_,
                        };
                        let a = round_trip(&t, m.clone());
                        assert_eq!(a.diagram.writhe(), 3);
                        assert_eq!(a.diagram.crossing_count(), 5);
                        // Undoing the removal reads back the same edges and sides.
                        let b = apply(&a.diagram, a.inverse.clone());
                        assert_eq!(b.inverse, m);
                        count += 1;
                    }
                }
            }
        }
        assert!(count > 10);
        let a = apply(
            &LinkDiagram::unlink(2),
            Move::R2Add {
                over: 1,
                over_side: Side::Left,
                under: 2,
                under_side: Side::Right,
            },
        );
        assert_eq!(a.diagram.component_count(), 2);
        assert_eq!(s2(&a.diagram), Ok(1));
    }

    #[test]
    fn clasp_is_not_removable() {
        let hopf = parse_braid(&[1, 1], 2).unwrap();
        assert!(apply_move(&hopf, &Move::R2Remove { crossings: [0, 1] }).is_err());
        let cancel = parse_braid(&[1, -1], 2).unwrap();
        let a = apply(&cancel, Move::R2Remove { crossings: [0, 1] });
        assert_eq!(a.diagram.crossing_count(), 0);
        assert_eq!(a.diagram.component_count(), 2);
    }

    #[test]
    fn triangle_slide() {
        // σ1 σ2 σ1 has a sliding triangle; the slide gives σ2 σ1 σ2.
        for word in [[1, 2, 1], [-1, -2, -1], [2, 1, 2]] {
            let d = parse_braid(&word, 3).unwrap();
            let a = apply(
                &d,
                Move::R3 {
                    crossings: [0, 1, 2],
                },
            );
            assert_eq!(a.diagram.writhe(), d.writhe());
            assert_eq!(s2(&a.diagram), s2(&d));
            let b = apply(&a.diagram, a.inverse.clone());
            assert_eq!(b.diagram, d);
        }
        assert!(apply_move(
            &trefoil(),
            &Move::R3 {
                crossings: [0, 1, 2]
            }
        )
        .is_err());
    }

    #[test]
    fn json_kinds() {
        let m: Move =
            serde_json::from_str(r#"{"kind":"R1+","edge":3,"sign":"negative","side":"left"}"#)
                .unwrap();
        assert_eq!(
            m,
            Move::R1Add {
                edge: 3,
                sign: Sign::Negative,
                side: Side::Left
            }
        );
        let m: Move =
            serde_json::from_str(r#"{"kind":"H1","edges":[1,2],"side":"right","comment":"x"}"#)
                .unwrap();
        assert_eq!(m.kind(), "H1");
        assert_eq!(
            serde_json::to_value(Move::H0 { edge: None }).unwrap(),
            serde_json::json!({"kind": "H0"})
        );
        let m: Move = serde_json::from_str(r#"{"kind":"H0","edge":9}"#).unwrap();
        assert_eq!(m, Move::H0 { edge: Some(9) });
    }
}

//! Named diagrams used by the examples, the verification suite and the tests.

use crate::cobordism::{Move, Movie};
use crate::diagram::{LinkDiagram, Side, Sign};
use crate::notation::{parse_braid, parse_pd, torus_link};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Crossing-free unlinks.
    Unlink,
    /// Closures of positive braids, where closed forms apply.
    PositiveBraid,
    /// Everything else.
    Mixed,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub family: Family,
    pub diagram: LinkDiagram,
}

fn entry(name: impl Into<String>, family: Family, diagram: LinkDiagram) -> CorpusEntry {
    CorpusEntry {
        name: name.into(),
        family,
        diagram,
    }
}

fn braid(word: &[i32], strands: usize) -> LinkDiagram {
    parse_braid(word, strands).expect("corpus braids are well formed")
}

pub fn right_trefoil() -> LinkDiagram {
    parse_pd("X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]").expect("valid PD")
}

pub fn left_trefoil() -> LinkDiagram {
    right_trefoil().mirror()
}

pub fn figure_eight() -> LinkDiagram {
    parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").expect("valid PD")
}

pub fn hopf_positive() -> LinkDiagram {
    braid(&[1, 1], 2)
}

pub fn hopf_negative() -> LinkDiagram {
    braid(&[-1, -1], 2)
}

/// The full corpus, smallest diagrams first within each family.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = vec![entry("unknot", Family::Unlink, LinkDiagram::unknot())];
    for m in 2..=5 {
        out.push(entry(
            format!("U{m}"),
            Family::Unlink,
            LinkDiagram::unlink(m),
        ));
    }
    for k in 1..=6 {
        out.push(entry(
            format!("sigma1^{k}"),
            Family::PositiveBraid,
            braid(&vec![1; k], 2),
        ));
    }
    for (p, q) in [(2, 3), (2, 4), (2, 5), (3, 3), (3, 4)] {
        out.push(entry(
            format!("T({p},{q})"),
            Family::PositiveBraid,
            torus_link(p, q),
        ));
    }
    out.push(entry(
        "right trefoil (PD)",
        Family::PositiveBraid,
        right_trefoil(),
    ));
    out.extend([
        entry("left trefoil", Family::Mixed, left_trefoil()),
        entry("figure-eight (PD)", Family::Mixed, figure_eight()),
        entry(
            "figure-eight (braid)",
            Family::Mixed,
            braid(&[1, -2, 1, -2], 3),
        ),
        entry("Hopf-", Family::Mixed, hopf_negative()),
        entry("sigma1 sigma1^-1", Family::Mixed, braid(&[1, -1], 2)),
        entry("sigma1^2 sigma1^-1", Family::Mixed, braid(&[1, 1, -1], 2)),
        entry(
            "T(2,3) # mirror",
            Family::Mixed,
            braid(&[1, 1, 1, -2, -2, -2], 3),
        ),
        entry("5_2 braid", Family::Mixed, braid(&[1, 1, 1, 2, -1, 2], 3)),
        entry("mixed 3-braid", Family::Mixed, braid(&[1, 2, -1, 2, 2], 3)),
        entry(
            "T(2,4) with one change",
            Family::Mixed,
            braid(&[1, 1, 1, -1], 2),
        ),
        entry(
            "trefoil + unknot",
            Family::Mixed,
            right_trefoil().disjoint_union(&LinkDiagram::unknot()),
        ),
    ]);
    out
}

/// Genus-one cobordism from the braid trefoil σ1³ to the unknot: two
/// oriented smoothings (a fission then a fusion), then three kink removals.
pub fn trefoil_genus_one_movie() -> Movie {
    Movie::new(
        braid(&[1, 1, 1], 2),
        vec![
            Move::H1 {
                edges: [1, 3],
                side: Side::Left,
            },
            Move::H1 {
                edges: [2, 4],
                side: Side::Right,
            },
            Move::R1Remove { crossing: 0 },
            Move::R1Remove { crossing: 0 },
            Move::R1Remove { crossing: 0 },
        ],
    )
}

/// Annulus from σ1³ to a four-crossing diagram of the same knot: a birth,
/// a band joining the new circle to the knot, and a kink.
pub fn trefoil_annulus_movie() -> Movie {
    Movie::new(
        braid(&[1, 1, 1], 2),
        vec![
            Move::H0 { edge: None },
            Move::H1 {
                edges: [7, 1],
                side: Side::Left,
            },
            Move::R1Add {
                edge: 2,
                sign: Sign::Negative,
                side: Side::Right,
            },
        ],
    )
}

/// Entries by name, ignoring case.
pub fn lookup(name: &str) -> Option<CorpusEntry> {
    corpus()
        .into_iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_are_honest() {
        for e in corpus() {
            assert!(e.diagram.is_planar(), "{}", e.name);
            match e.family {
                Family::Unlink => assert_eq!(e.diagram.crossing_count(), 0),
                Family::PositiveBraid => {
                    assert!(e.diagram.is_positive() && e.diagram.crossing_count() > 0)
                }
                Family::Mixed => {}
            }
        }
        assert!(lookup("T(3,4)").is_some());
        assert_eq!(lookup("hopf-").unwrap().diagram.writhe(), -2);
        assert_eq!(
            corpus()
                .iter()
                .filter(|e| e.family == Family::PositiveBraid)
                .count(),
            12
        );
    }

    #[test]
    fn figure_eight_presentations_agree() {
        let pd = figure_eight();
        let br = lookup("figure-eight (braid)").unwrap().diagram;
        assert_eq!(pd.component_count(), 1);
        assert_eq!(br.component_count(), 1);
        assert_eq!((pd.writhe(), br.writhe()), (0, 0));
    }
}

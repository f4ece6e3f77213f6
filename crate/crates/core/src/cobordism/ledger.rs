//! Replay of movies with Euler characteristic, generator fate and the
//! inequalities they certify.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::moves::{apply_move, Move, MoveClass};
use super::CobordismError;
use crate::diagram::{EdgeId, LinkDiagram, UnionFind};

/// A start diagram and a sequence of moves.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Movie {
    pub start: LinkDiagram,
    pub moves: Vec<Move>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub comments: Vec<Option<String>>,
}

impl Movie {
    pub fn new(start: LinkDiagram, moves: Vec<Move>) -> Self {
        Movie {
            start,
            moves,
            comments: Vec::new(),
        }
    }

    /// Parses JSON lines: a header `{"start": <diagram>}` followed by one move
    /// per line, each with an optional `comment`. Blank lines are skipped.
    pub fn from_jsonl(text: &str) -> Result<Self, CobordismError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| CobordismError::Format {
            line: 1,
            reason: "missing header line".into(),
        })?;
        let header: Value = serde_json::from_str(header).map_err(|e| CobordismError::Format {
            line: 1,
            reason: e.to_string(),
        })?;
        let start = header
            .get("start")
            .ok_or_else(|| CobordismError::Format {
                line: 1,
                reason: "header needs a \"start\" diagram".into(),
            })
            .and_then(|v| {
                serde_json::from_value::<LinkDiagram>(v.clone()).map_err(|e| {
                    CobordismError::Format {
                        line: 1,
                        reason: e.to_string(),
                    }
                })
            })?;
        let mut moves = Vec::new();
        let mut comments = Vec::new();
        for (i, line) in lines {
            let v: Value = serde_json::from_str(line).map_err(|e| CobordismError::Format {
                line: i + 1,
                reason: e.to_string(),
            })?;
            comments.push(v.get("comment").and_then(Value::as_str).map(str::to_owned));
            moves.push(
                serde_json::from_value(v).map_err(|e| CobordismError::Format {
                    line: i + 1,
                    reason: e.to_string(),
                })?,
            );
        }
        if comments.iter().all(Option::is_none) {
            comments.clear();
        }
        Ok(Movie {
            start,
            moves,
            comments,
        })
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = serde_json::json!({ "start": self.start }).to_string();
        for (i, m) in self.moves.iter().enumerate() {
            let mut v = serde_json::to_value(m).expect("moves serialize");
            if let Some(Some(c)) = self.comments.get(i) {
                v["comment"] = Value::String(c.clone());
            }
            out.push('\n');
            out.push_str(&v.to_string());
        }
        out.push('\n');
        out
    }

    /// The movie played backwards, starting from this movie's end. Inverse
    /// moves can rename edges and crossings, so each one is carried to the
    /// labels of the diagram actually reached.
    pub fn reversed(&self) -> Result<Movie, CobordismError> {
        let mut frames = vec![self.start.clone()];
        let mut inverses = Vec::with_capacity(self.moves.len());
        for (index, m) in self.moves.iter().enumerate() {
            let a = apply_move(frames.last().unwrap(), m)
                .map_err(|reason| CobordismError::InapplicableMove { index, reason })?;
            inverses.push(a.inverse);
            frames.push(a.diagram);
        }
        let end = frames.pop().unwrap();
        let mut current = end.clone();
        let mut edge_map: BTreeMap<EdgeId, EdgeId> = end.edges().map(|e| (e, e)).collect();
        let mut cross_map: Vec<usize> = (0..end.crossing_count()).collect();
        let mut moves = Vec::with_capacity(inverses.len());
        for (inv, target) in inverses.into_iter().rev().zip(frames.into_iter().rev()) {
            let index = moves.len();
            let m = inv.relabel(
                |e| edge_map.get(&e).copied().unwrap_or(e),
                |k| cross_map.get(k).copied().unwrap_or(k),
            );
            let a = apply_move(&current, &m)
                .map_err(|reason| CobordismError::InapplicableMove { index, reason })?;
            let (em, cm) = target
                .isomorphism(&a.diagram)
                .ok_or(CobordismError::Mismatch)?;
            edge_map = em;
            cross_map = cm;
            moves.push(m);
            current = a.diagram;
        }
        Ok(Movie::new(end, moves))
    }

    /// This movie followed by `next`, whose start must be this movie's end.
    pub fn then(&self, next: &Movie) -> Result<Movie, CobordismError> {
        let end = validate_movie(self)?.end;
        if end != next.start {
            return Err(CobordismError::Mismatch);
        }
        let mut moves = self.moves.clone();
        moves.extend(next.moves.iter().cloned());
        Ok(Movie::new(self.start.clone(), moves))
    }
}

/// What a movie does to the class of a constant canonical generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fate {
    /// Sent to a nonzero multiple of the constant generator of the end.
    Survives,
    /// Sent to zero.
    Annihilated,
    /// Sent to a combination of several generators of the end.
    Mixed,
    /// Capping off circles summed generators that could cancel.
    Indeterminate,
}

/// Per-move record of a replay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub index: usize,
    pub kind: String,
    pub class: MoveClass,
    pub components: usize,
    pub chi: i64,
}

/// Inequality between sₙ of the two ends of a movie.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub rule: String,
    pub chi: i64,
    pub statement: String,
}

impl Certificate {
    /// Checks the inequality for the given values of sₙ at the two ends.
    pub fn holds(&self, n: u32, s_start: i64, s_end: i64) -> bool {
        s_start - (n as i64 - 1) * self.chi >= s_end
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ledger {
    pub n: u32,
    pub chi: i64,
    pub steps: Vec<StepRecord>,
    pub end: LinkDiagram,
    /// Fate of the constant labelling by each root index.
    pub fate: BTreeMap<u32, Fate>,
    /// Connected pieces of the traced surface.
    pub surface_components: usize,
    /// Pieces that meet neither end of the movie.
    pub closed_components: usize,
    /// Pieces that do not meet the start of the movie.
    pub detached_components: usize,
    pub certificate: Option<Certificate>,
}

impl Ledger {
    pub fn filtered_degree(&self, n: u32) -> i64 {
        (1 - n as i64) * self.chi
    }
}

/// Sets of labellings (a root index per component) tracked through a movie.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelTrace {
    pub labellings: BTreeSet<Vec<u32>>,
    pub collapsed: bool,
}

impl LabelTrace {
    pub fn new(labellings: impl IntoIterator<Item = Vec<u32>>) -> Self {
        LabelTrace {
            labellings: labellings.into_iter().collect(),
            collapsed: false,
        }
    }

    /// Pushes the labellings through one move.
    pub fn step(&mut self, transition: &[BTreeSet<usize>], new_components: usize, n: u32) {
        let mut preimage = vec![Vec::new(); new_components];
        for (i, targets) in transition.iter().enumerate() {
            for &j in targets {
                preimage[j].push(i);
            }
        }
        let mut out = BTreeSet::new();
        for lab in &self.labellings {
            let mut partial: Vec<Vec<u32>> = vec![Vec::with_capacity(new_components)];
            let mut alive = true;
            for pre in &preimage {
                let labels: BTreeSet<u32> = pre.iter().map(|&i| lab[i]).collect();
                match labels.len() {
                    0 => {
                        partial = partial
                            .into_iter()
                            .flat_map(|p| {
                                (0..n).map(move |r| {
                                    let mut q = p.clone();
                                    q.push(r);
                                    q
                                })
                            })
                            .collect();
                    }
                    1 => {
                        let r = *labels.iter().next().unwrap();
                        for p in partial.iter_mut() {
                            p.push(r);
                        }
                    }
                    _ => {
                        alive = false;
                        break;
                    }
                }
            }
            if alive {
                for p in partial {
                    if !out.insert(p) {
                        self.collapsed = true;
                    }
                }
            }
        }
        self.labellings = out;
    }

    fn fate(&self, root: u32, components: usize) -> Fate {
        if self.collapsed {
            Fate::Indeterminate
        } else if self.labellings.is_empty() {
            Fate::Annihilated
        } else if self.labellings.len() == 1 && self.labellings.contains(&vec![root; components]) {
            Fate::Survives
        } else {
            Fate::Mixed
        }
    }
}

/// Replays a movie, checking each move.
pub fn validate_movie(movie: &Movie) -> Result<Ledger, CobordismError> {
    validate_movie_n(movie, 2)
}

pub fn validate_movie_n(movie: &Movie, n: u32) -> Result<Ledger, CobordismError> {
    if n < 2 {
        return Err(CobordismError::InvalidN(n));
    }
    let start_components = movie.start.component_count();
    let mut d = movie.start.clone();
    let mut chi = 0;
    let mut steps = Vec::with_capacity(movie.moves.len());
    let mut traces: Vec<LabelTrace> = (0..n)
        .map(|r| LabelTrace::new([vec![r; start_components]]))
        .collect();

    // Surface pieces: one node per component per time slice.
    let mut uf_size = start_components;
    let mut unions: Vec<(usize, usize)> = Vec::new();
    let mut current: Vec<usize> = (0..start_components).collect();

    for (index, m) in movie.moves.iter().enumerate() {
        let a = apply_move(&d, m)
            .map_err(|reason| CobordismError::InapplicableMove { index, reason })?;
        let new_components = a.diagram.component_count();
        let expected = d.component_count() as i64
            + match a.class {
                MoveClass::Reidemeister => 0,
                MoveClass::ZeroHandle | MoveClass::Fission => 1,
                MoveClass::TwoHandle | MoveClass::Fusion => -1,
            };
        debug_assert_eq!(
            new_components as i64, expected,
            "component count after {m:?}"
        );
        for t in traces.iter_mut() {
            t.step(&a.transition, new_components, n);
        }
        let next: Vec<usize> = (uf_size..uf_size + new_components).collect();
        uf_size += new_components;
        for (i, targets) in a.transition.iter().enumerate() {
            for &j in targets {
                unions.push((current[i], next[j]));
            }
        }
        current = next;
        chi += a.class.chi();
        steps.push(StepRecord {
            index,
            kind: m.kind().to_string(),
            class: a.class,
            components: new_components,
            chi,
        });
        d = a.diagram;
    }

    let mut uf = UnionFind::new(uf_size);
    for (a, b) in unions {
        uf.union(a, b);
    }
    let mut pieces: BTreeSet<usize> = BTreeSet::new();
    for node in 0..uf_size {
        pieces.insert(uf.find(node));
    }
    let at_start: BTreeSet<usize> = (0..start_components).map(|i| uf.find(i)).collect();
    let mut touching = at_start.clone();
    touching.extend(current.iter().map(|&i| uf.find(i)));
    let end_components = d.component_count();
    let fate: BTreeMap<u32, Fate> = traces
        .iter()
        .enumerate()
        .map(|(r, t)| (r as u32, t.fate(r as u32, end_components)))
        .collect();
    let certificate = fate
        .values()
        .all(|&f| f == Fate::Survives)
        .then(|| Certificate {
            rule: "cobordism maps have filtered degree (1-n)chi and preserve canonical generators"
                .into(),
            chi,
            statement: format!("s_n(start) - (n-1)*({chi}) >= s_n(end)"),
        });
    Ok(Ledger {
        n,
        chi,
        steps,
        end: d,
        fate,
        surface_components: pieces.len(),
        closed_components: pieces.len() - touching.len(),
        detached_components: pieces.len() - at_start.len(),
        certificate,
    })
}

/// Both slice-genus inequalities for a movie that ends in a crossing-free
/// unlink. Capping that unlink with disks gives a surface F bounded by the
/// start link, with χ(F) = χ(movie) + (number of end circles).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceCertificate {
    pub chi_movie: i64,
    pub end_circles: usize,
    pub chi_surface: i64,
    /// Connected pieces of F.
    pub pieces: usize,
    pub lower: String,
    pub upper: String,
}

impl SliceCertificate {
    /// `(n−1)(χ(F) − 1) ≤ sₙ`.
    pub fn lower_bound(&self, n: u32) -> i64 {
        (n as i64 - 1) * (self.chi_surface - 1)
    }

    /// `sₙ ≤ (n−1)(2k − 1 − χ(F))`.
    pub fn upper_bound(&self, n: u32) -> i64 {
        (n as i64 - 1) * (2 * self.pieces as i64 - 1 - self.chi_surface)
    }
}

pub fn slice_certificate(movie: &Movie) -> Result<SliceCertificate, CobordismError> {
    let ledger = validate_movie(movie)?;
    if ledger.end.crossing_count() != 0 {
        return Err(CobordismError::NotEndingInUnlink);
    }
    // Capping the end circles closes off any piece that misses the start.
    if ledger.detached_components > 0 {
        return Err(CobordismError::ClosedComponent);
    }
    let m = ledger.end.component_count();
    let chi_surface = ledger.chi + m as i64;
    let k = ledger.surface_components;
    Ok(SliceCertificate {
        chi_movie: ledger.chi,
        end_circles: m,
        chi_surface,
        pieces: k,
        lower: format!("(n-1)*({}) <= s_n(start)", chi_surface - 1),
        upper: format!("s_n(start) <= (n-1)*({})", 2 * k as i64 - 1 - chi_surface),
    })
}

/// Phase of the ordered presentation: 0-handles, Reidemeister moves,
/// fusions, g fissions followed by g fusions, Reidemeister moves and
/// fissions, and finally Reidemeister moves and 2-handles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Phase {
    Births,
    EarlyMoves,
    Fusions,
    Fissions(usize),
    Refusions(usize, usize),
    LateMoves,
    Deaths,
}

fn closure(states: BTreeSet<Phase>) -> BTreeSet<Phase> {
    let mut out = BTreeSet::new();
    for s in states {
        let reach: &[Phase] = match s {
            Phase::Births => &[
                Phase::Births,
                Phase::EarlyMoves,
                Phase::Fusions,
                Phase::LateMoves,
                Phase::Deaths,
            ],
            Phase::EarlyMoves => &[
                Phase::EarlyMoves,
                Phase::Fusions,
                Phase::LateMoves,
                Phase::Deaths,
            ],
            Phase::Fusions => &[Phase::Fusions, Phase::LateMoves, Phase::Deaths],
            Phase::LateMoves => &[Phase::LateMoves, Phase::Deaths],
            other => {
                out.insert(other);
                continue;
            }
        };
        out.extend(reach.iter().copied());
    }
    out
}

/// Checks the move order against the phase grammar. Returns the index of
/// the first move that cannot be placed, or the movie length when the movie
/// stops inside an unfinished fission block.
pub fn check_handle_order(movie: &Movie) -> Result<(), usize> {
    let mut d = movie.start.clone();
    let mut classes = Vec::with_capacity(movie.moves.len());
    for (i, m) in movie.moves.iter().enumerate() {
        match apply_move(&d, m) {
            Ok(a) => {
                classes.push(a.class);
                d = a.diagram;
            }
            Err(_) => return Err(i),
        }
    }
    check_class_order(&classes)
}

pub fn check_class_order(classes: &[MoveClass]) -> Result<(), usize> {
    let mut states = closure(BTreeSet::from([Phase::Births]));
    for (i, &c) in classes.iter().enumerate() {
        let mut next = BTreeSet::new();
        for &s in &states {
            match (s, c) {
                (Phase::Births, MoveClass::ZeroHandle) => {
                    next.insert(Phase::Births);
                }
                (Phase::EarlyMoves, MoveClass::Reidemeister) => {
                    next.insert(Phase::EarlyMoves);
                }
                (Phase::Fusions, MoveClass::Fusion) => {
                    next.insert(Phase::Fusions);
                }
                (Phase::Fusions, MoveClass::Fission) => {
                    next.insert(Phase::Fissions(1));
                }
                (Phase::Fissions(g), MoveClass::Fission) => {
                    next.insert(Phase::Fissions(g + 1));
                }
                (Phase::Fissions(g), MoveClass::Fusion)
                | (Phase::Refusions(g, _), MoveClass::Fusion) => {
                    let f = if let Phase::Refusions(_, f) = s {
                        f + 1
                    } else {
                        1
                    };
                    next.insert(if f == g {
                        Phase::LateMoves
                    } else {
                        Phase::Refusions(g, f)
                    });
                }
                (Phase::LateMoves, MoveClass::Reidemeister | MoveClass::Fission) => {
                    next.insert(Phase::LateMoves);
                }
                (Phase::Deaths, MoveClass::Reidemeister | MoveClass::TwoHandle) => {
                    next.insert(Phase::Deaths);
                }
                _ => {}
            }
        }
        if next.is_empty() {
            return Err(i);
        }
        states = closure(next);
    }
    let accepting = states
        .iter()
        .any(|s| !matches!(s, Phase::Fissions(_) | Phase::Refusions(..)));
    if accepting {
        Ok(())
    } else {
        Err(classes.len())
    }
}

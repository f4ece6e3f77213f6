//! Property checks over the corpus, with a fixed default seed.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::{sn_eval, torus_split_schedule, torus_splitting, LinkExpr};
use crate::cobordism::{apply_move, validate_movie, Move, Movie};
use crate::corpus::{corpus, CorpusEntry, Family};
use crate::diagram::{LinkDiagram, Side, Sign};
use crate::lee::{
    canonical_cycle, h_cycle, low_generator, s2, s2_of, FilteredComplex, Label, SparseVec,
};
use crate::report::{invariant_report_for, InvariantReport};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Property names accepted by [`run`].
pub const PROPERTIES: &[&str] = &[
    "d-squared",
    "filtration",
    "homology-dimension",
    "label-independence",
    "max-identity",
    "congruence",
    "low-generator",
    "positive-formula",
    "unlink",
    "mirror-window",
    "crossing-change",
    "split-union",
    "connected-sum",
    "reidemeister-invariance",
    "torus-splitting",
    "interval-soundness",
    "movie-replay",
    "json-roundtrip",
];

/// Deliberate corruption used to check that the suite catches failures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Doubles one entry of each differential before composing.
    Differential,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub max_crossings: usize,
    pub property: Option<String>,
    pub fault: Option<Fault>,
    /// Random cases per randomized property.
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: DEFAULT_SEED,
            max_crossings: 8,
            property: None,
            fault: None,
            samples: 20,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown property {0:?}")]
    UnknownProperty(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub results: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(PropertyResult::passed)
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let status = if r.passed() { "ok" } else { "FAIL" };
            out.push_str(&format!(
                "{status:<4} {:<24} {} checked, {} failed\n",
                r.name,
                r.checked,
                r.failures.len()
            ));
            for f in r.failures.iter().take(5) {
                out.push_str(&format!("       {f}\n"));
            }
        }
        out
    }
}

struct Ctx {
    opts: VerifyOptions,
    rng: ChaCha8Rng,
    entries: Vec<CorpusEntry>,
}

struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

pub fn run(opts: VerifyOptions) -> Result<VerifyReport, VerifyError> {
    let names: Vec<&str> = match &opts.property {
        Some(p) => {
            let p = PROPERTIES
                .iter()
                .find(|q| q.eq_ignore_ascii_case(p))
                .ok_or_else(|| VerifyError::UnknownProperty(p.clone()))?;
            vec![p]
        }
        None => PROPERTIES.to_vec(),
    };
    let entries = corpus()
        .into_iter()
        .filter(|e| e.diagram.crossing_count() <= opts.max_crossings)
        .collect();
    let seed = opts.seed;
    let mut ctx = Ctx {
        rng: ChaCha8Rng::seed_from_u64(seed),
        opts,
        entries,
    };
    let results = names
        .into_iter()
        .map(|name| {
            let t = run_property(&mut ctx, name);
            PropertyResult {
                name: name.to_string(),
                checked: t.checked,
                failures: t.failures,
            }
        })
        .collect();
    Ok(VerifyReport { seed, results })
}

fn run_property(ctx: &mut Ctx, name: &str) -> Tally {
    let mut t = Tally::new();
    match name {
        "d-squared" => {
            for e in &ctx.entries {
                let c = complex(&e.diagram);
                t.check(d_squared_vanishes(&c, ctx.opts.fault), || {
                    format!("{}: d∘d ≠ 0", e.name)
                });
            }
        }
        "filtration" => {
            for e in &ctx.entries {
                t.check(complex(&e.diagram).check_filtration(), || {
                    format!("{}: a term drops q by other than 0 or 4", e.name)
                });
            }
        }
        "homology-dimension" => {
            for e in &ctx.entries {
                let dim = complex(&e.diagram).homology_dimension();
                let want = 1usize << e.diagram.component_count();
                t.check(dim == want, || {
                    format!("{}: dimension {dim}, expected {want}", e.name)
                });
            }
        }
        "label-independence" => {
            for e in &ctx.entries {
                let c = complex(&e.diagram);
                let a = c.qgr(&canonical_cycle(&c, Label::Plus).chain);
                let b = c.qgr(&canonical_cycle(&c, Label::Minus).chain);
                t.check(a.is_ok() && a == b, || {
                    format!("{}: {a:?} vs {b:?}", e.name)
                });
            }
        }
        "max-identity" => {
            for e in &ctx.entries {
                let c = complex(&e.diagram);
                let g = c.qgr(&canonical_cycle(&c, Label::Plus).chain);
                let h0 = c.qgr(&h_cycle(&c, 0).chain);
                let h1 = c.qgr(&h_cycle(&c, 1).chain);
                let ok = matches!((&g, &h0, &h1), (Ok(g), Ok(a), Ok(b)) if *g == (*a).max(*b));
                t.check(ok, || {
                    format!("{}: qgr(g)={g:?}, qgr(h0)={h0:?}, qgr(h1)={h1:?}", e.name)
                });
            }
        }
        "congruence" => {
            for e in &ctx.entries {
                let c = complex(&e.diagram);
                let st = e.diagram.resolution_stats();
                for p in 0..2u8 {
                    let q = c.qgr(&h_cycle(&c, p).chain);
                    let want = (2 * p as i32 - (st.w + st.r as i32)).rem_euclid(4);
                    t.check(matches!(q, Ok(q) if q.rem_euclid(4) == want), || {
                        format!("{}: qgr(h{p})={q:?}, expected ≡ {want} mod 4", e.name)
                    });
                }
            }
        }
        "low-generator" => {
            for e in &ctx.entries {
                let c = complex(&e.diagram);
                let ok = match (low_generator(&c), s2_of(&c)) {
                    (Ok((_, q)), Ok(s)) => q <= s - 1,
                    _ => false,
                };
                t.check(ok, || format!("{}: no h-class at or below s2 - 1", e.name));
            }
        }
        "positive-formula" => {
            for e in ctx
                .entries
                .iter()
                .filter(|e| e.family == Family::PositiveBraid)
            {
                let st = e.diagram.resolution_stats();
                let want = -(st.c as i32 - st.r as i32 + 1);
                let got = s2(&e.diagram);
                t.check(got == Ok(want), || {
                    format!("{}: s2={got:?}, closed form {want}", e.name)
                });
            }
        }
        "unlink" => {
            for m in 1..=5usize {
                let got = s2(&LinkDiagram::unlink(m));
                t.check(got == Ok(m as i32 - 1), || format!("U{m}: s2={got:?}"));
                let expr = LinkExpr::DisjointUnion {
                    children: vec![LinkExpr::Unknot; m],
                };
                for n in 2..=6u32 {
                    let v = sn_eval(&expr, n).ok().and_then(|v| v.value());
                    let want = (n as i64 - 1) * (m as i64 - 1);
                    t.check(v == Some(want), || {
                        format!("U{m}, n={n}: {v:?}, expected {want}")
                    });
                }
            }
        }
        "mirror-window" => {
            for e in &ctx.entries {
                let l = e.diagram.component_count() as i32;
                let (a, b) = (s2(&e.diagram), s2(&e.diagram.mirror()));
                let ok = matches!((&a, &b), (Ok(a), Ok(b)) if (0..=2 * l - 2).contains(&(a + b)));
                t.check(ok, || format!("{}: s2={a:?}, mirror s2={b:?}", e.name));
            }
        }
        "crossing-change" => {
            let mut tight = 0;
            for e in &ctx.entries {
                let Ok(s) = s2(&e.diagram) else { continue };
                for k in 0..e.diagram.crossing_count() {
                    let changed = e.diagram.crossing_change(k).expect("index in range");
                    let r = s2(&changed);
                    if matches!(r, Ok(x) if (x - s).abs() == 2) {
                        tight += 1;
                    }
                    t.check(matches!(r, Ok(x) if (x - s).abs() <= 2), || {
                        format!("{} at crossing {k}: {s} -> {r:?}", e.name)
                    });
                }
            }
            t.check(tight > 0, || {
                "no crossing change moved s2 by exactly 2".into()
            });
        }
        "split-union" => {
            let small: Vec<_> = ctx
                .entries
                .iter()
                .filter(|e| e.diagram.crossing_count() <= 4)
                .collect();
            for a in &small {
                for b in small.iter().take(6) {
                    let u = a.diagram.disjoint_union(&b.diagram);
                    let (x, y, z) = (s2(&a.diagram), s2(&b.diagram), s2(&u));
                    let ok = matches!((&x, &y, &z), (Ok(x), Ok(y), Ok(z)) if *z == x + y + 1);
                    t.check(ok, || {
                        format!("{} ⊔ {}: {x:?} + {y:?} + 1 vs {z:?}", a.name, b.name)
                    });
                }
            }
        }
        "connected-sum" => {
            let knots: Vec<_> = ctx
                .entries
                .iter()
                .filter(|e| e.diagram.component_count() == 1 && e.diagram.crossing_count() <= 4)
                .collect();
            for a in &knots {
                for b in &knots {
                    let Ok((sum, _)) = a.diagram.connect_sum(0, &b.diagram, 0) else {
                        t.check(false, || {
                            format!("{} # {}: cannot form the sum", a.name, b.name)
                        });
                        continue;
                    };
                    let (x, y, z) = (s2(&a.diagram), s2(&b.diagram), s2(&sum));
                    let ok = matches!((&x, &y, &z), (Ok(x), Ok(y), Ok(z)) if *z == x + y);
                    t.check(ok, || {
                        format!("{} # {}: {x:?} + {y:?} vs {z:?}", a.name, b.name)
                    });
                }
            }
        }
        "reidemeister-invariance" => {
            let limit = ctx.opts.max_crossings.min(6);
            let pool: Vec<CorpusEntry> = ctx
                .entries
                .iter()
                .filter(|e| e.diagram.crossing_count() <= limit)
                .cloned()
                .collect();
            for _ in 0..ctx.opts.samples {
                let e = pool.choose(&mut ctx.rng).expect("corpus is not empty");
                let (d, moves) = random_isotopy(&mut ctx.rng, &e.diagram, 6, limit + 4);
                let (a, b) = (s2(&e.diagram), s2(&d));
                t.check(a.is_ok() && a == b, || {
                    format!("{} after {moves:?}: {a:?} vs {b:?}", e.name)
                });
            }
        }
        "torus-splitting" => {
            for (l, p, q) in [(2, 1, 2), (3, 1, 1), (2, 1, 3), (2, 2, 3)] {
                let schedule = torus_split_schedule(l, p, q).map(|s| s.len() as u64);
                let want = torus_splitting((l * p) as u64, (l * q) as u64);
                t.check(schedule == Ok(want), || {
                    format!(
                        "T({},{}): schedule {schedule:?}, expected {want}",
                        l * p,
                        l * q
                    )
                });
            }
        }
        "interval-soundness" => {
            for _ in 0..ctx.opts.samples {
                let expr = random_expr(&mut ctx.rng, 3);
                let Some(d) = expr.realize() else { continue };
                if d.crossing_count() > ctx.opts.max_crossings.max(10) {
                    continue;
                }
                let v = sn_eval(&expr, 2);
                let s = s2(&d);
                let ok = matches!((&v, &s), (Ok(v), Ok(s)) if v.contains(*s as i64));
                t.check(ok, || format!("{expr:?}: interval {v:?}, engine {s:?}"));
            }
        }
        "movie-replay" => {
            for _ in 0..ctx.opts.samples {
                let start = ctx
                    .entries
                    .choose(&mut ctx.rng)
                    .expect("corpus is not empty")
                    .diagram
                    .clone();
                let movie = random_movie(&mut ctx.rng, &start, 8, ctx.opts.max_crossings + 2);
                check_movie(&mut t, &movie);
            }
        }
        "json-roundtrip" => {
            for e in ctx.entries.iter().filter(|e| !e.diagram.is_empty()) {
                for n in [2, 3] {
                    let r = invariant_report_for(&e.name, &e.diagram, n);
                    let ok = match &r {
                        Ok(r) => serde_json::to_string(r)
                            .ok()
                            .and_then(|s| serde_json::from_str::<InvariantReport>(&s).ok())
                            .is_some_and(|back| &back == r),
                        Err(_) => false,
                    };
                    t.check(ok, || format!("{} at n={n}: {r:?}", e.name));
                }
            }
        }
        other => unreachable!("property {other} is listed but not implemented"),
    }
    t
}

fn complex(d: &LinkDiagram) -> FilteredComplex {
    FilteredComplex::build(d).expect("corpus diagrams fit the engine")
}

/// Composes consecutive differentials column by column.
fn d_squared_vanishes(c: &FilteredComplex, fault: Option<Fault>) -> bool {
    let degrees: Vec<i32> = c.degrees().collect();
    degrees.iter().all(|&h| {
        let mut first = c.differential(h);
        let second = c.differential(h + 1);
        if fault == Some(Fault::Differential) {
            if let Some(col) = first.iter_mut().find(|v| v.leading().is_some()) {
                let terms: Vec<(usize, BigInt)> = col
                    .iter()
                    .enumerate()
                    .map(|(k, (i, v))| (i, if k == 0 { v * 2 } else { v.clone() }))
                    .collect();
                *col = SparseVec::from_terms(terms);
            }
        }
        first.iter().all(|col| {
            let mut acc: std::collections::BTreeMap<usize, BigInt> = Default::default();
            for (j, a) in col.iter() {
                if let Some(next) = second.get(j) {
                    for (k, b) in next.iter() {
                        *acc.entry(k).or_insert_with(BigInt::zero) += a * b;
                    }
                }
            }
            acc.values().all(Zero::is_zero)
        })
    })
}

fn random_side(rng: &mut ChaCha8Rng) -> Side {
    if rng.gen() {
        Side::Left
    } else {
        Side::Right
    }
}

/// A random Reidemeister move on `d`, if one of a few attempts applies.
fn random_reidemeister(
    rng: &mut ChaCha8Rng,
    d: &LinkDiagram,
    cap: usize,
) -> Option<(Move, LinkDiagram)> {
    let edges: Vec<_> = d.edges().collect();
    let c = d.crossing_count();
    for _ in 0..40 {
        let m = match rng.gen_range(0..5) {
            0 if c < cap => Move::R1Add {
                edge: *edges.choose(rng)?,
                sign: if rng.gen() {
                    Sign::Positive
                } else {
                    Sign::Negative
                },
                side: random_side(rng),
            },
            1 if c > 0 => Move::R1Remove {
                crossing: rng.gen_range(0..c),
            },
            2 if c + 2 <= cap => Move::R2Add {
                over: *edges.choose(rng)?,
                over_side: random_side(rng),
                under: *edges.choose(rng)?,
                under_side: random_side(rng),
            },
            3 if c >= 2 => {
                let a = rng.gen_range(0..c);
                Move::R2Remove {
                    crossings: [a, (a + 1 + rng.gen_range(0..c - 1)) % c],
                }
            }
            4 if c >= 3 => {
                let mut idx: Vec<usize> = (0..c).collect();
                idx.shuffle(rng);
                Move::R3 {
                    crossings: [idx[0], idx[1], idx[2]],
                }
            }
            _ => continue,
        };
        if let Ok(a) = apply_move(d, &m) {
            return Some((m, a.diagram));
        }
    }
    None
}

fn random_isotopy(
    rng: &mut ChaCha8Rng,
    d: &LinkDiagram,
    steps: usize,
    cap: usize,
) -> (LinkDiagram, Vec<Move>) {
    let mut cur = d.clone();
    let mut moves = Vec::new();
    for _ in 0..steps {
        if let Some((m, next)) = random_reidemeister(rng, &cur, cap) {
            moves.push(m);
            cur = next;
        }
    }
    (cur, moves)
}

fn random_movie(rng: &mut ChaCha8Rng, start: &LinkDiagram, steps: usize, cap: usize) -> Movie {
    let mut cur = start.clone();
    let mut moves = Vec::new();
    for _ in 0..steps {
        let edges: Vec<_> = cur.edges().collect();
        let candidate = match rng.gen_range(0..4) {
            0 => random_reidemeister(rng, &cur, cap).map(|(m, _)| m),
            1 => Some(Move::H0 { edge: None }),
            2 if !edges.is_empty() => Some(Move::H1 {
                edges: [*edges.choose(rng).unwrap(), *edges.choose(rng).unwrap()],
                side: random_side(rng),
            }),
            3 if !cur.loops().is_empty() => Some(Move::H2 {
                edge: *cur.loops().choose(rng).unwrap(),
            }),
            _ => None,
        };
        if let Some(m) = candidate {
            if let Ok(a) = apply_move(&cur, &m) {
                if a.diagram.crossing_count() <= cap {
                    cur = a.diagram;
                    moves.push(m);
                }
            }
        }
    }
    Movie::new(start.clone(), moves)
}

fn check_movie(t: &mut Tally, movie: &Movie) {
    let Ok(l) = validate_movie(movie) else {
        t.check(false, || {
            format!("generated movie does not replay: {movie:?}")
        });
        return;
    };
    t.check(validate_movie(movie).as_ref() == Ok(&l), || {
        "replay is not deterministic".into()
    });
    t.check(
        l.chi == l.steps.iter().map(|s| s.class.chi()).sum::<i64>(),
        || "chi is not the sum of steps".into(),
    );
    match movie.reversed().and_then(|b| validate_movie(&b)) {
        Ok(lb) => t.check(
            lb.chi == l.chi && lb.end.isomorphism(&movie.start).is_some(),
            || "reversed movie does not return to the start".into(),
        ),
        Err(e) => t.check(false, || format!("reversed movie fails: {e}")),
    }
    if let Some(c) = &l.certificate {
        if !movie.start.is_empty() && !l.end.is_empty() {
            if let (Ok(a), Ok(b)) = (s2(&movie.start), s2(&l.end)) {
                t.check(c.holds(2, a as i64, b as i64), || {
                    format!("certificate fails: s2 {a} -> {b}, chi {}", c.chi)
                });
            }
        }
    }
}

/// A random expression whose leaves are small diagrams with exact values.
fn random_expr(rng: &mut ChaCha8Rng, depth: usize) -> LinkExpr {
    let leaves = [
        LinkExpr::Unknot,
        LinkExpr::PositiveDiagram {
            diagram: crate::corpus::right_trefoil(),
        },
        LinkExpr::PositiveDiagram {
            diagram: crate::corpus::hopf_positive(),
        },
        LinkExpr::PositiveDiagram {
            diagram: crate::notation::parse_braid(&[1], 2).expect("valid"),
        },
    ];
    if depth == 0 || rng.gen_bool(0.25) {
        return leaves.choose(rng).expect("non-empty").clone();
    }
    let child = |rng: &mut ChaCha8Rng| Box::new(random_expr(rng, depth - 1));
    match rng.gen_range(0..4) {
        0 => LinkExpr::Mirror { child: child(rng) },
        1 => {
            let c = child(rng);
            let k = c.realize().map_or(0, |d| d.crossing_count());
            if k == 0 {
                return *c;
            }
            LinkExpr::CrossingChange {
                child: c,
                crossing: Some(rng.gen_range(0..k)),
            }
        }
        2 => LinkExpr::DisjointUnion {
            children: vec![*child(rng), *child(rng)],
        },
        _ => LinkExpr::ConnectSum {
            left: child(rng),
            right: child(rng),
            i1: 0,
            i2: 0,
        },
    }
}

//! Reports produced by the command-line front end, as plain data.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::{
    g4_lower_bound, genus_positive, sn_diagram, sn_eval, sp_lower_bound, torus_g4,
    torus_split_schedule, torus_splitting, CalculusError, LinkExpr, SnValue,
};
use crate::cobordism::{
    check_handle_order, slice_certificate, validate_movie, CobordismError, Fate, Movie, StepRecord,
};
use crate::diagram::{DiagramError, LinkDiagram};
use crate::lee::{s2, EngineError, DEFAULT_CROSSING_LIMIT};
use crate::notation::{parse_braid, parse_pd, torus_link};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("the diagram is empty (l = 0); s_n is defined for links with at least one component")]
    ExplicitEmpty,
    #[error("bad n range {0:?}: expected N or A..B with 2 <= A <= B")]
    BadRange(String),
    #[error("bad braid word {0:?}")]
    BadBraid(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Cobordism(#[from] CobordismError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
}

/// Where a diagram comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramSource {
    Pd(String),
    Braid {
        word: String,
        strands: Option<usize>,
    },
    Torus(usize, usize),
}

impl DiagramSource {
    pub fn describe(&self) -> String {
        match self {
            DiagramSource::Pd(t) => format!("pd {t}"),
            DiagramSource::Braid { word, strands } => match strands {
                Some(s) => format!("braid {word} on {s} strands"),
                None => format!("braid {word}"),
            },
            DiagramSource::Torus(p, q) => format!("torus {p} {q}"),
        }
    }

    pub fn build(&self) -> Result<LinkDiagram, ReportError> {
        let d = match self {
            DiagramSource::Pd(t) => parse_pd(t)?,
            DiagramSource::Braid { word, strands } => {
                let gens: Vec<i32> = word
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<i32>()
                            .map_err(|_| ReportError::BadBraid(word.clone()))
                    })
                    .collect::<Result<_, _>>()?;
                let strands = strands.unwrap_or_else(|| {
                    gens.iter()
                        .map(|g| g.unsigned_abs() as usize + 1)
                        .max()
                        .unwrap_or(1)
                });
                parse_braid(&gens, strands)?
            }
            DiagramSource::Torus(p, q) => {
                if *p == 0 || *q == 0 {
                    return Err(ReportError::Diagram(DiagramError::MalformedPd(
                        "torus parameters must be positive".into(),
                    )));
                }
                torus_link(*p, *q)
            }
        };
        if d.is_empty() {
            return Err(ReportError::ExplicitEmpty);
        }
        Ok(d)
    }
}

/// Inclusive range `A..B`, or a single `N`.
pub fn parse_n_range(text: &str) -> Result<Vec<u32>, ReportError> {
    let bad = || ReportError::BadRange(text.to_string());
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (
            a.trim().parse::<u32>().map_err(|_| bad())?,
            b.trim().parse::<u32>().map_err(|_| bad())?,
        ),
        None => {
            let n = text.trim().parse::<u32>().map_err(|_| bad())?;
            (n, n)
        }
    };
    if a < 2 || a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SnField {
    Exact { exact: i64 },
    Interval { lo: i64, hi: i64 },
}

impl From<&SnValue> for SnField {
    fn from(v: &SnValue) -> Self {
        match v.value() {
            Some(s) => SnField::Exact { exact: s },
            None => SnField::Interval { lo: v.lo, hi: v.hi },
        }
    }
}

impl std::fmt::Display for SnField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SnField::Exact { exact } => write!(f, "{exact}"),
            SnField::Interval { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub c: usize,
    pub r: usize,
    pub w: i32,
    pub l: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub g4_lb: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g3: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sp_lb: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub input: String,
    pub n: u32,
    pub s_n: SnField,
    pub stats: Stats,
    pub bounds: Bounds,
    pub trace: Vec<String>,
}

fn stats_of(d: &LinkDiagram) -> Stats {
    let st = d.resolution_stats();
    Stats {
        c: st.c,
        r: st.r,
        w: st.w,
        l: st.l,
    }
}

/// Splitting-number bound when the link and all its components have exact values.
fn sp_bound(d: &LinkDiagram, value: &SnValue) -> Result<Option<i64>, ReportError> {
    let l = d.component_count();
    if l < 2 || !value.is_exact() {
        return Ok(None);
    }
    let mut parts = Vec::with_capacity(l);
    for i in 0..l {
        let v = sn_diagram(&d.sublink(&[i])?, value.n)?;
        if !v.is_exact() {
            return Ok(None);
        }
        parts.push(v);
    }
    Ok(Some(sp_lower_bound(value, &parts, l)?))
}

pub fn invariant_report(source: &DiagramSource, n: u32) -> Result<InvariantReport, ReportError> {
    let d = source.build()?;
    invariant_report_for(&source.describe(), &d, n)
}

pub fn invariant_report_for(
    input: &str,
    d: &LinkDiagram,
    n: u32,
) -> Result<InvariantReport, ReportError> {
    if d.is_empty() {
        return Err(ReportError::ExplicitEmpty);
    }
    if n == 2 && !d.is_positive() && d.crossing_count() > DEFAULT_CROSSING_LIMIT {
        return Err(EngineError::TooLarge {
            crossings: d.crossing_count(),
            limit: DEFAULT_CROSSING_LIMIT,
        }
        .into());
    }
    let value = sn_diagram(d, n)?;
    let l = d.component_count();
    let g3 = if d.is_positive() {
        Some(genus_positive(d)?.0)
    } else {
        None
    };
    Ok(InvariantReport {
        input: input.to_string(),
        n,
        s_n: SnField::from(&value),
        stats: stats_of(d),
        bounds: Bounds {
            g4_lb: g4_lower_bound(&value, l),
            g3,
            sp_lb: sp_bound(d, &value)?,
        },
        trace: value.trace.clone(),
    })
}

/// s₂ from the engine, used as a headline next to the sₙ table.
pub fn engine_s2(d: &LinkDiagram) -> Result<i64, ReportError> {
    Ok(s2(d)? as i64)
}

pub fn invariant_table(reports: &[InvariantReport], engine: Option<i64>) -> String {
    let mut out = String::new();
    if let Some(first) = reports.first() {
        let st = first.stats;
        let _ = writeln!(out, "input: {}", first.input);
        let _ = writeln!(out, "c={} r={} w={} l={}", st.c, st.r, st.w, st.l);
    }
    if let Some(s) = engine {
        let _ = writeln!(out, "s_2 (engine) = {s}");
    }
    let _ = writeln!(
        out,
        "{:>3}  {:>12}  {:>5}  {:>4}  {:>5}",
        "n", "s_n", "g4>=", "g3", "sp>="
    );
    for r in reports {
        let opt = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
        let _ = writeln!(
            out,
            "{:>3}  {:>12}  {:>5}  {:>4}  {:>5}",
            r.n,
            r.s_n.to_string(),
            r.bounds.g4_lb,
            opt(r.bounds.g3),
            opt(r.bounds.sp_lb)
        );
    }
    out
}

/// Closed-form values for torus links next to the bounds from sₙ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusValues {
    pub g4: i64,
    pub splitting: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub input: String,
    pub n: u32,
    pub s_n: SnField,
    pub bounds: Bounds,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<TorusValues>,
}

pub fn bounds_report(source: &DiagramSource, n: u32) -> Result<BoundsReport, ReportError> {
    let inv = invariant_report(source, n)?;
    let torus = match *source {
        DiagramSource::Torus(p, q) => {
            use num_integer::Integer;
            let l = p.gcd(&q);
            Some(TorusValues {
                g4: torus_g4(p as u64, q as u64),
                splitting: torus_splitting(p as u64, q as u64),
                schedule: torus_split_schedule(l, p / l, q / l).ok(),
            })
        }
        _ => None,
    };
    Ok(BoundsReport {
        input: inv.input,
        n,
        s_n: inv.s_n,
        bounds: inv.bounds,
        torus,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalReport {
    pub input: String,
    pub n: u32,
    pub s_n: SnField,
    pub components: usize,
    pub bounds: Bounds,
    pub trace: Vec<String>,
}

pub fn eval_report(input: &str, expr: &LinkExpr, n: u32) -> Result<EvalReport, ReportError> {
    let v = sn_eval(expr, n)?;
    let l = expr.components()?;
    Ok(EvalReport {
        input: input.to_string(),
        n,
        s_n: SnField::from(&v),
        components: l,
        bounds: Bounds {
            g4_lb: g4_lower_bound(&v, l),
            g3: None,
            sp_lb: None,
        },
        trace: v.trace,
    })
}

pub fn read_expr(path: &str) -> Result<LinkExpr, ReportError> {
    let text = std::fs::read_to_string(path).map_err(|source| ReportError::Io {
        path: path.into(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| ReportError::Json {
        path: path.into(),
        source,
    })
}

pub fn read_movie(path: &str) -> Result<Movie, ReportError> {
    let text = std::fs::read_to_string(path).map_err(|source| ReportError::Io {
        path: path.into(),
        source,
    })?;
    Ok(Movie::from_jsonl(&text)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCheck {
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offending_index: Option<usize>,
}

/// Both ends of a certificate evaluated by the engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericCheck {
    pub s2_start: i64,
    pub s2_end: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceBounds {
    pub chi_surface: i64,
    pub pieces: usize,
    pub lower: i64,
    pub upper: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MovieReport {
    pub input: String,
    pub n: u32,
    pub moves: usize,
    pub chi: i64,
    pub filtered_degree: i64,
    pub steps: Vec<StepRecord>,
    pub fate: Vec<(u32, Fate)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericCheck>,
    pub order: OrderCheck,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice: Option<SliceBounds>,
}

pub fn movie_report(input: &str, movie: &Movie, n: u32) -> Result<MovieReport, ReportError> {
    let ledger = validate_movie(movie)?;
    let order = match check_handle_order(movie) {
        Ok(()) => OrderCheck {
            ok: true,
            offending_index: None,
        },
        Err(i) => OrderCheck {
            ok: false,
            offending_index: Some(i),
        },
    };
    let numeric = match &ledger.certificate {
        Some(c)
            if movie.start.crossing_count() <= DEFAULT_CROSSING_LIMIT
                && ledger.end.crossing_count() <= DEFAULT_CROSSING_LIMIT =>
        {
            let s_start = if movie.start.is_empty() {
                None
            } else {
                Some(s2(&movie.start)? as i64)
            };
            let s_end = if ledger.end.is_empty() {
                None
            } else {
                Some(s2(&ledger.end)? as i64)
            };
            match (s_start, s_end) {
                (Some(a), Some(b)) => Some(NumericCheck {
                    s2_start: a,
                    s2_end: b,
                    holds: c.holds(2, a, b),
                }),
                _ => None,
            }
        }
        _ => None,
    };
    let slice = slice_certificate(movie).ok().map(|sc| SliceBounds {
        chi_surface: sc.chi_surface,
        pieces: sc.pieces,
        lower: sc.lower_bound(n),
        upper: sc.upper_bound(n),
    });
    Ok(MovieReport {
        input: input.to_string(),
        n,
        moves: movie.moves.len(),
        chi: ledger.chi,
        filtered_degree: ledger.filtered_degree(n),
        steps: ledger.steps.clone(),
        fate: ledger.fate.iter().map(|(&k, &v)| (k, v)).collect(),
        certificate: ledger.certificate.as_ref().map(|c| {
            let shift = -(n as i64 - 1) * c.chi;
            let sign = if shift < 0 { '-' } else { '+' };
            format!(
                "{} (at n={n}: s(start) {sign} {} >= s(end))",
                c.statement,
                shift.abs()
            )
        }),
        numeric,
        order,
        slice,
    })
}

pub fn movie_table(r: &MovieReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "movie: {} ({} moves)", r.input, r.moves);
    for s in &r.steps {
        let _ = writeln!(
            out,
            "  {:>3}  {:<3} {:<13} components={} chi={}",
            s.index,
            s.kind,
            format!("{:?}", s.class),
            s.components,
            s.chi
        );
    }
    let _ = writeln!(
        out,
        "chi = {}, filtered degree at n={} = {}",
        r.chi, r.n, r.filtered_degree
    );
    for (root, fate) in &r.fate {
        let _ = writeln!(out, "constant label {root}: {fate:?}");
    }
    match &r.certificate {
        Some(c) => {
            let _ = writeln!(out, "certificate: {c}");
        }
        None => {
            let _ = writeln!(
                out,
                "no certificate: some constant generator does not survive"
            );
        }
    }
    if let Some(nc) = &r.numeric {
        let _ = writeln!(
            out,
            "engine check: s2(start)={} s2(end)={} holds={}",
            nc.s2_start, nc.s2_end, nc.holds
        );
    }
    match r.order.offending_index {
        None => {
            let _ = writeln!(out, "move order: ok");
        }
        Some(i) => {
            let _ = writeln!(out, "move order: violated at move {i}");
        }
    }
    if let Some(s) = &r.slice {
        let _ = writeln!(
            out,
            "slice surface: chi={} pieces={}  {} <= s_{} <= {}",
            s.chi_surface, s.pieces, s.lower, r.n, s.upper
        );
    }
    out
}

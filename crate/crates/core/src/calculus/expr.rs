//! Link expressions and their interval evaluation.

use serde::{Deserialize, Serialize};

use super::value::SnValue;
use super::CalculusError;
use crate::diagram::{LinkDiagram, Sign};
use crate::lee;

/// A link assembled from leaves with known sₙ by operations whose effect on
/// sₙ is bounded.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum LinkExpr {
    Unknot,
    PositiveDiagram {
        diagram: LinkDiagram,
    },
    /// Evaluated by the exact n = 2 engine.
    EngineDiagram {
        diagram: LinkDiagram,
    },
    StronglySlice {
        components: usize,
    },
    KnownValue {
        n: u32,
        value: i64,
        components: usize,
        provenance: String,
    },
    DisjointUnion {
        children: Vec<LinkExpr>,
    },
    ConnectSum {
        left: Box<LinkExpr>,
        right: Box<LinkExpr>,
        #[serde(default)]
        i1: usize,
        #[serde(default)]
        i2: usize,
    },
    Mirror {
        child: Box<LinkExpr>,
    },
    /// One crossing of the child changed. The crossing index is only needed
    /// to build a concrete diagram.
    CrossingChange {
        child: Box<LinkExpr>,
        #[serde(default)]
        crossing: Option<usize>,
    },
    ConcordantTo {
        child: Box<LinkExpr>,
        #[serde(default)]
        note: String,
    },
}

fn check_n(n: u32) -> Result<(), CalculusError> {
    if n < 2 {
        Err(CalculusError::InvalidN(n))
    } else {
        Ok(())
    }
}

/// (1 − n)(c − r + 1) for a positive diagram.
pub fn sn_positive(diagram: &LinkDiagram, n: u32) -> Result<SnValue, CalculusError> {
    check_n(n)?;
    if !diagram.is_positive() {
        return Err(CalculusError::NotPositiveDiagram);
    }
    let st = diagram.resolution_stats();
    let s = (1 - n as i64) * (st.c as i64 - st.r as i64 + 1);
    Ok(SnValue::exact(
        n,
        s,
        format!("positive diagram: (1-n)(c-r+1) with c={}, r={}", st.c, st.r),
    ))
}

impl LinkExpr {
    pub fn components(&self) -> Result<usize, CalculusError> {
        Ok(match self {
            LinkExpr::Unknot => 1,
            LinkExpr::PositiveDiagram { diagram } | LinkExpr::EngineDiagram { diagram } => {
                diagram.component_count()
            }
            LinkExpr::StronglySlice { components } | LinkExpr::KnownValue { components, .. } => {
                *components
            }
            LinkExpr::DisjointUnion { children } => children
                .iter()
                .map(|c| c.components())
                .sum::<Result<usize, _>>()?,
            LinkExpr::ConnectSum {
                left,
                right,
                i1,
                i2,
            } => {
                let (l1, l2) = (left.components()?, right.components()?);
                if *i1 >= l1 || *i2 >= l2 {
                    return Err(CalculusError::ComponentOutOfRange);
                }
                l1 + l2 - 1
            }
            LinkExpr::Mirror { child }
            | LinkExpr::CrossingChange { child, .. }
            | LinkExpr::ConcordantTo { child, .. } => child.components()?,
        })
    }

    /// Interval for sₙ obtained by applying one rule per node.
    pub fn eval(&self, n: u32) -> Result<SnValue, CalculusError> {
        check_n(n)?;
        let n1 = n as i64 - 1;
        match self {
            LinkExpr::Unknot => Ok(SnValue::exact(n, 0, "unknot")),
            LinkExpr::PositiveDiagram { diagram } => sn_positive(diagram, n),
            LinkExpr::EngineDiagram { diagram } => {
                if n != 2 {
                    return Err(CalculusError::UnevaluableLeaf(format!(
                        "the engine computes s_2 only, not s_{n}"
                    )));
                }
                let s = lee::s2(diagram)?;
                Ok(SnValue::exact(
                    2,
                    s as i64,
                    "engine: qgr of the canonical cycle minus 1",
                ))
            }
            LinkExpr::StronglySlice { components } => {
                let s = n1 * (*components as i64 - 1);
                Ok(SnValue::exact(
                    n,
                    s,
                    format!("strongly slice: (n-1)(l-1) with l={components}"),
                ))
            }
            LinkExpr::KnownValue {
                n: m,
                value,
                provenance,
                ..
            } => {
                if provenance.trim().is_empty() {
                    return Err(CalculusError::MissingProvenance);
                }
                if *m != n {
                    return Err(CalculusError::MixedN {
                        expected: n,
                        found: *m,
                    });
                }
                Ok(SnValue::exact(
                    n,
                    *value,
                    format!("known value ({provenance})"),
                ))
            }
            LinkExpr::DisjointUnion { children } => {
                if children.is_empty() {
                    return Err(CalculusError::UnevaluableLeaf(
                        "empty disjoint union".into(),
                    ));
                }
                let vals = children
                    .iter()
                    .map(|c| c.eval(n))
                    .collect::<Result<Vec<_>, _>>()?;
                let m = vals.len() as i64;
                let shift = n1 * (m - 1);
                let mut trace: Vec<String> = vals.iter().flat_map(|v| v.trace.clone()).collect();
                trace.push(format!("split union of {m}: sum + (n-1)(m-1)"));
                Ok(SnValue::interval(
                    n,
                    vals.iter().map(|v| v.lo).sum::<i64>() + shift,
                    vals.iter().map(|v| v.hi).sum::<i64>() + shift,
                    trace,
                ))
            }
            LinkExpr::ConnectSum { left, right, .. } => {
                self.components()?;
                let (a, b) = (left.eval(n)?, right.eval(n)?);
                let mut trace = a.trace.clone();
                trace.extend(b.trace.iter().cloned());
                trace.push("connected sum: values add".into());
                Ok(SnValue::interval(n, a.lo + b.lo, a.hi + b.hi, trace))
            }
            LinkExpr::Mirror { child } => {
                let v = child.eval(n)?;
                let l = child.components()? as i64;
                if l == 1 && v.is_exact() {
                    let s = -v.lo;
                    Ok(SnValue {
                        n,
                        lo: s,
                        hi: s,
                        trace: v.trace,
                    }
                    .with_rule("mirror of a knot: value negates"))
                } else {
                    let (lo, hi) = (-v.hi, (2 * l - 2) * n1 - v.lo);
                    Ok(SnValue {
                        n,
                        lo,
                        hi,
                        trace: v.trace,
                    }
                    .with_rule(format!(
                        "mirror: 0 <= s + s(mirror) <= (2l-2)(n-1) with l={l}"
                    )))
                }
            }
            LinkExpr::CrossingChange { child, .. } => {
                let v = child.eval(n)?;
                Ok(SnValue {
                    n,
                    lo: v.lo - 2 * n1,
                    hi: v.hi + 2 * n1,
                    trace: v.trace,
                }
                .with_rule("crossing change: moves s by at most 2(n-1)"))
            }
            LinkExpr::ConcordantTo { child, .. } => {
                Ok(child.eval(n)?.with_rule("concordance: value unchanged"))
            }
        }
    }

    /// A concrete diagram of the expression's link, when every node has one.
    pub fn realize(&self) -> Option<LinkDiagram> {
        match self {
            LinkExpr::Unknot => Some(LinkDiagram::unknot()),
            LinkExpr::PositiveDiagram { diagram } | LinkExpr::EngineDiagram { diagram } => {
                Some(diagram.clone())
            }
            LinkExpr::StronglySlice { .. }
            | LinkExpr::KnownValue { .. }
            | LinkExpr::ConcordantTo { .. } => None,
            LinkExpr::DisjointUnion { children } => {
                let mut acc = LinkDiagram::empty();
                for c in children {
                    acc = acc.disjoint_union(&c.realize()?);
                }
                Some(acc)
            }
            LinkExpr::ConnectSum {
                left,
                right,
                i1,
                i2,
            } => {
                let (a, b) = (left.realize()?, right.realize()?);
                a.connect_sum(*i1, &b, *i2).ok().map(|(d, _)| d)
            }
            LinkExpr::Mirror { child } => Some(child.realize()?.mirror()),
            LinkExpr::CrossingChange { child, crossing } => {
                child.realize()?.crossing_change((*crossing)?).ok()
            }
        }
    }
}

/// sₙ of any diagram: the closed form for positive diagrams, the engine at
/// n = 2, and otherwise the intersection of two crossing-change estimates,
/// one from the diagram with every crossing made positive and one from the
/// mirror of the diagram with every crossing made negative.
pub fn sn_diagram(diagram: &LinkDiagram, n: u32) -> Result<SnValue, CalculusError> {
    check_n(n)?;
    if diagram.is_positive() {
        return sn_positive(diagram, n);
    }
    if n == 2 {
        return LinkExpr::EngineDiagram {
            diagram: diagram.clone(),
        }
        .eval(2);
    }
    let flip_all = |sign: Sign| -> LinkDiagram {
        let mut d = diagram.clone();
        for k in 0..d.crossing_count() {
            if d.crossings()[k].sign == sign {
                d = d.crossing_change(k).expect("index in range");
            }
        }
        d
    };
    let changes = |mut e: LinkExpr, k: usize| {
        for _ in 0..k {
            e = LinkExpr::CrossingChange {
                child: Box::new(e),
                crossing: None,
            };
        }
        e
    };
    let up = changes(
        LinkExpr::PositiveDiagram {
            diagram: flip_all(Sign::Negative),
        },
        diagram.negative_count(),
    );
    let down = changes(
        LinkExpr::Mirror {
            child: Box::new(LinkExpr::PositiveDiagram {
                diagram: flip_all(Sign::Positive).mirror(),
            }),
        },
        diagram.positive_count(),
    );
    let (a, b) = (up.eval(n)?, down.eval(n)?);
    let (lo, hi) = (a.lo.max(b.lo), a.hi.min(b.hi));
    if lo > hi {
        return Err(CalculusError::IntervalViolation {
            value: lo,
            lo: b.lo,
            hi: b.hi,
        });
    }
    let mut trace = vec![format!(
        "{} negative crossing(s) changed to reach a positive diagram: [{}, {}]",
        diagram.negative_count(),
        a.lo,
        a.hi
    )];
    trace.push(format!(
        "{} positive crossing(s) changed to reach the mirror of a positive diagram: [{}, {}]",
        diagram.positive_count(),
        b.lo,
        b.hi
    ));
    trace.push("intersection of both estimates".into());
    Ok(SnValue::interval(n, lo, hi, trace))
}

pub fn sn_eval(expr: &LinkExpr, n: u32) -> Result<SnValue, CalculusError> {
    expr.eval(n)
}

/// Replaces an n = 2 interval by the engine's exact value on a realized
/// diagram. The exact value must lie in the interval.
pub fn refine_with_engine(expr: &LinkExpr, value: SnValue) -> Result<SnValue, CalculusError> {
    if value.n != 2 || value.is_exact() {
        return Ok(value);
    }
    let Some(diagram) = expr.realize() else {
        return Ok(value);
    };
    let s = lee::s2(&diagram)? as i64;
    if !value.contains(s) {
        return Err(CalculusError::IntervalViolation {
            value: s,
            lo: value.lo,
            hi: value.hi,
        });
    }
    Ok(SnValue {
        n: 2,
        lo: s,
        hi: s,
        trace: value.trace,
    }
    .with_rule("engine refinement on a realized diagram"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{parse_braid, parse_pd, torus_link};

    fn trefoil() -> LinkDiagram {
        parse_pd("X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]").unwrap()
    }

    fn pos(d: LinkDiagram) -> LinkExpr {
        LinkExpr::PositiveDiagram { diagram: d }
    }

    fn exact(e: &LinkExpr, n: u32) -> i64 {
        let v = e.eval(n).unwrap();
        assert!(v.is_exact(), "{v:?}");
        v.lo
    }

    #[test]
    fn positive_formula() {
        assert_eq!(sn_positive(&trefoil(), 2).unwrap().lo, -2);
        assert_eq!(sn_positive(&trefoil(), 3).unwrap().lo, -4);
        assert_eq!(sn_positive(&torus_link(2, 4), 2).unwrap().lo, -3);
        for n in 2..7 {
            assert_eq!(sn_positive(&LinkDiagram::unknot(), n).unwrap().lo, 0);
        }
        assert_eq!(
            sn_positive(&trefoil().mirror(), 2),
            Err(CalculusError::NotPositiveDiagram)
        );
    }

    #[test]
    fn spec_rules() {
        let t = pos(trefoil());
        assert_eq!(
            exact(
                &LinkExpr::Mirror {
                    child: Box::new(t.clone())
                },
                2
            ),
            2
        );
        let u = LinkExpr::DisjointUnion {
            children: vec![pos(torus_link(2, 3)), pos(torus_link(2, 3))],
        };
        assert_eq!(exact(&u, 3), -6);
        let cs = LinkExpr::ConnectSum {
            left: Box::new(t.clone()),
            right: Box::new(t),
            i1: 0,
            i2: 0,
        };
        assert_eq!(exact(&cs, 2), -4);
    }

    #[test]
    fn mirror_hopf_interval_and_refinement() {
        let hopf = parse_braid(&[1, 1], 2).unwrap();
        let e = LinkExpr::Mirror {
            child: Box::new(pos(hopf)),
        };
        let v = e.eval(2).unwrap();
        assert_eq!((v.lo, v.hi), (1, 3));
        let r = refine_with_engine(&e, v).unwrap();
        assert_eq!((r.lo, r.hi), (1, 1));
    }

    #[test]
    fn unlinks() {
        for n in 2..=6u32 {
            for m in 1..=4usize {
                let e = LinkExpr::DisjointUnion {
                    children: vec![LinkExpr::Unknot; m],
                };
                assert_eq!(exact(&e, n), (n as i64 - 1) * (m as i64 - 1));
            }
        }
    }

    #[test]
    fn crossing_change_and_concordance() {
        let e = LinkExpr::CrossingChange {
            child: Box::new(pos(trefoil())),
            crossing: Some(0),
        };
        let v = e.eval(3).unwrap();
        assert_eq!((v.lo, v.hi), (-8, 0));
        let r = refine_with_engine(&e, e.eval(2).unwrap()).unwrap();
        assert_eq!(r.value(), Some(0));
        let c = LinkExpr::ConcordantTo {
            child: Box::new(LinkExpr::StronglySlice { components: 3 }),
            note: String::new(),
        };
        assert_eq!(exact(&c, 4), 6);
    }

    #[test]
    fn leaf_errors() {
        let e = LinkExpr::EngineDiagram { diagram: trefoil() };
        assert!(matches!(e.eval(3), Err(CalculusError::UnevaluableLeaf(_))));
        assert_eq!(exact(&e, 2), -2);
        let k = LinkExpr::KnownValue {
            n: 2,
            value: 4,
            components: 1,
            provenance: " ".into(),
        };
        assert_eq!(k.eval(2), Err(CalculusError::MissingProvenance));
        let k = LinkExpr::KnownValue {
            n: 3,
            value: 4,
            components: 1,
            provenance: "table".into(),
        };
        assert_eq!(
            k.eval(2),
            Err(CalculusError::MixedN {
                expected: 2,
                found: 3
            })
        );
        let bad = LinkExpr::ConnectSum {
            left: Box::new(LinkExpr::Unknot),
            right: Box::new(LinkExpr::Unknot),
            i1: 1,
            i2: 0,
        };
        assert_eq!(bad.eval(2), Err(CalculusError::ComponentOutOfRange));
        assert_eq!(LinkExpr::Unknot.eval(1), Err(CalculusError::InvalidN(1)));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"node":"mirror","child":{"node":"positive_diagram","diagram":{"braid":[1,1],"strands":2}}}"#;
        let e: LinkExpr = serde_json::from_str(text).unwrap();
        assert_eq!(e.components().unwrap(), 2);
        let back: LinkExpr = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn diagram_intervals() {
        let fig8 = parse_braid(&[1, -2, 1, -2], 3).unwrap();
        for n in 3..7u32 {
            let v = sn_diagram(&fig8, n).unwrap();
            let n1 = n as i64 - 1;
            assert!(v.contains(0), "{v:?}");
            assert_eq!((v.lo, v.hi), (-2 * n1, 2 * n1));
            assert_eq!(v.trace.len(), 3);
        }
        let left = trefoil().mirror();
        assert_eq!(sn_diagram(&left, 4).unwrap().value(), Some(6));
        assert_eq!(sn_diagram(&trefoil(), 4).unwrap().value(), Some(-6));
        assert_eq!(sn_diagram(&left, 2).unwrap().value(), Some(2));
        let hopf_minus = parse_braid(&[-1, -1], 2).unwrap();
        let v = sn_diagram(&hopf_minus, 3).unwrap();
        assert!(v.contains(2), "{v:?}");
        assert_eq!(sn_diagram(&trefoil(), 1), Err(CalculusError::InvalidN(1)));
    }
}

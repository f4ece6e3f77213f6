//! Acceptance checks. Runs without the libtest harness so that every
//! criterion prints exactly one pass/fail line.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use snlink::calculus::{
    sn_eval, sp_lower_bound, torus_g4, torus_split_schedule, torus_splitting, LinkExpr, SnValue,
};
use snlink::cobordism::{check_handle_order, validate_movie, Fate};
use snlink::corpus::{
    corpus, figure_eight, hopf_negative, hopf_positive, left_trefoil, right_trefoil,
    trefoil_annulus_movie, trefoil_genus_one_movie,
};
use snlink::lee::{
    canonical_cycle, h_cycle, low_generator, s2, s2_of, Chain, FilteredComplex, Label,
};
use snlink::notation::{parse_braid, torus_link};
use snlink::LinkDiagram;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn engine(d: &LinkDiagram) -> Result<i64, String> {
    s2(d).map(i64::from).map_err(|e| e.to_string())
}

fn braid(word: &[i32], strands: usize) -> LinkDiagram {
    parse_braid(word, strands).unwrap()
}

/// Positive braids with s₂ frozen from the closed form (1 − 2)(c − r + 1).
fn criterion_1() -> Outcome {
    let mut cases: Vec<(String, LinkDiagram, i64)> = (1..=6)
        .map(|k| {
            (
                format!("sigma1^{k}"),
                braid(&vec![1; k], 2),
                -(k as i64 - 1),
            )
        })
        .collect();
    for (p, q, want) in [(2, 3, -2), (2, 4, -3), (2, 5, -4), (3, 3, -4), (3, 4, -6)] {
        cases.push((format!("T({p},{q})"), torus_link(p, q), want));
    }
    let total = Instant::now();
    let mut slowest = Duration::ZERO;
    for (name, d, want) in &cases {
        let st = d.resolution_stats();
        ensure(-(st.c as i64 - st.r as i64 + 1) == *want, || {
            format!("{name}: frozen value disagrees with c, r")
        })?;
        let t = Instant::now();
        let got = engine(d)?;
        slowest = slowest.max(t.elapsed());
        ensure(got == *want, || {
            format!("{name}: engine {got}, closed form {want}")
        })?;
        ensure(t.elapsed() < Duration::from_secs(10), || {
            format!("{name}: took {:?}", t.elapsed())
        })?;
    }
    ensure(total.elapsed() < Duration::from_secs(300), || {
        format!("suite took {:?}", total.elapsed())
    })?;
    Ok(format!(
        "{} diagrams exact, slowest {:?}",
        cases.len(),
        slowest
    ))
}

fn criterion_2() -> Outcome {
    for m in 1..=5usize {
        let got = engine(&LinkDiagram::unlink(m))?;
        ensure(got == m as i64 - 1, || format!("U{m}: engine {got}"))?;
        let expr = LinkExpr::DisjointUnion {
            children: vec![LinkExpr::Unknot; m],
        };
        for n in 2..=6u32 {
            let v = sn_eval(&expr, n).map_err(|e| e.to_string())?;
            let want = (n as i64 - 1) * (m as i64 - 1);
            ensure(v.value() == Some(want), || {
                format!("U{m} at n={n}: [{}, {}], expected {want}", v.lo, v.hi)
            })?;
        }
    }
    Ok("U1..U5 by engine, n = 2..6 by calculus".into())
}

fn criterion_3() -> Outcome {
    let signs = [
        ("right trefoil", right_trefoil(), -2),
        ("left trefoil", left_trefoil(), 2),
        ("figure-eight", figure_eight(), 0),
        ("Hopf+", hopf_positive(), -1),
        ("Hopf-", hopf_negative(), 1),
    ];
    for (name, d, want) in &signs {
        let got = engine(d)?;
        ensure(got == *want, || format!("{name}: {got}, expected {want}"))?;
    }
    // s₂(L) + s₂(mirror L) lies in [0, 2(l − 1)].
    let mut pairs = 0;
    for e in corpus() {
        let l = e.diagram.component_count() as i64;
        let sum = engine(&e.diagram)? + engine(&e.diagram.mirror())?;
        ensure((0..=2 * (l - 1)).contains(&sum), || {
            format!("{}: s2 + mirror s2 = {sum}", e.name)
        })?;
        pairs += 1;
    }
    Ok(format!("5 signs, {pairs} mirror pairs in window"))
}

fn structural(name: &str, d: &LinkDiagram) -> Result<(), String> {
    let c = FilteredComplex::build(d).map_err(|e| e.to_string())?;
    ensure(c.check_d_squared(), || format!("{name}: d∘d ≠ 0"))?;
    ensure(c.check_filtration(), || {
        format!("{name}: filtration drop outside {{0, 4}}")
    })?;
    let want = 1usize << d.component_count();
    ensure(c.homology_dimension() == want, || {
        format!("{name}: homology dimension ≠ {want}")
    })?;
    let qgr = |z: &Chain| c.qgr(z).map_err(|e| format!("{name}: {e}"));
    let plus = qgr(&canonical_cycle(&c, Label::Plus).chain)?;
    let minus = qgr(&canonical_cycle(&c, Label::Minus).chain)?;
    ensure(plus == minus, || format!("{name}: qgr {plus} vs {minus}"))?;
    let h = [qgr(&h_cycle(&c, 0).chain)?, qgr(&h_cycle(&c, 1).chain)?];
    ensure(plus == h[0].max(h[1]), || {
        format!("{name}: qgr(g)={plus}, qgr(h)={h:?}")
    })?;
    let st = d.resolution_stats();
    for (p, q) in h.iter().enumerate() {
        let want = (2 * p as i32 - (st.w + st.r as i32)).rem_euclid(4);
        ensure(q.rem_euclid(4) == want, || {
            format!("{name}: qgr(h{p}) = {q} ≢ {want} mod 4")
        })?;
    }
    let s = s2_of(&c).map_err(|e| e.to_string())?;
    let (_, low) = low_generator(&c).map_err(|e| e.to_string())?;
    ensure(low <= s - 1, || {
        format!("{name}: lowest h-class at {low}, s2 = {s}")
    })?;
    Ok(())
}

fn criterion_4() -> Outcome {
    let entries = corpus();
    for e in &entries {
        structural(&e.name, &e.diagram)?;
    }
    Ok(format!("{} complexes, 7 properties each", entries.len()))
}

fn criterion_5() -> Outcome {
    let mut changes = 0;
    let mut tight = Vec::new();
    for e in corpus()
        .into_iter()
        .filter(|e| e.diagram.crossing_count() <= 8)
    {
        let s = engine(&e.diagram)?;
        for k in 0..e.diagram.crossing_count() {
            let t = engine(&e.diagram.crossing_change(k).map_err(|e| e.to_string())?)?;
            ensure((t - s).abs() <= 2, || {
                format!("{} at crossing {k}: {s} -> {t}", e.name)
            })?;
            if (t - s).abs() == 2 {
                tight.push(e.name.clone());
            }
            changes += 1;
        }
    }
    let hopf = engine(&hopf_positive())?;
    let u2 = engine(
        &hopf_positive()
            .crossing_change(0)
            .map_err(|e| e.to_string())?,
    )?;
    ensure((hopf, u2) == (-1, 1), || {
        format!("Hopf+ -> U2 gives {hopf} -> {u2}")
    })?;
    ensure(tight.iter().any(|n| n == "sigma1^2"), || {
        "Hopf+ change not tight".into()
    })?;
    Ok(format!("{changes} changes, {} tight", tight.len()))
}

fn criterion_6() -> Outcome {
    for (p, q, want) in [(2, 3, 1), (2, 4, 1), (3, 4, 3)] {
        ensure(torus_g4(p, q) == want, || {
            format!("g4(T({p},{q})) = {}", torus_g4(p, q))
        })?;
    }
    for (p, q, want) in [(2, 4, 2), (3, 3, 3), (2, 6, 3)] {
        ensure(torus_splitting(p, q) == want, || {
            format!("sp(T({p},{q})) = {}", torus_splitting(p, q))
        })?;
    }
    for (l, p, q) in [(2, 1, 2), (3, 1, 1)] {
        let d = torus_link(l * p, l * q);
        let schedule = torus_split_schedule(l, p, q).map_err(|e| e.to_string())?;
        let link = SnValue::exact(2, engine(&d)?, "engine");
        let mut parts = Vec::new();
        for i in 0..l {
            parts.push(SnValue::exact(
                2,
                engine(&d.sublink(&[i]).map_err(|e| e.to_string())?)?,
                "engine",
            ));
        }
        let lb = sp_lower_bound(&link, &parts, l).map_err(|e| e.to_string())?;
        let mut split = d.clone();
        for &k in &schedule {
            split = split.crossing_change(k).map_err(|e| e.to_string())?;
        }
        let sum: i64 = parts.iter().map(|v| v.lo).sum::<i64>() + (l as i64 - 1);
        // After the schedule the link is split, so s₂ is the split-union value.
        ensure(engine(&split)? == sum, || {
            format!(
                "T({},{}): s2 after the schedule is not additive",
                l * p,
                l * q
            )
        })?;
        ensure(lb == schedule.len() as i64, || {
            format!(
                "T({},{}): bound {lb}, schedule {}",
                l * p,
                l * q,
                schedule.len()
            )
        })?;
    }
    Ok("g4 and sp closed forms, bound meets schedule on T(2,4), T(3,3)".into())
}

fn criterion_7() -> Outcome {
    let t = right_trefoil();
    let (sum, _) = t.connect_sum(0, &t, 0).map_err(|e| e.to_string())?;
    ensure(sum.crossing_count() == 6, || {
        format!("sum has {} crossings", sum.crossing_count())
    })?;
    let start = Instant::now();
    let a = engine(&sum)?;
    ensure(start.elapsed() < Duration::from_secs(30), || {
        format!("took {:?}", start.elapsed())
    })?;
    let b = engine(&t.disjoint_union(&t))?;
    ensure((a, b) == (-4, -3), || {
        format!("connected sum {a}, split union {b}")
    })?;
    Ok(format!("s2(T#T) = {a}, s2(T ⊔ T) = {b}"))
}

fn criterion_8() -> Outcome {
    let m = trefoil_genus_one_movie();
    let l = validate_movie(&m).map_err(|e| e.to_string())?;
    ensure(check_handle_order(&m).is_ok(), || {
        "order check rejects the movie".into()
    })?;
    ensure(l.chi == -2, || format!("chi = {}", l.chi))?;
    ensure(l.fate.values().all(|f| *f == Fate::Survives), || {
        format!("fates {:?}", l.fate)
    })?;
    let c = l.certificate.ok_or("no certificate")?;
    let (s, t) = (engine(&m.start)?, engine(&l.end)?);
    ensure(c.holds(2, s, t) && s - c.chi == t, || {
        format!("{s} - {} vs {t}", c.chi)
    })?;

    let a = trefoil_annulus_movie();
    let fwd = validate_movie(&a).map_err(|e| e.to_string())?;
    let back =
        validate_movie(&a.reversed().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(fwd.chi == 0 && back.chi == 0, || "annulus chi ≠ 0".into())?;
    let (cf, cb) = (
        fwd.certificate.ok_or("no forward certificate")?,
        back.certificate.ok_or("no reverse certificate")?,
    );
    let (x, y) = (engine(&a.start)?, engine(&fwd.end)?);
    ensure(cf.holds(2, x, y) && cb.holds(2, y, x) && x == y, || {
        format!("annulus ends {x}, {y}")
    })?;
    Ok(format!(
        "genus-one movie tight ({s} + 2 = {t}), annulus forces {x} = {y}"
    ))
}

fn positive(word: &[i32], strands: usize) -> LinkExpr {
    LinkExpr::PositiveDiagram {
        diagram: braid(word, strands),
    }
}

fn boxed(e: LinkExpr) -> Box<LinkExpr> {
    Box::new(e)
}

fn mixed_expressions() -> Vec<LinkExpr> {
    let trefoil = positive(&[1, 1, 1], 2);
    let hopf = positive(&[1, 1], 2);
    let t24 = positive(&[1, 1, 1, 1], 2);
    let t33 = positive(&[1, 2, 1, 2, 1, 2], 3);
    let fig8 = LinkExpr::EngineDiagram {
        diagram: figure_eight(),
    };
    let mirror = |e: &LinkExpr| LinkExpr::Mirror {
        child: boxed(e.clone()),
    };
    let change = |e: &LinkExpr, k| LinkExpr::CrossingChange {
        child: boxed(e.clone()),
        crossing: Some(k),
    };
    let union = |a: &LinkExpr, b: &LinkExpr| LinkExpr::DisjointUnion {
        children: vec![a.clone(), b.clone()],
    };
    let sum = |a: &LinkExpr, b: &LinkExpr| LinkExpr::ConnectSum {
        left: boxed(a.clone()),
        right: boxed(b.clone()),
        i1: 0,
        i2: 0,
    };
    vec![
        mirror(&trefoil),
        change(&trefoil, 0),
        change(&hopf, 1),
        change(&t24, 2),
        change(&t33, 0),
        change(&mirror(&trefoil), 1),
        mirror(&change(&t24, 0)),
        union(&trefoil, &mirror(&trefoil)),
        union(&hopf, &mirror(&hopf)),
        union(&fig8, &LinkExpr::Unknot),
        sum(&trefoil, &mirror(&trefoil)),
        sum(&trefoil, &fig8),
        sum(&mirror(&trefoil), &mirror(&trefoil)),
        sum(&hopf, &mirror(&trefoil)),
        change(&sum(&trefoil, &trefoil), 3),
        mirror(&union(&trefoil, &hopf)),
        union(&change(&hopf, 0), &mirror(&trefoil)),
        change(&union(&trefoil, &mirror(&trefoil)), 4),
        sum(&change(&t24, 1), &trefoil),
        mirror(&sum(&fig8, &LinkExpr::Unknot)),
    ]
}

fn criterion_9() -> Outcome {
    let exprs = mixed_expressions();
    let mut widths = 0;
    for (i, e) in exprs.iter().enumerate() {
        let v = sn_eval(e, 2).map_err(|err| format!("expression {i}: {err}"))?;
        let d = e
            .realize()
            .ok_or(format!("expression {i} has no diagram"))?;
        let s = engine(&d)?;
        ensure(v.contains(s), || {
            format!(
                "expression {i}: [{}, {}] misses engine value {s}",
                v.lo, v.hi
            )
        })?;
        widths += v.hi - v.lo;
    }
    Ok(format!(
        "{} expressions contain the engine value, total width {widths}",
        exprs.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("engine matches the positive closed form", criterion_1),
        ("unlink values", criterion_2),
        ("signs and mirror windows", criterion_3),
        ("structural properties on the corpus", criterion_4),
        ("crossing-change bound", criterion_5),
        ("torus genus and splitting numbers", criterion_6),
        ("additivity", criterion_7),
        ("cobordism certificates", criterion_8),
        ("interval soundness", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Interval evaluation of link expressions and the genus and splitting
//! bounds derived from them.

use num_integer::Integer;
use snlink::calculus::{
    g4_lower_bound, genus_positive, sn_eval, torus_g4, torus_split_schedule, torus_splitting,
    LinkExpr,
};
use snlink::corpus::figure_eight;
use snlink::notation::{parse_braid, torus_link};

fn main() {
    let trefoil = LinkExpr::PositiveDiagram {
        diagram: parse_braid(&[1, 1, 1], 2).unwrap(),
    };
    let exprs = [
        (
            "trefoil # mirror trefoil",
            LinkExpr::ConnectSum {
                left: Box::new(trefoil.clone()),
                right: Box::new(LinkExpr::Mirror {
                    child: Box::new(trefoil.clone()),
                }),
                i1: 0,
                i2: 0,
            },
        ),
        (
            "trefoil ⊔ figure-eight",
            LinkExpr::DisjointUnion {
                children: vec![
                    trefoil.clone(),
                    LinkExpr::EngineDiagram {
                        diagram: figure_eight(),
                    },
                ],
            },
        ),
        (
            "trefoil with one crossing changed",
            LinkExpr::CrossingChange {
                child: Box::new(trefoil.clone()),
                crossing: Some(0),
            },
        ),
    ];
    for (name, e) in &exprs {
        let l = e.components().unwrap();
        println!("{name}");
        for n in [2, 3, 5] {
            match sn_eval(e, n) {
                Ok(v) => println!(
                    "  n={n}: s_n in [{}, {}], g4 >= {}",
                    v.lo,
                    v.hi,
                    g4_lower_bound(&v, l)
                ),
                // Engine leaves are exact at n = 2 only.
                Err(err) => println!("  n={n}: {err}"),
            }
        }
        if let Some(rule) = sn_eval(e, 2).unwrap().trace.last() {
            println!("  last rule: {rule}");
        }
    }

    println!();
    println!(
        "{:<8} {:>3} {:>3} {:>4} {:>4}  schedule",
        "torus", "g4", "g3", "sp", "l"
    );
    for (p, q) in [(2, 3), (2, 4), (3, 3), (3, 4), (2, 6), (4, 6)] {
        let (g3, _) = genus_positive(&torus_link(p, q)).unwrap();
        let l = p.gcd(&q);
        let schedule = torus_split_schedule(l, p / l, q / l).map(|s| s.len().to_string());
        println!(
            "T({p},{q})  {:>3} {:>3} {:>4} {:>4}  {}",
            torus_g4(p as u64, q as u64),
            g3,
            torus_splitting(p as u64, q as u64),
            l,
            schedule.unwrap_or_else(|e| e.to_string())
        );
    }
}

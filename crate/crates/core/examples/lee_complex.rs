//! Builds the filtered complex of the positive Hopf link and walks through
//! its homology, canonical cycles and filtration grades.

use snlink::corpus::hopf_positive;
use snlink::lee::{canonical_cycle, h_cycle, low_generator, s2_of, FilteredComplex, Label};

fn main() {
    let d = hopf_positive();
    let c = FilteredComplex::build(&d).expect("two crossings fit the engine");
    println!(
        "Hopf+: {} crossings, writhe {}, {} generators",
        c.crossings(),
        c.writhe(),
        c.dimension()
    );
    println!(
        "d∘d = 0: {}, filtered: {}",
        c.check_d_squared(),
        c.check_filtration()
    );

    for h in c.degrees().collect::<Vec<_>>() {
        println!(
            "  h={h:>2}: chain rank {:>2}, homology rank {}",
            c.block_dimension(h),
            c.homology_rank(h)
        );
    }
    println!(
        "total homology dimension {} (2^l with l = 2)",
        c.homology_dimension()
    );

    for label in [Label::Plus, Label::Minus] {
        let g = canonical_cycle(&c, label);
        let q = c
            .qgr(&g.chain)
            .expect("canonical cycles are nonzero in homology");
        println!("g{label:?}: circle roots {:?}, qgr {q}", g.circle_labels);
    }
    for p in 0..2 {
        let h = h_cycle(&c, p);
        println!(
            "h{p}: qgr {}",
            c.qgr(&h.chain).expect("h-classes are nonzero")
        );
    }
    let (low, q) = low_generator(&c).expect("a low generator exists");
    println!("lowest h-class h{} at qgr {q}", low.p);
    println!("s2 = {}", s2_of(&c).expect("engine value"));
}

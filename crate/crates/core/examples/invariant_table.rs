//! s_n over a range of n for a few braid closures, next to the exact
//! engine value at n = 2.

use snlink::report::{engine_s2, invariant_report, invariant_table, DiagramSource};

fn main() {
    let inputs = [
        ("1 1 1", Some(2)),
        ("1 2 1 2 1 2", Some(3)),
        ("-1 -1 -1", Some(2)),
        ("1 -2 1 -2", Some(3)),
        ("1 1 -1", Some(2)),
    ];
    for (word, strands) in inputs {
        let source = DiagramSource::Braid {
            word: word.into(),
            strands,
        };
        let reports: Vec<_> = (2..=5)
            .map(|n| invariant_report(&source, n).expect("valid braid"))
            .collect();
        let engine = engine_s2(&source.build().expect("valid braid")).ok();
        println!("braid {word}");
        print!("{}", invariant_table(&reports, engine));
        println!();
    }
}

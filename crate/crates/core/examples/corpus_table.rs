//! Prints s₂ for every corpus diagram next to the closed form where one applies.

use std::time::Instant;

use snlink::corpus::{corpus, Family};
use snlink::lee::s2;

fn main() {
    println!(
        "{:<24} {:>3} {:>3} {:>3} {:>3} {:>5} {:>8} {:>9}",
        "diagram", "c", "r", "w", "l", "s2", "closed", "time"
    );
    for e in corpus() {
        let st = e.diagram.resolution_stats();
        let t = Instant::now();
        let s = s2(&e.diagram).expect("corpus diagrams fit the engine");
        let closed = match e.family {
            Family::PositiveBraid => format!("{}", -(st.c as i64 - st.r as i64 + 1)),
            Family::Unlink => format!("{}", st.l as i64 - 1),
            Family::Mixed => "-".into(),
        };
        println!(
            "{:<24} {:>3} {:>3} {:>3} {:>3} {:>5} {:>8} {:>8.1?}",
            e.name,
            st.c,
            st.r,
            st.w,
            st.l,
            s,
            closed,
            t.elapsed()
        );
    }
}

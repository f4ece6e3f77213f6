//! Runs a few property suites on the small corpus, then shows that an
//! injected fault is reported.

use snlink::verify::{run, Fault, VerifyOptions};

fn main() {
    for property in [
        "d-squared",
        "congruence",
        "crossing-change",
        "interval-soundness",
    ] {
        let opts = VerifyOptions {
            property: Some(property.into()),
            max_crossings: 6,
            ..VerifyOptions::default()
        };
        print!("{}", run(opts).expect("known property").summary());
    }
    let faulty = VerifyOptions {
        property: Some("d-squared".into()),
        max_crossings: 3,
        fault: Some(Fault::Differential),
        ..VerifyOptions::default()
    };
    print!("{}", run(faulty).expect("known property").summary());
}

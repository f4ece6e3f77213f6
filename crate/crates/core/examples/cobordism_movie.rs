//! Validates the genus-one trefoil movie and an annulus, prints their
//! ledgers and writes the movie as JSON lines.

use snlink::cobordism::{check_handle_order, slice_certificate, validate_movie, Movie};
use snlink::corpus::{trefoil_annulus_movie, trefoil_genus_one_movie};
use snlink::lee::s2;

fn show(name: &str, m: &Movie) {
    let ledger = validate_movie(m).expect("movie applies");
    println!("{name}: {} moves, chi = {}", m.moves.len(), ledger.chi);
    for step in &ledger.steps {
        println!(
            "  {:>2} {:<4} {:<13} components {}",
            step.index,
            step.kind,
            format!("{:?}", step.class),
            step.components
        );
    }
    println!("  fates {:?}", ledger.fate);
    println!("  order check: {:?}", check_handle_order(m));
    let (a, b) = (
        s2(&m.start).unwrap() as i64,
        s2(&ledger.end).unwrap() as i64,
    );
    match &ledger.certificate {
        Some(c) => println!(
            "  {} (s2: {a} -> {b}, holds: {})",
            c.statement,
            c.holds(2, a, b)
        ),
        None => println!("  no certificate"),
    }
}

fn main() {
    let m = trefoil_genus_one_movie();
    show("trefoil to unknot", &m);
    let sc = slice_certificate(&m).expect("ends in an unlink");
    println!(
        "  capped surface chi = {}, {} piece(s)",
        sc.chi_surface, sc.pieces
    );
    println!("  {}", sc.lower);
    println!("  {}", sc.upper);

    let a = trefoil_annulus_movie();
    show("annulus", &a);
    show(
        "annulus reversed",
        &a.reversed().expect("moves are invertible"),
    );

    println!();
    print!("{}", m.to_jsonl());
}

//! Canonical generator cycles at the oriented resolution and the invariant s₂.

use std::collections::VecDeque;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::complex::{Chain, EngineError, FilteredComplex};
use super::linalg::SparseVec;
use crate::diagram::LinkDiagram;

/// Root of x² − 1 assigned to the whole link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Label {
    Plus,
    Minus,
}

impl Label {
    pub fn value(self) -> i32 {
        match self {
            Label::Plus => 1,
            Label::Minus => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalClass {
    pub label: Label,
    /// Root carried by each circle of the oriented resolution.
    pub circle_labels: Vec<i32>,
    pub chain: Chain,
}

/// Part of the `Plus` canonical cycle whose monomials have degree ≡ p mod 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HClass {
    pub p: u8,
    pub chain: Chain,
}

/// Per-circle roots: circles meeting at a crossing get opposite roots, and
/// the first circle of each connected group gets the global label.
pub fn circle_labels(complex: &FilteredComplex, label: Label) -> Vec<i32> {
    let o = complex.oriented_vertex();
    let r = complex.circles(o);
    let mut adj = vec![Vec::new(); r];
    for k in 0..complex.crossings() {
        let (a, b) = (complex.circle_at(o, k, 0), complex.circle_at(o, k, 2));
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut labels = vec![0; r];
    for start in 0..r {
        if labels[start] != 0 {
            continue;
        }
        labels[start] = label.value();
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for &d in &adj[c] {
                if labels[d] == 0 {
                    labels[d] = -labels[c];
                    queue.push_back(d);
                }
            }
        }
    }
    labels
}

/// Coefficient of the monomial `m` in Π (x_c + ε_c): the product of ε_c over
/// circles absent from `m`.
fn coefficient(labels: &[i32], m: u32) -> i32 {
    labels
        .iter()
        .enumerate()
        .filter(|(c, _)| m >> c & 1 == 0)
        .map(|(_, &e)| e)
        .product()
}

fn oriented_chain(complex: &FilteredComplex, labels: &[i32], keep: impl Fn(u32) -> bool) -> Chain {
    let o = complex.oriented_vertex();
    let terms = (0..(1u32 << labels.len()))
        .filter(|&m| keep(m))
        .map(|m| (complex.index_of(o, m), BigInt::from(coefficient(labels, m))));
    Chain {
        h: 0,
        vector: SparseVec::from_terms(terms),
    }
}

pub fn canonical_cycle(complex: &FilteredComplex, label: Label) -> CanonicalClass {
    let circle_labels = circle_labels(complex, label);
    let chain = oriented_chain(complex, &circle_labels, |_| true);
    CanonicalClass {
        label,
        circle_labels,
        chain,
    }
}

pub fn h_cycle(complex: &FilteredComplex, p: u8) -> HClass {
    let labels = circle_labels(complex, Label::Plus);
    let chain = oriented_chain(complex, &labels, |m| m.count_ones() % 2 == p as u32 % 2);
    HClass { p: p % 2, chain }
}

/// s₂ from an already built complex.
pub fn s2_of(complex: &FilteredComplex) -> Result<i32, EngineError> {
    Ok(complex.qgr(&canonical_cycle(complex, Label::Plus).chain)? - 1)
}

pub fn s2(diagram: &LinkDiagram) -> Result<i32, EngineError> {
    s2_of(&FilteredComplex::build(diagram)?)
}

/// The h-class of least filtration grading, with that grading.
pub fn low_generator(complex: &FilteredComplex) -> Result<(HClass, i32), EngineError> {
    let h0 = h_cycle(complex, 0);
    let h1 = h_cycle(complex, 1);
    let q0 = complex.qgr(&h0.chain)?;
    let q1 = complex.qgr(&h1.chain)?;
    Ok(if q1 < q0 { (h1, q1) } else { (h0, q0) })
}

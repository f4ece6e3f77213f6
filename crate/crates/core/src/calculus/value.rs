use serde::{Deserialize, Serialize};

/// A value of sₙ known to lie in `[lo, hi]`, with the rules that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnValue {
    pub n: u32,
    pub lo: i64,
    pub hi: i64,
    pub trace: Vec<String>,
}

impl SnValue {
    pub fn exact(n: u32, value: i64, rule: impl Into<String>) -> Self {
        SnValue {
            n,
            lo: value,
            hi: value,
            trace: vec![rule.into()],
        }
    }

    pub fn interval(n: u32, lo: i64, hi: i64, trace: Vec<String>) -> Self {
        debug_assert!(lo <= hi);
        SnValue { n, lo, hi, trace }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn value(&self) -> Option<i64> {
        self.is_exact().then_some(self.lo)
    }

    pub fn contains(&self, s: i64) -> bool {
        self.lo <= s && s <= self.hi
    }

    /// The element of the interval closest to zero.
    pub fn least_magnitude(&self) -> i64 {
        if self.lo > 0 {
            self.lo
        } else if self.hi < 0 {
            self.hi
        } else {
            0
        }
    }

    pub(crate) fn with_rule(mut self, rule: impl Into<String>) -> Self {
        self.trace.push(rule.into());
        self
    }
}

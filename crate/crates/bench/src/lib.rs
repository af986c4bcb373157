//! Fixtures shared by the benchmarks.

use wittlab::automorphisms::{normalize_word, parse_word};
use wittlab::AutomorphismNF;

/// A fixed mix of every generator kind.
pub const SAMPLE_WORD: &str = "pi(-1) z(3,2) t(1/2) b(2,3) z(-2,5) pi(1) b(-1,1/3)";

pub fn sample_nf() -> AutomorphismNF {
    normalize_word(&parse_word(SAMPLE_WORD).expect("valid word")).expect("valid generators")
}

#[cfg(test)]
mod tests {
    #[test]
    fn sample_is_valid() {
        assert!(!super::sample_nf().is_identity());
    }
}

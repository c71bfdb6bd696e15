//! Shared fixtures for the solver benchmarks.

use candynim::{exponent_family, Game};

/// Positions ordered roughly by search size.
pub fn fixtures() -> Vec<(&'static str, Game)> {
    let mut out: Vec<(&'static str, Game)> = [
        ("four-pile", "[1,5,16,20]"),
        ("three-pile-96", "[31,42,53]"),
        ("seven-pile-94", "[1,2,4,8,16,42,53]"),
    ]
    .into_iter()
    .map(|(name, g)| (name, g.parse().expect("fixture parses")))
    .collect();
    out.push(("thirty-one-m11", exponent_family(5, 11).expect("valid family")));
    out
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixtures_are_p_positions() {
        assert!(super::fixtures().iter().all(|(_, g)| g.is_p()));
    }
}

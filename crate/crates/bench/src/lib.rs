//! Shared fixtures for the benchmarks.

use ambiclass_core::quadfield::is_fundamental_discriminant;

/// Fundamental discriminants `d` with `lo ≤ d ≤ hi`.
pub fn fundamental_range(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).filter(|&d| is_fundamental_discriminant(d)).collect()
}

/// Discriminants with a large 2-class group, for the filtration benchmarks.
pub const DEEP_FILTRATIONS: &[i64] = &[328, -9736, 1365, -84, -4420];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_fundamental() {
        assert!(DEEP_FILTRATIONS.iter().all(|&d| is_fundamental_discriminant(d)));
        assert_eq!(fundamental_range(-8, -3), vec![-8, -7, -4, -3]);
    }
}

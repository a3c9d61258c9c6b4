//! Benchmark inputs shared by the criterion benches.

use jacquet_core::{q, SparseMatrix};

/// Dense-ish integer matrix with a known rank deficiency: the last row is
/// the sum of the others.
pub fn rank_deficient(n: usize) -> SparseMatrix {
    let mut m = SparseMatrix::zero(n, n);
    for r in 0..n.saturating_sub(1) {
        for c in 0..n {
            let v = ((r * 7 + c * 3) % 11) as i64 - 5;
            if v != 0 {
                m.set(r, c, q(v));
            }
        }
    }
    if n > 0 {
        for c in 0..n {
            let sum = (0..n - 1).fold(q(0), |acc, r| acc + m.get(r, c));
            m.set(n - 1, c, sum);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use jacquet_core::exactla::rank;

    #[test]
    fn deficiency_is_at_least_one() {
        for n in [1, 4, 16] {
            assert!(rank(&rank_deficient(n)) < n);
        }
    }
}

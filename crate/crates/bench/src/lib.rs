//! Fixtures shared by the criterion benches.

use galcoh::IntMatrix;

/// Deterministic `rows x cols` matrix with entries in `-bound..=bound`.
pub fn dense_matrix(rows: usize, cols: usize, bound: i64, seed: u64) -> IntMatrix {
    let mut s = seed | 1;
    let span = 2 * bound as u64 + 1;
    let entries: Vec<i64> = (0..rows * cols)
        .map(|_| {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s % span) as i64 - bound
        })
        .collect();
    IntMatrix::from_i64(rows, cols, &entries)
}

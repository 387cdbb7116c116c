//! Shared fixtures for the benchmark targets.

use devhom::fincat::{poset_from_pairs, FinCategory};
use devhom::homalg::IntMatrix;
use num_bigint::BigInt;

/// A deterministic pseudo-random integer matrix (a fixed multiplicative
/// stream keeps benchmarks comparable across runs).
pub fn sample_matrix(rows: usize, cols: usize, seed: u64) -> IntMatrix {
    let mut state = seed | 1;
    let mut m = IntMatrix::zero(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let v = ((state >> 33) % 19) as i64 - 9;
            m.set(i, j, BigInt::from(v));
        }
    }
    m
}

/// The grid poset [n] x [n]: a loop-free category whose chain spaces grow
/// quickly enough to exercise the assembly and homology kernels.
pub fn grid_poset(n: usize) -> FinCategory {
    let elements: Vec<String> = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("g{i}x{j}")))
        .collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i + 1 < n {
                pairs.push((format!("g{i}x{j}"), format!("g{}x{j}", i + 1)));
            }
            if j + 1 < n {
                pairs.push((format!("g{i}x{j}"), format!("g{i}x{}", j + 1)));
            }
        }
    }
    poset_from_pairs(&elements, &pairs).expect("grid order is a poset")
}

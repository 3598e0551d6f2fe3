//! Independent rank oracle for the row-reduction code.
//!
//! Rank is recomputed from scratch as the size of the largest non-vanishing
//! minor, with determinants by cofactor expansion. Nothing here calls into
//! the library's elimination routines, so agreement is a real cross-check.

use hopfalgd::matrix::{kernel_basis, rank, Matrix};
use hopfalgd::scalar::Scalar;

fn det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Scalar::zero();
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Scalar>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let sgn = if j % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        acc += &(&(entry * &sgn) * &det(&minor));
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    for last in (k - 1)..n {
        for mut head in subsets(last, k - 1) {
            head.push(last);
            out.push(head);
        }
    }
    out
}

fn minor_rank(m: &Matrix) -> usize {
    let max = m.rows.min(m.cols);
    for k in (1..=max).rev() {
        for rs in subsets(m.rows, k) {
            for cs in subsets(m.cols, k) {
                let sub: Vec<Vec<Scalar>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m.at(i, j).clone()).collect())
                    .collect();
                if !det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// Deterministic pseudo-random small rationals; no RNG dependency needed.
fn wobble(seed: &mut u64) -> Scalar {
    *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let v = ((*seed >> 33) % 7) as i64 - 3; // -3..=3
    let d = ((*seed >> 13) % 2) as i64 + 1; // 1..=2
    Scalar::ratio(v, d)
}

#[test]
fn rref_rank_matches_minor_expansion_up_to_5x7() {
    let mut seed = 0xC0FFEE;
    for trial in 0..40 {
        let rows = 1 + trial % 5;
        let cols = 1 + (trial * 3) % 7;
        let mut m = Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, wobble(&mut seed));
            }
        }
        assert_eq!(rank(&m), minor_rank(&m), "rank disagreement on trial {trial}\n{m:?}");
    }
}

#[test]
fn rank_nullity_holds_on_random_matrices() {
    let mut seed = 0xBEEF;
    for trial in 0..25 {
        let rows = 2 + trial % 4;
        let cols = 2 + (trial * 5) % 6;
        let mut m = Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, wobble(&mut seed));
            }
        }
        assert_eq!(rank(&m) + kernel_basis(&m).len(), cols);
    }
}

#[test]
fn frozen_rank_examples() {
    let s = Scalar::from_int;
    // Rank 2: third row is the sum of the first two.
    let m = Matrix::from_rows(vec![
        vec![s(1), s(0), s(2), s(-1)],
        vec![s(0), s(3), s(1), s(1)],
        vec![s(1), s(3), s(3), s(0)],
    ]);
    assert_eq!(minor_rank(&m), 2);
    assert_eq!(rank(&m), 2);
    // Full-rank 3x3 with fractions.
    let m2 = Matrix::from_rows(vec![
        vec![Scalar::ratio(1, 2), s(0), s(1)],
        vec![s(0), Scalar::ratio(2, 3), s(0)],
        vec![s(1), s(1), s(1)],
    ]);
    assert_eq!(minor_rank(&m2), 3);
    assert_eq!(rank(&m2), 3);
}

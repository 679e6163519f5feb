//! Rank over the rationals by fraction-free (Bareiss) elimination.
//!
//! Boundary matrices have integer entries, so the rational rank equals the
//! integer rank. One-step Bareiss keeps every intermediate value an exact
//! integer minor; big integers absorb the growth.

use num_bigint::BigInt;

/// Rank of an integer matrix given as column-major `(row, value)` pairs.
pub fn rank_rational(rows: usize, cols: usize, columns: &[Vec<(usize, i8)>]) -> usize {
    if rows == 0 || cols == 0 {
        return 0;
    }
    let zero = BigInt::from(0);
    let mut a: Vec<Vec<BigInt>> = vec![vec![zero.clone(); cols]; rows];
    for (c, col) in columns.iter().enumerate() {
        for &(r, v) in col {
            a[r][c] += BigInt::from(v);
        }
    }

    let mut prev = BigInt::from(1);
    let mut rank = 0;
    let mut pv = 0; // pivot row cursor
    for c in 0..cols {
        let Some(pr) = (pv..rows).find(|&r| a[r][c] != zero) else {
            continue;
        };
        a.swap(pv, pr);
        for r in (pv + 1)..rows {
            for j in (c + 1)..cols {
                let num = &a[r][j] * &a[pv][c] - &a[r][c] * &a[pv][j];
                a[r][j] = num / &prev;
            }
            a[r][c] = zero.clone();
        }
        prev = a[pv][c].clone();
        rank += 1;
        pv += 1;
        if pv == rows {
            break;
        }
    }
    rank
}

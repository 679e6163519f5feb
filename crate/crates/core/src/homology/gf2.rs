//! Rank of a sparse 0/1 matrix over GF(2) by bitset column echelon.

/// Packed column over `rows` bits.
#[derive(Clone)]
struct BitColumn {
    words: Vec<u64>,
}

impl BitColumn {
    fn from_rows(rows: usize, set: &[usize]) -> Self {
        let mut words = vec![0u64; rows.div_ceil(64)];
        for &r in set {
            words[r / 64] ^= 1u64 << (r % 64);
        }
        BitColumn { words }
    }

    fn lowest_set(&self) -> Option<usize> {
        for (w, &word) in self.words.iter().enumerate() {
            if word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
        }
        None
    }

    fn xor_assign(&mut self, other: &BitColumn) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }
}

/// Rank over GF(2). Each column lists its set row indices (signs are
/// irrelevant mod 2).
pub fn rank_gf2(rows: usize, columns: &[Vec<usize>]) -> usize {
    if rows == 0 {
        return 0;
    }
    // pivot row -> reduced column owning it
    let mut pivots: Vec<Option<BitColumn>> = vec![None; rows];
    let mut rank = 0;
    for col in columns {
        let mut cur = BitColumn::from_rows(rows, col);
        while let Some(low) = cur.lowest_set() {
            match &pivots[low] {
                Some(pivot) => cur.xor_assign(pivot),
                None => {
                    pivots[low] = Some(cur);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity() {
        let cols: Vec<Vec<usize>> = (0..5).map(|i| vec![i]).collect();
        assert_eq!(rank_gf2(5, &cols), 5);
    }

    #[test]
    fn dependent_columns() {
        // col3 = col0 + col1 over GF(2)
        let cols = vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 1, 1, 2, 0, 2]];
        assert_eq!(rank_gf2(3, &cols), 2);
    }

    #[test]
    fn zero_matrix() {
        let cols = vec![vec![], vec![]];
        assert_eq!(rank_gf2(4, &cols), 0);
        assert_eq!(rank_gf2(0, &[]), 0);
    }

    #[test]
    fn duplicate_entries_cancel() {
        // A row listed twice is 0 mod 2.
        let cols = vec![vec![2, 2]];
        assert_eq!(rank_gf2(3, &cols), 0);
    }

    #[test]
    fn matches_dense_elimination_on_random_matrices() {
        // Independent oracle: dense Gauss-Jordan over GF(2) on bool matrices.
        #[allow(clippy::needless_range_loop)]
        fn dense_rank(mut m: Vec<Vec<bool>>) -> usize {
            let rows = m.len();
            if rows == 0 {
                return 0;
            }
            let cols = m[0].len();
            let mut rank = 0;
            let mut row = 0;
            for c in 0..cols {
                if let Some(p) = (row..rows).find(|&r| m[r][c]) {
                    m.swap(row, p);
                    for r in 0..rows {
                        if r != row && m[r][c] {
                            for j in 0..cols {
                                m[r][j] ^= m[row][j];
                            }
                        }
                    }
                    rank += 1;
                    row += 1;
                    if row == rows {
                        break;
                    }
                }
            }
            rank
        }

        let mut state = 0x1234_5678u64;
        for trial in 0..50 {
            let rows = 1 + (trial % 9);
            let cols = 1 + (trial * 7 % 11);
            let mut dense = vec![vec![false; cols]; rows];
            let mut sparse: Vec<Vec<usize>> = vec![Vec::new(); cols];
            for (r, row) in dense.iter_mut().enumerate() {
                for (c, cell) in row.iter_mut().enumerate() {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if state >> 63 == 1 {
                        *cell = true;
                        sparse[c].push(r);
                    }
                }
            }
            assert_eq!(rank_gf2(rows, &sparse), dense_rank(dense), "trial {trial}");
        }
    }
}

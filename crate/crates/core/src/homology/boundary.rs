//! Sparse boundary matrices of a snapshot.
//!
//! The matrix for dimension `i` has one column per `i`-face and one row per
//! `(i-1)`-face, with the alternating-sign incidence entries. Dimension 0
//! maps every vertex to the empty face through a single augmentation row,
//! which is what makes the Betti numbers reduced.

use crate::complex::{ComplexSnapshot, FaceId};
use std::collections::HashMap;

/// Column-major sparse boundary matrix with entries in {-1, +1}.
#[derive(Debug, Clone)]
pub struct BoundaryMatrix {
    pub dimension: usize,
    pub rows: usize,
    pub cols: usize,
    /// Per column: `(row, sign)` pairs in row order.
    pub columns: Vec<Vec<(usize, i8)>>,
}

impl BoundaryMatrix {
    /// The boundary operator from `i`-chains to `(i-1)`-chains of the
    /// snapshot. Faces index rows and columns in lexicographic order.
    pub fn of_snapshot(snapshot: &ComplexSnapshot, i: usize) -> Self {
        let faces = snapshot.faces(i);
        if i == 0 {
            // Augmentation: every vertex maps to the empty face.
            return BoundaryMatrix {
                dimension: 0,
                rows: 1,
                cols: faces.len(),
                columns: faces.iter().map(|_| vec![(0, 1)]).collect(),
            };
        }
        let below = snapshot.faces(i - 1);
        let row_index: HashMap<&FaceId, usize> =
            below.iter().enumerate().map(|(idx, f)| (f, idx)).collect();
        let columns = faces
            .iter()
            .map(|face| {
                let mut col: Vec<(usize, i8)> = face
                    .subfaces()
                    .enumerate()
                    .map(|(skip, sf)| {
                        let row = *row_index
                            .get(&sf)
                            .expect("snapshot closure guarantees subfaces are present");
                        let sign = if skip % 2 == 0 { 1 } else { -1 };
                        (row, sign)
                    })
                    .collect();
                col.sort_unstable_by_key(|&(row, _)| row);
                col
            })
            .collect();
        BoundaryMatrix { dimension: i, rows: below.len(), cols: faces.len(), columns }
    }

    /// Integer composition with the next-lower boundary: all coefficients of
    /// `d_{i-1} . d_i` must vanish. Checking over the integers covers the
    /// rational field; reducing the same coefficients mod 2 covers GF(2).
    pub fn composes_to_zero_with(&self, lower: &BoundaryMatrix) -> bool {
        assert_eq!(lower.cols, self.rows, "boundary dimensions must chain");
        for col in &self.columns {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(mid, sign) in col {
                for &(row, lower_sign) in &lower.columns[mid] {
                    *acc.entry(row).or_insert(0) += sign as i64 * lower_sign as i64;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return false;
            }
        }
        true
    }
}

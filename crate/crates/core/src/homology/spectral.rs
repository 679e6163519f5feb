//! Normalized graph Laplacian spectral gap.

use crate::complex::FaceId;
use nalgebra::DMatrix;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("graph has an isolated vertex ({0}); the normalized Laplacian is undefined")]
    IsolatedVertex(u32),
    #[error("graph needs at least two vertices for a second eigenvalue")]
    TooSmall,
}

/// An undirected simple graph on explicit vertex labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    pub vertices: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
}

impl Graph {
    pub fn new(mut vertices: Vec<u32>, mut edges: Vec<(u32, u32)>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Graph { vertices, edges }
    }

    pub fn complete(m: u32) -> Self {
        let vertices: Vec<u32> = (1..=m).collect();
        let mut edges = Vec::new();
        for a in 1..=m {
            for b in (a + 1)..=m {
                edges.push((a, b));
            }
        }
        Graph { vertices, edges }
    }

    /// Graph view of a one-dimensional face set (vertices and edges).
    pub fn from_faces(vertex_faces: &[FaceId], edge_faces: &[FaceId]) -> Self {
        let vertices = vertex_faces.iter().map(|f| f.vertices()[0]).collect();
        let edges = edge_faces
            .iter()
            .map(|f| (f.vertices()[0], f.vertices()[1]))
            .collect();
        Graph::new(vertices, edges)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let index: HashMap<u32, usize> =
            self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            let (ia, ib) = (index[&a], index[&b]);
            adj[ia].push(ib);
            adj[ib].push(ia);
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertices.len()
    }
}

/// Second smallest eigenvalue of `I - D^{-1/2} A D^{-1/2}`, by dense
/// symmetric eigendecomposition. Links are small, so dense is the right
/// tool. Rejects isolated vertices (zero degree breaks the normalization).
pub fn normalized_laplacian_lambda2(graph: &Graph) -> Result<f64, SpectralError> {
    let m = graph.vertices.len();
    if m < 2 {
        return Err(SpectralError::TooSmall);
    }
    let index: HashMap<u32, usize> =
        graph.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut degree = vec![0usize; m];
    for &(a, b) in &graph.edges {
        degree[index[&a]] += 1;
        degree[index[&b]] += 1;
    }
    if let Some(pos) = degree.iter().position(|&d| d == 0) {
        return Err(SpectralError::IsolatedVertex(graph.vertices[pos]));
    }
    let mut lap = DMatrix::<f64>::identity(m, m);
    for &(a, b) in &graph.edges {
        let (ia, ib) = (index[&a], index[&b]);
        let w = -1.0 / ((degree[ia] * degree[ib]) as f64).sqrt();
        lap[(ia, ib)] = w;
        lap[(ib, ia)] = w;
    }
    let mut eigen = lap.symmetric_eigenvalues().as_slice().to_vec();
    eigen.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(eigen[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_gap() {
        // lambda_2(K_m) = m / (m - 1)
        for m in 3..=12u32 {
            let l2 = normalized_laplacian_lambda2(&Graph::complete(m)).unwrap();
            let expected = m as f64 / (m as f64 - 1.0);
            assert!((l2 - expected).abs() < 1e-9, "K_{m}: {l2} vs {expected}");
        }
    }

    #[test]
    fn path_graph_gap() {
        // Normalized Laplacian of the 3-path has spectrum {0, 1, 2}.
        let g = Graph::new(vec![1, 2, 3], vec![(1, 2), (2, 3)]);
        let l2 = normalized_laplacian_lambda2(&g).unwrap();
        assert!((l2 - 1.0).abs() < 1e-9, "{l2}");
    }

    #[test]
    fn disconnected_graph_has_zero_gap() {
        let g = Graph::new(vec![1, 2, 3, 4], vec![(1, 2), (3, 4)]);
        let l2 = normalized_laplacian_lambda2(&g).unwrap();
        assert!(l2.abs() < 1e-9, "{l2}");
        assert!(!g.is_connected());
    }

    #[test]
    fn isolated_vertex_rejected() {
        let g = Graph::new(vec![1, 2, 3], vec![(1, 2)]);
        assert_eq!(
            normalized_laplacian_lambda2(&g).unwrap_err(),
            SpectralError::IsolatedVertex(3)
        );
    }

    #[test]
    fn connectivity() {
        assert!(Graph::complete(5).is_connected());
        assert!(Graph::new(vec![7], vec![]).is_connected());
        assert!(!Graph::new(vec![], vec![]).is_connected());
    }
}

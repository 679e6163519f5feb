//! Exact topological invariants of a snapshot.
//!
//! Reduced Betti numbers come from rank-nullity over the boundary matrices:
//! `betti_j = f_j - rank d_j - rank d_{j+1}`, with the augmentation row
//! making `betti_0 = components - 1`. GF(2) with bitset elimination is the
//! fast path; fraction-free integer elimination gives the rational numbers,
//! and a disagreement between the two is how torsion is detected. The
//! decomposition into maximal strongly connected pieces, links, free faces
//! and the Laplacian spectral gap support the vanishing diagnostic.

mod boundary;
mod exact;
mod gf2;
mod spectral;

pub use boundary::BoundaryMatrix;
pub use spectral::{normalized_laplacian_lambda2, Graph, SpectralError};

use crate::complex::{ComplexSnapshot, FaceId};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("snapshot was truncated at its dimension cap; exact invariants unavailable")]
    TruncatedSnapshot,
    #[error("face {0} is not in the snapshot")]
    FaceAbsent(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientField {
    Gf2,
    Rational,
}

/// Reduced Betti numbers plus the Euler characteristic computed two ways.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BettiProfile {
    pub betti: Vec<i64>,
    pub chi_faces: i64,
    pub chi_betti: i64,
    pub field: CoefficientField,
}

impl BettiProfile {
    pub fn betti_at(&self, dim: usize) -> i64 {
        self.betti.get(dim).copied().unwrap_or(0)
    }
}

fn boundary_rank(matrix: &BoundaryMatrix, field: CoefficientField) -> usize {
    match field {
        CoefficientField::Gf2 => {
            let cols: Vec<Vec<usize>> = matrix
                .columns
                .iter()
                .map(|col| col.iter().map(|&(r, _)| r).collect())
                .collect();
            gf2::rank_gf2(matrix.rows, &cols)
        }
        CoefficientField::Rational => {
            exact::rank_rational(matrix.rows, matrix.cols, &matrix.columns)
        }
    }
}

/// Reduced Betti numbers of the snapshot over the chosen field.
pub fn betti_numbers(snapshot: &ComplexSnapshot, field: CoefficientField) -> BettiProfile {
    let top = snapshot.top_dimension();
    // ranks[i] = rank of d_i; d_0 is the augmentation, d_{top+1} = 0.
    let mut ranks = Vec::with_capacity(top + 2);
    ranks.push(if snapshot.face_count(0) > 0 { 1 } else { 0 });
    for i in 1..=top {
        ranks.push(boundary_rank(&BoundaryMatrix::of_snapshot(snapshot, i), field));
    }
    ranks.push(0);
    let betti: Vec<i64> = (0..=top)
        .map(|j| snapshot.face_count(j) as i64 - ranks[j] as i64 - ranks[j + 1] as i64)
        .collect();
    let chi_faces = snapshot.euler_characteristic_faces();
    let chi_betti = 1 + betti
        .iter()
        .enumerate()
        .map(|(j, &b)| if j % 2 == 0 { b } else { -b })
        .sum::<i64>();
    BettiProfile { betti, chi_faces, chi_betti, field }
}

/// As [`betti_numbers`], but refuses snapshots that were capped below their
/// true top dimension.
pub fn exact_betti_numbers(
    snapshot: &ComplexSnapshot,
    field: CoefficientField,
) -> Result<BettiProfile, HomologyError> {
    if snapshot.truncated() {
        return Err(HomologyError::TruncatedSnapshot);
    }
    Ok(betti_numbers(snapshot, field))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerRoute {
    Faces,
    Betti,
}

/// Euler characteristic through either route; the two agree exactly.
pub fn euler_characteristic(
    snapshot: &ComplexSnapshot,
    route: EulerRoute,
    field: CoefficientField,
) -> i64 {
    match route {
        EulerRoute::Faces => snapshot.euler_characteristic_faces(),
        EulerRoute::Betti => betti_numbers(snapshot, field).chi_betti,
    }
}

/// Both coefficient fields at once; the boolean flags a discrepancy, i.e.
/// 2-torsion in some homology group.
pub fn betti_both_fields(snapshot: &ComplexSnapshot) -> (BettiProfile, BettiProfile, bool) {
    let gf2 = betti_numbers(snapshot, CoefficientField::Gf2);
    let rational = betti_numbers(snapshot, CoefficientField::Rational);
    let torsion = gf2.betti != rational.betti;
    (gf2, rational, torsion)
}

/// Morse sandwich `f_k - f_{k+1} - f_{k-1} <= betti_k <= f_k` at every
/// dimension, with `f_{-1} = 1` for the reduced convention.
pub fn morse_sandwich_holds(snapshot: &ComplexSnapshot, profile: &BettiProfile) -> bool {
    (0..=snapshot.top_dimension()).all(|k| {
        let f_k = snapshot.face_count(k) as i64;
        let f_up = snapshot.face_count(k + 1) as i64;
        let f_down = if k == 0 { 1 } else { snapshot.face_count(k - 1) as i64 };
        let b = profile.betti_at(k);
        f_k - f_up - f_down <= b && b <= f_k
    })
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// One maximal strongly connected piece of order `ell`.
#[derive(Debug, Clone)]
pub struct SccComponent {
    pub vertices: Vec<u32>,
    /// Faces per dimension, a downward-closed subcomplex.
    pub faces: Vec<Vec<FaceId>>,
    pub betti_ell: i64,
}

/// Decomposition of a snapshot into maximal `ell`-strongly connected
/// subcomplexes: equivalence classes of `ell`-faces under chaining through
/// `(ell-1)`-dimensional intersections, each closed under all simplices
/// supported on it. Faces supporting no `ell`-face form the remainder.
#[derive(Debug, Clone)]
pub struct SccDecomposition {
    pub order: usize,
    pub components: Vec<SccComponent>,
    pub remainder: Vec<FaceId>,
}

pub fn scc_decomposition(
    snapshot: &ComplexSnapshot,
    ell: usize,
    field: CoefficientField,
) -> SccDecomposition {
    assert!(ell >= 1, "order must be at least 1");
    let ell_faces = snapshot.faces(ell);
    if ell_faces.is_empty() {
        return SccDecomposition {
            order: ell,
            components: Vec::new(),
            remainder: snapshot.all_faces().cloned().collect(),
        };
    }

    let index: HashMap<&FaceId, usize> =
        ell_faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut uf = UnionFind::new(ell_faces.len());
    // Two ell-faces chain exactly when they share an (ell-1)-subface.
    let mut buckets: HashMap<FaceId, usize> = HashMap::new();
    for (i, face) in ell_faces.iter().enumerate() {
        for sub in face.subfaces() {
            match buckets.entry(sub) {
                std::collections::hash_map::Entry::Occupied(e) => uf.union(*e.get(), i),
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(i);
                }
            }
        }
    }

    // Every simplex of dimension >= ell joins the class of its ell-subfaces
    // (they all chain through the simplex itself); closing downward adds all
    // subfaces of everything assigned.
    let mut class_faces: BTreeMap<usize, BTreeSet<FaceId>> = BTreeMap::new();
    for dim in ell..=snapshot.top_dimension() {
        for face in snapshot.faces(dim) {
            let witness = FaceId::new(face.vertices()[..=ell].to_vec()).unwrap();
            debug_assert!(snapshot.contains(&witness));
            let root = uf.find(index[&witness]);
            let set = class_faces.entry(root).or_default();
            // Downward closure of this face via breadth-first subface walk.
            let mut stack = vec![face.clone()];
            while let Some(f) = stack.pop() {
                if !set.insert(f.clone()) {
                    continue;
                }
                if f.dimension() > 0 {
                    stack.extend(f.subfaces());
                }
            }
        }
    }

    // Deterministic component order: by smallest ell-face of the class.
    let mut roots: Vec<(FaceId, usize)> = class_faces
        .keys()
        .map(|&root| {
            let min_face = ell_faces
                .iter()
                .filter(|f| uf.find(index[*f]) == root)
                .min()
                .unwrap()
                .clone();
            (min_face, root)
        })
        .collect();
    roots.sort_unstable();

    let mut assigned: BTreeSet<FaceId> = BTreeSet::new();
    let mut components = Vec::with_capacity(roots.len());
    for (_, root) in roots {
        let set = &class_faces[&root];
        assigned.extend(set.iter().cloned());
        let top = set.iter().map(|f| f.dimension()).max().unwrap();
        let mut faces: Vec<Vec<FaceId>> = vec![Vec::new(); top + 1];
        for f in set {
            faces[f.dimension()].push(f.clone());
        }
        let vertices: Vec<u32> = faces[0].iter().map(|f| f.vertices()[0]).collect();
        let sub = ComplexSnapshot::from_faces(snapshot.n(), snapshot.time(), faces.clone())
            .expect("component is a downward-closed subcomplex");
        let betti_ell = betti_numbers(&sub, field).betti_at(ell);
        components.push(SccComponent { vertices, faces, betti_ell });
    }

    let remainder: Vec<FaceId> = snapshot
        .all_faces()
        .filter(|f| !assigned.contains(f))
        .cloned()
        .collect();
    SccDecomposition { order: ell, components, remainder }
}

/// Sum of component Betti numbers in dimension `ell`; equals the global one.
pub fn betti_via_decomposition(
    snapshot: &ComplexSnapshot,
    ell: usize,
    field: CoefficientField,
) -> i64 {
    scc_decomposition(snapshot, ell, field)
        .components
        .iter()
        .map(|c| c.betti_ell)
        .sum()
}

/// The link of a face: all faces disjoint from it that join with it to a
/// face of the snapshot. A downward-closed complex in its own right.
#[derive(Debug, Clone, PartialEq)]
pub struct Link {
    pub faces: Vec<Vec<FaceId>>,
}

impl Link {
    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn top_dimension(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn face_count(&self, dim: usize) -> usize {
        self.faces.get(dim).map_or(0, |l| l.len())
    }

    /// Graph view, available when the link is at most one-dimensional.
    pub fn as_graph(&self) -> Option<Graph> {
        if self.faces.len() > 2 {
            return None;
        }
        let empty = Vec::new();
        Some(Graph::from_faces(
            self.faces.first().unwrap_or(&empty),
            self.faces.get(1).unwrap_or(&empty),
        ))
    }
}

pub fn link_of(snapshot: &ComplexSnapshot, face: &FaceId) -> Result<Link, HomologyError> {
    if !snapshot.contains(face) {
        return Err(HomologyError::FaceAbsent(face.to_string()));
    }
    let mut levels: Vec<Vec<FaceId>> = Vec::new();
    for dim in (face.dimension() + 1)..=snapshot.top_dimension() {
        for cand in snapshot.faces(dim) {
            if !cand.contains(face) {
                continue;
            }
            let rest: Vec<u32> = cand
                .vertices()
                .iter()
                .copied()
                .filter(|v| !face.vertices().contains(v))
                .collect();
            let link_face = FaceId::new(rest).expect("proper coface leaves vertices");
            let d = link_face.dimension();
            if levels.len() <= d {
                levels.resize(d + 1, Vec::new());
            }
            levels[d].push(link_face);
        }
    }
    for level in &mut levels {
        level.sort_unstable();
        level.dedup();
    }
    Ok(Link { faces: levels })
}

/// Per-link record in a [`VanishingReport`].
#[derive(Debug, Clone, Serialize)]
pub struct LinkCheck {
    pub face: FaceId,
    pub connected: bool,
    pub lambda2: Option<f64>,
    pub passes: bool,
}

/// Outcome of the spectral-gap vanishing diagnostic at dimension `k`.
///
/// When the `k`-skeleton is pure and every `(k-2)`-face has a connected link
/// with `lambda_2 > 1 - 1/k`, cohomology in degree `k-1` vanishes over the
/// rationals, so the reduced Betti number must be zero; the report carries
/// the independently computed value as confirmation.
#[derive(Debug, Clone, Serialize)]
pub struct VanishingReport {
    pub k: usize,
    pub pure: bool,
    pub free_faces: Vec<FaceId>,
    pub links: Vec<LinkCheck>,
    pub applicable: bool,
    pub betti_k_minus_1: i64,
    pub confirmed: Option<bool>,
}

pub fn vanishing_diagnostic(snapshot: &ComplexSnapshot, k: usize) -> VanishingReport {
    assert!(k >= 2, "the diagnostic needs k >= 2");
    let skel = snapshot.skeleton(k);
    let has_top = skel.face_count(k) > 0;

    // Purity: every face of dimension < k sits inside some k-face.
    let mut covered: BTreeSet<FaceId> = BTreeSet::new();
    for face in skel.faces(k) {
        let mut stack = vec![face.clone()];
        while let Some(f) = stack.pop() {
            if !covered.insert(f.clone()) {
                continue;
            }
            if f.dimension() > 0 {
                stack.extend(f.subfaces());
            }
        }
    }
    let pure = has_top
        && (0..k).all(|dim| skel.faces(dim).iter().all(|f| covered.contains(f)));
    let free_faces: Vec<FaceId> = if k == 0 {
        Vec::new()
    } else {
        skel.faces(k - 1)
            .iter()
            .filter(|f| !covered.contains(*f))
            .cloned()
            .collect()
    };

    let threshold = 1.0 - 1.0 / k as f64;
    let mut links = Vec::new();
    for face in skel.faces(k - 2) {
        let link = link_of(&skel, face).expect("face from the snapshot");
        let (connected, lambda2) = match link.as_graph() {
            Some(g) if !g.vertices.is_empty() => {
                let connected = g.is_connected();
                let lambda2 = normalized_laplacian_lambda2(&g).ok();
                (connected, lambda2)
            }
            _ => (false, None),
        };
        let passes = connected && lambda2.is_some_and(|l| l > threshold);
        links.push(LinkCheck { face: face.clone(), connected, lambda2, passes });
    }

    let applicable = pure && has_top && links.iter().all(|l| l.passes);
    let betti_k_minus_1 = betti_numbers(&skel, CoefficientField::Rational).betti_at(k - 1);
    let confirmed = if applicable { Some(betti_k_minus_1 == 0) } else { None };
    VanishingReport { k, pure, free_faces, links, applicable, betti_k_minus_1, confirmed }
}

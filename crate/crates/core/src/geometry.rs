//! Tetrahedra from edge lengths: existence classification through the
//! Cayley-Menger determinant, an explicit embedding, outward face normals,
//! signed dihedral angles, the phase `S = Σ J_r ψ_r`, and finite-difference
//! residuals for the identities that make the space of tetrahedra a
//! Lagrangian manifold.
//!
//! # Labeling
//!
//! Vertices are `A B C D`; the six edges are
//!
//! ```text
//! 1 = AB   2 = AC   3 = BC   4 = CD   5 = BD   6 = AD
//! ```
//!
//! and the four faces carry the edge triples `{1,2,3} = ABC`,
//! `{1,5,6} = ABD`, `{2,6,4} = ACD`, `{3,4,5} = BCD` — the same triad layout
//! as the Wigner 6j-symbol.
//!
//! # Sign conventions
//!
//! The dihedral angle `ψ_r` at edge `r` is the angle between the *outward*
//! normals of the two faces meeting there (`arccos(−1/3) ≈ 1.9106` for the
//! regular tetrahedron), taken positive for positively oriented tetrahedra
//! and negated under spatial inversion. At flat shapes the angles are 0 or π
//! and every `ψ_r` changes sign smoothly (mod 2π) across the flat stratum.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Vec3;

/// Edge `r` joins `EDGE_VERTICES[r]`, with vertices `A=0, B=1, C=2, D=3`.
pub const EDGE_VERTICES: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 2), (2, 3), (1, 3), (0, 3)];

/// Vertex triples of the four faces `ABC, ABD, ACD, BCD`.
pub const FACE_VERTICES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];

/// Edges bounding each face, in the order of the 6j triads
/// `{123}, {156}, {264}, {345}` (0-based edge ids).
pub const FACE_EDGES: [[usize; 3]; 4] = [[0, 1, 2], [0, 4, 5], [1, 5, 3], [2, 3, 4]];

/// The two faces meeting at each edge.
pub const EDGE_FACES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (1, 3), (1, 2)];

/// Face whose oriented boundary carries the unprimed edge vector `J_r`.
pub const UNPRIMED_FACE: [usize; 6] = [0, 0, 0, 2, 3, 1];

/// Face whose oriented boundary carries the primed edge vector `J'_r`.
pub const PRIMED_FACE: [usize; 6] = [1, 2, 3, 3, 1, 2];

/// Flat band for the normalized Cayley-Menger determinant: shapes with
/// `288V² ≤ REL_VOL_TOL·(mean edge)⁶` are treated as flat. The floor is set
/// by f64 quantization of the input lengths (squaring costs ~4e-16
/// relative), not by the determinant evaluation itself.
pub const REL_VOL_TOL: f64 = 1e-12;

/// Degenerate-face band for the normalized Heron form:
/// `16A² ≤ REL_FACE_TOL·(mean edge)⁴`.
pub const REL_FACE_TOL: f64 = 1e-13;

/// Relative tolerance on reproduced edge lengths in [`embed`].
pub const EMBED_LENGTH_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("edge lengths must be finite and nonnegative (edge {0})")]
    InvalidLength(usize),
    #[error("no tetrahedron exists with these edge lengths")]
    Nonexistent,
    #[error("face {0} is degenerate; dihedral angles are undefined")]
    DegenerateFace(usize),
    #[error("finite-difference step along edge {edge} ({sign:+}) leaves the existence region")]
    PerturbationExitsExistence { edge: usize, sign: i8 },
}

/// Six edge lengths `J_1..J_6` in the fixed labeling above.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeLengths(pub [f64; 6]);

impl EdgeLengths {
    pub fn new(j: [f64; 6]) -> Result<Self, GeometryError> {
        for (r, v) in j.iter().enumerate() {
            if !v.is_finite() || *v < 0.0 {
                return Err(GeometryError::InvalidLength(r));
            }
        }
        Ok(EdgeLengths(j))
    }

    pub fn regular(a: f64) -> Self {
        EdgeLengths([a; 6])
    }

    pub fn get(&self) -> [f64; 6] {
        self.0
    }

    pub fn perturbed(&self, r: usize, delta: f64) -> Result<Self, GeometryError> {
        let mut j = self.0;
        j[r] += delta;
        EdgeLengths::new(j)
    }
}

pub fn mean_edge(edges: &EdgeLengths) -> f64 {
    edges.0.iter().sum::<f64>() / 6.0
}

/// Default finite-difference step `1e-5 · (mean edge)`: small enough for
/// O(h²) truncation to clear the 1e-5 residual contracts, large enough that
/// roundoff in ψ does not dominate.
pub fn default_step(edges: &EdgeLengths) -> f64 {
    1e-5 * mean_edge(edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExistenceClass {
    Nondegenerate,
    Flat,
    DegenerateFace,
    Nonexistent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(&self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }
}

/// Heron form `16A²` for the face `f`, from edge lengths alone. Negative
/// exactly when the triangle inequality fails.
pub fn face_heron16(edges: &EdgeLengths, f: usize) -> f64 {
    let [e0, e1, e2] = FACE_EDGES[f];
    let (a2, b2, c2) = (
        edges.0[e0] * edges.0[e0],
        edges.0[e1] * edges.0[e1],
        edges.0[e2] * edges.0[e2],
    );
    2.0 * (a2 * b2 + b2 * c2 + c2 * a2) - a2 * a2 - b2 * b2 - c2 * c2
}

/// Cayley-Menger determinant for four points, normalized so that the value
/// is `288 V²` when a tetrahedron with these edge lengths exists.
pub fn cayley_menger_det(edges: &EdgeLengths) -> f64 {
    // Squared distances d[i][j] between vertices i, j.
    let mut d = [[0.0; 4]; 4];
    for (r, &(i, j)) in EDGE_VERTICES.iter().enumerate() {
        let s = edges.0[r] * edges.0[r];
        d[i][j] = s;
        d[j][i] = s;
    }
    let mut m = [[0.0f64; 5]; 5];
    for i in 1..5 {
        m[0][i] = 1.0;
        m[i][0] = 1.0;
    }
    for i in 0..4 {
        for j in 0..4 {
            m[i + 1][j + 1] = d[i][j];
        }
    }
    det5(m)
}

fn det5(mut m: [[f64; 5]; 5]) -> f64 {
    // Gaussian elimination with partial pivoting.
    let mut det = 1.0;
    for col in 0..5 {
        let mut piv = col;
        for row in col + 1..5 {
            if m[row][col].abs() > m[piv][col].abs() {
                piv = row;
            }
        }
        if m[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..5 {
            let f = m[row][col] / m[col][col];
            for k in col..5 {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    det
}

/// Classify six edge lengths by the shape they bound. Total on nonnegative
/// inputs and deterministic for the fixed tolerances above.
pub fn classify(edges: &EdgeLengths) -> ExistenceClass {
    let m = mean_edge(edges);
    if m == 0.0 {
        // All vertices coincide: every face is degenerate.
        return ExistenceClass::DegenerateFace;
    }
    let face_tol = REL_FACE_TOL * m.powi(4);
    let mut degenerate_face = false;
    for f in 0..4 {
        let h = face_heron16(edges, f);
        if h < -face_tol {
            return ExistenceClass::Nonexistent;
        }
        if h <= face_tol {
            degenerate_face = true;
        }
    }
    if degenerate_face {
        return ExistenceClass::DegenerateFace;
    }
    let vol_tol = REL_VOL_TOL * m.powi(6);
    let cm = cayley_menger_det(edges);
    if cm < -vol_tol {
        return ExistenceClass::Nonexistent;
    }
    if cm <= vol_tol {
        ExistenceClass::Flat
    } else {
        ExistenceClass::Nondegenerate
    }
}

/// A tetrahedron realized in `ℝ³`: vertex positions, signed volume, outward
/// unit face normals, and the six signed dihedral angles.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TetraEmbedding {
    pub vertices: [Vec3; 4],
    pub volume: f64,
    pub normals: [Vec3; 4],
    pub psi: [f64; 6],
}

impl TetraEmbedding {
    pub fn edge_length(&self, r: usize) -> f64 {
        let (i, j) = EDGE_VERTICES[r];
        (self.vertices[j] - self.vertices[i]).norm()
    }

    pub fn lengths(&self) -> EdgeLengths {
        let mut j = [0.0; 6];
        for (r, v) in j.iter_mut().enumerate() {
            *v = self.edge_length(r);
        }
        EdgeLengths(j)
    }
}

/// Embed edge lengths as an explicit tetrahedron: `A` at the origin, `AB`
/// along `+x`, `ABC` in the `z = 0` plane, and `D` placed so that
/// `sign(V)` matches the requested orientation (ignored for flat shapes).
pub fn embed(edges: &EdgeLengths, orientation: Orientation) -> Result<TetraEmbedding, GeometryError> {
    let class = classify(edges);
    match class {
        ExistenceClass::Nonexistent => return Err(GeometryError::Nonexistent),
        ExistenceClass::DegenerateFace => {
            let f = (0..4)
                .find(|&f| {
                    face_heron16(edges, f) <= REL_FACE_TOL * mean_edge(edges).powi(4)
                })
                .unwrap_or(0);
            return Err(GeometryError::DegenerateFace(f));
        }
        ExistenceClass::Nondegenerate | ExistenceClass::Flat => {}
    }
    let [j_ab, j_ac, j_bc, j_cd, j_bd, j_ad] = edges.0;

    let a = Vec3::ZERO;
    let b = Vec3::new(j_ab, 0.0, 0.0);
    let xc = (j_ab * j_ab + j_ac * j_ac - j_bc * j_bc) / (2.0 * j_ab);
    let yc = (j_ac * j_ac - xc * xc).max(0.0).sqrt();
    let c = Vec3::new(xc, yc, 0.0);

    let xd = (j_ab * j_ab + j_ad * j_ad - j_bd * j_bd) / (2.0 * j_ab);
    let yd = (j_ad * j_ad + j_ac * j_ac - j_cd * j_cd - 2.0 * xd * xc) / (2.0 * yc);
    let zd2 = j_ad * j_ad - xd * xd - yd * yd;
    let zd = if class == ExistenceClass::Flat {
        0.0
    } else {
        orientation.sign() * zd2.max(0.0).sqrt()
    };
    let d = Vec3::new(xd, yd, zd);

    let vertices = [a, b, c, d];
    let volume = signed_volume(&vertices);
    let normals = if class == ExistenceClass::Flat {
        // Everything is coplanar, so "away from the opposite vertex" cannot
        // orient the normals. Take the one-sided limit from V > 0 by lifting
        // D slightly, then snap to the exact ±ẑ limits of the flat stratum.
        let lifted = [a, b, c, Vec3::new(xd, yd, 1e-6 * mean_edge(edges))];
        outward_normals(&lifted)?.map(|n| Vec3::new(0.0, 0.0, n[2].signum()))
    } else {
        outward_normals(&vertices)?
    };
    let psi = dihedral_from_normals(&normals, volume);
    Ok(TetraEmbedding {
        vertices,
        volume,
        normals,
        psi,
    })
}

/// `V = (1/6) (B−A)·((C−A)×(D−A))`.
pub fn signed_volume(vertices: &[Vec3; 4]) -> f64 {
    let u = vertices[1] - vertices[0];
    let v = vertices[2] - vertices[0];
    let w = vertices[3] - vertices[0];
    u.dot(&v.cross(&w)) / 6.0
}

/// Outward unit normals, one per face, each pointing away from the opposite
/// vertex. Fails on degenerate faces.
pub fn outward_normals(vertices: &[Vec3; 4]) -> Result<[Vec3; 4], GeometryError> {
    let mut normals = [Vec3::ZERO; 4];
    let scale: f64 = {
        let e = vertices[1] - vertices[0];
        e.norm().max(1.0)
    };
    for (f, tri) in FACE_VERTICES.iter().enumerate() {
        let [p, q, r] = *tri;
        let opposite = (0..4).find(|v| !tri.contains(v)).unwrap();
        let n = (vertices[q] - vertices[p]).cross(&(vertices[r] - vertices[p]));
        let len = n.norm();
        if len <= 1e-12 * scale * scale {
            return Err(GeometryError::DegenerateFace(f));
        }
        let mut n = n * (1.0 / len);
        if n.dot(&(vertices[opposite] - vertices[p])) > 0.0 {
            n = -n;
        }
        normals[f] = n;
    }
    Ok(normals)
}

/// Signed dihedral angles from outward normals. For `V ≥ 0` this is the
/// angle between the outward normals of the two faces at each edge, in
/// `[0, π]`; for `V < 0` the negative of the inverted shape's angle. The
/// atan2 form avoids arccos precision loss near 0 and π. Flat shapes report
/// `+π` (not `−π`) by convention.
pub fn dihedral_from_normals(normals: &[Vec3; 4], volume: f64) -> [f64; 6] {
    let sign = if volume < 0.0 { -1.0 } else { 1.0 };
    let mut psi = [0.0; 6];
    for (r, p) in psi.iter_mut().enumerate() {
        let (f1, f2) = EDGE_FACES[r];
        let (na, nb) = (&normals[f1], &normals[f2]);
        *p = sign * na.cross(nb).norm().atan2(na.dot(nb));
    }
    psi
}

/// The six signed dihedral angles of an embedding.
pub fn dihedral_angles(emb: &TetraEmbedding) -> [f64; 6] {
    dihedral_from_normals(&emb.normals, emb.volume)
}

/// The phase `S = Σ_r J_r ψ_r`, generating function of the manifold of
/// tetrahedra: `∂S/∂J_r = ψ_r`. Homogeneous of degree one in the edge
/// lengths and odd under spatial inversion.
pub fn pr_phase(edges: &EdgeLengths, orientation: Orientation) -> Result<f64, GeometryError> {
    let emb = embed(edges, orientation)?;
    Ok(edges
        .0
        .iter()
        .zip(emb.psi.iter())
        .map(|(j, p)| j * p)
        .sum())
}

fn psi_at(edges: &EdgeLengths, r: usize, delta: f64) -> Result<[f64; 6], GeometryError> {
    let p = edges
        .perturbed(r, delta)
        .map_err(|_| GeometryError::PerturbationExitsExistence {
            edge: r,
            sign: delta.signum() as i8,
        })?;
    match classify(&p) {
        ExistenceClass::Nondegenerate | ExistenceClass::Flat => {}
        _ => {
            return Err(GeometryError::PerturbationExitsExistence {
                edge: r,
                sign: delta.signum() as i8,
            })
        }
    }
    Ok(embed(&p, Orientation::Positive)?.psi)
}

/// Central-difference Jacobian `D[r][s] ≈ ∂ψ_r/∂J_s` at fixed (positive)
/// orientation; O(h²) accurate at interior points.
pub fn jacobian_psi(edges: &EdgeLengths, h: f64) -> Result<[[f64; 6]; 6], GeometryError> {
    let mut d = [[0.0; 6]; 6];
    for s in 0..6 {
        let plus = psi_at(edges, s, h)?;
        let minus = psi_at(edges, s, -h)?;
        for r in 0..6 {
            d[r][s] = (plus[r] - minus[r]) / (2.0 * h);
        }
    }
    Ok(d)
}

/// `max |D − Dᵀ|`: the symmetry defect of the angle Jacobian.
pub fn jacobian_asymmetry(d: &[[f64; 6]; 6]) -> f64 {
    let mut m = 0.0f64;
    for r in 0..6 {
        for s in 0..6 {
            m = m.max((d[r][s] - d[s][r]).abs());
        }
    }
    m
}

/// `max_s |Σ_r J_r ∂ψ_r/∂J_s|` — the Schläfli identity residual.
pub fn schlafli_residual(edges: &EdgeLengths, h: f64) -> Result<f64, GeometryError> {
    let d = jacobian_psi(edges, h)?;
    Ok(schlafli_residual_of(edges, &d))
}

pub fn schlafli_residual_of(edges: &EdgeLengths, d: &[[f64; 6]; 6]) -> f64 {
    (0..6)
        .map(|s| {
            (0..6)
                .map(|r| edges.0[r] * d[r][s])
                .sum::<f64>()
                .abs()
        })
        .fold(0.0, f64::max)
}

/// `max_s |Σ_r J_r ∂ψ_s/∂J_r|` — Euler's identity residual (the angles are
/// homogeneous of degree zero).
pub fn euler_residual(edges: &EdgeLengths, h: f64) -> Result<f64, GeometryError> {
    let d = jacobian_psi(edges, h)?;
    Ok(euler_residual_of(edges, &d))
}

pub fn euler_residual_of(edges: &EdgeLengths, d: &[[f64; 6]; 6]) -> f64 {
    (0..6)
        .map(|s| {
            (0..6)
                .map(|r| edges.0[r] * d[s][r])
                .sum::<f64>()
                .abs()
        })
        .fold(0.0, f64::max)
}

/// `max_r |∂S/∂J_r − ψ_r|` by central differences on the phase.
pub fn genfun_residual(edges: &EdgeLengths, h: f64) -> Result<f64, GeometryError> {
    let psi = embed(edges, Orientation::Positive)?.psi;
    let mut worst = 0.0f64;
    for r in 0..6 {
        let sp = {
            let e = edges
                .perturbed(r, h)
                .map_err(|_| GeometryError::PerturbationExitsExistence { edge: r, sign: 1 })?;
            pr_phase(&e, Orientation::Positive)?
        };
        let sm = {
            let e = edges
                .perturbed(r, -h)
                .map_err(|_| GeometryError::PerturbationExitsExistence { edge: r, sign: -1 })?;
            pr_phase(&e, Orientation::Positive)?
        };
        worst = worst.max(((sp - sm) / (2.0 * h) - psi[r]).abs());
    }
    Ok(worst)
}

/// Apply a vertex relabeling to edge lengths (permutations of `A B C D`
/// induce the 24 relabelings of edges preserving the face system).
pub fn relabel_edges(edges: &EdgeLengths, vertex_perm: &[usize; 4]) -> EdgeLengths {
    let mut out = [0.0; 6];
    for (r, v) in out.iter_mut().enumerate() {
        let (i, j) = EDGE_VERTICES[r];
        let (pi, pj) = (vertex_perm[i], vertex_perm[j]);
        let src = EDGE_VERTICES
            .iter()
            .position(|&(a, b)| (a, b) == (pi, pj) || (a, b) == (pj, pi))
            .expect("vertex pair is an edge");
        *v = edges.0[src];
    }
    EdgeLengths(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_nondegenerate_edges, rng_from_seed};
    use proptest::prelude::*;

    const SQ2: f64 = std::f64::consts::SQRT_2;

    /// Flat unit square ABCD: A=(0,0), B=(1,0), C=(0,1), D=(1,1), so
    /// AB=AC=CD=BD=1 and the diagonals BC=AD=√2 under the fixed labeling.
    fn flat_square() -> EdgeLengths {
        EdgeLengths([1.0, 1.0, SQ2, 1.0, 1.0, SQ2])
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&EdgeLengths::regular(1.0)),
            ExistenceClass::Nondegenerate
        );
        assert_eq!(
            classify(&EdgeLengths([1.0, 1.0, 1.0, 1.0, 1.0, 10.0])),
            ExistenceClass::Nonexistent
        );
        assert_eq!(classify(&flat_square()), ExistenceClass::Flat);
        // Degenerate face: collinear triangle 1,1,2 on face ABC.
        assert_eq!(
            classify(&EdgeLengths([1.0, 1.0, 2.0, 1.2, 1.2, 1.2])),
            ExistenceClass::DegenerateFace
        );
    }

    #[test]
    fn classify_matches_cayley_menger_oracle_for_regular() {
        // 288 V² = 288/72 = 4 for the unit regular tetrahedron.
        let cm = cayley_menger_det(&EdgeLengths::regular(1.0));
        assert!((cm - 4.0).abs() < 1e-12);
    }

    #[test]
    fn embed_regular_tetrahedron() {
        let edges = EdgeLengths::regular(1.0);
        let emb = embed(&edges, Orientation::Positive).unwrap();
        let v_expected = 1.0 / (6.0 * SQ2);
        assert!((emb.volume - v_expected).abs() < 1e-14);

        let inv = embed(&edges, Orientation::Negative).unwrap();
        assert!((inv.volume + v_expected).abs() < 1e-14);

        // Lengths reproduced to 1e-12 relative.
        for r in 0..6 {
            assert!((emb.edge_length(r) - 1.0).abs() < EMBED_LENGTH_TOL);
        }
    }

    #[test]
    fn embed_flat_square_has_zero_volume() {
        let emb = embed(&flat_square(), Orientation::Positive).unwrap();
        assert_eq!(emb.volume, 0.0);
    }

    #[test]
    fn embed_errors() {
        assert_eq!(
            embed(
                &EdgeLengths([1.0, 1.0, 1.0, 1.0, 1.0, 10.0]),
                Orientation::Positive
            )
            .unwrap_err(),
            GeometryError::Nonexistent
        );
        assert!(matches!(
            embed(
                &EdgeLengths([1.0, 1.0, 2.0, 1.2, 1.2, 1.2]),
                Orientation::Positive
            ),
            Err(GeometryError::DegenerateFace(_))
        ));
    }

    /// Independent normal-vector oracle on an explicit regular tetrahedron
    /// that never touches `embed`: vertices at alternating cube corners.
    #[test]
    fn dihedral_regular_matches_cube_corner_oracle() {
        let s = 1.0 / (2.0 * SQ2); // edge length 1
        let vertices = [
            Vec3::new(s, s, s),
            Vec3::new(s, -s, -s),
            Vec3::new(-s, s, -s),
            Vec3::new(-s, -s, s),
        ];
        let vol = signed_volume(&vertices);
        let normals = outward_normals(&vertices).unwrap();
        let psi_oracle = dihedral_from_normals(&normals, vol);
        let expected = (-1.0f64 / 3.0).acos(); // ≈ 1.9106332362490186
        for p in psi_oracle {
            assert!((p.abs() - expected).abs() < 1e-14);
        }

        let emb = embed(&EdgeLengths::regular(1.0), Orientation::Positive).unwrap();
        for p in emb.psi {
            assert!((p - expected).abs() < 1e-13);
        }

        let inv = embed(&EdgeLengths::regular(1.0), Orientation::Negative).unwrap();
        for p in inv.psi {
            assert!((p + expected).abs() < 1e-13);
        }
    }

    #[test]
    fn dihedral_flat_square_is_zero_or_pi() {
        let emb = embed(&flat_square(), Orientation::Positive).unwrap();
        // The four square sides fold back to back (angle π between outward
        // normals); across the two diagonals the faces continue coplanar
        // (angle 0).
        let pi = std::f64::consts::PI;
        let expected = [pi, pi, 0.0, pi, pi, 0.0];
        for (p, e) in emb.psi.iter().zip(expected.iter()) {
            assert_eq!(p, e, "flat angles {:?}", emb.psi);
        }
    }

    #[test]
    fn pr_phase_examples() {
        let s_reg = pr_phase(&EdgeLengths::regular(1.0), Orientation::Positive).unwrap();
        let expected = 6.0 * (-1.0f64 / 3.0).acos(); // ≈ 11.463799417494111
        assert!((s_reg - expected).abs() < 1e-12);

        // Degree-one homogeneity: angles are scale invariant.
        let s_scaled = pr_phase(&EdgeLengths::regular(2.5), Orientation::Positive).unwrap();
        assert!((s_scaled - 2.5 * expected).abs() < 1e-11);

        let s_inv = pr_phase(&EdgeLengths::regular(1.0), Orientation::Negative).unwrap();
        assert!((s_inv + expected).abs() < 1e-12);
    }

    #[test]
    fn jacobian_regular_tetrahedron() {
        let edges = EdgeLengths::regular(1.0);
        let h = default_step(&edges);
        let d = jacobian_psi(&edges, h).unwrap();
        assert!(jacobian_asymmetry(&d) <= 1e-6);
        assert!(euler_residual_of(&edges, &d) <= 1e-6);
        assert!(schlafli_residual_of(&edges, &d) <= 1e-6);
    }

    #[test]
    fn residuals_scale_invariant() {
        for a in [1.0, 2.0] {
            let edges = EdgeLengths::regular(a);
            let h = default_step(&edges);
            assert!(schlafli_residual(&edges, h).unwrap() <= 1e-6);
            assert!(genfun_residual(&edges, h).unwrap() <= 1e-6);
        }
        // Fixed literal step on the doubled shape.
        let doubled = EdgeLengths::regular(2.0);
        assert!(schlafli_residual(&doubled, 1e-5).unwrap() <= 1e-6);
    }

    #[test]
    fn residual_near_flat_stratum() {
        // Just off the flat unit square, margin well above the stencil.
        let mut j = flat_square().0;
        j[3] += 1e-3;
        let edges = EdgeLengths::new(j).unwrap();
        assert_eq!(classify(&edges), ExistenceClass::Nondegenerate);
        let h = default_step(&edges);
        assert!(schlafli_residual(&edges, h).unwrap() <= 1e-5);
    }

    #[test]
    fn perturbation_exit_is_reported() {
        // Wafer-thin margin: a long-edge stencil exits existence.
        let mut j = flat_square().0;
        j[3] += 1e-9;
        let edges = EdgeLengths::new(j).unwrap();
        let err = jacobian_psi(&edges, 1e-4).unwrap_err();
        assert!(matches!(
            err,
            GeometryError::PerturbationExitsExistence { .. }
        ));
    }

    fn vertex_permutations() -> Vec<[usize; 4]> {
        let mut perms = Vec::new();
        let mut items = [0usize, 1, 2, 3];
        // Heap's algorithm, iterative.
        let mut c = [0usize; 4];
        perms.push(items);
        let mut i = 0;
        while i < 4 {
            if c[i] < i {
                if i % 2 == 0 {
                    items.swap(0, i);
                } else {
                    items.swap(c[i], i);
                }
                perms.push(items);
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        perms
    }

    #[test]
    fn classify_invariant_under_relabelings() {
        // All 24 vertex relabelings preserve the face system; the three
        // opposite-pair swaps (1,4)(3,6), (2,5)(3,6), (1,4)(2,5) are the
        // double transpositions (AC)(BD), (AB)(CD), (AD)(BC) among them.
        let perms = vertex_permutations();
        assert_eq!(perms.len(), 24);
        let mut rng = rng_from_seed(21);
        for _ in 0..20 {
            let edges = random_nondegenerate_edges(&mut rng);
            for p in &perms {
                assert_eq!(classify(&relabel_edges(&edges, p)), classify(&edges));
            }
        }
        // And for shapes from the other classes.
        for e in [
            EdgeLengths([1.0, 1.0, 1.0, 1.0, 1.0, 10.0]),
            flat_square(),
            EdgeLengths([1.0, 1.0, 2.0, 1.2, 1.2, 1.2]),
        ] {
            for p in &perms {
                assert_eq!(classify(&relabel_edges(&e, p)), classify(&e));
            }
        }
    }

    #[test]
    fn inversion_flips_angles_exactly() {
        let mut rng = rng_from_seed(22);
        for _ in 0..10 {
            let edges = random_nondegenerate_edges(&mut rng);
            let plus = embed(&edges, Orientation::Positive).unwrap();
            let minus = embed(&edges, Orientation::Negative).unwrap();
            for r in 0..6 {
                assert_eq!(plus.psi[r], -minus.psi[r]);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn embed_reproduces_lengths(seed in 0u64..10_000) {
            let mut rng = rng_from_seed(seed);
            let edges = random_nondegenerate_edges(&mut rng);
            let emb = embed(&edges, Orientation::Positive).unwrap();
            let back = emb.lengths();
            for r in 0..6 {
                prop_assert!((back.0[r] - edges.0[r]).abs() <= EMBED_LENGTH_TOL * edges.0[r]);
            }
            // sign(ψ_r) = sign(V) for every edge of a nondegenerate shape.
            for p in emb.psi {
                prop_assert!(p > 0.0);
            }
            // Unit normals pointing away from the opposite vertex.
            for (f, tri) in FACE_VERTICES.iter().enumerate() {
                prop_assert!((emb.normals[f].norm() - 1.0).abs() <= 1e-12);
                let opposite = (0..4).find(|v| !tri.contains(v)).unwrap();
                let outward = emb.normals[f]
                    .dot(&(emb.vertices[opposite] - emb.vertices[tri[0]]));
                prop_assert!(outward < 0.0);
            }
        }
    }
}

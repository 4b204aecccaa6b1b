//! Seeded random sampling used by property tests, the acceptance suite and
//! the CLI. Everything routes through a ChaCha stream cipher so that a fixed
//! seed reproduces byte-identical output.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{classify, mean_edge, EdgeLengths, ExistenceClass};
use crate::linalg::{Spinor, SpinorMatrix, Vec3};
use crate::qdeform::DeformedJ;
use crate::spinor::Su2;

pub type SeedableChaCha = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; two uniform draws per call keeps the stream simple.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn random_unit_vec(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = Vec3::new(gauss(rng), gauss(rng), gauss(rng));
        let n = v.norm();
        if n > 1e-3 {
            return v * (1.0 / n);
        }
    }
}

/// Haar-distributed SU(2) element (normalized Gaussian quaternion).
pub fn random_su2(rng: &mut ChaCha8Rng) -> Su2 {
    loop {
        let q = [gauss(rng), gauss(rng), gauss(rng), gauss(rng)];
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n < 1e-3 {
            continue;
        }
        let (w, x, y, z) = (q[0] / n, q[1] / n, q[2] / n, q[3] / n);
        // w·1 − i(x,y,z)·σ
        let m = SpinorMatrix::new(
            Complex64::new(w, -z),
            Complex64::new(-y, -x),
            Complex64::new(y, -x),
            Complex64::new(w, z),
        );
        return Su2::from_matrix(m).expect("unit quaternion is special unitary");
    }
}

/// Random complex 2-spinor with components of the given scale; rejected if
/// nearly zero so callers can divide by the norm.
pub fn random_spinor(rng: &mut ChaCha8Rng, scale: f64) -> Spinor {
    loop {
        let z = Spinor::from_reals(
            scale * gauss(rng),
            scale * gauss(rng),
            scale * gauss(rng),
            scale * gauss(rng),
        );
        if z.norm_sq() > 1e-6 * scale * scale {
            return z;
        }
    }
}

/// Rejection margins keeping random tetrahedra away from the existence
/// boundary: finite-difference stencils must not leave the nondegenerate
/// region and the residual contracts assume an interior point. Normalized by
/// powers of the mean edge; the regular tetrahedron scores 4.0 and 0.75.
const MIN_NORM_VOL: f64 = 0.05; // 288V² / mean⁶
const MIN_NORM_FACE: f64 = 0.05; // 16·area² / mean⁴

/// Draw edge lengths uniformly from `[0.5, 3]⁶` until they form a
/// nondegenerate tetrahedron comfortably inside the existence region.
pub fn random_nondegenerate_edges(rng: &mut ChaCha8Rng) -> EdgeLengths {
    loop {
        let mut j = [0.0; 6];
        for e in j.iter_mut() {
            *e = rng.gen_range(0.5..3.0);
        }
        let edges = EdgeLengths::new(j).expect("positive lengths");
        if classify(&edges) != ExistenceClass::Nondegenerate {
            continue;
        }
        let m = mean_edge(&edges);
        if crate::geometry::cayley_menger_det(&edges) < MIN_NORM_VOL * m.powi(6) {
            continue;
        }
        let heron_ok = (0..4)
            .all(|f| crate::geometry::face_heron16(&edges, f) > MIN_NORM_FACE * m.powi(4));
        if heron_ok {
            return edges;
        }
    }
}

/// Deformed angular momentum with coordinates uniform in `[-range, range]`.
pub fn random_deformed_j(rng: &mut ChaCha8Rng, range: f64) -> DeformedJ {
    DeformedJ::new(
        rng.gen_range(-range..range),
        Complex64::new(rng.gen_range(-range..range), rng.gen_range(-range..range)),
    )
}

//! Deformed angular-momentum space as the group `B` of upper-triangular
//! `SL(2,ℂ)` matrices with real positive diagonal.
//!
//! A deformed momentum `(J_z, J_±)` with `J_± = J_x ± iJ_y` corresponds to
//!
//! ```text
//! b = [ e^{−J_z/2}   −J_− ]
//!     [ 0            e^{J_z/2} ]
//! ```
//!
//! and the deformed addition rule (the coproduct) is exactly group
//! multiplication in these coordinates. `J = 0` under a two-fold coproduct
//! means `b₂ = b₁⁻¹` — a deformed diangle condition — and under a
//! three-fold coproduct `b₁b₂b₃ = 1` — a deformed triangle condition. Since
//! `B` acts on hyperbolic 3-space (positive Hermitian unit-determinant
//! matrices, `X ↦ bXb†`), those closures trace out geodesic segments and
//! triangles in `ℍ³`.
//!
//! The deformation scale `j0` (curvature radius of `ℍ³`) is threaded
//! through with default 1; `j0 → ∞` is the flat, undeformed limit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::SpinorMatrix;

/// Deformed angular-momentum coordinates `(J_z, J_−)`; `J_+ = conj(J_−)`
/// for real `(J_x, J_y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformedJ {
    pub j_z: f64,
    pub j_minus: (f64, f64),
}

impl DeformedJ {
    pub fn new(j_z: f64, j_minus: Complex64) -> Self {
        DeformedJ {
            j_z,
            j_minus: (j_minus.re, j_minus.im),
        }
    }

    pub fn from_parts(j_z: f64, re: f64, im: f64) -> Self {
        DeformedJ {
            j_z,
            j_minus: (re, im),
        }
    }

    pub fn zero() -> Self {
        DeformedJ {
            j_z: 0.0,
            j_minus: (0.0, 0.0),
        }
    }

    pub fn j_minus_c(&self) -> Complex64 {
        Complex64::new(self.j_minus.0, self.j_minus.1)
    }

    pub fn max_abs_diff(&self, other: &DeformedJ) -> f64 {
        (self.j_z - other.j_z)
            .abs()
            .max((self.j_minus_c() - other.j_minus_c()).norm())
    }
}

/// An element of `B`: upper triangular, real positive diagonal
/// `e^{∓J_z/2}`, unit determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BElement(SpinorMatrix);

/// Validation tolerance for [`BElement::from_matrix`].
pub const B_SHAPE_TOL: f64 = 1e-12;

impl BElement {
    pub fn identity() -> Self {
        BElement(SpinorMatrix::identity())
    }

    pub fn matrix(&self) -> &SpinorMatrix {
        &self.0
    }

    /// Validate the `B` shape: lower-left zero, real positive diagonal with
    /// unit product.
    pub fn from_matrix(m: SpinorMatrix) -> Result<Self, String> {
        let scale = m.max_abs().max(1.0);
        if m.0[1][0].norm() > B_SHAPE_TOL * scale {
            return Err("matrix is not upper triangular".to_string());
        }
        for d in [m.0[0][0], m.0[1][1]] {
            if d.im.abs() > B_SHAPE_TOL * scale || d.re <= 0.0 {
                return Err("diagonal entries must be real and positive".to_string());
            }
        }
        if (m.det() - Complex64::new(1.0, 0.0)).norm() > B_SHAPE_TOL * scale {
            return Err("determinant must be one".to_string());
        }
        Ok(BElement(m))
    }

    pub fn inverse(&self) -> BElement {
        // Unit determinant: adjugate swap.
        BElement(SpinorMatrix::new(
            self.0 .0[1][1],
            -self.0 .0[0][1],
            -self.0 .0[1][0],
            self.0 .0[0][0],
        ))
    }
}

impl std::ops::Mul for BElement {
    type Output = BElement;
    fn mul(self, o: BElement) -> BElement {
        BElement(self.0 * o.0)
    }
}

/// `b = [[e^{−J_z/(2j0)}, −J_−], [0, e^{J_z/(2j0)}]]` at deformation scale
/// `j0`; only the exponents carry the scale, so `j_from_b` stays exact.
pub fn b_from_j_scaled(j: &DeformedJ, j0: f64) -> BElement {
    let zero = Complex64::new(0.0, 0.0);
    BElement(SpinorMatrix::new(
        Complex64::new((-j.j_z / (2.0 * j0)).exp(), 0.0),
        -j.j_minus_c(),
        zero,
        Complex64::new((j.j_z / (2.0 * j0)).exp(), 0.0),
    ))
}

/// Read the coordinates back off a `B` matrix.
pub fn j_from_b_scaled(b: &BElement, j0: f64) -> DeformedJ {
    let m = b.matrix();
    DeformedJ::new(j0 * (m.0[1][1].re.ln() - m.0[0][0].re.ln()), -m.0[0][1])
}

/// Two-fold coproduct in coordinates:
/// `J_z = J_{1z} + J_{2z}`,
/// `J_− = e^{−J_{1z}/2} J_{2−} + J_{1−} e^{J_{2z}/2}`
/// (with `J_z/j0` in the exponents at general scale). Coincides with the
/// matrix product `b₁·b₂` read back into coordinates.
pub fn comult2_scaled(j1: &DeformedJ, j2: &DeformedJ, j0: f64) -> DeformedJ {
    let jm = (-j1.j_z / (2.0 * j0)).exp() * j2.j_minus_c()
        + j1.j_minus_c() * (j2.j_z / (2.0 * j0)).exp();
    DeformedJ::new(j1.j_z + j2.j_z, jm)
}

/// Three-fold coproduct in coordinates:
/// `J_z = J_{1z} + J_{2z} + J_{3z}`,
/// `J_− = e^{−(J_{1z}+J_{2z})/2} J_{3−} + e^{−J_{1z}/2} J_{2−} e^{J_{3z}/2}
///        + J_{1−} e^{(J_{2z}+J_{3z})/2}`.
pub fn comult3_scaled(j1: &DeformedJ, j2: &DeformedJ, j3: &DeformedJ, j0: f64) -> DeformedJ {
    let e = |x: f64| (x / (2.0 * j0)).exp();
    let jm = e(-(j1.j_z + j2.j_z)) * j3.j_minus_c()
        + e(-j1.j_z) * j2.j_minus_c() * e(j3.j_z)
        + j1.j_minus_c() * e(j2.j_z + j3.j_z);
    DeformedJ::new(j1.j_z + j2.j_z + j3.j_z, jm)
}

/// Deformed diangle closure: the `J₂` with `comult2(J₁, J₂) = 0`, read off
/// from `b₂ = b₁⁻¹`.
pub fn diangle_closure_scaled(j1: &DeformedJ, j0: f64) -> DeformedJ {
    j_from_b_scaled(&b_from_j_scaled(j1, j0).inverse(), j0)
}

pub fn b_from_j(j: &DeformedJ) -> BElement {
    b_from_j_scaled(j, 1.0)
}

pub fn j_from_b(b: &BElement) -> DeformedJ {
    j_from_b_scaled(b, 1.0)
}

pub fn comult2(j1: &DeformedJ, j2: &DeformedJ) -> DeformedJ {
    comult2_scaled(j1, j2, 1.0)
}

pub fn comult3(j1: &DeformedJ, j2: &DeformedJ, j3: &DeformedJ) -> DeformedJ {
    comult3_scaled(j1, j2, j3, 1.0)
}

pub fn diangle_closure(j1: &DeformedJ) -> DeformedJ {
    diangle_closure_scaled(j1, 1.0)
}

/// A point of `ℍ³` as a positive Hermitian matrix of unit determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicPoint(pub SpinorMatrix);

impl HyperbolicPoint {
    pub fn origin() -> Self {
        HyperbolicPoint(SpinorMatrix::identity())
    }
}

/// Image of the origin under `b`: `X = b b†`.
pub fn hyperbolic_point(b: &BElement) -> HyperbolicPoint {
    HyperbolicPoint(*b.matrix() * b.matrix().adjoint())
}

/// Geodesic distance on `ℍ³`: `cosh d = ½ tr(X₁⁻¹ X₂)`; zero iff the
/// points coincide.
pub fn hyperbolic_distance(x1: &HyperbolicPoint, x2: &HyperbolicPoint) -> f64 {
    let c = 0.5 * (x1.0.inverse() * x2.0).trace().re;
    c.max(1.0).acosh()
}

/// Worst deviations over a randomized audit of the coproduct laws.
#[derive(Debug, Clone, Serialize)]
pub struct CoproductAudit {
    pub samples: usize,
    pub max_comult2_vs_matrix: f64,
    pub max_comult3_vs_matrix: f64,
    pub max_comult3_vs_nested: f64,
    pub max_diangle_closure: f64,
}

/// Check the coproduct against `B` matrix products, three-fold
/// associativity, and diangle closure on seeded random samples.
pub fn coproduct_audit(samples: usize, seed: u64) -> CoproductAudit {
    let mut rng = crate::sample::rng_from_seed(seed);
    let mut audit = CoproductAudit {
        samples,
        max_comult2_vs_matrix: 0.0,
        max_comult3_vs_matrix: 0.0,
        max_comult3_vs_nested: 0.0,
        max_diangle_closure: 0.0,
    };
    for _ in 0..samples {
        let j1 = crate::sample::random_deformed_j(&mut rng, 2.0);
        let j2 = crate::sample::random_deformed_j(&mut rng, 2.0);
        let j3 = crate::sample::random_deformed_j(&mut rng, 2.0);
        let coords = comult2(&j1, &j2);
        let matrix = j_from_b(&(b_from_j(&j1) * b_from_j(&j2)));
        audit.max_comult2_vs_matrix = audit.max_comult2_vs_matrix.max(coords.max_abs_diff(&matrix));
        let coords3 = comult3(&j1, &j2, &j3);
        let matrix3 = j_from_b(&(b_from_j(&j1) * b_from_j(&j2) * b_from_j(&j3)));
        let nested = comult2(&comult2(&j1, &j2), &j3);
        audit.max_comult3_vs_matrix = audit.max_comult3_vs_matrix.max(coords3.max_abs_diff(&matrix3));
        audit.max_comult3_vs_nested = audit.max_comult3_vs_nested.max(coords3.max_abs_diff(&nested));
        let closure = diangle_closure(&j1);
        audit.max_diangle_closure = audit
            .max_diangle_closure
            .max(comult2(&j1, &closure).max_abs_diff(&DeformedJ::zero()));
    }
    audit
}

/// A random geodesic triangle in `ℍ³` from a closed product `b₁b₂b₃ = 1`.
#[derive(Debug, Clone, Serialize)]
pub struct TriangleDemo {
    pub j1: DeformedJ,
    pub j2: DeformedJ,
    pub j3: DeformedJ,
    /// Three-fold coproduct of the closed triple (zero up to roundoff).
    pub coproduct3: DeformedJ,
    /// Pairwise distances of origin, b₁·origin, (b₁b₂)·origin.
    pub side_lengths: [f64; 3],
}

pub fn triangle_demo(seed: u64) -> TriangleDemo {
    let mut rng = crate::sample::rng_from_seed(seed);
    let j1 = crate::sample::random_deformed_j(&mut rng, 1.5);
    let j2 = crate::sample::random_deformed_j(&mut rng, 1.5);
    let b1 = b_from_j(&j1);
    let b2 = b_from_j(&j2);
    let b3 = (b1 * b2).inverse();
    let j3 = j_from_b(&b3);
    let origin = HyperbolicPoint::origin();
    let p1 = hyperbolic_point(&b1);
    let p2 = hyperbolic_point(&(b1 * b2));
    TriangleDemo {
        j1,
        j2,
        j3,
        coproduct3: comult3(&j1, &j2, &j3),
        side_lengths: [
            hyperbolic_distance(&origin, &p1),
            hyperbolic_distance(&p1, &p2),
            hyperbolic_distance(&p2, &origin),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::rng_from_seed;
    use proptest::prelude::*;
    use rand::Rng;

    fn random_j(rng: &mut crate::sample::SeedableChaCha) -> DeformedJ {
        DeformedJ::new(
            rng.gen_range(-2.0..2.0),
            Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
        )
    }

    #[test]
    fn b_from_j_examples() {
        let b = b_from_j(&DeformedJ::zero());
        assert_eq!(*b.matrix(), SpinorMatrix::identity());

        let b = b_from_j(&DeformedJ::new(0.8, Complex64::new(0.0, 0.0)));
        assert!((b.matrix().0[0][0].re - (-0.4f64).exp()).abs() < 1e-15);
        assert!((b.matrix().0[1][1].re - (0.4f64).exp()).abs() < 1e-15);
        assert_eq!(b.matrix().0[0][1].norm(), 0.0);
        assert!((b.matrix().det() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn round_trip_and_validation() {
        let mut rng = rng_from_seed(51);
        for _ in 0..50 {
            let j = random_j(&mut rng);
            let b = b_from_j(&j);
            assert!(BElement::from_matrix(*b.matrix()).is_ok());
            let back = j_from_b(&b);
            assert!(back.max_abs_diff(&j) < 1e-14);
        }
        assert!(BElement::from_matrix(SpinorMatrix::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(1.0, 0.0),
        ))
        .is_err());
    }

    #[test]
    fn comult2_special_cases() {
        let mut rng = rng_from_seed(52);
        let j1 = random_j(&mut rng);
        // Right identity.
        let out = comult2(&j1, &DeformedJ::zero());
        assert!(out.max_abs_diff(&j1) < 1e-15);
        // Diagonal pair: plain addition.
        let a = DeformedJ::new(0.7, Complex64::new(0.0, 0.0));
        let b = DeformedJ::new(-0.2, Complex64::new(0.0, 0.0));
        let out = comult2(&a, &b);
        assert!((out.j_z - 0.5).abs() < 1e-15);
        assert_eq!(out.j_minus_c().norm(), 0.0);
    }

    #[test]
    fn comult3_zero_and_noncommutativity() {
        let z = DeformedJ::zero();
        assert_eq!(comult3(&z, &z, &z).max_abs_diff(&z), 0.0);

        let mut rng = rng_from_seed(53);
        let (a, b) = (random_j(&mut rng), random_j(&mut rng));
        let ab = comult2(&a, &b);
        let ba = comult2(&b, &a);
        assert!(ab.max_abs_diff(&ba) > 1e-3, "generic inputs must not commute");
    }

    #[test]
    fn diangle_closure_cancels() {
        let z = diangle_closure(&DeformedJ::zero());
        assert_eq!(z.max_abs_diff(&DeformedJ::zero()), 0.0);

        let diag = diangle_closure(&DeformedJ::new(0.9, Complex64::new(0.0, 0.0)));
        assert!((diag.j_z + 0.9).abs() < 1e-15);

        let mut rng = rng_from_seed(54);
        for _ in 0..100 {
            let j = random_j(&mut rng);
            let closure = diangle_closure(&j);
            let total = comult2(&j, &closure);
            assert!(total.max_abs_diff(&DeformedJ::zero()) <= 1e-13);
        }
    }

    #[test]
    fn hyperbolic_distance_examples() {
        let origin = HyperbolicPoint::origin();
        assert_eq!(hyperbolic_distance(&origin, &origin), 0.0);
        assert_eq!(hyperbolic_point(&BElement::identity()).0, origin.0);

        // Diagonal boost by a: distance |a| from the origin.
        for a in [-1.3, 0.4, 2.0] {
            let b = b_from_j(&DeformedJ::new(a, Complex64::new(0.0, 0.0)));
            let d = hyperbolic_distance(&origin, &hyperbolic_point(&b));
            assert!((d - a.abs()).abs() < 1e-12, "boost {a}: d = {d}");
        }
    }

    #[test]
    fn triangle_closure_traces_geodesic_triangle() {
        // b₃ = (b₁b₂)⁻¹ closes the triangle; the three partial products
        // visit points whose pairwise distances are the segment lengths of
        // the individual factors.
        let mut rng = rng_from_seed(55);
        for _ in 0..20 {
            let j1 = random_j(&mut rng);
            let j2 = random_j(&mut rng);
            let b1 = b_from_j(&j1);
            let b2 = b_from_j(&j2);
            let b3 = (b1 * b2).inverse();
            let product = b1 * b2 * b3;
            assert!(product.matrix().max_abs_diff(&SpinorMatrix::identity()) < 1e-13);
            // The coproduct of the three coordinate sets vanishes.
            let total = comult3(&j_from_b(&b1), &j_from_b(&b2), &j_from_b(&b3));
            assert!(total.max_abs_diff(&DeformedJ::zero()) < 1e-13);

            let origin = HyperbolicPoint::origin();
            let p1 = hyperbolic_point(&b1);
            let p2 = hyperbolic_point(&(b1 * b2));
            let side1 = hyperbolic_distance(&origin, &p1);
            let side2 = hyperbolic_distance(&p1, &p2);
            let side3 = hyperbolic_distance(&p2, &origin);
            // Sides measure the factors acting in sequence: isometry
            // invariance reduces each to a distance from the origin.
            assert!(
                (side2 - hyperbolic_distance(&origin, &hyperbolic_point(&b2))).abs() < 1e-10
            );
            assert!(
                (side3 - hyperbolic_distance(&origin, &hyperbolic_point(&b3.inverse()))).abs()
                    < 1e-10
            );
            // Triangle inequality in ℍ³.
            assert!(side1 + side2 >= side3 - 1e-12);
            assert!(side2 + side3 >= side1 - 1e-12);
            assert!(side3 + side1 >= side2 - 1e-12);
        }
    }

    #[test]
    fn scaled_j0_reduces_to_default_at_one() {
        let mut rng = rng_from_seed(56);
        let (a, b) = (random_j(&mut rng), random_j(&mut rng));
        let x = comult2_scaled(&a, &b, 1.0);
        let y = comult2(&a, &b);
        assert_eq!(x, y);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn coproduct_is_group_multiplication(
            az in -2.0..2.0f64, ax in -2.0..2.0f64, ay in -2.0..2.0f64,
            bz in -2.0..2.0f64, bx in -2.0..2.0f64, by in -2.0..2.0f64,
            cz in -2.0..2.0f64, cx in -2.0..2.0f64, cy in -2.0..2.0f64,
        ) {
            let j1 = DeformedJ::new(az, Complex64::new(ax, ay));
            let j2 = DeformedJ::new(bz, Complex64::new(bx, by));
            let j3 = DeformedJ::new(cz, Complex64::new(cx, cy));

            // Two-fold: coordinates equal the matrix-product read-off.
            let coords = comult2(&j1, &j2);
            let matrix = j_from_b(&(b_from_j(&j1) * b_from_j(&j2)));
            prop_assert!(coords.max_abs_diff(&matrix) <= 1e-13 * (1.0 + coords.j_minus_c().norm()));

            // Three-fold: matrix route and associativity.
            let coords3 = comult3(&j1, &j2, &j3);
            let matrix3 = j_from_b(&(b_from_j(&j1) * b_from_j(&j2) * b_from_j(&j3)));
            prop_assert!(coords3.max_abs_diff(&matrix3) <= 1e-13 * (1.0 + coords3.j_minus_c().norm()));
            let nested = comult2(&comult2(&j1, &j2), &j3);
            prop_assert!(coords3.max_abs_diff(&nested) <= 1e-13 * (1.0 + coords3.j_minus_c().norm()));
        }
    }
}

//! Primitive algebra of the spinor phase space `Φ = ℂ²`: the Hopf map to
//! angular-momentum space, axis-angle SU(2) elements and their SO(3)
//! projection, time reversal, the quaternion matrix `M(z)`, and recovery of
//! the group element relating two spinors of equal norm.
//!
//! Conventions: `I = ½ z†z`, `J_i = ½ z†σ_i z`, `u(n,α) = exp[−i(α/2) n·σ]`,
//! `Θz = U₀ z̄` with `U₀ = exp[−i(π/2)σ_y]`. All maps are homogeneous in the
//! spinor — norms are never forced, since the level sets `I = J` carry the
//! geometry.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{Mat3, Spinor, SpinorMatrix, Vec3};

const I1: Complex64 = Complex64::new(0.0, 1.0);

/// Pauli matrices σ₁, σ₂, σ₃.
pub fn pauli(i: usize) -> SpinorMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match i {
        0 => SpinorMatrix::new(z, one, one, z),
        1 => SpinorMatrix::new(z, -I1, I1, z),
        2 => SpinorMatrix::new(one, z, z, -one),
        _ => panic!("pauli index out of range"),
    }
}

/// `n·σ` for a real 3-vector `n`.
pub fn dot_sigma(n: &Vec3) -> SpinorMatrix {
    SpinorMatrix::new(
        Complex64::new(n[2], 0.0),
        Complex64::new(n[0], -n[1]),
        Complex64::new(n[0], n[1]),
        Complex64::new(-n[2], 0.0),
    )
}

#[derive(Debug, Error, PartialEq)]
pub enum SpinorError {
    #[error("axis must be a unit vector (|n| − 1 = {0:e})")]
    NonUnitAxis(f64),
    #[error("matrix is not special unitary (deviation {0:e})")]
    NotSpecialUnitary(f64),
    #[error("spinor has zero norm")]
    ZeroSpinor,
    #[error("spinor norms differ beyond tolerance (relative mismatch {0:e})")]
    NormMismatch(f64),
}

/// An element of SU(2), kept as an explicit 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2(SpinorMatrix);

impl Su2 {
    pub fn identity() -> Self {
        Su2(SpinorMatrix::identity())
    }

    /// `u(n, α) = cos(α/2)·1 − i sin(α/2)(n·σ)` for a unit axis `n`.
    pub fn axis_angle(n: &Vec3, alpha: f64) -> Result<Su2, SpinorError> {
        let dev = (n.norm() - 1.0).abs();
        if dev > 1e-12 {
            return Err(SpinorError::NonUnitAxis(dev));
        }
        let c = Complex64::new((alpha / 2.0).cos(), 0.0);
        let s = (alpha / 2.0).sin();
        let m = SpinorMatrix::identity()
            .scale(c)
            .sub(&dot_sigma(n).scale(I1 * s));
        Ok(Su2(m))
    }

    /// Validate `g†g = 1` and `det g = 1` within 1e-12 and wrap.
    pub fn from_matrix(m: SpinorMatrix) -> Result<Su2, SpinorError> {
        let unit_dev = (m.adjoint() * m).max_abs_diff(&SpinorMatrix::identity());
        let det_dev = (m.det() - Complex64::new(1.0, 0.0)).norm();
        let dev = unit_dev.max(det_dev);
        if dev > 1e-12 {
            return Err(SpinorError::NotSpecialUnitary(dev));
        }
        Ok(Su2(m))
    }

    pub fn matrix(&self) -> &SpinorMatrix {
        &self.0
    }

    pub fn inverse(&self) -> Su2 {
        Su2(self.0.adjoint())
    }

    pub fn apply(&self, z: &Spinor) -> Spinor {
        self.0.apply(z)
    }

    /// Axis-angle decomposition `g = u(a, φ)` with `φ = 2 atan2(|v|, c)` in
    /// `[0, 2π]`, where `g = c·1 − i v·σ`. The axis is `None` at `g = ±1`.
    pub fn axis_angle_of(&self) -> (Option<Vec3>, f64) {
        let m = &self.0;
        let c = 0.5 * (m.trace()).re;
        let v = Vec3::new(-m.0[0][1].im, -m.0[0][1].re, -m.0[0][0].im);
        let s = v.norm();
        let phi = 2.0 * s.atan2(c);
        if s < 1e-12 {
            (None, phi)
        } else {
            (Some(v * (1.0 / s)), phi)
        }
    }
}

impl std::ops::Mul for Su2 {
    type Output = Su2;
    fn mul(self, o: Su2) -> Su2 {
        Su2(self.0 * o.0)
    }
}

/// The Hopf projection `z ↦ (I, J)` with `I = ½ z†z`, `J_i = ½ z†σ_i z`.
/// Always `|J| = I`.
pub fn hopf_map(z: &Spinor) -> (f64, Vec3) {
    let i = 0.5 * z.norm_sq();
    let w = z.0[0].conj() * z.0[1];
    let j3 = 0.5 * (z.0[0].norm_sqr() - z.0[1].norm_sqr());
    (i, Vec3::new(w.re, w.im, j3))
}

/// Standard projection SU(2) → SO(3): `R_ij = ½ tr(u† σ_i u σ_j)`.
pub fn so3_from_su2(u: &Su2) -> Mat3 {
    let ud = u.matrix().adjoint();
    let mut r = [[0.0; 3]; 3];
    for j in 0..3 {
        // u σ_j u†, so that R_ij = ½ tr(σ_i u σ_j u†) by cyclicity.
        let conj = *u.matrix() * pauli(j) * ud;
        for i in 0..3 {
            r[i][j] = 0.5 * (pauli(i) * conj).trace().re;
        }
    }
    Mat3(r)
}

/// `U₀ = exp[−i(π/2)σ_y] = [[0, −1], [1, 0]]`.
pub fn u0() -> SpinorMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    SpinorMatrix::new(z, -one, one, z)
}

/// Time reversal `Θz = U₀ z̄`; antiunitary, `Θ² = −1`, and it inverts the
/// angular momentum vector while preserving `I`.
pub fn time_reversal(z: &Spinor) -> Spinor {
    Spinor([-z.0[1].conj(), z.0[0].conj()])
}

/// The quaternion matrix `M(z) = (z, Θz)`; `det M(z) = 2I`, and
/// `M(z)/√(2I) ∈ SU(2)` whenever `I > 0`.
pub fn quaternion_matrix(z: &Spinor) -> SpinorMatrix {
    SpinorMatrix::from_columns(z, &time_reversal(z))
}

/// Relative tolerance on `|I − I'| / max(I, I')` accepted by
/// [`recover_group`]; the result is reprojected onto SU(2) exactly.
pub const RECOVER_NORM_TOL: f64 = 1e-9;

/// The unique `g ∈ SU(2)` with `z = g z'`, from `g = M(z) M(z')⁻¹`.
///
/// Both spinors must be nonzero with equal `I` up to [`RECOVER_NORM_TOL`];
/// the quotient is then rescaled by `1/√det` (for quaternion-form matrices
/// that is the polar projection onto SU(2)), so the returned element is
/// special unitary to machine precision. Invariant under a common phase of
/// `z` and `z'`.
pub fn recover_group(z: &Spinor, zp: &Spinor) -> Result<Su2, SpinorError> {
    let iz = 0.5 * z.norm_sq();
    let izp = 0.5 * zp.norm_sq();
    if iz == 0.0 || izp == 0.0 {
        return Err(SpinorError::ZeroSpinor);
    }
    let rel = (iz - izp).abs() / iz.max(izp);
    if rel > RECOVER_NORM_TOL {
        return Err(SpinorError::NormMismatch(rel));
    }
    let g = quaternion_matrix(z) * quaternion_matrix(zp).inverse();
    // det g = I/I' is real and positive; dividing by its square root lands
    // exactly on SU(2) while preserving the quaternion form.
    let scale = Complex64::new(1.0 / g.det().re.sqrt(), 0.0);
    Su2::from_matrix(g.scale(scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_spinor, random_su2, random_unit_vec, rng_from_seed};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hopf_map_basis_spinors() {
        let (i, j) = hopf_map(&Spinor::new(c(1.0, 0.0), c(0.0, 0.0)));
        assert_eq!(i, 0.5);
        assert!(j.max_abs_diff(&Vec3::new(0.0, 0.0, 0.5)) < 1e-15);

        let (i, j) = hopf_map(&Spinor::new(c(0.0, 0.0), c(1.0, 0.0)));
        assert_eq!(i, 0.5);
        assert!(j.max_abs_diff(&Vec3::new(0.0, 0.0, -0.5)) < 1e-15);

        // (1, 1) points along +x with I = 1.
        let (i, j) = hopf_map(&Spinor::new(c(1.0, 0.0), c(1.0, 0.0)));
        assert_eq!(i, 1.0);
        assert!(j.max_abs_diff(&Vec3::new(1.0, 0.0, 0.0)) < 1e-15);
    }

    /// Brute-force `½ z†σ_i z` straight from the Pauli matrices.
    fn hopf_oracle(z: &Spinor) -> (f64, Vec3) {
        let mut j = [0.0; 3];
        for (i, ji) in j.iter_mut().enumerate() {
            *ji = 0.5 * z.inner(&pauli(i).apply(z)).re;
        }
        (0.5 * z.norm_sq(), Vec3(j))
    }

    #[test]
    fn axis_angle_special_cases() {
        let id = Su2::axis_angle(&Vec3::Z, 0.0).unwrap();
        assert!(id.matrix().max_abs_diff(&SpinorMatrix::identity()) < 1e-15);

        // u(ŷ, π) is U₀.
        let u = Su2::axis_angle(&Vec3::Y, PI).unwrap();
        assert!(u.matrix().max_abs_diff(&u0()) < 1e-15);

        // Full turn is −1: the spinor double cover.
        let m = Su2::axis_angle(&Vec3::Z, 2.0 * PI).unwrap();
        let neg_id = SpinorMatrix::identity().scale(c(-1.0, 0.0));
        assert!(m.matrix().max_abs_diff(&neg_id) < 1e-15);

        assert!(matches!(
            Su2::axis_angle(&Vec3::new(0.0, 0.0, 2.0), 1.0),
            Err(SpinorError::NonUnitAxis(_))
        ));
    }

    /// Rodrigues rotation formula, the independent SO(3) oracle.
    fn rodrigues(n: &Vec3, alpha: f64, v: &Vec3) -> Vec3 {
        *v * alpha.cos() + n.cross(v) * alpha.sin() + *n * (n.dot(v) * (1.0 - alpha.cos()))
    }

    #[test]
    fn so3_matches_rodrigues_on_grid() {
        let mut rng = rng_from_seed(11);
        for k in 0..25 {
            let n = random_unit_vec(&mut rng);
            let alpha = -2.0 * PI + 4.0 * PI * (k as f64) / 24.0;
            let r = so3_from_su2(&Su2::axis_angle(&n, alpha).unwrap());
            for v in [Vec3::X, Vec3::Y, Vec3::Z] {
                assert!(r.apply(&v).max_abs_diff(&rodrigues(&n, alpha, &v)) < 1e-13);
            }
        }
    }

    #[test]
    fn so3_intertwines_hopf() {
        // hopf(u z) = R(u) hopf(z)
        let mut rng = rng_from_seed(12);
        for _ in 0..50 {
            let u = random_su2(&mut rng);
            let z = random_spinor(&mut rng, 1.5);
            let (_, j) = hopf_map(&z);
            let (_, ju) = hopf_map(&u.apply(&z));
            assert!(ju.max_abs_diff(&so3_from_su2(&u).apply(&j)) < 1e-12);
        }
    }

    #[test]
    fn time_reversal_basics() {
        let th = time_reversal(&Spinor::new(c(1.0, 0.0), c(0.0, 0.0)));
        assert!(th.max_abs_diff(&Spinor::new(c(0.0, 0.0), c(1.0, 0.0))) < 1e-15);

        let mut rng = rng_from_seed(13);
        for _ in 0..50 {
            let z = random_spinor(&mut rng, 2.0);
            let (i, j) = hopf_map(&z);
            let (it, jt) = hopf_map(&time_reversal(&z));
            assert!((i - it).abs() < 1e-14);
            assert!(jt.max_abs_diff(&-j) < 1e-13);

            // Θ² = −1.
            let t2 = time_reversal(&time_reversal(&z));
            assert!(t2.max_abs_diff(&z.scale(c(-1.0, 0.0))) < 1e-15);

            // Θ commutes with SU(2).
            let u = random_su2(&mut rng);
            let a = time_reversal(&u.apply(&z));
            let b = u.apply(&time_reversal(&z));
            assert!(a.max_abs_diff(&b) < 1e-13);
        }
    }

    #[test]
    fn quaternion_matrix_properties() {
        let m = quaternion_matrix(&Spinor::new(c(1.0, 0.0), c(0.0, 0.0)));
        assert!(m.max_abs_diff(&SpinorMatrix::identity()) < 1e-15);

        let mut rng = rng_from_seed(14);
        for _ in 0..50 {
            let z = random_spinor(&mut rng, 2.0);
            let (i, _) = hopf_map(&z);
            let d = quaternion_matrix(&z).det();
            assert!((d.re - 2.0 * i).abs() < 1e-13 && d.im.abs() < 1e-14);

            let u = random_su2(&mut rng);
            let lhs = quaternion_matrix(&u.apply(&z));
            let rhs = *u.matrix() * quaternion_matrix(&z);
            assert!(lhs.max_abs_diff(&rhs) < 1e-13);
        }
    }

    #[test]
    fn recover_group_examples() {
        let mut rng = rng_from_seed(15);
        let z = random_spinor(&mut rng, 1.0);
        let g = recover_group(&z, &z).unwrap();
        assert!(g.matrix().max_abs_diff(&SpinorMatrix::identity()) < 1e-13);

        for _ in 0..50 {
            let zp = random_spinor(&mut rng, 1.0);
            let u = random_su2(&mut rng);
            let z = u.apply(&zp);
            let g = recover_group(&z, &zp).unwrap();
            assert!(g.matrix().max_abs_diff(u.matrix()) < 1e-12);

            // Common phase leaves g untouched.
            let phase = c(0.0, -0.37).exp();
            let g2 = recover_group(&z.scale(phase), &zp.scale(phase)).unwrap();
            assert!(g2.matrix().max_abs_diff(g.matrix()) < 1e-12);
        }

        assert_eq!(
            recover_group(&Spinor::ZERO, &Spinor::ZERO),
            Err(SpinorError::ZeroSpinor)
        );
        let z1 = Spinor::new(c(1.0, 0.0), c(0.0, 0.0));
        let z2 = Spinor::new(c(2.0, 0.0), c(0.0, 0.0));
        assert!(matches!(
            recover_group(&z1, &z2),
            Err(SpinorError::NormMismatch(_))
        ));
    }

    proptest! {
        #[test]
        fn hopf_norm_equals_intensity(a in -3.0..3.0f64, b in -3.0..3.0f64,
                                      cc in -3.0..3.0f64, d in -3.0..3.0f64) {
            let z = Spinor::from_reals(a, b, cc, d);
            let (i, j) = hopf_map(&z);
            prop_assert!((j.norm() - i).abs() <= 1e-14 * (1.0 + i));
            let (io, jo) = hopf_oracle(&z);
            prop_assert!((i - io).abs() <= 1e-14 * (1.0 + i));
            prop_assert!(j.max_abs_diff(&jo) <= 1e-14 * (1.0 + i));
        }

        #[test]
        fn so3_is_homomorphism(seed in 0u64..1000) {
            let mut rng = rng_from_seed(seed);
            let u = random_su2(&mut rng);
            let v = random_su2(&mut rng);
            let lhs = so3_from_su2(&(u * v));
            let rhs = so3_from_su2(&u) * so3_from_su2(&v);
            prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
            // R(u) = R(−u): the double cover.
            let mu = Su2::from_matrix(u.matrix().scale(Complex64::new(-1.0, 0.0))).unwrap();
            prop_assert!(so3_from_su2(&mu).max_abs_diff(&so3_from_su2(&u)) <= 1e-13);
        }

        #[test]
        fn recover_group_reproduces_spinor(seed in 0u64..1000) {
            let mut rng = rng_from_seed(seed);
            let zp = random_spinor(&mut rng, 1.0);
            let u = random_su2(&mut rng);
            let z = u.apply(&zp);
            let g = recover_group(&z, &zp).unwrap();
            prop_assert!(g.apply(&zp).max_abs_diff(&z) <= 1e-12);
        }
    }
}

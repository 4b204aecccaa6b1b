//! Both symplectic reductions realized numerically.
//!
//! Stage one quotients each spinor pair by the `U(1)` generated by `I − I'`,
//! landing on `T*SU(2)` minus the zero section with coordinates `(g, J)`
//! where `z = g Θz'`. In this chart `J' = −R(g⁻¹)J`, the symplectic
//! one-form is `θ = Σ J_i ρ_R^i = −Σ J'_i ρ_L^i`, and the momentum-map
//! flows act by closed-form left/right translations and conjugation.
//!
//! Stage two quotients the diangle level set `J + J' = 0` by the conjugation
//! action; for fixed `|J|` the level set `Λ_J` has two sections over
//! `SU(2)∖{±1}` joined by spheres at `g = ±1`, and the quotient is a
//! cylinder with coordinates `(J, τ)`, `τ = ±φ` on the upper/lower branch,
//! symplectic form `J dτ`. The tetrahedron manifold sits at `τ_r = −2ψ_r`,
//! and the reduced rectangle contour reproduces `2[S(λ₁) − S(λ₀)]`.
//!
//! The SU(2) character `χ^j(φ) = sin((j+½)φ)/sin(φ/2)` is the semiclassical
//! wave function attached to `Λ_J`.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::contour::{self, ContourError, SweepSpec};
use crate::geometry::{self, Orientation};
use crate::linalg::{Spinor, SpinorMatrix, Vec3};
use crate::spinor::{
    dot_sigma, hopf_map, recover_group, so3_from_su2, time_reversal, SpinorError, Su2,
};

#[derive(Debug, Error, PartialEq)]
pub enum ReductionError {
    #[error(transparent)]
    Spinor(#[from] SpinorError),
    #[error("tangent vector is not tangent to SU(2) at g (deviation {0:e})")]
    NotTangent(f64),
    #[error("the Casimir flow needs J ≠ 0")]
    ZeroMomentum,
    #[error("point is not on the Λ_J manifold")]
    NotMember,
    #[error(transparent)]
    Contour(#[from] ContourError),
}

/// A point of `T*SU(2)` in the chart coming from the first reduction:
/// the group element `g` and the right-invariant momentum components `J`.
#[derive(Debug, Clone, Copy)]
pub struct ReducedPoint {
    pub g: Su2,
    pub jvec: Vec3,
}

impl ReducedPoint {
    /// `J' = −R(g⁻¹) J`, the left-invariant companion momentum.
    pub fn jprime(&self) -> Vec3 {
        -so3_from_su2(&self.g.inverse()).apply(&self.jvec)
    }
}

/// Project a spinor pair with `I = I' > 0` to `(g, J)`: `g` is the unique
/// group element with `z = g Θz'` and `J = hopf(z)`. Invariant under the
/// gauge orbit of `I − I'`, which phases the two spinors oppositely:
/// `z → e^{−iα/2}z, z' → e^{+iα/2}z'`.
pub fn project_pair(z: &Spinor, zp: &Spinor) -> Result<ReducedPoint, ReductionError> {
    let g = recover_group(z, &time_reversal(zp))?;
    Ok(ReducedPoint {
        g,
        jvec: hopf_map(z).1,
    })
}

/// A tangent vector to `T*SU(2)` at a reduced point, as the matrix
/// increment `δg` plus the momentum increment `δJ`.
#[derive(Debug, Clone, Copy)]
pub struct Tangent {
    pub dg: SpinorMatrix,
    pub dj: Vec3,
}

impl Tangent {
    /// Tangent with right-invariant components `v`: `δg = −(i/2)(v·σ) g`.
    pub fn from_right_components(v: &Vec3, g: &Su2) -> Tangent {
        let half = Complex64::new(0.0, -0.5);
        Tangent {
            dg: dot_sigma(v).scale(half) * *g.matrix(),
            dj: Vec3::ZERO,
        }
    }
}

/// Right-invariant components of `δg`: the vector `v` with
/// `δg g† = −(i/2) v·σ`; errors unless `δg g†` is traceless anti-Hermitian.
pub fn right_components(p: &ReducedPoint, dg: &SpinorMatrix) -> Result<Vec3, ReductionError> {
    let xi = *dg * p.g.matrix().adjoint();
    let scale = xi.max_abs().max(1e-300);
    let herm_dev = xi.add(&xi.adjoint()).max_abs();
    let trace_dev = xi.trace().norm();
    if herm_dev > 1e-9 * scale || trace_dev > 1e-9 * scale {
        return Err(ReductionError::NotTangent(herm_dev.max(trace_dev) / scale));
    }
    // ξ = −(i/2) v·σ  ⇒  v_i = i tr(σ_i ξ).
    let i1 = Complex64::new(0.0, 1.0);
    let mut v = [0.0; 3];
    for (i, vi) in v.iter_mut().enumerate() {
        *vi = (i1 * (crate::spinor::pauli(i) * xi).trace()).re;
    }
    Ok(Vec3(v))
}

/// Left-invariant components: `w` with `g† δg = −(i/2) w·σ`.
fn left_components(p: &ReducedPoint, dg: &SpinorMatrix) -> Vec3 {
    let xi = p.g.matrix().adjoint() * *dg;
    let i1 = Complex64::new(0.0, 1.0);
    let mut w = [0.0; 3];
    for (i, wi) in w.iter_mut().enumerate() {
        *wi = (i1 * (crate::spinor::pauli(i) * xi).trace()).re;
    }
    Vec3(w)
}

/// Evaluate the canonical one-form `θ` on a tangent: `θ = Σ J_i ρ_R^i`.
/// (The `δJ` part of the tangent does not enter `θ`.)
pub fn one_form_value(p: &ReducedPoint, t: &Tangent) -> Result<f64, ReductionError> {
    Ok(one_form_both(p, t)?.0)
}

/// Both evaluations of `θ`: via right-invariant components (`J·ρ_R`) and
/// via left-invariant ones (`−J'·ρ_L`). They agree identically on tangents.
pub fn one_form_both(p: &ReducedPoint, t: &Tangent) -> Result<(f64, f64), ReductionError> {
    let v = right_components(p, &t.dg)?;
    let w = left_components(p, &t.dg);
    Ok((p.jvec.dot(&v), -p.jprime().dot(&w)))
}

/// Momentum-map generators with closed-form flows on `T*SU(2)`.
#[derive(Debug, Clone, Copy)]
pub enum Generator {
    /// `H = n·J`: left translation `g ↦ u(n,α) g`, `J ↦ R(n,α) J`.
    JDotN(Vec3),
    /// `H = n·J'`: right translation `g ↦ g u(n,α)⁻¹`, `J` fixed.
    JPrimeDotN(Vec3),
    /// `H = I = |J|`: `g ↦ u(ĵ,α) g`, both momenta fixed.
    CasimirI,
    /// `H = n·(J+J')`: conjugation `g ↦ u g u⁻¹`, both momenta rotate.
    TotalDotN(Vec3),
}

/// Flow a reduced point for parameter `alpha` under one of the generators.
pub fn flow(
    p: &ReducedPoint,
    generator: &Generator,
    alpha: f64,
) -> Result<ReducedPoint, ReductionError> {
    let out = match generator {
        Generator::JDotN(n) => {
            let u = Su2::axis_angle(&n.normalized(), alpha)?;
            ReducedPoint {
                g: u * p.g,
                jvec: so3_from_su2(&u).apply(&p.jvec),
            }
        }
        Generator::JPrimeDotN(n) => {
            let u = Su2::axis_angle(&n.normalized(), alpha)?;
            ReducedPoint {
                g: p.g * u.inverse(),
                jvec: p.jvec,
            }
        }
        Generator::CasimirI => {
            let j = p.jvec.norm();
            if j == 0.0 {
                return Err(ReductionError::ZeroMomentum);
            }
            let u = Su2::axis_angle(&(p.jvec * (1.0 / j)), alpha)?;
            ReducedPoint {
                g: u * p.g,
                jvec: p.jvec,
            }
        }
        Generator::TotalDotN(n) => {
            let u = Su2::axis_angle(&n.normalized(), alpha)?;
            ReducedPoint {
                g: u * p.g * u.inverse(),
                jvec: so3_from_su2(&u).apply(&p.jvec),
            }
        }
    };
    Ok(out)
}

/// Apply the upstairs spinor flow matching a [`Generator`] to a pair
/// `(z, z')`; projecting the result through [`project_pair`] reproduces
/// [`flow`] exactly. The Casimir flow is the Hopf-circle motion of `z`.
pub fn upstairs_flow(
    z: &Spinor,
    zp: &Spinor,
    generator: &Generator,
    alpha: f64,
) -> Result<(Spinor, Spinor), ReductionError> {
    Ok(match generator {
        Generator::JDotN(n) => {
            let u = Su2::axis_angle(&n.normalized(), alpha)?;
            (u.apply(z), *zp)
        }
        Generator::JPrimeDotN(n) => {
            let u = Su2::axis_angle(&n.normalized(), alpha)?;
            (*z, u.apply(zp))
        }
        Generator::CasimirI => {
            let phase = Complex64::new(0.0, -alpha / 2.0).exp();
            (z.scale(phase), *zp)
        }
        Generator::TotalDotN(n) => {
            let u = Su2::axis_angle(&n.normalized(), alpha)?;
            (u.apply(z), u.apply(zp))
        }
    })
}

/// Where a reduced point sits relative to the Lagrangian manifold `Λ_J`
/// (`J + J' = 0`, `|J| = J`): on the upper or lower section over
/// `SU(2)∖{±1}`, on one of the caustic spheres at `g = ±1`, or off it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LambdaMembership {
    Upper,
    Lower,
    SpherePlus,
    SphereMinus,
    NotMember,
}

const MEMBERSHIP_TOL: f64 = 1e-9;

/// Classify membership in `Λ_J` for the given `J > 0`. With
/// `g = u(a, φ) ≠ ±1`: `Upper` iff `J = +J a`, `Lower` iff `J = −J a`
/// (either way `J' = −J`); at `g = ±1` the spheres `|J| = J`.
pub fn lambda_membership(p: &ReducedPoint, j: f64) -> LambdaMembership {
    let tol = MEMBERSHIP_TOL * j.max(1.0);
    if (p.jvec.norm() - j).abs() > tol {
        return LambdaMembership::NotMember;
    }
    if (p.jvec + p.jprime()).max_abs() > tol {
        return LambdaMembership::NotMember;
    }
    let (axis, phi) = p.g.axis_angle_of();
    match axis {
        None => {
            if phi < std::f64::consts::PI {
                LambdaMembership::SpherePlus
            } else {
                LambdaMembership::SphereMinus
            }
        }
        Some(a) => {
            if p.jvec.max_abs_diff(&(a * j)) <= tol {
                LambdaMembership::Upper
            } else if p.jvec.max_abs_diff(&(a * (-j))) <= tol {
                LambdaMembership::Lower
            } else {
                LambdaMembership::NotMember
            }
        }
    }
}

/// A point of the second reduced phase space: the `(J, τ)` cylinder with
/// `τ = ±φ` defined mod 4π, pinched to a point at `J = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CylinderPoint {
    pub j: f64,
    pub tau: f64,
}

/// Project a `Λ_J` point to the cylinder: `τ = +φ` on the upper branch,
/// `−φ` on the lower, `0` on the sphere at `g = 1` and `2π` at `g = −1`.
/// Conjugation orbits project to single points, and the whole `J = 0`
/// stratum pinches to the single point `(0, 0)`.
pub fn project_cylinder(p: &ReducedPoint) -> Result<CylinderPoint, ReductionError> {
    let j = p.jvec.norm();
    if j < 1e-12 {
        return Ok(CylinderPoint { j: 0.0, tau: 0.0 });
    }
    let (_, phi) = p.g.axis_angle_of();
    match lambda_membership(p, j) {
        LambdaMembership::Upper => Ok(CylinderPoint { j, tau: phi }),
        LambdaMembership::Lower => Ok(CylinderPoint { j, tau: -phi }),
        LambdaMembership::SpherePlus => Ok(CylinderPoint { j, tau: 0.0 }),
        LambdaMembership::SphereMinus => Ok(CylinderPoint {
            j,
            tau: 2.0 * std::f64::consts::PI,
        }),
        LambdaMembership::NotMember => Err(ReductionError::NotMember),
    }
}

/// SU(2) character `χ^j(φ) = sin((j+½)φ)/sin(φ/2)` for `2j = two_j`,
/// evaluated through the Dirichlet-kernel sum near the caustics at
/// `φ ∈ {0, 2π}` where the ratio degenerates; `χ^j(0) = 2j+1`.
pub fn character(two_j: u32, phi: f64) -> f64 {
    let half = (phi / 2.0).sin();
    if half.abs() < 1e-6 {
        // Σ_m e^{imφ} over m = −j..j in integer steps.
        let mut total = 0.0;
        let mut m2 = -(two_j as i64);
        while m2 <= two_j as i64 {
            total += (m2 as f64 / 2.0 * phi).cos();
            m2 += 2;
        }
        return total;
    }
    ((two_j as f64 + 1.0) / 2.0 * phi).sin() / half
}

/// Report of the reduced rectangle-contour check for one family.
#[derive(Debug, Clone, Serialize)]
pub struct CylinderContourReport {
    /// `Σ_r ∮ J_r dτ_r` around the six rectangle contours, with `τ_r(λ)`
    /// produced by the full pipeline (contour legs → first reduction →
    /// second reduction).
    pub loop_integral: f64,
    /// `2[S(λ₁) − S(λ₀)]` from endpoint geometry.
    pub two_delta_s: f64,
    /// Upstairs wall integral `2 Σ_r ∫ ψ_r dJ_r` from the Stokes sweep.
    pub upstairs_wall: f64,
    pub mismatch_vs_delta_s: f64,
    pub mismatch_vs_upstairs: f64,
    /// Worst deviation of pipeline `τ_r` from `−2ψ_r` over the grid.
    pub max_tau_deviation: f64,
}

/// Run the second-stage contour check on a sweep family.
///
/// At each grid point the contour legs are executed on spinors, the
/// post-leg pairs are projected through both reductions to `(J_r, τ_r)`,
/// and the six rectangle contours (lower edge `τ: 0 → τ_r(λ₀)` at
/// `J_r(λ₀)`, left edge along `τ_r(λ)`, upper edge back to `τ = 0` at
/// `J_r(λ₁)`, closing along `τ = 0`) are integrated with `θ = Σ J_r dτ_r`.
/// The result must equal `2[S(λ₁) − S(λ₀)]` and the upstairs wall integral.
pub fn cylinder_contour_check(spec: &SweepSpec) -> Result<CylinderContourReport, ReductionError> {
    let stokes = contour::stokes_sweep(spec)?;
    let lambdas = spec.lambdas();
    let mut tau = vec![[0.0; 6]; lambdas.len()];
    let mut jlen = vec![[0.0; 6]; lambdas.len()];
    let mut max_tau_dev = 0.0f64;
    for (i, &l) in lambdas.iter().enumerate() {
        let edges = spec.edges_at(l).map_err(ContourError::from)?;
        let emb = geometry::embed(&edges, Orientation::Positive).map_err(ContourError::from)?;
        let p = contour::build_config(&emb)?;
        let pp = contour::leg2(&contour::leg1(&p, &emb.normals), &emb.normals);
        for r in 0..6 {
            let (z, zp) = &pp.pairs[r];
            let point = project_pair(z, zp)?;
            let cyl = project_cylinder(&point)?;
            tau[i][r] = cyl.tau;
            jlen[i][r] = cyl.j;
            max_tau_dev = max_tau_dev.max((cyl.tau + 2.0 * emb.psi[r]).abs());
        }
    }

    let n = lambdas.len();
    let mut loop_integral = 0.0;
    for r in 0..6 {
        // Lower horizontal edge at λ₀: τ from 0 to τ_r(λ₀).
        loop_integral += jlen[0][r] * (tau[0][r] - 0.0);
        // Left edge along the family: Stieltjes trapezoid of J dτ.
        for i in 0..n - 1 {
            loop_integral += 0.5 * (jlen[i][r] + jlen[i + 1][r]) * (tau[i + 1][r] - tau[i][r]);
        }
        // Upper horizontal edge at λ₁: τ from τ_r(λ₁) back to 0.
        loop_integral += jlen[n - 1][r] * (0.0 - tau[n - 1][r]);
        // Closing edge runs along τ = 0: no contribution to ∮ J dτ.
    }

    let two_delta_s = 2.0 * (stokes.rows[n - 1].s - stokes.rows[0].s);
    Ok(CylinderContourReport {
        loop_integral,
        two_delta_s,
        upstairs_wall: stokes.wall_integral,
        mismatch_vs_delta_s: (loop_integral - two_delta_s).abs(),
        mismatch_vs_upstairs: (loop_integral - stokes.wall_integral).abs(),
        max_tau_deviation: max_tau_dev,
    })
}

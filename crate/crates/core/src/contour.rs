//! The twelve-spinor configuration of a tetrahedron and the closed
//! three-leg contour whose action integral is twice the phase
//! `S = Σ J_r ψ_r`.
//!
//! Each edge `r` carries a pair of opposite vectors: `J_r` on the oriented
//! boundary of one face and `J'_r` on the other, so that the three vectors
//! assigned to every face sum to zero (triangle conditions) and
//! `J_r + J'_r = 0` (diangle conditions). Each vector is lifted to a spinor
//! through the Hopf map, with `z'_r = ζ_r` and `z_r = Θζ_r`.
//!
//! The contour: leg 1 rotates every pair by π about the normal of the face
//! carrying `J'_r`, inverting all vectors while preserving the diangle
//! conditions; leg 2 rotates every face by −π about its own (frozen) normal,
//! restoring the tetrahedron while preserving the triangle conditions. The
//! primed spinors return exactly; each unprimed spinor picks up the
//! holonomy phase `e^{iψ_r}`. Leg 3 unwinds those phases along the Hopf
//! circles, with action `Σ 2ψ_r J_r = 2S`.
//!
//! Flows are exact one-parameter SU(2) subgroups (closed-form exponentials);
//! no ODE integration appears anywhere.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    self, classify, EdgeLengths, ExistenceClass, GeometryError, Orientation, TetraEmbedding,
    EDGE_VERTICES, FACE_VERTICES, PRIMED_FACE, UNPRIMED_FACE,
};
use crate::linalg::{Spinor, Vec3};
use crate::spinor::{hopf_map, time_reversal, Su2};

#[derive(Debug, Error, PartialEq)]
pub enum ContourError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("action integral needs at least two path samples")]
    PathTooShort,
    #[error("sweep grid point λ={0} is not a nondegenerate tetrahedron")]
    SweepLeavesExistence(f64),
}

/// The twelve spinors `(z_r, z'_r)`, r = 1..6.
///
/// Serializes as `{"pairs": [[z, z'], ...]}` with each spinor a pair of
/// `[re, im]` components.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorConfig {
    pub pairs: [(Spinor, Spinor); 6],
}

type SpinorWire = [[f64; 2]; 2];
type PairWire = [SpinorWire; 2];

fn spinor_to_wire(z: &Spinor) -> SpinorWire {
    [[z.0[0].re, z.0[0].im], [z.0[1].re, z.0[1].im]]
}

fn spinor_from_wire(w: &SpinorWire) -> Spinor {
    Spinor::from_reals(w[0][0], w[0][1], w[1][0], w[1][1])
}

impl serde::Serialize for SpinorConfig {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let pairs: Vec<PairWire> = self
            .pairs
            .iter()
            .map(|(z, zp)| [spinor_to_wire(z), spinor_to_wire(zp)])
            .collect();
        let mut s = serializer.serialize_struct("SpinorConfig", 1)?;
        s.serialize_field("pairs", &pairs)?;
        s.end()
    }
}

impl<'de> serde::Deserialize<'de> for SpinorConfig {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            pairs: Vec<PairWire>,
        }
        let wire = Wire::deserialize(deserializer)?;
        if wire.pairs.len() != 6 {
            return Err(serde::de::Error::custom("expected exactly six spinor pairs"));
        }
        let mut pairs = [(Spinor::ZERO, Spinor::ZERO); 6];
        for (slot, p) in pairs.iter_mut().zip(wire.pairs.iter()) {
            *slot = (spinor_from_wire(&p[0]), spinor_from_wire(&p[1]));
        }
        Ok(SpinorConfig { pairs })
    }
}

impl SpinorConfig {
    /// Angular momentum vector of the unprimed spinor of pair `r`.
    pub fn jvec(&self, r: usize) -> Vec3 {
        hopf_map(&self.pairs[r].0).1
    }

    /// Angular momentum vector of the primed spinor of pair `r`.
    pub fn jprime(&self, r: usize) -> Vec3 {
        hopf_map(&self.pairs[r].1).1
    }

    /// `I_r = I'_r`, the common intensity of pair `r`.
    pub fn intensity(&self, r: usize) -> f64 {
        hopf_map(&self.pairs[r].0).0
    }

    /// Sum of the three vectors assigned to face `f` by the incidence table.
    pub fn face_sum(&self, f: usize) -> Vec3 {
        let mut s = Vec3::ZERO;
        for r in 0..6 {
            if UNPRIMED_FACE[r] == f {
                s = s + self.jvec(r);
            }
            if PRIMED_FACE[r] == f {
                s = s + self.jprime(r);
            }
        }
        s
    }

    pub fn total_j(&self) -> Vec3 {
        (0..6).fold(Vec3::ZERO, |acc, r| acc + self.jvec(r) + self.jprime(r))
    }

    /// Worst diangle violation `max_r |J_r + J'_r|∞`.
    pub fn max_diangle_error(&self) -> f64 {
        (0..6)
            .map(|r| (self.jvec(r) + self.jprime(r)).max_abs())
            .fold(0.0, f64::max)
    }

    /// Worst triangle violation `max_f |Σ_face J|∞`.
    pub fn max_face_error(&self) -> f64 {
        (0..4).map(|f| self.face_sum(f).max_abs()).fold(0.0, f64::max)
    }

    /// Largest componentwise distance to another configuration.
    pub fn max_abs_diff(&self, other: &SpinorConfig) -> f64 {
        self.pairs
            .iter()
            .zip(other.pairs.iter())
            .map(|(a, b)| a.0.max_abs_diff(&b.0).max(a.1.max_abs_diff(&b.1)))
            .fold(0.0, f64::max)
    }
}

/// Spinor section of the Hopf map: `ζ` with `½ ζ†σζ = v`, using two charts
/// so the lift stays well conditioned on the whole sphere. The overall phase
/// is a gauge choice; nothing downstream depends on it.
pub fn hopf_section(v: &Vec3) -> Spinor {
    let j = v.norm();
    if v[2] >= 0.0 {
        let denom = (j + v[2]).sqrt();
        Spinor::new(
            Complex64::new(denom, 0.0),
            Complex64::new(v[0], v[1]) / denom,
        )
    } else {
        let denom = (j - v[2]).sqrt();
        Spinor::new(
            Complex64::new(v[0], -v[1]) / denom,
            Complex64::new(denom, 0.0),
        )
    }
}

/// Assemble the twelve-spinor configuration of an embedded tetrahedron.
///
/// Every face's boundary is traversed counterclockwise as seen from outside
/// (along the outward normal); the directed edge vectors of that traversal
/// fill the face's three slots in the incidence table. The lift sets
/// `z'_r = ζ_r` with `hopf(ζ_r) = J'_r` and `z_r = Θζ_r`.
pub fn build_config(emb: &TetraEmbedding) -> Result<SpinorConfig, ContourError> {
    let mut jprime_vec = [Vec3::ZERO; 6];
    let mut jvec = [Vec3::ZERO; 6];
    for f in 0..4 {
        let [p, q, r] = FACE_VERTICES[f];
        let n = &emb.normals[f];
        // Orient (v0, v1, v2) so the traversal is counterclockwise from
        // outside: (v1−v0)×(v2−v0) along the outward normal.
        let cross = (emb.vertices[q] - emb.vertices[p])
            .cross(&(emb.vertices[r] - emb.vertices[p]));
        let order = if cross.dot(n) >= 0.0 { [p, q, r] } else { [p, r, q] };
        for k in 0..3 {
            let (x, y) = (order[k], order[(k + 1) % 3]);
            let e = EDGE_VERTICES
                .iter()
                .position(|&(a, b)| (a, b) == (x, y) || (a, b) == (y, x))
                .expect("face boundary segments are edges");
            let vec = emb.vertices[y] - emb.vertices[x];
            if UNPRIMED_FACE[e] == f {
                jvec[e] = vec;
            } else {
                debug_assert_eq!(PRIMED_FACE[e], f);
                jprime_vec[e] = vec;
            }
        }
    }
    let mut pairs = [(Spinor::ZERO, Spinor::ZERO); 6];
    for r in 0..6 {
        if jprime_vec[r].norm() == 0.0 {
            return Err(GeometryError::DegenerateFace(PRIMED_FACE[r]).into());
        }
        debug_assert!((jvec[r] + jprime_vec[r]).max_abs() < 1e-12 * jvec[r].norm().max(1.0));
        let zeta = hopf_section(&jprime_vec[r]);
        pairs[r] = (time_reversal(&zeta), zeta);
    }
    Ok(SpinorConfig { pairs })
}

/// Leg 1 (`P → Q`): flow of `Σ_r n_{f'(r)}·(J_r + J'_r)` for parameter π.
/// Both spinors of each pair rotate by `exp[−i(π/2) n·σ]` about the normal
/// of the face carrying `J'_r`; all twelve vectors invert and the diangle
/// conditions hold along the way.
pub fn leg1(config: &SpinorConfig, normals: &[Vec3; 4]) -> SpinorConfig {
    leg1_partial(config, normals, std::f64::consts::PI)
}

/// Leg 1 stopped at intermediate parameter `alpha ∈ [0, π]`.
pub fn leg1_partial(config: &SpinorConfig, normals: &[Vec3; 4], alpha: f64) -> SpinorConfig {
    let mut pairs = config.pairs;
    for (r, pair) in pairs.iter_mut().enumerate() {
        let u = Su2::axis_angle(&normals[PRIMED_FACE[r]], alpha).expect("unit normal");
        pair.0 = u.apply(&pair.0);
        pair.1 = u.apply(&pair.1);
    }
    SpinorConfig { pairs }
}

/// Leg 2 (`Q → P'`): flow of `Σ_f n_f·J_f` for parameter −π, with the
/// normals still frozen at their initial-point values. Every slot rotates by
/// `exp[+i(π/2) n_{face(slot)}·σ]`; the triangle conditions hold along the
/// way and the tetrahedron reassembles at the end.
pub fn leg2(config: &SpinorConfig, normals: &[Vec3; 4]) -> SpinorConfig {
    leg2_partial(config, normals, std::f64::consts::PI)
}

/// Leg 2 stopped after `alpha ∈ [0, π]` of the reverse flow.
pub fn leg2_partial(config: &SpinorConfig, normals: &[Vec3; 4], alpha: f64) -> SpinorConfig {
    let mut pairs = config.pairs;
    for (r, pair) in pairs.iter_mut().enumerate() {
        let uu = Su2::axis_angle(&normals[UNPRIMED_FACE[r]], -alpha).expect("unit normal");
        let up = Su2::axis_angle(&normals[PRIMED_FACE[r]], -alpha).expect("unit normal");
        pair.0 = uu.apply(&pair.0);
        pair.1 = up.apply(&pair.1);
    }
    SpinorConfig { pairs }
}

/// Leg 3 (`P' → P`): six sequential Hopf-circle flows, step `r` being the
/// `I_r` flow for parameter `2ψ_r`, i.e. `z_r ↦ e^{−iψ_r} z_r`.
pub fn leg3(config: &SpinorConfig, psi: &[f64; 6]) -> SpinorConfig {
    let mut pairs = config.pairs;
    for (r, pair) in pairs.iter_mut().enumerate() {
        pair.0 = pair.0.scale(Complex64::new(0.0, -psi[r]).exp());
    }
    SpinorConfig { pairs }
}

/// Trapezoid estimate of `∫ Σ_r (i z_r† dz_r + i z'_r† dz'_r)` along a
/// sampled path. For a flow of a bilinear Hamiltonian `H` over parameter
/// span `α` this converges to `α·H` at O(1/N²), with vanishing imaginary
/// part on norm-preserving paths.
pub fn action_integral(path: &[SpinorConfig]) -> Result<Complex64, ContourError> {
    if path.len() < 2 {
        return Err(ContourError::PathTooShort);
    }
    let i1 = Complex64::new(0.0, 1.0);
    let mut total = Complex64::new(0.0, 0.0);
    for w in path.windows(2) {
        for r in 0..6 {
            let (za, zpa) = &w[0].pairs[r];
            let (zb, zpb) = &w[1].pairs[r];
            let mid = za.add(zb).scale(Complex64::new(0.5, 0.0));
            let midp = zpa.add(zpb).scale(Complex64::new(0.5, 0.0));
            total += i1 * (mid.inner(&zb.sub(za)) + midp.inner(&zpb.sub(zpa)));
        }
    }
    Ok(total)
}

/// Sample the leg-1 flow at `n` equally spaced parameters in `[0, π]`,
/// applying the exact exponential to the initial configuration each time.
pub fn sample_leg1(config: &SpinorConfig, normals: &[Vec3; 4], n: usize) -> Vec<SpinorConfig> {
    (0..n)
        .map(|k| {
            let alpha = std::f64::consts::PI * k as f64 / (n - 1) as f64;
            leg1_partial(config, normals, alpha)
        })
        .collect()
}

/// Sample the leg-2 flow at `n` parameters; `config` is the leg-1 endpoint.
pub fn sample_leg2(config: &SpinorConfig, normals: &[Vec3; 4], n: usize) -> Vec<SpinorConfig> {
    (0..n)
        .map(|k| {
            let alpha = std::f64::consts::PI * k as f64 / (n - 1) as f64;
            leg2_partial(config, normals, alpha)
        })
        .collect()
}

/// Sample step `r` of leg 3 (the `I_r` flow over `[0, 2ψ_r]`) at `n`
/// parameters; `config` is the state before the step.
pub fn sample_leg3_step(
    config: &SpinorConfig,
    r: usize,
    psi_r: f64,
    n: usize,
) -> Vec<SpinorConfig> {
    (0..n)
        .map(|k| {
            let alpha = 2.0 * psi_r * k as f64 / (n - 1) as f64;
            let mut pairs = config.pairs;
            pairs[r].0 = pairs[r].0.scale(Complex64::new(0.0, -alpha / 2.0).exp());
            SpinorConfig { pairs }
        })
        .collect()
}

/// Result of running the full contour on one tetrahedron.
#[derive(Debug, Clone)]
pub struct ContourResult {
    /// Complex action integrals along the three legs (leg 3 summed over its
    /// six steps).
    pub actions: [Complex64; 3],
    /// Phase picked up by each unprimed spinor under leg1∘leg2, extracted
    /// from `⟨z_r(P), z_r(P')⟩`: an independent computation of the dihedral
    /// angles.
    pub holonomy_phases: [f64; 6],
    /// `S = Σ J_r ψ_r` from the geometry module.
    pub pr_phase: f64,
    /// `max |config after leg 3 − P|` componentwise.
    pub closure_error: f64,
}

/// Execute `P → Q → P' → P` on the tetrahedron with the given edges,
/// sampling each leg at `n_samples` points for the action integrals.
pub fn run_contour(edges: &EdgeLengths, n_samples: usize) -> Result<ContourResult, ContourError> {
    let emb = geometry::embed(edges, Orientation::Positive)?;
    let p = build_config(&emb)?;
    let q = leg1(&p, &emb.normals);
    let p_prime = leg2(&q, &emb.normals);

    let mut holonomy = [0.0; 6];
    for (r, h) in holonomy.iter_mut().enumerate() {
        *h = p.pairs[r].0.inner(&p_prime.pairs[r].0).arg();
    }

    let action1 = action_integral(&sample_leg1(&p, &emb.normals, n_samples))?;
    let action2 = action_integral(&sample_leg2(&q, &emb.normals, n_samples))?;
    let mut action3 = Complex64::new(0.0, 0.0);
    let mut state = p_prime.clone();
    for r in 0..6 {
        let step = sample_leg3_step(&state, r, emb.psi[r], n_samples);
        action3 += action_integral(&step)?;
        state = step.last().expect("nonempty step").clone();
    }
    let closure_error = state.max_abs_diff(&p);
    let s = geometry::pr_phase(edges, Orientation::Positive)?;

    Ok(ContourResult {
        actions: [action1, action2, action3],
        holonomy_phases: holonomy,
        pr_phase: s,
        closure_error,
    })
}

/// A one-parameter family of edge lengths `J(λ) = base + λ·direction` on a
/// grid of `n` points in `[lambda0, lambda1]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: [f64; 6],
    pub direction: [f64; 6],
    pub lambda0: f64,
    pub lambda1: f64,
    pub n: usize,
}

impl SweepSpec {
    pub fn edges_at(&self, lambda: f64) -> Result<EdgeLengths, GeometryError> {
        let mut j = [0.0; 6];
        for (r, v) in j.iter_mut().enumerate() {
            *v = self.base[r] + lambda * self.direction[r];
        }
        EdgeLengths::new(j)
    }

    pub fn lambdas(&self) -> Vec<f64> {
        let n = self.n.max(2);
        (0..n)
            .map(|i| self.lambda0 + (self.lambda1 - self.lambda0) * i as f64 / (n - 1) as f64)
            .collect()
    }
}

/// The θ-integrals along the two λ-varying edges of the swept rectangle
/// contour: one along the initial points `P(λ)`, one along the post-leg
/// points `P'(λ)`, both taken in the direction of increasing λ.
///
/// Traversed as part of the closed contour (forward along `P'`, backward
/// along `P`) they must cancel: their common imaginary part `2iΣΔJ_r` drops
/// in the difference and the remaining real part is `−2Σ∫J_r dψ_r`, which
/// vanishes by the Schläfli identity. The individual values are reported;
/// only the traversed sum carries an invariant.
#[derive(Debug, Clone, Serialize)]
pub struct VerticalEdgeActions {
    pub along_p: [f64; 2],
    pub along_p_prime: [f64; 2],
    /// `along_p_prime − along_p`: the pair's total contribution to the loop.
    pub traversed_sum: [f64; 2],
}

/// Integrate θ along both λ-varying edges of the rectangle contour.
///
/// The Hopf section is phase-aligned from one grid point to the next
/// (`⟨ζ_i, ζ_{i+1}⟩` real positive) so the spinor curves stay smooth in λ
/// even when the pointwise section switches charts.
pub fn vertical_edge_actions(spec: &SweepSpec) -> Result<VerticalEdgeActions, ContourError> {
    let lambdas = spec.lambdas();
    let mut p_path = Vec::with_capacity(lambdas.len());
    let mut pp_path = Vec::with_capacity(lambdas.len());
    let mut prev: Option<SpinorConfig> = None;
    for &l in &lambdas {
        let edges = spec
            .edges_at(l)
            .map_err(|_| ContourError::SweepLeavesExistence(l))?;
        if classify(&edges) != ExistenceClass::Nondegenerate {
            return Err(ContourError::SweepLeavesExistence(l));
        }
        let emb = geometry::embed(&edges, Orientation::Positive)?;
        let mut p = build_config(&emb)?;
        if let Some(prev) = &prev {
            for r in 0..6 {
                let overlap = prev.pairs[r].1.inner(&p.pairs[r].1);
                let phase = (overlap / overlap.norm()).conj();
                p.pairs[r].1 = p.pairs[r].1.scale(phase);
                // z = Θζ picks up the conjugate phase under the antilinear Θ.
                p.pairs[r].0 = time_reversal(&p.pairs[r].1);
            }
        }
        pp_path.push(leg2(&leg1(&p, &emb.normals), &emb.normals));
        prev = Some(p.clone());
        p_path.push(p);
    }
    let along_p = action_integral(&p_path)?;
    let along_p_prime = action_integral(&pp_path)?;
    let sum = along_p_prime - along_p;
    Ok(VerticalEdgeActions {
        along_p: [along_p.re, along_p.im],
        along_p_prime: [along_p_prime.re, along_p_prime.im],
        traversed_sum: [sum.re, sum.im],
    })
}

/// One grid point of a sweep.
#[derive(Debug, Clone, Serialize)]
pub struct StokesRow {
    pub lambda: f64,
    pub s: f64,
    pub psi: [f64; 6],
    /// Pointwise Schläfli residual `Σ_r J_r dψ_r/dλ` by central differences
    /// (second-order one-sided at the grid ends).
    pub residual: f64,
}

/// Report of the Stokes-theorem sweep.
#[derive(Debug, Clone, Serialize)]
pub struct StokesReport {
    pub rows: Vec<StokesRow>,
    /// `Σ_r ∫ ψ_r (dJ_r/dλ) dλ` by trapezoid quadrature along the family.
    pub quadrature_delta_s: f64,
    /// `S(λ₁) − S(λ₀)` straight from the endpoint geometry.
    pub endpoint_delta_s: f64,
    /// Wall integral of the symplectic form, `2 Σ_r ∫ ψ_r dJ_r`.
    pub wall_integral: f64,
    /// `|quadrature − endpoints|`.
    pub mismatch: f64,
    pub max_abs_residual: f64,
}

/// Sweep the contour base point along the family: every grid point must be
/// a nondegenerate tetrahedron. Verifies the Stokes identity
/// `S(λ₁) − S(λ₀) = Σ_r ∫ ψ_r (dJ_r/dλ) dλ` with the two sides computed by
/// independent code paths, and reports the pointwise Schläfli residual
/// along the family.
pub fn stokes_sweep(spec: &SweepSpec) -> Result<StokesReport, ContourError> {
    let lambdas = spec.lambdas();
    let mut psi = Vec::with_capacity(lambdas.len());
    let mut s_vals = Vec::with_capacity(lambdas.len());
    let mut j_vals = Vec::with_capacity(lambdas.len());
    for &l in &lambdas {
        let edges = spec
            .edges_at(l)
            .map_err(|_| ContourError::SweepLeavesExistence(l))?;
        if classify(&edges) != ExistenceClass::Nondegenerate {
            return Err(ContourError::SweepLeavesExistence(l));
        }
        let emb = geometry::embed(&edges, Orientation::Positive)?;
        s_vals.push(
            edges
                .0
                .iter()
                .zip(emb.psi.iter())
                .map(|(j, p)| j * p)
                .sum::<f64>(),
        );
        psi.push(emb.psi);
        j_vals.push(edges.0);
    }

    // Stieltjes trapezoid for Σ ∫ ψ_r dJ_r.
    let mut quad = 0.0;
    for i in 0..lambdas.len() - 1 {
        for r in 0..6 {
            quad += 0.5 * (psi[i][r] + psi[i + 1][r]) * (j_vals[i + 1][r] - j_vals[i][r]);
        }
    }

    let n = lambdas.len();
    let rows: Vec<StokesRow> = (0..n)
        .map(|i| {
            let residual: f64 = (0..6)
                .map(|r| {
                    let dpsi = if i == 0 {
                        -(3.0 * psi[0][r] - 4.0 * psi[1][r] + psi[2][r])
                            / (lambdas[2] - lambdas[0])
                    } else if i == n - 1 {
                        (3.0 * psi[n - 1][r] - 4.0 * psi[n - 2][r] + psi[n - 3][r])
                            / (lambdas[n - 1] - lambdas[n - 3])
                    } else {
                        (psi[i + 1][r] - psi[i - 1][r]) / (lambdas[i + 1] - lambdas[i - 1])
                    };
                    j_vals[i][r] * dpsi
                })
                .sum();
            StokesRow {
                lambda: lambdas[i],
                s: s_vals[i],
                psi: psi[i],
                residual,
            }
        })
        .collect();

    let endpoint_delta_s = s_vals[n - 1] - s_vals[0];
    let max_abs_residual = rows.iter().map(|r| r.residual.abs()).fold(0.0, f64::max);
    Ok(StokesReport {
        quadrature_delta_s: quad,
        endpoint_delta_s,
        wall_integral: 2.0 * quad,
        mismatch: (quad - endpoint_delta_s).abs(),
        max_abs_residual,
        rows,
    })
}

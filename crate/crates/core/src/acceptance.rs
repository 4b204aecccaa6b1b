//! End-to-end acceptance checks, one function per criterion, shared by the
//! `acceptance` integration test target and the CLI `acceptance`
//! subcommand. Every tolerance is pinned here as a named constant.

use std::time::Instant;

use rand::Rng;

use crate::contour::{self, SweepSpec};
use crate::geometry::{self, default_step, Orientation};
use crate::qdeform;
use crate::reduction::{self, Generator, Tangent};
use crate::sample::{
    random_nondegenerate_edges, random_spinor, random_su2, random_unit_vec, rng_from_seed,
};
use crate::sixj::{self, HalfInt, SixJArgs};
use crate::spinor::time_reversal;

/// Identity residual bound for the finite-difference geometry checks
/// (criteria 1–3) at step `h = 1e-5 · mean edge`.
pub const GEOMETRY_RESIDUAL_TOL: f64 = 1e-5;
/// Holonomy phases must match the geometric dihedral angles this tightly.
pub const HOLONOMY_TOL: f64 = 1e-9;
/// Primed spinors must return exactly after leg1∘leg2.
pub const PRIMED_RETURN_TOL: f64 = 1e-12;
/// Per-leg action bounds at N = 10⁴ samples.
pub const LEG12_ACTION_TOL: f64 = 1e-8;
pub const LEG3_ACTION_TOL: f64 = 1e-6;
pub const ACTION_IMAG_TOL: f64 = 1e-9;
/// Stokes sweep and reduced-contour agreement at Nλ = 200.
pub const STOKES_TOL: f64 = 1e-5;
/// Reduction equivariance and one-form agreement.
pub const EQUIVARIANCE_TOL: f64 = 1e-12;
/// Character formula versus the exponential sum.
pub const CHARACTER_TOL: f64 = 1e-12;
/// q-deformed coproduct coordinate agreement.
pub const COPRODUCT_TOL: f64 = 1e-13;

/// Runtime budgets in seconds, from the criterion statements.
pub const BUDGET_GEOMETRY: f64 = 10.0;
pub const BUDGET_CONTOUR: f64 = 5.0;
pub const BUDGET_SIXJ_EXACT: f64 = 30.0;
pub const BUDGET_SIXJ_ASYM: f64 = 60.0;

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub seconds: f64,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "criterion-{:02} {:<22} {} ({:.2}s): {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.seconds,
            self.details
        )
    }

    /// The same line without the wall-clock timing, so output is
    /// reproducible byte for byte.
    pub fn line_stable(&self) -> String {
        format!(
            "criterion-{:02} {:<22} {}: {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.details
        )
    }
}

fn outcome(
    id: u32,
    name: &'static str,
    start: Instant,
    passed: bool,
    details: String,
) -> CriterionOutcome {
    CriterionOutcome {
        id,
        name,
        passed,
        details,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Criterion 1: Schläfli identity residual over 100 seeded nondegenerate
/// edge sets with `J_r ∈ [0.5, 3]`.
pub fn criterion_01(seed: u64) -> CriterionOutcome {
    let start = Instant::now();
    let mut rng = rng_from_seed(seed);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let edges = random_nondegenerate_edges(&mut rng);
        let h = default_step(&edges);
        match geometry::schlafli_residual(&edges, h) {
            Ok(r) => worst = worst.max(r),
            Err(e) => {
                return outcome(1, "schlafli-identity", start, false, format!("error: {e}"))
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let passed = worst <= GEOMETRY_RESIDUAL_TOL && elapsed < BUDGET_GEOMETRY;
    outcome(
        1,
        "schlafli-identity",
        start,
        passed,
        format!("max_s |Σ_r J_r ∂ψ_r/∂J_s| = {worst:.3e} over 100 samples"),
    )
}

/// Criterion 2: Jacobian symmetry and the Euler identity on the same
/// sample population.
pub fn criterion_02(seed: u64) -> CriterionOutcome {
    let start = Instant::now();
    let mut rng = rng_from_seed(seed);
    let mut worst_sym = 0.0f64;
    let mut worst_euler = 0.0f64;
    for _ in 0..100 {
        let edges = random_nondegenerate_edges(&mut rng);
        let h = default_step(&edges);
        match geometry::jacobian_psi(&edges, h) {
            Ok(d) => {
                worst_sym = worst_sym.max(geometry::jacobian_asymmetry(&d));
                worst_euler = worst_euler.max(geometry::euler_residual_of(&edges, &d));
            }
            Err(e) => return outcome(2, "jacobian-euler", start, false, format!("error: {e}")),
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let passed = worst_sym <= GEOMETRY_RESIDUAL_TOL
        && worst_euler <= GEOMETRY_RESIDUAL_TOL
        && elapsed < BUDGET_GEOMETRY;
    outcome(
        2,
        "jacobian-euler",
        start,
        passed,
        format!("‖D−Dᵀ‖max = {worst_sym:.3e}, Euler residual = {worst_euler:.3e}"),
    )
}

/// Criterion 3: generating-function identity `∂S/∂J_r = ψ_r`.
pub fn criterion_03(seed: u64) -> CriterionOutcome {
    let start = Instant::now();
    let mut rng = rng_from_seed(seed);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let edges = random_nondegenerate_edges(&mut rng);
        let h = default_step(&edges);
        match geometry::genfun_residual(&edges, h) {
            Ok(r) => worst = worst.max(r),
            Err(e) => {
                return outcome(3, "generating-function", start, false, format!("error: {e}"))
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let passed = worst <= GEOMETRY_RESIDUAL_TOL && elapsed < BUDGET_GEOMETRY;
    outcome(
        3,
        "generating-function",
        start,
        passed,
        format!("max_r |∂S/∂J_r − ψ_r| = {worst:.3e} over 100 samples"),
    )
}

/// Criterion 4: contour holonomy — leg1∘leg2 multiplies each `z_r` by
/// `e^{iψ_r}` and restores every `z'_r`, over 20 random tetrahedra.
pub fn criterion_04(seed: u64) -> CriterionOutcome {
    let start = Instant::now();
    let mut rng = rng_from_seed(seed);
    let mut worst_phase = 0.0f64;
    let mut worst_primed = 0.0f64;
    for _ in 0..20 {
        let edges = random_nondegenerate_edges(&mut rng);
        let emb = match geometry::embed(&edges, Orientation::Positive) {
            Ok(e) => e,
            Err(e) => return outcome(4, "contour-holonomy", start, false, format!("error: {e}")),
        };
        let p = match contour::build_config(&emb) {
            Ok(c) => c,
            Err(e) => return outcome(4, "contour-holonomy", start, false, format!("error: {e}")),
        };
        let pp = contour::leg2(&contour::leg1(&p, &emb.normals), &emb.normals);
        for r in 0..6 {
            let phase = p.pairs[r].0.inner(&pp.pairs[r].0).arg();
            worst_phase = worst_phase.max((phase - emb.psi[r]).abs());
            worst_primed = worst_primed.max(pp.pairs[r].1.max_abs_diff(&p.pairs[r].1));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let passed = worst_phase <= HOLONOMY_TOL
        && worst_primed <= PRIMED_RETURN_TOL
        && elapsed < BUDGET_CONTOUR;
    outcome(
        4,
        "contour-holonomy",
        start,
        passed,
        format!("max |phase−ψ| = {worst_phase:.3e}, max |z'−z'₀| = {worst_primed:.3e}"),
    )
}

/// Criterion 5: per-leg action integrals at N = 10⁴ path samples.
pub fn criterion_05(seed: u64) -> CriterionOutcome {
    let start = Instant::now();
    let mut rng = rng_from_seed(seed);
    let mut tetra = vec![geometry::EdgeLengths::regular(1.0)];
    tetra.push(random_nondegenerate_edges(&mut rng));
    tetra.push(random_nondegenerate_edges(&mut rng));
    let mut worst12 = 0.0f64;
    let mut worst3 = 0.0f64;
    let mut worst_im = 0.0f64;
    for edges in &tetra {
        let result = match contour::run_contour(edges, 10_000) {
            Ok(r) => r,
            Err(e) => return outcome(5, "per-leg-actions", start, false, format!("error: {e}")),
        };
        worst12 = worst12
            .max(result.actions[0].norm())
            .max(result.actions[1].norm());
        worst3 = worst3.max((result.actions[2].re - 2.0 * result.pr_phase).abs());
        worst_im = worst_im.max(result.actions[2].im.abs());
    }
    let passed =
        worst12 <= LEG12_ACTION_TOL && worst3 <= LEG3_ACTION_TOL && worst_im <= ACTION_IMAG_TOL;
    outcome(
        5,
        "per-leg-actions",
        start,
        passed,
        format!("|leg1,2| = {worst12:.3e}, |leg3 − 2S| = {worst3:.3e}, |Im| = {worst_im:.3e}"),
    )
}

fn sweep_families(seed: u64) -> Vec<(&'static str, SweepSpec)> {
    let mut rng = rng_from_seed(seed ^ 0x5eed);
    let mut dir = [0.0; 6];
    for d in dir.iter_mut() {
        *d = rng.gen_range(-0.15..0.15);
    }
    vec![
        (
            "uniform-scale",
            SweepSpec {
                base: [1.0; 6],
                direction: [1.0; 6],
                lambda0: 0.0,
                lambda1: 0.5,
                n: 200,
            },
        ),
        (
            "single-edge",
            SweepSpec {
                base: [1.0; 6],
                direction: [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
                lambda0: 0.0,
                lambda1: 0.1,
                n: 200,
            },
        ),
        (
            "random-direction",
            SweepSpec {
                base: [1.0; 6],
                direction: dir,
                lambda0: 0.0,
                lambda1: 1.0,
                n: 200,
            },
        ),
    ]
}

/// Criterion 6: the Stokes identity and its reduced rectangle-contour
/// version on three one-parameter families over the regular base.
pub fn criterion_06(seed: u64) -> CriterionOutcome {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut passed = true;
    for (name, spec) in sweep_families(seed) {
        let stokes = match contour::stokes_sweep(&spec) {
            Ok(s) => s,
            Err(e) => return outcome(6, "stokes-and-cylinder", start, false, format!("error: {e}")),
        };
        let cyl = match reduction::cylinder_contour_check(&spec) {
            Ok(c) => c,
            Err(e) => return outcome(6, "stokes-and-cylinder", start, false, format!("error: {e}")),
        };
        passed &= stokes.mismatch <= STOKES_TOL
            && cyl.mismatch_vs_delta_s <= STOKES_TOL
            && cyl.mismatch_vs_upstairs <= STOKES_TOL;
        details.push(format!(
            "{name}: stokes {:.2e}, loop−2ΔS {:.2e}, loop−wall {:.2e}",
            stokes.mismatch, cyl.mismatch_vs_delta_s, cyl.mismatch_vs_upstairs
        ));
    }
    outcome(6, "stokes-and-cylinder", start, passed, details.join("; "))
}

/// Criterion 7: the projection to `T*SU(2)` intertwines all four flows and
/// the two evaluations of the one-form agree, over 100 random samples.
pub fn criterion_07(seed: u64) -> CriterionOutcome {
    let start = Instant::now();
    let mut rng = rng_from_seed(seed);
    let mut worst_flow = 0.0f64;
    let mut worst_theta = 0.0f64;
    for _ in 0..100 {
        let zp = random_spinor(&mut rng, 1.0);
        let g = random_su2(&mut rng);
        let z = g.apply(&time_reversal(&zp));
        let p = match reduction::project_pair(&z, &zp) {
            Ok(p) => p,
            Err(e) => return outcome(7, "reduction-equivariance", start, false, format!("error: {e}")),
        };
        let n = random_unit_vec(&mut rng);
        let alpha = rng.gen_range(0.1..6.0);
        for gen in [
            Generator::JDotN(n),
            Generator::JPrimeDotN(n),
            Generator::CasimirI,
            Generator::TotalDotN(n),
        ] {
            let (zu, zpu) = reduction::upstairs_flow(&z, &zp, &gen, alpha).expect("unit axis");
            let lhs = reduction::project_pair(&zu, &zpu).expect("valid pair");
            let rhs = reduction::flow(&p, &gen, alpha).expect("valid flow");
            worst_flow = worst_flow
                .max(lhs.g.matrix().max_abs_diff(rhs.g.matrix()))
                .max(lhs.jvec.max_abs_diff(&rhs.jvec));
        }
        let v = random_unit_vec(&mut rng) * rng.gen_range(0.1..2.0);
        let t = Tangent::from_right_components(&v, &p.g);
        let (right, left) = reduction::one_form_both(&p, &t).expect("tangent");
        worst_theta = worst_theta.max((right - left).abs());
    }
    let passed = worst_flow <= EQUIVARIANCE_TOL && worst_theta <= EQUIVARIANCE_TOL;
    outcome(
        7,
        "reduction-equivariance",
        start,
        passed,
        format!("max flow mismatch = {worst_flow:.3e}, max θ route gap = {worst_theta:.3e}"),
    )
}

/// Criterion 8: character formula versus `Σ_m e^{imφ}` for all `2j ≤ 20`
/// on a 100-point grid in `(0.05, 2π − 0.05)`.
pub fn criterion_08(_seed: u64) -> CriterionOutcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for two_j in 0..=20u32 {
        for k in 0..100 {
            let phi = 0.05 + (2.0 * std::f64::consts::PI - 0.1) * k as f64 / 99.0;
            let mut direct = 0.0;
            let mut m2 = -(two_j as i64);
            while m2 <= two_j as i64 {
                direct += (m2 as f64 / 2.0 * phi).cos();
                m2 += 2;
            }
            worst = worst.max((reduction::character(two_j, phi) - direct).abs());
        }
    }
    let passed = worst <= CHARACTER_TOL;
    outcome(
        8,
        "character-formula",
        start,
        passed,
        format!("max |χ − Σ e^{{imφ}}| = {worst:.3e} for 2j ≤ 20"),
    )
}

/// Criterion 9: exact 6j oracle — all 24 symmetries for every valid
/// argument set with `j ≤ 3`, orthogonality sums on small instances, and
/// the all-ones value, everything in exact arithmetic.
pub fn criterion_09(_seed: u64) -> CriterionOutcome {
    let start = Instant::now();

    let ones = sixj::exact_6j(&SixJArgs::from_twice([2; 6]));
    if ones.format_exact() != "1/6" {
        return outcome(9, "exact-6j-oracle", start, false, "all-ones ≠ 1/6".into());
    }

    // Enumerate valid argument sets with 2j ≤ 6 and check the whole
    // symmetry orbit of each against its value.
    let mut n_sets = 0usize;
    let mut values = std::collections::HashMap::new();
    for a in 0..=6u32 {
        for b in 0..=6u32 {
            for c in 0..=6u32 {
                for d in 0..=6u32 {
                    for e in 0..=6u32 {
                        for f in 0..=6u32 {
                            let args = SixJArgs::from_twice([a, b, c, d, e, f]);
                            let valid = sixj::TRIADS.iter().all(|t| {
                                sixj::triad_valid(args.j[t[0]], args.j[t[1]], args.j[t[2]])
                            });
                            if !valid {
                                continue;
                            }
                            n_sets += 1;
                            values.insert(
                                [a, b, c, d, e, f],
                                sixj::exact_6j(&args).signed_square(),
                            );
                        }
                    }
                }
            }
        }
    }
    for (key, value) in &values {
        let args = SixJArgs::from_twice(*key);
        for variant in args.symmetry_orbit() {
            let vkey = variant.j.map(|h| h.twice());
            match values.get(&vkey) {
                Some(v) if v == value => {}
                _ => {
                    return outcome(
                        9,
                        "exact-6j-oracle",
                        start,
                        false,
                        format!("symmetry broken between {args} and {variant}"),
                    )
                }
            }
        }
    }

    // Orthogonality over all small (j1, j2, j3, j4, j5, j6) with valid
    // j5/j6 triads.
    let mut n_orth = 0usize;
    for a in 0..=3u32 {
        for b in 0..=3u32 {
            for c in 0..=3u32 {
                for d in 0..=3u32 {
                    for e in 0..=6u32 {
                        for f in 0..=6u32 {
                            let h = HalfInt::from_twice;
                            let fixed_valid = sixj::triad_valid(h(a), h(d), h(e))
                                && sixj::triad_valid(h(c), h(b), h(e))
                                && sixj::triad_valid(h(a), h(d), h(f))
                                && sixj::triad_valid(h(c), h(b), h(f));
                            if !fixed_valid {
                                continue;
                            }
                            n_orth += 1;
                            if !sixj::orthogonality_holds(h(a), h(b), h(c), h(d), h(e), h(f)) {
                                return outcome(
                                    9,
                                    "exact-6j-oracle",
                                    start,
                                    false,
                                    format!("orthogonality failed at 2j = {:?}", [a, b, c, d, e, f]),
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    let elapsed = start.elapsed().as_secs_f64();
    let passed = elapsed < BUDGET_SIXJ_EXACT;
    outcome(
        9,
        "exact-6j-oracle",
        start,
        passed,
        format!("{n_sets} argument sets × 24 symmetries exact, {n_orth} orthogonality sums exact"),
    )
}

/// Criterion 10: convergence of the stationary-phase formula — windowed
/// RMS of `|exact − asym|/amplitude` strictly decreases from k₀ = 10 to
/// k₀ = 40 on the all-equal pattern.
pub fn criterion_10(_seed: u64) -> CriterionOutcome {
    let start = Instant::now();
    let pattern = SixJArgs::from_twice([2; 6]);
    let rms = |k0: u32| -> f64 {
        let scales: Vec<u32> = (k0..k0 + 4).collect();
        let rows = sixj::compare_sweep(&pattern, &scales).rows;
        (rows.iter().map(|r| r.rel_err_vs_amplitude.powi(2)).sum::<f64>() / rows.len() as f64)
            .sqrt()
    };
    let (r10, r40) = (rms(10), rms(40));
    let elapsed = start.elapsed().as_secs_f64();
    let passed = r40 < r10 && elapsed < BUDGET_SIXJ_ASYM;
    outcome(
        10,
        "asymptotic-convergence",
        start,
        passed,
        format!("RMS/amplitude: k₀=10 → {r10:.3e}, k₀=40 → {r40:.3e}"),
    )
}

/// Criterion 11: q-deformed coproduct — coordinate agreement with `B`
/// matrix products, three-fold associativity, and exact diangle closure,
/// over 1000 random samples.
pub fn criterion_11(seed: u64) -> CriterionOutcome {
    let start = Instant::now();
    let audit = qdeform::coproduct_audit(1000, seed);
    let passed = audit.max_comult2_vs_matrix <= COPRODUCT_TOL
        && audit.max_comult3_vs_matrix <= COPRODUCT_TOL
        && audit.max_comult3_vs_nested <= COPRODUCT_TOL
        && audit.max_diangle_closure <= COPRODUCT_TOL;
    outcome(
        11,
        "qdeform-coproduct",
        start,
        passed,
        format!(
            "vs matrix = {:.3e}, associativity = {:.3e}, closure = {:.3e}",
            audit.max_comult2_vs_matrix.max(audit.max_comult3_vs_matrix),
            audit.max_comult3_vs_nested,
            audit.max_diangle_closure
        ),
    )
}

/// Run every criterion with one seed; deterministic for a fixed seed.
pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    vec![
        criterion_01(seed),
        criterion_02(seed),
        criterion_03(seed),
        criterion_04(seed),
        criterion_05(seed),
        criterion_06(seed),
        criterion_07(seed),
        criterion_08(seed),
        criterion_09(seed),
        criterion_10(seed),
        criterion_11(seed),
    ]
}

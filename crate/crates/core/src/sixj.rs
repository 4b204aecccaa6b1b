//! Exact Wigner 6j-symbols by the Racah single-sum formula in big-rational
//! arithmetic, and the semiclassical formula `cos(S + π/4)/√(12π|V|)` they
//! validate, with `S` and `V` taken from the [`crate::geometry`] module at
//! edge lengths `J_r = j_r + ½`.
//!
//! A 6j value is `(Racah sum) · √(Δ₁Δ₂Δ₃Δ₄)` with rational triangle
//! coefficients `Δ`, so it is stored exactly as a rational cofactor times
//! the square root of a rational radicand. Equality, symmetry checks and the
//! orthogonality sums are decided in exact arithmetic; floats appear only at
//! output.

use std::fmt;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::geometry::{self, EdgeLengths, ExistenceClass, Orientation};

/// A half-integer stored as its doubled value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: u32,
}

impl HalfInt {
    pub fn from_twice(twice: u32) -> Self {
        HalfInt { twice }
    }

    pub fn from_int(j: u32) -> Self {
        HalfInt { twice: 2 * j }
    }

    pub fn twice(&self) -> u32 {
        self.twice
    }

    pub fn to_f64(&self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn is_integer(&self) -> bool {
        self.twice.is_multiple_of(2)
    }

    /// Parse `"3/2"`, `"1.5"` or `"2"` as a nonnegative half-integer.
    pub fn parse(s: &str) -> Result<Self, SixJError> {
        let bad = || SixJError::BadHalfInteger(s.to_string());
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n: u32 = num.trim().parse().map_err(|_| bad())?;
            let d: u32 = den.trim().parse().map_err(|_| bad())?;
            return match d {
                1 => Ok(HalfInt::from_int(n)),
                2 => Ok(HalfInt::from_twice(n)),
                _ => Err(bad()),
            };
        }
        let x: f64 = s.parse().map_err(|_| bad())?;
        let twice = 2.0 * x;
        if x.is_nan() || x < 0.0 || twice.fract() != 0.0 || twice > u32::MAX as f64 {
            return Err(bad());
        }
        Ok(HalfInt::from_twice(twice as u32))
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Six angular momenta on the tetrahedral edge labeling, with triads
/// `{j₁j₂j₃}, {j₁j₅j₆}, {j₄j₂j₆}, {j₄j₅j₃}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SixJArgs {
    pub j: [HalfInt; 6],
}

/// Triads as 0-based argument indices.
pub const TRIADS: [[usize; 3]; 4] = [[0, 1, 2], [0, 4, 5], [3, 1, 5], [3, 4, 2]];

impl SixJArgs {
    pub fn from_twice(twice: [u32; 6]) -> Self {
        SixJArgs {
            j: twice.map(HalfInt::from_twice),
        }
    }

    pub fn scaled(&self, k: u32) -> SixJArgs {
        SixJArgs {
            j: self.j.map(|h| HalfInt::from_twice(h.twice() * k)),
        }
    }

    /// Edge lengths `J_r = j_r + ½` of the associated tetrahedron.
    pub fn edge_lengths(&self) -> EdgeLengths {
        EdgeLengths(self.j.map(|h| h.to_f64() + 0.5))
    }

    /// The 24 classical symmetries: column permutations combined with
    /// swapping upper and lower entries in any two columns.
    pub fn symmetry_orbit(&self) -> Vec<SixJArgs> {
        let cols = [
            (self.j[0], self.j[3]),
            (self.j[1], self.j[4]),
            (self.j[2], self.j[5]),
        ];
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let flips: [[bool; 3]; 4] = [
            [false, false, false],
            [true, true, false],
            [true, false, true],
            [false, true, true],
        ];
        let mut orbit = Vec::with_capacity(24);
        for p in &perms {
            for f in &flips {
                let mut j = [HalfInt::from_twice(0); 6];
                for (slot, (&src, &flip)) in p.iter().zip(f.iter()).enumerate() {
                    let (top, bottom) = cols[src];
                    let (top, bottom) = if flip { (bottom, top) } else { (top, bottom) };
                    j[slot] = top;
                    j[slot + 3] = bottom;
                }
                orbit.push(SixJArgs { j });
            }
        }
        orbit
    }
}

impl fmt::Display for SixJArgs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{} {} {}; {} {} {}}}",
            self.j[0], self.j[1], self.j[2], self.j[3], self.j[4], self.j[5]
        )
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SixJError {
    #[error("cannot parse {0:?} as a nonnegative half-integer")]
    BadHalfInteger(String),
    #[error("edge lengths j+1/2 form a {0:?} shape: the stationary-phase formula needs a nondegenerate tetrahedron")]
    ClassicallyForbidden(ExistenceClass),
}

static FACTORIALS: Mutex<Vec<BigUint>> = Mutex::new(Vec::new());

/// `n!` from a process-wide cache of big integers.
pub fn factorial(n: usize) -> BigUint {
    let mut cache = FACTORIALS.lock().unwrap();
    if cache.is_empty() {
        cache.push(BigUint::one());
    }
    while cache.len() <= n {
        let next = cache.last().unwrap() * BigUint::from(cache.len());
        cache.push(next);
    }
    cache[n].clone()
}

fn big_ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Is `(a, b, c)` a valid triad: triangle inequalities plus integer total.
pub fn triad_valid(a: HalfInt, b: HalfInt, c: HalfInt) -> bool {
    let (ta, tb, tc) = (a.twice() as i64, b.twice() as i64, c.twice() as i64);
    (ta + tb + tc) % 2 == 0 && ta + tb >= tc && tb + tc >= ta && tc + ta >= tb
}

/// Triangle coefficient `Δ(abc) = (a+b−c)!(a−b+c)!(−a+b+c)!/(a+b+c+1)!`
/// for a valid triad.
pub fn triangle_coefficient(a: HalfInt, b: HalfInt, c: HalfInt) -> BigRational {
    let (ta, tb, tc) = (a.twice() as i64, b.twice() as i64, c.twice() as i64);
    let f = |x: i64| factorial((x / 2) as usize);
    let num = f(ta + tb - tc) * f(ta - tb + tc) * f(-ta + tb + tc);
    let den = f(ta + tb + tc + 2);
    big_ratio(num, den)
}

/// The Racah sum and the four triangle coefficients; `None` when any triad
/// fails, in which case the symbol is exactly zero.
pub fn racah_parts(args: &SixJArgs) -> Option<(BigRational, [BigRational; 4])> {
    for t in &TRIADS {
        if !triad_valid(args.j[t[0]], args.j[t[1]], args.j[t[2]]) {
            return None;
        }
    }
    let tw: Vec<i64> = args.j.iter().map(|h| h.twice() as i64).collect();
    let t_sums: Vec<i64> = TRIADS
        .iter()
        .map(|t| (tw[t[0]] + tw[t[1]] + tw[t[2]]) / 2)
        .collect();
    let q_sums = [
        (tw[0] + tw[1] + tw[3] + tw[4]) / 2,
        (tw[1] + tw[2] + tw[4] + tw[5]) / 2,
        (tw[2] + tw[0] + tw[5] + tw[3]) / 2,
    ];
    let k_min = *t_sums.iter().max().unwrap();
    let k_max = *q_sums.iter().min().unwrap();

    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let mut den = BigUint::one();
        for t in &t_sums {
            den *= factorial((k - t) as usize);
        }
        for q in &q_sums {
            den *= factorial((q - k) as usize);
        }
        let term = big_ratio(factorial((k + 1) as usize), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }

    let deltas = [
        triangle_coefficient(args.j[0], args.j[1], args.j[2]),
        triangle_coefficient(args.j[0], args.j[4], args.j[5]),
        triangle_coefficient(args.j[3], args.j[1], args.j[5]),
        triangle_coefficient(args.j[3], args.j[4], args.j[2]),
    ];
    Some((sum, deltas))
}

/// An exact value of the form `cofactor · √radicand` with rational parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSqrtRational {
    /// Rational cofactor carrying the sign.
    pub cofactor: BigRational,
    /// Nonnegative rational under the square root.
    pub radicand: BigRational,
}

impl ExactSqrtRational {
    pub fn zero() -> Self {
        ExactSqrtRational {
            cofactor: BigRational::zero(),
            radicand: BigRational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cofactor.is_zero()
    }

    /// `sign · value²`: a canonical rational that decides exact equality.
    pub fn signed_square(&self) -> BigRational {
        let sq = &self.cofactor * &self.cofactor * &self.radicand;
        if self.cofactor.is_negative() {
            -sq
        } else {
            sq
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let sign = if self.cofactor.is_negative() { -1.0 } else { 1.0 };
        // Work in log2 so that astronomically large cofactors against
        // astronomically small radicands cannot overflow on the way through.
        let log2 = log2_abs(&self.cofactor) + 0.5 * log2_abs(&self.radicand);
        sign * log2.exp2()
    }

    /// `p/q` when the radicand is a perfect rational square, otherwise
    /// `sqrt(n/d)*p/q`.
    pub fn format_exact(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if let Some(root) = rational_sqrt(&self.radicand) {
            return format_ratio(&(&self.cofactor * root));
        }
        format!(
            "sqrt({})*{}",
            format_ratio(&self.radicand),
            format_ratio(&self.cofactor)
        )
    }
}

fn format_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn log2_abs(r: &BigRational) -> f64 {
    log2_bigint(r.numer()) - log2_bigint(r.denom())
}

fn log2_bigint(n: &BigInt) -> f64 {
    let mag = n.magnitude();
    let bits = mag.bits();
    if bits <= 53 {
        return mag.to_f64().unwrap().log2();
    }
    let shift = bits - 53;
    let top = (mag >> shift).to_f64().unwrap();
    top.log2() + shift as f64
}

/// Exact square root of a rational, when it is a perfect square.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(big_ratio(sn, sd))
    } else {
        None
    }
}

/// Exact 6j-symbol by the Racah sum; exactly zero on triad violations.
pub fn exact_6j(args: &SixJArgs) -> ExactSqrtRational {
    match racah_parts(args) {
        None => ExactSqrtRational::zero(),
        Some((sum, deltas)) => {
            let radicand = deltas.iter().product();
            ExactSqrtRational {
                cofactor: sum,
                radicand,
            }
        }
    }
}

/// Semiclassical amplitude `1/√(12π|V|)` at edges `J_r = j_r + ½`.
pub fn amplitude(args: &SixJArgs) -> Result<f64, SixJError> {
    let edges = args.edge_lengths();
    match geometry::classify(&edges) {
        ExistenceClass::Nondegenerate => {}
        other => return Err(SixJError::ClassicallyForbidden(other)),
    }
    let emb = geometry::embed(&edges, Orientation::Positive).expect("nondegenerate");
    Ok(1.0 / (12.0 * std::f64::consts::PI * emb.volume.abs()).sqrt())
}

/// Stationary-phase approximation `cos(S + π/4)/√(12π|V|)` with the phase
/// `S = Σ (j_r + ½) ψ_r` and volume from the positively oriented tetrahedron
/// with edges `j_r + ½`.
pub fn pr_asymptotic(args: &SixJArgs) -> Result<f64, SixJError> {
    let edges = args.edge_lengths();
    match geometry::classify(&edges) {
        ExistenceClass::Nondegenerate => {}
        other => return Err(SixJError::ClassicallyForbidden(other)),
    }
    let s = geometry::pr_phase(&edges, Orientation::Positive).expect("nondegenerate");
    let amp = amplitude(args)?;
    Ok((s + std::f64::consts::FRAC_PI_4).cos() * amp)
}

/// One row of a convergence sweep.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub k: u32,
    pub exact: f64,
    pub asym: f64,
    pub abs_err: f64,
    /// `|exact − asym|` divided by the amplitude `(12π|V|)^{−1/2}`.
    pub rel_err_vs_amplitude: f64,
}

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub notes: Vec<String>,
}

/// Scale a base pattern by each `k` and tabulate exact vs asymptotic values.
/// Scaled argument sets with no surrounding tetrahedron are skipped with a
/// note.
pub fn compare_sweep(pattern: &SixJArgs, scales: &[u32]) -> SweepReport {
    let mut report = SweepReport::default();
    for &k in scales {
        let args = pattern.scaled(k);
        let exact = exact_6j(&args).to_f64();
        match pr_asymptotic(&args) {
            Ok(asym) => {
                let amp = amplitude(&args).expect("asymptotic value implies amplitude");
                report.rows.push(SweepRow {
                    k,
                    exact,
                    asym,
                    abs_err: (exact - asym).abs(),
                    rel_err_vs_amplitude: (exact - asym).abs() / amp,
                });
            }
            Err(e) => report.notes.push(format!("k={k} skipped: {e}")),
        }
    }
    report
}

/// Exact orthogonality check
/// `Σ_x (2x+1) {j₁ j₂ x; j₃ j₄ j₅}{j₁ j₂ x; j₃ j₄ j₆} = δ_{j₅j₆}/(2j₅+1)`.
///
/// The x-dependent triangle coefficients enter both factors squared, so each
/// term is rational times a fixed `√(Δ-product)` and the sum is decided
/// exactly.
pub fn orthogonality_holds(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    j4: HalfInt,
    j5: HalfInt,
    j6: HalfInt,
) -> bool {
    let lo = j1.twice().abs_diff(j2.twice()).max(j3.twice().abs_diff(j4.twice()));
    let hi = (j1.twice() + j2.twice()).min(j3.twice() + j4.twice());
    let mut rational_sum = BigRational::zero();
    let mut tx = lo;
    while tx <= hi {
        let x = HalfInt::from_twice(tx);
        let a = SixJArgs { j: [j1, j2, x, j3, j4, j5] };
        let b = SixJArgs { j: [j1, j2, x, j3, j4, j6] };
        if let (Some((sa, da)), Some((sb, db))) = (racah_parts(&a), racah_parts(&b)) {
            // da = [Δ(j1j2x), Δ(j1j4j5), Δ(j3j2j5), Δ(j3j4x)] and likewise
            // for db with j6: the x-dependent deltas (slots 0 and 3) match.
            debug_assert_eq!(da[0], db[0]);
            debug_assert_eq!(da[3], db[3]);
            let weight = BigRational::from(BigInt::from(tx + 1));
            rational_sum += weight * sa * sb * &da[0] * &da[3];
        }
        tx += 2;
    }
    // Remaining factor √(Δ(j1j4j5)Δ(j3j2j5)Δ(j1j4j6)Δ(j3j2j6)).
    if j5 == j6 {
        let d5 = triangle_coefficient(j1, j4, j5) * triangle_coefficient(j3, j2, j5);
        let expected = BigRational::new(BigInt::one(), BigInt::from(j5.twice() + 1));
        rational_sum * d5 == expected
    } else {
        rational_sum.is_zero()
    }
}

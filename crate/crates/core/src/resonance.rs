//! Exact resonance analysis for the rescaled Bona-Smith system.
//!
//! The mode determinant
//!
//! ```text
//! Δ(p, q) = q²(1 + αp²)² − β²p²(1 + γαp²)
//! ```
//!
//! vanishes exactly on the resonance set `Σ = {(p, q) ∈ ℕ², p, q ≥ 1}`
//! (together with the trivial `(0,0)` direction). Zero tests of Δ run on
//! `BigRational`; floating point appears only in the divisor-bound scans.

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::numeric::{floor_sqrt, is_integer, perfect_square_int, rational_sqrt_exact, to_f64, Rational};
use crate::Result;

/// Hard cap on the brute scan; hitting it sets the `incomplete` flag.
const BRUTE_HARD_CAP: u32 = 10_000;

/// Rescaled Bona-Smith parameters `(α, β, γ)`, exact.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledParams {
    alpha: Rational,
    beta: Rational,
    gamma: Rational,
}

/// Floating-point mirror of [`ScaledParams`] for field arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledParamsF {
    /// Dispersion parameter, `(2π/λ)²` in the original scaling.
    pub alpha: f64,
    /// Speed ratio `T/λ`.
    pub beta: f64,
    /// `-c/b` of the underlying four-parameter system.
    pub gamma: f64,
}

impl ScaledParams {
    /// Validated constructor: `α > 0`, `β > 0`, `0 < γ < 1`.
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational) -> Result<Self> {
        if !alpha.is_positive() || !beta.is_positive() {
            return Err(Error::InvalidParams("alpha and beta must be positive".into()));
        }
        if !gamma.is_positive() || gamma >= Rational::one() {
            return Err(Error::InvalidParams("gamma must lie strictly between 0 and 1".into()));
        }
        Ok(ScaledParams { alpha, beta, gamma })
    }

    /// Parse from string literals (fractions or decimals).
    pub fn parse(alpha: &str, beta: &str, gamma: &str) -> Result<Self> {
        ScaledParams::new(
            crate::numeric::parse_rational(alpha)?,
            crate::numeric::parse_rational(beta)?,
            crate::numeric::parse_rational(gamma)?,
        )
    }

    /// Exact α.
    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    /// Exact β.
    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// Exact γ.
    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    /// Floating mirror.
    pub fn to_f64(&self) -> ScaledParamsF {
        ScaledParamsF {
            alpha: to_f64(&self.alpha),
            beta: to_f64(&self.beta),
            gamma: to_f64(&self.gamma),
        }
    }
}

/// Exact determinant `Δ(p, q) = q²(1+αp²)² − β²p²(1+γαp²)`.
pub fn delta_bs(p: u32, q: i64, sp: &ScaledParams) -> Rational {
    let p2 = Rational::from_integer(BigInt::from(p) * BigInt::from(p));
    let q2 = Rational::from_integer(BigInt::from(q) * BigInt::from(q));
    let one = Rational::one();
    let k = &one + &sp.alpha * &p2;
    let beta2 = &sp.beta * &sp.beta;
    q2 * &k * &k - beta2 * &p2 * (&one + &sp.gamma * &sp.alpha * &p2)
}

/// Determinant in floating point, for bound scans.
pub fn delta_bs_f64(p: u32, q: i64, sp: &ScaledParamsF) -> f64 {
    let p2 = (p as f64) * (p as f64);
    let q2 = (q as f64) * (q as f64);
    let k = 1.0 + sp.alpha * p2;
    q2 * k * k - sp.beta * sp.beta * p2 * (1.0 + sp.gamma * sp.alpha * p2)
}

/// Four-parameter system data for the general determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralDelta {
    /// Third-derivative coefficient of the velocity equation source.
    pub a: Rational,
    /// Mixed-derivative coefficient of the surface equation.
    pub b: Rational,
    /// Third-derivative coefficient of the surface in the velocity equation.
    pub c: Rational,
    /// Mixed-derivative coefficient of the velocity equation.
    pub d: Rational,
    /// Spatial scaling, positive.
    pub alpha: Rational,
    /// Temporal scaling, positive.
    pub beta: Rational,
}

impl GeneralDelta {
    /// Validated constructor (`α, β > 0`).
    pub fn new(
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
        alpha: Rational,
        beta: Rational,
    ) -> Result<Self> {
        if !alpha.is_positive() || !beta.is_positive() {
            return Err(Error::InvalidParams("alpha and beta must be positive".into()));
        }
        Ok(GeneralDelta { a, b, c, d, alpha, beta })
    }
}

/// Exact general determinant
/// `q²(1+αbp²)(1+αdp²) − β²p²(αap²−1)(αcp²−1)`.
pub fn delta_general(p: u32, q: i64, gd: &GeneralDelta) -> Rational {
    let p2 = Rational::from_integer(BigInt::from(p) * BigInt::from(p));
    let q2 = Rational::from_integer(BigInt::from(q) * BigInt::from(q));
    let one = Rational::one();
    let beta2 = &gd.beta * &gd.beta;
    q2 * (&one + &gd.alpha * &gd.b * &p2) * (&one + &gd.alpha * &gd.d * &p2)
        - beta2
            * &p2
            * (&gd.alpha * &gd.a * &p2 - &one)
            * (&gd.alpha * &gd.c * &p2 - &one)
}

/// Largest admissible time frequency `⌊β√(1+α)/α⌋` for resonant pairs.
pub fn q_bound(sp: &ScaledParams) -> u32 {
    // floor(β√(1+α)/α) = floor(sqrt(β²(1+α)/α²))
    let bound = &sp.beta * &sp.beta * (Rational::one() + &sp.alpha) / (&sp.alpha * &sp.alpha);
    floor_sqrt(&bound).to_u32().unwrap_or(u32::MAX)
}

/// Exact-zero certificate carried by each resonant pair.
#[derive(Debug, Clone)]
pub struct Certificate {
    /// The pair.
    pub p: u32,
    /// The pair.
    pub q: u32,
    /// Value of the quartic-in-p form at the pair (must be exactly zero).
    pub quartic_value: Rational,
    /// Value of Δ at the pair (must be exactly zero).
    pub delta_value: Rational,
}

/// The finite resonance set with completeness metadata.
#[derive(Debug, Clone)]
pub struct ResonanceSet {
    /// Sorted resonant pairs (p, q), both ≥ 1.
    pub elements: Vec<(u32, u32)>,
    /// Proven q-bound the enumeration covered.
    pub complete_up_to: u32,
    /// Per-element exact-zero certificates.
    pub certificates: Vec<Certificate>,
    /// True when the brute scan hit the hard cap before its certified bound.
    pub incomplete: bool,
}

impl ResonanceSet {
    /// Membership test against |q|.
    pub fn contains(&self, p: u32, q_abs: u32) -> bool {
        self.elements.binary_search(&(p, q_abs)).is_ok()
    }

    /// The unique element, when there is exactly one.
    pub fn unique_element(&self) -> Option<(u32, u32)> {
        match self.elements.as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }
}

/// Enumeration strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumMethod {
    /// Solve the quartic in p exactly for each admissible q.
    Quartic,
    /// Scan p up to a certified per-q bound, testing Δ = 0 exactly.
    Brute,
}

/// Quartic-in-p coefficients for fixed q:
/// `(α²q² − γαβ²) p⁴ + (2αq² − β²) p² + q² = 0`.
fn quartic_coeffs(sp: &ScaledParams, q: u32) -> (Rational, Rational, Rational) {
    let q2 = Rational::from_integer(BigInt::from(q) * BigInt::from(q));
    let beta2 = &sp.beta * &sp.beta;
    let a = &sp.alpha * &sp.alpha * &q2 - &sp.gamma * &sp.alpha * &beta2;
    let b = Rational::from_integer(2.into()) * &sp.alpha * &q2 - beta2;
    (a, b, q2)
}

fn quartic_value(sp: &ScaledParams, p: u32, q: u32) -> Rational {
    let (a, b, c) = quartic_coeffs(sp, q);
    let x = Rational::from_integer(BigInt::from(p) * BigInt::from(p));
    a * &x * &x + b * x + c
}

/// Enumerate the resonance set.
///
/// Both methods agree by construction; the property suite cross-checks
/// them on randomized parameters.
pub fn enumerate_sigma(sp: &ScaledParams, method: EnumMethod) -> ResonanceSet {
    let qmax = q_bound(sp);
    let mut elements: Vec<(u32, u32)> = Vec::new();
    let mut incomplete = false;
    for q in 1..=qmax {
        match method {
            EnumMethod::Quartic => {
                for p in quartic_integer_roots(sp, q) {
                    elements.push((p, q));
                }
            }
            EnumMethod::Brute => {
                let (pb, capped) = certified_p_bound(sp, q);
                incomplete |= capped;
                for p in 1..=pb {
                    if delta_bs(p, q as i64, sp).is_zero() {
                        elements.push((p, q));
                    }
                }
            }
        }
    }
    elements.sort_unstable();
    elements.dedup();
    let certificates = elements
        .iter()
        .map(|&(p, q)| Certificate {
            p,
            q,
            quartic_value: quartic_value(sp, p, q),
            delta_value: delta_bs(p, q as i64, sp),
        })
        .collect();
    ResonanceSet { elements, complete_up_to: qmax, certificates, incomplete }
}

/// Integer p ≥ 1 with `quartic(p²) = 0`, for one fixed q.
fn quartic_integer_roots(sp: &ScaledParams, q: u32) -> Vec<u32> {
    let (a, b, c) = quartic_coeffs(sp, q);
    let mut roots: Vec<Rational> = Vec::new();
    if a.is_zero() {
        // Degenerate leading coefficient: linear in p².
        if !b.is_zero() {
            roots.push(-&c / &b);
        }
    } else {
        let disc = &b * &b - Rational::from_integer(4.into()) * &a * &c;
        if disc.is_negative() {
            return Vec::new();
        }
        // An integer root is rational, so the discriminant must be a
        // rational square; otherwise no integer solutions exist.
        if let Some(s) = rational_sqrt_exact(&disc) {
            let two_a = Rational::from_integer(2.into()) * &a;
            roots.push((-&b + &s) / &two_a);
            roots.push((-&b - &s) / &two_a);
        }
    }
    let mut out = Vec::new();
    for x in roots {
        if x < Rational::one() {
            continue;
        }
        if let Some(p_int) = perfect_square_int(&x) {
            if let Some(p) = p_int.to_u32() {
                if p >= 1 {
                    out.push(p);
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Certified scan bound for the brute method at fixed q, with a flag
/// set when the hard cap truncated it.
///
/// The certificate: beyond the returned p the quartic keeps the sign of
/// its leading coefficient and is strictly monotone in p², hence has no
/// further roots. Checked in exact arithmetic.
fn certified_p_bound(sp: &ScaledParams, q: u32) -> (u32, bool) {
    let (a, b, c) = quartic_coeffs(sp, q);
    if a.is_zero() {
        if b.is_positive() || b.is_zero() {
            return (0, false); // b·p² + q² > 0 for all p ≥ 1
        }
        let x = -&c / &b;
        let p = floor_sqrt(&x.max(Rational::zero())).to_u32().unwrap_or(BRUTE_HARD_CAP);
        return (p.min(BRUTE_HARD_CAP), p > BRUTE_HARD_CAP);
    }
    let mut pb: u32 = 4;
    loop {
        if pb >= BRUTE_HARD_CAP {
            return (BRUTE_HARD_CAP, true);
        }
        let x_star =
            Rational::from_integer(BigInt::from(pb as u64 + 1) * BigInt::from(pb as u64 + 1));
        let value = &a * &x_star * &x_star + &b * &x_star + &c;
        let slope = Rational::from_integer(2.into()) * &a * &x_star + &b;
        let settled = if a.is_positive() {
            value.is_positive() && slope.is_positive()
        } else {
            value.is_negative() && slope.is_negative()
        };
        if settled {
            return (pb, false);
        }
        pb = pb.saturating_mul(2);
    }
}

/// Condition (i) of the uniqueness lemma.
#[derive(Debug, Clone)]
pub struct ConditionI {
    /// `q₀² / ((α²q₀² − γαβ²) p₀²)`, absent when the leading coefficient
    /// vanishes (then the quartic is linear in p² and the condition is
    /// vacuous).
    pub value: Option<Rational>,
    /// Leading coefficient vanished.
    pub degenerate: bool,
    /// The value is an integer (condition fails).
    pub is_integer: bool,
    /// Verdict for this condition.
    pub passed: bool,
}

/// One row of condition (ii): the candidate roots p² for a competing q.
#[derive(Debug, Clone)]
pub struct ConditionIiRow {
    /// Competing time frequency.
    pub q: u32,
    /// Discriminant from the quartic actually solved
    /// (leading coefficient `α²q² − γαβ²`).
    pub proof_discriminant: Rational,
    /// Discriminant as printed in the source statement
    /// (leading coefficient `αq² − γαβ²`); surfaced for comparison only.
    pub statement_discriminant: Rational,
    /// Floating approximations of the real roots p².
    pub root_approx: Vec<f64>,
    /// Exact integer roots p² found, if any (condition fails when a root
    /// is a positive perfect square, i.e. an admissible integer p).
    pub integer_roots: Vec<u64>,
    /// Whether some root is a positive integer.
    pub has_integer_root: bool,
}

/// Full uniqueness certificate report.
#[derive(Debug, Clone)]
pub struct UniquenessReport {
    /// Overall verdict: both conditions hold.
    pub passed: bool,
    /// q range covered by condition (ii).
    pub l_bound: u32,
    /// Condition (i).
    pub condition_i: ConditionI,
    /// Condition (ii) rows, one per competing q.
    pub condition_ii: Vec<ConditionIiRow>,
}

/// Certify that `(p0, q0)` is the only element of the resonance set.
///
/// Errors unless `(p0, q0)` is resonant. The conditions are sufficient,
/// not necessary: a `passed = false` report does not prove a second
/// element exists.
pub fn uniqueness_certificate(sp: &ScaledParams, p0q0: (u32, u32)) -> Result<UniquenessReport> {
    let (p0, q0) = p0q0;
    if p0 == 0 || q0 == 0 || !delta_bs(p0, q0 as i64, sp).is_zero() {
        return Err(Error::NotInSigma { p: p0, q: q0 });
    }
    let l = q_bound(sp);

    let (a0, _, _) = quartic_coeffs(sp, q0);
    let condition_i = if a0.is_zero() {
        ConditionI { value: None, degenerate: true, is_integer: false, passed: true }
    } else {
        let q0sq = Rational::from_integer(BigInt::from(q0) * BigInt::from(q0));
        let p0sq = Rational::from_integer(BigInt::from(p0) * BigInt::from(p0));
        let value = q0sq / (a0 * p0sq);
        let is_int = is_integer(&value);
        ConditionI { value: Some(value), degenerate: false, is_integer: is_int, passed: !is_int }
    };

    let mut condition_ii = Vec::new();
    for q in 1..=l {
        if q == q0 {
            continue;
        }
        let (a, b, c) = quartic_coeffs(sp, q);
        let four = Rational::from_integer(4.into());
        let proof_disc = &b * &b - &four * &a * &c;
        // Statement form: leading coefficient written with a single α.
        let q2 = Rational::from_integer(BigInt::from(q) * BigInt::from(q));
        let beta2 = &sp.beta * &sp.beta;
        let stmt_lead = &sp.alpha * &q2 - &sp.gamma * &sp.alpha * &beta2;
        let stmt_disc = &b * &b - &four * stmt_lead * &c;

        let mut root_approx = Vec::new();
        let mut integer_roots = Vec::new();
        let mut has_integer_root = false;
        let mut note_root = |x: &Rational, approx: &mut Vec<f64>, ints: &mut Vec<u64>| {
            approx.push(to_f64(x));
            if is_integer(x) && x.is_positive() {
                has_integer_root = true;
                if let Some(n) = x.numer().to_u64() {
                    ints.push(n);
                }
            }
        };
        if a.is_zero() {
            if !b.is_zero() {
                let x = -&c / &b;
                note_root(&x, &mut root_approx, &mut integer_roots);
            }
        } else if !proof_disc.is_negative() {
            if let Some(s) = rational_sqrt_exact(&proof_disc) {
                let two_a = Rational::from_integer(2.into()) * &a;
                for x in [(-&b + &s) / &two_a, (-&b - &s) / &two_a] {
                    note_root(&x, &mut root_approx, &mut integer_roots);
                }
            } else {
                // Irrational roots cannot be integers; report approximations.
                let sqrt_f = to_f64(&proof_disc).max(0.0).sqrt();
                let a_f = to_f64(&a);
                let b_f = to_f64(&b);
                root_approx.push((-b_f + sqrt_f) / (2.0 * a_f));
                root_approx.push((-b_f - sqrt_f) / (2.0 * a_f));
            }
        }
        integer_roots.sort_unstable();
        integer_roots.dedup();
        condition_ii.push(ConditionIiRow {
            q,
            proof_discriminant: proof_disc,
            statement_discriminant: stmt_disc,
            root_approx,
            integer_roots,
            has_integer_root,
        });
    }

    let passed = condition_i.passed && condition_ii.iter().all(|row| !row.has_integer_root);
    Ok(UniquenessReport { passed, l_bound: l, condition_i, condition_ii })
}

/// Divisor quantities `C`, `D` at one mode, floating point.
///
/// `C` bounds the velocity response, `D` the surface response.
pub fn divisor_cd(sp: &ScaledParamsF, p: u32, q: i64) -> (f64, f64) {
    if p == 0 {
        return (0.0, 0.0);
    }
    let pf = p as f64;
    let qf = q.abs() as f64;
    let p2 = pf * pf;
    let k = 1.0 + sp.alpha * p2;
    let delta = delta_bs_f64(p, q, sp).abs();
    let c = (pf * (sp.beta * pf + sp.gamma * sp.alpha * sp.beta * pf * p2) + pf * qf * k) / delta;
    let d = (pf * qf * k + sp.beta * p2) / delta;
    (c, d)
}

/// One asymptote row of the divisor bound.
#[derive(Debug, Clone)]
pub struct AsymptoteRow {
    /// Fixed time frequency.
    pub q: u32,
    /// Limit `β/|αq² − γβ²|`; `None` when `αq² = γβ²` exactly (the
    /// direction is excluded as resonant-at-infinity).
    pub value: Option<f64>,
}

/// Numerical small-divisor bound with provenance.
#[derive(Debug, Clone)]
pub struct DivisorBound {
    /// Dominating constant for the scanned window, asymptotes and tail.
    pub m: f64,
    /// Scan extent (pmax, qmax).
    pub scanned: (u32, u32),
    /// Fixed-q limits for q below the tail threshold.
    pub asymptote_per_q: Vec<AsymptoteRow>,
    /// Analytic bound for the region `|q| ≥ 2β/√α`.
    pub tail_bound: f64,
    /// Mode attaining the scanned maximum, with the value.
    pub max_location: (u32, i64, f64),
}

/// Estimate the divisor constant `M` dominating `C` and `D` over all
/// non-resonant modes.
///
/// Combines a scan over `p ≤ pmax, |q| ≤ qmax` with the fixed-q
/// asymptotes and the analytic tail bound for `|q| ≥ 2β/√α`. Errors with
/// an infeasible signature when a fixed-q series keeps growing past the
/// asymptote envelope.
pub fn divisor_bound_bs(sp: &ScaledParams, pmax: u32, qmax: u32) -> Result<DivisorBound> {
    if pmax < 10 || qmax < 10 {
        return Err(Error::InvalidParams("divisor scan requires pmax, qmax >= 10".into()));
    }
    let sigma = enumerate_sigma(sp, EnumMethod::Quartic);
    let spf = sp.to_f64();

    // Fixed-q asymptotes on 0 <= q <= floor(2β/√α).
    let four_beta2_over_alpha = Rational::from_integer(4.into()) * sp.beta() * sp.beta() / sp.alpha();
    let k_threshold = floor_sqrt(&four_beta2_over_alpha).to_u32().unwrap_or(u32::MAX);
    let gamma_beta2 = sp.gamma() * sp.beta() * sp.beta();
    let mut asymptote_per_q = Vec::new();
    for q in 0..=k_threshold {
        let q2 = Rational::from_integer(BigInt::from(q) * BigInt::from(q));
        let denom = sp.alpha() * &q2 - &gamma_beta2;
        let value = if denom.is_zero() {
            None
        } else {
            Some(spf.beta / to_f64(&denom).abs())
        };
        asymptote_per_q.push(AsymptoteRow { q, value });
    }

    // The proof's tail estimate: for |q| >= 2β/√α the reduced denominator
    // exceeds β p, giving C, D <= 1/β there.
    let tail_bound = 1.0 / spf.beta;

    let envelope = asymptote_per_q
        .iter()
        .filter_map(|row| row.value)
        .fold(tail_bound, f64::max);

    let mut m = envelope;
    let mut max_location = (0, 0, 0.0);
    const TAIL_WINDOW: usize = 16;
    for q in 0..=qmax {
        let mut tail: Vec<f64> = Vec::with_capacity(TAIL_WINDOW);
        for p in 0..=pmax {
            if p == 0 && q == 0 {
                continue;
            }
            if sigma.contains(p, q) {
                tail.clear();
                continue;
            }
            let (c, d) = divisor_cd(&spf, p, q as i64);
            let local = c.max(d);
            if local > m {
                m = local;
                max_location = (p, q as i64, local);
            }
            if tail.len() == TAIL_WINDOW {
                tail.remove(0);
            }
            tail.push(local);
        }
        // Infeasible signature: the last stretch of the fixed-q series is
        // strictly increasing and already far above every finite limit.
        if tail.len() == TAIL_WINDOW
            && tail.windows(2).all(|w| w[1] > w[0])
            && *tail.last().unwrap() > 4.0 * envelope
        {
            return Err(Error::UnboundedDivisor {
                q: q as i64,
                last: *tail.last().unwrap(),
                envelope,
            });
        }
    }

    Ok(DivisorBound { m, scanned: (pmax, qmax), asymptote_per_q, tail_bound, max_location })
}

/// The two quotients controlling the general pseudo-inverse at one mode.
pub fn divisor_quantities_general(gd: &GeneralDelta, p: u32, q: i64) -> Result<(f64, f64)> {
    let delta = delta_general(p, q, gd);
    if delta.is_zero() {
        return Err(Error::ZeroDivisor { p, q });
    }
    let pf = p as f64;
    let qf = q.abs() as f64;
    let p2 = pf * pf;
    let (a, b, c, d) = (to_f64(&gd.a), to_f64(&gd.b), to_f64(&gd.c), to_f64(&gd.d));
    let (alpha, beta) = (to_f64(&gd.alpha), to_f64(&gd.beta));
    let delta_abs = to_f64(&delta).abs();
    let quot_a =
        (pf * qf * (1.0 + alpha * d * p2).abs() + beta * p2 * (1.0 - alpha * c * p2).abs()) / delta_abs;
    let quot_b =
        (beta * p2 * (1.0 - alpha * a * p2).abs() + pf * qf * (1.0 + alpha * b * p2).abs()) / delta_abs;
    Ok((quot_a, quot_b))
}

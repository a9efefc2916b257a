//! Three-way feasibility classification of well-posed four-parameter
//! systems: Feasible / Infeasible / Uncertain, with machine-checkable
//! evidence.
//!
//! The verdict rests on two algebraic facts about the general mode
//! determinant, decided by exact degree and sign analysis of rational
//! functions in p (scans only enrich the evidence):
//!
//! * kernel finiteness: whether `q²(p)` solved from `Δ(p,q) = 0` stays
//!   bounded as `p → ∞`;
//! * divisor boundedness: whether the pseudo-inverse quotients stay
//!   bounded at fixed q.

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::numeric::{parse_rational, to_f64, Rational};
use crate::resonance::{delta_general, GeneralDelta};
use crate::Result;

/// The four model constants with optional provenance data.
#[derive(Debug, Clone, PartialEq)]
pub struct ABCDParams {
    /// Velocity third-derivative coefficient.
    pub a: Rational,
    /// Surface mixed-derivative coefficient.
    pub b: Rational,
    /// Surface third-derivative coefficient.
    pub c: Rational,
    /// Velocity mixed-derivative coefficient.
    pub d: Rational,
    /// Originating `(θ², λ, μ)` when constructed from the two-parameter
    /// family.
    pub provenance: Option<Provenance>,
}

/// The `(θ², λ, μ)` triple the model family is parameterised by.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    /// Squared depth parameter in `[0, 1]`.
    pub theta2: Rational,
    /// Splitting weight of the `a + b` block.
    pub lambda: Rational,
    /// Splitting weight of the `c + d` block.
    pub mu: Rational,
}

impl ABCDParams {
    /// Direct constructor from the four constants.
    pub fn from_abcd(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        ABCDParams { a, b, c, d, provenance: None }
    }

    /// Parse the four constants from literals.
    pub fn parse(a: &str, b: &str, c: &str, d: &str) -> Result<Self> {
        Ok(Self::from_abcd(
            parse_rational(a)?,
            parse_rational(b)?,
            parse_rational(c)?,
            parse_rational(d)?,
        ))
    }

    /// Build from `(θ², λ, μ)`:
    ///
    /// ```text
    /// a = (θ² − 1/3) λ / 2        b = (θ² − 1/3)(1 − λ) / 2
    /// c = (1 − θ²) μ / 2          d = (1 − θ²)(1 − μ) / 2
    /// ```
    pub fn from_provenance(theta2: Rational, lambda: Rational, mu: Rational) -> Result<Self> {
        if theta2.is_negative() || theta2 > Rational::one() {
            return Err(Error::InvalidParams("theta^2 must lie in [0, 1]".into()));
        }
        let half = Rational::new(1.into(), 2.into());
        let third = Rational::new(1.into(), 3.into());
        let ab_block = &half * (&theta2 - &third);
        let cd_block = &half * (Rational::one() - &theta2);
        let a = &ab_block * &lambda;
        let b = &ab_block * (Rational::one() - &lambda);
        let c = &cd_block * &mu;
        let d = &cd_block * (Rational::one() - &mu);
        Ok(ABCDParams { a, b, c, d, provenance: Some(Provenance { theta2, lambda, mu }) })
    }

    /// The Bona-Smith subfamily: `μ < 0` with
    /// `θ² = (4/3 − μ)/(2 − μ)`, `λ = 0`.
    pub fn bona_smith_from_mu(mu: Rational) -> Result<Self> {
        if !mu.is_negative() {
            return Err(Error::InvalidParams("the Bona-Smith family requires mu < 0".into()));
        }
        let theta2 = (Rational::new(4.into(), 3.into()) - &mu)
            / (Rational::from_integer(2.into()) - &mu);
        Self::from_provenance(theta2, Rational::zero(), mu)
    }

    /// Verify the defining identities when provenance is attached:
    /// `a + b = (θ² − 1/3)/2`, `c + d = (1 − θ²)/2 ≥ 0`, sum `1/3`.
    pub fn check_relations(&self) -> bool {
        let Some(pr) = &self.provenance else {
            return true; // nothing asserted without provenance
        };
        let third = Rational::new(1.into(), 3.into());
        let half = Rational::new(1.into(), 2.into());
        let ab = &half * (&pr.theta2 - &third);
        let cd = &half * (Rational::one() - &pr.theta2);
        (&self.a + &self.b + &self.c + &self.d == third)
            && (&self.a + &self.b == ab)
            && (&self.c + &self.d == cd)
            && !cd.is_negative()
    }
}

/// Linear well-posedness classes of the four-parameter family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WellPosedClass {
    /// `a ≤ 0, c ≤ 0, b ≥ 0, d ≥ 0`.
    C1,
    /// `a = c > 0, b ≥ 0, d ≥ 0`.
    C2,
    /// `a = c > 0, b = d < 0`.
    C3,
    /// None of the above.
    None,
}

impl WellPosedClass {
    /// Stable lower-case label for reports.
    pub fn label(self) -> &'static str {
        match self {
            WellPosedClass::C1 => "C1",
            WellPosedClass::C2 => "C2",
            WellPosedClass::C3 => "C3",
            WellPosedClass::None => "none",
        }
    }
}

/// Exact sign tests for the three classes.
pub fn wellposedness_class(p: &ABCDParams) -> WellPosedClass {
    let (a, b, c, d) = (&p.a, &p.b, &p.c, &p.d);
    if !a.is_positive() && !c.is_positive() && !b.is_negative() && !d.is_negative() {
        WellPosedClass::C1
    } else if a == c && a.is_positive() && !b.is_negative() && !d.is_negative() {
        WellPosedClass::C2
    } else if a == c && a.is_positive() && b == d && b.is_negative() {
        WellPosedClass::C3
    } else {
        WellPosedClass::None
    }
}

fn deg2(x: &Rational) -> u32 {
    if x.is_zero() {
        0
    } else {
        2
    }
}

/// Outcome of the kernel-limit test.
#[derive(Debug, Clone)]
pub struct KernelTest {
    /// Whether `q²(p)` tends to a finite limit.
    pub finite: bool,
    /// The exact limit when finite (ratio of leading coefficients; zero
    /// when the numerator degree is strictly smaller).
    pub limit: Option<Rational>,
    /// Degrees in p of numerator and denominator of `q²(p)`.
    pub degrees: (u32, u32),
    /// Samples of `q²(p)` for p = 1..=pmax (evidence only).
    pub samples: Vec<f64>,
}

/// Decide whether `Δ(p, q) = 0` pins only finitely many values of q².
///
/// `q²(p) = β²p²(αap²−1)(αcp²−1) / ((1+αbp²)(1+αdp²))`; finiteness is a
/// degree comparison, the limit a ratio of leading coefficients.
pub fn kernel_limit_test(
    params: &ABCDParams,
    alpha: &Rational,
    beta: &Rational,
    pmax: u32,
) -> KernelTest {
    let num_deg = 2 + deg2(&params.a) + deg2(&params.c);
    let den_deg = deg2(&params.b) + deg2(&params.d);
    let finite = num_deg <= den_deg;

    let beta2 = beta * beta;
    let num_lead = {
        let fa = if params.a.is_zero() { -Rational::one() } else { alpha * &params.a };
        let fc = if params.c.is_zero() { -Rational::one() } else { alpha * &params.c };
        &beta2 * fa * fc
    };
    let den_lead = {
        let fb = if params.b.is_zero() { Rational::one() } else { alpha * &params.b };
        let fd = if params.d.is_zero() { Rational::one() } else { alpha * &params.d };
        fb * fd
    };
    let limit = if !finite {
        None
    } else if num_deg < den_deg {
        Some(Rational::zero())
    } else {
        Some(num_lead / den_lead)
    };

    let samples = (1..=pmax)
        .map(|p| {
            let p2 = Rational::from_integer(BigInt::from(p) * BigInt::from(p));
            let num = &beta2
                * &p2
                * (alpha * &params.a * &p2 - Rational::one())
                * (alpha * &params.c * &p2 - Rational::one());
            let den = (Rational::one() + alpha * &params.b * &p2)
                * (Rational::one() + alpha * &params.d * &p2);
            to_f64(&(num / den))
        })
        .collect();

    KernelTest { finite, limit, degrees: (num_deg, den_deg), samples }
}

/// Which quotient diverges, and along which q.
#[derive(Debug, Clone)]
pub struct DivisorWitness {
    /// `"A"` (surface response) or `"B"` (velocity response).
    pub quantity: &'static str,
    /// Time frequency of the diverging sequence.
    pub q: i64,
    /// Sampled values along p (evidence).
    pub samples: Vec<f64>,
}

/// Outcome of the divisor-boundedness test.
#[derive(Debug, Clone)]
pub struct DivisorTest {
    /// Both quotients bounded (class level, generic q).
    pub bounded: bool,
    /// A diverging sequence when unbounded.
    pub witness: Option<DivisorWitness>,
    /// Degrees (numerator A, numerator B, denominator).
    pub degrees: (u32, u32, u32),
    /// Largest scanned quotient over the window (evidence).
    pub scan_max: f64,
}

/// Decide boundedness of the two pseudo-inverse quotients by degree
/// comparison at fixed q, confirmed by a numeric scan.
pub fn divisor_limit_test(
    params: &ABCDParams,
    alpha: &Rational,
    beta: &Rational,
    pmax: u32,
    qmax: u32,
) -> DivisorTest {
    let den_deg = (deg2(&params.b) + deg2(&params.d)).max(2 + deg2(&params.a) + deg2(&params.c));
    let a_num_deg = (1 + deg2(&params.d)).max(2 + deg2(&params.c));
    let b_num_deg = (2 + deg2(&params.a)).max(1 + deg2(&params.b));
    let a_bounded = a_num_deg <= den_deg;
    let b_bounded = b_num_deg <= den_deg;

    let gd = GeneralDelta {
        a: params.a.clone(),
        b: params.b.clone(),
        c: params.c.clone(),
        d: params.d.clone(),
        alpha: alpha.clone(),
        beta: beta.clone(),
    };
    let mut scan_max: f64 = 0.0;
    for q in 0..=qmax {
        for p in 1..=pmax {
            if let Ok((qa, qb)) = crate::resonance::divisor_quantities_general(&gd, p, q as i64) {
                scan_max = scan_max.max(qa).max(qb);
            }
        }
    }

    let witness = if a_bounded && b_bounded {
        None
    } else {
        let quantity = if !a_bounded { "A" } else { "B" };
        let q = 1i64;
        let samples = (1..=pmax)
            .filter_map(|p| {
                crate::resonance::divisor_quantities_general(&gd, p, q).ok().map(
                    |(qa, qb)| {
                        if quantity == "A" {
                            qa
                        } else {
                            qb
                        }
                    },
                )
            })
            .collect();
        Some(DivisorWitness { quantity, q, samples })
    };

    DivisorTest {
        bounded: a_bounded && b_bounded,
        witness,
        degrees: (a_num_deg, b_num_deg, den_deg),
        scan_max,
    }
}

/// Final verdict of the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Kernel finite for all parameters and divisors bounded.
    Feasible,
    /// Divisor quotients unbounded: the reduction cannot apply.
    Infeasible,
    /// Kernel finiteness depends on the scaling parameters.
    Uncertain,
}

impl Verdict {
    /// Stable lower-case label for reports.
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Feasible => "feasible",
            Verdict::Infeasible => "infeasible",
            Verdict::Uncertain => "uncertain",
        }
    }
}

/// Bounded exact scan attached to Uncertain verdicts when `(α, β)` are
/// supplied: resonant pairs found so far, with an incompleteness flag
/// (the kernel limit is infinite, so no finite scan can certify).
#[derive(Debug, Clone)]
pub struct UncertainSubVerdict {
    /// Pairs `(p, q)` with `Δ(p, q) = 0` exactly, q ≥ 1.
    pub pairs_found: Vec<(u32, u64)>,
    /// Scan extent in p.
    pub scanned_pmax: u32,
    /// Always true here: the scan cannot prove finiteness.
    pub incomplete: bool,
}

/// The full classification record.
#[derive(Debug, Clone)]
pub struct FeasibilityVerdict {
    /// Linear well-posedness class.
    pub wellposed_class: WellPosedClass,
    /// Three-way verdict.
    pub verdict: Verdict,
    /// Kernel-limit test details.
    pub kernel: KernelTest,
    /// Divisor-boundedness test details.
    pub divisor: DivisorTest,
    /// Present for Uncertain verdicts with explicit `(α, β)`.
    pub sub_verdict: Option<UncertainSubVerdict>,
}

/// Outcome wrapper: classification applies only to well-posed classes
/// C1 and C2.
#[derive(Debug, Clone)]
pub enum ClassifyOutcome {
    /// A verdict with evidence.
    Classified(Box<FeasibilityVerdict>),
    /// Not linearly well-posed; no verdict.
    NotWellPosed,
    /// Class C3 is out of scope (nonlinear well-posedness unsettled).
    OutOfScopeC3,
}

/// Classify one system.
///
/// `alpha`/`beta` default to 1 for evidence sampling; passing them
/// explicitly also enables the Uncertain sub-verdict scan.
pub fn classify(
    params: &ABCDParams,
    alpha: Option<&Rational>,
    beta: Option<&Rational>,
    pmax: u32,
) -> ClassifyOutcome {
    let class = wellposedness_class(params);
    match class {
        WellPosedClass::None => return ClassifyOutcome::NotWellPosed,
        WellPosedClass::C3 => return ClassifyOutcome::OutOfScopeC3,
        _ => {}
    }
    let one = Rational::one();
    let scan_enabled = alpha.is_some() && beta.is_some();
    let alpha = alpha.cloned().unwrap_or_else(|| one.clone());
    let beta = beta.cloned().unwrap_or_else(|| one.clone());

    let kernel = kernel_limit_test(params, &alpha, &beta, pmax);
    let divisor = divisor_limit_test(params, &alpha, &beta, pmax, 8);

    let verdict = if !divisor.bounded {
        Verdict::Infeasible
    } else if kernel.finite {
        Verdict::Feasible
    } else {
        Verdict::Uncertain
    };

    let sub_verdict = if verdict == Verdict::Uncertain && scan_enabled {
        Some(uncertain_scan(params, &alpha, &beta, pmax))
    } else {
        None
    };

    ClassifyOutcome::Classified(Box::new(FeasibilityVerdict {
        wellposed_class: class,
        verdict,
        kernel,
        divisor,
        sub_verdict,
    }))
}

fn uncertain_scan(
    params: &ABCDParams,
    alpha: &Rational,
    beta: &Rational,
    pmax: u32,
) -> UncertainSubVerdict {
    let gd = GeneralDelta {
        a: params.a.clone(),
        b: params.b.clone(),
        c: params.c.clone(),
        d: params.d.clone(),
        alpha: alpha.clone(),
        beta: beta.clone(),
    };
    let mut pairs = Vec::new();
    for p in 1..=pmax {
        // q² must equal the exact rational value of the dispersion curve.
        let p2 = Rational::from_integer(BigInt::from(p) * BigInt::from(p));
        let num = beta * beta
            * &p2
            * (alpha * &params.a * &p2 - Rational::one())
            * (alpha * &params.c * &p2 - Rational::one());
        let den = (Rational::one() + alpha * &params.b * &p2)
            * (Rational::one() + alpha * &params.d * &p2);
        let q2 = num / den;
        if let Some(q_int) = crate::numeric::perfect_square_int(&q2) {
            if let Some(q) = q_int.to_u64() {
                if q >= 1 {
                    debug_assert!(delta_general(p, q as i64, &gd).is_zero());
                    pairs.push((p, q));
                }
            }
        }
    }
    UncertainSubVerdict { pairs_found: pairs, scanned_pmax: pmax, incomplete: true }
}

/// Sign pattern of one class in the sweep. `-1`, `0`, `+1` per constant.
pub type SignPattern = (i8, i8, i8, i8);

/// Representative parameters for a sign pattern, using magnitude 1/6.
pub fn representative(pattern: SignPattern) -> ABCDParams {
    let val = |s: i8| match s {
        0 => Rational::zero(),
        1 => Rational::new(1.into(), 6.into()),
        _ => Rational::new((-1).into(), 6.into()),
    };
    ABCDParams::from_abcd(val(pattern.0), val(pattern.1), val(pattern.2), val(pattern.3))
}

/// All sign-pattern classes within C1 and C2 compatible with
/// `c + d ≥ 0`: twelve C1 patterns plus four C2 patterns.
pub fn sign_pattern_classes() -> Vec<SignPattern> {
    let mut out = Vec::new();
    for a in [-1i8, 0] {
        for b in [0i8, 1] {
            for c in [-1i8, 0] {
                for d in [0i8, 1] {
                    if c < 0 && d == 0 {
                        continue; // violates c + d >= 0
                    }
                    out.push((a, b, c, d));
                }
            }
        }
    }
    for b in [0i8, 1] {
        for d in [0i8, 1] {
            out.push((1, b, 1, d));
        }
    }
    out
}

/// Run the sweep: each class with its verdict.
pub fn sweep_sign_patterns(pmax: u32) -> Vec<(SignPattern, Verdict)> {
    sign_pattern_classes()
        .into_iter()
        .map(|pattern| {
            let params = representative(pattern);
            match classify(&params, None, None, pmax) {
                ClassifyOutcome::Classified(v) => (pattern, v.verdict),
                _ => unreachable!("sweep patterns are all C1 or C2"),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: &str, b: &str, c: &str, d: &str) -> ABCDParams {
        ABCDParams::parse(a, b, c, d).unwrap()
    }

    #[test]
    fn wellposedness_examples() {
        // Coupled BBM
        assert_eq!(wellposedness_class(&params("0", "1/6", "0", "1/6")), WellPosedClass::C1);
        // Coupled KdV
        assert_eq!(wellposedness_class(&params("1/6", "0", "1/6", "0")), WellPosedClass::C2);
        assert_eq!(wellposedness_class(&params("1", "-1", "1", "-1")), WellPosedClass::C3);
        assert_eq!(wellposedness_class(&params("1", "0", "-1", "0")), WellPosedClass::None);
    }

    #[test]
    fn kernel_limit_examples() {
        let one = Rational::one();
        // Bona-Smith family: finite limit -β²c/(αbd)
        let bs = params("0", "1/3", "-1/6", "1/3");
        let kt = kernel_limit_test(&bs, &one, &one, 12);
        assert!(kt.finite);
        // -c/(bd) = (1/6)/(1/9) = 3/2
        assert_eq!(kt.limit.unwrap(), Rational::new(3.into(), 2.into()));

        // Case III: infinite
        let c3 = params("-1/6", "1/3", "-1/6", "1/3");
        assert!(!kernel_limit_test(&c3, &one, &one, 12).finite);

        // a = c = 0, b = d > 0: finite with limit 0
        let bbm = params("0", "1/6", "0", "1/6");
        let kt = kernel_limit_test(&bbm, &one, &one, 12);
        assert!(kt.finite);
        assert!(kt.limit.unwrap().is_zero());
    }

    #[test]
    fn divisor_limit_examples() {
        let one = Rational::one();
        // Case II: unbounded with witness B
        let case2 = params("0", "1/3", "0", "0");
        let dt = divisor_limit_test(&case2, &one, &one, 40, 4);
        assert!(!dt.bounded);
        assert_eq!(dt.witness.as_ref().unwrap().quantity, "B");
        let w = &dt.witness.unwrap().samples;
        assert!(w.last().unwrap() > &(5.0 * w[w.len() / 2]), "witness grows");

        // Case I bounded
        let case1 = params("0", "1/3", "-1/6", "1/3");
        assert!(divisor_limit_test(&case1, &one, &one, 40, 4).bounded);

        // Classical Boussinesq: unbounded with witness A
        let cb = params("0", "0", "0", "1/3");
        let dt = divisor_limit_test(&cb, &one, &one, 40, 4);
        assert!(!dt.bounded);
        assert_eq!(dt.witness.unwrap().quantity, "A");
    }

    #[test]
    fn classify_golden_table() {
        let check = |p: &ABCDParams, expected: Verdict| match classify(p, None, None, 24) {
            ClassifyOutcome::Classified(v) => assert_eq!(v.verdict, expected),
            other => panic!("unexpected outcome {other:?}"),
        };
        check(&params("0", "1/6", "0", "1/6"), Verdict::Feasible); // Coupled BBM
        check(&params("0", "1/3", "0", "0"), Verdict::Infeasible);
        check(&params("0", "0", "0", "1/3"), Verdict::Infeasible); // Classical Boussinesq
        check(&params("1/6", "0", "1/6", "0"), Verdict::Uncertain); // Coupled KdV
    }

    #[test]
    fn classify_wrappers() {
        assert!(matches!(
            classify(&params("1", "0", "-1", "0"), None, None, 8),
            ClassifyOutcome::NotWellPosed
        ));
        assert!(matches!(
            classify(&params("1", "-1", "1", "-1"), None, None, 8),
            ClassifyOutcome::OutOfScopeC3
        ));
    }

    #[test]
    fn sweep_counts_3_2_11() {
        let sweep = sweep_sign_patterns(24);
        assert_eq!(sweep.len(), 16);
        let count = |v: Verdict| sweep.iter().filter(|(_, verdict)| *verdict == v).count();
        assert_eq!(count(Verdict::Feasible), 3);
        assert_eq!(count(Verdict::Infeasible), 2);
        assert_eq!(count(Verdict::Uncertain), 11);
    }

    #[test]
    fn provenance_relations_hold() {
        let p = ABCDParams::from_provenance(
            Rational::new(5.into(), 6.into()),
            Rational::new(1.into(), 2.into()),
            Rational::new(1.into(), 3.into()),
        )
        .unwrap();
        assert!(p.check_relations());
        assert_eq!(&p.a + &p.b + &p.c + &p.d, Rational::new(1.into(), 3.into()));
    }

    #[test]
    fn bona_smith_map_and_verdict() {
        let p = ABCDParams::bona_smith_from_mu(Rational::from_integer((-2).into())).unwrap();
        // b = d = (1-μ)/(3(2-μ)) = 3/12 = 1/4, c = μ/(3(2-μ)) = -1/6
        assert!(p.a.is_zero());
        assert_eq!(p.b, Rational::new(1.into(), 4.into()));
        assert_eq!(p.d, Rational::new(1.into(), 4.into()));
        assert_eq!(p.c, Rational::new((-1).into(), 6.into()));
        assert!(p.check_relations());
        match classify(&p, None, None, 16) {
            ClassifyOutcome::Classified(v) => assert_eq!(v.verdict, Verdict::Feasible),
            other => panic!("unexpected {other:?}"),
        }
        assert!(ABCDParams::bona_smith_from_mu(Rational::one()).is_err());
    }

    #[test]
    fn uncertain_sub_verdict_scans_exactly() {
        // All-zero pattern: Δ(p, q) = q² − β²p², so with β = 2 every
        // (p, 2p) is resonant.
        let p = params("0", "0", "0", "0");
        let alpha = Rational::one();
        let beta = Rational::from_integer(2.into());
        match classify(&p, Some(&alpha), Some(&beta), 10) {
            ClassifyOutcome::Classified(v) => {
                assert_eq!(v.verdict, Verdict::Uncertain);
                let sub = v.sub_verdict.unwrap();
                assert!(sub.incomplete);
                assert_eq!(sub.pairs_found[0], (1, 2));
                assert_eq!(sub.pairs_found.len(), 10);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}

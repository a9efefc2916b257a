//! The linearized operator at a Bona-Smith bifurcation point: kernel
//! vectors, the modewise pseudo-inverse, the kernel-complement
//! projection and the reflection/shift symmetries.
//!
//! Mode relations for `p ≥ 1` (with `K = 1 + αp²`, `S = 1 + γαp²`):
//!
//! ```text
//! L(η, u)|_{pq} = ( β S η − i q K u / p ,  i q K η / p + β u )
//! ```
//!
//! so the determinant of the 2×2 mode matrix is `Δ(p,q)/p²·…` up to the
//! row scaling used in the solved forms below. Resonant modes
//! `(p₀, ±q₀)` are inverted by the zero-free-constant representative;
//! the `(0,0)` direction maps to zero.

use num::complex::Complex64;
use num::Zero;

use crate::error::Error;
use crate::resonance::{self, EnumMethod, ResonanceSet, ScaledParams, ScaledParamsF};
use crate::spectral::{inner_product, FieldPair, FourierField, Parity, C64};
use crate::Result;

/// Relative tolerance for the range-compatibility check. Inputs built by
/// the reduction satisfy the condition exactly; violations indicate bugs
/// upstream.
pub const COMPAT_TOL: f64 = 1e-10;

/// Apply the linearized operator `L₀` to a field pair.
///
/// First component: `Dx⁻¹ u_t + β(I−π₀)η − γαβ(I−π₀)η_xx − α(I−π₀)u_xt`;
/// second: `Dx⁻¹ η_t + β u − α η_xt`. Output parities (even, odd).
pub fn apply_l0(pair: &FieldPair, sp: &ScaledParamsF) -> FieldPair {
    let (alpha, beta, gamma) = (sp.alpha, sp.beta, sp.gamma);
    let eta = &pair.eta;
    let u = &pair.u;

    let first = u
        .diff(0, 1)
        .dx_inverse()
        .add(&eta.minus_pi0().scale(beta.into()))
        .add(&eta.diff(2, 0).minus_pi0().scale((-gamma * alpha * beta).into()))
        .add(&u.diff(1, 1).minus_pi0().scale((-alpha).into()));

    let second = eta
        .diff(0, 1)
        .dx_inverse()
        .add(&u.scale(beta.into()))
        .add(&eta.diff(1, 1).scale((-alpha).into()));

    FieldPair { eta: first, u: second }
}

/// Reflection symmetry: `q ↦ −q` with a sign flip on the odd component.
///
/// On real fields of the standing-wave parity class this represents the
/// reflection `(η, u)(x, t) ↦ (η(−x, t), −u(−x, t))` composed with time
/// reversal, which is what makes `S ξ₀ = ξ̄₀` and `S T₋τ = T_τ S` hold
/// as stated.
pub fn symmetry_s(pair: &FieldPair) -> FieldPair {
    let flip = |field: &FourierField, sign: f64| {
        let entries = field
            .iter()
            .map(|(&(p, q), &c)| ((p, -q), c * sign))
            .collect::<Vec<_>>();
        FourierField::from_coeffs(field.parity(), entries, false)
            .map(|mut f| {
                f.set_real_flag(field.is_real());
                f
            })
            .expect("parity preserved by q reflection")
    };
    FieldPair { eta: flip(&pair.eta, 1.0), u: flip(&pair.u, -1.0) }
}

/// Time shift `T_τ`: multiply each q-mode by `e^{iqτ}`.
///
/// τ is reduced modulo the period first, so whole-period shifts are the
/// identity exactly.
pub fn symmetry_t(pair: &FieldPair, tau: f64) -> FieldPair {
    let tau = tau.rem_euclid(2.0 * std::f64::consts::PI);
    let shift = |field: &FourierField| {
        let entries = field
            .iter()
            .map(|(&(p, q), &c)| ((p, q), c * C64::from_polar(1.0, q as f64 * tau)))
            .collect::<Vec<_>>();
        FourierField::from_coeffs(field.parity(), entries, false)
            .map(|mut f| {
                f.set_real_flag(field.is_real());
                f
            })
            .expect("parity unchanged")
    };
    FieldPair { eta: shift(&pair.eta), u: shift(&pair.u) }
}

/// The operator at a point with a single resonant pair.
#[derive(Debug, Clone)]
pub struct LinearizedOperator {
    params: ScaledParams,
    paramsf: ScaledParamsF,
    sigma: ResonanceSet,
    p0: u32,
    q0: u32,
    /// `√(1 + γαp₀²)`.
    sigma_root: f64,
    /// `γαp₀²`.
    g0: f64,
    /// Resonant-mode denominator `q₀(1+αp₀²)√(1+γαp₀²) + βp₀`.
    resonant_denom: f64,
    xi0: FieldPair,
    xi0_bar: FieldPair,
    zeta0: FieldPair,
}

impl LinearizedOperator {
    /// Build the operator, requiring the resonance set to have exactly
    /// one element. Multi-element sets are rejected with a diagnostic;
    /// the single-mode reduction does not cover them.
    pub fn new(params: ScaledParams) -> Result<Self> {
        let sigma = resonance::enumerate_sigma(&params, EnumMethod::Quartic);
        let (p0, q0) = match sigma.elements.as_slice() {
            [] => return Err(Error::EmptyResonanceSet),
            [only] => *only,
            many => {
                return Err(Error::MultipleResonances { elements: many.to_vec() });
            }
        };
        let paramsf = params.to_f64();
        let p0f = p0 as f64;
        let q0f = q0 as f64;
        let g0 = paramsf.gamma * paramsf.alpha * p0f * p0f;
        let sigma_root = (1.0 + g0).sqrt();
        let resonant_denom =
            q0f * (1.0 + paramsf.alpha * p0f * p0f) * sigma_root + paramsf.beta * p0f;

        let mode = |q: i64, u_coeff: C64| -> FieldPair {
            let eta = FourierField::from_coeffs(
                Parity::EvenCos,
                [((p0, q), C64::new(1.0, 0.0))],
                false,
            )
            .unwrap();
            let u = FourierField::from_coeffs(Parity::OddSin, [((p0, q), u_coeff)], false).unwrap();
            FieldPair { eta, u }
        };
        let xi0 = mode(q0 as i64, C64::new(0.0, -sigma_root));
        let xi0_bar = mode(-(q0 as i64), C64::new(0.0, sigma_root));
        let zeta0 = FieldPair {
            eta: FourierField::from_coeffs(
                Parity::EvenCos,
                [((0u32, 0i64), C64::new(1.0, 0.0))],
                true,
            )
            .unwrap(),
            u: FourierField::zero(Parity::OddSin),
        };

        Ok(LinearizedOperator {
            params,
            paramsf,
            sigma,
            p0,
            q0,
            sigma_root,
            g0,
            resonant_denom,
            xi0,
            xi0_bar,
            zeta0,
        })
    }

    /// Exact parameters.
    pub fn params(&self) -> &ScaledParams {
        &self.params
    }

    /// Floating parameters.
    pub fn paramsf(&self) -> ScaledParamsF {
        self.paramsf
    }

    /// The resonance set (single element).
    pub fn sigma(&self) -> &ResonanceSet {
        &self.sigma
    }

    /// The resonant pair.
    pub fn resonant_pair(&self) -> (u32, u32) {
        (self.p0, self.q0)
    }

    /// `√(1 + γαp₀²)`.
    pub fn sigma_root(&self) -> f64 {
        self.sigma_root
    }

    /// `γαp₀²`.
    pub fn g0(&self) -> f64 {
        self.g0
    }

    /// Denominator of the resonant-mode representative.
    pub fn resonant_denom(&self) -> f64 {
        self.resonant_denom
    }

    /// Kernel vector `ξ₀ = (e^{iq₀t} cos p₀x, −i√(1+γαp₀²) e^{iq₀t} sin p₀x)`.
    pub fn xi0(&self) -> &FieldPair {
        &self.xi0
    }

    /// Conjugate kernel vector.
    pub fn xi0_bar(&self) -> &FieldPair {
        &self.xi0_bar
    }

    /// Trivial kernel vector `ζ₀ = (1, 0)`.
    pub fn zeta0(&self) -> &FieldPair {
        &self.zeta0
    }

    /// `‖ξ₀‖² = ‖ξ̄₀‖² = 2π²(2 + γαp₀²)`.
    pub fn xi0_norm_sqr(&self) -> f64 {
        2.0 * std::f64::consts::PI.powi(2) * (2.0 + self.g0)
    }

    /// Apply `L₀`.
    pub fn apply(&self, pair: &FieldPair) -> FieldPair {
        apply_l0(pair, &self.paramsf)
    }

    /// Whether a mode index is the resonant direction.
    pub fn is_resonant(&self, p: u32, q: i64) -> bool {
        p == self.p0 && q.unsigned_abs() as u32 == self.q0
    }

    /// Projection `Q₀F = F − (⟨F,ξ₀⟩/‖ξ₀‖²) ξ₀ − (⟨F,ξ̄₀⟩/‖ξ̄₀‖²) ξ̄₀`.
    pub fn q0_project(&self, f: &FieldPair) -> FieldPair {
        let norm_sqr = self.xi0_norm_sqr();
        let along_xi0 = inner_product(f, &self.xi0) / norm_sqr;
        let along_bar = inner_product(f, &self.xi0_bar) / norm_sqr;
        f.sub(&self.xi0.scale(along_xi0)).sub(&self.xi0_bar.scale(along_bar))
    }

    /// Bounded modewise solve of `L₀ U = F` with all kernel components
    /// zeroed: non-resonant modes by the solved forms, resonant modes by
    /// the zero-free-constant representative, `(0,0)` to zero.
    ///
    /// Requires `F ⟂ ξ₀, ξ̄₀` to [`COMPAT_TOL`] relative; the output is
    /// orthogonal to `ξ₀`, `ξ̄₀`, `ζ₀`.
    pub fn pseudo_inverse(&self, f_pair: &FieldPair) -> Result<FieldPair> {
        let norm = f_pair.l2_norm();
        if norm > 0.0 {
            let overlap = inner_product(f_pair, &self.xi0)
                .norm()
                .max(inner_product(f_pair, &self.xi0_bar).norm());
            // Kernel overlaps scale like ‖F‖·‖ξ₀‖; normalise accordingly.
            let scale = norm * self.xi0_norm_sqr().sqrt();
            if overlap > COMPAT_TOL * scale {
                return Err(Error::CompatibilityViolation {
                    overlap,
                    norm: scale,
                    tol: COMPAT_TOL,
                });
            }
        }

        let (alpha, beta, gamma) = (self.paramsf.alpha, self.paramsf.beta, self.paramsf.gamma);
        let mut eta_out = FourierField::zero(Parity::EvenCos);
        let mut u_out = FourierField::zero(Parity::OddSin);

        let g_tilde = &f_pair.eta;
        let f_field = &f_pair.u;
        let mut keys: Vec<(u32, i64)> = g_tilde.iter().map(|(&k, _)| k).collect();
        keys.extend(f_field.iter().map(|(&k, _)| k));
        keys.sort_unstable();
        keys.dedup();

        for (p, q) in keys {
            if p == 0 {
                continue; // η_{0q} = 0, including η_00
            }
            let g = g_tilde.coeff(p, q);
            let f = f_field.coeff(p, q);
            let pf = p as f64;
            let qf = q as f64;
            let k_fac = 1.0 + alpha * pf * pf;
            if self.is_resonant(p, q) {
                let sgn = if q > 0 { 1.0 } else { -1.0 };
                let denom = self.resonant_denom;
                // η = −sgn(q) i √(1+γαp₀²) p₀ f / D,  u = p₀ f / D
                let eta =
                    C64::new(0.0, -sgn * self.sigma_root) * f * (pf / denom);
                let u = f * (pf / denom);
                eta_out.add_to_mode(p, q, eta)?;
                u_out.add_to_mode(p, q, u)?;
            } else {
                let s_fac = 1.0 + gamma * alpha * pf * pf;
                let delta = qf * qf * k_fac * k_fac - beta * beta * pf * pf * s_fac;
                debug_assert!(delta != 0.0, "nonzero determinant off the resonance set");
                let iqk = C64::new(0.0, qf * k_fac);
                let eta = -(iqk * f + beta * pf * g) * (pf / delta);
                let u = -(beta * pf * s_fac * f - iqk * g) * (pf / delta);
                eta_out.add_to_mode(p, q, eta)?;
                u_out.add_to_mode(p, q, u)?;
            }
        }

        let reality = f_pair.is_real();
        eta_out.set_real_flag(reality && eta_out.check_reality(1e-12));
        u_out.set_real_flag(reality && u_out.check_reality(1e-12));
        Ok(FieldPair { eta: eta_out, u: u_out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn golden_op() -> LinearizedOperator {
        LinearizedOperator::new(ScaledParams::parse("5", "4", "1/4").unwrap()).unwrap()
    }

    #[test]
    fn kernel_vectors_annihilated() {
        let op = golden_op();
        for v in [op.xi0(), op.xi0_bar(), op.zeta0()] {
            let image = op.apply(v);
            assert!(image.l2_norm() < 1e-12, "kernel vector not annihilated");
        }
    }

    #[test]
    fn single_cos_mode_image_matches_mode_formulas() {
        // (η, u) = (cos(px) e^{iqt}, 0) maps to
        // g̃ = β(1+γαp²) η,  f = i q (1+αp²) η / p.
        let op = golden_op();
        let (p, q) = (2u32, 3i64);
        let eta = FourierField::from_coeffs(
            Parity::EvenCos,
            [((p, q), C64::new(1.0, 0.0))],
            false,
        )
        .unwrap();
        let pair = FieldPair { eta, u: FourierField::zero(Parity::OddSin) };
        let image = op.apply(&pair);
        let spf = op.paramsf();
        let p2 = (p * p) as f64;
        let expected_g = spf.beta * (1.0 + spf.gamma * spf.alpha * p2);
        let expected_f = C64::new(0.0, q as f64 * (1.0 + spf.alpha * p2) / p as f64);
        assert!((image.eta.coeff(p, q) - expected_g).norm() < 1e-12);
        assert!((image.u.coeff(p, q) - expected_f).norm() < 1e-12);
    }

    #[test]
    fn projection_is_idempotent_and_kills_kernel() {
        let op = golden_op();
        assert!(op.q0_project(op.xi0()).l2_norm() < 1e-12);

        // Q0 F = F when F is already orthogonal to the kernel pair.
        let f = FieldPair {
            eta: FourierField::from_coeffs(
                Parity::EvenCos,
                [((2, 1), C64::new(0.7, -0.3))],
                false,
            )
            .unwrap(),
            u: FourierField::zero(Parity::OddSin),
        };
        let projected = op.q0_project(&f);
        assert!(projected.sub(&f).l2_norm() < 1e-13);

        let mixed = f.add(&op.xi0().scale(C64::new(0.4, 0.1)));
        let once = op.q0_project(&mixed);
        let twice = op.q0_project(&once);
        assert!(once.sub(&twice).l2_norm() < 1e-12);
    }

    #[test]
    fn pseudo_inverse_zero_and_resonant_mode() {
        let op = golden_op();
        assert!(op.pseudo_inverse(&FieldPair::zero()).unwrap().is_zero_pair());

        // Compatible resonant-mode input: g̃ = −i σ f at (p0, q0).
        let f_val = C64::new(0.3, -0.2);
        let g_val = C64::new(0.0, -op.sigma_root()) * f_val;
        let (p0, q0) = op.resonant_pair();
        let pair = FieldPair {
            eta: FourierField::from_coeffs(Parity::EvenCos, [((p0, q0 as i64), g_val)], false)
                .unwrap(),
            u: FourierField::from_coeffs(Parity::OddSin, [((p0, q0 as i64), f_val)], false)
                .unwrap(),
        };
        let out = op.pseudo_inverse(&pair).unwrap();
        let denom = op.resonant_denom();
        let expect_eta = C64::new(0.0, -op.sigma_root()) * f_val * (p0 as f64 / denom);
        let expect_u = f_val * (p0 as f64 / denom);
        assert!((out.eta.coeff(p0, q0 as i64) - expect_eta).norm() < 1e-13);
        assert!((out.u.coeff(p0, q0 as i64) - expect_u).norm() < 1e-13);
        // round-trip through the operator restores the input
        let back = op.apply(&out);
        assert!(back.sub(&pair).l2_norm() < 1e-12);
        // output orthogonal to the kernel
        assert!(inner_product(&out, op.xi0()).norm() < 1e-12);
        assert!(inner_product(&out, op.zeta0()).norm() < 1e-12);
    }

    #[test]
    fn pseudo_inverse_rejects_incompatible_input() {
        let op = golden_op();
        let bad = op.xi0().scale(C64::new(1.0, 0.0));
        assert!(matches!(
            op.pseudo_inverse(&bad),
            Err(Error::CompatibilityViolation { .. })
        ));
    }

    #[test]
    fn multi_element_sigma_rejected() {
        let params = ScaledParams::parse("7/5", "12", "24/35").unwrap();
        match LinearizedOperator::new(params) {
            Err(Error::MultipleResonances { elements }) => {
                assert!(elements.contains(&(1, 7)) && elements.contains(&(2, 8)));
            }
            other => panic!("expected multi-element rejection, got {other:?}"),
        }
    }

    #[test]
    fn empty_sigma_rejected() {
        let params = ScaledParams::parse("1", "1", "1/2").unwrap();
        assert!(matches!(
            LinearizedOperator::new(params),
            Err(Error::EmptyResonanceSet)
        ));
    }

    #[test]
    fn symmetry_identities() {
        let op = golden_op();
        // S ξ0 = ξ̄0, S ζ0 = ζ0
        assert!(symmetry_s(op.xi0()).sub(op.xi0_bar()).l2_norm() < 1e-14);
        assert!(symmetry_s(op.zeta0()).sub(op.zeta0()).l2_norm() < 1e-14);

        // T_τ ξ0 = e^{iq0 τ} ξ0
        let tau = 0.739;
        let shifted = symmetry_t(op.xi0(), tau);
        let phase = C64::from_polar(1.0, op.resonant_pair().1 as f64 * tau);
        assert!(shifted.sub(&op.xi0().scale(phase)).l2_norm() < 1e-13);

        // T_{2π} = identity
        let pair = op.xi0().add(&op.zeta0().scale(C64::new(0.3, 0.0)));
        let cycled = symmetry_t(&pair, 2.0 * PI);
        assert!(cycled.sub(&pair).l2_norm() < 1e-12);
    }

    #[test]
    fn xi0_norm_matches_closed_form() {
        let op = golden_op();
        let ip = inner_product(op.xi0(), op.xi0());
        assert!((ip.re - op.xi0_norm_sqr()).abs() < 1e-10);
        assert!(ip.im.abs() < 1e-12);
        // time-frequency orthogonality
        assert!(inner_product(op.xi0(), op.xi0_bar()).norm() < 1e-14);
    }
}

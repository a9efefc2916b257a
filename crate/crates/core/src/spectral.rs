//! Finite double Fourier series with an x-parity tag, and the elementary
//! operators every other module consumes.
//!
//! A field is a finite sum over modes `(p, q)`:
//!
//! ```text
//! even:  f(x,t) = sum_{p>=0, q}  c_{pq} cos(p x) e^{i q t}
//! odd:   f(x,t) = sum_{p>=1, q}  c_{pq} sin(p x) e^{i q t}
//! ```
//!
//! on the doubly 2π-periodic square `[-π, π]²`. Products are computed
//! without truncation (support grows), so quadratic residuals are exact
//! up to rounding. A field representing a real function satisfies
//! `c_{p,-q} = conj(c_{pq})` and carries a `real` flag asserting it.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num::complex::Complex64;
use num::Zero;

use crate::error::Error;
use crate::Result;

/// Complex coefficient scalar.
pub type C64 = Complex64;

/// Coefficients below this magnitude are dropped when accumulating sums.
/// Exact zeros are what we care about; this only prunes true cancellations.
const DROP_EPS: f64 = 0.0;

/// x-parity of the basis a field expands over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    /// `cos(p x) e^{iqt}`, p >= 0.
    EvenCos,
    /// `sin(p x) e^{iqt}`, p >= 1.
    OddSin,
}

impl Parity {
    /// Parity of a product of two fields.
    pub fn product(self, other: Parity) -> Parity {
        if self == other {
            Parity::EvenCos
        } else {
            Parity::OddSin
        }
    }

    /// The opposite parity.
    pub fn flipped(self) -> Parity {
        match self {
            Parity::EvenCos => Parity::OddSin,
            Parity::OddSin => Parity::EvenCos,
        }
    }

    /// Lower-case label used in coefficient dumps.
    pub fn label(self) -> &'static str {
        match self {
            Parity::EvenCos => "even",
            Parity::OddSin => "odd",
        }
    }
}

/// One scalar field as a sparse map of mode coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierField {
    parity: Parity,
    coeffs: BTreeMap<(u32, i64), C64>,
    real: bool,
}

impl FourierField {
    /// Empty (zero) field. The zero function is real.
    pub fn zero(parity: Parity) -> Self {
        FourierField { parity, coeffs: BTreeMap::new(), real: true }
    }

    /// Build from explicit mode coefficients.
    ///
    /// Rejects `p = 0` entries for the sine basis. The `real` flag is
    /// asserted against the conjugate-pair symmetry.
    pub fn from_coeffs<I>(parity: Parity, entries: I, real: bool) -> Result<Self>
    where
        I: IntoIterator<Item = ((u32, i64), C64)>,
    {
        let mut f = FourierField { parity, coeffs: BTreeMap::new(), real };
        for ((p, q), c) in entries {
            f.add_to_mode(p, q, c)?;
        }
        if real && !f.check_reality(0.0) {
            return Err(Error::NonRealField);
        }
        Ok(f)
    }

    /// Convenience: a real field from cosine/sine amplitudes of
    /// `a * basis(p x) * e^{iqt} + conj` pairs is easier to build from a
    /// real-valued closure over explicit modes; tests use `from_coeffs`.
    pub fn single_mode(parity: Parity, p: u32, q: i64, c: C64) -> Result<Self> {
        Self::from_coeffs(parity, [((p, q), c)], false)
    }

    /// The basis parity.
    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Whether the field is flagged as representing a real function.
    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Mark the reality flag after an external check.
    pub fn set_real_flag(&mut self, real: bool) {
        self.real = real;
    }

    /// Verify `c(p,-q) = conj(c(p,q))` within `tol` (0.0 means exact).
    pub fn check_reality(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|(&(p, q), &c)| {
            let mirror = self.coeff(p, -q);
            (mirror - c.conj()).norm() <= tol
        })
    }

    /// Coefficient of mode `(p, q)` (zero when absent).
    pub fn coeff(&self, p: u32, q: i64) -> C64 {
        self.coeffs.get(&(p, q)).copied().unwrap_or_else(C64::zero)
    }

    /// Accumulate into one mode, dropping exact cancellations.
    pub fn add_to_mode(&mut self, p: u32, q: i64, c: C64) -> Result<()> {
        if self.parity == Parity::OddSin && p == 0 {
            if c.is_zero() {
                return Ok(());
            }
            return Err(Error::OddZeroMode { q });
        }
        let entry = self.coeffs.entry((p, q)).or_insert_with(C64::zero);
        *entry += c;
        if entry.norm() <= DROP_EPS {
            self.coeffs.remove(&(p, q));
        }
        Ok(())
    }

    /// Iterate over stored modes.
    pub fn iter(&self) -> impl Iterator<Item = (&(u32, i64), &C64)> {
        self.coeffs.iter()
    }

    /// Number of stored modes.
    pub fn mode_count(&self) -> usize {
        self.coeffs.len()
    }

    /// True when no mode is stored.
    pub fn is_zero_field(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest spatial index in the support.
    pub fn max_p(&self) -> u32 {
        self.coeffs.keys().map(|&(p, _)| p).max().unwrap_or(0)
    }

    /// Largest |q| in the support.
    pub fn max_q(&self) -> i64 {
        self.coeffs.keys().map(|&(_, q)| q.abs()).max().unwrap_or(0)
    }

    /// Restrict support to `p <= pmax`, `|q| <= qmax` (explicit truncation).
    pub fn truncate(&self, pmax: u32, qmax: i64) -> FourierField {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(&(p, q), _)| p <= pmax && q.abs() <= qmax)
            .map(|(&k, &v)| (k, v))
            .collect();
        FourierField { parity: self.parity, coeffs, real: self.real }
    }

    /// Drop coefficients with |c| <= eps (cleanup after cancellations).
    pub fn prune(&self, eps: f64) -> FourierField {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(_, c)| c.norm() > eps)
            .map(|(&k, &v)| (k, v))
            .collect();
        FourierField { parity: self.parity, coeffs, real: self.real }
    }

    /// Pointwise sum. Panics on parity mismatch (a programming error).
    pub fn add(&self, other: &FourierField) -> FourierField {
        assert_eq!(self.parity, other.parity, "parity mismatch in field addition");
        let mut out = self.clone();
        out.real = self.real && other.real;
        for (&(p, q), &c) in &other.coeffs {
            out.add_to_mode(p, q, c).expect("parity preserved");
        }
        out
    }

    /// `self - other`.
    pub fn sub(&self, other: &FourierField) -> FourierField {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// Multiply all coefficients by a complex scalar.
    pub fn scale(&self, factor: C64) -> FourierField {
        let coeffs = self.coeffs.iter().map(|(&k, &v)| (k, v * factor)).collect();
        FourierField {
            parity: self.parity,
            coeffs,
            real: self.real && factor.im == 0.0,
        }
    }

    /// x-average: keeps only `p = 0` modes. Odd fields average to zero.
    pub fn pi0(&self) -> FourierField {
        match self.parity {
            Parity::EvenCos => {
                let coeffs =
                    self.coeffs.iter().filter(|(&(p, _), _)| p == 0).map(|(&k, &v)| (k, v)).collect();
                FourierField { parity: self.parity, coeffs, real: self.real }
            }
            Parity::OddSin => FourierField::zero(Parity::OddSin),
        }
    }

    /// `(I - pi0)`: drop the x-average.
    pub fn minus_pi0(&self) -> FourierField {
        match self.parity {
            Parity::EvenCos => {
                let coeffs =
                    self.coeffs.iter().filter(|(&(p, _), _)| p != 0).map(|(&k, &v)| (k, v)).collect();
                FourierField { parity: self.parity, coeffs, real: self.real }
            }
            Parity::OddSin => self.clone(),
        }
    }

    /// Zero-average x-antiderivative after suppressing the x-mean.
    ///
    /// `cos(px) -> sin(px)/p`, `sin(px) -> -cos(px)/p`; `p = 0` modes drop.
    /// Satisfies `d/dx (dx_inverse f) = (I - pi0) f` exactly.
    pub fn dx_inverse(&self) -> FourierField {
        let mut out = FourierField::zero(self.parity.flipped());
        out.real = self.real;
        for (&(p, q), &c) in &self.coeffs {
            if p == 0 {
                continue;
            }
            let factor = match self.parity {
                Parity::EvenCos => 1.0 / p as f64,
                Parity::OddSin => -1.0 / p as f64,
            };
            out.add_to_mode(p, q, c * factor).expect("p >= 1");
        }
        out
    }

    /// Exact spectral derivative `d^{dx}/dx^{dx} d^{dt}/dt^{dt}`.
    ///
    /// Parity flips with odd `dx_order`. Each time derivative multiplies
    /// by `i q`.
    pub fn diff(&self, dx_order: u32, dt_order: u32) -> FourierField {
        let mut current = self.clone();
        for _ in 0..dx_order {
            current = current.dx_once();
        }
        if dt_order > 0 {
            let mut out = FourierField::zero(current.parity);
            out.real = current.real;
            for (&(p, q), &c) in &current.coeffs {
                let factor = C64::new(0.0, q as f64).powu(dt_order);
                if factor.is_zero() {
                    continue;
                }
                out.add_to_mode(p, q, c * factor).expect("parity preserved");
            }
            current = out;
        }
        current
    }

    fn dx_once(&self) -> FourierField {
        let mut out = FourierField::zero(self.parity.flipped());
        out.real = self.real;
        for (&(p, q), &c) in &self.coeffs {
            if p == 0 {
                continue;
            }
            let factor = match self.parity {
                // d/dx cos(px) = -p sin(px)
                Parity::EvenCos => -(p as f64),
                // d/dx sin(px) = p cos(px)
                Parity::OddSin => p as f64,
            };
            out.add_to_mode(p, q, c * factor).expect("p >= 1");
        }
        out
    }

    /// Truncation-free product with the parity algebra
    /// cos·cos -> cos, sin·sin -> cos, cos·sin -> sin.
    pub fn multiply(&self, other: &FourierField) -> FourierField {
        let out_parity = self.parity.product(other.parity);
        let mut out = FourierField::zero(out_parity);
        out.real = self.real && other.real;
        for (&(p1, q1), &c1) in &self.coeffs {
            for (&(p2, q2), &c2) in &other.coeffs {
                let q = q1 + q2;
                let half = c1 * c2 * 0.5;
                match (self.parity, other.parity) {
                    (Parity::EvenCos, Parity::EvenCos) => {
                        // cos a cos b = (cos(a+b) + cos(a-b)) / 2
                        out.add_to_mode(p1 + p2, q, half).unwrap();
                        out.add_to_mode(p1.abs_diff(p2), q, half).unwrap();
                    }
                    (Parity::OddSin, Parity::OddSin) => {
                        // sin a sin b = (cos(a-b) - cos(a+b)) / 2
                        out.add_to_mode(p1.abs_diff(p2), q, half).unwrap();
                        out.add_to_mode(p1 + p2, q, -half).unwrap();
                    }
                    (Parity::EvenCos, Parity::OddSin) => {
                        // cos a sin b = (sin(a+b) - sin(a-b)) / 2
                        add_sin_term(&mut out, p1 + p2, q, half);
                        add_sin_signed(&mut out, p1 as i64 - p2 as i64, q, -half);
                    }
                    (Parity::OddSin, Parity::EvenCos) => {
                        // sin a cos b = (sin(a+b) + sin(a-b)) / 2
                        add_sin_term(&mut out, p1 + p2, q, half);
                        add_sin_signed(&mut out, p1 as i64 - p2 as i64, q, half);
                    }
                }
            }
        }
        out
    }

    /// Weighted coefficient Sobolev norm of index `k`:
    /// `sqrt( sum (1 + p^2 + q^2)^k |c|^2 )`.
    pub fn sobolev_norm(&self, k: u32) -> f64 {
        self.coeffs
            .iter()
            .map(|(&(p, q), c)| {
                let w = 1.0 + (p as f64).powi(2) + (q as f64).powi(2);
                w.powi(k as i32) * c.norm_sqr()
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Complex value at one point (no reality requirement).
    pub fn eval_complex(&self, x: f64, t: f64) -> C64 {
        let mut acc = C64::zero();
        for (&(p, q), &c) in &self.coeffs {
            let spatial = match self.parity {
                Parity::EvenCos => (p as f64 * x).cos(),
                Parity::OddSin => (p as f64 * x).sin(),
            };
            let temporal = C64::from_polar(1.0, q as f64 * t);
            acc += c * spatial * temporal;
        }
        acc
    }

    /// Sample a real-flagged field on the uniform grid
    /// `x_j = -π + 2πj/nx`, `t_m = -π + 2πm/nt`.
    pub fn evaluate_on_grid(&self, nx: usize, nt: usize) -> Result<GridValues> {
        if !self.real {
            return Err(Error::NonRealField);
        }
        Ok(self.evaluate_on_grid_unchecked(nx, nt))
    }

    /// Grid sampling without the reality-flag gate; imaginary parts are
    /// discarded (callers own the guarantee).
    pub fn evaluate_on_grid_unchecked(&self, nx: usize, nt: usize) -> GridValues {
        assert!(nx >= 1 && nt >= 1, "grid must have at least one point per axis");
        let mut data = vec![0.0; nx * nt];
        // Per-mode separable tables keep this O(modes * (nx + nt) + modes * nx * nt)
        // with small constants.
        for (&(p, q), &c) in &self.coeffs {
            let spatial: Vec<f64> = (0..nx)
                .map(|j| {
                    let x = grid_x(j, nx);
                    match self.parity {
                        Parity::EvenCos => (p as f64 * x).cos(),
                        Parity::OddSin => (p as f64 * x).sin(),
                    }
                })
                .collect();
            let temporal: Vec<C64> = (0..nt)
                .map(|m| C64::from_polar(1.0, q as f64 * grid_t(m, nt)))
                .collect();
            for (m, tv) in temporal.iter().enumerate() {
                let row = &mut data[m * nx..(m + 1) * nx];
                let ct = c * tv;
                for (j, sv) in spatial.iter().enumerate() {
                    row[j] += (ct * sv).re;
                }
            }
        }
        GridValues { nx, nt, data }
    }
}

fn add_sin_term(out: &mut FourierField, p: u32, q: i64, c: C64) {
    if p == 0 {
        return; // sin(0 x) vanishes
    }
    out.add_to_mode(p, q, c).expect("p >= 1");
}

fn add_sin_signed(out: &mut FourierField, p: i64, q: i64, c: C64) {
    // sin(-k x) = -sin(k x)
    if p > 0 {
        add_sin_term(out, p as u32, q, c);
    } else if p < 0 {
        add_sin_term(out, (-p) as u32, q, -c);
    }
}

/// x coordinate of grid column `j` out of `nx`.
pub fn grid_x(j: usize, nx: usize) -> f64 {
    -PI + 2.0 * PI * j as f64 / nx as f64
}

/// t coordinate of grid row `m` out of `nt`.
pub fn grid_t(m: usize, nt: usize) -> f64 {
    -PI + 2.0 * PI * m as f64 / nt as f64
}

/// Real samples on the uniform space-time grid, row-major in time.
#[derive(Debug, Clone)]
pub struct GridValues {
    /// Spatial points.
    pub nx: usize,
    /// Temporal points.
    pub nt: usize,
    /// `data[m * nx + j] = f(x_j, t_m)`.
    pub data: Vec<f64>,
}

impl GridValues {
    /// Value at column `j`, row `m`.
    pub fn get(&self, j: usize, m: usize) -> f64 {
        self.data[m * self.nx + j]
    }

    /// Discrete L² norm with cell measure `(2π/nx)(2π/nt)`.
    ///
    /// For a band-limited field sampled above Nyquist this equals the
    /// continuous L² norm exactly.
    pub fn l2(&self) -> f64 {
        let cell = (2.0 * PI / self.nx as f64) * (2.0 * PI / self.nt as f64);
        (self.data.iter().map(|v| v * v).sum::<f64>() * cell).sqrt()
    }

    /// Max-norm over the grid.
    pub fn linf(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Pointwise combination of two grids of identical shape.
    pub fn zip_with(&self, other: &GridValues, f: impl Fn(f64, f64) -> f64) -> GridValues {
        assert_eq!((self.nx, self.nt), (other.nx, other.nt));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        GridValues { nx: self.nx, nt: self.nt, data }
    }

    /// Scale all samples.
    pub fn scale(&self, s: f64) -> GridValues {
        GridValues { nx: self.nx, nt: self.nt, data: self.data.iter().map(|v| v * s).collect() }
    }
}

/// The fundamental state object: `U = (eta, u)` with even `eta`, odd `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldPair {
    /// Surface component, even in x.
    pub eta: FourierField,
    /// Velocity component, odd in x.
    pub u: FourierField,
}

impl FieldPair {
    /// Pair of zero fields.
    pub fn zero() -> Self {
        FieldPair { eta: FourierField::zero(Parity::EvenCos), u: FourierField::zero(Parity::OddSin) }
    }

    /// Build from components, enforcing the parity contract.
    pub fn new(eta: FourierField, u: FourierField) -> Result<Self> {
        if eta.parity() != Parity::EvenCos || u.parity() != Parity::OddSin {
            return Err(Error::InvalidParams(
                "field pair requires (even, odd) component parities".into(),
            ));
        }
        Ok(FieldPair { eta, u })
    }

    /// Componentwise sum.
    pub fn add(&self, other: &FieldPair) -> FieldPair {
        FieldPair { eta: self.eta.add(&other.eta), u: self.u.add(&other.u) }
    }

    /// `self - other`.
    pub fn sub(&self, other: &FieldPair) -> FieldPair {
        FieldPair { eta: self.eta.sub(&other.eta), u: self.u.sub(&other.u) }
    }

    /// Componentwise complex scaling.
    pub fn scale(&self, factor: C64) -> FieldPair {
        FieldPair { eta: self.eta.scale(factor), u: self.u.scale(factor) }
    }

    /// Both components zero.
    pub fn is_zero_pair(&self) -> bool {
        self.eta.is_zero_field() && self.u.is_zero_field()
    }

    /// Both components real-flagged.
    pub fn is_real(&self) -> bool {
        self.eta.is_real() && self.u.is_real()
    }

    /// Largest spatial index across components.
    pub fn max_p(&self) -> u32 {
        self.eta.max_p().max(self.u.max_p())
    }

    /// Largest |q| across components.
    pub fn max_q(&self) -> i64 {
        self.eta.max_q().max(self.u.max_q())
    }

    /// `sqrt(Re<F,F>)` in the Hermitian product below.
    pub fn l2_norm(&self) -> f64 {
        inner_product(self, self).re.max(0.0).sqrt()
    }

    /// Sobolev norm of index `k` over both components.
    pub fn sobolev_norm(&self, k: u32) -> f64 {
        self.eta
            .sobolev_norm(k)
            .hypot(self.u.sobolev_norm(k))
    }

    /// Membership test for the zero-x-mean invariant subspace:
    /// `eta` has no `(0, q)` mode with `q != 0`.
    pub fn in_zero_mean_subspace(&self) -> bool {
        self.eta.iter().all(|(&(p, q), _)| p != 0 || q == 0)
    }
}

/// Hermitian scalar product `<F,G> = ∫∫ (F₁ conj(G₁) + F₂ conj(G₂)) dx dt`
/// over `[-π, π]²`, evaluated exactly from coefficients by orthogonality.
///
/// Basis weights: `4π²` for the `p = 0` cosine mode, `2π²` otherwise.
pub fn inner_product(f: &FieldPair, g: &FieldPair) -> C64 {
    field_inner(&f.eta, &g.eta) + field_inner(&f.u, &g.u)
}

fn field_inner(f: &FourierField, g: &FourierField) -> C64 {
    debug_assert_eq!(f.parity(), g.parity());
    // Iterate the sparser side; missing partners contribute zero.
    let small = if f.mode_count() <= g.mode_count() { f } else { g };
    let mut acc = C64::zero();
    for (&(p, q), _) in small.iter() {
        let weight = if p == 0 { 4.0 * PI * PI } else { 2.0 * PI * PI };
        acc += f.coeff(p, q) * g.coeff(p, q).conj() * weight;
    }
    acc
}

/// Coefficient dump of a field pair: CSV rows `parity,p,q,re,im`,
/// even rows first, each block sorted by `(p, q)`.
pub fn dump_csv(pair: &FieldPair) -> String {
    let mut out = String::from("parity,p,q,re,im\n");
    for field in [&pair.eta, &pair.u] {
        for (&(p, q), c) in field.iter() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                field.parity().label(),
                p,
                q,
                crate::numeric::fmt_f64_17(c.re),
                crate::numeric::fmt_f64_17(c.im),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn even(entries: &[((u32, i64), (f64, f64))]) -> FourierField {
        FourierField::from_coeffs(
            Parity::EvenCos,
            entries.iter().map(|&(k, (re, im))| (k, C64::new(re, im))),
            false,
        )
        .unwrap()
    }

    fn odd(entries: &[((u32, i64), (f64, f64))]) -> FourierField {
        FourierField::from_coeffs(
            Parity::OddSin,
            entries.iter().map(|&(k, (re, im))| (k, C64::new(re, im))),
            false,
        )
        .unwrap()
    }

    #[test]
    fn pi0_keeps_only_x_average() {
        let constant = even(&[((0, 0), (1.0, 0.0))]);
        assert_eq!(constant.pi0(), constant);

        let cos_x = even(&[((1, 1), (1.0, 0.0))]);
        assert!(cos_x.pi0().is_zero_field());

        let mixed = even(&[((0, 2), (3.0, 0.0)), ((2, 1), (5.0, 0.0))]);
        let projected = mixed.pi0();
        assert_eq!(projected.coeff(0, 2), C64::new(3.0, 0.0));
        assert_eq!(projected.mode_count(), 1);

        // pi0 is idempotent
        assert_eq!(mixed.pi0().pi0(), mixed.pi0());
    }

    #[test]
    fn dx_inverse_basics() {
        // cos(px) -> sin(px)/p
        let f = even(&[((3, 0), (1.0, 0.0))]);
        let g = f.dx_inverse();
        assert_eq!(g.parity(), Parity::OddSin);
        assert!((g.coeff(3, 0) - C64::new(1.0 / 3.0, 0.0)).norm() < 1e-15);

        // constants vanish
        let c = even(&[((0, 0), (2.0, 0.0))]);
        assert!(c.dx_inverse().is_zero_field());

        // sin(px) -> -cos(px)/p
        let s = odd(&[((2, 0), (1.0, 0.0))]);
        let t = s.dx_inverse();
        assert!((t.coeff(2, 0) - C64::new(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn dx_of_dx_inverse_is_mean_free_identity() {
        let f = even(&[((0, 1), (1.0, 2.0)), ((1, -1), (0.5, 0.0)), ((4, 3), (0.0, -2.0))]);
        let roundtrip = f.dx_inverse().diff(1, 0);
        let expected = f.minus_pi0();
        let diff = roundtrip.sub(&expected);
        assert!(diff.sobolev_norm(0) < 1e-14);
    }

    #[test]
    fn diff_factors() {
        // d/dt of e^{iqt} cos(px): factor iq
        let f = even(&[((1, 1), (1.0, 0.0))]);
        assert!((f.diff(0, 1).coeff(1, 1) - C64::new(0.0, 1.0)).norm() < 1e-15);

        // d²/dx² of cos(px): -p²
        let g = even(&[((3, 0), (1.0, 0.0))]);
        assert!((g.diff(2, 0).coeff(3, 0) - C64::new(-9.0, 0.0)).norm() < 1e-15);

        // d²/dxdt of cos(px)e^{iqt} -> sin basis, amplitude -p * iq
        let h = even(&[((2, 5), (1.0, 0.0))]);
        let d = h.diff(1, 1);
        assert_eq!(d.parity(), Parity::OddSin);
        assert!((d.coeff(2, 5) - C64::new(0.0, -10.0)).norm() < 1e-15);
    }

    #[test]
    fn multiply_product_to_sum() {
        // sin(x) * sin(x) = 1/2 - cos(2x)/2
        let s = odd(&[((1, 0), (1.0, 0.0))]);
        let prod = s.multiply(&s);
        assert_eq!(prod.parity(), Parity::EvenCos);
        assert!((prod.coeff(0, 0) - C64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((prod.coeff(2, 0) - C64::new(-0.5, 0.0)).norm() < 1e-15);

        // f * 0 = 0
        let zero = FourierField::zero(Parity::OddSin);
        assert!(s.multiply(&zero).is_zero_field());

        // cos(x)e^{it} squared = (1/2 + cos(2x)/2) e^{2it}
        let c = even(&[((1, 1), (1.0, 0.0))]);
        let sq = c.multiply(&c);
        assert!((sq.coeff(0, 2) - C64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((sq.coeff(2, 2) - C64::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn grid_evaluation_examples() {
        let zero = FieldPair::zero();
        let grid = zero.eta.evaluate_on_grid(4, 2).unwrap();
        assert!(grid.data.iter().all(|&v| v == 0.0));

        // cos(x) at x = -π, -π/2, 0, π/2
        let mut cos_x = even(&[((1, 0), (1.0, 0.0))]);
        cos_x.set_real_flag(true);
        let g = cos_x.evaluate_on_grid(4, 1).unwrap();
        let expect = [-1.0, 0.0, 1.0, 0.0];
        for (j, e) in expect.iter().enumerate() {
            assert!((g.get(j, 0) - e).abs() < 1e-14, "j={j}");
        }

        // conjugate pair sums to 2 cos t cos x
        let f = FourierField::from_coeffs(
            Parity::EvenCos,
            [((1, 1), C64::new(1.0, 0.0)), ((1, -1), C64::new(1.0, 0.0))],
            true,
        )
        .unwrap();
        let g = f.evaluate_on_grid(8, 8).unwrap();
        for m in 0..8 {
            for j in 0..8 {
                let expect = 2.0 * grid_t(m, 8).cos() * grid_x(j, 8).cos();
                assert!((g.get(j, m) - expect).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn grid_rejects_non_real() {
        let f = even(&[((1, 1), (1.0, 0.0))]); // no conjugate partner
        assert!(matches!(f.evaluate_on_grid(4, 4), Err(Error::NonRealField)));
    }

    #[test]
    fn odd_zero_mode_rejected() {
        let bad = FourierField::from_coeffs(Parity::OddSin, [((0, 1), C64::new(1.0, 0.0))], false);
        assert!(matches!(bad, Err(Error::OddZeroMode { q: 1 })));
    }

    #[test]
    fn inner_product_examples() {
        // <ζ0, ζ0> = 4π² for ζ0 = (1, 0)
        let zeta = FieldPair::new(
            even(&[((0, 0), (1.0, 0.0))]),
            FourierField::zero(Parity::OddSin),
        )
        .unwrap();
        let ip = inner_product(&zeta, &zeta);
        assert!((ip.re - 4.0 * PI * PI).abs() < 1e-12);
        assert!(ip.im.abs() < 1e-15);
    }

    #[test]
    fn sobolev_norm_weighting() {
        let f = even(&[((1, 2), (3.0, 0.0))]);
        // (1 + 1 + 4)^2 * 9 = 324
        assert!((f.sobolev_norm(2) - 18.0).abs() < 1e-12);
    }

    #[test]
    fn dump_csv_layout() {
        let pair = FieldPair::new(
            even(&[((0, 0), (1.0, 0.0))]),
            odd(&[((1, 1), (0.0, -0.5))]),
        )
        .unwrap();
        let text = dump_csv(&pair);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("parity,p,q,re,im"));
        assert!(lines.next().unwrap().starts_with("even,0,0,"));
        assert!(lines.next().unwrap().starts_with("odd,1,1,"));
    }
}

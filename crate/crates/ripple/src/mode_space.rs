//! Truncated Fourier representation of real periodic fields.
//!
//! A real `L`-periodic field `u(x) = sum_n u_n exp(i 2 pi n x / L)` is stored
//! through the modes `n = 0..=N` of its truncated series; the negative half
//! is implied by the reality condition `u_{-n} = conj(u_n)` and never stored,
//! so Hermitian symmetry cannot be violated by construction. The zero mode
//! (the spatial mean) is kept real.
//!
//! Two weighted tail sums drive everything downstream:
//!
//! * `S2 = sum_{n != 0} n^2 |u_n|^2`, the conserved quantity of the evolution
//!   and the subject of the admissibility gate `S2 < 1/72`;
//! * `S0 = sum_{n != 0} |u_n|^2`, the right-hand side of the zero-mode
//!   constraint `u0 - 3 u0^2 = 3 S0`.
//!
//! The norm `|v| = (|v_0|^2 + S2)^(1/2)` is the metric in which the
//! fixed-point iteration contracts.
//!
//! Products of fields become discrete convolutions of mode vectors. The fast
//! path zero-pads the full (2N+1)-long spectrum to at least 4N+1 before
//! transforming, so no circular aliasing ever reaches the retained modes and
//! the result agrees with the direct quadratic-time sum to rounding; both
//! paths are kept public so they can check each other. Products are
//! Galerkin-truncated back to `|n| <= N`.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::ops::{Add, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::Error;
use crate::kahan::KahanSum;
use crate::Result;

thread_local! {
    // rustfft caches plans per (length, direction); one planner per thread
    // keeps repeated convolutions allocation-light and deterministic.
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize) -> (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>) {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        (p.plan_fft_forward(len), p.plan_fft_inverse(len))
    })
}

/// Tail sums of a mode vector over the full implied index set `n != 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEnergy {
    /// `S2 = sum_{n != 0} n^2 |v_n|^2` (each stored term counted twice).
    pub s2: f64,
    /// `S0 = sum_{n != 0} |v_n|^2`; always `<= s2` since `n^2 >= 1`.
    pub s0: f64,
}

/// Hermitian-symmetric truncated Fourier coefficients of a real `L`-periodic
/// field. Stores `c_n` for `n = 0..=N` only; `c_{-n} = conj(c_n)` is implied.
///
/// Invariants, enforced on construction:
/// * period `L > 0` and finite;
/// * truncation order `N >= 1`;
/// * `c_0` purely real;
/// * every stored value finite.
///
/// ```
/// use num_complex::Complex64;
/// use ripple::ModeVector;
///
/// let v = ModeVector::from_modes(2.0 * std::f64::consts::PI, 4, &[(1, Complex64::new(0.5, 0.0))])?;
/// assert_eq!(v.h_norm(), 0.5_f64.sqrt());
/// # Ok::<(), ripple::Error>(())
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct ModeVector {
    period: f64,
    coeffs: Vec<Complex64>,
}

impl ModeVector {
    /// Builds a mode vector from the stored half-spectrum `coeffs[n] = c_n`,
    /// `n = 0..=N`, checking every invariant.
    pub fn new(period: f64, coeffs: Vec<Complex64>) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidModeData(format!(
                "period must be positive and finite, got {period}"
            )));
        }
        if coeffs.len() < 2 {
            return Err(Error::InvalidModeData(format!(
                "need modes 0..=N with N >= 1, got {} coefficients",
                coeffs.len()
            )));
        }
        if coeffs[0].im != 0.0 {
            return Err(Error::InvalidModeData(format!(
                "zero mode must be real, got imaginary part {}",
                coeffs[0].im
            )));
        }
        if let Some(bad) = coeffs
            .iter()
            .position(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::InvalidModeData(format!(
                "non-finite coefficient at mode {bad}"
            )));
        }
        Ok(Self { period, coeffs })
    }

    /// All modes zero.
    pub fn zeros(period: f64, n_trunc: usize) -> Result<Self> {
        Self::new(period, vec![Complex64::ZERO; n_trunc + 1])
    }

    /// The constant field `u(x) = mean`.
    pub fn constant(period: f64, n_trunc: usize, mean: f64) -> Result<Self> {
        let mut v = Self::zeros(period, n_trunc)?;
        v.coeffs[0] = Complex64::new(mean, 0.0);
        v.check_finite_mean(mean)?;
        Ok(v)
    }

    /// Builds a vector with the given nonzero modes (`1 <= n <= N`, indices
    /// distinct) and zero mean.
    pub fn from_modes(period: f64, n_trunc: usize, modes: &[(usize, Complex64)]) -> Result<Self> {
        let mut v = Self::zeros(period, n_trunc)?;
        for &(n, c) in modes {
            if n == 0 || n > n_trunc {
                return Err(Error::InvalidModeData(format!(
                    "mode index {n} outside 1..={n_trunc}"
                )));
            }
            if v.coeffs[n] != Complex64::ZERO {
                return Err(Error::InvalidModeData(format!("duplicate mode index {n}")));
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::InvalidModeData(format!(
                    "non-finite value at mode {n}"
                )));
            }
            v.coeffs[n] = c;
        }
        Ok(v)
    }

    fn check_finite_mean(&self, mean: f64) -> Result<()> {
        if !mean.is_finite() {
            return Err(Error::InvalidModeData(format!("non-finite mean {mean}")));
        }
        Ok(())
    }

    /// Internal constructor for computed spectra: forces the zero mode real
    /// (its computed imaginary part is rounding residue of a symmetric sum).
    pub(crate) fn assemble(period: f64, mut coeffs: Vec<Complex64>) -> Self {
        debug_assert!(coeffs.len() >= 2);
        debug_assert!(
            coeffs[0].im.abs() <= 1e-10 * (1.0 + coeffs[0].re.abs()),
            "computed zero mode has non-negligible imaginary part {}",
            coeffs[0].im
        );
        coeffs[0] = Complex64::new(coeffs[0].re, 0.0);
        Self { period, coeffs }
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Truncation order `N` (modes `0..=N` stored).
    pub fn n_trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Stored half-spectrum, `coeffs()[n] = c_n`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient at a signed index, resolving `c_{-n} = conj(c_n)`;
    /// zero outside the truncation.
    pub fn coeff_signed(&self, n: i64) -> Complex64 {
        let a = n.unsigned_abs() as usize;
        if a > self.n_trunc() {
            Complex64::ZERO
        } else if n >= 0 {
            self.coeffs[a]
        } else {
            self.coeffs[a].conj()
        }
    }

    /// The spatial mean `c_0` (real by invariant).
    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    /// Copy with the zero mode replaced.
    pub fn with_mean(&self, mean: f64) -> Self {
        let mut v = self.clone();
        v.coeffs[0] = Complex64::new(mean, 0.0);
        v
    }

    /// Copy truncated or zero-padded to a new order (used to compare runs at
    /// different resolutions).
    pub fn resized(&self, n_trunc: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; n_trunc + 1];
        let keep = n_trunc.min(self.n_trunc());
        coeffs[..=keep].copy_from_slice(&self.coeffs[..=keep]);
        Self {
            period: self.period,
            coeffs,
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.n_trunc() != other.n_trunc() || self.period != other.period {
            return Err(Error::DimensionMismatch {
                n_left: self.n_trunc(),
                l_left: self.period,
                n_right: other.n_trunc(),
                l_right: other.period,
            });
        }
        Ok(())
    }

    /// Full spectrum over `-N..=N` as a dense array, `out[i] = c_{i - N}`.
    fn full_coeffs(&self) -> Vec<Complex64> {
        let n = self.n_trunc();
        let mut out = Vec::with_capacity(2 * n + 1);
        for i in 0..=(2 * n) {
            out.push(self.coeff_signed(i as i64 - n as i64));
        }
        out
    }

    /// The weighted sequence norm `(|v_0|^2 + sum_{n != 0} n^2 |v_n|^2)^(1/2)`
    /// over the full implied index set (each stored tail term doubled).
    ///
    /// Shares the tail accumulation with [`tail_energy`](Self::tail_energy),
    /// so `h_norm() == (mean()^2 + tail_energy().s2).sqrt()` holds bitwise.
    pub fn h_norm(&self) -> f64 {
        let te = self.tail_energy();
        (self.coeffs[0].norm_sqr() + te.s2).sqrt()
    }

    /// Tail sums `(S2, S0)` over the implied set `n != 0`.
    ///
    /// Compensated accumulation; the factor 2 for the implied negative modes
    /// is applied after the reduction (exact).
    pub fn tail_energy(&self) -> TailEnergy {
        let mut s2 = KahanSum::new();
        let mut s0 = KahanSum::new();
        for (n, c) in self.coeffs.iter().enumerate().skip(1) {
            let sq = c.norm_sqr();
            s0.add(sq);
            s2.add((n * n) as f64 * sq);
        }
        TailEnergy {
            s2: 2.0 * s2.value(),
            s0: 2.0 * s0.value(),
        }
    }

    /// H-norm of the difference `self - other`, without allocating.
    ///
    /// Panics when the shapes differ (callers compare states of one grid).
    pub fn h_distance(&self, other: &Self) -> f64 {
        self.check_same_shape(other)
            .expect("h_distance on mismatched shapes");
        let mut acc = KahanSum::new();
        for (n, (a, b)) in self.coeffs.iter().zip(&other.coeffs).enumerate() {
            let d = (a - b).norm_sqr();
            let w = if n == 0 { 1.0 } else { 2.0 * (n * n) as f64 };
            acc.add(w * d);
        }
        acc.value().sqrt()
    }

    /// Scale every coefficient by a real factor.
    pub fn scale(&self, factor: f64) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * factor).collect();
        Self {
            period: self.period,
            coeffs,
        }
    }

    /// Galerkin-truncated product: `p_n = sum_{|k| <= N, |n-k| <= N} v_k w_{n-k}`
    /// for `|n| <= N`; modes up to `2N` generated by the product are
    /// discarded. Fast path: both full spectra are zero-padded to a
    /// power-of-two length `>= 4N+1` and multiplied pointwise in transform
    /// space, which reproduces the direct sum to rounding because the padded
    /// linear convolution has no wrap-around.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let n = self.n_trunc();
        let padded = (4 * n + 1).next_power_of_two();
        let (fft, ifft) = plan(padded);

        let mut a = vec![Complex64::ZERO; padded];
        a[..2 * n + 1].copy_from_slice(&self.full_coeffs());
        fft.process(&mut a);

        let mut b;
        if std::ptr::eq(self, other) {
            b = a.clone();
        } else {
            b = vec![Complex64::ZERO; padded];
            b[..2 * n + 1].copy_from_slice(&other.full_coeffs());
            fft.process(&mut b);
        }

        for (x, y) in a.iter_mut().zip(&b) {
            *x *= y;
        }
        ifft.process(&mut a);

        // Product coefficient m sits at buffer index m + 2N; keep 0..=N.
        let scale = 1.0 / padded as f64;
        let coeffs: Vec<Complex64> = (0..=n).map(|m| a[m + 2 * n] * scale).collect();
        Ok(Self::assemble(self.period, coeffs))
    }

    /// Reference convolution by the direct `O(N^2)` sum over the full
    /// implied index set. Same contract as [`convolve`](Self::convolve);
    /// kept as the independent check of the fast path.
    pub fn convolve_direct(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let nt = self.n_trunc() as i64;
        let a = self.full_coeffs();
        let b = other.full_coeffs();
        let idx = |k: i64| (k + nt) as usize;
        let coeffs: Vec<Complex64> = (0..=nt)
            .map(|m| {
                let mut acc = Complex64::ZERO;
                for k in (m - nt)..=nt {
                    acc += a[idx(k)] * b[idx(m - k)];
                }
                acc
            })
            .collect();
        Ok(Self::assemble(self.period, coeffs))
    }

    /// Coefficients of the x-derivative: `d_n = i (2 pi n / L) c_n`.
    /// Still Hermitian; the zero mode vanishes.
    pub fn derivative(&self) -> Self {
        let w = 2.0 * PI / self.period;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| Complex64::new(0.0, n as f64 * w) * c)
            .collect();
        Self {
            period: self.period,
            coeffs,
        }
    }

    /// Samples the truncated series on the uniform grid `x_j = j L / P`,
    /// `j = 0..P`. Requires `P >= 2N+1` so every retained mode is resolved.
    ///
    /// The full Hermitian spectrum is placed in an inverse-transform buffer,
    /// so the sum is real up to rounding; the imaginary residue is checked
    /// (debug) and discarded.
    pub fn synthesize(&self, num_points: usize) -> Result<FieldSamples> {
        let n = self.n_trunc();
        if num_points < 2 * n + 1 {
            return Err(Error::GridTooSmall {
                points: num_points,
                min_points: 2 * n + 1,
            });
        }
        let mut buf = vec![Complex64::ZERO; num_points];
        buf[0] = self.coeffs[0];
        for k in 1..=n {
            buf[k] = self.coeffs[k];
            buf[num_points - k] = self.coeffs[k].conj();
        }
        let (_, ifft) = plan(num_points);
        // Unscaled inverse: out_j = sum_k buf_k exp(+2 pi i j k / P), exactly
        // the series evaluated at x_j.
        ifft.process(&mut buf);

        if cfg!(debug_assertions) {
            let residue = buf.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
            let scale: f64 = self.coeffs.iter().map(|c| c.norm()).sum::<f64>().max(1.0);
            debug_assert!(
                residue <= 1e-12 * scale * num_points as f64,
                "synthesis imaginary residue {residue} too large"
            );
        }

        let dx = self.period / num_points as f64;
        Ok(FieldSamples {
            xs: (0..num_points).map(|j| j as f64 * dx).collect(),
            values: buf.iter().map(|z| z.re).collect(),
        })
    }

    /// Samples the x-derivative of the truncated series; same grid and
    /// preconditions as [`synthesize`](Self::synthesize).
    pub fn synthesize_derivative(&self, num_points: usize) -> Result<FieldSamples> {
        self.derivative().synthesize(num_points)
    }
}

impl Add<&ModeVector> for &ModeVector {
    type Output = ModeVector;

    fn add(self, rhs: &ModeVector) -> ModeVector {
        self.check_same_shape(rhs)
            .expect("adding mismatched mode vectors");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        ModeVector {
            period: self.period,
            coeffs,
        }
    }
}

impl Sub<&ModeVector> for &ModeVector {
    type Output = ModeVector;

    fn sub(self, rhs: &ModeVector) -> ModeVector {
        self.check_same_shape(rhs)
            .expect("subtracting mismatched mode vectors");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        ModeVector {
            period: self.period,
            coeffs,
        }
    }
}

/// Real samples of a field on a uniform grid over `[0, L)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSamples {
    xs: Vec<f64>,
    values: Vec<f64>,
}

impl FieldSamples {
    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Grid spacing `L / P`.
    pub fn spacing(&self) -> f64 {
        self.xs[1] - self.xs[0]
    }

    /// Compensated mean of the samples. On the uniform periodic grid this is
    /// the trapezoid quadrature of `(1/L) \int_0^L f dx`, exact (to rounding)
    /// for trigonometric polynomials of degree below the point count.
    pub fn mean(&self) -> f64 {
        crate::kahan::sum(self.values.iter().copied()) / self.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const TAU: f64 = 2.0 * PI;

    pub(crate) fn random_hermitian(
        rng: &mut impl Rng,
        period: f64,
        n_trunc: usize,
        amp: f64,
    ) -> ModeVector {
        let mut coeffs = vec![Complex64::ZERO; n_trunc + 1];
        coeffs[0] = Complex64::new(rng.gen_range(-amp..amp), 0.0);
        for c in coeffs.iter_mut().skip(1) {
            *c = Complex64::new(rng.gen_range(-amp..amp), rng.gen_range(-amp..amp));
        }
        ModeVector::new(period, coeffs).unwrap()
    }

    #[test]
    fn h_norm_examples() {
        assert_eq!(ModeVector::zeros(TAU, 4).unwrap().h_norm(), 0.0);
        assert_eq!(ModeVector::constant(TAU, 4, 1.0).unwrap().h_norm(), 1.0);
        let v = ModeVector::from_modes(TAU, 1, &[(1, Complex64::new(0.5, 0.0))]).unwrap();
        assert_relative_eq!(v.h_norm(), 0.5_f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn h_norm_consistent_with_tail_energy_bitwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let v = random_hermitian(&mut rng, TAU, 16, 0.3);
            let te = v.tail_energy();
            assert_eq!(v.h_norm(), (v.mean() * v.mean() + te.s2).sqrt());
        }
    }

    #[test]
    fn tail_energy_examples() {
        let z = ModeVector::zeros(TAU, 3).unwrap().tail_energy();
        assert_eq!((z.s2, z.s0), (0.0, 0.0));

        // 2 * fl(1/12)^2 == fl(1/72) exactly in IEEE f64.
        let v = ModeVector::from_modes(TAU, 1, &[(1, Complex64::new(1.0 / 12.0, 0.0))]).unwrap();
        let te = v.tail_energy();
        assert_eq!(te.s2, 1.0 / 72.0);
        assert_eq!(te.s0, 1.0 / 72.0);

        let v = ModeVector::from_modes(TAU, 2, &[(2, Complex64::new(1.0 / 12.0, 0.0))]).unwrap();
        let te = v.tail_energy();
        assert_eq!(te.s2, 1.0 / 18.0);
        assert_eq!(te.s0, 1.0 / 72.0);
        assert!(te.s0 <= te.s2);
    }

    #[test]
    fn construction_rejects_invalid_data() {
        assert!(ModeVector::new(0.0, vec![Complex64::ZERO; 3]).is_err());
        assert!(ModeVector::new(TAU, vec![Complex64::ZERO; 1]).is_err());
        assert!(ModeVector::new(TAU, vec![Complex64::new(0.0, 0.1), Complex64::ZERO]).is_err());
        assert!(
            ModeVector::new(TAU, vec![Complex64::ZERO, Complex64::new(f64::NAN, 0.0)]).is_err()
        );
        assert!(ModeVector::from_modes(TAU, 2, &[(3, Complex64::ZERO)]).is_err());
        assert!(ModeVector::from_modes(TAU, 2, &[(0, Complex64::ZERO)]).is_err());
        assert!(ModeVector::from_modes(
            TAU,
            2,
            &[(1, Complex64::new(1.0, 0.0)), (1, Complex64::new(2.0, 0.0))]
        )
        .is_err());
    }

    #[test]
    fn convolve_identity_element() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let delta = ModeVector::constant(TAU, 8, 1.0).unwrap();
        let w = random_hermitian(&mut rng, TAU, 8, 0.4);

        let direct = delta.convolve_direct(&w).unwrap();
        assert_eq!(direct, w);

        let fast = delta.convolve(&w).unwrap();
        for (a, b) in fast.coeffs().iter().zip(w.coeffs()) {
            assert!((a - b).norm() <= 1e-14);
        }
    }

    #[test]
    fn convolve_hand_expansion_of_two_cosines() {
        // c_1 = 1 means u = e^{i x} + e^{-i x} = 2 cos x; squared:
        // 2 + e^{2 i x} + e^{-2 i x}, so p_0 = 2, p_2 = 1.
        let v = ModeVector::from_modes(TAU, 3, &[(1, Complex64::new(1.0, 0.0))]).unwrap();
        for p in [v.convolve_direct(&v).unwrap(), v.convolve(&v).unwrap()] {
            assert!((p.coeffs()[0] - Complex64::new(2.0, 0.0)).norm() <= 1e-14);
            assert!(p.coeffs()[1].norm() <= 1e-14);
            assert!((p.coeffs()[2] - Complex64::new(1.0, 0.0)).norm() <= 1e-14);
            assert!(p.coeffs()[3].norm() <= 1e-14);
        }
    }

    #[test]
    fn convolve_fast_matches_direct_at_n_256() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let v = random_hermitian(&mut rng, TAU, 256, 0.5);
        let w = random_hermitian(&mut rng, TAU, 256, 0.5);
        let fast = v.convolve(&w).unwrap();
        let direct = v.convolve_direct(&w).unwrap();
        let max_diff = fast
            .coeffs()
            .iter()
            .zip(direct.coeffs())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(max_diff <= 1e-12, "max diff {max_diff}");
    }

    #[test]
    fn convolve_rejects_mismatched_shapes() {
        let v = ModeVector::zeros(TAU, 4).unwrap();
        let w = ModeVector::zeros(TAU, 5).unwrap();
        assert!(matches!(
            v.convolve(&w),
            Err(Error::DimensionMismatch { .. })
        ));
        let w = ModeVector::zeros(1.0, 4).unwrap();
        assert!(matches!(
            v.convolve_direct(&w),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn synthesize_constant_and_cosine() {
        let c = ModeVector::constant(TAU, 4, 0.75).unwrap();
        let f = c.synthesize(16).unwrap();
        for &v in f.values() {
            assert!((v - 0.75).abs() <= 1e-14);
        }

        // c_1 = 1/2 synthesizes cos(x) on [0, 2 pi).
        let v = ModeVector::from_modes(TAU, 4, &[(1, Complex64::new(0.5, 0.0))]).unwrap();
        let f = v.synthesize(32).unwrap();
        for (x, u) in f.xs().iter().zip(f.values()) {
            assert!((u - x.cos()).abs() <= 1e-12);
        }
    }

    #[test]
    fn synthesize_rejects_coarse_grids() {
        let v = ModeVector::zeros(TAU, 8).unwrap();
        assert!(matches!(
            v.synthesize(16),
            Err(Error::GridTooSmall {
                points: 16,
                min_points: 17
            })
        ));
        assert!(v.synthesize(17).is_ok());
    }

    #[test]
    fn synthesize_derivative_examples() {
        let c = ModeVector::constant(TAU, 4, 0.3).unwrap();
        for &v in c.synthesize_derivative(16).unwrap().values() {
            assert!(v.abs() <= 1e-14);
        }

        let v = ModeVector::from_modes(TAU, 4, &[(1, Complex64::new(0.5, 0.0))]).unwrap();
        let f = v.synthesize_derivative(32).unwrap();
        for (x, du) in f.xs().iter().zip(f.values()) {
            assert!((du + x.sin()).abs() <= 1e-12);
        }
    }

    #[test]
    fn parseval_for_derivative_quadrature_vs_modes() {
        // \int_0^L u_x^2 dx both from samples and from the spectrum.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n_trunc in [4usize, 16, 64] {
            let v = random_hermitian(&mut rng, TAU, n_trunc, 0.3);
            let points = 4 * n_trunc + 1;
            let deriv = v.synthesize_derivative(points).unwrap();
            let quad = crate::kahan::sum(deriv.values().iter().map(|u| u * u)) / points as f64
                * v.period();
            let w = 2.0 * PI / v.period();
            let spectral = v.period() * w * w * v.tail_energy().s2;
            assert_relative_eq!(quad, spectral, max_relative = 1e-10);
        }
    }

    #[test]
    fn parseval_mean_square_equals_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let v = random_hermitian(&mut rng, 3.7, 32, 0.4);
        let points = 4 * v.n_trunc() + 1;
        let f = v.synthesize(points).unwrap();
        let mean_sq = crate::kahan::sum(f.values().iter().map(|u| u * u)) / points as f64;
        let spectral = v.mean() * v.mean() + v.tail_energy().s0;
        assert_relative_eq!(mean_sq, spectral, max_relative = 1e-10);
    }

    #[test]
    fn resized_truncates_and_pads() {
        let v = ModeVector::from_modes(
            TAU,
            4,
            &[(1, Complex64::new(0.1, 0.2)), (4, Complex64::new(0.0, 0.3))],
        )
        .unwrap();
        let up = v.resized(8);
        assert_eq!(up.n_trunc(), 8);
        assert_eq!(up.coeff_signed(4), Complex64::new(0.0, 0.3));
        assert_eq!(up.coeff_signed(8), Complex64::ZERO);
        let down = v.resized(2);
        assert_eq!(down.n_trunc(), 2);
        assert_eq!(down.coeff_signed(1), Complex64::new(0.1, 0.2));
    }
}

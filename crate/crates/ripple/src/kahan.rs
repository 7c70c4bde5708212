//! Compensated accumulation for norm and quadrature reductions.
//!
//! Conservation checks compare reductions over ~1e4 samples at 1e-8 relative
//! tolerance, so the reductions themselves must not lose digits to term
//! count. A Neumaier-style compensated accumulator keeps the error of the
//! whole sum at a few ulps regardless of length, with a fixed (sequential)
//! reduction order so results are bit-reproducible.

/// Neumaier variant of Kahan summation; the compensation also covers the
/// case where the incoming term dominates the running sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compensated sum of a sequence of terms, in iteration order.
pub fn sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = KahanSum::new();
    for t in terms {
        acc.add(t);
    }
    acc.value()
}

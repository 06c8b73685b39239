//! Doppler rows through an inverse FFT.
//!
//! `Σ_t c_t e^{j2πνt/N}` is rustfft's unnormalised inverse transform of the
//! zero-padded lag product, read at bin ν for ν ≥ 0 and N + ν for ν < 0.

use std::sync::Arc;

use aflaz_core::{Complex64, DopplerEngine};
use rustfft::{Fft, FftPlanner};

#[derive(Clone)]
pub struct FftDoppler {
    n: usize,
    plan: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for FftDoppler {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FftDoppler").field("n", &self.n).finish()
    }
}

impl FftDoppler {
    pub fn new(n: usize) -> Self {
        let plan = FftPlanner::new().plan_fft_inverse(n);
        Self { n, plan }
    }

    /// All N Doppler bins of `lag`, bin k holding ν ≡ k (mod N).
    pub fn full_row(&self, lag: &[Complex64], buf: &mut Vec<Complex64>) {
        buf.clear();
        buf.extend_from_slice(lag);
        buf.resize(self.n, Complex64::new(0.0, 0.0));
        self.plan.process(buf);
    }
}

impl DopplerEngine for FftDoppler {
    fn seq_len(&self) -> usize {
        self.n
    }

    fn doppler_row(&self, lag: &[Complex64], max_doppler: usize, out: &mut [Complex64]) {
        let mut buf = Vec::with_capacity(self.n);
        self.full_row(lag, &mut buf);
        let n = self.n as i64;
        for (k, slot) in out.iter_mut().enumerate() {
            let nu = k as i64 - max_doppler as i64;
            *slot = buf[nu.rem_euclid(n) as usize];
        }
    }
}

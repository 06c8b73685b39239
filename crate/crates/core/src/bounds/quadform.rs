//! The quadratic forms wᵀLw and wᵀJ^d w.
//!
//! `l(s, t) = min(|t − s|, 2N − 1 − |t − s|)` is the cyclic lag between rows s and
//! t of the length-(2N − 1) circulant; J^d selects the pairs whose lag is N − d.
//! Both forms only depend on the lag autocorrelation `r[k] = Σ_s w_s w_{s+k}`,
//! so [`LagProfile`] computes that once and answers every d from it.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Cyclic lag between rows `s` and `t` of a (2N − 1)-circulant.
pub fn lag_distance(s: usize, t: usize, n: usize) -> usize {
    let d = s.abs_diff(t);
    d.min(2 * n - 1 - d)
}

#[derive(Debug, Clone)]
pub struct LagProfile {
    n: usize,
    r: Vec<f64>,
}

impl LagProfile {
    pub fn new(w: &[f64], n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("N must be positive"));
        }
        if w.len() > 2 * n - 1 {
            return Err(Error::DimensionMismatch {
                what: "weight vector (max 2N-1)",
                expected: 2 * n - 1,
                found: w.len(),
            });
        }
        let mut r = vec![0.0; w.len()];
        for (s, &ws) in w.iter().enumerate() {
            if ws == 0.0 {
                continue;
            }
            for (k, slot) in r.iter_mut().enumerate().take(w.len() - s) {
                *slot += ws * w[s + k];
            }
        }
        Ok(Self { n, r })
    }

    pub fn seq_len(&self) -> usize {
        self.n
    }

    /// ‖w‖².
    pub fn norm_sq(&self) -> f64 {
        self.r.first().copied().unwrap_or(0.0)
    }

    /// wᵀLw.
    pub fn l_form(&self) -> f64 {
        self.r
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &rk)| 2.0 * rk * lag_distance(0, k, self.n) as f64)
            .sum()
    }

    /// wᵀJ^d w for d ∈ [1, N].
    pub fn j_form(&self, d: usize) -> Result<f64> {
        if d == 0 || d > self.n {
            return Err(Error::param(alloc::format!(
                "last-delay index d = {d} outside [1, {}]",
                self.n
            )));
        }
        let target = self.n - d;
        Ok(self
            .r
            .iter()
            .enumerate()
            .filter(|&(k, _)| lag_distance(0, k, self.n) == target)
            .map(|(k, &rk)| if k == 0 { rk } else { 2.0 * rk })
            .sum())
    }

    /// wᵀJ^d w for every d, indexed by d (entry 0 unused and zero).
    pub fn j_forms(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.n + 1];
        for (k, &rk) in self.r.iter().enumerate() {
            let lag = lag_distance(0, k, self.n);
            out[self.n - lag] += if k == 0 { rk } else { 2.0 * rk };
        }
        out
    }
}

/// Σ_{s,t} l(s,t) w_s w_t.
pub fn l_quadform(w: &[f64], n: usize) -> Result<f64> {
    Ok(LagProfile::new(w, n)?.l_form())
}

/// Σ_{s,t : l(s,t) = N − d} w_s w_t.
pub fn jd_quadform(w: &[f64], d: usize, n: usize) -> Result<f64> {
    LagProfile::new(w, n)?.j_form(d)
}

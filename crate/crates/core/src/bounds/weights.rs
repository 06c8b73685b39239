//! Delay weight vectors w and Doppler weight vectors p.
//!
//! Both live on the probability simplex. The delay vector has Z_x entries (or
//! 2N − 1 when the LAZ spans every delay); the Doppler vector has Z_y entries.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

const SUM_TOL: f64 = 1e-12;
const CLAMP_TOL: f64 = 1e-15;
const B_NEGATIVE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum WeightFamily {
    /// Uniform over the first q entries.
    A,
    /// Chebyshev-shaped (sine) profile over the first q entries.
    B,
    /// Uniform over all 2N − 1 entries.
    C,
    Custom,
}

impl WeightFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            WeightFamily::A => "A",
            WeightFamily::B => "B",
            WeightFamily::C => "C",
            WeightFamily::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WeightVector {
    values: Vec<f64>,
    family: WeightFamily,
    q: Option<usize>,
}

fn validate_simplex(values: &mut [f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::param("weight vector must be non-empty"));
    }
    for (index, v) in values.iter_mut().enumerate() {
        if !v.is_finite() || *v < -CLAMP_TOL {
            return Err(Error::NegativeWeight { index, value: *v });
        }
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let sum: f64 = values.iter().sum();
    if (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::WeightSum { sum });
    }
    Ok(())
}

impl WeightVector {
    /// Any simplex vector.
    pub fn custom(mut values: Vec<f64>) -> Result<Self> {
        validate_simplex(&mut values)?;
        Ok(Self {
            values,
            family: WeightFamily::Custom,
            q: None,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn family(&self) -> WeightFamily {
        self.family
    }

    pub fn q(&self) -> Option<usize> {
        self.q
    }

    /// One past the last non-zero entry.
    pub fn support_len(&self) -> usize {
        self.values
            .iter()
            .rposition(|&v| v != 0.0)
            .map_or(0, |i| i + 1)
    }

    /// Same vector with trailing zeros appended up to `dim`.
    pub fn padded(&self, dim: usize) -> Result<Self> {
        if dim < self.support_len() {
            return Err(Error::DimensionMismatch {
                what: "padded weight vector",
                expected: self.support_len(),
                found: dim,
            });
        }
        let mut values = self.values.clone();
        values.resize(dim, 0.0);
        Ok(Self {
            values,
            ..self.clone()
        })
    }
}

/// Uniform 1/q on the first q of `dim` entries.
pub fn weights_a(q: usize, dim: usize) -> Result<WeightVector> {
    if q == 0 || q > dim {
        return Err(Error::param(alloc::format!("q = {q} outside [1, {dim}]")));
    }
    let mut values = vec![0.0; dim];
    values[..q].fill(1.0 / q as f64);
    Ok(WeightVector {
        values,
        family: WeightFamily::A,
        q: Some(q),
    })
}

/// γ = arccos(1 − MZ_y/N²), evaluated as 2·asin(√(MZ_y/2)/N).
pub fn chebyshev_angle(n: usize, m: usize, z_y: usize) -> Result<f64> {
    let mz = (m * z_y) as f64;
    let nn = n as f64;
    if n == 0 || m == 0 || z_y == 0 || (m * z_y) as u128 > (n as u128) * (n as u128) {
        return Err(Error::param(alloc::format!(
            "gamma undefined: need 1 <= M*Zy <= N^2 (M*Zy = {}, N = {n})",
            m * z_y
        )));
    }
    Ok(2.0 * ((mz / 2.0).sqrt() / nn).asin())
}

/// ⌊π/γ⌋ + 1, the q minimising the Chebyshev-family quadratic form.
pub fn chebyshev_q_opt(n: usize, m: usize, z_y: usize) -> Result<usize> {
    Ok((PI / chebyshev_angle(n, m, z_y)?).floor() as usize + 1)
}

/// Sine-shaped weights `w_i = sin(γ/2)/sin(qγ/2) · sin(γ₀ + iγ)` for i < q,
/// `γ₀ = (π − qγ + γ)/2`.
///
/// Accepts any q with (q − 1)γ ≤ π; the entries are checked non-negative and
/// renormalised to sum to one.
pub fn weights_b(q: usize, dim: usize, n: usize, m: usize, z_y: usize) -> Result<WeightVector> {
    if q == 0 || q > dim {
        return Err(Error::param(alloc::format!("q = {q} outside [1, {dim}]")));
    }
    let gamma = chebyshev_angle(n, m, z_y)?;
    let qf = q as f64;
    if (qf - 1.0) * gamma > PI * (1.0 + 1e-12) {
        return Err(Error::param(alloc::format!(
            "q = {q} violates q*gamma <= pi + gamma (gamma = {gamma})"
        )));
    }
    let half_q = (qf * gamma / 2.0).sin();
    if !(half_q > 0.0) {
        return Err(Error::param("sin(q*gamma/2) vanishes"));
    }
    let scale = (gamma / 2.0).sin() / half_q;
    let gamma0 = (PI - qf * gamma + gamma) / 2.0;
    let mut values = vec![0.0; dim];
    for (i, v) in values.iter_mut().enumerate().take(q) {
        *v = scale * (gamma0 + i as f64 * gamma).sin();
    }
    if let Some((index, &value)) = values
        .iter()
        .enumerate()
        .find(|&(_, &v)| v < -B_NEGATIVE_TOL)
    {
        return Err(Error::NegativeWeight { index, value });
    }
    values.iter_mut().for_each(|v| *v = v.max(0.0));
    let sum: f64 = values.iter().sum();
    values.iter_mut().for_each(|v| *v /= sum);
    Ok(WeightVector {
        values,
        family: WeightFamily::B,
        q: Some(q),
    })
}

/// Uniform 1/(2N − 1) over 2N − 1 entries.
pub fn weights_c(n: usize) -> Result<WeightVector> {
    if n == 0 {
        return Err(Error::param("N must be positive"));
    }
    let dim = 2 * n - 1;
    Ok(WeightVector {
        values: vec![1.0 / dim as f64; dim],
        family: WeightFamily::C,
        q: None,
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DopplerWeight {
    values: Vec<f64>,
}

impl DopplerWeight {
    pub fn custom(mut values: Vec<f64>) -> Result<Self> {
        validate_simplex(&mut values)?;
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Σ p_r².
    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|p| p * p).sum()
    }
}

/// The uniform vector 1/Z_y, which minimises Σ p_r² on the simplex.
pub fn optimal_doppler_weights(z_y: usize) -> Result<DopplerWeight> {
    if z_y == 0 {
        return Err(Error::param("Zy must be positive"));
    }
    Ok(DopplerWeight {
        values: vec![1.0 / z_y as f64; z_y],
    })
}

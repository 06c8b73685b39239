//! Lower bounds on the peak AF sidelobe level over a LAZ.
//!
//! Every bound comes out as a [`BoundReport`]: the lower bound on θ_max², an
//! optional linear trade-off between θ_c² and θ_a², and the parameters that
//! produced it. Reports never hide an inapplicable formula: the value is still
//! carried but `applicable` is false and `reason` says why.

use alloc::string::String;

mod best;
mod closed_form;
pub mod quadform;
mod theorem;
pub mod weights;

pub use best::{best_bound, bound_catalog, candidate_weights, DPolicy};
pub use closed_form::{
    benchmark_ye2022, corollary_closed_forms, remark6_lambda, remark6_optimality_check, ClosedForm,
};
pub use quadform::{jd_quadform, l_quadform, LagProfile};
pub use theorem::{
    dopt_search, simplified_bound, theorem1_bounds, theorem2_bounds, DoptOutcome, Regime,
};
pub use weights::{
    chebyshev_angle, chebyshev_q_opt, optimal_doppler_weights, weights_a, weights_b, weights_c,
    DopplerWeight, WeightFamily, WeightVector,
};

use crate::error::{Error, Result};

/// (N, M, Z_x, Z_y) plus the number D of last delays taken into account.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundParams {
    pub n: usize,
    pub m: usize,
    pub z_x: usize,
    pub z_y: usize,
    pub d: usize,
}

impl BoundParams {
    pub fn new(n: usize, m: usize, z_x: usize, z_y: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::param("N and M must be positive"));
        }
        if z_x == 0 || z_x > n || z_y == 0 || z_y > n {
            return Err(Error::InvalidLaz { z_x, z_y, n });
        }
        Ok(Self {
            n,
            m,
            z_x,
            z_y,
            d: 0,
        })
    }

    pub fn with_d(self, d: usize) -> Self {
        Self { d, ..self }
    }

    /// E = N − Z_x + 1, the smallest last-delay index inside the LAZ.
    pub fn e(&self) -> usize {
        self.n - self.z_x + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum BoundName {
    /// Weighted bound for a general LAZ, weights over the first Z_x delays.
    WeightedLaz,
    /// Weighted bound for Z_x = N, weights over all 2N − 1 circulant rows.
    WeightedFullDelay,
    /// N − Q(w, N²/(MZ_y), 0), the last-delay-free simplification.
    Simplified,
    /// Whole-plane bound: N − 1 for one sequence, N otherwise.
    Global,
    UniformQ,
    UniformOptimalQ,
    ChebyshevQ,
    ChebyshevOptimalQ,
    UniformFullDelay,
    /// Welch inner-product bound for a LAZ (Ye et al., 2022).
    Benchmark,
}

impl BoundName {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundName::WeightedLaz => "weighted_laz",
            BoundName::WeightedFullDelay => "weighted_full_delay",
            BoundName::Simplified => "simplified",
            BoundName::Global => "global",
            BoundName::UniformQ => "uniform_q",
            BoundName::UniformOptimalQ => "uniform_qhat",
            BoundName::ChebyshevQ => "chebyshev_q",
            BoundName::ChebyshevOptimalQ => "chebyshev_qopt",
            BoundName::UniformFullDelay => "uniform_full_delay",
            BoundName::Benchmark => "benchmark",
        }
    }
}

impl core::fmt::Display for BoundName {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `coef_c · θ_c² + coef_a · θ_a² ≥ rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tradeoff {
    pub coef_c: f64,
    pub coef_a: f64,
    pub rhs: f64,
}

impl Tradeoff {
    /// Whether the given maxima satisfy the inequality up to `tol`.
    pub fn holds(&self, theta_c_sq: f64, theta_a_sq: f64, tol: f64) -> bool {
        self.coef_c * theta_c_sq + self.coef_a * theta_a_sq >= self.rhs - tol
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundReport {
    pub name: BoundName,
    /// Lower bound on θ_max²; zero when the formula is vacuous or degenerate.
    pub value: f64,
    /// The formula's value before clamping (zero when degenerate).
    pub raw: f64,
    pub vacuous: bool,
    pub applicable: bool,
    pub reason: Option<String>,
    pub tradeoff: Option<Tradeoff>,
    pub params: BoundParams,
    pub q: Option<usize>,
    pub weight: Option<WeightVector>,
}

impl BoundReport {
    pub(crate) fn new(name: BoundName, raw: f64, params: BoundParams) -> Self {
        Self {
            name,
            value: raw.max(0.0),
            raw,
            vacuous: raw < 0.0,
            applicable: true,
            reason: None,
            tradeoff: None,
            params,
            q: None,
            weight: None,
        }
    }

    pub(crate) fn degenerate(name: BoundName, params: BoundParams, why: &str) -> Self {
        let mut r = Self::new(name, 0.0, params);
        r.applicable = false;
        r.reason = Some(why.into());
        r
    }

    pub(crate) fn not_applicable(mut self, why: impl Into<String>) -> Self {
        self.applicable = false;
        self.reason = Some(why.into());
        self
    }

    /// The value, if the bound actually applies.
    pub fn binding(&self) -> Option<f64> {
        self.applicable.then_some(self.value)
    }
}

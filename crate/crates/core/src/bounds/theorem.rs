//! The weighted quadratic-form bounds and the sweep over D.
//!
//! With optimal Doppler weights p = 1/Z_y, write S = Σ_{d} wᵀJ^d w over the
//! last delays d ∈ [d₀, D] (d₀ = E for a general LAZ, 1 when the weights cover
//! all 2N − 1 rows) and `Q(w, η, B) = η‖w‖² + wᵀBw + wᵀLw`. Then
//!
//! ```text
//! (M−1)(1−S)·θ_c² + (1−‖w‖²−S)·θ_a² ≥ M(N − Q(w, N²/(MZ_y), Σ d² J^d))
//! θ_max² ≥ N − Q(w, N(N−Z_y)/(MZ_y), Σ (d²−N) J^d) / (1 − ‖w‖²/M − S)
//! ```

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::quadform::LagProfile;
use super::weights::WeightVector;
use super::{BoundName, BoundParams, BoundReport, Tradeoff};
use crate::error::{Error, Result};

const DEN_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Regime {
    /// Weights over the first Z_x delays, 1 < Z_x ≤ N.
    T1,
    /// Z_x = N, weights over all 2N − 1 rows.
    T2,
}

impl Regime {
    fn name(self) -> BoundName {
        match self {
            Regime::T1 => BoundName::WeightedLaz,
            Regime::T2 => BoundName::WeightedFullDelay,
        }
    }

    fn first_last_delay(self, p: &BoundParams) -> usize {
        match self {
            Regime::T1 => p.e(),
            Regime::T2 => 1,
        }
    }
}

fn validate(w: &WeightVector, p: &BoundParams, regime: Regime) -> Result<()> {
    BoundParams::new(p.n, p.m, p.z_x, p.z_y)?;
    if p.d >= p.n {
        return Err(Error::param(alloc::format!(
            "D = {} outside [0, N-1 = {}]",
            p.d,
            p.n - 1
        )));
    }
    match regime {
        Regime::T1 => {
            if p.z_x < 2 {
                return Err(Error::param("the weighted LAZ bound needs Zx > 1"));
            }
            if w.dim() != p.z_x {
                return Err(Error::DimensionMismatch {
                    what: "delay weights (Zx)",
                    expected: p.z_x,
                    found: w.dim(),
                });
            }
        }
        Regime::T2 => {
            if p.z_x != p.n {
                return Err(Error::param("the full-delay bound needs Zx = N"));
            }
            if w.dim() != 2 * p.n - 1 {
                return Err(Error::DimensionMismatch {
                    what: "delay weights (2N-1)",
                    expected: 2 * p.n - 1,
                    found: w.dim(),
                });
            }
        }
    }
    Ok(())
}

/// Evaluates the bound from precomputed pieces; `j` is indexed by d.
fn evaluate(norm_sq: f64, l_form: f64, j: &[f64], p: &BoundParams, regime: Regime) -> BoundReport {
    let (n, m, zy) = (p.n as f64, p.m as f64, p.z_y as f64);
    let lo = regime.first_last_delay(p).max(1);
    let (mut s, mut d2, mut shifted) = (0.0, 0.0, 0.0);
    for d in lo..=p.d {
        let jd = j[d];
        let dd = (d * d) as f64;
        s += jd;
        d2 += dd * jd;
        shifted += (dd - n) * jd;
    }
    let tradeoff = Tradeoff {
        coef_c: (m - 1.0) * (1.0 - s),
        coef_a: 1.0 - norm_sq - s,
        rhs: m * (n - (n * n / (m * zy) * norm_sq + d2 + l_form)),
    };
    let den = 1.0 - norm_sq / m - s;
    let mut report = if den <= DEN_EPS {
        BoundReport::degenerate(regime.name(), *p, "non-positive denominator")
    } else {
        let q = n * (n - zy) / (m * zy) * norm_sq + shifted + l_form;
        BoundReport::new(regime.name(), n - q / den, *p)
    };
    report.tradeoff = Some(tradeoff);
    report
}

fn run(w: &WeightVector, p: &BoundParams, regime: Regime) -> Result<BoundReport> {
    validate(w, p, regime)?;
    let profile = LagProfile::new(w.values(), p.n)?;
    let mut r = evaluate(
        profile.norm_sq(),
        profile.l_form(),
        &profile.j_forms(),
        p,
        regime,
    );
    r.q = w.q();
    r.weight = Some(w.clone());
    Ok(r)
}

/// Weighted bound for a LAZ with 1 < Z_x ≤ N; `w` has Z_x entries.
pub fn theorem1_bounds(w: &WeightVector, params: &BoundParams) -> Result<BoundReport> {
    run(w, params, Regime::T1)
}

/// Weighted bound for Z_x = N; `w` has 2N − 1 entries.
pub fn theorem2_bounds(w: &WeightVector, params: &BoundParams) -> Result<BoundReport> {
    run(w, params, Regime::T2)
}

/// `θ_max² ≥ N − Q(w, N²/(MZ_y), 0)`, with trade-off
/// `(M−1)θ_c² + (1−‖w‖²)θ_a² ≥ M·(N − Q(w, N²/(MZ_y), 0))`.
///
/// The regime is inferred from the dimension of `w` (Z_x or 2N − 1).
pub fn simplified_bound(w: &WeightVector, params: &BoundParams) -> Result<BoundReport> {
    let regime = if w.dim() == 2 * params.n - 1 && params.z_x == params.n && w.dim() != params.z_x {
        Regime::T2
    } else {
        Regime::T1
    };
    validate(w, &params.with_d(0), regime)?;
    let profile = LagProfile::new(w.values(), params.n)?;
    let (n, m, zy) = (params.n as f64, params.m as f64, params.z_y as f64);
    let value = n - (n * n / (m * zy) * profile.norm_sq() + profile.l_form());
    let mut r = BoundReport::new(BoundName::Simplified, value, params.with_d(0));
    r.tradeoff = Some(Tradeoff {
        coef_c: m - 1.0,
        coef_a: 1.0 - profile.norm_sq(),
        rhs: m * value,
    });
    r.q = w.q();
    r.weight = Some(w.clone());
    Ok(r)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoptOutcome {
    /// Report at the maximising D (`best.params.d`).
    pub best: BoundReport,
    /// Report at D = 0.
    pub reference: BoundReport,
    /// ⌊√(reference value)⌋, the usual estimate of the optimal D.
    pub heuristic_d: usize,
    /// Every evaluated D in order, as (D, value, applicable).
    pub sweep: Vec<(usize, f64, bool)>,
}

/// Exact maximisation of the weighted bound over D ∈ [0, N − 1].
///
/// Only non-degenerate evaluations compete; ties keep the smallest D.
pub fn dopt_search(w: &WeightVector, params: &BoundParams, regime: Regime) -> Result<DoptOutcome> {
    let base = params.with_d(0);
    validate(w, &base, regime)?;
    let profile = LagProfile::new(w.values(), params.n)?;
    let (norm_sq, l_form, j) = (profile.norm_sq(), profile.l_form(), profile.j_forms());
    let finish = |mut r: BoundReport| {
        r.q = w.q();
        r.weight = Some(w.clone());
        r
    };
    let reference = finish(evaluate(norm_sq, l_form, &j, &base, regime));
    let mut best = reference.clone();
    let mut sweep = Vec::with_capacity(params.n);
    for d in 0..params.n {
        let r = evaluate(norm_sq, l_form, &j, &params.with_d(d), regime);
        sweep.push((d, r.value, r.applicable));
        let better = r.applicable && (!best.applicable || r.raw > best.raw);
        if better {
            best = finish(r);
        }
    }
    let heuristic_d = if reference.applicable {
        reference.value.sqrt().floor() as usize
    } else {
        0
    };
    Ok(DoptOutcome {
        best,
        reference,
        heuristic_d,
        sweep,
    })
}

//! Closed-form specialisations of the weighted bounds, the Welch-type
//! benchmark for a LAZ, and the optimality test for uniform full-delay weights.

use alloc::format;

use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use super::theorem::simplified_bound;
use super::weights::{chebyshev_angle, chebyshev_q_opt, weights_b};
use super::{BoundName, BoundParams, BoundReport, Tradeoff};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ClosedForm {
    /// Whole-plane bound.
    Global,
    /// Uniform weights on the first q delays.
    UniformQ,
    /// Uniform weights with q̂ = ⌊√(3N²/(MZ_y))⌋.
    UniformOptimalQ,
    /// Sine weights with a given q.
    ChebyshevQ,
    /// Sine weights with q = ⌊π/γ⌋ + 1, rounded value N − ⌈πN/√(8MZ_y)⌉.
    ChebyshevOptimalQ,
    /// Uniform weights over all 2N − 1 rows, Z_x = N.
    UniformFullDelay,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 6] = [
        ClosedForm::Global,
        ClosedForm::UniformQ,
        ClosedForm::UniformOptimalQ,
        ClosedForm::ChebyshevQ,
        ClosedForm::ChebyshevOptimalQ,
        ClosedForm::UniformFullDelay,
    ];

    pub fn bound_name(self) -> BoundName {
        match self {
            ClosedForm::Global => BoundName::Global,
            ClosedForm::UniformQ => BoundName::UniformQ,
            ClosedForm::UniformOptimalQ => BoundName::UniformOptimalQ,
            ClosedForm::ChebyshevQ => BoundName::ChebyshevQ,
            ClosedForm::ChebyshevOptimalQ => BoundName::ChebyshevOptimalQ,
            ClosedForm::UniformFullDelay => BoundName::UniformFullDelay,
        }
    }
}

/// Evaluates a closed form at `params` (D is ignored and reported as 0).
///
/// `q` is required by [`ClosedForm::UniformQ`] and [`ClosedForm::ChebyshevQ`]
/// and ignored otherwise. Parameter combinations outside a form's stated
/// conditions still produce a report, with `applicable = false` and a reason.
pub fn corollary_closed_forms(
    kind: ClosedForm,
    params: &BoundParams,
    q: Option<usize>,
) -> Result<BoundReport> {
    let p = BoundParams::new(params.n, params.m, params.z_x, params.z_y)?;
    let (n, m, zy) = (p.n as f64, p.m as f64, p.z_y as f64);
    let name = kind.bound_name();
    let report = match kind {
        ClosedForm::Global => {
            let v = if p.m == 1 { n - 1.0 } else { n };
            let r = BoundReport::new(name, v, p);
            if p.z_y != p.n || p.z_x < 2 {
                r.not_applicable("needs Zy = N and Zx > 1")
            } else {
                r
            }
        }
        ClosedForm::UniformQ => {
            let q = q.ok_or_else(|| Error::param("uniform_q needs q"))?;
            if q == 0 {
                return Err(Error::param("q must be positive"));
            }
            let qf = q as f64;
            let den = 3.0 * (qf * m - 1.0) * zy;
            let mut r = if den <= 0.0 {
                BoundReport::degenerate(name, p, "q = M = 1 gives a zero denominator")
            } else {
                let num = 3.0 * qf * m * n * zy - 3.0 * n * n - qf * qf * m * zy + m * zy;
                BoundReport::new(name, num / den, p)
            };
            r.tradeoff = Some(Tradeoff {
                coef_c: 3.0 * qf * zy * (m - 1.0),
                coef_a: 3.0 * qf * zy - 3.0 * zy,
                rhs: 3.0 * qf * m * n * zy - (qf * qf - 1.0) * m * zy - 3.0 * n * n,
            });
            r.q = Some(q);
            if p.z_x < 2 || q > p.z_x {
                r.not_applicable(format!("needs 1 <= q <= Zx and Zx > 1 (q = {q})"))
            } else {
                r
            }
        }
        ClosedForm::UniformOptimalQ => {
            let root = (3.0 * m * zy).sqrt();
            let mut r = BoundReport::new(name, n - 2.0 * n / root, p);
            r.tradeoff = Some(Tradeoff {
                coef_c: m - 1.0,
                coef_a: 1.0 - (m * zy).sqrt() / (3.0.sqrt() * n),
                rhs: m * n * (root - 2.0) / root,
            });
            let qhat = (3.0 * n * n / (m * zy)).sqrt().floor() as usize;
            r.q = Some(qhat.clamp(1, p.z_x));
            let mzy = (p.m * p.z_y) as u128;
            let zx = p.z_x as u128;
            let nn = p.n as u128;
            if mzy < 3 {
                r.not_applicable("needs M*Zy >= 3")
            } else if zx * zx * mzy <= 3 * nn * nn {
                r.not_applicable("needs Zx^2*M*Zy > 3N^2 so that q-hat fits in the LAZ")
            } else {
                r
            }
        }
        ClosedForm::ChebyshevQ => {
            let q = q.ok_or_else(|| Error::param("chebyshev_q needs q"))?;
            if q == 0 {
                return Err(Error::param("q must be positive"));
            }
            chebyshev_q(&p, q)?
        }
        ClosedForm::ChebyshevOptimalQ => {
            let v = n - (PI * n / (8.0 * m * zy).sqrt()).ceil();
            let mut r = BoundReport::new(name, v, p);
            let mzy = p.m * p.z_y;
            if mzy < 5 || (mzy as u128) > (p.n as u128) * (p.n as u128) {
                return Ok(r.not_applicable("needs 5 <= M*Zy <= N^2"));
            }
            let gamma = chebyshev_angle(p.n, p.m, p.z_y)?;
            r.q = Some(chebyshev_q_opt(p.n, p.m, p.z_y)?);
            if (p.z_x as f64) <= PI / gamma {
                r.not_applicable("needs Zx > pi/gamma")
            } else {
                r
            }
        }
        ClosedForm::UniformFullDelay => {
            let k = 2.0 * n - 1.0;
            let den = zy * (m * k - 1.0);
            let mut r = if den <= 0.0 {
                BoundReport::degenerate(name, p, "M = N = 1 gives a zero denominator")
            } else {
                BoundReport::new(name, n * n * (m * zy - 1.0) / den, p)
            };
            r.tradeoff = Some(Tradeoff {
                coef_c: m - 1.0,
                coef_a: (k - 1.0) / k,
                rhs: n * n * (m * zy - 1.0) / (zy * k),
            });
            if p.z_x != p.n {
                r.not_applicable("needs Zx = N")
            } else {
                r
            }
        }
    };
    Ok(report)
}

fn chebyshev_q(p: &BoundParams, q: usize) -> Result<BoundReport> {
    let name = BoundName::ChebyshevQ;
    let mzy = (p.m * p.z_y) as u128;
    if mzy > (p.n as u128) * (p.n as u128) {
        let mut r = BoundReport::degenerate(name, *p, "needs M*Zy <= N^2");
        r.q = Some(q);
        return Ok(r);
    }
    let gamma = chebyshev_angle(p.n, p.m, p.z_y)?;
    let (n, qf) = (p.n as f64, q as f64);
    let one_minus_cos = (p.m * p.z_y) as f64 / (n * n);
    let sq = (qf * gamma / 2.0).sin();
    let sq2 = ((qf - 2.0) * gamma / 2.0).sin();
    let v = n - (qf - 1.0) / 2.0 - (sq - sq2) / (2.0 * one_minus_cos * sq);
    let mut r = BoundReport::new(name, v, *p);
    r.q = Some(q);
    let in_range = q <= p.z_x && p.z_x > 1 && (qf - 1.0) * gamma < PI;
    if in_range {
        // the trade-off needs ‖w‖², so it is read off the explicit weights
        if let Ok(w) = weights_b(q, p.z_x, p.n, p.m, p.z_y) {
            r.tradeoff = simplified_bound(&w, p)?.tradeoff;
        }
        Ok(r)
    } else {
        Ok(r.not_applicable(format!(
            "needs q <= Zx, Zx > 1 and (q-1)*gamma < pi (q = {q})"
        )))
    }
}

/// Welch inner-product bound for a LAZ:
/// `N²(MZ_xZ_y − N − Z_x + 1) / ((N + Z_x − 1)(MZ_x − 1)Z_y)`.
pub fn benchmark_ye2022(params: &BoundParams) -> Result<BoundReport> {
    let p = BoundParams::new(params.n, params.m, params.z_x, params.z_y)?;
    if p.z_x < 2 {
        return Err(Error::param("the benchmark needs Zx > 1"));
    }
    let (n, m, zx, zy) = (p.n as f64, p.m as f64, p.z_x as f64, p.z_y as f64);
    let num = n * n * (m * zx * zy - n - zx + 1.0);
    let den = (n + zx - 1.0) * (m * zx - 1.0) * zy;
    Ok(BoundReport::new(BoundName::Benchmark, num / den, p))
}

/// Minimum eigenvalue of `N(N−Z_y)/(MZ_y)·I + L` over the circulant lag
/// matrix of size 2N − 1, i.e. `N(N−Z_y)/(MZ_y) − 1/(4 sin²(π/(2(2N−1))))`.
pub fn remark6_lambda(n: usize, m: usize, z_y: usize) -> Result<f64> {
    if n == 0 || m == 0 || z_y == 0 {
        return Err(Error::param("N, M and Zy must be positive"));
    }
    let (nf, mf, zy) = (n as f64, m as f64, z_y as f64);
    let k = (2 * n - 1) as f64;
    let s = (PI / (2.0 * k)).sin();
    Ok(nf * (nf - zy) / (mf * zy) - 1.0 / (4.0 * s * s))
}

/// Whether uniform full-delay weights maximise the full-delay bound at D = 0.
pub fn remark6_optimality_check(n: usize, m: usize, z_y: usize) -> bool {
    remark6_lambda(n, m, z_y).is_ok_and(|l| l >= -1e-12)
}

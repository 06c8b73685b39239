//! Chu sequences `s_t = exp(jπ a t²/N)`: construction, the closed-form
//! auto-ambiguity magnitude, the LAZ achievability ratio and the cap on the
//! cross-ambiguity of two roots.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::sequence::{LazSpec, Sequence, SequenceSet};

/// Length and distinct non-zero roots of a Chu sequence set.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChuSpec {
    n: usize,
    roots: Vec<i64>,
}

impl ChuSpec {
    pub fn new(n: usize, roots: Vec<i64>) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::EmptySet);
        }
        for (i, &a) in roots.iter().enumerate() {
            check_root(n, a)?;
            if roots[..i].contains(&a) {
                return Err(Error::param(alloc::format!("root {a} repeated")));
            }
        }
        Ok(Self { n, roots })
    }

    pub fn seq_len(&self) -> usize {
        self.n
    }

    pub fn roots(&self) -> &[i64] {
        &self.roots
    }

    pub fn sequence_set(&self) -> SequenceSet {
        let members = self
            .roots
            .iter()
            .map(|&a| chu_sequence(self.n, a).expect("roots validated"))
            .collect();
        SequenceSet::new(members).expect("equal lengths")
    }
}

fn check_root(n: usize, a: i64) -> Result<()> {
    if n == 0 || a == 0 || a.unsigned_abs() as usize >= n {
        return Err(Error::InvalidRoot { a, n });
    }
    Ok(())
}

/// Constants of the large-N limit of the in-LAZ auto-ambiguity peak.
///
/// The peak is governed by `F(φ) = (1 − cos φ)/φ` on (0, π]; the limit of
/// `max |A|/√N` is `√(F(φ₀)/π)/√|a|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChuAsymptote {
    pub phi0: f64,
    pub f_phi0: f64,
    /// √(F(φ₀)/π) ≈ 0.4802.
    pub constant: f64,
    pub beta: f64,
}

impl ChuAsymptote {
    /// The rounded value usually quoted for [`ChuAsymptote::constant`].
    pub const QUOTED: f64 = 0.4802;
    pub const DEFAULT_BETA: f64 = 0.9;

    pub fn f(phi: f64) -> f64 {
        (1.0 - phi.cos()) / phi
    }

    /// Locates φ₀ by golden-section search on [1, π].
    pub fn compute() -> Self {
        let g = (5.0.sqrt() - 1.0) / 2.0;
        let (mut lo, mut hi) = (1.0_f64, PI);
        for _ in 0..200 {
            let x1 = hi - g * (hi - lo);
            let x2 = lo + g * (hi - lo);
            if Self::f(x1) < Self::f(x2) {
                lo = x1;
            } else {
                hi = x2;
            }
        }
        let phi0 = (lo + hi) / 2.0;
        let f_phi0 = Self::f(phi0);
        Self {
            phi0,
            f_phi0,
            constant: (f_phi0 / PI).sqrt(),
            beta: Self::DEFAULT_BETA,
        }
    }

    /// Limit of `max |A|/√N` over the LAZ for root `a`.
    pub fn target(&self, a: i64) -> f64 {
        self.constant / (a.unsigned_abs() as f64).sqrt()
    }
}

/// `s_t = exp(jπ a t²/N)`, with the phase index a·t² reduced mod 2N exactly.
pub fn chu_sequence(n: usize, a: i64) -> Result<Sequence> {
    check_root(n, a)?;
    let two_n = 2 * n as i128;
    let entries = (0..n as i128)
        .map(|t| {
            let k = (a as i128 * t * t).rem_euclid(two_n);
            Complex64::from_polar(1.0, PI * k as f64 / n as f64)
        })
        .collect();
    Sequence::new(entries)
}

/// |A(τ, ν)|² of a Chu sequence with itself, in closed form.
///
/// With `k = (ν − aτ) mod N` the lag sum is geometric, giving
/// `sin²(π(kτ mod N)/N) / sin²(πk/N)`, or `(N − τ)²` when k = 0. Negative τ
/// uses `|A(−τ, ν)| = |A(τ, −ν)|`; |τ| ≥ N gives 0.
pub fn chu_aaf_closed_form(n: usize, a: i64, tau: i64, nu: i64) -> f64 {
    if tau < 0 {
        return chu_aaf_closed_form(n, a, -tau, -nu);
    }
    if n == 0 || tau as u64 >= n as u64 {
        return 0.0;
    }
    let nn = n as i128;
    let k = (nu as i128 - a as i128 * tau as i128).rem_euclid(nn);
    if k == 0 {
        let r = (n as i64 - tau) as f64;
        return r * r;
    }
    let num = (PI * ((k * tau as i128) % nn) as f64 / n as f64).sin();
    let den = (PI * k as f64 / n as f64).sin();
    (num * num) / (den * den)
}

fn check_theorem_params(n: usize, a: i64, beta: f64) -> Result<u64> {
    check_root(n, a)?;
    let abs = a.unsigned_abs();
    if abs <= 1 {
        return Err(Error::param("the achievability LAZ needs |a| > 1"));
    }
    if !(beta > 0.5 && beta < 1.0) {
        return Err(Error::param(alloc::format!(
            "beta = {beta} outside (1/2, 1)"
        )));
    }
    if (n as u64) < 5 * abs {
        return Err(Error::param(alloc::format!(
            "needs N >= 5|a| (N = {n}, a = {a})"
        )));
    }
    Ok(abs)
}

/// LAZ `Z_x = ⌊βN/|a|⌋`, `Z_y = |a|` over which a single Chu sequence has
/// its auto-ambiguity peak of order √(N/|a|).
pub fn theorem3_laz(n: usize, a: i64, beta: f64) -> Result<LazSpec> {
    let abs = check_theorem_params(n, a, beta)?;
    let z_x = (beta * n as f64 / abs as f64).floor() as usize;
    LazSpec::new(z_x.max(1), abs as usize)
}

/// `max |A(τ, ν)|/√N` over `|τ| ≤ Z_x − 1`, `|ν| < |a|`, excluding the origin.
pub fn theorem3_ratio(n: usize, a: i64, beta: f64) -> Result<f64> {
    let laz = theorem3_laz(n, a, beta)?;
    let mut peak = 0.0_f64;
    for tau in 0..laz.z_x as i64 {
        for nu in laz.dopplers() {
            if tau == 0 && nu == 0 {
                continue;
            }
            // negative delays mirror positive ones with ν negated
            peak = peak.max(chu_aaf_closed_form(n, a, tau, nu));
        }
    }
    Ok(peak.sqrt() / (n as f64).sqrt())
}

/// Cap on `|A_{s¹,s²}(τ, ν)|` for roots `a1 > a2`:
/// `3(√Δ + 2/√Δ)√N − 3|τ|√Δ/√N` with Δ = a1 − a2.
pub fn theorem4_caf_bound(n: usize, a1: i64, a2: i64, tau: i64) -> Result<f64> {
    if a1 <= a2 {
        return Err(Error::param(alloc::format!(
            "needs a1 > a2 (a1 = {a1}, a2 = {a2})"
        )));
    }
    let delta = (a1 - a2) as f64;
    let (sd, sn) = (delta.sqrt(), (n as f64).sqrt());
    Ok(3.0 * (sd + 2.0 / sd) * sn - 3.0 * tau.unsigned_abs() as f64 * sd / sn)
}

/// Van der Corput cap `3αξ√ρ + 6/√ρ` on an exponential sum of length ξ whose
/// phase has second difference in [ρ, αρ].
pub fn vdc_sum_bound(rho: f64, alpha: f64, xi: u64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::param("rho must be positive"));
    }
    if !(alpha >= 1.0) {
        return Err(Error::param("alpha must be at least 1"));
    }
    Ok(3.0 * alpha * xi as f64 * rho.sqrt() + 6.0 / rho.sqrt())
}

/// LAZ on which a Chu set is order-optimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OrderOptimalLaz {
    pub laz: LazSpec,
    /// `max a − min a ≤ √N`; when false the cross-ambiguity cap is no longer O(√N).
    pub roots_close: bool,
}

/// Largest LAZ with `Z_x < ⌊N/max|a| − 1⌋` and `Z_y ≤ min|a|`.
pub fn order_optimal_laz(spec: &ChuSpec) -> Result<OrderOptimalLaz> {
    let n = spec.seq_len() as u64;
    let abs = spec.roots().iter().map(|a| a.unsigned_abs());
    let (max_abs, min_abs) = abs.fold((0, u64::MAX), |(hi, lo), v| (hi.max(v), lo.min(v)));
    if min_abs <= 1 {
        return Err(Error::param("order-optimal LAZ needs every |a| > 1"));
    }
    if n < 5 * max_abs {
        return Err(Error::param(alloc::format!(
            "needs N >= 5 max|a| (N = {n}, max|a| = {max_abs})"
        )));
    }
    let z_x = (n / max_abs).saturating_sub(2);
    if z_x == 0 {
        return Err(Error::param("no admissible delay extent"));
    }
    let hi = *spec.roots().iter().max().unwrap();
    let lo = *spec.roots().iter().min().unwrap();
    let spread = (hi - lo) as u64;
    Ok(OrderOptimalLaz {
        laz: LazSpec::new(z_x as usize, min_abs as usize)?,
        roots_close: spread * spread <= n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af::aperiodic_af;

    #[test]
    fn small_sequences() {
        let s = chu_sequence(2, 1).unwrap();
        assert!((s.entries()[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((s.entries()[1] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let s = chu_sequence(5, 1).unwrap();
        let want = Complex64::from_polar(1.0, 4.0 * PI / 5.0);
        assert!((s.entries()[2] - want).norm() < 1e-15);
        assert!(chu_sequence(5, 0).is_err());
        assert!(chu_sequence(5, 5).is_err());
        assert!(chu_sequence(5, -4).is_ok());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(chu_aaf_closed_form(5, 2, 1, 2), 16.0);
        assert!((chu_aaf_closed_form(5, 2, 1, 0) - 1.0).abs() < 1e-12);
        assert_eq!(chu_aaf_closed_form(5, 2, 5, 0), 0.0);
    }

    #[test]
    fn closed_form_matches_direct_sum() {
        for n in [7usize, 12, 16] {
            for a in 1..n as i64 {
                let s = chu_sequence(n, a).unwrap();
                for tau in -(n as i64 - 1)..n as i64 {
                    for nu in 0..n as i64 {
                        let d = aperiodic_af(&s, &s, tau, nu).unwrap().norm_sqr();
                        let c = chu_aaf_closed_form(n, a, tau, nu);
                        assert!((d - c).abs() <= 1e-8 * d.max(1.0), "{n} {a} {tau} {nu}");
                    }
                }
            }
        }
    }

    #[test]
    fn asymptote_constants() {
        let c = ChuAsymptote::compute();
        assert!((c.phi0 - 2.3311).abs() < 1e-4);
        assert!((c.f_phi0 - 0.7246).abs() < 5e-4);
        // the quoted constant is truncated, not rounded
        assert_eq!((c.constant * 1e4).floor() / 1e4, ChuAsymptote::QUOTED);
        assert!((c.target(20) - 0.10738).abs() < 1e-5);
    }

    #[test]
    fn achievability_laz() {
        let l = theorem3_laz(4000, 20, 0.9).unwrap();
        assert_eq!((l.z_x, l.z_y), (180, 20));
        assert_eq!(theorem3_laz(100, 20, 0.9).unwrap().z_x, 4);
        assert!(theorem3_laz(99, 20, 0.9).is_err());
        assert!(theorem3_laz(100, 1, 0.9).is_err());
        assert!(theorem3_laz(100, 2, 0.5).is_err());
    }

    #[test]
    fn caf_cap_and_vdc() {
        assert!((theorem4_caf_bound(10000, 20, 19, 0).unwrap() - 900.0).abs() < 1e-9);
        assert!(theorem4_caf_bound(10, 3, 3, 0).is_err());
        assert_eq!(vdc_sum_bound(1.0, 1.0, 0).unwrap(), 6.0);
        assert!((vdc_sum_bound(0.01, 1.0, 100).unwrap() - 90.0).abs() < 1e-9);
        assert!(vdc_sum_bound(0.0, 1.0, 1).is_err());
        for (n, a1, a2, tau) in [(1009usize, 20i64, 19i64, 7i64), (4000, 31, 2, -40)] {
            let rho = (a1 - a2) as f64 / n as f64;
            let v = vdc_sum_bound(rho, 1.0, n as u64 - tau.unsigned_abs()).unwrap();
            let t = theorem4_caf_bound(n, a1, a2, tau).unwrap();
            assert!((v - t).abs() < 1e-9 * t);
        }
    }

    #[test]
    fn order_optimal() {
        let spec = ChuSpec::new(4000, alloc::vec![20, 19]).unwrap();
        let o = order_optimal_laz(&spec).unwrap();
        assert_eq!((o.laz.z_x, o.laz.z_y), (198, 19));
        assert!(o.roots_close);
        let spec = ChuSpec::new(4000, alloc::vec![1, 20]).unwrap();
        assert!(order_optimal_laz(&spec).is_err());
        let spec = ChuSpec::new(99, alloc::vec![20, 19]).unwrap();
        assert!(order_optimal_laz(&spec).is_err());
        let spec = ChuSpec::new(400, alloc::vec![3, 60]).unwrap();
        assert!(!order_optimal_laz(&spec).unwrap().roots_close);
        assert!(ChuSpec::new(10, alloc::vec![3, 3]).is_err());
    }
}

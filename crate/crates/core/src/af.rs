//! Discrete aperiodic ambiguity function and its statistics over a LAZ.
//!
//! For sequences `x`, `y` of length N the AF at integer delay τ and Doppler bin ν is
//!
//! ```text
//! A(τ, ν) = Σ_{t=0}^{N-1-τ} x_t · conj(y_{t+τ}) · e^{j2πνt/N}     0 ≤ τ ≤ N-1
//! A(τ, ν) = Σ_{t=0}^{N-1+τ} x_{t-τ} · conj(y_t) · e^{j2πνt/N}     1-N ≤ τ ≤ -1
//! ```
//!
//! For a fixed τ the Doppler row is an (unnormalised, inverse-sign) length-N DFT
//! of the lag product `c_t`, so surfaces are built row by row through a
//! [`DopplerEngine`]. [`DirectDoppler`] sums directly with an exact twiddle table;
//! the std companion crate adds an FFT engine.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::sequence::{LazSpec, Sequence, SequenceSet};

/// Absolute "zero" threshold per unit length (1e-9 · N).
pub const ZERO_TOL_PER_N: f64 = 1e-9;

/// Computes Doppler rows `out[k] = Σ_t lag[t]·e^{j2π(k−h)t/N}` for `k ∈ [0, 2h]`.
pub trait DopplerEngine {
    /// Sequence length N the engine was built for.
    fn seq_len(&self) -> usize;

    /// `lag.len() ≤ N`, `out.len() == 2h + 1` where `h = max_doppler`.
    fn doppler_row(&self, lag: &[Complex64], max_doppler: usize, out: &mut [Complex64]);
}

/// Direct O(N) summation per Doppler bin.
#[derive(Debug, Clone)]
pub struct DirectDoppler {
    twiddles: Vec<Complex64>,
}

impl DirectDoppler {
    pub fn new(n: usize) -> Self {
        let twiddles = (0..n)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
            .collect();
        Self { twiddles }
    }
}

impl DopplerEngine for DirectDoppler {
    fn seq_len(&self) -> usize {
        self.twiddles.len()
    }

    fn doppler_row(&self, lag: &[Complex64], max_doppler: usize, out: &mut [Complex64]) {
        let n = self.twiddles.len();
        debug_assert!(lag.len() <= n);
        debug_assert_eq!(out.len(), 2 * max_doppler + 1);
        for (k, slot) in out.iter_mut().enumerate() {
            let nu = k as i64 - max_doppler as i64;
            let step = nu.rem_euclid(n as i64) as usize;
            let mut idx = 0usize;
            let mut acc = Complex64::new(0.0, 0.0);
            for &c in lag {
                acc += c * self.twiddles[idx];
                idx += step;
                if idx >= n {
                    idx -= n;
                }
            }
            *slot = acc;
        }
    }
}

/// Fills `out` with the lag product `c_t = x_t conj(y_{t+τ})` for delay `tau`.
///
/// Callers guarantee `|tau| < N` and equal lengths.
pub fn lag_product(x: &[Complex64], y: &[Complex64], tau: i64, out: &mut Vec<Complex64>) {
    let n = x.len();
    out.clear();
    if tau >= 0 {
        let s = tau as usize;
        out.extend((0..n - s).map(|t| x[t] * y[t + s].conj()));
    } else {
        let s = (-tau) as usize;
        out.extend((0..n - s).map(|t| x[t + s] * y[t].conj()));
    }
}

fn check_pair(x: &Sequence, y: &Sequence) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(x.len())
}

/// A(τ, ν) by direct summation.
pub fn aperiodic_af(x: &Sequence, y: &Sequence, tau: i64, nu: i64) -> Result<Complex64> {
    let n = check_pair(x, y)?;
    if tau.unsigned_abs() as usize >= n {
        return Err(Error::DelayOutOfRange { tau, n });
    }
    if nu.unsigned_abs() as usize >= n {
        return Err(Error::DopplerOutOfRange { nu, n });
    }
    let mut lag = Vec::with_capacity(n);
    lag_product(x.entries(), y.entries(), tau, &mut lag);
    let n_i = n as i64;
    let acc = lag
        .iter()
        .enumerate()
        .fold(Complex64::new(0.0, 0.0), |acc, (t, &c)| {
            let k = (nu * t as i64).rem_euclid(n_i);
            acc + c * Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
        });
    Ok(acc)
}

/// |A|² over every (τ, ν) of a LAZ, τ-major, both ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct AfSurface {
    /// Source pair (m, m′) within its set.
    pub source: (usize, usize),
    pub laz: LazSpec,
    values: Vec<f64>,
}

impl AfSurface {
    fn width(&self) -> usize {
        2 * self.laz.z_y - 1
    }

    /// |A(τ, ν)|², or `None` outside the LAZ.
    pub fn get(&self, tau: i64, nu: i64) -> Option<f64> {
        let hx = self.laz.z_x as i64 - 1;
        let hy = self.laz.z_y as i64 - 1;
        if tau.abs() > hx || nu.abs() > hy {
            return None;
        }
        let row = (tau + hx) as usize;
        let col = (nu + hy) as usize;
        Some(self.values[row * self.width() + col])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `(τ, ν, |A|²)` in τ-major ascending order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, f64)> + '_ {
        let hx = self.laz.z_x as i64 - 1;
        let hy = self.laz.z_y as i64 - 1;
        let w = self.width();
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| ((i / w) as i64 - hx, (i % w) as i64 - hy, v))
    }
}

/// |AF|² surface of `(x, y)` over `laz`, by direct summation.
pub fn af_surface(x: &Sequence, y: &Sequence, laz: LazSpec) -> Result<AfSurface> {
    let engine = DirectDoppler::new(x.len());
    af_surface_with(x, y, laz, &engine)
}

/// |AF|² surface through an arbitrary Doppler engine.
pub fn af_surface_with<E: DopplerEngine + ?Sized>(
    x: &Sequence,
    y: &Sequence,
    laz: LazSpec,
    engine: &E,
) -> Result<AfSurface> {
    let n = check_pair(x, y)?;
    laz.validate_for(n)?;
    check_engine(engine, n)?;
    let width = 2 * laz.z_y - 1;
    let mut values = Vec::with_capacity(laz.cell_count());
    let mut lag = Vec::with_capacity(n);
    let mut row = vec![Complex64::new(0.0, 0.0); width];
    for tau in laz.delays() {
        lag_product(x.entries(), y.entries(), tau, &mut lag);
        engine.doppler_row(&lag, laz.z_y - 1, &mut row);
        values.extend(row.iter().map(|a| a.norm_sqr()));
    }
    let source = if x == y { (0, 0) } else { (0, 1) };
    Ok(AfSurface {
        source,
        laz,
        values,
    })
}

fn check_engine<E: DopplerEngine + ?Sized>(engine: &E, n: usize) -> Result<()> {
    if engine.seq_len() != n {
        return Err(Error::DimensionMismatch {
            what: "Doppler engine length",
            expected: n,
            found: engine.seq_len(),
        });
    }
    Ok(())
}

/// Location of a maximum: members (m, m′) and cell (τ, ν).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Witness {
    pub m: usize,
    pub m_prime: usize,
    pub tau: i64,
    pub nu: i64,
}

/// θ_a², θ_c², θ_max² over a LAZ with their first (lexicographic) argmax.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ThetaReport {
    pub theta_a_sq: f64,
    /// `None` when M = 1.
    pub theta_c_sq: Option<f64>,
    pub theta_max_sq: f64,
    /// `None` only for the LAZ (1, 1), where no auto cell besides the origin exists.
    pub argmax_a: Option<Witness>,
    pub argmax_c: Option<Witness>,
}

#[derive(Default)]
struct Running {
    best: Option<(f64, Witness)>,
}

impl Running {
    fn offer(&mut self, value: f64, at: Witness) {
        match self.best {
            Some((b, _)) if !(value > b) => {}
            _ => self.best = Some((value, at)),
        }
    }
}

/// θ statistics by direct summation.
pub fn theta_report(set: &SequenceSet, laz: LazSpec) -> Result<ThetaReport> {
    let engine = DirectDoppler::new(set.seq_len());
    theta_report_with(set, laz, &engine)
}

/// θ statistics through an arbitrary Doppler engine.
///
/// Pairs are scanned (m, m′) ascending, then τ, then ν, so ties resolve to the
/// lexicographically smallest witness.
pub fn theta_report_with<E: DopplerEngine + ?Sized>(
    set: &SequenceSet,
    laz: LazSpec,
    engine: &E,
) -> Result<ThetaReport> {
    let n = set.seq_len();
    laz.validate_for(n)?;
    check_engine(engine, n)?;
    let mut auto = Running::default();
    let mut cross = Running::default();
    for m in 0..set.size() {
        for mp in 0..set.size() {
            let target = if m == mp { &mut auto } else { &mut cross };
            scan_pair(set, m, mp, laz, engine, |value, at| target.offer(value, at));
        }
    }
    Ok(assemble_theta(set.size(), auto.best, cross.best))
}

/// Folds per-pair maxima, already reduced, into a report. Inputs for each kind
/// must come from a scan in lexicographic order.
pub(crate) fn assemble_theta(
    m: usize,
    auto: Option<(f64, Witness)>,
    cross: Option<(f64, Witness)>,
) -> ThetaReport {
    let theta_a_sq = auto.map_or(0.0, |(v, _)| v);
    let theta_c_sq = if m > 1 {
        Some(cross.map_or(0.0, |(v, _)| v))
    } else {
        None
    };
    ThetaReport {
        theta_a_sq,
        theta_c_sq,
        theta_max_sq: theta_c_sq.map_or(theta_a_sq, |c| theta_a_sq.max(c)),
        argmax_a: auto.map(|(_, w)| w),
        argmax_c: if m > 1 { cross.map(|(_, w)| w) } else { None },
    }
}

/// Streams |A_{m,m′}(τ,ν)|² over the LAZ in (τ, ν) ascending order, skipping
/// the auto origin.
pub fn scan_pair<E, F>(set: &SequenceSet, m: usize, mp: usize, laz: LazSpec, engine: &E, mut f: F)
where
    E: DopplerEngine + ?Sized,
    F: FnMut(f64, Witness),
{
    let x = set.members()[m].entries();
    let y = set.members()[mp].entries();
    let mut lag = Vec::with_capacity(x.len());
    let mut row = vec![Complex64::new(0.0, 0.0); 2 * laz.z_y - 1];
    for tau in laz.delays() {
        lag_product(x, y, tau, &mut lag);
        engine.doppler_row(&lag, laz.z_y - 1, &mut row);
        for (nu, a) in laz.dopplers().zip(row.iter()) {
            if m == mp && tau == 0 && nu == 0 {
                continue;
            }
            f(
                a.norm_sqr(),
                Witness {
                    m,
                    m_prime: mp,
                    tau,
                    nu,
                },
            );
        }
    }
}

/// Maximum over one ordered pair, first argmax in (τ, ν) order.
pub fn pair_max<E: DopplerEngine + ?Sized>(
    set: &SequenceSet,
    m: usize,
    mp: usize,
    laz: LazSpec,
    engine: &E,
) -> Option<(f64, Witness)> {
    let mut r = Running::default();
    scan_pair(set, m, mp, laz, engine, |v, w| r.offer(v, w));
    r.best
}

/// Combines per-pair maxima (given in (m, m′) ascending order) into a report.
pub fn theta_from_pair_maxima(
    m: usize,
    maxima: impl IntoIterator<Item = Option<(f64, Witness)>>,
) -> ThetaReport {
    let mut auto = Running::default();
    let mut cross = Running::default();
    for (v, w) in maxima.into_iter().flatten() {
        if w.m == w.m_prime {
            auto.offer(v, w);
        } else {
            cross.offer(v, w);
        }
    }
    assemble_theta(m, auto.best, cross.best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(n: usize) -> Sequence {
        Sequence::new(vec![Complex64::new(1.0, 0.0); n]).unwrap()
    }

    fn chu5_2() -> Sequence {
        let n = 5.0;
        Sequence::from_phases(
            &(0..5)
                .map(|t| PI * 2.0 * (t * t) as f64 / n)
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn origin_is_n() {
        let x = chu5_2();
        let a = aperiodic_af(&x, &x, 0, 0).unwrap();
        assert!((a.re - 5.0).abs() < 1e-12 && a.im.abs() < 1e-12);
    }

    #[test]
    fn all_ones_lag_one() {
        let x = ones(4);
        let a = aperiodic_af(&x, &x, 1, 0).unwrap();
        assert!((a - Complex64::new(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn chu_lag_one_has_unit_energy() {
        // four unit terms e^{j2π·2·(−t−1/2)... } summed by hand below
        let x = chu5_2();
        let direct: Complex64 = (0..4)
            .map(|t| x.entries()[t] * x.entries()[t + 1].conj())
            .sum();
        let a = aperiodic_af(&x, &x, 1, 0).unwrap();
        assert!((a - direct).norm() < 1e-12);
        assert!((a.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn range_errors() {
        let x = ones(3);
        let y = ones(4);
        assert!(matches!(
            aperiodic_af(&x, &y, 0, 0),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            aperiodic_af(&x, &x, 3, 0),
            Err(Error::DelayOutOfRange { .. })
        ));
        assert!(matches!(
            aperiodic_af(&x, &x, 0, -3),
            Err(Error::DopplerOutOfRange { .. })
        ));
        assert!(af_surface(&x, &x, LazSpec { z_x: 4, z_y: 1 }).is_err());
    }

    #[test]
    fn surface_origin_and_zero_delay() {
        let x = chu5_2();
        let s = af_surface(&x, &x, LazSpec::global(5)).unwrap();
        assert!((s.get(0, 0).unwrap() - 25.0).abs() < 1e-9);
        for nu in 1..5 {
            assert!(s.get(0, nu).unwrap().sqrt() < 1e-9 * 5.0);
        }
        assert_eq!(s.get(5, 0), None);
        assert_eq!(s.iter().count(), 81);
    }

    #[test]
    fn theta_all_ones_length_two() {
        let set = SequenceSet::single(ones(2));
        let r = theta_report(&set, LazSpec::new(2, 1).unwrap()).unwrap();
        assert!((r.theta_a_sq - 1.0).abs() < 1e-12);
        assert_eq!(r.theta_c_sq, None);
        assert_eq!(r.theta_max_sq, r.theta_a_sq);
        // A(−1,0) and A(1,0) tie; the smaller τ wins
        assert_eq!(
            r.argmax_a,
            Some(Witness {
                m: 0,
                m_prime: 0,
                tau: -1,
                nu: 0
            })
        );
    }

    #[test]
    fn theta_zero_delay_laz_is_zero() {
        let set = SequenceSet::single(chu5_2());
        let r = theta_report(&set, LazSpec::new(1, 5).unwrap()).unwrap();
        assert!(r.theta_a_sq < (1e-9 * 5.0f64).powi(2));
        let r = theta_report(&set, LazSpec::new(1, 1).unwrap()).unwrap();
        assert_eq!(r.argmax_a, None);
        assert_eq!(r.theta_a_sq, 0.0);
    }
}

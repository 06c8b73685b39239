//! Rayon-parallel scans. Work is split into independent pieces and reduced
//! in a fixed order, so results do not depend on thread scheduling.

use aflaz_core::af::{pair_max, theta_from_pair_maxima};
use aflaz_core::oracle::{search_range, search_space, SearchResult};
use aflaz_core::{
    af::lag_product, Complex64, DopplerEngine, LazSpec, Result, Sequence, SequenceSet, ThetaReport,
};
use rayon::prelude::*;

use crate::fft::FftDoppler;

/// θ statistics with one task per ordered pair (m, m′).
pub fn theta_report_par<E: DopplerEngine + Sync>(
    set: &SequenceSet,
    laz: LazSpec,
    engine: &E,
) -> Result<ThetaReport> {
    laz.validate_for(set.seq_len())?;
    let m = set.size();
    let maxima: Vec<_> = (0..m * m)
        .into_par_iter()
        .map(|k| pair_max(set, k / m, k % m, laz, engine))
        .collect();
    Ok(theta_from_pair_maxima(m, maxima))
}

/// Exhaustive K-PSK search split into contiguous code ranges.
pub fn exhaustive_search_par(
    alphabet: usize,
    n: usize,
    m: usize,
    lazs: &[LazSpec],
) -> Result<Vec<SearchResult>> {
    let space = search_space(alphabet, n, m)?;
    let chunk = (space / 256).max(64);
    let starts: Vec<u64> = (0..space).step_by(chunk as usize).collect();
    let parts: Vec<Vec<Option<SearchResult>>> = starts
        .par_iter()
        .map(|&s| search_range(alphabet, n, m, lazs, s..(s + chunk).min(space)))
        .collect::<Result<_>>()?;
    let mut acc: Vec<Option<SearchResult>> = vec![None; lazs.len()];
    for part in parts {
        for (slot, r) in acc.iter_mut().zip(part) {
            *slot = match (slot.take(), r) {
                (Some(a), Some(b)) => Some(a.merge(b)),
                (a, b) => a.or(b),
            };
        }
    }
    Ok(acc
        .into_iter()
        .map(|r| r.expect("non-empty search space"))
        .collect())
}

/// For each delay in `taus`, the largest `|A_{x,y}(τ, ν)|²` over every
/// Doppler bin, with the bin (in [0, N)) where it occurs first.
pub fn row_maxima(
    x: &Sequence,
    y: &Sequence,
    taus: &[i64],
    engine: &FftDoppler,
) -> Vec<(i64, f64, usize)> {
    taus.par_iter()
        .map_init(
            || (Vec::new(), Vec::new()),
            |(lag, buf): &mut (Vec<Complex64>, Vec<Complex64>), &tau| {
                lag_product(x.entries(), y.entries(), tau, lag);
                engine.full_row(lag, buf);
                let mut best = (0.0f64, 0usize);
                for (k, z) in buf.iter().enumerate() {
                    let v = z.norm_sqr();
                    if v > best.0 {
                        best = (v, k);
                    }
                }
                (tau, best.0, best.1)
            },
        )
        .collect()
}

/// For each delay in `taus`, the largest `|A_{x,y}(τ, ν)|²` over `|ν| ≤ h`.
pub fn row_maxima_within(
    x: &Sequence,
    y: &Sequence,
    taus: &[i64],
    h: usize,
    engine: &FftDoppler,
) -> Vec<(i64, f64)> {
    let n = x.len() as i64;
    taus.par_iter()
        .map_init(
            || (Vec::new(), Vec::new()),
            |(lag, buf): &mut (Vec<Complex64>, Vec<Complex64>), &tau| {
                lag_product(x.entries(), y.entries(), tau, lag);
                engine.full_row(lag, buf);
                let best = (-(h as i64)..=h as i64)
                    .map(|nu| buf[nu.rem_euclid(n) as usize].norm_sqr())
                    .fold(0.0f64, f64::max);
                (tau, best)
            },
        )
        .collect()
}

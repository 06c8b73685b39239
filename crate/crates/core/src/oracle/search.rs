//! Exhaustive search over K-PSK sequence sets.
//!
//! A set of M sequences of length N is encoded as N·M base-K digits, most
//! significant first, member-major. The very first symbol is pinned to 1
//! (θ is invariant under a global phase), so codes run over K^(NM − 1)
//! values and numeric order equals lexicographic order of the encoding.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::Range;

use num_complex::Complex64;

use crate::af::{lag_product, DirectDoppler, DopplerEngine};
use crate::error::{Error, Result};
use crate::sequence::{LazSpec, Sequence, SequenceSet};

/// Upper limit on K^(N·M).
pub const SEARCH_BUDGET: u128 = 100_000_000;

/// `e^{j2πk/K}`, exact on the quarter-turn points.
pub fn psk_symbol(k: usize, alphabet: usize) -> Complex64 {
    let k = k % alphabet;
    if (4 * k).is_multiple_of(alphabet) {
        match 4 * k / alphabet {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    } else {
        Complex64::from_polar(1.0, 2.0 * PI * k as f64 / alphabet as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub laz: LazSpec,
    pub theta_max_sq: f64,
    pub witness: SequenceSet,
    pub witness_code: u64,
    pub alphabet_size: usize,
    /// Codes examined.
    pub explored: u64,
}

impl SearchResult {
    /// Min-reduction of two partial results for the same LAZ; ties keep the
    /// smaller code.
    pub fn merge(self, other: Self) -> Self {
        let explored = self.explored + other.explored;
        let keep_other = other.theta_max_sq < self.theta_max_sq
            || (other.theta_max_sq == self.theta_max_sq && other.witness_code < self.witness_code);
        let mut best = if keep_other { other } else { self };
        best.explored = explored;
        best
    }
}

/// Number of codes, after pinning the first symbol, checked against the budget.
pub fn search_space(alphabet: usize, n: usize, m: usize) -> Result<u64> {
    if alphabet < 2 || n == 0 || m == 0 {
        return Err(Error::param("needs alphabet >= 2, N >= 1, M >= 1"));
    }
    let digits = (n * m) as u32;
    let size = (alphabet as u128).checked_pow(digits).unwrap_or(u128::MAX);
    if size > SEARCH_BUDGET {
        return Err(Error::BudgetExceeded {
            size,
            budget: SEARCH_BUDGET,
        });
    }
    Ok((size / alphabet as u128) as u64)
}

fn decode(code: u64, alphabet: usize, n: usize, m: usize, out: &mut [Vec<Complex64>]) {
    let total = n * m;
    let mut c = code;
    for pos in (1..total).rev() {
        let digit = (c % alphabet as u64) as usize;
        c /= alphabet as u64;
        out[pos / n][pos % n] = psk_symbol(digit, alphabet);
    }
    out[0][0] = Complex64::new(1.0, 0.0);
}

/// The set encoded by `code`.
pub fn decode_set(code: u64, alphabet: usize, n: usize, m: usize) -> Result<SequenceSet> {
    let mut buf = vec![vec![Complex64::new(0.0, 0.0); n]; m];
    decode(code, alphabet, n, m, &mut buf);
    SequenceSet::new(buf.into_iter().map(Sequence::new).collect::<Result<_>>()?)
}

/// |A_{m,m′}(τ, ν)|² over the whole plane, indexed
/// `[(pair · (2N−1) + τ + N − 1) · (2N−1) + ν + N − 1]`, pair = m·M + m′.
struct PlaneTable {
    n: usize,
    m: usize,
    values: Vec<f64>,
    lag: Vec<Complex64>,
    row: Vec<Complex64>,
}

impl PlaneTable {
    fn new(n: usize, m: usize) -> Self {
        let w = 2 * n - 1;
        Self {
            n,
            m,
            values: vec![0.0; m * m * w * w],
            lag: Vec::with_capacity(n),
            row: vec![Complex64::new(0.0, 0.0); w],
        }
    }

    fn fill(&mut self, seqs: &[Vec<Complex64>], engine: &DirectDoppler) {
        let (n, w) = (self.n, 2 * self.n - 1);
        for a in 0..self.m {
            for b in 0..self.m {
                let pair = a * self.m + b;
                for ti in 0..w {
                    let tau = ti as i64 - (n as i64 - 1);
                    lag_product(&seqs[a], &seqs[b], tau, &mut self.lag);
                    engine.doppler_row(&self.lag, n - 1, &mut self.row);
                    let base = (pair * w + ti) * w;
                    for (slot, z) in self.values[base..base + w].iter_mut().zip(&self.row) {
                        *slot = z.norm_sqr();
                    }
                }
            }
        }
    }

    fn theta_max_sq(&self, laz: LazSpec) -> f64 {
        let (n, w) = (self.n as i64, 2 * self.n - 1);
        let (hx, hy) = (laz.z_x as i64 - 1, laz.z_y as i64 - 1);
        let mut best = 0.0_f64;
        for a in 0..self.m {
            for b in 0..self.m {
                let pair = a * self.m + b;
                for tau in -hx..=hx {
                    let base = (pair * w + (tau + n - 1) as usize) * w;
                    for nu in -hy..=hy {
                        if a == b && tau == 0 && nu == 0 {
                            continue;
                        }
                        best = best.max(self.values[base + (nu + n - 1) as usize]);
                    }
                }
            }
        }
        best
    }
}

/// Minimum θ_max² for every LAZ in `lazs` over the codes in `codes`.
///
/// Returns `None` entries only when `codes` is empty.
pub fn search_range(
    alphabet: usize,
    n: usize,
    m: usize,
    lazs: &[LazSpec],
    codes: Range<u64>,
) -> Result<Vec<Option<SearchResult>>> {
    let space = search_space(alphabet, n, m)?;
    for laz in lazs {
        laz.validate_for(n)?;
    }
    let codes = codes.start.min(space)..codes.end.min(space);
    let engine = DirectDoppler::new(n);
    let mut table = PlaneTable::new(n, m);
    let mut seqs = vec![vec![Complex64::new(0.0, 0.0); n]; m];
    let mut best: Vec<Option<(f64, u64)>> = vec![None; lazs.len()];
    for code in codes.clone() {
        decode(code, alphabet, n, m, &mut seqs);
        table.fill(&seqs, &engine);
        for (slot, laz) in best.iter_mut().zip(lazs) {
            let v = table.theta_max_sq(*laz);
            if slot.is_none_or(|(b, _)| v < b) {
                *slot = Some((v, code));
            }
        }
    }
    let explored = codes.end - codes.start;
    best.into_iter()
        .zip(lazs)
        .map(|(slot, laz)| {
            slot.map(|(v, code)| {
                Ok(SearchResult {
                    laz: *laz,
                    theta_max_sq: v,
                    witness: decode_set(code, alphabet, n, m)?,
                    witness_code: code,
                    alphabet_size: alphabet,
                    explored,
                })
            })
            .transpose()
        })
        .collect()
}

/// Full enumeration for several LAZs at once.
pub fn exhaustive_search_multi(
    alphabet: usize,
    n: usize,
    m: usize,
    lazs: &[LazSpec],
) -> Result<Vec<SearchResult>> {
    let space = search_space(alphabet, n, m)?;
    search_range(alphabet, n, m, lazs, 0..space)?
        .into_iter()
        .map(|r| r.ok_or_else(|| Error::param("empty search space")))
        .collect()
}

/// Minimum θ_max² over all K-PSK sets of M sequences of length N.
pub fn exhaustive_search(
    alphabet: usize,
    n: usize,
    m: usize,
    laz: LazSpec,
) -> Result<SearchResult> {
    Ok(exhaustive_search_multi(alphabet, n, m, &[laz])?.remove(0))
}

//! The weighted matrix U and the inequalities around ‖UUᴴ‖²_F.
//!
//! U has one row per (m, r, i), m < M, r < Z_y, i < dim w, ordered m-major.
//! Row (m, r, i) is `√p_r √w_i` times the cyclic right-shift by i of
//! `x̃^{m,r}`, the length-(2N − 1) zero padding of `x^m_t e^{j2πrt/N}`.
//! The inner product of rows (m, r, i) and (m′, r′, i′) has modulus
//! `√(p_r p_{r′} w_i w_{i′}) · |A_{m,m′}(τ, r − r′)|` with `τ ≡ i′ − i`
//! reduced to (−N, N) modulo 2N − 1, which gives
//!
//! ```text
//! ‖UᴴU‖²_F = ‖UUᴴ‖²_F = Σ p_r p_{r′} w_i w_{i′} |A_{m,m′}(τ, r − r′)|²
//! ```

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::af::{aperiodic_af, theta_report};
use crate::bounds::{BoundParams, DopplerWeight, LagProfile, WeightVector};
use crate::error::{Error, Result};
use crate::sequence::{LazSpec, SequenceSet};

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedMatrixU {
    n: usize,
    m: usize,
    z_y: usize,
    dim_w: usize,
    data: Vec<Complex64>,
}

impl WeightedMatrixU {
    pub fn rows(&self) -> usize {
        self.m * self.z_y * self.dim_w
    }

    pub fn cols(&self) -> usize {
        2 * self.n - 1
    }

    pub fn row_index(&self, m: usize, r: usize, i: usize) -> usize {
        (m * self.z_y + r) * self.dim_w + i
    }

    pub fn row(&self, idx: usize) -> &[Complex64] {
        let c = self.cols();
        &self.data[idx * c..(idx + 1) * c]
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols() + col]
    }

    /// (M, Z_y, dim w).
    pub fn shape_params(&self) -> (usize, usize, usize) {
        (self.m, self.z_y, self.dim_w)
    }
}

fn check_dims(set: &SequenceSet, w: &WeightVector, p: &DopplerWeight, laz: LazSpec) -> Result<()> {
    let n = set.seq_len();
    laz.validate_for(n)?;
    let full = laz.z_x == n && w.dim() == 2 * n - 1;
    if w.dim() != laz.z_x && !full {
        return Err(Error::DimensionMismatch {
            what: "delay weights (Zx, or 2N-1 when Zx = N)",
            expected: laz.z_x,
            found: w.dim(),
        });
    }
    if p.dim() != laz.z_y {
        return Err(Error::DimensionMismatch {
            what: "Doppler weights (Zy)",
            expected: laz.z_y,
            found: p.dim(),
        });
    }
    Ok(())
}

/// Builds U for `set` under delay weights `w` (Z_x entries, or 2N − 1 when
/// Z_x = N) and Doppler weights `p` (Z_y entries).
pub fn build_u(
    set: &SequenceSet,
    w: &WeightVector,
    p: &DopplerWeight,
    laz: LazSpec,
) -> Result<WeightedMatrixU> {
    check_dims(set, w, p, laz)?;
    let n = set.seq_len();
    let cols = 2 * n - 1;
    let mut u = WeightedMatrixU {
        n,
        m: set.size(),
        z_y: laz.z_y,
        dim_w: w.dim(),
        data: vec![Complex64::new(0.0, 0.0); set.size() * laz.z_y * w.dim() * cols],
    };
    let mut padded = vec![Complex64::new(0.0, 0.0); cols];
    for (m, seq) in set.members().iter().enumerate() {
        for (r, &pr) in p.values().iter().enumerate() {
            for (t, &x) in seq.entries().iter().enumerate() {
                let k = (r * t) % n;
                padded[t] = x * Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
            }
            for (i, &wi) in w.values().iter().enumerate() {
                let scale = (pr * wi).sqrt();
                let base = u.row_index(m, r, i) * cols;
                for k in 0..cols {
                    u.data[base + (k + i) % cols] = padded[k] * scale;
                }
            }
        }
    }
    Ok(u)
}

fn gram_frobenius_sq(len: usize, inner: impl Fn(usize, usize) -> Complex64) -> f64 {
    let mut total = 0.0;
    for a in 0..len {
        total += inner(a, a).norm_sqr();
        for b in a + 1..len {
            total += 2.0 * inner(a, b).norm_sqr();
        }
    }
    total
}

/// (‖UᴴU‖²_F, ‖UUᴴ‖²_F) from the two explicit Gram matrices.
pub fn frobenius_pair(u: &WeightedMatrixU) -> (f64, f64) {
    let (rows, cols) = (u.rows(), u.cols());
    let col_gram = gram_frobenius_sq(cols, |a, b| {
        (0..rows)
            .map(|r| u.entry(r, a).conj() * u.entry(r, b))
            .sum()
    });
    let row_gram = gram_frobenius_sq(rows, |a, b| {
        u.row(a)
            .iter()
            .zip(u.row(b))
            .map(|(x, y)| x * y.conj())
            .sum()
    });
    (col_gram, row_gram)
}

/// Delay of the cell paired with rows i and i′: `i′ − i` reduced to (−N, N)
/// modulo 2N − 1.
pub fn pair_delay(i: usize, i_prime: usize, n: usize) -> i64 {
    let k = (2 * n - 1) as i64;
    let t = (i_prime as i64 - i as i64).rem_euclid(k);
    if t > n as i64 - 1 {
        t - k
    } else {
        t
    }
}

/// `Σ p_r p_{r′} w_i w_{i′} |A_{m,m′}(τ, r − r′)|²` evaluated with
/// [`aperiodic_af`], independently of U.
pub fn af_expansion(
    set: &SequenceSet,
    w: &WeightVector,
    p: &DopplerWeight,
    laz: LazSpec,
) -> Result<f64> {
    check_dims(set, w, p, laz)?;
    let n = set.seq_len();
    let mut total = 0.0;
    for x in set.members() {
        for y in set.members() {
            for (i, &wi) in w.values().iter().enumerate() {
                for (ip, &wip) in w.values().iter().enumerate() {
                    if wi == 0.0 || wip == 0.0 {
                        continue;
                    }
                    let tau = pair_delay(i, ip, n);
                    for (r, &pr) in p.values().iter().enumerate() {
                        for (rp, &prp) in p.values().iter().enumerate() {
                            let nu = r as i64 - rp as i64;
                            let a = aperiodic_af(x, y, tau, nu)?.norm_sqr();
                            total += pr * prp * wi * wip * a;
                        }
                    }
                }
            }
        }
    }
    Ok(total)
}

/// One side of an inequality, evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CheckOutcome {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

const CHECK_TOL: f64 = 1e-9;

/// `‖UᴴU‖²_F ≥ M²(N − wᵀLw)`.
pub fn lemma3_check(
    u: &WeightedMatrixU,
    w: &WeightVector,
    n: usize,
    m: usize,
) -> Result<CheckOutcome> {
    let l = LagProfile::new(w.values(), n)?.l_form();
    let rhs = (m * m) as f64 * (n as f64 - l);
    let (lhs, _) = frobenius_pair(u);
    Ok(CheckOutcome {
        lhs,
        rhs,
        pass: lhs >= rhs - CHECK_TOL * rhs.abs().max(1.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Lemma4Variant {
    /// θ_c² and θ_a² kept separate.
    Separate,
    /// Both replaced by θ_max².
    Max,
}

/// `‖UUᴴ‖²_F ≤` the upper bound built from the set's true θ statistics over
/// `params`' LAZ, with the last-delay cells d ∈ [d₀, D] capped by d²
/// (d₀ = E for Z_x-dimensional weights, 1 for 2N − 1).
pub fn lemma4_check(
    u: &WeightedMatrixU,
    set: &SequenceSet,
    params: &BoundParams,
    w: &WeightVector,
    p: &DopplerWeight,
    variant: Lemma4Variant,
) -> Result<CheckOutcome> {
    let n = set.seq_len();
    if params.n != n || params.m != set.size() {
        return Err(Error::param("params do not describe this set"));
    }
    let laz = LazSpec::new(params.z_x, params.z_y)?;
    check_dims(set, w, p, laz)?;
    let theta = theta_report(set, laz)?;
    let profile = LagProfile::new(w.values(), n)?;
    let j = profile.j_forms();
    let lo = if w.dim() == params.z_x { params.e() } else { 1 }.max(1);
    let (mut s, mut d2j) = (0.0, 0.0);
    for d in lo..=params.d.min(n) {
        s += j[d];
        d2j += (d * d) as f64 * j[d];
    }
    let (nf, mf) = (n as f64, set.size() as f64);
    let w2 = profile.norm_sq();
    let p2 = p.norm_sq();
    let rhs = match variant {
        Lemma4Variant::Separate => {
            let tc = theta.theta_c_sq.unwrap_or(0.0);
            tc * mf * (mf - 1.0) * (1.0 - s)
                + theta.theta_a_sq * mf * (1.0 - w2 - s)
                + mf * nf * nf * p2 * w2
                + mf * mf * d2j
        }
        Lemma4Variant::Max => {
            let tm = theta.theta_max_sq;
            mf * mf * tm + mf * (nf * nf * p2 - tm) * w2 - mf * mf * (tm * s - d2j)
        }
    };
    let (_, lhs) = frobenius_pair(u);
    Ok(CheckOutcome {
        lhs,
        rhs,
        pass: lhs <= rhs + CHECK_TOL * rhs.abs().max(1.0),
    })
}

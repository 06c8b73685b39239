//! Maximisation over weight families, q and D, plus the list of every bound
//! that applies at a parameter point.

use alloc::vec::Vec;

use super::closed_form::{benchmark_ye2022, corollary_closed_forms, ClosedForm};
use super::theorem::{dopt_search, simplified_bound, theorem1_bounds, theorem2_bounds, Regime};
use super::weights::{
    chebyshev_q_opt, weights_a, weights_b, weights_c, WeightFamily, WeightVector,
};
use super::{BoundParams, BoundReport};
use crate::error::{Error, Result};

/// How D is chosen for each candidate weight vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum DPolicy {
    #[default]
    Zero,
    Fixed(usize),
    Optimal,
}

fn regime_of(w: &WeightVector, p: &BoundParams) -> Regime {
    if p.z_x == p.n && w.dim() == 2 * p.n - 1 && w.dim() != p.z_x {
        Regime::T2
    } else {
        Regime::T1
    }
}

/// Every member of `family` usable at `params`, in increasing q.
///
/// A and B live on the first Z_x delays and need Z_x > 1; B is limited to
/// q ≤ ⌊π/γ⌋ + 1 and to M·Z_y ≤ N². When Z_x = N both also appear with
/// 2N − 1 entries for the supports longer than N, and C is added.
pub fn candidate_weights(params: &BoundParams, family: WeightFamily) -> Vec<WeightVector> {
    let p = params;
    let full = p.z_x == p.n && p.n >= 2;
    let long = 2 * p.n - 1;
    let mut out = Vec::new();
    match family {
        WeightFamily::A if p.z_x >= 2 => {
            out.extend((1..=p.z_x).filter_map(|q| weights_a(q, p.z_x).ok()));
            if full {
                out.extend((p.n + 1..=long).filter_map(|q| weights_a(q, long).ok()));
            }
        }
        WeightFamily::B if p.z_x >= 2 => {
            if let Ok(qmax) = chebyshev_q_opt(p.n, p.m, p.z_y) {
                out.extend(
                    (1..=qmax.min(p.z_x)).filter_map(|q| weights_b(q, p.z_x, p.n, p.m, p.z_y).ok()),
                );
                if full {
                    out.extend(
                        (p.n + 1..=qmax.min(long))
                            .filter_map(|q| weights_b(q, long, p.n, p.m, p.z_y).ok()),
                    );
                }
            }
        }
        WeightFamily::C if full => out.extend(weights_c(p.n)),
        _ => {}
    }
    out
}

fn evaluate(w: &WeightVector, p: &BoundParams, policy: DPolicy) -> Result<BoundReport> {
    let regime = regime_of(w, p);
    match policy {
        DPolicy::Zero | DPolicy::Fixed(_) => {
            let d = if let DPolicy::Fixed(d) = policy { d } else { 0 };
            let p = p.with_d(d);
            match regime {
                Regime::T1 => theorem1_bounds(w, &p),
                Regime::T2 => theorem2_bounds(w, &p),
            }
        }
        DPolicy::Optimal => Ok(dopt_search(w, p, regime)?.best),
    }
}

/// Largest applicable weighted bound over `families`, every q, and D per
/// `policy`. Ties keep the earlier family, then the smaller q, then the
/// smaller D.
pub fn best_bound(
    params: &BoundParams,
    families: &[WeightFamily],
    policy: DPolicy,
) -> Result<BoundReport> {
    BoundParams::new(params.n, params.m, params.z_x, params.z_y)?;
    let mut best: Option<BoundReport> = None;
    for &family in families {
        for w in candidate_weights(params, family) {
            let r = evaluate(&w, params, policy)?;
            if !r.applicable {
                continue;
            }
            if best.as_ref().is_none_or(|b| r.raw > b.raw) {
                best = Some(r);
            }
        }
    }
    best.ok_or_else(|| {
        Error::param(alloc::format!(
            "no applicable weighted bound at N={} M={} Zx={} Zy={}",
            params.n,
            params.m,
            params.z_x,
            params.z_y
        ))
    })
}

/// Every applicable bound at `params`: weighted bounds for all A/B/C
/// candidates at every D, their last-delay-free simplifications, all closed
/// forms (each admissible q where one is needed) and the benchmark.
pub fn bound_catalog(params: &BoundParams) -> Result<Vec<BoundReport>> {
    let p = BoundParams::new(params.n, params.m, params.z_x, params.z_y)?;
    let mut out = Vec::new();
    for family in [WeightFamily::A, WeightFamily::B, WeightFamily::C] {
        for w in candidate_weights(&p, family) {
            let regime = regime_of(&w, &p);
            for d in 0..p.n {
                let pd = p.with_d(d);
                out.push(match regime {
                    Regime::T1 => theorem1_bounds(&w, &pd)?,
                    Regime::T2 => theorem2_bounds(&w, &pd)?,
                });
            }
            out.push(simplified_bound(&w, &p)?);
        }
    }
    for kind in ClosedForm::ALL {
        match kind {
            ClosedForm::UniformQ | ClosedForm::ChebyshevQ => {
                for q in 1..=p.z_x {
                    out.push(corollary_closed_forms(kind, &p, Some(q))?);
                }
            }
            _ => out.push(corollary_closed_forms(kind, &p, None)?),
        }
    }
    if p.z_x >= 2 {
        out.push(benchmark_ye2022(&p)?);
    }
    out.retain(|r| r.applicable);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::BoundName;

    #[test]
    fn best_is_at_least_each_candidate() {
        let p = BoundParams::new(32, 2, 32, 4).unwrap();
        let fams = [WeightFamily::A, WeightFamily::B, WeightFamily::C];
        let best = best_bound(&p, &fams, DPolicy::Optimal).unwrap();
        for f in fams {
            for w in candidate_weights(&p, f) {
                let r = evaluate(&w, &p, DPolicy::Zero).unwrap();
                if r.applicable {
                    assert!(best.value >= r.value);
                }
            }
        }
    }

    #[test]
    fn candidates_respect_laz() {
        let p = BoundParams::new(16, 1, 1, 2).unwrap();
        assert!(candidate_weights(&p, WeightFamily::A).is_empty());
        assert!(best_bound(&p, &[WeightFamily::A], DPolicy::Zero).is_err());
        let p = BoundParams::new(16, 1, 8, 2).unwrap();
        assert_eq!(candidate_weights(&p, WeightFamily::A).len(), 8);
        assert!(candidate_weights(&p, WeightFamily::C).is_empty());
        let p = BoundParams::new(8, 1, 8, 2).unwrap();
        assert_eq!(candidate_weights(&p, WeightFamily::A).len(), 15);
        assert_eq!(candidate_weights(&p, WeightFamily::C).len(), 1);
        let p = BoundParams::new(2, 3, 2, 2).unwrap();
        assert!(candidate_weights(&p, WeightFamily::B).is_empty());
    }

    #[test]
    fn catalog_has_only_applicable_entries() {
        let p = BoundParams::new(5, 2, 5, 5).unwrap();
        let cat = bound_catalog(&p).unwrap();
        assert!(cat.iter().all(|r| r.applicable));
        assert!(cat.iter().any(|r| r.name == BoundName::Global));
        assert!(cat.iter().any(|r| r.name == BoundName::Benchmark));
    }
}

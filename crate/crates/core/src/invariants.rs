//! Width, height and local charge.
//!
//! The width is the length of `M^vv / M` for `M = pi_* E`, and the height
//! is the length of `R^1 pi_* E`. The local charge is their sum.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{RowSpace, SparseVec};
use crate::algebra::{Field, Fp, Rational, ZuPoly};
use crate::bundle::{ext_slots, is_instanton, CanonicalBundle};
use crate::pushforward::stabilized_presentation;
use crate::{ComputeOptions, Error, FieldMode, Truncation};

/// How the reported height was confirmed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeightMethod {
    /// Čech computation only; no closed form applies.
    Direct,
    /// Čech computation, equal to the closed form in `m` and `mu`.
    ClosedForm,
    /// Čech computation, equal to the formula for split bundles.
    SplitFormula,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub k: u32,
    pub j: u32,
    /// Canonical serialisation of `p`.
    pub p: String,
    pub width: usize,
    pub height: usize,
    pub chi: usize,
    pub is_instanton: bool,
    /// `j mod k`.
    pub split_class: u32,
    #[serde(rename = "R_used")]
    pub r_used: u32,
    pub stabilized: bool,
    pub height_method: HeightMethod,
}

/// Width together with the truncation it was computed at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WidthReport {
    pub width: usize,
    pub r_used: u32,
    pub stabilized: bool,
}

fn width_over<F: Field>(b: &CanonicalBundle, opts: &ComputeOptions) -> Result<(WidthReport, Vec<usize>), Error> {
    let st = stabilized_presentation::<F>(b, opts)?;
    Ok((WidthReport { width: st.width, r_used: st.r_used, stabilized: st.stabilized }, st.hilbert))
}

/// Width with truncation diagnostics. In prime mode with confirmation the
/// presentation is rebuilt over the rationals at the bound found mod `p`
/// and both the width and the Hilbert function must agree.
pub fn width_report(b: &CanonicalBundle, opts: &ComputeOptions) -> Result<WidthReport, Error> {
    match opts.field {
        FieldMode::Rational => Ok(width_over::<Rational>(b, opts)?.0),
        FieldMode::Prime { confirm } => {
            let (fp, hilbert) = width_over::<Fp>(b, opts)?;
            if confirm {
                let fixed = ComputeOptions { truncation: Truncation::Fixed(fp.r_used), ..*opts };
                let (q, q_hilbert) = width_over::<Rational>(b, &fixed)?;
                if q.width != fp.width || q_hilbert != hilbert {
                    return Err(Error::Unconfirmed(format!(
                        "width {} over GF(p) but {} over Q at R = {}",
                        fp.width, q.width, fp.r_used
                    )));
                }
            }
            Ok(fp)
        }
    }
}

pub fn width(b: &CanonicalBundle, opts: &ComputeOptions) -> Result<usize, Error> {
    Ok(width_report(b, opts)?.width)
}

/// Gap set `{(r, s) : kr < s < j}`: the monomials of `C^1` not hit by
/// `z^j a` nor absorbed by the second chart.
fn gap_set(k: u32, j: u32) -> Vec<(u32, i64)> {
    let (ki, ji) = (k as i64, j as i64);
    let mut out = Vec::new();
    let mut r = 0i64;
    while k as i64 * r < ji - 1 {
        for s in (ki * r + 1)..ji {
            out.push((r as u32, s));
        }
        r += 1;
    }
    out
}

/// Length of `R^1 pi_* E` from the two-chart Čech complex.
///
/// Modulo the coboundaries of `b` and of `a`, `H^1` is spanned by the gap
/// monomials `u^r z^s` with `kr < s < j`. The remaining coboundaries are
/// the gap parts of `p u^r' z^s'` for `0 <= s' <= kr' + j`. They are added
/// one `u`-degree `r'` at a time; since `p` is divisible by `u`, degrees
/// beyond the last gap row contribute nothing and the sum terminates.
pub fn height_direct(b: &CanonicalBundle) -> usize {
    let (k, j) = (b.k(), b.j());
    let gaps = gap_set(k, j);
    let Some(top) = gaps.iter().map(|(r, _)| *r).max() else {
        return 0;
    };
    let index = |r: u32, s: i64| gaps.iter().position(|g| *g == (r, s));
    let p = b.p();
    let mut span: RowSpace<Rational> = RowSpace::new();
    for rb in 0..top {
        for sb in 0..=(k as i64 * rb as i64 + j as i64) {
            let mut row: SparseVec<Rational> = p
                .terms()
                .filter_map(|(r, s, c)| index(r + rb, s + sb).map(|i| (i, c.clone())))
                .collect();
            row.sort_by_key(|(i, _)| *i);
            if !row.is_empty() {
                span.insert(&row);
            }
        }
    }
    gaps.len() - span.rank()
}

/// `mu (j - 1 - k (mu - 1)/2)` with `m` the lowest power of `u` in `p` and
/// `mu = min(m, floor((j - 2)/k) + 1)`. A lower bound for the height,
/// attained when `p` is holomorphic.
pub fn height_closed_form(b: &CanonicalBundle) -> Result<usize, Error> {
    let m = b.p().u_order().ok_or(Error::SplitBundle { k: b.k(), j: b.j() })? as i64;
    let (k, j) = (b.k() as i64, b.j() as i64);
    let mu = m.min((j - 2).div_euclid(k) + 1).max(0);
    Ok((mu * (2 * (j - 1) - k * (mu - 1)) / 2) as usize)
}

/// `sum_{r >= 0, kr <= j - 2} (j - 1 - kr)`, the height of `O(j) + O(-j)`.
pub fn height_split(k: u32, j: u32) -> usize {
    let (k, j) = (k as i64, j as i64);
    (0..).map(|r| j - 1 - k * r).take_while(|&t| t >= 1).sum::<i64>() as usize
}

/// Full report. The Čech height is authoritative. For `p = 0` it must
/// match the split formula; otherwise it is checked against the closed
/// form, with equality required when `p` is holomorphic.
pub fn local_charge(b: &CanonicalBundle, opts: &ComputeOptions) -> Result<InvariantReport, Error> {
    let height = height_direct(b);
    let height_method = if b.is_split() {
        let expected = height_split(b.k(), b.j());
        if expected != height {
            return Err(Error::CrossCheck(format!("height {height} but split formula gives {expected} for {b:?}")));
        }
        HeightMethod::SplitFormula
    } else if b.p_is_holomorphic() {
        let expected = height_closed_form(b)?;
        if expected != height {
            return Err(Error::CrossCheck(format!("height {height} but closed form gives {expected} for {b:?}")));
        }
        HeightMethod::ClosedForm
    } else {
        let bound = height_closed_form(b)?;
        if height < bound {
            return Err(Error::CrossCheck(format!("height {height} below the closed-form bound {bound} for {b:?}")));
        }
        HeightMethod::Direct
    };
    let w = width_report(b, opts)?;
    Ok(InvariantReport {
        k: b.k(),
        j: b.j(),
        p: b.p().to_canonical(),
        width: w.width,
        height,
        chi: w.width + height,
        is_instanton: is_instanton(b),
        split_class: b.j() % b.k(),
        r_used: w.r_used,
        stabilized: w.stabilized,
        height_method,
    })
}

/// Smallest local charge of a nontrivial instanton on `Z_k`.
pub fn min_charge(k: u32) -> u32 {
    k.saturating_sub(1)
}

/// Extension classes with random coefficients `n/d` on every slot,
/// `n in [-9, 9] \ {0}`, `d in [1, 4]`, deterministic in `(k, j, seed)`.
/// Duplicates are dropped; empty when there is no slot.
pub fn random_extension_classes(k: u32, j: u32, count: usize, seed: u64) -> Vec<CanonicalBundle> {
    let slots = ext_slots(k, j);
    if slots.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((k as u64) << 40) ^ ((j as u64) << 20));
    let mut out: Vec<CanonicalBundle> = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 100 * count {
        attempts += 1;
        let p = ZuPoly::from_terms(slots.iter().map(|&(r, s)| {
            let n = loop {
                let n: i64 = rng.gen_range(-9..=9);
                if n != 0 {
                    break n;
                }
            };
            let d: i64 = rng.gen_range(1..=4);
            ((r, s), Rational::from((n, d)))
        }));
        if out.iter().all(|b| *b.p() != p) {
            out.push(CanonicalBundle::new(k as i64, j as i64, p).expect("sampled slots are in support"));
        }
    }
    out
}

/// Extension classes for a scan: the lowest slot `u z^(k-j+1)` followed by
/// random full-support classes. When no slot exists the only class is the
/// split one.
pub fn sample_extension_classes(k: u32, j: u32, count: usize, seed: u64) -> Vec<CanonicalBundle> {
    if count == 0 {
        return Vec::new();
    }
    let slots = ext_slots(k, j);
    let Some(&(r, s)) = slots.first() else {
        return vec![CanonicalBundle::split(k as i64, j as i64).expect("split bundle")];
    };
    let lowest = ZuPoly::monomial(r, s, Rational::from(1));
    let mut out = vec![CanonicalBundle::new(k as i64, j as i64, lowest).expect("lowest slot is in support")];
    out.extend(random_extension_classes(k, j, count - 1, seed));
    out
}

/// Outcome of checking `chi >= k - 1` over sampled bundles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapScan {
    pub k: u32,
    pub bound: u32,
    /// One report per sampled bundle, in input order.
    pub rows: Vec<InvariantReport>,
    pub min_chi: Option<usize>,
    /// First row attaining the minimum.
    pub argmin: Option<usize>,
    /// Rows with `chi < k - 1`.
    pub violations: Vec<usize>,
}

impl GapScan {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Local charges of sampled bundles with splitting type `j >= k` for each
/// `j` in `j_list`; smaller `j` are skipped.
pub fn gap_scan(
    k: u32,
    j_list: &[u32],
    samples: usize,
    seed: u64,
    opts: &ComputeOptions,
) -> Result<GapScan, Error> {
    if k == 0 {
        return Err(Error::InvalidK(0));
    }
    let bundles: Vec<CanonicalBundle> = j_list
        .iter()
        .filter(|&&j| j >= k)
        .flat_map(|&j| sample_extension_classes(k, j, samples, seed))
        .collect();
    let rows = bundles.par_iter().map(|b| local_charge(b, opts)).collect::<Result<Vec<_>, _>>()?;
    let bound = min_charge(k);
    let min_chi = rows.iter().map(|r| r.chi).min();
    let argmin = min_chi.and_then(|m| rows.iter().position(|r| r.chi == m));
    let violations = rows.iter().enumerate().filter(|(_, r)| r.chi < bound as usize).map(|(i, _)| i).collect();
    Ok(GapScan { k, bound, rows, min_chi, argmin, violations })
}

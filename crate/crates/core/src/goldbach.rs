//! Counting additive splittings f = g + h of a monic polynomial into a
//! monic degree-d part and a monic lower-degree part with bounded
//! coefficients, and how many of those splittings use two irreducibles.
//!
//! For a split at degree n (1 ≤ n ≤ d−1) the high part is pinned except in
//! its low coefficients: g_j = f_j for n < j ≤ d−1, g_n = f_n − 1, and for
//! j < n the pair (g_j, h_j) = (f_j − h_j, h_j) ranges over choices that
//! keep both coordinates-bounded. Totals count those lattice choices;
//! representations additionally require both parts irreducible.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::irreducibility::{is_irreducible_with_budget, Engine, DEFAULT_BUDGET};
use crate::poly::OkPolynomial;
use crate::ring::{BoundMode, BoundSpec, OkElement};
use crate::scalar::Coord;

/// Pair counts over one bound: `total` admissible splittings, of which
/// `representations` have both parts irreducible and `reducible` do not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairTally {
    pub total: u128,
    pub representations: u128,
    pub reducible: u128,
}

/// One row of a sweep over growing bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub k: u64,
    pub mode: BoundMode,
    pub d: usize,
    pub f_text: String,
    pub y: u64,
    pub t_enum: u128,
    pub t_formula: Option<u128>,
    pub pairs_reducible: u128,
    pub r: u128,
    pub ratio_r_t: f64,
    pub ratio_r_2y: f64,
    pub ratio_r_4y: f64,
}

/// Least-squares slope/intercept summary of ln R against ln y.
#[derive(Debug, Clone, PartialEq)]
pub struct FitSummary {
    pub slope: f64,
    pub constant: f64,
    pub log2_constant: f64,
    pub ratio_r_2y_last: f64,
    pub ratio_r_4y_last: f64,
}

fn validated<I: Coord>(f: &OkPolynomial<I>) -> Result<usize> {
    let d = f
        .degree()
        .ok_or_else(|| Error::InvalidInput("cannot split the zero polynomial".into()))?;
    if !f.is_monic() {
        return Err(Error::InvalidInput("splitting requires a monic polynomial".into()));
    }
    if d < 2 {
        return Err(Error::InvalidInput("splitting requires degree >= 2".into()));
    }
    Ok(d)
}

/// Are the pinned coefficients of the degree-n high part admissible?
fn forced_part_admissible<I: Coord>(f: &OkPolynomial<I>, n: usize, bound: &BoundSpec) -> bool {
    let ring = f.ring();
    let d = f.degree().expect("validated");
    let g_n = f.coeff(n).sub(&OkElement::one());
    if !bound.admits(&g_n, ring) {
        return false;
    }
    ((n + 1)..d).all(|j| bound.admits(&f.coeff(j), ring))
}

/// Free-slot values: h_j with both h_j and f_j − h_j admissible.
fn slot_values<I: Coord>(
    f: &OkPolynomial<I>,
    j: usize,
    bound: &BoundSpec,
) -> Vec<OkElement<I>> {
    let ring = f.ring();
    let fj = f.coeff(j);
    bound
        .enumerate(ring)
        .into_iter()
        .filter(|h| bound.admits(&fj.sub(h), ring))
        .collect()
}

/// Splitting count alone (no irreducibility): the lattice total, plus the
/// closed-form box value when its hypothesis is satisfied.
pub fn total_pairs<I: Coord>(
    f: &OkPolynomial<I>,
    bound: &BoundSpec,
) -> Result<(u128, Option<u128>)> {
    let d = validated(f)?;
    let mut total: u128 = 0;
    for n in 1..d {
        if !forced_part_admissible(f, n, bound) {
            continue;
        }
        let mut product: u128 = 1;
        for j in 0..n {
            product = product.saturating_mul(slot_values(f, j, bound).len() as u128);
        }
        total += product;
    }
    let formula = match bound.mode {
        BoundMode::Box => t_formula_box(f, bound.y).ok(),
        BoundMode::Disk => None,
    };
    Ok((total, formula))
}

/// Closed-form box total: Σ_{n=1}^{d−1} Π_{j<n} (2y+1−|u_j|)(2y+1−|v_j|).
/// Requires y ≥ 1 + the largest coordinate magnitude among f_0..f_{d−1},
/// which keeps every pinned coefficient admissible and every factor positive.
pub fn t_formula_box<I: Coord>(f: &OkPolynomial<I>, y: u64) -> Result<u128> {
    let d = validated(f)?;
    let mut max_coord: u64 = 0;
    for j in 0..d {
        let c = f.coeff(j);
        for coord in [&c.u, &c.v] {
            let mag = coord
                .abs()
                .to_u64()
                .ok_or_else(|| Error::Capacity("coefficient exceeds u64".into()))?;
            max_coord = max_coord.max(mag);
        }
    }
    if y < 1 + max_coord {
        return Err(Error::Capacity(format!(
            "box formula needs y >= {}, got {y}",
            1 + max_coord
        )));
    }
    let width = 2 * y as u128 + 1;
    let mut total: u128 = 0;
    let mut product: u128 = 1;
    for n in 1..d {
        let c = f.coeff(n - 1);
        let mag = |x: &I| x.abs().to_u128().expect("checked above");
        product *= (width - mag(&c.u)) * (width - mag(&c.v));
        total += product;
    }
    Ok(total)
}

/// Classifies every admissible splitting by irreducibility of both parts.
pub fn tally_pairs<I: Coord>(
    f: &OkPolynomial<I>,
    bound: &BoundSpec,
    engine: Engine,
    budget: u64,
) -> Result<PairTally> {
    let d = validated(f)?;
    let ring = *f.ring();
    let mut total: u128 = 0;
    let mut representations: u128 = 0;
    for n in 1..d {
        if !forced_part_admissible(f, n, bound) {
            continue;
        }
        let lists: Vec<Vec<OkElement<I>>> =
            (0..n).map(|j| slot_values(f, j, bound)).collect();
        let contribution = lists
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.len() as u128));
        if total.saturating_add(contribution) > budget as u128 {
            return Err(Error::Capacity(format!(
                "splitting enumeration needs more than {budget} candidates"
            )));
        }
        if contribution == 0 {
            continue;
        }
        total += contribution;

        // Pinned upper coefficients of g, shared by every tuple at this n.
        let mut g_high: Vec<OkElement<I>> = Vec::with_capacity(d - n + 1);
        g_high.push(f.coeff(n).sub(&OkElement::one()));
        for j in (n + 1)..d {
            g_high.push(f.coeff(j));
        }
        g_high.push(OkElement::one());

        let inner_total: u128 = lists[..n - 1]
            .iter()
            .fold(1u128, |acc, l| acc * l.len() as u128);
        let reprs: u128 = lists[n - 1]
            .par_iter()
            .map(|outer| -> Result<u128> {
                let mut found: u128 = 0;
                for t in 0..inner_total {
                    let mut h_coeffs: Vec<OkElement<I>> = Vec::with_capacity(n + 1);
                    let mut rest = t;
                    for list in &lists[..n - 1] {
                        let idx = (rest % list.len() as u128) as usize;
                        rest /= list.len() as u128;
                        h_coeffs.push(list[idx].clone());
                    }
                    h_coeffs.push(outer.clone());
                    let mut g_coeffs: Vec<OkElement<I>> = h_coeffs
                        .iter()
                        .enumerate()
                        .map(|(j, h)| f.coeff(j).sub(h))
                        .collect();
                    g_coeffs.extend(g_high.iter().cloned());
                    h_coeffs.push(OkElement::one());
                    let h = OkPolynomial::new(ring, h_coeffs);
                    if is_irreducible_with_budget(&h, engine, budget)?.is_reducible() {
                        continue;
                    }
                    let g = OkPolynomial::new(ring, g_coeffs);
                    if !is_irreducible_with_budget(&g, engine, budget)?.is_reducible() {
                        found += 1;
                    }
                }
                Ok(found)
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
        representations += reprs;
    }
    Ok(PairTally {
        total,
        representations,
        reducible: total - representations,
    })
}

/// Number of splittings into two irreducible parts.
pub fn count_representations<I: Coord>(
    f: &OkPolynomial<I>,
    bound: &BoundSpec,
    engine: Engine,
) -> Result<u128> {
    count_representations_with_budget(f, bound, engine, DEFAULT_BUDGET)
}

pub fn count_representations_with_budget<I: Coord>(
    f: &OkPolynomial<I>,
    bound: &BoundSpec,
    engine: Engine,
    budget: u64,
) -> Result<u128> {
    Ok(tally_pairs(f, bound, engine, budget)?.representations)
}

/// Materializes every admissible splitting as (g, h), ordered by rising
/// low-part degree and then by slot values with h_0 varying fastest.
pub fn decompositions<I: Coord>(
    f: &OkPolynomial<I>,
    bound: &BoundSpec,
    budget: u64,
) -> Result<Vec<(OkPolynomial<I>, OkPolynomial<I>)>> {
    let d = validated(f)?;
    let ring = *f.ring();
    let mut out = Vec::new();
    for n in 1..d {
        if !forced_part_admissible(f, n, bound) {
            continue;
        }
        let lists: Vec<Vec<OkElement<I>>> =
            (0..n).map(|j| slot_values(f, j, bound)).collect();
        let contribution = lists
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.len() as u128));
        if (out.len() as u128).saturating_add(contribution) > budget as u128 {
            return Err(Error::Capacity(format!(
                "materializing needs more than {budget} splittings"
            )));
        }
        if contribution == 0 {
            continue;
        }
        for t in 0..contribution {
            let mut h_coeffs: Vec<OkElement<I>> = Vec::with_capacity(n + 1);
            let mut rest = t;
            for list in &lists {
                let idx = (rest % list.len() as u128) as usize;
                rest /= list.len() as u128;
                h_coeffs.push(list[idx].clone());
            }
            let mut g_coeffs: Vec<OkElement<I>> = h_coeffs
                .iter()
                .enumerate()
                .map(|(j, h)| f.coeff(j).sub(h))
                .collect();
            g_coeffs.push(f.coeff(n).sub(&OkElement::one()));
            for j in (n + 1)..d {
                g_coeffs.push(f.coeff(j));
            }
            g_coeffs.push(OkElement::one());
            h_coeffs.push(OkElement::one());
            out.push((OkPolynomial::new(ring, g_coeffs), OkPolynomial::new(ring, h_coeffs)));
        }
    }
    Ok(out)
}

fn normalized_ratio(r: u128, scale_base: u64, d: usize) -> f64 {
    let exponent = 2 * d as i32 - 2;
    (r as f64) / (scale_base as f64).powi(exponent)
}

/// Runs the full classification at each bound of a strictly increasing
/// ladder and assembles report rows.
pub fn sweep<I: Coord>(
    f: &OkPolynomial<I>,
    mode: BoundMode,
    ys: &[u64],
    engine: Engine,
    budget: u64,
) -> Result<Vec<SweepRecord>> {
    let d = validated(f)?;
    if ys.is_empty() {
        return Err(Error::InvalidInput("sweep needs at least one bound".into()));
    }
    if ys.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("sweep bounds must be strictly increasing".into()));
    }
    let k = f.ring().k();
    let f_text = f.canonical_text();
    let mut records = Vec::with_capacity(ys.len());
    for &y in ys {
        let bound = BoundSpec::new(mode, y);
        let tally = tally_pairs(f, &bound, engine, budget)?;
        let t_formula = match mode {
            BoundMode::Box => t_formula_box(f, y).ok(),
            BoundMode::Disk => None,
        };
        records.push(SweepRecord {
            k,
            mode,
            d,
            f_text: f_text.clone(),
            y,
            t_enum: tally.total,
            t_formula,
            pairs_reducible: tally.reducible,
            r: tally.representations,
            ratio_r_t: tally.representations as f64 / tally.total as f64,
            ratio_r_2y: normalized_ratio(tally.representations, 2 * y, d),
            ratio_r_4y: normalized_ratio(tally.representations, 4 * y, d),
        });
    }
    Ok(records)
}

/// Least-squares line through (ln x, ln y); returns (slope, intercept).
pub fn fit_log_log(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 2 {
        return Err(Error::InsufficientData(
            "log-log fit needs at least two positive points".into(),
        ));
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData(
            "log-log fit needs two distinct abscissae".into(),
        ));
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// Fits ln R against ln y over the rows with positive counts.
pub fn asymptotic_fit(records: &[SweepRecord]) -> Result<FitSummary> {
    let usable: Vec<&SweepRecord> = records
        .iter()
        .filter(|r| r.r > 0 && r.y >= 1)
        .collect();
    if usable.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "fit needs at least 3 rows with positive counts, found {}",
            usable.len()
        )));
    }
    let points: Vec<(f64, f64)> = usable
        .iter()
        .map(|r| (r.y as f64, r.r as f64))
        .collect();
    let (slope, intercept) = fit_log_log(&points)?;
    let last = usable.last().expect("nonempty");
    Ok(FitSummary {
        slope,
        constant: intercept.exp(),
        log2_constant: intercept / std::f64::consts::LN_2,
        ratio_r_2y_last: last.ratio_r_2y,
        ratio_r_4y_last: last.ratio_r_4y,
    })
}

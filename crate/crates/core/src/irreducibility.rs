//! Irreducibility of monic polynomials over Q(√−k), decided exactly.
//!
//! Because Z[θ] is integrally closed and inputs are monic, a factorization
//! over the fraction field forces a monic factorization inside Z[θ] (Gauss's
//! lemma), so both engines only ever search monic ring factors.
//!
//! * [`Engine::Fast`] dispatches on degree: linear inputs are irreducible;
//!   quadratics go through the discriminant and a ring square root; cubics
//!   reduce to a ring-root search through divisors of the constant term;
//!   quartics add a monic quadratic divisor search. Degree ≥ 5 is a
//!   capacity error.
//! * [`Engine::Oracle`] exhaustively trial-divides by every monic candidate
//!   of degree ≤ d/2 whose coefficient norms stay within the factor bound of
//!   [`OkPolynomial::lemma1_bound_sq`]. It exists to certify the fast paths,
//!   so it shares no divisor-sieving shortcuts with them.

use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{divides_monic_with_scratch, OkPolynomial};
use crate::ring::{count_norm_le, for_each_disk_row, BoundSpec, OkElement, RingSpec};
use crate::scalar::{coord_from_i64, Coord};

/// Candidate budget shared by the oracle and the counting enumerations.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Fast,
    Oracle,
}

/// Outcome plus a certifying factorization for reducible inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<I: Coord> {
    Irreducible,
    Reducible {
        factors: (OkPolynomial<I>, OkPolynomial<I>),
    },
}

impl<I: Coord> Verdict<I> {
    pub fn is_reducible(&self) -> bool {
        matches!(self, Verdict::Reducible { .. })
    }

    pub fn witness(&self) -> Option<(&OkPolynomial<I>, &OkPolynomial<I>)> {
        match self {
            Verdict::Irreducible => None,
            Verdict::Reducible { factors } => Some((&factors.0, &factors.1)),
        }
    }
}

fn validated_degree<I: Coord>(f: &OkPolynomial<I>) -> Result<usize> {
    if !f.is_monic() {
        return Err(Error::InvalidInput(
            "irreducibility is defined here for monic polynomials".into(),
        ));
    }
    let d = f.degree().expect("monic implies nonzero");
    if d == 0 {
        return Err(Error::InvalidInput(
            "constants have no irreducibility verdict".into(),
        ));
    }
    Ok(d)
}

/// Puts a factor pair into canonical order: lower degree first, ties broken
/// by coefficient sequence from the constant term up.
fn order_witness<I: Coord>(
    a: OkPolynomial<I>,
    b: OkPolynomial<I>,
) -> (OkPolynomial<I>, OkPolynomial<I>) {
    let swap = match a.degree().cmp(&b.degree()) {
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Equal => a.coeffs() > b.coeffs(),
    };
    if swap {
        (b, a)
    } else {
        (a, b)
    }
}

fn witness_from_divisor<I: Coord>(
    f: &OkPolynomial<I>,
    div: OkPolynomial<I>,
) -> Result<Verdict<I>> {
    let (q, rem) = f.divmod_monic(&div)?;
    if !rem.is_zero() {
        return Err(Error::Internal("witness divisor fails to divide".into()));
    }
    Ok(Verdict::Reducible {
        factors: order_witness(div, q),
    })
}

/// Decides irreducibility with the default candidate budget.
pub fn is_irreducible<I: Coord>(f: &OkPolynomial<I>, engine: Engine) -> Result<Verdict<I>> {
    is_irreducible_with_budget(f, engine, DEFAULT_BUDGET)
}

/// Decides irreducibility; `budget` caps every candidate enumeration.
pub fn is_irreducible_with_budget<I: Coord>(
    f: &OkPolynomial<I>,
    engine: Engine,
    budget: u64,
) -> Result<Verdict<I>> {
    let d = validated_degree(f)?;
    match engine {
        Engine::Fast => fast_verdict(f, d, budget),
        Engine::Oracle => {
            let bound_sq = f.lemma1_bound_sq()?;
            oracle_scan(f, d, &bound_sq, budget)
        }
    }
}

/// Oracle scan with an explicit squared coefficient bound, used to verify
/// that enlarging the bound never changes a verdict.
pub fn oracle_with_bound_sq<I: Coord>(
    f: &OkPolynomial<I>,
    bound_sq: &I,
    budget: u64,
) -> Result<Verdict<I>> {
    let d = validated_degree(f)?;
    oracle_scan(f, d, bound_sq, budget)
}

fn fast_verdict<I: Coord>(f: &OkPolynomial<I>, d: usize, budget: u64) -> Result<Verdict<I>> {
    match d {
        1 => Ok(Verdict::Irreducible),
        2 => match quadratic_roots(f) {
            Some((r1, r2)) => {
                let ring = *f.ring();
                Ok(Verdict::Reducible {
                    factors: order_witness(
                        OkPolynomial::linear_from_root(ring, &r1),
                        OkPolynomial::linear_from_root(ring, &r2),
                    ),
                })
            }
            None => Ok(Verdict::Irreducible),
        },
        3 => match first_linear_divisor_root(f)? {
            Some(r) => witness_from_divisor(f, OkPolynomial::linear_from_root(*f.ring(), &r)),
            None => Ok(Verdict::Irreducible),
        },
        4 => {
            if let Some(r) = first_linear_divisor_root(f)? {
                return witness_from_divisor(f, OkPolynomial::linear_from_root(*f.ring(), &r));
            }
            quartic_quadratic_search(f, budget)
        }
        _ => Err(Error::Capacity(format!(
            "fast engine handles degree <= 4, got degree {d}"
        ))),
    }
}

/// Monic quadratic x² + bx + c factors iff its discriminant b² − 4c has a
/// square root s in the ring with (−b ± s)/2 still in the ring, i.e. both
/// coordinates of s − b even (the coordinate lattice is the ring itself).
fn quadratic_roots<I: Coord>(f: &OkPolynomial<I>) -> Option<(OkElement<I>, OkElement<I>)> {
    let ring = f.ring();
    let b = f.coeff(1);
    let c = f.coeff(0);
    let four: I = coord_from_i64(4);
    let two: I = coord_from_i64(2);
    let disc = b.mul(&b, ring).sub(&OkElement::new(
        four.clone() * c.u.clone(),
        four * c.v.clone(),
    ));
    for s in ring.sqrt_in_ring(&disc) {
        let num = s.sub(&b);
        if num.u.is_even() && num.v.is_even() {
            let r1 = OkElement::new(num.u.div_floor(&two), num.v.div_floor(&two));
            let r2 = b.neg().sub(&r1);
            return Some((r1, r2));
        }
    }
    None
}

/// The root r whose monic divisor x − r comes first when constants are
/// scanned in canonical order, i.e. the r with canonically smallest −r.
/// Both engines canonicalize linear-factor witnesses this way.
fn first_linear_divisor_root<I: Coord>(f: &OkPolynomial<I>) -> Result<Option<OkElement<I>>> {
    Ok(linear_roots(f)?
        .into_iter()
        .min_by(|a, b| a.neg().cmp(&b.neg())))
}

/// All ring roots of a monic f, canonical order. Deflates powers of x, then
/// tests every ring divisor of the lowest nonzero coefficient (a nonzero
/// root must divide it, because x − α divides the deflated polynomial).
pub fn linear_roots<I: Coord>(f: &OkPolynomial<I>) -> Result<Vec<OkElement<I>>> {
    validated_degree(f)?;
    let ring = f.ring();
    let mut roots = Vec::new();
    let trailing = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    if trailing > 0 {
        roots.push(OkElement::zero());
    }
    if trailing == f.degree().unwrap() {
        return Ok(roots); // f = x^d
    }
    let g0 = f.coeff(trailing);
    for cand in ring.divisors(&g0)? {
        if f.eval(&cand).is_zero() {
            roots.push(cand);
        }
    }
    roots.sort();
    Ok(roots)
}

/// Degree-4 path once linear factors are excluded: monic quadratic divisors
/// x² + c₁x + c₀ with c₀ a ring divisor of f(0) and both coefficients inside
/// the factor-norm bound.
fn quartic_quadratic_search<I: Coord>(f: &OkPolynomial<I>, budget: u64) -> Result<Verdict<I>> {
    let ring = *f.ring();
    let bound_sq = f.lemma1_bound_sq()?;
    let f0 = f.coeff(0);
    debug_assert!(!f0.is_zero(), "zero constant term has the root 0");
    let consts: Vec<OkElement<I>> = ring
        .divisors(&f0)?
        .into_iter()
        .filter(|c| c.norm(&ring) <= bound_sq)
        .collect();
    let linear_count = count_norm_le(&ring, &bound_sq);
    let total = (consts.len() as u128).saturating_mul(linear_count);
    if total > budget as u128 {
        return Err(Error::Capacity(format!(
            "quadratic divisor search needs {total} candidates, budget is {budget}"
        )));
    }
    let mut scratch: Vec<OkElement<I>> = Vec::new();
    let mut div = [OkElement::zero(), OkElement::zero(), OkElement::one()];
    for c0 in &consts {
        div[0] = c0.clone();
        let mut hit: Option<OkElement<I>> = None;
        for_each_disk_row(&ring, &bound_sq, |v, lo, hi| {
            let mut u = lo.clone();
            loop {
                if u > *hi {
                    return ControlFlow::Continue(());
                }
                div[1] = OkElement::new(u.clone(), v.clone());
                if divides_monic_with_scratch(&mut scratch, f.coeffs(), &div, &ring) {
                    hit = Some(div[1].clone());
                    return ControlFlow::Break(());
                }
                u = u + I::one();
            }
        });
        if let Some(c1) = hit {
            let divisor = OkPolynomial::new(ring, vec![c0.clone(), c1, OkElement::one()]);
            return witness_from_divisor(f, divisor);
        }
    }
    Ok(Verdict::Irreducible)
}

/// Exhaustive oracle: trial-divide by every monic candidate of degree
/// m ≤ d/2 with all coefficient norms ≤ bound_sq, in canonical order.
fn oracle_scan<I: Coord>(
    f: &OkPolynomial<I>,
    d: usize,
    bound_sq: &I,
    budget: u64,
) -> Result<Verdict<I>> {
    if d == 1 {
        return Ok(Verdict::Irreducible);
    }
    let ring = *f.ring();
    let shell = count_norm_le(&ring, bound_sq);
    let mut total: u128 = 0;
    for m in 1..=d / 2 {
        total = total.saturating_add(shell.saturating_pow(m as u32));
    }
    if total > budget as u128 {
        return Err(Error::Capacity(format!(
            "oracle would scan {total} candidates for degree {d}, budget is {budget}"
        )));
    }
    if let Some(c) = linear_divisor_scan(f, bound_sq) {
        let divisor = OkPolynomial::new(ring, vec![c, OkElement::one()]);
        return witness_from_divisor(f, divisor);
    }
    for m in 2..=d / 2 {
        if let Some(divisor) = tuple_divisor_scan(f, bound_sq, m) {
            return witness_from_divisor(f, divisor);
        }
    }
    Ok(Verdict::Irreducible)
}

/// First constant c (canonical order) with (x + c) | f, i.e. f(−c) = 0.
///
/// Along a lattice row (fixed v) the remainder u ↦ f(−(u + vθ)) is a
/// degree-d integer-coefficient map, so after d+1 Horner seeds every further
/// candidate costs d element additions via exact forward differences.
fn linear_divisor_scan<I: Coord>(f: &OkPolynomial<I>, bound_sq: &I) -> Option<OkElement<I>> {
    let ring = *f.ring();
    let d = f.degree().expect("validated");
    let mut found: Option<OkElement<I>> = None;
    for_each_disk_row(&ring, bound_sq, |v, lo, hi| {
        let width_small = {
            // rows shorter than d+1 points are evaluated directly
            let steps = hi.clone() - lo.clone();
            let cap: I = coord_from_i64(d as i64);
            steps < cap
        };
        if width_small {
            let mut u = lo.clone();
            while u <= *hi {
                let c = OkElement::new(u.clone(), v.clone());
                if f.eval(&c.neg()).is_zero() {
                    found = Some(c);
                    return ControlFlow::Break(());
                }
                u = u + I::one();
            }
            return ControlFlow::Continue(());
        }
        // seed φ(lo), ..., φ(lo+d), then difference in place
        let mut table: Vec<OkElement<I>> = Vec::with_capacity(d + 1);
        let mut u = lo.clone();
        for _ in 0..=d {
            table.push(f.eval(&OkElement::new(u.clone(), v.clone()).neg()));
            u = u + I::one();
        }
        for level in 1..=d {
            for i in (level..=d).rev() {
                table[i] = table[i].sub(&table[i - 1]);
            }
        }
        let mut u = lo.clone();
        loop {
            if table[0].is_zero() {
                found = Some(OkElement::new(u, v.clone()));
                return ControlFlow::Break(());
            }
            if u == *hi {
                return ControlFlow::Continue(());
            }
            for j in 0..d {
                table[j] = table[j].add(&table[j + 1]);
            }
            u = u + I::one();
        }
    });
    found
}

/// First monic degree-m divisor (m ≥ 2) in canonical tuple order, scanning
/// all coefficient tuples over the norm shell ≤ bound_sq.
fn tuple_divisor_scan<I: Coord>(
    f: &OkPolynomial<I>,
    bound_sq: &I,
    m: usize,
) -> Option<OkPolynomial<I>> {
    let ring = *f.ring();
    let shell: Vec<OkElement<I>> = enumerate_norm_le(&ring, bound_sq);
    if shell.is_empty() {
        return None;
    }
    let mut idx = vec![0usize; m];
    let mut div: Vec<OkElement<I>> = vec![OkElement::zero(); m + 1];
    div[m] = OkElement::one();
    let mut scratch: Vec<OkElement<I>> = Vec::new();
    loop {
        for (slot, &i) in idx.iter().enumerate() {
            div[slot] = shell[i].clone();
        }
        if divides_monic_with_scratch(&mut scratch, f.coeffs(), &div, &ring) {
            return Some(OkPolynomial::new(ring, div));
        }
        // odometer: last slot fastest, first slot most significant
        let mut pos = m;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < shell.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn enumerate_norm_le<I: Coord>(ring: &RingSpec, n: &I) -> Vec<OkElement<I>> {
    let mut out = Vec::new();
    for_each_disk_row(ring, n, |v, lo, hi| {
        let mut u = lo.clone();
        while u <= *hi {
            out.push(OkElement::new(u.clone(), v.clone()));
            u = u + I::one();
        }
        ControlFlow::Continue(())
    });
    out
}

/// Counts reducible monic degree-d polynomials g with the coefficient of
/// x^(d−1) pinned to `g_lead` and all lower coefficients ranging over the
/// bound. Returns 0 immediately when `g_lead` itself violates the bound.
pub fn count_reducible_fixed_lead<I: Coord>(
    d: usize,
    g_lead: &OkElement<I>,
    bound: &BoundSpec,
    ring: &RingSpec,
    budget: u64,
) -> Result<u128> {
    if d < 2 {
        return Err(Error::InvalidInput("counting needs degree >= 2".into()));
    }
    if !bound.admits(g_lead, ring) {
        return Ok(0);
    }
    count_reducible_inner(d, Some(g_lead), bound, ring, budget)
}

/// Counts reducible monic degree-d polynomials with every coefficient free
/// over the bound.
pub fn count_reducible_free<I: Coord>(
    d: usize,
    bound: &BoundSpec,
    ring: &RingSpec,
    budget: u64,
) -> Result<u128> {
    if d < 2 {
        return Err(Error::InvalidInput("counting needs degree >= 2".into()));
    }
    count_reducible_inner::<I>(d, None, bound, ring, budget)
}

fn count_reducible_inner<I: Coord>(
    d: usize,
    g_lead: Option<&OkElement<I>>,
    bound: &BoundSpec,
    ring: &RingSpec,
    budget: u64,
) -> Result<u128> {
    let arity = if g_lead.is_some() { d - 1 } else { d };
    let elems: Vec<OkElement<I>> = bound.enumerate(ring);
    let tuples = (elems.len() as u128)
        .checked_pow(arity as u32)
        .unwrap_or(u128::MAX);
    if tuples > budget as u128 {
        return Err(Error::Capacity(format!(
            "{tuples} candidate polynomials exceed budget {budget}"
        )));
    }
    let mut template: Vec<OkElement<I>> = vec![OkElement::zero(); d + 1];
    template[d] = OkElement::one();
    if let Some(l) = g_lead {
        template[d - 1] = l.clone();
    }
    elems
        .par_iter()
        .map(|outer| {
            let mut coeffs = template.clone();
            coeffs[arity - 1] = outer.clone();
            let mut local: u128 = 0;
            each_assignment(&elems, &mut coeffs, arity - 1, &mut |cs| {
                let g = OkPolynomial::new(*ring, cs.to_vec());
                let verdict = is_irreducible_with_budget(&g, Engine::Fast, budget)?;
                if verdict.is_reducible() {
                    local += 1;
                }
                Ok(())
            })?;
            Ok(local)
        })
        .try_reduce(|| 0u128, |a, b| Ok(a + b))
}

/// Runs `body` for every assignment of `coeffs[0..positions]` drawn from
/// `elems` (positions indexed from 0 change fastest).
fn each_assignment<I: Coord>(
    elems: &[OkElement<I>],
    coeffs: &mut Vec<OkElement<I>>,
    positions: usize,
    body: &mut dyn FnMut(&[OkElement<I>]) -> Result<()>,
) -> Result<()> {
    if positions == 0 {
        return body(coeffs);
    }
    let mut idx = vec![0usize; positions];
    loop {
        for (pos, &i) in idx.iter().enumerate() {
            coeffs[pos] = elems[i].clone();
        }
        body(coeffs)?;
        let mut pos = 0;
        loop {
            if pos == positions {
                return Ok(());
            }
            idx[pos] += 1;
            if idx[pos] < elems.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::ring::BoundMode;

    type El = OkElement<i64>;
    type P = OkPolynomial<i64>;

    fn ring(k: u64) -> RingSpec {
        RingSpec::new(k).unwrap()
    }

    fn p(text: &str, k: u64) -> P {
        parse_poly(text, ring(k)).unwrap()
    }

    fn both(f: &P) -> (Verdict<i64>, Verdict<i64>) {
        (
            is_irreducible(f, Engine::Fast).unwrap(),
            is_irreducible(f, Engine::Oracle).unwrap(),
        )
    }

    #[test]
    fn degree_one_always_irreducible() {
        for k in [2u64, 3, 5, 7] {
            let f = p("x + (3,-2)", k);
            let (a, b) = both(&f);
            assert_eq!(a, Verdict::Irreducible);
            assert_eq!(b, Verdict::Irreducible);
        }
    }

    #[test]
    fn quadratic_examples() {
        let f = p("x^2+2", 2);
        let (a, b) = both(&f);
        assert!(a.is_reducible() && b.is_reducible());
        let (w1, w2) = a.witness().unwrap();
        assert_eq!(w1.canonical_text(), "x + (0,-1)");
        assert_eq!(w2.canonical_text(), "x + (0,1)");
        assert_eq!(w1.mul(w2), f);

        assert!(!both(&p("x^2+1", 2)).0.is_reducible());
        assert!(!both(&p("x^2 - (0,1)", 2)).0.is_reducible());

        // k=3: x² − x + 1 = (x − θ)(x − θ̄)
        let g = p("x^2 - x + 1", 3);
        let (a3, b3) = both(&g);
        assert!(a3.is_reducible() && b3.is_reducible());
        let (w1, w2) = a3.witness().unwrap();
        assert_eq!(w1.mul(w2), g);
    }

    #[test]
    fn cubic_examples() {
        assert!(!both(&p("x^3+2", 2)).0.is_reducible());
        let f = p("x^3 - x", 2);
        let (a, b) = both(&f);
        assert!(a.is_reducible() && b.is_reducible());
        let (w1, w2) = a.witness().unwrap();
        assert_eq!(w1.mul(w2), f);
        assert_eq!(w1.degree(), Some(1));
    }

    #[test]
    fn quartic_with_only_quadratic_factors() {
        let f = p("x^4 + 2*x^2 + 1", 2); // (x²+1)²
        let a = is_irreducible(&f, Engine::Fast).unwrap();
        assert!(a.is_reducible());
        let (w1, w2) = a.witness().unwrap();
        assert_eq!(w1, w2);
        assert_eq!(w1.canonical_text(), "x^2 + (1,0)");
        // A reduced-bound oracle scan is still a sound factor finder, and
        // 16 covers the true factor's coefficient norms.
        let b = oracle_with_bound_sq(&f, &16, DEFAULT_BUDGET).unwrap();
        assert_eq!(a, b);

        // x⁴ + θx² + 1 over k=2: no ring roots, no monic quadratic divisor
        let g = p("x^4 + (0,1)*x^2 + 1", 2);
        let ga = is_irreducible(&g, Engine::Fast).unwrap();
        assert_eq!(ga, Verdict::Irreducible);
        assert_eq!(
            oracle_with_bound_sq(&g, &16, DEFAULT_BUDGET).unwrap(),
            Verdict::Irreducible
        );
        // The full-strength degree-4 oracle declines honestly at the
        // default budget rather than silently truncating its scan.
        assert!(matches!(
            is_irreducible(&g, Engine::Oracle),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn linear_roots_examples() {
        let f = p("x^2+2", 2);
        assert_eq!(
            linear_roots(&f).unwrap(),
            vec![El::from_i64(0, -1), El::from_i64(0, 1)]
        );
        let g = p("x^3 - x", 2);
        assert_eq!(
            linear_roots(&g).unwrap(),
            vec![El::from_i64(-1, 0), El::from_i64(0, 0), El::from_i64(1, 0)]
        );
        assert_eq!(linear_roots(&p("x^3", 2)).unwrap(), vec![El::zero()]);
        assert_eq!(linear_roots(&p("x^2+1", 2)).unwrap(), vec![]);
    }

    #[test]
    fn preconditions_and_caps() {
        let f = p("2*x^2 + 1", 2);
        assert!(matches!(
            is_irreducible(&f, Engine::Fast),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            is_irreducible(&p("5", 2), Engine::Fast),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            is_irreducible(&p("x^5 + 1", 2), Engine::Fast),
            Err(Error::Capacity(_))
        ));
        assert!(matches!(
            is_irreducible_with_budget(&p("x^2 + 7", 2), Engine::Oracle, 10),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn engines_agree_on_all_small_quadratics() {
        for k in [2u64, 3] {
            let r = ring(k);
            let elems = BoundSpec::boxed(2).enumerate::<i64>(&r);
            for b in &elems {
                for c in &elems {
                    let f = OkPolynomial::new(r, vec![c.clone(), b.clone(), El::one()]);
                    let fast = is_irreducible(&f, Engine::Fast).unwrap();
                    let oracle = is_irreducible(&f, Engine::Oracle).unwrap();
                    assert_eq!(fast.is_reducible(), oracle.is_reducible(), "k={k} f={f}");
                    if let Some((w1, w2)) = fast.witness() {
                        assert_eq!(w1.mul(w2), f);
                    }
                    if let Some((w1, w2)) = oracle.witness() {
                        assert_eq!(w1.mul(w2), f);
                    }
                }
            }
        }
    }

    #[test]
    fn engines_agree_on_sampled_cubics() {
        for k in [2u64, 7] {
            let r = ring(k);
            let elems = BoundSpec::boxed(2).enumerate::<i64>(&r);
            let mut step = 0usize;
            for a in elems.iter().step_by(3) {
                for b in elems.iter().step_by(4) {
                    for c in elems.iter().step_by(5) {
                        step += 1;
                        if step % 2 == 0 {
                            continue;
                        }
                        let f = OkPolynomial::new(
                            r,
                            vec![c.clone(), b.clone(), a.clone(), El::one()],
                        );
                        let fast = is_irreducible(&f, Engine::Fast).unwrap();
                        let oracle = is_irreducible(&f, Engine::Oracle).unwrap();
                        assert_eq!(fast.is_reducible(), oracle.is_reducible(), "k={k} f={f}");
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_preserves_verdicts() {
        for text in ["x^2 + (0,1)*x + (-1,0)", "x^3 + (1,-1)*x + 2", "x^2+2", "x^3 - x"] {
            let f = p(text, 2);
            let fc = f.conj_poly();
            let a = is_irreducible(&f, Engine::Fast).unwrap();
            let b = is_irreducible(&fc, Engine::Fast).unwrap();
            assert_eq!(a.is_reducible(), b.is_reducible(), "{text}");
            if let (Some((a1, a2)), Some((b1, b2))) = (a.witness(), b.witness()) {
                let conj_pair = order_witness(a1.conj_poly(), a2.conj_poly());
                assert_eq!(conj_pair.0.mul(&conj_pair.1), fc.clone());
                assert_eq!(b1.mul(b2), fc);
            }
        }
    }

    #[test]
    fn enlarged_oracle_bound_changes_nothing() {
        for text in ["x^2 + (1,1)*x + 2", "x^3 - x", "x^2+1", "x^3 + (0,1)"] {
            let f = p(text, 2);
            let base = f.lemma1_bound_sq().unwrap();
            let a = oracle_with_bound_sq(&f, &base, DEFAULT_BUDGET).unwrap();
            let b = oracle_with_bound_sq(&f, &(4 * base), DEFAULT_BUDGET).unwrap();
            assert_eq!(a.is_reducible(), b.is_reducible(), "{text}");
        }
    }

    #[test]
    fn fixed_lead_count_example() {
        let r = ring(2);
        let lead = El::from_i64(-1, 0);
        let n = count_reducible_fixed_lead(2, &lead, &BoundSpec::boxed(1), &r, DEFAULT_BUDGET)
            .unwrap();
        assert_eq!(n, 1); // only x² − x qualifies

        // an out-of-bound pinned coefficient short-circuits to zero
        let n0 = count_reducible_fixed_lead(2, &lead, &BoundSpec::boxed(0), &r, DEFAULT_BUDGET)
            .unwrap();
        assert_eq!(n0, 0);
    }

    // Independent oracle for the free count: enumerate root pairs (r, s),
    // form (x−r)(x−s), and collect those with admissible coefficients.
    fn free_quadratic_count_by_roots(r: &RingSpec, bound: &BoundSpec) -> u128 {
        use std::collections::HashSet;
        let mut seen: HashSet<(i64, i64, i64, i64)> = HashSet::new();
        let lim = 24i64;
        for rv in -lim..=lim {
            for ru in -lim..=lim {
                let root1 = El::from_i64(ru, rv);
                for sv in -lim..=lim {
                    for su in -lim..=lim {
                        let root2 = El::from_i64(su, sv);
                        let b = root1.add(&root2).neg();
                        let c = root1.mul(&root2, r);
                        if bound.admits(&b, r) && bound.admits(&c, r) {
                            seen.insert((b.u, b.v, c.u, c.v));
                        }
                    }
                }
            }
        }
        seen.len() as u128
    }

    #[test]
    fn free_count_matches_root_oracle() {
        let r = ring(2);
        for bound in [BoundSpec::disk(1), BoundSpec::boxed(1)] {
            let got = count_reducible_free::<i64>(2, &bound, &r, DEFAULT_BUDGET).unwrap();
            let want = free_quadratic_count_by_roots(&r, &bound);
            assert_eq!(got, want, "{bound:?}");
        }
        assert_eq!(
            count_reducible_free::<i64>(2, &BoundSpec::disk(1), &r, DEFAULT_BUDGET).unwrap(),
            4
        );
    }

    #[test]
    fn counting_respects_budget() {
        let r = ring(2);
        let b = BoundSpec::new(BoundMode::Box, 3);
        assert!(matches!(
            count_reducible_free::<i64>(3, &b, &r, 1000),
            Err(Error::Capacity(_))
        ));
    }
}

//! Arithmetic and enumeration in imaginary quadratic orders Z[θ].
//!
//! For squarefree k ≥ 2 the order is Z[θ] with θ = √−k when −k ≢ 1 (mod 4)
//! (the Whole branch) and θ = (1+√−k)/2 when −k ≡ 1 (mod 4), i.e. k ≡ 3
//! (mod 4) (the Half branch). Elements are stored as integer coordinate
//! pairs u + v·θ. Both branches give the maximal (integrally closed) order,
//! which is what makes monic factorizations stay inside the ring.

use std::fmt;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::scalar::{coord_from_i64, coord_from_u64, exact_sqrt, floor_sqrt, Coord};

/// Which generator θ the ring uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// θ = √−k, minimal polynomial x² + k.
    Whole,
    /// θ = (1+√−k)/2, minimal polynomial x² − x + (1+k)/4.
    Half,
}

/// A validated ring description: the order Z[θ] inside Q(√−k).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingSpec {
    k: u64,
    branch: Branch,
}

impl RingSpec {
    /// Validates k (squarefree, 2 ≤ k) and selects the branch from k mod 4.
    pub fn new(k: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("k = {k}, need k >= 2")));
        }
        if k > i64::MAX as u64 / 4 {
            return Err(Error::InvalidParameter(format!("k = {k} too large")));
        }
        let mut p: u64 = 2;
        while p * p <= k {
            if k % (p * p) == 0 {
                return Err(Error::InvalidParameter(format!(
                    "k = {k} is divisible by {}^2, need squarefree k",
                    p
                )));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        let branch = if k % 4 == 3 { Branch::Half } else { Branch::Whole };
        Ok(RingSpec { k, branch })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn is_half(&self) -> bool {
        self.branch == Branch::Half
    }

    /// Coefficients (c1, c0) of the minimal polynomial x² + c1·x + c0 of θ.
    pub fn min_poly(&self) -> (i64, i64) {
        match self.branch {
            Branch::Whole => (0, self.k as i64),
            Branch::Half => (-1, ((1 + self.k) / 4) as i64),
        }
    }

    /// (1+k)/4, the constant term of the Half-branch minimal polynomial.
    pub(crate) fn half_c(&self) -> u64 {
        debug_assert!(self.is_half());
        (1 + self.k) / 4
    }

    pub(crate) fn k_as<I: Coord>(&self) -> I {
        coord_from_u64(self.k)
    }

    pub(crate) fn half_c_as<I: Coord>(&self) -> I {
        coord_from_u64(self.half_c())
    }
}

/// Validated constructor for [`RingSpec`] under its operation name.
pub fn make_ring(k: u64) -> Result<RingSpec> {
    RingSpec::new(k)
}

/// An element u + v·θ of Z[θ], stored by its integer coordinates.
///
/// The canonical order used by every enumeration in this crate is
/// lexicographic by (v, u), both ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OkElement<I: Coord> {
    pub u: I,
    pub v: I,
}

impl<I: Coord> PartialOrd for OkElement<I> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<I: Coord> Ord for OkElement<I> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.v.cmp(&other.v).then_with(|| self.u.cmp(&other.u))
    }
}

impl<I: Coord> fmt::Display for OkElement<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

impl<I: Coord> OkElement<I> {
    pub fn new(u: I, v: I) -> Self {
        OkElement { u, v }
    }

    pub fn from_i64(u: i64, v: i64) -> Self {
        OkElement::new(coord_from_i64(u), coord_from_i64(v))
    }

    pub fn zero() -> Self {
        OkElement::new(I::zero(), I::zero())
    }

    pub fn one() -> Self {
        OkElement::new(I::one(), I::zero())
    }

    pub fn theta() -> Self {
        OkElement::new(I::zero(), I::one())
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.u.is_one() && self.v.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        OkElement::new(self.u.clone() + rhs.u.clone(), self.v.clone() + rhs.v.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        OkElement::new(self.u.clone() - rhs.u.clone(), self.v.clone() - rhs.v.clone())
    }

    pub fn neg(&self) -> Self {
        OkElement::new(-self.u.clone(), -self.v.clone())
    }

    /// Ring product. Whole: (a+bθ)(c+dθ) = (ac − k·bd) + (ad+bc)θ.
    /// Half: θ² = θ − (1+k)/4, so (a+bθ)(c+dθ) = (ac − bd·(1+k)/4) + (ad+bc+bd)θ.
    pub fn mul(&self, rhs: &Self, ring: &RingSpec) -> Self {
        let ac = self.u.clone() * rhs.u.clone();
        let bd = self.v.clone() * rhs.v.clone();
        let ad_bc = self.u.clone() * rhs.v.clone() + self.v.clone() * rhs.u.clone();
        match ring.branch() {
            Branch::Whole => OkElement::new(ac - ring.k_as::<I>() * bd, ad_bc),
            Branch::Half => {
                OkElement::new(ac - ring.half_c_as::<I>() * bd.clone(), ad_bc + bd)
            }
        }
    }

    /// Complex conjugate, expressed in coordinates: θ̄ = −θ (Whole) or 1 − θ (Half).
    pub fn conj(&self, ring: &RingSpec) -> Self {
        match ring.branch() {
            Branch::Whole => OkElement::new(self.u.clone(), -self.v.clone()),
            Branch::Half => OkElement::new(self.u.clone() + self.v.clone(), -self.v.clone()),
        }
    }

    /// N(u+vθ) = u² + k·v² (Whole) or u² + uv + v²·(1+k)/4 (Half).
    /// Always a nonnegative rational integer, and ≥ 1 for nonzero elements.
    pub fn norm(&self, ring: &RingSpec) -> I {
        let uu = self.u.clone() * self.u.clone();
        let vv = self.v.clone() * self.v.clone();
        match ring.branch() {
            Branch::Whole => uu + ring.k_as::<I>() * vv,
            Branch::Half => uu + self.u.clone() * self.v.clone() + ring.half_c_as::<I>() * vv,
        }
    }

    /// Exact ring division: Some(q) with q·rhs = self when rhs divides self,
    /// None otherwise. Errors on rhs = 0.
    ///
    /// Uses self·conj(rhs) = q·N(rhs): the quotient exists in Z[θ] exactly
    /// when both coordinates of the numerator are divisible by N(rhs).
    pub fn try_div(&self, rhs: &Self, ring: &RingSpec) -> Result<Option<Self>> {
        if rhs.is_zero() {
            return Err(Error::InvalidInput("division by zero element".into()));
        }
        let num = self.mul(&rhs.conj(ring), ring);
        let den = rhs.norm(ring);
        let (qu, ru) = num.u.div_rem(&den);
        if !ru.is_zero() {
            return Ok(None);
        }
        let (qv, rv) = num.v.div_rem(&den);
        if !rv.is_zero() {
            return Ok(None);
        }
        Ok(Some(OkElement::new(qu, qv)))
    }
}

/// Calls `row(v, u_lo, u_hi)` for every lattice row of {e : N(e) ≤ n},
/// v ascending; within a row every u in [u_lo, u_hi] satisfies the bound.
///
/// Whole branch: u² ≤ n − k·v². Half branch: multiplying the norm by 4 gives
/// (2u+v)² + k·v² ≤ 4n, so 2u+v ranges over [−w, w] with w = ⌊√(4n − kv²)⌋.
pub(crate) fn for_each_disk_row<I, F>(ring: &RingSpec, n: &I, mut row: F)
where
    I: Coord,
    F: FnMut(&I, &I, &I) -> ControlFlow<()>,
{
    if n.is_negative() {
        return;
    }
    let k: I = ring.k_as();
    let two: I = coord_from_i64(2);
    let four: I = coord_from_i64(4);
    let scaled = match ring.branch() {
        Branch::Whole => n.clone(),
        Branch::Half => four.clone() * n.clone(),
    };
    let vmax = floor_sqrt(&scaled.clone().div_floor(&k));
    let mut v = -vmax.clone();
    while v <= vmax {
        let rest = scaled.clone() - k.clone() * v.clone() * v.clone();
        let w = floor_sqrt(&rest);
        let (lo, hi) = match ring.branch() {
            Branch::Whole => (-w.clone(), w),
            Branch::Half => (
                (-w.clone() - v.clone()).div_ceil(&two),
                (w - v.clone()).div_floor(&two),
            ),
        };
        if row(&v, &lo, &hi) == ControlFlow::Break(()) {
            return;
        }
        v = v + I::one();
    }
}

/// Number of elements with N(e) ≤ n, computed row-by-row without materializing.
pub(crate) fn count_norm_le<I: Coord>(ring: &RingSpec, n: &I) -> u128 {
    let mut total: u128 = 0;
    for_each_disk_row(ring, n, |_, lo, hi| {
        let width = hi.clone() - lo.clone() + I::one();
        total = total.saturating_add(width.to_u128().unwrap_or(u128::MAX));
        ControlFlow::Continue(())
    });
    total
}

impl RingSpec {
    /// All elements of norm exactly n, in canonical (v, u) order.
    /// Empty for negative n; exactly {0} for n = 0.
    pub fn elements_of_norm<I: Coord>(&self, n: &I) -> Vec<OkElement<I>> {
        let mut out = Vec::new();
        if n.is_negative() {
            return out;
        }
        let k: I = self.k_as();
        let two: I = coord_from_i64(2);
        let four: I = coord_from_i64(4);
        let scaled = match self.branch {
            Branch::Whole => n.clone(),
            Branch::Half => four * n.clone(),
        };
        let vmax = floor_sqrt(&scaled.clone().div_floor(&k));
        let mut v = -vmax.clone();
        while v <= vmax {
            let rest = scaled.clone() - k.clone() * v.clone() * v.clone();
            match self.branch {
                Branch::Whole => {
                    if let Some(u) = exact_sqrt(&rest) {
                        if u.is_zero() {
                            out.push(OkElement::new(u, v.clone()));
                        } else {
                            out.push(OkElement::new(-u.clone(), v.clone()));
                            out.push(OkElement::new(u, v.clone()));
                        }
                    }
                }
                Branch::Half => {
                    if let Some(w) = exact_sqrt(&rest) {
                        if (w.clone() - v.clone()).is_even() {
                            let hi = (w.clone() - v.clone()).div_floor(&two);
                            let lo = (-w.clone() - v.clone()).div_floor(&two);
                            if lo == hi {
                                out.push(OkElement::new(hi, v.clone()));
                            } else {
                                out.push(OkElement::new(lo, v.clone()));
                                out.push(OkElement::new(hi, v.clone()));
                            }
                        }
                    }
                }
            }
            v = v + I::one();
        }
        out
    }

    /// All s with s² = d, in canonical order (zero, one, or two elements).
    ///
    /// N(s) must be the exact integer square root of N(d), so candidates are
    /// drawn from one norm shell and checked by exact multiplication.
    pub fn sqrt_in_ring<I: Coord>(&self, d: &OkElement<I>) -> Vec<OkElement<I>> {
        if d.is_zero() {
            return vec![OkElement::zero()];
        }
        let nd = d.norm(self);
        let root = match exact_sqrt(&nd) {
            Some(r) => r,
            None => return Vec::new(),
        };
        self.elements_of_norm(&root)
            .into_iter()
            .filter(|s| &s.mul(s, self) == d)
            .collect()
    }

    /// All divisors of z (including units and unit multiples), canonical
    /// order: by norm, then (v, u). Errors on z = 0.
    ///
    /// Any divisor's norm divides N(z) in Z, so candidates come from the
    /// norm shells over the integer divisors of N(z); each candidate is
    /// confirmed by exact division.
    pub fn divisors<I: Coord>(&self, z: &OkElement<I>) -> Result<Vec<OkElement<I>>> {
        if z.is_zero() {
            return Err(Error::InvalidInput("divisors of zero are undefined".into()));
        }
        let nz = z.norm(self);
        let mut out: Vec<(I, OkElement<I>)> = Vec::new();
        for m in integer_divisors(&nz) {
            for cand in self.elements_of_norm(&m) {
                if z.try_div(&cand, self)?.is_some() {
                    out.push((m.clone(), cand));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        Ok(out.into_iter().map(|(_, e)| e).collect())
    }
}

/// Positive divisors of n ≥ 1 in ascending order, by trial-division factoring.
fn integer_divisors<I: Coord>(n: &I) -> Vec<I> {
    debug_assert!(n.is_positive());
    let mut rest = n.clone();
    let mut factors: Vec<(I, u32)> = Vec::new();
    let mut p: I = coord_from_i64(2);
    while p.clone() * p.clone() <= rest {
        let mut e = 0u32;
        while (rest.clone() % p.clone()).is_zero() {
            rest = rest / p.clone();
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p = if p == coord_from_i64(2) { coord_from_i64(3) } else { p + coord_from_i64(2) };
    }
    if rest > I::one() {
        factors.push((rest, 1));
    }
    let mut divs = vec![I::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = I::one();
            for _ in 0..=e {
                next.push(d.clone() * pk.clone());
                pk = pk * p.clone();
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Disk (N(e) ≤ y²) versus coordinate box (|u| ≤ y and |v| ≤ y).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundMode {
    Disk,
    Box,
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundMode::Disk => write!(f, "disk"),
            BoundMode::Box => write!(f, "box"),
        }
    }
}

/// A coefficient bound: mode plus the integer radius y ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundSpec {
    pub y: u64,
    pub mode: BoundMode,
}

impl BoundSpec {
    pub fn new(mode: BoundMode, y: u64) -> Self {
        BoundSpec { y, mode }
    }

    pub fn disk(y: u64) -> Self {
        BoundSpec::new(BoundMode::Disk, y)
    }

    pub fn boxed(y: u64) -> Self {
        BoundSpec::new(BoundMode::Box, y)
    }

    /// Membership test for one element.
    pub fn admits<I: Coord>(&self, e: &OkElement<I>, ring: &RingSpec) -> bool {
        let y: I = coord_from_u64(self.y);
        match self.mode {
            BoundMode::Box => e.u.abs() <= y && e.v.abs() <= y,
            BoundMode::Disk => e.norm(ring) <= y.clone() * y,
        }
    }

    /// All admitted elements in canonical (v, u) order.
    pub fn enumerate<I: Coord>(&self, ring: &RingSpec) -> Vec<OkElement<I>> {
        let mut out = Vec::new();
        match self.mode {
            BoundMode::Box => {
                let y: I = coord_from_u64(self.y);
                let mut v = -y.clone();
                while v <= y {
                    let mut u = -y.clone();
                    while u <= y {
                        out.push(OkElement::new(u.clone(), v.clone()));
                        u = u + I::one();
                    }
                    v = v + I::one();
                }
            }
            BoundMode::Disk => {
                let y: I = coord_from_u64(self.y);
                let n = y.clone() * y;
                for_each_disk_row(ring, &n, |v, lo, hi| {
                    let mut u = lo.clone();
                    while &u <= hi {
                        out.push(OkElement::new(u.clone(), v.clone()));
                        u = u + I::one();
                    }
                    ControlFlow::Continue(())
                });
            }
        }
        out
    }

    /// |enumerate| computed without materializing the list.
    pub fn cardinality<I: Coord>(&self, ring: &RingSpec) -> u128 {
        match self.mode {
            BoundMode::Box => {
                let side = 2u128 * self.y as u128 + 1;
                side * side
            }
            BoundMode::Disk => {
                let y: I = coord_from_u64(self.y);
                count_norm_le(ring, &(y.clone() * y))
            }
        }
    }
}

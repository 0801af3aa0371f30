//! Polynomials over Z[θ], stored constant-first with a trimmed leading term.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{OkElement, RingSpec};
use crate::scalar::{coord_from_u64, Coord};

/// A polynomial over Z[θ]. `coeffs[j]` multiplies x^j; the vector is empty
/// exactly for the zero polynomial and otherwise ends with a nonzero lead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OkPolynomial<I: Coord> {
    ring: RingSpec,
    coeffs: Vec<OkElement<I>>,
}

impl<I: Coord> OkPolynomial<I> {
    /// Builds a polynomial, trimming trailing zero coefficients.
    pub fn new(ring: RingSpec, mut coeffs: Vec<OkElement<I>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        OkPolynomial { ring, coeffs }
    }

    pub fn zero(ring: RingSpec) -> Self {
        OkPolynomial { ring, coeffs: Vec::new() }
    }

    pub fn constant(ring: RingSpec, c: OkElement<I>) -> Self {
        OkPolynomial::new(ring, vec![c])
    }

    pub fn one(ring: RingSpec) -> Self {
        OkPolynomial::constant(ring, OkElement::one())
    }

    /// x^n.
    pub fn x_pow(ring: RingSpec, n: usize) -> Self {
        let mut coeffs = vec![OkElement::zero(); n + 1];
        coeffs[n] = OkElement::one();
        OkPolynomial { ring, coeffs }
    }

    /// x − root (monic linear with the given root).
    pub fn linear_from_root(ring: RingSpec, root: &OkElement<I>) -> Self {
        OkPolynomial::new(ring, vec![root.neg(), OkElement::one()])
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn coeffs(&self) -> &[OkElement<I>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&OkElement<I>> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| c.is_one())
    }

    /// Coefficient of x^j (zero beyond the degree).
    pub fn coeff(&self, j: usize) -> OkElement<I> {
        self.coeffs.get(j).cloned().unwrap_or_else(OkElement::zero)
    }

    fn assert_same_ring(&self, rhs: &Self) {
        assert_eq!(
            self.ring, rhs.ring,
            "polynomial operands belong to different rings"
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_ring(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            out.push(self.coeff(j).add(&rhs.coeff(j)));
        }
        OkPolynomial::new(self.ring, out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_same_ring(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            out.push(self.coeff(j).sub(&rhs.coeff(j)));
        }
        OkPolynomial::new(self.ring, out)
    }

    pub fn neg(&self) -> Self {
        OkPolynomial::new(self.ring, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    /// Exact convolution product.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_ring(rhs);
        if self.is_zero() || rhs.is_zero() {
            return OkPolynomial::zero(self.ring);
        }
        let mut out = vec![OkElement::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b, &self.ring));
            }
        }
        OkPolynomial::new(self.ring, out)
    }

    /// Exact division by a monic divisor: returns (q, r) with
    /// self = q·div + r and deg r < deg div. Errors unless div is monic.
    pub fn divmod_monic(&self, div: &Self) -> Result<(Self, Self)> {
        self.assert_same_ring(div);
        if !div.is_monic() {
            return Err(Error::InvalidInput(
                "division requires a monic divisor".into(),
            ));
        }
        let dm = div.degree().expect("monic divisor is nonzero");
        let df = match self.degree() {
            None => return Ok((OkPolynomial::zero(self.ring), OkPolynomial::zero(self.ring))),
            Some(d) => d,
        };
        if df < dm {
            return Ok((OkPolynomial::zero(self.ring), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![OkElement::zero(); df - dm + 1];
        for i in (dm..=df).rev() {
            let c = std::mem::replace(&mut rem[i], OkElement::zero());
            if c.is_zero() {
                continue;
            }
            for j in 0..dm {
                let t = c.mul(&div.coeffs[j], &self.ring);
                rem[i - dm + j] = rem[i - dm + j].sub(&t);
            }
            quo[i - dm] = c;
        }
        rem.truncate(dm);
        Ok((
            OkPolynomial::new(self.ring, quo),
            OkPolynomial::new(self.ring, rem),
        ))
    }

    /// Horner evaluation at a ring element.
    pub fn eval(&self, x: &OkElement<I>) -> OkElement<I> {
        let mut acc = OkElement::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x, &self.ring).add(c);
        }
        acc
    }

    /// Coefficientwise conjugate.
    pub fn conj_poly(&self) -> Self {
        OkPolynomial {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|c| c.conj(&self.ring)).collect(),
        }
    }

    /// f · f̄, which has rational integer coefficients; returned constant-first.
    pub fn norm_poly(&self) -> Result<Vec<I>> {
        let p = self.mul(&self.conj_poly());
        p.coeffs
            .into_iter()
            .map(|c| {
                if c.v.is_zero() {
                    Ok(c.u)
                } else {
                    Err(Error::Internal(
                        "norm polynomial acquired a θ component".into(),
                    ))
                }
            })
            .collect()
    }

    /// Σ N(coeff): the squared l² norm under the complex embedding.
    pub fn l2_norm_sq(&self) -> I {
        let mut acc = I::zero();
        for c in &self.coeffs {
            acc = acc + c.norm(&self.ring);
        }
        acc
    }

    /// max N(coeff): the squared height.
    pub fn height_sq(&self) -> I {
        let mut acc = I::zero();
        for c in &self.coeffs {
            let n = c.norm(&self.ring);
            if n > acc {
                acc = n;
            }
        }
        acc
    }

    /// Squared coefficient bound for monic factors: any monic factor of f has
    /// every coefficient norm ≤ 2^(4d−4) · (d+1) · l2_norm_sq(f), where d is
    /// the degree of f. Errors on the zero polynomial or scalar overflow.
    pub fn lemma1_bound_sq(&self) -> Result<I> {
        let d = self
            .degree()
            .ok_or_else(|| Error::InvalidInput("factor bound of the zero polynomial".into()))?;
        let sixteen: I = coord_from_u64(16);
        let mut pow: I = I::one();
        for _ in 1..=d.saturating_sub(1) {
            pow = pow
                .checked_mul(&sixteen)
                .ok_or_else(|| Error::Capacity("factor bound overflows the scalar type".into()))?;
        }
        let dp1: I = coord_from_u64(d as u64 + 1);
        pow.checked_mul(&dp1)
            .and_then(|t| t.checked_mul(&self.l2_norm_sq()))
            .ok_or_else(|| Error::Capacity("factor bound overflows the scalar type".into()))
    }

    /// Largest coordinate magnitude over all coefficients, as u64 if it fits.
    /// Canonical text: descending powers joined by " + ", coefficients as
    /// "(u,v)" with a "*" before the variable, bare "x^j" for a monic lead.
    pub fn canonical_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let deg = self.coeffs.len() - 1;
        let mut parts = Vec::new();
        for j in (0..=deg).rev() {
            let c = &self.coeffs[j];
            if c.is_zero() {
                continue;
            }
            let part = if j == 0 {
                format!("{c}")
            } else {
                let var = if j == 1 { "x".to_string() } else { format!("x^{j}") };
                if j == deg && c.is_one() {
                    var
                } else {
                    format!("{c}*{var}")
                }
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

impl<I: Coord> fmt::Display for OkPolynomial<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

/// Remainder-only trial division by a monic divisor, reusing `scratch`.
/// Returns true iff the divisor divides `f_coeffs` exactly.
pub(crate) fn divides_monic_with_scratch<I: Coord>(
    scratch: &mut Vec<OkElement<I>>,
    f_coeffs: &[OkElement<I>],
    div: &[OkElement<I>],
    ring: &RingSpec,
) -> bool {
    let dm = div.len() - 1;
    debug_assert!(div[dm].is_one());
    if f_coeffs.len() <= dm {
        return f_coeffs.iter().all(|c| c.is_zero());
    }
    scratch.clear();
    scratch.extend_from_slice(f_coeffs);
    for i in (dm..f_coeffs.len()).rev() {
        let c = std::mem::replace(&mut scratch[i], OkElement::zero());
        if c.is_zero() {
            continue;
        }
        for j in 0..dm {
            let t = c.mul(&div[j], ring);
            scratch[i - dm + j] = scratch[i - dm + j].sub(&t);
        }
    }
    scratch[..dm].iter().all(|c| c.is_zero())
}

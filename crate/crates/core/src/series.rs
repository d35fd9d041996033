//! Power series truncated at `T^N`. Binary operations return the smaller of
//! the two precisions.

use crate::coeff::{CoeffRing, Elem};
use crate::error::{Error, Result};
use crate::poly::{render_terms, Poly};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    precision: usize,
    coeffs: Vec<Elem>,
}

impl Series {
    pub fn new(ring: &CoeffRing, precision: usize, mut coeffs: Vec<Elem>) -> Self {
        assert!(precision >= 1, "series precision must be at least 1");
        coeffs.resize(precision, ring.zero());
        coeffs.truncate(precision);
        Series { precision, coeffs }
    }

    pub fn one(ring: &CoeffRing, precision: usize) -> Self {
        Series::new(ring, precision, vec![ring.one()])
    }

    pub fn from_poly(ring: &CoeffRing, f: &Poly, precision: usize) -> Self {
        Series::new(ring, precision, f.coeffs().to_vec())
    }

    pub fn from_ints(ring: &CoeffRing, precision: usize, coeffs: &[i64]) -> Self {
        Series::new(ring, precision, coeffs.iter().map(|&c| ring.from_int(c)).collect())
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn with_precision(&self, ring: &CoeffRing, n: usize) -> Series {
        Series::new(ring, n.min(self.precision), self.coeffs.clone())
    }

    pub fn add(&self, ring: &CoeffRing, other: &Series) -> Series {
        let n = self.precision.min(other.precision);
        Series::new(
            ring,
            n,
            (0..n).map(|i| ring.add(&self.coeffs[i], &other.coeffs[i])).collect(),
        )
    }

    pub fn mul(&self, ring: &CoeffRing, other: &Series) -> Series {
        let n = self.precision.min(other.precision);
        let mut out = vec![ring.zero(); n];
        for i in 0..n {
            let a = &self.coeffs[i];
            if ring.is_zero(a) {
                continue;
            }
            for j in 0..n - i {
                out[i + j] = ring.add(&out[i + j], &ring.mul(a, &other.coeffs[j]));
            }
        }
        Series::new(ring, n, out)
    }

    /// Multiplicative inverse modulo `T^N`; requires a unit constant term.
    pub fn invert(&self, ring: &CoeffRing) -> Result<Series> {
        let c0_inv = ring
            .inv(&self.coeffs[0])
            .map_err(|_| Error::NonUnitConstantTerm)?;
        let n = self.precision;
        let mut out: Vec<Elem> = Vec::with_capacity(n);
        out.push(c0_inv.clone());
        for k in 1..n {
            let mut acc = ring.zero();
            for j in 1..=k {
                acc = ring.add(&acc, &ring.mul(&self.coeffs[j], &out[k - j]));
            }
            out.push(ring.neg(&ring.mul(&c0_inv, &acc)));
        }
        Ok(Series::new(ring, n, out))
    }

    /// `s(T^k)`, known modulo `T^(N k)`, truncated further to `n_out`.
    pub fn substitute_power(&self, ring: &CoeffRing, k: usize, n_out: usize) -> Series {
        let n = n_out.min(self.precision * k).max(1);
        let mut out = vec![ring.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k < n {
                out[i * k] = c.clone();
            }
        }
        Series::new(ring, n, out)
    }

    /// Equality of the first `n` coefficients; `n` may not exceed either
    /// precision.
    pub fn eq_to(&self, other: &Series, n: usize) -> bool {
        assert!(n <= self.precision && n <= other.precision, "comparison beyond precision");
        self.coeffs[..n] == other.coeffs[..n]
    }

    /// Semi-decision for membership in `S`: `true` is certain, `false`
    /// means no witness among the known coefficients.
    pub fn visibly_in_s(&self, ring: &CoeffRing) -> bool {
        crate::poly::is_in_s_coeffs(ring, &self.coeffs)
    }

    pub fn render(&self, ring: &CoeffRing) -> String {
        render_terms(ring, &self.coeffs)
    }
}

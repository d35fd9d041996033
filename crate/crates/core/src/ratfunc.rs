use crate::coeff::CoeffRing;
use crate::error::{Error, Result};
use crate::poly::{is_in_p, Poly, PolyRing};
use crate::ring::Ring;
use crate::series::Series;

/// `num / den` with `den` in `P`. Not reduced: there is no gcd over
/// `Z/l^m`, so equality is cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(ring: &CoeffRing, num: Poly, den: Poly) -> Result<Self> {
        if !is_in_p(ring, &den) {
            return Err(Error::NonUnitConstantTerm);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(ring: &CoeffRing, num: Poly) -> Self {
        RationalFunction {
            num,
            den: PolyRing::new(ring.clone()).one(),
        }
    }

    pub fn one(ring: &CoeffRing) -> Self {
        let one = PolyRing::new(ring.clone()).one();
        RationalFunction {
            num: one.clone(),
            den: one,
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn mul(&self, ring: &CoeffRing, other: &RationalFunction) -> RationalFunction {
        let pr = PolyRing::new(ring.clone());
        RationalFunction {
            num: pr.mul(&self.num, &other.num),
            den: pr.mul(&self.den, &other.den),
        }
    }

    /// Multiplicative inverse; needs the numerator in `P`.
    pub fn inv(&self, ring: &CoeffRing) -> Result<RationalFunction> {
        RationalFunction::new(ring, self.den.clone(), self.num.clone())
    }

    pub fn eq_exact(&self, ring: &CoeffRing, other: &RationalFunction) -> bool {
        let pr = PolyRing::new(ring.clone());
        pr.mul(&self.num, &other.den) == pr.mul(&other.num, &self.den)
    }

    pub fn expand(&self, ring: &CoeffRing, precision: usize) -> Series {
        let den_inv = Series::from_poly(ring, &self.den, precision)
            .invert(ring)
            .expect("denominator lies in P");
        Series::from_poly(ring, &self.num, precision).mul(ring, &den_inv)
    }

    pub fn render(&self, ring: &CoeffRing) -> String {
        if self.den == PolyRing::new(ring.clone()).one() {
            self.num.render(ring)
        } else {
            format!("({}) / ({})", self.num.render(ring), self.den.render(ring))
        }
    }
}

/// True iff `rf` expands to `s` through `T^(n-1)`.
pub fn compare_series(ring: &CoeffRing, rf: &RationalFunction, s: &Series, n: usize) -> bool {
    assert!(n <= s.precision(), "comparison beyond series precision");
    rf.expand(ring, n).eq_to(s, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_against_geometric_series() {
        let r = CoeffRing::integers(3, 2).unwrap();
        let one = PolyRing::new(r.clone()).one();
        let rf = RationalFunction::new(&r, one.clone(), Poly::from_ints(&r, &[1, -1])).unwrap();
        let geo = Series::from_ints(&r, 8, &[1; 8]);
        assert!(compare_series(&r, &rf, &geo, 8));
        let alt = RationalFunction::new(&r, one, Poly::from_ints(&r, &[1, 1])).unwrap();
        assert!(!compare_series(&r, &rf, &alt.expand(&r, 2), 2));
        assert_eq!(rf.render(&r), "(1) / (1 + 8*T)");
    }

    #[test]
    fn denominator_must_be_in_p() {
        let r = CoeffRing::integers(3, 2).unwrap();
        let one = PolyRing::new(r.clone()).one();
        assert!(RationalFunction::new(&r, one, Poly::from_ints(&r, &[3, 1])).is_err());
    }
}

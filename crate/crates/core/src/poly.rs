//! Polynomials over a coefficient ring, canonical (no trailing zeros).

use crate::coeff::{CoeffRing, Elem};
use crate::ring::{CommRing, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn new(ring: &CoeffRing, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(ring: &CoeffRing, coeffs: &[i64]) -> Self {
        Poly::new(ring, coeffs.iter().map(|&c| ring.from_int(c)).collect())
    }

    pub fn constant(ring: &CoeffRing, c: Elem) -> Self {
        Poly::new(ring, vec![c])
    }

    /// `c * T^k`
    pub fn monomial(ring: &CoeffRing, c: Elem, k: usize) -> Self {
        let mut coeffs = vec![ring.zero(); k];
        coeffs.push(c);
        Poly::new(ring, coeffs)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, ring: &CoeffRing, k: usize) -> Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn constant_term(&self, ring: &CoeffRing) -> Elem {
        self.coeff(ring, 0)
    }

    pub fn truncate(&self, ring: &CoeffRing, n: usize) -> Poly {
        Poly::new(ring, self.coeffs.iter().take(n).cloned().collect())
    }

    /// `f(T^k)`
    pub fn substitute_power(&self, ring: &CoeffRing, k: usize) -> Poly {
        assert!(k >= 1);
        let mut out = vec![ring.zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        Poly::new(ring, out)
    }

    /// `f(T + c)`, by Horner's rule.
    pub fn shift(&self, ring: &CoeffRing, c: &Elem) -> Poly {
        let pr = PolyRing::new(ring.clone());
        let lin = Poly::new(ring, vec![c.clone(), ring.one()]);
        let mut acc = Poly::zero();
        for a in self.coeffs.iter().rev() {
            acc = pr.add(&pr.mul(&acc, &lin), &Poly::constant(ring, a.clone()));
        }
        acc
    }

    pub fn scale(&self, ring: &CoeffRing, c: &Elem) -> Poly {
        Poly::new(ring, self.coeffs.iter().map(|a| ring.mul(c, a)).collect())
    }

    pub fn render(&self, ring: &CoeffRing) -> String {
        render_terms(ring, &self.coeffs)
    }
}

/// Ascending-power rendering shared by polynomials and series.
pub(crate) fn render_terms(ring: &CoeffRing, coeffs: &[Elem]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !ring.is_zero(c))
        .map(|(k, c)| {
            let mono = match k {
                0 => String::new(),
                1 => "T".to_string(),
                k => format!("T^{k}"),
            };
            if k == 0 {
                ring.render_coefficient(c)
            } else if ring.is_one(c) {
                mono
            } else {
                format!("{}*{mono}", ring.render_coefficient(c))
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// `Omega[T]` as a ring context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub base: CoeffRing,
}

impl PolyRing {
    pub fn new(base: CoeffRing) -> Self {
        PolyRing { base }
    }

    pub fn t(&self) -> Poly {
        Poly::monomial(&self.base, self.base.one(), 1)
    }

    pub fn constant(&self, c: Elem) -> Poly {
        Poly::constant(&self.base, c)
    }
}

impl Ring for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }

    fn one(&self) -> Poly {
        Poly::constant(&self.base, self.base.one())
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let r = &self.base;
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::new(r, (0..n).map(|i| r.add(&a.coeff(r, i), &b.coeff(r, i))).collect())
    }

    fn neg(&self, a: &Poly) -> Poly {
        Poly {
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let r = &self.base;
        let mut out = vec![r.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if r.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = r.add(&out[i + j], &r.mul(x, y));
            }
        }
        Poly::new(r, out)
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
}

impl CommRing for PolyRing {}

/// Membership in `P = { f : f(0) is a unit }`.
pub fn is_in_p(ring: &CoeffRing, f: &Poly) -> bool {
    ring.is_unit(&f.constant_term(ring))
}

/// Membership in `S`: the image of `f` in `(Omega/Jac)[T]` is a
/// nonzerodivisor, i.e. nonzero in every residue-field component.
pub fn is_in_s(ring: &CoeffRing, f: &Poly) -> bool {
    is_in_s_coeffs(ring, f.coeffs())
}

pub(crate) fn is_in_s_coeffs(ring: &CoeffRing, coeffs: &[Elem]) -> bool {
    (0..ring.residue_factors().len())
        .all(|i| coeffs.iter().any(|c| !ring.vanishes_in_residue_field(c, i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z9() -> CoeffRing {
        CoeffRing::integers(3, 2).unwrap()
    }

    #[test]
    fn p_membership() {
        let r = z9();
        assert!(is_in_p(&r, &Poly::from_ints(&r, &[1, -4])));
        assert!(!is_in_p(&r, &Poly::from_ints(&r, &[0, 1])));
        assert!(!is_in_p(&r, &Poly::from_ints(&r, &[3, 1])));
    }

    #[test]
    fn s_membership() {
        let r = z9();
        assert!(is_in_s(&r, &Poly::from_ints(&r, &[1, -4])));
        assert!(!is_in_s(&r, &Poly::from_ints(&r, &[0, 3])));
        assert!(is_in_s(&r, &Poly::from_ints(&r, &[0, 1])));
        assert!(!is_in_s(&r, &Poly::zero()));
    }

    #[test]
    fn s_membership_needs_every_residue_component() {
        // x^2 - 1 splits mod 3; (x - 1) vanishes in one component
        let r = CoeffRing::new(3, 1, &[-1, 0, 1]).unwrap();
        let f = Poly::new(&r, vec![r.elem(&[-1, 1]), r.elem(&[-1, 1])]);
        assert!(!is_in_s(&r, &f));
        let g = Poly::new(&r, vec![r.elem(&[-1, 1]), r.elem(&[1, 1])]);
        assert!(is_in_s(&r, &g));
    }

    #[test]
    fn canonical_form_and_degree() {
        let r = z9();
        let f = Poly::from_ints(&r, &[1, 0, 9, 0]);
        assert_eq!(f.degree(), Some(0));
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::from_ints(&r, &[1, -1, 1]).render(&r), "1 + 8*T + T^2");
        assert_eq!(Poly::zero().render(&r), "0");
    }

    #[test]
    fn shift_and_substitute() {
        let r = z9();
        // (T + 1)^2 = 1 + 2T + T^2
        let f = Poly::from_ints(&r, &[0, 0, 1]);
        assert_eq!(f.shift(&r, &r.one()), Poly::from_ints(&r, &[1, 2, 1]));
        assert_eq!(
            Poly::from_ints(&r, &[1, -1]).substitute_power(&r, 3),
            Poly::from_ints(&r, &[1, 0, 0, -1])
        );
    }
}

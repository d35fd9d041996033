//! Finite coefficient rings `(Z/l^m)[x]/(f)` with `f` monic and square-free
//! modulo `l`.
//!
//! Elements are coordinate vectors in the power basis `1, x, .., x^(D-1)`
//! with every coordinate a least nonnegative residue mod `l^m`. The ring is a
//! finite product of local rings whose residue fields are `F_l[x]/(g_i)` for
//! the irreducible factors `g_i` of `f mod l`.

use std::fmt;

use crate::error::{Error, Result};
use crate::fp;
use crate::ring::{CommRing, Ring};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) Vec<u64>);

impl Elem {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct CoeffRing {
    ell: u64,
    m: u32,
    modulus: u64,
    /// monic, ascending, length `degree + 1`
    minpoly: Vec<u64>,
    /// irreducible factors of `minpoly mod l`
    residue_factors: Vec<Vec<u64>>,
}

impl fmt::Debug for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CoeffRing(l={}, m={}, f={:?})",
            self.ell, self.m, self.minpoly
        )
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoeffRing {
    /// `Z/l^m`.
    pub fn integers(ell: u64, m: u32) -> Result<Self> {
        Self::new(ell, m, &[0, 1])
    }

    /// `(Z/l^m)[x]/(minpoly)`; `minpoly` is given in ascending order and must
    /// be monic of degree at least one.
    pub fn new(ell: u64, m: u32, minpoly: &[i64]) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::InvalidRing(format!("{ell} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidRing("exponent m must be at least 1".into()));
        }
        let modulus = ell
            .checked_pow(m)
            .filter(|q| *q < (1 << 31))
            .ok_or_else(|| Error::InvalidRing(format!("{ell}^{m} is too large")))?;
        let minpoly: Vec<u64> = minpoly
            .iter()
            .map(|c| c.rem_euclid(modulus as i64) as u64)
            .collect();
        if minpoly.len() < 2 || *minpoly.last().unwrap() != 1 {
            return Err(Error::InvalidRing(
                "minimal polynomial must be monic of degree >= 1".into(),
            ));
        }
        let reduced = fp::reduce(&minpoly, ell);
        if !fp::is_squarefree(&reduced, ell) {
            return Err(Error::InvalidRing(
                "minimal polynomial must be square-free modulo l".into(),
            ));
        }
        let residue_factors = fp::factor_squarefree(&reduced, ell);
        Ok(CoeffRing {
            ell,
            m,
            modulus,
            minpoly,
            residue_factors,
        })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `l^m`
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[u64] {
        &self.minpoly
    }

    pub fn residue_factors(&self) -> &[Vec<u64>] {
        &self.residue_factors
    }

    /// Number of elements, `l^(m * deg f)`.
    pub fn cardinality(&self) -> u128 {
        (self.modulus as u128).pow(self.degree() as u32)
    }

    pub fn elem(&self, coords: &[i64]) -> Elem {
        let d = self.degree();
        let mut v = vec![0u64; d];
        // reduce arbitrary-length input modulo the minimal polynomial
        let raw: Vec<u64> = coords
            .iter()
            .map(|c| c.rem_euclid(self.modulus as i64) as u64)
            .collect();
        let reduced = self.reduce_poly(raw);
        v[..reduced.len()].copy_from_slice(&reduced);
        Elem(v)
    }

    pub fn generator(&self) -> Elem {
        self.elem(&[0, 1])
    }

    fn reduce_poly(&self, mut p: Vec<u64>) -> Vec<u64> {
        let d = self.degree();
        let q = self.modulus;
        while p.len() > d {
            let c = p.pop().unwrap();
            if c == 0 {
                continue;
            }
            let shift = p.len() - d;
            for i in 0..d {
                let sub = (c as u128 * self.minpoly[i] as u128 % q as u128) as u64;
                p[shift + i] = (p[shift + i] + q - sub) % q;
            }
        }
        p
    }

    /// Coordinates reduced mod `l`, trimmed, as an `F_l[x]` polynomial.
    fn residue(&self, a: &Elem) -> Vec<u64> {
        fp::reduce(&a.0, self.ell)
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        let r = self.residue(a);
        !r.is_empty()
            && self
                .residue_factors
                .iter()
                .all(|g| !fp::rem(&r, g, self.ell).is_empty())
    }

    /// True iff `a` maps to zero in the residue field of the `i`-th factor.
    pub fn vanishes_in_residue_field(&self, a: &Elem, i: usize) -> bool {
        let r = self.residue(a);
        fp::rem(&r, &self.residue_factors[i], self.ell).is_empty()
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        let reduced_f = fp::reduce(&self.minpoly, self.ell);
        let b0 = fp::inv_mod_poly(&self.residue(a), &reduced_f, self.ell)
            .ok_or(Error::NotAUnit)?;
        let mut b = self.elem(&b0.iter().map(|&c| c as i64).collect::<Vec<_>>());
        // Newton: b <- b (2 - a b) doubles the l-adic precision each round
        let two = self.from_int(2);
        for _ in 0..64 {
            let ab = self.mul(a, &b);
            if ab == self.one() {
                return Ok(b);
            }
            b = self.mul(&b, &self.sub(&two, &ab));
        }
        unreachable!("Newton iteration for a unit inverse must converge")
    }

    /// l-adic valuation of an element: the largest `v <= m` with `l^v | a`.
    pub fn valuation(&self, a: &Elem) -> u32 {
        a.0.iter()
            .map(|&c| zmod_valuation(c, self.ell, self.m))
            .min()
            .unwrap_or(self.m)
    }

    /// Primitive idempotents `e_i` with `e_i = 1` in the `i`-th residue
    /// field and `0` in the others, in the order of `residue_factors`.
    pub fn idempotents(&self) -> Vec<Elem> {
        let p = self.ell;
        let reduced_f = fp::reduce(&self.minpoly, p);
        if self.residue_factors.len() == 1 {
            return vec![self.one()];
        }
        self.residue_factors
            .iter()
            .map(|g| {
                let cofactor = fp::divrem(&reduced_f, g, p).0;
                let c_inv = fp::inv_mod_poly(&cofactor, g, p).expect("coprime factors");
                let e0 = fp::rem(&fp::mul(&cofactor, &c_inv, p), &reduced_f, p);
                let mut e = self.elem(&e0.iter().map(|&c| c as i64).collect::<Vec<_>>());
                // e <- 3e^2 - 2e^3 converges to the idempotent lift
                loop {
                    let e2 = self.mul(&e, &e);
                    if e2 == e {
                        break e;
                    }
                    let e3 = self.mul(&e2, &e);
                    e = self.sub(&self.mul(&self.from_int(3), &e2), &self.mul(&self.from_int(2), &e3));
                }
            })
            .collect()
    }

    /// Matrix (D x D, column-major meaning: column j = coords of a * x^j) of
    /// multiplication by `a` over `Z/l^m`.
    pub fn mult_matrix(&self, a: &Elem) -> Vec<Vec<u64>> {
        let d = self.degree();
        let mut cols = Vec::with_capacity(d);
        let mut basis = self.one();
        let x = self.generator();
        for _ in 0..d {
            cols.push(self.mul(a, &basis).0);
            basis = self.mul(&basis, &x);
        }
        (0..d)
            .map(|i| (0..d).map(|j| cols[j][i]).collect())
            .collect()
    }

    /// Canonical rendering: a bare residue for `Z/l^m`, otherwise an
    /// ascending polynomial in `x`.
    pub fn render(&self, a: &Elem) -> String {
        if self.degree() == 1 {
            return a.0[0].to_string();
        }
        let terms: Vec<String> = a
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}*x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}*x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Like `render`, parenthesized when the element has several terms.
    pub fn render_coefficient(&self, a: &Elem) -> String {
        let s = self.render(a);
        if s.contains(' ') {
            format!("({s})")
        } else {
            s
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }
}

pub(crate) fn zmod_valuation(c: u64, ell: u64, m: u32) -> u32 {
    if c == 0 {
        return m;
    }
    let mut v = 0;
    let mut c = c;
    while c.is_multiple_of(ell) && v < m {
        c /= ell;
        v += 1;
    }
    v
}

impl Ring for CoeffRing {
    type Elem = Elem;

    fn zero(&self) -> Elem {
        Elem(vec![0; self.degree()])
    }

    fn one(&self) -> Elem {
        let mut v = vec![0; self.degree()];
        v[0] = 1 % self.modulus;
        Elem(v)
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let q = self.modulus;
        Elem(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % q).collect())
    }

    fn neg(&self, a: &Elem) -> Elem {
        let q = self.modulus;
        Elem(a.0.iter().map(|x| (q - x) % q).collect())
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let d = self.degree();
        let q = self.modulus as u128;
        if d == 1 {
            return Elem(vec![(a.0[0] as u128 * b.0[0] as u128 % q) as u64]);
        }
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, x) in a.0.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u128 + *x as u128 * *y as u128) % q) as u64;
            }
        }
        let mut r = self.reduce_poly(prod);
        r.resize(d, 0);
        Elem(r)
    }

    fn from_int(&self, n: i64) -> Elem {
        let mut v = vec![0; self.degree()];
        v[0] = n.rem_euclid(self.modulus as i64) as u64;
        Elem(v)
    }
}

impl CommRing for CoeffRing {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_in_z9() {
        let r = CoeffRing::integers(3, 2).unwrap();
        assert!(r.is_unit(&r.from_int(1)));
        assert!(!r.is_unit(&r.from_int(3)));
        assert!(!r.is_unit(&r.from_int(0)));
        assert_eq!(r.inv(&r.from_int(4)).unwrap(), r.from_int(7));
        assert_eq!(r.inv(&r.from_int(3)), Err(Error::NotAUnit));
    }

    #[test]
    fn x_is_unit_in_gaussian_ring_mod_9() {
        // (Z/9)[x]/(x^2 + 1): x * (-x) = 1
        let r = CoeffRing::new(3, 2, &[1, 0, 1]).unwrap();
        let x = r.generator();
        assert!(r.is_unit(&x));
        let inv = r.inv(&x).unwrap();
        assert_eq!(inv, r.neg(&x));
        assert_eq!(r.mul(&x, &inv), r.one());
    }

    #[test]
    fn non_squarefree_minpoly_rejected() {
        // x^2 + x + 1 = (x - 1)^2 mod 3
        assert!(matches!(
            CoeffRing::new(3, 1, &[1, 1, 1]),
            Err(Error::InvalidRing(_))
        ));
        assert!(CoeffRing::new(4, 1, &[0, 1]).is_err());
        assert!(CoeffRing::new(3, 0, &[0, 1]).is_err());
        assert!(CoeffRing::new(3, 1, &[0, 2]).is_err());
    }

    #[test]
    fn split_ring_has_zero_divisors_that_are_not_in_radical() {
        // x^2 - 1 splits mod 3: x - 1 is neither a unit nor nilpotent
        let r = CoeffRing::new(3, 2, &[-1, 0, 1]).unwrap();
        assert_eq!(r.residue_factors().len(), 2);
        let a = r.elem(&[-1, 1]);
        assert!(!r.is_unit(&a));
        let es = r.idempotents();
        assert_eq!(es.len(), 2);
        assert_eq!(r.add(&es[0], &es[1]), r.one());
        assert_eq!(r.mul(&es[0], &es[1]), r.zero());
        for e in &es {
            assert_eq!(r.mul(e, e), *e);
        }
    }

    #[test]
    fn cardinality_and_unit_count_match_brute_force() {
        let r = CoeffRing::new(3, 1, &[2, 1, 1]).unwrap();
        assert_eq!(r.cardinality(), 9);
        let mut units = 0;
        for a in 0..3 {
            for b in 0..3 {
                let e = r.elem(&[a, b]);
                let brute = (0..3).any(|c| {
                    (0..3).any(|d| r.mul(&e, &r.elem(&[c, d])) == r.one())
                });
                assert_eq!(brute, r.is_unit(&e));
                units += brute as u32;
            }
        }
        assert_eq!(units, 8);
    }

    #[test]
    fn render_forms() {
        let r = CoeffRing::new(3, 1, &[2, 1, 1]).unwrap();
        assert_eq!(r.render(&r.elem(&[2, 1])), "2 + x");
        assert_eq!(r.render_coefficient(&r.elem(&[2, 1])), "(2 + x)");
        assert_eq!(r.render(&r.zero()), "0");
        let z = CoeffRing::integers(3, 2).unwrap();
        assert_eq!(z.render(&z.from_int(-1)), "8");
    }
}

//! The crossed Laurent ring `Omega[H][gamma^+-1]`: finite sums
//! `sum_a c_a gamma^a` with `c_a` in the group ring `Omega[H]`, multiplied by
//! `(c gamma^a)(c' gamma^a') = (c alpha^a(c')) gamma^(a + a')`.

use std::collections::BTreeMap;

use crate::coeff::{CoeffRing, Elem};
use crate::group::{GElement, GroupData};
use crate::ring::Ring;

/// Terms keyed by the `gamma`-exponent; each value is a coefficient vector
/// indexed by `H`. Zero terms are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrossedLaurent {
    terms: BTreeMap<i64, Vec<Elem>>,
}

impl CrossedLaurent {
    pub fn terms(&self) -> &BTreeMap<i64, Vec<Elem>> {
        &self.terms
    }

    /// Nonzero `(coefficient, group element)` pairs in a fixed order.
    pub fn monomials(&self, ring: &CoeffRing) -> Vec<(Elem, GElement)> {
        self.terms
            .iter()
            .flat_map(|(&a, c)| {
                c.iter()
                    .enumerate()
                    .filter(|(_, x)| !ring.is_zero(x))
                    .map(move |(h, x)| (x.clone(), GElement::new(h, a)))
            })
            .collect()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }
}

/// `Omega[H][gamma^+-1]` as a ring context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedRing {
    pub base: CoeffRing,
    pub group: GroupData,
}

impl CrossedRing {
    pub fn new(base: CoeffRing, group: GroupData) -> Self {
        CrossedRing { base, group }
    }

    fn normalize(&self, mut terms: BTreeMap<i64, Vec<Elem>>) -> CrossedLaurent {
        terms.retain(|_, c| c.iter().any(|x| !self.base.is_zero(x)));
        CrossedLaurent { terms }
    }

    /// `c * g` for a single group element.
    pub fn monomial(&self, c: Elem, g: GElement) -> CrossedLaurent {
        let mut v = vec![self.base.zero(); self.group.order()];
        v[g.h] = c;
        self.normalize(BTreeMap::from([(g.a, v)]))
    }

    pub fn element(&self, g: GElement) -> CrossedLaurent {
        self.monomial(self.base.one(), g)
    }

    pub fn scalar(&self, c: Elem) -> CrossedLaurent {
        self.monomial(c, GElement::new(0, 0))
    }

    pub fn from_monomials(&self, monos: &[(Elem, GElement)]) -> CrossedLaurent {
        monos
            .iter()
            .fold(self.zero(), |acc, (c, g)| self.add(&acc, &self.monomial(c.clone(), *g)))
    }

    /// Image under a map on group elements that is a homomorphism into the
    /// target ring's group (used for quotients).
    pub fn map_group(
        &self,
        x: &CrossedLaurent,
        target: &CrossedRing,
        f: impl Fn(GElement) -> GElement,
    ) -> CrossedLaurent {
        x.monomials(&self.base)
            .into_iter()
            .fold(target.zero(), |acc, (c, g)| target.add(&acc, &target.monomial(c, f(g))))
    }

    /// `gamma^a c gamma^-a`, i.e. `alpha^a` on the `H`-basis.
    fn twist(&self, c: &[Elem], a: i64) -> Vec<Elem> {
        let mut out = vec![self.base.zero(); c.len()];
        for (h, x) in c.iter().enumerate() {
            out[self.group.act(h, a)] = x.clone();
        }
        out
    }

    fn group_ring_mul(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let r = &self.base;
        let mut out = vec![r.zero(); x.len()];
        for (h, a) in x.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (k, b) in y.iter().enumerate() {
                if r.is_zero(b) {
                    continue;
                }
                let hk = self.group.mul_h(h, k);
                out[hk] = r.add(&out[hk], &r.mul(a, b));
            }
        }
        out
    }

    pub fn render(&self, x: &CrossedLaurent) -> String {
        let parts: Vec<String> = x
            .monomials(&self.base)
            .into_iter()
            .map(|(c, g)| {
                if self.base.is_one(&c) {
                    g.to_string()
                } else {
                    format!("{}*{g}", self.base.render_coefficient(&c))
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl Ring for CrossedRing {
    type Elem = CrossedLaurent;

    fn zero(&self) -> CrossedLaurent {
        CrossedLaurent {
            terms: BTreeMap::new(),
        }
    }

    fn one(&self) -> CrossedLaurent {
        self.scalar(self.base.one())
    }

    fn add(&self, x: &CrossedLaurent, y: &CrossedLaurent) -> CrossedLaurent {
        let mut terms = x.terms.clone();
        for (a, c) in &y.terms {
            let entry = terms
                .entry(*a)
                .or_insert_with(|| vec![self.base.zero(); c.len()]);
            for (e, v) in entry.iter_mut().zip(c) {
                *e = self.base.add(e, v);
            }
        }
        self.normalize(terms)
    }

    fn neg(&self, x: &CrossedLaurent) -> CrossedLaurent {
        CrossedLaurent {
            terms: x
                .terms
                .iter()
                .map(|(a, c)| (*a, c.iter().map(|v| self.base.neg(v)).collect()))
                .collect(),
        }
    }

    fn mul(&self, x: &CrossedLaurent, y: &CrossedLaurent) -> CrossedLaurent {
        let mut terms: BTreeMap<i64, Vec<Elem>> = BTreeMap::new();
        for (a, c) in &x.terms {
            for (b, d) in &y.terms {
                let prod = self.group_ring_mul(c, &self.twist(d, *a));
                let entry = terms
                    .entry(a + b)
                    .or_insert_with(|| vec![self.base.zero(); prod.len()]);
                for (e, v) in entry.iter_mut().zip(&prod) {
                    *e = self.base.add(e, v);
                }
            }
        }
        self.normalize(terms)
    }

    fn is_zero(&self, x: &CrossedLaurent) -> bool {
        x.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(group: GroupData) -> CrossedRing {
        CrossedRing::new(CoeffRing::integers(3, 2).unwrap(), group)
    }

    #[test]
    fn gamma_commutes_with_trivial_action() {
        let cr = ring(GroupData::cyclic(3));
        let g = cr.element(GElement::gamma_power(1));
        let h = cr.element(GElement::new(1, 0));
        assert_eq!(cr.mul(&g, &h), cr.element(GElement::new(1, 1)));
        assert_eq!(cr.render(&cr.mul(&g, &h)), "h1*g^1");
    }

    #[test]
    fn gamma_twists_by_the_action() {
        let t = GroupData::cyclic(3).table().to_vec();
        let cr = CrossedRing::new(
            CoeffRing::integers(2, 1).unwrap(),
            GroupData::new(t, vec![0, 2, 1], 2, 2).unwrap(),
        );
        let g = cr.element(GElement::gamma_power(1));
        let h = cr.element(GElement::new(1, 0));
        assert_eq!(cr.mul(&g, &h), cr.element(GElement::new(2, 1)));
    }

    #[test]
    fn telescoping_product() {
        let cr = ring(GroupData::trivial());
        let r = &cr.base;
        let gp = |a| cr.element(GElement::gamma_power(a));
        let x = cr.sub(&cr.one(), &gp(1));
        let y = cr.add(&cr.add(&cr.one(), &gp(1)), &gp(2));
        assert_eq!(cr.mul(&x, &y), cr.sub(&cr.one(), &gp(3)));
        assert_eq!(cr.render(&cr.mul(&x, &y)), format!("h0*g^0 + {}*h0*g^3", r.render(&r.from_int(-1))));
    }

    #[test]
    fn agrees_with_group_multiplication() {
        let cr = ring(GroupData::cyclic(2));
        for h in 0..2 {
            for a in -2..3 {
                for k in 0..2 {
                    for b in -2..3 {
                        let (x, y) = (GElement::new(h, a), GElement::new(k, b));
                        assert_eq!(
                            cr.mul(&cr.element(x), &cr.element(y)),
                            cr.element(cr.group.mul(x, y))
                        );
                    }
                }
            }
        }
    }
}

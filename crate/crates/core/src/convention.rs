//! The evaluation convention, fixed in one place.
//!
//! A point `x` with geometric Frobenius `sigma_x` and stalk Frobenius
//! `Phi_x` contributes the factor `Id - Phi_x [sigma_x^-1]` with exponent
//! `-1`. A representation `rho` evaluates a group element `g = h gamma^a` as
//! `rho(g^-1)^t T^-a`, i.e. through the contragredient, with `gamma^-1 -> T`.
//! The local factor then evaluates to `det(1 - T^d Phi_x (x) rho(sigma_x)^t)^-1`,
//! which has the same determinant as the Euler factor of the twisted sheaf.
//!
//! The other candidate conventions are kept as values of [`Convention`] so
//! that they can be tested against the Euler product; only [`SHIPPED`] is
//! used by the rest of the crate.

use crate::coeff::{CoeffRing, Elem};
use crate::crossed::{CrossedLaurent, CrossedRing};
use crate::error::{Error, Result};
use crate::group::GElement;
use crate::matrix::{self, Matrix};
use crate::poly::{Poly, PolyRing};
use crate::rep::Rep;
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepSide {
    /// `g -> rho(g)`
    Direct,
    /// `g -> rho(g^-1)^t`
    Contragredient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrobSide {
    /// factor `Id - Phi [sigma^-1]`, evaluated with `gamma^-1 -> T`
    Inverse,
    /// factor `Id - Phi [sigma]`, evaluated with `gamma -> T`
    Direct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Convention {
    pub rep: RepSide,
    pub frob: FrobSide,
}

pub const SHIPPED: Convention = Convention {
    rep: RepSide::Contragredient,
    frob: FrobSide::Inverse,
};

impl Convention {
    pub const ALL: [Convention; 4] = [
        Convention { rep: RepSide::Direct, frob: FrobSide::Inverse },
        Convention { rep: RepSide::Direct, frob: FrobSide::Direct },
        Convention { rep: RepSide::Contragredient, frob: FrobSide::Inverse },
        Convention { rep: RepSide::Contragredient, frob: FrobSide::Direct },
    ];

    /// The group element placed in the local factor of a point.
    pub fn local_element(&self, cr: &CrossedRing, sigma: GElement) -> GElement {
        match self.frob {
            FrobSide::Inverse => cr.group.inv(sigma),
            FrobSide::Direct => sigma,
        }
    }

    /// `Id_r - Phi [g]` for the group element `g` chosen by `local_element`.
    pub fn local_factor(
        &self,
        cr: &CrossedRing,
        stalk: &Matrix<Elem>,
        sigma: GElement,
    ) -> Matrix<CrossedLaurent> {
        let g = self.local_element(cr, sigma);
        let r = stalk.rows();
        Matrix::from_fn(r, r, |i, j| {
            let term = cr.monomial(stalk.get(i, j).clone(), g);
            if i == j {
                cr.sub(&cr.one(), &term)
            } else {
                cr.neg(&term)
            }
        })
    }

    /// Matrix part and `T`-exponent of a single group element.
    fn theta_element(&self, ring: &CoeffRing, cr: &CrossedRing, rho: &Rep, g: GElement) -> Result<(Matrix<Elem>, usize)> {
        let m = match self.rep {
            RepSide::Direct => rho.eval(ring, g),
            RepSide::Contragredient => rho.eval(ring, cr.group.inv(g)).transpose(),
        };
        let e = match self.frob {
            FrobSide::Inverse => -g.a,
            FrobSide::Direct => g.a,
        };
        if e < 0 {
            return Err(Error::ConventionOverflow);
        }
        Ok((m, e as usize))
    }

    /// The `r x r` polynomial matrix of a single crossed Laurent element.
    pub fn theta(&self, cr: &CrossedRing, x: &CrossedLaurent, rho: &Rep) -> Result<Matrix<Poly>> {
        let ring = &cr.base;
        let r = rho.dim();
        let pr = PolyRing::new(ring.clone());
        let mut out = Matrix::filled(r, r, Poly::zero());
        for (c, g) in x.monomials(ring) {
            let (m, e) = self.theta_element(ring, cr, rho, g)?;
            out = Matrix::from_fn(r, r, |i, j| {
                let term = Poly::monomial(ring, ring.mul(&c, m.get(i, j)), e);
                pr.add(out.get(i, j), &term)
            });
        }
        Ok(out)
    }

    /// Applies `theta` entrywise; entry `(i, j)` becomes the `(i, j)` block.
    pub fn theta_matrix(
        &self,
        cr: &CrossedRing,
        a: &Matrix<CrossedLaurent>,
        rho: &Rep,
    ) -> Result<Matrix<Poly>> {
        let r = rho.dim();
        let blocks: Vec<Vec<Matrix<Poly>>> = (0..a.rows())
            .map(|i| (0..a.cols()).map(|j| self.theta(cr, a.get(i, j), rho)).collect())
            .collect::<Result<_>>()?;
        Ok(Matrix::from_fn(a.rows() * r, a.cols() * r, |i, j| {
            blocks[i / r][j / r].get(i % r, j % r).clone()
        }))
    }

    /// `det theta_rho(A)` as a polynomial in `T`.
    pub fn theta_det(&self, cr: &CrossedRing, a: &Matrix<CrossedLaurent>, rho: &Rep) -> Result<Poly> {
        let m = self.theta_matrix(cr, a, rho)?;
        Ok(matrix::det(&PolyRing::new(cr.base.clone()), &m))
    }
}

/// The evaluation homomorphism `Omega[H][gamma^+-1] -> M_r(Omega[T])` of the
/// shipped convention. Entries are polynomials: the local factors only
/// involve nonpositive powers of `gamma`, and a positive power is reported
/// as `ConventionOverflow`.
pub fn theta_rho(cr: &CrossedRing, x: &CrossedLaurent, rho: &Rep) -> Result<Matrix<Poly>> {
    SHIPPED.theta(cr, x, rho)
}

pub fn theta_rho_matrix(
    cr: &CrossedRing,
    a: &Matrix<CrossedLaurent>,
    rho: &Rep,
) -> Result<Matrix<Poly>> {
    SHIPPED.theta_matrix(cr, a, rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupData;

    fn setup() -> (CrossedRing, GroupData) {
        let ring = CoeffRing::integers(3, 2).unwrap();
        let g = GroupData::new(GroupData::cyclic(2).table().to_vec(), vec![0, 1], 1, 3).unwrap();
        (CrossedRing::new(ring, g.clone()), g)
    }

    #[test]
    fn gamma_inverse_maps_to_t() {
        let (cr, g) = setup();
        let triv = Rep::trivial(&cr.base, &g);
        let x = cr.element(GElement::gamma_power(-1));
        let m = theta_rho(&cr, &x, &triv).unwrap();
        assert_eq!(m.get(0, 0).render(&cr.base), "T");
        let one = theta_rho(&cr, &cr.one(), &triv).unwrap();
        assert_eq!(one.get(0, 0).render(&cr.base), "1");
        assert_eq!(
            theta_rho(&cr, &cr.element(GElement::gamma_power(1)), &triv),
            Err(Error::ConventionOverflow)
        );
    }

    #[test]
    fn sign_character_on_delta_gamma_inverse() {
        let (cr, g) = setup();
        let r = &cr.base;
        let sign = Rep::character(r, &g, &[r.one(), r.from_int(-1)], r.one()).unwrap();
        let x = cr.element(GElement::new(1, -1));
        let m = theta_rho(&cr, &x, &sign).unwrap();
        assert_eq!(m.get(0, 0), &Poly::from_ints(r, &[0, -1]));
    }

    #[test]
    fn trivial_rep_collapses_h() {
        let (cr, g) = setup();
        let triv = Rep::trivial(&cr.base, &g);
        for h in 0..2 {
            for a in -3..=0 {
                let m = theta_rho(&cr, &cr.element(GElement::new(h, a)), &triv).unwrap();
                assert_eq!(m.get(0, 0), &Poly::monomial(&cr.base, cr.base.one(), (-a) as usize));
            }
        }
    }
}

//! The connecting map `d` on square matrices over `Omega[T]` whose cokernel
//! is `S`-torsion, valued in fractional Fitting classes, and the reduction
//! of `Id - M` for a block-cyclic `M` by elementary operations.

use crate::coeff::{CoeffRing, Elem};
use crate::error::{Error, Result};
use crate::ideal::{Completion, IdealClass};
use crate::iwasawa::{fitting_ideal, limit_module};
use crate::matrix::{self, Matrix};
use crate::poly::{is_in_s, Poly, PolyRing};
use crate::ring::{CommRing, Ring};

/// An element of the torsion `K_0`, modeled as a fractional ideal class.
#[derive(Clone, Debug)]
pub struct TorsionClass {
    pub class: IdealClass,
}

impl TorsionClass {
    pub fn unit(ring: &CoeffRing) -> Self {
        TorsionClass {
            class: IdealClass::unit(ring),
        }
    }

    pub fn from_ideal(class: IdealClass) -> Self {
        TorsionClass { class }
    }

    pub fn mul(&self, ring: &CoeffRing, other: &TorsionClass) -> TorsionClass {
        TorsionClass {
            class: self.class.mul(ring, &other.class),
        }
    }

    pub fn inverse(&self) -> TorsionClass {
        TorsionClass {
            class: self.class.inverse(),
        }
    }

    /// Equality in both completions, guarded at `n` and `n + 8`, with `n`
    /// raised to cover the generator degrees.
    pub fn equals(&self, ring: &CoeffRing, other: &TorsionClass, n: usize) -> Result<bool> {
        let deg = self.class.max_degree() + other.class.max_degree();
        let n = n.max(2 * deg * ring.m() as usize + 2);
        for c in Completion::ALL {
            if !self.class.equals(ring, &other.class, n, c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn render(&self, ring: &CoeffRing) -> String {
        self.class.render(ring)
    }
}

fn poly_det(ring: &CoeffRing, alpha: &Matrix<Poly>) -> Result<Poly> {
    if !alpha.is_square() {
        return Err(Error::Shape("d is defined on square matrices".into()));
    }
    Ok(matrix::det(&PolyRing::new(ring.clone()), alpha))
}

/// `d(alpha) = [coker alpha]`, the Fitting ideal `(det alpha)`.
pub fn d_connecting(ring: &CoeffRing, alpha: &Matrix<Poly>) -> Result<TorsionClass> {
    let det = poly_det(ring, alpha)?;
    if !is_in_s(ring, &det) {
        return Err(Error::NotSQuasiIso(det.render(ring)));
    }
    Ok(TorsionClass::from_ideal(IdealClass::principal(ring, det)))
}

pub fn verify_d_multiplicative(
    ring: &CoeffRing,
    alpha: &Matrix<Poly>,
    beta: &Matrix<Poly>,
    n: usize,
) -> Result<bool> {
    if alpha.rows() != beta.rows() {
        return Err(Error::Shape("d multiplicativity needs equal sizes".into()));
    }
    let pr = PolyRing::new(ring.clone());
    let da = d_connecting(ring, alpha)?;
    let db = d_connecting(ring, beta)?;
    let dba = d_connecting(ring, &matrix::mul(&pr, beta, alpha))?;
    dba.equals(ring, &db.mul(ring, &da), n)
}

/// For `block = [[A, B], [0, C]]` with `A` of size `split`,
/// `d(block) = d(A) d(C)`.
pub fn verify_d_exactness(ring: &CoeffRing, block: &Matrix<Poly>, split: usize, n: usize) -> Result<bool> {
    let size = block.rows();
    if !block.is_square() || split > size {
        return Err(Error::Shape("exactness needs a square block matrix".into()));
    }
    let top: Vec<usize> = (0..split).collect();
    let bottom: Vec<usize> = (split..size).collect();
    if bottom.iter().any(|&i| top.iter().any(|&j| !block.get(i, j).is_zero())) {
        return Err(Error::InvariantViolation {
            what: "lower-left block is nonzero".into(),
            location: "block matrix".into(),
        });
    }
    let da = d_connecting(ring, &block.submatrix(&top, &top))?;
    let dc = d_connecting(ring, &block.submatrix(&bottom, &bottom))?;
    let d = d_connecting(ring, block)?;
    d.equals(ring, &da.mul(ring, &dc), n)
}

/// `d(Id - T Phi)` against the Fitting ideal of the limit of
/// `coker(1 - Phi^(l^n))`.
pub fn verify_limit_consistency(ring: &CoeffRing, phi: &Matrix<Elem>, n: usize) -> Result<bool> {
    let pr = PolyRing::new(ring.clone());
    let s = phi.rows();
    let alpha = Matrix::from_fn(s, s, |i, j| {
        let tphi = Poly::monomial(ring, phi.get(i, j).clone(), 1);
        if i == j {
            pr.sub(&pr.one(), &tphi)
        } else {
            pr.neg(&tphi)
        }
    });
    let d = d_connecting(ring, &alpha)?;
    let fitt = TorsionClass::from_ideal(fitting_ideal(ring, &limit_module(ring, phi)?));
    d.equals(ring, &fitt, n)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockReduction<E> {
    pub start: Matrix<E>,
    pub reduced: Matrix<E>,
    pub diagonal_form: bool,
    pub det_equal: bool,
}

impl<E> BlockReduction<E> {
    pub fn holds(&self) -> bool {
        self.diagonal_form && self.det_equal
    }
}

/// Reduces `Id - M`, `M` block-cyclic with `A` in the corner, by adding block
/// row `k` to row `k + 1` and then block column `k` times `A` to the last
/// column, and compares with `diag(Id, .., Id, Id - A)`.
pub fn block_reduction<R: CommRing>(ring: &R, a: &Matrix<R::Elem>, b: usize) -> BlockReduction<R::Elem> {
    assert!(b >= 1, "block count must be positive");
    let s = a.rows();
    let n = b * s;
    let start = matrix::sub(ring, &matrix::identity(ring, n), &matrix::block_cyclic(ring, a, b));
    let mut w = start.clone();
    for k in 0..b.saturating_sub(1) {
        for r in 0..s {
            for c in 0..n {
                let v = ring.add(w.get((k + 1) * s + r, c), w.get(k * s + r, c));
                w.set((k + 1) * s + r, c, v);
            }
        }
    }
    let last = (b - 1) * s;
    for k in 0..b - 1 {
        for row in 0..n {
            for c in 0..s {
                let mut v = w.get(row, last + c).clone();
                for t in 0..s {
                    v = ring.add(&v, &ring.mul(w.get(row, k * s + t), a.get(t, c)));
                }
                w.set(row, last + c, v);
            }
        }
    }
    let id_minus_a = matrix::sub(ring, &matrix::identity(ring, s), a);
    let target = Matrix::from_fn(n, n, |i, j| {
        if i >= last && j >= last {
            id_minus_a.get(i - last, j - last).clone()
        } else if i == j {
            ring.one()
        } else {
            ring.zero()
        }
    });
    let det_equal = matrix::det(ring, &start) == matrix::det(ring, &id_minus_a);
    BlockReduction {
        diagonal_form: w == target,
        reduced: w,
        start,
        det_equal,
    }
}

pub fn block_reduction_check<R: CommRing>(ring: &R, a: &Matrix<R::Elem>, b: usize) -> bool {
    block_reduction(ring, a, b).holds()
}

//! Representations of `G = H x| Gamma` on free `Omega`-modules, given by the
//! images of the elements of `H` and of `gamma`.

use crate::coeff::{CoeffRing, Elem};
use crate::error::{Error, Result};
use crate::group::{GElement, GroupData, OpenSubgroup};
use crate::matrix::{self, Matrix};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    dim: usize,
    h_images: Vec<Matrix<Elem>>,
    gamma_image: Matrix<Elem>,
    gamma_inverse: Matrix<Elem>,
}

impl Rep {
    /// Checks the homomorphism property on `H`, invertibility of `rho(gamma)`
    /// and `rho(gamma) rho(h) rho(gamma)^-1 = rho(alpha(h))`.
    pub fn new(
        ring: &CoeffRing,
        group: &GroupData,
        h_images: Vec<Matrix<Elem>>,
        gamma_image: Matrix<Elem>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidRep(msg));
        let dim = gamma_image.rows();
        if h_images.len() != group.order() {
            return bad(format!(
                "{} images given for a group of order {}",
                h_images.len(),
                group.order()
            ));
        }
        if !gamma_image.is_square() || h_images.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return bad("images must be square matrices of one size".into());
        }
        if h_images[0] != matrix::identity(ring, dim) {
            return bad("identity of H is not sent to the identity matrix".into());
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let lhs = matrix::mul(ring, &h_images[a], &h_images[b]);
                if lhs != h_images[group.mul_h(a, b)] {
                    return bad(format!("not a homomorphism at ({a}, {b})"));
                }
            }
        }
        let gamma_inverse = matrix::inverse(ring, &gamma_image)
            .map_err(|_| Error::InvalidRep("image of gamma is not invertible".into()))?;
        for (h, img) in h_images.iter().enumerate() {
            let conj = matrix::mul(ring, &matrix::mul(ring, &gamma_image, img), &gamma_inverse);
            if conj != h_images[group.act(h, 1)] {
                return bad(format!("semidirect relation fails at h{h}"));
            }
        }
        Ok(Rep {
            dim,
            h_images,
            gamma_image,
            gamma_inverse,
        })
    }

    pub fn trivial(ring: &CoeffRing, group: &GroupData) -> Self {
        let id = matrix::identity(ring, 1);
        Rep::new(ring, group, vec![id.clone(); group.order()], id).expect("trivial rep")
    }

    /// A rank-one representation from its values on `H` and on `gamma`.
    pub fn character(
        ring: &CoeffRing,
        group: &GroupData,
        h_values: &[Elem],
        gamma_value: Elem,
    ) -> Result<Self> {
        let one = |c: &Elem| Matrix::filled(1, 1, c.clone());
        Rep::new(ring, group, h_values.iter().map(one).collect(), one(&gamma_value))
    }

    /// `H` acts trivially and `gamma` by `lambda`.
    pub fn gamma_character(ring: &CoeffRing, group: &GroupData, lambda: Elem) -> Result<Self> {
        Rep::character(ring, group, &vec![ring.one(); group.order()], lambda)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h_images(&self) -> &[Matrix<Elem>] {
        &self.h_images
    }

    pub fn gamma_image(&self) -> &Matrix<Elem> {
        &self.gamma_image
    }

    /// `rho(h gamma^a) = rho(h) rho(gamma)^a`
    pub fn eval(&self, ring: &CoeffRing, g: GElement) -> Matrix<Elem> {
        let base = if g.a < 0 {
            &self.gamma_inverse
        } else {
            &self.gamma_image
        };
        let power = matrix::pow(ring, base, g.a.unsigned_abs());
        matrix::mul(ring, &self.h_images[g.h], &power)
    }

    /// `g -> rho(g^-1)^t`
    pub fn contragredient(&self, ring: &CoeffRing, group: &GroupData) -> Rep {
        let h_images = (0..group.order())
            .map(|h| self.h_images[group.inv_h(h)].transpose())
            .collect();
        Rep::new(ring, group, h_images, self.gamma_inverse.transpose())
            .expect("contragredient of a valid rep")
    }

    pub fn tensor(&self, ring: &CoeffRing, group: &GroupData, other: &Rep) -> Rep {
        let h_images = self
            .h_images
            .iter()
            .zip(&other.h_images)
            .map(|(a, b)| matrix::kron(ring, a, b))
            .collect();
        let gamma = matrix::kron(ring, &self.gamma_image, &other.gamma_image);
        Rep::new(ring, group, h_images, gamma).expect("tensor of valid reps")
    }

    pub fn direct_sum(&self, ring: &CoeffRing, group: &GroupData, other: &Rep) -> Rep {
        let h_images = self
            .h_images
            .iter()
            .zip(&other.h_images)
            .map(|(a, b)| matrix::direct_sum(ring, a, b))
            .collect();
        let gamma = matrix::direct_sum(ring, &self.gamma_image, &other.gamma_image);
        Rep::new(ring, group, h_images, gamma).expect("direct sum of valid reps")
    }

    /// Restriction to an open subgroup, as a rep of `U = K x| <u>`.
    pub fn restrict(&self, ring: &CoeffRing, u: &OpenSubgroup) -> Rep {
        let h_images = u.k_elems().iter().map(|&k| self.h_images[k].clone()).collect();
        let gamma = self.eval(ring, u.generator());
        Rep::new(ring, u.group(), h_images, gamma).expect("restriction of a valid rep")
    }

    /// `rho o pi` for a rep of a quotient `G/N`, with `proj` the projection
    /// on `H`-indices.
    pub fn pull_back(&self, ring: &CoeffRing, group: &GroupData, proj: &[usize]) -> Result<Rep> {
        let h_images = proj.iter().map(|&q| self.h_images[q].clone()).collect();
        Rep::new(ring, group, h_images, self.gamma_image.clone())
    }

    /// `tr rho(g)`
    pub fn trace(&self, ring: &CoeffRing, g: GElement) -> Elem {
        let m = self.eval(ring, g);
        (0..self.dim).fold(ring.zero(), |acc, i| ring.add(&acc, m.get(i, i)))
    }
}

/// `Ind_U^G rho_sub` on the basis indexed by (coset, basis vector of
/// `rho_sub`); block `(pi(i), i)` of `rho(g)` is `rho_sub(t_pi(i)^-1 g t_i)`
/// where `g t_i` lies in `t_pi(i) U`.
pub fn induce_rep(
    ring: &CoeffRing,
    group: &GroupData,
    u: &OpenSubgroup,
    rho_sub: &Rep,
) -> Result<Rep> {
    if rho_sub.h_images.len() != u.k_elems().len() {
        return Err(Error::NotASubgroup(
            "representation does not match the subgroup".into(),
        ));
    }
    let reps = u.coset_reps(group);
    let n = reps.len();
    let r = rho_sub.dim();
    let image = |g: GElement| -> Matrix<Elem> {
        let mut out = Matrix::filled(n * r, n * r, ring.zero());
        for (i, &t) in reps.iter().enumerate() {
            let gt = group.mul(g, t);
            let j = u.coset_of(group, &reps, gt);
            let inner = group.mul(group.inv(reps[j]), gt);
            let local = u
                .from_ambient(group, inner)
                .expect("coset computation lands in U");
            let block = rho_sub.eval(ring, local);
            for a in 0..r {
                for b in 0..r {
                    out.set(j * r + a, i * r + b, block.get(a, b).clone());
                }
            }
        }
        out
    };
    let h_images = (0..group.order()).map(|h| image(GElement::new(h, 0))).collect();
    Rep::new(ring, group, h_images, image(GElement::gamma_power(1)))
}

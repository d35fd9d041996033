//! The K1 class `ncL` as a formal product of signed powers of matrices over
//! the crossed Laurent ring, and its evaluations at representations.

use crate::check::Check;
use crate::coeff::{CoeffRing, Elem};
use crate::convention::SHIPPED;
use crate::covering::{subcover_points, CohomologySpec, CoveringSpec, Point, SheafSpec};
use crate::crossed::{CrossedLaurent, CrossedRing};
use crate::error::{Error, Result};
use crate::group::{GElement, GroupData, OpenSubgroup};
use crate::lfun::euler_product;
use crate::matrix::Matrix;
use crate::poly::{is_in_s, PolyRing};
use crate::ratfunc::{compare_series, RationalFunction};
use crate::rep::{induce_rep, Rep};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K1Class {
    ring: CrossedRing,
    factors: Vec<(Matrix<CrossedLaurent>, i8)>,
}

impl K1Class {
    /// Each factor must be S-invertible: after collapsing `H` its
    /// determinant lies in `S`.
    pub fn new(ring: CrossedRing, factors: Vec<(Matrix<CrossedLaurent>, i8)>) -> Result<Self> {
        let triv = Rep::trivial(&ring.base, &ring.group);
        for (i, (a, e)) in factors.iter().enumerate() {
            if !a.is_square() {
                return Err(Error::Shape(format!("factor {i} is not square")));
            }
            if e.abs() != 1 {
                return Err(Error::Shape(format!("factor {i} has exponent {e}")));
            }
            let d = SHIPPED.theta_det(&ring, a, &triv)?;
            if !is_in_s(&ring.base, &d) {
                return Err(Error::NotSQuasiIso(d.render(&ring.base)));
            }
        }
        Ok(K1Class { ring, factors })
    }

    pub fn identity(ring: CrossedRing) -> Self {
        K1Class {
            ring,
            factors: Vec::new(),
        }
    }

    pub fn crossed_ring(&self) -> &CrossedRing {
        &self.ring
    }

    pub fn factors(&self) -> &[(Matrix<CrossedLaurent>, i8)] {
        &self.factors
    }

    pub fn mul(&self, other: &K1Class) -> K1Class {
        assert_eq!(self.ring, other.ring, "classes over different rings");
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        K1Class {
            ring: self.ring.clone(),
            factors,
        }
    }

    pub fn inverse(&self) -> K1Class {
        K1Class {
            ring: self.ring.clone(),
            factors: self.factors.iter().rev().map(|(a, e)| (a.clone(), -e)).collect(),
        }
    }

    pub fn render(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|(a, e)| {
                let rows: Vec<String> = (0..a.rows())
                    .map(|i| {
                        let cells: Vec<String> =
                            a.row(i).iter().map(|x| self.ring.render(x)).collect();
                        format!("[{}]", cells.join(", "))
                    })
                    .collect();
                format!("[{}]^{e}", rows.join(", "))
            })
            .collect::<Vec<_>>()
            .join(" * ")
    }
}

/// The class from points and their stalk Frobenius matrices: one factor
/// `Id - Phi_x [sigma_x^-1]` with exponent `-1` per point.
pub fn ncl_from_stalks(ring: CrossedRing, points: &[Point], stalks: &[Matrix<Elem>]) -> Result<K1Class> {
    let factors = points
        .iter()
        .zip(stalks)
        .map(|(x, phi)| (SHIPPED.local_factor(&ring, phi, x.frobenius), -1))
        .collect();
    K1Class::new(ring, factors)
}

pub fn ncl_from_points(cov: &CoveringSpec, sheaf: &SheafSpec) -> Result<K1Class> {
    let cr = CrossedRing::new(cov.ring.clone(), cov.group.clone());
    let stalks: Vec<Matrix<Elem>> = cov.points.iter().map(|x| sheaf.stalk(&cov.ring, x)).collect();
    ncl_from_stalks(cr, &cov.points, &stalks)
}

/// Factors `Id - [gamma^-1] Phi_i` with exponent `(-1)^(i+1)`; needs `H`
/// trivial.
pub fn ncl_from_cohomology(ring: &CoeffRing, group: &GroupData, coh: &CohomologySpec) -> Result<K1Class> {
    if !group.is_trivial() {
        return Err(Error::WrongGroup);
    }
    let cr = CrossedRing::new(ring.clone(), group.clone());
    let sigma = GElement::gamma_power(1);
    let factors = coh
        .entries
        .iter()
        .map(|(i, phi)| {
            let e = if i.rem_euclid(2) == 1 { 1 } else { -1 };
            (SHIPPED.local_factor(&cr, phi, sigma), e)
        })
        .collect();
    K1Class::new(cr, factors)
}

/// `prod det(theta_rho(A))^e` as one rational function.
pub fn ncl_evaluate(c: &K1Class, rho: &Rep) -> Result<RationalFunction> {
    let cr = &c.ring;
    if rho.h_images().len() != cr.group.order() {
        return Err(Error::InvalidRep("representation of a different group".into()));
    }
    let pr = PolyRing::new(cr.base.clone());
    let (mut num, mut den) = (pr.one(), pr.one());
    for (a, e) in &c.factors {
        let d = SHIPPED.theta_det(cr, a, rho)?;
        if *e > 0 {
            num = pr.mul(&num, &d);
        } else {
            den = pr.mul(&den, &d);
        }
    }
    let den_text = den.render(&cr.base);
    RationalFunction::new(&cr.base, num, den)
        .map_err(|_| Error::SingularEvaluation(format!("denominator {den_text} is not in P")))
}

/// Pushes a class along `G -> G/N`; also returns the projection on
/// `H`-indices.
pub fn ncl_push_quotient(c: &K1Class, normal: &[usize]) -> Result<(K1Class, Vec<usize>)> {
    let (qgroup, proj) = c.ring.group.quotient(normal)?;
    let target = CrossedRing::new(c.ring.base.clone(), qgroup);
    let factors = c
        .factors
        .iter()
        .map(|(a, e)| {
            let mapped = a.map(|x| {
                c.ring
                    .map_group(x, &target, |g| GElement::new(proj[g.h], g.a))
            });
            (mapped, *e)
        })
        .collect();
    Ok((K1Class::new(target, factors)?, proj))
}

/// The class of the twisted sheaf `F (x) M`.
pub fn ncl_twist(cov: &CoveringSpec, sheaf: &SheafSpec, m: &Rep) -> Result<K1Class> {
    let twisted = SheafSpec {
        rep: sheaf.rep.tensor(&cov.ring, &cov.group, m),
    };
    ncl_from_points(cov, &twisted)
}

/// `rho(ncL)` against the Euler product of the `rho`-twisted sheaf.
pub fn interpolation_check(
    cov: &CoveringSpec,
    sheaf: &SheafSpec,
    rho: &Rep,
    n: usize,
) -> Result<Check> {
    let rf = ncl_evaluate(&ncl_from_points(cov, sheaf)?, rho)?;
    let s = euler_product(cov, sheaf, Some(rho), n);
    let pass = compare_series(&cov.ring, &rf, &s, n);
    Ok(Check::new(
        "interpolation",
        rf.expand(&cov.ring, n).render(&cov.ring),
        s.render(&cov.ring),
        pass,
    ))
}

pub fn verify_interpolation(cov: &CoveringSpec, sheaf: &SheafSpec, rho: &Rep, n: usize) -> Result<bool> {
    Ok(interpolation_check(cov, sheaf, rho, n)?.pass)
}

/// `rho(ncL_(G/N))` against `(rho o pi)(ncL_G)` for a rep of the quotient.
pub fn quotient_check(
    cov: &CoveringSpec,
    sheaf: &SheafSpec,
    normal: &[usize],
    rho_bar: &Rep,
) -> Result<Check> {
    let ring = &cov.ring;
    let c = ncl_from_points(cov, sheaf)?;
    let (pushed, proj) = ncl_push_quotient(&c, normal)?;
    let lhs = ncl_evaluate(&pushed, rho_bar)?;
    let rhs = ncl_evaluate(&c, &rho_bar.pull_back(ring, &cov.group, &proj)?)?;
    // the pushed class is also the class of the pushed covering
    let qgroup = pushed.crossed_ring().group.clone();
    let qpoints: Vec<Point> = cov
        .points
        .iter()
        .map(|x| Point::new(x.degree, GElement::new(proj[x.frobenius.h], x.frobenius.a)))
        .collect::<Result<_>>()?;
    let stalks: Vec<Matrix<Elem>> = cov.points.iter().map(|x| sheaf.stalk(ring, x)).collect();
    let direct = ncl_from_stalks(CrossedRing::new(ring.clone(), qgroup), &qpoints, &stalks)?;
    let pass = lhs.eq_exact(ring, &rhs) && direct == pushed;
    Ok(Check::new("quotient", lhs.render(ring), rhs.render(ring), pass))
}

/// `rho(ncL(F (x) M)) = (M (x) rho)(ncL(F))`.
pub fn twist_check(cov: &CoveringSpec, sheaf: &SheafSpec, m: &Rep, rho: &Rep) -> Result<Check> {
    let ring = &cov.ring;
    let lhs = ncl_evaluate(&ncl_twist(cov, sheaf, m)?, rho)?;
    let rhs = ncl_evaluate(&ncl_from_points(cov, sheaf)?, &m.tensor(ring, &cov.group, rho))?;
    let pass = lhs.eq_exact(ring, &rhs);
    Ok(Check::new("twist", lhs.render(ring), rhs.render(ring), pass))
}

/// Artin formalism for an open subgroup `U` of lattice index `c`: over `F`,
/// the value at `Ind rho'` equals the value over `F' = F_(q^c)` at `rho'`
/// with `T^c` substituted. Both the class evaluations and the Euler
/// products are compared.
pub fn artin_check(
    cov: &CoveringSpec,
    sheaf: &SheafSpec,
    u: &OpenSubgroup,
    rho_sub: &Rep,
    n: usize,
) -> Result<Check> {
    let ring = &cov.ring;
    let c = u.index() as usize;
    let ind = induce_rep(ring, &cov.group, u, rho_sub)?;
    let sub = subcover_points(cov, u)?;
    let sub_sheaf = SheafSpec {
        rep: sheaf.rep.restrict(ring, u),
    };
    let n_sub = n.div_ceil(c);
    let lhs_euler = euler_product(cov, sheaf, Some(&ind), n);
    let rhs_euler = euler_product(&sub, &sub_sheaf, Some(rho_sub), n_sub).substitute_power(ring, c, n);
    let lhs_class = ncl_evaluate(&ncl_from_points(cov, sheaf)?, &ind)?.expand(ring, n);
    let rhs_class = ncl_evaluate(&ncl_from_points(&sub, &sub_sheaf)?, rho_sub)?
        .expand(ring, n_sub)
        .substitute_power(ring, c, n);
    let pass = lhs_euler.eq_to(&rhs_euler, n)
        && lhs_class.eq_to(&rhs_class, n)
        && lhs_class.eq_to(&lhs_euler, n);
    Ok(Check::new(
        "artin",
        lhs_class.render(ring),
        rhs_class.render(ring),
        pass,
    ))
}

pub fn verify_artin_induction(
    cov: &CoveringSpec,
    sheaf: &SheafSpec,
    u: &OpenSubgroup,
    rho_sub: &Rep,
    n: usize,
) -> Result<bool> {
    Ok(artin_check(cov, sheaf, u, rho_sub, n)?.pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn z9() -> CoeffRing {
        CoeffRing::integers(3, 2).unwrap()
    }

    fn gamma_cov(degrees: &[u64]) -> CoveringSpec {
        CoveringSpec {
            q: 5,
            ring: z9(),
            group: GroupData::trivial(),
            points: degrees
                .iter()
                .map(|&d| Point::new(d, GElement::gamma_power(d as i64)).unwrap())
                .collect(),
        }
    }

    fn z2_cov() -> CoveringSpec {
        CoveringSpec {
            q: 7,
            ring: z9(),
            group: GroupData::new(GroupData::cyclic(2).table().to_vec(), vec![0, 1], 1, 3).unwrap(),
            points: vec![Point::new(1, GElement::new(1, 1)).unwrap()],
        }
    }

    #[test]
    fn single_point_class() {
        let cov = gamma_cov(&[1]);
        let c = ncl_from_points(&cov, &SheafSpec::trivial(&cov)).unwrap();
        assert_eq!(c.factors().len(), 1);
        assert_eq!(c.render(), "[[8*h0*g^-1 + h0*g^0]]^-1");
        let v = ncl_evaluate(&c, &Rep::trivial(&cov.ring, &cov.group)).unwrap();
        assert_eq!(v.render(&cov.ring), "(1) / (1 + 8*T)");
    }

    #[test]
    fn sign_character_value() {
        let cov = z2_cov();
        let r = &cov.ring;
        let sign = Rep::character(r, &cov.group, &[r.one(), r.from_int(-1)], r.one()).unwrap();
        let v = ncl_evaluate(&ncl_from_points(&cov, &SheafSpec::trivial(&cov)).unwrap(), &sign).unwrap();
        let expect = RationalFunction::new(r, Poly::from_ints(r, &[1]), Poly::from_ints(r, &[1, 1])).unwrap();
        assert!(v.eq_exact(r, &expect));
    }

    #[test]
    fn two_points_and_group_laws() {
        let cov = gamma_cov(&[1, 2]);
        let r = &cov.ring;
        let triv = Rep::trivial(r, &cov.group);
        let c = ncl_from_points(&cov, &SheafSpec::trivial(&cov)).unwrap();
        let v = ncl_evaluate(&c, &triv).unwrap();
        let pr = PolyRing::new(r.clone());
        let den = pr.mul(&Poly::from_ints(r, &[1, -1]), &Poly::from_ints(r, &[1, 0, -1]));
        assert!(v.eq_exact(r, &RationalFunction::new(r, pr.one(), den).unwrap()));
        let prod = ncl_evaluate(&c.mul(&c.inverse()), &triv).unwrap();
        assert!(prod.eq_exact(r, &RationalFunction::one(r)));
        let sq = ncl_evaluate(&c.mul(&c), &triv).unwrap();
        assert!(sq.eq_exact(r, &v.mul(r, &v)));
    }

    #[test]
    fn cohomology_class_needs_trivial_h() {
        let cov = z2_cov();
        assert_eq!(
            ncl_from_cohomology(&cov.ring, &cov.group, &CohomologySpec::default()),
            Err(Error::WrongGroup)
        );
        let empty = ncl_from_cohomology(&cov.ring, &GroupData::trivial(), &CohomologySpec::default()).unwrap();
        assert_eq!(empty.render(), "1");
    }

    #[test]
    fn transformation_laws_on_z2() {
        let cov = z2_cov();
        let r = &cov.ring;
        let sheaf = SheafSpec::trivial(&cov);
        let sign = Rep::character(r, &cov.group, &[r.one(), r.from_int(-1)], r.one()).unwrap();
        assert!(verify_interpolation(&cov, &sheaf, &sign, 32).unwrap());
        assert!(twist_check(&cov, &sheaf, &sign, &Rep::trivial(r, &cov.group)).unwrap().pass);
        let qtriv = Rep::trivial(r, &GroupData::trivial());
        assert!(quotient_check(&cov, &sheaf, &[0, 1], &qtriv).unwrap().pass);
        let u = OpenSubgroup::new(&cov.group, &[0, 1], 3, 0).unwrap();
        let sub_sign = Rep::character(r, u.group(), &[r.one(), r.from_int(-1)], r.one()).unwrap();
        assert!(verify_artin_induction(&cov, &sheaf, &u, &sub_sign, 32).unwrap());
    }

    #[test]
    fn artin_on_index_three_lattice() {
        let cov = gamma_cov(&[1]);
        let r = &cov.ring;
        let u = OpenSubgroup::new(&cov.group, &[0], 3, 0).unwrap();
        let chk = artin_check(&cov, &SheafSpec::trivial(&cov), &u, &Rep::trivial(r, u.group()), 9).unwrap();
        assert!(chk.pass);
        assert_eq!(chk.left, "1 + T^3 + T^6");
    }
}

//! Classical L-functions: the Euler product over closed points and the
//! alternating product of Frobenius determinants on cohomology.

use crate::coeff::{CoeffRing, Elem};
use crate::covering::{CohomologySpec, CoveringSpec, SheafSpec};
use crate::matrix::{self, Matrix};
use crate::poly::{Poly, PolyRing};
use crate::ratfunc::RationalFunction;
use crate::rep::Rep;
use crate::ring::Ring;
use crate::series::Series;

/// `det(Id - T Phi)`
pub fn char_poly(ring: &CoeffRing, phi: &Matrix<Elem>) -> Poly {
    Poly::new(ring, matrix::charpoly(ring, phi))
}

/// `prod_x det(Id - T^(d_x) Phi_x)^-1` modulo `T^n`.
pub fn euler_product_stalks(ring: &CoeffRing, stalks: &[(u64, Matrix<Elem>)], n: usize) -> Series {
    stalks.iter().fold(Series::one(ring, n), |acc, (d, phi)| {
        let local = char_poly(ring, phi).substitute_power(ring, *d as usize);
        let inv = Series::from_poly(ring, &local, n)
            .invert(ring)
            .expect("Euler factors have constant term 1");
        acc.mul(ring, &inv)
    })
}

/// Stalk Frobenius matrices of `sheaf`, tensored with `twist` when given.
pub fn twisted_stalks(
    cov: &CoveringSpec,
    sheaf: &SheafSpec,
    twist: Option<&Rep>,
) -> Vec<(u64, Matrix<Elem>)> {
    let ring = &cov.ring;
    cov.points
        .iter()
        .map(|x| {
            let phi = sheaf.stalk(ring, x);
            let phi = match twist {
                Some(rho) => matrix::kron(ring, &phi, &rho.eval(ring, x.frobenius)),
                None => phi,
            };
            (x.degree, phi)
        })
        .collect()
}

pub fn euler_product(
    cov: &CoveringSpec,
    sheaf: &SheafSpec,
    twist: Option<&Rep>,
    n: usize,
) -> Series {
    euler_product_stalks(&cov.ring, &twisted_stalks(cov, sheaf, twist), n)
}

/// `prod_i det(Id - T Phi_i)^((-1)^(i+1))`: odd degrees in the numerator,
/// even degrees in the denominator.
pub fn trace_formula_l(ring: &CoeffRing, coh: &CohomologySpec) -> RationalFunction {
    let pr = PolyRing::new(ring.clone());
    let (mut num, mut den) = (pr.one(), pr.one());
    for (i, phi) in &coh.entries {
        let f = char_poly(ring, phi);
        if i.rem_euclid(2) == 1 {
            num = pr.mul(&num, &f);
        } else {
            den = pr.mul(&den, &f);
        }
    }
    RationalFunction::new(ring, num, den).expect("determinants have constant term 1")
}

/// `H^0_c` of a finite scheme: per point, the block-cyclic Frobenius with the
/// stalk Frobenius in the corner.
pub fn derived_cohomology(cov: &CoveringSpec, sheaf: &SheafSpec, twist: Option<&Rep>) -> CohomologySpec {
    let ring = &cov.ring;
    let blocks: Vec<Matrix<Elem>> = twisted_stalks(cov, sheaf, twist)
        .iter()
        .map(|(d, phi)| matrix::block_cyclic(ring, phi, *d as usize))
        .collect();
    let total = blocks
        .into_iter()
        .reduce(|a, b| matrix::direct_sum(ring, &a, &b))
        .unwrap_or_else(|| Matrix::filled(0, 0, ring.zero()));
    CohomologySpec {
        entries: vec![(0, total)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::Point;
    use crate::group::{GElement, GroupData};
    use crate::ratfunc::compare_series;

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

    #[test]
    fn single_point() {
        let cov = gamma_cov(&[1]);
        let s = euler_product(&cov, &SheafSpec::trivial(&cov), None, 4);
        assert_eq!(s.render(&cov.ring), "1 + T + T^2 + T^3");
    }

    #[test]
    fn two_points_against_multiplied_geometric_series() {
        let r = z9();
        let cov = gamma_cov(&[1, 2]);
        let s = euler_product(&cov, &SheafSpec::trivial(&cov), None, 4);
        // 1/(1-T) * 1/(1-T^2) by hand: 1 + T + 2T^2 + 2T^3
        assert_eq!(s, Series::from_ints(&r, 4, &[1, 1, 2, 2]));
    }

    #[test]
    fn negative_frobenius() {
        let r = z9();
        let stalks = vec![(1, Matrix::filled(1, 1, r.from_int(-1)))];
        assert_eq!(
            euler_product_stalks(&r, &stalks, 4),
            Series::from_ints(&r, 4, &[1, -1, 1, -1])
        );
    }

    #[test]
    fn trace_formula_shapes() {
        let r = z9();
        let empty = trace_formula_l(&r, &CohomologySpec::default());
        assert_eq!(empty.render(&r), "1");
        let point = CohomologySpec {
            entries: vec![(0, Matrix::filled(1, 1, r.one()))],
        };
        assert_eq!(trace_formula_l(&r, &point).render(&r), "(1) / (1 + 8*T)");
        let companion = Matrix::from_rows(vec![
            vec![r.zero(), r.from_int(-5)],
            vec![r.one(), r.from_int(2)],
        ])
        .unwrap();
        assert_eq!(char_poly(&r, &companion), Poly::from_ints(&r, &[1, -2, 5]));
    }

    #[test]
    fn derived_cohomology_matches_euler_product() {
        let cov = gamma_cov(&[1, 2, 3]);
        let sheaf = SheafSpec::trivial(&cov);
        let rf = trace_formula_l(&cov.ring, &derived_cohomology(&cov, &sheaf, None));
        let s = euler_product(&cov, &sheaf, None, 16);
        assert!(compare_series(&cov.ring, &rf, &s, 16));
    }
}

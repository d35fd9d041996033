//! Ideals of `Omega[T]` compared inside a completion truncated at `T^N`.
//!
//! Membership `f in (g_1, .., g_k)` is a linear system over `Z/l^m` in the
//! coefficients of the cofactors, solved through Smith normal form.

use crate::coeff::{CoeffRing, Elem};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{Poly, PolyRing};
use crate::ring::Ring;
use crate::series::Series;
use crate::zmod::{flatten, solve_omega, Span, ZMod};

/// Where an ideal of `Omega[T]` is completed before comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Completion {
    /// `Omega[[T]]`.
    TAdic,
    /// `Omega[[T - 1]]`, i.e. the Iwasawa algebra `Omega[[Gamma]]` with
    /// `T = gamma^-1`. Elements of `P` are generally not units here.
    Augmentation,
}

impl Completion {
    pub const ALL: [Completion; 2] = [Completion::TAdic, Completion::Augmentation];

    /// Rewrites `f` in the local variable of the completion.
    pub fn localize(self, ring: &CoeffRing, f: &Poly) -> Poly {
        match self {
            Completion::TAdic => f.clone(),
            Completion::Augmentation => f.shift(ring, &ring.one()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Completion::TAdic => "T-adic",
            Completion::Augmentation => "augmentation",
        }
    }
}

/// Cofactors `u_i` with `sum u_i g_i = f mod T^n`, if they exist.
pub fn ideal_cofactors(ring: &CoeffRing, gens: &[Poly], f: &Poly, n: usize) -> Option<Vec<Series>> {
    let gens: Vec<&Poly> = gens.iter().collect();
    let k = gens.len();
    let target: Vec<_> = (0..n).map(|t| f.coeff(ring, t)).collect();
    if k == 0 {
        return target.iter().all(|c| ring.is_zero(c)).then(Vec::new);
    }
    let a = Matrix::from_fn(n, k * n, |t, col| {
        let (i, j) = (col / n, col % n);
        if j <= t {
            gens[i].coeff(ring, t - j)
        } else {
            ring.zero()
        }
    });
    let sol = solve_omega(ring, &a, &target)?;
    Some(
        sol.chunks(n)
            .map(|c| Series::new(ring, n, c.to_vec()))
            .collect(),
    )
}

/// The `Omega`-span of `T^j g_i` (`j < n`) inside `Omega[[T]]/(T^n)`,
/// echelonized once so that many memberships can be tested.
pub struct IdealSpan {
    span: Span,
    n: usize,
    degree: usize,
}

impl IdealSpan {
    pub fn new(ring: &CoeffRing, gens: &[Poly], n: usize) -> Self {
        let d = ring.degree();
        let mut span = Span::new(ZMod::of(ring), n * d);
        for g in gens {
            let g = g.truncate(ring, n);
            if g.is_zero() {
                continue;
            }
            for t in 0..d {
                let mut basis = vec![0i64; d];
                basis[t] = 1;
                let gx = g.scale(ring, &ring.elem(&basis));
                for j in 0..n {
                    let coords: Vec<Elem> = (0..n)
                        .map(|k| if k >= j { gx.coeff(ring, k - j) } else { ring.zero() })
                        .collect();
                    span.insert(flatten(&coords));
                }
            }
        }
        IdealSpan { span, n, degree: d }
    }

    pub fn contains(&self, ring: &CoeffRing, f: &Poly) -> bool {
        let coords: Vec<Elem> = (0..self.n).map(|k| f.coeff(ring, k)).collect();
        debug_assert_eq!(coords.len() * self.degree, self.span.width());
        self.span.contains(&flatten(&coords))
    }
}

pub fn ideal_contains(ring: &CoeffRing, gens: &[Poly], f: &Poly, n: usize) -> bool {
    IdealSpan::new(ring, gens, n).contains(ring, f)
}

/// A unit `u` (unit constant term) with `u g = f mod T^n`, when `f` and `g`
/// divide each other modulo `T^n`.
///
/// Mutual divisibility forces `u` to be a unit in every local component
/// where `f` is nonzero; components where `f` vanishes get `u = 1`.
pub fn unit_certificate(ring: &CoeffRing, f: &Poly, g: &Poly, n: usize) -> Option<Series> {
    let u = ideal_cofactors(ring, std::slice::from_ref(g), &f.truncate(ring, n), n)?.remove(0);
    ideal_cofactors(ring, std::slice::from_ref(f), &g.truncate(ring, n), n)?;
    let fs = Series::from_poly(ring, f, n);
    let mut fixed = Series::new(ring, n, Vec::new());
    for e in ring.idempotents() {
        let e_s = Series::new(ring, n, vec![e.clone()]);
        let component_zero = e_s.mul(ring, &fs).coeffs().iter().all(|c| ring.is_zero(c));
        let part = if component_zero { e_s } else { e_s.mul(ring, &u) };
        fixed = fixed.add(ring, &part);
    }
    debug_assert!(ring.is_unit(&fixed.coeffs()[0]));
    debug_assert!(fixed
        .mul(ring, &Series::from_poly(ring, g, n))
        .eq_to(&fs, n));
    Some(fixed)
}

/// `f` and `g` agree up to a unit of `Omega[[T]]/(T^n)`.
pub fn eq_up_to_unit(ring: &CoeffRing, f: &Poly, g: &Poly, n: usize) -> bool {
    unit_certificate(ring, f, g, n).is_some()
}

/// Ideal equality by mutual membership, in the given completion at
/// precision `n`.
pub fn ideals_equal(
    ring: &CoeffRing,
    a: &[Poly],
    b: &[Poly],
    n: usize,
    completion: Completion,
) -> bool {
    let la: Vec<Poly> = a.iter().map(|f| completion.localize(ring, f)).collect();
    let lb: Vec<Poly> = b.iter().map(|f| completion.localize(ring, f)).collect();
    let sa = IdealSpan::new(ring, &la, n);
    if !lb.iter().all(|f| sa.contains(ring, f)) {
        return false;
    }
    let sb = IdealSpan::new(ring, &lb, n);
    la.iter().all(|f| sb.contains(ring, f))
}

/// Runs `ideals_equal` at `n` and `n + 8`; disagreement is an error rather
/// than a verdict.
pub fn ideals_equal_guarded(
    ring: &CoeffRing,
    a: &[Poly],
    b: &[Poly],
    n: usize,
    completion: Completion,
) -> Result<bool> {
    let low = ideals_equal(ring, a, b, n, completion);
    let high = ideals_equal(ring, a, b, n + 8, completion);
    if low != high {
        return Err(Error::PrecisionUnstable {
            low: n,
            high: n + 8,
            at_low: low,
            at_high: high,
        });
    }
    Ok(low)
}

/// A fractional ideal class `(num) (den)^-1` of `Omega[T]`.
#[derive(Clone, Debug)]
pub struct IdealClass {
    pub num: Vec<Poly>,
    pub den: Vec<Poly>,
}

fn dedup(gens: Vec<Poly>) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::new();
    for g in gens {
        if !g.is_zero() && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

fn product_ideal(ring: &CoeffRing, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let pr = PolyRing::new(ring.clone());
    dedup(
        a.iter()
            .flat_map(|x| b.iter().map(|y| pr.mul(x, y)).collect::<Vec<_>>())
            .collect(),
    )
}

impl IdealClass {
    pub fn unit(ring: &CoeffRing) -> Self {
        let one = PolyRing::new(ring.clone()).one();
        IdealClass {
            num: vec![one.clone()],
            den: vec![one],
        }
    }

    pub fn principal(ring: &CoeffRing, f: Poly) -> Self {
        IdealClass::from_gens(ring, vec![f])
    }

    pub fn from_gens(ring: &CoeffRing, num: Vec<Poly>) -> Self {
        IdealClass {
            num: dedup(num),
            den: vec![PolyRing::new(ring.clone()).one()],
        }
    }

    pub fn mul(&self, ring: &CoeffRing, other: &IdealClass) -> IdealClass {
        IdealClass {
            num: product_ideal(ring, &self.num, &other.num),
            den: product_ideal(ring, &self.den, &other.den),
        }
    }

    pub fn inverse(&self) -> IdealClass {
        IdealClass {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    /// `num_1 den_2 = num_2 den_1`, guarded at `n` and `n + 8`.
    pub fn equals(
        &self,
        ring: &CoeffRing,
        other: &IdealClass,
        n: usize,
        completion: Completion,
    ) -> Result<bool> {
        let lhs = product_ideal(ring, &self.num, &other.den);
        let rhs = product_ideal(ring, &other.num, &self.den);
        ideals_equal_guarded(ring, &lhs, &rhs, n, completion)
    }

    pub fn is_unit_class(&self, ring: &CoeffRing, n: usize, completion: Completion) -> Result<bool> {
        self.equals(ring, &IdealClass::unit(ring), n, completion)
    }

    /// Largest generator degree, used to pick a safe precision.
    pub fn max_degree(&self) -> usize {
        self.num
            .iter()
            .chain(&self.den)
            .filter_map(|g| g.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn render(&self, ring: &CoeffRing) -> String {
        let side = |gens: &[Poly]| -> String {
            if gens.is_empty() {
                return "(0)".into();
            }
            let parts: Vec<String> = gens.iter().map(|g| g.render(ring)).collect();
            format!("({})", parts.join(", "))
        };
        let one = PolyRing::new(ring.clone()).one();
        if self.den.len() == 1 && self.den[0] == one {
            side(&self.num)
        } else {
            format!("{} / {}", side(&self.num), side(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z9() -> CoeffRing {
        CoeffRing::integers(3, 2).unwrap()
    }

    #[test]
    fn worked_unit_certificate() {
        // 2 (1 - 4T) = T - 7 over Z/9
        let r = z9();
        let f = Poly::from_ints(&r, &[-7, 1]);
        let g = Poly::from_ints(&r, &[1, -4]);
        let u = unit_certificate(&r, &f, &g, 8).unwrap();
        assert_eq!(u, Series::from_ints(&r, 8, &[2]));
        assert!(eq_up_to_unit(&r, &f, &f, 8));
        assert!(!eq_up_to_unit(&r, &Poly::from_ints(&r, &[0, 1]), &Poly::from_ints(&r, &[1]), 8));
    }

    #[test]
    fn certificate_over_split_ring_uses_idempotents() {
        // Omega = Z/3 x Z/3 via x^2 - 1; f = g * e_1 only in one component
        let r = CoeffRing::new(3, 1, &[-1, 0, 1]).unwrap();
        let e = r.idempotents();
        let t = PolyRing::new(r.clone()).t();
        let g = Poly::new(&r, vec![r.zero(), e[0].clone()]); // e_1 T
        let f = t.scale(&r, &e[0]).scale(&r, &r.from_int(2)); // 2 e_1 T
        let u = unit_certificate(&r, &f, &g, 4).unwrap();
        assert!(r.is_unit(&u.coeffs()[0]));
    }

    #[test]
    fn non_principal_ideal_membership() {
        // (3, T - 1) over Z/9 contains 3T and T^2 - 1 but not 1
        let r = z9();
        let gens = vec![Poly::from_ints(&r, &[3]), Poly::from_ints(&r, &[-1, 1])];
        assert!(ideal_contains(&r, &gens, &Poly::from_ints(&r, &[0, 3]), 6));
        assert!(ideal_contains(&r, &gens, &Poly::from_ints(&r, &[-1, 0, 1]), 6));
        // T-adically T - 1 is a unit, so the ideal is everything
        assert!(ideal_contains(&r, &gens, &Poly::from_ints(&r, &[1]), 6));
        let shifted: Vec<Poly> = gens.iter().map(|g| Completion::Augmentation.localize(&r, g)).collect();
        assert!(!ideal_contains(&r, &shifted, &Poly::from_ints(&r, &[1]), 6));
    }

    #[test]
    fn class_group_law() {
        let r = z9();
        let a = IdealClass::principal(&r, Poly::from_ints(&r, &[0, 1]));
        let b = IdealClass::principal(&r, Poly::from_ints(&r, &[0, 0, 1]));
        assert!(a.mul(&r, &a).equals(&r, &b, 6, Completion::TAdic).unwrap());
        assert!(!a.equals(&r, &b, 6, Completion::TAdic).unwrap());
        assert!(a.mul(&r, &a.inverse()).is_unit_class(&r, 6, Completion::TAdic).unwrap());
    }
}

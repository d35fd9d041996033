//! Iwasawa modules at finite level: the tower `coker(1 - Phi^(l^n))`, its
//! limit with `gamma` acting as `Phi`, Fitting ideals over `Omega[T]`
//! (`T = gamma^-1`), and the comparison with `det(Id - T Phi)`.

use crate::coeff::{CoeffRing, Elem};
use crate::error::{Error, Result};
use crate::ideal::{unit_certificate, Completion, IdealClass};
use crate::lfun::char_poly;
use crate::matrix::{self, Matrix};
use crate::poly::{Poly, PolyRing};
use crate::ring::Ring;
use crate::series::Series;
use crate::zmod::{colspan_contains, flatten, kernel_omega, smith_omega, Span, ZMod};

/// `Phi^(l^n)` for `n = 0, 1, ..` up to the first repetition, and the index
/// `j` of the repeated value. From `j` on the sequence is periodic, and
/// since the images of `1 - Phi^(l^n)` decrease, the tower is constant.
fn ell_power_orbit(ring: &CoeffRing, phi: &Matrix<Elem>) -> (Vec<Matrix<Elem>>, usize) {
    let mut seq = vec![phi.clone()];
    loop {
        let next = matrix::pow(ring, seq.last().expect("nonempty"), ring.ell());
        if let Some(j) = seq.iter().position(|p| *p == next) {
            return (seq, j);
        }
        seq.push(next);
    }
}

fn one_minus(ring: &CoeffRing, p: &Matrix<Elem>) -> Matrix<Elem> {
    matrix::sub(ring, &matrix::identity(ring, p.rows()), p)
}

fn check_square(phi: &Matrix<Elem>) -> Result<()> {
    if phi.is_square() {
        Ok(())
    } else {
        Err(Error::Shape("Frobenius matrix must be square".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub n: usize,
    /// `coker = (+) Z/l^e` over `Z/l^m`
    pub invariants: Vec<u32>,
    pub log_size: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub layers: Vec<Layer>,
    /// the transition `layer n+1 -> layer n` induced by the identity is well
    /// defined (image containment), hence surjective
    pub transitions_surjective: Vec<bool>,
    pub stabilization: usize,
}

pub fn coker_tower(ring: &CoeffRing, phi: &Matrix<Elem>, n_max: usize) -> Result<Tower> {
    check_square(phi)?;
    let (seq, j) = ell_power_orbit(ring, phi);
    let p_at = |n: usize| -> &Matrix<Elem> {
        if n < seq.len() {
            &seq[n]
        } else {
            &seq[j + (n - j) % (seq.len() - j)]
        }
    };
    let top = n_max.max(j);
    let rels: Vec<Matrix<Elem>> = (0..=top).map(|n| one_minus(ring, p_at(n))).collect();
    let layers: Vec<Layer> = rels
        .iter()
        .enumerate()
        .map(|(n, r)| {
            let sm = smith_omega(ring, r);
            Layer {
                n,
                invariants: sm.coker_invariants(),
                log_size: sm.coker_log_size(),
            }
        })
        .collect();
    let transitions_surjective = (0..top)
        .map(|n| colspan_contains(ring, &rels[n], &rels[n + 1]))
        .collect();
    let stable = layers[j].log_size;
    let stabilization = layers.iter().position(|l| l.log_size == stable).expect("j qualifies");
    Ok(Tower {
        layers,
        transitions_surjective,
        stabilization,
    })
}

/// A finite `Omega`-module `Omega^s / colspan(relations)` with an
/// invertible action of `gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaModule {
    relations: Matrix<Elem>,
    gamma: Matrix<Elem>,
    gamma_inv: Matrix<Elem>,
}

impl GammaModule {
    /// Checks that both actions preserve the relations and are mutually
    /// inverse on the quotient.
    pub fn new(
        ring: &CoeffRing,
        relations: Matrix<Elem>,
        gamma: Matrix<Elem>,
        gamma_inv: Matrix<Elem>,
    ) -> Result<Self> {
        let s = relations.rows();
        if [gamma.rows(), gamma.cols(), gamma_inv.rows(), gamma_inv.cols()]
            .iter()
            .any(|&x| x != s)
        {
            return Err(Error::Shape("gamma action has the wrong size".into()));
        }
        let bad = |what: &str| Error::InvariantViolation {
            what: what.into(),
            location: "gamma module".into(),
        };
        if !colspan_contains(ring, &relations, &matrix::mul(ring, &gamma, &relations))
            || !colspan_contains(ring, &relations, &matrix::mul(ring, &gamma_inv, &relations))
        {
            return Err(bad("gamma does not descend to the quotient"));
        }
        let id = matrix::identity(ring, s);
        let defect = matrix::sub(ring, &matrix::mul(ring, &gamma, &gamma_inv), &id);
        if !colspan_contains(ring, &relations, &defect) {
            return Err(bad("gamma is not invertible on the quotient"));
        }
        Ok(GammaModule {
            relations,
            gamma,
            gamma_inv,
        })
    }

    pub fn relations(&self) -> &Matrix<Elem> {
        &self.relations
    }

    pub fn gamma(&self) -> &Matrix<Elem> {
        &self.gamma
    }

    pub fn gamma_inv(&self) -> &Matrix<Elem> {
        &self.gamma_inv
    }

    pub fn generators(&self) -> usize {
        self.relations.rows()
    }

    pub fn invariants(&self, ring: &CoeffRing) -> Vec<u32> {
        smith_omega(ring, &self.relations).coker_invariants()
    }

    pub fn log_size(&self, ring: &CoeffRing) -> u32 {
        smith_omega(ring, &self.relations).coker_log_size()
    }

    /// Whether `f(T)` kills the module, with `T` acting as `gamma^-1`.
    pub fn annihilated_by(&self, ring: &CoeffRing, f: &Poly) -> bool {
        let s = self.generators();
        let mut acc = Matrix::filled(s, s, ring.zero());
        for c in f.coeffs().iter().rev() {
            acc = matrix::add(
                ring,
                &matrix::mul(ring, &acc, &self.gamma_inv),
                &matrix::scale(ring, c, &matrix::identity(ring, s)),
            );
        }
        colspan_contains(ring, &self.relations, &acc)
    }

    pub fn describe(&self, ring: &CoeffRing) -> String {
        let inv = self.invariants(ring);
        if inv.is_empty() {
            return "0".into();
        }
        let l = ring.ell();
        inv.iter()
            .map(|e| format!("Z/{}", l.pow(*e)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The stabilized cokernel, with `gamma = Phi` and `gamma^-1 = Phi^(l^j - 1)`.
pub fn limit_module(ring: &CoeffRing, phi: &Matrix<Elem>) -> Result<GammaModule> {
    check_square(phi)?;
    let (seq, j) = ell_power_orbit(ring, phi);
    let relations = one_minus(ring, &seq[j]);
    let exp = ring.ell().pow(j as u32) - 1;
    let gamma_inv = matrix::pow(ring, phi, exp);
    GammaModule::new(ring, relations, phi.clone(), gamma_inv)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    /// `log_l |K_n|` for `K_n = ker(1 - Phi^(l^n))`
    pub kernel_log_sizes: Vec<u32>,
    pub increasing: bool,
    pub stabilization: usize,
    /// the trace `sum_(k<l) Phi^(k l^n)` is multiplication by `l` on the
    /// stabilized kernels
    pub trace_is_ell: bool,
    /// `m` successive transitions kill the stabilized kernel
    pub limit_vanishes: bool,
}

impl KernelReport {
    pub fn confirmed(&self) -> bool {
        self.increasing && self.trace_is_ell && self.limit_vanishes
    }
}

fn span_of(ring: &CoeffRing, vecs: &[Vec<Elem>], width: usize) -> Span {
    let mut span = Span::new(ZMod::of(ring), width * ring.degree());
    for v in vecs {
        span.insert(flatten(v));
    }
    span
}

pub fn kernel_chain_report(ring: &CoeffRing, phi: &Matrix<Elem>, n_max: usize) -> Result<KernelReport> {
    check_square(phi)?;
    let s = phi.rows();
    let (seq, j) = ell_power_orbit(ring, phi);
    let top = n_max.max(j + 1);
    let p_at = |n: usize| -> Matrix<Elem> {
        if n < seq.len() {
            seq[n].clone()
        } else {
            seq[j + (n - j) % (seq.len() - j)].clone()
        }
    };
    let kernels: Vec<Vec<Vec<Elem>>> = (0..=top + ring.m() as usize)
        .map(|n| kernel_omega(ring, &one_minus(ring, &p_at(n))))
        .collect();
    let spans: Vec<Span> = kernels.iter().map(|k| span_of(ring, k, s)).collect();
    let kernel_log_sizes: Vec<u32> = spans.iter().take(top + 1).map(|sp| sp.log_size()).collect();
    let increasing = (0..top).all(|n| kernels[n].iter().all(|v| spans[n + 1].contains(&flatten(v))));
    let stable = spans[j].log_size();
    let stabilization = kernel_log_sizes.iter().position(|&x| x == stable).expect("j qualifies");
    let trace = |n: usize| -> Matrix<Elem> {
        let p = p_at(n);
        (1..ring.ell()).fold(matrix::identity(ring, s), |acc, k| {
            matrix::add(ring, &acc, &matrix::pow(ring, &p, k))
        })
    };
    let ell = ring.from_int(ring.ell() as i64);
    let trace_is_ell = (j..top).all(|n| {
        let t = trace(n);
        kernels[n + 1].iter().all(|v| {
            let tv = matrix::mul_vec(ring, &t, v);
            let lv: Vec<Elem> = v.iter().map(|x| ring.mul(&ell, x)).collect();
            tv == lv
        })
    });
    // K_(j+m) -> K_j through m transitions
    let m = ring.m() as usize;
    let limit_vanishes = kernels[j + m].iter().all(|v| {
        let mut w = v.clone();
        for n in (j..j + m).rev() {
            w = matrix::mul_vec(ring, &trace(n), &w);
        }
        w.iter().all(|x| ring.is_zero(x))
    });
    Ok(KernelReport {
        kernel_log_sizes,
        increasing,
        stabilization,
        trace_is_ell,
        limit_vanishes,
    })
}

/// Maximal minors of `[T Id - gamma^-1 | relations]`, in lexicographic
/// order of column choices.
pub fn fitting_ideal(ring: &CoeffRing, module: &GammaModule) -> IdealClass {
    let s = module.generators();
    let pr = PolyRing::new(ring.clone());
    let t = pr.t();
    let pres = Matrix::from_fn(s, 2 * s, |i, j| {
        if j < s {
            let c = Poly::constant(ring, module.gamma_inv.get(i, j).clone());
            let diag = if i == j { t.clone() } else { Poly::zero() };
            pr.sub(&diag, &c)
        } else {
            Poly::constant(ring, module.relations.get(i, j - s).clone())
        }
    });
    let mut gens = Vec::new();
    let rows: Vec<usize> = (0..s).collect();
    for cols in combinations(2 * s, s) {
        gens.push(matrix::det(&pr, &pres.submatrix(&rows, &cols)));
    }
    IdealClass::from_gens(ring, gens)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// `det(Id - T Phi)`
pub fn char_element(ring: &CoeffRing, phi: &Matrix<Elem>) -> Poly {
    char_poly(ring, phi)
}

#[derive(Clone, Debug)]
pub struct McReport {
    pub fitting: IdealClass,
    pub char_element: Poly,
    pub precision: usize,
    pub verdicts: Vec<(Completion, bool)>,
    /// `u` with `u char = f` for the first Fitting generator `f`, `T`-adically
    pub certificate: Option<Series>,
}

impl McReport {
    pub fn holds(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| *v)
    }
}

/// Precision used for a size-`s` matrix: at least twice the `Z/l`-length
/// bound plus the degree bound, and at least the requested `n`.
pub fn mc_precision(ring: &CoeffRing, s: usize, n: usize) -> usize {
    n.max(2 * (s * ring.m() as usize * ring.degree() + s))
}

pub fn mc_report(ring: &CoeffRing, phi: &Matrix<Elem>, n: usize) -> Result<McReport> {
    let module = limit_module(ring, phi)?;
    let fitting = fitting_ideal(ring, &module);
    let ch = char_element(ring, phi);
    let n = mc_precision(ring, phi.rows(), n);
    let principal = IdealClass::principal(ring, ch.clone());
    let verdicts = Completion::ALL
        .iter()
        .map(|&c| Ok((c, fitting.equals(ring, &principal, n, c)?)))
        .collect::<Result<Vec<_>>>()?;
    let certificate = fitting
        .num
        .first()
        .and_then(|f| unit_certificate(ring, f, &ch, n));
    Ok(McReport {
        fitting,
        char_element: ch,
        precision: n,
        verdicts,
        certificate,
    })
}

/// `Fitt(lim coker(1 - Phi^(l^n))) = (det(Id - T Phi))`, in both
/// completions, guarded at two precisions.
pub fn verify_mc_commutative(ring: &CoeffRing, phi: &Matrix<Elem>, n: usize) -> Result<bool> {
    Ok(mc_report(ring, phi, n)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(ring: &CoeffRing, c: i64) -> Matrix<Elem> {
        Matrix::filled(1, 1, ring.from_int(c))
    }

    #[test]
    fn tower_of_four_over_z9() {
        let r = CoeffRing::integers(3, 2).unwrap();
        let t = coker_tower(&r, &scalar(&r, 4), 3).unwrap();
        assert_eq!(t.layers[0].invariants, vec![1]);
        assert_eq!(t.layers[1].invariants, vec![2]);
        assert_eq!(t.layers[3].invariants, vec![2]);
        assert_eq!(t.stabilization, 1);
        assert!(t.transitions_surjective.iter().all(|&b| b));
    }

    #[test]
    fn tower_of_identity_and_zero() {
        let r = CoeffRing::integers(3, 1).unwrap();
        let t = coker_tower(&r, &scalar(&r, 1), 2).unwrap();
        assert!(t.layers.iter().all(|l| l.invariants == vec![1]));
        assert_eq!(t.stabilization, 0);
        let z = Matrix::filled(2, 2, r.zero());
        let t = coker_tower(&r, &z, 2).unwrap();
        assert!(t.layers.iter().all(|l| l.log_size == 0));
    }

    #[test]
    fn tower_of_two_over_z9_by_brute_force() {
        // independent oracle: |Z/9 / (1 - 2^(3^n))|
        let r = CoeffRing::integers(3, 2).unwrap();
        let t = coker_tower(&r, &scalar(&r, 2), 4).unwrap();
        for layer in &t.layers {
            let e = 3u64.pow(layer.n as u32);
            let pw = (0..e).fold(1u64, |acc, _| acc * 2 % 9);
            let g = (1 + 9 - pw) % 9;
            let image: std::collections::BTreeSet<u64> = (0..9).map(|x| x * g % 9).collect();
            assert_eq!(3u64.pow(layer.log_size), 9 / image.len() as u64);
        }
    }

    #[test]
    fn limit_modules() {
        let r = CoeffRing::integers(3, 2).unwrap();
        let m = limit_module(&r, &scalar(&r, 4)).unwrap();
        assert_eq!(m.describe(&r), "Z/9");
        assert_eq!(m.gamma(), &scalar(&r, 4));
        assert!(m.annihilated_by(&r, &char_element(&r, &scalar(&r, 4))));
        let r3 = CoeffRing::integers(3, 1).unwrap();
        assert_eq!(limit_module(&r3, &scalar(&r3, 1)).unwrap().describe(&r3), "Z/3");
    }

    #[test]
    fn kernel_reports() {
        let r3 = CoeffRing::integers(3, 1).unwrap();
        let rep = kernel_chain_report(&r3, &scalar(&r3, 1), 3).unwrap();
        assert_eq!(rep.kernel_log_sizes, vec![1, 1, 1, 1]);
        assert!(rep.confirmed());
        let r = CoeffRing::integers(3, 2).unwrap();
        let rep = kernel_chain_report(&r, &scalar(&r, 4), 3).unwrap();
        assert_eq!(rep.kernel_log_sizes[0], 1);
        assert!(rep.confirmed());
        let rep = kernel_chain_report(&r, &scalar(&r, 0), 3).unwrap();
        assert!(rep.kernel_log_sizes.iter().all(|&x| x == 0));
        assert!(rep.confirmed());
    }

    #[test]
    fn fitting_ideals() {
        let r = CoeffRing::integers(3, 2).unwrap();
        let m = limit_module(&r, &scalar(&r, 4)).unwrap();
        let f = fitting_ideal(&r, &m);
        assert_eq!(f.render(&r), "(2 + T)");
        let zero = GammaModule::new(&r, scalar(&r, 1), scalar(&r, 1), scalar(&r, 1)).unwrap();
        assert!(fitting_ideal(&r, &zero)
            .is_unit_class(&r, 8, Completion::Augmentation)
            .unwrap());
        let z3 = GammaModule::new(&r, scalar(&r, 3), scalar(&r, 1), scalar(&r, 1)).unwrap();
        assert_eq!(fitting_ideal(&r, &z3).render(&r), "(8 + T, 3)");
    }

    #[test]
    fn worked_main_conjecture() {
        let r = CoeffRing::integers(3, 2).unwrap();
        let rep = mc_report(&r, &scalar(&r, 4), 8).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.certificate.unwrap().render(&r), "2");
        let r3 = CoeffRing::integers(3, 1).unwrap();
        assert!(verify_mc_commutative(&r3, &scalar(&r3, 1), 8).unwrap());
        assert!(verify_mc_commutative(&r3, &matrix::identity(&r3, 2), 8).unwrap());
    }

    #[test]
    fn augmentation_completion_detects_wrong_ideal() {
        // (3, T - 1) is not (1 - 4T) once T - 1 is no longer a unit
        let r = CoeffRing::integers(3, 2).unwrap();
        let z3 = GammaModule::new(&r, scalar(&r, 3), scalar(&r, 1), scalar(&r, 1)).unwrap();
        let wrong = IdealClass::principal(&r, char_element(&r, &scalar(&r, 4)));
        let f = fitting_ideal(&r, &z3);
        assert!(!f.equals(&r, &wrong, 8, Completion::Augmentation).unwrap());
    }
}

//! Instances: a covering given by closed points with Frobenius elements, a
//! sheaf given by a representation, optional cohomology data, and the
//! auxiliary representations, subgroups and quotients the checks use.
//!
//! Instance files are TOML:
//!
//! ```toml
//! name = "z2-gamma"
//! q = 7
//! ell = 3
//! m = 2
//! minpoly = [0, 1]            # optional, default x (so Omega = Z/l^m)
//!
//! [group]                     # optional, default trivial H
//! table = [[0, 1], [1, 0]]
//! action = [0, 1]
//! action_order = 1
//!
//! [[points]]
//! degree = 1
//! frobenius = [1, 1]          # h1 * g^1
//!
//! [sheaf]                     # optional, default trivial rank 1
//! h_images = [[[1]], [[1]]]
//! gamma = [[1]]
//!
//! [[reps]]
//! name = "sign"
//! h_images = [[[1]], [[-1]]]
//! gamma = [[1]]
//!
//! [[subgroups]]
//! name = "lattice-3"
//! k = [0, 1]
//! index = 3
//! gen_h = 0
//! [[subgroups.reps]]
//! name = "sign"
//! h_images = [[[1]], [[-1]]]
//! gamma = [[1]]
//!
//! [[quotients]]
//! name = "all-of-h"
//! normal = [0, 1]
//!
//! [[cohomology]]
//! degree = 0
//! frobenius = [[1]]
//! ```
//!
//! A ring element is an integer or a list of integers (coefficients of
//! `1, x, x^2, ..`). Matrices are row-major. Group elements `h * g^a` are
//! written `[h, a]`.

use serde::{Deserialize, Serialize};

use crate::coeff::{CoeffRing, Elem};
use crate::error::{Error, Result};
use crate::group::{GElement, GroupData, OpenSubgroup};
use crate::matrix::Matrix;
use crate::rep::Rep;
use crate::ring::Ring;

/// A closed point: its degree and its geometric Frobenius in `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub degree: u64,
    pub frobenius: GElement,
}

impl Point {
    /// Admissibility: the `gamma`-part of the Frobenius is `gamma^degree`.
    pub fn new(degree: u64, frobenius: GElement) -> Result<Self> {
        if degree == 0 || frobenius.a != degree as i64 {
            return Err(Error::InvariantViolation {
                what: "admissibility".into(),
                location: format!("point of degree {degree} with Frobenius {frobenius}"),
            });
        }
        Ok(Point { degree, frobenius })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringSpec {
    pub q: u64,
    pub ring: CoeffRing,
    pub group: GroupData,
    pub points: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafSpec {
    pub rep: Rep,
}

impl SheafSpec {
    pub fn trivial(cov: &CoveringSpec) -> Self {
        SheafSpec {
            rep: Rep::trivial(&cov.ring, &cov.group),
        }
    }

    pub fn rank(&self) -> usize {
        self.rep.dim()
    }

    /// Stalk Frobenius `rho_F(sigma_x)`.
    pub fn stalk(&self, ring: &CoeffRing, point: &Point) -> Matrix<Elem> {
        self.rep.eval(ring, point.frobenius)
    }
}

/// Frobenius matrices on compactly supported cohomology, by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologySpec {
    pub entries: Vec<(i64, Matrix<Elem>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedRep {
    pub name: String,
    pub rep: Rep,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSpec {
    pub name: String,
    pub subgroup: OpenSubgroup,
    pub reps: Vec<NamedRep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpec {
    pub name: String,
    pub normal: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub covering: CoveringSpec,
    pub sheaf: SheafSpec,
    pub reps: Vec<NamedRep>,
    pub subgroups: Vec<SubgroupSpec>,
    pub quotients: Vec<QuotientSpec>,
    pub cohomology: Option<CohomologySpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum RawElem {
    Int(i64),
    Coords(Vec<i64>),
}

type RawMatrix = Vec<Vec<RawElem>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    table: Vec<Vec<usize>>,
    action: Vec<usize>,
    action_order: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    degree: u64,
    frobenius: [i64; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRep {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    h_images: Vec<RawMatrix>,
    gamma: RawMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubgroup {
    name: String,
    k: Vec<usize>,
    index: u64,
    #[serde(default)]
    gen_h: usize,
    #[serde(default)]
    reps: Vec<RawRep>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuotient {
    name: String,
    normal: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCohomology {
    degree: i64,
    frobenius: RawMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    #[serde(default)]
    name: String,
    q: u64,
    ell: u64,
    m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    minpoly: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group: Option<RawGroup>,
    #[serde(default)]
    points: Vec<RawPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sheaf: Option<RawRep>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    reps: Vec<RawRep>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    subgroups: Vec<RawSubgroup>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    quotients: Vec<RawQuotient>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    cohomology: Vec<RawCohomology>,
}

fn violation(what: impl ToString, location: impl Into<String>) -> Error {
    Error::InvariantViolation {
        what: what.to_string(),
        location: location.into(),
    }
}

fn is_prime_power(q: u64) -> Option<u64> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut n = q;
    while n.is_multiple_of(p) {
        n /= p;
    }
    (n == 1).then_some(p)
}

fn elem_from_raw(ring: &CoeffRing, e: &RawElem) -> Elem {
    match e {
        RawElem::Int(c) => ring.from_int(*c),
        RawElem::Coords(cs) => ring.elem(cs),
    }
}

fn elem_to_raw(e: &Elem) -> RawElem {
    let c = e.coords();
    if c.iter().skip(1).all(|&x| x == 0) {
        RawElem::Int(c.first().copied().unwrap_or(0) as i64)
    } else {
        RawElem::Coords(c.iter().map(|&x| x as i64).collect())
    }
}

fn matrix_from_raw(ring: &CoeffRing, m: &RawMatrix, location: &str) -> Result<Matrix<Elem>> {
    let rows = m
        .iter()
        .map(|row| row.iter().map(|e| elem_from_raw(ring, e)).collect())
        .collect();
    let out = Matrix::from_rows(rows).map_err(|e| violation(e, location))?;
    if !out.is_square() || out.rows() == 0 {
        return Err(violation("matrix must be square and nonempty", location));
    }
    Ok(out)
}

fn matrix_to_raw(m: &Matrix<Elem>) -> RawMatrix {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(elem_to_raw).collect())
        .collect()
}

fn rep_from_raw(ring: &CoeffRing, group: &GroupData, raw: &RawRep, location: &str) -> Result<Rep> {
    let h_images = raw
        .h_images
        .iter()
        .enumerate()
        .map(|(i, m)| matrix_from_raw(ring, m, &format!("{location}.h_images[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let gamma = matrix_from_raw(ring, &raw.gamma, &format!("{location}.gamma"))?;
    Rep::new(ring, group, h_images, gamma).map_err(|e| violation(e, location))
}

fn rep_to_raw(name: Option<&str>, rep: &Rep) -> RawRep {
    RawRep {
        name: name.map(str::to_string),
        h_images: rep.h_images().iter().map(matrix_to_raw).collect(),
        gamma: matrix_to_raw(rep.gamma_image()),
    }
}

fn named_reps(
    ring: &CoeffRing,
    group: &GroupData,
    raws: &[RawRep],
    location: &str,
) -> Result<Vec<NamedRep>> {
    raws.iter()
        .enumerate()
        .map(|(i, raw)| {
            let loc = format!("{location}[{i}]");
            let name = raw.name.clone().ok_or_else(|| violation("missing name", &loc))?;
            Ok(NamedRep {
                name,
                rep: rep_from_raw(ring, group, raw, &loc)?,
            })
        })
        .collect()
}

impl Instance {
    pub fn parse(text: &str) -> Result<Instance> {
        let raw: RawInstance = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Instance::from_raw(raw)
    }

    fn from_raw(raw: RawInstance) -> Result<Instance> {
        let p = is_prime_power(raw.q).ok_or_else(|| violation("q is not a prime power", "q"))?;
        if p == raw.ell {
            return Err(violation("characteristic equals ell", "q"));
        }
        let minpoly = raw.minpoly.clone().unwrap_or_else(|| vec![0, 1]);
        let ring = CoeffRing::new(raw.ell, raw.m, &minpoly).map_err(|e| violation(e, "minpoly"))?;
        let group = match &raw.group {
            None => GroupData::trivial(),
            Some(g) => GroupData::new(g.table.clone(), g.action.clone(), g.action_order, raw.ell)
                .map_err(|e| violation(e, "group"))?,
        };
        let points = raw
            .points
            .iter()
            .enumerate()
            .map(|(i, pt)| {
                let [h, a] = pt.frobenius;
                if h < 0 || h as usize >= group.order() {
                    return Err(violation("Frobenius H-part out of range", format!("points[{i}]")));
                }
                Point::new(pt.degree, GElement::new(h as usize, a)).map_err(|_| {
                    violation("admissibility", format!("points[{i}]"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let sheaf = match &raw.sheaf {
            None => Rep::trivial(&ring, &group),
            Some(s) => rep_from_raw(&ring, &group, s, "sheaf")?,
        };
        let reps = named_reps(&ring, &group, &raw.reps, "reps")?;
        let subgroups = raw
            .subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let loc = format!("subgroups[{i}]");
                let u = OpenSubgroup::new(&group, &s.k, s.index, s.gen_h)
                    .map_err(|e| violation(e, &loc))?;
                let reps = named_reps(&ring, u.group(), &s.reps, &format!("{loc}.reps"))?;
                Ok(SubgroupSpec {
                    name: s.name.clone(),
                    subgroup: u,
                    reps,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let quotients = raw
            .quotients
            .iter()
            .enumerate()
            .map(|(i, qs)| {
                group
                    .quotient(&qs.normal)
                    .map_err(|e| violation(e, format!("quotients[{i}]")))?;
                let mut normal = qs.normal.clone();
                normal.sort_unstable();
                normal.dedup();
                Ok(QuotientSpec {
                    name: qs.name.clone(),
                    normal,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let cohomology = if raw.cohomology.is_empty() {
            None
        } else {
            let entries = raw
                .cohomology
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    Ok((c.degree, matrix_from_raw(&ring, &c.frobenius, &format!("cohomology[{i}]"))?))
                })
                .collect::<Result<Vec<_>>>()?;
            Some(CohomologySpec { entries })
        };
        Ok(Instance {
            name: raw.name,
            covering: CoveringSpec {
                q: raw.q,
                ring,
                group,
                points,
            },
            sheaf: SheafSpec { rep: sheaf },
            reps,
            subgroups,
            quotients,
            cohomology,
        })
    }

    fn to_raw(&self) -> RawInstance {
        let cov = &self.covering;
        let ring = &cov.ring;
        let minpoly = (ring.minpoly() != [0, 1])
            .then(|| ring.minpoly().iter().map(|&c| c as i64).collect());
        let group = (!cov.group.is_trivial() || cov.group.action_order() != 1).then(|| RawGroup {
            table: cov.group.table().to_vec(),
            action: cov.group.action().to_vec(),
            action_order: cov.group.action_order(),
        });
        RawInstance {
            name: self.name.clone(),
            q: cov.q,
            ell: ring.ell(),
            m: ring.m(),
            minpoly,
            group,
            points: cov
                .points
                .iter()
                .map(|p| RawPoint {
                    degree: p.degree,
                    frobenius: [p.frobenius.h as i64, p.frobenius.a],
                })
                .collect(),
            sheaf: Some(rep_to_raw(None, &self.sheaf.rep)),
            reps: self
                .reps
                .iter()
                .map(|r| rep_to_raw(Some(&r.name), &r.rep))
                .collect(),
            subgroups: self
                .subgroups
                .iter()
                .map(|s| RawSubgroup {
                    name: s.name.clone(),
                    k: s.subgroup.k_elems().to_vec(),
                    index: s.subgroup.index(),
                    gen_h: s.subgroup.gen_h(),
                    reps: s
                        .reps
                        .iter()
                        .map(|r| rep_to_raw(Some(&r.name), &r.rep))
                        .collect(),
                })
                .collect(),
            quotients: self
                .quotients
                .iter()
                .map(|q| RawQuotient {
                    name: q.name.clone(),
                    normal: q.normal.clone(),
                })
                .collect(),
            cohomology: self
                .cohomology
                .iter()
                .flat_map(|c| c.entries.iter())
                .map(|(d, m)| RawCohomology {
                    degree: *d,
                    frobenius: matrix_to_raw(m),
                })
                .collect(),
        }
    }

    /// Canonical text: every default made explicit, residues reduced.
    pub fn render(&self) -> String {
        toml::to_string(&self.to_raw()).expect("instance serializes")
    }

    pub fn rep(&self, name: &str) -> Option<&Rep> {
        self.reps.iter().find(|r| r.name == name).map(|r| &r.rep)
    }
}

/// Points of the subcover `Y_U` over `F_(q^c)`: an orbit of size `s` of
/// `sigma_x` acting on `G/U` by left multiplication gives a point of degree
/// `d_x s / c` with Frobenius `t^-1 sigma_x^s t`, written in `U`.
pub fn subcover_points(cov: &CoveringSpec, u: &OpenSubgroup) -> Result<CoveringSpec> {
    let g = &cov.group;
    let reps = u.coset_reps(g);
    let mut points = Vec::new();
    for x in &cov.points {
        let perm: Vec<usize> = reps
            .iter()
            .map(|&t| u.coset_of(g, &reps, g.mul(x.frobenius, t)))
            .collect();
        let mut seen = vec![false; reps.len()];
        for start in 0..reps.len() {
            if seen[start] {
                continue;
            }
            let mut s = 0u64;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                s += 1;
            }
            let t = reps[start];
            let tau = g.mul(g.mul(g.inv(t), g.pow(x.frobenius, s as i64)), t);
            let local = u
                .from_ambient(g, tau)
                .ok_or_else(|| Error::NotASubgroup("orbit element does not land in U".into()))?;
            points.push(Point::new(local.a as u64, local)?);
        }
    }
    Ok(CoveringSpec {
        q: cov.q.pow(u.index() as u32),
        ring: cov.ring.clone(),
        group: u.group().clone(),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "q = 5\nell = 3\nm = 1\n[[points]]\ndegree = 1\nfrobenius = [0, 1]\n";

    #[test]
    fn minimal_instance() {
        let inst = Instance::parse(MINIMAL).unwrap();
        assert_eq!(inst.covering.points.len(), 1);
        assert_eq!(inst.sheaf.rank(), 1);
        assert!(inst.covering.group.is_trivial());
    }

    #[test]
    fn admissibility_violation() {
        let text = "q = 5\nell = 3\nm = 1\n[[points]]\ndegree = 2\nfrobenius = [0, 1]\n";
        match Instance::parse(text) {
            Err(Error::InvariantViolation { what, location }) => {
                assert_eq!(what, "admissibility");
                assert_eq!(location, "points[0]");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn characteristic_and_syntax_errors() {
        assert!(matches!(
            Instance::parse("q = 9\nell = 3\nm = 1\n"),
            Err(Error::InvariantViolation { .. })
        ));
        assert!(matches!(Instance::parse("q = = 5"), Err(Error::Parse(_))));
        assert!(matches!(
            Instance::parse("q = 5\nell = 3\nm = 1\nbogus = 1\n"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn render_is_a_fixed_point() {
        let once = Instance::parse(MINIMAL).unwrap().render();
        let twice = Instance::parse(&once).unwrap().render();
        assert_eq!(once, twice);
        assert_eq!(Instance::parse(&once).unwrap(), Instance::parse(MINIMAL).unwrap());
    }

    fn z2_cov(points: Vec<Point>) -> CoveringSpec {
        CoveringSpec {
            q: 7,
            ring: CoeffRing::integers(3, 2).unwrap(),
            group: GroupData::new(GroupData::cyclic(2).table().to_vec(), vec![0, 1], 1, 3).unwrap(),
            points,
        }
    }

    #[test]
    fn subcover_of_index_three_lattice() {
        let cov = CoveringSpec {
            q: 5,
            ring: CoeffRing::integers(3, 1).unwrap(),
            group: GroupData::trivial(),
            points: vec![Point::new(1, GElement::gamma_power(1)).unwrap()],
        };
        let u = OpenSubgroup::new(&cov.group, &[0], 3, 0).unwrap();
        let sub = subcover_points(&cov, &u).unwrap();
        assert_eq!(sub.q, 125);
        assert_eq!(sub.points, vec![Point::new(1, GElement::new(0, 1)).unwrap()]);
        let whole = subcover_points(&cov, &OpenSubgroup::whole(&cov.group)).unwrap();
        assert_eq!(whole.points, cov.points);
    }

    #[test]
    fn subcover_killing_the_finite_part() {
        // U = {1} x Gamma; (delta, gamma) has order-2 image on G/U
        let cov = z2_cov(vec![Point::new(1, GElement::new(1, 1)).unwrap()]);
        let u = OpenSubgroup::new(&cov.group, &[0], 1, 0).unwrap();
        let sub = subcover_points(&cov, &u).unwrap();
        assert_eq!(sub.points, vec![Point::new(2, GElement::new(0, 2)).unwrap()]);
    }

    #[test]
    fn mass_formula() {
        let cov = z2_cov(vec![
            Point::new(1, GElement::new(1, 1)).unwrap(),
            Point::new(2, GElement::new(0, 2)).unwrap(),
            Point::new(3, GElement::new(1, 3)).unwrap(),
        ]);
        for (k, c) in [(vec![0], 1), (vec![0], 2), (vec![0, 1], 3), (vec![0], 4)] {
            let u = OpenSubgroup::new(&cov.group, &k, c, 0).unwrap();
            let sub = subcover_points(&cov, &u).unwrap();
            let lhs: u64 = sub.points.iter().map(|p| p.degree * c).sum();
            let rhs: u64 = cov.points.iter().map(|p| p.degree).sum::<u64>() * u.group_index(&cov.group) as u64;
            assert_eq!(lhs, rhs);
        }
    }
}

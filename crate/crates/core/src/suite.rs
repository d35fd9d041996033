//! The per-instance check matrix: interpolation at every stored
//! representation, quotient coherence for every stored quotient, twist
//! coherence for every pair of stored representations, and Artin induction
//! for every stored subgroup representation.

use crate::check::Check;
use crate::covering::Instance;
use crate::error::Result;
use crate::ncl::{artin_check, interpolation_check, quotient_check, twist_check};
use crate::rep::Rep;
use crate::ring::Ring;

fn named(mut c: Check, label: String) -> Check {
    c.name = format!("{} {}", c.name, label);
    c
}

pub fn interpolation_checks(inst: &Instance, n: usize) -> Result<Vec<Check>> {
    inst.reps
        .iter()
        .map(|r| Ok(named(interpolation_check(&inst.covering, &inst.sheaf, &r.rep, n)?, r.name.clone())))
        .collect()
}

/// Representations of `G/N`: stored ones trivial on `N`, pushed down, plus
/// the unramified characters `gamma -> 1, -1`.
pub fn quotient_reps(inst: &Instance, normal: &[usize]) -> Result<Vec<(String, Rep)>> {
    let ring = &inst.covering.ring;
    let (qgroup, proj) = inst.covering.group.quotient(normal)?;
    let mut out = Vec::new();
    for v in [1, -1] {
        out.push((format!("gamma{v:+}"), Rep::gamma_character(ring, &qgroup, ring.from_int(v))?));
    }
    for r in &inst.reps {
        let id = &r.rep.h_images()[0];
        if normal.iter().any(|&h| &r.rep.h_images()[h] != id) {
            continue;
        }
        let images = (0..qgroup.order())
            .map(|q| {
                let h = proj.iter().position(|&p| p == q).expect("projection is onto");
                r.rep.h_images()[h].clone()
            })
            .collect();
        out.push((r.name.clone(), Rep::new(ring, &qgroup, images, r.rep.gamma_image().clone())?));
    }
    Ok(out)
}

pub fn quotient_checks(inst: &Instance) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for q in &inst.quotients {
        for (name, rho_bar) in quotient_reps(inst, &q.normal)? {
            let c = quotient_check(&inst.covering, &inst.sheaf, &q.normal, &rho_bar)?;
            out.push(named(c, format!("{}/{}", q.name, name)));
        }
    }
    Ok(out)
}

pub fn twist_checks(inst: &Instance) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for m in &inst.reps {
        for rho in &inst.reps {
            let c = twist_check(&inst.covering, &inst.sheaf, &m.rep, &rho.rep)?;
            out.push(named(c, format!("{} x {}", m.name, rho.name)));
        }
    }
    Ok(out)
}

pub fn artin_checks(inst: &Instance, n: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for s in &inst.subgroups {
        for r in &s.reps {
            let c = artin_check(&inst.covering, &inst.sheaf, &s.subgroup, &r.rep, n)?;
            out.push(named(c, format!("{}/{}", s.name, r.name)));
        }
    }
    Ok(out)
}

pub fn instance_checks(inst: &Instance, n: usize) -> Result<Vec<Check>> {
    let mut out = interpolation_checks(inst, n)?;
    out.extend(quotient_checks(inst)?);
    out.extend(twist_checks(inst)?);
    out.extend(artin_checks(inst, n)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn every_fixture_check_passes() {
        for inst in fixtures::all().unwrap() {
            let checks = instance_checks(&inst, 16).unwrap();
            assert!(!checks.is_empty());
            for c in checks {
                assert!(c.pass, "{}: {} vs {} ({})", inst.name, c.left, c.right, c.name);
            }
        }
    }
}

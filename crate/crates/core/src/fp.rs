//! Dense polynomials over the prime field F_p, ascending coefficients with
//! no trailing zeros. Only what the residue-field splitting of a
//! coefficient ring needs.

pub(crate) type FpPoly = Vec<u64>;

pub(crate) fn trim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub(crate) fn reduce(f: &[u64], p: u64) -> FpPoly {
    trim(f.iter().map(|c| c % p).collect())
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    Some(pow_mod(a, p - 2, p))
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * a as u128 % p as u128) as u64;
        }
        a = (a as u128 * a as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

pub(crate) fn sub(f: &[u64], g: &[u64], p: u64) -> FpPoly {
    let n = f.len().max(g.len());
    let out = (0..n)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or(0);
            let b = g.get(i).copied().unwrap_or(0);
            (a + p - b) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(f: &[u64], g: &[u64], p: u64) -> FpPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b) % p;
        }
    }
    trim(out)
}

/// Division with remainder by a nonzero divisor.
pub(crate) fn divrem(f: &[u64], g: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let g = trim(g.to_vec());
    assert!(!g.is_empty(), "division by zero polynomial");
    let mut r = trim(f.to_vec());
    if r.len() < g.len() {
        return (Vec::new(), r);
    }
    let lead_inv = inv_mod(*g.last().unwrap(), p).expect("nonzero leading coefficient");
    let mut q = vec![0u64; r.len() - g.len() + 1];
    while r.len() >= g.len() {
        let shift = r.len() - g.len();
        let c = r.last().unwrap() * lead_inv % p;
        q[shift] = c;
        for (i, b) in g.iter().enumerate() {
            r[i + shift] = (r[i + shift] + p - c * b % p) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub(crate) fn rem(f: &[u64], g: &[u64], p: u64) -> FpPoly {
    divrem(f, g, p).1
}

fn make_monic(f: FpPoly, p: u64) -> FpPoly {
    match f.last() {
        None => f,
        Some(&lead) => {
            let inv = inv_mod(lead, p).unwrap();
            f.iter().map(|c| c * inv % p).collect()
        }
    }
}

pub(crate) fn gcd(f: &[u64], g: &[u64], p: u64) -> FpPoly {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    make_monic(a, p)
}

/// Inverse of `a` modulo `f`, if `gcd(a, f) = 1`.
pub(crate) fn inv_mod_poly(a: &[u64], f: &[u64], p: u64) -> Option<FpPoly> {
    // extended Euclid tracking only the coefficient of `a`
    let mut r0 = trim(f.to_vec());
    let mut r1 = rem(a, f, p);
    let mut s0: FpPoly = Vec::new();
    let mut s1: FpPoly = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0], p)?;
    let inv: FpPoly = s0.iter().map(|x| x * c % p).collect();
    Some(rem(&inv, f, p))
}

pub(crate) fn derivative(f: &[u64], p: u64) -> FpPoly {
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

pub(crate) fn is_squarefree(f: &[u64], p: u64) -> bool {
    let g = gcd(f, &derivative(f, p), p);
    g.len() == 1
}

/// Monic polynomials of exact degree `d`, in lexicographic order of the
/// lower coefficients.
fn monics_of_degree(d: usize, p: u64) -> impl Iterator<Item = FpPoly> {
    let count = p.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut f = Vec::with_capacity(d + 1);
        for _ in 0..d {
            f.push(idx % p);
            idx /= p;
        }
        f.push(1);
        f
    })
}

/// Factors a monic square-free polynomial into monic irreducibles by trial
/// division, smallest degree first.
pub(crate) fn factor_squarefree(f: &[u64], p: u64) -> Vec<FpPoly> {
    let mut rest = make_monic(trim(f.to_vec()), p);
    let mut factors = Vec::new();
    let mut d = 1;
    while rest.len() > 1 {
        if 2 * d > rest.len() - 1 {
            factors.push(rest);
            break;
        }
        let mut found = false;
        for g in monics_of_degree(d, p) {
            let (q, r) = divrem(&rest, &g, p);
            if r.is_empty() {
                factors.push(g);
                rest = q;
                found = true;
                break;
            }
        }
        if !found {
            d += 1;
        }
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_x2_minus_1_mod_3() {
        // x^2 - 1 = (x + 1)(x + 2)
        let f = vec![2, 0, 1];
        let fs = factor_squarefree(&f, 3);
        assert_eq!(fs, vec![vec![1, 1], vec![2, 1]]);
    }

    #[test]
    fn irreducible_quadratic_mod_3() {
        let f = vec![2, 1, 1];
        assert_eq!(factor_squarefree(&f, 3), vec![f.clone()]);
        assert!(is_squarefree(&f, 3));
    }

    #[test]
    fn repeated_root_detected() {
        // (x - 1)^2 mod 3
        assert!(!is_squarefree(&[1, 1, 1], 3));
    }

    #[test]
    fn inverse_mod_poly_roundtrip() {
        let f = vec![2, 1, 1];
        let a = vec![1, 2];
        let b = inv_mod_poly(&a, &f, 3).unwrap();
        assert_eq!(rem(&mul(&a, &b, 3), &f, 3), vec![1]);
    }
}

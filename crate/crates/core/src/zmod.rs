//! Linear algebra over the chain ring `Z/l^m`, and over a coefficient ring
//! `Omega` by expanding each element into its `Z/l^m` multiplication
//! matrix.
//!
//! Every nonzero entry of `Z/l^m` is `l^v * unit`, so Gaussian elimination
//! with a minimal-valuation pivot reaches Smith normal form.

use crate::coeff::{zmod_valuation, CoeffRing, Elem};
use crate::matrix::Matrix;
use crate::ring::Ring;

#[derive(Clone, Copy, Debug)]
pub struct ZMod {
    pub ell: u64,
    pub m: u32,
    pub q: u64,
}

impl ZMod {
    pub fn of(ring: &CoeffRing) -> Self {
        ZMod {
            ell: ring.ell(),
            m: ring.m(),
            q: ring.modulus(),
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.q as u128) as u64
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.q - b) % self.q
    }

    fn val(&self, a: u64) -> u32 {
        zmod_valuation(a, self.ell, self.m)
    }

    fn inv_unit(&self, u: u64) -> u64 {
        // u^(phi(q) - 1)
        let phi = self.q / self.ell * (self.ell - 1);
        crate::fp::pow_mod(u, phi - 1, self.q)
    }
}

/// `P A Q = D` with `D` diagonal, `D[k][k] = l^vals[k]` for `k < vals.len()`
/// and zero elsewhere.
#[derive(Clone, Debug)]
pub struct Smith {
    pub z: ZMod,
    pub rows: usize,
    pub cols: usize,
    /// valuations of the nonzero pivots, nondecreasing
    pub vals: Vec<u32>,
    pub p: Vec<Vec<u64>>,
    pub q: Vec<Vec<u64>>,
}

pub fn smith(z: ZMod, a: &[Vec<u64>], rows: usize, cols: usize) -> Smith {
    let mut a: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|x| x % z.q).collect()).collect();
    let mut p: Vec<Vec<u64>> = (0..rows)
        .map(|i| (0..rows).map(|j| (i == j) as u64).collect())
        .collect();
    let mut q: Vec<Vec<u64>> = (0..cols)
        .map(|i| (0..cols).map(|j| (i == j) as u64).collect())
        .collect();
    let mut vals = Vec::new();
    for k in 0..rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for (i, row) in a.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().skip(k) {
                let v = z.val(x);
                if v < z.m && best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(k, pi);
        p.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        for row in q.iter_mut() {
            row.swap(k, pj);
        }
        let lv = z.ell.pow(v);
        let unit = a[k][k] / lv;
        let uinv = z.inv_unit(unit);
        for x in a[k].iter_mut() {
            *x = z.mul(*x, uinv);
        }
        for x in p[k].iter_mut() {
            *x = z.mul(*x, uinv);
        }
        for i in k + 1..rows {
            let f = a[i][k] / lv;
            if f == 0 {
                continue;
            }
            for j in 0..cols {
                let t = z.mul(f, a[k][j]);
                a[i][j] = z.sub(a[i][j], t);
            }
            for j in 0..rows {
                let t = z.mul(f, p[k][j]);
                p[i][j] = z.sub(p[i][j], t);
            }
        }
        for j in k + 1..cols {
            let f = a[k][j] / lv;
            if f == 0 {
                continue;
            }
            for row in a.iter_mut() {
                let t = z.mul(f, row[k]);
                row[j] = z.sub(row[j], t);
            }
            for row in q.iter_mut() {
                let t = z.mul(f, row[k]);
                row[j] = z.sub(row[j], t);
            }
        }
        vals.push(v);
    }
    Smith {
        z,
        rows,
        cols,
        vals,
        p,
        q,
    }
}

impl Smith {
    /// One solution of `A x = b`, if any.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let z = self.z;
        let y: Vec<u64> = self
            .p
            .iter()
            .map(|row| row.iter().zip(b).fold(0, |acc, (x, y)| (acc + z.mul(*x, *y)) % z.q))
            .collect();
        let mut xp = vec![0u64; self.cols];
        for (k, yk) in y.iter().enumerate() {
            match self.vals.get(k) {
                Some(&v) => {
                    let lv = z.ell.pow(v);
                    if yk % lv != 0 {
                        return None;
                    }
                    xp[k] = yk / lv;
                }
                None => {
                    if *yk != 0 {
                        return None;
                    }
                }
            }
        }
        Some(
            self.q
                .iter()
                .map(|row| row.iter().zip(&xp).fold(0, |acc, (x, y)| (acc + z.mul(*x, *y)) % z.q))
                .collect(),
        )
    }

    /// Generators of the kernel of `A`.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let z = self.z;
        let mut gens = Vec::new();
        for k in 0..self.cols {
            let scale = match self.vals.get(k) {
                Some(&0) => continue,
                Some(&v) => z.ell.pow(z.m - v),
                None => 1,
            };
            gens.push(self.q.iter().map(|row| z.mul(row[k], scale)).collect());
        }
        gens
    }

    /// Exponents `e_i` with `coker A = (+) Z/l^e_i`, zeros dropped, sorted.
    pub fn coker_invariants(&self) -> Vec<u32> {
        let mut inv: Vec<u32> = self.vals.iter().copied().filter(|&v| v > 0).collect();
        inv.extend(std::iter::repeat_n(self.z.m, self.rows - self.vals.len()));
        inv.sort_unstable();
        inv
    }

    /// `log_l |coker A|`
    pub fn coker_log_size(&self) -> u32 {
        self.coker_invariants().iter().sum()
    }
}

/// A `Z/l^m`-submodule of `(Z/l^m)^width` kept in Howell form: at most one
/// row per pivot column, pivots normalized to `l^v`, and for every row `r`
/// with pivot valuation `v` the multiple `l^(m-v) r` reduces to zero. Greedy
/// reduction then decides membership.
#[derive(Clone, Debug)]
pub struct Span {
    z: ZMod,
    width: usize,
    rows: Vec<Option<(u32, Vec<u64>)>>,
}

impl Span {
    pub fn new(z: ZMod, width: usize) -> Self {
        Span {
            z,
            width,
            rows: vec![None; width],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, v: Vec<u64>) {
        let z = self.z;
        let mut pending = vec![v];
        while let Some(mut v) = pending.pop() {
            for x in v.iter_mut() {
                *x %= z.q;
            }
            let mut c = 0;
            while c < self.width {
                if v[c] == 0 {
                    c += 1;
                    continue;
                }
                let val = z.val(v[c]);
                match &mut self.rows[c] {
                    Some((w, row)) if val >= *w => {
                        let f = v[c] / z.ell.pow(*w);
                        for (x, y) in v.iter_mut().zip(row.iter()) {
                            *x = z.sub(*x, z.mul(f, *y));
                        }
                    }
                    slot => {
                        let lv = z.ell.pow(val);
                        let uinv = z.inv_unit(v[c] / lv);
                        let new_row: Vec<u64> = v.iter().map(|&x| z.mul(x, uinv)).collect();
                        let sat: Vec<u64> = new_row.iter().map(|&x| z.mul(x, z.ell.pow(z.m - val))).collect();
                        if let Some((_, mut old)) = slot.take() {
                            let f = old[c] / lv;
                                                        for (x, y) in old.iter_mut().zip(&new_row) {
                                *x = z.sub(*x, z.mul(f, *y));
                            }
                            pending.push(old);
                        }
                        *slot = Some((val, new_row));
                        if val > 0 {
                            pending.push(sat);
                        }
                        break;
                    }
                }
            }
        }
    }

    /// Remainder of `v` after greedy reduction; zero iff `v` is in the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let z = self.z;
        let mut v: Vec<u64> = v.iter().map(|x| x % z.q).collect();
        for c in 0..self.width {
            if v[c] == 0 {
                continue;
            }
            match &self.rows[c] {
                Some((w, row)) if z.val(v[c]) >= *w => {
                    let f = v[c] / z.ell.pow(*w);
                    for (x, y) in v.iter_mut().zip(row) {
                        *x = z.sub(*x, z.mul(f, *y));
                    }
                }
                _ => return v,
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// `log_l` of the size of the span.
    pub fn log_size(&self) -> u32 {
        self.rows.iter().flatten().map(|(w, _)| self.z.m - w).sum()
    }
}

/// Expands an `Omega`-matrix into a `Z/l^m`-matrix (each entry a `D x D`
/// block).
pub fn expand(ring: &CoeffRing, a: &Matrix<Elem>) -> Vec<Vec<u64>> {
    let d = ring.degree();
    let mut out = vec![vec![0u64; a.cols() * d]; a.rows() * d];
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let block = ring.mult_matrix(a.get(i, j));
            for (bi, brow) in block.iter().enumerate() {
                out[i * d + bi][j * d..(j + 1) * d].copy_from_slice(brow);
            }
        }
    }
    out
}

pub fn flatten(v: &[Elem]) -> Vec<u64> {
    v.iter().flat_map(|e| e.coords().iter().copied()).collect()
}

pub fn unflatten(ring: &CoeffRing, v: &[u64]) -> Vec<Elem> {
    v.chunks(ring.degree())
        .map(|c| ring.elem(&c.iter().map(|&x| x as i64).collect::<Vec<_>>()))
        .collect()
}

/// Smith form of an `Omega`-matrix viewed over `Z/l^m`.
pub fn smith_omega(ring: &CoeffRing, a: &Matrix<Elem>) -> Smith {
    let d = ring.degree();
    smith(ZMod::of(ring), &expand(ring, a), a.rows() * d, a.cols() * d)
}

/// Solves `A x = b` over `Omega`.
pub fn solve_omega(ring: &CoeffRing, a: &Matrix<Elem>, b: &[Elem]) -> Option<Vec<Elem>> {
    smith_omega(ring, a)
        .solve(&flatten(b))
        .map(|x| unflatten(ring, &x))
}

/// Whether every column of `b` lies in the `Omega`-column span of `a`.
pub fn colspan_contains(ring: &CoeffRing, a: &Matrix<Elem>, b: &Matrix<Elem>) -> bool {
    let s = smith_omega(ring, a);
    (0..b.cols()).all(|j| {
        let col: Vec<Elem> = (0..b.rows()).map(|i| b.get(i, j).clone()).collect();
        s.solve(&flatten(&col)).is_some()
    })
}

/// `Z/l^m`-generators of the kernel of an `Omega`-matrix, as `Omega`-vectors.
pub fn kernel_omega(ring: &CoeffRing, a: &Matrix<Elem>) -> Vec<Vec<Elem>> {
    smith_omega(ring, a)
        .kernel()
        .iter()
        .map(|v| unflatten(ring, v))
        .collect()
}

/// Zero vector test helper.
pub fn is_zero_vec(ring: &CoeffRing, v: &[Elem]) -> bool {
    v.iter().all(|x| ring.is_zero(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coker_of_minus_three_in_z9() {
        let z = ZMod { ell: 3, m: 2, q: 9 };
        let s = smith(z, &[vec![6]], 1, 1);
        assert_eq!(s.coker_invariants(), vec![1]);
        assert!(s.solve(&[3]).is_some());
        assert!(s.solve(&[1]).is_none());
        // kernel of multiplication by 6 on Z/9 is 3Z/9
        assert_eq!(s.kernel(), vec![vec![3]]);
    }

    #[test]
    fn smith_transforms_diagonalize() {
        let z = ZMod { ell: 5, m: 2, q: 25 };
        let a = vec![vec![5, 10, 3], vec![15, 0, 6], vec![0, 5, 20]];
        let s = smith(z, &a, 3, 3);
        let mul = |x: &Vec<Vec<u64>>, y: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
            (0..x.len())
                .map(|i| {
                    (0..y[0].len())
                        .map(|j| (0..y.len()).fold(0, |acc, k| (acc + x[i][k] * y[k][j]) % 25))
                        .collect()
                })
                .collect()
        };
        let d = mul(&mul(&s.p, &a), &s.q);
        for i in 0..3 {
            for j in 0..3 {
                let expect = match s.vals.get(i) {
                    Some(&v) if i == j => 5u64.pow(v) % 25,
                    _ => 0,
                };
                assert_eq!(d[i][j], expect);
            }
        }
    }

    #[test]
    fn solve_and_kernel_are_consistent_by_brute_force() {
        let z = ZMod { ell: 3, m: 2, q: 9 };
        let a = vec![vec![3, 6], vec![0, 3]];
        let s = smith(z, &a, 2, 2);
        let apply = |x: &[u64]| -> Vec<u64> {
            a.iter().map(|r| (r[0] * x[0] + r[1] * x[1]) % 9).collect()
        };
        let mut image = std::collections::HashSet::new();
        let mut kernel_size = 0;
        for x0 in 0..9 {
            for x1 in 0..9 {
                let y = apply(&[x0, x1]);
                if y == vec![0, 0] {
                    kernel_size += 1;
                }
                image.insert(y);
            }
        }
        for b0 in 0..9 {
            for b1 in 0..9 {
                let b = vec![b0, b1];
                let sol = s.solve(&b);
                assert_eq!(sol.is_some(), image.contains(&b));
                if let Some(x) = sol {
                    assert_eq!(apply(&x), b);
                }
            }
        }
        assert_eq!(3u32.pow(s.coker_log_size()) as usize * image.len(), 81);
        assert_eq!(kernel_size * image.len(), 81);
        for g in s.kernel() {
            assert_eq!(apply(&g), vec![0, 0]);
        }
    }

    #[test]
    fn howell_span_matches_smith_membership() {
        use rand::{Rng, SeedableRng};
        let z = ZMod { ell: 3, m: 2, q: 9 };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let width = rng.random_range(1..5);
            let k = rng.random_range(0..5);
            let gens: Vec<Vec<u64>> = (0..k)
                .map(|_| (0..width).map(|_| [0, 1, 3, 6, 2][rng.random_range(0..5)]).collect())
                .collect();
            let mut span = Span::new(z, width);
            for g in &gens {
                span.insert(g.clone());
            }
            let a: Vec<Vec<u64>> = (0..width).map(|i| gens.iter().map(|g| g[i]).collect()).collect();
            let sm = smith(z, &a, width, k);
            let target: Vec<u64> = (0..width).map(|_| rng.random_range(0..9)).collect();
            let in_smith = if k == 0 { target.iter().all(|&x| x == 0) } else { sm.solve(&target).is_some() };
            assert_eq!(span.contains(&target), in_smith, "gens {gens:?} target {target:?}");
            let mut combo = vec![0u64; width];
            for g in &gens {
                let c = rng.random_range(0..9u64);
                for (x, y) in combo.iter_mut().zip(g) {
                    *x = (*x + c * y) % 9;
                }
            }
            assert!(span.contains(&combo));
            let log: u32 = if k == 0 { 0 } else { width as u32 * 2 - sm.coker_log_size() };
            assert_eq!(span.log_size(), log);
        }
    }
}

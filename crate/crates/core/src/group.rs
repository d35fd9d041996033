//! Groups `G = H x| Gamma` with `H` finite (given by its multiplication
//! table) and `Gamma` represented by its exponent lattice `Z`, generated by
//! `gamma`. Conjugation by `gamma` acts on `H` through the permutation
//! `alpha`: `gamma h gamma^-1 = alpha(h)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupData {
    order: usize,
    table: Vec<Vec<usize>>,
    action: Vec<usize>,
    action_order: u64,
    inverses: Vec<usize>,
}

/// `h * gamma^a`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GElement {
    pub h: usize,
    pub a: i64,
}

impl GElement {
    pub fn new(h: usize, a: i64) -> Self {
        GElement { h, a }
    }

    pub fn gamma_power(a: i64) -> Self {
        GElement { h: 0, a }
    }
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h{}*g^{}", self.h, self.a)
    }
}

fn is_power_of(mut n: u64, ell: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(ell) {
        n /= ell;
    }
    n == 1
}

impl GroupData {
    /// Validates the table and the action, including that the action order
    /// is a power of `ell`.
    pub fn new(
        table: Vec<Vec<usize>>,
        action: Vec<usize>,
        action_order: u64,
        ell: u64,
    ) -> Result<Self> {
        let g = Self::new_unchecked_order(table, action, action_order)?;
        if !is_power_of(g.action_order, ell) {
            return Err(Error::InvalidGroup(format!(
                "action order {} is not a power of {ell}",
                g.action_order
            )));
        }
        Ok(g)
    }

    /// Like `new` but without the l-power condition on the action order;
    /// used for subgroups, whose conjugation action need not have l-power
    /// order in the integer model of `Gamma`.
    pub(crate) fn new_unchecked_order(
        table: Vec<Vec<usize>>,
        action: Vec<usize>,
        action_order: u64,
    ) -> Result<Self> {
        let n = table.len();
        let bad = |msg: String| Err(Error::InvalidGroup(msg));
        if n == 0 {
            return bad("empty table".into());
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("table is not a square table of valid indices".into());
        }
        for (i, row) in table.iter().enumerate() {
            if table[0][i] != i || row[0] != i {
                return bad(format!("element 0 is not the identity (fails at {i})"));
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for (i, row) in table.iter().enumerate() {
            match row.iter().position(|&x| x == 0) {
                Some(j) if table[j][i] == 0 => inverses[i] = j,
                _ => return bad(format!("element {i} has no two-sided inverse")),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("associativity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        if action.len() != n {
            return bad("action has wrong length".into());
        }
        let distinct: BTreeSet<_> = action.iter().collect();
        if distinct.len() != n || action.iter().any(|&x| x >= n) {
            return bad("action is not a permutation".into());
        }
        for a in 0..n {
            for b in 0..n {
                if action[table[a][b]] != table[action[a]][action[b]] {
                    return bad(format!("action is not a homomorphism at ({a}, {b})"));
                }
            }
        }
        if action_order == 0 {
            return bad("action order must be positive".into());
        }
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 1..=action_order {
            perm = perm.iter().map(|&x| action[x]).collect();
            let is_id = perm.iter().enumerate().all(|(i, &x)| i == x);
            if is_id && k < action_order {
                return bad(format!(
                    "action has order {k}, not the declared {action_order}"
                ));
            }
            if k == action_order && !is_id {
                return bad(format!("action^{action_order} is not the identity"));
            }
        }
        Ok(GroupData {
            order: n,
            table,
            action,
            action_order,
            inverses,
        })
    }

    pub fn trivial() -> Self {
        GroupData {
            order: 1,
            table: vec![vec![0]],
            action: vec![0],
            action_order: 1,
            inverses: vec![0],
        }
    }

    /// `Z/n` with the identity action.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::new_unchecked_order(table, (0..n).collect(), 1).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn action(&self) -> &[usize] {
        &self.action
    }

    pub fn action_order(&self) -> u64 {
        self.action_order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn mul_h(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv_h(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `alpha^k(h)` for any integer `k`.
    pub fn act(&self, h: usize, k: i64) -> usize {
        let k = k.rem_euclid(self.action_order as i64);
        (0..k).fold(h, |x, _| self.action[x])
    }

    /// `(h, a)(h', a') = (h alpha^a(h'), a + a')`
    pub fn mul(&self, x: GElement, y: GElement) -> GElement {
        GElement {
            h: self.mul_h(x.h, self.act(y.h, x.a)),
            a: x.a + y.a,
        }
    }

    /// `(h gamma^a)^-1 = alpha^-a(h^-1) gamma^-a`
    pub fn inv(&self, x: GElement) -> GElement {
        GElement {
            h: self.act(self.inv_h(x.h), -x.a),
            a: -x.a,
        }
    }

    pub fn pow(&self, x: GElement, k: i64) -> GElement {
        let base = if k < 0 { self.inv(x) } else { x };
        (0..k.unsigned_abs()).fold(GElement::new(0, 0), |acc, _| self.mul(acc, base))
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        set.contains(&0)
            && set.iter().all(|&a| a < self.order)
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&self.mul_h(a, b))))
    }

    /// Quotient by a normal, action-stable subgroup; returns the quotient
    /// data and the projection `H -> H/N` on indices.
    pub fn quotient(&self, normal: &[usize]) -> Result<(GroupData, Vec<usize>)> {
        let nset: BTreeSet<usize> = normal.iter().copied().collect();
        if !self.is_subgroup(normal) {
            return Err(Error::NotNormal("not a subgroup".into()));
        }
        for &k in &nset {
            if !nset.contains(&self.action[k]) {
                return Err(Error::NotNormal(format!("not action-stable at {k}")));
            }
            for h in 0..self.order {
                let conj = self.mul_h(self.mul_h(h, k), self.inv_h(h));
                if !nset.contains(&conj) {
                    return Err(Error::NotNormal(format!("not normal: {h} conjugates {k} out")));
                }
            }
        }
        // cosets labelled in order of their least element
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for h in 0..self.order {
            if proj[h] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(h);
            for &k in &nset {
                proj[self.mul_h(h, k)] = idx;
            }
        }
        let q = reps.len();
        let table: Vec<Vec<usize>> = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| proj[self.mul_h(a, b)]).collect())
            .collect();
        let action: Vec<usize> = reps.iter().map(|&a| proj[self.action[a]]).collect();
        let mut order = 1u64;
        let mut perm: Vec<usize> = action.clone();
        while perm.iter().enumerate().any(|(i, &x)| i != x) {
            perm = perm.iter().map(|&x| action[x]).collect();
            order += 1;
        }
        let g = GroupData::new_unchecked_order(table, action, order)?;
        debug_assert_eq!(g.order, q);
        Ok((g, proj))
    }

    pub fn render_element(&self, x: GElement) -> String {
        x.to_string()
    }
}

/// An open subgroup `U = K <u>` of `G` with `K = U n H` and
/// `u = gen_h * gamma^index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenSubgroup {
    /// sorted; `k_elems[0] = 0`
    k_elems: Vec<usize>,
    index: u64,
    gen_h: usize,
    /// `U` as a group `K x| <u>` in its own right
    own: GroupData,
}

impl OpenSubgroup {
    pub fn new(g: &GroupData, k_elems: &[usize], index: u64, gen_h: usize) -> Result<Self> {
        let mut k: Vec<usize> = k_elems.to_vec();
        k.sort_unstable();
        k.dedup();
        if !g.is_subgroup(&k) {
            return Err(Error::NotASubgroup("H-part is not a subgroup of H".into()));
        }
        if index == 0 {
            return Err(Error::NotASubgroup("lattice index must be positive".into()));
        }
        if gen_h >= g.order() {
            return Err(Error::NotASubgroup("generator H-part out of range".into()));
        }
        let u = GElement::new(gen_h, index as i64);
        let u_inv = g.inv(u);
        let local: std::collections::BTreeMap<usize, usize> =
            k.iter().enumerate().map(|(i, &h)| (h, i)).collect();
        let mut conj_action = Vec::with_capacity(k.len());
        for &h in &k {
            let c = g.mul(g.mul(u, GElement::new(h, 0)), u_inv);
            debug_assert_eq!(c.a, 0);
            match local.get(&c.h) {
                Some(&i) => conj_action.push(i),
                None => {
                    return Err(Error::NotASubgroup(format!(
                        "generator does not normalize the H-part (moves {h} to {})",
                        c.h
                    )))
                }
            }
        }
        let table: Vec<Vec<usize>> = k
            .iter()
            .map(|&a| k.iter().map(|&b| local[&g.mul_h(a, b)]).collect())
            .collect();
        let mut order = 1u64;
        let mut perm = conj_action.clone();
        while perm.iter().enumerate().any(|(i, &x)| i != x) {
            perm = perm.iter().map(|&x| conj_action[x]).collect();
            order += 1;
        }
        let own = GroupData::new_unchecked_order(table, conj_action, order)?;
        Ok(OpenSubgroup {
            k_elems: k,
            index,
            gen_h,
            own,
        })
    }

    /// `U = G`
    pub fn whole(g: &GroupData) -> Self {
        Self::new(g, &(0..g.order()).collect::<Vec<_>>(), 1, 0).expect("G is a subgroup of itself")
    }

    pub fn k_elems(&self) -> &[usize] {
        &self.k_elems
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn gen_h(&self) -> usize {
        self.gen_h
    }

    /// `U` as `K x| <u>`; its elements `(k, j)` mean `k u^j`.
    pub fn group(&self) -> &GroupData {
        &self.own
    }

    pub fn generator(&self) -> GElement {
        GElement::new(self.gen_h, self.index as i64)
    }

    /// `[G : U] = [H : K] * index`
    pub fn group_index(&self, g: &GroupData) -> usize {
        g.order() / self.k_elems.len() * self.index as usize
    }

    /// Image in `G` of an element `(k, j)` of `U`.
    pub fn to_ambient(&self, g: &GroupData, x: GElement) -> GElement {
        let k = GElement::new(self.k_elems[x.h], 0);
        g.mul(k, g.pow(self.generator(), x.a))
    }

    /// Coordinates in `U` of an element of `G`, if it lies in `U`.
    pub fn from_ambient(&self, g: &GroupData, x: GElement) -> Option<GElement> {
        if x.a.rem_euclid(self.index as i64) != 0 {
            return None;
        }
        let j = x.a / self.index as i64;
        let k = g.mul(x, g.pow(self.generator(), -j));
        debug_assert_eq!(k.a, 0);
        self.k_elems
            .binary_search(&k.h)
            .ok()
            .map(|i| GElement::new(i, j))
    }

    /// Canonical representatives `h gamma^j` (`0 <= j < index`) of the left
    /// cosets `G/U`, in a fixed order.
    pub fn coset_reps(&self, g: &GroupData) -> Vec<GElement> {
        let mut reps = Vec::new();
        for j in 0..self.index as i64 {
            let mut seen = vec![false; g.order()];
            for h in 0..g.order() {
                if seen[h] {
                    continue;
                }
                reps.push(GElement::new(h, j));
                // coset h alpha^j(K)
                for &k in &self.k_elems {
                    seen[g.mul_h(h, g.act(k, j))] = true;
                }
            }
        }
        reps
    }

    /// Index (into `coset_reps`) of the coset `x U`.
    pub fn coset_of(&self, g: &GroupData, reps: &[GElement], x: GElement) -> usize {
        let q = x.a.div_euclid(self.index as i64);
        let y = g.mul(x, g.pow(self.generator(), -q));
        debug_assert!((0..self.index as i64).contains(&y.a));
        reps.iter()
            .position(|t| {
                t.a == y.a && {
                    let d = g.mul(g.inv(*t), y);
                    d.a == 0 && self.k_elems.binary_search(&d.h).is_ok()
                }
            })
            .expect("every element lies in some coset")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn s3_table() -> Vec<Vec<usize>> {
        // permutations of {0,1,2} as images, composition (a*b)(x) = a(b(x))
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| idx([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect()
    }

    fn conj_action(table: &[Vec<usize>], c: usize) -> Vec<usize> {
        let n = table.len();
        let cinv = (0..n).find(|&j| table[c][j] == 0).unwrap();
        (0..n).map(|h| table[table[c][h]][cinv]).collect()
    }

    #[test]
    fn trivial_group_validates() {
        assert!(GroupData::new(vec![vec![0]], vec![0], 1, 3).is_ok());
    }

    #[test]
    fn inversion_on_z3_is_not_an_ell_power_for_ell_3() {
        let t = GroupData::cyclic(3).table().to_vec();
        let err = GroupData::new(t, vec![0, 2, 1], 2, 3).unwrap_err();
        assert!(matches!(err, Error::InvalidGroup(msg) if msg.contains("not a power")));
    }

    #[test]
    fn s3_with_conjugation_by_three_cycle() {
        let t = s3_table();
        let act = conj_action(&t, 1);
        let g = GroupData::new(t.clone(), act.clone(), 3, 3).unwrap();
        // brute-force automorphism check independent of the constructor
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(act[t[a][b]], t[act[a]][act[b]]);
            }
        }
        assert_eq!(g.action_order(), 3);
        assert!(GroupData::new(t, act, 1, 3).is_err());
    }

    #[test]
    fn broken_tables_rejected() {
        let mut t = GroupData::cyclic(3).table().to_vec();
        t[1][1] = 1;
        assert!(GroupData::new(t, vec![0, 1, 2], 1, 3).is_err());
        let t = GroupData::cyclic(3).table().to_vec();
        assert!(GroupData::new(t.clone(), vec![0, 1, 1], 1, 3).is_err());
        // not a homomorphism: swaps 0 and 1
        assert!(GroupData::new(t, vec![1, 0, 2], 2, 2).is_err());
    }

    #[test]
    fn semidirect_law_is_associative() {
        let t = s3_table();
        let g = GroupData::new(t.clone(), conj_action(&t, 1), 3, 3).unwrap();
        let els: Vec<GElement> = (0..6)
            .flat_map(|h| (-2..3).map(move |a| GElement::new(h, a)))
            .collect();
        for &x in els.iter().step_by(3) {
            for &y in els.iter().step_by(2) {
                for &z in els.iter().step_by(5) {
                    assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                }
                assert_eq!(g.mul(x, g.inv(x)), GElement::new(0, 0));
            }
        }
    }

    #[test]
    fn quotient_of_s3_by_a3() {
        let t = s3_table();
        let g = GroupData::new(t.clone(), conj_action(&t, 1), 3, 3).unwrap();
        let (q, proj) = g.quotient(&[0, 1, 2]).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj, vec![0, 0, 0, 1, 1, 1]);
        assert_eq!(q.action_order(), 1);
        assert!(matches!(g.quotient(&[0, 3]), Err(Error::NotNormal(_))));
    }

    #[test]
    fn cosets_of_index_three_lattice() {
        let g = GroupData::trivial();
        let u = OpenSubgroup::new(&g, &[0], 3, 0).unwrap();
        let reps = u.coset_reps(&g);
        assert_eq!(reps.len(), 3);
        assert_eq!(u.group_index(&g), 3);
        for a in -7..7 {
            let c = u.coset_of(&g, &reps, GElement::gamma_power(a));
            assert_eq!(c as i64, a.rem_euclid(3));
        }
    }

    #[test]
    fn cosets_partition_brute_force() {
        // S3 x| Gamma with U = <(12)> * <gamma^3>: (12) must be normalized by gamma^3
        let t = s3_table();
        let g = GroupData::new(t.clone(), conj_action(&t, 1), 3, 3).unwrap();
        let u = OpenSubgroup::new(&g, &[0, 3], 3, 0).unwrap();
        let reps = u.coset_reps(&g);
        assert_eq!(reps.len(), u.group_index(&g));
        // x and y share a coset iff x^-1 y lies in U
        let window: Vec<GElement> = (0..6)
            .flat_map(|h| (-4..5).map(move |a| GElement::new(h, a)))
            .collect();
        for &x in &window {
            for &y in window.iter().step_by(7) {
                let same = u.from_ambient(&g, g.mul(g.inv(x), y)).is_some();
                assert_eq!(same, u.coset_of(&g, &reps, x) == u.coset_of(&g, &reps, y));
            }
        }
        assert!(OpenSubgroup::new(&g, &[0, 3], 1, 0).is_err());
    }

    #[test]
    fn ambient_roundtrip() {
        let t = s3_table();
        let g = GroupData::new(t.clone(), conj_action(&t, 1), 3, 3).unwrap();
        let u = OpenSubgroup::new(&g, &[0, 1, 2], 2, 3).unwrap();
        for k in 0..3 {
            for j in -3..4 {
                let x = GElement::new(k, j);
                let amb = u.to_ambient(&g, x);
                assert_eq!(u.from_ambient(&g, amb), Some(x));
            }
        }
    }
}

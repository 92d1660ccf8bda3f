use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};

/// Default bound on group orders accepted by the enumerating routines.
pub const DEFAULT_MAX_ORDER: usize = 64;

/// Finite group given by its multiplication table; element `0` is the identity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinGroup {
    n: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
}

impl std::fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FinGroup(order {})", self.n)
    }
}

impl FinGroup {
    /// Validates the table as a group law with identity `0`.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotGroup(format!("row {i} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::NotGroup(format!(
                    "row {i} contains out-of-range entry {bad}"
                )));
            }
            table.extend_from_slice(row);
        }
        let g = FinGroup {
            n,
            table,
            inv: vec![0; n],
        };
        for a in 0..n {
            if g.mul(0, a) != a || g.mul(a, 0) != a {
                return Err(Error::NotGroup(format!(
                    "element 0 is not an identity for {a}"
                )));
            }
        }
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let c = g.mul(a, b);
                if seen[c] {
                    return Err(Error::NotGroup(format!("row {a} is not a permutation")));
                }
                seen[c] = true;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                        return Err(Error::NotGroup(format!(
                            "associativity fails for ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(g.with_inverses())
    }

    fn from_table_unchecked(n: usize, table: Vec<usize>) -> Self {
        FinGroup {
            n,
            table,
            inv: vec![0; n],
        }
        .with_inverses()
    }

    fn with_inverses(mut self) -> Self {
        for a in 0..self.n {
            self.inv[a] = (0..self.n)
                .find(|&b| self.mul(a, b) == 0)
                .expect("group law has inverses");
        }
        self
    }

    /// Group generated by permutations of `0..degree` (composition `(p·q)(x) = p(q(x))`).
    ///
    /// Returns the group together with the element indices of the generators.
    pub fn from_permutations(gens: &[Vec<usize>], max_order: usize) -> Result<(Self, Vec<usize>)> {
        let degree = gens.first().map_or(0, Vec::len);
        for (k, p) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            if p.len() != degree
                || p.iter()
                    .any(|&x| x >= degree || std::mem::replace(&mut seen[x], true))
            {
                return Err(Error::NotGroup(format!(
                    "generator {k} is not a permutation of 0..{degree}"
                )));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for p in gens {
                let q: Vec<usize> = elems[i].iter().map(|&x| p[x]).collect();
                if !index.contains_key(&q) {
                    if elems.len() >= max_order {
                        return Err(Error::SizeBound {
                            order: elems.len() + 1,
                            bound: max_order,
                        });
                    }
                    index.insert(q.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(q);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let c: Vec<usize> = elems[b].iter().map(|&x| elems[a][x]).collect();
                table[a * n + b] = index[&c];
            }
        }
        let gen_idx = gens.iter().map(|p| index[p]).collect();
        Ok((Self::from_table_unchecked(n, table), gen_idx))
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with element `k` the class of `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_table_unchecked(n, table)
    }

    /// Direct product; element `(a, b)` has index `a * |other| + b`.
    pub fn product(&self, other: &FinGroup) -> Self {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (a1, b1) = (x / n2, x % n2);
                let (a2, b2) = (y / n2, y % n2);
                table[x * n + y] = self.mul(a1, a2) * n2 + other.mul(b1, b2);
            }
        }
        Self::from_table_unchecked(n, table)
    }

    pub fn klein_four() -> Self {
        Self::cyclic(2).product(&Self::cyclic(2))
    }

    /// Dihedral group of order `2n`: element `k` is `r^k`, element `n + k` is `s·r^k`.
    pub fn dihedral(n: usize) -> Self {
        let m = 2 * n;
        let mut table = vec![0; m * m];
        for x in 0..m {
            for y in 0..m {
                let (sx, kx) = (x / n, x % n);
                let (sy, ky) = (y / n, y % n);
                // r^a s = s r^{-a}
                let k = if sy == 0 {
                    (kx + ky) % n
                } else {
                    (n + ky - kx % n) % n
                };
                let s = (sx + sy) % 2;
                table[x * m + y] = s * n + k;
            }
        }
        Self::from_table_unchecked(m, table)
    }

    pub fn symmetric3() -> Self {
        Self::dihedral(3)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut r = 0;
        for _ in 0..k.unsigned_abs() {
            r = self.mul(r, base);
        }
        r
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// A small generating set chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        Subgroup::whole(self).generators(self)
    }

    pub fn check_order(&self, max_order: usize) -> Result<()> {
        if self.n > max_order {
            return Err(Error::SizeBound {
                order: self.n,
                bound: max_order,
            });
        }
        Ok(())
    }
}

/// Subgroup as a sorted member list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup { members: vec![0] }
    }

    pub fn whole(g: &FinGroup) -> Self {
        Subgroup {
            members: g.elements().collect(),
        }
    }

    /// Subgroup generated by the given elements.
    pub fn generated(g: &FinGroup, gens: &[usize]) -> Self {
        let mut inside = vec![false; g.order()];
        inside[0] = true;
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &s in gens {
                let y = g.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        Subgroup { members: list }
    }

    /// Validates a member list.
    pub fn from_members(g: &FinGroup, members: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&x| x >= g.order()) {
            return Err(Error::NotSubgroup(format!(
                "element {bad} is not in the group"
            )));
        }
        if !set.contains(&0) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&g.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!(
                        "not closed: {a}·{b} = {}",
                        g.mul(a, b)
                    )));
                }
            }
        }
        Ok(Subgroup {
            members: set.into_iter().collect(),
        })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn index_in(&self, g: &FinGroup) -> usize {
        g.order() / self.order()
    }

    /// Greedy generating set.
    pub fn generators(&self, g: &FinGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = Subgroup::trivial();
        for &x in &self.members {
            if !cur.contains(x) {
                gens.push(x);
                cur = Subgroup::generated(g, &gens);
                if cur.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    pub fn is_cyclic(&self, g: &FinGroup) -> bool {
        self.members
            .iter()
            .any(|&x| g.element_order(x) == self.order())
    }

    pub fn conjugate(&self, g: &FinGroup, by: usize) -> Subgroup {
        let mut m: Vec<usize> = self.members.iter().map(|&x| g.conj(by, x)).collect();
        m.sort_unstable();
        Subgroup { members: m }
    }

    pub fn is_normal(&self, g: &FinGroup) -> bool {
        g.elements().all(|h| self.conjugate(g, h) == *self)
    }

    /// Representatives of the left cosets `xH`, the first being the identity.
    pub fn left_transversal(&self, g: &FinGroup) -> Vec<usize> {
        let mut seen = vec![false; g.order()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if !seen[x] {
                reps.push(x);
                for &h in &self.members {
                    seen[g.mul(x, h)] = true;
                }
            }
        }
        reps
    }

    /// Representatives of the right cosets `Hx`, the first being the identity.
    pub fn right_transversal(&self, g: &FinGroup) -> Vec<usize> {
        let mut seen = vec![false; g.order()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if !seen[x] {
                reps.push(x);
                for &h in &self.members {
                    seen[g.mul(h, x)] = true;
                }
            }
        }
        reps
    }

    /// Right-coset representatives within `big`, relative to `self ≤ big`.
    pub fn right_transversal_in(&self, g: &FinGroup, big: &Subgroup) -> Vec<usize> {
        let mut seen = HashSet::new();
        let mut reps = Vec::new();
        for &x in big.members() {
            if !seen.contains(&x) {
                reps.push(x);
                for &h in &self.members {
                    seen.insert(g.mul(h, x));
                }
            }
        }
        reps
    }

    /// The subgroup as a group in its own right, with the embedding of local indices.
    pub fn as_group(&self, g: &FinGroup) -> (FinGroup, Vec<usize>) {
        let n = self.order();
        let pos: HashMap<usize, usize> = self
            .members
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i))
            .collect();
        let mut table = vec![0; n * n];
        for (i, &a) in self.members.iter().enumerate() {
            for (j, &b) in self.members.iter().enumerate() {
                table[i * n + j] = pos[&g.mul(a, b)];
            }
        }
        (
            FinGroup::from_table_unchecked(n, table),
            self.members.clone(),
        )
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }
}

/// Quotient by a normal subgroup, with the projection of elements.
pub fn quotient_group(g: &FinGroup, normal: &Subgroup) -> (FinGroup, Vec<usize>) {
    let reps = normal.left_transversal(g);
    let mut proj = vec![usize::MAX; g.order()];
    for (i, &r) in reps.iter().enumerate() {
        for &h in normal.members() {
            proj[g.mul(r, h)] = i;
        }
    }
    let k = reps.len();
    let mut table = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            table[i * k + j] = proj[g.mul(reps[i], reps[j])];
        }
    }
    (FinGroup::from_table_unchecked(k, table), proj)
}

/// Commutator subgroup `[G, G]`.
pub fn commutator_subgroup(g: &FinGroup) -> Subgroup {
    let mut comms = BTreeSet::new();
    for a in g.elements() {
        for b in g.elements() {
            let c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
            comms.insert(c);
        }
    }
    let gens: Vec<usize> = comms.into_iter().collect();
    Subgroup::generated(g, &gens)
}

fn prime_factors(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factors (each ≥ 2, divisibility chain) of a finite abelian group.
pub fn abelian_invariants(g: &FinGroup) -> Vec<usize> {
    debug_assert!(g.is_abelian());
    // per prime, the partition of exponents
    let mut per_prime: Vec<(usize, Vec<u32>)> = Vec::new();
    for (p, e) in prime_factors(g.order()) {
        let mut counts = vec![1usize];
        for k in 1..=e {
            let pk = p.pow(k);
            counts.push(g.elements().filter(|&x| g.pow(x, pk as i64) == 0).count());
        }
        // number of cyclic factors of exponent ≥ k
        let mut at_least = Vec::new();
        for k in 1..=e as usize {
            let ratio = counts[k] / counts[k - 1];
            at_least.push(ilog(ratio, p));
        }
        let total = at_least.first().copied().unwrap_or(0) as usize;
        let mut exps = Vec::with_capacity(total);
        for j in 0..total {
            let ex = at_least.iter().filter(|&&c| c as usize > j).count() as u32;
            exps.push(ex);
        }
        per_prime.push((p, exps));
    }
    let len = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut out = vec![1usize; len];
    for (p, exps) in per_prime {
        // exps is descending; the largest goes into the last invariant factor
        for (j, &ex) in exps.iter().enumerate() {
            out[len - 1 - j] *= p.pow(ex);
        }
    }
    out
}

fn ilog(mut x: usize, p: usize) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

/// Structural data of a finite group.
#[derive(Clone, Debug)]
pub struct GroupAnalysis {
    pub subgroups: Vec<Subgroup>,
    /// Class index of each entry of `subgroups`.
    pub subgroup_class: Vec<usize>,
    pub class_count: usize,
    /// One representative per conjugacy class of cyclic subgroups, by increasing order.
    pub cyclic_representatives: Vec<Subgroup>,
    pub abelianization: Vec<usize>,
    pub sylow_cyclic: bool,
}

/// Every subgroup, as joins of cyclic subgroups; sorted by order then members.
pub fn all_subgroups(g: &FinGroup) -> Vec<Subgroup> {
    let cyclic: BTreeSet<Subgroup> = g.elements().map(|x| Subgroup::generated(g, &[x])).collect();
    let cyclic: Vec<Subgroup> = cyclic.into_iter().collect();
    let mut found: HashSet<Subgroup> = cyclic.iter().cloned().collect();
    let mut queue: VecDeque<Subgroup> = cyclic.iter().cloned().collect();
    while let Some(h) = queue.pop_front() {
        let gens = h.generators(g);
        for c in &cyclic {
            if c.is_subgroup_of(&h) {
                continue;
            }
            let mut all = gens.clone();
            all.extend(c.generators(g));
            let j = Subgroup::generated(g, &all);
            if found.insert(j.clone()) {
                queue.push_back(j);
            }
        }
    }
    let mut v: Vec<Subgroup> = found.into_iter().collect();
    v.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    v
}

/// Whether every Sylow subgroup is cyclic.
pub fn is_sylow_cyclic(g: &FinGroup) -> bool {
    prime_factors(g.order()).into_iter().all(|(p, e)| {
        let target = p.pow(e);
        g.elements().any(|x| g.element_order(x) == target)
    })
}

pub fn group_analysis(g: &FinGroup, max_order: usize) -> Result<GroupAnalysis> {
    g.check_order(max_order)?;
    let subgroups = all_subgroups(g);
    let pos: HashMap<&Subgroup, usize> =
        subgroups.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut class = vec![usize::MAX; subgroups.len()];
    let mut class_count = 0;
    for i in 0..subgroups.len() {
        if class[i] != usize::MAX {
            continue;
        }
        for x in g.elements() {
            let c = subgroups[i].conjugate(g, x);
            class[pos[&c]] = class_count;
        }
        class_count += 1;
    }
    let mut seen = HashSet::new();
    let mut cyclic_representatives = Vec::new();
    for (i, s) in subgroups.iter().enumerate() {
        if s.is_cyclic(g) && seen.insert(class[i]) {
            cyclic_representatives.push(s.clone());
        }
    }
    let (ab, _) = quotient_group(g, &commutator_subgroup(g));
    Ok(GroupAnalysis {
        abelianization: abelian_invariants(&ab),
        sylow_cyclic: is_sylow_cyclic(g),
        subgroups,
        subgroup_class: class,
        class_count,
        cyclic_representatives,
    })
}

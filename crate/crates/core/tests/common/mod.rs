//! Brute-force reference implementations used to check the library.
//!
//! Nothing here calls the library's subgroup, quotient, isomorphism or
//! solitary code. Groups are copied out of a library table (or built here)
//! and every derived structure is recomputed from the multiplication alone.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use solqsol::Group;

/// A subset of `0..n`, stored sorted.
pub type Set = Vec<usize>;

#[derive(Debug, Clone)]
pub struct OGroup {
    pub n: usize,
    pub t: Vec<usize>,
    pub e: usize,
}

impl OGroup {
    pub fn from_lib(g: &Group) -> OGroup {
        let n = g.order();
        let mut t = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                t.push(g.mul(a, b));
            }
        }
        OGroup::from_table(n, t)
    }

    pub fn from_table(n: usize, t: Vec<usize>) -> OGroup {
        let e = (0..n).find(|&a| (0..n).all(|b| t[a * n + b] == b)).expect("identity");
        OGroup { n, t, e }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| self.t[a * self.n..(a + 1) * self.n].to_vec()).collect()
    }

    pub fn m(&self, a: usize, b: usize) -> usize {
        self.t[a * self.n + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.n).find(|&b| self.m(a, b) == self.e).unwrap()
    }

    pub fn ord(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.e {
            x = self.m(x, a);
            k += 1;
        }
        k
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.e, |x, _| self.m(x, a))
    }

    /// Group axioms checked directly on the table.
    pub fn axioms_hold(&self) -> bool {
        let n = self.n;
        if self.t.len() != n * n || self.t.iter().any(|&x| x >= n) {
            return false;
        }
        for a in 0..n {
            let row: BTreeSet<usize> = (0..n).map(|b| self.m(a, b)).collect();
            let col: BTreeSet<usize> = (0..n).map(|b| self.m(b, a)).collect();
            if row.len() != n || col.len() != n || self.m(self.e, a) != a || self.m(a, self.e) != a {
                return false;
            }
        }
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.m(self.m(a, b), c) == self.m(a, self.m(b, c)))))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.m(a, b) == self.m(b, a)))
    }

    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for a in 0..self.n {
            *h.entry(self.ord(a)).or_insert(0) += 1;
        }
        h
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.n).any(|a| self.ord(a) == self.n)
    }

    /// Subgroup generated by `gens`, by breadth-first right multiplication.
    pub fn span(&self, gens: &[usize]) -> Set {
        let mut seen = vec![false; self.n];
        seen[self.e] = true;
        let mut queue = VecDeque::from([self.e]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.m(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.n).filter(|&x| seen[x]).collect()
    }

    /// Every subgroup, grown from cyclic subgroups one generator at a time.
    pub fn subgroups(&self) -> Vec<Set> {
        let mut cyclic: Vec<(usize, Set)> = Vec::new();
        let mut seen_cyclic = BTreeSet::new();
        for a in 0..self.n {
            let c = self.span(&[a]);
            if seen_cyclic.insert(c.clone()) {
                cyclic.push((a, c));
            }
        }
        let mut all: BTreeMap<Set, Vec<usize>> = BTreeMap::new();
        let mut frontier: Vec<(Set, Vec<usize>)> = vec![(vec![self.e], vec![])];
        all.insert(vec![self.e], vec![]);
        while let Some((h, gens)) = frontier.pop() {
            for (a, c) in &cyclic {
                if is_subset(c, &h) {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(*a);
                let k = self.span(&g2);
                if !all.contains_key(&k) {
                    all.insert(k.clone(), g2.clone());
                    frontier.push((k, g2));
                }
            }
        }
        all.into_keys().collect()
    }

    pub fn is_normal(&self, h: &Set) -> bool {
        let inside = membership(self.n, h);
        (0..self.n).all(|g| {
            let gi = self.inv(g);
            h.iter().all(|&x| inside[self.m(self.m(g, x), gi)])
        })
    }

    /// Every normal subgroup, as products of normal closures of elements.
    pub fn normal_subgroups(&self) -> Vec<Set> {
        let mut closures: BTreeSet<Set> = BTreeSet::new();
        for a in 0..self.n {
            let conj: Vec<usize> = (0..self.n).map(|g| self.m(self.m(g, a), self.inv(g))).collect();
            closures.insert(self.span(&conj));
        }
        let closures: Vec<Set> = closures.into_iter().collect();
        let mut all: BTreeSet<Set> = BTreeSet::from([vec![self.e]]);
        let mut frontier = vec![vec![self.e]];
        while let Some(h) = frontier.pop() {
            for c in &closures {
                if is_subset(c, &h) {
                    continue;
                }
                let k = self.product_set(&h, c);
                if all.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        all.into_iter().collect()
    }

    /// `HK` as a set; a subgroup whenever one factor is normal.
    pub fn product_set(&self, h: &Set, k: &Set) -> Set {
        let mut seen = vec![false; self.n];
        for &a in h {
            for &b in k {
                seen[self.m(a, b)] = true;
            }
        }
        (0..self.n).filter(|&x| seen[x]).collect()
    }

    /// The subgroup `h` re-indexed as a standalone table, with the inclusion.
    pub fn restrict(&self, h: &Set) -> (OGroup, Vec<usize>) {
        let index: HashMap<usize, usize> = h.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let k = h.len();
        let mut t = Vec::with_capacity(k * k);
        for &a in h {
            for &b in h {
                t.push(index[&self.m(a, b)]);
            }
        }
        (OGroup::from_table(k, t), h.clone())
    }

    /// `G/N` on cosets, with the coset index of every element.
    pub fn quotient(&self, normal: &Set) -> (OGroup, Vec<usize>) {
        let mut coset = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n {
            if coset[g] == usize::MAX {
                for &x in normal {
                    coset[self.m(g, x)] = reps.len();
                }
                reps.push(g);
            }
        }
        let k = reps.len();
        let mut t = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                t.push(coset[self.m(a, b)]);
            }
        }
        (OGroup::from_table(k, t), coset)
    }

    pub fn derived(&self) -> Set {
        let comms: Vec<usize> = (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .map(|(a, b)| self.m(self.m(self.inv(a), self.inv(b)), self.m(a, b)))
            .collect();
        self.span(&comms)
    }

    /// Intersection of the maximal subgroups, from an explicit subgroup list.
    pub fn frattini_of(&self, subgroups: &[Set]) -> Set {
        let whole: Set = (0..self.n).collect();
        let proper: Vec<&Set> = subgroups.iter().filter(|h| h.len() < self.n).collect();
        let maximal = proper.iter().filter(|h| !proper.iter().any(|k| k.len() > h.len() && is_subset(h, k)));
        maximal.fold(whole, |acc, m| intersect(&acc, m))
    }

    /// Direct product on pairs `(a, b) ↦ a * |H| + b`.
    pub fn product(&self, other: &OGroup) -> OGroup {
        let (n, m) = (self.n, other.n);
        let mut t = Vec::with_capacity(n * m * n * m);
        for x in 0..n * m {
            for y in 0..n * m {
                t.push(self.m(x / m, y / m) * m + other.m(x % m, y % m));
            }
        }
        OGroup::from_table(n * m, t)
    }
}

pub fn membership(n: usize, h: &Set) -> Vec<bool> {
    let mut v = vec![false; n];
    for &x in h {
        v[x] = true;
    }
    v
}

pub fn is_subset(a: &Set, b: &Set) -> bool {
    let inb: BTreeSet<&usize> = b.iter().collect();
    a.iter().all(|x| inb.contains(x))
}

pub fn intersect(a: &Set, b: &Set) -> Set {
    let inb: BTreeSet<&usize> = b.iter().collect();
    a.iter().copied().filter(|x| inb.contains(x)).collect()
}

/// Isomorphism by trying every bijection that fixes the identity, rejecting
/// a partial assignment as soon as an assigned product disagrees.
pub fn iso_by_permutations(a: &OGroup, b: &OGroup) -> bool {
    if a.n != b.n {
        return false;
    }
    let n = a.n;
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[a.e] = b.e;
    used[b.e] = true;
    let order: Vec<usize> = (0..n).filter(|&x| x != a.e).collect();
    fn consistent(a: &OGroup, b: &OGroup, map: &[usize]) -> bool {
        for x in 0..a.n {
            if map[x] == usize::MAX {
                continue;
            }
            for y in 0..a.n {
                if map[y] == usize::MAX {
                    continue;
                }
                let xy = map[a.m(x, y)];
                if xy != usize::MAX && xy != b.m(map[x], map[y]) {
                    return false;
                }
            }
        }
        true
    }
    fn go(a: &OGroup, b: &OGroup, order: &[usize], i: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if i == order.len() {
            return true;
        }
        let x = order[i];
        for y in 0..b.n {
            if used[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if consistent(a, b, map) && go(a, b, order, i + 1, map, used) {
                return true;
            }
            used[y] = false;
            map[x] = usize::MAX;
        }
        false
    }
    go(a, b, &order, 0, &mut map, &mut used)
}

/// Isomorphism by fixing a generating tuple of `a` and trying every tuple of
/// images in `b` with matching element orders, extending each partial choice
/// to the subgroup it generates.
pub fn iso_by_generators(a: &OGroup, b: &OGroup) -> bool {
    if a.n != b.n || a.histogram() != b.histogram() {
        return false;
    }
    let mut gens = Vec::new();
    let mut span = vec![a.e];
    let mut by_order: Vec<usize> = (0..a.n).collect();
    by_order.sort_by_key(|&x| std::cmp::Reverse(a.ord(x)));
    for x in by_order {
        if !span.contains(&x) {
            gens.push(x);
            span = a.span(&gens);
        }
    }
    fn extend(a: &OGroup, b: &OGroup, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; a.n];
        let mut hit = vec![false; b.n];
        map[a.e] = b.e;
        hit[b.e] = true;
        let mut queue = VecDeque::from([a.e]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(imgs) {
                let (y, fy) = (a.m(x, g), b.m(map[x], h));
                if map[y] == usize::MAX {
                    if hit[fy] {
                        return None;
                    }
                    map[y] = fy;
                    hit[fy] = true;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        Some(map)
    }
    fn go(a: &OGroup, b: &OGroup, gens: &[usize], imgs: &mut Vec<usize>) -> bool {
        if imgs.len() == gens.len() {
            return extend(a, b, gens, imgs).is_some_and(|m| m.iter().all(|&x| x != usize::MAX));
        }
        let want = a.ord(gens[imgs.len()]);
        for y in 0..b.n {
            if b.ord(y) != want {
                continue;
            }
            imgs.push(y);
            if extend(a, b, &gens[..imgs.len()], imgs).is_some() && go(a, b, gens, imgs) {
                return true;
            }
            imgs.pop();
        }
        false
    }
    go(a, b, &gens, &mut Vec::new())
}

/// Finite abelian groups are isomorphic exactly when their element-order
/// counts agree; otherwise fall back to the generator search.
pub fn isomorphic(a: &OGroup, b: &OGroup) -> bool {
    if a.n != b.n || a.histogram() != b.histogram() {
        return false;
    }
    match (a.is_abelian(), b.is_abelian()) {
        (true, true) => true,
        (false, false) => iso_by_generators(a, b),
        _ => false,
    }
}

/// Members of `items` whose group is isomorphic to no other member's.
fn unique_classes(items: &[(Set, OGroup)]) -> Vec<Set> {
    let mut buckets: BTreeMap<(usize, BTreeMap<usize, usize>, bool), Vec<usize>> = BTreeMap::new();
    for (i, (_, gh)) in items.iter().enumerate() {
        buckets.entry((gh.n, gh.histogram(), gh.is_abelian())).or_default().push(i);
    }
    let mut out = Vec::new();
    for ((_, _, abelian), idx) in buckets {
        for &i in &idx {
            let twin = idx.iter().any(|&j| j != i && (abelian || iso_by_generators(&items[i].1, &items[j].1)));
            if !twin {
                out.push(items[i].0.clone());
            }
        }
    }
    out.sort();
    out
}

/// Solitary subgroups: no other subgroup is isomorphic.
pub fn sol(g: &OGroup) -> Vec<Set> {
    sol_from(g, &g.subgroups())
}

pub fn sol_from(g: &OGroup, subgroups: &[Set]) -> Vec<Set> {
    let items: Vec<(Set, OGroup)> = subgroups.iter().map(|h| (h.clone(), g.restrict(h).0)).collect();
    unique_classes(&items)
}

/// Quotient-solitary subgroups: no other normal subgroup has an isomorphic quotient.
pub fn qsol(g: &OGroup) -> Vec<Set> {
    qsol_from(g, &g.normal_subgroups())
}

pub fn qsol_from(g: &OGroup, normals: &[Set]) -> Vec<Set> {
    let items: Vec<(Set, OGroup)> = normals.iter().map(|h| (h.clone(), g.quotient(h).0)).collect();
    unique_classes(&items)
}

/// Members of a library subgroup family as sorted element lists.
pub fn sets(family: &solqsol::SubgroupFamily) -> Vec<Set> {
    let mut v: Vec<Set> = family.iter().map(|h| h.elements()).collect();
    v.sort();
    v
}

/// `(p, partition)` from an `Ab(p:[...])` spec.
pub fn parse_abelian_p(spec: &str) -> Option<(u64, Vec<u32>)> {
    let inner = spec.strip_prefix("Ab(")?.strip_suffix("])")?;
    let (p, parts) = inner.split_once(":[")?;
    let parts = parts.split(',').map(|x| x.trim().parse().ok()).collect::<Option<Vec<u32>>>()?;
    Some((p.parse().ok()?, parts))
}

/// Per-prime partitions of a product of `Ab(...)` factors and `C1`.
pub fn abelian_parts(spec: &str) -> Vec<(u64, Vec<u32>)> {
    spec.split('x').filter(|s| *s != "C1").map(|s| parse_abelian_p(s).expect("Ab(p:[..]) factor")).collect()
}

//! Finite lattices: construction from order relations, lattice laws,
//! (anti-)isomorphism, products, divisor lattices and Hasse diagrams.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::group::Element;
use crate::subgroups::SubgroupFamily;
use crate::{Error, Result};

/// Lattices up to this size are checked against the modular and distributive
/// laws triple by triple; larger ones use the rank and join-prime criteria.
pub const BRUTE_FORCE_LIMIT: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeLabel {
    pub order: usize,
    pub members: Vec<Element>,
}

/// A finite lattice on nodes `0..size`.
///
/// Meets and joins are validated for every pair at construction and
/// recomputed on demand from the down- and up-sets.
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    size: usize,
    down: Vec<ElementSet>,
    up: Vec<ElementSet>,
    covers: Vec<(usize, usize)>,
    labels: Vec<NodeLabel>,
    /// Node indices are a linear extension of the order.
    sorted: bool,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Builds the lattice of `size` nodes ordered by `leq`, failing if the
    /// relation is not a partial order or some pair lacks a unique meet or join.
    pub fn from_order(size: usize, leq: impl Fn(usize, usize) -> bool, labels: Vec<NodeLabel>) -> Result<FiniteLattice> {
        if size == 0 {
            return Err(Error::InvalidParameter("a lattice needs at least one node".into()));
        }
        let mut down = vec![ElementSet::empty(size); size];
        let mut up = vec![ElementSet::empty(size); size];
        #[allow(clippy::needless_range_loop)]
        for a in 0..size {
            for b in 0..size {
                if leq(a, b) {
                    down[b].insert(a);
                    up[a].insert(b);
                }
            }
        }
        for a in 0..size {
            if !down[a].contains(a) {
                return Err(Error::InvalidParameter(format!("relation is not reflexive at {a}")));
            }
            for b in up[a].iter() {
                if b != a && up[b].contains(a) {
                    return Err(Error::InvalidParameter(format!("relation is not antisymmetric at ({a}, {b})")));
                }
                if !up[b].is_subset(&up[a]) {
                    return Err(Error::InvalidParameter(format!("relation is not transitive through {b}")));
                }
            }
        }
        let sorted = (0..size).all(|a| up[a].iter().all(|b| b >= a));
        let labels = if labels.len() == size {
            labels
        } else {
            (0..size).map(|i| NodeLabel { order: down[i].len(), members: Vec::new() }).collect()
        };
        let mut lattice = FiniteLattice {
            size,
            down,
            up,
            covers: Vec::new(),
            labels,
            sorted,
            bottom: 0,
            top: 0,
        };
        lattice.bottom = (0..size)
            .find(|&a| lattice.up[a].len() == size)
            .ok_or(Error::NotALattice { a: 0, b: 0, bound: "bottom" })?;
        lattice.top = (0..size)
            .find(|&a| lattice.down[a].len() == size)
            .ok_or(Error::NotALattice { a: 0, b: 0, bound: "top" })?;
        for a in 0..size {
            for b in a + 1..size {
                if lattice.try_meet(a, b).is_none() {
                    return Err(Error::NotALattice { a, b, bound: "meet" });
                }
                if lattice.try_join(a, b).is_none() {
                    return Err(Error::NotALattice { a, b, bound: "join" });
                }
            }
        }
        let mut covers = Vec::new();
        for a in 0..size {
            for b in lattice.up[a].iter() {
                if b != a && lattice.up[a].intersection(&lattice.down[b]).len() == 2 {
                    covers.push((a, b));
                }
            }
        }
        lattice.covers = covers;
        Ok(lattice)
    }

    /// Node `i` is the `i`-th member of the family; order is inclusion.
    pub fn from_subgroup_family(family: &SubgroupFamily) -> Result<FiniteLattice> {
        let members = family.as_slice();
        let labels = members
            .iter()
            .map(|h| NodeLabel { order: h.order(), members: h.elements() })
            .collect();
        Self::from_order(members.len(), |a, b| members[a].is_subgroup_of(&members[b]), labels)
    }

    fn greatest_in(&self, set: &ElementSet) -> Option<usize> {
        let candidate = if self.sorted {
            set.iter().last()?
        } else {
            set.iter().max_by_key(|&m| self.down[m].len())?
        };
        (self.down[candidate] == *set).then_some(candidate)
    }

    fn least_in(&self, set: &ElementSet) -> Option<usize> {
        let candidate = if self.sorted {
            set.first()?
        } else {
            set.iter().max_by_key(|&m| self.up[m].len())?
        };
        (self.up[candidate] == *set).then_some(candidate)
    }

    fn try_meet(&self, a: usize, b: usize) -> Option<usize> {
        self.greatest_in(&self.down[a].intersection(&self.down[b]))
    }

    fn try_join(&self, a: usize, b: usize) -> Option<usize> {
        self.least_in(&self.up[a].intersection(&self.up[b]))
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.try_meet(a, b).expect("validated at construction")
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.try_join(a, b).expect("validated at construction")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn labels(&self) -> &[NodeLabel] {
        &self.labels
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// The order dual: same nodes, reversed order.
    pub fn dual(&self) -> FiniteLattice {
        let labels = self.labels.clone();
        Self::from_order(self.size, |a, b| self.leq(b, a), labels).expect("dual of a lattice is a lattice")
    }

    pub fn is_chain(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// Number of cover edges of a chain (`size - 1`).
    pub fn chain_length(&self) -> Result<usize> {
        if self.is_chain() {
            Ok(self.size - 1)
        } else {
            Err(Error::NotAChain)
        }
    }

    /// Longest chain from the bottom to each node.
    pub fn heights(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&a| self.down[a].len());
        let mut lower: Vec<Vec<usize>> = vec![Vec::new(); self.size];
        for &(lo, hi) in &self.covers {
            lower[hi].push(lo);
        }
        let mut height = vec![0; self.size];
        for &b in &order {
            height[b] = lower[b].iter().map(|&lo| height[lo] + 1).max().unwrap_or(0);
        }
        height
    }

    pub fn is_modular(&self) -> bool {
        if self.size <= BRUTE_FORCE_LIMIT {
            self.is_modular_brute()
        } else {
            self.is_modular_by_rank()
        }
    }

    pub fn is_distributive(&self) -> bool {
        if self.size <= BRUTE_FORCE_LIMIT {
            self.is_distributive_brute()
        } else {
            self.is_distributive_by_join_primes()
        }
    }

    /// `a ≤ c ⇒ a ∨ (b ∧ c) = (a ∨ b) ∧ c` for all triples.
    pub fn is_modular_brute(&self) -> bool {
        (0..self.size).all(|a| {
            self.up[a].iter().all(|c| {
                (0..self.size).all(|b| self.join(a, self.meet(b, c)) == self.meet(self.join(a, b), c))
            })
        })
    }

    /// Graded, with `h(a) + h(b) = h(a ∧ b) + h(a ∨ b)` for all pairs.
    pub fn is_modular_by_rank(&self) -> bool {
        let h = self.heights();
        if self.covers.iter().any(|&(lo, hi)| h[hi] != h[lo] + 1) {
            return false;
        }
        (0..self.size).all(|a| (a + 1..self.size).all(|b| h[a] + h[b] == h[self.meet(a, b)] + h[self.join(a, b)]))
    }

    /// `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` for all triples.
    pub fn is_distributive_brute(&self) -> bool {
        (0..self.size).all(|a| {
            (0..self.size).all(|b| {
                (0..self.size).all(|c| self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c)))
            })
        })
    }

    /// Every join-irreducible is join-prime: the join-irreducibles below
    /// `a ∨ b` are exactly those below `a` or below `b`.
    pub fn is_distributive_by_join_primes(&self) -> bool {
        let mut lower = vec![0; self.size];
        for &(_, hi) in &self.covers {
            lower[hi] += 1;
        }
        let irreducibles: Vec<usize> = (0..self.size).filter(|&j| lower[j] == 1).collect();
        let below: Vec<ElementSet> = (0..self.size)
            .map(|x| {
                ElementSet::from_indices(
                    irreducibles.len(),
                    irreducibles.iter().enumerate().filter(|&(_, &j)| self.leq(j, x)).map(|(i, _)| i),
                )
            })
            .collect();
        (0..self.size).all(|a| (a + 1..self.size).all(|b| below[self.join(a, b)] == below[a].union(&below[b])))
    }

    fn node_signatures(&self) -> Vec<(usize, usize, usize, usize, usize)> {
        let heights = self.heights();
        let mut lower = vec![0; self.size];
        let mut upper = vec![0; self.size];
        for &(lo, hi) in &self.covers {
            upper[lo] += 1;
            lower[hi] += 1;
        }
        (0..self.size)
            .map(|a| (heights[a], self.down[a].len(), self.up[a].len(), lower[a], upper[a]))
            .collect()
    }

    /// An order isomorphism `self -> other` as a node map, if one exists.
    pub fn find_isomorphism(&self, other: &FiniteLattice) -> Option<Vec<usize>> {
        if self.size != other.size || self.covers.len() != other.covers.len() {
            return None;
        }
        let sig1 = self.node_signatures();
        let sig2 = other.node_signatures();
        let mut s1 = sig1.clone();
        let mut s2 = sig2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return None;
        }
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&a| self.down[a].len());
        let mut map = vec![usize::MAX; self.size];
        let mut used = vec![false; other.size];
        if self.extend_isomorphism(other, &order, 0, &sig1, &sig2, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_isomorphism(
        &self,
        other: &FiniteLattice,
        order: &[usize],
        depth: usize,
        sig1: &[(usize, usize, usize, usize, usize)],
        sig2: &[(usize, usize, usize, usize, usize)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&a) = order.get(depth) else {
            return true;
        };
        for b in 0..other.size {
            if used[b] || sig1[a] != sig2[b] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&prev| {
                let fb = map[prev];
                self.leq(prev, a) == other.leq(fb, b) && self.leq(a, prev) == other.leq(b, fb)
            });
            if !consistent {
                continue;
            }
            map[a] = b;
            used[b] = true;
            if self.extend_isomorphism(other, order, depth + 1, sig1, sig2, map, used) {
                return true;
            }
            used[b] = false;
            map[a] = usize::MAX;
        }
        false
    }

    #[must_use]
    pub fn summary(&self) -> LatticeSummary {
        LatticeSummary {
            node_count: self.size,
            edge_count: self.covers.len(),
            is_chain: self.is_chain(),
            is_modular: self.is_modular(),
            is_distributive: self.is_distributive(),
        }
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            nodes: self
                .labels
                .iter()
                .enumerate()
                .map(|(id, l)| LatticeJsonNode { id, order: l.order, members: l.members.clone() })
                .collect(),
            covers: self.covers.iter().map(|&(lo, hi)| [lo, hi]).collect(),
        }
    }

    /// Graphviz digraph of the Hasse diagram, edges from lower to upper cover,
    /// nodes of equal label order on the same rank.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, l) in self.labels.iter().enumerate() {
            let members: Vec<String> = l.members.iter().map(|m| m.to_string()).collect();
            let _ = writeln!(out, "  n{i} [label=\"{} {{{}}}\"];", l.order, members.join(","));
        }
        let mut ranks: Vec<usize> = self.labels.iter().map(|l| l.order).collect();
        ranks.sort_unstable();
        ranks.dedup();
        for r in ranks {
            let same: Vec<String> = (0..self.size)
                .filter(|&i| self.labels[i].order == r)
                .map(|i| format!("n{i};"))
                .collect();
            if same.len() > 1 {
                let _ = writeln!(out, "  {{ rank=same; {} }}", same.join(" "));
            }
        }
        for &(lo, hi) in &self.covers {
            let _ = writeln!(out, "  n{lo} -> n{hi};");
        }
        out.push_str("}\n");
        out
    }
}

/// Node and cover-edge counts plus lattice-law flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeSummary {
    pub node_count: usize,
    pub edge_count: usize,
    pub is_chain: bool,
    pub is_modular: bool,
    pub is_distributive: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeJsonNode {
    pub id: usize,
    pub order: usize,
    pub members: Vec<Element>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeJson {
    pub nodes: Vec<LatticeJsonNode>,
    pub covers: Vec<[usize; 2]>,
}

pub fn lattice_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    a.find_isomorphism(b).is_some()
}

pub fn lattice_anti_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    a.find_isomorphism(&b.dual()).is_some()
}

/// Componentwise order on pairs; node `(i, j)` has index `i * |b| + j`.
pub fn product_lattice(a: &FiniteLattice, b: &FiniteLattice) -> FiniteLattice {
    let m = b.size;
    let labels = (0..a.size * m)
        .map(|k| NodeLabel {
            order: a.labels[k / m].order * b.labels[k % m].order,
            members: Vec::new(),
        })
        .collect();
    FiniteLattice::from_order(
        a.size * m,
        |x, y| a.leq(x / m, y / m) && b.leq(x % m, y % m),
        labels,
    )
    .expect("product of lattices is a lattice")
}

/// The divisibility order on a divisor-closed set of positive integers.
pub fn divisor_lattice(orders: &[u64]) -> Result<FiniteLattice> {
    let mut values: Vec<u64> = orders.to_vec();
    values.sort_unstable();
    values.dedup();
    if values.first() != Some(&1) {
        return Err(Error::NotDivisorClosed(1));
    }
    for &v in &values {
        if v == 0 {
            return Err(Error::InvalidParameter("0 is not a positive integer".into()));
        }
        for d in crate::arith::divisors(v) {
            if values.binary_search(&d).is_err() {
                return Err(Error::NotDivisorClosed(d));
            }
        }
    }
    let labels = values
        .iter()
        .map(|&v| NodeLabel { order: v as usize, members: Vec::new() })
        .collect();
    FiniteLattice::from_order(values.len(), |a, b| values[b].is_multiple_of(values[a]), labels)
}

/// A `k`-node chain `0 < 1 < ... < k-1`.
pub fn chain(k: usize) -> FiniteLattice {
    FiniteLattice::from_order(k, |a, b| a <= b, Vec::new()).expect("chains are lattices")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 0 < a, b, c < 1 with a, b, c pairwise incomparable.
    fn diamond() -> FiniteLattice {
        FiniteLattice::from_order(5, |x, y| x == y || x == 0 || y == 4, Vec::new()).unwrap()
    }

    /// 0 < a < c < 1, 0 < b < 1.
    fn pentagon() -> FiniteLattice {
        let rel = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 4), (3, 4)];
        FiniteLattice::from_order(5, |x, y| x == y || rel.contains(&(x, y)), Vec::new()).unwrap()
    }

    #[test]
    fn chains() {
        let c3 = chain(3);
        assert!(c3.is_chain());
        assert_eq!(c3.chain_length().unwrap(), 2);
        assert_eq!(chain(1).chain_length().unwrap(), 0);
        assert!(c3.is_distributive() && c3.is_modular());
        assert_eq!(diamond().chain_length(), Err(Error::NotAChain));
    }

    #[test]
    fn laws_on_small_witnesses() {
        let m3 = diamond();
        assert!(m3.is_modular());
        assert!(!m3.is_distributive());
        assert!(m3.is_modular_by_rank());
        assert!(!m3.is_distributive_by_join_primes());
        let n5 = pentagon();
        assert!(!n5.is_modular());
        assert!(!n5.is_modular_by_rank());
        assert!(!n5.is_distributive());
        assert!(!n5.is_distributive_by_join_primes());
    }

    #[test]
    fn rejects_non_lattices() {
        // Two incomparable maximal elements: no top.
        assert!(matches!(
            FiniteLattice::from_order(3, |x, y| x == y || x == 0, Vec::new()),
            Err(Error::NotALattice { bound: "top", .. })
        ));
        // 0 < a, b < c, d < 1: a and b have two minimal upper bounds.
        let rel = [
            (0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
            (1, 3), (1, 4), (2, 3), (2, 4),
            (1, 5), (2, 5), (3, 5), (4, 5),
        ];
        assert!(matches!(
            FiniteLattice::from_order(6, |x, y| x == y || rel.contains(&(x, y)), Vec::new()),
            Err(Error::NotALattice { a: 1, b: 2, bound: "join" })
        ));
    }

    #[test]
    fn isomorphism_and_duality() {
        assert!(lattice_isomorphic(&chain(3), &chain(3)));
        assert!(!lattice_isomorphic(&chain(3), &diamond()));
        assert!(lattice_anti_isomorphic(&chain(4), &chain(4)));
        assert!(lattice_anti_isomorphic(&diamond(), &diamond()));
        let p = pentagon();
        assert!(lattice_anti_isomorphic(&p, &p));
        // A 4-chain whose node indices are not in increasing order.
        let rel = [(0, 1), (1, 2), (0, 2), (0, 3), (3, 2), (1, 3)];
        let l = FiniteLattice::from_order(4, |x, y| x == y || rel.contains(&(x, y)), Vec::new()).unwrap();
        assert!(lattice_isomorphic(&l, &chain(4)));
    }

    #[test]
    fn products() {
        let square = product_lattice(&chain(2), &chain(2));
        assert_eq!(square.size(), 4);
        assert!(!square.is_chain());
        assert!(square.is_distributive());
        let one = chain(1);
        assert!(lattice_isomorphic(&product_lattice(&diamond(), &one), &diamond()));
    }

    #[test]
    fn divisor_lattices() {
        let l = divisor_lattice(&[1, 2, 4]).unwrap();
        assert_eq!(l.chain_length().unwrap(), 2);
        assert_eq!(divisor_lattice(&[1]).unwrap().size(), 1);
        let six = divisor_lattice(&[1, 2, 3, 6]).unwrap();
        assert!(lattice_isomorphic(&six, &product_lattice(&chain(2), &chain(2))));
        assert_eq!(divisor_lattice(&[1, 4]).unwrap_err(), Error::NotDivisorClosed(2));
        assert_eq!(divisor_lattice(&[2]).unwrap_err(), Error::NotDivisorClosed(1));
    }

    #[test]
    fn normal_subgroups_of_d8() {
        let g = crate::group::Group::dihedral(8).unwrap();
        let n = FiniteLattice::from_subgroup_family(crate::subgroups::normal_subgroups(&g).unwrap()).unwrap();
        let s = n.summary();
        assert_eq!((s.node_count, s.edge_count), (6, 7));
        assert!(s.is_modular && !s.is_distributive && !s.is_chain);
    }

    #[test]
    fn dot_output() {
        let dot = chain(3).to_dot();
        assert_eq!(dot.matches("->").count(), 2);
        let single = chain(1).to_dot();
        assert_eq!(single.matches("->").count(), 0);
        assert_eq!(single.matches("[label=").count(), 1);
    }
}

//! Subgroup enumeration and the named subgroups and series of a group.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::arith::{factorize, prime_of_power};
use crate::bitset::ElementSet;
use crate::group::{Element, Group};
use crate::iso::subgroup_abstract_group;
use crate::limits::check_order;
use crate::{Error, Result};

/// A subgroup of some parent group, stored as a membership bitset.
///
/// Subgroups carry no reference to their parent; every operation takes the
/// parent explicitly. Equality is bitset equality, and the total order is
/// `(order, members)` ascending.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: ElementSet,
    order: usize,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.order, self.members)
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    pub(crate) fn from_set_unchecked(members: ElementSet) -> Subgroup {
        let order = members.len();
        Subgroup { members, order }
    }

    /// Validates that `elements` form a subgroup of `group`.
    pub fn from_elements(group: &Group, elements: impl IntoIterator<Item = Element>) -> Result<Subgroup> {
        let mut set = ElementSet::empty(group.order());
        for e in elements {
            if e >= group.order() {
                return Err(Error::NotASubgroup(format!("element {e} out of range")));
            }
            set.insert(e);
        }
        let sub = Subgroup::from_set_unchecked(set);
        sub.check_in(group)?;
        Ok(sub)
    }

    pub fn trivial(group: &Group) -> Subgroup {
        Subgroup::from_set_unchecked(ElementSet::from_indices(group.order(), [group.identity()]))
    }

    pub fn whole(group: &Group) -> Subgroup {
        Subgroup::from_set_unchecked(ElementSet::full(group.order()))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn elements(&self) -> Vec<Element> {
        self.members.to_vec()
    }

    pub fn contains(&self, g: Element) -> bool {
        self.members.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_set_unchecked(self.members.intersection(&other.members))
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_whole(&self, group: &Group) -> bool {
        self.order == group.order()
    }

    /// Checks closure under products and inverses inside `group`.
    pub fn check_in(&self, group: &Group) -> Result<()> {
        if self.members.universe() != group.order() {
            return Err(Error::NotASubgroup(format!(
                "bitset universe {} does not match group order {}",
                self.members.universe(),
                group.order()
            )));
        }
        if !self.contains(group.identity()) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        let elems = self.elements();
        for &a in &elems {
            if !self.contains(group.inv(a)) {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &elems {
                if !self.contains(group.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        Ok(())
    }

    /// Image under an element map (e.g. an automorphism or an inclusion).
    pub fn map(&self, images: &[Element], target_order: usize) -> Subgroup {
        Subgroup::from_set_unchecked(ElementSet::from_indices(
            target_order,
            self.members.iter().map(|g| images[g]),
        ))
    }
}

/// A duplicate-free list of subgroups of one group, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SubgroupFamily {
    members: Vec<Subgroup>,
}

impl SubgroupFamily {
    pub fn new(members: impl IntoIterator<Item = Subgroup>) -> SubgroupFamily {
        let mut members: Vec<Subgroup> = members.into_iter().collect();
        members.sort();
        members.dedup();
        SubgroupFamily { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subgroup> {
        self.members.iter()
    }

    pub fn as_slice(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn contains(&self, h: &Subgroup) -> bool {
        self.members.binary_search(h).is_ok()
    }

    pub fn position(&self, h: &Subgroup) -> Option<usize> {
        self.members.binary_search(h).ok()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.members.iter().map(Subgroup::order).collect()
    }

    pub fn is_subset_of(&self, other: &SubgroupFamily) -> bool {
        self.members.iter().all(|h| other.contains(h))
    }

    pub fn filter(&self, mut keep: impl FnMut(&Subgroup) -> bool) -> SubgroupFamily {
        SubgroupFamily {
            members: self.members.iter().filter(|h| keep(h)).cloned().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a SubgroupFamily {
    type Item = &'a Subgroup;
    type IntoIter = std::slice::Iter<'a, Subgroup>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl FromIterator<Subgroup> for SubgroupFamily {
    fn from_iter<I: IntoIterator<Item = Subgroup>>(iter: I) -> Self {
        SubgroupFamily::new(iter)
    }
}

/// Elements reachable from the identity by right multiplication with `gens`.
fn generate(group: &Group, gens: &[Element]) -> ElementSet {
    let mut set = ElementSet::empty(group.order());
    set.insert(group.identity());
    let mut queue = vec![group.identity()];
    while let Some(x) = queue.pop() {
        for &s in gens {
            let y = group.mul(x, s);
            if set.insert(y) {
                queue.push(y);
            }
        }
    }
    set
}

/// The smallest subgroup containing `seed`.
pub fn closure(group: &Group, seed: impl IntoIterator<Item = Element>) -> Subgroup {
    let gens: Vec<Element> = seed.into_iter().collect();
    Subgroup::from_set_unchecked(generate(group, &gens))
}

/// A short generating sequence, built greedily: each step adds the element
/// that enlarges the generated subgroup most, lowest index first on ties.
pub fn generators(group: &Group) -> &[Element] {
    group.memo.generators.get_or_init(|| {
        let mut gens = Vec::new();
        let mut current = generate(group, &gens);
        while current.len() < group.order() {
            let mut best: Option<(usize, Element, ElementSet)> = None;
            for g in group.elements() {
                if current.contains(g) {
                    continue;
                }
                gens.push(g);
                let span = generate(group, &gens);
                gens.pop();
                if best.as_ref().is_none_or(|(size, _, _)| span.len() > *size) {
                    best = Some((span.len(), g, span));
                }
            }
            let (_, g, span) = best.expect("proper subgroup has a non-member");
            gens.push(g);
            current = span;
        }
        gens
    })
}

/// Every subgroup of `group`, sorted by `(order, members)`.
///
/// Starts from the cyclic subgroups and repeatedly joins each newly found
/// subgroup with every cyclic subgroup until no new subgroup appears.
pub fn all_subgroups(group: &Group) -> Result<&SubgroupFamily> {
    check_order(group.order())?;
    Ok(group.memo.subgroups.get_or_init(|| enumerate_subgroups(group)))
}

fn enumerate_subgroups(group: &Group) -> SubgroupFamily {
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut found: Vec<(ElementSet, Vec<Element>)> = Vec::new();
    let mut cyclic_gens: Vec<Element> = Vec::new();
    for g in group.elements() {
        let set = generate(group, &[g]);
        if seen.insert(set.clone()) {
            cyclic_gens.push(g);
            found.push((set, vec![g]));
        }
    }
    let mut frontier: Vec<usize> = (0..found.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for idx in frontier {
            for &c in &cyclic_gens {
                if found[idx].0.contains(c) {
                    continue;
                }
                let mut gens = found[idx].1.clone();
                gens.push(c);
                let set = generate(group, &gens);
                if seen.insert(set.clone()) {
                    next.push(found.len());
                    found.push((set, gens));
                }
            }
        }
        frontier = next;
    }
    SubgroupFamily::new(found.into_iter().map(|(s, _)| Subgroup::from_set_unchecked(s)))
}

fn is_normal_unchecked(group: &Group, h: &Subgroup) -> Option<(Element, Element)> {
    for &s in generators(group) {
        for x in h.members().iter() {
            if !h.contains(group.conjugate(s, x)) {
                return Some((s, x));
            }
        }
    }
    None
}

pub fn is_normal(group: &Group, h: &Subgroup) -> Result<bool> {
    h.check_in(group)?;
    Ok(is_normal_unchecked(group, h).is_none())
}

/// Fails with [`Error::NotNormal`] naming a conjugation that leaves `h`.
pub fn require_normal(group: &Group, h: &Subgroup) -> Result<()> {
    h.check_in(group)?;
    match is_normal_unchecked(group, h) {
        Some((g, x)) => Err(Error::NotNormal { g, h: x }),
        None => Ok(()),
    }
}

pub fn normal_subgroups(group: &Group) -> Result<&SubgroupFamily> {
    let all = all_subgroups(group)?;
    Ok(group
        .memo
        .normal
        .get_or_init(|| all.filter(|h| is_normal_unchecked(group, h).is_none())))
}

pub fn center(group: &Group) -> Subgroup {
    let gens = generators(group);
    Subgroup::from_set_unchecked(ElementSet::from_indices(
        group.order(),
        group
            .elements()
            .filter(|&g| gens.iter().all(|&s| group.mul(g, s) == group.mul(s, g))),
    ))
}

pub fn derived_subgroup(group: &Group) -> Subgroup {
    let mut commutators = ElementSet::empty(group.order());
    for a in group.elements() {
        for b in group.elements() {
            commutators.insert(group.commutator(a, b));
        }
    }
    closure(group, commutators.iter())
}

/// Proper subgroups not contained in any other proper subgroup.
pub fn maximal_subgroups(group: &Group) -> Result<SubgroupFamily> {
    let all = all_subgroups(group)?;
    let proper: Vec<&Subgroup> = all.iter().filter(|h| !h.is_whole(group)).collect();
    Ok(proper
        .iter()
        .filter(|h| {
            !proper
                .iter()
                .any(|k| k.order() > h.order() && h.is_subgroup_of(k))
        })
        .map(|h| (*h).clone())
        .collect())
}

/// Intersection of the maximal subgroups; the whole group when there are none.
pub fn frattini(group: &Group) -> Result<Subgroup> {
    let maximal = maximal_subgroups(group)?;
    let mut set = ElementSet::full(group.order());
    for m in &maximal {
        set.intersect_with(m.members());
    }
    Ok(Subgroup::from_set_unchecked(set))
}

/// `[G, Φ(G), Φ(Φ(G)), ..., 1]`, each term computed inside the abstract group
/// of the previous one and mapped back into `group`.
pub fn frattini_series(group: &Group) -> Result<Vec<Subgroup>> {
    let mut series = vec![Subgroup::whole(group)];
    loop {
        let current = series.last().expect("non-empty");
        if current.is_trivial() {
            break;
        }
        let (abstract_group, inclusion) = subgroup_abstract_group(group, current)?;
        let phi = frattini(&abstract_group)?;
        series.push(phi.map(&inclusion, group.order()));
    }
    Ok(series)
}

/// The prime of an abelian p-group; `None` for the trivial group.
fn abelian_p_prime(group: &Group) -> Result<Option<u64>> {
    if !group.is_abelian() {
        return Err(Error::NotAbelianPGroup(format!("{} is not abelian", group.label())));
    }
    if group.order() == 1 {
        return Ok(None);
    }
    prime_of_power(group.order() as u64)
        .map(Some)
        .ok_or_else(|| Error::NotAbelianPGroup(format!("order {} is not a prime power", group.order())))
}

/// `Ω_n(G)`: generated by the elements of order dividing `p^n`.
pub fn omega(group: &Group, n: u32) -> Result<Subgroup> {
    let Some(p) = abelian_p_prime(group)? else {
        return Ok(Subgroup::whole(group));
    };
    let bound = p.pow(n);
    let orders = group.element_orders();
    Ok(closure(group, group.elements().filter(|&g| bound % orders[g] == 0)))
}

/// `[Ω_0, Ω_1, ..., G]`, ascending.
pub fn omega_series(group: &Group) -> Result<Vec<Subgroup>> {
    abelian_p_prime(group)?;
    let mut series = vec![Subgroup::trivial(group)];
    let mut n = 0;
    while !series.last().expect("non-empty").is_whole(group) {
        n += 1;
        series.push(omega(group, n)?);
    }
    Ok(series)
}

/// One Sylow subgroup per prime divisor of `|G|` (ascending primes), each the
/// set of elements of p-power order.
pub fn sylow_decomposition(group: &Group) -> Result<Vec<Subgroup>> {
    let orders = group.element_orders();
    let mut parts = Vec::new();
    for (p, a) in factorize(group.order() as u64) {
        let set = ElementSet::from_indices(
            group.order(),
            group
                .elements()
                .filter(|&g| prime_of_power(orders[g]) == Some(p) || orders[g] == 1),
        );
        let candidate = Subgroup::from_set_unchecked(set);
        if candidate.order() == p.pow(a) as usize && candidate.check_in(group).is_ok() {
            parts.push(candidate);
        } else {
            let target = p.pow(a) as usize;
            let sylow = all_subgroups(group)?
                .iter()
                .find(|h| h.order() == target)
                .map(Subgroup::elements)
                .unwrap_or_default();
            return Err(Error::NotNilpotent { prime: p, sylow });
        }
    }
    Ok(parts)
}

pub fn is_nilpotent(group: &Group) -> bool {
    match sylow_decomposition(group) {
        Ok(_) => true,
        Err(Error::NotNilpotent { .. }) => false,
        // Only reachable past the order cap, which nothing constructs.
        Err(_) => false,
    }
}

pub fn is_cyclic(group: &Group) -> bool {
    group.element_orders().iter().any(|&o| o as usize == group.order())
}

/// Abelian of prime exponent; the trivial group counts.
pub fn is_elementary_abelian(group: &Group) -> bool {
    group.order() == 1 || (group.is_abelian() && crate::arith::is_prime(group.exponent()))
}

pub fn is_perfect(group: &Group) -> bool {
    derived_subgroup(group).is_whole(group)
}

/// Nonabelian with every subgroup normal.
pub fn is_hamiltonian(group: &Group) -> Result<bool> {
    if group.is_abelian() {
        return Ok(false);
    }
    Ok(normal_subgroups(group)?.len() == all_subgroups(group)?.len())
}

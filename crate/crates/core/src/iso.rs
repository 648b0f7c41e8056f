//! Isomorphism testing, automorphisms and characteristic subgroups.
//!
//! Isomorphisms are found by backtracking over the images of a short
//! generating sequence of the source group. A partial assignment is extended
//! breadth-first to the subgroup generated so far; any clash (two images for
//! one element, or one image for two elements) prunes the branch. Candidate
//! images are restricted to elements of the same order and centralizer size.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::group::{Element, Group, OrderHistogram};
use crate::limits::{max_aut_order, MAX_LISTED_AUTOMORPHISMS};
use crate::subgroups::{all_subgroups, center, derived_subgroup, generators, Subgroup, SubgroupFamily};
use crate::{Error, Result};

/// Isomorphism invariants used as a prescreen. Equal for isomorphic groups;
/// the converse does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    pub exponent: u64,
    pub histogram: OrderHistogram,
    pub center_order: usize,
    pub derived_order: usize,
    /// Conjugacy class sizes, ascending.
    pub class_sizes: Vec<usize>,
}

impl Fingerprint {
    /// FNV-1a over the canonical rendering; stable across runs and platforms.
    pub fn stable_hash(&self) -> u64 {
        let text = format!(
            "{}|{}|{}|{:?}|{}|{}|{:?}",
            self.order,
            self.abelian,
            self.exponent,
            self.histogram.0,
            self.center_order,
            self.derived_order,
            self.class_sizes
        );
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for byte in text.bytes() {
            hash ^= u64::from(byte);
            hash = hash.wrapping_mul(0x0100_0000_01b3);
        }
        hash
    }
}

/// Conjugacy classes as orbits under conjugation by the generators.
pub fn conjugacy_classes(group: &Group) -> Vec<Vec<Element>> {
    let gens = generators(group);
    let mut seen = ElementSet::empty(group.order());
    let mut classes = Vec::new();
    for x in group.elements() {
        if seen.contains(x) {
            continue;
        }
        seen.insert(x);
        let mut class = vec![x];
        let mut i = 0;
        while i < class.len() {
            let y = class[i];
            for &s in gens {
                let z = group.conjugate(s, y);
                if seen.insert(z) {
                    class.push(z);
                }
            }
            i += 1;
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// `|C_G(g)|` for every element.
pub fn centralizer_sizes(group: &Group) -> &[usize] {
    group.memo.centralizer_sizes.get_or_init(|| {
        let mut sizes = vec![0; group.order()];
        for class in conjugacy_classes(group) {
            for &g in &class {
                sizes[g] = group.order() / class.len();
            }
        }
        sizes
    })
}

pub fn fingerprint(group: &Group) -> &Fingerprint {
    group.memo.fingerprint.get_or_init(|| {
        let mut class_sizes: Vec<usize> = conjugacy_classes(group).iter().map(Vec::len).collect();
        class_sizes.sort_unstable();
        Fingerprint {
            order: group.order(),
            abelian: group.is_abelian(),
            exponent: group.exponent(),
            histogram: group.order_histogram(),
            center_order: center(group).order(),
            derived_order: derived_subgroup(group).order(),
            class_sizes,
        }
    })
}

/// An explicit element bijection between two groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IsoMap {
    images: Vec<Element>,
}

impl IsoMap {
    pub fn new(images: Vec<Element>) -> IsoMap {
        IsoMap { images }
    }

    pub fn identity(order: usize) -> IsoMap {
        IsoMap { images: (0..order).collect() }
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, g: Element) -> Element {
        self.images[g]
    }

    pub fn inverse(&self) -> IsoMap {
        let mut inv = vec![0; self.images.len()];
        for (g, &h) in self.images.iter().enumerate() {
            inv[h] = g;
        }
        IsoMap { images: inv }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &IsoMap) -> IsoMap {
        IsoMap {
            images: first.images.iter().map(|&g| self.images[g]).collect(),
        }
    }

    /// Bijective, and `f(gh) = f(g) f(h)` on all pairs.
    pub fn is_isomorphism(&self, source: &Group, target: &Group) -> bool {
        if self.images.len() != source.order() || source.order() != target.order() {
            return false;
        }
        let mut hit = vec![false; target.order()];
        for &h in &self.images {
            if h >= target.order() || std::mem::replace(&mut hit[h], true) {
                return false;
            }
        }
        source.elements().all(|a| {
            source
                .elements()
                .all(|b| self.images[source.mul(a, b)] == target.mul(self.images[a], self.images[b]))
        })
    }
}

struct Search<'a> {
    source: &'a Group,
    target: &'a Group,
    gens: &'a [Element],
    images: Vec<Element>,
}

impl Search<'_> {
    /// Extends the current generator images to a map on the subgroup they
    /// generate. `None` if that map is not an injective homomorphism.
    fn extend(&self) -> Option<Vec<Element>> {
        let (src, dst) = (self.source, self.target);
        let k = self.images.len();
        let mut map = vec![usize::MAX; src.order()];
        let mut used = vec![false; dst.order()];
        map[src.identity()] = dst.identity();
        used[dst.identity()] = true;
        let mut queue = vec![src.identity()];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for j in 0..k {
                let y = src.mul(x, self.gens[j]);
                let y_img = dst.mul(map[x], self.images[j]);
                if map[y] == usize::MAX {
                    if used[y_img] {
                        return None;
                    }
                    map[y] = y_img;
                    used[y_img] = true;
                    queue.push(y);
                } else if map[y] != y_img {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Depth-first over `candidates[depth]`; `visit` returns `false` to stop.
    fn run(&mut self, candidates: &[Vec<Element>], visit: &mut dyn FnMut(Vec<Element>) -> bool) -> bool {
        let depth = self.images.len();
        if depth == self.gens.len() {
            let map = self.extend().expect("checked at the previous level");
            return visit(map);
        }
        for &c in &candidates[depth] {
            self.images.push(c);
            if self.extend().is_some() && !self.run(candidates, visit) {
                self.images.pop();
                return false;
            }
            self.images.pop();
        }
        true
    }
}

/// Targets with the same element order and centralizer size as each generator.
fn base_candidates(source: &Group, target: &Group, gens: &[Element]) -> Vec<Vec<Element>> {
    let (so, to) = (source.element_orders(), target.element_orders());
    let (sc, tc) = (centralizer_sizes(source), centralizer_sizes(target));
    gens.iter()
        .map(|&g| {
            target
                .elements()
                .filter(|&h| to[h] == so[g] && tc[h] == sc[g])
                .collect()
        })
        .collect()
}

fn search_maps(
    source: &Group,
    target: &Group,
    candidates: &[Vec<Element>],
    visit: &mut dyn FnMut(Vec<Element>) -> bool,
) {
    let gens = generators(source);
    let mut search = Search {
        source,
        target,
        gens,
        images: Vec::with_capacity(gens.len()),
    };
    search.run(candidates, visit);
}

/// A witnessing isomorphism `g -> h`, or `None` if the groups are not isomorphic.
pub fn are_isomorphic(g: &Group, h: &Group) -> Option<IsoMap> {
    if fingerprint(g) != fingerprint(h) {
        return None;
    }
    let candidates = base_candidates(g, h, generators(g));
    let mut found = None;
    search_maps(g, h, &candidates, &mut |map| {
        found = Some(IsoMap::new(map));
        false
    });
    found
}

/// A generating set of `Aut(G)` together with `|Aut(G)|`.
///
/// Built level by level over the stabilizer chain of the generator sequence
/// `g_1, ..., g_k`: at level `i`, one automorphism fixing `g_1..g_{i-1}` is
/// found for each point of the orbit of `g_i` not yet reached, so the orbit
/// sizes multiply to the group order.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    pub generators: Vec<IsoMap>,
    pub orbit_sizes: Vec<usize>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> u128 {
        self.orbit_sizes.iter().map(|&s| s as u128).product()
    }
}

pub fn automorphism_group(group: &Group) -> AutomorphismGroup {
    let gens = generators(group);
    let base = base_candidates(group, group, gens);
    let mut strong: Vec<IsoMap> = Vec::new();
    let mut orbit_sizes = vec![0; gens.len()];
    for level in (0..gens.len()).rev() {
        let mut orbit = orbit_of(gens[level], &strong, group.order());
        for &c in &base[level] {
            if orbit.contains(c) {
                continue;
            }
            let mut candidates: Vec<Vec<Element>> = gens[..level].iter().map(|&g| vec![g]).collect();
            candidates.push(vec![c]);
            candidates.extend(base[level + 1..].iter().cloned());
            let mut found = None;
            search_maps(group, group, &candidates, &mut |map| {
                found = Some(IsoMap::new(map));
                false
            });
            if let Some(phi) = found {
                strong.push(phi);
                orbit = orbit_of(gens[level], &strong, group.order());
            }
        }
        orbit_sizes[level] = orbit.len();
    }
    AutomorphismGroup {
        generators: strong,
        orbit_sizes,
    }
}

fn orbit_of(point: Element, maps: &[IsoMap], universe: usize) -> ElementSet {
    let mut orbit = ElementSet::from_indices(universe, [point]);
    let mut queue = vec![point];
    while let Some(x) = queue.pop() {
        for m in maps {
            let y = m.apply(x);
            if orbit.insert(y) {
                queue.push(y);
            }
        }
    }
    orbit
}

/// Every automorphism of `group`, in search order (identity first).
pub fn automorphisms(group: &Group) -> Result<Vec<IsoMap>> {
    let cap = max_aut_order();
    if group.order() > cap {
        return Err(Error::CapExceeded { order: group.order(), cap });
    }
    let count = automorphism_group(group).order();
    if count > MAX_LISTED_AUTOMORPHISMS {
        return Err(Error::TooManyAutomorphisms {
            count,
            limit: MAX_LISTED_AUTOMORPHISMS,
        });
    }
    let gens = generators(group);
    // Try the identity image first so the identity map leads the list.
    let candidates: Vec<Vec<Element>> = base_candidates(group, group, gens)
        .into_iter()
        .zip(gens)
        .map(|(mut c, &g)| {
            c.sort_by_key(|&h| h != g);
            c
        })
        .collect();
    let mut all = Vec::new();
    search_maps(group, group, &candidates, &mut |map| {
        all.push(IsoMap::new(map));
        true
    });
    Ok(all)
}

/// Fixed setwise by every automorphism.
pub fn is_characteristic(group: &Group, h: &Subgroup) -> Result<bool> {
    h.check_in(group)?;
    let aut = automorphism_group(group);
    Ok(is_fixed_by(h, &aut.generators, group.order()))
}

fn is_fixed_by(h: &Subgroup, maps: &[IsoMap], order: usize) -> bool {
    maps.iter().all(|m| &h.map(m.images(), order) == h)
}

pub fn characteristic_subgroups(group: &Group) -> Result<SubgroupFamily> {
    let all = all_subgroups(group)?;
    let aut = automorphism_group(group);
    Ok(all.filter(|h| is_fixed_by(h, &aut.generators, group.order())))
}

/// The subgroup `h` re-indexed as a group on `0..|h|`, with the inclusion
/// map back into `group` (ascending, so index `i` is the `i`-th member).
pub fn subgroup_abstract_group(group: &Group, h: &Subgroup) -> Result<(Group, Vec<Element>)> {
    h.check_in(group)?;
    let inclusion = h.elements();
    let mut position = BTreeMap::new();
    for (i, &g) in inclusion.iter().enumerate() {
        position.insert(g, i as u32);
    }
    let n = inclusion.len();
    let mut table = Vec::with_capacity(n * n);
    for &a in &inclusion {
        for &b in &inclusion {
            table.push(position[&group.mul(a, b)]);
        }
    }
    let label = format!("{}:sub{}", group.label(), n);
    Ok((Group::from_flat(n, table, label)?, inclusion))
}

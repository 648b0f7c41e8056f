//! Quotient groups `G/N` with their canonical projections.

use crate::bitset::ElementSet;
use crate::group::{Element, Group};
use crate::subgroups::{require_normal, Subgroup};
use crate::Result;

/// `G/N` as a Cayley table on cosets, together with the projection.
///
/// Cosets are indexed in ascending order of their least member, and that
/// least member is the coset representative.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    pub group: Group,
    pub kernel: Subgroup,
    /// Parent element ↦ coset index.
    pub coset_of: Vec<Element>,
    /// Coset index ↦ least member.
    pub representatives: Vec<Element>,
}

impl QuotientGroup {
    pub fn project(&self, g: Element) -> Element {
        self.coset_of[g]
    }

    /// Preimage of a subgroup of the quotient.
    pub fn preimage(&self, k: &Subgroup) -> Subgroup {
        Subgroup::from_set_unchecked(ElementSet::from_indices(
            self.coset_of.len(),
            (0..self.coset_of.len()).filter(|&g| k.contains(self.coset_of[g])),
        ))
    }
}

pub fn quotient(parent: &Group, kernel: &Subgroup) -> Result<QuotientGroup> {
    require_normal(parent, kernel)?;
    quotient_unchecked(parent, kernel)
}

/// `kernel` must already be known to be normal.
pub(crate) fn quotient_unchecked(parent: &Group, kernel: &Subgroup) -> Result<QuotientGroup> {
    let n = parent.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut representatives = Vec::with_capacity(n / kernel.order());
    let kernel_elems = kernel.elements();
    for g in parent.elements() {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let idx = representatives.len();
        representatives.push(g);
        for &k in &kernel_elems {
            coset_of[parent.mul(g, k)] = idx;
        }
    }
    let m = representatives.len();
    let mut table = Vec::with_capacity(m * m);
    for &a in &representatives {
        for &b in &representatives {
            table.push(coset_of[parent.mul(a, b)] as u32);
        }
    }
    let label = format!("{}/{}", parent.label(), kernel.order());
    let group = Group::from_flat(m, table, label)?;
    Ok(QuotientGroup {
        group,
        kernel: kernel.clone(),
        coset_of,
        representatives,
    })
}

/// Image of `k` under the projection; a subgroup of `q.group`.
pub fn project_subgroup(q: &QuotientGroup, k: &Subgroup) -> Subgroup {
    Subgroup::from_set_unchecked(ElementSet::from_indices(
        q.group.order(),
        k.members().iter().map(|g| q.coset_of[g]),
    ))
}

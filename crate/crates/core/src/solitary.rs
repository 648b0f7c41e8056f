//! Solitary subgroups `Sol(G)` and normal subgroups with solitary quotients
//! `QSol(G)`, computed by brute force, plus the closed-form predictions they
//! are checked against.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::arith::divisors;
use crate::group::Group;
use crate::iso::{are_isomorphic, fingerprint, subgroup_abstract_group, Fingerprint};
use crate::lattice::FiniteLattice;
use crate::limits::check_order;
use crate::quotient::{project_subgroup, quotient_unchecked};
use crate::subgroups::{all_subgroups, closure, frattini_series, normal_subgroups, omega_series, Subgroup, SubgroupFamily};
use crate::Result;

/// For each group, whether no other group in the list is isomorphic to it.
///
/// Groups are bucketed by fingerprint; inside a bucket each group is compared
/// against one representative per isomorphism class found so far.
pub fn unique_isomorphism_types(groups: &[Group]) -> Vec<bool> {
    let mut buckets: BTreeMap<&Fingerprint, Vec<usize>> = BTreeMap::new();
    for (i, g) in groups.iter().enumerate() {
        buckets.entry(fingerprint(g)).or_default().push(i);
    }
    let mut unique = vec![false; groups.len()];
    for members in buckets.values() {
        if let [only] = members.as_slice() {
            unique[*only] = true;
            continue;
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &i in members {
            match classes
                .iter_mut()
                .find(|class| are_isomorphic(&groups[class[0]], &groups[i]).is_some())
            {
                Some(class) => class.push(i),
                None => classes.push(vec![i]),
            }
        }
        for class in classes {
            if let [only] = class.as_slice() {
                unique[*only] = true;
            }
        }
    }
    unique
}

/// Subgroups `H` such that no other subgroup is isomorphic to `H`.
pub fn sol(group: &Group) -> Result<&SubgroupFamily> {
    check_order(group.order())?;
    let all = all_subgroups(group)?;
    if let Some(done) = group.memo.sol.get() {
        return Ok(done);
    }
    let abstract_groups: Vec<Group> = all
        .as_slice()
        .par_iter()
        .map(|h| subgroup_abstract_group(group, h).map(|(a, _)| a))
        .collect::<Result<_>>()?;
    let unique = unique_isomorphism_types(&abstract_groups);
    let family = SubgroupFamily::new(all.iter().zip(unique).filter(|(_, u)| *u).map(|(h, _)| h.clone()));
    Ok(group.memo.sol.get_or_init(|| family))
}

/// Normal subgroups `N` such that `G/M ≅ G/N` forces `M = N` for normal `M`.
pub fn qsol(group: &Group) -> Result<&SubgroupFamily> {
    check_order(group.order())?;
    let normal = normal_subgroups(group)?;
    if let Some(done) = group.memo.qsol.get() {
        return Ok(done);
    }
    let quotients: Vec<Group> = normal
        .as_slice()
        .par_iter()
        .map(|n| quotient_unchecked(group, n).map(|q| q.group))
        .collect::<Result<_>>()?;
    let unique = unique_isomorphism_types(&quotients);
    let family = SubgroupFamily::new(normal.iter().zip(unique).filter(|(_, u)| *u).map(|(h, _)| h.clone()));
    Ok(group.memo.qsol.get_or_init(|| family))
}

pub fn is_quotient_solitary_free(group: &Group) -> Result<bool> {
    let q = qsol(group)?;
    Ok(q.iter().all(|h| h.is_trivial() || h.is_whole(group)))
}

pub fn sol_lattice(group: &Group) -> Result<FiniteLattice> {
    FiniteLattice::from_subgroup_family(sol(group)?)
}

pub fn qsol_lattice(group: &Group) -> Result<FiniteLattice> {
    FiniteLattice::from_subgroup_family(qsol(group)?)
}

/// The dihedral prediction on `Group::dihedral(order)`: with `M = <x>` of
/// order `n = order / 2`, every subgroup of `M` plus the whole group when `n`
/// is odd, and every proper subgroup of `M` plus the whole group when `n` is even.
pub fn predicted_qsol_dihedral(order: usize) -> Result<SubgroupFamily> {
    let g = Group::dihedral(order)?;
    let n = order / 2;
    let mut members: Vec<Subgroup> = divisors(n as u64)
        .into_iter()
        .filter(|&r| n % 2 == 1 || r as usize != n)
        .map(|r| closure(&g, [g.pow(1, n as u64 / r)]))
        .collect();
    members.push(Subgroup::whole(&g));
    Ok(SubgroupFamily::new(members))
}

fn p_group_factors(p: u64, partition: &[u32]) -> Vec<(u64, u32)> {
    partition.iter().map(|&a| (p, a)).collect()
}

/// Frattini series of `Group::abelian` on the partition, descending from `G`.
pub fn predicted_qsol_abelian_p(p: u64, partition: &[u32]) -> Result<Vec<Subgroup>> {
    frattini_series(&Group::abelian(&p_group_factors(p, partition))?)
}

/// Omega series of `Group::abelian` on the partition, ascending to `G`.
pub fn predicted_sol_abelian_p(p: u64, partition: &[u32]) -> Result<Vec<Subgroup>> {
    omega_series(&Group::abelian(&p_group_factors(p, partition))?)
}

/// A normal subgroup `H` and a member `K` of `QSol(G)` whose image in `G/H`
/// is not in `QSol(G/H)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionCounterexample {
    pub kernel: Subgroup,
    pub member: Subgroup,
    pub image: Subgroup,
    pub quotient: Group,
}

/// Searches proper normal `H` and `K ∈ QSol(G)` in canonical order and
/// returns the first pair where the projection of `K` leaves `QSol(G/H)`.
pub fn find_projection_counterexample(group: &Group) -> Result<Option<ProjectionCounterexample>> {
    let members = qsol(group)?.clone();
    for h in normal_subgroups(group)? {
        if h.is_whole(group) {
            continue;
        }
        let q = quotient_unchecked(group, h)?;
        let target = qsol(&q.group)?;
        for k in &members {
            let image = project_subgroup(&q, k);
            if !target.contains(&image) {
                return Ok(Some(ProjectionCounterexample {
                    kernel: h.clone(),
                    member: k.clone(),
                    image,
                    quotient: q.group.clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// Both families with their lattices and the comparison flags.
#[derive(Debug, Clone)]
pub struct SolitaryReport {
    pub label: String,
    pub sol: SubgroupFamily,
    pub qsol: SubgroupFamily,
    pub sol_lattice: FiniteLattice,
    pub qsol_lattice: FiniteLattice,
    pub quotient_solitary_free: bool,
    pub qsol_equals_normal: bool,
    pub sol_equals_qsol: bool,
}

pub fn solitary_report(group: &Group) -> Result<SolitaryReport> {
    let s = sol(group)?.clone();
    let q = qsol(group)?.clone();
    let normal = normal_subgroups(group)?;
    Ok(SolitaryReport {
        label: group.label().to_string(),
        sol_lattice: FiniteLattice::from_subgroup_family(&s)?,
        qsol_lattice: FiniteLattice::from_subgroup_family(&q)?,
        quotient_solitary_free: is_quotient_solitary_free(group)?,
        qsol_equals_normal: &q == normal,
        sol_equals_qsol: s == q,
        sol: s,
        qsol: q,
    })
}

/// `QSol` members of the abstract group of `h`, mapped back into `group`.
pub(crate) fn qsol_of_subgroup(group: &Group, h: &Subgroup) -> Result<SubgroupFamily> {
    let (sub, inclusion) = subgroup_abstract_group(group, h)?;
    Ok(qsol(&sub)?.iter().map(|k| k.map(&inclusion, group.order())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroups::{derived_subgroup, frattini, omega};

    fn sub(g: &Group, e: &[usize]) -> Subgroup {
        Subgroup::from_elements(g, e.iter().copied()).unwrap()
    }

    #[test]
    fn d8_families() {
        let g = Group::dihedral(8).unwrap();
        let s = sol(&g).unwrap();
        let q = qsol(&g).unwrap();
        let (x, x2) = (sub(&g, &[0, 1, 2, 3]), sub(&g, &[0, 2]));
        assert!(s.contains(&x) && !s.contains(&x2));
        assert!(q.contains(&x2) && !q.contains(&x));
        assert_eq!(q.orders(), vec![1, 2, 8]);
        assert_eq!(q, &predicted_qsol_dihedral(8).unwrap());
    }

    #[test]
    fn d6_and_d12() {
        let d6 = Group::dihedral(6).unwrap();
        assert_eq!(qsol(&d6).unwrap(), normal_subgroups(&d6).unwrap());
        assert_eq!(qsol(&d6).unwrap().orders(), vec![1, 3, 6]);
        assert_eq!(predicted_qsol_dihedral(6).unwrap().orders(), vec![1, 3, 6]);
        let d12 = Group::dihedral(12).unwrap();
        assert_eq!(qsol(&d12).unwrap(), &predicted_qsol_dihedral(12).unwrap());
        assert_eq!(predicted_qsol_dihedral(12).unwrap().orders(), vec![1, 2, 3, 12]);
    }

    #[test]
    fn z2_z4_chains() {
        let g = Group::abelian(&[(2, 1), (2, 2)]).unwrap();
        let s = sol(&g).unwrap();
        assert_eq!(s, &SubgroupFamily::new([Subgroup::trivial(&g), omega(&g, 1).unwrap(), Subgroup::whole(&g)]));
        let q = qsol(&g).unwrap();
        assert_eq!(q, &SubgroupFamily::new([Subgroup::trivial(&g), frattini(&g).unwrap(), Subgroup::whole(&g)]));
        assert_eq!(predicted_qsol_abelian_p(2, &[1, 2]).unwrap().len(), 3);
        assert_eq!(
            predicted_sol_abelian_p(2, &[1, 2]).unwrap().iter().map(Subgroup::order).collect::<Vec<_>>(),
            vec![1, 4, 8]
        );
        assert_eq!(predicted_qsol_abelian_p(3, &[1, 1, 1]).unwrap().len(), 2);
        assert_eq!(predicted_sol_abelian_p(2, &[2, 2]).unwrap().len(), 3);
    }

    #[test]
    fn cyclic_p_groups_are_all_solitary() {
        let g = Group::cyclic(27).unwrap();
        assert_eq!(sol(&g).unwrap().len(), 4);
    }

    #[test]
    fn quotient_solitary_free_groups() {
        assert!(is_quotient_solitary_free(&Group::abelian(&[(2, 1), (2, 1)]).unwrap()).unwrap());
        assert!(!is_quotient_solitary_free(&Group::cyclic(4).unwrap()).unwrap());
        assert!(is_quotient_solitary_free(&Group::trivial()).unwrap());
    }

    #[test]
    fn derived_subgroup_is_quotient_solitary() {
        for g in [Group::symmetric(4).unwrap(), Group::quaternion().unwrap(), Group::dihedral(10).unwrap()] {
            assert!(qsol(&g).unwrap().contains(&derived_subgroup(&g)));
        }
    }

    #[test]
    fn projection_counterexample() {
        let g = Group::direct_product(&Group::dihedral(6).unwrap(), &Group::dihedral(10).unwrap()).unwrap();
        let found = find_projection_counterexample(&g).unwrap().expect("D6xD10 breaks the projection claim");
        assert!(qsol(&g).unwrap().contains(&found.member));
        assert!(!qsol(&found.quotient).unwrap().contains(&found.image));
        let z = Group::abelian(&[(2, 1), (2, 2)]).unwrap();
        assert!(find_projection_counterexample(&z).unwrap().is_none());
    }

    #[test]
    fn report_flags() {
        let r = solitary_report(&Group::dihedral(6).unwrap()).unwrap();
        assert!(r.qsol_equals_normal);
        assert!(!r.quotient_solitary_free);
        assert_eq!(r.qsol_lattice.chain_length().unwrap(), 2);
        let r = solitary_report(&Group::abelian(&[(2, 2), (2, 2)]).unwrap()).unwrap();
        assert!(r.sol_equals_qsol);
    }
}

//! The claim-verification suite.
//!
//! Each claim is checked by brute force over a frozen corpus (see
//! [`crate::corpus`]). A refuted claim records the first failing group in
//! corpus order together with element-level data that can be re-checked
//! independently. Probes never pass or fail; they report what was computed.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::prime_of_power;
use crate::bitset::ElementSet;
use crate::catalog::type_label;
use crate::corpus;
use crate::duality::{delta, find_quotient_duality_failure, find_involution_failure, verify_qsol_sol_duality, AbelianPresentation};
use crate::group::{Element, Group};
use crate::iso::{are_isomorphic, characteristic_subgroups, subgroup_abstract_group};
use crate::lattice::{chain, divisor_lattice, lattice_isomorphic, product_lattice, FiniteLattice};
use crate::quotient::quotient_unchecked;
use crate::solitary::{
    find_projection_counterexample, is_quotient_solitary_free, predicted_qsol_dihedral, qsol, qsol_lattice,
    qsol_of_subgroup, sol, sol_lattice,
};
use crate::spec::GroupSpec;
use crate::subgroups::{
    all_subgroups, closure, derived_subgroup, frattini, frattini_series, is_cyclic, is_elementary_abelian,
    is_hamiltonian, is_perfect, maximal_subgroups, normal_subgroups, omega, omega_series, sylow_decomposition,
    Subgroup, SubgroupFamily,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Probe,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationResult {
    pub claim: String,
    pub name: String,
    pub status: Status,
    pub expected: Status,
    pub corpus: String,
    pub groups_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub narrative: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

impl VerificationResult {
    pub fn new(claim: &str, status: Status) -> VerificationResult {
        VerificationResult {
            claim: claim.to_string(),
            name: String::new(),
            status,
            expected: status,
            corpus: String::new(),
            groups_checked: 0,
            witness: None,
            narrative: String::new(),
            details: Value::Null,
        }
    }

    pub fn refute(&mut self, witness: Value, narrative: String) {
        self.status = Status::Refuted;
        self.witness = Some(witness);
        self.narrative = narrative;
    }

    /// The computed status is the expected one.
    pub fn as_expected(&self) -> bool {
        self.status == self.expected
    }
}

pub fn subgroup_json(h: &Subgroup) -> Value {
    json!({ "order": h.order(), "members": h.elements() })
}

fn family_json(f: &SubgroupFamily) -> Value {
    Value::Array(f.iter().map(subgroup_json).collect())
}

fn lattice_counts(l: &FiniteLattice) -> Value {
    let s = l.summary();
    json!({ "nodes": s.node_count, "edges": s.edge_count, "is_chain": s.is_chain })
}

type Entry = (String, Arc<Group>);

fn entries(sets: &[&str]) -> Result<Vec<Entry>> {
    let mut out: Vec<Entry> = Vec::new();
    for set in sets {
        for spec in corpus::specs(set)? {
            if !out.iter().any(|(s, _)| *s == spec) {
                let g = corpus::group(&spec)?;
                out.push((spec, g));
            }
        }
    }
    Ok(out)
}

fn is_p_group(g: &Group) -> bool {
    g.order() > 1 && prime_of_power(g.order() as u64).is_some()
}

/// Runs `check` on every entry in parallel and records the first failure in
/// corpus order. `check` returns the failure detail, or `None` on success.
fn sweep<F>(result: &mut VerificationResult, items: &[Entry], check: F) -> Result<()>
where
    F: Fn(&str, &Group) -> Result<Option<Value>> + Sync,
{
    let outcomes: Vec<Result<Option<Value>>> = items.par_iter().map(|(s, g)| check(s, g)).collect();
    result.groups_checked += items.len();
    for ((spec, _), outcome) in items.iter().zip(outcomes) {
        if let Some(detail) = outcome? {
            let narrative = format!("{}: fails on {spec}", result.name);
            result.refute(json!({ "group": spec, "detail": detail }), narrative);
            return Ok(());
        }
    }
    Ok(())
}

fn finish(result: &mut VerificationResult, success: &str) {
    if result.status == Status::Verified && result.narrative.is_empty() {
        result.narrative = format!("{success} ({} groups)", result.groups_checked);
    }
}

/// The members of `h` as a subgroup of the abstract group behind `inclusion`.
fn pull_back(h: &Subgroup, inclusion: &[Element]) -> Subgroup {
    Subgroup::from_set_unchecked(ElementSet::from_indices(
        inclusion.len(),
        inclusion.iter().enumerate().filter(|(_, &g)| h.contains(g)).map(|(i, _)| i),
    ))
}

fn abelian_presentation(spec: &str, g: &Group) -> Result<AbelianPresentation> {
    let factors = GroupSpec::parse(spec)?
        .abelian_factors()
        .ok_or_else(|| Error::InvalidParameter(format!("{spec} is not given by prime-power cyclic factors")))?;
    let pres = AbelianPresentation::new(&factors)?;
    if pres.group()? != *g {
        return Err(Error::InvalidParameter(format!("{spec} does not use the standard abelian encoding")));
    }
    Ok(pres)
}

/// Largest exponent per prime, primes ascending.
fn top_exponents(spec: &str) -> Result<Vec<(u64, u32)>> {
    let factors = GroupSpec::parse(spec)?
        .abelian_factors()
        .ok_or_else(|| Error::InvalidParameter(format!("{spec} is not abelian")))?;
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut sorted = factors.clone();
    sorted.sort_unstable();
    for (p, a) in sorted {
        match out.last_mut() {
            Some((q, b)) if *q == p => *b = (*b).max(a),
            _ => out.push((p, a)),
        }
    }
    Ok(out)
}

fn sylow_partitions_constant(spec: &str) -> Result<bool> {
    let factors = GroupSpec::parse(spec)?
        .abelian_factors()
        .ok_or_else(|| Error::InvalidParameter(format!("{spec} is not abelian")))?;
    Ok(factors.iter().all(|&(p, a)| factors.iter().all(|&(q, b)| p != q || a == b)))
}

fn dihedral_example(r: &mut VerificationResult) -> Result<()> {
    let items = entries(&["dihedral"])?;
    sweep(r, &items, |_, g| {
        let predicted = predicted_qsol_dihedral(g.order())?;
        let computed = qsol(g)?;
        Ok((computed != &predicted).then(|| json!({ "computed": family_json(computed), "predicted": family_json(&predicted) })))
    })?;
    finish(r, "QSol of each dihedral group equals the rotation-subgroup formula");
    Ok(())
}

fn d8_separation(r: &mut VerificationResult) -> Result<()> {
    let g = corpus::group("D8")?;
    let (x, x2) = (closure(&g, [1]), closure(&g, [2]));
    let (s, q) = (sol(&g)?, qsol(&g)?);
    r.groups_checked = 1;
    r.details = json!({ "x": subgroup_json(&x), "x_squared": subgroup_json(&x2) });
    if !(q.contains(&x2) && !s.contains(&x2) && s.contains(&x) && !q.contains(&x)) {
        r.refute(
            json!({ "group": "D8", "sol": family_json(s), "qsol": family_json(q) }),
            "the rotation subgroups of D8 are not separated as stated".into(),
        );
    } else {
        r.narrative = "<x^2> lies in QSol(D8) but not Sol(D8); <x> lies in Sol(D8) but not QSol(D8)".into();
    }
    Ok(())
}

fn qsol_meets_are_intersections(r: &mut VerificationResult) -> Result<()> {
    let items = entries(&["general_le_64", "large"])?;
    sweep(r, &items, |_, g| {
        let q = qsol(g)?;
        let lattice = match FiniteLattice::from_subgroup_family(q) {
            Ok(l) => l,
            Err(Error::NotALattice { a, b, bound }) => {
                return Ok(Some(json!({ "missing": bound, "a": subgroup_json(&q.as_slice()[a]), "b": subgroup_json(&q.as_slice()[b]) })))
            }
            Err(e) => return Err(e),
        };
        let members = q.as_slice();
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if members[lattice.meet(i, j)] != members[i].intersection(&members[j]) {
                    return Ok(Some(json!({ "a": subgroup_json(&members[i]), "b": subgroup_json(&members[j]) })));
                }
            }
        }
        Ok(None)
    })?;
    finish(r, "QSol is a lattice whose meets are intersections");
    Ok(())
}

fn transitivity(r: &mut VerificationResult) -> Result<()> {
    let items = entries(&["general_le_64", "large"])?;
    sweep(r, &items, |_, g| {
        let q = qsol(g)?;
        let normal = normal_subgroups(g)?;
        for h in q {
            for k in &qsol_of_subgroup(g, h)? {
                if normal.contains(k) && !q.contains(k) {
                    return Ok(Some(json!({ "h": subgroup_json(h), "k": subgroup_json(k) })));
                }
            }
        }
        Ok(None)
    })?;
    finish(r, "K normal in G, K in QSol(H), H in QSol(G) implies K in QSol(G)");
    Ok(())
}

/// QSol recomputed on a fresh copy of `q`, bypassing every cache.
fn qsol_from_scratch(q: &Group) -> Result<SubgroupFamily> {
    let rows: Vec<Vec<usize>> = q.elements().map(|a| q.elements().map(|b| q.mul(a, b)).collect()).collect();
    let fresh = Group::from_table(rows, q.label())?;
    Ok(qsol(&fresh)?.clone())
}

fn projection_claim(r: &mut VerificationResult) -> Result<()> {
    let g = corpus::group("D6xD10")?;
    r.groups_checked = 1;
    match find_projection_counterexample(&g)? {
        Some(found) => {
            let recheck = qsol_from_scratch(&found.quotient)?;
            if recheck.contains(&found.image) {
                return Err(Error::InvalidParameter("counterexample did not re-validate".into()));
            }
            let q = quotient_unchecked(&g, &found.kernel)?;
            r.refute(
                json!({
                    "group": "D6xD10",
                    "h": subgroup_json(&found.kernel),
                    "k": subgroup_json(&found.member),
                    "image": subgroup_json(&found.image),
                    "quotient_order": found.quotient.order(),
                    "quotient_type": type_label(&found.quotient),
                    "coset_representatives": q.representatives,
                    "quotient_qsol": family_json(&recheck),
                }),
                format!(
                    "in D6xD10 the QSol member of order {} projects modulo the normal subgroup of order {} onto a subgroup of order {} outside QSol of the quotient {}",
                    found.member.order(),
                    found.kernel.order(),
                    found.image.order(),
                    type_label(&found.quotient)
                ),
            );
        }
        None => r.narrative = "no counterexample found in D6xD10".into(),
    }
    Ok(())
}

fn d12_projection_count(r: &mut VerificationResult) -> Result<()> {
    let g = corpus::group("D12")?;
    let h = closure(&g, [2]);
    let q = qsol(&g)?;
    let above: Vec<&Subgroup> = q.iter().filter(|k| h.is_subgroup_of(k)).collect();
    let bar = quotient_unchecked(&g, &h)?.group;
    let c6 = closure(&g, [1]);
    r.groups_checked = 1;
    r.details = json!({
        "h": subgroup_json(&h),
        "qsol_members_containing_h": above.iter().map(|k| json!({ "order": k.order(), "type": type_label(&subgroup_abstract_group(&g, k).unwrap().0) })).collect::<Vec<_>>(),
        "count": above.len(),
        "stated_count": 3,
        "rotation_subgroup_in_qsol": q.contains(&c6),
        "quotient_type": type_label(&bar),
        "quotient_solitary_free": is_quotient_solitary_free(&bar)?,
        "projection_is_bijection": above.len() == qsol(&bar)?.len(),
    });
    r.narrative = format!(
        "{} QSol members of D12 contain its normal subgroup of order 3 (the cyclic subgroup of order 6 is {}in QSol); D12/C3 is {}",
        above.len(),
        if q.contains(&c6) { "" } else { "not " },
        type_label(&bar)
    );
    Ok(())
}

fn distinct_normal_orders(r: &mut VerificationResult) -> Result<()> {
    let items = entries(&["general_le_64", "large"])?;
    let hypothesis = std::sync::atomic::AtomicUsize::new(0);
    sweep(r, &items, |_, g| {
        let normal = normal_subgroups(g)?;
        let orders = normal.orders();
        let distinct = orders.windows(2).all(|w| w[0] != w[1]);
        if !distinct {
            return Ok(None);
        }
        hypothesis.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        Ok((qsol(g)? != normal).then(|| json!({ "normal_orders": orders })))
    })?;
    r.details = json!({ "groups_meeting_hypothesis": hypothesis.into_inner() });
    finish(r, "groups whose normal subgroups have distinct orders have QSol = N(G)");
    Ok(())
}

fn derived_subgroup_in_qsol(r: &mut VerificationResult) -> Result<()> {
    let items = entries(&["general_le_64", "large"])?;
    sweep(r, &items, |_, g| {
        let q = qsol(g)?;
        let required = [Subgroup::trivial(g), Subgroup::whole(g), derived_subgroup(g)];
        if let Some(missing) = required.iter().find(|h| !q.contains(h)) {
            return Ok(Some(json!({ "missing": subgroup_json(missing) })));
        }
        let free = is_quotient_solitary_free(g)?;
        Ok((free && !(is_perfect(g) || g.is_abelian())).then(|| json!({ "quotient_solitary_free": true })))
    })?;
    finish(r, "1, G and G' lie in QSol(G), and quotient-solitary-free groups are perfect or abelian");
    Ok(())
}

/// The Sylow subgroups as abstract groups with their inclusions.
fn sylow_parts(g: &Group) -> Result<Vec<(Subgroup, Group, Vec<Element>)>> {
    sylow_decomposition(g)?
        .into_iter()
        .map(|p| {
            let (a, inc) = subgroup_abstract_group(g, &p)?;
            Ok((p, a, inc))
        })
        .collect()
}

fn nilpotent_product(r: &mut VerificationResult) -> Result<()> {
    let pairs = corpus::coprime_pairs();
    let outcomes: Vec<Result<Option<Value>>> = pairs
        .par_iter()
        .map(|(a, b)| {
            let (p, q) = (corpus::group(a)?, corpus::group(b)?);
            let g = Group::direct_product(&p, &q)?;
            let product = product_lattice(&qsol_lattice(&p)?, &qsol_lattice(&q)?);
            let whole = qsol_lattice(&g)?;
            Ok((!lattice_isomorphic(&whole, &product)).then(|| json!({ "p": a, "q": b, "product": lattice_counts(&whole), "factors": lattice_counts(&product) })))
        })
        .collect();
    r.groups_checked += pairs.len();
    for outcome in outcomes {
        if let Some(w) = outcome? {
            r.refute(w, "a coprime product has QSol not isomorphic to the product of the factors' QSol".into());
            return Ok(());
        }
    }
    let items = entries(&["nilpotent_le_48"])?;
    sweep(r, &items, |_, g| {
        let parts = sylow_parts(g)?;
        let q = qsol(g)?;
        for h in normal_subgroups(g)? {
            let componentwise = parts
                .iter()
                .map(|(_, a, inc)| Ok(qsol(a)?.contains(&pull_back(h, inc))))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b);
            if componentwise != q.contains(h) {
                return Ok(Some(json!({ "normal_subgroup": subgroup_json(h), "in_qsol": q.contains(h) })));
            }
        }
        Ok(None)
    })?;
    r.details = json!({ "coprime_pairs": pairs.len() });
    finish(r, "QSol of coprime and nilpotent products decomposes over the factors");
    Ok(())
}

fn p_groups_le_64() -> Result<Vec<Entry>> {
    Ok(entries(&["nilpotent_le_64"])?.into_iter().filter(|(_, g)| is_p_group(g)).collect())
}

fn frattini_in_qsol(r: &mut VerificationResult) -> Result<()> {
    let items = p_groups_le_64()?;
    sweep(r, &items, |_, g| {
        let phi = frattini(g)?;
        Ok((!qsol(g)?.contains(&phi)).then(|| json!({ "frattini": subgroup_json(&phi) })))
    })?;
    finish(r, "the Frattini subgroup of a p-group lies in QSol");
    Ok(())
}

fn frattini_maximality(r: &mut VerificationResult) -> Result<()> {
    let items = p_groups_le_64()?;
    let outcomes: Vec<Result<(Option<String>, Value)>> = items
        .par_iter()
        .map(|(spec, g)| {
            let phi = frattini(g)?;
            let q = qsol(g)?;
            let above = q.iter().any(|k| !k.is_whole(g) && *k != phi && phi.is_subgroup_of(k));
            let counts = lattice_counts(&FiniteLattice::from_subgroup_family(q)?);
            Ok((above.then(|| spec.clone()), json!({ "group": spec, "qsol_lattice": counts })))
        })
        .collect();
    let mut failures = Vec::new();
    let mut lattices = Vec::new();
    for outcome in outcomes {
        let (failure, counts) = outcome?;
        failures.extend(failure);
        lattices.push(counts);
    }
    r.groups_checked = items.len();
    r.narrative = format!(
        "Frattini subgroup is maximal among proper QSol members in {} of {} p-groups",
        items.len() - failures.len(),
        items.len()
    );
    r.details = json!({
        "groups": items.len(),
        "holds": items.len() - failures.len(),
        "failures": failures,
        "lattices": lattices,
    });
    Ok(())
}

fn frattini_series_and_maximals(r: &mut VerificationResult) -> Result<()> {
    let items = entries(&["nilpotent_le_64"])?;
    sweep(r, &items, |_, g| {
        let q = qsol(g)?;
        if let Some(term) = frattini_series(g)?.into_iter().find(|h| !q.contains(h)) {
            return Ok(Some(json!({ "frattini_term": subgroup_json(&term) })));
        }
        let parts = sylow_parts(g)?;
        let mut predicted = Vec::new();
        for (i, (_, a, inc)) in parts.iter().enumerate() {
            let mut seed = frattini(a)?.map(inc, g.order()).elements();
            for (j, (p, _, _)) in parts.iter().enumerate() {
                if j != i {
                    seed.extend(p.elements());
                }
            }
            predicted.push(closure(g, seed));
        }
        let predicted = SubgroupFamily::new(predicted);
        let proper: Vec<&Subgroup> = q.iter().filter(|h| !h.is_whole(g)).collect();
        let maximal = SubgroupFamily::new(
            proper
                .iter()
                .filter(|h| !proper.iter().any(|k| k.order() > h.order() && h.is_subgroup_of(k)))
                .map(|h| (*h).clone()),
        );
        Ok((maximal != predicted).then(|| json!({ "maximal": family_json(&maximal), "predicted": family_json(&predicted) })))
    })?;
    finish(r, "the Frattini series lies in QSol and the maximal QSol members are the Sylow-wise Frattini products");
    Ok(())
}

fn nilpotent_cyclic(r: &mut VerificationResult) -> Result<()> {
    let items = entries(&["nilpotent_le_48"])?;
    sweep(r, &items, |_, g| {
        let equal = qsol(g)? == normal_subgroups(g)?;
        Ok((equal != is_cyclic(g)).then(|| json!({ "qsol_equals_normal": equal, "cyclic": is_cyclic(g) })))
    })?;
    finish(r, "for nilpotent groups QSol = N(G) exactly when G is cyclic");
    Ok(())
}

fn maximal_subgroup_in_qsol(r: &mut VerificationResult) -> Result<()> {
    let items = p_groups_le_64()?;
    sweep(r, &items, |_, g| {
        let q = qsol(g)?;
        let any = maximal_subgroups(g)?.iter().any(|m| q.contains(m));
        Ok((any != is_cyclic(g)).then(|| json!({ "maximal_in_qsol": any, "cyclic": is_cyclic(g) })))
    })?;
    finish(r, "a p-group has a maximal subgroup in QSol exactly when it is cyclic");
    Ok(())
}

fn semidihedral_probe(r: &mut VerificationResult) -> Result<()> {
    let mut rows = Vec::new();
    let mut matches = true;
    for spec in corpus::specs("semidihedral")? {
        let g = corpus::group(&spec)?;
        let half = g.order() / 2;
        let claimed = vec![format!("C{half}"), format!("D{half}"), format!("SD{half}")];
        let q = qsol(&g)?;
        let chars = characteristic_subgroups(&g)?;
        let mut computed = Vec::new();
        for m in &maximal_subgroups(&g)? {
            let label = type_label(&subgroup_abstract_group(&g, m)?.0);
            computed.push(json!({
                "subgroup": subgroup_json(m),
                "type": label,
                "characteristic": chars.contains(m),
                "in_qsol": q.contains(m),
            }));
        }
        let mut types: Vec<String> = computed.iter().map(|c| c["type"].as_str().unwrap_or_default().to_string()).collect();
        types.sort();
        let mut expected = claimed.clone();
        expected.sort();
        matches &= types == expected;
        rows.push(json!({
            "group": spec,
            "claimed_types": claimed,
            "maximal_subgroups": computed,
            "types_match_claim": types == expected,
            "qsol_lattice": lattice_counts(&FiniteLattice::from_subgroup_family(q)?),
        }));
        r.groups_checked += 1;
    }
    r.narrative = format!(
        "maximal subgroup types {} the stated cyclic, dihedral and semidihedral list",
        if matches { "match" } else { "do not match" }
    );
    r.details = json!({ "groups": rows, "types_match_claim": matches });
    Ok(())
}

fn qsol_characteristic(r: &mut VerificationResult) -> Result<()> {
    let items = entries(&["general_le_64"])?;
    sweep(r, &items, |_, g| {
        let chars = characteristic_subgroups(g)?;
        Ok(qsol(g)?.iter().find(|h| !chars.contains(h)).map(|h| json!({ "not_characteristic": subgroup_json(h) })))
    })?;
    finish(r, "every QSol member is characteristic");
    Ok(())
}

fn abelian_p_groups() -> Result<Vec<Entry>> {
    entries(&["abelian_p_le_64"])
}

fn frattini_containment(r: &mut VerificationResult) -> Result<()> {
    let items = abelian_p_groups()?;
    sweep(r, &items, |_, g| {
        let phi = frattini(g)?;
        let inner = qsol_of_subgroup(g, &phi)?;
        for h in qsol(g)?.iter().filter(|h| !h.is_whole(g)) {
            if !h.is_subgroup_of(&phi) {
                return Ok(Some(json!({ "outside_frattini": subgroup_json(h) })));
            }
            if !inner.contains(h) {
                return Ok(Some(json!({ "not_in_qsol_of_frattini": subgroup_json(h) })));
            }
        }
        Ok(None)
    })?;
    finish(r, "proper QSol members lie in the Frattini subgroup and in its QSol");
    Ok(())
}

fn abelian_chains(r: &mut VerificationResult) -> Result<()> {
    let items = abelian_p_groups()?;
    sweep(r, &items, |spec, g| {
        let alpha = top_exponents(spec)?[0].1 as usize;
        let pres = abelian_presentation(spec, g)?;
        let series = frattini_series(g)?;
        let q = qsol(g)?;
        let s = sol(g)?;
        if *q != SubgroupFamily::new(series.clone()) {
            return Ok(Some(json!({ "qsol": family_json(q), "frattini_series": series.iter().map(subgroup_json).collect::<Vec<_>>() })));
        }
        let omegas = SubgroupFamily::new(omega_series(g)?);
        if *s != omegas {
            return Ok(Some(json!({ "sol": family_json(s), "omega_series": family_json(&omegas) })));
        }
        let dual = SubgroupFamily::new(series.iter().map(|h| delta(&pres, h)));
        if *s != dual {
            return Ok(Some(json!({ "sol": family_json(s), "delta_of_frattini_series": family_json(&dual) })));
        }
        let lengths = (qsol_lattice(g)?.chain_length().ok(), sol_lattice(g)?.chain_length().ok());
        Ok((lengths != (Some(alpha), Some(alpha))).then(|| json!({ "alpha_k": alpha, "qsol_length": lengths.0, "sol_length": lengths.1 })))
    })?;
    finish(r, "QSol is the Frattini series and Sol its dual, both chains of length alpha_k");
    Ok(())
}

fn sol_is_omega(r: &mut VerificationResult) -> Result<()> {
    let items = abelian_p_groups()?;
    sweep(r, &items, |_, g| {
        for h in sol(g)? {
            let (p, n) = match crate::arith::factorize(subgroup_abstract_group(g, h)?.0.exponent()).as_slice() {
                [] => (2, 0),
                [(p, n)] => (*p, *n),
                _ => return Err(Error::NotAbelianPGroup(g.label().into())),
            };
            let _ = p;
            if omega(g, n)? != *h {
                return Ok(Some(json!({ "solitary": subgroup_json(h), "exponent_log": n })));
            }
        }
        Ok(None)
    })?;
    finish(r, "each solitary subgroup H equals Omega_n(G) where p^n = exp(H)");
    Ok(())
}

fn labelled(g: &Group, family: &SubgroupFamily) -> Result<Vec<String>> {
    family.iter().map(|h| Ok(type_label(&subgroup_abstract_group(g, h)?.0))).collect()
}

fn z2z4_example(r: &mut VerificationResult) -> Result<()> {
    let spec = "Ab(2:[1,2])";
    let g = corpus::group(spec)?;
    let pres = abelian_presentation(spec, &g)?;
    let phi = frattini(&g)?;
    let omega1 = omega(&g, 1)?;
    let (s, q) = (sol(&g)?, qsol(&g)?);
    let expected_sol = SubgroupFamily::new([Subgroup::trivial(&g), omega1.clone(), Subgroup::whole(&g)]);
    let expected_qsol = SubgroupFamily::new([Subgroup::trivial(&g), phi.clone(), Subgroup::whole(&g)]);
    let (sol_types, qsol_types) = (labelled(&g, s)?, labelled(&g, q)?);
    let dual = delta(&pres, &phi);
    let dual_type = type_label(&subgroup_abstract_group(&g, &dual)?.0);
    r.groups_checked = 1;
    r.details = json!({ "sol_types": sol_types, "qsol_types": qsol_types, "delta_of_frattini_type": dual_type });
    let ok = *s == expected_sol
        && *q == expected_qsol
        && sol_types == ["C1", "C2xC2", "C2xC4"]
        && qsol_types == ["C1", "C2", "C2xC4"]
        && dual == omega1;
    if ok {
        r.narrative = "Sol(Z2xZ4) = 1 < Z2xZ2 < G and QSol(Z2xZ4) = 1 < Z2 < G, with delta(Phi) = Omega_1".into();
    } else {
        r.refute(json!({ "group": spec, "sol": family_json(s), "qsol": family_json(q) }), "the Z2xZ4 chains differ".into());
    }
    Ok(())
}

fn z4z4_same_shape(r: &mut VerificationResult) -> Result<()> {
    let (g1, g2) = (corpus::group("Ab(2:[1,2])")?, corpus::group("Ab(2:[2,2])")?);
    let (q1, q2) = (qsol_lattice(&g1)?, qsol_lattice(&g2)?);
    let (s1, s2) = (sol_lattice(&g1)?, sol_lattice(&g2)?);
    let (l1, l2) = (
        FiniteLattice::from_subgroup_family(all_subgroups(&g1)?)?,
        FiniteLattice::from_subgroup_family(all_subgroups(&g2)?)?,
    );
    r.groups_checked = 2;
    let facts = json!({
        "qsol_z4z4_length": q2.chain_length().ok(),
        "qsol_isomorphic": lattice_isomorphic(&q1, &q2),
        "sol_isomorphic": lattice_isomorphic(&s1, &s2),
        "groups_isomorphic": are_isomorphic(&g1, &g2).is_some(),
        "subgroup_lattices_isomorphic": lattice_isomorphic(&l1, &l2),
    });
    let ok = q2.chain_length().ok() == Some(2)
        && lattice_isomorphic(&q1, &q2)
        && lattice_isomorphic(&s1, &s2)
        && are_isomorphic(&g1, &g2).is_none()
        && !lattice_isomorphic(&l1, &l2);
    if ok {
        r.narrative = "QSol(Z4xZ4) is a chain of length 2 isomorphic to QSol(Z2xZ4), while the groups and their subgroup lattices differ".into();
        r.details = facts;
    } else {
        r.refute(facts, "the Z4xZ4 comparison fails".into());
    }
    Ok(())
}

fn element_order_lattice(r: &mut VerificationResult) -> Result<()> {
    let items = entries(&["abelian_le_64"])?;
    sweep(r, &items, |_, g| {
        let pi = divisor_lattice(g.element_orders())?;
        let (s, q) = (sol_lattice(g)?, qsol_lattice(g)?);
        Ok((!lattice_isomorphic(&s, &pi) || !lattice_isomorphic(&q, &pi)).then(|| json!({ "pi_e": lattice_counts(&pi), "sol": lattice_counts(&s), "qsol": lattice_counts(&q) })))
    })?;
    finish(r, "Sol and QSol of an abelian group are isomorphic to its lattice of element orders");
    Ok(())
}

fn product_of_chains(r: &mut VerificationResult) -> Result<()> {
    let items = entries(&["abelian_le_64"])?;
    sweep(r, &items, |spec, g| {
        let q = qsol_lattice(g)?;
        let chains = top_exponents(spec)?
            .iter()
            .fold(chain(1), |acc, &(_, a)| product_lattice(&acc, &chain(a as usize + 1)));
        Ok((!q.is_distributive() || !lattice_isomorphic(&q, &chains)).then(|| json!({ "qsol": lattice_counts(&q), "distributive": q.is_distributive() })))
    })?;
    finish(r, "QSol of an abelian group is a distributive product of chains");
    Ok(())
}

fn split_two_part(spec: &str) -> Result<(Group, Group)> {
    let parsed = GroupSpec::parse(spec)?;
    let (mut two, mut odd) = (Vec::new(), Vec::new());
    for f in parsed.factors() {
        let order = corpus::spec_order(&f.to_string())?;
        if order.is_power_of_two() {
            two.push(f.clone());
        } else {
            odd.push(f.clone());
        }
    }
    let build = |parts: Vec<GroupSpec>| match parts.len() {
        0 => Ok(Group::trivial()),
        1 => parts[0].build(),
        _ => GroupSpec::Product(parts).build(),
    };
    Ok((build(two)?, build(odd)?))
}

fn hamiltonian_decomposition(r: &mut VerificationResult) -> Result<()> {
    let items = entries(&["hamiltonian"])?;
    sweep(r, &items, |spec, g| {
        if !is_hamiltonian(g)? {
            return Ok(Some(json!({ "hamiltonian": false })));
        }
        let (two, odd) = split_two_part(spec)?;
        let q = qsol_lattice(g)?;
        let product = product_lattice(&qsol_lattice(&two)?, &qsol_lattice(&odd)?);
        Ok((!q.is_distributive() || !lattice_isomorphic(&q, &product)).then(|| json!({ "qsol": lattice_counts(&q), "product": lattice_counts(&product) })))
    })?;
    finish(r, "QSol of a hamiltonian group is distributive and splits over its 2-part and odd part");
    Ok(())
}

fn quaternion_chain_probe(r: &mut VerificationResult) -> Result<()> {
    let mut rows = Vec::new();
    let (mut nodes_three, mut edges_three, mut chains) = (true, true, true);
    for (n, spec) in corpus::specs("quaternion_2_power")?.iter().enumerate() {
        let g = corpus::group(spec)?;
        let l = qsol_lattice(&g)?;
        let s = l.summary();
        nodes_three &= s.node_count == 3;
        edges_three &= s.edge_count == 3;
        chains &= s.is_chain;
        rows.push(json!({ "n": n, "group": spec, "nodes": s.node_count, "edges": s.edge_count, "is_chain": s.is_chain, "qsol_orders": qsol(&g)?.orders() }));
        r.groups_checked += 1;
    }
    let supports = match (nodes_three, edges_three) {
        (true, _) => "node count",
        (_, true) => "edge count",
        _ => "neither",
    };
    r.narrative = format!("QSol(Q8 x Z2^n) for n = 0, 1, 2: all chains = {chains}; a length of 3 matches {supports}");
    r.details = json!({ "rows": rows, "all_chains": chains, "length_three_matches": supports });
    Ok(())
}

fn homocyclic_criterion(r: &mut VerificationResult) -> Result<()> {
    let items = entries(&["abelian_le_100"])?;
    sweep(r, &items, |spec, g| {
        let equal = sol(g)? == qsol(g)?;
        let homocyclic = sylow_partitions_constant(spec)?;
        Ok((equal != homocyclic).then(|| json!({ "sol_equals_qsol": equal, "homocyclic_sylows": homocyclic })))
    })?;
    finish(r, "Sol = QSol for an abelian group exactly when every Sylow subgroup is homocyclic");
    Ok(())
}

fn quotient_solitary_free_groups(r: &mut VerificationResult) -> Result<()> {
    let nilpotent = entries(&["nilpotent_le_64"])?;
    sweep(r, &nilpotent, |_, g| {
        let free = is_quotient_solitary_free(g)?;
        Ok((free != is_elementary_abelian(g)).then(|| json!({ "quotient_solitary_free": free, "elementary_abelian": is_elementary_abelian(g) })))
    })?;
    if r.status == Status::Refuted {
        return Ok(());
    }
    let general = entries(&["general_le_64", "large"])?;
    sweep(r, &general, |_, g| {
        let free = is_quotient_solitary_free(g)?;
        Ok((free && !(is_perfect(g) || is_elementary_abelian(g))).then(|| json!({ "quotient_solitary_free": true })))
    })?;
    finish(r, "quotient-solitary-free groups are perfect or elementary abelian, and nilpotent ones are elementary abelian");
    Ok(())
}

fn duality_anti_isomorphism(r: &mut VerificationResult) -> Result<()> {
    let items = abelian_p_groups()?;
    sweep(r, &items, |spec, g| {
        let pres = abelian_presentation(spec, g)?;
        let single = verify_qsol_sol_duality(&pres)?;
        if single.status != Status::Verified {
            return Ok(single.witness);
        }
        let back: SubgroupFamily = sol(g)?.iter().map(|h| delta(&pres, h)).collect();
        Ok((back != *qsol(g)?).then(|| json!({ "delta_of_sol": family_json(&back) })))
    })?;
    finish(r, "delta maps QSol onto Sol and back, fixing QSol under delta twice");
    Ok(())
}

fn baer_duality(r: &mut VerificationResult) -> Result<()> {
    let items = entries(&["abelian_le_64"])?;
    sweep(r, &items, |spec, g| {
        let pres = abelian_presentation(spec, g)?;
        if let Some(h) = find_involution_failure(&pres)? {
            return Ok(Some(json!({ "not_an_involution_at": subgroup_json(&h) })));
        }
        Ok(find_quotient_duality_failure(&pres)?.map(|h| json!({ "isomorphism_fails_at": subgroup_json(&h) })))
    })?;
    finish(r, "H = G/delta(H) and delta(H) = G/H up to isomorphism for every subgroup, with delta an order-reversing involution");
    Ok(())
}

fn minimal_characteristic_probe(r: &mut VerificationResult) -> Result<()> {
    let items = entries(&["abelian_p_le_32"])?;
    let outcomes: Vec<Result<Value>> = items
        .par_iter()
        .map(|(spec, g)| {
            let pres = abelian_presentation(spec, g)?;
            let chars = characteristic_subgroups(g)?;
            let nontrivial: Vec<&Subgroup> = chars.iter().filter(|h| !h.is_trivial()).collect();
            let minimal: Vec<&Subgroup> = nontrivial
                .iter()
                .filter(|h| !nontrivial.iter().any(|k| k.order() < h.order() && k.is_subgroup_of(h)))
                .copied()
                .collect();
            let phi = frattini(g)?;
            let delta_min_is_phi = minimal.len() == 1 && delta(&pres, minimal[0]) == phi;
            let omega1 = omega(g, 1)?;
            Ok(json!({
                "group": spec,
                "minimal_count": minimal.len(),
                "minimal": minimal.iter().map(|h| subgroup_json(h)).collect::<Vec<_>>(),
                "delta_of_minimal_is_frattini": delta_min_is_phi,
                "delta_of_omega1_is_frattini": delta(&pres, &omega1) == phi,
                "omega1_is_solitary": sol(g)?.contains(&omega1),
            }))
        })
        .collect();
    let rows = outcomes.into_iter().collect::<Result<Vec<Value>>>()?;
    let count = |key: &str| rows.iter().filter(|v| v[key] == Value::Bool(true)).count();
    let unique = rows.iter().filter(|v| v["minimal_count"] == json!(1)).count();
    r.groups_checked = rows.len();
    r.narrative = format!(
        "{} of {} groups have a unique minimal nontrivial characteristic subgroup M; delta(M) = Phi(G) in {}; delta(Omega_1) = Phi(G) in {}",
        unique,
        rows.len(),
        count("delta_of_minimal_is_frattini"),
        count("delta_of_omega1_is_frattini")
    );
    let first_failure = rows.iter().find(|v| v["delta_of_minimal_is_frattini"] == Value::Bool(false)).cloned();
    r.details = json!({
        "groups": rows.len(),
        "unique_minimal": unique,
        "delta_of_minimal_is_frattini": count("delta_of_minimal_is_frattini"),
        "delta_of_omega1_is_frattini": count("delta_of_omega1_is_frattini"),
        "first_failure": first_failure,
        "rows": rows,
    });
    Ok(())
}

type Runner = fn(&mut VerificationResult) -> Result<()>;

/// One verifiable statement with its corpus and expected outcome.
pub struct Claim {
    pub id: &'static str,
    pub name: &'static str,
    pub expected: Status,
    pub corpus: &'static str,
    run: Runner,
}

macro_rules! claim {
    ($id:literal, $name:literal, $expected:ident, $corpus:literal, $run:path) => {
        Claim { id: $id, name: $name, expected: Status::$expected, corpus: $corpus, run: $run }
    };
}

static CLAIMS: &[Claim] = &[
    claim!("dihedral-example", "dihedral QSol formula", Verified, "dihedral", dihedral_example),
    claim!("d8-remark", "D8 separates Sol and QSol", Verified, "D8", d8_separation),
    claim!("prop-2.1", "QSol meets are intersections", Verified, "general_le_64 + large", qsol_meets_are_intersections),
    claim!("prop-2.2", "quotient solitude is transitive", Verified, "general_le_64 + large", transitivity),
    claim!("prop-2.3", "projections preserve QSol", Refuted, "D6xD10", projection_claim),
    claim!("d12-remark", "D12 projection count", Probe, "D12", d12_projection_count),
    claim!("qsol-normal-remark", "distinct normal orders give QSol = N(G)", Verified, "general_le_64 + large", distinct_normal_orders),
    claim!("derived-remark", "derived subgroup lies in QSol", Verified, "general_le_64 + large", derived_subgroup_in_qsol),
    claim!("eq-2", "QSol of nilpotent products", Verified, "coprime_pairs + nilpotent_le_48", nilpotent_product),
    claim!("prop-2.4", "Frattini subgroup lies in QSol", Verified, "p-groups of nilpotent_le_64", frattini_in_qsol),
    claim!("prop-2.4-maximality", "Frattini subgroup is maximal in QSol", Probe, "p-groups of nilpotent_le_64", frattini_maximality),
    claim!("cor-2.5", "Frattini series and maximal QSol members", Verified, "nilpotent_le_64", frattini_series_and_maximals),
    claim!("cor-2.6", "QSol = N(G) iff cyclic", Verified, "nilpotent_le_48", nilpotent_cyclic),
    claim!("maximal-qsol-remark", "maximal subgroup in QSol iff cyclic", Verified, "p-groups of nilpotent_le_64", maximal_subgroup_in_qsol),
    claim!("s2n-remark", "semidihedral maximal subgroups", Probe, "semidihedral", semidihedral_probe),
    claim!("char-remark", "QSol members are characteristic", Verified, "general_le_64", qsol_characteristic),
    claim!("lemma-3.2", "proper QSol members sit in the Frattini subgroup", Verified, "abelian_p_le_64", frattini_containment),
    claim!("thm-3.3", "abelian p-group chains", Verified, "abelian_p_le_64", abelian_chains),
    claim!("correction-thm-1", "solitary subgroups are omega subgroups", Verified, "abelian_p_le_64", sol_is_omega),
    claim!("z2z4-example", "Z2xZ4 chains", Verified, "Ab(2:[1,2])", z2z4_example),
    claim!("z4z4-remark", "Z4xZ4 has the same QSol shape", Verified, "Ab(2:[1,2]), Ab(2:[2,2])", z4z4_same_shape),
    claim!("pi-e-remark", "element-order lattice", Verified, "abelian_le_64", element_order_lattice),
    claim!("cor-3.4", "abelian QSol is a product of chains", Verified, "abelian_le_64", product_of_chains),
    claim!("cor-3.5-decomposition", "hamiltonian QSol decomposition", Verified, "hamiltonian", hamiltonian_decomposition),
    claim!("cor-3.5", "quaternion part chain length", Probe, "quaternion_2_power", quaternion_chain_probe),
    claim!("cor-3.6", "Sol = QSol iff homocyclic Sylows", Verified, "abelian_le_100", homocyclic_criterion),
    claim!("thm-3.7", "quotient-solitary-free groups", Verified, "nilpotent_le_64 + general_le_64 + large", quotient_solitary_free_groups),
    claim!("prop-3.1", "duality exchanges QSol and Sol", Verified, "abelian_p_le_64", duality_anti_isomorphism),
    claim!("eq-4", "annihilator duality isomorphisms", Verified, "abelian_le_64", baer_duality),
    claim!("char-min-remark", "minimal characteristic subgroup", Probe, "abelian_p_le_32", minimal_characteristic_probe),
];

pub fn claims() -> &'static [Claim] {
    CLAIMS
}

fn run_claim(c: &Claim) -> Result<VerificationResult> {
    let mut r = VerificationResult::new(c.id, if c.expected == Status::Probe { Status::Probe } else { Status::Verified });
    r.expected = c.expected;
    r.name = c.name.to_string();
    r.corpus = c.corpus.to_string();
    (c.run)(&mut r)?;
    Ok(r)
}

pub fn verify(id: &str) -> Result<VerificationResult> {
    let c = CLAIMS.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownClaim(id.to_string()))?;
    run_claim(c)
}

/// Every claim, in registry order.
pub fn verify_all() -> Result<Vec<VerificationResult>> {
    CLAIMS.par_iter().map(run_claim).collect()
}

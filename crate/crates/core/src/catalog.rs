//! Readable isomorphism-type labels in the spec grammar.
//!
//! Abelian groups are labelled from their invariants (`C2xC4`). Nonabelian
//! groups are matched against a fixed library of small named groups; a group
//! with no match becomes `order<n>#fp<hash>`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::arith::factorize;
use crate::group::Group;
use crate::iso::{are_isomorphic, fingerprint};
use crate::limits::DEFAULT_MAX_ORDER;
use crate::spec::build_group;

const BASES: &[&str] = &[
    "D6", "D8", "Q8", "D10", "D12", "D14", "D16", "SD16", "D18", "D20", "S4", "D24", "D32", "SD32",
];
const FACTORS: &[&str] = &[
    "C2", "C3", "C4", "C2xC2", "C5", "C6", "C7", "C8", "C2xC4", "C2xC2xC2", "C9", "C3xC3", "C10", "C2xC6",
];

/// Nonabelian library in preference order: single families before products.
fn library_specs() -> Vec<String> {
    let mut out: Vec<String> = (3..=DEFAULT_MAX_ORDER / 2).map(|n| format!("D{}", 2 * n)).collect();
    out.extend(["Q8", "SD16", "SD32", "SD64", "SD128", "S4", "S5"].map(String::from));
    for b in BASES {
        out.extend(FACTORS.iter().map(|f| format!("{b}x{f}")));
    }
    for (i, a) in BASES.iter().enumerate() {
        out.extend(BASES[i..].iter().map(|b| format!("{a}x{b}")));
    }
    out
}

struct Library {
    by_fingerprint: BTreeMap<u64, Vec<(String, Group)>>,
}

fn library() -> &'static Library {
    static LIB: OnceLock<Library> = OnceLock::new();
    LIB.get_or_init(|| {
        let mut by_fingerprint: BTreeMap<u64, Vec<(String, Group)>> = BTreeMap::new();
        for spec in library_specs() {
            // Entries past a lowered order cap are simply absent.
            let Ok(g) = build_group(&spec) else { continue };
            let key = fingerprint(&g).stable_hash();
            let bucket = by_fingerprint.entry(key).or_default();
            if !bucket.iter().any(|(_, h)| are_isomorphic(h, &g).is_some()) {
                bucket.push((spec, g));
            }
        }
        Library { by_fingerprint }
    })
}

/// `C<m>` factors of an abelian group, ascending per prime.
pub fn abelian_invariants(group: &Group) -> Vec<u64> {
    let orders = group.element_orders();
    let mut out = Vec::new();
    for (p, a) in factorize(group.order() as u64) {
        // omega[k] = log_p |{g : g^{p^k} = 1, g a p-element}|
        let mut omega = vec![0u32];
        for k in 1..=a {
            let bound = p.pow(k);
            let count = orders.iter().filter(|&&o| bound % o == 0).count() as u64;
            omega.push(count.ilog(p));
        }
        // Number of factors of exponent at least k is omega[k] - omega[k-1].
        let at_least: Vec<u32> = (1..=a as usize).map(|k| omega[k] - omega[k - 1]).collect();
        for k in (1..=a as usize).rev() {
            let next = at_least.get(k).copied().unwrap_or(0);
            for _ in 0..(at_least[k - 1] - next) {
                out.push(p.pow(k as u32));
            }
        }
    }
    let mut grouped: Vec<u64> = Vec::new();
    for (p, _) in factorize(group.order() as u64) {
        let mut part: Vec<u64> = out.iter().copied().filter(|m| m % p == 0).collect();
        part.sort_unstable();
        grouped.extend(part);
    }
    grouped
}

pub fn type_label(group: &Group) -> String {
    if group.order() == 1 {
        return "C1".into();
    }
    if group.is_abelian() {
        let parts: Vec<String> = abelian_invariants(group).iter().map(|m| format!("C{m}")).collect();
        return parts.join("x");
    }
    let fp = fingerprint(group);
    if let Some(bucket) = library().by_fingerprint.get(&fp.stable_hash()) {
        for (name, candidate) in bucket {
            if are_isomorphic(candidate, group).is_some() {
                return name.clone();
            }
        }
    }
    format!("order{}#fp{:016x}", group.order(), fp.stable_hash())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(spec: &str) -> String {
        type_label(&build_group(spec).unwrap())
    }

    #[test]
    fn abelian_labels() {
        assert_eq!(label("C1"), "C1");
        assert_eq!(label("C6"), "C2xC3");
        assert_eq!(label("Ab(2:[2,1])"), "C2xC4");
        assert_eq!(label("C4xC2xC9"), "C2xC4xC9");
        assert_eq!(label("Ab(2:[1,1,1])"), "C2xC2xC2");
    }

    #[test]
    fn nonabelian_labels() {
        assert_eq!(label("S3"), "D6");
        assert_eq!(label("D6xC2"), "D12");
        assert_eq!(label("Q8"), "Q8");
        assert_eq!(label("C2xQ8"), "Q8xC2");
        assert_eq!(label("SD16"), "SD16");
        assert!(label("S4xC5").starts_with("S4x"));
        let a4 = crate::subgroups::derived_subgroup(&build_group("S4").unwrap());
        let (g, _) = crate::iso::subgroup_abstract_group(&build_group("S4").unwrap(), &a4).unwrap();
        assert!(type_label(&g).starts_with("order12#fp"));
    }
}

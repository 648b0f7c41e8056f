//! The frozen group corpora from `corpus.toml`, and a process-wide cache of
//! the groups they name.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Deserialize;

use crate::group::Group;
use crate::spec::build_group;
use crate::{Error, Result};

const MANIFEST: &str = include_str!("../corpus.toml");

#[derive(Debug, Clone, Deserialize)]
pub struct SetDef {
    #[serde(default)]
    pub include: Vec<String>,
    pub max_order: Option<usize>,
    pub specs: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Manifest {
    pub coprime_pairs: Vec<(String, String)>,
    pub sets: BTreeMap<String, SetDef>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest> {
        toml::from_str(text).map_err(|e| Error::Manifest(e.to_string()))
    }

    /// The specs of a set with includes expanded, in manifest order without
    /// repeats, filtered by `max_order`.
    pub fn specs(&self, name: &str) -> Result<Vec<String>> {
        let mut out = Vec::new();
        self.collect(name, &mut out, 0)?;
        let mut seen = std::collections::HashSet::new();
        out.retain(|s| seen.insert(s.clone()));
        let def = &self.sets[name];
        if let Some(cap) = def.max_order {
            let mut kept = Vec::with_capacity(out.len());
            for s in out {
                if spec_order(&s)? <= cap {
                    kept.push(s);
                }
            }
            out = kept;
        }
        Ok(out)
    }

    fn collect(&self, name: &str, out: &mut Vec<String>, depth: usize) -> Result<()> {
        if depth > 8 {
            return Err(Error::Manifest(format!("include cycle through `{name}`")));
        }
        let def = self
            .sets
            .get(name)
            .ok_or_else(|| Error::Manifest(format!("unknown corpus set `{name}`")))?;
        for inc in &def.include {
            self.collect(inc, out, depth + 1)?;
        }
        out.extend(def.specs.iter().cloned());
        Ok(())
    }
}

/// Order of a spec without building its table.
pub fn spec_order(text: &str) -> Result<usize> {
    use crate::spec::GroupSpec;
    fn order(s: &GroupSpec) -> usize {
        match s {
            GroupSpec::Cyclic(n) | GroupSpec::Dihedral(n) | GroupSpec::Semidihedral(n) => *n,
            GroupSpec::Quaternion => 8,
            GroupSpec::Symmetric(n) => (1..=*n).product(),
            GroupSpec::Abelian { prime, exponents } => {
                exponents.iter().map(|&a| prime.saturating_pow(a) as usize).product()
            }
            GroupSpec::Product(parts) => parts.iter().map(order).product(),
        }
    }
    Ok(order(&GroupSpec::parse(text)?))
}

pub fn manifest() -> &'static Manifest {
    static PARSED: OnceLock<Manifest> = OnceLock::new();
    PARSED.get_or_init(|| Manifest::parse(MANIFEST).expect("bundled corpus manifest parses"))
}

pub fn specs(name: &str) -> Result<Vec<String>> {
    manifest().specs(name)
}

fn cache() -> &'static Mutex<HashMap<String, Arc<Group>>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<Group>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds a spec once per process; later calls share the group and its memo.
pub fn group(spec: &str) -> Result<Arc<Group>> {
    if let Some(g) = cache().lock().expect("corpus cache").get(spec) {
        return Ok(Arc::clone(g));
    }
    let built = Arc::new(build_group(spec)?);
    let mut map = cache().lock().expect("corpus cache");
    Ok(Arc::clone(map.entry(spec.to_string()).or_insert(built)))
}

pub fn groups(name: &str) -> Result<Vec<Arc<Group>>> {
    specs(name)?.iter().map(|s| group(s)).collect()
}

pub fn coprime_pairs() -> &'static [(String, String)] {
    &manifest().coprime_pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;

    fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for k in (1..=n.min(max)).rev() {
            for mut rest in partitions(n - k, k) {
                rest.push(k);
                out.push(rest);
            }
        }
        out
    }

    fn ab(p: u64, parts: &[u32]) -> String {
        let list: Vec<String> = parts.iter().map(u32::to_string).collect();
        format!("Ab({p}:[{}])", list.join(","))
    }

    fn p_groups(primes: &[u64], cap: u64) -> Vec<String> {
        let mut out = Vec::new();
        for &p in primes {
            let mut e = 1;
            while p.pow(e) <= cap {
                for mut part in partitions(e, e) {
                    part.sort_unstable();
                    out.push(ab(p, &part));
                }
                e += 1;
            }
        }
        out
    }

    fn abelian(cap: u64) -> Vec<String> {
        let mut out = vec!["C1".to_string()];
        for n in 2..=cap {
            let mut combos = vec![Vec::<String>::new()];
            for (p, e) in factorize(n) {
                let mut next = Vec::new();
                for c in &combos {
                    for mut q in partitions(e, e) {
                        q.sort_unstable();
                        let mut c = c.clone();
                        c.push(ab(p, &q));
                        next.push(c);
                    }
                }
                combos = next;
            }
            out.extend(combos.into_iter().map(|c| c.join("x")));
        }
        out
    }

    #[test]
    fn generated_sets_match_their_definitions() {
        assert_eq!(specs("abelian_p_2_3_le_64").unwrap(), p_groups(&[2, 3], 64));
        assert_eq!(specs("abelian_p_le_64").unwrap(), p_groups(&[2, 3, 5, 7], 64));
        assert_eq!(specs("abelian_p_le_32").unwrap(), p_groups(&[2, 3, 5, 7], 32));
        assert_eq!(specs("abelian_le_64").unwrap(), abelian(64));
        assert_eq!(specs("abelian_le_100").unwrap(), abelian(100));
        assert_eq!(specs("abelian_p_2_3_le_64").unwrap().len(), 35);
    }

    #[test]
    fn includes_and_filters() {
        let nil = specs("nilpotent_le_48").unwrap();
        assert!(nil.iter().all(|s| spec_order(s).unwrap() <= 48));
        assert!(nil.contains(&"Q8xC2xC3".to_string()) && nil.contains(&"Ab(2:[1,1])".to_string()));
        assert!(!nil.contains(&"Ab(7:[2])".to_string()));
        assert_eq!(specs("dihedral").unwrap().len(), 10);
        assert!(specs("missing").is_err());
    }

    #[test]
    fn every_spec_parses_and_fits_the_cap() {
        for name in manifest().sets.keys() {
            for s in specs(name).unwrap() {
                assert!(spec_order(&s).unwrap() <= crate::limits::DEFAULT_MAX_ORDER, "{s}");
            }
        }
        for (a, b) in coprime_pairs() {
            let (m, n) = (spec_order(a).unwrap() as u64, spec_order(b).unwrap() as u64);
            assert_eq!(crate::arith::gcd(m, n), 1);
            assert!(m <= 20 && n <= 20);
        }
    }

    #[test]
    fn cache_shares_groups() {
        let a = group("D8").unwrap();
        let b = group("D8").unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}

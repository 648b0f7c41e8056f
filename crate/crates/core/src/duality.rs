//! The autoduality of a finite abelian group given by the diagonal pairing
//! `<x, y> = Σ x_i y_i / p_i^{α_i} (mod 1)`, and its annihilator map `δ`.

use serde::Serialize;
use serde_json::json;

use crate::group::{Element, Group};
use crate::iso::are_isomorphic;
use crate::quotient::quotient_unchecked;
use crate::solitary::{qsol, sol};
use crate::subgroups::{all_subgroups, Subgroup};
use crate::verify::{subgroup_json, Status, VerificationResult};
use crate::{Error, Result};

/// `∏ Z_{p^α}` over the factors, encoded exactly as [`Group::abelian`] does:
/// an element index is the mixed-radix number of its residue tuple, first
/// factor most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianPresentation {
    factors: Vec<(u64, u32)>,
    moduli: Vec<u64>,
    exponent: u64,
}

impl AbelianPresentation {
    pub fn new(factors: &[(u64, u32)]) -> Result<AbelianPresentation> {
        // Group::abelian performs the validation and the cap check.
        Group::abelian(factors)?;
        let moduli: Vec<u64> = factors.iter().map(|&(p, a)| p.pow(a)).collect();
        let exponent = moduli.iter().fold(1, |acc, &m| crate::arith::lcm(acc, m));
        Ok(AbelianPresentation { factors: factors.to_vec(), moduli, exponent })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().product::<u64>() as usize
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn group(&self) -> Result<Group> {
        Group::abelian(&self.factors)
    }

    pub fn to_tuple(&self, mut g: Element) -> Vec<u64> {
        let mut out = vec![0; self.moduli.len()];
        for (slot, &m) in out.iter_mut().zip(&self.moduli).rev() {
            *slot = g as u64 % m;
            g /= m as usize;
        }
        out
    }

    pub fn from_tuple(&self, tuple: &[u64]) -> Element {
        tuple
            .iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&x, &m)| acc * m as usize + (x % m) as usize)
    }
}

/// A residue `numerator / denominator` mod 1 with `denominator = exp(G)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairingValue {
    pub numerator: u64,
    pub denominator: u64,
}

impl PairingValue {
    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    /// Lowest terms, with `0` as `0/1`.
    pub fn reduced(&self) -> (u64, u64) {
        let g = crate::arith::gcd(self.numerator, self.denominator);
        (self.numerator / g, self.denominator / g)
    }
}

pub fn pairing(pres: &AbelianPresentation, x: Element, y: Element) -> PairingValue {
    let (xs, ys) = (pres.to_tuple(x), pres.to_tuple(y));
    let e = pres.exponent;
    let numerator = xs
        .iter()
        .zip(&ys)
        .zip(&pres.moduli)
        .fold(0, |acc, ((&a, &b), &m)| (acc + (a * b % m) * (e / m)) % e);
    PairingValue { numerator, denominator: e }
}

/// The annihilator `{g : <g, h> = 0 for all h ∈ H}`.
pub fn delta(pres: &AbelianPresentation, h: &Subgroup) -> Subgroup {
    let elements = h.elements();
    let members = (0..pres.order()).filter(|&g| elements.iter().all(|&k| pairing(pres, g, k).is_zero()));
    Subgroup::from_set_unchecked(crate::bitset::ElementSet::from_indices(pres.order(), members))
}

/// First subgroup where `δ` fails to be an order-reversing involution with
/// `|δ(H)|·|H| = |G|`.
pub fn find_involution_failure(pres: &AbelianPresentation) -> Result<Option<Subgroup>> {
    let group = pres.group()?;
    let all = all_subgroups(&group)?;
    let images: Vec<Subgroup> = all.iter().map(|h| delta(pres, h)).collect();
    for (i, h) in all.iter().enumerate() {
        let d = &images[i];
        if d.order() * h.order() != group.order() || delta(pres, d) != *h {
            return Ok(Some(h.clone()));
        }
        for (j, k) in all.iter().enumerate() {
            if h.is_subgroup_of(k) && !images[j].is_subgroup_of(d) {
                return Ok(Some(h.clone()));
            }
        }
    }
    Ok(None)
}

/// First subgroup where `H ≅ G/δ(H)` or `δ(H) ≅ G/H` fails.
pub fn find_quotient_duality_failure(pres: &AbelianPresentation) -> Result<Option<Subgroup>> {
    let group = pres.group()?;
    for h in all_subgroups(&group)? {
        let d = delta(pres, h);
        let (h_abs, _) = crate::iso::subgroup_abstract_group(&group, h)?;
        let (d_abs, _) = crate::iso::subgroup_abstract_group(&group, &d)?;
        let g_mod_d = quotient_unchecked(&group, &d)?.group;
        let g_mod_h = quotient_unchecked(&group, h)?.group;
        if are_isomorphic(&h_abs, &g_mod_d).is_none() || are_isomorphic(&d_abs, &g_mod_h).is_none() {
            return Ok(Some(h.clone()));
        }
    }
    Ok(None)
}

/// `δ(QSol(G)) = Sol(G)` as subgroup sets and `δ²` fixes each QSol member,
/// for an abelian p-group.
pub fn verify_qsol_sol_duality(pres: &AbelianPresentation) -> Result<VerificationResult> {
    let group = pres.group()?;
    if group.order() > 1 && crate::arith::prime_of_power(group.order() as u64).is_none() {
        return Err(Error::NotAbelianPGroup(format!("{} is not a p-group", group.label())));
    }
    let q = qsol(&group)?;
    let s = sol(&group)?;
    let image: crate::subgroups::SubgroupFamily = q.iter().map(|h| delta(pres, h)).collect();
    let unfixed = q.iter().find(|h| delta(pres, &delta(pres, h)) != **h);
    let label = group.label().to_string();
    let mut result = VerificationResult::new("prop-3.1", Status::Verified);
    result.groups_checked = 1;
    if let Some(h) = unfixed {
        result.refute(
            json!({ "group": label, "qsol_member": subgroup_json(h), "reason": "delta twice moves it" }),
            format!("δ² does not fix a QSol member of {label}"),
        );
    } else if &image != s {
        let missing = s.iter().find(|h| !image.contains(h)).or_else(|| image.iter().find(|h| !s.contains(h)));
        result.refute(
            json!({ "group": label, "subgroup": missing.map(subgroup_json), "reason": "δ(QSol) and Sol differ" }),
            format!("δ(QSol) differs from Sol in {label}"),
        );
    } else {
        result.narrative = format!(
            "δ maps the {} members of QSol({label}) onto Sol({label}) and δ² fixes each",
            q.len()
        );
    }
    Ok(result)
}

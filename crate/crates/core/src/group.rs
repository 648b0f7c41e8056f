//! Finite groups as dense Cayley tables, and the standard families.
//!
//! Every group is an immutable table over element indices `0..order`. The
//! constructors fix a canonical element ordering so that subgroup bitsets and
//! reports are reproducible:
//!
//! | family | ordering |
//! |---|---|
//! | `C<n>` | `i` is the residue `i mod n` |
//! | `D<2n>` | `x^0..x^{n-1}`, then `x^0 y..x^{n-1} y` (named by **order**: `D8` has 8 elements) |
//! | `Q8` | `x^0..x^3`, then `x^0 y..x^3 y` with `x^4 = 1`, `y^2 = x^2`, `y x y^-1 = x^-1` |
//! | `SD<2^n>` | `a^0..a^{m-1}`, then `a^i b`, `m = 2^{n-1}`, `b a b = a^{m/2 - 1}` |
//! | `Ab(p:[a,..])` | mixed radix over the factors, first factor most significant |
//! | `S<n>` | permutations of `0..n` in lexicographic order, `(g h)(i) = g(h(i))` |
//! | `GxH` | pair `(g, h)` at index `g * |H| + h` |

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::arith::{is_prime, lcm};
use crate::iso::Fingerprint;
use crate::limits::{check_order, VALIDATE_AT_CONSTRUCTION};
use crate::subgroups::SubgroupFamily;
use crate::{Error, Result};

/// An element of a group, identified by its index in the Cayley table.
pub type Element = usize;

/// Per-group caches. Filled lazily; cloning a group clones whatever has been
/// computed so far.
#[derive(Clone, Default)]
pub(crate) struct Memo {
    pub element_orders: OnceLock<Vec<u64>>,
    pub generators: OnceLock<Vec<Element>>,
    pub subgroups: OnceLock<SubgroupFamily>,
    pub normal: OnceLock<SubgroupFamily>,
    pub fingerprint: OnceLock<Fingerprint>,
    pub centralizer_sizes: OnceLock<Vec<usize>>,
    pub sol: OnceLock<SubgroupFamily>,
    pub qsol: OnceLock<SubgroupFamily>,
}

#[derive(Clone)]
pub struct Group {
    order: usize,
    table: Vec<u32>,
    identity: Element,
    inverses: Vec<Element>,
    label: String,
    pub(crate) memo: Memo,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.identity == other.identity && self.table == other.table
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

/// Element order ↦ number of elements of that order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OrderHistogram(pub BTreeMap<u64, usize>);

impl OrderHistogram {
    pub fn count(&self, order: u64) -> usize {
        self.0.get(&order).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }
}

impl Group {
    /// Builds a group from a full multiplication table. Structural checks
    /// always run; associativity is checked when `order <= 64`.
    pub fn from_table(rows: Vec<Vec<usize>>, label: impl Into<String>) -> Result<Group> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for (g, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidTable(format!("row {g} has length {}", row.len())));
            }
            table.extend(row.iter().map(|&x| x as u32));
        }
        Self::from_flat(order, table, label.into())
    }

    pub(crate) fn from_flat(order: usize, table: Vec<u32>, label: String) -> Result<Group> {
        check_order(order)?;
        if table.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e * order + g] as usize == g && table[g * order + e] as usize == g))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;
        let mut inverses = vec![usize::MAX; order];
        for g in 0..order {
            let row = &table[g * order..(g + 1) * order];
            let h = row
                .iter()
                .position(|&x| x as usize == identity)
                .ok_or_else(|| Error::InvalidTable(format!("element {g} has no right inverse")))?;
            if table[h * order + g] as usize != identity {
                return Err(Error::InvalidTable(format!("inverse of {g} is not two-sided")));
            }
            inverses[g] = h;
        }
        let group = Group {
            order,
            table,
            identity,
            inverses,
            label,
            memo: Memo::default(),
        };
        if order <= VALIDATE_AT_CONSTRUCTION {
            group.check_associative()?;
        }
        Ok(group)
    }

    /// Builds a group from a closed product `op` on `0..order`.
    fn from_op(order: usize, label: String, op: impl Fn(usize, usize) -> usize) -> Result<Group> {
        check_order(order)?;
        let mut table = Vec::with_capacity(order * order);
        for g in 0..order {
            for h in 0..order {
                table.push(op(g, h) as u32);
            }
        }
        Self::from_flat(order, table, label)
    }

    /// Full validation: range, two-sided identity and inverses, associativity.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        if self.table.len() != n * n || self.table.iter().any(|&x| x as usize >= n) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        for g in 0..n {
            if self.mul(self.identity, g) != g || self.mul(g, self.identity) != g {
                return Err(Error::InvalidTable(format!("identity fails on {g}")));
            }
            let gi = self.inverses[g];
            if self.mul(g, gi) != self.identity || self.mul(gi, g) != self.identity {
                return Err(Error::InvalidTable(format!("inverse fails on {g}")));
            }
        }
        self.check_associative()
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidTable(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Group {
        self.label = label.into();
        self
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, g: Element, h: Element) -> Element {
        self.table[g * self.order + h] as usize
    }

    #[inline]
    pub fn inv(&self, g: Element) -> Element {
        self.inverses[g]
    }

    /// `g h g^-1`.
    #[inline]
    pub fn conjugate(&self, g: Element, h: Element) -> Element {
        self.mul(self.mul(g, h), self.inverses[g])
    }

    /// `g^-1 h^-1 g h`.
    pub fn commutator(&self, g: Element, h: Element) -> Element {
        self.mul(self.mul(self.inverses[g], self.inverses[h]), self.mul(g, h))
    }

    pub fn pow(&self, g: Element, k: u64) -> Element {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (g + 1..self.order).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    /// Least `k >= 1` with `g^k = 1`.
    pub fn element_order(&self, g: Element) -> u64 {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Orders of all elements, indexed by element.
    pub fn element_orders(&self) -> &[u64] {
        self.memo
            .element_orders
            .get_or_init(|| self.elements().map(|g| self.element_order(g)).collect())
    }

    pub fn order_histogram(&self) -> OrderHistogram {
        let mut map = BTreeMap::new();
        for &o in self.element_orders() {
            *map.entry(o).or_insert(0) += 1;
        }
        OrderHistogram(map)
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.element_orders().iter().fold(1, |acc, &o| lcm(acc, o))
    }

    // Constructors.

    pub fn cyclic(n: usize) -> Result<Group> {
        if n == 0 {
            return Err(Error::InvalidParameter("cyclic group needs n >= 1".into()));
        }
        Self::from_op(n, format!("C{n}"), |a, b| (a + b) % n)
    }

    /// The dihedral group with `order` elements (`D8` is the symmetry group of the square).
    pub fn dihedral(order: usize) -> Result<Group> {
        if !order.is_multiple_of(2) || order < 6 {
            return Err(Error::InvalidParameter(format!(
                "dihedral group order must be even and at least 6, got {order}"
            )));
        }
        let n = order / 2;
        Self::split_metacyclic(n, n - 1, format!("D{order}"))
    }

    /// `C_m ⋊ C_2` with the involution acting as `a ↦ a^twist`.
    fn split_metacyclic(m: usize, twist: usize, label: String) -> Result<Group> {
        Self::from_op(2 * m, label, move |g, h| {
            let (i, j) = (g % m, g / m);
            let (k, l) = (h % m, h / m);
            let k = if j == 1 { (k * twist) % m } else { k };
            (i + k) % m + ((j + l) % 2) * m
        })
    }

    pub fn quaternion() -> Result<Group> {
        Self::from_op(8, "Q8".into(), |g, h| {
            let (i, j) = (g % 4, g / 4);
            let (k, l) = (h % 4, h / 4);
            // y x^k = x^{-k} y, and y^2 = x^2.
            let k = if j == 1 { (4 - k) % 4 } else { k };
            let mut e = i + k;
            if j + l == 2 {
                e += 2;
            }
            e % 4 + ((j + l) % 2) * 4
        })
    }

    pub fn semidihedral(order: usize) -> Result<Group> {
        if !order.is_power_of_two() || order < 16 {
            return Err(Error::InvalidParameter(format!(
                "semidihedral group order must be a power of two >= 16, got {order}"
            )));
        }
        let m = order / 2;
        Self::split_metacyclic(m, m / 2 - 1, format!("SD{order}"))
    }

    /// Direct product of cyclic groups `Z_{p^a}`, one per `(p, a)` factor, in
    /// the given order.
    pub fn abelian(factors: &[(u64, u32)]) -> Result<Group> {
        let mut moduli = Vec::with_capacity(factors.len());
        let mut order: usize = 1;
        for &(p, a) in factors {
            if !is_prime(p) {
                return Err(Error::InvalidParameter(format!("{p} is not prime")));
            }
            if a == 0 {
                return Err(Error::InvalidParameter("exponents must be at least 1".into()));
            }
            let m = p
                .checked_pow(a)
                .and_then(|m| usize::try_from(m).ok())
                .ok_or_else(|| Error::CapExceeded { order: usize::MAX, cap: crate::limits::max_order() })?;
            order = order.checked_mul(m).ok_or(Error::CapExceeded {
                order: usize::MAX,
                cap: crate::limits::max_order(),
            })?;
            check_order(order)?;
            moduli.push(m);
        }
        let label = abelian_label(factors);
        Self::from_op(order, label, |g, h| {
            let mut out = 0;
            let mut stride = 1;
            let (mut g, mut h) = (g, h);
            for &m in moduli.iter().rev() {
                out += ((g % m + h % m) % m) * stride;
                stride *= m;
                g /= m;
                h /= m;
            }
            out
        })
    }

    pub fn symmetric(n: usize) -> Result<Group> {
        if !(1..=5).contains(&n) {
            return Err(Error::InvalidParameter(format!("symmetric group degree must be in 1..=5, got {n}")));
        }
        let perms = permutations(n);
        let index: BTreeMap<Vec<usize>, usize> =
            perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Self::from_op(perms.len(), format!("S{n}"), |g, h| {
            let composed: Vec<usize> = (0..n).map(|i| perms[g][perms[h][i]]).collect();
            index[&composed]
        })
    }

    pub fn direct_product(g: &Group, h: &Group) -> Result<Group> {
        let order = g
            .order
            .checked_mul(h.order)
            .ok_or(Error::CapExceeded { order: usize::MAX, cap: crate::limits::max_order() })?;
        check_order(order)?;
        let m = h.order;
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let x = g.mul(a / m, b / m);
                let y = h.mul(a % m, b % m);
                table.push((x * m + y) as u32);
            }
        }
        // Products of valid groups are groups; skip the cubic check.
        let identity = g.identity * m + h.identity;
        let inverses = (0..order).map(|a| g.inv(a / m) * m + h.inv(a % m)).collect();
        Ok(Group {
            order,
            table,
            identity,
            inverses,
            label: format!("{}x{}", g.label, h.label),
            memo: Memo::default(),
        })
    }

    pub fn trivial() -> Group {
        Self::cyclic(1).expect("trivial group")
    }
}

/// Label in the `Ab(p:[..])` grammar, one block per run of equal primes.
pub(crate) fn abelian_label(factors: &[(u64, u32)]) -> String {
    if factors.is_empty() {
        return "C1".into();
    }
    let mut blocks: Vec<(u64, Vec<u32>)> = Vec::new();
    for &(p, a) in factors {
        match blocks.last_mut() {
            Some((q, exps)) if *q == p => exps.push(a),
            _ => blocks.push((p, vec![a])),
        }
    }
    blocks
        .iter()
        .map(|(p, exps)| {
            let list: Vec<String> = exps.iter().map(|a| a.to_string()).collect();
            format!("Ab({p}:[{}])", list.join(","))
        })
        .collect::<Vec<_>>()
        .join("x")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

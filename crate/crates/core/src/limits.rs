//! Process-wide size caps.
//!
//! Groups above [`max_order`] are refused by every constructor and by subgroup
//! enumeration; automorphism listing is refused above [`max_aut_order`].

use std::sync::atomic::{AtomicUsize, Ordering};

pub const DEFAULT_MAX_ORDER: usize = 200;
pub const DEFAULT_MAX_AUT_ORDER: usize = 64;
/// Constructors run the O(n^3) associativity check only up to this order.
pub const VALIDATE_AT_CONSTRUCTION: usize = 64;
/// Upper bound on the number of automorphisms [`crate::iso::automorphisms`] will list.
pub const MAX_LISTED_AUTOMORPHISMS: u128 = 1 << 20;

static MAX_ORDER: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_ORDER);
static MAX_AUT_ORDER: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_AUT_ORDER);

pub fn max_order() -> usize {
    MAX_ORDER.load(Ordering::Relaxed)
}

pub fn set_max_order(cap: usize) {
    MAX_ORDER.store(cap, Ordering::Relaxed);
}

pub fn max_aut_order() -> usize {
    MAX_AUT_ORDER.load(Ordering::Relaxed)
}

pub fn set_max_aut_order(cap: usize) {
    MAX_AUT_ORDER.store(cap, Ordering::Relaxed);
}

pub(crate) fn check_order(order: usize) -> crate::Result<()> {
    let cap = max_order();
    if order > cap {
        Err(crate::Error::CapExceeded { order, cap })
    } else {
        Ok(())
    }
}

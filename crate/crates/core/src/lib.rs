//! Solitary subgroups `Sol(G)` and normal subgroups with solitary quotients
//! `QSol(G)` of small finite groups, computed by brute force over Cayley
//! tables and checked against closed-form descriptions.
//!
//! Dihedral groups are named by their order: `D8` has 8 elements.

pub mod arith;
pub mod bitset;
pub mod catalog;
pub mod cli;
pub mod corpus;
pub mod duality;
pub mod error;
pub mod group;
pub mod iso;
pub mod lattice;
pub mod limits;
pub mod quotient;
pub mod solitary;
pub mod spec;
pub mod subgroups;
pub mod verify;

pub use error::{Error, Result};
pub use group::{Element, Group, OrderHistogram};
pub use iso::{are_isomorphic, IsoMap};
pub use lattice::FiniteLattice;
pub use subgroups::{Subgroup, SubgroupFamily};

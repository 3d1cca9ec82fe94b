//! Finite Galois quotients and their actions on character lattices.

mod group;
mod lattice;

pub use group::{build_group, FiniteGroup, GroupSpec, Subgroup, DEFAULT_GROUP_CAP};
pub use lattice::{same_group, validate_lattice, ActionInput, GammaLattice, LatticeMap};

use crate::cohom::{cohomology_with, Caps};
use crate::error::Result;

/// `H^1(Γ', L) = 0` for every subgroup `Γ'`.
pub fn is_coflasque(lattice: &GammaLattice) -> Result<bool> {
    is_coflasque_with(lattice, &Caps::default())
}

pub fn is_coflasque_with(lattice: &GammaLattice, caps: &Caps) -> Result<bool> {
    for h in lattice.group().subgroups() {
        let restricted = lattice.restrict(&h);
        if !cohomology_with(&restricted, 1, caps)?.group().is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `H^1(Γ', L^dual) = 0` for every subgroup `Γ'`.
pub fn is_flasque(lattice: &GammaLattice) -> Result<bool> {
    is_coflasque(&lattice.dual())
}

pub fn is_flasque_with(lattice: &GammaLattice, caps: &Caps) -> Result<bool> {
    is_coflasque_with(&lattice.dual(), caps)
}

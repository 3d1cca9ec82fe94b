//! Randomized Γ-lattices and equivariant maps for property checks.
//!
//! Lattices are direct sums of small indecomposable building blocks, then
//! conjugated by a random unimodular matrix so the basis is not adapted to the
//! decomposition.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exactlin::kernel_basis;
use crate::gmod::{FiniteGroup, GammaLattice, LatticeMap};
use crate::hyper::TwoTermComplex;
use crate::{Int, Matrix};

/// Deterministic generator for a seed; stable across platforms and releases.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `cyclicN` or `s3`.
pub fn named_group(name: &str) -> Option<Arc<FiniteGroup>> {
    let lower = name.to_ascii_lowercase();
    if lower == "s3" {
        return Some(Arc::new(FiniteGroup::s3()));
    }
    let n: usize = lower.strip_prefix("cyclic")?.parse().ok()?;
    FiniteGroup::cyclic(n).ok().map(Arc::new)
}

/// Companion matrix of the cyclotomic polynomial `Φ_d`, for `d <= 6`, `d != 5`.
fn cyclotomic_companion(d: usize) -> Option<Matrix> {
    let rows: &[&[i64]] = match d {
        1 => &[&[1]],
        2 => &[&[-1]],
        3 => &[&[0, -1], &[1, -1]],
        4 => &[&[0, -1], &[1, 0]],
        6 => &[&[0, -1], &[1, 1]],
        _ => return None,
    };
    Some(Matrix::from_i64(rows))
}

/// Indecomposable-ish lattices of rank at most `max_rank` over `group`.
pub fn building_blocks(group: &Arc<FiniteGroup>, max_rank: usize) -> Vec<GammaLattice> {
    let mut blocks = vec![GammaLattice::trivial(group, 1)];
    let n = group.size();
    for h in group.subgroups() {
        let index = n / h.order();
        if index == 2 {
            blocks.push(GammaLattice::sign(group, &h).expect("index-2 subgroup"));
        }
        if index < 2 || index > max_rank.max(1) + 1 {
            continue;
        }
        let perm = GammaLattice::coset_module(group, &h);
        if index <= max_rank {
            blocks.push(perm.clone());
        }
        let ones = Matrix::from_rows(&[vec![Int::from(1); index]], index).unwrap();
        let augmentation = perm
            .sublattice(&kernel_basis(&ones))
            .expect("augmentation ideal is stable");
        if augmentation.rank() >= 2 && augmentation.rank() <= max_rank {
            blocks.push(augmentation.dual());
            blocks.push(augmentation);
        }
    }
    if let Some(sigma) = group.cyclic_generator().filter(|_| group.generators().len() == 1) {
        debug_assert_eq!(group.generators()[0], sigma);
        for d in 3..=n {
            if !n.is_multiple_of(d) {
                continue;
            }
            if let Some(c) = cyclotomic_companion(d) {
                if c.rows() <= max_rank {
                    if let Ok(l) = GammaLattice::from_generators(group, c.rows(), &[c]) {
                        blocks.push(l);
                    }
                }
            }
        }
    }
    // augmentation kernels coincide for different subgroups of the same index in
    // abelian groups; duplicates only skew the sampling a little
    blocks
}

/// Product of a few elementary matrices with coefficients in `[-1, 1]`, plus a
/// random permutation.
fn random_unimodular<R: Rng>(n: usize, rng: &mut R) -> Matrix {
    let mut m = Matrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = Int::from(if rng.gen_bool(0.5) { 1 } else { -1 });
        let mut e = Matrix::identity(n);
        e[(i, j)] = c;
        m = &m * &e;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    m.select_columns(&order)
}

/// Random lattice of rank at most `max_rank` (rank 0 is possible, rarely).
pub fn random_lattice<R: Rng>(group: &Arc<FiniteGroup>, max_rank: usize, rng: &mut R) -> GammaLattice {
    let blocks = building_blocks(group, max_rank);
    let target = if rng.gen_ratio(1, 12) {
        0
    } else {
        rng.gen_range(1..=max_rank)
    };
    let mut lattice = GammaLattice::trivial(group, 0);
    while lattice.rank() < target {
        let room = target - lattice.rank();
        let fitting: Vec<&GammaLattice> = blocks.iter().filter(|b| b.rank() <= room).collect();
        let pick = fitting.choose(rng).expect("the trivial block always fits");
        lattice = lattice.direct_sum(pick).expect("same group");
    }
    let change = random_unimodular(lattice.rank(), rng);
    lattice.change_basis(&change).expect("unimodular change of basis")
}

/// Random equivariant map: an integer combination, coefficients in
/// `[-coeff, coeff]`, of a basis of `Hom_Γ(source, target)`.
pub fn random_equivariant_map<R: Rng>(
    source: &GammaLattice,
    target: &GammaLattice,
    coeff: i64,
    rng: &mut R,
) -> Result<LatticeMap> {
    let basis = LatticeMap::hom_basis(source, target)?;
    let coeffs: Vec<Int> = (0..basis.cols())
        .map(|_| Int::from(rng.gen_range(-coeff..=coeff)))
        .collect();
    let flat = basis.mul_vec(&coeffs);
    let matrix = Matrix::from_vec(target.rank(), source.rank(), flat)?;
    LatticeMap::new(source.clone(), target.clone(), matrix)
}

pub fn random_complex<R: Rng>(group: &Arc<FiniteGroup>, max_rank: usize, rng: &mut R) -> Result<TwoTermComplex> {
    let a = random_lattice(group, max_rank, rng);
    let b = random_lattice(group, max_rank, rng);
    Ok(TwoTermComplex::new(random_equivariant_map(&a, &b, 2, rng)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(named_group("cyclic4").unwrap().size(), 4);
        assert_eq!(named_group("S3").unwrap().size(), 6);
        assert!(named_group("dihedral").is_none());
    }

    #[test]
    fn blocks_are_valid() {
        for name in ["cyclic2", "cyclic3", "cyclic4", "cyclic6", "s3"] {
            let g = named_group(name).unwrap();
            let blocks = building_blocks(&g, 3);
            assert!(blocks.len() >= 2, "{name}");
            for b in blocks {
                assert!(b.rank() <= 3);
                GammaLattice::from_elements(&g, b.rank(), b.actions().to_vec()).unwrap();
            }
        }
    }

    #[test]
    fn random_objects_are_valid_and_deterministic() {
        let g = named_group("s3").unwrap();
        let mut rng = rng_from_seed(7);
        for _ in 0..20 {
            let l = random_lattice(&g, 3, &mut rng);
            GammaLattice::from_elements(&g, l.rank(), l.actions().to_vec()).unwrap();
        }
        let a = random_complex(&g, 3, &mut rng_from_seed(3)).unwrap();
        let b = random_complex(&g, 3, &mut rng_from_seed(3)).unwrap();
        assert_eq!(a.map().matrix(), b.map().matrix());
        assert_eq!(a.a().actions(), b.a().actions());
    }
}

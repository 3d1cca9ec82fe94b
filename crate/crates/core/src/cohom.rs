//! Group cohomology `H^n(Γ, M)` through unnormalized inhomogeneous cochains.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactlin::{homology_at, kernel_basis};
use crate::gmod::{GammaLattice, LatticeMap, DEFAULT_GROUP_CAP};
use crate::{AbGroup, ClassMap, Int, Matrix, Subquotient};

/// Resource limits for cochain computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub group_size: usize,
    pub degree: usize,
    /// Largest cochain space, in integer coordinates, that may be materialized.
    pub dimension: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            group_size: DEFAULT_GROUP_CAP,
            degree: 3,
            dimension: 50_000,
        }
    }
}

impl Caps {
    pub(crate) fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.degree {
            return Err(Error::DegreeCap {
                degree,
                cap: self.degree,
            });
        }
        Ok(())
    }

    pub(crate) fn check_dimension(&self, dimension: usize) -> Result<()> {
        if dimension > self.dimension {
            return Err(Error::BudgetExceeded {
                dimension,
                cap: self.dimension,
            });
        }
        Ok(())
    }
}

/// `C^n(Γ, M)`: functions `Γ^n -> M`. The tuple `(g1, ..., gn)` is stored at
/// block `g1·s^(n-1) + ... + gn`, each block holding `rank` coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CochainSpace {
    pub group_size: usize,
    pub rank: usize,
    pub degree: usize,
}

impl CochainSpace {
    pub fn new(lattice: &GammaLattice, degree: usize) -> Self {
        CochainSpace {
            group_size: lattice.group().size(),
            rank: lattice.rank(),
            degree,
        }
    }

    pub fn tuples(&self) -> usize {
        self.group_size.pow(self.degree as u32)
    }

    pub fn dimension(&self) -> usize {
        self.rank * self.tuples()
    }

    /// Like [`dimension`](Self::dimension) but `None` on overflow.
    pub fn checked_dimension(&self) -> Option<usize> {
        self.group_size.checked_pow(self.degree as u32)?.checked_mul(self.rank)
    }

    pub fn tuple_index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.degree);
        tuple.iter().fold(0, |acc, &g| acc * self.group_size + g)
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let mut t = vec![0; self.degree];
        for slot in t.iter_mut().rev() {
            *slot = index % self.group_size;
            index /= self.group_size;
        }
        t
    }

    /// Coordinate range holding the value at `tuple`.
    pub fn block(&self, tuple: &[usize]) -> std::ops::Range<usize> {
        let start = self.tuple_index(tuple) * self.rank;
        start..start + self.rank
    }
}

pub(crate) fn checked_dim(lattice: &GammaLattice, degree: usize, caps: &Caps) -> Result<usize> {
    let dim = CochainSpace::new(lattice, degree)
        .checked_dimension()
        .ok_or(Error::BudgetExceeded {
            dimension: usize::MAX,
            cap: caps.dimension,
        })?;
    caps.check_dimension(dim)?;
    Ok(dim)
}

/// Matrix of `d^n : C^n -> C^(n+1)`,
/// `(df)(g1..g(n+1)) = g1·f(g2..) + Σ (-1)^i f(.., gi·g(i+1), ..) + (-1)^(n+1) f(g1..gn)`.
pub fn bar_differential(lattice: &GammaLattice, n: usize) -> Matrix {
    let group = lattice.group();
    let s = group.size();
    let r = lattice.rank();
    let src = CochainSpace::new(lattice, n);
    let dst = CochainSpace::new(lattice, n + 1);
    let mut d = Matrix::zeros(dst.dimension(), src.dimension());
    let id = Matrix::identity(r);
    let plus = Int::one();
    let minus = -Int::one();
    for row_idx in 0..dst.tuples() {
        let t = dst.tuple(row_idx);
        let r0 = row_idx * r;
        // g1 · f(g2, ..., g(n+1))
        let tail = row_idx % src.tuples();
        d.add_to_block(r0, tail * r, lattice.action(t[0]), &plus);
        for i in 1..=n {
            let mut merged = Vec::with_capacity(n);
            merged.extend_from_slice(&t[..i - 1]);
            merged.push(group.mul(t[i - 1], t[i]));
            merged.extend_from_slice(&t[i + 1..]);
            let sign = if i % 2 == 0 { &plus } else { &minus };
            d.add_to_block(r0, src.tuple_index(&merged) * r, &id, sign);
        }
        let head = row_idx / s;
        let sign = if (n + 1).is_multiple_of(2) { &plus } else { &minus };
        d.add_to_block(r0, head * r, &id, sign);
    }
    d
}

/// A computed cohomology group together with cocycle representatives.
#[derive(Clone, Debug)]
pub struct CohGroup {
    pub degree: usize,
    pub presentation: Subquotient,
}

impl CohGroup {
    pub fn group(&self) -> &AbGroup {
        &self.presentation.group
    }

    pub fn representatives(&self) -> &[Vec<Int>] {
        &self.presentation.representatives
    }
}

pub fn cohomology(lattice: &GammaLattice, n: usize) -> Result<CohGroup> {
    cohomology_with(lattice, n, &Caps::default())
}

/// `H^n(Γ, M)`; `H^0` is the fixed sublattice, free part included.
pub fn cohomology_with(lattice: &GammaLattice, n: usize, caps: &Caps) -> Result<CohGroup> {
    caps.check_degree(n)?;
    checked_dim(lattice, n + 1, caps)?;
    let d_out = bar_differential(lattice, n);
    let d_in = match n {
        0 => Matrix::zeros(lattice.rank(), 0),
        _ => bar_differential(lattice, n - 1),
    };
    Ok(CohGroup {
        degree: n,
        presentation: homology_at(&d_in, &d_out)?,
    })
}

/// Basis (columns) of the fixed sublattice `M^Γ`.
pub fn fixed_points(lattice: &GammaLattice) -> Matrix {
    let r = lattice.rank();
    let mut stacked = Matrix::zeros(0, r);
    for &g in lattice.group().generators() {
        stacked = stacked.vstack(&lattice.action(g).sub(&Matrix::identity(r)));
    }
    kernel_basis(&stacked)
}

/// Periodic cohomology of a cyclic group with generator `σ` and norm `N = Σ σ^i`:
/// odd degrees give `ker N / (σ-1)M`, even degrees `M^σ / N·M`.
pub fn cyclic_cohomology(lattice: &GammaLattice, n: usize) -> Result<AbGroup> {
    if n == 0 {
        return Err(Error::DegreeCap { degree: 0, cap: 0 });
    }
    let group = lattice.group();
    let sigma = group.cyclic_generator().ok_or(Error::NotCyclic)?;
    let r = lattice.rank();
    let mut norm = Matrix::zeros(r, r);
    let mut x = group.identity();
    for _ in 0..group.size() {
        norm = norm.add(lattice.action(x));
        x = group.mul(x, sigma);
    }
    let sigma_minus_one = lattice.action(sigma).sub(&Matrix::identity(r));
    let h = if n % 2 == 1 {
        homology_at(&sigma_minus_one, &norm)?
    } else {
        homology_at(&norm, &sigma_minus_one)?
    };
    Ok(h.group)
}

/// Map `H^n(Γ, A) -> H^n(Γ, B)` induced by applying `φ` pointwise to cochains.
pub fn induced_map(phi: &LatticeMap, n: usize) -> Result<ClassMap> {
    induced_map_with(phi, n, &Caps::default())
}

pub fn induced_map_with(phi: &LatticeMap, n: usize, caps: &Caps) -> Result<ClassMap> {
    let source = cohomology_with(phi.source(), n, caps)?;
    let target = cohomology_with(phi.target(), n, caps)?;
    let tuples = CochainSpace::new(phi.source(), n).tuples();
    source
        .presentation
        .map_to(&target.presentation, &phi.matrix().repeat_diag(tuples))
}

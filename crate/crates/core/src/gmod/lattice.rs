use std::collections::VecDeque;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use crate::exactlin::{solve_in_lattice, IntMatrix};
use crate::{Int, Matrix};

/// A free abelian group of finite rank with a linear action of a finite group.
///
/// `actions[g]` is the matrix of `g` acting on column vectors.
#[derive(Clone, Debug)]
pub struct GammaLattice {
    group: Arc<FiniteGroup>,
    rank: usize,
    actions: Vec<Matrix>,
}

/// How the action is supplied: one matrix per declared generator, or one per element.
#[derive(Clone, Debug)]
pub enum ActionInput {
    Generators(Vec<Matrix>),
    Elements(Vec<Matrix>),
}

/// Extends and checks an action; see [`GammaLattice::from_generators`].
pub fn validate_lattice(group: &Arc<FiniteGroup>, rank: usize, input: ActionInput) -> Result<GammaLattice> {
    match input {
        ActionInput::Generators(m) => GammaLattice::from_generators(group, rank, &m),
        ActionInput::Elements(m) => GammaLattice::from_elements(group, rank, m),
    }
}

pub fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl GammaLattice {
    pub fn trivial(group: &Arc<FiniteGroup>, rank: usize) -> Self {
        GammaLattice {
            group: group.clone(),
            rank,
            actions: vec![Matrix::identity(rank); group.size()],
        }
    }

    /// Extends generator matrices along the Cayley graph, then checks the
    /// homomorphism property on every pair of elements.
    pub fn from_generators(group: &Arc<FiniteGroup>, rank: usize, gens: &[Matrix]) -> Result<Self> {
        let declared = group.generators();
        if gens.len() != declared.len() {
            return Err(Error::schema(
                "generator_action",
                format!("{} matrices for {} group generators", gens.len(), declared.len()),
            ));
        }
        for (k, m) in gens.iter().enumerate() {
            if m.shape() != (rank, rank) {
                return Err(Error::schema(
                    format!("generator_action[{k}]"),
                    format!("expected {rank}x{rank}"),
                ));
            }
            if !m.is_unimodular() {
                return Err(Error::NotUnimodular(declared[k]));
            }
        }
        let n = group.size();
        let mut actions: Vec<Option<Matrix>> = vec![None; n];
        actions[group.identity()] = Some(Matrix::identity(rank));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            for (k, &s) in declared.iter().enumerate() {
                let y = group.mul(x, s);
                let candidate = actions[x].as_ref().unwrap() * &gens[k];
                match &actions[y] {
                    None => {
                        actions[y] = Some(candidate);
                        queue.push_back(y);
                    }
                    Some(existing) if *existing != candidate => {
                        return Err(Error::RelationViolation(format!(
                            "two words for element {y} act differently"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let actions: Vec<Matrix> = actions
            .into_iter()
            .enumerate()
            .map(|(g, m)| m.ok_or_else(|| Error::InvalidGroup(format!("element {g} not reached by generators"))))
            .collect::<Result<_>>()?;
        let lattice = GammaLattice {
            group: group.clone(),
            rank,
            actions,
        };
        lattice.check_homomorphism()?;
        Ok(lattice)
    }

    pub fn from_elements(group: &Arc<FiniteGroup>, rank: usize, actions: Vec<Matrix>) -> Result<Self> {
        if actions.len() != group.size() {
            return Err(Error::schema(
                "element_action",
                format!("expected {} matrices", group.size()),
            ));
        }
        for (g, m) in actions.iter().enumerate() {
            if m.shape() != (rank, rank) {
                return Err(Error::schema(
                    format!("element_action[{g}]"),
                    format!("expected {rank}x{rank}"),
                ));
            }
            if !m.is_unimodular() {
                return Err(Error::NotUnimodular(g));
            }
        }
        let lattice = GammaLattice {
            group: group.clone(),
            rank,
            actions,
        };
        lattice.check_homomorphism()?;
        Ok(lattice)
    }

    fn check_homomorphism(&self) -> Result<()> {
        let g = &self.group;
        if !self.actions[g.identity()].is_identity() {
            return Err(Error::RelationViolation("identity does not act trivially".into()));
        }
        for a in 0..g.size() {
            for b in 0..g.size() {
                if &self.actions[a] * &self.actions[b] != self.actions[g.mul(a, b)] {
                    return Err(Error::RelationViolation(format!(
                        "action({a})*action({b}) != action({a}*{b})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Sign character `Z(-1)`: elements outside the index-2 subgroup `kernel` act by -1.
    pub fn sign(group: &Arc<FiniteGroup>, kernel: &Subgroup) -> Result<Self> {
        if 2 * kernel.order() != group.size() {
            return Err(Error::InvalidGroup("sign character needs an index-2 subgroup".into()));
        }
        let actions = (0..group.size())
            .map(|g| {
                let s = if kernel.contains(g) { 1 } else { -1 };
                Matrix::from_i64(&[&[s]])
            })
            .collect();
        Self::from_elements(group, 1, actions)
    }

    /// Permutation module `Z[Γ/H]` on the left cosets of `subgroup`.
    pub fn coset_module(group: &Arc<FiniteGroup>, subgroup: &Subgroup) -> Self {
        let n = group.size();
        // coset of x is identified by its smallest element x·h
        let mut coset_ids: Vec<usize> = Vec::new();
        let mut coset_of = vec![0usize; n];
        for (x, slot) in coset_of.iter_mut().enumerate() {
            let key = subgroup.elements.iter().map(|&h| group.mul(x, h)).min().unwrap();
            let id = match coset_ids.iter().position(|&k| k == key) {
                Some(i) => i,
                None => {
                    coset_ids.push(key);
                    coset_ids.len() - 1
                }
            };
            *slot = id;
        }
        let rank = coset_ids.len();
        let actions = (0..n)
            .map(|g| {
                let mut m = Matrix::zeros(rank, rank);
                for (c, &rep) in coset_ids.iter().enumerate() {
                    m[(coset_of[group.mul(g, rep)], c)] = Int::one();
                }
                m
            })
            .collect();
        GammaLattice {
            group: group.clone(),
            rank,
            actions,
        }
    }

    /// Regular representation `Z[Γ]`.
    pub fn regular(group: &Arc<FiniteGroup>) -> Self {
        Self::coset_module(
            group,
            &Subgroup {
                elements: vec![group.identity()],
            },
        )
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &Matrix {
        &self.actions[g]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Contragredient lattice: `g` acts by the transpose of `action(g^-1)`.
    pub fn dual(&self) -> Self {
        let actions = (0..self.group.size())
            .map(|g| self.actions[self.group.inverse(g)].transpose())
            .collect();
        GammaLattice {
            group: self.group.clone(),
            rank: self.rank,
            actions,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| Matrix::block_diag(&[a, b]))
            .collect();
        Ok(GammaLattice {
            group: self.group.clone(),
            rank: self.rank + other.rank,
            actions,
        })
    }

    /// Basis-dependent: every element must act by a permutation matrix.
    pub fn is_permutation_module(&self) -> bool {
        self.actions.iter().all(|m| m.is_permutation_matrix())
    }

    /// Restriction of the action to a subgroup.
    pub fn restrict(&self, subgroup: &Subgroup) -> Self {
        let group = Arc::new(subgroup.to_group(&self.group));
        let actions = subgroup.elements.iter().map(|&g| self.actions[g].clone()).collect();
        GammaLattice {
            group,
            rank: self.rank,
            actions,
        }
    }

    /// Same lattice over a group acting through `quotient`: element `g` of `group`
    /// acts as `quotient[g]` does here.
    pub fn inflate(&self, group: &Arc<FiniteGroup>, quotient: &[usize]) -> Result<Self> {
        let actions = quotient.iter().map(|&q| self.actions[q].clone()).collect();
        Self::from_elements(group, self.rank, actions)
    }

    /// The Γ-stable sublattice spanned by the columns of `basis`, in that basis.
    pub fn sublattice(&self, basis: &Matrix) -> Result<Self> {
        if basis.rows() != self.rank {
            return Err(Error::Shape("sublattice basis has the wrong length".into()));
        }
        let mut actions = Vec::with_capacity(self.group.size());
        for (g, m) in self.actions.iter().enumerate() {
            let image = m * basis;
            let mut cols = Vec::with_capacity(basis.cols());
            for c in image.columns() {
                cols.push(solve_in_lattice(basis, &c).ok_or(Error::NotEquivariant(g))?);
            }
            actions.push(Matrix::from_columns(basis.cols(), &cols)?);
        }
        Ok(GammaLattice {
            group: self.group.clone(),
            rank: basis.cols(),
            actions,
        })
    }

    /// `Z^rank` with a conjugated action `P·action(g)·P^-1`, for unimodular `change`.
    pub fn change_basis(&self, change: &Matrix) -> Result<Self> {
        if !change.is_unimodular() || change.rows() != self.rank {
            return Err(Error::Shape("basis change must be unimodular of matching rank".into()));
        }
        let inverse = solve_columns(change, &Matrix::identity(self.rank))?;
        let actions = self.actions.iter().map(|m| &(change * m) * &inverse).collect();
        Ok(GammaLattice {
            group: self.group.clone(),
            rank: self.rank,
            actions,
        })
    }
}

fn solve_columns(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let solver = crate::exactlin::LatticeSolver::new(a);
    let cols = b
        .columns()
        .iter()
        .map(|c| {
            solver
                .solve(c)
                .ok_or_else(|| Error::Internal("matrix not invertible".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(a.cols(), &cols)
}

/// A Γ-equivariant homomorphism between lattices over the same group.
#[derive(Clone, Debug)]
pub struct LatticeMap {
    source: GammaLattice,
    target: GammaLattice,
    matrix: Matrix,
}

impl LatticeMap {
    pub fn new(source: GammaLattice, target: GammaLattice, matrix: Matrix) -> Result<Self> {
        if !same_group(&source.group, &target.group) {
            return Err(Error::GroupMismatch);
        }
        if matrix.shape() != (target.rank, source.rank) {
            return Err(Error::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank,
                source.rank
            )));
        }
        for g in 0..source.group.size() {
            if &matrix * &source.actions[g] != &target.actions[g] * &matrix {
                return Err(Error::NotEquivariant(g));
            }
        }
        Ok(LatticeMap { source, target, matrix })
    }

    pub fn identity(lattice: &GammaLattice) -> Self {
        LatticeMap {
            source: lattice.clone(),
            target: lattice.clone(),
            matrix: Matrix::identity(lattice.rank),
        }
    }

    pub fn zero(source: &GammaLattice, target: &GammaLattice) -> Result<Self> {
        Self::new(source.clone(), target.clone(), Matrix::zeros(target.rank, source.rank))
    }

    pub fn source(&self) -> &GammaLattice {
        &self.source
    }

    pub fn target(&self) -> &GammaLattice {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.source.group
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LatticeMap) -> Result<LatticeMap> {
        LatticeMap::new(self.source.clone(), other.target.clone(), &other.matrix * &self.matrix)
    }

    pub fn scaled(&self, c: i64) -> LatticeMap {
        LatticeMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.scale(&Int::from(c)),
        }
    }

    pub fn direct_sum(&self, other: &LatticeMap) -> Result<LatticeMap> {
        let source = self.source.direct_sum(&other.source)?;
        let target = self.target.direct_sum(&other.target)?;
        LatticeMap::new(source, target, Matrix::block_diag(&[&self.matrix, &other.matrix]))
    }

    /// Lattice of all equivariant maps `source -> target`; each column is a
    /// matrix flattened row-major.
    pub fn hom_basis(source: &GammaLattice, target: &GammaLattice) -> Result<IntMatrix<Int>> {
        if !same_group(&source.group, &target.group) {
            return Err(Error::GroupMismatch);
        }
        let (m, n) = (target.rank, source.rank);
        let gens = source.group.generators();
        // rows: for each generator, entries of F·A(g) - B(g)·F
        let mut system = Matrix::zeros(gens.len() * m * n, m * n);
        for (k, &g) in gens.iter().enumerate() {
            let a = &source.actions[g];
            let b = &target.actions[g];
            for i in 0..m {
                for j in 0..n {
                    let row = k * m * n + i * n + j;
                    // (F A)_{ij} = sum_l F_{il} A_{lj}
                    for l in 0..n {
                        if !a[(l, j)].is_zero() {
                            system[(row, i * n + l)] += a[(l, j)].clone();
                        }
                    }
                    // (B F)_{ij} = sum_l B_{il} F_{lj}
                    for l in 0..m {
                        if !b[(i, l)].is_zero() {
                            system[(row, l * n + j)] -= b[(i, l)].clone();
                        }
                    }
                }
            }
        }
        Ok(crate::exactlin::kernel_basis(&system))
    }
}

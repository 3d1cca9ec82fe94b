//! Hypercohomology of two-term complexes `[A -> B]` (A in degree 0, B in degree 1)
//! through the total complex `C^r(A) ⊕ C^(r-1)(B)` with
//! `D(a, b) = (d_A a, f(a) - d_B b)`.

use std::fmt;

use serde::Serialize;

use crate::cohom::{bar_differential, checked_dim, cohomology_with, Caps, CochainSpace, CohGroup};
use crate::error::{Error, Result};
use crate::exactlin::{homology_at, LatticeSolver};
use crate::gmod::{GammaLattice, LatticeMap};
use crate::{ClassMap, Int, Matrix, Subquotient};

#[derive(Clone, Debug)]
pub struct TwoTermComplex {
    map: LatticeMap,
}

impl TwoTermComplex {
    pub fn new(map: LatticeMap) -> Self {
        TwoTermComplex { map }
    }

    /// `[A -> 0]`, whose hypercohomology is `H^r(Γ, A)`.
    pub fn concentrated_in_zero(a: &GammaLattice) -> Result<Self> {
        let zero = GammaLattice::trivial(a.group(), 0);
        Ok(Self::new(LatticeMap::zero(a, &zero)?))
    }

    /// `[0 -> B]`, whose hypercohomology is `H^(r-1)(Γ, B)`.
    pub fn concentrated_in_one(b: &GammaLattice) -> Result<Self> {
        let zero = GammaLattice::trivial(b.group(), 0);
        Ok(Self::new(LatticeMap::zero(&zero, b)?))
    }

    pub fn a(&self) -> &GammaLattice {
        self.map.source()
    }

    pub fn b(&self) -> &GammaLattice {
        self.map.target()
    }

    pub fn map(&self) -> &LatticeMap {
        &self.map
    }

    fn a_space(&self, r: usize) -> CochainSpace {
        CochainSpace::new(self.a(), r)
    }

    /// `C^(r-1)(B)`, empty in degree 0.
    fn b_dim(&self, r: usize) -> usize {
        match r {
            0 => 0,
            _ => CochainSpace::new(self.b(), r - 1).dimension(),
        }
    }

    /// Dimension of the total cochain group in degree `r`.
    pub fn total_dim(&self, r: usize) -> usize {
        self.a_space(r).dimension() + self.b_dim(r)
    }

    fn check_budget(&self, r: usize, caps: &Caps) -> Result<()> {
        checked_dim(self.a(), r + 1, caps)?;
        checked_dim(self.b(), r, caps)?;
        caps.check_dimension(self.total_dim(r + 1))
    }

    /// `f` applied pointwise on `C^r`.
    fn f_cochain(&self, r: usize) -> Matrix {
        self.map.matrix().repeat_diag(self.a_space(r).tuples())
    }
}

/// A total cochain `(a, b)` with `a ∈ C^r(A)` and `b ∈ C^(r-1)(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperCochain {
    pub degree: usize,
    pub a: Vec<Int>,
    pub b: Vec<Int>,
}

impl HyperCochain {
    pub fn split(cx: &TwoTermComplex, degree: usize, flat: &[Int]) -> Result<Self> {
        let na = cx.a_space(degree).dimension();
        if flat.len() != na + cx.b_dim(degree) {
            return Err(Error::Shape("hypercochain has the wrong length".into()));
        }
        Ok(HyperCochain {
            degree,
            a: flat[..na].to_vec(),
            b: flat[na..].to_vec(),
        })
    }

    pub fn flatten(&self) -> Vec<Int> {
        self.a.iter().chain(&self.b).cloned().collect()
    }
}

/// Matrix of `D^r : C^r(A) ⊕ C^(r-1)(B) -> C^(r+1)(A) ⊕ C^r(B)`.
pub fn cone_differential(cx: &TwoTermComplex, r: usize) -> Matrix {
    let na_src = cx.a_space(r).dimension();
    let na_dst = cx.a_space(r + 1).dimension();
    let nb_dst = CochainSpace::new(cx.b(), r).dimension();
    let mut d = Matrix::zeros(na_dst + nb_dst, cx.total_dim(r));
    d.set_block(0, 0, &bar_differential(cx.a(), r));
    d.set_block(na_dst, 0, &cx.f_cochain(r));
    if r > 0 {
        d.set_block(na_dst, na_src, &bar_differential(cx.b(), r - 1).neg());
    }
    d
}

fn cone_in(cx: &TwoTermComplex, r: usize) -> Matrix {
    match r {
        0 => Matrix::zeros(cx.total_dim(0), 0),
        _ => cone_differential(cx, r - 1),
    }
}

pub fn hypercohomology(cx: &TwoTermComplex, r: usize) -> Result<CohGroup> {
    hypercohomology_with(cx, r, &Caps::default())
}

pub fn hypercohomology_with(cx: &TwoTermComplex, r: usize, caps: &Caps) -> Result<CohGroup> {
    caps.check_degree(r)?;
    cx.check_budget(r, caps)?;
    let presentation = homology_at(&cone_in(cx, r), &cone_differential(cx, r))?;
    Ok(CohGroup {
        degree: r,
        presentation,
    })
}

/// `(a, b) ↦ a`.
fn i_cochain(cx: &TwoTermComplex, r: usize) -> Matrix {
    let na = cx.a_space(r).dimension();
    Matrix::identity(na).hstack(&Matrix::zeros(na, cx.b_dim(r)))
}

/// `b ↦ (0, b)` from `C^r(B)` into the total degree `r + 1`.
fn j_cochain(cx: &TwoTermComplex, r: usize) -> Matrix {
    let na = cx.a_space(r + 1).dimension();
    let nb = cx.b_dim(r + 1);
    Matrix::zeros(na, nb).vstack(&Matrix::identity(nb))
}

fn bar_in(lattice: &GammaLattice, r: usize) -> Matrix {
    match r {
        0 => Matrix::zeros(lattice.rank(), 0),
        _ => bar_differential(lattice, r - 1),
    }
}

/// The three maps around `H^r(A)` and `H^r(B)` in the long exact sequence.
#[derive(Clone, Debug)]
pub struct LesMaps {
    /// `ℍ^r -> H^r(A)`
    pub i: ClassMap,
    /// `H^r(A) -> H^r(B)`
    pub f: ClassMap,
    /// `H^r(B) -> ℍ^(r+1)`
    pub j: ClassMap,
}

pub fn les_maps(cx: &TwoTermComplex, r: usize) -> Result<LesMaps> {
    les_maps_with(cx, r, &Caps::default())
}

pub fn les_maps_with(cx: &TwoTermComplex, r: usize, caps: &Caps) -> Result<LesMaps> {
    let hh = hypercohomology_with(cx, r, caps)?;
    let hh_next = hypercohomology_with(cx, r + 1, caps)?;
    let ha = cohomology_with(cx.a(), r, caps)?;
    let hb = cohomology_with(cx.b(), r, caps)?;
    let i = hh.presentation.map_to(&ha.presentation, &i_cochain(cx, r))?;
    let f = ha.presentation.map_to(&hb.presentation, &cx.f_cochain(r))?;
    let j = hb.presentation.map_to(&hh_next.presentation, &j_cochain(cx, r))?;
    Ok(LesMaps { i, f, j })
}

/// Position in `... -> ℍ^r -> H^r(A) -> H^r(B) -> ℍ^(r+1) -> ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Node {
    #[serde(rename = "HH")]
    Hyper,
    #[serde(rename = "H(A)")]
    A,
    #[serde(rename = "H(B)")]
    B,
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Node::Hyper => "HH",
            Node::A => "H(A)",
            Node::B => "H(B)",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LesEntry {
    pub degree: usize,
    pub node: Node,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LesReport {
    pub entries: Vec<LesEntry>,
}

impl LesReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// Checks `im = ker` at a node `Y` with incoming class map `incoming` and
/// outgoing cochain map `outgoing` into a complex with boundaries `out_boundaries`.
fn exact_at(y: &Subquotient, incoming: &ClassMap, outgoing: &Matrix, out_boundaries: &Matrix) -> Option<String> {
    let solver = LatticeSolver::new(out_boundaries);
    for (k, c) in incoming.matrix.columns().iter().enumerate() {
        let z = outgoing.mul_vec(&y.cocycle_for(c));
        if !solver.contains(&z) {
            return Some(format!(
                "image of incoming generator {k} is not killed by the outgoing map"
            ));
        }
    }
    let kernel = y.induced_kernel(outgoing, out_boundaries);
    for x in kernel.columns() {
        if !y.in_span(&incoming.matrix, &x) {
            let shown: Vec<String> = x.iter().map(|v| v.to_string()).collect();
            return Some(format!(
                "class [{}] is in the kernel but not in the image",
                shown.join(", ")
            ));
        }
    }
    None
}

pub fn verify_les_exactness(cx: &TwoTermComplex, max_degree: usize) -> Result<LesReport> {
    verify_les_exactness_with(cx, max_degree, &Caps::default())
}

/// Exactness at `ℍ^r`, `H^r(A)`, `H^r(B)` for every `r <= max_degree`.
///
/// The map `j` out of `H^r(B)` is tested by membership in the image of `D^r`,
/// so `ℍ^(max_degree+1)` is never presented.
pub fn verify_les_exactness_with(cx: &TwoTermComplex, max_degree: usize, caps: &Caps) -> Result<LesReport> {
    let mut entries = Vec::new();
    let mut prev_hb: Option<Subquotient> = None;
    for r in 0..=max_degree {
        let hh = hypercohomology_with(cx, r, caps)?.presentation;
        let ha = cohomology_with(cx.a(), r, caps)?.presentation;
        let hb = cohomology_with(cx.b(), r, caps)?.presentation;

        let into_hh = match &prev_hb {
            Some(prev) => prev.map_to(&hh, &j_cochain(cx, r - 1))?,
            None => ClassMap {
                source: crate::AbGroup::trivial(),
                target: hh.group.clone(),
                matrix: Matrix::zeros(hh.group.generator_count(), 0),
            },
        };
        let i_map = i_cochain(cx, r);
        let f_map = cx.f_cochain(r);
        let witness = exact_at(&hh, &into_hh, &i_map, &bar_in(cx.a(), r));
        entries.push(LesEntry {
            degree: r,
            node: Node::Hyper,
            pass: witness.is_none(),
            witness,
        });

        let into_a = hh.map_to(&ha, &i_map)?;
        let witness = exact_at(&ha, &into_a, &f_map, &bar_in(cx.b(), r));
        entries.push(LesEntry {
            degree: r,
            node: Node::A,
            pass: witness.is_none(),
            witness,
        });

        let into_b = ha.map_to(&hb, &f_map)?;
        let witness = exact_at(&hb, &into_b, &j_cochain(cx, r), &cone_differential(cx, r));
        entries.push(LesEntry {
            degree: r,
            node: Node::B,
            pass: witness.is_none(),
            witness,
        });

        prev_hb = Some(hb);
    }
    Ok(LesReport { entries })
}

/// `d∘d = 0` on both lattices and `D∘D = 0` on the total complex through `max_degree`.
pub fn differentials_square_to_zero(cx: &TwoTermComplex, max_degree: usize) -> bool {
    (0..=max_degree).all(|r| {
        (&bar_differential(cx.a(), r + 1) * &bar_differential(cx.a(), r)).is_zero()
            && (&bar_differential(cx.b(), r + 1) * &bar_differential(cx.b(), r)).is_zero()
            && (&cone_differential(cx, r + 1) * &cone_differential(cx, r)).is_zero()
    })
}

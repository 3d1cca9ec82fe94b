//! Pic(G) as `ℍ^1(Γ, X*(T) -> X*(T_sc))`, its Pontryagin dual, π₁(G), and
//! the comparison against a user-supplied flasque resolution.

use num_traits::One;

use crate::cohom::{cohomology_with, fixed_points, Caps};
use crate::error::{Error, Result};
use crate::exactlin::{cokernel, column_span_basis, homology_at, kernel_basis, rank, LatticeSolver};
use crate::gmod::{is_flasque_with, GammaLattice, LatticeMap};
use crate::hyper::{hypercohomology_with, HyperCochain, TwoTermComplex};
use crate::rootdata::ReductiveGroupSpec;
use crate::{AbGroup, Int, Matrix};

/// Pairing between a finite group and its dual on the chosen generators:
/// `<e_i, χ_j> = values[i][j] / orders[i]` in `Q/Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPairing {
    pub orders: Vec<Int>,
    pub values: Matrix,
}

#[derive(Clone, Debug)]
pub struct PicardResult {
    pub pic: AbGroup,
    pub dual: AbGroup,
    /// One hypercocycle per generator of `pic`.
    pub witness: Vec<HyperCochain>,
    pub pairing: DualPairing,
}

pub fn picard_group(spec: &ReductiveGroupSpec) -> Result<PicardResult> {
    picard_group_with(spec, &Caps::default())
}

pub fn picard_group_with(spec: &ReductiveGroupSpec, caps: &Caps) -> Result<PicardResult> {
    let cx = TwoTermComplex::new(spec.restriction().clone());
    let h = hypercohomology_with(&cx, 1, caps)?;
    let pic = h.group().clone();
    if !pic.is_finite() {
        return Err(Error::NotFinite(pic.free_rank()));
    }
    let witness = h
        .representatives()
        .iter()
        .map(|z| HyperCochain::split(&cx, 1, z))
        .collect::<Result<Vec<_>>>()?;
    let (dual, pairing) = pontryagin_dual_with_pairing(&pic)?;
    Ok(PicardResult {
        pic,
        dual,
        witness,
        pairing,
    })
}

/// `Hom(g, Q/Z)`; for a finite group this has the same invariant factors.
pub fn pontryagin_dual(g: &AbGroup) -> Result<AbGroup> {
    pontryagin_dual_with_pairing(g).map(|(d, _)| d)
}

/// The dual together with the evaluation pairing on generators. The dual basis
/// `χ_j` sends `e_j` to `1/d_j` and the other generators to zero.
pub fn pontryagin_dual_with_pairing(g: &AbGroup) -> Result<(AbGroup, DualPairing)> {
    if !g.is_finite() {
        return Err(Error::NotFinite(g.free_rank()));
    }
    let orders = g.invariant_factors().to_vec();
    let pairing = DualPairing {
        values: Matrix::identity(orders.len()),
        orders,
    };
    Ok((g.clone(), pairing))
}

/// `H^1_ab` of the adelic quotient, realized as the dual of Pic(G).
pub fn abelianized_h1_dual(spec: &ReductiveGroupSpec) -> Result<AbGroup> {
    Ok(picard_group(spec)?.dual)
}

/// π₁(G) = `X_*(T) / ρ_* X_*(T_sc)` with the Γ-action on its generators.
#[derive(Clone, Debug)]
pub struct FundamentalGroup {
    pub group: AbGroup,
    /// Action of each generator of Γ on the generators of `group`, as columns
    /// of coordinates (torsion coordinates reduced).
    pub action: Vec<Matrix>,
}

pub fn fundamental_group(spec: &ReductiveGroupSpec) -> Result<FundamentalGroup> {
    let cochar = spec.charlattice().dual();
    let rho = spec.restriction().matrix().transpose();
    let pres = homology_at(&rho, &Matrix::zeros(0, cochar.rank()))?;
    let gens = pres.group.generator_count();
    let mut action = Vec::new();
    for &g in cochar.group().generators() {
        let mut m = Matrix::zeros(gens, gens);
        for (k, rep) in pres.representatives.iter().enumerate() {
            let image = cochar.action(g).mul_vec(rep);
            let coords = pres
                .class_of(&image)
                .ok_or_else(|| Error::Internal("π₁ action left the lattice".into()))?;
            for (i, c) in coords.into_iter().enumerate() {
                m[(i, k)] = c;
            }
        }
        action.push(m);
    }
    Ok(FundamentalGroup {
        group: pres.group,
        action,
    })
}

/// Pic(G) for semisimple `G` without cochains: an injective restriction makes
/// `[X -> P]` quasi-isomorphic to the finite module `P/X` in degree 1, so
/// `ℍ^1 = (P/X)^Γ`.
pub fn pic_from_finite_quotient(spec: &ReductiveGroupSpec) -> Result<AbGroup> {
    let x = spec.restriction().matrix();
    let p = spec.sc_charlattice();
    let n = p.rank();
    if rank(x) != x.cols() {
        return Err(Error::BadRestriction("restriction is not injective".into()));
    }
    // v with (g - 1) v ∈ X for each generator g
    let gens = p.group().generators().to_vec();
    let blocks = gens.len();
    let mut sys = Matrix::zeros(n * blocks, n + x.cols() * blocks);
    for (k, &g) in gens.iter().enumerate() {
        let mut gm1 = p.action(g).clone();
        for i in 0..n {
            gm1[(i, i)] -= Int::one();
        }
        sys.set_block(k * n, 0, &gm1);
        sys.set_block(k * n, n + k * x.cols(), &x.neg());
    }
    let invariant = if blocks == 0 {
        Matrix::identity(n)
    } else {
        let ker = kernel_basis(&sys);
        column_span_basis(&ker.select_rows(&(0..n).collect::<Vec<_>>()))
    };
    let solver = LatticeSolver::new(&invariant);
    let mut cols = Vec::with_capacity(x.cols());
    for c in x.columns() {
        cols.push(
            solver
                .solve(&c)
                .ok_or_else(|| Error::Internal("X is not Γ-stable".into()))?,
        );
    }
    Ok(cokernel(&Matrix::from_columns(invariant.cols(), &cols)?))
}

/// A flasque resolution `1 -> S -> H -> G -> 1` on character lattices: the
/// restriction `P* -> S*` from the quasi-trivial torus `P = H/[H,H]`.
#[derive(Clone, Debug)]
pub struct ResolutionData {
    map: LatticeMap,
}

impl ResolutionData {
    pub fn new(map: LatticeMap) -> Result<Self> {
        Self::new_with(map, &Caps::default())
    }

    pub fn new_with(map: LatticeMap, caps: &Caps) -> Result<Self> {
        if !map.source().is_permutation_module() {
            return Err(Error::BadResolution("P* is not a permutation module".into()));
        }
        if !is_flasque_with(map.target(), caps)? {
            return Err(Error::BadResolution("S* is not flasque".into()));
        }
        Ok(ResolutionData { map })
    }

    pub fn p_star(&self) -> &GammaLattice {
        self.map.source()
    }

    pub fn s_star(&self) -> &GammaLattice {
        self.map.target()
    }

    pub fn map(&self) -> &LatticeMap {
        &self.map
    }
}

#[derive(Clone, Debug)]
pub struct ResolutionReport {
    pub hyper_h1: AbGroup,
    pub h1_p_star: AbGroup,
    pub fixed_point_cokernel: AbGroup,
}

impl ResolutionReport {
    pub fn h1_p_star_vanishes(&self) -> bool {
        self.h1_p_star.is_trivial()
    }

    pub fn cokernel_matches(&self) -> bool {
        self.fixed_point_cokernel == self.hyper_h1
    }

    pub fn pass(&self) -> bool {
        self.h1_p_star_vanishes() && self.cokernel_matches()
    }
}

pub fn pic_via_resolution(res: &ResolutionData) -> Result<ResolutionReport> {
    pic_via_resolution_with(res, &Caps::default())
}

pub fn pic_via_resolution_with(res: &ResolutionData, caps: &Caps) -> Result<ResolutionReport> {
    let cx = TwoTermComplex::new(res.map.clone());
    let hyper_h1 = hypercohomology_with(&cx, 1, caps)?.group().clone();
    let h1_p_star = cohomology_with(res.p_star(), 1, caps)?.group().clone();
    let fixed_point_cokernel = fixed_point_cokernel(&res.map)?;
    Ok(ResolutionReport {
        hyper_h1,
        h1_p_star,
        fixed_point_cokernel,
    })
}

/// `coker(A^Γ -> B^Γ)` in fixed-point coordinates.
fn fixed_point_cokernel(map: &LatticeMap) -> Result<AbGroup> {
    let fa = fixed_points(map.source());
    let fb = fixed_points(map.target());
    let image = map.matrix() * &fa;
    let solver = LatticeSolver::new(&fb);
    let mut cols = Vec::with_capacity(image.cols());
    for c in image.columns() {
        cols.push(
            solver
                .solve(&c)
                .ok_or_else(|| Error::Internal("map is not equivariant".into()))?,
        );
    }
    Ok(cokernel(&Matrix::from_columns(fb.cols(), &cols)?))
}

#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub from_spec: AbGroup,
    pub from_resolution: ResolutionReport,
}

impl CrossCheck {
    pub fn agree(&self) -> bool {
        self.from_spec == self.from_resolution.hyper_h1
    }
}

pub fn cross_check(spec: &ReductiveGroupSpec, res: &ResolutionData) -> Result<CrossCheck> {
    cross_check_with(spec, res, &Caps::default())
}

pub fn cross_check_with(spec: &ReductiveGroupSpec, res: &ResolutionData, caps: &Caps) -> Result<CrossCheck> {
    let from_spec = picard_group_with(spec, caps)?.pic;
    let from_resolution = pic_via_resolution_with(res, caps)?;
    Ok(CrossCheck {
        from_spec,
        from_resolution,
    })
}

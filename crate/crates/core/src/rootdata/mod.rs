//! Root data of reductive groups and the character restriction `X*(T) -> X*(T_sc)`.
//!
//! Character lattices of semisimple parts are always written in the
//! fundamental-weight coordinates of the simply connected cover, so the
//! restriction map is just the basis matrix of `X` inside `P`.

mod cartan;

use std::sync::Arc;

use num_traits::One;

pub use cartan::{cartan_matrix, is_diagram_automorphism, CartanType};

use crate::error::{Error, Result};
use crate::exactlin::{column_span_basis, rank, solve_in_lattice};
use crate::gmod::{same_group, FiniteGroup, GammaLattice, LatticeMap};
use crate::{Int, Matrix};

/// Which lattice between the root lattice `Q` and weight lattice `P` is `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isogeny {
    /// `X = P`
    SimplyConnected,
    /// `X = Q`
    Adjoint,
    /// `X = Q + <generators>`; each generator is a weight in fundamental-weight
    /// coordinates, so the generators name the subgroup `X/Q` of `P/Q`.
    Intermediate(Vec<Vec<Int>>),
}

/// Split root datum: Dynkin type, the lattice `X`, and a central torus.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub cartan_type: CartanType,
    pub cartan: Matrix,
    /// Basis of `X` as columns, in fundamental-weight coordinates.
    pub x_basis: Matrix,
    pub torus_part_rank: usize,
}

impl RootDatum {
    pub fn new(cartan_type: CartanType, isogeny: &Isogeny, torus_part_rank: usize) -> Result<Self> {
        let cartan = cartan_type.cartan_matrix();
        let n = cartan_type.rank();
        let x_basis = match isogeny {
            Isogeny::SimplyConnected => Matrix::identity(n),
            Isogeny::Adjoint => cartan.clone(),
            Isogeny::Intermediate(gens) => {
                let mut cols = cartan.columns();
                for (k, g) in gens.iter().enumerate() {
                    if g.len() != n {
                        return Err(Error::BadIsogeny(format!(
                            "generator {k} has {} coordinates, weight lattice has rank {n}",
                            g.len()
                        )));
                    }
                    cols.push(g.clone());
                }
                column_span_basis(&Matrix::from_columns(n, &cols)?)
            }
        };
        Ok(RootDatum {
            cartan_type,
            cartan,
            x_basis,
            torus_part_rank,
        })
    }

    pub fn semisimple_rank(&self) -> usize {
        self.cartan_type.rank()
    }
}

/// The pair of character lattices `X*(T)`, `X*(T_sc)` with the restriction map,
/// all over one finite Galois quotient.
#[derive(Clone, Debug)]
pub struct ReductiveGroupSpec {
    restriction: LatticeMap,
    root_datum: Option<RootDatum>,
}

impl ReductiveGroupSpec {
    /// Checks that the restriction is onto a full-rank sublattice.
    pub fn new(restriction: LatticeMap) -> Result<Self> {
        let sc_rank = restriction.target().rank();
        if rank(restriction.matrix()) != sc_rank {
            return Err(Error::BadRestriction(format!(
                "image has rank {} in a lattice of rank {sc_rank}",
                rank(restriction.matrix())
            )));
        }
        Ok(ReductiveGroupSpec {
            restriction,
            root_datum: None,
        })
    }

    /// From raw lattices and a restriction matrix (`sc_rank x char_rank`).
    pub fn from_raw(charlattice: GammaLattice, sc_charlattice: GammaLattice, restriction: Matrix) -> Result<Self> {
        Self::new(LatticeMap::new(charlattice, sc_charlattice, restriction)?)
    }

    pub fn galois(&self) -> &Arc<FiniteGroup> {
        self.restriction.group()
    }

    pub fn charlattice(&self) -> &GammaLattice {
        self.restriction.source()
    }

    pub fn sc_charlattice(&self) -> &GammaLattice {
        self.restriction.target()
    }

    pub fn restriction(&self) -> &LatticeMap {
        &self.restriction
    }

    pub fn root_datum(&self) -> Option<&RootDatum> {
        self.root_datum.as_ref()
    }

    /// Rank of the kernel of the restriction (the central torus).
    pub fn torus_part_rank(&self) -> usize {
        self.charlattice().rank() - self.sc_charlattice().rank()
    }
}

/// Split group with trivial Galois action.
pub fn build_split(
    cartan_type: CartanType,
    isogeny: &Isogeny,
    central_torus_rank: usize,
) -> Result<ReductiveGroupSpec> {
    let datum = RootDatum::new(cartan_type, isogeny, central_torus_rank)?;
    let galois = Arc::new(FiniteGroup::trivial());
    let n = datum.semisimple_rank();
    let char_rank = n + central_torus_rank;
    let restriction = datum.x_basis.hstack(&Matrix::zeros(n, central_torus_rank));
    let map = LatticeMap::new(
        GammaLattice::trivial(&galois, char_rank),
        GammaLattice::trivial(&galois, n),
        restriction,
    )?;
    let mut spec = ReductiveGroupSpec::new(map)?;
    spec.root_datum = Some(datum);
    Ok(spec)
}

/// `GL_n`: `X*(T) = Z^n` restricting onto the weight lattice of `SL_n` by
/// `ε_k ↦ ω_k - ω_(k-1)`.
pub fn build_gl(n: usize) -> Result<ReductiveGroupSpec> {
    if n < 2 {
        return Err(Error::IllegalCartanType(format!("GL{n}")));
    }
    let galois = Arc::new(FiniteGroup::trivial());
    let mut r = Matrix::zeros(n - 1, n);
    for k in 0..n {
        if k < n - 1 {
            r[(k, k)] = Int::one();
        }
        if k > 0 {
            r[(k - 1, k)] = -Int::one();
        }
    }
    ReductiveGroupSpec::from_raw(
        GammaLattice::trivial(&galois, n),
        GammaLattice::trivial(&galois, n - 1),
        r,
    )
}

/// A torus: the simply connected cover of its derived group is trivial.
pub fn build_torus(lattice: &GammaLattice) -> Result<ReductiveGroupSpec> {
    let zero = GammaLattice::trivial(lattice.group(), 0);
    ReductiveGroupSpec::new(LatticeMap::zero(lattice, &zero)?)
}

/// Quasi-split form of a split spec: generator `k` of `galois` permutes the
/// simple roots by `diagram_action[k]` and fixes the central torus.
pub fn apply_twist(
    spec: &ReductiveGroupSpec,
    galois: &Arc<FiniteGroup>,
    diagram_action: &[Vec<usize>],
) -> Result<ReductiveGroupSpec> {
    let datum = spec
        .root_datum
        .as_ref()
        .ok_or_else(|| Error::BadRestriction("only root-datum specs can be twisted".into()))?;
    if !spec.galois().is_trivial() {
        return Err(Error::BadRestriction("spec is already twisted".into()));
    }
    let n = datum.semisimple_rank();
    let c = datum.torus_part_rank;
    let mut x_gens = Vec::with_capacity(diagram_action.len());
    let mut p_gens = Vec::with_capacity(diagram_action.len());
    for perm in diagram_action {
        if !is_diagram_automorphism(&datum.cartan, perm) {
            return Err(Error::NotDiagramAutomorphism(perm.clone()));
        }
        let mut p = Matrix::zeros(n, n);
        for (i, &pi) in perm.iter().enumerate() {
            p[(pi, i)] = Int::one();
        }
        let moved = &p * &datum.x_basis;
        let mut cols = Vec::with_capacity(n);
        for col in moved.columns() {
            cols.push(solve_in_lattice(&datum.x_basis, &col).ok_or(Error::UnstableLattice)?);
        }
        let on_x = Matrix::from_columns(n, &cols)?;
        x_gens.push(Matrix::block_diag(&[&on_x, &Matrix::identity(c)]));
        p_gens.push(p);
    }
    let charlattice = GammaLattice::from_generators(galois, n + c, &x_gens)?;
    let sc = GammaLattice::from_generators(galois, n, &p_gens)?;
    let mut twisted = ReductiveGroupSpec::new(LatticeMap::new(charlattice, sc, spec.restriction.matrix().clone())?)?;
    twisted.root_datum = Some(datum.clone());
    Ok(twisted)
}

/// Direct product over a common Galois group; trivial-group factors are inflated.
pub fn product(specs: &[ReductiveGroupSpec]) -> Result<ReductiveGroupSpec> {
    let mut galois: Option<Arc<FiniteGroup>> = None;
    for s in specs {
        if s.galois().is_trivial() {
            continue;
        }
        match &galois {
            None => galois = Some(s.galois().clone()),
            Some(g) if same_group(g, s.galois()) => {}
            Some(_) => return Err(Error::GroupMismatch),
        }
    }
    let galois = galois.unwrap_or_else(|| Arc::new(FiniteGroup::trivial()));
    let to_trivial = vec![0; galois.size()];
    let mut acc: Option<LatticeMap> = None;
    for s in specs {
        let map = if s.galois().is_trivial() && !galois.is_trivial() {
            let src = s.charlattice().inflate(&galois, &to_trivial)?;
            let dst = s.sc_charlattice().inflate(&galois, &to_trivial)?;
            LatticeMap::new(src, dst, s.restriction.matrix().clone())?
        } else {
            s.restriction.clone()
        };
        acc = Some(match acc {
            None => map,
            Some(prev) => prev.direct_sum(&map)?,
        });
    }
    let map = match acc {
        Some(m) => m,
        None => LatticeMap::identity(&GammaLattice::trivial(&galois, 0)),
    };
    ReductiveGroupSpec::new(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::cokernel;
    use crate::AbGroup;

    fn ab(orders: &[i64]) -> AbGroup {
        AbGroup::from_orders(&orders.iter().map(|&x| Int::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn sc_and_adjoint_restrictions() {
        for n in 2..=4 {
            let sc = build_split(CartanType::A(n - 1), &Isogeny::SimplyConnected, 0).unwrap();
            assert!(sc.restriction().matrix().is_identity());
            let ad = build_split(CartanType::A(n - 1), &Isogeny::Adjoint, 0).unwrap();
            assert_eq!(ad.restriction().matrix(), &CartanType::A(n - 1).cartan_matrix());
        }
    }

    #[test]
    fn sl4_mod_mu2() {
        // X/Q generated by 2ω1, the index-2 subgroup of P/Q = Z/4
        let gens = vec![vec![Int::from(2), Int::from(0), Int::from(0)]];
        let s = build_split(CartanType::A(3), &Isogeny::Intermediate(gens), 0).unwrap();
        assert_eq!(cokernel(s.restriction().matrix()), ab(&[2]));
        let bad = Isogeny::Intermediate(vec![vec![Int::from(1)]]);
        assert!(matches!(
            build_split(CartanType::A(3), &bad, 0),
            Err(Error::BadIsogeny(_))
        ));
    }

    #[test]
    fn central_torus() {
        let s = build_split(CartanType::A(2), &Isogeny::SimplyConnected, 2).unwrap();
        assert_eq!(s.torus_part_rank(), 2);
        assert_eq!(s.charlattice().rank(), 4);
        let gl = build_gl(3).unwrap();
        assert_eq!(gl.torus_part_rank(), 1);
        assert!(cokernel(gl.restriction().matrix()).is_trivial());
    }

    #[test]
    fn adjoint_fundamental_groups() {
        let cases: &[(CartanType, &[i64])] = &[
            (CartanType::A(4), &[5]),
            (CartanType::B(3), &[2]),
            (CartanType::C(3), &[2]),
            (CartanType::D(4), &[2, 2]),
            (CartanType::D(5), &[4]),
            (CartanType::E6, &[3]),
            (CartanType::E7, &[2]),
            (CartanType::E8, &[]),
            (CartanType::F4, &[]),
            (CartanType::G2, &[]),
        ];
        for (t, orders) in cases {
            let s = build_split(*t, &Isogeny::Adjoint, 0).unwrap();
            assert_eq!(cokernel(s.restriction().matrix()), ab(orders), "{t}");
        }
    }

    #[test]
    fn twists() {
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let a2 = build_split(CartanType::A(2), &Isogeny::Adjoint, 0).unwrap();
        let t = apply_twist(&a2, &c2, &[vec![1, 0]]).unwrap();
        assert_eq!(t.restriction().matrix(), a2.restriction().matrix());
        assert!(t.sc_charlattice().is_permutation_module());

        let c3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let d4 = build_split(CartanType::D(4), &Isogeny::Adjoint, 0).unwrap();
        let tri = CartanType::D(4).named_twist("triality").unwrap();
        apply_twist(&d4, &c3, &[tri]).unwrap();

        // a swap cannot generate a group of order 3
        let e = apply_twist(&a2, &c3, &[vec![1, 0]]).unwrap_err();
        assert!(matches!(e, Error::RelationViolation(_)));
        let b3 = build_split(CartanType::B(3), &Isogeny::Adjoint, 0).unwrap();
        let e = apply_twist(&b3, &c2, &[vec![2, 1, 0]]).unwrap_err();
        assert!(matches!(e, Error::NotDiagramAutomorphism(_)));
    }

    #[test]
    fn unstable_intermediate_lattice() {
        // D4 with X/Q = <ω1>: triality moves ω1 to ω3, which is not in X
        let gens = vec![vec![Int::from(1), Int::from(0), Int::from(0), Int::from(0)]];
        let d4 = build_split(CartanType::D(4), &Isogeny::Intermediate(gens), 0).unwrap();
        let c3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let tri = CartanType::D(4).named_twist("triality").unwrap();
        assert_eq!(apply_twist(&d4, &c3, &[tri]).unwrap_err(), Error::UnstableLattice);
    }

    #[test]
    fn products() {
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let sign = GammaLattice::from_generators(&c2, 1, &[Matrix::from_i64(&[&[-1]])]).unwrap();
        let torus = build_torus(&sign).unwrap();
        let pgl2 = build_split(CartanType::A(1), &Isogeny::Adjoint, 0).unwrap();
        let p = product(&[torus.clone(), pgl2]).unwrap();
        assert_eq!(p.galois().size(), 2);
        assert_eq!(p.charlattice().rank(), 2);
        let c3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let other = build_torus(&GammaLattice::regular(&c3)).unwrap();
        assert_eq!(product(&[torus, other]).unwrap_err(), Error::GroupMismatch);
    }

    #[test]
    fn restriction_must_be_rationally_onto() {
        let g = Arc::new(FiniteGroup::trivial());
        let e = ReductiveGroupSpec::from_raw(
            GammaLattice::trivial(&g, 1),
            GammaLattice::trivial(&g, 2),
            Matrix::from_i64(&[&[1], &[1]]),
        )
        .unwrap_err();
        assert!(matches!(e, Error::BadRestriction(_)));
    }
}

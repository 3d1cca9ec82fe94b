use super::{smith, FinAbGroup, IntMatrix, LatticeSolver, Scalar, Track};
use crate::error::{Error, Result};

/// `ker(d_out) / im(d_in)` with explicit cocycle representatives.
///
/// Generator `i` is represented by column `i` of `representatives`; row `i` of
/// the coordinate matrix reads off the class of a cocycle along generator `i`.
#[derive(Clone, Debug)]
pub struct SubquotientPresentation<T: Scalar> {
    pub group: FinAbGroup<T>,
    pub representatives: Vec<Vec<T>>,
    coords: IntMatrix<T>,
    d_out: IntMatrix<T>,
}

/// Middle homology of `--d_in--> Z^n --d_out-->`.
pub fn homology_at<T: Scalar>(d_in: &IntMatrix<T>, d_out: &IntMatrix<T>) -> Result<SubquotientPresentation<T>> {
    let n = d_out.cols();
    if d_in.rows() != n {
        return Err(Error::Shape(format!(
            "d_in has {} rows but d_out has {} columns",
            d_in.rows(),
            n
        )));
    }
    if !(d_out * d_in).is_zero() {
        return Err(Error::NotComposable);
    }

    // ker(d_out) = span of the trailing columns of V; rows of V^-1 give coordinates on it.
    let out = smith(
        d_out,
        Track {
            v: true,
            v_inv: true,
            ..Track::NONE
        },
    );
    let trailing: Vec<usize> = (out.rank..n).collect();
    let kernel = out.v.unwrap().select_columns(&trailing);
    let to_kernel = out.v_inv.unwrap().select_rows(&trailing);

    let relations = &to_kernel * d_in;
    let rel = smith(
        &relations,
        Track {
            u: true,
            u_inv: true,
            ..Track::NONE
        },
    );
    let k = trailing.len();
    let diag = rel.diagonal();
    let u = rel.u.unwrap();
    let u_inv = rel.u_inv.unwrap();

    let mut gens = Vec::new();
    let mut orders = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if !d.is_one() {
            gens.push(i);
            orders.push(d.clone());
        }
    }
    let free = rel.rank..k;
    gens.extend(free.clone());
    let group = FinAbGroup::from_diagonal(&orders, free.len());

    let reps_matrix = &kernel * &u_inv.select_columns(&gens);
    let coords = &u.select_rows(&gens) * &to_kernel;
    Ok(SubquotientPresentation {
        group,
        representatives: reps_matrix.columns(),
        coords,
        d_out: d_out.clone(),
    })
}

impl<T: Scalar> SubquotientPresentation<T> {
    pub fn ambient_dim(&self) -> usize {
        self.d_out.cols()
    }

    pub fn is_cocycle(&self, z: &[T]) -> bool {
        z.len() == self.ambient_dim() && self.d_out.mul_vec(z).iter().all(|x| x.is_zero())
    }

    /// Reduced class coordinates of a cocycle, `None` if `z` is not a cocycle.
    pub fn class_of(&self, z: &[T]) -> Option<Vec<T>> {
        if !self.is_cocycle(z) {
            return None;
        }
        let mut c = self.coords.mul_vec(z);
        self.group.reduce(&mut c);
        Some(c)
    }

    pub fn is_boundary(&self, z: &[T]) -> bool {
        self.class_of(z).is_some_and(|c| c.iter().all(|x| x.is_zero()))
    }

    /// Representatives as the columns of one matrix.
    pub fn representative_matrix(&self) -> IntMatrix<T> {
        IntMatrix::from_columns(self.ambient_dim(), &self.representatives).expect("representative length")
    }

    /// Cocycle representing the class with coordinates `c`.
    pub fn cocycle_for(&self, c: &[T]) -> Vec<T> {
        self.representative_matrix().mul_vec(c)
    }

    /// Map on classes induced by a cochain map into `target`.
    ///
    /// Fails when some representative does not land on a cocycle, which means
    /// the cochain map is not a chain map.
    pub fn map_to(&self, target: &Self, cochain_map: &IntMatrix<T>) -> Result<ClassMap<T>> {
        if cochain_map.cols() != self.ambient_dim() || cochain_map.rows() != target.ambient_dim() {
            return Err(Error::Shape("cochain map does not match source and target".into()));
        }
        let mut images = Vec::with_capacity(self.representatives.len());
        for (i, rep) in self.representatives.iter().enumerate() {
            let image = cochain_map.mul_vec(rep);
            let c = target
                .class_of(&image)
                .ok_or_else(|| Error::Internal(format!("image of generator {i} is not a cocycle")))?;
            images.push(c);
        }
        let matrix = IntMatrix::from_columns(target.group.generator_count(), &images)?;
        Ok(ClassMap {
            source: self.group.clone(),
            target: target.group.clone(),
            matrix,
        })
    }

    /// Coefficient vectors (columns) spanning the kernel of the induced map into a
    /// complex whose boundaries are the columns of `target_boundaries`.
    ///
    /// Only the incoming differential of the target is needed, so this works
    /// without presenting the target group.
    pub fn induced_kernel(&self, cochain_map: &IntMatrix<T>, target_boundaries: &IntMatrix<T>) -> IntMatrix<T> {
        let g = self.representatives.len();
        let images = cochain_map * &self.representative_matrix();
        let stacked = images.hstack(target_boundaries);
        let k = super::kernel_basis(&stacked);
        k.select_rows(&(0..g).collect::<Vec<_>>())
    }

    /// Whether the class with coordinates `x` lies in the subgroup generated by
    /// the classes in the columns of `span`.
    pub fn in_span(&self, span: &IntMatrix<T>, x: &[T]) -> bool {
        let g = self.group.generator_count();
        let tors = self.group.invariant_factors();
        let mut rel = IntMatrix::zeros(g, tors.len());
        for (i, d) in tors.iter().enumerate() {
            rel[(i, i)] = d.clone();
        }
        LatticeSolver::new(&span.hstack(&rel)).contains(x)
    }
}

/// Homomorphism of finitely generated abelian groups in generator coordinates:
/// column `j` holds the reduced image of source generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMap<T: Scalar> {
    pub source: FinAbGroup<T>,
    pub target: FinAbGroup<T>,
    pub matrix: IntMatrix<T>,
}

impl<T: Scalar> ClassMap<T> {
    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Composition `other ∘ self`, reduced in the final target.
    pub fn then(&self, other: &ClassMap<T>) -> ClassMap<T> {
        let m = &other.matrix * &self.matrix;
        let mut cols = m.columns();
        for c in &mut cols {
            other.target.reduce(c);
        }
        let matrix = IntMatrix::from_columns(other.target.generator_count(), &cols).expect("shape");
        ClassMap {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.matrix.is_identity()
    }
}

use std::fmt;

use crate::error::{Error, Result};
use crate::Matrix;

/// Irreducible Dynkin type with its rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl CartanType {
    /// Parses a family letter (`"A"`, `"E"`, ...) or full name (`"E6"`) with a rank.
    pub fn new(family: &str, rank: usize) -> Result<Self> {
        let bad = || Error::IllegalCartanType(format!("{family}{rank}"));
        let fam = family.trim().to_ascii_uppercase();
        let (letter, fixed) = match fam.len() {
            1 => (fam.as_str(), None),
            _ => (&fam[..1], Some(fam[1..].parse::<usize>().map_err(|_| bad())?)),
        };
        if fixed.is_some_and(|r| r != rank) {
            return Err(bad());
        }
        match (letter, rank) {
            ("A", n) if n >= 1 => Ok(CartanType::A(n)),
            ("B", n) if n >= 2 => Ok(CartanType::B(n)),
            ("C", n) if n >= 2 => Ok(CartanType::C(n)),
            ("D", n) if n >= 3 => Ok(CartanType::D(n)),
            ("E", 6) => Ok(CartanType::E6),
            ("E", 7) => Ok(CartanType::E7),
            ("E", 8) => Ok(CartanType::E8),
            ("F", 4) => Ok(CartanType::F4),
            ("G", 2) => Ok(CartanType::G2),
            _ => Err(bad()),
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) => n,
            CartanType::E6 => 6,
            CartanType::E7 => 7,
            CartanType::E8 => 8,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    /// Cartan matrix with `C[i][j] = <α_j, α_i^∨>` in Bourbaki numbering (0-based).
    /// Column `j` is the simple root `α_j` in fundamental-weight coordinates.
    pub fn cartan_matrix(&self) -> Matrix {
        let n = self.rank();
        let mut c = Matrix::identity(n).scale(&2.into());
        let mut link = |i: usize, j: usize, cij: i64, cji: i64| {
            c[(i, j)] = cij.into();
            c[(j, i)] = cji.into();
        };
        match *self {
            CartanType::A(_) => (1..n).for_each(|k| link(k - 1, k, -1, -1)),
            CartanType::B(_) => {
                (1..n - 1).for_each(|k| link(k - 1, k, -1, -1));
                // α_n short
                link(n - 2, n - 1, -1, -2);
            }
            CartanType::C(_) => {
                (1..n - 1).for_each(|k| link(k - 1, k, -1, -1));
                // α_n long
                link(n - 2, n - 1, -2, -1);
            }
            CartanType::D(_) => {
                (1..n - 1).for_each(|k| link(k - 1, k, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            CartanType::E6 | CartanType::E7 | CartanType::E8 => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                (3..n).for_each(|k| link(k - 1, k, -1, -1));
            }
            CartanType::F4 => {
                link(0, 1, -1, -1);
                link(1, 2, -1, -2);
                link(2, 3, -1, -1);
            }
            CartanType::G2 => link(0, 1, -3, -1),
        }
        c
    }

    /// Standard diagram automorphisms by name: `"swap"` (order 2 on A_n, D_n, E6)
    /// and `"triality"` (order 3 on D4).
    pub fn named_twist(&self, name: &str) -> Result<Vec<usize>> {
        let n = self.rank();
        let bad = || Error::IllegalCartanType(format!("{self} has no diagram automorphism {name:?}"));
        match (self, name) {
            (CartanType::A(_), "swap") if n >= 2 => Ok((0..n).rev().collect()),
            (CartanType::D(_), "swap") => {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(n - 2, n - 1);
                Ok(p)
            }
            (CartanType::D(4), "triality") => Ok(vec![2, 1, 3, 0]),
            (CartanType::E6, "swap") => Ok(vec![5, 1, 4, 3, 2, 0]),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E6 => write!(f, "E6"),
            CartanType::E7 => write!(f, "E7"),
            CartanType::E8 => write!(f, "E8"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

pub fn cartan_matrix(family: &str, rank: usize) -> Result<Matrix> {
    Ok(CartanType::new(family, rank)?.cartan_matrix())
}

/// `C[σ(i)][σ(j)] = C[i][j]` for all `i, j`.
pub fn is_diagram_automorphism(cartan: &Matrix, perm: &[usize]) -> bool {
    let n = cartan.rows();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return false;
    }
    (0..n).all(|i| (0..n).all(|j| cartan[(perm[i], perm[j])] == cartan[(i, j)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    #[test]
    fn small_tables() {
        assert_eq!(cartan_matrix("A", 1).unwrap(), Matrix::from_i64(&[&[2]]));
        assert_eq!(cartan_matrix("A", 2).unwrap(), Matrix::from_i64(&[&[2, -1], &[-1, 2]]));
        assert_eq!(cartan_matrix("G", 2).unwrap().det(), Int::from(1));
        assert_eq!(
            cartan_matrix("B", 2).unwrap(),
            cartan_matrix("C", 2).unwrap().transpose()
        );
    }

    #[test]
    fn illegal_types() {
        assert!(CartanType::new("D", 2).is_err());
        assert!(CartanType::new("E", 5).is_err());
        assert!(CartanType::new("A", 0).is_err());
        assert!(CartanType::new("Q", 3).is_err());
        assert!(CartanType::new("E6", 7).is_err());
        assert_eq!(CartanType::new("e7", 7).unwrap(), CartanType::E7);
    }

    #[test]
    fn determinants_and_shape() {
        let cases: &[(&str, usize, i64)] = &[
            ("A", 1, 2),
            ("A", 4, 5),
            ("B", 3, 2),
            ("C", 4, 2),
            ("D", 4, 4),
            ("D", 5, 4),
            ("E", 6, 3),
            ("E", 7, 2),
            ("E", 8, 1),
            ("F", 4, 1),
            ("G", 2, 1),
        ];
        for &(f, r, det) in cases {
            let c = cartan_matrix(f, r).unwrap();
            assert_eq!(c.det(), Int::from(det), "{f}{r}");
            for i in 0..r {
                assert_eq!(c[(i, i)], Int::from(2));
                for j in 0..r {
                    if i != j {
                        assert!(c[(i, j)] <= Int::from(0));
                        assert_eq!(c[(i, j)] == Int::from(0), c[(j, i)] == Int::from(0));
                    }
                }
            }
        }
    }

    #[test]
    fn twists_are_automorphisms() {
        for (t, name) in [
            (CartanType::A(2), "swap"),
            (CartanType::A(5), "swap"),
            (CartanType::D(4), "triality"),
            (CartanType::D(5), "swap"),
            (CartanType::E6, "swap"),
        ] {
            let p = t.named_twist(name).unwrap();
            assert!(is_diagram_automorphism(&t.cartan_matrix(), &p), "{t} {name}");
        }
        let b3 = CartanType::B(3).cartan_matrix();
        assert!(!is_diagram_automorphism(&b3, &[2, 1, 0]));
        assert!(CartanType::B(3).named_twist("swap").is_err());
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{smith, IntMatrix, Scalar, Track};

/// Finitely generated abelian group `Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk`
/// in invariant-factor form: every `di >= 2` and `di | d(i+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup<T: Scalar> {
    invariant_factors: Vec<T>,
    free_rank: usize,
}

impl<T: Scalar> FinAbGroup<T> {
    pub fn trivial() -> Self {
        FinAbGroup {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup {
            invariant_factors: Vec::new(),
            free_rank: rank,
        }
    }

    pub fn cyclic(n: T) -> Self {
        Self::from_orders(&[n])
    }

    /// Normalizes the diagonal of an already-Smith matrix: zeros become free
    /// summands, units are dropped. `extra_free` counts zero rows past the diagonal.
    pub(crate) fn from_diagonal(diag: &[T], extra_free: usize) -> Self {
        let mut free_rank = extra_free;
        let mut invariant_factors = Vec::new();
        for d in diag {
            let d = d.abs();
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                invariant_factors.push(d);
            }
        }
        FinAbGroup {
            invariant_factors,
            free_rank,
        }
    }

    /// `⊕ Z/ni` for arbitrary orders (0 meaning `Z`), brought into normal form.
    pub fn from_orders(orders: &[T]) -> Self {
        let n = orders.len();
        let r = smith(&IntMatrix::diagonal(n, n, orders), Track::NONE);
        let mut g = Self::from_diagonal(&r.diagonal(), n - r.rank);
        g.invariant_factors.sort();
        g
    }

    pub fn invariant_factors(&self) -> &[T] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Order of the group, `None` when it is infinite.
    pub fn order(&self) -> Option<T> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().fold(T::one(), |acc, d| acc * d.clone()))
    }

    /// Exponent of the torsion part.
    pub fn exponent(&self) -> T {
        self.invariant_factors.last().cloned().unwrap_or_else(T::one)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders: Vec<T> = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .cloned()
            .collect();
        orders.extend(std::iter::repeat_n(T::zero(), self.free_rank + other.free_rank));
        Self::from_orders(&orders)
    }

    /// Number of generators in the normal-form presentation.
    pub fn generator_count(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    /// Relation order of generator `i`: the invariant factor, or zero for free generators.
    pub fn generator_order(&self, i: usize) -> T {
        self.invariant_factors.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Reduces a coordinate vector: torsion coordinates into `[0, d)`, free ones untouched.
    pub fn reduce(&self, coords: &mut [T]) {
        for (c, d) in coords.iter_mut().zip(&self.invariant_factors) {
            *c = c.mod_floor(d);
        }
    }
}

impl<T: Scalar> fmt::Display for FinAbGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" x "))
    }
}

#[derive(Serialize, Deserialize)]
struct FinAbRepr {
    invariant_factors: Vec<String>,
    free_rank: usize,
}

impl<T: Scalar> Serialize for FinAbGroup<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FinAbRepr {
            invariant_factors: self.invariant_factors.iter().map(|d| d.to_string()).collect(),
            free_rank: self.free_rank,
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for FinAbGroup<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = FinAbRepr::deserialize(d)?;
        let mut orders = Vec::new();
        for s in &repr.invariant_factors {
            let v = T::from_str(s).map_err(|_| serde::de::Error::custom(format!("bad integer {s:?}")))?;
            orders.push(v);
        }
        orders.extend(std::iter::repeat_n(T::zero(), repr.free_rank));
        Ok(Self::from_orders(&orders))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = FinAbGroup<i64>;

    #[test]
    fn normal_form() {
        let g = G::from_orders(&[2, 3]);
        assert_eq!(g.invariant_factors(), &[6]);
        let g = G::from_orders(&[4, 2, 1, 0]);
        assert_eq!(g.invariant_factors(), &[2, 4]);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.order(), None);
        assert_eq!(G::from_orders(&[2, 4]).order(), Some(8));
    }

    #[test]
    fn rendering() {
        assert_eq!(G::from_orders(&[2, 4]).to_string(), "Z/2 x Z/4");
        assert_eq!(G::trivial().to_string(), "0");
        assert_eq!(G::from_orders(&[0, 0, 3]).to_string(), "Z^2 x Z/3");
        assert_eq!(G::free(1).to_string(), "Z");
    }

    #[test]
    fn sums() {
        let g = G::cyclic(2).direct_sum(&G::cyclic(2));
        assert_eq!(g.invariant_factors(), &[2, 2]);
        let g = G::cyclic(4).direct_sum(&G::cyclic(6));
        assert_eq!(g.invariant_factors(), &[2, 12]);
    }

    #[test]
    fn json_shape() {
        let g = G::from_orders(&[2, 0]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"invariant_factors":["2"],"free_rank":1}"#);
        let back: G = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the order of a Galois quotient.
pub const DEFAULT_GROUP_CAP: usize = 64;

/// How a finite group is described in input files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic {
        order: usize,
    },
    Table {
        size: usize,
        mul: Vec<Vec<usize>>,
    },
    /// Permutations in image notation, 0-based: `[1, 0, 2]` swaps the first two points.
    Perm {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

/// A finite group given by its multiplication table.
///
/// Element 0 is not assumed to be the identity; use [`FiniteGroup::identity`].
/// `generators` is the ordered generating set that generator-indexed lattice
/// actions refer to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    size: usize,
    mul: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
}

pub fn build_group(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic { order } => {
            if *order > cap {
                return Err(Error::GroupTooLarge { size: *order, cap });
            }
            FiniteGroup::cyclic(*order)
        }
        GroupSpec::Table { size, mul } => {
            if mul.len() != *size {
                return Err(Error::schema(
                    "mul",
                    format!("{} rows for a group of size {}", mul.len(), size),
                ));
            }
            FiniteGroup::from_table(mul, cap)
        }
        GroupSpec::Perm { degree, generators } => FiniteGroup::from_permutations(*degree, generators, cap),
    }
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        Self::cyclic(1).unwrap()
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let mul = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        let inverses = (0..n).map(|a| (n - a) % n).collect();
        let generators = if n == 1 { vec![] } else { vec![1] };
        Ok(FiniteGroup {
            size: n,
            mul,
            identity: 0,
            inverses,
            generators,
        })
    }

    /// Validates a multiplication table: closure, identity, inverses, associativity.
    pub fn from_table(table: &[Vec<usize>], cap: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if n > cap {
            return Err(Error::GroupTooLarge { size: n, cap });
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::schema(format!("mul[{i}]"), format!("expected {n} entries")));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::schema(
                    format!("mul[{i}]"),
                    format!("element {bad} out of range"),
                ));
            }
            mul.extend_from_slice(row);
        }
        let at = |a: usize, b: usize| mul[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NonAssociative(a, b, c));
                    }
                }
            }
        }
        let mut g = FiniteGroup {
            size: n,
            mul,
            identity,
            inverses,
            generators: Vec::new(),
        };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    /// Closure of permutation generators, composed as `(p*q)(x) = p(q(x))`.
    /// The identity permutation becomes element 0; generator `k` keeps its position in `generators`.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>], cap: usize) -> Result<Self> {
        for (k, p) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            if p.len() != degree {
                return Err(Error::NotPermutation(k));
            }
            for &x in p {
                if x >= degree || seen[x] {
                    return Err(Error::NotPermutation(k));
                }
                seen[x] = true;
            }
        }
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&x| p[x]).collect() };
        let id: Vec<usize> = (0..degree).collect();
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let next = compose(&elements[i], g);
                if !index.contains_key(&next) {
                    if elements.len() == cap {
                        return Err(Error::GroupTooLarge { size: cap + 1, cap });
                    }
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        let n = elements.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                mul.push(index[&compose(a, b)]);
            }
        }
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mul[a * n + b] == 0)
                    .expect("closure contains inverses")
            })
            .collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(FiniteGroup {
            size: n,
            mul,
            identity: 0,
            inverses,
            generators,
        })
    }

    /// Symmetric group on three points, generated by (0 1) and (1 2).
    pub fn s3() -> Self {
        Self::from_permutations(3, &[vec![1, 0, 2], vec![0, 2, 1]], DEFAULT_GROUP_CAP).unwrap()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// An element of full order, preferring a declared generator.
    pub fn cyclic_generator(&self) -> Option<usize> {
        if self.size == 1 {
            return Some(self.identity);
        }
        self.generators
            .iter()
            .copied()
            .chain(0..self.size)
            .find(|&g| self.element_order(g) == self.size)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.size];
        inside[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.size).filter(|&x| inside[x]).collect()
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        for g in 0..self.size {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// All subgroups, without duplicates, ordered by size and then by elements.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let trivial = vec![self.identity];
        let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        let mut gens_of: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        found.insert((1, trivial.clone()));
        gens_of.insert(trivial.clone(), Vec::new());
        let mut queue = VecDeque::from([trivial]);
        while let Some(h) = queue.pop_front() {
            let h_gens = gens_of[&h].clone();
            for g in 0..self.size {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h_gens.clone();
                gens.push(g);
                let k = self.closure(&gens);
                if found.insert((k.len(), k.clone())) {
                    gens_of.insert(k.clone(), gens);
                    queue.push_back(k);
                }
            }
        }
        found.into_iter().map(|(_, elements)| Subgroup { elements }).collect()
    }
}

/// A subgroup as a sorted set of elements of the parent group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    pub elements: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// The subgroup as a group in its own right; element `i` is `self.elements[i]`.
    pub fn to_group(&self, parent: &FiniteGroup) -> FiniteGroup {
        let pos: HashMap<usize, usize> = self.elements.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let table: Vec<Vec<usize>> = self
            .elements
            .iter()
            .map(|&a| self.elements.iter().map(|&b| pos[&parent.mul(a, b)]).collect())
            .collect();
        FiniteGroup::from_table(&table, usize::MAX).expect("subgroup table is a group")
    }
}

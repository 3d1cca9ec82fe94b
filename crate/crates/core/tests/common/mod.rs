//! Oracles shared by the integration tests. None of these go through the
//! library's cochain code.
#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use galcoh::exactlin::homology_at;
use galcoh::gmod::{GammaLattice, LatticeMap};
use galcoh::picard::ResolutionData;
use galcoh::rootdata::ReductiveGroupSpec;
use galcoh::schema::{self, CrossCheckJson, SpecJson};
use galcoh::{AbGroup, Int, Matrix};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub fn ab(orders: &[i64]) -> AbGroup {
    AbGroup::from_orders(&orders.iter().map(|&x| Int::from(x)).collect::<Vec<_>>())
}

/// Determinant by fraction-free elimination over `i128`.
pub fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Cokernel of a small integer matrix from its determinantal divisors:
/// `d_k` = gcd of the `k x k` minors, invariant factors `d_k / d_(k-1)`.
pub fn cokernel_by_minors(m: &Matrix) -> AbGroup {
    let rows: Vec<Vec<i128>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i128().unwrap()).collect())
        .collect();
    let (r, c) = m.shape();
    let mut divisors = vec![1i128];
    for k in 1..=r.min(c) {
        let mut g = 0i128;
        for ri in combinations(r, k) {
            for ci in combinations(c, k) {
                let minor: Vec<Vec<i128>> = ri.iter().map(|&i| ci.iter().map(|&j| rows[i][j]).collect()).collect();
                g = g.gcd(&det_i128(&minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    let rank = divisors.len() - 1;
    let mut orders: Vec<Int> = divisors.windows(2).map(|w| Int::from(w[1] / w[0])).collect();
    orders.extend(std::iter::repeat_n(Int::zero(), r - rank));
    AbGroup::from_orders(&orders)
}

fn shifted(m: &Matrix, c: i64) -> Matrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        out[(i, i)] += Int::from(c);
    }
    out
}

/// `H^n(C_m, M)` for `n >= 1` from the periodic resolution: odd degrees give
/// `ker N / (σ - 1)M`, even degrees `ker(σ - 1) / NM`.
pub fn cyclic_oracle(lattice: &GammaLattice, n: usize) -> AbGroup {
    let g = lattice.group();
    let sigma = g.generators()[0];
    let s = lattice.action(sigma);
    let r = lattice.rank();
    let mut norm = Matrix::zeros(r, r);
    let mut power = Matrix::identity(r);
    for _ in 0..g.size() {
        norm = norm.add(&power);
        power = s * &power;
    }
    let delta = shifted(s, -1);
    let h = if n % 2 == 1 {
        homology_at(&delta, &norm)
    } else {
        homology_at(&norm, &delta)
    };
    h.unwrap().group
}

/// `ℍ^1` of `[A -> B]` from differentials written out by hand:
/// `D^0 a = (g ↦ g·a - a, f(a))`,
/// `D^1 (φ, b) = ((g, h) ↦ g·φ(h) - φ(gh) + φ(g), f∘φ - (g ↦ g·b - b))`.
pub fn hand_cone_h1(map: &LatticeMap) -> AbGroup {
    let a = map.source();
    let b = map.target();
    let g = a.group();
    let s = g.size();
    let (ra, rb) = (a.rank(), b.rank());
    let f = map.matrix();
    let one = Int::one();
    let id_a = Matrix::identity(ra);
    let id_b = Matrix::identity(rb);

    // C^1(A) ⊕ B  <-  A
    let mut d0 = Matrix::zeros(s * ra + rb, ra);
    for x in 0..s {
        d0.add_to_block(x * ra, 0, a.action(x), &one);
        d0.add_to_block(x * ra, 0, &id_a, &-one.clone());
    }
    d0.add_to_block(s * ra, 0, f, &one);

    // C^2(A) ⊕ C^1(B)  <-  C^1(A) ⊕ B
    let mut d1 = Matrix::zeros(s * s * ra + s * rb, s * ra + rb);
    for x in 0..s {
        for y in 0..s {
            let row = (x * s + y) * ra;
            d1.add_to_block(row, y * ra, a.action(x), &one);
            d1.add_to_block(row, g.mul(x, y) * ra, &id_a, &-one.clone());
            d1.add_to_block(row, x * ra, &id_a, &one);
        }
    }
    for x in 0..s {
        let row = s * s * ra + x * rb;
        d1.add_to_block(row, x * ra, f, &one);
        d1.add_to_block(row, s * ra, b.action(x), &-one.clone());
        d1.add_to_block(row, s * ra, &id_b, &one);
    }
    homology_at(&d0, &d1).unwrap().group
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn json_files(sub: &str) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(corpus_dir().join(sub))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
}

pub fn stem(p: &Path) -> String {
    p.file_stem().unwrap().to_string_lossy().into_owned()
}

pub fn load_spec(name: &str) -> ReductiveGroupSpec {
    let text = fs::read_to_string(corpus_dir().join("specs").join(format!("{name}.json"))).unwrap();
    schema::parse::<SpecJson>(&text).unwrap().build(64).unwrap()
}

pub fn corpus_specs() -> Vec<(String, ReductiveGroupSpec)> {
    json_files("specs")
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).unwrap();
            (stem(&p), schema::parse::<SpecJson>(&text).unwrap().build(64).unwrap())
        })
        .collect()
}

pub fn corpus_resolutions() -> Vec<(String, ReductiveGroupSpec, ResolutionData)> {
    json_files("resolutions")
        .into_iter()
        .map(|p| {
            let cc: CrossCheckJson = schema::parse(&fs::read_to_string(&p).unwrap()).unwrap();
            (stem(&p), cc.spec.build(64).unwrap(), cc.resolution.build(64).unwrap())
        })
        .collect()
}

pub fn corpus_files(sub: &str) -> Vec<PathBuf> {
    json_files(sub)
}

use super::{ext_gcd, FinAbGroup, IntMatrix, Scalar};

/// Smith decomposition `U·A·V = S` with `U`, `V` unimodular and
/// `S` diagonal with `d1 | d2 | ...`, all `di >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T: Scalar> {
    pub u: IntMatrix<T>,
    pub s: IntMatrix<T>,
    pub v: IntMatrix<T>,
}

impl<T: Scalar> SmithForm<T> {
    /// The diagonal of `S`, `min(rows, cols)` entries.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Which transformation matrices to accumulate during elimination.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    #[cfg(test)]
    pub const ALL: Track = Track {
        u: true,
        u_inv: true,
        v: true,
        v_inv: true,
    };
    pub const NONE: Track = Track {
        u: false,
        u_inv: false,
        v: false,
        v_inv: false,
    };
}

/// Result of an elimination: diagonal `S` plus the requested transforms.
pub(crate) struct Smith<T: Scalar> {
    pub s: IntMatrix<T>,
    pub rank: usize,
    pub u: Option<IntMatrix<T>>,
    pub u_inv: Option<IntMatrix<T>>,
    pub v: Option<IntMatrix<T>>,
    pub v_inv: Option<IntMatrix<T>>,
}

impl<T: Scalar> Smith<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

struct Calc<T: Scalar> {
    a: IntMatrix<T>,
    u: Option<IntMatrix<T>>,
    u_inv: Option<IntMatrix<T>>,
    v: Option<IntMatrix<T>>,
    v_inv: Option<IntMatrix<T>>,
}

impl<T: Scalar> Calc<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(i, j);
        }
    }

    /// row_i -= q * row_j, starting at column `from` in `a`.
    fn row_sub(&mut self, i: usize, j: usize, q: &T, from: usize) {
        row_sub_in(&mut self.a, i, j, q, from);
        if let Some(u) = &mut self.u {
            row_sub_in(u, i, j, q, 0);
        }
        if let Some(ui) = &mut self.u_inv {
            // inverse op is row_i += q row_j, which on the right of U^-1 is col_j += q col_i
            let neg = -q.clone();
            col_sub_in(ui, j, i, &neg, 0);
        }
    }

    /// col_i -= q * col_j, starting at row `from` in `a`.
    fn col_sub(&mut self, i: usize, j: usize, q: &T, from: usize) {
        col_sub_in(&mut self.a, i, j, q, from);
        if let Some(v) = &mut self.v {
            col_sub_in(v, i, j, q, 0);
        }
        if let Some(vi) = &mut self.v_inv {
            let neg = -q.clone();
            row_sub_in(vi, j, i, &neg, 0);
        }
    }

    fn negate_row(&mut self, i: usize) {
        negate_row_in(&mut self.a, i);
        if let Some(u) = &mut self.u {
            negate_row_in(u, i);
        }
        if let Some(ui) = &mut self.u_inv {
            for k in 0..ui.rows() {
                let x = -ui[(k, i)].clone();
                ui[(k, i)] = x;
            }
        }
    }

    /// Replaces the diagonal pair `(a, b)` at positions `i < j` by `(gcd, lcm)`.
    fn gcd_lcm(&mut self, i: usize, j: usize) {
        let a = self.a[(i, i)].clone();
        let b = self.a[(j, j)].clone();
        let (g, s, t) = ext_gcd(&a, &b);
        let ag = a.clone() / g.clone();
        let bg = b.clone() / g.clone();
        // U-side: [[s, t], [-b/g, a/g]], inverse [[a/g, -t], [b/g, s]]
        // V-side: [[1, -t b/g], [1, s a/g]], inverse [[s a/g, t b/g], [-1, 1]]
        let ur = [[s.clone(), t.clone()], [-bg.clone(), ag.clone()]];
        let ur_inv = [[ag.clone(), -t.clone()], [bg.clone(), s.clone()]];
        let vc = [
            [T::one(), -(t.clone() * bg.clone())],
            [T::one(), s.clone() * ag.clone()],
        ];
        let vc_inv = [[s * ag, t * bg], [-T::one(), T::one()]];
        combine_rows(&mut self.a, i, j, &ur);
        combine_cols(&mut self.a, i, j, &vc);
        if let Some(u) = &mut self.u {
            combine_rows(u, i, j, &ur);
        }
        if let Some(ui) = &mut self.u_inv {
            combine_cols(ui, i, j, &ur_inv);
        }
        if let Some(v) = &mut self.v {
            combine_cols(v, i, j, &vc);
        }
        if let Some(vi) = &mut self.v_inv {
            combine_rows(vi, i, j, &vc_inv);
        }
        debug_assert!(self.a[(i, j)].is_zero() && self.a[(j, i)].is_zero());
    }

    /// Picks a nonzero entry of minimal absolute value in the trailing block,
    /// breaking ties by a Markowitz count to limit fill-in.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let (m, n) = self.a.shape();
        let mut best: Option<(usize, usize)> = None;
        let mut best_abs: Option<T> = None;
        for i in t..m {
            for (j, x) in self.a.row(i).iter().enumerate().skip(t) {
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best_abs.as_ref().is_none_or(|b| ax < *b) {
                    best_abs = Some(ax);
                    best = Some((i, j));
                }
            }
        }
        let best_abs = best_abs?;
        if !best_abs.is_one() {
            return best;
        }
        let row_nnz: Vec<usize> = (t..m)
            .map(|i| self.a.row(i)[t..].iter().filter(|x| !x.is_zero()).count())
            .collect();
        let mut col_nnz = vec![0usize; n - t];
        for i in t..m {
            for (k, x) in self.a.row(i)[t..].iter().enumerate() {
                if !x.is_zero() {
                    col_nnz[k] += 1;
                }
            }
        }
        let mut best_cost = usize::MAX;
        for i in t..m {
            for (k, x) in self.a.row(i)[t..].iter().enumerate() {
                if x.is_one() || (-x.clone()).is_one() {
                    let cost = (row_nnz[i - t] - 1) * (col_nnz[k] - 1);
                    if cost < best_cost {
                        best_cost = cost;
                        best = Some((i, k + t));
                        if cost == 0 {
                            return best;
                        }
                    }
                }
            }
        }
        best
    }

    fn run(mut self) -> Smith<T> {
        let (m, n) = self.a.shape();
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = self.find_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a[(t, t)].clone();
                for i in t + 1..m {
                    if !self.a[(i, t)].is_zero() {
                        let q = self.a[(i, t)].clone() / p.clone();
                        if !q.is_zero() {
                            self.row_sub(i, t, &q, t);
                        }
                    }
                }
                for j in t + 1..n {
                    if !self.a[(t, j)].is_zero() {
                        let q = self.a[(t, j)].clone() / p.clone();
                        if !q.is_zero() {
                            self.col_sub(j, t, &q, t);
                        }
                    }
                }
                // leftovers are strictly smaller than the pivot; move the smallest in
                let mut best: Option<(bool, usize, T)> = None;
                for i in t + 1..m {
                    let x = &self.a[(i, t)];
                    if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.2) {
                        best = Some((true, i, x.abs()));
                    }
                }
                for j in t + 1..n {
                    let x = &self.a[(t, j)];
                    if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.2) {
                        best = Some((false, j, x.abs()));
                    }
                }
                match best {
                    None => break,
                    Some((true, i, _)) => self.swap_rows(t, i),
                    Some((false, j, _)) => self.swap_cols(t, j),
                }
            }
            t += 1;
        }
        let rank = t;
        for i in 0..rank {
            for j in i + 1..rank {
                if !(self.a[(j, j)].clone() % self.a[(i, i)].clone()).is_zero() {
                    self.gcd_lcm(i, j);
                }
            }
            if self.a[(i, i)].is_negative() {
                self.negate_row(i);
            }
        }
        Smith {
            s: self.a,
            rank,
            u: self.u,
            u_inv: self.u_inv,
            v: self.v,
            v_inv: self.v_inv,
        }
    }
}

fn row_sub_in<T: Scalar>(m: &mut IntMatrix<T>, i: usize, j: usize, q: &T, from: usize) {
    let cols = m.cols();
    for k in from..cols {
        if m[(j, k)].is_zero() {
            continue;
        }
        let src = m[(j, k)].clone();
        m[(i, k)].sub_mul(q, &src);
    }
}

fn col_sub_in<T: Scalar>(m: &mut IntMatrix<T>, i: usize, j: usize, q: &T, from: usize) {
    let rows = m.rows();
    for k in from..rows {
        if m[(k, j)].is_zero() {
            continue;
        }
        let src = m[(k, j)].clone();
        m[(k, i)].sub_mul(q, &src);
    }
}

fn negate_row_in<T: Scalar>(m: &mut IntMatrix<T>, i: usize) {
    for k in 0..m.cols() {
        let x = -m[(i, k)].clone();
        m[(i, k)] = x;
    }
}

/// (row_i, row_j) <- c · (row_i, row_j)
fn combine_rows<T: Scalar>(m: &mut IntMatrix<T>, i: usize, j: usize, c: &[[T; 2]; 2]) {
    for k in 0..m.cols() {
        let (x, y) = (m[(i, k)].clone(), m[(j, k)].clone());
        if x.is_zero() && y.is_zero() {
            continue;
        }
        m[(i, k)] = c[0][0].clone() * x.clone() + c[0][1].clone() * y.clone();
        m[(j, k)] = c[1][0].clone() * x + c[1][1].clone() * y;
    }
}

/// (col_i, col_j) <- (col_i, col_j) · c
fn combine_cols<T: Scalar>(m: &mut IntMatrix<T>, i: usize, j: usize, c: &[[T; 2]; 2]) {
    for k in 0..m.rows() {
        let (x, y) = (m[(k, i)].clone(), m[(k, j)].clone());
        if x.is_zero() && y.is_zero() {
            continue;
        }
        m[(k, i)] = x.clone() * c[0][0].clone() + y.clone() * c[1][0].clone();
        m[(k, j)] = x * c[0][1].clone() + y * c[1][1].clone();
    }
}

pub(crate) fn smith<T: Scalar>(a: &IntMatrix<T>, track: Track) -> Smith<T> {
    let (m, n) = a.shape();
    let id = |size, on: bool| on.then(|| IntMatrix::identity(size));
    Calc {
        a: a.clone(),
        u: id(m, track.u),
        u_inv: id(m, track.u_inv),
        v: id(n, track.v),
        v_inv: id(n, track.v_inv),
    }
    .run()
}

/// Smith normal form with both transforms.
pub fn snf<T: Scalar>(a: &IntMatrix<T>) -> SmithForm<T> {
    let r = smith(
        a,
        Track {
            u: true,
            v: true,
            ..Track::NONE
        },
    );
    SmithForm {
        u: r.u.unwrap(),
        s: r.s,
        v: r.v.unwrap(),
    }
}

pub fn rank<T: Scalar>(a: &IntMatrix<T>) -> usize {
    smith(a, Track::NONE).rank
}

/// Columns form a basis of the integer kernel `{x : A·x = 0}`.
pub fn kernel_basis<T: Scalar>(a: &IntMatrix<T>) -> IntMatrix<T> {
    let r = smith(a, Track { v: true, ..Track::NONE });
    let idx: Vec<usize> = (r.rank..a.cols()).collect();
    r.v.unwrap().select_columns(&idx)
}

/// `Z^rows / column-span(A)`.
pub fn cokernel<T: Scalar>(a: &IntMatrix<T>) -> FinAbGroup<T> {
    let r = smith(a, Track::NONE);
    FinAbGroup::from_diagonal(&r.diagonal(), a.rows() - r.rank)
}

/// Columns form a basis of the lattice spanned by the columns of `A`.
pub fn column_span_basis<T: Scalar>(a: &IntMatrix<T>) -> IntMatrix<T> {
    // A·V = U^-1·S, so the span is generated by d_i times the first columns of U^-1.
    let r = smith(
        a,
        Track {
            u_inv: true,
            ..Track::NONE
        },
    );
    let ui = r.u_inv.unwrap();
    let mut basis = ui.select_columns(&(0..r.rank).collect::<Vec<_>>());
    for j in 0..r.rank {
        let d = r.s[(j, j)].clone();
        for i in 0..basis.rows() {
            let x = basis[(i, j)].clone() * d.clone();
            basis[(i, j)] = x;
        }
    }
    basis
}

/// Reusable solver for `A·x = b` over the integers.
pub struct LatticeSolver<T: Scalar> {
    rows: usize,
    cols: usize,
    diag: Vec<T>,
    u: IntMatrix<T>,
    v: IntMatrix<T>,
}

impl<T: Scalar> LatticeSolver<T> {
    pub fn new(a: &IntMatrix<T>) -> Self {
        let r = smith(
            a,
            Track {
                u: true,
                v: true,
                ..Track::NONE
            },
        );
        LatticeSolver {
            rows: a.rows(),
            cols: a.cols(),
            diag: r.diagonal(),
            u: r.u.unwrap(),
            v: r.v.unwrap(),
        }
    }

    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let c = self.u.mul_vec(b);
        let mut y = vec![T::zero(); self.cols];
        for (i, ci) in c.iter().enumerate() {
            match self.diag.get(i) {
                Some(d) => {
                    let (q, r) = ci.div_rem(d);
                    if !r.is_zero() {
                        return None;
                    }
                    y[i] = q;
                }
                None if !ci.is_zero() => return None,
                None => {}
            }
        }
        Some(self.v.mul_vec(&y))
    }

    pub fn contains(&self, b: &[T]) -> bool {
        self.solve(b).is_some()
    }
}

/// Some `x` with `A·x = b`, or `None` when no integer solution exists.
pub fn solve_in_lattice<T: Scalar>(a: &IntMatrix<T>, b: &[T]) -> Option<Vec<T>> {
    LatticeSolver::new(a).solve(b)
}

//! Exact integer matrix algebra.
//!
//! Vectors are rows and matrices act on them from the right, so `e·A` is the
//! image of `e` and a lattice is the row space of a matrix. Every routine works
//! over arbitrary-precision integers.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed so that an empty row list
    /// still has a width.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length does not match column count");
            data.extend(r);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn from_i64(cols: usize, rows: &[&[i64]]) -> Self {
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[BigInt]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack width mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    /// `true` when only the diagonal may be nonzero.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] -= q * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j] * q;
            self.data[target * self.cols + j] -= s;
        }
    }

    /// col[target] -= q * col[source]
    fn sub_col_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + source] * q;
            self.data[i * self.cols + target] -= s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = core::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -v;
        }
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

/// `e·A` for a row vector `e`.
pub fn vec_mul(e: &[BigInt], a: &IntMatrix) -> Vec<BigInt> {
    assert_eq!(e.len(), a.rows(), "vector length does not match matrix rows");
    let mut out = vec![BigInt::zero(); a.cols()];
    for (i, ei) in e.iter().enumerate() {
        if ei.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(a.row(i)) {
            *o += ei * x;
        }
    }
    out
}

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and `U·M = H`.
///
/// `H` is in row echelon form with positive pivots, and the entries above each
/// pivot lie in `[0, pivot)`. Zero rows collect at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pivot_row = 0;
    for col in 0..h.cols() {
        if pivot_row == h.rows() {
            break;
        }
        loop {
            let best = (pivot_row..h.rows())
                .filter(|&r| !h[(r, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].magnitude().cmp(h[(b, col)].magnitude()));
            let Some(best) = best else { break };
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            let mut clean = true;
            for r in pivot_row + 1..h.rows() {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = h[(r, col)].div_floor(&h[(pivot_row, col)]);
                h.sub_row_multiple(r, pivot_row, &q);
                u.sub_row_multiple(r, pivot_row, &q);
                if !h[(r, col)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for r in 0..pivot_row {
            let q = h[(r, col)].div_floor(&h[(pivot_row, col)]);
            h.sub_row_multiple(r, pivot_row, &q);
            u.sub_row_multiple(r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(S, U, V)` with `U·M·V = S`, `U` and `V`
/// unimodular, and the diagonal of `S` nonnegative with each entry dividing
/// the next.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let (rows, cols) = (s.rows(), s.cols());
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| s[(i, j)].magnitude() < s[(bi, bj)].magnitude()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (s, u, v);
            };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                s.sub_row_multiple(i, t, &q);
                u.sub_row_multiple(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                s.sub_col_multiple(j, t, &q);
                v.sub_col_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the remaining block
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)])));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    s.sub_row_multiple(t, i, &minus_one);
                    u.sub_row_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (s, u, v)
}

/// Solves `y·H = t` for `H` in row echelon form. Returns `None` when `t` is not
/// in the row space.
fn solve_echelon(h: &IntMatrix, t: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest: Vec<BigInt> = t.to_vec();
    let mut y = vec![BigInt::zero(); h.rows()];
    for (r, yr) in y.iter_mut().enumerate() {
        let Some(p) = (0..h.cols()).find(|&j| !h[(r, j)].is_zero()) else { break };
        // columns before the pivot are already cleared
        if !rest[..p].iter().all(Zero::is_zero) {
            return None;
        }
        let (q, rem) = rest[p].div_rem(&h[(r, p)]);
        if !rem.is_zero() {
            return None;
        }
        for (x, hv) in rest.iter_mut().zip(h.row(r)) {
            *x -= &q * hv;
        }
        *yr = q;
    }
    rest.iter().all(Zero::is_zero).then_some(y)
}

/// Finds `e` with `e·A ≡ t (mod rowspace(L))`, or `None` when there is none.
pub fn solve_mod_lattice(a: &IntMatrix, t: &[BigInt], l: &IntMatrix) -> Option<Vec<BigInt>> {
    assert_eq!(a.cols(), t.len(), "target length does not match matrix width");
    assert_eq!(a.cols(), l.cols(), "lattice width does not match matrix width");
    let stacked = a.vstack(l);
    let (h, u) = hermite_normal_form(&stacked);
    let y = solve_echelon(&h, t)?;
    let full = vec_mul(&y, &u);
    Some(full[..a.rows()].to_vec())
}

/// Basis (in Hermite normal form) of `{e ∈ Z^r : e·A ∈ rowspace(L)}`.
pub fn kernel_mod_lattice(a: &IntMatrix, l: &IntMatrix) -> IntMatrix {
    assert_eq!(a.cols(), l.cols(), "lattice width does not match matrix width");
    let stacked = a.vstack(l);
    let (h, u) = hermite_normal_form(&stacked);
    let kernel_rows: Vec<Vec<BigInt>> =
        (0..h.rows()).filter(|&i| h.is_zero_row(i)).map(|i| u.row(i)[..a.rows()].to_vec()).collect();
    if kernel_rows.is_empty() {
        return IntMatrix::zeros(0, a.rows());
    }
    row_basis(&IntMatrix::from_rows(a.rows(), kernel_rows))
}

/// Nonzero rows of the Hermite normal form: a canonical basis of the row space.
pub fn row_basis(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(m);
    let rows: Vec<Vec<BigInt>> = (0..h.rows()).filter(|&i| !h.is_zero_row(i)).map(|i| h.row(i).to_vec()).collect();
    IntMatrix::from_rows(m.cols(), rows)
}

/// A finitely generated abelian group `Z^dim / rowspace(relations)`.
///
/// Elements are coordinate vectors; two vectors name the same element when
/// their difference is in the relation lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianStructure {
    relations: IntMatrix,
}

impl AbelianStructure {
    pub fn new(relations: IntMatrix) -> Self {
        AbelianStructure { relations: row_basis(&relations) }
    }

    /// Direct product of cyclic groups; `None` is an infinite factor.
    pub fn from_orders(orders: &[Option<BigInt>]) -> Self {
        let n = orders.len();
        let rows = orders
            .iter()
            .enumerate()
            .filter_map(|(i, m)| {
                m.as_ref().map(|m| {
                    let mut r = vec![BigInt::zero(); n];
                    r[i] = m.clone();
                    r
                })
            })
            .collect();
        Self::new(IntMatrix::from_rows(n, rows))
    }

    pub fn dim(&self) -> usize {
        self.relations.cols()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn is_zero(&self, v: &[BigInt]) -> bool {
        let empty = IntMatrix::zeros(0, self.dim());
        solve_mod_lattice(&empty, v, &self.relations).is_some()
    }

    /// Invariant factors: the nonunit diagonal of the Smith form padded with
    /// zeros for each free factor.
    pub fn invariants(&self) -> Vec<BigInt> {
        let (s, _, _) = smith_normal_form(&self.relations);
        let mut out: Vec<BigInt> =
            (0..s.rows().min(s.cols())).map(|i| s[(i, i)].clone()).filter(|d| !d.is_one()).collect();
        let rank = (0..s.rows().min(s.cols())).filter(|&i| !s[(i, i)].is_zero()).count();
        out.retain(|d| !d.is_zero());
        out.extend(core::iter::repeat_n(BigInt::zero(), self.dim() - rank));
        out
    }
}

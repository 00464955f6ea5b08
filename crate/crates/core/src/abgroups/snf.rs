//! Integer matrices: Smith and Hermite normal forms, integer solving.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense integer matrix with an explicit shape, so `0 × n` matrices
/// (presentations without relations) keep their column count.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    a: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            a: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.a[i][i] = BigInt::one();
        }
        m
    }

    /// Builds from rows; `cols` is needed when there are no rows.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has the wrong length");
            for (j, &x) in r.iter().enumerate() {
                m.a[i][j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn from_big_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> IntMatrix {
        for r in &rows {
            assert_eq!(r.len(), cols);
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            a: rows,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.a[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.a[i]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.a.clone()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.a[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.a[i][j] += &self.a[i][k] * &other.a[k][j];
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.a.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = t / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap(i, k);
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        for r in self.a.iter_mut() {
            r.swap(j, k);
        }
    }

    /// row i += q·row k
    fn add_row(&mut self, i: usize, k: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = q * &self.a[k][j];
            self.a[i][j] += t;
        }
    }

    /// col j += q·col k
    fn add_col(&mut self, j: usize, k: usize, q: &BigInt) {
        for r in self.a.iter_mut() {
            let t = q * &r[k];
            r[j] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -x.clone();
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in self.a.iter_mut() {
            r[j] = -r[j].clone();
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.a.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", s.join(","))?;
        }
        write!(f, "]")
    }
}

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal, nonnegative,
/// each diagonal entry dividing the next. The inverses of `u` and `v` are
/// tracked alongside.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.a[i][i].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Re-checks every postcondition exactly against the input.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        if self.u.mul(m).mul(&self.v) != self.d {
            return false;
        }
        if !self.u.is_unimodular() || !self.v.is_unimodular() {
            return false;
        }
        if self.u.mul(&self.u_inv) != IntMatrix::identity(self.u.rows)
            || self.v.mul(&self.v_inv) != IntMatrix::identity(self.v.rows)
        {
            return false;
        }
        for i in 0..self.d.rows {
            for j in 0..self.d.cols {
                if i != j && !self.d.a[i][j].is_zero() {
                    return false;
                }
            }
        }
        let diag = self.diagonal();
        if diag.iter().any(|x| x.is_negative()) {
            return false;
        }
        diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        })
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut u_inv = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut v_inv = IntMatrix::identity(c);

    macro_rules! row_add {
        ($i:expr, $k:expr, $q:expr) => {{
            let q: BigInt = $q;
            a.add_row($i, $k, &q);
            u.add_row($i, $k, &q);
            u_inv.add_col($k, $i, &(-q));
        }};
    }
    macro_rules! col_add {
        ($j:expr, $k:expr, $q:expr) => {{
            let q: BigInt = $q;
            a.add_col($j, $k, &q);
            v.add_col($j, $k, &q);
            v_inv.add_row($k, $j, &(-q));
        }};
    }

    'outer: for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &a.a[i][j];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            if pi != t {
                a.swap_rows(pi, t);
                u.swap_rows(pi, t);
                u_inv.swap_cols(pi, t);
            }
            if pj != t {
                a.swap_cols(pj, t);
                v.swap_cols(pj, t);
                v_inv.swap_rows(pj, t);
            }
            let mut clean = true;
            for i in t + 1..r {
                if !a.a[i][t].is_zero() {
                    let q = a.a[i][t].div_floor(&a.a[t][t]);
                    row_add!(i, t, -q);
                    clean &= a.a[i][t].is_zero();
                }
            }
            for j in t + 1..c {
                if !a.a[t][j].is_zero() {
                    let q = a.a[t][j].div_floor(&a.a[t][t]);
                    col_add!(j, t, -q);
                    clean &= a.a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let offender =
                (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.a[i][j].is_multiple_of(&a.a[t][t])));
            match offender {
                Some(i) => row_add!(t, i, BigInt::one()),
                None => break,
            }
        }
        if a.a[t][t].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    SmithForm {
        d: a,
        u,
        v,
        u_inv,
        v_inv,
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: upper
/// echelon, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`. Zero rows are dropped.
pub fn hermite_rows(cols: usize, rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        loop {
            let best = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by_key(|&i| m[i][c].abs());
            let Some(p) = best else { break };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    for j in 0..cols {
                        let t = &q * &m[r][j];
                        m[i][j] -= t;
                    }
                    done &= m[i][c].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let q = m[i][c].div_floor(&m[r][c]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let t = &q * &m[r][j];
                        m[i][j] -= t;
                    }
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

/// Some integer `x` with `x · a = b`, if one exists.
pub fn solve_left(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), a.cols);
    let s = smith_normal_form(a);
    let bv: Vec<BigInt> = (0..a.cols)
        .map(|j| (0..a.cols).map(|k| &b[k] * s.v.get(k, j)).sum())
        .collect();
    let diag = s.diagonal();
    let mut y = vec![BigInt::zero(); a.rows];
    for (j, val) in bv.iter().enumerate() {
        let d = diag.get(j).cloned().unwrap_or_default();
        if d.is_zero() {
            if !val.is_zero() {
                return None;
            }
        } else {
            if !val.is_multiple_of(&d) {
                return None;
            }
            y[j] = val / &d;
        }
    }
    Some(
        (0..a.rows)
            .map(|j| (0..a.rows).map(|i| &y[i] * s.u.get(i, j)).sum())
            .collect(),
    )
}

/// Generators of `{x : x · a = 0}` (rows of the left transform whose image
/// row vanishes).
pub fn left_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(a);
    let rank = s.rank();
    (rank..a.rows).map(|i| s.u.row(i).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Determinantal divisors: gcd of all k×k minors, an independent route
    /// to the invariant factors.
    fn determinantal_divisors(m: &IntMatrix) -> Vec<BigInt> {
        use itertools::Itertools;
        let mut out = Vec::new();
        for k in 1..=m.rows().min(m.cols()) {
            let mut g = BigInt::zero();
            for rs in (0..m.rows()).combinations(k) {
                for cs in (0..m.cols()).combinations(k) {
                    let sub = IntMatrix::from_big_rows(
                        k,
                        rs.iter()
                            .map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect())
                            .collect(),
                    );
                    g = g.gcd(&sub.det());
                }
            }
            out.push(g);
        }
        out
    }

    #[test]
    fn cubic_relations_give_z3() {
        let m = IntMatrix::from_rows(2, &[vec![2, -1], vec![1, 1], vec![-1, 2]]);
        let s = smith_normal_form(&m);
        assert!(s.verify(&m));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(3)]);
        let dd = determinantal_divisors(&m);
        assert_eq!(dd, vec![BigInt::from(1), BigInt::from(3)]);
    }

    #[test]
    fn zero_and_identity() {
        let z = IntMatrix::zeros(2, 2);
        let s = smith_normal_form(&z);
        assert!(s.verify(&z));
        assert_eq!(s.d, z);
        let i = IntMatrix::identity(3);
        let s = smith_normal_form(&i);
        assert!(s.verify(&i));
        assert_eq!(s.d, i);
        assert_eq!(s.u, i);
        assert_eq!(s.v, i);
    }

    #[test]
    fn empty_shapes() {
        let m = IntMatrix::zeros(0, 3);
        let s = smith_normal_form(&m);
        assert!(s.verify(&m));
        assert_eq!(s.rank(), 0);
        assert_eq!(left_kernel(&IntMatrix::zeros(2, 0)).len(), 2);
    }

    #[test]
    fn hermite_is_canonical() {
        let rows = vec![
            vec![BigInt::from(0), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(4)],
            vec![BigInt::from(6), BigInt::from(0)],
        ];
        let h = hermite_rows(2, &rows);
        assert_eq!(
            h,
            vec![
                vec![BigInt::from(3), BigInt::from(0)],
                vec![BigInt::from(0), BigInt::from(2)]
            ]
        );
    }

    #[test]
    fn solve_left_finds_combination() {
        let a = IntMatrix::from_rows(1, &[vec![2], vec![3], vec![6]]);
        let x = solve_left(&a, &[BigInt::from(1)]).unwrap();
        let s: BigInt = x.iter().enumerate().map(|(i, xi)| xi * a.get(i, 0)).sum();
        assert_eq!(s, BigInt::from(1));
        let a = IntMatrix::from_rows(1, &[vec![2], vec![4]]);
        assert!(solve_left(&a, &[BigInt::from(1)]).is_none());
    }
}

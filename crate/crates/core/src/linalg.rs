//! Dense linear algebra over an exact [`Field`].

use crate::scalars::{Elem, Field};

pub type Mat = Vec<Vec<Elem>>;

pub fn zeros(f: &Field, rows: usize, cols: usize) -> Mat {
    vec![vec![f.zero(); cols]; rows]
}

pub fn identity(f: &Field, n: usize) -> Mat {
    let mut m = zeros(f, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = f.one();
    }
    m
}

pub fn transpose(m: &Mat) -> Mat {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul(f: &Field, a: &Mat, b: &Mat) -> Mat {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(f.zero(), |acc, (x, brow)| f.add(&acc, &f.mul(x, &brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(f: &Field, a: &Mat, v: &[Elem]) -> Vec<Elem> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
        })
        .collect()
}

/// Reduced row echelon form and the pivot columns.
pub fn rref(f: &Field, m: &Mat) -> (Mat, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, p);
        let inv = f.inv(&a[r][c]).expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&a[i][c]) {
                let factor = a[i][c].clone();
                for j in 0..cols {
                    let t = f.mul(&factor, &a[r][j]);
                    a[i][j] = f.sub(&a[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(f: &Field, m: &Mat) -> usize {
    rref(f, m).1.len()
}

/// Basis of `{v : M v = 0}`.
pub fn nullspace(f: &Field, m: &Mat, cols: usize) -> Vec<Vec<Elem>> {
    if m.is_empty() {
        return identity(f, cols);
    }
    let (r, pivots) = rref(f, m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&r[i][fc]);
            }
            v
        })
        .collect()
}

/// Canonical basis (reduced echelon rows) of the span of `vectors`.
pub fn span_basis(f: &Field, vectors: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = rref(f, &vectors.to_vec());
    r.into_iter().take(pivots.len()).collect()
}

/// One solution of `M x = b`, if any.
pub fn solve(f: &Field, m: &Mat, b: &[Elem]) -> Option<Vec<Elem>> {
    let cols = m.first().map_or(0, |r| r.len());
    let aug: Mat = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(f, &aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = r[i][cols].clone();
    }
    Some(x)
}

pub fn det(f: &Field, m: &Mat) -> Elem {
    let n = m.len();
    let mut a = m.clone();
    let mut d = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(&a[i][c])) else {
            return f.zero();
        };
        if p != c {
            a.swap(p, c);
            d = f.neg(&d);
        }
        d = f.mul(&d, &a[c][c]);
        let inv = f.inv(&a[c][c]).expect("nonzero pivot");
        for i in c + 1..n {
            if f.is_zero(&a[i][c]) {
                continue;
            }
            let factor = f.mul(&a[i][c], &inv);
            for j in c..n {
                let t = f.mul(&factor, &a[c][j]);
                a[i][j] = f.sub(&a[i][j], &t);
            }
        }
    }
    d
}

pub fn inverse(f: &Field, m: &Mat) -> Option<Mat> {
    let n = m.len();
    let aug: Mat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(f, &aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Mat {
        let q = Field::rationals();
        rows.iter()
            .map(|r| r.iter().map(|&x| q.from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn det_and_inverse() {
        let q = Field::rationals();
        let m = qm(&[&[2, 1], &[7, 4]]);
        assert_eq!(det(&q, &m), q.from_i64(1));
        let inv = inverse(&q, &m).unwrap();
        assert_eq!(mat_mul(&q, &m, &inv), identity(&q, 2));
        assert!(inverse(&q, &qm(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn kernel_and_solve() {
        let q = Field::rationals();
        let m = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = nullspace(&q, &m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&q, &m, v).iter().all(|x| q.is_zero(x)));
        }
        let b = vec![q.from_i64(1), q.from_i64(2)];
        let x = solve(&q, &m, &b).unwrap();
        assert_eq!(mat_vec(&q, &m, &x), b);
        assert!(solve(&q, &m, &[q.from_i64(1), q.from_i64(3)]).is_none());
    }
}

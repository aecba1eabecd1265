//! Dense linear algebra over finite fields, plus a division-free
//! determinant over any commutative ring.

use crate::ff::{FFElem, FieldDesc};
use crate::ring::Ring;

pub type Mat<T> = Vec<Vec<T>>;

pub fn identity<R: Ring>(r: &R, n: usize) -> Mat<R::Elem> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { r.one() } else { r.zero() }).collect())
        .collect()
}

pub fn zeros<R: Ring>(r: &R, rows: usize, cols: usize) -> Mat<R::Elem> {
    vec![vec![r.zero(); cols]; rows]
}

pub fn mat_mul<R: Ring>(r: &R, a: &Mat<R::Elem>, b: &Mat<R::Elem>) -> Mat<R::Elem> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = zeros(r, n, m);
    for i in 0..n {
        for l in 0..k {
            if r.is_zero(&a[i][l]) {
                continue;
            }
            for j in 0..m {
                if !r.is_zero(&b[l][j]) {
                    out[i][j] = r.add(&out[i][j], &r.mul(&a[i][l], &b[l][j]));
                }
            }
        }
    }
    out
}

pub fn mat_vec<R: Ring>(r: &R, a: &Mat<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(r.zero(), |acc, (x, y)| r.add(&acc, &r.mul(x, y)))
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &Mat<T>) -> Mat<T> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Entrywise `x -> x^{p^k}`.
pub fn mat_frob<R: Ring>(r: &R, a: &Mat<R::Elem>, k: u32) -> Mat<R::Elem> {
    a.iter().map(|row| row.iter().map(|x| r.frob_n(x, k)).collect()).collect()
}

pub fn is_zero_mat<R: Ring>(r: &R, a: &Mat<R::Elem>) -> bool {
    a.iter().all(|row| row.iter().all(|x| r.is_zero(x)))
}

/// Determinant by expansion over column subsets: `D[S]` is the determinant
/// of the top `|S|` rows restricted to the columns in `S`. Uses only ring
/// operations, `O(2^n n)` of them.
pub fn det_generic<R: Ring>(r: &R, a: &Mat<R::Elem>) -> R::Elem {
    let n = a.len();
    if n == 0 {
        return r.one();
    }
    assert!(n <= 20, "determinant by subset expansion limited to size 20");
    let mut d: Vec<Option<R::Elem>> = vec![None; 1 << n];
    d[0] = Some(r.one());
    for s in 0usize..(1 << n) {
        let Some(ds) = d[s].clone() else { continue };
        let row = s.count_ones() as usize;
        if row == n || r.is_zero(&ds) {
            continue;
        }
        for j in 0..n {
            if s & (1 << j) != 0 {
                continue;
            }
            // sign: columns of S greater than j would follow j
            let above = (s >> (j + 1)).count_ones();
            let term = r.mul(&ds, &a[row][j]);
            let term = if above % 2 == 1 { r.neg(&term) } else { term };
            let t = s | (1 << j);
            d[t] = Some(match d[t].take() {
                Some(x) => r.add(&x, &term),
                None => term,
            });
        }
    }
    d[(1 << n) - 1].clone().unwrap_or_else(|| r.zero())
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(f: &FieldDesc, a: &mut Mat<FFElem>) -> Vec<usize> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, pr);
        let inv = f.inv(a[r][c]).unwrap();
        for x in a[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let m = a[i][c];
                for j in 0..cols {
                    let v = f.mul(m, a[r][j]);
                    a[i][j] = f.sub(a[i][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &FieldDesc, a: &Mat<FFElem>) -> usize {
    let mut b = a.clone();
    rref(f, &mut b).len()
}

pub fn det(f: &FieldDesc, a: &Mat<FFElem>) -> FFElem {
    let n = a.len();
    let mut b = a.clone();
    let mut acc = f.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !b[i][c].is_zero()) else {
            return f.zero();
        };
        if pr != c {
            b.swap(pr, c);
            acc = f.neg(acc);
        }
        acc = f.mul(acc, b[c][c]);
        let inv = f.inv(b[c][c]).unwrap();
        for i in c + 1..n {
            if !b[i][c].is_zero() {
                let m = f.mul(b[i][c], inv);
                for j in c..n {
                    let v = f.mul(m, b[c][j]);
                    b[i][j] = f.sub(b[i][j], v);
                }
            }
        }
    }
    acc
}

pub fn inverse(f: &FieldDesc, a: &Mat<FFElem>) -> Option<Mat<FFElem>> {
    let n = a.len();
    let mut aug: Mat<FFElem> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let piv = rref(f, &mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Some `x` with `a x = b`, if one exists.
pub fn solve(f: &FieldDesc, a: &Mat<FFElem>, b: &[FFElem]) -> Option<Vec<FFElem>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Mat<FFElem> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let piv = rref(f, &mut aug);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = aug[i][cols];
    }
    Some(x)
}

/// Basis of `{x : a x = 0}`, in reduced echelon form.
pub fn nullspace(f: &FieldDesc, a: &Mat<FFElem>, cols: usize) -> Vec<Vec<FFElem>> {
    let mut b = a.clone();
    let piv = rref(f, &mut b);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    let mut basis: Vec<Vec<FFElem>> = free
        .iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (i, &pc) in piv.iter().enumerate() {
                v[pc] = f.neg(b[i][fc]);
            }
            v
        })
        .collect();
    if !basis.is_empty() {
        rref(f, &mut basis);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_agrees_with_elimination() {
        let f = FieldDesc::new(3, 2).unwrap();
        let els: Vec<_> = f.elements().collect();
        let mut k = 0usize;
        for _ in 0..200 {
            let a: Mat<FFElem> = (0..3)
                .map(|_| {
                    (0..3)
                        .map(|_| {
                            k = (k * 31 + 7) % els.len();
                            els[k]
                        })
                        .collect()
                })
                .collect();
            assert_eq!(det(&f, &a), det_generic(&f, &a));
            let inv = inverse(&f, &a);
            assert_eq!(inv.is_some(), !det(&f, &a).is_zero());
            if let Some(b) = inv {
                assert_eq!(mat_mul(&f, &a, &b), identity(&f, 3));
            }
        }
    }

    #[test]
    fn solve_and_nullspace() {
        let f = FieldDesc::new(2, 1).unwrap();
        let o = f.one();
        let z = f.zero();
        let a = vec![vec![o, o, z], vec![z, o, o]];
        let ns = nullspace(&f, &a, 3);
        assert_eq!(ns, vec![vec![o, o, o]]);
        assert_eq!(rank(&f, &a), 2);
        let x = solve(&f, &a, &[o, z]).unwrap();
        assert_eq!(mat_vec(&f, &a, &x), vec![o, z]);
        let sing = vec![vec![o, o], vec![o, o]];
        assert!(solve(&f, &sing, &[o, z]).is_none());
    }
}

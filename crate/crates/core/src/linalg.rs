//! Dense Gaussian elimination over an exact field.

use crate::scalars::{Cyclotomic, Ring};

/// A [`Ring`] in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inverse(&self) -> Option<Self>;
}

impl Field for Cyclotomic {
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

pub type Matrix<F> = Vec<Vec<F>>;

pub fn identity<F: Ring>(n: usize) -> Matrix<F> {
    (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
}

pub fn mat_mul<F: Ring>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(F::zero(), |acc, k| {
                        if row[k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            acc.plus(&row[k].times(&b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Reduced row echelon form in place, pivoting on the first nonzero entry
/// of each column. Returns the pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inverse().expect("nonzero pivot");
        for v in m[r].iter_mut() {
            *v = v.times(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    if !m[r][j].is_zero() {
                        let d = f.times(&m[r][j]);
                        m[i][j] = m[i][j].minus(&d);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(&mut m.clone()).len()
}

pub fn determinant<F: Field>(m: &Matrix<F>) -> F {
    let n = m.len();
    let mut a = m.clone();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return F::zero() };
        if p != c {
            a.swap(p, c);
            det = det.negated();
        }
        det = det.times(&a[c][c]);
        let inv = a[c][c].inverse().expect("nonzero pivot");
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].times(&inv);
            for j in c..n {
                let d = f.times(&a[c][j]);
                a[i][j] = a[i][j].minus(&d);
            }
        }
    }
    det
}

/// Inverse of a square matrix, or `None` if it is singular.
pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let n = m.len();
    let mut aug: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the right kernel `{v : m·v = 0}`, one vector per free column of
/// the reduced echelon form, in increasing column order.
pub fn kernel<F: Field>(m: &Matrix<F>, cols: usize) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![F::zero(); cols];
            v[free] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = a[row][free].negated();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Matrix<Cyclotomic> {
        rows.iter().map(|r| r.iter().map(|&v| Cyclotomic::int(v)).collect()).collect()
    }

    #[test]
    fn determinant_and_inverse() {
        let m = q(&[&[2, 1], &[1, 1]]);
        assert_eq!(determinant(&m), Cyclotomic::int(1));
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        assert!(inverse(&q(&[&[1, 2], &[2, 4]])).is_none());
        assert_eq!(determinant(&q(&[&[0, 1], &[1, 0]])), Cyclotomic::int(-1));
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let col: Matrix<Cyclotomic> = v.iter().map(|c| vec![c.clone()]).collect();
            assert!(mat_mul(&m, &col).iter().all(|r| r[0].is_zero()));
        }
    }
}

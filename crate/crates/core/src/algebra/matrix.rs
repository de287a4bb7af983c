//! Small dense matrices over a field.

use super::Field;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return F::one();
        }
        let mut a = self.clone();
        let mut prev = F::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return F::zero();
                };
                a.swap_rows(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j).clone() * a.get(k, k).clone()
                        - a.get(i, k).clone() * a.get(k, j).clone())
                        / prev.clone();
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        if negate {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Gauss-Jordan inverse, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let p = (k..n).find(|&i| !a.get(i, k).is_zero())?;
            a.swap_rows(k, p);
            inv.swap_rows(k, p);
            let s = a.get(k, k).inv()?;
            for j in 0..n {
                a.set(k, j, a.get(k, j).clone() * s.clone());
                inv.set(k, j, inv.get(k, j).clone() * s.clone());
            }
            for i in 0..n {
                if i == k || a.get(i, k).is_zero() {
                    continue;
                }
                let f = a.get(i, k).clone();
                for j in 0..n {
                    a.set(i, j, a.get(i, j).clone() - f.clone() * a.get(k, j).clone());
                    inv.set(i, j, inv.get(i, j).clone() - f.clone() * inv.get(k, j).clone());
                }
            }
        }
        Some(inv)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = F::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| -v.clone()).collect() }
    }
}

/// Integer helper used for intersection matrices.
pub fn from_int_rows<F: Field>(rows: &[Vec<i64>]) -> Matrix<F> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| F::from_int(v)).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;
    use num_rational::BigRational;

    fn m(rows: &[Vec<i64>]) -> Matrix<BigRational> {
        from_int_rows(rows)
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[vec![0, 2, 1], vec![3, 1, 4], vec![1, 1, 1]]);
        assert_eq!(a.det(), BigRational::from_int(4));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert!(m(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
        assert_eq!(m(&[vec![-2, 1], vec![1, -2]]).det(), BigRational::from_int(3));
    }
}

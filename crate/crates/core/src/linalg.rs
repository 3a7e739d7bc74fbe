//! Dense complex LU with partial pivoting and a 1-norm condition estimate.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Row-major square matrix.
#[derive(Debug, Clone)]
pub struct Matrix {
    n: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn norm_one(&self) -> f64 {
        let mut cols = vec![0.0; self.n];
        for i in 0..self.n {
            for (c, a) in cols.iter_mut().zip(self.row(i)) {
                *c += a.norm();
            }
        }
        cols.into_iter().fold(0.0, f64::max)
    }
}

/// `PA = LU`, unit lower triangle stored below the diagonal.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    norm_one: f64,
}

impl Lu {
    pub fn factor(a: Matrix) -> Result<Self> {
        let n = a.n;
        let norm_one = a.norm_one();
        let mut lu = a.data;
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut piv = k;
            let mut best = lu[k * n + k].norm();
            for i in k + 1..n {
                let v = lu[i * n + k].norm();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if best == 0.0 {
                return Err(Error::Singular { condition: f64::INFINITY });
            }
            if piv != k {
                for j in 0..n {
                    lu.swap(k * n + j, piv * n + j);
                }
                perm.swap(k, piv);
            }
            let (head, tail) = lu.split_at_mut((k + 1) * n);
            let pivot_row = &head[k * n..(k + 1) * n];
            let inv = 1.0 / pivot_row[k];
            for row in tail.chunks_exact_mut(n) {
                let l = row[k] * inv;
                row[k] = l;
                if l.re == 0.0 && l.im == 0.0 {
                    continue;
                }
                for (x, &p) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                    *x -= l * p;
                }
            }
        }
        Ok(Self { n, lu, perm, norm_one })
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = &self.lu[i * n..i * n + i];
            let s: Complex64 = row.iter().zip(&x[..i]).map(|(a, b)| a * b).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * n..(i + 1) * n];
            let s: Complex64 = row[i + 1..].iter().zip(&x[i + 1..]).map(|(a, b)| a * b).sum();
            x[i] = (x[i] - s) / row[i];
        }
        x
    }

    /// Solves `A^H y = b`.
    pub fn solve_adjoint(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        // A^H = U^H L^H P
        let mut z = b.to_vec();
        for i in 0..n {
            let mut s = z[i];
            for k in 0..i {
                s -= self.lu[k * n + i].conj() * z[k];
            }
            z[i] = s / self.lu[i * n + i].conj();
        }
        for i in (0..n).rev() {
            let mut s = z[i];
            for k in i + 1..n {
                s -= self.lu[k * n + i].conj() * z[k];
            }
            z[i] = s;
        }
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for (i, &p) in self.perm.iter().enumerate() {
            y[p] = z[i];
        }
        y
    }

    /// Hager-Higham estimate of the 1-norm condition number.
    pub fn condition_estimate(&self) -> f64 {
        let n = self.n;
        let mut x = vec![Complex64::new(1.0 / n as f64, 0.0); n];
        let mut est = 0.0;
        for iter in 0..5 {
            let y = self.solve(&x);
            let norm: f64 = y.iter().map(|v| v.norm()).sum();
            if iter > 0 && norm <= est {
                break;
            }
            est = norm;
            let sign: Vec<Complex64> = y
                .iter()
                .map(|v| if v.norm() > 0.0 { v / v.norm() } else { Complex64::new(1.0, 0.0) })
                .collect();
            let z = self.solve_adjoint(&sign);
            let (j, zmax) = z
                .iter()
                .enumerate()
                .map(|(i, v)| (i, v.norm()))
                .fold((0, 0.0), |acc, c| if c.1 > acc.1 { c } else { acc });
            let ztx: f64 = z.iter().zip(&x).map(|(a, b)| (a.conj() * b).re).sum();
            if zmax <= ztx {
                break;
            }
            x = vec![Complex64::new(0.0, 0.0); n];
            x[j] = Complex64::new(1.0, 0.0);
        }
        est * self.norm_one
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn test_matrix(n: usize) -> Matrix {
        Matrix::from_fn(n, |i, j| {
            let d = if i == j { 3.0 } else { 0.0 };
            c(d + 1.0 / (1.0 + i as f64 + 2.0 * j as f64), ((i * 7 + j * 3) % 5) as f64 * 0.1)
        })
    }

    #[test]
    fn solves_and_adjoint_solves() {
        let a = test_matrix(23);
        let b: Vec<Complex64> = (0..23).map(|i| c(i as f64, 1.0 - i as f64 * 0.5)).collect();
        let lu = Lu::factor(a.clone()).unwrap();
        let x = lu.solve(&b);
        let r = a.mul_vec(&x);
        for (ri, bi) in r.iter().zip(&b) {
            assert!((ri - bi).norm() < 1e-12);
        }
        let y = lu.solve_adjoint(&b);
        // (A^H y)_j = sum_i conj(a_ij) y_i
        for j in 0..23 {
            let s: Complex64 = (0..23).map(|i| a.row(i)[j].conj() * y[i]).sum();
            assert!((s - b[j]).norm() < 1e-12);
        }
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = Matrix::from_fn(2, |i, j| if i == j { c(0.0, 0.0) } else { c(1.0, 0.0) });
        let lu = Lu::factor(a).unwrap();
        let x = lu.solve(&[c(2.0, 0.0), c(5.0, 0.0)]);
        assert!((x[0] - c(5.0, 0.0)).norm() < 1e-15 && (x[1] - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let a = Matrix::from_fn(3, |_, j| c(j as f64, 0.0));
        assert!(matches!(Lu::factor(a), Err(Error::Singular { .. })));
    }

    #[test]
    fn condition_estimate_of_diagonal() {
        let a = Matrix::from_fn(4, |i, j| if i == j { c(10f64.powi(i as i32), 0.0) } else { c(0.0, 0.0) });
        let lu = Lu::factor(a).unwrap();
        assert!((lu.condition_estimate() - 1000.0).abs() < 1e-9);
    }
}

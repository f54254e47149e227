//! Exact linear algebra over the rationals: fraction-free determinants,
//! deterministic kernels, adjugates and pfaffians.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::rational::{denominator_lcm, Rational};

/// Dense matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c));
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = Rational::zero();
                for j in 0..self.cols {
                    s += self.at(i, j) * &v[j];
                }
                s
            })
            .collect()
    }

    /// Copy with one column removed.
    pub fn drop_column(&self, col: usize) -> QMatrix {
        assert!(col < self.cols);
        let mut m = QMatrix::zeros(self.rows, self.cols - 1);
        for i in 0..self.rows {
            let mut jj = 0;
            for j in 0..self.cols {
                if j != col {
                    *m.at_mut(i, jj) = self.at(i, j).clone();
                    jj += 1;
                }
            }
        }
        m
    }

    /// Exact determinant by fraction-free Bareiss elimination. Each row is
    /// first cleared of denominators; the integer elimination then performs
    /// only exact divisions.
    pub fn det(&self) -> Result<Rational, Error> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        // Integer matrix plus the product of the scalings applied.
        let mut scale = Rational::one();
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let l = denominator_lcm(self.row(i));
                scale /= Rational::from_integer(l.clone());
                self.row(i)
                    .iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .collect();

        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev; // exact by Bareiss
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let d = Rational::from_integer(m[n - 1][n - 1].clone() * BigInt::from(sign));
        Ok(d * scale)
    }

    /// Reduced row echelon form in place. Pivoting rule: sweep columns left
    /// to right, take the first row (top to bottom) with a nonzero entry.
    /// Returns the pivot columns. Deterministic by construction.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    let a = self.at(p, j).clone();
                    let b = self.at(r, j).clone();
                    *self.at_mut(p, j) = b;
                    *self.at_mut(r, j) = a;
                }
            }
            let inv = self.at(r, c).recip();
            for j in 0..self.cols {
                let v = self.at(r, j) * &inv;
                *self.at_mut(r, j) = v;
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for j in 0..self.cols {
                        let v = self.at(i, j) - &(self.at(r, j) * &f);
                        *self.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Deterministic basis of the right null space. Basis vectors are
    /// indexed by free columns in increasing order, each with a `1` in its
    /// free position.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.at(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Unique solution of `A x = b`, if any; `None` when inconsistent or
    /// underdetermined.
    pub fn solve_unique(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let ker = aug.kernel();
        // Solutions correspond to kernel vectors with last coordinate -1
        // after scaling; uniqueness means the kernel is one-dimensional.
        if ker.len() != 1 {
            return None;
        }
        let v = &ker[0];
        let last = &v[self.cols];
        if last.is_zero() {
            return None;
        }
        let neg_inv = -last.recip();
        Some(v[..self.cols].iter().map(|x| x * &neg_inv).collect())
    }

    /// Adjugate via cofactors; `adj(A) * A = det(A) * I` exactly.
    pub fn adjugate(&self) -> Result<QMatrix, Error> {
        if self.rows != self.cols {
            return Err(Error::Dimension("adjugate of non-square matrix".into()));
        }
        let n = self.rows;
        let mut adj = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut minor = QMatrix::zeros(n - 1, n - 1);
                let mut r = 0;
                for a in 0..n {
                    if a == i {
                        continue;
                    }
                    let mut c = 0;
                    for b in 0..n {
                        if b == j {
                            continue;
                        }
                        *minor.at_mut(r, c) = self.at(a, b).clone();
                        c += 1;
                    }
                    r += 1;
                }
                let mut cof = minor.det()?;
                if (i + j) % 2 == 1 {
                    cof = -cof;
                }
                // adjugate is the transposed cofactor matrix
                *adj.at_mut(j, i) = cof;
            }
        }
        Ok(adj)
    }

    pub fn is_skew(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..=i {
                if *self.at(i, j) != -self.at(j, i).clone() {
                    return false;
                }
            }
        }
        true
    }

    /// Pfaffian of an even-dimensional skew-symmetric matrix, with the
    /// convention Pf(J) = +1 for J = block-diag([[0,1],[-1,0]], ...).
    pub fn pfaffian(&self) -> Result<Rational, Error> {
        if self.rows != self.cols || self.rows % 2 != 0 {
            return Err(Error::Dimension(format!(
                "pfaffian of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if !self.is_skew() {
            return Err(Error::Degenerate("pfaffian of non-skew matrix".into()));
        }
        fn pf(m: &QMatrix, live: &[usize]) -> Rational {
            if live.is_empty() {
                return Rational::one();
            }
            let i0 = live[0];
            let mut acc = Rational::zero();
            for (pos, &j) in live.iter().enumerate().skip(1) {
                let a = m.at(i0, j);
                if a.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = live[1..]
                    .iter()
                    .copied()
                    .filter(|&k| k != j)
                    .collect();
                let term = a * &pf(m, &rest);
                if pos % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let live: Vec<usize> = (0..self.rows).collect();
        Ok(pf(self, &live))
    }
}

//! Small dense complex matrices.

use num_complex::Complex64;
use serde::{Serialize, Serializer};

/// Entry-wise tolerance for matrix comparisons.
pub const EPS: f64 = 1e-9;
/// Tolerance for quantities accumulated over a whole group (sums, averages).
pub const SUM_EPS: f64 = 1e-6;

/// Row-major `d×d` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn scalar(z: Complex64) -> Self {
        CMatrix { dim: 1, data: vec![z] }
    }

    /// `None` unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Option<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return None;
        }
        Some(CMatrix {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_real(rows: &[&[f64]]) -> Option<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.dim.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = CMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, z: Complex64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * z).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn conj_transpose(&self) -> CMatrix {
        let d = self.dim;
        let mut out = CMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Gaussian elimination with partial pivoting.
    pub fn det(&self) -> Complex64 {
        let d = self.dim;
        let mut a = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for c in 0..d {
            let p = (c..d)
                .max_by(|&x, &y| a[x * d + c].norm().total_cmp(&a[y * d + c].norm()))
                .expect("non-empty range");
            if a[p * d + c].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if p != c {
                for j in 0..d {
                    a.swap(p * d + j, c * d + j);
                }
                det = -det;
            }
            let pivot = a[c * d + c];
            det *= pivot;
            for r in c + 1..d {
                let f = a[r * d + c] / pivot;
                for j in c..d {
                    let v = a[c * d + j];
                    a[r * d + j] -= f * v;
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse; `None` when a pivot falls below [`EPS`].
    pub fn inverse(&self) -> Option<CMatrix> {
        let d = self.dim;
        let mut a = self.clone();
        let mut inv = CMatrix::identity(d);
        for c in 0..d {
            let p = (c..d).max_by(|&x, &y| a[(x, c)].norm().total_cmp(&a[(y, c)].norm()))?;
            if a[(p, c)].norm() < EPS {
                return None;
            }
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let pivot = a[(c, c)];
            for j in 0..d {
                a[(c, j)] /= pivot;
                inv[(c, j)] /= pivot;
            }
            for r in 0..d {
                if r == c {
                    continue;
                }
                let f = a[(r, c)];
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    let (x, y) = (a[(c, j)], inv[(c, j)]);
                    a[(r, j)] -= f * x;
                    inv[(r, j)] -= f * y;
                }
            }
        }
        Some(inv)
    }

    /// Integer power; negative exponents need an invertible matrix.
    pub fn pow(&self, k: i64) -> Option<CMatrix> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CMatrix::identity(self.dim);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        Some(acc)
    }

    pub fn approx_eq(&self, other: &CMatrix, eps: f64) -> bool {
        self.dim == other.dim && self.data.iter().zip(&other.data).all(|(a, b)| (a - b).norm() <= eps)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_some()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            let d = self.dim;
            for j in 0..d {
                self.data.swap(a * d + j, b * d + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        let d = self.dim;
        let rows: Vec<Vec<Complex64>> = self.rows();
        row_reduce(rows, d).1.len()
    }

    /// Column image of the matrix, as an orthonormal-free basis of columns.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(|z| [snap(z.re), snap(z.im)]).collect())
            .collect();
        rows.serialize(s)
    }
}

/// Rounds values within [`EPS`] of an integer or half-integer to it, and `-0.0` to `0.0`.
pub fn snap(x: f64) -> f64 {
    let r = (x * 2.0).round() / 2.0;
    if (x - r).abs() < EPS {
        r + 0.0
    } else {
        x
    }
}

/// Reduced row echelon form of a `rows × cols` system; returns the reduced
/// rows and the pivot columns.
pub fn row_reduce(mut rows: Vec<Vec<Complex64>>, cols: usize) -> (Vec<Vec<Complex64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let p = (r..rows.len())
            .max_by(|&x, &y| rows[x][c].norm().total_cmp(&rows[y][c].norm()))
            .expect("non-empty range");
        if rows[p][c].norm() < EPS {
            continue;
        }
        rows.swap(p, r);
        let pivot = rows[r][c];
        for v in rows[r].iter_mut() {
            *v /= pivot;
        }
        for i in 0..rows.len() {
            if i != r {
                let f = rows[i][c];
                if f.norm() > 0.0 {
                    for j in 0..cols {
                        let v = rows[r][j];
                        rows[i][j] -= f * v;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

/// Basis of the solution space of the homogeneous system `rows · v = 0`.
pub fn nullspace(rows: Vec<Vec<Complex64>>, cols: usize) -> Vec<Vec<Complex64>> {
    let (reduced, pivots) = row_reduce(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Complex64::new(0.0, 0.0); cols];
            v[fc] = Complex64::new(1.0, 0.0);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -reduced[i][fc];
            }
            v
        })
        .collect()
}

/// Projector onto `span(basis)` along `span(complement)`; the two lists must
/// together form a basis.
pub fn projector(basis: &[Vec<Complex64>], complement: &[Vec<Complex64>]) -> Option<CMatrix> {
    let d = basis.len() + complement.len();
    let mut s = CMatrix::zeros(d);
    for (j, v) in basis.iter().chain(complement).enumerate() {
        if v.len() != d {
            return None;
        }
        for i in 0..d {
            s[(i, j)] = v[i];
        }
    }
    let inv = s.inverse()?;
    let mut diag = vec![Complex64::new(0.0, 0.0); d];
    for z in diag.iter_mut().take(basis.len()) {
        *z = Complex64::new(1.0, 0.0);
    }
    Some(s.mul(&CMatrix::diag(&diag)).mul(&inv))
}

//! Hermitian eigensolvers: Householder (dense) or Givens bulge chasing
//! (banded) down to a real symmetric tridiagonal, then implicit QL.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// QL iterations allowed per eigenvalue.
pub const MAX_QL_ITERATIONS: usize = 60;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix { n, data: vec![ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n);
        self.data
            .chunks_exact(self.n)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |A - A^H|` over all entries.
    pub fn hermitian_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..=i {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// `sqrt(a^2 + b^2)`, falling back to `hypot` only where squaring could
/// overflow or underflow.
#[inline]
fn pythag(a: f64, b: f64) -> f64 {
    let m = a.abs().max(b.abs());
    if m > 1e150 || (m < 1e-150 && m > 0.0) {
        a.hypot(b)
    } else {
        (a * a + b * b).sqrt()
    }
}

/// Implicit QL with Wilkinson-style shifts on a real symmetric tridiagonal.
///
/// `e[i]` couples `i` and `i + 1`; `e[n - 1]` is ignored and overwritten.
/// When `z` is given (row-major `n x n`) the rotations are accumulated into
/// it, so its columns end up as eigenvectors of the original matrix if it
/// started as the reducing transformation. Output is unsorted.
pub fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    assert_eq!(e.len(), n);
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence(MAX_QL_ITERATIONS));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = pythag(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = pythag(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let zk = &mut z[k * n..(k + 1) * n];
                        let f = zk[i + 1];
                        zk[i + 1] = s * zk[i] + c * f;
                        zk[i] = c * zk[i] - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Eigenvalues of a real symmetric tridiagonal matrix, ascending.
pub fn symmetric_tridiagonal_eigenvalues(diagonal: &[f64], off_diagonal: &[f64]) -> Result<Vec<f64>> {
    let n = diagonal.len();
    assert!(off_diagonal.len() + 1 >= n, "off-diagonal too short");
    let mut d = diagonal.to_vec();
    let mut e = vec![0.0; n];
    e[..n.saturating_sub(1)].copy_from_slice(&off_diagonal[..n.saturating_sub(1)]);
    tridiagonal_ql(&mut d, &mut e, None)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Eigen decomposition of a Hermitian matrix: `A v_k = values[k] v_k`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

/// Householder reduction `A = Q T Q^H` with complex sub-diagonal.
/// Returns (diagonal, sub-diagonal, Q when requested).
fn householder_tridiagonal(
    a: &ComplexMatrix,
    want_q: bool,
) -> (Vec<f64>, Vec<Complex64>, Option<ComplexMatrix>) {
    let n = a.dim();
    let mut a = a.clone();
    let mut q = want_q.then(|| ComplexMatrix::identity(n));
    let mut sub = vec![ZERO; n.saturating_sub(1)];
    let mut v = vec![ZERO; n];
    let mut p = vec![ZERO; n];

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let x0 = a[(k + 1, k)];
        let xnorm = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        v[0] = x0 - alpha;
        for i in 1..m {
            v[i] = a[(k + 1 + i, k)];
        }
        let vnorm2: f64 = v[..m].iter().map(|z| z.norm_sqr()).sum();
        let tau = 2.0 / vnorm2;

        // p = tau A22 v, w = p - (tau/2)(v^H p) v, A22 -= v w^H + w v^H
        for i in 0..m {
            let row = (k + 1 + i) * n + k + 1;
            p[i] = tau * a.data[row..row + m].iter().zip(&v[..m]).map(|(x, y)| x * y).sum::<Complex64>();
        }
        let vhp: Complex64 = v[..m].iter().zip(&p[..m]).map(|(x, y)| x.conj() * y).sum();
        let kappa = 0.5 * tau * vhp.re;
        for i in 0..m {
            p[i] -= kappa * v[i];
        }
        for i in 0..m {
            let (vi, wi) = (v[i], p[i]);
            let row = (k + 1 + i) * n + k + 1;
            for (j, cell) in a.data[row..row + m].iter_mut().enumerate() {
                *cell -= vi * p[j].conj() + wi * v[j].conj();
            }
        }
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        for i in k + 2..n {
            a[(i, k)] = ZERO;
            a[(k, i)] = ZERO;
        }

        if let Some(q) = q.as_mut() {
            for r in 0..n {
                let row = r * n + k + 1;
                let s: Complex64 = q.data[row..row + m].iter().zip(&v[..m]).map(|(x, y)| x * y).sum();
                let s = tau * s;
                for (j, cell) in q.data[row..row + m].iter_mut().enumerate() {
                    *cell -= s * v[j].conj();
                }
            }
        }
    }
    let diag = (0..n).map(|i| a[(i, i)].re).collect();
    for (k, e) in sub.iter_mut().enumerate() {
        *e = a[(k + 1, k)];
    }
    (diag, sub, q)
}

/// Phases `ph` with `ph[k+1] = ph[k] e_k / |e_k|`, so that
/// `T = D T_r D^H` where `T_r` has sub-diagonal `|e_k|`.
fn unit_phases(sub: &[Complex64]) -> Vec<Complex64> {
    let mut ph = Vec::with_capacity(sub.len() + 1);
    ph.push(ONE);
    for (k, e) in sub.iter().enumerate() {
        let r = e.norm();
        ph.push(if r == 0.0 { ph[k] } else { ph[k] * (e / r) });
    }
    ph
}

fn sort_eigenpairs(values: Vec<f64>, vectors: ComplexMatrix) -> HermitianEigen {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted_vals = order.iter().map(|&k| values[k]).collect();
    let sorted_vecs = ComplexMatrix::from_fn(n, |i, j| vectors[(i, order[j])]);
    HermitianEigen { values: sorted_vals, vectors: sorted_vecs }
}

/// Full eigen decomposition of a dense Hermitian matrix.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = a.dim();
    let (mut d, sub, q) = householder_tridiagonal(a, true);
    let q = q.expect("requested");
    let ph = unit_phases(&sub);
    let mut e: Vec<f64> = sub.iter().map(|z| z.norm()).chain(std::iter::once(0.0)).collect();
    e.truncate(n);
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    tridiagonal_ql(&mut d, &mut e, Some(&mut z))?;
    // V = Q D Z
    let vectors = ComplexMatrix::from_fn(n, |r, c| {
        (0..n).map(|k| q[(r, k)] * ph[k] * z[k * n + c]).sum()
    });
    Ok(sort_eigenpairs(d, vectors))
}

/// Eigenvalues only of a dense Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let (d, sub, _) = householder_tridiagonal(a, false);
    let off: Vec<f64> = sub.iter().map(|z| z.norm()).collect();
    symmetric_tridiagonal_eigenvalues(&d, &off)
}

/// Hermitian matrix with `A[i][j] = 0` for `|i - j| > bandwidth`, stored as
/// its lower band plus one spare diagonal for the bulge created while
/// chasing.
#[derive(Debug, Clone)]
pub struct HermitianBand {
    n: usize,
    bandwidth: usize,
    // data[d * n + j] = A[j + d][j] for d in 0..=bandwidth + 1
    data: Vec<Complex64>,
}

impl HermitianBand {
    pub fn zeros(n: usize, bandwidth: usize) -> Self {
        HermitianBand { n, bandwidth, data: vec![ZERO; (bandwidth + 2) * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    fn storage_width(&self) -> usize {
        self.bandwidth + 1
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        if i >= j {
            let d = i - j;
            if d > self.storage_width() {
                ZERO
            } else {
                self.data[d * self.n + j]
            }
        } else {
            self.get(j, i).conj()
        }
    }

    /// Sets `A[i][j]` and, implicitly, `A[j][i] = conj(value)`. Panics outside
    /// the declared band.
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        assert!(i.abs_diff(j) <= self.bandwidth, "({i}, {j}) is outside the band");
        self.put(i, j, value);
    }

    fn put(&mut self, i: usize, j: usize, value: Complex64) {
        if i >= j {
            let d = i - j;
            if d <= self.storage_width() {
                self.data[d * self.n + j] = value;
            }
        } else {
            self.put(j, i, value.conj());
        }
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, |i, j| self.get(i, j))
    }

    /// Unitary rotation in the plane `(p, p + 1)` that zeroes `A[p+1][c]`
    /// against `A[p][c]`, applied as a similarity.
    fn rotate(&mut self, p: usize, c: usize) {
        let q = p + 1;
        let x = self.get(p, c);
        let y = self.get(q, c);
        let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
        if y == ZERO || r == 0.0 {
            return;
        }
        let (u00, u01, u10, u11) = (x.conj() / r, y.conj() / r, -y / r, x / r);
        let n = self.n;
        let w = self.storage_width();
        // columns left of the plane: A[p][k], A[q][k] live in the lower band
        for k in p.saturating_sub(w)..p {
            let (ip, iq) = ((p - k) * n + k, (q - k) * n + k);
            let apk = self.data[ip];
            let q_in = q - k <= w;
            let aqk = if q_in { self.data[iq] } else { ZERO };
            self.data[ip] = u00 * apk + u01 * aqk;
            if q_in {
                self.data[iq] = u10 * apk + u11 * aqk;
            }
        }
        // rows below the plane: A[k][p], A[k][q] = conj of the row update
        let (c00, c01, c10, c11) = (u00.conj(), u01.conj(), u10.conj(), u11.conj());
        for k in q + 1..=(p + w).min(n - 1) {
            let (ip, iq) = ((k - p) * n + p, (k - q) * n + q);
            let akp = self.data[ip];
            let akq = self.data[iq];
            self.data[ip] = c00 * akp + c01 * akq;
            self.data[iq] = c10 * akp + c11 * akq;
        }
        let (m00, m01, m10, m11) = (self.get(p, p), self.get(p, q), self.get(q, p), self.get(q, q));
        let t00 = u00 * m00 + u01 * m10;
        let t01 = u00 * m01 + u01 * m11;
        let t10 = u10 * m00 + u11 * m10;
        let t11 = u10 * m01 + u11 * m11;
        let n00 = t00 * u00.conj() + t01 * u01.conj();
        let n01 = t00 * u10.conj() + t01 * u11.conj();
        let n11 = t10 * u10.conj() + t11 * u11.conj();
        self.put(p, p, Complex64::new(n00.re, 0.0));
        self.put(p, q, n01);
        self.put(q, q, Complex64::new(n11.re, 0.0));
        self.put(q, c, ZERO);
    }

    /// Reduces the band one diagonal at a time (Schwarz's algorithm) and
    /// returns the real diagonal and the moduli of the sub-diagonal.
    pub fn tridiagonalize(mut self) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        for bw in (2..=self.bandwidth).rev() {
            for j in 0..n.saturating_sub(bw) {
                let (mut row, mut col) = (j + bw, j);
                loop {
                    if self.get(row, col) == ZERO {
                        break;
                    }
                    self.rotate(row - 1, col);
                    let next = row + bw;
                    if next >= n {
                        break;
                    }
                    col = row - 1;
                    row = next;
                }
            }
        }
        let diag = (0..n).map(|i| self.get(i, i).re).collect();
        let off = (0..n.saturating_sub(1)).map(|k| self.get(k + 1, k).norm()).collect();
        (diag, off)
    }

    /// All eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let (d, e) = self.clone().tridiagonalize();
        symmetric_tridiagonal_eigenvalues(&d, &e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_matrix() {
        let a = ComplexMatrix::from_fn(2, |i, j| if i == j { c(1.0 - 2.0 * i as f64, 0.0) } else { ZERO });
        assert_eq!(hermitian_eigenvalues(&a).unwrap(), vec![-1.0, 1.0]);
    }

    #[test]
    fn two_by_two_with_complex_coupling() {
        // [[1, i], [-i, -1]] has eigenvalues +-sqrt(2)
        let a = ComplexMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 0) => c(1.0, 0.0),
            (1, 1) => c(-1.0, 0.0),
            (0, 1) => c(0.0, 1.0),
            _ => c(0.0, -1.0),
        });
        let eig = hermitian_eigen(&a).unwrap();
        let r2 = 2f64.sqrt();
        assert!((eig.values[0] + r2).abs() < 1e-14);
        assert!((eig.values[1] - r2).abs() < 1e-14);
    }

    #[test]
    fn tridiagonal_known_spectrum() {
        // 2 on the diagonal, -1 off: 2 - 2 cos(k pi / (n+1))
        let n = 50;
        let vals = symmetric_tridiagonal_eigenvalues(&vec![2.0; n], &vec![-1.0; n - 1]).unwrap();
        for (k, v) in vals.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn band_matches_dense_on_small_band() {
        let n = 9;
        let mut band = HermitianBand::zeros(n, 3);
        for i in 0..n {
            band.set(i, i, c((i as f64).sin() * 3.0, 0.0));
            for d in 1..=3 {
                if i + d < n {
                    band.set(i + d, i, c((i * d) as f64 * 0.37 - 1.0, 0.2 * d as f64 - (i as f64).cos()));
                }
            }
        }
        let dense = band.to_dense();
        assert_eq!(dense.hermitian_residual(), 0.0);
        let a = band.eigenvalues().unwrap();
        let b = hermitian_eigenvalues(&dense).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
    }

    #[test]
    #[should_panic]
    fn band_rejects_entries_outside_band() {
        let mut band = HermitianBand::zeros(5, 1);
        band.set(3, 0, ONE);
    }
}

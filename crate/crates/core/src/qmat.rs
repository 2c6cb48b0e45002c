//! Dense complex linear algebra for multi-qubit operators.
//!
//! Qubit 0 is the most significant bit of a computational-basis index, so in
//! `tensor(a, b)` the factor `a` carries the leading qubits.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn r(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Number of qubits for a power-of-two dimension.
pub fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadShape {
                rows,
                cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Build from real entries given as rows.
    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        let data = rows.iter().flat_map(|row| row.iter().map(|&x| r(x))).collect();
        Self { rows: N, cols: N, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diagonal_matrix(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Outer product |a⟩⟨b|.
    pub fn outer(a: &[Complex64], b: &[Complex64]) -> Self {
        Self::from_fn(a.len(), b.len(), |i, j| a[i] * b[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(r(s))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// ⟨u|M|v⟩.
    pub fn sandwich(&self, u: &[Complex64], v: &[Complex64]) -> Result<Complex64> {
        let mv = self.apply(v)?;
        if u.len() != mv.len() {
            return Err(Error::DimensionMismatch {
                expected: mv.len(),
                got: u.len(),
            });
        }
        Ok(u.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum())
    }

    /// M ρ M†.
    pub fn conjugate(&self, rho: &Self) -> Result<Self> {
        self.matmul(rho)?.matmul(&self.adjoint())
    }

    /// Largest entrywise |M - M†|.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Largest entrywise |A - B|.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Symmetrize to (M + M†)/2.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// Reorder the qubits of a 2ⁿ×2ⁿ operator: qubit `order[k]` of `self`
    /// becomes qubit `k` of the result.
    pub fn permute_qubits(&self, order: &[usize]) -> Result<Self> {
        let n = qubits_for_dim(self.rows)?;
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let map = QubitPermutation::new(n, order)?;
        let dim = self.rows;
        let mut out = Self::zeros(dim, dim);
        for i in 0..dim {
            let si = map.source_index(i);
            for j in 0..dim {
                out[(i, j)] = self[(si, map.source_index(j))];
            }
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("shape mismatch in matrix product")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, " {:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Maps basis indices between a qubit ordering and its permutation.
#[derive(Debug, Clone)]
pub(crate) struct QubitPermutation {
    n: usize,
    order: Vec<usize>,
}

impl QubitPermutation {
    pub(crate) fn new(n: usize, order: &[usize]) -> Result<Self> {
        if order.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: order.len(),
            });
        }
        let mut seen = vec![false; n];
        for &q in order {
            if q >= n {
                return Err(Error::QubitOutOfRange { index: q, n_qubits: n });
            }
            if seen[q] {
                return Err(Error::RepeatedQubit(q));
            }
            seen[q] = true;
        }
        Ok(Self {
            n,
            order: order.to_vec(),
        })
    }

    /// Index in the original ordering holding the same basis state as `i` in the permuted one.
    pub(crate) fn source_index(&self, i: usize) -> usize {
        let mut src = 0;
        for (k, &q) in self.order.iter().enumerate() {
            let bit = (i >> (self.n - 1 - k)) & 1;
            src |= bit << (self.n - 1 - q);
        }
        src
    }
}

/// Kronecker product; `a` supplies the most significant index.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    ComplexMatrix::from_fn(rows, cols, |i, j| {
        a[(i / b.rows, j / b.cols)] * b[(i % b.rows, j % b.cols)]
    })
}

/// Kronecker product of vectors.
pub fn tensor_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

/// Normalized pure state on 2ⁿ amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Checks that the dimension is a power of two and the norm is 1.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        qubits_for_dim(amplitudes.len())?;
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > Tolerances::DEFAULT.unit {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        qubits_for_dim(amplitudes.len())?;
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z / norm).collect(),
        })
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, bound: dim });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(Self { amplitudes: amps })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn tensor(&self, other: &StateVector) -> StateVector {
        StateVector {
            amplitudes: tensor_vec(&self.amplitudes, &other.amplitudes),
        }
    }

    /// Applies a unitary; the result is renormalized to absorb rounding.
    pub fn apply(&self, u: &ComplexMatrix) -> Result<StateVector> {
        StateVector::normalized(u.apply(&self.amplitudes)?)
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix {
            n_qubits: self.n_qubits(),
            matrix: self.projector(),
        }
    }
}

/// Hermitian, positive-semidefinite, unit-trace operator on n qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and positivity with the default tolerances.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(matrix, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare(matrix.rows, matrix.cols));
        }
        let n_qubits = qubits_for_dim(matrix.rows)?;
        let dev = matrix.hermitian_deviation();
        if dev > tol.hermitian {
            return Err(Error::NotHermitian(dev));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol.unit || tr.im.abs() > tol.unit {
            return Err(Error::InvalidTrace(tr.re));
        }
        let matrix = matrix.hermitian_part();
        let min = herm_eigenvalues(&matrix)?[0];
        if min < tol.psd_floor {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { n_qubits, matrix })
    }

    /// Wraps a matrix produced by a trace-preserving, positive map of a valid
    /// density matrix; only the Hermitian part is kept.
    pub(crate) fn from_channel_output(matrix: ComplexMatrix) -> Self {
        let n_qubits = matrix.rows.trailing_zeros() as usize;
        Self {
            n_qubits,
            matrix: matrix.hermitian_part(),
        }
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        Self {
            n_qubits,
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        herm_eigenvalues(&self.matrix).expect("density matrix is Hermitian")
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            n_qubits: self.n_qubits + other.n_qubits,
            matrix: tensor(&self.matrix, &other.matrix),
        }
    }

    /// ⟨ψ|ρ|ψ⟩.
    pub fn expectation(&self, psi: &StateVector) -> Result<f64> {
        Ok(self.matrix.sandwich(psi.amplitudes(), psi.amplitudes())?.re)
    }

    pub fn permute_qubits(&self, order: &[usize]) -> Result<DensityMatrix> {
        Ok(DensityMatrix {
            n_qubits: self.n_qubits,
            matrix: self.matrix.permute_qubits(order)?,
        })
    }
}

fn check_qubits(qubits: &[usize], n_qubits: usize) -> Result<()> {
    let mut seen = vec![false; n_qubits];
    for &q in qubits {
        if q >= n_qubits {
            return Err(Error::QubitOutOfRange { index: q, n_qubits });
        }
        if seen[q] {
            return Err(Error::RepeatedQubit(q));
        }
        seen[q] = true;
    }
    Ok(())
}

/// Reduced state on `keep` (0-based), in increasing qubit order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::EmptyQubitSet);
    }
    let n = rho.n_qubits;
    check_qubits(keep, n)?;
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    let traced: Vec<usize> = (0..n).filter(|q| !kept.contains(q)).collect();

    let compose = |a: usize, t: usize| -> usize {
        let mut idx = 0;
        for (k, &q) in kept.iter().enumerate() {
            idx |= ((a >> (kept.len() - 1 - k)) & 1) << (n - 1 - q);
        }
        for (k, &q) in traced.iter().enumerate() {
            idx |= ((t >> (traced.len() - 1 - k)) & 1) << (n - 1 - q);
        }
        idx
    };

    let dk = 1usize << kept.len();
    let dt = 1usize << traced.len();
    let m = &rho.matrix;
    let out = ComplexMatrix::from_fn(dk, dk, |a, b| (0..dt).map(|t| m[(compose(a, t), compose(b, t))]).sum());
    Ok(DensityMatrix {
        n_qubits: kept.len(),
        matrix: out,
    })
}

/// Transposes the tensor factors listed in `subsystem` (0-based).
pub fn partial_transpose(rho: &DensityMatrix, subsystem: &[usize]) -> Result<ComplexMatrix> {
    let n = rho.n_qubits;
    check_qubits(subsystem, n)?;
    let mask: usize = subsystem.iter().map(|&q| 1usize << (n - 1 - q)).sum();
    let m = &rho.matrix;
    Ok(ComplexMatrix::from_fn(rho.dim(), rho.dim(), |i, j| {
        let swap = (i ^ j) & mask;
        m[(i ^ swap, j ^ swap)]
    }))
}

/// Eigenvalues and eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

/// Ascending spectrum of a Hermitian matrix.
pub fn herm_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(herm_eigen(m)?.values)
}

/// Cyclic complex Jacobi diagonalization.
pub fn herm_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    herm_eigen_with(m, &Tolerances::DEFAULT)
}

pub fn herm_eigen_with(m: &ComplexMatrix, tol: &Tolerances) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows, m.cols));
    }
    let dev = m.hermitian_deviation();
    if dev > tol.eigen_input {
        return Err(Error::NotHermitian(dev));
    }
    let n = m.rows;
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(1.0);

    const MAX_SWEEPS: usize = 100;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off < tol.jacobi_off_diagonal * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |row, k| v[(row, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

/// Zeroes a[p][q] with the unitary V = diag(1, e^{-iφ})·R(θ) on the (p, q) plane.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let g = a[(p, q)];
    let g_abs = g.norm();
    if g_abs < 1e-300 {
        return;
    }
    let phase = g / g_abs;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * g_abs);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;

    let vpp = r(cs);
    let vpq = r(sn);
    let vqp = -phase.conj() * sn;
    let vqq = phase.conj() * cs;

    let n = a.rows;
    // A <- A V
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * vpp + akq * vqp;
        a[(k, q)] = akp * vpq + akq * vqq;
    }
    // A <- V† A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = vpp.conj() * apk + vqp.conj() * aqk;
        a[(q, k)] = vpq.conj() * apk + vqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = r(a[(p, p)].re);
    a[(q, q)] = r(a[(q, q)].re);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * vpp + vkq * vqp;
        v[(k, q)] = vkp * vpq + vkq * vqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn bell0() -> StateVector {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        StateVector::new(vec![r(s), ZERO, ZERO, r(s)]).unwrap()
    }

    fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]])
    }

    #[test]
    fn identity_tensor_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn double_bit_flip() {
        let xx = tensor(&sigma_x(), &sigma_x());
        let out = xx.apply(StateVector::basis(2, 0b00).unwrap().amplitudes()).unwrap();
        assert_eq!(out, StateVector::basis(2, 0b11).unwrap().amplitudes());
    }

    #[test]
    fn tensor_block_structure() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| c(i as f64 + 1.0, j as f64));
        let b = ComplexMatrix::from_fn(4, 4, |i, j| c((i * 4 + j) as f64, -1.0));
        let k = tensor(&a, &b);
        assert_eq!((k.rows(), k.cols()), (8, 8));
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(k[(i, j)], a[(i / 4, j / 4)] * b[(i % 4, j % 4)]);
            }
        }
    }

    #[test]
    fn reduced_bell_state_is_maximally_mixed() {
        let rho = bell0().density();
        for keep in [[0usize], [1]] {
            let red = partial_trace(&rho, &keep).unwrap();
            assert!(red.matrix().max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
        }
    }

    #[test]
    fn trace_out_first_factor_of_product() {
        let a = DensityMatrix::new(ComplexMatrix::from_real_rows([[0.7, 0.1], [0.1, 0.3]])).unwrap();
        let b = DensityMatrix::new(ComplexMatrix::new(2, 2, vec![r(0.4), c(0.1, 0.2), c(0.1, -0.2), r(0.6)]).unwrap())
            .unwrap();
        let ab = a.tensor(&b);
        assert!(partial_trace(&ab, &[1]).unwrap().matrix().max_abs_diff(b.matrix()) < 1e-15);
        assert!(partial_trace(&ab, &[0]).unwrap().matrix().max_abs_diff(a.matrix()) < 1e-15);
    }

    #[test]
    fn partial_trace_keeps_qubit_order() {
        // |0⟩|1⟩|0⟩ -> keep qubits 2 and 1 -> reduced state |1⟩|0⟩ in increasing order (1, 2)
        let psi = StateVector::basis(3, 0b010).unwrap().density();
        let red = partial_trace(&psi, &[2, 1]).unwrap();
        assert_eq!(red.matrix()[(0b10, 0b10)], ONE);
    }

    #[test]
    fn partial_trace_errors() {
        let rho = bell0().density();
        assert_eq!(partial_trace(&rho, &[]).unwrap_err(), Error::EmptyQubitSet);
        assert!(matches!(
            partial_trace(&rho, &[2]).unwrap_err(),
            Error::QubitOutOfRange { index: 2, .. }
        ));
        assert_eq!(partial_trace(&rho, &[0, 0]).unwrap_err(), Error::RepeatedQubit(0));
    }

    #[test]
    fn partial_transpose_of_bell_state() {
        let pt = partial_transpose(&bell0().density(), &[1]).unwrap();
        let ev = herm_eigenvalues(&pt).unwrap();
        for (got, want) in ev.iter().zip([-0.5, 0.5, 0.5, 0.5]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        let back = partial_transpose(&DensityMatrix::from_channel_output(pt), &[1]).unwrap();
        assert!(back.max_abs_diff(bell0().density().matrix()) < 1e-15);
    }

    #[test]
    fn partial_transpose_of_product_keeps_spectrum() {
        let a = DensityMatrix::new(ComplexMatrix::new(2, 2, vec![r(0.4), c(0.1, 0.2), c(0.1, -0.2), r(0.6)]).unwrap())
            .unwrap();
        let ab = a.tensor(&a);
        let pt = partial_transpose(&ab, &[0]).unwrap();
        let expected = tensor(&a.matrix().transpose(), a.matrix());
        assert!(pt.max_abs_diff(&expected) < 1e-15);
        let ev0 = ab.eigenvalues();
        let ev1 = herm_eigenvalues(&pt).unwrap();
        for (x, y) in ev0.iter().zip(&ev1) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn simple_spectra() {
        assert_eq!(herm_eigenvalues(&ComplexMatrix::identity(4)).unwrap(), vec![1.0; 4]);
        let z = ComplexMatrix::from_real_rows([[1.0, 0.0], [0.0, -1.0]]);
        assert_eq!(herm_eigenvalues(&z).unwrap(), vec![-1.0, 1.0]);
        let ev = herm_eigenvalues(&bell0().projector()).unwrap();
        for (got, want) in ev.iter().zip([0.0, 0.0, 0.0, 1.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn eigensolver_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows([[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(herm_eigenvalues(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn complex_hermitian_eigenpairs() {
        // σ² has eigenvalues ±1
        let y = ComplexMatrix::new(2, 2, vec![ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]).unwrap();
        let eig = herm_eigen(&y).unwrap();
        assert_abs_diff_eq!(eig.values[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eig.values[1], 1.0, epsilon = 1e-14);
        for k in 0..2 {
            let col: Vec<_> = (0..2).map(|i| eig.vectors[(i, k)]).collect();
            let mv = y.apply(&col).unwrap();
            for i in 0..2 {
                assert!((mv[i] - col[i] * eig.values[k]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn density_matrix_validation() {
        let bad_trace = ComplexMatrix::identity(2);
        assert!(matches!(DensityMatrix::new(bad_trace), Err(Error::InvalidTrace(_))));
        let not_psd = ComplexMatrix::from_real_rows([[1.5, 0.0], [0.0, -0.5]]);
        assert!(matches!(DensityMatrix::new(not_psd), Err(Error::NotPositive(_))));
        let non_herm = ComplexMatrix::from_real_rows([[0.5, 0.2], [0.0, 0.5]]);
        assert!(matches!(DensityMatrix::new(non_herm), Err(Error::NotHermitian(_))));
        let odd = ComplexMatrix::identity(3).scale_real(1.0 / 3.0);
        assert!(matches!(DensityMatrix::new(odd), Err(Error::NotPowerOfTwo(3))));
    }

    #[test]
    fn state_vector_validation() {
        assert!(matches!(StateVector::new(vec![ONE, ONE]), Err(Error::NotNormalized(_))));
        assert!(matches!(
            StateVector::new(vec![ONE, ZERO, ZERO]),
            Err(Error::NotPowerOfTwo(3))
        ));
    }

    #[test]
    fn qubit_permutation_swaps_factors() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| c(i as f64, j as f64 + 0.5));
        let b = ComplexMatrix::from_fn(2, 2, |i, j| c(2.0 * j as f64, -(i as f64)));
        let ab = tensor(&a, &b);
        assert_eq!(ab.permute_qubits(&[1, 0]).unwrap(), tensor(&b, &a));
    }
}

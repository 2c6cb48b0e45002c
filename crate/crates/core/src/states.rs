//! Pure states and bases: Pauli frame, Bell states, the S/T rotations, the
//! four-qubit Υ family, Alice's 16-outcome measurement basis and input states.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::qmat::{c, r, tensor, tensor_vec, ComplexMatrix, StateVector, ZERO};

/// Angle differences (θ₁₂, φ₁₂) labelling a member of the Υ family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnglePair {
    theta12: f64,
    phi12: f64,
}

impl AnglePair {
    /// Both angles must lie strictly inside (−π/2, π/2).
    pub fn new(theta12: f64, phi12: f64) -> Result<Self> {
        for (name, value) in [("theta12", theta12), ("phi12", phi12)] {
            if !(value > -FRAC_PI_2 && value < FRAC_PI_2) {
                return Err(Error::ParameterOutOfRange {
                    name,
                    value,
                    range: "(-pi/2, pi/2)",
                });
            }
        }
        Ok(Self { theta12, phi12 })
    }

    pub const ZERO: AnglePair = AnglePair {
        theta12: 0.0,
        phi12: 0.0,
    };

    pub fn theta12(&self) -> f64 {
        self.theta12
    }

    pub fn phi12(&self) -> f64 {
        self.phi12
    }

    /// Projects arbitrary angles onto the closed interval shrunk by `margin`.
    pub(crate) fn clamped(theta12: f64, phi12: f64, margin: f64) -> Self {
        let hi = FRAC_PI_2 - margin;
        Self {
            theta12: theta12.clamp(-hi, hi),
            phi12: phi12.clamp(-hi, hi),
        }
    }
}

fn check_index(mu: usize) -> Result<()> {
    if mu > 3 {
        return Err(Error::IndexOutOfRange { index: mu, bound: 4 });
    }
    Ok(())
}

/// u⁰ = I, u¹ = σ¹, u² = iσ² (real), u³ = σ³.
pub fn pauli(mu: usize) -> Result<ComplexMatrix> {
    check_index(mu)?;
    Ok(match mu {
        0 => ComplexMatrix::identity(2),
        1 => ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]]),
        2 => ComplexMatrix::from_real_rows([[0.0, 1.0], [-1.0, 0.0]]),
        _ => ComplexMatrix::from_real_rows([[1.0, 0.0], [0.0, -1.0]]),
    })
}

/// U^{μν} = u^μ ⊗ u^ν.
pub fn pauli_pair(mu: usize, nu: usize) -> Result<ComplexMatrix> {
    Ok(tensor(&pauli(mu)?, &pauli(nu)?))
}

/// (u^μ ⊗ I)(|00⟩ + |11⟩)/√2.
pub fn bell(mu: usize) -> Result<StateVector> {
    let phi = [r(FRAC_1_SQRT_2), ZERO, ZERO, r(FRAC_1_SQRT_2)];
    let op = tensor(&pauli(mu)?, &ComplexMatrix::identity(2));
    StateVector::normalized(op.apply(&phi)?)
}

/// The orthogonal matrices S(θ₁, φ₁) and T(θ₂, φ₂) whose columns, read in
/// binary order |00⟩, |01⟩, |10⟩, |11⟩, give the |J⟩ and |J′⟩ bases.
pub fn s_t_matrices(theta1: f64, phi1: f64, theta2: f64, phi2: f64) -> (ComplexMatrix, ComplexMatrix) {
    let (s1, c1) = theta1.sin_cos();
    let (sp1, cp1) = phi1.sin_cos();
    let s = ComplexMatrix::from_real_rows([
        [c1, 0.0, 0.0, -s1],
        [0.0, cp1, -sp1, 0.0],
        [0.0, sp1, cp1, 0.0],
        [s1, 0.0, 0.0, c1],
    ]);
    let (s2, c2) = theta2.sin_cos();
    let (sp2, cp2) = phi2.sin_cos();
    let t = ComplexMatrix::from_real_rows([
        [c2, 0.0, 0.0, -s2],
        [0.0, sp2, cp2, 0.0],
        [0.0, cp2, -sp2, 0.0],
        [s2, 0.0, 0.0, c2],
    ]);
    (s, t)
}

fn column(m: &ComplexMatrix, j: usize) -> Vec<Complex64> {
    (0..m.rows()).map(|i| m[(i, j)]).collect()
}

/// (1/2) Σ_J left_J ⊗ right_J over the columns of two 4×4 matrices.
fn paired_columns(left: &ComplexMatrix, right: &ComplexMatrix) -> Vec<Complex64> {
    let mut out = vec![ZERO; 16];
    for j in 0..4 {
        let term = tensor_vec(&column(left, j), &column(right, j));
        for (o, t) in out.iter_mut().zip(term) {
            *o += t * 0.5;
        }
    }
    out
}

/// |Υ⁰⁰⟩ from all four angles; depends only on θ₁ − θ₂ and φ₁ − φ₂.
pub fn upsilon00_general(theta1: f64, phi1: f64, theta2: f64, phi2: f64) -> StateVector {
    let (s, t) = s_t_matrices(theta1, phi1, theta2, phi2);
    StateVector::normalized(paired_columns(&s, &t)).expect("orthogonal columns give a unit vector")
}

/// |Υ⁰⁰(θ₁₂, φ₁₂)⟩ on qubits (A₃, A₄, B₁, B₂); the first pair carries the S labels.
///
/// Built in the gauge θ₂ = φ₂ = 0.
pub fn upsilon00(angles: AnglePair) -> StateVector {
    upsilon00_general(angles.theta12, angles.phi12, 0.0, 0.0)
}

/// |Υ^{μν}⟩ = (I ⊗ U^{μν†})|Υ⁰⁰⟩.
pub fn upsilon_munu(mu: usize, nu: usize, angles: AnglePair) -> Result<StateVector> {
    let op = tensor(&ComplexMatrix::identity(4), &pauli_pair(mu, nu)?.adjoint());
    upsilon00(angles).apply(&op)
}

/// All sixteen |Υ^{μν}⟩, index 4μ + ν.
pub fn upsilon_basis(angles: AnglePair) -> Vec<StateVector> {
    let base = upsilon00(angles);
    let id4 = ComplexMatrix::identity(4);
    (0..16)
        .map(|k| {
            let u = pauli_pair(k / 4, k % 4).expect("index in range");
            base.apply(&tensor(&id4, &u.adjoint())).expect("4-qubit operator")
        })
        .collect()
}

/// |Π⁰⁰⟩ = (1/2) Σ_K |K′⟩_{A₁A₂} ⊗ |K⟩_{A₃A₄}.
pub fn pi00(angles: AnglePair) -> StateVector {
    let (s, t) = s_t_matrices(angles.theta12, angles.phi12, 0.0, 0.0);
    StateVector::normalized(paired_columns(&t, &s)).expect("orthogonal columns give a unit vector")
}

/// Alice's measurement basis |Π^{μν}⟩ = (U^{μν} ⊗ I)|Π⁰⁰⟩, index 4μ + ν.
pub fn pi_basis(angles: AnglePair) -> Vec<StateVector> {
    let base = pi00(angles);
    let id4 = ComplexMatrix::identity(4);
    (0..16)
        .map(|k| {
            let u = pauli_pair(k / 4, k % 4).expect("index in range");
            base.apply(&tensor(&u, &id4)).expect("4-qubit operator")
        })
        .collect()
}

/// cos ε|00⟩ + sin ε|11⟩ for ε ∈ [0, π/4].
pub fn input_state(epsilon: f64) -> Result<StateVector> {
    if !(0.0..=FRAC_PI_4).contains(&epsilon) {
        return Err(Error::ParameterOutOfRange {
            name: "epsilon",
            value: epsilon,
            range: "[0, pi/4]",
        });
    }
    let (s, co) = epsilon.sin_cos();
    StateVector::normalized(vec![r(co), ZERO, ZERO, r(s)])
}

/// Haar-random pure state from an explicit seed (ChaCha8, stream 0).
pub fn haar_random_state(n_qubits: usize, seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_random_state_with(n_qubits, &mut rng)
}

/// Haar-random pure state: 2^{n+1} standard normals as real and imaginary
/// parts, then normalized.
pub fn haar_random_state_with<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> StateVector {
    let dim = 1usize << n_qubits;
    let amps = (0..dim)
        .map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    StateVector::normalized(amps).expect("Gaussian vector is nonzero")
}

/// Haar-random unitary of size `dim` via Gram–Schmidt on a Gaussian matrix.
pub fn haar_random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex64> = (0..dim)
            .map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        for u in &cols {
            let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

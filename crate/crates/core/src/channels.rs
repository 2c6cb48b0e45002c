//! Kraus channels and the noisy resource states built from them.

use std::f64::consts::FRAC_PI_2;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::qmat::{qubits_for_dim, r, tensor, ComplexMatrix, DensityMatrix};
use crate::states::{bell, upsilon00, AnglePair};

/// Qubits of the S-labelled pair of the Υ layout (A₁A₂ of the resource).
pub const SENDER_PAIR: [usize; 2] = [0, 1];
/// Qubits of the T-labelled pair of the Υ layout (B₁B₂ of the resource).
pub const RECEIVER_PAIR: [usize; 2] = [2, 3];

/// Damping parameter q ∈ [0, 1]; 1 − q is the dissipation strength.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DampingStrength(f64);

impl DampingStrength {
    pub fn new(q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::ParameterOutOfRange {
                name: "q",
                value: q,
                range: "[0, 1]",
            });
        }
        Ok(Self(q))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A trace-preserving map given by its Kraus operators.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim: usize,
    kraus_ops: Vec<ComplexMatrix>,
}

impl KrausChannel {
    /// Checks shapes and the sum rule Σ K†K = I.
    pub fn new(kraus_ops: Vec<ComplexMatrix>) -> Result<Self> {
        Self::with_tolerance(kraus_ops, Tolerances::DEFAULT.unit)
    }

    pub fn with_tolerance(kraus_ops: Vec<ComplexMatrix>, tol: f64) -> Result<Self> {
        let first = kraus_ops.first().ok_or(Error::EmptyQubitSet)?;
        let dim = first.rows();
        qubits_for_dim(dim)?;
        for k in &kraus_ops {
            if !k.is_square() {
                return Err(Error::NotSquare(k.rows(), k.cols()));
            }
            if k.rows() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: k.rows(),
                });
            }
        }
        let channel = Self { dim, kraus_ops };
        let dev = channel.completeness_deviation();
        if dev > tol {
            return Err(Error::NotTracePreserving(dev));
        }
        Ok(channel)
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self {
            dim: 1 << n_qubits,
            kraus_ops: vec![ComplexMatrix::identity(1 << n_qubits)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.kraus_ops
    }

    /// Largest entrywise deviation of Σ K†K from the identity.
    pub fn completeness_deviation(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.kraus_ops {
            sum = &sum + &(&k.adjoint() * k);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.dim))
    }
}

/// K⁰ = diag(√q, 1), K¹ = √(1−q)|1⟩⟨0|; |0⟩ is the excited level and decays to |1⟩.
pub fn amplitude_damping(q: DampingStrength) -> KrausChannel {
    let q = q.value();
    KrausChannel {
        dim: 2,
        kraus_ops: vec![
            ComplexMatrix::from_real_rows([[q.sqrt(), 0.0], [0.0, 1.0]]),
            ComplexMatrix::from_real_rows([[0.0, 0.0], [(1.0 - q).sqrt(), 0.0]]),
        ],
    }
}

/// Two-qubit time-correlated damping: only the |00⟩ amplitude decays, into |11⟩.
pub fn correlated_amplitude_damping(q: DampingStrength) -> KrausChannel {
    let q = q.value();
    let mut k00 = ComplexMatrix::identity(4);
    k00[(0, 0)] = r(q.sqrt());
    let mut k11 = ComplexMatrix::zeros(4, 4);
    k11[(3, 0)] = r((1.0 - q).sqrt());
    KrausChannel {
        dim: 4,
        kraus_ops: vec![k00, k11],
    }
}

/// Applies `ch` to the qubits `targets` (0-based, in the channel's own qubit order).
///
/// The targets are permuted to the front, the channel acts as K ⊗ I, and the
/// original order is restored.
pub fn apply_channel(ch: &KrausChannel, rho: &DensityMatrix, targets: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n_qubits();
    if targets.len() != ch.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: ch.n_qubits(),
            got: targets.len(),
        });
    }
    for (i, &t) in targets.iter().enumerate() {
        if t >= n {
            return Err(Error::QubitOutOfRange { index: t, n_qubits: n });
        }
        if targets[..i].contains(&t) {
            return Err(Error::RepeatedQubit(t));
        }
    }
    let mut order: Vec<usize> = targets.to_vec();
    for q in 0..n {
        if !targets.contains(&q) {
            order.push(q);
        }
    }
    let front = rho.matrix().permute_qubits(&order)?;
    let rest = ComplexMatrix::identity(1 << (n - targets.len()));

    let mut out = ComplexMatrix::zeros(rho.dim(), rho.dim());
    for k in ch.kraus_ops() {
        let big = tensor(k, &rest);
        out = &out + &big.conjugate(&front)?;
    }

    let mut inverse = vec![0; n];
    for (pos, &q) in order.iter().enumerate() {
        inverse[q] = pos;
    }
    Ok(DensityMatrix::from_channel_output(out.permute_qubits(&inverse)?))
}

/// Bell state with the second qubit amplitude-damped.
pub fn xi(q: DampingStrength) -> DensityMatrix {
    let bell = bell(0).expect("index 0").density();
    apply_channel(&amplitude_damping(q), &bell, &[1]).expect("two-qubit state")
}

/// [`xi`] followed by the same damping on the first qubit.
pub fn xi_prime(q: DampingStrength) -> DensityMatrix {
    apply_channel(&amplitude_damping(q), &xi(q), &[0]).expect("two-qubit state")
}

fn resource_angles(alpha: f64, beta: f64) -> Result<AnglePair> {
    AnglePair::new(alpha, beta).map_err(|_| Error::ParameterOutOfRange {
        name: "alpha/beta",
        value: if alpha.abs() >= FRAC_PI_2 { alpha } else { beta },
        range: "(-pi/2, pi/2)",
    })
}

/// Correlated damping applied to the S-labelled pair of |Υ⁰⁰(α, β)⟩.
///
/// The damped pair is opposite to the pair rotated by U^{μν†} in
/// [`crate::states::upsilon_munu`], so the teleported output depends on α.
pub fn big_xi(alpha: f64, beta: f64, q: DampingStrength) -> Result<DensityMatrix> {
    let angles = resource_angles(alpha, beta)?;
    let pure = upsilon00(angles).density();
    apply_channel(&correlated_amplitude_damping(q), &pure, &SENDER_PAIR)
}

/// [`big_xi`] with a second correlated damping of the same strength on the other pair.
pub fn big_xi_prime(alpha: f64, beta: f64, q: DampingStrength) -> Result<DensityMatrix> {
    let xi = big_xi(alpha, beta, q)?;
    apply_channel(&correlated_amplitude_damping(q), &xi, &RECEIVER_PAIR)
}

//! Teleportation through mixed resources: the Pauli-mixture channels induced
//! by single- and two-qubit teleportation, and an explicit simulation of the
//! two-qubit measurement protocol.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::qmat::{ComplexMatrix, DensityMatrix, StateVector, ZERO};
use crate::states::{bell, haar_random_state_with, pauli, pauli_pair, pi_basis, upsilon_basis, AnglePair};

fn require_qubits(rho: &DensityMatrix, n: usize) -> Result<()> {
    if rho.n_qubits() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rho.n_qubits(),
        });
    }
    Ok(())
}

/// Bell-state weights ⟨Ψ^μ|χ|Ψ^μ⟩, μ = 0..3.
pub fn bell_weights(chi: &DensityMatrix) -> Result<[f64; 4]> {
    require_qubits(chi, 2)?;
    let mut w = [0.0; 4];
    for (mu, slot) in w.iter_mut().enumerate() {
        *slot = chi.expectation(&bell(mu)?)?;
    }
    Ok(w)
}

/// Σ_μ ⟨Ψ^μ|χ|Ψ^μ⟩ u^{μ†} ρ u^μ.
pub fn depolarizing_channel_t0(chi: &DensityMatrix, input: &DensityMatrix) -> Result<DensityMatrix> {
    require_qubits(input, 1)?;
    let weights = bell_weights(chi)?;
    let mut out = ComplexMatrix::zeros(2, 2);
    for (mu, w) in weights.into_iter().enumerate() {
        let u = pauli(mu)?;
        out = &out + &u.adjoint().conjugate(input.matrix())?.scale_real(w);
    }
    Ok(DensityMatrix::from_channel_output(out))
}

/// Weights ⟨Υ^{μν}|Ξ|Υ^{μν}⟩ at the given angles, index 4μ + ν.
pub fn bichannel_weights(xi: &DensityMatrix, angles: AnglePair) -> Result<[f64; 16]> {
    require_qubits(xi, 4)?;
    let mut w = [0.0; 16];
    for (slot, v) in w.iter_mut().zip(upsilon_basis(angles)) {
        *slot = xi.expectation(&v)?;
    }
    Ok(w)
}

/// Σ_{μν} ⟨Υ^{μν}|Ξ|Υ^{μν}⟩ U^{μν†} ρ U^{μν}.
pub fn depolarizing_bichannel_e0(
    xi: &DensityMatrix,
    angles: AnglePair,
    input: &DensityMatrix,
) -> Result<DensityMatrix> {
    require_qubits(input, 2)?;
    let weights = bichannel_weights(xi, angles)?;
    let mut out = ComplexMatrix::zeros(4, 4);
    for (k, w) in weights.into_iter().enumerate() {
        let u = pauli_pair(k / 4, k % 4)?;
        out = &out + &u.adjoint().conjugate(input.matrix())?.scale_real(w);
    }
    Ok(DensityMatrix::from_channel_output(out))
}

/// Bob's correction after outcome (μ, ν): R_{μν} = U^{μν}.
///
/// Projecting onto |Π^{μν}⟩ leaves U^{μν†}|Ψ⟩ on B₁B₂ for the ideal resource.
pub fn recovery_operator(mu: usize, nu: usize) -> Result<ComplexMatrix> {
    pauli_pair(mu, nu)
}

/// Outcome statistics of Alice's 16-outcome measurement.
#[derive(Debug, Clone)]
pub struct OutcomeDistribution {
    /// Index 4μ + ν.
    pub probabilities: Vec<f64>,
    /// Bob's corrected state per outcome; `None` where the outcome has
    /// probability below the floor.
    pub conditional_outputs: Vec<Option<DensityMatrix>>,
}

impl OutcomeDistribution {
    /// Σ p · ρ over outcomes.
    pub fn mixture(&self) -> DensityMatrix {
        let mut out = ComplexMatrix::zeros(4, 4);
        for (p, rho) in self.probabilities.iter().zip(&self.conditional_outputs) {
            if let Some(rho) = rho {
                out = &out + &rho.matrix().scale_real(*p);
            }
        }
        DensityMatrix::from_channel_output(out)
    }
}

/// Runs the measurement protocol on |Ψ⟩_{A₁A₂} ⊗ Ξ_{A₃A₄B₁B₂}.
pub fn protocol_e0(xi: &DensityMatrix, angles: AnglePair, input: &StateVector) -> Result<OutcomeDistribution> {
    require_qubits(xi, 4)?;
    if input.n_qubits() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: input.n_qubits(),
        });
    }
    let joint = input.density().tensor(xi);
    let j = joint.matrix();
    let floor = Tolerances::DEFAULT.probability_floor;

    let mut probabilities = Vec::with_capacity(16);
    let mut conditional_outputs = Vec::with_capacity(16);
    for (k, pi) in pi_basis(angles).into_iter().enumerate() {
        let v = pi.amplitudes();
        // (⟨Π| ⊗ I) J (|Π⟩ ⊗ I) on the last two qubits
        let sigma = ComplexMatrix::from_fn(4, 4, |b, b2| {
            let mut acc = ZERO;
            for (a, va) in v.iter().enumerate() {
                if *va == ZERO {
                    continue;
                }
                for (a2, va2) in v.iter().enumerate() {
                    acc += va.conj() * j[(a * 4 + b, a2 * 4 + b2)] * va2;
                }
            }
            acc
        });
        let p = sigma.trace().re;
        probabilities.push(p.max(0.0));
        if p < floor {
            conditional_outputs.push(None);
            continue;
        }
        let r = recovery_operator(k / 4, k % 4)?;
        let corrected = r.conjugate(&sigma)?.scale_real(1.0 / p);
        conditional_outputs.push(Some(DensityMatrix::from_channel_output(corrected)));
    }
    Ok(OutcomeDistribution {
        probabilities,
        conditional_outputs,
    })
}

/// Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl McEstimate {
    fn from_samples(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        Self {
            mean,
            std_error: (var / n).sqrt(),
            samples: values.len(),
        }
    }

    /// |mean − target| ≤ k · standard error, with a floor for zero-variance estimates.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.std_error + 1e-12
    }
}

/// Sample `i` draws from ChaCha8 seeded with `seed`, stream `i`.
fn sample_fidelities<F>(n_qubits: usize, n_samples: usize, seed: u64, fidelity: F) -> Result<McEstimate>
where
    F: Fn(&StateVector) -> Result<f64> + Sync,
{
    if n_samples < 100 {
        return Err(Error::ParameterOutOfRange {
            name: "samples",
            value: n_samples as f64,
            range: ">= 100",
        });
    }
    let values: Vec<f64> = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            fidelity(&haar_random_state_with(n_qubits, &mut rng))
        })
        .collect::<Result<_>>()?;
    Ok(McEstimate::from_samples(&values))
}

/// Average of ⟨Ψ|Λ(|Ψ⟩⟨Ψ|)|Ψ⟩ over Haar-random two-qubit inputs for the bichannel.
pub fn avg_fidelity_mc(xi: &DensityMatrix, angles: AnglePair, n_samples: usize, seed: u64) -> Result<McEstimate> {
    require_qubits(xi, 4)?;
    let weights = bichannel_weights(xi, angles)?;
    let paulis: Vec<ComplexMatrix> = (0..16).map(|k| pauli_pair(k / 4, k % 4)).collect::<Result<_>>()?;
    sample_fidelities(2, n_samples, seed, |psi| {
        let mut f = 0.0;
        for (w, u) in weights.iter().zip(&paulis) {
            // ⟨Ψ|U†|Ψ⟩⟨Ψ|U|Ψ⟩
            let overlap = psi.inner(&StateVector::normalized(u.apply(psi.amplitudes())?)?);
            f += w * overlap.norm_sqr();
        }
        Ok(f)
    })
}

/// Average single-qubit teleportation fidelity through [`depolarizing_channel_t0`].
pub fn avg_fidelity_t0_mc(chi: &DensityMatrix, n_samples: usize, seed: u64) -> Result<McEstimate> {
    require_qubits(chi, 2)?;
    sample_fidelities(1, n_samples, seed, |psi| {
        let out = depolarizing_channel_t0(chi, &psi.density())?;
        out.expectation(psi)
    })
}

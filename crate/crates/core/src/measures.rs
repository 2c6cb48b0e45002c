//! Figures of merit: entropy, mutual information, negativity, singlet
//! fractions and their fidelities, and quantum discord.
//!
//! All logarithms are base 2. Eigenvalues within the PSD tolerance below zero
//! are clipped to zero before taking logarithms, and 0·log 0 = 0.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use crate::config::{SearchSettings, Tolerances};
use crate::error::{Error, Result};
use crate::optimize::{maximize, minimize, SearchBox};
use crate::qmat::{herm_eigenvalues, partial_trace, partial_transpose, r, tensor, ComplexMatrix, DensityMatrix, ZERO};
use crate::states::{bell, upsilon00, AnglePair};

/// A figure of merit with the angles at which it was attained.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleResult {
    pub value: f64,
    pub angles: Vec<f64>,
}

/// Split of the qubits into two nonempty parts (0-based indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    first: Vec<usize>,
    second: Vec<usize>,
}

impl Bipartition {
    /// `first` and its complement in `0..n_qubits`.
    pub fn new(first: &[usize], n_qubits: usize) -> Result<Self> {
        if first.is_empty() {
            return Err(Error::EmptyQubitSet);
        }
        let mut a = first.to_vec();
        a.sort_unstable();
        for w in a.windows(2) {
            if w[0] == w[1] {
                return Err(Error::RepeatedQubit(w[0]));
            }
        }
        if let Some(&bad) = a.iter().find(|&&q| q >= n_qubits) {
            return Err(Error::QubitOutOfRange { index: bad, n_qubits });
        }
        let b: Vec<usize> = (0..n_qubits).filter(|q| !a.contains(q)).collect();
        if b.is_empty() {
            return Err(Error::EmptyQubitSet);
        }
        Ok(Self { first: a, second: b })
    }

    /// Qubit 0 against qubit 1.
    pub fn two_qubit() -> Self {
        Self {
            first: vec![0],
            second: vec![1],
        }
    }

    pub fn first(&self) -> &[usize] {
        &self.first
    }

    pub fn second(&self) -> &[usize] {
        &self.second
    }

    fn n_qubits(&self) -> usize {
        self.first.len() + self.second.len()
    }
}

fn check_cut(rho: &DensityMatrix, cut: &Bipartition) -> Result<()> {
    if cut.n_qubits() != rho.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: rho.n_qubits(),
            got: cut.n_qubits(),
        });
    }
    Ok(())
}

fn require_qubits(rho: &DensityMatrix, n: usize) -> Result<()> {
    if rho.n_qubits() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rho.n_qubits(),
        });
    }
    Ok(())
}

/// Shannon entropy (bits) of a spectrum, clipped to [0, 1].
pub fn shannon(probabilities: impl IntoIterator<Item = f64>) -> f64 {
    probabilities
        .into_iter()
        .map(|p| p.clamp(0.0, 1.0))
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}

/// −Σ λ log₂ λ.
pub fn entropy(rho: &DensityMatrix) -> f64 {
    shannon(rho.eigenvalues())
}

/// Eigenvalues of a 2×2 Hermitian matrix, ascending.
fn eigenvalues_2x2(m: &ComplexMatrix) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mean - half_gap, mean + half_gap]
}

/// S[ρ_A] + S[ρ_B] − S[ρ_AB].
pub fn mutual_information(rho: &DensityMatrix, cut: &Bipartition) -> Result<f64> {
    check_cut(rho, cut)?;
    let sa = entropy(&partial_trace(rho, cut.first())?);
    let sb = entropy(&partial_trace(rho, cut.second())?);
    Ok(sa + sb - entropy(rho))
}

/// max{0, −2 Σ negative eigenvalues of ρ^{T_B}}, transposing the second part.
pub fn negativity(rho: &DensityMatrix, cut: &Bipartition) -> Result<f64> {
    check_cut(rho, cut)?;
    let pt = partial_transpose(rho, cut.second())?;
    let neg: f64 = herm_eigenvalues(&pt)?.into_iter().filter(|&l| l < 0.0).sum();
    Ok((-2.0 * neg).max(0.0))
}

/// ⟨Ψ⁰|χ|Ψ⁰⟩.
pub fn singlet_fraction(chi: &DensityMatrix) -> Result<f64> {
    require_qubits(chi, 2)?;
    chi.expectation(&bell(0)?)
}

/// Rz(a)·Ry(b)·Rz(c).
pub fn euler_unitary(a: f64, b: f64, cc: f64) -> ComplexMatrix {
    let rz = |t: f64| {
        ComplexMatrix::diagonal_matrix(&[
            Complex64::from_polar(1.0, -t / 2.0),
            Complex64::from_polar(1.0, t / 2.0),
        ])
    };
    let (s, co) = (b / 2.0).sin_cos();
    let ry = ComplexMatrix::from_real_rows([[co, -s], [s, co]]);
    &(&rz(a) * &ry) * &rz(cc)
}

/// Singlet fraction maximized over a local unitary on the second qubit.
///
/// Angles returned are the Euler angles (a, b, c) of u = Rz(a)Ry(b)Rz(c).
pub fn max_singlet_fraction(chi: &DensityMatrix) -> Result<AngleResult> {
    require_qubits(chi, 2)?;
    let phi = bell(0)?;
    let id = ComplexMatrix::identity(2);
    let objective = |x: &[f64]| {
        let u = tensor(&id, &euler_unitary(x[0], x[1], x[2]));
        let psi = u.adjoint().apply(phi.amplitudes()).expect("4-dim");
        chi.matrix().sandwich(&psi, &psi).expect("4-dim").re
    };
    let bounds = SearchBox::new(vec![0.0, 0.0, 0.0], vec![TAU, PI, TAU]);
    let m = maximize(objective, &bounds, &SearchSettings::SINGLET, &[vec![0.0, 0.0, 0.0]]);
    Ok(AngleResult {
        value: m.value,
        angles: m.point,
    })
}

fn check_fraction(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::ParameterOutOfRange {
            name,
            value,
            range: "[0, 1]",
        });
    }
    Ok(())
}

/// Single-qubit teleportation fidelity 1/3 + 2F/3.
pub fn fidelity_from_f(f: f64) -> Result<f64> {
    check_fraction("F", f)?;
    Ok(1.0 / 3.0 + 2.0 * f / 3.0)
}

/// Two-qubit teleportation fidelity 1/5 + 4G/5.
pub fn fidelity_from_g(g: f64) -> Result<f64> {
    check_fraction("G", g)?;
    Ok(0.2 + 0.8 * g)
}

/// ⟨Υ⁰⁰(angles)|Ξ|Υ⁰⁰(angles)⟩.
pub fn overlap_g(xi: &DensityMatrix, angles: AnglePair) -> Result<f64> {
    require_qubits(xi, 4)?;
    xi.expectation(&upsilon00(angles))
}

/// Maximum of [`overlap_g`] over (θ₁₂, φ₁₂).
pub fn generalized_singlet_fraction(xi: &DensityMatrix) -> Result<AngleResult> {
    generalized_singlet_fraction_from(xi, &[])
}

/// As [`generalized_singlet_fraction`], with extra simplex starting points
/// (θ₁₂, φ₁₂) refined alongside the best grid cells.
pub fn generalized_singlet_fraction_from(xi: &DensityMatrix, warm_starts: &[AnglePair]) -> Result<AngleResult> {
    require_qubits(xi, 4)?;
    let margin = Tolerances::DEFAULT.angle_margin;
    let hi = FRAC_PI_2 - margin;
    let objective = |x: &[f64]| {
        let angles = AnglePair::clamped(x[0], x[1], margin);
        xi.expectation(&upsilon00(angles)).expect("4-qubit state")
    };
    let bounds = SearchBox::new(vec![-hi, -hi], vec![hi, hi]);
    let extra: Vec<Vec<f64>> = warm_starts.iter().map(|a| vec![a.theta12(), a.phi12()]).collect();
    let m = maximize(objective, &bounds, &SearchSettings::GSF, &extra);
    Ok(AngleResult {
        value: m.value,
        angles: m.point,
    })
}

/// Projective measurement direction on qubit B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementAngles {
    theta: f64,
    phi: f64,
}

impl MeasurementAngles {
    /// θ ∈ [−π, π], φ ∈ [0, 2π].
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(-PI..=PI).contains(&theta) {
            return Err(Error::ParameterOutOfRange {
                name: "theta",
                value: theta,
                range: "[-pi, pi]",
            });
        }
        if !(0.0..=TAU).contains(&phi) {
            return Err(Error::ParameterOutOfRange {
                name: "phi",
                value: phi,
                range: "[0, 2pi]",
            });
        }
        Ok(Self { theta, phi })
    }

    pub const COMPUTATIONAL: MeasurementAngles = MeasurementAngles { theta: 0.0, phi: 0.0 };

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// |π⁰⟩ = cos θ|0⟩ + e^{iφ} sin θ|1⟩, |π¹⟩ = e^{−iφ} sin θ|0⟩ − cos θ|1⟩.
    pub fn basis(&self) -> [[Complex64; 2]; 2] {
        let (s, co) = self.theta.sin_cos();
        let e = Complex64::from_polar(1.0, self.phi);
        [[r(co), e * s], [e.conj() * s, r(-co)]]
    }
}

/// Σ_m π_m S[ρ_{A|m}] for a measurement of the second qubit.
fn conditional_entropy_after_measurement(rho: &DensityMatrix, m: MeasurementAngles) -> f64 {
    let floor = Tolerances::DEFAULT.probability_floor;
    let mat = rho.matrix();
    let mut total = 0.0;
    for pi in m.basis() {
        // (I ⊗ ⟨π|) ρ (I ⊗ |π⟩), a 2×2 block on A
        let block = ComplexMatrix::from_fn(2, 2, |a, a2| {
            let mut acc = ZERO;
            for b in 0..2 {
                for b2 in 0..2 {
                    acc += pi[b].conj() * mat[(2 * a + b, 2 * a2 + b2)] * pi[b2];
                }
            }
            acc
        });
        let p = block.trace().re;
        if p < floor {
            continue;
        }
        let ev = eigenvalues_2x2(&block.scale_real(1.0 / p));
        total += p * shannon(ev);
    }
    total
}

/// Discord with a projective measurement of qubit B at the given angles.
pub fn discord(rho: &DensityMatrix, m: MeasurementAngles) -> Result<f64> {
    require_qubits(rho, 2)?;
    let sb = entropy(&partial_trace(rho, &[1])?);
    Ok(conditional_entropy_after_measurement(rho, m) + sb - entropy(rho))
}

/// Discord minimized over measurement directions; angles are (θ, φ).
pub fn min_discord(rho: &DensityMatrix) -> Result<AngleResult> {
    require_qubits(rho, 2)?;
    let sb = entropy(&partial_trace(rho, &[1])?);
    let sab = entropy(rho);
    let objective = |x: &[f64]| {
        let m = MeasurementAngles { theta: x[0], phi: x[1] };
        conditional_entropy_after_measurement(rho, m)
    };
    let bounds = SearchBox::new(vec![-PI, 0.0], vec![PI, TAU]);
    let m = minimize(objective, &bounds, &SearchSettings::DISCORD, &[vec![0.0, 0.0]]);
    Ok(AngleResult {
        value: m.value + sb - sab,
        angles: m.point,
    })
}

/// Two-qubit state supported on span{|00⟩, |11⟩}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauState {
    t00: f64,
    t11: f64,
    t01: Complex64,
}

impl TauState {
    /// Requires t00 + t11 = 1, both non-negative, and |t01|² ≤ t00·t11.
    /// Diagonal entries within round-off below zero are set to zero.
    pub fn new(t00: f64, t11: f64, t01: Complex64) -> Result<Self> {
        let tol = Tolerances::DEFAULT;
        if t00 < tol.psd_floor || t11 < tol.psd_floor || (t00 + t11 - 1.0).abs() > tol.unit {
            return Err(Error::InvalidTrace(t00 + t11));
        }
        let (t00, t11) = (t00.max(0.0), t11.max(0.0));
        let slack = t00 * t11 - t01.norm_sqr();
        if slack < -1e-12 {
            return Err(Error::NotPositive(slack));
        }
        Ok(Self { t00, t11, t01 })
    }

    /// Reads the |00⟩/|11⟩ block of a two-qubit density matrix; other entries are ignored.
    pub fn from_density(rho: &DensityMatrix) -> Result<Self> {
        require_qubits(rho, 2)?;
        let m = rho.matrix();
        Self::new(m[(0, 0)].re, m[(3, 3)].re, m[(0, 3)])
    }

    pub fn t00(&self) -> f64 {
        self.t00
    }

    pub fn t11(&self) -> f64 {
        self.t11
    }

    pub fn t01(&self) -> Complex64 {
        self.t01
    }

    pub fn density(&self) -> DensityMatrix {
        let mut m = ComplexMatrix::zeros(4, 4);
        m[(0, 0)] = r(self.t00);
        m[(3, 3)] = r(self.t11);
        m[(0, 3)] = self.t01;
        m[(3, 0)] = self.t01.conj();
        DensityMatrix::from_channel_output(m)
    }

    /// Eigenvalues (Γ₋, Γ₊) = (1 ∓ √((t00 − t11)² + 4|t01|²))/2.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let root = ((self.t00 - self.t11).powi(2) + 4.0 * self.t01.norm_sqr()).sqrt();
        (0.5 * (1.0 - root), 0.5 * (1.0 + root))
    }
}

/// H(t00, t11) − H(Γ₊, Γ₋): the minimum discord of a τ-form state.
pub fn discord_tau_closed(tau: &TauState) -> f64 {
    let (gm, gp) = tau.eigenvalues();
    shannon([tau.t00, tau.t11]) - shannon([gm, gp])
}

/// Total, classical and quantum correlation of a τ-form state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationSplit {
    pub total: f64,
    pub classical: f64,
    pub quantum: f64,
}

/// Mutual information of τ and of τ with its coherence erased.
pub fn correlation_split(tau: &TauState) -> CorrelationSplit {
    let cut = Bipartition::two_qubit();
    let total = mutual_information(&tau.density(), &cut).expect("two-qubit state");
    let dephased = TauState::new(tau.t00, tau.t11, ZERO).expect("diagonal part is valid");
    let classical = mutual_information(&dephased.density(), &cut).expect("two-qubit state");
    CorrelationSplit {
        total,
        classical,
        quantum: total - classical,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{big_xi, big_xi_prime, xi, DampingStrength};
    use crate::qmat::{c, StateVector};
    use crate::states::{haar_random_state, haar_random_unitary};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(v: f64) -> DampingStrength {
        DampingStrength::new(v).unwrap()
    }

    fn diag(p: [f64; 4]) -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::diagonal_matrix(&p.map(r))).unwrap()
    }

    #[test]
    fn entropy_values() {
        assert_abs_diff_eq!(entropy(&haar_random_state(2, 1).density()), 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(entropy(&DensityMatrix::maximally_mixed(1)), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(entropy(&DensityMatrix::maximally_mixed(2)), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn mutual_information_values() {
        let cut = Bipartition::two_qubit();
        assert_abs_diff_eq!(
            mutual_information(&bell(0).unwrap().density(), &cut).unwrap(),
            2.0,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            mutual_information(&diag([0.5, 0.0, 0.0, 0.5]), &cut).unwrap(),
            1.0,
            epsilon = 1e-14
        );
        let a = haar_random_state(1, 4).density();
        let b = haar_random_state(1, 5).density();
        assert_abs_diff_eq!(mutual_information(&a.tensor(&b), &cut).unwrap(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn bipartition_validation() {
        assert_eq!(Bipartition::new(&[], 2).unwrap_err(), Error::EmptyQubitSet);
        assert_eq!(Bipartition::new(&[0, 1], 2).unwrap_err(), Error::EmptyQubitSet);
        assert!(Bipartition::new(&[3], 2).is_err());
        let cut = Bipartition::new(&[0], 3).unwrap();
        assert!(mutual_information(&bell(0).unwrap().density(), &cut).is_err());
        assert_eq!(cut.second(), &[1, 2]);
    }

    #[test]
    fn negativity_values() {
        let cut = Bipartition::two_qubit();
        assert_abs_diff_eq!(
            negativity(&bell(0).unwrap().density(), &cut).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert_eq!(negativity(&diag([0.1, 0.2, 0.3, 0.4]), &cut).unwrap(), 0.0);
    }

    #[test]
    fn singlet_fraction_values() {
        assert_abs_diff_eq!(
            singlet_fraction(&bell(0).unwrap().density()).unwrap(),
            1.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            singlet_fraction(&DensityMatrix::maximally_mixed(2)).unwrap(),
            0.25,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(singlet_fraction(&xi(q(0.49))).unwrap(), 0.7225, epsilon = 1e-12);
        assert!(singlet_fraction(&DensityMatrix::maximally_mixed(3)).is_err());
    }

    #[test]
    fn max_singlet_fraction_undoes_local_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let v = haar_random_unitary(2, &mut rng);
        let rotated = bell(0)
            .unwrap()
            .apply(&tensor(&ComplexMatrix::identity(2), &v))
            .unwrap();
        let res = max_singlet_fraction(&rotated.density()).unwrap();
        assert_abs_diff_eq!(res.value, 1.0, epsilon = 1e-9);
        assert!(singlet_fraction(&rotated.density()).unwrap() <= res.value + 1e-12);
        let ideal = max_singlet_fraction(&bell(0).unwrap().density()).unwrap();
        assert_abs_diff_eq!(ideal.value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn euler_unitary_is_unitary() {
        let u = euler_unitary(0.3, 1.2, -2.0);
        assert!((&u * &u.adjoint()).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);
    }

    #[test]
    fn fidelity_maps() {
        assert_abs_diff_eq!(fidelity_from_f(1.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(fidelity_from_f(0.5).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(fidelity_from_f(0.25).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(fidelity_from_g(1.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(fidelity_from_g(0.5).unwrap(), 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(fidelity_from_g(0.64).unwrap(), 0.712, epsilon = 1e-15);
        assert!(fidelity_from_f(1.5).is_err());
        assert!(fidelity_from_g(-0.1).is_err());
    }

    #[test]
    fn overlap_closed_forms() {
        let ab = AnglePair::new(0.4, -0.3).unwrap();
        assert_abs_diff_eq!(overlap_g(&upsilon00(ab).density(), ab).unwrap(), 1.0, epsilon = 1e-14);
        let x = big_xi(0.4, -0.3, q(0.2)).unwrap();
        assert_abs_diff_eq!(
            overlap_g(&x, ab).unwrap(),
            (3.0 + 0.2f64.sqrt()).powi(2) / 16.0,
            epsilon = 1e-13
        );
        let xp = big_xi_prime(0.0, 0.0, q(0.3)).unwrap();
        assert_abs_diff_eq!(
            overlap_g(&xp, AnglePair::ZERO).unwrap(),
            (5.0 + 0.6 + 0.09) / 8.0,
            epsilon = 1e-13
        );
    }

    #[test]
    fn gsf_of_big_xi() {
        let alpha = 0.1 * PI;
        let x = big_xi(alpha, 0.2, q(0.04)).unwrap();
        let res = generalized_singlet_fraction(&x).unwrap();
        assert_abs_diff_eq!(res.value, 0.64, epsilon = 1e-9);
        let at_truth = overlap_g(&x, AnglePair::new(alpha, 0.2).unwrap()).unwrap();
        assert!((res.value - at_truth).abs() < 1e-8);
        assert_abs_diff_eq!(res.angles[0], alpha, epsilon = 1e-3);
        assert_abs_diff_eq!(res.angles[1], 0.2, epsilon = 1e-3);
        let probe = overlap_g(&x, AnglePair::new(-0.5, 1.0).unwrap()).unwrap();
        assert!(res.value >= probe);
        let ideal = generalized_singlet_fraction(&upsilon00(AnglePair::new(-0.2, 0.6).unwrap()).density()).unwrap();
        assert_abs_diff_eq!(ideal.value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn angle_result_reproduces_value() {
        let x = big_xi_prime(0.3, 0.1, q(0.05)).unwrap();
        let res = generalized_singlet_fraction(&x).unwrap();
        let again = overlap_g(&x, AnglePair::new(res.angles[0], res.angles[1]).unwrap()).unwrap();
        assert!((again - res.value).abs() <= 1e-8);
    }

    #[test]
    fn discord_simple_cases() {
        let prod = diag([0.6 * 0.3, 0.6 * 0.7, 0.4 * 0.3, 0.4 * 0.7]);
        assert_abs_diff_eq!(
            discord(&prod, MeasurementAngles::COMPUTATIONAL).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        let b = bell(0).unwrap().density();
        assert_abs_diff_eq!(
            discord(&b, MeasurementAngles::COMPUTATIONAL).unwrap(),
            1.0,
            epsilon = 1e-10
        );
        let tilted = MeasurementAngles::new(0.7, 2.1).unwrap();
        assert_abs_diff_eq!(discord(&b, tilted).unwrap(), 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(min_discord(&b).unwrap().value, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(min_discord(&prod).unwrap().value, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn measurement_basis_is_orthonormal() {
        let m = MeasurementAngles::new(-2.3, 4.0).unwrap();
        let [a, b] = m.basis();
        let ip: Complex64 = a.iter().zip(&b).map(|(x, y)| x.conj() * y).sum();
        assert!(ip.norm() < 1e-15);
        assert!(MeasurementAngles::new(4.0, 0.0).is_err());
        assert!(MeasurementAngles::new(0.0, 7.0).is_err());
    }

    #[test]
    fn tau_state_discord() {
        let tau = TauState::new(0.7, 0.3, c(0.2, 0.1)).unwrap();
        let closed = discord_tau_closed(&tau);
        let at_zero = discord(&tau.density(), MeasurementAngles::COMPUTATIONAL).unwrap();
        assert_abs_diff_eq!(closed, at_zero, epsilon = 1e-10);
        let numeric = min_discord(&tau.density()).unwrap();
        assert_abs_diff_eq!(numeric.value, closed, epsilon = 1e-8);
        // argmin at θ ≡ 0 mod π
        let t = numeric.angles[0].rem_euclid(PI);
        assert!(t.min(PI - t) < 1e-3);

        assert_eq!(discord_tau_closed(&TauState::new(0.4, 0.6, ZERO).unwrap()), 0.0);
        assert_abs_diff_eq!(
            discord_tau_closed(&TauState::new(0.5, 0.5, r(0.5)).unwrap()),
            1.0,
            epsilon = 1e-7
        );
        assert!(TauState::new(0.5, 0.4, ZERO).is_err());
        assert!(TauState::new(0.5, 0.5, r(0.6)).is_err());
    }

    #[test]
    fn correlation_split_of_bell_state() {
        let split = correlation_split(&TauState::new(0.5, 0.5, r(0.5)).unwrap());
        assert_abs_diff_eq!(split.total, 2.0, epsilon = 1e-7);
        assert_abs_diff_eq!(split.classical, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(split.quantum, 1.0, epsilon = 1e-7);
        let classical = correlation_split(&TauState::new(0.8, 0.2, ZERO).unwrap());
        assert_abs_diff_eq!(classical.quantum, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn tau_from_density_roundtrip() {
        let tau = TauState::new(0.9, 0.1, c(0.1, -0.2)).unwrap();
        assert_eq!(TauState::from_density(&tau.density()).unwrap(), tau);
        let psi = StateVector::basis(2, 0).unwrap().density();
        assert_eq!(TauState::from_density(&psi).unwrap().t00(), 1.0);
    }
}

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use noisy_teleport::analysis::format_sig12;
use noisy_teleport::channels::{amplitude_damping, apply_channel, big_xi, big_xi_prime, DampingStrength};
use noisy_teleport::measures::{discord, min_discord, negativity, Bipartition, MeasurementAngles};
use noisy_teleport::qmat::{herm_eigen, partial_trace, tensor, ComplexMatrix, DensityMatrix};
use noisy_teleport::states::{haar_random_state, haar_random_unitary, input_state, AnglePair};
use noisy_teleport::teleport::{depolarizing_bichannel_e0, protocol_e0};

const LIM: f64 = FRAC_PI_2 - 1e-3;

fn mixed_state(n_qubits: usize, seed: u64) -> DensityMatrix {
    let a = haar_random_state(n_qubits, seed).density();
    let b = haar_random_state(n_qubits, seed ^ 0x9e37).density();
    let m = &a.matrix().scale_real(0.7) + &b.matrix().scale_real(0.3);
    DensityMatrix::new(m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigen_decomposition_reconstructs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = haar_random_unitary(8, &mut rng);
        let rho = mixed_state(3, seed);
        let m = &(&u * rho.matrix()) * &u.adjoint();
        let m = m.hermitian_part();
        let eig = herm_eigen(&m).unwrap();
        let d = ComplexMatrix::diagonal_matrix(&eig.values.iter().map(|&v| v.into()).collect::<Vec<_>>());
        let back = &(&eig.vectors * &d) * &eig.vectors.adjoint();
        prop_assert!(back.max_abs_diff(&m) < 1e-10);
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn damping_keeps_density_invariants(seed in any::<u64>(), q in 0.0..=1.0f64, target in 0usize..3) {
        let rho = mixed_state(3, seed);
        let out = apply_channel(&amplitude_damping(DampingStrength::new(q).unwrap()), &rho, &[target]).unwrap();
        prop_assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);
        prop_assert!(out.matrix().hermitian_deviation() < 1e-12);
        prop_assert!(out.eigenvalues()[0] > -1e-12);
    }

    #[test]
    fn partial_trace_of_product(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = mixed_state(1, s1);
        let b = mixed_state(2, s2);
        let ab = a.tensor(&b);
        prop_assert!(partial_trace(&ab, &[0]).unwrap().matrix().max_abs_diff(a.matrix()) < 1e-13);
        prop_assert!(partial_trace(&ab, &[1, 2]).unwrap().matrix().max_abs_diff(b.matrix()) < 1e-13);
    }

    #[test]
    fn negativity_is_local_unitary_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = mixed_state(2, seed);
        let local = tensor(&haar_random_unitary(2, &mut rng), &haar_random_unitary(2, &mut rng));
        let moved = DensityMatrix::new((&(&local * rho.matrix()) * &local.adjoint()).hermitian_part()).unwrap();
        let cut = Bipartition::two_qubit();
        prop_assert!((negativity(&rho, &cut).unwrap() - negativity(&moved, &cut).unwrap()).abs() < 1e-10);
        prop_assert!(negativity(&mixed_state(1, seed).tensor(&mixed_state(1, !seed)), &cut).unwrap() < 1e-12);
    }

    #[test]
    fn minimized_discord_bounds_any_measurement(seed in any::<u64>(), theta in -3.0..3.0f64, phi in 0.0..6.0f64) {
        let rho = mixed_state(2, seed);
        let best = min_discord(&rho).unwrap().value;
        let probe = discord(&rho, MeasurementAngles::new(theta, phi).unwrap()).unwrap();
        prop_assert!(best >= -1e-9);
        prop_assert!(best <= probe + 1e-9);
    }

    #[test]
    fn bichannel_output_is_a_state(a in -LIM..LIM, b in -LIM..LIM, q in 0.0..=1.0f64, eps in 0.0..=FRAC_PI_4, primed in any::<bool>()) {
        let q = DampingStrength::new(q).unwrap();
        let resource = if primed { big_xi_prime(a, b, q) } else { big_xi(a, b, q) }.unwrap();
        let at = AnglePair::new(a, b).unwrap();
        let out = depolarizing_bichannel_e0(&resource, at, &input_state(eps).unwrap().density()).unwrap();
        prop_assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);
        prop_assert!(out.eigenvalues()[0] > -1e-12);
    }

    #[test]
    fn protocol_probabilities_sum_to_one(a in -LIM..LIM, b in -LIM..LIM, q in 0.0..=1.0f64, seed in any::<u64>()) {
        let resource = big_xi(a, b, DampingStrength::new(q).unwrap()).unwrap();
        let dist = protocol_e0(&resource, AnglePair::new(a, b).unwrap(), &haar_random_state(2, seed)).unwrap();
        prop_assert!((dist.probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(dist.probabilities.iter().all(|&p| p >= 0.0));
    }

    #[test]
    fn sig12_round_trips(x in -1e6..1e6f64) {
        let back: f64 = format_sig12(x).parse().unwrap();
        prop_assert!((back - x).abs() <= 1e-11 * x.abs().max(1e-300));
    }
}

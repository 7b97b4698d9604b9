use std::f64::consts::LN_2;

use rbnlab::channels::{apply_local, ChannelKind, KrausChannel};
use rbnlab::correlations::{eta, rbn, werner_rbn_closed_form, ContextEvaluator, OptimizerConfig};
use rbnlab::matcore::{partial_trace, tensor, PauliAxis, Subsystem};
use rbnlab::measurement::{pauli_basis, qubit_basis, MeasurementDirection};
use rbnlab::random::{random_density_matrix, random_unitary, substream};
use rbnlab::security::{eve_intercept, rbn_after_eve_analytic, simulate_protocol, ProtocolConfig, Scenario};
use rbnlab::states::{bell_phi_plus, werner};
use rbnlab::thermal::{correlated_thermal_state, rho_x, thermal_noise_sweep, ThermalParams};

#[test]
fn optimizer_beats_every_pauli_context() {
    let cfg = OptimizerConfig::default();
    for i in 0..6 {
        let mut rng = substream(21, i);
        let rho = random_density_matrix(&mut rng, 2, 2, 3);
        let best = rbn(&rho, &cfg).unwrap();
        for a in PauliAxis::ALL {
            for b in PauliAxis::ALL {
                let v = eta(&pauli_basis(a), &pauli_basis(b), &rho).unwrap();
                assert!(best.value >= v - 1e-10, "{a:?}{b:?}: {v} > {}", best.value);
            }
        }
        let at = eta(&qubit_basis(best.angles_a), &qubit_basis(best.angles_b), &rho).unwrap();
        assert!((at - best.value).abs() < 1e-9);
    }
}

#[test]
fn noise_then_rotation_commute_for_rbn() {
    // A local unitary after the channel leaves N_rb of the noisy state alone.
    let cfg = OptimizerConfig::default();
    let mut rng = substream(22, 0);
    let ch = KrausChannel::from_kind(ChannelKind::AmplitudeDamping, 0.7, Some(0.4)).unwrap();
    let noisy = apply_local(&ch, &werner(0.8).unwrap(), Subsystem::B).unwrap();
    let u = tensor(&random_unitary(&mut rng, 2), &random_unitary(&mut rng, 2));
    let a = rbn(&noisy, &cfg).unwrap().value;
    let b = rbn(&noisy.evolve(&u).unwrap(), &cfg).unwrap().value;
    assert!((a - b).abs() < 1e-6);
    assert!(a < werner_rbn_closed_form(0.8).unwrap());
}

#[test]
fn intercepted_werner_reaches_envelope() {
    let cfg = OptimizerConfig::default();
    for mu in [0.3, 0.9] {
        let eve = MeasurementDirection::new(0.4, 1.3).unwrap();
        let xi = eve_intercept(&werner(mu).unwrap(), &qubit_basis(eve)).unwrap();
        let v = rbn(&xi, &cfg).unwrap().value;
        assert!((v - rbn_after_eve_analytic(mu).unwrap()).abs() < 1e-8);
    }
}

#[test]
fn protocol_is_seed_deterministic_and_bounded() {
    let cfg = ProtocolConfig::new(Scenario::EveRandom, 300, 5);
    let a = simulate_protocol(&cfg).unwrap();
    assert_eq!(a, simulate_protocol(&cfg).unwrap());
    for r in &a {
        assert!(r.eta <= rbn_after_eve_analytic(r.mu).unwrap() + 1e-9);
    }
    let other = simulate_protocol(&ProtocolConfig::new(Scenario::EveRandom, 300, 6)).unwrap();
    assert_ne!(a, other);
}

#[test]
fn thermal_state_from_gibbs_qubits() {
    let params = ThermalParams::new(2.0, 0.7).unwrap();
    let rho = correlated_thermal_state(&params);
    let closed = rho_x(params.ground_population()).unwrap();
    assert!(rho.max_abs_diff(&closed) < 1e-12);
    let half = partial_trace(&rho, Subsystem::B);
    assert!((half.matrix().trace().re - 1.0).abs() < 1e-12);
    let cold = rho_x(1.0).unwrap();
    let ev = ContextEvaluator::new(&cold).unwrap();
    assert!((ev.eta_pauli(PauliAxis::X, PauliAxis::X) - LN_2).abs() < 1e-12);
    assert!(cold.max_abs_diff(&bell_phi_plus()) < 1e-15);
}

#[test]
fn thermal_noise_sweep_orders_and_degrades() {
    let cfg = OptimizerConfig::default();
    let kts = [0.2, 1.0];
    let rows = thermal_noise_sweep(1.0, &kts, ChannelKind::PhaseFlip, &[(0.5, None), (1.0, None)], &cfg).unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0].clean.kt, 0.2);
    assert_eq!(rows[2].clean.kt, 1.0);
    for r in &rows {
        assert!(r.rbn_noisy <= r.clean.rbn + 1e-9);
    }
    assert!((rows[1].rbn_noisy - rows[1].clean.rbn).abs() < 1e-9);
}

use cechlab::experiment::{run_experiment, trial_cloud, ExperimentConfig};
use cechlab::Error;

fn small() -> ExperimentConfig {
    let mut config = ExperimentConfig::figure1();
    config.theta = 1.0;
    config.m = None;
    config.n_grid = vec![50.0, 100.0, 200.0];
    config.trials = 20;
    config.seed = 9;
    config
}

#[test]
fn runs_are_bit_identical_for_a_seed() {
    let spec = small().to_spec().unwrap();
    let a = run_experiment(&spec).unwrap();
    let b = run_experiment(&spec).unwrap();
    assert_eq!(a.results_csv(), b.results_csv());
    assert_eq!(a.fit_csv(), b.fit_csv());
    assert_eq!(a.rows.len(), 3);
    assert!(a.rows.iter().all(|row| row.trials == 20 && row.mean >= 0.0));

    let mut other = small();
    other.seed = 10;
    let c = run_experiment(&other.to_spec().unwrap()).unwrap();
    assert_ne!(a.results_csv(), c.results_csv());
}

#[test]
fn trial_clouds_do_not_depend_on_order() {
    let spec = small().to_spec().unwrap();
    let late = trial_cloud(&spec, 2, 7).unwrap();
    let _ = trial_cloud(&spec, 0, 0).unwrap();
    assert_eq!(trial_cloud(&spec, 2, 7).unwrap(), late);
    assert_ne!(trial_cloud(&spec, 2, 8).unwrap(), late);
}

#[test]
fn guards_fire_before_sampling() {
    let mut config = small();
    config.radius.q = -0.3;
    assert!(matches!(config.to_spec(), Err(Error::Config(_))));

    let mut spec = small().to_spec().unwrap();
    spec.radius = cechlab::properties::RadiusLaw::new(1.0, -0.2);
    // an enormous grid would take forever if sampling started first
    spec.n_grid = vec![1e12];
    assert!(matches!(run_experiment(&spec), Err(Error::Config(_))));

    let mut config = small();
    config.m = Some(2);
    assert!(config.to_spec().is_err());
    let mut config = small();
    config.n_grid = vec![100.0, 50.0];
    assert!(config.to_spec().is_err());
}

#[test]
fn toml_round_trip() {
    let config = small();
    let back = ExperimentConfig::from_toml(&config.to_toml()).unwrap();
    assert_eq!(back, config);
    assert!(ExperimentConfig::from_toml("d = 2\nbogus = 1\n").is_err());
}
